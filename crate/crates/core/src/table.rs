//! Persistent integer coefficient tables — the canonical output artifact.
//!
//! A [`CoeffTable`] holds, for every computed size, the monomial
//! coefficients of the partition polynomials `I_{n,g}`: rows
//! `(e, g, a, b, c)` record that `[ν•^a ν∘^b] I_{e/3, g} = c`.  The rows
//! satisfy structural invariants that the loader enforces strictly:
//!
//! * sorted lexicographically by `(e, g, a, b)`, without duplicates;
//! * only `a ≤ b` rows are stored — colour symmetry `I(ν•, ν∘) =
//!   I(ν∘, ν•)` reconstructs the rest, so storing both halves would be
//!   redundant and would admit asymmetric (hence corrupt) tables;
//! * `a ≡ b (mod 3)`, `3 | e`, `g ≤ (e/3 + 1)/2`, and `c > 0`
//!   (zero rows are omitted);
//! * every size `3, 6, …, max_edges` contributes at least one row.
//!
//! Coefficients are stored as exact decimal integers — the `(6n)!`
//! denominator of the generating series is scaled away, so the table
//! contains the counting polynomials themselves.
//!
//! The on-disk format is line-oriented text with a self-check:
//!
//! ```text
//! ising-table v1
//! sha256 <hex digest of everything after this line>
//! max-edges <N>
//! <e> <g> <a> <b> <c>
//! ⋮
//! ```
//!
//! Saving is atomic (write to a sibling temporary file, then rename), so
//! an interrupted run leaves either the old table or the new one, never a
//! torn file.  Loading refuses anything that fails the checksum or any
//! structural invariant — a corrupt cache is reported, never silently
//! recomputed over.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::Signed;
use sha2::{Digest, Sha256};

use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, Int, Rational};
use crate::solver::{Mode, SolveState};
use crate::{Error, Result};

const MAGIC: &str = "ising-table v1";

/// One stored monomial coefficient: `[ν•^a ν∘^b] I_{e/3, g} = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    /// Edge count `3n`.
    pub edges: usize,
    /// Genus.
    pub genus: u16,
    /// Exponent of the black vertex weight (`a ≤ b`).
    pub a: u16,
    /// Exponent of the white vertex weight.
    pub b: u16,
    /// The coefficient, a strictly positive integer.
    pub coeff: Int,
}

impl CoeffRow {
    fn key(&self) -> (usize, u16, u16, u16) {
        (self.edges, self.genus, self.a, self.b)
    }
}

/// A validated table of partition-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffTable {
    max_edges: usize,
    rows: Vec<CoeffRow>,
}

impl CoeffTable {
    /// The empty table (no computed sizes).
    pub fn empty() -> CoeffTable {
        CoeffTable::default()
    }

    /// Largest edge count covered by the table.
    pub fn max_edges(&self) -> usize {
        self.max_edges
    }

    /// The stored rows, in canonical order.
    pub fn rows(&self) -> &[CoeffRow] {
        &self.rows
    }

    /// True when nothing has been computed.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Negative-control hook: adds one to the coefficient stored at `index`
    /// (row order) and returns a copy of the now-wrong row.  The table stays
    /// structurally valid but its contents are false, so residual-based
    /// verification must detect and localize the damage.
    pub fn bump_coefficient(&mut self, index: usize) -> Option<CoeffRow> {
        let row = self.rows.get_mut(index)?;
        row.coeff += 1;
        Some(row.clone())
    }

    // ------------------------------------------------------------------
    // Conversion to and from solver state
    // ------------------------------------------------------------------

    /// Extracts the table from a solved state: every `I_{n,g}` with
    /// `3n ≤ max_edges`, only the `a ≤ b` monomials.
    pub fn from_state(state: &SolveState) -> Result<CoeffTable> {
        let mut rows = Vec::new();
        for edges in (3..=state.max_edges()).step_by(3) {
            let n = edges / 3;
            let scale = Rational::from_integer(factorial(6 * n as u64));
            let jn = state.j_poly(edges)?;
            if jn.is_zero() {
                return Err(Error::Verification(format!(
                    "the series coefficient at {edges} edges is zero"
                )));
            }
            let mut grade_rows = Vec::new();
            for (m, c) in jn.terms() {
                if m.a > m.b {
                    continue;
                }
                let value = c * &scale;
                if !value.is_integer() {
                    return Err(Error::NonInteger(format!(
                        "coefficient at {edges} edges, genus {}, monomial ({}, {})",
                        m.g, m.a, m.b
                    )));
                }
                if !value.is_positive() {
                    return Err(Error::Verification(format!(
                        "non-positive coefficient at {edges} edges, genus {}, \
                         monomial ({}, {})",
                        m.g, m.a, m.b
                    )));
                }
                grade_rows.push(CoeffRow {
                    edges,
                    genus: m.g,
                    a: m.a,
                    b: m.b,
                    coeff: value.to_integer(),
                });
            }
            rows.extend(grade_rows);
        }
        rows.sort_by_key(CoeffRow::key);
        Ok(CoeffTable {
            max_edges: state.max_edges() / 3 * 3,
            rows,
        })
    }

    /// Rebuilds a solver state from the table, ready to resume computing
    /// from `max_edges + 1`.
    pub fn to_state(&self, mode: Mode) -> Result<SolveState> {
        let mut grades: BTreeMap<usize, Poly> = BTreeMap::new();
        for row in &self.rows {
            let n = row.edges / 3;
            let scale = Rational::from_integer(factorial(6 * n as u64)).recip();
            let value = Rational::from_integer(row.coeff.clone()) * &scale;
            let poly = grades.entry(row.edges).or_default();
            poly.add_term(Monomial::new(row.a, row.b, row.genus), value.clone());
            if row.a != row.b {
                poly.add_term(Monomial::new(row.b, row.a, row.genus), value);
            }
        }
        SolveState::from_parts(mode, self.max_edges, grades)
    }

    /// Reconstructs the full polynomial `I_{n,g}` (both symmetric halves)
    /// from the stored rows; zero when no rows exist for `(n, g)`.
    pub fn partition_polynomial(&self, n: usize, g: u16) -> Result<Poly> {
        let edges = 3 * n;
        if edges == 0 || edges > self.max_edges {
            return Err(Error::MissingDepth {
                requested: edges,
                present: self.max_edges,
            });
        }
        let mut p = Poly::zero();
        for row in self.rows.iter().filter(|r| r.edges == edges && r.genus == g) {
            let c = Rational::from_integer(row.coeff.clone());
            p.add_term(Monomial::new(row.a, row.b, 0), c.clone());
            if row.a != row.b {
                p.add_term(Monomial::new(row.b, row.a, 0), c);
            }
        }
        Ok(p)
    }

    // ------------------------------------------------------------------
    // Disk format
    // ------------------------------------------------------------------

    fn body_string(&self) -> String {
        let mut body = format!("max-edges {}\n", self.max_edges);
        for row in &self.rows {
            writeln!(
                body,
                "{} {} {} {} {}",
                row.edges, row.genus, row.a, row.b, row.coeff
            )
            .expect("writing to a string cannot fail");
        }
        body
    }

    fn digest(body: &str) -> String {
        Sha256::digest(body.as_bytes())
            .iter()
            .map(|byte| format!("{byte:02x}"))
            .collect()
    }

    /// The full file content, checksum header included.
    pub fn serialize(&self) -> String {
        let body = self.body_string();
        format!("{MAGIC}\nsha256 {}\n{body}", Self::digest(&body))
    }

    /// Writes the table atomically: serialize to a sibling temporary file,
    /// then rename over the target.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp_name = path.as_os_str().to_os_string();
        tmp_name.push(".tmp");
        let tmp = PathBuf::from(tmp_name);
        std::fs::write(&tmp, self.serialize())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Parses a serialized table, enforcing the checksum and every
    /// structural invariant.
    pub fn deserialize(content: &str) -> Result<CoeffTable> {
        let corrupt = |msg: String| Error::CorruptTable(msg);
        let Some((first, rest)) = content.split_once('\n') else {
            return Err(corrupt("missing header".into()));
        };
        if first != MAGIC {
            return Err(corrupt(format!("unrecognized format line {first:?}")));
        }
        let Some((checksum_line, body)) = rest.split_once('\n') else {
            return Err(corrupt("missing checksum line".into()));
        };
        let Some(stated) = checksum_line.strip_prefix("sha256 ") else {
            return Err(corrupt(format!("malformed checksum line {checksum_line:?}")));
        };
        if stated != Self::digest(body) {
            return Err(corrupt("checksum mismatch".into()));
        }

        let mut lines = body.lines();
        let max_edges = match lines.next().and_then(|l| l.strip_prefix("max-edges ")) {
            Some(field) => parse_canonical::<usize>(field)
                .ok_or_else(|| corrupt(format!("malformed size line {field:?}")))?,
            None => return Err(corrupt("missing max-edges line".into())),
        };
        if max_edges % 3 != 0 {
            return Err(corrupt(format!(
                "max-edges {max_edges} is not a multiple of 3"
            )));
        }

        let mut rows: Vec<CoeffRow> = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(' ').collect();
            let [e, g, a, b, c] = fields.as_slice() else {
                return Err(corrupt(format!("row {line:?} does not have 5 fields")));
            };
            let row = CoeffRow {
                edges: parse_canonical(e)
                    .ok_or_else(|| corrupt(format!("bad edge count {e:?}")))?,
                genus: parse_canonical(g)
                    .ok_or_else(|| corrupt(format!("bad genus {g:?}")))?,
                a: parse_canonical(a).ok_or_else(|| corrupt(format!("bad exponent {a:?}")))?,
                b: parse_canonical(b).ok_or_else(|| corrupt(format!("bad exponent {b:?}")))?,
                coeff: parse_canonical(c)
                    .ok_or_else(|| corrupt(format!("bad coefficient {c:?}")))?,
            };
            validate_row(&row, max_edges)?;
            if let Some(prev) = rows.last() {
                if prev.key() >= row.key() {
                    return Err(corrupt(format!(
                        "rows out of order at ({}, {}, {}, {})",
                        row.edges, row.genus, row.a, row.b
                    )));
                }
            }
            rows.push(row);
        }

        // every size through max_edges must be represented
        let mut expected = (3..=max_edges).step_by(3);
        let mut present = rows.iter().map(|r| r.edges);
        let mut next_present = present.next();
        for e in &mut expected {
            if next_present != Some(e) {
                return Err(corrupt(format!("no rows for {e} edges")));
            }
            while next_present == Some(e) {
                next_present = present.next();
            }
        }

        Ok(CoeffTable { max_edges, rows })
    }

    /// Loads and validates a table from disk.
    pub fn load(path: &Path) -> Result<CoeffTable> {
        let content = std::fs::read_to_string(path)?;
        Self::deserialize(&content)
    }

    // ------------------------------------------------------------------
    // Export formats
    // ------------------------------------------------------------------

    /// JSON export: `{version, max_edges, rows: [{e, g, a, b, c}]}` with
    /// coefficients as decimal strings (bit-exact at any size).
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"version\": 1,");
        let _ = writeln!(out, "  \"max_edges\": {},", self.max_edges);
        out.push_str("  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            let sep = if i + 1 == self.rows.len() { "" } else { "," };
            let _ = write!(
                out,
                "\n    {{\"e\": {}, \"g\": {}, \"a\": {}, \"b\": {}, \"c\": \"{}\"}}{sep}",
                row.edges, row.genus, row.a, row.b, row.coeff
            );
        }
        if !self.rows.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    /// Parses the JSON export back into a validated table.
    pub fn from_json(content: &str) -> Result<CoeffTable> {
        let corrupt = |msg: String| Error::CorruptTable(msg);
        let value: serde_json::Value = serde_json::from_str(content)
            .map_err(|e| corrupt(format!("invalid JSON: {e}")))?;
        let version = value.get("version").and_then(|v| v.as_u64());
        if version != Some(1) {
            return Err(corrupt(format!("unsupported version {version:?}")));
        }
        let max_edges = value
            .get("max_edges")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| corrupt("missing max_edges".into()))? as usize;
        let rows_json = value
            .get("rows")
            .and_then(|v| v.as_array())
            .ok_or_else(|| corrupt("missing rows".into()))?;
        let mut rows = Vec::with_capacity(rows_json.len());
        for item in rows_json {
            let field = |k: &str| {
                item.get(k)
                    .and_then(|v| v.as_u64())
                    .ok_or_else(|| corrupt(format!("missing field {k}")))
            };
            let coeff_str = item
                .get("c")
                .and_then(|v| v.as_str())
                .ok_or_else(|| corrupt("coefficient must be a string".into()))?;
            let row = CoeffRow {
                edges: field("e")? as usize,
                genus: field("g")? as u16,
                a: field("a")? as u16,
                b: field("b")? as u16,
                coeff: parse_canonical(coeff_str)
                    .ok_or_else(|| corrupt(format!("bad coefficient {coeff_str:?}")))?,
            };
            validate_row(&row, max_edges)?;
            if rows
                .last()
                .is_some_and(|prev: &CoeffRow| prev.key() >= row.key())
            {
                return Err(corrupt("rows out of order".into()));
            }
            rows.push(row);
        }
        if max_edges % 3 != 0 {
            return Err(corrupt(format!(
                "max_edges {max_edges} is not a multiple of 3"
            )));
        }
        Ok(CoeffTable { max_edges, rows })
    }

    /// CSV export with header `e,g,a,b,c`; header-only when empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("e,g,a,b,c\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                row.edges, row.genus, row.a, row.b, row.coeff
            );
        }
        out
    }
}

/// Parses a numeric field strictly: the value must re-serialize to the
/// exact input (no leading zeros, signs, or whitespace).
fn parse_canonical<T: FromStr + ToString>(field: &str) -> Option<T> {
    let value = field.parse::<T>().ok()?;
    (value.to_string() == field).then_some(value)
}

fn validate_row(row: &CoeffRow, max_edges: usize) -> Result<()> {
    let corrupt = |msg: String| Error::CorruptTable(msg);
    if row.edges == 0 || row.edges % 3 != 0 || row.edges > max_edges {
        return Err(corrupt(format!(
            "edge count {} outside the table range",
            row.edges
        )));
    }
    let n = row.edges / 3;
    if usize::from(row.genus) > (n + 1) / 2 {
        return Err(corrupt(format!(
            "genus {} impossible at {} edges",
            row.genus, row.edges
        )));
    }
    if row.a > row.b {
        return Err(corrupt(format!(
            "row ({}, {}) stores the redundant symmetric half",
            row.a, row.b
        )));
    }
    if (row.b - row.a) % 3 != 0 {
        return Err(corrupt(format!(
            "exponents ({}, {}) violate the mod-3 congruence",
            row.a, row.b
        )));
    }
    if !row.coeff.is_positive() {
        return Err(corrupt(format!(
            "coefficient {} at ({}, {}, {}, {}) is not positive",
            row.coeff, row.edges, row.genus, row.a, row.b
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn solved(edges: usize) -> SolveState {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(edges).expect("solve");
        state
    }

    fn table(edges: usize) -> CoeffTable {
        CoeffTable::from_state(&solved(edges)).expect("table")
    }

    #[test]
    fn three_edge_table_lists_the_five_half_monomials() {
        let t = table(3);
        let got: Vec<(usize, u16, u16, u16, Int)> = t
            .rows()
            .iter()
            .map(|r| (r.edges, r.genus, r.a, r.b, r.coeff.clone()))
            .collect();
        let want = vec![
            (3, 0, 0, 0, int(240)),
            (3, 0, 0, 3, int(480)),
            (3, 0, 1, 1, int(720)),
            (3, 1, 0, 0, int(240)),
            (3, 1, 0, 3, int(120)),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn partition_polynomial_restores_both_halves() {
        let state = solved(6);
        let t = CoeffTable::from_state(&state).expect("table");
        for n in 1..=2 {
            for g in 0..=1 {
                assert_eq!(
                    t.partition_polynomial(n, g as u16).expect("poly"),
                    state.partition_polynomial(n, g).expect("poly"),
                    "mismatch at n={n}, g={g}"
                );
            }
        }
        assert!(t.partition_polynomial(4, 0).is_err());
    }

    #[test]
    fn disk_round_trip_is_lossless_and_idempotent() {
        let t = table(12);
        let dir = tempfile::tempdir().expect("tempdir");
        let path = dir.path().join("coeffs.tbl");
        t.save(&path).expect("save");
        let loaded = CoeffTable::load(&path).expect("load");
        assert_eq!(loaded, t);
        // resaving writes identical bytes
        let first = std::fs::read(&path).expect("read");
        loaded.save(&path).expect("resave");
        assert_eq!(std::fs::read(&path).expect("read"), first);
    }

    #[test]
    fn rebuilt_state_resumes_to_the_same_series() {
        let t = table(6);
        let mut resumed = t.to_state(Mode::Checked).expect("state");
        resumed.compute_up_to(12).expect("extend");
        let fresh = solved(12);
        for e in 0..=12 {
            assert_eq!(
                resumed.j_poly(e).expect("poly"),
                fresh.j_poly(e).expect("poly"),
                "series mismatch at {e} edges"
            );
        }
    }

    #[test]
    fn corruption_is_refused() {
        let t = table(6);
        let good = t.serialize();

        // flipped digit in a coefficient
        let tampered = good.replacen("720", "721", 1);
        assert!(matches!(
            CoeffTable::deserialize(&tampered),
            Err(Error::CorruptTable(msg)) if msg.contains("checksum")
        ));

        // a truncated file
        let truncated = &good[..good.len() - 10];
        assert!(CoeffTable::deserialize(truncated).is_err());

        // wrong magic
        let wrong_magic = good.replacen("v1", "v9", 1);
        assert!(CoeffTable::deserialize(&wrong_magic).is_err());
    }

    /// Re-checksums a structurally tampered body so the structural
    /// validation (not the checksum) is what trips.
    fn with_fresh_checksum(body: &str) -> String {
        format!("{MAGIC}\nsha256 {}\n{body}", CoeffTable::digest(body))
    }

    #[test]
    fn structural_invariants_are_enforced() {
        let cases = [
            // symmetric half stored
            ("max-edges 3\n3 0 3 0 480\n", "redundant symmetric half"),
            // congruence violated
            ("max-edges 3\n3 0 0 1 7\n", "mod-3 congruence"),
            // zero coefficient
            ("max-edges 3\n3 0 0 0 0\n", "not positive"),
            // out of order
            (
                "max-edges 3\n3 0 0 3 480\n3 0 0 0 240\n",
                "rows out of order",
            ),
            // genus beyond the cap
            ("max-edges 3\n3 2 0 0 240\n", "genus 2 impossible"),
            // missing grade
            ("max-edges 6\n3 0 0 0 240\n", "no rows for 6 edges"),
            // non-canonical number
            ("max-edges 3\n3 0 0 0 0240\n", "bad coefficient"),
        ];
        for (body, needle) in cases {
            let err = CoeffTable::deserialize(&with_fresh_checksum(body))
                .expect_err("must be refused");
            let msg = err.to_string();
            assert!(
                msg.contains(needle),
                "expected {needle:?} in error {msg:?} for body {body:?}"
            );
        }
    }

    #[test]
    fn perturbed_table_fails_the_equation_residual() {
        let mut t = table(9);
        let row = t
            .rows
            .iter_mut()
            .find(|r| r.edges == 9 && r.genus == 1)
            .expect("a 9-edge genus-1 row");
        row.coeff += 1;
        let state = t.to_state(Mode::Checked).expect("state");
        let residual =
            crate::solver::equation_residual(&state.j_series()).expect("residual");
        let nonzero = (0..=residual.trunc())
            .find(|&e| !residual.coeff(e).expect("grade").is_zero())
            .expect("perturbation must surface");
        assert!(nonzero <= 9 + 4, "residual appears near the tampered grade");
    }

    #[test]
    fn json_export_round_trips() {
        let t = table(6);
        let json = t.to_json();
        let back = CoeffTable::from_json(&json).expect("parse");
        assert_eq!(back, t);
        assert_eq!(back.to_json(), json, "re-export is byte-identical");
    }

    #[test]
    fn empty_exports_are_header_only() {
        let t = CoeffTable::empty();
        assert_eq!(t.to_csv(), "e,g,a,b,c\n");
        let json = t.to_json();
        assert_eq!(
            CoeffTable::from_json(&json).expect("parse"),
            CoeffTable::empty()
        );
        assert!(json.contains("\"rows\": []"));
    }

    #[test]
    fn csv_export_matches_golden_three_edge_table() {
        let t = table(3);
        let want = "\
e,g,a,b,c
3,0,0,0,240
3,0,0,3,480
3,0,1,1,720
3,1,0,0,240
3,1,0,3,120
";
        assert_eq!(t.to_csv(), want);
    }
}

//! The `verify` subcommand: cross-check suites over a computed cache.
//!
//! Every suite re-derives a slice of the computed data by an independent
//! route — direct enumeration, a recurrence, a closed form, a residual of
//! a defining equation — and compares exactly.  The outcome is a
//! machine-readable JSON report listing each suite's status and, on
//! failure, the first counterexample.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::ValueEnum;
use ising_core::rational::{rat, rat_int};
use ising_core::special::{cubic, inequality, planar, unicellular};
use ising_core::table::CoeffTable;
use ising_core::{bipartite, oracle, param, solver, Mode, Rational, SolveState};
use serde_json::{json, Value};

use crate::lock::CacheLock;
use crate::require_depth;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Every suite below.
    All,
    /// Exhaustive enumeration at 3 and 6 edges.
    Oracle,
    /// The defining equation's residual on the whole truncation.
    Pde,
    /// One-colour counts against the Goulden–Jackson recurrence.
    Gj,
    /// One-face polynomials: closed forms and their linear equation.
    Unicellular,
    /// Genus-zero restriction: its equation and white-map counts.
    Planar,
    /// The rooted-count lower bound on a 9-point weight grid.
    Inequality,
    /// The bipartite change of variables and its quadratic equation.
    Bipartite,
    /// The planar parametrization oracle against the solved series.
    Param,
}

const ALL_SUITES: [SuiteArg; 8] = [
    SuiteArg::Oracle,
    SuiteArg::Pde,
    SuiteArg::Gj,
    SuiteArg::Unicellular,
    SuiteArg::Planar,
    SuiteArg::Inequality,
    SuiteArg::Bipartite,
    SuiteArg::Param,
];

fn suite_name(which: SuiteArg) -> &'static str {
    match which {
        SuiteArg::All => "all",
        SuiteArg::Oracle => "oracle",
        SuiteArg::Pde => "pde",
        SuiteArg::Gj => "gj",
        SuiteArg::Unicellular => "unicellular",
        SuiteArg::Planar => "planar",
        SuiteArg::Inequality => "inequality",
        SuiteArg::Bipartite => "bipartite",
        SuiteArg::Param => "param",
    }
}

/// What one suite produced: pass/fail, the first counterexample (if any),
/// and suite-specific detail for the report.
struct SuiteResult {
    pass: bool,
    counterexample: Option<Value>,
    details: Value,
}

impl SuiteResult {
    fn pass(details: Value) -> SuiteResult {
        SuiteResult {
            pass: true,
            counterexample: None,
            details,
        }
    }

    fn fail(counterexample: Value, details: Value) -> SuiteResult {
        SuiteResult {
            pass: false,
            counterexample: Some(counterexample),
            details,
        }
    }
}

pub fn cmd_verify(
    suite: SuiteArg,
    max_edges: usize,
    cache: &Path,
    report_path: Option<&Path>,
    inject_perturbation: bool,
) -> anyhow::Result<ExitCode> {
    let _lock = CacheLock::acquire(cache)?;
    let mut table = CoeffTable::load(cache)
        .with_context(|| format!("loading the cache at {}", cache.display()))?;
    let depth = max_edges / 3 * 3;
    require_depth(&table, depth)?;

    let perturbation = if inject_perturbation {
        // the deepest row within the requested depth, so the damage sits in
        // the region being verified
        let index = table
            .rows()
            .iter()
            .rposition(|row| row.edges <= depth)
            .context("no rows within the requested depth to perturb")?;
        let row = table
            .bump_coefficient(index)
            .context("cannot perturb an empty table")?;
        Some(json!({
            "edges": row.edges,
            "genus": row.genus,
            "a": row.a,
            "b": row.b,
        }))
    } else {
        None
    };

    let state = table.to_state(Mode::Checked)?;
    let selected: Vec<SuiteArg> = match suite {
        SuiteArg::All => ALL_SUITES.to_vec(),
        one => vec![one],
    };

    let mut suites = Vec::new();
    let mut all_pass = true;
    for which in selected {
        let start = Instant::now();
        let result = run_suite(which, &state, depth);
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let (pass, counterexample, mut details) = match result {
            Ok(r) => (r.pass, r.counterexample, r.details),
            Err(e) => (false, Some(json!({ "error": format!("{e:#}") })), json!({})),
        };
        if let Value::Object(map) = &mut details {
            map.insert("elapsed_ms".into(), json!(elapsed_ms));
        }
        all_pass &= pass;
        suites.push(json!({
            "suite": suite_name(which),
            "status": if pass { "pass" } else { "fail" },
            "counterexample": counterexample,
            "details": details,
        }));
    }

    let report = json!({
        "command": "verify",
        "max_edges": depth,
        "perturbation": perturbation,
        "status": if all_pass { "pass" } else { "fail" },
        "suites": suites,
    });
    let rendered = format!("{:#}\n", report);
    print!("{rendered}");
    if let Some(path) = report_path {
        std::fs::write(path, &rendered)
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run_suite(which: SuiteArg, state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    match which {
        SuiteArg::All => unreachable!("expanded by the caller"),
        SuiteArg::Oracle => suite_oracle(state, depth),
        SuiteArg::Pde => suite_pde(state, depth),
        SuiteArg::Gj => suite_gj(state, depth),
        SuiteArg::Unicellular => suite_unicellular(state, depth),
        SuiteArg::Planar => suite_planar(state, depth),
        SuiteArg::Inequality => suite_inequality(state, depth),
        SuiteArg::Bipartite => suite_bipartite(state, depth),
        SuiteArg::Param => suite_param(state, depth),
    }
}

/// Exhaustive enumeration agrees with the solved series at 3 and (depth
/// permitting) 6 edges, for every genus and every monomial.
fn suite_oracle(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let n_max = (depth / 3).min(2);
    let mut compared = 0usize;
    for n in 1..=n_max {
        let enumerated = oracle::ising_polynomials(n)?;
        for (g, want) in enumerated.iter().enumerate() {
            let got = state.partition_polynomial(n, g)?;
            if got != *want {
                return Ok(SuiteResult::fail(
                    json!({ "edges": 3 * n, "genus": g }),
                    json!({ "polynomials_compared": compared }),
                ));
            }
            compared += 1;
        }
    }
    Ok(SuiteResult::pass(
        json!({ "polynomials_compared": compared, "sizes": (1..=n_max).map(|n| 3 * n).collect::<Vec<_>>() }),
    ))
}

/// The defining equation's residual vanishes identically on the computed
/// truncation.  The scan covers every grade the cache holds — not just the
/// requested depth — so corruption anywhere in the file surfaces here.
fn suite_pde(state: &SolveState, _depth: usize) -> anyhow::Result<SuiteResult> {
    let residual = solver::equation_residual(&state.j_series())?;
    for e in 0..=residual.trunc() {
        let coeff = residual.coeff(e)?;
        if !coeff.is_zero() {
            let genus = coeff.terms().map(|(m, _)| m.g).min().unwrap_or(0);
            return Ok(SuiteResult::fail(
                json!({ "edges": e, "genus": genus }),
                json!({ "residual_terms": coeff.len() }),
            ));
        }
    }
    Ok(SuiteResult::pass(json!({ "grades_checked": residual.trunc() })))
}

/// One-colour (monochromatic) coefficients match the quadratic recurrence,
/// and the associated differential identity has zero residual.
fn suite_gj(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let n_max = (depth / 3).min(12);
    let g_max = (n_max + 1) / 2;
    let table = cubic::RootedCubicTable::new(n_max, g_max);
    let mut compared = 0usize;
    for n in 1..=n_max {
        for g in 0..=(n + 1) / 2 {
            let rooted = state.rooted_polynomial(n, g)?;
            let got = cubic::monochromatic_coefficient(&rooted, n);
            let want = table.get(n as i64, g as i64);
            if got != want {
                return Ok(SuiteResult::fail(
                    json!({ "edges": 3 * n, "genus": g }),
                    json!({ "coefficients_compared": compared }),
                ));
            }
            compared += 1;
        }
    }
    if let Some(((e, g), _)) = cubic::ode_residual(&table).first() {
        return Ok(SuiteResult::fail(
            json!({ "edges": e, "genus": g, "check": "differential-identity" }),
            json!({ "coefficients_compared": compared }),
        ));
    }
    Ok(SuiteResult::pass(
        json!({ "coefficients_compared": compared, "max_size": n_max }),
    ))
}

/// One-face polynomials: the eleven closed-form families, the linear
/// equation linking consecutive genera, and agreement with the top-genus
/// slice of the solved series.
fn suite_unicellular(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let g_max = 8usize;
    let polys = unicellular::one_face_polynomials(g_max);
    for g in 2..=g_max {
        if let Err(e) = unicellular::check_closed_forms(&polys[g - 1], g) {
            return Ok(SuiteResult::fail(
                json!({ "genus": g, "check": "closed-form", "error": e.to_string() }),
                json!({}),
            ));
        }
    }
    for g in 1..=g_max {
        let prev = (g >= 2).then(|| &polys[g - 2]);
        if let Err(e) = unicellular::check_linear_equation(prev, &polys[g - 1], g) {
            return Ok(SuiteResult::fail(
                json!({ "genus": g, "check": "linear-equation", "error": e.to_string() }),
                json!({}),
            ));
        }
    }
    // U_g is the top-genus slice of the solved series at 6g-3 edges
    let mut slices = 0usize;
    for g in 1..=g_max {
        let edges = unicellular::edge_count(g);
        if edges > depth {
            break;
        }
        let slice = state.j_poly(edges)?.s_slice(g as u16);
        if slice != polys[g - 1] {
            return Ok(SuiteResult::fail(
                json!({ "edges": edges, "genus": g, "check": "series-slice" }),
                json!({}),
            ));
        }
        slices += 1;
    }
    Ok(SuiteResult::pass(
        json!({ "closed_form_genera": g_max, "series_slices": slices }),
    ))
}

/// The genus-zero restriction satisfies its own equation, and its
/// one-colour counts match the planar closed form.
fn suite_planar(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let series = planar::planar_series(state);
    let residual = planar::planar_residual(&series)?;
    for e in 0..=depth.min(residual.trunc()) {
        if !residual.coeff(e)?.is_zero() {
            return Ok(SuiteResult::fail(
                json!({ "edges": e, "genus": 0 }),
                json!({ "check": "planar-equation" }),
            ));
        }
    }
    let n_max = (depth / 3).min(12);
    if let Err(e) = planar::check_white_counts(state, n_max) {
        return Ok(SuiteResult::fail(
            json!({ "check": "white-counts", "error": e.to_string() }),
            json!({}),
        ));
    }
    Ok(SuiteResult::pass(
        json!({ "grades_checked": depth, "white_counts_through": n_max }),
    ))
}

/// The rooted-count lower bound holds at every grid point, size, and
/// genus; the report lists every check performed.
fn suite_inequality(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let n_max = (depth / 3).min(12);
    let mut grid = Vec::new();
    let mut first_violation = None;
    if n_max >= 5 {
        for check in inequality::check_range(state, 5, n_max)? {
            let holds = check.holds();
            grid.push(json!({
                "n": check.n,
                "g": check.g,
                "nu_bullet": check.nu_bullet.to_string(),
                "nu_circ": check.nu_circ.to_string(),
                "holds": holds,
            }));
            if !holds && first_violation.is_none() {
                first_violation = Some(json!({
                    "n": check.n,
                    "g": check.g,
                    "nu_bullet": check.nu_bullet.to_string(),
                    "nu_circ": check.nu_circ.to_string(),
                }));
            }
        }
    }
    let details = json!({ "points": grid.len(), "grid": grid });
    Ok(match first_violation {
        Some(cx) => SuiteResult::fail(cx, details),
        None => SuiteResult::pass(details),
    })
}

/// The bipartite change of variables: the two low-order coefficients, the
/// quadratic equation's residual, and the inverse substitution.
fn suite_bipartite(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let zmax = depth.min(16);
    let b = bipartite::b_series(state, zmax)?;

    let mono = |p2: u16, q2: u16, u: i32| bipartite::ZMonomial { p2, q2, u };
    let mut want2 = bipartite::ZPoly::default();
    want2.insert(mono(1, 1, 2), rat(1, 2));
    if *b.coeff(2) != want2 {
        return Ok(SuiteResult::fail(
            json!({ "z": 2, "check": "low-order-coefficient" }),
            json!({}),
        ));
    }
    let mut want3 = bipartite::ZPoly::default();
    want3.insert(mono(0, 0, 3), rat(1, 3));
    want3.insert(mono(0, 0, 1), rat(1, 3));
    if *b.coeff(3) != want3 {
        return Ok(SuiteResult::fail(
            json!({ "z": 3, "check": "low-order-coefficient" }),
            json!({}),
        ));
    }

    let window = zmax.saturating_sub(4);
    if let Some(z) = bipartite::kp_bip_residual(&b).first_nonzero_through(window) {
        return Ok(SuiteResult::fail(
            json!({ "z": z, "check": "equation-residual" }),
            json!({ "window": window }),
        ));
    }
    if let Err(e) = bipartite::check_round_trip(state, &b) {
        return Ok(SuiteResult::fail(
            json!({ "check": "round-trip", "error": e.to_string() }),
            json!({}),
        ));
    }
    let recovered: Vec<usize> = [3, 6].into_iter().filter(|te| 2 * te <= zmax).collect();
    Ok(SuiteResult::pass(json!({
        "z_truncation": zmax,
        "residual_window": window,
        "round_trip_grades": recovered,
    })))
}

/// The rational parametrization reproduces the planar rooted series at a
/// regular point and on the singular locus.
fn suite_param(state: &SolveState, depth: usize) -> anyhow::Result<SuiteResult> {
    let n = (depth / 3).min(8);
    let points: [(Rational, Rational, &str); 2] = [
        (rat_int(1), rat_int(1), "(1, 1)"),
        (rat(1, 2), rat(1, 3), "(1/2, 1/3)"),
    ];
    for (nb, nw, label) in &points {
        let got = param::rooted_series_at(nb, nw, n)?;
        let want = param::solver_reference(state, nb, nw, n)?;
        if got != want {
            let first = (0..=n).find(|&k| got[k] != want[k]).unwrap_or(0);
            return Ok(SuiteResult::fail(
                json!({ "point": label, "t_power": first }),
                json!({}),
            ));
        }
    }
    if param::rooted_series_at(&rat_int(1), &rat_int(1), n)?[1] != rat_int(16) {
        return Ok(SuiteResult::fail(
            json!({ "point": "(1, 1)", "t_power": 1 }),
            json!({}),
        ));
    }
    let branches = param::param_oracle(&rat(1, 2), &rat(1, 3), n)?;
    if branches.len() != 1 {
        return Ok(SuiteResult::fail(
            json!({ "point": "(1/2, 1/3)", "check": "branch-selection", "branches": branches.len() }),
            json!({}),
        ));
    }
    Ok(SuiteResult::pass(
        json!({ "t_truncation": n, "selected_direction": branches[0].sigma.to_string() }),
    ))
}

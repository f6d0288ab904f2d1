//! The `bench` subcommand: wall-clock and peak-memory figures at
//! reference sizes.
//!
//! Each size runs in a fresh child process (the binary re-invokes itself
//! with the hidden `--single` flag) so that peak-memory readings from
//! `/proc/self/status` are isolated per size.  The smallest size also runs
//! once in checked mode, and the two tables' digests are compared — the
//! modes must produce byte-identical artifacts.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use anyhow::{bail, Context};
use ising_core::table::CoeffTable;
use ising_core::{Mode, SolveState};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// One size's measurements, as reported by a `--single` child.
struct Single {
    edges: usize,
    wall_ms: u64,
    vm_hwm_kb: u64,
    rows: usize,
    top_genus: u64,
    table_sha256: String,
}

/// Runs one size in-process and prints a single JSON line (the parent
/// parses it).
pub fn cmd_bench_single(edges: usize, mode: Mode) -> anyhow::Result<ExitCode> {
    let start = Instant::now();
    let mut state = SolveState::new(mode);
    state.compute_up_to(edges)?;
    let table = CoeffTable::from_state(&state)?;
    let wall_ms = start.elapsed().as_millis() as u64;
    let digest: String = Sha256::digest(table.serialize().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let line = json!({
        "edges": table.max_edges(),
        "wall_ms": wall_ms,
        "vm_hwm_kb": vm_hwm_kb(),
        "rows": table.rows().len(),
        "top_genus": state.max_present_genus().unwrap_or(0),
        "table_sha256": digest,
    });
    println!("{line}");
    Ok(ExitCode::SUCCESS)
}

/// Peak resident set size of this process, in kilobytes, from
/// `/proc/self/status` (`VmHWM`); zero when unavailable.
fn vm_hwm_kb() -> u64 {
    let Ok(status) = std::fs::read_to_string("/proc/self/status") else {
        return 0;
    };
    status
        .lines()
        .find_map(|line| line.strip_prefix("VmHWM:"))
        .and_then(|rest| rest.trim().trim_end_matches(" kB").trim().parse().ok())
        .unwrap_or(0)
}

fn spawn_single(edges: usize, mode: &str) -> anyhow::Result<Single> {
    let exe = std::env::current_exe().context("locating the running binary")?;
    let output = Command::new(&exe)
        .args([
            "bench",
            "--single",
            &edges.to_string(),
            "--mode",
            mode,
        ])
        .output()
        .with_context(|| format!("spawning a {mode}-mode child for {edges} edges"))?;
    if !output.status.success() {
        bail!(
            "child for {edges} edges ({mode}) failed: {}",
            String::from_utf8_lossy(&output.stderr).trim()
        );
    }
    let text = String::from_utf8_lossy(&output.stdout);
    let line = text
        .lines()
        .last()
        .with_context(|| format!("child for {edges} edges printed nothing"))?;
    let value: Value = serde_json::from_str(line)
        .with_context(|| format!("parsing the child report {line:?}"))?;
    let field = |k: &str| {
        value
            .get(k)
            .and_then(Value::as_u64)
            .with_context(|| format!("child report is missing {k}"))
    };
    Ok(Single {
        edges: field("edges")? as usize,
        wall_ms: field("wall_ms")?,
        vm_hwm_kb: field("vm_hwm_kb")?,
        rows: field("rows")? as usize,
        top_genus: field("top_genus")?,
        table_sha256: value
            .get("table_sha256")
            .and_then(Value::as_str)
            .context("child report is missing table_sha256")?
            .to_string(),
    })
}

pub fn cmd_bench(sizes: &[usize], report_path: Option<&Path>) -> anyhow::Result<ExitCode> {
    if sizes.is_empty() {
        bail!("no sizes to benchmark");
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("sizes must be strictly increasing");
    }
    if sizes[0] < 3 {
        bail!("sizes start at 3 edges");
    }

    let mut singles = Vec::with_capacity(sizes.len());
    for &edges in sizes {
        let single = spawn_single(edges, "fast")?;
        eprintln!(
            "  {} edges: {} ms wall, {} kB peak, {} rows, top genus {}",
            single.edges, single.wall_ms, single.vm_hwm_kb, single.rows, single.top_genus
        );
        singles.push(single);
    }

    // mode equivalence at the smallest size: byte-identical tables
    let checked = spawn_single(sizes[0], "checked")?;
    let modes_identical = checked.table_sha256 == singles[0].table_sha256;
    let timing_monotone = singles.windows(2).all(|w| w[0].wall_ms <= w[1].wall_ms);

    let report = json!({
        "command": "bench",
        "mode": "fast",
        "sizes": singles.iter().map(|s| json!({
            "edges": s.edges,
            "wall_ms": s.wall_ms,
            "vm_hwm_kb": s.vm_hwm_kb,
            "rows": s.rows,
            "top_genus": s.top_genus,
            "table_sha256": s.table_sha256,
        })).collect::<Vec<_>>(),
        "modes_identical_at": sizes[0],
        "modes_identical": modes_identical,
        "timing_monotone": timing_monotone,
        "status": if modes_identical { "pass" } else { "fail" },
    });
    let rendered = format!("{report:#}\n");
    print!("{rendered}");
    if let Some(path) = report_path {
        std::fs::write(path, &rendered)
            .with_context(|| format!("writing report to {}", path.display()))?;
    }
    Ok(if modes_identical {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

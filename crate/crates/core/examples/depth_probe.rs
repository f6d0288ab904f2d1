//! Wall-clock probe for deep truncations (not part of the test suite).
use ising_core::{Mode, SolveState};
use std::time::Instant;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(36);
    let mode = match std::env::args().nth(2).as_deref() {
        Some("fast") => Mode::Fast,
        _ => Mode::Checked,
    };
    let t0 = Instant::now();
    let mut st = SolveState::new(mode);
    let mut last = Instant::now();
    for stop in (3..=n).step_by(3) {
        st.compute_up_to(stop).unwrap();
        if last.elapsed().as_secs_f64() > 5.0 || stop == n {
            println!("  grade {stop:4}  (+{:7.2?} total)", t0.elapsed());
            last = Instant::now();
        }
    }
    println!(
        "{} mode to {} edges: {:.2?}; top genus {:?}",
        mode, n, t0.elapsed(), st.max_present_genus()
    );
}

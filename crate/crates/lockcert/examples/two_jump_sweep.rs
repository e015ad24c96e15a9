//! Map the feasibility boundary of two-jump chains: sweep the inner jump's
//! upper bound and the outer jump's lower bound, print the CSV.
//!
//! ```bash
//! cargo run -p lockcert --example two_jump_sweep
//! ```

use lockcert::sweep::{parse_grid, run, worker_count, write_csv};
use lockcert::DEFAULT_TOL;

fn main() {
    // Inner corner fixed at H_low = 1 with the concave bound swept over
    // [1, 3]; outer corner upper bound fixed at 2 with the convex bound
    // swept over [2, 3.5]. The square-sum boundary cuts through this
    // window.
    let grid = parse_grid("1:1:1,1:3:9,2:3.5:7,2:2:1").unwrap();
    let rows = run(&grid, DEFAULT_TOL, worker_count());

    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    let certified = rows.iter().filter(|r| r.verdict.starts_with("certified")).count();
    eprintln!(
        "\n{}/{} cells certified ({} workers)",
        certified,
        rows.len(),
        worker_count()
    );
}

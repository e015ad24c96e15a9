//! Brute force against closed form: scan the boost angle over a dense grid
//! and compare the best achievable jump margin with the constructed angle's.
//!
//! ```bash
//! cargo run -p lockcert --example theta_oracle
//! ```

use lockcert::{oracle, CornerChain, InterfaceData, DEFAULT_TOL};

fn main() {
    let chain = CornerChain::new(
        3,
        vec![
            InterfaceData::new("sigma_1", vec![1.0], vec![2.0]),
            InterfaceData::new("sigma_2", vec![3.0], vec![2.0]),
        ],
        None,
    )
    .unwrap();

    println!("scanning theta over [-10, 10], 200001 points\n");
    for (idx, r) in oracle::scan_chain(&chain, 10.0, 200_001, DEFAULT_TOL)
        .iter()
        .enumerate()
    {
        println!("interface {} ({}):", idx + 1, r.name);
        println!("  a = {:.7}, target xi = {:.7}", r.a, r.xi_target);
        match r.closed {
            Some((theta, margin)) => {
                println!("  closed form: theta = {theta:+.7}, margin = {margin:+.7e}")
            }
            None => println!(
                "  closed form: none ({})",
                r.closed_error.as_deref().unwrap_or("?")
            ),
        }
        println!(
            "  grid best:   theta = {:+.7}, margin = {:+.7e}",
            r.grid.best_theta, r.grid.best_margin
        );
        println!(
            "  resolution bound (lipschitz {:.3} x step {:.1e}) = {:.3e}, flagged = {}",
            r.lipschitz,
            r.grid.step,
            r.resolution_bound,
            r.flagged()
        );
    }

    // An interface that cannot close: the incoming trace exceeds the
    // curvature floor, the boosted vector is spacelike, and no angle works.
    println!("\nnon-existence demo: a = 2 against H = (1, 0.5), target xi = 0");
    let scan = oracle::scan(&[(1.0, 0.5)], 2.0, 0.0, -12.0, 12.0, 100_001);
    println!(
        "  best margin over the whole grid: {:+.6} at theta = {:+.4} (stays negative)",
        scan.best_margin, scan.best_theta
    );
}

//! One corner in isolation: build the lemma input, get the closed-form
//! boost angle, and check the jump inequality at every sample.
//!
//! ```bash
//! cargo run -p lockcert --example single_corner
//! ```

use lockcert::{jump_vector, lock_angle, verify_interface, xi, LemmaInput, DEFAULT_TOL};

fn main() {
    // Bounds (H_low_minus, H_bar_plus) = (1, 2) with no incoming k-trace:
    // a mean-concave corner, hopeless without a boost.
    let h_low = 1.0;
    let h_bar = 2.0;
    let a = 0.0;

    let xi_out = xi(h_bar, h_low, a, DEFAULT_TOL).unwrap();
    let theta = lock_angle(h_low, h_bar, a, DEFAULT_TOL).unwrap();
    println!("bounds (H_low_minus, H_bar_plus) = ({h_low}, {h_bar}), a = {a}");
    println!("outgoing k-trace xi = {xi_out}   (sqrt 3)");
    println!("lock angle theta    = {theta}   (asinh(-sqrt 3))");

    // At the bound corner the jump vector vanishes: the inequality is
    // sharp there.
    let corner = jump_vector(theta, h_low, a, h_bar, xi_out);
    println!("jump at the corner  = ({:.3e}, {:.3e})", corner.t, corner.s);

    // Samples strictly inside the bounds get positive margins.
    let samples = vec![(1.0, 2.0), (1.3, 1.9), (1.7, 1.4), (2.0, 2.0)];
    let input = LemmaInput::new(h_low, h_bar, a, samples.clone()).unwrap();
    let verdict = verify_interface(&input, xi_out, DEFAULT_TOL).unwrap();
    println!("\nper-sample margins X1 - |X2|:");
    for (h_minus, h_plus) in &samples {
        let x = jump_vector(theta, *h_minus, a, *h_plus, xi_out);
        println!("  H = ({h_minus}, {h_plus}) -> {:+.6}", x.t - x.s.abs());
    }
    println!(
        "verdict: pass = {}, min margin = {:.3e}",
        verdict.pass, verdict.min_margin
    );

    // Without the boost (theta = 0) the same corner fails.
    let x = jump_vector(0.0, h_low, 0.0, h_bar, 0.0);
    println!(
        "\nfor contrast, unboosted time-symmetric jump: X1 - |X2| = {}",
        x.t - x.s.abs()
    );
}

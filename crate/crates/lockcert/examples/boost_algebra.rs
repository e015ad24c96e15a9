//! Minkowski-plane basics: the quadratic form, boosts, and what they
//! preserve.
//!
//! ```bash
//! cargo run -p lockcert --example boost_algebra
//! ```

use lockcert::{boost_apply, lorentz_norm_sq, Boost, LorentzVec};

fn main() {
    let v = LorentzVec::new(2.0, 1.0);
    println!("v = ({}, {})", v.t, v.s);
    println!("t^2 - s^2 = {}", lorentz_norm_sq(v));

    // cosh(ln 2) = 5/4, sinh(ln 2) = 3/4.
    let theta = 2.0_f64.ln();
    let b = Boost::new(theta);
    println!(
        "\nboost theta = ln 2: cosh = {}, sinh = {}",
        b.cosh_theta(),
        b.sinh_theta()
    );
    let w = b.apply(v);
    println!("boosted v = ({}, {})", w.t, w.s);
    println!(
        "form preserved: {} -> {}",
        lorentz_norm_sq(v),
        lorentz_norm_sq(w)
    );

    // Boosts compose additively in the angle.
    let two_step = boost_apply(0.7, boost_apply(0.5, v));
    let one_step = boost_apply(1.2, v);
    println!(
        "\ngroup law: boost(0.7) . boost(0.5) = boost(1.2) up to {:e}",
        (two_step.t - one_step.t)
            .abs()
            .max((two_step.s - one_step.s).abs())
    );

    // The inverse boost undoes the forward one.
    let back = boost_apply(-theta, w);
    println!(
        "inverse boost recovers v up to {:e}",
        (back.t - v.t).abs().max((back.s - v.s).abs())
    );
}

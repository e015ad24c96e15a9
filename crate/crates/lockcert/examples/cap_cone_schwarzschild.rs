//! The showcase fixture: a round cap glued to a cone glued to an exterior
//! end. The inner corner is mean-concave, so the classical pointwise
//! condition fails there, yet the chain certifies because the outer corner
//! is convex enough in the squared-bound ledger.
//!
//! ```bash
//! cargo run -p lockcert --example cap_cone_schwarzschild
//! ```

use std::f64::consts::FRAC_PI_3;

use lockcert::chain::{build_certificate, check_hypotheses, ChainClass};
use lockcert::radial::{
    adm_mass_limit, chain_from_profile, hawking_mass, PieceSpec, PieceStop, RadialProfile,
};
use lockcert::DEFAULT_TOL;

fn profile(mass: f64) -> RadialProfile {
    RadialProfile::new(
        3,
        vec![
            PieceSpec::SphericalCap { s_end: FRAC_PI_3 },
            PieceSpec::Linear {
                slope: 0.9,
                stop: Some(PieceStop::AtWarp(1.0)),
            },
            PieceSpec::SchwarzschildEnd { mass },
        ],
    )
    .unwrap()
}

fn main() {
    let p = profile(0.48);
    let chain = chain_from_profile(&p, 1, DEFAULT_TOL).unwrap();
    let bounds = chain.bounds();
    println!("cap(pi/3) + cone(slope 0.9) + end(mass 0.48)");
    println!(
        "interface 1: H = ({:.7}, {:.7})  <- mean-CONCAVE, jump {:+.7}",
        bounds[0].0,
        bounds[0].1,
        bounds[0].0 - bounds[0].1
    );
    println!(
        "interface 2: H = ({:.7}, {:.7})  <- mean-convex, jump {:+.7}",
        bounds[1].0,
        bounds[1].1,
        bounds[1].0 - bounds[1].1
    );

    let report = check_hypotheses(&chain, DEFAULT_TOL);
    println!("\nsquare sum = {:+.7} (just barely nonnegative)", report.square_sum);
    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    println!("verdict: {}", cert.verdict.token());
    for (idx, rec) in cert.interfaces.iter().enumerate() {
        println!(
            "  interface {}: theta = {:+.7}, margin = {:+.7}",
            idx + 1,
            rec.theta,
            rec.min_margin
        );
    }
    let (s_end, _) = p.junctions()[1];
    println!("\nquasi-local mass along the end (constant by construction):");
    for ds in [0.0, 1.0, 4.0] {
        println!("  m(s = junction + {ds}) = {:.10}", hawking_mass(&p, s_end + ds).unwrap());
    }
    println!("total mass: {}", adm_mass_limit(&p).unwrap());

    // Weaken the outer jump: slope 0.3 at the junction means mass 0.455,
    // and the square sum dips negative.
    let weak = profile(0.455);
    let weak_chain = chain_from_profile(&weak, 1, DEFAULT_TOL).unwrap();
    let weak_report = check_hypotheses(&weak_chain, DEFAULT_TOL);
    println!(
        "\nweakened end (junction slope 0.3): square sum = {:+.7}",
        weak_report.square_sum
    );
    match weak_report.overall {
        ChainClass::Rejected(reason) => println!("rejected: {reason}"),
        other => println!("unexpected: {other:?}"),
    }
}

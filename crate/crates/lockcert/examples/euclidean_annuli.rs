//! Flat space cut into a ball and two annuli: every jump is flat, the
//! defect ledger is identically zero, and no boost is needed.
//!
//! ```bash
//! cargo run -p lockcert --example euclidean_annuli
//! ```

use lockcert::chain::build_certificate;
use lockcert::radial::{
    adm_mass_limit, chain_from_profile, sphere_mean_curvature, PieceSpec, PieceStop, RadialProfile,
};
use lockcert::DEFAULT_TOL;

fn main() {
    let profile = RadialProfile::new(
        3,
        vec![
            PieceSpec::Linear {
                slope: 1.0,
                stop: Some(PieceStop::AtS(1.0)),
            },
            PieceSpec::Linear {
                slope: 1.0,
                stop: Some(PieceStop::AtS(2.0)),
            },
            PieceSpec::Linear {
                slope: 1.0,
                stop: None,
            },
        ],
    )
    .unwrap();

    println!("unit spheres in flat 3-space: H = 2/s");
    for (piece, s) in [(0, 1.0), (1, 2.0)] {
        println!(
            "  H at s = {s} (inner side): {}",
            sphere_mean_curvature(&profile, piece, s).unwrap()
        );
    }

    let chain = chain_from_profile(&profile, 1, DEFAULT_TOL).unwrap();
    println!("\nchain bounds: {:?}", chain.bounds());

    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    println!("defects d = {:?} (no defect anywhere)", cert.ledger.d);
    println!("verdict: {}", cert.verdict.token());
    println!(
        "boost angles: {:?} (time-symmetric data suffices)",
        cert.interfaces.iter().map(|r| r.theta).collect::<Vec<_>>()
    );
    println!("total mass: {}", adm_mass_limit(&profile).unwrap());
}

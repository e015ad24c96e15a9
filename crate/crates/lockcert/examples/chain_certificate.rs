//! The full pipeline on a two-jump chain: hypothesis check, defect ledger,
//! certificate assembly, JSON rendering, independent re-verification.
//!
//! ```bash
//! cargo run -p lockcert --example chain_certificate
//! ```

use lockcert::chain::{build_certificate, check_hypotheses, verify_certificate};
use lockcert::docs::{render_json, CertificateDocument};
use lockcert::{CornerChain, InterfaceData, DEFAULT_TOL};

fn main() {
    // Inner corner mean-concave (1 -> 2), outer corner mean-convex
    // (3 -> 2): the classical pointwise condition fails at the first
    // corner, but the squares balance: (1 - 4) + (9 - 4) = 2 >= 0.
    let chain = CornerChain::new(
        3,
        vec![
            InterfaceData::new("sigma_1", vec![1.0], vec![2.0]),
            InterfaceData::new("sigma_2", vec![3.0], vec![2.0]),
        ],
        None,
    )
    .unwrap();

    let report = check_hypotheses(&chain, DEFAULT_TOL);
    println!("hypotheses: {:?}", report.overall);
    println!("square sum: {}", report.square_sum);
    println!("split index: {:?} (candidates {:?})", report.lambda, report.lambda_candidates);

    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    println!("\ndefects d = {:?}", cert.ledger.d);
    println!("traces  c = {:?}", cert.ledger.c);
    println!("k-tensor factors c_l/(n-1) = {:?}", cert.k_factors);
    for (idx, rec) in cert.interfaces.iter().enumerate() {
        println!(
            "interface {}: a = {:.7}, effective upper = {:.7}, xi = {:.7}, theta = {:+.7}, margin = {:+.7}",
            idx + 1,
            rec.a,
            rec.effective_up,
            rec.xi,
            rec.theta,
            rec.min_margin
        );
    }
    println!("verdict: {}", cert.verdict.token());

    let ok = verify_certificate(&cert, &chain).unwrap();
    println!("independent re-verification: {ok}");

    let doc = CertificateDocument::from_certificate(&cert);
    println!("\ncertificate document:\n{}", String::from_utf8(render_json(&doc)).unwrap());
}

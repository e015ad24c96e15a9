//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p lockcert --test acceptance -- --nocapture` to see
//! the per-criterion lines.

mod common;

use std::f64::consts::FRAC_PI_3;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_admissible_chain, random_arbitrary_chain, random_lemma_input};
use lockcert::chain::{
    build_certificate, check_hypotheses, defect_ledger, verify_certificate, ChainClass, Verdict,
};
use lockcert::lock::{
    boost_apply, jump_vector, lock_angle, lorentz_norm_sq, verify_interface, xi, LorentzVec,
    DEFAULT_TOL,
};
use lockcert::radial::{
    adm_mass_limit, chain_from_profile, hawking_mass, sphere_mean_curvature,
    warped_scalar_curvature, PieceSpec, PieceStop, RadialProfile,
};
use lockcert::{oracle, InterfaceData};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_6: f64 = 2.449_489_742_783_178;
const ASINH_NEG_SQRT_3: f64 = -1.316_957_896_924_816_6;
const ASINH_HALF_SQRT_2: f64 = 0.658_478_948_462_408_4;

fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (diff {})",
        (got - want).abs()
    );
}

fn flat_annuli_profile() -> RadialProfile {
    RadialProfile::new(
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
    .unwrap()
}

fn cap_cone_end_profile(mass: f64) -> RadialProfile {
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

fn chain_b() -> lockcert::CornerChain {
    lockcert::CornerChain::new(
        3,
        vec![
            InterfaceData::new("sigma_1", vec![1.0], vec![2.0]),
            InterfaceData::new("sigma_2", vec![3.0], vec![2.0]),
        ],
        None,
    )
    .unwrap()
}

#[test]
fn criterion_1_euclidean_annuli() {
    let started = Instant::now();
    let profile = flat_annuli_profile();
    let chain = chain_from_profile(&profile, 1, DEFAULT_TOL).unwrap();
    assert_eq!(chain.bounds(), &[(2.0, 2.0), (1.0, 1.0)]);

    let ledger = defect_ledger(&chain, DEFAULT_TOL);
    assert_eq!(ledger.d, vec![0.0, 0.0, 0.0]);
    assert_eq!(ledger.c, vec![0.0, 0.0, 0.0]);
    assert_eq!(ledger.lambda_prime, None);

    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    assert_eq!(
        cert.verdict,
        Verdict::CertifiedMiaoCase {
            bound_level_interfaces: vec![]
        }
    );
    assert!(verify_certificate(&cert, &chain).unwrap());
    assert_eq!(adm_mass_limit(&profile).unwrap(), 0.0);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "criterion 1 PASS - euclidean annuli: bounds (2,2),(1,1), all-zero ledger, \
         certified-miao-case, mass 0 ({elapsed:?})"
    );
}

#[test]
fn criterion_2_worked_chain_b() {
    let chain = chain_b();
    let report = check_hypotheses(&chain, DEFAULT_TOL);
    assert_close(report.square_sum, 2.0, 1e-9, "square_sum");

    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert_close(cert.ledger.c[0], 0.0, 1e-9, "c_0");
    assert_close(cert.ledger.c[1], SQRT_3, 1e-9, "c_1");
    assert_close(cert.ledger.c[2], 0.0, 1e-9, "c_2");
    assert_close(cert.interfaces[0].theta, ASINH_NEG_SQRT_3, 1e-9, "theta_1");
    assert_close(cert.interfaces[1].theta, ASINH_HALF_SQRT_2, 1e-9, "theta_2");
    assert_close(cert.interfaces[0].min_margin, 0.0, 1e-9, "margin_1");
    assert_close(
        cert.interfaces[1].min_margin,
        SQRT_6 - 2.0,
        1e-9,
        "margin_2",
    );
    println!(
        "criterion 2 PASS - worked two-jump chain: square_sum 2, c_1 = sqrt3, \
         thetas ({:.7}, {:.7}), margins (0, {:.7})",
        cert.interfaces[0].theta,
        cert.interfaces[1].theta,
        cert.interfaces[1].min_margin
    );
}

#[test]
fn criterion_3_cap_cone_schwarzschild() {
    let profile = cap_cone_end_profile(0.48);
    let chain = chain_from_profile(&profile, 1, DEFAULT_TOL).unwrap();
    let bounds = chain.bounds();
    assert_close(bounds[0].0, 1.154_700_5, 1e-6, "H_1_minus");
    assert_close(bounds[0].1, 2.078_461_0, 1e-6, "H_1_plus");
    assert_close(bounds[1].0, 1.8, 1e-9, "H_2_minus");
    assert_close(bounds[1].1, 0.4, 1e-9, "H_2_plus");
    assert!(
        bounds[0].0 < bounds[0].1,
        "interface 1 must be mean-concave (classical mean-convexity fails)"
    );

    let report = check_hypotheses(&chain, DEFAULT_TOL);
    assert_close(report.square_sum, 0.093_333_333_3, 1e-7, "square_sum");
    let cert = build_certificate(&chain, DEFAULT_TOL).unwrap();
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(verify_certificate(&cert, &chain).unwrap());
    assert_close(adm_mass_limit(&profile).unwrap(), 0.48, 1e-8, "adm mass");

    // Weakening the outer jump (slope 0.3 at f = 1, i.e. mass 0.455) drives
    // the square sum negative: 2.88 - 2.9866667 = -0.1066667.
    let perturbed = cap_cone_end_profile(0.455);
    let chain_p = chain_from_profile(&perturbed, 1, DEFAULT_TOL).unwrap();
    let report_p = check_hypotheses(&chain_p, DEFAULT_TOL);
    assert_close(bounds_of(&chain_p, 1).1, 0.6, 1e-12, "perturbed H_2_plus");
    assert_close(
        report_p.square_sum,
        -0.106_666_666_7,
        1e-7,
        "perturbed square_sum",
    );
    assert!(matches!(report_p.overall, ChainClass::Rejected(_)));
    println!(
        "criterion 3 PASS - cap-cone-schwarzschild: mean-concave corner certified, \
         square_sum {:.7}, mass 0.48; perturbed square_sum {:.7} rejected",
        report.square_sum, report_p.square_sum
    );
}

fn bounds_of(chain: &lockcert::CornerChain, idx: usize) -> (f64, f64) {
    chain.bounds()[idx]
}

#[test]
fn criterion_4_lemma_property_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c454d4d41);
    let trials = 10_000;
    for trial in 0..trials {
        let input = random_lemma_input(&mut rng, 64);
        let xi_out = xi(input.h_bar_plus, input.h_low_minus, input.a, DEFAULT_TOL)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let verdict = verify_interface(&input, xi_out, DEFAULT_TOL)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let scale = input.h_bar_plus.max(1.0);
        assert!(
            verdict.pass && verdict.min_margin >= -1e-9 * scale,
            "trial {trial}: margin {} below -1e-9*{scale} for {input:?}",
            verdict.min_margin
        );
        // Equality corner: the jump vector vanishes componentwise.
        let corner = jump_vector(
            verdict.theta,
            input.h_low_minus,
            input.a,
            input.h_bar_plus,
            xi_out,
        );
        assert!(
            corner.t.abs() <= 1e-9 && corner.s.abs() <= 1e-9,
            "trial {trial}: corner jump ({}, {}) for {input:?}",
            corner.t,
            corner.s
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!(
        "criterion 4 PASS - lemma suite: {trials} random admissible inputs x 64 samples, \
         100% pass, corner jump <= 1e-9 ({elapsed:?})"
    );
}

#[test]
fn criterion_5_algebra_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x414c47);

    // Lorentz-form preservation, 1e6 trials. The boost products scale like
    // cosh(theta) * |v| and the form is recovered by cancellation, so the
    // error is measured against that intermediate scale, cosh^2 * |v|^2 --
    // the strongest statement double precision supports at theta = +-20.
    for _ in 0..1_000_000 {
        let theta: f64 = rng.gen_range(-20.0..20.0);
        let v = LorentzVec::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        let w = boost_apply(theta, v);
        let cosh = theta.cosh();
        let denom = ((v.t * v.t + v.s * v.s) * cosh * cosh).max(1.0);
        let err = (lorentz_norm_sq(w) - lorentz_norm_sq(v)).abs() / denom;
        assert!(err <= 1e-12, "form drift {err} at theta {theta}, v {v:?}");
    }

    // Group law.
    for _ in 0..100_000 {
        let t1: f64 = rng.gen_range(-5.0..5.0);
        let t2: f64 = rng.gen_range(-5.0..5.0);
        let v = LorentzVec::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        let two_step = boost_apply(t1, boost_apply(t2, v));
        let one_step = boost_apply(t1 + t2, v);
        let denom = (v.t.abs().max(v.s.abs()))
            .max(one_step.t.abs().max(one_step.s.abs()))
            .max(1.0);
        assert!(
            (two_step.t - one_step.t).abs() / denom <= 1e-11
                && (two_step.s - one_step.s).abs() / denom <= 1e-11,
            "group law drift at ({t1}, {t2})"
        );
    }

    // The difference-of-squares identity behind the jump estimate.
    for _ in 0..100_000 {
        let h_low: f64 = rng.gen_range(0.1..10.0);
        let h_bar: f64 = rng.gen_range(0.1..10.0);
        let a_min = (h_low * h_low - h_bar * h_bar).max(0.0).sqrt();
        let a = a_min + rng.gen_range(0.0..5.0);
        let xi_val = xi(h_bar, h_low, a, DEFAULT_TOL).unwrap();
        let lhs1 = (h_bar * h_low - a * xi_val).powi(2);
        let lhs2 = (xi_val * h_low - a * h_bar).powi(2);
        let rhs = (h_low * h_low - a * a).powi(2);
        let denom = lhs1.max(lhs2).max(rhs).max(1.0);
        assert!(
            ((lhs1 - lhs2) - rhs).abs() / denom <= 1e-10,
            "identity drift at ({h_low}, {h_bar}, {a})"
        );
    }

    // Stable form vs raw quotient on well-conditioned inputs.
    let mut checked = 0;
    while checked < 100_000 {
        let h_low: f64 = rng.gen_range(0.1..10.0);
        let h_bar: f64 = rng.gen_range(0.1..10.0);
        let a_min = (h_low * h_low - h_bar * h_bar).max(0.0).sqrt();
        let a = a_min + rng.gen_range(0.0..5.0);
        let xi_val = xi(h_bar, h_low, a, DEFAULT_TOL).unwrap();
        let scale_sq = h_bar.max(1.0).powi(2);
        let denom_raw = h_low * h_low - a * a;
        let denom_stable = a * h_bar + xi_val * h_low;
        if denom_raw.abs() <= 1e-6 * scale_sq || denom_stable.abs() <= 1e-6 * scale_sq {
            continue;
        }
        let raw = (a * h_bar - xi_val * h_low) / denom_raw;
        let stable = (h_low * h_low - h_bar * h_bar) / denom_stable;
        assert!(
            (stable - raw).abs() <= 1e-9 * raw.abs().max(1.0),
            "form disagreement at ({h_low}, {h_bar}, {a}): {stable} vs {raw}"
        );
        checked += 1;
    }

    // Branch continuity at h_low = a. The angle's derivative in h_low grows
    // like (a / h_bar) / h_bar, so the tight 1e-4 proxy is a
    // comparable-magnitude statement; wilder ratios still get a bound that
    // any genuine branch jump (order 2*theta) would break.
    for _ in 0..1_000 {
        let a: f64 = rng.gen_range(0.5..4.0);
        let h_bar: f64 = rng.gen_range(0.5..4.0);
        let at = lock_angle(a, h_bar, a, DEFAULT_TOL).unwrap();
        assert_close(at, a.ln() - h_bar.ln(), 1e-10, "log-branch value");
        for delta in [1e-6, -1e-6] {
            let near = lock_angle(a + delta, h_bar, a, DEFAULT_TOL).unwrap();
            assert!(
                (near - at).abs() <= 1e-4,
                "branch discontinuity at a {a}, h_bar {h_bar}: {near} vs {at}"
            );
        }
    }
    for _ in 0..1_000 {
        let a: f64 = rng.gen_range(0.1..10.0);
        let h_bar: f64 = rng.gen_range(0.1..10.0);
        let at = lock_angle(a, h_bar, a, DEFAULT_TOL).unwrap();
        let ratio = (a / h_bar).max(h_bar / a);
        let slope_bound = ratio / h_bar.min(a);
        for delta in [1e-6, -1e-6] {
            let near = lock_angle(a + delta, h_bar, a, DEFAULT_TOL).unwrap();
            assert!(
                (near - at).abs() <= 4.0 * slope_bound * 1e-6 + 1e-9,
                "branch discontinuity at a {a}, h_bar {h_bar}: {near} vs {at}"
            );
        }
    }
    println!(
        "criterion 5 PASS - algebra suite: 1e6 form-preservation, 1e5 group law, \
         1e5 square identity, 1e5 stable-vs-raw, 1e3 branch continuity"
    );
}

#[test]
fn criterion_6_ledger_equivalence_and_scale_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4544);
    let mut checked = 0;
    while checked < 1_000 {
        let chain = random_arbitrary_chain(&mut rng);
        let scale = chain.scale();
        let snap = DEFAULT_TOL * scale * scale;
        let square_sum = chain.square_sum();
        if square_sum.abs() <= 2.0 * snap {
            continue; // boundary band where the snap decides
        }
        let ledger = defect_ledger(&chain, DEFAULT_TOL);
        let d_n = *ledger.d.last().unwrap();
        assert_close(d_n, -square_sum, 1e-12 * scale * scale, "d_N = -square_sum");
        let c_n = *ledger.c.last().unwrap();
        assert_eq!(square_sum >= 0.0, d_n <= 0.0, "square_sum sign vs d_N");
        assert_eq!(d_n <= snap, c_n == 0.0, "d_N sign vs c_N");
        checked += 1;
    }

    // Scale covariance: bounds scale linearly, defects quadratically,
    // margins linearly, angles not at all.
    let mut covariance_checked = 0;
    while covariance_checked < 100 {
        let chain = random_admissible_chain(&mut rng);
        let base = match build_certificate(&chain, DEFAULT_TOL) {
            Ok(cert) => cert,
            Err(_) => continue,
        };
        for lambda in [0.5, 3.0] {
            let scaled_chain = lockcert::CornerChain::new(
                chain.n(),
                chain
                    .interfaces()
                    .iter()
                    .map(|i| {
                        let mut scaled = InterfaceData::new(
                            i.name.clone(),
                            i.samples_minus.iter().map(|v| v * lambda).collect(),
                            i.samples_plus.iter().map(|v| v * lambda).collect(),
                        );
                        scaled.bound_low_minus = i.bound_low_minus.map(|v| v * lambda);
                        scaled.bound_up_plus = i.bound_up_plus.map(|v| v * lambda);
                        scaled
                    })
                    .collect(),
                None,
            )
            .unwrap();
            let cert = build_certificate(&scaled_chain, DEFAULT_TOL).unwrap();
            for (ds, db) in cert.ledger.d.iter().zip(&base.ledger.d) {
                assert_close(
                    *ds,
                    db * lambda * lambda,
                    1e-9 * ds.abs().max(1.0),
                    "d scaling",
                );
            }
            for (cs, cb) in cert.ledger.c.iter().zip(&base.ledger.c) {
                assert_close(*cs, cb * lambda, 1e-9 * cs.abs().max(1.0), "c scaling");
            }
            for (rs, rb) in cert.interfaces.iter().zip(&base.interfaces) {
                assert_close(
                    rs.theta,
                    rb.theta,
                    1e-9 * rb.theta.abs().max(1.0),
                    "theta invariance",
                );
                assert_close(
                    rs.min_margin,
                    rb.min_margin * lambda,
                    1e-9 * rs.min_margin.abs().max(1.0),
                    "margin scaling",
                );
            }
        }
        covariance_checked += 1;
    }
    println!(
        "criterion 6 PASS - ledger: 1e3 chains with square_sum/d_N/c_N equivalences, \
         100 chains scale-covariant at lambda 0.5 and 3"
    );
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4f524143);
    let trials = 1_000;
    for trial in 0..trials {
        let sample_count = rng.gen_range(1..6);
        let mut input = random_lemma_input(&mut rng, sample_count);
        // The bound corner is the binding sample; with it present the
        // closed form is margin-maximizing.
        input.samples.push((input.h_low_minus, input.h_bar_plus));
        let xi_out = xi(input.h_bar_plus, input.h_low_minus, input.a, DEFAULT_TOL).unwrap();
        let closed_theta =
            lock_angle(input.h_low_minus, input.h_bar_plus, input.a, DEFAULT_TOL).unwrap();
        assert!(
            closed_theta.abs() < 8.0,
            "trial {trial}: closed angle {closed_theta} outside the scan range"
        );
        let closed_margin = oracle::margin_at(closed_theta, &input.samples, input.a, xi_out);
        let scan = oracle::scan(&input.samples, input.a, xi_out, -8.0, 8.0, 4001);
        let theta_ref = closed_theta.abs().max(scan.best_theta.abs());
        let bound =
            oracle::margin_lipschitz(&input.samples, input.a, theta_ref, scan.step) * scan.step;
        assert!(
            scan.best_margin - closed_margin <= bound,
            "trial {trial}: grid beats closed form by {} > {bound} for {input:?}",
            scan.best_margin - closed_margin
        );
        assert!(
            (scan.best_margin - closed_margin).abs() <= bound,
            "trial {trial}: grid and closed form disagree beyond the resolution bound"
        );
    }
    println!(
        "criterion 7 PASS - oracle: {trials} instances, grid never beats the closed form \
         beyond the Lipschitz resolution bound"
    );
}

#[test]
fn criterion_8_geometry_suite() {
    // Flat profile: H = (n-1)/s and R = 0 exactly, zero mass.
    let flat = flat_annuli_profile();
    for (piece, s) in [(0usize, 0.3), (0, 0.8), (1, 1.5), (2, 2.5), (2, 9.0)] {
        assert_eq!(sphere_mean_curvature(&flat, piece, s).unwrap(), 2.0 / s);
        assert_eq!(warped_scalar_curvature(&flat, piece, s).unwrap(), 0.0);
        assert_eq!(hawking_mass(&flat, s).unwrap(), 0.0);
    }
    assert_eq!(adm_mass_limit(&flat).unwrap(), 0.0);

    // Implicitly-defined end: scalar-flat, constant mass, exact limit.
    let mass = 0.48;
    let profile = cap_cone_end_profile(mass);
    let (s_end, _) = profile.junctions()[1];
    for ds in [0.0, 0.2, 1.0, 3.0, 7.0] {
        let s = s_end + ds;
        assert!(
            warped_scalar_curvature(&profile, 2, s).unwrap().abs() <= 1e-10,
            "end curvature at s = {s}"
        );
        assert!(
            (hawking_mass(&profile, s).unwrap() - mass).abs() <= 1e-8,
            "mass drift at s = {s}"
        );
    }
    assert_eq!(adm_mass_limit(&profile).unwrap(), mass);

    // Round cap: R = n(n-1).
    let r3 = warped_scalar_curvature(&profile, 0, FRAC_PI_3 / 2.0).unwrap();
    assert_close(r3, 6.0, 1e-10, "n = 3 cap curvature");
    let cap4 = RadialProfile::new(
        4,
        vec![
            PieceSpec::SphericalCap { s_end: 1.0 },
            PieceSpec::Linear {
                slope: 0.6,
                stop: None,
            },
        ],
    )
    .unwrap();
    let r4 = warped_scalar_curvature(&cap4, 0, 0.5).unwrap();
    assert_close(r4, 12.0, 1e-10, "n = 4 cap curvature");
    println!(
        "criterion 8 PASS - geometry: flat exact, end scalar-flat with mass drift <= 1e-8 \
         and limit {mass}, caps at R = n(n-1)"
    );
}

// ---------------------------------------------------------------------------
// Criterion 9: the CLI contract, driven through the built binary.
// ---------------------------------------------------------------------------

mod cli_contract {
    use super::*;
    use std::fs;
    use std::path::PathBuf;
    use std::process::{Command, Output};

    fn bin() -> Command {
        Command::new(env!("CARGO_BIN_EXE_lockcert"))
    }

    fn work_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "lockcert-acceptance-{}-{tag}",
            std::process::id()
        ));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn chain_b_spec() -> String {
        r#"{
  "schema_version": 1,
  "n": 3,
  "interfaces": [
    {"name": "sigma_1", "samples_minus": [1.0], "samples_plus": [2.0]},
    {"name": "sigma_2", "samples_minus": [3.0], "samples_plus": [2.0]}
  ]
}
"#
        .to_string()
    }

    fn run_ok(cmd: &mut Command) -> Output {
        cmd.output().expect("binary runs")
    }

    #[test]
    fn criterion_9_cli_contract() {
        let dir = work_dir("main");
        let chain_path = dir.join("chain_b.json");
        fs::write(&chain_path, chain_b_spec()).unwrap();

        // verify: exit 0 and a certificate matching the worked values.
        let out_path = dir.join("cert.json");
        let out = run_ok(bin().args([
            "verify",
            "--chain",
            chain_path.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]));
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let cert_bytes = fs::read(&out_path).unwrap();
        let cert: serde_json::Value = serde_json::from_slice(&cert_bytes).unwrap();
        assert_eq!(cert["verdict"], "certified");
        let theta_1 = cert["interfaces"][0]["theta"].as_f64().unwrap();
        let theta_2 = cert["interfaces"][1]["theta"].as_f64().unwrap();
        assert_close(theta_1, ASINH_NEG_SQRT_3, 1e-9, "cli theta_1");
        assert_close(theta_2, ASINH_HALF_SQRT_2, 1e-9, "cli theta_2");

        // Byte-identical on repeat.
        let out_path_2 = dir.join("cert_again.json");
        run_ok(bin().args([
            "verify",
            "--chain",
            chain_path.to_str().unwrap(),
            "--out",
            out_path_2.to_str().unwrap(),
        ]));
        assert_eq!(cert_bytes, fs::read(&out_path_2).unwrap(), "verify not deterministic");

        // Rejected chain: exit 1, certificate still written, square_sum
        // recorded.
        let rejected_path = dir.join("rejected.json");
        fs::write(
            &rejected_path,
            r#"{
  "schema_version": 1,
  "n": 3,
  "interfaces": [
    {"name": "sigma_1", "samples_minus": [1.0], "samples_plus": [2.0]},
    {"name": "sigma_2", "samples_minus": [3.0], "samples_plus": [2.9]}
  ]
}
"#,
        )
        .unwrap();
        let rejected_out = dir.join("rejected_cert.json");
        let out = run_ok(bin().args([
            "verify",
            "--chain",
            rejected_path.to_str().unwrap(),
            "--out",
            rejected_out.to_str().unwrap(),
        ]));
        assert_eq!(out.status.code(), Some(1));
        let cert: serde_json::Value =
            serde_json::from_slice(&fs::read(&rejected_out).unwrap()).unwrap();
        assert_eq!(cert["verdict"], "rejected");
        assert_close(
            cert["square_sum"].as_f64().unwrap(),
            (1.0 - 4.0) + (9.0 - 2.9 * 2.9),
            1e-12,
            "recorded square_sum",
        );

        // Missing input: exit 2.
        let out = run_ok(bin().args([
            "verify",
            "--chain",
            dir.join("nonexistent.json").to_str().unwrap(),
            "--out",
            dir.join("never.json").to_str().unwrap(),
        ]));
        assert_eq!(out.status.code(), Some(2));

        // oracle: clean pass over a wide range, flag on a narrow one.
        let out = run_ok(bin().args([
            "oracle",
            "--chain",
            chain_path.to_str().unwrap(),
            "--range",
            "10",
            "--steps",
            "200001",
        ]));
        assert_eq!(out.status.code(), Some(0), "oracle flagged unexpectedly");
        let report = String::from_utf8(out.stdout).unwrap();
        assert!(report.contains("flags=-"), "report: {report}");
        let out2 = run_ok(bin().args([
            "oracle",
            "--chain",
            chain_path.to_str().unwrap(),
            "--range",
            "10",
            "--steps",
            "200001",
        ]));
        assert_eq!(report, String::from_utf8(out2.stdout).unwrap(), "oracle not deterministic");

        let out = run_ok(bin().args([
            "oracle",
            "--chain",
            chain_path.to_str().unwrap(),
            "--range",
            "0.5",
            "--steps",
            "2001",
        ]));
        assert_eq!(out.status.code(), Some(1), "narrow range must flag");
        assert!(String::from_utf8(out.stdout).unwrap().contains("RangeTooNarrow"));

        println!(
            "criterion 9 PASS - cli: verify/oracle exit statuses 0/1/2, byte-identical reruns, \
             range flagging"
        );
    }

    #[test]
    fn criterion_9_sweep_rows_match_fixture_verdicts() {
        let dir = work_dir("sweep");
        // The fixture bounds of criteria 1-3 as single-cell grids.
        let fixture = cap_cone_end_profile(0.48);
        let fixture_chain = chain_from_profile(&fixture, 1, DEFAULT_TOL).unwrap();
        let fb = fixture_chain.bounds();
        let cells = [
            ("2:2:1,2:2:1,1:1:1,1:1:1".to_string(), "certified-miao-case"),
            ("1:1:1,2:2:1,3:3:1,2:2:1".to_string(), "certified"),
            (
                format!(
                    "{lo1}:{lo1}:1,{up1}:{up1}:1,{lo2}:{lo2}:1,{up2}:{up2}:1",
                    lo1 = fb[0].0,
                    up1 = fb[0].1,
                    lo2 = fb[1].0,
                    up2 = fb[1].1
                ),
                "certified",
            ),
        ];
        for (idx, (grid, want_verdict)) in cells.iter().enumerate() {
            let csv_path = dir.join(format!("row_{idx}.csv"));
            let out = run_ok(bin().args([
                "sweep",
                "--template",
                "two-jump",
                "--grid",
                grid,
                "--csv",
                csv_path.to_str().unwrap(),
            ]));
            assert_eq!(out.status.code(), Some(0));
            let text = fs::read_to_string(&csv_path).unwrap();
            let row = text.lines().nth(1).unwrap();
            assert!(
                row.split(',').any(|field| field == *want_verdict),
                "grid {grid}: row {row} lacks verdict {want_verdict}"
            );
        }

        // Determinism across runs and worker counts.
        let grid = "0.5:2.5:9,2:2:1,1:3:7,0.5:1.5:3";
        let csv_a = dir.join("grid_a.csv");
        let csv_b = dir.join("grid_b.csv");
        let out = run_ok(bin()
            .env("LOCKCERT_WORKERS", "1")
            .args(["sweep", "--template", "two-jump", "--grid", grid, "--csv", csv_a.to_str().unwrap()]));
        assert_eq!(out.status.code(), Some(0));
        let out = run_ok(bin()
            .env("LOCKCERT_WORKERS", "5")
            .args(["sweep", "--template", "two-jump", "--grid", grid, "--csv", csv_b.to_str().unwrap()]));
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(
            fs::read(&csv_a).unwrap(),
            fs::read(&csv_b).unwrap(),
            "sweep rows depend on worker count"
        );

        // A grid cell violating positivity is rejected per cell.
        let csv_c = dir.join("grid_c.csv");
        let out = run_ok(bin().args([
            "sweep",
            "--template",
            "two-jump",
            "--grid",
            "0:0:1,2:2:1,3:3:1,2:2:1",
            "--csv",
            csv_c.to_str().unwrap(),
        ]));
        assert_eq!(out.status.code(), Some(0));
        assert!(fs::read_to_string(&csv_c)
            .unwrap()
            .contains("rejected-positivity"));

        println!("criterion 9 PASS - cli: exit statuses, determinism, sweep verdicts for the fixture points");
    }

    #[test]
    fn criterion_9_profile_roundtrip() {
        let dir = work_dir("profile");
        let spec_path = dir.join("profile.json");
        fs::write(
            &spec_path,
            r#"{
  "schema_version": 1,
  "n": 3,
  "pieces": [
    {"kind": "spherical_cap", "s_end": 1.0471975511965976},
    {"kind": "linear", "slope": 0.9, "f_end": 1.0},
    {"kind": "schwarzschild_end", "mass": 0.48}
  ]
}
"#,
        )
        .unwrap();
        let chain_path = dir.join("fixture_chain.json");
        let out = run_ok(bin().args([
            "profile",
            "--spec",
            spec_path.to_str().unwrap(),
            "--samples",
            "2",
            "--emit-chain",
            chain_path.to_str().unwrap(),
        ]));
        assert_eq!(
            out.status.code(),
            Some(0),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let cert_path = dir.join("fixture_cert.json");
        let out = run_ok(bin().args([
            "verify",
            "--chain",
            chain_path.to_str().unwrap(),
            "--out",
            cert_path.to_str().unwrap(),
        ]));
        assert_eq!(out.status.code(), Some(0));
        let cert: serde_json::Value =
            serde_json::from_slice(&fs::read(&cert_path).unwrap()).unwrap();
        assert_eq!(cert["verdict"], "certified");
        println!("criterion 9 PASS - profile subcommand emits a verifiable chain");
    }
}

//! Shared generators for the randomized suites.
#![allow(dead_code)] // each test target uses its own subset

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lockcert::{CornerChain, InterfaceData, LemmaInput};

/// Admissible lemma data: bounds in [0.1, 10], incoming trace at least the
/// value that keeps the radicand nonnegative, paired in-bound samples.
pub fn random_lemma_input(rng: &mut ChaCha8Rng, samples: usize) -> LemmaInput {
    let h_low: f64 = rng.gen_range(0.1..10.0);
    let h_bar: f64 = rng.gen_range(0.1..10.0);
    let a_min = (h_low * h_low - h_bar * h_bar).max(0.0).sqrt();
    let a = match rng.gen_range(0..4) {
        0 => a_min,                          // radicand exactly zero
        1 if h_low >= a_min => h_low,        // the log-branch corner
        _ => a_min + rng.gen_range(0.0..5.0),
    };
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let h_minus = h_low * (1.0 + rng.gen_range(0.0..1.0));
        let h_plus = h_bar * (1.0 - rng.gen_range(0.0..0.9));
        pairs.push((h_minus, h_plus));
    }
    LemmaInput::new(h_low, h_bar, a, pairs).expect("generated input is valid")
}

/// A chain satisfying every hypothesis: strict positivity, a valid split
/// index, and a nonnegative square sum. The exact bound corner is always
/// among the samples so the effective bounds hit the intended values.
pub fn random_admissible_chain(rng: &mut ChaCha8Rng) -> CornerChain {
    let n: u32 = rng.gen_range(3..=5);
    let n_ifaces: usize = rng.gen_range(2..=5);
    let lambda: usize = rng.gen_range(1..n_ifaces);
    let sigma: f64 = rng.gen_range(0.2..5.0);

    let mut bound_pairs: Vec<(f64, f64)> = Vec::with_capacity(n_ifaces);
    let mut deficit = 0.0;
    for _ in 0..lambda {
        let lo = sigma * rng.gen_range(0.5..3.0);
        let up = lo * (1.0 + rng.gen_range(0.0..1.5));
        deficit += up * up - lo * lo;
        bound_pairs.push((lo, up));
    }
    let mut surplus = 0.0;
    for _ in lambda..n_ifaces - 1 {
        let lo = sigma * rng.gen_range(0.5..3.0);
        let up = lo * rng.gen_range(0.1..1.0);
        surplus += lo * lo - up * up;
        bound_pairs.push((lo, up));
    }
    // Last interface absorbs whatever defect remains.
    let up_last = sigma * rng.gen_range(0.3..1.0);
    let margin = if rng.gen_bool(0.1) {
        0.0
    } else {
        sigma * sigma * rng.gen_range(0.001..2.0)
    };
    let lo_last = (up_last * up_last + (deficit - surplus).max(0.0) + margin).sqrt();
    bound_pairs.push((lo_last, up_last));

    let interfaces = bound_pairs
        .iter()
        .enumerate()
        .map(|(i, &(lo, up))| {
            let extra = rng.gen_range(0..7);
            let mut minus = vec![lo];
            let mut plus = vec![up];
            for _ in 0..extra {
                minus.push(lo * (1.0 + rng.gen_range(0.0..0.8)));
                plus.push(up * (1.0 - rng.gen_range(0.0..0.45)));
            }
            let mut iface = InterfaceData::new(format!("sigma_{}", i + 1), minus, plus);
            if rng.gen_bool(0.3) {
                iface.bound_low_minus = Some(lo);
                iface.bound_up_plus = Some(up);
            }
            iface
        })
        .collect();
    CornerChain::new(n, interfaces, None).expect("generated chain is structurally valid")
}

/// Structurally valid chain with no admissibility guarantees at all.
pub fn random_arbitrary_chain(rng: &mut ChaCha8Rng) -> CornerChain {
    let n: u32 = rng.gen_range(3..=5);
    let n_ifaces: usize = rng.gen_range(2..=5);
    let interfaces = (0..n_ifaces)
        .map(|i| {
            let count = rng.gen_range(1..=4);
            let minus: Vec<f64> = (0..count).map(|_| rng.gen_range(0.05..6.0)).collect();
            let plus: Vec<f64> = (0..count).map(|_| rng.gen_range(0.05..6.0)).collect();
            InterfaceData::new(format!("sigma_{}", i + 1), minus, plus)
        })
        .collect();
    CornerChain::new(n, interfaces, None).expect("structurally valid")
}

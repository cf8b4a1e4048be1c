//! Property tests for the correlation engine: agreement with the naive
//! scan, engine interchangeability, and linearity.

use gpm_core::convolution::{
    cross_correlate_with, dc_mismatch_count, dc_mismatch_count_with, DcString, DcSym, Engine,
};
use proptest::prelude::*;

fn naive_dc(t: &[DcSym], p: &[DcSym]) -> Vec<u64> {
    if p.len() > t.len() {
        return Vec::new();
    }
    (0..=t.len() - p.len())
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, &pc)| {
                    matches!(
                        (t[i + j], pc),
                        (DcSym::Zero, DcSym::One) | (DcSym::One, DcSym::Zero)
                    )
                })
                .count() as u64
        })
        .collect()
}

fn dc_sym() -> impl Strategy<Value = DcSym> {
    prop_oneof![Just(DcSym::Zero), Just(DcSym::One), Just(DcSym::Any)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dc_mismatch_equals_naive_scan(
        t in prop::collection::vec(dc_sym(), 1..512),
        p in prop::collection::vec(dc_sym(), 1..64),
    ) {
        let text = DcString::new(t.clone()).unwrap();
        let pattern = DcString::new(p.clone()).unwrap();
        let fast = dc_mismatch_count(&text, &pattern);
        let want = naive_dc(&t, &p);
        prop_assert_eq!(fast.values(), want.as_slice());
    }

    #[test]
    fn engines_agree(
        x in prop::collection::vec(0u8..2, 1..400),
        y in prop::collection::vec(0u8..2, 1..60),
    ) {
        let fft = cross_correlate_with(&x, &y, Engine::Fft);
        let ntt = cross_correlate_with(&x, &y, Engine::Ntt);
        prop_assert_eq!(fft, ntt);
    }

    #[test]
    fn correlation_is_linear_in_the_pattern(
        x in prop::collection::vec(0u8..2, 8..200),
        y1 in prop::collection::vec(0u8..2, 1..8),
    ) {
        // Split y into disjoint indicator parts and check additivity.
        let y2: Vec<u8> = y1.iter().map(|&v| 1 - v).collect();
        let combined: Vec<u8> = vec![1; y1.len()];
        let a = cross_correlate_with(&x, &y1, Engine::Fft);
        let b = cross_correlate_with(&x, &y2, Engine::Fft);
        let c = cross_correlate_with(&x, &combined, Engine::Fft);
        let sum: Vec<u64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        prop_assert_eq!(sum, c);
    }
}

#[test]
fn dc_engines_agree_on_forced_ntt() {
    let t = DcString::parse("01?10?1101??0101").unwrap();
    let p = DcString::parse("1?0").unwrap();
    assert_eq!(
        dc_mismatch_count_with(&t, &p, Engine::Fft).values(),
        dc_mismatch_count_with(&t, &p, Engine::Ntt).values()
    );
}

#[test]
fn exactness_at_scale() {
    // 2^20-length text against a short pattern: the blocked transform must
    // agree with direct 64-bit accumulation entry for entry.
    let n = 1 << 20;
    let m = 64;
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut step = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let x: Vec<u8> = (0..n).map(|_| (step() & 1) as u8).collect();
    let y: Vec<u8> = (0..m).map(|_| (step() & 1) as u8).collect();

    let fast = cross_correlate_with(&x, &y, Engine::Fft);
    let direct: Vec<u64> = (0..=n - m)
        .map(|i| {
            y.iter()
                .enumerate()
                .map(|(j, &v)| u64::from(v) * u64::from(x[i + j]))
                .sum()
        })
        .collect();
    assert_eq!(fast, direct);

    let ntt = cross_correlate_with(&x, &y, Engine::Ntt);
    assert_eq!(ntt, direct);
}

//! Exact integer cross-correlation and the binary don't-care mismatch
//! counter used by every matching algorithm in the crate.
//!
//! Correlations of 0/1 sequences are computed with a double-precision
//! complex FFT; every value involved is an integer bounded by the pattern
//! length, so rounding the transform output to the nearest integer is
//! exact for patterns up to 2^24. Longer patterns switch to a 64-bit
//! number-theoretic transform, which is exact unconditionally. Long texts
//! are processed in overlapping blocks of twice the padded pattern length,
//! keeping the total work quasi-linear in the text length.

mod fft;
mod ntt;

use crate::error::{Error, Result};
use crate::model::{MismatchTable, TableKind};

/// Transform backend selector. `Auto` picks the FFT and falls back to the
/// number-theoretic transform when the pattern is too long for exact
/// floating-point rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Auto,
    Fft,
    Ntt,
}

const FFT_MAX_PATTERN: usize = 1 << 24;

impl Engine {
    fn resolve(self, m: usize) -> Engine {
        match self {
            Engine::Auto => {
                if m > FFT_MAX_PATTERN {
                    Engine::Ntt
                } else {
                    Engine::Fft
                }
            }
            other => other,
        }
    }
}

/// Symbol of a binary string with don't cares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcSym {
    Zero,
    One,
    /// The don't care symbol: matches everything.
    Any,
}

/// A string over `{0, 1, ?}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcString(Vec<DcSym>);

impl DcString {
    pub fn new(symbols: Vec<DcSym>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::input("don't-care string must be non-empty"));
        }
        Ok(DcString(symbols))
    }

    /// Parses from the characters `0`, `1`, and `?`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::with_capacity(s.len());
        for ch in s.chars() {
            out.push(match ch {
                '0' => DcSym::Zero,
                '1' => DcSym::One,
                '?' => DcSym::Any,
                other => return Err(Error::parse(format!("bad don't-care symbol {other:?}"))),
            });
        }
        DcString::new(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[DcSym] {
        &self.0
    }

    fn indicator(&self, sym: DcSym) -> Vec<u8> {
        self.0.iter().map(|&s| u8::from(s == sym)).collect()
    }
}

/// Exact cross-correlation of two 0/1 sequences:
/// `out[i] = sum_j x[i+j] * y[j]` for `i` in `0..=n-m`.
///
/// Returns an empty vector when `y` is longer than `x`.
pub fn cross_correlate(x: &[u8], y: &[u8]) -> Vec<u64> {
    cross_correlate_with(x, y, Engine::Auto)
}

pub fn cross_correlate_with(x: &[u8], y: &[u8], engine: Engine) -> Vec<u64> {
    let n = x.len();
    let m = y.len();
    if m == 0 || m > n {
        return Vec::new();
    }
    debug_assert!(x.iter().all(|&v| v <= 1) && y.iter().all(|&v| v <= 1));

    match engine.resolve(m) {
        Engine::Fft => blocked(x, y, fft::Correlator::new(y)),
        Engine::Ntt => blocked(x, y, ntt::Correlator::new(y)),
        Engine::Auto => unreachable!(),
    }
}

/// One correlation backend: consumes text blocks of length `block_len` and
/// produces the circular correlation against the prepared pattern.
pub(crate) trait BlockCorrelator {
    fn block_len(&self) -> usize;
    /// `block` has length `block_len()`; the result must hold the linear
    /// correlation values at offsets `0..=block_len - m`.
    fn correlate(&mut self, block: &[u8], out: &mut Vec<u64>);
}

fn blocked<C: BlockCorrelator>(x: &[u8], y: &[u8], mut corr: C) -> Vec<u64> {
    let n = x.len();
    let m = y.len();
    let l = corr.block_len();
    let step = l - m + 1;
    let mut out = vec![0u64; n - m + 1];
    let mut block = vec![0u8; l];
    let mut scratch = Vec::new();
    let mut start = 0usize;
    while start <= n - m {
        let take = (n - start).min(l);
        block[..take].copy_from_slice(&x[start..start + take]);
        block[take..].fill(0);
        corr.correlate(&block, &mut scratch);
        let valid = (n - m - start).min(step - 1);
        out[start..=start + valid].copy_from_slice(&scratch[..=valid]);
        start += step;
    }
    out
}

/// Mismatch counts between a text and a pattern over `{0, 1, ?}` at every
/// alignment: position `j` of alignment `i` mismatches iff one side is `0`
/// and the other is `1`.
///
/// Returns an empty table when the pattern is longer than the text.
pub fn dc_mismatch_count(text: &DcString, pattern: &DcString) -> MismatchTable {
    dc_mismatch_count_with(text, pattern, Engine::Auto)
}

pub fn dc_mismatch_count_with(
    text: &DcString,
    pattern: &DcString,
    engine: Engine,
) -> MismatchTable {
    if pattern.len() > text.len() {
        return MismatchTable::new(Vec::new(), TableKind::Exact);
    }
    let t0 = text.indicator(DcSym::Zero);
    let t1 = text.indicator(DcSym::One);
    let p0 = pattern.indicator(DcSym::Zero);
    let p1 = pattern.indicator(DcSym::One);

    let a = cross_correlate_with(&t0, &p1, engine);
    let b = cross_correlate_with(&t1, &p0, engine);
    let values = a.into_iter().zip(b).map(|(u, v)| u + v).collect();
    MismatchTable::new(values, TableKind::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_corr(x: &[u8], y: &[u8]) -> Vec<u64> {
        if y.len() > x.len() {
            return Vec::new();
        }
        (0..=x.len() - y.len())
            .map(|i| {
                y.iter()
                    .enumerate()
                    .map(|(j, &v)| u64::from(v) * u64::from(x[i + j]))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn all_ones() {
        assert_eq!(cross_correlate(&[1, 1, 1], &[1, 1]), vec![2, 2]);
    }

    #[test]
    fn alternating() {
        assert_eq!(cross_correlate(&[1, 0, 1, 0], &[1, 0]), vec![1, 0, 1]);
    }

    #[test]
    fn zero_pattern() {
        assert_eq!(cross_correlate(&[1, 1, 1, 1], &[0, 0]), vec![0, 0, 0]);
    }

    #[test]
    fn pattern_longer_than_text_is_empty() {
        assert!(cross_correlate(&[1], &[1, 1]).is_empty());
    }

    #[test]
    fn engines_agree_with_naive() {
        let mut rng = crate::rng::SplitMix64::new(0xfeed);
        for _ in 0..50 {
            let n = 1 + rng.below(300) as usize;
            let m = 1 + rng.below(n as u64) as usize;
            let x: Vec<u8> = (0..n).map(|_| (rng.next_u64() & 1) as u8).collect();
            let y: Vec<u8> = (0..m).map(|_| (rng.next_u64() & 1) as u8).collect();
            let want = naive_corr(&x, &y);
            assert_eq!(cross_correlate_with(&x, &y, Engine::Fft), want);
            assert_eq!(cross_correlate_with(&x, &y, Engine::Ntt), want);
        }
    }

    #[test]
    fn dc_examples() {
        let t = DcString::parse("0?1").unwrap();
        let p = DcString::parse("1").unwrap();
        assert_eq!(dc_mismatch_count(&t, &p).values(), &[1, 0, 0]);

        let t = DcString::parse("0101").unwrap();
        let p = DcString::parse("10").unwrap();
        assert_eq!(dc_mismatch_count(&t, &p).values(), &[2, 0, 2]);

        let t = DcString::parse("0101").unwrap();
        let p = DcString::parse("??").unwrap();
        assert_eq!(dc_mismatch_count(&t, &p).values(), &[0, 0, 0]);
    }

    #[test]
    fn dc_longer_pattern_empty() {
        let t = DcString::parse("01").unwrap();
        let p = DcString::parse("011").unwrap();
        assert!(dc_mismatch_count(&t, &p).values().is_empty());
    }
}

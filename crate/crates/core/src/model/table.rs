//! Per-alignment mismatch tables: exact counts, certified lower estimates,
//! and scaled counts carrying a certified band.

use crate::ratio::Ratio;

/// What the table's values mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// `values[i]` is the exact mismatch count.
    Exact,
    /// `values[i] <= true count` always, and `>= (1-eps)·true` with the
    /// producer's stated probability.
    LowerEstimate,
    /// `values[i]` is a scaled count `h'` with the deterministic guarantee
    /// `(1-eps)·w·h <= h' <= w·h`, optionally on top of an exactly counted
    /// part (per alignment).
    ScaledBand {
        weight: u64,
        eps: Ratio,
        exact: Option<Vec<u64>>,
    },
}

/// Mismatch counts for the `n-m+1` alignments. Alignment `i` (1-based) is
/// stored at index `i-1`. An empty table means the pattern was longer than
/// the text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MismatchTable {
    values: Vec<u64>,
    kind: TableKind,
}

fn div_ceil(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

impl MismatchTable {
    pub fn new(values: Vec<u64>, kind: TableKind) -> Self {
        if let TableKind::ScaledBand {
            exact: Some(ex), ..
        } = &kind
        {
            assert_eq!(
                ex.len(),
                values.len(),
                "exact part must cover every alignment"
            );
        }
        MismatchTable { values, kind }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn kind(&self) -> &TableKind {
        &self.kind
    }

    /// The exactly counted per-alignment offset of a scaled-band table.
    pub fn exact_part(&self) -> Option<&[u64]> {
        match &self.kind {
            TableKind::ScaledBand { exact, .. } => exact.as_deref(),
            _ => None,
        }
    }

    /// Certified integer interval `[lo, hi]` for the true mismatch count at
    /// alignment index `idx` (0-based). For exact tables the band is the
    /// value itself; lower estimates certify only `[v, +inf)` and report
    /// `hi = u64::MAX`.
    pub fn band(&self, idx: usize) -> (u64, u64) {
        let v = self.values[idx];
        match &self.kind {
            TableKind::Exact => (v, v),
            TableKind::LowerEstimate => (v, u64::MAX),
            TableKind::ScaledBand { weight, eps, exact } => {
                let base = exact.as_ref().map_or(0, |e| e[idx]);
                let w = u128::from(*weight);
                let num = u128::from(eps.num());
                let den = u128::from(eps.den());
                // h' <= w·h  =>  h >= ceil(h'/w)
                let lo = div_ceil(u128::from(v), w) as u64;
                // (1-eps)·w·h <= h'  =>  h <= h'·den / ((den-num)·w)
                let hi = (u128::from(v) * den / ((den - num) * w)) as u64;
                (base + lo, base + hi)
            }
        }
    }

    /// Point estimate of the true count at alignment index `idx`.
    pub fn point_estimate(&self, idx: usize) -> u64 {
        let v = self.values[idx];
        match &self.kind {
            TableKind::Exact | TableKind::LowerEstimate => v,
            TableKind::ScaledBand { weight, exact, .. } => {
                let base = exact.as_ref().map_or(0, |e| e[idx]);
                base + ((u128::from(v) + u128::from(*weight) / 2) / u128::from(*weight)) as u64
            }
        }
    }

    /// Alignments (1-based) whose combined value is zero. For exact and
    /// scaled-band tables this is precisely the set of occurrences.
    pub fn zero_alignments(&self) -> Vec<usize> {
        let exact = self.exact_part();
        self.values
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == 0 && exact.is_none_or(|e| e[i] == 0))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

//! Exact deterministic counting parameterised by `I`, the total number of
//! character intervals over the pattern positions.
//!
//! Distinct text characters are grouped by frequency into ranges (each a
//! singleton or of total frequency at most `b`). Phase one counts, through
//! one don't-care instance per range, the alignments whose text character
//! falls in a range containing no matching character at all. Phase two
//! walks, for every pattern position, the ranges containing its interval
//! endpoints — the only ranges that can mix matching and non-matching
//! characters — and charges each non-matching occurrence to its alignment
//! directly. The two phases partition the mismatches, so their sum is
//! exact.

use std::collections::HashMap;
use std::ops::Range;

use crate::convolution::{dc_mismatch_count_with, DcString, DcSym, Engine};
use crate::error::{Error, Result};
use crate::model::{
    alignment_count, brute_count_intervals, IntervalRelation, MismatchTable, Pattern, TableKind,
    Text,
};

/// Greedy left-to-right partition of a non-negative sequence: a value
/// above `b` becomes a singleton range, otherwise the longest prefix
/// summing to at most `b` is taken. Produces at most `2·(sum/b) + 1`
/// ranges.
pub fn greedy_partition(values: &[u64], b: u64) -> Result<Vec<Range<usize>>> {
    if b <= 1 {
        return Err(Error::input(format!(
            "block parameter must exceed 1, got {b}"
        )));
    }
    let mut ranges = Vec::new();
    let mut i = 0usize;
    while i < values.len() {
        if values[i] > b {
            ranges.push(i..i + 1);
            i += 1;
            continue;
        }
        let mut sum = 0u64;
        let mut j = i;
        while j < values.len() && sum + values[j] <= b {
            sum += values[j];
            j += 1;
        }
        ranges.push(i..j);
        i = j;
    }
    Ok(ranges)
}

/// Frequency-based grouping of the distinct text characters.
#[derive(Clone, Debug)]
pub struct RangePartition {
    pub block: u64,
    /// Distinct text characters, ascending.
    pub chars: Vec<u32>,
    pub freqs: Vec<u64>,
    /// Ranges over indices into `chars`.
    pub ranges: Vec<Range<usize>>,
    /// Range id of each `chars` index.
    pub range_of: Vec<usize>,
}

impl RangePartition {
    pub fn build(text: &Text, block: u64) -> Result<Self> {
        let mut sorted = text.symbols().to_vec();
        sorted.sort_unstable();
        let mut chars = Vec::new();
        let mut freqs = Vec::new();
        for &c in &sorted {
            if chars.last() == Some(&c) {
                *freqs.last_mut().expect("non-empty") += 1;
            } else {
                chars.push(c);
                freqs.push(1);
            }
        }
        let ranges = greedy_partition(&freqs, block)?;
        let mut range_of = vec![0usize; chars.len()];
        for (rid, r) in ranges.iter().enumerate() {
            for slot in range_of[r.clone()].iter_mut() {
                *slot = rid;
            }
        }
        Ok(RangePartition {
            block,
            chars,
            freqs,
            ranges,
            range_of,
        })
    }

    /// Index of `c` in `chars`, if present.
    fn char_index(&self, c: u32) -> Option<usize> {
        self.chars.binary_search(&c).ok()
    }
}

/// The reduced instance of phase one: the text over range ids and, per
/// pattern position, the set of range ids containing at least one matching
/// character, as a packed bitset.
#[derive(Clone, Debug)]
pub struct SubsetInstance {
    pub reduced_text: Vec<u32>,
    /// One bitset (of `ranges` width) per pattern position.
    pub pattern_sets: Vec<Vec<u64>>,
}

fn bitset_get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn bitset_set_range(bits: &mut [u64], from: usize, to: usize) {
    for i in from..=to {
        bits[i / 64] |= 1 << (i % 64);
    }
}

struct PatternCharInfo {
    /// Bitset over range ids: ranges holding at least one matching char.
    set: Vec<u64>,
    /// Non-singleton ranges containing an interval endpoint's boundary
    /// character, deduplicated: the only ranges that can mix matching and
    /// non-matching characters.
    candidate_ranges: Vec<usize>,
}

fn pattern_char_info(
    part: &RangePartition,
    ir: &IntervalRelation,
    b: u32,
) -> Result<PatternCharInfo> {
    let words = part.ranges.len().div_ceil(64);
    let mut set = vec![0u64; words];
    let mut candidates = Vec::new();
    for &(lo, hi) in ir.intervals(b)? {
        // First and last distinct text chars inside [lo, hi].
        let i_lo = part.chars.partition_point(|&c| c < lo);
        let i_hi = part.chars.partition_point(|&c| c <= hi);
        if i_lo >= i_hi {
            continue; // no text character matches through this interval
        }
        let r_from = part.range_of[i_lo];
        let r_to = part.range_of[i_hi - 1];
        bitset_set_range(&mut set, r_from, r_to);
        for r in [r_from, r_to] {
            if part.ranges[r].len() > 1 {
                candidates.push(r);
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    Ok(PatternCharInfo {
        set,
        candidate_ranges: candidates,
    })
}

/// Exact mismatch counts for an interval-represented relation.
pub fn count_exact_i(
    text: &Text,
    pattern: &Pattern,
    ir: &IntervalRelation,
) -> Result<MismatchTable> {
    count_exact_i_with(text, pattern, ir, Engine::Auto)
}

pub fn count_exact_i_with(
    text: &Text,
    pattern: &Pattern,
    ir: &IntervalRelation,
    engine: Engine,
) -> Result<MismatchTable> {
    let (phase1, phase2) = count_phases(text, pattern, ir, engine)?;
    let values = phase1.into_iter().zip(phase2).map(|(a, b)| a + b).collect();
    Ok(MismatchTable::new(values, TableKind::Exact))
}

/// The two phase tables separately (their sum is the exact count); exposed
/// for the disjointness property test.
pub fn count_phases(
    text: &Text,
    pattern: &Pattern,
    ir: &IntervalRelation,
    engine: Engine,
) -> Result<(Vec<u64>, Vec<u64>)> {
    text.check_alphabet(ir.sigma_text())?;
    pattern.check_alphabet(ir.sigma_pattern())?;
    let n = text.len();
    let m = pattern.len();
    let alignments = alignment_count(n, m);
    if alignments == 0 {
        return Ok((Vec::new(), Vec::new()));
    }

    let total_i = ir.param_i(pattern)?;
    if total_i == 0 {
        // No pattern character matches anything.
        return Ok((vec![m as u64; alignments], vec![0; alignments]));
    }
    if total_i > (m as u64) * (m as u64) {
        let exact = brute_count_intervals(text, pattern, ir)?;
        return Ok((exact.values().to_vec(), vec![0; alignments]));
    }

    let log2m = (m as f64).log2();
    let block = ((n as f64) * (log2m / total_i as f64).sqrt())
        .ceil()
        .max(2.0) as u64;
    let part = RangePartition::build(text, block)?;

    // Reduced text and per-distinct-pattern-character info.
    let reduced: Vec<u32> = text
        .symbols()
        .iter()
        .map(|&c| part.range_of[part.char_index(c).expect("text char is distinct")] as u32)
        .collect();
    let mut info: HashMap<u32, PatternCharInfo> = HashMap::new();
    for &b in pattern.symbols() {
        if let std::collections::hash_map::Entry::Vacant(e) = info.entry(b) {
            e.insert(pattern_char_info(&part, ir, b)?);
        }
    }

    // Phase 1: subset matching over the reduced alphabet, one don't-care
    // instance per range.
    let mut phase1 = vec![0u64; alignments];
    for rid in 0..part.ranges.len() {
        let text_syms: Vec<DcSym> = reduced
            .iter()
            .map(|&r| {
                if r as usize == rid {
                    DcSym::Zero
                } else {
                    DcSym::Any
                }
            })
            .collect();
        let pat_syms: Vec<DcSym> = pattern
            .symbols()
            .iter()
            .map(|&b| {
                if bitset_get(&info[&b].set, rid) {
                    DcSym::Zero
                } else {
                    DcSym::One
                }
            })
            .collect();
        let tb = DcString::new(text_syms)?;
        let pb = DcString::new(pat_syms)?;
        let table = dc_mismatch_count_with(&tb, &pb, engine);
        for (acc, &v) in phase1.iter_mut().zip(table.values()) {
            *acc += v;
        }
    }

    // Occurrence lists per distinct character, by one counting pass.
    let mut occurrences: Vec<Vec<u32>> = vec![Vec::new(); part.chars.len()];
    for (x, &c) in text.symbols().iter().enumerate() {
        occurrences[part.char_index(c).expect("distinct")].push(x as u32);
    }

    // Phase 2: endpoint ranges can mix matching and non-matching
    // characters; charge each non-matching occurrence to its alignment.
    let mut phase2 = vec![0u64; alignments];
    for (j, &b) in pattern.symbols().iter().enumerate() {
        for &rid in &info[&b].candidate_ranges {
            for idx in part.ranges[rid].clone() {
                let a = part.chars[idx];
                if ir.matches_unchecked(a, b) {
                    continue;
                }
                for &x in &occurrences[idx] {
                    let x = x as usize;
                    if x >= j && x - j < alignments {
                        phase2[x - j] += 1;
                    }
                }
            }
        }
    }

    Ok((phase1, phase2))
}

/// Exact counting for threshold matching: `a` matches `b` iff
/// `|a - b| < delta`. Each pattern character contributes the single
/// interval `[b - delta + 1, b + delta - 1]`, so `I <= m`.
pub fn threshold_count(text: &Text, pattern: &Pattern, delta: u64) -> Result<MismatchTable> {
    let ir = threshold_intervals(text, pattern, delta)?;
    count_exact_i(text, pattern, &ir)
}

/// The interval relation realizing threshold matching over the alphabets
/// spanned by the given text and pattern.
pub fn threshold_intervals(text: &Text, pattern: &Pattern, delta: u64) -> Result<IntervalRelation> {
    if delta < 1 {
        return Err(Error::input("threshold delta must be at least 1"));
    }
    let sigma_t = u64::from(*text.symbols().iter().max().expect("non-empty")) + 1;
    let sigma_p = u64::from(*pattern.symbols().iter().max().expect("non-empty")) + 1;
    let mut distinct: Vec<u32> = pattern.symbols().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let lists: Vec<(u32, Vec<(u32, u32)>)> = distinct
        .into_iter()
        .map(|b| {
            let lo = u64::from(b).saturating_sub(delta - 1);
            let hi = u64::from(b) + delta - 1;
            if lo >= sigma_t {
                (b, vec![])
            } else {
                (b, vec![(lo as u32, hi.min(sigma_t - 1) as u32)])
            }
        })
        .collect();
    IntervalRelation::new(sigma_t, sigma_p, lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::brute_count;
    use crate::model::MatchRelation;

    fn txt(v: &[u32]) -> Text {
        Text::new(v.to_vec()).unwrap()
    }

    fn pat(v: &[u32]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_partition(&[5], 3).unwrap(), vec![0..1]);
        assert_eq!(
            greedy_partition(&[1, 1, 1, 1], 2).unwrap(),
            vec![0..2, 2..4]
        );
        assert_eq!(
            greedy_partition(&[3, 1, 3], 3).unwrap(),
            vec![0..1, 1..2, 2..3]
        );
        assert!(greedy_partition(&[1], 1).is_err());
    }

    #[test]
    fn greedy_invariants() {
        let mut rng = crate::rng::SplitMix64::new(11);
        for _ in 0..100 {
            let len = 1 + rng.below(50) as usize;
            let values: Vec<u64> = (0..len).map(|_| rng.below(20)).collect();
            let b = 2 + rng.below(15);
            let ranges = greedy_partition(&values, b).unwrap();
            // Partition in order.
            assert_eq!(ranges.first().unwrap().start, 0);
            assert_eq!(ranges.last().unwrap().end, len);
            for w in ranges.windows(2) {
                assert_eq!(w[0].end, w[1].start);
            }
            // Singleton or sum <= b.
            let sum: u64 = values.iter().sum();
            for r in &ranges {
                let total: u64 = values[r.clone()].iter().sum();
                assert!(r.len() == 1 || total <= b);
            }
            assert!(ranges.len() as u64 <= 2 * (sum / b) + 1);
        }
    }

    #[test]
    fn identity_interval_self_match() {
        let ir = IntervalRelation::new(4, 4, (0..4u32).map(|c| (c, vec![(c, c)]))).unwrap();
        let t = txt(&[1, 2, 1, 2]);
        let p = pat(&[1, 1]);
        assert_eq!(count_exact_i(&t, &p, &ir).unwrap().values(), &[1, 1, 1]);
    }

    #[test]
    fn matches_brute_on_random_interval_instances() {
        let mut rng = crate::rng::SplitMix64::new(1312);
        for _ in 0..60 {
            let sigma = 4 + rng.below(40);
            let n = 10 + rng.below(150) as usize;
            let m = 1 + rng.below(12) as usize;
            let lists: Vec<(u32, Vec<(u32, u32)>)> = (0..sigma as u32)
                .map(|b| {
                    let k = rng.below(4);
                    let intervals = (0..k)
                        .map(|_| {
                            let lo = rng.below(sigma) as u32;
                            let hi = (lo + rng.below(5) as u32).min(sigma as u32 - 1);
                            (lo, hi)
                        })
                        .collect();
                    (b, intervals)
                })
                .collect();
            let ir = IntervalRelation::new(sigma, sigma, lists).unwrap();
            let t = txt(&(0..n).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let p = pat(&(0..m).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let fast = count_exact_i(&t, &p, &ir).unwrap();
            let slow = brute_count_intervals(&t, &p, &ir).unwrap();
            assert_eq!(fast.values(), slow.values());
        }
    }

    #[test]
    fn phase_disjointness() {
        // Each (alignment, position) mismatch is counted by exactly one
        // phase: phase totals must sum to the truth, and per-pair flags are
        // mutually exclusive by construction of the candidate ranges.
        let mut rng = crate::rng::SplitMix64::new(99);
        for _ in 0..20 {
            let sigma = 6 + rng.below(20);
            let n = 15 + rng.below(60) as usize;
            let m = 2 + rng.below(6) as usize;
            let lists: Vec<(u32, Vec<(u32, u32)>)> = (0..sigma as u32)
                .map(|b| {
                    let k = 1 + rng.below(3);
                    let intervals = (0..k)
                        .map(|_| {
                            let lo = rng.below(sigma) as u32;
                            let hi = (lo + rng.below(6) as u32).min(sigma as u32 - 1);
                            (lo, hi)
                        })
                        .collect();
                    (b, intervals)
                })
                .collect();
            let ir = IntervalRelation::new(sigma, sigma, lists).unwrap();
            let t = txt(&(0..n).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let p = pat(&(0..m).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let (p1, p2) = count_phases(&t, &p, &ir, Engine::Auto).unwrap();
            let truth = brute_count_intervals(&t, &p, &ir).unwrap();
            let sum: Vec<u64> = p1.iter().zip(&p2).map(|(a, b)| a + b).collect();
            assert_eq!(sum, truth.values());
        }
    }

    #[test]
    fn phase_two_work_stays_within_budget() {
        // Every phase-2 increment lands in the output array, and the
        // endpoint walk touches at most two non-singleton ranges per
        // interval, each of total frequency at most b: the total is
        // bounded by 2·I·b.
        let mut rng = crate::rng::SplitMix64::new(314);
        for _ in 0..20 {
            let sigma = 8 + rng.below(30);
            let n = 50 + rng.below(200) as usize;
            let m = 2 + rng.below(10) as usize;
            let lists: Vec<(u32, Vec<(u32, u32)>)> = (0..sigma as u32)
                .map(|b| {
                    let lo = rng.below(sigma) as u32;
                    let hi = (lo + rng.below(6) as u32).min(sigma as u32 - 1);
                    (b, vec![(lo, hi)])
                })
                .collect();
            let ir = IntervalRelation::new(sigma, sigma, lists).unwrap();
            let t = txt(&(0..n).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let p = pat(&(0..m).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let total_i = ir.param_i(&p).unwrap();
            if total_i == 0 || total_i > (m as u64) * (m as u64) {
                continue;
            }
            let block = ((n as f64) * ((m as f64).log2() / total_i as f64).sqrt())
                .ceil()
                .max(2.0) as u64;
            let (_, p2) = count_phases(&t, &p, &ir, Engine::Auto).unwrap();
            let work: u64 = p2.iter().sum();
            assert!(work <= 2 * total_i * block, "{work} > 2·{total_i}·{block}");
        }
    }

    #[test]
    fn interval_and_relation_agree() {
        let rel =
            MatchRelation::from_edges(8, 3, [(0, 0), (1, 0), (2, 0), (5, 1), (7, 2)]).unwrap();
        let ir = rel.to_interval_relation();
        let t = txt(&[0, 1, 5, 7, 2, 3]);
        let p = pat(&[0, 1]);
        assert_eq!(
            count_exact_i(&t, &p, &ir).unwrap().values(),
            brute_count(&t, &p, &rel).unwrap().values()
        );
    }

    #[test]
    fn threshold_examples() {
        // delta = 1 is plain equality.
        let t = txt(&[1, 2, 1, 2]);
        let p = pat(&[1, 1]);
        assert_eq!(threshold_count(&t, &p, 1).unwrap().values(), &[1, 1, 1]);

        let t = txt(&[1, 5, 9]);
        let p = pat(&[4]);
        assert_eq!(threshold_count(&t, &p, 2).unwrap().values(), &[1, 0, 1]);

        // delta spanning the whole alphabet: everything matches.
        let t = txt(&[0, 3, 7]);
        let p = pat(&[5, 1]);
        assert_eq!(threshold_count(&t, &p, 100).unwrap().values(), &[0, 0]);

        assert!(threshold_count(&t, &p, 0).is_err());
    }

    #[test]
    fn threshold_param_i_is_m() {
        let t = txt(&[3, 1, 4, 1, 5]);
        let p = pat(&[2, 2, 6]);
        let ir = threshold_intervals(&t, &p, 2).unwrap();
        assert_eq!(ir.param_i(&p).unwrap(), 3);
    }
}

//! Monte Carlo reporting and `(1-ε)`-approximate counting.
//!
//! One hashing round reduces the text alphabet to a small bucket range
//! with a 2-wise independent hash, rebuilds the matching graph on the
//! buckets, and decomposes the reduced instance into one binary don't-care
//! instance per bucket. A true occurrence survives every round; a
//! non-occurrence is eliminated per round with probability at least 1/2
//! (reporting) or keeps, in expectation, all but an `ε/2` fraction of its
//! mismatches (counting). Rounds are repeated `ceil(c·log2 n)` times and
//! merged by intersection (reporting) or entrywise maximum (counting), so
//! reported sets can only err towards false positives and counted values
//! never exceed the truth.

use std::collections::{HashMap, HashSet};

use crate::convolution::{dc_mismatch_count_with, DcString, DcSym, Engine};
use crate::error::{Error, Result};
use crate::model::{
    alignment_count, brute_count, brute_report, MatchRelation, MismatchTable, Pattern, Side,
    TableKind, Text,
};
use crate::ratio::Ratio;
use crate::rng::SplitMix64;

/// Repetition/seed configuration for the Monte Carlo algorithms. The error
/// exponent `c` gives a failure probability of at most `1/n^c` after
/// `ceil(c·log2 n)` rounds.
#[derive(Clone, Copy, Debug)]
pub struct MonteCarloConfig {
    pub c: u32,
    pub seed: u64,
}

impl MonteCarloConfig {
    pub fn new(c: u32, seed: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::input("error exponent c must be positive"));
        }
        Ok(MonteCarloConfig { c, seed })
    }

    /// `ceil(c·log2 n)`, at least 1.
    pub fn rounds(&self, n: usize) -> u32 {
        let r = (f64::from(self.c) * (n.max(1) as f64).log2()).ceil() as u32;
        r.max(1)
    }
}

/// Strategy selector for [`count_approx`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountStrategy {
    ByDegree,
    ByEdges,
    Auto,
}

/// A 2-wise independent hash `x -> ((a·x + b) mod p) mod buckets`, with
/// `a, b` drawn uniformly from the field of size `p`.
#[derive(Clone, Copy, Debug)]
pub struct HashFamily {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub buckets: u64,
}

impl HashFamily {
    pub fn draw(p: u64, buckets: u64, rng: &mut SplitMix64) -> Self {
        HashFamily {
            p,
            a: rng.below(p),
            b: rng.below(p),
            buckets,
        }
    }

    pub fn eval(&self, x: u32) -> u64 {
        let v = (u128::from(self.a) * u128::from(x) + u128::from(self.b)) % u128::from(self.p);
        (v % u128::from(self.buckets)) as u64
    }
}

/// The smallest prime in `[lo, hi]`. Deterministic.
pub fn find_prime(lo: u64, hi: u64) -> Result<u64> {
    if lo > hi {
        return Err(Error::PrimeRange { lo, hi });
    }
    let mut candidate = lo.max(2);
    while candidate <= hi {
        if is_prime(candidate) {
            return Ok(candidate);
        }
        candidate += 1;
    }
    Err(Error::PrimeRange { lo, hi })
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((u128::from(a) * u128::from(b)) % u128::from(n)) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Field prime for hashing the text alphabet: the smallest prime at least
/// `max(n, |Σ_T|)` (and at most twice that).
fn field_prime(n: usize, sigma_t: u64) -> Result<u64> {
    let lo = (n as u64).max(sigma_t).max(2);
    find_prime(lo, 2 * lo)
}

/// One hashing round: per-alignment mismatch counts of the bucket-reduced
/// instance. Positions with `masked[j]` set are treated as matching
/// everything. Empty buckets are skipped (their instances cannot produce
/// mismatches).
fn hashed_round_sums(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    hash: &HashFamily,
    masked: Option<&[bool]>,
    engine: Engine,
) -> Vec<u64> {
    let t = text.symbols();
    let p = pattern.symbols();
    let n = t.len();
    let m = p.len();

    // Reduced text and bucket occupancy.
    let mut bucket_of: HashMap<u32, u64> = HashMap::new();
    let reduced: Vec<u64> = t
        .iter()
        .map(|&a| *bucket_of.entry(a).or_insert_with(|| hash.eval(a)))
        .collect();
    let mut occupied: Vec<u64> = {
        let set: HashSet<u64> = reduced.iter().copied().collect();
        set.into_iter().collect()
    };
    occupied.sort_unstable();

    // Reduced matching graph: bucket values matching each distinct pattern
    // character.
    let mut reduced_edges: HashSet<(u64, u32)> = HashSet::new();
    let mut distinct_p: Vec<u32> = p.to_vec();
    distinct_p.sort_unstable();
    distinct_p.dedup();
    for &b in &distinct_p {
        for &a in rel.neighbors_unchecked(b, Side::Pattern) {
            reduced_edges.insert((hash.eval(a), b));
        }
    }

    let mut sums = vec![0u64; alignment_count(n, m)];
    for &bucket in &occupied {
        let text_syms: Vec<DcSym> = reduced
            .iter()
            .map(|&h| if h == bucket { DcSym::Zero } else { DcSym::Any })
            .collect();
        let pat_syms: Vec<DcSym> = p
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                let always = masked.is_some_and(|mask| mask[j]);
                if always || reduced_edges.contains(&(bucket, b)) {
                    DcSym::Zero
                } else {
                    DcSym::One
                }
            })
            .collect();
        let tb = DcString::new(text_syms).expect("text is non-empty");
        let pb = DcString::new(pat_syms).expect("pattern is non-empty");
        let table = dc_mismatch_count_with(&tb, &pb, engine);
        for (acc, &v) in sums.iter_mut().zip(table.values()) {
            *acc += v;
        }
    }
    sums
}

fn validate(text: &Text, pattern: &Pattern, rel: &MatchRelation) -> Result<()> {
    text.check_alphabet(rel.sigma_text())?;
    pattern.check_alphabet(rel.sigma_pattern())?;
    Ok(())
}

/// Monte Carlo reporting parameterised by the maximum degree `D`.
///
/// The output always contains every true occurrence; any fixed
/// non-occurrence survives all rounds with probability at most `1/n^c`.
/// Falls back to the exact brute-force scan when `D > m`.
pub fn report_d(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    cfg: &MonteCarloConfig,
) -> Result<Vec<usize>> {
    validate(text, pattern, rel)?;
    let (d, _) = rel.params();
    let m = pattern.len();
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    if d > m {
        return brute_report(text, pattern, rel);
    }
    let buckets = 2 * d.max(1) as u64;
    report_rounds(text, pattern, rel, cfg, buckets, None)
}

/// A single hashing round of the degree-parameterised reporter: the
/// alignments that survive one random hash. Diagnostic entry point for
/// measuring per-round elimination.
pub fn report_d_single_round(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    seed: u64,
) -> Result<Vec<usize>> {
    validate(text, pattern, rel)?;
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    let (d, _) = rel.params();
    let buckets = 2 * d.max(1) as u64;
    let p = field_prime(text.len(), rel.sigma_text())?;
    let mut rng = SplitMix64::new(seed);
    let hash = HashFamily::draw(p, buckets, &mut rng);
    let sums = hashed_round_sums(text, pattern, rel, &hash, None, Engine::Auto);
    Ok(survivors(&sums))
}

fn survivors(sums: &[u64]) -> Vec<usize> {
    sums.iter()
        .enumerate()
        .filter(|&(_, &v)| v == 0)
        .map(|(i, _)| i + 1)
        .collect()
}

fn report_rounds(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    cfg: &MonteCarloConfig,
    buckets: u64,
    masked: Option<&[bool]>,
) -> Result<Vec<usize>> {
    let n = text.len();
    let p = field_prime(n, rel.sigma_text())?;
    let root = SplitMix64::new(cfg.seed);
    let mut alive: Option<HashSet<usize>> = None;
    for round in 0..cfg.rounds(n) {
        let mut rng = root.split(u64::from(round));
        let hash = HashFamily::draw(p, buckets, &mut rng);
        let sums = hashed_round_sums(text, pattern, rel, &hash, masked, Engine::Auto);
        let round_set: HashSet<usize> = survivors(&sums).into_iter().collect();
        alive = Some(match alive {
            None => round_set,
            Some(prev) => prev.intersection(&round_set).copied().collect(),
        });
        if alive.as_ref().is_some_and(HashSet::is_empty) {
            break;
        }
    }
    let mut out: Vec<usize> = alive.unwrap_or_default().into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Monte Carlo reporting parameterised by the edge count `S`.
///
/// Pattern characters of degree at least `√(S/log2 n)` are handled exactly
/// by one don't-care instance each; the rest go through the hashing rounds
/// of [`report_d`] with the degree capped at that threshold. Falls back to
/// brute force when `√S > m`.
pub fn report_s(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    cfg: &MonteCarloConfig,
) -> Result<Vec<usize>> {
    validate(text, pattern, rel)?;
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    let (_, s) = rel.params();
    let n = text.len();
    let m = pattern.len();
    if s > m * m {
        return brute_report(text, pattern, rel);
    }

    let lg = (n.max(2) as f64).log2();
    let threshold = ((s as f64) / lg).sqrt().ceil().max(1.0) as usize;
    let (heavy_zero, masked) = heavy_instances_zero_set(text, pattern, rel, threshold)?;

    let light_survivors: Vec<usize> = if masked.iter().all(|&h| h) {
        // No light positions: the heavy instances already decided everything.
        (1..=alignment_count(n, m)).collect()
    } else {
        let buckets = 2 * threshold as u64;
        report_rounds(text, pattern, rel, cfg, buckets, Some(&masked))?
    };

    Ok(light_survivors
        .into_iter()
        .filter(|&i| heavy_zero[i - 1])
        .collect())
}

/// Runs one exact don't-care instance per distinct heavy pattern character
/// and returns (per-alignment "no heavy mismatch" flags, heavy position
/// mask). The instance for `b` marks text positions not matching `b` and
/// pattern positions equal to `b`, so its mismatch count is exactly the
/// number of mismatches caused by `b`.
fn heavy_instances_zero_set(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    threshold: usize,
) -> Result<(Vec<bool>, Vec<bool>)> {
    let sums = heavy_mismatch_sums(text, pattern, rel, threshold)?.0;
    let masked = heavy_mask(pattern, rel, threshold)?;
    Ok((sums.iter().map(|&v| v == 0).collect(), masked))
}

fn heavy_mask(pattern: &Pattern, rel: &MatchRelation, threshold: usize) -> Result<Vec<bool>> {
    let mut mask = Vec::with_capacity(pattern.len());
    for &b in pattern.symbols() {
        mask.push(rel.degree(b, Side::Pattern)? >= threshold);
    }
    Ok(mask)
}

/// Exact mismatch counts caused by heavy pattern characters, plus the
/// number of distinct heavy characters.
pub(crate) fn heavy_mismatch_sums(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    threshold: usize,
) -> Result<(Vec<u64>, usize)> {
    let t = text.symbols();
    let p = pattern.symbols();
    let mut sums = vec![0u64; alignment_count(t.len(), p.len())];

    let mut heavy_chars: Vec<u32> = p.to_vec();
    heavy_chars.sort_unstable();
    heavy_chars.dedup();
    heavy_chars.retain(|&b| rel.neighbors_unchecked(b, Side::Pattern).len() >= threshold);

    for &b in &heavy_chars {
        let text_syms: Vec<DcSym> = t
            .iter()
            .map(|&a| {
                if rel.edge_unchecked(a, b) {
                    DcSym::Any
                } else {
                    DcSym::Zero
                }
            })
            .collect();
        let pat_syms: Vec<DcSym> = p
            .iter()
            .map(|&x| if x == b { DcSym::One } else { DcSym::Any })
            .collect();
        let tb = DcString::new(text_syms)?;
        let pb = DcString::new(pat_syms)?;
        let table = dc_mismatch_count_with(&tb, &pb, Engine::Auto);
        for (acc, &v) in sums.iter_mut().zip(table.values()) {
            *acc += v;
        }
    }
    Ok((sums, heavy_chars.len()))
}

/// `(1-ε)`-approximate Monte Carlo counting.
///
/// Values never exceed the true mismatch counts; each value is at least
/// `(1-ε)` times the truth with probability `1 - 1/n^c`. The `ByDegree`
/// strategy hashes into a prime number of buckets in `[2D/ε, 4D/ε]` and
/// takes the entrywise maximum over rounds; `ByEdges` first counts the
/// mismatches of characters with degree at least `√(εS/log2 n)` exactly,
/// then applies the same scheme to the rest. `Auto` picks the cheaper
/// predicted bound.
pub fn count_approx(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
    cfg: &MonteCarloConfig,
    strategy: CountStrategy,
) -> Result<MismatchTable> {
    validate(text, pattern, rel)?;
    eps.require_proper()?;
    if pattern.len() > text.len() {
        return Ok(MismatchTable::new(Vec::new(), TableKind::Exact));
    }

    let (d, s) = rel.params();
    let n = text.len();
    let lg = (n.max(2) as f64).log2();
    let strategy = match strategy {
        CountStrategy::Auto => {
            let inv_eps = 1.0 / eps.as_f64();
            let cost_d = inv_eps * d as f64 * lg;
            let cost_s = (inv_eps * s as f64 * lg).sqrt();
            if cost_d <= cost_s {
                CountStrategy::ByDegree
            } else {
                CountStrategy::ByEdges
            }
        }
        other => other,
    };

    match strategy {
        CountStrategy::ByDegree => {
            count_by_degree(text, pattern, rel, eps, cfg, d.max(1) as u64, None)
        }
        CountStrategy::ByEdges => count_by_edges(text, pattern, rel, eps, cfg),
        CountStrategy::Auto => unreachable!(),
    }
}

/// Exact mismatch counts restricted to the positions not excluded by the
/// mask.
fn brute_count_unmasked(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    masked: Option<&[bool]>,
) -> Vec<u64> {
    let t = text.symbols();
    let p = pattern.symbols();
    (0..alignment_count(t.len(), p.len()))
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, &b)| {
                    !masked.is_some_and(|m| m[j]) && !rel.edge_unchecked(t[i + j], b)
                })
                .count() as u64
        })
        .collect()
}

fn count_by_degree(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
    cfg: &MonteCarloConfig,
    degree_cap: u64,
    masked: Option<&[bool]>,
) -> Result<MismatchTable> {
    let n = text.len();
    // 2D/ε > n: the bucket range outgrows the text; count exactly instead.
    if 2 * u128::from(degree_cap) * u128::from(eps.den())
        > u128::from(n as u64) * u128::from(eps.num())
    {
        if masked.is_none() {
            return brute_count(text, pattern, rel);
        }
        let values = brute_count_unmasked(text, pattern, rel, masked);
        return Ok(MismatchTable::new(values, TableKind::LowerEstimate));
    }

    let q_lo = (2 * u128::from(degree_cap) * u128::from(eps.den())).div_ceil(u128::from(eps.num()));
    let q_lo = u64::try_from(q_lo).map_err(|_| Error::input("bucket range overflow"))?;
    let q = find_prime(q_lo.max(2), 2 * q_lo.max(2))?;

    let p = field_prime(n, rel.sigma_text())?;
    let root = SplitMix64::new(cfg.seed);
    let mut best = vec![0u64; alignment_count(n, pattern.len())];
    for round in 0..cfg.rounds(n) {
        let mut rng = root.split(u64::from(round));
        let hash = HashFamily::draw(p, q, &mut rng);
        let sums = hashed_round_sums(text, pattern, rel, &hash, masked, Engine::Auto);
        for (b, v) in best.iter_mut().zip(sums) {
            *b = (*b).max(v);
        }
    }
    Ok(MismatchTable::new(best, TableKind::LowerEstimate))
}

fn count_by_edges(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
    cfg: &MonteCarloConfig,
) -> Result<MismatchTable> {
    let n = text.len();
    let (_, s) = rel.params();
    let lg = (n.max(2) as f64).log2();
    let threshold = ((eps.as_f64() * s as f64) / lg).sqrt().ceil().max(1.0) as usize;

    let (heavy, _) = heavy_mismatch_sums(text, pattern, rel, threshold)?;
    let masked = heavy_mask(pattern, rel, threshold)?;

    if masked.iter().all(|&h| h) {
        return Ok(MismatchTable::new(heavy, TableKind::LowerEstimate));
    }
    let light = count_by_degree(
        text,
        pattern,
        rel,
        eps,
        cfg,
        threshold as u64,
        Some(&masked),
    )?;
    let combined = heavy
        .iter()
        .zip(light.values())
        .map(|(&h, &l)| h + l)
        .collect();
    Ok(MismatchTable::new(combined, TableKind::LowerEstimate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn txt(v: &[u32]) -> Text {
        Text::new(v.to_vec()).unwrap()
    }

    fn pat(v: &[u32]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    #[test]
    fn find_prime_examples() {
        assert_eq!(find_prime(10, 20).unwrap(), 11);
        assert_eq!(find_prime(2, 4).unwrap(), 2);
        assert_eq!(find_prime(500, 1000).unwrap(), 503);
        assert!(find_prime(24, 28).is_err());
        assert!(find_prime(20, 10).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let mut sieve = vec![true; 10_000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..100 {
            if sieve[i] {
                for j in (i * i..10_000).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), expected, "{i}");
        }
    }

    #[test]
    fn identity_self_match_always_found() {
        let rel = MatchRelation::identity(4).unwrap();
        let t = txt(&[1, 2, 3]);
        let p = pat(&[1, 2, 3]);
        for seed in 0..20 {
            let cfg = MonteCarloConfig::new(2, seed).unwrap();
            assert_eq!(report_d(&t, &p, &rel, &cfg).unwrap(), vec![1]);
            assert_eq!(report_s(&t, &p, &rel, &cfg).unwrap(), vec![1]);
        }
    }

    #[test]
    fn empty_relation_reports_nothing() {
        let rel = MatchRelation::empty(4, 4).unwrap();
        let t = txt(&[0, 1, 2, 3, 0, 1]);
        let p = pat(&[0, 1]);
        for seed in 0..50 {
            let cfg = MonteCarloConfig::new(2, seed).unwrap();
            assert!(report_d(&t, &p, &rel, &cfg).unwrap().is_empty());
        }
    }

    #[test]
    fn star_relation_heavy_path_exact() {
        // One pattern character matching every text character.
        let rel = MatchRelation::from_edges(6, 3, (0..6).map(|a| (a, 1u32))).unwrap();
        let t = txt(&[0, 1, 2, 3, 4, 5]);
        let p = pat(&[1, 1]);
        let want = brute_report(&t, &p, &rel).unwrap();
        for seed in 0..10 {
            let cfg = MonteCarloConfig::new(2, seed).unwrap();
            assert_eq!(report_s(&t, &p, &rel, &cfg).unwrap(), want);
        }
    }

    #[test]
    fn count_never_overestimates() {
        let mut rng = SplitMix64::new(31);
        for trial in 0..30 {
            let n = 20 + rng.below(60) as usize;
            let m = 1 + rng.below(8) as usize;
            let sigma = 2 + rng.below(6);
            let edges: Vec<(u32, u32)> = (0..sigma as u32)
                .flat_map(|a| (0..sigma as u32).map(move |b| (a, b)))
                .filter(|_| rng.next_u64().is_multiple_of(3))
                .collect();
            let rel = MatchRelation::from_edges(sigma, sigma, edges).unwrap();
            let t = txt(&(0..n).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let p = pat(&(0..m).map(|_| rng.below(sigma) as u32).collect::<Vec<_>>());
            let truth = brute_count(&t, &p, &rel).unwrap();
            let cfg = MonteCarloConfig::new(2, trial).unwrap();
            for strategy in [
                CountStrategy::ByDegree,
                CountStrategy::ByEdges,
                CountStrategy::Auto,
            ] {
                let est =
                    count_approx(&t, &p, &rel, Ratio::new(1, 4).unwrap(), &cfg, strategy).unwrap();
                for (e, h) in est.values().iter().zip(truth.values()) {
                    assert!(e <= h, "overestimate with {strategy:?}");
                }
            }
        }
    }

    #[test]
    fn count_zero_stays_zero() {
        let rel = MatchRelation::identity(3).unwrap();
        let t = txt(&[1, 2, 1, 2]);
        let p = pat(&[1, 2]);
        let cfg = MonteCarloConfig::new(2, 9).unwrap();
        let est = count_approx(
            &t,
            &p,
            &rel,
            Ratio::new(1, 2).unwrap(),
            &cfg,
            CountStrategy::Auto,
        )
        .unwrap();
        assert_eq!(est.values()[0], 0);
        assert_eq!(est.values()[2], 0);
    }

    #[test]
    fn determinism_under_seed() {
        let rel = MatchRelation::from_edges(5, 5, [(0, 1), (1, 2), (2, 2), (4, 0)]).unwrap();
        let t = txt(&[0, 1, 2, 3, 4, 0, 1, 2]);
        let p = pat(&[1, 2, 0]);
        let cfg = MonteCarloConfig::new(3, 1234).unwrap();
        assert_eq!(
            report_d(&t, &p, &rel, &cfg).unwrap(),
            report_d(&t, &p, &rel, &cfg).unwrap()
        );
        let eps = Ratio::new(1, 4).unwrap();
        assert_eq!(
            count_approx(&t, &p, &rel, eps, &cfg, CountStrategy::Auto).unwrap(),
            count_approx(&t, &p, &rel, eps, &cfg, CountStrategy::Auto).unwrap()
        );
    }

    #[test]
    fn eps_validated() {
        let rel = MatchRelation::identity(2).unwrap();
        let t = txt(&[0, 1]);
        let p = pat(&[0]);
        let cfg = MonteCarloConfig::new(1, 0).unwrap();
        assert!(count_approx(
            &t,
            &p,
            &rel,
            Ratio::new(3, 2).unwrap(),
            &cfg,
            CountStrategy::Auto
        )
        .is_err());
    }
}

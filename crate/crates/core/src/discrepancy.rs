//! Deterministic low-discrepancy colouring of a bounded-size set system,
//! and the recursive partition built on top of it.
//!
//! The colouring follows the potential-minimizing greedy: each element in
//! turn receives the sign that minimizes the objective
//! `G = Σ_i [(1+ε)^{p_i}(1-ε)^{n_i} + (1+ε)^{n_i}(1-ε)^{p_i}]`,
//! maintained in a complete binary tree whose leaf `2i-1` holds the first
//! product for set `i`, leaf `2i` the mirrored one, and whose root holds
//! `G`. Arithmetic uses fixed-point values scaled by `2^shift`; leaves
//! that would drop below the precision floor park pending `(1-ε)` factors
//! in a counter and are treated as zeros in sums. After the run the final
//! per-set potentials are recomputed exactly (the step `ε` is a dyadic
//! rational, so this is an integer comparison); if the bounded-precision
//! bookkeeping ever let a potential through above `3z`, the precision is
//! squared and the run repeats.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A family of `z` sets over the universe `{0, .., |U|-1}`, each of size at
/// most `k`.
#[derive(Clone, Debug)]
pub struct SetSystem {
    universe: usize,
    sets: Vec<Vec<u32>>,
    incidence: Vec<Vec<u32>>,
    max_size: usize,
}

impl SetSystem {
    pub fn new(universe: usize, sets: Vec<Vec<u32>>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::input("a set system needs at least one set"));
        }
        let mut cleaned = Vec::with_capacity(sets.len());
        let mut incidence = vec![Vec::new(); universe];
        for (i, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            if let Some(&max) = set.last() {
                if max as usize >= universe {
                    return Err(Error::CharOutOfRange {
                        code: u64::from(max),
                        alphabet: universe as u64,
                    });
                }
            }
            for &u in &set {
                incidence[u as usize].push(i as u32);
            }
            cleaned.push(set);
        }
        let max_size = cleaned.iter().map(Vec::len).max().unwrap_or(0);
        Ok(SetSystem {
            universe,
            sets: cleaned,
            incidence,
            max_size,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    /// Maximum set size (the parameter `k`), at least 1.
    pub fn max_set_size(&self) -> usize {
        self.max_size.max(1)
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    pub fn sets_containing(&self, u: usize) -> &[u32] {
        &self.incidence[u]
    }

    /// `log2(3z)` of this system.
    pub fn log_3z(&self) -> f64 {
        (3.0 * self.num_sets() as f64).log2()
    }
}

/// The step parameter of the greedy potential, produced by
/// [`compute_epsilon`]. `eps_scaled / 2^64` is the dyadic rational the
/// whole pipeline (colouring, audit, bounds) works with.
#[derive(Clone, Copy, Debug)]
pub struct StepParams {
    pub eps_scaled: u128,
    pub alpha: f64,
    pub t1: u32,
    pub t2: u32,
}

const EPS_FRAC_BITS: u32 = 64;
const EPS_SCALE: u128 = 1u128 << EPS_FRAC_BITS;

impl StepParams {
    pub fn eps(&self) -> f64 {
        self.eps_scaled as f64 / EPS_SCALE as f64
    }

    pub fn one_minus_eps(&self) -> f64 {
        (EPS_SCALE - self.eps_scaled) as f64 / EPS_SCALE as f64
    }

    /// `log2((1+ε)/(1-ε))`.
    pub fn log_ratio(&self) -> f64 {
        ((EPS_SCALE + self.eps_scaled) as f64 / (EPS_SCALE - self.eps_scaled) as f64).log2()
    }
}

/// Smallest `t` with `2^t >= 3z`.
fn ceil_log2_3z(z: u64) -> u32 {
    let target = 3u128 * u128::from(z);
    let mut t = 0u32;
    while (1u128 << t) < target {
        t += 1;
    }
    t
}

/// Computes the greedy step `ε` for a system of `z` sets of size at most
/// `k`, via the four-step dyadic construction: `α1 = ceil(log2 3z)/k`, the
/// power of two `2^{-t2}` in `[α1, 2α1]`, `α2 = 2^{-t2/2}`,
/// `α3 = 16√2·α2`, and `ε = 1 - 2/(2+α3)`. Requires `k > log2(3z)`.
///
/// The returned `ε` is rounded down to a multiple of `2^-64`; `α` is the
/// factor it realizes in `log2((1+ε)/(1-ε)) = α·√(log2(3z)/k)`, always
/// above 2.
pub fn compute_epsilon(z: u64, k: u64) -> Result<StepParams> {
    if z == 0 || k == 0 {
        return Err(Error::precondition("z and k must be positive"));
    }
    let t1 = ceil_log2_3z(z);
    // k > log2(3z) <=> 2^k > 3z
    if k < 128 && (1u128 << k) <= 3u128 * u128::from(z) {
        return Err(Error::precondition(format!(
            "k = {k} must exceed log2(3z) = log2({})",
            3 * z
        )));
    }

    // Largest t2 with t1·2^{t2} <= k, so that α1 <= 2^{-t2} <= 2α1.
    let mut t2 = 0u32;
    while u128::from(t1) << (t2 + 1) <= u128::from(k) {
        t2 += 1;
    }

    // α3 = 16·√2·2^{-t2/2} = 2^{(9-t2)/2}·2^{96} / 2^{96}, computed as
    // floor(sqrt(2^{201-t2})) over a 2^96 scale.
    debug_assert!(t2 < 201);
    let a3_scaled: BigUint = (BigUint::from(1u8) << (201 - t2 as usize)).sqrt();

    // ε = α3/(2+α3); floor the scaled numerator and bump the denominator so
    // the stored dyadic value never exceeds the true ε.
    let numer = (&a3_scaled << EPS_FRAC_BITS as usize) as BigUint;
    let denom = (BigUint::from(1u8) << 97usize) + &a3_scaled + 1u8;
    let eps_scaled_big = numer / denom;
    let eps_scaled: u128 = u128::try_from(&eps_scaled_big).expect("eps fits in 128 bits");
    assert!(eps_scaled > 0 && eps_scaled < EPS_SCALE);

    let params = StepParams {
        eps_scaled,
        alpha: 0.0,
        t1,
        t2,
    };
    let alpha = params.log_ratio() / ((3.0 * z as f64).log2() / k as f64).sqrt();
    Ok(StepParams { alpha, ..params })
}

/// A ±1 colouring of a set system's universe with its per-set balance
/// counters and the parameters that certify its discrepancy bound.
#[derive(Clone, Debug)]
pub struct Colouring {
    pub chi: Vec<i8>,
    pub plus_counts: Vec<u32>,
    pub minus_counts: Vec<u32>,
    /// Dyadic step parameter over `2^64`; zero when the small-`k` shortcut
    /// produced the all-plus colouring.
    pub eps_scaled: u128,
    pub alpha: f64,
    /// Fixed-point precision (in bits) the accepted run used.
    pub shift: u32,
}

impl Colouring {
    pub fn set_discrepancy(&self, i: usize) -> i64 {
        i64::from(self.plus_counts[i]) - i64::from(self.minus_counts[i])
    }

    pub fn max_abs_discrepancy(&self) -> u64 {
        (0..self.plus_counts.len())
            .map(|i| self.set_discrepancy(i).unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// The certified bound `α·√(k·log2(3z))`.
    pub fn discrepancy_bound(&self, sys: &SetSystem) -> f64 {
        self.alpha * (sys.max_set_size() as f64 * sys.log_3z()).sqrt()
    }
}

struct FixedPoint {
    shift: u32,
    c_plus: BigUint,
    c_minus: BigUint,
}

impl FixedPoint {
    fn new(eps_scaled: u128, shift: u32) -> Self {
        assert!(shift >= EPS_FRAC_BITS);
        let up = (shift - EPS_FRAC_BITS) as usize;
        FixedPoint {
            shift,
            c_plus: BigUint::from(EPS_SCALE + eps_scaled) << up,
            c_minus: BigUint::from(EPS_SCALE - eps_scaled) << up,
        }
    }

    fn one(&self) -> BigUint {
        BigUint::from(1u8) << self.shift as usize
    }

    fn mul(&self, x: &BigUint, c: &BigUint) -> BigUint {
        (x * c) >> self.shift as usize
    }

    /// Multiply by `(1+ε)`, then fold as many pending `(1-ε)` factors as
    /// possible while the value stays above the precision floor.
    fn mul_plus_fold(&self, v: &BigUint, r: u64) -> (BigUint, u64) {
        let mut nv = self.mul(v, &self.c_plus);
        let mut nr = r;
        while nr > 0 {
            let y = self.mul(&nv, &self.c_minus);
            if y.bits() == 0 {
                break;
            }
            nv = y;
            nr -= 1;
        }
        (nv, nr)
    }

    /// Multiply by `(1-ε)`; an underflowing value stays put and the factor
    /// is parked in the counter instead.
    fn mul_minus(&self, v: &BigUint, r: u64) -> (BigUint, u64) {
        if r > 0 {
            return (v.clone(), r + 1);
        }
        let y = self.mul(v, &self.c_minus);
        if y.bits() == 0 {
            (v.clone(), 1)
        } else {
            (y, 0)
        }
    }
}

/// Sum tree over the leaf contributions; the root carries the tracked `G`.
struct SumTree {
    base: usize,
    nodes: Vec<BigUint>,
}

impl SumTree {
    fn new(leaf_slots: usize) -> Self {
        let base = leaf_slots.next_power_of_two().max(1);
        SumTree {
            base,
            nodes: vec![BigUint::default(); 2 * base],
        }
    }

    fn set_leaf(&mut self, slot: usize, value: BigUint) {
        let mut idx = self.base + slot;
        self.nodes[idx] = value;
        idx >>= 1;
        while idx >= 1 {
            self.nodes[idx] = &self.nodes[2 * idx] + &self.nodes[2 * idx + 1];
            if idx == 1 {
                break;
            }
            idx >>= 1;
        }
    }
}

const INITIAL_SHIFT: u32 = 200;
const MAX_SHIFT: u32 = 6400;

/// Greedy colouring with `max_i |χ(S_i)| <= α·√(k·log2(3z))`.
///
/// When `k <= log2(3z)` any colouring meets the bound and the all-plus one
/// is returned. Otherwise the bounded-precision greedy runs, its result is
/// audited exactly against the per-set potential bound `3z`, and on audit
/// failure the precision is squared and the run repeats.
pub fn colour(sys: &SetSystem) -> Colouring {
    let z = sys.num_sets() as u64;
    let k = sys.max_set_size() as u64;

    // k <= log2(3z): every colouring is within the bound.
    if k < 128 && (1u128 << k) <= 3 * u128::from(z) {
        let mut plus = vec![0u32; sys.num_sets()];
        for (i, set) in sys.sets().iter().enumerate() {
            plus[i] = set.len() as u32;
        }
        return Colouring {
            chi: vec![1; sys.universe()],
            plus_counts: plus,
            minus_counts: vec![0; sys.num_sets()],
            eps_scaled: 0,
            alpha: 2.0,
            shift: 0,
        };
    }

    let params = compute_epsilon(z, k).expect("precondition checked above");
    let mut shift = INITIAL_SHIFT;
    loop {
        let col = colour_with_shift(sys, &params, shift);
        if audit_potentials(sys, &col.chi, params.eps_scaled) {
            let bound = col.discrepancy_bound(sys);
            assert!(
                col.max_abs_discrepancy() as f64 <= bound + 1e-6,
                "discrepancy bound violated: {} > {}",
                col.max_abs_discrepancy(),
                bound
            );
            return col;
        }
        shift *= 2;
        assert!(
            shift <= MAX_SHIFT,
            "colouring failed to certify even at {shift} bits"
        );
    }
}

fn colour_with_shift(sys: &SetSystem, params: &StepParams, shift: u32) -> Colouring {
    let z = sys.num_sets();
    let fx = FixedPoint::new(params.eps_scaled, shift);

    let mut leaf_val: Vec<BigUint> = (0..2 * z).map(|_| fx.one()).collect();
    let mut leaf_r = vec![0u64; 2 * z];
    let mut tree = SumTree::new(2 * z);
    for slot in 0..2 * z {
        tree.set_leaf(slot, fx.one());
    }

    let mut chi = vec![0i8; sys.universe()];
    let mut plus_counts = vec![0u32; z];
    let mut minus_counts = vec![0u32; z];

    // Candidate leaf states per affected set: (value, pending counter).
    let mut scratch: Vec<(usize, [(BigUint, u64); 4])> = Vec::new();

    for (u, chi_u) in chi.iter_mut().enumerate() {
        let affected = sys.sets_containing(u);
        if affected.is_empty() {
            *chi_u = 1;
            continue;
        }

        scratch.clear();
        let mut plus_total = BigUint::default();
        let mut minus_total = BigUint::default();
        for &i in affected {
            let i = i as usize;
            let (v0, r0) = (&leaf_val[2 * i], leaf_r[2 * i]);
            let (v1, r1) = (&leaf_val[2 * i + 1], leaf_r[2 * i + 1]);
            // χ(u) = +1: leaf 2i gains (1+ε), its mirror gains (1-ε).
            let p0 = fx.mul_plus_fold(v0, r0);
            let p1 = fx.mul_minus(v1, r1);
            // χ(u) = -1: the other way round.
            let m0 = fx.mul_minus(v0, r0);
            let m1 = fx.mul_plus_fold(v1, r1);
            for cand in [&p0, &p1] {
                if cand.1 == 0 {
                    plus_total += &cand.0;
                }
            }
            for cand in [&m0, &m1] {
                if cand.1 == 0 {
                    minus_total += &cand.0;
                }
            }
            scratch.push((i, [p0, p1, m0, m1]));
        }

        let take_plus = plus_total <= minus_total;
        *chi_u = if take_plus { 1 } else { -1 };
        for (i, cands) in scratch.drain(..) {
            let [p0, p1, m0, m1] = cands;
            let ((nv0, nr0), (nv1, nr1)) = if take_plus { (p0, p1) } else { (m0, m1) };
            leaf_r[2 * i] = nr0;
            leaf_r[2 * i + 1] = nr1;
            tree.set_leaf(
                2 * i,
                if nr0 == 0 {
                    nv0.clone()
                } else {
                    BigUint::default()
                },
            );
            tree.set_leaf(
                2 * i + 1,
                if nr1 == 0 {
                    nv1.clone()
                } else {
                    BigUint::default()
                },
            );
            leaf_val[2 * i] = nv0;
            leaf_val[2 * i + 1] = nv1;
            if take_plus {
                plus_counts[i] += 1;
            } else {
                minus_counts[i] += 1;
            }
        }
    }

    Colouring {
        chi,
        plus_counts,
        minus_counts,
        eps_scaled: params.eps_scaled,
        alpha: params.alpha,
        shift,
    }
}

/// Exact check that the summed final potentials satisfy `Σ_i G_i <= 3z`
/// (which implies the per-set hypothesis `G_i <= 3z`). Counts are recomputed
/// from the colouring, and `ε` is dyadic, so the comparison is integer
/// arithmetic throughout.
pub fn audit_potentials(sys: &SetSystem, chi: &[i8], eps_scaled: u128) -> bool {
    let z = sys.num_sets() as u64;
    let a = BigUint::from((1u128 << EPS_FRAC_BITS) + eps_scaled);
    let b = BigUint::from((1u128 << EPS_FRAC_BITS) - eps_scaled);
    let ab = &a * &b;

    let mut sizes = Vec::with_capacity(sys.num_sets());
    let mut max_size = 0usize;
    for set in sys.sets() {
        max_size = max_size.max(set.len());
        sizes.push(set.len());
    }

    let mut total = BigUint::default();
    for set in sys.sets() {
        let p = set.iter().filter(|&&u| chi[u as usize] > 0).count() as u32;
        let n = set.len() as u32 - p;
        // a^p b^n + a^n b^p = (ab)^min · (a^δ + b^δ) with δ = |p-n|.
        let mu = p.min(n);
        let delta = p.max(n) - mu;
        let term = ab.pow(mu) * (a.pow(delta) + b.pow(delta));
        // Normalize every term to the common scale 2^{64·max_size}.
        let scale_up = EPS_FRAC_BITS as usize * (max_size - (p + n) as usize);
        total += term << scale_up;
    }
    total <= BigUint::from(3 * z) << (EPS_FRAC_BITS as usize * max_size)
}

/// A partition of the universe into parts intersecting every set in few
/// elements.
#[derive(Clone, Debug)]
pub struct PartitionFn {
    /// Part label per universe element.
    pub labels: Vec<u64>,
    /// Size of the label space (`2^levels`).
    pub label_space: u64,
    pub levels: u32,
    /// The achieved bound `B = max_{c,i} |X_c ∩ S_i|`.
    pub achieved_bound: usize,
    /// The stopping target `4·α²·log2(3z)`.
    pub target_bound: f64,
    pub alpha: f64,
}

fn max_part_intersection(sys: &SetSystem, labels: &[u64]) -> usize {
    use std::collections::HashMap;
    let mut best = 0usize;
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for set in sys.sets() {
        counts.clear();
        for &u in set {
            *counts.entry(labels[u as usize]).or_insert(0) += 1;
        }
        best = best.max(counts.values().copied().max().unwrap_or(0));
    }
    best
}

const MAX_PARTITION_LEVELS: u32 = 48;

/// Recursively halves the universe with [`colour`] until every part meets
/// every set in at most `4·α²·log2(3z)` elements; an element coloured `-1`
/// goes to label `2c`, `+1` to `2c+1`.
pub fn build_partition(sys: &SetSystem) -> PartitionFn {
    let z = sys.num_sets() as u64;
    let k = sys.max_set_size() as u64;

    let alpha = if k < 128 && (1u128 << k) <= 3 * u128::from(z) {
        2.0
    } else {
        compute_epsilon(z, k).expect("precondition checked").alpha
    };
    let target = 4.0 * alpha * alpha * sys.log_3z();
    build_partition_with_target(sys, target, alpha)
}

/// The recursive halving with an explicitly pinned stopping target;
/// [`build_partition`] derives the target from the instance's `α`.
pub fn build_partition_with_target(sys: &SetSystem, target: f64, alpha: f64) -> PartitionFn {
    let mut labels = vec![0u64; sys.universe()];
    let mut levels = 0u32;
    loop {
        let achieved = max_part_intersection(sys, &labels);
        if (achieved as f64) <= target || levels >= MAX_PARTITION_LEVELS {
            return PartitionFn {
                labels,
                label_space: 1u64 << levels,
                levels,
                achieved_bound: achieved,
                target_bound: target,
                alpha,
            };
        }

        // Group elements by their current part.
        use std::collections::HashMap;
        let mut parts: HashMap<u64, Vec<u32>> = HashMap::new();
        for (u, &c) in labels.iter().enumerate() {
            parts.entry(c).or_default().push(u as u32);
        }
        let mut keys: Vec<u64> = parts.keys().copied().collect();
        keys.sort_unstable();

        for c in keys {
            let members = &parts[&c];
            let mut local_index = HashMap::with_capacity(members.len());
            for (idx, &u) in members.iter().enumerate() {
                local_index.insert(u, idx as u32);
            }
            let restricted: Vec<Vec<u32>> = sys
                .sets()
                .iter()
                .map(|set| {
                    set.iter()
                        .filter_map(|u| local_index.get(u).copied())
                        .collect()
                })
                .collect();
            let sub =
                SetSystem::new(members.len(), restricted).expect("restriction of a valid system");
            let col = colour(&sub);
            for (idx, &u) in members.iter().enumerate() {
                let bit = u64::from(col.chi[idx] > 0);
                labels[u as usize] = 2 * c + bit;
            }
        }
        levels += 1;
    }
}

/// The abstract halving process `x -> floor(x·(1/2 + 1/√x))`, iterated
/// while `x > 4`. Returns the full trajectory starting at `x`.
pub fn halving_process(x: u64) -> Vec<u64> {
    let mut traj = vec![x];
    let mut cur = x;
    while cur > 4 {
        cur = (cur + isqrt(4 * cur)) / 2;
        traj.push(cur);
    }
    traj
}

/// Exact integer square root.
pub fn isqrt(x: u64) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= x) {
        r += 1;
    }
    r
}

//! Data-dependent superimposed codes.
//!
//! Given a set system `{S_i}` over a universe `U` and a parameter `ε`, the
//! construction assigns every element `u` a set `C_u ⊆ [ℓ]` of fixed size
//! `w` such that for every `S_i` and every `u ∉ S_i`, at least `(1-ε)·w`
//! elements of `C_u` survive outside `∪_{v ∈ S_i} C_v`. It combines the
//! partition of [`crate::discrepancy::build_partition`] with hashing into
//! remainders modulo irreducible polynomials over GF(2): collisions of two
//! distinct polynomials of degree at most `t` are limited to `t/d` of the
//! degree-`d` irreducibles by unique factorization.

use std::collections::HashSet;

use crate::discrepancy::{build_partition, SetSystem};
use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// A polynomial over GF(2), coefficients packed in a 64-bit mask
/// (bit `i` = coefficient of `x^i`). Degree at most 63.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2Poly(pub u64);

impl Gf2Poly {
    /// Degree, or -1 for the zero polynomial.
    pub fn degree(self) -> i32 {
        63 - self.0.leading_zeros() as i32
    }
}

/// Carry-less product. The degrees must sum to at most 63.
impl std::ops::Mul for Gf2Poly {
    type Output = Gf2Poly;

    fn mul(self, other: Gf2Poly) -> Gf2Poly {
        let mut acc = 0u64;
        let mut a = self.0;
        let mut shift = 0;
        while a != 0 {
            if a & 1 == 1 {
                acc ^= other.0 << shift;
            }
            a >>= 1;
            shift += 1;
        }
        Gf2Poly(acc)
    }
}

/// Remainder by long division over GF(2).
impl std::ops::Rem for Gf2Poly {
    type Output = Gf2Poly;

    fn rem(self, p: Gf2Poly) -> Gf2Poly {
        assert!(p.0 != 0, "division by the zero polynomial");
        let dp = p.degree();
        let mut q = self.0;
        loop {
            let dq = Gf2Poly(q).degree();
            if dq < dp {
                return Gf2Poly(q);
            }
            q ^= p.0 << (dq - dp);
        }
    }
}

const MAX_TABLE_DEGREE: i32 = 26;

/// All irreducible polynomials of degree `d` over GF(2), in ascending mask
/// order.
///
/// A sieve over the masks of degree at most `d` eliminates every
/// polynomial with a zero remainder modulo a smaller irreducible (i.e. its
/// multiples); the survivors of degree `d` are returned.
pub fn irreducible_polys(d: u32) -> Result<Vec<Gf2Poly>> {
    if !(1..=63).contains(&d) {
        return Err(Error::input(format!("degree {d} out of range [1, 63]")));
    }
    if d as i32 > MAX_TABLE_DEGREE {
        return Err(Error::input(format!(
            "degree {d} exceeds the sieve limit {MAX_TABLE_DEGREE}"
        )));
    }
    let size = 1usize << (d + 1);
    let mut irreducible = vec![true; size];
    let mut out = Vec::new();
    for mask in 2..size as u64 {
        if !irreducible[mask as usize] {
            continue;
        }
        let p = Gf2Poly(mask);
        let dp = p.degree();
        if dp == d as i32 {
            out.push(p);
        }
        // Zero out all multiples p·q with deg(q) >= 1 still inside the
        // table: exactly the polynomials divisible by p.
        if dp < d as i32 {
            let max_q = 1u64 << (d as i32 - dp + 1);
            for q in 2..max_q {
                irreducible[(p * Gf2Poly(q)).0 as usize] = false;
            }
        }
    }
    Ok(out)
}

/// The remainder table `table[q] = q mod p` for every polynomial `q` of
/// degree at most `t`, filled by the ascending recursion
/// `table[q] = table[q - p·x^{deg q - deg p}]`.
pub fn mod_table(p: Gf2Poly, t: u32) -> Result<Vec<u64>> {
    let dp = p.degree();
    if dp < 0 || dp > t as i32 {
        return Err(Error::precondition(format!(
            "deg(p) = {dp} must lie in [0, t = {t}]"
        )));
    }
    if t as i32 > MAX_TABLE_DEGREE {
        return Err(Error::input(format!(
            "table degree {t} exceeds {MAX_TABLE_DEGREE}"
        )));
    }
    let size = 1usize << (t + 1);
    let mut table = vec![0u64; size];
    for q in 1..size as u64 {
        let dq = Gf2Poly(q).degree();
        if dq < dp {
            table[q as usize] = q;
        } else {
            table[q as usize] = table[(q ^ (p.0 << (dq - dp))) as usize];
        }
    }
    Ok(table)
}

/// A superimposed code: one position set per universe element.
#[derive(Clone, Debug)]
pub struct CodeFamily {
    codes: Vec<Vec<u64>>,
    weight: u64,
    length: u64,
    eps: Ratio,
    /// Hash degree `d`; `None` for the degenerate singleton construction.
    degree: Option<u32>,
    labels: Vec<u64>,
    partition_bound: usize,
}

impl CodeFamily {
    /// Sorted code positions of element `u`.
    pub fn code(&self, u: usize) -> &[u64] {
        &self.codes[u]
    }

    pub fn num_elements(&self) -> usize {
        self.codes.len()
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn eps(&self) -> Ratio {
        self.eps
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn partition_bound(&self) -> usize {
        self.partition_bound
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }
}

/// Builds a `({S_i}, (1-ε)·w)`-superimposed code for the system.
///
/// The hash degree is the smallest `d` with
/// `t / #irr(d) <= ε / B`, where `t = floor(log2 |U|)` and `B` is the
/// partition's achieved intersection bound; when no admissible `d <= t`
/// exists the construction degenerates to singleton codes (`w = 1`,
/// `ℓ = |U|`), which satisfy the property outright.
pub fn build_code(sys: &SetSystem, eps: Ratio) -> Result<CodeFamily> {
    build_code_impl(sys, eps, None)
}

/// Same construction with an explicitly chosen hash degree. The guarantee
/// then holds for the effective `ε' = t·B / #irr(d)` instead of the
/// requested one. Meant for exploration and tests of the non-degenerate
/// path on small universes.
pub fn build_code_with_degree(sys: &SetSystem, eps: Ratio, d: u32) -> Result<CodeFamily> {
    build_code_impl(sys, eps, Some(d))
}

fn build_code_impl(sys: &SetSystem, eps: Ratio, forced: Option<u32>) -> Result<CodeFamily> {
    eps.require_proper()?;
    let universe = sys.universe();
    if universe == 0 {
        return Err(Error::input("cannot build a code over an empty universe"));
    }

    let partition = build_partition(sys);
    let bound = partition.achieved_bound.max(1);
    let t = 63 - (universe as u64).leading_zeros(); // floor(log2 |U|)

    let chosen = match forced {
        Some(d) => {
            if d == 0 || d as i32 > MAX_TABLE_DEGREE || d > t {
                return Err(Error::input(format!(
                    "forced degree {d} unusable for t = {t}"
                )));
            }
            Some((d, irreducible_polys(d)?))
        }
        None => {
            let mut found = None;
            for d in 1..=t.min(MAX_TABLE_DEGREE as u32) {
                let irr = irreducible_polys(d)?;
                let w = irr.len() as u128;
                // t/w <= eps/B  <=>  t·B·den <= num·w
                if u128::from(t) * u128::from(bound as u64) * u128::from(eps.den())
                    <= u128::from(eps.num()) * w
                {
                    found = Some((d, irr));
                    break;
                }
            }
            found
        }
    };

    let Some((d, irr)) = chosen else {
        // No admissible degree at this scale: every element keeps a private
        // singleton position, which satisfies any threshold below w = 1.
        let codes = (0..universe).map(|q| vec![q as u64]).collect();
        return Ok(CodeFamily {
            codes,
            weight: 1,
            length: universe as u64,
            eps,
            degree: None,
            labels: partition.labels,
            partition_bound: partition.achieved_bound,
        });
    };

    let w = irr.len() as u64;
    let label_bits = 2 * d;
    let length = u128::from(partition.label_space) << label_bits;
    let length =
        u64::try_from(length).map_err(|_| Error::input("code length overflows 64 bits"))?;

    let mut codes = vec![Vec::with_capacity(w as usize); universe];
    for &p in &irr {
        let table = mod_table(p, t)?;
        let num_p = p.0 & ((1u64 << d) - 1);
        for q in 1..=universe as u64 {
            let rem = table[q as usize];
            let label = partition.labels[(q - 1) as usize];
            let value = rem + (num_p << d) + (label << label_bits);
            codes[(q - 1) as usize].push(value);
        }
    }
    for c in &codes {
        debug_assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    Ok(CodeFamily {
        codes,
        weight: w,
        length,
        eps,
        degree: Some(d),
        labels: partition.labels,
        partition_bound: partition.achieved_bound,
    })
}

/// Result of an exhaustive superimposed-property check.
#[derive(Clone, Debug)]
pub struct CodeReport {
    pub ok: bool,
    /// Minimum of `|C_u - ∪_{v∈S_i} C_v|` over all checked pairs.
    pub min_surviving: u64,
    /// A pair attaining the minimum: (set index, element).
    pub worst: Option<(usize, usize)>,
    pub weight: u64,
    /// The required threshold `(1-ε)·w`.
    pub tau: f64,
}

/// Exhaustively checks `|C_u - ∪_{v ∈ S_i} C_v| >= (1-ε)·w` for every set
/// `S_i` and every element `u ∉ S_i`.
pub fn verify_code(code: &CodeFamily, sys: &SetSystem) -> CodeReport {
    let eps = code.eps();
    let w = code.weight();
    let mut min_surviving = u64::MAX;
    let mut worst = None;

    let mut member = vec![false; sys.universe()];
    let mut union: HashSet<u64> = HashSet::new();
    for (i, set) in sys.sets().iter().enumerate() {
        union.clear();
        for &v in set {
            member[v as usize] = true;
            union.extend(code.code(v as usize).iter().copied());
        }
        for (u, &inside) in member.iter().enumerate() {
            if inside {
                continue;
            }
            let surviving = code
                .code(u)
                .iter()
                .filter(|pos| !union.contains(pos))
                .count() as u64;
            if surviving < min_surviving {
                min_surviving = surviving;
                worst = Some((i, u));
            }
        }
        for &v in set {
            member[v as usize] = false;
        }
    }

    if min_surviving == u64::MAX {
        // Every element belongs to every set: nothing to check.
        min_surviving = w;
    }
    // surviving >= (1-eps)·w  <=>  surviving·den >= (den-num)·w
    let ok = u128::from(min_surviving) * u128::from(eps.den())
        >= u128::from(eps.den() - eps.num()) * u128::from(w);
    CodeReport {
        ok,
        min_surviving,
        worst,
        weight: w,
        tau: (1.0 - eps.as_f64()) * w as f64,
    }
}

//! Deterministic `(1-ε)`-approximate counting via superimposed codes.
//!
//! Every text character is expanded into the indicator vector of its code
//! `C_a` (characters outside the universe use the sentinel's code), and
//! every pattern position into a chunk that is don't-care exactly on
//! `∪_{a ∈ S_b} C_a`. A matching pair contributes no mismatches (code
//! containment); a mismatching pair contributes between `(1-ε)·w` and `w`,
//! so the counted value `h'` satisfies `(1-ε)·w·h <= h' <= w·h`
//! deterministically.
//!
//! Only chunk-aligned offsets of the expanded strings matter, so instead
//! of transforming the full `n·ℓ`-length expansion the counts are
//! assembled from the `ℓ` interleaved subsequences, of which only those
//! carrying code positions do any work; each is correlated sparsely or,
//! when dense enough, through the transform engine.

use std::collections::HashMap;
use std::rc::Rc;

use crate::convolution::{cross_correlate_with, DcString, DcSym, Engine};
use crate::error::{Error, Result};
use crate::model::{
    alignment_count, brute_count, MatchRelation, MismatchTable, Pattern, Side, TableKind, Text,
};
use crate::randomized::heavy_mismatch_sums;
use crate::ratio::Ratio;
use crate::superimposed::{build_code, build_code_with_degree, CodeFamily};

/// A text/pattern pair expanded through a superimposed code.
///
/// The expansion is kept implicit: per text position the universe index of
/// its character, per pattern position the sorted don't-care positions of
/// its chunk (`None` for positions excluded from the coded part, whose
/// chunks are entirely don't-care).
pub struct CodedInstance {
    code: CodeFamily,
    text_index: Vec<usize>,
    chunk_dc: Vec<Option<Rc<Vec<u64>>>>,
}

impl CodedInstance {
    /// Builds the coded instance for the pattern positions selected by
    /// `participating` (all of them when `None`). `forced_degree` pins the
    /// hash degree of the code construction; leave `None` for the
    /// ε-driven choice.
    pub fn build(
        text: &Text,
        pattern: &Pattern,
        rel: &MatchRelation,
        eps: Ratio,
        participating: Option<&[bool]>,
        forced_degree: Option<u32>,
    ) -> Result<Self> {
        let part = |j: usize| participating.is_none_or(|mask| mask[j]);

        let mut distinct: Vec<u32> = pattern
            .symbols()
            .iter()
            .enumerate()
            .filter(|&(j, _)| part(j))
            .map(|(_, &b)| b)
            .collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.is_empty() {
            return Err(Error::input(
                "coded instance needs at least one participating position",
            ));
        }

        // Universe: all matching text characters, then the sentinel.
        let mut universe_chars: Vec<u32> = distinct
            .iter()
            .flat_map(|&b| rel.neighbors_unchecked(b, Side::Pattern).iter().copied())
            .collect();
        universe_chars.sort_unstable();
        universe_chars.dedup();
        let mut index_of: HashMap<u32, usize> = HashMap::with_capacity(universe_chars.len());
        for (i, &a) in universe_chars.iter().enumerate() {
            index_of.insert(a, i);
        }
        let sentinel = universe_chars.len();

        let sets: Vec<Vec<u32>> = distinct
            .iter()
            .map(|&b| {
                rel.neighbors_unchecked(b, Side::Pattern)
                    .iter()
                    .map(|a| index_of[a] as u32)
                    .collect()
            })
            .collect();
        let sys = crate::discrepancy::SetSystem::new(sentinel + 1, sets)?;
        let code = match forced_degree {
            Some(d) => build_code_with_degree(&sys, eps, d)?,
            None => build_code(&sys, eps)?,
        };

        // Per distinct character: the union of its members' codes.
        let mut mask_of: HashMap<u32, Rc<Vec<u64>>> = HashMap::with_capacity(distinct.len());
        for (set_idx, &b) in distinct.iter().enumerate() {
            let members = &sys.sets()[set_idx];
            let mut union: Vec<u64> = members
                .iter()
                .flat_map(|&v| code.code(v as usize).iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            mask_of.insert(b, Rc::new(union));
        }

        let text_index: Vec<usize> = text
            .symbols()
            .iter()
            .map(|a| index_of.get(a).copied().unwrap_or(sentinel))
            .collect();
        let chunk_dc: Vec<Option<Rc<Vec<u64>>>> = pattern
            .symbols()
            .iter()
            .enumerate()
            .map(|(j, b)| {
                if part(j) {
                    Some(Rc::clone(&mask_of[b]))
                } else {
                    None
                }
            })
            .collect();

        Ok(CodedInstance {
            code,
            text_index,
            chunk_dc,
        })
    }

    pub fn weight(&self) -> u64 {
        self.code.weight()
    }

    pub fn length(&self) -> u64 {
        self.code.length()
    }

    pub fn code_family(&self) -> &CodeFamily {
        &self.code
    }

    /// Scaled mismatch counts `h'` at the chunk-aligned offsets: for each
    /// alignment `i`, the don't-care mismatch count between the expanded
    /// pattern and the expanded text starting at chunk `i`.
    pub fn chunk_counts(&self, engine: Engine) -> Vec<u64> {
        let n = self.text_index.len();
        let m = self.chunk_dc.len();
        let alignments = alignment_count(n, m);
        if alignments == 0 {
            return Vec::new();
        }

        let participating = self.chunk_dc.iter().flatten().count() as u64;
        let base = self.weight() * participating;

        // Interleaved subsequences: per code position, the text positions
        // whose code contains it and the pattern positions whose chunk is
        // don't-care there.
        let mut text_strides: HashMap<u64, Vec<u32>> = HashMap::new();
        for (x, &idx) in self.text_index.iter().enumerate() {
            for &r in self.code.code(idx) {
                text_strides.entry(r).or_default().push(x as u32);
            }
        }
        let mut pat_strides: HashMap<u64, Vec<u32>> = HashMap::new();
        for (j, mask) in self.chunk_dc.iter().enumerate() {
            if let Some(mask) = mask {
                for &r in mask.iter() {
                    pat_strides.entry(r).or_default().push(j as u32);
                }
            }
        }

        // h'[i] = w·|participating| - Σ_r |{(x, j): x - j = i, x text-one,
        // j don't-care in stride r}|.
        let mut overlap = vec![0u64; alignments];
        let pair_budget = 8 * (n + m);
        for (r, qs) in &pat_strides {
            let Some(xs) = text_strides.get(r) else {
                continue;
            };
            if xs.len() * qs.len() <= pair_budget {
                for &x in xs {
                    for &q in qs {
                        let x = x as usize;
                        let q = q as usize;
                        if x >= q && x - q < alignments {
                            overlap[x - q] += 1;
                        }
                    }
                }
            } else {
                let mut tv = vec![0u8; n];
                for &x in xs {
                    tv[x as usize] = 1;
                }
                let mut pv = vec![0u8; m];
                for &q in qs {
                    pv[q as usize] = 1;
                }
                for (acc, v) in overlap
                    .iter_mut()
                    .zip(cross_correlate_with(&tv, &pv, engine))
                {
                    *acc += v;
                }
            }
        }

        overlap
            .into_iter()
            .map(|s| {
                debug_assert!(s <= base);
                base - s
            })
            .collect()
    }

    /// Materializes the expanded text and pattern. Intended for
    /// small-instance validation; refuses expansions beyond 10^7 symbols.
    pub fn materialize(&self) -> Result<(DcString, DcString)> {
        let l = self.length();
        let total = (self.text_index.len() as u64 + self.chunk_dc.len() as u64)
            .checked_mul(l)
            .ok_or_else(|| Error::input("expansion overflows"))?;
        if total > 10_000_000 {
            return Err(Error::input(format!(
                "expansion too large to materialize ({total})"
            )));
        }
        let l = l as usize;
        let mut t = vec![DcSym::Zero; self.text_index.len() * l];
        for (x, &idx) in self.text_index.iter().enumerate() {
            for &r in self.code.code(idx) {
                t[x * l + r as usize] = DcSym::One;
            }
        }
        let mut p = vec![DcSym::Zero; self.chunk_dc.len() * l];
        for (j, mask) in self.chunk_dc.iter().enumerate() {
            match mask {
                None => p[j * l..(j + 1) * l].fill(DcSym::Any),
                Some(mask) => {
                    for &r in mask.iter() {
                        p[j * l + r as usize] = DcSym::Any;
                    }
                }
            }
        }
        Ok((DcString::new(t)?, DcString::new(p)?))
    }
}

fn validate(text: &Text, pattern: &Pattern, rel: &MatchRelation) -> Result<()> {
    text.check_alphabet(rel.sigma_text())?;
    pattern.check_alphabet(rel.sigma_pattern())?;
    Ok(())
}

/// Deterministic `(1-ε)`-approximate counting parameterised by the maximum
/// degree `D`. Returns a scaled-band table with
/// `(1-ε)·w·h[i] <= values[i] <= w·h[i]` at every alignment. Falls back to
/// the exact brute-force scan when `D > m` or `ε < 1/m`.
pub fn count_det_d(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
) -> Result<MismatchTable> {
    count_det_d_with(text, pattern, rel, eps, Engine::Auto)
}

pub fn count_det_d_with(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
    engine: Engine,
) -> Result<MismatchTable> {
    validate(text, pattern, rel)?;
    eps.require_proper()?;
    if pattern.len() > text.len() {
        return Ok(MismatchTable::new(Vec::new(), TableKind::Exact));
    }
    let (d, _) = rel.params();
    let m = pattern.len() as u64;
    if d as u64 > m || eps.lt_fraction(1, m) {
        return brute_count(text, pattern, rel);
    }
    let instance = CodedInstance::build(text, pattern, rel, eps, None, None)?;
    let values = instance.chunk_counts(engine);
    Ok(MismatchTable::new(
        values,
        TableKind::ScaledBand {
            weight: instance.weight(),
            eps,
            exact: None,
        },
    ))
}

/// Deterministic `(1-ε)`-approximate counting parameterised by the edge
/// count `S`. Pattern characters with degree at least `ε√S / log2^{5/2} n`
/// are counted exactly through one don't-care instance each; the rest go
/// through the coded expansion with the correspondingly smaller degree
/// bound. The exact part rides along in the returned table, so the
/// certified band is `exact + [light/w, light/((1-ε)w)]`.
pub fn count_det_s(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
) -> Result<MismatchTable> {
    count_det_s_with(text, pattern, rel, eps, Engine::Auto)
}

pub fn count_det_s_with(
    text: &Text,
    pattern: &Pattern,
    rel: &MatchRelation,
    eps: Ratio,
    engine: Engine,
) -> Result<MismatchTable> {
    validate(text, pattern, rel)?;
    eps.require_proper()?;
    if pattern.len() > text.len() {
        return Ok(MismatchTable::new(Vec::new(), TableKind::Exact));
    }
    let m = pattern.len() as u64;
    if eps.lt_fraction(1, m) {
        return brute_count(text, pattern, rel);
    }

    let n = text.len();
    let (_, s) = rel.params();
    let lg = (n.max(2) as f64).log2();
    let raw = eps.as_f64() * (s as f64).sqrt() / lg.powf(2.5);
    let threshold = (raw.ceil().max(1.0) as u64).min(m) as usize;

    let (heavy, _) = heavy_mismatch_sums(text, pattern, rel, threshold)?;
    let mut masked = Vec::with_capacity(pattern.len());
    for &b in pattern.symbols() {
        masked.push(rel.neighbors_unchecked(b, Side::Pattern).len() >= threshold);
    }

    if masked.iter().all(|&h| h) {
        let zeros = vec![0u64; heavy.len()];
        return Ok(MismatchTable::new(
            zeros,
            TableKind::ScaledBand {
                weight: 1,
                eps,
                exact: Some(heavy),
            },
        ));
    }

    let participating: Vec<bool> = masked.iter().map(|&h| !h).collect();
    let instance = CodedInstance::build(text, pattern, rel, eps, Some(&participating), None)?;
    let values = instance.chunk_counts(engine);
    Ok(MismatchTable::new(
        values,
        TableKind::ScaledBand {
            weight: instance.weight(),
            eps,
            exact: Some(heavy),
        },
    ))
}

/// Deterministic exact reporting: the approximate counters at `ε = 1/2`
/// report an alignment iff its scaled count is zero, which happens iff the
/// true count is zero. Picks the counter with the smaller predicted cost.
pub fn report_det(text: &Text, pattern: &Pattern, rel: &MatchRelation) -> Result<Vec<usize>> {
    validate(text, pattern, rel)?;
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    let eps = Ratio::new(1, 2).expect("valid");
    let (d, s) = rel.params();
    let lg = (text.len().max(2) as f64).log2();
    let cost_d = 4.0 * d as f64 * lg.powi(6);
    let cost_s = 2.0 * (s as f64).sqrt() * lg.powf(3.5);
    let table = if cost_d <= cost_s {
        count_det_d(text, pattern, rel, eps)?
    } else {
        count_det_s(text, pattern, rel, eps)?
    };
    Ok(table.zero_alignments())
}

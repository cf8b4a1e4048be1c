//! Interval representation of a matching relationship: per pattern
//! character, the minimal sorted list of disjoint intervals covering its
//! matching text characters.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::relation::MatchRelation;
use super::Pattern;

/// For each defined pattern character `b`, the minimal sorted list of
/// disjoint, non-adjacent closed intervals `[lo, hi]` over the text
/// alphabet whose union is the neighbor set of `b`. Characters may be
/// defined with an empty list (they match nothing); characters without any
/// definition are rejected when queried.
#[derive(Clone, Debug)]
pub struct IntervalRelation {
    sigma_t: u64,
    sigma_p: u64,
    lists: HashMap<u32, Vec<(u32, u32)>>,
}

impl IntervalRelation {
    /// Builds from raw per-character interval lists. Lists are normalized:
    /// sorted, and overlapping or adjacent intervals merged.
    pub fn new(
        sigma_t: u64,
        sigma_p: u64,
        raw: impl IntoIterator<Item = (u32, Vec<(u32, u32)>)>,
    ) -> Result<Self> {
        if sigma_t == 0 || sigma_p == 0 {
            return Err(Error::input("alphabet sizes must be positive"));
        }
        if sigma_t > 1 << 32 || sigma_p > 1 << 32 {
            return Err(Error::input("alphabet sizes are limited to 2^32"));
        }
        let mut lists = HashMap::new();
        for (b, mut intervals) in raw {
            if u64::from(b) >= sigma_p {
                return Err(Error::CharOutOfRange {
                    code: u64::from(b),
                    alphabet: sigma_p,
                });
            }
            for &(lo, hi) in &intervals {
                if lo > hi {
                    return Err(Error::input(format!("empty interval [{lo}, {hi}]")));
                }
                if u64::from(hi) >= sigma_t {
                    return Err(Error::CharOutOfRange {
                        code: u64::from(hi),
                        alphabet: sigma_t,
                    });
                }
            }
            intervals.sort_unstable();
            let mut merged: Vec<(u32, u32)> = Vec::with_capacity(intervals.len());
            for (lo, hi) in intervals {
                match merged.last_mut() {
                    Some(last) if u64::from(lo) <= u64::from(last.1) + 1 => last.1 = last.1.max(hi),
                    _ => merged.push((lo, hi)),
                }
            }
            if lists.insert(b, merged).is_some() {
                return Err(Error::input(format!(
                    "duplicate interval list for character {b}"
                )));
            }
        }
        Ok(IntervalRelation {
            sigma_t,
            sigma_p,
            lists,
        })
    }

    pub fn sigma_text(&self) -> u64 {
        self.sigma_t
    }

    pub fn sigma_pattern(&self) -> u64 {
        self.sigma_p
    }

    /// The normalized interval list of `b`; an error if `b` was never
    /// defined.
    pub fn intervals(&self, b: u32) -> Result<&[(u32, u32)]> {
        if u64::from(b) >= self.sigma_p {
            return Err(Error::CharOutOfRange {
                code: u64::from(b),
                alphabet: self.sigma_p,
            });
        }
        self.lists
            .get(&b)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::input(format!("no interval list for pattern character {b}")))
    }

    /// Characters with a defined list, in unspecified order.
    pub fn defined_chars(&self) -> impl Iterator<Item = u32> + '_ {
        self.lists.keys().copied()
    }

    /// Does text character `a` match pattern character `b`?
    pub fn matches(&self, a: u32, b: u32) -> Result<bool> {
        if u64::from(a) >= self.sigma_t {
            return Err(Error::CharOutOfRange {
                code: u64::from(a),
                alphabet: self.sigma_t,
            });
        }
        self.intervals(b)?;
        Ok(self.matches_unchecked(a, b))
    }

    pub(crate) fn matches_unchecked(&self, a: u32, b: u32) -> bool {
        let Some(list) = self.lists.get(&b) else {
            return false;
        };
        let idx = list.partition_point(|&(lo, _)| lo <= a);
        idx > 0 && a <= list[idx - 1].1
    }

    /// `I`: the total interval count over the pattern positions.
    pub fn param_i(&self, pattern: &Pattern) -> Result<u64> {
        let mut total = 0u64;
        for &b in pattern.symbols() {
            total += self.intervals(b)?.len() as u64;
        }
        Ok(total)
    }

    /// Materializes the equivalent edge-list relation. The cost is the
    /// total width of all intervals; refuses universes beyond 10^8 edges.
    pub fn to_match_relation(&self) -> Result<MatchRelation> {
        let mut width = 0u64;
        for list in self.lists.values() {
            for &(lo, hi) in list {
                width += u64::from(hi) - u64::from(lo) + 1;
            }
        }
        if width > 100_000_000 {
            return Err(Error::input(format!(
                "interval relation too wide to materialize ({width} edges)"
            )));
        }
        let mut edges = Vec::with_capacity(width as usize);
        let mut chars: Vec<u32> = self.lists.keys().copied().collect();
        chars.sort_unstable();
        for b in chars {
            for &(lo, hi) in &self.lists[&b] {
                for a in lo..=hi {
                    edges.push((a, b));
                }
            }
        }
        MatchRelation::from_edges(self.sigma_t, self.sigma_p, edges)
    }
}

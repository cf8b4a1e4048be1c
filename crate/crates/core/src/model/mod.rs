//! Texts, patterns, the matching relationship with its constant-time
//! oracles, and the quadratic brute-force oracle every other algorithm is
//! verified against.

mod ranges;
mod relation;
mod table;

pub use ranges::IntervalRelation;
pub use relation::{MatchRelation, Side};
pub use table::{MismatchTable, TableKind};

use crate::error::{Error, Result};

/// A text: a non-empty sequence of integer character codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text(Vec<u32>);

/// A pattern: a non-empty sequence of integer character codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern(Vec<u32>);

macro_rules! symbol_string {
    ($ty:ident, $what:literal) => {
        impl $ty {
            pub fn new(symbols: Vec<u32>) -> Result<Self> {
                if symbols.is_empty() {
                    return Err(Error::input(concat!($what, " must be non-empty")));
                }
                Ok($ty(symbols))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn symbols(&self) -> &[u32] {
                &self.0
            }

            /// Checks that every code fits the declared alphabet.
            pub fn check_alphabet(&self, alphabet: u64) -> Result<()> {
                for &c in &self.0 {
                    if u64::from(c) >= alphabet {
                        return Err(Error::CharOutOfRange {
                            code: u64::from(c),
                            alphabet,
                        });
                    }
                }
                Ok(())
            }
        }
    };
}

symbol_string!(Text, "text");
symbol_string!(Pattern, "pattern");

/// Number of alignments of an `m`-length pattern against an `n`-length
/// text; zero when the pattern is longer.
pub fn alignment_count(n: usize, m: usize) -> usize {
    (n + 1).saturating_sub(m)
}

/// Exact mismatch counts per alignment by direct character-by-character
/// comparison. The oracle for everything else. O(nm).
pub fn brute_count(text: &Text, pattern: &Pattern, rel: &MatchRelation) -> Result<MismatchTable> {
    text.check_alphabet(rel.sigma_text())?;
    pattern.check_alphabet(rel.sigma_pattern())?;
    let t = text.symbols();
    let p = pattern.symbols();
    let values = (0..alignment_count(t.len(), p.len()))
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, &b)| !rel.edge_unchecked(t[i + j], b))
                .count() as u64
        })
        .collect();
    Ok(MismatchTable::new(values, TableKind::Exact))
}

/// Alignments (1-based) where every position matches.
pub fn brute_report(text: &Text, pattern: &Pattern, rel: &MatchRelation) -> Result<Vec<usize>> {
    Ok(brute_count(text, pattern, rel)?.zero_alignments())
}

/// Exact mismatch counts against an interval representation of the
/// matching relationship. O(nm log of the interval count).
pub fn brute_count_intervals(
    text: &Text,
    pattern: &Pattern,
    ir: &IntervalRelation,
) -> Result<MismatchTable> {
    text.check_alphabet(ir.sigma_text())?;
    pattern.check_alphabet(ir.sigma_pattern())?;
    for &b in pattern.symbols() {
        ir.intervals(b)?;
    }
    let t = text.symbols();
    let p = pattern.symbols();
    let values = (0..alignment_count(t.len(), p.len()))
        .map(|i| {
            p.iter()
                .enumerate()
                .filter(|&(j, &b)| !ir.matches_unchecked(t[i + j], b))
                .count() as u64
        })
        .collect();
    Ok(MismatchTable::new(values, TableKind::Exact))
}

pub fn brute_report_intervals(
    text: &Text,
    pattern: &Pattern,
    ir: &IntervalRelation,
) -> Result<Vec<usize>> {
    Ok(brute_count_intervals(text, pattern, ir)?.zero_alignments())
}

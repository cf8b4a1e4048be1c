//! Instance generators: random regimes and the adversarial constructions
//! used as worst-case stress fixtures.

use gpm_core::model::{IntervalRelation, MatchRelation, Pattern, Text};
use gpm_core::rng::SplitMix64;
use gpm_core::{Error, Result};

use crate::Instance;

/// How the matching relationship of a random instance is drawn.
#[derive(Clone, Copy, Debug)]
pub enum Regime {
    /// Each pair is an edge independently with this probability.
    Density(f64),
    /// Superimpose this many random partial matchings: both-side degrees
    /// stay at or below the cap.
    DegreeCap(u64),
    /// Each pattern character matches this many disjoint, non-adjacent
    /// intervals of text characters.
    IntervalsPerChar(u32),
}

fn random_symbols(len: usize, sigma: u64, rng: &mut SplitMix64) -> Vec<u32> {
    (0..len).map(|_| rng.below(sigma) as u32).collect()
}

/// Reproducible random instance. The same arguments and seed produce the
/// same instance, byte for byte.
pub fn gen_random(
    n: usize,
    m: usize,
    sigma_t: u64,
    sigma_p: u64,
    regime: Regime,
    seed: u64,
) -> Result<Instance> {
    if n == 0 || m == 0 || sigma_t == 0 || sigma_p == 0 {
        return Err(Error::input("sizes must be positive"));
    }
    let mut rng = SplitMix64::new(seed);
    let text = Text::new(random_symbols(n, sigma_t, &mut rng))?;
    let pattern = Pattern::new(random_symbols(m, sigma_p, &mut rng))?;

    match regime {
        Regime::Density(p) => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::input(format!("density {p} outside (0, 1]")));
            }
            if sigma_t.saturating_mul(sigma_p) > 100_000_000 {
                return Err(Error::input(
                    "alphabet product too large for the density regime",
                ));
            }
            let mut edges = Vec::new();
            for a in 0..sigma_t as u32 {
                for b in 0..sigma_p as u32 {
                    if rng.unit_f64() < p {
                        edges.push((a, b));
                    }
                }
            }
            let rel = MatchRelation::from_edges(sigma_t, sigma_p, edges)?;
            Instance::new(text, pattern, Some(rel), None)
        }
        Regime::DegreeCap(cap) => {
            if cap == 0 {
                return Err(Error::input("degree cap must be at least 1"));
            }
            let pairs = sigma_t.min(sigma_p) as usize;
            let mut edges = Vec::new();
            let mut left: Vec<u32> = (0..sigma_t as u32).collect();
            let mut right: Vec<u32> = (0..sigma_p as u32).collect();
            for _ in 0..cap {
                rng.shuffle(&mut left);
                rng.shuffle(&mut right);
                for i in 0..pairs {
                    edges.push((left[i], right[i]));
                }
            }
            let rel = MatchRelation::from_edges(sigma_t, sigma_p, edges)?;
            Instance::new(text, pattern, Some(rel), None)
        }
        Regime::IntervalsPerChar(count) => {
            if count == 0 {
                return Err(Error::input("intervals per character must be at least 1"));
            }
            let block = sigma_t / u64::from(count);
            if block < 4 {
                return Err(Error::input(format!(
                    "text alphabet of {sigma_t} too small for {count} disjoint intervals"
                )));
            }
            // One interval inside each of `count` blocks, keeping a gap at
            // every block boundary so the intervals never merge.
            let lists: Vec<(u32, Vec<(u32, u32)>)> = (0..sigma_p as u32)
                .map(|b| {
                    let intervals = (0..u64::from(count))
                        .map(|blk| {
                            let start = blk * block;
                            let span = block - 2;
                            let lo = start + rng.below(span);
                            let hi = lo + rng.below(start + span - lo + 1);
                            (lo as u32, hi as u32)
                        })
                        .collect();
                    (b, intervals)
                })
                .collect();
            let ir = IntervalRelation::new(sigma_t, sigma_p, lists)?;
            let rel = ir.to_match_relation().ok();
            Instance::new(text, pattern, rel, Some(ir))
        }
    }
}

/// The periodic worst-case fixture: text `0 1 .. n/2-1` twice, pattern
/// `0 1 .. m-1`, and a relation assembled from quadruples of related cells
/// so that every vertex degree is uniform (the degree oracle reveals
/// nothing). Every text/pattern alignment reads one "diagonal" of the
/// relation; every diagonal is broken by one withheld edge, except that
/// `grant` leaves a single diagonal intact, yielding exactly one
/// occurrence (at alignment `n/2`).
pub fn gen_adversarial_diagonal(n: usize, m: usize, grant: bool) -> Result<Instance> {
    if !n.is_multiple_of(2) || n < 2 * m {
        return Err(Error::input(
            "the diagonal fixture needs even n with n >= 2m",
        ));
    }
    if m < 2 {
        return Err(Error::input("the diagonal fixture needs m >= 2"));
    }
    let half = (n / 2) as u32;
    let m32 = m as u32;

    let text = Text::new((0..n as u32).map(|x| x % half).collect())?;
    let pattern = Pattern::new((0..m32).collect())?;

    let granted = half - 1; // its second alignment lands beyond n-m+1
    let mut edges = Vec::with_capacity(n * m);
    for a in 0..half {
        for b in 0..m32 {
            let diagonal = (a + half - b % half) % half;
            let hole = !(grant && diagonal == granted) && b == diagonal % m32;
            if hole {
                // Withhold the diagonal cell; the mirrored pair is granted.
                edges.push((half + a, b));
                edges.push((a, m32 + b));
            } else {
                edges.push((a, b));
                edges.push((half + a, m32 + b));
            }
        }
    }
    let rel = MatchRelation::from_edges(n as u64, 2 * m as u64, edges)?;
    Instance::new(text, pattern, Some(rel), None)
}

/// A Boolean matrix product encoded as a matching instance.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub instance: Instance,
    /// `(row of A, column of B, alignment)`: aligning row block `i` of the
    /// text with column block `j` of the pattern happens at this 1-based
    /// alignment, and it is a non-occurrence iff `(A·B)[i, j] = 1`.
    pub designated: Vec<(usize, usize, usize)>,
}

/// Encodes two 0/1 matrices (`A` of size `x×y`, `B` of size `y×z`, with
/// `y <= z`) as a matching instance. Matrix entries become column/row
/// indices or don't-cares; every concrete character matches everything but
/// itself, and the don't-care character (0) matches everything.
pub fn gen_matrix_reduction(a: &[Vec<u8>], b: &[Vec<u8>]) -> Result<ReductionInstance> {
    let x = a.len();
    let y = b.len();
    let z = b.first().map_or(0, Vec::len);
    if x == 0 || y == 0 || z == 0 {
        return Err(Error::input("matrices must be non-empty"));
    }
    if a.iter().any(|row| row.len() != y) || b.iter().any(|row| row.len() != z) {
        return Err(Error::input(
            "matrix dimensions are inconsistent (need A: x×y, B: y×z)",
        ));
    }
    if a.iter().chain(b.iter()).flatten().any(|&v| v > 1) {
        return Err(Error::input("matrix entries must be 0 or 1"));
    }
    if y > z {
        return Err(Error::input("the reduction needs y <= z"));
    }

    let dc = 0u32;
    // Text: ?^{z^2} A_1 ?^{z-y+1} A_2 ... A_x ?^{z^2}, with A[i][k] encoded
    // as column index k+1 when set.
    let mut text = vec![dc; z * z];
    for (i, row) in a.iter().enumerate() {
        if i > 0 {
            text.extend(std::iter::repeat_n(dc, z - y + 1));
        }
        text.extend(
            row.iter()
                .enumerate()
                .map(|(k, &v)| if v == 1 { k as u32 + 1 } else { dc }),
        );
    }
    text.extend(std::iter::repeat_n(dc, z * z));

    // Pattern: B_1 ?^{z-y} B_2 ... B_z over the columns of B, with B[k][j]
    // encoded as row index k+1 when set.
    let mut pattern = Vec::new();
    for j in 0..z {
        if j > 0 {
            pattern.extend(std::iter::repeat_n(dc, z - y));
        }
        pattern.extend(
            b.iter()
                .enumerate()
                .map(|(k, row)| if row[j] == 1 { k as u32 + 1 } else { dc }),
        );
    }

    let sigma = y as u64 + 1;
    let rel = MatchRelation::from_predicate(sigma, sigma, |p, q| p == 0 || q == 0 || p != q)?;

    let n = text.len();
    let m = pattern.len();
    let mut designated = Vec::with_capacity(x * z);
    for i in 1..=x {
        // 1-based starts of A_i in the text and B_j in the pattern.
        let s_i = z * z + (i - 1) * (z + 1) + 1;
        for j in 1..=z {
            let q_j = (j - 1) * z + 1;
            let alignment = s_i + 1 - q_j;
            debug_assert!(
                alignment >= 1 && alignment <= n - m + 1,
                "designated alignment out of range"
            );
            designated.push((i, j, alignment));
        }
    }

    Ok(ReductionInstance {
        instance: Instance::new(Text::new(text)?, Pattern::new(pattern)?, Some(rel), None)?,
        designated,
    })
}

/// Direct Boolean product, the oracle for the reduction fixture.
pub fn boolean_product(a: &[Vec<u8>], b: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let x = a.len();
    let y = b.len();
    let z = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![0u8; z]; x];
    for i in 0..x {
        for j in 0..z {
            c[i][j] = u8::from((0..y).any(|k| a[i][k] == 1 && b[k][j] == 1));
        }
    }
    c
}

/// Parses a 0/1 matrix: one row per line, entries separated by whitespace.
pub fn parse_matrix(input: &str) -> Result<Vec<Vec<u8>>> {
    let mut rows = Vec::new();
    for line in input.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<u8> = line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::parse(format!("matrix entry {other:?} is not 0/1"))),
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse("empty matrix"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gpm_core::model::brute_report;

    #[test]
    fn density_one_is_complete() {
        let inst = gen_random(10, 3, 4, 5, Regime::Density(1.0), 7).unwrap();
        let rel = inst.relation.as_ref().unwrap();
        assert_eq!(rel.params(), (5, 20));
    }

    #[test]
    fn degree_cap_one_is_partial_matching() {
        let inst = gen_random(10, 3, 6, 6, Regime::DegreeCap(1), 7).unwrap();
        let rel = inst.relation.as_ref().unwrap();
        assert_eq!(rel.params().0, 1);
    }

    #[test]
    fn same_seed_same_instance() {
        let a = gen_random(20, 4, 8, 8, Regime::Density(0.3), 99).unwrap();
        let b = gen_random(20, 4, 8, 8, Regime::Density(0.3), 99).unwrap();
        assert_eq!(a.text.symbols(), b.text.symbols());
        assert_eq!(a.pattern.symbols(), b.pattern.symbols());
        assert_eq!(
            a.relation.as_ref().unwrap().edge_count(),
            b.relation.as_ref().unwrap().edge_count()
        );
    }

    #[test]
    fn intervals_regime_reports_i() {
        let inst = gen_random(30, 5, 32, 8, Regime::IntervalsPerChar(2), 3).unwrap();
        let (_, _, i) = inst.achieved_params();
        assert_eq!(i, Some(10)); // 2 intervals × 5 positions
    }

    #[test]
    fn diagonal_grant_semantics() {
        for (n, m) in [(16usize, 4usize), (24, 5), (40, 7)] {
            let denied = gen_adversarial_diagonal(n, m, false).unwrap();
            let rel = denied.relation.as_ref().unwrap();
            let report = brute_report(&denied.text, &denied.pattern, rel).unwrap();
            assert!(report.is_empty(), "n={n} m={m}: {report:?}");
            // Total edges and the diagonal-quadrant share.
            assert_eq!(rel.edge_count(), n * m);
            let left_quadrant = rel.edges().filter(|&(_, b)| (b as usize) < m).count();
            assert_eq!(left_quadrant, n * m / 2);

            let granted = gen_adversarial_diagonal(n, m, true).unwrap();
            let report = brute_report(
                &granted.text,
                &granted.pattern,
                granted.relation.as_ref().unwrap(),
            )
            .unwrap();
            assert_eq!(report, vec![n / 2], "n={n} m={m}");
        }
    }

    #[test]
    fn diagonal_degrees_uniform() {
        let inst = gen_adversarial_diagonal(20, 4, false).unwrap();
        let rel = inst.relation.as_ref().unwrap();
        use gpm_core::model::Side;
        let d0 = rel.degree(0, Side::Text).unwrap();
        for a in 0..20 {
            assert_eq!(rel.degree(a, Side::Text).unwrap(), d0);
        }
        let p0 = rel.degree(0, Side::Pattern).unwrap();
        for b in 0..8 {
            assert_eq!(rel.degree(b, Side::Pattern).unwrap(), p0);
        }
    }

    #[test]
    fn reduction_example_matrices() {
        // A and B from the worked example; the expected product is
        // ((1,1,0),(1,1,1),(0,1,0)).
        let a = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]];
        let b = vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 0]];
        let product = boolean_product(&a, &b);
        assert_eq!(product, vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 0]]);

        let red = gen_matrix_reduction(&a, &b).unwrap();
        let rel = red.instance.relation.as_ref().unwrap();
        let occurrences = brute_report(&red.instance.text, &red.instance.pattern, rel).unwrap();
        for &(i, j, alignment) in &red.designated {
            let occurs = occurrences.contains(&alignment);
            assert_eq!(
                product[i - 1][j - 1] == 0,
                occurs,
                "cell ({i}, {j}) at alignment {alignment}"
            );
        }
    }

    #[test]
    fn reduction_transform_shape() {
        // The worked example's transformed first row of A is (?, ?, 3).
        let a = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]];
        let b = vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 1, 0]];
        let red = gen_matrix_reduction(&a, &b).unwrap();
        let z = 3;
        let text = red.instance.text.symbols();
        assert_eq!(&text[z * z..z * z + 3], &[0, 0, 3]);
        let pattern = red.instance.pattern.symbols();
        assert_eq!(&pattern[0..3], &[1, 0, 3]);
    }

    #[test]
    fn parse_matrix_rejects_junk() {
        assert!(parse_matrix("1 0\n0 2\n").is_err());
        assert!(parse_matrix("").is_err());
        assert_eq!(
            parse_matrix("1 0\n0 1\n").unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
    }
}

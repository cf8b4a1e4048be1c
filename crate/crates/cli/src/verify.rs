//! Contract verification against the brute-force oracle.
//!
//! Exact algorithms must agree entrywise; deterministic counters must keep
//! the true count inside the certified band; randomized reporters must
//! never drop an occurrence (false positives are counted and reported);
//! randomized counters must never overestimate (coverage of the `(1-ε)`
//! floor is counted and reported).

use gpm_core::model::{brute_count, MismatchTable, TableKind};
use gpm_core::randomized::{count_approx, report_d, report_s, MonteCarloConfig};
use gpm_core::{Error, Ratio, Result};

use crate::run::{run_count, Algo, RunOpts};
use crate::{par_map, Instance};

/// Outcome of a verification run: a verdict plus human-readable detail
/// lines (statistics or a counterexample).
#[derive(Clone, Debug)]
pub struct Verdict {
    pub pass: bool,
    pub lines: Vec<String>,
}

impl Verdict {
    fn pass(lines: Vec<String>) -> Self {
        Verdict { pass: true, lines }
    }

    fn fail(lines: Vec<String>) -> Self {
        Verdict { pass: false, lines }
    }
}

fn band_violation(table: &MismatchTable, truth: &[u64]) -> Option<String> {
    let TableKind::ScaledBand { weight, eps, exact } = table.kind() else {
        return Some("expected a scaled-band table".into());
    };
    let w = u128::from(*weight);
    let num = u128::from(eps.num());
    let den = u128::from(eps.den());
    for (idx, &hp) in table.values().iter().enumerate() {
        let heavy = exact.as_ref().map_or(0, |e| e[idx]);
        if heavy > truth[idx] {
            return Some(format!(
                "alignment {}: exact part {} exceeds true count {}",
                idx + 1,
                heavy,
                truth[idx]
            ));
        }
        let light = u128::from(truth[idx] - heavy);
        let hp = u128::from(hp);
        // (1-eps)·w·h <= h' <= w·h
        if (den - num) * w * light > den * hp || hp > w * light {
            return Some(format!(
                "alignment {}: h' = {hp} outside [(1-eps)wh, wh] for true {light} (w = {weight})",
                idx + 1
            ));
        }
    }
    None
}

/// Verifies `algo` on one instance. Randomized algorithms run `runs` times
/// with seeds derived from `opts.seed`; `threads` workers split the runs.
pub fn verify(
    instance: &Instance,
    algo: Algo,
    opts: &RunOpts,
    runs: usize,
    threads: usize,
) -> Result<Verdict> {
    let rel = instance.relation()?;
    let truth = brute_count(&instance.text, &instance.pattern, &rel)?;
    let truth_report: Vec<usize> = truth.zero_alignments();

    match algo {
        Algo::Brute | Algo::Interval | Algo::Threshold => {
            let got = run_count(instance, algo, opts)?;
            if got.values() == truth.values() {
                Ok(Verdict::pass(vec![format!(
                    "{}: exact equality on {} alignments",
                    algo.name(),
                    truth.len()
                )]))
            } else {
                let idx = got
                    .values()
                    .iter()
                    .zip(truth.values())
                    .position(|(a, b)| a != b)
                    .expect("tables differ");
                Ok(Verdict::fail(vec![format!(
                    "{}: mismatch at alignment {}: got {}, brute {}",
                    algo.name(),
                    idx + 1,
                    got.values()[idx],
                    truth.values()[idx]
                )]))
            }
        }
        Algo::DetD | Algo::DetS => {
            let eps = opts.eps.unwrap_or(Ratio::new(1, 2).expect("valid"));
            let mut with_eps = *opts;
            with_eps.eps = Some(eps);
            let got = run_count(instance, algo, &with_eps)?;
            if let TableKind::Exact = got.kind() {
                // The counter fell back to the exact path.
                return Ok(if got.values() == truth.values() {
                    Verdict::pass(vec![format!(
                        "{}: exact fallback, equality holds",
                        algo.name()
                    )])
                } else {
                    Verdict::fail(vec![format!(
                        "{}: exact fallback differs from brute",
                        algo.name()
                    )])
                });
            }
            match band_violation(&got, truth.values()) {
                None => {
                    let report = got.zero_alignments();
                    if report == truth_report {
                        Ok(Verdict::pass(vec![format!(
                            "{}: band holds at every alignment; report matches brute",
                            algo.name()
                        )]))
                    } else {
                        Ok(Verdict::fail(vec![format!(
                            "{}: band holds but zero set differs from brute",
                            algo.name()
                        )]))
                    }
                }
                Some(msg) => Ok(Verdict::fail(vec![format!("{}: {msg}", algo.name())])),
            }
        }
        Algo::RandD | Algo::RandS => {
            let seeds: Vec<u64> = (0..runs as u64)
                .map(|r| opts.seed.wrapping_add(r))
                .collect();
            let results = par_map(seeds, threads, |seed| {
                let cfg = MonteCarloConfig::new(opts.c, seed).expect("c validated");
                match algo {
                    Algo::RandD => report_d(&instance.text, &instance.pattern, &rel, &cfg),
                    _ => report_s(&instance.text, &instance.pattern, &rel, &cfg),
                }
            });
            let mut false_positive_runs = 0usize;
            for (r, res) in results.into_iter().enumerate() {
                let got = res?;
                for want in &truth_report {
                    if !got.contains(want) {
                        return Ok(Verdict::fail(vec![format!(
                            "{}: run {} (seed {}) dropped occurrence {}",
                            algo.name(),
                            r,
                            opts.seed.wrapping_add(r as u64),
                            want
                        )]));
                    }
                }
                if got != truth_report {
                    false_positive_runs += 1;
                }
            }
            Ok(Verdict::pass(vec![
                format!("{}: superset of brute on {} runs", algo.name(), runs),
                format!(
                    "false-positive event rate: {false_positive_runs}/{runs} (expected <= {:.2e})",
                    (instance.text.len() as f64).powi(-(opts.c as i32))
                ),
            ]))
        }
        Algo::RandCount => {
            let eps = opts
                .eps
                .ok_or_else(|| Error::input("rand-count verify needs --eps"))?;
            let seeds: Vec<u64> = (0..runs as u64)
                .map(|r| opts.seed.wrapping_add(r))
                .collect();
            let results = par_map(seeds, threads, |seed| {
                let cfg = MonteCarloConfig::new(opts.c, seed).expect("c validated");
                count_approx(
                    &instance.text,
                    &instance.pattern,
                    &rel,
                    eps,
                    &cfg,
                    opts.strategy,
                )
            });
            let mut covered_runs = 0usize;
            for (r, res) in results.into_iter().enumerate() {
                let got = res?;
                let mut covered = true;
                for (idx, (&e, &h)) in got.values().iter().zip(truth.values()).enumerate() {
                    if e > h {
                        return Ok(Verdict::fail(vec![format!(
                            "rand-count: run {r} overestimates alignment {}: {e} > {h}",
                            idx + 1
                        )]));
                    }
                    // e >= (1-eps)·h <=> e·den >= (den-num)·h
                    if u128::from(e) * u128::from(eps.den())
                        < u128::from(eps.den() - eps.num()) * u128::from(h)
                    {
                        covered = false;
                    }
                }
                if covered {
                    covered_runs += 1;
                }
            }
            Ok(Verdict::pass(vec![
                format!("rand-count: never overestimates on {runs} runs"),
                format!("(1-eps) coverage: {covered_runs}/{runs} runs met the floor everywhere"),
            ]))
        }
    }
}

/// Checks an externally supplied count table (lines `i count`) against the
/// brute-force oracle; the negative control for the verifier itself.
pub fn verify_table(instance: &Instance, table_text: &str) -> Result<Verdict> {
    let rel = instance.relation()?;
    let truth = brute_count(&instance.text, &instance.pattern, &rel)?;
    let mut values = vec![None; truth.len()];
    for (lineno, line) in table_text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 2 {
            return Err(Error::parse(format!(
                "table line {}: need `i count`",
                lineno + 1
            )));
        }
        let i: usize = toks[0]
            .parse()
            .map_err(|_| Error::parse(format!("table line {}: bad index", lineno + 1)))?;
        let v: u64 = toks[1]
            .parse()
            .map_err(|_| Error::parse(format!("table line {}: bad count", lineno + 1)))?;
        if i == 0 || i > values.len() {
            return Err(Error::parse(format!(
                "table line {}: alignment {i} out of range",
                lineno + 1
            )));
        }
        values[i - 1] = Some(v);
    }
    for (idx, slot) in values.iter().enumerate() {
        let got = slot.ok_or_else(|| Error::parse(format!("alignment {} missing", idx + 1)))?;
        if got != truth.values()[idx] {
            return Ok(Verdict::fail(vec![format!(
                "table disagrees with brute at alignment {}: table {}, brute {}",
                idx + 1,
                got,
                truth.values()[idx]
            )]));
        }
    }
    Ok(Verdict::pass(vec![format!(
        "table matches brute on {} alignments",
        truth.len()
    )]))
}

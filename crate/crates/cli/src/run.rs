//! Algorithm selection and execution for the `match` and `count`
//! subcommands.

use std::str::FromStr;

use gpm_core::deterministic::{count_det_d, count_det_s, report_det};
use gpm_core::intervals::{count_exact_i, threshold_count};
use gpm_core::model::{brute_count, brute_report, MismatchTable};
use gpm_core::randomized::{count_approx, report_d, report_s, CountStrategy, MonteCarloConfig};
use gpm_core::{Error, Ratio, Result};

use crate::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Brute,
    RandD,
    RandS,
    RandCount,
    DetD,
    DetS,
    Interval,
    Threshold,
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "brute" => Algo::Brute,
            "rand-d" => Algo::RandD,
            "rand-s" => Algo::RandS,
            "rand-count" => Algo::RandCount,
            "det-d" => Algo::DetD,
            "det-s" => Algo::DetS,
            "interval" => Algo::Interval,
            "threshold" => Algo::Threshold,
            other => return Err(Error::input(format!("unknown algorithm {other:?}"))),
        })
    }
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::RandD => "rand-d",
            Algo::RandS => "rand-s",
            Algo::RandCount => "rand-count",
            Algo::DetD => "det-d",
            Algo::DetS => "det-s",
            Algo::Interval => "interval",
            Algo::Threshold => "threshold",
        }
    }
}

/// Flags shared by the execution subcommands.
#[derive(Clone, Copy, Debug)]
pub struct RunOpts {
    pub eps: Option<Ratio>,
    pub c: u32,
    pub seed: u64,
    pub delta: Option<u64>,
    pub strategy: CountStrategy,
}

impl Default for RunOpts {
    fn default() -> Self {
        RunOpts {
            eps: None,
            c: 2,
            seed: 1,
            delta: None,
            strategy: CountStrategy::Auto,
        }
    }
}

fn need_eps(opts: &RunOpts) -> Result<Ratio> {
    opts.eps
        .ok_or_else(|| Error::input("this algorithm needs --eps"))
}

fn need_delta(opts: &RunOpts) -> Result<u64> {
    opts.delta
        .ok_or_else(|| Error::input("threshold matching needs --delta"))
}

/// Reporting run: the sorted occurrence list (1-based).
pub fn run_match(instance: &Instance, algo: Algo, opts: &RunOpts) -> Result<Vec<usize>> {
    let text = &instance.text;
    let pattern = &instance.pattern;
    match algo {
        Algo::Brute => brute_report(text, pattern, instance.relation()?.as_ref()),
        Algo::RandD => {
            let cfg = MonteCarloConfig::new(opts.c, opts.seed)?;
            report_d(text, pattern, instance.relation()?.as_ref(), &cfg)
        }
        Algo::RandS => {
            let cfg = MonteCarloConfig::new(opts.c, opts.seed)?;
            report_s(text, pattern, instance.relation()?.as_ref(), &cfg)
        }
        Algo::DetD => {
            let eps = opts.eps.unwrap_or(Ratio::new(1, 2).expect("valid"));
            Ok(count_det_d(text, pattern, instance.relation()?.as_ref(), eps)?.zero_alignments())
        }
        Algo::DetS => {
            let eps = opts.eps.unwrap_or(Ratio::new(1, 2).expect("valid"));
            Ok(count_det_s(text, pattern, instance.relation()?.as_ref(), eps)?.zero_alignments())
        }
        Algo::Interval => {
            Ok(count_exact_i(text, pattern, instance.intervals()?.as_ref())?.zero_alignments())
        }
        Algo::Threshold => Ok(threshold_count(text, pattern, need_delta(opts)?)?.zero_alignments()),
        Algo::RandCount => Err(Error::input(
            "rand-count is a counting algorithm; use `count`",
        )),
    }
}

/// Counting run: the per-alignment mismatch table.
pub fn run_count(instance: &Instance, algo: Algo, opts: &RunOpts) -> Result<MismatchTable> {
    let text = &instance.text;
    let pattern = &instance.pattern;
    match algo {
        Algo::Brute => brute_count(text, pattern, instance.relation()?.as_ref()),
        Algo::RandCount => {
            let cfg = MonteCarloConfig::new(opts.c, opts.seed)?;
            count_approx(
                text,
                pattern,
                instance.relation()?.as_ref(),
                need_eps(opts)?,
                &cfg,
                opts.strategy,
            )
        }
        Algo::DetD => count_det_d(
            text,
            pattern,
            instance.relation()?.as_ref(),
            need_eps(opts)?,
        ),
        Algo::DetS => count_det_s(
            text,
            pattern,
            instance.relation()?.as_ref(),
            need_eps(opts)?,
        ),
        Algo::Interval => count_exact_i(text, pattern, instance.intervals()?.as_ref()),
        Algo::Threshold => threshold_count(text, pattern, need_delta(opts)?),
        Algo::RandD | Algo::RandS => Err(Error::input(format!(
            "{} is a reporting algorithm; use `match`",
            algo.name()
        ))),
    }
}

/// The reporting result implied by [`report_det`]'s automatic choice;
/// exposed for symmetry with the library.
pub fn run_match_det_auto(instance: &Instance) -> Result<Vec<usize>> {
    report_det(
        &instance.text,
        &instance.pattern,
        instance.relation()?.as_ref(),
    )
}

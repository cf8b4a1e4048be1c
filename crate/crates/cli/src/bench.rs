//! Timing sweeps with CSV output.

use std::fmt::Write as _;
use std::time::Instant;

use gpm_core::Result;

use crate::gen::{gen_random, Regime};
use crate::run::{run_count, run_match, Algo, RunOpts};

#[derive(Clone, Debug)]
pub struct BenchSpec {
    pub algos: Vec<Algo>,
    pub ns: Vec<usize>,
    pub ms: Vec<usize>,
    pub sigma: u64,
    pub regime: Regime,
    pub reps: usize,
    pub seed: u64,
    pub opts: RunOpts,
    pub threads: usize,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN timings"));
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

/// Runs the sweep and returns CSV: one row per (algorithm, n, m) cell with
/// the median wall-clock milliseconds over the repetitions.
pub fn bench(spec: &BenchSpec) -> Result<String> {
    let mut csv = String::from("algo,n,m,D,S,I,eps,threads,median_ms\n");
    for &n in &spec.ns {
        for &m in &spec.ms {
            if m > n {
                continue;
            }
            let instance = gen_random(n, m, spec.sigma, spec.sigma, spec.regime, spec.seed)?;
            let (d, s, i) = instance.achieved_params();
            for &algo in &spec.algos {
                let mut times = Vec::with_capacity(spec.reps);
                for _ in 0..spec.reps.max(1) {
                    let start = Instant::now();
                    match algo {
                        Algo::RandD | Algo::RandS => {
                            run_match(&instance, algo, &spec.opts)?;
                        }
                        _ => {
                            run_count(&instance, algo, &spec.opts)?;
                        }
                    }
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                }
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{:.3}",
                    algo.name(),
                    n,
                    m,
                    d,
                    s,
                    i.map_or(String::from(""), |v| v.to_string()),
                    spec.opts.eps.map_or(String::from(""), |e| e.to_string()),
                    spec.threads,
                    median(times)
                );
            }
        }
    }
    Ok(csv)
}

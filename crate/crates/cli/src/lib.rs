//! Library half of the command-line front end: instance generation,
//! algorithm dispatch, contract verification, and benchmarking. The `gpm`
//! binary is a thin argument parser over these functions.

pub mod bench;
pub mod gen;
pub mod run;
pub mod verify;

use std::borrow::Cow;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use gpm_core::files;
use gpm_core::model::{IntervalRelation, MatchRelation, Pattern, Text};
use gpm_core::{Error, Result};

/// A matching instance: text, pattern, and at least one representation of
/// the matching relationship.
#[derive(Clone, Debug)]
pub struct Instance {
    pub text: Text,
    pub pattern: Pattern,
    pub relation: Option<MatchRelation>,
    pub intervals: Option<IntervalRelation>,
}

impl Instance {
    pub fn new(
        text: Text,
        pattern: Pattern,
        relation: Option<MatchRelation>,
        intervals: Option<IntervalRelation>,
    ) -> Result<Self> {
        if relation.is_none() && intervals.is_none() {
            return Err(Error::input(
                "an instance needs a relation or an interval file",
            ));
        }
        Ok(Instance {
            text,
            pattern,
            relation,
            intervals,
        })
    }

    /// The edge-list relation, materialized from intervals when absent.
    pub fn relation(&self) -> Result<Cow<'_, MatchRelation>> {
        match (&self.relation, &self.intervals) {
            (Some(rel), _) => Ok(Cow::Borrowed(rel)),
            (None, Some(ir)) => Ok(Cow::Owned(ir.to_match_relation()?)),
            (None, None) => unreachable!("checked at construction"),
        }
    }

    /// The interval view, derived from the edge list when absent.
    pub fn intervals(&self) -> Result<Cow<'_, IntervalRelation>> {
        match (&self.intervals, &self.relation) {
            (Some(ir), _) => Ok(Cow::Borrowed(ir)),
            (None, Some(rel)) => Ok(Cow::Owned(rel.to_interval_relation())),
            (None, None) => unreachable!("checked at construction"),
        }
    }

    /// Achieved parameters `(D, S, I)`; `I` needs an interval view and is
    /// skipped if deriving one fails.
    pub fn achieved_params(&self) -> (usize, usize, Option<u64>) {
        let (d, s) = match self.relation() {
            Ok(rel) => rel.params(),
            Err(_) => (0, 0),
        };
        let i = self
            .intervals()
            .ok()
            .and_then(|ir| ir.param_i(&self.pattern).ok());
        (d, s, i)
    }

    /// Writes `<prefix>.text`, `<prefix>.pattern`, and the available
    /// relation representations; returns the paths written.
    pub fn write_files(&self, prefix: &Path) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        let with_ext = |ext: &str| -> PathBuf {
            let mut os = prefix.as_os_str().to_os_string();
            os.push(".");
            os.push(ext);
            PathBuf::from(os)
        };
        let text_path = with_ext("text");
        fs::write(&text_path, files::format_symbols(self.text.symbols()))?;
        written.push(text_path);
        let pat_path = with_ext("pattern");
        fs::write(&pat_path, files::format_symbols(self.pattern.symbols()))?;
        written.push(pat_path);
        if let Some(rel) = &self.relation {
            let p = with_ext("rel");
            fs::write(&p, files::format_relation(rel))?;
            written.push(p);
        }
        if let Some(ir) = &self.intervals {
            let p = with_ext("ivl");
            fs::write(&p, files::format_interval_relation(ir))?;
            written.push(p);
        }
        Ok(written)
    }

    pub fn load(
        text_path: &Path,
        pattern_path: &Path,
        rel_path: Option<&Path>,
        ivl_path: Option<&Path>,
    ) -> Result<Self> {
        let text = Text::new(files::load_symbols(text_path)?)?;
        let pattern = Pattern::new(files::load_symbols(pattern_path)?)?;
        let relation = rel_path.map(files::load_relation).transpose()?;
        let intervals = ivl_path.map(files::load_interval_relation).transpose()?;
        Instance::new(text, pattern, relation, intervals)
    }
}

/// Runs `f` over the inputs on up to `threads` worker threads, preserving
/// input order in the output.
pub fn par_map<T, U, F>(inputs: Vec<T>, threads: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || inputs.len() <= 1 {
        return inputs.into_iter().map(f).collect();
    }
    let n = inputs.len();
    let mut slots: Vec<Option<U>> = Vec::new();
    slots.resize_with(n, || None);
    let jobs: std::sync::Mutex<Vec<(usize, T)>> =
        std::sync::Mutex::new(inputs.into_iter().enumerate().collect());
    let out: std::sync::Mutex<&mut Vec<Option<U>>> = std::sync::Mutex::new(&mut slots);

    std::thread::scope(|scope| {
        for _ in 0..threads.min(n) {
            scope.spawn(|| loop {
                let job = jobs.lock().expect("queue poisoned").pop();
                match job {
                    None => break,
                    Some((idx, input)) => {
                        let value = f(input);
                        out.lock().expect("slots poisoned")[idx] = Some(value);
                    }
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("worker filled every slot"))
        .collect()
}

/// Renders a report (occurrence list) in the CLI output format.
pub fn format_report(alignments: &[usize], zero_index: bool, json: bool) -> String {
    let mut out = String::new();
    for &i in alignments {
        let shown = if zero_index { i - 1 } else { i };
        if json {
            let _ = writeln!(out, "{{\"i\":{shown}}}");
        } else {
            let _ = writeln!(out, "{shown}");
        }
    }
    out
}

/// Renders a mismatch table: `i count` lines, or `i h lo hi` for
/// scaled-band tables (`h` the scaled count, `[lo, hi]` the certified
/// interval for the true count).
pub fn format_count(
    table: &gpm_core::model::MismatchTable,
    zero_index: bool,
    json: bool,
) -> String {
    use gpm_core::model::TableKind;
    let mut out = String::new();
    let banded = matches!(table.kind(), TableKind::ScaledBand { .. });
    for idx in 0..table.len() {
        let shown = if zero_index { idx } else { idx + 1 };
        if banded {
            let h = table.values()[idx] + table.exact_part().map_or(0, |e| e[idx]);
            let (lo, hi) = table.band(idx);
            if json {
                let _ = writeln!(out, "{{\"i\":{shown},\"h\":{h},\"lo\":{lo},\"hi\":{hi}}}");
            } else {
                let _ = writeln!(out, "{shown} {h} {lo} {hi}");
            }
        } else {
            let v = table.values()[idx];
            if json {
                let _ = writeln!(out, "{{\"i\":{shown},\"count\":{v}}}");
            } else {
                let _ = writeln!(out, "{shown} {v}");
            }
        }
    }
    out
}

//! Plain-text file formats.
//!
//! * relation: header `rel <|Σ_T|> <|Σ_P|>`, then one `a b` pair per line;
//! * intervals: header `ivl <|Σ_T|> <|Σ_P|>`, then lines
//!   `b lo1 hi1 lo2 hi2 ...` (closed intervals, possibly none);
//! * text / pattern: whitespace-separated decimal character codes;
//! * set system: header `sys <z> <k> <|U|>`, then exactly `z` lines, each a
//!   whitespace-separated set of element indices (a blank line is an empty
//!   set).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::discrepancy::SetSystem;
use crate::error::{Error, Result};
use crate::model::{IntervalRelation, MatchRelation};

fn parse_num<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(format!("bad {what}: {tok:?}")))
}

/// Parses a whitespace-separated list of character codes.
pub fn parse_symbols(input: &str) -> Result<Vec<u32>> {
    input
        .split_whitespace()
        .map(|t| parse_num(t, "character code"))
        .collect()
}

pub fn format_symbols(symbols: &[u32]) -> String {
    let mut out = String::new();
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{s}");
    }
    out.push('\n');
    out
}

pub fn parse_relation(input: &str) -> Result<MatchRelation> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::parse("empty relation file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "rel" {
        return Err(Error::parse(format!("bad relation header: {header:?}")));
    }
    let sigma_t: u64 = parse_num(toks[1], "alphabet size")?;
    let sigma_p: u64 = parse_num(toks[2], "alphabet size")?;
    let mut edges = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(format!("bad edge line: {line:?}")));
        }
        edges.push((
            parse_num(toks[0], "character code")?,
            parse_num(toks[1], "character code")?,
        ));
    }
    MatchRelation::from_edges(sigma_t, sigma_p, edges)
}

pub fn format_relation(rel: &MatchRelation) -> String {
    let mut edges: Vec<(u32, u32)> = rel.edges().collect();
    edges.sort_unstable();
    let mut out = format!("rel {} {}\n", rel.sigma_text(), rel.sigma_pattern());
    for (a, b) in edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn parse_interval_relation(input: &str) -> Result<IntervalRelation> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::parse("empty interval file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "ivl" {
        return Err(Error::parse(format!("bad interval header: {header:?}")));
    }
    let sigma_t: u64 = parse_num(toks[1], "alphabet size")?;
    let sigma_p: u64 = parse_num(toks[2], "alphabet size")?;
    let mut raw = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() % 2 != 1 {
            return Err(Error::parse(format!(
                "interval line needs lo/hi pairs: {line:?}"
            )));
        }
        let b: u32 = parse_num(toks[0], "character code")?;
        let mut intervals = Vec::new();
        for pair in toks[1..].chunks(2) {
            intervals.push((
                parse_num(pair[0], "interval bound")?,
                parse_num(pair[1], "interval bound")?,
            ));
        }
        raw.push((b, intervals));
    }
    IntervalRelation::new(sigma_t, sigma_p, raw)
}

pub fn format_interval_relation(ir: &IntervalRelation) -> String {
    let mut chars: Vec<u32> = ir.defined_chars().collect();
    chars.sort_unstable();
    let mut out = format!("ivl {} {}\n", ir.sigma_text(), ir.sigma_pattern());
    for b in chars {
        let _ = write!(out, "{b}");
        for &(lo, hi) in ir.intervals(b).expect("defined") {
            let _ = write!(out, " {lo} {hi}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_set_system(input: &str) -> Result<SetSystem> {
    let mut lines = input.lines();
    let header = loop {
        match lines.next() {
            Some(l) if l.trim().is_empty() => continue,
            Some(l) => break l,
            None => return Err(Error::parse("empty set-system file")),
        }
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "sys" {
        return Err(Error::parse(format!("bad set-system header: {header:?}")));
    }
    let z: usize = parse_num(toks[1], "set count")?;
    let k: usize = parse_num(toks[2], "max set size")?;
    let universe: usize = parse_num(toks[3], "universe size")?;
    let mut sets = Vec::with_capacity(z);
    for _ in 0..z {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("expected {z} set lines")))?;
        let set: Vec<u32> = line
            .split_whitespace()
            .map(|t| parse_num(t, "element index"))
            .collect::<Result<_>>()?;
        if set.len() > k {
            return Err(Error::parse(format!("set exceeds declared size bound {k}")));
        }
        sets.push(set);
    }
    SetSystem::new(universe, sets)
}

pub fn format_set_system(sys: &SetSystem) -> String {
    let mut out = format!(
        "sys {} {} {}\n",
        sys.num_sets(),
        sys.max_set_size(),
        sys.universe()
    );
    for set in sys.sets() {
        out.push_str(format_symbols(set).trim_end());
        out.push('\n');
    }
    out
}

pub fn load_symbols(path: impl AsRef<Path>) -> Result<Vec<u32>> {
    parse_symbols(&fs::read_to_string(path)?)
}

pub fn load_relation(path: impl AsRef<Path>) -> Result<MatchRelation> {
    parse_relation(&fs::read_to_string(path)?)
}

pub fn load_interval_relation(path: impl AsRef<Path>) -> Result<IntervalRelation> {
    parse_interval_relation(&fs::read_to_string(path)?)
}

pub fn load_set_system(path: impl AsRef<Path>) -> Result<SetSystem> {
    parse_set_system(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_round_trip() {
        let rel = parse_relation("rel 3 2\n0 1\n2 1\n").unwrap();
        assert!(rel.edge(2, 1).unwrap());
        assert_eq!(rel.edge_count(), 2);
        let rel2 = parse_relation(&format_relation(&rel)).unwrap();
        assert_eq!(rel2.edge_count(), 2);
        assert!(rel2.edge(0, 1).unwrap());
    }

    #[test]
    fn interval_round_trip() {
        let ir = parse_interval_relation("ivl 10 2\n0 1 3 4 6\n1\n").unwrap();
        assert_eq!(ir.intervals(0).unwrap(), &[(1, 6)]);
        assert_eq!(ir.intervals(1).unwrap(), &[] as &[(u32, u32)]);
        let again = parse_interval_relation(&format_interval_relation(&ir)).unwrap();
        assert_eq!(again.intervals(0).unwrap(), &[(1, 6)]);
    }

    #[test]
    fn set_system_round_trip() {
        let sys = parse_set_system("sys 3 2 5\n0 1\n\n3 4\n").unwrap();
        assert_eq!(sys.num_sets(), 3);
        assert_eq!(sys.sets()[1], Vec::<u32>::new());
        let again = parse_set_system(&format_set_system(&sys)).unwrap();
        assert_eq!(again.sets(), sys.sets());
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(parse_relation("rel 3\n").is_err());
        assert!(parse_relation("rel 3 2\n0\n").is_err());
        assert!(parse_interval_relation("ivl 4 4\n0 1\n").is_err());
        assert!(parse_set_system("sys 2 2 4\n0 1\n").is_err());
        assert!(parse_symbols("1 x 3").is_err());
    }
}

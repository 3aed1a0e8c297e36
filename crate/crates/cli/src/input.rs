//! Reading families and parsing parameter strings.

use std::path::Path;

use anyhow::Context;
use kradon_core::hereditary::{independence_family, Graph};
use kradon_core::{GroundSize, HereditaryFamily, LevelSelector};
use thiserror::Error;

use crate::HostArgs;

/// Bad command-line parameters (exit 2).
#[derive(Debug, Error)]
#[error("{0}")]
pub struct InputError(pub String);

pub fn bad<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(InputError(msg.into()).into())
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_host(args: &HostArgs) -> anyhow::Result<HereditaryFamily> {
    match (&args.host, &args.graph, args.power_set) {
        (Some(p), None, None) => {
            Ok(HereditaryFamily::parse_text(&read(p)?).with_context(|| format!("parsing {}", p.display()))?)
        }
        (None, Some(p), None) => {
            let g = Graph::parse_text(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            Ok(independence_family(&g))
        }
        (None, None, Some(n)) => Ok(HereditaryFamily::power_set(GroundSize::new(n)?)),
        (None, None, None) => bad("give one of --host, --graph or --power-set"),
        _ => bad("--host, --graph and --power-set are mutually exclusive"),
    }
}

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    read(path)
}

/// `lo..hi` (inclusive) or a single number.
pub fn parse_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let num = |s: &str| -> anyhow::Result<usize> {
        match s.trim().parse() {
            Ok(v) => Ok(v),
            Err(_) => bad(format!("`{s}` is not a non-negative integer")),
        }
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return bad(format!("empty range `{text}`"));
    }
    Ok((lo, hi))
}

/// `2`, `1,3` or `2..4`.
pub fn parse_selector(text: &str) -> anyhow::Result<LevelSelector> {
    let mut levels = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (lo, hi) = parse_range(part)?;
        levels.extend(lo..=hi);
    }
    Ok(LevelSelector::new(levels)?)
}

/// One selector per family; a single selector is repeated `k` times.
pub fn parse_selectors(levels: &[String], k: Option<usize>) -> anyhow::Result<Vec<LevelSelector>> {
    let parsed = levels.iter().map(|l| parse_selector(l)).collect::<anyhow::Result<Vec<_>>>()?;
    match (parsed.len(), k) {
        (0, _) => bad("give at least one --levels"),
        (1, Some(k)) => Ok(vec![parsed[0].clone(); k]),
        (len, Some(k)) if len != k => bad(format!("{len} selectors given but --k is {k}")),
        _ => Ok(parsed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_and_ranges() {
        assert_eq!(parse_selector("2").unwrap().levels(), &[2]);
        assert_eq!(parse_selector("1,3").unwrap().levels(), &[1, 3]);
        assert_eq!(parse_selector("2..4").unwrap().levels(), &[2, 3, 4]);
        assert!(parse_selector("x").is_err());
        assert!(parse_selector("").is_err());
        assert_eq!(parse_range("1..4").unwrap(), (1, 4));
        assert!(parse_range("4..1").is_err());
        let s = parse_selectors(&["2".into()], Some(3)).unwrap();
        assert_eq!(s.len(), 3);
        assert!(parse_selectors(&["2".into(), "3".into()], Some(3)).is_err());
    }
}

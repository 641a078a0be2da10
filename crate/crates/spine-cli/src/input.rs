use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use spine::enumeration::DEFAULT_MAX_COSETS;
use spine::presentations::{build_family, shift_extension, CyclicPresentation, FamilySpec, TwoGeneratorPresentation, Word};

/// A presentation given on the command line.
pub enum Presentation {
    Cyclic { spec: Option<FamilySpec>, p: CyclicPresentation },
    Extension(TwoGeneratorPresentation),
}

/// Family shorthand (`H:r,n`, `G:k,l,n,f`, `F:k,l,n`), `E:k,l,n,f` for a shift extension,
/// inline word JSON, or a path to a word JSON file.
pub fn presentation(arg: &str) -> Result<Presentation> {
    if let Some(rest) = arg.strip_prefix("E:") {
        let v = numbers(rest, 4)?;
        return Ok(Presentation::Extension(shift_extension(v[0], v[1], v[2], v[3])?));
    }
    if arg.trim_start().starts_with('{') {
        return word_json(arg);
    }
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return word_json(&text);
    }
    let spec = family(arg)?;
    Ok(Presentation::Cyclic { spec: Some(spec), p: build_family(spec)? })
}

pub fn cyclic(arg: &str) -> Result<(Option<FamilySpec>, CyclicPresentation)> {
    match presentation(arg)? {
        Presentation::Cyclic { spec, p } => Ok((spec, p)),
        Presentation::Extension(_) => bail!("`{arg}` is a two-generator presentation; a cyclic one is needed here"),
    }
}

fn word_json(text: &str) -> Result<Presentation> {
    let w: Word = serde_json::from_str(text).context("expected {\"rank\": n, \"word\": [[g, s], ...]}")?;
    Ok(Presentation::Cyclic { spec: None, p: CyclicPresentation::new(w) })
}

pub fn family(arg: &str) -> Result<FamilySpec> {
    let spec: FamilySpec = arg.parse().map_err(|e| anyhow!("bad family `{arg}`: {e}"))?;
    spec.validate()?;
    Ok(spec)
}

fn numbers(text: &str, count: usize) -> Result<Vec<usize>> {
    let v = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad number `{t}`")))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != count {
        bail!("expected {count} comma-separated numbers, got `{text}`");
    }
    Ok(v)
}

/// `a..b` (inclusive), `a,b,c` or a single number.
pub fn range(text: &str) -> Result<Vec<usize>> {
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| anyhow!("bad range `{text}`"))?;
        let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| anyhow!("bad range `{text}`"))?;
        if a > b {
            bail!("empty range `{text}`");
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|t| t.trim().parse().map_err(|_| anyhow!("bad number `{t}` in `{text}`"))).collect()
}

pub fn coefficients(text: &str) -> Result<Vec<i64>> {
    text.split(',').map(|t| t.trim().parse().map_err(|_| anyhow!("bad coefficient `{t}`"))).collect()
}

/// `--max-cosets`, else `SPINE_MAX_COSETS`, else the library default.
pub fn max_cosets(flag: Option<usize>) -> Result<usize> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var("SPINE_MAX_COSETS") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("SPINE_MAX_COSETS must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

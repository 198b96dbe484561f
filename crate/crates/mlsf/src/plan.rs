//! Plan-file parsing for the identity suite.
//!
//! A plan is a line-oriented text file of blank-line-separated blocks,
//! one block per check. Each block holds `key=value` lines:
//! `identity=<catalog name>`, `tolerance=<real>`, and the point fields
//! (`alpha`, `beta`, `gamma`, `p`, `x`, `y`, `a`, `b`, `c`, `z`, `s`,
//! `n`). Lines starting with `#` are comments.

use crate::error::{Error, Result};
use crate::report::{EvalPoint, IdentityId};
use crate::verify::PlanEntry;

/// Parse a plan file's text into executable entries.
pub fn parse_plan(text: &str) -> Result<Vec<PlanEntry>> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .peekable();
    loop {
        let next = lines.next();
        let boundary = match next {
            Some((_, l)) if l.is_empty() || l.starts_with('#') => !block.is_empty() && l.is_empty(),
            Some(pair) => {
                block.push(pair);
                false
            }
            None => !block.is_empty(),
        };
        if boundary {
            entries.push(parse_block(&block)?);
            block.clear();
        }
        if next.is_none() {
            break;
        }
    }
    Ok(entries)
}

fn parse_block(lines: &[(usize, &str)]) -> Result<PlanEntry> {
    let mut identity = None;
    let mut tolerance = None;
    let mut point = EvalPoint::default();
    for &(lineno, line) in lines {
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Domain(format!("plan line {lineno}: expected key=value, got `{line}`"))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let real = || -> Result<f64> {
            value.parse::<f64>().map_err(|_| {
                Error::Domain(format!("plan line {lineno}: `{key}` needs a real value, got `{value}`"))
            })
        };
        match key {
            "identity" => {
                identity = Some(IdentityId::parse(value).ok_or_else(|| {
                    Error::Domain(format!("plan line {lineno}: unknown identity `{value}`"))
                })?);
            }
            "tolerance" => tolerance = Some(real()?),
            "alpha" => point.alpha = Some(real()?),
            "beta" => point.beta = Some(real()?),
            "gamma" => point.gamma = Some(real()?),
            "p" => point.p = Some(real()?),
            "x" => point.x = Some(real()?),
            "y" => point.y = Some(real()?),
            "a" => point.a = Some(real()?),
            "b" => point.b = Some(real()?),
            "c" => point.c = Some(real()?),
            "z" => point.z = Some(real()?),
            "s" => point.s = Some(real()?),
            "n" => {
                point.n = Some(value.parse::<u32>().map_err(|_| {
                    Error::Domain(format!(
                        "plan line {lineno}: `n` needs a non-negative integer, got `{value}`"
                    ))
                })?);
            }
            other => {
                return Err(Error::Domain(format!(
                    "plan line {lineno}: unknown key `{other}`"
                )));
            }
        }
    }
    let identity = identity.ok_or_else(|| {
        Error::Domain("plan block is missing the `identity` key".to_string())
    })?;
    Ok(PlanEntry {
        identity,
        point,
        tolerance: tolerance.unwrap_or(1e-7),
    })
}

//! Permutations and permutation groups with a stabiliser chain.

mod group;
mod permutation;

pub use group::{
    subgroup_from_elements, Elements, PermGroup, RandomElements, Representation, SlpEvaluator,
    SlpId, SlpNode,
};
pub use permutation::{Permutation, MAX_DEGREE};

use crate::error::{Error, Result};

/// Parses the generator file format: `degree n`, an optional `order N`
/// line, then one generator per line as n space-separated 1-based images.
/// `#` starts a comment.
pub fn parse_generator_file(text: &str) -> Result<(Vec<Permutation>, Option<u64>, usize)> {
    let mut degree = None;
    let mut order = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        if let Some(rest) = line.strip_prefix("degree") {
            let n: usize = rest.trim().parse().map_err(|_| bad("bad degree"))?;
            if n > MAX_DEGREE {
                return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
            }
            degree = Some(n);
            continue;
        }
        if let Some(rest) = line.strip_prefix("order") {
            order = Some(rest.trim().parse::<u64>().map_err(|_| bad("bad order"))?);
            continue;
        }
        let n = degree.ok_or_else(|| bad("generator before `degree` line"))?;
        let images = line
            .split_whitespace()
            .map(|s| s.parse::<usize>().map_err(|_| bad("bad image")))
            .collect::<Result<Vec<_>>>()?;
        if images.len() != n {
            return Err(bad(&format!("expected {n} images, found {}", images.len())));
        }
        gens.push(Permutation::from_one_based(&images)?);
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing `degree` line".into()))?;
    Ok((gens, order, degree))
}

/// Writes generators in the generator file format.
pub fn format_generator_file(gens: &[Permutation], degree: usize, order: Option<u64>, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("degree {degree}\n"));
    if let Some(o) = order {
        out.push_str(&format!("order {o}\n"));
    }
    for g in gens {
        out.push_str(&g.to_image_line());
        out.push('\n');
    }
    out
}

//! Soundness harness: a simple group whose π-centralisers are all soluble
//! must appear in the table collections for π.

use rayon::prelude::*;
use serde::Serialize;

use super::check::{GroupProfile, Outcome};
use super::tables::in_x_union;
use crate::catalogue::GroupDescriptor;
use crate::error::Result;
use crate::pi::PiSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Holds and the group is a table member.
    Consistent,
    /// Fails, so there is nothing to check.
    Vacuous,
    Capped,
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRow {
    pub group: String,
    pub pi: PiSet,
    /// π restricted to the primes dividing |S|; `None` when disjoint.
    pub pi_s: Option<PiSet>,
    pub outcome: Option<Outcome>,
    pub member_as: Option<String>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub rows: Vec<CrosscheckRow>,
    pub violations: usize,
    pub capped: usize,
}

impl CrosscheckReport {
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serialisable");
        let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
        s.push('\n');
        s
    }
}

fn rows_for(desc: &GroupDescriptor, pis: &[PiSet], cap: u64) -> Result<Vec<CrosscheckRow>> {
    let group = desc.build()?;
    let profile = GroupProfile::new(&desc.name, group, cap)?;
    let primes = profile.order_primes();
    let mut rows = Vec::with_capacity(pis.len());
    for pi in pis {
        let mut row = CrosscheckRow {
            group: desc.name.clone(),
            pi: pi.clone(),
            pi_s: pi.intersect(&primes),
            outcome: None,
            member_as: None,
            verdict: Verdict::Vacuous,
        };
        if let Some(pi_s) = &row.pi_s {
            let outcome = profile.check(pi_s)?.outcome;
            row.outcome = Some(outcome);
            row.verdict = match outcome {
                Outcome::Fails => Verdict::Vacuous,
                Outcome::Capped => Verdict::Capped,
                Outcome::Holds => match in_x_union(&desc.identities, pi_s)? {
                    Some(id) => {
                        row.member_as = Some(id.to_string());
                        Verdict::Consistent
                    }
                    None => Verdict::Violation,
                },
            };
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Runs every simple group in `groups` against every π in `pis`. Groups
/// are processed in parallel; rows come back in input order.
pub fn soundness_crosscheck(groups: &[GroupDescriptor], pis: &[PiSet], cap: u64) -> Result<CrosscheckReport> {
    let simple: Vec<&GroupDescriptor> = groups.iter().filter(|d| d.is_simple()).collect();
    let per_group: Vec<Result<Vec<CrosscheckRow>>> = simple.par_iter().map(|d| rows_for(d, pis, cap)).collect();
    let mut rows = Vec::new();
    for r in per_group {
        rows.extend(r?);
    }
    let violations = rows.iter().filter(|r| r.verdict == Verdict::Violation).count();
    let capped = rows.iter().filter(|r| r.verdict == Verdict::Capped).count();
    Ok(CrosscheckReport { rows, violations, capped })
}

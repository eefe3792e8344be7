//! The π-centraliser solubility checker and its JSON report.

use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::prime_divisors;
use crate::grpstruct::{centraliser, conjugacy_representatives, derived_series, is_pi_element};
use crate::perm::{PermGroup, Permutation};
use crate::pi::PiSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Capped,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Capped => "capped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// 1-based cycle notation.
    pub element: String,
    pub order: u64,
    pub centraliser_order: u64,
    /// |C|, |C'|, |C''|, ... until the series stops.
    pub derived_orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub group: String,
    pub pi: PiSet,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub classes_examined: usize,
    pub cap: u64,
    pub seed: u64,
    pub elapsed_ms: Option<u64>,
}

impl PropertyReport {
    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serialisable");
        let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<PropertyReport> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Centraliser data of one class, computed on first use.
#[derive(Clone, Debug)]
pub struct CentraliserInfo {
    pub order: u64,
    pub derived_orders: Vec<u64>,
    pub soluble: bool,
}

#[derive(Debug)]
pub struct ClassProfile {
    pub representative: Permutation,
    pub size: u64,
    pub central: bool,
    pub element_order: u64,
    pub order_primes: Vec<u64>,
    info: OnceLock<std::result::Result<CentraliserInfo, Error>>,
}

/// Conjugacy classes of a group, shared by every π checked against it.
#[derive(Debug)]
pub struct GroupProfile {
    pub name: String,
    pub group: PermGroup,
    pub cap: u64,
    /// `None` when |G| exceeds the cap.
    pub classes: Option<Vec<ClassProfile>>,
}

impl GroupProfile {
    pub fn new(name: &str, group: PermGroup, cap: u64) -> Result<GroupProfile> {
        let classes = match conjugacy_representatives(&group, cap) {
            Ok(cs) => Some(
                cs.into_iter()
                    .map(|c| {
                        let x = c.representative;
                        let central = group.generators().iter().all(|g| x.commutes_with(g));
                        ClassProfile {
                            element_order: x.order_u64().expect("small degree"),
                            order_primes: x.order_primes(),
                            representative: x,
                            size: c.size,
                            central,
                            info: OnceLock::new(),
                        }
                    })
                    .collect(),
            ),
            Err(e) if e.is_cap() => None,
            Err(e) => return Err(e),
        };
        Ok(GroupProfile {
            name: name.to_string(),
            group,
            cap,
            classes,
        })
    }

    /// Primes dividing |G| (when it fits in a u64).
    pub fn order_primes(&self) -> Vec<u64> {
        self.group.order_u64().map(prime_divisors).unwrap_or_default()
    }

    fn info(&self, c: &ClassProfile) -> Result<CentraliserInfo> {
        c.info
            .get_or_init(|| {
                let cen = centraliser(&self.group, &c.representative, self.cap)?;
                let series = derived_series(cen.group())?;
                Ok(CentraliserInfo {
                    order: cen.group().order_u64().expect("bounded by |G|"),
                    derived_orders: series.orders_u64(),
                    soluble: series.reaches_trivial,
                })
            })
            .clone()
    }

    /// Checks every non-central π-class in enumeration order, stopping at
    /// the first insoluble centraliser.
    pub fn check(&self, pi: &PiSet) -> Result<PropertyReport> {
        let start = Instant::now();
        let mut report = PropertyReport {
            group: self.name.clone(),
            pi: pi.clone(),
            outcome: Outcome::Capped,
            witness: None,
            classes_examined: 0,
            cap: self.cap,
            seed: 0,
            elapsed_ms: None,
        };
        let Some(classes) = &self.classes else {
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            return Ok(report);
        };
        report.outcome = Outcome::Holds;
        for c in classes {
            if c.central || !c.order_primes.iter().all(|&q| pi.contains(q)) {
                continue;
            }
            report.classes_examined += 1;
            let info = match self.info(c) {
                Ok(i) => i,
                Err(e) if e.is_cap() => {
                    report.outcome = Outcome::Capped;
                    break;
                }
                Err(e) => return Err(e),
            };
            if !info.soluble {
                report.outcome = Outcome::Fails;
                report.witness = Some(Witness {
                    element: c.representative.to_string(),
                    order: c.element_order,
                    centraliser_order: info.order,
                    derived_orders: info.derived_orders,
                });
                break;
            }
        }
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        Ok(report)
    }
}

/// Whether C_G(x) is soluble for every non-central π-element x of G.
pub fn check_soluble_pi_centralisers(name: &str, group: &PermGroup, pi: &PiSet, cap: u64) -> Result<PropertyReport> {
    GroupProfile::new(name, group.clone(), cap)?.check(pi)
}

/// Re-derives a fails-report's witness from the group: membership,
/// non-centrality, π-element, element order, centraliser order,
/// derived series and insolubility.
pub fn verify_witness(group: &PermGroup, report: &PropertyReport) -> Result<()> {
    let w = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::Precondition("report has no witness".into()))?;
    let bad = |m: &str| Err(Error::Data(format!("witness {}: {m}", w.element)));
    let x = Permutation::parse_cycles(group.degree(), &w.element)?;
    if !group.contains(&x) {
        return bad("not in the group");
    }
    if group.generators().iter().all(|g| x.commutes_with(g)) {
        return bad("central");
    }
    if !is_pi_element(&x, &report.pi) {
        return bad("not a π-element");
    }
    if x.order_u64() != Some(w.order) {
        return bad("order mismatch");
    }
    let c = centraliser(group, &x, report.cap.max(crate::grpstruct::DEFAULT_CAP))?;
    if c.group().order_u64() != Some(w.centraliser_order) {
        return bad("centraliser order mismatch");
    }
    let s = derived_series(c.group())?;
    if s.reaches_trivial {
        return bad("centraliser is soluble");
    }
    if s.orders_u64() != w.derived_orders {
        return bad("derived series mismatch");
    }
    Ok(())
}

//! Lifting elements and centralisers through a normal subgroup, checked on
//! concrete extensions.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::prime_power;
use crate::grpstruct::{centraliser, is_soluble};
use crate::perm::{PermGroup, Permutation};

/// G/N realised as the action of G on right cosets of N.
#[derive(Clone, Debug)]
pub struct Quotient {
    normal: Vec<Permutation>,
    reps: Vec<Permutation>,
    index: HashMap<Vec<u32>, usize>,
    group: PermGroup,
}

impl Quotient {
    /// Fails if N is not normal in G or the index exceeds `cap`.
    pub fn new(group: &PermGroup, normal: &PermGroup, cap: u64) -> Result<Quotient> {
        if !normal.is_subgroup_of(group) {
            return Err(Error::Precondition("N is not a subgroup of G".into()));
        }
        for g in group.generators() {
            for n in normal.generators() {
                if !normal.contains(&n.conjugate_by(g)) {
                    return Err(Error::Precondition("N is not normal in G".into()));
                }
            }
        }
        let normal_elems = normal.element_list(cap)?;
        let mut q = Quotient {
            normal: normal_elems,
            reps: vec![group.identity()],
            index: HashMap::new(),
            group: PermGroup::trivial(1),
        };
        q.index.insert(q.key(&group.identity()), 0);
        let mut i = 0;
        while i < q.reps.len() {
            for s in group.generators() {
                let h = q.reps[i].compose(s)?;
                let k = q.key(&h);
                if !q.index.contains_key(&k) {
                    if q.reps.len() as u64 >= cap {
                        return Err(Error::cap("cosets of N", cap));
                    }
                    q.index.insert(k, q.reps.len());
                    q.reps.push(h);
                }
            }
            i += 1;
        }
        let gens = group.generators().iter().map(|g| q.image(g)).collect::<Result<Vec<_>>>()?;
        q.group = PermGroup::with_degree(q.reps.len(), gens)?;
        Ok(q)
    }

    /// Least element of the coset N·g.
    fn key(&self, g: &Permutation) -> Vec<u32> {
        self.normal
            .iter()
            .map(|n| n.compose(g).expect("same degree").images().to_vec())
            .min()
            .expect("N is non-empty")
    }

    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(&self.key(g)).copied()
    }

    /// The image of g in G/N.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| {
                let h = r.compose(g)?;
                self.coset_of(&h)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::Precondition("element outside G".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }

    /// The elements n·g, n ∈ N, in enumeration order of N.
    pub fn coset_elements(&self, g: &Permutation) -> Vec<Permutation> {
        self.normal.iter().map(|n| n.compose(g).expect("same degree")).collect()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn normal_order(&self) -> u64 {
        self.normal.len() as u64
    }

    pub fn index(&self) -> u64 {
        self.reps.len() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftMode {
    /// (|x̄|, |N|) = 1: a lift of the same order whose centraliser maps
    /// onto C_{G/N}(x̄).
    Coprime,
    /// N central of p-power order: an insoluble centraliser of a p-element
    /// downstairs gives one upstairs.
    Central,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftingVerdict {
    pub mode: LiftMode,
    pub normal_order: u64,
    pub image_order: u64,
    pub lift: Option<String>,
    pub lift_order: Option<u64>,
    pub upstairs_centraliser_order: Option<u64>,
    pub projected_order: Option<u64>,
    pub downstairs_centraliser_order: u64,
    pub downstairs_soluble: bool,
    pub upstairs_soluble: Option<bool>,
    pub passed: bool,
}

fn order_of(x: &Permutation) -> Result<u64> {
    x.order_u64().ok_or_else(|| Error::Precondition("element order overflows u64".into()))
}

/// Checks the coprime lifting statement for the coset of `x` modulo N.
pub fn lifting_check(group: &PermGroup, normal: &PermGroup, x: &Permutation, cap: u64) -> Result<LiftingVerdict> {
    let q = Quotient::new(group, normal, cap)?;
    let xbar = q.image(x)?;
    let m = order_of(&xbar)?;
    if m.gcd(&q.normal_order()) != 1 {
        return Err(Error::Precondition(format!(
            "|x̄| = {m} and |N| = {} are not coprime",
            q.normal_order()
        )));
    }
    let down = centraliser(q.group(), &xbar, cap)?;
    let down_order = down.group().order_u64().expect("bounded by the index");
    let mut v = LiftingVerdict {
        mode: LiftMode::Coprime,
        normal_order: q.normal_order(),
        image_order: m,
        lift: None,
        lift_order: None,
        upstairs_centraliser_order: None,
        projected_order: None,
        downstairs_centraliser_order: down_order,
        downstairs_soluble: is_soluble(down.group())?,
        upstairs_soluble: None,
        passed: false,
    };
    let Some(lift) = q.coset_elements(x).into_iter().find(|y| y.order_u64() == Some(m)) else {
        return Ok(v);
    };
    let up = centraliser(group, &lift, cap)?;
    let images = up.group().generators().iter().map(|g| q.image(g)).collect::<Result<Vec<_>>>()?;
    let projected = PermGroup::with_degree(q.group().degree(), images)?;
    let projected_order = projected.order_u64().expect("bounded by the index");
    v.lift = Some(lift.to_string());
    v.lift_order = Some(m);
    v.upstairs_centraliser_order = up.group().order_u64();
    v.upstairs_soluble = Some(is_soluble(up.group())?);
    v.projected_order = Some(projected_order);
    v.passed = projected.is_subgroup_of(down.group()) && projected_order == down_order;
    Ok(v)
}

/// Checks the central statement: N central of p-power order, x̄ a
/// p-element with insoluble centraliser in G/N.
pub fn central_lifting_check(group: &PermGroup, normal: &PermGroup, x: &Permutation, cap: u64) -> Result<LiftingVerdict> {
    let central = normal
        .generators()
        .iter()
        .all(|n| group.generators().iter().all(|g| n.commutes_with(g)));
    if !central {
        return Err(Error::Precondition("N is not central".into()));
    }
    let n_order = normal.order_u64().expect("small normal subgroup");
    let p = match prime_power(n_order) {
        Some((p, _)) => p,
        None if n_order == 1 => return Err(Error::Precondition("N is trivial".into())),
        None => return Err(Error::Precondition(format!("|N| = {n_order} is not a prime power"))),
    };
    let q = Quotient::new(group, normal, cap)?;
    let xbar = q.image(x)?;
    let m = order_of(&xbar)?;
    if m > 1 && prime_power(m).map(|(r, _)| r) != Some(p) {
        return Err(Error::Precondition(format!("|x̄| = {m} is not a power of {p}")));
    }
    let down = centraliser(q.group(), &xbar, cap)?;
    let down_soluble = is_soluble(down.group())?;
    if down_soluble {
        return Err(Error::Precondition("C(x̄) is soluble".into()));
    }
    let lift = q.coset_elements(x).into_iter().next().expect("non-empty coset");
    let lift_order = order_of(&lift)?;
    let up = centraliser(group, &lift, cap)?;
    let up_soluble = is_soluble(up.group())?;
    let p_power = lift_order == 1 || prime_power(lift_order).map(|(r, _)| r) == Some(p);
    Ok(LiftingVerdict {
        mode: LiftMode::Central,
        normal_order: n_order,
        image_order: m,
        lift: Some(lift.to_string()),
        lift_order: Some(lift_order),
        upstairs_centraliser_order: up.group().order_u64(),
        projected_order: None,
        downstairs_centraliser_order: down.group().order_u64().expect("bounded by the index"),
        downstairs_soluble: down_soluble,
        upstairs_soluble: Some(up_soluble),
        passed: p_power && !up_soluble,
    })
}

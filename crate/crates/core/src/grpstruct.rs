//! Centralisers, centre, derived series and conjugacy classes.

use std::collections::HashMap;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::pi::PiSet;

/// Default element cap for enumeration-based algorithms.
pub const DEFAULT_CAP: u64 = 2_000_000;

/// A subgroup of some parent group, with its own stabiliser chain.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: PermGroup,
}

impl Subgroup {
    pub fn from_group(group: PermGroup) -> Subgroup {
        Subgroup { group }
    }

    /// Subgroup generated by `gens`, which must all lie in `parent`.
    pub fn generated(parent: &PermGroup, gens: Vec<Permutation>) -> Result<Subgroup> {
        if let Some(g) = gens.iter().find(|g| !parent.contains(g)) {
            return Err(Error::Precondition(format!("{g} is not in the parent group")));
        }
        let group = if gens.is_empty() {
            PermGroup::trivial(parent.degree())
        } else {
            PermGroup::with_degree(parent.degree(), gens)?
        };
        Ok(Subgroup { group })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }
}

impl Deref for Subgroup {
    type Target = PermGroup;

    fn deref(&self) -> &PermGroup {
        &self.group
    }
}

/// Derived series data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// Orders of G, G', G'', ... up to the first repeat.
    pub orders: Vec<BigUint>,
    pub reaches_trivial: bool,
    pub derived_length: Option<usize>,
}

impl SeriesReport {
    pub fn is_soluble(&self) -> bool {
        self.reaches_trivial
    }

    pub fn orders_u64(&self) -> Vec<u64> {
        self.orders.iter().map(|o| o.to_u64().unwrap_or(u64::MAX)).collect()
    }
}

/// Mixed-radix index of a member in `0..|G|`, read off the sifting path.
/// Returns `None` for non-members or when |G| does not fit in a u64.
pub fn element_index(group: &PermGroup, x: &Permutation) -> Option<u64> {
    let lens = group.basic_orbit_lengths();
    let positions = group.transversal_positions(x)?;
    let mut idx: u64 = 0;
    for (pos, len) in positions.into_iter().zip(lens) {
        idx = idx.checked_mul(len as u64)?.checked_add(pos as u64)?;
    }
    Some(idx)
}

fn order_u64_capped(group: &PermGroup, cap: u64) -> Result<u64> {
    match group.order_u64() {
        Some(o) if o <= cap => Ok(o),
        _ => Err(Error::cap(format!("|G| = {}", group.order()), cap)),
    }
}

/// C_G(x). Filters the element list when |G| ≤ cap, otherwise runs the
/// conjugation orbit of `x` with Schreier generators for its stabiliser.
pub fn centraliser(group: &PermGroup, x: &Permutation, cap: u64) -> Result<Subgroup> {
    if !group.contains(x) {
        return Err(Error::Precondition(format!("{x} is not in the group")));
    }
    if x.is_identity() {
        return Ok(Subgroup::from_group(group.clone()));
    }
    match group.order_u64() {
        Some(o) if o <= cap => centraliser_by_filter(group, x, cap),
        _ => centraliser_by_orbit(group, x, cap),
    }
}

pub fn centraliser_by_filter(group: &PermGroup, x: &Permutation, cap: u64) -> Result<Subgroup> {
    let mut h = PermGroup::trivial(group.degree());
    // |C| is unknown up front, so every commuting element is offered
    for g in group.elements(cap)? {
        if g.commutes_with(x) && !h.contains(&g) {
            h.extend(g)?;
        }
    }
    Ok(Subgroup::from_group(h))
}

/// Conjugation orbit of `x` under the generators of `group`, each entry
/// paired with a conjugator `t` such that x^t is the entry.
pub fn conjugation_orbit(
    group: &PermGroup,
    x: &Permutation,
    cap: u64,
) -> Result<Vec<(Permutation, Permutation)>> {
    let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    let mut orbit = vec![(x.clone(), group.identity())];
    index.insert(x.clone(), 0);
    let mut i = 0;
    while i < orbit.len() {
        for g in &gens {
            let y = orbit[i].0.conjugate_by(g);
            if !index.contains_key(&y) {
                if orbit.len() as u64 >= cap {
                    return Err(Error::cap("conjugation orbit length", cap));
                }
                let t = &orbit[i].1 * g;
                index.insert(y.clone(), orbit.len() as u32);
                orbit.push((y, t));
            }
        }
        i += 1;
    }
    Ok(orbit)
}

pub fn centraliser_by_orbit(group: &PermGroup, x: &Permutation, cap: u64) -> Result<Subgroup> {
    let orbit = conjugation_orbit(group, x, cap)?;
    let target = group.order() / BigUint::from(orbit.len());
    let index: HashMap<&Permutation, usize> =
        orbit.iter().enumerate().map(|(i, (y, _))| (y, i)).collect();
    let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    let mut h = PermGroup::trivial(group.degree());
    'outer: for (y, t) in &orbit {
        for g in &gens {
            if *h.order() == target {
                break 'outer;
            }
            let z = y.conjugate_by(g);
            let u = &orbit[index[&z]].1;
            let s = &(t * *g) * &u.inverse();
            if !s.is_identity() {
                h.extend(s)?;
            }
        }
    }
    debug_assert_eq!(*h.order(), target);
    Ok(Subgroup::from_group(h))
}

/// Z(G): members of G commuting with every generator, found by
/// intersecting centralisers of the generators.
pub fn centre(group: &PermGroup) -> Result<Subgroup> {
    let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    if group.is_abelian() {
        return Ok(Subgroup::from_group(group.clone()));
    }
    let mut current = group.clone();
    for g in gens {
        current = centraliser_within(&current, g, DEFAULT_CAP)?;
        if current.is_trivial() {
            break;
        }
    }
    Ok(Subgroup::from_group(current))
}

/// C_H(g) for g possibly outside H, by filtering H when small and by
/// intersecting with the centraliser in ⟨H, g⟩ otherwise.
fn centraliser_within(h: &PermGroup, g: &Permutation, cap: u64) -> Result<PermGroup> {
    if h.contains(g) {
        return Ok(centraliser(h, g, cap)?.into_group());
    }
    let big = h.extended([g.clone()])?;
    let c = centraliser(&big, g, cap)?;
    intersection(h, &c, cap)
}

/// H ∩ K by filtering the smaller of the two.
pub fn intersection(h: &PermGroup, k: &PermGroup, cap: u64) -> Result<PermGroup> {
    let (small, other) = if h.order() <= k.order() { (h, k) } else { (k, h) };
    let mut out = PermGroup::trivial(h.degree());
    for x in small.elements(cap)? {
        if other.contains(&x) && !out.contains(&x) {
            out.extend(x)?;
        }
    }
    Ok(out)
}

/// Smallest normal subgroup of `group` containing `gens`.
pub fn normal_closure(group: &PermGroup, gens: Vec<Permutation>) -> Result<PermGroup> {
    let mut n = PermGroup::trivial(group.degree());
    let mut pending = gens;
    let conj: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = pending.pop() {
        if x.is_identity() || n.contains(&x) {
            continue;
        }
        n.extend(x.clone())?;
        for g in &conj {
            pending.push(x.conjugate_by(g));
        }
    }
    Ok(n)
}

/// G' as the normal closure of commutators of generators.
pub fn derived_subgroup(group: &PermGroup) -> Result<PermGroup> {
    let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(group, comms)
}

pub fn derived_series(group: &PermGroup) -> Result<SeriesReport> {
    let mut orders = vec![group.order().clone()];
    let mut current = group.clone();
    loop {
        if current.is_trivial() {
            return Ok(SeriesReport {
                derived_length: Some(orders.len() - 1),
                orders,
                reaches_trivial: true,
            });
        }
        let next = derived_subgroup(&current)?;
        if next.order() == current.order() {
            return Ok(SeriesReport {
                orders,
                reaches_trivial: false,
                derived_length: None,
            });
        }
        orders.push(next.order().clone());
        current = next;
    }
}

pub fn is_soluble(group: &PermGroup) -> Result<bool> {
    Ok(derived_series(group)?.reaches_trivial)
}

/// One conjugacy class: its representative (the first member in
/// enumeration order) and size.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub representative: Permutation,
    pub size: u64,
}

pub fn conjugacy_representatives(group: &PermGroup, cap: u64) -> Result<Vec<ClassInfo>> {
    let order = order_u64_capped(group, cap)?;
    let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
    let mut seen = vec![false; order as usize];
    let mut classes = Vec::new();
    for x in group.elements(cap)? {
        let ix = element_index(group, &x).expect("member") as usize;
        if seen[ix] {
            continue;
        }
        seen[ix] = true;
        let mut queue = vec![x.clone()];
        let mut size = 1u64;
        while let Some(y) = queue.pop() {
            for g in &gens {
                let z = y.conjugate_by(g);
                let iz = element_index(group, &z).expect("member") as usize;
                if !seen[iz] {
                    seen[iz] = true;
                    size += 1;
                    queue.push(z);
                }
            }
        }
        classes.push(ClassInfo {
            representative: x,
            size,
        });
    }
    Ok(classes)
}

/// Whether every element of order p in the p-group P is central.
pub fn is_p_central(group: &PermGroup, p: u64, cap: u64) -> Result<bool> {
    let mut rest = group.order().clone();
    let bp = BigUint::from(p);
    while rest > BigUint::one() && (&rest % &bp).to_u64() == Some(0) {
        rest /= &bp;
    }
    if !rest.is_one() {
        return Err(Error::Precondition(format!(
            "group of order {} is not a {p}-group",
            group.order()
        )));
    }
    for x in group.elements(cap)? {
        if x.order_u64() == Some(p) && !group.generators().iter().all(|g| x.commutes_with(g)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every prime dividing |x| lies in π.
pub fn is_pi_element(x: &Permutation, pi: &PiSet) -> bool {
    x.order_primes().iter().all(|q| pi.contains(*q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(gens.iter().map(|s| cyc(n, s)).collect()).unwrap()
    }

    fn a5() -> PermGroup {
        group(5, &["(1,2,3,4,5)", "(1,2,3)"])
    }

    fn s4() -> PermGroup {
        group(4, &["(1,2,3,4)", "(1,2)"])
    }

    /// Brute-force conjugacy partition.
    fn brute_class_sizes(g: &PermGroup) -> Vec<u64> {
        let els = g.element_list(100_000).unwrap();
        let mut seen = HashSet::new();
        let mut sizes = Vec::new();
        for x in &els {
            if seen.contains(x) {
                continue;
            }
            let class: HashSet<Permutation> = els.iter().map(|t| x.conjugate_by(t)).collect();
            sizes.push(class.len() as u64);
            seen.extend(class);
        }
        sizes
    }

    fn brute_centraliser_order(g: &PermGroup, x: &Permutation) -> u64 {
        g.elements(100_000).unwrap().filter(|y| y.commutes_with(x)).count() as u64
    }

    #[test]
    fn centraliser_of_five_cycle_in_a5() {
        let g = a5();
        let x = cyc(5, "(1,2,3,4,5)");
        let c = centraliser(&g, &x, DEFAULT_CAP).unwrap();
        assert_eq!(c.order_u64(), Some(5));
        assert!(c.contains(&x));
        let c2 = centraliser_by_orbit(&g, &x, DEFAULT_CAP).unwrap();
        assert_eq!(c2.order_u64(), Some(5));
    }

    #[test]
    fn centraliser_of_identity_is_everything() {
        let g = a5();
        let c = centraliser(&g, &g.identity(), DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), g.order());
    }

    #[test]
    fn three_cycle_centraliser_in_a8_is_insoluble() {
        let g = PermGroup::new((3..=8).map(|i| cyc(8, &format!("(1,2,{i})"))).collect()).unwrap();
        let x = cyc(8, "(1,2,3)");
        let c = centraliser(&g, &x, DEFAULT_CAP).unwrap();
        assert_eq!(c.order_u64(), Some(180));
        assert!(c.contains(&cyc(8, "(4,5,6,7,8)")));
        assert!(!is_soluble(&c).unwrap());
        let c2 = centraliser_by_orbit(&g, &x, DEFAULT_CAP).unwrap();
        assert_eq!(c2.order_u64(), Some(180));
    }

    #[test]
    fn centres() {
        assert!(centre(&a5()).unwrap().is_trivial());
        let c = group(6, &["(1,2,3)", "(4,5)"]);
        assert_eq!(centre(&c).unwrap().order(), c.order());
        // SL(2,3) acting on the 8 nonzero vectors of GF(3)^2
        let sl23 = sl2_3();
        assert_eq!(sl23.order_u64(), Some(24));
        let z = centre(&sl23).unwrap();
        assert_eq!(z.order_u64(), Some(2));
        let brute = sl23
            .elements(100)
            .unwrap()
            .filter(|x| sl23.generators().iter().all(|g| x.commutes_with(g)))
            .count();
        assert_eq!(brute, 2);
    }

    pub(crate) fn sl2_3() -> PermGroup {
        // nonzero vectors of GF(3)^2 numbered 1..8, row vectors times matrix
        let vecs: Vec<(u8, u8)> =
            (0..9).map(|i| (i / 3, i % 3)).filter(|&(a, b)| (a, b) != (0, 0)).collect();
        let act = |m: [[u8; 2]; 2]| {
            let images: Vec<usize> = vecs
                .iter()
                .map(|&(a, b)| {
                    let c = (a * m[0][0] + b * m[1][0]) % 3;
                    let d = (a * m[0][1] + b * m[1][1]) % 3;
                    vecs.iter().position(|&v| v == (c, d)).unwrap() + 1
                })
                .collect();
            Permutation::from_one_based(&images).unwrap()
        };
        PermGroup::new(vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]).unwrap()
    }

    #[test]
    fn derived_series_examples() {
        let r = derived_series(&s4()).unwrap();
        assert_eq!(r.orders_u64(), vec![24, 12, 4, 1]);
        assert_eq!(r.derived_length, Some(3));
        let t = derived_series(&PermGroup::trivial(3)).unwrap();
        assert!(t.is_soluble());
        assert_eq!(t.derived_length, Some(0));
        let a = derived_series(&a5()).unwrap();
        assert!(!a.is_soluble());
        assert_eq!(a.orders_u64(), vec![60]);
    }

    #[test]
    fn class_sizes() {
        let mut sizes: Vec<u64> =
            conjugacy_representatives(&a5(), 100).unwrap().iter().map(|c| c.size).collect();
        let mut brute = brute_class_sizes(&a5());
        sizes.sort();
        brute.sort();
        assert_eq!(sizes, brute);
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        let mut s = conjugacy_representatives(&s3, 100)
            .unwrap()
            .iter()
            .map(|c| c.size)
            .collect::<Vec<_>>();
        s.sort();
        assert_eq!(s, vec![1, 2, 3]);
        let t = conjugacy_representatives(&PermGroup::trivial(2), 10).unwrap();
        assert_eq!(t.len(), 1);
        assert!(conjugacy_representatives(&a5(), 59).is_err());
    }

    #[test]
    fn class_times_centraliser() {
        for g in [a5(), s4(), sl2_3()] {
            for c in conjugacy_representatives(&g, 1000).unwrap() {
                let brute = brute_centraliser_order(&g, &c.representative);
                let cen = centraliser(&g, &c.representative, 1000).unwrap();
                assert_eq!(cen.order_u64(), Some(brute));
                assert_eq!(c.size * brute, g.order_u64().unwrap());
            }
        }
    }

    #[test]
    fn p_central() {
        let q8 = group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]);
        assert_eq!(q8.order_u64(), Some(8));
        assert!(is_p_central(&q8, 2, 100).unwrap());
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        assert!(!is_p_central(&d8, 2, 100).unwrap());
        let c9 = group(9, &["(1,2,3,4,5,6,7,8,9)"]);
        assert!(is_p_central(&c9, 3, 100).unwrap());
        assert!(is_p_central(&s4(), 2, 100).is_err());
    }

    #[test]
    fn pi_elements() {
        let x = cyc(5, "(1,2)(3,4,5)");
        assert!(is_pi_element(&x, &PiSet::new(&[2, 3]).unwrap()));
        assert!(!is_pi_element(&x, &PiSet::new(&[2]).unwrap()));
        assert!(is_pi_element(&Permutation::identity(3), &PiSet::new(&[7]).unwrap()));
    }

    #[test]
    fn element_index_is_a_bijection() {
        let g = s4();
        let idx: HashSet<u64> = g.elements(100).unwrap().map(|x| element_index(&g, &x).unwrap()).collect();
        assert_eq!(idx.len(), 24);
        assert!(idx.iter().all(|&i| i < 24));
    }
}

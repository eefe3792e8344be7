use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::permutation::{Permutation, MAX_DEGREE};
use crate::error::{Error, Result};

/// Index of a node in a group's straight-line program arena.
pub type SlpId = usize;

/// Straight-line program node. Every stored permutation in a BSGS carries
/// one, so any member can be rewritten in the input generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlpNode {
    Identity,
    Gen(usize),
    Inv(SlpId),
    Mul(SlpId, SlpId),
}

#[derive(Clone, Debug)]
struct Tracked {
    perm: Permutation,
    inv: Permutation,
    slp: SlpId,
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    position: Vec<Option<u32>>,
    reps: Vec<Tracked>,
}

/// A permutation group with a base and strong generating set.
///
/// Base points are chosen as smallest moved points and the construction is
/// the deterministic Schreier-Sims algorithm, so two builds from the same
/// generator list agree exactly.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    strong: Vec<Tracked>,
    levels: Vec<Level>,
    slp: Vec<SlpNode>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
            slp: vec![SlpNode::Identity],
            order: BigUint::one(),
        }
    }

    /// Builds the stabiliser chain for the group generated by `gens`.
    ///
    /// The generator list is kept verbatim (identities included) since
    /// modules and presentations index into it.
    pub fn new(gens: Vec<Permutation>) -> Result<PermGroup> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Precondition("empty generator list".into()))?;
        Self::with_degree(degree, gens)
    }

    pub fn with_degree(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree, MAX_DEGREE));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let mut group = PermGroup::trivial(degree);
        for (idx, g) in gens.iter().enumerate() {
            let node = group.push_node(SlpNode::Gen(idx));
            if g.is_identity() {
                continue;
            }
            let moved = group.levels.iter().position(|l| g.apply(l.base) != l.base);
            let top = match moved {
                Some(j) => j,
                None => {
                    let b = g.smallest_moved_point().expect("non-identity");
                    group.push_level(b);
                    group.levels.len() - 1
                }
            };
            let s = group.push_strong(g.clone(), node);
            for l in 0..=top {
                group.levels[l].gens.push(s);
            }
        }
        group.gens = gens;
        if !group.levels.is_empty() {
            group.schreier_sims(group.levels.len() - 1);
        }
        group.update_order();
        Ok(group)
    }

    fn push_node(&mut self, node: SlpNode) -> SlpId {
        self.slp.push(node);
        self.slp.len() - 1
    }

    fn push_strong(&mut self, perm: Permutation, slp: SlpId) -> usize {
        let inv = perm.inverse();
        self.strong.push(Tracked { perm, inv, slp });
        self.strong.len() - 1
    }

    fn push_level(&mut self, base: usize) {
        let mut position = vec![None; self.degree];
        position[base] = Some(0);
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u32],
            position,
            reps: vec![Tracked {
                perm: Permutation::identity(self.degree),
                inv: Permutation::identity(self.degree),
                slp: 0,
            }],
        });
    }

    fn compute_orbit(&mut self, lvl: usize) {
        let degree = self.degree;
        let mut nodes = Vec::new();
        {
            let strong = &self.strong;
            let level = &mut self.levels[lvl];
            let base = level.base;
            level.position = vec![None; degree];
            level.position[base] = Some(0);
            level.orbit = vec![base as u32];
            level.reps.truncate(1);
            let mut i = 0;
            while i < level.orbit.len() {
                let beta = level.orbit[i] as usize;
                for &s in &level.gens {
                    let gen = &strong[s];
                    let gamma = gen.perm.apply(beta);
                    if level.position[gamma].is_none() {
                        let from = &level.reps[i];
                        let perm = &from.perm * &gen.perm;
                        let inv = &gen.inv * &from.inv;
                        nodes.push((level.reps.len(), i, gen.slp));
                        level.position[gamma] = Some(level.orbit.len() as u32);
                        level.orbit.push(gamma as u32);
                        level.reps.push(Tracked { perm, inv, slp: 0 });
                    }
                }
                i += 1;
            }
        }
        for (idx, from, b) in nodes {
            let a = self.levels[lvl].reps[from].slp;
            let id = self.push_node(SlpNode::Mul(a, b));
            self.levels[lvl].reps[idx].slp = id;
        }
    }

    /// Sifts `g` through levels `start..`; returns the residue, the level at
    /// which sifting stopped and the transversal entries used.
    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize, Vec<(usize, usize)>) {
        let mut h = g.clone();
        let mut used = Vec::new();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base);
            match level.position[beta] {
                None => return (h, i, used),
                Some(ix) => {
                    let ix = ix as usize;
                    if ix != 0 {
                        h = &h * &level.reps[ix].inv;
                        used.push((i, ix));
                    }
                }
            }
        }
        (h, self.levels.len(), used)
    }

    fn schreier_sims(&mut self, top: usize) {
        let mut i = top as isize;
        while i >= 0 {
            let lvl = i as usize;
            self.compute_orbit(lvl);
            let mut dropped = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                for gi in 0..self.levels[lvl].gens.len() {
                    let level = &self.levels[lvl];
                    let s = &self.strong[level.gens[gi]];
                    let beta = level.orbit[oi] as usize;
                    let gamma = s.perm.apply(beta);
                    let gix = level.position[gamma].expect("orbit closed") as usize;
                    let from = &level.reps[oi];
                    let to = &level.reps[gix];
                    let h = &(&from.perm * &s.perm) * &to.inv;
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j, used) = self.sift_from(&h, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    let (from_slp, s_slp, to_slp) = (from.slp, s.slp, to.slp);
                    let mut node = self.push_node(SlpNode::Mul(from_slp, s_slp));
                    let inv_to = self.push_node(SlpNode::Inv(to_slp));
                    node = self.push_node(SlpNode::Mul(node, inv_to));
                    for (l, ix) in used {
                        let rep = self.levels[l].reps[ix].slp;
                        let inv = self.push_node(SlpNode::Inv(rep));
                        node = self.push_node(SlpNode::Mul(node, inv));
                    }
                    if j == self.levels.len() {
                        let b = residue.smallest_moved_point().expect("non-identity residue");
                        self.push_level(b);
                    }
                    let sidx = self.push_strong(residue, node);
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(sidx);
                    }
                    dropped = Some(j);
                    break 'scan;
                }
            }
            match dropped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    fn update_order(&mut self) {
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    /// Adds a generator; returns false (and leaves the group unchanged) when
    /// `g` is already a member.
    pub fn extend(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        let (residue, j, used) = self.sift_from(&g, 0);
        if residue.is_identity() {
            return Ok(false);
        }
        let idx = self.gens.len();
        self.gens.push(g);
        let mut node = self.push_node(SlpNode::Gen(idx));
        for (l, ix) in used {
            let rep = self.levels[l].reps[ix].slp;
            let inv = self.push_node(SlpNode::Inv(rep));
            node = self.push_node(SlpNode::Mul(node, inv));
        }
        if j == self.levels.len() {
            let b = residue.smallest_moved_point().expect("non-identity residue");
            self.push_level(b);
        }
        let sidx = self.push_strong(residue, node);
        for l in 0..=j {
            self.levels[l].gens.push(sidx);
        }
        self.schreier_sims(j);
        self.update_order();
        Ok(true)
    }

    /// Smallest group containing `self` and `gens`.
    pub fn extended(&self, gens: impl IntoIterator<Item = Permutation>) -> Result<PermGroup> {
        let mut g = self.clone();
        for x in gens {
            g.extend(x)?;
        }
        Ok(g)
    }

    /// A × B acting on the disjoint union of the two point sets, A first.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
        let d = a.degree + b.degree;
        let gens = a
            .gens
            .iter()
            .map(|g| g.extend_to(d))
            .chain(b.gens.iter().map(|g| g.shifted(a.degree, d)))
            .collect();
        PermGroup::with_degree(d, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<&Permutation> {
        self.strong.iter().map(|t| &t.perm).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting through the stabiliser chain.
    pub fn contains(&self, x: &Permutation) -> bool {
        if x.degree() != self.degree {
            return false;
        }
        let (residue, _, _) = self.sift_from(x, 0);
        residue.is_identity()
    }

    /// Straight-line program ids whose left-to-right product is `x`, or
    /// `None` when `x` is not a member.
    pub fn express(&self, x: &Permutation) -> Option<Vec<SlpId>> {
        if x.degree() != self.degree {
            return None;
        }
        let (residue, _, used) = self.sift_from(x, 0);
        if !residue.is_identity() {
            return None;
        }
        Some(
            used.into_iter()
                .rev()
                .map(|(l, ix)| self.levels[l].reps[ix].slp)
                .collect(),
        )
    }

    /// Transversal positions (one per level) of a member's sifting path.
    pub fn transversal_positions(&self, x: &Permutation) -> Option<Vec<usize>> {
        if x.degree() != self.degree {
            return None;
        }
        let mut h = x.clone();
        let mut out = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let ix = level.position[h.apply(level.base)]? as usize;
            if ix != 0 {
                h = &h * &level.reps[ix].inv;
            }
            out.push(ix);
        }
        h.is_identity().then_some(out)
    }

    pub fn slp_nodes(&self) -> &[SlpNode] {
        &self.slp
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Elements in lexicographic order of their base images.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>> {
        let order = self.order_u64().unwrap_or(u64::MAX);
        if order > cap {
            return Err(Error::cap(format!("|G| = {}", self.order), cap));
        }
        Ok(Elements::new(self))
    }

    pub fn element_list(&self, cap: u64) -> Result<Vec<Permutation>> {
        Ok(self.elements(cap)?.collect())
    }

    /// Element obtained from a product-replacement walk seeded by `seed`.
    pub fn random_element(&self, seed: u64) -> Permutation {
        RandomElements::new(self, seed).next_element()
    }

    pub fn random_elements(&self, seed: u64) -> RandomElements {
        RandomElements::new(self, seed)
    }

    /// Orbit of a 0-based point under the generators, in BFS order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.gens {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

/// Evaluates straight-line programs of a [`PermGroup`] in another group.
pub trait Representation {
    type Elem: Clone;

    fn identity(&self) -> Self::Elem;

    /// Image of generator `i` and of its inverse.
    fn generator(&self, i: usize) -> (Self::Elem, Self::Elem);

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Memoised evaluation of a group's straight-line programs.
pub struct SlpEvaluator<'a, R: Representation> {
    nodes: &'a [SlpNode],
    rep: &'a R,
    memo: Vec<Option<(R::Elem, R::Elem)>>,
    budget: usize,
    evaluated: usize,
}

impl<'a, R: Representation> SlpEvaluator<'a, R> {
    /// `budget` caps the number of node evaluations.
    pub fn new(group: &'a PermGroup, rep: &'a R, budget: usize) -> Self {
        SlpEvaluator {
            nodes: group.slp_nodes(),
            rep,
            memo: vec![None; group.slp_nodes().len()],
            budget,
            evaluated: 0,
        }
    }

    fn node(&mut self, id: SlpId) -> Result<(R::Elem, R::Elem)> {
        if let Some(v) = &self.memo[id] {
            return Ok(v.clone());
        }
        let mut stack = vec![id];
        while let Some(&top) = stack.last() {
            if self.memo[top].is_some() {
                stack.pop();
                continue;
            }
            let ready = match self.nodes[top] {
                SlpNode::Identity => {
                    let e = self.rep.identity();
                    Some((e.clone(), e))
                }
                SlpNode::Gen(i) => Some(self.rep.generator(i)),
                SlpNode::Inv(a) => match &self.memo[a] {
                    Some((x, xi)) => Some((xi.clone(), x.clone())),
                    None => {
                        stack.push(a);
                        None
                    }
                },
                SlpNode::Mul(a, b) => match (&self.memo[a], &self.memo[b]) {
                    (Some((x, xi)), Some((y, yi))) => {
                        Some((self.rep.mul(x, y), self.rep.mul(yi, xi)))
                    }
                    (None, _) => {
                        stack.push(a);
                        None
                    }
                    (_, None) => {
                        stack.push(b);
                        None
                    }
                },
            };
            if let Some(v) = ready {
                self.evaluated += 1;
                if self.evaluated > self.budget {
                    return Err(Error::NotExpressible(format!(
                        "straight-line program budget of {} nodes exhausted",
                        self.budget
                    )));
                }
                self.memo[top] = Some(v);
                stack.pop();
            }
        }
        Ok(self.memo[id].clone().expect("evaluated"))
    }

    /// Image of a product of nodes.
    pub fn evaluate(&mut self, word: &[SlpId]) -> Result<R::Elem> {
        let mut acc = self.rep.identity();
        for &id in word {
            let (v, _) = self.node(id)?;
            acc = self.rep.mul(&acc, &v);
        }
        Ok(acc)
    }
}

/// Iterator over the elements of a group, lexicographic in base images.
pub struct Elements<'a> {
    group: &'a PermGroup,
    stack: Vec<(Permutation, Vec<usize>)>,
    started: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermGroup) -> Self {
        Elements {
            group,
            stack: Vec::new(),
            started: false,
        }
    }

    fn frame(&self, depth: usize, prefix: Permutation) -> (Permutation, Vec<usize>) {
        let level = &self.group.levels[depth];
        let mut cands: Vec<usize> = (0..level.orbit.len()).collect();
        // popped from the back, so sort descending by image
        cands.sort_by_key(|&i| std::cmp::Reverse(prefix.apply(level.orbit[i] as usize)));
        (prefix, cands)
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let depth_total = self.group.levels.len();
        if !self.started {
            self.started = true;
            let id = self.group.identity();
            if depth_total == 0 {
                return Some(id);
            }
            let f = self.frame(0, id);
            self.stack.push(f);
        }
        loop {
            let depth = self.stack.len();
            if depth == 0 {
                return None;
            }
            let (prefix, cands) = self.stack.last_mut().expect("non-empty");
            let Some(ix) = cands.pop() else {
                self.stack.pop();
                continue;
            };
            let rep = &self.group.levels[depth - 1].reps[ix].perm;
            let child = rep * prefix;
            if depth == depth_total {
                return Some(child);
            }
            let f = self.frame(depth, child);
            self.stack.push(f);
        }
    }
}

/// Product-replacement random elements with a fixed initial state.
pub struct RandomElements {
    state: Vec<Permutation>,
    accumulator: Permutation,
    rng: ChaCha8Rng,
}

impl RandomElements {
    fn new(group: &PermGroup, seed: u64) -> Self {
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut state = Vec::new();
        if !gens.is_empty() {
            let len = gens.len().max(10);
            for i in 0..len {
                state.push(gens[i % gens.len()].clone());
            }
        }
        let mut r = RandomElements {
            state,
            accumulator: group.identity(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            r.step();
        }
        r
    }

    fn step(&mut self) {
        let n = self.state.len();
        if n < 2 {
            return;
        }
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            &self.state[i] * &other
        } else {
            &other * &self.state[i]
        };
        self.accumulator = &self.accumulator * &self.state[i];
    }

    pub fn next_element(&mut self) -> Permutation {
        self.step();
        self.accumulator.clone()
    }
}

impl Iterator for RandomElements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        Some(self.next_element())
    }
}

/// Generates a subgroup of `parent` containing `gens`, adding elements only
/// while they are new.
pub fn subgroup_from_elements<'a>(
    degree: usize,
    elements: impl IntoIterator<Item = &'a Permutation>,
    target_order: Option<&BigUint>,
) -> Result<PermGroup> {
    let mut h = PermGroup::trivial(degree);
    for x in elements {
        if let Some(t) = target_order {
            if h.order() == t {
                break;
            }
        }
        h.extend(x.clone())?;
    }
    Ok(h)
}

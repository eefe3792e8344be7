//! Non-commuting graphs: vertices are the non-central elements, edges join
//! pairs that do not commute.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grpstruct::{centraliser, centre, conjugacy_representatives, element_index, is_soluble};
use crate::perm::{PermGroup, Permutation};

/// Vertex count up to which an explicit adjacency bitmap is kept.
pub const MATERIALIZE_CAP: usize = 5000;

/// Vertex count up to which triangles are counted exactly.
pub const TRIANGLE_CAP: usize = 2000;

#[derive(Clone, Debug)]
pub struct NCGraph {
    group: PermGroup,
    order: u64,
    centre_order: u64,
    vertices: Vec<Permutation>,
    /// element index -> vertex position
    position: Vec<Option<u32>>,
    adjacency: Option<Vec<Vec<u64>>>,
}

pub fn build_ncgraph(group: &PermGroup, cap: u64) -> Result<NCGraph> {
    let order = match group.order_u64() {
        Some(o) if o <= cap => o,
        _ => return Err(Error::cap(format!("|G| = {}", group.order()), cap)),
    };
    let z = centre(group)?;
    let mut position = vec![None; order as usize];
    let mut vertices = Vec::new();
    for x in group.elements(cap)? {
        if !z.contains(&x) {
            let ix = element_index(group, &x).expect("member") as usize;
            position[ix] = Some(vertices.len() as u32);
            vertices.push(x);
        }
    }
    let adjacency = (vertices.len() <= MATERIALIZE_CAP).then(|| adjacency_bitmap(&vertices));
    Ok(NCGraph {
        group: group.clone(),
        order,
        centre_order: z.order_u64().expect("small"),
        vertices,
        position,
        adjacency,
    })
}

fn adjacency_bitmap(vertices: &[Permutation]) -> Vec<Vec<u64>> {
    let words = vertices.len().div_ceil(64);
    vertices
        .par_iter()
        .map(|x| {
            let mut row = vec![0u64; words];
            for (j, y) in vertices.iter().enumerate() {
                if !x.commutes_with(y) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect()
}

impl NCGraph {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn centre_order(&self) -> u64 {
        self.centre_order
    }

    /// Position of `x` in the vertex list.
    pub fn vertex(&self, x: &Permutation) -> Option<usize> {
        let ix = element_index(&self.group, x)? as usize;
        self.position.get(ix).copied().flatten().map(|p| p as usize)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        match &self.adjacency {
            Some(rows) => rows[i][j / 64] >> (j % 64) & 1 == 1,
            None => !self.vertices[i].commutes_with(&self.vertices[j]),
        }
    }

    /// |G| - |C_G(x)|.
    pub fn degree(&self, x: &Permutation) -> Result<u64> {
        self.vertex(x)
            .ok_or_else(|| Error::Precondition(format!("{x} is not a vertex")))?;
        let c = centraliser(&self.group, x, self.order)?;
        Ok(self.order - c.order_u64().expect("small"))
    }

    /// Neighbour count by testing every vertex.
    pub fn brute_degree(&self, i: usize) -> u64 {
        match &self.adjacency {
            Some(rows) => rows[i].iter().map(|w| w.count_ones() as u64).sum(),
            None => (0..self.vertices.len()).filter(|&j| self.adjacent(i, j)).count() as u64,
        }
    }

    /// Non-neighbours of `x` with the vertices isolated among them removed.
    pub fn lambda_star(&self, x: &Permutation) -> Result<GraphView> {
        let i = self
            .vertex(x)
            .ok_or_else(|| Error::Precondition(format!("{x} is not a vertex")))?;
        let non: Vec<usize> = (0..self.vertices.len()).filter(|&j| !self.adjacent(i, j)).collect();
        let keep: Vec<Permutation> = non
            .iter()
            .filter(|&&a| non.iter().any(|&b| self.adjacent(a, b)))
            .map(|&a| self.vertices[a].clone())
            .collect();
        Ok(GraphView { vertices: keep })
    }

    /// First pair (a, b), a running over class representatives and b over
    /// the vertices, with C(a) ∩ C(b) = Z(G).
    pub fn domination_pair(&self) -> Result<Option<(Permutation, Permutation)>> {
        if self.vertices.is_empty() {
            return Ok(None);
        }
        let reps = conjugacy_representatives(&self.group, self.order)?;
        let all: Vec<Permutation> = self.group.element_list(self.order)?;
        for rep in reps.iter().map(|c| &c.representative) {
            if self.vertex(rep).is_none() {
                continue;
            }
            let ca: Vec<&Permutation> = all.iter().filter(|g| g.commutes_with(rep)).collect();
            let found = self.vertices.iter().find(|b| {
                ca.iter().filter(|g| g.commutes_with(b)).count() as u64 == self.centre_order
            });
            if let Some(b) = found {
                return Ok(Some((rep.clone(), b.clone())));
            }
        }
        Ok(None)
    }

    /// Degree multiset as (degree, multiplicity), ascending in degree.
    pub fn degree_multiset(&self) -> Result<Vec<(u64, u64)>> {
        let mut runs: std::collections::BTreeMap<u64, u64> = Default::default();
        for c in conjugacy_representatives(&self.group, self.order)? {
            if self.vertex(&c.representative).is_some() {
                *runs.entry(self.degree(&c.representative)?).or_default() += c.size;
            }
        }
        Ok(runs.into_iter().collect())
    }

    /// Triangles, exact up to [`TRIANGLE_CAP`] vertices and otherwise
    /// estimated from `samples` seeded vertex triples.
    pub fn triangles(&self, samples: u64, seed: u64) -> TriangleCount {
        let n = self.vertices.len();
        if n <= TRIANGLE_CAP {
            let rows = match &self.adjacency {
                Some(r) => r,
                None => unreachable!("materialized below the triangle cap"),
            };
            let total: u64 = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut t = 0u64;
                    for j in i + 1..n {
                        if self.adjacent(i, j) {
                            // common neighbours k > j
                            let start = j + 1;
                            for w in start / 64..rows[i].len() {
                                let mut both = rows[i][w] & rows[j][w];
                                if w == start / 64 {
                                    both &= u64::MAX << (start % 64);
                                }
                                t += both.count_ones() as u64;
                            }
                        }
                    }
                    t
                })
                .sum();
            return TriangleCount { exact: true, value: total };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0u64;
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && b != c && a != c && self.adjacent(a, b) && self.adjacent(b, c) && self.adjacent(a, c) {
                hits += 1;
            }
        }
        let nf = n as f64;
        let triples = nf * (nf - 1.0) * (nf - 2.0) / 6.0;
        let estimate = hits as f64 / samples.max(1) as f64 * nf * nf * nf / 6.0;
        TriangleCount {
            exact: false,
            value: estimate.min(triples).round() as u64,
        }
    }

    pub fn fingerprint(&self, seed: u64) -> Result<Fingerprint> {
        Ok(Fingerprint {
            vertices: self.vertices.len(),
            degrees: self.degree_multiset()?,
            triangles: self.triangles(200_000, seed),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCount {
    pub exact: bool,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub vertices: usize,
    pub degrees: Vec<(u64, u64)>,
    pub triangles: TriangleCount,
}

/// Induced subgraph on an explicit vertex list; adjacency is commutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphView {
    pub vertices: Vec<Permutation>,
}

impl GraphView {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sorted_vertices(&self) -> Vec<Permutation> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn edge_count(&self) -> u64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| !self.vertices[i].commutes_with(&self.vertices[j])).count() as u64)
            .sum()
    }
}

/// Pair generating an insoluble subgroup: seeded random pairs first, then
/// class representatives against all elements when |G| ≤ cap.
pub fn two_generated_insoluble_witness(
    group: &PermGroup,
    trials: usize,
    seed: u64,
    cap: u64,
) -> Result<Option<(Permutation, Permutation)>> {
    if is_soluble(group)? {
        return Ok(None);
    }
    let insoluble = |x: &Permutation, y: &Permutation| -> Result<bool> {
        let h = PermGroup::with_degree(group.degree(), vec![x.clone(), y.clone()])?;
        Ok(!is_soluble(&h)?)
    };
    let mut rand = group.random_elements(seed);
    for _ in 0..trials {
        let x = rand.next_element();
        let y = rand.next_element();
        if insoluble(&x, &y)? {
            return Ok(Some((x, y)));
        }
    }
    if group.order().to_u64().is_none_or(|o| o > cap) {
        return Ok(None);
    }
    let reps = conjugacy_representatives(group, cap)?;
    for x in reps.iter().map(|c| &c.representative) {
        for y in group.elements(cap)? {
            if insoluble(x, &y)? {
                return Ok(Some((x.clone(), y)));
            }
        }
    }
    Ok(None)
}

//! Modules over GF(p) for permutation groups: fixed points, irreducibility,
//! vector stabilisers, derivations and H¹.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::catalogue::embedding::DeletedShape;
use crate::catalogue::matgroup::projective_points;
use crate::catalogue::presentation::Presentation;
use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::grpstruct::{is_soluble, Subgroup};
use crate::linalg::{left_kernel, rank, vec_add, vec_mul, vec_sub, Matrix, RowSpace};
use crate::perm::{PermGroup, Permutation, Representation, SlpEvaluator};

/// Node budget when rewriting subgroup elements in the module generators.
pub const SLP_BUDGET: usize = 1 << 20;

/// A right GF(p)G-module: row vectors times one matrix per generator of
/// `group`, in generator order.
#[derive(Clone, Debug)]
pub struct GModule {
    field: Arc<FieldSpec>,
    group: PermGroup,
    matrices: Vec<Matrix>,
    inverses: Vec<Matrix>,
    points: Option<usize>,
}

impl GModule {
    pub fn new(group: &PermGroup, p: u64, matrices: Vec<Matrix>) -> Result<GModule> {
        let field = FieldSpec::new(p)?;
        if field.k() != 1 {
            return Err(Error::Precondition(format!("modules are over prime fields, got q = {p}")));
        }
        if matrices.len() != group.generators().len() {
            return Err(Error::Precondition(format!(
                "{} matrices for {} generators",
                matrices.len(),
                group.generators().len()
            )));
        }
        let d = matrices.first().map_or(0, |m| m.rows());
        if matrices.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::Precondition("generator matrices must be square of one size".into()));
        }
        let inverses = matrices.iter().map(|m| m.inverse(&field)).collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            field,
            group: group.clone(),
            matrices,
            inverses,
            points: None,
        })
    }

    pub fn trivial(group: &PermGroup, p: u64, dim: usize) -> Result<GModule> {
        GModule::new(group, p, vec![Matrix::identity(dim); group.generators().len()])
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn inverses(&self) -> &[Matrix] {
        &self.inverses
    }

    /// Degree of the permutation module this came from, if any.
    pub fn permutation_degree(&self) -> Option<usize> {
        self.points
    }

    pub fn act(&self, v: &[u32], generator: usize) -> Vec<u32> {
        vec_mul(v, &self.matrices[generator], &self.field)
    }

    /// Matrix of an arbitrary group element, through its straight-line
    /// program in the generators.
    pub fn matrix_of(&self, x: &Permutation) -> Result<Matrix> {
        Ok(self.matrices_of(std::slice::from_ref(x))?.remove(0))
    }

    pub fn matrices_of(&self, xs: &[Permutation]) -> Result<Vec<Matrix>> {
        let mut eval = SlpEvaluator::new(&self.group, self, SLP_BUDGET);
        xs.iter()
            .map(|x| {
                let word = self
                    .group
                    .express(x)
                    .ok_or_else(|| Error::NotExpressible(format!("{x} is not in the acting group")))?;
                eval.evaluate(&word)
            })
            .collect()
    }

    /// Reads `dim d`, `p <prime>`, then d×d matrices row by row, one per
    /// generator of `group`.
    pub fn parse(text: &str, group: &PermGroup) -> Result<GModule> {
        let mut dim = None;
        let mut p = None;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: cannot parse `{line}`", lineno + 1));
            if let Some(rest) = line.strip_prefix("dim") {
                dim = Some(rest.trim().parse::<usize>().map_err(|_| bad())?);
            } else if let Some(rest) = line.strip_prefix('p') {
                p = Some(rest.trim().parse::<u64>().map_err(|_| bad())?);
            } else {
                for tok in line.split_whitespace() {
                    entries.push(tok.parse::<u32>().map_err(|_| bad())?);
                }
            }
        }
        let d = dim.ok_or_else(|| Error::Parse("missing `dim` line".into()))?;
        let p = p.ok_or_else(|| Error::Parse("missing `p` line".into()))?;
        let r = group.generators().len();
        if entries.len() != r * d * d {
            return Err(Error::Parse(format!(
                "expected {} entries for {r} matrices of size {d}, found {}",
                r * d * d,
                entries.len()
            )));
        }
        if let Some(&e) = entries.iter().find(|&&e| e as u64 >= p) {
            return Err(Error::Parse(format!("entry {e} not reduced mod {p}")));
        }
        let matrices = entries
            .chunks(d * d.max(1))
            .take(r)
            .map(|c| Matrix::from_rows(c.chunks(d.max(1)).map(|row| row.to_vec()).collect()))
            .collect::<Result<Vec<_>>>()?;
        GModule::new(group, p, matrices)
    }

    pub fn format(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str(&format!("# {c}\n"));
        }
        out.push_str(&format!("dim {}\np {}\n", self.dim(), self.p()));
        for (i, m) in self.matrices.iter().enumerate() {
            out.push_str(&format!("# generator {}\n", i + 1));
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

impl Representation for GModule {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        Matrix::identity(self.dim())
    }

    fn generator(&self, i: usize) -> (Matrix, Matrix) {
        (self.matrices[i].clone(), self.inverses[i].clone())
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b, &self.field)
    }
}

/// Natural permutation module: e_i · g = e_{g(i)}.
pub fn permutation_module(group: &PermGroup, p: u64) -> Result<GModule> {
    let n = group.degree();
    let matrices = group
        .generators()
        .iter()
        .map(|g| {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                m.set(i, g.apply(i), 1);
            }
            m
        })
        .collect();
    let mut m = GModule::new(group, p, matrices)?;
    m.points = Some(n);
    Ok(m)
}

/// Sum-zero submodule of a permutation module, taken modulo the all-ones
/// vector when p divides the degree.
pub fn deleted_submodule(module: &GModule) -> Result<GModule> {
    let n = module
        .points
        .ok_or_else(|| Error::Precondition("not a permutation module".into()))?;
    let shape = DeletedShape::new(n, module.p());
    let matrices = module.group.generators().iter().map(|g| shape.matrix(g, &module.field)).collect();
    GModule::new(&module.group, module.p() as u64, matrices)
}

/// Deleted permutation module of `group` over GF(p).
pub fn deleted_module(group: &PermGroup, p: u64) -> Result<GModule> {
    deleted_submodule(&permutation_module(group, p)?)
}

/// What to take fixed points of.
#[derive(Clone, Copy, Debug)]
pub enum Acting<'a> {
    /// Indices into the module's generators.
    Generators(&'a [usize]),
    /// A subgroup of the acting group.
    Subgroup(&'a PermGroup),
}

/// Basis (reduced echelon) of the common fixed points.
pub fn fixed_subspace(module: &GModule, acting: Acting<'_>) -> Result<Vec<Vec<u32>>> {
    let mats: Vec<Matrix> = match acting {
        Acting::Generators(ix) => ix
            .iter()
            .map(|&i| {
                module
                    .matrices
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Precondition(format!("no generator {i}")))
            })
            .collect::<Result<_>>()?,
        Acting::Subgroup(h) => module.matrices_of(h.generators())?,
    };
    Ok(fixed_points_of(&mats, module.dim(), &module.field))
}

fn fixed_points_of(mats: &[Matrix], d: usize, f: &FieldSpec) -> Vec<Vec<u32>> {
    if mats.is_empty() {
        return RowSpace::full(d).basis().to_vec();
    }
    // v (M_1 - 1 | M_2 - 1 | ...) = 0
    let id = Matrix::identity(d);
    let blocks: Vec<Matrix> = mats.iter().map(|m| m.sub(&id, f)).collect();
    let mut big = Matrix::zeros(d, d * blocks.len());
    for (b, m) in blocks.iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                big.set(r, b * d + c, m.get(r, c));
            }
        }
    }
    RowSpace::spanned_by(d, &left_kernel(&big, f), f).basis().to_vec()
}

/// Smallest submodule containing `seeds`.
pub fn spin(module: &GModule, seeds: &[Vec<u32>]) -> RowSpace {
    let f = &module.field;
    let mut space = RowSpace::zero(module.dim());
    let mut queue: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if space.insert(s, f) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for m in &module.matrices {
            let w = vec_mul(&v, m, f);
            if space.insert(&w, f) {
                queue.push(w);
            }
        }
    }
    space
}

#[derive(Clone, Debug)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// Basis of a proper nonzero submodule when reducible.
    pub witness: Option<Vec<Vec<u32>>>,
}

/// Spins every projective point; the module is reducible iff one of them
/// generates a proper submodule.
pub fn is_irreducible(module: &GModule, cap: u64) -> Result<Irreducibility> {
    let d = module.dim();
    let size = (module.p() as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::cap(format!("p^d = {size}"), cap));
    }
    for seed in projective_points(&module.field, d) {
        let s = spin(module, &[seed]);
        if s.dim() < d {
            return Ok(Irreducibility {
                irreducible: false,
                witness: Some(s.basis().to_vec()),
            });
        }
    }
    Ok(Irreducibility {
        irreducible: d > 0,
        witness: None,
    })
}

fn encode(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

fn decode(mut code: usize, p: u32, d: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    for x in v.iter_mut().rev() {
        *x = (code % p as usize) as u32;
        code /= p as usize;
    }
    v
}

/// Orbit of `v`, each point with a group element carrying `v` to it.
fn orbit_with_transversal(
    group: &PermGroup,
    module: &GModule,
    v: &[u32],
    cap: u64,
) -> Result<(Vec<Vec<u32>>, Vec<Permutation>, HashMap<Vec<u32>, usize>)> {
    let gens = group.generators();
    let mut orbit = vec![v.to_vec()];
    let mut reps = vec![group.identity()];
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    index.insert(v.to_vec(), 0);
    let mut i = 0;
    while i < orbit.len() {
        for (j, g) in gens.iter().enumerate() {
            let w = module.act(&orbit[i], j);
            if !index.contains_key(&w) {
                if orbit.len() as u64 >= cap {
                    return Err(Error::cap("vector orbit length", cap));
                }
                index.insert(w.clone(), orbit.len());
                reps.push(&reps[i] * g);
                orbit.push(w);
            }
        }
        i += 1;
    }
    Ok((orbit, reps, index))
}

#[derive(Clone, Debug)]
pub struct VectorStabiliser {
    pub orbit_size: usize,
    pub stabiliser: Subgroup,
}

/// Stabiliser of `v` from Schreier generators u_w g u_{wg}^{-1} of its
/// orbit, stopping once |orbit| · |Stab| = |G|.
pub fn vector_stabiliser(group: &PermGroup, module: &GModule, v: &[u32], cap: u64) -> Result<VectorStabiliser> {
    check_acting(group, module)?;
    if v.len() != module.dim() || v.iter().all(|&x| x == 0) {
        return Err(Error::Precondition("vector must be nonzero of the module dimension".into()));
    }
    let (orbit, reps, index) = orbit_with_transversal(group, module, v, cap)?;
    stabiliser_from_orbit(group, module, &orbit, &reps, &index)
}

fn stabiliser_from_orbit(
    group: &PermGroup,
    module: &GModule,
    orbit: &[Vec<u32>],
    reps: &[Permutation],
    index: &HashMap<Vec<u32>, usize>,
) -> Result<VectorStabiliser> {
    let target = group.order() / orbit.len();
    let mut stab = PermGroup::trivial(group.degree());
    'outer: for (i, w) in orbit.iter().enumerate() {
        for (j, g) in group.generators().iter().enumerate() {
            if *stab.order() == target {
                break 'outer;
            }
            let k = index[&module.act(w, j)];
            let s = &(&reps[i] * g) * &reps[k].inverse();
            if !s.is_identity() {
                stab.extend(s)?;
            }
        }
    }
    if *stab.order() != target {
        return Err(Error::Data("stabiliser order disagrees with the orbit length".into()));
    }
    Ok(VectorStabiliser {
        orbit_size: orbit.len(),
        stabiliser: Subgroup::from_group(stab),
    })
}

fn check_acting(group: &PermGroup, module: &GModule) -> Result<()> {
    if group.generators() != module.group.generators() {
        return Err(Error::Precondition("module is not defined on this group's generators".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub representative: Vec<u32>,
    pub size: usize,
    pub stabiliser_order: u64,
    pub stabiliser_soluble: bool,
}

#[derive(Clone, Debug)]
pub struct ModuleScan {
    pub all_soluble: bool,
    /// First orbit representative with an insoluble stabiliser.
    pub witness: Option<Vec<u32>>,
    pub witness_stabiliser: Option<Subgroup>,
    /// Orbits examined, in order of their lexicographically first vector.
    pub orbits: Vec<OrbitSummary>,
}

/// Walks the nonzero vectors in lexicographic order, one representative
/// per orbit, and tests each stabiliser for solubility.
pub fn module_scan_soluble_stabilisers(group: &PermGroup, module: &GModule, cap: u64) -> Result<ModuleScan> {
    check_acting(group, module)?;
    let d = module.dim();
    let p = module.p();
    let size = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(Error::cap(format!("p^d = {size}"), cap));
    }
    let mut seen = vec![false; size as usize];
    seen[0] = true;
    let mut orbits = Vec::new();
    for code in 1..size as usize {
        if seen[code] {
            continue;
        }
        let v = decode(code, p, d);
        let (orbit, reps, index) = orbit_with_transversal(group, module, &v, cap)?;
        for w in &orbit {
            seen[encode(w, p)] = true;
        }
        let st = stabiliser_from_orbit(group, module, &orbit, &reps, &index)?;
        let soluble = is_soluble(&st.stabiliser)?;
        orbits.push(OrbitSummary {
            representative: v.clone(),
            size: orbit.len(),
            stabiliser_order: st.stabiliser.order().to_u64().unwrap_or(u64::MAX),
            stabiliser_soluble: soluble,
        });
        if !soluble {
            return Ok(ModuleScan {
                all_soluble: false,
                witness: Some(v),
                witness_stabiliser: Some(st.stabiliser),
                orbits,
            });
        }
    }
    Ok(ModuleScan {
        all_soluble: true,
        witness: None,
        witness_stabiliser: None,
        orbits,
    })
}

/// Z¹, B¹ and H¹ dimensions, with derivations written as the tuple of
/// generator images (δ(x_1), ..., δ(x_r)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationSpace {
    pub p: u32,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub z1_basis: Vec<Vec<Vec<u32>>>,
}

fn check_presentation(pres: &Presentation, module: &GModule) -> Result<()> {
    if pres.generators != module.matrices.len() {
        return Err(Error::Precondition(format!(
            "presentation has {} generators, module has {} matrices",
            pres.generators,
            module.matrices.len()
        )));
    }
    Ok(())
}

/// Linear conditions on (δ(x_1), ..., δ(x_r)) imposed by δ(w) = 0, with
/// δ(gh) = δ(g) + δ(h)·ρ(g⁻¹) and δ(x⁻¹) = -δ(x)·ρ(x). Column block j
/// of the result holds the coefficient matrix of δ(x_j).
fn fox_matrix(word: &[i32], module: &GModule) -> Vec<Matrix> {
    let f = &module.field;
    let d = module.dim();
    let mut coeff = vec![Matrix::zeros(d, d); module.matrices.len()];
    // ρ(prefix⁻¹), prefix = letters before the current one
    let mut back = Matrix::identity(d);
    for &l in word {
        let j = l.unsigned_abs() as usize - 1;
        let (m, mi) = (&module.matrices[j], &module.inverses[j]);
        if l > 0 {
            coeff[j] = coeff[j].add(&back, f);
            back = mi.mul(&back, f);
        } else {
            // δ(x⁻¹)·ρ(prefix⁻¹) = -δ(x)·ρ(x)·ρ(prefix⁻¹)
            let t = m.mul(&back, f);
            coeff[j] = coeff[j].sub(&t, f);
            back = m.mul(&back, f);
        }
    }
    coeff
}

pub fn derivation_space(pres: &Presentation, module: &GModule) -> Result<DerivationSpace> {
    check_presentation(pres, module)?;
    let f = &module.field;
    let d = module.dim();
    let r = pres.generators;
    // unknown row vector (δ(x_1) | ... | δ(x_r)) times this = 0
    let mut system = Matrix::zeros(r * d, d * pres.relators.len());
    for (k, w) in pres.relators.iter().enumerate() {
        for (j, c) in fox_matrix(w, module).iter().enumerate() {
            for a in 0..d {
                for b in 0..d {
                    system.set(j * d + a, k * d + b, c.get(a, b));
                }
            }
        }
    }
    let z1 = RowSpace::spanned_by(r * d, &left_kernel(&system, f), f);
    // v ↦ (v(ρ(x_j⁻¹) - 1))_j
    let id = Matrix::identity(d);
    let mut inner = Matrix::zeros(d, r * d);
    for (j, mi) in module.inverses.iter().enumerate() {
        let m = mi.sub(&id, f);
        for a in 0..d {
            for b in 0..d {
                inner.set(a, j * d + b, m.get(a, b));
            }
        }
    }
    let dim_b1 = rank(&inner, f);
    let z1_basis = z1
        .basis()
        .iter()
        .map(|row| row.chunks(d.max(1)).map(|c| c.to_vec()).collect())
        .collect();
    Ok(DerivationSpace {
        p: module.p(),
        dim_z1: z1.dim(),
        dim_b1,
        dim_h1: z1.dim() - dim_b1,
        z1_basis,
    })
}

/// Inner derivation of `v` on the generators: δ_v(x_j) = v(ρ(x_j⁻¹) - 1).
pub fn inner_derivation(module: &GModule, v: &[u32]) -> Vec<Vec<u32>> {
    module
        .inverses
        .iter()
        .map(|mi| vec_sub(&vec_mul(v, mi, &module.field), v, &module.field))
        .collect()
}

/// Counts tuples (v_1, ..., v_r) for which the affine maps
/// x ↦ xρ(x_j) + v_j satisfy every relator, by running through all of V^r.
pub fn complement_count_oracle(pres: &Presentation, module: &GModule, cap: u64) -> Result<u64> {
    check_presentation(pres, module)?;
    let f = &module.field;
    let d = module.dim();
    let r = pres.generators;
    let p = module.p();
    let total = (p as u64).checked_pow((d * r) as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::cap(format!("p^(d·r) = {total}"), cap));
    }
    let mut rels = pres.relators.clone();
    rels.sort_by_key(|w| w.len());
    let mut count = 0u64;
    for code in 0..total as usize {
        let flat = decode(code, p, d * r);
        let tr: Vec<&[u32]> = flat.chunks(d.max(1)).collect();
        // translation part of the inverse affine map: -v ρ(x)⁻¹
        let tr_inv: Vec<Vec<u32>> = (0..r)
            .map(|j| {
                let t = vec_mul(tr[j], &module.inverses[j], f);
                t.iter().map(|&x| f.neg(x)).collect()
            })
            .collect();
        let ok = rels.iter().all(|w| {
            let mut t = vec![0u32; d];
            for &l in w {
                let j = l.unsigned_abs() as usize - 1;
                t = if l > 0 {
                    vec_add(&vec_mul(&t, &module.matrices[j], f), tr[j], f)
                } else {
                    vec_add(&vec_mul(&t, &module.inverses[j], f), &tr_inv[j], f)
                };
            }
            t.iter().all(|&x| x == 0)
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// V ⋊ G acting on the p^d vectors by x ↦ xρ(g) + v.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub group: PermGroup,
    /// Translations by the standard basis vectors.
    pub translations: Vec<Permutation>,
    /// Linear maps of the module generators.
    pub linear: Vec<Permutation>,
}

pub fn affine_group(module: &GModule, cap: u64) -> Result<AffineGroup> {
    let f = &module.field;
    let d = module.dim();
    let p = module.p();
    let size = (p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    if size > cap || size as usize > crate::perm::MAX_DEGREE {
        return Err(Error::cap(format!("p^d = {size}"), cap.min(crate::perm::MAX_DEGREE as u64)));
    }
    let vectors: Vec<Vec<u32>> = (0..size as usize).map(|c| decode(c, p, d)).collect();
    let perm_of = |map: &dyn Fn(&[u32]) -> Vec<u32>| {
        Permutation::from_images(vectors.iter().map(|v| encode(&map(v), p) as u32).collect())
    };
    let translations = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            perm_of(&|v| vec_add(v, &e, f))
        })
        .collect::<Result<Vec<_>>>()?;
    let linear = module
        .matrices
        .iter()
        .map(|m| perm_of(&|v| vec_mul(v, m, f)))
        .collect::<Result<Vec<_>>>()?;
    let mut gens = linear.clone();
    gens.extend(translations.iter().cloned());
    let group = PermGroup::with_degree(size as usize, gens)?;
    Ok(AffineGroup {
        group,
        translations,
        linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{self, shipped_presentation};
    use proptest::prelude::*;

    fn a5() -> PermGroup {
        shipped_presentation("A5").unwrap().group
    }

    /// Orbit and stabiliser by running over all elements.
    fn brute_orbit_stabiliser(g: &PermGroup, m: &GModule, v: &[u32]) -> (usize, u64) {
        let els = g.element_list(1 << 20).unwrap();
        let mats = m.matrices_of(&els).unwrap();
        let mut orbit: Vec<Vec<u32>> = mats.iter().map(|x| vec_mul(v, x, m.field())).collect();
        let stab = orbit.iter().filter(|w| w.as_slice() == v).count() as u64;
        orbit.sort();
        orbit.dedup();
        (orbit.len(), stab)
    }

    #[test]
    fn permutation_module_shape() {
        let g = a5();
        let m = permutation_module(&g, 2).unwrap();
        assert_eq!(m.dim(), 5);
        for x in m.matrices() {
            for r in 0..5 {
                assert_eq!(x.row(r).iter().filter(|&&e| e == 1).count(), 1);
                assert_eq!(x.row(r).iter().filter(|&&e| e == 0).count(), 4);
            }
        }
        assert_eq!(deleted_submodule(&m).unwrap().dim(), 4);
        let a6 = catalogue::alternating(6).unwrap();
        assert_eq!(deleted_module(&a6, 3).unwrap().dim(), 4);
        assert!(deleted_submodule(&GModule::trivial(&g, 2, 1).unwrap()).is_err());
    }

    #[test]
    fn action_matches_permutation_product() {
        // e_i · ρ(x) = e_{x(i)} for random elements, through the SLP route
        let g = catalogue::alternating(7).unwrap();
        let m = permutation_module(&g, 3).unwrap();
        for (k, x) in g.random_elements(5).take(20).enumerate() {
            let mx = m.matrix_of(&x).unwrap();
            let i = k % 7;
            let mut e = vec![0; 7];
            e[i] = 1;
            let mut want = vec![0; 7];
            want[x.apply(i)] = 1;
            assert_eq!(vec_mul(&e, &mx, m.field()), want);
        }
    }

    #[test]
    fn fixed_subspaces() {
        let g = a5();
        let dm = deleted_module(&g, 2).unwrap();
        assert!(fixed_subspace(&dm, Acting::Generators(&[0, 1])).unwrap().is_empty());
        assert_eq!(fixed_subspace(&dm, Acting::Generators(&[])).unwrap().len(), 4);
        let t = GModule::trivial(&g, 3, 2).unwrap();
        assert_eq!(fixed_subspace(&t, Acting::Subgroup(&g)).unwrap().len(), 2);
        // the full permutation module fixes the all-ones vector only
        let pm = permutation_module(&g, 2).unwrap();
        assert_eq!(fixed_subspace(&pm, Acting::Subgroup(&g)).unwrap(), vec![vec![1; 5]]);
        // <(1,2,3)> fixes e_4 - e_5 direction and more
        let h = PermGroup::with_degree(5, vec![Permutation::parse_cycles(5, "(1,2,3)").unwrap()]).unwrap();
        let fx = fixed_subspace(&pm, Acting::Subgroup(&h)).unwrap();
        assert_eq!(fx.len(), 3);
    }

    #[test]
    fn irreducibility() {
        let g = a5();
        let pm = permutation_module(&g, 2).unwrap();
        let r = is_irreducible(&pm, 1 << 20).unwrap();
        assert!(!r.irreducible);
        let w = r.witness.unwrap();
        assert!(!w.is_empty() && w.len() < 5);
        let sub = spin(&pm, &w);
        assert_eq!(sub.dim(), w.len());
        assert!(is_irreducible(&deleted_module(&g, 3).unwrap(), 1 << 20).unwrap().irreducible);
        assert!(is_irreducible(&GModule::trivial(&g, 5, 1).unwrap(), 10).unwrap().irreducible);
        assert!(is_irreducible(&pm, 10).unwrap_err().is_cap());
    }

    #[test]
    fn sum_zero_is_the_only_four_dim_submodule_witness() {
        let g = a5();
        let pm = permutation_module(&g, 2).unwrap();
        // spin of e_1 + e_2 is the sum-zero subspace
        let s = spin(&pm, &[vec![1, 1, 0, 0, 0]]);
        assert_eq!(s.dim(), 4);
        assert!(s.basis().iter().all(|v| v.iter().sum::<u32>() % 2 == 0));
    }

    #[test]
    fn a5_deleted_f3_stabiliser() {
        let g = a5();
        let m = deleted_module(&g, 3).unwrap();
        let v = vec![1, 2, 0, 0]; // e_1 - e_2
        let st = vector_stabiliser(&g, &m, &v, 1 << 20).unwrap();
        assert_eq!(st.orbit_size, 20);
        assert_eq!(st.stabiliser.order_u64(), Some(3));
        assert_eq!(brute_orbit_stabiliser(&g, &m, &v), (20, 3));
        let mv = m.matrices_of(st.stabiliser.generators()).unwrap();
        assert!(mv.iter().all(|x| vec_mul(&v, x, m.field()) == v));
    }

    #[test]
    fn a8_deleted_f3_stabiliser() {
        let g = catalogue::alternating(8).unwrap();
        let m = deleted_module(&g, 3).unwrap();
        assert_eq!(m.dim(), 7);
        let mut v = vec![0; 7];
        v[0] = 1;
        v[1] = 2;
        let st = vector_stabiliser(&g, &m, &v, 1 << 20).unwrap();
        assert_eq!(st.orbit_size, 56);
        assert_eq!(st.stabiliser.order_u64(), Some(360));
        assert!(!is_soluble(&st.stabiliser).unwrap());
        let scan = module_scan_soluble_stabilisers(&g, &m, 1 << 20).unwrap();
        assert!(!scan.all_soluble);
        let w = scan.witness.unwrap();
        let sw = scan.witness_stabiliser.unwrap();
        assert!(!is_soluble(&sw).unwrap());
        assert_eq!(vector_stabiliser(&g, &m, &w, 1 << 20).unwrap().stabiliser.order(), sw.order());
    }

    #[test]
    fn trivial_action_scans() {
        let g = a5();
        let t = GModule::trivial(&g, 2, 2).unwrap();
        let st = vector_stabiliser(&g, &t, &[1, 0], 100).unwrap();
        assert_eq!(st.orbit_size, 1);
        assert_eq!(st.stabiliser.order_u64(), Some(60));
        assert!(!module_scan_soluble_stabilisers(&g, &t, 100).unwrap().all_soluble);
        let s4 = catalogue::symmetric(4).unwrap();
        let t4 = GModule::trivial(&s4, 3, 2).unwrap();
        let scan = module_scan_soluble_stabilisers(&s4, &t4, 100).unwrap();
        assert!(scan.all_soluble);
        assert_eq!(scan.orbits.len(), 8);
    }

    #[test]
    fn a5_deleted_f3_scan() {
        let g = a5();
        let m = deleted_module(&g, 3).unwrap();
        let scan = module_scan_soluble_stabilisers(&g, &m, 1 << 20).unwrap();
        assert!(scan.all_soluble);
        assert_eq!(scan.orbits.iter().map(|o| o.size).sum::<usize>(), 80);
        for o in &scan.orbits {
            assert_eq!(o.size as u64 * o.stabiliser_order, 60);
        }
    }

    #[test]
    fn cyclic_of_order_two() {
        let c2 = PermGroup::new(vec![Permutation::parse_cycles(2, "(1,2)").unwrap()]).unwrap();
        let p = Presentation::new(1, vec![vec![1, 1]]).unwrap();
        let t = GModule::trivial(&c2, 2, 1).unwrap();
        let ds = derivation_space(&p, &t).unwrap();
        assert_eq!((ds.dim_z1, ds.dim_b1, ds.dim_h1), (1, 0, 1));
        assert_eq!(complement_count_oracle(&p, &t, 100).unwrap(), 2);
    }

    #[test]
    fn perfect_group_trivial_module() {
        let pg = shipped_presentation("A5").unwrap();
        for p in [2, 3, 5] {
            let t = GModule::trivial(&pg.group, p, 1).unwrap();
            let ds = derivation_space(&pg.presentation, &t).unwrap();
            assert_eq!(ds.dim_z1, 0);
            assert_eq!(ds.dim_h1, 0);
            assert_eq!(complement_count_oracle(&pg.presentation, &t, 100).unwrap(), 1);
        }
    }

    #[test]
    fn derivations_satisfy_relators_and_inner_ones_lie_in_z1() {
        let pg = shipped_presentation("A5").unwrap();
        let m = deleted_module(&pg.group, 2).unwrap();
        let ds = derivation_space(&pg.presentation, &m).unwrap();
        assert_eq!(ds.dim_b1, 4);
        let count = complement_count_oracle(&pg.presentation, &m, 1 << 20).unwrap();
        assert_eq!(count, 2u64.pow(ds.dim_z1 as u32));
        let f = m.field().clone();
        let z1 = RowSpace::spanned_by(
            8,
            &ds.z1_basis.iter().map(|t| t.concat()).collect::<Vec<_>>(),
            &f,
        );
        for v in [[1, 0, 0, 0], [0, 1, 1, 0], [1, 1, 1, 1]] {
            assert!(z1.contains(&inner_derivation(&m, &v).concat(), &f));
        }
    }

    #[test]
    fn mismatched_presentation_rejected() {
        let g = a5();
        let t = GModule::trivial(&g, 2, 1).unwrap();
        let p = Presentation::new(3, vec![]).unwrap();
        assert!(derivation_space(&p, &t).is_err());
        assert!(complement_count_oracle(&p, &t, 100).is_err());
    }

    #[test]
    fn module_file_round_trip() {
        let g = a5();
        let m = deleted_module(&g, 3).unwrap();
        let back = GModule::parse(&m.format(&["A5 deleted"]), &g).unwrap();
        assert_eq!(back.matrices(), m.matrices());
        assert!(GModule::parse("dim 2\np 3\n1 0\n0 1\n", &g).is_err());
        assert!(GModule::parse("dim 1\np 4\n1\n1\n", &g).is_err());
    }

    #[test]
    fn affine_group_order() {
        let g = a5();
        let m = deleted_module(&g, 2).unwrap();
        let a = affine_group(&m, 1 << 10).unwrap();
        assert_eq!(a.group.order_u64(), Some(960));
        let tr = PermGroup::with_degree(16, a.translations.clone()).unwrap();
        assert_eq!(tr.order_u64(), Some(16));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn orbit_stabiliser_on_a5_modules(p in prop::sample::select(vec![2u64, 3, 5]), code in 1usize..625) {
            let g = a5();
            let m = deleted_module(&g, p).unwrap();
            let d = m.dim() as u32;
            let v = decode(code % (p.pow(d) as usize - 1) + 1, p as u32, d as usize);
            let st = vector_stabiliser(&g, &m, &v, 1 << 20).unwrap();
            prop_assert_eq!(st.orbit_size as u64 * st.stabiliser.order_u64().unwrap(), 60);
            prop_assert_eq!(brute_orbit_stabiliser(&g, &m, &v), (st.orbit_size, st.stabiliser.order_u64().unwrap()));
        }

        #[test]
        fn b1_rank_nullity(p in prop::sample::select(vec![2u64, 3, 5, 7]), which in 0usize..4) {
            let name = ["A5", "A6", "L2(7)", "A5"][which];
            let pg = shipped_presentation(name).unwrap();
            let m = if which == 3 { GModule::trivial(&pg.group, p, 2).unwrap() } else { deleted_module(&pg.group, p).unwrap() };
            let ds = derivation_space(&pg.presentation, &m).unwrap();
            let fixed = fixed_subspace(&m, Acting::Subgroup(&pg.group)).unwrap();
            prop_assert_eq!(ds.dim_b1, m.dim() - fixed.len());
            prop_assert!(ds.dim_z1 >= ds.dim_b1);
            // scalar multiples of fixed vectors give the zero derivation
            for v in &fixed {
                let d = inner_derivation(&m, v);
                prop_assert!(d.iter().all(|w| w.iter().all(|&x| x == 0)));
            }
        }
    }
}

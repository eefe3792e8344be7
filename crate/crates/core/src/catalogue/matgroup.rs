//! Permutation actions of matrix groups on vectors and projective points.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::linalg::{normalize, vec_mul, Matrix};
use crate::perm::{Permutation, MAX_DEGREE};

/// All vectors of F^n with first nonzero coordinate 1, in lexicographic
/// order of their coordinates.
pub fn projective_points(f: &FieldSpec, n: usize) -> Vec<Vec<u32>> {
    let q = f.size();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (q as u64).pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0; n];
            v[lead] = 1;
            for i in (lead + 1..n).rev() {
                v[i] = (code % q as u64) as u32;
                code /= q as u64;
            }
            out.push(v);
        }
    }
    out.sort();
    out
}

/// All nonzero vectors of F^n in lexicographic order.
pub fn nonzero_vectors(f: &FieldSpec, n: usize) -> Vec<Vec<u32>> {
    let q = f.size() as u64;
    (1..q.pow(n as u32))
        .map(|mut code| {
            let mut v = vec![0; n];
            for i in (0..n).rev() {
                v[i] = (code % q) as u32;
                code /= q;
            }
            v
        })
        .collect()
}

/// Permutations induced by `mats` on `points` (0-based indices into the
/// list), projectively when `projective` is set.
pub fn induced_action(
    f: &FieldSpec,
    points: &[Vec<u32>],
    mats: &[Matrix],
    projective: bool,
) -> Result<Vec<Permutation>> {
    if points.len() > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(points.len(), MAX_DEGREE));
    }
    let index: HashMap<&[u32], u32> =
        points.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect();
    mats.iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let mut w = vec_mul(v, m, f);
                    if projective {
                        w = normalize(&w, f);
                    }
                    index
                        .get(w.as_slice())
                        .copied()
                        .ok_or_else(|| Error::Precondition("point set not invariant".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images)
        })
        .collect()
}

/// Orbit of `seed` under `mats` (sorted), with the induced permutations.
pub fn orbit_action(
    f: &FieldSpec,
    mats: &[Matrix],
    seed: &[u32],
    projective: bool,
    limit: usize,
) -> Result<(Vec<Vec<u32>>, Vec<Permutation>)> {
    let start = if projective { normalize(seed, f) } else { seed.to_vec() };
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        for m in mats {
            let mut w = vec_mul(&orbit[i], m, f);
            if projective {
                w = normalize(&w, f);
            }
            if !seen.contains_key(&w) {
                if orbit.len() >= limit {
                    return Err(Error::cap("vector orbit length", limit as u64));
                }
                seen.insert(w.clone(), ());
                orbit.push(w);
            }
        }
        i += 1;
    }
    orbit.sort();
    let perms = induced_action(f, &orbit, mats, projective)?;
    Ok((orbit, perms))
}

/// E_{ij}(t): identity plus t in position (i, j).
pub fn elementary(n: usize, i: usize, j: usize, t: u32) -> Matrix {
    let mut m = Matrix::identity(n);
    m.set(i, j, t);
    m
}

/// Generators of SL_n(q) for n ∈ {2, 3}: E_12(ω^i) for i < k, where ω
/// generates GF(q) over GF(p), and one monomial matrix.
pub fn sl_generators(f: &FieldSpec, n: usize) -> Result<Vec<Matrix>> {
    let mut gens = Vec::new();
    let w = f.x();
    for i in 0..f.k() {
        gens.push(elementary(n, 0, 1, f.pow(w, i as i64)?));
    }
    let mono = match n {
        2 => Matrix::from_rows(vec![vec![0, 1], vec![f.neg(1), 0]])?,
        3 => Matrix::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])?,
        _ => return Err(Error::Precondition(format!("SL_{n} generators not provided"))),
    };
    gens.push(mono);
    Ok(gens)
}

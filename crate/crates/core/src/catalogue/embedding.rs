//! The deleted permutation module of a permutation action.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::linalg::Matrix;
use crate::perm::Permutation;

use super::presentation::Presentation;

/// Basis convention for the deleted module of the natural F S_m-module:
/// w_i = e_i - e_m (i < m) spans the sum-zero subspace; when p | m the
/// all-ones vector lies in it and the last basis vector is dropped in the
/// quotient (w_{m-1} ≡ -(w_1 + ... + w_{m-2})).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeletedShape {
    pub points: usize,
    pub quotient: bool,
}

impl DeletedShape {
    pub fn new(points: usize, p: u32) -> DeletedShape {
        DeletedShape {
            points,
            quotient: points % p as usize == 0,
        }
    }

    pub fn dim(&self) -> usize {
        if self.quotient {
            self.points.saturating_sub(2)
        } else {
            self.points.saturating_sub(1)
        }
    }

    /// Coordinates of e_a - e_b.
    fn difference(&self, a: usize, b: usize, f: &FieldSpec) -> Vec<u32> {
        let m = self.points;
        let mut w = vec![0u32; m - 1];
        if a < m - 1 {
            w[a] = f.add(w[a], 1);
        }
        if b < m - 1 {
            w[b] = f.sub(w[b], 1);
        }
        if self.quotient {
            let last = w.pop().expect("m >= 2");
            if last != 0 {
                for x in &mut w {
                    *x = f.sub(*x, last);
                }
            }
        }
        w
    }

    /// Matrix of `g` (acting e_i -> e_{g(i)}) on the deleted module.
    pub fn matrix(&self, g: &Permutation, f: &FieldSpec) -> Matrix {
        let m = self.points;
        let rows = (0..self.dim()).map(|i| self.difference(g.apply(i), g.apply(m - 1), f)).collect();
        Matrix::from_rows(rows).expect("square")
    }
}

/// A_{n+1} represented on its n-dimensional (or (n-1)-dimensional when
/// p | n+1) deleted module over GF(q).
#[derive(Clone, Debug)]
pub struct DeletedEmbedding {
    pub field: Arc<FieldSpec>,
    pub shape: DeletedShape,
    /// The 3-cycles (1,2,i), i = 3..n+1.
    pub generators: Vec<Permutation>,
    pub matrices: Vec<Matrix>,
    pub presentation: Presentation,
}

pub fn deleted_perm_embedding(n: usize, q: u64) -> Result<DeletedEmbedding> {
    if n < 4 {
        return Err(Error::Precondition(format!("deleted embedding needs n >= 4, got {n}")));
    }
    let field = FieldSpec::new(q)?;
    let m = n + 1;
    let shape = DeletedShape::new(m, field.p());
    let generators = (3..=m)
        .map(|i| Permutation::from_cycles(m, &[vec![1, 2, i]]))
        .collect::<Result<Vec<_>>>()?;
    let matrices: Vec<Matrix> = generators.iter().map(|g| shape.matrix(g, &field)).collect();
    let presentation = Presentation::alternating_3cycles(m);
    let images: Vec<(Matrix, Matrix)> = matrices
        .iter()
        .map(|x| Ok((x.clone(), x.inverse(&field)?)))
        .collect::<Result<_>>()?;
    for w in &presentation.relators {
        let v = Presentation::evaluate(w, &images, Matrix::identity(shape.dim()), |a, b| a.mul(b, &field));
        if !v.is_identity() {
            return Err(Error::Data(format!("relator {w:?} is not the identity matrix")));
        }
    }
    Ok(DeletedEmbedding {
        field,
        shape,
        generators,
        matrices,
        presentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::matgroup::{induced_action, nonzero_vectors};
    use crate::perm::PermGroup;

    fn image_order(n: usize, q: u64) -> u64 {
        let e = deleted_perm_embedding(n, q).unwrap();
        let pts = nonzero_vectors(&e.field, e.shape.dim());
        let perms = induced_action(&e.field, &pts, &e.matrices, false).unwrap();
        PermGroup::new(perms).unwrap().order_u64().unwrap()
    }

    #[test]
    fn a5_in_gl4() {
        assert_eq!(image_order(4, 2), 60);
        assert_eq!(image_order(4, 3), 60);
        assert_eq!(deleted_perm_embedding(4, 2).unwrap().shape.dim(), 4);
    }

    #[test]
    fn quotient_case() {
        // A_6 over GF(3): 3 | 6
        let e = deleted_perm_embedding(5, 3).unwrap();
        assert!(e.shape.quotient);
        assert_eq!(e.shape.dim(), 4);
        assert_eq!(image_order(5, 3), 360);
        assert_eq!(image_order(5, 4), 360);
    }

    #[test]
    fn rejects_small_n() {
        assert!(deleted_perm_embedding(3, 2).is_err());
    }
}

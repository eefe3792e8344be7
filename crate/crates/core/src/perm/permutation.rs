use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 10_000;

/// A permutation of `{0, .., n-1}` stored as its image array.
///
/// Products act left to right: `(a * b)(i) = b(a(i))`. Points are 0-based in
/// memory and 1-based in every textual format.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(n, MAX_DEGREE));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("images {images:?} are not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds from 1-based images as they appear in generator files.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero: Option<Vec<u32>> = images
            .iter()
            .map(|&i| i.checked_sub(1).map(|v| v as u32))
            .collect();
        match zero {
            Some(v) => Self::from_images(v),
            None => Err(Error::InvalidPermutation("point 0 in a 1-based image list".into())),
        }
    }

    /// Builds from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!("point {pt} outside 1..{degree}")));
                }
                if used[pt - 1] {
                    return Err(Error::InvalidPermutation(format!("point {pt} repeated in cycles")));
                }
                used[pt - 1] = true;
                let next = cycle[(idx + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; spaces may replace the
    /// commas. `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!("expected `(` in `{text}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &rest[1..close];
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{s}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = &rest[close + 1..];
        }
        Self::from_cycles(degree, &cycles)
    }

    /// Smallest degree that holds every point named in the cycle string.
    pub fn cycle_string_degree(text: &str) -> usize {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|s| s.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self * other` with a degree check.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation::from_images_unchecked(inv)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (g^-1 x g)(g(i)) = g(x(i))
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation::from_images_unchecked(out)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        &(&self.inverse() * &other.inverse()) * &(self * other)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(|c| c.len()).collect()
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Order when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for l in self.cycle_lengths() {
            let l = l as u64;
            acc = (acc / num_integer::gcd(acc, l)).checked_mul(l)?;
        }
        Some(acc)
    }

    /// Prime divisors of the order, computed from the cycle lengths.
    pub fn order_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .cycle_lengths()
            .into_iter()
            .flat_map(|l| crate::ffield::prime_divisors(l as u64))
            .collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Permutation {
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u32..degree as u32);
        Permutation::from_images_unchecked(images)
    }

    /// Moves every point up by `shift` inside a permutation of `degree`
    /// points.
    pub fn shifted(&self, shift: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + shift] = x + shift as u32;
        }
        Permutation::from_images_unchecked(images)
    }

    /// 1-based images separated by single spaces.
    pub fn to_image_line(&self) -> String {
        let v: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        v.join(" ")
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on mismatched degrees.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation::from_images_unchecked(
            self.images
                .iter()
                .map(|&x| rhs.images[x as usize])
                .collect(),
        )
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation, `(1,2,3)(4,5)`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn transposition_squares_to_identity() {
        let t = cyc(3, "(1,2)");
        assert!((&t * &t).is_identity());
    }

    #[test]
    fn identity_is_neutral() {
        let b = cyc(5, "(1,4)(2,3,5)");
        let e = Permutation::identity(5);
        assert_eq!(&e * &b, b);
        assert_eq!(&b * &e, b);
    }

    #[test]
    fn left_to_right_product() {
        // 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2
        let p = &cyc(3, "(1,2,3)") * &cyc(3, "(1,2)");
        assert_eq!(p, cyc(3, "(2,3)"));
    }

    #[test]
    fn compose_checks_degrees() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(4).order_u64(), Some(1));
        assert_eq!(cyc(5, "(1,2)(3,4,5)").order_u64(), Some(6));
        assert_eq!(cyc(5, "(1,2,3,4,5)").order_u64(), Some(5));
        assert_eq!(cyc(5, "(1,2)(3,4,5)").order_primes(), vec![2, 3]);
    }

    #[test]
    fn display_round_trip() {
        let p = cyc(7, "(1 5 2)(3,7)");
        assert_eq!(p.to_string(), "(1,5,2)(3,7)");
        assert_eq!(cyc(7, &p.to_string()), p);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse_cycles(3, "1,2").is_err());
    }

    #[test]
    fn conjugation_and_commutator() {
        let x = cyc(4, "(1,2,3)");
        let g = cyc(4, "(3,4)");
        let direct = &(&g.inverse() * &x) * &g;
        assert_eq!(x.conjugate_by(&g), direct);
        assert_eq!(x.conjugate_by(&g), cyc(4, "(1,2,4)"));
        let a = cyc(4, "(1,2)");
        let b = cyc(4, "(3,4)");
        assert!(a.commutator(&b).is_identity());
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&x));
    }

    #[test]
    fn powers() {
        let c = cyc(5, "(1,2,3,4,5)");
        assert!(c.pow(5).is_identity());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(7), c.pow(2));
    }
}

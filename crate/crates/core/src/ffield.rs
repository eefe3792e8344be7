//! Finite fields GF(p^k) with p^k <= 2^16.
//!
//! Elements are encoded as integers `0..q`: the coefficient of `x^i` is the
//! i-th base-p digit. Multiplication and inversion go through discrete-log
//! tables built once per [`FieldSpec`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Shipped moduli, coefficients listed from the constant term upwards.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[3, 1, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^k` if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// A finite field GF(p^k) together with its log/antilog tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: u32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.k, self.modulus)
    }
}

impl FieldSpec {
    /// GF(q) using the shipped modulus for q, or the first irreducible one
    /// in lexicographic order when none is shipped.
    pub fn new(q: u64) -> Result<Arc<FieldSpec>> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::Field(format!("q = {q} exceeds {MAX_FIELD_SIZE}")));
        }
        let p = p as u32;
        let modulus = match MODULI.iter().find(|(mp, mk, _)| *mp == p && *mk == k) {
            Some((_, _, m)) => m.to_vec(),
            None => first_irreducible(p, k),
        };
        Self::with_modulus(p, k, modulus)
    }

    /// GF(p^k) for an explicit monic modulus (coefficients low to high).
    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<Arc<FieldSpec>> {
        if !is_prime(p as u64) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Field("extension degree must be positive".into()));
        }
        let q64 = (p as u64).pow(k);
        if q64 > MAX_FIELD_SIZE as u64 {
            return Err(Error::Field(format!("field of size {q64} exceeds {MAX_FIELD_SIZE}")));
        }
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::Field("modulus must be monic of degree k".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Field("modulus coefficients must be reduced mod p".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::Field(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let q = q64 as u32;
        let mut spec = FieldSpec {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: 0,
        };
        spec.build_tables();
        Ok(Arc::new(spec))
    }

    fn build_tables(&mut self) {
        let q = self.q;
        for cand in 1..q {
            // powers of the candidate until we return to 1
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut cur = 1u32;
            loop {
                exp.push(cur);
                cur = self.poly_mul(cur, cand);
                if cur == 1 {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                self.primitive = cand;
                return;
            }
        }
        unreachable!("a finite field always has a primitive element");
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Schoolbook product reduced by the modulus; used to seed the tables.
    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c != 0 {
                for (t, &m) in self.modulus.iter().enumerate().take(k) {
                    let idx = deg - k + t;
                    prod[idx] = (prod[idx] + (p - c) * m) % p;
                }
                prod[deg] = 0;
            }
        }
        self.undigits(&prod[..k])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The generator of the multiplicative group used by the log tables.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    /// The class of `x` modulo the defining polynomial.
    pub fn x(&self) -> u32 {
        if self.k == 1 {
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::ZeroInverse),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Greater => Ok(0),
            };
        }
        let n = (self.q - 1) as i64;
        let e = e.rem_euclid(n);
        let l = (self.log[a as usize] as i64 * e).rem_euclid(n);
        Ok(self.exp[l as usize])
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as i64).expect("non-negative exponent")
    }

    /// Multiplicative order of a non-zero element.
    pub fn mult_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        Ok(n / num_integer::gcd(l, n))
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Elements with a prime-field coefficient vector (low degree first).
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Field(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(self.undigits(coeffs))
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }

    pub fn element(self: &Arc<Self>, value: u32) -> Result<FieldElement> {
        if value >= self.q {
            return Err(Error::Field(format!("{value} is not an element of GF({})", self.q)));
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            value,
        })
    }

    /// `p,k,c0 c1 ... ck` (modulus coefficients from the constant term up).
    pub fn to_line(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{},{},{}", self.p, self.k, coeffs.join(" "))
    }

    pub fn from_line(line: &str) -> Result<Arc<FieldSpec>> {
        let parts: Vec<&str> = line.trim().splitn(3, ',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("field line `{line}`")));
        }
        let num = |s: &str| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("field line `{line}`")))
        };
        let p = num(parts[0])?;
        let k = num(parts[1])?;
        let modulus = parts[2]
            .split_whitespace()
            .map(num)
            .collect::<Result<Vec<u32>>>()?;
        FieldSpec::with_modulus(p, k, modulus)
    }
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = (1..p).find(|&x| x * den[dd] % p == 1).unwrap_or(1);
    for deg in (dd..r.len()).rev() {
        let c = r[deg] * lead_inv % p;
        if c == 0 {
            continue;
        }
        let shift = deg - dd;
        for (i, &d) in den.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * d % p) % p;
        }
    }
    r.truncate(dd);
    r
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most k/2.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % p as u64) as u32);
                c /= p as u64;
            }
            f.push(1);
            if poly_rem(p, modulus, &f).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of a specific finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.spec.coefficients(self.value))
    }
}

/// Binary and unary operations available through [`FieldElement::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(i64),
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.spec.coefficients(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement {
            spec: Arc::clone(&self.spec),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.spec.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.spec.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.spec.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.with(self.spec.pow(self.value, e)?))
    }

    /// Unary ops ignore `other`.
    pub fn arith(&self, other: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        match op {
            FieldOp::Add => self.add(other),
            FieldOp::Mul => self.mul(other),
            FieldOp::Inv => self.inv(),
            FieldOp::Pow(e) => self.pow(e),
        }
    }

    pub fn mult_order(&self) -> Result<u64> {
        self.spec.mult_order(self.value)
    }

    pub fn frobenius(&self) -> FieldElement {
        self.with(self.spec.frobenius(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<FieldSpec> {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn characteristic_two_addition() {
        let f = gf(2);
        let one = f.element(1).unwrap();
        assert!(one.add(&one).unwrap().is_zero());
    }

    #[test]
    fn gf8_cube_of_x() {
        let f = gf(8);
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let x = f.element(f.x()).unwrap();
        let cube = x.pow(3).unwrap();
        // x^3 = x + 1
        assert_eq!(cube.coefficients(), vec![1, 1, 0]);
        assert_eq!(x.mult_order().unwrap(), 7);
    }

    #[test]
    fn inverse_of_one_and_zero() {
        for q in [2, 3, 4, 7, 8, 9, 25] {
            let f = gf(q);
            assert_eq!(f.inv(1).unwrap(), 1);
            assert_eq!(f.inv(0), Err(Error::ZeroInverse));
        }
    }

    #[test]
    fn multiplicative_orders() {
        let f7 = gf(7);
        assert_eq!(f7.mult_order(3).unwrap(), 6);
        assert_eq!(f7.mult_order(1).unwrap(), 1);
        assert_eq!(f7.mult_order(2).unwrap(), 3);
        assert!(f7.mult_order(0).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f4 = gf(4);
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        for a in 0..2 {
            assert_eq!(f4.frobenius(a), a);
        }
        // x^2 = x + 1
        assert_eq!(f4.coefficients(f4.frobenius(f4.x())), vec![1, 1]);
        let f9 = gf(9);
        assert_eq!(f9.frobenius(f9.frobenius(f9.x())), f9.x());
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = gf(4).element(1).unwrap();
        let b = gf(8).element(1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(1 << 17).is_err());
    }

    #[test]
    fn spec_line_round_trip() {
        let f = gf(27);
        let line = f.to_line();
        assert_eq!(*FieldSpec::from_line(&line).unwrap(), *f);
    }

    #[test]
    fn fallback_modulus_found() {
        let f = gf(11 * 11);
        assert_eq!(f.size(), 121);
        assert!(is_irreducible(11, f.modulus()));
    }
}

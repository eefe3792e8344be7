//! Classification tables: the X-collections, the set 𝒬, sporadic and
//! exceptional alternating degrees, and the (π, S(π)) list.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use num_integer::Integer;

use crate::catalogue::{ClassicalKind, SimpleIdentity};
use crate::error::{Error, Result};
use crate::ffield::{is_prime, prime_power};
use crate::pi::PiSet;

/// Raw text of the golden table file.
pub const TABLES_JSON: &str = include_str!("../../data/tables.json");

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ClassTables {
    pub table1: Table1,
    pub table2: Table2,
    pub table3: Vec<SporadicRow>,
    pub table4: Vec<ExceptionalRow>,
    pub table5: Vec<SporadicDegree>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct Table1 {
    pub parametric: Vec<ParametricRow>,
    pub fixed: Vec<FixedRow>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ParametricRow {
    pub id: String,
    pub pi: String,
    pub factors: String,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct FixedRow {
    pub pi: PiSet,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct Table2 {
    pub alt: Vec<BoundRow>,
    pub class: Vec<BoundRow>,
    pub class_families: Vec<String>,
    pub class_prime_variant_p_plus: u64,
    pub exc: String,
    pub spor: String,
}

/// One bound row: a fixed bound or p plus an offset.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct BoundRow {
    pub when: String,
    #[serde(alias = "max_rank", skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u64>,
    #[serde(alias = "max_rank_p_plus", skip_serializing_if = "Option::is_none")]
    pub max_degree_p_plus: Option<u64>,
}

impl BoundRow {
    fn bound(&self, p: u64) -> u64 {
        match (self.max_degree, self.max_degree_p_plus) {
            (Some(b), _) => b,
            (None, Some(k)) => p + k,
            (None, None) => unreachable!("validated on load"),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct SporadicRow {
    pub group: String,
    pub pibar: PiSet,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct ExceptionalRow {
    pub family: String,
    pub degree: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct SporadicDegree {
    pub group: String,
    pub degree: u64,
}

/// Parsed golden tables, loaded once.
pub fn tables() -> &'static ClassTables {
    static T: OnceLock<ClassTables> = OnceLock::new();
    T.get_or_init(|| {
        let t: ClassTables = serde_json::from_str(TABLES_JSON).expect("tables.json parses");
        for row in t.table2.alt.iter().chain(&t.table2.class) {
            assert!(row.max_degree.is_some() != row.max_degree_p_plus.is_some(), "bad bound row");
        }
        t
    })
}

/// Bound row index: 0 if 3 ∈ π, 1 if 2 ∈ π and 3 ∉ π, else 2.
fn table2_row(pi: &PiSet) -> usize {
    if pi.contains(3) {
        0
    } else if pi.contains(2) {
        1
    } else {
        2
    }
}

/// Largest n with A_n ∈ X_Alt(π).
pub fn x_alt_bound(pi: &PiSet) -> u64 {
    tables().table2.alt[table2_row(pi)].bound(pi.smallest())
}

pub fn x_alt_membership(n: u64, pi: &PiSet) -> Result<bool> {
    if n < 5 {
        return Err(Error::Precondition(format!("A_{n} is not a non-abelian simple group")));
    }
    Ok(n <= x_alt_bound(pi))
}

/// p + 4 + 2δ_{2,p}.
pub fn thickness_bound(p: u64) -> u64 {
    p + 4 + if p == 2 { 2 } else { 0 }
}

/// The rank bound n of X_Class(π); the same for every classical family.
pub fn x_class_bound(_kind: ClassicalKind, pi: &PiSet) -> u64 {
    tables().table2.class[table2_row(pi)].bound(pi.smallest())
}

/// The bound n ≤ p + 4 of the variant collection X'_Class(π).
pub fn x_class_prime_bound(pi: &PiSet) -> u64 {
    pi.smallest() + tables().table2.class_prime_variant_p_plus
}

/// δ(q) = 2 for odd q, 1 for even q.
pub fn delta(q: u64) -> u64 {
    if q % 2 == 1 {
        2
    } else {
        1
    }
}

/// Rank parameter n of a classical group, where symplectic groups of
/// dimension d are PSp_{δ(q)n}(q).
fn classical_rank(kind: ClassicalKind, dim: usize, q: u64) -> Option<u64> {
    match kind {
        ClassicalKind::Symplectic => {
            let d = delta(q);
            (dim as u64 % d == 0).then_some(dim as u64 / d)
        }
        _ => Some(dim as u64),
    }
}

pub fn x_class_membership(kind: ClassicalKind, dim: usize, q: u64, pi: &PiSet) -> bool {
    classical_rank(kind, dim, q).is_some_and(|n| n <= x_class_bound(kind, pi))
}

/// p + 6 + 8δ_{2,p} + 6δ_{3,p} + 4δ_{5,p}, p the smallest prime of π.
pub fn psp_bound(pi: &PiSet) -> u64 {
    let p = pi.smallest();
    let d = |r: u64| u64::from(p == r);
    p + 6 + 8 * d(2) + 6 * d(3) + 4 * d(5)
}

fn sporadic_row(name: &str) -> Result<&'static SporadicRow> {
    let key = canonical_sporadic(name);
    tables()
        .table3
        .iter()
        .find(|r| r.group == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

fn canonical_sporadic(name: &str) -> String {
    let s: String = name.chars().filter(|c| !matches!(c, '_' | ' ')).collect();
    match s.to_ascii_uppercase().as_str() {
        "ON" | "O'N" => "O'N".into(),
        "FI24" | "FI24'" => "Fi24'".into(),
        "MCL" => "McL".into(),
        "SUZ" => "Suz".into(),
        "FI22" => "Fi22".into(),
        "FI23" => "Fi23".into(),
        u if u.starts_with("CO") => format!("Co{}", &u[2..]),
        u if u == "HE" || u == "HS" || u == "HN" || u == "RU" || u == "LY" || u == "TH" => {
            let mut c = u.chars();
            let first = c.next().expect("nonempty");
            format!("{first}{}", c.as_str().to_ascii_lowercase()).replace("Hs", "HS").replace("Hn", "HN")
        }
        u => u.to_string(),
    }
}

/// S ∈ X_Spor(π): S is listed in the sporadic table and its π̄ contains π.
pub fn x_spor_membership(name: &str, pi: &PiSet) -> Result<bool> {
    Ok(pi.is_subset_of(&sporadic_row(name)?.pibar))
}

pub fn sporadic_pibar(name: &str) -> Result<&'static PiSet> {
    Ok(&sporadic_row(name)?.pibar)
}

pub fn sporadic_alt_degree(name: &str) -> Result<u64> {
    let key = canonical_sporadic(name);
    tables()
        .table5
        .iter()
        .find(|r| r.group == key)
        .map(|r| r.degree)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn exceptional_alt_degree(family: &str) -> Result<u64> {
    let key = family.replace(['^', '_', ' '], "").to_ascii_uppercase();
    tables()
        .table4
        .iter()
        .find(|r| r.family.to_ascii_uppercase() == key)
        .map(|r| r.degree)
        .ok_or_else(|| Error::UnknownName(family.to_string()))
}

/// q ∈ 𝒬: q = 2^r or 3^r for an odd prime r, or q an odd prime with
/// q ≡ 0, ±2 (mod 5).
pub fn q_in_q(q: u64) -> bool {
    match prime_power(q) {
        Some((2 | 3, k)) if k > 1 => k % 2 == 1 && is_prime(k as u64),
        Some((p, 1)) => p % 2 == 1 && matches!(p % 5, 0 | 2 | 3),
        _ => false,
    }
}

/// Membership of a simple group, under any of its names, in
/// X_Alt(π) ∪ X_Class(π) ∪ X_Exc ∪ X_Spor(π).
pub fn in_x_union(identities: &[SimpleIdentity], pi: &PiSet) -> Result<Option<SimpleIdentity>> {
    for id in identities {
        let member = match id {
            SimpleIdentity::Alternating(n) => *n as u64 <= x_alt_bound(pi),
            SimpleIdentity::Classical { kind, n, q } => x_class_membership(*kind, *n, *q, pi),
            SimpleIdentity::Exceptional { .. } => true,
            SimpleIdentity::Sporadic(s) => x_spor_membership(s, pi)?,
        };
        if member {
            return Ok(Some(id.clone()));
        }
    }
    Ok(None)
}

/// Whether every prime factor of `n` lies in `pi`.
fn divides_out(mut n: u128, pi: &[u64]) -> bool {
    for &p in pi {
        while n % p as u128 == 0 {
            n /= p as u128;
        }
    }
    n == 1
}

fn primes_dividing(n: u128, pi: &[u64]) -> Vec<u64> {
    pi.iter().copied().filter(|&p| n % p as u128 == 0).collect()
}

/// π(Aut(L2(q))) when it lies inside `pi`, as the subset of `pi` it equals.
fn aut_psl2_primes(q: u64, f: u32, pi: &[u64]) -> Option<Vec<u64>> {
    let q = q as u128;
    let parts = [q, q - 1, q + 1, f as u128];
    if !parts.iter().all(|&x| x == 1 || divides_out(x, pi)) {
        return None;
    }
    let mut out: Vec<u64> = parts.iter().filter(|&&x| x > 1).flat_map(|&x| primes_dividing(x, pi)).collect();
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// One way of realising π as a row of the (π, S(π)) table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Match {
    pub row: String,
    pub factors: Vec<String>,
}

/// Rows of the (π, S(π)) table whose π equals the given set. Parametric
/// rows are searched over parameters forced by π itself: for the Suzuki
/// row p ∈ π, for the L2 row the q ∈ 𝒬 whose Aut-primes lie in π.
pub fn table1_lookup(pi: &PiSet) -> Vec<Table1Match> {
    let t = tables();
    let primes = pi.primes();
    let mut out = Vec::new();
    for row in &t.table1.fixed {
        if row.pi == *pi {
            out.push(Table1Match {
                row: row.pi.to_string(),
                factors: row.factors.clone(),
            });
        }
    }
    // π(2B2(2^p)) = π(2^p (2^{2p} + 1)(2^p - 1))
    for &p in primes.iter().filter(|&&p| p % 2 == 1 && p <= 61) {
        let q = 1u128 << p;
        let parts = [2u128, q * q + 1, q - 1];
        if parts.iter().all(|&x| divides_out(x, primes)) {
            let mut got: Vec<u64> = parts.iter().flat_map(|&x| primes_dividing(x, primes)).collect();
            got.push(p);
            got.sort_unstable();
            got.dedup();
            if got == primes {
                out.push(Table1Match {
                    row: t.table1.parametric[0].pi.clone(),
                    factors: vec![format!("2B2({})", q)],
                });
            }
        }
    }
    let mut cands: Vec<(u64, Vec<u64>)> = Vec::new();
    for &r in primes {
        for base in [2u64, 3] {
            if r % 2 == 1 && r <= 39 {
                let q = base.pow(r as u32);
                if let Some(s) = aut_psl2_primes(q, r as u32, primes) {
                    cands.push((q, s));
                }
            }
        }
        // L2(3) is soluble
        if r > 3 && q_in_q(r) {
            if let Some(s) = aut_psl2_primes(r, 1, primes) {
                cands.push((r, s));
            }
        }
    }
    cands.sort();
    cands.dedup();
    let n = cands.len();
    let mut combos: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    combos.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])));
    combos.extend((0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| vec![i, j, k]))));
    for c in combos {
        let coprime = c.iter().all(|&i| c.iter().all(|&j| i == j || cands[i].0.gcd(&cands[j].0) == 1));
        if !coprime {
            continue;
        }
        let mut u: Vec<u64> = c.iter().flat_map(|&i| cands[i].1.clone()).collect();
        u.sort_unstable();
        u.dedup();
        if u == primes {
            out.push(Table1Match {
                row: t.table1.parametric[1].pi.clone(),
                factors: c.iter().map(|&i| format!("L2({})", cands[i].0)).collect(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    fn pi(s: &str) -> PiSet {
        PiSet::parse(s).unwrap()
    }

    #[test]
    fn golden_file_hash() {
        let digest = Sha256::digest(TABLES_JSON.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, GOLDEN_SHA256);
    }

    const GOLDEN_SHA256: &str = "3aa64d578c40d9e3016dcfff8fde3a068ad87bb923a80dc2ba170a1788fcd0e9";

    #[test]
    fn table2_rows() {
        for n in 5..=7 {
            assert!(x_alt_membership(n, &pi("3")).unwrap());
        }
        assert!(!x_alt_membership(8, &pi("3")).unwrap());
        assert!(x_alt_membership(8, &pi("2")).unwrap());
        assert!(!x_alt_membership(9, &pi("2,5")).unwrap());
        for p in [5u64, 7, 11, 13] {
            let s = PiSet::new(&[p]).unwrap();
            assert!(x_alt_membership(p + 4, &s).unwrap());
            assert!(!x_alt_membership(p + 5, &s).unwrap());
        }
        assert!(x_alt_membership(4, &pi("2")).is_err());
        assert_eq!(x_class_bound(ClassicalKind::Linear, &pi("3,7")), 7);
        assert_eq!(x_class_bound(ClassicalKind::Unitary, &pi("2,5")), 8);
        assert_eq!(x_class_bound(ClassicalKind::Orthogonal, &pi("7")), 11);
        assert_eq!(x_class_prime_bound(&pi("2")), 6);
        // PSp_{δ(q)n}(q): PSp_16(3) has n = 8
        assert!(x_class_membership(ClassicalKind::Symplectic, 16, 3, &pi("2")));
        assert!(!x_class_membership(ClassicalKind::Symplectic, 16, 3, &pi("3")));
        assert!(!x_class_membership(ClassicalKind::Symplectic, 16, 2, &pi("2")));
    }

    #[test]
    fn bounds() {
        assert_eq!(thickness_bound(2), 8);
        assert_eq!(thickness_bound(3), 7);
        assert_eq!(thickness_bound(11), 15);
        assert_eq!(psp_bound(&pi("2")), 16);
        assert_eq!(psp_bound(&pi("3")), 15);
        assert_eq!(psp_bound(&pi("5,7")), 15);
        assert_eq!(psp_bound(&pi("7")), 13);
    }

    #[test]
    fn sporadic_rows() {
        assert!(x_spor_membership("J2", &pi("7")).unwrap());
        assert!(!x_spor_membership("J2", &pi("2")).unwrap());
        assert_eq!(sporadic_pibar("M11").unwrap(), &pi("2,3,5,11"));
        assert!(x_spor_membership("M11", &pi("2")).unwrap());
        assert!(!x_spor_membership("M12", &pi("2")).unwrap());
        assert!(x_spor_membership("M_22", &pi("2,3,5,7")).unwrap());
        assert!(x_spor_membership("O'N", &pi("31")).unwrap());
        assert!(x_spor_membership("ON", &pi("5,7")).unwrap());
        assert!(x_spor_membership("Fi24'", &pi("29")).unwrap());
        assert!(x_spor_membership("Co1", &pi("13")).unwrap());
        assert!(x_spor_membership("HS", &pi("11")).unwrap());
        assert!(x_spor_membership("McL", &pi("5")).unwrap());
        assert!(matches!(x_spor_membership("M13", &pi("2")), Err(Error::UnknownName(_))));
        assert_eq!(tables().table3.len(), 26);
    }

    #[test]
    fn alternating_degrees() {
        assert_eq!(sporadic_alt_degree("M11").unwrap(), 6);
        assert_eq!(sporadic_alt_degree("J1").unwrap(), 5);
        assert_eq!(sporadic_alt_degree("Ly").unwrap(), 11);
        assert_eq!(sporadic_alt_degree("HN").unwrap(), 12);
        assert_eq!(tables().table5.len(), 26);
        assert_eq!(exceptional_alt_degree("2B2").unwrap(), 2);
        assert_eq!(exceptional_alt_degree("F4").unwrap(), 8);
        assert_eq!(exceptional_alt_degree("E8").unwrap(), 10);
        assert_eq!(exceptional_alt_degree("^3D_4").unwrap(), 5);
        assert!(exceptional_alt_degree("H4").is_err());
    }

    #[test]
    fn q_membership() {
        for (q, want) in [(8, true), (27, true), (7, true), (5, true), (11, false), (2, false), (4, false)] {
            assert_eq!(q_in_q(q), want, "q = {q}");
        }
        assert!(q_in_q(32) && q_in_q(128) && q_in_q(243) && q_in_q(13) && q_in_q(17));
        assert!(!q_in_q(9) && !q_in_q(19) && !q_in_q(29) && !q_in_q(64) && !q_in_q(6));
    }

    /// Residue arithmetic oracle for 𝒬 on primes.
    #[test]
    fn q_primes_by_residue() {
        for p in (3..500u64).filter(|&p| is_prime(p)) {
            let r = p % 5;
            assert_eq!(q_in_q(p), r == 0 || r == 2 || r == 3, "p = {p}");
        }
    }

    #[test]
    fn table1_rows() {
        let m = table1_lookup(&pi("2,3,13"));
        assert!(m.iter().any(|x| x.factors == ["L3(3)"]));
        let m = table1_lookup(&pi("2,3,5"));
        assert!(m.iter().any(|x| x.factors == ["A5", "A6", "PSp4(3)"]));
        // L2(5) has Aut = S5
        assert!(m.iter().any(|x| x.factors == ["L2(5)"]));
        // {2,3,7}: fixed row, and L2(7) / L2(8) (Aut L2(8) = L2(8):3)
        let m = table1_lookup(&pi("2,3,7"));
        assert!(m.iter().any(|x| x.factors == ["L3(2)", "L2(8)", "U3(3)"]));
        assert!(m.iter().any(|x| x.factors == ["L2(7)"]));
        assert!(m.iter().any(|x| x.factors == ["L2(8)"]));
        // Sz(8): 2^6 * 5 * 7 * 13, with p = 3
        let m = table1_lookup(&pi("2,3,5,7,13"));
        assert!(m.iter().any(|x| x.factors == ["2B2(8)"]));
        assert!(table1_lookup(&pi("2,3,5,7,13,17,19")).iter().all(|x| x.factors.len() <= 3));
        assert!(table1_lookup(&pi("11")).is_empty());
    }

    #[test]
    fn table1_factors_are_simple_and_coprime() {
        for p in ["2,3,5", "2,3,5,7", "2,3,5,7,13", "2,3,7,13", "2,3,5,7,13,17,19"] {
            for m in table1_lookup(&pi(p)) {
                assert!(!m.factors.iter().any(|f| f == "L2(3)" || f == "L2(2)"), "{p}: {:?}", m.factors);
                let qs: Vec<u64> = m
                    .factors
                    .iter()
                    .filter_map(|f| f.strip_prefix("L2(")?.strip_suffix(')')?.parse().ok())
                    .collect();
                for (i, a) in qs.iter().enumerate() {
                    for b in &qs[i + 1..] {
                        assert_eq!(a.gcd(b), 1, "{p}: {:?}", m.factors);
                    }
                }
            }
        }
    }

    #[test]
    fn union_membership() {
        let a8 = [SimpleIdentity::Alternating(8), SimpleIdentity::Classical {
            kind: ClassicalKind::Linear,
            n: 4,
            q: 2,
        }];
        // A8 = L4(2) lies in X_Class through the linear name
        assert!(in_x_union(&a8, &pi("3")).unwrap().is_some());
        assert_eq!(in_x_union(&a8[..1], &pi("3")).unwrap(), None);
        assert!(in_x_union(&[SimpleIdentity::Sporadic("M12".into())], &pi("2")).unwrap().is_none());
    }
}

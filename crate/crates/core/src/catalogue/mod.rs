//! Named groups: alternating and symmetric groups, PSL_2(q), PSL_3(q),
//! SL_2(q), shipped generator files and presentations.

pub mod embedding;
pub mod matgroup;
pub mod presentation;

use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{prime_power, FieldSpec};
use crate::perm::{parse_generator_file, PermGroup, Permutation};

pub use embedding::{deleted_perm_embedding, DeletedEmbedding, DeletedShape};
pub use presentation::{coset_enumeration, Presentation};

/// Directory holding `<id>.gens` and `<id>.pres`; `CENTRA_DATA` overrides
/// the copy shipped with the crate.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("CENTRA_DATA") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

fn read_data(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Alt(usize),
    Sym(usize),
    Psl2(u64),
    Psl3(u64),
    Sl2(u64),
    File(String),
}

/// Classical families as they appear in the simple-group collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalKind {
    Linear,
    Unitary,
    Symplectic,
    Orthogonal,
}

/// One name under which a simple group appears in the classification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SimpleIdentity {
    Alternating(usize),
    /// Natural module dimension n over GF(q).
    Classical { kind: ClassicalKind, n: usize, q: u64 },
    Exceptional { family: String, q: u64 },
    Sporadic(String),
}

impl fmt::Display for SimpleIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleIdentity::Alternating(n) => write!(f, "A{n}"),
            SimpleIdentity::Classical { kind, n, q } => {
                let tag = match kind {
                    ClassicalKind::Linear => "L",
                    ClassicalKind::Unitary => "U",
                    ClassicalKind::Symplectic => "PSp",
                    ClassicalKind::Orthogonal => "O",
                };
                write!(f, "{tag}{n}({q})")
            }
            SimpleIdentity::Exceptional { family, q } => write!(f, "{family}({q})"),
            SimpleIdentity::Sporadic(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub name: String,
    #[serde(serialize_with = "ser_order")]
    pub expected_order: Option<BigUint>,
    /// Empty for groups that are not simple.
    pub identities: Vec<SimpleIdentity>,
}

fn ser_order<S: serde::Serializer>(o: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match o {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
}

pub fn psl2_order(q: u64) -> BigUint {
    let q = BigUint::from(q);
    let g = if q.is_odd() { 2u32 } else { 1 };
    &q * (&q * &q - 1u32) / g
}

pub fn psl3_order(q: u64) -> BigUint {
    let g = BigUint::from(q - 1).gcd(&BigUint::from(3u32));
    let q = BigUint::from(q);
    let q2 = &q * &q;
    let q3 = &q2 * &q;
    &q3 * (&q3 - 1u32) * (&q2 - 1u32) / g
}

fn classical(kind: ClassicalKind, n: usize, q: u64) -> SimpleIdentity {
    SimpleIdentity::Classical { kind, n, q }
}

/// Metadata for groups shipped as generator files.
struct FileEntry {
    id: &'static str,
    name: &'static str,
    aliases: &'static [&'static str],
    order: u64,
    identities: fn() -> Vec<SimpleIdentity>,
}

const FILE_GROUPS: &[FileEntry] = &[
    FileEntry {
        id: "M11",
        name: "M11",
        aliases: &["M11"],
        order: 7920,
        identities: || vec![SimpleIdentity::Sporadic("M11".into())],
    },
    FileEntry {
        id: "M12",
        name: "M12",
        aliases: &["M12"],
        order: 95040,
        identities: || vec![SimpleIdentity::Sporadic("M12".into())],
    },
    FileEntry {
        id: "M22",
        name: "M22",
        aliases: &["M22"],
        order: 443520,
        identities: || vec![SimpleIdentity::Sporadic("M22".into())],
    },
    FileEntry {
        id: "U3_3",
        name: "U3(3)",
        aliases: &["U3(3)", "PSU3(3)", "PSU(3,3)", "U(3,3)", "G2(2)'"],
        order: 6048,
        identities: || vec![classical(ClassicalKind::Unitary, 3, 3)],
    },
    FileEntry {
        id: "PSp4_3",
        name: "PSp4(3)",
        aliases: &["PSp4(3)", "PSP(4,3)", "S4(3)", "U4(2)", "PSU4(2)"],
        order: 25920,
        identities: || {
            vec![
                classical(ClassicalKind::Symplectic, 4, 3),
                classical(ClassicalKind::Unitary, 4, 2),
            ]
        },
    },
    FileEntry {
        id: "L3_4",
        name: "L3(4)",
        aliases: &["L3(4)", "PSL3(4)", "PSL(3,4)", "L(3,4)"],
        order: 20160,
        identities: || vec![classical(ClassicalKind::Linear, 3, 4)],
    },
    FileEntry {
        id: "Sz8",
        name: "Sz(8)",
        aliases: &["SZ(8)", "SZ8", "2B2(8)"],
        order: 29120,
        identities: || {
            vec![SimpleIdentity::Exceptional {
                family: "2B2".into(),
                q: 8,
            }]
        },
    },
];

/// Field sizes of the PSL_2(q) entries in the listed catalogue.
pub const CATALOGUE_PSL2: &[u64] = &[7, 8, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

impl GroupDescriptor {
    pub fn alt(n: usize) -> GroupDescriptor {
        let mut identities = Vec::new();
        if n >= 5 {
            identities.push(SimpleIdentity::Alternating(n));
        }
        match n {
            5 => {
                identities.push(classical(ClassicalKind::Linear, 2, 4));
                identities.push(classical(ClassicalKind::Linear, 2, 5));
            }
            6 => identities.push(classical(ClassicalKind::Linear, 2, 9)),
            8 => identities.push(classical(ClassicalKind::Linear, 4, 2)),
            _ => {}
        }
        let order = if n < 2 { BigUint::one() } else { factorial(n) / 2u32 };
        GroupDescriptor {
            family: Family::Alt(n),
            name: format!("A{n}"),
            expected_order: Some(order),
            identities,
        }
    }

    pub fn sym(n: usize) -> GroupDescriptor {
        GroupDescriptor {
            family: Family::Sym(n),
            name: format!("S{n}"),
            expected_order: Some(factorial(n)),
            identities: Vec::new(),
        }
    }

    pub fn psl2(q: u64) -> Result<GroupDescriptor> {
        check_q(q)?;
        let mut identities = Vec::new();
        if q >= 4 {
            identities.push(classical(ClassicalKind::Linear, 2, q));
        }
        match q {
            4 | 5 => identities.push(SimpleIdentity::Alternating(5)),
            7 => identities.push(classical(ClassicalKind::Linear, 3, 2)),
            9 => identities.push(SimpleIdentity::Alternating(6)),
            _ => {}
        }
        Ok(GroupDescriptor {
            family: Family::Psl2(q),
            name: format!("L2({q})"),
            expected_order: Some(psl2_order(q)),
            identities,
        })
    }

    pub fn psl3(q: u64) -> Result<GroupDescriptor> {
        check_q(q)?;
        let mut identities = vec![classical(ClassicalKind::Linear, 3, q)];
        if q == 2 {
            identities.push(classical(ClassicalKind::Linear, 2, 7));
        }
        Ok(GroupDescriptor {
            family: Family::Psl3(q),
            name: format!("L3({q})"),
            expected_order: Some(psl3_order(q)),
            identities,
        })
    }

    pub fn sl2(q: u64) -> Result<GroupDescriptor> {
        check_q(q)?;
        let q2 = BigUint::from(q);
        Ok(GroupDescriptor {
            family: Family::Sl2(q),
            name: format!("SL2({q})"),
            expected_order: Some(&q2 * (&q2 * &q2 - 1u32)),
            identities: Vec::new(),
        })
    }

    fn file(entry: &FileEntry) -> GroupDescriptor {
        GroupDescriptor {
            family: Family::File(entry.id.into()),
            name: entry.name.into(),
            expected_order: Some(BigUint::from(entry.order)),
            identities: (entry.identities)(),
        }
    }

    pub fn is_simple(&self) -> bool {
        !self.identities.is_empty()
    }

    /// Parses names such as `A7`, `Alt(7)`, `S4`, `L2(11)`, `PSL(3,3)`,
    /// `SL2(5)`, `M22`, `U3(3)`, `PSp4(3)`, `Sz(8)`.
    pub fn parse(name: &str) -> Result<GroupDescriptor> {
        let unknown = || Error::UnknownGroup(name.to_string());
        let key: String = name
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .collect::<String>()
            .to_ascii_uppercase();
        for entry in FILE_GROUPS {
            if entry.aliases.iter().any(|a| a.to_ascii_uppercase() == key) {
                return Ok(GroupDescriptor::file(entry));
            }
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| unknown());
        let inner = |s: &str| -> Option<String> { s.strip_prefix('(')?.strip_suffix(')').map(String::from) };
        if let Some(rest) = key.strip_prefix("ALT") {
            let n = inner(rest).unwrap_or_else(|| rest.to_string());
            return Ok(GroupDescriptor::alt(num(&n)? as usize));
        }
        if let Some(rest) = key.strip_prefix("SYM") {
            let n = inner(rest).unwrap_or_else(|| rest.to_string());
            return Ok(GroupDescriptor::sym(num(&n)? as usize));
        }
        // SL(2,q) / SL2(q)
        if let Some(rest) = key.strip_prefix("SL") {
            let (n, q) = lie_params(rest).ok_or_else(unknown)?;
            return match n {
                2 => GroupDescriptor::sl2(q),
                _ => Err(unknown()),
            };
        }
        let lin = key.strip_prefix("PSL").or_else(|| key.strip_prefix('L'));
        if let Some(rest) = lin {
            let (n, q) = lie_params(rest).ok_or_else(unknown)?;
            return match n {
                2 => GroupDescriptor::psl2(q),
                3 => GroupDescriptor::psl3(q),
                _ => Err(unknown()),
            };
        }
        if let Some(rest) = key.strip_prefix('A') {
            return Ok(GroupDescriptor::alt(num(rest)? as usize));
        }
        if let Some(rest) = key.strip_prefix('S') {
            return Ok(GroupDescriptor::sym(num(rest)? as usize));
        }
        Err(unknown())
    }

    /// Builds the permutation group and checks its order.
    pub fn build(&self) -> Result<PermGroup> {
        let g = match &self.family {
            Family::Alt(n) => alternating(*n)?,
            Family::Sym(n) => symmetric(*n)?,
            Family::Psl2(q) => psl(2, *q)?,
            Family::Psl3(q) => psl(3, *q)?,
            Family::Sl2(q) => sl2(*q)?,
            Family::File(id) => load_group_file(id)?.0,
        };
        if let Some(o) = &self.expected_order {
            if g.order() != o {
                return Err(Error::Data(format!(
                    "{} built with order {}, expected {o}",
                    self.name,
                    g.order()
                )));
            }
        }
        Ok(g)
    }
}

fn check_q(q: u64) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(Error::Field(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// Parses `2(7)`, `(2,7)` or `27`-free forms into (n, q).
fn lie_params(rest: &str) -> Option<(usize, u64)> {
    if let Some(args) = rest.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        let (n, q) = args.split_once(',')?;
        return Some((n.parse().ok()?, q.parse().ok()?));
    }
    let (n, q) = rest.split_once('(')?;
    Some((n.parse().ok()?, q.strip_suffix(')')?.parse().ok()?))
}

/// The listed catalogue, in a fixed order.
pub fn catalogue() -> Vec<GroupDescriptor> {
    let mut out: Vec<GroupDescriptor> = (5..=10).map(GroupDescriptor::alt).collect();
    out.extend((3..=6).map(GroupDescriptor::sym));
    for &q in CATALOGUE_PSL2 {
        out.push(GroupDescriptor::psl2(q).expect("prime power"));
    }
    out.push(GroupDescriptor::psl3(3).expect("prime power"));
    out.extend(FILE_GROUPS.iter().map(GroupDescriptor::file));
    out.push(GroupDescriptor::sl2(3).expect("prime power"));
    out.push(GroupDescriptor::sl2(5).expect("prime power"));
    out
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    let three = Permutation::from_cycles(n, &[vec![1, 2, 3]])?;
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    let long = Permutation::from_cycles(n, &[long])?;
    PermGroup::new(vec![long, three])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Ok(PermGroup::trivial(n));
    }
    let t = Permutation::from_cycles(n, &[vec![1, 2]])?;
    let c = Permutation::from_cycles(n, &[(1..=n).collect()])?;
    PermGroup::new(vec![c, t])
}

/// PSL_n(q), n ∈ {2, 3}, on projective points.
pub fn psl(n: usize, q: u64) -> Result<PermGroup> {
    let f = FieldSpec::new(q)?;
    let pts = matgroup::projective_points(&f, n);
    let gens = matgroup::sl_generators(&f, n)?;
    PermGroup::new(matgroup::induced_action(&f, &pts, &gens, true)?)
}

/// SL_2(q) on the nonzero vectors of GF(q)^2.
pub fn sl2(q: u64) -> Result<PermGroup> {
    let f = FieldSpec::new(q)?;
    let pts = matgroup::nonzero_vectors(&f, 2);
    let gens = matgroup::sl_generators(&f, 2)?;
    PermGroup::new(matgroup::induced_action(&f, &pts, &gens, false)?)
}

/// Loads `<id>.gens`, checking the recorded order.
pub fn load_group_file(id: &str) -> Result<(PermGroup, Option<u64>)> {
    load_generator_path(&data_dir().join(format!("{id}.gens")))
}

pub fn load_generator_path(path: &Path) -> Result<(PermGroup, Option<u64>)> {
    let text = read_data(path)?;
    let (gens, order, degree) = parse_generator_file(&text)?;
    let g = PermGroup::with_degree(degree, gens)?;
    if let Some(o) = order {
        if g.order_u64() != Some(o) {
            return Err(Error::Data(format!(
                "{}: recorded order {o}, computed {}",
                path.display(),
                g.order()
            )));
        }
    }
    Ok((g, order))
}

/// Names of the shipped presentations.
pub const SHIPPED_PRESENTATIONS: &[&str] = &["A5", "A6", "A7", "L2(7)", "L2(8)", "L3(3)"];

/// A presentation together with the permutation group it was verified on.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub name: String,
    pub presentation: Presentation,
    pub group: PermGroup,
}

fn file_id(name: &str) -> String {
    name.replace('(', "_").replace(')', "")
}

/// Loads a shipped presentation and checks every relator on its
/// generators.
pub fn shipped_presentation(name: &str) -> Result<PresentedGroup> {
    let canonical = SHIPPED_PRESENTATIONS
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let id = file_id(canonical);
    let dir = data_dir();
    let presentation = Presentation::parse(&read_data(&dir.join(format!("{id}.pres")))?)?;
    let (group, _) = load_generator_path(&dir.join(format!("{id}.gens")))?;
    if group.generators().len() != presentation.generators {
        return Err(Error::Data(format!(
            "{canonical}: {} generators but presentation has {}",
            group.generators().len(),
            presentation.generators
        )));
    }
    verify_relators(&presentation, group.generators())
        .map_err(|w| Error::Data(format!("{canonical}: relator {w:?} fails on the shipped generators")))?;
    Ok(PresentedGroup {
        name: canonical.to_string(),
        presentation,
        group,
    })
}

/// Returns the first relator that does not evaluate to the identity.
pub fn verify_relators(p: &Presentation, gens: &[Permutation]) -> std::result::Result<(), Vec<i32>> {
    let images: Vec<(Permutation, Permutation)> = gens.iter().map(|g| (g.clone(), g.inverse())).collect();
    let id = Permutation::identity(gens.first().map_or(0, |g| g.degree()));
    for w in &p.relators {
        if !Presentation::evaluate(w, &images, id.clone(), |a, b| a * b).is_identity() {
            return Err(w.clone());
        }
    }
    Ok(())
}

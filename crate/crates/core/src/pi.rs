//! Sets of primes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::is_prime;

/// A non-empty sorted set of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PiSet {
    primes: Vec<u64>,
}

impl PiSet {
    pub fn new(primes: &[u64]) -> Result<PiSet> {
        let mut v = primes.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::Parse("empty prime set".into()));
        }
        if let Some(q) = v.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::Parse(format!("{q} is not prime")));
        }
        Ok(PiSet { primes: v })
    }

    /// Parses `2,3,5`; `all` is taken relative to `order` (every prime
    /// dividing it).
    pub fn parse(text: &str) -> Result<PiSet> {
        let primes = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad prime `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        PiSet::new(&primes)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn smallest(&self) -> u64 {
        self.primes[0]
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &PiSet) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    /// Primes of `self` also in `other`, or `None` if there are none.
    pub fn intersect(&self, other: &[u64]) -> Option<PiSet> {
        let v: Vec<u64> = self.primes.iter().copied().filter(|p| other.contains(p)).collect();
        (!v.is_empty()).then_some(PiSet { primes: v })
    }

    /// All non-empty subsets, ordered by size then lexicographically.
    pub fn nonempty_subsets(&self) -> Vec<PiSet> {
        let n = self.primes.len();
        let mut out: Vec<PiSet> = (1u32..1 << n)
            .map(|mask| PiSet {
                primes: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.primes[i]).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.primes.len().cmp(&b.primes.len()).then(a.primes.cmp(&b.primes)));
        out
    }
}

impl TryFrom<Vec<u64>> for PiSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<PiSet> {
        PiSet::new(&v)
    }
}

impl From<PiSet> for Vec<u64> {
    fn from(p: PiSet) -> Vec<u64> {
        p.primes
    }
}

impl fmt::Display for PiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

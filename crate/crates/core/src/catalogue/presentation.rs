//! Finite presentations, relator checks and coset enumeration.

use crate::error::{Error, Result};

/// Generators `1..=r`; a relator is a word of signed 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Result<Presentation> {
        for w in &relators {
            if let Some(&bad) = w.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generators) {
                return Err(Error::Parse(format!("relator letter {bad} out of range")));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Parses `gens r` followed by one relator per line.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut r = None;
        let mut rels = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: cannot parse `{line}`", lineno + 1));
            if let Some(rest) = line.strip_prefix("gens") {
                r = Some(rest.trim().parse::<usize>().map_err(|_| bad())?);
                continue;
            }
            if r.is_none() {
                return Err(Error::Parse("relator before `gens` line".into()));
            }
            let w = line
                .split_whitespace()
                .map(|s| s.parse::<i32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            rels.push(w);
        }
        let r = r.ok_or_else(|| Error::Parse("missing `gens` line".into()))?;
        Presentation::new(r, rels)
    }

    pub fn format(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str(&format!("# {c}\n"));
        }
        out.push_str(&format!("gens {}\n", self.generators));
        for w in &self.relators {
            let s: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            out.push_str(&s.join(" "));
            out.push('\n');
        }
        out
    }

    /// Evaluates a word left to right given generator images and inverses.
    pub fn evaluate<T: Clone>(word: &[i32], images: &[(T, T)], identity: T, mul: impl Fn(&T, &T) -> T) -> T {
        word.iter().fold(identity, |acc, &l| {
            let (g, gi) = &images[l.unsigned_abs() as usize - 1];
            mul(&acc, if l > 0 { g } else { gi })
        })
    }

    /// Relators of the alternating group A_{n+1} on the generators
    /// (1,2,i), i = 3..n+1: x_i^3 and (x_i x_j)^2.
    pub fn alternating_3cycles(m: usize) -> Presentation {
        let r = m.saturating_sub(2);
        let mut rels = Vec::new();
        for i in 1..=r as i32 {
            rels.push(vec![i, i, i]);
        }
        for i in 1..=r as i32 {
            for j in i + 1..=r as i32 {
                rels.push(vec![i, j, i, j]);
            }
        }
        Presentation {
            generators: r,
            relators: rels,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Coset table for Felsch-style enumeration with coincidence handling.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    deductions: Vec<(u32, usize)>,
    limit: usize,
}

impl CosetTable {
    fn new(cols: usize, limit: usize) -> CosetTable {
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            deductions: Vec::new(),
            limit,
        }
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        let d = self.parent.len();
        if d >= self.limit {
            return Err(Error::cap("coset table size", self.limit as u64));
        }
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.set(c, x, d as u32);
        self.set(d as u32, x ^ 1, c);
        self.deductions.push((c, x));
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                        self.deductions.push((e1, x));
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.deductions.push((f, w[i]));
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Like `scan_and_fill` but never defines new cosets.
    fn scan(&mut self, c: u32, w: &[usize]) {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        while (i as isize) <= j && self.get(f, w[i]) != NONE {
            f = self.get(f, w[i]);
            i += 1;
        }
        if i as isize > j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
            b = self.get(b, w[j as usize] ^ 1);
            j -= 1;
        }
        if j < i as isize {
            self.coincidence(f, b);
        } else if j == i as isize {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
        }
    }

    /// Scans every relator conjugate through the new entry (c, x) and its
    /// inverse until no deductions remain.
    fn process_deductions(&mut self, by_first: &[Vec<Vec<usize>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            if self.live(c) {
                for r in &by_first[x] {
                    if !self.live(c) {
                        break;
                    }
                    self.scan(c, r);
                }
            }
            let c = self.rep(c);
            let d = self.get(c, x);
            if d != NONE && self.live(d) {
                for r in &by_first[x ^ 1] {
                    if !self.live(d) {
                        break;
                    }
                    self.scan(d, r);
                }
            }
        }
    }
}

fn columns(word: &[i32]) -> Vec<usize> {
    word.iter()
        .map(|&l| 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0))
        .collect()
}

/// Index of the subgroup generated by `subgroup` words in the presented
/// group, by Felsch-style coset enumeration. Fails with a cap error once
/// the table holds more than `limit` cosets, live or dead.
pub fn coset_enumeration(pres: &Presentation, subgroup: &[Vec<i32>], limit: usize) -> Result<usize> {
    let cols = 2 * pres.generators;
    if cols == 0 {
        return Ok(1);
    }
    // every cyclic conjugate of every relator and its inverse, by first letter
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cols];
    for w in &pres.relators {
        let r = columns(w);
        let inv: Vec<usize> = r.iter().rev().map(|&x| x ^ 1).collect();
        for word in [r, inv] {
            for k in 0..word.len() {
                let mut c = word[k..].to_vec();
                c.extend_from_slice(&word[..k]);
                if !by_first[c[0]].contains(&c) {
                    by_first[c[0]].push(c);
                }
            }
        }
    }
    let mut t = CosetTable::new(cols, limit);
    for w in subgroup {
        t.scan_and_fill(0, &columns(w))?;
        t.process_deductions(&by_first);
    }
    let mut c = 0u32;
    while (c as usize) < t.parent.len() {
        if t.live(c) {
            if let Some(x) = (0..cols).find(|&x| t.get(c, x) == NONE) {
                t.define(c, x)?;
                t.process_deductions(&by_first);
                continue;
            }
        }
        c += 1;
    }
    Ok((0..t.parent.len() as u32).filter(|&c| t.live(c)).count())
}

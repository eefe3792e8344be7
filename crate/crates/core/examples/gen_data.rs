//! Regenerates the shipped generator files and presentations.
//!
//! Usage: cargo run -p centra --example gen_data --release -- <data dir>

use std::path::Path;

use centra::catalogue::matgroup::{induced_action, orbit_action, projective_points};
use centra::catalogue::{self, coset_enumeration, verify_relators, Presentation};
use centra::ffield::FieldSpec;
use centra::linalg::{vec_mul, Matrix};
use centra::perm::{format_generator_file, PermGroup, Permutation};

fn cyc(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
    println!("wrote {name}");
}

/// First pair of product-replacement elements generating a group of the
/// given order.
fn two_generators(g: &PermGroup, seed: u64) -> Vec<Permutation> {
    let target = g.order().clone();
    let mut rnd = g.random_elements(seed);
    loop {
        let x = rnd.next_element();
        let y = rnd.next_element();
        if *PermGroup::new(vec![x.clone(), y.clone()]).unwrap().order() == target {
            return vec![x, y];
        }
    }
}

fn ship_group(dir: &Path, id: &str, gens: Vec<Permutation>, notes: &[&str]) {
    let g = PermGroup::new(gens.clone()).unwrap();
    let order = g.order_u64().unwrap();
    let text = format_generator_file(&gens, g.degree(), Some(order), notes);
    write(dir, &format!("{id}.gens"), &text);
}

fn suzuki8() -> Vec<Permutation> {
    let f = FieldSpec::new(8).unwrap();
    let s = |a: u32| f.pow(a, 4).unwrap();
    let m = |a: u32, b: u32| f.mul(a, b);
    let add = |xs: &[u32]| xs.iter().fold(0, |acc, &x| f.add(acc, x));
    let sab = |a: u32, b: u32| {
        Matrix::from_rows(vec![
            vec![1, 0, 0, 0],
            vec![a, 1, 0, 0],
            vec![b, s(a), 1, 0],
            vec![add(&[m(m(a, a), s(a)), m(a, b), s(b)]), add(&[m(a, s(a)), b]), a, 1],
        ])
        .unwrap()
    };
    let k = f.x();
    let p = |e: i64| f.pow(k, e).unwrap();
    let diag = Matrix::from_rows(vec![
        vec![p(3), 0, 0, 0],
        vec![0, p(2), 0, 0],
        vec![0, 0, p(-2), 0],
        vec![0, 0, 0, p(-3)],
    ])
    .unwrap();
    let t = Matrix::from_rows(vec![
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
        vec![0, 1, 0, 0],
        vec![1, 0, 0, 0],
    ])
    .unwrap();
    let mats = vec![sab(1, 0), sab(0, 1), diag, t];
    let (pts, perms) = orbit_action(&f, &mats, &[1, 0, 0, 0], true, 10_000).unwrap();
    assert_eq!(pts.len(), 65);
    perms
}

fn unitary33() -> Vec<Permutation> {
    let f = FieldSpec::new(9).unwrap();
    let bar = |a: u32| f.frobenius(a);
    let conj_t = |m: &Matrix| {
        let mut t = Matrix::zeros(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                t.set(c, r, bar(m.get(r, c)));
            }
        }
        t
    };
    let j = Matrix::from_rows(vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
    let is_unitary = |m: &Matrix| m.mul(&j, &f).mul(&conj_t(m), &f) == j;
    let mut mats = Vec::new();
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                let m = Matrix::from_rows(vec![vec![1, a, b], vec![0, 1, c], vec![0, 0, 1]]).unwrap();
                if (a, b, c) != (0, 0, 0) && is_unitary(&m) {
                    mats.push(m);
                }
            }
        }
    }
    mats.push(j.scale(f.neg(1), &f));
    assert!(mats.iter().all(|m| m.determinant(&f) == 1));
    let (pts, perms) = orbit_action(&f, &mats, &[1, 0, 0], true, 10_000).unwrap();
    assert_eq!(pts.len(), 28);
    perms
}

fn symplectic43() -> Vec<Permutation> {
    let f = FieldSpec::new(3).unwrap();
    let m1 = f.neg(1);
    let j = Matrix::from_rows(vec![
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
        vec![0, m1, 0, 0],
        vec![m1, 0, 0, 0],
    ])
    .unwrap();
    let pts = projective_points(&f, 4);
    let mats: Vec<Matrix> = pts
        .iter()
        .map(|v| {
            // x -> x + (x J v^T) v
            let jv = vec_mul(v, &j.transpose(), &f);
            let mut m = Matrix::identity(4);
            for r in 0..4 {
                for c in 0..4 {
                    let e = f.add(m.get(r, c), f.mul(jv[r], v[c]));
                    m.set(r, c, e);
                }
            }
            assert_eq!(m.mul(&j, &f).mul(&m.transpose(), &f), j);
            m
        })
        .collect();
    induced_action(&f, &pts, &mats, true).unwrap()
}

fn mathieu() -> [(Vec<Permutation>, &'static str); 3] {
    let m11 = vec![cyc(11, "(1,2,3,4,5,6,7,8,9,10,11)"), cyc(11, "(3,7,11,8)(4,10,5,6)")];
    let mut m12: Vec<Permutation> = m11.iter().map(|g| g.extend_to(12)).collect();
    m12.push(cyc(12, "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"));
    let m22 = vec![
        cyc(22, "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)"),
        cyc(22, "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)"),
        cyc(22, "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)"),
    ];
    [(m11, "M11"), (m12, "M12"), (m22, "M22")]
}

/// Words a^i1 b^j1 a^i2 b^j2 ... with 1 to 6 syllable pairs, exponents
/// reduced to at most half the generator orders, shortest first.
fn words(oa: usize, ob: usize) -> Vec<Vec<i32>> {
    let exps = |o: usize| -> Vec<i32> {
        let h = (o / 2) as i32;
        (1..=h).flat_map(|e| if 2 * e as usize == o { vec![e] } else { vec![e, -e] }).collect()
    };
    let (ea, eb) = (exps(oa), exps(ob));
    let mut out: Vec<Vec<i32>> = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..6 {
        if out.len() > 2000 {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for &i in &ea {
                for &j in &eb {
                    let mut v = w.clone();
                    v.extend(std::iter::repeat(i.signum()).take(i.unsigned_abs() as usize));
                    v.extend(std::iter::repeat(2 * j.signum()).take(j.unsigned_abs() as usize));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by_key(|w| w.len());
    let mut seen = std::collections::HashSet::new();
    out.retain(|w| !is_power(w) && seen.insert(cyclic_key(w)));
    out
}

fn is_power(w: &[i32]) -> bool {
    let n = w.len();
    (1..n).any(|d| n % d == 0 && (d..n).all(|i| w[i] == w[i - d]))
}

/// Least rotation of the word or its inverse.
fn cyclic_key(w: &[i32]) -> Vec<i32> {
    let inv: Vec<i32> = w.iter().rev().map(|l| -l).collect();
    let mut best = w.to_vec();
    for v in [w.to_vec(), inv] {
        for k in 0..v.len() {
            let mut r = v[k..].to_vec();
            r.extend_from_slice(&v[..k]);
            best = best.min(r);
        }
    }
    best
}

fn eval(w: &[i32], gens: &[Permutation]) -> Permutation {
    let images: Vec<(Permutation, Permutation)> = gens.iter().map(|g| (g.clone(), g.inverse())).collect();
    Presentation::evaluate(w, &images, Permutation::identity(gens[0].degree()), |a, b| a * b)
}

fn complete(p: &Presentation, target_index: usize) -> bool {
    let r = coset_enumeration(p, &[vec![2]], 400_000);
    if std::env::var_os("GEN_DEBUG").is_some() {
        eprintln!("{} relators: {:?}", p.relators.len(), r.as_ref().map_err(|e| e.to_string()));
    }
    matches!(r, Ok(i) if i == target_index)
}

/// Adds power relators of short words until coset enumeration over ⟨b⟩
/// gives the right index, then drops redundant ones.
fn find_presentation(gens: &[Permutation]) -> Option<Presentation> {
    let g = PermGroup::new(gens.to_vec()).unwrap();
    let ob = gens[1].order_u64().unwrap() as usize;
    let oa = gens[0].order_u64().unwrap() as usize;
    let target = (g.order_u64().unwrap() as usize) / ob;
    let mut rels = vec![vec![1; oa], vec![2; ob]];
    let mut p = Presentation::new(2, rels.clone()).unwrap();
    for w in words(oa, ob) {
        if complete(&p, target) {
            break;
        }
        let k = eval(&w, gens).order_u64().unwrap() as usize;
        let r: Vec<i32> = w.iter().copied().cycle().take(w.len() * k).collect();
        rels.push(r);
        p = Presentation::new(2, rels.clone()).unwrap();
    }
    if !complete(&p, target) {
        return None;
    }
    let mut i = 2;
    while i < rels.len() {
        let mut trial = rels.clone();
        trial.remove(i);
        if complete(&Presentation::new(2, trial.clone()).unwrap(), target) {
            rels = trial;
        } else {
            i += 1;
        }
    }
    Some(Presentation::new(2, rels).unwrap())
}

/// First product-replacement pair of the requested orders generating `g`.
fn pair_with_orders(g: &PermGroup, orders: &[(u64, u64)], seed: u64) -> Option<Vec<Permutation>> {
    let els: Vec<Permutation> = g.random_elements(seed).take(4000).collect();
    for &(oa, ob) in orders {
        let xs: Vec<&Permutation> = els.iter().filter(|x| x.order_u64() == Some(oa)).take(40).collect();
        let ys: Vec<&Permutation> = els.iter().filter(|x| x.order_u64() == Some(ob)).take(40).collect();
        for x in &xs {
            for y in &ys {
                let h = PermGroup::new(vec![(*x).clone(), (*y).clone()]).unwrap();
                if h.order() == g.order() {
                    return Some(vec![(*x).clone(), (*y).clone()]);
                }
            }
        }
    }
    None
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "crates/core/data".into());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).unwrap();

    let only = std::env::args().nth(2);
    if only.is_none() {
        ship_groups(dir);
    }
    let a5 = vec![cyc(5, "(1,2)(3,4)"), cyc(5, "(1,3,5)")];
    let presented: Vec<(&str, PermGroup, Vec<(u64, u64)>)> = vec![
        ("A5", PermGroup::new(a5).unwrap(), vec![]),
        ("A6", catalogue::alternating(6).unwrap(), vec![(2, 4)]),
        ("A7", catalogue::alternating(7).unwrap(), vec![(2, 4), (2, 5), (3, 5)]),
        ("L2_7", catalogue::psl(2, 7).unwrap(), vec![(2, 3)]),
        ("L2_8", catalogue::psl(2, 8).unwrap(), vec![(2, 3), (2, 7), (2, 9), (3, 7), (3, 9)]),
        ("L3_3", catalogue::psl(3, 3).unwrap(), vec![(2, 3), (2, 4), (2, 13), (3, 4)]),
    ];
    for (id, group, orders) in presented {
        if only.as_deref().is_some_and(|o| o != id) {
            continue;
        }
        let candidates = if orders.is_empty() {
            vec![group.generators().to_vec()]
        } else {
            orders
                .iter()
                .filter_map(|&o| pair_with_orders(&group, &[o], 1))
                .collect()
        };
        let (gens, p) = candidates
            .into_iter()
            .find_map(|gens| find_presentation(&gens).map(|p| (gens, p)))
            .unwrap_or_else(|| panic!("{id}: no presentation found"));
        verify_relators(&p, &gens).unwrap();
        let g = PermGroup::new(gens.clone()).unwrap();
        let note = format!("{id}: generators a, b of orders {} and {}", gens[0].order(), gens[1].order());
        write(dir, &format!("{id}.gens"), &format_generator_file(&gens, g.degree(), g.order_u64(), &[&note]));
        write(
            dir,
            &format!("{id}.pres"),
            &p.format(&[&format!("{id}: power relators found by coset enumeration over <b>")]),
        );
    }
}

fn ship_groups(dir: &Path) {
    for (gens, id) in mathieu() {
        ship_group(dir, id, gens, &[&format!("{id}: classical generators (GAP MathieuGroup convention)")]);
    }
    let sz = PermGroup::new(suzuki8()).unwrap();
    assert_eq!(sz.order_u64(), Some(29120));
    ship_group(
        dir,
        "Sz8",
        two_generators(&sz, 1),
        &[
            "Sz(8): Suzuki matrices S(a,b), M(k), T over GF(8) = GF(2)[x]/(x^3+x+1), twist a -> a^4,",
            "row vectors on the 65-point orbit of <(1,0,0,0)>; two product-replacement elements (seed 1)",
        ],
    );
    let u = PermGroup::new(unitary33()).unwrap();
    assert_eq!(u.order_u64(), Some(6048));
    ship_group(
        dir,
        "U3_3",
        two_generators(&u, 1),
        &[
            "U3(3): unitary unitriangular matrices and -J in SU(3,9), J antidiagonal,",
            "acting on the 28 isotropic points; two product-replacement elements (seed 1)",
        ],
    );
    let s = PermGroup::new(symplectic43()).unwrap();
    assert_eq!(s.order_u64(), Some(25920));
    ship_group(
        dir,
        "PSp4_3",
        two_generators(&s, 1),
        &[
            "PSp4(3): symplectic transvections for J = antidiag(1,1,-1,-1) over GF(3),",
            "acting on the 40 projective points; two product-replacement elements (seed 1)",
        ],
    );
    let l34 = catalogue::psl(3, 4).unwrap();
    ship_group(
        dir,
        "L3_4",
        two_generators(&l34, 1),
        &["L3(4) on the 21 points of PG(2,4); two product-replacement elements (seed 1)"],
    );

}

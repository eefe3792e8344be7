//! Acceptance suite. Prints one line per criterion and fails if any is red.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use centra::catalogue::{self, Family, GroupDescriptor, SHIPPED_PRESENTATIONS};
use centra::classify::{
    lifting_check, tables, soundness_crosscheck, verify_witness, GroupProfile, Outcome, PropertyReport,
};
use centra::grpstruct::{centraliser, conjugacy_representatives, is_soluble, DEFAULT_CAP};
use centra::modrep::{
    affine_group, complement_count_oracle, deleted_module, derivation_space, fixed_subspace,
    module_scan_soluble_stabilisers, permutation_module, vector_stabiliser, Acting, GModule,
};
use centra::ncgraph::build_ncgraph;
use centra::{PermGroup, Permutation, PiSet};

const PER_GROUP_LIMIT: Duration = Duration::from_secs(60);
const SCAN_LIMIT: Duration = Duration::from_secs(10);
const LIFT_LIMIT: Duration = Duration::from_secs(5);
const CROSSCHECK_LIMIT: Duration = Duration::from_secs(15 * 60);
const ORACLE_LIMIT: u64 = 1_000_000;

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line { ok, detail: detail.into() }
}

fn group(name: &str) -> PermGroup {
    GroupDescriptor::parse(name).unwrap().build().unwrap()
}

fn pi(s: &str) -> PiSet {
    PiSet::parse(s).unwrap()
}

fn all_primes(g: &PermGroup) -> PiSet {
    PiSet::new(&centra::ffield::prime_divisors(g.order_u64().unwrap())).unwrap()
}

fn c1() -> Line {
    let names = [
        "A5", "A6", "A7", "M11", "L2(7)", "L2(8)", "L2(11)", "L2(13)", "L3(3)", "U3(3)", "L3(4)", "PSp4(3)", "Sz(8)",
        "M22",
    ];
    let mut bad = Vec::new();
    let mut slowest = (Duration::ZERO, "");
    for name in names {
        let t = Instant::now();
        let g = group(name);
        let r = GroupProfile::new(name, g.clone(), DEFAULT_CAP).unwrap().check(&all_primes(&g)).unwrap();
        let dt = t.elapsed();
        if dt > slowest.0 {
            slowest = (dt, name);
        }
        if r.outcome != Outcome::Holds || dt > PER_GROUP_LIMIT {
            bad.push(format!("{name}: {} in {dt:.1?}", r.outcome));
        }
    }
    line(
        bad.is_empty(),
        format!("{} groups hold for all primes, slowest {} {:.1?} {:?}", names.len(), slowest.1, slowest.0, bad),
    )
}

fn c2() -> Line {
    let g = group("A8");
    let prof = GroupProfile::new("A8", g.clone(), DEFAULT_CAP).unwrap();
    let r2 = prof.check(&pi("2")).unwrap();
    let r3 = prof.check(&pi("3")).unwrap();
    let w = r3.witness.clone();
    let ok = r2.outcome == Outcome::Holds
        && r3.outcome == Outcome::Fails
        && w.as_ref().is_some_and(|w| {
            Permutation::parse_cycles(8, &w.element).unwrap().cycle_lengths() == [3]
                && w.derived_orders.last().is_some_and(|&o| o >= 60)
        })
        && verify_witness(&g, &r3).is_ok();
    line(
        ok,
        format!(
            "A8 {{2}} {}, {{3}} {} witness {:?}",
            r2.outcome,
            r3.outcome,
            w.map(|w| (w.element, w.derived_orders))
        ),
    )
}

fn c3() -> Line {
    let mut parts = Vec::new();
    let mut ok = true;
    for name in ["A9", "M12"] {
        let g = group(name);
        let r = GroupProfile::new(name, g.clone(), DEFAULT_CAP).unwrap().check(&pi("2")).unwrap();
        let back = PropertyReport::from_json(&r.to_canonical_json()).unwrap();
        let verified = verify_witness(&g, &back).is_ok();
        ok &= r.outcome == Outcome::Fails && verified;
        let w = r.witness.map(|w| format!("{} |C|={}", w.element, w.centraliser_order));
        parts.push(format!("{name} {} {:?} reverified={verified}", r.outcome, w));
    }
    // a product of two transpositions in A9 centralises an A5 on the other points
    ok &= 9 > tables::thickness_bound(2);
    line(ok, parts.join("; "))
}

fn c4() -> Line {
    let t = Instant::now();
    let g = group("A8");
    let m = deleted_module(&g, 3).unwrap();
    let mut v = vec![0; 7];
    v[0] = 1;
    v[1] = 2;
    let st = vector_stabiliser(&g, &m, &v, 1 << 20).unwrap();
    let stab = st.stabiliser.order_u64().unwrap();
    let insoluble = !is_soluble(&st.stabiliser).unwrap();
    let scan = module_scan_soluble_stabilisers(&g, &m, 1 << 20).unwrap();
    let witness_orbit = scan
        .witness
        .as_ref()
        .map(|w| vector_stabiliser(&g, &m, w, 1 << 20).unwrap())
        .map(|s| (s.orbit_size as u64, s.stabiliser.order_u64().unwrap()));
    let dt = t.elapsed();
    let ok = m.dim() == 7
        && st.orbit_size == 56
        && stab == 360
        && st.orbit_size as u64 * stab == 20160
        && insoluble
        && !scan.all_soluble
        && witness_orbit == Some((56, 360))
        && dt < SCAN_LIMIT;
    line(
        ok,
        format!(
            "orbit {} stabiliser {stab} insoluble={insoluble}, scan all_soluble={} witness orbit/stab {:?} in {dt:.1?}",
            st.orbit_size, scan.all_soluble, witness_orbit
        ),
    )
}

fn c5() -> Line {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let mut trivial_h1 = 0;
    for name in SHIPPED_PRESENTATIONS {
        let pg = catalogue::shipped_presentation(name).unwrap();
        let g = &pg.group;
        for p in [2u64, 3, 5, 7, 11] {
            let mut modules: Vec<(&str, GModule)> = vec![("trivial", GModule::trivial(g, p, 1).unwrap())];
            modules.push(("perm", permutation_module(g, p).unwrap()));
            modules.push(("deleted", deleted_module(g, p).unwrap()));
            for (kind, m) in modules {
                let d = m.dim();
                let r = pg.presentation.generators;
                let space = derivation_space(&pg.presentation, &m).unwrap();
                let all: Vec<usize> = (0..r).collect();
                let fixed = fixed_subspace(&m, Acting::Generators(&all)).unwrap().len();
                if space.dim_b1 != d - fixed {
                    bad.push(format!("{name} {kind} F{p}: dim B1 {} vs {}", space.dim_b1, d - fixed));
                }
                if kind == "trivial" {
                    // perfect groups have no non-zero homomorphisms to F_p
                    trivial_h1 += 1;
                    if space.dim_h1 != 0 {
                        bad.push(format!("{name} trivial F{p}: H1 dim {}", space.dim_h1));
                    }
                }
                let Some(total) = p.checked_pow((d * r) as u32).filter(|&t| t <= ORACLE_LIMIT) else {
                    continue;
                };
                let count = complement_count_oracle(&pg.presentation, &m, total).unwrap();
                pairs += 1;
                if count != p.pow(space.dim_z1 as u32) {
                    bad.push(format!("{name} {kind} F{p}: oracle {count} vs p^{}", space.dim_z1));
                }
            }
        }
    }
    line(
        bad.is_empty(),
        format!("{pairs} oracle pairs, {trivial_h1} perfect/trivial H1 checks {:?}", bad),
    )
}

fn c6() -> Line {
    let t = Instant::now();
    let a5 = catalogue::alternating(5).unwrap();
    let aff = affine_group(&deleted_module(&a5, 2).unwrap(), DEFAULT_CAP).unwrap();
    let v = PermGroup::with_degree(aff.group.degree(), aff.translations.clone()).unwrap();
    let x = aff
        .group
        .element_list(DEFAULT_CAP)
        .unwrap()
        .into_iter()
        .find(|y| y.order_u64() == Some(5))
        .unwrap();
    let x = v.generators()[0].compose(&x).unwrap();
    let verdict = lifting_check(&aff.group, &v, &x, DEFAULT_CAP).unwrap();
    let dt = t.elapsed();
    let ok = aff.group.order_u64() == Some(960)
        && v.order_u64() == Some(16)
        && verdict.lift_order == Some(5)
        && verdict.passed
        && dt < LIFT_LIMIT;
    line(
        ok,
        format!(
            "|G|={} |N|={} lift {:?} order {:?}, |C(x̂)N/N|={:?} |C(x̄)|={} in {dt:.1?}",
            aff.group.order(),
            verdict.normal_order,
            verdict.lift,
            verdict.lift_order,
            verdict.projected_order,
            verdict.downstairs_centraliser_order
        ),
    )
}

fn c7() -> Line {
    let mut bad = Vec::new();
    let mut groups = 0;
    let mut corpus: Vec<(String, PermGroup)> = catalogue::catalogue()
        .into_iter()
        .filter(|d| d.expected_order.as_ref().is_some_and(|o| *o <= BigUint::from(2000u32)))
        .map(|d| (d.name.clone(), d.build().unwrap()))
        .collect();
    corpus.push(("S4".into(), catalogue::symmetric(4).unwrap()));
    let mut seen = HashSet::new();
    for (name, g) in &corpus {
        if !seen.insert(name.clone()) {
            continue;
        }
        groups += 1;
        let gr = build_ncgraph(g, 2000).unwrap();
        let order = g.order_u64().unwrap();
        for (i, x) in gr.vertices().iter().enumerate() {
            let c = centraliser(g, x, 2000).unwrap().order_u64().unwrap();
            let d = gr.degree(x).unwrap();
            if d != order - c || gr.brute_degree(i) != d {
                bad.push(format!("{name} {x}"));
                break;
            }
        }
    }
    for g in [
        catalogue::alternating(5).unwrap(),
        catalogue::symmetric(4).unwrap(),
        catalogue::sl2(3).unwrap(),
    ] {
        let gr = build_ncgraph(&g, 2000).unwrap();
        for x in gr.vertices() {
            let view = gr.lambda_star(x).unwrap();
            let c = centraliser(&g, x, 2000).unwrap();
            let gc = build_ncgraph(&c, 2000).unwrap();
            let mut want = gc.vertices().to_vec();
            want.sort();
            let n = gc.vertex_count();
            let edges: u64 = (0..n).map(|i| (i + 1..n).filter(|&j| gc.adjacent(i, j)).count() as u64).sum();
            if view.sorted_vertices() != want || view.edge_count() != edges {
                bad.push(format!("lambda* at {x}"));
                break;
            }
        }
    }
    let a5 = catalogue::alternating(5).unwrap();
    let gr = build_ncgraph(&a5, 2000).unwrap();
    let pair = gr.domination_pair().unwrap();
    let dom_ok = pair.as_ref().is_some_and(|(a, b)| {
        let ca = centraliser(&a5, a, 2000).unwrap();
        a5.element_list(60)
            .unwrap()
            .iter()
            .filter(|g| ca.contains(g) && g.commutes_with(b))
            .count()
            == 1
    });
    if !dom_ok {
        bad.push("domination pair".into());
    }
    line(
        bad.is_empty(),
        format!(
            "{groups} groups of order <= 2000, lambda* on A5 S4 SL2(3), A5 pair {:?} {:?}",
            pair.map(|(a, b)| (a.to_string(), b.to_string())),
            bad
        ),
    )
}

fn c8() -> Line {
    let x3 = |n| tables::x_alt_membership(n, &pi("3")).unwrap();
    let checks = [
        ("alt {3}", (5..=7).all(x3) && !x3(8)),
        ("J2 {7}", tables::x_spor_membership("J2", &pi("7")).unwrap()),
        ("M11 pibar", tables::sporadic_pibar("M11").unwrap().primes() == [2, 3, 5, 11]),
        ("M11 degree", tables::sporadic_alt_degree("M11").unwrap() == 6),
        ("J1 degree", tables::sporadic_alt_degree("J1").unwrap() == 5),
        ("thickness(2)", tables::thickness_bound(2) == 8),
        ("psp({2})", tables::psp_bound(&pi("2")) == 16),
        (
            "Q",
            tables::q_in_q(8) && tables::q_in_q(27) && tables::q_in_q(7) && tables::q_in_q(5) && !tables::q_in_q(11),
        ),
    ];
    let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    line(bad.is_empty(), format!("{} lookups {:?}", checks.len(), bad))
}

fn c9() -> Line {
    let t = Instant::now();
    let pis = pi("2,3,5,7").nonempty_subsets();
    let report = soundness_crosscheck(&catalogue::catalogue(), &pis, DEFAULT_CAP).unwrap();
    let dt = t.elapsed();
    let ok = report.violations == 0 && report.capped == 0 && dt < CROSSCHECK_LIMIT;
    line(
        ok,
        format!(
            "{} rows over {} subsets, {} violations, {} capped in {dt:.1?}",
            report.rows.len(),
            pis.len(),
            report.violations,
            report.capped
        ),
    )
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn prime_power(q: u64) -> (u64, u32) {
    let p = (2..=q).find(|p| q % p == 0).unwrap();
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    assert_eq!(r, 1);
    (p, k)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Orders from the standard formulas, and from the ATLAS for the file groups.
fn formula_order(d: &GroupDescriptor) -> BigUint {
    let b = |x: u64| BigUint::from(x);
    match &d.family {
        Family::Alt(n) => factorial(*n) / 2u32,
        Family::Sym(n) => factorial(*n),
        Family::Psl2(q) => b(q * (q * q - 1) / gcd(2, q - 1)),
        Family::Sl2(q) => b(q * (q * q - 1)),
        Family::Psl3(q) => {
            let _ = prime_power(*q);
            b(q.pow(3) * (q * q - 1) * (q.pow(3) - 1) / gcd(3, q - 1))
        }
        Family::File(_) => b(match d.name.as_str() {
            "M11" => 7920,
            "M12" => 95040,
            "M22" => 443520,
            "U3(3)" => 6048,
            "PSp4(3)" => 25920,
            "L3(4)" => 20160,
            "Sz(8)" => 29120,
            other => panic!("no reference order for {other}"),
        }),
    }
}

fn closure(g: &PermGroup) -> HashSet<Permutation> {
    let id = g.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut todo = vec![id];
    while let Some(x) = todo.pop() {
        for s in g.generators() {
            let y = x.compose(s).unwrap();
            if seen.insert(y.clone()) {
                todo.push(y);
            }
        }
    }
    seen
}

fn c10() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    let mut orders = 0;
    let mut membership = 0;
    let mut classes = 0;
    for d in catalogue::catalogue() {
        let g = d.build().unwrap();
        orders += 1;
        if *g.order() != formula_order(&d) {
            bad.push(format!("{} order {}", d.name, g.order()));
        }
        let order = g.order_u64().unwrap();
        if order <= 5000 {
            membership += 1;
            let elems = closure(&g);
            let n = g.degree();
            let mut agree = elems.len() as u64 == order && elems.iter().all(|x| g.contains(x));
            for _ in 0..200 {
                let mut img: Vec<u32> = (0..n as u32).collect();
                for i in (1..n).rev() {
                    img.swap(i, rng.gen_range(0..=i));
                }
                let x = Permutation::from_images(img).unwrap();
                agree &= g.contains(&x) == elems.contains(&x);
            }
            if !agree {
                bad.push(format!("{} membership", d.name));
            }
        }
        if let Ok(cs) = conjugacy_representatives(&g, DEFAULT_CAP) {
            let mut total = 0;
            for c in &cs {
                classes += 1;
                let cen = centraliser(&g, &c.representative, DEFAULT_CAP).unwrap().order_u64().unwrap();
                total += c.size;
                if c.size * cen != order {
                    bad.push(format!("{} class {}", d.name, c.representative));
                }
            }
            if total != order {
                bad.push(format!("{} class sizes sum {total}", d.name));
            }
        }
    }
    line(
        bad.is_empty(),
        format!("{orders} orders, {membership} membership checks, {classes} classes {:?}", bad),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Line); 10] = [
        ("all-primes positive list", c1),
        ("A8 separation", c2),
        ("negative witnesses", c3),
        ("orbit-stabiliser and module scan", c4),
        ("cohomology consistency", c5),
        ("lifting on V:A5", c6),
        ("non-commuting graph", c7),
        ("table predicates", c8),
        ("table soundness cross-check", c9),
        ("engine properties", c10),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let l = f();
        let tag = if l.ok { "PASS" } else { "FAIL" };
        let text = format!("criterion {:>2} {tag} {name} ({:.1?}): {}\n", i + 1, t.elapsed(), l.detail);
        let _ = std::io::stdout().write_all(text.as_bytes());
        if !l.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

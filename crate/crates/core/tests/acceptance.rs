//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use comet_core::charformula::{char_series, coeff_recursion, compare_table, CoeffMemo};
use comet_core::crystal::{
    apply_e, apply_e_brute, apply_f, confluence_counterexample, count_steep, entries, enumerate_steep, SteepSequence,
};
use comet_core::freealg::{
    build_quotient, fact_grid, lattice_equiv, run_fact_grid, verify_algebra_fact, Algebra, Fact, LatticeMode,
    QuiverParams,
};
use comet_core::qarith::{check_identity, evaluate, AtPoint, Identity};
use comet_core::quiver::{DegreeVector, Gen};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Outcome {
    pass: bool,
    detail: String,
}

fn dv(s: &str) -> DegreeVector {
    s.parse().unwrap()
}

fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = body();
    let took = t.elapsed();
    let pass = out.pass && took < limit;
    println!(
        "criterion {n} [{title}]: {} ({:.1}s, limit {}s) {}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    pass
}

fn rank_one() -> Algebra {
    Algebra::on(&QuiverParams::standard(1, 4, 6), &[dv("4:5"), dv("3:6")]).unwrap()
}

fn rank_two() -> Algebra {
    Algebra::new(&QuiverParams::standard(2, 4, 4)).unwrap()
}

fn identities() -> Outcome {
    let mut cases = 0;
    let mut fails = Vec::new();
    let point = AtPoint::new(BigRational::from_integer(3.into())).unwrap();
    for id in Identity::ALL {
        let grid = id.grid(6);
        if matches!(id, Identity::TripleBinom | Identity::QTriple) && grid.len() != 343 {
            fails.push(format!("{} grid has {} cases", id.name(), grid.len()));
        }
        for p in grid {
            cases += 1;
            let symbolic = check_identity(id.name(), &p).map(|c| c.holds).unwrap_or(false);
            let numeric = evaluate(&point, id, &p).map(|c| c.holds).unwrap_or(false);
            if !(symbolic && numeric) {
                fails.push(format!("{}{:?}", id.name(), p));
            }
        }
    }
    Outcome { pass: fails.is_empty(), detail: format!("{cases} cases, failures {fails:?}") }
}

fn concordance(dims: &[(usize, BTreeMap<DegreeVector, usize>)]) -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for (r, table) in dims {
        let top = DegreeVector::new(4, vec![4; *r]);
        for row in compare_table(&top, Some(table)).unwrap() {
            rows += 1;
            if !row.pass || row.quotient.is_none() {
                bad.push(row.csv());
            }
        }
    }
    let mut memo = CoeffMemo::new();
    let series = char_series(&dv("3:1"));
    for (d, want) in [("0:1", 1), ("1:1", 2), ("2:1", 5)] {
        let d = dv(d);
        let got = [series.coeff(&d), coeff_recursion(&d, &mut memo), BigInt::from(count_steep(&d).unwrap())];
        if got.iter().any(|c| *c != BigInt::from(want)) {
            bad.push(format!("anchor {d}: {got:?}"));
        }
    }
    let zero = dv("0:");
    let three = dv("3:");
    let r0 = char_series(&three);
    let mut memo = CoeffMemo::new();
    if r0.coeff(&zero) != 1.into()
        || r0.coeff(&three) != 4.into()
        || coeff_recursion(&three, &mut memo) != 4.into()
        || count_steep(&three).unwrap() != 4
    {
        bad.push("anchors at r = 0".into());
    }
    Outcome { pass: bad.is_empty(), detail: format!("{rows} degrees, mismatches {bad:?}") }
}

fn lemma_suite(r1: &Algebra, r2: &Algebra) -> Outcome {
    let facts = [
        Fact::MovingFjs,
        Fact::GenSerre,
        Fact::ZRecursion,
        Fact::ZScaling,
        Fact::ZVanishing,
        Fact::Expansion,
        Fact::Decomp,
        Fact::EprimeCommute,
        Fact::KjNested,
        Fact::EprimeDescends,
    ];
    let mut cases = 0;
    let mut bad = Vec::new();
    for (name, alg) in [("r=1", r1), ("r=2", r2)] {
        for f in facts {
            if alg.r() < 2 && matches!(f, Fact::EprimeCommute | Fact::KjNested) {
                continue;
            }
            let reports = run_fact_grid(alg, f).unwrap();
            cases += reports.len();
            bad.extend(reports.iter().filter(|r| !r.pass).map(|r| format!("{name} {} {:?}", r.fact, r.params)));
        }
    }
    // Coverage of the stated parameter ranges.
    let has = |f: Fact, p: &[i64]| fact_grid(r1, f).iter().any(|q| q.starts_with(p));
    for l in 1..=3 {
        for n in 0..=2 {
            if !has(Fact::MovingFjs, &[l, n]) {
                bad.push(format!("moving_fjs ({l}, {n}) not covered"));
            }
        }
        if !has(Fact::ZVanishing, &[l]) || !has(Fact::ZRecursion, &[l]) || !has(Fact::ZScaling, &[l]) {
            bad.push(format!("z laws at l = {l} not covered"));
        }
    }
    for l in 1..=2 {
        for n in 0..=1 {
            if !has(Fact::Expansion, &[l, n]) {
                bad.push(format!("expansion ({l}, {n}) not covered"));
            }
        }
    }
    for a in 1..=3 {
        for b in 1..=4 - a {
            if !has(Fact::GenSerre, &[a, b]) {
                bad.push(format!("gen_serre ({a}, {b}) not covered"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{cases} cases, failures {bad:?}") }
}

fn crystal_serre(r1: &Algebra, r2: &Algebra) -> Outcome {
    let mut bad = Vec::new();
    for n in 0..=2 {
        let rep = verify_algebra_fact(r1, Fact::CrystalSerreLattice, &[1, n]).unwrap();
        if !rep.pass {
            bad.push(format!("crystal Serre at n = {n}"));
        }
    }
    let (i1, j) = (Gen::Imag(1), Gen::Real(1));
    let d = dv("1:1");
    let l = r1.lattice(&d, LatticeMode::Exact).unwrap();
    let x = r1.monomial(&[i1, j]).unwrap();
    let y = r1.monomial(&[j, i1]).unwrap();
    if lattice_equiv(&l, &x, &y).unwrap() {
        bad.push("f~_(i,1) f~_j . 1 and f~_j f~_(i,1) . 1 agree".into());
    }
    let reports = run_fact_grid(r2, Fact::FtildeCommute).unwrap();
    bad.extend(reports.iter().filter(|r| !r.pass).map(|r| format!("ftilde_commute {:?}", r.params)));
    Outcome { pass: bad.is_empty(), detail: format!("{} commutation cases, failures {bad:?}", reports.len()) }
}

fn crystal_coherence() -> Outcome {
    let mut bad = Vec::new();
    let mut words = 0;
    for top in ["8:", "5:5", "4:4,4", "2:2,2,2"] {
        for d in dv(top).box_below() {
            words += 1;
            if let Some(pair) = confluence_counterexample(&d).unwrap() {
                bad.push(format!("confluence at {d}: {pair:?}"));
            }
        }
    }
    let mut seqs = 0;
    for top in ["4:4", "4:4,4"] {
        let top = dv(top);
        let r = top.r();
        for d in top.box_below() {
            for iota in entries(r, 4) {
                let up = d.add(&iota.degree(r));
                let mut pre: HashMap<SteepSequence, SteepSequence> = HashMap::new();
                for b in enumerate_steep(&d).unwrap() {
                    seqs += 1;
                    let f = apply_f(iota, &b).unwrap();
                    if apply_e(iota, &f).unwrap().as_ref() != Some(&b) {
                        bad.push(format!("e~ f~ {iota} on {b}"));
                    }
                    if f.degree() != up {
                        bad.push(format!("degree of f~ {iota} on {b}"));
                    }
                    if let Some(old) = pre.insert(f.clone(), b.clone()) {
                        bad.push(format!("f~ {iota} sends {old} and {b} to {f}"));
                    }
                }
                if iota.is_real() && up.total() <= 8 {
                    for b in enumerate_steep(&up).unwrap() {
                        let fast = apply_e(iota, &b).unwrap();
                        if fast != pre.get(&b).cloned() || fast != apply_e_brute(iota, &b).unwrap() {
                            bad.push(format!("fast e~ {iota} on {b}"));
                        }
                    }
                }
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{words} degrees rewritten, {seqs} sequences, failures {bad:?}") }
}

fn omega_independence(two: &[(usize, BTreeMap<DegreeVector, usize>)]) -> Outcome {
    let mut bad = Vec::new();
    for (r, table) in two {
        let p = QuiverParams { omega: 3, ..QuiverParams::standard(*r, 4, 4) };
        let three = build_quotient(&p).unwrap().dimensions();
        if three != *table {
            bad.push(format!("dimension tables differ at r = {r}"));
        }
        for (d, dim) in &three {
            if count_steep(d).unwrap() != *dim {
                bad.push(format!("crystal count differs from omega = 3 dims at {d}"));
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("r in 0..=2, mismatches {bad:?}") }
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let mut all = true;
    all &= criterion(1, "q-identity suite", Duration::from_secs(30), identities);

    let mut dims = Vec::new();
    let mut r2 = None;
    all &= criterion(2, "dimension concordance", min(10), || {
        for r in 0..=1 {
            dims.push((r, build_quotient(&QuiverParams::standard(r, 4, 4)).unwrap().dimensions()));
        }
        let alg = rank_two();
        dims.push((2, alg.quotient().dimensions()));
        r2 = Some(alg);
        concordance(&dims)
    });
    let r2 = r2.unwrap();

    let r1 = rank_one();
    all &= criterion(3, "algebra lemma suite", min(10), || lemma_suite(&r1, &r2));
    all &= criterion(4, "crystal Serre in the lattice", min(5), || crystal_serre(&r1, &r2));
    all &= criterion(5, "crystal coherence", min(2), crystal_coherence);
    all &= criterion(6, "omega independence", min(10), || omega_independence(&dims));

    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if !all {
        std::process::exit(1);
    }
}

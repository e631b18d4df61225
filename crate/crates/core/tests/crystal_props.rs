use std::collections::HashMap;

use comet_core::charformula::{coeff_recursion, CoeffMemo};
use comet_core::crystal::*;
use comet_core::freealg::{lattice_equiv, Algebra, LatticeMode, QuiverParams};
use comet_core::quiver::{DegreeVector, Gen};
use proptest::prelude::*;

fn gen_strategy(r: usize, max_loop: u32) -> impl Strategy<Value = Gen> {
    let reals = if r == 0 { 0 } else { r as u32 };
    (0..max_loop + reals).prop_map(move |x| if x < max_loop { Gen::Imag(x + 1) } else { Gen::Real(x - max_loop + 1) })
}

fn word_strategy() -> impl Strategy<Value = (usize, OpWord)> {
    (0usize..=3).prop_flat_map(|r| (Just(r), prop::collection::vec(gen_strategy(r, 4), 0..14)))
}

proptest! {
    #[test]
    fn normalization_is_sound((r, w) in word_strategy()) {
        let s = normalize(&w, r).unwrap();
        prop_assert_eq!(s.degree(), degree_of(&w, r));
        prop_assert!(s.is_valid());
        prop_assert!(is_steep(&s.to_word(), r));
        prop_assert_eq!(normalize(&s.to_word(), r).unwrap(), s.clone());
        prop_assert_eq!(SteepSequence::parse(&s.to_string(), r).unwrap(), s);
    }

    #[test]
    fn one_step_rewrites_preserve_normal_form((r, w) in word_strategy()) {
        let s = normalize(&w, r).unwrap();
        for x in rewrite_neighbors(&w) {
            prop_assert_eq!(normalize(&x, r).unwrap(), s.clone());
        }
    }

    #[test]
    fn e_undoes_f((r, w) in word_strategy(), i in gen_strategy(3, 4)) {
        let b = normalize(&w, r).unwrap();
        let i = match i { Gen::Real(k) if r == 0 => Gen::Imag(k), Gen::Real(k) => Gen::Real((k - 1) % r as u32 + 1), g => g };
        let f = apply_f(i, &b).unwrap();
        prop_assert_eq!(apply_e(i, &f).unwrap(), Some(b.clone()));
        if let Some(p) = apply_e(i, &b).unwrap() {
            prop_assert_eq!(apply_f(i, &p).unwrap(), b.clone());
        }
        if i.is_real() {
            let Gen::Real(k) = i else { unreachable!() };
            prop_assert_eq!(epsilon_real(k, &b).unwrap(), b.p0[k as usize - 1]);
        }
    }
}

#[test]
fn exhaustive_confluence() {
    for top in ["6:", "4:4", "3:2,2"] {
        let top: DegreeVector = top.parse().unwrap();
        for d in top.box_below() {
            assert_eq!(confluence_counterexample(&d).unwrap(), None, "{d}");
        }
    }
}

/// Inverse of `apply_f(iota, .)` on degree `d`, tabulated by brute force.
fn predecessors(iota: Gen, d: &DegreeVector) -> HashMap<SteepSequence, SteepSequence> {
    let mut out = HashMap::new();
    for c in enumerate_steep(d).unwrap() {
        let f = apply_f(iota, &c).unwrap();
        assert!(out.insert(f, c).is_none(), "apply_f({iota}, .) is not injective at {d}");
    }
    out
}

#[test]
fn exhaustive_inverse_laws() {
    for top in ["4:4", "3:3,3"] {
        let top: DegreeVector = top.parse().unwrap();
        let r = top.r();
        for d in top.box_below() {
            for iota in entries(r, 4) {
                let pre = predecessors(iota, &d);
                let up = d.add(&iota.degree(r));
                for b in enumerate_steep(&up).unwrap() {
                    assert_eq!(apply_e(iota, &b).unwrap(), pre.get(&b).cloned(), "{iota} on {b}");
                }
            }
        }
    }
}

#[test]
fn fast_real_path_matches_definition() {
    let top: DegreeVector = "3:2,2".parse().unwrap();
    for d in top.box_below() {
        for b in enumerate_steep(&d).unwrap() {
            for iota in entries(2, 3) {
                assert_eq!(apply_e(iota, &b).unwrap(), apply_e_brute(iota, &b).unwrap(), "{iota} on {b}");
            }
        }
    }
}

#[test]
fn enumeration_is_steep_distinct_and_ordered() {
    let top: DegreeVector = "4:3,3".parse().unwrap();
    for d in top.box_below() {
        let all = enumerate_steep(&d).unwrap();
        let keys: Vec<(usize, String)> = all.iter().map(|s| (s.body.len(), s.to_string())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted, "{d}");
        assert!(all.iter().all(|s| s.degree() == d && is_steep(&s.to_word(), 2)));
    }
}

#[test]
fn rank_zero_counts_are_compositions() {
    for n in 1..=10u32 {
        assert_eq!(count_steep(&DegreeVector::new(n, vec![])).unwrap(), 1 << (n - 1));
        assert_eq!(compositions(n).len(), 1 << (n - 1));
    }
}

#[test]
fn counts_match_recursion() {
    for top in ["6:", "4:5", "4:3,3", "2:2,2,2"] {
        let top: DegreeVector = top.parse().unwrap();
        let mut memo = CoeffMemo::new();
        for d in top.box_below() {
            assert_eq!(coeff_recursion(&d, &mut memo), count_steep(&d).unwrap().into(), "{d}");
        }
    }
}

#[test]
fn bounds_are_guarded() {
    assert!(matches!(enumerate_steep(&DegreeVector::new(MAX_DEGREE + 1, vec![])), Err(CrystalError::TooLarge(_))));
    assert!(matches!(words_of_degree(&DegreeVector::new(MAX_WORD_LENGTH + 1, vec![])), Err(CrystalError::TooLarge(_))));
}

/// Words with only real entries and `(i,1)` have the same normal form exactly
/// when their monomials agree in the lattice modulo `v^-1`.
fn exactness_on(alg: &Algebra, top: &DegreeVector) {
    let r = top.r();
    for d in top.box_below() {
        let words: Vec<OpWord> = words_of_degree(&d)
            .unwrap()
            .into_iter()
            .filter(|w| w.iter().all(|g| g.is_real() || *g == Gen::Imag(1)))
            .collect();
        let l = alg.lattice(&d, LatticeMode::Exact).unwrap();
        let images: Vec<_> = words.iter().map(|w| alg.monomial(w).unwrap()).collect();
        let forms: Vec<_> = words.iter().map(|w| normalize(w, r).unwrap()).collect();
        for a in 0..words.len() {
            for b in a + 1..words.len() {
                let same = lattice_equiv(&l, &images[a], &images[b]).unwrap();
                assert_eq!(same, forms[a] == forms[b], "{:?} vs {:?}", words[a], words[b]);
            }
        }
    }
}

#[test]
fn exactness_against_the_algebra() {
    let alg = Algebra::new(&QuiverParams::standard(1, 1, 4)).unwrap();
    exactness_on(&alg, &"1:4".parse().unwrap());
    let alg = Algebra::new(&QuiverParams::standard(1, 2, 3)).unwrap();
    exactness_on(&alg, &"2:3".parse().unwrap());
    let alg = Algebra::new(&QuiverParams::standard(2, 1, 2)).unwrap();
    exactness_on(&alg, &"1:2,2".parse().unwrap());
}

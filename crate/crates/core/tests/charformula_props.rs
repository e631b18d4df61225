use comet_core::charformula::*;
use comet_core::quiver::DegreeVector;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn top_strategy() -> impl Strategy<Value = DegreeVector> {
    (0u32..=4, prop::collection::vec(0u32..=3, 0..=3)).prop_map(|(n, m)| DegreeVector::new(n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_pair_multiplies_to_one(top in top_strategy()) {
        let inv = inverse_series(&top);
        let ch = char_series(&top);
        prop_assert!((&ch * &inv).is_one());
        prop_assert!((&inv * &ch).is_one());
        prop_assert_eq!(ch.coeff(&DegreeVector::zero(top.r())), BigInt::one());
    }

    #[test]
    fn coefficients_are_counts(top in top_strategy()) {
        let ch = char_series(&top);
        let mut memo = CoeffMemo::new();
        for d in top.box_below() {
            let c = ch.coeff(&d);
            prop_assert!(!c.is_negative());
            prop_assert_eq!(&c, &coeff_recursion(&d, &mut memo));
        }
    }

    #[test]
    fn an_unused_color_changes_nothing(top in top_strategy()) {
        let ch = char_series(&top);
        let mut m = top.m.clone();
        m.push(2);
        let wider = char_series(&DegreeVector::new(top.n, m));
        for d in top.box_below() {
            let mut m = d.m.clone();
            m.push(0);
            prop_assert_eq!(ch.coeff(&d), wider.coeff(&DegreeVector::new(d.n, m)));
        }
    }
}

#[test]
fn series_truncation_is_consistent() {
    let small: DegreeVector = "2:2,1".parse().unwrap();
    let big: DegreeVector = "4:3,3".parse().unwrap();
    let a = char_series(&small);
    let b = char_series(&big);
    for d in small.box_below() {
        assert_eq!(a.coeff(&d), b.coeff(&d));
    }
}

#[test]
fn dimension_table_rows() {
    let rows = dims_csv(&"1:1".parse().unwrap());
    assert_eq!(rows, vec!["0,0,1", "0,1,1", "1,0,1", "1,1,2"]);
}

#[test]
fn compare_table_passes_without_quotient() {
    for top in ["5:", "3:4", "3:3,3"] {
        let rows = compare_table(&top.parse().unwrap(), None).unwrap();
        assert!(rows.iter().all(|r| r.pass && r.quotient.is_none()));
    }
}

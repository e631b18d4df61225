use crate::qarith::RationalFunction;
use crate::quiver::{pairing, Gen};

use super::ncpoly::NCPoly;
use super::params::QuiverParams;

/// `sum_{t=0}^{a+1} (-1)^{a+1-t} F_j^(a+1-t) x F_j^(t)`, the order-`a` Serre element of `x`.
pub fn serre_element(x: &NCPoly, j: Gen, a: u32) -> NCPoly {
    let mut out = NCPoly::zero();
    for t in 0..=a + 1 {
        let sign = if (a + 1 - t).is_multiple_of(2) { 1 } else { -1 };
        let term = &(&NCPoly::divided_power(j, a + 1 - t) * x) * &NCPoly::divided_power(j, t);
        out = &out + &term.scale(&RationalFunction::from_int(sign));
    }
    out
}

/// `sum_{t+t'=1-(j,iota)} (-1)^t F_j^(t) F_iota F_j^(t')`.
pub fn serre_relation(params: &QuiverParams, j: Gen, iota: Gen) -> NCPoly {
    let a = (1 - pairing(params.omega, params.r, j, iota)) as u32;
    let f = NCPoly::gen(iota);
    let mut out = NCPoly::zero();
    for t in 0..=a {
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let term = &(&NCPoly::divided_power(j, t) * &f) * &NCPoly::divided_power(j, a - t);
        out = &out + &term.scale(&RationalFunction::from_int(sign));
    }
    out
}

/// The defining relations with every generator inside the truncation:
/// commutators `[F_{j_s}, F_{j_t}]` for `s < t` and the Serre elements of each
/// `F_{(i,l)}` with each `F_j`.
pub fn relation_set(params: &QuiverParams) -> Vec<NCPoly> {
    let mut out = Vec::new();
    let r = params.r as u32;
    for s in 1..=r {
        for t in s + 1..=r {
            let (a, b) = (NCPoly::gen(Gen::Real(s)), NCPoly::gen(Gen::Real(t)));
            let comm = &(&a * &b) - &(&b * &a);
            debug_assert_eq!(serre_relation(params, Gen::Real(s), Gen::Real(t)), -&comm);
            out.push(comm);
        }
    }
    for k in 1..=r {
        for l in 1..=params.max_loop {
            out.push(serre_relation(params, Gen::Real(k), Gen::Imag(l)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::qint;

    #[test]
    fn commutator_present() {
        let p = QuiverParams::new(2, 2, 1, 2, 1).unwrap();
        let rels = relation_set(&p);
        let comm = &NCPoly::word(vec![Gen::Real(1), Gen::Real(2)]) - &NCPoly::word(vec![Gen::Real(2), Gen::Real(1)]);
        assert!(rels.contains(&comm));
        assert_eq!(rels.len(), 3);
    }

    #[test]
    fn serre_for_first_loop_generator() {
        let p = QuiverParams::new(2, 1, 1, 2, 1).unwrap();
        let (i1, j) = (Gen::Imag(1), Gen::Real(1));
        let inv2: RationalFunction = RationalFunction::from(qint(2)).inv().unwrap();
        let mut expect = NCPoly::monomial(inv2.clone(), vec![i1, j, j]);
        expect.add_term(vec![j, i1, j], &RationalFunction::from_int(-1));
        expect.add_term(vec![j, j, i1], &inv2);
        assert_eq!(serre_relation(&p, j, i1), expect);
    }

    #[test]
    fn serre_for_second_loop_generator_has_four_terms() {
        let p = QuiverParams::new(2, 1, 2, 3, 2).unwrap();
        let s = serre_relation(&p, Gen::Real(1), Gen::Imag(2));
        assert_eq!(s.len(), 4);
        assert_eq!(s.degree(1), Some(crate::quiver::DegreeVector::new(2, vec![3])));
        let x = NCPoly::gen(Gen::Imag(2));
        assert_eq!(serre_element(&x, Gen::Real(1), 2), s);
    }
}

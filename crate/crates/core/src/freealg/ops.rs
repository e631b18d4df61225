//! Skew derivations, kernel decompositions and Kashiwara operators on the
//! exact quotient.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::linalg::{rank, rref, solve_columns, Exact};
use crate::qarith::{qint, RationalFunction};
use crate::quiver::{pairing_degrees, DegreeVector, Gen};

use super::lattice::{LatticeBasis, LatticeMode};
use super::ncpoly::NCPoly;
use super::params::QuiverParams;
use super::quotient::{Elem, GradedQuotient, DEFAULT_SPAN_BOUND};
use super::FreeAlgError;

pub type RF = RationalFunction;
pub type Vector = Elem<RF>;

/// `e'_iota` on words: the sum over positions `t` holding `iota` of
/// `v^{(-iota, |prefix|)}` times the word with position `t` deleted.
pub fn eprime(params: &QuiverParams, iota: Gen, x: &NCPoly) -> NCPoly {
    let di = iota.degree(params.r);
    let mut out = NCPoly::zero();
    for (w, c) in x.terms() {
        let mut prefix = DegreeVector::zero(params.r);
        for (t, g) in w.iter().enumerate() {
            if *g == iota {
                let e = pairing_degrees(params.omega, &di, &prefix);
                let mut rest = w[..t].to_vec();
                rest.extend_from_slice(&w[t + 1..]);
                out.add_term(rest, &(c * &RF::v_pow(e)));
            }
            prefix = prefix.add(&g.degree(params.r));
        }
    }
    out
}

type Cache<T> = Mutex<HashMap<(Gen, DegreeVector), Arc<T>>>;

/// The exact quotient together with cached kernels and decompositions.
pub struct Algebra {
    q: GradedQuotient<Exact>,
    images: Cache<Vec<Vector>>,
    kernels: Cache<Vec<Vector>>,
    pub(crate) lattices: Mutex<HashMap<(LatticeMode, DegreeVector), Arc<LatticeBasis>>>,
}

impl Algebra {
    pub fn new(params: &QuiverParams) -> Result<Self, FreeAlgError> {
        Self::on(params, &[params.top()])
    }

    /// Builds only the degrees below `tops`.
    pub fn on(params: &QuiverParams, tops: &[DegreeVector]) -> Result<Self, FreeAlgError> {
        let q = GradedQuotient::build(params, Exact, tops, DEFAULT_SPAN_BOUND)?;
        Ok(Self::from_quotient(q))
    }

    pub fn from_quotient(q: GradedQuotient<Exact>) -> Self {
        Self { q, images: Mutex::default(), kernels: Mutex::default(), lattices: Mutex::default() }
    }

    pub fn quotient(&self) -> &GradedQuotient<Exact> {
        &self.q
    }

    pub fn params(&self) -> &QuiverParams {
        self.q.params()
    }

    pub fn r(&self) -> usize {
        self.params().r
    }

    pub fn reduce(&self, x: &NCPoly) -> Result<Vector, FreeAlgError> {
        self.q.reduce(x)
    }

    pub fn reduce_at(&self, d: &DegreeVector, x: &NCPoly) -> Result<Vector, FreeAlgError> {
        self.q.reduce_at(d, x)
    }

    pub fn to_ncpoly(&self, x: &Vector) -> NCPoly {
        self.q.to_ncpoly(x)
    }

    pub fn word(&self, w: &[Gen]) -> Result<Vector, FreeAlgError> {
        self.q.reduce_word(w)
    }

    fn cached<T>(
        cache: &Cache<T>,
        key: (Gen, DegreeVector),
        make: impl FnOnce() -> Result<T, FreeAlgError>,
    ) -> Result<Arc<T>, FreeAlgError> {
        if let Some(v) = cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(make()?);
        cache.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// Images under `e'_iota` of the basis words of degree `d`; empty when
    /// `d - |iota|` is negative.
    fn images(&self, iota: Gen, d: &DegreeVector) -> Result<Arc<Vec<Vector>>, FreeAlgError> {
        Self::cached(&self.images, (iota, d.clone()), || {
            let Some(target) = d.checked_sub(&self.q.gen_degree(iota)) else {
                return Ok(Vec::new());
            };
            self.q
                .basis(d)?
                .iter()
                .map(|w| self.q.reduce_at(&target, &eprime(self.params(), iota, &NCPoly::word(w.clone()))))
                .collect()
        })
    }

    /// `e'_iota(x)`; `None` when the target degree is negative (the value is 0).
    pub fn eprime_elem(&self, iota: Gen, x: &Vector) -> Result<Option<Vector>, FreeAlgError> {
        let Some(target) = x.degree.checked_sub(&self.q.gen_degree(iota)) else {
            return Ok(None);
        };
        let imgs = self.images(iota, &x.degree)?;
        let mut out = self.q.zero(&target)?;
        for (b, c) in x.support() {
            out = out.add(&imgs[b].scale(c));
        }
        Ok(Some(out))
    }

    /// Basis of `ker e'_iota` in `U[d]`, as coordinate vectors.
    pub fn kernel(&self, iota: Gen, d: &DegreeVector) -> Result<Arc<Vec<Vector>>, FreeAlgError> {
        Self::cached(&self.kernels, (iota, d.clone()), || {
            let dim = self.q.dim(d).ok_or_else(|| FreeAlgError::OutOfRange(d.clone()))?;
            let imgs = self.images(iota, d)?;
            if imgs.is_empty() {
                return Ok((0..dim).map(|b| self.q.unit(d, b)).collect());
            }
            let tdim = imgs[0].coords.len();
            let rows: Vec<Vec<RF>> =
                (0..tdim).map(|t| imgs.iter().map(|img| img.coords[t].clone()).collect()).collect();
            Ok(rref(rows, dim).nullspace().into_iter().map(|coords| Elem { degree: d.clone(), coords }).collect())
        })
    }

    /// Columns `F_j^(l) * K_j[d - l j][k]` over all `l`, labelled by `l`.
    fn sum_columns(&self, j: Gen, d: &DegreeVector) -> Result<Vec<(u32, Vector)>, FreeAlgError> {
        if !j.is_real() {
            return Err(FreeAlgError::UnknownGenerator(j));
        }
        let dj = self.q.gen_degree(j);
        let mut cols = Vec::new();
        let mut e = d.clone();
        let mut l = 0;
        loop {
            for z in self.kernel(j, &e)?.iter() {
                cols.push((l, self.q.left_mul_divided(j, l, z)?));
            }
            match e.checked_sub(&dj) {
                Some(x) => e = x,
                None => break,
            }
            l += 1;
        }
        Ok(cols)
    }

    /// Whether `{F_j^(l) K_j[d - l j]}` is a basis of `U[d]`, by a rank count.
    pub fn direct_sum_holds(&self, j: Gen, d: &DegreeVector) -> Result<bool, FreeAlgError> {
        let n = self.q.dim(d).ok_or_else(|| FreeAlgError::OutOfRange(d.clone()))?;
        let cols = self.sum_columns(j, d)?;
        if cols.len() != n {
            return Ok(false);
        }
        let rows: Vec<Vec<RF>> = (0..n).map(|i| cols.iter().map(|(_, c)| c.coords[i].clone()).collect()).collect();
        Ok(rank(rows, n) == n)
    }

    /// The decomposition obtained by solving against the column basis of
    /// [`Self::direct_sum_holds`]; an independent route to [`Self::decompose_real`].
    pub fn decompose_by_columns(&self, j: Gen, x: &Vector) -> Result<Vec<(u32, Vector)>, FreeAlgError> {
        let cols = self.sum_columns(j, &x.degree)?;
        let dense: Vec<Vec<RF>> = cols.iter().map(|(_, c)| c.coords.clone()).collect();
        let a = solve_columns(&dense, &x.coords).ok_or_else(|| FreeAlgError::DirectSum(x.degree.clone()))?;
        let mut parts: BTreeMap<u32, Vector> = BTreeMap::new();
        let dj = self.q.gen_degree(j);
        let mut kidx: BTreeMap<u32, usize> = BTreeMap::new();
        for ((l, _), c) in cols.iter().zip(&a) {
            let k = kidx.entry(*l).or_insert(0);
            let mut e = x.degree.clone();
            for _ in 0..*l {
                e = e.checked_sub(&dj).expect("label degree exists");
            }
            let z = &self.kernel(j, &e)?[*k];
            *k += 1;
            if c.is_zero() {
                continue;
            }
            let entry = parts.entry(*l).or_insert_with(|| Elem::zero(e.clone(), z.coords.len()));
            *entry = entry.add(&z.scale(c));
        }
        Ok(parts.into_iter().filter(|(_, z)| !z.is_zero()).collect())
    }

    /// The unique `x = sum_l F_j^(l) z_l` with `z_l` in `K_j`; only nonzero
    /// summands are listed, by increasing `l`.
    ///
    /// Since `e'_j(F_j^(n) z) = v^{n-1} F_j^(n-1) z` on `K_j`, the chain
    /// `y_k = e'_j^k(x) = sum_{n>=k} v^{k(2n-k-1)/2} F_j^(n-k) z_n` is
    /// triangular in the `z_n` and is solved from the top.
    pub fn decompose_real(&self, j: Gen, x: &Vector) -> Result<Vec<(u32, Vector)>, FreeAlgError> {
        if !j.is_real() {
            return Err(FreeAlgError::UnknownGenerator(j));
        }
        let mut chain = vec![x.clone()];
        while let Some(next) = self.eprime_elem(j, chain.last().expect("nonempty"))? {
            if next.is_zero() {
                break;
            }
            chain.push(next);
        }
        if x.is_zero() {
            return Ok(Vec::new());
        }
        let top = chain.len() - 1;
        let mut parts: Vec<Option<Vector>> = vec![None; top + 1];
        for k in (0..=top).rev() {
            let mut acc = chain[k].clone();
            for (n, z) in parts.iter().enumerate().skip(k + 1) {
                if let Some(z) = z {
                    let e = (k * (2 * n - k - 1) / 2) as i64;
                    let t = self.q.left_mul_divided(j, (n - k) as u32, z)?;
                    acc = acc.sub(&t.scale(&RF::v_pow(e)));
                }
            }
            if !acc.is_zero() {
                parts[k] = Some(acc.scale(&RF::v_pow(-((k * k.saturating_sub(1) / 2) as i64))));
            }
        }
        Ok(parts.into_iter().enumerate().filter_map(|(l, z)| z.map(|z| (l as u32, z))).collect())
    }

    /// `sum_l F_j^(l) z_l`.
    pub fn reassemble(&self, j: Gen, d: &DegreeVector, parts: &[(u32, Vector)]) -> Result<Vector, FreeAlgError> {
        let mut out = self.q.zero(d)?;
        for (l, z) in parts {
            out = out.add(&self.q.left_mul_divided(j, *l, z)?);
        }
        Ok(out)
    }

    /// `f~_iota(x)`: the divided-power shift for real `iota`, left
    /// multiplication by `F_{(i,l)}` for imaginary `iota`.
    pub fn kashiwara_f(&self, iota: Gen, x: &Vector) -> Result<Vector, FreeAlgError> {
        match iota {
            Gen::Imag(_) => self.q.left_mul_gen(iota, x),
            Gen::Real(_) => {
                let target = x.degree.add(&self.q.gen_degree(iota));
                let mut out = self.q.zero(&target)?;
                for (l, z) in self.decompose_real(iota, x)? {
                    out = out.add(&self.q.left_mul_divided(iota, l + 1, &z)?);
                }
                Ok(out)
            }
        }
    }

    /// `e~_j(x)`; `None` when the target degree is negative (the value is 0).
    pub fn kashiwara_e_real(&self, j: Gen, x: &Vector) -> Result<Option<Vector>, FreeAlgError> {
        if !j.is_real() {
            return Err(FreeAlgError::UnknownGenerator(j));
        }
        let Some(target) = x.degree.checked_sub(&self.q.gen_degree(j)) else {
            return Ok(None);
        };
        let mut out = self.q.zero(&target)?;
        for (l, z) in self.decompose_real(j, x)? {
            if l >= 1 {
                out = out.add(&self.q.left_mul_divided(j, l - 1, &z)?);
            }
        }
        Ok(Some(out))
    }

    /// `f~_{w_1} ... f~_{w_n} . x`, rightmost operator first.
    pub fn apply_f_word(&self, w: &[Gen], x: &Vector) -> Result<Vector, FreeAlgError> {
        let mut acc = x.clone();
        for g in w.iter().rev() {
            acc = self.kashiwara_f(*g, &acc)?;
        }
        Ok(acc)
    }

    /// `f~_{w_1} ... f~_{w_n} . 1`.
    pub fn monomial(&self, w: &[Gen]) -> Result<Vector, FreeAlgError> {
        self.apply_f_word(w, &self.q.one())
    }

    /// `F_{(i,l)} F_j^(c) = sum_k F_j^(k) z_{k,c}`, as the map `k -> z_{k,c}`
    /// (zero entries included).
    pub fn z_table(&self, j: Gen, l: u32, c: u32) -> Result<BTreeMap<u32, Vector>, FreeAlgError> {
        if l < 1 || l > self.params().max_loop {
            return Err(FreeAlgError::UnknownGenerator(Gen::Imag(l)));
        }
        let mut w = vec![Gen::Imag(l)];
        w.extend(std::iter::repeat_n(j, c as usize));
        let fc = RF::from(crate::qarith::qfact(c as i64).expect("nonnegative"));
        let x = self.q.reduce_word(&w)?.scale(&fc.inv().expect("nonzero"));
        let parts: BTreeMap<u32, Vector> = self.decompose_real(j, &x)?.into_iter().collect();
        let dj = self.q.gen_degree(j);
        let mut out = BTreeMap::new();
        let mut e = x.degree.clone();
        for k in 0..=c {
            let z = match parts.get(&k) {
                Some(z) => z.clone(),
                None => self.q.zero(&e)?,
            };
            out.insert(k, z);
            if k < c {
                e = e.checked_sub(&dj).expect("k <= c");
            }
        }
        Ok(out)
    }

    /// `x F_j^(t)`.
    pub fn right_mul_divided(&self, x: &Vector, j: Gen, t: u32) -> Result<Vector, FreeAlgError> {
        let dj = self.q.gen_degree(j);
        let mut d = DegreeVector::zero(self.r());
        for _ in 0..t {
            d = d.add(&dj);
        }
        let y = self.q.left_mul_divided(j, t, &self.q.one())?;
        debug_assert_eq!(y.degree, d);
        self.q.mul(x, &y)
    }

    /// The order-`a` Serre sum `sum_t (-1)^{a+1-t} F_j^(a+1-t) x F_j^(t)`.
    pub fn serre_sum(&self, x: &Vector, j: Gen, a: u32) -> Result<Vector, FreeAlgError> {
        let mut target = x.degree.clone();
        for _ in 0..=a {
            target = target.add(&self.q.gen_degree(j));
        }
        let mut out = self.q.zero(&target)?;
        for t in 0..=a + 1 {
            let right = self.right_mul_divided(x, j, t)?;
            let term = self.q.left_mul_divided(j, a + 1 - t, &right)?;
            out = if (a + 1 - t).is_multiple_of(2) { out.add(&term) } else { out.sub(&term) };
        }
        Ok(out)
    }

    /// Smallest `a >= 0` whose Serre sum vanishes, or `None` if none does
    /// inside the truncation.
    pub fn serre_order(&self, x: &Vector, j: Gen) -> Result<Option<u32>, FreeAlgError> {
        if x.is_zero() {
            return Err(FreeAlgError::ZeroInput);
        }
        let mut a = 0;
        loop {
            match self.serre_sum(x, j, a) {
                Ok(s) if s.is_zero() => return Ok(Some(a)),
                Ok(_) => a += 1,
                Err(FreeAlgError::OutOfRange(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
    }

    /// `[n]` as a scalar.
    pub fn qn(n: i64) -> RF {
        qint(n).into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> RF {
        RF::v_pow(e)
    }

    const J: Gen = Gen::Real(1);
    const I1: Gen = Gen::Imag(1);

    #[test]
    fn eprime_examples() {
        let p = QuiverParams::standard(1, 2, 2);
        assert_eq!(eprime(&p, J, &NCPoly::gen(J)), NCPoly::one());
        assert_eq!(eprime(&p, J, &NCPoly::word(vec![I1, J])), NCPoly::monomial(v(-1), vec![I1]));
        assert_eq!(eprime(&p, I1, &NCPoly::word(vec![J, I1])), NCPoly::monomial(v(-1), vec![J]));
    }

    #[test]
    fn decomposition_examples() {
        let p = QuiverParams::standard(1, 1, 2);
        let alg = Algebra::new(&p).unwrap();
        let x = alg.word(&[I1]).unwrap();
        let parts = alg.decompose_real(J, &x).unwrap();
        assert_eq!(parts, vec![(0, x.clone())]);

        let x = alg.word(&[I1, J]).unwrap();
        let parts = alg.decompose_real(J, &x).unwrap();
        let mut z0 = NCPoly::word(vec![I1, J]);
        z0.add_term(vec![J, I1], &-v(-1));
        assert_eq!(parts.len(), 2);
        assert_eq!(alg.to_ncpoly(&parts[0].1), z0);
        assert_eq!(alg.to_ncpoly(&parts[1].1), NCPoly::monomial(v(-1), vec![I1]));
        assert_eq!(alg.reassemble(J, &x.degree, &parts).unwrap(), x);

        let f2 = alg.reduce(&NCPoly::divided_power(J, 2)).unwrap();
        let parts = alg.decompose_real(J, &f2).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 2);
        assert_eq!(parts[0].1, alg.quotient().one());
    }

    #[test]
    fn decomposition_routes_agree() {
        let p = QuiverParams::standard(2, 2, 2);
        let alg = Algebra::new(&p).unwrap();
        let degs: Vec<DegreeVector> = alg.quotient().degrees().cloned().collect();
        for d in &degs {
            for j in [Gen::Real(1), Gen::Real(2)] {
                assert!(alg.direct_sum_holds(j, d).unwrap(), "{d}");
                for b in 0..alg.quotient().dim(d).unwrap() {
                    let x = alg.quotient().unit(d, b);
                    let a = alg.decompose_real(j, &x).unwrap();
                    assert_eq!(a, alg.decompose_by_columns(j, &x).unwrap(), "{d} {b}");
                    assert_eq!(alg.reassemble(j, d, &a).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn kashiwara_examples() {
        let p = QuiverParams::standard(1, 1, 3);
        let alg = Algebra::new(&p).unwrap();
        let one = alg.quotient().one();
        assert_eq!(alg.kashiwara_f(J, &one).unwrap(), alg.word(&[J]).unwrap());
        for n in 0..3 {
            let fn_ = alg.reduce(&NCPoly::divided_power(J, n)).unwrap();
            let fn1 = alg.reduce(&NCPoly::divided_power(J, n + 1)).unwrap();
            assert_eq!(alg.kashiwara_f(J, &fn_).unwrap(), fn1);
        }
        let x = alg.word(&[I1, J]).unwrap();
        let mut expect = NCPoly::word(vec![J, I1, J]);
        expect.add_term(vec![J, J, I1], &-v(-1));
        expect = &expect + &(&NCPoly::divided_power(J, 2) * &NCPoly::monomial(v(-1), vec![I1]));
        assert_eq!(alg.kashiwara_f(J, &x).unwrap(), alg.reduce(&expect).unwrap());

        assert_eq!(alg.kashiwara_e_real(J, &alg.word(&[J]).unwrap()).unwrap(), Some(one.clone()));
        assert_eq!(alg.kashiwara_e_real(J, &alg.word(&[I1]).unwrap()).unwrap(), None);
        let e = alg.kashiwara_e_real(J, &x).unwrap().unwrap();
        assert_eq!(alg.to_ncpoly(&e), NCPoly::monomial(v(-1), vec![I1]));
    }

    #[test]
    fn z_table_examples() {
        let p = QuiverParams::standard(1, 1, 2);
        let alg = Algebra::new(&p).unwrap();
        let z = alg.z_table(J, 1, 0).unwrap();
        assert_eq!(alg.to_ncpoly(&z[&0]), NCPoly::gen(I1));
        let z = alg.z_table(J, 1, 1).unwrap();
        assert_eq!(alg.to_ncpoly(&z[&1]), NCPoly::monomial(v(-1), vec![I1]));
        let z = alg.z_table(J, 1, 2).unwrap();
        assert!(z[&0].is_zero());
    }

    #[test]
    fn serre_order_examples() {
        let p = QuiverParams::new(2, 2, 2, 4, 2).unwrap();
        let alg = Algebra::new(&p).unwrap();
        for l in 1..=2 {
            let x = alg.word(&[Gen::Imag(l)]).unwrap();
            assert_eq!(alg.serre_order(&x, J).unwrap(), Some(l));
        }
        let x = alg.word(&[I1, I1]).unwrap();
        assert_eq!(alg.serre_order(&x, J).unwrap(), Some(2));
        let x = alg.word(&[Gen::Real(2)]).unwrap();
        assert_eq!(alg.serre_order(&x, J).unwrap(), Some(0));
        assert!(alg.serre_order(&alg.quotient().zero(&x.degree).unwrap(), J).is_err());
    }
}

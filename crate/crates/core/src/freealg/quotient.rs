//! `U^-` at bounded degree as a quotient of the free algebra.
//!
//! Degree by degree, the piece `U[d]` is presented as the span of
//! `F_g (x) U[d - |g|]` over generators `g`, modulo the images of
//! `rel * b'` for each relation `rel` and each basis word `b'` of
//! `U[d - |rel|]`. Free words are never enumerated; every product is carried
//! through left-multiplication tables.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::{Exact, Field, IncrementalEchelon, Scalars, SparseRow, Specialized};
use crate::quiver::{DegreeVector, Gen};

use super::ncpoly::{NCPoly, Word};
use super::params::QuiverParams;
use super::relations::relation_set;
use super::FreeAlgError;

/// Default bound on the size of a spanning set `sum_g dim U[d - |g|]`.
pub const DEFAULT_SPAN_BOUND: usize = 20_000;

/// A homogeneous element of `U^-`, as coordinates over the stored basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Elem<F> {
    pub degree: DegreeVector,
    pub coords: Vec<F>,
}

impl<F: Field> Elem<F> {
    pub fn zero(degree: DegreeVector, dim: usize) -> Self {
        Self { degree, coords: vec![F::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "adding elements of different degrees");
        Self { degree: self.degree.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "subtracting elements of different degrees");
        Self { degree: self.degree.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { degree: self.degree.clone(), coords: self.coords.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }
}

#[derive(Clone, Debug)]
struct Piece<F> {
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
    /// `lmul[g][b]`: coordinates of `gens[g] * basis_{d - |g|}[b]`.
    lmul: Vec<Option<Vec<SparseRow<F>>>>,
    span: usize,
}

#[derive(Clone, Debug)]
pub struct GradedQuotient<S: Scalars = Exact> {
    params: QuiverParams,
    scalars: S,
    gens: Vec<Gen>,
    relations: Vec<NCPoly>,
    pieces: BTreeMap<DegreeVector, Piece<S::F>>,
}

/// The exact quotient over `Q(v)` on the full truncation box.
pub fn build_quotient(params: &QuiverParams) -> Result<GradedQuotient<Exact>, FreeAlgError> {
    GradedQuotient::build(params, Exact, &[params.top()], DEFAULT_SPAN_BOUND)
}

impl<S: Scalars> GradedQuotient<S> {
    /// Builds every degree below one of `tops` (a downward-closed set).
    pub fn build(
        params: &QuiverParams,
        scalars: S,
        tops: &[DegreeVector],
        span_bound: usize,
    ) -> Result<Self, FreeAlgError> {
        params.validate()?;
        let mut degrees: Vec<DegreeVector> = Vec::new();
        for t in tops {
            if t.r() != params.r || !params.in_box(t) {
                return Err(FreeAlgError::OutOfRange(t.clone()));
            }
            degrees.extend(t.box_below());
        }
        degrees.sort_by(|a, b| (a.total(), a).cmp(&(b.total(), b)));
        degrees.dedup();

        let gens = params.generators();
        let relations = relation_set(params);
        let mut embedded = Vec::with_capacity(relations.len());
        for rel in &relations {
            let deg = rel.degree(params.r).expect("relations are homogeneous");
            let mut terms = Vec::new();
            for (w, c) in rel.terms() {
                let c = scalars.embed(c).ok_or(FreeAlgError::BadSpecialization)?;
                let g = gens.iter().position(|g| *g == w[0]).expect("relation generators are admitted");
                terms.push((c, g, w[1..].to_vec()));
            }
            embedded.push((deg, terms));
        }

        let mut q = Self { params: params.clone(), scalars, gens, relations, pieces: BTreeMap::new() };
        let gen_degrees: Vec<DegreeVector> = q.gens.iter().map(|g| g.degree(params.r)).collect();
        for d in degrees {
            let piece = if d.is_zero() {
                let mut index = HashMap::new();
                index.insert(Vec::new(), 0);
                Piece { basis: vec![Vec::new()], index, lmul: vec![None; q.gens.len()], span: 1 }
            } else {
                q.build_piece(&d, &gen_degrees, &embedded, span_bound)?
            };
            q.pieces.insert(d, piece);
        }
        Ok(q)
    }

    #[allow(clippy::type_complexity)]
    fn build_piece(
        &self,
        d: &DegreeVector,
        gen_degrees: &[DegreeVector],
        relations: &[(DegreeVector, Vec<(S::F, usize, Word)>)],
        span_bound: usize,
    ) -> Result<Piece<S::F>, FreeAlgError> {
        let mut offsets: Vec<Option<(usize, DegreeVector)>> = vec![None; self.gens.len()];
        let mut ncols = 0;
        for (g, gd) in gen_degrees.iter().enumerate() {
            if let Some(e) = d.checked_sub(gd) {
                if let Some(p) = self.pieces.get(&e) {
                    offsets[g] = Some((ncols, e));
                    ncols += p.basis.len();
                }
            }
        }
        if ncols > span_bound {
            return Err(FreeAlgError::ResourceGuard { degree: d.clone(), size: ncols, bound: span_bound });
        }

        let mut elim = IncrementalEchelon::new(ncols);
        'rels: for (rd, terms) in relations {
            let Some(rest) = d.checked_sub(rd) else { continue };
            let Some(rest_piece) = self.pieces.get(&rest) else { continue };
            for b in 0..rest_piece.basis.len() {
                let mut row: SparseRow<S::F> = Vec::new();
                for (c, g, tail) in terms {
                    let (off, _) = offsets[*g].as_ref().expect("relation degree inside the set");
                    let start = self.unit(&rest, b);
                    let img = self.left_mul_word(tail, &start)?;
                    for (t, y) in img.support() {
                        row.push(((off + t) as u32, c.mul(y)));
                    }
                }
                elim.insert(&row);
                if elim.is_full() {
                    break 'rels;
                }
            }
        }

        let rref = elim.into_rref();
        let mut is_pivot = vec![false; ncols];
        for (p, _) in &rref {
            is_pivot[*p] = true;
        }
        let mut free_index = vec![usize::MAX; ncols];
        let mut basis = Vec::new();
        let mut col_owner = Vec::with_capacity(ncols);
        for (g, o) in offsets.iter().enumerate() {
            if let Some((_, e)) = o {
                let p = &self.pieces[e];
                for b in 0..p.basis.len() {
                    col_owner.push((g, b));
                }
            }
        }
        for c in 0..ncols {
            if !is_pivot[c] {
                free_index[c] = basis.len();
                let (g, b) = col_owner[c];
                let e = &offsets[g].as_ref().expect("owner has an offset").1;
                let mut w = vec![self.gens[g]];
                w.extend_from_slice(&self.pieces[e].basis[b]);
                basis.push(w);
            }
        }
        let mut column_image: Vec<SparseRow<S::F>> = (0..ncols)
            .map(|c| if is_pivot[c] { Vec::new() } else { vec![(free_index[c] as u32, S::F::one())] })
            .collect();
        for (p, row) in rref {
            column_image[p] = row
                .into_iter()
                .filter(|(q, _)| *q as usize != p)
                .map(|(q, x)| (free_index[q as usize] as u32, x.neg()))
                .collect();
        }
        let mut lmul: Vec<Option<Vec<SparseRow<S::F>>>> = vec![None; self.gens.len()];
        let mut it = column_image.into_iter();
        for (g, o) in offsets.iter().enumerate() {
            if let Some((_, e)) = o {
                let n = self.pieces[e].basis.len();
                lmul[g] = Some(it.by_ref().take(n).collect());
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        Ok(Piece { basis, index, lmul, span: ncols })
    }

    pub fn params(&self) -> &QuiverParams {
        &self.params
    }

    pub fn scalars(&self) -> &S {
        &self.scalars
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn contains(&self, d: &DegreeVector) -> bool {
        self.pieces.contains_key(d)
    }

    pub fn degrees(&self) -> impl Iterator<Item = &DegreeVector> {
        self.pieces.keys()
    }

    pub fn dim(&self, d: &DegreeVector) -> Option<usize> {
        self.pieces.get(d).map(|p| p.basis.len())
    }

    /// Size of the spanning set used at `d`.
    pub fn span_size(&self, d: &DegreeVector) -> Option<usize> {
        self.pieces.get(d).map(|p| p.span)
    }

    pub fn basis(&self, d: &DegreeVector) -> Result<&[Word], FreeAlgError> {
        self.piece(d).map(|p| p.basis.as_slice())
    }

    /// Position of a word among the basis words of its degree.
    pub fn basis_index(&self, w: &[Gen]) -> Option<usize> {
        let d = DegreeVector::of_word(w, self.params.r);
        self.pieces.get(&d)?.index.get(w).copied()
    }

    fn piece(&self, d: &DegreeVector) -> Result<&Piece<S::F>, FreeAlgError> {
        self.pieces.get(d).ok_or_else(|| FreeAlgError::OutOfRange(d.clone()))
    }

    pub fn zero(&self, d: &DegreeVector) -> Result<Elem<S::F>, FreeAlgError> {
        Ok(Elem::zero(d.clone(), self.piece(d)?.basis.len()))
    }

    pub fn one(&self) -> Elem<S::F> {
        self.unit(&DegreeVector::zero(self.params.r), 0)
    }

    /// The `b`-th basis word of degree `d`. Panics if out of range.
    pub fn unit(&self, d: &DegreeVector, b: usize) -> Elem<S::F> {
        let mut e = Elem::zero(d.clone(), self.pieces[d].basis.len());
        e.coords[b] = S::F::one();
        e
    }

    pub fn gen_degree(&self, g: Gen) -> DegreeVector {
        g.degree(self.params.r)
    }

    fn gen_pos(&self, g: Gen) -> Result<usize, FreeAlgError> {
        self.gens.iter().position(|h| *h == g).ok_or(FreeAlgError::UnknownGenerator(g))
    }

    /// `F_g * x`.
    pub fn left_mul_gen(&self, g: Gen, x: &Elem<S::F>) -> Result<Elem<S::F>, FreeAlgError> {
        let gp = self.gen_pos(g)?;
        let target = x.degree.add(&self.gen_degree(g));
        let piece = self.piece(&target)?;
        let table = piece.lmul[gp].as_ref().ok_or_else(|| FreeAlgError::OutOfRange(target.clone()))?;
        let mut out: Elem<S::F> = Elem::zero(target, piece.basis.len());
        for (b, xb) in x.support() {
            for (t, y) in &table[b] {
                let t = *t as usize;
                out.coords[t] = out.coords[t].add(&xb.mul(y));
            }
        }
        Ok(out)
    }

    /// `w * x` for a word `w`.
    pub fn left_mul_word(&self, w: &[Gen], x: &Elem<S::F>) -> Result<Elem<S::F>, FreeAlgError> {
        let mut acc = x.clone();
        for g in w.iter().rev() {
            acc = self.left_mul_gen(*g, &acc)?;
        }
        Ok(acc)
    }

    pub fn reduce_word(&self, w: &[Gen]) -> Result<Elem<S::F>, FreeAlgError> {
        self.left_mul_word(w, &self.one())
    }

    /// Coordinates of a homogeneous polynomial of degree `d`.
    pub fn reduce_at(&self, d: &DegreeVector, x: &NCPoly) -> Result<Elem<S::F>, FreeAlgError> {
        let mut out = self.zero(d)?;
        for (w, c) in x.terms() {
            if DegreeVector::of_word(w, self.params.r) != *d {
                return Err(FreeAlgError::Inhomogeneous);
            }
            let c = self.scalars.embed(c).ok_or(FreeAlgError::BadSpecialization)?;
            let img = self.reduce_word(w)?;
            for (t, y) in img.support() {
                out.coords[t] = out.coords[t].add(&c.mul(y));
            }
        }
        Ok(out)
    }

    /// Coordinates of a nonzero homogeneous polynomial.
    pub fn reduce(&self, x: &NCPoly) -> Result<Elem<S::F>, FreeAlgError> {
        if x.is_zero() {
            return Err(FreeAlgError::ZeroInput);
        }
        let d = x.degree(self.params.r).ok_or(FreeAlgError::Inhomogeneous)?;
        self.reduce_at(&d, x)
    }

    /// `x * y` in the quotient.
    pub fn mul(&self, x: &Elem<S::F>, y: &Elem<S::F>) -> Result<Elem<S::F>, FreeAlgError> {
        let d = x.degree.add(&y.degree);
        let mut out = self.zero(&d)?;
        let basis = &self.piece(&x.degree)?.basis;
        for (b, xb) in x.support() {
            let img = self.left_mul_word(&basis[b], y)?;
            for (t, z) in img.support() {
                out.coords[t] = out.coords[t].add(&xb.mul(z));
            }
        }
        Ok(out)
    }

    /// `F_g^(n) * x`.
    pub fn left_mul_divided(&self, g: Gen, n: u32, x: &Elem<S::F>) -> Result<Elem<S::F>, FreeAlgError> {
        let w = vec![g; n as usize];
        let y = self.left_mul_word(&w, x)?;
        let f = crate::qarith::RationalFunction::from(crate::qarith::qfact(n as i64).expect("nonnegative"));
        let f = self.scalars.embed(&f).ok_or(FreeAlgError::BadSpecialization)?;
        Ok(y.scale(&f.inv()))
    }

    /// Dimension table over every degree in the set.
    pub fn dimensions(&self) -> BTreeMap<DegreeVector, usize> {
        self.pieces.iter().map(|(d, p)| (d.clone(), p.basis.len())).collect()
    }
}

impl GradedQuotient<Exact> {
    /// The polynomial `sum_b x_b * basis_b`.
    pub fn to_ncpoly(&self, x: &Elem<crate::qarith::RationalFunction>) -> NCPoly {
        let basis = &self.pieces[&x.degree].basis;
        let mut out = NCPoly::zero();
        for (b, c) in x.support() {
            out.add_term(basis[b].clone(), c);
        }
        out
    }
}

/// Dimensions from several independent specializations `v -> v0 mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDimensions {
    /// Componentwise minimum over the specializations. Specializing can only
    /// raise a dimension, never lower it.
    pub dims: BTreeMap<DegreeVector, usize>,
    /// Whether all specializations agreed at every degree.
    pub agree: bool,
}

/// Builds the quotient at each point in `points` and compares the tables.
pub fn modular_dimensions(
    params: &QuiverParams,
    tops: &[DegreeVector],
    points: &[u64],
) -> Result<ModularDimensions, FreeAlgError> {
    let mut tables = Vec::new();
    for &x in points {
        let q = GradedQuotient::build(params, Specialized::new(x), tops, DEFAULT_SPAN_BOUND)?;
        tables.push(q.dimensions());
    }
    let first = tables.first().cloned().unwrap_or_default();
    let agree = tables.iter().all(|t| *t == first);
    let dims = first
        .keys()
        .map(|d| {
            let m = tables.iter().map(|t| t[d]).min().expect("at least one table");
            (d.clone(), m)
        })
        .collect();
    Ok(ModularDimensions { dims, agree })
}

/// Three fixed pseudo-random specialization points derived from `seed`.
pub fn specialization_points(seed: u64) -> [u64; 3] {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    [0; 3].map(|_| rng.gen_range(2..crate::linalg::Fp::P - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::relations::relation_set;

    fn d(n: u32, m: &[u32]) -> DegreeVector {
        DegreeVector::new(n, m.to_vec())
    }

    #[test]
    fn small_dimensions_rank_one() {
        let p = QuiverParams::standard(1, 1, 2);
        let q = build_quotient(&p).unwrap();
        assert_eq!(q.dim(&d(1, &[1])), Some(2));
        assert_eq!(q.dim(&d(1, &[2])), Some(2));
        for m in 0..=2 {
            assert_eq!(q.dim(&d(0, &[m])), Some(1));
        }
        let b = q.basis(&d(1, &[1])).unwrap();
        assert!(b.contains(&vec![Gen::Imag(1), Gen::Real(1)]));
        assert!(b.contains(&vec![Gen::Real(1), Gen::Imag(1)]));
    }

    #[test]
    fn relations_reduce_to_zero_and_basis_words_to_units() {
        let p = QuiverParams::standard(2, 2, 2);
        let q = build_quotient(&p).unwrap();
        for rel in relation_set(&p) {
            let dg = rel.degree(2).unwrap();
            if q.contains(&dg) {
                assert!(q.reduce(&rel).unwrap().is_zero(), "{rel}");
            }
        }
        for dg in q.degrees().cloned().collect::<Vec<_>>() {
            for (k, w) in q.basis(&dg).unwrap().iter().enumerate() {
                assert_eq!(q.reduce_word(w).unwrap(), q.unit(&dg, k));
            }
        }
    }

    #[test]
    fn compositions_when_no_real_vertices() {
        let p = QuiverParams::standard(0, 4, 0);
        let q = build_quotient(&p).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| q.dim(&d(n, &[])).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 2, 4, 8]);
    }

    #[test]
    fn modular_matches_exact() {
        let p = QuiverParams::standard(1, 3, 3);
        let exact = build_quotient(&p).unwrap().dimensions();
        let m = modular_dimensions(&p, &[p.top()], &specialization_points(1)).unwrap();
        assert!(m.agree);
        assert_eq!(m.dims, exact);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let p = QuiverParams::standard(1, 1, 1);
        let q = build_quotient(&p).unwrap();
        assert!(matches!(q.reduce_word(&[Gen::Real(1); 2]), Err(FreeAlgError::OutOfRange(_))));
        let mixed = &NCPoly::gen(Gen::Real(1)) + &NCPoly::gen(Gen::Imag(1));
        assert!(matches!(q.reduce(&mixed), Err(FreeAlgError::Inhomogeneous)));
    }
}

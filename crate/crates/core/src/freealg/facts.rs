//! Machine checks of the algebra and lattice lemmas on a truncated quotient.

use std::fmt;
use std::str::FromStr;

use crate::qarith::{qbinom, qint};
use crate::quiver::{DegreeVector, Gen};

use super::lattice::{kernel_lattice, lattice_build, lattice_equiv, LatticeMode};
use super::ncpoly::NCPoly;
use super::ops::{eprime, Algebra, Vector, RF};
use super::FreeAlgError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    MovingFjs,
    GenSerre,
    EndoSerre,
    ZRecursion,
    ZScaling,
    ZVanishing,
    Expansion,
    InLinfty,
    Opassoc,
    FtildeCommute,
    EprimeCommute,
    EprimeDescends,
    KjNested,
    CrystalSerreLattice,
    PartInL,
    RightMult,
    Decomp,
}

impl Fact {
    pub const ALL: [Fact; 17] = [
        Fact::MovingFjs,
        Fact::GenSerre,
        Fact::EndoSerre,
        Fact::ZRecursion,
        Fact::ZScaling,
        Fact::ZVanishing,
        Fact::Expansion,
        Fact::InLinfty,
        Fact::Opassoc,
        Fact::FtildeCommute,
        Fact::EprimeCommute,
        Fact::EprimeDescends,
        Fact::KjNested,
        Fact::CrystalSerreLattice,
        Fact::PartInL,
        Fact::RightMult,
        Fact::Decomp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fact::MovingFjs => "moving_fjs",
            Fact::GenSerre => "gen_serre",
            Fact::EndoSerre => "endo_serre",
            Fact::ZRecursion => "z_recursion",
            Fact::ZScaling => "z_scaling",
            Fact::ZVanishing => "z_vanishing",
            Fact::Expansion => "expansion",
            Fact::InLinfty => "in_linfty",
            Fact::Opassoc => "opassoc",
            Fact::FtildeCommute => "ftilde_commute",
            Fact::EprimeCommute => "eprime_commute",
            Fact::EprimeDescends => "eprime_descends",
            Fact::KjNested => "kj_nested",
            Fact::CrystalSerreLattice => "crystal_serre_lattice",
            Fact::PartInL => "partinL",
            Fact::RightMult => "rightmult",
            Fact::Decomp => "decomp",
        }
    }

    /// Parameter layout, for usage messages.
    pub fn signature(self) -> &'static str {
        match self {
            Fact::MovingFjs => "l n [j]",
            Fact::GenSerre => "a b [j]",
            Fact::EndoSerre => "l [j]",
            Fact::ZRecursion | Fact::ZScaling => "l k c [j]",
            Fact::ZVanishing => "l c [j]",
            Fact::Expansion => "l n [j]",
            Fact::InLinfty => "l c [j]",
            Fact::Opassoc => "j deg(x) deg(z)",
            Fact::FtildeCommute | Fact::EprimeCommute => "s t deg(u)",
            Fact::EprimeDescends => "deg",
            Fact::KjNested => "k j deg(z)",
            Fact::CrystalSerreLattice => "l n [j]",
            Fact::PartInL => "j deg",
            Fact::RightMult => "j deg(k) deg(z)",
            Fact::Decomp => "j deg",
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fact {
    type Err = FreeAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fact::ALL.iter().copied().find(|f| f.name() == s).ok_or_else(|| FreeAlgError::UnknownFact(s.to_string()))
    }
}

/// Outcome of one fact at one parameter tuple. `witness` holds the nonzero
/// discrepancy (or the offending element) on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub fact: Fact,
    pub params: Vec<i64>,
    pub pass: bool,
    pub witness: Option<String>,
}

struct Ctx<'a> {
    alg: &'a Algebra,
    fact: Fact,
    params: &'a [i64],
}

impl Ctx<'_> {
    fn bad(&self) -> FreeAlgError {
        FreeAlgError::BadFactParams { fact: self.fact.name().to_string(), params: self.params.to_vec() }
    }

    fn r(&self) -> usize {
        self.alg.r()
    }

    fn uint(&self, idx: usize) -> Result<u32, FreeAlgError> {
        let x = *self.params.get(idx).ok_or_else(|| self.bad())?;
        u32::try_from(x).map_err(|_| self.bad())
    }

    fn arity(&self, n: usize) -> Result<(), FreeAlgError> {
        if self.params.len() == n {
            Ok(())
        } else {
            Err(self.bad())
        }
    }

    fn real(&self, idx: u32) -> Result<Gen, FreeAlgError> {
        if idx >= 1 && idx as usize <= self.r() {
            Ok(Gen::Real(idx))
        } else {
            Err(self.bad())
        }
    }

    /// Real vertex from an optional trailing parameter, defaulting to `j1`.
    fn real_at(&self, idx: usize) -> Result<Gen, FreeAlgError> {
        match self.params.len() {
            n if n == idx => self.real(1),
            n if n == idx + 1 => self.real(self.uint(idx)?),
            _ => Err(self.bad()),
        }
    }

    fn imag(&self, l: u32) -> Result<Gen, FreeAlgError> {
        if l >= 1 && l <= self.alg.params().max_loop {
            Ok(Gen::Imag(l))
        } else {
            Err(self.bad())
        }
    }

    fn degree(&self, at: usize) -> Result<DegreeVector, FreeAlgError> {
        let n = self.uint(at)?;
        let m = (0..self.r()).map(|k| self.uint(at + 1 + k)).collect::<Result<Vec<_>, _>>()?;
        Ok(DegreeVector::new(n, m))
    }

    fn equal(&self, lhs: &Vector, rhs: &Vector) -> FactReport {
        self.zero(&lhs.sub(rhs))
    }

    fn zero(&self, x: &Vector) -> FactReport {
        let witness = (!x.is_zero()).then(|| self.alg.to_ncpoly(x).display_with(self.r()));
        self.report(witness)
    }

    fn report(&self, witness: Option<String>) -> FactReport {
        FactReport { fact: self.fact, params: self.params.to_vec(), pass: witness.is_none(), witness }
    }
}

fn rf(x: crate::qarith::LaurentPoly) -> RF {
    RF::from(x)
}

fn sign(e: u32) -> RF {
    RF::from_int(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// First failure witness in a sequence of checks, if any.
fn first_failure(
    reports: impl IntoIterator<Item = Result<FactReport, FreeAlgError>>,
) -> Result<Option<String>, FreeAlgError> {
    for r in reports {
        let r = r?;
        if !r.pass {
            return Ok(r.witness.or_else(|| Some(String::from("?"))));
        }
    }
    Ok(None)
}

/// Checks one fact at one parameter tuple.
pub fn verify_algebra_fact(alg: &Algebra, fact: Fact, params: &[i64]) -> Result<FactReport, FreeAlgError> {
    let cx = Ctx { alg, fact, params };
    let q = alg.quotient();
    match fact {
        Fact::MovingFjs => {
            let j = cx.real_at(2)?;
            let (l, n) = (cx.uint(0)?, cx.uint(1)?);
            let x = alg.word(&[cx.imag(l)?])?;
            let lhs = alg.right_mul_divided(&x, j, l + 1 + n)?;
            let mut rhs = lhs.scale(&RF::zero());
            for t in 0..=l {
                let c = &sign(l + t) * &rf(qbinom((l + n - t) as i64, n as i64).expect("k >= 0"));
                let term = q.left_mul_divided(j, l + 1 + n - t, &alg.right_mul_divided(&x, j, t)?)?;
                rhs = rhs.add(&term.scale(&c));
            }
            Ok(cx.equal(&lhs, &rhs))
        }
        Fact::GenSerre => {
            let j = cx.real_at(2)?;
            let (a, b) = (cx.uint(0)?, cx.uint(1)?);
            let x = alg.word(&[cx.imag(a)?, cx.imag(b)?])?;
            Ok(cx.zero(&alg.serre_sum(&x, j, a + b)?))
        }
        Fact::EndoSerre => {
            let j = cx.real_at(1)?;
            let l = cx.uint(0)?;
            let x = alg.word(&[cx.imag(l)?])?;
            Ok(cx.zero(&alg.serre_sum(&x, j, l)?))
        }
        Fact::ZRecursion => {
            let j = cx.real_at(3)?;
            let (l, k, c) = (cx.uint(0)?, cx.uint(1)?, cx.uint(2)?);
            cx.imag(l)?;
            if c == 0 || k > c {
                return Err(cx.bad());
            }
            let now = alg.z_table(j, l, c)?;
            let prev = alg.z_table(j, l, c - 1)?;
            let target = &now[&k];
            let mut acc = target.scale(&RF::zero());
            if let Some(z) = prev.get(&k) {
                let zf = alg.right_mul_divided(z, j, 1)?;
                let fz = q.left_mul_gen(j, z)?;
                let e = -(l as i64) + 2 * (c as i64 - k as i64 - 1);
                acc = acc.add(&zf).sub(&fz.scale(&RF::v_pow(e)));
            }
            if k >= 1 {
                let z = &prev[&(k - 1)];
                let e = -(l as i64) + 2 * (c as i64 - k as i64);
                acc = acc.add(&z.scale(&(&rf(qint(k as i64)) * &RF::v_pow(e))));
            }
            let rhs = acc.scale(&rf(qint(c as i64)).inv().expect("c >= 1"));
            Ok(cx.equal(target, &rhs))
        }
        Fact::ZScaling => {
            let j = cx.real_at(3)?;
            let (l, k, c) = (cx.uint(0)?, cx.uint(1)?, cx.uint(2)?);
            cx.imag(l)?;
            if k > c {
                return Err(cx.bad());
            }
            let lhs = alg.z_table(j, l, c)?[&k].clone();
            let base = alg.z_table(j, l, c - k)?[&0].clone();
            let e = k as i64 * (c as i64 - k as i64 - l as i64);
            Ok(cx.equal(&lhs, &base.scale(&RF::v_pow(e))))
        }
        Fact::ZVanishing => {
            let j = cx.real_at(2)?;
            let (l, c) = (cx.uint(0)?, cx.uint(1)?);
            cx.imag(l)?;
            if c <= l {
                return Err(cx.bad());
            }
            Ok(cx.zero(&alg.z_table(j, l, c)?[&0]))
        }
        Fact::Expansion => {
            let j = cx.real_at(2)?;
            let (l, n) = (cx.uint(0)?, cx.uint(1)?);
            let x = alg.word(&[cx.imag(l)?])?;
            let lhs = alg.right_mul_divided(&x, j, l + 1 + n)?;
            let mut rhs = lhs.scale(&RF::zero());
            for r in 0..=l {
                let z = &alg.z_table(j, l, l - r)?[&0];
                let e = -(r as i64) * (n as i64 + r as i64 + 1);
                rhs = rhs.add(&q.left_mul_divided(j, r + n + 1, z)?.scale(&RF::v_pow(e)));
            }
            Ok(cx.equal(&lhs, &rhs))
        }
        Fact::InLinfty => {
            let j = cx.real_at(2)?;
            let (l, c) = (cx.uint(0)?, cx.uint(1)?);
            if l != 1 || c > l {
                return Err(cx.bad());
            }
            let z = alg.z_table(j, l, c)?[&0].clone();
            let mut w = vec![Gen::Imag(l)];
            w.extend(std::iter::repeat_n(j, c as usize));
            let m = alg.monomial(&w)?;
            let lat = lattice_build(alg, &z.degree, LatticeMode::Exact)?;
            match lattice_equiv(&lat, &z, &m) {
                Ok(true) => Ok(cx.report(None)),
                Ok(false) => Ok(cx.zero(&z.sub(&m))),
                Err(FreeAlgError::NotInLattice(_)) => {
                    Ok(cx.report(Some(format!("not in lattice: {}", alg.to_ncpoly(&z).display_with(cx.r())))))
                }
                Err(e) => Err(e),
            }
        }
        Fact::Opassoc => {
            cx.arity(1 + 2 * (cx.r() + 1))?;
            let j = cx.real(cx.uint(0)?)?;
            let dx = cx.degree(1)?;
            let dz = cx.degree(2 + cx.r())?;
            let kz = alg.kernel(j, &dz)?;
            let dim = q.dim(&dx).ok_or_else(|| FreeAlgError::OutOfRange(dx.clone()))?;
            let mut ops: Vec<Gen> = vec![j];
            ops.extend(q.generators().iter().copied().filter(|g| !g.is_real()));
            let mut checks = Vec::new();
            for b in 0..dim {
                let x = q.unit(&dx, b);
                for z in kz.iter() {
                    let xz = q.mul(&x, z)?;
                    for &op in &ops {
                        if !q.contains(&xz.degree.add(&q.gen_degree(op))) {
                            continue;
                        }
                        let lhs = alg.kashiwara_f(op, &xz)?;
                        let rhs = q.mul(&alg.kashiwara_f(op, &x)?, z)?;
                        checks.push(Ok(cx.equal(&lhs, &rhs)));
                    }
                }
            }
            Ok(cx.report(first_failure(checks)?))
        }
        Fact::FtildeCommute => {
            cx.arity(2 + cx.r() + 1)?;
            let (s, t) = (cx.real(cx.uint(0)?)?, cx.real(cx.uint(1)?)?);
            let d = cx.degree(2)?;
            let dim = q.dim(&d).ok_or_else(|| FreeAlgError::OutOfRange(d.clone()))?;
            let mut checks = Vec::new();
            for b in 0..dim {
                let u = q.unit(&d, b);
                let lhs = alg.kashiwara_f(s, &alg.kashiwara_f(t, &u)?)?;
                let rhs = alg.kashiwara_f(t, &alg.kashiwara_f(s, &u)?)?;
                checks.push(Ok(cx.equal(&lhs, &rhs)));
            }
            Ok(cx.report(first_failure(checks)?))
        }
        Fact::EprimeCommute => {
            cx.arity(2 + cx.r() + 1)?;
            let (s, t) = (cx.real(cx.uint(0)?)?, cx.real(cx.uint(1)?)?);
            let d = cx.degree(2)?;
            let dim = q.dim(&d).ok_or_else(|| FreeAlgError::OutOfRange(d.clone()))?;
            let twice = |a: Gen, b: Gen, x: &Vector| -> Result<Option<Vector>, FreeAlgError> {
                match alg.eprime_elem(b, x)? {
                    Some(y) => alg.eprime_elem(a, &y),
                    None => Ok(None),
                }
            };
            let mut checks = Vec::new();
            for b in 0..dim {
                let x = q.unit(&d, b);
                match (twice(s, t, &x)?, twice(t, s, &x)?) {
                    (Some(l), Some(r)) => checks.push(Ok(cx.equal(&l, &r))),
                    (None, None) => {}
                    _ => return Err(cx.bad()),
                }
            }
            Ok(cx.report(first_failure(checks)?))
        }
        Fact::EprimeDescends => {
            cx.arity(cx.r() + 1)?;
            let d = cx.degree(0)?;
            if !q.contains(&d) {
                return Err(FreeAlgError::OutOfRange(d));
            }
            let r = cx.r();
            let mut flanks: Vec<NCPoly> = vec![NCPoly::one()];
            flanks.extend(q.generators().iter().map(|g| NCPoly::gen(*g)));
            let mut witness = None;
            'outer: for rel in q.relations() {
                let Some(dr) = rel.degree(r) else { continue };
                for a in &flanks {
                    for b in &flanks {
                        let da = a.degree(r).unwrap_or_else(|| DegreeVector::zero(r));
                        let db = b.degree(r).unwrap_or_else(|| DegreeVector::zero(r));
                        if da.add(&dr).add(&db) != d {
                            continue;
                        }
                        let x = &(a * rel) * b;
                        for &iota in q.generators() {
                            let Some(target) = d.checked_sub(&q.gen_degree(iota)) else { continue };
                            let y = alg.reduce_at(&target, &eprime(alg.params(), iota, &x))?;
                            if !y.is_zero() {
                                witness = Some(format!(
                                    "e'_{iota}({}) = {}",
                                    x.display_with(r),
                                    alg.to_ncpoly(&y).display_with(r)
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            Ok(cx.report(witness))
        }
        Fact::KjNested => {
            cx.arity(2 + cx.r() + 1)?;
            let (k, j) = (cx.real(cx.uint(0)?)?, cx.real(cx.uint(1)?)?);
            if k == j {
                return Err(cx.bad());
            }
            let d = cx.degree(2)?;
            let mut witness = None;
            'outer: for z in alg.kernel(k, &d)?.iter() {
                for (_, zn) in alg.decompose_real(j, z)? {
                    if let Some(y) = alg.eprime_elem(k, &zn)? {
                        if !y.is_zero() {
                            witness = Some(alg.to_ncpoly(&zn).display_with(cx.r()));
                            break 'outer;
                        }
                    }
                }
            }
            Ok(cx.report(witness))
        }
        Fact::CrystalSerreLattice => {
            let j = cx.real_at(2)?;
            let (l, n) = (cx.uint(0)?, cx.uint(1)?);
            if l != 1 {
                return Err(cx.bad());
            }
            let i = Gen::Imag(l);
            let mut lw = vec![i];
            lw.extend(std::iter::repeat_n(j, (l + 1 + n) as usize));
            let mut rw = vec![j, i];
            rw.extend(std::iter::repeat_n(j, (l + n) as usize));
            let (a, b) = (alg.monomial(&lw)?, alg.monomial(&rw)?);
            let lat = lattice_build(alg, &a.degree, LatticeMode::Exact)?;
            match lattice_equiv(&lat, &a, &b) {
                Ok(true) => Ok(cx.report(None)),
                Ok(false) => Ok(cx.zero(&a.sub(&b))),
                Err(FreeAlgError::NotInLattice(_)) => Ok(cx.report(Some("monomial outside the lattice".into()))),
                Err(e) => Err(e),
            }
        }
        Fact::PartInL => {
            cx.arity(1 + cx.r() + 1)?;
            let j = cx.real(cx.uint(0)?)?;
            let d = cx.degree(1)?;
            let lat = lattice_build(alg, &d, LatticeMode::Exact)?;
            let mut witness = None;
            'outer: for x in &lat.generators {
                for (_, z) in alg.decompose_real(j, x)? {
                    let sub = alg.lattice(&z.degree, LatticeMode::Exact)?;
                    if !sub.contains(&z) {
                        witness = Some(alg.to_ncpoly(&z).display_with(cx.r()));
                        break 'outer;
                    }
                }
            }
            Ok(cx.report(witness))
        }
        Fact::RightMult => {
            cx.arity(1 + 2 * (cx.r() + 1))?;
            let j = cx.real(cx.uint(0)?)?;
            let dk = cx.degree(1)?;
            let dz = cx.degree(2 + cx.r())?;
            let lk = lattice_build(alg, &dk, LatticeMode::Exact)?;
            let lz = lattice_build(alg, &dz, LatticeMode::Exact)?;
            let target = lattice_build(alg, &dk.add(&dz), LatticeMode::Exact)?;
            let zs = kernel_lattice(alg, &lz, j)?;
            let mut witness = None;
            'outer: for k in &lk.generators {
                for z in &zs {
                    let p = q.mul(k, z)?;
                    if !target.contains(&p) {
                        witness = Some(alg.to_ncpoly(&p).display_with(cx.r()));
                        break 'outer;
                    }
                }
            }
            Ok(cx.report(witness))
        }
        Fact::Decomp => {
            cx.arity(1 + cx.r() + 1)?;
            let j = cx.real(cx.uint(0)?)?;
            let d = cx.degree(1)?;
            if !alg.direct_sum_holds(j, &d)? {
                return Ok(cx.report(Some(format!("columns do not form a basis at {d}"))));
            }
            let dim = q.dim(&d).expect("checked by direct_sum_holds");
            let mut x = q.zero(&d)?;
            for b in 0..dim {
                x = x.add(&q.unit(&d, b).scale(&RF::from_int(1 + (b as i64 * 7919) % 13)));
            }
            let parts = alg.decompose_real(j, &x)?;
            for (_, z) in &parts {
                if let Some(y) = alg.eprime_elem(j, z)? {
                    if !y.is_zero() {
                        return Ok(cx.report(Some(alg.to_ncpoly(z).display_with(cx.r()))));
                    }
                }
            }
            Ok(cx.equal(&alg.reassemble(j, &d, &parts)?, &x))
        }
    }
}

/// Parameter tuples of a degree followed by its `n, m_1, ..., m_r`.
fn degree_params(d: &DegreeVector) -> Vec<i64> {
    std::iter::once(d.n as i64).chain(d.m.iter().map(|&x| x as i64)).collect()
}

fn fits(alg: &Algebra, j: Gen, n: u32, m: u32) -> bool {
    let mut d = DegreeVector::zero(alg.r());
    d.n = n;
    if let Gen::Real(k) = j {
        d.m[k as usize - 1] = m;
    }
    alg.quotient().contains(&d)
}

/// The documented grid of a fact, cut down to what the truncation holds.
pub fn fact_grid(alg: &Algebra, fact: Fact) -> Vec<Vec<i64>> {
    let p = alg.params();
    let q = alg.quotient();
    let r = p.r;
    let mut out = Vec::new();
    let reals: Vec<u32> = (1..=r as u32).collect();
    let degrees: Vec<DegreeVector> = q.degrees().cloned().collect();
    let loops = |hi: u32| 1..=hi.min(p.max_loop);
    match fact {
        Fact::MovingFjs | Fact::Expansion => {
            let (lmax, nmax) = if fact == Fact::MovingFjs { (3, 2) } else { (2, 1) };
            for &k in &reals {
                for l in loops(lmax) {
                    for n in 0..=nmax {
                        if fits(alg, Gen::Real(k), l, l + 1 + n) {
                            out.push(vec![l as i64, n as i64, k as i64]);
                        }
                    }
                }
            }
        }
        Fact::GenSerre => {
            for &k in &reals {
                for a in loops(3) {
                    for b in loops(4 - a) {
                        if fits(alg, Gen::Real(k), a + b, a + b + 1) {
                            out.push(vec![a as i64, b as i64, k as i64]);
                        }
                    }
                }
            }
        }
        Fact::EndoSerre => {
            for &k in &reals {
                for l in loops(p.max_loop) {
                    if fits(alg, Gen::Real(k), l, l + 1) {
                        out.push(vec![l as i64, k as i64]);
                    }
                }
            }
        }
        Fact::ZRecursion | Fact::ZScaling | Fact::ZVanishing => {
            for &j in &reals {
                for l in loops(3) {
                    for c in 0..=l + 2 {
                        if !fits(alg, Gen::Real(j), l, c) {
                            continue;
                        }
                        match fact {
                            Fact::ZVanishing if c > l => out.push(vec![l as i64, c as i64, j as i64]),
                            Fact::ZVanishing => {}
                            _ => {
                                for k in 0..=c {
                                    if fact == Fact::ZRecursion && c == 0 {
                                        continue;
                                    }
                                    out.push(vec![l as i64, k as i64, c as i64, j as i64]);
                                }
                            }
                        }
                    }
                }
            }
        }
        Fact::InLinfty | Fact::CrystalSerreLattice => {
            let hi = if fact == Fact::InLinfty { 1 } else { 2 };
            for &j in &reals {
                for c in 0..=hi {
                    let m = if fact == Fact::InLinfty { c } else { c + 2 };
                    if fits(alg, Gen::Real(j), 1, m) {
                        out.push(vec![1, c as i64, j as i64]);
                    }
                }
            }
        }
        Fact::Opassoc | Fact::RightMult => {
            let small: Vec<&DegreeVector> = degrees
                .iter()
                .filter(|d| if fact == Fact::Opassoc { d.total() <= 2 } else { d.n <= 1 && d.total() <= 3 })
                .collect();
            for &j in &reals {
                for dx in &small {
                    for dz in &small {
                        if dz.is_zero() {
                            continue;
                        }
                        let s = dx.add(dz);
                        let ok = if fact == Fact::Opassoc {
                            q.contains(&s.add(&q.gen_degree(Gen::Real(j))))
                        } else {
                            s.n <= 1 && q.contains(&s)
                        };
                        if ok {
                            let mut v = vec![j as i64];
                            v.extend(degree_params(dx));
                            v.extend(degree_params(dz));
                            out.push(v);
                        }
                    }
                }
            }
        }
        Fact::FtildeCommute | Fact::EprimeCommute => {
            for &s in &reals {
                for &t in &reals {
                    if s >= t {
                        continue;
                    }
                    for d in &degrees {
                        if fact == Fact::FtildeCommute
                            && !q.contains(&d.add(&q.gen_degree(Gen::Real(s))).add(&q.gen_degree(Gen::Real(t))))
                        {
                            continue;
                        }
                        let mut v = vec![s as i64, t as i64];
                        v.extend(degree_params(d));
                        out.push(v);
                    }
                }
            }
        }
        Fact::EprimeDescends => out.extend(degrees.iter().map(degree_params)),
        Fact::KjNested => {
            for &k in &reals {
                for &j in &reals {
                    if k == j {
                        continue;
                    }
                    for d in &degrees {
                        let mut v = vec![k as i64, j as i64];
                        v.extend(degree_params(d));
                        out.push(v);
                    }
                }
            }
        }
        Fact::PartInL | Fact::Decomp => {
            for &j in &reals {
                for d in &degrees {
                    if fact == Fact::PartInL && d.n > 1 {
                        continue;
                    }
                    let mut v = vec![j as i64];
                    v.extend(degree_params(d));
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Runs a fact over its whole grid.
pub fn run_fact_grid(alg: &Algebra, fact: Fact) -> Result<Vec<FactReport>, FreeAlgError> {
    fact_grid(alg, fact).iter().map(|p| verify_algebra_fact(alg, fact, p)).collect()
}

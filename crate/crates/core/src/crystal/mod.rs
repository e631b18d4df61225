//! The combinatorial model of `B(infinity)` for `Q(omega, r)`, `omega > 1`:
//! steep sequences of Kashiwara operators as normal forms.
//!
//! Words list operators left to right with the leftmost applied last, so
//! `(iota_1, ..., iota_n)` stands for `f~_{iota_1} ... f~_{iota_n} . 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::quiver::{gen_label, parse_word, DegreeVector, Gen, ParseError};

pub type OpWord = Vec<Gen>;

/// Largest `n` and `m_k` accepted by the enumerators.
pub const MAX_DEGREE: u32 = 24;
/// Largest total size accepted by [`words_of_degree`].
pub const MAX_WORD_LENGTH: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{0}` is not a steep sequence")]
    NotSteep(String),
    #[error("real vertex j{0} is outside r = {1}")]
    BadColor(u32, usize),
    #[error("degree {0} is beyond the enumeration bound")]
    TooLarge(DegreeVector),
}

/// One imaginary entry `(i, c)` followed by `p_k` copies of each `j_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub c: u32,
    pub p: Vec<u32>,
}

/// `j^{p0} (i,c_1) j^{p_1} ... (i,c_n) j^{p_n}` with `p_{m,k} <= c_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteepSequence {
    pub p0: Vec<u32>,
    pub body: Vec<Block>,
}

fn color(g: Gen, r: usize) -> Result<usize, CrystalError> {
    match g {
        Gen::Real(k) if k >= 1 && k as usize <= r => Ok(k as usize - 1),
        Gen::Real(k) => Err(CrystalError::BadColor(k, r)),
        Gen::Imag(_) => unreachable!("imaginary entries carry no color"),
    }
}

/// Block multiplicities of a word, ignoring the order of colors within a block.
fn blocks(w: &[Gen], r: usize) -> Result<(Vec<u32>, Vec<Block>), CrystalError> {
    let mut p0 = vec![0; r];
    let mut body: Vec<Block> = Vec::new();
    for &g in w {
        match g {
            Gen::Imag(c) => body.push(Block { c, p: vec![0; r] }),
            Gen::Real(_) => {
                let k = color(g, r)?;
                match body.last_mut() {
                    Some(b) => b.p[k] += 1,
                    None => p0[k] += 1,
                }
            }
        }
    }
    Ok((p0, body))
}

pub fn degree_of(w: &[Gen], r: usize) -> DegreeVector {
    DegreeVector::of_word(w, r)
}

/// Steep in the strict sense: each run of real entries lists its colors in
/// increasing order, and every run after an `(i,c)` has at most `c` of each.
pub fn is_steep(w: &[Gen], r: usize) -> bool {
    let ordered = w.windows(2).all(|p| match (p[0], p[1]) {
        (Gen::Real(a), Gen::Real(b)) => a <= b,
        _ => true,
    });
    ordered
        && match blocks(w, r) {
            Ok((_, body)) => body.iter().all(|b| b.p.iter().all(|&x| x <= b.c)),
            Err(_) => false,
        }
}

/// The steep sequence equivalent to `w` under real-real commutation and the
/// crystal Serre moves `f~_{(i,c)} f~_j^{c+1} -> f~_j f~_{(i,c)} f~_j^c`.
#[allow(clippy::needless_range_loop)]
pub fn normalize(w: &[Gen], r: usize) -> Result<SteepSequence, CrystalError> {
    let (mut p0, mut body) = blocks(w, r)?;
    for m in (0..body.len()).rev() {
        for k in 0..r {
            let c = body[m].c;
            let excess = body[m].p[k].saturating_sub(c);
            if excess > 0 {
                body[m].p[k] = c;
                if m == 0 {
                    p0[k] += excess;
                } else {
                    body[m - 1].p[k] += excess;
                }
            }
        }
    }
    Ok(SteepSequence { p0, body })
}

impl SteepSequence {
    pub fn empty(r: usize) -> Self {
        Self { p0: vec![0; r], body: Vec::new() }
    }

    pub fn r(&self) -> usize {
        self.p0.len()
    }

    pub fn is_valid(&self) -> bool {
        self.body.iter().all(|b| b.c >= 1 && b.p.len() == self.r() && b.p.iter().all(|&x| x <= b.c))
    }

    pub fn degree(&self) -> DegreeVector {
        let mut m = self.p0.clone();
        let mut n = 0;
        for b in &self.body {
            n += b.c;
            for (x, y) in m.iter_mut().zip(&b.p) {
                *x += y;
            }
        }
        DegreeVector::new(n, m)
    }

    pub fn to_word(&self) -> OpWord {
        let run = |p: &[u32], out: &mut OpWord| {
            for (k, &x) in p.iter().enumerate() {
                out.extend(std::iter::repeat_n(Gen::Real(k as u32 + 1), x as usize));
            }
        };
        let mut out = Vec::new();
        run(&self.p0, &mut out);
        for b in &self.body {
            out.push(Gen::Imag(b.c));
            run(&b.p, &mut out);
        }
        out
    }
}

fn run_text(p: &[u32], r: usize, out: &mut Vec<String>) {
    for (k, &x) in p.iter().enumerate() {
        let g = gen_label(Gen::Real(k as u32 + 1), r);
        match x {
            0 => {}
            1 => out.push(g),
            _ => out.push(format!("{g}^{x}")),
        }
    }
}

/// `j1^a j2^b | (i,c1) j1^e ... | (i,c2) ...`; the empty sequence is `1`.
impl fmt::Display for SteepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.r();
        let mut parts = Vec::new();
        let mut lead = Vec::new();
        run_text(&self.p0, r, &mut lead);
        if !lead.is_empty() {
            parts.push(lead.join(" "));
        }
        for b in &self.body {
            let mut toks = vec![format!("(i,{})", b.c)];
            run_text(&b.p, r, &mut toks);
            parts.push(toks.join(" "));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" | "))
        }
    }
}

/// Text of an arbitrary word, with runs written as powers.
pub fn format_word(w: &[Gen], r: usize) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut k = i;
        while k < w.len() && w[k] == w[i] && w[i].is_real() {
            k += 1;
        }
        let k = k.max(i + 1);
        let g = gen_label(w[i], r);
        out.push(if k - i > 1 { format!("{g}^{}", k - i) } else { g });
        i = k;
    }
    out.join(" ")
}

/// Parses a word, accepting `|` as a separator.
pub fn parse_op_word(s: &str, r: usize) -> Result<OpWord, CrystalError> {
    let w = parse_word(&s.replace('|', " "))?;
    for &g in &w {
        if g.is_real() {
            color(g, r)?;
        }
    }
    Ok(w)
}

impl SteepSequence {
    /// Parses the text form; the word must already be steep.
    pub fn parse(s: &str, r: usize) -> Result<Self, CrystalError> {
        let w = parse_op_word(s, r)?;
        if !is_steep(&w, r) {
            return Err(CrystalError::NotSteep(s.to_string()));
        }
        normalize(&w, r)
    }
}

/// Parses with `r` inferred as the largest color mentioned (at least 1).
impl FromStr for SteepSequence {
    type Err = CrystalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w = parse_word(&s.replace('|', " "))?;
        let r = w
            .iter()
            .filter_map(|g| match g {
                Gen::Real(k) => Some(*k as usize),
                _ => None,
            })
            .max()
            .unwrap_or(1);
        Self::parse(s, r)
    }
}

pub fn apply_f(iota: Gen, b: &SteepSequence) -> Result<SteepSequence, CrystalError> {
    let mut w = vec![iota];
    w.extend(b.to_word());
    normalize(&w, b.r())
}

/// The `b'` with `apply_f(iota, b') = b`, if any. Real `iota` strips one
/// leading `j`; imaginary `(i,l)` can only undo a leading block of size `l`,
/// whose predecessor merges that block's run into the leading one.
pub fn apply_e(iota: Gen, b: &SteepSequence) -> Result<Option<SteepSequence>, CrystalError> {
    match iota {
        Gen::Real(_) => {
            let k = color(iota, b.r())?;
            if b.p0[k] == 0 {
                return Ok(None);
            }
            let mut out = b.clone();
            out.p0[k] -= 1;
            Ok(Some(out))
        }
        Gen::Imag(l) => {
            let Some(first) = b.body.first() else { return Ok(None) };
            if first.c != l {
                return Ok(None);
            }
            let p0 = b.p0.iter().zip(&first.p).map(|(x, y)| x + y).collect();
            let cand = SteepSequence { p0, body: b.body[1..].to_vec() };
            Ok((apply_f(iota, &cand)? == *b).then_some(cand))
        }
    }
}

/// [`apply_e`] by its definition: search every steep sequence one step down.
pub fn apply_e_brute(iota: Gen, b: &SteepSequence) -> Result<Option<SteepSequence>, CrystalError> {
    let Some(d) = b.degree().checked_sub(&iota.degree(b.r())) else {
        return Ok(None);
    };
    let mut found = None;
    for c in enumerate_steep(&d)? {
        if apply_f(iota, &c)? == *b {
            if found.is_some() {
                unreachable!("apply_f is injective");
            }
            found = Some(c);
        }
    }
    Ok(found)
}

/// How many times `e~_{j_k}` applies.
pub fn epsilon_real(k: u32, b: &SteepSequence) -> Result<u32, CrystalError> {
    let mut cur = b.clone();
    let mut n = 0;
    while let Some(next) = apply_e(Gen::Real(k), &cur)? {
        cur = next;
        n += 1;
    }
    Ok(n)
}

fn guard(d: &DegreeVector) -> Result<(), CrystalError> {
    if d.n > MAX_DEGREE || d.m.iter().any(|&x| x > MAX_DEGREE) {
        return Err(CrystalError::TooLarge(d.clone()));
    }
    Ok(())
}

/// Ordered compositions of `n`.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ways to write `m = p0 + sum_t p_t` with `p_t <= caps[t]`, as `(p0, p)`.
fn distributions(m: u32, caps: &[u32]) -> Vec<(u32, Vec<u32>)> {
    fn rec(m: u32, caps: &[u32], cur: &mut Vec<u32>, out: &mut Vec<(u32, Vec<u32>)>) {
        if cur.len() == caps.len() {
            out.push((m, cur.clone()));
            return;
        }
        for x in 0..=caps[cur.len()].min(m) {
            cur.push(x);
            rec(m - x, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, caps, &mut Vec::new(), &mut out);
    out
}

/// All steep sequences of degree `d`, ordered by body length and then text.
pub fn enumerate_steep(d: &DegreeVector) -> Result<Vec<SteepSequence>, CrystalError> {
    guard(d)?;
    let r = d.r();
    let mut out = Vec::new();
    for caps in compositions(d.n) {
        let per_color: Vec<Vec<(u32, Vec<u32>)>> = d.m.iter().map(|&m| distributions(m, &caps)).collect();
        let mut idx = vec![0usize; r];
        loop {
            let mut s =
                SteepSequence { p0: vec![0; r], body: caps.iter().map(|&c| Block { c, p: vec![0; r] }).collect() };
            for k in 0..r {
                let (p0, p) = &per_color[k][idx[k]];
                s.p0[k] = *p0;
                for (b, &x) in s.body.iter_mut().zip(p) {
                    b.p[k] = x;
                }
            }
            out.push(s);
            let mut k = 0;
            while k < r {
                idx[k] += 1;
                if idx[k] < per_color[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
    }
    let mut keyed: Vec<(usize, String, SteepSequence)> =
        out.into_iter().map(|s| (s.body.len(), s.to_string(), s)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|x| x.2).collect())
}

pub fn count_steep(d: &DegreeVector) -> Result<usize, CrystalError> {
    Ok(enumerate_steep(d)?.len())
}

/// Every operator word of degree `d`.
pub fn words_of_degree(d: &DegreeVector) -> Result<Vec<OpWord>, CrystalError> {
    if d.total() > MAX_WORD_LENGTH {
        return Err(CrystalError::TooLarge(d.clone()));
    }
    fn rec(n: u32, m: &mut Vec<u32>, cur: &mut OpWord, out: &mut Vec<OpWord>) {
        if n == 0 && m.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for c in 1..=n {
            cur.push(Gen::Imag(c));
            rec(n - c, m, cur, out);
            cur.pop();
        }
        for k in 0..m.len() {
            if m[k] > 0 {
                m[k] -= 1;
                cur.push(Gen::Real(k as u32 + 1));
                rec(n, m, cur, out);
                cur.pop();
                m[k] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(d.n, &mut d.m.clone(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Words one relation step away from `w`, in either direction: a swap of
/// adjacent distinct real entries, or `(i,c) j^{c+1} <-> j (i,c) j^c` with a
/// single color `j`.
pub fn rewrite_neighbors(w: &[Gen]) -> Vec<OpWord> {
    let mut out = BTreeSet::new();
    for t in 0..w.len().saturating_sub(1) {
        if let (Gen::Real(a), Gen::Real(b)) = (w[t], w[t + 1]) {
            if a != b {
                let mut x = w.to_vec();
                x.swap(t, t + 1);
                out.insert(x);
            }
        }
    }
    let run = |from: usize, j: Gen| w[from..].iter().take_while(|&&g| g == j).count();
    for t in 0..w.len() {
        let Gen::Imag(c) = w[t] else { continue };
        let c = c as usize;
        if t + 1 < w.len() && w[t + 1].is_real() {
            let j = w[t + 1];
            if run(t + 1, j) > c {
                let mut x = w[..t].to_vec();
                x.push(j);
                x.push(w[t]);
                x.extend(std::iter::repeat_n(j, c));
                x.extend_from_slice(&w[t + 2 + c..]);
                out.insert(x);
            }
        }
        if t >= 1 && w[t - 1].is_real() {
            let j = w[t - 1];
            if run(t + 1, j) >= c {
                let mut x = w[..t - 1].to_vec();
                x.push(w[t]);
                x.extend(std::iter::repeat_n(j, c + 1));
                x.extend_from_slice(&w[t + 1 + c..]);
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}

/// A pair of one-step-related words of degree `d` with different normal
/// forms, if any.
pub fn confluence_counterexample(d: &DegreeVector) -> Result<Option<(OpWord, OpWord)>, CrystalError> {
    let r = d.r();
    for w in words_of_degree(d)? {
        let n = normalize(&w, r)?;
        for x in rewrite_neighbors(&w) {
            if normalize(&x, r)? != n {
                return Ok(Some((w, x)));
            }
        }
    }
    Ok(None)
}

/// Every entry that can be applied to a sequence of rank `r` and stay within
/// `max_loop` for the imaginary sizes.
pub fn entries(r: usize, max_loop: u32) -> Vec<Gen> {
    (1..=max_loop).map(Gen::Imag).chain((1..=r as u32).map(Gen::Real)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const J: Gen = Gen::Real(1);
    const J2: Gen = Gen::Real(2);
    fn im(c: u32) -> Gen {
        Gen::Imag(c)
    }
    fn seq(p0: &[u32], body: &[(u32, &[u32])]) -> SteepSequence {
        SteepSequence { p0: p0.to_vec(), body: body.iter().map(|(c, p)| Block { c: *c, p: p.to_vec() }).collect() }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_of(&[], 1), DegreeVector::zero(1));
        assert_eq!(degree_of(&[im(2), J, J], 1), DegreeVector::new(2, vec![2]));
        assert_eq!(degree_of(&[J, im(1), J2, im(3)], 2), DegreeVector::new(4, vec![1, 1]));
    }

    #[test]
    fn steepness_examples() {
        assert!(is_steep(&[J, J, im(1), J], 1));
        assert!(!is_steep(&[im(1), J, J], 1));
        assert!(is_steep(&[im(2), J, im(1), J], 1));
        assert!(!is_steep(&[im(1), J2, J], 2));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&[im(1), J, J], 1).unwrap(), seq(&[1], &[(1, &[1])]));
        let s = seq(&[2], &[(1, &[1]), (3, &[0])]);
        assert_eq!(normalize(&s.to_word(), 1).unwrap(), s);
        assert_eq!(normalize(&[im(1), J, im(1), J, J, J], 1).unwrap(), seq(&[2], &[(1, &[1]), (1, &[1])]));
    }

    #[test]
    fn apply_examples() {
        let e = SteepSequence::empty(1);
        assert_eq!(apply_f(J, &e).unwrap(), seq(&[1], &[]));
        let b = seq(&[0], &[(1, &[1])]);
        assert_eq!(apply_f(im(1), &b).unwrap(), seq(&[0], &[(1, &[0]), (1, &[1])]));
        assert_eq!(apply_f(J, &b).unwrap(), seq(&[1], &[(1, &[1])]));

        assert_eq!(apply_e(im(1), &seq(&[0], &[(1, &[0])])).unwrap(), Some(e.clone()));
        assert_eq!(apply_e(J, &b).unwrap(), None);
        assert_eq!(apply_e_brute(J, &b).unwrap(), None);
        let b1 = seq(&[1], &[(1, &[1])]);
        assert_eq!(apply_e(J, &b1).unwrap(), Some(b.clone()));
        assert_eq!(apply_e_brute(J, &b1).unwrap(), Some(b));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_real(1, &SteepSequence::empty(1)).unwrap(), 0);
        assert_eq!(epsilon_real(1, &seq(&[2], &[(1, &[1])])).unwrap(), 2);
        assert_eq!(epsilon_real(1, &seq(&[0], &[(3, &[2])])).unwrap(), 0);
    }

    #[test]
    fn enumeration_examples() {
        for m in 0..6 {
            assert_eq!(count_steep(&DegreeVector::new(0, vec![m])).unwrap(), 1);
        }
        let two = enumerate_steep(&DegreeVector::new(1, vec![2])).unwrap();
        let text: Vec<String> = two.iter().map(|s| s.to_string()).collect();
        assert_eq!(text, vec!["j | (i,1) j", "j^2 | (i,1)"]);
        assert_eq!(count_steep(&DegreeVector::new(2, vec![1])).unwrap(), 5);
        for n in 1..8 {
            assert_eq!(count_steep(&DegreeVector::new(n, vec![])).unwrap(), 1 << (n - 1));
        }
    }

    #[test]
    fn text_round_trip() {
        for d in [DegreeVector::new(3, vec![2, 1]), DegreeVector::new(2, vec![3])] {
            for s in enumerate_steep(&d).unwrap() {
                let t = s.to_string();
                assert_eq!(SteepSequence::parse(&t, d.r()).unwrap(), s, "{t}");
            }
        }
        assert_eq!(SteepSequence::empty(2).to_string(), "1");
        assert_eq!(SteepSequence::parse("1", 2).unwrap(), SteepSequence::empty(2));
        assert_eq!(normalize(&parse_op_word("(i,1) j j", 1).unwrap(), 1).unwrap().to_string(), "j | (i,1) j");
        assert!(SteepSequence::parse("(i,1) j j", 1).is_err());
        assert!(parse_op_word("j3", 2).is_err());
    }

    #[test]
    fn rewrite_steps() {
        let n = rewrite_neighbors(&[im(1), J, J]);
        assert_eq!(n, vec![vec![J, im(1), J]]);
        let back = rewrite_neighbors(&[J, im(1), J]);
        assert!(back.contains(&vec![im(1), J, J]));
        assert!(rewrite_neighbors(&[J, J2]).contains(&vec![J2, J]));
    }
}

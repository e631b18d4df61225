//! Vertices, generators, degrees and the symmetric form of the comet quiver
//! `Q(omega, r)`: one vertex `i` with `omega` loops, joined by single edges to
//! loop-free vertices `j_1, ..., j_r`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("cannot parse `{0}` as a generator")]
    BadToken(String),
    #[error("cannot parse `{0}` as a degree (expected n:m1,m2,...)")]
    BadDegree(String),
    #[error("malformed sequence: {0}")]
    Malformed(String),
}

/// A generator `F_iota`: `Real(k)` is `F_{j_k}` (1-based), `Imag(l)` is `F_{(i,l)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Imag(u32),
    Real(u32),
}

impl Gen {
    pub fn is_real(self) -> bool {
        matches!(self, Gen::Real(_))
    }

    pub fn degree(self, r: usize) -> DegreeVector {
        let mut d = DegreeVector::zero(r);
        match self {
            Gen::Imag(l) => d.n = l,
            Gen::Real(k) => d.m[k as usize - 1] = 1,
        }
        d
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Imag(l) => write!(f, "(i,{l})"),
            Gen::Real(k) => write!(f, "j{k}"),
        }
    }
}

impl FromStr for Gen {
    type Err = ParseError;
    /// Accepts `j` (meaning `j1`), `jK` and `(i,l)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::BadToken(s.to_string());
        let t = s.trim();
        if t == "j" {
            return Ok(Gen::Real(1));
        }
        if let Some(k) = t.strip_prefix('j') {
            let k: u32 = k.parse().map_err(|_| bad())?;
            return if k >= 1 { Ok(Gen::Real(k)) } else { Err(bad()) };
        }
        let inner = t.strip_prefix("(i,").and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
        let l: u32 = inner.trim().parse().map_err(|_| bad())?;
        if l >= 1 {
            Ok(Gen::Imag(l))
        } else {
            Err(bad())
        }
    }
}

/// Prints a word with `j` in place of `j1` when there is a single color.
pub fn gen_label(g: Gen, r: usize) -> String {
    match g {
        Gen::Real(1) if r == 1 => "j".to_string(),
        _ => g.to_string(),
    }
}

/// Parses a whitespace-separated word such as `(i,1) j j` or `j1^2 (i,2) j2`.
pub fn parse_word(s: &str) -> Result<Vec<Gen>, ParseError> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (base, pow) = match tok.rsplit_once('^') {
            Some((b, p)) => (b, p.parse::<usize>().map_err(|_| ParseError::BadToken(tok.to_string()))?),
            None => (tok, 1),
        };
        let g: Gen = base.parse()?;
        out.extend(std::iter::repeat_n(g, pow));
    }
    Ok(out)
}

/// `(n; m_1, ..., m_r)`, standing for the root-lattice element `-n i - sum m_k j_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector {
    pub n: u32,
    pub m: Vec<u32>,
}

impl DegreeVector {
    pub fn new(n: u32, m: Vec<u32>) -> Self {
        Self { n, m }
    }

    pub fn zero(r: usize) -> Self {
        Self { n: 0, m: vec![0; r] }
    }

    pub fn r(&self) -> usize {
        self.m.len()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 0 && self.m.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.n + self.m.iter().sum::<u32>()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { n: self.n + o.n, m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect() }
    }

    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        let n = self.n.checked_sub(o.n)?;
        let m = self.m.iter().zip(&o.m).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>()?;
        Some(Self { n, m })
    }

    pub fn le(&self, o: &Self) -> bool {
        self.n <= o.n && self.m.iter().zip(&o.m).all(|(a, b)| a <= b)
    }

    pub fn of_word(w: &[Gen], r: usize) -> Self {
        let mut d = Self::zero(r);
        for g in w {
            match *g {
                Gen::Imag(l) => d.n += l,
                Gen::Real(k) => d.m[k as usize - 1] += 1,
            }
        }
        d
    }

    /// Every degree componentwise between zero and `self`, smallest total first.
    pub fn box_below(&self) -> Vec<DegreeVector> {
        let mut out: Vec<DegreeVector> = (0..=self.n).map(|n| DegreeVector::new(n, Vec::new())).collect();
        for &limit in &self.m {
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..=limit).map(move |x| {
                        let mut e = d.clone();
                        e.m.push(x);
                        e
                    })
                })
                .collect();
        }
        out.sort_by(|a, b| (a.total(), a).cmp(&(b.total(), b)));
        out
    }

    /// Comma-separated `n,m1,...,mr`, the dump schema.
    pub fn csv(&self) -> String {
        std::iter::once(self.n).chain(self.m.iter().copied()).map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        let m: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", m.join(","))
    }
}

impl FromStr for DegreeVector {
    type Err = ParseError;
    /// `n:m1,...,mr`; `n:` or `n` alone for `r = 0`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::BadDegree(s.to_string());
        let (n, rest) = s.split_once(':').unwrap_or((s, ""));
        let n = n.trim().parse().map_err(|_| bad())?;
        let m = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<Vec<u32>, _>>()?
        };
        Ok(Self { n, m })
    }
}

/// The symmetric form on the span of the vertices.
/// `(i,i) = 2 - 2 omega`, `(i, j_k) = -1`, `(j_k, j_k) = 2`, `(j_s, j_t) = 0`.
/// Degrees are stored with positive entries; since the form is bilinear the
/// sign convention cancels.
pub fn pairing_degrees(omega: u32, x: &DegreeVector, y: &DegreeVector) -> i64 {
    let ii = 2 - 2 * omega as i64;
    let (nx, ny) = (x.n as i64, y.n as i64);
    let mut s = ii * nx * ny;
    for (a, b) in x.m.iter().zip(&y.m) {
        let (a, b) = (*a as i64, *b as i64);
        s -= nx * b + a * ny;
        s += 2 * a * b;
    }
    s
}

/// The form on generators: `((i,l),(i,k)) = lk(2 - 2 omega)`, `(j, (i,l)) = -l`.
pub fn pairing(omega: u32, r: usize, a: Gen, b: Gen) -> i64 {
    pairing_degrees(omega, &a.degree(r), &b.degree(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(2, 2, Gen::Real(1), Gen::Real(2)), 0);
        assert_eq!(pairing(2, 1, Gen::Imag(1), Gen::Imag(1)), -2);
        assert_eq!(pairing(2, 1, Gen::Real(1), Gen::Imag(3)), -3);
        assert_eq!(pairing(3, 1, Gen::Imag(2), Gen::Imag(3)), 6 * -4);
        assert_eq!(pairing(2, 1, Gen::Real(1), Gen::Real(1)), 2);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_word("(i,1) j j").unwrap(), vec![Gen::Imag(1), Gen::Real(1), Gen::Real(1)]);
        assert_eq!(parse_word("j2^2 (i,3)").unwrap(), vec![Gen::Real(2), Gen::Real(2), Gen::Imag(3)]);
        assert!(parse_word("(i,0)").is_err());
        assert!(parse_word("k").is_err());
        let d: DegreeVector = "3:1,2".parse().unwrap();
        assert_eq!(d, DegreeVector::new(3, vec![1, 2]));
        assert_eq!(d.to_string(), "3:1,2");
        assert_eq!("2".parse::<DegreeVector>().unwrap(), DegreeVector::new(2, vec![]));
    }

    #[test]
    fn box_enumeration() {
        let d = DegreeVector::new(2, vec![1, 1]);
        let b = d.box_below();
        assert_eq!(b.len(), 12);
        assert!(b[0].is_zero());
        assert_eq!(b.last().unwrap(), &d);
    }
}

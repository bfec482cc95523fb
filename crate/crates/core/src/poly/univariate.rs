//! Dense univariate polynomials over Q(eps) and exact root extraction.

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo::{recognize, Cyclo};
use crate::numeric::aberth_roots;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("could not split `{0}` into linear factors over Q(eps)")]
    ExactFactorizationFailed(String),
}

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly(Vec<Cyclo>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Cyclo>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::new(vec![c])
    }

    /// Monic linear factor y - r.
    pub fn linear(r: &Cyclo) -> Self {
        Self::new(vec![-r, Cyclo::one()])
    }

    /// Product of (y - r) over the given roots.
    pub fn from_roots(roots: &[Cyclo]) -> Self {
        roots.iter().fold(Self::constant(Cyclo::one()), |acc, r| acc.mul(&Self::linear(r)))
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Cyclo> {
        self.0.last()
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        self.0.iter().rev().fold(Cyclo::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * &Cyclo::from_int(i as i64)).collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Cyclo::zero();
        Self::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Cyclo::one()))
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Self::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Cyclo::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![Cyclo::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = &r[r.len() - 1] * &lc_inv;
            for (j, c) in d.0.iter().enumerate() {
                r[k + j] -= &(&t * c);
            }
            q[k] = t;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p / gcd(p, p').
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's square-free decomposition: monic factors P_i (degree >= 1) with self ~ prod P_i^i.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let nc = d.div_rem(&a).0;
            d = nc.sub(&nb.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// Number of times (y - r) divides self.
    pub fn multiplicity(&self, r: &Cyclo) -> usize {
        let lin = Self::linear(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Floating-point roots (with repetition) via Aberth iteration.
    pub fn numeric_roots(&self) -> Vec<Complex64> {
        let c: Vec<Complex64> = self.0.iter().map(Cyclo::to_complex).collect();
        aberth_roots(&c)
    }

    /// Distinct exact roots in Q(eps) with their multiplicities.
    ///
    /// Fails if some irreducible factor of degree > 1 remains.
    pub fn exact_roots(&self) -> Result<Vec<(Cyclo, usize)>, RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut rest = self.squarefree_part();
        let mut roots = Vec::new();
        while let Some(d) = rest.degree() {
            if d == 0 {
                break;
            }
            let r = rest.find_one_root().ok_or_else(|| RootError::ExactFactorizationFailed(rest.to_string()))?;
            rest = rest.div_rem(&Self::linear(&r)).0;
            roots.push(r);
        }
        Ok(roots.into_iter().map(|r| (r.clone(), self.multiplicity(&r))).collect())
    }

    fn find_one_root(&self) -> Option<Cyclo> {
        let p = self.monic();
        match p.degree()? {
            0 => None,
            1 => Some(-&p.0[0]),
            2 => {
                // y^2 + b y + c
                let (c, b) = (&p.0[0], &p.0[1]);
                let disc = &(b * b) - &(c * &Cyclo::from_int(4));
                let s = disc.sqrt()?;
                Some(&(&s - b) * &Cyclo::from_ratios(1, 2, 0, 1))
            }
            _ => {
                let approx = p.numeric_roots();
                for den in [100, 10_000, 1_000_000, 100_000_000] {
                    for z in &approx {
                        if let Some(r) = recognize(*z, den) {
                            if p.eval(&r).is_zero() {
                                return Some(r);
                            }
                        }
                    }
                }
                None
            }
        }
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t = crate::poly::VarTable::new(["y"]).expect("table");
        let p = crate::poly::Polynomial::from_univariate(&t, "y", self).expect("y in table");
        write!(f, "{}", p)
    }
}

//! Exact sparse multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials live in a fixed ordered variable ring drawn from
//! `{x, y, z, p, mu}`; coefficients are arbitrary-precision rationals.
//! The formal expansion parameter `p` is carried as an ordinary ring
//! variable ranked last, so coefficients "polynomial in p" need no
//! separate coefficient type.

mod parse;
pub mod resultant;
pub mod series;
pub mod unipoly;

pub use parse::parse_poly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Symbols a polynomial ring may be built from, in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    P,
    Mu,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::P => "p",
            Var::Mu => "mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            "p" => Some(Var::P),
            "mu" => Some(Var::Mu),
            _ => None,
        }
    }
}

/// The affine ring `Q[x, y]`.
pub const XY: &[Var] = &[Var::X, Var::Y];
/// The homogeneous ring `Q[x, y, z]`.
pub const XYZ: &[Var] = &[Var::X, Var::Y, Var::Z];
/// The affine ring with a formal parameter, `Q[x, y, p]`.
pub const XYP: &[Var] = &[Var::X, Var::Y, Var::P];

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    #[error("variable arity mismatch: {0:?} vs {1:?}")]
    ArityMismatch(Vec<Var>, Vec<Var>),
    #[error("variable {0:?} is not part of this ring")]
    UnknownVariable(Var),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("homogenization degree {given} is below the polynomial degree {actual}")]
    DegreeTooLow { given: u32, actual: u32 },
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("both inputs are constant in the elimination variable")]
    BothConstant,
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type PolyResult<T> = Result<T, PolyError>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored zero coefficients; every exponent vector has the
/// arity of `vars`. The zero polynomial has an empty term map and its
/// degree is `None` (the -infinity sentinel).
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(vars: &[Var]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Var], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn from_int(vars: &[Var], n: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::from_int(vars, 1)
    }

    pub fn var(vars: &[Var], v: Var) -> PolyResult<Self> {
        let idx = vars
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exps, BigRational::one());
        Ok(p)
    }

    /// Build from explicit (exponents, coefficient) pairs; zero
    /// coefficients and repeated monomials are merged away.
    pub fn from_terms(
        vars: &[Var],
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    /// Degree in a single variable, `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> PolyResult<Option<u32>> {
        let idx = self
            .vars
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        Ok(self.terms.keys().map(|e| e[idx]).max())
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    fn check_same_ring(&self, other: &Self) -> PolyResult<()> {
        if self.vars != other.vars {
            return Err(PolyError::ArityMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> PolyResult<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> PolyResult<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> PolyResult<Self> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        out
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: Var) -> PolyResult<Self> {
        let idx = self
            .vars
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[idx] -= 1;
            let k = BigRational::from_integer(BigInt::from(e[idx]));
            out.add_term(ne, c * k);
        }
        Ok(out)
    }

    /// Substitute `z = 1`, mapping `Q[x,y,z]` into `Q[x,y]`.
    pub fn dehomogenize(&self) -> PolyResult<Self> {
        let idx = self
            .vars
            .iter()
            .position(|&w| w == Var::Z)
            .ok_or(PolyError::UnknownVariable(Var::Z))?;
        let new_vars: Vec<Var> = self
            .vars
            .iter()
            .copied()
            .filter(|&w| w != Var::Z)
            .collect();
        let mut out = Self::zero(&new_vars);
        for (e, c) in &self.terms {
            let ne: Vec<u32> = e
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &x)| x)
                .collect();
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Multiply every term by the power of `z` bringing it to degree `d`.
    pub fn homogenize(&self, d: u32) -> PolyResult<Self> {
        if self.vars.contains(&Var::Z) {
            return Err(PolyError::UnknownVariable(Var::Z));
        }
        if let Some(deg) = self.degree() {
            if d < deg {
                return Err(PolyError::DegreeTooLow {
                    given: d,
                    actual: deg,
                });
            }
        }
        let mut new_vars = self.vars.clone();
        new_vars.push(Var::Z);
        // keep the canonical x > y > z ordering
        new_vars.sort();
        let zidx = new_vars.iter().position(|&w| w == Var::Z).unwrap();
        let mut out = Self::zero(&new_vars);
        for (e, c) in &self.terms {
            let tdeg: u32 = e.iter().sum();
            let mut ne = vec![0u32; new_vars.len()];
            for (i, &v) in self.vars.iter().enumerate() {
                let j = new_vars.iter().position(|&w| w == v).unwrap();
                ne[j] = e[i];
            }
            ne[zidx] = d - tdeg;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Re-embed into a superset ring (e.g. lift `Q[x,y]` into `Q[x,y,p]`).
    pub fn embed(&self, vars: &[Var]) -> PolyResult<Self> {
        let mapping: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or(PolyError::UnknownVariable(*v))
            })
            .collect::<PolyResult<_>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (i, &j) in mapping.iter().enumerate() {
                ne[j] = e[i];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Drop a variable that no term uses (inverse of `embed`).
    pub fn restrict(&self, vars: &[Var]) -> PolyResult<Self> {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (i, &v) in self.vars.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let j = vars
                    .iter()
                    .position(|&w| w == v)
                    .ok_or(PolyError::UnknownVariable(v))?;
                ne[j] = e[i];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitute an exact rational value for one variable.
    pub fn substitute(&self, v: Var, value: &BigRational) -> PolyResult<Self> {
        let idx = self
            .vars
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[idx];
            ne[idx] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff *= value;
            }
            out.add_term(ne, coeff);
        }
        Ok(out)
    }

    /// Leading term under graded lexicographic order with x > y > z > p > mu.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Graded-lexicographic division by a single divisor.
    ///
    /// Returns `(q, r)` with `self = q * f + r` and no term of `r`
    /// divisible by the leading term of `f`. For irreducible `f`, `r == 0`
    /// is the membership test in the principal ideal `(f)`.
    pub fn divide_remainder(&self, f: &Self) -> PolyResult<(Self, Self)> {
        self.check_same_ring(f)?;
        if f.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (lt_e, lt_c) = f.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quotient = Self::zero(&self.vars);
        let mut remainder = Self::zero(&self.vars);
        let mut work = self.clone();
        while let Some((we, wc)) = work.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if we.iter().zip(&lt_e).all(|(&a, &b)| a >= b) {
                let qe: Vec<u32> = we.iter().zip(&lt_e).map(|(&a, &b)| a - b).collect();
                let qc = &wc / &lt_c;
                let mut qterm = Self::zero(&self.vars);
                qterm.terms.insert(qe, qc);
                work = work.sub(&qterm.mul(f)?)?;
                quotient = quotient.add(&qterm)?;
            } else {
                work.terms.remove(&we);
                remainder.add_term(we, wc);
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn exact_div(&self, f: &Self) -> PolyResult<Self> {
        let (q, r) = self.divide_remainder(f)?;
        if !r.is_zero() {
            return Err(PolyError::Degenerate(format!(
                "inexact division, remainder has {} terms",
                r.num_terms()
            )));
        }
        Ok(q)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (i, &k) in e.iter().enumerate() {
                t *= point[i].powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &k) in e.iter().enumerate() {
                t *= point[i].powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Exact rational evaluation.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Normalize so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Content-free primitive part with positive leading coefficient:
    /// clears denominators and divides by the integer content.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * &den / c.denom();
            num_gcd = num_integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut scale = BigRational::new(den, num_gcd);
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back through a scaled quotient for extreme magnitudes
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(fmt_coeff(&abs));
            }
            for (j, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(self.vars[j].name().to_string());
                } else if k > 1 {
                    factors.push(format!("{}^{}", self.vars[j].name(), k));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

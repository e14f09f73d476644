//! Truncated formal power series in the expansion parameter mu, with
//! `MultiPoly` coefficients. Arithmetic discards powers above the
//! truncation order; the default order 3 matches the depth of the
//! mu-expansion these series exist to drive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{MultiPoly, PolyError, PolyResult, Var};

pub const DEFAULT_ORDER: usize = 3;

/// Series `c_0 + c_1 mu + ... + c_order mu^order` with polynomial
/// coefficients in a fixed ring (mu itself is not part of that ring).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[Var], order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![MultiPoly::zero(vars); order + 1],
        }
    }

    pub fn from_poly(p: &MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(p.vars(), order);
        s.coeffs[0] = p.clone();
        s
    }

    /// Build from explicit mu-coefficients (padded or truncated to order).
    pub fn from_coeffs(vars: &[Var], order: usize, coeffs: Vec<MultiPoly>) -> Self {
        let mut s = Self::zero(vars, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn vars(&self) -> &[Var] {
        self.coeffs[0].vars()
    }

    fn check_order(&self, other: &Self) -> PolyResult<()> {
        if self.order != other.order {
            return Err(PolyError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> PolyResult<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<PolyResult<_>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> PolyResult<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<PolyResult<_>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> PolyResult<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.vars(), self.order);
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul(&other.coeffs[j])?;
                out.coeffs[i + j] = out.coeffs[i + j].add(&prod)?;
            }
        }
        Ok(out)
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> PolyResult<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(p))
            .collect::<PolyResult<_>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn pow(&self, n: u32) -> PolyResult<Self> {
        let mut out = Self::from_poly(&MultiPoly::one(self.vars()), self.order);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Flip the sign of the expansion parameter: `mu -> -mu`.
    pub fn negate_mu(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }
}

/// Geometric series for `1 / (1 - mu * c)`: coefficients `c^k`.
pub fn geometric_inverse(c: &MultiPoly, order: usize) -> TruncatedSeries {
    let coeffs = (0..=order).map(|k| c.pow(k as u32)).collect();
    TruncatedSeries {
        order,
        coeffs,
    }
}

/// Exponent of the prefactor `(1 - mu*c)^e`: the formal parameter `p`
/// shifted by an integer, or an exact rational.
#[derive(Clone, Debug)]
pub enum BinomExponent {
    /// `p + shift` with `p` a ring variable of the coefficient ring.
    FormalP(i64),
    Rational(BigRational),
}

/// Generalized binomial expansion of `(1 - mu*c)^e` to the given order:
/// the mu^k coefficient is `binom(e, k) * (-c)^k`, polynomial in `p`
/// when the exponent is formal.
pub fn binomial_power(
    c: &MultiPoly,
    exponent: &BinomExponent,
    order: usize,
) -> PolyResult<TruncatedSeries> {
    let vars = c.vars();
    let e_poly = match exponent {
        BinomExponent::FormalP(shift) => {
            let p = MultiPoly::var(vars, Var::P)?;
            p.add(&MultiPoly::constant(
                vars,
                BigRational::from_integer(BigInt::from(*shift)),
            ))?
        }
        BinomExponent::Rational(q) => MultiPoly::constant(vars, q.clone()),
    };
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut binom = MultiPoly::one(vars); // binom(e, 0)
    let neg_c = c.neg();
    let mut c_pow = MultiPoly::one(vars);
    for k in 0..=order {
        if k > 0 {
            // binom(e, k) = binom(e, k-1) * (e - (k-1)) / k
            let shift = MultiPoly::constant(
                vars,
                BigRational::from_integer(BigInt::from(k as i64 - 1)),
            );
            let factor = e_poly.sub(&shift)?;
            binom = binom
                .mul(&factor)?
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k as i64)));
            c_pow = c_pow.mul(&neg_c)?;
        }
        coeffs.push(binom.mul(&c_pow)?);
    }
    Ok(TruncatedSeries {
        order,
        coeffs,
    })
}

/// Taylor expansion of `prefactor * g(argX, argY)` in mu, exact in the
/// coefficient ring. `g` must live in a ring containing only x, y (and
/// optionally p); the series arguments carry the full coefficient ring.
pub fn compose_series(
    g: &MultiPoly,
    arg_x: &TruncatedSeries,
    arg_y: &TruncatedSeries,
    prefactor: &TruncatedSeries,
) -> PolyResult<TruncatedSeries> {
    arg_x.check_order(arg_y)?;
    arg_x.check_order(prefactor)?;
    let vars = arg_x.vars();
    let order = arg_x.order;
    let g = g.embed(vars)?;
    let xi = g
        .vars()
        .iter()
        .position(|&v| v == Var::X)
        .ok_or(PolyError::UnknownVariable(Var::X))?;
    let yi = g
        .vars()
        .iter()
        .position(|&v| v == Var::Y)
        .ok_or(PolyError::UnknownVariable(Var::Y))?;
    let mut acc = TruncatedSeries::zero(vars, order);
    for (e, c) in g.terms() {
        let mut rest = e.clone();
        let (ex, ey) = (rest[xi], rest[yi]);
        rest[xi] = 0;
        rest[yi] = 0;
        let coeff_poly = MultiPoly::from_terms(vars, [(rest, c.clone())]);
        let term = arg_x
            .pow(ex)?
            .mul(&arg_y.pow(ey)?)?
            .mul_poly(&coeff_poly)?;
        acc = acc.add(&term)?;
    }
    acc.mul(prefactor)
}

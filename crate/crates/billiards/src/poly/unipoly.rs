//! Exact univariate polynomials over the rationals: gcd chains, squarefree
//! decomposition, and numeric root extraction with exact multiplicities.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{rational_to_f64, MultiPoly, PolyError, PolyResult, Var};

/// Dense univariate polynomial, coefficients low to high, trailing zeros
/// trimmed. The zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Extract a univariate polynomial from a `MultiPoly` that only uses
    /// the variable `v`.
    pub fn from_multipoly(p: &MultiPoly, v: Var) -> PolyResult<Self> {
        let idx = p
            .vars()
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        let mut coeffs: Vec<BigRational> = vec![];
        for (e, c) in p.terms() {
            for (i, &k) in e.iter().enumerate() {
                if i != idx && k != 0 {
                    return Err(PolyError::Degenerate(format!(
                        "polynomial is not univariate in {}",
                        v.name()
                    )));
                }
            }
            let k = e[idx] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_multipoly(&self, vars: &[Var], v: Var) -> PolyResult<MultiPoly> {
        let idx = vars
            .iter()
            .position(|&w| w == v)
            .ok_or(PolyError::UnknownVariable(v))?;
        let terms = self.coeffs.iter().enumerate().filter_map(|(k, c)| {
            if c.is_zero() {
                None
            } else {
                let mut e = vec![0u32; vars.len()];
                e[idx] = k as u32;
                Some((e, c.clone()))
            }
        });
        Ok(MultiPoly::from_terms(vars, terms.collect::<Vec<_>>()))
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i + 1)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division, `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> PolyResult<(Self, Self)> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lc = d.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lc;
            if !c.is_zero() {
                quo[k] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &(dc * &c);
                    rem[k + i] = v;
                }
            }
            rem.pop();
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        Ok((UniPoly::new(quo), UniPoly::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// `self / gcd(self, self')`, monic: same roots, all simple.
    pub fn squarefree_part(&self) -> PolyResult<Self> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return Ok(self.monic());
        }
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    /// Yun squarefree decomposition: returns `(factor, multiplicity)`
    /// pairs with the factors monic, squarefree and pairwise coprime, and
    /// `self = lc * prod factor^multiplicity`.
    pub fn squarefree_decomposition(&self) -> PolyResult<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a)?.0;
        let mut c = fp.div_rem(&a)?.0;
        let mut out = vec![];
        let mut mult = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), mult));
            }
            b = b.div_rem(&g)?.0;
            c = d.div_rem(&g)?.0;
            mult += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        Ok(out)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Complex64::new(rational_to_f64(c), 0.0);
        }
        acc
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// All complex roots with exact multiplicities: Yun decomposition
    /// supplies the multiplicity structure, Durand-Kerner iteration the
    /// numeric roots of each squarefree factor.
    pub fn roots(&self) -> PolyResult<Vec<(Complex64, usize)>> {
        let mut out = vec![];
        for (factor, mult) in self.squarefree_decomposition()? {
            for r in durand_kerner(&factor) {
                out.push((r, mult));
            }
        }
        Ok(out)
    }
}

/// Durand-Kerner (Weierstrass) simultaneous root iteration on a monic
/// squarefree polynomial, with a Newton polish per root.
fn durand_kerner(f: &UniPoly) -> Vec<Complex64> {
    let n = match f.degree() {
        None | Some(0) => return vec![],
        Some(n) => n,
    };
    let fm = f.monic();
    let cf: Vec<f64> = fm.coeffs.iter().map(rational_to_f64).collect();
    // Cauchy bound for the root radius
    let radius = 1.0
        + cf[..n]
            .iter()
            .map(|c| c.abs())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut w: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius.min(1e6))
        .collect();
    let eval = |t: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in cf.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= w[i] - w[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = eval(w[i]) / den;
            w[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius.max(1.0) {
            break;
        }
    }
    // Newton polish against the original coefficients
    let fp = fm.derivative();
    let dcf: Vec<f64> = fp.coeffs.iter().map(rational_to_f64).collect();
    let deval = |t: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in dcf.iter().rev() {
            acc = acc * t + c;
        }
        acc
    };
    for wi in w.iter_mut() {
        for _ in 0..3 {
            let d = deval(*wi);
            if d.norm() > 1e-12 {
                *wi -= eval(*wi) / d;
            }
        }
        // snap tiny imaginary parts arising from real roots
        if wi.im.abs() < 1e-12 * (1.0 + wi.re.abs()) {
            wi.im = 0.0;
        }
    }
    w
}

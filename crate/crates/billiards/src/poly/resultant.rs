//! Resultants via the Sylvester matrix with fraction-free Bareiss
//! elimination over the polynomial ring in the remaining variables.

use super::{MultiPoly, PolyError, PolyResult, Var};

/// Coefficients of `p` with respect to `var`, low to high, each a
/// polynomial in the same ring with the `var` exponent zeroed out.
pub fn coeffs_in(p: &MultiPoly, var: Var) -> PolyResult<Vec<MultiPoly>> {
    let idx = p
        .vars()
        .iter()
        .position(|&w| w == var)
        .ok_or(PolyError::UnknownVariable(var))?;
    let deg = match p.degree_in(var)? {
        None => return Ok(vec![]),
        Some(d) => d as usize,
    };
    let mut out = vec![MultiPoly::zero(p.vars()); deg + 1];
    for (e, c) in p.terms() {
        let k = e[idx] as usize;
        let mut ne = e.clone();
        ne[idx] = 0;
        let term = MultiPoly::from_terms(p.vars(), [(ne, c.clone())]);
        out[k] = out[k].add(&term)?;
    }
    Ok(out)
}

/// Determinant of a square polynomial matrix by Bareiss fraction-free
/// elimination; every interior division is exact.
pub fn det_bareiss(mut m: Vec<Vec<MultiPoly>>, vars: &[Var]) -> PolyResult<MultiPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(MultiPoly::one(vars));
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k]
                    .mul(&m[i][j])?
                    .sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = MultiPoly::zero(vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Sylvester-matrix resultant of `a` and `b` with respect to `var`.
///
/// Degenerate cases follow the classical conventions: when one input is
/// constant in `var` the resultant is that constant raised to the other
/// degree; when both are constant the elimination is meaningless and an
/// error is returned.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, var: Var) -> PolyResult<MultiPoly> {
    if a.vars() != b.vars() {
        return Err(PolyError::ArityMismatch(a.vars().to_vec(), b.vars().to_vec()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let ca = coeffs_in(a, var)?;
    let cb = coeffs_in(b, var)?;
    let m = ca.len() - 1; // deg_var a
    let n = cb.len() - 1; // deg_var b
    if m == 0 && n == 0 {
        return Err(PolyError::BothConstant);
    }
    if m == 0 {
        return Ok(ca[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(cb[0].pow(m as u32));
    }
    let size = m + n;
    let vars = a.vars();
    let mut mat = vec![vec![MultiPoly::zero(vars); size]; size];
    for row in 0..n {
        for (k, c) in ca.iter().enumerate() {
            // column holds coefficient of var^(m+n-1-col); standard layout:
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in cb.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    det_bareiss(mat, vars)
}

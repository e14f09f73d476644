//! Symbolic verification of the mu-expansion derivation: the H operator,
//! the tangent field u, the third-order coefficient extraction, the
//! conservation chain, and the cube identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::poly::series::{
    binomial_power, compose_series, geometric_inverse, BinomExponent, TruncatedSeries,
};
use crate::poly::unipoly::UniPoly;
use crate::poly::{rational_to_f64, MultiPoly, PolyError, PolyResult, Var, XY, XYP};
use crate::projgeom::Curvature;

/// A dual curve in the affine chart together with the homogeneity degree
/// of the conserved quantity it came from.
#[derive(Debug, Clone)]
pub struct AffineCurveData {
    pub g: MultiPoly,
    pub curvature: Curvature,
    pub p: BinomExponent,
}

impl AffineCurveData {
    pub fn formal(g: MultiPoly, curvature: Curvature) -> PolyResult<Self> {
        Self::new(g, curvature, BinomExponent::FormalP(0))
    }

    pub fn with_p(g: MultiPoly, curvature: Curvature, p: BigRational) -> PolyResult<Self> {
        Self::new(g, curvature, BinomExponent::Rational(p))
    }

    fn new(g: MultiPoly, curvature: Curvature, p: BinomExponent) -> PolyResult<Self> {
        if g.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(AffineCurveData { g, curvature, p })
    }
}

/// Outcome of the third-order coefficient extraction.
#[derive(Debug, Clone, Serialize)]
pub struct Mu3Report {
    /// Coefficient of mu^1 in LHS - RHS; always `-2p(xg_y - yg_x)g`.
    pub mu1_coeff: String,
    /// Coefficient of mu^3 in LHS - RHS.
    pub mu3_coeff: String,
    /// The target expression `m L_u H + 3(2-p) H (xg_y - yg_x)`.
    pub terms_expr: String,
    /// Exact scalar with `mu3_coeff = lambda * terms_expr (mod g)`, when
    /// one exists.
    pub proportionality: Option<String>,
    pub residual_mod_g: String,
    #[serde(skip)]
    pub detail: Mu3Detail,
}

/// The exact polynomials behind the rendered report.
#[derive(Debug, Clone)]
pub struct Mu3Detail {
    pub mu1_coeff: MultiPoly,
    pub mu3_coeff: MultiPoly,
    pub terms_expr: MultiPoly,
    pub lambda: Option<BigRational>,
    pub residual_mod_g: MultiPoly,
    pub even_coeffs_zero: bool,
}

/// `H(g) = g_xx g_y^2 - 2 g_xy g_x g_y + g_yy g_x^2`.
pub fn h_operator(g: &MultiPoly) -> PolyResult<MultiPoly> {
    let gx = g.diff(Var::X)?;
    let gy = g.diff(Var::Y)?;
    let gxx = gx.diff(Var::X)?;
    let gxy = gx.diff(Var::Y)?;
    let gyy = gy.diff(Var::Y)?;
    gxx.mul(&gy.pow(2))?
        .sub(&gxy.mul(&gx)?.mul(&gy)?.scale(&BigRational::from_integer(2.into())))?
        .add(&gyy.mul(&gx.pow(2))?)
}

/// Derivative of `h` along the tangent field `u = g_y d_x - g_x d_y`.
pub fn lie_u(h: &MultiPoly, g: &MultiPoly) -> PolyResult<MultiPoly> {
    let gx = g.diff(Var::X)?;
    let gy = g.diff(Var::Y)?;
    gy.mul(&h.diff(Var::X)?)?.sub(&gx.mul(&h.diff(Var::Y)?)?)
}

/// `L_u H(g)` written out in third derivatives:
/// `g_xxx g_y^3 - 3 g_xxy g_y^2 g_x + 3 g_xyy g_y g_x^2 - g_yyy g_x^3`.
/// Verifying the two agree exactly is the paper's stepping stone between
/// the raw mu^3 coefficient and the conservation chain.
pub fn third_order_identity_check(g: &MultiPoly) -> PolyResult<bool> {
    let gx = g.diff(Var::X)?;
    let gy = g.diff(Var::Y)?;
    let gxxx = gx.diff(Var::X)?.diff(Var::X)?;
    let gxxy = gx.diff(Var::X)?.diff(Var::Y)?;
    let gxyy = gx.diff(Var::Y)?.diff(Var::Y)?;
    let gyyy = gy.diff(Var::Y)?.diff(Var::Y)?;
    let three = BigRational::from_integer(3.into());
    let displayed = gxxx
        .mul(&gy.pow(3))?
        .sub(&gxxy.mul(&gy.pow(2))?.mul(&gx)?.scale(&three))?
        .add(&gxyy.mul(&gy)?.mul(&gx.pow(2))?.scale(&three))?
        .sub(&gyyy.mul(&gx.pow(3))?)?;
    Ok(lie_u(&h_operator(g)?, g)? == displayed)
}

/// `H(f r) = r^3 H(f)` on the curve `{f = 0}`, checked as exact
/// divisibility of the difference by `f`.
pub fn cube_identity_check(f: &MultiPoly, r: &MultiPoly) -> PolyResult<bool> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let diff = h_operator(&f.mul(r)?)?.sub(&r.pow(3).mul(&h_operator(f)?)?)?;
    let (_, rem) = diff.divide_remainder(f)?;
    Ok(rem.is_zero())
}

/// The four structural ingredients of the expansion for one curvature
/// branch: the shift fields A, B, the rotation term C, and the metric
/// factor m.
pub fn branch_fields(
    g: &MultiPoly,
    curvature: Curvature,
) -> PolyResult<[MultiPoly; 4]> {
    let vars = g.vars();
    let gx = g.diff(Var::X)?;
    let gy = g.diff(Var::Y)?;
    let x = MultiPoly::var(vars, Var::X)?;
    let y = MultiPoly::var(vars, Var::Y)?;
    let one = MultiPoly::one(vars);
    let xy = x.mul(&y)?;
    let (ay, bx, m) = match curvature {
        Curvature::Sphere => (
            one.add(&y.pow(2))?,
            one.add(&x.pow(2))?,
            one.add(&x.pow(2))?.add(&y.pow(2))?,
        ),
        Curvature::Hyperbolic => (
            y.pow(2).sub(&one)?,
            x.pow(2).sub(&one)?,
            x.pow(2).add(&y.pow(2))?.sub(&one)?,
        ),
    };
    let a = xy.mul(&gx)?.add(&ay.mul(&gy)?)?;
    let b = bx.mul(&gx)?.add(&xy.mul(&gy)?)?;
    let c = x.mul(&gy)?.sub(&y.mul(&gx)?)?;
    Ok([a, b, c, m])
}

/// The left side of the third-order relation:
/// `m L_u H(g) + 3 (2 - p) H(g) (x g_y - y g_x)`.
pub fn terms_expression(data: &AffineCurveData) -> PolyResult<MultiPoly> {
    let (g, ring) = expansion_ring(data)?;
    let [_, _, c, m] = branch_fields(&g, data.curvature)?;
    let h = h_operator(&g)?;
    let luh = lie_u(&h, &g)?;
    let two_minus_p = match &data.p {
        BinomExponent::FormalP(shift) => MultiPoly::from_int(&ring, 2 - shift)
            .sub(&MultiPoly::var(&ring, Var::P)?)?,
        BinomExponent::Rational(q) => {
            MultiPoly::constant(&ring, BigRational::from_integer(2.into()) - q)
        }
    };
    m.mul(&luh)?.add(
        &two_minus_p
            .scale(&BigRational::from_integer(3.into()))
            .mul(&h)?
            .mul(&c)?,
    )
}

fn expansion_ring(data: &AffineCurveData) -> PolyResult<(MultiPoly, Vec<Var>)> {
    match data.p {
        BinomExponent::FormalP(_) => Ok((data.g.embed(XYP)?, XYP.to_vec())),
        BinomExponent::Rational(_) => {
            let g = if data.g.vars() == XY {
                data.g.clone()
            } else {
                data.g.restrict(XY).or_else(|_| data.g.embed(XY))?
            };
            Ok((g, XY.to_vec()))
        }
    }
}

/// One side of the dual-curve identity as a truncated series:
/// `(1 - mu C)^p g((x + mu A)/(1 - mu C), (y - mu B)/(1 - mu C))`.
/// The opposite side is this with `mu -> -mu`.
pub fn side_series(data: &AffineCurveData, order: usize) -> PolyResult<TruncatedSeries> {
    let (g, ring) = expansion_ring(data)?;
    let [a, b, c, _] = branch_fields(&g, data.curvature)?;
    let x = MultiPoly::var(&ring, Var::X)?;
    let y = MultiPoly::var(&ring, Var::Y)?;
    let inv = geometric_inverse(&c, order);
    let arg_x = TruncatedSeries::from_coeffs(&ring, order, vec![x, a]).mul(&inv)?;
    let arg_y = TruncatedSeries::from_coeffs(&ring, order, vec![y, b.neg()]).mul(&inv)?;
    let prefactor = binomial_power(&c, &data.p, order)?;
    compose_series(&g, &arg_x, &arg_y, &prefactor)
}

/// LHS - RHS of the dual-curve identity as a truncated series in mu.
pub fn expansion_difference(data: &AffineCurveData, order: usize) -> PolyResult<TruncatedSeries> {
    let lhs = side_series(data, order)?;
    lhs.sub(&lhs.negate_mu())
}

fn solve_scalar(r0: &MultiPoly, r1: &MultiPoly) -> Option<BigRational> {
    if r1.is_zero() {
        return if r0.is_zero() {
            Some(BigRational::zero())
        } else {
            None
        };
    }
    if r0.is_zero() {
        return Some(BigRational::zero());
    }
    let (le, lc) = r1.leading_term()?;
    let cand = &r0.coeff(le) / lc;
    let check = r0.sub(&r1.scale(&cand)).ok()?;
    if check.is_zero() {
        Some(cand)
    } else {
        None
    }
}

/// Extract the mu^1 and mu^3 coefficients of LHS - RHS, reduce the cubic
/// one against the target expression modulo g, and report the exact
/// proportionality scalar when one exists.
pub fn mu3_extract(data: &AffineCurveData) -> PolyResult<Mu3Report> {
    let (g, _) = expansion_ring(data)?;
    let diff = expansion_difference(data, 3)?;
    let even_zero = diff.coeff(0).is_zero() && diff.coeff(2).is_zero();
    let mu1 = diff.coeff(1).clone();
    let mu3 = diff.coeff(3).clone();
    let terms = terms_expression(data)?;
    let (_, r0) = mu3.divide_remainder(&g)?;
    let (_, r1) = terms.divide_remainder(&g)?;
    let lambda = solve_scalar(&r0, &r1);
    let residual = match &lambda {
        Some(l) => r0.sub(&r1.scale(l))?,
        None => r0.clone(),
    };
    let detail = Mu3Detail {
        mu1_coeff: mu1.clone(),
        mu3_coeff: mu3.clone(),
        terms_expr: terms.clone(),
        lambda: lambda.clone(),
        residual_mod_g: residual.clone(),
        even_coeffs_zero: even_zero,
    };
    Ok(Mu3Report {
        mu1_coeff: mu1.to_string(),
        mu3_coeff: mu3.to_string(),
        terms_expr: terms.to_string(),
        proportionality: lambda.map(|l| l.to_string()),
        residual_mod_g: residual.to_string(),
        detail,
    })
}

/// Expected mu^1 coefficient: `-2 p (x g_y - y g_x) g` in the same ring
/// the extraction ran in.
pub fn expected_mu1(data: &AffineCurveData) -> PolyResult<MultiPoly> {
    let (g, ring) = expansion_ring(data)?;
    let [_, _, c, _] = branch_fields(&g, data.curvature)?;
    let p_factor = match &data.p {
        BinomExponent::FormalP(shift) => MultiPoly::var(&ring, Var::P)?
            .add(&MultiPoly::from_int(&ring, *shift))?,
        BinomExponent::Rational(q) => MultiPoly::constant(&ring, q.clone()),
    };
    Ok(p_factor
        .mul(&c)?
        .mul(&g)?
        .scale(&BigRational::from_integer((-2).into())))
}

fn rational_exponent(data: &AffineCurveData) -> PolyResult<BigRational> {
    match &data.p {
        BinomExponent::Rational(q) => Ok(q.clone()),
        BinomExponent::FormalP(_) => Err(PolyError::Degenerate(
            "conservation chain needs a concrete rational p".into(),
        )),
    }
}

/// Sample real points of `{g = 0}` by scanning x over a grid and taking
/// the real y-roots of each slice.
pub fn sample_curve_points(g: &MultiPoly, want: usize) -> PolyResult<Vec<[f64; 2]>> {
    let mut out = vec![];
    let steps = 240;
    for i in 0..=steps {
        if out.len() >= want {
            break;
        }
        let x0 = BigRational::new(BigInt::from(-3 * steps as i64 + 6 * i as i64), BigInt::from(2 * steps as i64));
        let slice = g.substitute(Var::X, &x0)?;
        if slice.is_zero() || slice.degree_in(Var::Y)?.unwrap_or(0) == 0 {
            continue;
        }
        let uni = UniPoly::from_multipoly(&slice, Var::Y)?;
        for (root, _) in uni.roots()? {
            if root.im.abs() < 1e-10 {
                out.push([rational_to_f64(&x0), root.re]);
                if out.len() >= want {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// The conservation chain: the Leibniz identity behind
/// `L_u(H(g) m^{(6-3p)/2}) = 0` on the curve, in the cleared polynomial
/// form `m L_u H + e H L_u m = e9lhs` with `e = (6-3p)/2`, followed by a
/// numeric confirmation that `H(g) / m^{(3p-6)/2}` is constant on sampled
/// real curve points (skipped when the real locus is empty).
pub fn conservation_chain_check(data: &AffineCurveData) -> PolyResult<bool> {
    let p = rational_exponent(data)?;
    let three_p = &p * BigRational::from_integer(3.into());
    if !three_p.is_integer() {
        return Err(PolyError::Degenerate(format!(
            "3p = {three_p} is not an integer; cleared exponent is fractional"
        )));
    }
    let six = BigRational::from_integer(6.into());
    let e2 = &six - &three_p;
    let e = &e2 / BigRational::from_integer(2.into());
    if !e.is_integer() {
        return Err(PolyError::Degenerate(format!(
            "(6 - 3p)/2 = {e} is not an integer"
        )));
    }
    let (g, _) = expansion_ring(data)?;
    let [_, _, _, m] = branch_fields(&g, data.curvature)?;
    let h = h_operator(&g)?;
    let lu_h = lie_u(&h, &g)?;
    let lu_m = lie_u(&m, &g)?;
    let lhs = m.mul(&lu_h)?.add(&h.mul(&lu_m)?.scale(&e))?;
    let e9 = terms_expression(data)?;
    if lhs != e9 {
        return Ok(false);
    }
    // constancy of H on the curve is only claimed when the third-order
    // relation actually holds there; otherwise the identity above is all
    // there is to check
    let (_, hypothesis) = e9.divide_remainder(&g)?;
    if !hypothesis.is_zero() {
        return Ok(true);
    }
    // numeric constancy of H / m^(3p-6)/2 on the real locus
    let exponent = rational_to_f64(&e);
    let points = sample_curve_points(&g, 100)?;
    if points.len() < 5 {
        return Ok(true); // empty or tiny real locus: nothing to sample
    }
    let mut values = vec![];
    for [x0, y0] in &points {
        let mv = m.eval_f64(&[*x0, *y0]);
        if mv.abs() < 1e-9 {
            continue;
        }
        // H = c1 m^{-e}, i.e. H * m^e should be constant
        values.push(h.eval_f64(&[*x0, *y0]) * mv.powf(exponent));
    }
    if values.len() < 5 {
        return Ok(true);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0f64, f64::max);
    Ok(spread <= 1e-6 * mean.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use proptest::prelude::*;

    fn pxy(s: &str) -> MultiPoly {
        parse_poly(s, XY).unwrap()
    }

    #[test]
    fn h_operator_examples() {
        assert!(h_operator(&pxy("x + y")).unwrap().is_zero());
        assert_eq!(h_operator(&pxy("x^2 + y^2 - 1")).unwrap(), pxy("8*x^2 + 8*y^2"));
        assert_eq!(h_operator(&pxy("x*y")).unwrap(), pxy("-2*x*y"));
    }

    #[test]
    fn lie_u_examples() {
        let g = pxy("x^3 - y^2 + x*y");
        let m = pxy("x^2 + y^2 + 1");
        let expect = pxy("2*x").mul(&g.diff(Var::Y).unwrap()).unwrap()
            .sub(&pxy("2*y").mul(&g.diff(Var::X).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lie_u(&m, &g).unwrap(), expect);
        assert!(lie_u(&g, &g).unwrap().is_zero());
        assert_eq!(lie_u(&pxy("x"), &pxy("x^2 + y^2 - 1")).unwrap(), pxy("2*y"));
    }

    #[test]
    fn third_order_identity_examples() {
        assert!(third_order_identity_check(&pxy("x^2 + y^2 - 1")).unwrap());
        assert!(third_order_identity_check(&pxy("x^3 + y^3")).unwrap());
        assert!(third_order_identity_check(&pxy("x^4 - 3*x*y + y^2 - 7")).unwrap());
    }

    #[test]
    fn cube_identity_examples() {
        let f = pxy("x^2 - y^3 + 1");
        assert!(cube_identity_check(&f, &MultiPoly::one(XY)).unwrap());
        assert!(cube_identity_check(&pxy("x"), &pxy("y")).unwrap());
        assert!(cube_identity_check(&pxy("x^2 + y^2 - 1"), &pxy("x + 2*y")).unwrap());
    }

    #[test]
    fn branch_fields_differ_by_shifts() {
        // K = -1 fields are the K = +1 ones with (1+y^2) -> (y^2-1) etc.
        let g = pxy("x^3 + x*y - 2");
        let gx = g.diff(Var::X).unwrap();
        let gy = g.diff(Var::Y).unwrap();
        let [ap, bp, cp, mp] = branch_fields(&g, Curvature::Sphere).unwrap();
        let [am, bm, cm, mm] = branch_fields(&g, Curvature::Hyperbolic).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(am, ap.sub(&gy.scale(&two)).unwrap());
        assert_eq!(bm, bp.sub(&gx.scale(&two)).unwrap());
        assert_eq!(cm, cp);
        assert_eq!(mm, mp.sub(&MultiPoly::constant(XY, two)).unwrap());
    }

    #[test]
    fn even_coefficients_vanish() {
        for curv in [Curvature::Sphere, Curvature::Hyperbolic] {
            let data =
                AffineCurveData::formal(pxy("x^2 + 3*x*y - y^3 + 1"), curv).unwrap();
            let d = expansion_difference(&data, 3).unwrap();
            assert!(d.coeff(0).is_zero());
            assert!(d.coeff(2).is_zero());
        }
    }

    #[test]
    fn mu1_is_minus_2p_c_g() {
        for curv in [Curvature::Sphere, Curvature::Hyperbolic] {
            for g in ["x^2 + y^2 - 4", "x*y - 1", "x^3 - y^2 + x*y + 2"] {
                let data = AffineCurveData::formal(pxy(g), curv).unwrap();
                let report = mu3_extract(&data).unwrap();
                assert_eq!(report.detail.mu1_coeff, expected_mu1(&data).unwrap());
            }
        }
    }

    #[test]
    fn circle_p2_mu3_vanishes_mod_g() {
        // dual of a spherical-cap circle; terms_expr vanishes identically
        // and the raw cubic coefficient reduces to zero
        for curv in [Curvature::Sphere, Curvature::Hyperbolic] {
            let data = AffineCurveData::with_p(
                pxy("x^2 + y^2 - 1/4"),
                curv,
                BigRational::from_integer(2.into()),
            )
            .unwrap();
            let report = mu3_extract(&data).unwrap();
            assert!(report.detail.terms_expr.is_zero());
            assert!(report.detail.residual_mod_g.is_zero());
            assert_eq!(report.detail.lambda, Some(BigRational::zero()));
        }
    }

    #[test]
    fn hyperbola_p2_mu3_vanishes_mod_g() {
        // xy - 1 at p = 2: terms_expr = m L_u H(g) vanishes identically
        // (H = -2xy is u-invariant) and the cubic coefficient is a
        // g-multiple; no p-free scalar exists in the formal-p ring
        let data = AffineCurveData::with_p(
            pxy("x*y - 1"),
            Curvature::Sphere,
            BigRational::from_integer(2.into()),
        )
        .unwrap();
        let report = mu3_extract(&data).unwrap();
        assert!(report.detail.terms_expr.is_zero());
        assert!(report.detail.residual_mod_g.is_zero());
        assert_eq!(report.detail.lambda, Some(BigRational::zero()));

        let formal = AffineCurveData::formal(pxy("x*y - 1"), Curvature::Sphere).unwrap();
        let formal_report = mu3_extract(&formal).unwrap();
        assert!(formal_report.detail.lambda.is_none());
    }

    #[test]
    fn generic_curve_has_no_scalar() {
        let data =
            AffineCurveData::formal(pxy("x^2 + 3*x*y - y^3 + 1"), Curvature::Sphere).unwrap();
        let report = mu3_extract(&data).unwrap();
        assert!(report.detail.lambda.is_none());
        assert!(!report.detail.residual_mod_g.is_zero());
    }

    #[test]
    fn conservation_chain_on_circle() {
        let data = AffineCurveData::with_p(
            pxy("x^2 + y^2 - 1/4"),
            Curvature::Sphere,
            BigRational::from_integer(2.into()),
        )
        .unwrap();
        assert!(conservation_chain_check(&data).unwrap());
    }

    #[test]
    fn conservation_chain_random_p2() {
        for g in ["x*y - 1", "x^3 - y^2 + 2", "x^2 - 3*y^2 + x - 5"] {
            for curv in [Curvature::Sphere, Curvature::Hyperbolic] {
                let data = AffineCurveData::with_p(
                    pxy(g),
                    curv,
                    BigRational::from_integer(2.into()),
                )
                .unwrap();
                // at p = 2 the cleared identity degenerates to
                // m L_u H = e9lhs, an unconditional identity
                assert!(conservation_chain_check(&data).unwrap());
            }
        }
    }

    #[test]
    fn conservation_chain_rejects_fractional() {
        let data = AffineCurveData::with_p(
            pxy("x^2 + y^2 - 1"),
            Curvature::Sphere,
            BigRational::new(1.into(), 3.into()),
        )
        .unwrap();
        assert!(matches!(
            conservation_chain_check(&data),
            Err(PolyError::Degenerate(_))
        ));
    }

    #[test]
    fn sample_curve_points_on_circle() {
        let pts = sample_curve_points(&pxy("x^2 + y^2 - 1"), 50).unwrap();
        assert!(pts.len() >= 20);
        for [x, y] in pts {
            assert!((x * x + y * y - 1.0).abs() < 1e-8);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn third_order_identity_random(coeffs in proptest::collection::vec(-9i64..=9, 12)) {
            // random g of degree <= 5 built from a fixed monomial basis
            let basis = [
                "1", "x", "y", "x^2", "x*y", "y^2",
                "x^3", "y^3", "x^2*y^2", "x^4*y", "x*y^4", "x^5",
            ];
            let mut g = MultiPoly::zero(XY);
            for (c, b) in coeffs.iter().zip(basis.iter()) {
                g = g.add(&pxy(b).scale(&BigRational::from_integer((*c).into()))).unwrap();
            }
            prop_assert!(third_order_identity_check(&g).unwrap());
        }

        #[test]
        fn cube_identity_random(
            fc in proptest::collection::vec(-5i64..=5, 6),
            rc in proptest::collection::vec(-5i64..=5, 6),
        ) {
            let basis = ["1", "x", "y", "x^2", "x*y", "y^2"];
            let build = |cs: &[i64]| {
                let mut q = MultiPoly::zero(XY);
                for (c, b) in cs.iter().zip(basis.iter()) {
                    q = q.add(&pxy(b).scale(&BigRational::from_integer((*c).into()))).unwrap();
                }
                q
            };
            let f = build(&fc);
            let r = build(&rc);
            prop_assume!(!f.is_zero());
            prop_assert!(cube_identity_check(&f, &r).unwrap());
        }
    }
}

//! Projective-plane geometry for the dual-curve picture: complex
//! projective points, the absolute, momentum/wedge constructions, dual
//! conics and the curvature-specific tangent field.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::poly::{MultiPoly, PolyError, PolyResult, Var, XYZ};

/// Curvature of the model surface, +1 (sphere) or -1 (hyperbolic plane).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Curvature {
    Sphere,
    Hyperbolic,
}

impl Curvature {
    pub fn k(self) -> f64 {
        match self {
            Curvature::Sphere => 1.0,
            Curvature::Hyperbolic => -1.0,
        }
    }

    pub fn k_int(self) -> i64 {
        match self {
            Curvature::Sphere => 1,
            Curvature::Hyperbolic => -1,
        }
    }
}

/// Real affine representative in R^3; hosts r, v, n, M and w.
pub type AmbientVector = [f64; 3];

/// Euclidean cross product; the paper uses it in both geometries.
pub fn wedge(a: AmbientVector, b: AmbientVector) -> AmbientVector {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Ambient bilinear form: Euclidean for the sphere, Minkowski
/// `dx1^2 + dx2^2 - dx3^2` for the hyperboloid.
pub fn minkowski_form(a: AmbientVector, b: AmbientVector, curvature: Curvature) -> f64 {
    a[0] * b[0] + a[1] * b[1] + curvature.k() * a[2] * b[2]
}

pub fn scale(a: AmbientVector, s: f64) -> AmbientVector {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: AmbientVector, b: AmbientVector) -> AmbientVector {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: AmbientVector, b: AmbientVector) -> AmbientVector {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn euclid_norm(a: AmbientVector) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Point of the complex projective plane, normalized so the
/// largest-modulus coordinate equals one.
#[derive(Debug, Clone, Serialize)]
pub struct ProjPoint {
    pub coords: [[f64; 2]; 3],
}

impl ProjPoint {
    pub fn new(raw: [Complex64; 3]) -> Self {
        let mut best = 0usize;
        for i in 1..3 {
            if raw[i].norm() > raw[best].norm() {
                best = i;
            }
        }
        let pivot = raw[best];
        let normed: Vec<Complex64> = raw.iter().map(|c| c / pivot).collect();
        ProjPoint {
            coords: [
                [normed[0].re, normed[0].im],
                [normed[1].re, normed[1].im],
                [normed[2].re, normed[2].im],
            ],
        }
    }

    pub fn from_real(raw: AmbientVector) -> Self {
        Self::new([
            Complex64::new(raw[0], 0.0),
            Complex64::new(raw[1], 0.0),
            Complex64::new(raw[2], 0.0),
        ])
    }

    pub fn complex(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.coords[0][0], self.coords[0][1]),
            Complex64::new(self.coords[1][0], self.coords[1][1]),
            Complex64::new(self.coords[2][0], self.coords[2][1]),
        ]
    }

    /// Projective equality within tolerance: all 2x2 minors of the
    /// coordinate pair vanish.
    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        let a = self.complex();
        let b = other.complex();
        for i in 0..3 {
            for j in i + 1..3 {
                if (a[i] * b[j] - a[j] * b[i]).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Residual of the absolute equation on the normalized representative.
    pub fn absolute_residual(&self, curvature: Curvature) -> f64 {
        let [x1, x2, x3] = self.complex();
        (x1 * x1 + x2 * x2 + Complex64::new(curvature.k(), 0.0) * x3 * x3).norm()
    }

    pub fn on_absolute(&self, curvature: Curvature, tol: f64) -> bool {
        self.absolute_residual(curvature) < tol
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c[1].abs() < tol)
    }
}

/// Dual of the diagonal conic cone `a1 x^2 + a2 y^2 + a3 z^2`: the
/// adjugate form `a2 a3 x^2 + a1 a3 y^2 + a1 a2 z^2` cleared of
/// denominators.
pub fn dual_conic(a1: &BigRational, a2: &BigRational, a3: &BigRational) -> PolyResult<MultiPoly> {
    if a1.is_zero() || a2.is_zero() || a3.is_zero() {
        return Err(PolyError::Degenerate(
            "dual conic requires nonzero diagonal coefficients".into(),
        ));
    }
    let x2 = MultiPoly::var(XYZ, Var::X)?.pow(2);
    let y2 = MultiPoly::var(XYZ, Var::Y)?.pow(2);
    let z2 = MultiPoly::var(XYZ, Var::Z)?.pow(2);
    x2.scale(&(a2 * a3))
        .add(&y2.scale(&(a1 * a3)))?
        .add(&z2.scale(&(a1 * a2)))
}

/// Momentum of a unit tangent vector: `M = r ^ v`, the point of the dual
/// surface (unit sphere for K = +1, de Sitter surface for K = -1).
pub fn dual_point(
    r: AmbientVector,
    v: AmbientVector,
    curvature: Curvature,
) -> PolyResult<AmbientVector> {
    let tol = 1e-8;
    let surf = minkowski_form(r, r, curvature) - curvature.k();
    let tangency = minkowski_form(r, v, curvature);
    let unit = minkowski_form(v, v, curvature) - 1.0;
    if surf.abs() > tol || tangency.abs() > tol || unit.abs() > tol {
        return Err(PolyError::Degenerate(format!(
            "dual_point preconditions violated: surface {surf:.2e}, tangency {tangency:.2e}, unit {unit:.2e}"
        )));
    }
    Ok(wedge(r, v))
}

/// The paper's tangent vector to the dual curve at `m`, from the gradient
/// of the dual defining polynomial evaluated there. Sign pattern depends
/// on the curvature branch.
pub fn tangent_w(grad: AmbientVector, m: AmbientVector, curvature: Curvature) -> AmbientVector {
    let [g1, g2, g3] = grad;
    let [x1, x2, x3] = m;
    match curvature {
        Curvature::Sphere => [
            x2 * g3 - x3 * g2,
            x3 * g1 - x1 * g3,
            x1 * g2 - x2 * g1,
        ],
        Curvature::Hyperbolic => [
            x2 * g3 + x3 * g2,
            -x3 * g1 - x1 * g3,
            x1 * g2 - x2 * g1,
        ],
    }
}

/// Symbolic version of [`tangent_w`]: components as polynomials, for the
/// exact tangency identity `grad(G) . w = 0`.
pub fn tangent_w_poly(g: &MultiPoly, curvature: Curvature) -> PolyResult<[MultiPoly; 3]> {
    let x1 = MultiPoly::var(g.vars(), Var::X)?;
    let x2 = MultiPoly::var(g.vars(), Var::Y)?;
    let x3 = MultiPoly::var(g.vars(), Var::Z)?;
    let g1 = g.diff(Var::X)?;
    let g2 = g.diff(Var::Y)?;
    let g3 = g.diff(Var::Z)?;
    Ok(match curvature {
        Curvature::Sphere => [
            x2.mul(&g3)?.sub(&x3.mul(&g2)?)?,
            x3.mul(&g1)?.sub(&x1.mul(&g3)?)?,
            x1.mul(&g2)?.sub(&x2.mul(&g1)?)?,
        ],
        Curvature::Hyperbolic => [
            x2.mul(&g3)?.add(&x3.mul(&g2)?)?,
            x3.mul(&g1)?.neg().sub(&x1.mul(&g3)?)?,
            x1.mul(&g2)?.sub(&x2.mul(&g1)?)?,
        ],
    })
}

/// Evaluate the gradient of a polynomial in x, y, z at a real point.
pub fn gradient_at(g: &MultiPoly, m: AmbientVector) -> PolyResult<AmbientVector> {
    Ok([
        g.diff(Var::X)?.eval_f64(&m),
        g.diff(Var::Y)?.eval_f64(&m),
        g.diff(Var::Z)?.eval_f64(&m),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn wedge_basis() {
        assert_eq!(wedge([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn wedge_self_vanishes() {
        let a = [1.3, -0.2, 4.0];
        assert_eq!(wedge(a, a), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn wedge_direct_formula() {
        assert_eq!(wedge([1.0, 0.0, 0.0], [0.0, 1.0, 1.0]), [0.0, -1.0, 1.0]);
    }

    #[test]
    fn minkowski_signs() {
        let e3 = [0.0, 0.0, 1.0];
        assert_eq!(minkowski_form(e3, e3, Curvature::Sphere), 1.0);
        assert_eq!(minkowski_form(e3, e3, Curvature::Hyperbolic), -1.0);
        let null = [1.0, 0.0, 1.0];
        assert_eq!(minkowski_form(null, null, Curvature::Hyperbolic), 0.0);
    }

    #[test]
    fn absolute_membership() {
        let p = ProjPoint::new([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ]);
        assert!(p.on_absolute(Curvature::Sphere, 1e-9));
        let q = ProjPoint::from_real([1.0, 0.0, 1.0]);
        assert!(q.on_absolute(Curvature::Hyperbolic, 1e-9));
        let r = ProjPoint::from_real([1.0, -1.0, 0.0]);
        assert!(!r.on_absolute(Curvature::Sphere, 1e-9));
        assert!((r.absolute_residual(Curvature::Sphere) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dual_conic_examples() {
        let one = BigRational::from_integer(1.into());
        let sphere = dual_conic(&one, &one, &one).unwrap();
        assert_eq!(sphere, parse_poly("x^2 + y^2 + z^2", XYZ).unwrap());

        let neg = BigRational::from_integer((-1).into());
        let cone = dual_conic(&one, &one, &neg).unwrap();
        assert_eq!(cone, parse_poly("-x^2 - y^2 + z^2", XYZ).unwrap());

        let d = dual_conic(
            &BigRational::from_integer(2.into()),
            &BigRational::from_integer(3.into()),
            &BigRational::from_integer(6.into()),
        )
        .unwrap();
        assert_eq!(d, parse_poly("18*x^2 + 12*y^2 + 6*z^2", XYZ).unwrap());
    }

    #[test]
    fn dual_conic_involution() {
        // dual of the dual is the original scaled by a1 a2 a3
        let a = [
            BigRational::from_integer(2.into()),
            BigRational::from_integer(3.into()),
            BigRational::from_integer(6.into()),
        ];
        let d = dual_conic(&a[0], &a[1], &a[2]).unwrap();
        let coeff = |p: &MultiPoly, e: [u32; 3]| p.coeff(&e);
        let dd = dual_conic(
            &coeff(&d, [2, 0, 0]),
            &coeff(&d, [0, 2, 0]),
            &coeff(&d, [0, 0, 2]),
        )
        .unwrap();
        // projective equality: dd is (a1, a2, a3) scaled by a common factor
        let r0 = coeff(&dd, [2, 0, 0]) / &a[0];
        let r1 = coeff(&dd, [0, 2, 0]) / &a[1];
        let r2 = coeff(&dd, [0, 0, 2]) / &a[2];
        assert_eq!(r0, r1);
        assert_eq!(r1, r2);
    }

    #[test]
    fn dual_conic_zero_coeff_rejected() {
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        assert!(dual_conic(&one, &zero, &one).is_err());
    }

    #[test]
    fn dual_point_sphere_basis() {
        let m = dual_point([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], Curvature::Sphere).unwrap();
        assert_eq!(m, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn dual_point_hyperbolic_basis() {
        let m = dual_point([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], Curvature::Hyperbolic).unwrap();
        assert_eq!(m, [0.0, 1.0, 0.0]);
        assert!((minkowski_form(m, m, Curvature::Hyperbolic) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dual_point_latitude_circle() {
        // colatitude theta circle maps to a circle at height sin(theta)
        let theta = 0.7f64;
        for i in 0..100 {
            let phi = i as f64 * std::f64::consts::TAU / 100.0;
            let r = [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ];
            let v = [-phi.sin(), phi.cos(), 0.0];
            let m = dual_point(r, v, Curvature::Sphere).unwrap();
            let expect = [
                -theta.cos() * phi.cos(),
                -theta.cos() * phi.sin(),
                theta.sin(),
            ];
            for k in 0..3 {
                assert!((m[k] - expect[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dual_point_rejects_bad_state() {
        assert!(dual_point([2.0, 0.0, 0.0], [0.0, 1.0, 0.0], Curvature::Sphere).is_err());
    }

    #[test]
    fn tangent_w_orthogonal_to_gradient() {
        for curvature in [Curvature::Sphere, Curvature::Hyperbolic] {
            let g = parse_poly("x^3 - 2*x*y*z + 5*z^3 + y^2*z", XYZ).unwrap();
            let w = tangent_w_poly(&g, curvature).unwrap();
            let dot = g
                .diff(Var::X)
                .unwrap()
                .mul(&w[0])
                .unwrap()
                .add(&g.diff(Var::Y).unwrap().mul(&w[1]).unwrap())
                .unwrap()
                .add(&g.diff(Var::Z).unwrap().mul(&w[2]).unwrap())
                .unwrap();
            assert!(dot.is_zero(), "curvature {curvature:?}");
        }
    }

    #[test]
    fn tangent_w_hyperbolic_sign_pattern() {
        // G = x1: gradient (1,0,0); hyperbolic w = (0, -x3, x2)... literal check
        let g = parse_poly("x", XYZ).unwrap();
        let m = [0.0, 1.0, 0.0];
        let grad = gradient_at(&g, m).unwrap();
        // at x3 = 0 both branches agree: w = (0, 0, -x2 G1)
        assert_eq!(tangent_w(grad, m, Curvature::Hyperbolic), [0.0, 0.0, -1.0]);
        assert_eq!(tangent_w(grad, m, Curvature::Sphere), [0.0, 0.0, -1.0]);
        // sign difference shows in w2 = -x3 G1 - x1 G3 at m = (0,1,1)
        let m2 = [0.0, 1.0, 1.0];
        let w2h = tangent_w(gradient_at(&g, m2).unwrap(), m2, Curvature::Hyperbolic);
        let w2s = tangent_w(gradient_at(&g, m2).unwrap(), m2, Curvature::Sphere);
        assert_eq!(w2h[1], -1.0);
        assert_eq!(w2s[1], 1.0);
    }

    #[test]
    fn normalization_bounds() {
        let p = ProjPoint::new([
            Complex64::new(3.0, 4.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(-2.0, 1.0),
        ]);
        let norm: f64 = p
            .complex()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((1.0..=3f64.sqrt() + 1e-12).contains(&norm));
    }
}

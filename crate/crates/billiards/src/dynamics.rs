//! Billiards inside cone-cut convex domains on the unit sphere and the
//! upper hyperboloid sheet: closed-form geodesic flow, boundary
//! reflection, momentum monitoring, and the numeric certifications of the
//! tangent-line symmetry and midpoint properties of the dual curve.

use num_rational::BigRational;
use thiserror::Error;

use crate::poly::{MultiPoly, PolyError, PolyResult, Var, XYZ};
use crate::projgeom::{
    add, dual_point, gradient_at, minkowski_form, scale, sub, tangent_w, wedge, AmbientVector,
    Curvature,
};

pub const STATE_TOL: f64 = 1e-10;
pub const HIT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum DynError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("trajectory escaped: no boundary crossing within t = {0}")]
    Escaped(f64),
    #[error("degenerate boundary: {0}")]
    Degenerate(String),
    #[error("state invariant violated: {0}")]
    Invariant(String),
}

pub type DynResult<T> = Result<T, DynError>;

/// Constant-curvature surface embedded in R^3: the unit sphere or the
/// upper sheet `x1^2 + x2^2 - x3^2 = -1, x3 > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Surface {
    pub curvature: Curvature,
}

impl Surface {
    pub fn new(curvature: Curvature) -> Self {
        Surface { curvature }
    }

    pub fn form(&self, a: AmbientVector, b: AmbientVector) -> f64 {
        minkowski_form(a, b, self.curvature)
    }

    /// `<r,r> - K`: zero on the surface for both signs of K.
    pub fn constraint_residual(&self, r: AmbientVector) -> f64 {
        self.form(r, r) - self.curvature.k()
    }

    /// Radial re-projection onto the surface.
    pub fn project_point(&self, r: AmbientVector) -> DynResult<AmbientVector> {
        let q = self.form(r, r) * self.curvature.k();
        if q <= 0.0 {
            return Err(DynError::Invariant(format!(
                "point {r:?} cannot be projected to the surface"
            )));
        }
        let mut p = scale(r, 1.0 / q.sqrt());
        if self.curvature == Curvature::Hyperbolic && p[2] < 0.0 {
            p = scale(p, -1.0);
        }
        Ok(p)
    }

    /// Component of `w` tangent to the surface at `r`.
    pub fn tangent_project(&self, r: AmbientVector, w: AmbientVector) -> AmbientVector {
        // <r,r> = K, so the radial coefficient is K<w,r>
        sub(w, scale(r, self.curvature.k() * self.form(w, r)))
    }

    pub fn normalize_tangent(&self, r: AmbientVector, w: AmbientVector) -> DynResult<AmbientVector> {
        let t = self.tangent_project(r, w);
        let n2 = self.form(t, t);
        if n2 <= 1e-24 {
            return Err(DynError::Degenerate(
                "vanishing tangential component".into(),
            ));
        }
        Ok(scale(t, 1.0 / n2.sqrt()))
    }

    /// Orthonormal basis of the tangent plane at `r` (induced metric).
    pub fn tangent_basis(&self, r: AmbientVector) -> DynResult<[AmbientVector; 2]> {
        let candidates = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let mut best = candidates[0];
        let mut best_norm = -1.0;
        for c in candidates {
            let t = self.tangent_project(r, c);
            let n2 = self.form(t, t);
            if n2 > best_norm {
                best_norm = n2;
                best = c;
            }
        }
        let b1 = self.normalize_tangent(r, best)?;
        let mut b2 = [0.0; 3];
        let mut found = false;
        for c in candidates {
            let mut t = self.tangent_project(r, c);
            t = sub(t, scale(b1, self.form(t, b1)));
            let n2 = self.form(t, t);
            if n2 > 1e-12 {
                b2 = scale(t, 1.0 / n2.sqrt());
                found = true;
                break;
            }
        }
        if !found {
            return Err(DynError::Degenerate("degenerate tangent plane".into()));
        }
        Ok([b1, b2])
    }
}

/// Point on the surface with a unit tangent vector.
#[derive(Debug, Clone, Copy)]
pub struct BilliardState {
    pub r: AmbientVector,
    pub v: AmbientVector,
}

impl BilliardState {
    pub fn new(surface: &Surface, r: AmbientVector, v: AmbientVector) -> DynResult<Self> {
        let s = BilliardState { r, v };
        s.validate(surface)?;
        Ok(s)
    }

    pub fn validate(&self, surface: &Surface) -> DynResult<()> {
        let c = surface.constraint_residual(self.r).abs();
        let t = surface.form(self.r, self.v).abs();
        let u = (surface.form(self.v, self.v) - 1.0).abs();
        if c > STATE_TOL || t > STATE_TOL || u > STATE_TOL {
            return Err(DynError::Invariant(format!(
                "constraint {c:.2e}, tangency {t:.2e}, unit-speed {u:.2e}"
            )));
        }
        Ok(())
    }

    /// Re-project onto the constraint manifold (drift control).
    pub fn renormalize(&self, surface: &Surface) -> DynResult<Self> {
        let r = surface.project_point(self.r)?;
        let v = surface.normalize_tangent(r, self.v)?;
        Ok(BilliardState { r, v })
    }

    pub fn momentum(&self) -> AmbientVector {
        wedge(self.r, self.v)
    }
}

/// Unit-speed geodesic flow in closed form.
pub fn geodesic(surface: &Surface, state: &BilliardState, t: f64) -> BilliardState {
    let (r, v) = (state.r, state.v);
    match surface.curvature {
        Curvature::Sphere => BilliardState {
            r: add(scale(r, t.cos()), scale(v, t.sin())),
            v: add(scale(r, -t.sin()), scale(v, t.cos())),
        },
        Curvature::Hyperbolic => BilliardState {
            r: add(scale(r, t.cosh()), scale(v, t.sinh())),
            v: add(scale(r, t.sinh()), scale(v, t.cosh())),
        },
    }
}

/// Convex table cut out of the surface by a homogeneous cone polynomial;
/// the interior is `{C < 0}` and `anchor` is an interior point used to
/// launch boundary-sampling rays.
#[derive(Debug, Clone)]
pub struct ConeBoundary {
    pub c: MultiPoly,
    pub anchor: AmbientVector,
}

impl ConeBoundary {
    pub fn new(c: MultiPoly, surface: &Surface) -> DynResult<Self> {
        if c.vars() != XYZ {
            return Err(DynError::Degenerate(
                "cone polynomial must live in (x, y, z)".into(),
            ));
        }
        if c.homogeneous_degree().is_none() {
            return Err(DynError::Degenerate(
                "cone polynomial must be homogeneous".into(),
            ));
        }
        let mut candidates = vec![[0.0, 0.0, 1.0]];
        if surface.curvature == Curvature::Sphere {
            candidates.push([0.0, 0.0, -1.0]);
            candidates.push([1.0, 0.0, 0.0]);
            candidates.push([0.0, 1.0, 0.0]);
        }
        let anchor = candidates
            .into_iter()
            .find(|&p| c.eval_f64(&p) < 0.0)
            .ok_or_else(|| {
                DynError::Degenerate(
                    "no interior point found: the cone does not cut a {C < 0} domain \
                     around a coordinate pole"
                        .into(),
                )
            })?;
        Ok(ConeBoundary { c, anchor })
    }

    pub fn value(&self, r: AmbientVector) -> f64 {
        self.c.eval_f64(&r)
    }

    /// Unit normal to the boundary curve inside the tangent plane,
    /// pointing out of the domain.
    pub fn normal(&self, surface: &Surface, r: AmbientVector) -> DynResult<AmbientVector> {
        let g = gradient_at(&self.c, r)?;
        // metric gradient: raise the index with diag(1, 1, K)
        let mg = [g[0], g[1], surface.curvature.k() * g[2]];
        let t = surface.tangent_project(r, mg);
        let n2 = surface.form(t, t);
        if n2 <= 1e-20 {
            return Err(DynError::Degenerate(format!(
                "projected boundary normal vanishes at {r:?}"
            )));
        }
        Ok(scale(t, 1.0 / n2.sqrt()))
    }

    /// Unit tangent to the boundary curve at `r`, oriented by the frame.
    pub fn tangent(&self, surface: &Surface, r: AmbientVector) -> DynResult<AmbientVector> {
        let n = self.normal(surface, r)?;
        let [b1, b2] = surface.tangent_basis(r)?;
        let (c1, c2) = (surface.form(n, b1), surface.form(n, b2));
        Ok(add(scale(b1, -c2), scale(b2, c1)))
    }
}

fn flight_horizon(surface: &Surface) -> f64 {
    match surface.curvature {
        Curvature::Sphere => std::f64::consts::PI,
        Curvature::Hyperbolic => 20.0,
    }
}

/// First boundary crossing along the geodesic from `state`: coarse
/// sign-bracketing on a uniform grid, two refinement rounds, bisection,
/// and a Newton polish to `|C| < 1e-12`.
pub fn next_hit(
    surface: &Surface,
    state: &BilliardState,
    boundary: &ConeBoundary,
) -> DynResult<(f64, BilliardState)> {
    let t_eps = 1e-7;
    let t_max = flight_horizon(surface);
    let f = |t: f64| boundary.value(geodesic(surface, state, t).r);
    let lo = t_eps;
    let hi = t_max;
    let mut f_lo = f(lo);
    if f_lo > 0.0 {
        return Err(DynError::Invariant(format!(
            "start is outside the domain: C = {f_lo:.2e}"
        )));
    }
    let mut bracket = None;
    let steps = 512;
    for i in 1..=steps {
        let t = lo + (hi - lo) * i as f64 / steps as f64;
        let ft = f(t);
        if ft > 0.0 {
            bracket = Some((lo + (hi - lo) * (i - 1) as f64 / steps as f64, t));
            break;
        }
    }
    let (mut a, mut b) = bracket.ok_or(DynError::Escaped(t_max))?;
    for _ in 0..2 {
        let sub_steps = 64;
        let mut refined = (a, b);
        for i in 1..=sub_steps {
            let t = a + (b - a) * i as f64 / sub_steps as f64;
            if f(t) > 0.0 {
                refined = (a + (b - a) * (i - 1) as f64 / sub_steps as f64, t);
                break;
            }
        }
        (a, b) = refined;
    }
    f_lo = f(a);
    let mut f_hi = f(b);
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm <= 0.0 {
            a = mid;
            f_lo = fm;
        } else {
            b = mid;
            f_hi = fm;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    let _ = (f_lo, f_hi);
    let mut t_star = 0.5 * (a + b);
    // Newton polish: dC/dt = grad C . r'(t)
    for _ in 0..8 {
        let s = geodesic(surface, state, t_star);
        let val = boundary.value(s.r);
        if val.abs() < HIT_TOL {
            break;
        }
        let g = gradient_at(&boundary.c, s.r)?;
        let rp = match surface.curvature {
            Curvature::Sphere => s.v,
            Curvature::Hyperbolic => s.v,
        };
        let deriv = g[0] * rp[0] + g[1] * rp[1] + g[2] * rp[2];
        if deriv.abs() < 1e-14 {
            break;
        }
        t_star -= val / deriv;
        t_star = t_star.clamp(a - 1e-9, b + 1e-9);
    }
    let hit_raw = geodesic(surface, state, t_star);
    if boundary.value(hit_raw.r).abs() > 1e-9 {
        return Err(DynError::Degenerate(format!(
            "hit polish stalled at |C| = {:.2e} (near-tangent chord?)",
            boundary.value(hit_raw.r)
        )));
    }
    let hit = hit_raw.renormalize(surface)?;
    Ok((t_star, hit))
}

/// Specular reflection: flip the normal component of the velocity.
pub fn reflect(
    surface: &Surface,
    hit: &BilliardState,
    boundary: &ConeBoundary,
) -> DynResult<BilliardState> {
    let n = boundary.normal(surface, hit.r)?;
    let vn = surface.form(hit.v, n);
    let v = sub(hit.v, scale(n, 2.0 * vn));
    BilliardState {
        r: hit.r,
        v,
    }
    .renormalize(surface)
}

/// Bounce history with momenta and monitored-integral residuals.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub bounces: Vec<BilliardState>,
    pub momenta: Vec<AmbientVector>,
    pub integral_residuals: Vec<f64>,
    /// Worst free-flight momentum drift seen while integrating.
    pub momentum_drift: f64,
}

impl Orbit {
    pub fn max_residual(&self) -> f64 {
        self.integral_residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bounce,r1,r2,r3,v1,v2,v3,M1,M2,M3,psi_residual\n");
        for (i, (state, m)) in self.bounces.iter().zip(&self.momenta).enumerate() {
            let res = self.integral_residuals.get(i).copied().unwrap_or(0.0);
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                i,
                state.r[0],
                state.r[1],
                state.r[2],
                state.v[0],
                state.v[1],
                state.v[2],
                m[0],
                m[1],
                m[2],
                res
            ));
        }
        out
    }
}

/// Iterate the billiard map, recording post-reflection states. When `psi`
/// is given, `integral_residuals[i] = |psi(M_i) - psi(M_0)|`.
pub fn run_orbit(
    surface: &Surface,
    start: &BilliardState,
    boundary: &ConeBoundary,
    bounces: usize,
    psi: Option<&MultiPoly>,
) -> DynResult<Orbit> {
    start.validate(surface)?;
    if boundary.value(start.r) > 1e-9 {
        return Err(DynError::Invariant("start is not inside the domain".into()));
    }
    let mut state = *start;
    let mut orbit = Orbit {
        bounces: vec![],
        momenta: vec![],
        integral_residuals: vec![],
        momentum_drift: 0.0,
    };
    let mut psi0 = None;
    for _ in 0..bounces {
        let m_launch = state.momentum();
        let (_, hit) = next_hit(surface, &state, boundary)?;
        let m_arrive = hit.momentum();
        let drift = sub(m_arrive, m_launch)
            .iter()
            .map(|d| d.abs())
            .fold(0.0f64, f64::max);
        orbit.momentum_drift = orbit.momentum_drift.max(drift);
        state = reflect(surface, &hit, boundary)?;
        state.validate(surface)?;
        let m = state.momentum();
        if let Some(p) = psi {
            let value = p.eval_f64(&m);
            let base = *psi0.get_or_insert(value);
            orbit.integral_residuals.push((value - base).abs());
        } else {
            orbit.integral_residuals.push(0.0);
        }
        orbit.bounces.push(state);
        orbit.momenta.push(m);
    }
    Ok(orbit)
}

/// One sampled boundary point with its Frenet data.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    pub r: AmbientVector,
    pub tangent: AmbientVector,
    pub normal: AmbientVector,
}

/// Sample the boundary curve by casting geodesic rays from the anchor at
/// uniformly spaced tangent-plane angles.
pub fn boundary_samples(
    surface: &Surface,
    boundary: &ConeBoundary,
    n: usize,
) -> DynResult<Vec<BoundarySample>> {
    let anchor = surface.project_point(boundary.anchor)?;
    let [b1, b2] = surface.tangent_basis(anchor)?;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let v = add(scale(b1, theta.cos()), scale(b2, theta.sin()));
        let state = BilliardState { r: anchor, v }.renormalize(surface)?;
        let (_, hit) = next_hit(surface, &state, boundary)?;
        out.push(BoundarySample {
            r: hit.r,
            tangent: boundary.tangent(surface, hit.r)?,
            normal: boundary.normal(surface, hit.r)?,
        });
    }
    Ok(out)
}

fn project_to_curve(
    surface: &Surface,
    boundary: &ConeBoundary,
    mut q: AmbientVector,
) -> DynResult<AmbientVector> {
    for _ in 0..25 {
        q = surface.project_point(q)?;
        let val = boundary.value(q);
        if val.abs() < 1e-13 {
            return Ok(q);
        }
        let n = boundary.normal(surface, q)?;
        let g = gradient_at(&boundary.c, q)?;
        let deriv = g[0] * n[0] + g[1] * n[1] + g[2] * n[2];
        if deriv.abs() < 1e-16 {
            return Err(DynError::Degenerate("flat boundary projection".into()));
        }
        let step = -val / deriv;
        let state = BilliardState { r: q, v: n };
        q = geodesic(surface, &state, step.clamp(-0.5, 0.5)).r;
    }
    Err(DynError::Degenerate("boundary projection stalled".into()))
}

/// Geodesic curvature of the boundary at `r`, by central differences of
/// the unit-speed parametrization with one Richardson extrapolation.
pub fn geodesic_curvature(
    surface: &Surface,
    boundary: &ConeBoundary,
    r: AmbientVector,
) -> DynResult<f64> {
    let r = project_to_curve(surface, boundary, r)?;
    let n = boundary.normal(surface, r)?;
    let t = boundary.tangent(surface, r)?;
    let k_at = |h: f64| -> DynResult<f64> {
        // central difference of the unit tangent along the curve; the
        // second-difference-of-position variant loses too many digits to
        // rounding at this step size
        let step = |s: f64| -> DynResult<AmbientVector> {
            let state = BilliardState { r, v: t };
            let q = project_to_curve(surface, boundary, geodesic(surface, &state, s).r)?;
            let tq = boundary.tangent(surface, q)?;
            // the frame behind `tangent` can flip across chart seams;
            // orient by continuity with the center tangent
            Ok(if surface.form(tq, t) < 0.0 {
                scale(tq, -1.0)
            } else {
                tq
            })
        };
        let plus = step(h)?;
        let minus = step(-h)?;
        let deriv = [
            (plus[0] - minus[0]) / (2.0 * h),
            (plus[1] - minus[1]) / (2.0 * h),
            (plus[2] - minus[2]) / (2.0 * h),
        ];
        // <t'(s), n> = -k with n the outward normal: a convex boundary
        // curves away from the domain
        Ok(-surface.form(deriv, n))
    };
    let h = 1e-5;
    let k1 = k_at(h)?;
    let k2 = k_at(h / 2.0)?;
    Ok((4.0 * k2 - k1) / 3.0)
}

fn eval_ambient(p: &MultiPoly, m: AmbientVector) -> f64 {
    p.eval_f64(&m)
}

/// Tangent-line symmetry of the dual curve: for samples `M` on the dual
/// curve and `w` the paper's tangent vector built from `f_dual`, returns
/// the maximum of `|psi(M - eps w) - psi(M + eps w)|` over samples and
/// epsilons. `psi` must vanish on the samples.
pub fn theorem_pm_check(
    surface: &Surface,
    boundary: &ConeBoundary,
    psi: &MultiPoly,
    f_dual: &MultiPoly,
    epsilons: &[f64],
    samples: usize,
) -> DynResult<f64> {
    let pts = boundary_samples(surface, boundary, samples)?;
    let mut max_dev = 0.0f64;
    for s in &pts {
        let m = dual_point(s.r, s.tangent, surface.curvature)?;
        if eval_ambient(psi, m).abs() > 1e-9 {
            return Err(DynError::Invariant(format!(
                "psi does not vanish on the dual curve: |psi(M)| = {:.2e}",
                eval_ambient(psi, m).abs()
            )));
        }
        let grad = gradient_at(f_dual, m)?;
        if grad.iter().map(|g| g.abs()).sum::<f64>() < 1e-12 {
            return Err(DynError::Degenerate(
                "singular dual point: gradient vanishes".into(),
            ));
        }
        let w = tangent_w(grad, m, surface.curvature);
        for &eps in epsilons {
            let plus = add(m, scale(w, eps));
            let minus = sub(m, scale(w, eps));
            let dev = (eval_ambient(psi, minus) - eval_ambient(psi, plus)).abs();
            max_dev = max_dev.max(dev);
        }
    }
    Ok(max_dev)
}

/// Midpoint property of the outer (dual) billiard: `P± = r ^ (v ± eps k n)`
/// average back to `M` exactly, and the radial projections `M±` onto the
/// dual surface are equidistant from `M` in the bilinear-increment sense.
pub fn midpoint_remark_check(
    surface: &Surface,
    boundary: &ConeBoundary,
    samples: usize,
    eps: f64,
) -> DynResult<f64> {
    let pts = boundary_samples(surface, boundary, samples)?;
    let mut worst = 0.0f64;
    for s in &pts {
        let k = geodesic_curvature(surface, boundary, s.r)?;
        if k.abs() < 1e-8 {
            return Err(DynError::Degenerate(
                "geodesic boundary arc: k = 0 within tolerance".into(),
            ));
        }
        let m = wedge(s.r, s.tangent);
        let p_plus = wedge(s.r, add(s.tangent, scale(s.normal, eps * k)));
        let p_minus = wedge(s.r, sub(s.tangent, scale(s.normal, eps * k)));
        let sum_residual = sub(add(p_plus, p_minus), scale(m, 2.0))
            .iter()
            .map(|d| d.abs())
            .fold(0.0f64, f64::max);
        if sum_residual > 1e-12 {
            return Err(DynError::Invariant(format!(
                "P- + P+ = 2M violated: {sum_residual:.2e}"
            )));
        }
        let project = |p: AmbientVector| -> DynResult<AmbientVector> {
            let q = surface.form(p, p);
            if q <= 0.0 {
                return Err(DynError::Degenerate(
                    "momentum projects outside the dual surface".into(),
                ));
            }
            Ok(scale(p, 1.0 / q.sqrt()))
        };
        let m_plus = project(p_plus)?;
        let m_minus = project(p_minus)?;
        let mid = project(add(p_plus, p_minus))?;
        let mid_residual = sub(mid, m)
            .iter()
            .map(|d| d.abs())
            .fold(0.0f64, f64::max);
        let increments =
            (surface.form(m_minus, m) - surface.form(m, m_plus)).abs();
        worst = worst.max(mid_residual).max(increments);
    }
    Ok(worst)
}

fn monomials_of_degree(d: u32) -> Vec<[u32; 3]> {
    let mut out = vec![];
    for i in 0..=d {
        for j in 0..=(d - i) {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn jacobi_smallest_eigenvector(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut best = 0;
    for i in 1..n {
        if a[i][i] < a[best][best] {
            best = i;
        }
    }
    v.iter().map(|row| row[best]).collect()
}

/// Best-fit homogeneous form of the given degree vanishing on the sample
/// points, as the unit-norm least-squares minimizer.
pub fn fit_form(samples: &[AmbientVector], degree: u32) -> DynResult<MultiPoly> {
    let monos = monomials_of_degree(degree);
    let dim = monos.len();
    if samples.len() < dim {
        return Err(DynError::Degenerate(format!(
            "need at least {dim} samples to fit a degree-{degree} form"
        )));
    }
    let mut gram = vec![vec![0.0; dim]; dim];
    for m in samples {
        let row: Vec<f64> = monos
            .iter()
            .map(|[i, j, k]| m[0].powi(*i as i32) * m[1].powi(*j as i32) * m[2].powi(*k as i32))
            .collect();
        for (i, ri) in row.iter().enumerate() {
            for (j, rj) in row.iter().enumerate() {
                gram[i][j] += ri * rj;
            }
        }
    }
    let coeffs = jacobi_smallest_eigenvector(gram);
    let mut poly = MultiPoly::zero(XYZ);
    for ([i, j, k], c) in monos.into_iter().zip(coeffs) {
        if c.abs() < 1e-300 {
            continue;
        }
        let term = MultiPoly::from_terms(
            XYZ,
            [(
                vec![i, j, k],
                BigRational::from_float(c).ok_or_else(|| {
                    DynError::Degenerate("non-finite fit coefficient".into())
                })?,
            )],
        );
        poly = poly.add(&term)?;
    }
    Ok(poly)
}

/// Quadratic form minus its trace part: the component orthogonal to
/// `x^2 + y^2 + z^2`, which sample points on the unit sphere cannot see.
pub fn traceless_quadratic(q: &MultiPoly) -> PolyResult<MultiPoly> {
    let trace = q.coeff(&[2, 0, 0]) + q.coeff(&[0, 2, 0]) + q.coeff(&[0, 0, 2]);
    let third = trace / BigRational::from_integer(3.into());
    let sphere = crate::poly::parse_poly("x^2 + y^2 + z^2", XYZ).expect("fixed text");
    q.sub(&sphere.scale(&third))
}

/// Relative distance between two forms after scale alignment: both are
/// normalized to unit coefficient norm and compared up to overall sign.
pub fn relative_form_distance(a: &MultiPoly, b: &MultiPoly) -> f64 {
    let norm = |p: &MultiPoly| -> f64 {
        p.terms()
            .map(|(_, c)| {
                let v = crate::poly::rational_to_f64(c);
                v * v
            })
            .sum::<f64>()
            .sqrt()
    };
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let dist = |sign: f64| -> f64 {
        let mut keys: Vec<Vec<u32>> = a.terms().map(|(e, _)| e.clone()).collect();
        for (e, _) in b.terms() {
            if !keys.contains(e) {
                keys.push(e.clone());
            }
        }
        keys.iter()
            .map(|e| {
                let ca = crate::poly::rational_to_f64(&a.coeff(e)) / na;
                let cb = sign * crate::poly::rational_to_f64(&b.coeff(e)) / nb;
                (ca - cb) * (ca - cb)
            })
            .sum::<f64>()
            .sqrt()
    };
    dist(1.0).min(dist(-1.0))
}

/// Spherical cap of colatitude `theta0` as a cone boundary.
pub fn cap_boundary(theta0: f64) -> DynResult<ConeBoundary> {
    let t2 = theta0.tan().powi(2);
    let c = cone_from_diagonal(1.0, 1.0, -t2)?;
    ConeBoundary::new(c, &Surface::new(Curvature::Sphere))
}

/// Diagonal cone `a x^2 + b y^2 + c z^2` with f64 coefficients.
pub fn cone_from_diagonal(a: f64, b: f64, c: f64) -> DynResult<MultiPoly> {
    let conv = |v: f64| {
        BigRational::from_float(v)
            .ok_or_else(|| DynError::Degenerate("non-finite cone coefficient".into()))
    };
    let x2 = MultiPoly::var(XYZ, Var::X)?.pow(2);
    let y2 = MultiPoly::var(XYZ, Var::Y)?.pow(2);
    let z2 = MultiPoly::var(XYZ, Var::Z)?.pow(2);
    Ok(x2
        .scale(&conv(a)?)
        .add(&y2.scale(&conv(b)?))?
        .add(&z2.scale(&conv(c)?))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use std::f64::consts::PI;

    const SPHERE: Surface = Surface {
        curvature: Curvature::Sphere,
    };
    const HYPER: Surface = Surface {
        curvature: Curvature::Hyperbolic,
    };

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn geodesic_great_circle() {
        let s = BilliardState::new(&SPHERE, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).unwrap();
        let out = geodesic(&SPHERE, &s, PI / 2.0);
        close(out.r[0], 0.0, 1e-12);
        close(out.r[1], 1.0, 1e-12);
        out.validate(&SPHERE).unwrap();
    }

    #[test]
    fn geodesic_hyperbolic() {
        let s = BilliardState::new(&HYPER, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).unwrap();
        let t = 0.8;
        let out = geodesic(&HYPER, &s, t);
        close(out.r[0], t.sinh(), 1e-12);
        close(out.r[2], t.cosh(), 1e-12);
        out.validate(&HYPER).unwrap();
    }

    #[test]
    fn geodesic_identity_at_zero() {
        let s = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let out = geodesic(&SPHERE, &s, 0.0);
        assert_eq!(out.r, s.r);
        assert_eq!(out.v, s.v);
    }

    #[test]
    fn cap_hit_at_colatitude() {
        let theta0 = 0.6;
        let boundary = cap_boundary(theta0).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let (t, hit) = next_hit(&SPHERE, &start, &boundary).unwrap();
        close(t, theta0, 1e-10);
        close(hit.r[2], theta0.cos(), 1e-10);
    }

    #[test]
    fn hyperbolic_circle_hit() {
        // euclidean slice radius rho_e: crossing at t = arcsinh(rho_e)
        let rho_e: f64 = 0.7;
        let coeff = rho_e * rho_e / (1.0 + rho_e * rho_e);
        let c = cone_from_diagonal(1.0, 1.0, -coeff).unwrap();
        let boundary = ConeBoundary::new(c, &HYPER).unwrap();
        let start = BilliardState::new(&HYPER, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).unwrap();
        let (t, _) = next_hit(&HYPER, &start, &boundary).unwrap();
        close(t, rho_e.asinh(), 1e-10);
    }

    #[test]
    fn reflect_is_involution() {
        let boundary = cap_boundary(0.7).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.28, 0.96, 0.0]).unwrap();
        let (_, hit) = next_hit(&SPHERE, &start, &boundary).unwrap();
        let once = reflect(&SPHERE, &hit, &boundary).unwrap();
        let twice = reflect(&SPHERE, &once, &boundary).unwrap();
        for i in 0..3 {
            close(twice.v[i], hit.v[i], 1e-12);
        }
    }

    #[test]
    fn reflect_normal_incidence() {
        let boundary = cap_boundary(0.7).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).unwrap();
        let (_, hit) = next_hit(&SPHERE, &start, &boundary).unwrap();
        let n = boundary.normal(&SPHERE, hit.r).unwrap();
        // radial launch arrives along the normal
        close(SPHERE.form(hit.v, n).abs(), 1.0, 1e-10);
        let out = reflect(&SPHERE, &hit, &boundary).unwrap();
        for i in 0..3 {
            close(out.v[i], -hit.v[i], 1e-10);
        }
    }

    #[test]
    fn cap_conserves_m3() {
        let boundary = cap_boundary(0.8).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let psi = parse_poly("z", XYZ).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 1000, Some(&psi)).unwrap();
        assert!(orbit.max_residual() < 1e-10, "{}", orbit.max_residual());
        assert!(orbit.momentum_drift < 1e-10);
    }

    #[test]
    fn conic_table_conserves_dual_form() {
        let c = cone_from_diagonal(1.0, 2.0, -3.0).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let psi = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 300, Some(&psi)).unwrap();
        assert!(orbit.max_residual() < 1e-9, "{}", orbit.max_residual());
    }

    #[test]
    fn nonconic_table_breaks_quadratic_form() {
        // quartic cone: no quadratic integral expected
        let c = parse_poly("x^4 + 2*y^4 - 3*z^4", XYZ).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let psi = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 1000, Some(&psi)).unwrap();
        assert!(orbit.max_residual() > 1e-3, "{}", orbit.max_residual());
    }

    #[test]
    fn geodesic_curvature_cap() {
        let boundary = cap_boundary(PI / 4.0).unwrap();
        let p = [(PI / 4.0).sin(), 0.0, (PI / 4.0).cos()];
        let k = geodesic_curvature(&SPHERE, &boundary, p).unwrap();
        close(k, 1.0, 1e-6);
    }

    #[test]
    fn geodesic_curvature_near_great_circle() {
        let theta0 = PI / 2.0 - 1e-4;
        let boundary = cap_boundary(theta0).unwrap();
        let p = [theta0.sin(), 0.0, theta0.cos()];
        let k = geodesic_curvature(&SPHERE, &boundary, p).unwrap();
        close(k, theta0.tan().recip(), 1e-6);
    }

    #[test]
    fn geodesic_curvature_hyperbolic_circle() {
        // geodesic radius 1: euclidean slice radius sinh(1), k = coth(1)
        let rho_e = 1.0f64.sinh();
        let coeff = rho_e * rho_e / (1.0 + rho_e * rho_e);
        let c = cone_from_diagonal(1.0, 1.0, -coeff).unwrap();
        let boundary = ConeBoundary::new(c, &HYPER).unwrap();
        let p = [rho_e, 0.0, (1.0 + rho_e * rho_e).sqrt()];
        let k = geodesic_curvature(&HYPER, &boundary, p).unwrap();
        close(k, 1.0 / 1.0f64.tanh(), 1e-6);
    }

    #[test]
    fn momenta_on_dual_surface() {
        for (surface, cone) in [
            (SPHERE, cone_from_diagonal(1.0, 2.0, -3.0).unwrap()),
            (HYPER, cone_from_diagonal(1.0, 1.0, -0.3).unwrap()),
        ] {
            let boundary = ConeBoundary::new(cone, &surface).unwrap();
            let start =
                BilliardState::new(&surface, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
            let orbit = run_orbit(&surface, &start, &boundary, 50, None).unwrap();
            for m in &orbit.momenta {
                close(surface.form(*m, *m), 1.0, 1e-10);
            }
        }
    }

    #[test]
    fn pm_check_conic_table() {
        let c = cone_from_diagonal(1.0, 2.0, -3.0).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let psi = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ).unwrap();
        let dev =
            theorem_pm_check(&SPHERE, &boundary, &psi, &psi, &[0.1, 0.01], 50).unwrap();
        assert!(dev < 1e-10, "{dev}");
    }

    #[test]
    fn pm_check_zero_epsilon() {
        let c = cone_from_diagonal(1.0, 2.0, -3.0).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let psi = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ).unwrap();
        let dev = theorem_pm_check(&SPHERE, &boundary, &psi, &psi, &[0.0], 20).unwrap();
        assert_eq!(dev, 0.0);
    }

    #[test]
    fn midpoint_remark_sphere_and_hyperbolic() {
        let cap = cap_boundary(0.8).unwrap();
        let res = midpoint_remark_check(&SPHERE, &cap, 40, 1e-3).unwrap();
        assert!(res < 1e-9, "{res}");

        let rho_e = 0.9f64;
        let coeff = rho_e * rho_e / (1.0 + rho_e * rho_e);
        let c = cone_from_diagonal(1.0, 1.0, -coeff).unwrap();
        let boundary = ConeBoundary::new(c, &HYPER).unwrap();
        let res = midpoint_remark_check(&HYPER, &boundary, 40, 1e-3).unwrap();
        assert!(res < 1e-9, "{res}");
    }

    #[test]
    fn fit_recovers_dual_conic() {
        let c = cone_from_diagonal(1.0, 2.0, -3.0).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 200, None).unwrap();
        let fitted = fit_form(&orbit.momenta, 2).unwrap();
        let expect = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ).unwrap();
        let d = relative_form_distance(
            &traceless_quadratic(&fitted).unwrap(),
            &traceless_quadratic(&expect).unwrap(),
        );
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn time_reversal() {
        let c = cone_from_diagonal(1.0, 2.0, -3.0).unwrap();
        let boundary = ConeBoundary::new(c, &SPHERE).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 100, None).unwrap();
        let last = orbit.bounces.last().unwrap();
        // reversing the motion means negating the incoming velocity,
        // i.e. reflecting the negated outgoing one
        let back_start = reflect(
            &SPHERE,
            &BilliardState {
                r: last.r,
                v: scale(last.v, -1.0),
            },
            &boundary,
        )
        .unwrap();
        let back = run_orbit(&SPHERE, &back_start, &boundary, 99, None).unwrap();
        for (i, b) in back.bounces.iter().enumerate() {
            let fwd = &orbit.bounces[orbit.bounces.len() - 2 - i];
            for j in 0..3 {
                assert!((b.r[j] - fwd.r[j]).abs() < 1e-7, "bounce {i}");
            }
        }
    }

    #[test]
    fn escaped_trajectory_reported() {
        // positive-definite cone: empty real boundary on the sphere
        let c = cone_from_diagonal(1.0, 2.0, 3.0).unwrap();
        assert!(matches!(
            ConeBoundary::new(c, &SPHERE),
            Err(DynError::Degenerate(_))
        ));
    }

    #[test]
    fn csv_header_and_shape() {
        let boundary = cap_boundary(0.8).unwrap();
        let start = BilliardState::new(&SPHERE, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]).unwrap();
        let psi = parse_poly("z", XYZ).unwrap();
        let orbit = run_orbit(&SPHERE, &start, &boundary, 5, Some(&psi)).unwrap();
        let csv = orbit.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "bounce,r1,r2,r3,v1,v2,v3,M1,M2,M3,psi_residual"
        );
        assert_eq!(lines.count(), 5);
    }
}

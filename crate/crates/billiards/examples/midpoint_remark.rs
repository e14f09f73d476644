//! Outer-billiard midpoint property: the momenta P± of the two
//! curvature-shifted tangent vectors average back to M exactly, and
//! their radial projections onto the dual surface are equidistant
//! from M.

use birkhoff_billiards::dynamics::{
    cap_boundary, cone_from_diagonal, geodesic_curvature, midpoint_remark_check, ConeBoundary,
    Surface,
};
use birkhoff_billiards::Curvature;
use std::f64::consts::PI;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sphere = Surface::new(Curvature::Sphere);
    let cap = cap_boundary(PI / 4.0)?;
    let p = [(PI / 4.0).sin(), 0.0, (PI / 4.0).cos()];
    println!(
        "cap at colatitude pi/4: geodesic curvature {:.9} (exact: cot(pi/4) = 1)",
        geodesic_curvature(&sphere, &cap, p)?
    );
    let res = midpoint_remark_check(&sphere, &cap, 100, 1e-3)?;
    println!("  midpoint surrogate residual: {res:.3e}");

    let hyper = Surface::new(Curvature::Hyperbolic);
    let rho_e = 1.0f64.sinh(); // geodesic radius 1
    let coeff = rho_e * rho_e / (1.0 + rho_e * rho_e);
    let circle = ConeBoundary::new(cone_from_diagonal(1.0, 1.0, -coeff)?, &hyper)?;
    let q = [rho_e, 0.0, (1.0 + rho_e * rho_e).sqrt()];
    println!(
        "\nhyperbolic circle of geodesic radius 1: curvature {:.9} (exact: coth(1) = {:.9})",
        geodesic_curvature(&hyper, &circle, q)?,
        1.0 / 1.0f64.tanh()
    );
    let res = midpoint_remark_check(&hyper, &circle, 100, 1e-3)?;
    println!("  midpoint surrogate residual on de Sitter: {res:.3e}");
    Ok(())
}

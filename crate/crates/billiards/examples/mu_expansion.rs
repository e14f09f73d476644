//! The mu-expansion of the dual-curve identity: parity of the
//! coefficients, the exact first-order coefficient -2pCg, and the cubic
//! coefficient reduced against the third-order target expression.

use birkhoff_billiards::expansion::{expected_mu1, mu3_extract, AffineCurveData};
use birkhoff_billiards::poly::{parse_poly, XY};
use birkhoff_billiards::Curvature;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // generic curve, formal p
    let g = parse_poly("x^2 + 3*x*y - y^3 + 1", XY)?;
    let data = AffineCurveData::formal(g, Curvature::Sphere)?;
    let report = mu3_extract(&data)?;
    println!("g = x^2 + 3*x*y - y^3 + 1 (formal p)");
    println!(
        "  mu1 matches -2pCg: {}",
        report.detail.mu1_coeff == expected_mu1(&data)?
    );
    println!("  even coefficients vanish: {}", report.detail.even_coeffs_zero);
    println!(
        "  proportionality lambda: {}",
        report.proportionality.as_deref().unwrap_or("none")
    );

    // the integrable circle at p = 2, both curvature branches
    for curvature in [Curvature::Sphere, Curvature::Hyperbolic] {
        let g = parse_poly("x^2 + y^2 - 1/4", XY)?;
        let data = AffineCurveData::with_p(g, curvature, BigRational::from_integer(2.into()))?;
        let report = mu3_extract(&data)?;
        println!("\ncircle x^2 + y^2 - 1/4 at p = 2, {curvature:?}:");
        println!("  terms expression: {}", report.terms_expr);
        println!("  mu3 residual mod g: {}", report.residual_mod_g);
    }
    Ok(())
}

//! Hessian intersection of the Fermat cubic: nine inflection points
//! counted with multiplicity, three of them real, none on the absolute.

use birkhoff_billiards::obstruction::{hessian3, inflection_points};
use birkhoff_billiards::poly::{parse_poly, XYZ};
use birkhoff_billiards::Curvature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^3 + y^3 + z^3", XYZ)?;
    println!("Hess F = {}", hessian3(&f)?);
    let points = inflection_points(&f)?;
    let total: usize = points.iter().map(|p| p.multiplicity).sum();
    println!("inflections (with multiplicity): {total}");
    for p in &points {
        println!(
            "  {} point {:?}  mult {}  residual {:.1e}  absolute residual {:.3}",
            if p.point.is_real(1e-7) { "real   " } else { "complex" },
            p.point.coords,
            p.multiplicity,
            p.residual,
            p.point.absolute_residual(Curvature::Sphere),
        );
    }
    Ok(())
}

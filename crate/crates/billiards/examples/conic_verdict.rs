//! Verdicts for a few dual curves: a conic passes by degree, a smooth
//! cubic fails through its off-absolute inflections, and a cuspidal cubic
//! fails through its singular point.

use birkhoff_billiards::obstruction::{theorem_main_verdict, ObstructionProblem};
use birkhoff_billiards::poly::{parse_poly, MultiPoly, XYZ};
use birkhoff_billiards::Curvature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (text, k) in [
        ("6*x^2 + 3*y^2 + 2*z^2", 1u32),
        ("x^3 + y^3 + z^3", 2),
        ("y^2*z - x^3", 2),
    ] {
        let f = parse_poly(text, XYZ)?;
        let problem = ObstructionProblem::new(f, MultiPoly::one(XYZ), k, Curvature::Sphere)?;
        let report = theorem_main_verdict(&problem)?;
        println!("F = {text}");
        println!("  verdict: {}", report.verdict);
        println!(
            "  singular: {}, inflections: {}",
            report.singular.len(),
            report.inflections.len()
        );
        if let Some(p) = &report.offending_point {
            println!(
                "  witness off the absolute: {:?} (residual {:.2e})",
                p.coords,
                p.absolute_residual(Curvature::Sphere)
            );
        }
        println!();
    }
    Ok(())
}

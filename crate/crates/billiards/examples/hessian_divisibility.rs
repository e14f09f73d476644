//! The divisibility identity `Q^3 (Hess F)^k - c (x^2+y^2+z^2)^alpha = F R`:
//! solvable with an exact scalar for dual conics, unsolvable for the
//! Fermat cubic.

use birkhoff_billiards::obstruction::{hess_divisibility, ObstructionProblem};
use birkhoff_billiards::poly::{parse_poly, MultiPoly, XYZ};
use birkhoff_billiards::Curvature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (text, k) in [
        ("6*x^2 + 3*y^2 + 2*z^2", 1u32),
        ("x^2 + 2*y^2 + 3*z^2", 1),
        ("x^3 + y^3 + z^3", 2),
    ] {
        let f = parse_poly(text, XYZ)?;
        let problem = ObstructionProblem::new(f, MultiPoly::one(XYZ), k, Curvature::Sphere)?;
        let hd = hess_divisibility(&problem)?;
        println!("F = {text}, k = {k}, alpha = {}", hd.alpha);
        match &hd.c {
            Some(c) => println!(
                "  c = {c}, R = {}",
                hd.cofactor.as_ref().map(|r| r.to_string()).unwrap_or_default()
            ),
            None => println!(
                "  no scalar c exists ({} residual terms after reduction)",
                hd.residual.num_terms()
            ),
        }
        println!();
    }
    Ok(())
}

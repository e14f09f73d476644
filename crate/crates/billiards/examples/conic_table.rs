//! Billiard inside a conic table on the sphere: the dual-conic quadratic
//! form of the momentum is conserved, and a blind least-squares fit over
//! one orbit recovers it.

use birkhoff_billiards::dynamics::{
    cone_from_diagonal, fit_form, relative_form_distance, run_orbit, traceless_quadratic,
    BilliardState, ConeBoundary, Surface,
};
use birkhoff_billiards::poly::{parse_poly, XYZ};
use birkhoff_billiards::Curvature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let surface = Surface::new(Curvature::Sphere);
    let cone = cone_from_diagonal(1.0, 2.0, -3.0)?;
    let boundary = ConeBoundary::new(cone, &surface)?;
    let start = BilliardState::new(&surface, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0])?;
    let psi = parse_poly("-6*x^2 - 3*y^2 + 2*z^2", XYZ)?;

    let orbit = run_orbit(&surface, &start, &boundary, 1000, Some(&psi))?;
    println!("table cone: x^2 + 2*y^2 - 3*z^2");
    println!("monitored dual form: {psi}");
    println!("max residual over 1000 bounces: {:.3e}", orbit.max_residual());

    let fitted = fit_form(&orbit.momenta, 2)?;
    let dist = relative_form_distance(
        &traceless_quadratic(&fitted)?,
        &traceless_quadratic(&psi)?,
    );
    println!("\nblind quadratic fit over the orbit momenta:");
    println!("  {fitted}");
    println!("  traceless distance to the dual conic: {dist:.3e}");
    Ok(())
}

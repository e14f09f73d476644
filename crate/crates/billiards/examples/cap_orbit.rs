//! Billiard in a spherical cap: the third momentum component is
//! conserved to rounding over thousands of bounces.

use birkhoff_billiards::dynamics::{cap_boundary, run_orbit, BilliardState, Surface};
use birkhoff_billiards::poly::{parse_poly, XYZ};
use birkhoff_billiards::Curvature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let surface = Surface::new(Curvature::Sphere);
    let boundary = cap_boundary(0.8)?;
    let start = BilliardState::new(&surface, [0.0, 0.0, 1.0], [0.6, 0.8, 0.0])?;
    let psi = parse_poly("z", XYZ)?;
    let orbit = run_orbit(&surface, &start, &boundary, 5000, Some(&psi))?;
    println!("bounces: {}", orbit.bounces.len());
    println!("max |M3 - M3(0)|: {:.3e}", orbit.max_residual());
    println!("free-flight momentum drift: {:.3e}", orbit.momentum_drift);
    let m = orbit.momenta[0];
    println!("M(0) = [{:.6}, {:.6}, {:.6}]", m[0], m[1], m[2]);
    Ok(())
}

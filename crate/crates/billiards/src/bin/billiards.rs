//! Batch front end: curve verdicts, identity suites, and orbit runs with
//! stable JSON/CSV output.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use birkhoff_billiards::dynamics::{
    run_orbit, BilliardState, ConeBoundary, DynError, Surface,
};
use birkhoff_billiards::expansion::{
    conservation_chain_check, cube_identity_check, expected_mu1, lie_u, mu3_extract,
    third_order_identity_check, AffineCurveData,
};
use birkhoff_billiards::obstruction::{
    hf_identity_check, theorem_main_verdict, ObstructionProblem,
};
use birkhoff_billiards::poly::{parse_poly, MultiPoly, PolyError, Var, XY, XYZ};
use birkhoff_billiards::projgeom::{add, scale};
use birkhoff_billiards::Curvature;

#[derive(Parser)]
#[command(name = "billiards", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurvatureArg {
    Sphere,
    Hyperbolic,
}

impl From<CurvatureArg> for Curvature {
    fn from(c: CurvatureArg) -> Curvature {
        match c {
            CurvatureArg::Sphere => Curvature::Sphere,
            CurvatureArg::Hyperbolic => Curvature::Hyperbolic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Cube,
    Hf,
    Lieu,
    Third,
    Mu3,
    Chain,
}

#[derive(Subcommand)]
enum Command {
    /// Verdict for a dual curve F (with optional cofactor Q and power k).
    Check {
        #[arg(long = "F")]
        f: String,
        #[arg(long = "Q")]
        q: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value = "sphere")]
        curvature: CurvatureArg,
    },
    /// Run one of the exact identity suites on random inputs.
    Verify {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 50)]
        cases: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit curve for the mu3 / chain selectors.
        #[arg(long)]
        g: Option<String>,
        /// Homogeneity degree p for the mu3 / chain selectors.
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Billiard orbit inside a cone-cut table, exported as CSV.
    Simulate {
        #[arg(long)]
        cone: String,
        #[arg(long, value_enum, default_value = "sphere")]
        curvature: CurvatureArg,
        #[arg(long, default_value_t = 100)]
        bounces: usize,
        #[arg(long)]
        psi: Option<String>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_DEGENERATE: u8 = 2;
const EXIT_THEOREM_FAIL: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

fn parse_or_usage(src: &str, vars: &[Var]) -> Result<MultiPoly, u8> {
    parse_poly(src, vars).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn cmd_check(f: &str, q: Option<&str>, k: u32, curvature: Curvature) -> u8 {
    let f = match parse_or_usage(f, XYZ) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let q = match q {
        Some(text) => match parse_or_usage(text, XYZ) {
            Ok(p) => p,
            Err(code) => return code,
        },
        None => MultiPoly::one(XYZ),
    };
    let problem = match ObstructionProblem::new(f, q, k, curvature) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DEGENERATE;
        }
    };
    match theorem_main_verdict(&problem) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            if report.verdict.passes() {
                0
            } else {
                EXIT_THEOREM_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_DEGENERATE
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], max_degree: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(vars);
    for _ in 0..terms {
        let mut exps = vec![0u32; vars.len()];
        let mut budget = max_degree;
        for e in exps.iter_mut() {
            let d = rng.gen_range(0..=budget);
            *e = d;
            budget -= d;
        }
        let c: i64 = rng.gen_range(-9..=9);
        if c == 0 {
            continue;
        }
        let term = MultiPoly::from_terms(vars, [(exps, BigRational::from_integer(c.into()))]);
        p = p.add(&term).expect("same ring");
    }
    p
}

fn random_homogeneous(rng: &mut ChaCha8Rng, degree: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(XYZ);
    for _ in 0..terms {
        let i = rng.gen_range(0..=degree);
        let j = rng.gen_range(0..=(degree - i));
        let c: i64 = rng.gen_range(-9..=9);
        if c == 0 {
            continue;
        }
        let term = MultiPoly::from_terms(
            XYZ,
            [(vec![i, j, degree - i - j], BigRational::from_integer(c.into()))],
        );
        p = p.add(&term).expect("same ring");
    }
    p
}

fn parse_rational(src: &str) -> Result<BigRational, u8> {
    let parts: Vec<&str> = src.split('/').collect();
    let bad = || {
        eprintln!("error: cannot parse rational {src:?}");
        EXIT_USAGE
    };
    match parts.as_slice() {
        [n] => n
            .trim()
            .parse::<i64>()
            .map(|v| BigRational::from_integer(v.into()))
            .map_err(|_| bad()),
        [n, d] => {
            let n = n.trim().parse::<i64>().map_err(|_| bad())?;
            let d = d.trim().parse::<i64>().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(BigRational::new(n.into(), d.into()))
        }
        _ => Err(bad()),
    }
}

fn cmd_verify(which: Which, cases: u32, seed: u64, g: Option<&str>, p: &str) -> u8 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u32;
    let run = |ok: Result<bool, PolyError>, label: &str, failures: &mut u32| match ok {
        Ok(true) => println!("{label}: ok"),
        Ok(false) => {
            println!("{label}: FAILED");
            *failures += 1;
        }
        Err(e) => {
            println!("{label}: error: {e}");
            *failures += 1;
        }
    };
    match which {
        Which::Cube => {
            for i in 0..cases {
                let f = random_poly(&mut rng, XY, 3, 5);
                let r = random_poly(&mut rng, XY, 3, 5);
                if f.is_zero() {
                    println!("case {i}: skipped (zero f)");
                    continue;
                }
                run(cube_identity_check(&f, &r), &format!("case {i}"), &mut failures);
            }
        }
        Which::Hf => {
            for i in 0..cases {
                let d = rng.gen_range(2..=4);
                let f = random_homogeneous(&mut rng, d, 6);
                if f.homogeneous_degree().is_none() {
                    println!("case {i}: skipped (degenerate sample)");
                    continue;
                }
                run(hf_identity_check(&f), &format!("case {i}"), &mut failures);
            }
        }
        Which::Lieu => {
            for i in 0..cases {
                let g = random_poly(&mut rng, XY, 5, 6);
                let m = parse_poly("x^2 + y^2 + 1", XY).expect("fixed text");
                let check = (|| {
                    let lhs = lie_u(&m, &g)?;
                    let c = parse_poly("x", XY)?
                        .mul(&g.diff(Var::Y)?)?
                        .sub(&parse_poly("y", XY)?.mul(&g.diff(Var::X)?)?)?;
                    Ok::<bool, PolyError>(lhs == c.scale(&BigRational::from_integer(2.into())))
                })();
                run(check, &format!("case {i}"), &mut failures);
            }
        }
        Which::Third => {
            for i in 0..cases {
                let g = random_poly(&mut rng, XY, 5, 6);
                run(
                    third_order_identity_check(&g),
                    &format!("case {i}"),
                    &mut failures,
                );
            }
        }
        Which::Mu3 => {
            let g_text = g.unwrap_or("x^2 + y^2 - 1/4");
            let g = match parse_or_usage(g_text, XY) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let p_val = match parse_rational(p) {
                Ok(v) => v,
                Err(code) => return code,
            };
            for curvature in [Curvature::Sphere, Curvature::Hyperbolic] {
                let data = match AffineCurveData::with_p(g.clone(), curvature, p_val.clone()) {
                    Ok(d) => d,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_DEGENERATE;
                    }
                };
                let check = (|| {
                    let report = mu3_extract(&data)?;
                    println!(
                        "{curvature:?}: lambda = {}, residual = {}",
                        report.proportionality.as_deref().unwrap_or("none"),
                        report.residual_mod_g
                    );
                    let ok = report.detail.even_coeffs_zero
                        && report.detail.mu1_coeff == expected_mu1(&data)?;
                    Ok::<bool, PolyError>(ok)
                })();
                run(check, &format!("{curvature:?}"), &mut failures);
            }
        }
        Which::Chain => {
            let p_val = match parse_rational(p) {
                Ok(v) => v,
                Err(code) => return code,
            };
            for i in 0..cases {
                let g = match g {
                    Some(text) => match parse_or_usage(text, XY) {
                        Ok(p) => p,
                        Err(code) => return code,
                    },
                    None => random_poly(&mut rng, XY, 3, 5),
                };
                if g.is_zero() {
                    println!("case {i}: skipped (zero g)");
                    continue;
                }
                for curvature in [Curvature::Sphere, Curvature::Hyperbolic] {
                    let data = AffineCurveData::with_p(g.clone(), curvature, p_val.clone())
                        .expect("nonzero g");
                    run(
                        conservation_chain_check(&data),
                        &format!("case {i} {curvature:?}"),
                        &mut failures,
                    );
                }
                if g.num_terms() > 0 && matches!(which, Which::Chain) && cases == 1 {
                    break;
                }
            }
        }
    }
    if failures == 0 {
        println!("all cases passed");
        0
    } else {
        println!("{failures} case(s) failed");
        EXIT_THEOREM_FAIL
    }
}

fn cmd_simulate(
    cone: &str,
    curvature: Curvature,
    bounces: usize,
    psi: Option<&str>,
    out: Option<&std::path::Path>,
    seed: u64,
) -> u8 {
    if bounces == 0 {
        eprintln!("error: bounces must be at least 1");
        return EXIT_USAGE;
    }
    let cone = match parse_or_usage(cone, XYZ) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let psi = match psi {
        Some(text) => match parse_or_usage(text, XYZ) {
            Ok(p) => Some(p),
            Err(code) => return code,
        },
        None => None,
    };
    let surface = Surface::new(curvature);
    let result = (|| -> Result<_, DynError> {
        let boundary = ConeBoundary::new(cone, &surface)?;
        let anchor = surface.project_point(boundary.anchor)?;
        let [b1, b2] = surface.tangent_basis(anchor)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let v = add(scale(b1, theta.cos()), scale(b2, theta.sin()));
        let start = BilliardState { r: anchor, v }.renormalize(&surface)?;
        run_orbit(&surface, &start, &boundary, bounces, psi.as_ref())
    })();
    match result {
        Ok(orbit) => {
            let csv = orbit.to_csv();
            if let Some(path) = out {
                if let Err(e) = std::fs::write(path, &csv) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_NUMERIC;
                }
            } else {
                print!("{csv}");
            }
            if psi.is_some() {
                println!("max psi residual: {:.3e}", orbit.max_residual());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let code = match cli.command {
        Command::Check { f, q, k, curvature } => {
            cmd_check(&f, q.as_deref(), k, curvature.into())
        }
        Command::Verify {
            which,
            cases,
            seed,
            g,
            p,
        } => cmd_verify(which, cases, seed, g.as_deref(), &p),
        Command::Simulate {
            cone,
            curvature,
            bounces,
            psi,
            out,
            seed,
        } => cmd_simulate(
            &cone,
            curvature.into(),
            bounces,
            psi.as_deref(),
            out.as_deref(),
            seed,
        ),
    };
    ExitCode::from(code)
}

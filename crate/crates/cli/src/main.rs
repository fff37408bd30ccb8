//! Command-line front end: parse problem files, dispatch to the
//! engines, emit results, certificates and plot-ready geometry.
//!
//! Exit codes: 0 on success, 1 on domain errors (with a machine-readable
//! error JSON on stdout), 2 on usage errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use latticeopt_core::error::Error;
use latticeopt_core::json as fmt;
use latticeopt_core::lattice::{set_rel_le, set_rel_le_dual, weakly_minimal_points, WeaklyMinimal};
use latticeopt_core::linalg::RVec;
use latticeopt_core::lvo::{
    check_lagrange_sufficiency, check_strong_duality, geometric_dual, lagrange_assignments,
    lagrange_grid, solve_primal_benson, verify_geometric_duality, DualSolution, LvoSolution,
};
use latticeopt_core::num::Rational;
use latticeopt_core::risk::{dual_representation_check, risk_measure};
use latticeopt_core::scalar::{
    conjugate, directional_derivative, negative_conjugate, subdifferential_membership,
    support_scalarization, DualPair,
};
use latticeopt_core::UpperSet;

use output::{emit, read_json, write_text, OutputFormat};

#[derive(Parser)]
#[command(name = "latticeopt", version, about = "Exact set optimization over polyhedral geometry")]
struct Cli {
    /// Reserved for future randomized features; core paths are
    /// deterministic and ignore it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete-lattice operations on families of upper sets
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Scalarization-based set-valued convex analysis
    Calculus {
        #[command(subcommand)]
        op: CalculusOp,
    },
    /// Linear vector optimization
    Lvo {
        #[command(subcommand)]
        op: LvoOp,
    },
    /// Set-valued risk measures on finite-scenario markets
    Risk {
        #[command(subcommand)]
        op: RiskOp,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LatticeOp {
    /// Infimum (closed convex hull of the union) of a family
    Inf {
        family: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Supremum (intersection) of a family
    Sup {
        family: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Minkowski sum of two upper sets
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Inf-residuation `A -. B`
    Residual {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Set relation `A <= B` (B inside A + C); `--dual` tests A inside B - C
    Relation {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Weakly minimal boundary faces of an upper set
    Wmin {
        set: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum CalculusOp {
    /// Inf-support value of an upper set in a direction
    Support {
        set: PathBuf,
        #[arg(long, value_parser = parse_vector)]
        zstar: RVec,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fenchel conjugate value of a set-valued function
    Conjugate {
        func: PathBuf,
        #[arg(long, value_parser = parse_vector)]
        xstar: RVec,
        #[arg(long, value_parser = parse_vector)]
        zstar: RVec,
        /// Emit the negative conjugate instead
        #[arg(long)]
        negative: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lower Dini directional derivative
    Dirderiv {
        func: PathBuf,
        #[arg(long, value_parser = parse_vector)]
        zstar: RVec,
        #[arg(long, value_parser = parse_vector)]
        xbar: RVec,
        #[arg(long, value_parser = parse_vector)]
        x: RVec,
        #[command(flatten)]
        out: OutArg,
    },
    /// Subdifferential membership test
    Subdiff {
        func: PathBuf,
        #[arg(long, value_parser = parse_vector)]
        zstar: RVec,
        #[arg(long, value_parser = parse_vector)]
        xbar: RVec,
        #[arg(long, value_parser = parse_vector)]
        xstar: RVec,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum LvoOp {
    /// Outer-approximation solve; writes primal and dual solutions
    Solve {
        problem: PathBuf,
        #[arg(long, value_parser = parse_rational, default_value = "0")]
        eps: Rational,
        /// Interior direction of C; a default is computed when omitted
        #[arg(long, value_parser = parse_vector)]
        c: Option<RVec>,
        /// Primal solution file (stdout object otherwise)
        #[arg(long)]
        out_primal: Option<PathBuf>,
        /// Dual solution file
        #[arg(long)]
        out_dual: Option<PathBuf>,
    },
    /// Verify a primal/dual solution pair: strong duality, Lagrange
    /// sufficiency and the geometric-duality face bijection
    Verify { primal: PathBuf, dual: PathBuf },
    /// Export the upper image or the geometric dual image for plotting
    Plot {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "primal")]
        what: PlotTarget,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long, value_parser = parse_vector)]
        c: Option<RVec>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotTarget {
    Primal,
    Dual,
}

#[derive(Subcommand)]
enum RiskOp {
    /// Compute the risk set and its dual certificate
    Solve {
        market: PathBuf,
        payoff: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Re-verify a stored result against the market and payoff
    Verify {
        market: PathBuf,
        payoff: PathBuf,
        result: PathBuf,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::parse(s).map_err(|e| e.to_string())
}

fn parse_vector(s: &str) -> Result<RVec, String> {
    let parts: Result<Vec<Rational>, _> = s.split(',').map(Rational::parse).collect();
    parts.map(RVec).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("LATTICEOPT_LOG", "off"),
    )
    .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = serde_json::to_string(&json!({"error": e.to_string()}))
                .unwrap_or_else(|_| format!("{{\"error\":\"{e}\"}}"));
            println!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Lattice { op } => run_lattice(op),
        Command::Calculus { op } => run_calculus(op),
        Command::Lvo { op } => run_lvo(op),
        Command::Risk { op } => run_risk(op),
    }
}

fn load_upper_set(path: &PathBuf) -> Result<UpperSet, Error> {
    fmt::upper_set_from_value(&read_json(path)?, None)
}

fn run_lattice(op: LatticeOp) -> Result<(), Error> {
    match op {
        LatticeOp::Inf { family, out } => {
            let fam = fmt::family_from_value(&read_json(&family)?)?;
            emit(&out.output, &fmt::upper_set_to_value(&fam.infimum()))
        }
        LatticeOp::Sup { family, out } => {
            let fam = fmt::family_from_value(&read_json(&family)?)?;
            emit(&out.output, &fmt::upper_set_to_value(&fam.supremum()))
        }
        LatticeOp::Sum { a, b, out } => {
            let a = load_upper_set(&a)?;
            let b = load_upper_set(&b)?;
            emit(&out.output, &fmt::upper_set_to_value(&a.sum(&b)?))
        }
        LatticeOp::Residual { a, b, out } => {
            let a = load_upper_set(&a)?;
            let b = load_upper_set(&b)?;
            emit(&out.output, &fmt::upper_set_to_value(&a.residual(&b)?))
        }
        LatticeOp::Relation { a, b, dual, out } => {
            // operands are arbitrary polyhedra over a shared cone
            let av = read_json(&a)?;
            let bv = read_json(&b)?;
            let cone = Arc::new(latticeopt_core::lattice::OrderCone::new(
                fmt::cone_from_value(
                    av.get("cone")
                        .ok_or_else(|| Error::Json("relation operand needs a \"cone\"".into()))?,
                )?,
            )?);
            let pa = fmt::polyhedron_from_value(
                av.get("poly")
                    .ok_or_else(|| Error::Json("relation operand needs \"poly\"".into()))?,
                cone.dim(),
            )?;
            let pb = fmt::polyhedron_from_value(
                bv.get("poly")
                    .ok_or_else(|| Error::Json("relation operand needs \"poly\"".into()))?,
                cone.dim(),
            )?;
            let holds = if dual {
                set_rel_le_dual(&pa, &pb, &cone)?
            } else {
                set_rel_le(&pa, &pb, &cone)?
            };
            emit(&out.output, &json!({"holds": holds}))
        }
        LatticeOp::Wmin { set, out } => {
            let a = load_upper_set(&set)?;
            let wm = weakly_minimal_points(&a)?;
            let value = match wm {
                WeaklyMinimal::MinusInfinity => json!({"kind": "minus_infinity"}),
                WeaklyMinimal::PlusInfinity => json!({"kind": "plus_infinity"}),
                WeaklyMinimal::Faces(faces) => json!({
                    "kind": "faces",
                    "faces": faces
                        .iter()
                        .map(|f| {
                            json!({
                                "normal": fmt::vector_to_value(&f.normal),
                                "offset": fmt::rational_to_value(&f.offset),
                                "face": fmt::vrep_to_value(&f.face),
                            })
                        })
                        .collect::<Vec<_>>(),
                }),
            };
            emit(&out.output, &value)
        }
    }
}

fn run_calculus(op: CalculusOp) -> Result<(), Error> {
    match op {
        CalculusOp::Support { set, zstar, out } => {
            let a = load_upper_set(&set)?;
            let v = support_scalarization(&a, &zstar)?;
            emit(&out.output, &json!({"value": fmt::extended_to_value(&v)}))
        }
        CalculusOp::Conjugate {
            func,
            xstar,
            zstar,
            negative,
            out,
        } => {
            let f = fmt::set_function_from_value(&read_json(&func)?)?;
            let pair = DualPair::new(f.cone(), xstar, zstar)?;
            let value = if negative {
                negative_conjugate(&f, &pair)?
            } else {
                conjugate(&f, &pair)?
            };
            emit(&out.output, &fmt::upper_set_to_value(&value))
        }
        CalculusOp::Dirderiv {
            func,
            zstar,
            xbar,
            x,
            out,
        } => {
            let f = fmt::set_function_from_value(&read_json(&func)?)?;
            let d = directional_derivative(&f, &zstar, &xbar, &x)?;
            emit(&out.output, &fmt::upper_set_to_value(&d))
        }
        CalculusOp::Subdiff {
            func,
            zstar,
            xbar,
            xstar,
            out,
        } => {
            let f = fmt::set_function_from_value(&read_json(&func)?)?;
            let member = subdifferential_membership(&f, &zstar, &xbar, &xstar)?;
            emit(&out.output, &json!({"member": member}))
        }
    }
}

fn run_lvo(op: LvoOp) -> Result<(), Error> {
    match op {
        LvoOp::Solve {
            problem,
            eps,
            c,
            out_primal,
            out_dual,
        } => {
            let p = fmt::lvo_problem_from_value(&read_json(&problem)?)?;
            let c = c.unwrap_or_else(|| p.default_c());
            let (primal, dual) = solve_primal_benson(&p, &eps, &c)?;
            log::info!(
                "solved in {} iterations with {} points and {} dual pairs",
                primal.iterations,
                primal.points.len(),
                dual.pairs.len()
            );
            let pv = fmt::lvo_primal_to_value(&p, &primal);
            let dv = fmt::lvo_dual_to_value(&p, &dual);
            match (out_primal, out_dual) {
                (None, None) => emit(&None, &json!({"primal": pv, "dual": dv})),
                (op, od) => {
                    if let Some(path) = op {
                        emit(&Some(path), &pv)?;
                    }
                    if let Some(path) = od {
                        emit(&Some(path), &dv)?;
                    }
                    Ok(())
                }
            }
        }
        LvoOp::Verify { primal, dual } => {
            let (p, points, image, eps, c) = fmt::lvo_primal_from_value(&read_json(&primal)?)?;
            let (p2, pairs, outer) = fmt::lvo_dual_from_value(&read_json(&dual)?)?;
            if fmt::lvo_problem_to_value(&p) != fmt::lvo_problem_to_value(&p2) {
                return Err(Error::InvalidProblem(
                    "primal and dual files embed different problems".into(),
                ));
            }
            let primal_sol = LvoSolution {
                points: points.clone(),
                image,
                eps,
                c: c.clone(),
                iterations: 0,
            };
            let dual_sol = DualSolution {
                pairs,
                outer,
                history: vec![],
            };
            let strong = check_strong_duality(&p, &primal_sol, &dual_sol)?;
            let lagrange = match primal_sol.image.proper() {
                Some(img) => {
                    let grid = lagrange_grid(img, &p.cone);
                    let assignments = lagrange_assignments(&p, &grid)?;
                    check_lagrange_sufficiency(&p, &points, &assignments)?
                }
                None => false,
            };
            let geometric = match primal_sol.image.proper() {
                Some(img) if !c[p.nobj() - 1].is_zero() => {
                    let gd = geometric_dual(&p, &c)?;
                    verify_geometric_duality(img, &gd.dual_image, &c)?
                }
                _ => false,
            };
            emit(
                &None,
                &json!({
                    "strongDuality": strong,
                    "lagrangeSufficiency": lagrange,
                    "geometricDuality": geometric,
                    "verified": strong && lagrange && geometric,
                }),
            )
        }
        LvoOp::Plot {
            problem,
            what,
            format,
            c,
            out,
        } => {
            let p = fmt::lvo_problem_from_value(&read_json(&problem)?)?;
            let c = c.unwrap_or_else(|| p.default_c());
            let poly = match what {
                PlotTarget::Primal => {
                    let (primal, _) = solve_primal_benson(&p, &Rational::zero(), &c)?;
                    primal
                        .image
                        .proper()
                        .cloned()
                        .ok_or_else(|| Error::InvalidProblem("image is degenerate".into()))?
                }
                PlotTarget::Dual => geometric_dual(&p, &c)?.dual_image,
            };
            match format {
                OutputFormat::Json => emit(&out.output, &output::plot_json(&poly)),
                OutputFormat::Csv => write_text(&out.output, &output::plot_csv(&poly)),
                OutputFormat::Off => write_text(&out.output, &output::plot_off(&poly)?),
            }
        }
    }
}

fn run_risk(op: RiskOp) -> Result<(), Error> {
    match op {
        RiskOp::Solve {
            market,
            payoff,
            out,
        } => {
            let m = fmt::market_from_value(&read_json(&market)?)?;
            let x = fmt::payoff_from_value(&read_json(&payoff)?)?;
            let result = risk_measure(&m, &x)?;
            emit(&out.output, &fmt::risk_result_to_value(&result))
        }
        RiskOp::Verify {
            market,
            payoff,
            result,
        } => {
            let m = fmt::market_from_value(&read_json(&market)?)?;
            let x = fmt::payoff_from_value(&read_json(&payoff)?)?;
            let stored = fmt::risk_result_from_value(&read_json(&result)?, &m)?;
            let recomputed = risk_measure(&m, &x)?;
            let matches = recomputed.risk_set == stored.risk_set;
            let dual_ok = dual_representation_check(&m, &x, &stored)?;
            emit(
                &None,
                &json!({
                    "riskSetMatches": matches,
                    "dualRepresentation": dual_ok,
                    "verified": matches && dual_ok,
                }),
            )
        }
    }
}

//! Command-line interface: symmetry and similarity analysis of implicit
//! planar algebraic curves with exact rational coefficients.

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use symmetra_core::bipoly::BiPoly;
use symmetra_core::error::Error;
use symmetra_core::scalars::{gr_str, rat_str, ComplexScalar};
use symmetra_core::similarity::{RealValue, SimilarityStatus};
use symmetra_core::svg::Window;
use symmetra_core::symmetry::SymmetryOutcome;

#[derive(Parser)]
#[command(
    name = "symmetra",
    about = "Exact symmetries and similarities of implicit planar algebraic curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RenderOpts {
    /// Emit the report as canonical JSON
    #[arg(long)]
    json: bool,
    /// Write an SVG rendering to this path
    #[arg(long, value_name = "out.svg")]
    svg: Option<String>,
    /// Rendering window as x0,y0,x1,y1
    #[arg(
        long,
        value_name = "x0,y0,x1,y1",
        default_value = "-3,-3,3,3",
        allow_hyphen_values = true
    )]
    window: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the symmetry group of a curve
    Symmetries {
        /// Polynomial expression in x, y (or @file containing one)
        expr: String,
        #[command(flatten)]
        render: RenderOpts,
        /// Cap on the rotation orders tested (default: 2·deg)
        #[arg(long, value_name = "N")]
        max_order: Option<u32>,
    },
    /// Decide whether two curves are similar and list the similarities
    Similar {
        expr1: String,
        expr2: String,
        #[command(flatten)]
        render: RenderOpts,
    },
    /// Print the Laplacian chain of a curve
    Chain { expr: String },
    /// Print the associated complex polynomial g(z) of a harmonic input
    Assoc { expr: String },
}

fn read_input(expr: &str) -> Result<BiPoly, Error> {
    let text = if let Some(path) = expr.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {}", path, e)))?
    } else {
        expr.to_string()
    };
    symmetra_core::parse::parse_poly(text.trim())
}

fn parse_window(s: &str) -> Result<Window, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::invalid("window must be x0,y0,x1,y1"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.trim().parse::<f64>()).collect();
    let nums = nums.map_err(|_| Error::invalid("window coordinates must be numbers"))?;
    Window::new(nums[0], nums[1], nums[2], nums[3])
}

fn angle_of(w: &ComplexScalar) -> String {
    symmetra_core::symmetry::axis_angle_approx(w, 6)
}

fn describe_value(s: &ComplexScalar) -> String {
    match s {
        ComplexScalar::Exact(g) => gr_str(g),
        ComplexScalar::Algebraic(a) => {
            let (re, im) = a.approx_decimal(12);
            let sign = if im.starts_with('-') { "" } else { "+" };
            format!("root of {} near {}{}{}i", a.defining(), re, sign, im)
        }
    }
}

fn describe_real(v: &RealValue) -> String {
    match v {
        RealValue::Exact(r) => rat_str(r),
        RealValue::Interval(lo, hi) => format!(
            "[{}, {}]",
            symmetra_core::scalars::rat_decimal_str(lo, 12),
            symmetra_core::scalars::rat_decimal_str(hi, 12)
        ),
    }
}

fn cmd_symmetries(expr: &str, render: &RenderOpts, max_order: Option<u32>) -> Result<(), Error> {
    let f = read_input(expr)?;
    let outcome = symmetra_core::symmetry::symmetries_with_max_order(&f, max_order)?;
    if render.json {
        let v = symmetra_core::report::emit_symmetry_report(&outcome)?;
        println!("{}", symmetra_core::report::to_json_string(&v));
    } else {
        match &outcome {
            SymmetryOutcome::Infinite(fam) => {
                println!("infinite symmetry group: {:?}", fam);
            }
            SymmetryOutcome::Finite(rep) => {
                if rep.squarefree_normalized {
                    println!("note: input was not square-free; analyzed its square-free part");
                }
                if rep.is_trivial() {
                    println!("no symmetries found");
                } else {
                    println!("symmetry group of order {}", rep.group_order);
                    if let Some(c) = &rep.center {
                        println!("center: ({}, {})", rat_str(&c.re), rat_str(&c.im));
                    }
                    for (d, l) in &rep.rotations {
                        println!("rotation by 2\u{3c0}/{}  (lambda {})", d, l);
                    }
                    for (w, l) in &rep.reflections {
                        println!(
                            "reflection axis at angle ~{} rad  (unit w = {}, lambda {})",
                            angle_of(w),
                            describe_value(w),
                            l
                        );
                    }
                }
            }
        }
    }
    if let Some(path) = &render.svg {
        let win = parse_window(&render.window)?;
        let svg = symmetra_core::svg::render_symmetry_svg(&f, Some(&outcome), &win, 192)?;
        std::fs::write(path, svg).map_err(|e| Error::invalid(format!("cannot write svg: {e}")))?;
    }
    Ok(())
}

fn cmd_similar(expr1: &str, expr2: &str, render: &RenderOpts) -> Result<(), Error> {
    let f1 = read_input(expr1)?;
    let f2 = read_input(expr2)?;
    let rep = symmetra_core::similarity::similarities(&f1, &f2)?;
    if render.json {
        let v = symmetra_core::report::emit_similarity_report(&rep)?;
        println!("{}", symmetra_core::report::to_json_string(&v));
    } else {
        match &rep.status {
            SimilarityStatus::NotSimilar => println!("not similar"),
            SimilarityStatus::InfiniteFamily(desc) => {
                println!("infinitely many similarities: {}", desc)
            }
            SimilarityStatus::Similar => {
                println!("similar: {} similarities", rep.similarities.len());
                for e in &rep.similarities {
                    let kind = match e.map.kind {
                        symmetra_core::bipoly::MapKind::Direct => "direct  z -> a*z + b",
                        symmetra_core::bipoly::MapKind::Opposite => "opposite z -> a*conj(z) + b",
                    };
                    let beta = symmetra_core::report::beta_scalar(&e.map)?;
                    println!(
                        "  {} with a = {}, b = {}, lambda = {}, mu^2 = {}",
                        kind,
                        describe_value(&e.map.alpha),
                        describe_value(&beta),
                        describe_real(&e.lambda),
                        describe_real(&e.mu_sq),
                    );
                }
            }
        }
    }
    if let Some(path) = &render.svg {
        let win = parse_window(&render.window)?;
        let svg = symmetra_core::svg::render_pair_svg(&f1, &f2, &win, 192)?;
        std::fs::write(path, svg).map_err(|e| Error::invalid(format!("cannot write svg: {e}")))?;
    }
    Ok(())
}

fn cmd_chain(expr: &str) -> Result<(), Error> {
    let f = read_input(expr)?;
    let ch = symmetra_core::reduce::chain(&f)?;
    for (k, stage) in ch.stages.iter().enumerate() {
        println!("lap^{}: {}", k, stage);
    }
    println!(
        "lap^{}: {}  (constant)",
        ch.stages.len(),
        rat_str(&ch.terminal_constant)
    );
    Ok(())
}

fn cmd_assoc(expr: &str) -> Result<(), Error> {
    let f = read_input(expr)?;
    let g = symmetra_core::harmonic::associated_g(&f)?;
    println!("g(z) = {}", g);
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(bits) = std::env::var("SYMMETRA_PRECISION_BITS") {
        match bits.parse::<u32>() {
            Ok(b) => symmetra_core::algebraic::set_precision_bits(b),
            Err(_) => {
                eprintln!("error: SYMMETRA_PRECISION_BITS must be an integer");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version exit 0; usage errors exit 1
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Symmetries {
            expr,
            render,
            max_order,
        } => cmd_symmetries(expr, render, *max_order),
        Command::Similar {
            expr1,
            expr2,
            render,
        } => cmd_similar(expr1, expr2, render),
        Command::Chain { expr } => cmd_chain(expr),
        Command::Assoc { expr } => cmd_assoc(expr),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Internal(msg)) => {
            eprintln!("internal error: {}", msg);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}

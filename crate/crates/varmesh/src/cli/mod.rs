//! Config-driven command-line front end.
//!
//! Subcommands: `mesh1d`, `mesh2d`, `stencil`, `solve-ho`. Each reads a
//! TOML config (see [`config`]), writes CSV artifacts plus a resolved
//! `manifest.toml` into the output directory, and prints a short summary.
//! Exit codes: 0 success, 1 usage/config, 2 validation, 3 numerical
//! non-convergence.

pub mod config;

use crate::error::Error;
use crate::mesh1d;
use crate::schrodinger::{HOProblem, HOSolution, MeshKind};
use crate::stencil::{first_derivative_coeffs, second_derivative_coeffs};
use crate::tensor::generate_tensor_mesh;
use crate::weights::WeightSpec;
use crate::winslow::{self, WinslowOptions};
use clap::{Args, Parser, Subcommand};
use config::{MeshChoice, RunConfig, SolverKind};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "varmesh", version, about = "Variable-step finite differences via equidistribution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Path to the TOML config file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for CSV artifacts and the manifest.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Random seed for eigensolver start vectors; overrides the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a 1D equidistributed mesh and export it as CSV.
    Mesh1d(CommonArgs),
    /// Generate a 2D lattice (separable tensor or harmonic-map solver).
    Mesh2d(CommonArgs),
    /// Print the nonuniform 3-point stencil coefficient table.
    Stencil(CommonArgs),
    /// Solve the 2D harmonic oscillator on uniform/variable meshes.
    SolveHo(CommonArgs),
}

/// CLI failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: msg.into(),
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } | Error::Numerical { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        usage(format!("io error: {e}"))
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mesh1d(args) => with_config(&args, |cfg, out, _seed| {
            let section = cfg
                .mesh1d
                .as_ref()
                .ok_or_else(|| usage("config has no [mesh1d] section"))?;
            cmd_mesh1d(section, out)
        }),
        Command::Mesh2d(args) => with_config(&args, |cfg, out, _seed| {
            let section = cfg
                .mesh2d
                .as_ref()
                .ok_or_else(|| usage("config has no [mesh2d] section"))?;
            cmd_mesh2d(section, out)
        }),
        Command::Stencil(args) => with_config(&args, |cfg, out, _seed| {
            let section = cfg
                .stencil
                .as_ref()
                .ok_or_else(|| usage("config has no [stencil] section"))?;
            cmd_stencil(section, out)
        }),
        Command::SolveHo(args) => with_config(&args, |cfg, out, seed| {
            let section = cfg
                .solve_ho
                .as_ref()
                .ok_or_else(|| usage("config has no [solve_ho] section"))?;
            cmd_solve_ho(section, out, seed)
        }),
    }
}

fn with_config<F>(args: &CommonArgs, f: F) -> Result<(), CliError>
where
    F: FnOnce(&RunConfig, &Path, u64) -> Result<(), CliError>,
{
    let text = fs::read_to_string(&args.config)
        .map_err(|e| usage(format!("cannot read config {}: {e}", args.config.display())))?;
    let mut cfg: RunConfig =
        toml::from_str(&text).map_err(|e| usage(format!("config parse error: {e}")))?;
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    cfg.seed = Some(seed);
    fs::create_dir_all(&args.out)?;
    // Resolved manifest; itself a valid config for byte-identical reruns.
    let manifest =
        toml::to_string_pretty(&cfg).map_err(|e| usage(format!("manifest encoding: {e}")))?;
    fs::write(args.out.join("manifest.toml"), manifest)?;
    f(&cfg, &args.out, seed)
}

fn checked_weight(w: &WeightSpec) -> Result<(), CliError> {
    w.check().map_err(CliError::from)
}

fn cmd_mesh1d(cfg: &config::Mesh1dConfig, out: &Path) -> Result<(), CliError> {
    checked_weight(&cfg.weight)?;
    let segments = cfg.segments().map_err(usage)?;
    let mesh = mesh1d::generate_mesh(&cfg.weight, cfg.domain, segments)?;
    let mut csv = String::from("i,x_i,h_i\n");
    let n = mesh.num_nodes();
    for (i, x) in mesh.nodes().iter().enumerate() {
        if i + 1 < n {
            let _ = writeln!(csv, "{i},{x},{}", mesh.spacings()[i]);
        } else {
            let _ = writeln!(csv, "{i},{x},");
        }
    }
    fs::write(out.join("mesh1d.csv"), csv)?;
    println!(
        "mesh1d: {} nodes on [{}, {}], S_total = {}, equidist_residual = {:e}, min h = {}, max h = {}",
        n,
        cfg.domain[0],
        cfg.domain[1],
        mesh.s_total(),
        mesh.equidist_residual(),
        mesh.min_spacing(),
        mesh.max_spacing()
    );
    Ok(())
}

fn lattice_csv(xs: &[f64], ys: &[f64]) -> String {
    let mut csv = String::from("i,j,x,y\n");
    for (j, y) in ys.iter().enumerate() {
        for (i, x) in xs.iter().enumerate() {
            let _ = writeln!(csv, "{i},{j},{x},{y}");
        }
    }
    csv
}

fn cmd_mesh2d(cfg: &config::Mesh2dConfig, out: &Path) -> Result<(), CliError> {
    checked_weight(&cfg.weight_x)?;
    checked_weight(&cfg.weight_y)?;
    let sx = cfg.segments_x().map_err(usage)?;
    let sy = cfg.segments_y().map_err(usage)?;
    match cfg.solver {
        SolverKind::Tensor => {
            let mesh = generate_tensor_mesh(
                &[cfg.weight_x.clone(), cfg.weight_y.clone()],
                &[cfg.domain_x, cfg.domain_y],
                &[sx, sy],
            )?;
            let csv = lattice_csv(mesh.axis(0).nodes(), mesh.axis(1).nodes());
            fs::write(out.join("mesh2d.csv"), csv)?;
            println!(
                "mesh2d (tensor): {}x{} nodes, per-axis equidist residuals {:e} / {:e}",
                mesh.axis(0).num_nodes(),
                mesh.axis(1).num_nodes(),
                mesh.axis(0).equidist_residual(),
                mesh.axis(1).equidist_residual()
            );
        }
        SolverKind::Harmonic => {
            let opts = WinslowOptions {
                tol: cfg.tol,
                max_iter: cfg.max_iter,
                ..Default::default()
            };
            let grid = winslow::solve_winslow_product(
                &cfg.weight_x,
                &cfg.weight_y,
                [cfg.domain_x, cfg.domain_y],
                sx + 1,
                sy + 1,
                &opts,
            )?;
            let mut csv = String::from("i,j,x,y\n");
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    let _ = writeln!(csv, "{i},{j},{},{}", grid.x(i, j), grid.y(i, j));
                }
            }
            fs::write(out.join("mesh2d.csv"), csv)?;
            // Discrepancy against the separable construction, when the
            // product weight makes the two paths comparable.
            let tensor = generate_tensor_mesh(
                &[cfg.weight_x.clone(), cfg.weight_y.clone()],
                &[cfg.domain_x, cfg.domain_y],
                &[sx, sy],
            )?;
            let mut worst = 0.0f64;
            for j in 0..grid.ny {
                for i in 0..grid.nx {
                    worst = worst.max((grid.x(i, j) - tensor.axis(0).nodes()[i]).abs());
                    worst = worst.max((grid.y(i, j) - tensor.axis(1).nodes()[j]).abs());
                }
            }
            println!(
                "mesh2d (harmonic): {}x{} nodes, residual = {:e}, iterations = {}, max discrepancy vs tensor = {:e}",
                grid.nx, grid.ny, grid.residual, grid.iterations, worst
            );
        }
    }
    Ok(())
}

fn cmd_stencil(cfg: &config::StencilConfig, out: &Path) -> Result<(), CliError> {
    let s1 = first_derivative_coeffs(cfg.h_left, cfg.h_right)?;
    let s2 = second_derivative_coeffs(cfg.h_left, cfg.h_right)?;
    let mut csv = String::from("order,a,b,c\n");
    let _ = writeln!(csv, "1,{},{},{}", s1.a, s1.b, s1.c);
    let _ = writeln!(csv, "2,{},{},{}", s2.a, s2.b, s2.c);
    fs::write(out.join("stencil.csv"), &csv)?;
    print!("{csv}");
    Ok(())
}

fn write_solution(
    prefix: &str,
    problem: &HOProblem,
    sol: &HOSolution,
    out: &Path,
) -> Result<(), CliError> {
    let analytic = problem.analytic_spectrum(sol.energies.len());
    let mut csv = String::from("index,energy_MeV,abs_error_MeV\n");
    for (idx, (e, a)) in sol.energies.iter().zip(analytic.iter()).enumerate() {
        let _ = writeln!(csv, "{idx},{e},{}", (e - a).abs());
    }
    fs::write(out.join(format!("spectrum_{prefix}.csv")), csv)?;

    let xs = sol.mesh.axis(0).nodes();
    let ys = sol.mesh.axis(1).nodes();
    let nxi = xs.len() - 2;
    for (state, psi) in sol.wavefunctions.iter().enumerate() {
        let mut csv = String::from("i,j,x,y,psi\n");
        for (p, v) in psi.iter().enumerate() {
            let (i, j) = (p % nxi, p / nxi);
            let _ = writeln!(csv, "{i},{j},{},{},{v}", xs[i + 1], ys[j + 1]);
        }
        fs::write(out.join(format!("psi_{prefix}_{state}.csv")), csv)?;
    }
    Ok(())
}

fn cmd_solve_ho(cfg: &config::SolveHoConfig, out: &Path, seed: u64) -> Result<(), CliError> {
    let kinds: Vec<(&str, MeshKind)> = match cfg.mesh {
        MeshChoice::Uniform => vec![("uniform", MeshKind::Uniform)],
        MeshChoice::Variable => vec![("variable", MeshKind::Variable)],
        MeshChoice::HarmonicMap => vec![("harmonic_map", MeshKind::HarmonicMap)],
        MeshChoice::Both => vec![
            ("uniform", MeshKind::Uniform),
            ("variable", MeshKind::Variable),
        ],
    };
    let mut solutions = Vec::new();
    for (prefix, kind) in &kinds {
        let problem = HOProblem::new(
            cfg.domain,
            cfg.nodes,
            cfg.counting,
            cfg.hbar_omega,
            cfg.weight_depth,
            *kind,
        )?;
        let sol = crate::schrodinger::solve_ho_seeded(&problem, cfg.k, seed)?;
        write_solution(prefix, &problem, &sol, out)?;
        let analytic = problem.analytic_spectrum(cfg.k);
        println!(
            "solve-ho [{prefix}]: dim = {}, method = {}, E = [{}], |E - analytic| = [{}]",
            problem.hamiltonian_dim(),
            sol.method,
            sol.energies
                .iter()
                .map(|e| format!("{e:.6}"))
                .collect::<Vec<_>>()
                .join(", "),
            sol.energies
                .iter()
                .zip(analytic.iter())
                .map(|(e, a)| format!("{:.6}", (e - a).abs()))
                .collect::<Vec<_>>()
                .join(", ")
        );
        solutions.push((prefix.to_string(), problem, sol));
    }
    if cfg.mesh == MeshChoice::Both {
        let (_, problem, uniform) = &solutions[0];
        let (_, _, variable) = &solutions[1];
        let analytic = problem.analytic_spectrum(cfg.k);
        let mut csv = String::from(
            "index,analytic_MeV,uniform_MeV,uniform_abs_err_MeV,variable_MeV,variable_abs_err_MeV\n",
        );
        for idx in 0..cfg.k {
            let (a, eu, ev) = (analytic[idx], uniform.energies[idx], variable.energies[idx]);
            let _ = writeln!(
                csv,
                "{idx},{a},{eu},{},{ev},{}",
                (eu - a).abs(),
                (ev - a).abs()
            );
        }
        let _ = writeln!(
            csv,
            "# mesh stats: uniform h = {}, variable h in [{}, {}]",
            uniform.mesh.axis(0).min_spacing(),
            variable.mesh.axis(0).min_spacing(),
            variable.mesh.axis(0).max_spacing()
        );
        fs::write(out.join("comparison.csv"), csv)?;
        let ratio =
            (uniform.energies[0] - analytic[0]).abs() / (variable.energies[0] - analytic[0]).abs();
        println!("solve-ho [comparison]: ground-state error ratio uniform/variable = {ratio:.3}");
    }
    Ok(())
}

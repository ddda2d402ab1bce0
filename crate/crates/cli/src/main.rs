//! `ince-wave`: parameter derivation, eigen tables, polynomial and
//! wave-function sampling, figure data and the verification suite.

mod config;

use std::f64::consts::PI;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ince_core::figures::{self, FigureConfig};
use ince_core::ince::{solve_family, IncePolynomial};
use ince_core::params::{derive_params, DerivedParams, Family, LaserPlasmaConfig, PlasmaSpec};
use ince_core::physics::{momentum_spectrum, wavefunction, MassShell, Root, Sign, SpacetimePoint, WaveOptions};
use ince_core::table::{Cell, Table};
use ince_core::verify::{self, VerifyConfig};
use ince_core::VERSION;
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(name = "ince-wave", version, about = "Ince-polynomial waves in an underdense plasma")]
struct Cli {
    /// JSON object whose keys are flag names (and optionally "command").
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write one file per table into this directory instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for independent computations (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest accepted degree n.
    #[arg(long, global = true, default_value_t = 200)]
    n_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShellArg {
    Free,
    Dressed,
}

impl From<ShellArg> for MassShell {
    fn from(s: ShellArg) -> Self {
        match s {
            ShellArg::Free => MassShell::Free,
            ShellArg::Dressed => MassShell::Dressed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived dimensionless parameters for a laser and plasma.
    Params(LaserArgs),
    /// Eigenvalue tables `k,eta`.
    Eigen(SolveArgs),
    /// Sampled polynomials with derivatives and ODE residual.
    Poly(PolyArgs),
    /// Sampled wave function along the phase at fixed longitudinal position.
    Wave(WaveArgs),
    /// Squared coefficients (harmonic strengths).
    Spectrum(SolveArgs),
    /// Momentum parameters for every eigenvalue.
    Momenta(MomentaArgs),
    /// Figure data as CSV/JSON tables.
    Figures(FigureArgs),
    /// Runs the invariant suites; exit status 0 iff all pass.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct LaserArgs {
    /// Photon energy ħω₀ in eV.
    #[arg(long, default_value_t = 1.563)]
    photon_energy: f64,
    /// Intensity in W/cm².
    #[arg(long, default_value_t = 1e8)]
    intensity: f64,
    /// Plasmon energy ħω_p in eV.
    #[arg(long, conflicts_with = "electron_density", required_unless_present = "electron_density")]
    plasmon_energy: Option<f64>,
    /// Electron density in cm⁻³.
    #[arg(long)]
    electron_density: Option<f64>,
}

impl LaserArgs {
    fn config(&self) -> LaserPlasmaConfig {
        let plasma = match (self.plasmon_energy, self.electron_density) {
            (Some(e), _) => PlasmaSpec::PlasmonEnergy(e),
            (None, Some(n)) => PlasmaSpec::ElectronDensity(n),
            (None, None) => unreachable!("clap requires one plasma spec"),
        };
        LaserPlasmaConfig::new(self.photon_energy, self.intensity, plasma)
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: ince_core::InceError| e.to_string())
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Family (repeatable); all four when omitted.
    #[arg(long, value_parser = parse_family)]
    family: Vec<Family>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: f64,
    /// Keep only these eigen indices.
    #[arg(long)]
    k: Vec<usize>,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(flatten)]
    solve: SolveArgs,
    #[arg(long, default_value_t = 1001)]
    points: usize,
    #[arg(long, default_value_t = -2.0 * PI, allow_negative_numbers = true)]
    xi_min: f64,
    #[arg(long, default_value_t = 2.0 * PI, allow_negative_numbers = true)]
    xi_max: f64,
}

#[derive(Args, Debug)]
struct WaveArgs {
    #[command(flatten)]
    laser: LaserArgs,
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Momentum along the magnetic field, cm⁻¹.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p_z: f64,
    #[arg(long, value_enum, default_value_t = ShellArg::Free)]
    mass_shell: ShellArg,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    hat_sign: SignArg,
    /// Evaluate evanescent states (growing/decaying in x̂).
    #[arg(long)]
    allow_evanescent: bool,
    /// Longitudinal coordinate x̂ (dimensionless).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x_hat: f64,
    /// Transverse positions in cm.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x3: f64,
    #[arg(long, default_value_t = 1001)]
    points: usize,
    #[arg(long, default_value_t = -2.0 * PI, allow_negative_numbers = true)]
    xi_min: f64,
    #[arg(long, default_value_t = 2.0 * PI, allow_negative_numbers = true)]
    xi_max: f64,
}

#[derive(Args, Debug)]
struct MomentaArgs {
    #[command(flatten)]
    laser: LaserArgs,
    #[arg(long, value_parser = parse_family)]
    family: Vec<Family>,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p_z: f64,
    #[arg(long, value_enum, default_value_t = ShellArg::Free)]
    mass_shell: ShellArg,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// Figure ids (repeatable); all six when omitted.
    #[arg(long)]
    which: Vec<u8>,
    #[arg(long, default_value_t = 14.0)]
    a: f64,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1001)]
    points: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_family)]
    families: Vec<Family>,
    /// Check this single degree instead of 0..=30.
    #[arg(long)]
    n: Option<usize>,
    /// Test hook: perturbs η in the ODE-residual suite.
    #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
    eta_perturbation: f64,
}

/// Error carrying the exit status.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(2, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    out: Option<PathBuf>,
    format: Format,
    n_cap: usize,
}

impl Ctx {
    fn check_n(&self, n: usize) -> Outcome {
        if n > self.n_cap {
            return Err(Failure(2, format!("n = {n} exceeds the cap {} (see --n-cap)", self.n_cap)));
        }
        Ok(())
    }

    fn ext(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn render(&self, t: &Table) -> Result<String, Failure> {
        Ok(match self.format {
            Format::Csv => t.to_csv(),
            Format::Json => serde_json::to_string_pretty(t)? + "\n",
        })
    }

    fn emit(&self, tables: &[Table]) -> Outcome {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                for t in tables {
                    write_file(&dir.join(format!("{}.{}", t.name, self.ext())), &self.render(t)?)?;
                }
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                if self.format == Format::Json && tables.len() != 1 {
                    writeln!(stdout, "{}", serde_json::to_string_pretty(tables)?)?;
                } else {
                    for (i, t) in tables.iter().enumerate() {
                        if i > 0 {
                            writeln!(stdout)?;
                        }
                        write!(stdout, "{}", self.render(t)?)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn emit_json(&self, name: &str, value: &impl serde::Serialize) -> Outcome {
        let text = serde_json::to_string_pretty(value)? + "\n";
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                write_file(&dir.join(format!("{name}.json")), &text)
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure(2, format!("cannot write {}: {e}", path.display())))
}

fn families_or_all(f: &[Family]) -> Vec<Family> {
    if f.is_empty() {
        Family::ALL.to_vec()
    } else {
        f.to_vec()
    }
}

fn keep(sols: Vec<IncePolynomial>, ks: &[usize]) -> Vec<IncePolynomial> {
    if ks.is_empty() {
        sols
    } else {
        sols.into_iter().filter(|s| ks.contains(&s.k)).collect()
    }
}

fn solve_all(args: &SolveArgs) -> Result<Vec<(Family, Vec<IncePolynomial>)>, Failure> {
    families_or_all(&args.family)
        .par_iter()
        .map(|&f| Ok((f, keep(solve_family(f, args.n, args.a)?, &args.k))))
        .collect()
}

fn cmd_params(ctx: &Ctx, args: &LaserArgs) -> Outcome {
    let cfg = args.config();
    let d = derive_params(&cfg)?;
    match ctx.format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Report<'a> {
                version: &'a str,
                input: &'a LaserPlasmaConfig,
                derived: &'a DerivedParams,
                plasma_wavelength_nm: f64,
                mass_ratio: f64,
            }
            let report = Report {
                version: VERSION,
                input: &cfg,
                derived: &d,
                plasma_wavelength_nm: d.plasma_wavelength_nm(),
                mass_ratio: d.mass_ratio(),
            };
            ctx.emit_json("params", &report)
        }
        Format::Csv => {
            let mut t = Table::new("params", &["quantity", "value"])
                .meta("photon_energy", cfg.photon_energy)
                .meta("intensity", cfg.intensity)
                .meta("version", VERSION);
            for (k, v) in [
                ("a", d.a),
                ("mu0", d.mu0),
                ("n_m", d.n_m),
                ("k0", d.k0),
                ("kp", d.kp),
                ("n_ph", d.n_ph),
                ("kappa", d.kappa),
                ("kappa_star", d.kappa_star),
                ("eps_a0", d.eps_a0),
                ("plasmon_energy", d.plasmon_energy),
                ("electron_density", d.electron_density),
                ("plasma_wavelength_nm", d.plasma_wavelength_nm()),
                ("mass_ratio", d.mass_ratio()),
            ] {
                t.push(vec![k.into(), v.into()]);
            }
            ctx.emit(&[t])
        }
    }
}

fn cmd_eigen(ctx: &Ctx, args: &SolveArgs) -> Outcome {
    ctx.check_n(args.n)?;
    let tables: Vec<Table> = solve_all(args)?
        .into_iter()
        .map(|(f, sols)| {
            let mut t = Table::new(format!("eigen_{f}"), &["k", "eta"])
                .meta("a", args.a)
                .meta("q", f.q(args.n))
                .meta("family", f)
                .meta("n", args.n)
                .meta("version", VERSION);
            for s in sols {
                t.push(vec![s.k.into(), s.eta.into()]);
            }
            t
        })
        .collect();
    ctx.emit(&tables)
}

fn cmd_spectrum(ctx: &Ctx, args: &SolveArgs) -> Outcome {
    ctx.check_n(args.n)?;
    let tables: Vec<Table> = solve_all(args)?
        .into_iter()
        .map(|(f, sols)| figures::strength_table(format!("spectrum_{f}"), f, args.n, args.a, &sols))
        .collect();
    ctx.emit(&tables)
}

fn cmd_poly(ctx: &Ctx, args: &PolyArgs) -> Outcome {
    let s = &args.solve;
    ctx.check_n(s.n)?;
    let xs = figures::grid(args.xi_min, args.xi_max, args.points);
    let tables: Vec<Table> = solve_all(s)?
        .into_par_iter()
        .map(|(f, sols)| {
            let mut t = Table::new(format!("poly_{f}"), &["k", "xi", "w", "dw_dz", "d2w_dz2", "residual"])
                .meta("a", s.a)
                .meta("q", f.q(s.n))
                .meta("family", f)
                .meta("n", s.n)
                .meta("version", VERSION);
            for p in &sols {
                for &xi in &xs {
                    let d = p.derivs(xi);
                    t.push(vec![
                        p.k.into(),
                        xi.into(),
                        d.w.into(),
                        d.dw.into(),
                        d.d2w.into(),
                        p.ode_residual(xi).into(),
                    ]);
                }
            }
            t
        })
        .collect();
    ctx.emit(&tables)
}

fn root_parts(r: Root) -> (f64, f64) {
    match r {
        Root::Real(v) => (v, 0.0),
        Root::Imaginary(v) => (0.0, v),
    }
}

fn cmd_momenta(ctx: &Ctx, args: &MomentaArgs) -> Outcome {
    ctx.check_n(args.n)?;
    let d = derive_params(&args.laser.config())?;
    let solve = SolveArgs { family: args.family.clone(), n: args.n, a: d.a, k: Vec::new() };
    let shell = MassShell::from(args.mass_shell);
    let mut tables = Vec::new();
    for (f, sols) in solve_all(&solve)? {
        let mut t = Table::new(
            format!("momenta_{f}"),
            &[
                "k", "eta", "p_x", "p_hat_re", "p_hat_im", "p_xi_ratio_re", "p_xi_ratio_im", "evanescent",
                "gap_state", "p0_plus", "p0_minus", "p_y_plus", "p_y_minus",
            ],
        )
        .meta("a", d.a)
        .meta("q", f.q(args.n))
        .meta("family", f)
        .meta("n", args.n)
        .meta("p_z", args.p_z)
        .meta("mass_shell", format!("{shell:?}").to_lowercase())
        .meta("version", VERSION);
        for s in &sols {
            let st = momentum_spectrum(s.eta, &s.problem(), &d, args.p_z, shell);
            let (hr, hi) = root_parts(st.p_hat);
            let (xr, xi) = root_parts(st.p_xi_ratio);
            let pair = |v: Option<[f64; 2]>, i: usize| -> Cell {
                v.map_or(Cell::Text(String::new()), |v| v[i].into())
            };
            t.push(vec![
                s.k.into(),
                s.eta.into(),
                st.p_x.into(),
                hr.into(),
                hi.into(),
                xr.into(),
                xi.into(),
                st.evanescent.into(),
                st.gap_state.into(),
                pair(st.p0, 0),
                pair(st.p0, 1),
                pair(st.p_y, 0),
                pair(st.p_y, 1),
            ]);
        }
        tables.push(t);
    }
    ctx.emit(&tables)
}

fn cmd_wave(ctx: &Ctx, args: &WaveArgs) -> Outcome {
    ctx.check_n(args.n)?;
    let d = derive_params(&args.laser.config())?;
    let sol = solve_family(args.family, args.n, d.a)?
        .into_iter()
        .find(|s| s.k == args.k)
        .ok_or_else(|| Failure(2, format!("no solution with k = {} for {} n = {}", args.k, args.family, args.n)))?;
    let state = momentum_spectrum(sol.eta, &sol.problem(), &d, args.p_z, args.mass_shell.into());
    let opts = WaveOptions {
        hat_sign: match args.hat_sign {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        },
        allow_evanescent: args.allow_evanescent,
    };
    let mut t = Table::new(
        format!("wave_{}_n{}_k{}", args.family, args.n, args.k),
        &["xi", "ct", "y", "re", "im", "abs"],
    )
    .meta("a", d.a)
    .meta("q", sol.q())
    .meta("family", args.family)
    .meta("n", args.n)
    .meta("k", args.k)
    .meta("eta", sol.eta)
    .meta("x_hat", args.x_hat)
    .meta("evanescent", state.evanescent)
    .meta("version", VERSION);
    let one_minus = 1.0 - d.n_m * d.n_m;
    for xi in figures::grid(args.xi_min, args.xi_max, args.points) {
        // invert ξ = k₀(ct − n_m y), x̂ = k₀(y − n_m ct)/k_p
        let ct = (xi + d.n_m * d.kp * args.x_hat) / (d.k0 * one_minus);
        let y = args.x_hat * d.kp / d.k0 + d.n_m * ct;
        let phi = wavefunction(&sol, &state, &SpacetimePoint { ct, x: args.x, y, x3: args.x3 }, opts)?;
        t.push(vec![xi.into(), ct.into(), y.into(), phi.re.into(), phi.im.into(), phi.norm().into()]);
    }
    ctx.emit(&[t])
}

fn cmd_figures(ctx: &Ctx, args: &FigureArgs) -> Outcome {
    ctx.check_n(args.n)?;
    let cfg = FigureConfig { a: args.a, n: args.n, grid_points: args.points, ..Default::default() };
    let ids: Vec<u8> = if args.which.is_empty() { (1..=6).collect() } else { args.which.clone() };
    let per_figure: Vec<Vec<Table>> = ids
        .par_iter()
        .map(|&id| figures::figure(id, &cfg)?.map_err(Failure::from))
        .collect::<Result<_, _>>()?;
    ctx.emit(&per_figure.concat())
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let mut cfg = VerifyConfig { eta_perturbation: args.eta_perturbation, ..Default::default() };
    if !args.families.is_empty() {
        cfg.families = args.families.clone();
    }
    if let Some(n) = args.n {
        ctx.check_n(n)?;
        cfg.degrees = vec![n];
        cfg.orthogonality_degree = n;
    }
    let report = verify::run(&cfg)?;
    match ctx.format {
        Format::Json => ctx.emit_json("verify", &report)?,
        Format::Csv => {
            let mut t = Table::new("verify", &["check", "passed", "cases", "worst", "tolerance"])
                .meta("version", VERSION);
            for c in &report.checks {
                t.push(vec![c.name.as_str().into(), c.passed.into(), c.cases.into(), c.worst.into(), c.tolerance.into()]);
            }
            ctx.emit(&[t])?;
        }
    }
    if report.passed {
        Ok(())
    } else {
        let detail: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} ({})", c.name, c.failures.first().map_or("", String::as_str)))
            .collect();
        Err(Failure(1, format!("verification failed: {}", detail.join("; "))))
    }
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { out: cli.out, format: cli.format, n_cap: cli.n_cap };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    pool.install(|| match &cli.command {
        Command::Params(a) => cmd_params(&ctx, a),
        Command::Eigen(a) => cmd_eigen(&ctx, a),
        Command::Poly(a) => cmd_poly(&ctx, a),
        Command::Wave(a) => cmd_wave(&ctx, a),
        Command::Spectrum(a) => cmd_spectrum(&ctx, a),
        Command::Momenta(a) => cmd_momenta(&ctx, a),
        Command::Figures(a) => cmd_figures(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
    })
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pinrep::clifford::{anticommutator_residual, orthogonality_residual};
use pinrep::fields::io::{read_field, write_field};
use pinrep::fields::{
    bw_residual, evolve, fourier_majorana, hankel_majorana, inverse_fourier_majorana,
    inverse_hankel_majorana, FieldRep, RadialSphericalSpec, SphericalGrid, SpinorFieldGrid,
};
use pinrep::group::{covering_map, spin_element, BoostRotationParams};
use pinrep::linalg::{max_abs4, Mat4};
use pinrep::propagator::{
    causality_scan, default_ladder, reproduce_check, QuadratureSpec, DEFAULT_RADIAL_NODES,
};
use pinrep::rep::{build_w_mn, commutant, RepSpec, Subgroup};
use pinrep::special::cg::{clebsch_gordan, clebsch_gordan_exact, coupling_table, CouplingLabel};
use pinrep::{build_majorana_basis, CliffordBasis};
use report::{json_envelope, num, rows, Csv};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Real (Majorana) representation theory of the Lorentz and Poincaré groups.
#[derive(Debug, Parser)]
#[command(name = "pinrep", version = pinrep::VERSION)]
struct RunConfig {
    /// Seed for every sampled quantity; echoed in all output.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Majorana basis and its Clifford residuals (JSON).
    Basis,
    /// Spin element S for rotation θ and boost b, and its Lorentz image (JSON).
    Cover(CoverArgs),
    /// Commutant classification of a representation (JSON).
    Classify(ClassifyArgs),
    /// Clebsch-Gordan coefficient from doubled labels (JSON), or a table (CSV).
    Cg(CgArgs),
    /// Apply a transform to a field file (JSON report).
    Transform(TransformArgs),
    /// Spacelike propagator norms along a quadrature ladder (CSV).
    Propagator(PropagatorArgs),
    /// Time evolution of a field file (JSON report).
    Evolve(EvolveArgs),
    /// Seeded invariant suite over every module (JSON).
    Selftest,
}

#[derive(Debug, Args)]
struct CoverArgs {
    /// Rotation half-angles θ¹,θ²,θ³.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 0.0])]
    theta: Vec<f64>,
    /// Boost half-rapidities b¹,b²,b³.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0, 0.0, 0.0])]
    b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuiltinRep {
    Pinor,
    Vector,
    Pauli,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SubgroupArg {
    Full,
    Rotations,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, conflicts_with_all = ["m2", "n2"], required_unless_present = "m2")]
    rep: Option<BuiltinRep>,
    /// Doubled label 2m of W_(m,n).
    #[arg(long = "2m", requires = "n2")]
    m2: Option<u32>,
    /// Doubled label 2n of W_(m,n).
    #[arg(long = "2n", requires = "m2")]
    n2: Option<u32>,
    #[arg(long, value_enum, default_value = "full")]
    subgroup: SubgroupArg,
    /// Group samples in the commutant system (rechecked at twice this).
    #[arg(long, default_value_t = 32)]
    samples: usize,
}

#[derive(Debug, Args)]
struct CgArgs {
    #[arg(long = "2l", required_unless_present = "table")]
    l2: Option<i32>,
    #[arg(long = "2mu", allow_negative_numbers = true)]
    mu2: Option<i32>,
    #[arg(long = "2j")]
    j2: Option<i32>,
    #[arg(long = "2n", allow_negative_numbers = true)]
    n2: Option<i32>,
    #[arg(long = "2J")]
    jj2: Option<i32>,
    #[arg(long = "2nu", allow_negative_numbers = true)]
    nu2: Option<i32>,
    /// Total angular momentum J (e.g. 3/2, 1.5 or 2): dump every coupling as CSV.
    #[arg(long, conflicts_with_all = ["l2", "mu2", "j2", "n2", "jj2", "nu2"])]
    table: Option<String>,
    /// Largest doubled spin 2j in the table.
    #[arg(long = "2jmax", default_value_t = 3)]
    j_max2: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Fm,
    Ifm,
    Hm,
    Ihm,
    Evolve,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    op: TransformOp,
    /// Evolution time (op evolve only).
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    t: f64,
    /// Output field file (fm, ifm, evolve).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also compute round-trip and invariant residuals.
    #[arg(long)]
    report: bool,
    /// Angular cutoff for hm/ihm.
    #[arg(long, default_value_t = 8)]
    lmax: u32,
    /// Radial momentum nodes for hm/ihm.
    #[arg(long, default_value_t = 64)]
    n_radial: usize,
}

#[derive(Debug, Args)]
struct PropagatorArgs {
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 4.0])]
    radii: Vec<f64>,
    /// Quadrature rungs as p_max:σ pairs, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "4:2,8:4,16:8")]
    ladder: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_RADIAL_NODES)]
    n_radial: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Fm,
    Propagator,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, value_enum, default_value = "fm")]
    via: Via,
    /// Overrides the mass stored in the file.
    #[arg(long)]
    mass: Option<f64>,
    /// Output field file (via fm only).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Quadrature rungs for via propagator, as p_max:σ pairs.
    #[arg(long, value_delimiter = ',', default_value = "4:2,8:4,16:8")]
    ladder: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_RADIAL_NODES)]
    n_radial: usize,
}

enum CliError {
    Usage(String),
    Validation(String),
}

impl From<pinrep::Error> for CliError {
    fn from(e: pinrep::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

type CliResult = Result<String, CliError>;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = match std::env::var("PINREP_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                eprintln!("error: PINREP_THREADS must be a positive integer, got {v:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => None,
    };
    let result = match threads {
        Some(n) => pinrep::par::with_threads(n, || dispatch(&cfg)),
        None => dispatch(&cfg),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cfg: &RunConfig) -> CliResult {
    let basis = build_majorana_basis();
    let seed = cfg.seed;
    match &cfg.command {
        Command::Basis => basis_cmd(&basis, seed),
        Command::Cover(a) => cover_cmd(a, &basis, seed),
        Command::Classify(a) => classify_cmd(a, &basis, seed),
        Command::Cg(a) => cg_cmd(a, seed),
        Command::Transform(a) => transform_cmd(a, &basis, seed),
        Command::Propagator(a) => propagator_cmd(a, &basis, seed),
        Command::Evolve(a) => evolve_cmd(a, &basis, seed),
        Command::Selftest => {
            let r = pinrep::selftest::run_selftest(seed)?;
            let text = json_envelope("selftest", seed, &r);
            if r.passed {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Validation("selftest failed".into()))
            }
        }
    }
}

fn basis_cmd(b: &CliffordBasis, seed: u64) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        igamma: Vec<Vec<[f64; 4]>>,
        igamma5: Vec<[f64; 4]>,
        anticommutator_residual: f64,
        orthogonality_residual: f64,
        tolerance: f64,
    }
    Ok(json_envelope(
        "basis",
        seed,
        Out {
            igamma: b.igamma.iter().map(rows).collect(),
            igamma5: rows(&b.igamma5),
            anticommutator_residual: anticommutator_residual(b),
            orthogonality_residual: orthogonality_residual(b),
            tolerance: 0.0,
        },
    ))
}

fn cover_cmd(a: &CoverArgs, b: &CliffordBasis, seed: u64) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        theta: [f64; 3],
        b: [f64; 3],
        s: Vec<[f64; 4]>,
        lambda: Vec<[f64; 4]>,
        metric_residual: f64,
        conjugation_residual: f64,
        det_lambda: f64,
        tolerance: f64,
    }
    let params = BoostRotationParams {
        theta: triple(&a.theta)?,
        b: triple(&a.b)?,
    };
    if params.theta.iter().chain(&params.b).any(|x| !x.is_finite()) {
        return Err(CliError::Validation("θ and b must be finite".into()));
    }
    let s = spin_element(&params, b);
    let l = covering_map(&s, b)?;
    let inv = *s.inverse().matrix();
    let mut conj = 0.0_f64;
    for mu in 0..4 {
        let lhs = inv * b.g(mu) * s.matrix();
        let rhs = (0..4).fold(Mat4::zeros(), |acc, nu| {
            acc + b.g(nu) * l.matrix()[(mu, nu)]
        });
        conj = conj.max(max_abs4(&(lhs - rhs)));
    }
    Ok(json_envelope(
        "cover",
        seed,
        Out {
            theta: params.theta,
            b: params.b,
            s: rows(s.matrix()),
            lambda: rows(l.matrix()),
            metric_residual: l.metric_residual(),
            conjugation_residual: conj,
            det_lambda: l.matrix().determinant(),
            tolerance: 1e-10,
        },
    ))
}

fn triple(v: &[f64]) -> Result<[f64; 3], CliError> {
    v.try_into().map_err(|_| {
        CliError::Usage(format!(
            "expected three comma-separated values, got {}",
            v.len()
        ))
    })
}

fn classify_cmd(a: &ClassifyArgs, b: &CliffordBasis, seed: u64) -> CliResult {
    #[derive(Serialize)]
    struct Out {
        rep: String,
        subgroup: &'static str,
        dimension: usize,
        kernel_dim: usize,
        class: String,
        samples: usize,
        kernel_dim_doubled: usize,
        singular_value_gap: f64,
        kernel_tolerance: f64,
    }
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let (name, rep) = match (a.rep, a.m2, a.n2) {
        (Some(BuiltinRep::Pinor), ..) => ("pinor".to_string(), RepSpec::pinor(b)),
        (Some(BuiltinRep::Vector), ..) => ("vector".to_string(), RepSpec::vector(b)),
        (Some(BuiltinRep::Pauli), ..) => ("pauli".to_string(), RepSpec::pauli_realified()),
        (None, Some(m2), Some(n2)) => (format!("W({m2}/2,{n2}/2)"), build_w_mn(m2, n2, b)?),
        _ => return Err(CliError::Usage("give --rep or both --2m and --2n".into())),
    };
    let (rep, subgroup) = match a.subgroup {
        SubgroupArg::Full => (rep, "full"),
        SubgroupArg::Rotations => (rep.restricted(Subgroup::Rotations), "rotations"),
    };
    let c = commutant(&rep, a.samples, seed)?;
    let doubled = commutant(&rep, 2 * a.samples, seed.wrapping_add(1))?;
    if doubled.kernel_dim != c.kernel_dim {
        return Err(CliError::Validation(format!(
            "kernel dimension not stable under doubling samples: {} vs {}",
            c.kernel_dim, doubled.kernel_dim
        )));
    }
    Ok(json_envelope(
        "classify",
        seed,
        Out {
            rep: name,
            subgroup,
            dimension: rep.dim,
            kernel_dim: c.kernel_dim,
            class: format!("{:?}", c.kind),
            samples: a.samples,
            kernel_dim_doubled: doubled.kernel_dim,
            singular_value_gap: c.gap,
            kernel_tolerance: 1e-8,
        },
    ))
}

/// "3/2", "1.5" or "2" → doubled integer.
fn parse_doubled(s: &str) -> Result<i32, CliError> {
    let bad = || CliError::Usage(format!("cannot read angular momentum {s:?}"));
    let x = match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (f64, f64) = (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            );
            p / q
        }
        None => s.trim().parse::<f64>().map_err(|_| bad())?,
    };
    let d = 2.0 * x;
    if !(d >= 0.0 && d.fract() == 0.0 && d <= 16.0) {
        return Err(CliError::Validation(format!(
            "J = {s} must be a non-negative multiple of 1/2, at most 8"
        )));
    }
    Ok(d as i32)
}

fn check_pair(name: &str, j2: i32, m2: i32) -> Result<(), CliError> {
    if !(0..=16).contains(&j2) || m2.abs() > j2 || (j2 - m2) % 2 != 0 {
        return Err(CliError::Validation(format!(
            "label {name} = ({j2}/2, {m2}/2) needs 0 ≤ 2j ≤ 16, |2m| ≤ 2j and matching parity"
        )));
    }
    Ok(())
}

fn cg_cmd(a: &CgArgs, seed: u64) -> CliResult {
    if let Some(t) = &a.table {
        let jj2 = parse_doubled(t)?;
        if !(0..=16).contains(&a.j_max2) {
            return Err(CliError::Validation("--2jmax must lie in 0..=16".into()));
        }
        let mut csv = Csv::new(
            "cg",
            seed,
            &[
                ("2J", jj2.to_string()),
                ("2jmax", a.j_max2.to_string()),
                ("tolerance", num(1e-12)),
            ],
            &["2l", "2mu", "2j", "2n", "2J", "2nu", "value", "residual"],
        );
        for (c, v) in coupling_table(jj2, a.j_max2) {
            csv.row(&[
                c.l2.to_string(),
                c.mu2.to_string(),
                c.j2.to_string(),
                c.n2.to_string(),
                c.jj2.to_string(),
                c.nu2.to_string(),
                num(v),
                num(exact_residual(&c, v)),
            ]);
        }
        return Ok(csv.finish());
    }
    let need = |x: Option<i32>, n: &str| x.ok_or_else(|| CliError::Usage(format!("missing --{n}")));
    let (l2, mu2, j2, n2, jj2, nu2) = (
        need(a.l2, "2l")?,
        need(a.mu2, "2mu")?,
        need(a.j2, "2j")?,
        need(a.n2, "2n")?,
        need(a.jj2, "2J")?,
        need(a.nu2, "2nu")?,
    );
    check_pair("(l, μ)", l2, mu2)?;
    check_pair("(j, n)", j2, n2)?;
    check_pair("(J, ν)", jj2, nu2)?;
    let c = CouplingLabel::new(l2, mu2, j2, n2, jj2, nu2);
    let v = if c.is_valid() {
        clebsch_gordan(&c)
    } else {
        0.0
    };
    #[derive(Serialize)]
    struct Out {
        labels_doubled: [i32; 6],
        value: f64,
        selection_rules_hold: bool,
        residual: f64,
        tolerance: f64,
    }
    Ok(json_envelope(
        "cg",
        seed,
        Out {
            labels_doubled: [l2, mu2, j2, n2, jj2, nu2],
            value: v,
            selection_rules_hold: c.is_valid(),
            residual: if c.is_valid() {
                exact_residual(&c, v)
            } else {
                0.0
            },
            tolerance: 1e-12,
        },
    ))
}

/// |value² − exact squared coefficient|.
fn exact_residual(c: &CouplingLabel, v: f64) -> f64 {
    use num_traits::ToPrimitive;
    let (_, sq) = clebsch_gordan_exact(c);
    (v * v - sq.to_f64().unwrap_or(f64::NAN)).abs()
}

fn load(path: &PathBuf) -> Result<SpinorFieldGrid, CliError> {
    let f = std::fs::File::open(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(read_field(std::io::BufReader::new(f))?)
}

fn save(field: &SpinorFieldGrid, path: &PathBuf) -> Result<(), CliError> {
    let f = std::fs::File::create(path)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(f);
    write_field(field, &mut w)?;
    std::io::Write::flush(&mut w).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(())
}

#[derive(Serialize, Default)]
struct TransformOut {
    op: &'static str,
    j2: u32,
    mass: Option<f64>,
    n: usize,
    dx: f64,
    input_rep: &'static str,
    output_rep: &'static str,
    t: Option<f64>,
    output: Option<String>,
    parseval_residual: f64,
    round_trip_residual: Option<f64>,
    bargmann_wigner_residual: Option<f64>,
    tolerance: f64,
}

fn transform_cmd(a: &TransformArgs, b: &CliffordBasis, seed: u64) -> CliResult {
    let field = load(&a.input)?;
    let grid = field.cartesian()?;
    let mut out = TransformOut {
        j2: field.j2,
        mass: field.mass,
        n: grid.n,
        dx: grid.dx,
        input_rep: field.rep.tag(),
        tolerance: 1e-8,
        ..Default::default()
    };
    if a.out.is_some() && matches!(a.op, TransformOp::Hm | TransformOp::Ihm) {
        return Err(CliError::Usage(
            "spherical fields cannot be written to a field file; drop --out".into(),
        ));
    }
    if a.op != TransformOp::Evolve && a.t != 0.0 {
        return Err(CliError::Usage("--t applies to --op evolve only".into()));
    }
    let result = match a.op {
        TransformOp::Fm => {
            out.op = "fm";
            let hat = fourier_majorana(&field, b)?;
            out.parseval_residual = relative_norm_change(&hat, &field);
            if a.report {
                out.round_trip_residual =
                    Some(inverse_fourier_majorana(&hat, b)?.relative_distance(&field));
            }
            Some(hat)
        }
        TransformOp::Ifm => {
            out.op = "ifm";
            let x = inverse_fourier_majorana(&field, b)?;
            out.parseval_residual = relative_norm_change(&x, &field);
            if a.report {
                out.round_trip_residual = Some(fourier_majorana(&x, b)?.relative_distance(&field));
            }
            Some(x)
        }
        TransformOp::Evolve => {
            out.op = "evolve";
            out.t = Some(a.t);
            let e = evolve(&field, a.t, b)?;
            out.parseval_residual = relative_norm_change(&e, &field);
            if a.report {
                out.round_trip_residual = Some(evolve(&e, -a.t, b)?.relative_distance(&field));
            }
            Some(e)
        }
        TransformOp::Hm | TransformOp::Ihm => {
            // resample onto a spherical product grid inscribed in the box
            field.require_rep(FieldRep::Coordinate)?;
            let sg = SphericalGrid::for_lmax(a.lmax, 2 * grid.n, grid.n as f64 * grid.dx / 2.0)?;
            let spec = RadialSphericalSpec::new(
                a.n_radial,
                std::f64::consts::PI / grid.dx,
                a.lmax,
                field.j2,
            )?;
            let sph = field.resample_spherical(sg.clone())?;
            let h = hankel_majorana(&sph, &spec, b)?;
            out.tolerance = 1e-3;
            if a.op == TransformOp::Hm {
                out.op = "hm";
                out.parseval_residual = relative_norm_change(&h, &sph);
                if a.report {
                    out.round_trip_residual =
                        Some(inverse_hankel_majorana(&h, &sg, b)?.relative_distance(&sph));
                }
            } else {
                out.op = "ihm";
                let back = inverse_hankel_majorana(&h, &sg, b)?;
                out.parseval_residual = relative_norm_change(&back, &h);
                if a.report {
                    out.round_trip_residual = Some(back.relative_distance(&sph));
                }
            }
            out.output_rep = if a.op == TransformOp::Hm {
                "sph"
            } else {
                "coord"
            };
            None
        }
    };
    if let Some(r) = result {
        out.output_rep = r.rep.tag();
        if a.report && r.j2 >= 2 && r.rep == FieldRep::Coordinate {
            out.bargmann_wigner_residual = Some(bw_residual(&r, b)?);
        }
        if let Some(p) = &a.out {
            save(&r, p)?;
            out.output = Some(p.display().to_string());
        }
    }
    Ok(json_envelope("transform", seed, out))
}

fn relative_norm_change(a: &SpinorFieldGrid, b: &SpinorFieldGrid) -> f64 {
    let nb = b.norm();
    if nb == 0.0 {
        a.norm()
    } else {
        (a.norm() - nb).abs() / nb
    }
}

fn parse_ladder(items: &[String], n_radial: usize) -> Result<Vec<QuadratureSpec>, CliError> {
    if items.is_empty() {
        return Ok(default_ladder());
    }
    items
        .iter()
        .map(|s| {
            let (p, w) = s
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("ladder rung {s:?} is not p_max:σ")))?;
            let p: f64 = p
                .parse()
                .map_err(|_| CliError::Usage(format!("bad p_max in {s:?}")))?;
            let w: f64 = w
                .parse()
                .map_err(|_| CliError::Usage(format!("bad σ in {s:?}")))?;
            Ok(QuadratureSpec::new(p, n_radial, w)?)
        })
        .collect()
}

fn propagator_cmd(a: &PropagatorArgs, b: &CliffordBasis, seed: u64) -> CliResult {
    if !(a.mass >= 0.0 && a.mass.is_finite()) {
        return Err(CliError::Validation(format!(
            "mass must be finite and ≥ 0, got {}",
            a.mass
        )));
    }
    if a.radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(CliError::Validation(
            "radii must be positive (r = 0 lies on the cone)".into(),
        ));
    }
    let ladder = parse_ladder(&a.ladder, a.n_radial)?;
    let table = causality_scan(&a.radii, a.mass, &ladder, b)?;
    let mut csv = Csv::new(
        "propagator",
        seed,
        &[
            ("mass", num(a.mass)),
            ("t", num(0.0)),
            ("n_radial", a.n_radial.to_string()),
            ("suppression_per_rung", num(5.0)),
        ],
        &[
            "radius",
            "rung",
            "p_max",
            "regulator_width",
            "normalized_norm",
            "ratio_to_previous_rung",
        ],
    );
    let mut prev: Option<(f64, f64)> = None;
    for row in &table {
        let ratio = match prev {
            Some((r, v)) if r == row.radius && row.normalized_norm > 0.0 => v / row.normalized_norm,
            _ => f64::NAN,
        };
        csv.row(&[
            num(row.radius),
            row.rung.to_string(),
            num(row.p_max),
            num(row.regulator_width),
            num(row.normalized_norm),
            if ratio.is_nan() {
                String::new()
            } else {
                num(ratio)
            },
        ]);
        prev = Some((row.radius, row.normalized_norm));
    }
    Ok(csv.finish())
}

fn evolve_cmd(a: &EvolveArgs, b: &CliffordBasis, seed: u64) -> CliResult {
    let mut field = load(&a.input)?;
    if let Some(m) = a.mass {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(CliError::Validation(format!(
                "mass must be finite and ≥ 0, got {m}"
            )));
        }
        field.mass = Some(m);
    }
    match a.via {
        Via::Fm => {
            let e = evolve(&field, a.t, b)?;
            let mut out = TransformOut {
                op: "evolve",
                j2: field.j2,
                mass: field.mass,
                n: field.cartesian()?.n,
                dx: field.cartesian()?.dx,
                input_rep: field.rep.tag(),
                output_rep: e.rep.tag(),
                t: Some(a.t),
                parseval_residual: relative_norm_change(&e, &field),
                round_trip_residual: Some(evolve(&e, -a.t, b)?.relative_distance(&field)),
                tolerance: 1e-8,
                ..Default::default()
            };
            if let Some(p) = &a.out {
                save(&e, p)?;
                out.output = Some(p.display().to_string());
            }
            Ok(json_envelope("evolve", seed, out))
        }
        Via::Propagator => {
            if a.out.is_some() {
                return Err(CliError::Usage("--out applies to --via fm only".into()));
            }
            let mass = field.require_mass()?;
            let ladder = parse_ladder(&a.ladder, a.n_radial)?;
            #[derive(Serialize)]
            struct Rung {
                p_max: f64,
                regulator_width: f64,
                relative_error: f64,
            }
            #[derive(Serialize)]
            struct Out {
                via: &'static str,
                t: f64,
                mass: f64,
                rungs: Vec<Rung>,
                monotone: bool,
                tolerance: f64,
            }
            let mut rungs = Vec::new();
            for q in &ladder {
                rungs.push(Rung {
                    p_max: q.p_max,
                    regulator_width: q.regulator_width,
                    relative_error: reproduce_check(&field, a.t, mass, q, b)?,
                });
            }
            let monotone = rungs
                .windows(2)
                .all(|w| w[1].relative_error <= w[0].relative_error);
            Ok(json_envelope(
                "evolve",
                seed,
                Out {
                    via: "propagator",
                    t: a.t,
                    mass,
                    rungs,
                    monotone,
                    tolerance: 5e-2,
                },
            ))
        }
    }
}

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use qchannels_core::channel::{KrausSet, ValidationReport};
use qchannels_core::dynamics::{
    bloch_image, increase_duration, non_markovianity_measure, run_trajectory, EntanglementMeasure, TrajectoryFamily,
};
use qchannels_core::families::{self, Family, FamilyParams};
use qchannels_core::io::{channel_from_json, channel_to_json, matrix_from_json};
use qchannels_core::measures::{
    choi_state, classical_capacity_lower_bound, coherent_information, computational_basis, concurrence,
    concurrence_closed_form, map_entropy, nats_to_bits, negativity, negativity_closed_form,
};
use qchannels_core::{ComplexMatrix, DensityMatrix, Error};

use crate::output::{csv, emit, write_atomic};

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Param(String),
    Format(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Param(_) => 2,
            CliError::Format(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Param(m) => write!(f, "invalid parameters: {m}"),
            CliError::Format(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) => CliError::Format(e.to_string()),
            _ if e.is_numerical() => CliError::Numerical(e.to_string()),
            _ => CliError::Param(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn write_out(path: Option<&Path>, contents: &str) -> CliResult<()> {
    emit(path, contents).map_err(|e| CliError::Param(format!("cannot write output: {e}")))
}

/// Options shared by every command.
#[derive(Debug, Clone)]
pub struct Global {
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub bits: bool,
}

impl Global {
    fn entropy(&self, nats: f64) -> f64 {
        if self.bits {
            nats_to_bits(nats)
        } else {
            nats
        }
    }

    fn unit(&self) -> &'static str {
        if self.bits {
            "bits"
        } else {
            "nats"
        }
    }
}

pub fn load_unitary(source: &str, n: usize) -> CliResult<ComplexMatrix> {
    match source {
        "identity" => Ok(ComplexMatrix::identity(n)),
        "fourier" => Ok(families::fourier(n)),
        path => {
            let text =
                fs::read_to_string(path).map_err(|e| CliError::Format(format!("cannot read W from {path}: {e}")))?;
            Ok(matrix_from_json(&text)?)
        }
    }
}

pub struct FamilyArgs {
    pub id: String,
    pub theta: f64,
    pub phi: f64,
    pub n: usize,
    pub p: f64,
    pub w: String,
}

pub fn family(global: &Global, args: &FamilyArgs) -> CliResult<()> {
    let family: Family = args.id.parse().map_err(|e: Error| CliError::Param(e.to_string()))?;
    let dim = if family == Family::Qutrit { 3 } else { args.n };
    let w = match family {
        Family::Qutrit | Family::Ndim => Some(load_unitary(&args.w, dim)?),
        _ => None,
    };
    let params = FamilyParams {
        theta: args.theta,
        phi: args.phi,
        w,
        dim,
        p: args.p,
    };
    let generated = families::build(family, &params)?;
    let report = ValidationReport::of(&generated.channel, global.tol)?;
    let mut text = channel_to_json(&generated.channel, Some(report));
    text.push('\n');
    write_out(global.out.as_deref(), &text)
}

fn null_or(value: CliResult<f64>, global: &Global) -> CliResult<Value> {
    value.map(|v| json!(global.entropy(v)))
}

fn analysis(global: &Global, channel: &KrausSet) -> CliResult<Map<String, Value>> {
    let report = ValidationReport::of(channel, global.tol)?;
    let mut m = Map::new();
    m.insert("n_in".into(), json!(channel.n_in()));
    m.insert("n_out".into(), json!(channel.n_out()));
    m.insert("kraus_count".into(), json!(channel.len()));
    m.insert("cptp_residual".into(), json!(report.cptp_residual));
    m.insert("cptp".into(), json!(report.cptp));
    m.insert("selfcomplementary".into(), json!(report.selfcomplementary));
    m.insert("choi_rank".into(), json!(report.choi_rank));
    let unit = global.unit();
    let keys = [
        format!("map_entropy_{unit}"),
        format!("coherent_information_{unit}"),
        format!("chi_bound_{unit}"),
    ];
    if report.cptp {
        let center = DensityMatrix::maximally_mixed(channel.n_in());
        let values = [
            map_entropy(channel).map_err(CliError::from),
            coherent_information(channel, &center).map_err(CliError::from),
            classical_capacity_lower_bound(channel, &computational_basis(channel.n_in())).map_err(CliError::from),
        ];
        for (k, v) in keys.into_iter().zip(values) {
            m.insert(k, null_or(v, global)?);
        }
    } else {
        // measures are only defined for channels
        for k in keys {
            m.insert(k, Value::Null);
        }
    }
    Ok(m)
}

pub fn analyze(global: &Global, input: &Path) -> CliResult<()> {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::Format(format!("cannot read {}: {e}", input.display())))?;
    let channel = channel_from_json(&text)?;
    let mut out = serde_json::to_string_pretty(&Value::Object(analysis(global, &channel)?)).expect("plain data");
    out.push('\n');
    write_out(global.out.as_deref(), &out)
}

pub struct SweepArgs {
    pub family: String,
    pub phi: f64,
    pub points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
}

fn qubit_family(id: &str) -> CliResult<Family> {
    match id.parse::<Family>() {
        Ok(f @ (Family::QubitA | Family::QubitB)) => Ok(f),
        _ => Err(CliError::Param(format!("'{id}' is not a qubit family (use qubit-a or qubit-b)"))),
    }
}

fn qubit_member(family: Family, theta: f64, phi: f64) -> CliResult<KrausSet> {
    Ok(match family {
        Family::QubitA => families::qubit_family_a(theta, phi)?,
        _ => families::qubit_family_b(theta, phi)?,
    })
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

fn sweep_row(family: Family, theta: f64, phi: f64, global: &Global) -> CliResult<Vec<f64>> {
    let channel = qubit_member(family, theta, phi)?;
    let w = choi_state(&channel)?;
    let closed = match concurrence_closed_form(theta) {
        Ok(v) => v,
        Err(Error::ClosedFormUndefined { .. } | Error::OutOfRange { .. }) => f64::NAN,
        Err(e) => return Err(e.into()),
    };
    let chi = classical_capacity_lower_bound(&channel, &computational_basis(2))?;
    Ok(vec![
        theta,
        negativity(&w, (2, 2))?,
        negativity_closed_form(theta),
        concurrence(&w)?,
        closed,
        global.entropy(chi),
        global.entropy(map_entropy(&channel)?),
    ])
}

pub fn sweep(global: &Global, args: &SweepArgs) -> CliResult<()> {
    if args.points < 2 {
        return Err(CliError::Param("sweep needs at least 2 points".into()));
    }
    let family = qubit_family(&args.family)?;
    let rows = uniform_grid(args.theta_min, args.theta_max, args.points)
        .into_par_iter()
        .map(|t| sweep_row(family, t, args.phi, global))
        .collect::<CliResult<Vec<_>>>()?;
    let unit = global.unit();
    let chi = format!("chi_bound_{unit}");
    let entropy = format!("map_entropy_{unit}");
    let header = [
        "theta",
        "negativity_numeric",
        "negativity_closed",
        "concurrence_numeric",
        "concurrence_closed",
        chi.as_str(),
        entropy.as_str(),
    ];
    write_out(global.out.as_deref(), &csv(&header, &rows))
}

pub struct BlochArgs {
    pub family: String,
    pub theta: f64,
    pub phi: f64,
    pub points: usize,
    pub batch: bool,
    pub identity: bool,
}

fn bloch_csv(channel: &KrausSet, points: usize) -> CliResult<String> {
    let rows: Vec<Vec<f64>> = bloch_image(channel, points)?.iter().map(|p| vec![p.x, p.y, p.z]).collect();
    Ok(csv(&["x", "y", "z"], &rows))
}

pub fn bloch(global: &Global, args: &BlochArgs) -> CliResult<()> {
    if args.points == 0 {
        return Err(CliError::Param("bloch needs at least 1 point".into()));
    }
    if args.identity {
        return write_out(global.out.as_deref(), &bloch_csv(&KrausSet::identity(2), args.points)?);
    }
    let family = qubit_family(&args.family)?;
    if !args.batch {
        let channel = qubit_member(family, args.theta, args.phi)?;
        return write_out(global.out.as_deref(), &bloch_csv(&channel, args.points)?);
    }
    let dir = global
        .out
        .as_deref()
        .ok_or_else(|| CliError::Param("--batch needs --out DIR".into()))?;
    for k in 0..=8 {
        let theta = if k == 8 { PI } else { k as f64 * PI / 8.0 };
        let channel = qubit_member(family, theta, args.phi)?;
        let path = dir.join(format!("bloch_k{k}.csv"));
        write_atomic(&path, &bloch_csv(&channel, args.points)?)
            .map_err(|e| CliError::Param(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

pub struct DynamicsArgs {
    pub family: String,
    pub phi: f64,
    pub omega: f64,
    pub t_max: f64,
    pub steps: usize,
    pub summary: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary {
    family: String,
    omega: f64,
    t_max: f64,
    n_steps: usize,
    records: usize,
    theta_wrapped_mod_pi: bool,
    non_markovianity_positive_variation: f64,
    increase_duration: f64,
    concurrence_positive_variation: f64,
    concurrence_increase_duration: f64,
    max_abs_coherent_information: f64,
}

pub fn dynamics(global: &Global, args: &DynamicsArgs) -> CliResult<()> {
    let family = match args.family.parse::<Family>() {
        Ok(Family::QubitA) => TrajectoryFamily::QubitA { phi: args.phi },
        Ok(Family::QubitB) => TrajectoryFamily::QubitB { phi: args.phi },
        Ok(Family::AmplitudeDamping) => TrajectoryFamily::AmplitudeDamping,
        _ => {
            return Err(CliError::Param(format!(
                "'{}' has no trajectory (use qubit-a, qubit-b or ad)",
                args.family
            )))
        }
    };
    let traj = run_trajectory(family, args.omega, args.t_max, args.steps)?;
    let rows: Vec<Vec<f64>> = traj
        .records
        .iter()
        .map(|r| vec![r.t, r.theta, r.negativity, r.concurrence, global.entropy(r.map_entropy)])
        .collect();
    let entropy = format!("map_entropy_{}", global.unit());
    let header = ["t", "theta", "negativity", "concurrence", entropy.as_str()];

    let summary = Summary {
        family: args.family.clone(),
        omega: args.omega,
        t_max: args.t_max,
        n_steps: args.steps,
        records: traj.records.len(),
        theta_wrapped_mod_pi: !matches!(family, TrajectoryFamily::AmplitudeDamping),
        non_markovianity_positive_variation: non_markovianity_measure(&traj, EntanglementMeasure::Negativity),
        increase_duration: increase_duration(&traj, EntanglementMeasure::Negativity),
        concurrence_positive_variation: non_markovianity_measure(&traj, EntanglementMeasure::Concurrence),
        concurrence_increase_duration: increase_duration(&traj, EntanglementMeasure::Concurrence),
        max_abs_coherent_information: global.entropy(
            traj.records
                .iter()
                .map(|r| r.coherent_information.abs())
                .fold(0.0, f64::max),
        ),
    };
    let mut summary_text = serde_json::to_string_pretty(&summary).expect("plain data");
    summary_text.push('\n');

    write_out(global.out.as_deref(), &csv(&header, &rows))?;
    let summary_path = args
        .summary
        .clone()
        .or_else(|| global.out.as_ref().map(|p| p.with_extension("json")));
    match summary_path {
        Some(p) => write_out(Some(&p), &summary_text),
        None => {
            eprint!("{summary_text}");
            Ok(())
        }
    }
}

/// Default sweep upper end.
pub const SWEEP_THETA_MAX: f64 = FRAC_PI_2;

use std::fs::{self, OpenOptions};
use std::io::{BufReader, Write};
use std::time::Instant;

use serde::Serialize;

use super::output::{round_significant, to_report_json};
use super::{Cli, Command, Direction, Failure, Format, GlobalArgs, Penalty, SearchArgs, Stage, EXIT_OK, EXIT_VERIFY};
use crate::entanglement::{entanglement_report, gte_criterion, is_ppt, negativity};
use crate::lhs::{
    certify_unsteerable_shrunk, critical_radius_bounds, detect_steerable, one_way_report_pair, OneWayReport,
    RadiusParams, RadiusReport, SpherePolytope, Verdict,
};
use crate::linalg::DensityMatrix;
use crate::search::{
    multi_restart_resume, read_log, two_stage_search, GapPenalty, NMParams, ObjectiveSpec, Parameterization,
    RestartRecord,
};
use crate::states::{
    reduce_pair, singlet, swap_operator, werner, BuiltinState, LoadedState, PartyPair, StateFile, TriFamilyState,
};
use crate::steering::{bloch_vectors_csv, one_way_gap_scenario1, Scenario1Report, SteeringFunctional};

type CmdResult = std::result::Result<i32, Failure>;

pub(super) fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let g = &cli.global;
    if g.fig_data.is_some() && !matches!(cli.command, Command::Scenario1 { .. }) {
        return Err(Failure::input("--fig-data is only produced by scenario1"));
    }
    if g.resume.is_some() && !matches!(cli.command, Command::Search(_)) {
        return Err(Failure::input("--resume only applies to search"));
    }
    match &cli.command {
        Command::Scenario1 { verify } => scenario1(g, *verify, stdout),
        Command::Scenario2 { certify } => scenario2(g, *certify, stdout),
        Command::Radius { direction } => radius(g, *direction, stdout),
        Command::Search(args) => search(g, args, stdout, stderr),
        Command::Entanglement => entanglement(g, stdout),
        Command::Calibrate { .. } => calibrate(g, stdout),
        Command::Table { format, radius } => table(g, *format, *radius, stdout),
    }
}

fn emit(g: &GlobalArgs, stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// A loaded `--state` with the label it was given.
struct Input {
    label: String,
    state: LoadedState,
}

impl Input {
    fn load(g: &GlobalArgs, default: &str) -> Result<Self, Failure> {
        let label = g.state.clone().unwrap_or_else(|| default.to_string());
        let state = match label.strip_prefix("builtin:") {
            Some(id) => {
                let b: BuiltinState = id.parse()?;
                LoadedState::Family(TriFamilyState::new(b.state()?, 1.0)?)
            }
            None => StateFile::read(label.as_ref())?.load()?,
        };
        Ok(Self { label, state })
    }

    /// Applies `--p`. Values above 1 are only accepted when `allow_cap` is set
    /// and are returned as a PSD cap instead of a mixing weight.
    fn with_weight(mut self, p: Option<f64>, allow_cap: bool) -> Result<(Self, Option<f64>), Failure> {
        let Some(p) = p else { return Ok((self, None)) };
        if allow_cap && p > 1.0 {
            return Ok((self, Some(p)));
        }
        match &mut self.state {
            LoadedState::Family(f) => *f = TriFamilyState::new(f.psi1, p)?,
            LoadedState::Density(_) => return Err(Failure::input("--p applies to family states only")),
        }
        Ok((self, None))
    }

    fn p(&self) -> Option<f64> {
        match &self.state {
            LoadedState::Family(f) => Some(f.p),
            LoadedState::Density(_) => None,
        }
    }

    fn full(&self) -> Result<DensityMatrix, Failure> {
        Ok(match &self.state {
            LoadedState::Family(f) => f.density()?,
            LoadedState::Density(rho) => rho.clone(),
        })
    }

    /// `ρ_AB`: the family pair, a two-qubit input as is, or the first two
    /// qubits of a three-qubit input.
    fn pair(&self) -> Result<DensityMatrix, Failure> {
        match &self.state {
            LoadedState::Family(f) => Ok(f.pair(PartyPair::AB)?),
            LoadedState::Density(rho) => match rho.dims() {
                [2, 2] => Ok(rho.clone()),
                [2, 2, 2] => Ok(reduce_pair(rho, PartyPair::AB)?),
                dims => Err(Failure::input(format!("expected two or three qubits, got dims {dims:?}"))),
            },
        }
    }
}

fn radius_params(g: &GlobalArgs, cap: Option<f64>) -> Result<RadiusParams, Failure> {
    let mut params = RadiusParams {
        meas_level: g.meas_level,
        hidden_level: g.hidden_level,
        bisection_tol: g.tol,
        ..RadiusParams::default()
    };
    if let Some(cap) = cap {
        params.psd_cap = cap;
    }
    params.validate()?;
    Ok(params)
}

#[derive(Serialize)]
struct Scenario1Output {
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(flatten)]
    report: Scenario1Report,
    negativity_ab: f64,
    verdict: &'static str,
}

fn scenario1_verdict(report: &Scenario1Report) -> &'static str {
    match (report.violated.ab, report.violated.ba) {
        (true, false) => "one-way",
        (false, true) => "one-way-reversed",
        _ => "symmetric",
    }
}

fn scenario1(g: &GlobalArgs, verify: bool, stdout: &mut dyn Write) -> CmdResult {
    let (input, _) = Input::load(g, "builtin:sc1")?.with_weight(g.p, false)?;
    let rho = input.pair()?;
    let report = one_way_gap_scenario1(&rho, &SteeringFunctional::icosahedral())?;
    if let Some(path) = &g.fig_data {
        fs::write(path, bloch_vectors_csv(&report)?)?;
    }
    let verdict = scenario1_verdict(&report);
    let one_way = report.is_one_way();
    let out =
        Scenario1Output { p: input.p(), state: input.label, negativity_ab: negativity(&rho, &[0])?, verdict, report };
    emit(g, stdout, &to_report_json(&out))?;
    if verify && !one_way {
        return Err(Failure::verify(format!(
            "state is not one-way steerable on the icosahedral inequality ({verdict})"
        )));
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Scenario2Output {
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(flatten)]
    report: OneWayReport,
}

fn scenario2(g: &GlobalArgs, certify: bool, stdout: &mut dyn Write) -> CmdResult {
    let (input, cap) = Input::load(g, "builtin:b1")?.with_weight(g.p, true)?;
    let params = radius_params(g, cap)?;
    let report = one_way_report_pair(&input.pair()?, &params)?;
    let verdict = report.verdict;
    emit(g, stdout, &to_report_json(&Scenario2Output { p: input.p(), state: input.label, report }))?;
    if certify && verdict == Verdict::Refuted {
        return Err(Failure::verify("cyclic one-way steering refuted"));
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RadiusOutput {
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    direction: &'static str,
    #[serde(flatten)]
    report: RadiusReport,
}

fn radius(g: &GlobalArgs, direction: Direction, stdout: &mut dyn Write) -> CmdResult {
    let (input, cap) = Input::load(g, "builtin:b1")?.with_weight(g.p, true)?;
    let params = radius_params(g, cap)?;
    let rho_ab = input.pair()?;
    let (rho, direction) = match direction {
        Direction::Ab => (rho_ab, "AB"),
        Direction::Ba => (rho_ab.conjugate_by(&swap_operator()), "BA"),
    };
    let report = critical_radius_bounds(&rho, &params)?;
    emit(g, stdout, &to_report_json(&RadiusOutput { p: input.p(), state: input.label, direction, report }))?;
    Ok(EXIT_OK)
}

fn entanglement(g: &GlobalArgs, stdout: &mut dyn Write) -> CmdResult {
    let (input, _) = Input::load(g, "builtin:b3")?.with_weight(g.p, false)?;
    let report = entanglement_report(&input.full()?)?;
    let out = serde_json::json!({ "state": input.label, "p": input.p(), "report": report });
    emit(g, stdout, &to_report_json(&out))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Bracket {
    lower: f64,
    upper: f64,
    expected: f64,
    contains_expected: bool,
}

impl Bracket {
    fn new(lower: f64, upper: f64, expected: f64) -> Self {
        Self { lower, upper, expected, contains_expected: lower <= expected && expected <= upper }
    }
}

#[derive(Serialize)]
struct SweepRow {
    p: f64,
    negativity: f64,
    ppt: bool,
    steering: &'static str,
}

#[derive(Serialize)]
struct Calibration {
    entanglement: Bracket,
    steering: Bracket,
    radius: RadiusReport,
    sweep: Vec<SweepRow>,
}

const SWEEP_POINTS: usize = 21;

fn calibrate(g: &GlobalArgs, stdout: &mut dyn Write) -> CmdResult {
    let params = radius_params(g, None)?;
    let ppt = |p: f64| -> Result<bool, Failure> { Ok(is_ppt(&werner(p)?, &[0])?) };
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > params.bisection_tol {
        let mid = 0.5 * (lo + hi);
        if ppt(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let entanglement = Bracket::new(lo, hi, 1.0 / 3.0);

    let radius = critical_radius_bounds(&singlet(), &params)?;
    let steering = Bracket::new(radius.r_in, radius.r_out, 0.5);

    let meas = SpherePolytope::new(params.meas_level);
    let hidden = SpherePolytope::new(params.hidden_level);
    let dirs = meas.directions();
    let sweep = (0..SWEEP_POINTS)
        .map(|i| -> Result<SweepRow, Failure> {
            let p = i as f64 / (SWEEP_POINTS - 1) as f64;
            let rho = werner(p)?;
            // a shrunk model for W(p/η) certifies W(p) against all measurements
            let stretched = p / meas.eta();
            let steering = if detect_steerable(&rho, &dirs, &hidden)?.steerable {
                "steerable"
            } else if stretched <= 1.0 && certify_unsteerable_shrunk(&werner(stretched)?, &meas, &hidden)? {
                "unsteerable"
            } else {
                "undetermined"
            };
            Ok(SweepRow { p, negativity: negativity(&rho, &[0])?, ppt: is_ppt(&rho, &[0])?, steering })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let ok = entanglement.contains_expected && steering.contains_expected;
    emit(g, stdout, &to_report_json(&Calibration { entanglement, steering, radius, sweep }))?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

#[derive(Serialize)]
struct TableRow {
    state: &'static str,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "Q_AB")]
    q_ab: f64,
    #[serde(rename = "Q_BA")]
    q_ba: f64,
    scenario1: &'static str,
    negativity_ab: f64,
    negativity_a_bc: f64,
    gs_detected: bool,
    r_in_ab: Option<f64>,
    r_out_ab: Option<f64>,
    r_in_ba: Option<f64>,
    r_out_ba: Option<f64>,
    verdict: Option<&'static str>,
}

fn table_row(b: BuiltinState, p: f64, params: Option<&RadiusParams>) -> Result<TableRow, Failure> {
    let family = TriFamilyState::new(b.state()?, p)?;
    let rho3 = family.density()?;
    let rho = reduce_pair(&rho3, PartyPair::AB)?;
    let s1 = one_way_gap_scenario1(&rho, &SteeringFunctional::icosahedral())?;
    let radii = params.map(|params| one_way_report_pair(&rho, params)).transpose()?;
    let r = round_significant;
    Ok(TableRow {
        state: b.name(),
        l: r(s1.l),
        q_ab: r(s1.q_ab),
        q_ba: r(s1.q_ba),
        scenario1: scenario1_verdict(&s1),
        negativity_ab: r(negativity(&rho, &[0])?),
        negativity_a_bc: r(negativity(&rho3, &[0])?),
        gs_detected: gte_criterion(&rho3)?.detected,
        r_in_ab: radii.as_ref().map(|x| r(x.ab.r_in)),
        r_out_ab: radii.as_ref().map(|x| r(x.ab.r_out)),
        r_in_ba: radii.as_ref().map(|x| r(x.ba.r_in)),
        r_out_ba: radii.as_ref().map(|x| r(x.ba.r_out)),
        verdict: radii.as_ref().map(|x| x.verdict.as_str()),
    })
}

fn table(g: &GlobalArgs, format: Format, with_radius: bool, stdout: &mut dyn Write) -> CmdResult {
    if g.state.is_some() {
        return Err(Failure::input("table always covers every builtin state"));
    }
    let p = g.p.unwrap_or(1.0);
    let params = if with_radius { Some(radius_params(g, None)?) } else { None };
    let rows =
        BuiltinState::ALL.into_iter().map(|b| table_row(b, p, params.as_ref())).collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Json => to_report_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(|e| Failure::input(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::input(e.to_string()))?).expect("csv is UTF-8")
        }
    };
    emit(g, stdout, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SearchSummary {
    objective: ObjectiveSpec,
    restarts: usize,
    seed: u64,
    best_q: f64,
    best_coeffs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prefilter_best_q: Option<f64>,
    wall_time_secs: f64,
}

fn jsonl(records: &[RestartRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
}

fn search(g: &GlobalArgs, args: &SearchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    if g.state.is_some() || g.p.is_some() {
        return Err(Failure::input("search explores its own states; --state and --p do not apply"));
    }
    let restarts = g.restarts.unwrap_or(500);
    let nm = NMParams { max_iterations: args.max_iterations, ..NMParams::default() };
    let param: Parameterization = args.parameterization.into();
    let penalty = match args.penalty {
        Penalty::Balanced => GapPenalty::BALANCED,
        Penalty::Asymmetric => GapPenalty::ASYMMETRIC,
    };
    let full = || -> Result<ObjectiveSpec, Failure> {
        Ok(ObjectiveSpec::scenario2_full(param, penalty, radius_params(g, None)?))
    };
    let spec = match (args.scenario, args.stage) {
        (1, _) => ObjectiveSpec::scenario1(),
        (_, Stage::Prefilter) => ObjectiveSpec::scenario2_prefilter(param),
        (_, Stage::Full) => full()?,
        (_, Stage::TwoStage) => {
            if g.resume.is_some() {
                return Err(Failure::input("--resume needs a single-stage search"));
            }
            let pre = ObjectiveSpec::scenario2_prefilter(param);
            let full = full()?;
            let start = Instant::now();
            let r = two_stage_search(&pre, &full, restarts, args.top, g.seed, &nm)?;
            emit(g, stdout, &jsonl(&r.full.log))?;
            let summary = SearchSummary {
                objective: full,
                restarts,
                seed: g.seed,
                best_q: r.full.best_q,
                best_coeffs: r.full.best_coeffs.clone(),
                prefilter_best_q: Some(r.prefilter.best_q),
                wall_time_secs: start.elapsed().as_secs_f64(),
            };
            return finish_search(args, summary, stderr);
        }
    };

    let previous = match &g.resume {
        Some(path) if path.exists() => read_log(BufReader::new(fs::File::open(path)?))?,
        _ => Vec::new(),
    };
    let result = multi_restart_resume(&spec, restarts, g.seed, &nm, &previous)?;
    match (&g.out, &g.resume) {
        (None, Some(path)) => {
            let fresh: Vec<RestartRecord> =
                result.log.iter().filter(|r| !previous.iter().any(|p| p.restart == r.restart)).cloned().collect();
            OpenOptions::new().create(true).append(true).open(path)?.write_all(jsonl(&fresh).as_bytes())?;
        }
        _ => emit(g, stdout, &jsonl(&result.log))?,
    }
    let summary = SearchSummary {
        objective: spec,
        restarts,
        seed: g.seed,
        best_q: result.best_q,
        best_coeffs: result.best_coeffs.clone(),
        prefilter_best_q: None,
        wall_time_secs: result.wall_time_secs,
    };
    finish_search(args, summary, stderr)
}

fn finish_search(args: &SearchArgs, summary: SearchSummary, stderr: &mut dyn Write) -> CmdResult {
    if let Some(path) = &args.best_state {
        let state = TriFamilyState::new(summary.objective.parameterization.state(&summary.best_coeffs)?, 1.0)?;
        fs::write(path, StateFile::from_family(&state).to_json() + "\n")?;
    }
    stderr.write_all(to_report_json(&summary).as_bytes())?;
    Ok(EXIT_OK)
}

//! Subcommand implementations.

use std::path::Path;

use fiblike_core::error::Error;
use fiblike_core::presets::{preset, PRESETS};
use fiblike_core::recurrence::{
    classify, closed_form, continuous_period, fit_recurrence, generate, PeriodClassification,
    RecurrenceParams, TermSequence, SNAP_TOL,
};
use fiblike_core::wave::{
    laplacian_eigenmodes, modal_coefficients, modal_period, run as run_wave,
    verify_modal_recurrence, Topology, WaveLattice,
};

use crate::output::{Cell, OutputRecord, Payload};

/// Failure classes mapped onto process exit codes:
/// usage/parse 2, numeric overflow/instability 3, degenerate data 4,
/// everything else 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Degenerate(String),
    Io(String),
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Degenerate(_) => 4,
            CliError::Io(_) | CliError::CheckFailed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Numeric(m)
            | CliError::Degenerate(m)
            | CliError::Io(m)
            | CliError::CheckFailed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Overflow { .. } | Error::Instability { .. } => CliError::Numeric(err.to_string()),
            Error::DegenerateData { .. } => CliError::Degenerate(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|n| n.to_string()).collect()
}

fn terms_record(terms: &[f64]) -> OutputRecord {
    let rows = terms
        .iter()
        .enumerate()
        .map(|(n, t)| vec![Cell::Int(n as u64), Cell::Float(*t)])
        .collect();
    OutputRecord::table("terms", columns(&["n", "F_n"]), rows)
}

fn classification_cells(class: &PeriodClassification) -> Vec<Cell> {
    let variant = Cell::Text(class.variant_name());
    match class {
        PeriodClassification::Constant => vec![
            variant,
            Cell::Float(1.0),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ],
        PeriodClassification::Alternating { pair_sum } => vec![
            variant,
            Cell::Float(2.0),
            Cell::Empty,
            Cell::Float(*pair_sum),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ],
        PeriodClassification::SampledPeriodic { period, omega, integer_period } => vec![
            variant,
            Cell::Float(*period),
            Cell::Float(*omega),
            Cell::Empty,
            integer_period.map_or(Cell::Empty, Cell::Int),
            Cell::Empty,
            Cell::Empty,
        ],
        PeriodClassification::NonPeriodic { roots, .. } => vec![
            variant,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Float(roots.magnitudes.0),
            Cell::Float(roots.magnitudes.1),
        ],
    }
}

const CLASSIFICATION_COLUMNS: [&str; 7] =
    ["variant", "T", "omega", "D", "exact_integer_period", "root_mag1", "root_mag2"];

fn classification_record(class: &PeriodClassification) -> OutputRecord {
    OutputRecord::single_row(
        "classification",
        columns(&CLASSIFICATION_COLUMNS),
        classification_cells(class),
    )
}

pub fn cmd_generate(params: &RecurrenceParams, count: usize) -> Result<Payload, CliError> {
    let seq = generate(params, count)?;
    Ok(Payload::of(terms_record(seq.terms())))
}

pub fn cmd_classify(params: &RecurrenceParams) -> Result<Payload, CliError> {
    params.validate().map_err(CliError::from)?;
    Ok(Payload::of(classification_record(&classify(params))))
}

pub fn cmd_closed_form(params: &RecurrenceParams) -> Result<Payload, CliError> {
    let cf = closed_form(params)?;
    let row = vec![
        Cell::Float(cf.mean),
        Cell::Float(cf.cos_amp),
        Cell::Float(cf.sin_amp),
        Cell::Float(cf.omega),
    ];
    Ok(Payload::of(OutputRecord::single_row(
        "closed_form",
        columns(&["a0", "a1", "b1", "omega"]),
        row,
    )))
}

pub fn cmd_period_profile(min: f64, max: f64, step: f64) -> Result<Payload, CliError> {
    let in_open_range = -2.0 < min && min < max && max < 2.0;
    if !min.is_finite() || !max.is_finite() || !step.is_finite() || !in_open_range || step <= 0.0 {
        return Err(CliError::Usage(
            "period-profile requires -2 < min < max < 2 and step > 0".to_string(),
        ));
    }
    if (max - min) / step > 10_000_000.0 {
        return Err(CliError::Usage("period-profile grid exceeds 10 million rows".to_string()));
    }
    let mut rows = Vec::new();
    let mut i = 0u64;
    loop {
        let b = min + i as f64 * step;
        // Slack keeps a grid that lands on `max` from losing its last row.
        if b > max + step * 1e-9 {
            break;
        }
        let period = continuous_period(b).expect("grid stays inside (-2, 2)");
        rows.push(vec![Cell::Float(b), Cell::Float(period)]);
        i += 1;
    }
    Ok(Payload::of(OutputRecord::table("profile", columns(&["B", "T"]), rows)))
}

pub fn cmd_examples(id: u8, check: bool) -> Result<Payload, CliError> {
    let Some(preset) = preset(id) else {
        let known: Vec<String> = PRESETS.iter().map(|p| p.id.to_string()).collect();
        return Err(CliError::Usage(format!(
            "unknown example id {id}; known ids: {}",
            known.join(", ")
        )));
    };
    let seq = generate(&preset.params, preset.reference_len())?;
    let mut sections = vec![terms_record(seq.terms()), classification_record(&classify(&preset.params))];
    if check {
        if !preset.matches_reference(seq.terms()) {
            return Err(CliError::CheckFailed(format!(
                "example {id}: generated terms deviate from the stored reference table"
            )));
        }
        sections.push(OutputRecord::single_row(
            "check",
            columns(&["result"]),
            vec![Cell::Text("PASS")],
        ));
    }
    Ok(Payload { sections })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitSpec {
    /// Both time levels set to eigenmode `m` (a standing wave).
    Mode(usize),
    /// Unit displacement at one node in both time levels.
    Impulse(usize),
}

pub fn parse_init(spec: &str) -> Result<InitSpec, String> {
    let (kind, index) = spec
        .split_once(':')
        .ok_or_else(|| format!("expected mode:<m> or impulse:<i>, got `{spec}`"))?;
    let index: usize = index
        .parse()
        .map_err(|_| format!("invalid index in init spec `{spec}`"))?;
    match kind {
        "mode" => Ok(InitSpec::Mode(index)),
        "impulse" => Ok(InitSpec::Impulse(index)),
        other => Err(format!("unknown init kind `{other}`; expected mode or impulse")),
    }
}

pub fn cmd_wave(
    topology: Topology,
    nodes: usize,
    courant: f64,
    steps: usize,
    init: InitSpec,
    modal: bool,
) -> Result<Payload, CliError> {
    let lattice = WaveLattice::new(topology, nodes, courant)?;
    let modes = laplacian_eigenmodes(&lattice);
    let initial = match init {
        InitSpec::Mode(m) => modes
            .iter()
            .find(|mode| mode.index == m)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "no mode {m} on this lattice (paths use 1..=N, cycles 0..N)"
                ))
            })?
            .vector
            .clone(),
        InitSpec::Impulse(i) => {
            if i >= nodes {
                return Err(CliError::Usage(format!(
                    "impulse node {i} out of range for {nodes} nodes"
                )));
            }
            let mut v = vec![0.0; nodes];
            v[i] = 1.0;
            v
        }
    };
    let trajectory = run_wave(&lattice, initial.clone(), initial, steps)?;

    let mut trajectory_columns = vec!["t".to_string()];
    trajectory_columns.extend((0..nodes).map(|i| format!("u_{i}")));
    let trajectory_rows = trajectory
        .iter()
        .map(|state| {
            let mut row = vec![Cell::Int(state.time_index as u64)];
            row.extend(state.current.iter().map(|u| Cell::Float(*u)));
            row
        })
        .collect();
    let mut sections =
        vec![OutputRecord::table("trajectory", trajectory_columns, trajectory_rows)];

    if modal {
        let rows = modes
            .iter()
            .map(|mode| {
                let series = modal_coefficients(&trajectory, mode).expect("lengths agree");
                let residual = verify_modal_recurrence(&series, courant);
                vec![
                    Cell::Int(mode.index as u64),
                    Cell::Float(mode.eigenvalue),
                    Cell::Float(lattice.modal_coefficient(mode.eigenvalue)),
                    Cell::optional_float(modal_period(courant, mode.eigenvalue)),
                    Cell::Float(residual),
                ]
            })
            .collect();
        sections.push(OutputRecord::table(
            "modes",
            columns(&["mode", "lambda", "B", "T", "residual"]),
            rows,
        ));
    }
    Ok(Payload { sections })
}

pub fn cmd_fit(input: &Path) -> Result<Payload, CliError> {
    let content = std::fs::read_to_string(input)
        .map_err(|err| CliError::Io(format!("cannot read {}: {err}", input.display())))?;
    let terms = parse_terms_csv(&content)?;
    let seq = TermSequence::new(terms).map_err(|err| CliError::Usage(err.to_string()))?;
    let fit = fit_recurrence(&seq)?;
    let class = classify(&fit.snapped_params(SNAP_TOL));

    let mut fit_columns = columns(&["A", "B", "C", "residual_rms"]);
    fit_columns.extend(columns(&CLASSIFICATION_COLUMNS));
    let mut row = vec![
        Cell::Float(fit.params.additive),
        Cell::Float(fit.params.lag1),
        Cell::Float(fit.params.lag2),
        Cell::Float(fit.residual_rms),
    ];
    row.extend(classification_cells(&class));
    Ok(Payload::of(OutputRecord::single_row("fit", fit_columns, row)))
}

fn parse_terms_csv(content: &str) -> Result<Vec<f64>, CliError> {
    let malformed = |detail: String| CliError::Usage(format!("malformed CSV: {detail}"));
    let mut lines = content.lines();
    let header = lines.next().ok_or_else(|| malformed("empty input".to_string()))?;
    if header.trim_end() != "n,F_n" {
        return Err(malformed(format!("expected header `n,F_n`, got `{header}`")));
    }
    let mut terms = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (index_field, value_field) = line
            .split_once(',')
            .ok_or_else(|| malformed(format!("expected `n,value` in `{line}`")))?;
        let index: usize = index_field
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad index `{index_field}`")))?;
        if index != terms.len() {
            return Err(malformed(format!(
                "row indices must run 0, 1, 2, ...; got {index} at position {}",
                terms.len()
            )));
        }
        let value: f64 = value_field
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad value `{value_field}`")))?;
        terms.push(value);
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_spec_parsing() {
        assert_eq!(parse_init("mode:1"), Ok(InitSpec::Mode(1)));
        assert_eq!(parse_init("impulse:0"), Ok(InitSpec::Impulse(0)));
        assert!(parse_init("mode").is_err());
        assert!(parse_init("wavelet:2").is_err());
        assert!(parse_init("mode:x").is_err());
    }

    #[test]
    fn csv_parsing_rejects_malformed_input() {
        assert!(parse_terms_csv("").is_err());
        assert!(parse_terms_csv("x,y\n0,1\n").is_err());
        assert!(parse_terms_csv("n,F_n\n0,1\n2,5\n").is_err());
        assert!(parse_terms_csv("n,F_n\n0,abc\n").is_err());
        assert_eq!(parse_terms_csv("n,F_n\n0,1\n1,-2.5\n").unwrap(), vec![1.0, -2.5]);
    }

    #[test]
    fn period_profile_validates_the_range() {
        assert!(cmd_period_profile(-2.0, 1.0, 0.5).is_err());
        assert!(cmd_period_profile(-1.0, 2.0, 0.5).is_err());
        assert!(cmd_period_profile(1.0, -1.0, 0.5).is_err());
        assert!(cmd_period_profile(-1.0, 1.0, 0.0).is_err());
        assert!(cmd_period_profile(-1.0, 1.0, 0.5).is_ok());
    }
}

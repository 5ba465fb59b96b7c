use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use pseudolab::experiments::{
    constant_region_scan, convergence_study, counterexample_const_study, counterexample_k_study, decay_study,
    empty_resolvent_probe, global_min_scan, log_spaced, StudyReport,
};
use pseudolab::operators::{Direction, OperatorSequence, SequenceKind};
use pseudolab::pseudospectra::{
    closure_of_open, compute_norm_field, level_set, read_mask_csv, write_field_csv, write_mask_csv, Strictness,
};
use pseudolab::setgeom::{hausdorff_distance, MaskSet};
use pseudolab::Complex64;
use serde_json::json;

use crate::args::{Command, DirectionArg, Format, GridArgs, MaskMode, ModelArgs, OutArgs, StudyArgs};
use crate::input::{complex, indices, load, region, Loaded};
use crate::CliError;

/// Whether the command's verdict (if any) passed.
pub type Passed = bool;

fn sink(out: &OutArgs) -> Result<Box<dyn Write>, CliError> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| io_err(path, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn io_err(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn emit_json(out: &OutArgs, value: &serde_json::Value) -> Result<(), CliError> {
    let mut w = sink(out)?;
    writeln!(w, "{}", serde_json::to_string_pretty(value).expect("json value")).map_err(CliError::from)?;
    w.flush()?;
    Ok(())
}

fn emit_report(out: &OutArgs, report: &StudyReport) -> Result<Passed, CliError> {
    match out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut w = sink(out)?;
            writeln!(w, "{}", report.to_json())?;
            w.flush()?;
        }
        Format::Csv => report.write_series_csv(sink(out)?)?,
    }
    Ok(report.verdict.is_pass())
}

fn direction(d: DirectionArg) -> Direction {
    match d {
        DirectionArg::Shrink => Direction::Shrink,
        DirectionArg::Grow => Direction::Grow,
    }
}

fn positive(v: f64, what: &str) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{what} must be positive and finite, got {v}")))
    }
}

pub fn run(command: Command) -> Result<Passed, CliError> {
    match command {
        Command::Field { model, grid, out } => field(&model, &grid, &out),
        Command::Levelset { model, grid, out, epsilon, mode } => levelset(&model, &grid, &out, epsilon, mode),
        Command::Hausdorff { a, b, out } => {
            let read = |p: &Path| -> Result<MaskSet, CliError> {
                let file = File::open(p).map_err(|e| io_err(p, e))?;
                Ok(MaskSet::from_points(read_mask_csv(file)?))
            };
            let (sa, sb) = (read(&a)?, read(&b)?);
            let d = hausdorff_distance(&sa, &sb)?;
            match out.format.unwrap_or(Format::Csv) {
                Format::Json => emit_json(&out, &json!({ "distance": d, "a_points": sa.len(), "b_points": sb.len() }))?,
                Format::Csv => {
                    let mut w = sink(&out)?;
                    writeln!(w, "{d}")?;
                    w.flush()?;
                }
            }
            Ok(true)
        }
        Command::Converge { model, grid, out, study, scaling } => converge(&model, &grid, &out, &study, scaling),
        Command::Verify { study, model, grid, out, study_args } => verify(&study, &model, &grid, &out, &study_args),
        Command::Decay { beta, phi, r_min, r_max, points, sparse, out } => {
            let phi = phi.unwrap_or(2.0 * std::f64::consts::PI / 5.0);
            let rs = log_spaced(positive(r_min, "--r-min")?, positive(r_max, "--r-max")?, points);
            emit_report(&out, &decay_study(beta, phi, &rs, !sparse)?)
        }
    }
}

fn field(model: &ModelArgs, grid: &GridArgs, out: &OutArgs) -> Result<Passed, CliError> {
    let loaded = load(model, None)?;
    let region = region(grid, None)?;
    let f = compute_norm_field(loaded.model(), &region, grid.n.unwrap_or(0));
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => write_field_csv(&f, sink(out)?)?,
        Format::Json => emit_json(out, &serde_json::to_value(&f).expect("field serializes"))?,
    }
    Ok(true)
}

fn levelset(model: &ModelArgs, grid: &GridArgs, out: &OutArgs, epsilon: f64, mode: MaskMode) -> Result<Passed, CliError> {
    let loaded = load(model, None)?;
    let region = region(grid, None)?;
    let f = compute_norm_field(loaded.model(), &region, grid.n.unwrap_or(0));
    let mask = match mode {
        MaskMode::Open => level_set(&f, epsilon, Strictness::OpenSigma)?,
        MaskMode::Closed => level_set(&f, epsilon, Strictness::ClosedSigma)?,
        MaskMode::Closure => closure_of_open(&f, epsilon)?,
    };
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => write_mask_csv(&mask, sink(out)?)?,
        Format::Json => emit_json(out, &serde_json::to_value(&mask).expect("mask serializes"))?,
    }
    Ok(true)
}

fn sequence_of(loaded: &Loaded, scaling: Option<DirectionArg>) -> Result<OperatorSequence, CliError> {
    match (loaded, scaling) {
        (_, Some(d)) => Ok(OperatorSequence::new(
            SequenceKind::Scaling { base: loaded.model().clone(), direction: direction(d) },
            Complex64::i(),
        )),
        (Loaded::Named(ex), None) => Ok(ex.sequence.clone()),
        (Loaded::Matrix(_), None) => Err(CliError::Config("a matrix model needs --scaling shrink|grow".into())),
    }
}

fn converge(
    model: &ModelArgs,
    grid: &GridArgs,
    out: &OutArgs,
    study: &StudyArgs,
    scaling: Option<DirectionArg>,
) -> Result<Passed, CliError> {
    let loaded = load(model, None)?;
    let seq = sequence_of(&loaded, scaling)?;
    let region = region(grid, None)?;
    let ks = indices(study.ks.as_deref().unwrap_or("4,8,16,32"), "--ks")?;
    let eps = match (study.epsilon, &loaded) {
        (Some(e), _) => e,
        (None, Loaded::Named(ex)) => ex.epsilon.unwrap_or(1.0),
        (None, Loaded::Matrix(_)) => 1.0,
    };
    emit_report(out, &convergence_study(&seq, positive(eps, "--epsilon")?, &region, &ks, grid.n.unwrap_or(0))?)
}

fn default_probes() -> Vec<Complex64> {
    let mut p: Vec<Complex64> = (0..25)
        .map(|i| Complex64::new(-0.4 + 0.2 * (i % 5) as f64, -0.4 + 0.2 * (i / 5) as f64) * 0.8)
        .collect();
    let phi = 2.0 * std::f64::consts::PI / 5.0;
    p.extend([2.0, 5.0, 10.0].iter().map(|&r| Complex64::from_polar(r, phi)));
    p
}

fn verify(study: &str, model: &ModelArgs, grid: &GridArgs, out: &OutArgs, a: &StudyArgs) -> Result<Passed, CliError> {
    let report = match study {
        "convergence" => {
            let loaded = load(model, Some("decay"))?;
            let seq = sequence_of(&loaded, a.direction)?;
            let region = region(grid, Some(([0.0, 3.0, 0.1, 1.5], 0.02)))?;
            let ks = indices(a.ks.as_deref().unwrap_or("4,8,16,32"), "--ks")?;
            convergence_study(&seq, positive(a.epsilon.unwrap_or(1.0), "--epsilon")?, &region, &ks, grid.n.unwrap_or(0))?
        }
        "counterexample-k" => {
            let region = region(grid, Some(([3.0, 8.0, -2.0, 2.0], 0.05)))?;
            let ks = indices(a.ks.as_deref().unwrap_or("2..=64"), "--ks")?;
            counterexample_k_study(
                a.lambda1.unwrap_or(2.0),
                a.lambda2.unwrap_or(6.0),
                a.epsilon.unwrap_or(1.0),
                &region,
                &ks,
                direction(a.direction.unwrap_or(DirectionArg::Shrink)),
            )?
        }
        "counterexample-const" => {
            let region = region(grid, Some(([-0.4, 2.2, -0.4, 0.4], 0.05)))?;
            counterexample_const_study(&indices(a.ks.as_deref().unwrap_or("2,4,8"), "--ks")?, &region)?
        }
        "global-min" => {
            let loaded = load(model, Some("shargorodsky"))?;
            let region = region(grid, Some(([-4.0, 4.0, -4.0, 4.0], 0.1)))?;
            global_min_scan(loaded.model(), &region, a.l.unwrap_or(1), a.m.unwrap_or(1.0))?
        }
        "constant-region" => {
            let loaded = load(model, Some("shargorodsky"))?;
            let probes = if a.probes.is_empty() {
                default_probes()
            } else {
                a.probes.iter().map(|p| complex(p, "--probe")).collect::<Result<_, _>>()?
            };
            constant_region_scan(
                loaded.model(),
                &probes,
                positive(a.m.unwrap_or(1.0), "--M")?,
                positive(a.tol.unwrap_or(1e-9), "--tol")?,
            )?
        }
        "decay" => {
            let rs = log_spaced(10.0, 100.0, 9);
            decay_study(0.5, 2.0 * std::f64::consts::PI / 5.0, &rs, true)?
        }
        "empty-resolvent" => {
            let loaded = load(model, Some("empty_resolvent"))?;
            let family = match &loaded {
                Loaded::Named(ex) => ex.family().cloned(),
                Loaded::Matrix(_) => None,
            }
            .ok_or_else(|| CliError::Config("empty-resolvent needs a block-family model".into()))?;
            let lambda = complex(a.lambda.as_deref().unwrap_or("0,2"), "--lambda")?;
            let ns = indices(a.ns.as_deref().unwrap_or("25,100"), "--ns")?;
            empty_resolvent_probe(&family, lambda, &ns)?
        }
        other => return Err(CliError::Config(format!("unknown study '{other}'"))),
    };
    emit_report(out, &report)
}

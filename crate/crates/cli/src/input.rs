use std::fs;
use std::path::Path;

use pseudolab::numkernel::ComplexMatrix;
use pseudolab::operators::{build_named_example, ExampleParams, NamedExample, OperatorModel};
use pseudolab::pseudospectra::{GridRegion, DEFAULT_GRID_POINTS};
use pseudolab::Complex64;

use crate::args::{GridArgs, ModelArgs};
use crate::CliError;

fn number(s: &str, what: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| CliError::Config(format!("{what}: '{s}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{what} must be finite, got {s}")))
    }
}

pub fn numbers(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|p| number(p, what)).collect()
}

pub fn complex(s: &str, what: &str) -> Result<Complex64, CliError> {
    match numbers(s, what)?.as_slice() {
        [re, im] => Ok(Complex64::new(*re, *im)),
        other => Err(CliError::Config(format!("{what} needs re,im, got {} values", other.len()))),
    }
}

/// `2,4,8` or `2..=64`.
pub fn indices(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Config(format!("{what}: cannot read '{s}'"));
    if let Some((a, b)) = s.split_once("..=") {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

/// Region from the flags, or `default` (bounds plus spacing) when `--region` is absent.
pub fn region(args: &GridArgs, default: Option<([f64; 4], f64)>) -> Result<GridRegion, CliError> {
    let bounds = match &args.region {
        Some(text) => {
            let v = numbers(text, "--region")?;
            <[f64; 4]>::try_from(v.as_slice()).map_err(|_| {
                CliError::Config(format!("--region needs re_min,re_max,im_min,im_max, got {} values", v.len()))
            })?
        }
        None => match default {
            Some((b, _)) => b,
            None => return Err(CliError::Config("--region is required".into())),
        },
    };
    let [a, b, c, d] = bounds;
    let spacing = args.h.or(if args.region.is_none() && args.nx.is_none() && args.ny.is_none() {
        default.map(|(_, h)| h)
    } else {
        None
    });
    let region = match spacing {
        Some(h) => GridRegion::with_spacing(a, b, c, d, h)?,
        None => GridRegion::new(
            a,
            b,
            c,
            d,
            args.nx.unwrap_or(DEFAULT_GRID_POINTS),
            args.ny.unwrap_or(DEFAULT_GRID_POINTS),
        )?,
    };
    Ok(region)
}

/// CSV rows of `2m` numbers, `re,im` interleaved, forming an `m x m` matrix.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| numbers(l, "matrix entry"))
        .collect::<Result<_, _>>()?;
    let m = rows.len();
    if m == 0 || rows.iter().any(|r| r.len() != 2 * m) {
        return Err(CliError::Config(format!("{}: need {m} rows of {} numbers", path.display(), 2 * m)));
    }
    Ok(ComplexMatrix::from_fn(m, m, |i, j| Complex64::new(rows[i][2 * j], rows[i][2 * j + 1])))
}

pub enum Loaded {
    Named(Box<NamedExample>),
    Matrix(OperatorModel),
}

impl Loaded {
    pub fn model(&self) -> &OperatorModel {
        match self {
            Loaded::Named(ex) => &ex.model,
            Loaded::Matrix(m) => m,
        }
    }
}

pub fn load(args: &ModelArgs, default: Option<&str>) -> Result<Loaded, CliError> {
    if let Some(path) = &args.matrix {
        return Ok(Loaded::Matrix(OperatorModel::dense(read_matrix(path)?)?));
    }
    let params = match (&args.model, &args.config) {
        (Some(name), None) => ExampleParams::named(name),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            ExampleParams::from_json(&text)?
        }
        (None, None) => match default {
            Some(name) => ExampleParams::named(name),
            None => return Err(CliError::Config("one of --model, --matrix or --config is required".into())),
        },
        (Some(_), Some(_)) => unreachable!("clap rejects --model with --config"),
    };
    Ok(Loaded::Named(Box::new(build_named_example(&params)?)))
}

use num_complex::Complex64;

use super::{ExperimentError, StudyReport, Verdict};
use crate::operators::{build_named_example, AlphaRule, ExampleParams, OperatorModel};
use crate::resolvent::{resolvent_norm, TAIL_TOL};

/// Log-spaced stand-in for a continuum `[1, 1e5]` of `alpha` values.
pub const DENSE_ALPHA_GRID: AlphaRule = AlphaRule::LogGrid { min: 1.0, max: 1e5, points: 2000 };

/// Tolerance on both fitted exponents.
pub const EXPONENT_TOL: f64 = 0.05;

/// Relative gap allowed between the last two rescaled values.
pub const STABILIZATION_TOL: f64 = 0.02;

const GOLDEN_MAX_ITER: usize = 200;
const GOLDEN_REL_TOL: f64 = 1e-10;

/// Squared modulus of the down-left resolvent entry of the block with
/// `alpha = mu`: `mu^2 / |mu^(1+beta) - lambda^2|^2`.
pub fn decay_weight(mu: f64, beta: f64, lambda: Complex64) -> f64 {
    let d = Complex64::new(mu.powf(1.0 + beta), 0.0) - lambda * lambda;
    mu * mu / d.norm_sqr()
}

/// Golden-section maximiser of `f` over `[lo, hi]`, searching in `ln x`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let g = |t: f64| f(t.exp());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a).abs() <= GOLDEN_REL_TOL * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d);
        }
    }
    ((a + b) / 2.0).exp()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `n` log-spaced values from `lo` to `hi`.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
            (lo.ln() + t * (hi / lo).ln()).exp()
        })
        .collect()
}

fn local_maxima(values: &[f64]) -> usize {
    (0..values.len())
        .filter(|&i| {
            let left = i == 0 || values[i - 1] < values[i];
            let right = i + 1 == values.len() || values[i + 1] <= values[i];
            left && right
        })
        .count()
}

/// Resolvent norm of the `f = x^beta` family along the ray `r e^{i phi}`.
///
/// The series is `(r, value)`. The verdict needs the fitted log-log slope to
/// be `-2 beta / (1 + beta)` and the fitted exponent of the maximiser `mu_0(r)`
/// of [`decay_weight`] to be `2 / (1 + beta)`, both within [`EXPONENT_TOL`].
/// With `dense_spectrum` the family runs over [`DENSE_ALPHA_GRID`] and
/// `r^(2 beta/(1+beta)) value` must also settle over the last two radii.
pub fn decay_study(beta: f64, phi: f64, rs: &[f64], dense_spectrum: bool) -> Result<StudyReport, ExperimentError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(ExperimentError::Config(format!("beta must lie in (0, 1), got {beta}")));
    }
    if !phi.is_finite() || phi.sin().abs() < 1e-12 {
        return Err(ExperimentError::Config(format!("phi must avoid the real axis, got {phi}")));
    }
    if rs.len() < 2 || rs.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(ExperimentError::Config("rs must hold at least two positive radii".into()));
    }
    let lo = rs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = rs.iter().copied().fold(0.0, f64::max);
    if hi / lo < 10.0 * (1.0 - 1e-12) {
        return Err(ExperimentError::Config(format!("rs must span at least one decade, got [{lo}, {hi}]")));
    }

    let mut params = ExampleParams::named("decay");
    params.beta = Some(beta);
    if dense_spectrum {
        params.alpha_rule = Some(DENSE_ALPHA_GRID);
    }
    let example = build_named_example(&params)?;
    let family = example.family().expect("decay is a block family").clone();
    let model = OperatorModel::block_family(family.clone());

    // alpha grid for the discrete maximiser: the dense grid, or alpha_k up to 1e5
    let grid: Vec<f64> = match family.alpha {
        AlphaRule::LogGrid { points, .. } => (1..=points).map(|k| family.alpha(k)).collect(),
        _ => (1..).map(|k| family.alpha(k)).take_while(|&a| a <= 1e5).collect(),
    };
    let (a_min, a_max) = (grid[0], *grid.last().unwrap());

    let target_slope = -2.0 * beta / (1.0 + beta);
    let target_mu = 2.0 / (1.0 + beta);
    let mut report = StudyReport::new("decay")
        .param("beta", beta)
        .param("phi", phi)
        .param("rs", rs)
        .param("dense_spectrum", dense_spectrum)
        .param("alpha_rule", &family.alpha);
    report.budget.tail_tol = Some(TAIL_TOL);
    report.budget.tolerance = Some(EXPONENT_TOL);

    let mut mu_grid = Vec::new();
    let mut mu_cont = Vec::new();
    let mut rescaled = Vec::new();
    let mut worst_gap: f64 = 0.0;
    let mut multimodal = 0usize;
    for &r in rs {
        let lambda = Complex64::from_polar(r, phi);
        let v = resolvent_norm(&model, lambda);
        report.series.push((r, v.value));
        rescaled.push((r, r.powf(-target_slope) * v.value));

        let weights: Vec<f64> = grid.iter().map(|&mu| decay_weight(mu, beta, lambda)).collect();
        let (gi, gmax) = weights
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, w)| if w > acc.1 { (i, w) } else { acc });
        if local_maxima(&weights) > 1 {
            multimodal += 1;
        }
        let mu_star = golden_section_max(|mu| decay_weight(mu, beta, lambda), a_min, a_max);
        let cmax = decay_weight(mu_star, beta, lambda);
        worst_gap = worst_gap.max((cmax - gmax).abs() / cmax);
        mu_grid.push((r, grid[gi]));
        mu_cont.push((r, mu_star));
    }

    let values = report.series_values();
    let slope = loglog_slope(rs, &values);
    let rs_mu: Vec<f64> = mu_cont.iter().map(|p| p.0).collect();
    let mus: Vec<f64> = mu_cont.iter().map(|p| p.1).collect();
    let mu_exp = loglog_slope(&rs_mu, &mus);
    report.metric("slope", slope);
    report.metric("slope_target", target_slope);
    report.metric("mu0_exponent", mu_exp);
    report.metric("mu0_exponent_target", target_mu);
    report.metric("golden_vs_grid_max_rel_gap", worst_gap);
    report.metric("multimodal_radii", multimodal as f64);
    if multimodal > 0 {
        report.note(format!("g has more than one local maximum on the alpha grid at {multimodal} radii"));
    }

    let mut ok = (slope - target_slope).abs() <= EXPONENT_TOL && (mu_exp - target_mu).abs() <= EXPONENT_TOL;
    if dense_spectrum {
        let n = rescaled.len();
        let (a, b) = (rescaled[n - 2].1, rescaled[n - 1].1);
        let gap = (a - b).abs() / a.abs().max(b.abs());
        report.metric("rescaled_last_gap", gap);
        ok &= gap <= STABILIZATION_TOL;
    }
    report.extra_series.insert("rescaled".into(), rescaled);
    report.extra_series.insert("mu0_grid".into(), mu_grid);
    report.extra_series.insert("mu0".into(), mu_cont);
    report.verdict = Verdict::from_bool(ok);
    Ok(report)
}

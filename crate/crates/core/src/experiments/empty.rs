use num_complex::Complex64;

use super::{ExperimentError, StudyReport, Verdict};
use crate::operators::{BlockShape, DiagBlockFamily};
use crate::resolvent::dense_resolvent_norm;

/// Slack on the trial-vector lower bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Required growth of the norm from the first to the last truncation.
pub const GROWTH_FACTOR: f64 = 3.0;

/// Trial-vector lower bound `sqrt(a^2 + |lambda|^2) / |a f(a) - lambda^2|` on
/// the resolvent norm of the block with `alpha = a`; `None` when `lambda^2`
/// hits `a f(a)` exactly.
pub fn weyl_lower_bound(a: f64, f: f64, lambda: Complex64) -> Option<f64> {
    let den = (Complex64::new(a * f, 0.0) - lambda * lambda).norm();
    if den == 0.0 {
        None
    } else {
        Some((a * a + lambda.norm_sqr()).sqrt() / den)
    }
}

/// Resolvent norms at `lambda` of the leading `N`-block truncations of a
/// family with `f(alpha_k) -> 0`, compared with [`weyl_lower_bound`] at
/// `alpha_N`. Growth without bound in `N` is the finite-size trace of an
/// empty resolvent set.
pub fn empty_resolvent_probe(family: &DiagBlockFamily, lambda: Complex64, ns: &[usize]) -> Result<StudyReport, ExperimentError> {
    if family.tail_c != 0.0 || family.shape != BlockShape::TwoByTwo {
        return Err(ExperimentError::Config(format!(
            "probe needs a 2x2 family with tail constant 0, got {:?} with C = {}",
            family.shape, family.tail_c
        )));
    }
    if ns.is_empty() || ns.contains(&0) {
        return Err(ExperimentError::Config("Ns must be nonempty and positive".into()));
    }
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(ExperimentError::Config(format!("lambda must be finite, got {lambda}")));
    }
    let mut report = StudyReport::new("empty-resolvent")
        .param("family", family)
        .param("lambda", [lambda.re, lambda.im])
        .param("ns", ns);
    report.budget.tolerance = Some(BOUND_SLACK);
    let mut bounds = Vec::new();
    let mut ok = true;
    for &n in ns {
        let t = family.truncation(n)?;
        let norm = dense_resolvent_norm(&t, lambda);
        report.series.push((n as f64, norm));
        match weyl_lower_bound(family.alpha(n), family.weight(n), lambda) {
            Some(b) => {
                ok &= norm >= b - BOUND_SLACK;
                bounds.push((n as f64, b));
            }
            None => report.note(format!("N = {n}: lambda^2 equals alpha_N f(alpha_N), bound skipped")),
        }
    }
    let first = report.series[0].1;
    let last = report.series[report.series.len() - 1].1;
    report.metric("growth_ratio", last / first);
    ok &= last >= GROWTH_FACTOR * first;
    report.extra_series.insert("weyl_bound".into(), bounds);
    report.verdict = Verdict::from_bool(ok);
    Ok(report)
}

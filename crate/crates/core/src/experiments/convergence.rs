use num_complex::Complex64;

use super::{mask_distance, ExperimentError, StudyReport, Verdict};
use crate::operators::{Direction, OperatorModel, OperatorSequence, SequenceKind};
use crate::pseudospectra::{
    assumption_i_check, closure_of_open, compute_norm_field, level_set, GridRegion, Strictness,
};
use crate::resolvent::{gnr_defect, TAIL_TOL};
use crate::setgeom::MaskSet;

/// Largest generalised resolvent defect at the last index accepted as
/// evidence of convergence.
pub const GNR_THRESHOLD: f64 = 0.5;

fn closed_mask_set(model: &OperatorModel, k_region: &GridRegion, epsilon: f64, n: u32) -> Result<MaskSet, ExperimentError> {
    let field = compute_norm_field(model, k_region, n);
    Ok(MaskSet::from_mask(&level_set(&field, epsilon, Strictness::ClosedSigma)?))
}

fn sequence_budget(report: &mut StudyReport, seq: &OperatorSequence, region: &GridRegion) {
    report.budget.grid_h = Some(region.h());
    if let SequenceKind::Truncation { .. } = seq.kind {
        report.budget.tail_tol = Some(TAIL_TOL);
    }
}

/// Hausdorff distances between closed level sets of `T_k` and of the limit
/// inside the window, for each `k` in `ks`.
///
/// Before the run the limit field must pass the lattice closure check and the
/// resolvent defect at the last index must be below [`GNR_THRESHOLD`]; a
/// failed precondition gives a failing report that names it. The verdict is a
/// finite-sample proxy: final distance at most `3h` and the maximum over the
/// second half of the series not above the maximum over the first half.
pub fn convergence_study(
    seq: &OperatorSequence,
    epsilon: f64,
    region: &GridRegion,
    ks: &[usize],
    n: u32,
) -> Result<StudyReport, ExperimentError> {
    convergence_study_with(seq, epsilon, region, ks, n, GNR_THRESHOLD)
}

pub fn convergence_study_with(
    seq: &OperatorSequence,
    epsilon: f64,
    region: &GridRegion,
    ks: &[usize],
    n: u32,
    gnr_threshold: f64,
) -> Result<StudyReport, ExperimentError> {
    region.validate()?;
    if ks.is_empty() {
        return Err(ExperimentError::Config("ks must not be empty".into()));
    }
    let h = region.h();
    let mut report = StudyReport::new("convergence")
        .param("epsilon", epsilon)
        .param("region", region)
        .param("ks", ks)
        .param("n", n)
        .param("sequence", &seq.kind)
        .param("anchor", [seq.anchor.re, seq.anchor.im]);
    sequence_budget(&mut report, seq, region);
    report.budget.tolerance = Some(3.0 * h);
    report.note("finite-sample proxy: final distance <= 3h and no growth from the first to the second half of ks");

    let limit = seq.limit();
    let limit_field = compute_norm_field(&limit, region, n);
    let check = assumption_i_check(&limit_field, epsilon)?;
    if !check.holds_at_resolution {
        report.note(match check.witness_point {
            Some(z) => format!("precondition failed: closure condition on the window (assumption i) at {z}, h = {h}"),
            None => format!("precondition failed: closed level set of the limit is empty in the window (assumption i), h = {h}"),
        });
        report.verdict = Verdict::Fail;
        return Ok(report);
    }

    let last = *ks.last().unwrap_or(&1);
    match gnr_defect(seq, last, seq.anchor) {
        Ok(d) => {
            report.metric("gnr_defect_last", d.defect);
            report.metric("gnr_proxy_error", d.proxy_error);
            if let Some(nref) = d.reference_n {
                report.budget.proxy_n_ref = Some(nref);
            }
            if !(d.defect < gnr_threshold) {
                report.note(format!(
                    "precondition failed: resolvent defect {} at k = {last} is not below {gnr_threshold} (assumption iii)",
                    d.defect
                ));
                report.verdict = Verdict::Fail;
                return Ok(report);
            }
        }
        Err(e) => {
            report.note(format!("precondition failed: anchor not in a common resolvent set (assumption iii): {e}"));
            report.verdict = Verdict::Fail;
            return Ok(report);
        }
    }

    let limit_set = MaskSet::from_mask(&level_set(&limit_field, epsilon, Strictness::ClosedSigma)?);
    let mut defects = Vec::new();
    for &k in ks {
        let member = seq.member(k)?;
        let set = closed_mask_set(&member, region, epsilon, n)?;
        report.series.push((k as f64, mask_distance(&set, &limit_set)?));
        if let Ok(d) = gnr_defect(seq, k, seq.anchor) {
            defects.push((k as f64, d.defect));
        }
    }
    report.extra_series.insert("gnr_defect".into(), defects);
    let values = report.series_values();
    let half = values.len() / 2;
    let first = values[..half.max(1)].iter().copied().fold(0.0, f64::max);
    let second = values[half..].iter().copied().fold(0.0, f64::max);
    let fin = *values.last().unwrap_or(&f64::INFINITY);
    report.metric("final_distance", fin);
    report.verdict = Verdict::from_bool(fin <= 3.0 * h && second <= first);
    Ok(report)
}

/// Sequences in which the eigenvalue `lambda1` approaches its limit while the
/// window only touches the closed ball around `lambda1` at one point `w0`.
///
/// `Shrink` compares closed level sets of `diag((1 - 1/k) l1, l2)` and of the
/// limit; `Grow` compares lattice closures of the open level sets inside the
/// window for `diag((1 + 1/k) l1, l2)`. The claim is that every distance stays
/// at least `d0 - 2h`, `d0 = dist(w0, closed ball around l2)`.
pub fn counterexample_k_study(
    lambda1: f64,
    lambda2: f64,
    epsilon: f64,
    region: &GridRegion,
    ks: &[usize],
    direction: Direction,
) -> Result<StudyReport, ExperimentError> {
    region.validate()?;
    if !(lambda1 < lambda2) {
        return Err(ExperimentError::Config(format!("need lambda1 < lambda2, got {lambda1}, {lambda2}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(ExperimentError::Config(format!("epsilon must be positive, got {epsilon}")));
    }
    if ks.is_empty() || ks.iter().any(|&k| k < 2) {
        return Err(ExperimentError::Config("ks must be nonempty and at least 2".into()));
    }
    let h = region.h();
    let l1 = Complex64::new(lambda1, 0.0);
    let l2 = Complex64::new(lambda2, 0.0);
    let touching: Vec<Complex64> = region.points().filter(|z| (z - l1).norm() <= epsilon).collect();
    let w0 = match touching.as_slice() {
        [w] if ((w - l1).norm() - epsilon).abs() <= 1e-12 * epsilon.max(1.0) => *w,
        _ => {
            return Err(ExperimentError::Config(format!(
                "window must touch the closed ball around {lambda1} at exactly one boundary lattice point, found {}",
                touching.len()
            )))
        }
    };
    let contains_ball2 = region.re_min <= lambda2 - epsilon
        && region.re_max >= lambda2 + epsilon
        && region.im_min <= -epsilon
        && region.im_max >= epsilon;
    if !contains_ball2 {
        return Err(ExperimentError::Config(format!("window must contain the closed ball around {lambda2}")));
    }
    let d0 = (w0 - l2).norm() - epsilon;

    let mut report = StudyReport::new("counterexample-k")
        .param("lambda1", lambda1)
        .param("lambda2", lambda2)
        .param("epsilon", epsilon)
        .param("region", region)
        .param("ks", ks)
        .param("direction", direction);
    report.budget.grid_h = Some(h);
    report.budget.tolerance = Some(2.0 * h);
    report.metric("w0_re", w0.re);
    report.metric("w0_im", w0.im);
    report.metric("d0", d0);

    let seq = OperatorSequence::new(SequenceKind::DiagPair { lambda1, lambda2, direction }, Complex64::i());
    let limit_field = compute_norm_field(&seq.limit(), region, 0);
    let limit_set = match direction {
        Direction::Shrink => MaskSet::from_mask(&level_set(&limit_field, epsilon, Strictness::ClosedSigma)?),
        Direction::Grow => MaskSet::from_mask(&closure_of_open(&limit_field, epsilon)?),
    };
    for &k in ks {
        let field = compute_norm_field(&seq.member(k)?, region, 0);
        let set = match direction {
            Direction::Shrink => MaskSet::from_mask(&level_set(&field, epsilon, Strictness::ClosedSigma)?),
            Direction::Grow => MaskSet::from_mask(&closure_of_open(&field, epsilon)?),
        };
        report.series.push((k as f64, mask_distance(&set, &limit_set)?));
    }
    let min = report.series.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    report.metric("min_distance", min);
    report.verdict = Verdict::from_bool(min >= d0 - 2.0 * h);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_preconditions() {
        let k = GridRegion::with_spacing(3.0, 8.0, -2.0, 2.0, 0.5).unwrap();
        assert!(counterexample_k_study(6.0, 2.0, 1.0, &k, &[2], Direction::Shrink).is_err());
        let wide = GridRegion::with_spacing(0.5, 8.0, -2.0, 2.0, 0.5).unwrap();
        assert!(counterexample_k_study(2.0, 6.0, 1.0, &wide, &[2], Direction::Shrink).is_err());
    }

    #[test]
    fn coarse_tangency_run() {
        let k = GridRegion::with_spacing(3.0, 8.0, -2.0, 2.0, 0.25).unwrap();
        let r = counterexample_k_study(2.0, 6.0, 1.0, &k, &[2, 4, 8], Direction::Shrink).unwrap();
        assert!(r.verdict.is_pass(), "{r:?}");
        assert_eq!(r.metrics["d0"], 2.0);
    }
}

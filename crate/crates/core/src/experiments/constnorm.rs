use num_complex::Complex64;

use super::{mask_distance, ExperimentError, StudyReport, Verdict};
use crate::operators::{named_example, scale_operator, OperatorModel};
use crate::pseudospectra::{closure_of_open, compute_norm_field, level_set, GridRegion, Strictness};
use crate::resolvent::{resolvent_norm, TAIL_TOL};
use crate::setgeom::MaskSet;

/// Relative slack on lower bounds of the form `value >= M`.
pub const LOWER_BOUND_SLACK: f64 = 1e-9;

/// Radius of the disc around the origin on which the constant-norm family
/// has resolvent norm exactly 1.
pub const CONSTANT_DISC_RADIUS: f64 = 0.5;

/// Whether `z` lies in the declared constant-norm region of the
/// `shargorodsky` family: the open disc of radius 1/2, or the wedge
/// `cos 2phi < 0`, `|z| >= 1 / |cos 2phi|`.
pub fn in_declared_constant_region(z: Complex64) -> bool {
    let r = z.norm();
    if r < CONSTANT_DISC_RADIUS {
        return true;
    }
    let cos2 = (z.re * z.re - z.im * z.im) / (r * r);
    cos2 < 0.0 && r >= 1.0 / cos2.abs()
}

/// `T_k = (1 - 1/k) T` for the constant-norm family `T`: every `T_k` has
/// resolvent norm at least `(1 - 1/k)^-1` everywhere, so its closed level set
/// at that height is the whole plane, while the open level set of `T` at
/// height 1 misses the disc where the norm of `T` equals 1.
pub fn counterexample_const_study(ks: &[usize], region: &GridRegion) -> Result<StudyReport, ExperimentError> {
    region.validate()?;
    if ks.is_empty() || ks.iter().any(|&k| k < 2) {
        return Err(ExperimentError::Config("ks must be nonempty and at least 2".into()));
    }
    let inside = region.points().filter(|z| z.norm() < CONSTANT_DISC_RADIUS).count();
    if inside == 0 || inside == region.len() {
        return Err(ExperimentError::Config(
            "window must meet both the disc of radius 1/2 and its complement".into(),
        ));
    }
    let base = named_example("shargorodsky")?.model;
    let h = region.h();
    let mut report = StudyReport::new("counterexample-const").param("ks", ks).param("region", region);
    report.budget.grid_h = Some(h);
    report.budget.tail_tol = Some(TAIL_TOL);
    report.budget.tolerance = Some(LOWER_BOUND_SLACK);

    let limit_field = compute_norm_field(&base, region, 0);
    let open = level_set(&limit_field, 1.0, Strictness::OpenSigma)?;
    let disc_hits = open
        .member_points()
        .into_iter()
        .filter(|z| z.norm() < CONSTANT_DISC_RADIUS)
        .count();
    report.metric("open_mask_points_in_disc", disc_hits as f64);
    let limit_closure = MaskSet::from_mask(&closure_of_open(&limit_field, 1.0)?);

    let mut all_bounds = true;
    for &k in ks {
        let s = 1.0 - 1.0 / k as f64;
        let model = scale_operator(base.clone(), Complex64::new(s, 0.0))?;
        let field = compute_norm_field(&model, region, 0);
        let (min, _) = field.argmin();
        let bound = (1.0 / s) * (1.0 - LOWER_BOUND_SLACK);
        all_bounds &= min >= bound;
        report.series.push((k as f64, min));
        if k == ks[0] {
            let member = MaskSet::from_mask(&closure_of_open(&field, 1.0)?);
            let dh = mask_distance(&member, &limit_closure)?;
            report.metric("first_k_distance", dh);
            let gap = region
                .points()
                .filter(|z| z.norm() >= CONSTANT_DISC_RADIUS)
                .map(|z| z.norm())
                .fold(f64::INFINITY, f64::min);
            report.metric("first_k_distance_bound", gap - h);
        }
    }
    report.verdict = Verdict::from_bool(all_bounds && disc_hits == 0);
    Ok(report)
}

/// Lattice check of the global lower bound `||(T - z)^-l|| ^ (1/l) >= M`;
/// `l` must be a power of two.
pub fn global_min_scan(model: &OperatorModel, region: &GridRegion, l: u32, m: f64) -> Result<StudyReport, ExperimentError> {
    region.validate()?;
    if !l.is_power_of_two() {
        return Err(ExperimentError::Config(format!("l must be a power of two, got {l}")));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(ExperimentError::Config(format!("M must be positive, got {m}")));
    }
    let n = l.trailing_zeros();
    let field = compute_norm_field(model, region, n);
    let (min, at) = field.argmin();
    let mut report = StudyReport::new("global-min").param("region", region).param("l", l).param("M", m);
    report.budget.grid_h = Some(region.h());
    report.budget.tolerance = Some(LOWER_BOUND_SLACK);
    if matches!(model, OperatorModel::BlockFamily { .. } | OperatorModel::Scaled { .. }) {
        report.budget.tail_tol = Some(TAIL_TOL);
    }
    report.series.push((0.0, min));
    report.metric("min", min);
    report.metric("argmin_re", at.re);
    report.metric("argmin_im", at.im);
    report.verdict = Verdict::from_bool(min >= m * (1.0 - LOWER_BOUND_SLACK));
    Ok(report)
}

/// `|value - M| <= tol` at every probe inside the declared constant region;
/// probes outside it are skipped and listed.
pub fn constant_region_scan(
    model: &OperatorModel,
    probes: &[Complex64],
    m: f64,
    tol: f64,
) -> Result<StudyReport, ExperimentError> {
    if probes.is_empty() {
        return Err(ExperimentError::Config("no probes".into()));
    }
    let mut report = StudyReport::new("constant-region").param("M", m).param("tol", tol).param(
        "probes",
        probes.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    );
    report.budget.tail_tol = Some(TAIL_TOL);
    report.budget.tolerance = Some(tol);
    let mut ok = true;
    let mut skipped = Vec::new();
    let mut all_above = true;
    for (i, &z) in probes.iter().enumerate() {
        if !in_declared_constant_region(z) {
            skipped.push(z);
            continue;
        }
        let v = resolvent_norm(model, z);
        ok &= (v.value - m).abs() <= tol;
        all_above &= v.value > m;
        if let Some(t) = v.tail {
            if !t.certified {
                report.note(format!("tail not certified at probe {z} (cutoff {})", t.cutoff));
            }
        }
        report.series.push((i as f64, v.value));
    }
    for z in &skipped {
        report.note(format!("skipped probe {z}: outside the declared region"));
    }
    report.metric("skipped", skipped.len() as f64);
    report.metric("all_strictly_above", f64::from(u8::from(all_above && !report.series.is_empty())));
    let dev = report.series.iter().map(|p| (p.1 - m).abs()).fold(0.0, f64::max);
    report.metric("max_deviation", dev);
    report.verdict = Verdict::from_bool(ok && !report.series.is_empty());
    Ok(report)
}

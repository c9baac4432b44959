//! Orbit simulation, convergence-regime classification, theorem-backed
//! fate prediction, and prediction-vs-simulation cross-validation.

use serde::{Deserialize, Serialize};

use crate::model::{Extrema, Params};
use crate::structures::{self, Equilibrium, InvariantInterval, TwoCycle};
use crate::thresholds::{self, Thresholds};
use crate::{Error, Result};

/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Default absolute tolerance on successive-iterate gaps.
pub const DEFAULT_TOL_CONV: f64 = 1e-10;

/// A sample closer than this (relative) to a basin boundary is excluded
/// from cross-validation; fates there measure floating-point noise.
pub const BOUNDARY_MARGIN: f64 = 1e-4;

/// Relative payload tolerance when comparing a predicted fate against a
/// simulated one. Loose enough to absorb the slow drift of semistable
/// convergence, far tighter than the spacing between distinct targets.
const AGREE_TOL: f64 = 1e-4;

/// Treat `x0` as sitting exactly on a computed point (equilibrium or
/// cycle coordinate) below this relative distance.
const EXACT_EPS: f64 = 1e-12;

/// Slack on the `t <= a` assumptions of the two-equilibria theorem;
/// tangent equilibria are themselves only known to ~1e-8.
const ASSUMPTION_TOL: f64 = 1e-6;

/// Backward preimage levels explored when testing membership in the
/// countable preimage set of an equilibrium.
const PREIMAGE_LEVELS: usize = 32;
const PREIMAGE_CAP: usize = 1024;

/// Asymptotic fate of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Fate {
    FixedPoint(f64),
    TwoCycle(f64, f64),
    /// Step index at which an iterate left (0, inf); possible only when
    /// `c <= c_minus`.
    NonpositiveIterate(usize),
    Undecided,
}

impl Fate {
    /// Same fate kind with payloads within `tol` (relative).
    pub fn matches(&self, other: &Fate, tol: f64) -> bool {
        match (self, other) {
            (Fate::FixedPoint(a), Fate::FixedPoint(b)) => {
                (a - b).abs() <= tol * a.abs().max(1.0)
            }
            (Fate::TwoCycle(p1, q1), Fate::TwoCycle(p2, q2)) => {
                (p1 - p2).abs() <= tol * p1.abs().max(1.0)
                    && (q1 - q2).abs() <= tol * q1.abs().max(1.0)
            }
            (Fate::NonpositiveIterate(_), Fate::NonpositiveIterate(_)) => true,
            (Fate::Undecided, Fate::Undecided) => true,
            _ => false,
        }
    }
}

/// Outcome of simulating one initial condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub fate: Fate,
    /// Number of map applications performed.
    pub iterations: usize,
    /// Last two iterates at termination.
    pub final_points: (f64, f64),
    /// Leading iterates (including x0), when tracing was requested.
    pub trace: Option<Vec<f64>>,
    /// Diagnostic for abnormal termination (overflow and the like).
    pub note: Option<String>,
}

/// Iterate the map from `x0` until a fate criterion fires or the budget
/// runs out. Deterministic; bit-identical inputs give bit-identical
/// results.
///
/// Fixed points are detected by `|x_{n+1} - x_n| <= tol_conv`; cycles by
/// `|x_{n+2} - x_n| <= tol_conv` with the odd gap exceeding
/// `10 * tol_conv`, which separates genuine cycles from slow fixed-point
/// convergence.
pub fn iterate_orbit(
    params: &Params,
    x0: f64,
    max_iter: usize,
    tol_conv: f64,
) -> Result<OrbitResult> {
    iterate(params, x0, max_iter, tol_conv, None)
}

/// As [`iterate_orbit`], storing up to `trace_cap` leading iterates.
pub fn iterate_orbit_traced(
    params: &Params,
    x0: f64,
    max_iter: usize,
    tol_conv: f64,
    trace_cap: usize,
) -> Result<OrbitResult> {
    iterate(params, x0, max_iter, tol_conv, Some(trace_cap))
}

fn iterate(
    params: &Params,
    x0: f64,
    max_iter: usize,
    tol_conv: f64,
    trace_cap: Option<usize>,
) -> Result<OrbitResult> {
    if !(x0 > 0.0) || !x0.is_finite() {
        return Err(Error::Domain(format!("x0 must be positive, got {x0}")));
    }
    let mut trace = trace_cap.map(|cap| {
        let mut v = Vec::with_capacity(cap.min(1024));
        if cap > 0 {
            v.push(x0);
        }
        v
    });
    let mut prev = x0; // x_{n-1}
    let mut cur = x0; // x_n
    for n in 1..=max_iter {
        let next = params.phi_unchecked(cur);
        if !next.is_finite() {
            return Ok(OrbitResult {
                fate: Fate::Undecided,
                iterations: n,
                final_points: (cur, next),
                trace,
                note: Some(format!("nonfinite iterate at step {n}")),
            });
        }
        if next <= 0.0 {
            return Ok(OrbitResult {
                fate: Fate::NonpositiveIterate(n),
                iterations: n,
                final_points: (cur, next),
                trace,
                note: None,
            });
        }
        if let (Some(t), Some(cap)) = (trace.as_mut(), trace_cap) {
            if t.len() < cap {
                t.push(next);
            }
        }
        if (next - cur).abs() <= tol_conv {
            return Ok(OrbitResult {
                fate: Fate::FixedPoint(next),
                iterations: n,
                final_points: (cur, next),
                trace,
                note: None,
            });
        }
        if n >= 2 && (next - prev).abs() <= tol_conv && (next - cur).abs() > 10.0 * tol_conv {
            // Guard against slow oscillatory convergence to a fixed
            // point with multiplier near -1: there the even gap dies
            // long before the oscillation does. A genuine cycle brackets
            // a region where the map moves points; the midpoint drift
            // |phi(m) - m| stays at ~tol_conv for a collapsing
            // oscillation and is orders of magnitude larger for a real
            // cycle. On a veto, keep iterating until the fixed-point
            // criterion fires on its own.
            let mid = 0.5 * (cur + next);
            let drift = (params.phi_unchecked(mid) - mid).abs();
            if drift > 100.0 * tol_conv {
                return Ok(OrbitResult {
                    fate: Fate::TwoCycle(cur.min(next), cur.max(next)),
                    iterations: n,
                    final_points: (cur, next),
                    trace,
                    note: None,
                });
            }
        }
        prev = cur;
        cur = next;
    }
    Ok(OrbitResult {
        fate: Fate::Undecided,
        iterations: max_iter,
        final_points: (prev, cur),
        trace,
        note: None,
    })
}

/// Convergence-regime labels, one per theorem case, plus the escape
/// hatches for configurations the theory leaves open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    T4a,
    T4b,
    T4c,
    T4d,
    T5b,
    T5c,
    T6b,
    T6c,
    T7a1,
    T7a21,
    T7a22,
    T7b,
    ThreeEquilibriaUnclassified,
    Unclassified,
    /// `c <= c_minus`: orbits may leave the positive half-line.
    Invalid,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::T4a => "T4a",
            Regime::T4b => "T4b",
            Regime::T4c => "T4c",
            Regime::T4d => "T4d",
            Regime::T5b => "T5b",
            Regime::T5c => "T5c",
            Regime::T6b => "T6b",
            Regime::T6c => "T6c",
            Regime::T7a1 => "T7a1",
            Regime::T7a21 => "T7a21",
            Regime::T7a22 => "T7a22",
            Regime::T7b => "T7b",
            Regime::ThreeEquilibriaUnclassified => "ThreeEquilibria_Unclassified",
            Regime::Unclassified => "Unclassified",
            Regime::Invalid => "invalid",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Everything the classifier computed about a parameter set: the regime
/// plus the structures the fate prediction needs.
#[derive(Debug, Clone)]
pub struct RegimeInfo {
    pub regime: Regime,
    pub thresholds: Thresholds,
    pub equilibria: Vec<Equilibrium>,
    pub cycles: Vec<TwoCycle>,
    pub extrema: Option<Extrema>,
    pub invariant_interval: Option<InvariantInterval>,
    /// Preimage of the tangent equilibrium on the decreasing branch
    /// (the basin boundary of the two-equilibria cases).
    pub delta: Option<f64>,
    /// Whether the preimage set of the equilibrium is just itself
    /// (regime with one cycle and the equilibrium left of the minimum).
    pub preimage_trivial: Option<bool>,
    pub notes: Vec<String>,
}

/// Theorem-backed fate prediction for a single initial condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FatePrediction {
    pub regime: Regime,
    pub predicted: Fate,
    pub basin_note: String,
}

/// Classify the parameter set into a convergence regime and collect the
/// structures the per-orbit prediction needs. Deterministic in
/// `params`; independent of any initial condition.
pub fn classify_regime(params: &Params) -> Result<RegimeInfo> {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let th = thresholds::compute(a, b, d)?;
    let mut info = RegimeInfo {
        regime: Regime::Unclassified,
        thresholds: th,
        equilibria: Vec::new(),
        cycles: Vec::new(),
        extrema: params.extrema(),
        invariant_interval: None,
        delta: None,
        preimage_trivial: None,
        notes: Vec::new(),
    };
    if c <= th.c_minus + crate::model::C_MINUS_GUARD {
        info.regime = Regime::Invalid;
        info.notes
            .push("c <= c_minus: nonpositive iterates possible".into());
        return Ok(info);
    }
    info.equilibria = structures::equilibria(params)?;
    info.cycles = structures::two_cycles(params)?;

    if c >= th.c_star {
        classify_decreasing(&mut info);
    } else {
        classify_window(params, &mut info)?;
    }
    Ok(info)
}

/// c >= c_star: the map is decreasing, one equilibrium, and the number
/// of cycles alone selects the case.
fn classify_decreasing(info: &mut RegimeInfo) {
    if info.equilibria.len() != 1 {
        info.notes.push(format!(
            "decreasing regime expects one equilibrium, found {}",
            info.equilibria.len()
        ));
        return;
    }
    if info.cycles.iter().any(|c| c.tangent) {
        info.notes.push(
            "tangent cycle - semistable; classification assumes simple cycles".into(),
        );
        return;
    }
    info.regime = match info.cycles.len() {
        0 => Regime::T4a,
        1 => Regime::T4b,
        2 => Regime::T4c,
        3 => Regime::T4d,
        _ => unreachable!("two_cycles caps at three"),
    };
}

/// c in (c_minus, c_star): split on the equilibrium count and the
/// position of the equilibrium relative to the minimum point.
fn classify_window(params: &Params, info: &mut RegimeInfo) -> Result<()> {
    let ex = info
        .extrema
        .expect("extrema exist strictly below c_star");
    match info.equilibria.len() {
        1 => {
            let t_bar = info.equilibria[0].value;
            if t_bar >= ex.x_m {
                // Unique equilibrium inside or right of the hump.
                match info.cycles.len() {
                    0 => info.regime = Regime::T5b,
                    1 if info.cycles[0].tangent => {
                        info.regime = Regime::T5c;
                        info.notes.push(
                            "tangent case - semistable: the doubled cycle attracts from one side only"
                                .into(),
                        );
                    }
                    2 => info.regime = Regime::T5c,
                    n => info.notes.push(format!(
                        "cycle count {n} incompatible with the single-equilibrium window"
                    )),
                }
            } else {
                // Equilibrium left of the minimum point.
                info.invariant_interval = Some(structures::invariant_interval(params)?);
                match info.cycles.len() {
                    0 => info.regime = Regime::T6b,
                    1 => {
                        let cy = &info.cycles[0];
                        let xm_tol = ex.x_m * (1.0 + 1e-9);
                        if cy.p < t_bar && t_bar < cy.q && cy.q <= xm_tol {
                            info.regime = Regime::T6c;
                            info.preimage_trivial =
                                Some(structures::preimage_set_is_trivial(params)?);
                        } else {
                            info.notes.push(
                                "single cycle does not straddle the equilibrium below x_m".into(),
                            );
                        }
                    }
                    n => info
                        .notes
                        .push(format!("cycle count {n} unhandled left of the minimum")),
                }
            }
        }
        2 => classify_two_equilibria(params, info, &ex)?,
        3 => info.regime = Regime::ThreeEquilibriaUnclassified,
        n => unreachable!("equilibria() enforces 1..=3, got {n}"),
    }
    Ok(())
}

/// Two equilibria: the parameter sits on a fold (`c = c_m` or `c_M`),
/// told apart by which equilibrium carries the tangency.
fn classify_two_equilibria(
    params: &Params,
    info: &mut RegimeInfo,
    ex: &Extrema,
) -> Result<()> {
    let a = params.a();
    let (t1, t2) = (info.equilibria[0], info.equilibria[1]);
    let a_slack = ASSUMPTION_TOL * a.max(1.0);
    if t2.tangent && !t1.tangent {
        // Tangency at the larger equilibrium: the c = c_m side.
        if t2.value > a + a_slack {
            info.notes.push(format!(
                "stated assumption t2 <= a violated (t2 = {}, a = {a}); beyond the published cases",
                t2.value
            ));
            return Ok(());
        }
        let delta = structures::preimage_below_xm(params, t2.value)?;
        info.delta = Some(delta);
        if ex.x_m <= t1.value {
            info.regime = Regime::T7a1;
        } else {
            match info.cycles.len() {
                0 => info.regime = Regime::T7a21,
                1 => {
                    let cy = &info.cycles[0];
                    let xm_tol = ex.x_m * (1.0 + 1e-9);
                    if cy.p < t1.value && t1.value < cy.q && cy.q <= xm_tol {
                        info.regime = Regime::T7a22;
                    } else {
                        info.notes.push(
                            "cycle does not straddle the lower equilibrium below x_m".into(),
                        );
                    }
                }
                n => info
                    .notes
                    .push(format!("cycle count {n} unhandled on the c_m fold")),
            }
        }
    } else if t1.tangent && !t2.tangent {
        // Tangency at the smaller equilibrium: the c = c_M side.
        if t1.value > a + a_slack {
            info.notes.push(format!(
                "stated assumption t1 <= a violated (t1 = {}, a = {a}); beyond the published cases",
                t1.value
            ));
            return Ok(());
        }
        info.delta = Some(structures::preimage_below_xm(params, t1.value)?);
        info.regime = Regime::T7b;
    } else {
        info.notes.push(
            "two equilibria but no unique tangency; fold configuration unresolved".into(),
        );
    }
    Ok(())
}

/// Predict the fate of `x0` from the classified regime. Configurations
/// the theory does not cover return `Undecided` with an explanatory
/// note — never a guess.
pub fn predict_fate(params: &Params, x0: f64) -> Result<FatePrediction> {
    if !(x0 > 0.0) || !x0.is_finite() {
        return Err(Error::Domain(format!("x0 must be positive, got {x0}")));
    }
    let info = classify_regime(params)?;
    Ok(predict_from_info(params, &info, x0))
}

/// Prediction against an already-computed classification; used by the
/// cross-validation driver to avoid reclassifying per sample.
pub fn predict_from_info(params: &Params, info: &RegimeInfo, x0: f64) -> FatePrediction {
    let near = |x: f64, target: f64| (x - target).abs() <= EXACT_EPS * target.abs().max(1.0);
    let fixed = |e: &Equilibrium| Fate::FixedPoint(e.value);
    let cycle = |c: &TwoCycle| Fate::TwoCycle(c.p, c.q);

    let (regime, predicted, basin_note): (Regime, Fate, String) = match info.regime {
        Regime::T4a => (
            info.regime,
            fixed(&info.equilibria[0]),
            "every positive orbit converges to the unique equilibrium".into(),
        ),
        Regime::T4b => {
            let t = &info.equilibria[0];
            let f = if near(x0, t.value) {
                fixed(t)
            } else {
                cycle(&info.cycles[0])
            };
            (
                info.regime,
                f,
                "all orbits except the equilibrium itself converge to the cycle".into(),
            )
        }
        Regime::T4c | Regime::T5c => {
            // Inner cycle (p2, q2) bounds the equilibrium basin; the
            // outer cycle attracts everything beyond. A tangent doubled
            // cycle plays both roles.
            let t = &info.equilibria[0];
            let (outer, inner) = if info.cycles.len() == 2 {
                (&info.cycles[0], &info.cycles[1])
            } else {
                (&info.cycles[0], &info.cycles[0])
            };
            let f = if near(x0, inner.p) || near(x0, inner.q) {
                cycle(inner)
            } else if x0 > inner.p && x0 < inner.q {
                fixed(t)
            } else {
                cycle(outer)
            };
            (
                info.regime,
                f,
                format!(
                    "equilibrium basin is ({:.6}, {:.6}); outside it orbits go to the outer cycle",
                    inner.p, inner.q
                ),
            )
        }
        Regime::T4d => {
            let t = &info.equilibria[0];
            let (outer, middle, inner) =
                (&info.cycles[0], &info.cycles[1], &info.cycles[2]);
            let f = if near(x0, middle.p) || near(x0, middle.q) {
                cycle(middle)
            } else if x0 > middle.p && x0 < middle.q {
                if near(x0, t.value) {
                    fixed(t)
                } else {
                    cycle(inner)
                }
            } else {
                cycle(outer)
            };
            (
                info.regime,
                f,
                format!(
                    "inner cycle attracts ({:.6}, {:.6}) minus the equilibrium; outer cycle the rest",
                    middle.p, middle.q
                ),
            )
        }
        Regime::T5b | Regime::T6b => (
            info.regime,
            fixed(&info.equilibria[0]),
            "no cycle exists; every orbit converges to the equilibrium".into(),
        ),
        Regime::T6c => {
            let t = &info.equilibria[0];
            let cy = &info.cycles[0];
            let (in_s, truncated) = preimage_membership(params, info, t.value, x0);
            let f = if in_s { fixed(t) } else { cycle(cy) };
            let note = if info.preimage_trivial == Some(true) {
                "preimage set is the equilibrium alone; everything else goes to the cycle".into()
            } else if truncated {
                format!(
                    "preimage set explored to {PREIMAGE_LEVELS} levels; deeper members may be mispredicted as cycle-bound"
                )
            } else {
                "orbits off the preimage set converge to the cycle".into()
            };
            (info.regime, f, note)
        }
        Regime::T7a1 | Regime::T7a21 => {
            let (t1, t2) = (&info.equilibria[0], &info.equilibria[1]);
            let delta = info.delta.expect("delta computed for T7a regimes");
            let f = if x0 > delta && x0 < t2.value {
                fixed(t1)
            } else {
                fixed(t2)
            };
            (
                info.regime,
                f,
                format!(
                    "basin of the non-tangent equilibrium is ({delta:.6}, {:.6})",
                    t2.value
                ),
            )
        }
        Regime::T7a22 => {
            let (t1, t2) = (&info.equilibria[0], &info.equilibria[1]);
            let cy = &info.cycles[0];
            let delta = info.delta.expect("delta computed for T7a regimes");
            let (in_s, truncated) = preimage_membership(params, info, t1.value, x0);
            let f = if in_s {
                fixed(t1)
            } else if x0 > delta && x0 < t2.value {
                cycle(cy)
            } else {
                fixed(t2)
            };
            let note = if truncated {
                format!(
                    "cycle basin is ({delta:.6}, {:.6}) minus the preimage set (explored to {PREIMAGE_LEVELS} levels)",
                    t2.value
                )
            } else {
                format!("cycle basin is ({delta:.6}, {:.6}) minus the preimage set", t2.value)
            };
            (info.regime, f, note)
        }
        Regime::T7b => {
            let (t1, t2) = (&info.equilibria[0], &info.equilibria[1]);
            let delta = info.delta.expect("delta computed for T7b");
            let f = if x0 >= delta && x0 <= t1.value {
                fixed(t1)
            } else {
                fixed(t2)
            };
            (
                info.regime,
                f,
                format!(
                    "tangent equilibrium attracts [{delta:.6}, {:.6}]; the rest goes to the upper equilibrium",
                    t1.value
                ),
            )
        }
        Regime::ThreeEquilibriaUnclassified => (
            info.regime,
            Fate::Undecided,
            "three equilibria: no published convergence theorem; simulate instead".into(),
        ),
        Regime::Unclassified => (
            info.regime,
            Fate::Undecided,
            info.notes.last().cloned().unwrap_or_else(|| {
                "configuration outside the published classification".into()
            }),
        ),
        Regime::Invalid => (
            info.regime,
            Fate::Undecided,
            "c <= c_minus: orbits may produce nonpositive iterates".into(),
        ),
    };
    FatePrediction {
        regime,
        predicted,
        basin_note,
    }
}

/// Membership of `x0` in the backward-preimage set of `target`,
/// explored breadth-first through the branches of `phi^{-1}` up to
/// [`PREIMAGE_LEVELS`] levels. Returns `(member, truncated)`.
fn preimage_membership(
    params: &Params,
    info: &RegimeInfo,
    target: f64,
    x0: f64,
) -> (bool, bool) {
    let near = |x: f64, s: f64| (x - s).abs() <= 1e-9 * s.abs().max(1.0);
    if near(x0, target) {
        return (true, false);
    }
    if info.preimage_trivial == Some(true) {
        return (false, false);
    }
    let mut seen = vec![target];
    let mut frontier = vec![target];
    for _ in 0..PREIMAGE_LEVELS {
        let mut next = Vec::new();
        for &s in &frontier {
            for pre in preimages_of(params, s) {
                if near(x0, pre) {
                    return (true, true);
                }
                if seen.iter().all(|&v| (v - pre).abs() > 1e-10 * pre.max(1.0)) {
                    seen.push(pre);
                    next.push(pre);
                }
            }
        }
        if next.is_empty() || seen.len() > PREIMAGE_CAP {
            return (false, seen.len() > PREIMAGE_CAP);
        }
        next.sort_by(|a, b| a.partial_cmp(b).unwrap());
        frontier = next;
    }
    (false, true)
}

/// All positive solutions of `phi(x) = y`: roots of the cubic
/// `(a - y) x^3 + b x^2 + c x + d`.
fn preimages_of(params: &Params, y: f64) -> Vec<f64> {
    let cubic = crate::polyroot::Poly::new(vec![
        params.d(),
        params.c(),
        params.b(),
        params.a() - y,
    ]);
    match crate::polyroot::isolate_real_roots(&cubic, 0.0, f64::INFINITY) {
        Ok(rs) => rs.values().collect(),
        Err(_) => Vec::new(),
    }
}

/// How one cross-validation sample resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStatus {
    Agree,
    Mismatch,
    /// Within [`BOUNDARY_MARGIN`] of a basin boundary; excluded.
    Boundary,
    /// Predicted cycle-bound but simulation found the equilibrium, in a
    /// regime whose preimage set was only explored to finite depth.
    Whitelisted,
}

/// One prediction-vs-simulation sample.
#[derive(Debug, Clone, Serialize)]
pub struct SampleOutcome {
    pub x0: f64,
    pub predicted: Fate,
    pub simulated: Fate,
    pub status: SampleStatus,
}

/// Aggregate cross-validation result.
#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub regime: Regime,
    pub samples: Vec<SampleOutcome>,
    pub n_agree: usize,
    pub n_mismatch: usize,
    pub n_boundary: usize,
    pub n_whitelisted: usize,
}

impl CrossValidation {
    /// Agreement rate over the non-boundary samples (whitelisted
    /// entries count as agreeing, mismatches as not).
    pub fn agreement_rate(&self) -> f64 {
        let counted = self.n_agree + self.n_mismatch + self.n_whitelisted;
        if counted == 0 {
            return 1.0;
        }
        (self.n_agree + self.n_whitelisted) as f64 / counted as f64
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &SampleOutcome> {
        self.samples
            .iter()
            .filter(|s| s.status == SampleStatus::Mismatch)
    }
}

/// Run `predict_fate` and `iterate_orbit` over every sample and compare.
/// Samples within [`BOUNDARY_MARGIN`] (relative) of a basin boundary
/// (equilibria, cycle coordinates, the preimage delta, shallow preimage
/// points) are excluded as `Boundary`.
pub fn cross_validate(params: &Params, x0_samples: &[f64]) -> Result<CrossValidation> {
    let info = classify_regime(params)?;
    let mut boundaries: Vec<f64> = Vec::new();
    boundaries.extend(info.equilibria.iter().map(|e| e.value));
    for cy in &info.cycles {
        boundaries.push(cy.p);
        boundaries.push(cy.q);
    }
    boundaries.extend(info.delta);
    // Shallow preimage points are boundaries too in the regimes where
    // the preimage set steers the fate.
    if matches!(info.regime, Regime::T6c | Regime::T7a22)
        && info.preimage_trivial != Some(true)
    {
        let target = info.equilibria[0].value;
        let mut frontier = vec![target];
        for _ in 0..4 {
            let mut next = Vec::new();
            for &s in &frontier {
                next.extend(preimages_of(params, s));
            }
            boundaries.extend(next.iter().copied());
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
    }

    let near_boundary =
        |x: f64| boundaries.iter().any(|b| (x - b).abs() <= BOUNDARY_MARGIN * b.abs().max(1.0));

    let mut out = CrossValidation {
        regime: info.regime,
        samples: Vec::with_capacity(x0_samples.len()),
        n_agree: 0,
        n_mismatch: 0,
        n_boundary: 0,
        n_whitelisted: 0,
    };
    for &x0 in x0_samples {
        let prediction = predict_from_info(params, &info, x0);
        let sim = iterate_orbit(params, x0, DEFAULT_MAX_ITER, DEFAULT_TOL_CONV)?;
        let status = if near_boundary(x0) {
            out.n_boundary += 1;
            SampleStatus::Boundary
        } else if prediction.predicted.matches(&sim.fate, AGREE_TOL) {
            out.n_agree += 1;
            SampleStatus::Agree
        } else if matches!(info.regime, Regime::T6c | Regime::T7a22)
            && info.preimage_trivial != Some(true)
            && matches!(prediction.predicted, Fate::TwoCycle(..))
            && matches!(sim.fate, Fate::FixedPoint(v)
                if (v - info.equilibria[0].value).abs()
                    <= AGREE_TOL * info.equilibria[0].value.max(1.0))
        {
            out.n_whitelisted += 1;
            SampleStatus::Whitelisted
        } else {
            out.n_mismatch += 1;
            SampleStatus::Mismatch
        };
        out.samples.push(SampleOutcome {
            x0,
            predicted: prediction.predicted,
            simulated: sim.fate,
            status,
        });
    }
    Ok(out)
}

/// Fates across a log-spaced grid of initial conditions. Adjacent
/// entries with different fates bracket a basin boundary.
pub fn basin_scan(params: &Params, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, Fate)>> {
    if !(lo > 0.0) {
        return Err(Error::Domain(format!("grid start must be positive, got {lo}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 || lo == hi {
        let r = iterate_orbit(params, lo, DEFAULT_MAX_ITER, DEFAULT_TOL_CONV)?;
        return Ok(vec![(lo, r.fate)]);
    }
    if !(hi > lo) {
        return Err(Error::Domain(format!("grid needs hi > lo, got [{lo}, {hi}]")));
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x0 = (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp();
        let r = iterate_orbit(params, x0, DEFAULT_MAX_ITER, DEFAULT_TOL_CONV)?;
        out.push((x0, r.fate));
    }
    Ok(out)
}

/// Log-spaced sample grid, handy for cross-validation drivers.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

//! Per-parameter analysis records and c-sweep tables, serializable to
//! JSON and CSV.

use serde::{Deserialize, Serialize};

use crate::dynamics::{self, Regime};
use crate::model::{Params, C_MINUS_GUARD};
use crate::structures::{Equilibrium, InvariantInterval, TwoCycle};
use crate::thresholds::{self, Thresholds};
use crate::{Error, Result};

/// Plain view of the map parameters for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsView {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Complete analysis of one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub params: ParamsView,
    pub thresholds: Thresholds,
    /// Regime label; one of the theorem cases, `Unclassified`, or
    /// `invalid` when `c <= c_minus`.
    pub regime: String,
    pub equilibria: Vec<Equilibrium>,
    pub cycles: Vec<TwoCycle>,
    pub invariant_interval: Option<InvariantInterval>,
    pub notes: Vec<String>,
}

/// Analyze one parameter set. `a`, `b`, `d` must be positive; any `c`
/// is accepted — at or below `c_minus` the report carries the
/// `invalid` regime and thresholds only.
pub fn analyze(a: f64, b: f64, c: f64, d: f64) -> Result<AnalysisReport> {
    let params = Params::new(a, b, c, d)?;
    let th = thresholds::compute(a, b, d)?;
    let mut notes = Vec::new();
    if th.fold_degenerate {
        notes.push("fold below numeric resolution; reported absent".into());
    }
    if c <= th.c_minus + C_MINUS_GUARD {
        notes.push("c <= c_minus: nonpositive iterates possible".into());
        return Ok(AnalysisReport {
            params: ParamsView { a, b, c, d },
            thresholds: th,
            regime: Regime::Invalid.label().into(),
            equilibria: Vec::new(),
            cycles: Vec::new(),
            invariant_interval: None,
            notes,
        });
    }
    let info = dynamics::classify_regime(&params)?;
    notes.extend(info.notes.iter().cloned());
    Ok(AnalysisReport {
        params: ParamsView { a, b, c, d },
        thresholds: th,
        regime: info.regime.label().into(),
        equilibria: info.equilibria,
        cycles: info.cycles,
        invariant_interval: info.invariant_interval,
        notes,
    })
}

/// One row of a c-sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub c: f64,
    pub c_minus: f64,
    pub c_star: f64,
    pub n_equilibria: usize,
    pub n_cycles: usize,
    pub regime: String,
}

/// Sweep `c` across `[lo, hi]` in `steps` evenly spaced rows (a single
/// step evaluates at `lo`). Each row is the projection of
/// [`analyze`] at that `c`.
pub fn sweep(a: f64, b: f64, d: f64, lo: f64, hi: f64, steps: usize) -> Result<Vec<SweepRow>> {
    if steps == 0 {
        return Err(Error::InvalidParams("sweep needs at least one step".into()));
    }
    if steps > 1 && !(hi > lo) {
        return Err(Error::InvalidParams(format!(
            "sweep range needs hi > lo, got [{lo}, {hi}]"
        )));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let c = if steps == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (steps - 1) as f64
        };
        let report = analyze(a, b, c, d)?;
        rows.push(SweepRow {
            c,
            c_minus: report.thresholds.c_minus,
            c_star: report.thresholds.c_star,
            n_equilibria: report.equilibria.len(),
            n_cycles: report.cycles.len(),
            regime: report.regime,
        });
    }
    Ok(rows)
}

/// CSV rendering of sweep rows, header included.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("c,c_minus,c_star,n_equilibria,n_cycles,regime\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.c, r.c_minus, r.c_star, r.n_equilibria, r.n_cycles, r.regime
        ));
    }
    out
}

/// Format with six significant digits for display output.
pub fn fmt_sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (5 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Human-readable rendering of an analysis report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "parameters: a={} b={} c={} d={}\n",
        r.params.a, r.params.b, r.params.c, r.params.d
    ));
    s.push_str(&format!("regime: {}\n", r.regime));
    s.push_str(&format!(
        "thresholds: c_minus={} c_star={} c1_star={} c_b={}\n",
        fmt_sig6(r.thresholds.c_minus),
        fmt_sig6(r.thresholds.c_star),
        fmt_sig6(r.thresholds.c1_star),
        fmt_sig6(r.thresholds.c_b),
    ));
    if let Some(f) = &r.thresholds.fold {
        s.push_str(&format!(
            "fold: c_m={} c_M={} t_m={} t_M={}\n",
            fmt_sig6(f.c_m),
            fmt_sig6(f.c_M),
            fmt_sig6(f.t_m),
            fmt_sig6(f.t_M),
        ));
    }
    s.push_str(&format!("equilibria ({}):\n", r.equilibria.len()));
    for e in &r.equilibria {
        s.push_str(&format!(
            "  t={} multiplier={} stability={:?}{}\n",
            fmt_sig6(e.value),
            fmt_sig6(e.multiplier),
            e.stability,
            if e.tangent { " tangent" } else { "" },
        ));
    }
    s.push_str(&format!("2-cycles ({}):\n", r.cycles.len()));
    for c in &r.cycles {
        s.push_str(&format!(
            "  ({}, {}) multiplier={}{}\n",
            fmt_sig6(c.p),
            fmt_sig6(c.q),
            fmt_sig6(c.multiplier),
            if c.tangent { " tangent" } else { "" },
        ));
    }
    if let Some(ii) = &r.invariant_interval {
        s.push_str(&format!(
            "invariant interval: [{}, {}] hypothesis_h={} grid_invariant={}\n",
            fmt_sig6(ii.lo),
            fmt_sig6(ii.hi),
            ii.hypothesis_h,
            ii.grid_invariant,
        ));
    }
    for n in &r.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

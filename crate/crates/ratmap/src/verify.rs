//! Embedded golden suite: fourteen reference parameter sets, one per
//! convergence regime and variant, with their known cycles, regimes,
//! and structural facts. Reference coordinates are quoted to four
//! decimal places, so they are checked to ±5e-4; counts are exact.
//! Cases are named after the regime they exemplify.

use serde::Serialize;

use crate::dynamics::{self, Regime};
use crate::model::Params;
use crate::structures;
use crate::Result;

/// Coordinate tolerance: reference values carry four decimals, so the
/// last digit may be rounded either way.
pub const GOLDEN_TOL: f64 = 5e-4;

/// One published example: parameters plus every claim made about them.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenCase {
    pub name: &'static str,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// Expected cycles as (p, q), sorted by p; empty means "no cycle".
    pub cycles: &'static [(f64, f64)],
    /// Expected number of equilibria, when the source states it.
    pub equilibria: Option<usize>,
    /// Expected regime, when the source assigns one.
    pub regime: Option<Regime>,
    /// Whether the invariant-interval hypothesis is claimed to hold.
    pub hypothesis_h: Option<bool>,
}

/// The golden table: four decreasing-map cases, four critical-window
/// cases with the equilibrium at or right of the minimum, two with it
/// left of the minimum, and four fold-tangency cases.
pub fn golden_cases() -> &'static [GoldenCase] {
    const CASES: &[GoldenCase] = &[
        GoldenCase {
            name: "T4a",
            a: 1.0,
            b: 1.0,
            c: 1.0,
            d: 1.0,
            cycles: &[],
            equilibria: Some(1),
            regime: Some(Regime::T4a),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T4b",
            a: 0.1,
            b: 2.0,
            c: 1.0,
            d: 0.1,
            cycles: &[(0.1118, 169.4132)],
            equilibria: Some(1),
            regime: Some(Regime::T4b),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T4c",
            a: 0.21,
            b: 2.1,
            c: -2.8,
            d: 1.3,
            cycles: &[(0.2593, 41.2206), (0.3525, 13.3090)],
            equilibria: Some(1),
            regime: Some(Regime::T4c),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T4d",
            a: 0.18,
            b: 2.1,
            c: -2.8,
            d: 1.3,
            cycles: &[(0.2001, 102.9321), (0.4058, 7.8071), (0.7646, 1.0453)],
            equilibria: Some(1),
            regime: Some(Regime::T4d),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T5b-hi",
            a: 1.0,
            b: 5.0,
            c: -4.0,
            d: 1.0,
            cycles: &[],
            equilibria: Some(1),
            regime: Some(Regime::T5b),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T5c-hi",
            a: 0.1,
            b: 5.0,
            c: -4.0,
            d: 1.0,
            cycles: &[(0.1111, 450.5876), (0.2019, 48.2751)],
            equilibria: Some(1),
            regime: Some(Regime::T5c),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T5b-mid",
            a: 0.15,
            b: 4.0,
            c: -4.0,
            d: 1.1,
            cycles: &[],
            equilibria: Some(1),
            regime: Some(Regime::T5b),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T5c-mid",
            a: 0.1,
            b: 4.0,
            c: -4.0,
            d: 1.1,
            cycles: &[(0.1068, 590.5885), (0.2378, 28.0116)],
            equilibria: Some(1),
            regime: Some(Regime::T5c),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T6b",
            a: 0.7,
            b: 2.2,
            c: -3.0,
            d: 1.0,
            cycles: &[],
            equilibria: Some(1),
            regime: Some(Regime::T6b),
            hypothesis_h: Some(true),
        },
        GoldenCase {
            name: "T6c",
            a: 1.0,
            b: 1.0,
            c: -3.3,
            d: 3.0,
            cycles: &[(1.1687, 1.3190)],
            equilibria: Some(1),
            regime: Some(Regime::T6c),
            hypothesis_h: Some(true),
        },
        GoldenCase {
            name: "T7a1",
            a: 1.0,
            b: 2.4,
            c: -3.8,
            d: 1.4,
            cycles: &[],
            equilibria: Some(2),
            regime: Some(Regime::T7a1),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T7a21",
            a: 1.0,
            b: 2.0,
            c: -3.0,
            d: 1.0,
            cycles: &[],
            equilibria: Some(2),
            regime: Some(Regime::T7a21),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T7a22",
            a: 1.0,
            b: 1.9,
            c: -2.8,
            d: 0.9,
            cycles: &[(0.5573, 0.5937)],
            equilibria: Some(2),
            regime: Some(Regime::T7a22),
            hypothesis_h: None,
        },
        GoldenCase {
            name: "T7b",
            a: 2.0,
            b: 0.5,
            c: -3.0,
            d: 1.5,
            cycles: &[],
            equilibria: Some(2),
            regime: Some(Regime::T7b),
            hypothesis_h: None,
        },
    ];
    CASES
}

/// Result of checking one golden case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub computed_cycles: Vec<(f64, f64)>,
    pub expected_cycles: Vec<(f64, f64)>,
    pub computed_equilibria: usize,
    pub computed_regime: String,
    pub failures: Vec<String>,
}

/// Check one golden case against the library.
pub fn check_case(case: &GoldenCase) -> Result<CaseOutcome> {
    let params = Params::validated(case.a, case.b, case.c, case.d)?;
    let info = dynamics::classify_regime(&params)?;
    let mut failures = Vec::new();

    let computed_cycles: Vec<(f64, f64)> = info.cycles.iter().map(|c| (c.p, c.q)).collect();
    if computed_cycles.len() != case.cycles.len() {
        failures.push(format!(
            "cycle count: computed {}, expected {}",
            computed_cycles.len(),
            case.cycles.len()
        ));
    } else {
        for ((cp, cq), (ep, eq)) in computed_cycles.iter().zip(case.cycles) {
            if (cp - ep).abs() > GOLDEN_TOL || (cq - eq).abs() > GOLDEN_TOL {
                failures.push(format!(
                    "cycle ({cp:.6}, {cq:.6}) vs published ({ep}, {eq})"
                ));
            }
        }
    }
    if let Some(n) = case.equilibria {
        if info.equilibria.len() != n {
            failures.push(format!(
                "equilibrium count: computed {}, expected {n}",
                info.equilibria.len()
            ));
        }
    }
    if let Some(regime) = case.regime {
        if info.regime != regime {
            failures.push(format!(
                "regime: computed {}, expected {regime}",
                info.regime
            ));
        }
    }
    if let Some(h) = case.hypothesis_h {
        let ii = structures::invariant_interval(&params)?;
        if ii.hypothesis_h != h {
            failures.push(format!(
                "hypothesis (H): computed {}, expected {h}",
                ii.hypothesis_h
            ));
        }
    }
    Ok(CaseOutcome {
        name: case.name,
        pass: failures.is_empty(),
        computed_cycles,
        expected_cycles: case.cycles.to_vec(),
        computed_equilibria: info.equilibria.len(),
        computed_regime: info.regime.label().to_string(),
        failures,
    })
}

/// Run the whole golden suite.
pub fn run_all() -> Result<Vec<CaseOutcome>> {
    golden_cases().iter().map(check_case).collect()
}

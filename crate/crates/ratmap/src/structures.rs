//! Equilibria, period-two cycles, and the auxiliary quantities used by
//! the convergence theorems: the sixth-degree cycle polynomial `G`, the
//! positivity certificates `G1`/`G2`, the matched point `eta`, the
//! invariant interval, and preimages on the decreasing branch.

use serde::{Deserialize, Serialize};

use crate::model::Params;
use crate::polyroot::{self, Poly};
use crate::thresholds;
use crate::{Error, Result};

/// A root of G closer than this (relative) to an equilibrium is the
/// equilibrium, not a period-two point.
pub const EQ_SEPARATION: f64 = 1e-7;

/// Relative tolerance when pairing a G-root `r` with the G-root nearest
/// to `phi(r)`.
const PAIR_MATCH_TOL: f64 = 1e-5;

/// Stability class of a periodic structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Attracting,
    Repelling,
    Neutral,
    Semistable,
}

/// A fixed point of the map with its multiplier `phi'(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub value: f64,
    pub multiplier: f64,
    /// True when the value is a root of the equilibrium quartic of
    /// multiplicity >= 2, i.e. the map is tangent to the diagonal.
    pub tangent: bool,
    pub stability: Stability,
}

/// A prime period-two orbit `p -> q -> p` with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoCycle {
    pub p: f64,
    pub q: f64,
    /// Cycle multiplier `phi'(p) * phi'(q)`.
    pub multiplier: f64,
    /// True when the underlying G-roots have even multiplicity: the
    /// second iterate is tangent to the diagonal and the cycle is
    /// attracting from one side only.
    pub tangent: bool,
}

/// Invariant-interval data for the regime with the equilibrium left of
/// the map's minimum: `I = [phi(x_m), phi^2(x_m)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantInterval {
    pub lo: f64,
    pub hi: f64,
    /// Hypothesis (H): `c <= c1_star`, or `c > c1_star` together with
    /// `phi^2(x_m) <= eta`. Invariance of `I` is guaranteed under it.
    pub hypothesis_h: bool,
    /// Result of the 64-point spot check `phi(I)` inside `I`.
    pub grid_invariant: bool,
}

/// Equilibrium quartic `P(t) = t^4 - a t^3 - b t^2 - c t - d`; its
/// positive roots are exactly the fixed points of the map.
pub fn p_poly(params: &Params) -> Poly {
    Poly::new(vec![
        -params.d(),
        -params.c(),
        -params.b(),
        -params.a(),
        1.0,
    ])
}

/// All positive equilibria, ascending. The quartic guarantees between
/// one and three; any other count is a numeric failure.
///
/// A fixed-point pair closer than ~1e-6 (relative) is a fold tangency
/// seen at floating-point resolution; it is merged into a single
/// tangent equilibrium rather than reported as two.
pub fn equilibria(params: &Params) -> Result<Vec<Equilibrium>> {
    let p = p_poly(params);
    let roots = polyroot::isolate_real_roots(&p, 0.0, f64::INFINITY)?;
    let mut merged: Vec<(f64, u32)> = Vec::with_capacity(roots.len());
    for r in &roots.roots {
        match merged.last_mut() {
            Some((v, m)) if (r.value - *v).abs() <= 1e-6 * v.abs().max(1.0) => {
                *v = 0.5 * (*v + r.value);
                *m += r.multiplicity;
            }
            _ => merged.push((r.value, r.multiplicity)),
        }
    }
    if merged.is_empty() || merged.len() > 3 {
        return Err(Error::NumericFailure(format!(
            "equilibrium count {} outside 1..=3",
            merged.len()
        )));
    }
    Ok(merged
        .into_iter()
        .map(|(value, multiplicity)| {
            let multiplier = params.phi_prime_unchecked(value);
            let tangent = multiplicity >= 2;
            Equilibrium {
                value,
                multiplier,
                tangent,
                stability: classify(multiplier, tangent),
            }
        })
        .collect())
}

fn classify(multiplier: f64, tangent: bool) -> Stability {
    if tangent {
        Stability::Semistable
    } else if multiplier.abs() < 1.0 {
        Stability::Attracting
    } else if multiplier.abs() > 1.0 {
        Stability::Repelling
    } else {
        Stability::Neutral
    }
}

/// The sixth-degree polynomial whose positive roots (off the
/// equilibria) are the period-two points:
///
/// ```text
/// G(x) = a^3 x^6 + (2a^2 b - ac - d) x^5 + (ab^2 - ad - bc + 2a^2 c) x^4
///      + (2a^2 d + 2abc - c^2 - bd) x^3 + (ac^2 + 2abd - 2cd) x^2
///      + (2acd - d^2) x + a d^2
/// ```
pub fn g_poly(params: &Params) -> Poly {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    Poly::new(vec![
        a * d * d,
        2.0 * a * c * d - d * d,
        a * c * c + 2.0 * a * b * d - 2.0 * c * d,
        2.0 * a * a * d + 2.0 * a * b * c - c * c - b * d,
        a * b * b - a * d - b * c + 2.0 * a * a * c,
        2.0 * a * a * b - a * c - d,
        a * a * a,
    ])
}

/// All prime period-two cycles, at most three, sorted by increasing
/// `p`. Positive roots of `G` within [`EQ_SEPARATION`] of an
/// equilibrium are discarded; the rest must pair up under the map or
/// the structure theory has been violated numerically.
pub fn two_cycles(params: &Params) -> Result<Vec<TwoCycle>> {
    let eqs = equilibria(params)?;
    let g = g_poly(params);
    let roots = polyroot::isolate_real_roots(&g, 0.0, f64::INFINITY)?;

    let mut candidates: Vec<(f64, u32)> = roots
        .roots
        .iter()
        .filter(|r| {
            eqs.iter()
                .all(|e| (r.value - e.value).abs() > EQ_SEPARATION * e.value.abs().max(1.0))
        })
        .map(|r| (r.value, r.multiplicity))
        .collect();

    let mut cycles = Vec::new();
    while let Some((p, mult)) = candidates.first().copied() {
        candidates.remove(0);
        let image = params.phi_unchecked(p);
        let pos = candidates
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                (x.0 - image)
                    .abs()
                    .partial_cmp(&(y.0 - image).abs())
                    .unwrap()
            })
            .map(|(i, _)| i);
        let matched = match pos {
            Some(i)
                if (candidates[i].0 - image).abs()
                    <= PAIR_MATCH_TOL * image.abs().max(1.0) =>
            {
                candidates.remove(i)
            }
            _ => {
                return Err(Error::NumericFailure(format!(
                    "unpaired period-two root at {p} (phi maps it to {image})"
                )))
            }
        };
        let (q, q_mult) = matched;
        let multiplier = params.phi_prime_unchecked(p) * params.phi_prime_unchecked(q);
        cycles.push(TwoCycle {
            p: p.min(q),
            q: p.max(q),
            multiplier,
            tangent: mult % 2 == 0 || q_mult % 2 == 0,
        });
    }
    if cycles.len() > 3 {
        return Err(Error::NumericFailure(format!(
            "{} period-two cycles found; at most three are possible",
            cycles.len()
        )));
    }
    cycles.sort_by(|a, b| a.p.partial_cmp(&b.p).unwrap());
    Ok(cycles)
}

/// The two positivity certificates of the no-cycle zone, evaluated at
/// the maximum point `x_M`. Defined only for `c` in `(c_minus, c_star)`
/// with some equilibrium at or above `x_M`.
pub fn g1_g2(params: &Params) -> Result<(f64, f64)> {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    let ex = require_window(params)?;
    let eqs = equilibria(params)?;
    if !eqs.iter().any(|e| e.value >= ex.x_M) {
        return Err(Error::Domain(
            "G1/G2 need an equilibrium at or above x_M".into(),
        ));
    }
    let x = ex.x_M;
    let g1 = ((((-d) * x + (a * d - b * c)) * x - (c * c + b * d)) * x - 2.0 * c * d) * x - d * d;
    let g2 = (((((a * a * x + (2.0 * a * b - c)) * x + (b * b - 2.0 * d + 2.0 * a * c)) * x
        + (2.0 * a * d + 2.0 * b * c))
        * x
        + (c * c + 2.0 * b * d))
        * x
        + 2.0 * c * d)
        * x
        + d * d;
    Ok((g1, g2))
}

/// The unique point above `x_M` where the map repeats its value at the
/// minimum: `eta = -d x_m / (c x_m + 2 d)`, with `phi(eta) = phi(x_m)`.
/// Requires `c1_star < c < c_star` (and `c > c_minus`).
pub fn eta(params: &Params) -> Result<f64> {
    let ex = require_window(params)?;
    let (c, d) = (params.c(), params.d());
    if c <= thresholds::c1_star(params.b(), d) {
        return Err(Error::Domain(
            "eta requires c > c1_star (phi(x_m) above the asymptote)".into(),
        ));
    }
    let den = c * ex.x_m + 2.0 * d;
    if den >= 0.0 {
        return Err(Error::NumericFailure(format!(
            "eta denominator c*x_m + 2d = {den} not negative"
        )));
    }
    Ok(-d * ex.x_m / den)
}

/// `I = [phi(x_m), phi^2(x_m)]` for the regime with a unique
/// equilibrium left of the minimum point.
pub fn invariant_interval(params: &Params) -> Result<InvariantInterval> {
    let ex = require_window(params)?;
    let eqs = equilibria(params)?;
    if eqs.len() != 1 || eqs[0].value >= ex.x_m {
        return Err(Error::Domain(
            "invariant interval needs a unique equilibrium below x_m".into(),
        ));
    }
    let lo = params.phi_unchecked(ex.x_m);
    let hi = params.phi_unchecked(lo);
    if !(lo > 0.0) || hi < lo {
        return Err(Error::NumericFailure(format!(
            "invariant interval degenerate: [{lo}, {hi}]"
        )));
    }
    let hypothesis_h = if params.c() <= thresholds::c1_star(params.b(), params.d()) {
        true
    } else {
        hi <= eta(params)?
    };
    let tol = 1e-9 * hi.abs().max(1.0);
    let grid_invariant = (0..64).all(|i| {
        let t = lo + (hi - lo) * i as f64 / 63.0;
        let y = params.phi_unchecked(t);
        y >= lo - tol && y <= hi + tol
    });
    Ok(InvariantInterval {
        lo,
        hi,
        hypothesis_h,
        grid_invariant,
    })
}

/// Unique preimage of `target` on the decreasing branch `(0, x_m]`,
/// found by monotone bisection with Newton sharpening. `target` must be
/// at or above `phi(x_m)`, the branch minimum.
pub fn preimage_below_xm(params: &Params, target: f64) -> Result<f64> {
    let ex = require_window(params)?;
    let phi_xm = params.phi_unchecked(ex.x_m);
    if target < phi_xm {
        return Err(Error::Domain(format!(
            "target {target} below phi(x_m) = {phi_xm}; no preimage on (0, x_m]"
        )));
    }
    if target == phi_xm {
        return Ok(ex.x_m);
    }
    // Bracket: phi -> +inf as x -> 0+, so halving finds the left end.
    let mut lo = ex.x_m;
    for _ in 0..2100 {
        lo *= 0.5;
        if params.phi_unchecked(lo) >= target {
            break;
        }
    }
    if params.phi_unchecked(lo) < target {
        return Err(Error::NumericFailure(
            "failed to bracket preimage on the decreasing branch".into(),
        ));
    }
    let (mut lo, mut hi) = (lo, ex.x_m);
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = params.phi_unchecked(mid) - target;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let dm = params.phi_prime_unchecked(mid);
        if dm != 0.0 {
            let xn = mid - fm / dm;
            if xn > lo && xn < hi {
                let fxn = params.phi_unchecked(xn) - target;
                if fxn == 0.0 {
                    return Ok(xn);
                }
                if fxn > 0.0 {
                    lo = xn;
                } else {
                    hi = xn;
                }
            }
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Whether the preimage set of the equilibrium reduces to the
/// equilibrium alone: `t < -d x_M / (c x_M + 2 d)`, equivalently
/// `phi(x_M) < t`. Only meaningful in the regime with a unique
/// equilibrium below `x_m` and exactly one cycle. A value within 1e-12
/// of the boundary reports `false`.
pub fn preimage_set_is_trivial(params: &Params) -> Result<bool> {
    let ex = require_window(params)?;
    let eqs = equilibria(params)?;
    if eqs.len() != 1 || eqs[0].value >= ex.x_m {
        return Err(Error::Domain(
            "preimage-set test needs a unique equilibrium below x_m".into(),
        ));
    }
    if two_cycles(params)?.len() != 1 {
        return Err(Error::Domain("preimage-set test needs exactly one cycle".into()));
    }
    let t = eqs[0].value;
    let bound = -params.d() * ex.x_M / (params.c() * ex.x_M + 2.0 * params.d());
    Ok(t < bound - 1e-12 * bound.abs().max(1.0))
}

/// Checks `c_minus < c < c_star` and returns the critical window.
fn require_window(params: &Params) -> Result<crate::model::Extrema> {
    let c = params.c();
    if c >= thresholds::c_star(params.b(), params.d()) {
        return Err(Error::Domain(format!(
            "operation defined for c < c_star only, got c = {c}"
        )));
    }
    let c_minus = thresholds::c_minus(params.a(), params.b(), params.d())?;
    if c <= c_minus {
        return Err(Error::Domain(format!(
            "operation defined for c > c_minus = {c_minus}, got c = {c}"
        )));
    }
    params.extrema().ok_or_else(|| {
        Error::NumericFailure("extrema absent inside (c_minus, c_star)".into())
    })
}

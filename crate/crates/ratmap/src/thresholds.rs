//! Critical parameter values: `c_minus`, `c_star`, `c1_star`, `c_b`,
//! the tangency point `t_star`, the numerator tangency `x_star`, and
//! the fold values `(c_m, c_M)` where the equilibrium count changes.

use serde::{Deserialize, Serialize};

use crate::model::Params;
use crate::polyroot::{self, Poly};
use crate::{Error, Result};

/// Fold data: the two c-values at which the equilibrium quartic is
/// tangent to the axis, with the tangency locations. Ordering:
/// `c_b < c_m < c_M < c_star` and `0 < t_M < t_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Fold {
    pub c_m: f64,
    pub c_M: f64,
    pub t_m: f64,
    pub t_M: f64,
}

/// Every critical c-value for a given `(a, b, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub c_minus: f64,
    pub c_star: f64,
    pub c1_star: f64,
    pub c_b: f64,
    pub fold: Option<Fold>,
    /// Set when the fold exists formally but `c_M - c_m` is below
    /// numeric resolution, in which case `fold` is reported absent.
    pub fold_degenerate: bool,
}

/// The cubic whose unique negative root is `c_minus`:
/// `Q(x) = 4a x^3 - b^2 x^2 - 18abd x + 27 a^2 d^2 + 4 d b^3`.
pub fn q_poly(a: f64, b: f64, d: f64) -> Poly {
    Poly::new(vec![
        27.0 * a * a * d * d + 4.0 * d * b * b * b,
        -18.0 * a * b * d,
        -(b * b),
        4.0 * a,
    ])
}

/// Unique negative root of `Q`; below it the map's numerator admits a
/// positive zero and orbits can leave (0, inf).
pub fn c_minus(a: f64, b: f64, d: f64) -> Result<f64> {
    let q = q_poly(a, b, d);
    let roots = polyroot::isolate_real_roots(&q, f64::NEG_INFINITY, 0.0)?;
    if roots.len() != 1 {
        return Err(Error::NumericFailure(format!(
            "expected exactly one negative root of Q, found {} (a={a}, b={b}, d={d})",
            roots.len()
        )));
    }
    Ok(roots.roots[0].value)
}

/// `c_star = -sqrt(3 b d)`: below it `phi` has interior critical
/// points, at or above it `phi` is decreasing on (0, inf).
pub fn c_star(b: f64, d: f64) -> f64 {
    -(3.0 * b * d).sqrt()
}

/// `c1_star = -2 sqrt(b d)`: the threshold at which `phi(x_m)` crosses
/// the horizontal asymptote `a`.
pub fn c1_star(b: f64, d: f64) -> f64 {
    -2.0 * (b * d).sqrt()
}

/// The quadratic whose unique negative root is `c_b`:
/// `H(x) = 108 x^2 + (108ab + 27a^3) x - 9 a^2 b^2 - 32 b^3`.
pub fn h_poly(a: f64, b: f64) -> Poly {
    Poly::new(vec![
        -9.0 * a * a * b * b - 32.0 * b * b * b,
        108.0 * a * b + 27.0 * a * a * a,
        108.0,
    ])
}

/// Unique negative root of `H`, by the quadratic formula. The constant
/// term is negative, so the two roots straddle zero and the negative
/// one is `(-beta - sqrt(beta^2 - 4*108*gamma)) / 216` with no
/// cancellation.
pub fn c_b(a: f64, b: f64) -> f64 {
    let beta = 108.0 * a * b + 27.0 * a * a * a;
    let gamma = -9.0 * a * a * b * b - 32.0 * b * b * b;
    (-beta - (beta * beta - 4.0 * 108.0 * gamma).sqrt()) / 216.0
}

/// Tangency location of `P'` with the axis at `c = c_b`:
/// `t_star = -(6 c_b + a b) / (3 a^2 + 8 b) > 0`.
pub fn t_star(a: f64, b: f64) -> f64 {
    -(6.0 * c_b(a, b) + a * b) / (3.0 * a * a + 8.0 * b)
}

/// Tangency point of the numerator `F` when `c = c_minus`:
/// `x_star = (b c - 9 a d) / (6 a c - 2 b^2)`. Diagnostic; requires
/// `c < 0`, under which the denominator is strictly negative.
pub fn x_star(params: &Params) -> Result<f64> {
    let (a, b, c, d) = (params.a(), params.b(), params.c(), params.d());
    if c >= 0.0 {
        return Err(Error::Domain(format!("x_star requires c < 0, got c = {c}")));
    }
    let den = 6.0 * a * c - 2.0 * b * b;
    if den == 0.0 {
        return Err(Error::NumericFailure("x_star denominator is zero".into()));
    }
    Ok((b * c - 9.0 * a * d) / den)
}

/// Fold c-values. Present iff `c_b < (b^2 - 12 d) / (3 a)`.
///
/// Eliminating c from the tangency system {P(t) = 0, P'(t) = 0} gives
/// `R(t) = 3 t^4 - 2 a t^3 - b t^2 + d = 0`; its two positive roots are
/// the tangency locations `t_M < t_m`, and the matching c-values are
/// recovered through `c(t) = 4 t^3 - 3 a t^2 - 2 b t`.
///
/// Returns `(fold, degenerate)`; `degenerate` is set when the two
/// tangencies coincide below numeric resolution (`c_M - c_m < 1e-9`),
/// in which case the fold is reported absent.
pub fn fold_cs(a: f64, b: f64, d: f64) -> Result<(Option<Fold>, bool)> {
    if c_b(a, b) >= (b * b - 12.0 * d) / (3.0 * a) {
        return Ok((None, false));
    }
    let r = Poly::new(vec![d, 0.0, -b, -2.0 * a, 3.0]);
    let roots = polyroot::isolate_real_roots(&r, 0.0, f64::INFINITY)?;
    let c_of_t = |t: f64| ((4.0 * t - 3.0 * a) * t - 2.0 * b) * t;
    match roots.len() {
        2 => {
            let t_max = roots.roots[0].value; // smaller location = maximum point of P
            let t_min = roots.roots[1].value;
            let fold = Fold {
                c_m: c_of_t(t_min),
                c_M: c_of_t(t_max),
                t_m: t_min,
                t_M: t_max,
            };
            if fold.c_M - fold.c_m < 1e-9 {
                return Ok((None, true));
            }
            Ok((Some(fold), false))
        }
        1 if roots.roots[0].multiplicity >= 2 => Ok((None, true)),
        n => Err(Error::NumericFailure(format!(
            "fold condition holds but R(t) has {n} positive roots (a={a}, b={b}, d={d})"
        ))),
    }
}

/// Assemble all thresholds for `(a, b, d)`.
pub fn compute(a: f64, b: f64, d: f64) -> Result<Thresholds> {
    for (name, v) in [("a", a), ("b", b), ("d", d)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParams(format!(
                "{name} must be strictly positive and finite, got {v}"
            )));
        }
    }
    let (fold, fold_degenerate) = fold_cs(a, b, d)?;
    Ok(Thresholds {
        c_minus: c_minus(a, b, d)?,
        c_star: c_star(b, d),
        c1_star: c1_star(b, d),
        c_b: c_b(a, b),
        fold,
        fold_degenerate,
    })
}

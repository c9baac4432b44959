//! The map `phi(x) = (a x^3 + b x^2 + c x + d) / x^3` on x > 0.

use serde::{Deserialize, Serialize};

use crate::thresholds;
use crate::{Error, Result};

/// Guard band added to `c_minus` when validating `c`; the theory needs
/// the strict inequality `c > c_minus`.
pub const C_MINUS_GUARD: f64 = 1e-12;

/// Map parameters. `a`, `b`, `d` are strictly positive; `c` may be
/// negative. Use [`Params::validated`] to additionally require
/// `c > c_minus`, which guarantees every orbit stays positive;
/// [`Params::new`] admits any `c` so that the nonpositive-iterate
/// regime can still be explored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Params {
    /// Positivity-checked construction; `c` is unrestricted.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Params> {
        for (name, v) in [("a", a), ("b", b), ("d", d)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        if !c.is_finite() {
            return Err(Error::InvalidParams(format!("c must be finite, got {c}")));
        }
        Ok(Params { a, b, c, d })
    }

    /// Construction that also rejects `c <= c_minus + guard`, so the
    /// numerator stays positive and no orbit can leave (0, inf).
    pub fn validated(a: f64, b: f64, c: f64, d: f64) -> Result<Params> {
        let p = Params::new(a, b, c, d)?;
        let c_minus = thresholds::c_minus(a, b, d)?;
        if c <= c_minus + C_MINUS_GUARD {
            return Err(Error::InvalidParams(format!(
                "c = {c} must exceed c_minus = {c_minus} (nonpositive iterates otherwise)"
            )));
        }
        Ok(p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// One map step. Evaluation order is fixed as
    /// `a + (b + (c + d/x)/x)/x` so results are bit-reproducible.
    pub fn phi(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("phi requires x > 0, got {x}")));
        }
        Ok(self.phi_unchecked(x))
    }

    #[inline]
    pub(crate) fn phi_unchecked(&self, x: f64) -> f64 {
        self.a + (self.b + (self.c + self.d / x) / x) / x
    }

    /// Derivative `phi'(x) = -(b x^2 + 2 c x + 3 d) / x^4`.
    pub fn phi_prime(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("phi' requires x > 0, got {x}")));
        }
        Ok(self.phi_prime_unchecked(x))
    }

    #[inline]
    pub(crate) fn phi_prime_unchecked(&self, x: f64) -> f64 {
        let x2 = x * x;
        -(self.b * x2 + 2.0 * self.c * x + 3.0 * self.d) / (x2 * x2)
    }

    /// Second iterate `phi(phi(x))`. Fails if the intermediate value is
    /// not positive, which is possible only when `c <= c_minus`.
    pub fn phi2(&self, x: f64) -> Result<f64> {
        let y = self.phi(x)?;
        if !(y > 0.0) {
            return Err(Error::Domain(format!(
                "phi(x) = {y} <= 0; second iterate undefined"
            )));
        }
        Ok(self.phi_unchecked(y))
    }

    /// Numerator positivity: `F(x) = a x^3 + b x^2 + c x + d > 0` for
    /// all x > 0. Immediate for c >= 0; otherwise F has a unique
    /// interior minimum on (0, inf) whose sign decides.
    pub fn numerator_positive(&self) -> bool {
        if self.c >= 0.0 {
            return true;
        }
        // F'(x) = 3a x^2 + 2b x + c has exactly one positive root.
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let disc = b * b - 3.0 * a * c;
        let x_min = (-b + disc.sqrt()) / (3.0 * a);
        let f_min = ((a * x_min + b) * x_min + c) * x_min + d;
        f_min > 0.0
    }

    /// Interior critical points of `phi`, present exactly when
    /// `c < c_star = -sqrt(3 b d)`. At and above `c_star` the map is
    /// decreasing on (0, inf) and there is nothing to return.
    pub fn extrema(&self) -> Option<Extrema> {
        let (b, c, d) = (self.b, self.c, self.d);
        if c >= thresholds::c_star(b, d) {
            return None;
        }
        let disc = (c * c - 3.0 * b * d).sqrt();
        let x_max = (-c + disc) / b;
        // x_m * x_M = 3d/b; the product form avoids cancellation in -c - disc.
        let x_min = 3.0 * d / (b * x_max);
        Some(Extrema {
            x_m: x_min,
            x_M: x_max,
        })
    }
}

/// Locations of the local minimum and maximum of `phi`,
/// `0 < x_m < x_M`, both satisfying `b x^2 + 2 c x + 3 d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct Extrema {
    pub x_m: f64,
    pub x_M: f64,
}

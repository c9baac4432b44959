//! Real-root isolation and refinement for low-degree polynomials.
//!
//! Dense univariate polynomials over `f64`, coefficients in ascending
//! degree order. Root counting uses Sturm sequences built on the
//! squarefree part; multiplicities come from the numeric gcd chain;
//! refinement is bisection with Newton acceleration inside a
//! sign-change bracket. Everything here is deterministic.
//!
//! Floating-point remainder cascades cannot decide "is this remainder
//! zero" from a single fixed threshold: rescaling small remainders
//! amplifies their relative noise step by step. The gcd therefore
//! (1) rescales the variable so roots sit near unit magnitude,
//! (2) tracks the accumulated noise amplification and widens its
//! zero-cutoff accordingly (never below [`GCD_CUTOFF`]), and (3) has
//! its verdict confirmed against the polynomial itself: a claimed
//! multiple root must actually annihilate both `p` and `p'` at noise
//! level, otherwise `p` is treated as squarefree.

use crate::{Error, Result};

/// Absolute bracket-width tolerance used for root refinement.
pub const TOL_ROOT: f64 = 1e-12;

/// Baseline relative coefficient cutoff for the Euclidean remainder
/// sequence; the adaptive noise estimate can only widen it.
pub const GCD_CUTOFF: f64 = 1e-10;

/// Hard floor for Sturm-chain remainders. The chain is built on a
/// squarefree polynomial whose true cascade runs to a nonzero constant,
/// so only machine-level remainders may stop it early.
const STURM_FLOOR: f64 = 1e-13;

/// Relative tolerance under which an evaluated chain entry counts as a
/// sign of zero (skipped) when counting Sturm sign variations.
const SIGN_EPS: f64 = 1e-12;

/// A gcd-claimed multiple root is accepted only if `|p|` there is at
/// noise level and `|p'|` is small, both relative to the evaluation
/// magnitude. True multiple roots sit many orders below either bound;
/// a tight-but-resolvable root pair fails the first.
const CONFIRM_ROOT_TOL: f64 = 1e-11;
const CONFIRM_DERIV_TOL: f64 = 1e-5;

/// Tolerance for matching an isolated root of the squarefree part
/// against a root of the gcd chain when assigning multiplicities.
const MULT_MATCH_TOL: f64 = 1e-5;

const MAX_REFINE_ITER: usize = 300;

/// Dense real-coefficient polynomial, `coeffs[k]` multiplying `x^k`.
/// Trailing zero coefficients are trimmed on construction; the zero
/// polynomial is represented as `[0.0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Poly {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: vec![0.0] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Upper bound on |p(x)| from coefficient magnitudes; the scale
    /// against which an evaluation counts as "numerically zero".
    pub fn eval_magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * ax + c.abs();
        }
        acc
    }

    /// Coefficient-wise formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i + 1) as f64)
                .collect(),
        )
    }

    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Scale so the largest coefficient magnitude is 1. Roots are
    /// unchanged; keeps remainder sequences well conditioned.
    fn scaled_to_unit(&self) -> Poly {
        let m = self.max_norm();
        if m == 0.0 || m == 1.0 {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|c| c / m).collect())
    }

    /// Drop leading coefficients that are numerically zero relative to
    /// the max-norm. Used on remainder-sequence entries where exact
    /// cancellation leaves ~1e-16 residue in the top coefficient.
    fn trimmed_leading_eps(&self, rel_eps: f64) -> Poly {
        let cut = rel_eps * self.max_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= cut {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// Substitute `x = s * y`: the roots divide by `s`.
    fn var_scaled(&self, s: f64) -> Poly {
        let mut pow = 1.0;
        Poly::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    let v = c * pow;
                    pow *= s;
                    v
                })
                .collect(),
        )
    }

    /// Geometric-mean root magnitude estimate `|c0/cn|^(1/n)`, clamped;
    /// used to rescale the variable before remainder cascades.
    fn root_magnitude_scale(&self) -> f64 {
        let n = self.degree();
        if n == 0 || self.coeffs[0] == 0.0 || self.leading() == 0.0 {
            return 1.0;
        }
        let s = (self.coeffs[0] / self.leading()).abs().powf(1.0 / n as f64);
        if s.is_finite() && s > 0.0 {
            s.clamp(1e-3, 1e3)
        } else {
            1.0
        }
    }

    /// Euclidean division, returning (quotient, remainder).
    fn div_rem(&self, den: &Poly) -> (Poly, Poly) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let dn = den.degree();
        if self.degree() < dn {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0.0; self.degree() - dn + 1];
        let lead = den.leading();
        for k in (0..quo.len()).rev() {
            let coef = rem[k + dn] / lead;
            quo[k] = coef;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                rem[k + j] -= coef * dc;
            }
        }
        rem.truncate(dn.max(1));
        (Poly::new(quo), Poly::new(rem))
    }

    /// Cauchy bound: every real root lies in (-B, B) with
    /// B = 1 + max_i |c_i / c_lead|.
    pub fn cauchy_root_bound(&self) -> f64 {
        let lead = self.leading().abs();
        if lead == 0.0 {
            return 1.0;
        }
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        1.0 + m / lead
    }
}

/// One isolated real root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootRecord {
    pub value: f64,
    pub multiplicity: u32,
    /// |p(value)| at the reported root; the residual actually achieved.
    pub residual_bound: f64,
}

/// Sorted set of isolated real roots, strictly increasing in value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RootSet {
    pub roots: Vec<RootRecord>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.roots.iter().map(|r| r.value)
    }

    /// Total root count with multiplicity.
    pub fn count_with_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Per-step growth of the cascade-noise estimate. The realized noise of
/// a "true zero" remainder fluctuates around the running estimate, so
/// the growth carries an order-of-magnitude safety margin; over-eager
/// zero verdicts are harmless because every claimed multiple root is
/// confirmed against the polynomial itself before anything divides out.
const NOISE_GROWTH: f64 = 32.0;

/// Numeric polynomial gcd via the Euclidean remainder sequence, run in
/// a rescaled variable with a cascade-noise-aware zero cutoff. The
/// result is normalized to unit max-norm; it is a gcd only up to the
/// cutoff and callers must confirm any nontrivial verdict against the
/// originals (see [`squarefree_part`]).
pub fn gcd_numeric(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.scaled_to_unit();
    }
    if q.is_zero() {
        return p.scaled_to_unit();
    }
    let s = p.root_magnitude_scale();
    let mut a = p.var_scaled(s).scaled_to_unit();
    let mut b = q.var_scaled(s).scaled_to_unit();
    if b.degree() > a.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut noise = 1e-14;
    loop {
        let (_, r) = a.div_rem(&b);
        if r.max_norm() <= GCD_CUTOFF.max(noise) {
            return b.var_scaled(1.0 / s).scaled_to_unit();
        }
        noise = (noise * NOISE_GROWTH / r.max_norm().min(1.0)).min(1e-4);
        a = b;
        b = r.scaled_to_unit().trimmed_leading_eps(GCD_CUTOFF);
        if b.degree() == 0 {
            return b;
        }
    }
}

/// Squarefree part of `p` plus a flag telling whether `p` has repeated
/// roots. The remainder-cascade verdict alone over-triggers on tight
/// root pairs, so a nonconstant gcd counts only through its confirmed
/// roots: those that annihilate both `p` and `p'` at noise level. Only
/// the factor rebuilt from confirmed roots is divided out, so an
/// inflated gcd cannot cost `p` a genuine simple root.
pub fn squarefree_part(p: &Poly) -> Result<(Poly, bool)> {
    let (sf, had, _) = squarefree_confirmed(p)?;
    Ok((sf, had))
}

/// Squarefree part, repeat flag, and the confirmed multiple roots as
/// `(value, multiplicity in gcd(p, p'))` pairs.
fn squarefree_confirmed(p: &Poly) -> Result<(Poly, bool, Vec<(f64, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() <= 1 {
        return Ok((p.scaled_to_unit(), false, Vec::new()));
    }
    let dp = p.derivative();
    let g = gcd_numeric(p, &dp);
    if g.degree() == 0 {
        return Ok((p.scaled_to_unit(), false, Vec::new()));
    }
    let confirmed: Vec<(f64, u32)> =
        isolate_real_roots(&g, f64::NEG_INFINITY, f64::INFINITY)?
            .roots
            .iter()
            .filter(|r| {
                p.eval(r.value).abs() <= CONFIRM_ROOT_TOL * p.eval_magnitude(r.value).max(1.0)
                    && dp.eval(r.value).abs()
                        <= CONFIRM_DERIV_TOL * dp.eval_magnitude(r.value).max(1.0)
            })
            .map(|r| (r.value, r.multiplicity))
            .collect();
    if confirmed.is_empty() {
        return Ok((p.scaled_to_unit(), false, Vec::new()));
    }
    let mut factor = Poly::new(vec![1.0]);
    for &(root, mult) in &confirmed {
        for _ in 0..mult {
            let mut coeffs = vec![0.0];
            coeffs.extend_from_slice(factor.coeffs());
            for (i, &c) in factor.coeffs().iter().enumerate() {
                coeffs[i] -= root * c;
            }
            factor = Poly::new(coeffs);
        }
    }
    let (sf, _) = p.div_rem(&factor);
    Ok((sf.scaled_to_unit(), true, confirmed))
}

/// Sturm chain of a (squarefree) polynomial. Runs the full cascade to
/// the constant entry; only machine-level remainders stop it early.
pub struct SturmChain {
    seq: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> SturmChain {
        let mut seq = vec![p.scaled_to_unit()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d.scaled_to_unit());
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.max_norm() <= STURM_FLOOR {
                    break;
                }
                let neg = Poly::new(r.coeffs().iter().map(|c| -c).collect());
                let entry = neg.scaled_to_unit().trimmed_leading_eps(GCD_CUTOFF);
                let stop = entry.degree() == 0;
                seq.push(entry);
                if stop {
                    break;
                }
            }
        }
        SturmChain { seq }
    }

    fn variations(&self, x: f64) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for f in &self.seq {
            let v = f.eval(x);
            if v.abs() <= SIGN_EPS * f.eval_magnitude(x).max(1.0) {
                continue; // numerically zero, skipped by convention
            }
            let s = v > 0.0;
            if let Some(prev) = last {
                if prev != s {
                    count += 1;
                }
            }
            last = Some(s);
        }
        count
    }

    /// Number of distinct real roots in (lo, hi]. With non-root
    /// endpoints this is the open-interval count.
    pub fn count_roots(&self, lo: f64, hi: f64) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Distinct-real-root count of `p` on (lo, hi) from the Sturm
/// sign-variation difference (computed on the squarefree part, so
/// repeated roots count once).
pub fn sturm_count(p: &Poly, lo: f64, hi: f64) -> Result<usize> {
    let (sf, _) = squarefree_part(p)?;
    Ok(SturmChain::new(&sf).count_roots(lo, hi))
}

/// Refine a sign-change bracket to width <= `tol` (or to floating-point
/// resolution, whichever is coarser). Each pass does one guaranteed
/// bisection step, then a Newton step from the midpoint which is kept
/// only when it stays inside the current bracket.
pub fn refine_root(p: &Poly, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let dp = p.derivative();
    let mut flo = p.eval(lo);
    let fhi = p.eval(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..MAX_REFINE_ITER {
        let width = hi - lo;
        if width <= tol || width <= 1e-15 * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // no representable point strictly inside
        }
        let fm = p.eval(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        // Newton acceleration from the midpoint; fall back to plain
        // bisection whenever the step leaves the bracket.
        let dm = dp.eval(mid);
        if dm != 0.0 {
            let xn = mid - fm / dm;
            if xn > lo && xn < hi {
                let fxn = p.eval(xn);
                if fxn == 0.0 {
                    return Ok(xn);
                }
                if (fxn > 0.0) == (flo > 0.0) {
                    lo = xn;
                    flo = fxn;
                } else {
                    hi = xn;
                }
            }
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Isolate every real root of `p` in the open interval (lo, hi).
///
/// Infinite endpoints are clamped to the Cauchy root bound. Each
/// distinct root is reported once with its multiplicity (from the
/// numeric squarefree decomposition) and refined until its bracket is
/// narrower than [`TOL_ROOT`]. Roots sitting within ~1e-12 of `lo` or
/// `hi` may be missed; the interval is open.
pub fn isolate_real_roots(p: &Poly, lo: f64, hi: f64) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(RootSet::default());
    }
    let bound = p.cauchy_root_bound();
    let lo = if lo.is_finite() { lo } else { -bound };
    let hi = if hi.is_finite() { hi.min(bound) } else { bound };
    let lo = lo.max(-bound);
    if lo >= hi {
        return Ok(RootSet::default());
    }

    let (sf, _had_repeats, confirmed_multiples) = squarefree_confirmed(p)?;
    let chain = SturmChain::new(&sf);
    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut stack = vec![(lo, hi, chain.count_roots(lo, hi))];
    while let Some((l, h, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            brackets.push((l, h));
            continue;
        }
        if h - l <= 1e-13 * l.abs().max(h.abs()).max(1.0) {
            // Cluster below floating-point resolution: report once.
            brackets.push((l, h));
            continue;
        }
        let m = split_point(&sf, l, h);
        let nl = chain.count_roots(l, m);
        stack.push((l, m, nl));
        stack.push((m, h, n.saturating_sub(nl)));
    }

    let mut values: Vec<f64> = Vec::with_capacity(brackets.len());
    for &(l, h) in &brackets {
        let fl = sf.eval(l);
        let fh = sf.eval(h);
        let root = if (fl > 0.0) != (fh > 0.0) || fl == 0.0 || fh == 0.0 {
            refine_root(&sf, (l, h), TOL_ROOT)?
        } else {
            // No sign change although the count says one root: an
            // even-multiplicity location that slipped past the gcd.
            // Its derivative does change sign there.
            let dsf = sf.derivative();
            if !dsf.is_zero() && (dsf.eval(l) > 0.0) != (dsf.eval(h) > 0.0) {
                refine_root(&dsf, (l, h), TOL_ROOT)?
            } else if fl.abs() < fh.abs() {
                l
            } else {
                h
            }
        };
        values.push(root);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Multiplicity of a root r in p is 1 + its multiplicity in gcd(p, p').
    let mut records: Vec<RootRecord> = Vec::with_capacity(values.len());
    for v in values {
        let mut mult = 1u32;
        for &(gr, gm) in &confirmed_multiples {
            if (v - gr).abs() <= MULT_MATCH_TOL * v.abs().max(1.0) {
                mult = 1 + gm;
                break;
            }
        }
        if let Some(last) = records.last_mut() {
            if v <= last.value {
                // Defensive merge; adjacent brackets should not collide.
                last.multiplicity = last.multiplicity.max(mult);
                continue;
            }
        }
        records.push(RootRecord {
            value: v,
            multiplicity: mult,
            residual_bound: p.eval(v).abs(),
        });
    }
    Ok(RootSet { roots: records })
}

/// Subdivision point for isolation, nudged off any root of `sf` so the
/// Sturm counts on the two halves stay exact.
fn split_point(sf: &Poly, l: f64, h: f64) -> f64 {
    for frac in [0.5, 0.618_033_988_749_894_9, 0.381_966_011_250_105_1] {
        let m = l + frac * (h - l);
        if sf.eval(m).abs() > SIGN_EPS * sf.eval_magnitude(m).max(1.0) {
            return m;
        }
    }
    0.5 * (l + h)
}

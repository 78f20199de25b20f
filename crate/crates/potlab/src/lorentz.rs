//! Distribution functions, decreasing rearrangements, the averaged
//! rearrangement, and Lorentz quasi-norms/norms over a discrete measure.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::quad::integrate_geometric;
use crate::scalar::Scalar;

/// Second Lorentz index: a finite value or infinity (weak norm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondIndex<T: Scalar> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> SecondIndex<T> {
    pub fn finite(v: T) -> Self {
        SecondIndex::Finite(v)
    }

    pub fn as_finite(&self) -> Option<T> {
        match self {
            SecondIndex::Finite(v) => Some(*v),
            SecondIndex::Infinity => None,
        }
    }
}

/// A function sampled on the atoms of a discrete measure: the pair `(f, mu)`.
#[derive(Debug, Clone)]
pub struct SampledFunction<T: Scalar> {
    measure: Arc<DiscreteMeasure<T>>,
    values: Vec<T>,
}

impl<T: Scalar> SampledFunction<T> {
    pub fn new(measure: Arc<DiscreteMeasure<T>>, values: Vec<T>) -> Result<Self> {
        if values.len() != measure.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} atoms",
                values.len(),
                measure.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidWeight("non-finite sample value".into()));
        }
        Ok(SampledFunction { measure, values })
    }

    pub fn measure(&self) -> &Arc<DiscreteMeasure<T>> {
        &self.measure
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, i: usize) -> T {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same underlying measure, for pairing contracts. Pointer equality
    /// first, structural equality as a fallback for reloaded measures.
    pub fn same_measure(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.measure, &other.measure) {
            return true;
        }
        let (a, b) = (&self.measure, &other.measure);
        a.dim() == b.dim()
            && a.len() == b.len()
            && a.weights() == b.weights()
            && a.iter_points().zip(b.iter_points()).all(|(p, q)| p == q)
    }

    pub fn scaled(&self, c: T) -> Self {
        SampledFunction {
            measure: Arc::clone(&self.measure),
            values: self.values.iter().map(|&v| v * c).collect(),
        }
    }
}

/// `d_f(s) = mu({ |f| > s })`, right-continuous and non-increasing in `s`.
pub fn distribution_function<T: Scalar>(f: &SampledFunction<T>, s: T) -> T {
    f.values
        .iter()
        .zip(f.measure.weights().iter())
        .filter(|(v, _)| v.abs() > s)
        .map(|(_, w)| *w)
        .sum()
}

/// Right-continuous decreasing step function on `(0, domain_end)`: value
/// `values[k]` on `[breaks[k-1], breaks[k])` with an implicit leading 0
/// breakpoint, and 0 from `domain_end` on.
#[derive(Debug, Clone)]
pub struct StepFunction<T: Scalar> {
    breaks: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> StepFunction<T> {
    /// Builds from (value, width) pairs already in non-increasing value
    /// order; equal values merge into one step.
    pub(crate) fn from_sorted_pairs(pairs: Vec<(T, T)>) -> Self {
        let mut steps: Vec<(T, T)> = Vec::with_capacity(pairs.len());
        for (v, w) in pairs {
            debug_assert!(w > T::zero());
            match steps.last_mut() {
                Some(last) if last.0 == v => last.1 = last.1 + w,
                _ => steps.push((v, w)),
            }
        }
        let mut breaks = Vec::with_capacity(steps.len());
        let mut values = Vec::with_capacity(steps.len());
        let mut acc = T::zero();
        for (v, w) in steps {
            acc = acc + w;
            breaks.push(acc);
            values.push(v);
        }
        StepFunction { breaks, values }
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breaks
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn domain_end(&self) -> T {
        self.breaks.last().copied().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, t: T) -> T {
        if t < T::zero() {
            return self.values.first().copied().unwrap_or_else(T::zero);
        }
        let k = self.breaks.partition_point(|&b| b <= t);
        if k < self.values.len() {
            self.values[k]
        } else {
            T::zero()
        }
    }

    /// Lebesgue measure of `{ t : f*(t) > s }`; the distribution function of
    /// the step function itself.
    pub fn distribution(&self, s: T) -> T {
        let mut acc = T::zero();
        let mut prev = T::zero();
        for (b, v) in self.breaks.iter().zip(self.values.iter()) {
            if *v > s {
                acc = acc + (*b - prev);
            }
            prev = *b;
        }
        acc
    }

    /// `int_0^t` of the step function, exact per step.
    pub fn integral_to(&self, t: T) -> T {
        let mut acc = T::zero();
        let mut prev = T::zero();
        for (b, v) in self.breaks.iter().zip(self.values.iter()) {
            if t <= prev {
                break;
            }
            let hi = if t < *b { t } else { *b };
            acc = acc + *v * (hi - prev);
            prev = *b;
        }
        acc
    }
}

/// Sorts `|f|` by decreasing value with weights as widths; ties merge into a
/// single step, zero values are dropped (the rearrangement is 0 beyond the
/// mass of the non-vanishing part).
pub fn decreasing_rearrangement<T: Scalar>(f: &SampledFunction<T>) -> StepFunction<T> {
    let mut pairs: Vec<(T, T)> = f
        .values
        .iter()
        .zip(f.measure.weights().iter())
        .map(|(v, w)| (v.abs(), *w))
        .filter(|(v, _)| *v > T::zero())
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    StepFunction::from_sorted_pairs(pairs)
}

/// The averaged rearrangement `(1/t) int_0^t f*(s) ds`: non-increasing,
/// piecewise `(c + v t)/t`, and everywhere `>= f*`.
#[derive(Debug, Clone)]
pub struct MaximalRearrangement<T: Scalar> {
    star: StepFunction<T>,
    /// cumulative integral of `f*` at each breakpoint
    cum: Vec<T>,
}

impl<T: Scalar> MaximalRearrangement<T> {
    pub fn eval(&self, t: T) -> T {
        if t <= T::zero() {
            return self.star.values().first().copied().unwrap_or_else(T::zero);
        }
        self.star.integral_to(t) / t
    }

    pub fn star(&self) -> &StepFunction<T> {
        &self.star
    }

    fn piece(&self, k: usize) -> (T, T, T, T) {
        // piece k on [a, b): f-natural(t) = (c + v t) / t
        let a = if k == 0 { T::zero() } else { self.star.breaks[k - 1] };
        let b = self.star.breaks[k];
        let v = self.star.values[k];
        let prev_cum = if k == 0 { T::zero() } else { self.cum[k - 1] };
        let c = prev_cum - v * a;
        (a, b, c, v)
    }

    fn total_integral(&self) -> T {
        self.cum.last().copied().unwrap_or_else(T::zero)
    }
}

pub fn maximal_rearrangement<T: Scalar>(f: &SampledFunction<T>) -> MaximalRearrangement<T> {
    maximal_of(decreasing_rearrangement(f))
}

pub fn maximal_of<T: Scalar>(star: StepFunction<T>) -> MaximalRearrangement<T> {
    let mut cum = Vec::with_capacity(star.breaks.len());
    let mut acc = T::zero();
    let mut prev = T::zero();
    for (b, v) in star.breaks.iter().zip(star.values.iter()) {
        acc = acc + *v * (*b - prev);
        prev = *b;
        cum.push(acc);
    }
    MaximalRearrangement { star, cum }
}

fn check_indices<T: Scalar>(p: T, d: SecondIndex<T>) -> Result<()> {
    if !(p >= T::one()) {
        return Err(Error::InvalidExponent(format!("p {p} must be >= 1")));
    }
    if let SecondIndex::Finite(d) = d {
        if !(d >= T::one()) {
            return Err(Error::InvalidExponent(format!("d {d} must be >= 1")));
        }
    }
    Ok(())
}

/// Lorentz quasi-norm of a step rearrangement with mass cutoff `upper`:
/// `((d/p) int_0^M [t^{1/p} f*(t)]^d dt/t)^{1/d}` computed in closed form per
/// step, or `sup t^{1/p} f*(t)` for `d = infinity`.
pub fn lorentz_quasinorm_of_step<T: Scalar>(
    star: &StepFunction<T>,
    p: T,
    d: SecondIndex<T>,
    upper: T,
) -> T {
    match d {
        SecondIndex::Finite(d) => {
            let dp = d / p;
            let mut acc = T::zero();
            let mut prev = T::zero();
            for (b, v) in star.breaks.iter().zip(star.values.iter()) {
                if prev >= upper {
                    break;
                }
                let hi = if upper < *b { upper } else { *b };
                acc = acc + v.powf(d) * (hi.powf(dp) - prev.powf(dp));
                prev = *b;
            }
            acc.powf(T::one() / d)
        }
        SecondIndex::Infinity => {
            // t^{1/p} f* is maximized at the right end of each step
            let mut best = T::zero();
            let mut prev = T::zero();
            for (b, v) in star.breaks.iter().zip(star.values.iter()) {
                if prev >= upper {
                    break;
                }
                let hi = if upper < *b { upper } else { *b };
                let cand = hi.powf(T::one() / p) * *v;
                if cand > best {
                    best = cand;
                }
                prev = *b;
            }
            best
        }
    }
}

/// Lorentz quasi-norm of `f` on its measure; `upper` defaults to the total
/// mass and may restrict to a smaller cutoff.
pub fn lorentz_quasinorm<T: Scalar>(
    f: &SampledFunction<T>,
    p: T,
    d: SecondIndex<T>,
    upper: Option<T>,
) -> Result<T> {
    check_indices(p, d)?;
    let m = upper.unwrap_or_else(|| f.measure.total_mass());
    Ok(lorentz_quasinorm_of_step(&decreasing_rearrangement(f), p, d, m))
}

/// The norm variant built from the averaged rearrangement. Requires `p > 1`
/// and satisfies `||f||* <= ||f||_natural <= p/(p-1) ||f||*`.
pub fn lorentz_norm_natural<T: Scalar>(
    f: &SampledFunction<T>,
    p: T,
    d: SecondIndex<T>,
) -> Result<T> {
    check_indices(p, d)?;
    if !(p > T::one()) {
        return Err(Error::NormRequiresP);
    }
    let nat = maximal_rearrangement(f);
    Ok(natural_norm_of(&nat, p, d, f.measure.total_mass()))
}

fn natural_norm_of<T: Scalar>(
    nat: &MaximalRearrangement<T>,
    p: T,
    d: SecondIndex<T>,
    upper: T,
) -> T {
    let star = nat.star();
    if star.values().is_empty() || upper <= T::zero() {
        return T::zero();
    }
    match d {
        SecondIndex::Finite(d) => {
            let dp = d / p;
            let mut acc = T::zero();
            for k in 0..star.values().len() {
                let (a, b, c, v) = nat.piece(k);
                let hi = if upper < b { upper } else { b };
                if hi <= a {
                    break;
                }
                if k == 0 {
                    // first piece has c = 0: closed-form power integral
                    acc = acc + v.powf(d) * hi.powf(dp);
                } else {
                    // (d/p) int (c + v t)^d t^{d/p - d - 1} dt via panels
                    let integrand =
                        |t: T| (c + v * t).powf(d) * t.powf(dp - d - T::one());
                    acc = acc + dp * integrate_geometric(a, hi, 32, integrand);
                }
            }
            // tail beyond the last breakpoint: f-natural = A / t
            let end = star.domain_end();
            if upper > end {
                let total = nat.total_integral();
                let e = dp - d; // negative for p > 1
                acc = acc + dp * total.powf(d) * (upper.powf(e) - end.powf(e)) / e;
            }
            acc.powf(T::one() / d)
        }
        SecondIndex::Infinity => {
            // sup of t^{1/p} (c + v t)/t over each piece: endpoints plus the
            // interior critical point t = c (p-1) / v when it lands inside
            let mut best = T::zero();
            let inv_p = T::one() / p;
            let mut consider = |t: T| {
                if t > T::zero() && t <= upper {
                    let cand = t.powf(inv_p) * nat.eval(t);
                    if cand > best {
                        best = cand;
                    }
                }
            };
            for k in 0..star.values().len() {
                let (a, b, c, v) = nat.piece(k);
                let hi = if upper < b { upper } else { b };
                if hi <= a && k > 0 {
                    break;
                }
                consider(if a > T::zero() { a } else { hi });
                consider(hi);
                if v > T::zero() && c > T::zero() {
                    let crit = c * (p - T::one()) / v;
                    if crit > a && crit < hi {
                        consider(crit);
                    }
                }
            }
            let end = star.domain_end();
            if upper > end {
                consider(end);
                // t^{1/p - 1} * total is decreasing for p > 1: endpoint only
            }
            best
        }
    }
}

/// Distribution-form Lorentz quasi-norm
/// `(d int_0^{ess sup |f|} s^{d-1} d_f(s)^{d/p} ds)^{1/d}`, equal to the
/// rearrangement form by change of variables; exact per level step.
pub fn lorentz_quasinorm_distribution<T: Scalar>(
    f: &SampledFunction<T>,
    p: T,
    d: SecondIndex<T>,
) -> Result<T> {
    check_indices(p, d)?;
    let star = decreasing_rearrangement(f);
    if star.values().is_empty() {
        return Ok(T::zero());
    }
    match d {
        SecondIndex::Finite(d) => {
            // levels ascending; d_f constant between consecutive |f| levels
            let mut levels: Vec<T> = star.values().to_vec();
            levels.reverse();
            let mut acc = T::zero();
            let mut prev_level = T::zero();
            for &u in &levels {
                // d_f(s) for s in [prev_level, u) equals the mass where |f| >= u
                let mass = star.distribution(prev_level);
                acc = acc + mass.powf(d / p) * (u.powf(d) - prev_level.powf(d));
                prev_level = u;
            }
            Ok(acc.powf(T::one() / d))
        }
        SecondIndex::Infinity => {
            // sup_s s d_f(s)^{1/p}: candidates at levels approached from below
            let mut best = T::zero();
            let mut prev = T::zero();
            let mut levels: Vec<T> = star.values().to_vec();
            levels.reverse();
            for &u in &levels {
                let mass = star.distribution(prev);
                let cand = u * mass.powf(T::one() / p);
                if cand > best {
                    best = cand;
                }
                prev = u;
            }
            Ok(best)
        }
    }
}

/// Both sides of the Hardy-Littlewood rearrangement inequality:
/// `sum w |f g| <= int_0^M f*(t) g*(t) dt`, the right side exact as a step
/// product integral.
pub fn hardy_littlewood_pairing<T: Scalar>(
    f: &SampledFunction<T>,
    g: &SampledFunction<T>,
) -> Result<(T, T)> {
    if !f.same_measure(g) {
        return Err(Error::MeasureMismatch);
    }
    let lhs = f
        .values
        .iter()
        .zip(g.values.iter())
        .zip(f.measure.weights().iter())
        .map(|((a, b), w)| (*a * *b).abs() * *w)
        .sum();
    let fs = decreasing_rearrangement(f);
    let gs = decreasing_rearrangement(g);
    // merge breakpoints; both step functions are constant between them
    let mut rhs = T::zero();
    let (mut i, mut j) = (0usize, 0usize);
    let mut prev = T::zero();
    while i < fs.breaks.len() && j < gs.breaks.len() {
        let bi = fs.breaks[i];
        let bj = gs.breaks[j];
        let b = if bi < bj { bi } else { bj };
        rhs = rhs + fs.values[i] * gs.values[j] * (b - prev);
        prev = b;
        if bi <= b {
            i += 1;
        }
        if bj <= b {
            j += 1;
        }
    }
    Ok((lhs, rhs))
}

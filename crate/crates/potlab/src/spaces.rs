//! Morrey and Morrey-Lorentz norms: ball-restricted Lorentz norms scaled by
//! `R^{-beta (1/p - 1/lambda)}` and maximized over support-centered balls.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_quasinorm_of_step, SampledFunction, SecondIndex, StepFunction};
use crate::measure::{Centers, RadiiGrid};
use crate::scalar::{cast, Scalar};

/// The parameter pack of the trace inequalities, with the admissibility
/// conditions as a checked (not enforced) predicate.
#[derive(Debug, Clone, Copy)]
pub struct ExponentTuple<T: Scalar> {
    pub p: T,
    pub q: T,
    pub lambda: T,
    pub lambda_star: T,
    pub ell: SecondIndex<T>,
    pub s: SecondIndex<T>,
    /// the potential order (delta)
    pub delta: T,
    pub beta: T,
}

impl<T: Scalar> ExponentTuple<T> {
    /// Violated admissibility conditions in ambient dimension `n`; empty
    /// means admissible.
    pub fn violations(&self, n: usize) -> Vec<String> {
        let nf = cast::<T>(n as f64);
        let mut out = Vec::new();
        if !(self.p > T::one() && self.p <= self.lambda) {
            out.push(format!("need 1 < p <= lambda, got p={} lambda={}", self.p, self.lambda));
        }
        if !(self.q > T::one() && self.q <= self.lambda_star) {
            out.push(format!(
                "need 1 < q <= lambda*, got q={} lambda*={}",
                self.q, self.lambda_star
            ));
        }
        if !(self.q / self.lambda_star <= self.p / self.lambda * (T::one() + cast(1e-12))) {
            out.push("need q/lambda* <= p/lambda".into());
        }
        if !(self.p < self.q) {
            out.push(format!("need p < q, got p={} q={}", self.p, self.q));
        }
        let delta_expected = nf / self.lambda - self.beta / self.lambda_star;
        if (self.delta - delta_expected).abs() > cast(1e-9) {
            out.push(format!(
                "need delta = n/lambda - beta/lambda*, got {} vs {}",
                self.delta, delta_expected
            ));
        }
        if !(self.delta > T::zero() && self.delta < nf / self.lambda) {
            out.push(format!("need 0 < delta < n/lambda, got delta={}", self.delta));
        }
        if !(nf - self.delta * self.p < self.beta && self.beta <= nf) {
            out.push(format!(
                "need n - delta p < beta <= n, got beta={}",
                self.beta
            ));
        }
        // the verified regime of the second indices
        match (self.ell, self.s) {
            (SecondIndex::Finite(l), SecondIndex::Finite(s)) if l > s => {
                out.push(format!("second indices outside verified regime l <= s: l={l} s={s}"));
            }
            _ => {}
        }
        out
    }
}

/// One ball's scaled local norm.
#[derive(Debug, Clone)]
pub struct BallEntry<T: Scalar> {
    pub center: Vec<T>,
    pub radius: T,
    pub value: T,
}

/// A Morrey-Lorentz (or Morrey) norm evaluation: the supremum, its witness
/// ball, and the whole per-ball table.
#[derive(Debug, Clone)]
pub struct NormReport<T: Scalar> {
    pub value: T,
    pub witness_center: Vec<T>,
    pub witness_radius: T,
    pub per_ball: Vec<BallEntry<T>>,
}

/// `sup_{x, R} R^{-beta (1/p - 1/lambda)} || f ||_{L^{p,ell}(mu restricted
/// to B_R(x))}`, centers defaulting to the atoms of the measure.
pub fn morrey_lorentz_norm<T: Scalar>(
    f: &SampledFunction<T>,
    p: T,
    ell: SecondIndex<T>,
    lambda: T,
    beta: T,
    radii: &RadiiGrid<T>,
    centers: Centers<'_, T>,
) -> Result<NormReport<T>> {
    if !(p >= T::one()) {
        return Err(Error::InvalidExponent(format!("p {p} must be >= 1")));
    }
    if let SecondIndex::Finite(l) = ell {
        if !(l >= T::one()) {
            return Err(Error::InvalidExponent(format!("ell {l} must be >= 1")));
        }
    }
    if !(beta > T::zero()) {
        return Err(Error::InvalidExponent(format!("beta {beta} must be positive")));
    }
    let mu = f.measure();
    let center_points: Vec<Vec<T>> = match centers {
        Centers::Support => mu.iter_points().map(|s| s.to_vec()).collect(),
        Centers::Points(pts) => pts.to_vec(),
    };
    let scale_exp = -beta * (T::one() / p - T::one() / lambda);
    let per_ball: Vec<BallEntry<T>> = center_points
        .par_iter()
        .flat_map_iter(|c| {
            // atoms sorted by distance once per center; every radius is a
            // prefix of that ordering
            let mut by_dist: Vec<(T, usize)> = (0..mu.len())
                .map(|i| (crate::scalar::geom::dist(mu.point(i), c), i))
                .collect();
            by_dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
            radii.radii().iter().map(move |&r| {
                let k = by_dist.partition_point(|e| e.0 < r);
                let local = local_step(f, by_dist[..k].iter().map(|e| e.1));
                let mass = local.1;
                let norm = lorentz_quasinorm_of_step(&local.0, p, ell, mass);
                BallEntry { center: c.clone(), radius: r, value: r.powf(scale_exp) * norm }
            })
        })
        .collect();
    let mut value = T::zero();
    let mut witness_center = Vec::new();
    let mut witness_radius = T::zero();
    for e in &per_ball {
        if e.value > value {
            value = e.value;
            witness_center = e.center.clone();
            witness_radius = e.radius;
        }
    }
    Ok(NormReport { value, witness_center, witness_radius, per_ball })
}

/// Rearrangement of `f` restricted to the given atoms, plus the restricted
/// mass; a single atom degenerates to a one-step function.
fn local_step<T: Scalar>(
    f: &SampledFunction<T>,
    atoms: impl Iterator<Item = usize>,
) -> (StepFunction<T>, T) {
    let mu = f.measure();
    let mut pairs: Vec<(T, T)> = Vec::new();
    let mut mass = T::zero();
    for i in atoms {
        mass = mass + mu.weight(i);
        let v = f.value(i).abs();
        if v > T::zero() {
            pairs.push((v, mu.weight(i)));
        }
    }
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    (StepFunction::from_sorted_pairs(pairs), mass)
}

/// The plain Morrey norm
/// `sup_{x, R} R^{-beta (1/p - 1/lambda)} (int_{B_R} |f|^p dmu)^{1/p}`.
/// Coincides with the Morrey-Lorentz norm at `ell = p`.
pub fn morrey_norm<T: Scalar>(
    f: &SampledFunction<T>,
    p: T,
    lambda: T,
    beta: T,
    radii: &RadiiGrid<T>,
    centers: Centers<'_, T>,
) -> Result<NormReport<T>> {
    if !(p >= T::one()) {
        return Err(Error::InvalidExponent(format!("p {p} must be >= 1")));
    }
    if !(beta > T::zero()) {
        return Err(Error::InvalidExponent(format!("beta {beta} must be positive")));
    }
    let mu = f.measure();
    let center_points: Vec<Vec<T>> = match centers {
        Centers::Support => mu.iter_points().map(|s| s.to_vec()).collect(),
        Centers::Points(pts) => pts.to_vec(),
    };
    let scale_exp = -beta * (T::one() / p - T::one() / lambda);
    let per_ball: Vec<BallEntry<T>> = center_points
        .par_iter()
        .flat_map_iter(|c| {
            let mut by_dist: Vec<(T, usize)> = (0..mu.len())
                .map(|i| (crate::scalar::geom::dist(mu.point(i), c), i))
                .collect();
            by_dist.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
            // prefix sums of w |f|^p in distance order
            let mut prefix = Vec::with_capacity(by_dist.len() + 1);
            let mut acc = T::zero();
            prefix.push(acc);
            for &(_, i) in &by_dist {
                acc = acc + mu.weight(i) * f.value(i).abs().powf(p);
                prefix.push(acc);
            }
            radii.radii().iter().map(move |&r| {
                let k = by_dist.partition_point(|e| e.0 < r);
                let lp = prefix[k].powf(T::one() / p);
                BallEntry { center: c.clone(), radius: r, value: r.powf(scale_exp) * lp }
            })
        })
        .collect();
    let mut value = T::zero();
    let mut witness_center = Vec::new();
    let mut witness_radius = T::zero();
    for e in &per_ball {
        if e.value > value {
            value = e.value;
            witness_center = e.center.clone();
            witness_radius = e.radius;
        }
    }
    Ok(NormReport { value, witness_center, witness_radius, per_ball })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::lebesgue_on_box;
    use std::sync::Arc;

    fn indicator_ball_1d(r: f64, res: usize) -> SampledFunction<f64> {
        let mu = Arc::new(lebesgue_on_box(&[-2.0 * r], &[2.0 * r], res).unwrap());
        let vals: Vec<f64> =
            mu.iter_points().map(|p| if p[0].abs() < r { 1.0 } else { 0.0 }).collect();
        SampledFunction::new(mu, vals).unwrap()
    }

    #[test]
    fn indicator_closed_form() {
        // sup at R = r: value 2^{1/p} r^{1/lambda} for beta = 1, ell = p
        let r = 0.5;
        let f = indicator_ball_1d(r, 2000);
        let p = 2.0;
        let lambda = 4.0;
        let radii = RadiiGrid::new(0.01, 2.0, 8).unwrap();
        let rep = morrey_lorentz_norm(
            &f,
            p,
            SecondIndex::finite(p),
            lambda,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        let expect = 2f64.powf(1.0 / p) * r.powf(1.0 / lambda);
        assert!((rep.value - expect).abs() / expect < 0.03, "{} vs {expect}", rep.value);
    }

    #[test]
    fn zero_function_norm_is_zero() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 32).unwrap());
        let f = SampledFunction::new(mu, vec![0.0; 32]).unwrap();
        let radii = RadiiGrid::new(0.1, 1.0, 4).unwrap();
        let rep = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::finite(2.0),
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        assert_eq!(rep.value, 0.0);
    }

    #[test]
    fn exponent_collapse_is_global_lp() {
        // p = lambda (and ell = p): scaling factor R^0, sup over balls gives
        // the global L^p norm once a ball swallows the support
        let f = indicator_ball_1d(0.3, 500);
        let p = 2.0;
        let radii = RadiiGrid::new(0.05, 4.0, 4).unwrap();
        let rep = morrey_lorentz_norm(
            &f,
            p,
            SecondIndex::finite(p),
            p,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        let lp: f64 = f
            .values()
            .iter()
            .zip(f.measure().weights())
            .map(|(v, w)| w * v.abs().powi(2))
            .sum::<f64>()
            .sqrt();
        assert!((rep.value - lp).abs() < 1e-10 * lp.max(1.0), "{} vs {lp}", rep.value);
    }

    #[test]
    fn morrey_matches_lorentz_at_ell_p() {
        let f = indicator_ball_1d(0.4, 300);
        let radii = RadiiGrid::new(0.05, 2.0, 4).unwrap();
        for (p, lambda) in [(1.5, 2.0), (2.0, 4.0), (2.5, 2.5)] {
            let a = morrey_norm(&f, p, lambda, 1.0, &radii, Centers::Support).unwrap();
            let b = morrey_lorentz_norm(
                &f,
                p,
                SecondIndex::finite(p),
                lambda,
                1.0,
                &radii,
                Centers::Support,
            )
            .unwrap();
            assert!(
                (a.value - b.value).abs() <= 1e-10 * a.value.max(1.0),
                "p={p}: {} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn weak_below_strong_morrey() {
        let f = indicator_ball_1d(0.4, 300);
        let radii = RadiiGrid::new(0.05, 2.0, 4).unwrap();
        let strong = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::finite(2.0),
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        let weak = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::Infinity,
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        assert!(weak.value <= strong.value * (1.0 + 1e-12));
    }

    #[test]
    fn homogeneity_exact() {
        let f = indicator_ball_1d(0.4, 200);
        let g = f.scaled(-3.5);
        let radii = RadiiGrid::new(0.05, 2.0, 4).unwrap();
        let a = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::Infinity,
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        let b = morrey_lorentz_norm(
            &g,
            2.0,
            SecondIndex::Infinity,
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        assert!((b.value - 3.5 * a.value).abs() < 1e-12 * b.value.max(1.0));
    }

    #[test]
    fn refinement_monotonicity() {
        let f = indicator_ball_1d(0.4, 200);
        let coarse = RadiiGrid::new(0.1, 1.0, 2).unwrap();
        let fine = RadiiGrid::new(0.05, 2.0, 4).unwrap();
        let a = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::finite(2.0),
            3.0,
            1.0,
            &coarse,
            Centers::Support,
        )
        .unwrap();
        let b = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::finite(2.0),
            3.0,
            1.0,
            &fine,
            Centers::Support,
        )
        .unwrap();
        assert!(b.value >= a.value - 1e-12);
    }

    #[test]
    fn report_value_is_table_max() {
        let f = indicator_ball_1d(0.4, 100);
        let radii = RadiiGrid::new(0.1, 1.0, 4).unwrap();
        let rep = morrey_lorentz_norm(
            &f,
            2.0,
            SecondIndex::finite(1.5),
            3.0,
            1.0,
            &radii,
            Centers::Support,
        )
        .unwrap();
        let table_max = rep.per_ball.iter().map(|e| e.value).fold(0.0f64, f64::max);
        assert_eq!(rep.value, table_max);
    }

    #[test]
    fn admissibility_predicate() {
        let good = ExponentTuple {
            p: 1.25,
            q: 1.5,
            lambda: 4.0 / 3.0,
            lambda_star: 2.0,
            ell: SecondIndex::Infinity,
            s: SecondIndex::Infinity,
            delta: 1.0,
            beta: 1.0,
        };
        assert!(good.violations(2).is_empty(), "{:?}", good.violations(2));
        let mut bad = good;
        bad.q = 3.0; // q > lambda*
        assert!(!bad.violations(2).is_empty());
    }
}

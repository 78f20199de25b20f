//! Seeded families of test functions and measures shared by the
//! verification suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lorentz::SampledFunction;
use crate::measure::{
    build_measure, cantor_measure, lebesgue_on_box, surface_measure, DiscreteMeasure,
    SurfaceKind,
};
use crate::operators::GridFunction;
use crate::scalar::{cast, geom, Scalar};

/// A closed-form test function with a label and known support radius.
#[derive(Debug, Clone)]
pub struct TestFunction<T: Scalar> {
    pub label: String,
    kind: Kind<T>,
}

#[derive(Debug, Clone)]
enum Kind<T: Scalar> {
    /// `chi_{B(center, radius)}`
    Indicator { center: Vec<T>, radius: T },
    /// `(1 - |x - center|^2 / radius^2)_+^2`
    Bump { center: Vec<T>, radius: T },
    /// sum of two separated bumps
    TwoBumps { centers: [Vec<T>; 2], radius: T },
}

impl<T: Scalar> TestFunction<T> {
    pub fn indicator(center: Vec<T>, radius: T) -> Self {
        TestFunction {
            label: format!("indicator(r={radius})"),
            kind: Kind::Indicator { center, radius },
        }
    }

    pub fn bump(center: Vec<T>, radius: T) -> Self {
        TestFunction { label: format!("bump(r={radius})"), kind: Kind::Bump { center, radius } }
    }

    pub fn two_bumps(c1: Vec<T>, c2: Vec<T>, radius: T) -> Self {
        TestFunction {
            label: format!("two_bumps(r={radius})"),
            kind: Kind::TwoBumps { centers: [c1, c2], radius },
        }
    }

    pub fn eval(&self, x: &[T]) -> T {
        match &self.kind {
            Kind::Indicator { center, radius } => {
                if geom::dist(x, center) < *radius {
                    T::one()
                } else {
                    T::zero()
                }
            }
            Kind::Bump { center, radius } => bump_value(x, center, *radius),
            Kind::TwoBumps { centers, radius } => {
                bump_value(x, &centers[0], *radius) + bump_value(x, &centers[1], *radius)
            }
        }
    }

    /// Center of mass of the support and a radius covering it.
    pub fn support(&self) -> (Vec<T>, T) {
        match &self.kind {
            Kind::Indicator { center, radius } | Kind::Bump { center, radius } => {
                (center.clone(), *radius)
            }
            Kind::TwoBumps { centers, radius } => {
                let mid: Vec<T> = centers[0]
                    .iter()
                    .zip(centers[1].iter())
                    .map(|(a, b)| (*a + *b) * cast(0.5))
                    .collect();
                let spread = geom::dist(&centers[0], &centers[1]) * cast(0.5);
                (mid, spread + *radius)
            }
        }
    }

    /// Samples the function on a grid covering its support with padding
    /// factor `pad` (box half-width = pad * support radius).
    pub fn grid(&self, pad: T, resolution: usize) -> Result<GridFunction<T>> {
        let (center, radius) = self.support();
        let half = radius * pad;
        let lower: Vec<T> = center.iter().map(|&c| c - half).collect();
        let upper: Vec<T> = center.iter().map(|&c| c + half).collect();
        GridFunction::from_fn(&lower, &upper, resolution, |x| self.eval(x))
    }
}

fn bump_value<T: Scalar>(x: &[T], center: &[T], radius: T) -> T {
    let d2 = geom::dist2(x, center);
    let r2 = radius * radius;
    let t = T::one() - d2 / r2;
    if t > T::zero() {
        t * t
    } else {
        T::zero()
    }
}

/// The default family at a given scale: ball indicator, tensor bump, and a
/// two-bump sum.
pub fn standard_family<T: Scalar>(dim: usize, scale: T) -> Vec<TestFunction<T>> {
    let origin = vec![T::zero(); dim];
    let mut off1 = vec![T::zero(); dim];
    off1[0] = scale * cast(1.5);
    let mut off2 = vec![T::zero(); dim];
    off2[0] = -scale * cast(1.5);
    vec![
        TestFunction::indicator(origin.clone(), scale),
        TestFunction::bump(origin, scale),
        TestFunction::two_bumps(off1, off2, scale * cast(0.6)),
    ]
}

/// Standard measures of the battery, `f64`-independent.
pub fn lebesgue_line<T: Scalar>(half_width: T, atoms: usize) -> Arc<DiscreteMeasure<T>> {
    Arc::new(
        lebesgue_on_box(&[-half_width], &[half_width], atoms)
            .expect("valid lebesgue parameters"),
    )
}

pub fn lebesgue_square<T: Scalar>(half_width: T, per_axis: usize) -> Arc<DiscreteMeasure<T>> {
    Arc::new(
        lebesgue_on_box(&[-half_width, -half_width], &[half_width, half_width], per_axis)
            .expect("valid lebesgue parameters"),
    )
}

pub fn hyperplane_line<T: Scalar>(half_width: T, atoms: usize) -> Arc<DiscreteMeasure<T>> {
    Arc::new(
        surface_measure(SurfaceKind::Hyperplane, 2, atoms, &[(-half_width, half_width)])
            .expect("valid hyperplane parameters"),
    )
}

pub fn cantor_dust<T: Scalar>(generation: u32) -> Arc<DiscreteMeasure<T>> {
    Arc::new(cantor_measure(generation).expect("valid generation"))
}

pub fn circle<T: Scalar>(atoms: usize) -> Arc<DiscreteMeasure<T>> {
    Arc::new(surface_measure(SurfaceKind::Sphere, 2, atoms, &[]).expect("valid circle"))
}

pub fn point_mass<T: Scalar>(dim: usize) -> Arc<DiscreteMeasure<T>> {
    Arc::new(build_measure(vec![vec![T::zero(); dim]], vec![T::one()]).expect("single atom"))
}

/// A seeded random measure on `[0, 1]` with log-uniform weights, up to
/// `max_atoms` atoms.
pub fn seeded_measure<T: Scalar>(seed: u64, max_atoms: usize) -> Arc<DiscreteMeasure<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_atoms.max(2));
    let points: Vec<Vec<T>> = (0..n).map(|_| vec![cast(rng.gen_range(0.0..1.0))]).collect();
    let weights: Vec<T> = (0..n)
        .map(|_| cast(10f64.powf(rng.gen_range(-2.0..0.5))))
        .collect();
    Arc::new(build_measure(points, weights).expect("random atoms are valid"))
}

/// A seeded random function on the atoms of `mu`: a mixture of signed
/// bumps plus occasional exact zeros and ties.
pub fn seeded_function<T: Scalar>(
    mu: &Arc<DiscreteMeasure<T>>,
    seed: u64,
) -> SampledFunction<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    let bumps = rng.gen_range(1..=4);
    let params: Vec<(f64, f64, f64)> = (0..bumps)
        .map(|_| {
            (
                rng.gen_range(0.0..1.0),                   // center
                rng.gen_range(0.05..0.4),                  // width
                rng.gen_range(-3.0..3.0),                  // amplitude
            )
        })
        .collect();
    let tie_level: f64 = rng.gen_range(0.1..1.0);
    let values: Vec<T> = (0..mu.len())
        .map(|i| {
            let x = mu.point(i)[0].to_f64().unwrap_or(0.0);
            let roll: f64 = rng.gen_range(0.0..1.0);
            if roll < 0.05 {
                return T::zero();
            }
            if roll < 0.1 {
                return cast(tie_level);
            }
            let mut v = 0.0;
            for &(c, w, a) in &params {
                let t = 1.0 - ((x - c) / w).powi(2);
                if t > 0.0 {
                    v += a * t * t;
                }
            }
            cast(v)
        })
        .collect();
    SampledFunction::new(Arc::clone(mu), values).expect("finite values")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shapes() {
        let fam = standard_family::<f64>(1, 0.5);
        assert_eq!(fam.len(), 3);
        assert_eq!(fam[0].eval(&[0.2]), 1.0);
        assert_eq!(fam[0].eval(&[0.7]), 0.0);
        assert!(fam[1].eval(&[0.0]) == 1.0);
        assert!(fam[2].eval(&[0.75]) > 0.0);
    }

    #[test]
    fn grids_cover_support() {
        let fam = standard_family::<f64>(2, 1.0);
        for tf in &fam {
            let g = tf.grid(2.0, 16).unwrap();
            assert_eq!(g.dim(), 2);
            // support mass is strictly positive on the grid
            let total: f64 = g.values().iter().sum();
            assert!(total > 0.0, "{}", tf.label);
        }
    }

    #[test]
    fn seeded_function_is_deterministic() {
        let mu = seeded_measure::<f64>(7, 100);
        let f1 = seeded_function(&mu, 42);
        let f2 = seeded_function(&mu, 42);
        assert_eq!(f1.values(), f2.values());
        let f3 = seeded_function(&mu, 43);
        assert_ne!(f1.values(), f3.values());
    }
}

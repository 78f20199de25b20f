//! The three operators: Riesz potential, fractional maximal function, and
//! sharp maximal functions (centered over balls, uncentered over cubes).
//!
//! Functions against Lebesgue measure live on uniform grids; the kernel
//! normalization is fixed to 1 throughout, and the self-cell singularity of
//! the Riesz kernel is integrated exactly over the equal-volume ball.

use std::sync::Arc;

use rayon::prelude::*;

use crate::czdecomp::DyadicCube;
use crate::error::{Error, Result};
use crate::lorentz::SampledFunction;
use crate::measure::{DiscreteMeasure, RadiiGrid};
use crate::scalar::{cast, geom, unit_sphere_area, Scalar};

/// A real function sampled on a uniform axis-aligned grid, standing in for
/// `f d(nu)` with Lebesgue `nu`. Cell centers sit at
/// `origin + (i + 1/2) * spacing` per axis; values are row-major with the
/// first axis slowest.
#[derive(Debug, Clone)]
pub struct GridFunction<T: Scalar> {
    dim: usize,
    origin: Vec<T>,
    spacing: Vec<T>,
    shape: Vec<usize>,
    values: Vec<T>,
    centers: Vec<T>, // flat, stride = dim
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(
        origin: Vec<T>,
        spacing: Vec<T>,
        shape: Vec<usize>,
        values: Vec<T>,
    ) -> Result<Self> {
        let dim = origin.len();
        if dim == 0 || spacing.len() != dim || shape.len() != dim {
            return Err(Error::DimensionMismatch("grid axes".into()));
        }
        if spacing.iter().any(|h| !(*h > T::zero())) {
            return Err(Error::DegenerateBox);
        }
        let count: usize = shape.iter().product();
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if values.len() != count {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {count} cells",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidWeight("non-finite grid value".into()));
        }
        let mut centers = Vec::with_capacity(count * dim);
        let mut idx = vec![0usize; dim];
        for _ in 0..count {
            for a in 0..dim {
                centers.push(origin[a] + spacing[a] * cast(idx[a] as f64 + 0.5));
            }
            for a in (0..dim).rev() {
                idx[a] += 1;
                if idx[a] < shape[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        Ok(GridFunction { dim, origin, spacing, shape, values, centers })
    }

    /// Samples `f` at the cell centers of the box `[lower, upper]` with
    /// `resolution` cells per axis.
    pub fn from_fn(
        lower: &[T],
        upper: &[T],
        resolution: usize,
        f: impl Fn(&[T]) -> T,
    ) -> Result<Self> {
        let dim = lower.len();
        if upper.len() != dim {
            return Err(Error::DimensionMismatch("box corners".into()));
        }
        if resolution == 0 {
            return Err(Error::EmptyGrid);
        }
        for a in 0..dim {
            if !(upper[a] > lower[a]) {
                return Err(Error::DegenerateBox);
            }
        }
        let spacing: Vec<T> = (0..dim)
            .map(|a| (upper[a] - lower[a]) / cast(resolution as f64))
            .collect();
        let shape = vec![resolution; dim];
        let count: usize = shape.iter().product();
        if count > 1 << 24 {
            return Err(Error::ResourceLimit("too many cells".into()));
        }
        let probe = GridFunction::new(
            lower.to_vec(),
            spacing.clone(),
            shape.clone(),
            vec![T::zero(); count],
        )?;
        let values: Vec<T> = (0..count).map(|i| f(probe.center(i))).collect();
        GridFunction::new(lower.to_vec(), spacing, shape, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn origin(&self) -> &[T] {
        &self.origin
    }

    pub fn spacing(&self) -> &[T] {
        &self.spacing
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_volume(&self) -> T {
        self.spacing.iter().fold(T::one(), |acc, &h| acc * h)
    }

    #[inline]
    pub fn center(&self, i: usize) -> &[T] {
        &self.centers[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn value(&self, i: usize) -> T {
        self.values[i]
    }

    pub fn upper_corner(&self) -> Vec<T> {
        (0..self.dim)
            .map(|a| self.origin[a] + self.spacing[a] * cast(self.shape[a] as f64))
            .collect()
    }

    /// Flat index of the cell containing `x`, if `x` lies in the grid box.
    pub fn cell_containing(&self, x: &[T]) -> Option<usize> {
        let mut flat = 0usize;
        for a in 0..self.dim {
            let rel = (x[a] - self.origin[a]) / self.spacing[a];
            if rel < T::zero() {
                return None;
            }
            let mut i = rel.floor().to_usize()?;
            if i >= self.shape[a] {
                // right boundary belongs to the last cell
                let upper = self.origin[a] + self.spacing[a] * cast(self.shape[a] as f64);
                if x[a] <= upper && i == self.shape[a] {
                    i = self.shape[a] - 1;
                } else {
                    return None;
                }
            }
            flat = flat * self.shape[a] + i;
        }
        Some(flat)
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.dim];
        let mut rest = flat;
        for a in (0..self.dim).rev() {
            idx[a] = rest % self.shape[a];
            rest /= self.shape[a];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(self.shape.iter()).fold(0, |acc, (i, s)| acc * s + i)
    }

    pub fn map_values(&self, f: impl Fn(T) -> T) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = f(*v);
        }
        out
    }

    /// Multilinear interpolation at `x`: clamped to edge values inside the
    /// box's outer half-cells, zero outside the box entirely.
    pub fn interpolate(&self, x: &[T]) -> T {
        let half = cast::<T>(0.5);
        for a in 0..self.dim {
            let upper = self.origin[a] + self.spacing[a] * cast(self.shape[a] as f64);
            if x[a] < self.origin[a] || x[a] > upper {
                return T::zero();
            }
        }
        // per-axis lower neighbour index and interpolation weight
        let mut lo = vec![0usize; self.dim];
        let mut w = vec![T::zero(); self.dim];
        for a in 0..self.dim {
            let rel = (x[a] - self.origin[a]) / self.spacing[a] - half;
            if rel <= T::zero() {
                lo[a] = 0;
                w[a] = T::zero();
            } else {
                let f = rel.floor();
                let i = f.to_usize().unwrap_or(0);
                if i + 1 >= self.shape[a] {
                    lo[a] = self.shape[a] - 1;
                    w[a] = T::zero();
                } else {
                    lo[a] = i;
                    w[a] = rel - f;
                }
            }
        }
        let corners = 1usize << self.dim;
        let mut acc = T::zero();
        for c in 0..corners {
            let mut weight = T::one();
            let mut idx = Vec::with_capacity(self.dim);
            for a in 0..self.dim {
                if c >> a & 1 == 1 {
                    weight = weight * w[a];
                    idx.push(lo[a] + 1);
                } else {
                    weight = weight * (T::one() - w[a]);
                    idx.push(lo[a]);
                }
            }
            if weight > T::zero() {
                acc = acc + weight * self.values[self.flat_index(&idx)];
            }
        }
        acc
    }

    /// Radius of the ball with the same volume as one grid cell; the safe
    /// lower end for maximal-function radius grids.
    pub fn equal_volume_radius(&self) -> T {
        let n = self.dim;
        let vol = self.cell_volume();
        (cast::<T>(n as f64) * vol / unit_sphere_area::<T>(n))
            .powf(T::one() / cast(n as f64))
    }

    /// Default radius grid for maximal functions over this grid: from the
    /// equal-volume cell radius up to the box diameter plus `extra`.
    pub fn default_radii(&self, extra: T, per_octave: u32) -> Result<RadiiGrid<T>> {
        let lo = self.equal_volume_radius();
        let diag = geom::dist(&self.origin, &self.upper_corner());
        RadiiGrid::new(lo, diag + extra + lo, per_octave)
    }

    /// The grid viewed as a discrete measure (cell centers weighted by cell
    /// volume) together with the samples as a function on it.
    pub fn as_measure_function(&self) -> Result<(Arc<DiscreteMeasure<T>>, SampledFunction<T>)> {
        let points: Vec<Vec<T>> = (0..self.len()).map(|i| self.center(i).to_vec()).collect();
        let weights = vec![self.cell_volume(); self.len()];
        let mu = Arc::new(crate::measure::build_measure(points, weights)?);
        let f = SampledFunction::new(Arc::clone(&mu), self.values.clone())?;
        Ok((mu, f))
    }
}

fn check_alpha_open<T: Scalar>(alpha: T, n: usize) -> Result<()> {
    if !(alpha > T::zero()) || !(alpha < cast(n as f64)) {
        return Err(Error::InvalidOrder(format!("alpha {alpha} outside (0, {n})")));
    }
    Ok(())
}

/// `I_alpha f(x) = sum_cells |x - y_c|^{alpha - n} f(y_c) vol`, the cell
/// containing `x` replaced by the exact kernel integral over the ball of
/// equal volume centered at `x`.
pub fn riesz_potential<T: Scalar>(f: &GridFunction<T>, alpha: T, x: &[T]) -> Result<T> {
    let n = f.dim();
    check_alpha_open(alpha, n)?;
    if x.len() != n {
        return Err(Error::DimensionMismatch("target point".into()));
    }
    let vol = f.cell_volume();
    let self_cell = f.cell_containing(x);
    let exponent = alpha - cast(n as f64);
    let mut acc = T::zero();
    for i in 0..f.len() {
        let v = f.value(i);
        if v == T::zero() {
            continue;
        }
        if Some(i) == self_cell {
            continue;
        }
        let d = geom::dist(f.center(i), x);
        acc = acc + d.powf(exponent) * v * vol;
    }
    if let Some(i) = self_cell {
        let v = f.value(i);
        if v != T::zero() {
            let omega = unit_sphere_area::<T>(n);
            let rho = f.equal_volume_radius();
            acc = acc + v * omega * rho.powf(alpha) / alpha;
        }
    }
    Ok(acc)
}

/// `I_alpha f` at every atom of `targets`, parallel over atoms.
pub fn riesz_potential_field<T: Scalar>(
    f: &GridFunction<T>,
    alpha: T,
    targets: &Arc<DiscreteMeasure<T>>,
) -> Result<SampledFunction<T>> {
    check_alpha_open(alpha, f.dim())?;
    if targets.dim() != f.dim() {
        return Err(Error::DimensionMismatch("targets vs grid".into()));
    }
    let values: Vec<T> = (0..targets.len())
        .into_par_iter()
        .map(|i| riesz_potential(f, alpha, targets.point(i)).expect("validated above"))
        .collect::<Vec<_>>();
    SampledFunction::new(Arc::clone(targets), values)
}

/// `M_alpha f(x) = sup_r r^{alpha - n} int_{B_r(x)} |f| d(nu)` over the
/// radius grid; `alpha = 0` is the Hardy-Littlewood maximal function and
/// `alpha = n` the plain integral supremum.
pub fn fractional_maximal<T: Scalar>(
    f: &GridFunction<T>,
    alpha: T,
    x: &[T],
    radii: &RadiiGrid<T>,
) -> Result<T> {
    let n = f.dim();
    if !(alpha >= T::zero()) || !(alpha <= cast(n as f64)) {
        return Err(Error::InvalidOrder(format!("alpha {alpha} outside [0, {n}]")));
    }
    if radii.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let vol = f.cell_volume();
    // sorted distance profile with |f| mass prefix sums
    let mut cells: Vec<(T, T)> = (0..f.len())
        .filter(|&i| f.value(i) != T::zero())
        .map(|i| (geom::dist(f.center(i), x), f.value(i).abs() * vol))
        .collect();
    cells.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut prefix = Vec::with_capacity(cells.len() + 1);
    let mut acc = T::zero();
    prefix.push(acc);
    for (_, m) in &cells {
        acc = acc + *m;
        prefix.push(acc);
    }
    let exponent = alpha - cast(n as f64);
    let mut best = T::zero();
    for &r in radii.radii() {
        let k = cells.partition_point(|c| c.0 < r);
        let cand = r.powf(exponent) * prefix[k];
        if cand > best {
            best = cand;
        }
    }
    Ok(best)
}

/// `M_alpha f` at every atom of `targets`.
pub fn fractional_maximal_field<T: Scalar>(
    f: &GridFunction<T>,
    alpha: T,
    targets: &Arc<DiscreteMeasure<T>>,
    radii: &RadiiGrid<T>,
) -> Result<SampledFunction<T>> {
    if targets.dim() != f.dim() {
        return Err(Error::DimensionMismatch("targets vs grid".into()));
    }
    let values: Vec<T> = (0..targets.len())
        .into_par_iter()
        .map(|i| fractional_maximal(f, alpha, targets.point(i), radii))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(Arc::clone(targets), values)
}

/// Centered sharp maximal function with growth normalization:
/// `sup_r r^{-beta} int_{B_r(x)} |g - avg_{B_r} g| d(mu)`; empty balls
/// contribute 0.
pub fn sharp_maximal_centered<T: Scalar>(
    g: &SampledFunction<T>,
    beta: T,
    x: &[T],
    radii: &RadiiGrid<T>,
) -> T {
    let mu = g.measure();
    let mut best = T::zero();
    for &r in radii.radii() {
        let ids = mu.ball_atoms(x, r);
        if ids.is_empty() {
            continue;
        }
        let mass: T = ids.iter().map(|&i| mu.weight(i)).sum();
        if !(mass > T::zero()) {
            continue;
        }
        let mean: T = ids.iter().map(|&i| mu.weight(i) * g.value(i)).sum::<T>() / mass;
        let osc: T = ids
            .iter()
            .map(|&i| mu.weight(i) * (g.value(i) - mean).abs())
            .sum();
        let cand = r.powf(-beta) * osc;
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Uncentered sharp maximal function over an explicit cube family:
/// `sup_{Q containing x} mu(Q)^{-1} int_Q |g - g_Q| d(mu)`; zero-mass cubes
/// are skipped, and a point covered by no cube is an error.
pub fn sharp_maximal_uncentered<T: Scalar>(
    g: &SampledFunction<T>,
    x: &[T],
    cubes: &[DyadicCube<T>],
) -> Result<T> {
    let mu = g.measure();
    let mut best = T::zero();
    let mut covered = false;
    for q in cubes {
        if !q.contains_point(x) {
            continue;
        }
        covered = true;
        let (lo, hi) = q.bounds();
        let ids = mu.box_atoms(lo, &hi);
        let mass: T = ids.iter().map(|&i| mu.weight(i)).sum();
        if !(mass > T::zero()) {
            continue;
        }
        let mean: T = ids.iter().map(|&i| mu.weight(i) * g.value(i)).sum::<T>() / mass;
        let osc: T = ids
            .iter()
            .map(|&i| mu.weight(i) * (g.value(i) - mean).abs())
            .sum::<T>()
            / mass;
        if osc > best {
            best = osc;
        }
    }
    if !covered {
        return Err(Error::UncoveredPoint);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::czdecomp::RootCube;
    use crate::measure::build_measure;

    fn indicator_interval(res: usize) -> GridFunction<f64> {
        GridFunction::<f64>::from_fn(&[-1.0], &[1.0], res, |_| 1.0).unwrap()
    }

    #[test]
    fn grid_centers_and_volume() {
        let f = GridFunction::<f64>::from_fn(&[0.0, 0.0], &[1.0, 2.0], 4, |x| x[0] + x[1]).unwrap();
        assert_eq!(f.len(), 16);
        assert!((f.cell_volume() - 0.125).abs() < 1e-15);
        let c = f.center(0);
        assert!((c[0] - 0.125).abs() < 1e-15 && (c[1] - 0.25).abs() < 1e-15);
        assert_eq!(f.cell_containing(&[0.9, 1.9]), Some(15));
        assert_eq!(f.cell_containing(&[1.5, 0.5]), None);
    }

    #[test]
    fn riesz_oracle_half_order() {
        // int_{-1}^{1} |y|^{-1/2} dy = 4
        let f = indicator_interval(1000);
        let v = riesz_potential(&f, 0.5, &[0.0]).unwrap();
        assert!((v - 4.0).abs() / 4.0 < 0.02, "{v}");
        let f2 = indicator_interval(2000);
        let v2 = riesz_potential(&f2, 0.5, &[0.0]).unwrap();
        assert!((v2 - 4.0).abs() < (v - 4.0).abs());
    }

    #[test]
    fn riesz_of_zero_is_zero() {
        let f = GridFunction::<f64>::from_fn(&[-1.0], &[1.0], 64, |_| 0.0).unwrap();
        assert_eq!(riesz_potential(&f, 0.5, &[0.3]).unwrap(), 0.0);
    }

    #[test]
    fn riesz_monotone_along_ray() {
        let f = indicator_interval(400);
        let near = riesz_potential(&f, 0.5, &[1.5]).unwrap();
        let far = riesz_potential(&f, 0.5, &[2.5]).unwrap();
        assert!(far <= near);
    }

    #[test]
    fn riesz_rejects_bad_alpha() {
        let f = indicator_interval(16);
        assert!(riesz_potential(&f, 0.0, &[0.0]).is_err());
        assert!(riesz_potential(&f, 1.0, &[0.0]).is_err());
    }

    #[test]
    fn riesz_scaling_law() {
        // f_gamma(y) = f(gamma y) gives I f_gamma(x) = gamma^{-alpha} I f(gamma x)
        let alpha = 0.5;
        let gamma = 2.0f64;
        let f = indicator_interval(1200);
        let fg = GridFunction::<f64>::from_fn(&[-0.5], &[0.5], 1200, |_| 1.0).unwrap();
        let x = 0.2;
        let lhs = riesz_potential(&fg, alpha, &[x]).unwrap();
        let rhs = gamma.powf(-alpha) * riesz_potential(&f, alpha, &[gamma * x]).unwrap();
        assert!((lhs - rhs).abs() / rhs < 0.02, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn maximal_oracle_half_order() {
        // sup_r r^{-1/2} min(2r, 2) = 2 at r = 1
        let f = indicator_interval(1000);
        let radii = RadiiGrid::new(2f64.powi(-4), 2f64.powi(4), 8).unwrap();
        let v = fractional_maximal(&f, 0.5, &[0.0], &radii).unwrap();
        assert!((v - 2.0).abs() / 2.0 < 0.02, "{v}");
    }

    #[test]
    fn maximal_constant_function() {
        // r^{-n} int_{B_r} c = c |B_1| for every r; in 1D that is 2c
        let f = GridFunction::<f64>::from_fn(&[-8.0], &[8.0], 2048, |_| 3.0).unwrap();
        let radii = RadiiGrid::new(0.05, 4.0, 8).unwrap();
        let v = fractional_maximal(&f, 0.0, &[0.1], &radii).unwrap();
        assert!((v - 6.0).abs() / 6.0 < 0.03, "{v}");
    }

    #[test]
    fn maximal_below_riesz_pointwise() {
        let f = GridFunction::<f64>::from_fn(&[-2.0], &[2.0], 800, |x| {
            if x[0].abs() < 1.0 { 1.0 } else { 0.2 }
        })
        .unwrap();
        let radii = f.default_radii(1.0, 8).unwrap();
        for x in [-1.5, -0.42, 0.0, 0.3, 1.9] {
            let m = fractional_maximal(&f, 0.5, &[x], &radii).unwrap();
            let i = riesz_potential(&f, 0.5, &[x]).unwrap();
            assert!(m <= i * (1.0 + 1e-12), "x={x} m={m} i={i}");
        }
    }

    #[test]
    fn sharp_centered_constant_vanishes() {
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[0.0f64], &[1.0], 64).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![2.5; 64]).unwrap();
        let radii = RadiiGrid::new(0.01, 1.0, 4).unwrap();
        assert_eq!(sharp_maximal_centered(&g, 1.0, &[0.5], &radii), 0.0);
    }

    #[test]
    fn sharp_centered_constant_shift_invariant() {
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[0.0], &[1.0], 64).unwrap());
        let vals: Vec<f64> = mu.iter_points().map(|p| p[0] * p[0]).collect();
        let shifted: Vec<f64> = vals.iter().map(|v| v + 7.0).collect();
        let g = SampledFunction::new(Arc::clone(&mu), vals).unwrap();
        let h = SampledFunction::new(Arc::clone(&mu), shifted).unwrap();
        let radii = RadiiGrid::new(0.05, 1.0, 4).unwrap();
        let a = sharp_maximal_centered(&g, 1.0, &[0.5], &radii);
        let b = sharp_maximal_centered(&h, 1.0, &[0.5], &radii);
        assert!((a - b).abs() < 1e-14);
        assert!(a > 0.0);
    }

    #[test]
    fn sharp_centered_two_value_split() {
        // g = chi_E with mu(E cap B_r) = mu(B_r)/2: oscillation integral is
        // mu(B_r)/2 (mean 1/2, deviation 1/2 everywhere)
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[-1.0], &[1.0], 1000).unwrap());
        let vals: Vec<f64> =
            mu.iter_points().map(|p| if p[0] > 0.0 { 1.0 } else { 0.0 }).collect();
        let g = SampledFunction::new(Arc::clone(&mu), vals).unwrap();
        let r = 0.5;
        let radii = RadiiGrid::new(r, r, 4).unwrap();
        let beta = 1.0;
        let got = sharp_maximal_centered(&g, beta, &[0.0], &radii);
        let expect = r.powf(-beta) * (2.0 * r) / 2.0;
        assert!((got - expect).abs() < 0.02, "got={got} expect={expect}");
    }

    #[test]
    fn sharp_uncentered_single_cube_is_mean_deviation() {
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[0.0f64], &[1.0], 4).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let cube = root.cube(0, &[0]);
        let v = sharp_maximal_uncentered(&g, &[0.3], &[cube]).unwrap();
        assert!((v - 0.5).abs() < 1e-14, "{v}");
        let g2 = SampledFunction::new(Arc::clone(&mu), vec![2.0; 4]).unwrap();
        let cube = root.cube(0, &[0]);
        assert_eq!(sharp_maximal_uncentered(&g2, &[0.3], &[cube]).unwrap(), 0.0);
    }

    #[test]
    fn sharp_uncentered_uncovered_point_errors() {
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[0.0], &[1.0], 4).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![1.0; 4]).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let cube = root.cube(1, &[0]); // [0, 0.5)
        assert!(matches!(
            sharp_maximal_uncentered(&g, &[0.7], &[cube]),
            Err(Error::UncoveredPoint)
        ));
    }

    #[test]
    fn sharp_uncentered_grows_with_family() {
        let mu = Arc::new(crate::measure::lebesgue_on_box(&[0.0], &[1.0], 64).unwrap());
        let vals: Vec<f64> = mu.iter_points().map(|p| p[0]).collect();
        let g = SampledFunction::new(Arc::clone(&mu), vals).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let x = [0.3];
        let mut family = vec![root.cube(2, &[1])];
        let small = sharp_maximal_uncentered(&g, &x, &family).unwrap();
        family.push(root.cube(0, &[0]));
        let big = sharp_maximal_uncentered(&g, &x, &family).unwrap();
        assert!(big >= small);
    }

    #[test]
    fn sublinearity_of_maximal() {
        let f = GridFunction::<f64>::from_fn(&[-1.0], &[1.0], 200, |x| x[0].sin()).unwrap();
        let g = GridFunction::<f64>::from_fn(&[-1.0], &[1.0], 200, |x| (3.0 * x[0]).cos()).unwrap();
        let sum = GridFunction::new(
            f.origin().to_vec(),
            f.spacing().to_vec(),
            f.shape().to_vec(),
            f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect(),
        )
        .unwrap();
        let radii = f.default_radii(0.5, 4).unwrap();
        for x in [-0.7, 0.0, 0.4] {
            let ms = fractional_maximal(&sum, 0.3, &[x], &radii).unwrap();
            let mf = fractional_maximal(&f, 0.3, &[x], &radii).unwrap();
            let mg = fractional_maximal(&g, 0.3, &[x], &radii).unwrap();
            assert!(ms <= mf + mg + 1e-12);
        }
    }

    #[test]
    fn interpolation_reproduces_linear() {
        let f = GridFunction::<f64>::from_fn(&[0.0, 0.0], &[1.0, 1.0], 8, |x| {
            2.0 * x[0] - 3.0 * x[1]
        })
        .unwrap();
        // interior points away from the clamped half-cell border
        for (x, y) in [(0.3, 0.4), (0.51, 0.22), (0.8, 0.75)] {
            let v = f.interpolate(&[x, y]);
            assert!((v - (2.0 * x - 3.0 * y)).abs() < 1e-12, "{v}");
        }
        assert_eq!(f.interpolate(&[2.0, 0.5]), 0.0);
    }

    #[test]
    fn grid_as_measure_round_trip() {
        let f = GridFunction::<f64>::from_fn(&[0.0], &[1.0], 16, |x| x[0]).unwrap();
        let (mu, sf) = f.as_measure_function().unwrap();
        assert_eq!(mu.len(), 16);
        assert!((mu.total_mass() - 1.0).abs() < 1e-12);
        assert_eq!(sf.values().len(), 16);
    }

    #[test]
    fn field_matches_pointwise() {
        let f = indicator_interval(500);
        let targets =
            Arc::new(build_measure(vec![vec![0.0], vec![0.7]], vec![1.0, 1.0]).unwrap());
        let field = riesz_potential_field(&f, 0.5, &targets).unwrap();
        for (i, x) in [[0.0], [0.7]].iter().enumerate() {
            let direct = riesz_potential(&f, 0.5, x).unwrap();
            assert_eq!(field.value(i), direct);
        }
    }
}

//! Discrete Radon measures: weighted point clouds with a bucket index for
//! ball queries, growth constants and exponents, and Riesz energy.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cast, geom, unit_sphere_area, Scalar};

/// A finite weighted point cloud standing in for a Radon measure.
///
/// Immutable after construction; all queries are pure and safe to run in
/// parallel.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure<T: Scalar> {
    dim: usize,
    points: Vec<T>, // flat, stride = dim
    weights: Vec<T>,
    total_mass: T,
    index: BucketIndex<T>,
}

impl<T: Scalar> DiscreteMeasure<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    #[inline]
    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn total_mass(&self) -> T {
        self.total_mass
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[T]> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Diagonal of the support's bounding box; an easily computed stand-in
    /// for the diameter wherever only the scale matters.
    pub fn extent_diameter(&self) -> T {
        let (lo, hi) = self.bounding_box();
        geom::dist(&lo, &hi)
    }

    /// The bucket side of the spatial index, close to the median
    /// nearest-neighbour distance; a natural small-scale cutoff for radius
    /// grids over this measure.
    pub fn typical_spacing(&self) -> T {
        self.index.side
    }

    pub fn bounding_box(&self) -> (Vec<T>, Vec<T>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.iter_points() {
            for a in 0..self.dim {
                if p[a] < lo[a] {
                    lo[a] = p[a];
                }
                if p[a] > hi[a] {
                    hi[a] = p[a];
                }
            }
        }
        (lo, hi)
    }

    /// Indices of atoms strictly inside the open ball `B_r(x)`, ascending.
    pub fn ball_atoms(&self, x: &[T], r: T) -> Vec<usize> {
        assert_eq!(x.len(), self.dim, "query dimension mismatch");
        let r2 = r * r;
        let mut out = self
            .index
            .candidates_in_box(
                &self.centered_box(x, r),
                self.len(),
                |i| geom::dist2(self.point(i), x) < r2,
                |i| self.point(i),
            );
        out.sort_unstable();
        out
    }

    /// `mu(B_r(x))` with the open-ball convention.
    pub fn ball_mass(&self, x: &[T], r: T) -> T {
        self.ball_atoms(x, r).iter().map(|&i| self.weights[i]).sum()
    }

    /// Indices of atoms in the half-open box `[lo, hi)`, ascending.
    pub fn box_atoms(&self, lo: &[T], hi: &[T]) -> Vec<usize> {
        assert_eq!(lo.len(), self.dim);
        assert_eq!(hi.len(), self.dim);
        let inside = |p: &[T]| {
            p.iter()
                .zip(lo.iter().zip(hi.iter()))
                .all(|(x, (a, b))| *x >= *a && *x < *b)
        };
        let mut out = self.index.candidates_in_box(
            &(lo.to_vec(), hi.to_vec()),
            self.len(),
            |i| inside(self.point(i)),
            |i| self.point(i),
        );
        out.sort_unstable();
        out
    }

    pub fn box_mass(&self, lo: &[T], hi: &[T]) -> T {
        self.box_atoms(lo, hi).iter().map(|&i| self.weights[i]).sum()
    }

    fn centered_box(&self, x: &[T], r: T) -> (Vec<T>, Vec<T>) {
        let lo: Vec<T> = x.iter().map(|&c| c - r).collect();
        let hi: Vec<T> = x.iter().map(|&c| c + r).collect();
        (lo, hi)
    }

    /// Sorted distances from `x` to every atom together with the atom's
    /// weight, plus prefix sums of the weights. Shared backbone of the
    /// growth-constant sweep.
    fn distance_profile(&self, x: &[T]) -> (Vec<T>, Vec<T>) {
        let mut d: Vec<(T, usize)> = (0..self.len())
            .map(|i| (geom::dist(self.point(i), x), i))
            .collect();
        d.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let dists: Vec<T> = d.iter().map(|p| p.0).collect();
        let mut prefix = Vec::with_capacity(self.len() + 1);
        let mut acc = T::zero();
        prefix.push(acc);
        for &(_, i) in &d {
            acc = acc + self.weights[i];
            prefix.push(acc);
        }
        (dists, prefix)
    }
}

#[derive(Debug, Clone)]
struct BucketIndex<T: Scalar> {
    origin: Vec<T>,
    side: T,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<T: Scalar> BucketIndex<T> {
    fn build(dim: usize, points: &[T], count: usize) -> Self {
        let point = |i: usize| &points[i * dim..(i + 1) * dim];
        let mut origin = point(0).to_vec();
        let mut hi = origin.clone();
        for i in 1..count {
            let p = point(i);
            for a in 0..dim {
                if p[a] < origin[a] {
                    origin[a] = p[a];
                }
                if p[a] > hi[a] {
                    hi[a] = p[a];
                }
            }
        }
        let side = Self::pick_side(dim, points, count, &origin, &hi);
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for i in 0..count {
            let key = Self::key_of(point(i), &origin, side);
            buckets.entry(key).or_default().push(i);
        }
        BucketIndex { origin, side, buckets }
    }

    /// Bucket side close to the median nearest-neighbour distance, estimated
    /// on a strided sample to keep construction linear at desk scale.
    fn pick_side(dim: usize, points: &[T], count: usize, lo: &[T], hi: &[T]) -> T {
        let point = |i: usize| &points[i * dim..(i + 1) * dim];
        let diag = geom::dist(lo, hi);
        let fallback = if diag > T::zero() { diag } else { T::one() };
        if count < 2 {
            return fallback;
        }
        let sample = count.min(256);
        let stride = count.div_ceil(sample);
        let mut nn: Vec<T> = Vec::with_capacity(sample);
        let mut i = 0;
        while i < count {
            let p = point(i);
            let mut best = T::infinity();
            for j in 0..count {
                if j == i {
                    continue;
                }
                let d = geom::dist2(p, point(j));
                if d < best {
                    best = d;
                }
            }
            let d = best.sqrt();
            if d > T::zero() {
                nn.push(d);
            }
            i += stride;
        }
        if nn.is_empty() {
            return fallback;
        }
        nn.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let med = nn[nn.len() / 2];
        if med > T::zero() {
            med
        } else {
            fallback
        }
    }

    fn key_of(p: &[T], origin: &[T], side: T) -> Vec<i64> {
        p.iter()
            .zip(origin.iter())
            .map(|(x, o)| ((*x - *o) / side).floor().to_i64().unwrap_or(0))
            .collect()
    }

    /// Indices passing `accept` among atoms whose bucket intersects the box.
    /// Falls back to a full scan when the box covers more buckets than exist.
    fn candidates_in_box<'a>(
        &self,
        bbox: &(Vec<T>, Vec<T>),
        count: usize,
        accept: impl Fn(usize) -> bool,
        _point: impl Fn(usize) -> &'a [T],
    ) -> Vec<usize> {
        let dim = self.origin.len();
        let mut lo_k = Vec::with_capacity(dim);
        let mut hi_k = Vec::with_capacity(dim);
        let mut cells: f64 = 1.0;
        for a in 0..dim {
            let l = ((bbox.0[a] - self.origin[a]) / self.side)
                .floor()
                .to_i64()
                .unwrap_or(i64::MIN / 4);
            let h = ((bbox.1[a] - self.origin[a]) / self.side)
                .floor()
                .to_i64()
                .unwrap_or(i64::MAX / 4);
            cells *= (h - l + 1) as f64;
            lo_k.push(l);
            hi_k.push(h);
        }
        let mut out = Vec::new();
        if cells > self.buckets.len() as f64 {
            out.extend((0..count).filter(|&i| accept(i)));
            return out;
        }
        let mut key = lo_k.clone();
        loop {
            if let Some(ids) = self.buckets.get(&key) {
                out.extend(ids.iter().copied().filter(|&i| accept(i)));
            }
            // odometer increment over the integer box
            let mut axis = 0;
            loop {
                if axis == dim {
                    return out;
                }
                key[axis] += 1;
                if key[axis] <= hi_k[axis] {
                    break;
                }
                key[axis] = lo_k[axis];
                axis += 1;
            }
        }
    }
}

/// Builds a measure from explicit atoms.
pub fn build_measure<T: Scalar>(points: Vec<Vec<T>>, weights: Vec<T>) -> Result<DiscreteMeasure<T>> {
    if points.is_empty() || weights.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    if points.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} points vs {} weights",
            points.len(),
            weights.len()
        )));
    }
    let dim = points[0].len();
    if dim == 0 {
        return Err(Error::DimensionMismatch("zero-dimensional points".into()));
    }
    let mut flat = Vec::with_capacity(points.len() * dim);
    for p in &points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {}",
                p.len(),
                dim
            )));
        }
        for &c in p {
            if !c.is_finite() {
                return Err(Error::InvalidWeight("non-finite coordinate".into()));
            }
            flat.push(c);
        }
    }
    let mut total = T::zero();
    for &w in &weights {
        if !(w > T::zero()) || !w.is_finite() {
            return Err(Error::InvalidWeight(format!("weight {w}")));
        }
        total = total + w;
    }
    let index = BucketIndex::build(dim, &flat, weights.len());
    Ok(DiscreteMeasure { dim, points: flat, weights, total_mass: total, index })
}

/// Midpoint discretization of Lebesgue measure on a box: one atom per cell
/// center, weighted by the cell volume.
pub fn lebesgue_on_box<T: Scalar>(
    lower: &[T],
    upper: &[T],
    resolution: usize,
) -> Result<DiscreteMeasure<T>> {
    let dim = lower.len();
    if dim == 0 || upper.len() != dim {
        return Err(Error::DimensionMismatch("box corners".into()));
    }
    if resolution == 0 {
        return Err(Error::DegenerateBox);
    }
    for a in 0..dim {
        if !(upper[a] > lower[a]) {
            return Err(Error::DegenerateBox);
        }
    }
    let cells = resolution.checked_pow(dim as u32).filter(|&c| c <= 1 << 24);
    let cells = cells.ok_or_else(|| Error::ResourceLimit("too many cells".into()))?;
    let h: Vec<T> = (0..dim)
        .map(|a| (upper[a] - lower[a]) / cast(resolution as f64))
        .collect();
    let vol = h.iter().fold(T::one(), |acc, &x| acc * x);
    let mut points = Vec::with_capacity(cells);
    let mut idx = vec![0usize; dim];
    loop {
        let p: Vec<T> = (0..dim)
            .map(|a| lower[a] + h[a] * cast(idx[a] as f64 + 0.5))
            .collect();
        points.push(p);
        let mut a = 0;
        loop {
            if a == dim {
                let weights = vec![vol; points.len()];
                return build_measure(points, weights);
            }
            idx[a] += 1;
            if idx[a] < resolution {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// The canonical `log 2 / log 3`-dimensional measure: uniform mass on the
/// midpoints of the generation-`g` middle-thirds intervals of `[0, 1]`.
pub fn cantor_measure<T: Scalar>(generation: u32) -> Result<DiscreteMeasure<T>> {
    if generation == 0 {
        return Err(Error::InsufficientData("generation must be >= 1".into()));
    }
    if generation > 20 {
        return Err(Error::ResourceLimit("cantor generation > 20".into()));
    }
    let mut lefts: Vec<T> = vec![T::zero()];
    let mut len = T::one();
    let third = cast::<T>(1.0 / 3.0);
    for _ in 0..generation {
        len = len * third;
        let mut next = Vec::with_capacity(lefts.len() * 2);
        for &x in &lefts {
            next.push(x);
            next.push(x + len + len);
        }
        lefts = next;
    }
    let half = len * cast(0.5);
    let points: Vec<Vec<T>> = lefts.into_iter().map(|x| vec![x + half]).collect();
    let w = cast::<T>(0.5).powi(generation as i32);
    let weights = vec![w; points.len()];
    build_measure(points, weights)
}

/// Surfaces carrying lower-dimensional measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// Quasi-uniform atoms on the unit sphere `S^{n-1}`, weights summing to
    /// its area.
    Sphere,
    /// Flat grid on the hyperplane `{x_n = 0}` restricted to an extent box,
    /// weights summing to the `(n-1)`-volume of the extent.
    Hyperplane,
}

/// Builds a surface-carried measure. `extent` gives the `(n-1)` axis ranges
/// of the hyperplane patch and is ignored for spheres.
pub fn surface_measure<T: Scalar>(
    kind: SurfaceKind,
    dim: usize,
    resolution: usize,
    extent: &[(T, T)],
) -> Result<DiscreteMeasure<T>> {
    if dim < 2 {
        return Err(Error::DimensionMismatch("surface needs dim >= 2".into()));
    }
    if resolution == 0 {
        return Err(Error::DegenerateBox);
    }
    match kind {
        SurfaceKind::Sphere => sphere_measure(dim, resolution),
        SurfaceKind::Hyperplane => {
            if extent.len() != dim - 1 {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane extent needs {} ranges",
                    dim - 1
                )));
            }
            let lower: Vec<T> = extent.iter().map(|e| e.0).collect();
            let upper: Vec<T> = extent.iter().map(|e| e.1).collect();
            let flat = lebesgue_on_box(&lower, &upper, resolution)?;
            let points: Vec<Vec<T>> = flat
                .iter_points()
                .map(|p| {
                    let mut q = p.to_vec();
                    q.push(T::zero());
                    q
                })
                .collect();
            let weights = flat.weights().to_vec();
            build_measure(points, weights)
        }
    }
}

fn sphere_measure<T: Scalar>(dim: usize, resolution: usize) -> Result<DiscreteMeasure<T>> {
    let area = unit_sphere_area::<T>(dim);
    let w = area / cast(resolution as f64);
    let mut points = Vec::with_capacity(resolution);
    match dim {
        2 => {
            for k in 0..resolution {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / resolution as f64;
                points.push(vec![cast(theta.cos()), cast(theta.sin())]);
            }
        }
        3 => {
            // Fibonacci lattice
            let golden = std::f64::consts::PI * (3.0 - 5.0f64.sqrt());
            for k in 0..resolution {
                let z = 1.0 - (2.0 * k as f64 + 1.0) / resolution as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let phi = golden * k as f64;
                points.push(vec![cast(r * phi.cos()), cast(r * phi.sin()), cast(z)]);
            }
        }
        _ => {
            // seeded Gaussian directions; quasi-uniform in distribution
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_5EED);
            while points.len() < resolution {
                let mut v = vec![0.0f64; dim];
                let mut norm2 = 0.0;
                for c in v.iter_mut() {
                    // Box-Muller pair, one draw used
                    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                    let u2: f64 = rng.gen_range(0.0..1.0);
                    *c = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
                    norm2 += *c * *c;
                }
                if norm2 > 1e-12 {
                    let n = norm2.sqrt();
                    points.push(v.into_iter().map(|c| cast(c / n)).collect());
                }
            }
        }
    }
    let weights = vec![w; points.len()];
    build_measure(points, weights)
}

/// Geometric radius grid `r_k = r_min * 2^{k/per_octave}` up to `r_max`;
/// every supremum over `r > 0` in the crate is evaluated on such a grid.
#[derive(Debug, Clone)]
pub struct RadiiGrid<T: Scalar> {
    pub r_min: T,
    pub r_max: T,
    pub per_octave: u32,
    radii: Vec<T>,
}

impl<T: Scalar> RadiiGrid<T> {
    pub fn new(r_min: T, r_max: T, per_octave: u32) -> Result<Self> {
        if !(r_min > T::zero()) || !(r_max >= r_min) || per_octave == 0 {
            return Err(Error::EmptyGrid);
        }
        let two = cast::<T>(2.0);
        let slack = r_max * cast(1.0 + 1e-12);
        let mut radii = Vec::new();
        let mut k = 0u32;
        loop {
            let r = r_min * two.powf(cast(k as f64 / per_octave as f64));
            if r > slack {
                break;
            }
            radii.push(r);
            k += 1;
        }
        if radii.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Ok(RadiiGrid { r_min, r_max, per_octave, radii })
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Which centers a growth sweep ranges over. `Support` realizes
/// "x in spt(mu)" exactly; `Points` is an experimental override.
#[derive(Debug, Clone, Copy)]
pub enum Centers<'a, T: Scalar> {
    Support,
    Points(&'a [Vec<T>]),
}

/// Result of a growth-constant sweep.
#[derive(Debug, Clone)]
pub struct GrowthReport<T: Scalar> {
    pub beta: T,
    /// Best (largest) observed `r^{-beta} mu(B_r(x))`.
    pub constant: T,
    pub witness_center: Vec<T>,
    pub witness_radius: T,
    /// `(r, sup_x r^{-beta} mu(B_r(x)))` per grid radius.
    pub per_radius_sup: Vec<(T, T)>,
}

/// Estimates the growth constant `sup_{x,r} r^{-beta} mu(B_r(x))` on a
/// radius grid. Monotone non-decreasing under enlarging either the grid or
/// the center set.
pub fn growth_constant<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    beta: T,
    radii: &RadiiGrid<T>,
    centers: Centers<'_, T>,
) -> Result<GrowthReport<T>> {
    if !(beta > T::zero()) || beta > cast(mu.dim() as f64) {
        return Err(Error::InvalidExponent(format!(
            "beta {beta} outside (0, {}]",
            mu.dim()
        )));
    }
    let sup = per_radius_sup(mu, radii, centers);
    let mut constant = T::neg_infinity();
    let mut witness = (Vec::new(), T::zero());
    let mut table = Vec::with_capacity(sup.len());
    for entry in &sup {
        let scaled = entry.mass * entry.radius.powf(-beta);
        table.push((entry.radius, scaled));
        if scaled > constant {
            constant = scaled;
            witness = (entry.center.clone(), entry.radius);
        }
    }
    Ok(GrowthReport {
        beta,
        constant,
        witness_center: witness.0,
        witness_radius: witness.1,
        per_radius_sup: table,
    })
}

struct SupEntry<T> {
    radius: T,
    mass: T,
    center: Vec<T>,
}

/// For each grid radius, the best ball mass over the centers and the center
/// achieving it (first maximizer in center order, deterministically).
fn per_radius_sup<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    radii: &RadiiGrid<T>,
    centers: Centers<'_, T>,
) -> Vec<SupEntry<T>> {
    let center_points: Vec<Vec<T>> = match centers {
        Centers::Support => mu.iter_points().map(|p| p.to_vec()).collect(),
        Centers::Points(pts) => pts.to_vec(),
    };
    // Per center: sorted distances + weight prefix sums, then every radius
    // is a binary search. Parallel over centers, deterministic reduction.
    let per_center: Vec<Vec<T>> = center_points
        .par_iter()
        .map(|c| {
            let (dists, prefix) = mu.distance_profile(c);
            radii
                .radii()
                .iter()
                .map(|&r| {
                    let k = dists.partition_point(|&d| d < r);
                    prefix[k]
                })
                .collect()
        })
        .collect();
    radii
        .radii()
        .iter()
        .enumerate()
        .map(|(ri, &r)| {
            let mut best = T::neg_infinity();
            let mut who = 0usize;
            for (ci, row) in per_center.iter().enumerate() {
                if row[ri] > best {
                    best = row[ri];
                    who = ci;
                }
            }
            SupEntry { radius: r, mass: best, center: center_points[who].clone() }
        })
        .collect()
}

/// Least-squares slope of `log sup_x mu(B_r(x))` against `log r`, with the
/// regression's r-squared. A Frostman-style dimension estimate.
pub fn growth_exponent<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    radii: &RadiiGrid<T>,
) -> Result<(T, T)> {
    if radii.len() < 4 || radii.r_max / radii.r_min < cast(4.0 - 1e-9) {
        return Err(Error::InsufficientData(
            "need >= 4 radii spanning >= 2 octaves".into(),
        ));
    }
    let sup = per_radius_sup(mu, radii, Centers::Support);
    let pts: Vec<(T, T)> = sup
        .iter()
        .filter(|e| e.mass > T::zero())
        .map(|e| (e.radius.ln(), e.mass.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InsufficientData("fewer than 2 positive samples".into()));
    }
    let n = cast::<T>(pts.len() as f64);
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<T>();
    let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<T>();
    let syy = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum::<T>();
    let slope = sxy / sxx;
    let ss_res = syy - slope * sxy;
    let r2 = if syy > T::zero() { T::one() - ss_res / syy } else { T::one() };
    Ok((slope, r2))
}

/// Diagonal handling for the Riesz energy.
#[derive(Debug, Clone, Copy)]
pub enum DiagonalRule<T: Scalar> {
    /// Off-diagonal pair sum only.
    None,
    /// Each atom adds `w_i^2 * rho_i^{-beta}` with `rho_i` half its
    /// nearest-neighbour distance, floored at `rho_min` (default
    /// `1e-9 * extent diameter`).
    EffectiveRadius { rho_min: Option<T> },
}

/// Riesz energy value, flagged infinite when distinct atoms coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RieszEnergy<T: Scalar> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> RieszEnergy<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            RieszEnergy::Finite(v) => Some(v),
            RieszEnergy::Infinite => None,
        }
    }
}

/// `E_beta(mu) = sum_{i != j} w_i w_j |p_i - p_j|^{-beta}` (ordered pairs,
/// matching the double integral) plus the chosen diagonal correction.
pub fn riesz_energy<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    beta: T,
    diagonal: DiagonalRule<T>,
) -> Result<RieszEnergy<T>> {
    if !(beta > T::zero()) {
        return Err(Error::InvalidExponent(format!("beta {beta} must be positive")));
    }
    let n = mu.len();
    let rho_floor = match diagonal {
        DiagonalRule::EffectiveRadius { rho_min } => {
            let d = mu.extent_diameter();
            let default = if d > T::zero() { d * cast(1e-9) } else { cast(1e-9) };
            Some(rho_min.unwrap_or(default))
        }
        DiagonalRule::None => None,
    };
    // Full row scans accumulate the ordered-pair sum directly; the same
    // pass collects nearest-neighbour distances.
    let rows: Vec<Option<(T, T)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = mu.point(i);
            let mut acc = T::zero();
            let mut nn = T::infinity();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = geom::dist(p, mu.point(j));
                if d == T::zero() {
                    return None;
                }
                if d < nn {
                    nn = d;
                }
                acc = acc + mu.weight(i) * mu.weight(j) * d.powf(-beta);
            }
            Some((acc, nn))
        })
        .collect();
    let mut off = T::zero();
    let mut diag = T::zero();
    for (i, row) in rows.iter().enumerate() {
        let Some((acc, nn)) = row else {
            return Ok(RieszEnergy::Infinite);
        };
        off = off + *acc;
        if let Some(floor) = rho_floor {
            let rho = (*nn * cast(0.5)).max(floor);
            diag = diag + mu.weight(i) * mu.weight(i) * rho.powf(-beta);
        }
    }
    Ok(RieszEnergy::Finite(off + diag))
}

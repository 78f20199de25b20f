//! Doubling cubes over a dyadic hierarchy and the stopping-time
//! decomposition for measures with polynomial growth, plus the numerical
//! good-lambda verification it feeds.
//!
//! Cubes are half-open `[a, a + side)` per axis so that children partition
//! their parent exactly and every atom is counted once.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lorentz::SampledFunction;
use crate::measure::DiscreteMeasure;
use crate::operators::{riesz_potential_field, GridFunction};
use crate::scalar::{cast, Scalar};

/// Root of a dyadic hierarchy: the cube `[lower, lower + side)^n`.
#[derive(Debug, Clone)]
pub struct RootCube<T: Scalar> {
    lower: Vec<T>,
    side: T,
}

impl<T: Scalar> RootCube<T> {
    pub fn new(lower: Vec<T>, side: T) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::DimensionMismatch("empty root corner".into()));
        }
        if !(side > T::zero()) {
            return Err(Error::DegenerateBox);
        }
        Ok(RootCube { lower, side })
    }

    /// Root cube covering the support of `mu` with a margin of one part in
    /// 2^20, so no atom sits on the open upper face.
    pub fn covering(mu: &DiscreteMeasure<T>) -> Self {
        let (lo, hi) = mu.bounding_box();
        let mut side = T::zero();
        for a in 0..lo.len() {
            let s = hi[a] - lo[a];
            if s > side {
                side = s;
            }
        }
        if side == T::zero() {
            side = T::one();
        }
        side = side * cast(1.0 + 1.0 / (1 << 20) as f64);
        RootCube { lower: lo, side }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn side(&self) -> T {
        self.side
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    /// The dyadic cube at `level` (side `side / 2^level`) with the given
    /// per-axis integer offsets.
    pub fn cube(&self, level: u32, index: &[i64]) -> DyadicCube<T> {
        assert_eq!(index.len(), self.dim());
        let side = self.side * cast::<T>(0.5).powi(level as i32);
        let lower: Vec<T> = self
            .lower
            .iter()
            .zip(index.iter())
            .map(|(l, &i)| *l + side * cast(i as f64))
            .collect();
        DyadicCube { level, index: index.to_vec(), lower, side }
    }

    /// The level-`level` cube containing `x`, or `None` when `x` lies
    /// outside the root.
    pub fn cube_containing(&self, x: &[T], level: u32) -> Option<DyadicCube<T>> {
        let side = self.side * cast::<T>(0.5).powi(level as i32);
        let cells = 1i64 << level;
        let mut index = Vec::with_capacity(self.dim());
        for a in 0..self.dim() {
            let rel = (x[a] - self.lower[a]) / side;
            if rel < T::zero() {
                return None;
            }
            let i = rel.floor().to_i64()?;
            if i < 0 || i >= cells {
                return None;
            }
            index.push(i);
        }
        Some(self.cube(level, &index))
    }
}

/// A dyadic cube: identity `(level, index)` plus materialized geometry.
#[derive(Debug, Clone)]
pub struct DyadicCube<T: Scalar> {
    pub level: u32,
    pub index: Vec<i64>,
    lower: Vec<T>,
    side: T,
}

impl<T: Scalar> DyadicCube<T> {
    pub fn side(&self) -> T {
        self.side
    }

    pub fn center(&self) -> Vec<T> {
        let half = self.side * cast(0.5);
        self.lower.iter().map(|&l| l + half).collect()
    }

    pub fn bounds(&self) -> (&[T], Vec<T>) {
        let hi: Vec<T> = self.lower.iter().map(|&l| l + self.side).collect();
        (&self.lower, hi)
    }

    pub fn contains_point(&self, x: &[T]) -> bool {
        self.lower
            .iter()
            .zip(x.iter())
            .all(|(l, c)| *c >= *l && *c < *l + self.side)
    }

    /// Concentric dilation `tau Q` as a half-open box.
    pub fn dilated(&self, tau: T) -> (Vec<T>, Vec<T>) {
        let half = self.side * cast(0.5);
        let grow = self.side * tau * cast(0.5);
        let lo: Vec<T> = self.lower.iter().map(|&l| l + half - grow).collect();
        let hi: Vec<T> = self.lower.iter().map(|&l| l + half + grow).collect();
        (lo, hi)
    }

    /// Dyadic cubes from one hierarchy overlap exactly when one contains
    /// the other; checked on integer indices.
    pub fn overlaps(&self, other: &Self) -> bool {
        let (coarse, fine) = if self.level <= other.level { (self, other) } else { (other, self) };
        let shift = fine.level - coarse.level;
        fine.index
            .iter()
            .zip(coarse.index.iter())
            .all(|(&fi, &ci)| (fi >> shift) == ci)
    }
}

/// `mu(tau Q) <= gamma mu(Q)`, with zero-mass cubes doubling by convention.
pub fn is_doubling<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    cube: &DyadicCube<T>,
    tau: T,
    gamma: T,
) -> bool {
    let (lo, hi) = cube.bounds();
    let m = mu.box_mass(lo, &hi);
    if !(m > T::zero()) {
        return true;
    }
    let (dlo, dhi) = cube.dilated(tau);
    mu.box_mass(&dlo, &dhi) <= gamma * m
}

fn default_gamma<T: Scalar>(n: usize) -> T {
    cast::<T>(2.0).powi(n as i32 + 1)
}

/// Search direction for [`find_doubling_cube`].
#[derive(Debug, Clone, Copy)]
pub enum Direction<T> {
    /// Deepest doubling cube containing the point, scanning from the root
    /// down to `max_depth`.
    Shrink,
    /// Smallest doubling cube containing the point with side exceeding the
    /// given threshold.
    Grow(T),
}

/// Finds a `(2, 2^{n+1})`-doubling cube containing `x` in the hierarchy.
pub fn find_doubling_cube<T: Scalar>(
    mu: &DiscreteMeasure<T>,
    x: &[T],
    direction: Direction<T>,
    root: &RootCube<T>,
    max_depth: u32,
) -> Result<DyadicCube<T>> {
    let tau = cast::<T>(2.0);
    let gamma = default_gamma::<T>(root.dim());
    match direction {
        Direction::Shrink => {
            let mut found = None;
            for level in 0..=max_depth {
                let Some(q) = root.cube_containing(x, level) else {
                    break;
                };
                if is_doubling(mu, &q, tau, gamma) {
                    found = Some(q);
                }
            }
            found.ok_or_else(|| {
                Error::DepthLimit(format!(
                    "no doubling cube containing the point within {max_depth} levels"
                ))
            })
        }
        Direction::Grow(min_side) => {
            // deepest level whose side still exceeds the threshold, then
            // walk towards the root
            let mut level = 0u32;
            while level < max_depth {
                let side = root.side() * cast::<T>(0.5).powi(level as i32 + 1);
                if side <= min_side {
                    break;
                }
                level += 1;
            }
            loop {
                if let Some(q) = root.cube_containing(x, level) {
                    if is_doubling(mu, &q, tau, gamma) {
                        return Ok(q);
                    }
                }
                if level == 0 {
                    return Err(Error::DepthLimit(
                        "no doubling cube with the requested side up to the root".into(),
                    ));
                }
                level -= 1;
            }
        }
    }
}

/// One selected cube of a decomposition, with its `|g|`-average.
#[derive(Debug, Clone)]
pub struct CzCube<T: Scalar> {
    pub cube: DyadicCube<T>,
    pub average: T,
    pub mass: T,
}

/// Output of the stopping-time decomposition at threshold `lambda`.
#[derive(Debug, Clone)]
pub struct CzResult<T: Scalar> {
    pub lambda: T,
    pub cubes: Vec<CzCube<T>>,
    /// Indices into `cubes`, grouped into pairwise-disjoint families.
    pub families: Vec<Vec<usize>>,
    /// Every atom with `|g| > lambda` lies in a selected cube.
    pub exceptional_ok: bool,
    pub family_count: usize,
}

impl<T: Scalar> CzResult<T> {
    pub fn total_cube_mass(&self) -> T {
        self.cubes.iter().map(|c| c.mass).sum()
    }
}

/// Maximum hierarchy depth used when callers do not override it.
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Stopping-time decomposition: for every atom with `|g| > lambda`, selects
/// the largest dyadic `(2, 2^{n+1})`-doubling cube containing it whose
/// `|g|`-average lies in `(lambda, 4^{n+1} lambda]`, then colors the selected
/// cubes into pairwise-disjoint families.
pub fn cz_decompose<T: Scalar>(
    g: &SampledFunction<T>,
    lambda: T,
    root: &RootCube<T>,
    max_depth: u32,
) -> Result<CzResult<T>> {
    let mu = g.measure();
    let n = mu.dim();
    if root.dim() != n {
        return Err(Error::DimensionMismatch("root cube vs measure".into()));
    }
    let tau = cast::<T>(2.0);
    let gamma = default_gamma::<T>(n);
    let upper_factor = cast::<T>(4.0).powi(n as i32 + 1);

    // atoms inside the root, and the root average precondition
    let in_root: Vec<usize> = (0..mu.len())
        .filter(|&i| root.cube_containing(mu.point(i), 0).is_some())
        .collect();
    let root_mass: T = in_root.iter().map(|&i| mu.weight(i)).sum();
    if !(root_mass > T::zero()) {
        return Err(Error::ThresholdTooSmall("root cube carries no mass".into()));
    }
    let root_int: T = in_root.iter().map(|&i| mu.weight(i) * g.value(i).abs()).sum();
    let root_avg = root_int / root_mass;
    if !(lambda > root_avg) {
        return Err(Error::ThresholdTooSmall(format!(
            "lambda {lambda} <= root average {root_avg}"
        )));
    }

    // per-level caches of cube mass and |g|-integral, keyed by index
    let mut level_tables: Vec<HashMap<Vec<i64>, (T, T)>> = Vec::new();
    let table_for = |level: u32, tables: &mut Vec<HashMap<Vec<i64>, (T, T)>>| {
        while tables.len() <= level as usize {
            let l = tables.len() as u32;
            let mut map: HashMap<Vec<i64>, (T, T)> = HashMap::new();
            for &i in &in_root {
                if let Some(q) = root.cube_containing(mu.point(i), l) {
                    let entry = map.entry(q.index).or_insert((T::zero(), T::zero()));
                    entry.0 = entry.0 + mu.weight(i);
                    entry.1 = entry.1 + mu.weight(i) * g.value(i).abs();
                }
            }
            tables.push(map);
        }
    };

    let mut selected: BTreeMap<(u32, Vec<i64>), (T, T)> = BTreeMap::new();
    let mut covered_all = true;
    for &i in &in_root {
        if !(g.value(i).abs() > lambda) {
            continue;
        }
        let x = mu.point(i);
        let mut chosen = None;
        for level in 0..=max_depth {
            let Some(q) = root.cube_containing(x, level) else { break };
            table_for(level, &mut level_tables);
            let Some(&(mass, int)) = level_tables[level as usize].get(&q.index) else {
                break;
            };
            if !(mass > T::zero()) {
                break;
            }
            let avg = int / mass;
            if avg > lambda && avg <= lambda * upper_factor && is_doubling(mu, &q, tau, gamma)
            {
                chosen = Some((q, avg, mass));
                break;
            }
        }
        match chosen {
            Some((q, avg, mass)) => {
                selected.insert((q.level, q.index), (avg, mass));
            }
            None => {
                covered_all = false;
            }
        }
    }
    if !covered_all {
        return Err(Error::DepthLimit(
            "an exceeding atom admits no doubling cube with controlled average".into(),
        ));
    }

    let cubes: Vec<CzCube<T>> = selected
        .into_iter()
        .map(|((level, index), (average, mass))| CzCube {
            cube: root.cube(level, &index),
            average,
            mass,
        })
        .collect();

    // greedy first-fit coloring; dyadic cubes only overlap by nesting
    let mut families: Vec<Vec<usize>> = Vec::new();
    for (ci, c) in cubes.iter().enumerate() {
        let slot = families.iter().position(|fam| {
            fam.iter().all(|&o| !cubes[o].cube.overlaps(&c.cube))
        });
        match slot {
            Some(k) => families[k].push(ci),
            None => families.push(vec![ci]),
        }
    }
    let family_count = families.len();
    Ok(CzResult { lambda, cubes, families, exceptional_ok: covered_all, family_count })
}

/// Numerical check of the good-lambda inequality at level `t`:
/// `sum_j mu(Q_j^t) <= mu({sharp maximal > 3 eps t / 4}) + eps sum_j mu(Q_j^s)`
/// with `s = 4^{-n-2} t`.
#[derive(Debug, Clone)]
pub struct GoodLambdaReport<T: Scalar> {
    pub t: T,
    pub s: T,
    pub epsilon: T,
    pub lhs: T,
    pub sharp_level_mass: T,
    pub eps_term: T,
    pub slack: T,
    pub passes: bool,
    pub t_cube_count: usize,
    pub s_cube_count: usize,
}

/// Runs the full pipeline: the Riesz field of `f` on the atoms of `mu`,
/// decompositions at `t` and `s`, the dyadic-chain sharp maximal, and the
/// two sides of the inequality.
pub fn verify_good_lambda<T: Scalar>(
    f: &GridFunction<T>,
    mu: &std::sync::Arc<DiscreteMeasure<T>>,
    alpha: T,
    t: T,
    epsilon: T,
    root: &RootCube<T>,
    max_depth: u32,
) -> Result<GoodLambdaReport<T>> {
    let g = riesz_potential_field(f, alpha, mu)?;
    verify_good_lambda_of_field(&g, t, epsilon, root, max_depth)
}

/// Same check for an already computed field.
pub fn verify_good_lambda_of_field<T: Scalar>(
    g: &SampledFunction<T>,
    t: T,
    epsilon: T,
    root: &RootCube<T>,
    max_depth: u32,
) -> Result<GoodLambdaReport<T>> {
    let mu = g.measure();
    let n = mu.dim();
    let s = t * cast::<T>(4.0).powi(-(n as i32) - 2);
    let czt = cz_decompose(g, t, root, max_depth)?;
    let czs = cz_decompose(g, s, root, max_depth)?;
    let lhs = czt.total_cube_mass();
    let eps_term = epsilon * czs.total_cube_mass();

    // uncentered sharp maximal along each atom's dyadic chain
    let sharp = dyadic_sharp_maximal(g, root, max_depth);
    let threshold = cast::<T>(0.75) * epsilon * t;
    let mut sharp_level_mass = T::zero();
    for (i, &v) in sharp.iter().enumerate() {
        if v > threshold {
            sharp_level_mass = sharp_level_mass + mu.weight(i);
        }
    }
    let rhs = sharp_level_mass + eps_term;
    let slack = rhs - lhs;
    let scale = lhs.abs() + rhs.abs() + T::one();
    Ok(GoodLambdaReport {
        t,
        s,
        epsilon,
        lhs,
        sharp_level_mass,
        eps_term,
        slack,
        passes: slack >= -cast::<T>(1e-9) * scale,
        t_cube_count: czt.cubes.len(),
        s_cube_count: czs.cubes.len(),
    })
}

/// For every atom: `max` over the dyadic cubes of its chain of the
/// normalized mean oscillation `mu(Q)^{-1} int_Q |g - g_Q|`. Atoms outside
/// the root get 0.
pub fn dyadic_sharp_maximal<T: Scalar>(
    g: &SampledFunction<T>,
    root: &RootCube<T>,
    max_depth: u32,
) -> Vec<T> {
    let mu = g.measure();
    let mut best = vec![T::zero(); mu.len()];
    for level in 0..=max_depth {
        let mut groups: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for i in 0..mu.len() {
            if let Some(q) = root.cube_containing(mu.point(i), level) {
                groups.entry(q.index).or_default().push(i);
            }
        }
        let mut nontrivial = false;
        for ids in groups.values() {
            let mass: T = ids.iter().map(|&i| mu.weight(i)).sum();
            if !(mass > T::zero()) {
                continue;
            }
            let mean: T =
                ids.iter().map(|&i| mu.weight(i) * g.value(i)).sum::<T>() / mass;
            let osc: T = ids
                .iter()
                .map(|&i| mu.weight(i) * (g.value(i) - mean).abs())
                .sum::<T>()
                / mass;
            if ids.len() > 1 {
                nontrivial = true;
            }
            for &i in ids {
                if osc > best[i] {
                    best[i] = osc;
                }
            }
        }
        // once every cube holds at most one atom, deeper levels add nothing
        if !nontrivial && level > 0 {
            break;
        }
    }
    best
}

/// Verifies the three structural properties of a decomposition against its
/// inputs; used by the acceptance battery and the CLI report path.
pub fn check_cz_invariants<T: Scalar>(
    res: &CzResult<T>,
    g: &SampledFunction<T>,
    root: &RootCube<T>,
) -> Vec<String> {
    let mu = g.measure();
    let n = mu.dim();
    let tau = cast::<T>(2.0);
    let gamma = default_gamma::<T>(n);
    let upper = cast::<T>(4.0).powi(n as i32 + 1) * res.lambda;
    let mut violations = Vec::new();
    for (i, c) in res.cubes.iter().enumerate() {
        if !is_doubling(mu, &c.cube, tau, gamma) {
            violations.push(format!("cube {i} is not (2, 2^{{n+1}})-doubling"));
        }
        if !(c.average > res.lambda) || c.average > upper * cast(1.0 + 1e-12) {
            violations.push(format!(
                "cube {i} average {} outside (lambda, 4^{{n+1}} lambda]",
                c.average
            ));
        }
    }
    for (fi, fam) in res.families.iter().enumerate() {
        for (a, &i) in fam.iter().enumerate() {
            for &j in fam.iter().skip(a + 1) {
                if res.cubes[i].cube.overlaps(&res.cubes[j].cube) {
                    violations.push(format!("family {fi}: cubes {i} and {j} overlap"));
                }
            }
        }
    }
    // coverage of every exceeding atom
    for i in 0..mu.len() {
        if root.cube_containing(mu.point(i), 0).is_none() {
            continue;
        }
        if g.value(i).abs() > res.lambda {
            let covered = res
                .cubes
                .iter()
                .any(|c| c.cube.contains_point(mu.point(i)));
            if !covered {
                violations.push(format!("atom {i} exceeds lambda but is uncovered"));
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{build_measure, lebesgue_on_box};
    use std::sync::Arc;

    #[test]
    fn dyadic_geometry() {
        let root = RootCube::new(vec![0.0f64, 0.0], 1.0).unwrap();
        let q = root.cube(1, &[1, 0]);
        assert!((q.side() - 0.5).abs() < 1e-15);
        assert!(q.contains_point(&[0.6, 0.2]));
        assert!(!q.contains_point(&[0.4, 0.2]));
        let c = root.cube_containing(&[0.6, 0.2], 1).unwrap();
        assert_eq!(c.index, vec![1, 0]);
        // children partition the parent: boundary point belongs to one child
        let mid = root.cube_containing(&[0.5, 0.5], 1).unwrap();
        assert_eq!(mid.index, vec![1, 1]);
    }

    #[test]
    fn overlap_is_nesting() {
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let parent = root.cube(1, &[0]);
        let child = root.cube(3, &[3]);
        let cousin = root.cube(3, &[5]);
        assert!(parent.overlaps(&child));
        assert!(child.overlaps(&parent));
        assert!(!parent.overlaps(&cousin));
        assert!(!child.overlaps(&cousin));
    }

    #[test]
    fn doubling_on_uniform_measure() {
        let mu = lebesgue_on_box(&[0.0, 0.0], &[1.0, 1.0], 32).unwrap();
        let root = RootCube::new(vec![0.0, 0.0], 1.0).unwrap();
        // interior cube: ratio about 2^n = 4 <= gamma = 8
        let q = root.cube(2, &[1, 2]);
        assert!(is_doubling(&mu, &q, 2.0, 8.0));
    }

    #[test]
    fn point_mass_at_center_is_doubling() {
        let mu = build_measure(vec![vec![0.5, 0.5]], vec![1.0]).unwrap();
        let root = RootCube::new(vec![0.0, 0.0], 1.0).unwrap();
        let q = root.cube(0, &[0, 0]);
        assert!(is_doubling(&mu, &q, 2.0, 8.0));
    }

    #[test]
    fn mass_just_outside_breaks_doubling() {
        // tiny atom inside Q, heavy atom outside Q but inside 2Q
        let mu = build_measure(
            vec![vec![0.25], vec![0.6]],
            vec![1e-6, 1.0],
        )
        .unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let q = root.cube(1, &[0]); // [0, 0.5), 2Q = [-0.25, 0.75)
        assert!(!is_doubling(&mu, &q, 2.0, 4.0));
        // with no atom inside, mu(Q) = 0 counts as doubling
        let mu2 = build_measure(vec![vec![0.6]], vec![1.0]).unwrap();
        assert!(is_doubling(&mu2, &q, 2.0, 4.0));
    }

    #[test]
    fn find_shrinking_doubling_cube() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 64).unwrap());
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let q = find_doubling_cube(&mu, &[0.3], Direction::Shrink, &root, 12).unwrap();
        assert!(q.contains_point(&[0.3]));
        assert!(is_doubling(&mu, &q, 2.0, 4.0));
        // single atom: deep cubes around it end up doubling
        let single = Arc::new(build_measure(vec![vec![0.37]], vec![1.0]).unwrap());
        let q = find_doubling_cube(&single, &[0.37], Direction::Shrink, &root, 20).unwrap();
        assert!(q.contains_point(&[0.37]));
    }

    #[test]
    fn find_growing_doubling_cube() {
        let mu = Arc::new(cantor_fixture());
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let q = find_doubling_cube(&mu, &[1.0 / 6.0], Direction::Grow(0.1), &root, 30).unwrap();
        assert!(q.side() > 0.1);
        assert!(q.contains_point(&[1.0 / 6.0]));
        assert!(is_doubling(&mu, &q, 2.0, 4.0));
    }

    fn cantor_fixture() -> DiscreteMeasure<f64> {
        crate::measure::cantor_measure(8).unwrap()
    }

    #[test]
    fn cantor_shrink_returns_doubling() {
        let mu = Arc::new(cantor_fixture());
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let x = mu.point(5).to_vec();
        let q = find_doubling_cube(&mu, &x, Direction::Shrink, &root, 30).unwrap();
        assert!(is_doubling(&mu, &q, 2.0, 4.0));
    }

    #[test]
    fn cz_zero_function_is_empty() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 32).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![0.0; 32]).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let res = cz_decompose(&g, 1.0, &root, 20).unwrap();
        assert!(res.cubes.is_empty());
        assert!(res.exceptional_ok);
    }

    #[test]
    fn cz_requires_threshold_above_root_average() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 32).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![2.0; 32]).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        assert!(matches!(
            cz_decompose(&g, 1.0, &root, 20),
            Err(Error::ThresholdTooSmall(_))
        ));
    }

    #[test]
    fn cz_single_spike() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 256).unwrap());
        let mut vals = vec![0.0f64; 256];
        vals[100] = 10.0;
        let g = SampledFunction::new(Arc::clone(&mu), vals).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let res = cz_decompose(&g, 1.0, &root, 30).unwrap();
        assert_eq!(res.cubes.len(), 1);
        let c = &res.cubes[0];
        assert!(c.average > 1.0 && c.average <= 16.0 * 1.0 + 1e-12);
        assert!(c.cube.contains_point(mu.point(100)));
        assert!(check_cz_invariants(&res, &g, &root).is_empty());
    }

    #[test]
    fn cz_two_spikes_disjoint_family() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 256).unwrap());
        let mut vals = vec![0.0f64; 256];
        vals[40] = 8.0;
        vals[200] = 9.0;
        let g = SampledFunction::new(Arc::clone(&mu), vals).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let res = cz_decompose(&g, 0.5, &root, 30).unwrap();
        assert_eq!(res.cubes.len(), 2);
        assert_eq!(res.family_count, 1);
        assert!(check_cz_invariants(&res, &g, &root).is_empty());
    }

    #[test]
    fn good_lambda_zero_function() {
        let mu = Arc::new(lebesgue_on_box(&[0.0], &[1.0], 64).unwrap());
        let g = SampledFunction::new(Arc::clone(&mu), vec![0.0; 64]).unwrap();
        let root = RootCube::new(vec![0.0], 1.0).unwrap();
        let rep = verify_good_lambda_of_field(&g, 1.0f64, 1.0 / 128.0, &root, 30).unwrap();
        assert_eq!(rep.lhs, 0.0);
        assert!(rep.passes);
    }
}

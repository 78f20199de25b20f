//! Reflection-averaging extension from the half-space `{x_n >= 0}` to the
//! whole space, the moment-normalized kernel it averages against, central
//! finite differences, and boundary traces.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lorentz::SampledFunction;
use crate::measure::DiscreteMeasure;
use crate::operators::GridFunction;
use crate::quad::gauss_legendre;
use crate::scalar::{cast, Scalar};

/// Kernel `psi(s) = a e^{-(s-1)} + b e^{-2(s-1)}` on `[1, infinity)` with
/// `int psi = 1` and `int s psi = 0`, plus a quadrature rule on
/// `[1, s_max]` used to evaluate integrals against it.
#[derive(Debug, Clone)]
pub struct PsiKernel<T: Scalar> {
    pub a: T,
    pub b: T,
    pub s_max: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> PsiKernel<T> {
    pub fn eval(&self, s: T) -> T {
        let u = s - T::one();
        self.a * (-u).exp() + self.b * (cast::<T>(-2.0) * u).exp()
    }

    /// Quadrature of `int_1^{s_max} h(s) psi(s) ds`.
    pub fn integrate(&self, h: impl Fn(T) -> T) -> T {
        let mut acc = T::zero();
        for (s, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc = acc + *w * h(*s) * self.eval(*s);
        }
        acc
    }

    /// Quadrature of `int_1^{s_max} h(s) |psi(s)| ds`.
    pub fn integrate_abs(&self, h: impl Fn(T) -> T) -> T {
        let mut acc = T::zero();
        for (s, w) in self.nodes.iter().zip(self.weights.iter()) {
            acc = acc + *w * h(*s) * self.eval(*s).abs();
        }
        acc
    }

    pub fn moment0(&self) -> T {
        self.integrate(|_| T::one())
    }

    pub fn moment1(&self) -> T {
        self.integrate(|s| s)
    }

    pub fn nodes(&self) -> (&[T], &[T]) {
        (&self.nodes, &self.weights)
    }
}

/// Solves the 2x2 moment system in closed form: with
/// `int_1^inf e^{-k(s-1)} ds = 1/k` and `int_1^inf s e^{-k(s-1)} ds = 1/k + 1/k^2`,
/// the coefficients come out as `a = -3`, `b = 8`.
pub fn build_psi<T: Scalar>() -> PsiKernel<T> {
    build_psi_with(cast(30.0), 200)
}

pub fn build_psi_with<T: Scalar>(s_max: T, quad_nodes: usize) -> PsiKernel<T> {
    // [m0; m1] columns for k = 1, 2: solve a*col1 + b*col2 = (1, 0)
    let c11 = 1.0; // 1/k, k=1
    let c12 = 0.5; // 1/k, k=2
    let c21 = 2.0; // 1/k + 1/k^2, k=1
    let c22 = 0.75; // 1/k + 1/k^2, k=2
    let det = c11 * c22 - c12 * c21;
    let a = c22 / det;
    let b = -c21 / det;
    let (xs, ws) = gauss_legendre(quad_nodes);
    let one = T::one();
    let half = cast::<T>(0.5);
    let mid = (s_max + one) * half;
    let len = (s_max - one) * half;
    let nodes: Vec<T> = xs.iter().map(|&x| mid + len * cast(x)).collect();
    let weights: Vec<T> = ws.iter().map(|&w| len * cast(w)).collect();
    PsiKernel { a: cast(a), b: cast(b), s_max, nodes, weights }
}

/// Extension output: the doubled-box grid plus a count of quadrature
/// contributions that fell back on the zero-extension of `f` beyond its box
/// (nonzero counts deserve a warning upstream when `f` is not compactly
/// supported).
#[derive(Debug, Clone)]
pub struct Extension<T: Scalar> {
    pub grid: GridFunction<T>,
    pub zero_extension_hits: usize,
}

/// Extends `f`, defined on a box with last axis `[0, L]`, to the doubled box
/// with last axis `[-L, L]`: identity on `{x_n >= 0}`, and the averaged
/// reflection `int f(x', (1-2s) x_n) psi(s) ds` below, with linear
/// interpolation of `f` in the reflected coordinate.
pub fn extend_half_space<T: Scalar>(
    f: &GridFunction<T>,
    psi: &PsiKernel<T>,
) -> Result<Extension<T>> {
    let n = f.dim();
    let last = n - 1;
    let tol = f.spacing()[last] * cast(1e-9);
    if f.origin()[last].abs() > tol {
        return Err(Error::NoBoundaryData(format!(
            "grid's last axis starts at {} instead of 0",
            f.origin()[last]
        )));
    }
    let m = f.shape()[last];
    if m < 1 {
        return Err(Error::EmptyGrid);
    }
    let h = f.spacing()[last];
    let depth = h * cast(m as f64);

    let mut origin = f.origin().to_vec();
    origin[last] = -depth;
    let mut shape = f.shape().to_vec();
    shape[last] = 2 * m;
    let count: usize = shape.iter().product();

    let probe = GridFunction::new(
        origin.clone(),
        f.spacing().to_vec(),
        shape.clone(),
        vec![T::zero(); count],
    )?;

    let rows: Vec<(T, usize)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let idx = probe.multi_index(i);
            if idx[last] >= m {
                // upper half: bit-exact copy of f
                let mut src = idx.clone();
                src[last] -= m;
                (f.value(f.flat_index(&src)), 0usize)
            } else {
                let x_n = probe.center(i)[last];
                let mut src = idx.clone();
                let (nodes, weights) = psi.nodes();
                let mut acc = T::zero();
                let mut hits = 0usize;
                for (s, w) in nodes.iter().zip(weights.iter()) {
                    let arg = (cast::<T>(2.0) * *s - T::one()) * (-x_n);
                    let (val, beyond) = sample_last_axis(f, &mut src, arg, h, m, depth);
                    if beyond {
                        hits += 1;
                    }
                    acc = acc + *w * psi.eval(*s) * val;
                }
                (acc, hits)
            }
        })
        .collect();
    let mut values = Vec::with_capacity(count);
    let mut zero_extension_hits = 0usize;
    for (v, hits) in rows {
        values.push(v);
        zero_extension_hits += hits;
    }
    let grid = GridFunction::new(origin, f.spacing().to_vec(), shape, values)?;
    Ok(Extension { grid, zero_extension_hits })
}

/// Linear interpolation of `f` along the last axis at offset `arg >= 0`,
/// the lateral indices fixed by `idx`; beyond the box the zero-extension
/// applies and the flag is set when the discarded tail is nonzero.
fn sample_last_axis<T: Scalar>(
    f: &GridFunction<T>,
    idx: &mut [usize],
    arg: T,
    h: T,
    m: usize,
    depth: T,
) -> (T, bool) {
    let last = idx.len() - 1;
    let half = cast::<T>(0.5);
    let rel = arg / h - half; // fractional cell-center coordinate
    if rel <= T::zero() {
        idx[last] = 0;
        return (f.value(f.flat_index(idx)), false);
    }
    let j = rel.floor().to_usize().unwrap_or(usize::MAX);
    if j >= m {
        // entirely beyond the last center + one cell: zero-extension
        let beyond = arg > depth;
        idx[last] = m - 1;
        let edge = f.value(f.flat_index(idx));
        return (T::zero(), beyond && edge != T::zero());
    }
    let w = rel - rel.floor();
    idx[last] = j;
    let v0 = f.value(f.flat_index(idx));
    if j + 1 < m {
        idx[last] = j + 1;
        let v1 = f.value(f.flat_index(idx));
        ((T::one() - w) * v0 + w * v1, false)
    } else {
        // interpolate towards the zero-extension phantom cell
        let val = (T::one() - w) * v0;
        (val, v0 != T::zero())
    }
}

/// Component-wise finite-difference gradient: central differences in the
/// interior, one-sided at the faces; exact on affine functions.
pub fn gradient<T: Scalar>(f: &GridFunction<T>) -> Result<Vec<GridFunction<T>>> {
    let n = f.dim();
    for a in 0..n {
        if f.shape()[a] < 2 {
            return Err(Error::AxisTooShort);
        }
    }
    let mut out = Vec::with_capacity(n);
    for axis in 0..n {
        let h = f.spacing()[axis];
        let two_h = h * cast(2.0);
        let values: Vec<T> = (0..f.len())
            .map(|i| {
                let idx = f.multi_index(i);
                let k = idx[axis];
                let s = f.shape()[axis];
                let mut lo = idx.clone();
                let mut hi = idx.clone();
                if k == 0 {
                    hi[axis] = 1;
                    (f.value(f.flat_index(&hi)) - f.value(i)) / h
                } else if k == s - 1 {
                    lo[axis] = s - 2;
                    (f.value(i) - f.value(f.flat_index(&lo))) / h
                } else {
                    lo[axis] = k - 1;
                    hi[axis] = k + 1;
                    (f.value(f.flat_index(&hi)) - f.value(f.flat_index(&lo))) / two_h
                }
            })
            .collect();
        out.push(GridFunction::new(
            f.origin().to_vec(),
            f.spacing().to_vec(),
            f.shape().to_vec(),
            values,
        )?);
    }
    Ok(out)
}

/// Pointwise Euclidean magnitude of a gradient, as a grid function.
pub fn gradient_magnitude<T: Scalar>(parts: &[GridFunction<T>]) -> Result<GridFunction<T>> {
    let first = parts.first().ok_or(Error::EmptyGrid)?;
    let mut values = vec![T::zero(); first.len()];
    for p in parts {
        for (acc, v) in values.iter_mut().zip(p.values()) {
            *acc = *acc + *v * *v;
        }
    }
    for v in values.iter_mut() {
        *v = v.sqrt();
    }
    GridFunction::new(
        first.origin().to_vec(),
        first.spacing().to_vec(),
        first.shape().to_vec(),
        values,
    )
}

/// Values of `f` interpolated at `(x', 0)` on the atoms of a hyperplane
/// measure. The grid must span `x_n = 0`.
pub fn boundary_trace<T: Scalar>(
    f: &GridFunction<T>,
    plane: &Arc<DiscreteMeasure<T>>,
) -> Result<SampledFunction<T>> {
    let n = f.dim();
    if plane.dim() != n {
        return Err(Error::DimensionMismatch("plane vs grid".into()));
    }
    let last = n - 1;
    let upper = f.upper_corner();
    if !(f.origin()[last] <= T::zero() && upper[last] >= T::zero()) {
        return Err(Error::TracePlaneOutsideDomain);
    }
    let values: Vec<T> = (0..plane.len())
        .map(|i| {
            let mut x = plane.point(i).to_vec();
            x[last] = T::zero();
            f.interpolate(&x)
        })
        .collect();
    SampledFunction::new(Arc::clone(plane), values)
}

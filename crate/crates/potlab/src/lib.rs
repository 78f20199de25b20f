//! Numerical potential-theory laboratory over discrete measures.
//!
//! The crate represents Radon measures as weighted point clouds and
//! functions against Lebesgue measure as uniform grids, then provides the
//! operators and norms built on them: Riesz potentials, fractional and sharp
//! maximal functions, decreasing rearrangements with Lorentz and
//! Morrey-Lorentz norms, a stopping-time cube decomposition for measures
//! with polynomial growth, and a reflection-averaging extension from the
//! half-space. The `verify` module turns the inequalities relating these
//! objects into quantitative ratio sweeps with machine-readable reports.
//!
//! Everything is generic over the scalar type through [`Scalar`]
//! (`f32`/`f64`); the `*64` aliases below fix the common instantiation.

pub mod czdecomp;
pub mod error;
pub mod extension;
pub mod io;
pub mod lorentz;
pub mod measure;
pub mod operators;
pub mod quad;
pub mod scalar;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use czdecomp::{
    cz_decompose, find_doubling_cube, is_doubling, verify_good_lambda, CzResult, Direction,
    DyadicCube, RootCube,
};
pub use extension::{boundary_trace, build_psi, extend_half_space, gradient, PsiKernel};
pub use lorentz::{
    decreasing_rearrangement, distribution_function, hardy_littlewood_pairing,
    lorentz_norm_natural, lorentz_quasinorm, maximal_rearrangement, SampledFunction, SecondIndex,
    StepFunction,
};
pub use measure::{
    build_measure, cantor_measure, growth_constant, growth_exponent, lebesgue_on_box,
    riesz_energy, surface_measure, Centers, DiagonalRule, DiscreteMeasure, GrowthReport,
    RadiiGrid, RieszEnergy, SurfaceKind,
};
pub use operators::{
    fractional_maximal, riesz_potential, riesz_potential_field, sharp_maximal_centered,
    sharp_maximal_uncentered, GridFunction,
};
pub use spaces::{morrey_lorentz_norm, morrey_norm, ExponentTuple, NormReport};

/// The default `f64` instantiations.
pub type Measure64 = measure::DiscreteMeasure<f64>;
pub type Grid64 = operators::GridFunction<f64>;
pub type Sampled64 = lorentz::SampledFunction<f64>;
pub type Step64 = lorentz::StepFunction<f64>;
pub type Radii64 = measure::RadiiGrid<f64>;
pub type Exponents64 = spaces::ExponentTuple<f64>;

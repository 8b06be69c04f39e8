//! Exact-arithmetic engine for the affine vertex superalgebra of `osp(1|2n)`
//! at positive integer level and its Heisenberg commutant (parafermion)
//! algebra.
//!
//! The crate is layered bottom-up:
//!
//! * [`exactla`]: sparse linear algebra over arbitrary-precision rationals.
//! * [`superalgebra`]: `osp(1|2n)` and `sl2` from an explicit supermatrix
//!   realization, with root data and Chevalley generators.
//! * [`vacuum`]: the truncated vacuum module `V(k,0)`, PBW straightening,
//!   composite vertex-operator modes and the contravariant form.
//! * [`coset`]: the commutant `N(g,k)`, its distinguished generators,
//!   generation closures, the maximal ideals and the structure checks.
//! * [`run`]: batch configuration and machine-readable reports.

pub mod coset;
pub mod error;
pub mod exactla;
pub mod run;
pub mod superalgebra;
pub mod vacuum;

pub use error::{Error, Result};

/// Exact rational scalar used everywhere in the engine.
pub type Q = num_rational::BigRational;

/// Engine version string echoed into reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub(crate) fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

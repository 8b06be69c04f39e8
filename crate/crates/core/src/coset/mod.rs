//! The Heisenberg commutant `N(g,k)` of `V(k,0)`, its generators, the
//! maximal ideals `J` and `Ĩ = J ∩ N`, the quotient `K(g,k)` and the
//! structure checks.

mod analysis;
mod blocks;
mod closure;
mod generators;
mod verify;

pub use analysis::{CosetAnalysis, IdealJ, IdealMethod, IdealModel};
pub use blocks::{charge_block, commutant_basis, grade_of, heisenberg_annihilated};
pub use closure::{closure, Action, BlockTargets, ClosureResult, DimEntry, DimStatus, GradedDims};
pub use generators::{charge_zero_seeds, parafermion_generators, Generator, GeneratorKind, GeneratorSet};
pub use verify::{closure_verdict, verify, CheckId, CheckReport, Verdict, WeightRow};

#[cfg(test)]
mod tests;

//! The truncated vacuum module `V(k,0)`: PBW basis, exact mode action,
//! composite vertex-operator modes and the contravariant form.

mod composite;
mod gram;
mod monomial;
mod space;
mod state;
mod vectors;

pub use monomial::{Mode, PbwMonomial};
pub use space::{init_space, Block, VacuumSpace};
pub use state::{State, StateJson};

use crate::Q;

/// Exact `p/q` (or `p`) rendering of a rational.
pub fn rational_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

//! Builders for the standard example complexes.

mod fans;
pub mod hypersurface;
pub mod matroid;
pub mod tropical;

use serde::{Deserialize, Serialize};

pub use fans::{bergman_fan, cube_complex, maximal_flag_chains};
pub use hypersurface::tropical_hypersurface;
pub use matroid::{complete_graph, graphic_matroid, uniform_matroid, Flat, Matroid};
pub use tropical::{parse_tropical_polynomial, parse_with_variables, TropicalPolynomial};

/// Tropical arithmetic convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Max,
    Min,
}

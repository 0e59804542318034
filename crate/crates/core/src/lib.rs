//! Cellular sheaf cohomology and cosheaf homology on polyhedral complexes,
//! with exact rational arithmetic.
//!
//! ```
//! use sheafhom::chains::usual_cochain_complex;
//! use sheafhom::generators::cube_complex;
//! use sheafhom::polycomplex::orientations;
//! use sheafhom::sheaves::wsheaf;
//!
//! let cube = cube_complex(3);
//! let o = orientations(&cube).unwrap();
//! let cc = usual_cochain_complex(&cube, &wsheaf(&cube, 1), &o).unwrap();
//! assert_eq!(cc.betti_numbers().unwrap(), vec![0, 3, 0, 0]);
//! ```

pub mod chains;
pub mod error;
pub mod exactlin;
pub mod generators;
pub mod io;
pub mod polycomplex;
pub mod sheaves;

pub use chains::{ChainComplex, ChainDirection};
pub use error::{Error, Result};
pub use exactlin::{Rat, RatMatrix};
pub use polycomplex::{OrientationMap, PolyhedralComplex};
pub use sheaves::{CellSheaf, Direction};

//! Homogeneous vector bundles on abelian varieties, modelled by modules.
//!
//! A homogeneous bundle is stored as a finite sum of blocks, one per Galois
//! orbit of characters, each carrying a finite-dimensional unipotent module
//! (a tuple of commuting nilpotent or unipotent matrices) or, outside the
//! regimes where such data is available, just its length.

pub mod bundlecat;
pub mod error;
pub mod exactfield;
pub mod galois;
pub mod isogeny;
pub mod nilmod;

pub use error::{Error, Result};
pub use exactfield::{Elem, FieldSpec, Matrix, Rational};
pub use nilmod::{Flavor, NilModule};

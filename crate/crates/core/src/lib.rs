//! Exact algebra for resolving torsion-free graded modules into locally free
//! sheaves on towers of blowups.

pub mod error;
pub mod fiber;
pub mod groebner;
pub mod blowup;
pub mod coord;
pub mod corpus;
pub mod ideal;
pub mod hilbert;
pub mod homological;
pub mod module;
pub mod resolution;
pub mod tower;
pub mod polarization;
pub mod poly;

pub use error::{Error, Result};
pub use coord::{CoordRing, Matrix};
pub use hilbert::{hilbert, HilbertData, QPoly};
pub use ideal::Ideal;
pub use module::ModulePresentation;
pub use polarization::{distinguished_polarization, PolarizationSpec};
pub use poly::{Field, Monomial, PolyRing, Polynomial, TermOrder};
pub use resolution::{free_resolution, FreeResolutionData};
pub use tower::{run_tower, ResolutionTower};

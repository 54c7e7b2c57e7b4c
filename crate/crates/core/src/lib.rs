//! Length spectra of hyperbolic surfaces.
//!
//! The crate builds one-holed tori and closed genus-2 surfaces from
//! Fenchel–Nielsen data, enumerates their primitive closed geodesics into
//! multiplicity-counted length spectra, sums McShane gap terms over simple
//! geodesics, evaluates the counting bounds for isospectral families, and
//! runs the admissible-question interrogation of an unknown spectrum.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod hypgeom;
pub mod interrogate;
pub mod io;
pub mod mcshane;
pub mod spectrum;
pub mod surface;
pub mod word;

pub use error::{Error, Result};
pub use hypgeom::{HexagonAlternatingSides, MobiusTransform};
pub use spectrum::{EnumerationBudget, LengthSpectrum, SpectrumEntry};
pub use surface::{FenchelNielsenSurface, FuchsianGroup, Presentation, Topology};
pub use word::Word;

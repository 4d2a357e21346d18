//! Structure classes, ensembles and structure-aware spectra.

mod class;
mod dims;
mod ensemble;
mod krylov;
mod skew;
mod spectrum;

pub use class::{CollisionClass, DetSign, StructureClass, StructureKind};
pub use dims::{
    ambient_dimension, class_codimension, codimension_table, compatible_collisions, expected_codimension, Codimension,
    TableRow,
};
pub use ensemble::{sample, validate, Validation};
pub use krylov::verify_krylov_span;
pub use skew::{skew_block_form, SkewBlockForm};
pub use spectrum::{canonical_spectrum, forced_unit_eigenvalues, CanonicalSpectrum};

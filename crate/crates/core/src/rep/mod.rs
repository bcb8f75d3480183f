//! Module decomposition: spinning, the MeatAxe, homomorphism spaces,
//! splitting fields and radicals.

mod canon;
mod hom;
mod lattice;
mod meataxe;
mod spin;
mod split;

pub use canon::simple_iso;
pub use hom::{endomorphism_dim, intertwiners, is_intertwiner, module_iso};
pub use lattice::{lattice_factor_dims, submodule_lattice, LATTICE_VECTOR_LIMIT};
pub use meataxe::{
    is_irreducible, meataxe_chop, CompositionFactor, CompositionSeries, IrreducibilityWitness, LINE_LIMIT,
};
pub use spin::spin;
pub use split::{
    extend_algebra, extend_hopf, extend_module, radical, simple_dimensions, splitting_field, SimpleDimensions,
    SimpleEntry, Splitting,
};

//! Instance factories: groups, group algebras and their duals, matched
//! pairs and bicrossproducts, smash products, and induced modules.

mod algebras;
mod bicross;
mod group;
mod induce;
mod smash;

pub use algebras::{dual_group_algebra, dual_hopf, group_algebra};
pub use bicross::{bicrossproduct, Bicrossproduct, ConventionRecord, MatchedPair, BICROSS_CONVENTIONS};
pub use group::{
    alternating_group, builtin_group, commutator_subgroup, cyclic_group, derived_series, dihedral_group,
    is_solvable, quaternion_group, symmetric_group, GroupTable, GroupTableFile, Subgroup, BUILTIN_NAMES,
};
pub use induce::{conjugate_module, induced_module, restrict_module, subgroup_space};
pub use smash::{smash_algebra, smash_hopf, translation_action, ActionData};

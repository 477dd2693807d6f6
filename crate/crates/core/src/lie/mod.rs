//! Lie-theoretic core: root data of SU(2) and SU(3), Weyl group actions,
//! alcove folding, characters and the group exponential.

mod cartan;
mod character;
mod group;
mod model;
mod weyl;

pub use cartan::{CartanVector, MAX_RANK};
pub use character::{alternating_sum, character, weyl_denominator};
pub use group::{exp_cartan, orbit_coordinate, GroupElement, SmallUnitary};
pub use model::{build_su_model, DominantWeight, GroupModel, WeylElement};
pub use weyl::{extended_weyl_ball, fold_to_alcove, for_each_lattice_point, ExtendedWeylOp};

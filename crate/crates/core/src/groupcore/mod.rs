//! Permutation-group kernel: element enumeration and the subgroup operators
//! every other module builds on.

mod group;
mod ops;
mod perm;
mod quotient;

pub use group::{closure, Limits, PermGroup, Subgroup};
pub use ops::{
    center, centralizer, centralizer_in, conjugate_subgroup, frattini, is_normal_in, is_p_group,
    is_p_power, is_prime, normalizer, normalizer_in, p_core, p_core_in, p_part, p_residual, sylow,
    sylow_in, transporter, transporter_witness,
};
pub use perm::Permutation;
pub use quotient::{quotient_group, Quotient};

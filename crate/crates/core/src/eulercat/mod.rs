//! Class-level ζ-matrices, weightings and Euler characteristics, each
//! computed along several independent routes.

mod closed;
mod kind;
mod local;
mod report;
mod zeta;

pub use closed::{
    chi_closed, chi_f_abelian_sylow, chi_f_normal_sylow, chi_f_via_centralizers,
    chi_full_category, chi_orbit_cyclic, chi_s_star, chi_sylow_restricted_f, class_mu,
    NormalSylowF,
};
pub use kind::{CategoryKind, Kind};
pub use local::local_weighting;
pub use report::{build_report, chi_report, routes, ChiReport, KindReport, Route};
pub use zeta::{
    chi, morphism_count, solve_coweighting, solve_weighting, weights, zeta_matrix, Side,
    WeightVector, ZetaMatrix,
};

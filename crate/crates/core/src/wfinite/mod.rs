//! Nilcharacters, graded nilradicals, Skryabin data and Whittaker vectors.

mod appendix;
mod chars;
mod gelfand;
mod nilchar;
mod skryabin;
mod whittaker;

pub use appendix::{appendix_pairing_check, multi_indices, MultiIndex};
pub use chars::{even_simple_roots, hat_eta, odd_splittings, regularity_check, zeta_from_chi, OddSplitting};
pub use gelfand::{GelfandGraev, PbwMonomial};
pub use nilchar::NilCharacter;
pub use skryabin::{graded_nilradical, nilchar_from_e, solve_dual_elements, verify_skryabin_conditions, GradedNilradical};
pub use whittaker::{generating_subset, whittaker_vectors, WhittakerSpace};

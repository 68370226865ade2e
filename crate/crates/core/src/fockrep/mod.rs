//! The Fock space `𝔉_c`, its twists `𝔉_c^η`, the lift to `𝔤` and the verifiers.

mod fock;
mod module;
mod tensor;
mod verify;

pub use fock::{build_fock, clifford_module_dim, FockBasisIndex, FockModule, ModuleTermJson};
pub use module::{ModVec, SuperModule};
pub use tensor::{cyclicity_spot_check, tensor_with_findim, FinDimModule, TensorModule};
pub use verify::{
    bracket_defect, verify_c_relations, verify_highest_weight, verify_lift_identities, verify_relations,
    verify_whittaker_covariance,
};

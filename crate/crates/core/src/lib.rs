pub mod fibonacci;
pub mod invariants;
pub mod modular;
pub mod quaternion;
pub mod sequences;
pub mod verifier;

pub mod cli;
pub mod cpn;
pub mod differential;
pub mod families;
pub mod sphere;
pub mod surd;
pub mod verifier;

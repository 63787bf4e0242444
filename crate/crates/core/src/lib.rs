//! Bound-state spectra of separable non-central potentials by the
//! Nikiforov–Uvarov method, with a finite-difference oracle for
//! independent verification.

pub mod cli;
pub mod nu;
pub mod oracle;
pub mod poly;
pub mod specfun;
pub mod systems;

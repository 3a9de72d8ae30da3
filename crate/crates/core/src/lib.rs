pub mod fullgroup;
pub mod monomial;
pub mod taxonomy;
pub mod verifier;
pub mod cli;

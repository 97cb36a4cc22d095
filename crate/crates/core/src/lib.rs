pub mod exact;
pub mod hmf;
pub mod interval;
pub mod quadfield;
pub mod verifier;

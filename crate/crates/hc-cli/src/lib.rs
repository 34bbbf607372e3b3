//! Support library for the `hc` binary: JSON/CSV wire formats and the
//! verification sweeps, exposed so integration tests can drive them
//! directly.

pub mod verify;
pub mod wire;

//! Support library for the `aqrm` binary: configuration resolution,
//! versioned output documents, and the CSV/JSON/SVG emitters.
//!
//! Everything here is pure string/struct manipulation; the physics lives in
//! the [`aqrm`] crate. The binary stays a thin argument-parsing and dispatch
//! layer so the serialization contracts are testable in isolation.

pub mod config;
pub mod emit;
pub mod schema;

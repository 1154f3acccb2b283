//! s-overlap cycles over k-permutations of `[n]` and over permutations of a
//! multiset.
//!
//! An s-overlap cycle lists every object of an instance once, cyclically, so
//! that the last `s` symbols of each object are the first `s` symbols of the
//! next. The crate builds such cycles as Euler tours of a transition graph
//! ([`euler`]), checks them independently ([`verify`]), and produces
//! replayable connectivity certificates for the transition graph
//! ([`connect`]).

pub mod cli;
pub mod connect;
pub mod count;
pub mod error;
pub mod euler;
pub mod graph;
pub mod instance;
pub mod verify;

pub use error::{Error, Result};
pub use instance::{
    enumerate_objects, feasibility, validate_params, FeasibilityVerdict, InstanceParams,
    Justification, Mode, RawParams, Status, Symbol, Vertex, Word, DEFAULT_EDGE_LIMIT,
};

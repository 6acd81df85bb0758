//! Spatial queues with exclusion sets and interference-limited service.
//!
//! Customers arrive at random locations of a torus or a ring of servers, each
//! carrying an exclusion set and an amount of work. Customers whose sets meet
//! are served in arrival order; the others are served simultaneously at rates
//! that depend on the positions of everybody in service, such as the Shannon
//! rate under power-law interference.
//!
//! - [`geometry`]: spaces, wrapped metrics, exclusion sets, cover chains.
//! - [`arrivals`]: marked arrival streams and rate models.
//! - [`engine`]: the event-driven dynamics and traces.
//! - [`blocks`]: zigzag events, block sampling and block service times.
//! - [`stability`]: the threshold estimator, closed forms, the Lindley chain
//!   and drift diagnostics.
//! - [`cli`]: TOML scenario files and the `phwg` command.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrivals;
pub mod blocks;
pub mod cli;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod numerics;
pub mod stability;

pub use error::{Error, Result};

//! Exact arithmetic for Gauss and Jacobi sums, Stickelberger elements,
//! character eigenspaces, truncated Coleman theory and Fitting ideals over
//! truncated Iwasawa algebras.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod coleman;
pub mod eigenspace;
pub mod error;
pub mod fitting;
pub mod gauss;
pub mod group_ring;
pub mod lattice;
pub mod ring;
pub mod series;
pub mod stickelberger;

pub use error::{Error, Result};

//! Equivariant Lefschetz and Nielsen invariants of equivariant simplicial
//! self-maps of finite G-simplicial complexes, computed in exact arithmetic.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod catalog;
pub mod complex;
pub mod cover;
pub mod error;
pub mod fundamental;
pub mod group;
pub mod jiang;
pub mod lefschetz;
pub mod nielsen;
pub mod oracle;
pub mod perm;
pub mod ring;
pub mod todd_coxeter;

pub use error::{Error, Result};

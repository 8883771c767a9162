//! Orthogonal pairs of Latin squares whose 4-nets carry two F2 relations.
//!
//! Domain objects ([`net`]), the CNF encoding ([`encode`]), an all-solutions
//! CDCL engine ([`solve`]), a DRAT checker with trusted additions ([`proof`])
//! and independent post-hoc analysis ([`analyze`]). The crate is `no_std` and
//! only needs `alloc`; file formats and the command line live in `netrel`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analyze;
pub mod encode;
pub mod lit;
pub mod net;
pub mod proof;
pub mod solve;

pub use lit::{Lit, Var};

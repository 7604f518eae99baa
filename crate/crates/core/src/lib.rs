//! Exact computation of Galois cohomology `H^1(Gamma, G)` for real forms of
//! reductive groups, via strong real forms and the twisted Weyl action on
//! torus fibers.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the command
//! line front end live in the `galcoh` crate.

#![no_std]

extern crate alloc;

pub mod cohomology;
pub mod exactlat;
pub mod isogeny;
pub mod oracle;
pub mod rootdata;
pub mod tits;
pub mod weyl;

#![no_std]
#![allow(clippy::needless_range_loop, clippy::len_without_is_empty)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod ahss;
pub mod emspaces;
pub mod f2;
pub mod fusionalg;
pub mod groupcoh;
pub mod qz;
pub mod steenrod;
pub mod twogroups;
pub mod zmat;

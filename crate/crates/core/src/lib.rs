//! Four-coloring machinery for planar maps presented as pairs of binary trees.
//!
//! Modules, roughly in dependency order:
//! - [`tree`]: addresses, binary trees, rotations, shadow intervals, the dihedral action.
//! - [`thompson`]: tree pairs as elements of Thompson's group F.
//! - [`coloring`]: color vectors, edge colorings, sign assignments, patterns.
//! - [`paths`]: signed rotations, sign structures of words, word moves.
//! - [`assoc`]: color graphs, zero sets, face separation, long paths.
//! - [`maps`]: dual triangulations, primality, chromatic counts, V-triples.
//! - [`enumeration`]: recurrences, closed forms and extremal searches.
//! - [`verify`]: named invariant suites used by the command-line tool.

pub mod assoc;
pub mod coloring;
pub mod enumeration;
pub mod error;
pub mod maps;
pub mod paths;
pub mod thompson;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};

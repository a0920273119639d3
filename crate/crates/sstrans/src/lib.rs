//! A library and command-line workbench for the calculus of strongly
//! synchronizing transducers: products, minimization, inverses,
//! synchronizing levels, the signature homomorphisms, membership tests for
//! the groups `O_n`, `O_{n,r}`, `L_n`, `K_n`, `D_n`, the reverse-arrows
//! automorphism, annotated actions on bi-infinite sequences, the Π-action
//! on rotation classes of prime words, and marker-automorphism
//! constructions.

pub mod dynamics;
pub mod error;
pub mod word;
pub mod machine;
pub mod markers;
pub mod sync;
pub mod minimize;
pub mod nd;
pub mod format;
pub mod images;
pub mod lift;
pub mod pool;
pub mod reverse;
pub mod signatures;
pub mod suite;

pub use error::{Error, Result};

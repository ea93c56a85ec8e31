//! Augmented surface codes and their union-find decoders.
//!
//! An augmented surface code is the homological product of a toric code with
//! a small CSS code (the "fixed" code), for example `[[4,2,2]]`. The product of
//! an `m x m` torus with `[[4,2,2]]` is a `[[10m², 4, 2m]]` code whose
//! stabilizers have weight at most 6.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2`]: bit-packed vectors and matrices over GF(2);
//! * [`chain_complex`]: chain complexes, homology and the tensor product;
//! * [`fixed_code`]: the small CSS code with its lookup-table decoders;
//! * [`toric`]: the torus cellulation;
//! * [`augmented`]: the product code, syndromes and logical operators;
//! * [`decoder`]: the union-find decoders;
//! * [`oracles`]: brute-force references used to validate everything above;
//! * [`sim`]: Monte Carlo sweeps and result files.

pub mod augmented;
pub mod chain_complex;
pub mod decoder;
pub mod fixed_code;
pub mod gf2;
pub mod oracles;
pub mod sim;
pub mod toric;
pub mod verify;

pub use augmented::{AugmentedCode, AugmentedError, ErrorStdForm, SyndromeStdForm};
pub use chain_complex::{tensor_product, ChainComplex};
pub use decoder::{Decoder, DecoderKind, DecodeError};
pub use fixed_code::{CodeError, CssCode};
pub use gf2::{BitMatrix, BitVec};
pub use toric::{Cellulation, Direction};

//! The Sidon-space public-key cryptosystem and a desk-scale laboratory for
//! the algebraic attacks against it.
//!
//! * [`ff`]: prime fields, extension towers, roots and irreducibility.
//! * [`linalg`]: exact dense linear algebra over any finite field.
//! * [`sidon`]: Sidon-space constructions, brute-force verification and
//!   the product-factoring algorithm.
//! * [`crypto`]: key generation, the message codec, encryption, decryption
//!   and the randomized variant.
//! * [`attacks`]: kernel, minor, Kronecker, structured and bilinear attack
//!   experiments verified against the private key.

pub mod attacks;
pub mod crypto;
mod error;
pub mod ff;
pub mod linalg;
pub mod projective;
pub mod rng;
pub mod sidon;

pub use error::{Error, Result};
pub use ff::{Field, PrimeField, TowerContext};
pub use linalg::FieldMatrix;
pub use rand_core::{RngCore, SeedableRng};
pub use rng::SplitMix64;

//! Linear recurrent sequences that detect how primes split in a finite
//! Galois extension of the rationals.
//!
//! For a Galois field `L = Q[x]/(f)` the crate discovers the automorphism
//! group, picks a normal element, and solves for one rational recurrence per
//! conjugacy class `[rho]` such that `a_p mod p` is `1` exactly when the
//! Frobenius of `p` lies in `[rho]` (and `0` otherwise) for all good primes.
//! An independent Frobenius oracle built on factorization over `F_p` checks
//! those predictions over prime ranges.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! the parallel verification driver live in the `splitrec` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod error;
pub mod families;
pub mod galois;
pub mod idempotent;
pub mod linalg;
pub mod modp;
pub mod modular;
pub mod number_field;
pub mod poly;
pub mod primes;
pub mod rat;
pub mod recurrence;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
pub use galois::{Automorphism, ConjugacyClass, GaloisGroup};
pub use idempotent::IdempotentTarget;
pub use modp::PolyModP;
pub use number_field::{FieldElement, Irreducibility, NumberField};
pub use poly::PolyQ;
pub use rat::Rat;
pub use recurrence::{BadPrimes, Recurrence};
pub use splitting::FactorPattern;
pub use verify::{Bundle, TargetRecurrence, VerificationReport};

//! Irreducibility certificates for integral group representations.
//!
//! A representation over Q or Q(t) is realized on a free G-stable lattice,
//! reduced modulo primes of the base ring, and tested for irreducibility
//! over the residue fields with the MeatAxe. One irreducible reduction at a
//! prime whose localization is regular proves irreducibility in
//! characteristic zero; the run is recorded as a replayable [`Certificate`].

pub mod algebra;
pub mod certify;
pub mod cohomology;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod meataxe;
pub mod oracle;
pub mod rep;

pub use error::{Error, Result};
pub use exec::Exec;
pub use certify::{certify, verify, Certificate, CertifyConfig};
pub use rep::{Representation, Word};

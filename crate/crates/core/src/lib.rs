//! Exact arithmetic for PBW bases of quantum affine algebras: q-numbers and
//! rational functions, affine root data, generating-series transforms,
//! imaginary root vectors, the Drinfeld–Jimbo pairing and PBW monomials.

pub mod checks;
pub mod imroots;
pub mod pairing;
pub mod pbw;
pub mod qlaurent;
pub mod ring;
pub mod rootsys;
pub mod series;

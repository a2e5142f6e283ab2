//! Topological stabilizer codes under Ising perturbation.
//!
//! The crate builds toric- and color-code Hamiltonians on periodic 2D
//! lattices, rewrites the Ising-perturbed models as transverse-field Ising
//! models on virtual spins (one per X-type stabilizer generator), verifies
//! the rewriting by exact diagonalization at small sizes, and reports the
//! phase-transition ratios `K/J` that follow from known TFIM critical
//! couplings.
//!
//! Module map:
//! - [`pauli_gf2`] — packed binary-symplectic Pauli operators and GF(2)
//!   linear algebra (rank, nullspace, row-space membership).
//! - [`lattice`] — honeycomb / square / triangular / square-octagonal tori,
//!   face and edge 3-colorings, non-contractible loop representatives.
//! - [`codes`] — toric and color stabilizer codes, constraint relations,
//!   topological degeneracy, logical loop operators.
//! - [`hamiltonians`] — perturbed-code and virtual-TFIM term lists.
//! - [`mapping`] — the commutation-driven derivation of the virtual Ising
//!   model, component decomposition and lattice classification.
//! - [`spectra`] — matrix-free matvec, dense and iterative eigensolvers,
//!   sector restriction, and the real-vs-virtual equivalence check.
//! - [`critical`] — TFIM critical-point registry, transition-ratio table,
//!   fidelity-susceptibility and gap scans.

pub mod codes;
pub mod critical;
pub mod hamiltonians;
pub mod lattice;
pub mod mapping;
pub mod pauli_gf2;
pub mod spectra;

/// Schema tag embedded in every JSON export.
pub const SCHEMA: &str = "topoising/v1";

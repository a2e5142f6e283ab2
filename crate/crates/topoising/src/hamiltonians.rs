//! Coefficient-weighted Pauli term lists for the perturbed codes and the
//! mapped virtual-spin TFIMs.
//!
//! Real-spin side: `H = -J (sum of generators) - K (sum of Z_i Z_j bonds)`.
//! Virtual side: `-J Z_p` per virtual spin, `-mK X_p X_q` per virtual bond of
//! multiplicity `m`, plus the scalar offset `-J * (#Z-type generators)` from
//! the Z-stabilized sector, so both sides are directly comparable.

use crate::codes::{QubitPlacement, StabilizerCode};
use crate::mapping::VirtualIsingModel;
use crate::pauli_gf2::{PauliError, PauliString};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HamiltonianError {
    #[error("coupling {name} = {value} must be finite and non-negative")]
    BadCoupling { name: &'static str, value: f64 },
    #[error("couplings J and K cannot both be zero")]
    AllCouplingsZero,
    #[error("bond set is for {bond_qubits} qubits, code has {code_qubits}")]
    BondSetMismatch {
        bond_qubits: usize,
        code_qubits: usize,
    },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Code coupling `J` and Ising coupling `K`, both non-negative and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub j: f64,
    pub k: f64,
}

impl CouplingParams {
    pub fn new(j: f64, k: f64) -> Result<Self, HamiltonianError> {
        for (name, value) in [("J", j), ("K", k)] {
            if !value.is_finite() || value < 0.0 {
                return Err(HamiltonianError::BadCoupling { name, value });
            }
        }
        if j == 0.0 && k == 0.0 {
            return Err(HamiltonianError::AllCouplingsZero);
        }
        Ok(CouplingParams { j, k })
    }
}

/// Where an Ising bond came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondOrigin {
    /// Color code: the bond is a lattice edge.
    LatticeEdge(usize),
    /// Toric code: the two edge-qubits meet at this vertex (spanning a face
    /// corner).
    SharedVertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bond {
    pub sites: (usize, usize),
    pub origin: BondOrigin,
}

/// The Ising perturbation pattern for a code.
#[derive(Debug, Clone)]
pub struct BondSet {
    pub n: usize,
    pub bonds: Vec<Bond>,
}

/// Nearest-neighbor Ising bonds for a code.
///
/// Color code (qubits on vertices): one bond per lattice edge.
///
/// Toric code (qubits on edges): one bond per pair of edges that are
/// consecutive around a face boundary, i.e. nearest-neighbor edge midpoints.
/// On 3-valent lattices this coincides with all pairs of edges at a vertex;
/// on higher-valence lattices it is the triangle-hexagonal interaction
/// pattern, which is what makes each `Z_i Z_j` anticommute with exactly two
/// vertex stars.
pub fn ising_bonds(code: &StabilizerCode) -> BondSet {
    let lat = &code.lattice;
    let mut bonds = Vec::new();
    match code.placement {
        QubitPlacement::OnVertices => {
            for (e, edge) in lat.edges.iter().enumerate() {
                bonds.push(Bond {
                    sites: (edge.u.min(edge.v), edge.u.max(edge.v)),
                    origin: BondOrigin::LatticeEdge(e),
                });
            }
        }
        QubitPlacement::OnEdges => {
            for face in &lat.faces {
                let k = face.edges.len();
                for s in 0..k {
                    let (a, b) = (face.edges[s], face.edges[(s + 1) % k]);
                    bonds.push(Bond {
                        sites: (a.min(b), a.max(b)),
                        origin: BondOrigin::SharedVertex(face.vertices[(s + 1) % k]),
                    });
                }
            }
        }
    }
    BondSet { n: code.n, bonds }
}

/// A Hamiltonian as a list of `(coefficient, Pauli operator)` terms.
///
/// Stored operators carry sign +1 (signs are folded into coefficients) and
/// are unique: adding an operator twice aggregates its coefficient. Term
/// order is first-insertion order, so builds are reproducible.
#[derive(Debug, Clone)]
pub struct HamiltonianTerms {
    pub n: usize,
    terms: Vec<(f64, PauliString)>,
    index: HashMap<PauliString, usize>,
}

impl HamiltonianTerms {
    pub fn new(n: usize) -> Self {
        HamiltonianTerms {
            n,
            terms: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Adds `coeff * op`, folding the operator sign into the coefficient and
    /// aggregating duplicates.
    pub fn add(&mut self, coeff: f64, op: PauliString) -> Result<(), HamiltonianError> {
        if op.num_qubits() != self.n {
            return Err(PauliError::QubitCountMismatch {
                left: op.num_qubits(),
                right: self.n,
            }
            .into());
        }
        let c = coeff * op.sign() as f64;
        let key = op.positive();
        match self.index.get(&key) {
            Some(&i) => self.terms[i].0 += c,
            None => {
                self.index.insert(key.clone(), self.terms.len());
                self.terms.push((c, key));
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// One JSON object per line: `{"coeff", "x_support", "z_support"}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (c, op) in &self.terms {
            let line = serde_json::json!({
                "coeff": c,
                "x_support": op.x_support().support(),
                "z_support": op.z_support().support(),
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// `-J` times every generator plus `-K` times every bond term.
pub fn build_perturbed_hamiltonian(
    code: &StabilizerCode,
    bonds: &BondSet,
    cp: CouplingParams,
) -> Result<HamiltonianTerms, HamiltonianError> {
    if bonds.n != code.n {
        return Err(HamiltonianError::BondSetMismatch {
            bond_qubits: bonds.n,
            code_qubits: code.n,
        });
    }
    let mut h = HamiltonianTerms::new(code.n);
    if cp.j != 0.0 {
        for g in code.x_generators.iter().chain(&code.z_generators) {
            h.add(-cp.j, g.clone())?;
        }
    }
    if cp.k != 0.0 {
        for bond in &bonds.bonds {
            let zz = PauliString::z_on(code.n, &[bond.sites.0, bond.sites.1])?;
            h.add(-cp.k, zz)?;
        }
    }
    Ok(h)
}

/// The TFIM on virtual spins: a `-J Z_p` field per spin, a `-mK X_p X_q`
/// bond per virtual bond, and the scalar offset `-J * (#Z-type generators)`
/// so the spectrum is directly comparable with the real-spin model.
pub fn build_tfim_hamiltonian(
    vm: &VirtualIsingModel,
    cp: CouplingParams,
) -> Result<HamiltonianTerms, HamiltonianError> {
    let n = vm.num_spins();
    let mut h = HamiltonianTerms::new(n);
    if cp.j != 0.0 {
        if vm.z_generator_count > 0 {
            h.add(-cp.j * vm.z_generator_count as f64, PauliString::identity(n))?;
        }
        for p in 0..n {
            h.add(-cp.j, PauliString::z_on(n, &[p])?)?;
        }
    }
    if cp.k != 0.0 {
        for bond in &vm.bonds {
            let xx = PauliString::x_on(n, &[bond.p, bond.q])?;
            h.add(-(bond.multiplicity as f64) * cp.k, xx)?;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_color_code, build_toric_code};
    use crate::lattice::{build_lattice, three_color_faces, LatticeKind};

    fn color_code_3x3() -> StabilizerCode {
        let lat = build_lattice(LatticeKind::Honeycomb, 3, 3).unwrap();
        let fc = three_color_faces(&lat).unwrap();
        build_color_code(&lat, &fc).unwrap()
    }

    #[test]
    fn coupling_validation() {
        assert!(CouplingParams::new(1.0, 0.2).is_ok());
        assert!(matches!(
            CouplingParams::new(-1.0, 0.2),
            Err(HamiltonianError::BadCoupling { name: "J", .. })
        ));
        assert!(matches!(
            CouplingParams::new(1.0, f64::NAN),
            Err(HamiltonianError::BadCoupling { name: "K", .. })
        ));
        assert!(matches!(
            CouplingParams::new(0.0, 0.0),
            Err(HamiltonianError::AllCouplingsZero)
        ));
    }

    #[test]
    fn color_code_bond_per_edge() {
        let code = color_code_3x3();
        let bonds = ising_bonds(&code);
        assert_eq!(bonds.bonds.len(), 27);
        assert!(bonds
            .bonds
            .iter()
            .all(|b| matches!(b.origin, BondOrigin::LatticeEdge(_))));
    }

    #[test]
    fn toric_honeycomb_three_bonds_per_vertex() {
        let lat = build_lattice(LatticeKind::Honeycomb, 2, 3).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);
        assert_eq!(bonds.bonds.len(), 36);
        // on a 3-valent lattice the face-corner pairs are exactly the three
        // pairs of edges at each vertex
        for v in 0..lat.num_vertices() {
            let at_v = bonds
                .bonds
                .iter()
                .filter(|b| b.origin == BondOrigin::SharedVertex(v))
                .count();
            assert_eq!(at_v, 3);
        }
    }

    #[test]
    fn toric_triangular_bonds_span_face_corners() {
        // nearest-neighbor edge midpoints: one bond per face corner, i.e.
        // two per lattice edge
        let lat = build_lattice(LatticeKind::Triangular, 3, 3).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);
        assert_eq!(bonds.bonds.len(), 2 * lat.num_edges());
    }

    #[test]
    fn perturbed_term_counts() {
        let code = color_code_3x3();
        let bonds = ising_bonds(&code);
        let h = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(1.0, 0.2).unwrap())
            .unwrap();
        assert_eq!(h.num_terms(), 18 + 27);

        let pure = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(1.0, 0.0).unwrap())
            .unwrap();
        assert_eq!(pure.num_terms(), 18);
        assert!(pure.terms().iter().all(|(c, _)| *c == -1.0));

        let ising = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(0.0, 0.5).unwrap())
            .unwrap();
        assert_eq!(ising.num_terms(), 27);
        assert!(ising.terms().iter().all(|(c, _)| *c == -0.5));
    }

    #[test]
    fn repeated_bond_aggregates() {
        let code = color_code_3x3();
        let bonds = ising_bonds(&code);
        let mut doubled = bonds.clone();
        doubled.bonds.push(bonds.bonds[0]);
        let cp = CouplingParams::new(1.0, 0.3).unwrap();
        let h = build_perturbed_hamiltonian(&code, &doubled, cp).unwrap();
        assert_eq!(h.num_terms(), 18 + 27);
        let zz = PauliString::z_on(code.n, &[bonds.bonds[0].sites.0, bonds.bonds[0].sites.1])
            .unwrap();
        let coeff = h
            .terms()
            .iter()
            .find(|(_, op)| *op == zz)
            .map(|(c, _)| *c)
            .unwrap();
        assert!((coeff - (-0.6)).abs() < 1e-15);
    }

    #[test]
    fn bond_set_mismatch_rejected() {
        let code = color_code_3x3();
        let other = build_toric_code(&build_lattice(LatticeKind::Square, 2, 2).unwrap());
        let bonds = ising_bonds(&other);
        assert!(matches!(
            build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(1.0, 0.1).unwrap()),
            Err(HamiltonianError::BondSetMismatch { .. })
        ));
    }

    #[test]
    fn sign_folding_in_term_list() {
        let mut h = HamiltonianTerms::new(2);
        let z = PauliString::z_on(2, &[0]).unwrap();
        let x = PauliString::x_on(2, &[0]).unwrap();
        // -Z X = -(XZ with reorder sign -1) = +XZ
        let minus_zx = z.multiply(&x).unwrap();
        assert_eq!(minus_zx.sign(), -1);
        h.add(1.0, minus_zx).unwrap();
        assert_eq!(h.terms().len(), 1);
        let (c, op) = &h.terms()[0];
        assert_eq!(*c, -1.0);
        assert_eq!(op.sign(), 1);
    }

    #[test]
    fn jsonl_export_shape() {
        let code = color_code_3x3();
        let bonds = ising_bonds(&code);
        let h = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(1.0, 0.2).unwrap())
            .unwrap();
        let jsonl = h.to_json_lines();
        let lines: Vec<&str> = jsonl.trim_end().lines().collect();
        assert_eq!(lines.len(), 45);
        let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(first["coeff"], serde_json::json!(-1.0));
        assert_eq!(first["x_support"].as_array().unwrap().len(), 6);
    }
}

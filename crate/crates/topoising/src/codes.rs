//! Toric and color stabilizer codes on a torus.
//!
//! A code is a list of X-type and Z-type generators tied to the lattice
//! objects they originate from. Topological degeneracy is computed by GF(2)
//! rank, never by diagonalization; constraint relations are kernel bases of
//! the generator support matrices; logical operators are built
//! constructively from non-contractible loop carriers and audited against
//! the generator group.

use crate::lattice::{Color, FaceColoring, LoopKind, LoopPath, TorusLattice};
use crate::pauli_gf2::{Gf2Matrix, Gf2Vec, PauliError, PauliString};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("face coloring does not match the lattice")]
    InvalidColoring,
    #[error("loop kind {0:?} cannot host logicals for this code")]
    WrongLoopKind(LoopKind),
    #[error("proposed logical operator {logical} anticommutes with generator {generator}")]
    LogicalAnticommutes { logical: usize, generator: usize },
    #[error("proposed logical operator {0} lies in the stabilizer group")]
    LogicalInGroup(usize),
    #[error("logical anticommutation relations do not form a perfect pairing")]
    PairingNotPerfect,
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitPlacement {
    OnVertices,
    OnEdges,
}

impl QubitPlacement {
    pub fn name(&self) -> &'static str {
        match self {
            QubitPlacement::OnVertices => "on_vertices",
            QubitPlacement::OnEdges => "on_edges",
        }
    }
}

/// A stabilizer code with its lattice of origin.
#[derive(Debug, Clone)]
pub struct StabilizerCode {
    pub n: usize,
    pub placement: QubitPlacement,
    pub lattice: TorusLattice,
    pub coloring: Option<FaceColoring>,
    pub x_generators: Vec<PauliString>,
    pub z_generators: Vec<PauliString>,
    /// Face or vertex id each X generator originates from.
    pub x_origins: Vec<usize>,
    pub z_origins: Vec<usize>,
}

impl StabilizerCode {
    pub fn num_generators(&self) -> usize {
        self.x_generators.len() + self.z_generators.len()
    }

    /// Generator by combined index: the X block first, then the Z block.
    pub fn generator(&self, idx: usize) -> &PauliString {
        let nx = self.x_generators.len();
        if idx < nx {
            &self.x_generators[idx]
        } else {
            &self.z_generators[idx - nx]
        }
    }

    /// All generators as binary-symplectic rows `[x | z]`.
    pub fn symplectic_matrix(&self) -> Gf2Matrix {
        let rows = self
            .x_generators
            .iter()
            .chain(&self.z_generators)
            .map(PauliString::symplectic_row)
            .collect();
        Gf2Matrix::from_rows(rows)
    }
}

/// Toric code: qubits on edges, an all-X star per vertex, an all-Z boundary
/// operator per face.
pub fn build_toric_code(lat: &TorusLattice) -> StabilizerCode {
    let n = lat.num_edges();
    let mut x_generators = Vec::with_capacity(lat.num_vertices());
    let mut x_origins = Vec::with_capacity(lat.num_vertices());
    for v in 0..lat.num_vertices() {
        let star = lat.edges_at_vertex(v);
        x_generators.push(PauliString::x_on(n, star).expect("edge ids in range"));
        x_origins.push(v);
    }
    let mut z_generators = Vec::with_capacity(lat.num_faces());
    let mut z_origins = Vec::with_capacity(lat.num_faces());
    for (f, face) in lat.faces.iter().enumerate() {
        z_generators.push(PauliString::z_on(n, &face.edges).expect("edge ids in range"));
        z_origins.push(f);
    }
    StabilizerCode {
        n,
        placement: QubitPlacement::OnEdges,
        lattice: lat.clone(),
        coloring: None,
        x_generators,
        z_generators,
        x_origins,
        z_origins,
    }
}

/// Color code: qubits on vertices, an all-X and an all-Z operator per face.
pub fn build_color_code(lat: &TorusLattice, fc: &FaceColoring) -> Result<StabilizerCode, CodeError> {
    if fc.colors.len() != lat.num_faces() {
        return Err(CodeError::InvalidColoring);
    }
    let n = lat.num_vertices();
    let mut x_generators = Vec::with_capacity(lat.num_faces());
    let mut z_generators = Vec::with_capacity(lat.num_faces());
    let mut origins = Vec::with_capacity(lat.num_faces());
    for (f, face) in lat.faces.iter().enumerate() {
        x_generators.push(PauliString::x_on(n, &face.vertices)?);
        z_generators.push(PauliString::z_on(n, &face.vertices)?);
        origins.push(f);
    }
    Ok(StabilizerCode {
        n,
        placement: QubitPlacement::OnVertices,
        lattice: lat.clone(),
        coloring: Some(fc.clone()),
        x_generators,
        z_generators,
        x_origins: origins.clone(),
        z_origins: origins,
    })
}

/// Ground-space dimension `2^(n - rank)` from the GF(2) rank of the
/// generator matrix. Exact at any size; independent of floating point.
pub fn degeneracy(code: &StabilizerCode) -> u64 {
    1u64 << logical_qubit_count(code)
}

/// `n - rank`, the number of encoded qubits... twice over: the exponent of
/// the ground-space dimension.
pub fn logical_qubit_count(code: &StabilizerCode) -> usize {
    code.n - code.symplectic_matrix().rank()
}

/// Index sets of generators whose product is the identity: a kernel basis of
/// the generator support matrix, X-type relations first, indices into the
/// combined X-then-Z generator list.
pub fn constraint_relations(code: &StabilizerCode) -> Vec<Vec<usize>> {
    let mut relations = Vec::new();
    let x_count = code.x_generators.len();
    for (gens, offset, x_part) in [
        (&code.x_generators, 0usize, true),
        (&code.z_generators, x_count, false),
    ] {
        let rows: Vec<Gf2Vec> = gens
            .iter()
            .map(|g| {
                if x_part {
                    g.x_support().clone()
                } else {
                    g.z_support().clone()
                }
            })
            .collect();
        // kernel over the generator index space: subsets of rows XORing to 0
        let kernel = Gf2Matrix::from_rows(rows).transpose().nullspace();
        for k in kernel {
            relations.push(k.support().iter().map(|i| i + offset).collect());
        }
    }
    relations
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalKind {
    XType,
    ZType,
}

#[derive(Debug, Clone)]
pub struct LogicalOperator {
    pub operator: PauliString,
    pub kind: LogicalKind,
    pub direction: u8,
    pub color: Option<Color>,
}

/// Logical loop operators plus the anticommuting (X-type, Z-type) pairs.
#[derive(Debug, Clone)]
pub struct LogicalOperatorSet {
    pub operators: Vec<LogicalOperator>,
    /// Indices `(x_idx, z_idx)` into `operators`.
    pub pairing: Vec<(usize, usize)>,
}

/// Builds logical operators on the given loop carriers and audits them:
/// every logical must commute with every generator, lie outside the
/// stabilizer group, and the X/Z anticommutation relations must form a
/// perfect pairing.
pub fn logical_operators(
    code: &StabilizerCode,
    loops: &[LoopPath],
) -> Result<LogicalOperatorSet, CodeError> {
    let mut operators = Vec::new();
    for lp in loops {
        match (code.placement, lp.kind) {
            (QubitPlacement::OnEdges, LoopKind::Primal) => {
                operators.push(LogicalOperator {
                    operator: PauliString::z_on(code.n, &lp.sites)?,
                    kind: LogicalKind::ZType,
                    direction: lp.direction,
                    color: None,
                });
            }
            (QubitPlacement::OnEdges, LoopKind::Dual) => {
                operators.push(LogicalOperator {
                    operator: PauliString::x_on(code.n, &lp.sites)?,
                    kind: LogicalKind::XType,
                    direction: lp.direction,
                    color: None,
                });
            }
            (QubitPlacement::OnVertices, LoopKind::Colored) => {
                operators.push(LogicalOperator {
                    operator: PauliString::x_on(code.n, &lp.sites)?,
                    kind: LogicalKind::XType,
                    direction: lp.direction,
                    color: lp.color,
                });
                operators.push(LogicalOperator {
                    operator: PauliString::z_on(code.n, &lp.sites)?,
                    kind: LogicalKind::ZType,
                    direction: lp.direction,
                    color: lp.color,
                });
            }
            (_, kind) => return Err(CodeError::WrongLoopKind(kind)),
        }
    }

    let sym = code.symplectic_matrix();
    for (li, logical) in operators.iter().enumerate() {
        for gi in 0..code.num_generators() {
            if !logical.operator.commutes(code.generator(gi))? {
                return Err(CodeError::LogicalAnticommutes {
                    logical: li,
                    generator: gi,
                });
            }
        }
        if sym.row_space_contains(&logical.operator.symplectic_row()) {
            return Err(CodeError::LogicalInGroup(li));
        }
    }

    let mut pairing = Vec::new();
    let mut x_partners = vec![0usize; operators.len()];
    let mut z_partners = vec![0usize; operators.len()];
    for (i, a) in operators.iter().enumerate() {
        for (j, b) in operators.iter().enumerate() {
            if a.kind == LogicalKind::XType
                && b.kind == LogicalKind::ZType
                && !a.operator.commutes(&b.operator)?
            {
                pairing.push((i, j));
                x_partners[i] += 1;
                z_partners[j] += 1;
            }
        }
    }
    let perfect = operators.iter().enumerate().all(|(i, op)| match op.kind {
        LogicalKind::XType => x_partners[i] == 1,
        LogicalKind::ZType => z_partners[i] == 1,
    });
    if !perfect {
        return Err(CodeError::PairingNotPerfect);
    }
    Ok(LogicalOperatorSet { operators, pairing })
}

/// JSON document for a code, its constraint relations and logicals.
pub fn code_json(code: &StabilizerCode, logicals: Option<&LogicalOperatorSet>) -> serde_json::Value {
    let mut generators = Vec::new();
    for (g, origin) in code.x_generators.iter().zip(&code.x_origins) {
        generators.push(serde_json::json!({
            "type": "x",
            "origin": origin,
            "x_support": g.x_support().support(),
            "z_support": g.z_support().support(),
        }));
    }
    for (g, origin) in code.z_generators.iter().zip(&code.z_origins) {
        generators.push(serde_json::json!({
            "type": "z",
            "origin": origin,
            "x_support": g.x_support().support(),
            "z_support": g.z_support().support(),
        }));
    }
    let logicals_json = logicals.map(|set| {
        let ops: Vec<_> = set
            .operators
            .iter()
            .map(|l| {
                serde_json::json!({
                    "kind": match l.kind {
                        LogicalKind::XType => "x_type",
                        LogicalKind::ZType => "z_type",
                    },
                    "direction": l.direction,
                    "color": l.color.map(|c| c.name()),
                    "x_support": l.operator.x_support().support(),
                    "z_support": l.operator.z_support().support(),
                })
            })
            .collect();
        serde_json::json!({ "operators": ops, "pairing": set.pairing })
    });
    serde_json::json!({
        "schema": crate::SCHEMA,
        "n": code.n,
        "placement": code.placement.name(),
        "generators": generators,
        "constraints": constraint_relations(code),
        "logicals": logicals_json,
    })
}

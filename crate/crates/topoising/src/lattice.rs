//! Periodic 2D lattices on the torus.
//!
//! Four kinds are supported: honeycomb, square, triangular and
//! square-octagonal. Unit cells are indexed `(i, j)` with wrap-around mod
//! `L1`/`L2`; vertices, edges and faces carry a sublattice role within the
//! cell, and all ids are lexicographic in `(cell, role)` so rebuilt lattices
//! are identical.
//!
//! The module also provides the face/edge 3-colorings used by color codes
//! (decided constructively: propagate from a seed and report failure) and
//! straight-line representatives of the non-contractible loops that underlie
//! logical operators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice size {l1}x{l2} below minimum 2x2")]
    SizeTooSmall { l1: usize, l2: usize },
    #[error("lattice admits no valid three-coloring at this size")]
    NotThreeColorable,
    #[error("face coloring does not match this lattice")]
    InvalidColoring,
    #[error("loop of color {0:?} in direction {1} failed to close")]
    LoopNotClosed(Option<Color>, u8),
    #[error("loop carrier visits a site twice")]
    LoopRepeatsSite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Honeycomb,
    Square,
    Triangular,
    SquareOctagonal,
}

impl LatticeKind {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeKind::Honeycomb => "honeycomb",
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
            LatticeKind::SquareOctagonal => "square_octagonal",
        }
    }
}

impl std::str::FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "honeycomb" => Ok(LatticeKind::Honeycomb),
            "square" => Ok(LatticeKind::Square),
            "triangular" => Ok(LatticeKind::Triangular),
            "square_octagonal" | "square-octagonal" => Ok(LatticeKind::SquareOctagonal),
            other => Err(format!("unknown lattice kind `{other}`")),
        }
    }
}

impl std::fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn index(&self) -> usize {
        match self {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }

    /// The color that is neither `a` nor `b`; panics if `a == b`.
    pub fn remaining(a: Color, b: Color) -> Color {
        assert_ne!(a, b, "two equal colors do not determine a third");
        *Color::ALL
            .iter()
            .find(|c| **c != a && **c != b)
            .expect("three colors")
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub cell: (usize, usize),
    pub role: u8,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub cell: (usize, usize),
    pub role: u8,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub cell: (usize, usize),
    pub role: u8,
    /// Boundary walk: `edges[k]` connects `vertices[k]` to `vertices[k+1]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TorusLattice {
    pub kind: LatticeKind,
    pub l1: usize,
    pub l2: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    edge_faces: Vec<Vec<usize>>,
}

/// (role, di, dj) reference to an object in a displaced cell.
type SchemaRef = (u8, i64, i64);

struct CellSchema {
    vertex_roles: u8,
    /// edge role -> (endpoint u, endpoint v)
    edges: &'static [(SchemaRef, SchemaRef)],
    /// face role -> (vertex walk, edge walk)
    faces: &'static [(&'static [SchemaRef], &'static [SchemaRef])],
}

const HONEYCOMB: CellSchema = CellSchema {
    vertex_roles: 2,
    // A = role 0, B = role 1
    edges: &[
        ((0, 0, 0), (1, 0, 0)), // e0: A(i,j) - B(i,j)
        ((1, 0, 0), (0, 1, 0)), // e1: B(i,j) - A(i+1,j)
        ((1, 0, 0), (0, 0, 1)), // e2: B(i,j) - A(i,j+1)
    ],
    faces: &[(
        &[(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, -1), (0, 1, -1), (1, 0, -1)],
        &[(0, 0, 0), (1, 0, 0), (2, 1, -1), (0, 1, -1), (1, 0, -1), (2, 0, -1)],
    )],
};

const SQUARE: CellSchema = CellSchema {
    vertex_roles: 1,
    edges: &[
        ((0, 0, 0), (0, 1, 0)), // h
        ((0, 0, 0), (0, 0, 1)), // u
    ],
    faces: &[(
        &[(0, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 1)],
        &[(0, 0, 0), (1, 1, 0), (0, 0, 1), (1, 0, 0)],
    )],
};

const TRIANGULAR: CellSchema = CellSchema {
    vertex_roles: 1,
    edges: &[
        ((0, 0, 0), (0, 1, 0)), // a
        ((0, 0, 0), (0, 0, 1)), // b
        ((0, 0, 0), (0, 1, 1)), // c (diagonal)
    ],
    faces: &[
        // up triangle
        (
            &[(0, 0, 0), (0, 1, 0), (0, 1, 1)],
            &[(0, 0, 0), (1, 1, 0), (2, 0, 0)],
        ),
        // down triangle
        (
            &[(0, 0, 0), (0, 1, 1), (0, 0, 1)],
            &[(2, 0, 0), (0, 0, 1), (1, 0, 0)],
        ),
    ],
};

const SQUARE_OCTAGONAL: CellSchema = CellSchema {
    vertex_roles: 4,
    // s0 bottom, s1 right, s2 top, s3 left of the small square
    edges: &[
        ((0, 0, 0), (1, 0, 0)), // q0: s0 - s1
        ((1, 0, 0), (2, 0, 0)), // q1: s1 - s2
        ((2, 0, 0), (3, 0, 0)), // q2: s2 - s3
        ((3, 0, 0), (0, 0, 0)), // q3: s3 - s0
        ((1, 0, 0), (3, 1, 0)), // r: horizontal link
        ((2, 0, 0), (0, 0, 1)), // t: vertical link
    ],
    faces: &[
        // square
        (
            &[(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)],
            &[(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)],
        ),
        // octagon between four squares
        (
            &[
                (1, 0, 0),
                (3, 1, 0),
                (2, 1, 0),
                (0, 1, 1),
                (3, 1, 1),
                (1, 0, 1),
                (0, 0, 1),
                (2, 0, 0),
            ],
            &[
                (4, 0, 0),
                (2, 1, 0),
                (5, 1, 0),
                (3, 1, 1),
                (4, 0, 1),
                (0, 0, 1),
                (5, 0, 0),
                (1, 0, 0),
            ],
        ),
    ],
};

fn schema(kind: LatticeKind) -> &'static CellSchema {
    match kind {
        LatticeKind::Honeycomb => &HONEYCOMB,
        LatticeKind::Square => &SQUARE,
        LatticeKind::Triangular => &TRIANGULAR,
        LatticeKind::SquareOctagonal => &SQUARE_OCTAGONAL,
    }
}

impl TorusLattice {
    fn cell_index(&self, i: i64, j: i64) -> usize {
        let i = i.rem_euclid(self.l1 as i64) as usize;
        let j = j.rem_euclid(self.l2 as i64) as usize;
        i * self.l2 + j
    }

    pub fn vertex_id(&self, i: i64, j: i64, role: u8) -> usize {
        self.cell_index(i, j) * schema(self.kind).vertex_roles as usize + role as usize
    }

    pub fn edge_id(&self, i: i64, j: i64, role: u8) -> usize {
        self.cell_index(i, j) * schema(self.kind).edges.len() + role as usize
    }

    pub fn face_id(&self, i: i64, j: i64, role: u8) -> usize {
        self.cell_index(i, j) * schema(self.kind).faces.len() + role as usize
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Edges incident to a vertex, ascending.
    pub fn edges_at_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    /// Faces whose boundary contains the vertex, ascending and deduplicated.
    pub fn faces_at_vertex(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    /// The two faces bounded by an edge.
    pub fn faces_at_edge(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }
}

/// Builds one of the four supported tori. Ids are deterministic functions of
/// `(cell, role)`; adjacency is translation invariant.
pub fn build_lattice(kind: LatticeKind, l1: usize, l2: usize) -> Result<TorusLattice, LatticeError> {
    if l1 < 2 || l2 < 2 {
        return Err(LatticeError::SizeTooSmall { l1, l2 });
    }
    let sch = schema(kind);
    let cells = l1 * l2;
    let mut lat = TorusLattice {
        kind,
        l1,
        l2,
        vertices: Vec::with_capacity(cells * sch.vertex_roles as usize),
        edges: Vec::with_capacity(cells * sch.edges.len()),
        faces: Vec::with_capacity(cells * sch.faces.len()),
        vertex_edges: Vec::new(),
        vertex_faces: Vec::new(),
        edge_faces: Vec::new(),
    };
    for i in 0..l1 {
        for j in 0..l2 {
            for role in 0..sch.vertex_roles {
                lat.vertices.push(Vertex { cell: (i, j), role });
            }
        }
    }
    for i in 0..l1 as i64 {
        for j in 0..l2 as i64 {
            for (role, (u, v)) in sch.edges.iter().enumerate() {
                lat.edges.push(Edge {
                    u: lat.vertex_id(i + u.1, j + u.2, u.0),
                    v: lat.vertex_id(i + v.1, j + v.2, v.0),
                    cell: (i as usize, j as usize),
                    role: role as u8,
                });
            }
        }
    }
    for i in 0..l1 as i64 {
        for j in 0..l2 as i64 {
            for (role, (vs, es)) in sch.faces.iter().enumerate() {
                lat.faces.push(Face {
                    cell: (i as usize, j as usize),
                    role: role as u8,
                    vertices: vs.iter().map(|r| lat.vertex_id(i + r.1, j + r.2, r.0)).collect(),
                    edges: es.iter().map(|r| lat.edge_id(i + r.1, j + r.2, r.0)).collect(),
                });
            }
        }
    }

    let mut vertex_edges = vec![Vec::new(); lat.vertices.len()];
    for (e, edge) in lat.edges.iter().enumerate() {
        vertex_edges[edge.u].push(e);
        vertex_edges[edge.v].push(e);
    }
    let mut vertex_faces = vec![Vec::new(); lat.vertices.len()];
    let mut edge_faces = vec![Vec::new(); lat.edges.len()];
    for (f, face) in lat.faces.iter().enumerate() {
        for &v in &face.vertices {
            vertex_faces[v].push(f);
        }
        for &e in &face.edges {
            edge_faces[e].push(f);
        }
    }
    for l in vertex_edges.iter_mut().chain(vertex_faces.iter_mut()) {
        l.sort_unstable();
        l.dedup();
    }
    lat.vertex_edges = vertex_edges;
    lat.vertex_faces = vertex_faces;
    lat.edge_faces = edge_faces;

    validate(&lat);
    Ok(lat)
}

/// Structural invariants every built torus must satisfy.
fn validate(lat: &TorusLattice) {
    let (v, e, f) = (lat.num_vertices(), lat.num_edges(), lat.num_faces());
    assert_eq!(v as i64 - e as i64 + f as i64, 0, "Euler characteristic");
    for (ei, faces) in lat.edge_faces.iter().enumerate() {
        assert_eq!(faces.len(), 2, "edge {ei} must bound exactly 2 faces");
    }
    for face in &lat.faces {
        assert_eq!(face.vertices.len(), face.edges.len());
        let k = face.vertices.len();
        for s in 0..k {
            let (a, b) = (face.vertices[s], face.vertices[(s + 1) % k]);
            let edge = &lat.edges[face.edges[s]];
            assert!(
                (edge.u, edge.v) == (a, b) || (edge.u, edge.v) == (b, a),
                "face walk broken at step {s} of face at {:?}",
                face.cell
            );
        }
    }
}

/// Face colors for a color code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceColoring {
    pub colors: Vec<Color>,
}

/// Edge colors induced by a face coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<Color>,
}

/// Three-colors the faces so that the three faces around every vertex carry
/// three distinct colors.
///
/// The coloring is found constructively: the three faces around vertex 0 are
/// seeded red/green/blue in face-id order, then colors propagate (two known
/// colors at a vertex force the third). Sizes whose wrap-around admits no
/// valid coloring yield [`LatticeError::NotThreeColorable`].
pub fn three_color_faces(lat: &TorusLattice) -> Result<FaceColoring, LatticeError> {
    // Only 3-valent lattices (3 faces meeting at every vertex) can satisfy
    // the around-each-vertex condition.
    if lat.vertex_faces.iter().any(|fs| fs.len() != 3) {
        return Err(LatticeError::NotThreeColorable);
    }
    let mut colors: Vec<Option<Color>> = vec![None; lat.num_faces()];
    let seed = lat.faces_at_vertex(0); // already ascending
    for (slot, &f) in seed.iter().enumerate() {
        colors[f] = Some(Color::ALL[slot]);
    }
    loop {
        let mut progress = false;
        for v in 0..lat.num_vertices() {
            let fs = lat.faces_at_vertex(v);
            let known: Vec<Color> = fs.iter().filter_map(|&f| colors[f]).collect();
            match known.len() {
                2 => {
                    if known[0] == known[1] {
                        return Err(LatticeError::NotThreeColorable);
                    }
                    let third = Color::remaining(known[0], known[1]);
                    let missing = fs.iter().find(|&&f| colors[f].is_none()).expect("one left");
                    colors[*missing] = Some(third);
                    progress = true;
                }
                3 => {
                    if known[0] == known[1] || known[0] == known[2] || known[1] == known[2] {
                        return Err(LatticeError::NotThreeColorable);
                    }
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    let colors: Option<Vec<Color>> = colors.into_iter().collect();
    match colors {
        Some(colors) => Ok(FaceColoring { colors }),
        None => Err(LatticeError::NotThreeColorable),
    }
}

/// Colors every edge with the unique color absent from its two bounding
/// faces; equivalently, the color of the two same-colored faces the edge
/// connects through its endpoints.
pub fn color_edges(lat: &TorusLattice, fc: &FaceColoring) -> Result<EdgeColoring, LatticeError> {
    if fc.colors.len() != lat.num_faces() {
        return Err(LatticeError::InvalidColoring);
    }
    let mut colors = Vec::with_capacity(lat.num_edges());
    for e in 0..lat.num_edges() {
        let bounds = lat.faces_at_edge(e);
        let (a, b) = (fc.colors[bounds[0]], fc.colors[bounds[1]]);
        if a == b {
            return Err(LatticeError::InvalidColoring);
        }
        colors.push(Color::remaining(a, b));
    }
    Ok(EdgeColoring { colors })
}

/// All unordered pairs of distinct edges sharing a vertex, tagged with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgePair {
    pub first: usize,
    pub second: usize,
    pub vertex: usize,
}

pub fn adjacent_edge_pairs(lat: &TorusLattice) -> Vec<EdgePair> {
    let mut pairs = Vec::new();
    for v in 0..lat.num_vertices() {
        let es = lat.edges_at_vertex(v);
        for a in 0..es.len() {
            for b in a + 1..es.len() {
                pairs.push(EdgePair {
                    first: es[a],
                    second: es[b],
                    vertex: v,
                });
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    /// Closed walk on lattice edges (carrier: edge ids).
    Primal,
    /// Closed walk on the dual lattice; carrier edges are the ones crossed.
    Dual,
    /// Closed colored face walk; carrier: the visited vertices (qubit sites
    /// of a color code).
    Colored,
}

/// A non-contractible loop representative with winding number 1 around its
/// direction and 0 around the other.
#[derive(Debug, Clone)]
pub struct LoopPath {
    pub kind: LoopKind,
    pub direction: u8,
    pub color: Option<Color>,
    /// Qubit carrier: edge ids for primal/dual, vertex ids for colored.
    pub sites: Vec<usize>,
    pub winding: (i64, i64),
}

fn check_distinct(sites: &[usize]) -> Result<(), LatticeError> {
    let mut sorted = sites.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sites.len() {
        return Err(LatticeError::LoopRepeatsSite);
    }
    Ok(())
}

/// Closed edge walk along a coordinate line (hosts Z-type toric logicals).
pub fn primal_loop(lat: &TorusLattice, direction: u8) -> LoopPath {
    let mut sites = Vec::new();
    match (lat.kind, direction) {
        (LatticeKind::Honeycomb, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 0));
                sites.push(lat.edge_id(i, 0, 1));
            }
        }
        (LatticeKind::Honeycomb, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 0));
                sites.push(lat.edge_id(0, j, 2));
            }
        }
        (LatticeKind::Square, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 0));
            }
        }
        (LatticeKind::Square, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 1));
            }
        }
        (LatticeKind::Triangular, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 0));
            }
        }
        (LatticeKind::Triangular, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 1));
            }
        }
        (LatticeKind::SquareOctagonal, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 0)); // q0
                sites.push(lat.edge_id(i, 0, 4)); // r
                sites.push(lat.edge_id(i + 1, 0, 3)); // q3
            }
        }
        (LatticeKind::SquareOctagonal, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 0)); // q0
                sites.push(lat.edge_id(0, j, 1)); // q1
                sites.push(lat.edge_id(0, j, 5)); // t
            }
        }
    }
    let winding = if direction == 0 { (1, 0) } else { (0, 1) };
    LoopPath {
        kind: LoopKind::Primal,
        direction,
        color: None,
        sites,
        winding,
    }
}

/// Edges crossed by a closed dual-lattice walk (hosts X-type toric logicals).
pub fn dual_loop(lat: &TorusLattice, direction: u8) -> LoopPath {
    let mut sites = Vec::new();
    match (lat.kind, direction) {
        (LatticeKind::Honeycomb, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, lat.l2 as i64 - 1, 2));
            }
        }
        (LatticeKind::Honeycomb, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 1));
            }
        }
        (LatticeKind::Square, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 1));
            }
        }
        (LatticeKind::Square, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 0));
            }
        }
        (LatticeKind::Triangular, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 1));
                sites.push(lat.edge_id(i, 0, 2));
            }
        }
        (LatticeKind::Triangular, _) => {
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(0, j, 2));
                sites.push(lat.edge_id(0, j, 0));
            }
        }
        (LatticeKind::SquareOctagonal, 0) => {
            for i in 0..lat.l1 as i64 {
                sites.push(lat.edge_id(i, 0, 1)); // q1
                sites.push(lat.edge_id(i + 1, 0, 2)); // q2
            }
        }
        (LatticeKind::SquareOctagonal, _) => {
            // seeded at column 1 so the crossing pattern with the primal
            // loops is a single shared edge
            for j in 0..lat.l2 as i64 {
                sites.push(lat.edge_id(1, j, 1)); // q1
                sites.push(lat.edge_id(1, j, 0)); // q0
            }
        }
    }
    let winding = if direction == 0 { (1, 0) } else { (0, 1) };
    LoopPath {
        kind: LoopKind::Dual,
        direction,
        color: None,
        sites,
        winding,
    }
}

/// One step of a colored face walk: the connecting edge and the landing cell.
struct ColorStep {
    edge: usize,
    to: (i64, i64),
}

/// Closed walk over same-colored faces along same-colored edges; the carrier
/// collects both endpoints of every edge used.
pub fn colored_loop(
    lat: &TorusLattice,
    fc: &FaceColoring,
    color: Color,
    direction: u8,
) -> Result<LoopPath, LatticeError> {
    if fc.colors.len() != lat.num_faces() {
        return Err(LatticeError::InvalidColoring);
    }
    let start_face = fc
        .colors
        .iter()
        .position(|&c| c == color)
        .ok_or(LatticeError::InvalidColoring)?;
    let start = lat.faces[start_face].cell;
    let start = (start.0 as i64, start.1 as i64);
    let octagon_walk = lat.kind == LatticeKind::SquareOctagonal && lat.faces[start_face].role == 1;

    // Step generators per kind: each closure maps the current face cell to
    // the connecting same-colored edge and the next face cell. Alternating
    // the two steps advances one lattice period per round in the requested
    // direction and none in the other.
    let steps: [Box<dyn Fn(i64, i64) -> ColorStep + '_>; 2] = match lat.kind {
        LatticeKind::Honeycomb => {
            let e0 = move |a: i64, b: i64| ColorStep {
                edge: lat.edge_id(a + 1, b, 0),
                to: (a + 1, b + 1),
            };
            if direction == 0 {
                [
                    Box::new(e0),
                    Box::new(move |a, b| ColorStep {
                        edge: lat.edge_id(a + 1, b - 1, 1),
                        to: (a + 2, b - 1),
                    }),
                ]
            } else {
                [
                    Box::new(e0),
                    Box::new(move |a, b| ColorStep {
                        edge: lat.edge_id(a, b, 2),
                        to: (a - 1, b + 2),
                    }),
                ]
            }
        }
        LatticeKind::SquareOctagonal if octagon_walk => {
            let q0 = move |a: i64, b: i64| ColorStep {
                edge: lat.edge_id(a + 1, b + 1, 0),
                to: (a + 1, b + 1),
            };
            if direction == 0 {
                [
                    Box::new(q0),
                    Box::new(move |a, b| ColorStep {
                        edge: lat.edge_id(a + 1, b, 3),
                        to: (a + 1, b - 1),
                    }),
                ]
            } else {
                [
                    Box::new(q0),
                    Box::new(move |a, b| ColorStep {
                        edge: lat.edge_id(a, b + 1, 1),
                        to: (a - 1, b + 1),
                    }),
                ]
            }
        }
        LatticeKind::SquareOctagonal => {
            // squares connect through the r / t links
            if direction == 0 {
                let step = move |a: i64, b: i64| ColorStep {
                    edge: lat.edge_id(a, b, 4),
                    to: (a + 1, b),
                };
                [Box::new(step) as Box<dyn Fn(i64, i64) -> ColorStep + '_>, Box::new(step)]
            } else {
                let step = move |a: i64, b: i64| ColorStep {
                    edge: lat.edge_id(a, b, 5),
                    to: (a, b + 1),
                };
                [Box::new(step) as Box<dyn Fn(i64, i64) -> ColorStep + '_>, Box::new(step)]
            }
        }
        _ => return Err(LatticeError::InvalidColoring),
    };

    let mut sites = Vec::new();
    let mut pos = start;
    let mut displacement = (0i64, 0i64);
    let limit = 2 * lat.num_faces() + 2;
    let mut step_parity = 0;
    for step_count in 0..=limit {
        if step_count > 0
            && (pos.0 - start.0) % lat.l1 as i64 == 0
            && (pos.1 - start.1) % lat.l2 as i64 == 0
        {
            break;
        }
        if step_count == limit {
            return Err(LatticeError::LoopNotClosed(Some(color), direction));
        }
        let step = steps[step_parity](pos.0, pos.1);
        step_parity = 1 - step_parity;
        let edge = &lat.edges[step.edge];
        sites.push(edge.u);
        sites.push(edge.v);
        displacement.0 += step.to.0 - pos.0;
        displacement.1 += step.to.1 - pos.1;
        pos = step.to;
    }
    check_distinct(&sites)?;
    let winding = (
        displacement.0 / lat.l1 as i64,
        displacement.1 / lat.l2 as i64,
    );
    let expected = if direction == 0 { (1, 0) } else { (0, 1) };
    if winding != expected {
        return Err(LatticeError::LoopNotClosed(Some(color), direction));
    }
    Ok(LoopPath {
        kind: LoopKind::Colored,
        direction,
        color: Some(color),
        sites,
        winding,
    })
}

/// Loop representatives for code construction.
///
/// Without a coloring: one primal and one dual loop per direction (toric-code
/// use). With a coloring: red and green loops in both directions — loops of
/// the third color are products of the other two and plaquettes, so they are
/// omitted as dependent.
pub fn nontrivial_loops(
    lat: &TorusLattice,
    fc: Option<&FaceColoring>,
) -> Result<Vec<LoopPath>, LatticeError> {
    match fc {
        None => Ok(vec![
            primal_loop(lat, 0),
            primal_loop(lat, 1),
            dual_loop(lat, 0),
            dual_loop(lat, 1),
        ]),
        Some(fc) => {
            let mut loops = Vec::with_capacity(4);
            for color in [Color::Red, Color::Green] {
                for dir in [0u8, 1u8] {
                    loops.push(colored_loop(lat, fc, color, dir)?);
                }
            }
            Ok(loops)
        }
    }
}

/// JSON document for a lattice, optionally with face and edge colors.
pub fn lattice_json(
    lat: &TorusLattice,
    coloring: Option<(&FaceColoring, &EdgeColoring)>,
) -> serde_json::Value {
    let vertices: Vec<_> = lat
        .vertices
        .iter()
        .enumerate()
        .map(|(id, v)| {
            serde_json::json!({ "id": id, "cell": [v.cell.0, v.cell.1], "role": v.role })
        })
        .collect();
    let edges: Vec<_> = lat
        .edges
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let mut obj = serde_json::json!({ "id": id, "u": e.u, "v": e.v });
            if let Some((_, ec)) = coloring {
                obj["color"] = serde_json::json!(ec.colors[id].name());
            }
            obj
        })
        .collect();
    let faces: Vec<_> = lat
        .faces
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let mut obj = serde_json::json!({
                "id": id,
                "edge_ids": f.edges,
                "vertex_ids": f.vertices,
            });
            if let Some((fcol, _)) = coloring {
                obj["color"] = serde_json::json!(fcol.colors[id].name());
            }
            obj
        })
        .collect();
    serde_json::json!({
        "schema": crate::SCHEMA,
        "kind": lat.kind.name(),
        "L1": lat.l1,
        "L2": lat.l2,
        "vertices": vertices,
        "edges": edges,
        "faces": faces,
    })
}

//! Derivation of the virtual-spin Ising model from a code plus bond set.
//!
//! One virtual spin is attached to each X-type generator. For every Ising
//! bond `Z_i Z_j`, the set of X-type generators anticommuting with it must
//! have exactly two members; the bond then flips those two virtual spins,
//! which is an `X_p X_q` interaction on the virtual side. Bonds landing on
//! the same generator pair accumulate multiplicity. Products of X-type
//! generators equal to the identity become GF(2) parity constraints on the
//! virtual-spin values, and every derived bond preserves them.

use crate::codes::StabilizerCode;
use crate::hamiltonians::{Bond, BondOrigin, BondSet};
use crate::lattice::{Color, TorusLattice};
use crate::pauli_gf2::{Gf2Matrix, Gf2Vec, PauliError, PauliString};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MappingError {
    #[error(
        "bond {bond_index} on sites {site_a},{site_b} anticommutes with {count} X-type \
         generators (the mapping needs exactly 2)"
    )]
    Obstruction {
        bond_index: usize,
        site_a: usize,
        site_b: usize,
        count: usize,
    },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VirtualBond {
    pub p: usize,
    pub q: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeClass {
    Triangular,
    Square,
    Other,
}

impl LatticeClass {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeClass::Triangular => "triangular",
            LatticeClass::Square => "square",
            LatticeClass::Other => "other",
        }
    }
}

/// Degree sequence and per-vertex triangle counts backing a classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEvidence {
    /// Distinct vertex degrees of the multiplicity-collapsed graph, sorted.
    pub degrees: Vec<usize>,
    /// Distinct per-vertex triangle counts, sorted.
    pub triangles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabel {
    pub label: LatticeClass,
    pub evidence: ClassEvidence,
    /// Components below 9 spins suffer wrap-around degeneracies; their label
    /// should not be trusted for transition-point arithmetic.
    pub small_size_caveat: bool,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub spins: Vec<usize>,
    pub label: ComponentLabel,
}

/// Weighted graph on virtual spins with parity constraints.
#[derive(Debug, Clone)]
pub struct VirtualIsingModel {
    /// Originating face/vertex id per virtual spin (index-aligned with the
    /// code's X-type generators).
    pub spin_origins: Vec<usize>,
    /// Face colors of the origins, for color codes.
    pub spin_colors: Option<Vec<Color>>,
    pub bonds: Vec<VirtualBond>,
    /// Each constraint: the sum of virtual-spin values over this support is
    /// even.
    pub parity_constraints: Vec<Vec<usize>>,
    pub components: Vec<Component>,
    /// Number of Z-type generators of the source code; sets the scalar
    /// offset of the mapped Hamiltonian.
    pub z_generator_count: usize,
}

impl VirtualIsingModel {
    pub fn num_spins(&self) -> usize {
        self.spin_origins.len()
    }

    /// A plain uniform TFIM graph on the vertices of a lattice: one spin per
    /// vertex, one bond per edge (parallel edges aggregate), no parity
    /// constraints, no scalar offset. Used by finite-size scans.
    pub fn uniform_from_lattice(lat: &TorusLattice, multiplicity: usize) -> Self {
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for edge in &lat.edges {
            let key = (edge.u.min(edge.v), edge.u.max(edge.v));
            *mult.entry(key).or_insert(0) += multiplicity;
        }
        let bonds: Vec<VirtualBond> = mult
            .into_iter()
            .map(|((p, q), multiplicity)| VirtualBond { p, q, multiplicity })
            .collect();
        let spin_origins: Vec<usize> = (0..lat.num_vertices()).collect();
        let components = find_components(spin_origins.len(), &bonds);
        VirtualIsingModel {
            spin_origins,
            spin_colors: None,
            bonds,
            parity_constraints: Vec::new(),
            components,
            z_generator_count: 0,
        }
    }
}

/// One parity equation per independent product of X-type generators equal to
/// the identity: the sum (mod 2) of the virtual spins in the relation's
/// support vanishes.
pub fn virtual_parity_constraints(code: &StabilizerCode) -> Vec<Vec<usize>> {
    let rows: Vec<Gf2Vec> = code
        .x_generators
        .iter()
        .map(|g| g.x_support().clone())
        .collect();
    Gf2Matrix::from_rows(rows)
        .transpose()
        .nullspace()
        .into_iter()
        .map(|v| v.support())
        .collect()
}

/// Derives the virtual Ising model for `code` with the given bond pattern.
pub fn derive_virtual_model(
    code: &StabilizerCode,
    bonds: &BondSet,
) -> Result<VirtualIsingModel, MappingError> {
    let nx = code.x_generators.len();
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (bond_index, bond) in bonds.bonds.iter().enumerate() {
        let zz = PauliString::z_on(code.n, &[bond.sites.0, bond.sites.1])?;
        let mut hit = [0usize; 2];
        let mut count = 0usize;
        for (g, gen) in code.x_generators.iter().enumerate() {
            if !zz.commutes(gen)? {
                if count < 2 {
                    hit[count] = g;
                }
                count += 1;
            }
        }
        if count != 2 {
            return Err(MappingError::Obstruction {
                bond_index,
                site_a: bond.sites.0,
                site_b: bond.sites.1,
                count,
            });
        }
        let key = (hit[0].min(hit[1]), hit[0].max(hit[1]));
        *mult.entry(key).or_insert(0) += 1;
    }
    let vbonds: Vec<VirtualBond> = mult
        .into_iter()
        .map(|((p, q), multiplicity)| VirtualBond { p, q, multiplicity })
        .collect();

    let parity_constraints = virtual_parity_constraints(code);
    // every bond must meet every constraint support in an even number of
    // spins, otherwise the constrained sector would not be preserved
    for c in &parity_constraints {
        for b in &vbonds {
            let inside = c.contains(&b.p) as usize + c.contains(&b.q) as usize;
            debug_assert_eq!(inside % 2, 0, "bond violates a parity constraint");
        }
    }

    let components = find_components(nx, &vbonds);
    let spin_colors = code.coloring.as_ref().map(|fc| {
        code.x_origins
            .iter()
            .map(|&origin| fc.colors[origin])
            .collect()
    });
    Ok(VirtualIsingModel {
        spin_origins: code.x_origins.clone(),
        spin_colors,
        bonds: vbonds,
        parity_constraints,
        components,
        z_generator_count: code.z_generators.len(),
    })
}

fn adjacency(num_spins: usize, bonds: &[VirtualBond]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); num_spins];
    for b in bonds {
        adj[b.p].push(b.q);
        adj[b.q].push(b.p);
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

fn find_components(num_spins: usize, bonds: &[VirtualBond]) -> Vec<Component> {
    let adj = adjacency(num_spins, bonds);
    let mut seen = vec![false; num_spins];
    let mut components = Vec::new();
    for start in 0..num_spins {
        if seen[start] {
            continue;
        }
        let mut spins = vec![start];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    spins.push(w);
                    queue.push_back(w);
                }
            }
        }
        spins.sort_unstable();
        let label = classify(&spins, &adj);
        components.push(Component { spins, label });
    }
    components
}

fn classify(spins: &[usize], adj: &[Vec<usize>]) -> ComponentLabel {
    let mut degrees = Vec::new();
    let mut triangles = Vec::new();
    for &v in spins {
        let nb = &adj[v];
        degrees.push(nb.len());
        let mut tri = 0usize;
        for (ai, &a) in nb.iter().enumerate() {
            for &b in &nb[ai + 1..] {
                if adj[a].binary_search(&b).is_ok() {
                    tri += 1;
                }
            }
        }
        triangles.push(tri);
    }
    degrees.sort_unstable();
    degrees.dedup();
    triangles.sort_unstable();
    triangles.dedup();
    let label = if degrees == [6] && triangles == [6] {
        LatticeClass::Triangular
    } else if degrees == [4] && triangles == [0] {
        LatticeClass::Square
    } else {
        LatticeClass::Other
    };
    ComponentLabel {
        label,
        evidence: ClassEvidence { degrees, triangles },
        small_size_caveat: spins.len() < 9,
    }
}

/// Classification of one component of the model (recomputed from scratch).
pub fn classify_component(vm: &VirtualIsingModel, component: usize) -> ComponentLabel {
    let adj = adjacency(vm.num_spins(), &vm.bonds);
    classify(&vm.components[component].spins, &adj)
}

/// How a real-spin Hamiltonian term acts on the virtual spins.
#[derive(Debug, Clone, PartialEq)]
pub enum RealTerm {
    XGenerator { origin: usize },
    ZGenerator { origin: usize },
    Bond { index: usize, sites: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq)]
pub enum VirtualImage {
    /// `Z` on one virtual spin.
    FieldZ { spin: usize },
    /// Contribution to the scalar offset.
    Offset,
    /// `X_p X_q` between two virtual spins.
    BondXX { p: usize, q: usize },
}

/// `scale * coupling` symbolic coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicCoeff {
    pub scale: f64,
    pub coupling: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DictEntry {
    pub real: RealTerm,
    pub image: VirtualImage,
    pub coeff: SymbolicCoeff,
}

/// Term-by-term dictionary between the perturbed code Hamiltonian and its
/// virtual-spin image.
#[derive(Debug, Clone)]
pub struct MappingReport {
    pub entries: Vec<DictEntry>,
}

pub fn spectral_dictionary(
    code: &StabilizerCode,
    bonds: &BondSet,
    vm: &VirtualIsingModel,
) -> Result<MappingReport, MappingError> {
    let mut entries = Vec::new();
    for (spin, &origin) in code.x_origins.iter().enumerate() {
        entries.push(DictEntry {
            real: RealTerm::XGenerator { origin },
            image: VirtualImage::FieldZ { spin },
            coeff: SymbolicCoeff {
                scale: -1.0,
                coupling: "J",
            },
        });
    }
    for &origin in &code.z_origins {
        entries.push(DictEntry {
            real: RealTerm::ZGenerator { origin },
            image: VirtualImage::Offset,
            coeff: SymbolicCoeff {
                scale: -1.0,
                coupling: "J",
            },
        });
    }
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for b in &vm.bonds {
        mult.insert((b.p, b.q), b.multiplicity);
    }
    for (index, bond) in bonds.bonds.iter().enumerate() {
        let zz = PauliString::z_on(code.n, &[bond.sites.0, bond.sites.1])?;
        let mut hit = Vec::with_capacity(2);
        for (g, gen) in code.x_generators.iter().enumerate() {
            if !zz.commutes(gen)? {
                hit.push(g);
            }
        }
        let (p, q) = (hit[0].min(hit[1]), hit[0].max(hit[1]));
        let m = mult[&(p, q)];
        entries.push(DictEntry {
            real: RealTerm::Bond {
                index,
                sites: bond.sites,
            },
            image: VirtualImage::BondXX { p, q },
            coeff: SymbolicCoeff {
                scale: -(m as f64),
                coupling: "K",
            },
        });
    }
    Ok(MappingReport { entries })
}

impl std::fmt::Display for MappingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            let real = match &e.real {
                RealTerm::XGenerator { origin } => format!("X-generator[{origin}]"),
                RealTerm::ZGenerator { origin } => format!("Z-generator[{origin}]"),
                RealTerm::Bond { index, sites } => {
                    format!("Z{}Z{} (bond {index})", sites.0, sites.1)
                }
            };
            let image = match &e.image {
                VirtualImage::FieldZ { spin } => format!("Z[p{spin}]"),
                VirtualImage::Offset => "offset".to_string(),
                VirtualImage::BondXX { p, q } => format!("X[p{p}] X[p{q}]"),
            };
            writeln!(f, "{real} -> {image}  coeff {}{}", e.coeff.scale, e.coeff.coupling)?;
        }
        Ok(())
    }
}

/// JSON export of a virtual model.
pub fn virtual_model_json(vm: &VirtualIsingModel) -> serde_json::Value {
    let spins: Vec<_> = vm
        .spin_origins
        .iter()
        .enumerate()
        .map(|(id, origin)| {
            let mut obj = serde_json::json!({ "id": id, "origin": origin });
            if let Some(colors) = &vm.spin_colors {
                obj["color"] = serde_json::json!(colors[id].name());
            }
            obj
        })
        .collect();
    let bonds: Vec<_> = vm
        .bonds
        .iter()
        .map(|b| serde_json::json!({ "p": b.p, "q": b.q, "multiplicity": b.multiplicity }))
        .collect();
    let components: Vec<_> = vm
        .components
        .iter()
        .map(|c| {
            serde_json::json!({
                "spins": c.spins,
                "label": c.label.label.name(),
                "caveat": c.label.small_size_caveat,
                "degrees": c.label.evidence.degrees,
                "triangles": c.label.evidence.triangles,
            })
        })
        .collect();
    serde_json::json!({
        "schema": crate::SCHEMA,
        "spins": spins,
        "bonds": bonds,
        "parity_constraints": vm.parity_constraints,
        "components": components,
    })
}

/// Reconstructs the bond origin description for diagnostics.
pub fn bond_origin_name(origin: &BondOrigin) -> String {
    match origin {
        BondOrigin::LatticeEdge(e) => format!("edge {e}"),
        BondOrigin::SharedVertex(v) => format!("vertex {v}"),
    }
}

pub use crate::hamiltonians::BondSet as MappingBondSet;

#[allow(unused_imports)]
use Bond as _BondUsedInDocs;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_color_code, build_toric_code, StabilizerCode};
    use crate::hamiltonians::ising_bonds;
    use crate::lattice::{
        adjacent_edge_pairs, build_lattice, three_color_faces, LatticeKind,
    };

    fn color_model(l1: usize, l2: usize) -> (StabilizerCode, VirtualIsingModel) {
        let lat = build_lattice(LatticeKind::Honeycomb, l1, l2).unwrap();
        let fc = three_color_faces(&lat).unwrap();
        let code = build_color_code(&lat, &fc).unwrap();
        let bonds = ising_bonds(&code);
        let vm = derive_virtual_model(&code, &bonds).unwrap();
        (code, vm)
    }

    fn toric_model(kind: LatticeKind, l1: usize, l2: usize) -> (StabilizerCode, VirtualIsingModel) {
        let lat = build_lattice(kind, l1, l2).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);
        let vm = derive_virtual_model(&code, &bonds).unwrap();
        (code, vm)
    }

    fn total_multiplicity(vm: &VirtualIsingModel) -> usize {
        vm.bonds.iter().map(|b| b.multiplicity).sum()
    }

    #[test]
    fn color_honeycomb_components_are_color_pure() {
        let (_, vm) = color_model(3, 3);
        assert_eq!(vm.num_spins(), 9);
        assert_eq!(vm.components.len(), 3);
        assert_eq!(total_multiplicity(&vm), 27);
        let colors = vm.spin_colors.as_ref().unwrap();
        for b in &vm.bonds {
            assert_eq!(colors[b.p], colors[b.q], "bond endpoints share a color");
        }
        for c in &vm.components {
            let mut cs: Vec<_> = c.spins.iter().map(|&s| colors[s]).collect();
            cs.dedup();
            assert_eq!(cs.len(), 1, "components are color pure");
        }
    }

    #[test]
    fn color_honeycomb_6x6_is_clean_triangular() {
        let (_, vm) = color_model(6, 6);
        assert_eq!(vm.num_spins(), 36);
        assert_eq!(vm.components.len(), 3);
        assert!(vm.bonds.iter().all(|b| b.multiplicity == 1));
        assert_eq!(total_multiplicity(&vm), 108);
        for (i, c) in vm.components.iter().enumerate() {
            assert_eq!(c.spins.len(), 12);
            assert_eq!(c.label.label, LatticeClass::Triangular, "component {i}");
            assert!(!c.label.small_size_caveat);
        }
    }

    #[test]
    fn square_octagonal_4x4_pattern() {
        let lat = build_lattice(LatticeKind::SquareOctagonal, 4, 4).unwrap();
        let fc = three_color_faces(&lat).unwrap();
        let code = build_color_code(&lat, &fc).unwrap();
        let bonds = ising_bonds(&code);
        let vm = derive_virtual_model(&code, &bonds).unwrap();
        assert_eq!(vm.num_spins(), 32);
        assert_eq!(vm.components.len(), 3);
        // squares: multiplicity-1 square lattice of 16 spins; octagon
        // classes: multiplicity-2 square lattices of 8 spins each
        let mut shapes: Vec<(usize, usize, LatticeClass)> = vm
            .components
            .iter()
            .map(|c| {
                let mults: Vec<usize> = vm
                    .bonds
                    .iter()
                    .filter(|b| c.spins.contains(&b.p))
                    .map(|b| b.multiplicity)
                    .collect();
                let m = mults[0];
                assert!(mults.iter().all(|&x| x == m), "uniform multiplicity");
                (c.spins.len(), m, c.label.label)
            })
            .collect();
        shapes.sort_unstable_by_key(|s| (s.0, s.1));
        assert_eq!(shapes[0], (8, 2, LatticeClass::Square));
        assert_eq!(shapes[1], (8, 2, LatticeClass::Square));
        assert_eq!(shapes[2], (16, 1, LatticeClass::Square));
    }

    #[test]
    fn toric_honeycomb_splits_into_two_sublattices() {
        let (code, vm) = toric_model(LatticeKind::Honeycomb, 4, 4);
        assert_eq!(vm.num_spins(), 32);
        assert_eq!(vm.components.len(), 2);
        assert!(vm.bonds.iter().all(|b| b.multiplicity == 1));
        // endpoints always share the vertex bipartition class
        for b in &vm.bonds {
            let role_p = code.lattice.vertices[vm.spin_origins[b.p]].role;
            let role_q = code.lattice.vertices[vm.spin_origins[b.q]].role;
            assert_eq!(role_p, role_q);
        }
        for c in &vm.components {
            assert_eq!(c.spins.len(), 16);
            assert_eq!(c.label.label, LatticeClass::Triangular);
        }
    }

    #[test]
    fn toric_triangular_doubles_every_bond() {
        for (l1, l2) in [(3, 3), (4, 4)] {
            let (_, vm) = toric_model(LatticeKind::Triangular, l1, l2);
            assert_eq!(vm.components.len(), 1);
            assert_eq!(vm.components[0].spins.len(), l1 * l2);
            assert!(
                vm.bonds.iter().all(|b| b.multiplicity == 2),
                "{l1}x{l2}: {:?}",
                vm.bonds
            );
        }
        let (_, vm) = toric_model(LatticeKind::Triangular, 4, 4);
        assert_eq!(vm.components[0].label.label, LatticeClass::Triangular);
    }

    #[test]
    fn multiplicity_totals_match_bond_counts() {
        for (kind, l1, l2) in [
            (LatticeKind::Honeycomb, 2, 3),
            (LatticeKind::Honeycomb, 4, 4),
            (LatticeKind::Triangular, 3, 3),
            (LatticeKind::Square, 3, 3),
        ] {
            let lat = build_lattice(kind, l1, l2).unwrap();
            let code = build_toric_code(&lat);
            let bonds = ising_bonds(&code);
            let vm = derive_virtual_model(&code, &bonds).unwrap();
            assert_eq!(total_multiplicity(&vm), bonds.bonds.len());
        }
    }

    #[test]
    fn parity_constraints_match_constraint_structure() {
        let (_, vm) = toric_model(LatticeKind::Honeycomb, 2, 3);
        assert_eq!(vm.parity_constraints.len(), 1);
        assert_eq!(vm.parity_constraints[0], (0..12).collect::<Vec<_>>());

        let (_, vm) = color_model(3, 3);
        assert_eq!(vm.parity_constraints.len(), 2);
        for c in &vm.parity_constraints {
            for b in &vm.bonds {
                let inside = c.contains(&b.p) as usize + c.contains(&b.q) as usize;
                assert_eq!(inside % 2, 0);
            }
        }
    }

    #[test]
    fn anticommutation_count_is_two_across_families() {
        // the geometric heart of the mapping, checked on all four families
        let cases: Vec<StabilizerCode> = vec![
            {
                let lat = build_lattice(LatticeKind::Honeycomb, 3, 3).unwrap();
                let fc = three_color_faces(&lat).unwrap();
                build_color_code(&lat, &fc).unwrap()
            },
            {
                let lat = build_lattice(LatticeKind::SquareOctagonal, 2, 2).unwrap();
                let fc = three_color_faces(&lat).unwrap();
                build_color_code(&lat, &fc).unwrap()
            },
            build_toric_code(&build_lattice(LatticeKind::Honeycomb, 2, 3).unwrap()),
            build_toric_code(&build_lattice(LatticeKind::Honeycomb, 4, 4).unwrap()),
            build_toric_code(&build_lattice(LatticeKind::Triangular, 3, 3).unwrap()),
            build_toric_code(&build_lattice(LatticeKind::Triangular, 4, 4).unwrap()),
            build_toric_code(&build_lattice(LatticeKind::Square, 3, 3).unwrap()),
            build_toric_code(&build_lattice(LatticeKind::SquareOctagonal, 2, 2).unwrap()),
        ];
        for code in &cases {
            let bonds = ising_bonds(code);
            for bond in &bonds.bonds {
                let zz = PauliString::z_on(code.n, &[bond.sites.0, bond.sites.1]).unwrap();
                let count = code
                    .x_generators
                    .iter()
                    .filter(|g| !zz.commutes(g).unwrap())
                    .count();
                assert_eq!(count, 2);
            }
        }
    }

    #[test]
    fn parallel_edge_pairs_obstruct_the_mapping() {
        // on the 2xL triangular torus the all-pairs-at-a-vertex pattern
        // includes pairs of parallel edges, whose ZZ commutes with every
        // vertex star
        let lat = build_lattice(LatticeKind::Triangular, 2, 3).unwrap();
        let code = build_toric_code(&lat);
        let pairs = adjacent_edge_pairs(&lat);
        let bonds = BondSet {
            n: code.n,
            bonds: pairs
                .iter()
                .map(|p| Bond {
                    sites: (p.first.min(p.second), p.first.max(p.second)),
                    origin: BondOrigin::SharedVertex(p.vertex),
                })
                .collect(),
        };
        assert!(matches!(
            derive_virtual_model(&code, &bonds),
            Err(MappingError::Obstruction { count: 0, .. })
        ));
    }

    #[test]
    fn small_components_carry_caveat() {
        let (_, vm) = color_model(3, 3);
        for c in &vm.components {
            assert_eq!(c.spins.len(), 3);
            assert!(c.label.small_size_caveat);
            assert_ne!(c.label.label, LatticeClass::Triangular);
        }
    }

    #[test]
    fn classify_component_matches_stored_labels() {
        let (_, vm) = toric_model(LatticeKind::Honeycomb, 4, 4);
        for i in 0..vm.components.len() {
            assert_eq!(classify_component(&vm, i), vm.components[i].label);
        }
    }

    #[test]
    fn dictionary_covers_every_term() {
        let (code, vm) = color_model(3, 3);
        let bonds = ising_bonds(&code);
        let report = spectral_dictionary(&code, &bonds, &vm).unwrap();
        assert_eq!(
            report.entries.len(),
            code.num_generators() + bonds.bonds.len()
        );
        // every x generator maps to the field on its own spin
        for (spin, entry) in report.entries.iter().take(9).enumerate() {
            assert_eq!(entry.image, VirtualImage::FieldZ { spin });
            assert_eq!(entry.coeff.scale, -1.0);
            assert_eq!(entry.coeff.coupling, "J");
        }
        // z generators contribute to the offset
        for entry in report.entries.iter().skip(9).take(9) {
            assert_eq!(entry.image, VirtualImage::Offset);
        }
        // bond images aggregate multiplicity into the coefficient
        for entry in report.entries.iter().skip(18) {
            match &entry.image {
                VirtualImage::BondXX { p, q } => {
                    let vb = vm
                        .bonds
                        .iter()
                        .find(|b| (b.p, b.q) == (*p, *q))
                        .expect("image bond derived");
                    assert_eq!(entry.coeff.scale, -(vb.multiplicity as f64));
                }
                other => panic!("expected a bond image, got {other:?}"),
            }
        }
    }

    #[test]
    fn uniform_lattice_model_for_scans() {
        let lat = build_lattice(LatticeKind::Triangular, 3, 3).unwrap();
        let vm = VirtualIsingModel::uniform_from_lattice(&lat, 1);
        assert_eq!(vm.num_spins(), 9);
        assert_eq!(vm.bonds.len(), 27);
        assert_eq!(vm.components.len(), 1);
        assert!(vm.parity_constraints.is_empty());
    }
}

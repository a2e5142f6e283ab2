//! Exact diagonalization of Pauli term lists.
//!
//! States live in the computational (Z) basis ordered by the integer value
//! of the bit string, site 0 least significant. A term `c * X(x) Z(z)` maps
//! basis state `|b>` to `c * (-1)^(|b AND z|) |b XOR x>`, so the action of a
//! Hamiltonian needs no materialized matrix. Dense decomposition is used up
//! to 4096 states, the deflated Krylov solver above that. Diagonal sector
//! constraints (parity projectors) restrict the basis by enumeration.

mod lanczos;

pub use lanczos::{LanczosOptions, NonConvergence};

use crate::codes::StabilizerCode;
use crate::hamiltonians::{
    build_perturbed_hamiltonian, build_tfim_hamiltonian, BondSet, CouplingParams,
    HamiltonianError, HamiltonianTerms,
};
use crate::mapping::{derive_virtual_model, MappingError};
use crate::pauli_gf2::{PauliError, PauliString};
use faer::Mat;
use thiserror::Error;

/// Dense decomposition limit for the `Auto` method.
pub const DENSE_LIMIT: usize = 4096;
/// Hard guard: refuse Hilbert spaces beyond this.
pub const MAX_DIMENSION: usize = 1 << 26;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("state vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("{n} qubits exceed the {max} supported by packed masks")]
    TooManyQubits { n: usize, max: usize },
    #[error("Hilbert space dimension {dim} exceeds the guard {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("requested {requested} eigenvalues from a {dim}-dimensional space")]
    TooManyEigenvalues { requested: usize, dim: usize },
    #[error("sector projector {index} is not a diagonal (Z-type, +1-signed) operator")]
    SectorNotDiagonal { index: usize },
    #[error("sector projector {index} does not commute with Hamiltonian term {term}")]
    SectorAnticommutes { index: usize, term: usize },
    #[error("sector selects an empty basis")]
    EmptySector,
    #[error(
        "eigensolver did not converge: {} of {requested} eigenvalues locked, \
         last residuals {residuals:?}",
        converged.len()
    )]
    NonConvergence {
        converged: Vec<f64>,
        residuals: Vec<f64>,
        requested: usize,
    },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dense,
    Iterative,
    Auto,
}

/// Diagonal sector constraint: eigenvalue of a Z-type Pauli operator.
#[derive(Debug, Clone)]
pub struct SectorProjector {
    pub operator: PauliString,
    pub eigenvalue: i8,
}

#[derive(Debug, Clone)]
pub struct SpectrumRequest<'a> {
    pub hamiltonian: &'a HamiltonianTerms,
    pub num_eigenvalues: usize,
    pub sector: Vec<SectorProjector>,
    pub method: Method,
    pub compute_vectors: bool,
}

impl<'a> SpectrumRequest<'a> {
    pub fn lowest(hamiltonian: &'a HamiltonianTerms, num_eigenvalues: usize) -> Self {
        SpectrumRequest {
            hamiltonian,
            num_eigenvalues,
            sector: Vec::new(),
            method: Method::Auto,
            compute_vectors: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Ascending; degeneracies preserved.
    pub eigenvalues: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
    /// Residual norms per eigenvalue (zeros for the dense path).
    pub residuals: Vec<f64>,
    pub method_used: &'static str,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn gap(&self) -> Option<f64> {
        (self.eigenvalues.len() >= 2).then(|| self.eigenvalues[1] - self.eigenvalues[0])
    }
}

/// A term compiled to machine-word masks.
#[derive(Debug, Clone, Copy)]
struct CompiledTerm {
    coeff: f64,
    x_mask: u64,
    z_mask: u64,
}

fn compile(h: &HamiltonianTerms) -> Result<Vec<CompiledTerm>, SpectraError> {
    if h.n > 63 {
        return Err(SpectraError::TooManyQubits { n: h.n, max: 63 });
    }
    h.terms()
        .iter()
        .map(|(c, op)| {
            Ok(CompiledTerm {
                coeff: c * op.sign() as f64,
                x_mask: op.x_support().as_u64().expect("n <= 63"),
                z_mask: op.z_support().as_u64().expect("n <= 63"),
            })
        })
        .collect()
}

/// Scale bound for convergence tests: sum of |coefficients|.
fn one_norm(terms: &[CompiledTerm]) -> f64 {
    terms.iter().map(|t| t.coeff.abs()).sum()
}

#[inline]
fn parity_sign(bits: u64) -> f64 {
    if bits.count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Basis of a full Hilbert space or a diagonal sector of it.
enum Basis {
    Full { n: usize },
    Sector { states: Vec<u64> },
}

impl Basis {
    fn len(&self) -> usize {
        match self {
            Basis::Full { n } => 1usize << n,
            Basis::Sector { states } => states.len(),
        }
    }

    #[inline]
    fn state(&self, i: usize) -> u64 {
        match self {
            Basis::Full { .. } => i as u64,
            Basis::Sector { states } => states[i],
        }
    }

    #[inline]
    fn index_of(&self, s: u64) -> usize {
        match self {
            Basis::Full { .. } => s as usize,
            Basis::Sector { states } => states.binary_search(&s).expect("sector preserved"),
        }
    }
}

fn build_basis(
    h: &HamiltonianTerms,
    terms: &[CompiledTerm],
    sector: &[SectorProjector],
) -> Result<Basis, SpectraError> {
    let dim = 1usize
        .checked_shl(h.n as u32)
        .filter(|&d| d <= MAX_DIMENSION)
        .ok_or(SpectraError::TooLarge {
            dim: usize::MAX,
            max: MAX_DIMENSION,
        })?;
    if sector.is_empty() {
        return Ok(Basis::Full { n: h.n });
    }
    let mut masks = Vec::with_capacity(sector.len());
    for (index, p) in sector.iter().enumerate() {
        if !p.operator.is_z_type()
            || p.operator.sign() != 1
            || p.operator.num_qubits() != h.n
            || !(p.eigenvalue == 1 || p.eigenvalue == -1)
        {
            return Err(SpectraError::SectorNotDiagonal { index });
        }
        let z = p.operator.z_support().as_u64().expect("n <= 63");
        for (term, t) in terms.iter().enumerate() {
            if (t.x_mask & z).count_ones() & 1 == 1 {
                return Err(SpectraError::SectorAnticommutes { index, term });
            }
        }
        let want_odd = p.eigenvalue == -1;
        masks.push((z, want_odd));
    }
    let states: Vec<u64> = (0..dim as u64)
        .filter(|&s| {
            masks
                .iter()
                .all(|&(z, want_odd)| ((s & z).count_ones() & 1 == 1) == want_odd)
        })
        .collect();
    if states.is_empty() {
        return Err(SpectraError::EmptySector);
    }
    Ok(Basis::Sector { states })
}

fn apply_terms(terms: &[CompiledTerm], basis: &Basis, v: &[f64], out: &mut [f64]) {
    match basis {
        Basis::Full { .. } => {
            for t in terms {
                if t.x_mask == 0 {
                    if t.z_mask == 0 {
                        for (o, x) in out.iter_mut().zip(v) {
                            *o += t.coeff * x;
                        }
                    } else {
                        for (b, x) in v.iter().enumerate() {
                            out[b] += t.coeff * parity_sign(b as u64 & t.z_mask) * x;
                        }
                    }
                } else {
                    for (b, x) in v.iter().enumerate() {
                        let target = b ^ t.x_mask as usize;
                        out[target] += t.coeff * parity_sign(b as u64 & t.z_mask) * x;
                    }
                }
            }
        }
        Basis::Sector { states } => {
            for t in terms {
                for (i, &s) in states.iter().enumerate() {
                    let j = if t.x_mask == 0 {
                        i
                    } else {
                        basis.index_of(s ^ t.x_mask)
                    };
                    out[j] += t.coeff * parity_sign(s & t.z_mask) * v[i];
                }
            }
        }
    }
}

/// Applies the Hamiltonian to a full-space state vector.
pub fn matvec(h: &HamiltonianTerms, v: &[f64]) -> Result<Vec<f64>, SpectraError> {
    let terms = compile(h)?;
    let dim = 1usize << h.n;
    if v.len() != dim {
        return Err(SpectraError::DimensionMismatch {
            got: v.len(),
            expected: dim,
        });
    }
    let mut out = vec![0.0; dim];
    apply_terms(&terms, &Basis::Full { n: h.n }, v, &mut out);
    Ok(out)
}

fn dense_spectrum(
    terms: &[CompiledTerm],
    basis: &Basis,
    k: usize,
    compute_vectors: bool,
) -> Spectrum {
    let dim = basis.len();
    let mut m = Mat::<f64>::zeros(dim, dim);
    for t in terms {
        for col in 0..dim {
            let s = basis.state(col);
            let row = if t.x_mask == 0 {
                col
            } else {
                basis.index_of(s ^ t.x_mask)
            };
            m[(row, col)] += t.coeff * parity_sign(s & t.z_mask);
        }
    }
    let eig = m
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("dense eigendecomposition");
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.S()[a].partial_cmp(&eig.S()[b]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().take(k).map(|&i| eig.S()[i]).collect();
    let vectors = compute_vectors.then(|| {
        order
            .iter()
            .take(k)
            .map(|&i| (0..dim).map(|r| eig.U()[(r, i)]).collect())
            .collect()
    });
    Spectrum {
        residuals: vec![0.0; eigenvalues.len()],
        eigenvalues,
        vectors,
        method_used: "dense",
    }
}

/// Lowest eigenvalues of a (possibly sector-restricted) Hamiltonian.
pub fn eigenvalues(req: &SpectrumRequest) -> Result<Spectrum, SpectraError> {
    eigenvalues_with(req, &LanczosOptions::default())
}

pub fn eigenvalues_with(
    req: &SpectrumRequest,
    opts: &LanczosOptions,
) -> Result<Spectrum, SpectraError> {
    let terms = compile(req.hamiltonian)?;
    let basis = build_basis(req.hamiltonian, &terms, &req.sector)?;
    let dim = basis.len();
    let k = req.num_eigenvalues;
    if k > dim {
        return Err(SpectraError::TooManyEigenvalues { requested: k, dim });
    }
    let dense = match req.method {
        Method::Dense => true,
        Method::Iterative => false,
        Method::Auto => dim <= DENSE_LIMIT,
    };
    if dense {
        return Ok(dense_spectrum(&terms, &basis, k, req.compute_vectors));
    }
    let scale = one_norm(&terms);
    let (vals, vecs, residuals) =
        lanczos::lowest_eigenpairs(dim, k, scale, opts, |v, out| {
            apply_terms(&terms, &basis, v, out)
        })
        .map_err(|nc| SpectraError::NonConvergence {
            converged: nc.converged,
            residuals: nc.residuals,
            requested: k,
        })?;
    Ok(Spectrum {
        eigenvalues: vals,
        vectors: req.compute_vectors.then_some(vecs),
        residuals,
        method_used: "iterative",
    })
}

/// One matched level in an equivalence report.
#[derive(Debug, Clone)]
pub struct LevelMatch {
    pub virtual_level: f64,
    pub real_level: Option<f64>,
    pub delta: Option<f64>,
}

/// Outcome of the real-vs-virtual spectral comparison.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub code: String,
    pub couplings: CouplingParams,
    pub e0_real: f64,
    /// Constrained virtual TFIM ground energy, scalar offset included.
    pub e0_virtual_plus_offset: f64,
    pub low_spectrum_match: Vec<LevelMatch>,
    pub verdict: bool,
    pub tolerance: f64,
}

/// Diagonalizes both sides of the mapping and matches the lowest levels.
///
/// The virtual TFIM is restricted to the parity-constraint-satisfying sector
/// and carries the scalar offset, so its levels should appear verbatim in
/// the real perturbed-code spectrum. Matching is greedy nearest-first with
/// every real eigenvalue consumable once. Levels beyond the ground state are
/// only meaningful when enough real levels are computed; with the same
/// `num_levels` on both sides the ground-state comparison is always sound.
pub fn verify_equivalence(
    code: &StabilizerCode,
    bonds: &BondSet,
    cp: CouplingParams,
    num_levels: usize,
    tol: f64,
) -> Result<EquivalenceReport, SpectraError> {
    let real_h = build_perturbed_hamiltonian(code, bonds, cp)?;
    // the real spectrum interleaves syndrome and logical-sector levels
    // between the virtual ones, so matching beyond the ground state needs
    // depth: take the whole spectrum when the dense path allows it
    let real_dim = 1usize << code.n;
    let real_levels = if real_dim <= DENSE_LIMIT {
        real_dim
    } else {
        num_levels
    };
    let real_spec = eigenvalues(&SpectrumRequest::lowest(&real_h, real_levels))?;

    let vm = derive_virtual_model(code, bonds)?;
    let tfim = build_tfim_hamiltonian(&vm, cp)?;
    let sector: Vec<SectorProjector> = vm
        .parity_constraints
        .iter()
        .map(|support| {
            Ok(SectorProjector {
                operator: PauliString::z_on(vm.num_spins(), support)?,
                eigenvalue: 1,
            })
        })
        .collect::<Result<_, SpectraError>>()?;
    let virt_spec = eigenvalues(&SpectrumRequest {
        hamiltonian: &tfim,
        num_eigenvalues: num_levels.min(1 << vm.num_spins()),
        sector,
        method: Method::Auto,
        compute_vectors: false,
    })?;

    let mut consumed = vec![false; real_spec.eigenvalues.len()];
    let mut matches = Vec::new();
    let mut all_matched = true;
    for &v in &virt_spec.eigenvalues {
        let best = real_spec
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(i, _)| !consumed[*i])
            .min_by(|(_, a), (_, b)| {
                (*a - v).abs().partial_cmp(&(*b - v).abs()).unwrap()
            });
        match best {
            Some((i, &r)) if (r - v).abs() <= tol => {
                consumed[i] = true;
                matches.push(LevelMatch {
                    virtual_level: v,
                    real_level: Some(r),
                    delta: Some((r - v).abs()),
                });
            }
            _ => {
                all_matched = false;
                matches.push(LevelMatch {
                    virtual_level: v,
                    real_level: None,
                    delta: None,
                });
            }
        }
    }
    let e0_real = real_spec.ground_energy();
    let e0_virtual = virt_spec.ground_energy();
    let verdict = (e0_real - e0_virtual).abs() <= tol && all_matched;
    Ok(EquivalenceReport {
        code: format!(
            "{:?} on {} {}x{}",
            code.placement, code.lattice.kind, code.lattice.l1, code.lattice.l2
        ),
        couplings: cp,
        e0_real,
        e0_virtual_plus_offset: e0_virtual,
        low_spectrum_match: matches,
        verdict,
        tolerance: tol,
    })
}

/// Spread of the lowest `k` levels and the gap to level `k+1` of the real
/// perturbed-code spectrum.
pub fn degeneracy_splitting(
    code: &StabilizerCode,
    bonds: &BondSet,
    cp: CouplingParams,
    k: usize,
) -> Result<(f64, f64), SpectraError> {
    let h = build_perturbed_hamiltonian(code, bonds, cp)?;
    let spec = eigenvalues(&SpectrumRequest::lowest(&h, k + 1))?;
    let spread = spec.eigenvalues[k - 1] - spec.eigenvalues[0];
    let gap = spec.eigenvalues[k] - spec.eigenvalues[k - 1];
    Ok((spread, gap))
}

/// JSON export of a spectrum.
pub fn spectrum_json(
    model: &str,
    cp: CouplingParams,
    sector: Option<&str>,
    spectrum: &Spectrum,
) -> serde_json::Value {
    serde_json::json!({
        "schema": crate::SCHEMA,
        "model": model,
        "couplings": { "J": cp.j, "K": cp.k },
        "sector": sector,
        "method": spectrum.method_used,
        "eigenvalues": spectrum.eigenvalues,
        "residuals": spectrum.residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_toric_code;
    use crate::hamiltonians::ising_bonds;
    use crate::lattice::{build_lattice, LatticeKind};

    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn rand01(state: &mut u64) -> f64 {
        (splitmix(state) >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Random Hermitian term list: masks with even X-Z overlap.
    fn random_terms(n: usize, count: usize, seed: u64) -> HamiltonianTerms {
        let mut h = HamiltonianTerms::new(n);
        let mut s = seed;
        let mut added = 0;
        while added < count {
            let x = splitmix(&mut s) & ((1 << n) - 1);
            let z = splitmix(&mut s) & ((1 << n) - 1);
            if (x & z).count_ones() % 2 != 0 {
                continue;
            }
            let c = rand01(&mut s) - 0.5;
            let xs: Vec<usize> = (0..n).filter(|i| x >> i & 1 == 1).collect();
            let zs: Vec<usize> = (0..n).filter(|i| z >> i & 1 == 1).collect();
            h.add(c, PauliString::from_supports(n, &xs, &zs).unwrap())
                .unwrap();
            added += 1;
        }
        h
    }

    #[test]
    fn identity_term_scales() {
        let mut h = HamiltonianTerms::new(3);
        h.add(2.5, PauliString::identity(3)).unwrap();
        let v: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let out = matvec(&h, &v).unwrap();
        for (o, x) in out.iter().zip(&v) {
            assert_eq!(*o, 2.5 * x);
        }
    }

    #[test]
    fn single_z_eigenbasis() {
        let mut h = HamiltonianTerms::new(2);
        h.add(1.0, PauliString::z_on(2, &[0]).unwrap()).unwrap();
        // |00> (index 0) has Z_0 = +1; |01> (index 1, site 0 set) has -1
        let mut v = vec![0.0; 4];
        v[0] = 1.0;
        assert_eq!(matvec(&h, &v).unwrap()[0], 1.0);
        let mut v = vec![0.0; 4];
        v[1] = 1.0;
        assert_eq!(matvec(&h, &v).unwrap()[1], -1.0);
    }

    #[test]
    fn matvec_matches_dense_oracle() {
        let n = 8;
        let h = random_terms(n, 12, 7);
        let terms = compile(&h).unwrap();
        let basis = Basis::Full { n };
        let dim = 1 << n;
        // materialize densely
        let mut m = vec![vec![0.0; dim]; dim];
        for t in &terms {
            for col in 0..dim {
                let row = col ^ t.x_mask as usize;
                m[row][col] += t.coeff * parity_sign(col as u64 & t.z_mask);
            }
        }
        let mut s = 5u64;
        for _ in 0..3 {
            let v: Vec<f64> = (0..dim).map(|_| rand01(&mut s) - 0.5).collect();
            let mut fast = vec![0.0; dim];
            apply_terms(&terms, &basis, &v, &mut fast);
            for (row, mrow) in m.iter().enumerate() {
                let direct: f64 = mrow.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!((direct - fast[row]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matvec_is_hermitian() {
        let n = 8;
        let h = random_terms(n, 14, 11);
        let dim = 1 << n;
        let mut s = 3u64;
        for _ in 0..3 {
            let u: Vec<f64> = (0..dim).map(|_| rand01(&mut s) - 0.5).collect();
            let v: Vec<f64> = (0..dim).map(|_| rand01(&mut s) - 0.5).collect();
            let hu = matvec(&h, &u).unwrap();
            let hv = matvec(&h, &v).unwrap();
            let uhv: f64 = u.iter().zip(&hv).map(|(a, b)| a * b).sum();
            let huv: f64 = hu.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!((uhv - huv).abs() < 1e-10);
        }
    }

    #[test]
    fn single_spin_field_spectrum() {
        let mut h = HamiltonianTerms::new(1);
        h.add(-1.5, PauliString::z_on(1, &[0]).unwrap()).unwrap();
        let spec = eigenvalues(&SpectrumRequest::lowest(&h, 2)).unwrap();
        assert!((spec.eigenvalues[0] - -1.5).abs() < 1e-12);
        assert!((spec.eigenvalues[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn pure_code_and_pure_ising_limits() {
        // toric code on the 2x2 square torus: 8 qubits, dense
        let lat = build_lattice(LatticeKind::Square, 2, 2).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);

        // K = 0: ground energy -(number of generators), 4-fold degenerate
        let h0 = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(1.0, 0.0).unwrap())
            .unwrap();
        let spec = eigenvalues(&SpectrumRequest::lowest(&h0, 5)).unwrap();
        for i in 0..4 {
            assert!((spec.eigenvalues[i] - -8.0).abs() < 1e-9, "level {i}");
        }
        assert!(spec.eigenvalues[4] > -8.0 + 1.9);

        // J = 0: pure ferromagnet, E0 = -K * #bonds, two-fold degenerate
        let hi = build_perturbed_hamiltonian(&code, &bonds, CouplingParams::new(0.0, 0.7).unwrap())
            .unwrap();
        let spec = eigenvalues(&SpectrumRequest::lowest(&hi, 3)).unwrap();
        let expect = -0.7 * bonds.bonds.len() as f64;
        assert!((spec.eigenvalues[0] - expect).abs() < 1e-9);
        assert!((spec.eigenvalues[1] - expect).abs() < 1e-9);
        assert!(spec.eigenvalues[2] > expect + 1e-6);
    }

    #[test]
    fn dense_and_iterative_agree() {
        let n = 10;
        let h = random_terms(n, 20, 23);
        let dense = eigenvalues(&SpectrumRequest {
            hamiltonian: &h,
            num_eigenvalues: 6,
            sector: Vec::new(),
            method: Method::Dense,
            compute_vectors: false,
        })
        .unwrap();
        let iter = eigenvalues(&SpectrumRequest {
            hamiltonian: &h,
            num_eigenvalues: 6,
            sector: Vec::new(),
            method: Method::Iterative,
            compute_vectors: false,
        })
        .unwrap();
        for i in 0..6 {
            assert!(
                (dense.eigenvalues[i] - iter.eigenvalues[i]).abs() < 1e-8,
                "level {i}: {} vs {}",
                dense.eigenvalues[i],
                iter.eigenvalues[i]
            );
        }
    }

    #[test]
    fn sector_restriction_and_idempotence() {
        // 4-spin TFIM-like model with a global parity sector
        let mut h = HamiltonianTerms::new(4);
        for p in 0..4 {
            h.add(-1.0, PauliString::z_on(4, &[p]).unwrap()).unwrap();
        }
        for p in 0..4 {
            h.add(-0.4, PauliString::x_on(4, &[p, (p + 1) % 4]).unwrap())
                .unwrap();
        }
        let parity = SectorProjector {
            operator: PauliString::z_on(4, &[0, 1, 2, 3]).unwrap(),
            eigenvalue: 1,
        };
        let once = eigenvalues(&SpectrumRequest {
            hamiltonian: &h,
            num_eigenvalues: 4,
            sector: vec![parity.clone()],
            method: Method::Dense,
            compute_vectors: false,
        })
        .unwrap();
        let twice = eigenvalues(&SpectrumRequest {
            hamiltonian: &h,
            num_eigenvalues: 4,
            sector: vec![parity.clone(), parity.clone()],
            method: Method::Dense,
            compute_vectors: false,
        })
        .unwrap();
        assert_eq!(once.eigenvalues, twice.eigenvalues);
        // sector spectrum is a subset of the full spectrum
        let full = eigenvalues(&SpectrumRequest {
            hamiltonian: &h,
            num_eigenvalues: 16,
            sector: Vec::new(),
            method: Method::Dense,
            compute_vectors: false,
        })
        .unwrap();
        for v in &once.eigenvalues {
            assert!(full.eigenvalues.iter().any(|f| (f - v).abs() < 1e-9));
        }
    }

    #[test]
    fn sector_rejects_non_diagonal_and_anticommuting() {
        let mut h = HamiltonianTerms::new(2);
        h.add(-1.0, PauliString::x_on(2, &[0]).unwrap()).unwrap();
        let bad = SectorProjector {
            operator: PauliString::x_on(2, &[0]).unwrap(),
            eigenvalue: 1,
        };
        assert!(matches!(
            eigenvalues(&SpectrumRequest {
                hamiltonian: &h,
                num_eigenvalues: 1,
                sector: vec![bad],
                method: Method::Dense,
                compute_vectors: false,
            }),
            Err(SpectraError::SectorNotDiagonal { .. })
        ));
        let anticommuting = SectorProjector {
            operator: PauliString::z_on(2, &[0]).unwrap(),
            eigenvalue: 1,
        };
        assert!(matches!(
            eigenvalues(&SpectrumRequest {
                hamiltonian: &h,
                num_eigenvalues: 1,
                sector: vec![anticommuting],
                method: Method::Dense,
                compute_vectors: false,
            }),
            Err(SpectraError::SectorAnticommutes { .. })
        ));
    }

    #[test]
    fn equivalence_on_toric_square_2x2() {
        let lat = build_lattice(LatticeKind::Square, 2, 2).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);
        // closed-form limit: K = 0 gives E0 = -(V + F) on both sides
        let report =
            verify_equivalence(&code, &bonds, CouplingParams::new(1.0, 0.0).unwrap(), 3, 1e-9)
                .unwrap();
        assert!(report.verdict, "{report:?}");
        assert!((report.e0_real - -8.0).abs() < 1e-9);
        // perturbed
        for k in [0.05, 0.2, 0.5] {
            let report =
                verify_equivalence(&code, &bonds, CouplingParams::new(1.0, k).unwrap(), 3, 1e-8)
                    .unwrap();
            assert!(report.verdict, "K = {k}: {report:?}");
        }
    }

    #[test]
    fn splitting_vanishes_at_zero_perturbation() {
        let lat = build_lattice(LatticeKind::Square, 2, 2).unwrap();
        let code = build_toric_code(&lat);
        let bonds = ising_bonds(&code);
        let (spread, gap) =
            degeneracy_splitting(&code, &bonds, CouplingParams::new(1.0, 0.0).unwrap(), 4)
                .unwrap();
        assert!(spread.abs() < 1e-9);
        // constraint products force violated generators to come in pairs,
        // so the cheapest excitation flips two of them
        assert!((gap - 4.0).abs() < 1e-9);
    }
}

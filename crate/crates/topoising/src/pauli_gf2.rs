//! Binary-symplectic Pauli algebra and GF(2) linear algebra.
//!
//! An n-qubit Pauli operator is stored as two packed support vectors (X part
//! and Z part) plus a real sign in {+1, -1}. Every operator handled by this
//! crate is a product of only-X or only-Z factors, so no imaginary phase ever
//! arises; mixed products fix their sign through the normal ordering "all X
//! factors to the left of all Z factors".

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("site index {site} out of range for {n} qubits")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
}

/// Packed bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_sites(len: usize, sites: &[usize]) -> Result<Self, PauliError> {
        let mut v = Gf2Vec::zeros(len);
        for &s in sites {
            if s >= len {
                return Err(PauliError::SiteOutOfRange { site: s, n: len });
            }
            v.set(s, true);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    /// popcount(self AND other).
    pub fn and_count(&self, other: &Gf2Vec) -> usize {
        assert_eq!(self.len, other.len, "length mismatch in and_count");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Lowest set bit index, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Packs the first 64 bits into a machine word; `None` if len > 64.
    pub fn as_u64(&self) -> Option<u64> {
        if self.len > 64 {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &Gf2Vec) -> Gf2Vec {
        let mut v = Gf2Vec::zeros(self.len + other.len);
        for i in self.support() {
            v.set(i, true);
        }
        for i in other.support() {
            v.set(self.len + i, true);
        }
        v
    }
}

impl std::fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// An n-qubit Pauli operator `sign * X(x_support) * Z(z_support)`.
///
/// The stored pair of supports refers to the normal-ordered form with all X
/// factors to the left of all Z factors; a qubit present in both supports
/// carries the product `XZ` on that site.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Gf2Vec,
    z: Gf2Vec,
    negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: Gf2Vec::zeros(n),
            z: Gf2Vec::zeros(n),
            negative: false,
        }
    }

    /// Builds `X(x_sites) * Z(z_sites)` with sign +1.
    pub fn from_supports(n: usize, x_sites: &[usize], z_sites: &[usize]) -> Result<Self, PauliError> {
        Ok(PauliString {
            n,
            x: Gf2Vec::from_sites(n, x_sites)?,
            z: Gf2Vec::from_sites(n, z_sites)?,
            negative: false,
        })
    }

    pub fn x_on(n: usize, sites: &[usize]) -> Result<Self, PauliError> {
        Self::from_supports(n, sites, &[])
    }

    pub fn z_on(n: usize, sites: &[usize]) -> Result<Self, PauliError> {
        Self::from_supports(n, &[], sites)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_support(&self) -> &Gf2Vec {
        &self.x
    }

    pub fn z_support(&self) -> &Gf2Vec {
        &self.z
    }

    /// +1 or -1.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// The same operator with sign forced to +1.
    pub fn positive(&self) -> PauliString {
        PauliString {
            negative: false,
            ..self.clone()
        }
    }

    /// Number of sites where the operator acts non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .words
            .iter()
            .zip(&self.z.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// Symplectic-form commutation test: true iff the operators commute.
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let parity = (self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2;
        Ok(parity == 0)
    }

    /// Operator product `self * other` in normal-ordered form.
    ///
    /// Supports are the componentwise XOR; the sign picks up a factor
    /// `(-1)^(|self.z AND other.x|)` from commuting the right factor's X part
    /// through the left factor's Z part.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let reorder = self.z.and_count(&other.x) % 2 == 1;
        Ok(PauliString {
            n: self.n,
            x,
            z,
            negative: self.negative ^ other.negative ^ reorder,
        })
    }

    /// The length-2n binary row `[x_support | z_support]`.
    pub fn symplectic_row(&self) -> Gf2Vec {
        self.x.concat(&self.z)
    }
}

impl std::fmt::Debug for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for i in 0..self.n {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'W', // normal-ordered XZ on one site
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix stored as packed rows.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vec>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn from_rows(rows: Vec<Gf2Vec>) -> Self {
        let cols = rows.first().map_or(0, Gf2Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have equal length"
        );
        Gf2Matrix { rows, cols }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: vec![Gf2Vec::zeros(cols); rows],
            cols,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &Gf2Vec {
        &self.rows[r]
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Row-echelon elimination. Columns are scanned in ascending order and
    /// the pivot row is always the lowest-index candidate, so the result is
    /// reproducible. Returns the echelon rows and the pivot column of each.
    fn echelon(&self) -> (Vec<Gf2Vec>, Vec<usize>) {
        let mut rows: Vec<Gf2Vec> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (rows, pivots)
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.echelon().0.len()
    }

    /// Basis of the right kernel: all v with M v = 0. Count = cols - rank.
    pub fn nullspace(&self) -> Vec<Gf2Vec> {
        let (rows, pivots) = self.echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = Gf2Vec::zeros(self.cols);
            v.set(f, true);
            // each echelon row fixes its pivot coordinate
            for (r, &p) in rows.iter().zip(&pivots) {
                if r.get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &Gf2Vec) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let (rows, pivots) = self.echelon();
        let mut rem = v.clone();
        for (r, &p) in rows.iter().zip(&pivots) {
            if rem.get(p) {
                rem.xor_assign(r);
            }
        }
        rem.is_zero()
    }

    /// Expresses `v` as an XOR of rows, returning the row index set, or
    /// `None` when `v` is outside the row space.
    pub fn decompose_in_rows(&self, v: &Gf2Vec) -> Option<Vec<usize>> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        // augment each row with an indicator of which original rows it sums
        let m = self.rows.len();
        let mut aug: Vec<Gf2Vec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut ind = Gf2Vec::zeros(m);
                ind.set(i, true);
                r.concat(&ind)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.cols {
            let Some(p) = (next..aug.len()).find(|&r| aug[r].get(col)) else {
                continue;
            };
            aug.swap(next, p);
            let pivot_row = aug[next].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == aug.len() {
                break;
            }
        }
        let mut rem = v.clone();
        let mut combo = Gf2Vec::zeros(m);
        for (row, &p) in aug.iter().zip(&pivots) {
            if rem.get(p) {
                for c in 0..self.cols {
                    if row.get(c) {
                        let cur = rem.get(c);
                        rem.set(c, !cur);
                    }
                }
                for i in 0..m {
                    if row.get(self.cols + i) {
                        let cur = combo.get(i);
                        combo.set(i, !cur);
                    }
                }
            }
        }
        if rem.is_zero() {
            Some(combo.support())
        } else {
            None
        }
    }
}

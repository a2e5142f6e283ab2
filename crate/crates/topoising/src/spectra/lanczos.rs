//! Iterative lowest-eigenpair solver: Krylov expansion with full
//! reorthogonalization, thick restarts, and deflation locking.
//!
//! The basis is expanded by the residual of the current best Ritz pair, the
//! projected matrix is kept exact (`H_ij = <v_i, A v_j>`), and converged
//! eigenvectors are locked and projected out of all later iterations, so
//! degenerate multiplets are resolved as repeated finds. Everything is
//! deterministic: start vectors come from a seeded generator.

use faer::Mat;

#[derive(Debug, Clone)]
pub struct LanczosOptions {
    /// Basis size at which a thick restart compresses to the best Ritz
    /// vectors.
    pub max_basis: usize,
    /// Ritz vectors kept across a restart.
    pub keep: usize,
    /// Total matvec budget before giving up.
    pub max_matvecs: usize,
    /// Residual tolerance relative to the operator scale.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            max_basis: 72,
            keep: 12,
            max_matvecs: 200_000,
            tol: 1e-10,
            seed: 0x746f_706f,
        }
    }
}

/// Failure report: whatever converged plus the residuals at the end.
#[derive(Debug, Clone)]
pub struct NonConvergence {
    pub converged: Vec<f64>,
    pub residuals: Vec<f64>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn seeded_vector(dim: usize, seed: u64) -> Vec<f64> {
    let mut state = seed;
    (0..dim)
        .map(|_| (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Removes the components of `v` along every vector in `others` (one
/// classical Gram-Schmidt pass).
fn orthogonalize(v: &mut [f64], others: &[Vec<f64>]) {
    for o in others {
        let c = dot(v, o);
        axpy(-c, o, v);
    }
}

/// Eigen-decomposition of the small projected matrix, ascending.
fn small_eigen(h: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m = h.len();
    let mut mat = Mat::<f64>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            mat[(i, j)] = h[i][j];
        }
    }
    let eig = mat
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("projected matrix eigendecomposition");
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.S()[a].partial_cmp(&eig.S()[b]).unwrap());
    let values = order.iter().map(|&i| eig.S()[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..m).map(|r| eig.U()[(r, i)]).collect())
        .collect();
    (values, vectors)
}

/// Lowest `k` eigenpairs of a symmetric operator given only its action.
///
/// `scale` should bound the spectral radius (a 1-norm of the coefficients
/// works); it calibrates the convergence test.
pub fn lowest_eigenpairs<F>(
    dim: usize,
    k: usize,
    scale: f64,
    opts: &LanczosOptions,
    mut apply: F,
) -> Result<(Vec<f64>, Vec<Vec<f64>>, Vec<f64>), NonConvergence>
where
    F: FnMut(&[f64], &mut [f64]),
{
    assert!(k <= dim, "cannot request more eigenpairs than the dimension");
    let scale = scale.max(1.0);
    let tol = opts.tol * scale;
    let mut locked_vals: Vec<f64> = Vec::new();
    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut locked_res: Vec<f64> = Vec::new();
    let mut matvecs = 0usize;

    let mut apply_counted = |v: &[f64], out: &mut [f64], matvecs: &mut usize| {
        out.fill(0.0);
        apply(v, out);
        *matvecs += 1;
    };

    while locked_vals.len() < k {
        // fresh start orthogonal to everything already locked
        let mut v0 = seeded_vector(dim, opts.seed ^ (locked_vals.len() as u64) << 32);
        orthogonalize(&mut v0, &locked_vecs);
        let n0 = norm(&v0);
        if n0 < 1e-12 {
            // the locked set spans nearly everything reachable
            return Err(NonConvergence {
                converged: locked_vals,
                residuals: locked_res,
            });
        }
        v0.iter_mut().for_each(|x| *x /= n0);

        let mut basis: Vec<Vec<f64>> = vec![v0];
        let mut images: Vec<Vec<f64>> = Vec::new();
        let mut proj: Vec<Vec<f64>> = Vec::new(); // lower-triangular-ish dense
        {
            let mut av = vec![0.0; dim];
            apply_counted(&basis[0], &mut av, &mut matvecs);
            proj.push(vec![dot(&basis[0], &av)]);
            images.push(av);
        }

        'inner: loop {
            let (vals, vecs) = small_eigen(&proj);
            let (theta, coeff) = (vals[0], &vecs[0]);
            let mut y = vec![0.0; dim];
            let mut ay = vec![0.0; dim];
            for (c, (b, img)) in coeff.iter().zip(basis.iter().zip(&images)) {
                axpy(*c, b, &mut y);
                axpy(*c, img, &mut ay);
            }
            let mut resid = ay.clone();
            axpy(-theta, &y, &mut resid);
            // locked directions do not count against the residual
            orthogonalize(&mut resid, &locked_vecs);
            let res_norm = norm(&resid);

            if res_norm <= tol {
                let ny = norm(&y);
                y.iter_mut().for_each(|x| *x /= ny);
                locked_vals.push(theta);
                locked_vecs.push(y);
                locked_res.push(res_norm);
                break 'inner;
            }
            if matvecs >= opts.max_matvecs {
                return Err(NonConvergence {
                    converged: locked_vals,
                    residuals: vec![res_norm],
                });
            }

            if basis.len() >= opts.max_basis {
                // thick restart: compress to the lowest Ritz vectors
                let keep = opts.keep.min(basis.len() - 1).max(1);
                let mut new_basis = Vec::with_capacity(keep);
                let mut new_images = Vec::with_capacity(keep);
                for c in vecs.iter().take(keep) {
                    let mut b = vec![0.0; dim];
                    let mut ab = vec![0.0; dim];
                    for (ci, (bv, iv)) in c.iter().zip(basis.iter().zip(&images)) {
                        axpy(*ci, bv, &mut b);
                        axpy(*ci, iv, &mut ab);
                    }
                    new_basis.push(b);
                    new_images.push(ab);
                }
                // re-orthonormalize the compressed basis for safety
                for i in 0..new_basis.len() {
                    let (head, tail) = new_basis.split_at_mut(i);
                    let b = &mut tail[0];
                    orthogonalize(b, head);
                    orthogonalize(b, &locked_vecs);
                    let nb = norm(b);
                    if nb < 1e-12 {
                        continue;
                    }
                    b.iter_mut().for_each(|x| *x /= nb);
                }
                // recompute exact projections (keep is small)
                basis = new_basis;
                images.clear();
                for b in &basis {
                    let mut ab = vec![0.0; dim];
                    apply_counted(b, &mut ab, &mut matvecs);
                    images.push(ab);
                }
                proj = (0..basis.len())
                    .map(|i| (0..basis.len()).map(|j| dot(&basis[i], &images[j])).collect())
                    .collect();
                continue 'inner;
            }

            // expand by the residual direction, fully reorthogonalized
            let mut w = resid;
            orthogonalize(&mut w, &basis);
            orthogonalize(&mut w, &locked_vecs);
            orthogonalize(&mut w, &basis); // second pass against drift
            let nw = norm(&w);
            if nw < 1e-10 * scale.max(res_norm) {
                // Krylov space exhausted at this accuracy: accept the pair
                let ny = norm(&y);
                y.iter_mut().for_each(|x| *x /= ny);
                locked_vals.push(theta);
                locked_vecs.push(y);
                locked_res.push(res_norm);
                break 'inner;
            }
            w.iter_mut().for_each(|x| *x /= nw);
            let mut aw = vec![0.0; dim];
            apply_counted(&w, &mut aw, &mut matvecs);
            let mut row: Vec<f64> = basis.iter().map(|b| dot(b, &aw)).collect();
            row.push(dot(&w, &aw));
            for (i, p) in proj.iter_mut().enumerate() {
                p.push(row[i]);
            }
            proj.push(row);
            basis.push(w);
            images.push(aw);
        }
    }

    // locked values may come out slightly out of order when degenerate
    let mut order: Vec<usize> = (0..locked_vals.len()).collect();
    order.sort_by(|&a, &b| locked_vals[a].partial_cmp(&locked_vals[b]).unwrap());
    let vals = order.iter().map(|&i| locked_vals[i]).collect();
    let vecs = order.iter().map(|&i| locked_vecs[i].clone()).collect();
    let res = order.iter().map(|&i| locked_res[i]).collect();
    Ok((vals, vecs, res))
}

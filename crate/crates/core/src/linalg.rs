//! Small dense helpers shared by the geometry modules.

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Singular-value rank analysis of a complex matrix.
#[derive(Debug, Clone)]
pub struct RankAnalysis {
    pub rank: usize,
    /// Orthonormal basis of the (right) kernel, one column per vector.
    pub kernel: DMatrix<C64>,
    /// Singular values, descending, padded to the column count.
    pub singular_values: Vec<f64>,
    /// Absolute threshold actually applied.
    pub threshold: f64,
    /// A singular value sits within `band` of the threshold on either side.
    pub ambiguous: bool,
}

/// Rank and kernel of `m` with singular values below `rel_tol * sigma_max`
/// counted as zero.
///
/// Rows are zero-padded when there are fewer rows than columns so that the
/// full right-singular basis is available.
pub fn rank_analysis(m: &DMatrix<C64>, rel_tol: f64, band: f64) -> RankAnalysis {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let threshold = rel_tol * sigma_max;
    let rank = sv.iter().filter(|&&s| s > threshold).count();
    let ambiguous = sigma_max > 0.0
        && sv
            .iter()
            .any(|&s| s > threshold / band && s < threshold * band);
    let kernel_idx: Vec<usize> = order[rank..].to_vec();
    let mut kernel = DMatrix::zeros(cols, kernel_idx.len());
    for (c, &i) in kernel_idx.iter().enumerate() {
        for j in 0..cols {
            kernel[(j, c)] = v_t[(i, j)].conj();
        }
    }
    RankAnalysis {
        rank,
        kernel,
        singular_values: sv,
        threshold,
        ambiguous,
    }
}

/// Orthonormal basis of the column span of a real matrix.
pub fn column_basis(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > rel_tol * sigma_max && sigma_max > 0.0)
        .collect();
    DMatrix::from_fn(m.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

/// Orthonormal basis of the orthogonal complement of the columns of `q`
/// (which must be orthonormal) inside R^n.
pub fn orthogonal_complement(q: &DMatrix<f64>) -> DMatrix<f64> {
    let n = q.nrows();
    let proj = DMatrix::<f64>::identity(n, n) - q * q.transpose();
    column_basis(&proj, 1e-8)
}

/// Largest principal angle (radians) between two subspaces given by
/// orthonormal column bases of equal dimension.
pub fn max_subspace_angle(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.ncols() != b.ncols() {
        return std::f64::consts::FRAC_PI_2;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    // The smallest singular value of A^T B is cos of the largest angle;
    // sin via the projection residual is better conditioned near zero.
    let resid = b - a * (a.transpose() * b);
    let s = resid.svd(false, false).singular_values;
    s.iter().cloned().fold(0.0, f64::max).min(1.0).asin()
}

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a.kronecker(b)
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &DVector<C64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖U†U − I‖_max.
pub fn unitarity_residual(u: &DMatrix<C64>) -> f64 {
    let id = DMatrix::<C64>::identity(u.ncols(), u.ncols());
    max_abs(&(u.adjoint() * u - id))
}

/// Least-squares distance of `target` from the span of `basis` (columns),
/// measured in the Euclidean norm of the flattened vectors.
pub fn distance_from_span(basis: &DMatrix<f64>, target: &DVector<f64>) -> f64 {
    if basis.ncols() == 0 {
        return target.norm();
    }
    let q = column_basis(basis, 1e-10);
    let proj = &q * (q.transpose() * target);
    (target - proj).norm()
}

//! Singular values, numeric rank, and null spaces via one-sided Jacobi.

use num_complex::Complex;

use super::mat::CMat;
use super::scalar::Scalar;
use super::LinalgError;

/// Outcome of one-sided Jacobi on the columns of B: B V = Q diag(sigma)
/// with V unitary and sigma descending.
#[derive(Clone, Debug)]
pub struct SvdResult<S: Scalar> {
    /// Singular values in descending order.
    pub singular_values: Vec<S>,
    /// Right singular vectors as columns, matching `singular_values`.
    pub right_vectors: CMat<S>,
}

const MAX_SWEEPS: usize = 64;

/// One-sided Jacobi SVD. Orthogonalizes column pairs of a working copy of
/// `b`; accumulated rotations give the right singular vectors. Small
/// singular values come out at high relative accuracy, which is what the
/// rank and null-space probes rely on.
pub fn svd_jacobi<S: Scalar>(b: &CMat<S>) -> Result<SvdResult<S>, LinalgError> {
    let (n, m) = (b.rows(), b.cols());
    let mut w = b.clone();
    let mut v = CMat::identity(m);
    if m == 0 {
        return Ok(SvdResult { singular_values: vec![], right_vectors: v });
    }
    let tol = S::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..m {
            for q in (p + 1)..m {
                let mut app = S::zero();
                let mut aqq = S::zero();
                let mut apq = Complex::new(S::zero(), S::zero());
                for i in 0..n {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    app = app + wp.norm_sqr();
                    aqq = aqq + wq.norm_sqr();
                    apq = apq + wp.conj() * wq;
                }
                let mag = apq.norm();
                if mag <= tol * (app * aqq).sqrt() || mag == S::zero() {
                    continue;
                }
                rotated = true;
                // Diagonalize the 2x2 Gram [[app, apq],[conj(apq), aqq]].
                let phase = apq / Complex::new(mag, S::zero());
                let tau = (aqq - app) / (S::of(2.0) * mag);
                let t = {
                    let sgn = if tau >= S::zero() { S::one() } else { -S::one() };
                    sgn / (tau.abs() + (S::one() + tau * tau).sqrt())
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = t * c;
                let cc = Complex::new(c, S::zero());
                let upq = Complex::new(s, S::zero());
                let uqp = -upq * phase.conj();
                let uqq = cc * phase.conj();
                for i in 0..n {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = wp * cc + wq * uqp;
                    w[(i, q)] = wp * upq + wq * uqq;
                }
                for i in 0..m {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * cc + vq * uqp;
                    v[(i, q)] = vp * upq + vq * uqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<S> = (0..m)
        .map(|j| {
            (0..n)
                .map(|i| w[(i, j)].norm_sqr())
                .fold(S::zero(), |a, x| a + x)
                .sqrt()
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    norms.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut right = CMat::zeros(m, m);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..m {
            right[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(SvdResult { singular_values: norms, right_vectors: right })
}

/// Stacks a family of same-shape matrices as columns of one tall matrix.
fn stack_columns<S: Scalar>(family: &[CMat<S>]) -> Result<CMat<S>, LinalgError> {
    let first = &family[0];
    let len = first.rows() * first.cols();
    let mut out = CMat::zeros(len, family.len());
    for (j, m) in family.iter().enumerate() {
        if m.rows() != first.rows() || m.cols() != first.cols() {
            return Err(LinalgError::ShapeMismatch {
                context: "numeric_rank family members differ in shape".into(),
            });
        }
        for (i, &z) in m.data().iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    Ok(out)
}

/// Rank of a family of matrices, seen as vectors: the number of singular
/// values above `tol` times the largest one. An all-zero family has rank 0.
pub fn numeric_rank<S: Scalar>(family: &[CMat<S>], tol: S) -> Result<usize, LinalgError> {
    if family.is_empty() {
        return Ok(0);
    }
    if tol <= S::zero() {
        return Err(LinalgError::ShapeMismatch {
            context: "numeric_rank tolerance must be positive".into(),
        });
    }
    let svd = svd_jacobi(&stack_columns(family)?)?;
    let top = svd.singular_values.first().copied().unwrap_or_else(S::zero);
    if top == S::zero() {
        return Ok(0);
    }
    Ok(svd
        .singular_values
        .iter()
        .filter(|&&s| s > tol * top)
        .count())
}

/// Orthonormal coefficient vectors spanning the numeric null space of the
/// family-as-columns matrix: columns v with ||B v|| <= tol * sigma_max.
pub fn null_space<S: Scalar>(b: &CMat<S>, tol: S) -> Result<Vec<Vec<Complex<S>>>, LinalgError> {
    let m = b.cols();
    let svd = svd_jacobi(b)?;
    let top = svd.singular_values.first().copied().unwrap_or_else(S::zero);
    let mut out = Vec::new();
    for (j, &s) in svd.singular_values.iter().enumerate() {
        if top == S::zero() || s <= tol * top {
            let col = (0..m).map(|i| svd.right_vectors[(i, j)]).collect();
            out.push(col);
        }
    }
    Ok(out)
}

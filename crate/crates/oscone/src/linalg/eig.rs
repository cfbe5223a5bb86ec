//! Hermitian eigendecomposition by cyclic Jacobi rotations.

use num_complex::Complex;

use super::mat::CMat;
use super::scalar::Scalar;
use super::LinalgError;

/// Spectral decomposition H = U diag(eigenvalues) U*.
#[derive(Clone, Debug)]
pub struct EigDecomp<S: Scalar> {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<S>,
    /// Unitary whose columns are the matching eigenvectors.
    pub eigenvectors: CMat<S>,
}

impl<S: Scalar> EigDecomp<S> {
    pub fn min(&self) -> S {
        self.eigenvalues.first().copied().unwrap_or_else(S::zero)
    }

    pub fn max(&self) -> S {
        self.eigenvalues.last().copied().unwrap_or_else(S::zero)
    }

    /// Rebuilds U f(Λ) U* for a spectral function f.
    pub fn apply(&self, f: impl Fn(S) -> S) -> CMat<S> {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let mut out = CMat::zeros(n, n);
        for k in 0..n {
            let lam = f(self.eigenvalues[k]);
            if lam == S::zero() {
                continue;
            }
            for i in 0..n {
                let ui = u[(i, k)] * Complex::new(lam, S::zero());
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + ui * u[(j, k)].conj();
                }
            }
        }
        out
    }
}

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix.
///
/// The input must be Hermitian to relative tolerance 1e-12; the iteration
/// works on the Hermitian part and stops once all off-diagonal mass is below
/// machine-level relative to the Frobenius norm.
pub fn hermitian_eig<S: Scalar>(h: &CMat<S>) -> Result<EigDecomp<S>, LinalgError> {
    if !h.is_square() {
        return Err(LinalgError::ShapeMismatch {
            context: format!("hermitian_eig needs a square matrix, got {}x{}", h.rows(), h.cols()),
        });
    }
    let scale = S::one().max(h.norm());
    if h.hermitian_defect() > S::of(1e-12) * scale {
        return Err(LinalgError::NonHermitian);
    }
    let n = h.rows();
    let mut a = h.hermitize();
    let mut v = CMat::identity(n);
    if n <= 1 {
        let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(EigDecomp { eigenvalues, eigenvectors: v });
    }

    let norm = a.norm().max(S::epsilon());
    let stop = S::epsilon() * S::of(0.5) * norm;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, norm);
            }
        }
    }
    if !converged {
        // Final recheck: quadratic convergence can land exactly on the cap.
        let mut off = S::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() > S::of(1e-12) * norm {
            return Err(LinalgError::NoConvergence {
                context: "Jacobi eigeniteration".into(),
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<S> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());
    let eigenvalues: Vec<S> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = CMat::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(EigDecomp { eigenvalues, eigenvectors })
}

/// One Jacobi rotation zeroing the (p,q) entry: a phase turns the pivot real,
/// then a real rotation annihilates it. Updates A <- U* A U and V <- V U.
fn rotate<S: Scalar>(a: &mut CMat<S>, v: &mut CMat<S>, p: usize, q: usize, norm: S) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= S::epsilon() * S::of(0.01) * norm {
        return;
    }
    let n = a.rows();
    let phase = apq / Complex::new(mag, S::zero()); // e^{i theta}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (S::of(2.0) * mag);
    let t = {
        let s = if tau >= S::zero() { S::one() } else { -S::one() };
        s / (tau.abs() + (S::one() + tau * tau).sqrt())
    };
    let c = S::one() / (S::one() + t * t).sqrt();
    let s = t * c;

    // Plane transform U restricted to (p,q):
    //   U[p][p] = c, U[p][q] = s, U[q][p] = -s*conj(phase), U[q][q] = c*conj(phase)
    let cc = Complex::new(c, S::zero());
    let ss = Complex::new(s, S::zero());
    let upq = ss;
    let uqp = -ss * phase.conj();
    let uqq = cc * phase.conj();

    // Row update: rows p,q of A <- U* A.
    for j in 0..n {
        let rp = a[(p, j)];
        let rq = a[(q, j)];
        a[(p, j)] = cc * rp + uqp.conj() * rq;
        a[(q, j)] = upq.conj() * rp + uqq.conj() * rq;
    }
    // Column update: cols p,q of A <- A U, and accumulate V <- V U.
    for i in 0..n {
        let cp = a[(i, p)];
        let cq = a[(i, q)];
        a[(i, p)] = cp * cc + cq * uqp;
        a[(i, q)] = cp * upq + cq * uqq;
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * cc + vq * uqp;
        v[(i, q)] = vp * upq + vq * uqq;
    }
    // Pin the annihilated pair and keep the diagonal real.
    a[(p, q)] = Complex::new(S::zero(), S::zero());
    a[(q, p)] = Complex::new(S::zero(), S::zero());
    a[(p, p)] = Complex::new(a[(p, p)].re, S::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, S::zero());
}

/// Frobenius-nearest positive semidefinite matrix: Hermitian part with
/// negative eigenvalues clipped to zero.
pub fn psd_project<S: Scalar>(h: &CMat<S>) -> Result<CMat<S>, LinalgError> {
    let eig = hermitian_eig(h)?;
    if eig.min() >= S::zero() {
        return Ok(h.hermitize());
    }
    Ok(eig.apply(|lam| lam.max(S::zero())))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<S: Scalar>(h: &CMat<S>) -> Result<S, LinalgError> {
    Ok(hermitian_eig(h)?.min())
}

//! Symmetric tridiagonal eigensolver.
//!
//! Implicit-shift QL for the full spectrum (O(n^2) values-only, O(n^3)
//! with vectors), a Sturm-count bisection for the lowest eigenvalue as an
//! independent cross-check, and inverse iteration with a partial-pivoting
//! band solve for a single eigenvector. Large oracle grids take the
//! values-only path plus inverse iteration; the O(n^3) accumulation is
//! only worth it on small matrices.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix: `diag` holds the n diagonal entries,
/// `offdiag` the n-1 entries of the first sub/superdiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix<R: Real> {
    pub diag: Vec<R>,
    pub offdiag: Vec<R>,
}

impl<R: Real> TridiagonalMatrix<R> {
    pub fn new(diag: Vec<R>, offdiag: Vec<R>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParams(format!(
                "tridiagonal shape mismatch: {} diagonal vs {} off-diagonal entries",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// y = M x
    pub fn apply(&self, x: &[R]) -> Vec<R> {
        let n = self.n();
        let mut y = vec![R::zero(); n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc = acc + self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc = acc + self.offdiag[i] * x[i + 1];
            }
            y[i] = acc;
        }
        y
    }

    /// Max row sum, an upper bound on the spectral radius.
    pub fn norm_bound(&self) -> R {
        let n = self.n();
        let mut best = R::zero();
        for i in 0..n {
            let mut row = self.diag[i].abs();
            if i > 0 {
                row = row + self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                row = row + self.offdiag[i].abs();
            }
            best = best.max(row);
        }
        best
    }
}

/// Full spectrum of a symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<R: Real> {
    /// Ascending eigenvalues.
    pub values: Vec<R>,
    /// Orthonormal eigenvectors matching `values`, when requested. Each
    /// vector's largest-magnitude component is positive, which pins the
    /// sign deterministically.
    pub vectors: Option<Vec<Vec<R>>>,
}

/// Implicit-shift QL iteration. `want_vectors` switches on the O(n^3)
/// rotation accumulation; leave it off for large matrices and recover
/// single vectors with [`inverse_iteration`].
pub fn eig_tridiagonal<R: Real>(
    m: &TridiagonalMatrix<R>,
    want_vectors: bool,
) -> Result<Eigen<R>> {
    let n = m.n();
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(R::zero());
    let mut z: Option<Vec<Vec<R>>> = want_vectors.then(|| {
        let mut id = vec![vec![R::zero(); n]; n];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = R::one();
        }
        id
    });

    let two = R::of(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible subdiagonal element splitting the matrix.
            let mut split = l;
            while split < n - 1 {
                let dd = d[split].abs() + d[split + 1].abs();
                if e[split].abs() <= R::epsilon() * dd {
                    break;
                }
                split += 1;
            }
            if split == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenNonConvergence { index: l });
            }

            // Wilkinson-style shift from the leading 2x2.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(R::one());
            g = d[split] - d[l] + e[l] / (g + r.abs().copysign(g));
            let mut s = R::one();
            let mut c = R::one();
            let mut p = R::zero();
            let mut underflow = false;
            for i in (l..split).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == R::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[split] = R::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_mut() {
                    for row in z.iter_mut() {
                        let f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[split] = R::zero();
        }
    }

    // Sort ascending, carrying vectors along, then pin signs.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values: Vec<R> = order.iter().map(|&j| d[j]).collect();
    let vectors = z.map(|z| {
        order
            .iter()
            .map(|&j| {
                let mut v: Vec<R> = z.iter().map(|row| row[j]).collect();
                fix_sign(&mut v);
                v
            })
            .collect()
    });
    Ok(Eigen { values, vectors })
}

fn fix_sign<R: Real>(v: &mut [R]) {
    let mut idx = 0;
    let mut best = R::zero();
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < R::zero() {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Number of eigenvalues strictly below `x`, from the Sturm sequence of
/// leading-principal-minor pivots.
pub fn sturm_count<R: Real>(m: &TridiagonalMatrix<R>, x: R) -> usize {
    let n = m.n();
    let mut q = m.diag[0] - x;
    let mut count = usize::from(q < R::zero());
    for i in 1..n {
        let off = m.offdiag[i - 1];
        let denom = if q == R::zero() {
            R::epsilon() * (off.abs() + R::epsilon())
        } else {
            q
        };
        q = m.diag[i] - x - off * off / denom;
        if q < R::zero() {
            count += 1;
        }
    }
    count
}

/// Lowest eigenvalue by bisection on the Sturm count, bracketed by
/// Gershgorin bounds. Independent of the QL path, so the two can check
/// each other.
pub fn lowest_eigenvalue_bisect<R: Real>(m: &TridiagonalMatrix<R>) -> R {
    let n = m.n();
    let mut lo = R::infinity();
    let mut hi = R::neg_infinity();
    for i in 0..n {
        let mut radius = R::zero();
        if i > 0 {
            radius = radius + m.offdiag[i - 1].abs();
        }
        if i + 1 < n {
            radius = radius + m.offdiag[i].abs();
        }
        lo = lo.min(m.diag[i] - radius);
        hi = hi.max(m.diag[i] + radius);
    }
    let scale = R::one().max(lo.abs()).max(hi.abs());
    for _ in 0..200 {
        if hi - lo <= R::epsilon() * scale * R::of(4.0) {
            break;
        }
        let mid = (lo + hi) / R::of(2.0);
        if sturm_count(m, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / R::of(2.0)
}

/// Solves (M - shift I) x = rhs by Gaussian elimination with partial
/// pivoting on the band; pivoting fills one extra superdiagonal.
fn solve_shifted<R: Real>(m: &TridiagonalMatrix<R>, shift: R, rhs: &[R]) -> Vec<R> {
    let n = m.n();
    let mut b: Vec<R> = m.diag.iter().map(|&v| v - shift).collect();
    let mut c = vec![R::zero(); n];
    let mut c2 = vec![R::zero(); n];
    c[..n - 1].copy_from_slice(&m.offdiag);
    let mut r = rhs.to_vec();

    let tiny = R::min_positive_value() / R::epsilon();
    for i in 0..n - 1 {
        let mut sub = m.offdiag[i];
        if sub.abs() > b[i].abs() {
            std::mem::swap(&mut b[i], &mut sub);
            // After the row swap the old pivot row shifts down one.
            let (ci, bi1) = (c[i], b[i + 1]);
            c[i] = bi1;
            b[i + 1] = ci;
            let (c2i, ci1) = (c2[i], c[i + 1]);
            c2[i] = ci1;
            c[i + 1] = c2i;
            r.swap(i, i + 1);
        }
        if b[i] == R::zero() {
            b[i] = tiny;
        }
        let f = sub / b[i];
        b[i + 1] = b[i + 1] - f * c[i];
        c[i + 1] = c[i + 1] - f * c2[i];
        r[i + 1] = r[i + 1] - f * r[i];
    }
    if b[n - 1] == R::zero() {
        b[n - 1] = tiny;
    }

    let mut x = vec![R::zero(); n];
    x[n - 1] = r[n - 1] / b[n - 1];
    if n >= 2 {
        x[n - 2] = (r[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (r[i] - c[i] * x[i + 1] - c2[i] * x[i + 2]) / b[i];
    }
    x
}

/// Eigenvector for an eigenvalue already known to high accuracy. A few
/// rounds of inverse iteration from a constant start vector; the
/// near-singular solves are exactly what sharpens the direction. The
/// returned vector has unit Euclidean norm and a positive
/// largest-magnitude component.
pub fn inverse_iteration<R: Real>(m: &TridiagonalMatrix<R>, eigenvalue: R) -> Result<Vec<R>> {
    let n = m.n();
    let mut v = vec![R::one() / R::of(n as f64).sqrt(); n];
    for _ in 0..3 {
        let w = solve_shifted(m, eigenvalue, &v);
        let norm = w.iter().fold(R::zero(), |s, &x| s + x * x).sqrt();
        if !norm.is_finite() || norm == R::zero() {
            return Err(Error::EigenNonConvergence { index: 0 });
        }
        for (vi, &wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    fix_sign(&mut v);
    Ok(v)
}

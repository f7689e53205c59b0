//! Exact linear algebra over `Z` and `Q`: Hermite and Smith normal forms and
//! solving `A·x = b` with integer or rational unknowns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    /// No rational solution: some combination of the equations reads `0 = c ≠ 0`.
    #[error("inconsistent system: equation combination {certificate:?} gives 0 = {value}")]
    Inconsistent { certificate: Vec<BigInt>, value: BigInt },
    /// Rational solutions exist but none is integral.
    #[error("system has no integer solution (pivot {pivot} does not divide {value})")]
    NotIntegral { pivot: BigInt, value: BigInt },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row-style Hermite normal form of `m` together with the unimodular transform.
#[derive(Debug, Clone)]
pub struct Hermite {
    /// `h = u·m`; the first `rank` rows are non-zero, echelon, with positive pivots
    /// and entries above each pivot reduced into `[0, pivot)`.
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn axpy(dst: &mut [BigInt], k: &BigInt, src: &[BigInt]) {
    if k.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += k * s;
        }
    }
}

/// Row Hermite normal form. With `track` the transform `u` is accumulated,
/// otherwise it is left empty.
pub fn hermite(m: &[Vec<BigInt>], track: bool) -> Hermite {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h: IntMatrix = m.to_vec();
    let mut u: IntMatrix = if track {
        (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Move the row with the smallest non-zero entry in column c to position r.
            let best = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(best) = best else { break };
            h.swap(r, best);
            if track {
                u.swap(r, best);
            }
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (top, rest) = h.split_at_mut(i);
                axpy(&mut rest[0], &-&q, &top[r]);
                if track {
                    let (top, rest) = u.split_at_mut(i);
                    axpy(&mut rest[0], &-&q, &top[r]);
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -&*x;
                }
                if track {
                    for x in u[r].iter_mut() {
                        *x = -&*x;
                    }
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (top, rest) = h.split_at_mut(r);
                axpy(&mut top[i], &-&q, &rest[0]);
                if track {
                    let (top, rest) = u.split_at_mut(r);
                    axpy(&mut top[i], &-&q, &rest[0]);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    Hermite { h, u, pivots }
}

/// The canonical basis (non-zero Hermite rows) of the lattice spanned by `rows`.
pub fn lattice_basis(rows: &[Vec<BigInt>]) -> IntMatrix {
    let herm = hermite(rows, false);
    herm.h.into_iter().take(herm.pivots.len()).collect()
}

/// Whether two sets of vectors span the same sublattice.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    lattice_basis(a) == lattice_basis(b)
}

/// Reduces `v` modulo the lattice with Hermite basis `basis`, leaving each
/// pivot coordinate in `(-p/2, p/2]`. The result depends only on the coset of `v`.
pub fn reduce_symmetric(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let p = &row[c];
        let two = BigInt::from(2);
        let q = (&two * &v[c] - p).div_ceil(&(&two * p));
        if !q.is_zero() {
            axpy(&mut v, &-q, row);
        }
    }
    v
}

/// All integer solutions of `A·x = b`: `particular + Z·kernel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSolution {
    pub particular: Vec<BigInt>,
    /// Hermite basis of the integer kernel.
    pub kernel: IntMatrix,
}

impl IntSolution {
    /// The canonical element of the solution set: the particular solution
    /// reduced symmetrically against the kernel's Hermite basis.
    pub fn canonical(&self) -> Vec<BigInt> {
        reduce_symmetric(&self.particular, &self.kernel)
    }
}

/// Solves `A·x = b` over the integers. `a` has one row per equation.
pub fn solve_integer_linear(a: &[Vec<BigInt>], b: &[BigInt], nunknowns: usize) -> Result<IntSolution, LinearError> {
    if a.len() != b.len() {
        return Err(LinearError::Dimension(format!(
            "{} equations, {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    if let Some(row) = a.iter().find(|r| r.len() != nunknowns) {
        return Err(LinearError::Dimension(format!(
            "row of length {} for {} unknowns",
            row.len(),
            nunknowns
        )));
    }
    // Work with the transpose: x^T·A^T = b^T. Hermite of A^T gives U·A^T = H,
    // so solutions are x^T = y^T·U with y^T·H = b^T.
    let m = a.len();
    let at: IntMatrix = (0..nunknowns)
        .map(|j| (0..m).map(|i| a[i][j].clone()).collect())
        .collect();
    let herm = hermite(&at, true);
    let rank = herm.rank();
    let mut residual = b.to_vec();
    let mut y = Vec::with_capacity(rank);
    for (i, &c) in herm.pivots.iter().enumerate() {
        let p = &herm.h[i][c];
        let (q, r) = residual[c].div_rem(p);
        if !r.is_zero() {
            return Err(LinearError::NotIntegral {
                pivot: p.clone(),
                value: residual[c].clone(),
            });
        }
        axpy(&mut residual, &-&q, &herm.h[i]);
        y.push(q);
    }
    if let Some(k) = residual.iter().position(|x| !x.is_zero()) {
        // Column k of H beyond the pivots is a rational combination of pivot columns;
        // the left kernel of A^T restricted to columns gives the certificate.
        let certificate = inconsistency_certificate(a, b).unwrap_or_default();
        return Err(LinearError::Inconsistent {
            certificate,
            value: residual[k].clone(),
        });
    }
    let mut particular = vec![BigInt::zero(); nunknowns];
    for (i, yi) in y.iter().enumerate() {
        axpy(&mut particular, yi, &herm.u[i]);
    }
    let kernel_rows: IntMatrix = herm.u[rank..].to_vec();
    Ok(IntSolution {
        particular,
        kernel: lattice_basis(&kernel_rows),
    })
}

/// An integer vector `w` with `w^T·A = 0` and `w^T·b ≠ 0`, if the system is rationally inconsistent.
pub fn inconsistency_certificate(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    let aug: IntMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let herm = hermite(&aug, true);
    let n = aug.first().map_or(0, Vec::len);
    (0..m).find_map(|i| {
        let zero_left = herm.h[i][..n - 1].iter().all(Zero::is_zero);
        (zero_left && !herm.h[i][n - 1].is_zero()).then(|| herm.u[i].clone())
    })
}

/// Invariant factors of `m` (the non-zero diagonal of its Smith normal form).
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: IntMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t].clone();
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&p);
            let (top, rest) = a.split_at_mut(i);
            axpy(&mut rest[0], &-&q, &top[t]);
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            for row in a.iter_mut() {
                let v = &row[t] * &q;
                row[j] -= v;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero())) {
            let (top, rest) = a.split_at_mut(i);
            axpy(&mut top[t], &BigInt::one(), &rest[0]);
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Rank over `Q` of an integer matrix.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    hermite(m, false).rank()
}

/// Solutions of `A·x = b` over `Q`: a particular solution with free unknowns set
/// to zero, or `None` if the system is inconsistent.
pub fn solve_rational_linear(a: &[Vec<BigRational>], b: &[BigRational], nunknowns: usize) -> Option<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nunknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let k = rows[i][c].clone();
            let (lo, hi) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&mut a[i], &b[0])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&mut b[0], &a[r])
            };
            for (x, y) in lo.iter_mut().zip(hi) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[nunknowns].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); nunknowns];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][nunknowns].clone();
    }
    Some(x)
}

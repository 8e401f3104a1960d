//! Small exact linear algebra over `Rat` and `i64`, shared by the geometry
//! and lattice modules. Everything here is desk-scale (dimension <= 5 and a
//! few dozen rows), so plain Gaussian elimination on rationals is the right
//! tool.

use crate::ratio::Rat;
use num_traits::{One, Zero};

/// Row echelon reduction in place; returns the rank.
pub fn echelon(rows: &mut Vec<Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &inv;
                for c in col..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut work = rows.to_vec();
    echelon(&mut work)
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let work: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| crate::ratio::rat_int(x)).collect()).collect();
    rank(&work)
}

/// Basis of the right nullspace of the given rows (each of length `ncols`).
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut work = rows.to_vec();
    let rank = echelon(&mut work);
    work.truncate(rank);
    // Locate pivot columns.
    let mut pivot_col = vec![usize::MAX; rank];
    for (r, row) in work.iter().enumerate() {
        pivot_col[r] = (0..ncols).find(|&c| !row[c].is_zero()).unwrap();
    }
    let pivots: Vec<usize> = pivot_col.clone();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for r in (0..rank).rev() {
            let p = pivots[r];
            // work[r] · v = 0  =>  v[p] = -(sum of other terms)/work[r][p]
            let mut acc = Rat::zero();
            for c in (p + 1)..ncols {
                if !work[r][c].is_zero() && !v[c].is_zero() {
                    acc += &work[r][c] * &v[c];
                }
            }
            v[p] = -acc / &work[r][p];
        }
        basis.push(v);
    }
    basis
}

/// Solves the square system `a * x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut work: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rank = echelon(&mut work);
    if rank < n {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for row in work.iter().take(n) {
        let p = (0..n).find(|&c| !row[c].is_zero())?;
        x[p] = &row[n] / &row[p];
    }
    Some(x)
}

pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut work = a.to_vec();
    let mut result = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !work[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            work.swap(col, pivot);
            result = -result;
        }
        result *= work[col][col].clone();
        let inv = work[col][col].clone();
        for r in (col + 1)..n {
            if !work[r][col].is_zero() {
                let factor = &work[r][col] / &inv;
                for c in col..n {
                    let delta = &factor * &work[col][c];
                    work[r][c] = &work[r][c] - delta;
                }
            }
        }
    }
    result
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Scales a rational vector to a primitive integer direction with a
/// sign-normalized leading entry, for deduplicating hyperplanes.
pub fn primitive_direction(v: &[Rat]) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    ints
}

// ---- i64 matrices (row-major, square), used for Weyl group elements ----

pub fn mat_identity(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

pub fn mat_apply(n: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            out[i] += m[i * n + j] * v[j];
        }
    }
    out
}

/// Decides whether `a * x = b` has an integer solution, by diagonalizing `a`
/// with unimodular row and column operations (row operations mirrored on `b`).
pub fn int_solvable(a: &[Vec<i64>], b: &[i64]) -> bool {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut a: Vec<Vec<i64>> = a.to_vec();
    let mut b: Vec<i64> = b.to_vec();
    let mut k = 0;
    while k < n.min(m) {
        // Pick the smallest nonzero entry in the trailing submatrix as pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..n {
            for j in k..m {
                if a[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        b.swap(k, pi);
        for row in &mut a {
            row.swap(k, pj);
        }
        loop {
            let mut clean = true;
            for i in (k + 1)..n {
                if a[i][k] != 0 {
                    let q = a[i][k].div_euclid(a[k][k]);
                    for j in k..m {
                        a[i][j] -= q * a[k][j];
                    }
                    b[i] -= q * b[k];
                    if a[i][k] != 0 {
                        a.swap(k, i);
                        b.swap(k, i);
                        clean = false;
                    }
                }
            }
            for j in (k + 1)..m {
                if a[k][j] != 0 {
                    let q = a[k][j].div_euclid(a[k][k]);
                    for row in a.iter_mut().take(n).skip(k) {
                        row[j] -= q * row[k];
                    }
                    if a[k][j] != 0 {
                        for row in &mut a {
                            row.swap(k, j);
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        k += 1;
    }
    for i in 0..n {
        if i < m && a[i][i] != 0 {
            if b[i] % a[i][i] != 0 {
                return false;
            }
        } else if b[i] != 0 {
            return false;
        }
    }
    true
}

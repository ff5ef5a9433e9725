//! Exact algebraic multiplicity of the zero eigenvalue for integer matrices.
//!
//! For an n x n integer matrix M, the algebraic multiplicity of 0 equals
//! n - rank(M^s) over the rationals for any s >= n (the generalized
//! nullspace stops growing at the largest Jordan block). Rank over a prime
//! field is a lower bound on the rational rank and agrees with it for all
//! but finitely many primes, so taking the larger rank seen over two 31-bit
//! primes gives the exact answer on desk-scale inputs.

use super::Matrix;

const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

/// The algebraic multiplicity of eigenvalue 0, computed exactly; `None` when
/// the matrix has non-integer entries (beyond 1e-9 rounding) or is not
/// square.
pub fn integer_zero_multiplicity(m: &Matrix) -> Option<usize> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(0);
    }
    let mut ints = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = m[(i, j)];
            let r = x.round();
            if (x - r).abs() > 1e-9 || r.abs() > (1i64 << 31) as f64 {
                return None;
            }
            ints[i][j] = r as i64;
        }
    }
    PRIMES
        .iter()
        .map(|&p| zero_multiplicity_mod(&ints, n, p))
        .min()
}

fn zero_multiplicity_mod(ints: &[Vec<i64>], n: usize, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = ints
        .iter()
        .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut s = 1usize;
    while s < n {
        a = mul_mod(&a, &a, p);
        s *= 2;
    }
    n - rank_mod(a, p)
}

fn mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k] as u128;
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let add = aik * b[k][j] as u128 % p as u128;
                out[i][j] = ((out[i][j] as u128 + add) % p as u128) as u64;
            }
        }
    }
    out
}

fn rank_mod(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let factor = a[i][c];
                for j in 0..cols {
                    let sub = factor as u128 * a[rank][j] as u128 % p as u128;
                    a[i][j] = ((a[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

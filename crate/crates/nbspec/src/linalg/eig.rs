//! Dense nonsymmetric eigenvalue pipeline over nested Vec buffers.
//!
//! isolate -> balance -> hessenberg -> hqr. Isolation peels rows/columns
//! whose off-diagonal part is exactly zero, reading off their diagonal as
//! exact eigenvalues; on the nilpotent edge matrices of trees this deflates
//! the whole matrix and returns exact zeros. Balancing is the classic
//! radix-2 diagonal scaling. The QR stage is the Francis double-shift
//! iteration on a real Hessenberg matrix, eigenvalues only.

use num_complex::Complex64;

/// Removes rows/columns whose off-diagonal entries are all exactly zero,
/// repeatedly, returning their diagonal values as eigenvalues. `a` shrinks
/// in place.
pub fn isolate(a: &mut Vec<Vec<f64>>) -> Vec<Complex64> {
    let mut found = Vec::new();
    loop {
        let n = a.len();
        let mut target = None;
        'scan: for i in 0..n {
            let zero_row = (0..n).all(|j| j == i || a[i][j] == 0.0);
            if zero_row {
                target = Some(i);
                break 'scan;
            }
            let zero_col = (0..n).all(|j| j == i || a[j][i] == 0.0);
            if zero_col {
                target = Some(i);
                break 'scan;
            }
        }
        match target {
            Some(i) => {
                found.push(Complex64::new(a[i][i], 0.0));
                a.remove(i);
                for row in a.iter_mut() {
                    row.remove(i);
                }
            }
            None => return found,
        }
    }
}

/// Radix-2 diagonal similarity scaling (norms of each row/column pair are
/// brought within a factor of 2 of each other). Leaves eigenvalues exactly
/// invariant because the scale factors are powers of two.
pub fn balance(a: &mut [Vec<f64>]) {
    let n = a.len();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[j][i].abs()).sum();
            let r: f64 = (0..n).filter(|&j| j != i).map(|j| a[i][j].abs()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / 2.0 {
                f *= 2.0;
                c *= 4.0;
            }
            while c >= r * 2.0 {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[i][j] *= g;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
        if converged {
            return;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
pub fn hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let beta: f64 = v.iter().map(|x| x * x).sum();
        if beta == 0.0 {
            continue;
        }
        // left: rows k+1.. across columns k..
        for j in k..n {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi * a[k + 1 + i][j])
                .sum();
            let s = 2.0 * s / beta;
            for (i, vi) in v.iter().enumerate() {
                a[k + 1 + i][j] -= s * vi;
            }
        }
        // right: columns k+1.. across all rows
        for row in a.iter_mut() {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| vj * row[k + 1 + j])
                .sum();
            let s = 2.0 * s / beta;
            for (j, vj) in v.iter().enumerate() {
                row[k + 1 + j] -= s * vj;
            }
        }
        a[k + 1][k] = alpha;
        for i in k + 2..n {
            a[i][k] = 0.0;
        }
    }
}

/// Francis double-shift QR iteration on an upper Hessenberg matrix;
/// eigenvalues only. Exceptional shifts fire every 10 stalled iterations,
/// switching to pseudo-random (but deterministic) restart shifts from the
/// third round on. Fails with the eigenvalues found so far once the total
/// iteration budget is exhausted.
pub fn hqr(a: &mut [Vec<f64>], max_total_iters: usize) -> Result<Vec<Complex64>, Vec<Complex64>> {
    let n = a.len();
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }
    let mut shift_state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next_unit = move || {
        shift_state = shift_state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((shift_state >> 11) as f64) / ((1u64 << 53) as f64)
    };
    let mut total_iters = 0usize;
    let mut t = 0.0;
    let mut hi: isize = n as isize - 1;
    while hi >= 0 {
        let mut its = 0usize;
        loop {
            let nn = hi as usize;
            let mut l = 0usize;
            for cand in (1..=nn).rev() {
                let mut s = a[cand - 1][cand - 1].abs() + a[cand][cand].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[cand][cand - 1].abs() <= eps * s {
                    a[cand][cand - 1] = 0.0;
                    l = cand;
                    break;
                }
            }
            let mut x = a[nn][nn];
            if l == nn {
                out.push(Complex64::new(x + t, 0.0));
                hi -= 1;
                break;
            }
            let mut y = a[nn - 1][nn - 1];
            let mut w = a[nn][nn - 1] * a[nn - 1][nn];
            if l + 1 == nn {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let xs = x + t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    out.push(Complex64::new(xs + z, 0.0));
                    out.push(Complex64::new(
                        if z != 0.0 { xs - w / z } else { xs + z },
                        0.0,
                    ));
                } else {
                    out.push(Complex64::new(xs + p, z));
                    out.push(Complex64::new(xs + p, -z));
                }
                hi -= 2;
                break;
            }
            if total_iters >= max_total_iters {
                return Err(out);
            }
            if its > 0 && its % 10 == 0 {
                t += x;
                for i in 0..=nn {
                    a[i][i] -= x;
                }
                let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                let (fy, fw) = if its >= 30 {
                    (0.4 + 1.2 * next_unit(), -(0.2 + next_unit()))
                } else {
                    (0.75, -0.4375)
                };
                x = fy * s;
                y = x;
                w = fw * s * s;
            }
            its += 1;
            total_iters += 1;
            // locate two consecutive small subdiagonals to start the chase
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            // bulge chase
            for k in m..nn {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = if k != nn - 1 { a[k + 2][k - 1] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k][k - 1] = -a[k][k - 1];
                    }
                } else {
                    a[k][k - 1] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a[k][j] + q * a[k + 1][j];
                    if k != nn - 1 {
                        pp += r * a[k + 2][j];
                        a[k + 2][j] -= pp * z;
                    }
                    a[k + 1][j] -= pp * y;
                    a[k][j] -= pp * x;
                }
                let top = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=top {
                    let mut pp = x * a[i][k] + y * a[i][k + 1];
                    if k != nn - 1 {
                        pp += z * a[i][k + 2];
                        a[i][k + 2] -= pp * r;
                    }
                    a[i][k + 1] -= pp * q;
                    a[i][k] -= pp;
                }
            }
        }
    }
    Ok(out)
}

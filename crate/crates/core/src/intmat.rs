//! Small dense integer matrices: echelon forms with unimodular transforms,
//! Hermite and Smith normal forms, determinants and integer kernels.
//!
//! Entries are `i128` during elimination; the inputs (ray coordinates,
//! gradings) are tiny, so overflow indicates a bug and panics.

#![allow(clippy::needless_range_loop)]

pub type IntMatrix = Vec<Vec<i64>>;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a as i128, b as i128).0 as i64
}

fn to_wide(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn to_narrow(m: &[Vec<i128>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| i64::try_from(x).expect("integer overflow")).collect()).collect()
}

/// Row echelon form `U * M = E` by unimodular row operations. Pivots are
/// positive and entries above each pivot lie in `[0, pivot)`, so the nonzero
/// rows of `E` form the Hermite normal form. Returns `(E, U, pivot columns)`.
pub fn hermite_with_transform(m: &[Vec<i64>]) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut e = to_wide(m);
    let mut u: Vec<Vec<i128>> = (0..rows).map(|i| (0..rows).map(|j| i128::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine all rows below r into row r at column c
        for i in r + 1..rows {
            if e[i][c] == 0 {
                continue;
            }
            let (a, b) = (e[r][c], e[i][c]);
            let (g, x, y) = ext_gcd(a, b);
            let (pa, pb) = (a / g, b / g);
            for mat in [&mut e, &mut u] {
                let (row_r, row_i) = (mat[r].clone(), mat[i].clone());
                for j in 0..row_r.len() {
                    mat[r][j] = x * row_r[j] + y * row_i[j];
                    mat[i][j] = -pb * row_r[j] + pa * row_i[j];
                }
            }
        }
        if e[r][c] == 0 {
            continue;
        }
        if e[r][c] < 0 {
            for mat in [&mut e, &mut u] {
                for x in mat[r].iter_mut() {
                    *x = -*x;
                }
            }
        }
        let p = e[r][c];
        for i in 0..r {
            let q = e[i][c].div_euclid(p);
            if q != 0 {
                for mat in [&mut e, &mut u] {
                    let row_r = mat[r].clone();
                    for (x, y) in mat[i].iter_mut().zip(row_r) {
                        *x -= q * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (to_narrow(&e), to_narrow(&u), pivots)
}

/// Canonical Hermite normal form of the row lattice (zero rows dropped).
pub fn hermite_normal_form(m: &[Vec<i64>]) -> IntMatrix {
    let (e, _, piv) = hermite_with_transform(m);
    e.into_iter().take(piv.len()).collect()
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    hermite_with_transform(m).2.len()
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Basis of `{ a in Z^rows : a M = 0 }`.
pub fn left_kernel(m: &[Vec<i64>]) -> IntMatrix {
    let (_, u, piv) = hermite_with_transform(m);
    u.into_iter().skip(piv.len()).collect()
}

/// Determinant of a square matrix (Bareiss).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = to_wide(m);
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("integer overflow")
}

/// Invariant factors (nonzero diagonal of the Smith normal form).
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a = to_wide(m);
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for row in a.iter_mut().skip(t) {
                    row[j] -= q * row[t];
                }
            }
            let clean = (t + 1..rows).all(|i| a[i][t] == 0) && (t + 1..cols).all(|j| a[t][j] == 0);
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            match (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(i64::try_from(a[t][t].abs()).expect("integer overflow"));
    }
    out
}

/// Integer matrix `R` with `A R = I`, for `A` with all invariant factors 1 and full row rank.
pub fn right_inverse(a: &[Vec<i64>]) -> Option<IntMatrix> {
    let m = a.len();
    // U * A^T = E, E = [H; 0] with H upper triangular m x m
    let (e, u, piv) = hermite_with_transform(&transpose(a));
    if piv.len() != m {
        return None;
    }
    // H unimodular required: all pivots 1 with rows in HNF form a triangular matrix
    let h: IntMatrix = e.iter().take(m).cloned().collect();
    if (0..m).any(|i| h[i][i] != 1 || piv[i] != i) {
        return None;
    }
    // A^T = U^{-1} [H; 0]  =>  A U^T = [H^T 0]  =>  A (U^T)[:, :m] H^{-T} = I
    let ut = transpose(&u);
    let first: IntMatrix = ut.iter().map(|row| row[..m].to_vec()).collect();
    // invert H^T (lower unitriangular) by forward substitution
    let ht = transpose(&h);
    let mut inv = vec![vec![0i64; m]; m];
    for col in 0..m {
        for i in 0..m {
            let mut s: i64 = i64::from(i == col);
            for k in 0..i {
                s -= ht[i][k] * inv[k][col];
            }
            inv[i][col] = s;
        }
    }
    let r = mul(&first, &inv);
    debug_assert_eq!(mul(a, &r), (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>());
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![1, 0], vec![1, 2]]), 2);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 0]]), 0);
        assert_eq!(det(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]), 1);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let b = vec![vec![10, -4, -16], vec![2, 4, 4], vec![-4, 10, 16]];
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        let h = hermite_normal_form(&a);
        assert_eq!(h, vec![vec![2, 4, 4], vec![0, 6, 0], vec![0, 0, 12]]);
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(smith_invariants(&[vec![1, 1, 1]]), vec![1]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn kernel_and_inverse() {
        let v = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let k = left_kernel(&v);
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![1, 1, 1] || k[0] == vec![-1, -1, -1]);
        let a = vec![vec![1, 1, 1, 0], vec![0, 0, 1, 1]];
        let r = right_inverse(&a).unwrap();
        assert_eq!(mul(&a, &r), vec![vec![1, 0], vec![0, 1]]);
        assert!(right_inverse(&[vec![2, 0]]).is_none());
    }
}

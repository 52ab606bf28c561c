//! Dense linear algebra over the prime field F_p with p = 2^61 - 1.
//!
//! Every matrix fed in here has small integer entries, so ranks over this
//! field agree with ranks over the rationals unless p divides a minor; for
//! the sizes used in this crate that would need minors above 2^61.

pub const P: u64 = (1 << 61) - 1;

pub type Mat = Vec<Vec<u64>>;

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero");
    let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = 1;
    }
    m
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    let mut t = zeros(cols, a.len());
    for (r, row) in a.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            t[c][r] = x;
        }
    }
    t
}

/// `a * b` where `a` is `r x k` and `b` is `k x c`.
pub fn matmul(a: &Mat, b: &Mat, c: usize) -> Mat {
    let mut out = zeros(a.len(), c);
    for (r, row) in a.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b[k].iter().enumerate() {
                if y != 0 {
                    out[r][j] = add(out[r][j], mul(x, y));
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[u64]) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| add(acc, mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Mat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        let s = inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = mul(*x, s);
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r != row && target[col] != 0 {
                let f = target[col];
                for (x, &p) in target.iter_mut().zip(&pivot_row).take(cols) {
                    *x = sub(*x, mul(f, p));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(a: &Mat, cols: usize) -> usize {
    let mut b = a.clone();
    rref(&mut b, cols).len()
}

/// Basis (as rows) of `{x : a x = 0}`.
pub fn null_space(a: &Mat, cols: usize) -> Mat {
    let mut b = a.clone();
    let pivots = rref(&mut b, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = sub(0, b[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis (as rows) of `{x : x a = 0}` for an `rows x cols` matrix.
pub fn left_null_space(a: &Mat, rows: usize, cols: usize) -> Mat {
    debug_assert_eq!(a.len(), rows);
    null_space(&transpose(a, cols), rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for a in [1u64, 2, 3, 12345, P - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
    }

    #[test]
    fn rank_and_null_space() {
        let a: Mat = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank(&a, 3), 2);
        let n = null_space(&a, 3);
        assert_eq!(n.len(), 1);
        assert!(matvec(&a, &n[0]).iter().all(|&x| x == 0));
        let l = left_null_space(&a, 3, 3);
        assert_eq!(l.len(), 1);
        assert!(matmul(&l, &a, 3)[0].iter().all(|&x| x == 0));
    }
}

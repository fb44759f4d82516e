//! Integer matrix kernels and linear solves via Smith normal form.
//!
//! All arithmetic is exact over i128; desk-scale inputs stay far away from
//! overflow.

/// Smith normal form decomposition `U * A * V = D` with `U`, `V` unimodular
/// and `D` diagonal with the divisibility chain d_1 | d_2 | ...
pub struct Smith {
    pub d: Vec<Vec<i128>>,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn swap_rows(m: &mut [Vec<i128>], a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row a += c * row b
fn add_row(m: &mut [Vec<i128>], a: usize, b: usize, c: i128) {
    let rb = m[b].clone();
    for (x, y) in m[a].iter_mut().zip(rb) {
        *x += c * y;
    }
}

/// col a += c * col b
fn add_col(m: &mut [Vec<i128>], a: usize, b: usize, c: i128) {
    for row in m.iter_mut() {
        row[a] += c * row[b];
    }
}

fn negate_row(m: &mut [Vec<i128>], a: usize) {
    for x in m[a].iter_mut() {
        *x = -*x;
    }
}

pub fn smith_normal_form(mat: &[Vec<i128>]) -> Smith {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut d: Vec<Vec<i128>> = mat.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // locate smallest-magnitude nonzero entry in the remaining block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0
                        && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { return Smith { d, u, v } };
            if pi != t {
                swap_rows(&mut d, t, pi);
                swap_rows(&mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut d, t, pj);
                swap_cols(&mut v, t, pj);
            }
            if d[t][t] < 0 {
                negate_row(&mut d, t);
                negate_row(&mut u, t);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[i][t].div_euclid(p);
                if q != 0 {
                    add_row(&mut d, i, t, -q);
                    add_row(&mut u, i, t, -q);
                }
                if d[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d[t][j].div_euclid(p);
                if q != 0 {
                    add_col(&mut d, j, t, -q);
                    add_col(&mut v, j, t, -q);
                }
                if d[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // enforce divisibility of the remaining block by the pivot
                let mut fixed = true;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if d[i][j] % p != 0 {
                            add_row(&mut d, t, i, 1);
                            add_row(&mut u, t, i, 1);
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
        }
    }
    Smith { d, u, v }
}

/// Basis of the right kernel `{x : A x = 0}` as columns, returned as vectors.
pub fn integer_kernel(mat: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    if cols == 0 {
        return Vec::new();
    }
    if rows == 0 {
        return identity(cols);
    }
    let s = smith_normal_form(mat);
    let mut kernel = Vec::new();
    for j in 0..cols {
        let dj = if j < rows { s.d[j][j] } else { 0 };
        if dj == 0 {
            kernel.push((0..cols).map(|i| s.v[i][j]).collect());
        }
    }
    kernel
}

/// One integer solution of `A x = b`, if any.
pub fn solve_integer(mat: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    if rows == 0 {
        return Some(vec![0; cols]);
    }
    let s = smith_normal_form(mat);
    let c: Vec<i128> = (0..rows)
        .map(|i| (0..rows).map(|k| s.u[i][k] * b[k]).sum())
        .collect();
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let di = if i < cols { s.d[i][i] } else { 0 };
        if di != 0 {
            if c[i] % di != 0 {
                return None;
            }
            y[i] = c[i] / di;
        } else if c[i] != 0 {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).map(|k| s.v[i][k] * y[k]).sum())
            .collect(),
    )
}

/// Canonical basis (row-style Hermite form) of the lattice spanned by `rows`.
/// Zero rows are dropped; pivots are positive and entries above pivots are
/// reduced, so equal lattices yield equal output.
pub fn hermite_rows(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        loop {
            let mut pivot: Option<usize> = None;
            for i in rank..m.len() {
                if m[i][col] != 0
                    && pivot.map_or(true, |p| m[i][col].abs() < m[p][col].abs())
                {
                    pivot = Some(i);
                }
            }
            let Some(p) = pivot else { break };
            m.swap(rank, p);
            if m[rank][col] < 0 {
                for x in m[rank].iter_mut() {
                    *x = -*x;
                }
            }
            let pv = m[rank][col];
            let mut done = true;
            for i in rank + 1..m.len() {
                let q = m[i][col].div_euclid(pv);
                if q != 0 {
                    let top = m[rank].clone();
                    for (x, y) in m[i].iter_mut().zip(&top) {
                        *x -= q * y;
                    }
                }
                if m[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                // reduce rows above the pivot for canonical form
                for i in 0..rank {
                    let q = m[i][col].div_euclid(pv);
                    if q != 0 {
                        let top = m[rank].clone();
                        for (x, y) in m[i].iter_mut().zip(&top) {
                            *x -= q * y;
                        }
                    }
                }
                rank += 1;
                break;
            }
        }
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = a.len();
        let k = b.len();
        let m = if k == 0 { 0 } else { b[0].len() };
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_decomposition_holds() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let s = smith_normal_form(&a);
        let uav = matmul(&matmul(&s.u, &a), &s.v);
        assert_eq!(uav, s.d);
        // diagonal with divisibility chain
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(s.d[i][j], 0);
                }
            }
        }
        let diag: Vec<i128> = (0..3).map(|i| s.d[i][i]).collect();
        for w in diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = vec![vec![4, 7]];
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(4 * k[0][0] + 7 * k[0][1], 0);
        assert_ne!(k[0][0], 0);
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let a = vec![vec![1, 0], vec![0, 1]];
        assert!(integer_kernel(&a).is_empty());
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = vec![vec![2, 5, 8], vec![1, 1, 1]];
        let b = vec![10, 2];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(2 * x[0] + 5 * x[1] + 8 * x[2], 10);
        assert_eq!(x[0] + x[1] + x[2], 2);
        assert!(solve_integer(&a, &[1, 0]).is_none());
    }

    #[test]
    fn hermite_is_canonical_for_equal_lattices() {
        let b1 = hermite_rows(&[vec![7, -4], vec![14, -8]]);
        let b2 = hermite_rows(&[vec![-7, 4]]);
        assert_eq!(b1, b2);
        assert_eq!(b1.len(), 1);
    }
}

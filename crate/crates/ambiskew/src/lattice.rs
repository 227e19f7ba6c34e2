//! Integer kernels of linear maps, with optional congruence rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// One linear constraint `row . k = 0`, exact when `modulus` is zero and
/// taken modulo `modulus` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<BigInt>,
    pub modulus: BigInt,
}

impl Constraint {
    pub fn exact(row: Vec<BigInt>) -> Self {
        Constraint { row, modulus: BigInt::zero() }
    }

    pub fn congruence(row: Vec<BigInt>, modulus: BigInt) -> Self {
        Constraint { row, modulus }
    }

    pub fn satisfied_by(&self, k: &[BigInt]) -> bool {
        let s: BigInt = self.row.iter().zip(k).map(|(a, b)| a * b).sum();
        if self.modulus.is_zero() {
            s.is_zero()
        } else {
            s.mod_floor(&self.modulus).is_zero()
        }
    }
}

fn col_op(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], p: usize, j: usize, m: [[BigInt; 2]; 2]) {
    // new_p = m00*p + m01*j, new_j = m10*p + m11*j
    for mat in [a, u] {
        for row in mat.iter_mut() {
            let (x, y) = (row[p].clone(), row[j].clone());
            row[p] = &m[0][0] * &x + &m[0][1] * &y;
            row[j] = &m[1][0] * &x + &m[1][1] * &y;
        }
    }
}

/// Basis of `{k in Z^n : A k = 0}` by unimodular column reduction.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot == n {
            break;
        }
        for j in pivot + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            if a[i][pivot].is_zero() {
                col_op(&mut a, &mut u, pivot, j, [[BigInt::zero(), BigInt::one()], [BigInt::one(), BigInt::zero()]]);
                continue;
            }
            let (x, y) = (a[i][pivot].clone(), a[i][j].clone());
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let m = [[e.x, e.y], [-(&y / &g), &x / &g]];
            col_op(&mut a, &mut u, pivot, j, m);
        }
        if !a[i][pivot].is_zero() {
            pivot += 1;
        }
    }
    (pivot..n).map(|c| u.iter().map(|row| row[c].clone()).collect()).collect()
}

/// Row echelon (Hermite) basis of the lattice spanned by `vectors`.
pub fn hermite_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out = Vec::new();
    let mut col = 0;
    while col < n && !m.is_empty() {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&r| !m[r][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let r0 = *nz.iter().min_by_key(|&&r| m[r][col].abs()).unwrap();
            let piv = m[r0].clone();
            for &r in &nz {
                if r != r0 {
                    let q = m[r][col].div_floor(&piv[col]);
                    for c in 0..n {
                        let t = &q * &piv[c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        if let Some(r) = (0..m.len()).find(|&r| !m[r][col].is_zero()) {
            let mut row = m.remove(r);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(row);
        }
        m.retain(|v| v.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    // Reduce entries above each pivot.
    for i in 0..out.len() {
        let pc = (0..n).find(|&c| !out[i][c].is_zero()).unwrap();
        for k in 0..i {
            let q = out[k][pc].div_floor(&out[i][pc]);
            if !q.is_zero() {
                for c in 0..n {
                    let t = &q * &out[i][c];
                    out[k][c] -= t;
                }
            }
        }
    }
    out
}

/// Basis of the solution lattice of mixed exact/congruence constraints in
/// `n` unknowns.
pub fn solve_constraints(constraints: &[Constraint], n: usize) -> Vec<Vec<BigInt>> {
    let slack: Vec<usize> = (0..constraints.len()).filter(|&i| !constraints[i].modulus.is_zero()).collect();
    let width = n + slack.len();
    let rows: Vec<Vec<BigInt>> = constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = c.row.clone();
            row.resize(n, BigInt::zero());
            row.resize(width, BigInt::zero());
            if let Some(s) = slack.iter().position(|&x| x == i) {
                row[n + s] = -c.modulus.clone();
            }
            row
        })
        .collect();
    let kernel = integer_kernel(&rows, width);
    let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..n].to_vec()).collect();
    hermite_basis(&projected, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn kernel_of_simple_matrix() {
        let k = integer_kernel(&[v(&[2, 4, 6])], 3);
        assert_eq!(k.len(), 2);
        for b in &k {
            assert!(Constraint::exact(v(&[2, 4, 6])).satisfied_by(b));
        }
    }

    #[test]
    fn congruence_lattice() {
        // 3k = 0 mod 6 gives k in 2Z.
        let basis = solve_constraints(&[Constraint::congruence(v(&[3]), 6.into())], 1);
        assert_eq!(basis, vec![v(&[2])]);
        let trivial = solve_constraints(&[Constraint::exact(v(&[1, 0])), Constraint::exact(v(&[0, 1]))], 2);
        assert!(trivial.is_empty());
    }
}

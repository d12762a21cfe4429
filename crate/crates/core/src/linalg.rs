//! Exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: rows are scaled to integers and reduced
//! by Bareiss steps, whose exact divisions keep every intermediate entry
//! the size of a minor. Pivots are the first nonzero entry in column
//! order, so results are deterministic; with exact arithmetic no pivoting
//! strategy can change them.

use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

/// Row echelon form of an integer matrix after Bareiss elimination.
struct Echelon {
    m: Vec<Vec<BigInt>>,
    /// (row, column) of each pivot, in order
    pivots: Vec<(usize, usize)>,
    /// sign flip accumulated by row swaps
    sign: i8,
}

fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            sign = -sign;
        }
        let (pivot_rows, lower) = m.split_at_mut(r + 1);
        let pivot_row = &pivot_rows[r];
        let pivot = pivot_row[col].clone();
        for row_i in lower.iter_mut() {
            if row_i[col].is_zero() {
                // still renormalize the untouched row tail; Bareiss keeps
                // entries as minors only if every row is updated
                for entry in row_i.iter_mut().skip(col + 1) {
                    let v = &pivot * &*entry;
                    *entry = v / &prev;
                }
            } else {
                let head = row_i[col].clone();
                for (entry, p) in row_i
                    .iter_mut()
                    .zip(pivot_row.iter())
                    .skip(col + 1)
                    .take(cols - col - 1)
                {
                    let v = &pivot * &*entry - &head * p;
                    *entry = v / &prev;
                }
            }
            row_i[col] = BigInt::zero();
        }
        prev = pivot;
        pivots.push((r, col));
        r += 1;
    }
    Echelon { m, pivots, sign }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    /// Clears denominators row by row; returns the integer rows and each
    /// row's scale factor.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|j| (self.get(i, j) * &lcm).to_integer())
                .collect();
            out.push(row);
            scales.push(lcm);
        }
        (out, scales)
    }

    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows();
        bareiss(rows, self.cols).pivots.len()
    }

    /// Basis of the right null space. Each vector is scaled so its first
    /// nonzero coordinate (in column order) is 1; the basis is sorted by
    /// free column, which makes the output fully deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (rows, _) = self.integer_rows();
        let ech = bareiss(rows, self.cols);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for &(r, pcol) in ech.pivots.iter().rev() {
                if pcol > free {
                    continue;
                }
                let mut acc = Rat::zero();
                for (x, e) in v.iter().zip(ech.m[r].iter()).skip(pcol + 1) {
                    if !x.is_zero() && !e.is_zero() {
                        acc += Rat::from_integer(e.clone()) * x;
                    }
                }
                v[pcol] = -acc / Rat::from_integer(ech.m[r][pcol].clone());
            }
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .expect("kernel vector is nonzero")
                .clone();
            let inv = lead.recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix: the final Bareiss pivot of the
    /// integer form, corrected by the row scalings and swap sign.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        if self.rows == 0 {
            return Rat::one();
        }
        let (rows, scales) = self.integer_rows();
        let ech = bareiss(rows, self.cols);
        if ech.pivots.len() < self.rows {
            return Rat::zero();
        }
        let &(r, c) = ech.pivots.last().unwrap();
        let mut det = Rat::from_integer(ech.m[r][c].clone());
        if ech.sign < 0 {
            det = -det;
        }
        for s in scales {
            det /= Rat::from_integer(s);
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for i in 0..2 {
                let dot: Rat = (0..3).map(|j| a.get(i, j) * &v[j]).sum();
                assert!(dot == Rat::zero());
            }
            assert_eq!(*v.iter().find(|x| **x != Rat::zero()).unwrap(), rat_int(1));
        }
    }

    #[test]
    fn nullspace_with_rational_entries() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rat(-2, 5)],
            vec![rat(3, 2), rat_int(1), rat(-6, 5)],
        ]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for i in 0..2 {
                let dot: Rat = (0..3).map(|j| a.get(i, j) * &v[j]).sum();
                assert!(dot == Rat::zero(), "kernel vector fails row {i}");
            }
        }
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(m(&[&[2, 1], &[1, 1]]).det(), rat_int(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), rat_int(0));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rat_int(-1));
        // 3x3 with rational entries: det = 1/2 * (4*9 - 6*6) = 0
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(6), rat_int(9)],
        ]);
        assert_eq!(a.det(), rat_int(0));
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(a.det(), rat(1, 10) - rat(1, 12));
    }

    #[test]
    fn det_of_permutation_parity() {
        // cyclic permutation of 3 elements is even
        let a = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(a.det(), rat_int(1));
        let a = m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(a.det(), rat_int(1));
    }

    #[test]
    fn full_rank_kernel_is_empty() {
        assert!(m(&[&[1, 0], &[0, 1]]).nullspace().is_empty());
    }
}

//! Smith normal form over Z with exact arbitrary-precision entries, plus the
//! integer linear-system and nullspace solvers built on top of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = v.into();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free elimination (Bareiss). Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let v = s * q;
                self.data[target * self.cols + j] += v;
            }
        }
    }

    /// col[target] += q * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let v = s * q;
                self.data[i * self.cols + target] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + c];
            self.data[i * self.cols + c] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal with a
/// nonnegative divisibility chain. `u_inv` is the inverse of `U`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    rank: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal entries `s_1 | s_2 | ...`, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// Solves `A x = b` over Z; returns one solution if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.v.rows];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(self.s.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// A Z-basis of the integer nullspace `{x : A x = 0}`, as vectors.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.cols).map(|j| self.v.column(j)).collect()
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t..m, t..n) else {
            break;
        };
        swap_rows(&mut s, &mut u, &mut u_inv, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                add_row(&mut s, &mut u, &mut u_inv, i, t, &-q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                // a smaller remainder now sits in row or column t; pull it to the pivot
                let col_best = min_abs_entry(&s, t..m, t..t + 1);
                let row_best = min_abs_entry(&s, t..t + 1, t..n);
                let pick = match (col_best, row_best) {
                    (Some(c), Some(r)) => {
                        if s.get(c.0, c.1).abs() <= s.get(r.0, r.1).abs() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot vanished"),
                };
                swap_rows(&mut s, &mut u, &mut u_inv, t, pick.0);
                swap_cols(&mut s, &mut v, t, pick.1);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => add_row(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }
    Smith { u, u_inv, s, v, rank }
}

fn min_abs_entry(s: &IntMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |b| ax < b.2) {
                let one = ax.is_one();
                best = Some((i, j, ax));
                if one {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a: usize, b: usize) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
}

/// row[target] += q * row[source], tracked in `u` and its inverse.
fn add_row(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    s.add_row_multiple(target, source, q);
    u.add_row_multiple(target, source, q);
    u_inv.add_col_multiple(source, target, &-q);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Smith {
        let sm = smith_normal_form(a);
        assert_eq!(sm.u.mul(a).mul(&sm.v), sm.s, "U A V != S for {a:?}");
        assert!(sm.u.determinant().abs().is_one());
        assert!(sm.v.determinant().abs().is_one());
        assert_eq!(sm.u.mul(&sm.u_inv), IntMatrix::identity(a.rows()));
        for i in 0..sm.s.rows() {
            for j in 0..sm.s.cols() {
                if i != j {
                    assert!(sm.s.get(i, j).is_zero());
                }
            }
        }
        let d = sm.invariant_factors();
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        sm
    }

    #[test]
    fn already_diagonal() {
        let sm = check(&IntMatrix::from_rows(1, &[vec![2]]));
        assert_eq!(sm.invariant_factors(), vec![BigInt::from(2)]);
        assert_eq!(sm.u, IntMatrix::identity(1));
        assert_eq!(sm.v, IntMatrix::identity(1));
    }

    #[test]
    fn zero_matrix() {
        let sm = check(&IntMatrix::from_rows(1, &[vec![0]]));
        assert_eq!(sm.invariant_factors(), vec![BigInt::zero()]);
        assert_eq!(sm.rank(), 0);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = |16 - 24| = 8, so the chain is (2, 4)
        let sm = check(&IntMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]));
        assert_eq!(sm.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn nondivisible_diagonal_is_fixed_up() {
        let sm = check(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(sm.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solve_and_nullspace() {
        let a = IntMatrix::from_rows(3, &[vec![2, 4, 6]]);
        let sm = check(&a);
        let x = sm.solve(&[BigInt::from(8)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![BigInt::from(8)]);
        assert!(sm.solve(&[BigInt::from(3)]).is_none());
        let ns = sm.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v)[0].is_zero());
        }
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }
}

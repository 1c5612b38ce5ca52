//! Dense matrices over an exact field: row reduction, rank, kernels.
//!
//! Pivoting is deterministic: within each column the first nonzero row (in
//! the given order) is chosen, so kernel and image bases are reproducible.

use num_traits::Zero;

use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for k in 0..size {
            m.set(k, k, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: F) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot.clone() + value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.add_to(r, c, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(found) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, found);
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - factor.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column,
    /// with a 1 in that free column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns of `M`.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Whether `v` lies in the column span.
    pub fn column_span_contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.rows);
        let mut augmented = Self::zeros(self.rows, self.cols + 1);
        for (r, vr) in v.iter().enumerate() {
            for c in 0..self.cols {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, self.cols, vr.clone());
        }
        let pivots = augmented.rref().1;
        !pivots.contains(&self.cols)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rref_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 0]]));
        let kernel = a.kernel_basis();
        assert_eq!(kernel, vec![vec![q(-1), q(-1), q(1)]]);
        assert!(a.apply(&kernel[0]).iter().all(Zero::is_zero));
        assert_eq!(a.image_basis().len(), 2);
        assert!(a.column_span_contains(&[q(1), q(2), q(1)]));
        assert!(!a.column_span_contains(&[q(1), q(0), q(0)]));
    }

    #[test]
    fn degenerate_shapes() {
        let z: Matrix<Rational> = Matrix::zeros(0, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
        let e: Matrix<Rational> = Matrix::zeros(2, 0);
        assert!(e.kernel_basis().is_empty());
        assert!(e.column_span_contains(&[q(0), q(0)]));
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<Rational>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c)
                .prop_map(move |v| Matrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| q(x)).collect()).collect()))
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_rank_is_row_order_invariant(a in arb_matrix(), seed in 0usize..100) {
            let (r, pivots) = a.rref();
            let (rr, pivots2) = r.rref();
            prop_assert_eq!(&rr, &r);
            prop_assert_eq!(pivots2, pivots.clone());
            let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|k| a.row(k).to_vec()).collect();
            let len = rows.len();
            rows.rotate_left(seed % len);
            prop_assert_eq!(Matrix::from_rows(rows).rank(), pivots.len());
            prop_assert_eq!(pivots.len() + a.kernel_basis().len(), a.cols());
            for v in a.kernel_basis() {
                prop_assert!(a.apply(&v).iter().all(Zero::is_zero));
            }
        }
    }
}

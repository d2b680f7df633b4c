//! Dense square matrices over exact or floating entries.

use std::fmt;
use std::ops::Range;

use num_complex::Complex64;

use crate::error::Result;
use crate::scalars::{Bindings, Gq, ParamScalar};

/// Entry type for [`Mat`].
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for Gq {
    fn zero() -> Self {
        Gq::zero()
    }
    fn one() -> Self {
        Gq::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Gq::is_zero(self)
    }
}

impl Entry for ParamScalar {
    fn zero() -> Self {
        ParamScalar::zero()
    }
    fn one() -> Self {
        ParamScalar::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        ParamScalar::is_zero(self)
    }
}

impl Entry for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

/// Square matrix, row-major. `m[(j, k)]` is the coefficient of basis
/// vector `j` in the image of basis vector `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Entry> Mat<T> {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, |j, k| if j == k { T::one() } else { T::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                data.push(f(j, k));
            }
        }
        Mat { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> &T {
        &self.data[j * self.n + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: T) {
        self.data[j * self.n + k] = v;
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.n, o.n);
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat<T> {
        Mat {
            n: self.n,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat {
            n: self.n,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out: Mat<T> = Mat::zeros(n);
        for j in 0..n {
            for m in 0..n {
                let a = self.get(j, m);
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let b = o.get(m, k);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(j, k).add(&a.mul(b));
                    out.set(j, k, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Mat<T> {
        let mut acc = Mat::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Mat<T>) -> Mat<T> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Mat<T>) -> Mat<T> {
        self.mul(o).add(&o.mul(self))
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Exact agreement on the block `rows x cols`.
    pub fn agrees_on(&self, o: &Mat<T>, rows: Range<usize>, cols: Range<usize>) -> bool {
        rows.clone()
            .all(|j| cols.clone().all(|k| self.get(j, k) == o.get(j, k)))
    }

    /// Exact agreement on columns `cols`, all rows.
    pub fn agrees_on_columns(&self, o: &Mat<T>, cols: Range<usize>) -> bool {
        self.agrees_on(o, 0..self.n, cols)
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl Mat<ParamScalar> {
    pub fn eval(&self, bindings: &Bindings) -> Result<Mat<Complex64>> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(v.eval_c64(bindings)?);
        }
        Ok(Mat { n: self.n, data })
    }
}

impl Mat<Complex64> {
    /// Largest entrywise modulus of `self - o` on a block.
    pub fn max_abs_diff(&self, o: &Mat<Complex64>, rows: Range<usize>, cols: Range<usize>) -> f64 {
        let mut m: f64 = 0.0;
        for j in rows {
            for k in cols.clone() {
                m = m.max((self.get(j, k) - o.get(j, k)).norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_commutator() {
        let a: Mat<Gq> = Mat::from_fn(2, |j, k| Gq::int((j * 2 + k) as i64));
        let i = Mat::identity(2);
        assert_eq!(a.mul(&i), a);
        assert!(a.commutator(&i).data.iter().all(|v| v.is_zero()));
        let sq = a.mul(&a);
        assert_eq!(sq.get(1, 1), &Gq::int(11));
    }
}

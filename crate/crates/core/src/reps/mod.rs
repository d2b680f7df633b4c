//! Finite matrix representations and grid operators.
//!
//! Matrix entries are [`ParamScalar`]s, so `hbar`, `nu` and the spin label
//! stay exact; numeric matrices come from [`MatrixRep::eval`] or
//! [`evaluate_oppoly`].

mod fourier;
mod grid;
mod hermite;
mod matrix;
mod spin;

pub use fourier::e2_fourier_matrices;
pub use grid::{
    section_sample, zak_section, CompiledPoly, GridField, LineGrid, TorusGrid, TorusOperator,
};
pub use hermite::{
    metaplectic_matrices, schrodinger_matrices, solve_quadratic_element, QuadraticElement,
};
pub use matrix::{Entry, Mat};
pub use spin::{spin_matrices, spin_matrices_hermitian, Spin};

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalg::OpPoly;
use crate::scalars::{Bindings, ParamScalar};

/// Basis in which a [`MatrixRep`] is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Unnormalized Hermite functions `|0>, |1>, ...`.
    Hermite,
    /// Magnetic quantum numbers `m = j, j-1, ..., -j`.
    SpinM,
    /// Fourier modes `e^{i n theta}`, `n = -N..=N`.
    FourierN,
}

/// Matrices assigned to operator generators.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub basis: BasisKind,
    pub dim: usize,
    /// Number of Fourier modes on each side, or the truncation size.
    pub truncation: usize,
    pub gens: BTreeMap<String, Mat<ParamScalar>>,
}

impl MatrixRep {
    pub fn get(&self, name: &str) -> Result<&Mat<ParamScalar>> {
        self.gens
            .get(name)
            .ok_or_else(|| Error::UnassignedGenerator(name.to_string()))
    }

    /// Column indices on which every product of at most `len` assigned
    /// matrices agrees with the untruncated operator.
    pub fn interior(&self, len: usize) -> std::ops::Range<usize> {
        let len = len.max(1);
        match self.basis {
            BasisKind::SpinM => 0..self.dim,
            BasisKind::Hermite => 0..(self.dim + 1).saturating_sub(len),
            BasisKind::FourierN => {
                let n = self.truncation;
                let reach = len - 1;
                if reach > n {
                    0..0
                } else {
                    reach..(2 * n + 1 - reach)
                }
            }
        }
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<BTreeMap<String, Mat<Complex64>>> {
        self.gens
            .iter()
            .map(|(k, m)| Ok((k.clone(), m.eval(bindings)?)))
            .collect()
    }
}

/// Substitutes the assigned matrices into the words of `x`, exactly.
pub fn evaluate_oppoly_exact(rep: &MatrixRep, x: &OpPoly) -> Result<Mat<ParamScalar>> {
    let names = &x.algebra().names;
    let mut acc = Mat::zeros(rep.dim);
    for (w, c) in x.terms() {
        let mut m = Mat::identity(rep.dim);
        for &g in w {
            m = m.mul(rep.get(&names[g as usize])?);
        }
        acc = acc.add(&m.scale(c));
    }
    Ok(acc)
}

/// Numeric matrix of `x` under the representation.
pub fn evaluate_oppoly(rep: &MatrixRep, x: &OpPoly, bindings: &Bindings) -> Result<Mat<Complex64>> {
    evaluate_oppoly_exact(rep, x)?.eval(bindings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::{op_algebra, OpAlgebraKind};
    use crate::scalars::{Gq, Param};

    #[test]
    fn word_becomes_product() {
        let rep = schrodinger_matrices(6).unwrap();
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        let qp = OpPoly::word(&w, &[0, 1]);
        let m = evaluate_oppoly_exact(&rep, &qp).unwrap();
        assert_eq!(m, rep.get("Q").unwrap().mul(rep.get("P").unwrap()));
        let z = evaluate_oppoly_exact(&rep, &OpPoly::zero(&w)).unwrap();
        assert_eq!(z, Mat::zeros(6));
    }

    #[test]
    fn i_hbar_s3_at_half() {
        let rep = spin_matrices(Spin::from_twice(1));
        let a = op_algebra(OpAlgebraKind::Su2);
        let x = OpPoly::named(&a, "S3")
            .unwrap()
            .scale(&(&ParamScalar::i() * &ParamScalar::hbar()));
        let b = Bindings::new().exact(Param::Hbar, Gq::one());
        let m = evaluate_oppoly(&rep, &x, &b).unwrap();
        assert_eq!(m.get(0, 0), &Complex64::new(0.0, 0.5));
        assert_eq!(m.get(1, 1), &Complex64::new(0.0, -0.5));
    }

    #[test]
    fn missing_generator_is_reported() {
        let rep = schrodinger_matrices(6).unwrap();
        let a = op_algebra(OpAlgebraKind::Su2);
        let x = OpPoly::named(&a, "S1").unwrap();
        assert!(matches!(
            evaluate_oppoly_exact(&rep, &x),
            Err(Error::UnassignedGenerator(_))
        ));
    }
}

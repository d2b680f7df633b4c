//! e(2) representation on Fourier modes `e^{i n theta}`, `|n| <= N`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{Param, ParamScalar};

use super::matrix::Mat;
use super::{BasisKind, MatrixRep};

/// `L = hbar (n + nu)` on the diagonal, `C` and `S` as half-sums and
/// half-differences of the unit shifts. Index `a` holds mode `n = a - N`.
/// `nu` stays formal.
pub fn e2_fourier_matrices(n_modes: usize) -> Result<MatrixRep> {
    if n_modes < 3 {
        return Err(Error::TruncationTooSmall {
            got: n_modes,
            min: 3,
        });
    }
    let dim = 2 * n_modes + 1;
    let hbar = ParamScalar::hbar();
    let nu = ParamScalar::param(Param::Nu);
    let l = Mat::from_fn(dim, |r, c| {
        if r == c {
            let n = c as i64 - n_modes as i64;
            &hbar * &(&ParamScalar::int(n) + &nu)
        } else {
            ParamScalar::zero()
        }
    });
    let half = ParamScalar::ratio(1, 2);
    let c = Mat::from_fn(dim, |r, k| {
        if r == k + 1 || k == r + 1 {
            half.clone()
        } else {
            ParamScalar::zero()
        }
    });
    // sin = (e^{i theta} - e^{-i theta}) / 2i
    let up = &ParamScalar::i() * &ParamScalar::ratio(-1, 2);
    let s = Mat::from_fn(dim, |r, k| {
        if r == k + 1 {
            up.clone()
        } else if k == r + 1 {
            -&up
        } else {
            ParamScalar::zero()
        }
    });
    let mut gens = BTreeMap::new();
    gens.insert("L".to_string(), l);
    gens.insert("C".to_string(), c);
    gens.insert("S".to_string(), s);
    Ok(MatrixRep {
        basis: BasisKind::FourierN,
        dim,
        truncation: n_modes,
        gens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Bindings, Gq};
    use num_complex::Complex64;

    #[test]
    fn angular_momentum_entry() {
        let rep = e2_fourier_matrices(3).unwrap();
        let b = Bindings::new()
            .exact(Param::Hbar, Gq::one())
            .float(Param::Nu, 0.25);
        let l = rep.get("L").unwrap().eval(&b).unwrap();
        // n = 2 sits at index 5
        assert_eq!(l.get(5, 5), &Complex64::new(2.25, 0.0));
    }

    #[test]
    fn relations_on_interior() {
        let rep = e2_fourier_matrices(4).unwrap();
        let l = rep.get("L").unwrap();
        let s = rep.get("S").unwrap();
        let c = rep.get("C").unwrap();
        let minus_i_hbar = -&(&ParamScalar::i() * &ParamScalar::hbar());
        let inner = rep.interior(2);
        assert_eq!(inner, 1..8);
        assert!(l
            .commutator(s)
            .agrees_on_columns(&c.scale(&minus_i_hbar), inner.clone()));
        let i_hbar = -&minus_i_hbar;
        assert!(l
            .commutator(c)
            .agrees_on_columns(&s.scale(&i_hbar), inner.clone()));
        let circle = s.mul(s).add(&c.mul(c));
        assert!(circle.agrees_on_columns(&Mat::identity(rep.dim), inner.clone()));
        assert!(!circle.agrees_on_columns(&Mat::identity(rep.dim), 0..rep.dim));
    }
}

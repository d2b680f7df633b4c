//! Spin-j representations of the angular momentum commutation relations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalars::{Gq, ParamScalar};

use super::matrix::Mat;
use super::{BasisKind, MatrixRep};

/// Half-integer spin label stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn j(self) -> Gq {
        Gq::ratio(self.0 as i64, 2)
    }

    /// `j(j+1)`.
    pub fn casimir(self) -> Gq {
        let j = self.j();
        &j * &(&j + &Gq::one())
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl FromStr for Spin {
    type Err = Error;
    /// Accepts `"2"`, `"3/2"` or `"1.5"`.
    fn from_str(s: &str) -> Result<Spin> {
        let bad = || Error::Syntax {
            offset: 0,
            message: format!("`{s}` is not a nonnegative half-integer"),
        };
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            return match d.trim() {
                "1" => Ok(Spin(2 * n)),
                "2" => Ok(Spin(n)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<u32>() {
            return Ok(Spin(2 * n));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let t = 2.0 * x;
        if x >= 0.0 && (t - t.round()).abs() < 1e-12 {
            Ok(Spin(t.round() as u32))
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `S1, S2, S3` on the basis `m = j, j-1, ..., -j`, with exact entries.
///
/// The raising operator is written as `S+|m> = hbar (j-m)(j+m+1) |m+1>` and
/// the lowering operator as `S-|m> = hbar |m-1>`, a diagonal rescaling of the
/// usual orthonormal basis that keeps every entry rational. All commutators,
/// traces and spectra agree with the Hermitian form; for `j = 1/2` both
/// coincide with `(hbar/2)` times the Pauli matrices.
pub fn spin_matrices(spin: Spin) -> MatrixRep {
    let n = spin.dim();
    let j = spin.j();
    let m_of = |a: usize| &j - &Gq::int(a as i64);
    let hbar = ParamScalar::hbar();
    let at = |c: Gq| &ParamScalar::from_gq(c) * &hbar;
    // index a <-> m = j - a; raising moves a -> a - 1
    let plus = Mat::from_fn(n, |r, c| {
        if r + 1 == c {
            let m = m_of(c);
            at(&(&j - &m) * &(&(&j + &m) + &Gq::one()))
        } else {
            ParamScalar::zero()
        }
    });
    let minus = Mat::from_fn(n, |r, c| {
        if r == c + 1 {
            at(Gq::one())
        } else {
            ParamScalar::zero()
        }
    });
    let s3 = Mat::from_fn(n, |r, c| {
        if r == c {
            at(m_of(c))
        } else {
            ParamScalar::zero()
        }
    });
    let half = ParamScalar::ratio(1, 2);
    let s1 = plus.add(&minus).scale(&half);
    let minus_half_i = &ParamScalar::i() * &ParamScalar::ratio(-1, 2);
    let s2 = plus.sub(&minus).scale(&minus_half_i);
    let mut gens = BTreeMap::new();
    gens.insert("S1".to_string(), s1);
    gens.insert("S2".to_string(), s2);
    gens.insert("S3".to_string(), s3);
    MatrixRep {
        basis: BasisKind::SpinM,
        dim: n,
        truncation: n,
        gens,
    }
}

/// The usual Hermitian spin matrices at a numeric `hbar`.
pub fn spin_matrices_hermitian(spin: Spin, hbar: f64) -> BTreeMap<String, Mat<Complex64>> {
    let n = spin.dim();
    let j = spin.as_f64();
    let m_of = |a: usize| j - a as f64;
    let plus = Mat::from_fn(n, |r, c| {
        if r + 1 == c {
            let m = m_of(c);
            Complex64::new(hbar * ((j - m) * (j + m + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let minus = Mat::from_fn(n, |r, c| *plus.get(c, r));
    let s3 = Mat::from_fn(n, |r, c| {
        Complex64::new(if r == c { hbar * m_of(c) } else { 0.0 }, 0.0)
    });
    let s1 = plus.add(&minus).scale(&Complex64::new(0.5, 0.0));
    let s2 = plus.sub(&minus).scale(&Complex64::new(0.0, -0.5));
    let mut out = BTreeMap::new();
    out.insert("S1".to_string(), s1);
    out.insert("S2".to_string(), s2);
    out.insert("S3".to_string(), s3);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Bindings, Param};

    fn sq_sum(rep: &MatrixRep) -> Mat<ParamScalar> {
        ["S1", "S2", "S3"]
            .iter()
            .map(|k| {
                let m = rep.get(k).unwrap();
                m.mul(m)
            })
            .fold(Mat::zeros(rep.dim), |a, b| a.add(&b))
    }

    #[test]
    fn commutation_relation_is_exact() {
        for t in 0..6 {
            let rep = spin_matrices(Spin::from_twice(t));
            let s1 = rep.get("S1").unwrap();
            let s2 = rep.get("S2").unwrap();
            let s3 = rep.get("S3").unwrap();
            let i_hbar = &ParamScalar::i() * &ParamScalar::hbar();
            assert_eq!(s1.commutator(s2), s3.scale(&i_hbar));
            let cas = ParamScalar::from_gq(Spin::from_twice(t).casimir());
            let expect = Mat::identity(rep.dim).scale(&(&cas * &ParamScalar::hbar().pow(2)));
            assert_eq!(sq_sum(&rep), expect);
        }
    }

    #[test]
    fn half_spin_is_pauli() {
        let rep = spin_matrices("1/2".parse().unwrap());
        let b = Bindings::new().exact(Param::Hbar, Gq::int(2));
        let m = rep.eval(&b).unwrap();
        let h = spin_matrices_hermitian(Spin::from_twice(1), 2.0);
        for k in ["S1", "S2", "S3"] {
            assert!(m[k].max_abs_diff(&h[k], 0..2, 0..2) < 1e-15);
        }
        assert_eq!(m["S2"].get(0, 1), &Complex64::new(0.0, -1.0));
    }

    #[test]
    fn hermitian_form_satisfies_relations() {
        let s = spin_matrices_hermitian(Spin::from_twice(3), 1.0);
        let c = s["S1"].commutator(&s["S2"]);
        let target = s["S3"].scale(&Complex64::new(0.0, 1.0));
        assert!(c.max_abs_diff(&target, 0..4, 0..4) < 1e-12);
    }

    #[test]
    fn parsing() {
        assert_eq!("3/2".parse::<Spin>().unwrap().dim(), 4);
        assert_eq!("1".parse::<Spin>().unwrap(), Spin::from_twice(2));
        assert_eq!("2.5".parse::<Spin>().unwrap(), Spin::from_twice(5));
        assert!("1/3".parse::<Spin>().is_err());
        assert_eq!(Spin::from_twice(5).to_string(), "5/2");
    }
}

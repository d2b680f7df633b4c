//! Schrödinger and metaplectic matrices in the unnormalized Hermite basis,
//! and the exact solver for the image of `q^2` forced by the bracket rules.
//!
//! With `h_k(q) = H_k(q) e^{-q^2/2}` normalized so that `q h_k = k h_{k-1} +
//! h_{k+1}/2`, position acts as `Q|k> = k|k-1> + |k+1>/2` and momentum as
//! `P|k> = -i hbar (k|k-1> - |k+1>/2)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, SparseVec};
use crate::scalars::{Gq, ParamScalar};

use super::matrix::Mat;
use super::{BasisKind, MatrixRep};

/// Position matrix with rational entries.
fn position(n: usize) -> Mat<Gq> {
    Mat::from_fn(n, |j, k| {
        if j + 1 == k {
            Gq::int(k as i64)
        } else if j == k + 1 {
            Gq::ratio(1, 2)
        } else {
            Gq::zero()
        }
    })
}

/// Momentum divided by `-i hbar`.
fn momentum_core(n: usize) -> Mat<Gq> {
    Mat::from_fn(n, |j, k| {
        if j + 1 == k {
            Gq::int(k as i64)
        } else if j == k + 1 {
            Gq::ratio(-1, 2)
        } else {
            Gq::zero()
        }
    })
}

fn minus_i_hbar() -> ParamScalar {
    -&(&ParamScalar::i() * &ParamScalar::hbar())
}

/// `Q` and `P` truncated to `N` Hermite functions.
pub fn schrodinger_matrices(n: usize) -> Result<MatrixRep> {
    if n < 4 {
        return Err(Error::TruncationTooSmall { got: n, min: 4 });
    }
    let q = position(n).map(|v| ParamScalar::from_gq(v.clone()));
    let mih = minus_i_hbar();
    let p = momentum_core(n).map(|v| &ParamScalar::from_gq(v.clone()) * &mih);
    let mut gens = BTreeMap::new();
    gens.insert("Q".to_string(), q);
    gens.insert("P".to_string(), p);
    Ok(MatrixRep {
        basis: BasisKind::Hermite,
        dim: n,
        truncation: n,
        gens,
    })
}

/// Images of `q^2`, `qp`, `p^2`: `Q^2`, `(QP + PQ)/2`, `P^2`.
pub fn metaplectic_matrices(n: usize) -> Result<MatrixRep> {
    if n < 6 {
        return Err(Error::TruncationTooSmall { got: n, min: 6 });
    }
    let s = schrodinger_matrices(n)?;
    let q = s.get("Q")?;
    let p = s.get("P")?;
    let mut gens = BTreeMap::new();
    gens.insert("q^2".to_string(), q.mul(q));
    gens.insert(
        "qp".to_string(),
        q.anticommutator(p).scale(&ParamScalar::ratio(1, 2)),
    );
    gens.insert("p^2".to_string(), p.mul(p));
    Ok(MatrixRep {
        basis: BasisKind::Hermite,
        dim: n,
        truncation: n,
        gens,
    })
}

/// Result of [`solve_quadratic_element`]. Indices follow the row-first
/// convention `E_{k,j}` = coefficient of `|j>` in `E|k>`.
#[derive(Clone, Debug)]
pub struct QuadraticElement {
    pub n: usize,
    /// Largest index on which the solution is free of truncation effects.
    pub interior: usize,
    /// Solution with the identity ambiguity fixed by the closure condition.
    pub e: Mat<Gq>,
    /// `E_{k,k+2}` for `k + 2 <= interior`.
    pub upper: Vec<Gq>,
    /// `E_{k,k-2}` for `2 <= k <= interior`.
    pub lower: Vec<Gq>,
    /// `E_{k,k} - E_{0,0}` for `k <= interior`.
    pub diagonal_shift: Vec<Gq>,
    /// Whether `(1/4i hbar)[E, P^2]` equals `(QP + PQ)/2` on its interior.
    pub symmetric_product: bool,
    /// `E_{0,0} - 1/2` before the closure condition, as a free parameter
    /// direction; after closure this is the forced value.
    pub epsilon: Gq,
}

impl QuadraticElement {
    /// `E_{k,j}`, the coefficient of `|j>` in `E|k>`.
    pub fn entry(&self, k: usize, j: usize) -> &Gq {
        self.e.get(j, k)
    }
}

/// Solves `[Q, E] = 0`, `[P, E] = -2 i hbar Q` for an `N x N` matrix `E`,
/// then fixes the remaining multiple of the identity with
/// `[(1/4i hbar)[E, P^2], E] = -2 i hbar E`.
pub fn solve_quadratic_element(n: usize) -> Result<QuadraticElement> {
    if n < 8 {
        return Err(Error::TruncationTooSmall { got: n, min: 8 });
    }
    let a = position(n);
    let d = momentum_core(n);
    let unknown = |j: usize, k: usize| j * n + k;

    // P = -i hbar D, so the second equation reads [D, E] = 2 Q.
    let mut sys = LinearSystem::new(n * n);
    let two_a = a.scale(&Gq::int(2));
    for (op, rhs) in [(&a, None), (&d, Some(&two_a))] {
        for r in 0..n - 1 {
            for c in 0..n - 1 {
                let mut row = SparseVec::new();
                let mut push = |idx: usize, v: Gq| {
                    let slot = row.entry(idx).or_insert_with(Gq::zero);
                    *slot += &v;
                    if slot.is_zero() {
                        row.remove(&idx);
                    }
                };
                for m in 0..n {
                    let x = op.get(r, m);
                    if !x.is_zero() {
                        push(unknown(m, c), x.clone());
                    }
                    let y = op.get(m, c);
                    if !y.is_zero() {
                        push(unknown(r, m), -y);
                    }
                }
                let b = rhs.map(|m| m.get(r, c).clone()).unwrap_or_else(Gq::zero);
                sys.add_equation(row, b);
            }
        }
    }
    let sol = sys
        .solve()
        .ok_or_else(|| Error::SingularSystem("equations are inconsistent".into()))?;
    let to_mat = |x: &[Gq]| Mat::from_fn(n, |j, k| x[unknown(j, k)].clone());
    let particular = to_mat(&sol.particular);
    let interior = n - 3;

    // every homogeneous solution must be a multiple of the identity on the interior
    let block = 0..interior + 1;
    let mut shift: Option<Mat<Gq>> = None;
    for v in &sol.nullspace {
        let z = to_mat(v);
        let c = z.get(0, 0).clone();
        let scaled_id = Mat::<Gq>::identity(n).scale(&c);
        if !z.agrees_on(&scaled_id, block.clone(), block.clone()) {
            return Err(Error::SingularSystem(format!(
                "homogeneous solution is not a multiple of the identity (N = {n})"
            )));
        }
        if !c.is_zero() {
            let normalized = z.scale(&c.inv().unwrap());
            match &shift {
                None => shift = Some(normalized),
                Some(s) => {
                    // two identity directions differ by something vanishing on the interior
                    let diff = normalized.sub(s);
                    if !diff.agrees_on(&Mat::zeros(n), block.clone(), block.clone()) {
                        return Err(Error::SingularSystem(
                            "identity direction is not unique".into(),
                        ));
                    }
                }
            }
        }
    }

    // closure: R = -(1/4)[E, D^2] plays the role of Q(qp)/(-i hbar); require [R, E] = 2E
    let d2 = d.mul(&d);
    let r_of = |e: &Mat<Gq>| e.commutator(&d2).scale(&Gq::ratio(-1, 4));
    let sym = a.anticommutator(&d).scale(&Gq::ratio(1, 2));
    let r_p = r_of(&particular);
    let r_block = 0..interior.saturating_sub(2) + 1;
    let symmetric_product = r_p.agrees_on(&sym, r_block.clone(), r_block.clone());

    let check_block = 0..interior.saturating_sub(4) + 1;
    let e = match &shift {
        None => particular,
        Some(z) => {
            // [R, E_p + tZ] - 2(E_p + tZ) = 0 with R independent of t on the interior
            let base = r_p
                .commutator(&particular)
                .sub(&particular.scale(&Gq::int(2)));
            let dir = r_p.commutator(z).sub(&z.scale(&Gq::int(2)));
            let mut t: Option<Gq> = None;
            for j in check_block.clone() {
                for k in check_block.clone() {
                    let coef = dir.get(j, k);
                    let rhs = -base.get(j, k);
                    if coef.is_zero() {
                        if !rhs.is_zero() {
                            return Err(Error::SingularSystem(
                                "closure condition is inconsistent".into(),
                            ));
                        }
                        continue;
                    }
                    let tv = &rhs / coef;
                    match &t {
                        None => t = Some(tv),
                        Some(prev) if *prev != tv => {
                            return Err(Error::SingularSystem(
                                "closure condition is inconsistent".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
            let t =
                t.ok_or_else(|| Error::SingularSystem("closure condition is vacuous".into()))?;
            particular.add(&z.scale(&t))
        }
    };

    let upper = (0..=interior.saturating_sub(2))
        .map(|k| e.get(k + 2, k).clone())
        .collect();
    let lower = (2..=interior).map(|k| e.get(k - 2, k).clone()).collect();
    let e00 = e.get(0, 0).clone();
    let diagonal_shift = (0..=interior).map(|k| e.get(k, k) - &e00).collect();
    let epsilon = &e00 - &Gq::ratio(1, 2);
    Ok(QuadraticElement {
        n,
        interior,
        e,
        upper,
        lower,
        diagonal_shift,
        symmetric_product,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Param;

    #[test]
    fn position_entry() {
        let rep = schrodinger_matrices(6).unwrap();
        assert_eq!(rep.get("Q").unwrap().get(2, 3), &ParamScalar::int(3));
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let rep = schrodinger_matrices(6).unwrap();
        let q = rep.get("Q").unwrap();
        let p = rep.get("P").unwrap();
        let c = p.commutator(q);
        let expected = Mat::identity(6).scale(&minus_i_hbar());
        assert!(c.agrees_on_columns(&expected, rep.interior(2)));
        assert!(!c.agrees_on_columns(&expected, 0..6));
    }

    #[test]
    fn real_and_imaginary_entries() {
        let rep = schrodinger_matrices(6).unwrap();
        let b = crate::scalars::Bindings::new().float(Param::Hbar, 1.0);
        let q = rep.get("Q").unwrap().eval(&b).unwrap();
        let p = rep.get("P").unwrap().eval(&b).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                assert_eq!(q.get(j, k).im, 0.0);
                assert_eq!(p.get(j, k).re, 0.0);
            }
        }
    }

    #[test]
    fn too_small() {
        assert!(matches!(
            schrodinger_matrices(3),
            Err(Error::TruncationTooSmall { got: 3, min: 4 })
        ));
    }

    #[test]
    fn metaplectic_squares() {
        let s = schrodinger_matrices(8).unwrap();
        let m = metaplectic_matrices(8).unwrap();
        let q = s.get("Q").unwrap();
        assert_eq!(m.get("q^2").unwrap(), &q.mul(q));
    }

    #[test]
    fn quadratic_element_bands() {
        let sol = solve_quadratic_element(12).unwrap();
        assert!(sol.upper.iter().all(|v| *v == Gq::ratio(1, 4)));
        assert_eq!(sol.entry(3, 1), &Gq::int(6));
        for (k, v) in sol.lower.iter().enumerate() {
            let k = k as i64 + 2;
            assert_eq!(*v, Gq::int(k * (k - 1)));
        }
        for (k, v) in sol.diagonal_shift.iter().enumerate() {
            assert_eq!(*v, Gq::int(k as i64));
        }
        assert!(sol.symmetric_product);
        assert!(sol.epsilon.is_zero());
    }
}

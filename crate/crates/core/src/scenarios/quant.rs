//! Quantization maps given on a finite list of monomials and extended
//! linearly.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::opalg::{diffop_i_over_hbar, i_over_hbar_commutator, DiffOpPoly, OpPoly};
use crate::poisson::{bracket, PoissonPoly, Space};
use crate::poly::Mono;
use crate::scalars::ParamScalar;

/// Operators a quantization map can land in.
pub trait Operator: Clone + PartialEq + fmt::Display {
    fn add(&self, o: &Self) -> Result<Self>;
    fn scale(&self, c: &ParamScalar) -> Self;
    fn is_zero(&self) -> bool;
    /// `(i/hbar)[self, o]`.
    fn i_over_hbar(&self, o: &Self) -> Result<Self>;

    fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&ParamScalar::int(-1)))
    }
}

impl Operator for OpPoly {
    fn add(&self, o: &Self) -> Result<Self> {
        if self.algebra().kind != o.algebra().kind {
            return Err(Error::AlgebraMismatch(
                self.algebra().name(),
                o.algebra().name(),
            ));
        }
        Ok(OpPoly::add(self, o))
    }
    fn scale(&self, c: &ParamScalar) -> Self {
        OpPoly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        OpPoly::is_zero(self)
    }
    fn i_over_hbar(&self, o: &Self) -> Result<Self> {
        i_over_hbar_commutator(self, o)
    }
}

impl Operator for DiffOpPoly {
    fn add(&self, o: &Self) -> Result<Self> {
        DiffOpPoly::add(self, o)
    }
    fn scale(&self, c: &ParamScalar) -> Self {
        DiffOpPoly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        DiffOpPoly::is_zero(self)
    }
    fn i_over_hbar(&self, o: &Self) -> Result<Self> {
        diffop_i_over_hbar(self, o)
    }
}

/// `Q` on a phase space, known on finitely many monomials.
#[derive(Clone, Debug)]
pub struct QuantMap<T> {
    pub space: Space,
    /// Names of the rules used to fill in the assignment.
    pub rules: Vec<String>,
    assignment: BTreeMap<Mono, T>,
}

impl<T: Operator> QuantMap<T> {
    /// Starts with `Q(1) = identity`.
    pub fn new(space: &Space, identity: T) -> Self {
        let mut assignment = BTreeMap::new();
        assignment.insert(vec![0; space.ngens()], identity);
        QuantMap {
            space: space.clone(),
            rules: Vec::new(),
            assignment,
        }
    }

    pub fn rule(&mut self, name: &str) {
        self.rules.push(name.to_string());
    }

    /// Assigns the image of a single reduced monomial.
    pub fn assign(&mut self, m: Mono, image: T) {
        self.assignment.insert(m, image);
    }

    /// Assigns the image of a monomial given by its name, e.g. `q^2*p`.
    pub fn assign_poly(&mut self, f: &PoissonPoly, image: T) -> Result<()> {
        let mut terms = f.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if *c == ParamScalar::one() => {
                self.assign(m.clone(), image);
                Ok(())
            }
            _ => Err(Error::Config(format!("`{f}` is not a single monomial"))),
        }
    }

    pub fn identity(&self) -> &T {
        &self.assignment[&vec![0; self.space.ngens()]]
    }

    pub fn is_assigned(&self, m: &Mono) -> bool {
        self.assignment.contains_key(m)
    }

    /// Linear extension to a polynomial.
    pub fn image(&self, f: &PoissonPoly) -> Result<T> {
        let mut acc = self.identity().scale(&ParamScalar::zero());
        for (m, c) in f.terms() {
            let img = self.assignment.get(m).ok_or_else(|| {
                Error::UnassignedMonomial(PoissonPoly::monomial(&self.space, m.clone()).to_string())
            })?;
            acc = acc.add(&img.scale(c))?;
        }
        Ok(acc)
    }

    /// `Q({f, g}) - (i/hbar)[Q(f), Q(g)]`.
    pub fn q1_residual(&self, f: &PoissonPoly, g: &PoissonPoly) -> Result<T> {
        let lhs = self.image(&bracket(f, g)?)?;
        let rhs = self.image(f)?.i_over_hbar(&self.image(g)?)?;
        lhs.sub(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::{op_algebra, OpAlgebraKind};
    use crate::poisson::{make_space, SpaceKind};

    #[test]
    fn heisenberg_images() {
        let r = make_space(SpaceKind::R2n(1)).unwrap();
        let w = op_algebra(OpAlgebraKind::Weyl(1));
        let mut q = QuantMap::new(&r, OpPoly::identity(&w));
        q.assign(vec![1, 0], OpPoly::named(&w, "Q").unwrap());
        q.assign(vec![0, 1], OpPoly::named(&w, "P").unwrap());
        let qq = PoissonPoly::named(&r, "q").unwrap();
        let pp = PoissonPoly::named(&r, "p").unwrap();
        assert!(q.q1_residual(&pp, &qq).unwrap().is_zero());
        let sq = qq.mul(&qq);
        assert!(matches!(q.image(&sq), Err(Error::UnassignedMonomial(s)) if s == "q^2"));
    }
}

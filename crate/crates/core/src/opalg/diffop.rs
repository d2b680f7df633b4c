//! Differential operators `sum a_alpha(x) d^alpha` with coefficients in a
//! polynomial ring carrying commuting derivations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{mono_factors, Poly, PolyRing};
use crate::scalars::{join_terms, Gq, Param, ParamMono, ParamScalar};

/// Coefficient ring with derivations given by their values on variables.
#[derive(Debug)]
pub struct DiffRing {
    pub ring: PolyRing,
    pub deriv_names: Vec<String>,
    /// `images[d][i]` is the derivative of variable `i` along derivation `d`.
    images: Vec<Vec<Poly>>,
}

pub type Ring = Arc<DiffRing>;

impl DiffRing {
    pub fn new(ring: PolyRing, deriv_names: &[&str], images: Vec<Vec<Poly>>) -> Ring {
        assert_eq!(deriv_names.len(), images.len());
        Arc::new(DiffRing {
            ring,
            deriv_names: deriv_names.iter().map(|s| s.to_string()).collect(),
            images,
        })
    }

    pub fn name(&self) -> &str {
        &self.ring.name
    }

    pub fn nderivs(&self) -> usize {
        self.images.len()
    }

    /// Polynomials in `q, p` with `d_q, d_p`.
    pub fn plane() -> Ring {
        let ring = PolyRing::new("poly(q,p)", &["q", "p"]);
        let images = vec![vec![ring.one(), ring.zero()], vec![ring.zero(), ring.one()]];
        DiffRing::new(ring, &["d_q", "d_p"], images)
    }

    /// Polynomials in `q` with `d_q`.
    pub fn line() -> Ring {
        let ring = PolyRing::new("poly(q)", &["q"]);
        let images = vec![vec![ring.one()]];
        DiffRing::new(ring, &["d_q"], images)
    }

    /// Trigonometric polynomials in `theta` with `d_theta`.
    pub fn circle() -> Ring {
        let mut ring = PolyRing::new("trig(theta)", &["cos_theta", "sin_theta"]);
        let c = ring.var(0);
        let s = ring.var(1);
        ring.add_rule(1, 2, ring.one().sub(&c.mul(&c)));
        let images = vec![vec![s.neg(), c]];
        DiffRing::new(ring, &["d_theta"], images)
    }

    /// Trigonometric polynomials in `2 pi x`, `2 pi y` tensored with
    /// polynomials in `x, y`, with `d_x, d_y`.
    pub fn torus() -> Ring {
        let mut ring = PolyRing::new("trig(x,y)*poly(x,y)", &["x", "y", "cx", "sx", "cy", "sy"]);
        let v: Vec<Poly> = (0..6).map(|i| ring.var(i)).collect();
        ring.add_rule(3, 2, ring.one().sub(&v[2].mul(&v[2])));
        ring.add_rule(5, 2, ring.one().sub(&v[4].mul(&v[4])));
        let two_pi = ParamScalar::param(Param::Pi).scale(&Gq::int(2));
        let z = ring.zero();
        let dx = vec![
            ring.one(),
            z.clone(),
            v[3].scale(&two_pi).neg(),
            v[2].scale(&two_pi),
            z.clone(),
            z.clone(),
        ];
        let dy = vec![
            z.clone(),
            ring.one(),
            z.clone(),
            z.clone(),
            v[5].scale(&two_pi).neg(),
            v[4].scale(&two_pi),
        ];
        DiffRing::new(ring, &["d_x", "d_y"], vec![dx, dy])
    }

    /// Derivative of a ring element along derivation `d`.
    pub fn derive(&self, d: usize, f: &Poly) -> Poly {
        let mut acc = self.ring.zero();
        for (i, img) in self.images[d].iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let pi = f.partial(i);
            if !pi.is_zero() {
                acc = acc.add(&pi.mul(img));
            }
        }
        self.ring.reduce(&acc)
    }

    fn derive_multi(&self, alpha: &[u32], f: &Poly) -> Poly {
        let mut g = f.clone();
        for (d, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                if g.is_zero() {
                    return g;
                }
                g = self.derive(d, &g);
            }
        }
        g
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// Multi-indices `gamma <= alpha`.
fn below(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &a in alpha {
        let mut next = Vec::new();
        for prefix in &out {
            for g in 0..=a {
                let mut p = prefix.clone();
                p.push(g);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Differential operator in normal form: coefficients left of derivations.
#[derive(Clone, Debug)]
pub struct DiffOpPoly {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Poly>,
}

impl PartialEq for DiffOpPoly {
    fn eq(&self, o: &Self) -> bool {
        self.ring.name() == o.ring.name() && self.terms == o.terms
    }
}

impl DiffOpPoly {
    pub fn zero(ring: &Ring) -> Self {
        DiffOpPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by a ring element.
    pub fn mult(ring: &Ring, f: &Poly) -> Self {
        let mut d = DiffOpPoly::zero(ring);
        d.add_term(vec![0; ring.nderivs()], ring.ring.reduce(f));
        d
    }

    pub fn scalar(ring: &Ring, c: ParamScalar) -> Self {
        DiffOpPoly::mult(ring, &ring.ring.constant(c))
    }

    pub fn identity(ring: &Ring) -> Self {
        DiffOpPoly::scalar(ring, ParamScalar::one())
    }

    /// `f * d_k`.
    pub fn derivation(ring: &Ring, k: usize, f: &Poly) -> Self {
        let mut alpha = vec![0; ring.nderivs()];
        alpha[k] = 1;
        let mut d = DiffOpPoly::zero(ring);
        d.add_term(alpha, ring.ring.reduce(f));
        d
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Poly)> {
        self.terms.iter()
    }

    /// Largest total derivative order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, alpha: Vec<u32>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.remove(&alpha) {
            Some(v) => v.add(&c),
            None => c,
        };
        if !next.is_zero() {
            self.terms.insert(alpha, next);
        }
    }

    fn check(&self, o: &DiffOpPoly) -> Result<()> {
        if self.ring.name() == o.ring.name() {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name().into(),
                o.ring.name().into(),
            ))
        }
    }

    pub fn add(&self, o: &DiffOpPoly) -> Result<DiffOpPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (a, c) in &o.terms {
            r.add_term(a.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &DiffOpPoly) -> Result<DiffOpPoly> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffOpPoly {
        self.scale(&ParamScalar::int(-1))
    }

    pub fn scale(&self, c: &ParamScalar) -> DiffOpPoly {
        let mut r = DiffOpPoly::zero(&self.ring);
        for (a, p) in &self.terms {
            r.add_term(a.clone(), p.scale(c));
        }
        r
    }

    /// Replaces the formal parameter `p` by `value` in every coefficient.
    pub fn substitute(&self, p: Param, value: &ParamScalar) -> DiffOpPoly {
        let mut r = DiffOpPoly::zero(&self.ring);
        for (a, c) in &self.terms {
            r.add_term(a.clone(), c.map_coefficients(|x| x.substitute(p, value)));
        }
        r
    }

    /// Exact division of all coefficients by a parameter monomial.
    pub fn div_mono(&self, m: &ParamMono) -> Result<DiffOpPoly> {
        let mut r = DiffOpPoly::zero(&self.ring);
        for (a, p) in &self.terms {
            let mut q = Poly::zero(p.nvars());
            for (mm, c) in p.terms() {
                let v = c.div_mono(m).ok_or_else(|| {
                    Error::NotDivisible(
                        self.to_string(),
                        ParamScalar::term(Gq::one(), *m).to_string(),
                    )
                })?;
                q.add_term(mm.clone(), &v);
            }
            r.add_term(a.clone(), q);
        }
        Ok(r)
    }

    /// Operator composition `self ∘ o`.
    pub fn compose(&self, o: &DiffOpPoly) -> Result<DiffOpPoly> {
        self.check(o)?;
        let ring = &self.ring;
        let mut r = DiffOpPoly::zero(ring);
        for (alpha, a) in &self.terms {
            for (beta, b) in &o.terms {
                // d^alpha b = sum_gamma C(alpha, gamma) (d^gamma b) d^(alpha - gamma)
                for gamma in below(alpha) {
                    let db = ring.derive_multi(&gamma, b);
                    if db.is_zero() {
                        continue;
                    }
                    let weight: i64 = alpha
                        .iter()
                        .zip(&gamma)
                        .map(|(&n, &k)| binomial(n, k))
                        .product();
                    let coef = ring.ring.mul(a, &db).scale(&ParamScalar::int(weight));
                    let idx: Vec<u32> = alpha
                        .iter()
                        .zip(&gamma)
                        .zip(beta)
                        .map(|((&al, &g), &be)| al - g + be)
                        .collect();
                    r.add_term(idx, coef);
                }
            }
        }
        Ok(r)
    }

    /// The operator applied to a ring element.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.ring.ring.nvars() {
            return Err(Error::RingMismatch(
                self.ring.name().into(),
                format!("polynomials in {} variables", f.nvars()),
            ));
        }
        let mut acc = self.ring.ring.zero();
        for (alpha, a) in &self.terms {
            let df = self.ring.derive_multi(alpha, f);
            acc = acc.add(&self.ring.ring.mul(a, &df));
        }
        Ok(acc)
    }

    /// Bounded-degree view of the coefficient of `d^alpha`.
    pub fn coefficient(&self, alpha: &[u32]) -> Poly {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| self.ring.ring.zero())
    }
}

impl fmt::Display for DiffOpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = Vec::new();
        for (alpha, p) in &self.terms {
            let dfac = mono_factors(alpha, &self.ring.deriv_names);
            for (m, c) in p.ordered_terms() {
                let mut fac = mono_factors(m, &self.ring.ring.names);
                fac.extend(dfac.iter().cloned());
                out.extend(c.signed_terms(&fac));
            }
        }
        f.write_str(&join_terms(out))
    }
}

/// `D1 D2 - D2 D1`.
pub fn diffop_commutator(a: &DiffOpPoly, b: &DiffOpPoly) -> Result<DiffOpPoly> {
    a.compose(b)?.sub(&b.compose(a)?)
}

/// `(i/hbar)[D1, D2]` with exact division by `hbar`.
pub fn diffop_i_over_hbar(a: &DiffOpPoly, b: &DiffOpPoly) -> Result<DiffOpPoly> {
    diffop_commutator(a, b)?
        .scale(&ParamScalar::i())
        .div_mono(&ParamMono::of(Param::Hbar, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_i_hbar() -> ParamScalar {
        -&(&ParamScalar::i() * &ParamScalar::hbar())
    }

    #[test]
    fn leibniz_composition() {
        let r = DiffRing::plane();
        let dq = DiffOpPoly::derivation(&r, 0, &r.ring.one());
        let q = DiffOpPoly::mult(&r, &r.ring.named("q"));
        let comp = dq.compose(&q).unwrap();
        let expected = q
            .compose(&dq)
            .unwrap()
            .add(&DiffOpPoly::identity(&r))
            .unwrap();
        assert_eq!(comp, expected);
        assert_eq!(comp.apply(&r.ring.one()).unwrap(), r.ring.one());
    }

    #[test]
    fn momentum_applied_to_square() {
        let r = DiffRing::plane();
        let p = DiffOpPoly::derivation(&r, 0, &r.ring.constant(minus_i_hbar()));
        let q2 = r.ring.pow(&r.ring.named("q"), 2);
        assert_eq!(r.ring.format(&p.apply(&q2).unwrap()), "-2*i*hbar*q");
    }

    #[test]
    fn euler_operator() {
        let r = DiffRing::line();
        let q = r.ring.named("q");
        let x = DiffOpPoly::derivation(&r, 0, &q.scale(&minus_i_hbar()));
        let q3 = r.ring.pow(&q, 3);
        assert_eq!(r.ring.format(&x.apply(&q3).unwrap()), "-3*i*hbar*q^3");
        let y = DiffOpPoly::mult(&r, &r.ring.pow(&q, 2));
        let c = diffop_commutator(&x, &y).unwrap();
        assert_eq!(c.to_string(), "-2*i*hbar*q^2");
        assert!(diffop_commutator(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn canonical_pair() {
        let r = DiffRing::plane();
        let p = DiffOpPoly::derivation(&r, 0, &r.ring.constant(minus_i_hbar()));
        let q = DiffOpPoly::derivation(&r, 1, &r.ring.constant(-&minus_i_hbar()))
            .add(&DiffOpPoly::mult(&r, &r.ring.named("q")))
            .unwrap();
        let c = diffop_commutator(&p, &q).unwrap();
        assert_eq!(c, DiffOpPoly::scalar(&r, minus_i_hbar()));
    }

    #[test]
    fn circle_derivation() {
        let r = DiffRing::circle();
        let s = r.ring.named("sin_theta");
        assert_eq!(r.derive(0, &s), r.ring.named("cos_theta"));
        let s2c2 = r
            .ring
            .mul(&s, &s)
            .add(&r.ring.pow(&r.ring.named("cos_theta"), 2));
        assert_eq!(r.ring.reduce(&s2c2), r.ring.one());
    }

    #[test]
    fn ring_mismatch() {
        let a = DiffOpPoly::identity(&DiffRing::plane());
        let b = DiffOpPoly::identity(&DiffRing::line());
        assert!(matches!(a.compose(&b), Err(Error::RingMismatch(_, _))));
    }
}

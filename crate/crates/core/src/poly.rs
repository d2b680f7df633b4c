//! Commutative polynomials in named variables with [`ParamScalar`]
//! coefficients, and rings of such polynomials modulo power rewrite rules.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::scalars::{join_terms, Bindings, Gq, ParamScalar};

/// Exponent vector over a ring's variables.
pub type Mono = Vec<u32>;

/// Polynomial with a fixed number of variables. Zero is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, ParamScalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: ParamScalar) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, ParamScalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::monomial(m, ParamScalar::one())
    }

    pub fn monomial(m: Mono, c: ParamScalar) -> Self {
        let mut p = Poly::zero(m.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Scalar value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<ParamScalar> {
        match self.terms.len() {
            0 => Some(ParamScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Highest total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Mono, c: &ParamScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&ParamScalar::int(-1))
    }

    pub fn scale(&self, c: &ParamScalar) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, v) in &self.terms {
            r.add_term(m.clone(), &(v * c));
        }
        r
    }

    pub fn scale_gq(&self, c: &Gq) -> Poly {
        self.scale(&ParamScalar::from_gq(c.clone()))
    }

    /// Product in the free polynomial ring (no reduction).
    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                r.add_term(m, &(c1 * c2));
            }
        }
        r
    }

    pub fn mul_mono(&self, m: &[u32]) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c) in &self.terms {
            let mm: Mono = m1.iter().zip(m).map(|(a, b)| a + b).collect();
            r.add_term(mm, c);
        }
        r
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[i] -= 1;
            r.add_term(mm, &c.scale(&Gq::int(m[i] as i64)));
        }
        r
    }

    /// Substitutes `x_i := images[i]`, landing in the free ring of the images.
    pub fn compose(&self, images: &[Poly], target_nvars: usize) -> Poly {
        let mut r = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&images[i]);
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), &f(c));
        }
        r
    }

    /// Numeric value at a point.
    pub fn eval(&self, point: &[Complex64], bindings: &Bindings) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.eval_c64(bindings)?;
            for (i, &e) in m.iter().enumerate() {
                t *= point[i].powu(e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Terms in display order: ascending degree, then descending exponents.
    pub fn ordered_terms(&self) -> Vec<(&Mono, &ParamScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then(b.0.cmp(a.0))
        });
        v
    }

    /// Renders with the given variable names.
    pub fn format(&self, names: &[String]) -> String {
        let mut out = Vec::new();
        for (m, c) in self.ordered_terms() {
            out.extend(c.signed_terms(&mono_factors(m, names)));
        }
        join_terms(out)
    }
}

pub(crate) fn mono_factors(m: &[u32], names: &[String]) -> Vec<String> {
    m.iter()
        .enumerate()
        .filter_map(|(i, &e)| match e {
            0 => None,
            1 => Some(names[i].clone()),
            k => Some(format!("{}^{}", names[i], k)),
        })
        .collect()
}

/// `x_var^power -> replacement`.
#[derive(Clone, Debug)]
pub struct PowerRule {
    pub var: usize,
    pub power: u32,
    pub replacement: Poly,
}

/// Polynomial ring modulo power rules, with named variables.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub name: String,
    pub names: Vec<String>,
    pub rules: Vec<PowerRule>,
}

impl PolyRing {
    pub fn new(name: &str, names: &[&str]) -> Self {
        PolyRing {
            name: name.to_string(),
            names: names.iter().map(|s| s.to_string()).collect(),
            rules: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn named(&self, name: &str) -> Poly {
        let i = self
            .var_index(name)
            .unwrap_or_else(|| panic!("ring {} has no variable {name}", self.name));
        self.var(i)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn constant(&self, c: ParamScalar) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    pub fn add_rule(&mut self, var: usize, power: u32, replacement: Poly) {
        self.rules.push(PowerRule {
            var,
            power,
            replacement,
        });
    }

    fn applicable_rule(&self, m: &[u32]) -> Option<&PowerRule> {
        self.rules.iter().find(|r| m[r.var] >= r.power)
    }

    pub fn is_reduced_mono(&self, m: &[u32]) -> bool {
        self.applicable_rule(m).is_none()
    }

    /// Rewrites until no rule applies.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.rules.is_empty() {
            return p.clone();
        }
        let mut pending: BTreeMap<Mono, ParamScalar> = p.terms.clone();
        let mut done = Poly::zero(p.nvars);
        while let Some((m, c)) = pending.pop_last() {
            match self.applicable_rule(&m) {
                None => done.add_term(m, &c),
                Some(rule) => {
                    let mut rest = m.clone();
                    rest[rule.var] -= rule.power;
                    for (rm, rc) in &rule.replacement.terms {
                        let mm: Mono = rm.iter().zip(&rest).map(|(a, b)| a + b).collect();
                        let v = &rc.clone() * &c;
                        let slot = pending.entry(mm.clone()).or_default();
                        *slot = &*slot + &v;
                        if slot.is_zero() {
                            pending.remove(&mm);
                        }
                    }
                }
            }
        }
        done
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All reduced monomials of total degree at most `cap`.
    pub fn monomials_up_to(&self, cap: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.enumerate(0, cap, &mut cur, &mut out);
        out.retain(|m| self.is_reduced_mono(m));
        out.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then(b.cmp(a))
        });
        out
    }

    fn enumerate(&self, i: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            self.enumerate(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format(&self.names)
    }

    pub fn display<'a>(&'a self, p: &'a Poly) -> impl fmt::Display + 'a {
        struct D<'a>(&'a PolyRing, &'a Poly);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Param;

    fn circle() -> PolyRing {
        let mut r = PolyRing::new("circle", &["c", "s"]);
        let repl = r.one().sub(&r.named("c").mul(&r.named("c")));
        r.add_rule(1, 2, repl);
        r
    }

    #[test]
    fn reduction_applies_rule_repeatedly() {
        let r = circle();
        let s = r.named("s");
        let s3 = s.mul(&s).mul(&s);
        assert_eq!(r.format(&r.reduce(&s3)), "s - c^2*s");
        let s4 = s3.mul(&s);
        assert_eq!(r.format(&r.reduce(&s4)), "1 - 2*c^2 + c^4");
    }

    #[test]
    fn reduce_is_idempotent() {
        let r = circle();
        let p = r.pow(&r.named("s").add(&r.named("c")), 5);
        assert_eq!(r.reduce(&p), p);
    }

    #[test]
    fn partial_derivative() {
        let r = PolyRing::new("plane", &["q", "p"]);
        let p = r.pow(&r.named("q"), 3).mul(&r.named("p"));
        assert_eq!(r.format(&p.partial(0)), "3*q^2*p");
        assert!(p.partial(1).partial(1).is_zero());
    }

    #[test]
    fn printing_expands_parameter_sums() {
        let r = PolyRing::new("plane", &["q", "p"]);
        let c = &ParamScalar::one() + &ParamScalar::param(Param::Hbar);
        let p = r.named("q").scale(&c).add(&r.one());
        assert_eq!(r.format(&p), "1 + q + hbar*q");
    }

    #[test]
    fn monomial_enumeration_skips_reducible() {
        let r = circle();
        let ms = r.monomials_up_to(2);
        assert_eq!(ms.len(), 5);
        assert!(!ms.contains(&vec![0, 2]));
    }
}

//! Poisson algebras of polynomial observables on the built-in phase spaces.
//!
//! A space is a polynomial ring in its generators, an antisymmetric table of
//! generator brackets, and power rules that encode the Casimir relation of
//! non-free algebras. Brackets of arbitrary polynomials follow from the table
//! by the Leibniz rule and are reduced afterwards.

mod structure;

pub use structure::{
    basic_algebra, is_lie_subalgebra, laplacian_kernel, normalizer, obstruction_markers,
    symplectic_laplacian, Markers, Membership, SubalgebraCheck,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Mono, Poly, PolyRing};
use crate::scalars::{Gq, Param, ParamScalar};

/// The built-in phase spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `R^{2n}` with canonical coordinates.
    R2n(usize),
    /// The sphere with spin generators and radius parameter `s`.
    S2,
    /// The cylinder `T*S^1`.
    TStarS1,
    /// `T*R_+` through the generators `X = pq`, `Y = q^2`.
    TStarRPlus,
    /// The torus with trigonometric generators.
    T2,
}

impl SpaceKind {
    /// Parses `r2n`, `s2`, `tstar_s1`, `tstar_rplus`, `t2`; `n` is used by `r2n`.
    pub fn parse(name: &str, n: usize) -> Result<SpaceKind> {
        match name {
            "r2n" => {
                if n == 0 {
                    Err(Error::UnknownSpace("r2n(0)".into()))
                } else {
                    Ok(SpaceKind::R2n(n))
                }
            }
            "s2" => Ok(SpaceKind::S2),
            "tstar_s1" => Ok(SpaceKind::TStarS1),
            "tstar_rplus" => Ok(SpaceKind::TStarRPlus),
            "t2" => Ok(SpaceKind::T2),
            other => Err(Error::UnknownSpace(other.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SpaceKind::R2n(n) => format!("r2n({n})"),
            SpaceKind::S2 => "s2".into(),
            SpaceKind::TStarS1 => "tstar_s1".into(),
            SpaceKind::TStarRPlus => "tstar_rplus".into(),
            SpaceKind::T2 => "t2".into(),
        }
    }
}

impl FromStr for SpaceKind {
    type Err = Error;
    /// Accepts `r2n(2)` as well as the bare names (`r2n` meaning `n = 1`).
    fn from_str(s: &str) -> Result<SpaceKind> {
        if let Some(inner) = s.strip_prefix("r2n(").and_then(|r| r.strip_suffix(')')) {
            let n = inner
                .parse()
                .map_err(|_| Error::UnknownSpace(s.to_string()))?;
            return SpaceKind::parse("r2n", n);
        }
        SpaceKind::parse(s, 1)
    }
}

/// Generators, bracket table and reduction rules of one phase space.
#[derive(Debug)]
pub struct PhaseSpaceSpec {
    pub kind: SpaceKind,
    pub ring: PolyRing,
    pub degrees: Vec<u32>,
    table: BTreeMap<(usize, usize), Poly>,
    pub notes: String,
}

pub type Space = Arc<PhaseSpaceSpec>;

impl PhaseSpaceSpec {
    pub fn name(&self) -> String {
        self.kind.name()
    }

    pub fn generators(&self) -> &[String] {
        &self.ring.names
    }

    pub fn ngens(&self) -> usize {
        self.ring.nvars()
    }

    /// `{x_i, x_j}` from the table.
    pub fn generator_bracket(&self, i: usize, j: usize) -> Poly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.ring.zero(),
            Less => self
                .table
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| self.ring.zero()),
            Greater => self
                .table
                .get(&(j, i))
                .map(|p| p.neg())
                .unwrap_or_else(|| self.ring.zero()),
        }
    }

    pub fn has_relations(&self) -> bool {
        !self.ring.rules.is_empty()
    }
}

/// Builds one of the built-in spaces.
pub fn make_space(kind: SpaceKind) -> Result<Space> {
    let spec = match kind {
        SpaceKind::R2n(0) => return Err(Error::UnknownSpace("r2n(0)".into())),
        SpaceKind::R2n(n) => r2n(n),
        SpaceKind::S2 => s2(),
        SpaceKind::TStarS1 => tstar_s1(),
        SpaceKind::TStarRPlus => tstar_rplus(),
        SpaceKind::T2 => t2(),
    };
    Ok(Arc::new(spec))
}

fn spec(
    kind: SpaceKind,
    ring: PolyRing,
    table: Vec<((usize, usize), Poly)>,
    notes: &str,
) -> PhaseSpaceSpec {
    let n = ring.nvars();
    let mut t = BTreeMap::new();
    for ((i, j), p) in table {
        if i < j {
            t.insert((i, j), p);
        } else {
            t.insert((j, i), p.neg());
        }
    }
    PhaseSpaceSpec {
        kind,
        ring,
        degrees: vec![1; n],
        table: t,
        notes: notes.to_string(),
    }
}

fn r2n(n: usize) -> PhaseSpaceSpec {
    let names: Vec<String> = if n == 1 {
        vec!["q".into(), "p".into()]
    } else {
        (1..=n)
            .map(|i| format!("q{i}"))
            .chain((1..=n).map(|i| format!("p{i}")))
            .collect()
    };
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::new(&format!("r2n({n})"), &refs);
    // {p_i, q_i} = 1, i.e. {q_i, p_i} = -1
    let table = (0..n).map(|i| ((i, n + i), ring.one().neg())).collect();
    spec(
        SpaceKind::R2n(n),
        ring,
        table,
        "generators q1..qn, p1..pn; {p_i, q_j} = delta_ij, so {f,g} = sum f_p g_q - f_q g_p",
    )
}

fn s2() -> PhaseSpaceSpec {
    let mut ring = PolyRing::new("s2", &["S1", "S2", "S3"]);
    let s1 = ring.var(0);
    let s2 = ring.var(1);
    let s3 = ring.var(2);
    let casimir = ring
        .constant(ParamScalar::param(Param::S).pow(2))
        .sub(&s1.mul(&s1))
        .sub(&s2.mul(&s2));
    ring.add_rule(2, 2, casimir);
    let table = vec![((0, 1), s3.neg()), ((1, 2), s1.neg()), ((2, 0), s2.neg())];
    spec(
        SpaceKind::S2,
        ring,
        table,
        "{S_j, S_k} = -eps_jkl S_l; S1^2 + S2^2 + S3^2 = s^2 applied as S3^2 -> s^2 - S1^2 - S2^2",
    )
}

fn tstar_s1() -> PhaseSpaceSpec {
    let mut ring = PolyRing::new("tstar_s1", &["l", "cos_theta", "sin_theta"]);
    let l = 0;
    let c = ring.var(1);
    let s = ring.var(2);
    ring.add_rule(2, 2, ring.one().sub(&c.mul(&c)));
    let table = vec![((l, 2), c.clone()), ((l, 1), s.neg())];
    spec(
        SpaceKind::TStarS1,
        ring,
        table,
        "{f,g} = f_l g_theta - f_theta g_l; sin^2 -> 1 - cos^2",
    )
}

fn tstar_rplus() -> PhaseSpaceSpec {
    let ring = PolyRing::new("tstar_rplus", &["X", "Y"]);
    let y = ring.var(1);
    let table = vec![((0, 1), y.scale(&ParamScalar::int(2)))];
    spec(
        SpaceKind::TStarRPlus,
        ring,
        table,
        "X = pq, Y = q^2, {X, Y} = 2Y; free polynomial algebra",
    )
}

fn t2() -> PhaseSpaceSpec {
    let mut ring = PolyRing::new("t2", &["cx", "sx", "cy", "sy"]);
    let (cx, sx, cy, sy) = (ring.var(0), ring.var(1), ring.var(2), ring.var(3));
    ring.add_rule(1, 2, ring.one().sub(&cx.mul(&cx)));
    ring.add_rule(3, 2, ring.one().sub(&cy.mul(&cy)));
    let four_pi2 = ParamScalar::param(Param::Pi).pow(2).scale(&Gq::int(4));
    let table = vec![
        ((1, 3), cx.mul(&cy).scale(&four_pi2)),
        ((1, 2), cx.mul(&sy).scale(&four_pi2).neg()),
        ((0, 3), sx.mul(&cy).scale(&four_pi2).neg()),
        ((0, 2), sx.mul(&sy).scale(&four_pi2)),
    ];
    spec(
        SpaceKind::T2,
        ring,
        table,
        "sx = sin 2pi x, cx = cos 2pi x (same for y); {f,g} = f_x g_y - f_y g_x on the unit square; pi is formal",
    )
}

/// Reduced polynomial observable on a phase space.
#[derive(Clone, Debug)]
pub struct PoissonPoly {
    space: Space,
    poly: Poly,
}

impl PartialEq for PoissonPoly {
    fn eq(&self, o: &Self) -> bool {
        self.space.kind == o.space.kind && self.poly == o.poly
    }
}

impl Eq for PoissonPoly {}

impl PoissonPoly {
    /// Wraps and reduces a ring polynomial.
    pub fn new(space: &Space, poly: Poly) -> Self {
        let poly = space.ring.reduce(&poly);
        PoissonPoly {
            space: space.clone(),
            poly,
        }
    }

    pub fn zero(space: &Space) -> Self {
        PoissonPoly::new(space, space.ring.zero())
    }

    pub fn constant(space: &Space, c: ParamScalar) -> Self {
        PoissonPoly::new(space, space.ring.constant(c))
    }

    pub fn one(space: &Space) -> Self {
        PoissonPoly::constant(space, ParamScalar::one())
    }

    pub fn generator(space: &Space, i: usize) -> Self {
        PoissonPoly::new(space, space.ring.var(i))
    }

    /// Generator by name, e.g. `"S1"`.
    pub fn named(space: &Space, name: &str) -> Result<Self> {
        let i = space
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        Ok(PoissonPoly::generator(space, i))
    }

    pub fn monomial(space: &Space, m: Mono) -> Self {
        PoissonPoly::new(space, Poly::monomial(m, ParamScalar::one()))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    fn same_space(&self, o: &PoissonPoly) -> Result<()> {
        if self.space.kind == o.space.kind {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(self.space.name(), o.space.name()))
        }
    }

    fn assert_same(&self, o: &PoissonPoly) {
        if let Err(e) = self.same_space(o) {
            panic!("{e}");
        }
    }

    /// Sum; panics if the spaces differ.
    pub fn add(&self, o: &PoissonPoly) -> PoissonPoly {
        self.assert_same(o);
        PoissonPoly {
            space: self.space.clone(),
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &PoissonPoly) -> PoissonPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PoissonPoly {
        PoissonPoly {
            space: self.space.clone(),
            poly: self.poly.neg(),
        }
    }

    /// Reduced product; panics if the spaces differ.
    pub fn mul(&self, o: &PoissonPoly) -> PoissonPoly {
        self.assert_same(o);
        PoissonPoly::new(&self.space, self.poly.mul(&o.poly))
    }

    pub fn pow(&self, k: u32) -> PoissonPoly {
        let mut acc = PoissonPoly::one(&self.space);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &ParamScalar) -> PoissonPoly {
        PoissonPoly {
            space: self.space.clone(),
            poly: self.poly.scale(c),
        }
    }

    /// Splits into single-term pieces `(monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ParamScalar)> {
        self.poly.terms()
    }
}

impl fmt::Display for PoissonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.space.ring.format(&self.poly))
    }
}

/// Rewrites an arbitrary ring polynomial to its reduced form.
pub fn reduce(space: &Space, p: &Poly) -> PoissonPoly {
    PoissonPoly::new(space, p.clone())
}

/// `{f, g}` by the Leibniz rule over the generator table.
pub fn bracket(f: &PoissonPoly, g: &PoissonPoly) -> Result<PoissonPoly> {
    f.same_space(g)?;
    let space = &f.space;
    let n = space.ngens();
    let df: Vec<Poly> = (0..n).map(|i| f.poly.partial(i)).collect();
    let dg: Vec<Poly> = (0..n).map(|i| g.poly.partial(i)).collect();
    let mut acc = space.ring.zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let t = space.generator_bracket(i, j);
            if t.is_zero() {
                continue;
            }
            let w = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
            if w.is_zero() {
                continue;
            }
            acc = acc.add(&w.mul(&t));
        }
    }
    Ok(PoissonPoly::new(space, acc))
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`, zero for a valid bracket table.
pub fn jacobi_residual(f: &PoissonPoly, g: &PoissonPoly, h: &PoissonPoly) -> Result<PoissonPoly> {
    let a = bracket(f, &bracket(g, h)?)?;
    let b = bracket(g, &bracket(h, f)?)?;
    let c = bracket(h, &bracket(f, g)?)?;
    Ok(a.add(&b).add(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(kind: SpaceKind) -> Space {
        make_space(kind).unwrap()
    }

    fn g(space: &Space, name: &str) -> PoissonPoly {
        PoissonPoly::named(space, name).unwrap()
    }

    #[test]
    fn canonical_bracket_sign() {
        let r = sp(SpaceKind::R2n(1));
        assert_eq!(
            bracket(&g(&r, "p"), &g(&r, "q")).unwrap(),
            PoissonPoly::one(&r)
        );
    }

    #[test]
    fn sphere_bracket_and_reduction() {
        let s = sp(SpaceKind::S2);
        assert_eq!(
            bracket(&g(&s, "S1"), &g(&s, "S2")).unwrap().to_string(),
            "-S3"
        );
        let x = g(&s, "S3").pow(2).mul(&g(&s, "S1"));
        assert_eq!(x.to_string(), "s^2*S1 - S1^3 - S1*S2^2");
    }

    #[test]
    fn cylinder_bracket_and_reduction() {
        let c = sp(SpaceKind::TStarS1);
        let l = g(&c, "l");
        let sin = g(&c, "sin_theta");
        assert_eq!(bracket(&l, &sin).unwrap(), g(&c, "cos_theta"));
        let x = sin.pow(2).mul(&l);
        assert_eq!(x.to_string(), "l - l*cos_theta^2");
    }

    #[test]
    fn affine_bracket() {
        let a = sp(SpaceKind::TStarRPlus);
        let x = g(&a, "X");
        let y = g(&a, "Y");
        assert_eq!(bracket(&x, &y).unwrap().to_string(), "2*Y");
        assert_eq!(x.pow(2).mul(&y).to_string(), "X^2*Y");
    }

    #[test]
    fn jacobi_on_generators() {
        let r = sp(SpaceKind::R2n(1));
        let q = g(&r, "q");
        let p = g(&r, "p");
        assert!(jacobi_residual(&q, &p, &q.pow(2)).unwrap().is_zero());
        let s = sp(SpaceKind::S2);
        assert!(jacobi_residual(&g(&s, "S1"), &g(&s, "S2"), &g(&s, "S3"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn casimir_relations_are_central() {
        for kind in [SpaceKind::S2, SpaceKind::TStarS1, SpaceKind::T2] {
            let space = sp(kind);
            for rule in &space.ring.rules {
                let mut head = vec![0; space.ngens()];
                head[rule.var] = rule.power;
                // bracket with the unreduced relation lhs - rhs, taken in the free ring
                let rel = Poly::monomial(head, ParamScalar::one()).sub(&rule.replacement);
                for i in 0..space.ngens() {
                    let gi = space.ring.var(i);
                    let mut acc = space.ring.zero();
                    for a in 0..space.ngens() {
                        for b in 0..space.ngens() {
                            let t = space.generator_bracket(a, b);
                            acc = acc.add(&rel.partial(a).mul(&gi.partial(b)).mul(&t));
                        }
                    }
                    assert!(space.ring.reduce(&acc).is_zero(), "{}", space.name());
                }
            }
        }
    }

    #[test]
    fn torus_table_matches_derivative_formula() {
        let t = sp(SpaceKind::T2);
        let sx = g(&t, "sx");
        let sy = g(&t, "sy");
        assert_eq!(bracket(&sx, &sy).unwrap().to_string(), "4*pi^2*cx*cy");
    }

    #[test]
    fn mismatch_is_reported() {
        let r = sp(SpaceKind::R2n(1));
        let s = sp(SpaceKind::S2);
        assert!(matches!(
            bracket(&g(&r, "q"), &g(&s, "S1")),
            Err(Error::SpaceMismatch(_, _))
        ));
    }

    #[test]
    fn space_names_parse() {
        assert_eq!("r2n(3)".parse::<SpaceKind>().unwrap(), SpaceKind::R2n(3));
        assert!(matches!(
            "klein".parse::<SpaceKind>(),
            Err(Error::UnknownSpace(_))
        ));
    }
}

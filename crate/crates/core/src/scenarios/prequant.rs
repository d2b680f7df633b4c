//! Explicit prequantization formulas realized as differential operators,
//! and the symbolic check of the bracket rule on all basis pairs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::opalg::{diffop_i_over_hbar, DiffOpPoly, DiffRing, Ring};
use crate::poisson::{bracket, PoissonPoly, Space, SpaceKind};
use crate::poly::{Mono, Poly};
use crate::scalars::{Gq, Param, ParamScalar};

use super::report::{Check, ScenarioReport, Source};

/// Named prequantization formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `Q(f) = -i hbar f_p d_q - f_p p + i hbar f_q d_p + f` on the plane.
    VanHove,
    /// `Q(f p + g) = -i hbar (f d_q + (1/2 + i eta) f') + g` on the
    /// polynomials at most affine in `p`.
    Position,
    /// `Q(f l + g) = -i hbar (f d_theta + (1/2 + i eta) f' + i nu f) + g` on
    /// the polynomials at most affine in `l`.
    Cylinder,
    /// `Q(f) = -i hbar f_x d_y - f_x x + i hbar f_y d_x + f` on
    /// trigonometric polynomials on the torus.
    Torus,
    /// `X -> -i hbar q d_q`, `Y -> +-q^2`, `1 -> I`, zero in degree two and up.
    Affine { minus: bool },
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::VanHove,
        Preset::Position,
        Preset::Cylinder,
        Preset::Torus,
        Preset::Affine { minus: false },
        Preset::Affine { minus: true },
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::VanHove => "vanhove",
            Preset::Position => "position",
            Preset::Cylinder => "cylinder",
            Preset::Torus => "torus",
            Preset::Affine { minus: false } => "affine",
            Preset::Affine { minus: true } => "affine-",
        }
    }

    /// The phase space the formula is written for.
    pub fn space_kind(&self) -> SpaceKind {
        match self {
            Preset::VanHove | Preset::Position => SpaceKind::R2n(1),
            Preset::Cylinder => SpaceKind::TStarS1,
            Preset::Torus => SpaceKind::T2,
            Preset::Affine { .. } => SpaceKind::TStarRPlus,
        }
    }

    /// Whether a monomial of the source space lies in the domain.
    pub fn in_domain(&self, m: &[u32]) -> bool {
        match self {
            Preset::Position => m[1] <= 1,
            Preset::Cylinder => m[0] <= 1,
            _ => true,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Preset> {
        if s == "affine+" {
            return Ok(Preset::Affine { minus: false });
        }
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset `{s}`")))
    }
}

/// A preset bound to its source space and target ring.
#[derive(Clone, Debug)]
pub struct Prequantizer {
    pub preset: Preset,
    pub space: Space,
    pub ring: Ring,
    /// Values substituted for formal parameters in every image.
    pub values: Vec<(Param, ParamScalar)>,
}

fn minus_i_hbar() -> ParamScalar {
    -&(&ParamScalar::i() * &ParamScalar::hbar())
}

/// `1/2 + i eta`.
fn half_plus_i_eta() -> ParamScalar {
    &ParamScalar::ratio(1, 2) + &(&ParamScalar::i() * &ParamScalar::param(Param::Eta))
}

impl Prequantizer {
    pub fn new(preset: Preset, space: &Space) -> Result<Self> {
        if space.kind != preset.space_kind() {
            return Err(Error::IncompatiblePreset(
                preset.name().into(),
                space.name(),
            ));
        }
        let ring = match preset {
            Preset::VanHove => DiffRing::plane(),
            Preset::Position | Preset::Affine { .. } => DiffRing::line(),
            Preset::Cylinder => DiffRing::circle(),
            Preset::Torus => DiffRing::torus(),
        };
        Ok(Prequantizer {
            preset,
            space: space.clone(),
            ring,
            values: Vec::new(),
        })
    }

    /// Fixes a formal parameter such as `eta` or `nu` to `value`.
    pub fn bind(mut self, p: Param, value: ParamScalar) -> Self {
        self.values.push((p, value));
        self
    }

    /// Basis monomials of degree at most `cap` inside the domain.
    pub fn basis(&self, cap: u32) -> Vec<PoissonPoly> {
        self.space
            .ring
            .monomials_up_to(cap)
            .into_iter()
            .filter(|m| self.preset.in_domain(m))
            .map(|m| PoissonPoly::monomial(&self.space, m))
            .collect()
    }

    fn outside(&self, m: &Mono) -> Error {
        Error::UnassignedMonomial(PoissonPoly::monomial(&self.space, m.clone()).to_string())
    }

    /// Splits `f` as `a * v + b` with `v` the variable at `slot`, mapping the
    /// remaining variables into the target ring by `place`.
    fn affine_split(
        &self,
        f: &PoissonPoly,
        slot: usize,
        place: impl Fn(&Mono) -> Mono,
    ) -> Result<(Poly, Poly)> {
        let n = self.ring.ring.nvars();
        let mut a = Poly::zero(n);
        let mut b = Poly::zero(n);
        for (m, c) in f.terms() {
            let target = place(m);
            match m[slot] {
                0 => b.add_term(target, c),
                1 => a.add_term(target, c),
                _ => return Err(self.outside(m)),
            }
        }
        Ok((a, b))
    }

    pub fn image(&self, f: &PoissonPoly) -> Result<DiffOpPoly> {
        if f.space().kind != self.space.kind {
            return Err(Error::SpaceMismatch(f.space().name(), self.space.name()));
        }
        let ring = &self.ring;
        let mih = minus_i_hbar();
        let ih = -&mih;
        let mult = |p: &Poly| DiffOpPoly::mult(ring, p);
        let deriv = |k: usize, p: &Poly| DiffOpPoly::derivation(ring, k, p);
        let op = match self.preset {
            Preset::VanHove => {
                let f = f.poly().clone();
                let (fq, fp) = (f.partial(0), f.partial(1));
                let p = ring.ring.var(1);
                deriv(0, &fp.scale(&mih))
                    .add(&deriv(1, &fq.scale(&ih)))?
                    .add(&mult(&f.sub(&ring.ring.mul(&fp, &p))))?
            }
            Preset::Position => {
                let (a, b) = self.affine_split(f, 1, |m| vec![m[0]])?;
                let da = ring.derive(0, &a);
                deriv(0, &a)
                    .add(&mult(&da.scale(&half_plus_i_eta())))?
                    .scale(&mih)
                    .add(&mult(&b))?
            }
            Preset::Cylinder => {
                let (a, b) = self.affine_split(f, 0, |m| vec![m[1], m[2]])?;
                let da = ring.derive(0, &a);
                let i_nu = &ParamScalar::i() * &ParamScalar::param(Param::Nu);
                deriv(0, &a)
                    .add(&mult(&da.scale(&half_plus_i_eta())))?
                    .add(&mult(&a.scale(&i_nu)))?
                    .scale(&mih)
                    .add(&mult(&b))?
            }
            Preset::Torus => {
                let g = torus_embed(ring, f);
                let (fx, fy) = (ring.derive(0, &g), ring.derive(1, &g));
                let x = ring.ring.var(0);
                deriv(1, &fx.scale(&mih))
                    .add(&deriv(0, &fy.scale(&ih)))?
                    .add(&mult(&g.sub(&ring.ring.mul(&fx, &x))))?
            }
            Preset::Affine { minus } => {
                let mut acc = DiffOpPoly::zero(ring);
                let q = ring.ring.var(0);
                let sign = if minus { -1 } else { 1 };
                for (m, c) in f.terms() {
                    let img = match (m[0], m[1]) {
                        (0, 0) => DiffOpPoly::identity(ring),
                        (1, 0) => deriv(0, &q.scale(&mih)),
                        (0, 1) => mult(&ring.ring.mul(&q, &q).scale_gq(&Gq::int(sign))),
                        _ => continue,
                    };
                    acc = acc.add(&img.scale(c))?;
                }
                acc
            }
        };
        Ok(self
            .values
            .iter()
            .fold(op, |op, (p, v)| op.substitute(*p, v)))
    }
}

/// A trigonometric polynomial on `t2` as an element of [`DiffRing::torus`].
pub fn torus_embed(ring: &Ring, f: &PoissonPoly) -> Poly {
    let mut g = Poly::zero(ring.ring.nvars());
    for (m, c) in f.terms() {
        let mut t = vec![0, 0];
        t.extend_from_slice(m);
        g.add_term(t, c);
    }
    ring.ring.reduce(&g)
}

/// `Q({f, g}) - (i/hbar)[Q(f), Q(g)]` for one pair.
#[derive(Clone, Debug)]
pub struct PairResidual {
    pub f: PoissonPoly,
    pub g: PoissonPoly,
    pub residual: DiffOpPoly,
}

impl Prequantizer {
    pub fn residual(&self, f: &PoissonPoly, g: &PoissonPoly) -> Result<PairResidual> {
        let lhs = self.image(&bracket(f, g)?)?;
        let rhs = diffop_i_over_hbar(&self.image(f)?, &self.image(g)?)?;
        Ok(PairResidual {
            f: f.clone(),
            g: g.clone(),
            residual: lhs.sub(&rhs)?,
        })
    }
}

/// Residuals of the bracket rule on every unordered pair of basis
/// monomials of degree at most `cap`.
pub fn prequantization_residuals(
    space: &Space,
    preset: Preset,
    cap: u32,
) -> Result<Vec<PairResidual>> {
    Prequantizer::new(preset, space)?.residuals(cap)
}

impl Prequantizer {
    /// Residuals on every unordered pair of basis monomials up to `cap`.
    pub fn residuals(&self, cap: u32) -> Result<Vec<PairResidual>> {
        let pq = self;
        let basis = pq.basis(cap);
        let mut out = Vec::new();
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                out.push(pq.residual(f, g)?);
            }
        }
        Ok(out)
    }
}

/// Summarizes residuals as one check: `"0"` or the first offending pair.
pub fn summarize(id: &str, residuals: &[PairResidual], source: Source) -> Check {
    match residuals.iter().find(|r| !r.residual.is_zero()) {
        None => Check::symbolic(id, "0", true, source),
        Some(r) => Check::symbolic(
            id,
            format_args!("{{{}, {}}}: {}", r.f, r.g, r.residual),
            false,
            source,
        ),
    }
}

/// Checks `Q(1) = I` and the bracket rule on all basis pairs up to `cap`.
pub fn verify_prequantization(space: &Space, preset: Preset, cap: u32) -> Result<ScenarioReport> {
    verify_prequantizer(&Prequantizer::new(preset, space)?, cap)
}

/// [`verify_prequantization`] for a prequantizer with bound parameters.
pub fn verify_prequantizer(pq: &Prequantizer, cap: u32) -> Result<ScenarioReport> {
    let (space, preset) = (&pq.space, pq.preset);
    let one = pq.image(&PoissonPoly::one(space))?;
    let id = DiffOpPoly::identity(&pq.ring);
    let mut report = ScenarioReport::new("prequantization")
        .param("space", space.name())
        .param("preset", preset.name())
        .param("degree", cap);
    for (p, v) in &pq.values {
        report = report.param(p.name(), v.to_string());
    }
    let d = one.sub(&id)?;
    report.push(Check::symbolic(
        "identity",
        &d,
        d.is_zero(),
        Source::Trivial,
    ));
    let res = pq.residuals(cap)?;
    report = report.param("pairs", res.len());
    let source = match preset {
        Preset::Torus => Source::Derived,
        _ => Source::Paper,
    };
    report.push(summarize("bracket_rule", &res, source));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::make_space;

    #[test]
    fn van_hove_position_and_momentum() {
        let r = make_space(SpaceKind::R2n(1)).unwrap();
        let pq = Prequantizer::new(Preset::VanHove, &r).unwrap();
        let p = pq.image(&PoissonPoly::named(&r, "p").unwrap()).unwrap();
        assert_eq!(p.to_string(), "-i*hbar*d_q");
        let q = pq.image(&PoissonPoly::named(&r, "q").unwrap()).unwrap();
        assert_eq!(q.to_string(), "q + i*hbar*d_p");
    }

    #[test]
    fn incompatible() {
        let s = make_space(SpaceKind::S2).unwrap();
        assert!(matches!(
            Prequantizer::new(Preset::VanHove, &s),
            Err(Error::IncompatiblePreset(..))
        ));
    }

    #[test]
    fn position_rejects_quadratic_momentum() {
        let r = make_space(SpaceKind::R2n(1)).unwrap();
        let pq = Prequantizer::new(Preset::Position, &r).unwrap();
        let p2 = PoissonPoly::monomial(&r, vec![0, 2]);
        assert!(matches!(pq.image(&p2), Err(Error::UnassignedMonomial(_))));
    }

    #[test]
    fn low_caps_vanish() {
        for preset in Preset::ALL {
            let s = make_space(preset.space_kind()).unwrap();
            let rep = verify_prequantization(&s, preset, 2).unwrap();
            assert!(rep.all_pass(), "{preset}: {:?}", rep.checks);
        }
    }
}

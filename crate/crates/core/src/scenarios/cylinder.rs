//! Obstruction on the cylinder `T*S^1`: the e(2) quantization does not
//! extend to polynomials quadratic in the angular momentum `l`.

use crate::error::Result;
use crate::opalg::{i_over_hbar_commutator, op_algebra, OpAlgebra, OpAlgebraKind, OpPoly};
use crate::poisson::{bracket, make_space, PoissonPoly, Space, SpaceKind};
use crate::scalars::{Gq, Param, ParamScalar};

use super::prequant::{prequantization_residuals, summarize, Preset};
use super::report::{Check, ScenarioReport, Source};

/// Degree cap for the check of the position family on `L^1`.
pub const POSITION_CAP: u32 = 4;

fn ops(alg: &OpAlgebra) -> (OpPoly, OpPoly, OpPoly) {
    let g = |n: &str| OpPoly::named(alg, n).expect("e2 generator");
    (g("L"), g("C"), g("S"))
}

fn ih() -> ParamScalar {
    &ParamScalar::i() * &ParamScalar::hbar()
}

fn quarter_hbar2() -> ParamScalar {
    ParamScalar::hbar().pow(2).scale(&Gq::ratio(1, 4))
}

/// Images of `l^2 sin` and `l^2 cos` as stated by the rules
/// `Q(l^2 sin) = S L^2 - i hbar C L + (hbar^2/4) S` and
/// `Q(l^2 cos) = C L^2 + i hbar S L + (hbar^2/4) C`.
pub fn stated_rules(alg: &OpAlgebra) -> (OpPoly, OpPoly) {
    let (l, c, s) = ops(alg);
    let l2 = l.mul(&l);
    let l2s = s
        .mul(&l2)
        .sub(&c.mul(&l).scale(&ih()))
        .add(&s.scale(&quarter_hbar2()));
    let l2c = c
        .mul(&l2)
        .add(&s.mul(&l).scale(&ih()))
        .add(&c.scale(&quarter_hbar2()));
    (l2s, l2c)
}

/// The same images obtained from `Q(l^2) = L^2 + c I`, the position images
/// `Q(l cos) = C L + (i hbar/2) S`, `Q(l sin) = S L - (i hbar/2) C` and the
/// brackets `{l^2, l cos} = -2 l^2 sin`, `{l^2, l sin} = 2 l^2 cos`.
pub fn derived_rules(alg: &OpAlgebra, c_value: &ParamScalar) -> Result<(OpPoly, OpPoly)> {
    let (l, c, s) = ops(alg);
    let half_ih = ih().scale(&Gq::ratio(1, 2));
    let q_l2 = l.mul(&l).add(&OpPoly::scalar(alg, c_value.clone()));
    let q_lc = c.mul(&l).add(&s.scale(&half_ih));
    let q_ls = s.mul(&l).sub(&c.scale(&half_ih));
    let l2s = i_over_hbar_commutator(&q_l2, &q_lc)?.scale(&ParamScalar::ratio(-1, 2));
    let l2c = i_over_hbar_commutator(&q_l2, &q_ls)?.scale(&ParamScalar::ratio(1, 2));
    Ok((l2s, l2c))
}

/// `2 (i/hbar)[(i/hbar)[Q(l^2 sin), Q(l^2 cos)], C] - 12 Q(l^2 sin)`, the
/// quantized defect of `2{{l^2 sin, l^2 cos}, cos} = 12 l^2 sin`.
pub fn relation_sides(alg: &OpAlgebra, l2s: &OpPoly, l2c: &OpPoly) -> Result<(OpPoly, OpPoly)> {
    let (_, c, _) = ops(alg);
    let inner = i_over_hbar_commutator(l2s, l2c)?;
    let lhs = i_over_hbar_commutator(&inner, &c)?.scale(&ParamScalar::int(2));
    let rhs = l2s.scale(&ParamScalar::int(12));
    Ok((lhs, rhs))
}

/// `12 S L^2 - 12 i hbar C L + k hbar^2 S`.
fn reduced_form(alg: &OpAlgebra, k: i64) -> OpPoly {
    let (l, c, s) = ops(alg);
    s.mul(&l.mul(&l))
        .sub(&c.mul(&l).scale(&ih()))
        .scale(&ParamScalar::int(12))
        .add(&s.scale(&ParamScalar::hbar().pow(2).scale(&Gq::int(k))))
}

fn classical_relation(space: &Space) -> Result<PoissonPoly> {
    let g = |n: &str| PoissonPoly::named(space, n);
    let (l, c, s) = (g("l")?, g("cos_theta")?, g("sin_theta")?);
    let l2 = l.mul(&l);
    let lhs = bracket(&bracket(&l2.mul(&s), &l2.mul(&c))?, &c)?.scale(&ParamScalar::int(2));
    Ok(lhs.sub(&l2.mul(&s).scale(&ParamScalar::int(12))))
}

fn mentions(x: &OpPoly, p: Param) -> bool {
    x.terms().any(|(_, c)| c.params().contains(&p))
}

pub fn run_cylinder(include_c: bool) -> Result<ScenarioReport> {
    run_cylinder_capped(include_c, POSITION_CAP)
}

/// [`run_cylinder`] with a custom degree cap for the position family.
pub fn run_cylinder_capped(include_c: bool, cap: u32) -> Result<ScenarioReport> {
    let space = make_space(SpaceKind::TStarS1)?;
    let alg = op_algebra(OpAlgebraKind::E2);
    let mut report = ScenarioReport::new("cylinder")
        .param("space", "tstar_s1")
        .param("include_c", include_c);

    let d = classical_relation(&space)?;
    report.push(Check::symbolic(
        "classical_relation",
        &d,
        d.is_zero(),
        Source::Paper,
    ));

    let (s_l2s, s_l2c) = stated_rules(&alg);
    let c_value = if include_c {
        ParamScalar::param(Param::C)
    } else {
        ParamScalar::zero()
    };
    let (d_l2s, d_l2c) = derived_rules(&alg, &c_value)?;
    for (id, a, b) in [
        ("rule_l2_sin", &d_l2s, &s_l2s),
        ("rule_l2_cos", &d_l2c, &s_l2c),
    ] {
        let diff = a.sub(b);
        report.push(Check::symbolic(id, &diff, diff.is_zero(), Source::Derived));
    }

    let (lhs, rhs) = relation_sides(&alg, &s_l2s, &s_l2c)?;
    for (id, x, k) in [("lhs_reduced", &lhs, 5), ("rhs_reduced", &rhs, 3)] {
        let diff = x.sub(&reduced_form(&alg, k));
        report.push(Check::symbolic(id, &diff, diff.is_zero(), Source::Paper));
    }

    // the defect is computed from the images carrying c
    let (lhs_c, rhs_c) = relation_sides(&alg, &d_l2s, &d_l2c)?;
    let residual = lhs_c.sub(&rhs_c);
    let (_, _, s) = ops(&alg);
    let expected = s.scale(&ParamScalar::hbar().pow(2).scale(&Gq::int(2)));
    report.push(
        Check::symbolic(
            "bracket_relation",
            &residual,
            residual == expected,
            Source::Paper,
        )
        .as_witness(),
    );
    if include_c {
        let free = !mentions(&d_l2s, Param::C) && !mentions(&residual, Param::C);
        report.push(Check::symbolic(
            "independent_of_c",
            if free { "0" } else { "c" },
            free,
            Source::Derived,
        ));
    }

    let res = prequantization_residuals(&space, Preset::Cylinder, cap)?;
    report = report
        .param("degree", cap)
        .param("position_pairs", res.len());
    report.push(summarize("position_family", &res, Source::Paper));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_survives_numeric_c() {
        // oracle for the formal computation: three numeric values of c
        let alg = op_algebra(OpAlgebraKind::E2);
        let (_, _, s) = ops(&alg);
        let expected = s.scale(&ParamScalar::hbar().pow(2).scale(&Gq::int(2)));
        for c in [-3, 0, 7] {
            let (a, b) = derived_rules(&alg, &ParamScalar::int(c)).unwrap();
            let (l, r) = relation_sides(&alg, &a, &b).unwrap();
            assert_eq!(l.sub(&r), expected);
        }
    }

    #[test]
    fn report_is_obstructed() {
        let r = run_cylinder(true).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        assert_eq!(
            r.check("bracket_relation").unwrap().residual.to_string(),
            "2*hbar^2*S"
        );
    }
}

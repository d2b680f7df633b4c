//! Obstruction on the plane: the quantization of the Heisenberg algebra
//! `{1, q, p}` does not extend to polynomials of degree three.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalg::{i_over_hbar_commutator, op_algebra, OpAlgebraKind, OpPoly};
use crate::poisson::{make_space, PoissonPoly, SpaceKind};
use crate::reps::{schrodinger_matrices, solve_quadratic_element, Mat, MatrixRep};
use crate::scalars::{Bindings, Gq, Param, ParamScalar};

use super::quant::QuantMap;
use super::report::{Check, ScenarioReport, Source};
use super::{MatrixCheck, Mode};

/// Smallest truncation accepted in matrix mode.
pub const MIN_TRUNCATION: usize = 10;

/// Schrödinger images on monomials of degree at most three, filled in by
/// the rules `Q(r(q)) = r(Q)`, `Q(r(p)) = r(P)`, `Q(r(q) p) = (r(Q)P +
/// P r(Q))/2` and `Q(q r(p)) = (Q r(P) + r(P) Q)/2`.
pub fn cubic_quantization() -> Result<QuantMap<OpPoly>> {
    let space = make_space(SpaceKind::R2n(1))?;
    let w = op_algebra(OpAlgebraKind::Weyl(1));
    let q = OpPoly::named(&w, "Q")?;
    let p = OpPoly::named(&w, "P")?;
    let half = ParamScalar::ratio(1, 2);
    let mut map = QuantMap::new(&space, OpPoly::identity(&w));
    map.rule("Q(r(q)) = r(Q(q))");
    map.rule("Q(r(p)) = r(Q(p))");
    map.rule("Q(r(q) p) = (r(Q(q)) Q(p) + Q(p) r(Q(q)))/2");
    map.rule("Q(q r(p)) = (Q(q) r(Q(p)) + r(Q(p)) Q(q))/2");
    for k in 1..=3u32 {
        map.assign(vec![k, 0], q.pow(k));
        map.assign(vec![0, k], p.pow(k));
    }
    for k in 1..=2u32 {
        map.assign(vec![k, 1], q.pow(k).anticommutator(&p).scale(&half));
        if k > 1 {
            map.assign(vec![1, k], q.anticommutator(&p.pow(k)).scale(&half));
        }
    }
    Ok(map)
}

/// `Q(q^a p^b)`.
fn image(map: &QuantMap<OpPoly>, a: u32, b: u32) -> Result<OpPoly> {
    map.image(&PoissonPoly::monomial(&map.space, vec![a, b]))
}

fn hbar2(c: Gq) -> ParamScalar {
    ParamScalar::hbar().pow(2).scale(&c)
}

/// `Q(qp)^2 - (Q(q^2)Q(p^2) + Q(p^2)Q(q^2))/2`: the two ways of
/// quantizing `q^2 p^2` from the quadratics under the product rule.
pub fn anticommutator_residual(map: &QuantMap<OpPoly>) -> Result<OpPoly> {
    let qp = image(map, 1, 1)?;
    let q2 = image(map, 2, 0)?;
    let p2 = image(map, 0, 2)?;
    Ok(qp
        .mul(&qp)
        .sub(&q2.anticommutator(&p2).scale(&ParamScalar::ratio(1, 2))))
}

/// Quantized sides of `{p^3, q^3}/9 = {q p^2, q^2 p}/3`, both equal to
/// `q^2 p^2` when `{p, q} = 1`, with brackets replaced by `(i/hbar)`
/// commutators of the images.
pub fn cubic_sides(map: &QuantMap<OpPoly>) -> Result<(OpPoly, OpPoly)> {
    let a = i_over_hbar_commutator(&image(map, 0, 3)?, &image(map, 3, 0)?)?;
    let b = i_over_hbar_commutator(&image(map, 1, 2)?, &image(map, 2, 1)?)?;
    Ok((
        a.scale(&ParamScalar::ratio(1, 9)),
        b.scale(&ParamScalar::ratio(1, 3)),
    ))
}

/// Difference of the two sides of [`cubic_sides`].
pub fn cubic_residual(map: &QuantMap<OpPoly>) -> Result<OpPoly> {
    let (l, r) = cubic_sides(map)?;
    Ok(l.sub(&r))
}

/// `Q^2 P^2 - 2 i hbar Q P - k hbar^2`.
fn cubic_reduced_form(map: &QuantMap<OpPoly>, k: Gq) -> Result<OpPoly> {
    let q = image(map, 1, 0)?;
    let p = image(map, 0, 1)?;
    let ih = &ParamScalar::i() * &ParamScalar::hbar();
    Ok(q.pow(2)
        .mul(&p.pow(2))
        .sub(&q.mul(&p).scale(&ih.scale(&Gq::int(2))))
        .sub(&map.identity().scale(&hbar2(k))))
}

pub fn run_groenewold(mode: Mode, truncation: usize) -> Result<ScenarioReport> {
    run_groenewold_with(mode, truncation, &MatrixCheck::default())
}

/// [`run_groenewold`] with an explicit tolerance for the matrix check of
/// the anticommutator identity. The matrices are evaluated at `hbar = 1`.
pub fn run_groenewold_with(
    mode: Mode,
    truncation: usize,
    numeric: &MatrixCheck,
) -> Result<ScenarioReport> {
    if mode == Mode::Matrix && truncation < MIN_TRUNCATION {
        return Err(Error::TruncationTooSmall {
            got: truncation,
            min: MIN_TRUNCATION,
        });
    }
    let map = cubic_quantization()?;
    let id = map.identity().clone();
    let mut report = ScenarioReport::new("groenewold")
        .param("space", "r2n(1)")
        .param("mode", mode.name());

    let qp = i_over_hbar_commutator(&image(&map, 0, 1)?, &image(&map, 1, 0)?)?;
    report.push(Check::symbolic(
        "canonical_relation",
        qp.sub(&id),
        qp == id,
        Source::Trivial,
    ));

    let a = anticommutator_residual(&map)?;
    let a_expected = id.scale(&hbar2(Gq::ratio(3, 4)));
    report.push(
        Check::symbolic("anticommutator_rule", &a, a == a_expected, Source::Paper).as_witness(),
    );

    let (lhs, rhs) = cubic_sides(&map)?;
    for (id, side, k) in [
        ("cubic_lhs_reduced", &lhs, Gq::ratio(2, 3)),
        ("cubic_rhs_reduced", &rhs, Gq::ratio(1, 3)),
    ] {
        let d = side.sub(&cubic_reduced_form(&map, k)?);
        report.push(Check::symbolic(id, &d, d.is_zero(), Source::Paper));
    }
    let b = lhs.sub(&rhs);
    let b_expected = id.scale(&hbar2(Gq::ratio(-1, 3)));
    report.push(Check::symbolic("cubic_relation", &b, b == b_expected, Source::Paper).as_witness());

    if mode == Mode::Matrix {
        report = report
            .param("truncation", truncation)
            .param("tolerance", numeric.tolerance);
        let sol = solve_quadratic_element(truncation)?;
        let mut dev: f64 = 0.0;
        let mut track = |got: &Gq, want: Gq| dev = dev.max((got - &want).to_c64().norm());
        for v in &sol.upper {
            track(v, Gq::ratio(1, 4));
        }
        for (k, v) in sol.lower.iter().enumerate() {
            let k = k as i64 + 2;
            track(v, Gq::int(k * (k - 1)));
        }
        for (k, v) in sol.diagonal_shift.iter().enumerate() {
            track(v, Gq::int(k as i64));
        }
        track(&sol.epsilon, Gq::zero());
        let mut bands = Check::numeric("quadratic_rule_bands", dev, 1e-10, Source::Paper);
        bands.pass &= sol.symmetric_product;
        report.push(bands);

        // the anticommutator identity on the untruncated columns, at hbar = 1
        let rep = schrodinger_matrices(truncation)?;
        let bind = Bindings::new().exact(Param::Hbar, Gq::one());
        let diff = product_difference(&rep, &bind)?;
        let target = Mat::<Complex64>::identity(truncation).scale(&Complex64::new(0.75, 0.0));
        let cols = rep.interior(4);
        let err = diff.max_abs_diff(&target, 0..truncation, cols);
        report.push(Check::numeric(
            "anticommutator_rule_matrix",
            err,
            numeric.tolerance,
            Source::Derived,
        ));
    }
    Ok(report.finish())
}

/// `(PQ + QP)^2/4 - (P^2 Q^2 + Q^2 P^2)/2` as a product of truncated matrices.
fn product_difference(rep: &MatrixRep, bind: &Bindings) -> Result<Mat<Complex64>> {
    let q = rep.get("Q")?.eval(bind)?;
    let p = rep.get("P")?.eval(bind)?;
    let s = q.anticommutator(&p);
    let lhs = s.mul(&s).scale(&Complex64::new(0.25, 0.0));
    let p2 = p.mul(&p);
    let q2 = q.mul(&q);
    let rhs = p2.anticommutator(&q2).scale(&Complex64::new(0.5, 0.0));
    Ok(lhs.sub(&rhs))
}

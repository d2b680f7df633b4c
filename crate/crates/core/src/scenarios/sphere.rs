//! Obstruction on the sphere: the spin-`j` quantization of su(2) does not
//! extend to quadratic polynomials in `S1, S2, S3`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opalg::{i_over_hbar_commutator, op_algebra, OpAlgebra, OpAlgebraKind, OpPoly};
use crate::poisson::{bracket, make_space, PoissonPoly, Space, SpaceKind};
use crate::reps::{evaluate_oppoly, spin_matrices, Mat, Spin};
use crate::scalars::{Bindings, Gq, Param, ParamMono, ParamScalar};

use super::quant::QuantMap;
use super::report::{Check, ScenarioReport, Source};
use super::{MatrixCheck, Mode};

/// Value of `a` used for the numeric cross-check.
pub const MATRIX_A: f64 = 0.7;

/// Images `Q(S_i) = S_i`, `Q(S_i^2) = a S_i^2 + c` and `Q(S_i S_k) =
/// (a/2)(S_i S_k + S_k S_i)` with formal `a`, `c`. `S3^2` is not a reduced
/// monomial and is left unassigned.
pub fn sphere_quantization() -> Result<QuantMap<OpPoly>> {
    let space = make_space(SpaceKind::S2)?;
    let alg = op_algebra(OpAlgebraKind::Su2);
    let a = ParamScalar::param(Param::A);
    let c = ParamScalar::param(Param::C);
    let mut map = QuantMap::new(&space, OpPoly::identity(&alg));
    map.rule("Q(S_i^2) = a Q(S_i)^2 + c I");
    map.rule("Q(S_i S_k) = (a/2)(Q(S_i) Q(S_k) + Q(S_k) Q(S_i))");
    let gens: Vec<OpPoly> = (0..3).map(|i| OpPoly::generator(&alg, i)).collect();
    for i in 0..3 {
        let mut m = vec![0; 3];
        m[i] = 1;
        map.assign(m.clone(), gens[i].clone());
        if i < 2 {
            m[i] = 2;
            let img = gens[i]
                .pow(2)
                .scale(&a)
                .add(&OpPoly::scalar(&alg, c.clone()));
            map.assign(m, img);
        }
        for k in i + 1..3 {
            let mut m = vec![0; 3];
            m[i] = 1;
            m[k] = 1;
            let img = gens[i]
                .anticommutator(&gens[k])
                .scale(&a.scale(&Gq::ratio(1, 2)));
            map.assign(m, img);
        }
    }
    Ok(map)
}

fn gen(space: &Space, name: &str) -> PoissonPoly {
    PoissonPoly::named(space, name).expect("sphere generator")
}

/// Left and right sides of `s^2 S3 = {S1 S2, S1^2 - S2^2} - {S3 S1, S2 S3}`.
/// With `{S1, S2} = -S3` this is the orientation in which the identity holds.
pub fn relation_one(space: &Space) -> Result<(PoissonPoly, PoissonPoly)> {
    let (s1, s2, s3) = (gen(space, "S1"), gen(space, "S2"), gen(space, "S3"));
    let lhs = s3.scale(&ParamScalar::param(Param::S).pow(2));
    let rhs = bracket(&s1.mul(&s2), &s1.mul(&s1).sub(&s2.mul(&s2)))?
        .sub(&bracket(&s3.mul(&s1), &s2.mul(&s3))?);
    Ok((lhs, rhs))
}

/// Left and right sides of `2 s^2 S2 S3 = {S2^2, {S1 S2, S1 S3}} -
/// (3/4){S1^2, {S1^2, S2 S3}}`.
pub fn relation_two(space: &Space) -> Result<(PoissonPoly, PoissonPoly)> {
    let (s1, s2, s3) = (gen(space, "S1"), gen(space, "S2"), gen(space, "S3"));
    let lhs = s2
        .mul(&s3)
        .scale(&ParamScalar::param(Param::S).pow(2).scale(&Gq::int(2)));
    let a = bracket(&s2.mul(&s2), &bracket(&s1.mul(&s2), &s1.mul(&s3))?)?;
    let b = bracket(&s1.mul(&s1), &bracket(&s1.mul(&s1), &s2.mul(&s3))?)?;
    Ok((lhs, a.sub(&b.scale(&ParamScalar::ratio(3, 4)))))
}

/// Quantized right side of the first relation, brackets replaced by
/// `(i/hbar)` commutators of the images of quadratics.
pub fn quantized_relation_one(map: &QuantMap<OpPoly>) -> Result<OpPoly> {
    let s = &map.space;
    let (s1, s2, s3) = (gen(s, "S1"), gen(s, "S2"), gen(s, "S3"));
    let q = |f: &PoissonPoly| map.image(f);
    let x = i_over_hbar_commutator(&q(&s1.mul(&s2))?, &q(&s1.mul(&s1).sub(&s2.mul(&s2)))?)?;
    let y = i_over_hbar_commutator(&q(&s3.mul(&s1))?, &q(&s2.mul(&s3))?)?;
    Ok(x.sub(&y))
}

/// Quantized right side of the second relation. The inner brackets are
/// cubic, so they are quantized as commutators too.
pub fn quantized_relation_two(map: &QuantMap<OpPoly>) -> Result<OpPoly> {
    let s = &map.space;
    let (s1, s2, s3) = (gen(s, "S1"), gen(s, "S2"), gen(s, "S3"));
    let q = |f: &PoissonPoly| map.image(f);
    let inner = i_over_hbar_commutator(&q(&s1.mul(&s2))?, &q(&s1.mul(&s3))?)?;
    let x = i_over_hbar_commutator(&q(&s2.mul(&s2))?, &inner)?;
    let inner = i_over_hbar_commutator(&q(&s1.mul(&s1))?, &q(&s2.mul(&s3))?)?;
    let y = i_over_hbar_commutator(&q(&s1.mul(&s1))?, &inner)?;
    Ok(x.sub(&y.scale(&ParamScalar::ratio(3, 4))))
}

/// `S1^2 + S2^2 + S3^2`.
pub fn casimir(alg: &OpAlgebra) -> OpPoly {
    (0..3)
        .map(|i| OpPoly::generator(alg, i).pow(2))
        .fold(OpPoly::zero(alg), |acc, x| acc.add(&x))
}

/// `x = alpha * Cas * base + beta * base + remainder`.
#[derive(Clone, Debug)]
pub struct PatternMatch {
    pub alpha: ParamScalar,
    pub beta: ParamScalar,
    pub remainder: OpPoly,
}

/// Matches `x` against `alpha Cas base + beta base`, reading `alpha` and
/// `beta` off the longest words of the two patterns.
pub fn match_casimir_pattern(x: &OpPoly, base: &OpPoly) -> Result<PatternMatch> {
    let alg = base.algebra();
    let pattern = casimir(alg).mul(base);
    let ratio = |x: &OpPoly, p: &OpPoly| -> Result<ParamScalar> {
        let (w, c) = p
            .terms()
            .filter(|(_, c)| c.is_constant())
            .max_by(|a, b| a.0.len().cmp(&b.0.len()).then(b.0.cmp(a.0)))
            .ok_or_else(|| Error::SingularSystem(format!("pattern `{p}` has no constant term")))?;
        let c = c.as_constant().unwrap_or_else(Gq::one);
        x.coefficient(w)
            .div_gq(&c)
            .ok_or_else(|| Error::SingularSystem(format!("pattern `{p}` has a zero leading term")))
    };
    let alpha = ratio(x, &pattern)?;
    let rest = x.sub(&pattern.scale(&alpha));
    let beta = ratio(&rest, base)?;
    let remainder = rest.sub(&base.scale(&beta));
    Ok(PatternMatch {
        alpha,
        beta,
        remainder,
    })
}

/// `a^2 hbar^2 (j(j+1) - shift)`.
fn expected_constraint(spin: Spin, shift: Gq) -> ParamScalar {
    let a2h2 = &ParamScalar::param(Param::A).pow(2) * &ParamScalar::hbar().pow(2);
    a2h2.scale(&(&spin.casimir() - &shift))
}

/// Value forced on `s^2` by a matched relation with `Cas = hbar^2 j(j+1)`.
fn forced(m: &PatternMatch, spin: Spin) -> ParamScalar {
    &(&m.alpha * &ParamScalar::hbar().pow(2)).scale(&spin.casimir()) + &m.beta
}

/// `sum conj(b) x / sum |b|^2` and the sup norm of what is left over.
fn project(x: &Mat<Complex64>, b: &Mat<Complex64>) -> (Complex64, f64) {
    let n = x.dim();
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for j in 0..n {
        for k in 0..n {
            num += b.get(j, k).conj() * x.get(j, k);
            den += b.get(j, k).norm_sqr();
        }
    }
    let lambda = if den > 0.0 {
        num / den
    } else {
        Complex64::new(0.0, 0.0)
    };
    let off = x.max_abs_diff(&b.scale(&lambda), 0..n, 0..n);
    (lambda, off)
}

pub fn run_sphere(spin: Spin, mode: Mode) -> Result<ScenarioReport> {
    run_sphere_with(spin, mode, &MatrixCheck::default())
}

/// [`run_sphere`] with explicit settings for the matrix cross-check.
pub fn run_sphere_with(spin: Spin, mode: Mode, numeric: &MatrixCheck) -> Result<ScenarioReport> {
    let hbar = numeric.hbar;
    let mut report = ScenarioReport::new("sphere")
        .param("space", "s2")
        .param("spin", spin.to_string())
        .param("mode", mode.name());
    if spin.twice() == 0 {
        // spin 0 sends su(2) to zero and is not a quantization
        return Ok(report.param("trivial", true).finish());
    }
    let map = sphere_quantization()?;
    let space = map.space.clone();
    let alg = map.identity().algebra().clone();
    let s3 = OpPoly::generator(&alg, 2);
    let anti23 = OpPoly::generator(&alg, 1).anticommutator(&s3);

    for (id, (l, r)) in [
        ("classical_relation_1", relation_one(&space)?),
        ("classical_relation_2", relation_two(&space)?),
    ] {
        let d = l.sub(&r);
        report.push(Check::symbolic(id, &d, d.is_zero(), Source::Paper));
    }

    let rhs1 = quantized_relation_one(&map)?;
    let a = ParamScalar::param(Param::A);
    let a2 = a.pow(2);
    let normal = casimir(&alg)
        .sub(&OpPoly::scalar(
            &alg,
            ParamScalar::hbar().pow(2).scale(&Gq::ratio(3, 4)),
        ))
        .mul(&s3)
        .scale(&a2);
    let d = rhs1.sub(&normal);
    report.push(Check::symbolic(
        "relation_1_normal_form",
        &d,
        d.is_zero(),
        Source::Derived,
    ));

    let m1 = match_casimir_pattern(&rhs1, &s3)?;
    report.push(Check::symbolic(
        "relation_1_pattern",
        &m1.remainder,
        m1.remainder.is_zero(),
        Source::Derived,
    ));
    let c1 = forced(&m1, spin);
    let e1 = expected_constraint(spin, Gq::ratio(3, 4));
    report.push(Check::symbolic(
        "constraint_1",
        &c1,
        c1 == e1,
        Source::Paper,
    ));

    let rhs2 = quantized_relation_two(&map)?;
    let m2 = match_casimir_pattern(&rhs2, &anti23)?;
    report.push(Check::symbolic(
        "relation_2_pattern",
        &m2.remainder,
        m2.remainder.is_zero(),
        Source::Derived,
    ));
    // the left side is s^2 a (S2 S3 + S3 S2)
    let c2 = forced(&m2, spin)
        .div_mono(&ParamMono::of(Param::A, 1))
        .ok_or_else(|| Error::NotDivisible(forced(&m2, spin).to_string(), "a".into()))?;
    let e2 = expected_constraint(spin, Gq::ratio(9, 4));
    report.push(Check::symbolic(
        "constraint_2",
        &c2,
        c2 == e2,
        Source::Paper,
    ));

    let s2 = ParamScalar::param(Param::S).pow(2);
    if spin.twice() == 1 {
        let r = &s2 - &c1;
        report.push(
            Check::symbolic(
                "constraint_1_forces_s_zero",
                &r,
                c1.is_zero(),
                Source::Paper,
            )
            .as_witness(),
        );
    } else {
        let gap = &c1 - &c2;
        let want = a2.scale(&Gq::ratio(3, 2)) * ParamScalar::hbar().pow(2);
        report
            .push(Check::symbolic("constraint_gap", &gap, gap == want, Source::Paper).as_witness());
    }

    if mode == Mode::Matrix {
        report = report
            .param("hbar", hbar)
            .param("a", MATRIX_A)
            .param("tolerance", numeric.tolerance);
        let rep = spin_matrices(spin);
        let bind = Bindings::new()
            .float(Param::Hbar, hbar)
            .float(Param::A, MATRIX_A);
        let value = |x: &ParamScalar| -> Result<f64> { Ok(x.eval_c64(&bind)?.re) };
        let s3m = evaluate_oppoly(&rep, &s3, &bind)?;
        let (lambda, off) = project(&evaluate_oppoly(&rep, &rhs1, &bind)?, &s3m);
        let err = (lambda - value(&e1)?).norm().max(off);
        report.push(Check::numeric(
            "constraint_1_matrix",
            err,
            numeric.tolerance,
            Source::Derived,
        ));
        if spin.twice() > 1 {
            let am = evaluate_oppoly(&rep, &anti23, &bind)?;
            let (lambda, off) = project(&evaluate_oppoly(&rep, &rhs2, &bind)?, &am);
            let err = (lambda / MATRIX_A - value(&e2)?).norm().max(off);
            report.push(Check::numeric(
                "constraint_2_matrix",
                err,
                numeric.tolerance,
                Source::Derived,
            ));
        }
    }
    Ok(report.finish())
}

//! No obstruction on `T*R_+`: the affine representation on `{1, X, Y}`
//! extended by zero on degree two and higher respects every bracket.

use crate::error::{Error, Result};
use crate::opalg::{diffop_commutator, DiffOpPoly};
use crate::poisson::{bracket, make_space, PoissonPoly, SpaceKind};
use crate::scalars::{Gq, ParamScalar};

use super::prequant::{summarize, PairResidual, Prequantizer, Preset};
use super::report::{Check, ScenarioReport, Source};

/// Pair classes by the degrees of the two monomials.
fn class(f: &PoissonPoly, g: &PoissonPoly) -> usize {
    match (f.degree() <= 1, g.degree() <= 1) {
        (true, true) => 0,
        (false, false) => 2,
        _ => 1,
    }
}

const CLASS_NAMES: [&str; 3] = ["low_low", "mixed", "high_high"];

pub fn run_rplus(degree_cap: u32) -> Result<ScenarioReport> {
    if degree_cap < 2 {
        return Err(Error::Config(format!(
            "degree cap must be at least 2, got {degree_cap}"
        )));
    }
    let space = make_space(SpaceKind::TStarRPlus)?;
    let mut report = ScenarioReport::new("rplus")
        .param("space", "tstar_rplus")
        .param("degree", degree_cap);

    for minus in [false, true] {
        let pq = Prequantizer::new(Preset::Affine { minus }, &space)?;
        let sign = if minus { "minus" } else { "plus" };
        let basis = pq.basis(degree_cap);
        let mut classes: [Vec<PairResidual>; 3] = Default::default();
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                classes[class(f, g)].push(pq.residual(f, g)?);
            }
        }
        for (k, res) in classes.iter().enumerate() {
            let id = format!("bracket_rule_{sign}_{}", CLASS_NAMES[k]);
            report.push(summarize(&id, res, Source::Paper));
        }

        // [rho(X), rho(Y)] = -i hbar rho(2Y)
        let x = pq.image(&PoissonPoly::named(&space, "X")?)?;
        let y = pq.image(&PoissonPoly::named(&space, "Y")?)?;
        let lhs = diffop_commutator(&x, &y)?;
        let minus_i_hbar = -&(&ParamScalar::i() * &ParamScalar::hbar());
        let rhs: DiffOpPoly = y.scale(&minus_i_hbar.scale(&Gq::int(2)));
        let d = lhs.sub(&rhs)?;
        report.push(Check::symbolic(
            &format!("euler_commutator_{sign}"),
            &d,
            d.is_zero(),
            Source::Derived,
        ));
    }

    // {P_1, P_k} lies in P_k
    let gens = [
        PoissonPoly::named(&space, "X")?,
        PoissonPoly::named(&space, "Y")?,
    ];
    let mut offender = None;
    'outer: for m in space.ring.monomials_up_to(degree_cap) {
        let f = PoissonPoly::monomial(&space, m);
        for g in &gens {
            let b = bracket(g, &f)?;
            if b.terms().any(|(t, _)| t.iter().sum::<u32>() != f.degree()) {
                offender = Some(format!("{{{g}, {f}}} = {b}"));
                break 'outer;
            }
        }
    }
    report.push(Check::symbolic(
        "grading",
        offender.as_deref().unwrap_or("0"),
        offender.is_none(),
        Source::Paper,
    ));
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::Verdict;

    #[test]
    fn consistent_at_cap_four() {
        let r = run_rplus(4).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent, "{:?}", r.checks);
    }

    #[test]
    fn cap_too_small() {
        assert!(run_rplus(1).is_err());
    }
}

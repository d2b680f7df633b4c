//! Shared generators for the integration tests.

#![allow(dead_code)]

use obstructo::poisson::{make_space, PoissonPoly, Space, SpaceKind};
use obstructo::scalars::{Param, ParamScalar};
use rand::Rng;

pub fn all_spaces() -> Vec<Space> {
    [
        SpaceKind::R2n(1),
        SpaceKind::R2n(2),
        SpaceKind::S2,
        SpaceKind::TStarS1,
        SpaceKind::TStarRPlus,
        SpaceKind::T2,
    ]
    .into_iter()
    .map(|k| make_space(k).unwrap())
    .collect()
}

/// One term: exponents, coefficient `num/den`, and a coefficient factor
/// chosen by `extra` (none, `hbar`, `i`, `nu`, `i*eta`).
#[derive(Clone, Debug)]
pub struct TermSpec {
    pub exps: Vec<u32>,
    pub num: i64,
    pub den: i64,
    pub extra: u8,
}

pub fn poly_from_terms(space: &Space, terms: &[TermSpec]) -> PoissonPoly {
    let n = space.ngens();
    let mut acc = PoissonPoly::zero(space);
    for t in terms {
        let mono: Vec<u32> = (0..n)
            .map(|i| t.exps.get(i).copied().unwrap_or(0))
            .collect();
        let mut c = ParamScalar::ratio(t.num, t.den);
        c = match t.extra % 5 {
            1 => &c * &ParamScalar::hbar(),
            2 => &c * &ParamScalar::i(),
            3 => &c * &ParamScalar::param(Param::Nu),
            4 => &(&c * &ParamScalar::i()) * &ParamScalar::param(Param::Eta),
            _ => c,
        };
        acc = acc.add(&PoissonPoly::monomial(space, mono).scale(&c));
    }
    acc
}

/// Random polynomial with up to four terms of total degree at most `degree`.
pub fn random_poly(space: &Space, rng: &mut impl Rng, degree: u32) -> PoissonPoly {
    let k = rng.gen_range(1..=4);
    let terms: Vec<TermSpec> = (0..k)
        .map(|_| {
            let mut exps = vec![0; space.ngens()];
            for _ in 0..rng.gen_range(0..=degree) {
                exps[rng.gen_range(0..space.ngens())] += 1;
            }
            TermSpec {
                exps,
                num: rng.gen_range(-6..=6),
                den: rng.gen_range(1..=4),
                extra: rng.gen_range(0..5),
            }
        })
        .collect();
    poly_from_terms(space, &terms)
}

/// Total degree of the random triples in the Jacobi checks.
pub const JACOBI_DEGREE: u32 = 3;

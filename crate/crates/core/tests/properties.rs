//! Property tests of the algebraic identities.

mod common;

use proptest::prelude::*;

use common::{all_spaces, poly_from_terms, TermSpec};
use obstructo::cli::parse_expr;
use obstructo::opalg::{commutator, op_algebra, OpAlgebraKind, OpPoly};
use obstructo::poisson::{bracket, jacobi_residual, PoissonPoly, Space};
use obstructo::reps::{evaluate_oppoly_exact, schrodinger_matrices, spin_matrices, Spin};
use obstructo::scalars::{Gq, ParamScalar};

fn term(ngens: usize, degree: usize) -> impl Strategy<Value = TermSpec> {
    (
        prop::collection::vec(0..ngens, 0..=degree),
        -6i64..=6,
        1i64..=4,
        0u8..5,
    )
        .prop_map(move |(slots, num, den, extra)| {
            let mut exps = vec![0; ngens];
            for s in slots {
                exps[s] += 1;
            }
            TermSpec {
                exps,
                num,
                den,
                extra,
            }
        })
}

fn poly(space: Space, degree: usize) -> impl Strategy<Value = PoissonPoly> {
    let n = space.ngens();
    prop::collection::vec(term(n, degree), 1..4).prop_map(move |t| poly_from_terms(&space, &t))
}

fn space() -> impl Strategy<Value = Space> {
    prop::sample::select(all_spaces())
}

fn triple(degree: usize) -> impl Strategy<Value = (PoissonPoly, PoissonPoly, PoissonPoly)> {
    space().prop_flat_map(move |s| {
        (
            poly(s.clone(), degree),
            poly(s.clone(), degree),
            poly(s, degree),
        )
    })
}

fn pair(degree: usize) -> impl Strategy<Value = (PoissonPoly, PoissonPoly)> {
    space().prop_flat_map(move |s| (poly(s.clone(), degree), poly(s, degree)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn jacobi_identity((f, g, h) in triple(3)) {
        prop_assert!(jacobi_residual(&f, &g, &h).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric((f, g) in pair(3)) {
        let a = bracket(&f, &g).unwrap();
        let b = bracket(&g, &f).unwrap();
        prop_assert_eq!(a.add(&b), PoissonPoly::zero(f.space()));
    }

    #[test]
    fn leibniz_rule((f, g, h) in triple(2)) {
        let lhs = bracket(&f, &g.mul(&h)).unwrap();
        let rhs = bracket(&f, &g).unwrap().mul(&h).add(&g.mul(&bracket(&f, &h).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(f in space().prop_flat_map(|s| poly(s, 5))) {
        let printed = f.to_string();
        let back = parse_expr(&printed, f.space()).unwrap();
        prop_assert_eq!(back.to_string(), printed);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rational_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Gq::ratio(a, b);
        let y = &Gq::ratio(c, d) + &Gq::i();
        let inv = y.inv().unwrap();
        prop_assert_eq!(&(&x * &y) * &inv, x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn spin_labels_round_trip(twice in 0u32..40) {
        let s = Spin::from_twice(twice);
        prop_assert_eq!(s.to_string().parse::<Spin>().unwrap(), s);
    }
}

fn word(ngens: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..ngens, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Normal forms multiply associatively in every algebra.
    #[test]
    fn operator_product_is_associative(
        kind in prop::sample::select(vec![OpAlgebraKind::Weyl(2), OpAlgebraKind::Su2, OpAlgebraKind::E2]),
        a in word(3, 3), b in word(3, 3), c in word(3, 3),
    ) {
        let alg = op_algebra(kind);
        let x = OpPoly::word(&alg, &a);
        let y = OpPoly::word(&alg, &b);
        let z = OpPoly::word(&alg, &c);
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    /// Normal ordering agrees with matrix products in the Schrodinger and
    /// spin representations.
    #[test]
    fn normal_forms_match_matrices(a in word(2, 3), b in word(2, 3), s in word(3, 3), t in word(3, 3)) {
        let weyl = op_algebra(OpAlgebraKind::Weyl(1));
        let rep = schrodinger_matrices(12).unwrap();
        let (x, y) = (OpPoly::word(&weyl, &a), OpPoly::word(&weyl, &b));
        let lhs = evaluate_oppoly_exact(&rep, &commutator(&x, &y).unwrap()).unwrap();
        let mx = evaluate_oppoly_exact(&rep, &x).unwrap();
        let my = evaluate_oppoly_exact(&rep, &y).unwrap();
        prop_assert!(lhs.agrees_on_columns(&mx.commutator(&my), rep.interior(a.len() + b.len())));

        let su2 = op_algebra(OpAlgebraKind::Su2);
        let rep = spin_matrices(Spin::from_twice(3));
        let (x, y) = (OpPoly::word(&su2, &s), OpPoly::word(&su2, &t));
        let prod = evaluate_oppoly_exact(&rep, &x.mul(&y)).unwrap();
        let mx = evaluate_oppoly_exact(&rep, &x).unwrap();
        let my = evaluate_oppoly_exact(&rep, &y).unwrap();
        prop_assert_eq!(prod, mx.mul(&my));
    }

    /// Parameters survive scaling: `(c f) g = c (f g)` with parametric `c`.
    #[test]
    fn scalar_multiplication_commutes((f, g) in pair(2), k in -5i64..5) {
        let c = &ParamScalar::int(k) * &ParamScalar::hbar();
        prop_assert_eq!(f.scale(&c).mul(&g), f.mul(&g).scale(&c));
    }
}

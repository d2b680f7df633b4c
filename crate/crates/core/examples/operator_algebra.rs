//! Normal forms in the Weyl, su(2) and e(2) operator algebras, and a
//! randomized check that rewriting is confluent.

use obstructo::opalg::{
    confluence_probe, i_over_hbar_commutator, op_algebra, OpAlgebraKind, OpPoly,
};

fn main() -> obstructo::Result<()> {
    let weyl = op_algebra(OpAlgebraKind::Weyl(1));
    let (q, p) = (OpPoly::named(&weyl, "Q")?, OpPoly::named(&weyl, "P")?);
    println!("P Q = {}", p.mul(&q));
    println!(
        "(i/hbar)[Q^2, P^2] = {}",
        i_over_hbar_commutator(&q.pow(2), &p.pow(2))?
    );

    let e2 = op_algebra(OpAlgebraKind::E2);
    let s = OpPoly::named(&e2, "S")?;
    println!("S^2 in e(2) = {}", s.pow(2));

    for kind in [
        OpAlgebraKind::Weyl(2),
        OpAlgebraKind::Su2,
        OpAlgebraKind::E2,
    ] {
        let alg = op_algebra(kind);
        let probe = confluence_probe(&alg, 500, 7);
        println!(
            "{}: confluent on {} random words: {}",
            alg.name(),
            probe.trials,
            probe.passed()
        );
    }
    Ok(())
}

//! Exact spin matrices and their commutation relations.

use obstructo::cli::matrix_text;
use obstructo::reps::{spin_matrices, Mat, Spin};
use obstructo::scalars::{Bindings, Param, ParamScalar};

fn main() -> obstructo::Result<()> {
    let spin: Spin = "3/2".parse()?;
    let rep = spin_matrices(spin);
    let (s1, s2, s3) = (rep.get("S1")?, rep.get("S2")?, rep.get("S3")?);
    let i_hbar = &ParamScalar::i() * &ParamScalar::hbar();
    println!(
        "[S1, S2] = i hbar S3: {}",
        s1.commutator(s2) == s3.scale(&i_hbar)
    );

    let casimir = s1.mul(s1).add(&s2.mul(s2)).add(&s3.mul(s3));
    let expected = Mat::identity(rep.dim)
        .scale(&(&ParamScalar::from_gq(spin.casimir()) * &ParamScalar::hbar().pow(2)));
    println!(
        "S1^2 + S2^2 + S3^2 = j(j+1) hbar^2: {}",
        casimir == expected
    );

    let b = Bindings::new().float(Param::Hbar, 1.0);
    println!("S1 at hbar = 1:\n{}", matrix_text(&s1.eval(&b)?));
    Ok(())
}

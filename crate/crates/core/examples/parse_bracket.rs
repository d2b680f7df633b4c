//! Parse expressions on a phase space and take Poisson brackets.

use obstructo::cli::parse_expr;
use obstructo::poisson::{bracket, make_space, SpaceKind};

fn main() -> obstructo::Result<()> {
    let sphere = make_space(SpaceKind::S2)?;
    let f = parse_expr("S1^2 - S2^2", &sphere)?;
    let g = parse_expr("S1*S2", &sphere)?;
    println!("{{{f}, {g}}} = {}", bracket(&f, &g)?);
    println!("S3^2 = {}", parse_expr("S3^2", &sphere)?);

    let cylinder = make_space(SpaceKind::TStarS1)?;
    println!("sin^3 = {}", parse_expr("sin_theta^3", &cylinder)?);

    let plane = make_space(SpaceKind::R2n(1))?;
    let h = parse_expr("{q^3, p^3} + 9*q^2*p^2", &plane)?;
    println!("{{q^3, p^3}} + 9 q^2 p^2 = {h}");
    Ok(())
}

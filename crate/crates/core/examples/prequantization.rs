//! Every built-in prequantization formula satisfies the bracket rule on its
//! domain, with `eta` and `nu` kept formal or fixed.

use obstructo::cli::{emit_report, Format};
use obstructo::poisson::make_space;
use obstructo::scalars::{Param, ParamScalar};
use obstructo::scenarios::{verify_prequantization, verify_prequantizer, Prequantizer, Preset};

fn main() -> obstructo::Result<()> {
    for preset in Preset::ALL {
        let space = make_space(preset.space_kind())?;
        let cap = if preset == Preset::Torus { 3 } else { 5 };
        let report = verify_prequantization(&space, preset, cap)?;
        println!("{:9} {}", preset.name(), report.verdict);
    }

    let space = make_space(Preset::Cylinder.space_kind())?;
    let pq = Prequantizer::new(Preset::Cylinder, &space)?
        .bind(Param::Nu, ParamScalar::ratio(1, 3))
        .bind(Param::Eta, ParamScalar::int(2));
    print!(
        "{}",
        emit_report(&verify_prequantizer(&pq, 4)?, Format::Text)
    );
    Ok(())
}

//! Two quantized sphere relations force different values of `s^2` for
//! every spin, so no spin representation survives.

use obstructo::cli::{emit_report, Format};
use obstructo::reps::Spin;
use obstructo::scenarios::{run_sphere, Mode};

fn main() -> obstructo::Result<()> {
    for twice in 1..=5 {
        let report = run_sphere(Spin::from_twice(twice), Mode::Matrix)?;
        print!("{}", emit_report(&report, Format::Text));
        println!();
    }
    Ok(())
}

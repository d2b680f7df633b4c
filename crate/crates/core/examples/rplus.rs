//! The half-line cotangent bundle admits a quantization of the whole
//! polynomial algebra in `X` and `Y`.

use obstructo::cli::{emit_report, Format};
use obstructo::scenarios::run_rplus;

fn main() -> obstructo::Result<()> {
    let report = run_rplus(8)?;
    print!("{}", emit_report(&report, Format::Json));
    println!();
    Ok(())
}

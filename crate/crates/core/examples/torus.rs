//! Grid realization of the torus quantization: bracket residuals shrink at
//! second order as the grid is refined.

use obstructo::cli::{emit_report, Format};
use obstructo::scenarios::run_torus;

fn main() -> obstructo::Result<()> {
    let m = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(128);
    let report = run_torus(m, 1.0)?;
    print!("{}", emit_report(&report, Format::Text));
    Ok(())
}

//! On the cylinder the extended rule `Q(l^2) = Q(l)^2 + c` breaks a cubic
//! bracket relation by `2 hbar^2 S`, whatever `c` is.

use obstructo::cli::{emit_report, Format};
use obstructo::scenarios::run_cylinder;

fn main() -> obstructo::Result<()> {
    let report = run_cylinder(true)?;
    print!("{}", emit_report(&report, Format::Text));
    Ok(())
}

//! The polynomial no-go on the plane: the anticommutator rule and the
//! cubic relation each leave a nonzero multiple of the identity.

use obstructo::cli::{emit_report, Format};
use obstructo::scenarios::{run_groenewold, Mode};

fn main() -> obstructo::Result<()> {
    let report = run_groenewold(Mode::Matrix, 12)?;
    print!("{}", emit_report(&report, Format::Text));
    Ok(())
}

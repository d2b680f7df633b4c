//! Expression parsing, report emission and the command-line front end.

mod dispatch;
mod emit;
mod parse;

pub use dispatch::{dispatch, Outcome};
pub use emit::{emit_report, emit_reports, matrix_json, matrix_text, Format};
pub use parse::{eval, parse_ast, parse_expr, Expr};

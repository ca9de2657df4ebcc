//! The user surface: expression grammar, subspace files, and reports.

pub mod expr;
pub mod file;
pub mod report;

pub use expr::{parse_expression, GeneratorExpression};
pub use file::{load_subspace, load_subspace_str, render_subspace, save_subspace};
pub use report::{json_report, text_report};

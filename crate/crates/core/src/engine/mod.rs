//! Expression DSL, exhaustive extremal search and the built-in claim
//! verification catalog.

pub mod conjecture;
pub mod expr;
pub mod search;

pub use conjecture::{
    builtin_conjectures, conjecture_by_id, verify_conjecture, ClaimedFamily, ConjectureReport,
    ConjectureRow, ConjectureSpec, ParityBound,
};
pub use expr::{eval_expr, eval_in_n, parse_expr, print_expr, EvalError, Expr, ParseError, VarId};
pub use search::{
    enumerate_class, search_extremal, search_extremal_in, Direction, ExtremalResult, SearchError,
};

pub mod checker;
pub mod extract;
pub mod interp;
pub mod kernel;
pub mod pipeline;
pub mod sexp;
pub mod syntax;
pub mod target;
pub mod term;
pub mod types;

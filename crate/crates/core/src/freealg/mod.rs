//! Words, noncommutative polynomials and graded presentations.

mod parser;
mod poly;
mod presentation;
mod word;

pub use parser::{parse_presentation, peek_field, ParseError, ParseErrorKind};
pub use poly::{format_word, NcPoly};
pub use presentation::{Generator, Presentation, PresentationError};
pub use word::{Letter, Letters, MonomialOrder, Word};

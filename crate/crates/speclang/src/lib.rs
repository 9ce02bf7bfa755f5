//! A textual specification language for finite algebras.
//!
//! Files declare named signatures, algebras, relations, and partitions:
//!
//! ```text
//! signature monoid { op e 0; op mul 2; }
//! algebra Z2 : monoid { carrier 2; op e = 0; op mul = [[0,1],[1,0]]; }
//! partition all on Z2 { {0,1}; }
//! ```
//!
//! [`parse`] turns text into a fully checked [`SpecDocument`] or a list of
//! positioned diagnostics; [`serialize`] writes the canonical form back
//! out. Parsing the canonical form reproduces the document exactly.

mod ast;
mod document;
mod lexer;
mod parser;

pub use document::{
    serialize, Item, NamedAlgebra, NamedPartition, NamedRelation, NamedSignature, SpecDocument,
};

/// A positioned error message; lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Parse a document. Syntax errors stop at the first problem; semantic
/// checking runs after a clean parse and reports every violation found.
/// No partial documents: any error means no document.
pub fn parse(text: &str) -> Result<SpecDocument, Vec<Diagnostic>> {
    let raw = parser::parse_raw(text).map_err(|d| vec![d])?;
    document::resolve(&raw)
}

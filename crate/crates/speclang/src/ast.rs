//! Raw syntax tree produced by the parser, before name resolution and
//! semantic checking. Every node remembers where it started.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub items: Vec<RawItem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawItem {
    Signature(RawSignature),
    Algebra(RawAlgebra),
    Relation(RawRelation),
    Partition(RawPartition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSignature {
    pub name: Spanned<String>,
    pub ops: Vec<(Spanned<String>, Spanned<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAlgebra {
    pub name: Spanned<String>,
    pub signature: Spanned<String>,
    pub carrier: Spanned<usize>,
    pub ops: Vec<(Spanned<String>, RawTable)>,
}

/// An operation table: a bare number for arity 0, or nested lists whose
/// depth matches the arity, outermost index first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTable {
    Leaf(Spanned<usize>),
    List(Span, Vec<RawTable>),
}

impl RawTable {
    pub fn span(&self) -> Span {
        match self {
            RawTable::Leaf(leaf) => leaf.span,
            RawTable::List(span, _) => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRelation {
    pub name: Spanned<String>,
    pub algebra: Spanned<String>,
    pub arity: Spanned<usize>,
    pub tuples: Vec<(Span, Vec<Spanned<usize>>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPartition {
    pub name: Spanned<String>,
    pub algebra: Spanned<String>,
    pub blocks: Vec<(Span, Vec<Spanned<usize>>)>,
}

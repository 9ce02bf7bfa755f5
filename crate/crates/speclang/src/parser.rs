//! Recursive-descent parser for the specification language.
//!
//! Grammar:
//!
//! ```text
//! file      := item*
//! item      := signature | algebra | relation | partition
//! signature := "signature" IDENT "{" ("op" IDENT NAT ";")* "}"
//! algebra   := "algebra" IDENT ":" IDENT "{" "carrier" NAT ";" ("op" IDENT "=" table ";")* "}"
//! table     := NAT | "[" (table ("," table)*)? "]"
//! relation  := "relation" IDENT "on" IDENT "arity" NAT "{" ("(" NAT ("," NAT)* ")" ";")* "}"
//! partition := "partition" IDENT "on" IDENT "{" ("{" NAT ("," NAT)* "}" ";")* "}"
//! ```

use crate::ast::*;
use crate::lexer::{tokenize, Token, TokenKind};
use crate::Diagnostic;

pub fn parse_raw(text: &str) -> Result<RawDocument, Diagnostic> {
    let tokens = tokenize(text)?;
    Parser { tokens, pos: 0 }.document()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error_at(&self, token: &Token, message: String) -> Diagnostic {
        Diagnostic {
            line: token.line,
            col: token.col,
            message,
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, Diagnostic> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            let found = self.peek();
            Err(self.error_at(
                found,
                format!(
                    "expected {}, found {}",
                    kind.describe(),
                    found.kind.describe()
                ),
            ))
        }
    }

    fn expect_ident(&mut self) -> Result<Spanned<String>, Diagnostic> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                let token = self.bump();
                Ok(Spanned {
                    value: name,
                    span: Span {
                        line: token.line,
                        col: token.col,
                    },
                })
            }
            other => {
                let found = self.peek();
                Err(self.error_at(
                    found,
                    format!("expected identifier, found {}", other.describe()),
                ))
            }
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(), Diagnostic> {
        let ident = self.expect_ident()?;
        if ident.value == keyword {
            Ok(())
        } else {
            Err(Diagnostic {
                line: ident.span.line,
                col: ident.span.col,
                message: format!("expected `{keyword}`, found `{}`", ident.value),
            })
        }
    }

    fn expect_nat(&mut self) -> Result<Spanned<usize>, Diagnostic> {
        match self.peek().kind {
            TokenKind::Nat(value) => {
                let token = self.bump();
                Ok(Spanned {
                    value,
                    span: Span {
                        line: token.line,
                        col: token.col,
                    },
                })
            }
            ref other => {
                let found = self.peek();
                Err(self.error_at(
                    found,
                    format!("expected number, found {}", other.describe()),
                ))
            }
        }
    }

    fn document(&mut self) -> Result<RawDocument, Diagnostic> {
        let mut items = Vec::new();
        loop {
            match self.peek().kind.clone() {
                TokenKind::Eof => break,
                TokenKind::Ident(word) => match word.as_str() {
                    "signature" => items.push(RawItem::Signature(self.signature()?)),
                    "algebra" => items.push(RawItem::Algebra(self.algebra()?)),
                    "relation" => items.push(RawItem::Relation(self.relation()?)),
                    "partition" => items.push(RawItem::Partition(self.partition()?)),
                    other => {
                        let found = self.peek();
                        return Err(self.error_at(
                            found,
                            format!(
                                "expected `signature`, `algebra`, `relation`, or `partition`, found `{other}`"
                            ),
                        ));
                    }
                },
                other => {
                    let found = self.peek();
                    return Err(self.error_at(
                        found,
                        format!("expected a declaration, found {}", other.describe()),
                    ));
                }
            }
        }
        Ok(RawDocument { items })
    }

    fn signature(&mut self) -> Result<RawSignature, Diagnostic> {
        self.expect_keyword("signature")?;
        let name = self.expect_ident()?;
        self.expect(TokenKind::LBrace)?;
        let mut ops = Vec::new();
        while self.peek().kind != TokenKind::RBrace {
            self.expect_keyword("op")?;
            let op_name = self.expect_ident()?;
            let arity = self.expect_nat()?;
            self.expect(TokenKind::Semi)?;
            ops.push((op_name, arity));
        }
        self.expect(TokenKind::RBrace)?;
        Ok(RawSignature { name, ops })
    }

    fn algebra(&mut self) -> Result<RawAlgebra, Diagnostic> {
        self.expect_keyword("algebra")?;
        let name = self.expect_ident()?;
        self.expect(TokenKind::Colon)?;
        let signature = self.expect_ident()?;
        self.expect(TokenKind::LBrace)?;
        self.expect_keyword("carrier")?;
        let carrier = self.expect_nat()?;
        self.expect(TokenKind::Semi)?;
        let mut ops = Vec::new();
        while self.peek().kind != TokenKind::RBrace {
            self.expect_keyword("op")?;
            let op_name = self.expect_ident()?;
            self.expect(TokenKind::Eq)?;
            let table = self.table()?;
            self.expect(TokenKind::Semi)?;
            ops.push((op_name, table));
        }
        self.expect(TokenKind::RBrace)?;
        Ok(RawAlgebra {
            name,
            signature,
            carrier,
            ops,
        })
    }

    fn table(&mut self) -> Result<RawTable, Diagnostic> {
        self.table_at_depth(0)
    }

    fn table_at_depth(&mut self, depth: usize) -> Result<RawTable, Diagnostic> {
        // Nesting depth equals operation arity; anything deeper than this
        // could not have a total table anyway, and bounding it keeps the
        // recursion to a fixed stack budget.
        const MAX_TABLE_DEPTH: usize = 64;
        match self.peek().kind {
            TokenKind::Nat(_) => Ok(RawTable::Leaf(self.expect_nat()?)),
            TokenKind::LBracket => {
                let open = self.bump();
                let span = Span {
                    line: open.line,
                    col: open.col,
                };
                if depth >= MAX_TABLE_DEPTH {
                    return Err(Diagnostic {
                        line: span.line,
                        col: span.col,
                        message: format!("table nesting exceeds depth {MAX_TABLE_DEPTH}"),
                    });
                }
                let mut entries = Vec::new();
                if self.peek().kind != TokenKind::RBracket {
                    entries.push(self.table_at_depth(depth + 1)?);
                    while self.peek().kind == TokenKind::Comma {
                        self.bump();
                        entries.push(self.table_at_depth(depth + 1)?);
                    }
                }
                self.expect(TokenKind::RBracket)?;
                Ok(RawTable::List(span, entries))
            }
            ref other => {
                let found = self.peek();
                Err(self.error_at(
                    found,
                    format!("expected a table, found {}", other.describe()),
                ))
            }
        }
    }

    fn relation(&mut self) -> Result<RawRelation, Diagnostic> {
        self.expect_keyword("relation")?;
        let name = self.expect_ident()?;
        self.expect_keyword("on")?;
        let algebra = self.expect_ident()?;
        self.expect_keyword("arity")?;
        let arity = self.expect_nat()?;
        self.expect(TokenKind::LBrace)?;
        let mut tuples = Vec::new();
        while self.peek().kind != TokenKind::RBrace {
            let open = self.expect(TokenKind::LParen)?;
            let span = Span {
                line: open.line,
                col: open.col,
            };
            let mut entries = vec![self.expect_nat()?];
            while self.peek().kind == TokenKind::Comma {
                self.bump();
                entries.push(self.expect_nat()?);
            }
            self.expect(TokenKind::RParen)?;
            self.expect(TokenKind::Semi)?;
            tuples.push((span, entries));
        }
        self.expect(TokenKind::RBrace)?;
        Ok(RawRelation {
            name,
            algebra,
            arity,
            tuples,
        })
    }

    fn partition(&mut self) -> Result<RawPartition, Diagnostic> {
        self.expect_keyword("partition")?;
        let name = self.expect_ident()?;
        self.expect_keyword("on")?;
        let algebra = self.expect_ident()?;
        self.expect(TokenKind::LBrace)?;
        let mut blocks = Vec::new();
        while self.peek().kind != TokenKind::RBrace {
            let open = self.expect(TokenKind::LBrace)?;
            let span = Span {
                line: open.line,
                col: open.col,
            };
            let mut entries = vec![self.expect_nat()?];
            while self.peek().kind == TokenKind::Comma {
                self.bump();
                entries.push(self.expect_nat()?);
            }
            self.expect(TokenKind::RBrace)?;
            self.expect(TokenKind::Semi)?;
            blocks.push((span, entries));
        }
        self.expect(TokenKind::RBrace)?;
        Ok(RawPartition {
            name,
            algebra,
            blocks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_monoid_example() {
        let doc = parse_raw(
            "signature monoid { op e 0; op mul 2; }\n\
             algebra Z2 : monoid { carrier 2; op e = 0; op mul = [[0,1],[1,0]]; }",
        )
        .unwrap();
        assert_eq!(doc.items.len(), 2);
        match &doc.items[1] {
            RawItem::Algebra(a) => {
                assert_eq!(a.name.value, "Z2");
                assert_eq!(a.carrier.value, 2);
                assert_eq!(a.ops.len(), 2);
            }
            other => panic!("expected algebra, got {other:?}"),
        }
    }

    #[test]
    fn parses_relations_and_partitions() {
        let doc = parse_raw(
            "signature S { }\n\
             algebra A : S { carrier 3; }\n\
             relation R on A arity 2 { (0,1); (1,2); }\n\
             partition P on A { {0,2}; {1}; }",
        )
        .unwrap();
        assert_eq!(doc.items.len(), 4);
    }

    #[test]
    fn reports_position_of_syntax_errors() {
        let err = parse_raw("signature M {\n  op e 0\n}").unwrap_err();
        assert_eq!((err.line, err.col), (3, 1));
        assert!(err.message.contains("`;`"));

        let err = parse_raw("algebra A : S { carrier 2 }").unwrap_err();
        assert!(err.message.contains("`;`"));

        let err = parse_raw("widget W { }").unwrap_err();
        assert_eq!((err.line, err.col), (1, 1));
    }

    #[test]
    fn empty_input_is_an_empty_document() {
        assert!(parse_raw("").unwrap().items.is_empty());
        assert!(parse_raw("# only a comment\n").unwrap().items.is_empty());
    }

    #[test]
    fn nested_empty_table_is_allowed() {
        let doc = parse_raw("signature S { op f 2; } algebra A : S { carrier 0; op f = []; }");
        assert!(doc.is_ok());
    }

    #[test]
    fn pathological_nesting_is_rejected_not_overflowed() {
        let brackets = "[".repeat(100_000);
        let text = format!("signature S {{ op f 1; }} algebra A : S {{ carrier 1; op f = {brackets}0; }}");
        let err = parse_raw(&text).unwrap_err();
        assert!(err.message.contains("nesting exceeds"));
    }
}

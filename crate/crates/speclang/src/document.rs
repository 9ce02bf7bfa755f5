//! Resolved documents: named kernel objects with all cross-references
//! checked, plus the canonical serializer.

use ualg_core::tuple::encode_uniform;
use ualg_core::{Carrier, ContRelation, FinAlgebra, FiniteOperation, Partition, Signature};

use crate::ast::*;
use crate::Diagnostic;

/// A named signature declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSignature {
    pub name: String,
    pub signature: Signature,
}

/// A named algebra declaration, remembering which signature it cited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: String,
    pub signature_name: String,
    pub algebra: FinAlgebra,
}

/// A named relation over an algebra's carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRelation {
    pub name: String,
    pub algebra_name: String,
    pub relation: ContRelation,
}

/// A named partition of an algebra's carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPartition {
    pub name: String,
    pub algebra_name: String,
    pub partition: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Signature(NamedSignature),
    Algebra(NamedAlgebra),
    Relation(NamedRelation),
    Partition(NamedPartition),
}

/// A fully resolved document: every reference resolves, every algebra
/// validates, every partition partitions its carrier, and every relation
/// tuple is in range. Declaration order is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    items: Vec<Item>,
}

impl SpecDocument {
    /// Assemble a document from items. Callers are responsible for the
    /// referential invariants; parsing is the checked path.
    pub fn from_items(items: Vec<Item>) -> Self {
        SpecDocument { items }
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn signatures(&self) -> impl Iterator<Item = &NamedSignature> {
        self.items.iter().filter_map(|item| match item {
            Item::Signature(s) => Some(s),
            _ => None,
        })
    }

    pub fn algebras(&self) -> impl Iterator<Item = &NamedAlgebra> {
        self.items.iter().filter_map(|item| match item {
            Item::Algebra(a) => Some(a),
            _ => None,
        })
    }

    pub fn relations(&self) -> impl Iterator<Item = &NamedRelation> {
        self.items.iter().filter_map(|item| match item {
            Item::Relation(r) => Some(r),
            _ => None,
        })
    }

    pub fn partitions(&self) -> impl Iterator<Item = &NamedPartition> {
        self.items.iter().filter_map(|item| match item {
            Item::Partition(p) => Some(p),
            _ => None,
        })
    }

    pub fn find_signature(&self, name: &str) -> Option<&NamedSignature> {
        self.signatures().find(|s| s.name == name)
    }

    pub fn find_algebra(&self, name: &str) -> Option<&NamedAlgebra> {
        self.algebras().find(|a| a.name == name)
    }

    pub fn find_relation(&self, name: &str) -> Option<&NamedRelation> {
        self.relations().find(|r| r.name == name)
    }

    pub fn find_partition(&self, name: &str) -> Option<&NamedPartition> {
        self.partitions().find(|p| p.name == name)
    }
}

fn diag(span: Span, message: String) -> Diagnostic {
    Diagnostic {
        line: span.line,
        col: span.col,
        message,
    }
}

/// Resolve a raw syntax tree into a document, collecting every semantic
/// error. Signatures resolve first, then algebras, then relations and
/// partitions, so references do not depend on declaration order.
pub fn resolve(raw: &RawDocument) -> Result<SpecDocument, Vec<Diagnostic>> {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let mut signatures: Vec<NamedSignature> = Vec::new();
    let mut algebras: Vec<NamedAlgebra> = Vec::new();

    for item in &raw.items {
        if let RawItem::Signature(s) = item {
            if signatures.iter().any(|seen| seen.name == s.name.value) {
                diags.push(diag(
                    s.name.span,
                    format!("duplicate signature name `{}`", s.name.value),
                ));
                continue;
            }
            let mut symbols = Vec::new();
            let mut ok = true;
            for (op_name, arity) in &s.ops {
                if symbols.iter().any(|(seen, _)| seen == &op_name.value) {
                    diags.push(diag(
                        op_name.span,
                        format!("duplicate operation symbol `{}`", op_name.value),
                    ));
                    ok = false;
                    continue;
                }
                symbols.push((op_name.value.clone(), arity.value));
            }
            if ok {
                signatures.push(NamedSignature {
                    name: s.name.value.clone(),
                    signature: Signature::new(symbols).expect("duplicates were filtered"),
                });
            }
        }
    }

    for item in &raw.items {
        if let RawItem::Algebra(a) = item {
            if algebras.iter().any(|seen| seen.name == a.name.value) {
                diags.push(diag(
                    a.name.span,
                    format!("duplicate algebra name `{}`", a.name.value),
                ));
                continue;
            }
            let Some(named_sig) = signatures.iter().find(|s| s.name == a.signature.value) else {
                diags.push(diag(
                    a.signature.span,
                    format!("unknown signature `{}`", a.signature.value),
                ));
                continue;
            };
            let signature = &named_sig.signature;
            let size = a.carrier.value;
            let mut tables: Vec<(String, Vec<usize>)> = Vec::new();
            let mut ok = true;
            for (op_name, table) in &a.ops {
                if tables.iter().any(|(seen, _)| seen == &op_name.value) {
                    diags.push(diag(
                        op_name.span,
                        format!("operation `{}` is defined more than once", op_name.value),
                    ));
                    ok = false;
                    continue;
                }
                let Some(arity) = signature.arity_of(&op_name.value) else {
                    diags.push(diag(
                        op_name.span,
                        format!("unknown symbol `{}`", op_name.value),
                    ));
                    ok = false;
                    continue;
                };
                match flatten_table(table, arity, size, &mut diags) {
                    Some(flat) => tables.push((op_name.value.clone(), flat)),
                    None => ok = false,
                }
            }
            for (symbol, _) in signature.symbols() {
                if !a.ops.iter().any(|(name, _)| name.value == symbol) {
                    diags.push(diag(
                        a.name.span,
                        format!("operation `{symbol}` has no interpretation"),
                    ));
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            match FinAlgebra::new(
                a.name.value.clone(),
                signature.clone(),
                Carrier::new(size),
                tables,
            ) {
                Ok(algebra) => algebras.push(NamedAlgebra {
                    name: a.name.value.clone(),
                    signature_name: a.signature.value.clone(),
                    algebra,
                }),
                Err(violations) => {
                    for violation in violations {
                        diags.push(diag(a.name.span, violation.to_string()));
                    }
                }
            }
        }
    }

    let mut relations: Vec<NamedRelation> = Vec::new();
    let mut partitions: Vec<NamedPartition> = Vec::new();

    for item in &raw.items {
        match item {
            RawItem::Relation(r) => {
                if relations.iter().any(|seen| seen.name == r.name.value) {
                    diags.push(diag(
                        r.name.span,
                        format!("duplicate relation name `{}`", r.name.value),
                    ));
                    continue;
                }
                let Some(named) = algebras.iter().find(|a| a.name == r.algebra.value) else {
                    diags.push(diag(
                        r.algebra.span,
                        format!("unknown algebra `{}`", r.algebra.value),
                    ));
                    continue;
                };
                let carrier = named.algebra.carrier();
                let arity = r.arity.value;
                let mut tuples: Vec<Vec<usize>> = Vec::new();
                let mut ok = true;
                for (span, entries) in &r.tuples {
                    if entries.len() != arity {
                        diags.push(diag(
                            *span,
                            format!(
                                "tuple has {} entries, expected {} (declared arity)",
                                entries.len(),
                                arity
                            ),
                        ));
                        ok = false;
                        continue;
                    }
                    for entry in entries {
                        if entry.value >= carrier.size() {
                            diags.push(diag(
                                entry.span,
                                format!(
                                    "value {} is out of range for carrier of size {}",
                                    entry.value,
                                    carrier.size()
                                ),
                            ));
                            ok = false;
                        }
                    }
                    tuples.push(entries.iter().map(|e| e.value).collect());
                }
                if !ok {
                    continue;
                }
                let relation = ContRelation::new(carrier, arity, tuples)
                    .expect("tuples were checked against the carrier");
                relations.push(NamedRelation {
                    name: r.name.value.clone(),
                    algebra_name: r.algebra.value.clone(),
                    relation,
                });
            }
            RawItem::Partition(p) => {
                if partitions.iter().any(|seen| seen.name == p.name.value) {
                    diags.push(diag(
                        p.name.span,
                        format!("duplicate partition name `{}`", p.name.value),
                    ));
                    continue;
                }
                let Some(named) = algebras.iter().find(|a| a.name == p.algebra.value) else {
                    diags.push(diag(
                        p.algebra.span,
                        format!("unknown algebra `{}`", p.algebra.value),
                    ));
                    continue;
                };
                let carrier = named.algebra.carrier();
                let mut seen = vec![false; carrier.size()];
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut ok = true;
                for (_, entries) in &p.blocks {
                    let mut block = Vec::new();
                    for entry in entries {
                        if entry.value >= carrier.size() {
                            diags.push(diag(
                                entry.span,
                                format!(
                                    "value {} is out of range for carrier of size {}",
                                    entry.value,
                                    carrier.size()
                                ),
                            ));
                            ok = false;
                            continue;
                        }
                        if seen[entry.value] {
                            diags.push(diag(
                                entry.span,
                                format!("element {} appears in more than one block", entry.value),
                            ));
                            ok = false;
                            continue;
                        }
                        seen[entry.value] = true;
                        block.push(entry.value);
                    }
                    blocks.push(block);
                }
                let missing: Vec<usize> = (0..carrier.size()).filter(|&x| !seen[x]).collect();
                if !missing.is_empty() {
                    diags.push(diag(
                        p.name.span,
                        format!("elements {missing:?} are not covered by any block"),
                    ));
                    ok = false;
                }
                if !ok {
                    continue;
                }
                let partition = Partition::from_blocks(carrier, blocks)
                    .expect("blocks were checked to partition the carrier");
                partitions.push(NamedPartition {
                    name: p.name.value.clone(),
                    algebra_name: p.algebra.value.clone(),
                    partition,
                });
            }
            _ => {}
        }
    }

    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line, d.col));
        return Err(diags);
    }

    // Reassemble in declaration order.
    let mut sig_iter = signatures.into_iter();
    let mut alg_iter = algebras.into_iter();
    let mut rel_iter = relations.into_iter();
    let mut part_iter = partitions.into_iter();
    let items = raw
        .items
        .iter()
        .map(|item| match item {
            RawItem::Signature(_) => Item::Signature(sig_iter.next().expect("one per raw item")),
            RawItem::Algebra(_) => Item::Algebra(alg_iter.next().expect("one per raw item")),
            RawItem::Relation(_) => Item::Relation(rel_iter.next().expect("one per raw item")),
            RawItem::Partition(_) => Item::Partition(part_iter.next().expect("one per raw item")),
        })
        .collect();
    Ok(SpecDocument { items })
}

fn flatten_table(
    table: &RawTable,
    arity: usize,
    size: usize,
    diags: &mut Vec<Diagnostic>,
) -> Option<Vec<usize>> {
    if ualg_core::tuple::count_uniform(size, arity).is_none() {
        diags.push(diag(
            table.span(),
            format!("table of arity {arity} over carrier {size} is too large"),
        ));
        return None;
    }
    // Walk before allocating: a structurally valid table carries exactly
    // size^arity leaf tokens, so the allocation never outruns the input.
    let mut leaves: Vec<(usize, usize)> = Vec::new();
    let mut args = Vec::with_capacity(arity);
    let before = diags.len();
    walk_table(table, arity, size, &mut args, &mut leaves, diags);
    if diags.len() != before {
        return None;
    }
    let mut flat = vec![0usize; leaves.len()];
    for (index, value) in leaves {
        flat[index] = value;
    }
    Some(flat)
}

fn walk_table(
    table: &RawTable,
    arity: usize,
    size: usize,
    args: &mut Vec<usize>,
    leaves: &mut Vec<(usize, usize)>,
    diags: &mut Vec<Diagnostic>,
) {
    if args.len() == arity {
        match table {
            RawTable::Leaf(leaf) => {
                if leaf.value < size {
                    leaves.push((encode_uniform(args, size), leaf.value));
                } else {
                    diags.push(diag(
                        leaf.span,
                        format!(
                            "value {} is out of range for carrier of size {size}",
                            leaf.value
                        ),
                    ));
                }
            }
            RawTable::List(span, _) => {
                diags.push(diag(
                    *span,
                    format!("table is nested deeper than the declared arity {arity}"),
                ));
            }
        }
        return;
    }
    match table {
        RawTable::Leaf(leaf) => {
            diags.push(diag(
                leaf.span,
                format!("table nesting is too shallow for the declared arity {arity}"),
            ));
        }
        RawTable::List(span, entries) => {
            if entries.len() != size {
                diags.push(diag(
                    *span,
                    format!(
                        "table level has {} entries, expected {size} (carrier size)",
                        entries.len()
                    ),
                ));
                return;
            }
            for (i, entry) in entries.iter().enumerate() {
                args.push(i);
                walk_table(entry, arity, size, args, leaves, diags);
                args.pop();
            }
        }
    }
}

/// Serialize a document in canonical form: declaration order, one item per
/// line, operations in signature order, tuples sorted, blocks in canonical
/// partition order. Serializing, parsing, and serializing again is the
/// identity on the text.
pub fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for item in doc.items() {
        match item {
            Item::Signature(s) => {
                out.push_str(&format!("signature {} {{", s.name));
                for (symbol, arity) in s.signature.symbols() {
                    out.push_str(&format!(" op {symbol} {arity};"));
                }
                out.push_str(" }\n");
            }
            Item::Algebra(a) => {
                out.push_str(&format!(
                    "algebra {} : {} {{ carrier {};",
                    a.name,
                    a.signature_name,
                    a.algebra.carrier().size()
                ));
                for ((symbol, _), op) in a.algebra.signature().symbols().zip(a.algebra.operations())
                {
                    out.push_str(&format!(" op {symbol} = {};", table_text(op)));
                }
                out.push_str(" }\n");
            }
            Item::Relation(r) => {
                out.push_str(&format!(
                    "relation {} on {} arity {} {{",
                    r.name,
                    r.algebra_name,
                    r.relation.arity()
                ));
                for tuple in r.relation.members() {
                    let entries: Vec<String> = tuple.iter().map(usize::to_string).collect();
                    out.push_str(&format!(" ({});", entries.join(",")));
                }
                out.push_str(" }\n");
            }
            Item::Partition(p) => {
                out.push_str(&format!("partition {} on {} {{", p.name, p.algebra_name));
                for block in p.partition.blocks() {
                    let entries: Vec<String> = block.iter().map(usize::to_string).collect();
                    out.push_str(&format!(" {{{}}};", entries.join(",")));
                }
                out.push_str(" }\n");
            }
        }
    }
    out
}

fn table_text(op: &FiniteOperation) -> String {
    let mut out = String::new();
    let mut args = Vec::with_capacity(op.arity());
    write_table(op, &mut args, &mut out);
    out
}

fn write_table(op: &FiniteOperation, args: &mut Vec<usize>, out: &mut String) {
    let size = op.carrier().size();
    if args.len() == op.arity() {
        out.push_str(&op.table()[encode_uniform(args, size)].to_string());
        return;
    }
    out.push('[');
    for v in 0..size {
        if v > 0 {
            out.push(',');
        }
        args.push(v);
        write_table(op, args, out);
        args.pop();
    }
    out.push(']');
}

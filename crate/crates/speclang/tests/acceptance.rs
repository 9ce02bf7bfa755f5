//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured evidence (run with `--nocapture` to see them).
//!
//! Oracles are independent of the code paths they check: partition counts
//! come from a Bell-number recurrence, congruence sets from a separate
//! enumerator and a naive quantifier, and quotient/product tables from
//! direct coordinatewise computation.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ualg_core::{
    all_congruences, check_congruence, compatible_op, cont_compatible_op, dep_compatible_ops,
    generated_congruence, product, quotient_algebra, zero_congruence, BinaryRelation, Carrier,
    ContRelation, DepRelation, FinAlgebra, FiniteFunction, FiniteOperation, Partition, Signature,
};
use ualg_speclang::{
    parse, serialize, Item, NamedAlgebra, NamedPartition, NamedRelation, NamedSignature,
    SpecDocument,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture exists")
}

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion:02} PASS - {detail}");
}

fn cyclic(n: usize) -> FinAlgebra {
    let sig = Signature::new(vec![("add".to_string(), 2)]).unwrap();
    let add = FiniteOperation::from_fn(Carrier::new(n), 2, |a| (a[0] + a[1]) % n).unwrap();
    FinAlgebra::from_operations(format!("Z{n}"), sig, Carrier::new(n), vec![add]).unwrap()
}

#[test]
fn criterion_01_monoid_example_fidelity() {
    let sig = Signature::monoid();
    let symbols: Vec<(&str, usize)> = sig.symbols().collect();
    assert_eq!(symbols, vec![("e", 0), ("·", 2)]);

    let z2 = FinAlgebra::z2_monoid();
    assert_eq!(z2.signature(), &sig);
    assert_eq!(z2.op("e").unwrap().table(), &[0]);
    assert_eq!(z2.op("·").unwrap().table(), &[0, 1, 1, 0]);

    // The spec-language encoding parses, validates, and carries the same
    // tables under the identifier-friendly symbol names.
    let doc = parse(&read_fixture("monoid.ual")).expect("monoid fixture parses");
    let parsed = &doc.find_algebra("Z2").unwrap().algebra;
    assert_eq!(parsed.op("e").unwrap().table(), z2.op("e").unwrap().table());
    assert_eq!(
        parsed.op("mul").unwrap().table(),
        z2.op("·").unwrap().table()
    );
    let arities: Vec<usize> = parsed.signature().symbols().map(|(_, a)| a).collect();
    assert_eq!(arities, vec![0, 2]);

    pass(
        1,
        "monoid signature is e/0, ·/2 and the encoded Z2 validates",
    );
}

/// Partitions of `0..n` by recursive insertion, independent of the
/// restricted-growth-string enumerator in the kernel.
fn partitions_by_insertion(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut all: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for element in 0..n {
        let mut next = Vec::new();
        for partition in &all {
            for i in 0..partition.len() {
                let mut grown = partition.clone();
                grown[i].push(element);
                next.push(grown);
            }
            let mut grown = partition.clone();
            grown.push(vec![element]);
            next.push(grown);
        }
        all = next;
    }
    all
}

/// Bell numbers by the binomial recurrence B(n+1) = sum C(n,k) B(k).
fn bell_by_recurrence(n: usize) -> usize {
    let mut bell = vec![1usize];
    for m in 0..n {
        let mut choose = 1usize;
        let mut next = 0usize;
        for (k, &b) in bell.iter().enumerate().take(m + 1) {
            next += choose * b;
            choose = choose * (m - k) / (k + 1);
        }
        bell.push(next);
    }
    bell[n]
}

/// Naive congruence test: full quantifier over all pairs of argument
/// tuples for every operation.
fn naive_is_congruence(algebra: &FinAlgebra, blocks: &[Vec<usize>]) -> bool {
    let n = algebra.carrier().size();
    let mut label = vec![0usize; n];
    for (id, block) in blocks.iter().enumerate() {
        for &x in block {
            label[x] = id;
        }
    }
    for op in algebra.operations() {
        let tuples: Vec<Vec<usize>> = op.arg_tuples().collect();
        for u in &tuples {
            for v in &tuples {
                let related = u.iter().zip(v).all(|(&x, &y)| label[x] == label[y]);
                if related && label[op.apply(u).unwrap()] != label[op.apply(v).unwrap()] {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn criterion_02_congruence_enumeration_oracle() {
    let start = Instant::now();

    let all_4 = partitions_by_insertion(4);
    assert_eq!(all_4.len(), 15);
    assert_eq!(bell_by_recurrence(4), 15);
    assert_eq!(Partition::all(Carrier::new(4)).count(), 15);

    let z4 = cyclic(4);
    let mut expected: Vec<Partition> = all_4
        .iter()
        .filter(|blocks| naive_is_congruence(&z4, blocks))
        .map(|blocks| Partition::from_blocks(Carrier::new(4), blocks.clone()).unwrap())
        .collect();
    expected.sort_by(|a, b| a.block_of().cmp(b.block_of()));

    let found: Vec<Partition> = all_congruences(&z4)
        .unwrap()
        .into_iter()
        .map(|c| c.partition().clone())
        .collect();
    assert_eq!(found, expected);
    assert_eq!(found.len(), 3);
    assert!(found.contains(&Partition::discrete(Carrier::new(4))));
    assert!(found.contains(&Partition::single_block(Carrier::new(4))));
    assert!(found
        .contains(&Partition::from_blocks(Carrier::new(4), vec![vec![0, 2], vec![1, 3]]).unwrap()));

    let z3 = cyclic(3);
    let expected_3 = partitions_by_insertion(3)
        .iter()
        .filter(|blocks| naive_is_congruence(&z3, blocks))
        .count();
    assert_eq!(expected_3, 2);
    assert_eq!(all_congruences(&z3).unwrap().len(), 2);

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_millis() < 100,
        "enumeration oracle took {elapsed:?}, budget is 100ms"
    );
    pass(
        2,
        &format!("Z4 has 3 congruences, Z3 has 2, against the naive oracle in {elapsed:?}"),
    );
}

#[test]
fn criterion_03_quotient_correctness() {
    let z4 = cyclic(4);
    let even_odd = Partition::from_blocks(Carrier::new(4), vec![vec![0, 2], vec![1, 3]]).unwrap();
    let theta = check_congruence(&z4, &even_odd).unwrap();
    let quotient = quotient_algebra(&z4, &theta).unwrap();

    assert_eq!(quotient.carrier().size(), 2);
    let mod2: Vec<usize> = quotient.op("add").unwrap().table().to_vec();
    assert_eq!(mod2, vec![0, 1, 1, 0]);

    // Recompute every entry with every representative choice.
    for b1 in 0..2 {
        for b2 in 0..2 {
            let expected = quotient.interpret("add", &[b1, b2]).unwrap();
            for &r1 in &even_odd.blocks()[b1] {
                for &r2 in &even_odd.blocks()[b2] {
                    let image = z4.interpret("add", &[r1, r2]).unwrap();
                    assert_eq!(even_odd.block_of()[image], expected);
                }
            }
        }
    }
    pass(
        3,
        "Z4 / {{0,2},{1,3}} is addition mod 2 for every representative choice",
    );
}

#[test]
fn criterion_04_product_correctness() {
    let z2 = FinAlgebra::z2_monoid();
    let squared = product(&Signature::monoid(), &[&z2, &z2]).unwrap();
    assert_eq!(squared.carrier().size(), 4);

    let sizes = [2, 2];
    for a in 0..4 {
        for b in 0..4 {
            let got = squared.interpret("·", &[a, b]).unwrap();
            let ta = ualg_core::decode_element(a, &sizes);
            let tb = ualg_core::decode_element(b, &sizes);
            let coordinatewise: Vec<usize> = (0..2)
                .map(|j| z2.interpret("·", &[ta[j], tb[j]]).unwrap())
                .collect();
            assert_eq!(got, ualg_core::encode_element(&coordinatewise, &sizes));
        }
    }
    assert_eq!(
        squared.interpret("·", &[1, 2]).unwrap(),
        3,
        "enc(1,0) · enc(0,1) = enc(1,1)"
    );
    pass(
        4,
        "product of Z2 with itself agrees coordinatewise on all 16 pairs",
    );
}

fn random_algebra(rng: &mut StdRng, index: usize) -> FinAlgebra {
    let symbol_count = rng.gen_range(1..=3);
    let arities: Vec<usize> = (0..symbol_count).map(|_| rng.gen_range(0..=2)).collect();
    let size: usize = if arities.contains(&0) {
        rng.gen_range(1..=5)
    } else {
        rng.gen_range(0..=5)
    };
    let symbols: Vec<(String, usize)> = arities
        .iter()
        .enumerate()
        .map(|(j, &arity)| (format!("f{j}"), arity))
        .collect();
    let signature = Signature::new(symbols.clone()).unwrap();
    let ops: Vec<(String, Vec<usize>)> = symbols
        .into_iter()
        .map(|(name, arity)| {
            let len = size.pow(arity as u32);
            let table = (0..len).map(|_| rng.gen_range(0..size)).collect();
            (name, table)
        })
        .collect();
    FinAlgebra::new(format!("R{index}"), signature, Carrier::new(size), ops)
        .expect("random tables are total and in range")
}

#[test]
fn criterion_05_zero_congruence_universality() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checked = 0;
    for index in 0..120 {
        let algebra = random_algebra(&mut rng, index);
        let zero = zero_congruence(&algebra);
        let recheck = check_congruence(&algebra, &Partition::discrete(algebra.carrier()));
        assert!(recheck.is_ok(), "algebra {}", algebra.name());
        assert_eq!(recheck.unwrap().partition(), zero.partition());
        checked += 1;
    }
    assert!(checked >= 100);
    pass(
        5,
        &format!("zero congruence verified on {checked} random algebras"),
    );
}

#[test]
fn criterion_06_monic_iff_embedding() {
    let shapes = [(3usize, 3usize, 27), (3, 4, 64), (4, 3, 81)];
    let mut total = 0;
    for (dom, cod, expected_count) in shapes {
        let mut count = 0;
        for f in FiniteFunction::all(Carrier::new(dom), Carrier::new(cod)) {
            assert_eq!(f.is_monic(), f.is_embedding(), "table {:?}", f.table());
            count += 1;
        }
        assert_eq!(count, expected_count);
        total += count;
    }
    assert_eq!(total, 172);
    pass(
        6,
        "is_monic = is_embedding on all 172 functions of shapes 3->3, 3->4, 4->3",
    );
}

/// Deterministic operation sample: everything when the space is small, a
/// seeded random sample otherwise.
fn sample_operations(
    rng: &mut StdRng,
    size: usize,
    arity: usize,
    cap: usize,
) -> Vec<FiniteOperation> {
    let carrier = Carrier::new(size);
    let table_len = size.pow(arity as u32);
    let space: Option<usize> = (0..table_len).try_fold(1usize, |acc, _| acc.checked_mul(size));
    let mut ops = Vec::new();
    match space {
        Some(space) if space <= cap => {
            for index in 0..space {
                let mut digits = Vec::with_capacity(table_len);
                let mut rest = index;
                for _ in 0..table_len {
                    digits.push(rest % size);
                    rest /= size;
                }
                ops.push(FiniteOperation::new(carrier, arity, digits).unwrap());
            }
        }
        _ => {
            for _ in 0..cap {
                let table = (0..table_len).map(|_| rng.gen_range(0..size)).collect();
                ops.push(FiniteOperation::new(carrier, arity, table).unwrap());
            }
        }
    }
    ops
}

fn all_binary_relations(size: usize) -> Vec<BinaryRelation> {
    let carrier = Carrier::new(size);
    let cells = size * size;
    (0..(1usize << cells))
        .map(|mask| {
            BinaryRelation::from_fn(carrier, carrier, |a, b| mask >> (a * size + b) & 1 == 1)
        })
        .collect()
}

#[test]
fn criterion_07_compatibility_degeneration_laws() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut op_total = 0;
    let mut pair_total = 0;

    for size in 1..=3usize {
        let relations = all_binary_relations(size);
        for arity in 0..=2usize {
            let cap = match (size, arity) {
                (3, 1) => 27,
                (3, 2) => 145,
                _ => usize::MAX / 2,
            };
            let ops = sample_operations(&mut rng, size, arity, cap);
            op_total += ops.len();
            for r in &relations {
                let cont = ContRelation::from_binary(r).unwrap();
                for f in &ops {
                    assert_eq!(
                        compatible_op(f, r).unwrap(),
                        cont_compatible_op(f, &cont).unwrap(),
                        "size {size} arity {arity} table {:?} relation {:?}",
                        f.table(),
                        r.pairs().collect::<Vec<_>>()
                    );
                    pair_total += 1;
                }
            }
        }
    }
    assert!(op_total >= 200, "sampled {op_total} operations");

    // Dependent compatibility degenerates to the single-carrier case on
    // constant families.
    let mut dep_pairs = 0;
    for size in 1..=3usize {
        for rel_arity in 1..=2usize {
            let tuples: Vec<Vec<usize>> =
                ualg_core::tuple::Tuples::index_order(vec![size; rel_arity]).collect();
            for _ in 0..40 {
                let members: Vec<Vec<usize>> = tuples
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .cloned()
                    .collect();
                let cont = ContRelation::new(Carrier::new(size), rel_arity, members).unwrap();
                let dep = DepRelation::from_cont(&cont);
                for op_arity in 0..=2usize {
                    let ops = sample_operations(&mut rng, size, op_arity, 4);
                    for f in &ops {
                        let fs = vec![f.clone(); rel_arity];
                        assert_eq!(
                            dep_compatible_ops(&fs, &dep).unwrap(),
                            cont_compatible_op(f, &cont).unwrap()
                        );
                        dep_pairs += 1;
                    }
                }
            }
        }
    }

    pass(
        7,
        &format!(
            "{op_total} operations x all boolean matrices agree ({pair_total} binary/cont pairs, {dep_pairs} dep/cont pairs)"
        ),
    );
}

#[test]
fn criterion_08_block_laws() {
    let mut partitions = 0;
    for n in 0..=4usize {
        let carrier = Carrier::new(n);
        for p in Partition::all(carrier) {
            partitions += 1;
            for x in 0..n {
                for y in 0..n {
                    let related = p.related(x, y).unwrap();
                    let block_x = p.block(x).unwrap();
                    let block_y = p.block(y).unwrap();
                    // [x] = [y] as subsets.
                    assert_eq!(related, block_x == block_y);
                    // <x> = <y> as block/representative pairs.
                    let rep = |z: usize| {
                        p.block(z)
                            .unwrap()
                            .elements()
                            .next()
                            .expect("blocks are nonempty")
                    };
                    assert_eq!(related, (block_x, rep(x)) == (block_y, rep(y)));
                    // Same block id in the quotient.
                    assert_eq!(related, p.block_id(x).unwrap() == p.block_id(y).unwrap());
                }
            }
        }
    }
    assert_eq!(partitions, 1 + 1 + 2 + 5 + 15);
    pass(
        8,
        "relatedness, block equality, and designated blocks coincide on all 24 partitions",
    );
}

#[test]
fn criterion_09_projection_compatibility() {
    let mut checks = 0;
    for size in 0..=3usize {
        let relations = all_binary_relations(size);
        for arity in 1..=3usize {
            for coord in 0..arity {
                let p = FiniteOperation::projection(Carrier::new(size), arity, coord).unwrap();
                for r in &relations {
                    assert!(compatible_op(&p, r).unwrap());
                    checks += 1;
                }
            }
        }
    }
    pass(
        9,
        &format!("every projection compatible with every relation ({checks} checks)"),
    );
}

/// Refinement-least member of `candidates` containing all `pairs`,
/// computed by filtering and minimizing, independent of the generator.
fn least_containing(candidates: &[Partition], pairs: &[(usize, usize)]) -> Option<Partition> {
    let containing: Vec<&Partition> = candidates
        .iter()
        .filter(|p| pairs.iter().all(|&(a, b)| p.related(a, b).unwrap()))
        .collect();
    let least = containing
        .iter()
        .find(|p| containing.iter().all(|q| p.refines(q).unwrap()))?;
    Some((*least).clone())
}

#[test]
fn criterion_10_generated_congruence_minimality() {
    let mut corpus: Vec<FinAlgebra> = Vec::new();
    for name in ["z4.ual", "z3.ual", "monoid.ual", "mixed.ual"] {
        let doc = parse(&read_fixture(name)).unwrap();
        for named in doc.algebras() {
            if named.algebra.carrier().size() <= 4 {
                corpus.push(named.algebra.clone());
            }
        }
    }
    assert_eq!(corpus.len(), 4);

    let mut cases = 0;
    for algebra in &corpus {
        let n = algebra.carrier().size();
        let lattice: Vec<Partition> = all_congruences(algebra)
            .unwrap()
            .into_iter()
            .map(|c| c.partition().clone())
            .collect();

        let mut generator_sets: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let singles: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        generator_sets.extend(singles.iter().map(|&p| vec![p]));
        let distinct: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for i in 0..distinct.len() {
            for j in i + 1..distinct.len() {
                generator_sets.push(vec![distinct[i], distinct[j]]);
            }
        }

        for pairs in &generator_sets {
            let generated = generated_congruence(algebra, pairs).unwrap();
            let expected =
                least_containing(&lattice, pairs).expect("the full partition contains every pair");
            assert_eq!(
                generated.partition(),
                &expected,
                "{} pairs {pairs:?}",
                algebra.name()
            );
            cases += 1;
        }
    }
    pass(
        10,
        &format!("generated congruence equals the filtered least element in {cases} cases"),
    );
}

fn random_document(rng: &mut StdRng) -> SpecDocument {
    let mut items: Vec<Item> = Vec::new();
    let mut signatures: Vec<(String, Signature)> = Vec::new();
    for i in 0..rng.gen_range(1..=2) {
        let symbols: Vec<(String, usize)> = (0..rng.gen_range(0..=3))
            .map(|j| (format!("f{j}"), rng.gen_range(0..=2)))
            .collect();
        let signature = Signature::new(symbols).unwrap();
        let name = format!("s{i}");
        signatures.push((name.clone(), signature.clone()));
        items.push(Item::Signature(NamedSignature { name, signature }));
    }

    let mut algebras: Vec<(String, usize)> = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let (sig_name, signature) = signatures[rng.gen_range(0..signatures.len())].clone();
        let size: usize = if signature.symbols().any(|(_, a)| a == 0) {
            rng.gen_range(1..=4)
        } else {
            rng.gen_range(0..=4)
        };
        let ops: Vec<(String, Vec<usize>)> = signature
            .symbols()
            .map(|(symbol, arity)| {
                let len = size.pow(arity as u32);
                let table: Vec<usize> = (0..len).map(|_| rng.gen_range(0..size)).collect();
                (symbol.to_string(), table)
            })
            .collect();
        let name = format!("A{i}");
        let algebra = FinAlgebra::new(name.clone(), signature, Carrier::new(size), ops).unwrap();
        algebras.push((name.clone(), size));
        items.push(Item::Algebra(NamedAlgebra {
            name,
            signature_name: sig_name,
            algebra,
        }));
    }

    for i in 0..rng.gen_range(0..=2) {
        let (algebra_name, size) = algebras[rng.gen_range(0..algebras.len())].clone();
        let arity = rng.gen_range(1..=3);
        let members: Vec<Vec<usize>> = if size == 0 {
            Vec::new()
        } else {
            (0..rng.gen_range(0..=4))
                .map(|_| (0..arity).map(|_| rng.gen_range(0..size)).collect())
                .collect()
        };
        let relation = ContRelation::new(Carrier::new(size), arity, members).unwrap();
        items.push(Item::Relation(NamedRelation {
            name: format!("R{i}"),
            algebra_name,
            relation,
        }));
    }

    for i in 0..rng.gen_range(0..=2) {
        let (algebra_name, size) = algebras[rng.gen_range(0..algebras.len())].clone();
        let labels: Vec<usize> = (0..size).map(|_| rng.gen_range(0..=size)).collect();
        let partition = Partition::from_assignment(Carrier::new(size), &labels).unwrap();
        items.push(Item::Partition(NamedPartition {
            name: format!("P{i}"),
            algebra_name,
            partition,
        }));
    }

    SpecDocument::from_items(items)
}

#[test]
fn criterion_11_parser_golden_roundtrip_and_diagnostics() {
    // Golden files pin the canonical serialization of the corpus.
    for name in ["z4", "z3", "monoid", "mixed"] {
        let doc = parse(&read_fixture(&format!("{name}.ual"))).unwrap();
        let golden = read_fixture(&format!("golden/{name}.golden"));
        assert_eq!(serialize(&doc), golden, "golden mismatch for {name}");
    }

    // Round-trip idempotence on 500 random documents.
    let mut rng = StdRng::seed_from_u64(11);
    for case in 0..500 {
        let doc = random_document(&mut rng);
        let text = serialize(&doc);
        let reparsed = parse(&text).unwrap_or_else(|errs| {
            panic!("case {case}: canonical text failed to parse: {errs:?}\n{text}")
        });
        assert_eq!(reparsed, doc, "case {case} round trip\n{text}");
        assert_eq!(serialize(&reparsed), text, "case {case} idempotence");
    }

    // Every malformed fixture exits with code 2 and positioned diagnostics.
    let dir = fixture("malformed");
    let mut malformed = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "ual") {
            continue;
        }
        malformed += 1;
        let out = Command::new(env!("CARGO_BIN_EXE_ualg"))
            .args(["check", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "{}", path.display());
        let err = String::from_utf8_lossy(&out.stderr).into_owned();
        let positioned = err.lines().any(|line| {
            let mut parts = line.split(':');
            parts.next().is_some()
                && parts
                    .next()
                    .is_some_and(|l| l.trim().parse::<usize>().is_ok())
                && parts
                    .next()
                    .is_some_and(|c| c.trim().parse::<usize>().is_ok())
        });
        assert!(positioned, "{}: {err}", path.display());
    }
    assert!(malformed >= 10);

    pass(
        11,
        &format!("4 golden files, 500 round trips, {malformed} malformed fixtures rejected with positions"),
    );
}

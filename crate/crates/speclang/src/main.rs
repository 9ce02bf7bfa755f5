//! Command-line front end for the finite-algebra kernel.
//!
//! Exit codes: 0 = success / property holds; 1 = property fails or a check
//! fails, with a counterexample on stdout; 2 = parse, semantic, or usage
//! error, reported on stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ualg_core::{
    all_congruences_bounded, check_congruence, decode_element, generated_congruence_bounded,
    product, quotient_algebra, Congruence, Error, FinAlgebra, DEFAULT_SIZE_BOUND,
};
use ualg_speclang::{
    parse, serialize, Item, NamedAlgebra, NamedPartition, NamedSignature, SpecDocument,
};

#[derive(Parser)]
#[command(
    name = "ualg",
    version,
    about = "Declare finite algebras and query their congruences, quotients, and products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a file.
    Check { file: PathBuf },
    /// List every congruence of an algebra.
    Congruences {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Override the carrier-size bound for enumeration.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Compute the smallest congruence relating the given pairs.
    Generated {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        /// Comma-separated element pairs, e.g. "0-2,1-3".
        #[arg(long)]
        pairs: String,
        /// Override the carrier-size bound.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Quotient an algebra by a named partition, which must be a congruence.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        partition: String,
        /// Write the resulting algebra to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Form the product of the named algebras.
    Product {
        file: PathBuf,
        /// Factor names, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        algebras: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test whether a relation or partition is compatible with an algebra.
    Compatible {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        target: CompatibleTarget,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CompatibleTarget {
    #[arg(long)]
    relation: Option<String>,
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Errors that end the run: code 2 with a message on stderr, or code 1
/// after a counterexample has already been printed on stdout.
enum Failure {
    Usage(String),
    PropertyFalse,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::from(0),
        Err(Failure::PropertyFalse) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Check { file } => {
            let doc = load(&file)?;
            println!(
                "ok: {} signatures, {} algebras, {} relations, {} partitions",
                doc.signatures().count(),
                doc.algebras().count(),
                doc.relations().count(),
                doc.partitions().count()
            );
            Ok(())
        }
        Command::Congruences {
            file,
            algebra,
            format,
            max_size,
        } => {
            let doc = load(&file)?;
            let named = find_algebra(&doc, &algebra)?;
            let bound = max_size.unwrap_or(DEFAULT_SIZE_BOUND);
            let congruences = all_congruences_bounded(&named.algebra, bound)?;
            match format {
                Format::Text => {
                    for theta in &congruences {
                        println!("{}", theta.partition());
                    }
                }
                Format::Json => {
                    let blocks: Vec<Vec<Vec<usize>>> = congruences
                        .iter()
                        .map(|theta| theta.partition().blocks().to_vec())
                        .collect();
                    let value = json!({
                        "algebra": named.name,
                        "count": congruences.len(),
                        "congruences": blocks,
                    });
                    println!("{value}");
                }
            }
            Ok(())
        }
        Command::Generated {
            file,
            algebra,
            pairs,
            max_size,
        } => {
            let doc = load(&file)?;
            let named = find_algebra(&doc, &algebra)?;
            let pairs = parse_pairs(&pairs)?;
            let bound = max_size.unwrap_or(DEFAULT_SIZE_BOUND);
            let theta = generated_congruence_bounded(&named.algebra, &pairs, bound)?;
            println!("{}", theta.partition());
            Ok(())
        }
        Command::Quotient {
            file,
            algebra,
            partition,
            out,
        } => {
            let doc = load(&file)?;
            let named = find_algebra(&doc, &algebra)?;
            let named_partition = find_partition(&doc, &partition, &named.name)?;
            let theta = congruence_or_counterexample(&named.algebra, named_partition)?;
            let quotient = quotient_algebra(&named.algebra, &theta)?
                .with_name(format!("{}_mod_{}", named.name, named_partition.name));
            let signature = find_signature(&doc, &named.signature_name)?;

            let mut text = String::new();
            for (id, block) in theta.partition().blocks().iter().enumerate() {
                text.push_str(&format!("# {id} = {{{}}}\n", join(block)));
            }
            text.push_str(&algebra_document(signature, &quotient));
            emit(out.as_deref(), &text)?;
            Ok(())
        }
        Command::Product {
            file,
            algebras,
            out,
            format,
        } => {
            let doc = load(&file)?;
            let factors: Vec<&NamedAlgebra> = algebras
                .iter()
                .map(|name| find_algebra(&doc, name))
                .collect::<Result<_, _>>()?;
            let signature = find_signature(&doc, &factors[0].signature_name)?;
            let refs: Vec<&FinAlgebra> = factors.iter().map(|f| &f.algebra).collect();
            let result = product(&signature.signature, &refs)?.with_name(algebras.join("_x_"));
            let sizes: Vec<usize> = refs.iter().map(|a| a.carrier().size()).collect();

            match format {
                Format::Text => {
                    let mut text = String::new();
                    for element in result.carrier().elements() {
                        let coords = decode_element(element, &sizes);
                        text.push_str(&format!("# {element} = ({})\n", join(&coords)));
                    }
                    text.push_str(&algebra_document(signature, &result));
                    emit(out.as_deref(), &text)?;
                }
                Format::Json => {
                    let elements: Vec<serde_json::Value> = result
                        .carrier()
                        .elements()
                        .map(|element| {
                            json!({
                                "index": element,
                                "tuple": decode_element(element, &sizes),
                            })
                        })
                        .collect();
                    let value = json!({
                        "algebra": result.name(),
                        "carrier": result.carrier().size(),
                        "elements": elements,
                        "spec": algebra_document(signature, &result),
                    });
                    let text = format!("{value}\n");
                    emit(out.as_deref(), &text)?;
                }
            }
            Ok(())
        }
        Command::Compatible {
            file,
            algebra,
            target,
        } => {
            let doc = load(&file)?;
            let named = find_algebra(&doc, &algebra)?;
            if let Some(name) = target.partition {
                let named_partition = find_partition(&doc, &name, &named.name)?;
                congruence_or_counterexample(&named.algebra, named_partition)?;
                println!("compatible");
                return Ok(());
            }
            let name = target.relation.expect("clap requires one of the pair");
            let named_relation = doc
                .find_relation(&name)
                .ok_or_else(|| Failure::Usage(format!("unknown relation `{name}`")))?;
            if named_relation.algebra_name != named.name {
                return Err(Failure::Usage(format!(
                    "relation `{name}` is on algebra `{}`, not `{}`",
                    named_relation.algebra_name, named.name
                )));
            }
            match named
                .algebra
                .cont_compatibility_counterexample(&named_relation.relation)?
            {
                None => {
                    println!("compatible");
                    Ok(())
                }
                Some(failure) => {
                    let columns: Vec<String> = failure
                        .columns
                        .iter()
                        .map(|c| format!("({})", join(c)))
                        .collect();
                    println!(
                        "counterexample: operation `{}` sends related columns [{}] to ({}), which is not in the relation",
                        failure.symbol,
                        columns.join(", "),
                        join(&failure.image)
                    );
                    Err(Failure::PropertyFalse)
                }
            }
        }
    }
}

fn load(path: &Path) -> Result<SpecDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|diags| {
        for d in &diags {
            eprintln!("{}:{d}", path.display());
        }
        Failure::Usage(format!("{} error(s) in {}", diags.len(), path.display()))
    })
}

fn find_algebra<'d>(doc: &'d SpecDocument, name: &str) -> Result<&'d NamedAlgebra, Failure> {
    doc.find_algebra(name)
        .ok_or_else(|| Failure::Usage(format!("unknown algebra `{name}`")))
}

fn find_signature<'d>(doc: &'d SpecDocument, name: &str) -> Result<&'d NamedSignature, Failure> {
    doc.find_signature(name)
        .ok_or_else(|| Failure::Usage(format!("unknown signature `{name}`")))
}

fn find_partition<'d>(
    doc: &'d SpecDocument,
    name: &str,
    algebra: &str,
) -> Result<&'d NamedPartition, Failure> {
    let named = doc
        .find_partition(name)
        .ok_or_else(|| Failure::Usage(format!("unknown partition `{name}`")))?;
    if named.algebra_name != algebra {
        return Err(Failure::Usage(format!(
            "partition `{name}` is on algebra `{}`, not `{algebra}`",
            named.algebra_name
        )));
    }
    Ok(named)
}

/// Check the partition; on failure print the counterexample to stdout and
/// signal exit code 1.
fn congruence_or_counterexample(
    algebra: &FinAlgebra,
    named: &NamedPartition,
) -> Result<Congruence, Failure> {
    match check_congruence(algebra, &named.partition) {
        Ok(theta) => Ok(theta),
        Err(Error::NotACongruence { symbol, u, v }) => {
            println!(
                "counterexample: operation `{symbol}` maps related tuples ({}) and ({}) into different blocks",
                join(&u),
                join(&v)
            );
            Err(Failure::PropertyFalse)
        }
        Err(other) => Err(other.into()),
    }
}

/// A standalone document with the signature and one algebra, in canonical
/// form, ready to be piped back into another command.
fn algebra_document(signature: &NamedSignature, algebra: &FinAlgebra) -> String {
    let doc = SpecDocument::from_items(vec![
        Item::Signature(signature.clone()),
        Item::Algebra(NamedAlgebra {
            name: algebra.name().to_string(),
            signature_name: signature.name.clone(),
            algebra: algebra.clone(),
        }),
    ]);
    serialize(&doc)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let mut pairs = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (a, b) = part
            .trim()
            .split_once('-')
            .ok_or_else(|| Failure::Usage(format!("malformed pair `{part}`, expected `a-b`")))?;
        let a = a
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("malformed pair `{part}`, expected `a-b`")))?;
        let b = b
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("malformed pair `{part}`, expected `a-b`")))?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

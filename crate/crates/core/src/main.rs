//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 out of scope,
//! 4 contract error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use onerel::classifier::{build_witness, classify, full_table, rewriting_system, RelatorPresentation};
use onerel::io::{load_structure, render_words, save_structure, Format};
use onerel::rewriting::{parse_presentation, shirshov_complete, RewriteSystem};
use onerel::structures::{multiplier_oracle, nerode_lower_bound, verify_structure, Flavor, Model};
use onerel::words::Alphabet;
use onerel::Error;

#[derive(Parser)]
#[command(name = "onerel", version, about = "Automatic structures for one-relator semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Letters in increasing order, e.g. a,b,c
    #[arg(long, global = true)]
    alphabet: Option<String>,
    /// Word length bound (verify 8, nerode 10, enumerate 6)
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// rr, rl, lr, ll or all
    #[arg(long, global = true)]
    flavor: Option<String>,
    /// Output directory for `structure`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text or dot
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Seed for randomized rewriting in `nf`
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Rule cap for completion
    #[arg(long, global = true, default_value_t = 64)]
    max_rules: usize,
    /// Rule length cap for completion
    #[arg(long, global = true, default_value_t = 16)]
    max_len: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the verdict record of a relation
    Classify { relation: String },
    /// Print the verdict of every pattern over one or two letters
    Table {
        #[arg(default_value_t = 2)]
        letters: usize,
    },
    /// Complete a relation (or a presentation file) into a rewriting system
    Complete { relation: String },
    /// Print the normal form of a word
    Nf { relation: String, word: String },
    /// Write the witness structure of a relation to --out
    Structure { relation: String },
    /// Check a witness against rewriting up to --depth
    Verify {
        relation: Option<String>,
        /// Verify a structure directory instead of building one
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Print lower bounds on multiplier automaton sizes by depth
    Nerode { relation: String },
    /// Print the normal forms up to --depth
    Enumerate { relation: String },
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::TrivialRelation => 2,
            Error::OutOfScope(_) => 3,
            Error::Contract(_) | Error::NotApplicable(_) | Error::NoWitness(_) | Error::Io(_) => 4,
        };
        Fail(code, e.to_string())
    }
}

type Run = std::result::Result<u8, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.opts) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command, o: &Opts) -> Run {
    match cmd {
        Command::Classify { relation } => {
            let p = presentation(&relation, o)?;
            println!("{}", classify(&p)?.render());
        }
        Command::Table { letters } => {
            for r in full_table(letters)? {
                println!("{}", r.render());
            }
        }
        Command::Complete { relation } => {
            let rs = system_from_source(&relation, o)?;
            for line in rs.render() {
                println!("{line}");
            }
            println!("status={}", rs.status());
        }
        Command::Nf { relation, word } => {
            let rs = complete_system(&relation, o)?;
            let w = rs.alphabet().parse_word(&word).map_err(parse_err)?;
            let nf = rs.reduce(&w);
            let alpha = rs.alphabet();
            print!("word={} nf={}", alpha.render(&w), alpha.render(&nf));
            if let Some(seed) = o.seed {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let other = rs.reduce_random(&w, &mut rng);
                print!(" seed={seed} random_nf={}", alpha.render(&other));
                if other != nf {
                    println!();
                    return Err(Fail(4, "random reduction reached a different normal form".into()));
                }
            }
            println!();
        }
        Command::Structure { relation } => {
            let dir = o.out.as_ref().ok_or_else(|| Fail(2, "structure needs --out <dir>".into()))?;
            let format = Format::parse(&o.format)?;
            let p = presentation(&relation, o)?;
            let r = classify(&p)?;
            let s = build_witness(&p, &r)?;
            save_structure(&s, dir, format)?;
            let flavors: Vec<String> = s.flavors().iter().map(|f| f.to_string()).collect();
            println!(
                "wrote={} case={} flavors={} states={}",
                dir.display(),
                s.provenance.case_id,
                flavors.join(","),
                s.language.num_states()
            );
        }
        Command::Verify { relation, from } => {
            let depth = o.depth.unwrap_or(8);
            let mut s = match (relation, from) {
                (_, Some(dir)) => load_structure(&dir)?,
                (Some(rel), None) => {
                    let p = presentation(&rel, o)?;
                    let r = classify(&p)?;
                    build_witness(&p, &r)?
                }
                (None, None) => return Err(Fail(2, "verify needs a relation or --from <dir>".into())),
            };
            // `all` keeps whatever the witness declares
            if let Some(keep) = flavors(o)?.filter(|k| k.len() == 1) {
                if let Some(f) = keep.iter().find(|f| !s.flavors().contains(f)) {
                    return Err(Error::NotApplicable(format!("the witness does not declare flavor {f}")).into());
                }
                s.restrict_flavors(&keep);
            }
            let report = verify_structure(&s, depth)?;
            print!("{}", report.render(&s.alphabet));
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Nerode { relation } => {
            let depth = o.depth.unwrap_or(10);
            let rs = complete_system(&relation, o)?;
            let model = Model::plain(rs.clone());
            let l = rs.irr_language();
            for f in flavors(o)?.unwrap_or(vec![Flavor::Rr]) {
                for c in rs.alphabet().generators() {
                    let sample = multiplier_oracle(&l, &model, Some(c), f, depth)?;
                    for (d, b) in nerode_lower_bound(&sample, depth / 2) {
                        println!("mult={} flavor={f} depth={d} bound={b}", rs.alphabet().name(c));
                    }
                }
            }
        }
        Command::Enumerate { relation } => {
            let rs = complete_system(&relation, o)?;
            let words: Vec<_> = rs.irr_language().enumerate(o.depth.unwrap_or(6)).into_iter().map(Into::into).collect();
            print!("{}", render_words(&words, rs.alphabet()));
        }
    }
    Ok(0)
}

fn parse_err(e: Error) -> Fail {
    match e {
        Error::Parse { .. } => e.into(),
        other => Fail(2, other.to_string()),
    }
}

fn declared_alphabet(o: &Opts) -> std::result::Result<Option<Alphabet>, Fail> {
    o.alphabet.as_deref().map(|a| Alphabet::parse_list(a).map_err(parse_err)).transpose()
}

fn presentation(text: &str, o: &Opts) -> std::result::Result<RelatorPresentation, Fail> {
    if !text.contains('=') && Path::new(text).is_file() {
        let (alpha, rels) = read_presentation(Path::new(text))?;
        return match rels.as_slice() {
            [(u, v)] => Ok(RelatorPresentation::new(alpha, u.clone(), v.clone()).map_err(parse_err)?),
            _ => Err(Error::OutOfScope(format!("{} relations; one was expected", rels.len())).into()),
        };
    }
    Ok(RelatorPresentation::parse(text, declared_alphabet(o)?.as_ref())?)
}

fn read_presentation(
    path: &Path,
) -> std::result::Result<(Alphabet, Vec<(onerel::words::Word, onerel::words::Word)>), Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))?;
    Ok(parse_presentation(&text)?)
}

/// A relation, or a presentation file with any number of relations.
fn system_from_source(source: &str, o: &Opts) -> std::result::Result<RewriteSystem, Fail> {
    if !source.contains('=') && Path::new(source).is_file() {
        let (alpha, rels) = read_presentation(Path::new(source))?;
        return Ok(shirshov_complete(&rels, &alpha, o.max_rules, o.max_len)?);
    }
    let p = presentation(source, o)?;
    Ok(rewriting_system(&p, o.alphabet.is_some(), o.max_rules, o.max_len)?)
}

fn complete_system(source: &str, o: &Opts) -> std::result::Result<RewriteSystem, Fail> {
    let rs = system_from_source(source, o)?;
    if !rs.is_complete() {
        return Err(Error::Contract(format!(
            "completion stopped with status {}; raise --max-rules or --max-len",
            rs.status()
        ))
        .into());
    }
    Ok(rs)
}

fn flavors(o: &Opts) -> std::result::Result<Option<Vec<Flavor>>, Fail> {
    match o.flavor.as_deref() {
        None => Ok(None),
        Some("all") => Ok(Some(Flavor::ALL.to_vec())),
        Some(f) => Ok(Some(vec![Flavor::parse(f)?])),
    }
}

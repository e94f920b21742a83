mod diagram;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use convex_braids::abelian::abelianize;
use convex_braids::convex::{ConvexDisc, PunctureSet};
use convex_braids::derivations::{
    bundled_scripts, central_witness, check_script, CheckLevel, RewriteScript, BUNDLED,
};
use convex_braids::expand::expand_full;
use convex_braids::oracle::Oracle;
use convex_braids::presentations::{build, verify_presentation};
use convex_braids::relations::PresentationKind;
use convex_braids::words::{parse, Generator, Word};

#[derive(Parser)]
#[command(
    name = "convex-braids",
    version,
    about = "Convex presentations of the braid group: export, verify, rewrite, draw"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rotation,
    Bkl,
    Artin,
    ModifiedArtin,
    Twist,
    Swing,
    BoundarySwing,
}

impl From<Kind> for PresentationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Rotation => PresentationKind::Rotation,
            Kind::Bkl => PresentationKind::Bkl,
            Kind::Artin => PresentationKind::Artin,
            Kind::ModifiedArtin => PresentationKind::ModifiedArtin,
            Kind::Twist => PresentationKind::Twist,
            Kind::Swing => PresentationKind::Swing,
            Kind::BoundarySwing => PresentationKind::BoundarySwing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation
    Present {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check every relator of a presentation with the oracle
    Verify {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exit 0 iff two words are the same braid
    Equal {
        #[arg(long)]
        n: usize,
        word1: String,
        word2: String,
    },
    /// Rewrite a word in the Artin generators s1 … s(n-1)
    Expand {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Abelian invariants of a presentation
    Abelianize {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Print U with S_ij U = U S_ij = S_A and check it
    Witness {
        #[arg(long)]
        n: usize,
        i: usize,
        j: usize,
    },
    /// Replay a rewrite script (JSON file or bundled name)
    Derive {
        #[arg(long)]
        script: String,
        /// Disc size for bundled scripts
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Oracle-check every intermediate word
        #[arg(long)]
        every_step: bool,
        /// Print the scripts as JSON instead of checking them
        #[arg(long)]
        emit: bool,
    },
    /// Draw the punctures and the convex hulls of some sets as SVG
    Diagram {
        #[arg(long)]
        n: usize,
        /// Sets such as "{1,2,3,5} {4,7,8}"
        #[arg(long, default_value = "")]
        sets: String,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn word(text: &str, n: usize) -> Result<Word, Failure> {
    let disc = ConvexDisc::new(n)?;
    parse(text, disc).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn parse_sets(text: &str, disc: ConvexDisc) -> Result<Vec<PunctureSet>, Failure> {
    let mut sets = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .and_then(|r| r.split_once('}'))
            .ok_or_else(|| Failure::Usage(format!("expected `{{…}}` in set list at `{rest}`")))?;
        let labels = body
            .0
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Usage(format!("bad label in `{{{}}}`: {e}", body.0)))?;
        let set = disc.set(&labels)?;
        if set.is_empty() {
            return Err(Failure::Usage("empty set in set list".to_string()));
        }
        sets.push(set);
        rest = body
            .1
            .trim_start_matches(|c: char| c == ',' || c == ';' || c.is_whitespace());
    }
    Ok(sets)
}

fn present(kind: Kind, n: usize, format: Format) -> Outcome {
    let p = build(kind.into(), n)?;
    match format {
        Format::Text => print!("{}", p.to_text()),
        Format::Structured => println!("{}", p.to_json()),
    }
    Ok(())
}

fn verify(kind: Kind, n: usize, jobs: Option<usize>) -> Outcome {
    let p = build(kind.into(), n)?;
    let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |j| j.get()));
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".to_string()));
    }
    let report = verify_presentation(&p, jobs);
    println!("{} n={}", report.name, report.n);
    println!("generators: {}", report.generators);
    println!("relators: {}, failed: {}", report.relators, report.failed);
    if p.kind == PresentationKind::Twist {
        println!("schema overlap: {}", report.schema_overlap);
    }
    if report.quotient_only {
        println!("note: checked with the punctures filled in (necessary condition only)");
    }
    for c in report.failures() {
        let why = match (&c.error, c.pure) {
            (Some(e), _) => e.clone(),
            (None, false) => "not pure".to_string(),
            (None, true) => "not trivial".to_string(),
        };
        println!("FAIL #{} [{}] {}: {why}", c.index, c.tag, c.relator);
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn equal(n: usize, w1: &str, w2: &str) -> Outcome {
    let (a, b) = (word(w1, n)?, word(w2, n)?);
    if Oracle::new(n).equal(&a, &b)? {
        println!("equal");
        Ok(())
    } else {
        println!("not equal");
        Err(Failure::Check)
    }
}

fn witness(n: usize, i: usize, j: usize) -> Outcome {
    let u = central_witness(i, j, n)?;
    let disc = ConvexDisc::new(n)?;
    let sij = Word::gen(Generator::swing(disc.set(&[i, j])?)?);
    let sa = Word::gen(Generator::swing(disc.full())?);
    let oracle = Oracle::new(n);
    let left = oracle.equal(&(&sij * &u), &sa)?;
    let right = oracle.equal(&(&u * &sij), &sa)?;
    println!("{u}");
    println!(
        "S_ij U = S_A: {}\nU S_ij = S_A: {}",
        if left { "ok" } else { "FAILED" },
        if right { "ok" } else { "FAILED" }
    );
    if left && right {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn derive(script: &str, n: usize, every_step: bool, emit: bool) -> Outcome {
    let scripts = if BUNDLED.contains(&script) {
        bundled_scripts(script, n)?
    } else if Path::new(script).is_file() {
        let text = fs::read_to_string(script)?;
        vec![RewriteScript::from_json(&text)?]
    } else {
        return Err(Failure::Usage(format!(
            "`{script}` is neither a file nor a bundled script ({})",
            BUNDLED.join(", ")
        )));
    };
    if emit {
        let docs: Vec<_> = scripts.iter().map(RewriteScript::to_document).collect();
        let out = if docs.len() == 1 {
            serde_json::to_string_pretty(&docs[0])?
        } else {
            serde_json::to_string_pretty(&docs)?
        };
        println!("{out}");
        return Ok(());
    }
    let level = if every_step {
        CheckLevel::EveryStep
    } else {
        CheckLevel::for_build()
    };
    if scripts.is_empty() {
        println!("{script}: no valid bindings for n={n}");
        return Ok(());
    }
    let mut failed = 0;
    for s in &scripts {
        let r = check_script(s, level);
        if !r.passed {
            failed += 1;
        }
        println!("{}", r.summary());
    }
    println!("scripts: {}, failed: {failed}", scripts.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Present { kind, n, format } => present(kind, n, format),
        Command::Verify { kind, n, jobs } => verify(kind, n, jobs),
        Command::Equal { n, word1, word2 } => equal(n, &word1, &word2),
        Command::Expand { n, word: text } => {
            let w = word(&text, n)?;
            Oracle::new(n).images(&w)?;
            println!("{}", expand_full(&w));
            Ok(())
        }
        Command::Abelianize { kind, n } => {
            let inv = abelianize(&build(kind.into(), n)?);
            println!("free rank: {}", inv.free_rank);
            if inv.torsion.is_empty() {
                println!("torsion: none");
            } else {
                let t: Vec<String> = inv.torsion.iter().map(|x| x.to_string()).collect();
                println!("torsion: {}", t.join(" "));
            }
            println!("group: {inv}");
            Ok(())
        }
        Command::Witness { n, i, j } => witness(n, i, j),
        Command::Derive {
            script,
            n,
            every_step,
            emit,
        } => derive(&script, n, every_step, emit),
        Command::Diagram { n, sets, out } => {
            let disc = ConvexDisc::new(n)?;
            let sets = parse_sets(&sets, disc)?;
            fs::write(&out, diagram::emit_diagram(n, &sets))
                .map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

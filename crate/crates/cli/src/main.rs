use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lexfree::checks::{run_all, Tier};
use lexfree::distinguish::{
    refine_classes, resolve_residual_pairs, verify_short_start_powers, ParamDomain, PositionSet, Template,
    DISTINGUISH_LEN,
};
use lexfree::format::{parse_bfile, parse_plain, render_bfile, render_columns, render_plain};
use lexfree::greedy::{generate, verify_lex_least};
use lexfree::morphic::canonical::{PREFIX_LEN, Z_LEN};
use lexfree::morphic::{CanonicalWords, LetterOracle, PHI};
use lexfree::prepower::{derive_gamma, locates_length, scan_pre_powers};
use lexfree::regularity::bounds::rank_bound_report;
use lexfree::regularity::dimension::kernel_rank;
use lexfree::regularity::five_fourths;
use lexfree::regularity::recurrence::{check_preset, preset, Increment, Recurrence};
use lexfree::word::first_power;
use lexfree::{Error, FracExponent, NatWord};

#[derive(Parser)]
#[command(name = "lexfree", version, about = "Lexicographically least power-free words and their structure")]
struct Cli {
    /// Worker threads for scans and rank computations (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy prefix of the a/b-power-free word.
    Generate {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// The words p, z, s and p tau(phi(s)) of the morphic description.
    Canonical {
        #[arg(long, value_enum)]
        emit: Emit,
        /// Number of letters (default: all of p or z).
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: CanonicalFormat,
    },
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Analyze(Analyze),
    /// Refine factor classes of the symbolic word until they separate.
    Distinguish {
        #[arg(long, value_enum)]
        set: SetArg,
        /// `lo..hi` (inclusive) or a comma list.
        #[arg(long, default_value = "0..4", allow_hyphen_values = true)]
        domain: ParamDomain,
        #[arg(long)]
        stop_at: Option<usize>,
    },
    /// Exact rank of the 6-kernel of w_5/4.
    Rank {
        #[arg(long, default_value_t = 4)]
        emax: u32,
        #[arg(long, default_value_t = 4050)]
        terms: usize,
        /// Use e <= 7, the depth that pins down the full rank.
        #[arg(long)]
        full: bool,
    },
    /// Test a conjectured recurrence on a generated prefix.
    Conjecture {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 300_000)]
        budget: usize,
    },
    #[command(subcommand)]
    Report(Report),
    /// Every acceptance check, with timings.
    RunAll {
        #[arg(long, default_value = "quick")]
        tier: Tier,
    },
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, value_enum, default_value = "plain")]
    format: OutFormat,
    /// Row width for the columns format.
    #[arg(long, default_value_t = 6)]
    columns: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Plain,
    Bfile,
    Columns,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    P,
    Z,
    S,
    Word,
}

#[derive(Clone, Copy, ValueEnum)]
enum CanonicalFormat {
    Plain,
    Bfile,
    Subscripted,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    S1,
    S2,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrePowerInput {
    Z,
    Zphiz,
}

#[derive(Subcommand)]
enum Verify {
    /// The morphic word (or a word from a file) has no 5/4-power.
    Powerfree {
        #[arg(long, default_value_t = PREFIX_LEN)]
        length: usize,
        #[command(flatten)]
        input: WordInput,
    },
    /// No letter of the morphic word (or a file) can be lowered.
    Lexleast {
        #[arg(long, default_value_t = PREFIX_LEN)]
        length: usize,
        #[command(flatten)]
        input: WordInput,
    },
    /// Pre-5/4-power scan of z or z phi(z).
    Prepower {
        #[arg(long, value_enum, default_value = "z")]
        input: PrePowerInput,
        #[arg(long)]
        lmax: Option<usize>,
    },
    /// w(k i + r) = w(i + s) + d(i) for all i <= imax.
    Recurrence {
        /// A named recurrence: cor5over4 or an exponent such as 7/6.
        #[arg(long, conflicts_with_all = ["k", "r", "s", "d"])]
        preset: Option<String>,
        #[arg(long, requires_all = ["r", "s", "d"])]
        k: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        /// Comma-separated period of the increment.
        #[arg(long)]
        d: Option<Increment>,
        #[arg(long)]
        imax: Option<u64>,
        /// Exponent a/b of the word to test (default: the 5/4 word).
        #[arg(long)]
        exponent: Option<String>,
    },
    /// No 5/4-power of block length below 952 starts in p.
    DistinguishShort,
}

#[derive(Args)]
struct WordInput {
    /// Read the word from a file (plain or b-file) instead.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Exponent for file input.
    #[arg(long, default_value = "5/4")]
    exponent: String,
}

#[derive(Subcommand)]
enum Analyze {
    /// Letters whose image would start short 5/4-powers.
    Gamma,
    /// Whether length l locates factors of images.
    Locates {
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum Report {
    /// Upper bounds on the kernel rank.
    Bounds,
}

/// Outcome of a subcommand: verified, or a witness/mismatch was found.
enum Status {
    Ok,
    Witness,
}

fn parse_exponent(s: &str) -> Result<FracExponent, Error> {
    let (a, b) = s.split_once('/').ok_or_else(|| Error::Parse(format!("exponent {s:?} is not a/b")))?;
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
    FracExponent::new(num(a)?, num(b)?)
}

fn read_word(path: &PathBuf) -> Result<NatWord, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let bfile = text.lines().find(|l| !l.trim().is_empty() && !l.starts_with('#'));
    match bfile.map(|l| l.split_whitespace().count()) {
        Some(2) => parse_bfile(&text),
        _ => parse_plain(&text),
    }
}

fn word_for(input: &WordInput, length: usize) -> Result<(NatWord, FracExponent), Error> {
    let e = parse_exponent(&input.exponent)?;
    match &input.file {
        Some(path) => Ok((read_word(path)?, e)),
        None => Ok((CanonicalWords::shared().full_word(length), FracExponent::new(5, 4)?)),
    }
}

fn print_word(w: &[u32], f: &FormatArgs) -> Result<(), Error> {
    let out = match f.format {
        OutFormat::Plain => render_plain(w),
        OutFormat::Bfile => render_bfile(w),
        OutFormat::Columns => render_columns(w, f.columns)?,
    };
    print!("{out}");
    Ok(())
}

fn run(cmd: Command) -> Result<Status, Error> {
    match cmd {
        Command::Generate { a, b, length, format } => {
            print_word(&generate(FracExponent::new(a, b)?, length), &format)?;
        }
        Command::Canonical { emit, length, format } => {
            let words = CanonicalWords::shared();
            let sub = match emit {
                Emit::P => None,
                Emit::Z => Some(words.z[..length.unwrap_or(Z_LEN).min(Z_LEN)].to_vec()),
                Emit::S => Some(words.s_stream(length.unwrap_or(Z_LEN))),
                Emit::Word => None,
            };
            let out = match (sub, format) {
                (Some(s), CanonicalFormat::Bfile) => render_bfile(&s),
                (Some(s), _) => render_plain(&s),
                (None, _) => {
                    let w = match emit {
                        Emit::P => words.p[..length.unwrap_or(words.p.len()).min(words.p.len())].to_vec(),
                        _ => words.full_word(length.unwrap_or(PREFIX_LEN)),
                    };
                    match format {
                        CanonicalFormat::Bfile => render_bfile(&w),
                        _ => render_plain(&w),
                    }
                }
            };
            print!("{out}");
        }
        Command::Verify(v) => return verify(v),
        Command::Analyze(Analyze::Gamma) => {
            let g = derive_gamma()?;
            println!("{g}");
        }
        Command::Analyze(Analyze::Locates { l }) => {
            let found = locates_length(&PHI, l);
            println!("{l} {}", if found { "locates" } else { "does not locate" });
            if !found {
                return Ok(Status::Witness);
            }
        }
        Command::Distinguish { set, domain, stop_at } => {
            let words = CanonicalWords::shared();
            let template = Template::new(words, DISTINGUISH_LEN)?;
            let set = match set {
                SetArg::S1 => PositionSet::S1,
                SetArg::S2 => PositionSet::S2,
            };
            let out = refine_classes(&template, &set.positions(), &domain, stop_at);
            println!("length {}", out.classes.length);
            for class in &out.classes.classes {
                let parts: Vec<String> = class.iter().map(|i| i.to_string()).collect();
                println!("{}", parts.join(","));
            }
            if !out.terminated {
                let resolved = resolve_residual_pairs(&template, words, &out.classes);
                for r in &resolved {
                    eprintln!("pair {:?}: distinct {}", r.pair, r.distinct);
                }
                if resolved.iter().any(|r| !r.distinct) {
                    return Ok(Status::Witness);
                }
            }
        }
        Command::Rank { emax, terms, full } => {
            let emax = if full { 7 } else { emax };
            let r = kernel_rank(&LetterOracle::shared(), &five_fourths(), emax, terms)?;
            println!("sequences {} distinct {} columns {}", r.v_sequences, r.v_distinct, r.columns);
            println!("dim V {}", r.v_dim);
            for (g, inside) in &r.inside_v {
                println!("{g} in V: {inside}");
            }
            for (ix, grew) in &r.added {
                println!("w(6^{} i + {}) adds: {grew}", ix.e, ix.j);
            }
            println!("total {}", r.total);
        }
        Command::Conjecture { name, budget } => {
            let report = check_preset(&preset(&name)?, budget)?;
            match (report.i_max, report.failure) {
                (None, _) => println!("{name}: {budget} letters reach no index"),
                (Some(m), None) => println!("{name}: holds for 0 <= i <= {m}"),
                (Some(_), Some(f)) => {
                    println!("{name}: fails at i = {} ({} != {})", f.i, f.lhs, f.rhs);
                    return Ok(Status::Witness);
                }
            }
        }
        Command::Report(Report::Bounds) => {
            let b = rank_bound_report(&five_fourths())?;
            let g = &b.general;
            println!(
                "general {} = {} kernel + {} periodic + {} one-hot + {} self-similar + {} shifted",
                g.total(),
                g.kernel,
                g.periodic,
                g.one_hot,
                g.self_similar,
                g.shifted
            );
            let r = &b.refined;
            println!(
                "refined {} = {} periodic + {} one-hot + {} self-similar (preperiod limit {}, {} pairs checked)",
                r.total(),
                r.periodic,
                r.one_hot,
                r.self_similar,
                r.preperiod_limit,
                r.checked_pairs
            );
            if r.failure.is_some() {
                return Ok(Status::Witness);
            }
        }
        Command::RunAll { tier } => {
            let reports = run_all(tier, |r| println!("{r}"));
            let failed = reports.iter().filter(|r| !r.outcome.passed).count();
            println!("{} checks, {failed} failed", reports.len());
            if failed > 0 {
                return Ok(Status::Witness);
            }
        }
    }
    Ok(Status::Ok)
}

fn verify(v: Verify) -> Result<Status, Error> {
    let status = |ok: bool| if ok { Status::Ok } else { Status::Witness };
    match v {
        Verify::Powerfree { length, input } => {
            let (w, e) = word_for(&input, length)?;
            match first_power(&w, e) {
                None => println!("{} letters, no {}/{}-power", w.len(), e.a(), e.b()),
                Some(p) => println!("{p}"),
            }
            Ok(status(first_power(&w, e).is_none()))
        }
        Verify::Lexleast { length, input } => {
            let (w, e) = word_for(&input, length)?;
            let found = verify_lex_least(&w, e)?;
            match found {
                None => println!("{} letters, lexicographically least", w.len()),
                Some((i, c)) => println!("position {i} could hold {c}"),
            }
            Ok(status(found.is_none()))
        }
        Verify::Prepower { input, lmax } => {
            let words = CanonicalWords::shared();
            let w = match input {
                PrePowerInput::Z => words.z.clone(),
                PrePowerInput::Zphiz => words.s_stream(7 * Z_LEN),
            };
            let found = scan_pre_powers(&w, lmax);
            for p in &found {
                println!("{p}");
            }
            println!("{} letters, {} pre-powers", w.len(), found.len());
            Ok(status(found.is_empty()))
        }
        Verify::Recurrence { preset: name, k, r, s, d, imax, exponent } => {
            let (rec, e) = match (name.as_deref(), k, r, s, d) {
                (Some("cor5over4"), ..) => (preset("5/4")?.recurrence, None),
                (Some(name), ..) => {
                    let p = preset(name)?;
                    (p.recurrence, Some(p.exponent))
                }
                (None, Some(k), Some(r), Some(s), Some(d)) => {
                    (Recurrence { k, r, s, d }, exponent.as_deref().map(parse_exponent).transpose()?)
                }
                _ => return Err(Error::Parse("give --preset or all of --k --r --s --d".into())),
            };
            let e = e.filter(|e| (e.a(), e.b()) != (5, 4));
            let failure = match e {
                // The 5/4 word is available at any index.
                None => {
                    let i_max = imax.unwrap_or_else(|| rec.max_index(PREFIX_LEN as u64).unwrap_or(0));
                    println!("{rec} on w_5/4 for 0 <= i <= {i_max}");
                    rec.verify(&LetterOracle::shared(), i_max)?
                }
                Some(e) => {
                    let i_max = imax.unwrap_or_else(|| rec.max_index(300_000).unwrap_or(0));
                    let w = generate(e, (rec.k * i_max + rec.r + 1) as usize);
                    println!("{rec} on w_{}/{} for 0 <= i <= {i_max}", e.a(), e.b());
                    rec.verify(&w, i_max)?
                }
            };
            if let Some(f) = failure {
                println!("fails at i = {} ({} != {})", f.i, f.lhs, f.rhs);
            }
            Ok(status(failure.is_none()))
        }
        Verify::DistinguishShort => {
            let found = verify_short_start_powers(CanonicalWords::shared());
            match found {
                None => println!("no short 5/4-power starts in p"),
                Some(w) => println!("{w}"),
            }
            Ok(status(found.is_none()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Witness) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let mismatch = matches!(e, Error::Invariant(_) | Error::NotPowerFree(_) | Error::ColumnMismatch { .. });
            ExitCode::from(if mismatch { 1 } else { 2 })
        }
    }
}

use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqpi::corpus::{self, Corpus, DEFAULT_SEED};
use seqpi::encode::encode_x;
use seqpi::lambda::{encode_lam_to_pi, encode_lam_to_x, infer_lam, parse_lam, LamTerm};
use seqpi::pi::{parse_pi, pi_step, Proc};
use seqpi::pitypes::{explain, parse_pi_context};
use seqpi::suite::{self, Config, Outcome};
use seqpi::xnet::{parse_xnet_with, Net, ParseOptions, Plug};
use seqpi::xrewrite::{apply_redex, find_redexes, strategy_redexes, Strategy};
use seqpi::xtypes::{check_x, infer_x, parse_x_context};
use seqpi::FreshSupply;

#[derive(Parser)]
#[command(name = "seqpi", version, about = "Cut-elimination in X, the pi-calculus with pairing, and the encoding between them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and optionally check it against a context file.
    Check {
        #[arg(long, value_enum)]
        calc: Calc,
        #[arg(long)]
        ctx: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Print the principal typing (x, lam) or check against a context (pi).
    Typecheck {
        #[arg(long, value_enum)]
        calc: Calc,
        #[arg(long)]
        ctx: Option<PathBuf>,
        /// Report the failing constraint.
        #[arg(long)]
        explain: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Print a reduction trace.
    Reduce {
        #[arg(long, value_enum)]
        calc: Calc,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Choose each redex from a numbered list read on standard input.
        #[arg(long)]
        interactive: bool,
        #[arg(long, default_value_t = 2)]
        repl_budget: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Print the image of a term.
    Encode {
        #[arg(long, value_enum)]
        from: Calc,
        #[arg(long, value_enum)]
        to: Calc,
        /// Output plug of a lambda term's image.
        #[arg(long, default_value = "al")]
        plug: String,
        #[command(flatten)]
        input: Input,
    },
    /// Perform one X step and check that the encoding simulates it.
    Simulate {
        #[arg(long, required = true)]
        step: bool,
        /// Index into the list of redexes.
        #[arg(long, default_value_t = 0)]
        redex: usize,
        #[arg(long, default_value_t = 8)]
        search: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Largest replication budget; smaller ones are tried first.
        #[arg(long, default_value_t = 2)]
        repl_budget: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Run the acceptance suite over a corpus.
    CorpusRun {
        /// Corpus directory; the bundled corpus by default.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Regenerate the generated files from SEQPI_SEED: print them, or
        /// write them into --dir before running.
        #[arg(long)]
        regenerate: bool,
        /// Criteria to run, e.g. `--only 1,7`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Print notes as well as failures.
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct Input {
    /// The term; use --file to read it instead.
    term: Option<String>,
    /// Read the term from a file, `-` for standard input.
    #[arg(long, conflicts_with = "term")]
    file: Option<PathBuf>,
    /// Admit the activated cuts cutL(...) and cutR(...) in nets.
    #[arg(long)]
    allow_active: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calc {
    X,
    Pi,
    Lam,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Full,
    Cbn,
    Cbv,
}

enum Failure {
    /// A check came out negative; the report is already printed.
    Check,
    Usage(String),
}

type Done = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

impl Input {
    fn read(&self) -> Result<String, Failure> {
        match (&self.term, &self.file) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(f)) if f.as_os_str() == "-" => io::read_to_string(io::stdin()).map_err(usage),
            (None, Some(f)) => std::fs::read_to_string(f).map_err(|e| usage(format!("{}: {}", f.display(), e))),
            (None, None) => Err(usage("no term given")),
        }
    }

    fn options(&self) -> ParseOptions {
        ParseOptions { allow_active: self.allow_active }
    }
}

fn net(src: &str, opts: ParseOptions) -> Result<Net, Failure> {
    parse_xnet_with(src.trim(), opts).map_err(|e| usage(format!("parse error at {}", e)))
}

fn proc_(src: &str) -> Result<Proc, Failure> {
    parse_pi(src.trim()).map_err(|e| usage(format!("parse error at {}", e)))
}

fn lam(src: &str) -> Result<LamTerm, Failure> {
    parse_lam(src.trim()).map_err(|e| usage(format!("parse error at {}", e)))
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path.display(), e)))
}

fn verdict(w: &mut impl Write, ok: bool, why: Option<String>, explain: bool) -> Done {
    let line = match (ok, why) {
        (true, _) => "yes".to_string(),
        (false, Some(w)) if explain => format!("no: {}", w),
        (false, _) => "no".to_string(),
    };
    writeln!(w, "{}", line).map_err(usage)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cmd: Command, w: &mut impl Write) -> Done {
    match cmd {
        Command::Check { calc, ctx, input } => check(calc, ctx, &input.read()?, input.options(), w),
        Command::Typecheck { calc, ctx, explain, input } => typecheck(calc, ctx, explain, &input.read()?, input.options(), w),
        Command::Reduce { calc, strategy, max_steps, interactive, repl_budget, input } => {
            let src = input.read()?;
            match calc {
                Calc::X => {
                    let strategy = match strategy.unwrap_or(StrategyArg::Full) {
                        StrategyArg::Full => Strategy::Full,
                        StrategyArg::Cbn => Strategy::Cbn,
                        StrategyArg::Cbv => Strategy::Cbv,
                    };
                    reduce_x(&net(&src, input.options())?, strategy, max_steps, interactive, w)
                }
                Calc::Pi => {
                    if matches!(strategy, Some(StrategyArg::Cbn | StrategyArg::Cbv)) {
                        return Err(usage("--strategy cbn and cbv apply to x only"));
                    }
                    reduce_pi(&proc_(&src)?, max_steps, repl_budget, interactive, w)
                }
                Calc::Lam => Err(usage("reduce supports --calc x and pi")),
            }
        }
        Command::Encode { from, to, plug, input } => {
            let src = input.read()?;
            let plug = Plug::from(plug.as_str());
            let image = match (from, to) {
                (Calc::X, Calc::Pi) => encode_x(&net(&src, input.options())?).to_string(),
                (Calc::Lam, Calc::X) => encode_lam_to_x(&lam(&src)?, plug).to_string(),
                (Calc::Lam, Calc::Pi) => encode_lam_to_pi(&lam(&src)?, plug).to_string(),
                _ => return Err(usage("encodings are x -> pi, lam -> x and lam -> pi")),
            };
            writeln!(w, "{}", image).map_err(usage)
        }
        Command::Simulate { step: _, redex, search, depth, repl_budget, input } => {
            let cfg = Config { search, sim_depth: depth, max_budget: repl_budget, ..Config::default() };
            simulate(&net(&input.read()?, input.options())?, redex, &cfg, w)
        }
        Command::CorpusRun { dir, regenerate, only, verbose, timings } => corpus_run(dir, regenerate, &only, verbose, timings, w),
    }
}

fn check(calc: Calc, ctx: Option<PathBuf>, src: &str, opts: ParseOptions, w: &mut impl Write) -> Done {
    match calc {
        Calc::X => {
            let n = net(src, opts)?;
            writeln!(w, "{}", n).map_err(usage)?;
            if let Some(path) = ctx {
                let c = parse_x_context(&read_file(&path)?).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
                return verdict(w, check_x(&n, &c), None, false);
            }
        }
        Calc::Pi => {
            let p = proc_(src)?;
            writeln!(w, "{}", p).map_err(usage)?;
            if let Some(path) = ctx {
                let c = parse_pi_context(&read_file(&path)?).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
                return verdict(w, explain(&p, &c).is_ok(), None, false);
            }
        }
        Calc::Lam => {
            if ctx.is_some() {
                return Err(usage("lambda terms take no context file"));
            }
            writeln!(w, "{}", lam(src)?).map_err(usage)?;
        }
    }
    Ok(())
}

fn typecheck(calc: Calc, ctx: Option<PathBuf>, explain_: bool, src: &str, opts: ParseOptions, w: &mut impl Write) -> Done {
    match calc {
        Calc::X => {
            let n = net(src, opts)?;
            if let Some(path) = ctx {
                let c = parse_x_context(&read_file(&path)?).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
                let why = infer_x(&n).err().map(|e| e.to_string()).or_else(|| Some("not an instance of the principal typing".into()));
                let ok = check_x(&n, &c);
                return verdict(w, ok, why, explain_);
            }
            match infer_x(&n) {
                Ok((c, _)) => writeln!(w, "{}", c).map_err(usage),
                Err(e) => verdict(w, false, Some(e.to_string()), explain_),
            }
        }
        Calc::Lam => {
            if ctx.is_some() {
                return Err(usage("lambda terms take no context file"));
            }
            let m = lam(src)?;
            match infer_lam(&m) {
                Ok((gamma, ty)) => {
                    let g: Vec<String> = gamma.iter().map(|(x, t)| format!("{} : {}", x, t)).collect();
                    let lhs = if g.is_empty() { String::new() } else { format!("{} ", g.join(", ")) };
                    writeln!(w, "{}|- {} : {}", lhs, m, ty).map_err(usage)
                }
                Err(e) => verdict(w, false, Some(format!("untypeable: {}", e)), explain_),
            }
        }
        Calc::Pi => {
            let Some(path) = ctx else { return Err(usage("--calc pi needs --ctx")) };
            let c = parse_pi_context(&read_file(&path)?).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
            let r = explain(&proc_(src)?, &c);
            verdict(w, r.is_ok(), r.err().map(|e| e.to_string()), explain_)
        }
    }
}

/// Reads a choice in `0..n`; `None` on end of input or `q`.
fn prompt(w: &mut impl Write, n: usize) -> Option<usize> {
    let stdin = io::stdin();
    loop {
        let _ = write!(w, "choose 0-{} (q to stop)> ", n - 1);
        let _ = w.flush();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).ok()? == 0 {
            let _ = writeln!(w);
            return None;
        }
        match line.trim() {
            "q" => return None,
            s => match s.parse::<usize>() {
                Ok(k) if k < n => return Some(k),
                _ => {
                    let _ = writeln!(w, "not a choice: {}", s);
                }
            },
        }
    }
}

fn reduce_x(n: &Net, strategy: Strategy, max_steps: usize, interactive: bool, w: &mut impl Write) -> Done {
    writeln!(w, "  {}", n).map_err(usage)?;
    let mut supply = FreshSupply::above(n.all_symbols());
    let mut cur = n.clone();
    for k in 0.. {
        let rs = strategy_redexes(&cur, strategy);
        if rs.is_empty() {
            writeln!(w, "normal form after {} step(s)", k).map_err(usage)?;
            return Ok(());
        }
        if k == max_steps {
            writeln!(w, "step limit of {} reached", max_steps).map_err(usage)?;
            return Err(Failure::Check);
        }
        let choice = if interactive {
            for (i, r) in rs.iter().enumerate() {
                writeln!(w, "[{}] {}", i, r).map_err(usage)?;
            }
            match prompt(w, rs.len()) {
                Some(c) => c,
                None => {
                    writeln!(w, "stopped after {} step(s)", k).map_err(usage)?;
                    return Ok(());
                }
            }
        } else {
            0
        };
        cur = apply_redex(&cur, &rs[choice], &mut supply).map_err(usage)?;
        writeln!(w, "{} => {}", rs[choice], cur).map_err(usage)?;
    }
    unreachable!("the loop returns")
}

fn reduce_pi(p: &Proc, max_steps: usize, budget: usize, interactive: bool, w: &mut impl Write) -> Done {
    let mut cur = seqpi::pi::cnf(p);
    writeln!(w, "STEP 0: {}", cur).map_err(usage)?;
    for k in 1..=max_steps {
        let next = pi_step(&cur, budget);
        if next.is_empty() {
            writeln!(w, "normal form after {} step(s)", k - 1).map_err(usage)?;
            return Ok(());
        }
        let choice = if interactive {
            for (i, q) in next.iter().enumerate() {
                writeln!(w, "[{}] {}", i, q).map_err(usage)?;
            }
            match prompt(w, next.len()) {
                Some(c) => c,
                None => {
                    writeln!(w, "stopped after {} step(s)", k - 1).map_err(usage)?;
                    return Ok(());
                }
            }
        } else {
            0
        };
        cur = next[choice].clone();
        writeln!(w, "STEP {}: {}", k, cur).map_err(usage)?;
    }
    if pi_step(&cur, budget).is_empty() {
        writeln!(w, "normal form after {} step(s)", max_steps).map_err(usage)?;
        return Ok(());
    }
    writeln!(w, "step limit of {} reached", max_steps).map_err(usage)?;
    Err(Failure::Check)
}

fn simulate(n: &Net, index: usize, cfg: &Config, w: &mut impl Write) -> Done {
    let rs = find_redexes(n);
    let Some(r) = rs.get(index) else {
        return Err(usage(format!("redex {} requested, the net has {}", index, rs.len())));
    };
    let reduct = apply_redex(n, r, &mut FreshSupply::above(n.all_symbols())).map_err(usage)?;
    writeln!(w, "REDEX: {}", r).map_err(usage)?;
    writeln!(w, "REDUCT: {}", reduct).map_err(usage)?;
    let target = encode_x(&reduct);
    writeln!(w, "TARGET: {}", target).map_err(usage)?;
    let report = suite::simulate_step(&encode_x(n), &target, cfg);
    write!(w, "{}", report).map_err(usage)?;
    if report.found {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_outcome(w: &mut impl Write, o: &Outcome, verbose: bool, timings: bool) -> io::Result<()> {
    if timings {
        writeln!(w, "{} {:.2}s", o, o.elapsed.as_secs_f64())?;
    } else {
        writeln!(w, "{}", o)?;
    }
    let shown = if verbose { o.failures.len() } else { o.failures.len().min(5) };
    for f in &o.failures[..shown] {
        writeln!(w, "    FAIL {}", f)?;
    }
    if verbose {
        for n in &o.notes {
            writeln!(w, "    {}", n)?;
        }
    }
    Ok(())
}

fn corpus_run(dir: Option<PathBuf>, regenerate: bool, only: &[u8], verbose: bool, timings: bool, w: &mut impl Write) -> Done {
    let seed = corpus::seed_from_env(DEFAULT_SEED);
    if regenerate {
        let nets = corpus::render_generated_nets(seed);
        let lams = corpus::render_generated_lams(seed);
        let Some(d) = &dir else {
            write!(w, "{}{}", nets, lams).map_err(usage)?;
            return Ok(());
        };
        for (file, text) in [("generated.x", &nets), ("generated.lam", &lams)] {
            let path = d.join(file);
            std::fs::write(&path, text).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
            writeln!(w, "wrote {} (seed {})", path.display(), seed).map_err(usage)?;
        }
    }
    let corpus = match &dir {
        Some(d) => Corpus::load_dir(d).map_err(usage)?,
        None => Corpus::bundled(),
    };
    let cfg = Config { seed, ..Config::default() };
    let ids: Vec<u8> = if only.is_empty() { suite::TITLES.iter().map(|t| t.0).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !suite::TITLES.iter().any(|t| t.0 == **id)) {
        return Err(usage(format!("no criterion {}", bad)));
    }
    writeln!(w, "corpus: {} nets, {} lambda terms", corpus.nets.len(), corpus.lams.len()).map_err(usage)?;
    let mut failed = 0;
    for id in ids {
        let o = if id == 10 {
            seqpi_oracles::criterion(&seqpi_oracles::Bounds::default())
        } else {
            suite::run(id, &corpus, &cfg).expect("every other criterion runs in the suite")
        };
        failed += usize::from(!o.passed());
        print_outcome(w, &o, verbose, timings).map_err(usage)?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

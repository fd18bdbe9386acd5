use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use nakcert::derived::{check_window, knit_registry, DerivedContext, DEFAULT_MAX_OBJECTS};
use nakcert::modcat::{ar_quiver, global_dimension};
use nakcert::quiveralg::Algebra;
use nakcert::tilting::{build_certificate, enumerate_d_ct, u_members, Config, DerivedSubcat, ModuleCategory};

/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

const BUILTIN_NAME: &str = "a5rad2.alg";
const BUILTIN: &str = include_str!("../../../algebras/a5rad2.alg");

#[derive(Parser)]
#[command(name = "nakcert", version, about = "Exact computations in mod A and D^b(mod A) for bound quiver algebras")]
struct Cli {
    /// Algebra file; defaults to the bundled A5 modulo paths of length 2
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,

    /// Degree window LO:HI for derived computations
    #[arg(long, global = true, default_value = "-6:6", value_parser = parse_window, allow_hyphen_values = true)]
    window: (i32, i32),

    /// Cluster-tilting parameter
    #[arg(long, global = true, default_value_t = 2)]
    d: usize,

    /// Print progress to stderr
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, global dimension and indecomposables
    Stats,
    /// Auslander-Reiten quiver as DOT
    ArQuiver {
        #[arg(long, value_enum, default_value = "module")]
        level: Level,
        #[arg(long)]
        out: PathBuf,
    },
    /// dim Ext^i between indecomposables, i = 0..gldim
    ExtTable,
    /// All d-cluster-tilting subcategories of mod A
    EnumerateCt,
    /// Indecomposables of D^b(mod A) in the window, as JSON
    DerivedRegistry,
    /// Run every check and write the certificate
    VerifyPaper {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Module,
    Derived,
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got `{s}`"))?;
    let lo = lo.trim().parse::<i32>().map_err(|e| format!("bad LO `{lo}`: {e}"))?;
    let hi = hi.trim().parse::<i32>().map_err(|e| format!("bad HI `{hi}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// An error in the input: exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

fn read_source(cli: &Cli) -> Res<(String, String)> {
    match &cli.algebra {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))?;
            Ok((p.display().to_string(), text))
        }
        None => Ok((BUILTIN_NAME.to_string(), BUILTIN.to_string())),
    }
}

fn load(cli: &Cli) -> Res<Arc<Algebra>> {
    let (name, text) = read_source(cli)?;
    let alg = Algebra::parse(&text).map_err(|e| InputError(format!("{name}: {e}")))?;
    Ok(Arc::new(alg))
}

fn write(path: &Path, content: &str) -> Res<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| InputError(format!("cannot create {}: {e}", dir.display())))?;
        }
    }
    fs::write(path, content).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn log(cli: &Cli, msg: &str) {
    if cli.verbose {
        eprintln!("{msg}");
    }
}

fn stats(cli: &Cli) -> Res<()> {
    let alg = load(cli)?;
    say!("dim: {}", alg.dim());
    say!("gldim: {}", global_dimension(&alg)?);
    match ModuleCategory::new(&alg) {
        Ok(cat) => {
            let names = |v: Vec<usize>| v.iter().map(|&i| cat.label(i).to_string()).collect::<Vec<_>>().join(" ");
            say!("indecomposables: {}", cat.len());
            say!("projectives: {}", names(cat.projectives()));
            say!("injectives: {}", names(cat.injectives()));
        }
        Err(e) => say!("indecomposables: not enumerated ({e})"),
    }
    Ok(())
}

/// `M(A)` when `mod A` has exactly one d-cluster-tilting subcategory.
fn unique_ct(cat: &ModuleCategory, d: usize) -> Option<Vec<usize>> {
    match enumerate_d_ct(cat, d) {
        Ok(list) if list.len() == 1 => Some(list[0].members.iter().copied().collect()),
        _ => None,
    }
}

fn ar(cli: &Cli, level: Level, out: &Path) -> Res<()> {
    let alg = load(cli)?;
    match level {
        Level::Module => {
            let cat = ModuleCategory::new(&alg)?;
            let path = out.join("ar_quiver_module.dot");
            write(&path, &ar_quiver(&cat.indecs).to_dot("ar_quiver"))?;
            say!("{}", path.display());
        }
        Level::Derived => {
            check_window(cli.window, global_dimension(&alg)?)?;
            let ctx = DerivedContext::new(&alg);
            log(cli, "knitting");
            let reg = knit_registry(&ctx, cli.window, DEFAULT_MAX_OBJECTS)?;
            let bold = match ModuleCategory::new(&alg).ok().and_then(|cat| unique_ct(&cat, cli.d).map(|m| (cat, m))) {
                Some((cat, m)) => {
                    let base = m.iter().map(|&i| ctx.stalk(&cat.indecs[i].module, 0)).collect::<Result<Vec<_>, _>>()?;
                    u_members(&reg, &DerivedSubcat::new(cli.d as i32, &base))
                }
                None => vec![false; reg.len()],
            };
            let path = out.join("ar_quiver_derived.dot");
            write(&path, &reg.to_dot(&bold))?;
            say!("{}", path.display());
        }
    }
    Ok(())
}

fn ext_table(cli: &Cli) -> Res<()> {
    let alg = load(cli)?;
    let cat = ModuleCategory::new(&alg)?;
    let width = cat.indecs.iter().map(|x| x.label.chars().count()).max().unwrap_or(0);
    let header: Vec<String> = (0..=cat.gldim).map(|i| format!("Ext^{i}")).collect();
    say!("{:w$}  {:w$}  {}", "X", "Y", header.join(" "), w = width);
    for i in 0..cat.len() {
        for j in 0..cat.len() {
            let row: Vec<String> = (0..=cat.gldim).map(|n| format!("{:>5}", cat.ext(i, j, n))).collect();
            say!("{:w$}  {:w$}  {}", cat.label(i), cat.label(j), row.join(" "), w = width);
        }
    }
    Ok(())
}

fn enumerate(cli: &Cli) -> Res<()> {
    let alg = load(cli)?;
    let cat = ModuleCategory::new(&alg)?;
    let list = enumerate_d_ct(&cat, cli.d)?;
    say!("{} {}-cluster-tilting subcategories", list.len(), cli.d);
    for s in list {
        say!("add({})", s.labels(&cat).join(" ⊕ "));
    }
    Ok(())
}

fn registry(cli: &Cli) -> Res<()> {
    let alg = load(cli)?;
    check_window(cli.window, global_dimension(&alg)?)?;
    let reg = knit_registry(&DerivedContext::new(&alg), cli.window, DEFAULT_MAX_OBJECTS)?;
    say!("{}", serde_json::to_string_pretty(&reg.to_json())?);
    Ok(())
}

/// Exit code 0 on a full pass, 1 on a failed check, 2 on an input error.
fn verify(cli: &Cli, report: Option<&Path>, dot_dir: Option<&Path>) -> Res<ExitCode> {
    let (name, text) = read_source(cli)?;
    if let Ok(alg) = Algebra::parse(&text) {
        check_window(cli.window, global_dimension(&Arc::new(alg))?)?;
    }
    log(cli, "building certificate");
    let config = Config { window: cli.window, d: cli.d, max_objects: DEFAULT_MAX_OBJECTS };
    let run = build_certificate(&name, &text, &config);
    if let Some(path) = report {
        write(path, &run.certificate.to_json())?;
    }
    if let Some(dir) = dot_dir {
        if let Some(dot) = &run.module_dot {
            write(&dir.join("ar_quiver_module.dot"), dot)?;
        }
        if let Some(dot) = &run.derived_dot {
            write(&dir.join("ar_quiver_derived.dot"), dot)?;
        }
    }
    say!("{}", run.certificate.summary().trim_end());
    Ok(if run.input_error {
        ExitCode::from(2)
    } else if run.certificate.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Stats => stats(&cli).map(|_| ExitCode::SUCCESS),
        Command::ArQuiver { level, out } => ar(&cli, *level, out).map(|_| ExitCode::SUCCESS),
        Command::ExtTable => ext_table(&cli).map(|_| ExitCode::SUCCESS),
        Command::EnumerateCt => enumerate(&cli).map(|_| ExitCode::SUCCESS),
        Command::DerivedRegistry => registry(&cli).map(|_| ExitCode::SUCCESS),
        Command::VerifyPaper { report, dot_dir } => verify(&cli, report.as_deref(), dot_dir.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use centra::catalogue::{self, ClassicalKind, GroupDescriptor};
use centra::classify::{self, tables, GroupProfile, Outcome, PropertyReport, Verdict};
use centra::ffield::prime_divisors;
use centra::grpstruct::DEFAULT_CAP;
use centra::modrep::{self, GModule};
use centra::ncgraph;
use centra::{Error, PermGroup, PiSet};

const VECTOR_CAP: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "centra", version, about = "Centraliser solubility checks for finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Are all non-central π-element centralisers soluble?
    Check(CheckArgs),
    /// Non-commuting graph invariants.
    Ncgraph(NcgraphArgs),
    /// Derivations and first cohomology of a shipped presentation.
    H1(H1Args),
    /// Classification table lookups.
    Tables(TablesArgs),
    /// List the built-in groups.
    Catalogue(CatalogueArgs),
    /// Compare checker outcomes with table membership over the catalogue.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Debug)]
struct GroupArg {
    /// Catalogue name (A7, L2(11), M11, ...) or a generator file.
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Comma-separated primes, or `all` for every prime dividing |G|.
    #[arg(long)]
    pi: String,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record elapsed time in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NcgraphArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Also search for a dominating commuting pair.
    #[arg(long)]
    domination: bool,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct H1Args {
    #[command(flatten)]
    group: GroupArg,
    /// `perm`, `deleted`, `trivial` or a module file.
    #[arg(long)]
    module: String,
    #[arg(long)]
    p: u64,
    /// Also count complements by brute force.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = VECTOR_CAP)]
    cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Query {
    Xalt,
    Xclass,
    Psp,
    Xspor,
    #[value(name = "Q", alias = "q")]
    Q,
    Thickness,
    SporDegree,
    ExcDegree,
    Table1,
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_enum)]
    query: Query,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    pi: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// Sporadic name, or the classical family L, U, O or Sp.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct CatalogueArgs {
    #[arg(long)]
    list: bool,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[arg(long)]
    pi: String,
    /// Run every non-empty subset of π.
    #[arg(long)]
    subsets: bool,
    /// Restrict to these catalogue names.
    #[arg(long, value_delimiter = ',')]
    groups: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(anyhow::Error),
    Cap(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        match e.downcast_ref::<Error>() {
            Some(inner) if inner.is_cap() => Failure::Cap(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::from(anyhow::Error::new(e))
    }
}

type Run = std::result::Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            2
        }
        Err(Failure::Cap(e)) => {
            eprintln!("cap exceeded: {e:#}");
            3
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Check(a) => check(a),
        Command::Ncgraph(a) => ncgraph(a),
        Command::H1(a) => h1(a),
        Command::Tables(a) => tables_query(a),
        Command::Catalogue(a) => list_catalogue(a),
        Command::Crosscheck(a) => crosscheck(a),
    }
}

/// Catalogue name first, then a generator file.
fn resolve_group(sel: &str) -> anyhow::Result<(String, PermGroup)> {
    match GroupDescriptor::parse(sel) {
        Ok(d) => Ok((d.name.clone(), d.build()?)),
        Err(e) => {
            let path = Path::new(sel);
            if !path.exists() {
                return Err(e.into());
            }
            let (g, _) = catalogue::load_generator_path(path)?;
            let name = path.file_stem().map_or(sel.to_string(), |s| s.to_string_lossy().into_owned());
            Ok((name, g))
        }
    }
}

fn parse_pi(text: &str, group: Option<&PermGroup>) -> anyhow::Result<PiSet> {
    if text.trim().eq_ignore_ascii_case("all") {
        let g = group.context("`--pi all` needs a group")?;
        let order = g.order_u64().context("group order does not fit in 64 bits")?;
        return Ok(PiSet::new(&prime_divisors(order))?);
    }
    Ok(PiSet::parse(text)?)
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    if let Some(path) = out {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    say(text);
    Ok(())
}

/// Writes to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn emit_report(report: &PropertyReport, out: Option<&Path>) -> anyhow::Result<()> {
    emit(&report.to_canonical_json(), out)
}

fn to_json(v: &impl serde::Serialize) -> String {
    let v = serde_json::to_value(v).expect("serialisable");
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

fn check(a: CheckArgs) -> Run {
    let (name, g) = resolve_group(&a.group.group)?;
    let pi = parse_pi(&a.pi, Some(&g))?;
    let mut report = GroupProfile::new(&name, g, a.cap)?.check(&pi)?;
    report.seed = a.seed;
    if !a.timing {
        report.elapsed_ms = None;
    }
    emit_report(&report, a.out.as_deref())?;
    Ok(match report.outcome {
        Outcome::Holds => 0,
        Outcome::Fails => 1,
        Outcome::Capped => 3,
    })
}

fn ncgraph(a: NcgraphArgs) -> Run {
    let (name, g) = resolve_group(&a.group.group)?;
    let graph = ncgraph::build_ncgraph(&g, a.cap)?;
    let fp = graph.fingerprint(a.seed)?;
    let mut v = serde_json::json!({
        "group": name,
        "order": g.order().to_string(),
        "centre_order": graph.centre_order(),
        "vertices": fp.vertices,
        "degrees": fp.degrees,
        "triangles": fp.triangles,
        "seed": a.seed,
    });
    if a.domination {
        let pair = graph.domination_pair()?;
        v["domination_pair"] = match pair {
            Some((x, y)) => serde_json::json!([x.to_string(), y.to_string()]),
            None => serde_json::Value::Null,
        };
    }
    emit(&to_json(&v), a.out.as_deref())?;
    Ok(0)
}

fn h1(a: H1Args) -> Run {
    let presented = catalogue::shipped_presentation(&a.group.group)?;
    let g = &presented.group;
    let module: GModule = match a.module.as_str() {
        "perm" => modrep::permutation_module(g, a.p)?,
        "deleted" => modrep::deleted_module(g, a.p)?,
        "trivial" => GModule::trivial(g, a.p, 1)?,
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let m = GModule::parse(&text, g)?;
            if u64::from(m.p()) != a.p {
                return Err(Failure::Usage(anyhow::anyhow!("module is over F_{}, not F_{}", m.p(), a.p)));
            }
            m
        }
    };
    let space = modrep::derivation_space(&presented.presentation, &module)?;
    let mut v = serde_json::json!({
        "group": presented.name,
        "module": a.module,
        "p": a.p,
        "dim": module.dim(),
        "dim_z1": space.dim_z1,
        "dim_b1": space.dim_b1,
        "dim_h1": space.dim_h1,
    });
    if a.oracle {
        v["complements"] = modrep::complement_count_oracle(&presented.presentation, &module, a.cap)?.into();
    }
    emit(&to_json(&v), a.out.as_deref())?;
    Ok(0)
}

fn need<T>(v: Option<T>, flag: &str) -> anyhow::Result<T> {
    v.with_context(|| format!("this query needs --{flag}"))
}

fn classical_kind(s: &str) -> anyhow::Result<ClassicalKind> {
    Ok(match s.to_ascii_uppercase().as_str() {
        "L" => ClassicalKind::Linear,
        "U" => ClassicalKind::Unitary,
        "O" => ClassicalKind::Orthogonal,
        "SP" | "PSP" => ClassicalKind::Symplectic,
        _ => anyhow::bail!("unknown classical family {s}"),
    })
}

fn tables_query(a: TablesArgs) -> Run {
    let pi = || -> anyhow::Result<PiSet> { Ok(PiSet::parse(&need(a.pi.clone(), "pi")?)?) };
    let out = match a.query {
        Query::Xalt => match a.n {
            Some(n) => tables::x_alt_membership(n, &pi()?)?.to_string(),
            None => tables::x_alt_bound(&pi()?).to_string(),
        },
        Query::Xclass => {
            let kind = classical_kind(&need(a.name.clone(), "name")?)?;
            tables::x_class_bound(kind, &pi()?).to_string()
        }
        Query::Psp => tables::psp_bound(&pi()?).to_string(),
        Query::Xspor => {
            let name = need(a.name.clone(), "name")?;
            match a.pi {
                Some(_) => tables::x_spor_membership(&name, &pi()?)?.to_string(),
                None => tables::sporadic_pibar(&name)?.to_string(),
            }
        }
        Query::Q => tables::q_in_q(need(a.q, "q")?).to_string(),
        Query::Thickness => tables::thickness_bound(need(a.p, "p")?).to_string(),
        Query::SporDegree => tables::sporadic_alt_degree(&need(a.name.clone(), "name")?)?.to_string(),
        Query::ExcDegree => tables::exceptional_alt_degree(&need(a.name.clone(), "name")?)?.to_string(),
        Query::Table1 => {
            let rows = tables::table1_lookup(&pi()?);
            to_json(&rows).trim_end().to_string()
        }
    };
    say(&format!("{out}\n"));
    Ok(0)
}

fn list_catalogue(a: CatalogueArgs) -> Run {
    if !a.list {
        return Err(Failure::Usage(anyhow::anyhow!("nothing to do; try --list")));
    }
    let mut text = format!("{:<10} {:>12}  {:<6}  identities\n", "name", "order", "simple");
    for d in catalogue::catalogue() {
        let order = d.expected_order.as_ref().map_or("?".to_string(), |o| o.to_string());
        let ids: Vec<String> = d.identities.iter().map(|i| i.to_string()).collect();
        text += &format!("{:<10} {:>12}  {:<6}  {}\n", d.name, order, d.is_simple(), ids.join(", "));
    }
    for p in catalogue::SHIPPED_PRESENTATIONS {
        text += &format!("presentation {p}\n");
    }
    say(&text);
    Ok(0)
}

fn crosscheck(a: CrosscheckArgs) -> Run {
    let pi = PiSet::parse(&a.pi)?;
    let pis = if a.subsets { pi.nonempty_subsets() } else { vec![pi] };
    let groups: Vec<GroupDescriptor> = if a.groups.is_empty() {
        catalogue::catalogue()
    } else {
        a.groups.iter().map(|n| GroupDescriptor::parse(n)).collect::<Result<_, _>>()?
    };
    let report = classify::soundness_crosscheck(&groups, &pis, a.cap)?;
    emit(&report.to_canonical_json(), a.out.as_deref())?;
    let tally = |v: Verdict| report.rows.iter().filter(|r| r.verdict == v).count();
    eprintln!(
        "{} rows: {} consistent, {} vacuous, {} capped, {} violations",
        report.rows.len(),
        tally(Verdict::Consistent),
        tally(Verdict::Vacuous),
        report.capped,
        report.violations
    );
    Ok(if report.violations > 0 {
        1
    } else if report.capped > 0 {
        3
    } else {
        0
    })
}

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pgonal::epi::{
    enumerate_surface_kernel_epis, theta1, theta2, theta3, ConnectorImage, EnumerateOptions,
};
use pgonal::expr::Params;
use pgonal::group::{spherical_name, GroupRecipe, SignedGroup, Target};
use pgonal::ledger::{classify_symmetries, verify_all, verify_case, Budget, ClassSummary, Ledger};
use pgonal::signature::{
    cyclic_p_gonal_signature, parse_signature, real_cyclic_signatures, GeneratorKind,
};
use pgonal::species::{species, verify_theorem2};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Symmetries and automorphism groups of real cyclic p-gonal surfaces.
#[derive(Debug, Parser)]
#[command(name = "pgonal", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for enumeration and ledger runs.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,

    /// Ledger file to use instead of the bundled one.
    #[arg(long, global = true, value_name = "FILE")]
    ledger: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Area of an NEC signature, in units of 2π.
    Area {
        /// e.g. "(0,+,[3,3],{(3,3,3,3)})"
        signature: String,
    },
    /// The cyclic p-gonal signature and the real signatures for (p, g).
    Signatures {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Every surface-kernel epimorphism from a signature onto a group.
    Enumerate {
        signature: String,
        #[command(flatten)]
        group: GroupArgs,
        /// Largest accepted search-space estimate.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Species of θ(c_{1,0}) for one of the explicit constructions.
    Species {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        genus: u32,
        /// Target of theta3.
        #[arg(long, value_enum, default_value_t = TargetArg::D)]
        target: TargetArg,
        /// Image of the connector in theta3: 1, r or r^m.
        #[arg(long, default_value = "1")]
        connector: String,
    },
    /// Conjugacy classes of anticonformal involutions and their normalizers.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Check one ledger case at one parameter tuple.
    Verify {
        #[arg(long)]
        case: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: Option<i64>,
        /// Further parameters (i, j, k, t), repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
        params: Vec<(String, i64)>,
    },
    /// Check every ledger case over a parameter budget.
    VerifyAll {
        /// Primes and largest q, e.g. "p=3,5;q=6".
        #[arg(long, value_parser = parse_budget)]
        budget: Option<Budget>,
    },
    /// Species of every epimorphism onto D_p and C_2p for (p, g) against the allowed set.
    Theorem2 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Debug, clap::Args)]
struct GroupArgs {
    /// dp:P, c2p:P, case:ID[#VARIANT] or a recipe TOML file.
    #[arg(long, value_name = "RECIPE", value_parser = parse_group)]
    group: GroupSpec,
    /// Recipe parameters, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    params: Vec<(String, i64)>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Theta1,
    Theta2,
    Theta3,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    /// D_p
    D,
    /// C_2p
    C,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::D => Target::Dihedral,
            TargetArg::C => Target::Cyclic,
        }
    }
}

#[derive(Debug, Clone)]
enum GroupSpec {
    Target(u32, Target),
    Case { id: String, variant: Option<String> },
    File(PathBuf),
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}` is not NAME=VALUE"))?;
    let k = k.trim();
    if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("bad parameter name `{k}`"));
    }
    let v = v.trim().parse::<i64>().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((k.to_string(), v))
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    let prime = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("`{v}`: {e}"));
    if let Some(v) = s.strip_prefix("dp:") {
        return Ok(GroupSpec::Target(prime(v)?, Target::Dihedral));
    }
    if let Some(v) = s.strip_prefix("c2p:") {
        return Ok(GroupSpec::Target(prime(v)?, Target::Cyclic));
    }
    if let Some(rest) = s.strip_prefix("case:") {
        let (id, variant) = match rest.split_once('#') {
            Some((id, v)) => (id, Some(v.to_string())),
            None => (rest, None),
        };
        if id.is_empty() {
            return Err("empty case id".into());
        }
        return Ok(GroupSpec::Case {
            id: id.to_string(),
            variant,
        });
    }
    Ok(GroupSpec::File(PathBuf::from(s)))
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let mut b = Budget::default();
    for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("`{part}` is not KEY=VALUE"))?;
        match k.trim() {
            "p" => {
                b.primes = v
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|e| format!("`{x}`: {e}")))
                    .collect::<Result<_, _>>()?;
            }
            "q" => b.q_max = v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?,
            other => return Err(format!("unknown budget key `{other}`")),
        }
    }
    Ok(b)
}

/// Text and JSON renderings of one result, plus whether it disagrees with the expectations.
struct Output {
    text: String,
    json: Value,
    disagrees: bool,
}

impl Output {
    fn plain(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            disagrees: false,
        }
    }
}

fn load_ledger(path: &Option<PathBuf>) -> Result<Ledger> {
    Ok(match path {
        Some(p) => Ledger::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => Ledger::bundled()?,
    })
}

fn realize(cli: &Cli, args: &GroupArgs) -> Result<SignedGroup> {
    let params: Params = args.params.iter().cloned().collect();
    Ok(match &args.group {
        GroupSpec::Target(p, t) => SignedGroup::target(*p, *t)?,
        GroupSpec::Case { id, variant } => {
            let ledger = load_ledger(&cli.ledger)?;
            let entry = ledger.entry(id)?;
            entry.realize(&params, variant.as_deref())?
        }
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            GroupRecipe::from_toml(&text)?.realize(&params, name)?
        }
    })
}

fn run(cli: &Cli) -> Result<Output> {
    let jobs = cli.jobs as usize;
    match &cli.command {
        Command::Area { signature } => {
            let sig = parse_signature(signature)?;
            let a = sig.area();
            Ok(Output::plain(
                format!("{a} * 2π\n"),
                json!({ "signature": sig.to_string(), "area": a.to_string() }),
            ))
        }
        Command::Signatures { p, genus } => {
            let cyc = cyclic_p_gonal_signature(*p, *genus)?;
            let real = real_cyclic_signatures(*p, *genus)?;
            let mut text = format!("cyclic p-gonal  {cyc}\n");
            for (s, fam) in &real {
                let _ = writeln!(
                    text,
                    "real            {:<32} {}",
                    s.to_string(),
                    fam.as_str()
                );
            }
            let rows: Vec<Value> = real
                .iter()
                .map(|(s, fam)| json!({ "signature": s.to_string(), "family": fam.as_str() }))
                .collect();
            Ok(Output::plain(
                text,
                json!({ "p": p, "g": genus, "cyclic_p_gonal": cyc.to_string(), "real": rows }),
            ))
        }
        Command::Enumerate {
            signature,
            group,
            budget,
        } => {
            let sig = parse_signature(signature)?;
            let g = Arc::new(realize(cli, group)?);
            let mut opts = EnumerateOptions {
                jobs,
                ..EnumerateOptions::default()
            };
            if let Some(b) = budget {
                opts.budget = *b;
            }
            let epis = enumerate_surface_kernel_epis(&sig, Arc::clone(&g), opts)?;
            let records: Vec<_> = epis.iter().map(|e| e.record()).collect();
            let mut text = String::new();
            for r in &records {
                let _ = writeln!(text, "{r}");
            }
            let _ = writeln!(
                text,
                "{} epimorphisms onto {} of order {}",
                records.len(),
                g.name(),
                g.order()
            );
            Ok(Output::plain(
                text,
                json!({
                    "signature": sig.to_string(),
                    "group": g.name(),
                    "order": g.order(),
                    "count": records.len(),
                    "epis": records,
                }),
            ))
        }
        Command::Species {
            construction,
            p,
            genus,
            target,
            connector,
        } => {
            let epi = match construction {
                Construction::Theta1 => theta1(*p, *genus)?,
                Construction::Theta2 => theta2(*p, *genus)?,
                Construction::Theta3 => theta3(
                    *p,
                    *genus,
                    (*target).into(),
                    ConnectorImage::parse(connector)?,
                )?,
            };
            let sigma = epi
                .image(GeneratorKind::Reflection { cycle: 0, index: 0 })
                .context("signature has no reflection")?;
            let sp = species(&epi, sigma)?;
            Ok(Output::plain(
                format!("{sp}\n"),
                json!({
                    "construction": format!("{construction:?}").to_lowercase(),
                    "p": p,
                    "g": genus,
                    "species": sp.to_string(),
                    "value": sp.value(),
                    "ovals": sp.ovals,
                    "sign": sp.sign.map(|s| s.to_string()),
                    "sigma": epi.target().group().label(sigma),
                    "epi": epi.record(),
                }),
            ))
        }
        Command::Classify { group } => {
            let g = realize(cli, group)?;
            let classes = classify_symmetries(&g)?;
            let rows: Vec<ClassSummary> = classes.iter().map(|c| ClassSummary::of(&g, c)).collect();
            let quotient = g
                .group()
                .quotient(&g.phi_subgroup())
                .ok()
                .and_then(|q| spherical_name(&q))
                .unwrap_or_else(|| "unrecognized".into());
            let mut text = format!(
                "{} of order {}, G/⟨φ⟩ = {quotient}, {} classes\n",
                g.name(),
                g.order(),
                rows.len()
            );
            for c in &rows {
                let _ = writeln!(
                    text,
                    "  {} (size {}, ⟨φ,σ⟩ ≅ {}): N_G(⟨σ⟩) order {} {}, N_G(⟨φ,σ⟩) order {} {}",
                    c.representative,
                    c.size,
                    c.pair_type.label(g.p()),
                    c.n_sigma.order,
                    c.n_sigma.family,
                    c.n_phi_sigma.order,
                    c.n_phi_sigma.family
                );
            }
            Ok(Output::plain(
                text,
                json!({
                    "group": g.name(),
                    "order": g.order(),
                    "quotient": quotient,
                    "classes": rows,
                }),
            ))
        }
        Command::Verify { case, p, q, params } => {
            let ledger = load_ledger(&cli.ledger)?;
            let mut tuple: Params = params.iter().cloned().collect();
            tuple.insert("p".into(), *p);
            if let Some(q) = q {
                tuple.insert("q".into(), *q);
            }
            let report = verify_case(&ledger, case, &tuple)?;
            if let Some(e) = &report.error {
                bail!("case {case}: {e}");
            }
            Ok(Output {
                text: pgonal::ledger::render_case(&report),
                json: serde_json::to_value(&report)?,
                disagrees: !report.all_match(),
            })
        }
        Command::VerifyAll { budget } => {
            let ledger = load_ledger(&cli.ledger)?;
            let report = verify_all(&ledger, &budget.clone().unwrap_or_default(), jobs)?;
            if report.summary.errors > 0 {
                eprint!("{}", report.render_text());
                bail!("{} runs failed", report.summary.errors);
            }
            Ok(Output {
                text: report.render_text(),
                json: serde_json::to_value(&report)?,
                disagrees: report.has_mismatch(),
            })
        }
        Command::Theorem2 { p, genus } => {
            let opts = EnumerateOptions {
                jobs,
                ..EnumerateOptions::default()
            };
            let report = verify_theorem2(*p, *genus, opts)?;
            let findings = report.findings().count();
            Ok(Output {
                text: report.render_text(),
                json: serde_json::to_value(&report)?,
                disagrees: findings > 0,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if out.disagrees {
                ExitCode::from(EXIT_DISAGREE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}

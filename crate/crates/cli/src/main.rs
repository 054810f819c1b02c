mod reproduce;
mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cohowork_core::chern16::{self, MergedClassFunction};
use cohowork_core::cochain::{cohomology_module, cohomology_u1, u1_cost_estimate, Coefficients};
use cohowork_core::constants::Constant;
use cohowork_core::datasets;
use cohowork_core::foxone::{h1, h1_dimensions};
use cohowork_core::groupkit::{images_for, named_group, parse_generators, table as groups, Presentation};
use cohowork_core::repfun::{fixed_points, quotient_module, Functor, MatrixRep};
use cohowork_core::specseq::{kunneth_degree4_z, IntegralCohomology};
use cohowork_core::tdual::{TDualityDatum, UNCHECKED_ASSUMPTION};

use reproduce::{Status, Suite};
use table::{Format, Table};

#[derive(Parser)]
#[command(name = "cohowork", version, about = "Finite-group cohomology workbench")]
struct Cli {
    /// Output format for tabular results.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    /// Time limit for long-running brute-force items; 0 skips them.
    #[arg(long, global = true, default_value_t = 600)]
    budget_seconds: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that generator matrices satisfy every relator of a presentation.
    VerifyPresentation(DataArgs),
    /// First cohomology of a presented group with coefficients in a module built from the generators.
    H1 {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum, default_value = "alt2")]
        module: ModuleKind,
    },
    /// Brute-force cohomology on bar cochains of a named group (e.g. `Z4`, `Z2^2`, `Q16`, `S3 x Z2`).
    Bar {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Trivial coefficients `Z/m`; omit for `U(1)`.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Chern classes of representations of the binary dihedral group of order 16.
    Chern {
        #[command(subcommand)]
        command: ChernCommand,
    },
    /// Duality of extension data `(kappa, alpha, beta)`.
    Tdual {
        #[command(subcommand)]
        command: TdualCommand,
    },
    /// Degree-4 integral cohomology of a product from that of its factors.
    Kunneth {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Also compute the product directly on bar cochains.
        #[arg(long)]
        check: bool,
    },
    /// Recompute the reference values and compare.
    Reproduce {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Args)]
struct DataArgs {
    /// Presentation file (`gens:` line plus `rel:` lines).
    #[arg(long, requires = "generators")]
    presentation: Option<PathBuf>,
    /// Generator matrices (`gen: <name>` blocks).
    #[arg(long, requires = "presentation")]
    generators: Option<PathBuf>,
    /// Bundled data set used when no files are given.
    #[arg(long, value_enum, default_value = "co1")]
    dataset: Bundled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bundled {
    Co1,
    S3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    Natural,
    Trivial,
    Dual,
    Alt2,
    Sym2,
    Alt3,
    /// `Alt2` modulo its invariant vectors.
    QuotientByInvariant,
}

#[derive(Subcommand)]
enum ChernCommand {
    /// Multiplicities of `V0..V6` in a merged character.
    Decompose(CharacterArgs),
    /// `c2` of the representation restricted to the order-16 subgroup, in `Z/16`.
    C2(CharacterArgs),
    /// Divisibility conditions on the multiplicities.
    Divisibility(CharacterArgs),
    /// Total Chern classes of the irreducibles and the derivation steps.
    Constants,
}

#[derive(Args)]
struct CharacterArgs {
    /// Character values on the classes 1A, 2B, 4D, 8F.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "file")]
    traces: Option<Vec<i64>>,
    /// CSV file with columns `class,order,value`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TdualCommand {
    Validate {
        file: PathBuf,
    },
    Dualize {
        file: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_data(args: &DataArgs) -> Result<(Presentation, MatrixRep)> {
    match (&args.presentation, &args.generators) {
        (Some(p), Some(g)) => {
            let pres = Presentation::from_text(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            let gens = parse_generators(&read(g)?).with_context(|| format!("parsing {}", g.display()))?;
            let images = images_for(&pres, gens)?;
            let rep = MatrixRep::from_presentation(pres.clone(), images.images)?;
            Ok((pres, rep))
        }
        _ => Ok(match args.dataset {
            Bundled::Co1 => (datasets::co1_presentation()?, datasets::co1_rep()?),
            Bundled::S3 => (datasets::s3_presentation()?, datasets::s3_rep()?),
        }),
    }
}

fn character(args: &CharacterArgs) -> Result<MergedClassFunction> {
    match (&args.traces, &args.file) {
        (Some(t), None) => match t[..] {
            [a, b, c, d] => Ok(MergedClassFunction::new([a, b, c, d])),
            _ => bail!("--traces needs exactly four values, got {}", t.len()),
        },
        (None, Some(f)) => {
            Ok(MergedClassFunction::from_csv(&read(f)?).with_context(|| format!("parsing {}", f.display()))?)
        }
        _ => bail!("give either --traces a,b,c,d or --file <csv>"),
    }
}

fn print_constants(cs: &[&Constant]) {
    if cs.is_empty() {
        return;
    }
    println!();
    println!("quoted inputs:");
    for c in cs {
        println!("  {} = {} ({})", c.name, c.value_text(), c.source);
    }
}

fn verify_presentation(format: Format, data: &DataArgs) -> Result<ExitCode> {
    let (pres, rep) = load_data(data)?;
    let checks = rep.check_relators()?;
    let mut t = Table::new(&["index", "relator", "holds"]);
    for (i, ok) in checks.iter().enumerate() {
        t.push(vec![i.to_string(), pres.relator_text[i].clone(), ok.to_string()]);
    }
    t.print(format)?;
    let failed = checks.iter().filter(|&&b| !b).count();
    if format == Format::Table {
        println!("{} of {} relators hold", checks.len() - failed, checks.len());
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn module(rep: &MatrixRep, kind: ModuleKind) -> Result<MatrixRep> {
    Ok(match kind {
        ModuleKind::Natural => rep.clone(),
        ModuleKind::Trivial => MatrixRep::trivial(
            match rep.source() {
                cohowork_core::repfun::RepSource::Presentation(p) => p.clone(),
                _ => bail!("trivial module needs a presentation"),
            },
            rep.modulus(),
            1,
        )?,
        ModuleKind::Dual => rep.apply(Functor::Dual)?,
        ModuleKind::Alt2 => rep.alt2()?,
        ModuleKind::Sym2 => rep.sym2()?,
        ModuleKind::Alt3 => rep.alt3()?,
        ModuleKind::QuotientByInvariant => {
            let alt = rep.alt2()?;
            let fix = fixed_points(&alt)?;
            quotient_module(&alt, &fix.to_rows())?
        }
    })
}

fn cmd_h1(format: Format, data: &DataArgs, kind: ModuleKind) -> Result<ExitCode> {
    let (pres, rep) = load_data(data)?;
    let m = module(&rep, kind)?;
    let (z, b) = h1_dimensions(&pres, &m)?;
    let mut t = Table::new(&["module dim", "dim H0", "dim Z1", "dim B1", "H1"]);
    t.push(vec![
        m.dim().to_string(),
        fixed_points(&m)?.rows().to_string(),
        z.to_string(),
        b.to_string(),
        h1(&pres, &m)?.to_string(),
    ]);
    t.print(format)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bar(format: Format, budget: u64, group: &str, degree: usize, modulus: Option<u64>) -> Result<ExitCode> {
    let g = named_group(group)?;
    let (coeff_name, order) = (modulus.map_or("U(1)".to_string(), |m| format!("Z{m}")), g.order());
    let (eq, unknowns, _) = u1_cost_estimate(order, degree);
    let result = reproduce::with_budget(budget, move || match modulus {
        Some(m) => cohomology_module(&g, &Coefficients::trivial(g.order(), m, 1), degree),
        None => cohomology_u1(&g, degree),
    });
    let Some(h) = result else {
        bail!(
            "H^{degree}({group}, {coeff_name}) did not finish within {budget} s ({eq} equations, {unknowns} unknowns)"
        );
    };
    let mut t = Table::new(&["group", "order", "degree", "coefficients", "cohomology"]);
    t.push(vec![
        group.into(),
        order.to_string(),
        degree.to_string(),
        coeff_name,
        h?.to_string(),
    ]);
    t.print(format)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_chern(format: Format, cmd: &ChernCommand) -> Result<ExitCode> {
    let fusion = cohowork_core::constants::lookup("q16_monster_class_fusion")?;
    match cmd {
        ChernCommand::Decompose(args) => {
            let chi = character(args)?;
            let n = chern16::decompose_merged(&chi)?;
            let mut t = Table::new(&["V0", "V1", "V2", "V3", "V4", "V5", "V6"]);
            t.push(n.iter().map(|x| x.to_string()).collect());
            t.print(format)?;
            if format == Format::Table {
                println!("{chi} = {}", chern16::describe(&n));
            }
            print_constants(&[fusion]);
        }
        ChernCommand::C2(args) => {
            let chi = character(args)?;
            let n = chern16::decompose_merged(&chi)?;
            let mut t = Table::new(&["character", "decomposition", "c2 mod 16"]);
            t.push(vec![
                chi.to_string(),
                chern16::describe(&n),
                chern16::c2_restricted(&chi)?.to_string(),
            ]);
            t.print(format)?;
            print_constants(&[fusion, cohowork_core::constants::lookup("mckay_h4_integral")?]);
        }
        ChernCommand::Divisibility(args) => {
            let chi = character(args)?;
            let r = chern16::verify_monster_divisibility(&chi)?;
            let mut t = Table::new(&["condition", "holds"]);
            t.push(vec!["n4 = 0 mod 8".into(), r.n4_div_8.to_string()]);
            t.push(vec!["n5 = n6 = 0 mod 16".into(), r.n5_eq_n6_div_16.to_string()]);
            t.push(vec!["n2 = n3".into(), r.n2_eq_n3.to_string()]);
            t.print(format)?;
            print_constants(&[fusion]);
            return Ok(if r.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
        ChernCommand::Constants => {
            let k = chern16::chern_constants()?;
            let mut t = Table::new(&["irrep", "total Chern class"]);
            for (i, c) in k.total.iter().enumerate() {
                t.push(vec![format!("V{i}"), c.to_string()]);
            }
            t.print(format)?;
            if format == Format::Table {
                println!();
                for s in &k.steps {
                    println!("  {s}");
                }
            }
            print_constants(&[cohowork_core::constants::lookup("mckay_h4_integral")?]);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tdual(cmd: &TdualCommand) -> Result<ExitCode> {
    let (TdualCommand::Validate { file } | TdualCommand::Dualize { file, .. }) = cmd;
    let d = TDualityDatum::from_text(&read(file)?).with_context(|| format!("parsing {}", file.display()))?;
    if let Some(v) = d.validate()? {
        println!("invalid: {v}");
        return Ok(ExitCode::FAILURE);
    }
    match cmd {
        TdualCommand::Validate { .. } => {
            println!("valid");
            println!(
                "total group order {}, dual total group order {}",
                d.total_group()?.order(),
                d.dual_total_group()?.order()
            );
            println!("assumed, not checked: {UNCHECKED_ASSUMPTION}");
        }
        TdualCommand::Dualize { output, .. } => {
            let text = d.dualize()?.to_text();
            match output {
                Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kunneth(format: Format, budget: u64, left: &str, right: &str, check: bool) -> Result<ExitCode> {
    let (a, b) = (named_group(left)?, named_group(right)?);
    let (ha, hb) = (IntegralCohomology::from_table(&a)?, IntegralCohomology::from_table(&b)?);
    let predicted = kunneth_degree4_z(&ha, &hb);
    let mut t = Table::new(&["group", "H1", "H2", "H3", "H4"]);
    for (name, h) in [(left, &ha), (right, &hb)] {
        let mut row = vec![name.to_string()];
        row.extend(h.degrees.iter().map(|g| g.to_string()));
        t.push(row);
    }
    let mut row = vec![format!("{left} x {right}"), String::new(), String::new(), String::new()];
    row.push(predicted.to_string());
    t.push(row);
    t.print(format)?;
    if check {
        let prod = groups::direct_product(&a, &b)?;
        let Some(brute) = reproduce::with_budget(budget, move || cohomology_u1(&prod, 3)) else {
            bail!("bar-cochain check did not finish within {budget} s");
        };
        let brute = brute?;
        println!("bar cochains: H3({left} x {right}, U(1)) = {brute}");
        if brute != predicted {
            println!("MISMATCH");
            return Ok(ExitCode::FAILURE);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(format: Format, budget: u64, suite: Suite) -> Result<ExitCode> {
    let reports = reproduce::run(suite, budget)?;
    reproduce::to_table(&reports).print(format)?;
    let rows = reports.iter().flat_map(|r| &r.rows);
    let mismatches = rows.clone().filter(|r| r.status == Status::Mismatch).count();
    let skipped = rows.filter(|r| r.status == Status::Skipped).count();
    if format == Format::Table {
        print_constants(&reproduce::cited_constants(&reports));
        println!();
        println!("{mismatches} mismatches, {skipped} skipped");
    }
    Ok(if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (format, budget) = (cli.format, cli.budget_seconds);
    match &cli.command {
        Command::VerifyPresentation(data) => verify_presentation(format, data),
        Command::H1 { data, module } => cmd_h1(format, data, *module),
        Command::Bar { group, degree, modulus } => cmd_bar(format, budget, group, *degree, *modulus),
        Command::Chern { command } => cmd_chern(format, command),
        Command::Tdual { command } => cmd_tdual(command),
        Command::Kunneth { left, right, check } => cmd_kunneth(format, budget, left, right, *check),
        Command::Reproduce { suite } => cmd_reproduce(format, budget, *suite),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

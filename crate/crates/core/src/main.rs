//! Command-line front end: site classification, interpolation bases,
//! Groebner bases of vanishing ideals, degree-reducing interpolation, and
//! the bm/tbm benchmark.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tower_interp::bases;
use tower_interp::engine::{self, BasisTriple};
use tower_interp::harness::{self, BenchConfig};
use tower_interp::io as fmt_io;
use tower_interp::solver::{self, InterpolationProblem};
use tower_interp::sites::Site;
use tower_interp::{Error, FieldContext, Result, TermOrder};

#[derive(Parser)]
#[command(
    name = "tower-interp",
    version,
    about = "Vanishing ideals and degree-reducing interpolation on planar sites"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Inlex,
    Tdlex,
    Tdinlex,
}

impl From<OrderArg> for TermOrder {
    fn from(o: OrderArg) -> TermOrder {
        match o {
            OrderArg::Lex => TermOrder::Lex,
            OrderArg::Inlex => TermOrder::Inlex,
            OrderArg::Tdlex => TermOrder::Tdlex,
            OrderArg::Tdinlex => TermOrder::Tdinlex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bm,
    Tbm,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    ClosedForm,
    Bm,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a planar site: covering lines, lower/tower predicates
    Classify {
        /// Site CSV, one node per line, optional `# field:` header
        #[arg(long)]
        input: PathBuf,
        /// Coefficient field: a prime modulus or `Q` (overrides the header)
        #[arg(long)]
        field: Option<String>,
    },
    /// Print the closed-form interpolation bases for a site
    Bases {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = OrderArg::Tdlex)]
        order: OrderArg,
        /// On non-tower sites, fall back to the discovered bases
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute the reduced Groebner basis, escalier, and Newton basis
    Groebner {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = OrderArg::Tdlex)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t = AlgoArg::Bm)]
        algo: AlgoArg,
        /// Allow the fast path on arbitrary planar sites (lex/inlex only)
        #[arg(long)]
        any_site: bool,
        /// Re-verify the output against the full contract
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Interpolate prescribed values with the degree-minimal polynomial
    Interpolate {
        #[arg(long)]
        input: PathBuf,
        /// Value CSV: one value per site line, or x,y,f rows in any order
        #[arg(long)]
        values: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = OrderArg::Tdlex)]
        order: OrderArg,
        #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
        method: MethodArg,
        #[arg(long)]
        json: bool,
    },
    /// Time bm against tbm on seeded random tower sites
    Bench {
        /// Comma-separated site sizes
        #[arg(long, value_delimiter = ',', default_values_t = [100u64, 300, 500, 900, 1300])]
        sizes: Vec<u64>,
        /// Prime modulus of the coefficient field
        #[arg(long, default_value = "65521")]
        field: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Tdlex)]
        order: OrderArg,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn load_site(input: &PathBuf, field: &Option<String>) -> Result<Site> {
    let text = fs::read_to_string(input)?;
    let ctx = field
        .as_deref()
        .map(fmt_io::parse_field_spec)
        .transpose()?;
    fmt_io::parse_site(&text, ctx)
}

fn field_name(ctx: FieldContext) -> String {
    match ctx.modulus() {
        Some(q) => q.to_string(),
        None => "Q".to_string(),
    }
}

fn run_classify(input: PathBuf, field: Option<String>) -> Result<()> {
    let site = load_site(&input, &field)?;
    let analysis = site.analyze()?;
    let (lower, lower_witness) = site.is_lower()?;
    let (xt, xt_witness) = site.is_x_tower()?;
    let (yt, yt_witness) = site.is_y_tower()?;
    let lines = |ls: &[tower_interp::sites::CoveringLine]| -> Vec<serde_json::Value> {
        ls.iter()
            .map(|l| {
                json!({
                    "coordinate": l.coordinate.to_string(),
                    "members": l.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect()
    };
    let report = json!({
        "mu": site.len(),
        "field": field_name(site.context()),
        "rows": lines(&analysis.rows),
        "columns": lines(&analysis.columns),
        "s_x_row_form": site.lower_set_x()?.row_form(),
        "s_y_column_form": site.lower_set_y()?.column_form(),
        "is_lower": {"value": lower, "witness": lower_witness},
        "is_x_tower": {"value": xt, "witness": xt_witness},
        "is_y_tower": {"value": yt, "witness": yt_witness},
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("valid json"));
    Ok(())
}

fn run_bases(
    input: PathBuf,
    field: Option<String>,
    order: TermOrder,
    force: bool,
    json: bool,
) -> Result<()> {
    let site = load_site(&input, &field)?;
    // closed forms when applicable, the discovered bases behind --force
    let (escalier, newton, nodes, via): (Vec<_>, Vec<_>, Vec<_>, &str) =
        match (bases::drimb(&site, order), bases::drinb(&site, order)) {
            (Ok(mb), Ok(nb)) => {
                let mut newton = Vec::with_capacity(nb.entries.len());
                let mut nodes = Vec::with_capacity(nb.entries.len());
                for e in nb.entries {
                    newton.push(e.poly);
                    nodes.push(e.node);
                }
                (mb.monomials().to_vec(), newton, nodes, "closed-form")
            }
            (Err(Error::NotTower(w)), _) | (_, Err(Error::NotTower(w))) if force => {
                eprintln!("note: {w}; falling back to the discovered bases");
                let t = engine::bm(&site, order)?;
                (t.escalier, t.newton, t.newton_nodes, "discovered")
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
    if json {
        let report = json!({
            "order": order.name(),
            "field": field_name(site.context()),
            "mu": site.len(),
            "via": via,
            "monomial_basis": escalier.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "newton_basis": newton
                .iter()
                .zip(&nodes)
                .map(|(p, n)| json!({"node": n.to_string(), "poly": p.to_json(order)}))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("valid json"));
    } else {
        println!("order: {}", order.name());
        println!("field: {}", field_name(site.context()));
        println!("mu: {}", site.len());
        println!("via: {via}");
        let ms: Vec<String> = escalier.iter().map(|m| m.to_string()).collect();
        println!("N: {}", ms.join(", "));
        for (k, (p, n)) in newton.iter().zip(&nodes).enumerate() {
            println!("Q[{k}] @ {n}: {}", p.render(order));
        }
    }
    Ok(())
}

fn print_triple(site: &Site, order: TermOrder, triple: &BasisTriple, json: bool) -> Result<()> {
    if json {
        let report = json!({
            "order": order.name(),
            "field": field_name(site.context()),
            "mu": site.len(),
            "groebner": triple
                .groebner
                .iter()
                .map(|g| g.to_json(order))
                .collect::<Vec<_>>(),
            "escalier": triple.escalier.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "newton": triple
                .newton
                .iter()
                .zip(&triple.newton_nodes)
                .map(|(p, n)| json!({"node": n.to_string(), "poly": p.to_json(order)}))
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("valid json"));
    } else {
        println!("order: {}", order.name());
        println!("field: {}", field_name(site.context()));
        println!("mu: {}", site.len());
        for (k, g) in triple.groebner.iter().enumerate() {
            println!("G[{k}]: {}", g.render(order));
        }
        let ms: Vec<String> = triple.escalier.iter().map(|m| m.to_string()).collect();
        println!("N: {}", ms.join(", "));
        for (k, (p, n)) in triple.newton.iter().zip(&triple.newton_nodes).enumerate() {
            println!("Q[{k}] @ {n}: {}", p.render(order));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_groebner(
    input: PathBuf,
    field: Option<String>,
    order: TermOrder,
    algo: AlgoArg,
    any_site: bool,
    verify: bool,
    json: bool,
) -> Result<()> {
    let site = load_site(&input, &field)?;
    let triple = match algo {
        AlgoArg::Bm => engine::bm(&site, order)?,
        AlgoArg::Tbm if any_site => engine::tbm_any_site(&site, order)?,
        AlgoArg::Tbm => engine::tbm(&site, order)?,
    };
    print_triple(&site, order, &triple, json)?;
    if verify {
        let report = engine::verify_triple(&site, order, &triple)?;
        for c in &report.checks {
            println!(
                "verify {}: {} ({})",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.detail
            );
        }
        if !report.all_pass() {
            return Err(Error::InternalDisagreement(
                "verification failed; see the report above".to_string(),
            ));
        }
    }
    Ok(())
}

fn run_interpolate(
    input: PathBuf,
    values: PathBuf,
    field: Option<String>,
    order: TermOrder,
    method: MethodArg,
    json: bool,
) -> Result<()> {
    let site = load_site(&input, &field)?;
    let value_text = fs::read_to_string(&values)?;
    let vals = fmt_io::parse_values(&value_text, &site)?;
    let problem = InterpolationProblem::new(site.clone(), vals)?;
    let method = match method {
        MethodArg::ClosedForm => solver::Method::ClosedForm,
        MethodArg::Bm => solver::Method::Bm,
    };
    let p = solver::interpolate(&problem, order, method)?;
    if json {
        let report = json!({
            "order": order.name(),
            "field": field_name(site.context()),
            "interpolant": p.to_json(order),
            "rendered": p.render(order),
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("valid json"));
    } else {
        println!("{}", p.render(order));
    }
    Ok(())
}

fn run_bench(
    sizes: Vec<u64>,
    field: String,
    order: TermOrder,
    trials: usize,
    seed: u64,
    out: Option<PathBuf>,
    json: bool,
) -> Result<()> {
    let ctx = fmt_io::parse_field_spec(&field)?;
    let Some(q) = ctx.modulus() else {
        return Err(Error::PreconditionUnmet(
            "the benchmark samples tower sites over a prime field; pass --field with a prime"
                .to_string(),
        ));
    };
    let bound = q * (q + 1) / 2;
    let (feasible, dropped): (Vec<u64>, Vec<u64>) = sizes.iter().partition(|&&s| s <= bound);
    if !dropped.is_empty() {
        eprintln!(
            "note: the maximal tower over F_{q} has {bound} nodes (strictly decreasing rows); \
             skipping sizes {dropped:?}"
        );
    }
    if feasible.is_empty() {
        return Err(Error::TargetTooLarge {
            target: *sizes.iter().max().unwrap_or(&0),
            bound,
            q,
        });
    }
    let cfg = BenchConfig {
        sizes: feasible,
        q,
        order,
        trials,
        seed,
    };
    let rows = harness::run_bench(&cfg)?;
    let rendered = if json {
        serde_json::to_string_pretty(&rows).expect("valid json")
    } else {
        harness::rows_to_csv(&rows)
    };
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Classify { input, field } => run_classify(input, field),
        Cmd::Bases {
            input,
            field,
            order,
            force,
            json,
        } => run_bases(input, field, order.into(), force, json),
        Cmd::Groebner {
            input,
            field,
            order,
            algo,
            any_site,
            verify,
            json,
        } => run_groebner(input, field, order.into(), algo, any_site, verify, json),
        Cmd::Interpolate {
            input,
            values,
            field,
            order,
            method,
            json,
        } => run_interpolate(input, values, field, order.into(), method, json),
        Cmd::Bench {
            sizes,
            field,
            order,
            trials,
            seed,
            out,
            json,
        } => run_bench(sizes, field, order.into(), trials, seed, out, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

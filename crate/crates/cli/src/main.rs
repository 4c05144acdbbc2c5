//! `kronmod`: JSON front end for computations on the (2,3) Kronecker moduli space.
//!
//! Exit codes: 0 on success, 1 when a certificate or identity check fails,
//! 2 on malformed input.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kronmod::bundle::BundleExpr;
use kronmod::chow::{ch_of, chi, ChowElement};
use kronmod::collection::{builtin, check_ch_identities, mutation_ledger_check, verify_collection, CollectionSpec};
use kronmod::quiver::{enumerate_hn_types, parse_int_list, DimVector, Quiver, StabilityParameter};
use kronmod::rational::render;
use kronmod::rep::{commutes, is_stable, minors, syzygies, to_sl3_plane, LinearFormMatrix};
use kronmod::strata::{teleman_certify, ModuliContext, StratumData};

#[derive(Parser)]
#[command(name = "kronmod", version, about = "Exact computations on moduli of 3-Kronecker representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
}

#[derive(Args)]
struct ModuliArgs {
    /// `kronecker:m` or a JSON quiver `{"vertices": n, "arrows": [[tail, head], ...]}`.
    #[arg(long, default_value = "kronecker:3")]
    quiver: String,
    #[arg(long, default_value = "2,3")]
    dim: String,
    #[arg(long, default_value = "3,-2", allow_hyphen_values = true)]
    theta: String,
    #[arg(long, default_value = "1,-1", allow_hyphen_values = true)]
    twist: String,
}

impl ModuliArgs {
    fn context(&self) -> Result<ModuliContext> {
        let quiver = Quiver::parse(&self.quiver).context("--quiver")?;
        let d = DimVector::parse(&self.dim).context("--dim")?;
        let theta = parse_int_list(&self.theta).context("--theta")?;
        let twist = parse_int_list(&self.twist).context("--twist")?;
        Ok(ModuliContext { quiver, d, stability: StabilityParameter::new(theta, twist) })
    }
}

#[derive(Args)]
struct ExprArg {
    /// Bundle expression, e.g. `tensor(dual(U2),twist(U1,1))`.
    #[arg(long)]
    expr: String,
}

impl ExprArg {
    fn bundle(&self) -> Result<BundleExpr> {
        BundleExpr::parse(&self.expr).with_context(|| format!("--expr {:?}", self.expr))
    }
}

#[derive(Args)]
struct MatrixArg {
    /// Two rows of three linear forms, e.g. `x,y,0;0,y,z`.
    #[arg(long)]
    matrix: String,
}

impl MatrixArg {
    fn parse(&self) -> Result<LinearFormMatrix> {
        LinearFormMatrix::parse(&self.matrix).with_context(|| format!("--matrix {:?}", self.matrix))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Harder-Narasimhan types with the weight data of each unstable stratum.
    HnTypes(ModuliArgs),
    /// Teleman vanishing certificate for a bundle expression.
    Teleman {
        #[command(flatten)]
        expr: ExprArg,
        #[command(flatten)]
        moduli: ModuliArgs,
    },
    /// Euler characteristic by Hirzebruch-Riemann-Roch.
    Chi(ExprArg),
    /// Chern character in the Chow basis.
    Ch(ExprArg),
    /// Evaluate a polynomial in c1, c2, d2, c3 in the Chow ring.
    ChowEval(ExprArg),
    /// Stability of a 2x3 matrix of linear forms via its maximal minors.
    Stability(MatrixArg),
    /// Syzygy pair of a matrix and its image in sl3.
    Syzygies(MatrixArg),
    /// Pairwise certification of a collection given as JSON.
    VerifyCollection {
        /// Collection file `{"objects": [{"label": ..., "expr": ...}]}`.
        #[arg(long, required_unless_present = "builtin", conflicts_with = "builtin")]
        file: Option<PathBuf>,
        /// Built-in collection: 1exc, 2exc-a, 2exc-b, 2exc-c, 3exc-a, 3exc-b, 4exc, 5exc.
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Chern character identities and the mutation ledger.
    LedgerCheck,
}

/// JSON document and whether every check it reports succeeded.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Self { value, ok: true }
    }
}

fn run(command: &Command) -> Result<Outcome> {
    Ok(match command {
        Command::HnTypes(args) => Outcome::ok(hn_types(&args.context()?)?),
        Command::Teleman { expr, moduli } => {
            let report = teleman_certify(&expr.bundle()?, &moduli.context()?)?;
            Outcome { ok: report.pass, value: report.to_json() }
        }
        Command::Chi(e) => Outcome::ok(json!({"chi": chi(&e.bundle()?)?})),
        Command::Ch(e) => {
            let b = e.bundle()?;
            Outcome::ok(json!({"expr": b.to_string(), "rank": b.rank()?, "ch": ch_of(&b)?.to_json()}))
        }
        Command::ChowEval(e) => {
            let x = ChowElement::parse(&e.expr).with_context(|| format!("--expr {:?}", e.expr))?;
            Outcome::ok(json!({"class": x.to_json(), "text": x.to_string(), "integral": render(&x.integral())}))
        }
        Command::Stability(m) => {
            let r = m.parse()?;
            let abelian = to_sl3_plane(&r).map(|p| is_stable(&r) && commutes(&p)).unwrap_or(false);
            Outcome::ok(json!({
                "stable": is_stable(&r),
                "minors": minors(&r).0.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "abelian_plane": abelian,
            }))
        }
        Command::Syzygies(m) => {
            let r = m.parse()?;
            let pair = syzygies(&r);
            let plane = to_sl3_plane(&r).ok();
            Outcome::ok(json!({
                "stable": is_stable(&r),
                "degenerate": pair.degenerate,
                "tensors": pair.tensors.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "in_kernel": pair.tensors.iter().all(|t| t.in_kernel()),
                "sl3_plane": plane.as_ref().map(|p| p.iter().map(|s| s.rows_rendered()).collect::<Vec<_>>()),
                "commuting": plane.as_ref().map(commutes),
            }))
        }
        Command::VerifyCollection { file, builtin: name } => {
            let spec = match (file, name) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    CollectionSpec::from_json(&text)?
                }
                (None, Some(name)) => builtin(name)?,
                (None, None) => anyhow::bail!("--file or --builtin is required"),
            };
            let m = verify_collection(&spec)?;
            Outcome { ok: m.chi_consistent(), value: m.to_json() }
        }
        Command::LedgerCheck => {
            let identities = check_ch_identities()?;
            let ledger = mutation_ledger_check()?;
            Outcome {
                ok: identities.pass() && ledger.pass(),
                value: json!({"identities": identities.to_json(), "ledger": ledger.to_json()}),
            }
        }
    })
}

fn hn_types(ctx: &ModuliContext) -> Result<Value> {
    let types = enumerate_hn_types(&ctx.quiver, &ctx.d, &ctx.stability)?;
    let mut out = Vec::with_capacity(types.len());
    for t in types {
        let label = t.to_string();
        if t.is_trivial() {
            out.push(json!({"hn_type": label, "parts": t, "semistable": true, "eta": null, "codim": 0}));
            continue;
        }
        let s = StratumData::new(ctx, t.clone())?;
        let weights: Vec<Vec<i64>> = (0..ctx.d.len()).map(|i| s.one_ps.expanded(i)).collect();
        out.push(json!({
            "hn_type": label,
            "parts": t,
            "semistable": false,
            "one_ps": weights,
            "universal_weights": s.universal_weights(&ctx.stability.twist),
            "eta": s.eta,
            "shift": s.shift,
            "codim": s.codim,
        }));
    }
    Ok(Value::Array(out))
}

fn print(value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout(), "{}", text.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            print(&outcome.value, cli.pretty);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            print(&json!({"error": format!("{e:#}")}), cli.pretty);
            ExitCode::from(2)
        }
    }
}

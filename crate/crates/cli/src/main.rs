use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use serde_json::{json, Value};

use moore::fp_group::FiniteGroup;
use moore::homotopy::{self, HomotopyResult};
use moore::peiffer::expand::{format_latex, format_text, to_json as expansion_json};
use moore::peiffer::rewrite::random_degeneracy_word;
use moore::peiffer::{crossed_complex_check, expand, standard_form, theorem_a_check, ArgumentSource, DegeneracyWord};
use moore::simplex_maps::{enumerate_p, enumerate_s, SurjTuple};
use moore::simplicial::select::resolve_group;
use moore::simplicial::{validate, ModelKind, ModelSpec, SimplicialGroup};
use moore::{with_model, Bounds, Error, Exec};

const EXIT_FAILED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "moore", version, about = "Moore complexes, Peiffer pairings and homotopy of simplicial groups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration bound; overrides MOORE_MAX_ELEMENTS.
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Run every check on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// The ordered set S(n).
    Sposet {
        #[arg(long)]
        n: usize,
    },
    /// The pairs indexing the pairings in dimension n.
    Pairs {
        #[arg(long)]
        n: usize,
    },
    #[command(subcommand)]
    Peiffer(PeifferCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Homotopy groups of a finite model or of the smash model.
    Homotopy {
        /// `kind:group`, or `carlsson` together with `--pi`.
        #[arg(long)]
        model: String,
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        degree: usize,
        /// Syllable bound for the smash-model pipeline.
        #[arg(long, default_value_t = 1)]
        bound: usize,
    },
    /// The nonabelian tensor square and J_2.
    Tensor {
        #[arg(long)]
        pi: String,
    },
}

#[derive(Subcommand)]
enum PeifferCommand {
    /// Symbolic commutator expansion of every pairing in dimension n.
    Expand {
        #[arg(long)]
        n: usize,
    },
    /// Standard form of a product of degenerate elements.
    Certify {
        #[arg(long)]
        model: ModelSpec,
        #[arg(long)]
        n: usize,
        /// For example `s0(213,231) * s1(123,213)`.
        #[arg(long, conflicts_with = "random")]
        word: Option<String>,
        /// Length of a random word to certify instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// NG_n ∩ D_n = N_n ∩ D_n by enumeration.
    TheoremA {
        #[arg(long)]
        model: ModelSpec,
        #[arg(long)]
        n: usize,
    },
    /// The simplicial identities.
    Simplicial {
        #[arg(long)]
        model: ModelSpec,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Whether the Moore complex is a crossed complex.
    CrossedComplex {
        #[arg(long)]
        model: ModelSpec,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
}

enum Outcome {
    Ok,
    Failed,
    Undecided,
}

struct Ctx {
    format: Format,
    bounds: Bounds,
    exec: Exec,
}

impl Ctx {
    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        match self.format {
            Format::Json => {
                let mut v = value();
                if let Value::Object(map) = &mut v {
                    map.insert("schema".into(), json!(1));
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            _ => println!("{}", text()),
        }
    }

    fn no_latex(&self, what: &str) -> anyhow::Result<()> {
        if self.format == Format::Latex {
            return Err(Error::Unsupported(format!("latex output is not available for {what}")).into());
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    let mut bounds = Bounds::from_env();
    if let Some(m) = cli.max_elements {
        bounds = bounds.with_max_elements(m);
    }
    let ctx = Ctx {
        format: if cli.json { Format::Json } else { cli.format },
        bounds,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    match run(&ctx, cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(EXIT_FAILED),
        Ok(Outcome::Undecided) => ExitCode::from(EXIT_UNDECIDED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Undecided { .. } | Error::Resource { .. }) => EXIT_UNDECIDED,
        Some(
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::Unsupported(_)
            | Error::OutOfRange { .. }
            | Error::Dimension(..)
            | Error::NotInMoore { .. },
        ) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn run(ctx: &Ctx, command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Sposet { n } => sposet(ctx, n),
        Command::Pairs { n } => pairs(ctx, n),
        Command::Peiffer(PeifferCommand::Expand { n }) => peiffer_expand(ctx, n),
        Command::Peiffer(PeifferCommand::Certify { model, n, word, random, seed }) => {
            ctx.no_latex("certificates")?;
            let any = model.build(n, ctx.bounds)?;
            with_model!(&any, |m| certify(ctx, m, n, word.as_deref(), random, seed))
        }
        Command::Verify(VerifyCommand::TheoremA { model, n }) => {
            ctx.no_latex("verification reports")?;
            let any = model.build(n, ctx.bounds)?;
            with_model!(&any, |m| verify_theorem_a(ctx, m, n))
        }
        Command::Verify(VerifyCommand::Simplicial { model, nmax, samples, seed }) => {
            ctx.no_latex("verification reports")?;
            let any = model.build(nmax, ctx.bounds)?;
            let report = with_model!(&any, |m| validate(m, nmax, samples, seed, ctx.exec))?;
            ctx.emit(
                || {
                    let mut s = format!(
                        "{}: {} checks, exhaustive on levels {:?}, {} violations",
                        report.model, report.checks, report.exhaustive_levels, report.violation_count
                    );
                    for v in &report.violations {
                        s.push_str(&format!("\n  {} at level {} (i={}, j={}): {}", v.identity, v.level, v.i, v.j, v.witness));
                    }
                    s
                },
                || serde_json::to_value(&report).expect("serializable"),
            );
            Ok(if report.ok() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Verify(VerifyCommand::CrossedComplex { model, nmax }) => {
            ctx.no_latex("verification reports")?;
            let any = model.build(nmax, ctx.bounds)?;
            with_model!(&any, |m| verify_crossed(ctx, m, nmax))
        }
        Command::Homotopy { model, pi, degree, bound } => {
            ctx.no_latex("homotopy results")?;
            homotopy_cmd(ctx, &model, pi.as_deref(), degree, bound)
        }
        Command::Tensor { pi } => {
            ctx.no_latex("tensor squares")?;
            tensor_cmd(ctx, &pi)
        }
    }
}

fn tuple_latex(t: &SurjTuple) -> String {
    if t.is_empty() {
        return format!("\\emptyset_{{{}}}", t.dim());
    }
    let idx: Vec<String> = t.indices().iter().map(|i| i.to_string()).collect();
    format!("({})", idx.join(" , "))
}

fn tuple_text(t: &SurjTuple) -> String {
    if t.is_empty() {
        format!("∅_{}", t.dim())
    } else {
        t.to_string()
    }
}

fn sposet(ctx: &Ctx, n: usize) -> anyhow::Result<Outcome> {
    let order = enumerate_s(n)?;
    match ctx.format {
        Format::Latex => {
            let parts: Vec<String> = order.iter().map(tuple_latex).collect();
            println!("S({n}) = \\{{ {} \\}}", parts.join(" < "));
        }
        _ => ctx.emit(
            || {
                let parts: Vec<String> = order.iter().map(tuple_text).collect();
                format!("S({n}) = {{{}}}", parts.join(" < "))
            },
            || json!({ "n": n, "order": order.iter().map(|t| t.indices()).collect::<Vec<_>>() }),
        ),
    }
    Ok(Outcome::Ok)
}

fn pairs(ctx: &Ctx, n: usize) -> anyhow::Result<Outcome> {
    let ps = enumerate_p(n)?;
    match ctx.format {
        Format::Latex => {
            for p in &ps {
                println!("F_{{{}{}}}", tuple_latex(&p.alpha).replace(' ', ""), tuple_latex(&p.beta).replace(' ', ""));
            }
        }
        _ => ctx.emit(
            || ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n"),
            || json!({ "n": n, "pairs": ps.iter().map(|p| p.to_json()).collect::<Vec<_>>() }),
        ),
    }
    Ok(Outcome::Ok)
}

fn peiffer_expand(ctx: &Ctx, n: usize) -> anyhow::Result<Outcome> {
    let ps = enumerate_p(n)?;
    let mut rows = Vec::with_capacity(ps.len());
    for p in &ps {
        rows.push((p, expand(p)?));
    }
    match ctx.format {
        Format::Latex => {
            for (p, t) in &rows {
                println!("{}", format_latex(p, t));
            }
        }
        _ => ctx.emit(
            || rows.iter().map(|(p, t)| format_text(p, t)).collect::<Vec<_>>().join("\n"),
            || json!({ "n": n, "expansions": rows.iter().map(|(p, t)| expansion_json(p, t)).collect::<Vec<_>>() }),
        ),
    }
    Ok(Outcome::Ok)
}

fn certify<M: SimplicialGroup>(
    ctx: &Ctx,
    model: &M,
    n: usize,
    word: Option<&str>,
    random: Option<usize>,
    seed: u64,
) -> anyhow::Result<Outcome> {
    let word = match (word, random) {
        (Some(text), _) => DegeneracyWord::parse(model, n, text)?,
        (None, Some(len)) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            random_degeneracy_word(model, n, len, &mut rng)
        }
        (None, None) => bail!(Error::Invalid("give either --word or --random".into())),
    };
    let cert = standard_form(model, &word, &ctx.bounds)?;
    let ok = cert.verify(model);
    ctx.emit(
        || {
            let mut s = format!("word: {}\ninput: {}\n", word.format(model), model.format(n, &cert.input));
            for (a, x) in &cert.components {
                s.push_str(&format!("component {}: {}\n", a, model.format(a.source_dim(), x)));
            }
            s.push_str(&format!(
                "pairing factors: {}\nrewriting steps: {}\nreconstructs: {ok}",
                cert.nu.len(),
                cert.steps
            ));
            s
        },
        || {
            let mut v = cert.to_json(model);
            v["word"] = json!(word.format(model));
            v["model"] = json!(model.name());
            v
        },
    );
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn verify_theorem_a<M: SimplicialGroup>(ctx: &Ctx, model: &M, n: usize) -> anyhow::Result<Outcome> {
    let r = theorem_a_check(model, n, &ctx.bounds, ctx.exec)?;
    let ok = r.equal && r.boundary_equal && r.level_two_boundary != Some(false);
    ctx.emit(
        || {
            format!(
                "{} n={}: |NG∩D| = {}, |N∩D| = {}, equal: {}, boundary images equal: {}{}",
                r.model,
                r.n,
                r.moore_cap_degenerate,
                r.peiffer_cap_degenerate,
                r.equal,
                r.boundary_equal,
                r.level_two_boundary.map(|b| format!(", level-two boundary equal: {b}")).unwrap_or_default()
            )
        },
        || serde_json::to_value(&r).expect("serializable"),
    );
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn verify_crossed<M: SimplicialGroup>(ctx: &Ctx, model: &M, nmax: usize) -> anyhow::Result<Outcome> {
    let r = crossed_complex_check(model, nmax, &ArgumentSource::Exhaustive, &ctx.bounds, ctx.exec)?;
    ctx.emit(
        || {
            let mut s = format!(
                "{} up to n={}: crossed complex: {} ({} pairing values, direct check agrees: {})",
                r.model, r.nmax, r.all_trivial, r.values_examined, r.agree
            );
            if let Some(w) = &r.witness {
                s.push_str(&format!(
                    "\nwitness: {}(x = {}, y = {}) = {}",
                    w.pair,
                    model.format(w.pair.alpha.source_dim(), &w.x),
                    model.format(w.pair.beta.source_dim(), &w.y),
                    model.format(w.n(), &w.value)
                ));
            }
            s
        },
        || r.to_json(model),
    );
    Ok(if r.agree { Outcome::Ok } else { Outcome::Failed })
}

fn group_arc(selector: &str) -> anyhow::Result<Arc<FiniteGroup>> {
    Ok(Arc::new(resolve_group(selector).with_context(|| format!("resolving group `{selector}`"))?))
}

fn emit_homotopy(ctx: &Ctx, r: &HomotopyResult) -> Outcome {
    ctx.emit(|| r.to_string(), || r.to_json());
    if r.is_undecided() {
        Outcome::Undecided
    } else {
        Outcome::Ok
    }
}

fn homotopy_cmd(ctx: &Ctx, model: &str, pi: Option<&str>, degree: usize, bound: usize) -> anyhow::Result<Outcome> {
    let spec: ModelSpec = match (model, pi) {
        ("carlsson", Some(p)) => ModelSpec { kind: ModelKind::Carlsson, group: p.to_string() },
        ("carlsson", None) => bail!(Error::Invalid("the smash model needs --pi".into())),
        (m, None) => m.parse()?,
        (_, Some(_)) => bail!(Error::Invalid("--pi only goes with --model carlsson".into())),
    };
    if spec.kind == ModelKind::Carlsson {
        let g = group_arc(&spec.group)?;
        let r = match degree {
            1 => homotopy::carlsson_pi1(&g, &ctx.bounds)?,
            2 => homotopy::carlsson_pi2(g, bound, ctx.exec)?,
            d => bail!(Error::Unsupported(format!("degree {d} of the smash model"))),
        };
        return Ok(emit_homotopy(ctx, &r));
    }
    let any = spec.build(degree + 1, ctx.bounds)?;
    let r = with_model!(&any, |m| homotopy::homotopy_finite(m, degree, &ctx.bounds))?;
    Ok(emit_homotopy(ctx, &r))
}

fn tensor_cmd(ctx: &Ctx, pi: &str) -> anyhow::Result<Outcome> {
    let g = group_arc(pi)?;
    let ts = homotopy::tensor_square(g.clone())?;
    let j = homotopy::j2(g.clone(), &ctx.bounds)?;
    let bilinear = if g.is_abelian() { Some(homotopy::bilinear_invariants(&g)?) } else { None };
    let agree = bilinear.as_ref().is_none_or(|b| j.invariants.as_ref() == Some(b));
    ctx.emit(
        || {
            let mut s = format!(
                "{}: {} symbols, {} relators\nJ_2: {}",
                g.name(),
                ts.presentation.num_generators(),
                ts.presentation.relators().len(),
                j
            );
            if let Some(b) = &bilinear {
                s.push_str(&format!("\nbilinear oracle: {b} (agrees: {agree})"));
            }
            s
        },
        || {
            json!({
                "group": g.name(),
                "symbols": ts.presentation.num_generators(),
                "relators": ts.presentation.relators().len(),
                "j2": j.to_json(),
                "bilinear": bilinear.as_ref().map(|b| b.to_list()),
                "agree": agree,
            })
        },
    );
    Ok(if agree { Outcome::Ok } else { Outcome::Failed })
}

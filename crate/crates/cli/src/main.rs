mod args;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use args::{
    Cli, Command, DistCmd, EvalArgs, ExtremeCmd, Format, GridArgs, InstanceArgs, MajCmd, OrderCmd, PlotCmd,
    SearchCmd, TheoremCmd,
};
use stochord::defaults::{DefaultsTable, ORDER_GRID_POINTS};
use stochord::verification::{
    run_arch_batch, run_fixture_suite, search_counterexample, search_theorem_violation, Case, Expected, Part,
    SearchFamily, SearchSpec, Status, TheoremId, TheoremInstance, VerifyOptions,
};
use stochord::{
    check_f_majorization, check_majorization, check_order, find_crossings, implication_chain, parse_list,
    Baseline, CrossQuantity, EvalFn, Flavor, Generator, GridSpec, Lifetime, Model, MonotoneMap, OrderKind,
    ParamVector, Spacing, StochOrder,
};

const SCHEMA: u32 = 1;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<stochord::Error> for Failure {
    fn from(e: stochord::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Rendered output plus whether a violation was found.
struct Output {
    body: String,
    violation: bool,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn envelope<T: Serialize>(command: &str, result: &T) -> CliResult<String> {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "defaults": DefaultsTable::default(),
        "result": result,
    });
    serde_json::to_string_pretty(&v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Numerical(format!("cannot serialize report: {e}")))
}

fn json_out<T: Serialize>(format: Format, command: &str, result: &T, violation: bool) -> CliResult<Output> {
    if format == Format::Csv {
        return Err(usage(format!("`{command}` has no csv output")));
    }
    Ok(Output {
        body: envelope(command, result)?,
        violation,
    })
}

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_table(header: Vec<String>, rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Numerical(format!("csv: {e}"));
    w.write_record(&header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Numerical(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Failure::Numerical(e.to_string()))
}

fn list(name: &str, s: &str) -> CliResult<Vec<f64>> {
    parse_list(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn parsed<T: std::str::FromStr<Err = stochord::Error>>(name: &str, s: &str) -> CliResult<T> {
    s.parse()
        .map_err(|e: stochord::Error| usage(format!("--{name}: {e}")))
}

fn grid(g: &GridArgs, default_spacing: Spacing) -> CliResult<Option<GridSpec>> {
    if g.lo.is_none() && g.hi.is_none() && g.n.is_none() && g.spacing.is_none() {
        return Ok(None);
    }
    let (Some(lo), Some(hi)) = (g.lo, g.hi) else {
        return Err(usage("grid overrides need both --lo and --hi"));
    };
    let spacing = match g.spacing.as_deref() {
        None => default_spacing,
        Some("linear") => Spacing::Linear,
        Some("log") => Spacing::Log,
        Some(s) => return Err(usage(format!("--spacing: expected linear|log, got `{s}`"))),
    };
    Ok(Some(GridSpec::new(
        lo,
        hi,
        g.n.unwrap_or(ORDER_GRID_POINTS),
        spacing,
    )?))
}

fn maj(cmd: MajCmd, format: Format) -> CliResult<Output> {
    match cmd {
        MajCmd::Check {
            x,
            y,
            order,
            map,
            flavor,
            tol,
        } => {
            let xv = ParamVector::new(list("x", &x)?)?;
            let yv = ParamVector::new(list("y", &y)?)?;
            let (verdict, desc) = match map {
                Some(m) => {
                    let m: MonotoneMap = parsed("map", &m)?;
                    let fl: Flavor = parsed("flavor", &flavor)?;
                    (
                        check_f_majorization(&xv, &yv, &m, fl, tol)?,
                        json!({"map": m.to_string(), "flavor": fl}),
                    )
                }
                None => {
                    let k: OrderKind = parsed("order", &order)?;
                    (check_majorization(&xv, &yv, k, tol)?, json!({"order": k}))
                }
            };
            let holds = verdict.holds;
            let result = json!({"x": xv.values(), "y": yv.values(), "relation": desc, "verdict": verdict});
            json_out(format, "maj check", &result, !holds)
        }
        MajCmd::Chain { x, y, tol } => {
            let xv = ParamVector::new(list("x", &x)?)?;
            let yv = ParamVector::new(list("y", &y)?)?;
            let report = implication_chain(&xv, &yv, tol)?;
            json_out(format, "maj chain", &report, false)
        }
    }
}

fn eval(a: EvalArgs, format: Format, command: &str) -> CliResult<Output> {
    let model: Model = parsed("model", &a.model)?;
    let which: EvalFn = parsed("fn", &a.func)?;
    let xs = list("x", &a.x)?;
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| model.eval(which, x).ok()).collect();
    let body = match format {
        Format::Csv => csv_table(
            vec!["x".into(), model.to_string()],
            xs.iter()
                .zip(&vals)
                .map(|(&x, v)| vec![num(x), v.map(num).unwrap_or_default()])
                .collect(),
        )?,
        Format::Json => envelope(
            command,
            &json!({"model": model.to_string(), "fn": which.to_string(), "x": xs, "values": vals}),
        )?,
    };
    Ok(Output {
        body,
        violation: false,
    })
}

fn dist(cmd: DistCmd, format: Format) -> CliResult<Output> {
    match cmd {
        DistCmd::Eval(a) => eval(a, format, "dist eval"),
        DistCmd::Quantile { model, p } => {
            let model: Model = parsed("model", &model)?;
            let ps = list("p", &p)?;
            let qs = ps
                .iter()
                .map(|&p| model.quantile(p))
                .collect::<stochord::Result<Vec<_>>>()?;
            json_out(
                format,
                "dist quantile",
                &json!({"model": model.to_string(), "p": ps, "quantiles": qs}),
                false,
            )
        }
    }
}

fn order(cmd: OrderCmd, format: Format) -> CliResult<Output> {
    match cmd {
        OrderCmd::Check {
            f,
            g,
            order,
            grid: ga,
            tol,
        } => {
            let fm: Model = parsed("f", &f)?;
            let gm: Model = parsed("g", &g)?;
            let o: StochOrder = parsed("order", &order)?;
            let gr = grid(&ga, Spacing::Linear)?;
            let v = check_order(&fm, &gm, o, gr, tol)?;
            let violation = !v.holds();
            let result = json!({"f": fm.to_string(), "g": gm.to_string(), "verdict": v});
            json_out(format, "order check", &result, violation)
        }
        OrderCmd::Crossings {
            f,
            g,
            quantity,
            grid: ga,
        } => {
            let fm: Model = parsed("f", &f)?;
            let gm: Model = parsed("g", &g)?;
            let q: CrossQuantity = parsed("quantity", &quantity)?;
            let gr = match grid(&ga, Spacing::Linear)? {
                Some(g) => g,
                None => stochord::orders::default_grid(&fm, &gm)?,
            };
            let br = find_crossings(&fm, &gm, q, gr)?;
            let result = json!({
                "f": fm.to_string(),
                "g": gm.to_string(),
                "quantity": q.to_string(),
                "grid": gr,
                "brackets": br,
            });
            json_out(format, "order crossings", &result, !br.is_empty())
        }
    }
}

type ListPair = (Option<Vec<f64>>, Option<Vec<f64>>);

fn instance(a: &InstanceArgs) -> CliResult<TheoremInstance> {
    let id: TheoremId = parsed("id", &a.id)?;
    let varied = id.varied_parameter();
    let pick = |name: &str, v: &Option<String>, star: &Option<String>| -> CliResult<ListPair> {
        let v = v.as_deref().map(|s| list(name, s)).transpose()?;
        let s = star
            .as_deref()
            .map(|s| list(&format!("{name}-star"), s))
            .transpose()?;
        Ok((v, s))
    };
    let params = [
        ("lambda", pick("lambda", &a.lambda, &a.lambda_star)?),
        ("alpha", pick("alpha", &a.alpha, &a.alpha_star)?),
        ("mu", pick("mu", &a.mu, &a.mu_star)?),
    ];
    let mut vectors = None;
    let mut scalars = [None, None, None];
    for (i, (name, (v, s))) in params.into_iter().enumerate() {
        if name == varied {
            let (Some(v), Some(s)) = (v, s) else {
                return Err(usage(format!(
                    "{id} compares `{name}` vectors: give --{name} and --{name}-star"
                )));
            };
            vectors = Some((v, s));
        } else {
            if s.is_some() {
                return Err(usage(format!(
                    "{id} shares `{name}`; --{name}-star is not accepted"
                )));
            }
            scalars[i] = match v.as_deref() {
                None => None,
                Some([x]) => Some(*x),
                Some(_) => return Err(usage(format!("--{name} must be a single number for {id}"))),
            };
        }
    }
    let (v, s) = vectors.expect("varied parameter is one of the three");
    let mut inst = TheoremInstance::new(id, v, s);
    inst.lambda = scalars[0];
    inst.alpha = scalars[1];
    inst.mu = scalars[2];
    inst.map = a
        .map
        .as_deref()
        .map(|m| parsed::<MonotoneMap>("map", m))
        .transpose()?;
    inst.baseline = a
        .baseline
        .as_deref()
        .map(|m| parsed::<Baseline>("baseline", m))
        .transpose()?;
    inst.generator = a
        .generator
        .as_deref()
        .map(|m| parsed::<Generator>("generator", m))
        .transpose()?;
    inst.generator_star = a
        .generator_star
        .as_deref()
        .map(|m| parsed::<Generator>("generator-star", m))
        .transpose()?;
    inst.case = a.case.as_deref().map(|m| parsed::<Case>("case", m)).transpose()?;
    inst.part = a.part.as_deref().map(|m| parsed::<Part>("part", m)).transpose()?;
    inst.validate()?;
    Ok(inst)
}

fn theorem(cmd: TheoremCmd, format: Format) -> CliResult<Output> {
    match cmd {
        TheoremCmd::Verify {
            instance: ia,
            grid: ga,
            tol,
        } => {
            let inst = instance(&ia)?;
            let opts = VerifyOptions {
                grid: grid(&ga, Spacing::Linear)?,
                tol,
                ..Default::default()
            };
            let rep = stochord::verification::verify_theorem(&inst, &opts)?;
            let violation = rep.status != Status::Confirmed;
            json_out(format, "theorem verify", &rep, violation)
        }
        TheoremCmd::Suite { id, n, seed, tol } => {
            let ids: Vec<TheoremId> = if id.eq_ignore_ascii_case("all") {
                TheoremId::ALL.to_vec()
            } else {
                vec![parsed("id", &id)?]
            };
            let opts = VerifyOptions {
                tol,
                ..Default::default()
            };
            let sums: Vec<_> = ids
                .iter()
                .map(|&i| run_fixture_suite(i, n, seed, &opts))
                .collect();
            let violation = sums.iter().any(|s| s.refuted > 0);
            json_out(format, "theorem suite", &sums, violation)
        }
        TheoremCmd::ArchBatch { n, seed } => {
            let rep = run_arch_batch(n, seed);
            let violation = rep.sets.iter().any(|s| !s.consistent);
            json_out(format, "theorem arch-batch", &rep, violation)
        }
    }
}

fn fixture(s: &str) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let (v, st) = s
        .split_once(';')
        .ok_or_else(|| usage(format!("--fixture expects `varied;star`, got `{s}`")))?;
    Ok((list("fixture", v)?, list("fixture", st)?))
}

fn search(cmd: SearchCmd, format: Format) -> CliResult<Output> {
    match cmd {
        SearchCmd::Run {
            family,
            alpha,
            mu,
            baseline,
            hypothesis,
            conclusion,
            expect,
            n,
            seed,
            max_dim,
            fixture: fixtures,
            tol,
        } => {
            let need_alpha = || alpha.ok_or_else(|| usage(format!("family `{family}` needs --alpha")));
            let need_base = || -> CliResult<Baseline> {
                parsed(
                    "baseline",
                    baseline
                        .as_deref()
                        .ok_or_else(|| usage(format!("family `{family}` needs --baseline")))?,
                )
            };
            let fam = match family.as_str() {
                "ge" => SearchFamily::GeMin { alpha: need_alpha()? },
                "es" => SearchFamily::EsMin {
                    baseline: need_base()?,
                    alpha: need_alpha()?,
                },
                "scale" => SearchFamily::ScaleMin {
                    baseline: need_base()?,
                },
                "frechet" => SearchFamily::FrechetMax {
                    mu: mu.unwrap_or(0.0),
                    alpha: need_alpha()?,
                },
                other => {
                    return Err(usage(format!(
                        "--family: expected ge|es|scale|frechet, got `{other}`"
                    )))
                }
            };
            let expected = match expect.as_str() {
                "le" => Expected::Le,
                "ge" => Expected::Ge,
                "either" => Expected::Either,
                other => return Err(usage(format!("--expect: expected le|ge|either, got `{other}`"))),
            };
            let mut spec = SearchSpec::new(
                fam,
                parsed("hypothesis", &hypothesis)?,
                parsed("conclusion", &conclusion)?,
                expected,
            );
            spec.n_trials = n;
            spec.seed = seed;
            spec.max_dim = max_dim;
            spec.tol = tol;
            spec.fixtures = fixtures.iter().map(|f| fixture(f)).collect::<CliResult<_>>()?;
            let out = search_counterexample(&spec)?;
            let found = out.found;
            json_out(format, "search run", &out, found)
        }
        SearchCmd::Theorem { id, n, seed } => {
            let id: TheoremId = parsed("id", &id)?;
            let hit = search_theorem_violation(id, n, seed, &VerifyOptions::default());
            let found = hit.is_some();
            json_out(
                format,
                "search theorem",
                &json!({"theorem": id, "n_trials": n, "seed": seed, "refuted": hit}),
                found,
            )
        }
    }
}

fn plot(cmd: PlotCmd, format: Format) -> CliResult<Output> {
    let PlotCmd::Emit {
        model,
        func,
        lo,
        hi,
        n,
        spacing,
    } = cmd;
    let models = model
        .iter()
        .map(|m| parsed::<Model>("model", m))
        .collect::<CliResult<Vec<_>>>()?;
    let which: EvalFn = parsed("fn", &func)?;
    let spacing = match spacing.as_str() {
        "linear" => Spacing::Linear,
        "log" => Spacing::Log,
        s => return Err(usage(format!("--spacing: expected linear|log, got `{s}`"))),
    };
    let g = GridSpec::new(lo, hi, n, spacing)?;
    let xs = g.points();
    let cols: Vec<Vec<Option<f64>>> = models
        .iter()
        .map(|m| xs.iter().map(|&x| m.eval(which, x).ok()).collect())
        .collect();
    let labels: Vec<String> = models.iter().map(|m| m.to_string()).collect();
    let body = match format {
        Format::Csv => {
            let mut header = vec!["x".to_string()];
            header.extend(labels);
            let rows = (0..xs.len())
                .map(|i| {
                    let mut r = vec![num(xs[i])];
                    r.extend(cols.iter().map(|c| c[i].map(num).unwrap_or_default()));
                    r
                })
                .collect();
            csv_table(header, rows)?
        }
        Format::Json => envelope(
            "plot emit",
            &json!({"fn": which.to_string(), "grid": g, "x": xs, "models": labels, "values": cols}),
        )?,
    };
    Ok(Output {
        body,
        violation: false,
    })
}

fn dispatch(cli: Cli) -> CliResult<Output> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match cli.command {
        Command::Maj(c) => maj(c, fmt(Format::Json)),
        Command::Dist(c) => dist(c, fmt(Format::Json)),
        Command::Order(c) => order(c, fmt(Format::Json)),
        Command::Extreme(ExtremeCmd::Eval(a)) => eval(a, fmt(Format::Json), "extreme eval"),
        Command::Theorem(c) => theorem(c, fmt(Format::Json)),
        Command::Search(c) => search(c, fmt(Format::Json)),
        Command::Plot(c) => plot(c, fmt(Format::Csv)),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("STOCHORD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("STOCHORD_THREADS must be a positive integer, got `{v}`")))?;
    // a second initialization (tests calling run twice) is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(out: &Option<std::path::PathBuf>, body: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, body),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes())?;
            so.flush()
        }
    }
}

/// Parses `argv`, runs the command and returns the exit code:
/// 0 success or holds, 1 violation or crossing, 2 usage, 3 numerical.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out_path = cli.out.clone();
    let result = configure_threads().and_then(|_| dispatch(cli));
    match result {
        Ok(o) => {
            if let Err(e) = emit(&out_path, &o.body) {
                eprintln!("error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if o.violation {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}\n\nRun with --help for usage.");
            EXIT_USAGE
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            EXIT_NUMERICAL
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn csv_quotes_labels() {
        let s = csv_table(
            vec!["x".into(), "min[a, b]".into()],
            vec![vec!["1".into(), "2".into()]],
        )
        .unwrap();
        assert_eq!(s, "x,\"min[a, b]\"\n1,2\n");
    }
}

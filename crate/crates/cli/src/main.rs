//! `lplay`: command-line front end for the lambda playground.

mod families;

use std::fmt::Display;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lambda_playground::codec::{self, RanKind};
use lambda_playground::lab;
use lambda_playground::reduce::{self, ReduceError};
use lambda_playground::term::{self, BinTree, CompTerm, DbTerm, SkTerm, StdTerm};
use lambda_playground::treenat;
use lambda_playground::typeinf::{self, XMode};
use num_bigint::BigUint;
use serde_json::json;

use families::Family;

#[derive(Parser)]
#[command(name = "lplay", version, about = "Generate, type, reduce and rank lambda terms and combinator trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Pairs,
    Tsv,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenMode {
    Exact,
    Upto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Term,
    Type,
    Catalan,
    Db,
    Nat,
    Cantor,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalEngine {
    Db,
    Std,
    Comp,
    Sk,
    X,
    /// X-tree evaluated as a tree, then expanded
    XAsT,
    /// X-tree expanded, then reduced
    XAsB,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TypeEngine {
    Std,
    Db,
    Comp,
    Sk,
    SkUseless,
    X,
    XDirect,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calculus {
    Sk,
    X,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Open,
    Closed,
    Typed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Repr {
    Db,
    Comp,
    Std,
    Sk,
    X,
    Parens,
    Tree,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a family of terms of a given size
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: GenMode,
        /// Binder bound for `bounded`
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Free-variable bound for `typed-free`
        #[arg(long, default_value_t = 0)]
        max_free: usize,
        /// Stop after this many results
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Count a family for every size up to `--max`
    Count {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        min: Option<usize>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: GenMode,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        max_free: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Rank an object to a natural (or, for `db`, a tree natural)
    Rank {
        #[arg(long, value_enum)]
        scheme: Scheme,
        input: String,
    },
    /// Unrank a natural (or, for `db`, a tree natural)
    Unrank {
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Tuple length for `cantor`
        #[arg(long, default_value_t = 2)]
        arity: usize,
        input: String,
    },
    /// Normalize a term
    Eval {
        #[arg(long, value_enum, default_value = "db")]
        engine: EvalEngine,
        /// Step budget; 0 means unbounded
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
        term: String,
    },
    /// Infer a simple type
    Type {
        #[arg(long, value_enum, default_value = "db")]
        engine: TypeEngine,
        term: String,
    },
    /// Type frequencies of closed typable terms
    Census {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 5)]
        top: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Number of inhabitants of a type by exact size
    Growth {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Proportion of well-typed SK or X trees by size
    Density {
        #[arg(long, value_enum)]
        calculus: Calculus,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Well-typed frontier of an SK term, or size statistics with `--stats`
    Frontier {
        term: Option<String>,
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value_t = 8)]
        max: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Normalize the well-typed frontier of an SK term
    SimplifySk { term: String },
    /// Terms no larger than the given one with the same type
    Siblings { term: String },
    /// Iterate X-tree type inference
    Itertype {
        tree: String,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// X-trees that are instances of their own type
    Selftyped {
        #[arg(long)]
        size: usize,
    },
    /// Iterate evaluate-or-successor from a de Bruijn term
    Orbit {
        term: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Unrank a random natural of the given bit size
    Random {
        #[arg(long, value_enum, default_value = "open")]
        kind: Kind,
        #[arg(long)]
        bits: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Convert between representations
    Convert {
        #[arg(long, value_enum)]
        from: Repr,
        #[arg(long, value_enum)]
        to: Repr,
        term: String,
    },
    /// Size-inflating injections
    Inflate {
        #[arg(long, value_enum)]
        from: Repr,
        term: String,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    NotFound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::NotFound(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::NotFound(m) => m,
        }
    }
}

type Res = Result<(), Failure>;

fn parse<T>(s: &str) -> Result<T, Failure>
where
    T: std::str::FromStr<Err = term::ParseError>,
{
    s.parse().map_err(|e: term::ParseError| Failure::Usage(format!("cannot parse {s:?}: {e}")))
}

fn parse_nat(s: &str) -> Result<BigUint, Failure> {
    codec::parse_rank(s).ok_or_else(|| Failure::Usage(format!("not a natural number: {s:?}")))
}

fn parse_bits(s: &str) -> Result<Vec<u8>, Failure> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',' && *c != '[' && *c != ']')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Failure::Usage(format!("not a bit list: {s:?}"))),
        })
        .collect()
}

fn parse_nat_list(s: &str) -> Result<Vec<BigUint>, Failure> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_nat)
        .collect()
}

fn show_list<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn reduce_err(e: ReduceError) -> Failure {
    match e {
        ReduceError::Exhausted(n) => Failure::Domain(format!("fuel exhausted after {n} steps")),
        other => Failure::Domain(other.to_string()),
    }
}

fn fuel(n: u64) -> reduce::Fuel {
    (n > 0).then_some(n)
}

/// Run `f` over `items` on up to `jobs` threads, keeping input order.
fn sharded<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner().unwrap().into_iter().map(|r| r.expect("every shard ran")).collect()
}

fn ratio(x: f64) -> String {
    format!("{x:.4}")
}

fn run(cmd: Cmd, out: &mut dyn Write) -> Res {
    let w = |out: &mut dyn Write, s: &str| writeln!(out, "{s}").map_err(|e| Failure::Domain(e.to_string()));
    match cmd {
        Cmd::Gen { family, size, mode, depth, max_free, limit, format } => {
            let params = families::Params { depth, max_free, exact: mode == GenMode::Exact };
            let mut n = 0usize;
            let mut err = Ok(());
            let _ = family.items(size, &params).try_for_each(|item| {
                if limit.is_some_and(|l| n >= l) {
                    return std::ops::ControlFlow::Break(());
                }
                n += 1;
                let line = match (format, &item.extra) {
                    (Format::Pairs, Some((_, v))) => format!("{} : {}", item.term, v),
                    (Format::Tsv, Some((_, v))) => format!("{}\t{}", item.term, v),
                    (Format::Json, Some((k, v))) => json!({"term": item.term, *k: v}).to_string(),
                    (Format::Json, None) => json!({"term": item.term}).to_string(),
                    _ => item.term,
                };
                match w(out, &line) {
                    Ok(()) => std::ops::ControlFlow::Continue(()),
                    Err(e) => {
                        err = Err(e);
                        std::ops::ControlFlow::Break(())
                    }
                }
            });
            err
        }
        Cmd::Count { family, max, min, mode, depth, max_free, jobs, format } => {
            let params = families::Params { depth, max_free, exact: mode == GenMode::Exact };
            let lo = min.unwrap_or(family.min_size());
            let sizes: Vec<usize> = (lo..=max).collect();
            let counts = sharded(&sizes, jobs, |n| family.items(*n, &params).count());
            match format {
                Format::Json => {
                    for (n, c) in sizes.iter().zip(&counts) {
                        w(out, &json!({"size": n, "count": c}).to_string())?;
                    }
                }
                Format::Tsv | Format::Csv => {
                    let sep = if format == Format::Tsv { "\t" } else { "," };
                    for (n, c) in sizes.iter().zip(&counts) {
                        w(out, &format!("{n}{sep}{c}"))?;
                    }
                }
                _ => {
                    let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
                    w(out, &parts.join(" "))?;
                }
            }
            Ok(())
        }
        Cmd::Rank { scheme, input } => {
            let s = match scheme {
                Scheme::Term => codec::rank_term(&parse::<CompTerm>(&input)?).to_string(),
                Scheme::Type => codec::rank_type(&parse::<BinTree>(&input)?).to_string(),
                Scheme::Catalan => codec::rank_catalan(&parse_bits(&input)?)
                    .map_err(|e| Failure::Domain(e.to_string()))?
                    .to_string(),
                Scheme::Db => treenat::rank_db(&parse::<DbTerm>(&input)?).to_string(),
                Scheme::Nat => treenat::nat_of_tree(&parse::<BinTree>(&input)?)
                    .map_err(|e| Failure::Domain(e.to_string()))?
                    .to_string(),
                Scheme::Cantor => codec::from_cantor(&parse_nat_list(&input)?).to_string(),
            };
            w(out, &s)
        }
        Cmd::Unrank { scheme, arity, input } => {
            let s = match scheme {
                Scheme::Term => codec::unrank_term(&parse_nat(&input)?)
                    .map_err(|e| Failure::Domain(e.to_string()))?
                    .to_string(),
                Scheme::Type => codec::unrank_type(&parse_nat(&input)?).to_string(),
                Scheme::Catalan => show_list(&codec::unrank_catalan(&parse_nat(&input)?)),
                Scheme::Db => treenat::unrank_db(&parse::<BinTree>(&input)?)
                    .map_err(|e| Failure::Domain(e.to_string()))?
                    .to_string(),
                Scheme::Nat => treenat::tree_of_nat(&parse_nat(&input)?).to_string(),
                Scheme::Cantor => show_list(
                    &codec::to_cantor(arity, &parse_nat(&input)?).map_err(|e| Failure::Domain(e.to_string()))?,
                ),
            };
            w(out, &s)
        }
        Cmd::Eval { engine, fuel: f, term } => {
            let f = fuel(f);
            let s = match engine {
                EvalEngine::Db => reduce::nf_reduce(&parse::<DbTerm>(&term)?, f).map_err(reduce_err)?.to_string(),
                EvalEngine::Std => reduce::eval_std(&parse::<StdTerm>(&term)?, f).map_err(reduce_err)?.to_string(),
                EvalEngine::Comp => {
                    reduce::eval_compressed(&parse::<CompTerm>(&term)?, f).map_err(reduce_err)?.to_string()
                }
                EvalEngine::Sk => reduce::eval_sk_fuel(&parse::<SkTerm>(&term)?, f).map_err(reduce_err)?.to_string(),
                EvalEngine::X => reduce::eval_x_fuel(&parse::<BinTree>(&term)?, f).map_err(reduce_err)?.to_string(),
                EvalEngine::XAsT => reduce::eval_as_t(&parse::<BinTree>(&term)?, f).map_err(reduce_err)?.to_string(),
                EvalEngine::XAsB => reduce::eval_as_b(&parse::<BinTree>(&term)?, f).map_err(reduce_err)?.to_string(),
            };
            w(out, &s)
        }
        Cmd::Type { engine, term } => {
            let untypable = || Failure::Domain(format!("untypable: {term}"));
            let s = match engine {
                TypeEngine::Std => {
                    let t = parse::<StdTerm>(&term)?;
                    typeinf::infer_std(&t).ok_or_else(untypable)?.to_string()
                }
                TypeEngine::Db => typeinf::infer_db(&parse::<DbTerm>(&term)?).ok_or_else(untypable)?.to_string(),
                TypeEngine::Comp => {
                    typeinf::infer_compressed(&parse::<CompTerm>(&term)?).ok_or_else(untypable)?.to_string()
                }
                TypeEngine::Sk => typeinf::infer_sk(&parse::<SkTerm>(&term)?).ok_or_else(untypable)?.to_string(),
                TypeEngine::SkUseless => typeinf::useless_type(&parse::<SkTerm>(&term)?).to_string(),
                TypeEngine::X => {
                    typeinf::infer_x(&parse::<BinTree>(&term)?, XMode::Borrowed).ok_or_else(untypable)?.to_string()
                }
                TypeEngine::XDirect => {
                    typeinf::infer_x(&parse::<BinTree>(&term)?, XMode::Direct).ok_or_else(untypable)?.to_string()
                }
            };
            w(out, &s)
        }
        Cmd::Census { max, top, jobs, format } => {
            if max == 0 {
                return Err(Failure::Usage("--max must be at least 1".into()));
            }
            let sizes: Vec<usize> = (1..=max).collect();
            let counts = sharded(&sizes, jobs, |n| lab::census_counts(*n));
            let per: Vec<_> = sizes.into_iter().zip(counts).collect();
            for row in lab::census_from_counts(&per, top) {
                let size = row.size.map_or("all".to_string(), |n| n.to_string());
                let tops: Vec<(String, u64)> = row.top_types.iter().map(|(t, c)| (t.to_string(), *c)).collect();
                let line = if format == Format::Json {
                    let tops: Vec<_> = tops.iter().map(|(t, c)| json!({"type": t, "count": c})).collect();
                    json!({"size": size, "types": row.distinct_types, "terms": row.terms,
                           "ratio": row.ratio, "top": tops})
                    .to_string()
                } else {
                    let tops: Vec<String> = tops.iter().map(|(t, c)| format!("{c}:{t}")).collect();
                    format!("{size}\t{}\t{}\t{}\t{}", row.distinct_types, row.terms, ratio(row.ratio), tops.join(" "))
                };
                w(out, &line)?;
            }
            Ok(())
        }
        Cmd::Growth { ty, max, jobs } => {
            let ty = parse::<BinTree>(&ty)?;
            let sizes: Vec<usize> = (1..=max).collect();
            let counts = sharded(&sizes, jobs, |n| {
                lambda_playground::generate::query_typed(*n, &ty, lambda_playground::generate::Mode::Exact).count()
            });
            let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            w(out, &parts.join(" "))
        }
        Cmd::Density { calculus, max, jobs, format } => {
            let sizes: Vec<usize> = (0..=max).collect();
            let rows = sharded(&sizes, jobs, |n| match calculus {
                Calculus::Sk => lab::sk_density_row(*n),
                Calculus::X => lab::x_density_row(*n),
            });
            for r in rows {
                let line = if format == Format::Json {
                    json!({"size": r.size, "typed": r.typed, "total": r.total, "ratio": r.ratio}).to_string()
                } else {
                    format!("{}\t{}\t{}\t{}", r.size, r.typed, r.total, ratio(r.ratio))
                };
                w(out, &line)?;
            }
            Ok(())
        }
        Cmd::Frontier { term, stats, max, format } => {
            if stats {
                for r in lab::frontier_stats(max) {
                    let line = if format == Format::Json {
                        json!({"size": r.size, "avg_trunk": r.avg_trunk, "avg_frontier": r.avg_frontier,
                               "pct_trunk": r.pct_trunk, "pct_frontier": r.pct_frontier})
                        .to_string()
                    } else {
                        format!(
                            "{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}",
                            r.size, r.avg_trunk, r.avg_frontier, r.pct_trunk, r.pct_frontier
                        )
                    };
                    w(out, &line)?;
                }
                return Ok(());
            }
            let term = term.ok_or_else(|| Failure::Usage("frontier needs a term or --stats".into()))?;
            let f = lab::well_typed_frontier(&parse::<SkTerm>(&term)?);
            if format == Format::Json {
                let eqs: Vec<_> =
                    f.equations.iter().map(|(i, t)| json!({"hole": lab::hole_name(*i), "term": t.to_string()})).collect();
                return w(out, &json!({"trunk": f.trunk.to_string(), "frontier": eqs}).to_string());
            }
            w(out, &format!("trunk {}", f.trunk))?;
            for (i, t) in &f.equations {
                w(out, &format!("{} = {}", lab::hole_name(*i), t))?;
            }
            Ok(())
        }
        Cmd::SimplifySk { term } => w(out, &lab::simplify_sk(&parse::<SkTerm>(&term)?).to_string()),
        Cmd::Siblings { term } => {
            let t = parse::<DbTerm>(&term)?;
            let sibs = lab::type_siblings(&t).ok_or_else(|| Failure::Domain(format!("untypable: {term}")))?;
            for s in sibs.collect_vec() {
                w(out, &s.to_string())?;
            }
            Ok(())
        }
        Cmd::Itertype { tree, max_steps, format } => {
            let (types, steps) = lab::iter_type(&parse::<BinTree>(&tree)?, max_steps);
            if format == Format::Json {
                let ts: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                return w(out, &json!({"types": ts, "steps": steps}).to_string());
            }
            for t in &types {
                w(out, &t.to_string())?;
            }
            w(out, &format!("steps {steps}"))
        }
        Cmd::Selftyped { size } => {
            for t in lab::gen_self_typed(size).collect_vec() {
                w(out, &t.to_string())?;
            }
            Ok(())
        }
        Cmd::Orbit { term, steps, format } => {
            let o = lab::orbit(&parse::<DbTerm>(&term)?, steps).map_err(|e| Failure::Domain(e.to_string()))?;
            if format == Format::Csv {
                w(out, "step,size")?;
            }
            for (i, t) in o.iter().enumerate() {
                let line = match format {
                    Format::Csv => format!("{i},{}", t.size()),
                    Format::Tsv => format!("{i}\t{}", t.size()),
                    Format::Json => json!({"step": i, "size": t.size(), "term": t.to_string()}).to_string(),
                    _ => t.to_string(),
                };
                w(out, &line)?;
            }
            Ok(())
        }
        Cmd::Random { kind, bits, seed, format } => {
            if bits == 0 {
                return Err(Failure::Usage("--bits must be at least 1".into()));
            }
            let kind = match kind {
                Kind::Open => RanKind::Open,
                Kind::Closed => RanKind::Closed,
                Kind::Typed => RanKind::Typed,
            };
            let (r, t) = codec::ran_term(kind, bits, seed)
                .ok_or_else(|| Failure::NotFound("no term in the scanned rank window".into()))?;
            let line = match format {
                Format::Json => json!({"rank": r.to_string(), "term": t.to_string()}).to_string(),
                Format::Pairs => format!("{t} : {r}"),
                Format::Tsv => format!("{r}\t{t}"),
                _ => t.to_string(),
            };
            w(out, &line)
        }
        Cmd::Convert { from, to, term } => {
            let s = convert(from, to, &term)?;
            w(out, &s)
        }
        Cmd::Inflate { from, term } => {
            let s = match from {
                Repr::Db => lab::inflate_b2b(&parse::<DbTerm>(&term)?).to_string(),
                Repr::X | Repr::Tree => lab::inflate_t2t(&parse::<BinTree>(&term)?).to_string(),
                _ => return Err(Failure::Usage("inflate accepts --from db or --from x".into())),
            };
            w(out, &s)
        }
    }
}

fn convert(from: Repr, to: Repr, s: &str) -> Result<String, Failure> {
    let db: DbTerm = match from {
        Repr::Db => parse(s)?,
        Repr::Comp => term::compressed_to_db(&parse(s)?),
        Repr::Std => term::std_to_db(&parse(s)?).map_err(|e| Failure::Domain(e.to_string()))?,
        Repr::Sk => reduce::sk_to_db(&parse(s)?),
        Repr::X => reduce::x_to_db(&parse(s)?),
        Repr::Tree | Repr::Parens => {
            let t: BinTree = if from == Repr::Tree {
                parse(s)?
            } else {
                codec::parens_to_tree(&parse_bits(s)?).map_err(|e| Failure::Domain(e.to_string()))?
            };
            return match to {
                Repr::Parens => Ok(show_list(&codec::tree_to_parens(&t))),
                Repr::Tree => Ok(t.to_string()),
                _ => Err(Failure::Usage("trees convert only to tree or parens".into())),
            };
        }
    };
    match to {
        Repr::Db => Ok(db.to_string()),
        Repr::Comp => Ok(term::db_to_compressed(&db).to_string()),
        Repr::Std => Ok(term::db_to_std(&db).to_string()),
        _ => Err(Failure::Usage("lambda terms convert only to db, comp or std".into())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let worker = std::thread::Builder::new().stack_size(1 << 30).spawn(move || {
        let stdout = io::stdout();
        let mut out = BufWriter::new(stdout.lock());
        let res = run(cli.cmd, &mut out);
        let _ = out.flush();
        res
    });
    let res = match worker.map(|h| h.join()) {
        Ok(Ok(res)) => res,
        _ => Err(Failure::Domain("internal failure".into())),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lplay: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

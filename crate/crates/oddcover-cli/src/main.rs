//! Command-line surface for the odd-cover toolkit.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 verification failure, 2 malformed input, 3 budget exhausted.

use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use oddcover::construct::{
    adjacent_twin_cover, bipartite_cover, complete_cover, forest_cover, k_triangles_cover,
    odd_cycle_cover_traced, rank_cover, star_cover,
};
use oddcover::search::{exact_b2, lower_bound, upper_bound};
use oddcover::{ConstructionResult, Error, Graph, OddCover, SearchConfig, SearchStatus};

#[derive(Parser)]
#[command(
    name = "oddcover",
    version,
    about = "Odd covers of graphs: generators, GF(2) rank, bounds, constructions, verification, exact search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file in graph6 or edge-list format; `-` reads stdin.
    #[arg(long, value_name = "FILE", default_value = "-", conflicts_with_all = ["inline", "gen"])]
    graph: String,
    /// Graph passed inline (graph6 or edge list).
    #[arg(long, value_name = "TEXT", conflicts_with = "gen")]
    inline: Option<String>,
    /// Generator spec, e.g. "complete 8", "cycle 5", "ktriangles 2".
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Plain-text output instead of JSON (same fields).
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph as graph6.
    Gen {
        /// complete | cycle | path | ktriangles | bk | tk
        family: String,
        params: Vec<usize>,
        /// Vertex budget override for bk/tk.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print the GF(2) rank of the adjacency matrix.
    Rank {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the lower bound, an upper bound, and its witness cover.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a cover of the input graph with the named construction.
    Construct {
        /// auto | forest | bipartite | odd-cycle | complete | adjacent-twin
        /// | rank | star | k-triangles
        family: String,
        #[command(flatten)]
        input: InputArgs,
        /// With `auto`, return the smallest cover over all applicable
        /// constructions instead of the first applicable one.
        #[arg(long)]
        best: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a cover against a graph; exit 0 iff it passes.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Cover JSON file (bare cover or construct output); `-` reads stdin.
        #[arg(long, value_name = "FILE", default_value = "-")]
        cover: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute b2 exactly by iterative-deepening search.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Largest cover size to try.
        #[arg(long, value_name = "K", default_value_t = 6)]
        max_k: usize,
        /// Wall-clock budget in seconds.
        #[arg(long, value_name = "SECS", default_value_t = 3600.0)]
        time: f64,
        /// Budget on examined candidate words.
        #[arg(long, value_name = "N", default_value_t = u64::MAX)]
        nodes: u64,
        /// Worker threads; defaults to $ODDCOVER_THREADS or 1.
        #[arg(long, value_name = "T")]
        threads: Option<usize>,
        /// Thread-count-independent results and witness.
        #[arg(long, value_name = "BOOL", default_value_t = true)]
        deterministic: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn bad_input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen {
            family,
            params,
            budget,
        } => {
            let g = generate(&family, &params, budget)?;
            println!("{}", g.to_graph6());
            Ok(0)
        }
        Command::Rank { input, output } => {
            let g = read_graph(&input)?;
            let r2 = g.rank2();
            if output.text {
                println!("{r2}");
            } else {
                println!("{}", serde_json::json!({ "r2": r2 }));
            }
            Ok(0)
        }
        Command::Bounds { input, output } => {
            let g = read_graph(&input)?;
            let lb = lower_bound(&g);
            let (ub, witness) = upper_bound(&g);
            if output.text {
                println!("lb: {lb}");
                println!("ub: {ub}");
                println!(
                    "witness: {}",
                    serde_json::to_string(&witness).expect("cover serializes")
                );
            } else {
                println!(
                    "{}",
                    serde_json::json!({ "lb": lb, "ub": ub, "witness": witness })
                );
            }
            Ok(0)
        }
        Command::Construct {
            family,
            input,
            best,
            output,
        } => {
            let g = read_graph(&input)?;
            let result = construct_family(&family, &g, best)?;
            if output.text {
                println!("family: {}", result.family);
                println!("formula: {}", result.formula);
                println!("size: {}", result.size());
                println!(
                    "cover: {}",
                    serde_json::to_string(&result.cover).expect("cover serializes")
                );
            } else {
                println!("{}", result.to_json());
            }
            Ok(0)
        }
        Command::Verify {
            input,
            cover,
            output,
        } => {
            if graph_source_is_stdin(&input) && cover == "-" {
                return Err(Failure::bad_input(
                    "only one of --graph and --cover may read stdin",
                ));
            }
            let g = read_graph(&input)?;
            let cover = read_cover(&cover)?;
            let report = cover.verify(&g)?;
            if output.text {
                println!("ok: {}", report.ok);
                println!("cardinality: {}", report.cardinality);
                println!("rank_lower_bound: {}", report.rank_lower_bound);
                let pairs: Vec<String> = report
                    .mismatches
                    .iter()
                    .map(|m| format!("[{},{}]", m.u, m.v))
                    .collect();
                println!("mismatches: [{}]", pairs.join(","));
            } else {
                println!("{}", report.to_json());
            }
            Ok(if report.ok { 0 } else { 1 })
        }
        Command::Solve {
            input,
            max_k,
            time,
            nodes,
            threads,
            deterministic,
            output,
        } => {
            if !time.is_finite() || time < 0.0 {
                return Err(Failure::bad_input("--time must be a nonnegative number"));
            }
            let g = read_graph(&input)?;
            let threads = threads
                .or_else(|| {
                    std::env::var("ODDCOVER_THREADS")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(1);
            let cfg = SearchConfig {
                max_k,
                time_budget: Duration::from_secs_f64(time),
                node_budget: nodes,
                deterministic,
                threads,
            };
            let result = exact_b2(&g, &cfg);
            if output.text {
                println!("status: {}", result.status.as_str());
                match result.b2 {
                    Some(b2) => println!("b2: {b2}"),
                    None => println!("b2: unknown"),
                }
                println!("lb: {}", result.lb);
                println!("nodes: {}", result.nodes);
                println!("elapsed_ms: {}", result.elapsed.as_millis());
                if let Some(w) = &result.witness {
                    println!(
                        "witness: {}",
                        serde_json::to_string(w).expect("cover serializes")
                    );
                }
            } else {
                println!("{}", result.to_json());
            }
            Ok(match result.status {
                SearchStatus::Exact => 0,
                _ => 3,
            })
        }
    }
}

fn generate(family: &str, params: &[usize], budget: Option<usize>) -> Result<Graph, Failure> {
    let one = |what: &str| -> Result<usize, Failure> {
        match params {
            [p] => Ok(*p),
            _ => Err(Failure::bad_input(format!(
                "{family} takes exactly one parameter ({what})"
            ))),
        }
    };
    let g = match family {
        "complete" => {
            let n = one("n")?;
            if n == 0 {
                return Err(Failure::bad_input("complete needs n >= 1"));
            }
            Graph::complete(n)
        }
        "cycle" => Graph::cycle(one("n")?)?,
        "path" => {
            let n = one("n")?;
            if n == 0 {
                return Err(Failure::bad_input("path needs n >= 1"));
            }
            Graph::path(n)
        }
        "ktriangles" | "k-triangles" | "k_triangles" => {
            let k = one("k")?;
            if k == 0 {
                return Err(Failure::bad_input("ktriangles needs k >= 1"));
            }
            Graph::k_triangles(k)
        }
        "bk" => match budget {
            Some(b) => Graph::graph_bk_with_budget(one("k")?, b)?,
            None => Graph::graph_bk(one("k")?)?,
        },
        "tk" => match budget {
            Some(b) => Graph::graph_tk_with_budget(one("k")?, b)?,
            None => Graph::graph_tk(one("k")?)?,
        },
        other => {
            return Err(Failure::bad_input(format!(
                "unknown family `{other}` (expected complete, cycle, path, ktriangles, bk, or tk)"
            )))
        }
    };
    Ok(g)
}

fn graph_source_is_stdin(input: &InputArgs) -> bool {
    input.inline.is_none() && input.gen.is_none() && input.graph == "-"
}

fn read_graph(input: &InputArgs) -> Result<Graph, Failure> {
    if let Some(spec) = &input.gen {
        let mut parts = spec.split_whitespace();
        let family = parts
            .next()
            .ok_or_else(|| Failure::bad_input("empty --gen spec"))?;
        let params: Vec<usize> = parts
            .map(|p| {
                p.parse()
                    .map_err(|_| Failure::bad_input(format!("bad generator parameter `{p}`")))
            })
            .collect::<Result<_, _>>()?;
        return generate(family, &params, None);
    }
    let text = if let Some(inline) = &input.inline {
        inline.clone()
    } else if input.graph == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::bad_input(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(&input.graph)
            .map_err(|e| Failure::bad_input(format!("reading {}: {e}", input.graph)))?
    };
    parse_graph_text(&text).map_err(Into::into)
}

/// graph6 when the first non-empty line decodes as such, else an edge list.
fn parse_graph_text(text: &str) -> Result<Graph, Error> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if let Some(first) = lines.next() {
        if let Ok(g) = Graph::parse_graph6(first.trim()) {
            if lines.next().is_some() {
                return Err(Error::InvalidArgument(
                    "input holds more than one graph6 line".into(),
                ));
            }
            return Ok(g);
        }
    }
    Graph::parse_edge_list(text)
}

fn read_cover(source: &str) -> Result<OddCover, Failure> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::bad_input(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| Failure::bad_input(format!("reading {source}: {e}")))?
    };
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::bad_input(format!("cover is not valid JSON: {e}")))?;
    // Accept either a bare cover or a construct wrapper with a `cover` key.
    let cover_value = match value.get("cover") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let cover: OddCover = serde_json::from_value(cover_value)
        .map_err(|e| Failure::bad_input(format!("malformed cover JSON: {e}")))?;
    cover.validate()?;
    Ok(cover)
}

fn construct_family(family: &str, g: &Graph, best: bool) -> Result<ConstructionResult, Failure> {
    match family {
        "auto" => construct_auto(g, best),
        "forest" => Ok(forest_cover(g)?),
        "bipartite" => Ok(bipartite_cover(g)?),
        "odd-cycle" | "odd_cycle" => Ok(odd_cycle_cover_traced(g)?),
        "complete" => {
            require_shape(g, is_complete(g), "a complete graph")?;
            Ok(complete_cover(g.n())?)
        }
        "adjacent-twin" | "adjacent_twin" => {
            let m = g.adjacent_twin_matching().ok_or_else(|| {
                Failure::bad_input("graph has no perfect adjacent-twin matching")
            })?;
            Ok(adjacent_twin_cover(g, &m)?)
        }
        "rank" => Ok(rank_cover(g)?),
        "star" => Ok(star_cover(g)?),
        "k-triangles" | "ktriangles" | "k_triangles" => {
            let k = g.n() / 3;
            if k == 0 || *g != Graph::k_triangles(k) {
                return Err(Failure::bad_input(
                    "input is not a disjoint union of canonical triangles",
                ));
            }
            Ok(k_triangles_cover(k)?)
        }
        other => Err(Failure::bad_input(format!(
            "unknown construction `{other}`"
        ))),
    }
}

fn require_shape(_g: &Graph, ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::bad_input(format!("input graph is not {what}")))
    }
}

fn is_complete(g: &Graph) -> bool {
    g.n() >= 1 && (1..=g.n()).all(|v| g.degree(v) == g.n() - 1)
}

fn is_odd_cycle(g: &Graph) -> bool {
    g.n() >= 3
        && g.n() % 2 == 1
        && g.is_connected()
        && (1..=g.n()).all(|v| g.degree(v) == 2)
}

/// First applicable construction in the fixed dispatch order; with `best`,
/// the smallest verified cover over all applicable ones.
fn construct_auto(g: &Graph, best: bool) -> Result<ConstructionResult, Failure> {
    let mut applicable: Vec<ConstructionResult> = Vec::new();
    if g.is_forest() {
        applicable.push(forest_cover(g)?);
    }
    if (applicable.is_empty() || best) && g.is_bipartite() {
        applicable.push(bipartite_cover(g)?);
    }
    if (applicable.is_empty() || best) && is_odd_cycle(g) {
        applicable.push(odd_cycle_cover_traced(g)?);
    }
    if (applicable.is_empty() || best) && is_complete(g) {
        applicable.push(complete_cover(g.n())?);
    }
    if applicable.is_empty() || best {
        if let Some(m) = g.adjacent_twin_matching() {
            if g.n() >= 2 {
                applicable.push(adjacent_twin_cover(g, &m)?);
            }
        }
    }
    if applicable.is_empty() || best {
        applicable.push(rank_cover(g)?);
    }
    if applicable.is_empty() || best {
        applicable.push(star_cover(g)?);
    }
    let result = if best {
        applicable
            .into_iter()
            .min_by_key(|r| r.size())
            .expect("rank and star always apply")
    } else {
        applicable.into_iter().next().expect("rank always applies")
    };
    Ok(result)
}

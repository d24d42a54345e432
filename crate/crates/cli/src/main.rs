mod graphs;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nbhd::complexes::{b_poset, neighborhood_complex, SimplicialComplex};
use nbhd::graph::{hom_search, kneser_odd_girth_formula, make_kneser, odd_girth, Graph, SearchOutcome};
use nbhd::homology::{abelianize, connectivity_of, edge_path_presentation, homology_with_limit};
use nbhd::morse::{collapse_cycle_complex, cycle_matching};
use nbhd::z2::{obstruction_check, HeightOptions, Verdict};
use nbhd::{DEFAULT_FACE_LIMIT, DEFAULT_SEARCH_BUDGET};

use graphs::load_graph;
use report::{Failure, RunReport};

#[derive(Parser, Debug)]
#[command(name = "nbhd", version, about = "Neighborhood complexes of graphs and graph-map obstructions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of faces enumerated for any complex.
    #[arg(long, global = true, env = "NBHD_LIMIT_FACES", default_value_t = DEFAULT_FACE_LIMIT)]
    limit_faces: usize,
    /// Node-expansion budget for homomorphism searches.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Write the main artifact (complex, poset or matching) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Odd girth of a graph.
    Girth { graph: String },
    /// Facets of the r-neighborhood complex N_r(G).
    Complex {
        graph: String,
        #[arg(short, long)]
        r: usize,
    },
    /// Integral homology of a complex file, or of N_r(G).
    Homology {
        /// Graph spec; requires --r.
        graph: Option<String>,
        #[arg(short, long)]
        r: Option<usize>,
        /// Complex JSON file with "vertices" and "facets".
        #[arg(long, conflicts_with = "graph")]
        complex: Option<PathBuf>,
        /// Also abelianize the edge-path group at the first vertex.
        #[arg(long)]
        presentation: bool,
    },
    /// Size of the poset B_r(G).
    Bposet {
        graph: String,
        #[arg(short, long)]
        r: usize,
    },
    /// Height obstruction to a map from the source to the target graph.
    Obstruct {
        source: String,
        target: String,
        #[arg(short, long)]
        r: usize,
        /// Compute heights of the order complexes when cheap bounds disagree.
        #[arg(long)]
        exact: bool,
    },
    /// Morse matchings collapsing N_r(C_m) down to N_1(C_m).
    Morse {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        r: usize,
    },
    /// Odd girth and certificate data for a range of Kneser graphs.
    KneserTable {
        /// Range such as 5..7 (inclusive) or a single value.
        #[arg(short, long)]
        n: String,
        #[arg(short, long)]
        k: String,
        /// Cap on the total number of Kneser vertices built.
        #[arg(long, default_value_t = 100_000)]
        max_vertices: usize,
    },
    /// Backtracking search for a graph map.
    HomSearch { source: String, target: String },
}

struct Output {
    parameters: Value,
    result: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                emit(command, out.parameters, out.result, start, false);
            } else {
                println!("{}", out.text.trim_end());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.global.json {
                emit(command, json!({}), json!({ "error": f.message }), start, f.code == 3);
            }
            ExitCode::from(f.code as u8)
        }
    }
}

fn emit(command: &str, parameters: Value, result: Value, start: Instant, resource_limit_hit: bool) {
    let report = RunReport {
        command: command.to_string(),
        parameters,
        result,
        wall_time_ms: start.elapsed().as_millis(),
        resource_limit_hit,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Girth { .. } => "girth",
        Command::Complex { .. } => "complex",
        Command::Homology { .. } => "homology",
        Command::Bposet { .. } => "bposet",
        Command::Obstruct { .. } => "obstruct",
        Command::Morse { .. } => "morse",
        Command::KneserTable { .. } => "kneser-table",
        Command::HomSearch { .. } => "hom-search",
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn write_out(global: &Global, contents: &str) -> Result<(), Failure> {
    if let Some(path) = &global.out {
        fs::write(path, contents).map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Girth { graph } => {
            let graph_ = load_graph(graph)?;
            let girth = odd_girth(&graph_);
            Ok(Output {
                parameters: json!({ "graph": graph }),
                result: json!({ "vertices": graph_.vertex_count(), "edges": graph_.edge_count(), "odd_girth": girth }),
                text: format!("odd girth: {girth}"),
            })
        }
        Command::Complex { graph, r } => {
            let k = neighborhood_complex(&load_graph(graph)?, *r)?;
            k.faces(g.limit_faces)?;
            write_out(g, &k.to_json())?;
            let mut sizes: Vec<usize> = k.facets().iter().map(|f| f.len()).collect();
            sizes.sort_unstable();
            sizes.dedup();
            Ok(Output {
                parameters: json!({ "graph": graph, "r": r, "out": g.out }),
                result: json!({ "facets": k.facets().len(), "dimension": k.dim(), "facet_sizes": sizes }),
                text: format!("facets: {}\ndimension: {}\nfacet sizes: {sizes:?}", k.facets().len(), k.dim()),
            })
        }
        Command::Homology { graph, r, complex, presentation } => {
            let (k, parameters) = match (graph, complex) {
                (Some(graph), None) => {
                    let r = r.ok_or_else(|| Failure::new(2, "homology of a graph needs --r"))?;
                    (neighborhood_complex(&load_graph(graph)?, r)?, json!({ "graph": graph, "r": r }))
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
                    (SimplicialComplex::from_json(&text)?, json!({ "complex": path }))
                }
                _ => return Err(Failure::new(2, "give either a graph with --r or --complex FILE")),
            };
            let h = homology_with_limit(&k, g.limit_faces)?;
            let mut result = json!({ "homology": h, "euler_characteristic": h.euler_characteristic() });
            let mut text: String = h
                .groups
                .iter()
                .map(|grp| {
                    let torsion: Vec<String> = grp.torsion.iter().map(|t| t.to_string()).collect();
                    format!("H_{}: betti {} torsion [{}]\n", grp.dim, grp.betti, torsion.join(", "))
                })
                .collect();
            if !k.is_empty() {
                let conn = connectivity_of(&h);
                result["connectivity"] = to_value(&conn);
                text += &format!("homological connectivity: {}\n", result["connectivity"]);
            }
            if *presentation {
                let base = k.vertices().iter().next().ok_or_else(|| Failure::new(2, "empty complex has no base vertex"))?;
                let p = edge_path_presentation(&k, base)?;
                let ab = abelianize(&p);
                let torsion: Vec<String> = ab.torsion.iter().map(|t| t.to_string()).collect();
                result["presentation"] = json!({
                    "base": k.label(base),
                    "generators": p.generators.len(),
                    "relators": p.relators.len(),
                    "free_rank": ab.free_rank,
                    "torsion": torsion,
                });
                text += &format!(
                    "edge-path group at {}: {} generators, {} relators, abelianization Z^{} torsion [{}]\n",
                    k.label(base),
                    p.generators.len(),
                    p.relators.len(),
                    ab.free_rank,
                    torsion.join(", ")
                );
            }
            let mut parameters = parameters;
            parameters["presentation"] = json!(presentation);
            Ok(Output { parameters, result, text })
        }
        Command::Bposet { graph, r } => {
            let p = b_poset(&load_graph(graph)?, *r, g.limit_faces)?;
            if g.out.is_some() {
                write_out(g, &serde_json::to_string_pretty(&p.to_file()).expect("poset serializes"))?;
            }
            let covers = p.covers().count();
            let minimal = p.minimal_elements().count();
            Ok(Output {
                parameters: json!({ "graph": graph, "r": r, "out": g.out }),
                result: json!({ "elements": p.len(), "covers": covers, "minimal": minimal }),
                text: format!("elements: {}\ncovers: {covers}\nminimal elements: {minimal}", p.len()),
            })
        }
        Command::Obstruct { source, target, r, exact } => {
            let (gs, gt) = (load_graph(source)?, load_graph(target)?);
            let opts = HeightOptions { exact: *exact, search_budget: g.budget, face_limit: g.limit_faces, ..HeightOptions::default() };
            let report = obstruction_check(&gs, &gt, *r, &opts)?;
            let search = hom_search(&gs, &gt, g.budget);
            let (search_json, search_text) = describe_search(&search, &gs, &gt);
            if report.verdict == Verdict::NoMap && search.found().is_some() {
                return Err(Failure::new(1, "consistency error: NO-MAP verdict but the search found a map"));
            }
            Ok(Output {
                parameters: json!({ "source": source, "target": target, "r": r, "exact": exact, "budget": g.budget }),
                result: json!({ "obstruction": report, "search": search_json }),
                text: format!(
                    "verdict: {} (lower {} by {} vs upper {} by {})\nsearch: {search_text}",
                    report.verdict,
                    report.lhs.value,
                    rule_name(&report.lhs),
                    report.rhs.value,
                    rule_name(&report.rhs)
                ),
            })
        }
        Command::Morse { m, r } => {
            let run = collapse_cycle_complex(*m, *r, g.limit_faces)?;
            if g.out.is_some() {
                let labels: Vec<String> = (0..*m).map(|i| i.to_string()).collect();
                let pairs = cycle_matching(*m, *r)?.export(&labels);
                write_out(g, &serde_json::to_string_pretty(&pairs).expect("pairs serialize"))?;
            }
            let mut text = String::new();
            for s in &run.steps {
                text += &format!(
                    "r={}: {} pairs, {} critical, acyclic {}, reached N_{} {}\n",
                    s.r,
                    s.pairs,
                    s.critical,
                    s.acyclic,
                    s.r - 1,
                    s.reached_next
                );
            }
            text += &format!("final facets: {}\nbetti: {:?}\n", run.final_facets.len(), run.homology.betti_numbers());
            Ok(Output { parameters: json!({ "m": m, "r": r, "out": g.out }), result: to_value(&run), text })
        }
        Command::KneserTable { n, k, max_vertices } => {
            let (ns, ks) = (parse_range(n)?, parse_range(k)?);
            kneser_table(&ns, &ks, *max_vertices).map(|(rows, text)| Output {
                parameters: json!({ "n": n, "k": k, "max_vertices": max_vertices }),
                result: json!({ "rows": rows }),
                text,
            })
        }
        Command::HomSearch { source, target } => {
            let (gs, gt) = (load_graph(source)?, load_graph(target)?);
            let outcome = hom_search(&gs, &gt, g.budget);
            let (result, text) = describe_search(&outcome, &gs, &gt);
            Ok(Output { parameters: json!({ "source": source, "target": target, "budget": g.budget }), result, text })
        }
    }
}

fn rule_name(b: &nbhd::z2::Bound) -> String {
    to_value(b)["rule"].as_str().unwrap_or("?").to_string()
}

fn describe_search(outcome: &SearchOutcome, g: &Graph, h: &Graph) -> (Value, String) {
    match outcome {
        SearchOutcome::Found(map) => {
            let pairs: Vec<[&str; 2]> = (0..g.vertex_count()).map(|v| [g.label(v), h.label(map.image(v))]).collect();
            let text = pairs.iter().map(|[a, b]| format!("{a}->{b}")).collect::<Vec<_>>().join(" ");
            (json!({ "outcome": "found", "map": pairs }), format!("map found: {text}"))
        }
        SearchOutcome::NoneExists => (json!({ "outcome": "none" }), "no map exists".into()),
        SearchOutcome::BudgetExceeded { expansions } => (
            json!({ "outcome": "budget-exceeded", "expansions": expansions }),
            format!("budget exceeded after {expansions} expansions"),
        ),
    }
}

fn parse_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::new(2, format!("bad range {s:?}; use a..b or a single number"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k.min(n + 1)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn kneser_table(ns: &[usize], ks: &[usize], max_vertices: usize) -> Result<(Vec<Value>, String), Failure> {
    let total: u128 = ns.iter().flat_map(|&n| ks.iter().map(move |&k| if k >= 1 && k <= n { binomial(n, k) } else { 0 })).sum();
    if total > max_vertices as u128 {
        return Err(nbhd::Error::ResourceLimit { what: "Kneser vertex", count: total.min(usize::MAX as u128) as usize, limit: max_vertices }.into());
    }
    let mut rows = Vec::new();
    let mut text = format!("{:>3} {:>3} {:>8} {:>8} {:>8} {:>5} {:>4} certificate\n", "n", "k", "vertices", "formula", "bfs", "agree", "r");
    for &n in ns {
        for &k in ks {
            if k == 0 || k > n {
                continue;
            }
            let g = make_kneser(n, k)?;
            let formula = kneser_odd_girth_formula(n, k);
            let bfs = odd_girth(&g);
            let r = (n > 2 * k && k > 1 && (k - 1) % (n - 2 * k) == 0).then(|| (k - 1) / (n - 2 * k));
            let cert = r.is_some();
            text += &format!(
                "{n:>3} {k:>3} {:>8} {:>8} {:>8} {:>5} {:>4} {}\n",
                g.vertex_count(),
                formula.to_string(),
                bfs.to_string(),
                formula == bfs,
                r.map_or("-".to_string(), |r| r.to_string()),
                if cert { "active" } else { "none" }
            );
            rows.push(json!({
                "n": n, "k": k, "vertices": g.vertex_count(),
                "odd_girth_formula": formula, "odd_girth_bfs": bfs, "agree": formula == bfs,
                "r": r, "certificate": cert,
            }));
        }
    }
    Ok((rows, text))
}

//! `pautmon` — command-line interface to the partial automorphism monoid
//! toolkit.
//!
//! Every subcommand writes machine-readable JSON to stdout and a short
//! human-readable summary to stderr; richer text renderings (eggbox grids,
//! element lists in cycle–path notation) appear on stderr behind
//! `--pretty`. Exit codes: 0 for success, 1 for a negative mathematical
//! verdict on valid input (conditions fail, monoids not isomorphic), 2 for
//! input or usage errors. Stdout is byte-identical across runs and across
//! `--jobs` settings.

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pautmon::characterize::{
    build_colored_digraph, build_graph, check_condition_u, check_condition_u_definitional,
    check_digraph_conditions, check_graph_conditions, paut_isomorphic, realize_abstract,
    Realized, TheoremKind,
};
use pautmon::graphs::{
    all_labeled_graphs, nonisomorphic_graphs, parse_graph6, ColoredDigraph, Graph,
};
use pautmon::green::{dclass_subgraph_correspondence, eggbox_json, green_structure, render_eggbox};
use pautmon::monoid::{table_from_submonoid, table_isomorphism, InverseMonoid, MulTable};
use pautmon::paut::{
    enumerate_paut_by_filter, enumerate_paut_with_limit, InverseSubmonoid,
    DEFAULT_ENUMERATION_LIMIT,
};
use pautmon::pperm::GroundSet;
use pautmon::recon::{
    deck, find_deck_counterexamples, paut_deck, search_corpus, validate_paut_deck, Predicate,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;

/// Text representation used for graph inputs and for constructions embedded
/// in output JSON. `json` selects the structured input form (monoid dump or
/// multiplication table) where a subcommand accepts one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
    Json,
}

#[derive(Parser)]
#[command(
    name = "pautmon",
    version,
    about = "Partial automorphism monoids of finite graphs and edge-colored digraphs",
    after_help = "Exit codes: 0 success, 1 negative mathematical verdict, 2 input/usage error.\n\
                  Every flag is mirrored by an environment variable: PAUTMON_FORMAT,\n\
                  PAUTMON_JOBS, PAUTMON_LIMIT, PAUTMON_VALIDATE, PAUTMON_PRETTY."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph text format (and structured-input selector).
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6, env = "PAUTMON_FORMAT")]
    format: Format,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "PAUTMON_JOBS")]
    jobs: Option<usize>,

    /// Override the soft enumeration cap on the ground-set size.
    #[arg(long, global = true, env = "PAUTMON_LIMIT")]
    limit: Option<usize>,

    /// Run oracle cross-checks where a subcommand has one.
    #[arg(long, global = true, env = "PAUTMON_VALIDATE")]
    validate: bool,

    /// Render human-readable detail (eggboxes, element lists) on stderr.
    #[arg(long, global = true, env = "PAUTMON_PRETTY")]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the partial automorphism monoid of a graph (or, with
    /// --digraph, an edge-colored digraph); prints the monoid dump.
    Enumerate {
        /// Input path, or "-" for stdin.
        input: String,
        /// Read the edge list as a colored digraph arc list.
        #[arg(long)]
        digraph: bool,
    },
    /// Green's relations of a graph's monoid (or of a monoid dump with
    /// --format json): eggbox grids, class poset, heights.
    Green {
        /// Input path, or "-" for stdin.
        input: String,
    },
    /// Check the graph-realizability conditions of a monoid dump (or the
    /// digraph conditions with --digraph). Exit 1 when any fails.
    Check {
        /// Monoid dump path, or "-" for stdin.
        input: String,
        /// Check the digraph conditions (fullness and join closure) only.
        #[arg(long)]
        digraph: bool,
    },
    /// Build the graph (or, with --digraph, the edge-colored digraph)
    /// realizing a monoid dump. Exit 1 when the conditions fail.
    Build {
        /// Monoid dump path, or "-" for stdin.
        input: String,
        /// Build an edge-colored digraph from the digraph conditions.
        #[arg(long)]
        digraph: bool,
    },
    /// Decide whether an abstract multiplication table is the partial
    /// automorphism monoid of a graph or digraph, and build the witness.
    Realize {
        /// Table JSON path, or "-" for stdin.
        input: String,
    },
    /// Atom actions of the restricted Munn representation of a table.
    Munn {
        /// Table JSON path, or "-" for stdin.
        input: String,
    },
    /// Whether two graphs have isomorphic partial automorphism monoids
    /// (i.e. are isomorphic or complement-isomorphic). Exit 1 when not.
    Pautiso {
        /// First graph path, or "-" for stdin.
        a: String,
        /// Second graph path, or "-" for stdin (at most one of the two).
        b: String,
    },
    /// The multiset of vertex-deleted subgraphs of a graph.
    Deck {
        /// Input path, or "-" for stdin.
        input: String,
    },
    /// The monoid deck: partial automorphism monoids of the vertex-deleted
    /// subgraphs, realized inside the ambient monoid.
    Pautdeck {
        /// Input path, or "-" for stdin.
        input: String,
    },
    /// Scan a graph6 stream (or the internal generator) for graphs with
    /// pseudo-similar vertices; emits JSON-lines matches.
    Pseudosim {
        /// graph6 stream path, or "-" for stdin.
        input: Option<String>,
        /// Require k mutually pseudo-similar vertices instead of a pair.
        #[arg(long)]
        k: Option<usize>,
        /// Scan the canonical representatives on this many vertices
        /// instead of reading a stream.
        #[arg(long)]
        generate: Option<usize>,
    },
    /// Deck counterexamples: pairs with equal monoid decks but
    /// non-isomorphic monoids, either exhaustively on n vertices (--n) or
    /// streaming a graph6 corpus for earlier deck partners.
    Deckcex {
        /// Exhaustive search over all n-vertex graphs up to
        /// isomorphism-or-complement.
        #[arg(long)]
        n: Option<usize>,
        /// graph6 stream path, or "-" for stdin.
        input: Option<String>,
    },
    /// Run the built-in oracle cross-check suite. Exit 1 on any failure.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        // Sizing can only happen once per process; a failure means a pool
        // already exists, which is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Enumerate { input, digraph } => cmd_enumerate(cli, input, *digraph),
        Command::Green { input } => cmd_green(cli, input),
        Command::Check { input, digraph } => cmd_check(cli, input, *digraph),
        Command::Build { input, digraph } => cmd_build(cli, input, *digraph),
        Command::Realize { input } => cmd_realize(cli, input),
        Command::Munn { input } => cmd_munn(cli, input),
        Command::Pautiso { a, b } => cmd_pautiso(cli, a, b),
        Command::Deck { input } => cmd_deck(cli, input),
        Command::Pautdeck { input } => cmd_pautdeck(cli, input),
        Command::Pseudosim { input, k, generate } => {
            cmd_pseudosim(cli, input.as_deref(), *k, *generate)
        }
        Command::Deckcex { n, input } => cmd_deckcex(cli, *n, input.as_deref()),
        Command::Selftest => cmd_selftest(),
    }
}

// ---------------------------------------------------------------- inputs --

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn first_graph6_line(text: &str) -> Result<&str, String> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| "empty graph6 input".to_string())
}

fn parse_graph_input(text: &str, format: Format) -> Result<Graph, String> {
    match format {
        Format::Graph6 => parse_graph6(first_graph6_line(text)?).map_err(|e| e.to_string()),
        Format::Edgelist => Graph::parse_edgelist(text).map_err(|e| e.to_string()),
        Format::Json => Err("this input is a graph; use --format graph6 or edgelist".into()),
    }
}

fn parse_digraph_input(text: &str, format: Format) -> Result<ColoredDigraph, String> {
    match format {
        Format::Graph6 => Ok(parse_graph6(first_graph6_line(text)?)
            .map_err(|e| e.to_string())?
            .to_digraph()),
        Format::Edgelist => ColoredDigraph::parse_edgelist(text).map_err(|e| e.to_string()),
        Format::Json => Err("this input is a digraph; use --format graph6 or edgelist".into()),
    }
}

fn read_dump(path: &str) -> Result<InverseSubmonoid, String> {
    InverseSubmonoid::from_dump_json(&read_input(path)?).map_err(|e| e.to_string())
}

fn read_table(path: &str) -> Result<MulTable, String> {
    MulTable::from_json(&read_input(path)?).map_err(|e| e.to_string())
}

fn enumerate(cli: &Cli, d: &ColoredDigraph) -> Result<InverseSubmonoid, String> {
    enumerate_paut_with_limit(d, cli.limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT))
        .map_err(|e| e.to_string())
}

/// Renders a graph for embedding in output JSON: graph6 unless the
/// edge-list format was chosen.
fn render_graph(g: &Graph, format: Format) -> Result<String, String> {
    match format {
        Format::Edgelist => Ok(g.format_edgelist()),
        _ => pautmon::graphs::format_graph6(g).map_err(|e| e.to_string()),
    }
}

fn element_strings(s: &InverseSubmonoid) -> Vec<String> {
    s.elements().iter().map(|f| f.to_string()).collect()
}

// ----------------------------------------------------------- subcommands --

fn cmd_enumerate(cli: &Cli, input: &str, digraph: bool) -> Result<u8, String> {
    let text = read_input(input)?;
    let d = if digraph {
        parse_digraph_input(&text, cli.format)?
    } else {
        parse_graph_input(&text, cli.format)?.to_digraph()
    };
    let s = enumerate(cli, &d)?;
    if cli.validate {
        let oracle = enumerate_paut_by_filter(&d).map_err(|e| e.to_string())?;
        if s.elements() != oracle.elements() {
            return Err("validation failed: backtracking and filtering enumerations disagree"
                .to_string());
        }
        eprintln!("validate: filtering oracle agrees ({} elements)", s.len());
    }
    println!("{}", s.to_dump_json());
    eprintln!(
        "monoid on {} points: {} elements, per-rank counts {:?}",
        s.ground().size(),
        s.len(),
        s.rank_counts()
    );
    if cli.pretty {
        eprintln!("elements: {}", element_strings(&s).join(", "));
    }
    Ok(EXIT_OK)
}

fn cmd_green(cli: &Cli, input: &str) -> Result<u8, String> {
    let text = read_input(input)?;
    let (s, labels) = match cli.format {
        Format::Json => (
            InverseSubmonoid::from_dump_json(&text).map_err(|e| e.to_string())?,
            None,
        ),
        _ => {
            let g = parse_graph_input(&text, cli.format)?;
            let s = enumerate(cli, &g.to_digraph())?;
            let gs = green_structure(&s);
            let labels: Vec<String> = dclass_subgraph_correspondence(&g, &s, &gs)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|card| card.canonical_g6())
                .collect();
            (s, Some(labels))
        }
    };
    let gs = green_structure(&s);
    println!("{}", eggbox_json(&gs, labels.as_deref()));
    eprintln!(
        "{} elements in {} D-classes, heights 0..={}",
        s.len(),
        gs.dclasses.len(),
        gs.heights.iter().max().copied().unwrap_or(0)
    );
    if cli.pretty {
        eprint!("{}", render_eggbox(&s, &gs, labels.as_deref()));
    }
    Ok(EXIT_OK)
}

fn cmd_check(cli: &Cli, input: &str, digraph: bool) -> Result<u8, String> {
    let s = read_dump(input)?;
    let report = if digraph {
        check_digraph_conditions(&s).map_err(|e| e.to_string())?
    } else {
        check_graph_conditions(&s).map_err(|e| e.to_string())?
    };
    if cli.validate {
        validate_join_condition(&s)?;
    }
    println!("{}", report.to_json());
    let pass = report.all_pass();
    eprintln!(
        "{}",
        if pass {
            "all conditions pass".to_string()
        } else {
            report.failure_summary()
        }
    );
    if cli.pretty {
        eprintln!("{report}");
    }
    Ok(if pass { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Cross-checks the optimized join-closure verdict against the
/// quantifier-literal reference implementation (they agree on full
/// monoids, which is the only case the theorems use).
fn validate_join_condition(s: &InverseSubmonoid) -> Result<(), String> {
    if !pautmon::characterize::check_full(s).pass {
        eprintln!("validate: monoid not full; join-closure oracle skipped");
        return Ok(());
    }
    let fast = check_condition_u(s).map_err(|e| e.to_string())?;
    let slow = check_condition_u_definitional(s).map_err(|e| e.to_string())?;
    if fast != slow {
        return Err(format!(
            "validation failed: join-closure checkers disagree ({fast:?} vs {slow:?})"
        ));
    }
    eprintln!("validate: definitional join-closure oracle agrees");
    Ok(())
}

fn cmd_build(cli: &Cli, input: &str, digraph: bool) -> Result<u8, String> {
    let s = read_dump(input)?;
    let mut report = if digraph {
        check_digraph_conditions(&s).map_err(|e| e.to_string())?
    } else {
        check_graph_conditions(&s).map_err(|e| e.to_string())?
    };
    if !report.all_pass() {
        println!("{}", report.to_json());
        eprintln!("{}", report.failure_summary());
        return Ok(EXIT_NEGATIVE);
    }
    if digraph {
        let d = build_colored_digraph(&s).map_err(|e| e.to_string())?;
        if cli.validate {
            let back = enumerate(cli, &d)?;
            if back.elements() != s.elements() {
                return Err(
                    "validation failed: the built digraph's monoid differs from the input"
                        .to_string(),
                );
            }
            eprintln!("validate: rebuilt monoid matches element-for-element");
        }
        report.construction = Some(d.format_edgelist());
        println!("{}", report.to_json());
        eprintln!(
            "built digraph on {} vertices with {} colors",
            d.n(),
            d.colors()
        );
    } else {
        let g = build_graph(&s).map_err(|e| e.to_string())?;
        if cli.validate {
            let back = enumerate(cli, &g.to_digraph())?;
            if back.elements() != s.elements() {
                return Err(
                    "validation failed: the built graph's monoid differs from the input"
                        .to_string(),
                );
            }
            eprintln!("validate: rebuilt monoid matches element-for-element");
        }
        report.construction = Some(render_graph(&g, cli.format)?);
        println!("{}", report.to_json());
        eprintln!("built graph on {} vertices with {} edges", g.n(), g.edges().len());
    }
    Ok(EXIT_OK)
}

fn cmd_realize(cli: &Cli, input: &str) -> Result<u8, String> {
    let table = read_table(input)?;
    let m = table.m;
    let realization = realize_abstract(&table).map_err(|e| e.to_string())?;
    let mut report = realization.report;
    if let Some(Realized::Graph(g)) = &realization.realized {
        report.construction = Some(render_graph(g, cli.format)?);
    }
    println!("{}", report.to_json());
    match report.theorem {
        TheoremKind::Graph => eprintln!("realized: a graph ({} table elements)", m),
        TheoremKind::Digraph => eprintln!("realized: an edge-colored digraph ({m} table elements)"),
        TheoremKind::None => eprintln!("{}", report.failure_summary()),
    }
    if cli.pretty {
        eprintln!("{report}");
    }
    Ok(if report.theorem == TheoremKind::None {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn cmd_munn(_cli: &Cli, input: &str) -> Result<u8, String> {
    let table = read_table(input)?;
    let monoid = InverseMonoid::from_table(table).map_err(|e| e.to_string())?;
    match monoid.restricted_munn() {
        Ok(actions) => {
            let atoms = actions
                .first()
                .map(|f| f.ground().size())
                .unwrap_or_default();
            let rendered: Vec<String> = actions.iter().map(|f| f.to_string()).collect();
            let out = json!({
                "atom_count": atoms,
                "actions": rendered,
                "boolean": monoid.is_boolean(),
                "fundamental": monoid.is_fundamental(),
            });
            println!("{out}");
            eprintln!(
                "{} elements acting on {} atoms",
                monoid.len(),
                atoms
            );
            Ok(EXIT_OK)
        }
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            eprintln!("no restricted representation: {e}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_pautiso(cli: &Cli, a: &str, b: &str) -> Result<u8, String> {
    if a == "-" && b == "-" {
        return Err("at most one of the two graphs can come from stdin".into());
    }
    let ga = parse_graph_input(&read_input(a)?, cli.format)?;
    let gb = parse_graph_input(&read_input(b)?, cli.format)?;
    let direct = ga.is_isomorphic(&gb);
    let through_complement = ga.is_isomorphic(&gb.complement());
    let verdict = direct.is_some() || through_complement.is_some();
    // Internal consistency with the library-level predicate.
    assert_eq!(verdict, paut_isomorphic(&ga, &gb));
    if cli.validate {
        validate_pautiso(&ga, &gb, verdict)?;
    }
    let out = match (&direct, &through_complement) {
        (Some(w), _) => json!({
            "isomorphic": true,
            "via": "isomorphism",
            "witness": w.iter().map(|v| v + 1).collect::<Vec<_>>(),
        }),
        (None, Some(w)) => json!({
            "isomorphic": true,
            "via": "complement",
            "witness": w.iter().map(|v| v + 1).collect::<Vec<_>>(),
        }),
        (None, None) => json!({ "isomorphic": false }),
    };
    println!("{out}");
    eprintln!(
        "monoids {}",
        if verdict { "isomorphic" } else { "not isomorphic" }
    );
    Ok(if verdict { EXIT_OK } else { EXIT_NEGATIVE })
}

/// Brute-force table-isomorphism oracle for small graphs.
fn validate_pautiso(ga: &Graph, gb: &Graph, verdict: bool) -> Result<(), String> {
    if ga.n() > 3 || gb.n() > 3 {
        eprintln!("validate: table oracle limited to 3 vertices; skipped");
        return Ok(());
    }
    let ta = table_from_submonoid(
        &pautmon::paut::enumerate_paut(&ga.to_digraph()).map_err(|e| e.to_string())?,
    );
    let tb = table_from_submonoid(
        &pautmon::paut::enumerate_paut(&gb.to_digraph()).map_err(|e| e.to_string())?,
    );
    let ma = InverseMonoid::from_table(ta).map_err(|e| e.to_string())?;
    let mb = InverseMonoid::from_table(tb).map_err(|e| e.to_string())?;
    if table_isomorphism(&ma, &mb).is_some() != verdict {
        return Err("validation failed: table-isomorphism oracle disagrees".to_string());
    }
    eprintln!("validate: table-isomorphism oracle agrees");
    Ok(())
}

fn cmd_deck(cli: &Cli, input: &str) -> Result<u8, String> {
    let g = parse_graph_input(&read_input(input)?, cli.format)?;
    let d = deck(&g);
    let cards: Vec<serde_json::Value> = d
        .entries
        .iter()
        .map(|e| {
            json!({
                "deleted": e.deleted + 1,
                "graph6": e.card.canonical_g6(),
            })
        })
        .collect();
    let out = json!({
        "n": g.n(),
        "cards": cards,
        "multiset": d.multiset(),
        "multiset_up_to_complement": d.multiset_up_to_complement(),
    });
    println!("{out}");
    eprintln!("{} cards", d.entries.len());
    Ok(EXIT_OK)
}

fn cmd_pautdeck(cli: &Cli, input: &str) -> Result<u8, String> {
    let g = parse_graph_input(&read_input(input)?, cli.format)?;
    let d = paut_deck(&g).map_err(|e| e.to_string())?;
    if cli.validate {
        validate_paut_deck(&g, &d).map_err(|e| e.to_string())?;
        eprintln!("validate: every entry matches direct enumeration of its subgraph");
    }
    let entries: Vec<serde_json::Value> = d
        .entries
        .iter()
        .map(|e| {
            json!({
                "deleted": e.deleted + 1,
                "size": e.elements.len(),
                "elements": e.elements.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = json!({ "n": g.n(), "entries": entries });
    println!("{out}");
    let sizes: Vec<usize> = d.entries.iter().map(|e| e.elements.len()).collect();
    eprintln!("{} entries with sizes {:?}", d.entries.len(), sizes);
    Ok(EXIT_OK)
}

/// Reads a corpus: the lines of `input`, or the canonical representatives
/// on `generate` vertices.
fn corpus_lines(
    input: Option<&str>,
    generate: Option<usize>,
) -> Result<Vec<String>, String> {
    match (input, generate) {
        (Some(_), Some(_)) => Err("give an input stream or --generate, not both".into()),
        (None, None) => Err("give an input stream or --generate".into()),
        (Some(path), None) => Ok(read_input(path)?.lines().map(str::to_string).collect()),
        (None, Some(n)) => Ok(nonisomorphic_graphs(n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(Graph::canonical_g6)
            .collect()),
    }
}

fn run_corpus_search(lines: &[String], predicate: Predicate) -> Result<u8, String> {
    let matches = search_corpus(lines.iter().map(String::as_str), predicate, None)
        .map_err(|e| e.to_string())?;
    for m in &matches {
        println!("{}", m.to_json());
    }
    let scanned = lines.iter().filter(|l| !l.trim().is_empty()).count();
    eprintln!("{} of {} graphs matched", matches.len(), scanned);
    Ok(EXIT_OK)
}

fn cmd_pseudosim(
    cli: &Cli,
    input: Option<&str>,
    k: Option<usize>,
    generate: Option<usize>,
) -> Result<u8, String> {
    let _ = cli;
    let lines = corpus_lines(input, generate)?;
    let predicate = match k {
        None => Predicate::PseudoSimilarPair,
        Some(k) => Predicate::MutuallyPseudoSimilar(k),
    };
    run_corpus_search(&lines, predicate)
}

fn cmd_deckcex(cli: &Cli, n: Option<usize>, input: Option<&str>) -> Result<u8, String> {
    let _ = cli;
    match (n, input) {
        (Some(_), Some(_)) => Err("give --n or an input stream, not both".into()),
        (None, None) => Err("give --n or an input stream".into()),
        (None, Some(path)) => {
            let lines = corpus_lines(Some(path), None)?;
            run_corpus_search(&lines, Predicate::DeckPartner)
        }
        (Some(n), None) => {
            let pairs = find_deck_counterexamples(n).map_err(|e| e.to_string())?;
            let rendered: Vec<[String; 2]> = pairs
                .iter()
                .map(|(a, b)| [a.canonical_g6(), b.canonical_g6()])
                .collect();
            println!("{}", json!({ "n": n, "pairs": rendered }));
            eprintln!("{} counterexample pairs on {} vertices", rendered.len(), n);
            Ok(EXIT_OK)
        }
    }
}

// -------------------------------------------------------------- selftest --

fn cmd_selftest() -> Result<u8, String> {
    let checks: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("enumeration-filter-agreement", selftest_enumeration),
        ("symmetric-monoid-counts", selftest_counts),
        ("graph-round-trip", selftest_round_trip),
        ("monoid-isomorphism-oracle", selftest_table_oracle),
        ("join-closure-definitional", selftest_join_closure),
        ("deck-counterexample-pins", selftest_deck_pins),
    ];
    let mut results = Vec::new();
    let mut all = true;
    for (name, check) in checks {
        let outcome = check();
        match &outcome {
            Ok(()) => eprintln!("ok   {name}"),
            Err(e) => {
                eprintln!("FAIL {name}: {e}");
                all = false;
            }
        }
        results.push(json!({ "name": name, "pass": outcome.is_ok() }));
    }
    println!("{}", json!({ "checks": results, "pass": all }));
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}

fn selftest_enumeration() -> Result<(), String> {
    for n in 1..=4usize {
        for g in all_labeled_graphs(n).map_err(|e| e.to_string())? {
            let d = g.to_digraph();
            let fast = pautmon::paut::enumerate_paut(&d).map_err(|e| e.to_string())?;
            let slow = enumerate_paut_by_filter(&d).map_err(|e| e.to_string())?;
            if fast.elements() != slow.elements() {
                return Err(format!("disagreement on {}", g.canonical_g6()));
            }
        }
    }
    Ok(())
}

fn selftest_counts() -> Result<(), String> {
    // |I_n| = sum over k of C(n,k)^2 k!.
    let binomial = |n: usize, k: usize| -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    };
    for n in 2..=6usize {
        let formula: usize = (0..=n)
            .map(|k| {
                let c = binomial(n, k);
                c * c * (1..=k).product::<usize>()
            })
            .sum();
        let kn = Graph::complete(n).map_err(|e| e.to_string())?;
        let s = pautmon::paut::enumerate_paut(&kn.to_digraph()).map_err(|e| e.to_string())?;
        if s.len() != formula {
            return Err(format!("n={n}: enumerated {} expected {formula}", s.len()));
        }
    }
    Ok(())
}

fn selftest_round_trip() -> Result<(), String> {
    for n in 2..=4usize {
        for g in all_labeled_graphs(n).map_err(|e| e.to_string())? {
            let s = pautmon::paut::enumerate_paut(&g.to_digraph()).map_err(|e| e.to_string())?;
            let report = check_graph_conditions(&s).map_err(|e| e.to_string())?;
            if !report.all_pass() {
                return Err(format!("{}: {}", g.canonical_g6(), report.failure_summary()));
            }
            let built = build_graph(&s).map_err(|e| e.to_string())?;
            if built != g && built != g.complement() {
                return Err(format!(
                    "{}: built {} instead",
                    g.canonical_g6(),
                    built.canonical_g6()
                ));
            }
        }
    }
    Ok(())
}

fn selftest_table_oracle() -> Result<(), String> {
    let mut graphs = Vec::new();
    for n in 1..=3usize {
        graphs.extend(nonisomorphic_graphs(n).map_err(|e| e.to_string())?);
    }
    let tables: Vec<InverseMonoid> = graphs
        .iter()
        .map(|g| {
            let s = pautmon::paut::enumerate_paut(&g.to_digraph()).map_err(|e| e.to_string())?;
            InverseMonoid::from_table(table_from_submonoid(&s)).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let by_graphs = paut_isomorphic(&graphs[i], &graphs[j]);
            let by_tables = table_isomorphism(&tables[i], &tables[j]).is_some();
            if by_graphs != by_tables {
                return Err(format!(
                    "{} vs {}: graphs say {by_graphs}, tables say {by_tables}",
                    graphs[i].canonical_g6(),
                    graphs[j].canonical_g6()
                ));
            }
        }
    }
    Ok(())
}

fn selftest_join_closure() -> Result<(), String> {
    let mut monoids = Vec::new();
    for n in 1..=3usize {
        for g in all_labeled_graphs(n).map_err(|e| e.to_string())? {
            monoids.push(
                pautmon::paut::enumerate_paut(&g.to_digraph()).map_err(|e| e.to_string())?,
            );
        }
    }
    for g in nonisomorphic_graphs(4).map_err(|e| e.to_string())? {
        monoids.push(pautmon::paut::enumerate_paut(&g.to_digraph()).map_err(|e| e.to_string())?);
    }
    // A known violator: the rank ≤ 2 elements of the full symmetric
    // inverse monoid on 3 points, plus the identity.
    let ground = GroundSet::new(3).map_err(|e| e.to_string())?;
    let mut low: Vec<_> = pautmon::pperm::all_partial_perms(ground)
        .into_iter()
        .filter(|f| f.rank() <= 2)
        .collect();
    low.push(pautmon::pperm::PartialPerm::identity(ground));
    monoids.push(InverseSubmonoid::from_elements(ground, low).map_err(|e| e.to_string())?);

    for s in &monoids {
        let fast = check_condition_u(s).map_err(|e| e.to_string())?;
        let slow = check_condition_u_definitional(s).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("checkers disagree: {fast:?} vs {slow:?}"));
        }
    }
    Ok(())
}

fn selftest_deck_pins() -> Result<(), String> {
    let render = |pairs: &[(Graph, Graph)]| -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|(a, b)| (a.canonical_g6(), b.canonical_g6()))
            .collect()
    };
    let two = find_deck_counterexamples(2).map_err(|e| e.to_string())?;
    if !two.is_empty() {
        return Err(format!("expected none on 2 vertices, got {:?}", render(&two)));
    }
    let three = render(&find_deck_counterexamples(3).map_err(|e| e.to_string())?);
    let expect3 = vec![("B?".to_string(), "BG".to_string())];
    if three != expect3 {
        return Err(format!("on 3 vertices expected {expect3:?}, got {three:?}"));
    }
    let four = render(&find_deck_counterexamples(4).map_err(|e| e.to_string())?);
    let expect4 = vec![
        ("CB".to_string(), "CF".to_string()),
        ("CK".to_string(), "CL".to_string()),
    ];
    if four != expect4 {
        return Err(format!("on 4 vertices expected {expect4:?}, got {four:?}"));
    }
    Ok(())
}


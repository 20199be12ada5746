//! Command-line interface: matching, containment checking, containment-based
//! match extraction, equivalence, and instance generation.
//!
//! Exit codes: 0 for a positive verdict or success, 1 for a negative
//! verdict, 2 for usage, parse, or validation errors.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cgp_cli::{parse_graph, parse_match_result, parse_pattern};
use cgp_cli::{serialize_graph, serialize_match_result, serialize_pattern};
use cgp_core::strongc::{sc_analysis, PredicateStatus, Polarity};
use cgp_core::testkit::{gen_cgp, gen_graph, GenParams};
use cgp_core::{
    cond_sim, equivalent_cgp, focus_equivalent, sc_match, Cgp, ContainmentMapping, DataGraph,
    EdgeKey, FocusedQgp, MatchResult, Relation,
};

#[derive(Parser)]
#[command(name = "cgp", version, about = "Conditional graph patterns: matching and containment")]
struct Cli {
    /// Output style; compact prints canonical documents only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Compact,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Match a pattern against a data graph and print the match result.
    Match {
        pattern: String,
        graph: String,
    },
    /// Check traditional containment of the first pattern in the second.
    Contains {
        pattern1: String,
        pattern2: String,
    },
    /// Check strong containment and report per-predicate evaluability.
    Scontains {
        pattern1: String,
        pattern2: String,
    },
    /// Extract the first pattern's match result from a match result of the
    /// second, without the data graph.
    Scmatch {
        pattern1: String,
        pattern2: String,
        /// Match-result file produced by `match` with the second pattern.
        #[arg(long)]
        result: String,
    },
    /// Check equivalence (bidirectional containment), or query-focus
    /// equivalence when two focus nodes are given.
    Equiv {
        pattern1: String,
        pattern2: String,
        /// Focus node ids, one per pattern.
        #[arg(long, num_args = 2)]
        focus: Option<Vec<String>>,
    },
    /// Generate a random graph or pattern document.
    Gen(GenArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "pattern")]
    graph: bool,
    #[arg(long)]
    pattern: bool,
    /// Seed; the CGP_SEED environment variable overrides it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "G")]
    name: String,
    /// Node count range, as LO:HI.
    #[arg(long, default_value = "3:6", value_parser = parse_usize_range)]
    nodes: (usize, usize),
    #[arg(long, default_value_t = 0.15)]
    density: f64,
    #[arg(long, default_value_t = 4)]
    labels: usize,
    #[arg(long, default_value_t = 3)]
    attrs: usize,
    /// Integer attribute value range, as LO:HI.
    #[arg(long, default_value = "0:31", value_parser = parse_i64_range)]
    values: (i64, i64),
    /// Counting quantifier range, as LO:HI.
    #[arg(long, default_value = "1:2", value_parser = parse_u32_range)]
    cq: (u32, u32),
    /// Predicate count range, as LO:HI.
    #[arg(long, default_value = "0:3", value_parser = parse_usize_range)]
    preds: (usize, usize),
    /// Predicate size range (non-focus nodes), as LO:HI.
    #[arg(long, default_value = "1:2", value_parser = parse_usize_range)]
    pred_size: (usize, usize),
    /// Probability that a predicate is negative.
    #[arg(long, default_value_t = 0.3)]
    neg_share: f64,
}

fn parse_usize_range(s: &str) -> Result<(usize, usize), String> {
    parse_range(s)
}

fn parse_i64_range(s: &str) -> Result<(i64, i64), String> {
    parse_range(s)
}

fn parse_u32_range(s: &str) -> Result<(u32, u32), String> {
    parse_range(s)
}

fn parse_range<T: std::str::FromStr + Copy + PartialOrd>(s: &str) -> Result<(T, T), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.parse::<T>().map_err(|_| "bad lower bound".to_string())?;
    let hi = hi.parse::<T>().map_err(|_| "bad upper bound".to_string())?;
    if hi < lo {
        return Err("upper bound below lower bound".to_string());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_pattern(path: &str) -> Result<Cgp, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let (_, c) = parse_pattern(&text).map_err(|e| format!("{path}: {e}"))?;
    Ok(c)
}

fn load_graph(path: &str) -> Result<DataGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let (_, g) = parse_graph(&text).map_err(|e| format!("{path}: {e}"))?;
    Ok(g)
}

fn print_result(m: &Option<MatchResult>, format: Format) -> ExitCode {
    match m {
        Some(result) => {
            if format == Format::Pretty {
                let nodes: usize = result.node_matches.values().map(|s| s.len()).sum();
                let edges: usize = result.edge_matches.values().map(|s| s.len()).sum();
                println!("# match found: {nodes} node matches, {edges} edge matches");
            }
            print!("{}", serialize_match_result(result));
            ExitCode::SUCCESS
        }
        None => {
            if format == Format::Pretty {
                println!("# no match");
            }
            println!("result");
            ExitCode::from(1)
        }
    }
}

fn print_mapping(mapping: &ContainmentMapping) {
    for (u, image) in &mapping.nodes {
        let targets: Vec<&str> = image.iter().map(String::as_str).collect();
        println!("node {u} => {}", targets.join(", "));
    }
    for (e, image) in &mapping.edges {
        let targets: Vec<String> = image.iter().map(EdgeKey::to_string).collect();
        println!("edge {e} => {}", targets.join(", "));
    }
}

fn print_relation(s: &Relation) {
    for (l, r) in s.pairs() {
        println!("pair {l} {r}");
    }
}

fn print_refinement(tag: char, rel: &BTreeSet<(EdgeKey, EdgeKey)>) {
    for (e1, e2) in rel {
        println!("refine {tag} {e1} => {e2}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Match { pattern, graph } => {
            let c = load_pattern(&pattern)?;
            let g = load_graph(&graph)?;
            let result = cond_sim(&c, &g).map(|(_, m)| m);
            Ok(print_result(&result, cli.format))
        }
        Command::Contains { pattern1, pattern2 } => {
            let c1 = load_pattern(&pattern1)?;
            let c2 = load_pattern(&pattern2)?;
            match cgp_core::t_contained(&c1, &c2) {
                Some((mapping, s)) => {
                    println!("contained");
                    print_mapping(&mapping);
                    print_relation(&s);
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not contained");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Scontains { pattern1, pattern2 } => {
            let c1 = load_pattern(&pattern1)?;
            let c2 = load_pattern(&pattern2)?;
            match sc_analysis(&c1, &c2) {
                None => {
                    println!("not contained");
                    Ok(ExitCode::from(1))
                }
                Some(analysis) => {
                    for (polarity, idx, focus, status) in &analysis.report.predicates {
                        let sign = match polarity {
                            Polarity::Positive => '+',
                            Polarity::Negative => '-',
                        };
                        let text = match status {
                            PredicateStatus::Refined => "refinable".to_string(),
                            PredicateStatus::Eliminated => "eliminable".to_string(),
                            PredicateStatus::Mixed => "refinable and eliminable".to_string(),
                            PredicateStatus::NotEvaluable { uncovered } => {
                                let edges: Vec<String> =
                                    uncovered.iter().map(EdgeKey::to_string).collect();
                                format!("not evaluable (uncovered: {})", edges.join("; "))
                            }
                        };
                        println!("predicate {sign}{idx} on {focus}: {text}");
                    }
                    if analysis.holds() {
                        println!("strongly contained");
                        print_mapping(&analysis.mapping);
                        print_refinement('+', &analysis.rels.r_plus);
                        print_refinement('-', &analysis.rels.r_minus);
                        Ok(ExitCode::SUCCESS)
                    } else {
                        let (focus, edge) = analysis
                            .report
                            .first_uncovered()
                            .expect("a failed verdict names an uncovered edge");
                        println!("not strongly contained: predicate edge {edge} on {focus} is uncovered");
                        Ok(ExitCode::from(1))
                    }
                }
            }
        }
        Command::Scmatch {
            pattern1,
            pattern2,
            result,
        } => {
            let c1 = load_pattern(&pattern1)?;
            let c2 = load_pattern(&pattern2)?;
            let text = fs::read_to_string(&result).map_err(|e| format!("{result}: {e}"))?;
            let m2 = parse_match_result(&text).map_err(|e| format!("{result}: {e}"))?;
            let sc = cgp_core::s_contained(&c1, &c2)
                .ok_or("inconsistent inputs: patterns are not strongly contained")?;
            let extracted = sc_match(&c1, &c2, &sc.mapping, &sc.r_plus, &sc.r_minus, &m2)
                .map_err(|e| e.to_string())?;
            Ok(print_result(&extracted, cli.format))
        }
        Command::Equiv {
            pattern1,
            pattern2,
            focus,
        } => {
            let c1 = load_pattern(&pattern1)?;
            let c2 = load_pattern(&pattern2)?;
            let verdict = match focus {
                None => equivalent_cgp(&c1, &c2),
                Some(foci) => {
                    if !c1.positives().is_empty()
                        || !c1.negatives().is_empty()
                        || !c2.positives().is_empty()
                        || !c2.negatives().is_empty()
                    {
                        return Err("focus equivalence requires predicate-free patterns".into());
                    }
                    for (c, f) in [(&c1, &foci[0]), (&c2, &foci[1])] {
                        if !c.core.contains_node(f) {
                            return Err(format!("focus {f:?} is not a node of its pattern"));
                        }
                    }
                    focus_equivalent(
                        &FocusedQgp::new(c1.core.clone(), &foci[0]),
                        &FocusedQgp::new(c2.core.clone(), &foci[1]),
                    )
                }
            };
            if verdict {
                println!("equivalent");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not equivalent");
                Ok(ExitCode::from(1))
            }
        }
        Command::Gen(args) => {
            if args.graph == args.pattern {
                return Err("pass exactly one of --graph or --pattern".into());
            }
            let seed = match std::env::var("CGP_SEED") {
                Ok(v) => v
                    .parse::<u64>()
                    .map_err(|_| format!("CGP_SEED must be an integer, got {v:?}"))?,
                Err(_) => args.seed,
            };
            let params = GenParams {
                nodes: args.nodes,
                edge_density: args.density,
                labels: args.labels,
                attrs: args.attrs,
                int_range: args.values,
                cq: args.cq,
                predicates: args.preds,
                predicate_size: args.pred_size,
                negative_share: args.neg_share,
                seed,
            };
            if args.graph {
                print!("{}", serialize_graph(&args.name, &gen_graph(&params)));
            } else {
                print!("{}", serialize_pattern(&args.name, &gen_cgp(&params)));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

//! `assoc-color`: command-line front end for the assoc-color library.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
//! bad input.

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use assoc_color::assoc::{acceptable, color_graph, color_graph_in, graph_diameter, max_dimension, zero_set, Skeleton};
use assoc_color::coloring::{
    classify_vector, colorings_of_pair, edge_coloring_from_vector, is_valid, normalized_colorings, ColorVector,
};
use assoc_color::enumeration::{
    count_acceptable, count_flexible, count_rigid, jacobsthal, max_coloring_search, normalized_vectors, zero_set_extremes,
    ZeroSetExtremes, DEFAULT_MAX_SEARCH_VERTICES, MAX_ZERO_SET_CARETS, SLOW_MAX_SEARCH_VERTICES,
};
use assoc_color::maps::{
    closed_form, count_vertex_colorings, fixtures, glued_cubic_graph, is_prime, prime_factorization, triple_census,
    v_triple_colorings, Family, VTriple,
};
use assoc_color::paths::{find_sign_consistent_path, is_balanced, pentagon_move, sign_structure, square_moves_at};
use assoc_color::thompson::{path_evaluate, TreePair, Word};
use assoc_color::tree::{all_trees, BinaryTree};
use assoc_color::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "assoc-color", version, about = "Tree pairs, associahedra and Tait colorings")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit Graphviz DOT where the command supports it.
    #[arg(long, global = true)]
    dot: bool,
    /// Emit CSV where the command supports it.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for sweeps; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or inspect binary trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Validity, classification and colorings of vectors, trees and pairs.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Find, evaluate and rewrite edge paths.
    #[command(subcommand)]
    Path(PathCmd),
    /// Sign structure of a word and its balance.
    #[command(visible_alias = "sign-structure")]
    Sigma { word: String },
    /// Color graph of a vector: vertices, edges, zero set, diameter.
    #[command(visible_alias = "color-graph")]
    Graph { vector: String },
    /// Exploratory sweeps that emit data without asserting anything.
    #[command(subcommand)]
    Explore(ExploreCmd),
    /// Planar maps: factoring, primality, chromatic counts, leaf-permuted triples.
    #[command(subcommand)]
    Map(MapCmd),
    /// Closed counts.
    Counts(CountsArgs),
    /// Largest coloring counts among prime pairs with a given dual size.
    MiSearch(MiArgs),
    /// Run named invariant suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum TreesCmd {
    /// Every tree with the given number of carets, in canonical order.
    List { carets: usize },
    /// Leaves, shadow intervals and available rotations of one tree.
    Show { tree: String },
}

#[derive(Subcommand)]
enum ColorCmd {
    /// Whether a vector is valid for a tree, with the induced edge colors.
    Valid { tree: String, vector: String },
    /// Class of a vector: positive-rigid, negative-rigid, flexible or unacceptable.
    Classify { vector: String },
    /// Normalized colorings of one tree.
    Tree { tree: String },
    /// Normalized colorings valid for both trees of a pair.
    Pair { d: String, r: String },
}

#[derive(Subcommand)]
enum PathCmd {
    /// A sign-consistent edge path from D to R, if one exists.
    Find { d: String, r: String },
    /// Trees visited by a word from a start tree.
    Eval { tree: String, word: String },
    /// Square and pentagon rewrites of a word at a position.
    Moves {
        word: String,
        #[arg(long, default_value_t = 0)]
        at: usize,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Prime factors of a pair, innermost first.
    Factor { d: String, r: String },
    /// Whether a pair is prime.
    Prime { d: String, r: String },
    /// Vertex 4-colorings of a named triangulation, with the closed form.
    Chromatic {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Colorings of a named leaf-permuted triple fixture.
    VCheck { fixture: FixtureName },
    /// Uncolorable leaf-permuted triples under several counting conventions.
    Census {
        #[arg(long, default_value_t = 6)]
        leaves: usize,
    },
}

#[derive(Subcommand)]
enum ExploreCmd {
    /// Extremes of the zero-interval count per size, beside floor(n^2/8).
    ZeroSets {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Color graph statistics for every normalized acceptable vector of a length.
    ColorGraphs {
        #[arg(long)]
        len: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureName {
    #[value(name = "noColorV")]
    NoColorV,
    #[value(name = "torusK7")]
    TorusK7,
    #[value(name = "petersenRP2")]
    PetersenRp2,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Acceptable,
    Rigid,
    Flexible,
    Jacobsthal,
}

#[derive(Args)]
struct CountsArgs {
    #[arg(long, value_enum)]
    kind: CountKind,
    #[arg(long)]
    n: usize,
    /// Print every value from the first defined index up to n.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct MiArgs {
    /// Vertex count of the dual triangulation.
    #[arg(long)]
    n: usize,
    /// Write the CSV report to this file.
    #[arg(long)]
    out: Option<String>,
    /// Allow sizes beyond the default bound.
    #[arg(long)]
    slow: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run; all when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Size bound, interpreted per suite.
    #[arg(long = "max-len", alias = "size")]
    max_len: Option<usize>,
}

/// Failures that map to exit code 1.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for CheckFailed {}

fn tree(s: &str) -> Result<BinaryTree> {
    BinaryTree::parse_any(s).with_context(|| format!("bad tree {s:?}"))
}

fn vector(s: &str) -> Result<ColorVector> {
    s.parse().with_context(|| format!("bad vector {s:?}"))
}

fn word(s: &str) -> Result<Word> {
    s.parse().with_context(|| format!("bad word {s:?}"))
}

fn pair(d: &str, r: &str) -> Result<TreePair> {
    Ok(TreePair::new(tree(d)?, tree(r)?)?)
}

struct Out {
    json: bool,
    dot: bool,
    csv: bool,
    w: io::StdoutLock<'static>,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.w, "{}", s.as_ref())?;
        Ok(())
    }

    fn json(&mut self, v: serde_json::Value) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.w, &v)?;
        writeln!(self.w)?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(j) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().is_err() {
            eprintln!("error: could not configure {j} worker threads");
            return ExitCode::from(2);
        }
    }
    let mut out = Out {
        json: cli.json,
        dot: cli.dot,
        csv: cli.csv,
        w: io::stdout().lock(),
    };
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command, out: &mut Out) -> Result<()> {
    match cmd {
        Command::Trees(c) => trees(c, out),
        Command::Color(c) => color(c, out),
        Command::Path(c) => path(c, out),
        Command::Sigma { word: w } => sigma(&w, out),
        Command::Graph { vector: v } => graph(&v, out),
        Command::Map(c) => map(c, out),
        Command::Explore(c) => explore(c, out),
        Command::Counts(a) => counts(a, out),
        Command::MiSearch(a) => mi_search(a, out),
        Command::Verify(a) => verify(a, out),
    }
}

fn trees(cmd: TreesCmd, out: &mut Out) -> Result<()> {
    match cmd {
        TreesCmd::List { carets } => {
            anyhow::ensure!(carets <= 14, "at most 14 carets");
            let list: Vec<String> = all_trees(carets).iter().map(BinaryTree::to_text).collect();
            if out.json {
                return out.json(json!(list));
            }
            for t in list {
                out.line(t)?;
            }
        }
        TreesCmd::Show { tree: s } => {
            let t = tree(&s)?;
            let leaves: Vec<String> = t.leaves().iter().map(|a| a.to_string()).collect();
            let pattern: Vec<String> = t.shadow_pattern()?.iter().map(|i| i.to_string()).collect();
            let rotations: Vec<(String, String)> = t
                .available_rotations()
                .into_iter()
                .map(|r| Ok((r.to_string(), t.rotate(r)?.to_text())))
                .collect::<Result<_>>()?;
            if out.json {
                return out.json(json!({
                    "tree": t.to_text(),
                    "carets": t.caret_count(),
                    "leaves": leaves,
                    "shadow_pattern": pattern,
                    "rotations": rotations.iter().map(|(s, r)| json!({"symbol": s, "result": r})).collect::<Vec<_>>(),
                }));
            }
            out.line(format!("tree {}", t.to_text()))?;
            out.line(format!("carets {}", t.caret_count()))?;
            out.line(format!("leaves {}", leaves.join(" ")))?;
            out.line(format!("shadow pattern {}", pattern.join(" ")))?;
            for (s, r) in rotations {
                out.line(format!("rotation {s} -> {r}"))?;
            }
        }
    }
    Ok(())
}

fn color(cmd: ColorCmd, out: &mut Out) -> Result<()> {
    match cmd {
        ColorCmd::Valid { tree: t, vector: v } => {
            let (t, c) = (tree(&t)?, vector(&v)?);
            let valid = is_valid(&t, &c)?;
            let edges = edge_coloring_from_vector(&t, &c)?;
            let colors: Vec<(String, u8)> = edges.colors.iter().map(|(a, k)| (a.to_string(), *k)).collect();
            if out.json {
                return out.json(json!({"valid": valid, "edge_colors": colors}));
            }
            out.line(if valid { "valid" } else { "invalid" })?;
            for (a, k) in colors {
                out.line(format!("{a} {k}"))?;
            }
        }
        ColorCmd::Classify { vector: v } => {
            let class = classify_vector(&vector(&v)?)?;
            if out.json {
                return out.json(json!({"vector": v, "class": class.to_string()}));
            }
            out.line(class.to_string())?;
        }
        ColorCmd::Tree { tree: t } => {
            let list = normalized_colorings(&tree(&t)?);
            emit_vectors(out, &t, &list)?;
        }
        ColorCmd::Pair { d, r } => {
            let p = pair(&d, &r)?;
            let list = colorings_of_pair(&p);
            emit_vectors(out, &p.to_string(), &list)?;
        }
    }
    Ok(())
}

fn emit_vectors(out: &mut Out, label: &str, list: &[ColorVector]) -> Result<()> {
    let texts: Vec<String> = list.iter().map(ColorVector::to_string).collect();
    if out.json {
        return out.json(json!({"input": label, "count": list.len(), "vectors": texts}));
    }
    if out.csv {
        let mut w = csv::Writer::from_writer(&mut out.w);
        w.write_record(["pair", "count", "vectors"])?;
        w.write_record([label, &list.len().to_string(), &texts.join(" ")])?;
        w.flush()?;
        return Ok(());
    }
    for t in texts {
        out.line(t)?;
    }
    Ok(())
}

fn path(cmd: PathCmd, out: &mut Out) -> Result<()> {
    match cmd {
        PathCmd::Find { d, r } => {
            let (d, r) = (tree(&d)?, tree(&r)?);
            anyhow::ensure!(d.caret_count() == r.caret_count(), "trees must have the same size");
            let found = find_sign_consistent_path(&d, &r);
            if out.json {
                return out.json(json!({"word": found.as_ref().map(Word::to_string)}));
            }
            out.line(found.map_or("none".to_string(), |w| w.to_string()))?;
        }
        PathCmd::Eval { tree: t, word: w } => {
            let visited = path_evaluate(&tree(&t)?, &word(&w)?)?;
            let texts: Vec<String> = visited.iter().map(BinaryTree::to_text).collect();
            if out.json {
                return out.json(json!(texts));
            }
            for t in texts {
                out.line(t)?;
            }
        }
        PathCmd::Moves { word: w, at } => {
            let w = word(&w)?;
            anyhow::ensure!(at < w.len().max(1), "position {at} is past the end of the word");
            let squares: Vec<String> = square_moves_at(&w, at).iter().map(Word::to_string).collect();
            let pentagon = pentagon_move(&w, at).ok().map(|p| p.to_string());
            if out.json {
                return out.json(json!({"square": squares, "pentagon": pentagon}));
            }
            for s in squares {
                out.line(format!("square {s}"))?;
            }
            if let Some(p) = pentagon {
                out.line(format!("pentagon {p}"))?;
            }
        }
    }
    Ok(())
}

fn sigma(w: &str, out: &mut Out) -> Result<()> {
    let w = word(w)?;
    let ss = sign_structure(&w);
    if out.dot {
        write!(out.w, "{}", ss.to_dot())?;
        return Ok(());
    }
    let (balanced, p) = is_balanced(&ss);
    let edges: Vec<(String, String, bool)> = ss.edges.iter().map(|e| (e.a.to_string(), e.b.to_string(), e.positive)).collect();
    if out.json {
        return out.json(json!({
            "word": w.to_string(),
            "balanced": balanced,
            "components": p,
            "support": ss.support.to_text(),
            "edges": edges.iter().map(|(a, b, s)| json!({"a": a, "b": b, "positive": s})).collect::<Vec<_>>(),
        }));
    }
    out.line(if balanced { "balanced" } else { "unbalanced" })?;
    out.line(format!("components {p}"))?;
    out.line(format!("edges {}", edges.len()))?;
    for (a, b, s) in edges {
        out.line(format!("{a} {b} {}", if s { '+' } else { '-' }))?;
    }
    Ok(())
}

fn graph(v: &str, out: &mut Out) -> Result<()> {
    let c = vector(v)?;
    let g = color_graph(&c)?;
    if out.dot {
        write!(out.w, "{}", g.to_dot())?;
        return Ok(());
    }
    let zero = if c.sum() == 0 { None } else { Some(zero_set(&c)?) };
    let diameter = graph_diameter(&g).ok();
    let intervals: Vec<String> = zero.iter().flat_map(|z| z.intervals.iter().map(|i| i.to_string())).collect();
    if out.csv {
        let mut w = csv::Writer::from_writer(&mut out.w);
        w.write_record(GRAPH_CSV_HEADER)?;
        w.write_record(graph_row(&c, g.vertices.len(), g.edges.len(), diameter, zero.as_ref().map(|z| z.vertices.len())))?;
        w.flush()?;
        return Ok(());
    }
    if out.json {
        return out.json(json!({
            "vector": c.to_string(),
            "vertices": g.vertices.iter().map(BinaryTree::to_text).collect::<Vec<_>>(),
            "edges": g.edges,
            "zero_intervals": intervals,
            "zero_vertices": zero.as_ref().map(|z| z.vertices.len()),
            "diameter": diameter,
        }));
    }
    out.line(format!("vertices {}", g.vertices.len()))?;
    out.line(format!("edges {}", g.edges.len()))?;
    out.line(format!("zero intervals {}", intervals.join(" ")))?;
    if let Some(z) = &zero {
        out.line(format!("zero vertices {}", z.vertices.len()))?;
    }
    out.line(format!("diameter {}", diameter.map_or("undefined".to_string(), |d| d.to_string())))?;
    Ok(())
}

const GRAPH_CSV_HEADER: [&str; 5] = ["vector", "vertices", "edges", "diameter", "zero_size"];

fn graph_row(c: &ColorVector, vertices: usize, edges: usize, diameter: Option<usize>, zero: Option<usize>) -> [String; 5] {
    let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
    [c.to_string(), vertices.to_string(), edges.to_string(), opt(diameter), opt(zero)]
}

fn explore(cmd: ExploreCmd, out: &mut Out) -> Result<()> {
    match cmd {
        ExploreCmd::ZeroSets { max_n } => {
            anyhow::ensure!(max_n <= MAX_ZERO_SET_CARETS, "at most {MAX_ZERO_SET_CARETS} carets");
            let rows: Vec<ZeroSetExtremes> = (1..=max_n).into_par_iter().map(zero_set_extremes).collect::<assoc_color::Result<_>>()?;
            let mut w = csv::Writer::from_writer(&mut out.w);
            w.write_record(["n", "max", "min", "floor_n2_over_8", "min_witness", "max_witness"])?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    r.max.to_string(),
                    r.min.to_string(),
                    (r.n * r.n / 8).to_string(),
                    r.min_witness.to_string(),
                    r.max_witness.to_string(),
                ])?;
            }
            w.flush()?;
        }
        ExploreCmd::ColorGraphs { len } => {
            anyhow::ensure!((2..=max_dimension() + 1).contains(&len), "length must lie in 2..={}", max_dimension() + 1);
            let sk = Skeleton::new(len - 1);
            let rows: Vec<[String; 5]> = normalized_vectors(len)
                .into_par_iter()
                .filter(acceptable)
                .map(|c| {
                    let g = color_graph_in(&sk, &c);
                    let zero = zero_set(&c).ok().map(|z| z.vertices.len());
                    graph_row(&c, g.vertices.len(), g.edges.len(), graph_diameter(&g).ok(), zero)
                })
                .collect();
            let mut w = csv::Writer::from_writer(&mut out.w);
            w.write_record(GRAPH_CSV_HEADER)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn map(cmd: MapCmd, out: &mut Out) -> Result<()> {
    match cmd {
        MapCmd::Factor { d, r } => {
            let factors: Vec<String> = prime_factorization(&pair(&d, &r)?).iter().map(TreePair::to_string).collect();
            if out.json {
                return out.json(json!(factors));
            }
            for f in factors {
                out.line(f)?;
            }
        }
        MapCmd::Prime { d, r } => {
            let p = is_prime(&pair(&d, &r)?);
            if out.json {
                return out.json(json!({"prime": p}));
            }
            out.line(if p { "prime" } else { "not prime" })?;
        }
        MapCmd::Chromatic { family, n } => {
            let f: Family = family.parse()?;
            let g = f.build(n)?.graph;
            let count = count_vertex_colorings(&g, 4)?;
            let form = closed_form(f, n).ok();
            if out.json {
                return out.json(json!({"family": f.to_string(), "n": n, "colorings": count, "per_24": count / 24, "closed_form": form}));
            }
            out.line(format!("{f}_{n} colorings {count}"))?;
            out.line(format!("divided by 24: {}", count / 24))?;
            out.line(format!("closed form: {}", form.map_or("-".to_string(), |x| x.to_string())))?;
        }
        MapCmd::VCheck { fixture } => {
            let t: VTriple = match fixture {
                FixtureName::NoColorV => fixtures::no_color_v(),
                FixtureName::TorusK7 => fixtures::torus_k7(),
                FixtureName::PetersenRp2 => fixtures::petersen_rp2(),
            };
            let list = v_triple_colorings(&t);
            let g = glued_cubic_graph(&t);
            if out.json {
                return out.json(json!({
                    "colorings": list.iter().map(ColorVector::to_string).collect::<Vec<_>>(),
                    "glued_vertices": g.n,
                    "girth": g.girth(),
                }));
            }
            out.line(format!("colorings {}", list.len()))?;
            for c in list {
                out.line(c.to_string())?;
            }
            out.line(format!(
                "glued graph: {} vertices, girth {}",
                g.n,
                g.girth().map_or("-".to_string(), |x| x.to_string())
            ))?;
        }
        MapCmd::Census { leaves } => {
            let rows = triple_census(leaves)?;
            if out.json {
                return out.json(serde_json::to_value(&rows)?);
            }
            if out.csv {
                let mut w = csv::Writer::from_writer(&mut out.w);
                for r in &rows {
                    w.serialize(r)?;
                }
                w.flush()?;
                return Ok(());
            }
            for r in rows {
                out.line(format!("{}: {} of {}", r.convention, r.uncolorable, r.total))?;
            }
        }
    }
    Ok(())
}

fn counts(a: CountsArgs, out: &mut Out) -> Result<()> {
    let value = |n: usize| -> Result<i128> {
        Ok(match a.kind {
            CountKind::Acceptable => count_acceptable(n)?,
            CountKind::Rigid => count_rigid(n)?,
            CountKind::Flexible => count_flexible(n)?,
            CountKind::Jacobsthal => jacobsthal(n)?,
        })
    };
    let first = match a.kind {
        CountKind::Rigid | CountKind::Flexible => 1,
        _ => 0,
    };
    let range: Vec<usize> = if a.table { (first..=a.n).collect() } else { vec![a.n] };
    let rows: Vec<(usize, i128)> = range.into_iter().map(|n| Ok((n, value(n)?))).collect::<Result<_>>()?;
    if out.json {
        return out.json(json!(rows.iter().map(|(n, v)| json!({"n": n, "value": v.to_string()})).collect::<Vec<_>>()));
    }
    for (n, v) in rows {
        out.line(format!("{n} {v}"))?;
    }
    Ok(())
}

fn mi_search(a: MiArgs, out: &mut Out) -> Result<()> {
    let bound = if a.slow { SLOW_MAX_SEARCH_VERTICES } else { DEFAULT_MAX_SEARCH_VERTICES };
    let report = max_coloring_search(a.n, bound)?;
    let write_csv = |w: &mut dyn Write| -> Result<()> {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(["n", "rank", "count", "witness_d", "witness_r"])?;
        for e in &report.entries {
            c.write_record([
                report.n.to_string(),
                e.rank.to_string(),
                e.count.to_string(),
                e.witness.d.to_text(),
                e.witness.r.to_text(),
            ])?;
        }
        c.flush()?;
        Ok(())
    };
    if let Some(path) = &a.out {
        let mut f = File::create(path).with_context(|| format!("cannot create {path}"))?;
        write_csv(&mut f)?;
    }
    if out.csv {
        return write_csv(&mut out.w);
    }
    if out.json {
        return out.json(serde_json::to_value(&report)?);
    }
    out.line(format!("n {} prime pairs {}", report.n, report.pairs))?;
    for e in &report.entries {
        out.line(format!("{} {} {} {}", e.rank, e.count, e.witnesses, e.witness))?;
    }
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut Out) -> Result<()> {
    let suites: Vec<Suite> = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites.iter().map(|s| s.parse()).collect::<std::result::Result<_, _>>()?
    };
    let mut all_passed = true;
    let mut reports = Vec::new();
    for s in suites {
        let r = run_suite(s, a.max_len)?;
        all_passed &= r.passed();
        reports.push(r);
    }
    if out.json {
        out.json(serde_json::to_value(&reports)?)?;
    } else {
        for r in &reports {
            for c in &r.checks {
                out.line(format!(
                    "{} {} (size {}): {}{}",
                    if c.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.size,
                    c.name,
                    if c.detail.is_empty() { String::new() } else { format!(" [{}]", c.detail) }
                ))?;
            }
        }
        out.line(if all_passed { "pass" } else { "fail" })?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use ktruss::groups::GroupIndex;
use ktruss::minimize::{solve, IndexMode, MinimizationReport, SolverConfig};
use ktruss::truss::{k_truss, truss_decompose};
use ktruss::Graph;
use serde::Serialize;

use crate::args::{Format, MinimizeArgs, SolverArgs};
use crate::error::CliError;

pub type Out<'a> = &'a mut dyn Write;

pub fn load(path: &Path) -> Result<Graph, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    Graph::load_edge_list(BufReader::new(file)).map_err(|e| CliError::from_lib(path, e))
}

pub fn config(k: u32, b: usize, algorithm: ktruss::minimize::Algorithm, s: &SolverArgs) -> SolverConfig {
    let mut cfg = SolverConfig::new(k, b, algorithm);
    cfg.threads = s.threads;
    cfg.exact_cap = s.exact_cap;
    cfg.index_mode = if s.full_rebuild { IndexMode::FullRebuild } else { IndexMode::Incremental };
    cfg
}

fn write_err(e: std::io::Error) -> CliError {
    CliError::Input(format!("cannot write output: {e}"))
}

#[derive(Debug, Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    triangles: usize,
    max_support: u32,
    max_trussness: u32,
}

pub fn stats(input: &Path, format: Format, out: Out) -> Result<(), CliError> {
    let g = load(input)?;
    let max_support = (0..g.edge_count() as u32)
        .map(|e| {
            let mut n = 0;
            g.for_each_triangle(e, |_, _, _| n += 1);
            n
        })
        .max()
        .unwrap_or(0);
    let s = Stats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        triangles: g.triangle_count(),
        max_support,
        max_trussness: truss_decompose(&g).max(),
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&s).expect("plain struct")),
        Format::Csv => writeln!(
            out,
            "vertices,edges,triangles,max_support,max_trussness\n{},{},{},{},{}",
            s.vertices, s.edges, s.triangles, s.max_support, s.max_trussness
        ),
        Format::Human => writeln!(
            out,
            "vertices       {}\nedges          {}\ntriangles      {}\nmax support    {}\nmax trussness  {}",
            s.vertices, s.edges, s.triangles, s.max_support, s.max_trussness
        ),
    }
    .map_err(write_err)
}

#[derive(Debug, Serialize)]
struct GroupDump {
    k: u32,
    groups: Vec<Vec<[u64; 2]>>,
}

pub fn truss(input: &Path, k: u32, dump_groups: Option<&Path>, out: Out) -> Result<(), CliError> {
    let g = load(input)?;
    let t = k_truss(&g, k).map_err(|e| CliError::from_lib(input, e))?;
    // Edge ids follow label order, so this is already sorted.
    for e in t.edges() {
        let [u, v] = g.edge_labels(e);
        writeln!(out, "{u} {v}").map_err(write_err)?;
    }
    if let Some(path) = dump_groups {
        let tau = truss_decompose(&g);
        let index = GroupIndex::build(&g, &tau, k, &[]).map_err(|e| CliError::from_lib(input, e))?;
        let mut groups: Vec<Vec<[u64; 2]>> = index
            .groups(k)
            .into_iter()
            .map(|grp| {
                let mut m = grp.members;
                m.sort_unstable();
                m.into_iter().map(|e| g.edge_labels(e)).collect()
            })
            .collect();
        groups.sort();
        let text = serde_json::to_string_pretty(&GroupDump { k, groups }).expect("plain struct");
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

pub fn decompose(input: &Path, out: Out) -> Result<(), CliError> {
    let g = load(input)?;
    let tau = truss_decompose(&g);
    for e in 0..g.edge_count() as u32 {
        let [u, v] = g.edge_labels(e);
        writeln!(out, "{u} {v} {}", tau.get(e)).map_err(write_err)?;
    }
    Ok(())
}

pub fn minimize(args: &MinimizeArgs, out: Out, err: Out) -> Result<(), CliError> {
    let g = load(&args.input)?;
    let cfg = config(args.k, args.b, args.algorithm, &args.solver);
    let report = solve(&g, &cfg).map_err(|e| CliError::from_lib(&args.input, e))?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("plain struct")).map_err(write_err)?,
        Format::Csv => write_csv(&report, out)?,
        Format::Human => write_human(&report, out).map_err(write_err)?,
    }
    if args.format != Format::Human {
        for w in &report.warnings {
            writeln!(err, "warning: {w}").map_err(write_err)?;
        }
    }
    Ok(())
}

fn write_csv(report: &MinimizationReport, out: Out) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Input(format!("cannot write output: {e}"));
    w.write_record(["iteration", "u", "v", "followers", "candidates_total", "candidates_evaluated", "time_ms"])
        .map_err(csv_err)?;
    for (i, r) in report.iterations.iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            r.edge[0].to_string(),
            r.edge[1].to_string(),
            r.followers.to_string(),
            r.candidates_total.to_string(),
            r.candidates_evaluated.to_string(),
            format!("{:.3}", r.time_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(write_err)
}

fn write_human(report: &MinimizationReport, out: Out) -> std::io::Result<()> {
    let c = &report.config;
    writeln!(out, "{} on the {}-truss, budget {}", c.algorithm, c.k, c.b)?;
    writeln!(out, "{:>4}  {:>24}  {:>9}  {:>10}  {:>9}  {:>10}", "#", "edge", "followers", "candidates", "evaluated", "ms")?;
    for (i, r) in report.iterations.iter().enumerate() {
        let edge = format!("({}, {})", r.edge[0], r.edge[1]);
        writeln!(
            out,
            "{:>4}  {:>24}  {:>9}  {:>10}  {:>9}  {:>10.3}",
            i + 1,
            edge,
            r.followers,
            r.candidates_total,
            r.candidates_evaluated,
            r.time_ms
        )?;
    }
    let t = &report.totals;
    writeln!(
        out,
        "followers {} from {} deletions; truss edges {} -> {}",
        t.followers, t.deleted, t.initial_truss_edges, t.final_truss_edges
    )?;
    writeln!(out, "time {:.3} ms (truss {:.3} ms)", report.timing.total_ms, report.timing.truss_ms)?;
    for w in &report.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

mod format;
mod report;
mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use octa_core::diagram::{
    check_periodic_pretriangle, check_verdier_octahedron, find_periodic_isos, restrict, triangle_of, SearchMode,
    SearchOptions, SearchStatus,
};
use octa_core::gallery::{gallery_diagram, GalleryKey};
use octa_core::stable::is_distinguished;
use serde_json::json;

use crate::format::{emit_diagram, load_diagram};
use crate::report::{distinguished_json, iso_json, pretriangle_json, triangle_json, Report, Status};

/// Witnesses written into an iso report before the list is cut off.
const MAX_LISTED_WITNESSES: usize = 1000;

#[derive(Parser)]
#[command(name = "octa", version, about = "Exact checks of periodic triangulated diagrams over Z/p^m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Pretriangle,
    Triangle,
    Octahedron,
}

#[derive(Subcommand)]
enum Command {
    /// Check one diagram file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search for isomorphisms between two diagrams.
    Iso {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// List every isomorphism instead of stopping at the first.
        #[arg(long)]
        all: bool,
        /// Maximum number of partial assignments to visit.
        #[arg(long)]
        budget: Option<u64>,
        /// Spread the search over all cores.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a built-in diagram to a file.
    Gallery {
        #[arg(long, value_parser = parse_gallery_key)]
        name: GalleryKey,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
        /// Write the restriction that drops vertex K instead.
        #[arg(long, value_name = "K")]
        restrict: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every check on the built-in diagrams for (n, p).
    Reproduce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn parse_gallery_key(s: &str) -> std::result::Result<GalleryKey, String> {
    s.parse().map_err(|e: octa_core::OctaError| e.to_string())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    let (report, path) = match command {
        Command::Verify { input, check, report } => (verify(&input, check)?, report),
        Command::Iso { left, right, all, budget, parallel, report } => {
            (iso(&left, &right, all, budget, parallel)?, report)
        }
        Command::Gallery { name, n, p, restrict: k, out } => {
            let mut d = gallery_diagram(name, n, p)?;
            if let Some(k) = k {
                d = restrict(&d, k)?;
            }
            std::fs::write(&out, emit_diagram(&d)).with_context(|| format!("writing {}", out.display()))?;
            return Ok(0);
        }
        Command::Reproduce { n, p, budget, parallel, report } => (reproduce::run(n, p, budget, parallel)?, report),
    };
    print!("{}", report.summary());
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(&report)? + "\n";
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.exit_code() as u8)
}

fn verify(input: &Path, check: Check) -> Result<Report> {
    let d = load_diagram(input)?;
    let period = d.period();
    let mut report = Report::new("verify");
    match check {
        Check::Pretriangle => {
            report.run("pretriangle", || {
                let r = check_periodic_pretriangle(&d)?;
                Ok((Status::from_bool(r.passed()), pretriangle_json(&r, period)))
            })?;
        }
        Check::Triangle => {
            report.run("triangle", || {
                let t = triangle_of(&d)?;
                let r = is_distinguished(&t)?;
                Ok((
                    Status::from_bool(r.distinguished),
                    json!({ "triangle": triangle_json(&t), "report": distinguished_json(&r) }),
                ))
            })?;
        }
        Check::Octahedron => {
            if d.n() != 3 {
                bail!("octahedron check needs n = 3, the file has n = {}", d.n());
            }
            report.run("octahedron", || {
                let r = check_verdier_octahedron(&d)?;
                let restrictions: Vec<_> = r
                    .restrictions
                    .iter()
                    .map(|c| json!({ "k": c.k, "triangle": triangle_json(&c.triangle), "report": distinguished_json(&c.report) }))
                    .collect();
                let payload = json!({ "pretriangle": pretriangle_json(&r.pretriangle, period), "restrictions": restrictions });
                Ok((Status::from_bool(r.passed()), payload))
            })?;
        }
    }
    Ok(report)
}

fn iso(left: &Path, right: &Path, all: bool, budget: Option<u64>, parallel: bool) -> Result<Report> {
    let d1 = load_diagram(left)?;
    let d2 = load_diagram(right)?;
    let header = |d: &octa_core::diagram::PeriodicDiagram| (d.ctx().p(), d.ctx().m(), d.n());
    if header(&d1) != header(&d2) {
        bail!("headers differ: (p, m, n) = {:?} vs {:?}", header(&d1), header(&d2));
    }
    let mode = if all { SearchMode::All } else { SearchMode::First };
    let mut report = Report::new("iso");
    report.run("isomorphism-search", || {
        let options = SearchOptions::new(mode).budget(budget).parallel(parallel);
        let search = find_periodic_isos(&d1, &d2, options)?;
        let status = match search.status {
            SearchStatus::Complete => Status::Pass,
            SearchStatus::Inconclusive => Status::Inconclusive,
        };
        let witnesses: Vec<_> = search.isos.iter().take(MAX_LISTED_WITNESSES).map(|i| iso_json(i, &d1)).collect();
        let candidates: Vec<_> =
            search.candidates.iter().map(|(p, c)| json!({ "position": p.label(d1.period()), "count": c })).collect();
        let payload = json!({
            "isomorphic": !search.isos.is_empty(),
            "complete": search.status == SearchStatus::Complete,
            "count": search.isos.len(),
            "nodes": search.nodes,
            "candidates": candidates,
            "witnesses": witnesses,
            "truncated": search.isos.len() > MAX_LISTED_WITNESSES,
        });
        Ok((status, payload))
    })?;
    Ok(report)
}

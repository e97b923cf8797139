use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use trigenus::families::catalog::{catalog, disjoint_shifts, CatalogEntry};
use trigenus::families::{build, sporadic, Case, FamilyParams, SporadicName};
use trigenus::search::{search, SearchOptions};
use trigenus::surgery::{self, SurgeryOutcome, Witness};
use trigenus::{analyze, deficit, derive_embedding, find_ladders, CurrentGraph, Error, RotationSystem, VertexId};

#[derive(Parser)]
#[command(
    name = "trigenus",
    version,
    about = "Triangular and genus embeddings of complete graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a rotation file or current graph file ("-" reads stdin).
    Verify { input: String },
    /// Write the embedding derived from a family or a current graph file.
    Derive(Source),
    /// Print the three circuit logs.
    Logs(Source),
    /// Run a completion pipeline on a rotation file.
    Surgery {
        input: String,
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<String>>,
        /// Directory for the stage files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove ladder handles from a derived embedding.
    Subtract {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        handles: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        shifts: Option<Vec<u32>>,
    },
    /// Write every triangulation and the genus embedding for one n.
    Catalog {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search current assignments for a skeleton.
    Search {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
    },
    /// Write one of the printed sporadic tables.
    Sporadic {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Current graph file; alternatively give --case and --s.
    input: Option<String>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    K2,
    K3,
    K13,
    K14,
    C4,
    K5,
    K6,
    K8,
}

/// A failed check, reported with exit status 1.
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn transcript_path(out: &Path) -> PathBuf {
    if out.is_dir() {
        out.join("transcript.txt")
    } else {
        let mut s = out.as_os_str().to_owned();
        s.push(".transcript.txt");
        PathBuf::from(s)
    }
}

/// Writes `text` to `out` (or stdout) and the transcript beside it (or to stderr).
fn emit(out: Option<&Path>, text: &str, transcript: &[String]) -> anyhow::Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
            fs::write(transcript_path(p), transcript.join("\n") + "\n")?;
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            for l in transcript {
                eprintln!("{l}");
            }
        }
    }
    Ok(())
}

fn graph_of(src: &Source) -> anyhow::Result<(CurrentGraph, String)> {
    match (&src.input, &src.case, src.s) {
        (Some(path), None, None) => {
            let g = CurrentGraph::parse(&read_input(path)?)?;
            Ok((g, path.clone()))
        }
        (None, Some(case), Some(s)) => {
            let case: Case = case.parse()?;
            let g = build(FamilyParams::new(case, s)?)?;
            Ok((g, format!("{case} s={s}")))
        }
        _ => bail!(Error::Domain(
            "give either a current graph file or both --case and --s".into()
        )),
    }
}

fn vertex(s: &str) -> anyhow::Result<VertexId> {
    s.parse::<VertexId>()
        .map_err(|m| anyhow!(Error::Parse { line: 0, msg: m }))
}

fn summary_line(rot: &RotationSystem) -> anyhow::Result<String> {
    let s = analyze(rot)?;
    Ok(format!("{s} deficit={}", deficit(rot).shape))
}

fn verify(input: &str) -> anyhow::Result<()> {
    let text = read_input(input)?;
    if text.trim_start().starts_with("currentgraph") {
        let g = CurrentGraph::parse(&text)?;
        let rep = g.verify_principles();
        print!("{rep}");
        if !rep.passes() {
            return Err(Failed("principle violation".into()).into());
        }
        let rot = derive_embedding(&g)?;
        println!("{}", summary_line(&rot)?);
        return Ok(());
    }
    let rot = RotationSystem::parse(&text)?;
    rot.validate().map_err(|e| Failed(e.to_string()))?;
    println!("{}", summary_line(&rot)?);
    let ruler = trigenus::is_triangular_ruler(&rot);
    if ruler != analyze(&rot)?.triangular {
        return Err(Failed("ruler criterion disagrees with face tracing".into()).into());
    }
    Ok(())
}

fn run_lemma(rot: &RotationSystem, lemma: Lemma, w: &Witness) -> trigenus::Result<SurgeryOutcome> {
    match lemma {
        Lemma::K2 => surgery::complete_k2(rot),
        Lemma::K3 => surgery::complete_k3(rot),
        Lemma::K13 => surgery::complete_k13(rot),
        Lemma::K14 => surgery::complete_k14(rot, w.v),
        Lemma::C4 => surgery::complete_c4(rot),
        Lemma::K5 => surgery::lemma_k5(rot, w),
        Lemma::K6 => surgery::lemma_k6(rot, w.u, w.p.as_deref()),
        Lemma::K8 => surgery::lemma_k8(rot, w),
    }
}

fn stage_name(i: usize, label: &str) -> String {
    let clean: String = label
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || *c == ',')
        .collect();
    format!("stage{i}_{}.rot", clean.replace(',', "_"))
}

fn write_catalog(n: u32, entries: &[CatalogEntry], out: &Path) -> anyhow::Result<()> {
    let dir = out.join(format!("n={n}"));
    fs::create_dir_all(&dir)?;
    let mut manifest = String::new();
    for e in entries {
        let name = match e.t {
            Some(t) => format!("t={t}.rot"),
            None => "Kn.rot".to_string(),
        };
        fs::write(dir.join(&name), e.rot.to_text())?;
        let again = RotationSystem::parse(&e.rot.to_text())?;
        let ok = again == e.rot && analyze(&again)? == e.summary;
        manifest.push_str(&format!(
            "{name}\t{}\tV={} E={} F={} genus={}\t{}\t{}\n",
            e.label,
            e.summary.v,
            e.summary.e,
            e.summary.f,
            e.summary.genus,
            if ok { "verified" } else { "FAILED" },
            e.source
        ));
        if !ok {
            return Err(Failed(format!("{name} did not re-verify")).into());
        }
    }
    fs::write(dir.join("manifest.txt"), manifest)?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Verify { input } => verify(&input),
        Cmd::Derive(src) => {
            let (g, name) = graph_of(&src)?;
            let rep = g.verify_principles();
            if !rep.passes() {
                print!("{rep}");
                return Err(Failed("principle violation".into()).into());
            }
            let rot = derive_embedding(&g)?;
            let t = vec![
                format!("derived from {name}"),
                rep.to_string().trim_end().to_string(),
                summary_line(&rot)?,
            ];
            emit(src.out.as_deref(), &rot.to_text(), &t)
        }
        Cmd::Logs(src) => {
            let (g, _) = graph_of(&src)?;
            let logs = g
                .circuit_logs()
                .ok_or_else(|| Failed("no valid circuit labeling".into()))?;
            let text: String = logs.iter().map(|l| format!("{l}\n")).collect();
            emit(src.out.as_deref(), &text, &[])
        }
        Cmd::Surgery {
            input,
            lemma,
            u,
            v,
            p,
            out,
        } => {
            let rot = RotationSystem::parse(&read_input(&input)?)?;
            rot.validate().map_err(|e| Failed(e.to_string()))?;
            let w = Witness {
                u: u.as_deref().map(vertex).transpose()?,
                v: v.as_deref().map(vertex).transpose()?,
                p: p.map(|ps| ps.iter().map(|x| vertex(x)).collect::<anyhow::Result<Vec<_>>>())
                    .transpose()?,
            };
            let outcome = run_lemma(&rot, lemma, &w)?;
            for l in &outcome.transcript {
                println!("{l}");
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                for (i, st) in outcome.stages.iter().enumerate() {
                    fs::write(dir.join(stage_name(i, &st.label)), st.rot.to_text())?;
                }
                fs::write(transcript_path(&dir), outcome.transcript.join("\n") + "\n")?;
            }
            Ok(())
        }
        Cmd::Subtract { src, handles, shifts } => {
            let (g, name) = graph_of(&src)?;
            let rot = derive_embedding(&g)?;
            let ladders = find_ladders(&g);
            let (lad, avail) = ladders
                .iter()
                .map(|l| (l, disjoint_shifts(l, rot.modulus())))
                .max_by_key(|(_, s)| s.len())
                .ok_or_else(|| Failed(format!("{name} has no arithmetic 3-ladder")))?;
            let chosen = match (shifts, handles) {
                (Some(s), _) => s,
                (None, Some(m)) if m <= avail.len() => avail[..m].to_vec(),
                (None, Some(m)) => bail!(Error::Domain(format!(
                    "{m} handles requested, {} available",
                    avail.len()
                ))),
                (None, None) => avail[..1].to_vec(),
            };
            let r = surgery::subtract_handles(&rot, lad, &chosen)?;
            let t = vec![format!("{name}: ladder {lad}, shifts {chosen:?}"), summary_line(&r)?];
            emit(src.out.as_deref(), &r.to_text(), &t)
        }
        Cmd::Catalog { n, t, out } => {
            let mut entries = catalog(n)?;
            if let Some(t) = t {
                entries.retain(|e| e.t == Some(t));
                if entries.is_empty() {
                    bail!(Failed(format!("catalog for n={n} has no t={t}")));
                }
            }
            for e in &entries {
                println!("{}\t{}\t{}", e.label, e.summary, e.source);
            }
            if let Some(out) = out {
                write_catalog(n, &entries, &out)?;
            }
            Ok(())
        }
        Cmd::Search { src, budget } => {
            let (g, name) = graph_of(&src)?;
            let rep = search(&g, SearchOptions { budget, prune: true })?;
            let mut t = vec![format!("search over {name}: {rep}")];
            let mut text = String::new();
            for sol in &rep.solutions {
                let rot = derive_embedding(sol)?;
                t.push(summary_line(&rot)?);
                text.push_str(&sol.to_text());
                text.push('\n');
            }
            println!("{}", t[0]);
            emit(src.out.as_deref(), &text, &t[1..])?;
            if !rep.exhausted {
                return Err(Failed("budget exhausted".into()).into());
            }
            Ok(())
        }
        Cmd::Sporadic { name, out } => {
            let which: SporadicName = name.parse()?;
            let rot = sporadic(which);
            emit(
                out.as_deref(),
                &rot.to_text(),
                &[format!("sporadic {which}"), summary_line(&rot)?],
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = match e.downcast_ref::<Error>() {
                Some(Error::Parse { .. } | Error::Domain(_) | Error::Unsupported(_)) => true,
                Some(_) => false,
                None => e.downcast_ref::<Failed>().is_none() && e.downcast_ref::<io::Error>().is_some(),
            };
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cutface::bounds::bounds_row;
use cutface::certificate::{sha256_hex, Certificate};
use cutface::corpus::{self, CorpusEntry, CORPUS};
use cutface::current::{derive, validate, CurrentGraph};
use cutface::surgery::run_surgery;
use cutface::RotationSystem;

/// Rotation-system workbench: verify embeddings, derive them from current
/// graphs, run handle surgery and print genus bounds.
///
/// Exit codes: 0 success, 1 a requested check failed, 2 parse or I/O error.
#[derive(Parser)]
#[command(name = "cutface", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Certify an embedding file or a bundled corpus entry (`corpus:K11`).
    ///
    /// Corpus entries are checked against their known genus, cutface length,
    /// dual simplicity and 6-face block on vertices 0..5.
    Verify {
        target: String,
        #[arg(long)]
        expect_genus: Option<usize>,
        /// Require a cutface, optionally of the given length.
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        expect_cutface: Option<usize>,
        #[arg(long)]
        expect_simple_dual: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Validate a current graph and write its derived embedding.
    Derive {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the handle surgery on a triangular `K_n - e` embedding.
    Surgery {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Directory for the four intermediate embeddings.
        #[arg(long)]
        dump_steps: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print lower bounds for connectivity `c` or an inclusive range `lo..hi`.
    Bounds { range: String },
    /// Bundled embeddings.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
}

/// A failure that maps onto an exit code.
enum Failure {
    Check(String),
    Input(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Check(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { target, expect_genus, expect_cutface, expect_simple_dual, format } => {
            verify(&target, expect_genus, expect_cutface, expect_simple_dual, format)
        }
        Command::Derive { path, output } => derive_cmd(&path, output.as_deref()),
        Command::Surgery { path, output, dump_steps, format } => {
            surgery(&path, output.as_deref(), dump_steps.as_deref(), format)
        }
        Command::Bounds { range } => bounds(&range),
        Command::Corpus { action: CorpusAction::List } => {
            println!("name n genus cutface extra_faces");
            for e in &CORPUS {
                let extra: Vec<String> = e.extra_faces.iter().map(|(l, c)| format!("{l}^{c}")).collect();
                let extra = if extra.is_empty() { "-".to_string() } else { extra.join(" ") };
                println!("{} {} {} {} {}", e.name, e.n, e.expected_genus, e.cutface_len, extra);
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}

fn verify(
    target: &str,
    expect_genus: Option<usize>,
    expect_cutface: Option<usize>,
    expect_simple_dual: bool,
    format: Format,
) -> Result<(), Failure> {
    let entry: Option<&CorpusEntry> = if target.starts_with("corpus:") {
        Some(corpus::lookup(target).ok_or_else(|| Failure::Input(format!("no corpus entry `{target}`")))?)
    } else {
        None
    };
    let text = match entry {
        Some(e) => e.text.to_string(),
        None => read(Path::new(target))?,
    };
    let cert = Certificate::from_text(&text).map_err(|e| Failure::Input(e.to_string()))?;

    let mut checks: Vec<(String, bool)> = Vec::new();
    if let Some(e) = entry {
        checks.push((format!("complete-graph K{}", e.n), cert.complete_graph == Some(e.n as usize)));
        checks.push((format!("genus {}", e.expected_genus), cert.summary.genus == e.expected_genus));
        checks.push((format!("cutface {}", e.cutface_len), cert.has_cutface_of_len(e.cutface_len)));
        checks.push(("simple-dual".into(), cert.dual_simple));
        let first_six: Vec<u32> = (0..6).collect();
        checks.push((
            "block 6 faces on vertices 0..5".into(),
            cert.cutfaces
                .iter()
                .flat_map(|c| &c.blocks)
                .any(|b| b.size == 6 && b.vertices.as_ref() == Some(&first_six)),
        ));
        checks.push(("optimal".into(), cert.optimality.as_ref().is_some_and(|o| o.optimal)));
    }
    if let Some(g) = expect_genus {
        checks.push((format!("genus {g}"), cert.summary.genus == g));
    }
    match expect_cutface {
        Some(0) => checks.push(("cutface".into(), !cert.cutfaces.is_empty())),
        Some(len) => checks.push((format!("cutface {len}"), cert.has_cutface_of_len(len))),
        None => {}
    }
    if expect_simple_dual {
        checks.push(("simple-dual".into(), cert.dual_simple));
    }

    match format {
        Format::Text => {
            print!("{cert}");
            for (name, ok) in &checks {
                println!("check: {name} {}", if *ok { "ok" } else { "FAIL" });
            }
        }
        Format::Json => {
            let checks_json: serde_json::Map<String, serde_json::Value> =
                checks.iter().map(|(n, ok)| (n.clone(), serde_json::Value::Bool(*ok))).collect();
            let mut value = serde_json::to_value(&cert).expect("certificate serializes");
            value["checks"] = serde_json::Value::Object(checks_json);
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed checks: {}", failed.join(", "))))
    }
}

fn derive_cmd(path: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let text = read(path)?;
    let cg = CurrentGraph::parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let report = validate(&cg);
    if !report.is_valid() {
        print!("{report}");
        return Err(Failure::Check(format!("{} violation(s)", report.violations.len())));
    }
    let rs = derive(&cg).map_err(|e| Failure::Check(e.to_string()))?;
    let (_, summary) = cutface::analyze(&rs).map_err(|e| Failure::Check(e.to_string()))?;
    let labeled = cg.labeled_vertices().len();
    let report_text = format!(
        "{report}derived: K{} - E(K{labeled}), {} vertices, {} edges, {} faces, genus {}, face_census {}\n",
        summary.num_vertices, summary.num_vertices, summary.num_edges, summary.num_faces, summary.genus,
        summary.face_census
    );
    match output {
        Some(out) => {
            print!("{report_text}");
            write(out, &rs.to_string())
        }
        None => {
            eprint!("{report_text}");
            print!("{rs}");
            Ok(())
        }
    }
}

fn surgery(path: &Path, output: Option<&Path>, dump_steps: Option<&Path>, format: Format) -> Result<(), Failure> {
    let text = read(path)?;
    let rs = RotationSystem::parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let report = run_surgery(&rs).map_err(|e| Failure::Check(e.to_string()))?;
    if let Some(dir) = dump_steps {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        for (i, (name, stage)) in report.stages.iter().enumerate() {
            write(&dir.join(format!("{}_{name}.txt", i + 1)), &stage.to_string())?;
        }
    }
    let final_rs = report.final_embedding();
    if let Some(out) = output {
        write(out, &final_rs.to_string())?;
    }
    let cert = Certificate::for_embedding(sha256_hex(text.as_bytes()), final_rs)
        .map_err(|e| Failure::Check(e.to_string()))?
        .with_surgery(&report);
    match format {
        Format::Text => print!("{cert}"),
        Format::Json => println!("{}", cert.to_json()),
    }
    if cert.optimality.as_ref().is_some_and(|o| o.optimal) && cert.dual_simple {
        Ok(())
    } else {
        Err(Failure::Check("surgery output is not an optimal dual-separable embedding".into()))
    }
}

fn parse_range(range: &str) -> Option<(u32, u32)> {
    match range.split_once("..") {
        Some((lo, hi)) => Some((lo.trim().parse().ok()?, hi.trim().trim_start_matches('=').parse().ok()?)),
        None => {
            let c = range.trim().parse().ok()?;
            Some((c, c))
        }
    }
}

fn bounds(range: &str) -> Result<(), Failure> {
    let (lo, hi) = parse_range(range).ok_or_else(|| Failure::Input(format!("bad range `{range}`")))?;
    if lo > hi {
        return Err(Failure::Input(format!("empty range `{range}`")));
    }
    let rows = (lo..=hi)
        .map(|c| bounds_row(c).map_err(|e| Failure::Input(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    println!("c genus_K(c+1) delta1_lower delta2_lower feasible_18gon");
    for r in rows {
        println!(
            "{} {} {} {} {}",
            r.c,
            r.genus_complete,
            r.delta1_lower,
            r.delta2_lower,
            if r.feasible_18gon { "yes" } else { "no" }
        );
    }
    Ok(())
}

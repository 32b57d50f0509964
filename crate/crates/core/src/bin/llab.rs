use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use llab::ideal::{bpn_ideal, coletterplace_ideal, letterplace_ideal};
use llab::io::{format_poset, parse_maps, to_json, IdealSpec};
use llab::job::{bier_report, exit_code, run, stable_report, JobSpec, PosetSource, Report, Session, StableMode};
use llab::linalg::Field;
use llab::poset::{HomSpace, Poset};
use llab::simplicial::SimplicialComplex;
use llab::stable::StableIdeal;
use llab::vars::{SqfMonomial, VarSet};
use llab::{Error, Result};

/// Letterplace and co-letterplace ideals, their resolutions and spheres.
#[derive(Parser)]
#[command(name = "llab", version)]
struct Cli {
    /// Worker threads for verification loops.
    #[arg(long, global = true, env = "LLAB_THREADS")]
    threads: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poset utilities.
    Poset {
        #[command(subcommand)]
        action: PosetCmd,
    },
    /// Ideals attached to a poset ideal `J` of `Hom(P, [n])`.
    Ideal {
        #[arg(value_enum)]
        kind: IdealKind,
        #[command(flatten)]
        input: Input,
    },
    /// The linear resolution of `L(J)`.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
        /// Also print the Betti table.
        #[arg(long)]
        betti: bool,
    },
    /// Strongly stable ideals generated in degree `d`.
    Stable {
        #[arg(value_enum)]
        mode: StableArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: u32,
        /// `all` or maps such as `1,2;2,2`.
        #[arg(long, default_value = "all")]
        ideal: String,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// Balls, spheres and their certificates.
    Sphere {
        #[command(subcommand)]
        action: SphereCmd,
    },
    /// Export `L(J)` and its resolution.
    Export {
        #[arg(value_enum)]
        format: ExportFormat,
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a JSON job file.
    Run { job: PathBuf },
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Parse a poset file and print its Hasse diagram.
    Check {
        file: PathBuf,
        /// Also count `Hom(P, [n])`.
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Subcommand)]
enum SphereCmd {
    Delta(Input),
    Sigma(Input),
    Certify(Input),
    /// Bier sphere of a complex on `points` vertices, facets like `1 2; 3`.
    Bier {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        facets: String,
        #[arg(long, default_value = "q")]
        field: Field,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    Lp,
    Colp,
    Dual,
    Bpn,
}

#[derive(Clone, Copy, ValueEnum)]
enum StableArg {
    Ek,
    Colp,
    Compare,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    M2,
    Json,
}

#[derive(Args, Clone)]
struct Input {
    /// Poset file.
    #[arg(long, conflicts_with_all = ["chain", "antichain"])]
    poset: Option<PathBuf>,
    #[arg(long, conflicts_with = "antichain")]
    chain: Option<usize>,
    #[arg(long)]
    antichain: Option<usize>,
    #[arg(long)]
    n: u32,
    /// `all` or generating maps such as `1,2;2,2`.
    #[arg(long, default_value = "all")]
    ideal: String,
    #[arg(long, default_value = "q")]
    field: Field,
}

impl Input {
    fn source(&self) -> Result<PosetSource> {
        match (&self.poset, self.chain, self.antichain) {
            (Some(p), _, _) => Ok(PosetSource::File(p.clone())),
            (_, Some(m), _) => Ok(PosetSource::Chain(m)),
            (_, _, Some(m)) => Ok(PosetSource::Antichain(m)),
            _ => Err(Error::Invalid("give --poset, --chain or --antichain".into())),
        }
    }

    fn session(&self) -> Result<Session> {
        if self.n == 0 {
            return Err(Error::InvalidChain);
        }
        Session::new(self.source()?.load()?, self.n, &IdealSpec::parse(&self.ideal)?, self.field)
    }
}

fn single(name: &str, value: serde_json::Value) -> Report {
    let mut r = Report::default();
    r.push(name, value);
    r
}

fn parse_facets(points: usize, text: &str) -> Result<SimplicialComplex> {
    let v = Arc::new(VarSet::numbered_points(points)?);
    let rows = parse_maps(text)?;
    let facets = rows
        .into_iter()
        .map(|r| {
            r.0.iter()
                .map(|&k| {
                    if k == 0 || k as usize > points {
                        Err(Error::OutOfRange(k))
                    } else {
                        Ok(k as usize - 1)
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map(SqfMonomial::from_indices)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialComplex::new(v, facets))
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Poset { action: PosetCmd::Check { file, n } } => {
            let p = PosetSource::File(file).load()?;
            let mut r = single("poset", json!(format_poset(&p).trim_end()));
            r.push("size", json!(p.len()));
            r.push("antichain", json!(p.is_antichain()));
            if let Some(n) = n {
                r.push("hom_size", json!(HomSpace::new(p, n)?.size()));
            }
            Ok(r)
        }
        Command::Ideal { kind, input } => {
            let s = input.session()?;
            let space = s.j.space();
            let gens = match kind {
                IdealKind::Lp => letterplace_ideal(space).gen_strings(),
                IdealKind::Colp => coletterplace_ideal(&s.j).gen_strings(),
                IdealKind::Dual => coletterplace_ideal(&s.j).alexander_dual()?.gen_strings(),
                IdealKind::Bpn => bpn_ideal(space).gen_strings(),
            };
            Ok(single("generators", json!(gens)))
        }
        Command::Resolve { input, verify, betti } => {
            let s = input.session()?;
            let mut r = single("resolution", s.resolution(verify)?);
            if betti {
                r.push("betti", s.betti()?);
            }
            Ok(r)
        }
        Command::Stable { mode, d, n, ideal, field } => {
            let space = HomSpace::new(Poset::chain(d), n)?;
            let j = IdealSpec::parse(&ideal)?.resolve(&space)?;
            let i = StableIdeal::from_poset_ideal(&j)?;
            let mode = match mode {
                StableArg::Ek => StableMode::Ek,
                StableArg::Colp => StableMode::Colp,
                StableArg::Compare => StableMode::Compare,
            };
            stable_report(&i, mode, field)
        }
        Command::Sphere { action } => match action {
            SphereCmd::Delta(input) => {
                let v = input.session()?.sphere()?;
                Ok(single("delta", v["delta"].clone()))
            }
            SphereCmd::Sigma(input) => {
                let s = input.session()?;
                let sigma = llab::sphere::sigma_j(&s.j)?;
                Ok(single(
                    "sigma",
                    json!({"dim": sigma.dim(), "facets": sigma.facet_names()}),
                ))
            }
            SphereCmd::Certify(input) => Ok(single("certify", input.session()?.certify()?)),
            SphereCmd::Bier { points, facets, field } => {
                bier_report(&parse_facets(points, &facets)?, field)
            }
        },
        Command::Export { format, input, output } => {
            let s = input.session()?;
            let text = match format {
                ExportFormat::M2 => s.export_m2()?,
                ExportFormat::Json => to_json(&s.export_json()?),
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| {
                        Error::Invalid(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(single("written", json!(path.display().to_string())))
                }
                None => Ok(single("export", json!(text))),
            }
        }
        Command::Run { job } => {
            let text = std::fs::read_to_string(&job)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", job.display())))?;
            let spec: JobSpec = llab::io::from_json(&text)?;
            run(&spec)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match execute(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

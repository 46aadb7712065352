use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use wignerff::classify::{similarity_orbits, w_variant_census};
use wignerff::error::{Error, Result};
use wignerff::geometry::striations;
use wignerff::gf::{operation_tables, Field};
use wignerff::io::{self, from_json, parse_field_spec, to_json_pretty, LineJson, MubJson, NetFile, PairFile, ProbabilityFile, StateFile};
use wignerff::mub::{mub_family, verify_mub};
use wignerff::net::QuantumNet;
use wignerff::presets;
use wignerff::reproduce;
use wignerff::weylops::BasisPair;
use wignerff::wigner::{phase_point_operators, tomographic_reconstruct, wigner_transform, TomographyOptions, WignerJson};

#[derive(Parser)]
#[command(name = "wignerff", version, about = "Discrete Wigner functions over finite fields")]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Addition and multiplication tables of F_N.
    FieldTables {
        #[arg(long, default_value = "2^2")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Striations, lines and their points as JSON.
    Striations {
        #[arg(long, default_value = "2^2")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutually unbiased bases of a field-basis pair as JSON.
    Mub {
        /// Uses the self-dual polynomial pair of this field when no pair is given.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allowed deviation of |<u|v>|^2 from 1/N.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Wigner function of a state on a net.
    Wigner {
        #[arg(long, default_value = "paper-n4")]
        net: String,
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wigner function from line probabilities or counts.
    Tomo {
        #[arg(long)]
        probs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allowed deviation of each striation sum from 1.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Similarity orbits of the equivalence classes of nets.
    Classify {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        /// Classify on the pair of this net.
        #[arg(long)]
        net: Option<String>,
        /// One column per value of w instead of a single pair.
        #[arg(long)]
        census: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render every reference table and diff against the bundled fixtures.
    Reproduce {
        /// Directory to write the rendered artifacts into.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(Error),
    Diff(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { what: "input file", input: format!("{}: {e}", path.display()) })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse { what: "output file", input: format!("{}: {e}", path.display()) })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A preset name or a JSON file.
fn load_pair(spec: &str) -> Result<BasisPair> {
    if presets::PRESETS.contains(&spec) {
        return presets::pair(spec);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownPreset(spec.to_string()));
    }
    from_json::<PairFile>(&read(path)?, "pair file")?.pair()
}

fn load_net(spec: &str) -> Result<QuantumNet> {
    if presets::PRESETS.contains(&spec) {
        return presets::net(spec);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::UnknownPreset(spec.to_string()));
    }
    from_json::<NetFile>(&read(path)?, "net file")?.build()
}

fn pair_for(field: Option<&str>, pair: Option<&str>, net: Option<&str>) -> Result<BasisPair> {
    if let Some(p) = pair {
        return load_pair(p);
    }
    if let Some(n) = net {
        return Ok(load_net(n)?.pair().clone());
    }
    Ok(BasisPair::standard(parse_field_spec(field.unwrap_or("2^2"))?))
}

#[derive(Serialize)]
struct StriationJson {
    index: usize,
    direction: [String; 2],
    lines: Vec<LineWithPoints>,
}

#[derive(Serialize)]
struct LineWithPoints {
    #[serde(flatten)]
    line: LineJson,
    points: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct GeometryJson {
    field: io::FieldJson,
    modulus: String,
    striations: Vec<StriationJson>,
}

fn geometry_json(f: Field) -> GeometryJson {
    let striations = striations(f)
        .into_iter()
        .map(|s| StriationJson {
            index: s.index,
            direction: io::point_json(s.direction),
            lines: s
                .lines
                .iter()
                .map(|&l| LineWithPoints { line: l.into(), points: l.points().into_iter().map(io::point_json).collect() })
                .collect(),
        })
        .collect();
    GeometryJson { field: f.into(), modulus: f.modulus_string(), striations }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.cmd {
        Cmd::FieldTables { field, out } => {
            let f = parse_field_spec(&field)?;
            let text = format!("F_{} = F_{}[x]/({})\n\n{}", f.order(), f.r(), f.modulus_string(), operation_tables(f));
            emit(out.as_deref(), &text)?;
        }
        Cmd::Striations { field, out } => {
            emit(out.as_deref(), &(to_json_pretty(&geometry_json(parse_field_spec(&field)?)) + "\n"))?;
        }
        Cmd::Mub { field, pair, out, tol } => {
            let pair = pair_for(field.as_deref(), pair.as_deref(), None)?;
            let fam = mub_family(&pair);
            let rep = verify_mub(&fam);
            eprintln!("{} bases, max deviation {:.3e}", fam.bases.len(), rep.max_deviation);
            if rep.max_deviation > tol {
                return Err(Error::Numerical(format!("bases not unbiased: deviation {:e} > {tol:e}", rep.max_deviation)).into());
            }
            emit(out.as_deref(), &(to_json_pretty(&MubJson::from(&fam)) + "\n"))?;
        }
        Cmd::Wigner { net, state, out } => {
            let net = load_net(&net)?;
            let rho = from_json::<StateFile>(&read(&state)?, "state file")?.density()?;
            let w = wigner_transform(&rho, &phase_point_operators(&net))?;
            print!("{}", w.heatmap());
            if let Some(p) = out {
                write(&p, &(to_json_pretty(&WignerJson::from(&w)) + "\n"))?;
            }
        }
        Cmd::Tomo { probs, out, tol } => {
            let file: ProbabilityFile = from_json(&read(&probs)?, "probability file")?;
            let (field, values) = file.values()?;
            let mut opts = TomographyOptions::default();
            if let Some(t) = tol {
                opts.tolerance = t;
            }
            let t = tomographic_reconstruct(field, &values, file.kind, opts)?;
            print!("{}", t.wigner.heatmap());
            if let Some(p) = out {
                write(&p, &(to_json_pretty(&WignerJson::from(&t.wigner)) + "\n"))?;
            }
        }
        Cmd::Classify { field, pair, net, census, out } => {
            if census {
                let f = match (&field, &pair, &net) {
                    (Some(f), _, _) => parse_field_spec(f)?,
                    _ => pair_for(None, pair.as_deref(), net.as_deref())?.field(),
                };
                let c = w_variant_census(f)?;
                print!("{}", c.table());
                if let Some(p) = out {
                    write(&p, &(to_json_pretty(&c) + "\n"))?;
                }
            } else {
                let rep = similarity_orbits(&pair_for(field.as_deref(), pair.as_deref(), net.as_deref())?)?;
                print!("{}", rep.table());
                if let Some(p) = out {
                    write(&p, &(to_json_pretty(&rep) + "\n"))?;
                }
            }
        }
        Cmd::Reproduce { out } => {
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Parse { what: "output directory", input: format!("{}: {e}", dir.display()) })?;
            }
            let mut failed = Vec::new();
            for a in reproduce::render_all()? {
                if let Some(dir) = &out {
                    write(&dir.join(format!("{}.txt", a.name)), &a.text)?;
                }
                match reproduce::diff(&a) {
                    None => println!("ok    {}", a.name),
                    Some(m) => {
                        println!("DIFF  {} line {}\n  expected: {}\n  got:      {}", m.name, m.line, m.expected, m.got);
                        failed.push(m.name);
                    }
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Diff(failed.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Diff(names)) => {
            eprintln!("golden mismatch: {names}");
            ExitCode::from(2)
        }
    }
}


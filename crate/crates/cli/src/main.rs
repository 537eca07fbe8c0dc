//! `kunz`: Apéry sets, Kunz posets, cone faces, the arithmetic family and
//! gluings from the command line. Output is JSON with sorted keys, or DOT for
//! Hasse diagrams.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kunz_core::{
    apery_poset, beta_ray, classify_covers, ega_apery_grid, ega_contains, ega_detect, ega_report,
    extend_poset, factor_monoscopic, glued_poset, gluing_report, kunz_poset_of, phi, run_suite,
    ConeFace, CoordKind, CoordTuple, EgaParams, EmbeddingSpec, GluingSpec, NumericalSemigroup,
    Suite, SweepConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] kunz_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Verify(String),
}

#[derive(Parser)]
#[command(
    name = "kunz",
    version,
    about = "Numerical semigroups, Kunz posets and group-cone faces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Gens {
    /// Comma-separated generators, e.g. 4,13,18
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    gens: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Multiplicity, embedding dimension, Frobenius number and Apéry set
    Info {
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "kunz",
            conflicts_with = "kunz"
        )]
        gens: Option<Vec<i64>>,
        /// Build the semigroup from Kunz coordinates z_1..z_{m-1} instead
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            requires = "m"
        )]
        kunz: Option<Vec<i64>>,
        #[arg(long, requires = "kunz")]
        m: Option<i64>,
        /// Integers to test for membership
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        contains: Vec<i64>,
    },
    /// Apéry set and Kunz coordinates with respect to an element
    Apery {
        #[command(flatten)]
        gens: Gens,
        /// Element to take the Apéry set of (defaults to the multiplicity)
        #[arg(long)]
        m: Option<i64>,
    },
    /// Apéry poset as JSON, or its Hasse diagram as DOT
    Poset {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        m: Option<i64>,
        /// Emit the Hasse diagram in DOT format
        #[arg(long)]
        dot: bool,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Face of the group cone: tight facets, subgroup, poset, dimension
    Face(FaceArgs),
    /// Arithmetic-family report, or recognition of a semigroup
    Ega(EgaArgs),
    /// Glue <gens> along alpha with factor beta, or factor <gens> as a gluing
    Glue {
        #[command(flatten)]
        gens: Gens,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "factor")]
        alpha: Option<i64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "factor")]
        beta: Option<i64>,
        /// Find a gluing that produces <gens>
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        factor: bool,
    },
    /// Decomposition table of the embedding and its beta ray
    Embed {
        #[arg(long)]
        n: i64,
        /// Any generator of the subgroup H
        #[arg(long)]
        hgen: i64,
        #[arg(long, allow_hyphen_values = true)]
        rho: i64,
        /// Cone point of C(H) to map (entries for the nonzero elements of H)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<i64>>,
        /// Extend the Kunz poset of the semigroup with these generators
        #[arg(long, value_delimiter = ',')]
        extend: Option<Vec<i64>>,
        /// Use the augmented extension (with --extend)
        #[arg(long, requires = "extend")]
        augmented: bool,
    },
    /// Run seeded verification sweeps against the brute-force oracle
    Verify {
        /// Suite name, or `all`
        #[arg(long, value_parser = parse_suites)]
        suite: Suites,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size bound (a, base multiplicity or n, depending on the suite)
        #[arg(long)]
        max_m: Option<i64>,
        #[arg(long)]
        max_beta: Option<i64>,
        /// Number of random draws for the sampled suites
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Args)]
struct FaceArgs {
    #[arg(
        long,
        value_delimiter = ',',
        required_unless_present_any = ["point", "tight", "modulus"],
        conflicts_with_all = ["point", "tight", "modulus"]
    )]
    gens: Option<Vec<i64>>,
    /// Element to take coordinates with respect to (with --gens)
    #[arg(long, requires = "gens")]
    m: Option<i64>,
    /// Coordinates of the nonzero elements of Z_n
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with_all = ["tight", "modulus"]
    )]
    point: Option<Vec<i64>>,
    /// How to read --point
    #[arg(long, value_enum, default_value = "apery", requires = "point")]
    kind: Kind,
    /// Tight facets as i:j pairs, e.g. 1:2,3:2
    #[arg(long, value_delimiter = ',', value_parser = parse_pair, requires = "modulus")]
    tight: Option<Vec<(usize, usize)>>,
    /// Order of the cyclic group; alone it selects the whole cone
    #[arg(long)]
    modulus: Option<usize>,
    /// Also report the image of the face under g -> u*g
    #[arg(long, allow_hyphen_values = true)]
    automorphism: Option<i64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    Apery,
    Kunz,
}

#[derive(Args)]
struct EgaArgs {
    /// a,h,k,d
    #[arg(
        long,
        value_parser = parse_params,
        allow_hyphen_values = true,
        required_unless_present = "detect",
        conflicts_with = "detect"
    )]
    params: Option<[i64; 4]>,
    /// Recognize --gens as a member of the family
    #[arg(long, requires = "gens")]
    detect: bool,
    #[arg(long, value_delimiter = ',', requires = "detect")]
    gens: Option<Vec<i64>>,
    /// Integers to test with the membership criterion (with --params)
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "params"
    )]
    contains: Vec<i64>,
    /// Include the Apéry grid (with --params)
    #[arg(long, requires = "params")]
    grid: bool,
}

#[derive(Clone)]
struct Suites(Vec<Suite>);

fn parse_suites(s: &str) -> Result<Suites, String> {
    if s == "all" {
        return Ok(Suites(Suite::ALL.to_vec()));
    }
    s.parse().map(|suite| Suites(vec![suite])).map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(':').ok_or("expected i:j")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(i)?, parse(j)?))
}

fn parse_params(s: &str) -> Result<[i64; 4], String> {
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected a,h,k,d (4 values), got {}", v.len()))
}

/// Rebuilds every object with keys in sorted order, whatever map type
/// `serde_json` was compiled with.
fn sorted(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn to_json(value: impl Serialize) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&sorted(value)).expect("values serialize")
}

fn semigroup(gens: &[i64]) -> Result<NumericalSemigroup, CliError> {
    Ok(NumericalSemigroup::from_generators(gens)?)
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

/// `{"n": bool}` membership table.
fn membership(ns: &[i64], contains: impl Fn(i64) -> bool) -> Value {
    Value::Object(
        ns.iter()
            .map(|&n| (n.to_string(), contains(n).into()))
            .collect(),
    )
}

fn face_json(face: &ConeFace) -> Result<Value, CliError> {
    let poset = face.kunz_poset()?;
    Ok(json!({
        "face": face.dump()?,
        "poset": poset,
        "covers": poset.covers(),
        "atoms": poset.atoms(),
    }))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Info {
            gens,
            kunz,
            m,
            contains,
        } => {
            let s = match (gens, kunz, m) {
                (Some(gens), _, _) => semigroup(&gens)?,
                (None, Some(z), Some(m)) => NumericalSemigroup::from_kunz_tuple(m, &z)?,
                _ => unreachable!("clap requires --gens or --kunz with --m"),
            };
            let m = s.multiplicity();
            let mut value = json!({
                "generators": s.generators(),
                "multiplicity": m,
                "embedding_dimension": s.embedding_dimension(),
                // ⟨1⟩ has no gaps
                "frobenius": s.frobenius().ok(),
                "apery_set": s.apery_set(m)?,
            });
            if !contains.is_empty() {
                value["contains"] = membership(&contains, |n| s.contains(n));
            }
            emit(to_json(value), None)
        }
        Command::Apery { gens, m } => {
            let s = semigroup(&gens.gens)?;
            let m = m.unwrap_or(s.multiplicity());
            emit(
                to_json(json!({
                    "modulus": m,
                    "apery_set": s.apery_set(m)?,
                    "apery_tuple": s.coordinates(m, CoordKind::Apery)?.entries(),
                    "kunz_tuple": s.coordinates(m, CoordKind::Kunz)?.entries(),
                })),
                None,
            )
        }
        Command::Poset { gens, m, dot, out } => {
            let s = semigroup(&gens.gens)?;
            let poset = apery_poset(&s, m.unwrap_or(s.multiplicity()))?;
            let text = if dot {
                poset.to_dot().trim_end().to_string()
            } else {
                to_json(json!({
                    "poset": &poset,
                    "covers": poset.covers(),
                    "atoms": poset.atoms(),
                    "graded": poset.is_graded(),
                }))
            };
            emit(text, out.as_ref())
        }
        Command::Face(args) => {
            let automorphism = args.automorphism;
            let face = if let Some(gens) = args.gens {
                let s = semigroup(&gens)?;
                let m = args.m.unwrap_or(s.multiplicity());
                ConeFace::of_point(&s.coordinates(m, CoordKind::Apery)?)?
            } else if let Some(point) = args.point {
                let kind = match args.kind {
                    Kind::Apery => CoordKind::Apery,
                    Kind::Kunz => CoordKind::Kunz,
                };
                ConeFace::of_point(&CoordTuple::from_nonzero(kind, &point)?)?
            } else {
                let modulus = args.modulus.expect("clap requires --modulus with --tight");
                ConeFace::from_tight(modulus, args.tight.unwrap_or_default())?
            };
            let mut value = face_json(&face)?;
            if let Some(u) = automorphism {
                value["automorphism"] = json!({
                    "unit": u,
                    "image": face_json(&face.apply_automorphism(u)?)?,
                });
            }
            emit(to_json(value), None)
        }
        Command::Ega(args) => {
            let value = match (args.params, args.gens) {
                (Some([a, h, k, d]), _) => {
                    let p = EgaParams::new(a, h, k, d)?;
                    let mut value =
                        serde_json::to_value(ega_report(&p)?).expect("report types serialize");
                    if !args.contains.is_empty() {
                        value["contains"] = membership(&args.contains, |n| ega_contains(&p, n));
                    }
                    if args.grid {
                        value["grid"] = ega_apery_grid(&p)
                            .into_iter()
                            .map(|(c, v)| json!({ "x": c.x, "y": c.y, "value": v }))
                            .collect();
                    }
                    to_json(value)
                }
                (None, Some(gens)) => {
                    let s = semigroup(&gens)?;
                    let report = ega_detect(&s).map(|p| ega_report(&p)).transpose()?;
                    to_json(json!({ "generators": s.generators(), "detected": report }))
                }
                (None, None) => unreachable!("clap requires --params or --detect --gens"),
            };
            emit(value, None)
        }
        Command::Glue {
            gens,
            alpha,
            beta,
            factor,
        } => {
            let spec = if factor {
                let t = semigroup(&gens.gens)?;
                match factor_monoscopic(&t) {
                    Some(spec) => spec,
                    None => {
                        let value = json!({ "generators": t.generators(), "factor": null });
                        return emit(to_json(value), None);
                    }
                }
            } else {
                let (alpha, beta) = alpha.zip(beta).expect("clap requires --alpha and --beta");
                GluingSpec::new(semigroup(&gens.gens)?, alpha, beta)?
            };
            let report = gluing_report(&spec)?;
            let base = spec.base();
            let covers: Vec<Value> = classify_covers(&spec)?
                .into_iter()
                .map(|((a, b), kind)| json!({ "cover": [a, b], "kind": kind }))
                .collect();
            emit(
                to_json(json!({
                    "gluing": report,
                    "base_poset": apery_poset(base, base.multiplicity())?,
                    "glued_poset": glued_poset(&spec)?,
                    "covers": covers,
                })),
                None,
            )
        }
        Command::Embed {
            n,
            hgen,
            rho,
            point,
            extend,
            augmented,
        } => {
            let spec = EmbeddingSpec::new(n, hgen, rho)?;
            let extension = extend
                .map(|gens| -> Result<Value, CliError> {
                    let s = semigroup(&gens)?;
                    let p = kunz_poset_of(&s, s.multiplicity())?;
                    Ok(json!({
                        "base": p,
                        "augmented": augmented,
                        "poset": extend_poset(&p, &spec, augmented)?,
                    }))
                })
                .transpose()?;
            let image = point
                .map(|w| -> Result<Value, CliError> {
                    let w = CoordTuple::from_nonzero(CoordKind::Apery, &w)?;
                    let x = phi(&spec, &w)?;
                    // the face spanned by the image face and the beta ray
                    let lifted = x.checked_add(&beta_ray(&spec))?;
                    Ok(json!({
                        "phi": x.entries(),
                        "face": face_json(&ConeFace::of_point(&x)?)?,
                        "with_ray": face_json(&ConeFace::of_point(&lifted)?)?,
                    }))
                })
                .transpose()?;
            emit(
                to_json(json!({
                    "n": spec.n(),
                    "beta": spec.beta(),
                    "rho": spec.rho(),
                    "subgroup_order": spec.subgroup_order(),
                    "table": spec.table(),
                    "beta_ray": beta_ray(&spec).entries(),
                    "image": image,
                    "extension": extension,
                })),
                None,
            )
        }
        Command::Verify {
            suite,
            seed,
            max_m,
            max_beta,
            samples,
        } => {
            let config = SweepConfig {
                seed,
                max_size: max_m,
                max_beta,
                samples,
            };
            let reports: Vec<_> = suite.0.iter().map(|&s| run_suite(s, &config)).collect();
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.ok())
                .map(|r| r.suite.to_string())
                .collect();
            emit(
                to_json(json!({ "reports": reports, "ok": failed.is_empty() })),
                None,
            )?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verify(format!(
                    "failed suites: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}

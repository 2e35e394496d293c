use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use eaqec::bounds::{
    bound_report, gv_distance, hamming_bound, lp_bound_with, plotkin_bound, singleton_bound,
    CodeParams, Direction, DEFAULT_NODE_LIMIT,
};
use eaqec::channel::{emit_error_curve, CurveSimulation, CurveSubject};
use eaqec::constructions::{
    accumulator_code, nonexistence_search_with, repetition_code, repetition_encoder_circuit, Family,
    SearchOptions,
};
use eaqec::simulate::simulate_map_block_error;
use eaqec::table::{compute_table, table_csv, LowerBoundDb, TABLE_NODE_LIMIT};
use eaqec::{
    macwilliams_transform, parse_code, serialize_code, EaqecCode, GroupKind, WeightEnumerator,
    DEFAULT_ENUMERATION_CAP,
};

#[derive(Parser)]
#[command(name = "eaqec", version, about = "Entanglement-assisted quantum code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code file's group structure.
    Validate { file: PathBuf },
    /// Write the dual code.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum distance by enumeration.
    Distance {
        file: PathBuf,
        /// Maximum number of group elements to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Weight enumerator of one of the code's groups as `n,label,c0,...,cn`.
    Enumerator {
        file: PathBuf,
        /// stabilizer, logical, isotropic or normalizer.
        #[arg(long, default_value = "stabilizer")]
        group: GroupKind,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Transform an enumerator of a group of order 2^log2-order.
    Macwilliams {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        log2_order: u32,
        /// Comma-separated coefficients A_0,...,A_n.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
    },
    /// Upper bound on the distance of [[n,k,d;c]] codes.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Bound the dual code's distance instead (lp only).
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Build a code (or the repetition encoder circuit) from a family.
    Construct {
        #[arg(value_enum)]
        family: ConstructFamily,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive search for [[n,1,n;n-1]] or [[n,n-1,2;1]] codes.
    CheckNonexistence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        family: Family,
        /// Largest n searched.
        #[arg(long, default_value_t = 6)]
        cap: usize,
        /// Search odd n too, where codes of both families exist.
        #[arg(long)]
        allow_odd: bool,
    },
    /// Monte Carlo block error rate under minimum-weight decoding.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// CSV of block-error bounds over a grid of depolarizing probabilities.
    ErrorCurve {
        /// Code file (repeatable).
        #[arg(long = "code")]
        codes: Vec<PathBuf>,
        /// Family code as FAMILY:N, e.g. repetition:5 (repeatable).
        #[arg(long = "construct")]
        constructs: Vec<String>,
        /// Random-code bound as N,K (repeatable).
        #[arg(long = "random")]
        randoms: Vec<String>,
        /// Comma-separated probabilities.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
        /// Simulate each code subject with this many trials.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Bounds table for maximal-entanglement codes, 3 <= n <= nmax.
    Table {
        #[arg(long, default_value_t = 15)]
        nmax: usize,
        /// Database of known codes.
        #[arg(long, default_value = "data/lower_bounds.csv")]
        lower_db: PathBuf,
        /// Node budget per integer program.
        #[arg(long, default_value_t = TABLE_NODE_LIMIT)]
        node_limit: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Lp,
    Singleton,
    Hamming,
    Plotkin,
    /// Largest distance the Gilbert-Varshamov count guarantees.
    Gv,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    Repetition,
    Accumulator,
    /// The repetition encoder as `CNOT <control> <target>` lines.
    Encoder,
}

fn read_code(path: &Path) -> Result<EaqecCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_code(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_family_spec(spec: &str) -> Result<(String, EaqecCode)> {
    let Some((family, n)) = spec.split_once(':') else {
        bail!("expected FAMILY:N, got {spec:?}");
    };
    let n: usize = n.parse().with_context(|| format!("bad length in {spec:?}"))?;
    let code = match family.parse::<Family>().map_err(anyhow::Error::msg)? {
        Family::Repetition => repetition_code(n)?,
        Family::Accumulator => accumulator_code(n)?,
    };
    Ok((format!("{family}{n}"), code))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file } => {
            let report = read_code(&file)?.validate();
            println!("{report}");
            if !report.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Dual { file, output } => {
            let dual = read_code(&file)?.dual()?;
            emit(output.as_deref(), &serialize_code(&dual))?;
        }
        Command::Distance { file, cap } => {
            println!("{}", read_code(&file)?.distance_with_cap(cap)?);
        }
        Command::Enumerator { file, group, cap } => {
            let code = read_code(&file)?;
            let gens = code.generators(group);
            let e = eaqec::enumerator::weight_enumerator_with_cap(&gens, cap)?;
            println!("{}", e.to_csv_row(group.label()));
        }
        Command::Macwilliams { n, log2_order, coeffs } => {
            let coeffs = coeffs
                .iter()
                .map(|c| c.trim().parse())
                .collect::<Result<Vec<_>, _>>()
                .context("coefficients must be integers")?;
            let a = WeightEnumerator::new(n, coeffs, log2_order)?;
            println!("{}", macwilliams_transform(&a)?.coeffs_csv());
        }
        Command::Bound {
            n,
            k,
            c,
            method,
            dual,
            node_limit,
        } => {
            let params = CodeParams::new(n, k, c)?;
            match method {
                Method::Lp => {
                    let direction = if dual { Direction::Dual } else { Direction::Code };
                    let lp = lp_bound_with(params, node_limit, direction)?;
                    if lp.undecided {
                        eprintln!("note: integer program undecided at node limit; LP relaxation value shown");
                    }
                    println!("{}", lp.value);
                }
                Method::Singleton => println!("{}", singleton_bound(params)),
                Method::Hamming => {
                    let h = hamming_bound(params);
                    if !h.applicable {
                        eprintln!("note: holds for nondegenerate codes only");
                    }
                    println!("{}", h.d);
                }
                Method::Plotkin => println!("{}", plotkin_bound(n, k)?),
                Method::Gv => match gv_distance(params) {
                    Some(d) => println!("{d}"),
                    None => bail!("no distance is guaranteed for {params}"),
                },
                Method::All => print!("{}", bound_report(params, node_limit, None)),
            }
        }
        Command::Construct { family, n, output } => {
            let text = match family {
                ConstructFamily::Repetition => serialize_code(&repetition_code(n)?),
                ConstructFamily::Accumulator => serialize_code(&accumulator_code(n)?),
                ConstructFamily::Encoder => repetition_encoder_circuit(n)?.to_string(),
            };
            emit(output.as_deref(), &text)?;
        }
        Command::CheckNonexistence {
            n,
            family,
            cap,
            allow_odd,
        } => {
            let r = nonexistence_search_with(n, family, SearchOptions { cap, allow_odd })?;
            println!("{r}");
        }
        Command::Simulate { file, p, trials, seed } => {
            let r = simulate_map_block_error(&read_code(&file)?, p, trials, seed)?;
            println!(
                "trials={} failures={} rate={:.6e} ci95=[{:.6e}, {:.6e}] halfwidth={:.6e}",
                r.trials, r.failures, r.rate, r.ci_low, r.ci_high, r.ci_halfwidth
            );
        }
        Command::ErrorCurve {
            codes,
            constructs,
            randoms,
            grid,
            trials,
            seed,
            output,
        } => {
            let mut subjects = Vec::new();
            for path in &codes {
                subjects.push(CurveSubject::Code {
                    label: path.file_stem().map_or("code".into(), |s| s.to_string_lossy().into_owned()),
                    code: read_code(path)?,
                });
            }
            for spec in &constructs {
                let (label, code) = parse_family_spec(spec)?;
                subjects.push(CurveSubject::Code { label, code });
            }
            for spec in &randoms {
                let parsed = spec
                    .split_once(',')
                    .and_then(|(n, k)| Some((n.trim().parse().ok()?, k.trim().parse().ok()?)));
                let Some((n, k)) = parsed else {
                    bail!("expected N,K for --random, got {spec:?}");
                };
                subjects.push(CurveSubject::Random { n, k });
            }
            let simulation = trials.map(|trials| CurveSimulation { trials, seed });
            emit(output.as_deref(), &emit_error_curve(&subjects, &grid, simulation)?)?;
        }
        Command::Table {
            nmax,
            lower_db,
            node_limit,
            output,
        } => {
            if !(3..=15).contains(&nmax) {
                bail!("--nmax must be between 3 and 15");
            }
            let text = fs::read_to_string(&lower_db)
                .with_context(|| format!("reading lower-bound database {}", lower_db.display()))?;
            let db = LowerBoundDb::parse(&text).with_context(|| format!("parsing {}", lower_db.display()))?;
            let rows = compute_table(nmax, &db, node_limit);
            for r in &rows {
                if let Some(note) = &r.note {
                    eprintln!("[[{},{};{}]]: {note}", r.n, r.k, r.c);
                }
            }
            emit(output.as_deref(), &table_csv(&rows))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grpiso::canon::canonize_direct_product;
use grpiso::catalog::{self, catalog};
use grpiso::central::{central_iso, gen_central, recognize_central, AutSpec, CentralIso, Coordinates};
use grpiso::config::RunConfig;
use grpiso::decompose::{decompose, decomposition_is_unique};
use grpiso::oracle::{brute_iso_group, brute_iso_quasigroup};
use grpiso::table::{parse_table, validate_group, validate_quasigroup, write_table, TableKind};
use grpiso::wl::{stable_coloring, wl_distinguishes, Mode, Rounds, Version};
use grpiso::{Error, GroupTable, Perm, QuasigroupTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INVALID: u8 = 2;
const PRECONDITION: u8 = 3;
const BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "grpiso", version, about = "Isomorphism tools for groups and quasigroups given by multiplication tables")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds for brute-force searches.
    #[arg(long, global = true, env = "GRPISO_TIME_BUDGET", default_value_t = 30.0)]
    time_budget: f64,
    /// Cap in bytes on WL per-tuple state.
    #[arg(long, global = true, env = "GRPISO_MEM_CAP", default_value_t = 100_000_000)]
    mem_cap: u64,
    /// Largest automorphism group enumerated element by element.
    #[arg(long, global = true, env = "GRPISO_AUT_CAP", default_value_t = 1_000_000)]
    aut_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a table is a valid group or quasigroup.
    Validate { file: PathBuf },
    /// Weisfeiler-Leman refinement of one group, or of two groups jointly.
    Wl {
        file: PathBuf,
        other: Option<PathBuf>,
        #[command(flatten)]
        wl: WlArgs,
    },
    /// Direct product decomposition into indecomposable factors.
    Decompose { file: PathBuf },
    /// Canonical table of a direct product of d-generated groups.
    Canon {
        file: PathBuf,
        #[arg(short, default_value_t = 3)]
        d: usize,
        /// Write the canonical table here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the labels/factor orders sidecar here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Decide isomorphism of two tables.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Canon)]
        method: Method,
        #[arg(short, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        wl: WlArgs,
    },
    /// Central quasigroups.
    #[command(subcommand)]
    Central(CentralCommand),
    /// Write catalog groups or central quasigroups as tables.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum CentralCommand {
    /// Recover (phi, psi, c) over the group with identity 0.
    Recognize { file: PathBuf },
    /// Decide isomorphism of a central quasigroup with another quasigroup.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// List catalog names.
    List {
        #[arg(long, default_value_t = 300)]
        max_order: usize,
    },
    /// A catalog group by name, e.g. Z4xS3.
    Catalog {
        name: String,
        /// Apply a random relabeling drawn from --seed.
        #[arg(long)]
        relabel: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// x*y = phi(x) + psi(y) + c over a product of cyclic groups.
    Central {
        /// Cyclic factor orders, e.g. 4,2.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<usize>,
        /// `id`, `neg`, an integer scalar, or a comma-separated image list.
        #[arg(long, default_value = "id")]
        phi: String,
        #[arg(long, default_value = "id")]
        psi: String,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long)]
        relabel: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct WlArgs {
    #[arg(short, default_value_t = 2)]
    k: usize,
    /// Stop after this many rounds instead of at stability.
    #[arg(long)]
    rounds: Option<usize>,
    #[arg(long, value_enum, default_value_t = VersionArg::Ii)]
    version: VersionArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Counting)]
    mode: ModeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum VersionArg {
    I,
    Ii,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Counting,
    CountFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Canon,
    Wl,
    Brute,
    CentralAuto,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Canon => "canon",
            Method::Wl => "wl",
            Method::Brute => "brute",
            Method::CentralAuto => "central-auto",
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => BUDGET,
            Error::NotDGenerated { .. }
            | Error::FactorNotDGenerated { .. }
            | Error::NotCentral
            | Error::NotAbelian
            | Error::NotNormal => PRECONDITION,
            _ => INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: INVALID,
        message: message.into(),
    }
}

/// What a subcommand produced: a human summary, a JSON value and an exit
/// code.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        mem_cap: cli.mem_cap,
        time_budget: Duration::from_secs_f64(cli.time_budget.max(0.0)),
        aut_cap: cli.aut_cap,
        ..RunConfig::default()
    };
    let result = run(&cli, &config);
    match result {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else if !r.text.is_empty() {
                print!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.json {
                let status = match f.code {
                    BUDGET => "budget exceeded",
                    PRECONDITION => "precondition failed",
                    _ => "invalid input",
                };
                println!(
                    "{}",
                    json!({"status": status, "error": f.message, "exit_code": f.code})
                );
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, config: &RunConfig) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Wl { file, other, wl } => wl_cmd(file, other.as_deref(), wl, config),
        Command::Decompose { file } => decompose_cmd(file),
        Command::Canon {
            file,
            d,
            output,
            sidecar,
        } => canon_cmd(file, *d, output.as_deref(), sidecar.as_deref()),
        Command::Iso {
            first,
            second,
            method,
            d,
            wl,
        } => iso_cmd(first, second, *method, *d, wl, config),
        Command::Central(CentralCommand::Recognize { file }) => recognize_cmd(file),
        Command::Central(CentralCommand::Iso { first, second }) => central_iso_cmd(first, second),
        Command::Gen(g) => gen_cmd(g, cli.seed),
    }
}

fn read(path: &Path) -> Result<(TableKind, grpiso::MulTable), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_table(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<GroupTable, Failure> {
    let (_, t) = read(path)?;
    validate_group(t).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_quasigroup(path: &Path) -> Result<QuasigroupTable, Failure> {
    let (_, t) = read(path)?;
    validate_quasigroup(t).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn validate(file: &Path) -> Result<Report, Failure> {
    let (kind, t) = read(file)?;
    let n = t.n();
    let checked = match kind {
        TableKind::Group => validate_group(t).map(|_| ()),
        TableKind::Quasigroup => validate_quasigroup(t).map(|_| ()),
    };
    match checked {
        Ok(()) => Ok(Report {
            code: OK,
            text: format!("valid {} of order {n}\n", kind.as_str()),
            json: json!({"valid": true, "kind": kind.as_str(), "n": n}),
        }),
        Err(e) => Ok(Report {
            code: INVALID,
            text: format!("invalid {}: {e}\n", kind.as_str()),
            json: json!({"valid": false, "kind": kind.as_str(), "n": n, "error": e.to_string()}),
        }),
    }
}

fn wl_config(args: &WlArgs, config: &RunConfig) -> grpiso::wl::WLConfig {
    let mut c = RunConfig {
        k: args.k,
        rounds: args.rounds.map_or(Rounds::UntilStable, Rounds::Max),
        version: match args.version {
            VersionArg::I => Version::I,
            VersionArg::Ii => Version::II,
        },
        mode: match args.mode {
            ModeArg::Counting => Mode::Counting,
            ModeArg::CountFree => Mode::CountFree,
        },
        ..config.clone()
    }
    .wl();
    c.mem_cap = config.mem_cap;
    c
}

fn wl_cmd(file: &Path, other: Option<&Path>, args: &WlArgs, config: &RunConfig) -> Result<Report, Failure> {
    let c = wl_config(args, config);
    let g = read_group(file)?;
    let header = json!({"k": c.k, "version": c.version.to_string(), "mode": c.mode.to_string()});
    let Some(other) = other else {
        let (coloring, rounds) = stable_coloring(&g, &c)?;
        let sizes = coloring.class_sizes();
        let mut j = header;
        j["rounds_used"] = json!(rounds);
        j["class_sizes"] = json!([sizes]);
        j["distinguished"] = json!(false);
        j["witness_color"] = Value::Null;
        return Ok(Report {
            code: OK,
            text: format!("{} color classes after {rounds} rounds: {sizes:?}\n", sizes.len()),
            json: j,
        });
    };
    let h = read_group(other)?;
    let d = wl_distinguishes(&g, &h, &c)?;
    let mut j = header;
    j["rounds_used"] = json!(d.round);
    j["class_sizes"] = json!(d.class_sizes);
    j["distinguished"] = json!(d.distinguished);
    j["witness_color"] = json!(d.witness_color);
    let text = if d.distinguished {
        format!("distinguished at round {}\n", d.round)
    } else {
        format!("not distinguished after {} rounds\n", d.round)
    };
    Ok(Report {
        code: if d.distinguished { NEGATIVE } else { OK },
        text,
        json: j,
    })
}

#[derive(Serialize)]
struct FactorJson {
    order: usize,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

fn decompose_cmd(file: &Path) -> Result<Report, Failure> {
    let g = read_group(file)?;
    let d = decompose(&g);
    let unique = decomposition_is_unique(&g, &d);
    let factors: Vec<FactorJson> = d
        .factors
        .iter()
        .zip(&d.generators)
        .map(|(f, gens)| FactorJson {
            order: f.len(),
            elements: f.elements(),
            generators: gens.clone(),
        })
        .collect();
    let orders: Vec<String> = d.orders().iter().map(usize::to_string).collect();
    let mut text = format!(
        "{} = {} ({})\n",
        g.n(),
        orders.join(" x "),
        if unique { "unique" } else { "not unique" }
    );
    for f in &factors {
        text.push_str(&format!("factor of order {} generated by {:?}\n", f.order, f.generators));
    }
    Ok(Report {
        code: OK,
        text,
        json: json!({"factors": factors, "unique": unique}),
    })
}

fn canon_cmd(file: &Path, d: usize, output: Option<&Path>, sidecar: Option<&Path>) -> Result<Report, Failure> {
    let g = read_group(file)?;
    let c = canonize_direct_product(&g, d)?;
    let table = write_table(TableKind::Group, &c.table);
    let side = json!({"labels": c.labels.images(), "factor_orders": c.factor_orders});
    if let Some(path) = sidecar {
        write_file(path, &format!("{side}\n"))?;
    }
    let text = match output {
        Some(path) => {
            write_file(path, &table)?;
            String::new()
        }
        None => table.clone(),
    };
    let mut j = side;
    j["table"] = json!(table);
    Ok(Report {
        code: OK,
        text,
        json: j,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn iso_report(method: &str, answer: Option<bool>, status: &str, map: Option<&Perm>) -> Report {
    let code = match answer {
        Some(false) => NEGATIVE,
        _ => OK,
    };
    Report {
        code,
        text: format!("{status} (decided by {method})\n"),
        json: json!({
            "isomorphic": answer,
            "status": status,
            "method": method,
            "isomorphism": map.map(Perm::images),
        }),
    }
}

fn iso_cmd(
    first: &Path,
    second: &Path,
    method: Method,
    d: usize,
    wl: &WlArgs,
    config: &RunConfig,
) -> Result<Report, Failure> {
    let status = |b: bool| if b { "isomorphic" } else { "not isomorphic" };
    match method {
        Method::Canon => {
            let (g, h) = (read_group(first)?, read_group(second)?);
            if g.n() != h.n() {
                return Ok(iso_report(method.name(), Some(false), status(false), None));
            }
            let (cg, ch) = (canonize_direct_product(&g, d)?, canonize_direct_product(&h, d)?);
            let same = cg.table == ch.table;
            let map = same.then(|| cg.labels.then(&ch.labels.inverse()));
            Ok(iso_report(method.name(), Some(same), status(same), map.as_ref()))
        }
        Method::Wl => {
            let (g, h) = (read_group(first)?, read_group(second)?);
            let dist = wl_distinguishes(&g, &h, &wl_config(wl, config))?;
            if dist.distinguished {
                Ok(iso_report(method.name(), Some(false), status(false), None))
            } else {
                Ok(iso_report(method.name(), None, "not distinguished", None))
            }
        }
        Method::Brute => {
            let (k1, t1) = read(first)?;
            let (k2, t2) = read(second)?;
            let map = if k1 == TableKind::Group && k2 == TableKind::Group {
                let g = validate_group(t1).map_err(|e| invalid(e.to_string()))?;
                let h = validate_group(t2).map_err(|e| invalid(e.to_string()))?;
                brute_iso_group(&g, &h, config.time_budget)?
            } else {
                let q1 = validate_quasigroup(t1).map_err(|e| invalid(e.to_string()))?;
                let q2 = validate_quasigroup(t2).map_err(|e| invalid(e.to_string()))?;
                brute_iso_quasigroup(&q1, &q2, config.time_budget)?
            };
            Ok(iso_report(method.name(), Some(map.is_some()), status(map.is_some()), map.as_ref()))
        }
        Method::CentralAuto => {
            let (q1, q2) = (read_quasigroup(first)?, read_quasigroup(second)?);
            if recognize_central(&q1).is_some() {
                let r = central_iso(&q1, &q2)?;
                let cert = r.certificate().map(|c| &c.iso);
                let answer = matches!(r, CentralIso::Isomorphic(_));
                Ok(iso_report("central", Some(answer), status(answer), cert))
            } else {
                let map = brute_iso_quasigroup(&q1, &q2, config.time_budget)?;
                Ok(iso_report("brute", Some(map.is_some()), status(map.is_some()), map.as_ref()))
            }
        }
    }
}

fn recognize_cmd(file: &Path) -> Result<Report, Failure> {
    let q = read_quasigroup(file)?;
    let Some(f) = recognize_central(&q) else {
        return Ok(Report {
            code: NEGATIVE,
            text: "not central\n".into(),
            json: json!({"central": false}),
        });
    };
    let orders = Coordinates::new(&f.plus)?.orders;
    Ok(Report {
        code: OK,
        text: format!(
            "central over {orders:?}\nphi {}\npsi {}\nc {}\n",
            f.phi, f.psi, f.c
        ),
        json: json!({
            "central": true,
            "phi": f.phi.images(),
            "psi": f.psi.images(),
            "c": f.c,
            "group_orders": orders,
        }),
    })
}

fn central_iso_cmd(first: &Path, second: &Path) -> Result<Report, Failure> {
    let (q1, q2) = (read_quasigroup(first)?, read_quasigroup(second)?);
    let r = central_iso(&q1, &q2)?;
    let (code, answer) = match r {
        CentralIso::Isomorphic(_) => (OK, Some(true)),
        CentralIso::NotIsomorphic => (NEGATIVE, Some(false)),
        CentralIso::NotCentral => (PRECONDITION, None),
    };
    let cert = r.certificate();
    let mut text = format!("{}\n", r.status());
    if let Some(c) = cert {
        text.push_str(&format!("gamma {}\nu {}\nisomorphism {}\n", c.gamma, c.u, c.iso));
    }
    Ok(Report {
        code,
        text,
        json: json!({
            "isomorphic": answer,
            "status": r.status(),
            "gamma": cert.map(|c| c.gamma.images()),
            "u": cert.map(|c| c.u),
            "isomorphism": cert.map(|c| c.iso.images()),
        }),
    })
}

fn gen_cmd(g: &GenCommand, seed: u64) -> Result<Report, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (kind, table) = match g {
        GenCommand::List { max_order } => {
            let names: Vec<(String, usize)> = catalog()
                .into_iter()
                .filter(|e| e.order() <= *max_order)
                .map(|e| (e.name.clone(), e.order()))
                .collect();
            let text: String = names.iter().map(|(n, o)| format!("{o}\t{n}\n")).collect();
            let list: Vec<Value> = names
                .iter()
                .map(|(n, o)| json!({"name": n, "order": o}))
                .collect();
            return Ok(Report {
                code: OK,
                text,
                json: json!(list),
            });
        }
        GenCommand::Catalog { name, relabel, .. } => {
            let e = catalog::find(name).ok_or_else(|| invalid(format!("no catalog group named {name:?}")))?;
            let mut t = e.table().clone();
            if *relabel {
                t = t.relabel(&Perm::random(t.n(), &mut rng));
            }
            (TableKind::Group, t.table().clone())
        }
        GenCommand::Central {
            orders,
            phi,
            psi,
            c,
            relabel,
            ..
        } => {
            if orders.iter().any(|&m| m < 1) {
                return Err(invalid("cyclic orders must be positive"));
            }
            let phi: AutSpec = phi.parse()?;
            let psi: AutSpec = psi.parse()?;
            let mut q = gen_central(orders, &phi, &psi, *c)?;
            if *relabel {
                q = q.relabel(&Perm::random(q.n(), &mut rng));
            }
            (TableKind::Quasigroup, q.table().clone())
        }
    };
    let output = match g {
        GenCommand::Catalog { output, .. } | GenCommand::Central { output, .. } => output.as_deref(),
        GenCommand::List { .. } => None,
    };
    let text = write_table(kind, &table);
    let json = json!({"kind": kind.as_str(), "n": table.n(), "table": text});
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Report {
                code: OK,
                text: String::new(),
                json,
            })
        }
        None => Ok(Report { code: OK, text, json }),
    }
}

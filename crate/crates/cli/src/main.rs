use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use valex::gauss::{GaussDiagram, GaussError};
use valex::groups::{
    elementary_ideals, longitude, reduced_group, tietze_eliminate, wirtinger, Abelianization,
    GroupPresentation, GroupsError,
};
use valex::sawollek::{delta0, writhe_from_delta, SawollekError};
use valex::sieve::{load_census, load_flags, merge_external_flags, run_sieve, SieveOptions};
use valex::zh::zh;
use valex::UnitClass;

/// Concordance invariants of virtual knots from Gauss codes.
#[derive(Parser, Debug)]
#[command(name = "valex", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = UnitArg::MonomialSign)]
    unit_class: UnitArg,
    /// Evaluate census records one at a time.
    #[arg(long, global = true)]
    serial: bool,
    /// Skip unparsable census lines instead of stopping.
    #[arg(long, global = true)]
    skip_bad: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum UnitArg {
    MonomialSign,
    StPowers,
    Exact,
}

impl From<UnitArg> for UnitClass {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::MonomialSign => UnitClass::UpToMonomialSign,
            UnitArg::StPowers => UnitClass::UpToPowersOfST,
            UnitArg::Exact => UnitClass::Exact,
        }
    }
}

/// A Gauss code given inline or read from a file.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Input {
    /// Gauss code, e.g. "O1-O2-U1-O3+U2-O4+U3+U4+" (use "" for the unknot).
    code: Option<String>,
    /// Read the Gauss code from a file.
    #[arg(long = "file")]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized Alexander polynomial and the slice obstruction.
    Delta(Input),
    /// Writhe polynomial -(Δ⁰/(1-st))(t^-1, t).
    Writhe(Input),
    /// Gauss code of the Zh-construction.
    Zh(Input),
    /// Wirtinger presentation of the link group.
    Group {
        #[command(flatten)]
        input: Input,
        /// Present the reduced group (the group of Zh).
        #[arg(long)]
        reduced: bool,
        /// Run Tietze elimination on the presentation.
        #[arg(long)]
        simplify: bool,
    },
    /// Elementary ideals of the Alexander matrix.
    Ideals {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        reduced: bool,
        /// Largest k to compute.
        #[arg(long, default_value_t = 1)]
        k_max: usize,
    },
    /// Longitudes in the Wirtinger generators.
    Longitude {
        #[command(flatten)]
        input: Input,
        /// 1-based component; all components when omitted.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Slice-obstruction sieve over a census file.
    Sieve {
        #[arg(long)]
        census: PathBuf,
        /// File of `name key=value` lines (graded_genus_zero, rasmussen).
        #[arg(long)]
        flags: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl From<GaussError> for Failure {
    fn from(e: GaussError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<SawollekError> for Failure {
    fn from(e: SawollekError) -> Self {
        match e {
            SawollekError::NotDivisible => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GroupsError> for Failure {
    fn from(e: GroupsError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl Input {
    fn diagram(&self) -> Result<(String, GaussDiagram), Failure> {
        let text = match (&self.code, &self.file) {
            (Some(c), _) => c.clone(),
            (None, Some(p)) => std::fs::read_to_string(p)
                .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
                .trim()
                .to_string(),
            (None, None) => unreachable!("clap requires one input"),
        };
        let d = valex::gauss::parse_diagram(&text)?;
        Ok((text, d))
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn presentation_json(p: &GroupPresentation) -> Value {
    json!({
        "generators": p.generators().iter().map(|g| json!({
            "name": g.name(),
            "omega": g.tag.is_omega(),
        })).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
        "deficiency": p.deficiency(),
        "text": p.to_string(),
    })
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let unit: UnitClass = cli.unit_class.into();
    let mut out = String::new();
    match &cli.command {
        Command::Delta(input) => {
            let (code, d) = input.diagram()?;
            let g = delta0(&d)?;
            let canonical = g.raw.canonicalize(unit).to_string();
            let obstructed = d.is_knot().then_some(!g.is_zero);
            match cli.format {
                Format::Text => {
                    writeln!(out, "delta0: {canonical}").unwrap();
                    writeln!(out, "zero: {}", g.is_zero).unwrap();
                    if let Some(o) = obstructed {
                        writeln!(out, "obstructed: {o}").unwrap();
                    }
                }
                Format::Json => {
                    let v = json!({"code": code, "delta0": canonical, "zero": g.is_zero, "obstructed": obstructed});
                    writeln!(out, "{v}").unwrap();
                }
                Format::Csv => {
                    out.push_str(&csv_line(&["code".into(), "delta0".into(), "zero".into(), "obstructed".into()]));
                    let o = obstructed.map(|o| o.to_string()).unwrap_or_default();
                    out.push_str(&csv_line(&[code, canonical, g.is_zero.to_string(), o]));
                }
            }
        }
        Command::Writhe(input) => {
            let (code, d) = input.diagram()?;
            let g = delta0(&d)?;
            let w = writhe_from_delta(&g, &d)?.to_string();
            match cli.format {
                Format::Text => writeln!(out, "writhe: {w}").unwrap(),
                Format::Json => writeln!(out, "{}", json!({"code": code, "writhe": w})).unwrap(),
                Format::Csv => {
                    out.push_str(&csv_line(&["code".into(), "writhe".into()]));
                    out.push_str(&csv_line(&[code, w]));
                }
            }
        }
        Command::Zh(input) => {
            let (_, d) = input.diagram()?;
            let z = zh(&d).map_err(|e| Failure::Input(e.to_string()))?;
            let code = z.diagram.to_code();
            match cli.format {
                Format::Json => {
                    let comps: Vec<Value> = code
                        .components()
                        .iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let text: String = c.iter().map(|t| t.to_string()).collect();
                            json!({"code": text, "omega": i == z.omega_index})
                        })
                        .collect();
                    writeln!(out, "{}", json!({"code": code.to_string(), "components": comps})).unwrap();
                }
                _ => {
                    writeln!(out, "code: {code}").unwrap();
                    writeln!(out, "omega: component {}", z.omega_index + 1).unwrap();
                }
            }
        }
        Command::Group {
            input,
            reduced,
            simplify,
        } => {
            let (_, d) = input.diagram()?;
            let mut p = if *reduced { reduced_group(&d)? } else { wirtinger(&d) };
            if *simplify {
                p = tietze_eliminate(&p);
            }
            match cli.format {
                Format::Json => writeln!(out, "{}", presentation_json(&p)).unwrap(),
                _ => writeln!(out, "{p}").unwrap(),
            }
        }
        Command::Ideals {
            input,
            reduced,
            k_max,
        } => {
            let (_, d) = input.diagram()?;
            let p = if *reduced { reduced_group(&d)? } else { wirtinger(&d) };
            let ideals = elementary_ideals(&p, &Abelianization::graded(&p), *k_max);
            match cli.format {
                Format::Json => {
                    let v: Vec<Value> = ideals
                        .iter()
                        .map(|e| {
                            json!({
                                "k": e.k,
                                "gcd": e.gcd_generator.canonicalize(unit).to_string(),
                                "generators": e.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    writeln!(out, "{}", Value::Array(v)).unwrap();
                }
                Format::Csv => {
                    out.push_str(&csv_line(&["k".into(), "gcd".into(), "minors".into()]));
                    for e in &ideals {
                        let g = e.gcd_generator.canonicalize(unit).to_string();
                        out.push_str(&csv_line(&[e.k.to_string(), g, e.generators.len().to_string()]));
                    }
                }
                Format::Text => {
                    for e in &ideals {
                        let g = e.gcd_generator.canonicalize(unit);
                        writeln!(out, "E{}: gcd {} ({} distinct minors)", e.k, g, e.generators.len()).unwrap();
                    }
                }
            }
        }
        Command::Longitude { input, component } => {
            let (_, d) = input.diagram()?;
            let p = wirtinger(&d);
            let comps: Vec<usize> = match component {
                Some(0) => return Err(Failure::Input("components are numbered from 1".into())),
                Some(c) => vec![c - 1],
                None => (0..d.component_count()).collect(),
            };
            let mut words = Vec::new();
            for c in comps {
                words.push((c + 1, p.format_word(&longitude(&d, c)?)));
            }
            match cli.format {
                Format::Json => {
                    let v: Vec<Value> = words.iter().map(|(c, w)| json!({"component": c, "longitude": w})).collect();
                    writeln!(out, "{}", Value::Array(v)).unwrap();
                }
                Format::Csv => {
                    out.push_str(&csv_line(&["component".into(), "longitude".into()]));
                    for (c, w) in words {
                        out.push_str(&csv_line(&[c.to_string(), w]));
                    }
                }
                Format::Text => {
                    for (c, w) in words {
                        writeln!(out, "component {c}: {w}").unwrap();
                    }
                }
            }
        }
        Command::Sieve { census, flags } => {
            let c = load_census(census, cli.skip_bad).map_err(|e| Failure::Input(e.to_string()))?;
            for e in &c.skipped {
                eprintln!("warning: skipped census {e}");
            }
            let opts = SieveOptions {
                unit_class: unit,
                serial: cli.serial,
            };
            let mut report = run_sieve(&c.records, &opts);
            if let Some(path) = flags {
                let table = load_flags(path).map_err(|e| Failure::Input(e.to_string()))?;
                let (merged, warnings) = merge_external_flags(&report, &table);
                for w in warnings {
                    eprintln!("warning: {w}");
                }
                report = merged;
            }
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).unwrap(),
                Format::Csv => {
                    let mut buf = Vec::new();
                    report.write_csv(&mut buf).map_err(|e| Failure::Input(e.to_string()))?;
                    out.push_str(&String::from_utf8(buf).expect("utf-8"));
                }
                Format::Text => {
                    for r in &report.rows {
                        match (&r.delta0_canonical, &r.error) {
                            (Some(p), _) => {
                                let verdict = if r.obstructed == Some(true) { "obstructed" } else { "no obstruction" };
                                write!(out, "{}\t{}\t{}", r.name, verdict, p).unwrap();
                                if let Some(s) = r.survives {
                                    write!(out, "\tsurvives={s}").unwrap();
                                }
                                writeln!(out).unwrap();
                            }
                            (None, e) => {
                                writeln!(out, "{}\terror\t{}", r.name, e.as_deref().unwrap_or("")).unwrap();
                            }
                        }
                    }
                    let s = &report.summary;
                    write!(
                        out,
                        "total: {}  delta0 zero: {}  obstructed: {}  errors: {}",
                        s.total, s.delta0_zero_count, s.obstructed_count, s.error_count
                    )
                    .unwrap();
                    if let Some(n) = s.survivor_count {
                        write!(out, "  survivors: {n}").unwrap();
                    }
                    writeln!(out).unwrap();
                }
            }
            if report.has_invariant_violation() {
                io::stdout().write_all(out.as_bytes()).ok();
                return Err(Failure::Invariant("invariant violated in at least one census row".into()));
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // a closed pipe is not worth a panic
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pencil::bifurcation::{classify, verify_against_paper};
use pencil::deformation::{
    check_directions_miniversal, check_transversal, miniversal_template, orbit_codimension,
    tangent_space, Variant,
};
use pencil::io;
use pencil::kronecker::{kronecker_form, kronecker_structure, kronecker_type};
use pencil::pencil::jiggle;
use pencil::strata::generic_list;
use pencil::{Error, Pencil, Q};

#[derive(Parser)]
#[command(
    name = "pencil",
    version,
    about = "Exact computations with matrix pencils"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// JSON input file, or `-` for standard input.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker canonical form with a transforming witness.
    Kform(Input),
    /// Kronecker type string.
    Type(Input),
    /// Orbit and stratum codimension.
    Codim(Input),
    /// Miniversal deformation template of the canonical form.
    Miniversal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "M")]
        variant: String,
    },
    /// Rank criteria for a pencil's template or for a template file.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(
            long,
            conflicts_with = "transversal",
            required_unless_present = "transversal"
        )]
        miniversal: bool,
        #[arg(long)]
        transversal: bool,
        /// Template variant used when the input is a bare pencil.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Kronecker types of stratum codimension at most k with their diagram patterns.
    Strata {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Bifurcation diagram of a family.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-derive the diagram of a proof case.
    VerifyPaper {
        #[arg(long = "case")]
        case_id: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Small random perturbation into the generic stratum.
    Jiggle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Malformed(String),
    Domain(Error),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Malformed(m),
            e => Failure::Domain(e),
        }
    }
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| text = s)
    };
    res.map_err(|e| Failure::Malformed(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("invalid JSON: {e}")))
}

fn read_pencil(input: &Input) -> Result<Pencil, Failure> {
    Ok(io::pencil_from_json(&read_json(&input.input)?)?)
}

fn variant(s: &str) -> Result<Variant, Failure> {
    s.parse()
        .map_err(|_| Failure::Malformed(format!("unknown variant {s:?}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap()
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Kform(input) => {
            let p = read_pencil(&input)?;
            let (form, w) = kronecker_form(&p)?;
            pretty(&io::kform_to_json(&form, &w))
        }
        Command::Type(input) => kronecker_type(&read_pencil(&input)?).to_string(),
        Command::Codim(input) => {
            let p = read_pencil(&input)?;
            let total = orbit_codimension(&p);
            let moving: usize = kronecker_structure(&p)
                .segre_blocks()
                .iter()
                .map(|s| s.eigenvalue.conjugate_count())
                .sum();
            pretty(&json!({"total": total, "stratum": total - moving}))
        }
        Command::Miniversal { input, variant: v } => {
            let v = variant(&v)?;
            let p = read_pencil(&input)?;
            let t = miniversal_template(&kronecker_structure(&p))?;
            pretty(&io::template_to_json(&t, v))
        }
        Command::Check {
            input,
            miniversal,
            transversal: _,
            variant: v,
        } => {
            let doc = read_json(&input.input)?;
            let (base, dirs) = if doc.get("slots").is_some() {
                let (base, slots) = io::slots_from_json(&doc)?;
                let dirs = io::slot_directions(&base, &slots);
                (base, dirs)
            } else {
                let p = io::pencil_from_json(&doc)?;
                let v = match &v {
                    Some(s) => variant(s)?,
                    None if miniversal => Variant::M,
                    None => Variant::Mprime,
                };
                let t = miniversal_template(&kronecker_structure(&p))?;
                (t.base.clone(), t.directions(v))
            };
            let dimension = 2 * base.m() * base.n();
            if miniversal {
                let ok = check_directions_miniversal(&base, &dirs);
                let rank = tangent_space(&base).union(&dirs)?.rank();
                pretty(&json!({
                    "miniversal": ok,
                    "parameters": dirs.len(),
                    "rank": rank,
                    "dimension": dimension,
                }))
            } else {
                let rep = check_transversal(&dirs, &base)?;
                pretty(&json!({
                    "transversal": rep.transversal,
                    "direct": rep.direct,
                    "parameters": dirs.len(),
                    "direction_rank": dirs.rank(),
                    "dimension": dimension,
                }))
            }
        }
        Command::Strata { m, n, k } => {
            if k > 2 {
                return Err(Failure::Domain(Error::Unsupported(
                    "strata lists stop at codimension 2".into(),
                )));
            }
            pretty(&io::strata_to_json(&generic_list(m, n, k)))
        }
        Command::Classify { input, seed } => {
            let f = io::family_from_json(&read_json(&input.input)?)?;
            pretty(&io::diagram_to_json(&classify(&f, seed)?))
        }
        Command::VerifyPaper {
            case_id,
            r,
            t,
            seed,
        } => {
            let reports = verify_against_paper(&case_id, r, t, seed)?;
            let passed = reports.iter().all(|c| c.passed);
            let out = json!({
                "case": case_id,
                "r": r,
                "t": t,
                "passed": passed,
                "variants": reports
                    .iter()
                    .map(|c| json!({
                        "variant": c.variant,
                        "passed": c.passed,
                        "diagram": io::diagram_to_json(&c.diagram),
                        "notes": c.notes,
                    }))
                    .collect::<Vec<_>>(),
            });
            if !passed {
                return Err(Failure::Verification(out));
            }
            pretty(&out)
        }
        Command::Jiggle { input, eps, seed } => {
            let eps: Q = eps
                .parse()
                .map_err(|_| Failure::Malformed(format!("bad --eps {eps:?}")))?;
            if !eps.is_real() {
                return Err(Failure::Malformed("--eps must be real".into()));
            }
            let p = read_pencil(&input)?;
            pretty(&io::pencil_to_json(&jiggle(&p, eps.re(), seed)?))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("{}", json!({"error": "parse", "message": msg}));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            println!("{}", pretty(&report));
            eprintln!(
                "{}",
                json!({"error": "verification_failed", "message": "diagram differs from the stated one"})
            );
            ExitCode::from(1)
        }
    }
}

//! `gpi`: generalized identities of finite-dimensional W-algebras from the
//! command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or input errors.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gpi_core::gid_engine::{multiplicity_bound_check, GidEngine, Target};
use gpi_core::gpoly::{capelli, GenPoly, GradedGenPoly};
use gpi_core::sn_rep::to_i64;
use gpi_core::super_envelope::{graded_ut2_d, tilde_sides};
use gpi_core::symfunc::{expand_closed_form, ClosedForm, SchurExpansion};
use gpi_core::verification::{run_all, run_criterion};
use gpi_core::walg_model::{builtin_super, AlgebraDocument, WSuperAlgebra};
use gpi_core::GpiError;

#[derive(Parser)]
#[command(name = "gpi", version, about = "Generalized polynomial identities of finite-dimensional W-algebras")]
struct Cli {
    /// Emit machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized codimension gc_n.
    Codim {
        #[arg(long)]
        algebra: String,
        #[arg(short)]
        n: usize,
    },
    /// Cocharacter multiplicities m_lambda.
    Cocharacter {
        #[arg(long)]
        algebra: String,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Pipeline::Sn)]
        pipeline: Pipeline,
    },
    /// Truncated Hilbert series in k variables.
    Hilbert {
        #[arg(long)]
        algebra: String,
        #[arg(short)]
        k: usize,
        #[arg(short = 'N')]
        max_degree: u32,
        /// Compare with a closed form: ut2, ut2_D, ut2_F or free(d).
        #[arg(long)]
        closed_form: Option<String>,
    },
    /// Whether a generalized polynomial is an identity.
    CheckIdentity {
        #[arg(long)]
        algebra: String,
        /// Polynomial text, or a file containing it.
        #[arg(long)]
        poly: String,
    },
    /// Capelli identity of rank m.
    Capelli {
        #[arg(long)]
        algebra: String,
        #[arg(short)]
        m: usize,
        /// Check every W-specialization instead of the ordinary polynomial.
        #[arg(long)]
        generalized: bool,
    },
    /// Multiplicity bound through ordinary multiplicities in degree 2n+1.
    Bound {
        #[arg(long)]
        algebra: String,
        #[arg(short)]
        n: usize,
    },
    /// Run the acceptance suite.
    VerifyPaper {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
    /// Tilde correspondence between A and its Grassmann envelope.
    EnvelopeCheck {
        /// Graded algebra: a built-in or a document with a parity field.
        /// Defaults to UT2 with W = D, graded by e12.
        #[arg(long)]
        algebra: Option<String>,
        /// Graded polynomial in y (even) and z (odd); without it the
        /// standard desk cases run.
        #[arg(long)]
        poly: Option<String>,
        /// Grassmann generators; defaults to the degree of the polynomial.
        #[arg(short)]
        m: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Sn,
    Gl,
    Both,
}

/// A report: text for humans, JSON for machines, and whether every check
/// it contains passed.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn read_arg(arg: &str) -> Result<String, GpiError> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| GpiError::Document(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn engine(name: &str) -> Result<GidEngine, GpiError> {
    if Path::new(name).is_file() {
        let act = AlgebraDocument::parse(&read_arg(name)?)?.to_action(true)?;
        return Ok(GidEngine::new(act));
    }
    GidEngine::from_name(name)
}

fn super_algebra(name: &str) -> Result<WSuperAlgebra, GpiError> {
    if Path::new(name).is_file() {
        return AlgebraDocument::parse(&read_arg(name)?)?.to_super(true);
    }
    builtin_super(name.parse()?)
}

fn schur_json(e: &SchurExpansion) -> Value {
    let terms: Vec<Value> = e
        .iter()
        .map(|(l, m)| {
            let m = to_i64(m).map_or_else(|| json!(m.to_string()), |v| json!(v));
            json!({"partition": l.parts(), "multiplicity": m})
        })
        .collect();
    Value::Array(terms)
}

fn schur_table(e: &SchurExpansion) -> String {
    let w = e.iter().map(|(l, _)| l.to_string().len()).max().unwrap_or(0).max("lambda".len());
    let mut out = format!("{:<w$}  m\n", "lambda");
    for (l, m) in e.iter() {
        out += &format!("{:<w$}  {m}\n", l.to_string());
    }
    out
}

fn run(cli: &Cli) -> Result<Report, GpiError> {
    match &cli.command {
        Command::Codim { algebra, n } => {
            let e = engine(algebra)?;
            let gc = e.codimension(*n)?;
            Ok(Report::ok(format!("gc_{n} = {gc}\n"), json!({"algebra": e.name(), "n": n, "gc": gc})))
        }
        Command::Cocharacter { algebra, n, pipeline } => {
            let e = engine(algebra)?;
            let sn = matches!(pipeline, Pipeline::Sn | Pipeline::Both).then(|| e.cocharacter(*n)).transpose()?;
            let gl = matches!(pipeline, Pipeline::Gl | Pipeline::Both)
                .then(|| e.gl_pipeline_multiplicities(*n, *n))
                .transpose()?;
            let mut text = String::new();
            let mut doc = json!({"algebra": e.name(), "n": n});
            if let Some(c) = &sn {
                if gl.is_some() {
                    text += "S_n pipeline\n";
                }
                text += &c.to_table();
                doc["sn"] = c.to_json();
            }
            if let Some(g) = &gl {
                if sn.is_some() {
                    text += "GL pipeline\n";
                }
                text += &schur_table(g);
                doc["gl"] = schur_json(g);
            }
            let mut ok = true;
            if let (Some(c), Some(g)) = (&sn, &gl) {
                ok = c.multiplicities == *g;
                text += if ok { "pipelines agree\n" } else { "pipelines DISAGREE\n" };
                doc["agree"] = json!(ok);
            }
            Ok(Report { text, json: doc, ok })
        }
        Command::Hilbert { algebra, k, max_degree, closed_form } => {
            let e = engine(algebra)?;
            let series = e.hilbert_truncated(*k, *max_degree)?;
            let mut text = series.to_text();
            let mut doc = json!({"algebra": e.name(), "k": k, "N": max_degree, "series": series.to_text()});
            let mut ok = true;
            if let Some(name) = closed_form {
                let form: ClosedForm = name.parse()?;
                ok = expand_closed_form(form, *k, *max_degree) == series;
                text += if ok { "MATCH\n" } else { "MISMATCH\n" };
                doc["match"] = json!(ok);
            }
            Ok(Report { text, json: doc, ok })
        }
        Command::CheckIdentity { algebra, poly } => {
            let e = engine(algebra)?;
            let f = GenPoly::parse(read_arg(poly)?.trim(), e.dim_w())?;
            let holds = e.is_identity(&f)?;
            let verdict = if holds { "identity" } else { "not an identity" };
            Ok(Report::ok(format!("{verdict}\n"), json!({"algebra": e.name(), "poly": f.to_string(), "identity": holds})))
        }
        Command::Capelli { algebra, m, generalized } => {
            let e = engine(algebra)?;
            let holds = if *generalized { e.capelli_report(*m)? } else { e.is_identity(&capelli(*m, e.dim_w()))? };
            let kind = if *generalized { "generalized Capelli set" } else { "Capelli polynomial" };
            let verdict = if holds { "holds" } else { "fails" };
            Ok(Report::ok(
                format!("{kind} of rank {m}: {verdict}\n"),
                json!({"algebra": e.name(), "m": m, "generalized": generalized, "holds": holds}),
            ))
        }
        Command::Bound { algebra, n } => {
            let e = engine(algebra)?;
            let Target::Algebra(act) = e.target() else {
                return Err(GpiError::InvalidArgument("the bound needs a finite-dimensional algebra".into()));
            };
            let r = multiplicity_bound_check(act, *n)?;
            Ok(Report { text: r.to_table(), json: r.to_json(), ok: r.holds() })
        }
        Command::VerifyPaper { criterion } => {
            let reports = match criterion {
                Some(id) => vec![run_criterion(*id)?],
                None => run_all(),
            };
            let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let doc: Vec<Value> = reports
                .iter()
                .map(|r| json!({"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail}))
                .collect();
            Ok(Report { text, json: Value::Array(doc), ok: reports.iter().all(|r| r.passed) })
        }
        Command::EnvelopeCheck { algebra, poly, m } => {
            let a = match algebra {
                Some(name) => super_algebra(name)?,
                None => graded_ut2_d()?,
            };
            let dw = a.action().dim_w();
            let polys: Vec<String> = match poly {
                Some(p) => vec![read_arg(p)?.trim().to_string()],
                None => desk_polynomials(dw),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for p in polys {
                let f = GradedGenPoly::parse(&p, dw)?;
                let gens = m.unwrap_or_else(|| f.degree().max(1));
                let (envelope_side, base_side) = tilde_sides(&f, &a, gens)?;
                let agree = envelope_side == base_side;
                ok &= agree;
                text += &format!(
                    "{f}: in gid(E(A)) = {envelope_side}, tilde in gid(A) = {base_side}, {}\n",
                    if agree { "correspondence holds" } else { "correspondence FAILS" }
                );
                rows.push(json!({"poly": f.to_string(), "envelope": envelope_side, "tilde_base": base_side, "holds": agree}));
            }
            Ok(Report { text, json: json!({"algebra": a.action().name(), "checks": rows}), ok })
        }
    }
}

/// Desk polynomials for the default graded algebra.
fn desk_polynomials(dim_w: usize) -> Vec<String> {
    let mut out = vec!["y1 y2 - y2 y1".to_string(), "z1 z2 - z2 z1".to_string(), "y1 z1 - z1 y1".to_string()];
    if dim_w >= 2 {
        out.push("w[0] y1 w[1] z1 w[1] + 2 * w[0] z1 y1 w[1]".to_string());
    }
    out
}

fn configure_threads() -> Result<(), GpiError> {
    if let Ok(v) = std::env::var("GPI_THREADS") {
        let n: usize = v.parse().map_err(|_| GpiError::InvalidArgument(format!("GPI_THREADS={v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| GpiError::InvalidArgument(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| run(&cli));
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ GpiError::Verification(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command-line front end. Every command produces a [`CommandResult`]; the
//! binary prints either its human-readable text or, with `--json`, the
//! envelope `{"command", "status", "result", "diagnostics"}`.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::digraph::{self, Digraph};
use crate::error::{Error, Result};
use crate::fiberedface::{self, Table};
use crate::intpoly::{named_polynomial, IntLaurentPoly, NamedPoly};
use crate::matrix;
use crate::rootloc::{self, RootEnclosure, DEFAULT_TOL};
use crate::traintrack;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl CommandResult {
    fn ok(command: &str, payload: Value, text: String) -> Self {
        CommandResult {
            command: command.into(),
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
            text,
        }
    }

    fn error(command: &str, message: String) -> Self {
        CommandResult {
            command: command.into(),
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![message],
            text: String::new(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status,
            "result": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dilatation",
    about = "Certified dilatations, train-track circuits and fibered-face tables"
)]
struct Cli {
    /// Print the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Copy)]
struct Tol {
    /// Enclosure width target.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Certified house (largest root modulus) of a polynomial.
    House {
        /// Polynomial text such as "t^4 - t^3 - t^2 - t + 1", or a name:
        /// lehmer, smyth, sigma, pn(N).
        poly: String,
        #[command(flatten)]
        tol: Tol,
    },
    /// Certified Mahler measure of a polynomial.
    Mahler {
        poly: String,
        #[command(flatten)]
        tol: Tol,
    },
    /// LT_{a,b} and the monodromy invariants of the class (a, b).
    Lt {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        tol: Tol,
    },
    /// Specialization of the magic-manifold polynomial at (x, y, z).
    Magic {
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long, allow_negative_numbers = true)]
        y: i64,
        #[arg(long, allow_negative_numbers = true)]
        z: i64,
        #[command(flatten)]
        tol: Tol,
    },
    /// The minimum-dilatation and LT digraph families.
    Digraph {
        family: DigraphFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        charpoly: bool,
        #[arg(long)]
        spectral: bool,
        #[command(flatten)]
        tol: Tol,
    },
    /// Properties of the family train track.
    Track {
        family: FamilyOnly,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        genus: bool,
        #[arg(long)]
        orientable: bool,
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        weights: bool,
    },
    /// Transition matrix of the family folding circuit.
    Circuit {
        family: FamilyOnly,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        charpoly: bool,
    },
    /// Regenerate a reference table; exits 2 on any numeric mismatch.
    Table {
        which: TableName,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        tol: Tol,
    },
    /// Convergence of house(LT_{1,n})^n and ^2n.
    Converge {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        tol: Tol,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DigraphFamily {
    Mindil,
    Lt,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyOnly {
    Family,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableName {
    Smalldil,
    Mindil,
}

/// Decimal places matching the tolerance.
fn digits(tol: f64) -> usize {
    if tol.is_finite() && tol > 0.0 {
        ((-tol.log10()).ceil().max(1.0) as usize).min(17)
    } else {
        10
    }
}

fn fmt_enclosure(r: &RootEnclosure, tol: f64) -> String {
    let d = digits(tol);
    format!("{:.d$}  (enclosure [{}, {}])", r.mid(), r.lo, r.hi)
}

fn parse_poly(text: &str) -> Result<IntLaurentPoly> {
    match NamedPoly::from_str(text) {
        Ok(name) => named_polynomial(name),
        Err(_) => IntLaurentPoly::parse(text),
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("--tol must be a positive number, got {tol}")))
    }
}

fn table_result(t: Table, csv: bool, tol: f64) -> CommandResult {
    let mut text = String::new();
    if csv {
        text = t.to_csv();
    } else {
        let d = digits(tol).min(8);
        for r in &t.rows {
            let _ = writeln!(
                text,
                "g={:<3} {:<13} {:<22} {:.d$}  reference {}  {}",
                r.genus,
                r.column,
                r.label,
                r.dilatation.mid(),
                r.expected,
                if r.matches { "ok" } else { "MISMATCH" }
            );
        }
        for f in &t.factorization_failures {
            let _ = writeln!(text, "note: {f}");
        }
    }
    let status = if t.mismatches.is_empty() { Status::Ok } else { Status::Mismatch };
    CommandResult {
        command: "table".into(),
        status,
        diagnostics: t.mismatches.clone(),
        payload: serde_json::to_value(&t).unwrap_or(Value::Null),
        text,
    }
}

fn execute(cmd: Cmd) -> Result<CommandResult> {
    Ok(match cmd {
        Cmd::House { poly, tol: Tol { tol } } => {
            check_tol(tol)?;
            let p = parse_poly(&poly)?;
            let h = rootloc::house(&p, tol)?;
            CommandResult::ok(
                "house",
                json!({"polynomial": p, "house": h}),
                format!("{}\n", fmt_enclosure(&h, tol)),
            )
        }
        Cmd::Mahler { poly, tol: Tol { tol } } => {
            check_tol(tol)?;
            let p = parse_poly(&poly)?;
            let m = rootloc::mahler_measure(&p, tol)?;
            CommandResult::ok(
                "mahler",
                json!({"polynomial": p, "mahler_measure": m}),
                format!("{}\n", fmt_enclosure(&m, tol)),
            )
        }
        Cmd::Lt { a, b, tol: Tol { tol } } => {
            check_tol(tol)?;
            let p = fiberedface::theta_s(a, b)?;
            let h = rootloc::house(&p, tol)?;
            let mut text = format!("LT_{{{a},{b}}} = {p}\nhouse: {}\n", fmt_enclosure(&h, tol));
            let inv = fiberedface::invariants(a, b, tol).ok();
            if let Some(i) = &inv {
                let d = digits(tol);
                let _ = writeln!(
                    text,
                    "genus {}, punctures {}, orientable {}\nlambda^g: {:.d$}\nlambda^|chi|: {:.d$}",
                    i.genus,
                    i.punctures,
                    i.orientable.map_or("unknown".into(), |o| o.to_string()),
                    i.genus_normalized.mid(),
                    i.normalized.mid()
                );
            } else {
                text.push_str("(a, b) is not primitive; fiber invariants omitted\n");
            }
            CommandResult::ok("lt", json!({"polynomial": p, "house": h, "invariants": inv}), text)
        }
        Cmd::Magic { x, y, z, tol: Tol { tol } } => {
            check_tol(tol)?;
            let p = fiberedface::magic_specialization([x, y, z])?;
            let h = rootloc::house(&p, tol)?;
            CommandResult::ok(
                "magic",
                json!({"class": [x, y, z], "polynomial": p, "house": h}),
                format!("P(t^{x}, t^{y}, t^{z}) = {p}\nhouse: {}\n", fmt_enclosure(&h, tol)),
            )
        }
        Cmd::Digraph { family, n, charpoly, spectral, tol: Tol { tol } } => {
            check_tol(tol)?;
            let d: Digraph = match family {
                DigraphFamily::Mindil => digraph::min_dilatation_digraph(n)?,
                DigraphFamily::Lt => digraph::lt_digraph(n)?,
            };
            let mut payload = json!({"digraph": d, "perron_frobenius": d.is_perron_frobenius(), "complexity": d.complexity()});
            let mut text = String::new();
            let all = !charpoly && !spectral;
            if all {
                let m: Vec<Vec<i64>> = d.adj().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
                let _ = writeln!(text, "{}", matrix::format(&m));
            }
            if charpoly || all {
                let p = d.charpoly();
                let _ = writeln!(text, "{p}");
                payload["charpoly"] = json!(p);
            }
            if spectral || all {
                let r = d.spectral_radius(tol)?;
                let _ = writeln!(text, "{}", fmt_enclosure(&r, tol));
                payload["spectral_radius"] = json!(r);
            }
            CommandResult::ok("digraph", payload, text)
        }
        Cmd::Track { family: FamilyOnly::Family, n, genus, orientable, boundary, weights } => {
            let t = traintrack::family_traintrack(n)?;
            let all = !(genus || orientable || boundary || weights);
            let mut payload = json!({"n": n});
            let mut text = String::new();
            if genus || all {
                let g = t.genus_closed()?;
                payload["genus"] = json!(g);
                let _ = writeln!(text, "genus: {g}");
            }
            if orientable || all {
                let o = t.is_orientable();
                payload["orientable"] = json!(o);
                let _ = writeln!(text, "orientable: {o}");
            }
            if boundary || all {
                let b = t.boundary_profile();
                let _ = writeln!(
                    text,
                    "boundary cusps: {}",
                    b.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
                );
                payload["boundary"] = json!(b);
            }
            if weights || all {
                let w = t.weight_space();
                let names = w
                    .basis_edges
                    .as_ref()
                    .map(|es| es.iter().map(|&e| t.label(e).to_string()).collect::<Vec<_>>());
                let _ = writeln!(
                    text,
                    "weight space: dim {}, real rank {}, real basis {}",
                    w.dim,
                    w.real_rank,
                    names.as_ref().map_or("none".into(), |v| v.join(" "))
                );
                payload["weights"] = json!({
                    "dim": w.dim,
                    "real_rank": w.real_rank,
                    "basis_edges": names,
                    "constraint_matrix": w.constraint_matrix,
                });
            }
            CommandResult::ok("track", payload, text)
        }
        Cmd::Circuit { family: FamilyOnly::Family, n, matrix: show_matrix, charpoly } => {
            let c = traintrack::family_circuit(n)?;
            let (m, d) = traintrack::circuit_transition_matrix(&c)?;
            let p = d.charpoly();
            let all = !show_matrix && !charpoly;
            let mut text = String::new();
            if show_matrix || all {
                let _ = writeln!(text, "{}", matrix::format(&m));
            }
            if charpoly || all {
                let _ = writeln!(text, "{p}");
            }
            let edges: Vec<&str> = c.start.real_edges().iter().map(|&e| c.start.label(e)).collect();
            CommandResult::ok(
                "circuit",
                json!({"n": n, "edges": edges, "matrix": m, "charpoly": p, "circuit": c}),
                text,
            )
        }
        Cmd::Table { which, csv, tol: Tol { tol } } => {
            check_tol(tol)?;
            let t = match which {
                TableName::Smalldil => fiberedface::table_smalldil(tol)?,
                TableName::Mindil => fiberedface::table_mindil(tol)?,
            };
            table_result(t, csv, tol)
        }
        Cmd::Converge { max, csv, tol: Tol { tol } } => {
            check_tol(tol)?;
            let r = fiberedface::convergence_report(max, tol)?;
            let text = if csv {
                r.to_csv()
            } else {
                let d = digits(tol);
                let mut s = String::new();
                for row in &r.rows {
                    let _ = writeln!(
                        s,
                        "n={:<4} lambda={:.d$}  lambda^n={:.d$}  lambda^2n={:.d$}  gap={:.d$}",
                        row.n,
                        row.lambda.mid(),
                        row.lambda_n.mid(),
                        row.lambda_2n.mid(),
                        row.gap
                    );
                }
                let _ = writeln!(s, "lambda^n strictly decreasing: {}", r.monotone);
                s
            };
            CommandResult::ok("converge", serde_json::to_value(&r).unwrap_or(Value::Null), text)
        }
    })
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::House { .. } => "house",
        Cmd::Mahler { .. } => "mahler",
        Cmd::Lt { .. } => "lt",
        Cmd::Magic { .. } => "magic",
        Cmd::Digraph { .. } => "digraph",
        Cmd::Track { .. } => "track",
        Cmd::Circuit { .. } => "circuit",
        Cmd::Table { .. } => "table",
        Cmd::Converge { .. } => "converge",
    }
}

/// Parses `argv` (program name first) and runs the command. Returns the
/// result and whether the JSON envelope was requested.
pub fn run(argv: &[String]) -> (CommandResult, bool) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let json = argv.iter().any(|a| a == "--json");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (CommandResult::ok("help", Value::Null, e.to_string()), json)
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
                    let hint = msg
                        .lines()
                        .find(|l| l.starts_with("For more information"))
                        .unwrap_or("For more information, try '--help'.");
                    (CommandResult::error("usage", format!("{first} ({hint})")), json)
                }
            };
        }
    };
    let name = command_name(&cli.cmd);
    let result = execute(cli.cmd).unwrap_or_else(|e| CommandResult::error(name, e.to_string()));
    (result, cli.json)
}

/// Runs the command and renders what the binary prints, with its exit code.
pub fn main_with_output(argv: &[String]) -> (String, i32) {
    let (r, json) = run(argv);
    let out = if json {
        format!("{}\n", serde_json::to_string_pretty(&r.envelope()).unwrap_or_default())
    } else {
        let mut s = r.text.clone();
        for d in &r.diagnostics {
            let _ = writeln!(s, "{}: {d}", if r.status == Status::Error { "error" } else { "mismatch" });
        }
        s
    };
    (out, r.exit_code())
}

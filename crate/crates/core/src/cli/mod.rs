//! Command-line front end: expression parsing, the verification suite and
//! command dispatch.
//!
//! Exit status is 0 on success, 1 when a verification fails or a computation
//! is rejected (not in the sphere, degree cap), and 2 on usage errors
//! (bad flags, unparsable expressions).

pub mod parse;
pub mod suite;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classical::{quantum_limit, VectorField};
use crate::double::{DoubleElement, QLorentz, DEFAULT_DEGREE_CAP};
use crate::hopf::HopfAlgebra;
use crate::ncpoly::{Element, PresentationKind};
use crate::pairing::Pairing;
use parse::{parse, Parsed, Value};
use suite::{run_suite, Scope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Funq,
    Uq,
}

impl Alg {
    fn kind(self) -> PresentationKind {
        match self {
            Alg::Funq => PresentationKind::FunQ,
            Alg::Uq => PresentationKind::UQ,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qlorentz", version, about = "Exact computations in U_q(su(2)), Fun_q(SU(2)) and the q-Lorentz group")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Largest sphere degree accepted when expanding in A, B, B*.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, global = true)]
    pub degree_cap: u32,
    /// Algebra for expressions without generators, for `rules`, and for
    /// `--corrupt-rule`.
    #[arg(long, value_enum, global = true)]
    pub alg: Option<Alg>,
    /// Write tensor products as `(x)` instead of `⊗`.
    #[arg(long, global = true)]
    pub ascii: bool,
    /// Doubles the right-hand side of rewrite rule N (for testing the suite).
    #[arg(long, hide = true, global = true)]
    pub corrupt_rule: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Nf { expr: String },
    /// Coproduct of an expression.
    Coproduct { expr: String },
    /// Antipode (or its inverse) of an expression.
    Antipode {
        expr: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Involution of an expression.
    Star { expr: String },
    /// Pairing of a U_q(su(2)) element with a Fun_q(SU(2)) element.
    Pair { u: String, f: String },
    /// Action of ACTOR on a Fun_q(SU(2)) element. With --fun F the actor is
    /// the double element ACTOR ⊗ F.
    Act {
        actor: String,
        target: String,
        #[arg(long)]
        fun: Option<String>,
    },
    /// Whether an element lies in the Podleś sphere.
    PodlesCheck { expr: String },
    /// Expansion of a sphere element in the basis A^k B^m, A^k B*^n.
    ExpandSphere { expr: String },
    /// q → 1 limit of R3, R1+iR2 or -R1+iR2 (or `all`) acting on a sphere element.
    LimitSu2 { field: String, expr: String },
    /// q → 1 limit of T0, iT1+T2 or iT1-T2 (or `all`) acting on a sphere element.
    LimitAn { field: String, expr: String },
    /// The rewriting system of an algebra.
    Rules,
    /// Runs the verification suite.
    Verify {
        /// all, relations, hopf, pairing, u-actions, fun-actions, actions,
        /// structure (or laws), limits, numeric, brackets, classical
        scope: String,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }

    fn failure(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn engine(cli: &Cli) -> Result<QLorentz, Outcome> {
    let pairing = Pairing::standard().map_err(Outcome::failure)?;
    let Some(idx) = cli.corrupt_rule else {
        return Ok(QLorentz::new(pairing));
    };
    let (u, fun) = (pairing.u(), pairing.fun());
    let target = if cli.alg == Some(Alg::Uq) { u } else { fun };
    let n = target.rules().len();
    if idx >= n {
        return Err(Outcome::usage(format!("rule index {idx} out of range (0..{n})")));
    }
    let (u, fun) = match cli.alg {
        Some(Alg::Uq) => (u.with_corrupted_rule(idx), HopfAlgebra::fun_q().map_err(Outcome::failure)?),
        _ => (HopfAlgebra::u_q().map_err(Outcome::failure)?, fun.with_corrupted_rule(idx)),
    };
    Ok(QLorentz::new(Pairing::new(u, fun)))
}

fn execute(cli: &Cli) -> Outcome {
    let ql = match engine(cli) {
        Ok(q) => q,
        Err(o) => return o,
    };
    match exec_command(cli, &ql) {
        Ok(o) => o,
        Err(o) => o,
    }
}

fn parse_expr(s: &str) -> Result<Parsed, Outcome> {
    parse(s).map_err(Outcome::usage)
}

/// The algebra an expression belongs to: its generators, else `--alg`,
/// else `Fun_q(SU(2))`.
fn algebra_for<'a>(cli: &Cli, ql: &'a QLorentz, p: &Parsed) -> Result<&'a HopfAlgebra, Outcome> {
    let kind = match (p.kind(), cli.alg) {
        (Some(k), Some(a)) if k != a.kind() => {
            return Err(Outcome::usage(format!("expression is in {} but --alg {} was given", k.name(), a.kind().name())))
        }
        (Some(k), _) => k,
        (None, Some(a)) => a.kind(),
        (None, None) => PresentationKind::FunQ,
    };
    Ok(match kind {
        PresentationKind::FunQ => ql.fun(),
        PresentationKind::UQ => ql.u(),
    })
}

fn element_in(ql_alg: &HopfAlgebra, p: &Parsed) -> Result<Element, Outcome> {
    p.eval_element(ql_alg).map(|x| ql_alg.normal_form(&x)).map_err(Outcome::usage)
}

fn fun_element(ql: &QLorentz, s: &str) -> Result<Element, Outcome> {
    let p = parse_expr(s)?;
    element_in(ql.fun(), &p)
}

fn emit(cli: &Cli, command: &str, input: serde_json::Value, text: String) -> Outcome {
    match cli.format {
        Format::Text => Outcome::ok(format!("{text}\n")),
        Format::Json => {
            let v = json!({ "command": command, "input": input, "result": text });
            Outcome::ok(format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize")))
        }
    }
}

fn tensor_text(cli: &Cli, s: String) -> String {
    if cli.ascii {
        s.replace('⊗', "(x)")
    } else {
        s
    }
}

fn exec_command(cli: &Cli, ql: &QLorentz) -> Result<Outcome, Outcome> {
    let cap = cli.degree_cap;
    Ok(match &cli.command {
        Command::Nf { expr } => {
            let p = parse_expr(expr)?;
            let text = if p.kind().is_none() && cli.alg.is_none() {
                match p.eval_scalar() {
                    Ok(c) => c.to_string(),
                    Err(e) => return Err(Outcome::usage(e)),
                }
            } else {
                let alg = algebra_for(cli, ql, &p)?;
                match p.eval(alg).map_err(Outcome::usage)? {
                    Value::Scalar(c) => c.to_string(),
                    Value::Element(x) => alg.render(&alg.normal_form(&x)),
                }
            };
            emit(cli, "nf", json!(expr), text)
        }
        Command::Coproduct { expr } => {
            let p = parse_expr(expr)?;
            let alg = algebra_for(cli, ql, &p)?;
            let x = element_in(alg, &p)?;
            emit(cli, "coproduct", json!(expr), tensor_text(cli, alg.render_tensor(&alg.coproduct(&x), false)))
        }
        Command::Antipode { expr, inverse } => {
            let p = parse_expr(expr)?;
            let alg = algebra_for(cli, ql, &p)?;
            let x = element_in(alg, &p)?;
            let y = if *inverse { alg.antipode_inv(&x) } else { alg.antipode(&x) };
            emit(cli, "antipode", json!({ "expr": expr, "inverse": inverse }), alg.render(&y))
        }
        Command::Star { expr } => {
            let p = parse_expr(expr)?;
            let alg = algebra_for(cli, ql, &p)?;
            let x = element_in(alg, &p)?;
            emit(cli, "star", json!(expr), alg.render(&alg.star(&x)))
        }
        Command::Pair { u, f } => {
            let x = element_in(ql.u(), &parse_expr(u)?)?;
            let y = fun_element(ql, f)?;
            emit(cli, "pair", json!({ "u": u, "f": f }), ql.pairing().pair(&x, &y).to_string())
        }
        Command::Act { actor, target, fun } => {
            let h = fun_element(ql, target)?;
            let p = parse_expr(actor)?;
            let result = match fun {
                Some(fs) => {
                    let u = element_in(ql.u(), &p)?;
                    let f = fun_element(ql, fs)?;
                    ql.act_double(&DoubleElement::pure(&u, &f), &h)
                }
                None => match p.kind() {
                    Some(PresentationKind::UQ) => ql.act_u(&element_in(ql.u(), &p)?, &h),
                    _ => ql.act_fun(&element_in(ql.fun(), &p)?, &h),
                },
            };
            let text = match ql.express_in_sphere_generators(&result, cap) {
                Ok(sp) => sp.to_string(),
                Err(_) => ql.fun().render(&result),
            };
            emit(cli, "act", json!({ "actor": actor, "target": target, "fun": fun }), text)
        }
        Command::PodlesCheck { expr } => {
            let x = fun_element(ql, expr)?;
            emit(cli, "podles-check", json!(expr), ql.is_podles(&x).to_string())
        }
        Command::ExpandSphere { expr } => {
            let x = fun_element(ql, expr)?;
            let sp = ql.express_in_sphere_generators(&x, cap).map_err(Outcome::failure)?;
            emit(cli, "expand-sphere", json!(expr), sp.to_string())
        }
        Command::LimitSu2 { field, expr } => limit_command(cli, ql, "limit-su2", &VectorField::SU2, field, expr)?,
        Command::LimitAn { field, expr } => limit_command(cli, ql, "limit-an", &VectorField::AN, field, expr)?,
        Command::Rules => {
            let alg = if cli.alg == Some(Alg::Uq) { ql.u() } else { ql.fun() };
            let lines: Vec<String> =
                alg.rules().iter().enumerate().map(|(i, r)| format!("{i}: {}", alg.render_rule(r))).collect();
            emit(cli, "rules", json!(alg.kind().name()), lines.join("\n"))
        }
        Command::Verify { scope } => {
            let scope: Scope = scope.parse().map_err(Outcome::usage)?;
            let report = run_suite(ql, scope, cap);
            let stdout = match cli.format {
                Format::Text => report.render_text(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")),
            };
            Outcome { code: if report.all_passed() { 0 } else { 1 }, stdout, stderr: String::new() }
        }
    })
}

fn limit_command(
    cli: &Cli,
    ql: &QLorentz,
    command: &str,
    family: &[VectorField],
    field: &str,
    expr: &str,
) -> Result<Outcome, Outcome> {
    let fields: Vec<VectorField> = if field == "all" {
        family.to_vec()
    } else {
        match VectorField::from_token(field) {
            Some(v) if family.contains(&v) => vec![v],
            _ => {
                let names: Vec<&str> = family.iter().map(|v| v.token()).collect();
                return Err(Outcome::usage(format!("unknown field '{field}' (expected one of: {}, all)", names.join(", "))));
            }
        }
    };
    let h = fun_element(ql, expr)?;
    let mut lines = Vec::new();
    for v in fields {
        let p = quantum_limit(ql, v, &h).map_err(Outcome::failure)?;
        lines.push(format!("{}: {}", v.token(), p));
    }
    Ok(emit(cli, command, json!({ "field": field, "expr": expr }), lines.join("\n")))
}

#[cfg(test)]
mod tests;

//! The `rlk` command line. Every subcommand reads JSON object files (or
//! stdin for `-`) and writes a JSON report or object file.
//!
//! Exit codes: 0 pass, 1 input or usage error, 2 identity violated,
//! 3 classification finding.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    check_leibniz, check_reynolds, induced_bracket, LeibnizAlgebra, ReynoldsContext, Verdict, Witness,
};
use crate::bialgebra::{
    adjoint_operator, build_double, check_coadjoint_matched_pair, check_coleibniz, check_leibniz_bialgebra,
    check_manin_triple, check_quadratic_invariance, check_reynolds_bialgebra, BialgebraBundle, BilinearForm, Coproduct,
};
use crate::classify::{
    builtin_algebra, enumerate_reynolds, enumerate_triangular_pairs, families, family, sweep_family,
    verify_family_over, Assignment, BuiltinAlgebra, EnumerationReport, FamilyVerdict, Param, RCase,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::io;
use crate::linalg::{Matrix, Tensor3};
use crate::rep::{
    check_adjoint_admissible, check_representation, check_reynolds_representation, dual_representation,
    semidirect_product, Representation,
};
use crate::verify::{self, Suite};
use crate::ybe::{
    check_admissible_clybe, check_coboundary_conditions, check_o_operator, check_pi_admissible,
    check_tensor_admissibility, clybe_defect, coboundary_coproduct, lift_o_operator, o_operator_verdict, OLevel,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VIOLATED: u8 = 2;
pub const EXIT_FINDING: u8 = 3;

/// Environment variable that overrides `--seed`.
pub const SEED_VAR: &str = "RLK_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "rlk",
    version,
    about = "Reynolds Leibniz algebras and bialgebras: checks, constructions, classification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one family of identities and report the first violation.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Build an object and write it as JSON.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[command(flatten)]
        inputs: Inputs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// cLYBe defect, coboundary conditions and, with --s, the admissible parts.
    Clybe {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// List every Reynolds operator (or triangular pair) over F_p.
    Enumerate {
        #[command(flatten)]
        scan: Scan,
    },
    /// Enumerate over F_p and match every solution against the families.
    Classify {
        #[command(flatten)]
        scan: Scan,
    },
    /// Run the regression suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the rows as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// List the families, or check one on random or exhaustive assignments.
    Family {
        name: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Check every admissible assignment over the (finite) field.
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Leibniz,
    Reynolds,
    Rep,
    ReynoldsRep,
    AdjointAdmissible,
    Coleibniz,
    Bialgebra,
    ReynoldsBialgebra,
    Quadratic,
    Manin,
    MatchedPair,
    Clybe,
    AdmissibleClybe,
    OOperator,
    PiAdmissible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Induced,
    DualRep,
    Semidirect,
    Double,
    Coboundary,
    AdjointOp,
    LiftOOperator,
}

#[derive(Debug, Args)]
struct Inputs {
    /// Algebra file.
    #[arg(long)]
    alg: Option<String>,
    /// A1 or A2 instead of --alg.
    #[arg(long)]
    builtin: Option<String>,
    /// Field for --builtin: Q or F<p>.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Operator R (matrix file).
    #[arg(long)]
    op: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Representation file, optionally carrying alpha.
    #[arg(long)]
    rep: Option<String>,
    /// Coproduct file.
    #[arg(long)]
    delta: Option<String>,
    /// Operator S (matrix file).
    #[arg(long)]
    s: Option<String>,
    /// r-matrix file.
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    bundle: Option<String>,
    /// Bilinear form (matrix file).
    #[arg(long)]
    form: Option<String>,
    /// Map T: V -> g (matrix file).
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// Pi file.
    #[arg(long)]
    pi: Option<String>,
}

#[derive(Debug, Args)]
struct Scan {
    /// A1 or A2.
    #[arg(long)]
    algebra: Option<String>,
    /// r-matrix case for pair scans: a1, a2i or a2ii.
    #[arg(long)]
    case: Option<String>,
    /// r-matrix parameters, e.g. eta=0,gamma=1.
    #[arg(long)]
    r_params: Option<String>,
    #[arg(long)]
    p: u64,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

/// What a subcommand prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn new(stdout: String, code: u8) -> Outcome {
        Outcome { stdout, code }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Usage errors are returned as code 1 with clap's message on stdout.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(cli) {
            Ok(o) => o,
            Err(e) => Outcome::new(String::new(), error_code(&e)),
        },
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            Outcome::new(e.render().to_string(), code)
        }
    }
}

fn error_code(_: &Error) -> u8 {
    EXIT_INPUT
}

/// Entry point of the binary.
pub fn main() -> std::process::ExitCode {
    let outcome = match Cli::try_parse() {
        Ok(cli) => match run(cli) {
            Ok(o) => o,
            Err(e) => {
                eprintln!("error: {e}");
                Outcome::new(String::new(), error_code(&e))
            }
        },
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            Outcome::new(String::new(), code)
        }
    };
    print!("{}", outcome.stdout);
    std::process::ExitCode::from(outcome.code)
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Check { kind, inputs } => cmd_check(kind, &inputs),
        Command::Construct { kind, inputs, out } => {
            let text = cmd_construct(kind, &inputs)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Error::Io(path.display().to_string(), e.to_string()))?;
                    Ok(Outcome::new(String::new(), EXIT_OK))
                }
                None => Ok(Outcome::new(text, EXIT_OK)),
            }
        }
        Command::Clybe { inputs } => cmd_clybe(&inputs),
        Command::Enumerate { scan } => {
            let report = scan.run()?;
            let solutions: Vec<Value> = report
                .solutions
                .iter()
                .map(|s| {
                    let mut v = json!({ "R": io::MatrixJson::of(&s.r).entries });
                    if let Some(m) = &s.s {
                        v["S"] = json!(io::MatrixJson::of(m).entries);
                    }
                    v
                })
                .collect();
            let out = json!({
                "algebra": report.algebra,
                "p": report.p,
                "lambda": report.lambda.to_string(),
                "scanned": report.scanned,
                "count": solutions.len(),
                "solutions": solutions,
            });
            Ok(Outcome::new(io::to_json(&out), EXIT_OK))
        }
        Command::Classify { scan } => {
            let report = scan.run()?;
            let code = if report.is_complete() { EXIT_OK } else { EXIT_FINDING };
            Ok(Outcome::new(io::to_json(&report), code))
        }
        Command::Verify { suite, seed, json } => {
            let suite = Suite::parse(&suite)?;
            let rows = verify::run(suite, seed_from_env(seed)?);
            let passed = rows.iter().filter(|r| r.passed).count();
            let text = if json {
                io::to_json(&rows)
            } else {
                let mut t: String = rows.iter().map(|r| format!("{r}\n")).collect();
                t.push_str(&format!("{passed}/{} passed\n", rows.len()));
                t
            };
            let code = if passed == rows.len() { EXIT_OK } else { EXIT_VIOLATED };
            Ok(Outcome::new(text, code))
        }
        Command::Family {
            name,
            trials,
            seed,
            field,
            sweep,
        } => cmd_family(name.as_deref(), trials, seed_from_env(seed)?, &field, sweep),
    }
}

fn seed_from_env(flag: u64) -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io("stdin".into(), e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(path.into(), e.to_string()))
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

impl Inputs {
    fn stdin_once(&self) -> Result<()> {
        let all = [
            &self.alg,
            &self.op,
            &self.rep,
            &self.delta,
            &self.s,
            &self.r,
            &self.bundle,
            &self.form,
            &self.t,
            &self.beta,
            &self.pi,
        ];
        if all.iter().filter(|v| v.as_deref() == Some("-")).count() > 1 {
            return Err(Error::Parse("only one input can come from stdin".into()));
        }
        Ok(())
    }

    fn tensor(&self) -> Result<Tensor3> {
        self.stdin_once()?;
        match (&self.alg, &self.builtin) {
            (Some(path), None) => io::tensor_from_json(&read_input(path)?),
            (None, Some(_)) => Ok(self.algebra()?.structure().clone()),
            (Some(_), Some(_)) => Err(Error::Parse("give either --alg or --builtin".into())),
            (None, None) => Err(Error::Parse("missing --alg".into())),
        }
    }

    fn algebra(&self) -> Result<LeibnizAlgebra> {
        self.stdin_once()?;
        match (&self.alg, &self.builtin) {
            (Some(path), None) => io::algebra_from_json(&read_input(path)?),
            (None, Some(id)) => Ok(builtin_algebra(
                BuiltinAlgebra::parse(id)?,
                io::parse_field(&self.field)?,
            )),
            (Some(_), Some(_)) => Err(Error::Parse("give either --alg or --builtin".into())),
            (None, None) => Err(Error::Parse("missing --alg".into())),
        }
    }

    fn field(&self) -> Result<FieldSpec> {
        if self.alg.is_some() || self.builtin.is_some() {
            Ok(self.algebra()?.field())
        } else {
            io::parse_field(&self.field)
        }
    }

    fn lambda(&self, field: FieldSpec) -> Result<Scalar> {
        field.parse(required(&self.lambda, "lambda")?)
    }

    fn matrix(&self, v: &Option<String>, flag: &str, field: FieldSpec) -> Result<Matrix> {
        io::matrix_from_json(field, &read_input(required(v, flag)?)?)
    }

    fn context(&self) -> Result<ReynoldsContext> {
        let alg = self.algebra()?;
        let field = alg.field();
        let lambda = self.lambda(field)?;
        let op = self.matrix(&self.op, "op", field)?;
        ReynoldsContext::new(alg, lambda, op)
    }

    fn delta(&self, field: FieldSpec) -> Result<Tensor3> {
        io::coproduct_from_json(field, &read_input(required(&self.delta, "delta")?)?)
    }

    fn r_matrix(&self, field: FieldSpec) -> Result<Matrix> {
        io::rmatrix_from_json(field, &read_input(required(&self.r, "r")?)?)
    }

    /// The representation in --rep together with its alpha.
    fn rep_with_alpha(&self, alg: &LeibnizAlgebra) -> Result<(Representation, Matrix)> {
        let (rep, alpha) = io::representation_from_json(alg, &read_input(required(&self.rep, "rep")?)?)?;
        let alpha = alpha.ok_or_else(|| Error::Parse("the representation file has no \"alpha\"".into()))?;
        Ok((rep, alpha))
    }

    fn bundle(&self) -> Result<BialgebraBundle> {
        if let Some(path) = &self.bundle {
            return io::bundle_from_json(&read_input(path)?);
        }
        let alg = self.algebra()?;
        let field = alg.field();
        Ok(BialgebraBundle {
            delta: self.delta(field)?,
            lambda: self.lambda(field)?,
            r: self.matrix(&self.op, "op", field)?,
            s: self.matrix(&self.s, "s", field)?,
            alg,
        })
    }
}

/// A witness with one-based basis indices, as in the object files.
#[derive(Debug, Serialize)]
struct WitnessJson {
    identity: &'static str,
    at: Vec<usize>,
    lhs: Vec<String>,
    rhs: Vec<String>,
}

impl WitnessJson {
    fn of(w: &Witness) -> WitnessJson {
        WitnessJson {
            identity: w.identity,
            at: w.at.iter().map(|i| i + 1).collect(),
            lhs: w.lhs.iter().map(|s| s.to_string()).collect(),
            rhs: w.rhs.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckReport {
    check: &'static str,
    /// Identities evaluated, by name.
    identities: Vec<&'static str>,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(flatten)]
    extra: serde_json::Map<String, Value>,
}

impl CheckReport {
    fn new(check: &'static str, identities: &[&'static str]) -> CheckReport {
        CheckReport {
            check,
            identities: identities.to_vec(),
            holds: true,
            witness: None,
            note: None,
            extra: serde_json::Map::new(),
        }
    }

    fn verdict(mut self, v: &Verdict) -> CheckReport {
        self.holds = v.holds();
        self.witness = v.witness().map(WitnessJson::of);
        self
    }

    fn failed(mut self, note: impl Into<String>) -> CheckReport {
        self.holds = false;
        self.note = Some(note.into());
        self
    }

    fn with(mut self, key: &str, v: Value) -> CheckReport {
        self.extra.insert(key.into(), v);
        self
    }

    fn outcome(self) -> Outcome {
        let code = if self.holds { EXIT_OK } else { EXIT_VIOLATED };
        Outcome::new(io::to_json(&self), code)
    }
}

fn flags(names: &[&str], values: &[bool]) -> Value {
    Value::Object(
        names
            .iter()
            .zip(values)
            .map(|(n, v)| ((*n).to_string(), Value::Bool(*v)))
            .collect(),
    )
}

/// Nonzero entries of a tensor with one-based indices.
fn tensor_entries(t: &Tensor3) -> Value {
    Value::Array(
        t.nonzero()
            .map(|(i, j, k, v)| json!({ "i": i + 1, "j": j + 1, "k": k + 1, "v": v.to_string() }))
            .collect(),
    )
}

fn defect_verdict(defect: &Tensor3) -> Verdict {
    match defect.nonzero().next() {
        None => Verdict::Holds,
        Some((i, j, k, v)) => Verdict::Violated(Witness {
            identity: "clybe",
            at: vec![i, j, k],
            lhs: vec![v.clone()],
            rhs: vec![v.field().zero()],
        }),
    }
}

fn cmd_check(kind: CheckKind, inputs: &Inputs) -> Result<Outcome> {
    let report = match kind {
        CheckKind::Leibniz => CheckReport::new("leibniz", &["leibniz"]).verdict(&check_leibniz(&inputs.tensor()?)?),
        CheckKind::Reynolds => {
            let alg = inputs.algebra()?;
            let field = alg.field();
            let v = check_reynolds(&alg, &inputs.lambda(field)?, &inputs.matrix(&inputs.op, "op", field)?)?;
            CheckReport::new("reynolds", &["reynolds"]).verdict(&v)
        }
        CheckKind::Rep => {
            let alg = inputs.algebra()?;
            let (vdim, l, r, _) =
                io::representation_parts_from_json(alg.field(), &read_input(required(&inputs.rep, "rep")?)?)?;
            CheckReport::new("rep", &["rep-left", "rep-mixed", "rep-right"])
                .verdict(&check_representation(&alg, vdim, &l, &r)?)
        }
        CheckKind::ReynoldsRep => {
            let ctx = inputs.context()?;
            let (rep, alpha) = inputs.rep_with_alpha(ctx.alg())?;
            CheckReport::new("reynolds-rep", &["reynolds-rep-left", "reynolds-rep-right"])
                .verdict(&check_reynolds_representation(&rep, &ctx, &alpha)?)
        }
        CheckKind::AdjointAdmissible => {
            let ctx = inputs.context()?;
            let s = inputs.matrix(&inputs.s, "s", ctx.field())?;
            CheckReport::new(
                "adjoint-admissible",
                &["adjoint-admissible-left", "adjoint-admissible-right"],
            )
            .verdict(&check_adjoint_admissible(&ctx, &s)?)
        }
        CheckKind::Coleibniz => {
            let d = inputs.delta(inputs.field()?)?;
            CheckReport::new("coleibniz", &["co-leibniz"]).verdict(&check_coleibniz(&d)?)
        }
        CheckKind::Bialgebra => {
            let alg = inputs.algebra()?;
            let d = inputs.delta(alg.field())?;
            let names = ["co-leibniz", "bialgebra-bracket", "bialgebra-symmetry"];
            let co = check_coleibniz(&d)?;
            if co.holds() {
                CheckReport::new("bialgebra", &names).verdict(&check_leibniz_bialgebra(&alg, &Coproduct::new(d)?)?)
            } else {
                CheckReport::new("bialgebra", &names).verdict(&co)
            }
        }
        CheckKind::ReynoldsBialgebra => {
            let report = check_reynolds_bialgebra(&inputs.bundle()?)?;
            let names = [
                "leibniz-bialgebra",
                "reynolds-algebra",
                "reynolds-coalgebra",
                "adjoint-admissible",
                "operator-compatibility",
            ];
            let mut out =
                CheckReport::new("reynolds-bialgebra", &names).with("conditions", flags(&names, &report.flags()));
            out.holds = report.ok();
            out.witness = report.first_failure().map(WitnessJson::of);
            out
        }
        CheckKind::Quadratic => {
            let alg = inputs.algebra()?;
            let form = BilinearForm::new(inputs.matrix(&inputs.form, "form", alg.field())?)?;
            CheckReport::new("quadratic", &["invariance", "invariance-consequence"])
                .verdict(&check_quadratic_invariance(&alg, &form)?)
        }
        CheckKind::Manin => {
            let ctx = inputs.context()?;
            let d = inputs.delta(ctx.field())?;
            let s = inputs.matrix(&inputs.s, "s", ctx.field())?;
            let out = CheckReport::new("manin", &["leibniz", "subalgebra", "invariance", "reynolds"]);
            match check_manin_triple(&ctx, &d, &s) {
                Ok(v) => out.verdict(&v),
                Err(Error::DualNotLeibniz) => out.failed(Error::DualNotLeibniz.to_string()),
                Err(e) => return Err(e),
            }
        }
        CheckKind::MatchedPair => {
            let ctx = inputs.context()?;
            let d = inputs.delta(ctx.field())?;
            let s = inputs.matrix(&inputs.s, "s", ctx.field())?;
            let out = CheckReport::new("matched-pair", &["matched-pair", "matched-reynolds"]);
            if check_coadjoint_matched_pair(&ctx, &d, &s)? {
                out
            } else {
                out.failed("the coadjoint actions do not form a matched pair of Reynolds Leibniz algebras")
            }
        }
        CheckKind::Clybe => {
            let alg = inputs.algebra()?;
            let defect = clybe_defect(&alg, &inputs.r_matrix(alg.field())?)?;
            CheckReport::new("clybe", &["clybe"])
                .verdict(&defect_verdict(&defect))
                .with("defect", tensor_entries(&defect))
        }
        CheckKind::AdmissibleClybe => {
            let ctx = inputs.context()?;
            let s = inputs.matrix(&inputs.s, "s", ctx.field())?;
            let r = inputs.r_matrix(ctx.field())?;
            let a = check_admissible_clybe(&ctx, &s, &r)?;
            let names = ["clybe", "intertwine-left", "intertwine-right"];
            let mut out = CheckReport::new("admissible-clybe", &names)
                .with("conditions", flags(&names, &[a.clybe, a.left, a.right]));
            if !a.all() {
                out = out.failed("the S-admissible cLYBe fails");
            }
            out
        }
        CheckKind::OOperator => {
            let ctx = inputs.context()?;
            let (rep, alpha) = inputs.rep_with_alpha(ctx.alg())?;
            let t = inputs.matrix(&inputs.t, "t", ctx.field())?;
            let level = check_o_operator(&t, &rep, &ctx, &alpha)?;
            let name = match level {
                OLevel::None => "none",
                OLevel::Weak => "weak",
                OLevel::Full => "full",
            };
            CheckReport::new(
                "o-operator",
                &[
                    "o-operator",
                    "o-operator-intertwine",
                    "reynolds-rep-left",
                    "reynolds-rep-right",
                ],
            )
            .verdict(&o_operator_verdict(&t, &rep, &ctx, &alpha)?)
            .with("level", json!(name))
        }
        CheckKind::PiAdmissible => {
            let ctx = inputs.context()?;
            let (rep, alpha) = inputs.rep_with_alpha(ctx.alg())?;
            let pi = io::pi_from_json(ctx.field(), &read_input(required(&inputs.pi, "pi")?)?)?;
            CheckReport::new("pi-admissible", &["reynolds-rep-left", "reynolds-rep-right", "pi"])
                .verdict(&check_pi_admissible(&ctx, &rep, &alpha, &pi)?)
        }
    };
    Ok(report.outcome())
}

fn cmd_construct(kind: ConstructKind, inputs: &Inputs) -> Result<String> {
    Ok(match kind {
        ConstructKind::Induced => io::algebra_to_json(&induced_bracket(&inputs.context()?)?),
        ConstructKind::DualRep => {
            let alg = inputs.algebra()?;
            let (rep, _) = io::representation_from_json(&alg, &read_input(required(&inputs.rep, "rep")?)?)?;
            io::representation_to_json(&dual_representation(&rep), None)
        }
        ConstructKind::Semidirect => {
            let ctx = inputs.context()?;
            let (rep, alpha) = inputs.rep_with_alpha(ctx.alg())?;
            let (alg, op) = semidirect_product(&rep, &ctx, &alpha)?;
            io::context_to_json(&ReynoldsContext::new(alg, ctx.lambda().clone(), op)?)
        }
        ConstructKind::Double => {
            let alg = inputs.algebra()?;
            let (double, form) = build_double(&alg, &inputs.delta(alg.field())?)?;
            io::double_to_json(&double, &form)
        }
        ConstructKind::Coboundary => {
            let alg = inputs.algebra()?;
            io::coproduct_to_json(&coboundary_coproduct(&alg, &inputs.r_matrix(alg.field())?)?)
        }
        ConstructKind::AdjointOp => {
            let field = inputs.field()?;
            let form = BilinearForm::new(inputs.matrix(&inputs.form, "form", field)?)?;
            io::matrix_to_json(&adjoint_operator(&form, &inputs.matrix(&inputs.op, "op", field)?)?)
        }
        ConstructKind::LiftOOperator => {
            let ctx = inputs.context()?;
            let (rep, alpha) = inputs.rep_with_alpha(ctx.alg())?;
            let field = ctx.field();
            let beta = inputs.matrix(&inputs.beta, "beta", field)?;
            let s = inputs.matrix(&inputs.s, "s", field)?;
            let t = inputs.matrix(&inputs.t, "t", field)?;
            io::lift_to_json(&lift_o_operator(&t, &rep, &ctx, &alpha, &beta, &s)?)
        }
    })
}

fn cmd_clybe(inputs: &Inputs) -> Result<Outcome> {
    let alg = inputs.algebra()?;
    let field = alg.field();
    let r = inputs.r_matrix(field)?;
    let defect = clybe_defect(&alg, &r)?;
    let cond = check_coboundary_conditions(&alg, &r)?;
    let delta = coboundary_coproduct(&alg, &r)?;
    let mut out = CheckReport::new("clybe", &["clybe", "right-symmetry", "mixed-symmetry", "cubic"])
        .verdict(&defect_verdict(&defect))
        .with("defect", tensor_entries(&defect))
        .with(
            "coboundary",
            flags(&["right-symmetry", "mixed-symmetry", "cubic"], &cond.flags()),
        )
        .with(
            "coproduct",
            serde_json::to_value(io::CoproductJson::of(&delta)).expect("serializable"),
        );
    if inputs.s.is_some() {
        let ctx = inputs.context()?;
        let s = inputs.matrix(&inputs.s, "s", field)?;
        let a = check_admissible_clybe(&ctx, &s, &r)?;
        out = out.with(
            "admissible",
            flags(
                &["clybe", "intertwine-left", "intertwine-right"],
                &[a.clybe, a.left, a.right],
            ),
        );
        if check_adjoint_admissible(&ctx, &s)?.holds() {
            let t = check_tensor_admissibility(&ctx, &s, &r)?;
            out = out.with(
                "tensor",
                flags(&["tensor-coalgebra", "tensor-right", "tensor-left"], &t.flags()),
            );
        }
        if !a.all() {
            out.holds = false;
        }
    }
    Ok(out.outcome())
}

impl Scan {
    fn run(&self) -> Result<EnumerationReport> {
        let field = FieldSpec::prime(self.p)?;
        let lambda = field.parse(&self.lambda)?;
        match &self.case {
            None => {
                let id = BuiltinAlgebra::parse(required(&self.algebra, "algebra")?)?;
                enumerate_reynolds(id, field, &lambda)
            }
            Some(c) => {
                let case = RCase::parse(c)?;
                if let Some(a) = &self.algebra {
                    if BuiltinAlgebra::parse(a)? != case.algebra() {
                        return Err(Error::Parse(format!("case {c} lives on {}, not {a}", case.algebra())));
                    }
                }
                let at = parse_assignment(field, self.r_params.as_deref().unwrap_or(""))?;
                enumerate_triangular_pairs(case, &at, field, &lambda)
            }
        }
    }
}

/// `eta=0,gamma=1` into an assignment.
fn parse_assignment(field: FieldSpec, text: &str) -> Result<Assignment> {
    let mut at = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got {part:?}")))?;
        at.insert(Param::parse(k.trim())?, field.parse(v.trim())?);
    }
    Ok(at)
}

fn cmd_family(name: Option<&str>, trials: usize, seed: u64, field: &str, sweep: bool) -> Result<Outcome> {
    let Some(name) = name else {
        let list: Vec<Value> = families()
            .iter()
            .map(|f| {
                let (r, s) = f.formulas();
                json!({
                    "name": f.name,
                    "algebra": f.algebra,
                    "case": f.case.map(|c| c.name()),
                    "parameters": f.parameters().iter().map(|p| p.name()).collect::<Vec<_>>(),
                    "R": r,
                    "S": s,
                })
            })
            .collect();
        return Ok(Outcome::new(io::to_json(&list), EXIT_OK));
    };
    let fam = family(name)?;
    let field = io::parse_field(field)?;
    let counterexample = |at: &Assignment, w: &Witness| {
        json!({
            "family": fam.name,
            "passed": false,
            "assignment": at.iter().map(|(k, v)| (k.name().to_string(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>(),
            "witness": WitnessJson::of(w),
        })
    };
    let (value, ok) = if sweep {
        match sweep_family(&fam, field)? {
            (checked, None) => (
                json!({ "family": fam.name, "passed": true, "assignments": checked }),
                true,
            ),
            (_, Some((at, w))) => (counterexample(&at, &w), false),
        }
    } else {
        match verify_family_over(&fam, field, trials, seed)? {
            FamilyVerdict::Passed { trials } => (json!({ "family": fam.name, "passed": true, "trials": trials }), true),
            FamilyVerdict::Counterexample { assignment, witness } => (counterexample(&assignment, &witness), false),
        }
    };
    Ok(Outcome::new(
        io::to_json(&value),
        if ok { EXIT_OK } else { EXIT_VIOLATED },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_parsing() {
        let q = FieldSpec::Rational;
        let at = parse_assignment(q, "eta=0, gamma=3/2").unwrap();
        assert_eq!(at[&Param::Gamma], q.ratio(3, 2).unwrap());
        assert!(parse_assignment(q, "eta").is_err());
        assert!(parse_assignment(q, "zeta=1").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(["rlk", "check"]).code, EXIT_INPUT);
        assert_eq!(run_args(["rlk", "bogus"]).code, EXIT_INPUT);
        assert_eq!(run_args(["rlk", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn builtin_is_leibniz() {
        let o = run_args(["rlk", "check", "leibniz", "--builtin", "A2", "--field", "F5"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    }
}

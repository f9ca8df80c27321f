//! JSON object files. Every number is written as a string ("3/4", "2") so
//! values stay exact; basis indices in files are one-based. Emitting is
//! deterministic, and parsing an emitted file and emitting again
//! reproduces it byte for byte.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{LeibnizAlgebra, ReynoldsContext};
use crate::bialgebra::{BialgebraBundle, BilinearForm};
use crate::classify::Assignment;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Tensor3};
use crate::rep::Representation;
use crate::ybe::{Lift, PiForm};

pub fn ser_scalar<S: Serializer>(v: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_scalars<S: Serializer>(v: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_matrix<S: Serializer>(m: &Matrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(matrix_strings(m))
}

pub fn ser_opt_matrix<S: Serializer>(m: &Option<Matrix>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_matrix(m, s),
        None => s.serialize_none(),
    }
}

pub fn ser_assignment<S: Serializer>(a: &Assignment, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(a.iter().map(|(k, v)| (k.name(), v.to_string())))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldJson {
    pub fn of(f: FieldSpec) -> FieldJson {
        match f {
            FieldSpec::Rational => FieldJson {
                field: "Q".into(),
                p: None,
            },
            FieldSpec::Prime(p) => FieldJson {
                field: "Fp".into(),
                p: Some(p as u64),
            },
        }
    }

    pub fn spec(&self) -> Result<FieldSpec> {
        match (self.field.as_str(), self.p) {
            ("Q", None) => Ok(FieldSpec::Rational),
            ("Fp", Some(p)) => FieldSpec::prime(p),
            ("Fp", None) => Err(Error::Parse("field Fp needs a modulus \"p\"".into())),
            (other, _) => Err(Error::Parse(format!("unknown field {other:?}, expected Q or Fp"))),
        }
    }
}

/// Parses a field name as given on the command line: `Q` or `F5`/`Fp5`.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "Q" || t == "q" {
        return Ok(FieldSpec::Rational);
    }
    let digits = t
        .strip_prefix("Fp")
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::Parse(format!("unknown field {t:?}, expected Q or F<p>")))?;
    let p = digits
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))?;
    FieldSpec::prime(p)
}

fn emit<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn read<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn scalars(field: FieldSpec, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| field.parse(s)).collect()
}

fn matrix_of(field: FieldSpec, rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows.iter().map(|r| scalars(field, r)).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(field, 0, 0));
    }
    Matrix::from_rows(field, rows)
}

fn index(i: usize, n: usize, what: &str) -> Result<usize> {
    if i == 0 || i > n {
        Err(Error::Parse(format!("{what} index {i} outside 1..={n}")))
    } else {
        Ok(i - 1)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn of(m: &Matrix) -> MatrixJson {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: matrix_strings(m),
        }
    }

    pub fn to_matrix(&self, field: FieldSpec) -> Result<Matrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 || self.cols == 0 {
            return Ok(Matrix::zeros(field, self.rows, self.cols));
        }
        matrix_of(field, &self.entries)
    }
}

pub fn matrix_to_json(m: &Matrix) -> String {
    emit(&MatrixJson::of(m))
}

pub fn matrix_from_json(field: FieldSpec, text: &str) -> Result<Matrix> {
    read::<MatrixJson>(text)?.to_matrix(field)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub v: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(flatten)]
    pub field: FieldJson,
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

impl AlgebraJson {
    pub fn of(alg: &LeibnizAlgebra) -> AlgebraJson {
        let n = alg.dim();
        let c = alg.structure();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if (0..n).any(|k| !c[(i, j, k)].is_zero()) {
                    brackets.push(BracketJson {
                        i: i + 1,
                        j: j + 1,
                        v: (0..n).map(|k| c[(i, j, k)].to_string()).collect(),
                    });
                }
            }
        }
        AlgebraJson {
            field: FieldJson::of(alg.field()),
            dim: n,
            brackets,
        }
    }

    pub fn to_algebra(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.to_tensor()?)
    }

    /// The structure constants without the Leibniz check.
    pub fn to_tensor(&self) -> Result<Tensor3> {
        let field = self.field.spec()?;
        let n = self.dim;
        crate::algebra::check_dim(n)?;
        let mut c = Tensor3::cube(field, n);
        for b in &self.brackets {
            let (i, j) = (index(b.i, n, "bracket")?, index(b.j, n, "bracket")?);
            if b.v.len() != n {
                return Err(Error::Parse(format!(
                    "bracket ({},{}) has {} coefficients, expected {n}",
                    b.i,
                    b.j,
                    b.v.len()
                )));
            }
            for (k, s) in scalars(field, &b.v)?.into_iter().enumerate() {
                c[(i, j, k)] = s;
            }
        }
        Ok(c)
    }
}

pub fn algebra_to_json(alg: &LeibnizAlgebra) -> String {
    emit(&AlgebraJson::of(alg))
}

pub fn algebra_from_json(text: &str) -> Result<LeibnizAlgebra> {
    read::<AlgebraJson>(text)?.to_algebra()
}

/// Unvalidated structure constants.
pub fn tensor_from_json(text: &str) -> Result<Tensor3> {
    read::<AlgebraJson>(text)?.to_tensor()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub vdim: usize,
    #[serde(rename = "rhoL")]
    pub rho_l: Vec<MatrixJson>,
    #[serde(rename = "rhoR")]
    pub rho_r: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<MatrixJson>,
}

pub fn representation_to_json(rep: &Representation, alpha: Option<&Matrix>) -> String {
    emit(&RepresentationJson {
        vdim: rep.vdim(),
        rho_l: rep.rho_l().iter().map(MatrixJson::of).collect(),
        rho_r: rep.rho_r().iter().map(MatrixJson::of).collect(),
        alpha: alpha.map(MatrixJson::of),
    })
}

/// The representation of `alg` in the file, and its operator if present.
pub fn representation_from_json(alg: &LeibnizAlgebra, text: &str) -> Result<(Representation, Option<Matrix>)> {
    let f: RepresentationJson = read(text)?;
    let field = alg.field();
    let conv = |ms: &[MatrixJson]| ms.iter().map(|m| m.to_matrix(field)).collect::<Result<Vec<_>>>();
    let rep = Representation::new(alg.clone(), f.vdim, conv(&f.rho_l)?, conv(&f.rho_r)?)?;
    let alpha = f.alpha.map(|m| m.to_matrix(field)).transpose()?;
    Ok((rep, alpha))
}

/// Unvalidated actions `(vdim, ρL, ρR, α)`.
pub type RepresentationParts = (usize, Vec<Matrix>, Vec<Matrix>, Option<Matrix>);

pub fn representation_parts_from_json(field: FieldSpec, text: &str) -> Result<RepresentationParts> {
    let f: RepresentationJson = read(text)?;
    crate::algebra::check_dim(f.vdim)?;
    let conv = |ms: &[MatrixJson]| ms.iter().map(|m| m.to_matrix(field)).collect::<Result<Vec<_>>>();
    let alpha = f.alpha.map(|m| m.to_matrix(field)).transpose()?;
    Ok((f.vdim, conv(&f.rho_l)?, conv(&f.rho_r)?, alpha))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub j: usize,
    pub k: usize,
    pub v: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaJson {
    pub i: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoproductJson {
    pub dim: usize,
    pub delta: Vec<DeltaJson>,
}

impl CoproductJson {
    pub fn of(d: &Tensor3) -> CoproductJson {
        let n = d.dims()[0];
        let delta = (0..n)
            .filter_map(|i| {
                let terms: Vec<TermJson> = (0..n)
                    .flat_map(|j| (0..n).map(move |k| (j, k)))
                    .filter(|&(j, k)| !d[(i, j, k)].is_zero())
                    .map(|(j, k)| TermJson {
                        j: j + 1,
                        k: k + 1,
                        v: d[(i, j, k)].to_string(),
                    })
                    .collect();
                (!terms.is_empty()).then_some(DeltaJson { i: i + 1, terms })
            })
            .collect();
        CoproductJson { dim: n, delta }
    }

    /// `d[(i,j,k)]` is the coefficient of `e_j⊗e_k` in `δ(e_i)`.
    pub fn to_tensor(&self, field: FieldSpec) -> Result<Tensor3> {
        let n = self.dim;
        crate::algebra::check_dim(n)?;
        let mut d = Tensor3::cube(field, n);
        for row in &self.delta {
            let i = index(row.i, n, "coproduct")?;
            for t in &row.terms {
                let (j, k) = (index(t.j, n, "coproduct")?, index(t.k, n, "coproduct")?);
                d.add_at((i, j, k), &field.parse(&t.v)?);
            }
        }
        Ok(d)
    }
}

pub fn coproduct_to_json(d: &Tensor3) -> String {
    emit(&CoproductJson::of(d))
}

pub fn coproduct_from_json(field: FieldSpec, text: &str) -> Result<Tensor3> {
    read::<CoproductJson>(text)?.to_tensor(field)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RMatrixJson {
    pub dim: usize,
    pub r: Vec<Vec<String>>,
}

/// `r[i][j]` is the coefficient of `e_i⊗e_j`.
pub fn rmatrix_to_json(r: &Matrix) -> String {
    emit(&RMatrixJson {
        dim: r.rows(),
        r: matrix_strings(r),
    })
}

pub fn rmatrix_from_json(field: FieldSpec, text: &str) -> Result<Matrix> {
    let f: RMatrixJson = read(text)?;
    let m = MatrixJson {
        rows: f.dim,
        cols: f.dim,
        entries: f.r,
    };
    m.to_matrix(field)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiJson {
    pub pi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
}

pub fn pi_to_json(pi: &PiForm) -> String {
    let name = match pi {
        PiForm::PlusX => "x",
        PiForm::MinusX => "-x",
        PiForm::MinusXPlusTheta(_) => "-x+theta",
        PiForm::ThetaXInverse(_) => "theta/x",
    };
    emit(&PiJson {
        pi: name.into(),
        theta: pi.theta().map(|t| t.to_string()),
    })
}

pub fn pi_from_json(field: FieldSpec, text: &str) -> Result<PiForm> {
    let f: PiJson = read(text)?;
    let theta = || -> Result<Scalar> {
        field.parse(
            f.theta
                .as_deref()
                .ok_or_else(|| Error::Parse(format!("form {:?} needs theta", f.pi)))?,
        )
    };
    let pi = match f.pi.as_str() {
        "x" => PiForm::PlusX,
        "-x" => PiForm::MinusX,
        "-x+theta" => PiForm::MinusXPlusTheta(theta()?),
        "theta/x" => PiForm::ThetaXInverse(theta()?),
        other => return Err(Error::Parse(format!("unknown form {other:?}"))),
    };
    pi.validate()?;
    Ok(pi)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BundleJson {
    pub algebra: AlgebraJson,
    pub coproduct: CoproductJson,
    pub lambda: String,
    #[serde(rename = "R")]
    pub r: MatrixJson,
    #[serde(rename = "S")]
    pub s: MatrixJson,
}

pub fn bundle_to_json(b: &BialgebraBundle) -> String {
    emit(&BundleJson {
        algebra: AlgebraJson::of(&b.alg),
        coproduct: CoproductJson::of(&b.delta),
        lambda: b.lambda.to_string(),
        r: MatrixJson::of(&b.r),
        s: MatrixJson::of(&b.s),
    })
}

pub fn bundle_from_json(text: &str) -> Result<BialgebraBundle> {
    let f: BundleJson = read(text)?;
    let alg = f.algebra.to_algebra()?;
    let field = alg.field();
    Ok(BialgebraBundle {
        delta: f.coproduct.to_tensor(field)?,
        lambda: field.parse(&f.lambda)?,
        r: f.r.to_matrix(field)?,
        s: f.s.to_matrix(field)?,
        alg,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleJson {
    pub algebra: AlgebraJson,
    pub form: MatrixJson,
}

pub fn double_to_json(alg: &LeibnizAlgebra, form: &BilinearForm) -> String {
    emit(&DoubleJson {
        algebra: AlgebraJson::of(alg),
        form: MatrixJson::of(form.matrix()),
    })
}

pub fn double_from_json(text: &str) -> Result<(LeibnizAlgebra, BilinearForm)> {
    let f: DoubleJson = read(text)?;
    let alg = f.algebra.to_algebra()?;
    let form = BilinearForm::new(f.form.to_matrix(alg.field())?)?;
    Ok((alg, form))
}

/// A Reynolds Leibniz algebra `(g, R)` of weight λ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextJson {
    pub algebra: AlgebraJson,
    pub lambda: String,
    #[serde(rename = "R")]
    pub r: MatrixJson,
}

pub fn context_to_json(ctx: &ReynoldsContext) -> String {
    emit(&ContextJson::of(ctx))
}

impl ContextJson {
    pub fn of(ctx: &ReynoldsContext) -> ContextJson {
        ContextJson {
            algebra: AlgebraJson::of(ctx.alg()),
            lambda: ctx.lambda().to_string(),
            r: MatrixJson::of(ctx.op()),
        }
    }
}

pub fn context_from_json(text: &str) -> Result<ReynoldsContext> {
    let f: ContextJson = read(text)?;
    let alg = f.algebra.to_algebra()?;
    let field = alg.field();
    let lambda = field.parse(&f.lambda)?;
    let op = f.r.to_matrix(field)?;
    ReynoldsContext::new(alg, lambda, op)
}

/// The lifted algebra with its symmetric r-matrix and operator `S`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftJson {
    pub context: ContextJson,
    pub r: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s: MatrixJson,
}

pub fn lift_to_json(lift: &Lift) -> String {
    emit(&LiftJson {
        context: ContextJson::of(&lift.ctx),
        r: matrix_strings(&lift.r),
        s: MatrixJson::of(&lift.s),
    })
}

/// Pretty JSON with a trailing newline, as used for every file and report.
pub fn to_json<T: Serialize>(v: &T) -> String {
    emit(v)
}

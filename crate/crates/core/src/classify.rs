//! The two-dimensional algebras, their Reynolds operators and the triangular
//! Reynolds Leibniz bialgebras, as parametric families together with an
//! exhaustive finite-field enumeration to test them against.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use serde::Serialize;

use crate::algebra::{check_reynolds, LeibnizAlgebra, ReynoldsContext, Witness};
use crate::bialgebra::{check_reynolds_bialgebra, BialgebraBundle};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Sampler, Scalar};
use crate::linalg::{Matrix, Tensor3};
use crate::rep::check_adjoint_admissible;
use crate::ybe::{check_admissible_clybe, coboundary_coproduct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BuiltinAlgebra {
    A1,
    A2,
}

impl BuiltinAlgebra {
    pub fn parse(text: &str) -> Result<BuiltinAlgebra> {
        match text.to_ascii_uppercase().as_str() {
            "A1" => Ok(BuiltinAlgebra::A1),
            "A2" => Ok(BuiltinAlgebra::A2),
            _ => Err(Error::Parse(format!("unknown algebra {text:?}, expected A1 or A2"))),
        }
    }
}

impl fmt::Display for BuiltinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinAlgebra::A1 => write!(f, "A1"),
            BuiltinAlgebra::A2 => write!(f, "A2"),
        }
    }
}

/// A1 has `[e2,e2] = e1` only; A2 has `[e2,e1] = [e2,e2] = e1` only.
pub fn builtin_algebra(id: BuiltinAlgebra, field: FieldSpec) -> LeibnizAlgebra {
    let mut c = Tensor3::cube(field, 2);
    c[(1, 1, 0)] = field.one();
    if id == BuiltinAlgebra::A2 {
        c[(1, 0, 0)] = field.one();
    }
    LeibnizAlgebra::new(c).expect("built-in algebras are Leibniz")
}

/// Named parameters appearing in the family formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    K1,
    L1,
    N1,
    N2,
    Eta,
    Gamma,
    Lambda,
}

impl Param {
    pub const ALL: [Param; 7] = [
        Param::K1,
        Param::L1,
        Param::N1,
        Param::N2,
        Param::Eta,
        Param::Gamma,
        Param::Lambda,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Param::K1 => "k1",
            Param::L1 => "l1",
            Param::N1 => "n1",
            Param::N2 => "n2",
            Param::Eta => "eta",
            Param::Gamma => "gamma",
            Param::Lambda => "lambda",
        }
    }

    pub fn parse(text: &str) -> Result<Param> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown parameter {text:?}")))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Assignment = BTreeMap<Param, Scalar>;

/// Rational expression in the parameters with integer constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(Param),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Evaluates with checked division; a vanishing denominator is `DivisionByZero`.
    pub fn eval(&self, field: FieldSpec, at: &Assignment) -> Result<Scalar> {
        Ok(match self {
            Expr::Int(v) => field.int(*v),
            Expr::Var(p) => at
                .get(p)
                .cloned()
                .ok_or_else(|| Error::PreconditionFailed(format!("parameter {p} is unassigned")))?,
            Expr::Neg(a) => -a.eval(field, at)?,
            Expr::Add(a, b) => a.eval(field, at)?.checked_add(&b.eval(field, at)?)?,
            Expr::Sub(a, b) => a.eval(field, at)?.checked_sub(&b.eval(field, at)?)?,
            Expr::Mul(a, b) => a.eval(field, at)?.checked_mul(&b.eval(field, at)?)?,
            Expr::Div(a, b) => a.eval(field, at)?.checked_div(&b.eval(field, at)?)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(p) => write!(f, "{p}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

macro_rules! expr_op {
    ($tr:ident, $m:ident, $v:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

fn c(v: i64) -> Expr {
    Expr::Int(v)
}

fn k1() -> Expr {
    Expr::Var(Param::K1)
}

fn l1() -> Expr {
    Expr::Var(Param::L1)
}

fn n1() -> Expr {
    Expr::Var(Param::N1)
}

fn n2() -> Expr {
    Expr::Var(Param::N2)
}

fn eta() -> Expr {
    Expr::Var(Param::Eta)
}

fn gamma() -> Expr {
    Expr::Var(Param::Gamma)
}

fn lam() -> Expr {
    Expr::Var(Param::Lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    NonZero(Expr),
    Zero(Expr),
}

impl Constraint {
    pub fn holds(&self, field: FieldSpec, at: &Assignment) -> Result<bool> {
        Ok(match self {
            Constraint::NonZero(e) => !e.eval(field, at)?.is_zero(),
            Constraint::Zero(e) => e.eval(field, at)?.is_zero(),
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::NonZero(e) => write!(f, "{e} != 0"),
            Constraint::Zero(e) => write!(f, "{e} = 0"),
        }
    }
}

/// The three shapes of r-matrix on the two-dimensional algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RCase {
    /// `r = [[η,γ],[γ,0]]` on A1.
    A1,
    /// `r = [[η,γ],[γ,0]]` on A2.
    A2First,
    /// `r = η[[1,-1],[-1,1]]` on A2.
    A2Second,
}

impl RCase {
    pub const ALL: [RCase; 3] = [RCase::A1, RCase::A2First, RCase::A2Second];

    pub fn algebra(&self) -> BuiltinAlgebra {
        match self {
            RCase::A1 => BuiltinAlgebra::A1,
            _ => BuiltinAlgebra::A2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RCase::A1 => "a1",
            RCase::A2First => "a2i",
            RCase::A2Second => "a2ii",
        }
    }

    pub fn parse(text: &str) -> Result<RCase> {
        RCase::ALL
            .into_iter()
            .find(|c| c.name() == text)
            .ok_or_else(|| Error::Parse(format!("unknown r-matrix case {text:?}, expected a1, a2i or a2ii")))
    }

    pub fn params(&self) -> &'static [Param] {
        match self {
            RCase::A2Second => &[Param::Eta],
            _ => &[Param::Eta, Param::Gamma],
        }
    }

    /// Keeps the coboundary coproduct nonzero.
    pub fn constraint(&self) -> Constraint {
        match self {
            RCase::A2Second => Constraint::NonZero(eta()),
            _ => Constraint::NonZero(gamma()),
        }
    }

    fn formula(&self) -> [[Expr; 2]; 2] {
        match self {
            RCase::A2Second => [[eta(), -eta()], [-eta(), eta()]],
            _ => [[eta(), gamma()], [gamma(), c(0)]],
        }
    }

    /// The r-matrix at the given parameters, after checking the constraint.
    pub fn matrix(&self, field: FieldSpec, at: &Assignment) -> Result<Matrix> {
        let con = self.constraint();
        if !con.holds(field, at)? {
            return Err(Error::ConstraintViolated(con.to_string()));
        }
        eval_matrix(field, &self.formula(), at)
    }
}

fn eval_matrix(field: FieldSpec, f: &[[Expr; 2]; 2], at: &Assignment) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(2);
    for (i, row) in f.iter().enumerate() {
        let mut out = Vec::with_capacity(2);
        for (j, e) in row.iter().enumerate() {
            out.push(e.eval(field, at).map_err(|err| match err {
                Error::DivisionByZero => {
                    Error::ConstraintViolated(format!("denominator of entry ({i},{j}) = {e} vanishes"))
                }
                other => other,
            })?);
        }
        rows.push(out);
    }
    Matrix::from_rows(field, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    R,
    S,
}

/// A parametric family: either Reynolds operators alone or pairs `(R, S)`
/// paired with an r-matrix case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub name: &'static str,
    pub algebra: BuiltinAlgebra,
    /// `None` for operator families.
    pub case: Option<RCase>,
    /// Free parameters, each read off a single entry when matching.
    pub slots: Vec<Param>,
    pub constraints: Vec<Constraint>,
    readers: Vec<(Param, Slot, usize, usize)>,
    r: [[Expr; 2]; 2],
    s: Option<[[Expr; 2]; 2]>,
}

/// A family evaluated at one parameter assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub alg: LeibnizAlgebra,
    pub lambda: Scalar,
    pub r: Matrix,
    pub s: Option<Matrix>,
    pub r_matrix: Option<Matrix>,
}

impl FamilyDescriptor {
    fn operator(name: &'static str, algebra: BuiltinAlgebra, r: [[Expr; 2]; 2]) -> FamilyDescriptor {
        FamilyDescriptor {
            name,
            algebra,
            case: None,
            slots: Vec::new(),
            constraints: Vec::new(),
            readers: Vec::new(),
            r,
            s: None,
        }
    }

    fn pair(name: &'static str, case: RCase, r: [[Expr; 2]; 2], s: [[Expr; 2]; 2]) -> FamilyDescriptor {
        FamilyDescriptor {
            name,
            algebra: case.algebra(),
            case: Some(case),
            slots: Vec::new(),
            constraints: vec![case.constraint()],
            readers: Vec::new(),
            r,
            s: Some(s),
        }
    }

    fn read_r(mut self, p: Param, i: usize, j: usize) -> FamilyDescriptor {
        self.slots.push(p);
        self.readers.push((p, Slot::R, i, j));
        self
    }

    fn read_s(mut self, p: Param, i: usize, j: usize) -> FamilyDescriptor {
        self.slots.push(p);
        self.readers.push((p, Slot::S, i, j));
        self
    }

    fn requires(mut self, con: Constraint) -> FamilyDescriptor {
        self.constraints.push(con);
        self
    }

    pub fn is_operator_family(&self) -> bool {
        self.case.is_none()
    }

    /// The same formulas with every constraint dropped.
    pub fn without_constraints(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            constraints: Vec::new(),
            ..self.clone()
        }
    }

    /// Every parameter an instance needs: the slots, λ and the r-matrix parameters.
    pub fn parameters(&self) -> Vec<Param> {
        let mut ps = self.slots.clone();
        ps.push(Param::Lambda);
        if let Some(case) = self.case {
            ps.extend_from_slice(case.params());
        }
        ps
    }

    /// Entry formulas of `R` (and `S`) as text, row-major.
    pub fn formulas(&self) -> (Vec<Vec<String>>, Option<Vec<Vec<String>>>) {
        let show = |f: &[[Expr; 2]; 2]| {
            f.iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect()
        };
        (show(&self.r), self.s.as_ref().map(show))
    }

    pub fn instantiate(&self, field: FieldSpec, at: &Assignment) -> Result<FamilyInstance> {
        for p in self.parameters() {
            if !at.contains_key(&p) {
                return Err(Error::PreconditionFailed(format!("parameter {p} is unassigned")));
            }
        }
        for con in &self.constraints {
            let ok = match con.holds(field, at) {
                Ok(ok) => ok,
                Err(Error::DivisionByZero) => false,
                Err(e) => return Err(e),
            };
            if !ok {
                return Err(Error::ConstraintViolated(con.to_string()));
            }
        }
        let r = eval_matrix(field, &self.r, at)?;
        let s = self.s.as_ref().map(|f| eval_matrix(field, f, at)).transpose()?;
        let r_matrix = match self.case {
            Some(case) => Some(eval_matrix(field, &case.formula(), at)?),
            None => None,
        };
        Ok(FamilyInstance {
            alg: builtin_algebra(self.algebra, field),
            lambda: at[&Param::Lambda].clone(),
            r,
            s,
            r_matrix,
        })
    }
}

/// Runs the checker belonging to the family on an instance; `None` when it passes.
pub fn check_instance(inst: &FamilyInstance) -> Result<Option<Witness>> {
    match (&inst.s, &inst.r_matrix) {
        (Some(s), Some(rm)) => {
            let bundle = BialgebraBundle {
                alg: inst.alg.clone(),
                delta: coboundary_coproduct(&inst.alg, rm)?,
                lambda: inst.lambda.clone(),
                r: inst.r.clone(),
                s: s.clone(),
            };
            Ok(check_reynolds_bialgebra(&bundle)?.first_failure().cloned())
        }
        _ => Ok(check_reynolds(&inst.alg, &inst.lambda, &inst.r)?.witness().cloned()),
    }
}

/// Every family, operator families first.
pub fn families() -> Vec<FamilyDescriptor> {
    use BuiltinAlgebra::{A1, A2};
    use Constraint::{NonZero, Zero};
    let one_plus = |p: Expr| c(1) + lam() * p;
    let inv_lam = || c(1) / lam();
    // 2 n2 / (1 + λ n2)
    let g = || c(2) * n2() / one_plus(n2());
    vec![
        FamilyDescriptor::operator("a1-R1", A1, [[k1(), l1()], [c(0), c(0)]])
            .read_r(Param::K1, 0, 0)
            .read_r(Param::L1, 0, 1),
        FamilyDescriptor::operator("a1-R2", A1, [[k1(), l1()], [c(0), c(2) * k1() / one_plus(k1())]])
            .read_r(Param::K1, 0, 0)
            .read_r(Param::L1, 0, 1)
            .requires(NonZero(lam()))
            .requires(NonZero(one_plus(k1()))),
        FamilyDescriptor::operator("a1-R3", A1, [[k1(), l1()], [c(0), c(2) * k1()]])
            .read_r(Param::K1, 0, 0)
            .read_r(Param::L1, 0, 1)
            .requires(Zero(lam())),
        FamilyDescriptor::operator("a2-R1", A2, [[c(0), l1()], [c(0), -l1()]]).read_r(Param::L1, 0, 1),
        FamilyDescriptor::operator("a2-R2", A2, [[c(0), l1()], [c(0), c(0)]]).read_r(Param::L1, 0, 1),
        FamilyDescriptor::operator("a2-R3", A2, [[k1(), k1() - inv_lam()], [c(0), inv_lam()]])
            .read_r(Param::K1, 0, 0)
            .requires(NonZero(lam())),
        FamilyDescriptor::pair(
            "a1-a",
            RCase::A1,
            [[k1(), l1()], [c(0), c(0)]],
            [[c(0), l1() + k1() * eta() / gamma()], [c(0), k1()]],
        )
        .read_r(Param::K1, 0, 0)
        .read_r(Param::L1, 0, 1),
        FamilyDescriptor::pair(
            "a1-b",
            RCase::A1,
            [[c(0), l1()], [c(0), c(0)]],
            [[c(0), l1()], [c(0), c(0)]],
        )
        .read_r(Param::L1, 0, 1),
        FamilyDescriptor::pair(
            "a1-c",
            RCase::A1,
            [[k1(), l1()], [c(0), c(2) * k1()]],
            [[c(2) * k1(), l1() - k1() * eta() / gamma()], [c(0), k1()]],
        )
        .read_r(Param::K1, 0, 0)
        .read_r(Param::L1, 0, 1)
        .requires(Zero(lam())),
        FamilyDescriptor::pair(
            "a2i-a",
            RCase::A2First,
            [[c(0), c(0)], [c(0), c(0)]],
            [[c(0), n1()], [c(0), n2()]],
        )
        .read_s(Param::N1, 0, 1)
        .read_s(Param::N2, 1, 1),
        FamilyDescriptor::pair(
            "a2i-b",
            RCase::A2First,
            [[c(0), l1()], [c(0), -l1()]],
            [[c(0), n1()], [c(0), -n1()]],
        )
        .read_r(Param::L1, 0, 1)
        .read_s(Param::N1, 0, 1),
        FamilyDescriptor::pair(
            "a2i-c",
            RCase::A2First,
            [[c(0), -inv_lam()], [c(0), inv_lam()]],
            [[inv_lam(), inv_lam()], [c(0), c(0)]],
        )
        .requires(NonZero(lam())),
        FamilyDescriptor::pair(
            "a2i-d",
            RCase::A2First,
            [[c(0), l1()], [c(0), c(0)]],
            [[c(0), n1()], [c(0), c(0)]],
        )
        .read_r(Param::L1, 0, 1)
        .read_s(Param::N1, 0, 1),
        FamilyDescriptor::pair(
            "a2i-e",
            RCase::A2First,
            [[c(0), l1()], [c(0), c(0)]],
            [[c(0), l1()], [c(0), c(0)]],
        )
        .read_r(Param::L1, 0, 1),
        FamilyDescriptor::pair(
            "a2i-f",
            RCase::A2First,
            [[c(0), l1()], [c(0), c(0)]],
            [[c(0), n1()], [c(0), n2()]],
        )
        .read_r(Param::L1, 0, 1)
        .read_s(Param::N1, 0, 1)
        .read_s(Param::N2, 1, 1),
        FamilyDescriptor::pair(
            "a2i-g",
            RCase::A2First,
            [[g(), g() - inv_lam()], [c(0), inv_lam()]],
            [[g(), g() - n2()], [c(0), n2()]],
        )
        .read_s(Param::N2, 1, 1)
        .requires(NonZero(lam()))
        .requires(NonZero(one_plus(n2()))),
        FamilyDescriptor::pair(
            "a2i-h",
            RCase::A2First,
            [[c(2) / lam(), inv_lam()], [c(0), inv_lam()]],
            [[inv_lam(), -inv_lam()], [c(0), c(2) / lam()]],
        )
        .requires(NonZero(lam())),
        FamilyDescriptor::pair(
            "a2i-i",
            RCase::A2First,
            [[c(0), -inv_lam()], [c(0), inv_lam()]],
            [[c(0), c(0)], [c(0), c(0)]],
        )
        .requires(NonZero(lam())),
        FamilyDescriptor::pair(
            "a2i-j",
            RCase::A2First,
            [[c(0), -inv_lam()], [c(0), inv_lam()]],
            [[inv_lam(), inv_lam()], [c(0), c(0)]],
        )
        .requires(NonZero(lam())),
        FamilyDescriptor::pair(
            "a2ii-a",
            RCase::A2Second,
            [[c(0), l1()], [c(0), -l1()]],
            [[c(0), l1()], [c(0), -l1()]],
        )
        .read_r(Param::L1, 0, 1),
    ]
}

pub fn family(name: &str) -> Result<FamilyDescriptor> {
    families()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown family {name:?}")))
}

pub fn operator_families(alg: BuiltinAlgebra) -> Vec<FamilyDescriptor> {
    families()
        .into_iter()
        .filter(|f| f.is_operator_family() && f.algebra == alg)
        .collect()
}

pub fn pair_families(case: RCase) -> Vec<FamilyDescriptor> {
    families().into_iter().filter(|f| f.case == Some(case)).collect()
}

/// Reads the free slots off their entries, fills in `context` (λ and the
/// r-matrix parameters), re-checks the constraints and compares the
/// instantiated matrices with the given ones.
pub fn match_family(
    family: &FamilyDescriptor,
    r: &Matrix,
    s: Option<&Matrix>,
    context: &Assignment,
) -> Option<Assignment> {
    let field = r.field();
    if r.rows() != 2 || r.cols() != 2 {
        return None;
    }
    if family.s.is_some() && s.is_none() {
        return None;
    }
    let mut at = context.clone();
    for &(p, slot, i, j) in &family.readers {
        let m = match slot {
            Slot::R => r,
            Slot::S => s?,
        };
        at.insert(p, m[(i, j)].clone());
    }
    let inst = family.instantiate(field, &at).ok()?;
    if &inst.r != r {
        return None;
    }
    if let (Some(found), Some(given)) = (&inst.s, s) {
        if found != given {
            return None;
        }
    }
    at.retain(|p, _| family.parameters().contains(p));
    Some(at)
}

/// One retained candidate together with every family it matches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    #[serde(serialize_with = "crate::io::ser_matrix")]
    pub r: Matrix,
    #[serde(
        serialize_with = "crate::io::ser_opt_matrix",
        skip_serializing_if = "Option::is_none"
    )]
    pub s: Option<Matrix>,
    pub families: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub algebra: BuiltinAlgebra,
    pub p: u32,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub lambda: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<RCase>,
    #[serde(serialize_with = "crate::io::ser_assignment")]
    pub r_params: Assignment,
    pub scanned: u64,
    pub solutions: Vec<Solution>,
    pub family_counts: BTreeMap<String, usize>,
    pub unmatched: Vec<Solution>,
    /// Pair scans only: pairs that form a Reynolds Leibniz bialgebra with
    /// the coboundary coproduct but do not satisfy the admissible cLYBe.
    pub bialgebra_only: Vec<Solution>,
    /// Pair scans only: admissible-cLYBe pairs whose bundle fails the
    /// bialgebra check. Always empty unless the implication is broken.
    pub unsound: Vec<Solution>,
}

impl EnumerationReport {
    pub fn is_complete(&self) -> bool {
        self.unmatched.is_empty() && self.unsound.is_empty()
    }
}

fn prime_of(field: FieldSpec) -> Result<u32> {
    match field {
        FieldSpec::Prime(p) => Ok(p),
        FieldSpec::Rational => Err(Error::FieldMismatch(field, FieldSpec::Prime(3))),
    }
}

fn nth_matrix(elements: &[Scalar], field: FieldSpec, mut index: usize) -> Matrix {
    let p = elements.len();
    let mut e = [0usize; 4];
    for slot in e.iter_mut().rev() {
        *slot = index % p;
        index /= p;
    }
    Matrix::from_rows(
        field,
        vec![
            vec![elements[e[0]].clone(), elements[e[1]].clone()],
            vec![elements[e[2]].clone(), elements[e[3]].clone()],
        ],
    )
    .expect("2x2")
}

/// Evaluates `f` on every index in `0..total`, split across threads into
/// contiguous ranges. The result is in index order whatever the split.
fn scan<T: Send>(total: usize, f: impl Fn(usize) -> Option<T> + Sync) -> Vec<T> {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(1, 16);
    let chunk = total.div_ceil(threads).max(1);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..total)
            .step_by(chunk)
            .map(|start| scope.spawn(move || (start..(start + chunk).min(total)).filter_map(f).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}

fn all_reynolds(alg: &LeibnizAlgebra, lambda: &Scalar) -> Result<(Vec<Scalar>, Vec<Matrix>)> {
    let field = alg.field();
    let elements = field
        .elements()
        .ok_or(Error::FieldMismatch(field, FieldSpec::Prime(3)))?;
    let total = elements.len().pow(4);
    let found = scan(total, |i| {
        let r = nth_matrix(&elements, field, i);
        match check_reynolds(alg, lambda, &r) {
            Ok(v) if v.holds() => Some(r),
            _ => None,
        }
    });
    Ok((elements, found))
}

fn tally(solutions: &[Solution], names: impl Iterator<Item = &'static str>) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = names.map(|n| (n.to_string(), 0)).collect();
    for sol in solutions {
        for f in &sol.families {
            *counts.entry(f.clone()).or_default() += 1;
        }
    }
    counts
}

/// Scans all `p⁴` operators on a built-in algebra over `F_p` and matches
/// the Reynolds ones against the operator families.
pub fn enumerate_reynolds(id: BuiltinAlgebra, field: FieldSpec, lambda: &Scalar) -> Result<EnumerationReport> {
    let p = prime_of(field)?;
    crate::algebra::expect_field(field, lambda.field())?;
    let alg = builtin_algebra(id, field);
    let fams = operator_families(id);
    let context: Assignment = [(Param::Lambda, lambda.clone())].into();
    let (_, found) = all_reynolds(&alg, lambda)?;
    let mut solutions: Vec<Solution> = found
        .into_iter()
        .map(|r| Solution {
            families: fams
                .iter()
                .filter(|f| match_family(f, &r, None, &context).is_some())
                .map(|f| f.name.to_string())
                .collect(),
            r,
            s: None,
        })
        .collect();
    solutions.sort_by(|a, b| a.r.entries().cmp(b.r.entries()));
    let unmatched = solutions.iter().filter(|s| s.families.is_empty()).cloned().collect();
    Ok(EnumerationReport {
        algebra: id,
        p,
        lambda: lambda.clone(),
        case: None,
        r_params: Assignment::new(),
        scanned: (p as u64).pow(4),
        family_counts: tally(&solutions, fams.iter().map(|f| f.name)),
        solutions,
        unmatched,
        bialgebra_only: Vec::new(),
        unsound: Vec::new(),
    })
}

/// Scans pairs `(R, S)` over `F_p` for a fixed r-matrix of the given case.
///
/// `R` ranges over the Reynolds operators and `S` over all `p⁴` operators.
/// A pair is retained when `S` is adjoint admissible and `r` solves the
/// `S`-admissible cLYBe, which makes the coboundary bundle a triangular
/// Reynolds Leibniz bialgebra; each retained bundle is re-checked with the
/// full bialgebra checker. Pairs passing only the full check are listed
/// separately.
pub fn enumerate_triangular_pairs(
    case: RCase,
    r_params: &Assignment,
    field: FieldSpec,
    lambda: &Scalar,
) -> Result<EnumerationReport> {
    let p = prime_of(field)?;
    crate::algebra::expect_field(field, lambda.field())?;
    let id = case.algebra();
    let alg = builtin_algebra(id, field);
    let rm = case.matrix(field, r_params)?;
    let delta = coboundary_coproduct(&alg, &rm)?;
    let fams = pair_families(case);
    let mut context = r_params.clone();
    context.retain(|k, _| case.params().contains(k));
    context.insert(Param::Lambda, lambda.clone());

    let (elements, ops) = all_reynolds(&alg, lambda)?;
    let per_r = elements.len().pow(4);
    let ctxs: Vec<ReynoldsContext> = ops
        .iter()
        .map(|r| ReynoldsContext::new(alg.clone(), lambda.clone(), r.clone()))
        .collect::<Result<_>>()?;

    enum Kind {
        Triangular,
        Unsound,
        BialgebraOnly,
    }

    let found = scan(ctxs.len() * per_r, |idx| {
        let ctx = &ctxs[idx / per_r];
        let s = nth_matrix(&elements, field, idx % per_r);
        let bundle = BialgebraBundle {
            alg: alg.clone(),
            delta: delta.clone(),
            lambda: lambda.clone(),
            r: ctx.op().clone(),
            s: s.clone(),
        };
        let full = check_reynolds_bialgebra(&bundle).map(|rep| rep.ok()).unwrap_or(false);
        let admissible = check_adjoint_admissible(ctx, &s).map(|v| v.holds()).unwrap_or(false);
        let triangular = admissible && check_admissible_clybe(ctx, &s, &rm).map(|a| a.all()).unwrap_or(false);
        let kind = match (triangular, full) {
            (true, true) => Kind::Triangular,
            (true, false) => Kind::Unsound,
            (false, true) => Kind::BialgebraOnly,
            (false, false) => return None,
        };
        Some((kind, ctx.op().clone(), s))
    });

    let mut solutions = Vec::new();
    let mut unsound = Vec::new();
    let mut bialgebra_only = Vec::new();
    for (kind, r, s) in found {
        let sol = Solution {
            families: fams
                .iter()
                .filter(|f| match_family(f, &r, Some(&s), &context).is_some())
                .map(|f| f.name.to_string())
                .collect(),
            r,
            s: Some(s),
        };
        match kind {
            Kind::Triangular => solutions.push(sol),
            Kind::Unsound => {
                unsound.push(sol.clone());
                solutions.push(sol);
            }
            Kind::BialgebraOnly => bialgebra_only.push(sol),
        }
    }
    let key = |s: &Solution| (s.r.entries().to_vec(), s.s.as_ref().map(|m| m.entries().to_vec()));
    solutions.sort_by_key(key);
    bialgebra_only.sort_by_key(key);
    unsound.sort_by_key(key);
    let unmatched = solutions.iter().filter(|s| s.families.is_empty()).cloned().collect();
    Ok(EnumerationReport {
        algebra: id,
        p,
        lambda: lambda.clone(),
        case: Some(case),
        r_params: context.into_iter().filter(|(k, _)| *k != Param::Lambda).collect(),
        scanned: (ctxs.len() * per_r) as u64,
        family_counts: tally(&solutions, fams.iter().map(|f| f.name)),
        solutions,
        unmatched,
        bialgebra_only,
        unsound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    Passed { trials: usize },
    Counterexample { assignment: Assignment, witness: Witness },
}

impl FamilyVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FamilyVerdict::Passed { .. })
    }
}

const MAX_REDRAWS: usize = 10_000;

/// Draws an assignment over `field` honouring the constraints. Parameters
/// pinned to zero by a constraint `p = 0` are set to zero directly.
pub fn sample_assignment(family: &FamilyDescriptor, field: FieldSpec, sampler: &mut Sampler) -> Result<Assignment> {
    let pinned: Vec<Param> = family
        .constraints
        .iter()
        .filter_map(|con| match con {
            Constraint::Zero(Expr::Var(p)) => Some(*p),
            _ => None,
        })
        .collect();
    for _ in 0..MAX_REDRAWS {
        let at: Assignment = family
            .parameters()
            .into_iter()
            .map(|p| {
                let v = if pinned.contains(&p) {
                    field.zero()
                } else {
                    sampler.any(field)
                };
                (p, v)
            })
            .collect();
        match family.instantiate(field, &at) {
            Ok(_) => return Ok(at),
            Err(Error::ConstraintViolated(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedField)
}

/// Instantiates the family at `trials` random rational assignments and runs
/// its checker on each.
pub fn verify_family(family: &FamilyDescriptor, trials: usize, seed: u64) -> Result<FamilyVerdict> {
    verify_family_over(family, FieldSpec::Rational, trials, seed)
}

pub fn verify_family_over(
    family: &FamilyDescriptor,
    field: FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<FamilyVerdict> {
    let mut sampler = Sampler::new(seed);
    for _ in 0..trials {
        let at = sample_assignment(family, field, &mut sampler)?;
        let inst = family.instantiate(field, &at)?;
        if let Some(witness) = check_instance(&inst)? {
            return Ok(FamilyVerdict::Counterexample {
                assignment: at,
                witness,
            });
        }
    }
    Ok(FamilyVerdict::Passed { trials })
}

/// Runs the checker on every admissible assignment over `F_p`. Returns the
/// number of instances checked and the first failing assignment, if any.
pub fn sweep_family(family: &FamilyDescriptor, field: FieldSpec) -> Result<(usize, Option<(Assignment, Witness)>)> {
    let elements = field
        .elements()
        .ok_or(Error::FieldMismatch(field, FieldSpec::Prime(3)))?;
    let params = family.parameters();
    let p = elements.len();
    let total = p.pow(params.len() as u32);
    let mut checked = 0;
    for mut idx in 0..total {
        let mut at = Assignment::new();
        for &param in &params {
            at.insert(param, elements[idx % p].clone());
            idx /= p;
        }
        let inst = match family.instantiate(field, &at) {
            Ok(inst) => inst,
            Err(Error::ConstraintViolated(_)) => continue,
            Err(e) => return Err(e),
        };
        checked += 1;
        if let Some(w) = check_instance(&inst)? {
            return Ok((checked, Some((at, w))));
        }
    }
    Ok((checked, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_leibniz;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn builtins_are_leibniz() {
        for id in [BuiltinAlgebra::A1, BuiltinAlgebra::A2] {
            for f in [FieldSpec::Rational, fp(5)] {
                let a = builtin_algebra(id, f);
                assert!(check_leibniz(a.structure()).unwrap().holds());
            }
        }
        let a2 = builtin_algebra(BuiltinAlgebra::A2, FieldSpec::Rational);
        let e2 = a2.basis(1);
        assert_eq!(a2.bracket(&e2, &e2), a2.basis(0));
        assert_eq!(a2.bracket(&e2, &a2.basis(0)), a2.basis(0));
        assert_eq!(a2.bracket(&a2.basis(0), &e2), vec![FieldSpec::Rational.zero(); 2]);
    }

    #[test]
    fn names_are_unique() {
        let names: Vec<_> = families().iter().map(|f| f.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(names.len(), 20);
    }

    #[test]
    fn read_off_match() {
        let f5 = fp(5);
        let r = Matrix::from_ints(f5, &[&[2, 3], &[0, 0]]);
        let ctx: Assignment = [(Param::Lambda, f5.one())].into();
        let at = match_family(&family("a1-R1").unwrap(), &r, None, &ctx).unwrap();
        assert_eq!(at[&Param::K1], f5.int(2));
        assert_eq!(at[&Param::L1], f5.int(3));
    }

    #[test]
    fn identity_matches_second_family() {
        let q = FieldSpec::Rational;
        let ctx: Assignment = [(Param::Lambda, q.one())].into();
        let at = match_family(&family("a1-R2").unwrap(), &Matrix::identity(q, 2), None, &ctx).unwrap();
        assert_eq!(at[&Param::K1], q.one());
        assert_eq!(at[&Param::L1], q.zero());
    }

    #[test]
    fn lower_entry_matches_nothing() {
        let q = FieldSpec::Rational;
        let r = Matrix::from_ints(q, &[&[0, 0], &[1, 0]]);
        for l in 0..3 {
            let ctx: Assignment = [(Param::Lambda, q.int(l))].into();
            for f in operator_families(BuiltinAlgebra::A1) {
                assert!(match_family(&f, &r, None, &ctx).is_none());
            }
        }
    }

    #[test]
    fn removed_constraint_reports_violation() {
        let q = FieldSpec::Rational;
        let f = family("a1-R2").unwrap().without_constraints();
        let lambda = q.int(2);
        let k = -q.ratio(1, 2).unwrap();
        let at: Assignment = [(Param::Lambda, lambda), (Param::K1, k), (Param::L1, q.one())].into();
        assert!(matches!(f.instantiate(q, &at), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn small_enumeration_counts() {
        let f3 = fp(3);
        let rep = enumerate_reynolds(BuiltinAlgebra::A1, f3, &f3.one()).unwrap();
        assert_eq!(rep.solutions.len(), 12);
        assert!(rep.unmatched.is_empty());
        assert!(rep.solutions.iter().any(|s| s.r.is_zero()));
        let rep0 = enumerate_reynolds(BuiltinAlgebra::A1, f3, &f3.zero()).unwrap();
        assert_eq!(rep0.solutions.len(), 15);
        assert!(rep0.unmatched.is_empty());
    }

    #[test]
    fn enumeration_rejects_rationals() {
        let q = FieldSpec::Rational;
        assert!(matches!(
            enumerate_reynolds(BuiltinAlgebra::A1, q, &q.one()),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn second_case_pairs_at_weight_zero() {
        let f3 = fp(3);
        let at: Assignment = [(Param::Eta, f3.one())].into();
        let rep = enumerate_triangular_pairs(RCase::A2Second, &at, f3, &f3.zero()).unwrap();
        assert!(rep.unsound.is_empty());
        assert!(rep.unmatched.is_empty(), "{:?}", rep.unmatched);
        assert!(rep
            .solutions
            .iter()
            .any(|s| s.r.is_zero() && s.s.as_ref().is_some_and(Matrix::is_zero)));
    }

    #[test]
    fn operator_families_verify() {
        for f in families().iter().filter(|f| f.is_operator_family()) {
            assert!(verify_family(f, 10, 3).unwrap().passed(), "{}", f.name);
        }
    }
}

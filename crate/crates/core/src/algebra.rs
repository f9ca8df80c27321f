//! Leibniz algebras stored as structure constants, Reynolds operators of a
//! given weight, the induced bracket and homomorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{basis_vector, vadd, vscale, vsub, zero_vector, Matrix, Tensor3, Vector};

pub const MAX_DIM: usize = 8;

/// Location and the two unequal sides of a violated identity.
/// Indices are zero-based basis positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: &'static str,
    pub at: Vec<usize>,
    #[serde(serialize_with = "crate::io::ser_scalars")]
    pub lhs: Vec<Scalar>,
    #[serde(serialize_with = "crate::io::ser_scalars")]
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    /// The first violation among several checks, in order.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().find(|v| !v.holds()).unwrap_or(Verdict::Holds)
    }
}

/// Compares two sides; `None` when equal.
pub(crate) fn compare(identity: &'static str, at: &[usize], lhs: Vector, rhs: Vector) -> Option<Witness> {
    if lhs == rhs {
        None
    } else {
        Some(Witness {
            identity,
            at: at.to_vec(),
            lhs,
            rhs,
        })
    }
}

pub(crate) fn compare_matrices(identity: &'static str, at: &[usize], lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
    compare(identity, at, lhs.entries().to_vec(), rhs.entries().to_vec())
}

pub(crate) fn first_violation(iter: impl Iterator<Item = Option<Witness>>) -> Verdict {
    iter.flatten().next().map_or(Verdict::Holds, Verdict::Violated)
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionOutOfRange(n))
    } else {
        Ok(())
    }
}

pub(crate) fn expect_shape(what: &str, m: &Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub(crate) fn expect_field(field: FieldSpec, other: FieldSpec) -> Result<()> {
    if field != other {
        Err(Error::FieldMismatch(field, other))
    } else {
        Ok(())
    }
}

fn bracket_raw(c: &Tensor3, x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = c.dims()[0];
    let mut out = zero_vector(c.field(), n);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let w = &x[i] * &y[j];
            for (k, o) in out.iter_mut().enumerate() {
                let ck = &c[(i, j, k)];
                if !ck.is_zero() {
                    *o = &*o + &(&w * ck);
                }
            }
        }
    }
    out
}

/// Evaluates the Leibniz identity `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` on all
/// basis triples of a raw structure-constant tensor.
pub fn check_leibniz(c: &Tensor3) -> Result<Verdict> {
    let [a, b, d] = c.dims();
    if a != b || b != d {
        return Err(Error::DimensionMismatch(format!(
            "structure constants of shape {:?}",
            c.dims()
        )));
    }
    let n = a;
    let f = c.field();
    let e = |i| basis_vector(f, n, i);
    Ok(first_violation((0..n * n * n).map(|t| {
        let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
        let (x, y, z) = (e(i), e(j), e(k));
        let lhs = bracket_raw(c, &x, &bracket_raw(c, &y, &z));
        let rhs = vadd(
            &bracket_raw(c, &bracket_raw(c, &x, &y), &z),
            &bracket_raw(c, &y, &bracket_raw(c, &x, &z)),
        );
        compare("leibniz", &[i, j, k], lhs, rhs)
    })))
}

/// A validated Leibniz algebra with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    c: Tensor3,
}

impl LeibnizAlgebra {
    pub fn new(c: Tensor3) -> Result<LeibnizAlgebra> {
        check_dim(c.dims()[0])?;
        match check_leibniz(&c)? {
            Verdict::Holds => Ok(LeibnizAlgebra { c }),
            Verdict::Violated(w) => Err(Error::NotLeibniz(w.at)),
        }
    }

    pub fn abelian(field: FieldSpec, n: usize) -> LeibnizAlgebra {
        LeibnizAlgebra {
            c: Tensor3::cube(field, n),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.c.field()
    }

    pub fn dim(&self) -> usize {
        self.c.dims()[0]
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.c
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vector(self.field(), self.dim(), i)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bracket_raw(&self.c, x, y)
    }

    pub fn checked_bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        if let Some(s) = x.iter().chain(y).find(|s| !self.field().contains(s)) {
            return Err(Error::FieldMismatch(self.field(), s.field()));
        }
        Ok(self.bracket(x, y))
    }

    /// Left multiplication `L_x : y ↦ [x, y]`.
    pub fn left(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &self.basis(j))).collect();
        Matrix::from_columns(self.field(), n, &cols)
    }

    /// Right multiplication `R_x : y ↦ [y, x]`.
    pub fn right(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(&self.basis(j), x)).collect();
        Matrix::from_columns(self.field(), n, &cols)
    }
}

fn reynolds_sides(alg: &LeibnizAlgebra, lambda: &Scalar, r: &Matrix, x: &[Scalar], y: &[Scalar]) -> (Vector, Vector) {
    let (rx, ry) = (r.apply(x), r.apply(y));
    let b = alg.bracket(&rx, &ry);
    let lhs = vadd(&b, &vscale(lambda, &r.apply(&b)));
    let rhs = vadd(&r.apply(&alg.bracket(x, &ry)), &r.apply(&alg.bracket(&rx, y)));
    (lhs, rhs)
}

/// The weighted Reynolds identity
/// `[Rx,Ry] + λR[Rx,Ry] = R[x,Ry] + R[Rx,y]` on all basis pairs.
pub fn check_reynolds(alg: &LeibnizAlgebra, lambda: &Scalar, r: &Matrix) -> Result<Verdict> {
    let n = alg.dim();
    expect_shape("operator", r, n, n)?;
    expect_field(alg.field(), r.field())?;
    expect_field(alg.field(), lambda.field())?;
    Ok(first_violation((0..n * n).map(|t| {
        let (i, j) = (t / n, t % n);
        let (lhs, rhs) = reynolds_sides(alg, lambda, r, &alg.basis(i), &alg.basis(j));
        compare("reynolds", &[i, j], lhs, rhs)
    })))
}

/// Residual of the Reynolds identity at arbitrary vectors.
pub fn reynolds_residual(alg: &LeibnizAlgebra, lambda: &Scalar, r: &Matrix, x: &[Scalar], y: &[Scalar]) -> Vector {
    let (lhs, rhs) = reynolds_sides(alg, lambda, r, x, y);
    vsub(&lhs, &rhs)
}

/// A Leibniz algebra with a Reynolds operator of weight λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReynoldsContext {
    alg: LeibnizAlgebra,
    lambda: Scalar,
    op: Matrix,
}

impl ReynoldsContext {
    pub fn new(alg: LeibnizAlgebra, lambda: Scalar, op: Matrix) -> Result<ReynoldsContext> {
        match check_reynolds(&alg, &lambda, &op)? {
            Verdict::Holds => Ok(ReynoldsContext { alg, lambda, op }),
            Verdict::Violated(_) => Err(Error::NotReynolds),
        }
    }

    pub fn alg(&self) -> &LeibnizAlgebra {
        &self.alg
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn op(&self) -> &Matrix {
        &self.op
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
}

/// The bracket `[x,y]_R = [x,Ry] + [Rx,y] − λ[Rx,Ry]`.
pub fn induced_bracket(ctx: &ReynoldsContext) -> Result<LeibnizAlgebra> {
    let alg = ctx.alg();
    let (n, r, lambda) = (alg.dim(), ctx.op(), ctx.lambda());
    let mut c = Tensor3::cube(alg.field(), n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (alg.basis(i), alg.basis(j));
            let (rx, ry) = (r.apply(&x), r.apply(&y));
            let v = vsub(
                &vadd(&alg.bracket(&x, &ry), &alg.bracket(&rx, &y)),
                &vscale(lambda, &alg.bracket(&rx, &ry)),
            );
            for (k, s) in v.iter().enumerate() {
                c[(i, j, k)] = s.clone();
            }
        }
    }
    LeibnizAlgebra::new(c)
}

/// `φ[x,y]_src = [φx,φy]_dst` on basis pairs and `φ∘R_src = R_dst∘φ`.
pub fn check_homomorphism(phi: &Matrix, src: &ReynoldsContext, dst: &ReynoldsContext) -> Result<Verdict> {
    let (n, m) = (src.dim(), dst.dim());
    expect_shape("homomorphism", phi, m, n)?;
    expect_field(src.field(), dst.field())?;
    expect_field(src.field(), phi.field())?;
    let brackets = first_violation((0..n * n).map(|t| {
        let (i, j) = (t / n, t % n);
        let (x, y) = (src.alg().basis(i), src.alg().basis(j));
        let lhs = phi.apply(&src.alg().bracket(&x, &y));
        let rhs = dst.alg().bracket(&phi.apply(&x), &phi.apply(&y));
        compare("homomorphism-bracket", &[i, j], lhs, rhs)
    }));
    if !brackets.holds() {
        return Ok(brackets);
    }
    let lhs = phi.mul(src.op());
    let rhs = dst.op().mul(phi);
    Ok(match compare_matrices("homomorphism-operator", &[], &lhs, &rhs) {
        None => Verdict::Holds,
        Some(w) => Verdict::Violated(w),
    })
}

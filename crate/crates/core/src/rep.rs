//! Representations of Leibniz algebras, their Reynolds versions, duals,
//! admissibility conditions and semidirect products.

use crate::algebra::{
    check_dim, compare, expect_field, expect_shape, first_violation, LeibnizAlgebra, ReynoldsContext, Verdict, Witness,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{vadd, vscale, Matrix, Tensor3};

/// Actions `ρL(e_i)`, `ρR(e_i)` of the basis of `g` on an `m`-dimensional space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    alg: LeibnizAlgebra,
    vdim: usize,
    rho_l: Vec<Matrix>,
    rho_r: Vec<Matrix>,
}

fn combine(mats: &[Matrix], x: &[Scalar], m: usize) -> Matrix {
    let field = x.first().map(Scalar::field);
    let mut out = match field {
        Some(f) => Matrix::zeros(f, m, m),
        None => return Matrix::zeros(mats[0].field(), m, m),
    };
    for (a, s) in mats.iter().zip(x) {
        if !s.is_zero() {
            out = out.add(&a.scale(s));
        }
    }
    out
}

fn check_actions(alg: &LeibnizAlgebra, vdim: usize, rho_l: &[Matrix], rho_r: &[Matrix]) -> Result<()> {
    let n = alg.dim();
    if rho_l.len() != n || rho_r.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} action matrices on each side, got {} and {}",
            rho_l.len(),
            rho_r.len()
        )));
    }
    for m in rho_l.iter().chain(rho_r) {
        expect_shape("action matrix", m, vdim, vdim)?;
        expect_field(alg.field(), m.field())?;
    }
    Ok(())
}

/// Per-column comparison of two matrices: the witness carries `(x, v)`.
fn compare_columns(identity: &'static str, x: &[usize], lhs: &Matrix, rhs: &Matrix) -> Option<Witness> {
    (0..lhs.cols()).find_map(|v| {
        let mut at = x.to_vec();
        at.push(v);
        compare(identity, &at, lhs.column(v), rhs.column(v))
    })
}

/// The three identities defining a representation, on all basis pairs.
pub fn check_representation(alg: &LeibnizAlgebra, vdim: usize, rho_l: &[Matrix], rho_r: &[Matrix]) -> Result<Verdict> {
    check_actions(alg, vdim, rho_l, rho_r)?;
    let n = alg.dim();
    Ok(first_violation((0..n * n).map(|t| {
        let (i, j) = (t / n, t % n);
        let xy = alg.bracket(&alg.basis(i), &alg.basis(j));
        let (lx, ly, rx, ry) = (&rho_l[i], &rho_l[j], &rho_r[i], &rho_r[j]);
        let lxy = combine(rho_l, &xy, vdim);
        let rxy = combine(rho_r, &xy, vdim);
        compare_columns("rep-left", &[i, j], &lxy, &lx.mul(ly).sub(&ly.mul(lx)))
            .or_else(|| compare_columns("rep-mixed", &[i, j], &rxy, &lx.mul(ry).sub(&ry.mul(lx))))
            .or_else(|| compare_columns("rep-right", &[i, j], &ry.mul(lx).neg(), &ry.mul(rx)))
    })))
}

impl Representation {
    pub fn new(alg: LeibnizAlgebra, vdim: usize, rho_l: Vec<Matrix>, rho_r: Vec<Matrix>) -> Result<Representation> {
        check_dim(vdim)?;
        match check_representation(&alg, vdim, &rho_l, &rho_r)? {
            Verdict::Holds => Ok(Representation {
                alg,
                vdim,
                rho_l,
                rho_r,
            }),
            Verdict::Violated(w) => Err(Error::PreconditionFailed(format!(
                "not a representation: {} fails at {:?}",
                w.identity, w.at
            ))),
        }
    }

    /// The zero actions on an `m`-dimensional space.
    pub fn zero(alg: LeibnizAlgebra, vdim: usize) -> Representation {
        let z = Matrix::zeros(alg.field(), vdim, vdim);
        let n = alg.dim();
        Representation {
            alg,
            vdim,
            rho_l: vec![z.clone(); n],
            rho_r: vec![z; n],
        }
    }

    pub fn alg(&self) -> &LeibnizAlgebra {
        &self.alg
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn rho_l(&self) -> &[Matrix] {
        &self.rho_l
    }

    pub fn rho_r(&self) -> &[Matrix] {
        &self.rho_r
    }

    /// `ρL(x)` for an arbitrary vector `x`.
    pub fn left(&self, x: &[Scalar]) -> Matrix {
        combine(&self.rho_l, x, self.vdim)
    }

    /// `ρR(x)` for an arbitrary vector `x`.
    pub fn right(&self, x: &[Scalar]) -> Matrix {
        combine(&self.rho_r, x, self.vdim)
    }
}

/// `(g, L, R)`.
pub fn adjoint_representation(alg: &LeibnizAlgebra) -> Representation {
    let n = alg.dim();
    Representation {
        alg: alg.clone(),
        vdim: n,
        rho_l: (0..n).map(|i| alg.left(&alg.basis(i))).collect(),
        rho_r: (0..n).map(|i| alg.right(&alg.basis(i))).collect(),
    }
}

/// `(V*, ρL*, −ρL* − ρR*)` with `ρ*(x) = −ρ(x)ᵀ`.
pub fn dual_representation(rep: &Representation) -> Representation {
    Representation {
        alg: rep.alg.clone(),
        vdim: rep.vdim,
        rho_l: rep.rho_l.iter().map(|a| a.transpose().neg()).collect(),
        rho_r: rep
            .rho_l
            .iter()
            .zip(&rep.rho_r)
            .map(|(a, b)| a.transpose().add(&b.transpose()))
            .collect(),
    }
}

fn check_pair_shapes(rep: &Representation, ctx: &ReynoldsContext, op: &Matrix, what: &str) -> Result<()> {
    if rep.alg() != ctx.alg() {
        return Err(Error::DimensionMismatch(
            "representation and operator live on different algebras".into(),
        ));
    }
    expect_shape(what, op, rep.vdim, rep.vdim)?;
    expect_field(ctx.field(), op.field())
}

/// `ρ(Rx)α + λαρ(Rx)α = αρ(Rx) + αρ(x)α` for both actions, on all basis
/// elements `x` and basis vectors `v`.
pub fn check_reynolds_representation(rep: &Representation, ctx: &ReynoldsContext, alpha: &Matrix) -> Result<Verdict> {
    check_pair_shapes(rep, ctx, alpha, "alpha")?;
    let lambda = ctx.lambda();
    let alg = ctx.alg();
    let n = alg.dim();
    let side = |rho_x: &Matrix, rho_rx: &Matrix| {
        let lhs = rho_rx.mul(alpha).add(&alpha.mul(rho_rx).mul(alpha).scale(lambda));
        let rhs = alpha.mul(rho_rx).add(&alpha.mul(rho_x).mul(alpha));
        (lhs, rhs)
    };
    Ok(first_violation((0..n).map(|i| {
        let x = alg.basis(i);
        let rx = ctx.op().apply(&x);
        let (l1, r1) = side(&rep.left(&x), &rep.left(&rx));
        let (l2, r2) = side(&rep.right(&x), &rep.right(&rx));
        compare_columns("reynolds-rep-left", &[i], &l1, &r1)
            .or_else(|| compare_columns("reynolds-rep-right", &[i], &l2, &r2))
    })))
}

/// `βρ(x)β + ρ(Rx)β = βρ(Rx) + λβρ(Rx)β` for both actions.
pub fn check_beta_admissible(rep: &Representation, ctx: &ReynoldsContext, beta: &Matrix) -> Result<Verdict> {
    check_pair_shapes(rep, ctx, beta, "beta")?;
    let lambda = ctx.lambda();
    let alg = ctx.alg();
    let n = alg.dim();
    let side = |rho_x: &Matrix, rho_rx: &Matrix| {
        let lhs = beta.mul(rho_x).mul(beta).add(&rho_rx.mul(beta));
        let rhs = beta.mul(rho_rx).add(&beta.mul(rho_rx).mul(beta).scale(lambda));
        (lhs, rhs)
    };
    Ok(first_violation((0..n).map(|i| {
        let x = alg.basis(i);
        let rx = ctx.op().apply(&x);
        let (l1, r1) = side(&rep.left(&x), &rep.left(&rx));
        let (l2, r2) = side(&rep.right(&x), &rep.right(&rx));
        compare_columns("beta-admissible-left", &[i], &l1, &r1)
            .or_else(|| compare_columns("beta-admissible-right", &[i], &l2, &r2))
    })))
}

/// `S[x,Sy] + [Rx,Sy] = S[Rx,y] + λS[Rx,Sy]` and
/// `S[Sx,y] + [Sx,Ry] = S[x,Ry] + λS[Sx,Ry]` on basis pairs.
pub fn check_adjoint_admissible(ctx: &ReynoldsContext, s: &Matrix) -> Result<Verdict> {
    let alg = ctx.alg();
    let n = alg.dim();
    expect_shape("S", s, n, n)?;
    expect_field(ctx.field(), s.field())?;
    Ok(adjoint_admissible_raw(alg, ctx.lambda(), ctx.op(), s))
}

/// The admissibility identities without requiring `R` to be Reynolds.
pub(crate) fn adjoint_admissible_raw(alg: &LeibnizAlgebra, lambda: &Scalar, r: &Matrix, s: &Matrix) -> Verdict {
    let n = alg.dim();
    first_violation((0..n * n).map(|t| {
        let (i, j) = (t / n, t % n);
        let (x, y) = (alg.basis(i), alg.basis(j));
        let (rx, ry, sx, sy) = (r.apply(&x), r.apply(&y), s.apply(&x), s.apply(&y));
        let l1 = vadd(&s.apply(&alg.bracket(&x, &sy)), &alg.bracket(&rx, &sy));
        let r1 = vadd(
            &s.apply(&alg.bracket(&rx, &y)),
            &vscale(lambda, &s.apply(&alg.bracket(&rx, &sy))),
        );
        let l2 = vadd(&s.apply(&alg.bracket(&sx, &y)), &alg.bracket(&sx, &ry));
        let r2 = vadd(
            &s.apply(&alg.bracket(&x, &ry)),
            &vscale(lambda, &s.apply(&alg.bracket(&sx, &ry))),
        );
        compare("adjoint-admissible-left", &[i, j], l1, r1)
            .or_else(|| compare("adjoint-admissible-right", &[i, j], l2, r2))
    }))
}

/// The bracket `[x+u, y+v] = [x,y] + ρL(x)v + ρR(y)u` on `g ⊕ V` (basis of
/// `g` first) together with the operator `R + α`.
pub fn semidirect_product(
    rep: &Representation,
    ctx: &ReynoldsContext,
    alpha: &Matrix,
) -> Result<(LeibnizAlgebra, Matrix)> {
    check_pair_shapes(rep, ctx, alpha, "alpha")?;
    let (n, m) = (ctx.dim(), rep.vdim);
    check_dim(n + m)?;
    let field = ctx.field();
    let c = ctx.alg().structure();
    let mut t = Tensor3::cube(field, n + m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t[(i, j, k)] = c[(i, j, k)].clone();
            }
        }
        for a in 0..m {
            for k in 0..m {
                t[(i, n + a, n + k)] = rep.rho_l[i][(k, a)].clone();
                t[(n + a, i, n + k)] = rep.rho_r[i][(k, a)].clone();
            }
        }
    }
    let alg = LeibnizAlgebra::new(t)?;
    Ok((alg, Matrix::block_diag(ctx.op(), alpha)))
}

/// Whether an invertible `f: V → V'` intertwines both actions and the operators.
pub fn check_equivalence(
    f: &Matrix,
    rep: &Representation,
    alpha: &Matrix,
    other: &Representation,
    other_alpha: &Matrix,
) -> Result<Verdict> {
    expect_shape("intertwiner", f, other.vdim, rep.vdim)?;
    f.inverse()?;
    let n = rep.alg.dim();
    let actions = first_violation((0..n).map(|i| {
        compare_columns("intertwine-left", &[i], &f.mul(&rep.rho_l[i]), &other.rho_l[i].mul(f))
            .or_else(|| compare_columns("intertwine-right", &[i], &f.mul(&rep.rho_r[i]), &other.rho_r[i].mul(f)))
    }));
    if !actions.holds() {
        return Ok(actions);
    }
    Ok(
        match compare_columns("intertwine-operator", &[], &f.mul(alpha), &other_alpha.mul(f)) {
            None => Verdict::Holds,
            Some(w) => Verdict::Violated(w),
        },
    )
}

//! r-matrices: the classical Leibniz Yang-Baxter equation and its admissible
//! refinement, coboundary coproducts, O-operators and their lift to a
//! semidirect product with the dual module.

use crate::algebra::{
    compare, compare_matrices, expect_field, expect_shape, first_violation, LeibnizAlgebra, ReynoldsContext, Verdict,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{vadd, Matrix, Tensor3};
use crate::rep::{
    check_adjoint_admissible, check_beta_admissible, check_reynolds_representation, dual_representation,
    semidirect_product, Representation,
};

/// The six ways two copies of `r` combine into a three-fold tensor. The
/// first factor `r¹⊗r²` is the one passed as `first`, the barred factor
/// `r̄¹⊗r̄²` is `second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    /// `r¹ ⊗ [r², r̄¹] ⊗ r̄²`
    P12x23,
    /// `r¹ ⊗ r̄¹ ⊗ [r², r̄²]`
    P13x23,
    /// `r¹ ⊗ [r̄¹, r²] ⊗ r̄²`
    P23x12,
    /// `r¹ ⊗ r̄¹ ⊗ [r̄², r²]`
    P23x13,
    /// `[r¹, r̄¹] ⊗ r² ⊗ r̄²`
    P12x13,
    /// `[r¹, r̄¹] ⊗ r̄² ⊗ r²`
    P13x12,
}

pub fn product(alg: &LeibnizAlgebra, kind: Product, first: &Matrix, second: &Matrix) -> Tensor3 {
    let n = alg.dim();
    let c = alg.structure();
    let mut out = Tensor3::cube(alg.field(), n);
    for a in 0..n {
        for b in 0..n {
            let x = &first[(a, b)];
            if x.is_zero() {
                continue;
            }
            for p in 0..n {
                for q in 0..n {
                    let y = &second[(p, q)];
                    if y.is_zero() {
                        continue;
                    }
                    let w = x * y;
                    for m in 0..n {
                        let (coef, slot) = match kind {
                            Product::P12x23 => (&c[(b, p, m)], (a, m, q)),
                            Product::P13x23 => (&c[(b, q, m)], (a, p, m)),
                            Product::P23x12 => (&c[(p, b, m)], (a, m, q)),
                            Product::P23x13 => (&c[(q, b, m)], (a, p, m)),
                            Product::P12x13 => (&c[(a, p, m)], (m, b, q)),
                            Product::P13x12 => (&c[(a, p, m)], (m, q, b)),
                        };
                        if !coef.is_zero() {
                            out.add_at(slot, &(&w * coef));
                        }
                    }
                }
            }
        }
    }
    out
}

fn expect_square(what: &str, alg: &LeibnizAlgebra, m: &Matrix) -> Result<()> {
    expect_shape(what, m, alg.dim(), alg.dim())?;
    expect_field(alg.field(), m.field())
}

/// `r12r23 + r13r23 − r12^τ r13 − r13^τ r12`; zero exactly when `r` solves
/// the classical Leibniz Yang-Baxter equation. A `τ` on a factor
/// substitutes `rᵀ` for that factor.
pub fn clybe_defect(alg: &LeibnizAlgebra, r: &Matrix) -> Result<Tensor3> {
    expect_square("r", alg, r)?;
    let rt = r.transpose();
    Ok(product(alg, Product::P12x23, r, r)
        .add(&product(alg, Product::P13x23, r, r))
        .sub(&product(alg, Product::P12x13, &rt, r))
        .sub(&product(alg, Product::P13x12, &rt, r)))
}

/// `δ_r(x) = −r¹⊗[r²,x] + [r²,x]⊗r¹ + [x,r²]⊗r¹`.
pub fn coboundary_coproduct(alg: &LeibnizAlgebra, r: &Matrix) -> Result<Tensor3> {
    expect_square("r", alg, r)?;
    let n = alg.dim();
    let id = Matrix::identity(alg.field(), n);
    let rt = r.transpose();
    let mut d = Tensor3::cube(alg.field(), n);
    for i in 0..n {
        let x = alg.basis(i);
        let (rx, lx) = (alg.right(&x), alg.left(&x));
        let t = Matrix::tensor_apply(&rx.add(&lx), &id, &rt).sub(&Matrix::tensor_apply(&id, &rx, r));
        for j in 0..n {
            for k in 0..n {
                d[(i, j, k)] = t[(j, k)].clone();
            }
        }
    }
    Ok(d)
}

/// The three conditions under which `δ_r` makes `g` a Leibniz bialgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryConditions {
    /// `(R_x⊗R_y)(rᵀ − r) = 0`
    pub right_symmetry: Verdict,
    /// `(L_x⊗R_y + R_y⊗L_x + L_y⊗L_x)(rᵀ − r) = 0`
    pub mixed_symmetry: Verdict,
    /// The cubic condition built from the τ-decorated products.
    pub cubic: Verdict,
}

impl CoboundaryConditions {
    pub fn flags(&self) -> [bool; 3] {
        [
            self.right_symmetry.holds(),
            self.mixed_symmetry.holds(),
            self.cubic.holds(),
        ]
    }

    pub fn all(&self) -> bool {
        self.flags().iter().all(|b| *b)
    }
}

pub fn check_coboundary_conditions(alg: &LeibnizAlgebra, r: &Matrix) -> Result<CoboundaryConditions> {
    expect_square("r", alg, r)?;
    let n = alg.dim();
    let field = alg.field();
    let id = Matrix::identity(field, n);
    let rt = r.transpose();
    let skew = rt.sub(r);
    let ta = Matrix::tensor_apply;
    let zero = Matrix::zeros(field, n, n);
    let pairs = || (0..n * n).map(move |t| (t / n, t % n));
    let right_symmetry = first_violation(pairs().map(|(i, j)| {
        let (x, y) = (alg.basis(i), alg.basis(j));
        compare_matrices(
            "right-symmetry",
            &[i, j],
            &ta(&alg.right(&x), &alg.right(&y), &skew),
            &zero,
        )
    }));
    let mixed_symmetry = first_violation(pairs().map(|(i, j)| {
        let (x, y) = (alg.basis(i), alg.basis(j));
        let (lx, ly, ry) = (alg.left(&x), alg.left(&y), alg.right(&y));
        let t = ta(&lx, &ry, &skew).add(&ta(&ry, &lx, &skew)).add(&ta(&ly, &lx, &skew));
        compare_matrices("mixed-symmetry", &[i, j], &t, &zero)
    }));
    let p = |kind, a: &Matrix, b: &Matrix| product(alg, kind, a, b);
    use Product::*;
    let middle = p(P12x23, r, &rt)
        .add(&p(P13x23, r, &rt))
        .sub(&p(P12x13, r, &rt))
        .sub(&p(P13x12, &rt, r));
    let last = p(P12x23, r, r)
        .add(&p(P13x23, r, r))
        .sub(&p(P12x13, &rt, r))
        .sub(&p(P13x12, &rt, &rt));
    let first = p(P23x13, &rt, r)
        .add(&p(P12x13, &rt, &rt))
        .sub(&p(P23x12, &rt, &rt))
        .sub(&p(P12x23, &rt, &rt));
    let cubic = first_violation((0..n).map(|i| {
        let x = alg.basis(i);
        let (rx, lx) = (alg.right(&x), alg.left(&x));
        let m = lx.add(&rx);
        let lhs = middle.apply3(&id, &m, &id);
        let rhs = last.apply3(&id, &id, &rx).add(&first.apply3(&m, &id, &id));
        compare("cubic", &[i], lhs.entries().to_vec(), rhs.entries().to_vec())
    }));
    Ok(CoboundaryConditions {
        right_symmetry,
        mixed_symmetry,
        cubic,
    })
}

/// The three parts of the S-admissible cLYBe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibleClybe {
    /// `clybe_defect = 0`
    pub clybe: bool,
    /// `(S⊗id − id⊗R)(r) = 0`, i.e. `S·r = r·Rᵀ`
    pub left: bool,
    /// `(id⊗S − R⊗id)(r) = 0`, i.e. `r·Sᵀ = R·r`
    pub right: bool,
}

impl AdmissibleClybe {
    pub fn all(&self) -> bool {
        self.clybe && self.left && self.right
    }
}

pub fn check_admissible_clybe(ctx: &ReynoldsContext, s: &Matrix, r: &Matrix) -> Result<AdmissibleClybe> {
    let alg = ctx.alg();
    expect_square("S", alg, s)?;
    expect_square("r", alg, r)?;
    let op = ctx.op();
    Ok(AdmissibleClybe {
        clybe: clybe_defect(alg, r)?.is_zero(),
        left: s.mul(r) == r.mul(&op.transpose()),
        right: r.mul(&s.transpose()) == op.mul(r),
    })
}

/// The tensor forms of the Reynolds-coalgebra condition and the two
/// operator compatibilities, specialised to `δ_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorAdmissibility {
    pub coalgebra: Verdict,
    pub right: Verdict,
    pub left: Verdict,
}

impl TensorAdmissibility {
    pub fn flags(&self) -> [bool; 3] {
        [self.coalgebra.holds(), self.right.holds(), self.left.holds()]
    }
}

/// Evaluates the three conditions per basis element `x` by composing the
/// operators directly on the r-matrix. Requires `S` adjoint admissible.
pub fn check_tensor_admissibility(ctx: &ReynoldsContext, s: &Matrix, r: &Matrix) -> Result<TensorAdmissibility> {
    let alg = ctx.alg();
    expect_square("S", alg, s)?;
    expect_square("r", alg, r)?;
    if let Verdict::Violated(w) = check_adjoint_admissible(ctx, s)? {
        return Err(Error::PreconditionFailed(format!(
            "S is not adjoint admissible: {} fails at {:?}",
            w.identity, w.at
        )));
    }
    let n = alg.dim();
    let (op, lambda) = (ctx.op(), ctx.lambda());
    let id = Matrix::identity(alg.field(), n);
    let zero = Matrix::zeros(alg.field(), n, n);
    let ta = Matrix::tensor_apply;
    let rt = r.transpose();
    // (S⊗id − id⊗R)(t) and (id⊗S − R⊗id)(t)
    let s_left = |t: &Matrix| ta(s, &id, t).sub(&ta(&id, op, t));
    let s_right = |t: &Matrix| ta(&id, s, t).sub(&ta(op, &id, t));
    let lin = |terms: &[(&Scalar, Matrix)]| terms.iter().fold(zero.clone(), |acc, (c, m)| acc.add(&m.scale(c)));
    let one = alg.field().one();
    let minus = -&one;
    let neg_lambda = -lambda;
    let per_x = |f: &dyn Fn(&[Scalar]) -> Matrix, name: &'static str| {
        first_violation((0..n).map(|i| compare_matrices(name, &[i], &f(&alg.basis(i)), &zero)))
    };

    let coalgebra = per_x(
        &|x| {
            let sx = s.apply(x);
            let (r_sx, l_sx, r_x, l_x) = (alg.right(&sx), alg.left(&sx), alg.right(x), alg.left(x));
            let a = lin(&[
                (&one, r_sx.clone()),
                (&one, l_sx.clone()),
                (&minus, s.mul(&r_x)),
                (&minus, s.mul(&l_x)),
                (&neg_lambda, s.mul(&r_sx)),
                (&neg_lambda, s.mul(&l_sx)),
            ]);
            let b = lin(&[(&one, r_sx.clone()), (&neg_lambda, s.mul(&r_sx)), (&minus, s.mul(&r_x))]);
            let u = ta(op, &id, &rt).sub(&ta(&id, s, &rt));
            ta(&a, &id, &u).add(&ta(&id, &b, &s_left(r)))
        },
        "tensor-coalgebra",
    );
    let right = per_x(
        &|x| {
            let rx = op.apply(x);
            let (r_rx, l_rx, r_x, l_x) = (alg.right(&rx), alg.left(&rx), alg.right(x), alg.left(x));
            let b = lin(&[(&one, r_rx.clone()), (&minus, op.mul(&r_x)), (lambda, op.mul(&r_rx))]);
            let a = lin(&[
                (lambda, s.mul(&r_rx)),
                (lambda, s.mul(&l_rx)),
                (&minus, s.mul(&r_x)),
                (&minus, r_rx.clone()),
                (&minus, l_rx.clone()),
                (&minus, s.mul(&l_x)),
            ]);
            ta(&id, &b, &s_left(r)).add(&ta(&a, &id, &s_left(&rt)))
        },
        "tensor-right",
    );
    let left = per_x(
        &|x| {
            let rx = op.apply(x);
            let (r_rx, l_rx, r_x, l_x) = (alg.right(&rx), alg.left(&rx), alg.right(x), alg.left(x));
            let b = lin(&[(&one, r_rx.clone()), (&one, s.mul(&r_x)), (&neg_lambda, s.mul(&r_rx))]);
            let a = lin(&[
                (&one, op.mul(&l_x)),
                (&one, op.mul(&r_x)),
                (&minus, r_rx.clone()),
                (&minus, l_rx.clone()),
                (&neg_lambda, op.mul(&r_rx)),
                (&neg_lambda, op.mul(&l_rx)),
            ]);
            ta(&id, &b, &s_right(r)).add(&ta(&a, &id, &s_right(&rt)))
        },
        "tensor-left",
    );
    Ok(TensorAdmissibility { coalgebra, right, left })
}

/// `r♯(e^j) = Σ_k r[j][k] e_k` as a matrix (the transpose of `r`).
pub fn r_sharp(r: &Matrix) -> Matrix {
    r.transpose()
}

pub fn is_nondegenerate(r: &Matrix) -> bool {
    r.is_square() && r.rank() == r.rows()
}

/// How far a map `T: V → g` is from being an O-operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OLevel {
    None,
    /// `[Tu,Tv] = T(ρL(Tu)v + ρR(Tv)u)` and `RT = Tα`.
    Weak,
    /// Weak, and `(V, ρL, ρR, α)` is a Reynolds representation.
    Full,
}

fn expect_o_shapes(t: &Matrix, rep: &Representation, ctx: &ReynoldsContext, alpha: &Matrix) -> Result<()> {
    expect_shape("T", t, ctx.dim(), rep.vdim())?;
    expect_shape("alpha", alpha, rep.vdim(), rep.vdim())?;
    expect_field(ctx.field(), t.field())?;
    expect_field(ctx.field(), alpha.field())?;
    if rep.alg() != ctx.alg() {
        return Err(Error::DimensionMismatch(
            "representation and operator live on different algebras".into(),
        ));
    }
    Ok(())
}

/// The O-operator identities as a verdict; the level is derived from it.
pub fn o_operator_verdict(t: &Matrix, rep: &Representation, ctx: &ReynoldsContext, alpha: &Matrix) -> Result<Verdict> {
    expect_o_shapes(t, rep, ctx, alpha)?;
    let alg = ctx.alg();
    let m = rep.vdim();
    let field = ctx.field();
    let bracket = first_violation((0..m * m).map(|k| {
        let (i, j) = (k / m, k % m);
        let (u, v) = (
            crate::linalg::basis_vector(field, m, i),
            crate::linalg::basis_vector(field, m, j),
        );
        let (tu, tv) = (t.apply(&u), t.apply(&v));
        let lhs = alg.bracket(&tu, &tv);
        let rhs = t.apply(&vadd(&rep.left(&tu).apply(&v), &rep.right(&tv).apply(&u)));
        compare("o-operator", &[i, j], lhs, rhs)
    }));
    if !bracket.holds() {
        return Ok(bracket);
    }
    Ok(
        match compare_matrices("o-operator-intertwine", &[], &ctx.op().mul(t), &t.mul(alpha)) {
            None => Verdict::Holds,
            Some(w) => Verdict::Violated(w),
        },
    )
}

pub fn check_o_operator(t: &Matrix, rep: &Representation, ctx: &ReynoldsContext, alpha: &Matrix) -> Result<OLevel> {
    if !o_operator_verdict(t, rep, ctx, alpha)?.holds() {
        return Ok(OLevel::None);
    }
    if check_reynolds_representation(rep, ctx, alpha)?.holds() {
        Ok(OLevel::Full)
    } else {
        Ok(OLevel::Weak)
    }
}

/// The data obtained by lifting `T` to `g ⋉ V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    /// `g ⋉ V*` with the operator `R + βᵀ`.
    pub ctx: ReynoldsContext,
    /// `T + τ(T)`
    pub r: Matrix,
    /// `S + αᵀ`
    pub s: Matrix,
}

/// Builds `g ⋉ V*` with `R + βᵀ`, the symmetric `r = T + τ(T)` and `S + αᵀ`.
pub fn lift_o_operator(
    t: &Matrix,
    rep: &Representation,
    ctx: &ReynoldsContext,
    alpha: &Matrix,
    beta: &Matrix,
    s: &Matrix,
) -> Result<Lift> {
    expect_o_shapes(t, rep, ctx, alpha)?;
    expect_square("S", ctx.alg(), s)?;
    if let Verdict::Violated(w) = check_beta_admissible(rep, ctx, beta)? {
        return Err(Error::PreconditionFailed(format!(
            "beta is not admissible: {} fails at {:?}",
            w.identity, w.at
        )));
    }
    let dual = dual_representation(rep);
    let (alg, op) = semidirect_product(&dual, ctx, &beta.transpose())?;
    let lifted = ReynoldsContext::new(alg, ctx.lambda().clone(), op)?;
    let (n, m) = (ctx.dim(), rep.vdim());
    let field = ctx.field();
    let r = Matrix::block(
        &Matrix::zeros(field, n, n),
        t,
        &t.transpose(),
        &Matrix::zeros(field, m, m),
    );
    Ok(Lift {
        ctx: lifted,
        r,
        s: Matrix::block_diag(s, &alpha.transpose()),
    })
}

/// `βρ(Sx) + ρ(Sx)α = βρ(x)α + λβρ(Sx)α` for both actions, on every basis
/// element `x` and basis vector `v`.
pub fn check_cross_admissibility(
    ctx: &ReynoldsContext,
    s: &Matrix,
    rep: &Representation,
    alpha: &Matrix,
    beta: &Matrix,
) -> Result<Verdict> {
    expect_square("S", ctx.alg(), s)?;
    let m = rep.vdim();
    expect_shape("alpha", alpha, m, m)?;
    expect_shape("beta", beta, m, m)?;
    let lambda = ctx.lambda();
    let alg = ctx.alg();
    let side = |rho_x: &Matrix, rho_sx: &Matrix| {
        let lhs = beta.mul(rho_sx).add(&rho_sx.mul(alpha));
        let rhs = beta
            .mul(rho_x)
            .mul(alpha)
            .add(&beta.mul(rho_sx).mul(alpha).scale(lambda));
        (lhs, rhs)
    };
    Ok(first_violation((0..alg.dim()).map(|i| {
        let x = alg.basis(i);
        let sx = s.apply(&x);
        let (l1, r1) = side(&rep.left(&x), &rep.left(&sx));
        let (l2, r2) = side(&rep.right(&x), &rep.right(&sx));
        columns("cross-admissible-left", i, &l1, &r1).or_else(|| columns("cross-admissible-right", i, &l2, &r2))
    })))
}

fn columns(identity: &'static str, i: usize, lhs: &Matrix, rhs: &Matrix) -> Option<crate::algebra::Witness> {
    (0..lhs.cols()).find_map(|v| compare(identity, &[i, v], lhs.column(v), rhs.column(v)))
}

/// The polynomial `Π` used to derive `β = Π(α)` and `S = Π(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiForm {
    /// `Π(x) = x`
    PlusX,
    /// `Π(x) = −x`
    MinusX,
    /// `Π(x) = −x + θ`
    MinusXPlusTheta(Scalar),
    /// `Π(x) = θx⁻¹`
    ThetaXInverse(Scalar),
}

impl PiForm {
    pub fn theta(&self) -> Option<&Scalar> {
        match self {
            PiForm::PlusX | PiForm::MinusX => None,
            PiForm::MinusXPlusTheta(t) | PiForm::ThetaXInverse(t) => Some(t),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.theta() {
            Some(t) if t.is_zero() => Err(Error::PreconditionFailed("theta must be nonzero".into())),
            _ => Ok(()),
        }
    }

    /// `Π(M)`.
    pub fn apply(&self, m: &Matrix) -> Result<Matrix> {
        self.validate()?;
        Ok(match self {
            PiForm::PlusX => m.clone(),
            PiForm::MinusX => m.neg(),
            PiForm::MinusXPlusTheta(t) => Matrix::scalar(m.field(), m.rows(), t).sub(m),
            PiForm::ThetaXInverse(t) => m.inverse()?.scale(t),
        })
    }
}

/// The Reynolds-representation identities plus the equations attached to
/// the chosen `Π`.
pub fn check_pi_admissible(
    ctx: &ReynoldsContext,
    rep: &Representation,
    alpha: &Matrix,
    pi: &PiForm,
) -> Result<Verdict> {
    pi.validate()?;
    if let PiForm::ThetaXInverse(_) = pi {
        ctx.op().inverse()?;
        alpha.inverse()?;
    }
    let base = check_reynolds_representation(rep, ctx, alpha)?;
    if !base.holds() {
        return Ok(base);
    }
    let alg = ctx.alg();
    let n = alg.dim();
    let m = rep.vdim();
    let (r, lambda) = (ctx.op(), ctx.lambda());
    let sc = crate::linalg::vscale;
    let sub = crate::linalg::vsub;
    let pairs = || (0..n * n).map(move |t| (t / n, t % n));
    let actions = |i: usize| {
        let x = alg.basis(i);
        let rx = r.apply(&x);
        [
            (rep.left(&x), rep.left(&rx), "left"),
            (rep.right(&x), rep.right(&rx), "right"),
        ]
    };
    let id_v = Matrix::identity(ctx.field(), m);
    match pi {
        PiForm::MinusX => Ok(Verdict::Holds),
        PiForm::PlusX => {
            // R[x,Ry] = R[Rx,y] = λR[Rx,Ry] and the module analogues.
            let alg_part = first_violation(pairs().map(|(i, j)| {
                let (x, y) = (alg.basis(i), alg.basis(j));
                let (rx, ry) = (r.apply(&x), r.apply(&y));
                let a = r.apply(&alg.bracket(&x, &ry));
                let b = r.apply(&alg.bracket(&rx, &y));
                let c = sc(lambda, &r.apply(&alg.bracket(&rx, &ry)));
                compare("plus-x-algebra", &[i, j], a, b.clone()).or_else(|| compare("plus-x-algebra", &[i, j], b, c))
            }));
            if !alg_part.holds() {
                return Ok(alg_part);
            }
            Ok(first_violation((0..n).map(|i| {
                actions(i).into_iter().find_map(|(rho_x, rho_rx, side)| {
                    let name = if side == "left" { "plus-x-left" } else { "plus-x-right" };
                    let a = alpha.mul(&rho_rx);
                    let b = alpha.mul(&rho_x).mul(alpha);
                    let c = alpha.mul(&rho_rx).mul(alpha).scale(lambda);
                    columns(name, i, &a, &b).or_else(|| columns(name, i, &b, &c))
                })
            })))
        }
        PiForm::MinusXPlusTheta(theta) => {
            let alg_part = first_violation(pairs().map(|(i, j)| {
                let (x, y) = (alg.basis(i), alg.basis(j));
                let (rx, ry) = (r.apply(&x), r.apply(&y));
                let xy = alg.bracket(&x, &y);
                let rxry = alg.bracket(&rx, &ry);
                let x_ry = alg.bracket(&x, &ry);
                let rx_y = alg.bracket(&rx, &y);
                // θ[x,y] − [x,Ry] − R[x,y] = λ(θ[Rx,y] − [Rx,Ry] − R[Rx,y])
                let l1 = sub(&sub(&sc(theta, &xy), &x_ry), &r.apply(&xy));
                let r1 = sc(lambda, &sub(&sub(&sc(theta, &rx_y), &rxry), &r.apply(&rx_y)));
                // θ[x,y] − [Rx,y] − R[x,y] = λ(θ[x,Ry] − [Rx,Ry] − R[x,Ry])
                let l2 = sub(&sub(&sc(theta, &xy), &rx_y), &r.apply(&xy));
                let r2 = sc(lambda, &sub(&sub(&sc(theta, &x_ry), &rxry), &r.apply(&x_ry)));
                compare("shifted-algebra-left", &[i, j], l1, r1)
                    .or_else(|| compare("shifted-algebra-right", &[i, j], l2, r2))
            }));
            if !alg_part.holds() {
                return Ok(alg_part);
            }
            let th = id_v.scale(theta);
            Ok(first_violation((0..n).map(|i| {
                actions(i).into_iter().find_map(|(rho_x, rho_rx, side)| {
                    let (n1, n2) = if side == "left" {
                        ("shifted-module-left", "shifted-unit-left")
                    } else {
                        ("shifted-module-right", "shifted-unit-right")
                    };
                    // θρ(x) − ρ(x)α − αρ(x) = λ(θρ(Rx) − ρ(Rx)α − αρ(Rx))
                    let l1 = th.mul(&rho_x).sub(&rho_x.mul(alpha)).sub(&alpha.mul(&rho_x));
                    let r1 = th
                        .mul(&rho_rx)
                        .sub(&rho_rx.mul(alpha))
                        .sub(&alpha.mul(&rho_rx))
                        .scale(lambda);
                    // θρ(x) − ρ(Rx) − αρ(x) = λ(θρ(x)α − ρ(Rx)α − αρ(x)α)
                    let l2 = th.mul(&rho_x).sub(&rho_rx).sub(&alpha.mul(&rho_x));
                    let r2 = th
                        .mul(&rho_x)
                        .sub(&rho_rx)
                        .sub(&alpha.mul(&rho_x))
                        .mul(alpha)
                        .scale(lambda);
                    columns(n1, i, &l1, &r1).or_else(|| columns(n2, i, &l2, &r2))
                })
            })))
        }
        PiForm::ThetaXInverse(theta) => {
            let alg_part = first_violation(pairs().map(|(i, j)| {
                let (x, y) = (alg.basis(i), alg.basis(j));
                let (rx, ry) = (r.apply(&x), r.apply(&y));
                let xy = alg.bracket(&x, &y);
                let r_rxry = r.apply(&alg.bracket(&rx, &ry));
                // θ[x,y] − R[x,Ry] = λ(θ[Rx,y] − R[Rx,Ry])
                let l1 = sub(&sc(theta, &xy), &r.apply(&alg.bracket(&x, &ry)));
                let r1 = sc(lambda, &sub(&sc(theta, &alg.bracket(&rx, &y)), &r_rxry));
                // θ[x,y] − R[Rx,y] = λ(θ[x,Ry] − R[Rx,Ry])
                let l2 = sub(&sc(theta, &xy), &r.apply(&alg.bracket(&rx, &y)));
                let r2 = sc(lambda, &sub(&sc(theta, &alg.bracket(&x, &ry)), &r_rxry));
                compare("inverse-algebra-left", &[i, j], l1, r1)
                    .or_else(|| compare("inverse-algebra-right", &[i, j], l2, r2))
            }));
            if !alg_part.holds() {
                return Ok(alg_part);
            }
            Ok(first_violation((0..n).map(|i| {
                actions(i).into_iter().find_map(|(rho_x, rho_rx, side)| {
                    let (n1, n2) = if side == "left" {
                        ("inverse-module-left", "inverse-unit-left")
                    } else {
                        ("inverse-module-right", "inverse-unit-right")
                    };
                    // θρ(x) − αρ(x)α = λ(θρ(Rx) − αρ(Rx)α)
                    let l1 = rho_x.scale(theta).sub(&alpha.mul(&rho_x).mul(alpha));
                    let r1 = rho_rx.scale(theta).sub(&alpha.mul(&rho_rx).mul(alpha)).scale(lambda);
                    // θρ(x) − αρ(Rx) = λ(θρ(x)α − αρ(Rx)α)
                    let l2 = rho_x.scale(theta).sub(&alpha.mul(&rho_rx));
                    let r2 = rho_x
                        .scale(theta)
                        .mul(alpha)
                        .sub(&alpha.mul(&rho_rx).mul(alpha))
                        .scale(lambda);
                    columns(n1, i, &l1, &r1).or_else(|| columns(n2, i, &l2, &r2))
                })
            })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{builtin_algebra, BuiltinAlgebra};
    use crate::field::FieldSpec;
    use crate::rep::adjoint_representation;

    fn a1_r(q: FieldSpec, eta: i64, gamma: i64) -> Matrix {
        Matrix::from_ints(q, &[&[eta, gamma], &[gamma, 0]])
    }

    #[test]
    fn clybe_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        assert!(clybe_defect(&a1, &a1_r(q, 1, 1)).unwrap().is_zero());
        assert!(clybe_defect(&a1, &Matrix::zeros(q, 2, 2)).unwrap().is_zero());
        let e22 = Matrix::from_ints(q, &[&[0, 0], &[0, 1]]);
        let d = clybe_defect(&a1, &e22).unwrap();
        let mut expect = Tensor3::cube(q, 2);
        expect[(1, 0, 1)] = q.one();
        expect[(1, 1, 0)] = q.one();
        expect[(0, 1, 1)] = q.int(-2);
        assert_eq!(d, expect);
    }

    #[test]
    fn coboundary_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let d = coboundary_coproduct(&a1, &a1_r(q, 1, 1)).unwrap();
        let mut expect = Tensor3::cube(q, 2);
        expect[(1, 0, 0)] = q.one();
        assert_eq!(d, expect);
        assert!(coboundary_coproduct(&a1, &Matrix::zeros(q, 2, 2)).unwrap().is_zero());

        let a2 = builtin_algebra(BuiltinAlgebra::A2, q);
        let r = Matrix::from_ints(q, &[&[1, -1], &[-1, 1]]);
        let d = coboundary_coproduct(&a2, &r).unwrap();
        for i in 0..2 {
            assert_eq!(d[(i, 0, 1)], q.one());
            assert_eq!(d[(i, 1, 0)], q.int(-1));
            assert!(d[(i, 0, 0)].is_zero() && d[(i, 1, 1)].is_zero());
        }
    }

    #[test]
    fn coboundary_conditions_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        assert_eq!(
            check_coboundary_conditions(&a1, &a1_r(q, 1, 1)).unwrap().flags(),
            [true; 3]
        );
        let e22 = Matrix::from_ints(q, &[&[0, 0], &[0, 1]]);
        let c = check_coboundary_conditions(&a1, &e22).unwrap();
        assert!(c.right_symmetry.holds() && c.mixed_symmetry.holds());
        assert!(!c.cubic.holds());
    }

    #[test]
    fn admissible_clybe_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let (k1, l1, eta, gamma) = (3, 2, 5, 7);
        let r = a1_r(q, eta, gamma);
        let op = Matrix::from_ints(q, &[&[k1, l1], &[0, 0]]);
        let s01 = &q.int(l1) + &q.ratio(k1 * eta, gamma).unwrap();
        let s = Matrix::from_rows(q, vec![vec![q.zero(), s01], vec![q.zero(), q.int(k1)]]).unwrap();
        let ctx = ReynoldsContext::new(a1, q.int(2), op.clone()).unwrap();
        let res = check_admissible_clybe(&ctx, &s, &r).unwrap();
        assert!(res.all());
        assert_eq!(
            s.mul(&r),
            Matrix::from_ints(q, &[&[l1 * gamma + k1 * eta, 0], &[k1 * gamma, 0]])
        );
        let twice = check_admissible_clybe(&ctx, &s.scale(&q.int(2)), &r).unwrap();
        assert!(!twice.left);
        let zero = check_admissible_clybe(&ctx, &s, &Matrix::zeros(q, 2, 2)).unwrap();
        assert!(zero.all());
    }

    #[test]
    fn tensor_admissibility_requires_admissible_s() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let op = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let ctx = ReynoldsContext::new(a1, q.one(), op.clone()).unwrap();
        let r = a1_r(q, 1, 1);
        let s = Matrix::from_ints(q, &[&[0, 2], &[0, 1]]);
        assert_eq!(check_tensor_admissibility(&ctx, &s, &r).unwrap().flags(), [true; 3]);
        let zero = Matrix::zeros(q, 2, 2);
        assert_eq!(
            check_tensor_admissibility(&ctx, &op.neg(), &zero).unwrap().flags(),
            [true; 3]
        );
        let bad = Matrix::identity(q, 2);
        assert!(matches!(
            check_tensor_admissibility(&ctx, &bad, &r),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn sharp_examples() {
        let q = FieldSpec::Rational;
        assert_eq!(r_sharp(&Matrix::identity(q, 3)), Matrix::identity(q, 3));
        assert!(is_nondegenerate(&r_sharp(&a1_r(q, 4, 1))));
        assert!(!is_nondegenerate(&r_sharp(&a1_r(q, 4, 0))));
        let e12 = Matrix::from_ints(q, &[&[0, 1], &[0, 0]]);
        assert_eq!(r_sharp(&e12).rank(), 1);
    }

    #[test]
    fn identity_is_o_operator_on_left_module() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let op = Matrix::from_ints(q, &[&[1, 3], &[0, 1]]);
        let lambda = q.one();
        assert!(crate::algebra::check_reynolds(&a1, &lambda, &op).unwrap().holds());
        let ctx = ReynoldsContext::new(a1.clone(), lambda, op.clone()).unwrap();
        let adj = adjoint_representation(&a1);
        let left_only =
            Representation::new(a1.clone(), 2, adj.rho_l().to_vec(), vec![Matrix::zeros(q, 2, 2); 2]).unwrap();
        let id = Matrix::identity(q, 2);
        assert_eq!(check_o_operator(&id, &left_only, &ctx, &op).unwrap(), OLevel::Full);
        assert!(
            check_o_operator(&Matrix::zeros(q, 2, 2), &left_only, &ctx, &Matrix::identity(q, 2)).unwrap()
                >= OLevel::Weak
        );
    }

    #[test]
    fn sharp_is_weak_o_operator() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let op = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let s = Matrix::from_ints(q, &[&[0, 2], &[0, 1]]);
        let ctx = ReynoldsContext::new(a1.clone(), q.one(), op).unwrap();
        let dual = dual_representation(&adjoint_representation(&a1));
        let level = check_o_operator(&r_sharp(&a1_r(q, 1, 1)), &dual, &ctx, &s.transpose()).unwrap();
        assert!(level >= OLevel::Weak);
    }

    #[test]
    fn lift_of_zero_and_identity() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let op = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let ctx = ReynoldsContext::new(a1.clone(), q.one(), op.clone()).unwrap();
        let adj = adjoint_representation(&a1);
        let left_only = Representation::new(a1, 2, adj.rho_l().to_vec(), vec![Matrix::zeros(q, 2, 2); 2]).unwrap();
        let minus = op.neg();
        let zero = Matrix::zeros(q, 2, 2);
        let lift = lift_o_operator(&zero, &left_only, &ctx, &op, &minus, &minus).unwrap();
        assert!(lift.r.is_zero());
        assert!(check_admissible_clybe(&lift.ctx, &lift.s, &lift.r).unwrap().all());
        let id = Matrix::identity(q, 2);
        let lift = lift_o_operator(&id, &left_only, &ctx, &op, &minus, &minus).unwrap();
        assert_eq!(lift.ctx.dim(), 4);
        assert!(lift.r.is_symmetric());
        assert!(check_admissible_clybe(&lift.ctx, &lift.s, &lift.r).unwrap().all());
    }

    #[test]
    fn cross_admissibility_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let op = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let ctx = ReynoldsContext::new(a1.clone(), q.one(), op.clone()).unwrap();
        let adj = adjoint_representation(&a1);
        let zero = Matrix::zeros(q, 2, 2);
        assert!(check_cross_admissibility(&ctx, &op.neg(), &adj, &op, &zero)
            .unwrap()
            .holds());
        assert!(check_cross_admissibility(&ctx, &op.neg(), &adj, &op, &op.neg())
            .unwrap()
            .holds());
    }

    #[test]
    fn pi_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let adj = adjoint_representation(&a1);
        let zero = Matrix::zeros(q, 2, 2);
        let ctx0 = ReynoldsContext::new(a1.clone(), q.one(), zero.clone()).unwrap();
        assert!(check_pi_admissible(&ctx0, &adj, &zero, &PiForm::PlusX).unwrap().holds());
        let v = check_pi_admissible(&ctx0, &adj, &zero, &PiForm::MinusXPlusTheta(q.one())).unwrap();
        assert_eq!(v.witness().unwrap().at, vec![1, 1]);
        let op = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let ctx = ReynoldsContext::new(a1, q.one(), op.clone()).unwrap();
        assert!(check_pi_admissible(&ctx, &adj, &op, &PiForm::MinusX).unwrap().holds());
        assert_eq!(
            check_pi_admissible(&ctx, &adj, &op, &PiForm::ThetaXInverse(q.one())),
            Err(Error::NotInvertible)
        );
        assert!(PiForm::MinusXPlusTheta(q.zero()).validate().is_err());
    }
}

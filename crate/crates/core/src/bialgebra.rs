//! Leibniz coalgebras, Reynolds Leibniz bialgebras, matched pairs, the
//! double `g ⊕ g*` and Manin triples with the canonical skew form.

use crate::algebra::{
    check_dim, check_leibniz, check_reynolds, compare, compare_matrices, expect_field, expect_shape, first_violation,
    LeibnizAlgebra, ReynoldsContext, Verdict, Witness,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Tensor3};
use crate::rep::{
    adjoint_admissible_raw, adjoint_representation, check_representation, check_reynolds_representation,
    dual_representation, Representation,
};

/// `δ(x)` as an `n × n` matrix of coefficients of `e_j ⊗ e_k`.
pub fn coproduct_of(d: &Tensor3, x: &[Scalar]) -> Matrix {
    let [n, a, b] = d.dims();
    let mut out = Matrix::zeros(d.field(), a, b);
    for (i, s) in x.iter().enumerate().take(n) {
        if !s.is_zero() {
            out = out.add(&d.slice(i).scale(s));
        }
    }
    out
}

fn expect_cube(what: &str, d: &Tensor3, n: usize) -> Result<()> {
    if d.dims() != [n, n, n] {
        return Err(Error::DimensionMismatch(format!(
            "{what} has dimensions {:?}, expected {n} in every slot",
            d.dims()
        )));
    }
    Ok(())
}

fn square_cube(d: &Tensor3) -> Result<usize> {
    let [n, a, b] = d.dims();
    if n != a || a != b {
        return Err(Error::DimensionMismatch(format!(
            "coproduct tensor has unequal dimensions {:?}",
            d.dims()
        )));
    }
    check_dim(n)?;
    Ok(n)
}

fn basis(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    crate::linalg::basis_vector(field, n, i)
}

/// `(id⊗δ)δ = (δ⊗id)δ + (τ⊗id)(id⊗δ)δ` on every basis element.
pub fn check_coleibniz(d: &Tensor3) -> Result<Verdict> {
    let n = square_cube(d)?;
    let field = d.field();
    let slices: Vec<Matrix> = (0..n).map(|i| d.slice(i)).collect();
    Ok(first_violation((0..n).map(|i| {
        let dx = &slices[i];
        let mut lhs = Tensor3::cube(field, n);
        let mut rhs = Tensor3::cube(field, n);
        for j in 0..n {
            for k in 0..n {
                let w = &dx[(j, k)];
                if w.is_zero() {
                    continue;
                }
                for a in 0..n {
                    for b in 0..n {
                        let dk = &slices[k][(a, b)];
                        if !dk.is_zero() {
                            let t = w * dk;
                            lhs.add_at((j, a, b), &t);
                            rhs.add_at((a, j, b), &t);
                        }
                        let dj = &slices[j][(a, b)];
                        if !dj.is_zero() {
                            rhs.add_at((a, b, k), &(w * dj));
                        }
                    }
                }
            }
        }
        compare("co-leibniz", &[i], lhs.entries().to_vec(), rhs.entries().to_vec())
    })))
}

/// Structure constants of `g*`: `[e^j, e^k] = Σ_i d[i][j][k] e^i`.
pub fn dual_bracket(d: &Tensor3) -> Tensor3 {
    let [n, a, b] = d.dims();
    let mut c = Tensor3::zeros(d.field(), [a, b, n]);
    for (i, j, k, v) in d.nonzero() {
        c[(j, k, i)] = v.clone();
    }
    c
}

/// A coproduct satisfying the co-Leibniz identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    d: Tensor3,
}

impl Coproduct {
    pub fn new(d: Tensor3) -> Result<Coproduct> {
        match check_coleibniz(&d)? {
            Verdict::Holds => Ok(Coproduct { d }),
            Verdict::Violated(w) => Err(Error::NotCoLeibniz(w.at[0])),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Coproduct {
        Coproduct {
            d: Tensor3::cube(field, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.d.dims()[0]
    }

    pub fn field(&self) -> FieldSpec {
        self.d.field()
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.d
    }

    pub fn apply(&self, x: &[Scalar]) -> Matrix {
        coproduct_of(&self.d, x)
    }

    /// `g*` with the transposed structure constants.
    pub fn dual_algebra(&self) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(dual_bracket(&self.d)).map_err(|_| Error::DualNotLeibniz)
    }
}

/// The two compatibility conditions between a bracket and a coproduct.
pub(crate) fn bialgebra_compatibility(alg: &LeibnizAlgebra, d: &Tensor3) -> Result<Verdict> {
    let n = alg.dim();
    expect_cube("coproduct", d, n)?;
    expect_field(alg.field(), d.field())?;
    let id = Matrix::identity(alg.field(), n);
    let ta = Matrix::tensor_apply;
    Ok(first_violation((0..n * n).map(|t| {
        let (i, j) = (t / n, t % n);
        let (x, y) = (alg.basis(i), alg.basis(j));
        let (rx, ry, lx, ly) = (alg.right(&x), alg.right(&y), alg.left(&x), alg.left(&y));
        let (dx, dy) = (coproduct_of(d, &x), coproduct_of(d, &y));
        let first = compare_matrices(
            "bialgebra-symmetry",
            &[i, j],
            &ta(&rx, &id, &dy),
            &ta(&ry, &id, &dx).transpose(),
        );
        first.or_else(|| {
            let sym = dx.add(&dx.transpose());
            let lhs = coproduct_of(d, &alg.bracket(&x, &y));
            let rhs = ta(&id, &ry, &sym)
                .sub(&ta(&ly, &id, &sym))
                .sub(&ta(&ry, &id, &sym))
                .add(&ta(&id, &lx, &dy))
                .add(&ta(&lx, &id, &dy));
            compare_matrices("bialgebra-bracket", &[i, j], &lhs, &rhs)
        })
    })))
}

/// The compatibility conditions making `(g, [,], δ)` a Leibniz bialgebra.
pub fn check_leibniz_bialgebra(alg: &LeibnizAlgebra, delta: &Coproduct) -> Result<Verdict> {
    bialgebra_compatibility(alg, &delta.d)
}

fn reynolds_coalgebra_raw(d: &Tensor3, lambda: &Scalar, s: &Matrix) -> Result<Verdict> {
    let n = square_cube(d)?;
    expect_shape("S", s, n, n)?;
    expect_field(d.field(), s.field())?;
    expect_field(d.field(), lambda.field())?;
    let id = Matrix::identity(d.field(), n);
    let ta = Matrix::tensor_apply;
    Ok(first_violation((0..n).map(|i| {
        let x = basis(d.field(), n, i);
        let dx = coproduct_of(d, &x);
        let dsx = coproduct_of(d, &s.apply(&x));
        let lhs = ta(s, s, &dx).add(&ta(s, s, &dsx).scale(lambda));
        let rhs = ta(s, &id, &dsx).add(&ta(&id, s, &dsx));
        compare_matrices("reynolds-coalgebra", &[i], &lhs, &rhs)
    })))
}

/// `(S⊗S)δ + λ(S⊗S)δS = (S⊗id)δS + (id⊗S)δS` on every basis element.
pub fn check_reynolds_coalgebra(delta: &Coproduct, lambda: &Scalar, s: &Matrix) -> Result<Verdict> {
    reynolds_coalgebra_raw(&delta.d, lambda, s)
}

/// `(id⊗R)δR + (S⊗R)δ = (S⊗id)δR + λ(S⊗R)δR` and
/// `(R⊗id)δR + (R⊗S)δ = (id⊗S)δR + λ(R⊗S)δR` on every basis element.
pub(crate) fn operator_compatibility(d: &Tensor3, lambda: &Scalar, r: &Matrix, s: &Matrix) -> Verdict {
    let n = d.dims()[0];
    let id = Matrix::identity(d.field(), n);
    let ta = Matrix::tensor_apply;
    first_violation((0..n).map(|i| {
        let x = basis(d.field(), n, i);
        let dx = coproduct_of(d, &x);
        let drx = coproduct_of(d, &r.apply(&x));
        let l1 = ta(&id, r, &drx).add(&ta(s, r, &dx));
        let r1 = ta(s, &id, &drx).add(&ta(s, r, &drx).scale(lambda));
        let l2 = ta(r, &id, &drx).add(&ta(r, s, &dx));
        let r2 = ta(&id, s, &drx).add(&ta(r, s, &drx).scale(lambda));
        compare_matrices("operator-compatibility-right", &[i], &l1, &r1)
            .or_else(|| compare_matrices("operator-compatibility-left", &[i], &l2, &r2))
    }))
}

/// `(g, [,], δ, R, S)` before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraBundle {
    pub alg: LeibnizAlgebra,
    pub delta: Tensor3,
    pub lambda: Scalar,
    pub r: Matrix,
    pub s: Matrix,
}

/// The five defining conditions of a Reynolds Leibniz bialgebra, each
/// evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraReport {
    pub leibniz_bialgebra: Verdict,
    pub reynolds_algebra: Verdict,
    pub reynolds_coalgebra: Verdict,
    pub adjoint_admissible: Verdict,
    pub operator_compatibility: Verdict,
}

impl BialgebraReport {
    pub fn items(&self) -> [&Verdict; 5] {
        [
            &self.leibniz_bialgebra,
            &self.reynolds_algebra,
            &self.reynolds_coalgebra,
            &self.adjoint_admissible,
            &self.operator_compatibility,
        ]
    }

    pub fn flags(&self) -> [bool; 5] {
        self.items().map(Verdict::holds)
    }

    pub fn ok(&self) -> bool {
        self.items().iter().all(|v| v.holds())
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.items().into_iter().find_map(Verdict::witness)
    }
}

pub fn check_reynolds_bialgebra(bundle: &BialgebraBundle) -> Result<BialgebraReport> {
    let BialgebraBundle {
        alg,
        delta,
        lambda,
        r,
        s,
    } = bundle;
    let n = alg.dim();
    expect_cube("coproduct", delta, n)?;
    expect_shape("R", r, n, n)?;
    expect_shape("S", s, n, n)?;
    for f in [delta.field(), lambda.field(), r.field(), s.field()] {
        expect_field(alg.field(), f)?;
    }
    let leibniz_bialgebra = Verdict::all([check_coleibniz(delta)?, bialgebra_compatibility(alg, delta)?]);
    let reynolds_algebra = check_reynolds(alg, lambda, r)?;
    let reynolds_coalgebra = reynolds_coalgebra_raw(delta, lambda, s)?;
    let adjoint_admissible = adjoint_admissible_raw(alg, lambda, r, s);
    let operator_compatibility = operator_compatibility(delta, lambda, r, s);
    Ok(BialgebraReport {
        leibniz_bialgebra,
        reynolds_algebra,
        reynolds_coalgebra,
        adjoint_admissible,
        operator_compatibility,
    })
}

impl BialgebraBundle {
    /// Returns the bundle when all five conditions hold.
    pub fn validate(self) -> Result<BialgebraBundle> {
        let report = check_reynolds_bialgebra(&self)?;
        match report.first_failure() {
            None => Ok(self),
            Some(w) => Err(Error::PreconditionFailed(format!(
                "not a Reynolds Leibniz bialgebra: {} fails at {:?}",
                w.identity, w.at
            ))),
        }
    }
}

/// The bracket on `g1 ⊕ g2` (basis of `g1` first) built from the two
/// brackets and the mutual actions:
/// `[x+u, y+v] = [x,y] + ρ2R(v)x + ρ2L(u)y + [u,v] + ρ1R(y)u + ρ1L(x)v`.
pub fn matched_bracket(
    c1: &Tensor3,
    c2: &Tensor3,
    rho1_l: &[Matrix],
    rho1_r: &[Matrix],
    rho2_l: &[Matrix],
    rho2_r: &[Matrix],
) -> Tensor3 {
    let (n1, n2) = (c1.dims()[0], c2.dims()[0]);
    let mut c = Tensor3::cube(c1.field(), n1 + n2);
    for (i, j, k, v) in c1.nonzero() {
        c[(i, j, k)] = v.clone();
    }
    for (a, b, k, v) in c2.nonzero() {
        c[(n1 + a, n1 + b, n1 + k)] = v.clone();
    }
    for i in 0..n1 {
        for a in 0..n2 {
            for k in 0..n1 {
                c.add_at((i, n1 + a, k), &rho2_r[a][(k, i)]);
                c.add_at((n1 + a, i, k), &rho2_l[a][(k, i)]);
            }
            for k in 0..n2 {
                c.add_at((i, n1 + a, n1 + k), &rho1_l[i][(k, a)]);
                c.add_at((n1 + a, i, n1 + k), &rho1_r[i][(k, a)]);
            }
        }
    }
    c
}

/// Outcome of a matched-pair check: the three defining sub-conditions and
/// the combined algebra when the sum is a Reynolds Leibniz algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPairReport {
    pub first_acts_on_second: bool,
    pub second_acts_on_first: bool,
    pub leibniz: Verdict,
    pub reynolds: Verdict,
    pub sum: Option<ReynoldsContext>,
}

impl MatchedPairReport {
    pub fn ok(&self) -> bool {
        self.sum.is_some()
    }
}

fn is_reynolds_rep(
    alg: &LeibnizAlgebra,
    ctx: &ReynoldsContext,
    vdim: usize,
    rho_l: &[Matrix],
    rho_r: &[Matrix],
    alpha: &Matrix,
) -> Result<bool> {
    if !check_representation(alg, vdim, rho_l, rho_r)?.holds() {
        return Ok(false);
    }
    let rep = Representation::new(alg.clone(), vdim, rho_l.to_vec(), rho_r.to_vec())?;
    Ok(check_reynolds_representation(&rep, ctx, alpha)?.holds())
}

/// Builds the sum bracket and block operator `R1 + R2` and reports whether
/// the result is a Reynolds Leibniz algebra.
pub fn check_matched_pair(
    ctx1: &ReynoldsContext,
    ctx2: &ReynoldsContext,
    rho1_l: &[Matrix],
    rho1_r: &[Matrix],
    rho2_l: &[Matrix],
    rho2_r: &[Matrix],
) -> Result<MatchedPairReport> {
    let (n1, n2) = (ctx1.dim(), ctx2.dim());
    check_dim(n1 + n2)?;
    expect_field(ctx1.field(), ctx2.field())?;
    if ctx1.lambda() != ctx2.lambda() {
        return Err(Error::PreconditionFailed(
            "the two operators have different weights".into(),
        ));
    }
    let shapes = |mats: &[Matrix], count: usize, dim: usize| -> Result<()> {
        if mats.len() != count {
            return Err(Error::DimensionMismatch(format!(
                "expected {count} action matrices, got {}",
                mats.len()
            )));
        }
        mats.iter().try_for_each(|m| expect_shape("action matrix", m, dim, dim))
    };
    shapes(rho1_l, n1, n2)?;
    shapes(rho1_r, n1, n2)?;
    shapes(rho2_l, n2, n1)?;
    shapes(rho2_r, n2, n1)?;
    let first_acts_on_second = is_reynolds_rep(ctx1.alg(), ctx1, n2, rho1_l, rho1_r, ctx2.op())?;
    let second_acts_on_first = is_reynolds_rep(ctx2.alg(), ctx2, n1, rho2_l, rho2_r, ctx1.op())?;
    let c = matched_bracket(
        ctx1.alg().structure(),
        ctx2.alg().structure(),
        rho1_l,
        rho1_r,
        rho2_l,
        rho2_r,
    );
    let leibniz = check_leibniz(&c)?;
    let op = Matrix::block_diag(ctx1.op(), ctx2.op());
    if !leibniz.holds() {
        return Ok(MatchedPairReport {
            first_acts_on_second,
            second_acts_on_first,
            leibniz,
            reynolds: Verdict::Holds,
            sum: None,
        });
    }
    let alg = LeibnizAlgebra::new(c)?;
    let reynolds = check_reynolds(&alg, ctx1.lambda(), &op)?;
    let sum = if reynolds.holds() {
        Some(ReynoldsContext::new(alg, ctx1.lambda().clone(), op)?)
    } else {
        None
    };
    Ok(MatchedPairReport {
        first_acts_on_second,
        second_acts_on_first,
        leibniz,
        reynolds,
        sum,
    })
}

/// A bilinear form `𝔅(e_i, e_j) = B[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    m: Matrix,
}

impl BilinearForm {
    pub fn new(m: Matrix) -> Result<BilinearForm> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "bilinear form matrix is {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(BilinearForm { m })
    }

    /// `[[0, −I], [I, 0]]` on `g ⊕ g*`.
    pub fn canonical(field: FieldSpec, n: usize) -> BilinearForm {
        let id = Matrix::identity(field, n);
        let z = Matrix::zeros(field, n, n);
        BilinearForm {
            m: Matrix::block(&z, &id.neg(), &id, &z),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn is_skew(&self) -> bool {
        self.m.add(&self.m.transpose()).is_zero()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.m.rank() == self.m.rows()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.m.apply(y);
        x.iter()
            .zip(&my)
            .fold(self.m.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

/// `𝔅(x,[y,z]) = 𝔅([x,z],y) + 𝔅([z,x],y)` on all basis triples, then the
/// consequence `𝔅(x,[y,z]) = −𝔅([y,x],z)`.
pub fn check_quadratic_invariance(alg: &LeibnizAlgebra, form: &BilinearForm) -> Result<Verdict> {
    let n = alg.dim();
    expect_shape("bilinear form", form.matrix(), n, n)?;
    expect_field(alg.field(), form.matrix().field())?;
    if !form.is_skew() {
        return Err(Error::NotSkew);
    }
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let triples = || (0..n * n * n).map(move |t| (t / (n * n), (t / n) % n, t % n));
    let b = |x: &[Scalar], y: &[Scalar]| form.eval(x, y);
    let invariance = first_violation(triples().map(|(i, j, k)| {
        let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
        let lhs = b(&x, &alg.bracket(&y, &z));
        let rhs = &b(&alg.bracket(&x, &z), &y) + &b(&alg.bracket(&z, &x), &y);
        compare("invariance", &[i, j, k], vec![lhs], vec![rhs])
    }));
    if !invariance.holds() {
        return Ok(invariance);
    }
    Ok(first_violation(triples().map(|(i, j, k)| {
        let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
        let lhs = b(&x, &alg.bracket(&y, &z));
        let rhs = -b(&alg.bracket(&y, &x), &z);
        compare("invariance-consequence", &[i, j, k], vec![lhs], vec![rhs])
    })))
}

/// The operator `R̂` with `𝔅(Rx, y) = 𝔅(x, R̂y)`, i.e. `B⁻¹RᵀB`.
pub fn adjoint_operator(form: &BilinearForm, r: &Matrix) -> Result<Matrix> {
    let n = form.dim();
    expect_shape("operator", r, n, n)?;
    let inv = form.matrix().inverse().map_err(|_| Error::Degenerate)?;
    Ok(inv.mul(&r.transpose()).mul(form.matrix()))
}

/// Structure constants of `g ⊕ g*` with the coadjoint actions on both sides.
pub fn double_structure(alg: &LeibnizAlgebra, d: &Tensor3) -> Result<Tensor3> {
    let n = alg.dim();
    expect_cube("coproduct", d, n)?;
    expect_field(alg.field(), d.field())?;
    check_dim(2 * n)?;
    let dual = LeibnizAlgebra::new(dual_bracket(d)).map_err(|_| Error::DualNotLeibniz)?;
    let on_dual = dual_representation(&adjoint_representation(alg));
    let on_alg = dual_representation(&adjoint_representation(&dual));
    Ok(matched_bracket(
        alg.structure(),
        dual.structure(),
        on_dual.rho_l(),
        on_dual.rho_r(),
        on_alg.rho_l(),
        on_alg.rho_r(),
    ))
}

/// The double `g ⊕ g*` together with `𝔅_d`.
pub fn build_double(alg: &LeibnizAlgebra, d: &Tensor3) -> Result<(LeibnizAlgebra, BilinearForm)> {
    let c = double_structure(alg, d)?;
    Ok((LeibnizAlgebra::new(c)?, BilinearForm::canonical(alg.field(), alg.dim())))
}

/// Whether the double of `(g, R)` and `(g*, Sᵀ)` is a Manin triple of
/// Reynolds Leibniz algebras under `𝔅_d`.
pub fn check_manin_triple(ctx: &ReynoldsContext, d: &Tensor3, s: &Matrix) -> Result<Verdict> {
    let n = ctx.dim();
    expect_shape("S", s, n, n)?;
    let c = double_structure(ctx.alg(), d)?;
    let leibniz = check_leibniz(&c)?;
    if !leibniz.holds() {
        return Ok(leibniz);
    }
    let closed = first_violation(c.nonzero().map(|(i, j, k, v)| {
        let (lo_in, lo_out) = (i < n && j < n, k < n);
        let (hi_in, hi_out) = (i >= n && j >= n, k >= n);
        if (lo_in && !lo_out) || (hi_in && !hi_out) {
            Some(Witness {
                identity: "subalgebra",
                at: vec![i, j, k],
                lhs: vec![v.clone()],
                rhs: vec![ctx.field().zero()],
            })
        } else {
            None
        }
    }));
    if !closed.holds() {
        return Ok(closed);
    }
    let double = LeibnizAlgebra::new(c)?;
    let form = BilinearForm::canonical(ctx.field(), n);
    let invariance = check_quadratic_invariance(&double, &form)?;
    if !invariance.holds() {
        return Ok(invariance);
    }
    let op = Matrix::block_diag(ctx.op(), &s.transpose());
    check_reynolds(&double, ctx.lambda(), &op)
}

/// The matched pair of `(g, R)` and `(g*, Sᵀ)` under the coadjoint actions.
/// `false` when `g*` is not a Leibniz algebra or `Sᵀ` is not Reynolds on it.
pub fn check_coadjoint_matched_pair(ctx: &ReynoldsContext, d: &Tensor3, s: &Matrix) -> Result<bool> {
    let n = ctx.dim();
    expect_cube("coproduct", d, n)?;
    expect_shape("S", s, n, n)?;
    let Ok(dual) = LeibnizAlgebra::new(dual_bracket(d)) else {
        return Ok(false);
    };
    let Ok(dual_ctx) = ReynoldsContext::new(dual.clone(), ctx.lambda().clone(), s.transpose()) else {
        return Ok(false);
    };
    let on_dual = dual_representation(&adjoint_representation(ctx.alg()));
    let on_alg = dual_representation(&adjoint_representation(&dual));
    let report = check_matched_pair(
        ctx,
        &dual_ctx,
        on_dual.rho_l(),
        on_dual.rho_r(),
        on_alg.rho_l(),
        on_alg.rho_r(),
    )?;
    Ok(report.ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{builtin_algebra, BuiltinAlgebra};

    fn a1_delta(field: FieldSpec, gamma: i64) -> Tensor3 {
        let mut d = Tensor3::cube(field, 2);
        d[(1, 0, 0)] = field.int(gamma);
        d
    }

    fn a2_case_two_delta(field: FieldSpec, eta: i64) -> Tensor3 {
        let mut d = Tensor3::cube(field, 2);
        for i in 0..2 {
            d[(i, 0, 1)] = field.int(eta);
            d[(i, 1, 0)] = field.int(-eta);
        }
        d
    }

    #[test]
    fn coleibniz_examples() {
        let q = FieldSpec::Rational;
        assert!(check_coleibniz(&a1_delta(q, 1)).unwrap().holds());
        assert!(check_coleibniz(&Tensor3::cube(q, 3)).unwrap().holds());
        let mut d = Tensor3::cube(q, 2);
        d[(0, 0, 1)] = q.one();
        // (id⊗δ)δ(e1) = e1⊗δ(e2) = 0 and (δ⊗id)δ(e1) = δ(e1)⊗e2 = e1⊗e2⊗e2,
        // while (τ⊗id)(id⊗δ)δ(e1) = 0.
        let v = check_coleibniz(&d).unwrap();
        let w = v.witness().expect("violated");
        assert_eq!(w.at, vec![0]);
    }

    #[test]
    fn bialgebra_examples() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let a2 = builtin_algebra(BuiltinAlgebra::A2, q);
        let d1 = Coproduct::new(a1_delta(q, 1)).unwrap();
        assert!(check_leibniz_bialgebra(&a1, &d1).unwrap().holds());
        assert!(check_leibniz_bialgebra(&a1, &Coproduct::zero(q, 2)).unwrap().holds());
        let d2 = Coproduct::new(a2_case_two_delta(q, 1)).unwrap();
        assert!(check_leibniz_bialgebra(&a2, &d2).unwrap().holds());
    }

    #[test]
    fn reynolds_coalgebra_examples() {
        let q = FieldSpec::Rational;
        let d = Coproduct::new(a1_delta(q, 1)).unwrap();
        assert!(check_reynolds_coalgebra(&d, &q.int(4), &Matrix::zeros(q, 2, 2))
            .unwrap()
            .holds());
        assert!(check_reynolds_coalgebra(&d, &q.one(), &Matrix::identity(q, 2))
            .unwrap()
            .holds());
        let s = Matrix::from_ints(q, &[&[0, 2], &[0, 1]]);
        assert!(check_reynolds_coalgebra(&d, &q.one(), &s).unwrap().holds());
    }

    #[test]
    fn first_family_bundle() {
        // k1 = l1 = η = γ = λ = 1: R(e1) = e1, R(e2) = e1, S(e2) = 2e1 + e2.
        let q = FieldSpec::Rational;
        let bundle = BialgebraBundle {
            alg: builtin_algebra(BuiltinAlgebra::A1, q),
            delta: a1_delta(q, 1),
            lambda: q.one(),
            r: Matrix::from_ints(q, &[&[1, 1], &[0, 0]]),
            s: Matrix::from_ints(q, &[&[0, 2], &[0, 1]]),
        };
        let report = check_reynolds_bialgebra(&bundle).unwrap();
        assert_eq!(report.flags(), [true; 5]);
        let ctx = ReynoldsContext::new(bundle.alg.clone(), q.one(), bundle.r.clone()).unwrap();
        assert!(check_manin_triple(&ctx, &bundle.delta, &bundle.s).unwrap().holds());
        assert!(check_coadjoint_matched_pair(&ctx, &bundle.delta, &bundle.s).unwrap());
        let mut failures = 0;
        for s in [
            bundle.s.scale(&q.int(2)),
            Matrix::identity(q, 2),
            Matrix::from_ints(q, &[&[1, 0], &[0, 0]]),
        ] {
            let mutant = BialgebraBundle {
                s: s.clone(),
                ..bundle.clone()
            };
            let ok = check_reynolds_bialgebra(&mutant).unwrap().ok();
            assert_eq!(check_manin_triple(&ctx, &bundle.delta, &s).unwrap().holds(), ok);
            failures += usize::from(!ok);
        }
        assert!(failures > 0);
    }

    #[test]
    fn zero_bundle_is_bialgebra() {
        let f = FieldSpec::Prime(5);
        let alg = builtin_algebra(BuiltinAlgebra::A2, f);
        let bundle = BialgebraBundle {
            alg,
            delta: Tensor3::cube(f, 2),
            lambda: f.int(2),
            r: Matrix::zeros(f, 2, 2),
            s: Matrix::zeros(f, 2, 2),
        };
        assert!(check_reynolds_bialgebra(&bundle).unwrap().ok());
        assert!(bundle.validate().is_ok());
    }

    #[test]
    fn canonical_form_and_adjoint() {
        let q = FieldSpec::Rational;
        let bd = BilinearForm::canonical(q, 2);
        assert!(bd.is_skew() && bd.is_nondegenerate());
        assert_eq!(bd.matrix().determinant().unwrap(), q.one());
        let r = Matrix::from_ints(q, &[&[1, 1], &[0, 0]]);
        let s = Matrix::from_ints(q, &[&[0, 2], &[0, 1]]);
        let hat = adjoint_operator(&bd, &Matrix::block_diag(&r, &s.transpose())).unwrap();
        assert_eq!(hat, Matrix::block_diag(&s, &r.transpose()));
        let plane = BilinearForm::new(Matrix::from_ints(q, &[&[0, 1], &[-1, 0]])).unwrap();
        let k = Matrix::scalar(q, 2, &q.int(7));
        assert_eq!(adjoint_operator(&plane, &k).unwrap(), k);
        assert_eq!(
            adjoint_operator(&plane, &Matrix::identity(q, 2)).unwrap(),
            Matrix::identity(q, 2)
        );
    }

    #[test]
    fn invariance_errors_and_abelian() {
        let q = FieldSpec::Rational;
        let ab = LeibnizAlgebra::abelian(q, 2);
        let plane = BilinearForm::new(Matrix::from_ints(q, &[&[0, 1], &[-1, 0]])).unwrap();
        assert!(check_quadratic_invariance(&ab, &plane).unwrap().holds());
        let sym = BilinearForm::new(Matrix::identity(q, 2)).unwrap();
        assert_eq!(check_quadratic_invariance(&ab, &sym), Err(Error::NotSkew));
        let zero = BilinearForm::new(Matrix::zeros(q, 2, 2)).unwrap();
        assert_eq!(check_quadratic_invariance(&ab, &zero), Err(Error::Degenerate));
    }

    #[test]
    fn a1_plane_form_is_not_invariant() {
        // Only [e2,e2] = e1 is nonzero, so the first failing triple is
        // (e2,e2,e2): 𝔅(e2,e1) = −1 against 2𝔅(e1,e2) = 2.
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let plane = BilinearForm::new(Matrix::from_ints(q, &[&[0, 1], &[-1, 0]])).unwrap();
        let v = check_quadratic_invariance(&a1, &plane).unwrap();
        assert_eq!(v.witness().unwrap().at, vec![1, 1, 1]);
    }

    #[test]
    fn doubles() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let (dbl, bd) = build_double(&a1, &a1_delta(q, 1)).unwrap();
        assert_eq!(dbl.dim(), 4);
        assert!(check_quadratic_invariance(&dbl, &bd).unwrap().holds());
        let a2 = builtin_algebra(BuiltinAlgebra::A2, q);
        let (dbl2, bd2) = build_double(&a2, &a2_case_two_delta(q, 1)).unwrap();
        assert!(check_quadratic_invariance(&dbl2, &bd2).unwrap().holds());
        let (semi, _) = build_double(&a1, &Tensor3::cube(q, 2)).unwrap();
        let on_dual = dual_representation(&adjoint_representation(&a1));
        assert_eq!(semi.structure()[(1, 2, 3)], on_dual.rho_l()[1][(1, 0)]);
    }

    #[test]
    fn dual_not_leibniz() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let mut d = Tensor3::cube(q, 2);
        d[(0, 0, 1)] = q.one();
        assert_eq!(build_double(&a1, &d).unwrap_err(), Error::DualNotLeibniz);
    }

    #[test]
    fn matched_pair_with_zero_algebra() {
        let q = FieldSpec::Rational;
        let a1 = builtin_algebra(BuiltinAlgebra::A1, q);
        let ctx1 = ReynoldsContext::new(a1, q.one(), Matrix::from_ints(q, &[&[1, 1], &[0, 0]])).unwrap();
        let ctx2 = ReynoldsContext::new(LeibnizAlgebra::abelian(q, 0), q.one(), Matrix::zeros(q, 0, 0)).unwrap();
        let empty = Matrix::zeros(q, 0, 0);
        let report = check_matched_pair(
            &ctx1,
            &ctx2,
            &[empty.clone(), empty],
            &[Matrix::zeros(q, 0, 0), Matrix::zeros(q, 0, 0)],
            &[],
            &[],
        )
        .unwrap();
        assert!(report.ok());
        assert_eq!(report.sum.as_ref(), Some(&ctx1));
    }
}

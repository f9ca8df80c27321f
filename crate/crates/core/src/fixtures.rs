//! Seeded generators of small test objects over a finite field: algebras by
//! change of basis from a few seeds, and operators found by exhaustive
//! search. Used by the `verify` command and by the test suites.

use crate::algebra::{check_reynolds, LeibnizAlgebra, ReynoldsContext};
use crate::bialgebra::BialgebraBundle;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Sampler, Scalar};
use crate::linalg::{Matrix, Tensor3};
use crate::rep::{
    adjoint_representation, check_adjoint_admissible, check_beta_admissible, check_reynolds_representation,
    dual_representation, Representation,
};
use crate::ybe::{
    check_o_operator, check_pi_admissible, clybe_defect, coboundary_coproduct, o_operator_verdict, OLevel, PiForm,
};

/// Upper bound on the size of an exhaustive matrix scan.
pub const MAX_SCAN: usize = 1 << 20;

fn structure(field: FieldSpec, n: usize, entries: &[((usize, usize, usize), i64)]) -> LeibnizAlgebra {
    let mut c = Tensor3::cube(field, n);
    for &(idx, v) in entries {
        c[idx] = field.int(v);
    }
    LeibnizAlgebra::new(c).expect("seed algebras are Leibniz")
}

/// Two-dimensional seeds: abelian, the two built-in algebras, the
/// non-abelian Lie algebra and the algebra with `[e1,e2] = e2` only.
pub fn seed_algebras(field: FieldSpec) -> Vec<LeibnizAlgebra> {
    vec![
        LeibnizAlgebra::abelian(field, 2),
        structure(field, 2, &[((1, 1, 0), 1)]),
        structure(field, 2, &[((1, 0, 0), 1), ((1, 1, 0), 1)]),
        structure(field, 2, &[((0, 1, 1), 1), ((1, 0, 1), -1)]),
        structure(field, 2, &[((0, 1, 1), 1)]),
    ]
}

pub fn random_matrix(field: FieldSpec, rows: usize, cols: usize, sampler: &mut Sampler) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| sampler.any(field)).collect())
        .collect();
    Matrix::from_rows(field, data).expect("rectangular")
}

pub fn random_invertible(field: FieldSpec, n: usize, sampler: &mut Sampler) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, sampler);
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// The bracket `P⁻¹[Px, Py]`, isomorphic to `alg` through `P`.
pub fn transport(alg: &LeibnizAlgebra, p: &Matrix) -> Result<LeibnizAlgebra> {
    let n = alg.dim();
    let inv = p.inverse()?;
    let mut c = Tensor3::cube(alg.field(), n);
    for i in 0..n {
        for j in 0..n {
            let v = inv.apply(&alg.bracket(&p.column(i), &p.column(j)));
            for (k, s) in v.into_iter().enumerate() {
                c[(i, j, k)] = s;
            }
        }
    }
    LeibnizAlgebra::new(c)
}

pub fn pick<T: Clone>(items: &[T], sampler: &mut Sampler) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[sampler.index(items.len())].clone())
    }
}

/// A seed algebra in a random basis.
pub fn random_algebra(field: FieldSpec, sampler: &mut Sampler) -> LeibnizAlgebra {
    let seeds = seed_algebras(field);
    let alg = pick(&seeds, sampler).expect("seeds");
    let p = random_invertible(field, alg.dim(), sampler);
    transport(&alg, &p).expect("invertible change of basis")
}

/// Every `rows × cols` matrix over `F_p`, in lexicographic order of entries.
pub fn all_matrices(field: FieldSpec, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let elements = field
        .elements()
        .ok_or(Error::FieldMismatch(field, FieldSpec::Prime(3)))?;
    let p = elements.len();
    let cells = rows * cols;
    let total = p
        .checked_pow(cells as u32)
        .filter(|t| *t <= MAX_SCAN)
        .ok_or_else(|| Error::PreconditionFailed(format!("{p}^{cells} matrices exceed the scan bound")))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut digits = vec![0; cells];
            for d in digits.iter_mut().rev() {
                *d = idx % p;
                idx /= p;
            }
            let data = digits
                .chunks(cols.max(1))
                .map(|row| row.iter().map(|&d| elements[d].clone()).collect())
                .collect();
            Matrix::from_rows(field, data).expect("rectangular")
        })
        .collect())
}

/// Every symmetric `n × n` matrix over `F_p`.
pub fn symmetric_matrices(field: FieldSpec, n: usize) -> Result<Vec<Matrix>> {
    Ok(all_matrices(field, n, n)?
        .into_iter()
        .filter(Matrix::is_symmetric)
        .collect())
}

pub fn reynolds_operators(alg: &LeibnizAlgebra, lambda: &Scalar) -> Result<Vec<Matrix>> {
    let n = alg.dim();
    let mut out = Vec::new();
    for r in all_matrices(alg.field(), n, n)? {
        if check_reynolds(alg, lambda, &r)?.holds() {
            out.push(r);
        }
    }
    Ok(out)
}

/// A random algebra with a random Reynolds operator of weight λ. Nonzero
/// operators are preferred when the algebra has any.
pub fn random_context(field: FieldSpec, lambda: &Scalar, sampler: &mut Sampler) -> Result<ReynoldsContext> {
    let alg = random_algebra(field, sampler);
    let ops = reynolds_operators(&alg, lambda)?;
    let nonzero: Vec<Matrix> = ops.iter().filter(|r| !r.is_zero()).cloned().collect();
    let op = if !nonzero.is_empty() && sampler.coin(0.9) {
        pick(&nonzero, sampler)
    } else {
        pick(&ops, sampler)
    }
    .expect("the zero operator is always Reynolds");
    ReynoldsContext::new(alg, lambda.clone(), op)
}

/// The adjoint representation, its left half, its dual and the zero
/// representations of dimensions one and two.
pub fn representations(alg: &LeibnizAlgebra) -> Vec<Representation> {
    let adj = adjoint_representation(alg);
    let n = alg.dim();
    let left = Representation::new(
        alg.clone(),
        n,
        adj.rho_l().to_vec(),
        vec![Matrix::zeros(alg.field(), n, n); n],
    )
    .expect("left multiplications alone form a representation");
    let dual = dual_representation(&adj);
    vec![
        adj,
        left,
        dual,
        Representation::zero(alg.clone(), 1),
        Representation::zero(alg.clone(), 2),
    ]
}

/// Every `α` making `(V, α)` a Reynolds representation.
pub fn reynolds_alphas(rep: &Representation, ctx: &ReynoldsContext) -> Result<Vec<Matrix>> {
    let m = rep.vdim();
    let mut out = Vec::new();
    for a in all_matrices(ctx.field(), m, m)? {
        if check_reynolds_representation(rep, ctx, &a)?.holds() {
            out.push(a);
        }
    }
    Ok(out)
}

/// Every `S` adjoint admissible to `(g, R)`.
pub fn admissible_operators(ctx: &ReynoldsContext) -> Result<Vec<Matrix>> {
    let n = ctx.dim();
    let mut out = Vec::new();
    for s in all_matrices(ctx.field(), n, n)? {
        if check_adjoint_admissible(ctx, &s)?.holds() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Symmetric solutions of the cLYBe.
pub fn symmetric_clybe_solutions(alg: &LeibnizAlgebra) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for r in symmetric_matrices(alg.field(), alg.dim())? {
        if clybe_defect(alg, &r)?.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Pairs `(S, r)` with `S` adjoint admissible and `r` a symmetric solution
/// of the `S`-admissible cLYBe.
pub fn admissible_clybe_pairs(ctx: &ReynoldsContext) -> Result<Vec<(Matrix, Matrix)>> {
    let rs = symmetric_clybe_solutions(ctx.alg())?;
    let op = ctx.op();
    let mut out = Vec::new();
    for s in admissible_operators(ctx)? {
        for r in &rs {
            if s.mul(r) == r.mul(&op.transpose()) && r.mul(&s.transpose()) == op.mul(r) {
                out.push((s.clone(), r.clone()));
            }
        }
    }
    Ok(out)
}

/// A coboundary bundle from an admissible-cLYBe solution, or a copy with
/// one ingredient perturbed.
#[derive(Debug, Clone)]
pub struct BundleFixture {
    pub bundle: BialgebraBundle,
    /// The r-matrix the coproduct was built from.
    pub r_matrix: Matrix,
    /// Which ingredient was perturbed, if any.
    pub mutant: Option<&'static str>,
}

fn perturb(m: &Matrix, sampler: &mut Sampler) -> Matrix {
    let field = m.field();
    let mut out = m.clone();
    let (i, j) = (sampler.index(m.rows()), sampler.index(m.cols()));
    out[(i, j)] = &out[(i, j)] + &sampler.nonzero(field);
    out
}

/// `count` bundles over `F_p` of weight λ. Roughly one in three is a
/// mutant with `S`, `R` or the coproduct perturbed at one entry.
pub fn bundle_fixtures(
    field: FieldSpec,
    lambda: &Scalar,
    count: usize,
    sampler: &mut Sampler,
) -> Result<Vec<BundleFixture>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ctx = random_context(field, lambda, sampler)?;
        let pairs = admissible_clybe_pairs(&ctx)?;
        let nonzero: Vec<_> = pairs.iter().filter(|(_, r)| !r.is_zero()).cloned().collect();
        for _ in 0..4 {
            if out.len() == count {
                break;
            }
            let (s, r) = if !nonzero.is_empty() && sampler.coin(0.8) {
                pick(&nonzero, sampler)
            } else {
                pick(&pairs, sampler)
            }
            .expect("(0, 0) is always a solution");
            let delta = coboundary_coproduct(ctx.alg(), &r)?;
            let mut bundle = BialgebraBundle {
                alg: ctx.alg().clone(),
                delta,
                lambda: lambda.clone(),
                r: ctx.op().clone(),
                s,
            };
            let mutant = match sampler.index(6) {
                0 => {
                    bundle.s = perturb(&bundle.s, sampler);
                    Some("S")
                }
                1 => {
                    bundle.r = perturb(&bundle.r, sampler);
                    Some("R")
                }
                2 => {
                    let n = bundle.alg.dim();
                    let idx = (sampler.index(n), sampler.index(n), sampler.index(n));
                    bundle.delta.add_at(idx, &sampler.nonzero(field));
                    Some("coproduct")
                }
                _ => None,
            };
            out.push(BundleFixture {
                bundle,
                r_matrix: r,
                mutant,
            });
        }
    }
    Ok(out)
}

/// Inputs for lifting a map `T: V → g` to the semidirect product with `V*`.
#[derive(Debug, Clone)]
pub struct LiftFixture {
    pub ctx: ReynoldsContext,
    pub rep: Representation,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub s: Matrix,
    pub t: Matrix,
}

fn prefer_nonzero(items: &[Matrix], sampler: &mut Sampler) -> Option<Matrix> {
    let nonzero: Vec<Matrix> = items.iter().filter(|m| !m.is_zero()).cloned().collect();
    if !nonzero.is_empty() && sampler.coin(0.8) {
        pick(&nonzero, sampler)
    } else {
        pick(items, sampler)
    }
}

/// `count` lift inputs with `β` admissible. About half use a weak
/// O-operator `T` and an `S` with `Tβ = ST`; the rest are random.
pub fn lift_fixtures(
    field: FieldSpec,
    lambda: &Scalar,
    count: usize,
    sampler: &mut Sampler,
) -> Result<Vec<LiftFixture>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ctx = random_context(field, lambda, sampler)?;
        let rep = pick(&representations(ctx.alg()), sampler).expect("representations");
        let (n, m) = (ctx.dim(), rep.vdim());
        let mut betas = Vec::new();
        for b in all_matrices(field, m, m)? {
            if check_beta_admissible(&rep, &ctx, &b)?.holds() {
                betas.push(b);
            }
        }
        let beta = prefer_nonzero(&betas, sampler).expect("zero is admissible");
        let alpha = if sampler.coin(0.5) {
            prefer_nonzero(&reynolds_alphas(&rep, &ctx)?, sampler).expect("zero is a Reynolds operator on V")
        } else {
            random_matrix(field, m, m, sampler)
        };
        let t = if sampler.coin(0.6) {
            let mut weak = Vec::new();
            for t in all_matrices(field, n, m)? {
                if o_operator_verdict(&t, &rep, &ctx, &alpha)?.holds() {
                    weak.push(t);
                }
            }
            prefer_nonzero(&weak, sampler).expect("zero is a weak O-operator")
        } else {
            random_matrix(field, n, m, sampler)
        };
        let s = if sampler.coin(0.5) {
            let tb = t.mul(&beta);
            let fits: Vec<Matrix> = all_matrices(field, n, n)?
                .into_iter()
                .filter(|s| s.mul(&t) == tb)
                .collect();
            pick(&fits, sampler).unwrap_or_else(|| random_matrix(field, n, n, sampler))
        } else {
            random_matrix(field, n, n, sampler)
        };
        out.push(LiftFixture {
            ctx,
            rep,
            alpha,
            beta,
            s,
            t,
        });
    }
    Ok(out)
}

/// Inputs satisfying the equations attached to `Π`, with `T` an
/// O-operator on a Reynolds representation.
#[derive(Debug, Clone)]
pub struct PiFixture {
    pub ctx: ReynoldsContext,
    pub rep: Representation,
    pub alpha: Matrix,
    pub t: Matrix,
}

/// Up to `count` fixtures for `pi`, giving up after `attempts` random
/// contexts.
pub fn pi_fixtures(
    field: FieldSpec,
    lambda: &Scalar,
    pi: &PiForm,
    count: usize,
    attempts: usize,
    sampler: &mut Sampler,
) -> Result<Vec<PiFixture>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let ctx = random_context(field, lambda, sampler)?;
        if matches!(pi, PiForm::ThetaXInverse(_)) && ctx.op().inverse().is_err() {
            continue;
        }
        let rep = pick(&representations(ctx.alg()), sampler).expect("representations");
        let (n, m) = (ctx.dim(), rep.vdim());
        let mut alphas = Vec::new();
        for a in all_matrices(field, m, m)? {
            match check_pi_admissible(&ctx, &rep, &a, pi) {
                Ok(v) if v.holds() => alphas.push(a),
                Ok(_) | Err(Error::NotInvertible) => {}
                Err(e) => return Err(e),
            }
        }
        let Some(alpha) = prefer_nonzero(&alphas, sampler) else {
            continue;
        };
        let mut full = Vec::new();
        for t in all_matrices(field, n, m)? {
            if check_o_operator(&t, &rep, &ctx, &alpha)? == OLevel::Full {
                full.push(t);
            }
        }
        let t = prefer_nonzero(&full, sampler).expect("zero is an O-operator");
        out.push(PiFixture { ctx, rep, alpha, t });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_leibniz;

    #[test]
    fn seeds_and_transports_are_leibniz() {
        let f = FieldSpec::Prime(5);
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            let alg = random_algebra(f, &mut s);
            assert!(check_leibniz(alg.structure()).unwrap().holds());
        }
    }

    #[test]
    fn scan_sizes() {
        let f = FieldSpec::Prime(3);
        assert_eq!(all_matrices(f, 2, 2).unwrap().len(), 81);
        assert_eq!(symmetric_matrices(f, 2).unwrap().len(), 27);
        assert!(all_matrices(FieldSpec::Rational, 2, 2).is_err());
        assert!(all_matrices(FieldSpec::Prime(7), 3, 3).is_err());
    }

    #[test]
    fn zero_is_always_found() {
        let f = FieldSpec::Prime(5);
        let mut s = Sampler::new(9);
        let ctx = random_context(f, &f.one(), &mut s).unwrap();
        assert!(admissible_operators(&ctx).unwrap().iter().any(Matrix::is_zero));
        assert!(admissible_clybe_pairs(&ctx)
            .unwrap()
            .iter()
            .any(|(s, r)| s.is_zero() && r.is_zero()));
        for rep in representations(ctx.alg()) {
            let alphas = reynolds_alphas(&rep, &ctx).unwrap();
            assert!(alphas.iter().any(Matrix::is_zero));
        }
    }
}

//! Regression harness behind `rlk verify`: randomized sweeps of the
//! structural results and the two-dimensional classification, reported
//! as one row per check in a fixed order.

use std::fmt;

use serde::Serialize;

use crate::algebra::{
    check_homomorphism, check_leibniz, check_reynolds, induced_bracket, LeibnizAlgebra, ReynoldsContext,
};
use crate::bialgebra::{
    adjoint_operator, build_double, check_coadjoint_matched_pair, check_manin_triple, check_quadratic_invariance,
    check_reynolds_bialgebra, BialgebraBundle,
};
use crate::classify::{
    enumerate_reynolds, enumerate_triangular_pairs, families, verify_family, Assignment, BuiltinAlgebra, FamilyVerdict,
    Param, RCase,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Sampler, Scalar};
use crate::fixtures::{self, bundle_fixtures, lift_fixtures, pi_fixtures, random_context, random_matrix};
use crate::linalg::{Matrix, Tensor3};
use crate::rep::{
    check_adjoint_admissible, check_beta_admissible, check_representation, check_reynolds_representation,
    dual_representation, semidirect_product,
};
use crate::ybe::{
    check_admissible_clybe, check_o_operator, check_tensor_admissibility, coboundary_coproduct, lift_o_operator,
    OLevel, PiForm,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Representations,
    Bialgebras,
    YangBaxter,
    Classification,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Suite> {
        Ok(match text {
            "all" => Suite::All,
            "representations" => Suite::Representations,
            "bialgebras" => Suite::Bialgebras,
            "yang-baxter" => Suite::YangBaxter,
            "classification" => Suite::Classification,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }

    fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Representations => "representations",
            Suite::Bialgebras => "bialgebras",
            Suite::YangBaxter => "yang-baxter",
            Suite::Classification => "classification",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark}  {:<16}{}  [{}]", self.suite, self.name, self.detail)
    }
}

/// Fixture counts per sweep.
pub const SWEEP: usize = 100;

const F5: FieldSpec = FieldSpec::Prime(5);

fn row(suite: Suite, name: &str, outcome: Result<(bool, String)>) -> Row {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Row {
        suite: suite.name(),
        name: name.to_string(),
        passed,
        detail,
    }
}

fn tally(total: usize, failures: usize, first: Option<String>) -> (bool, String) {
    match first {
        None => (failures == 0, format!("{total} fixtures")),
        Some(f) => (false, format!("{failures}/{total} failed, first: {f}")),
    }
}

/// Runs `f` on `count` fixtures per weight, counting `false` results.
fn sweep(lambdas: &[i64], count: usize, mut f: impl FnMut(&Scalar, usize) -> Result<bool>) -> Result<(bool, String)> {
    let mut failures = 0;
    let mut first = None;
    for &l in lambdas {
        let lambda = F5.int(l);
        for i in 0..count {
            if !f(&lambda, i)? {
                failures += 1;
                first.get_or_insert(format!("lambda={l} fixture {i}"));
            }
        }
    }
    Ok(tally(lambdas.len() * count, failures, first))
}

pub fn run(suite: Suite, seed: u64) -> Vec<Row> {
    match suite {
        Suite::All => [
            Suite::Representations,
            Suite::Bialgebras,
            Suite::YangBaxter,
            Suite::Classification,
        ]
        .into_iter()
        .flat_map(|s| run(s, seed))
        .collect(),
        Suite::Representations => representations(seed),
        Suite::Bialgebras => bialgebras(seed),
        Suite::YangBaxter => yang_baxter(seed),
        Suite::Classification => classification(seed),
    }
}

fn representations(seed: u64) -> Vec<Row> {
    let suite = Suite::Representations;
    let mut sampler = Sampler::new(seed);
    let weights = [0, 1, 2];
    let per = SWEEP.div_ceil(weights.len());
    vec![
        row(
            suite,
            "induced bracket is Leibniz and R is a homomorphism onto g",
            sweep(&weights, per, |lambda, _| {
                let ctx = random_context(F5, lambda, &mut sampler)?;
                let induced = induced_bracket(&ctx)?;
                if !check_leibniz(induced.structure())?.holds() {
                    return Ok(false);
                }
                let Ok(src) = ReynoldsContext::new(induced, lambda.clone(), ctx.op().clone()) else {
                    return Ok(false);
                };
                Ok(check_homomorphism(ctx.op(), &src, &ctx)?.holds())
            }),
        ),
        row(
            suite,
            "dual of a representation is a representation",
            sweep(&weights, per, |lambda, _| {
                let ctx = random_context(F5, lambda, &mut sampler)?;
                let rep = fixtures::pick(&fixtures::representations(ctx.alg()), &mut sampler).expect("nonempty");
                let dual = dual_representation(&rep);
                Ok(check_representation(ctx.alg(), dual.vdim(), dual.rho_l(), dual.rho_r())?.holds())
            }),
        ),
        row(
            suite,
            "beta admissible iff the dual with the transpose is a Reynolds representation",
            sweep(&weights, per, |lambda, _| {
                let ctx = random_context(F5, lambda, &mut sampler)?;
                let rep = fixtures::pick(&fixtures::representations(ctx.alg()), &mut sampler).expect("nonempty");
                let m = rep.vdim();
                let beta = if sampler.coin(0.5) {
                    let ok: Vec<Matrix> = fixtures::all_matrices(F5, m, m)?
                        .into_iter()
                        .filter(|b| check_beta_admissible(&rep, &ctx, b).map(|v| v.holds()).unwrap_or(false))
                        .collect();
                    fixtures::pick(&ok, &mut sampler).expect("zero is admissible")
                } else {
                    random_matrix(F5, m, m, &mut sampler)
                };
                let direct = check_beta_admissible(&rep, &ctx, &beta)?.holds();
                let dual = check_reynolds_representation(&dual_representation(&rep), &ctx, &beta.transpose())?.holds();
                Ok(direct == dual)
            }),
        ),
        row(
            suite,
            "semidirect product is Reynolds iff the module is a Reynolds representation",
            sweep(&weights, per, |lambda, _| {
                let ctx = random_context(F5, lambda, &mut sampler)?;
                let rep = fixtures::pick(&fixtures::representations(ctx.alg()), &mut sampler).expect("nonempty");
                let m = rep.vdim();
                let alpha = if sampler.coin(0.5) {
                    fixtures::pick(&fixtures::reynolds_alphas(&rep, &ctx)?, &mut sampler).expect("zero works")
                } else {
                    random_matrix(F5, m, m, &mut sampler)
                };
                let direct = check_reynolds_representation(&rep, &ctx, &alpha)?.holds();
                let (alg, op) = semidirect_product(&rep, &ctx, &alpha)?;
                Ok(direct == check_reynolds(&alg, lambda, &op)?.holds())
            }),
        ),
    ]
}

fn manin_holds(b: &BialgebraBundle) -> bool {
    let Ok(ctx) = ReynoldsContext::new(b.alg.clone(), b.lambda.clone(), b.r.clone()) else {
        return false;
    };
    check_manin_triple(&ctx, &b.delta, &b.s)
        .map(|v| v.holds())
        .unwrap_or(false)
}

fn matched_holds(b: &BialgebraBundle) -> bool {
    let Ok(ctx) = ReynoldsContext::new(b.alg.clone(), b.lambda.clone(), b.r.clone()) else {
        return false;
    };
    check_coadjoint_matched_pair(&ctx, &b.delta, &b.s).unwrap_or(false)
}

fn bialgebras(seed: u64) -> Vec<Row> {
    let suite = Suite::Bialgebras;
    let mut sampler = Sampler::new(seed);
    let mut rows = Vec::new();
    for l in [1, 0] {
        let lambda = F5.int(l);
        let outcome = bundle_fixtures(F5, &lambda, 2 * SWEEP, &mut sampler).and_then(|fx| {
            let mut failures = 0;
            let mut first = None;
            let mut positive = 0;
            for (i, f) in fx.iter().enumerate() {
                let bi = check_reynolds_bialgebra(&f.bundle)?.ok();
                positive += usize::from(bi);
                if bi != manin_holds(&f.bundle) || bi != matched_holds(&f.bundle) {
                    failures += 1;
                    first.get_or_insert(format!("fixture {i}"));
                }
            }
            let (ok, detail) = tally(fx.len(), failures, first);
            Ok((ok, format!("{detail}, {positive} bialgebras")))
        });
        rows.push(row(
            suite,
            &format!("bialgebra, matched pair and Manin triple agree (lambda={l})"),
            outcome,
        ));
    }
    let double = sweep(&[0, 1, 2], SWEEP.div_ceil(3), |lambda, _| {
        let f = bundle_fixtures(F5, lambda, 1, &mut sampler)?.remove(0);
        let b = f.bundle;
        if !manin_holds(&b) {
            return Ok(true);
        }
        let (double, form) = build_double(&b.alg, &b.delta)?;
        let op = Matrix::block_diag(&b.r, &b.s.transpose());
        let adj = adjoint_operator(&form, &op)?;
        if adj != Matrix::block_diag(&b.s, &b.r.transpose()) {
            return Ok(false);
        }
        let dctx = ReynoldsContext::new(double, b.lambda.clone(), op)?;
        let ctx = ReynoldsContext::new(b.alg.clone(), b.lambda.clone(), b.r.clone())?;
        let dual = crate::bialgebra::Coproduct::new(b.delta.clone())?.dual_algebra()?;
        let dual_ctx = ReynoldsContext::new(dual, b.lambda.clone(), b.s.transpose())?;
        Ok(check_adjoint_admissible(&dctx, &adj)?.holds()
            && check_adjoint_admissible(&ctx, &b.s)?.holds()
            && check_adjoint_admissible(&dual_ctx, &b.r.transpose())?.holds())
    });
    rows.push(row(
        suite,
        "adjoint of the double operator and its restrictions",
        double,
    ));
    let invariance = sweep(&[0, 1, 2], SWEEP.div_ceil(3), |lambda, _| {
        let f = bundle_fixtures(F5, lambda, 1, &mut sampler)?.remove(0);
        match build_double(&f.bundle.alg, &f.bundle.delta) {
            Ok((double, form)) => {
                let bi = crate::bialgebra::Coproduct::new(f.bundle.delta.clone())
                    .and_then(|d| crate::bialgebra::check_leibniz_bialgebra(&f.bundle.alg, &d))
                    .map(|v| v.holds())
                    .unwrap_or(false);
                Ok(!bi || check_quadratic_invariance(&double, &form)?.holds())
            }
            _ => Ok(true),
        }
    });
    rows.push(row(
        suite,
        "canonical form on a double is invariant with its consequence",
        invariance,
    ));
    rows
}

fn yang_baxter(seed: u64) -> Vec<Row> {
    let suite = Suite::YangBaxter;
    let mut sampler = Sampler::new(seed);
    let mut rows = Vec::new();
    for case in RCase::ALL {
        rows.push(row(
            suite,
            &format!("coboundary coproduct table for r-case {}", case.name()),
            coboundary_golden(case, &mut sampler, coboundary_coproduct),
        ));
    }

    let tensor = sweep(&[0, 1, 2], SWEEP.div_ceil(3), |lambda, _| {
        let ctx = random_context(F5, lambda, &mut sampler)?;
        let s = fixtures::pick(&fixtures::admissible_operators(&ctx)?, &mut sampler).expect("zero works");
        let n = ctx.dim();
        let r = random_matrix(F5, n, n, &mut sampler);
        let t = check_tensor_admissibility(&ctx, &s, &r)?;
        let bundle = BialgebraBundle {
            alg: ctx.alg().clone(),
            delta: coboundary_coproduct(ctx.alg(), &r)?,
            lambda: lambda.clone(),
            r: ctx.op().clone(),
            s,
        };
        let rep = check_reynolds_bialgebra(&bundle)?;
        Ok(t.coalgebra.holds() == rep.reynolds_coalgebra.holds()
            && (t.right.holds() && t.left.holds()) == rep.operator_compatibility.holds())
    });
    rows.push(row(
        suite,
        "tensor admissibility matches the coproduct conditions",
        tensor,
    ));

    let lift = sweep(&[0, 1, 2], SWEEP.div_ceil(3), |lambda, _| {
        let f = lift_fixtures(F5, lambda, 1, &mut sampler)?.remove(0);
        let lifted = lift_o_operator(&f.t, &f.rep, &f.ctx, &f.alpha, &f.beta, &f.s)?;
        let solves = check_admissible_clybe(&lifted.ctx, &lifted.s, &lifted.r)?.all();
        let weak = check_o_operator(&f.t, &f.rep, &f.ctx, &f.alpha)? >= OLevel::Weak;
        Ok(solves == (weak && f.t.mul(&f.beta) == f.s.mul(&f.t)))
    });
    rows.push(row(
        suite,
        "lifted r solves the admissible cLYBe iff T is a weak O-operator",
        lift,
    ));

    for l in [0, 1] {
        let lambda = F5.int(l);
        for pi in [
            PiForm::PlusX,
            PiForm::MinusX,
            PiForm::MinusXPlusTheta(F5.int(2)),
            PiForm::ThetaXInverse(F5.int(3)),
        ] {
            let outcome = pi_fixtures(F5, &lambda, &pi, 10, 400, &mut sampler).and_then(|fx| {
                let mut failures = 0;
                for f in &fx {
                    let beta = pi.apply(&f.alpha)?;
                    let s = pi.apply(f.ctx.op())?;
                    let lifted = lift_o_operator(&f.t, &f.rep, &f.ctx, &f.alpha, &beta, &s)?;
                    let bundle = BialgebraBundle {
                        alg: lifted.ctx.alg().clone(),
                        delta: coboundary_coproduct(lifted.ctx.alg(), &lifted.r)?,
                        lambda: lambda.clone(),
                        r: lifted.ctx.op().clone(),
                        s: lifted.s.clone(),
                    };
                    failures += usize::from(!check_reynolds_bialgebra(&bundle)?.ok());
                }
                Ok((
                    failures == 0 && !fx.is_empty(),
                    format!("{} fixtures, {failures} failed", fx.len()),
                ))
            });
            let name = format!(
                "lift under Pi(x) = {} gives a Reynolds bialgebra (lambda={l})",
                pi_label(&pi)
            );
            rows.push(row(suite, &name, outcome));
        }
    }

    let symmetric = sweep(&[0, 1, 2], SWEEP.div_ceil(3), |lambda, _| {
        let ctx = random_context(F5, lambda, &mut sampler)?;
        let n = ctx.dim();
        let s = random_matrix(F5, n, n, &mut sampler);
        let r = fixtures::pick(&fixtures::symmetric_matrices(F5, n)?, &mut sampler).expect("nonempty");
        let a = check_admissible_clybe(&ctx, &s, &r)?;
        Ok(a.left == a.right)
    });
    rows.push(row(
        suite,
        "for symmetric r the two admissibility conditions coincide",
        symmetric,
    ));
    rows
}

fn pi_label(pi: &PiForm) -> String {
    match pi {
        PiForm::PlusX => "x".into(),
        PiForm::MinusX => "-x".into(),
        PiForm::MinusXPlusTheta(t) => format!("-x+{t}"),
        PiForm::ThetaXInverse(t) => format!("{t}/x"),
    }
}

/// `δ_r` on the three classification r-matrices, written out by hand.
fn expected_coproduct(case: RCase, eta: &Scalar, gamma: &Scalar) -> Tensor3 {
    let q = FieldSpec::Rational;
    let mut d = Tensor3::cube(q, 2);
    match case {
        RCase::A1 => d.add_at((1, 0, 0), gamma),
        RCase::A2First => {
            d.add_at((1, 0, 0), &(eta + gamma));
            d.add_at((1, 0, 1), gamma);
        }
        RCase::A2Second => {
            for i in 0..2 {
                d.add_at((i, 0, 1), eta);
                d.add_at((i, 1, 0), &-eta);
            }
        }
    }
    d
}

fn coboundary_golden(
    case: RCase,
    sampler: &mut Sampler,
    coproduct: impl Fn(&LeibnizAlgebra, &Matrix) -> Result<Tensor3>,
) -> Result<(bool, String)> {
    let q = FieldSpec::Rational;
    let alg = crate::classify::builtin_algebra(case.algebra(), q);
    let mut checked = 0;
    while checked < 5 {
        let mut at = Assignment::new();
        for p in case.params() {
            at.insert(*p, sampler.any(q));
        }
        if !case.constraint().holds(q, &at)? {
            continue;
        }
        let zero = q.zero();
        let eta = at.get(&Param::Eta).unwrap_or(&zero);
        let gamma = at.get(&Param::Gamma).unwrap_or(&zero);
        let got = coproduct(&alg, &case.matrix(q, &at)?)?;
        if got != expected_coproduct(case, eta, gamma) {
            return Ok((false, format!("mismatch at eta={eta}, gamma={gamma}")));
        }
        checked += 1;
    }
    Ok((true, format!("{checked} rational parameter pairs")))
}

fn classification(seed: u64) -> Vec<Row> {
    let suite = Suite::Classification;
    let mut rows = Vec::new();
    for f in families() {
        let outcome = verify_family(&f, 20, seed).map(|v| match v {
            FamilyVerdict::Passed { trials } => (true, format!("{trials} rational trials")),
            FamilyVerdict::Counterexample { assignment, witness } => (
                false,
                format!(
                    "{} fails at {:?} with {}",
                    witness.identity,
                    witness.at,
                    assignment
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(",")
                ),
            ),
        });
        rows.push(row(suite, &format!("family {} is sound", f.name), outcome));
    }
    for p in [3u32, 5, 7] {
        let field = FieldSpec::Prime(p);
        for l in [0, 1, 2] {
            let lambda = field.int(l);
            let outcome = enumerate_reynolds(BuiltinAlgebra::A1, field, &lambda).map(|rep| {
                let p = p as usize;
                let expected = if l == 0 {
                    p * p + p * (p - 1)
                } else {
                    p * p + p * (p - 2)
                };
                (
                    rep.solutions.len() == expected && rep.unmatched.is_empty(),
                    format!(
                        "{} solutions, expected {expected}, {} unmatched",
                        rep.solutions.len(),
                        rep.unmatched.len()
                    ),
                )
            });
            rows.push(row(
                suite,
                &format!("A1 Reynolds operators over F_{p}, lambda={l}"),
                outcome,
            ));
            let outcome = enumerate_reynolds(BuiltinAlgebra::A2, field, &lambda).map(|rep| {
                (
                    rep.unmatched.is_empty(),
                    format!("{} solutions, {} unmatched", rep.solutions.len(), rep.unmatched.len()),
                )
            });
            rows.push(row(
                suite,
                &format!("A2 Reynolds operators over F_{p}, lambda={l}"),
                outcome,
            ));
        }
    }
    let f3 = FieldSpec::Prime(3);
    for case in RCase::ALL {
        for l in [0, 1, 2] {
            let lambda = f3.int(l);
            let mut failures = Vec::new();
            let mut scanned = 0;
            let outcome = (|| -> Result<(bool, String)> {
                for at in r_parameter_grid(case, f3) {
                    let rep = enumerate_triangular_pairs(case, &at, f3, &lambda)?;
                    scanned += 1;
                    if !rep.is_complete() {
                        failures.push(format!(
                            "{} unmatched at {}",
                            rep.unmatched.len(),
                            at.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
                        ));
                    }
                }
                Ok(match failures.first() {
                    None => (true, format!("{scanned} r-matrices")),
                    Some(first) => (
                        false,
                        format!("{}/{scanned} incomplete, first: {first}", failures.len()),
                    ),
                })
            })();
            rows.push(row(
                suite,
                &format!("triangular pairs for {} over F_3, lambda={l}", case.name()),
                outcome,
            ));
        }
    }
    rows
}

/// Every admissible assignment of the r-matrix parameters over `F_p`.
pub fn r_parameter_grid(case: RCase, field: FieldSpec) -> Vec<Assignment> {
    let elements = field.elements().unwrap_or_default();
    let params = case.params();
    let mut out = Vec::new();
    let total = elements.len().pow(params.len() as u32);
    for mut idx in 0..total {
        let mut at = Assignment::new();
        for p in params {
            at.insert(*p, elements[idx % elements.len()].clone());
            idx /= elements.len();
        }
        if case.constraint().holds(field, &at).unwrap_or(false) {
            out.push(at);
        }
    }
    out.sort_by(|a, b| {
        a.get(&Param::Eta)
            .cmp(&b.get(&Param::Eta))
            .then(a.get(&Param::Gamma).cmp(&b.get(&Param::Gamma)))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_rows_catch_a_sign_flip() {
        for case in RCase::ALL {
            let mut sampler = Sampler::new(7);
            assert!(coboundary_golden(case, &mut sampler, coboundary_coproduct).unwrap().0);
            let flipped = |alg: &LeibnizAlgebra, r: &Matrix| {
                let d = coboundary_coproduct(alg, r)?;
                Ok(Tensor3::cube(alg.field(), alg.dim()).sub(&d))
            };
            let mut sampler = Sampler::new(7);
            assert!(!coboundary_golden(case, &mut sampler, flipped).unwrap().0);
        }
    }
}

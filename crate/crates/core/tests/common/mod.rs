//! Independent modular-arithmetic oracles. Everything here works on plain
//! `i64` residues mod a small prime and shares no code with the library
//! beyond reading its values back.

#![allow(dead_code, clippy::needless_range_loop)]

use rlk::algebra::LeibnizAlgebra;
use rlk::field::Scalar;
use rlk::linalg::{Matrix, Tensor3};

pub type M = Vec<Vec<i64>>;

pub fn residue(s: &Scalar, p: i64) -> i64 {
    let v: i64 = s.to_string().parse().expect("F_p values print as integers");
    v.rem_euclid(p)
}

pub fn mat(m: &Matrix, p: i64) -> M {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|s| residue(s, p)).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> M {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> M {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Structure constants `c[i][j][k]`: `[e_i,e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct Alg {
    pub p: i64,
    pub n: usize,
    pub c: Vec<Vec<Vec<i64>>>,
}

impl Alg {
    pub fn of(alg: &LeibnizAlgebra, p: i64) -> Alg {
        Alg::from_tensor(alg.structure(), p)
    }

    pub fn from_tensor(t: &Tensor3, p: i64) -> Alg {
        let n = t.dims()[0];
        let c = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| residue(&t[(i, j, k)], p)).collect())
                    .collect()
            })
            .collect();
        Alg { p, n, c }
    }

    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let w = x[i] * y[j] % self.p;
                if w == 0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + w * self.c[i][j][k]) % self.p;
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` on basis triples.
    pub fn is_leibniz(&self) -> bool {
        let p = self.p;
        let n = self.n;
        (0..n * n * n).all(|t| {
            let (x, y, z) = (self.basis(t / (n * n)), self.basis(t / n % n), self.basis(t % n));
            let lhs = self.bracket(&x, &self.bracket(&y, &z));
            let rhs = add(
                &self.bracket(&self.bracket(&x, &y), &z),
                &self.bracket(&y, &self.bracket(&x, &z)),
                p,
            );
            lhs == rhs
        })
    }

    /// `[Rx,Ry] + λR[Rx,Ry] = R[x,Ry] + R[Rx,y]` on basis pairs.
    pub fn is_reynolds(&self, lambda: i64, r: &M) -> bool {
        let p = self.p;
        (0..self.n * self.n).all(|t| {
            let (x, y) = (self.basis(t / self.n), self.basis(t % self.n));
            let (rx, ry) = (apply(r, &x, p), apply(r, &y, p));
            let b = self.bracket(&rx, &ry);
            let lhs = add(&b, &scale(lambda, &apply(r, &b, p), p), p);
            let rhs = apply(r, &add(&self.bracket(&x, &ry), &self.bracket(&rx, &y), p), p);
            lhs == rhs
        })
    }

    /// Both adjoint-admissibility identities for `S`.
    pub fn is_adjoint_admissible(&self, lambda: i64, r: &M, s: &M) -> bool {
        let p = self.p;
        (0..self.n * self.n).all(|t| {
            let (x, y) = (self.basis(t / self.n), self.basis(t % self.n));
            let (rx, ry, sx, sy) = (apply(r, &x, p), apply(r, &y, p), apply(s, &x, p), apply(s, &y, p));
            let l1 = add(&apply(s, &self.bracket(&x, &sy), p), &self.bracket(&rx, &sy), p);
            let r1 = add(
                &apply(s, &self.bracket(&rx, &y), p),
                &scale(lambda, &apply(s, &self.bracket(&rx, &sy), p), p),
                p,
            );
            let l2 = add(&apply(s, &self.bracket(&sx, &y), p), &self.bracket(&sx, &ry), p);
            let r2 = add(
                &apply(s, &self.bracket(&x, &ry), p),
                &scale(lambda, &apply(s, &self.bracket(&sx, &ry), p), p),
                p,
            );
            l1 == r1 && l2 == r2
        })
    }

    /// `[x,y]_R = [x,Ry] + [Rx,y] − λ[Rx,Ry]` as structure constants.
    pub fn induced(&self, lambda: i64, r: &M) -> Alg {
        let p = self.p;
        let n = self.n;
        let mut c = vec![vec![vec![0; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (self.basis(i), self.basis(j));
                let (rx, ry) = (apply(r, &x, p), apply(r, &y, p));
                let v = sub(
                    &add(&self.bracket(&x, &ry), &self.bracket(&rx, &y), p),
                    &scale(lambda, &self.bracket(&rx, &ry), p),
                    p,
                );
                c[i][j] = v;
            }
        }
        Alg { p, n, c }
    }

    /// `δ_r(e_i)` as the coefficient matrix of `e_j⊗e_k`:
    /// `−Σ r[j][k] e_j⊗[e_k,e_i] + Σ r[j][k] [e_k,e_i]⊗e_j + Σ r[j][k] [e_i,e_k]⊗e_j`.
    pub fn coboundary(&self, r: &M) -> Vec<M> {
        let (n, p) = (self.n, self.p);
        (0..n)
            .map(|i| {
                let x = self.basis(i);
                let mut d = zeros(n, n);
                for j in 0..n {
                    for k in 0..n {
                        let w = r[j][k];
                        if w == 0 {
                            continue;
                        }
                        let ek = self.basis(k);
                        let ki = self.bracket(&ek, &x);
                        let ik = self.bracket(&x, &ek);
                        for m in 0..n {
                            d[j][m] = (d[j][m] - w * ki[m]).rem_euclid(p);
                            d[m][j] = (d[m][j] + w * ki[m] + w * ik[m]).rem_euclid(p);
                        }
                    }
                }
                d
            })
            .collect()
    }

    /// `r12r23 + r13r23 − r12^τ r13 − r13^τ r12` from the product
    /// definitions `r¹⊗[r²,r̄¹]⊗r̄²`, `r¹⊗r̄¹⊗[r²,r̄²]`, `[r¹,r̄¹]⊗r²⊗r̄²`
    /// and `[r¹,r̄¹]⊗r̄²⊗r²`, the τ putting `rᵀ` in the first factor.
    pub fn clybe_defect(&self, r: &M) -> Vec<i64> {
        let (n, p) = (self.n, self.p);
        let mut out = vec![0i64; n * n * n];
        let at = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let rt = transpose(r);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for m in 0..n {
                            // r = Σ r[a][b] e_a⊗e_b, r̄ = Σ r[c][d] e_c⊗e_d
                            let w = r[a][b] * r[c][d] % p;
                            out[at(a, m, d)] += w * self.c[b][c][m];
                            out[at(a, c, m)] += w * self.c[b][d][m];
                            let wt = rt[a][b] * r[c][d] % p;
                            out[at(m, b, d)] -= wt * self.c[a][c][m];
                            out[at(m, d, b)] -= wt * self.c[a][c][m];
                        }
                    }
                }
            }
        }
        out.iter().map(|v| v.rem_euclid(p)).collect()
    }
}

pub fn add(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(p)).collect()
}

pub fn sub(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x - y).rem_euclid(p)).collect()
}

pub fn scale(s: i64, a: &[i64], p: i64) -> Vec<i64> {
    a.iter().map(|x| (s * x).rem_euclid(p)).collect()
}

pub fn apply(m: &M, v: &[i64], p: i64) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p))
        .collect()
}

pub fn mul(a: &M, b: &M, p: i64) -> M {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            out[i][j] = (0..k).map(|t| a[i][t] * b[t][j]).sum::<i64>().rem_euclid(p);
        }
    }
    out
}

pub fn madd(a: &M, b: &M, p: i64) -> M {
    a.iter().zip(b).map(|(x, y)| add(x, y, p)).collect()
}

pub fn mscale(s: i64, a: &M, p: i64) -> M {
    a.iter().map(|x| scale(s, x, p)).collect()
}

pub fn transpose(m: &M) -> M {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (0..c).map(|j| (0..r).map(|i| m[i][j]).collect()).collect()
}

/// `(A⊗B)` on a coefficient matrix `t` of `e_j⊗e_k`.
pub fn tensor_apply(a: &M, b: &M, t: &M, p: i64) -> M {
    mul(&mul(a, t, p), &transpose(b), p)
}

/// `δ(v) = Σ v_i δ(e_i)`.
pub fn coproduct_at(delta: &[M], v: &[i64], p: i64) -> M {
    let n = delta.len();
    let mut out = zeros(n, n);
    for (i, d) in delta.iter().enumerate() {
        out = madd(&out, &mscale(v[i], d, p), p);
    }
    out
}

/// `(S⊗S)δ + λ(S⊗S)δS = (S⊗id)δS + (id⊗S)δS`.
pub fn reynolds_coalgebra(delta: &[M], lambda: i64, s: &M, p: i64) -> bool {
    let n = delta.len();
    let id = identity(n);
    (0..n).all(|i| {
        let mut x = vec![0; n];
        x[i] = 1;
        let dx = coproduct_at(delta, &x, p);
        let dsx = coproduct_at(delta, &apply(s, &x, p), p);
        let lhs = madd(
            &tensor_apply(s, s, &dx, p),
            &mscale(lambda, &tensor_apply(s, s, &dsx, p), p),
            p,
        );
        let rhs = madd(&tensor_apply(s, &id, &dsx, p), &tensor_apply(&id, s, &dsx, p), p);
        lhs == rhs
    })
}

/// `(id⊗R)δR + (S⊗R)δ = (S⊗id)δR + λ(S⊗R)δR`.
pub fn compatibility_right(delta: &[M], lambda: i64, r: &M, s: &M, p: i64) -> bool {
    let n = delta.len();
    let id = identity(n);
    (0..n).all(|i| {
        let mut x = vec![0; n];
        x[i] = 1;
        let dx = coproduct_at(delta, &x, p);
        let drx = coproduct_at(delta, &apply(r, &x, p), p);
        let lhs = madd(&tensor_apply(&id, r, &drx, p), &tensor_apply(s, r, &dx, p), p);
        let rhs = madd(
            &tensor_apply(s, &id, &drx, p),
            &mscale(lambda, &tensor_apply(s, r, &drx, p), p),
            p,
        );
        lhs == rhs
    })
}

/// `(R⊗id)δR + (R⊗S)δ = (id⊗S)δR + λ(R⊗S)δR`.
pub fn compatibility_left(delta: &[M], lambda: i64, r: &M, s: &M, p: i64) -> bool {
    let n = delta.len();
    let id = identity(n);
    (0..n).all(|i| {
        let mut x = vec![0; n];
        x[i] = 1;
        let dx = coproduct_at(delta, &x, p);
        let drx = coproduct_at(delta, &apply(r, &x, p), p);
        let lhs = madd(&tensor_apply(r, &id, &drx, p), &tensor_apply(r, s, &dx, p), p);
        let rhs = madd(
            &tensor_apply(&id, s, &drx, p),
            &mscale(lambda, &tensor_apply(r, s, &drx, p), p),
            p,
        );
        lhs == rhs
    })
}

/// Coefficient matrices of a library coproduct tensor, one per basis element.
pub fn delta_of(d: &Tensor3, p: i64) -> Vec<M> {
    let n = d.dims()[0];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| residue(&d[(i, j, k)], p)).collect())
                .collect()
        })
        .collect()
}

/// The cLYBe plus `S·r = r·Rᵀ` and `r·Sᵀ = R·r`.
pub fn admissible_clybe(alg: &Alg, r_op: &M, s: &M, r: &M) -> bool {
    let p = alg.p;
    alg.clybe_defect(r).iter().all(|v| *v == 0)
        && mul(s, r, p) == mul(r, &transpose(r_op), p)
        && mul(r, &transpose(s), p) == mul(r_op, r, p)
}

/// Actions `ρL(e_i)`, `ρR(e_i)` as `m×m` matrices.
#[derive(Debug, Clone)]
pub struct Actions {
    pub left: Vec<M>,
    pub right: Vec<M>,
}

impl Actions {
    fn combine(ms: &[M], x: &[i64], p: i64) -> M {
        let m = ms[0].len();
        let mut out = zeros(m, m);
        for (i, a) in ms.iter().enumerate() {
            out = madd(&out, &mscale(x[i], a, p), p);
        }
        out
    }

    pub fn left_at(&self, x: &[i64], p: i64) -> M {
        Actions::combine(&self.left, x, p)
    }

    pub fn right_at(&self, x: &[i64], p: i64) -> M {
        Actions::combine(&self.right, x, p)
    }

    /// `(V*, −ρLᵀ, ρLᵀ + ρRᵀ)`.
    pub fn dual(&self, p: i64) -> Actions {
        Actions {
            left: self.left.iter().map(|l| mscale(-1, &transpose(l), p)).collect(),
            right: self
                .left
                .iter()
                .zip(&self.right)
                .map(|(l, r)| madd(&transpose(l), &transpose(r), p))
                .collect(),
        }
    }

    /// The three representation identities.
    pub fn is_representation(&self, alg: &Alg) -> bool {
        let p = alg.p;
        let n = alg.n;
        (0..n * n).all(|t| {
            let (i, j) = (t / n, t % n);
            let xy = alg.bracket(&alg.basis(i), &alg.basis(j));
            let (lx, ly, rx, ry) = (&self.left[i], &self.left[j], &self.right[i], &self.right[j]);
            let comm = |a: &M, b: &M| madd(&mul(a, b, p), &mscale(-1, &mul(b, a, p), p), p);
            self.left_at(&xy, p) == comm(lx, ly)
                && self.right_at(&xy, p) == comm(lx, ry)
                && mscale(-1, &mul(ry, lx, p), p) == mul(ry, rx, p)
        })
    }

    /// Both Reynolds-representation identities for `α`.
    pub fn is_reynolds_representation(&self, alg: &Alg, lambda: i64, r: &M, alpha: &M) -> bool {
        let p = alg.p;
        (0..alg.n).all(|i| {
            let x = alg.basis(i);
            let rx = apply(r, &x, p);
            let side = |rho_rx: &M, rho_x: &M| {
                let lhs = madd(
                    &mul(rho_rx, alpha, p),
                    &mscale(lambda, &mul(&mul(alpha, rho_rx, p), alpha, p), p),
                    p,
                );
                let rhs = madd(&mul(alpha, rho_rx, p), &mul(&mul(alpha, rho_x, p), alpha, p), p);
                lhs == rhs
            };
            side(&self.left_at(&rx, p), &self.left[i]) && side(&self.right_at(&rx, p), &self.right[i])
        })
    }

    /// `[Tu,Tv] = T(ρL(Tu)v + ρR(Tv)u)` and `RT = Tα`.
    pub fn is_weak_o_operator(&self, alg: &Alg, t: &M, r: &M, alpha: &M) -> bool {
        let p = alg.p;
        let m = alpha.len();
        let unit = |i: usize| {
            let mut v = vec![0; m];
            v[i] = 1;
            v
        };
        let bracket_ok = (0..m * m).all(|k| {
            let (u, v) = (unit(k / m), unit(k % m));
            let (tu, tv) = (apply(t, &u, p), apply(t, &v, p));
            let lhs = alg.bracket(&tu, &tv);
            let inner = add(
                &apply(&self.left_at(&tu, p), &v, p),
                &apply(&self.right_at(&tv, p), &u, p),
                p,
            );
            lhs == apply(t, &inner, p)
        });
        bracket_ok && mul(r, t, p) == mul(t, alpha, p)
    }
}

/// Every `rows×cols` matrix over `F_p`, lexicographically.
pub fn all_matrices(p: i64, rows: usize, cols: usize) -> Vec<M> {
    let cells = rows * cols;
    let total = (p as usize).pow(cells as u32);
    (0..total)
        .map(|mut idx| {
            let mut m = zeros(rows, cols);
            for cell in (0..cells).rev() {
                m[cell / cols][cell % cols] = (idx % p as usize) as i64;
                idx /= p as usize;
            }
            m
        })
        .collect()
}

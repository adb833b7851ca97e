use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Matrix, Rational};

use super::counts::aht_count;
use super::young::YoungDiagram;

/// `[h_0(z), …, h_k(z)]` (complete homogeneous) or `[e_0, …, e_k]` (elementary).
fn symmetric_basis(z: &[CycNum], k: usize, elementary: bool) -> Vec<CycNum> {
    let mut v = vec![CycNum::zero(); k + 1];
    v[0] = CycNum::one();
    for x in z {
        if elementary {
            for d in (1..=k).rev() {
                v[d] = v[d].clone() + x.clone() * &v[d - 1];
            }
        } else {
            for d in 1..=k {
                v[d] = v[d].clone() + x.clone() * &v[d - 1];
            }
        }
    }
    v
}

fn jacobi_trudi(rows: &[u32], basis: &[CycNum]) -> CycNum {
    let n = rows.len();
    if n == 0 {
        return CycNum::one();
    }
    let m = Matrix::from_rows(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let k = rows[i] as i64 - i as i64 + j as i64;
                        if k < 0 || k as usize >= basis.len() {
                            CycNum::zero()
                        } else {
                            basis[k as usize].clone()
                        }
                    })
                    .collect()
            })
            .collect(),
    );
    m.det_division_free()
}

/// `s_λ(z)` by the Jacobi–Trudi determinant in `h` or, when `λ` has more rows
/// than columns, the dual form in `e`. Valid at repeated points.
pub fn schur_eval(lambda: &YoungDiagram, z: &[CycNum]) -> CycNum {
    if lambda.len() > z.len() {
        return CycNum::zero();
    }
    let conj = lambda.conjugate();
    if conj.len() < lambda.len() {
        let e = symmetric_basis(z, lambda.len() + conj.len(), true);
        jacobi_trudi(conj.rows(), &e)
    } else {
        let h = symmetric_basis(z, lambda.rows().first().copied().unwrap_or(0) as usize + lambda.len(), false);
        jacobi_trudi(lambda.rows(), &h)
    }
}

/// `det(z_i^{λ_j + N − j}) / det(z_i^{N − j})`, requiring distinct points.
pub fn schur_bialternant(lambda: &YoungDiagram, z: &[CycNum]) -> Result<CycNum> {
    let n = z.len();
    if lambda.len() > n {
        return Ok(CycNum::zero());
    }
    let part = |j: usize| lambda.rows().get(j).copied().unwrap_or(0) as i32;
    let alt = |shift: &dyn Fn(usize) -> i32| {
        Matrix::from_rows(
            z.iter()
                .map(|x| (0..n).map(|j| x.powi(shift(j) + (n - 1 - j) as i32).expect("nonnegative power")).collect())
                .collect(),
        )
        .det()
    };
    let num = alt(&part);
    let den = alt(&|_| 0);
    if den.is_zero() {
        return Err(Error::SingularEvaluation("repeated points in bialternant".into()));
    }
    num.div(&den)
}

/// Dimension of the `GL(N)` irreducible with highest weight `λ` (Weyl).
pub fn gl_dim(lambda: &YoungDiagram, n: usize) -> BigInt {
    if lambda.len() > n {
        return BigInt::zero();
    }
    let part = |i: usize| lambda.rows().get(i).copied().unwrap_or(0) as i64;
    let mut r = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            r *= Rational::new(
                BigInt::from(part(i) - part(j) + (j - i) as i64),
                BigInt::from((j - i) as i64),
            );
        }
    }
    assert!(r.is_integer());
    r.to_integer()
}

fn three_pow(e: u64) -> BigInt {
    BigInt::from(3).pow(e as u32)
}

/// Okada's identity: `A_HT(2n+1) = 3^{−n²} (dim Y'_n)²` and
/// `A_HT(2n) = 3^{−n(n−1)} dim Y_n · dim Y'_n`, dimensions taken for `GL(L)`.
pub fn okada_check(l: u64) -> bool {
    let n = l / 2;
    let lhs = aht_count(l);
    let primed = gl_dim(&YoungDiagram::staircase_primed(n as u32), l as usize);
    let rhs = if l % 2 == 1 {
        Rational::new(primed.clone() * primed, three_pow(n * n))
    } else {
        let plain = gl_dim(&YoungDiagram::staircase_plain(n as u32), l as usize);
        Rational::new(plain * primed, three_pow(n * (n - 1)))
    };
    rhs == Rational::from_integer(lhs)
}

/// Sum-rule right-hand sides. `L` is taken from `z.len()`.
pub fn odd_sum_rule(z: &[CycNum]) -> CycNum {
    let n = (z.len() / 2) as u32;
    let c = Rational::new(BigInt::one(), three_pow((n * n) as u64));
    schur_eval(&YoungDiagram::staircase_full(n), z) * schur_eval(&YoungDiagram::staircase_primed(n), z).scale(&c)
}

pub fn punctured_sum_rule(z: &[CycNum]) -> CycNum {
    let n = (z.len() / 2) as u32;
    let c = Rational::new(BigInt::one(), three_pow((n * (n - 1)) as u64));
    schur_eval(&YoungDiagram::staircase_plain(n), z) * schur_eval(&YoungDiagram::staircase_primed(n), z).scale(&c)
}

pub fn even_sum_rule(z: &[CycNum]) -> CycNum {
    let n = (z.len() / 2) as u32;
    let c = Rational::new(BigInt::one(), three_pow((n * (n - 1) / 2) as u64));
    schur_eval(&YoungDiagram::staircase_plain(n), z).scale(&c)
}

/// Evidence that `s_{Y_{n+1}}` and `s_{Y'_n}` share no factor: along random
/// rational lines both restrictions are nonzero and have nonzero resultant.
/// A hypothesis check only; it cannot prove coprimality.
#[derive(Clone, Debug, Serialize)]
pub struct CommonFactorReport {
    pub n: u32,
    pub lines: usize,
    pub coprime_on_all_lines: bool,
}

/// Coefficients of `x ↦ f(a + b·x)` for a polynomial `f` of degree `≤ d`.
fn restrict_to_line(d: u32, f: impl Fn(&[CycNum]) -> CycNum + Sync + Send, a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let poly = crate::exactnum::MPoly::interpolate_grid(1, &[d], crate::exec::Exec::Sequential, |x| {
        let pt: Vec<CycNum> = a.iter().zip(b).map(|(ai, bi)| ai.clone() + bi.clone() * &x[0]).collect();
        Ok(f(&pt))
    })
    .expect("finite evaluation");
    (0..=d).map(|k| poly.coeff(&[k])).collect()
}

fn trim(mut v: Vec<CycNum>) -> Vec<CycNum> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Sylvester resultant of two univariate polynomials (ascending coefficients).
pub fn resultant(f: &[CycNum], g: &[CycNum]) -> CycNum {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    let (m, n) = (f.len() - 1, g.len() - 1);
    if m + n == 0 {
        return CycNum::one();
    }
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    s.det()
}

pub fn common_factor_heuristic(n: u32, lines: usize, rng: &mut impl Rng) -> CommonFactorReport {
    let l = 2 * n as usize + 1;
    let full = YoungDiagram::staircase_full(n);
    let primed = YoungDiagram::staircase_primed(n);
    let mut ok = true;
    for _ in 0..lines {
        let a: Vec<CycNum> = (0..l).map(|_| CycNum::integer(rng.gen_range(-9..=9))).collect();
        let b: Vec<CycNum> = (0..l).map(|_| CycNum::integer(rng.gen_range(1..=9))).collect();
        let f = restrict_to_line(full.size(), |z| schur_eval(&full, z), &a, &b);
        let g = restrict_to_line(primed.size(), |z| schur_eval(&primed, z), &a, &b);
        if trim(f.clone()).len() == 1 && f[0].is_zero() || resultant(&f, &g).is_zero() {
            ok = false;
        }
    }
    CommonFactorReport { n, lines, coprime_on_all_lines: ok }
}

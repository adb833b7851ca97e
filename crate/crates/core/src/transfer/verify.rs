use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LoopRing, MPoly, Matrix, Rational, Scalar};
use crate::exec::Exec;
use crate::linkpat::{projection_matrix, Basis, Kind, LinkPattern, Projection};
use crate::schur::{self, YoungDiagram};

use super::eigen::{eigenvector_any, EigvecRecord};
use super::param::{rhat_coeffs, Param};
use super::row::{build_rhat, build_transfer};

fn solve(kind: Kind, z: &[Param], t: &Param, exec: Exec) -> Result<EigvecRecord> {
    eigenvector_any(kind, z, Some(t), exec)
}

/// `Ř_{i,i+1}(z_i, z_{i+1}) Ψ(z) = Ψ(τ_i z)`, with `i = L` joining `L` and `1`.
pub fn verify_exchange(rec: &EigvecRecord, i: usize, exec: Exec) -> Result<bool> {
    let l = rec.size;
    let j = i % l + 1;
    let mut zs = rec.z.clone();
    zs.swap(i - 1, j - 1);
    let other = solve(rec.kind, &zs, &rec.t, exec)?;
    let basis = rec.basis()?;
    let r = build_rhat(&basis, i, &rec.z[i - 1], &rec.z[j - 1])?;
    Ok(r.mul_vec(&rec.components) == other.components)
}

/// `Ψ_π(z_2, …, z_L, z_1) = Ψ_{σπ}(z)`, where `σ` relabels `i → i+1`.
pub fn verify_cyclic(rec: &EigvecRecord, exec: Exec) -> Result<bool> {
    let l = rec.size;
    let zs: Vec<Param> = (0..l).map(|k| rec.z[(k + 1) % l].clone()).collect();
    let other = solve(rec.kind, &zs, &rec.t, exec)?;
    let basis = rec.basis()?;
    for (k, p) in basis.patterns().iter().enumerate() {
        let back = p.rotate_by(1);
        if other.components[k] != rec.components[basis.position(&back)] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Prefactor of the recursion at `z_{i+1} = q⁻² z_i`:
/// `−3^{2−L} q⁻¹z_i ∏_{j<i} (q⁻¹z_j − q z_i)(q z_j − z_i) ∏_{j>i+1} (q⁻¹z_{i+1} − q z_j)(z_{i+1} − q⁻¹z_j)`.
pub fn recursion_prefactor(z: &[CycNum], i: usize) -> CycNum {
    let l = z.len() as i64;
    let q = CycNum::q();
    let qi = CycNum::inv_q();
    let zi = &z[i - 1];
    let zi1 = &z[i];
    let mut acc = qi.clone() * zi;
    for zj in &z[..i - 1] {
        acc = acc * (qi.clone() * zj - q.clone() * zi) * (q.clone() * zj - zi);
    }
    for zj in &z[i + 1..] {
        acc = acc * (qi.clone() * zi1 - q.clone() * zj) * (zi1.clone() - qi.clone() * zj);
    }
    -acc * CycNum::integer(3).powi((2 - l) as i32).expect("nonzero")
}

/// Detailed outcome of a recursion check.
#[derive(Clone, Debug)]
pub struct RecursionReport {
    pub vanishing_ok: bool,
    pub image_ok: bool,
    pub normalization: String,
}

impl RecursionReport {
    pub fn ok(&self) -> bool {
        self.vanishing_ok && self.image_ok
    }
}

/// At `z_{i+1} = q⁻² z_i`: components outside the image of `φ_i` vanish and
/// `Ψ_{φ_i(π)}` equals the prefactor times the size `L−2` component.
/// `z` gives the free parameters; entry `i+1` (1-based) is overwritten.
pub fn verify_recursion(kind: Kind, z: &[CycNum], i: usize, exec: Exec) -> Result<RecursionReport> {
    let l = z.len();
    if kind == Kind::Even {
        return Err(Error::ConfigError("recursion is checked for odd and punctured kinds".into()));
    }
    if i == 0 || i >= l {
        return Err(Error::ConfigError(format!("recursion index {i} out of range for size {l}")));
    }
    let mut z = z.to_vec();
    z[i] = CycNum::inv_q() * CycNum::inv_q() * &z[i - 1];
    let zp: Vec<Param> = z.iter().cloned().map(Param::Val).collect();
    let t = super::eigen::default_t(&zp);
    let big = solve(kind, &zp, &t, exec)?;
    let small_z: Vec<Param> = zp
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i - 1 && *k != i)
        .map(|(_, p)| p.clone())
        .collect();
    let small = solve(kind, &small_z, &super::eigen::default_t(&small_z), exec)?;
    let pref = recursion_prefactor(&z, i);
    let basis = big.basis()?;
    let small_basis = small.basis()?;
    let mut image = vec![false; basis.dim()];
    let mut image_ok = true;
    for (k, p) in small_basis.patterns().iter().enumerate() {
        let img = p.insert_little_arch(i)?;
        let idx = basis.position(&img);
        image[idx] = true;
        if big.components[idx] != pref.clone() * &small.components[k] {
            image_ok = false;
        }
    }
    let vanishing_ok = big
        .components
        .iter()
        .zip(&image)
        .all(|(c, &inside)| inside || c.is_zero());
    Ok(RecursionReport {
        vanishing_ok,
        image_ok,
        normalization: format!("{} / {}", big.normalization, small.normalization),
    })
}

/// `Σ_{π'≠π, e_iπ'=π} Ψ_{π'} = −(q z_{i+1} − q⁻¹ z_i) ∂_iΨ_π` for every `π`
/// with a little arch at `(i, i+1)`, on polynomial components.
pub fn verify_component_equation_poly(kind: Kind, polys: &[MPoly], i: usize) -> Result<bool> {
    let l = polys[0].nvars();
    let basis = Basis::get(kind, l)?;
    let q = CycNum::q();
    let qi = CycNum::inv_q();
    let factor = -(MPoly::var(l, i).scale(&q) - MPoly::var(l, i - 1).scale(&qi));
    for (k, p) in basis.patterns().iter().enumerate() {
        if !p.has_little_arch(i) {
            continue;
        }
        let mut lhs = MPoly::zero(l);
        for (k2, p2) in basis.patterns().iter().enumerate() {
            if k2 != k && p2.apply_e(i)?.pattern == *p {
                lhs = lhs + polys[k2].clone();
            }
        }
        let rhs = &factor * &polys[k].divided_difference(i);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pointwise form of the component equation, using the exchanged solve for ∂_i.
pub fn verify_component_equation_point(rec: &EigvecRecord, i: usize, exec: Exec) -> Result<bool> {
    let l = rec.size;
    if i == 0 || i >= l {
        return Err(Error::ConfigError("component equation needs 1 ≤ i < L".into()));
    }
    let (zi, zj) = match (rec.z[i - 1].value(), rec.z[i].value()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::ConfigError("finite parameters required".into())),
    };
    if zi == zj {
        return Err(Error::SingularEvaluation("z_i = z_{i+1}".into()));
    }
    let mut zs = rec.z.clone();
    zs.swap(i - 1, i);
    let other = solve(rec.kind, &zs, &rec.t, exec)?;
    let basis = rec.basis()?;
    let q = CycNum::q();
    let qi = CycNum::inv_q();
    let factor = -(q * &zj - qi * &zi);
    let inv_gap = (zj.clone() - &zi).try_inv()?;
    for (k, p) in basis.patterns().iter().enumerate() {
        if !p.has_little_arch(i) {
            continue;
        }
        let mut lhs = CycNum::zero();
        for (k2, p2) in basis.patterns().iter().enumerate() {
            if k2 != k && p2.apply_e(i)?.pattern == *p {
                lhs = lhs + &rec.components[k2];
            }
        }
        let dd = (other.components[k].clone() - &rec.components[k]) * &inv_gap;
        if lhs != factor.clone() * &dd {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Source kind and the target of a size-raising projection.
pub fn projection_target(kind: Kind) -> Result<Kind> {
    match kind {
        Kind::Odd => Ok(Kind::Even),
        Kind::Punctured => Ok(Kind::Odd),
        Kind::Even => Err(Error::SizeParityMismatch {
            size: 0,
            what: "projection source (odd or punctured)",
        }),
    }
}

/// `P T(z) = T(z, •) P` with `• = 0` for `P₀` and `∞` for `P∞`.
pub fn verify_intertwining(kind: Kind, z: &[Param], t: &Param, variant: Projection, exec: Exec) -> Result<bool> {
    let target = projection_target(kind)?;
    let p: Matrix<CycNum> = projection_matrix(kind, z.len(), variant)?;
    let small = build_transfer(kind, z, t, exec)?;
    let mut zb = z.to_vec();
    zb.push(extra_param(variant));
    let big = build_transfer(target, &zb, t, exec)?;
    Ok(p.mul(&small.matrix) == big.matrix.mul(&p))
}

pub fn extra_param(variant: Projection) -> Param {
    match variant {
        Projection::P0 => Param::zero(),
        Projection::Pinf => Param::Inf,
    }
}

/// Solves the larger system with the extra parameter at `0` or `∞` and returns
/// `(P·Ψ_small, Ψ_big)`; for `∞` the larger vector is the leading coefficient.
pub fn projection_pair(
    kind: Kind,
    z: &[Param],
    t: &Param,
    variant: Projection,
    exec: Exec,
) -> Result<(Vec<CycNum>, Vec<CycNum>)> {
    let target = projection_target(kind)?;
    let small = solve(kind, z, t, exec)?;
    let p: Matrix<CycNum> = projection_matrix(kind, z.len(), variant)?;
    let mut zb = z.to_vec();
    zb.push(extra_param(variant));
    let big = super::eigen::pf_eigenvector(&build_transfer(target, &zb, t, exec)?)?;
    Ok((p.mul_vec(&small.components), big.components))
}

/// If `a = c·b` for a scalar `c`, returns `c`.
pub fn proportionality(a: &[CycNum], b: &[CycNum]) -> Option<CycNum> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = a[k].div(&b[k]).ok()?;
    a.iter().zip(b).all(|(x, y)| *x == c.clone() * y).then_some(c)
}

/// Coefficient column sums of a transfer matrix (all 1 at the RS point).
pub fn column_sums_are_one(m: &Matrix<CycNum>) -> bool {
    (0..m.cols()).all(|c| m.column(c).into_iter().fold(CycNum::zero(), |a, x| a + x) == CycNum::one())
}

/// Eigenvector at two values of `t` agree after normalization.
pub fn verify_t_independence(kind: Kind, z: &[Param], t1: &Param, t2: &Param, exec: Exec) -> Result<bool> {
    Ok(solve(kind, z, t1, exec)?.components == solve(kind, z, t2, exec)?.components)
}

/// Skein normalization: `−q^{3/2}·Ř(z, ∞) = t^{-1}` and `−q^{-3/2}·Ř(z, 0) = t`.
pub fn skein_from_rhat(basis: &Basis, i: usize, z: &Param) -> Result<(bool, bool)> {
    let q32 = CycNum::sqrt_q().pow(3);
    let qm32 = CycNum::inv_sqrt_q().pow(3);
    let r_inf = build_rhat(basis, i, z, &Param::Inf)?.scale(&-q32);
    let r_zero = build_rhat(basis, i, z, &Param::zero())?.scale(&-qm32);
    let under: Matrix<CycNum> = crate::linkpat::crossing_matrix(basis, i, crate::linkpat::Crossing::Under)?;
    let over: Matrix<CycNum> = crate::linkpat::crossing_matrix(basis, i, crate::linkpat::Crossing::Over)?;
    Ok((r_inf == under, r_zero == over))
}

/// Outcome of a sum-rule comparison.
#[derive(Clone, Debug, Serialize)]
pub struct SumRuleReport {
    pub kind: Kind,
    pub size: usize,
    pub sum: CycNum,
    pub expected: CycNum,
    pub ok: bool,
}

/// Right-hand side of the sum rule for the given kind at `z`.
pub fn sum_rule_rhs(kind: Kind, z: &[CycNum]) -> CycNum {
    match kind {
        Kind::Odd => schur::odd_sum_rule(z),
        Kind::Punctured => schur::punctured_sum_rule(z),
        Kind::Even => schur::even_sum_rule(z),
    }
}

/// `Σ_π Ψ_π(z)` against the Schur-function product for the kind.
pub fn verify_sum_rule(kind: Kind, z: &[CycNum], exec: Exec) -> Result<SumRuleReport> {
    let zp: Vec<Param> = z.iter().cloned().map(Param::Val).collect();
    let rec = eigenvector_any(kind, &zp, None, exec)?;
    let sum = rec.sum();
    let expected = sum_rule_rhs(kind, z);
    Ok(SumRuleReport {
        kind,
        size: z.len(),
        ok: sum == expected,
        sum,
        expected,
    })
}

/// Outcome of a projection check.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub kind: Kind,
    pub size: usize,
    pub variant: String,
    pub intertwining: bool,
    /// `c` with `P·Ψ_small = c·Ψ_big`, if the two are proportional.
    pub ratio: Option<CycNum>,
    pub expected_ratio: CycNum,
    pub ok: bool,
}

/// Predicted `c` in `P·Ψ(z) = c·Ψ(z, •)`. From odd size `2n+1` this is
/// `A₀ = 3^{−n(n−1)/2} s_{Y'_n}(z)` or `A∞ = 3^{−n(n−1)/2} s_{Y_{n+1}}(z)`;
/// from punctured size `2n` it is `1/B₀ = 3^n/(z_1⋯z_{2n})` or `1/B∞ = 3^n`.
pub fn projection_ratio(kind: Kind, z: &[CycNum], variant: Projection) -> Result<CycNum> {
    let n = (z.len() / 2) as u32;
    match kind {
        Kind::Odd => {
            let c = Rational::new(BigInt::one(), BigInt::from(3).pow(n * n.saturating_sub(1) / 2));
            let shape = match variant {
                Projection::P0 => YoungDiagram::staircase_primed(n),
                Projection::Pinf => YoungDiagram::staircase_full(n),
            };
            Ok(schur::schur_eval(&shape, z).scale(&c))
        }
        Kind::Punctured => {
            let three = CycNum::integer(3).powi(n as i32)?;
            match variant {
                Projection::P0 => three.div(&z.iter().fold(CycNum::one(), |a, x| a * x)),
                Projection::Pinf => Ok(three),
            }
        }
        Kind::Even => Err(Error::SizeParityMismatch {
            size: z.len(),
            what: "projection source (odd or punctured)",
        }),
    }
}

pub fn verify_projection(kind: Kind, z: &[CycNum], variant: Projection, exec: Exec) -> Result<ProjectionReport> {
    let zp: Vec<Param> = z.iter().cloned().map(Param::Val).collect();
    let mut all = zp.clone();
    all.push(extra_param(variant));
    let t = super::eigen::default_t(&all);
    let intertwining = verify_intertwining(kind, &zp, &t, variant, exec)?;
    let (pv, big) = projection_pair(kind, &zp, &t, variant, exec)?;
    let ratio = proportionality(&pv, &big);
    let expected_ratio = projection_ratio(kind, z, variant)?;
    Ok(ProjectionReport {
        kind,
        size: z.len(),
        variant: format!("{variant:?}"),
        intertwining,
        ok: intertwining && ratio.as_ref() == Some(&expected_ratio),
        ratio,
        expected_ratio,
    })
}

/// `a(z, t) + b(z, t) = 1` for the plaquette weights.
pub fn weights_are_stochastic(z: &Param, t: &Param) -> Result<bool> {
    let (a, b) = rhat_coeffs(z, t)?;
    Ok(a + b == CycNum::one())
}

/// Rotating the base pattern: cyclic orbit sizes of a homogeneous vector are
/// constant along rotation orbits.
pub fn rotation_invariant(rec: &EigvecRecord) -> Result<bool> {
    let basis = rec.basis()?;
    Ok(basis
        .patterns()
        .iter()
        .enumerate()
        .all(|(k, p)| rec.components[basis.position(&p.rotate())] == rec.components[k]))
}

/// The base pattern of a kind and size.
pub fn base_pattern(kind: Kind, size: usize) -> Result<LinkPattern> {
    LinkPattern::base(kind, size)
}

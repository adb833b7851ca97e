use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LoopRing, Matrix, Scalar};
use crate::exec::Exec;
use crate::linkpat::{Basis, Kind, LinkPattern};

use super::state::{SpinBasis, SpinState};

/// Sector-restricted operator; `matrix[(row, col)]` maps `domain[col]` to `codomain[row]`.
#[derive(Clone, Debug)]
pub struct SpinOperator {
    pub domain: Arc<SpinBasis>,
    pub codomain: Arc<SpinBasis>,
    pub matrix: Matrix<CycNum>,
}

impl SpinOperator {
    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        self.matrix.mul_vec(v)
    }
}

/// Two-site index in the order `++, +−, −+, −−`; the first factor is the
/// physical site and the second the auxiliary space.
fn pair_index(first_up: bool, second_up: bool) -> usize {
    2 * (!first_up as usize) + !second_up as usize
}

/// `R(z, t)` on `ℂ² ⊗ ℂ²`.
pub fn build_r_spin(z: &CycNum, t: &CycNum) -> Result<Matrix<CycNum>> {
    let q = CycNum::q();
    let qi = CycNum::inv_q();
    let den = q.clone() * t - qi.clone() * z;
    if den.is_zero() {
        return Err(Error::SingularEvaluation(format!("q·{t} − q⁻¹·{z} = 0")));
    }
    let inv = den.try_inv()?;
    let d = (q.clone() * z - qi.clone() * t) * &inv;
    let m = (z.clone() - t) * &inv;
    let qq = q - qi;
    let o = CycNum::zero();
    Ok(Matrix::from_rows(vec![
        vec![d.clone(), o.clone(), o.clone(), o.clone()],
        vec![o.clone(), m.clone(), qq.clone() * t * &inv, o.clone()],
        vec![o.clone(), qq * z * &inv, m, o.clone()],
        vec![o.clone(), o.clone(), o, d],
    ]))
}

/// Spin-side Temperley–Lieb generator on two neighbouring sites.
pub fn spin_e<R: LoopRing>() -> Matrix<R> {
    let w = R::omega_half().pow(2);
    let wi = R::inv_omega_half().pow(2);
    let mut e = Matrix::zeros(4, 4);
    e[(1, 1)] = w;
    e[(1, 2)] = R::one();
    e[(2, 1)] = R::one();
    e[(2, 2)] = wi;
    e
}

/// Twist on the auxiliary space: `diag(−q, −q⁻¹)` for even `L`, identity for odd `L`.
pub fn twist(size: usize) -> [CycNum; 2] {
    if size.is_multiple_of(2) {
        [-CycNum::q(), -CycNum::inv_q()]
    } else {
        [CycNum::one(), CycNum::one()]
    }
}

/// `T̃(t | z) = tr₀(R_{1,0}(z_1, t) ⋯ R_{L,0}(z_L, t) Ω)` on the sector with `ups` plus spins.
pub fn build_spin_transfer_sector(z: &[CycNum], t: &CycNum, ups: usize, exec: Exec) -> Result<SpinOperator> {
    let l = z.len();
    let basis = SpinBasis::sector(l, ups)?;
    let rs: Vec<Matrix<CycNum>> = z.iter().map(|zi| build_r_spin(zi, t)).collect::<Result<_>>()?;
    let omega = twist(l);
    let dim = basis.dim();
    let columns = exec.map((0..dim).collect(), |col| {
        let alpha = basis.state(col);
        let mut out = vec![CycNum::zero(); dim];
        for start in [true, false] {
            // (output bits so far, auxiliary spin) → weight
            let mut layer: HashMap<(u64, bool), CycNum> = HashMap::new();
            layer.insert((0, start), omega[!start as usize].clone());
            for (i, r) in rs.iter().enumerate().rev() {
                let a_in = alpha.up(i + 1);
                let mut next: HashMap<(u64, bool), CycNum> = HashMap::new();
                for ((prefix, aux), w) in layer {
                    let c = pair_index(a_in, aux);
                    for b_out in [true, false] {
                        for aux_out in [true, false] {
                            let x = &r[(pair_index(b_out, aux_out), c)];
                            if x.is_zero() {
                                continue;
                            }
                            let e = next.entry((prefix | (b_out as u64) << (l - 1 - i), aux_out)).or_insert_with(CycNum::zero);
                            *e = e.clone() + w.clone() * x;
                        }
                    }
                }
                layer = next;
            }
            for ((word, aux), w) in layer {
                if aux != start || w.is_zero() {
                    continue;
                }
                let k = basis
                    .index_of(&SpinState::new(l, word))
                    .expect("R conserves the number of plus spins");
                out[k] = out[k].clone() + w;
            }
        }
        out
    });
    let mut matrix = Matrix::zeros(dim, dim);
    for (col, v) in columns.into_iter().enumerate() {
        for (row, x) in v.into_iter().enumerate() {
            matrix[(row, col)] = x;
        }
    }
    Ok(SpinOperator {
        domain: basis.clone(),
        codomain: basis,
        matrix,
    })
}

/// `T̃(t | z)` on the standard sector (`s_z = 1/2` for odd `L`, `0` for even `L`).
pub fn build_spin_transfer(z: &[CycNum], t: &CycNum, exec: Exec) -> Result<SpinOperator> {
    build_spin_transfer_sector(z, t, super::state::sector_ups(z.len()), exec)
}

/// `H̃ = −½ Σ (σˣσˣ + σʸσʸ + Δσᶻσᶻ)` with `Δ = −1/2` and `σ_{L+1} = Ω⁻¹ σ_1 Ω`.
pub fn xxz_hamiltonian(size: usize) -> Result<SpinOperator> {
    let basis = SpinBasis::get(size)?;
    let dim = basis.dim();
    let mut h: Matrix<CycNum> = Matrix::zeros(dim, dim);
    let quarter = CycNum::rational(1, 4);
    // Boundary hopping phases, conjugate to σ_{L+1} = Ω σ_1 Ω⁻¹ to match the
    // product order of the transfer matrix.
    let q2 = CycNum::q().pow(2);
    let qi2 = CycNum::inv_q().pow(2);
    for (col, s) in basis.states().iter().enumerate() {
        for i in 1..=size {
            let j = i % size + 1;
            if size == 1 {
                break;
            }
            let (si, sj) = (s.up(i), s.up(j));
            let diag = if si == sj { quarter.clone() } else { -quarter.clone() };
            h[(col, col)] = h[(col, col)].clone() + diag;
            if si != sj {
                let flipped = SpinState::new(size, s.word ^ (1 << (size - i)) ^ (1 << (size - j)));
                let row = basis.position(&flipped);
                let amp = if j != 1 || size % 2 == 1 {
                    CycNum::one()
                } else if sj {
                    // + moves from site 1 to site L
                    q2.clone()
                } else {
                    qi2.clone()
                };
                h[(row, col)] = h[(row, col)].clone() - amp;
            }
        }
    }
    Ok(SpinOperator {
        domain: basis.clone(),
        codomain: basis,
        matrix: h,
    })
}

/// `Q`: appends a `−` spin, from size `2n+1` to size `2n+2`.
pub fn map_q(size: usize) -> Result<SpinOperator> {
    if size.is_multiple_of(2) {
        return Err(Error::SizeParityMismatch {
            size,
            what: "Q (odd source)",
        });
    }
    let dom = SpinBasis::get(size)?;
    let cod = SpinBasis::get(size + 1)?;
    let mut m = Matrix::zeros(cod.dim(), dom.dim());
    for (c, s) in dom.states().iter().enumerate() {
        m[(cod.position(&s.push(false)), c)] = CycNum::one();
    }
    Ok(SpinOperator {
        domain: dom,
        codomain: cod,
        matrix: m,
    })
}

/// `P_±` on the standard sector of even size: keeps states whose last spin is `±`.
pub fn proj_p(size: usize, plus: bool) -> Result<SpinOperator> {
    if size % 2 == 1 {
        return Err(Error::SizeParityMismatch {
            size,
            what: "P± (even size)",
        });
    }
    let b = SpinBasis::get(size)?;
    let mut m = Matrix::zeros(b.dim(), b.dim());
    for (k, s) in b.states().iter().enumerate() {
        if s.up(size) == plus {
            m[(k, k)] = CycNum::one();
        }
    }
    Ok(SpinOperator {
        domain: b.clone(),
        codomain: b,
        matrix: m,
    })
}

/// Orientation `(j, k)` of an arch: the vector is `ω^{1/2}|+⟩_j|−⟩_k + ω^{−1/2}|−⟩_j|+⟩_k`.
/// For even size `j > k`; for odd size `k` comes first reading cyclically
/// from the point after the defect.
fn orient(a: usize, b: usize, defect: Option<usize>) -> (usize, usize) {
    match defect {
        Some(l) if a < l && l < b => (a, b),
        _ => (b, a),
    }
}

/// `S π` as a sparse spin vector.
pub fn map_s<R: LoopRing>(p: &LinkPattern) -> Result<Vec<(SpinState, R)>> {
    if p.kind() == Kind::Punctured {
        return Err(Error::ConfigError("S is defined on disk and odd patterns only".into()));
    }
    let l = p.size();
    let defect = p.defect();
    let mut terms: Vec<(u64, R)> = vec![(defect.map_or(0, |d| 1u64 << (l - d)), R::one())];
    for (a, b) in p.pairs() {
        let (j, k) = orient(a, b, defect);
        let (bj, bk) = (1u64 << (l - j), 1u64 << (l - k));
        terms = terms
            .into_iter()
            .flat_map(|(w, c)| [(w | bj, c.clone() * &R::omega_half()), (w | bk, c * &R::inv_omega_half())])
            .collect();
    }
    Ok(terms.into_iter().map(|(w, c)| (SpinState::new(l, w), c)).collect())
}

/// Matrix of `S` from the pattern basis to the standard spin sector.
pub fn map_s_matrix<R: LoopRing>(kind: Kind, size: usize) -> Result<Matrix<R>> {
    let pb = Basis::get(kind, size)?;
    let sb = SpinBasis::get(size)?;
    let mut m = Matrix::zeros(sb.dim(), pb.dim());
    for (c, p) in pb.patterns().iter().enumerate() {
        for (s, x) in map_s::<R>(p)? {
            m[(sb.position(&s), c)] = x;
        }
    }
    Ok(m)
}

/// Kronecker product of two square matrices.
pub(crate) fn kron<R: Scalar>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let (n, m) = (a.rows(), b.rows());
    let mut out = Matrix::zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[(i * m + k, j * m + l)] = a[(i, j)].clone() * &b[(k, l)];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::LaurentG;

    fn ints(v: &[i64]) -> Vec<CycNum> {
        v.iter().map(|&x| CycNum::integer(x)).collect()
    }

    #[test]
    fn r_special_values() {
        let z = CycNum::integer(3);
        let r = build_r_spin(&z, &z).unwrap();
        let mut swap = Matrix::zeros(4, 4);
        for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(a, b)] = CycNum::one();
        }
        assert_eq!(r, swap);
        let qi = CycNum::inv_q();
        let mut r0 = Matrix::identity(4);
        r0[(0, 0)] = qi.clone();
        r0[(3, 3)] = qi.clone();
        r0[(1, 2)] = qi.clone() - CycNum::q();
        let r0 = r0.scale(&-qi);
        assert_eq!(build_r_spin(&CycNum::zero(), &CycNum::integer(5)).unwrap(), r0);
        // a + spin on the physical site stays +
        for c in [0, 1] {
            for r in [2, 3] {
                assert!(r0[(r, c)].is_zero());
            }
        }
        assert!(build_r_spin(&CycNum::q(), &CycNum::inv_q()).is_err());
    }

    #[test]
    fn rhat_is_tl_combination() {
        let (z, t) = (CycNum::integer(2), CycNum::integer(7));
        let r = build_r_spin(&z, &t).unwrap();
        let mut p = Matrix::zeros(4, 4);
        for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            p[(a, b)] = CycNum::one();
        }
        let (a, b) = crate::transfer::rhat_coeffs(&crate::transfer::Param::Val(z), &crate::transfer::Param::Val(t)).unwrap();
        let e = spin_e::<CycNum>();
        assert_eq!(r.mul(&p), Matrix::identity(4).scale(&a).add(&e.scale(&b)));
    }

    #[test]
    fn tl_relations() {
        fn check<R: LoopRing>() {
            let e = spin_e::<R>();
            assert_eq!(e.mul(&e), e.scale(&R::tau()));
            let id = Matrix::<R>::identity(2);
            let e1 = kron(&e, &id);
            let e2 = kron(&id, &e);
            assert_eq!(e1.mul(&e2).mul(&e1), e1);
            assert_eq!(e2.mul(&e1).mul(&e2), e2);
        }
        check::<CycNum>();
        check::<LaurentG>();
    }

    #[test]
    fn small_transfer() {
        let t = build_spin_transfer(&ints(&[2, 3]), &CycNum::integer(5), Exec::Sequential).unwrap();
        assert_eq!(t.matrix.rows(), 2);
        assert_eq!(t.matrix.sub(&Matrix::identity(2)).kernel().len(), 1);
        let t = build_spin_transfer(&ints(&[1, 2, 3]), &CycNum::integer(5), Exec::Sequential).unwrap();
        assert_eq!(t.matrix.sub(&Matrix::identity(3)).kernel().len(), 1);
        let a = build_spin_transfer(&ints(&[1, 2, 3, 4, 5]), &CycNum::integer(9), Exec::Parallel).unwrap();
        let b = build_spin_transfer(&ints(&[1, 2, 3, 4, 5]), &CycNum::integer(9), Exec::Sequential).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }

    #[test]
    fn s_on_one_arch() {
        let p = LinkPattern::even(2, &[(1, 2)]).unwrap();
        let v = map_s::<CycNum>(&p).unwrap();
        assert_eq!(
            v,
            vec![
                (SpinState::parse("-+").unwrap(), CycNum::omega_half()),
                (SpinState::parse("+-").unwrap(), CycNum::inv_omega_half())
            ]
        );
    }

    #[test]
    fn q_and_p() {
        let q = map_q(3).unwrap();
        let src = q.domain.position(&SpinState::parse("++-").unwrap());
        let dst = q.codomain.position(&SpinState::parse("++--").unwrap());
        assert!(q.matrix[(dst, src)].is_one());
        let (pp, pm) = (proj_p(4, true).unwrap(), proj_p(4, false).unwrap());
        assert_eq!(pp.matrix.add(&pm.matrix), Matrix::identity(6));
        assert!(pp.matrix.mul(&pm.matrix).is_zero());
        assert!(map_q(4).is_err() && proj_p(3, true).is_err());
    }
}

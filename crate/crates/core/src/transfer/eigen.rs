use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Matrix};
use crate::exec::Exec;
use crate::linkpat::{Basis, Kind, LinkPattern};

use super::param::{qdiff, Param};
use super::row::{build_transfer, TransferOperator};

/// Normalized ground state of a transfer matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigvecRecord {
    pub kind: Kind,
    pub size: usize,
    pub z: Vec<Param>,
    pub t: Param,
    /// Components in canonical pattern order.
    pub components: Vec<CycNum>,
    /// Which component was pinned and to what: "base" or "rotated-base:k".
    pub normalization: String,
}

/// Closed-form value of the base component at `z`, `∏_{i<j} (q z_j − q⁻¹ z_i)/(q − q⁻¹)`
/// (within each half for even patterns). At most one argument may be `∞`,
/// standing for the leading coefficient in that variable.
pub fn base_value(kind: Kind, z: &[Param]) -> CycNum {
    let l = z.len();
    let c = CycNum::q_minus_inv_q().try_inv().expect("q ≠ q⁻¹");
    let mut acc = CycNum::one();
    let ranges: Vec<std::ops::Range<usize>> = match kind {
        Kind::Even => vec![0..l / 2, l / 2..l],
        _ => vec![0..l],
    };
    for r in ranges {
        for i in r.clone() {
            for j in i + 1..r.end {
                acc = acc * qdiff(&z[j], &z[i]) * &c;
            }
        }
    }
    acc
}

/// The `k`-th rotation of the base pattern together with its closed-form
/// value, obtained from the cyclic covariance of the ground state.
pub fn rotated_base(kind: Kind, z: &[Param], k: usize) -> Result<(LinkPattern, CycNum)> {
    let l = z.len();
    let p = LinkPattern::base(kind, l)?.rotate_by(k);
    // Ψ_{σ^k π₀}(z) = Ψ_{π₀}(z_{1+k}, …, z_L, z_1, …, z_k).
    let shifted: Vec<Param> = (0..l).map(|j| z[(j + k) % l].clone()).collect();
    Ok((p, base_value(kind, &shifted)))
}

/// One-dimensional kernel of `T − I`.
pub fn kernel_vector(t: &TransferOperator) -> Result<Vec<CycNum>> {
    let m = t.matrix.sub(&Matrix::identity(t.basis.dim()));
    let mut k = m.kernel();
    if k.len() != 1 {
        return Err(Error::DegeneratePoint { dim: k.len() });
    }
    Ok(k.pop().expect("one vector"))
}

fn pin(v: Vec<CycNum>, idx: usize, value: &CycNum) -> Result<Vec<CycNum>> {
    if v[idx].is_zero() {
        return Err(Error::BaseComponentZero);
    }
    let s = value.div(&v[idx])?;
    Ok(v.into_iter().map(|x| x * &s).collect())
}

/// Ground state normalized by the base component.
pub fn pf_eigenvector(t: &TransferOperator) -> Result<EigvecRecord> {
    let v = kernel_vector(t)?;
    let base = LinkPattern::base(t.kind, t.size)?;
    let value = base_value(t.kind, &t.z);
    if value.is_zero() {
        return Err(Error::BaseComponentZero);
    }
    let components = pin(v, t.basis.position(&base), &value)?;
    Ok(EigvecRecord {
        kind: t.kind,
        size: t.size,
        z: t.z.clone(),
        t: t.t.clone(),
        components,
        normalization: "base".into(),
    })
}

/// Ground state pinned by the first rotated base component that does not
/// vanish at `z`.
pub fn pf_eigenvector_any(t: &TransferOperator) -> Result<EigvecRecord> {
    let v = kernel_vector(t)?;
    for k in 0..t.size {
        let (p, value) = rotated_base(t.kind, &t.z, k)?;
        let idx = t.basis.position(&p);
        if value.is_zero() || v[idx].is_zero() {
            continue;
        }
        return Ok(EigvecRecord {
            kind: t.kind,
            size: t.size,
            z: t.z.clone(),
            t: t.t.clone(),
            components: pin(v, idx, &value)?,
            normalization: if k == 0 { "base".into() } else { format!("rotated-base:{k}") },
        });
    }
    Err(Error::BaseComponentZero)
}

/// Solves for the ground state at `z`; `t` defaults to a value avoiding the poles.
pub fn eigenvector(kind: Kind, z: &[Param], t: Option<&Param>, exec: Exec) -> Result<EigvecRecord> {
    let t = match t {
        Some(t) => t.clone(),
        None => default_t(z),
    };
    pf_eigenvector(&build_transfer(kind, z, &t, exec)?)
}

/// Like [`eigenvector`] but falls back to a rotated base normalization.
pub fn eigenvector_any(kind: Kind, z: &[Param], t: Option<&Param>, exec: Exec) -> Result<EigvecRecord> {
    let t = match t {
        Some(t) => t.clone(),
        None => default_t(z),
    };
    pf_eigenvector_any(&build_transfer(kind, z, &t, exec)?)
}

/// Smallest integer `t ≥ 2` with `qt − q⁻¹z_i ≠ 0` and `T − I` nondegenerate
/// denominators for every finite `z_i`.
pub fn default_t(z: &[Param]) -> Param {
    (2i64..)
        .map(Param::int)
        .find(|t| z.iter().all(|zi| super::param::rhat_coeffs(zi, t).is_ok()))
        .expect("some t works")
}

pub fn homogeneous(kind: Kind, size: usize, exec: Exec) -> Result<EigvecRecord> {
    eigenvector(kind, &vec![Param::int(1); size], Some(&Param::int(2)), exec)
}

impl EigvecRecord {
    pub fn basis(&self) -> Result<std::sync::Arc<Basis>> {
        Basis::get(self.kind, self.size)
    }

    pub fn component(&self, p: &LinkPattern) -> Result<CycNum> {
        Ok(self.components[self.basis()?.position(p)].clone())
    }

    pub fn sum(&self) -> CycNum {
        self.components.iter().fold(CycNum::zero(), |a, x| a + x)
    }

    /// Primitive positive integer vector proportional to the components, if
    /// they are all rational of one sign.
    pub fn integer_form(&self) -> Option<Vec<BigInt>> {
        integer_form(&self.components)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis = self.basis().expect("record basis");
        let comps: Vec<serde_json::Value> = basis
            .patterns()
            .iter()
            .zip(&self.components)
            .map(|(p, c)| serde_json::json!({ "pattern": p.to_json(), "key": p.key(), "value": c }))
            .collect();
        let mut v = serde_json::json!({
            "schema": "o1loop.eigvec/1",
            "kind": self.kind,
            "size": self.size,
            "z": self.z,
            "t": self.t,
            "normalization": self.normalization,
            "components": comps,
        });
        if let Some(ints) = self.integer_form() {
            v["integer_form"] = serde_json::json!(ints.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        v
    }
}

pub fn integer_form(v: &[CycNum]) -> Option<Vec<BigInt>> {
    let rats: Vec<_> = v.iter().map(|x| x.to_rational()).collect::<Option<Vec<_>>>()?;
    let lcm = rats.iter().fold(BigInt::one(), |a, r| a.lcm(r.denom()));
    let lcm_r = crate::exactnum::Rational::from_integer(lcm);
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm_r).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if g.is_zero() {
        return None;
    }
    let neg = ints.iter().any(|x| x.is_negative());
    let pos = ints.iter().any(|x| x.is_positive());
    if neg && pos {
        return None;
    }
    Some(ints.into_iter().map(|x| (x / &g).abs()).collect())
}

/// Sorted multiset of values as `(value, multiplicity)`, largest first.
pub fn multiplicities(v: &[BigInt]) -> Vec<(BigInt, usize)> {
    let mut m: std::collections::BTreeMap<BigInt, usize> = Default::default();
    for x in v {
        *m.entry(x.clone()).or_default() += 1;
    }
    m.into_iter().rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::LoopRing;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn homogeneous_small() {
        let r = homogeneous(Kind::Odd, 3, Exec::Sequential).unwrap();
        assert_eq!(r.integer_form().unwrap(), ints(&[1, 1, 1]));
        let r = homogeneous(Kind::Odd, 1, Exec::Sequential).unwrap();
        assert_eq!(r.components, vec![CycNum::one()]);
        let r = homogeneous(Kind::Punctured, 2, Exec::Sequential).unwrap();
        assert_eq!(r.integer_form().unwrap(), ints(&[1, 1]));
    }

    #[test]
    fn homogeneous_five() {
        let r = homogeneous(Kind::Odd, 5, Exec::Parallel).unwrap();
        let m = multiplicities(&r.integer_form().unwrap());
        assert_eq!(m, vec![(BigInt::from(4), 5), (BigInt::from(1), 5)]);
    }

    #[test]
    fn integer_form_rules() {
        let v = vec![CycNum::rational(1, 2), CycNum::integer(2)];
        assert_eq!(integer_form(&v).unwrap(), ints(&[1, 4]));
        assert!(integer_form(&[CycNum::zeta()]).is_none());
        assert!(integer_form(&[CycNum::integer(1), CycNum::integer(-1)]).is_none());
        assert_eq!(<CycNum as LoopRing>::tau(), CycNum::one());
    }
}

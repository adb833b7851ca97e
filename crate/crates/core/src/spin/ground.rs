use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LoopRing, Matrix, Scalar};
use crate::exec::Exec;
use crate::linkpat::Kind;
use crate::transfer::{base_value, default_t, values, Param};

use super::ops::build_spin_transfer;
use super::state::{sector_ups, SpinBasis, SpinState};

/// Ground state of `T̃` on the standard sector, in word order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinRecord {
    pub size: usize,
    pub z: Vec<CycNum>,
    pub t: CycNum,
    pub components: Vec<CycNum>,
}

/// The separated state `+⋯+−⋯−` of the standard sector.
pub fn base_state(size: usize) -> SpinState {
    SpinState::separated(size, sector_ups(size))
}

/// Closed form of the separated-state component.
///
/// Even `L = 2n`: `ω^{−n/2} Φ_{π₀}(z)`, the image under `S` of the disk base
/// component. Odd `L = 2n+1`: `(√3 ω^{−1/2})^n Φ_{π₀}(z_1, …, z_{2n+1}, 0)`,
/// which is `1` in the homogeneous limit.
pub fn spin_base_value(z: &[CycNum]) -> CycNum {
    let l = z.len();
    let n = (l / 2) as u32;
    if l.is_multiple_of(2) {
        CycNum::inv_omega_half().pow(n) * base_value(Kind::Even, &values(z))
    } else {
        let mut full = values(z);
        full.push(Param::zero());
        (CycNum::sqrt3() * CycNum::inv_omega_half()).pow(n) * base_value(Kind::Even, &full)
    }
}

/// Kernel of `T̃ − I`, pinned by [`spin_base_value`] on `+⋯+−⋯−`.
pub fn spin_ground_state(z: &[CycNum], t: Option<&CycNum>, exec: Exec) -> Result<SpinRecord> {
    let l = z.len();
    let t = match t {
        Some(t) => t.clone(),
        None => match default_t(&values(z)) {
            Param::Val(v) => v,
            Param::Inf => unreachable!("default t is finite"),
        },
    };
    let op = build_spin_transfer(z, &t, exec)?;
    let dim = op.domain.dim();
    let mut k = op.matrix.sub(&Matrix::identity(dim)).kernel();
    if k.len() != 1 {
        return Err(Error::DegeneratePoint { dim: k.len() });
    }
    let v = k.pop().expect("one vector");
    let idx = op.domain.position(&base_state(l));
    let value = spin_base_value(z);
    if value.is_zero() || v[idx].is_zero() {
        return Err(Error::BaseComponentZero);
    }
    let s = value.div(&v[idx])?;
    Ok(SpinRecord {
        size: l,
        z: z.to_vec(),
        t,
        components: v.into_iter().map(|x| x * &s).collect(),
    })
}

/// Ground state at `z_i = 1`, `t = 2`.
pub fn spin_homogeneous(size: usize, exec: Exec) -> Result<SpinRecord> {
    spin_ground_state(&vec![CycNum::integer(1); size], Some(&CycNum::integer(2)), exec)
}

impl SpinRecord {
    pub fn basis(&self) -> Result<std::sync::Arc<SpinBasis>> {
        SpinBasis::get(self.size)
    }

    pub fn component(&self, s: &SpinState) -> Result<CycNum> {
        Ok(self.components[self.basis()?.position(s)].clone())
    }

    pub fn sum(&self) -> CycNum {
        self.components.iter().fold(CycNum::zero(), |a, x| a + x)
    }

    pub fn sum_squares(&self) -> CycNum {
        self.components.iter().fold(CycNum::zero(), |a, x| a + x.clone() * x)
    }

    /// `Σ |v|²`, always rational.
    pub fn sum_abs_squares(&self) -> CycNum {
        self.components.iter().fold(CycNum::zero(), |a, x| a + x.conj() * x)
    }

    /// Integer form when every component is a positive integer.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.components
            .iter()
            .map(|x| x.to_integer().filter(|v| *v > BigInt::zero()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis = self.basis().expect("record basis");
        let comps: serde_json::Map<String, serde_json::Value> = basis
            .states()
            .iter()
            .zip(&self.components)
            .map(|(s, c)| (s.to_string(), serde_json::to_value(c).expect("serializable")))
            .collect();
        serde_json::json!({
            "schema": "o1loop.spin/1",
            "size": self.size,
            "z": self.z,
            "t": self.t,
            "components": comps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_ints(r: &SpinRecord) -> Vec<i64> {
        let mut v: Vec<i64> = r.integers().unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn odd_homogeneous() {
        assert_eq!(sorted_ints(&spin_homogeneous(1, Exec::Sequential).unwrap()), vec![1]);
        assert_eq!(sorted_ints(&spin_homogeneous(3, Exec::Sequential).unwrap()), vec![1, 1, 1]);
        assert_eq!(sorted_ints(&spin_homogeneous(5, Exec::Parallel).unwrap()), vec![1, 1, 1, 1, 1, 2, 2, 2, 2, 2]);
        let mut want = vec![1; 7];
        want.extend([3; 14]);
        want.extend([4; 7]);
        want.extend([7; 7]);
        assert_eq!(sorted_ints(&spin_homogeneous(7, Exec::Parallel).unwrap()), want);
    }

    #[test]
    fn even_homogeneous_four() {
        let r = spin_homogeneous(4, Exec::Sequential).unwrap();
        let z = CycNum::zeta();
        let mut want = vec![
            CycNum::sqrt3() * &z,
            CycNum::sqrt3() * z.conj(),
            z.pow(2),
            z.conj().pow(2),
            CycNum::integer(1),
            CycNum::integer(1),
        ];
        for c in &r.components {
            let k = want.iter().position(|w| w == c).unwrap_or_else(|| panic!("unexpected component {c}"));
            want.remove(k);
        }
        assert!(want.is_empty());
    }

    #[test]
    fn base_value_is_one_at_homogeneous_point() {
        for l in 1..8 {
            if l % 2 == 1 {
                assert_eq!(spin_base_value(&vec![CycNum::integer(1); l]), CycNum::integer(1));
            }
        }
    }

    #[test]
    fn json_keys() {
        let r = spin_homogeneous(3, Exec::Sequential).unwrap();
        let j = r.to_json();
        assert!(j["components"]["++-"].is_array());
    }
}

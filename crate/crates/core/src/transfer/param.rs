use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LoopRing};

/// A spectral parameter: a field value or the formal point at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Param {
    Val(CycNum),
    Inf,
}

impl Param {
    pub fn int(v: i64) -> Self {
        Param::Val(CycNum::integer(v))
    }

    pub fn zero() -> Self {
        Param::Val(CycNum::zero())
    }

    pub fn value(&self) -> Option<&CycNum> {
        match self {
            Param::Val(v) => Some(v),
            Param::Inf => None,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Param::Inf)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Param::Inf);
        }
        let r = crate::exactnum::rational::parse_rational(s)?;
        Ok(Param::Val(CycNum::from_rational(&r)))
    }
}

pub fn params(z: &[i64]) -> Vec<Param> {
    z.iter().map(|&x| Param::int(x)).collect()
}

pub fn values(z: &[CycNum]) -> Vec<Param> {
    z.iter().cloned().map(Param::Val).collect()
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Val(v) => write!(f, "{v}"),
            Param::Inf => f.write_str("inf"),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Val(v) => v.serialize(s),
            Param::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        if v.as_str() == Some("inf") {
            return Ok(Param::Inf);
        }
        serde_json::from_value::<CycNum>(v)
            .map(Param::Val)
            .map_err(serde::de::Error::custom)
    }
}

/// `q·x − q⁻¹·y`, with the point at infinity contributing its leading coefficient.
pub fn qdiff(x: &Param, y: &Param) -> CycNum {
    match (x, y) {
        (Param::Val(x), Param::Val(y)) => CycNum::q() * x - CycNum::inv_q() * y,
        (Param::Inf, Param::Val(_)) => CycNum::q(),
        (Param::Val(_), Param::Inf) => -CycNum::inv_q(),
        (Param::Inf, Param::Inf) => CycNum::q() - CycNum::inv_q(),
    }
}

/// Coefficients `(a, b)` of `Ř(z, w) = a·I + b·e`, i.e.
/// `a = (qz − q⁻¹w)/(qw − q⁻¹z)` and `b = (z − w)/(qw − q⁻¹z)`.
pub fn rhat_coeffs(z: &Param, w: &Param) -> Result<(CycNum, CycNum)> {
    let q = CycNum::q();
    let qi = CycNum::inv_q();
    match (z, w) {
        (Param::Val(z), Param::Val(w)) => {
            let den = q.clone() * w - qi.clone() * z;
            if den.is_zero() {
                return Err(Error::SingularEvaluation(format!("q·{w} − q⁻¹·{z} = 0")));
            }
            let a = (q * z - qi * w).div(&den)?;
            let b = (z.clone() - w).div(&den)?;
            Ok((a, b))
        }
        (Param::Inf, Param::Val(_)) => Ok((-(q.clone() * &q), -q)),
        (Param::Val(_), Param::Inf) => Ok((-(qi.clone() * &qi), -qi)),
        (Param::Inf, Param::Inf) => Ok((CycNum::one(), CycNum::zero())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_match_large_values() {
        // a(z, t) at z = ∞ is the limit of a(N, t); check the defining identity a + b = 1.
        for (z, w) in [(Param::Inf, Param::int(3)), (Param::int(3), Param::Inf), (Param::int(2), Param::int(5))] {
            let (a, b) = rhat_coeffs(&z, &w).unwrap();
            assert_eq!(a + b, CycNum::one());
        }
        assert!(rhat_coeffs(&Param::int(1), &Param::Val(CycNum::q())).is_err());
    }

    #[test]
    fn json() {
        let p = vec![Param::int(2), Param::Inf];
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Vec<Param>>(&s).unwrap(), p);
    }
}

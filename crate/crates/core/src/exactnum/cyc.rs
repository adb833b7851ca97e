//! The cyclotomic field of 12th roots of unity.
//!
//! Elements are stored as `(c0 + c1 ζ + c2 ζ² + c3 ζ³) / den` with integer
//! numerators and a positive common denominator, where ζ = e^{iπ/6} satisfies
//! ζ⁴ = ζ² − 1. The representation is kept reduced, so structural equality is
//! field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};
use super::ring::{ExactDiv, Field, LoopRing, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: [BigInt; 4],
    den: BigInt,
}

impl CycNum {
    fn normalized(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        CycNum { num, den }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::normalized(
            [r.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            r.denom().clone(),
        )
    }

    pub fn from_coords(c: [Rational; 4]) -> Self {
        let den = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = c.map(|r| r.numer() * (&den / r.denom()));
        Self::normalized(num, den)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Self::normalized(c.map(BigInt::from), BigInt::one())
    }

    pub fn integer(v: i64) -> Self {
        Self::from_ints([v, 0, 0, 0])
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()))
    }

    /// Coordinates in the basis (1, ζ, ζ², ζ³).
    pub fn coords(&self) -> [Rational; 4] {
        self.num
            .clone()
            .map(|c| BigRational::new(c, self.den.clone()))
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// ζ^k reduced to the basis.
    pub fn zeta_pow(k: i64) -> Self {
        zeta_table()[k.rem_euclid(12) as usize].clone()
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// The imaginary unit, ζ³.
    pub fn i() -> Self {
        Self::from_ints([0, 0, 0, 1])
    }

    /// √3 = ζ + ζ⁻¹.
    pub fn sqrt3() -> Self {
        Self::from_ints([0, 2, 0, -1])
    }

    /// The field automorphism ζ ↦ ζ^k, for k coprime to 12.
    pub fn galois(&self, k: i64) -> Self {
        debug_assert!(k.rem_euclid(12) % 2 == 1 && k.rem_euclid(3) != 0);
        let mut acc = [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &zeta_table()[(j as i64 * k).rem_euclid(12) as usize];
            for (a, b) in acc.iter_mut().zip(img.num.iter()) {
                *a += c * b;
            }
        }
        Self::normalized(acc, self.den.clone())
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹ = ζ − ζ³.
    pub fn conj(&self) -> Self {
        self.galois(11)
    }

    /// Field norm down to ℚ (product of the four Galois conjugates).
    pub fn norm(&self) -> Rational {
        let p = self.clone() * self.galois(5) * self.galois(7) * self.galois(11);
        p.to_rational().expect("norm lies in Q")
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = self.galois(5) * self.galois(7) * self.galois(11);
        let n = (self.clone() * &others)
            .to_rational()
            .expect("norm lies in Q");
        Ok(others * &CycNum::from_rational(&(Rational::one() / n)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * &other.try_inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(
            self.num.clone().map(|c| c * r.numer()),
            &self.den * r.denom(),
        )
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(Scalar::pow(self, e as u32))
        } else {
            Ok(Scalar::pow(&self.try_inv()?, e.unsigned_abs()))
        }
    }

    /// Approximate complex value, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = std::f64::consts::PI * j as f64 / 6.0;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Returns the real part as an exact element (x + conj x) / 2.
    pub fn real_part(&self) -> Self {
        (self.clone() + self.conj()).scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.coords().map(|r| format_rational(&r))
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        if s.len() != 4 {
            return Err(Error::Parse(format!("expected 4 coordinates, got {}", s.len())));
        }
        let c = [
            parse_rational(&s[0])?,
            parse_rational(&s[1])?,
            parse_rational(&s[2])?,
            parse_rational(&s[3])?,
        ];
        Ok(Self::from_coords(c))
    }

    /// q = −e^{iπ/3} = −ζ².
    pub fn rs_q() -> Self {
        Self::from_ints([0, 0, -1, 0])
    }

    /// q⁻¹ = ζ² − 1.
    pub fn rs_inv_q() -> Self {
        Self::from_ints([-1, 0, 1, 0])
    }

    /// q − q⁻¹ = 1 − 2ζ² (= −i√3).
    pub fn q_minus_inv_q() -> Self {
        Self::from_ints([1, 0, -2, 0])
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut p: [BigInt; 7] = Default::default();
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        // ζ⁶ = −1, ζ⁵ = ζ³ − ζ, ζ⁴ = ζ² − 1
        let [p0, p1, p2, p3, p4, p5, p6] = p;
        let num = [p0 - &p4 - p6, p1 - &p5, p2 + p4, p3 + p5];
        Self::normalized(num, &self.den * &o.den)
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.den == o.den {
            let num = [0, 1, 2, 3].map(|k| &self.num[k] + &o.num[k]);
            return Self::normalized(num, self.den.clone());
        }
        let num = [0, 1, 2, 3].map(|k| &self.num[k] * &o.den + &o.num[k] * &self.den);
        Self::normalized(num, &self.den * &o.den)
    }

    fn neg_ref(&self) -> Self {
        CycNum {
            num: self.num.clone().map(|c| -c),
            den: self.den.clone(),
        }
    }
}

fn zeta_table() -> &'static [CycNum; 12] {
    static TABLE: OnceLock<[CycNum; 12]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let z = CycNum::zeta();
        let mut out: Vec<CycNum> = Vec::with_capacity(12);
        let mut cur = CycNum::one();
        for _ in 0..12 {
            out.push(cur.clone());
            cur = cur.mul_ref(&z);
        }
        out.try_into().expect("12 entries")
    })
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum {
            num: Default::default(),
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::from_ints([1, 0, 0, 0])
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &'a CycNum) -> CycNum {
                self.$imp(o)
            }
        }
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, o: &'a CycNum) -> CycNum {
                self.$imp(o)
            }
        }
    };
}

impl CycNum {
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Scalar for CycNum {
    fn from_i64(v: i64) -> Self {
        CycNum::integer(v)
    }
}

impl ExactDiv for CycNum {
    fn exact_div(&self, b: &Self) -> Option<Self> {
        self.div(b).ok()
    }
}

impl Field for CycNum {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl LoopRing for CycNum {
    /// q^{1/2} = e^{−iπ/3} = 1 − ζ².
    fn sqrt_q() -> Self {
        CycNum::from_ints([1, 0, -1, 0])
    }
    /// q^{−1/2} = ζ².
    fn inv_sqrt_q() -> Self {
        CycNum::from_ints([0, 0, 1, 0])
    }
    /// ω^{1/2} = e^{iπ/6} = ζ.
    fn omega_half() -> Self {
        CycNum::zeta()
    }
    fn inv_omega_half() -> Self {
        CycNum::from_ints([0, 1, 0, -1])
    }
    fn q() -> Self {
        CycNum::rs_q()
    }
    fn inv_q() -> Self {
        CycNum::rs_inv_q()
    }
    fn tau() -> Self {
        CycNum::one()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::integer(v)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(&r)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "ζ", "ζ^2", "ζ^3"];
        let mut first = true;
        for (k, c) in self.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", names[k])?;
            } else {
                write!(f, "{a}{}", names[k])?;
            }
        }
        Ok(())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        CycNum::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use proptest::prelude::*;

    fn q() -> CycNum {
        CycNum::rs_q()
    }

    #[test]
    fn zeta_powers() {
        assert_eq!(CycNum::zeta_pow(6), CycNum::integer(-1));
        assert_eq!(CycNum::zeta_pow(4), CycNum::from_ints([-1, 0, 1, 0]));
        let p8 = CycNum::zeta_pow(8);
        assert_eq!(p8, CycNum::from_ints([0, 0, -1, 0]));
        assert_eq!(Scalar::pow(&p8, 3), CycNum::one());
        assert_eq!(CycNum::zeta_pow(12), CycNum::one());
        assert_eq!(CycNum::zeta_pow(-1), CycNum::zeta_pow(11));
    }

    #[test]
    fn rs_constants() {
        let q = q();
        let qi = CycNum::rs_inv_q();
        assert_eq!(Scalar::pow(&q, 3), CycNum::one());
        assert_eq!(q.clone() * &qi, CycNum::one());
        assert_eq!(Scalar::pow(&CycNum::sqrt_q(), 2), q);
        assert_eq!(CycNum::sqrt_q() * CycNum::inv_sqrt_q(), CycNum::one());
        // τ = −q − q⁻¹ = 1
        assert_eq!(-(q.clone() + &qi), CycNum::one());
        let d = q.clone() - &qi;
        assert_eq!(d, CycNum::q_minus_inv_q());
        assert_eq!(d.clone() * &d, CycNum::integer(-3));
        assert_eq!(
            CycNum::omega_half() * CycNum::omega_half(),
            -q.clone()
        );
        assert_eq!(Scalar::pow(&CycNum::sqrt_q(), 3), CycNum::integer(-1));
        assert_eq!(CycNum::sqrt3() * CycNum::sqrt3(), CycNum::integer(3));
        assert_eq!(CycNum::i() * CycNum::i(), CycNum::integer(-1));
    }

    #[test]
    fn conjugation() {
        let z = CycNum::zeta();
        assert_eq!(z.conj(), CycNum::from_ints([0, 1, 0, -1]));
        assert_eq!(z.conj() * &z, CycNum::one());
        let x = CycNum::rational(3, 7);
        assert_eq!(x.conj(), x);
    }

    #[test]
    fn inverse() {
        let x = CycNum::from_ints([2, 1, 0, 0]);
        assert_eq!(x.clone() * x.try_inv().unwrap(), CycNum::one());
        assert!(matches!(CycNum::zero().try_inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn json_shape() {
        let x = CycNum::from_coords([rat(1, 2), rat(0, 1), rat(-3, 4), rat(2, 1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["1/2","0/1","-3/4","2/1"]"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        prop::array::uniform4((-20i64..20, 1i64..6)).prop_map(|c| {
            CycNum::from_coords(c.map(|(n, d)| rat(n, d)))
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(a.clone() * &b, b.clone() * &a);
            prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
            prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + a.clone() * &c);
            prop_assert_eq!(a.clone() - &a, CycNum::zero());
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.try_inv().unwrap(), CycNum::one());
            }
        }

        #[test]
        fn conj_is_an_involutive_automorphism(a in arb_cyc(), b in arb_cyc()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((a.clone() * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((a.clone() + &b).conj(), a.conj() + b.conj());
            let n = a.clone() * a.conj();
            prop_assert_eq!(n.conj(), n);
        }
    }
}

//! Laurent polynomials in a formal `s` (standing for a generic `q^{1/2}`) with
//! Gaussian-rational coefficients. `q := s²` and `ω^{1/2} := i·s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::cyc::CycNum;
use super::rational::{int, Rational};
use super::ring::{ExactDiv, LoopRing, Scalar};

pub type GaussRat = Complex<Rational>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentG {
    terms: BTreeMap<i32, GaussRat>,
}

fn gzero() -> GaussRat {
    Complex::new(Rational::zero(), Rational::zero())
}

fn gis_zero(c: &GaussRat) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

fn ginv(c: &GaussRat) -> GaussRat {
    let n = &c.re * &c.re + &c.im * &c.im;
    Complex::new(&c.re / &n, -&c.im / &n)
}

impl LaurentG {
    pub fn monomial(exp: i32, coef: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !gis_zero(&coef) {
            terms.insert(exp, coef);
        }
        LaurentG { terms }
    }

    pub fn s_pow(exp: i32) -> Self {
        Self::monomial(exp, Complex::new(int(1), int(0)))
    }

    pub fn i() -> Self {
        Self::monomial(0, Complex::new(int(0), int(1)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &GaussRat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: i32, c: GaussRat) {
        let e = self.terms.entry(exp).or_insert_with(gzero);
        *e = &*e + c;
        if gis_zero(e) {
            self.terms.remove(&exp);
        }
    }

    /// Specialization s ↦ q^{1/2} = 1 − ζ², i ↦ ζ³.
    pub fn specialize_rs(&self) -> CycNum {
        let s = CycNum::sqrt_q();
        let s_inv = CycNum::inv_sqrt_q();
        let i = CycNum::i();
        let mut acc = CycNum::zero();
        for (&e, c) in &self.terms {
            let coef = CycNum::from_rational(&c.re) + CycNum::from_rational(&c.im) * &i;
            let p = if e >= 0 {
                Scalar::pow(&s, e as u32)
            } else {
                Scalar::pow(&s_inv, e.unsigned_abs())
            };
            acc = acc + coef * p;
        }
        acc
    }

    fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = LaurentG::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Zero for LaurentG {
    fn zero() -> Self {
        LaurentG::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentG {
    fn one() -> Self {
        LaurentG::s_pow(0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<LaurentG> for LaurentG {
            type Output = LaurentG;
            fn $m(self, o: LaurentG) -> LaurentG {
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a LaurentG> for LaurentG {
            type Output = LaurentG;
            fn $m(self, o: &'a LaurentG) -> LaurentG {
                self.$imp(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for LaurentG {
    type Output = LaurentG;
    fn neg(self) -> LaurentG {
        LaurentG {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Scalar for LaurentG {
    fn from_i64(v: i64) -> Self {
        LaurentG::monomial(0, Complex::new(int(v), int(0)))
    }
}

impl ExactDiv for LaurentG {
    /// Long division after shifting both operands to ordinary polynomials.
    fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentG::zero());
        }
        let bmin = b.min_exp()?;
        let bmax = b.max_exp()?;
        let lead_inv = ginv(&b.terms[&bmax]);
        let mut rem = self.clone();
        let mut quot = LaurentG::zero();
        // Divide from the top degree down until the remainder drops below b's span.
        while let Some(rmax) = rem.max_exp() {
            let rmin = rem.min_exp()?;
            if rmax - rmin < bmax - bmin {
                return None;
            }
            let e = rmax - bmax;
            let c = &rem.terms[&rmax] * &lead_inv;
            let step = LaurentG::monomial(e, c);
            rem = rem.sub_ref(&step.mul_ref(b));
            quot = quot.add_ref(&step);
        }
        Some(quot)
    }
}

impl LoopRing for LaurentG {
    fn sqrt_q() -> Self {
        LaurentG::s_pow(1)
    }
    fn inv_sqrt_q() -> Self {
        LaurentG::s_pow(-1)
    }
    fn omega_half() -> Self {
        LaurentG::i().mul_ref(&LaurentG::s_pow(1))
    }
    fn inv_omega_half() -> Self {
        -(LaurentG::i().mul_ref(&LaurentG::s_pow(-1)))
    }
}

impl fmt::Debug for LaurentG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({} + {}i)s^{}", c.re, c.im, e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

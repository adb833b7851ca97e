//! Sparse multivariate polynomials over ℚ(ζ₁₂).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cyc::CycNum;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Polynomial in `nvars` variables `z_1..z_L`. Exponent vectors are 0-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coef: CycNum,
}

#[derive(Serialize, Deserialize)]
struct MPolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<u32>, c: CycNum) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `z_{i+1}` (0-indexed `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, CycNum::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> CycNum {
        self.terms.get(exps).cloned().unwrap_or_else(CycNum::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Largest exponent of each variable.
    pub fn degree_bounds(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (a, b) in d.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
        }
        d
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c);
        }
        out
    }

    pub fn eval(&self, z: &[CycNum]) -> CycNum {
        assert_eq!(z.len(), self.nvars, "wrong number of arguments");
        // Cache powers per variable.
        let bounds = self.degree_bounds();
        let powers: Vec<Vec<CycNum>> = z
            .iter()
            .zip(&bounds)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(CycNum::one());
                for k in 1..=d as usize {
                    let next = v[k - 1].clone() * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t = t * &powers[k][ek as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Exchanges variables `i` and `j` (0-indexed).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitutes `z_k ↦ c·z_{k}` for each k, i.e. rescales variable k by `c[k]`.
    pub fn rescale_vars(&self, c: &[CycNum]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            let mut t = v.clone();
            for (k, &ek) in e.iter().enumerate() {
                t = t * crate::exactnum::Scalar::pow(&c[k], ek);
            }
            out.add_term(e.clone(), t);
        }
        out
    }

    /// Divided difference ∂_i f = (f(…, z_{i+1}, z_i, …) − f)/(z_{i+1} − z_i),
    /// with `i` 1-indexed as in `1 ≤ i < L`.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nvars, "index out of range");
        let (a_idx, b_idx) = (i - 1, i);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (a, b) = (e[a_idx], e[b_idx]);
            if a == b {
                continue;
            }
            // x^b y^a − x^a y^b = ±(xy)^m (y^k − x^k), divided by (y − x).
            let (m, k, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
            let coef = if sign > 0 { c.clone() } else { -c.clone() };
            for j in 0..k {
                let mut ne = e.clone();
                ne[a_idx] = m + j;
                ne[b_idx] = m + k - 1 - j;
                out.add_term(ne, coef.clone());
            }
        }
        out
    }

    /// Reconstructs the unique polynomial with `deg_{z_k} ≤ bounds[k]` matching
    /// `oracle` on the grid `z_k ∈ {1, …, bounds[k]+1}`.
    pub fn interpolate_grid<F>(nvars: usize, bounds: &[u32], exec: Exec, oracle: F) -> Result<Self>
    where
        F: Fn(&[CycNum]) -> Result<CycNum> + Send + Sync,
    {
        assert_eq!(bounds.len(), nvars);
        let nodes: Vec<Vec<CycNum>> = bounds
            .iter()
            .map(|&d| (1..=d as i64 + 1).map(CycNum::integer).collect())
            .collect();
        Self::interpolate_nodes(&nodes, exec, oracle)
    }

    /// Like [`MPoly::interpolate_grid`] with explicit pairwise distinct nodes per
    /// variable; the degree bound in `z_k` is `nodes[k].len() − 1`.
    pub fn interpolate_nodes<F>(nodes: &[Vec<CycNum>], exec: Exec, oracle: F) -> Result<Self>
    where
        F: Fn(&[CycNum]) -> Result<CycNum> + Send + Sync,
    {
        let nvars = nodes.len();
        let sizes: Vec<usize> = nodes.iter().map(Vec::len).collect();
        let total: usize = sizes.iter().product();
        let points: Vec<Vec<i64>> = (0..total).map(|flat| unflatten(flat, &sizes)).collect();
        let mut values = exec.try_map(points, |p| {
            let z: Vec<CycNum> = p.iter().enumerate().map(|(k, &j)| nodes[k][j as usize - 1].clone()).collect();
            oracle(&z).map_err(|err| Error::GridEvaluationFailure {
                point: z
                    .iter()
                    .zip(p)
                    .map(|(x, j)| x.to_integer().and_then(|v| i64::try_from(v).ok()).unwrap_or(j))
                    .collect(),
                reason: err.to_string(),
            })
        })?;
        // Convert one axis at a time from values to monomial coefficients.
        let mut stride = 1;
        for k in (0..nvars).rev() {
            let m = sizes[k];
            let outer = total / (stride * m);
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * m * stride + s;
                    let line: Vec<CycNum> = (0..m).map(|j| values[base + j * stride].clone()).collect();
                    for (j, c) in newton_to_monomial(&line, &nodes[k])?.into_iter().enumerate() {
                        values[base + j * stride] = c;
                    }
                }
            }
            stride *= m;
        }
        let mut out = Self::zero(nvars);
        for (flat, c) in values.into_iter().enumerate() {
            let e = unflatten(flat, &sizes).into_iter().map(|x| (x - 1) as u32).collect();
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb);
            }
        }
        out
    }

    fn add_ref(&self, o: &Self, neg: bool) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), if neg { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Grid index (row-major, last variable fastest) to 1-based grid coordinates.
fn unflatten(mut flat: usize, sizes: &[usize]) -> Vec<i64> {
    let mut p = vec![0i64; sizes.len()];
    for k in (0..sizes.len()).rev() {
        p[k] = (flat % sizes[k]) as i64 + 1;
        flat /= sizes[k];
    }
    p
}

/// Given values at x = 1..m, returns monomial coefficients c_0..c_{m-1}.
fn newton_to_monomial(vals: &[CycNum], nodes: &[CycNum]) -> Result<Vec<CycNum>> {
    let m = vals.len();
    let mut dd = vals.to_vec();
    for level in 1..m {
        for j in (level..m).rev() {
            let gap = nodes[j].clone() - &nodes[j - level];
            dd[j] = (dd[j].clone() - &dd[j - 1]).div(&gap)?;
        }
    }
    // Horner on the Newton form.
    let mut coeffs = vec![CycNum::zero(); m];
    for j in (0..m).rev() {
        // coeffs ← coeffs·(x − x_j) + dd[j]
        let mut next = vec![CycNum::zero(); m];
        for k in 0..m {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < m {
                next[k + 1] = next[k + 1].clone() + &coeffs[k];
            }
            next[k] = next[k].clone() - coeffs[k].clone() * &nodes[j];
        }
        next[0] = next[0].clone() + &dd[j];
        coeffs = next;
    }
    Ok(coeffs)
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, o: MPoly) -> MPoly {
        self.add_ref(&o, false)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        self.add_ref(o, false)
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, o: MPoly) -> MPoly {
        self.add_ref(&o, true)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self.add_ref(o, true)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, o: MPoly) -> MPoly {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        self.mul_ref(o)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-CycNum::one())
    }
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exps: e.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MPolyRepr::deserialize(d)?;
        let mut p = MPoly::zero(r.nvars);
        for t in r.terms {
            if t.exps.len() != r.nvars {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            p.add_term(t.exps, t.coef);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn divided_difference_examples() {
        let one = MPoly::constant(2, CycNum::one());
        assert_eq!(z(2, 0).divided_difference(1), one);
        assert!((&z(2, 0) * &z(2, 1)).divided_difference(1).is_zero());
        // (z₂² − z₁²)/(z₂ − z₁) = z₁ + z₂ under the defining formula.
        let sq = &z(2, 0) * &z(2, 0);
        assert_eq!(sq.divided_difference(1), &z(2, 0) + &z(2, 1));
    }

    #[test]
    fn interpolation_examples() {
        let f = MPoly::interpolate_grid(1, &[1], Exec::Sequential, |p| {
            Ok(CycNum::integer(3) * &p[0] + CycNum::integer(2))
        })
        .unwrap();
        let expect = z(1, 0).scale(&CycNum::integer(3)) + MPoly::constant(1, CycNum::integer(2));
        assert_eq!(f, expect);
        let c = MPoly::interpolate_grid(2, &[0, 0], Exec::Sequential, |_| Ok(CycNum::integer(5))).unwrap();
        assert_eq!(c, MPoly::constant(2, CycNum::integer(5)));
    }

    #[test]
    fn grid_failure_is_reported() {
        let r = MPoly::interpolate_grid(2, &[1, 1], Exec::Sequential, |p| {
            if p[0] == CycNum::integer(2) && p[1] == CycNum::integer(1) {
                Err(Error::BaseComponentZero)
            } else {
                Ok(CycNum::one())
            }
        });
        match r {
            Err(Error::GridEvaluationFailure { point, .. }) => assert_eq!(point, vec![2, 1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let p = &z(3, 0) * &z(3, 2) + MPoly::constant(3, CycNum::zeta());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<MPoly>(&s).unwrap(), p);
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        prop::array::uniform4(-4i64..5).prop_map(CycNum::from_ints)
    }

    fn arb_poly(n: usize, d: u32) -> impl Strategy<Value = MPoly> {
        prop::collection::vec((prop::collection::vec(0..=d, n), arb_cyc()), 0..6).prop_map(move |ts| {
            let mut p = MPoly::zero(n);
            for (e, c) in ts {
                p.add_term(e, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn interpolation_round_trip(p in arb_poly(3, 2)) {
            let q = MPoly::interpolate_grid(3, &[2, 2, 2], Exec::Sequential, |x| Ok(p.eval(x))).unwrap();
            prop_assert_eq!(q, p);
        }

        #[test]
        fn symmetric_has_zero_divided_difference(p in arb_poly(3, 2)) {
            let sym = &p + &p.swap_vars(0, 1);
            prop_assert!(sym.divided_difference(1).is_zero());
        }

        #[test]
        fn divided_difference_matches_definition(p in arb_poly(3, 3), a in 1i64..20, b in 21i64..40, c in -5i64..5) {
            let pt = [CycNum::integer(a), CycNum::integer(b), CycNum::integer(c)];
            let sw = [CycNum::integer(b), CycNum::integer(a), CycNum::integer(c)];
            let lhs = p.divided_difference(1).eval(&pt) * CycNum::integer(b - a);
            prop_assert_eq!(lhs, p.eval(&sw) - p.eval(&pt));
        }

        #[test]
        fn eval_is_a_ring_hom(p in arb_poly(2, 2), q in arb_poly(2, 2), x in arb_cyc(), y in arb_cyc()) {
            let pt = [x, y];
            prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
            prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
        }
    }
}

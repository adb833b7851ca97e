use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, LoopRing, MPoly, Matrix};
use crate::exec::Exec;

fn factors(x: &CycNum, w: &CycNum) -> (CycNum, CycNum) {
    (
        CycNum::q() * x - CycNum::inv_q() * w,
        CycNum::sqrt_q() * x - CycNum::inv_sqrt_q() * w,
    )
}

/// Gaudin determinant `G(z_1, …, z_{2n+2})` at the RS point, with the halves
/// `x = (z_1..z_{n+1})` and `w = (z_{n+2}..z_{2n+2})`:
/// `∏_{i,j} (q x_i − q⁻¹ w_j)(q^{1/2} x_i − q^{−1/2} w_j) / ∏_{i<j} (x_i − x_j)(w_i − w_j)`
/// times `det[1/((q x_i − q⁻¹ w_j)(q^{1/2} x_i − q^{−1/2} w_j))]`.
pub fn gaudin_eval(z: &[CycNum]) -> Result<CycNum> {
    if z.is_empty() || !z.len().is_multiple_of(2) {
        return Err(Error::SizeParityMismatch {
            size: z.len(),
            what: "Gaudin argument count (positive even)",
        });
    }
    let m = z.len() / 2;
    let (x, w) = z.split_at(m);
    let mut pre = CycNum::one();
    let mut entries = Vec::with_capacity(m);
    for xi in x {
        let mut row = Vec::with_capacity(m);
        for wj in w {
            let (a, b) = factors(xi, wj);
            let ab = a * b;
            if ab.is_zero() {
                return Err(Error::SingularEvaluation("vanishing Gaudin denominator".into()));
            }
            row.push(ab.try_inv()?);
            pre = pre * ab;
        }
        entries.push(row);
    }
    let mut vander = CycNum::one();
    for half in [x, w] {
        for i in 0..m {
            for j in i + 1..m {
                vander = vander * (half[i].clone() - &half[j]);
            }
        }
    }
    if vander.is_zero() {
        return Err(Error::SingularEvaluation("repeated point within a half".into()));
    }
    Ok(pre * Matrix::from_rows(entries).det() * vander.try_inv()?)
}

/// Top coefficient of `G(z_1, …, z_{2n+1}, w)` as a polynomial in `w` (degree `n`).
pub fn gaudin_at_infinity(z: &[CycNum]) -> Result<CycNum> {
    let n = z.len() / 2;
    // Shift the sample points away from the second-half values.
    let offset = (0i64..)
        .map(|k| 1000 + 97 * k)
        .find(|o| (1..=n as i64 + 2).all(|x| !z.contains(&CycNum::integer(o + x))))
        .expect("free offset");
    let poly = MPoly::interpolate_grid(1, &[n as u32 + 1], Exec::Sequential, |x| {
        let mut pt = z.to_vec();
        pt.push(x[0].clone() + CycNum::integer(offset));
        gaudin_eval(&pt)
    })?;
    if !poly.coeff(&[n as u32 + 1]).is_zero() {
        return Err(Error::SingularEvaluation("Gaudin determinant exceeds degree n in the last variable".into()));
    }
    Ok(poly.coeff(&[n as u32]))
}

/// `Θ_{π₀}(z_1, …, z_{2n+1}) = Φ_{π₀}(z_1, …, z_{2n+1}, 0) · G(z_1, …, z_{2n+1}, ∞)`,
/// where `Φ_{π₀}` is the factorized base component of the size `2n+2` disk,
/// `∏ (q z_i − q⁻¹ z_j)/(q − q⁻¹)` over pairs `i < j` inside each half.
pub fn theta_base_eval(z: &[CycNum]) -> Result<CycNum> {
    if z.len() % 2 != 1 {
        return Err(Error::SizeParityMismatch {
            size: z.len(),
            what: "Θ argument count (odd)",
        });
    }
    let m = z.len().div_ceil(2);
    let mut full = z.to_vec();
    full.push(CycNum::zero());
    let c = CycNum::q_minus_inv_q().try_inv()?;
    let mut phi = CycNum::one();
    for half in [&full[..m], &full[m..]] {
        for i in 0..m {
            for j in i + 1..m {
                phi = phi * (CycNum::q() * &half[i] - CycNum::inv_q() * &half[j]) * &c;
            }
        }
    }
    Ok(phi * gaudin_at_infinity(z)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<CycNum> {
        v.iter().map(|&x| CycNum::integer(x)).collect()
    }

    #[test]
    fn trivial_size() {
        assert_eq!(gaudin_eval(&ints(&[3, 5])).unwrap(), CycNum::one());
        assert_eq!(theta_base_eval(&ints(&[4])).unwrap(), CycNum::one());
        assert!(gaudin_eval(&ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn symmetric_within_halves() {
        let a = gaudin_eval(&ints(&[2, 5, 3, 7])).unwrap();
        assert_eq!(gaudin_eval(&ints(&[5, 2, 3, 7])).unwrap(), a);
        assert_eq!(gaudin_eval(&ints(&[2, 5, 7, 3])).unwrap(), a);
        assert!(gaudin_eval(&ints(&[2, 2, 3, 7])).is_err());
    }

    #[test]
    fn no_pole_on_diagonal() {
        // Interpolate in z_1 away from z_2 = 5, then compare with exact values
        // approaching z_1 = 5: a pole would break the polynomial fit.
        let rest = ints(&[5, 3, 7]);
        let poly = MPoly::interpolate_grid(1, &[3], Exec::Sequential, |x| {
            let mut z = vec![x[0].clone() + CycNum::integer(10)];
            z.extend(rest.iter().cloned());
            gaudin_eval(&z)
        })
        .unwrap();
        for k in [10i64, 1000, 100000] {
            let z1 = CycNum::integer(5) + CycNum::rational(1, k);
            let mut z = vec![z1.clone()];
            z.extend(rest.iter().cloned());
            let x = z1 - CycNum::integer(10);
            assert_eq!(gaudin_eval(&z).unwrap(), poly.eval(&[x]));
        }
    }

    #[test]
    fn theta_values() {
        let v = theta_base_eval(&ints(&[1, 2, 3])).unwrap();
        assert!(!v.is_zero());
        // Homogeneous of degree 2n² + n.
        for (z, n) in [(vec![1i64, 2, 3], 1u32), (vec![2, 3, 5, 7, 11], 2)] {
            let a = theta_base_eval(&ints(&z)).unwrap();
            let scaled: Vec<i64> = z.iter().map(|x| 2 * x).collect();
            let b = theta_base_eval(&ints(&scaled)).unwrap();
            assert_eq!(b, a * CycNum::integer(2).powi((2 * n * n + n) as i32).unwrap());
        }
    }
}

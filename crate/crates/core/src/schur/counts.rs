use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::exactnum::{CycNum, Rational, Scalar};

fn fact(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |a, k| a * k)
}

fn ratio_to_int(r: Rational) -> BigInt {
    assert!(r.is_integer(), "count formula produced {r}");
    r.to_integer()
}

/// Number of `n × n` alternating sign matrices, `∏_{j=1}^n (3j−2)!/(n+j−1)!`.
pub fn asm_count(n: u64) -> BigInt {
    let r = (1..=n).fold(Rational::one(), |a, j| a * Rational::new(fact(3 * j - 2), fact(n + j - 1)));
    ratio_to_int(r)
}

/// Number of half-turn symmetric alternating sign matrices of size `L`.
pub fn aht_count(l: u64) -> BigInt {
    let n = l / 2;
    let r = if l.is_multiple_of(2) {
        (0..n).fold(Rational::one(), |a, j| {
            let f = Rational::new(fact(3 * j + 1), fact(n + j));
            a * Rational::new(BigInt::from(3 * j + 2), BigInt::from(3 * j + 1)) * &f * &f
        })
    } else {
        (1..=n).fold(Rational::one(), |a, j| {
            let f = Rational::new(fact(3 * j) * fact(j), fact(2 * j).pow(2));
            a * Rational::new(BigInt::from(4), BigInt::from(3)) * &f * &f
        })
    };
    ratio_to_int(r)
}

/// `∏_{j=1}^n (3j−1)!/(n+j)!`, the rational part of `N_n`.
fn nn_core(n: u64) -> Rational {
    (1..=n).fold(Rational::one(), |a, j| a * Rational::new(fact(3 * j - 1), fact(n + j)))
}

/// `N_n = 3^{n/2} ∏_{j=1}^n (3j−1)!/(n+j)!` as an element of the field.
pub fn nn_number(n: u64) -> CycNum {
    CycNum::from_rational(&nn_core(n)) * CycNum::sqrt3().pow(n as u32)
}

/// `N_n² = 3^n (∏ (3j−1)!/(n+j)!)²`.
pub fn nn_squared(n: u64) -> BigInt {
    let c = nn_core(n);
    ratio_to_int(c.clone() * c * Rational::from_integer(BigInt::from(3).pow(n as u32)))
}

/// `3^{n/2} N_n = 3^n ∏ (3j−1)!/(n+j)!`.
pub fn spin_sum(n: u64) -> BigInt {
    ratio_to_int(nn_core(n) * Rational::from_integer(BigInt::from(3).pow(n as u32)))
}

/// One row of the count table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub n: u64,
    pub asm: BigInt,
    pub aht_odd: BigInt,
    pub aht_even: Option<BigInt>,
    pub nn_squared: BigInt,
    pub spin_sum: BigInt,
}

/// Cached `A_n`, `A_HT(2n+1)`, `A_HT(2n)`, `N_n²` and `3^{n/2}N_n` for `n ≤ max`.
#[derive(Clone, Debug, Serialize)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn upto(max: u64) -> Self {
        let rows = (0..=max)
            .map(|n| CountRow {
                n,
                asm: asm_count(n),
                aht_odd: aht_count(2 * n + 1),
                aht_even: (n > 0).then(|| aht_count(2 * n)),
                nn_squared: nn_squared(n),
                spin_sum: spin_sum(n),
            })
            .collect();
        CountTable { rows }
    }

    /// Shared table for `n ≤ 12`, built once.
    pub fn shared() -> &'static CountTable {
        static TABLE: std::sync::OnceLock<CountTable> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| CountTable::upto(12))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,A_n,A_HT(2n+1),A_HT(2n),N_n^2,3^(n/2)N_n\n");
        for r in &self.rows {
            let even = r.aht_even.as_ref().map(|x| x.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.asm, r.aht_odd, even, r.nn_squared, r.spin_sum));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn asm_values() {
        assert_eq!((0..=5).map(asm_count).collect::<Vec<_>>(), big(&[1, 1, 2, 7, 42, 429]));
    }

    #[test]
    fn aht_values() {
        assert_eq!([1, 3, 5, 7, 9].map(aht_count).to_vec(), big(&[1, 3, 25, 588, 39204]));
        assert_eq!([2, 4, 6, 8].map(aht_count).to_vec(), big(&[2, 10, 140, 5544]));
    }

    #[test]
    fn nn_values() {
        assert_eq!((0..=4).map(nn_squared).collect::<Vec<_>>(), big(&[1, 3, 25, 588, 39204]));
        assert_eq!((0..=4).map(spin_sum).collect::<Vec<_>>(), big(&[1, 3, 15, 126, 1782]));
        assert_eq!(nn_number(2), CycNum::integer(5));
        for n in 0..6 {
            let v = nn_number(n);
            assert_eq!(v.clone() * v, CycNum::from_rational(&Rational::from_integer(nn_squared(n))));
        }
    }

    #[test]
    fn first_product_form_agrees() {
        // N_n = 3^{n/2}/2^n · (2·5⋯(3n−1))/(1·3⋯(2n−1)) · A_n
        for n in 0..8u64 {
            let mut r = Rational::from_integer(asm_count(n));
            for j in 1..=n {
                r *= Rational::new(BigInt::from(3 * j - 1), BigInt::from(2 * (2 * j - 1)));
            }
            assert_eq!(r, nn_core(n));
        }
    }

    #[test]
    fn table() {
        let t = CountTable::upto(3);
        assert_eq!(t.rows.len(), 4);
        assert!(t.rows.iter().all(|r| r.asm > BigInt::zero()));
        assert!(t.to_csv().starts_with("n,A_n"));
        assert_eq!(CountTable::shared().rows[4].aht_odd, BigInt::from(39204));
    }
}

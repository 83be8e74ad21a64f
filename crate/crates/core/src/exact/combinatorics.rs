use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ExactRational;

/// `H_l = 1 + 1/2 + … + 1/l`, with `H_0 = 0`.
pub fn harmonic(l: u64) -> ExactRational {
    let mut h = ExactRational::zero();
    for j in 1..=l {
        h += ExactRational::new(BigInt::one(), BigInt::from(j));
    }
    h
}

/// `[H_0, H_1, …, H_n]`, built incrementally.
pub fn harmonic_table(n: usize) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut h = ExactRational::zero();
    out.push(h.clone());
    for j in 1..=n {
        h += ExactRational::new(BigInt::one(), BigInt::from(j));
        out.push(h.clone());
    }
    out
}

/// `lcm(1, …, n)`; both `n = 0` and `n = 1` give 1.
pub fn lcm_upto(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// `[lcm_upto(0), …, lcm_upto(n)]`.
pub fn lcm_table(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut l = BigInt::one();
    out.push(l.clone());
    for k in 1..=n {
        l = l.lcm(&BigInt::from(k));
        out.push(l.clone());
    }
    out
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// The row `C(n, 0), …, C(n, n)` produced by the multiplicative recurrence.
#[derive(Debug, Clone)]
pub struct BinomialRow(Vec<BigInt>);

impl BinomialRow {
    pub fn new(n: u64) -> Self {
        let mut row = Vec::with_capacity(n as usize + 1);
        let mut c = BigInt::one();
        row.push(c.clone());
        for i in 0..n {
            c = c * (n - i) / (i + 1);
            row.push(c.clone());
        }
        BinomialRow(row)
    }

    /// `C(n, k)`, zero outside the row.
    pub fn get(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.0.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), ExactRational::zero());
        assert_eq!(harmonic(1), ratio(1, 1));
        assert_eq!(harmonic(3), ratio(11, 6));
        assert_eq!(harmonic_table(3)[3], ratio(11, 6));
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_upto(0), BigInt::one());
        assert_eq!(lcm_upto(1), BigInt::one());
        assert_eq!(lcm_upto(6), BigInt::from(60));
        assert_eq!(lcm_upto(10), BigInt::from(2520));
        assert_eq!(lcm_table(10)[10], BigInt::from(2520));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        let row = BinomialRow::new(7);
        for k in -1..=9 {
            assert_eq!(row.get(k), binomial(7, k));
        }
    }

    #[test]
    fn harmonic_differences() {
        let h = harmonic_table(200);
        for n in 1..=200 {
            assert_eq!(&h[n] - &h[n - 1], ratio(1, n as i64));
        }
    }

    #[test]
    fn lcm_divisibility_chain() {
        let l = lcm_table(120);
        for n in 1..120 {
            for k in 1..=n {
                assert!(l[n].is_multiple_of(&BigInt::from(k)));
            }
            assert!(l[n + 1].is_multiple_of(&l[n]));
        }
    }

    proptest! {
        #[test]
        fn pascal_rule(n in 1u64..80, k in 0i64..80) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
        }
    }
}

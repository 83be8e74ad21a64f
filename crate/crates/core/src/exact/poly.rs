use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fraction_string, ExactRational};

/// Dense univariate polynomial over the rationals; `coeffs[i]` multiplies `x^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree −1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: ExactRational, k: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Poly::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| ExactRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        if x.is_one() {
            return self
                .coeffs
                .iter()
                .fold(ExactRational::zero(), |acc, c| acc + c);
        }
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Exact division by `x`; `None` when the constant term is nonzero.
    pub fn div_x(&self) -> Option<Poly> {
        match self.coeffs.first() {
            None => Some(Poly::zero()),
            Some(c) if c.is_zero() => Some(Poly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
            Some(_) => None,
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(c·x)`.
    pub fn compose_scale(&self, c: &ExactRational) -> Poly {
        let mut pow = ExactRational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &pow);
            pow *= c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Least common multiple of the coefficient denominators: the smallest
    /// positive integer `M` with `M·p ∈ Z[x]`.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// True when every coefficient up to the degree is strictly positive.
    pub fn all_coeffs_positive(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(Signed::is_positive)
    }

    pub fn leading_coeff(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    /// Coefficients as fraction strings, lowest power first.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Human-readable form, e.g. `9/2 - 2x - 47/4x^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fraction_string(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => f.write_str(&mag)?,
                _ => {
                    if mag != "1" {
                        f.write_str(&mag)?;
                    }
                    f.write_str("x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(Poly::zero().degree(), -1);
        assert_eq!(Poly::from_ints([0, 0, 0]).degree(), -1);
        assert_eq!(Poly::from_ints([1, 2, 0]).degree(), 1);
    }

    #[test]
    fn horner_examples() {
        assert_eq!(Poly::from_ints([1, 2]).eval(&rat(1)), rat(3));
        assert_eq!(Poly::zero().eval(&ratio(7, 3)), rat(0));
        assert_eq!(Poly::from_ints([1, 12, 3]).eval(&rat(1)), rat(16));
        assert_eq!(Poly::from_ints([1, 12, 3]).eval(&ratio(1, 2)), ratio(31, 4));
    }

    #[test]
    fn display() {
        let p = Poly::from_coeffs(vec![ratio(9, 2), rat(-2), ratio(-47, 4)]);
        assert_eq!(p.to_string(), "9/2 - 2x - 47/4x^2");
        assert_eq!(Poly::from_ints([0, -1]).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn div_x_requires_zero_constant() {
        assert_eq!(
            Poly::from_ints([0, 3, 4]).div_x(),
            Some(Poly::from_ints([3, 4]))
        );
        assert_eq!(Poly::from_ints([1, 3]).div_x(), None);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-50i64..50, 1i64..12), 0..7)
            .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(p in small_poly(), q in small_poly(), xn in -20i64..20, xd in 1i64..9) {
            let x = ratio(xn, xd);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        }

        #[test]
        fn eval_is_additive(p in small_poly(), q in small_poly(), xn in -20i64..20, xd in 1i64..9) {
            let x = ratio(xn, xd);
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
            prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        }

        #[test]
        fn product_rule(p in small_poly(), q in small_poly()) {
            let lhs = (&p * &q).derivative();
            let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

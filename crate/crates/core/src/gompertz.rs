//! Approximants of `e^x E₁(x)`.
//!
//! The denominator has a closed form. The numerator is extracted from the
//! Mellin-transform identity
//!
//! ```text
//! Σ_{k<n} F₁[k]·(s)_k + Σ_{k≤n} F₂[k]·(s)_k/(s+k) = (1/n!)·(1−s)_n² / (s)_{n+1}
//! ```
//!
//! by exact rational-function algebra in `s`: Euclidean division splits off
//! the polynomial part, the simple poles at `s = 0, −1, …, −n` recover `F₂`,
//! and the remaining polynomial is rewritten in the rising-factorial basis,
//! whose coordinates are the monomial coefficients of `F₁`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::approximant::{ApproximantPair, Family};
use crate::error::{Error, Result};
use crate::exact::{factorial, rat, BinomialRow, ExactRational, Poly};

/// `F_{n;2}^(II)(x) = Σ_l C(n,l)·C(n+l,l)²·x^l/l!`.
pub fn gompertz_denominator(n: u64) -> Poly {
    let row = BinomialRow::new(n);
    let mut col = BigInt::one();
    let mut lf = BigInt::one();
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for l in 0..=n {
        if l > 0 {
            col = col * (n + l) / l;
            lf *= l;
        }
        coeffs.push(ExactRational::new(
            &row.as_slice()[l as usize] * &col * &col,
            lf.clone(),
        ));
    }
    Poly::from_coeffs(coeffs)
}

// Integer polynomials in `s`, lowest power first.
type IntPoly = Vec<BigInt>;

/// Multiply in place by the linear factor `(a·s + c)`.
fn mul_linear(p: &mut IntPoly, a: i64, c: i64) {
    p.push(BigInt::zero());
    for i in (0..p.len()).rev() {
        let lower = if i > 0 { &p[i - 1] * a } else { BigInt::zero() };
        p[i] = &p[i] * c + lower;
    }
}

/// Product of two polynomials with nonnegative coefficients by Kronecker
/// substitution: pack each into one integer, multiply once, unpack.
fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let to_u = |v: &[BigInt]| -> Vec<BigUint> {
        v.iter()
            .map(|c| c.to_biguint().expect("nonnegative coefficient"))
            .collect()
    };
    let (ua, ub) = (to_u(a), to_u(b));
    let max_bits = |v: &[BigUint]| v.iter().map(BigUint::bits).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let need = max_bits(&ua) + max_bits(&ub) + 64 - terms.leading_zeros() as u64 + 1;
    let limbs = need.div_ceil(32) as usize;
    let pack = |v: &[BigUint]| {
        let mut digits = vec![0u32; v.len() * limbs];
        for (k, c) in v.iter().enumerate() {
            let d = c.to_u32_digits();
            digits[k * limbs..k * limbs + d.len()].copy_from_slice(&d);
        }
        BigUint::new(digits)
    };
    let digits = (pack(&ua) * pack(&ub)).to_u32_digits();
    (0..a.len() + b.len() - 1)
        .map(|k| {
            let lo = (k * limbs).min(digits.len());
            let hi = ((k + 1) * limbs).min(digits.len());
            BigInt::from(BigUint::from_slice(&digits[lo..hi]))
        })
        .collect()
}

/// `(1/n!)·(1−s)_n² / (s)_{n+1}`: numerator of degree `2n` over the monic
/// denominator `s(s+1)…(s+n)` with roots `0, −1, …, −n`.
#[derive(Debug, Clone)]
pub struct MellinRationalFunction {
    pub n: u64,
    /// Coefficients of `(1−s)_n²`.
    pub numerator: Vec<BigInt>,
    /// `1/n!`.
    pub scale: ExactRational,
}

/// `(s+lo)(s+lo+1)…(s+hi−1)` by a balanced product tree.
fn rising_product(lo: i64, hi: i64) -> IntPoly {
    if hi - lo <= 16 {
        let mut p = vec![BigInt::one()];
        for j in lo..hi {
            mul_linear(&mut p, 1, j);
        }
        return p;
    }
    let mid = lo + (hi - lo) / 2;
    kronecker_mul(&rising_product(lo, mid), &rising_product(mid, hi))
}

impl MellinRationalFunction {
    pub fn new(n: u64) -> Self {
        // (1−s)_n with s → −s is (s+1)_n, which has positive coefficients
        let rising = rising_product(1, n as i64 + 1);
        let mut numerator = kronecker_mul(&rising, &rising);
        for c in numerator.iter_mut().skip(1).step_by(2) {
            *c = -&*c;
        }
        MellinRationalFunction {
            n,
            numerator,
            scale: ExactRational::new(BigInt::one(), factorial(n)),
        }
    }

    /// Quotient `q` of the Euclidean division `(1−s)_n² = q·(s)_{n+1} + r`.
    ///
    /// `(s)_{n+1}` is divided out one linear factor at a time, so only
    /// small-integer multiplications occur.
    pub fn quotient(&self) -> Vec<BigInt> {
        let mut q = self.numerator.clone();
        for j in 0..=self.n {
            q = divide_linear(&q, j).0;
        }
        q
    }

    /// Residue `ρ_j` of `(1−s)_n²/(s)_{n+1}` at `s = −j`, `j = 0..=n`:
    /// the numerator `((n+j)!/j!)²` over `Π_{i≠j}(i − j) = (−1)^j·j!·(n−j)!`.
    pub fn residues(&self) -> Vec<ExactRational> {
        let fact = factorial_table(2 * self.n as usize);
        (0..=self.n as usize)
            .map(|j| {
                let (top, d) = self.residue_parts(&fact, j);
                ExactRational::new(top, d)
            })
            .collect()
    }

    /// `ρ_j·(−1)^j/j!` for `j = 0..=n`, which is `n!` times the pole
    /// coefficient against `(s)_j/(s+j)`. These are integers, so the division
    /// is exact; a nonzero remainder is reported rather than rounded away.
    pub fn pole_weights(&self) -> Result<Vec<BigInt>> {
        let fact = factorial_table(2 * self.n as usize);
        (0..=self.n as usize)
            .map(|j| {
                let (top, d) = self.residue_parts(&fact, j);
                let (w, r) = top.div_rem(&(d * &fact[j]));
                if !r.is_zero() {
                    return Err(Error::Internal(format!("pole weight {j} is not integral")));
                }
                Ok(if j % 2 == 1 { -w } else { w })
            })
            .collect()
    }

    fn residue_parts(&self, fact: &[BigInt], j: usize) -> (BigInt, BigInt) {
        let n = self.n as usize;
        let top = &fact[n + j] / &fact[j];
        let d = &fact[j] * &fact[n - j];
        (&top * &top, if j % 2 == 1 { -d } else { d })
    }
}

fn factorial_table(m: usize) -> Vec<BigInt> {
    let mut fact = vec![BigInt::one()];
    for i in 1..=m {
        let next = &fact[i - 1] * i;
        fact.push(next);
    }
    fact
}

/// Synthetic division by `(s + j)`: `(quotient, remainder)`.
fn divide_linear(p: &[BigInt], j: u64) -> (IntPoly, BigInt) {
    if p.is_empty() {
        return (Vec::new(), BigInt::zero());
    }
    let mut out = vec![BigInt::zero(); p.len() - 1];
    let mut carry = BigInt::zero();
    for i in (0..p.len()).rev() {
        let c = &p[i] - &carry * j;
        if i == 0 {
            return (out, c);
        }
        out[i - 1] = c.clone();
        carry = c;
    }
    unreachable!()
}

/// Coordinates of `p` in the basis `(s)_0, (s)_1, …`, by Newton synthetic
/// division at the nodes `0, −1, −2, …`.
fn to_rising_basis(p: &[BigInt]) -> IntPoly {
    let mut rest = p.to_vec();
    let mut coords = Vec::with_capacity(p.len());
    for l in 0..p.len() as u64 {
        let (q, r) = divide_linear(&rest, l);
        coords.push(r);
        rest = q;
    }
    coords
}

/// `(p, v_p(n!))` for every prime `p ≤ n`.
fn factorial_factorization(n: u64) -> Vec<(u32, u32)> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        (p * p..=n).step_by(p).for_each(|m| composite[m] = true);
        let (mut e, mut q) = (0, n);
        while q >= p {
            q /= p;
            e += q;
        }
        out.push((p as u32, e as u32));
    }
    out
}

/// `c/n!` in lowest terms. The common factor is found prime by prime from
/// the known factorization of `n!`: one remainder modulo the largest power of
/// `p` below 2^64 gives `v_p(c)` whenever it is nonzero.
fn over_factorial(mut c: BigInt, factors: &[(u32, u32)], nf: &BigInt) -> ExactRational {
    if c.is_zero() {
        return ExactRational::zero();
    }
    let mut g = BigInt::one();
    for &(p, e) in factors {
        let v = if p == 2 {
            c.trailing_zeros().unwrap_or(0).min(e as u64) as u32
        } else {
            p_adic_valuation(&c, p, e)
        };
        if v > 0 {
            let pv = BigInt::from(p).pow(v);
            c /= &pv;
            g *= pv;
        }
    }
    ExactRational::new_raw(c, nf / g)
}

/// `min(v_p(c), cap)` for odd `p`.
fn p_adic_valuation(c: &BigInt, p: u32, cap: u32) -> u32 {
    let (mut chunk, mut k) = (p as u64, 1u32);
    while let Some(next) = chunk.checked_mul(p as u64) {
        chunk = next;
        k += 1;
    }
    let mut v = 0;
    let mut rest = c.magnitude().clone();
    while v < cap {
        let r = (&rest % chunk).to_u64().expect("remainder below 2^64");
        if r == 0 {
            v += k;
            rest /= chunk;
            continue;
        }
        let mut r = r;
        while r.is_multiple_of(p as u64) {
            r /= p as u64;
            v += 1;
        }
        break;
    }
    v.min(cap)
}

/// Both halves of the Gompertz pair recovered from the Mellin identity.
#[derive(Debug, Clone)]
pub struct MellinExtraction {
    pub numerator: Poly,
    pub recovered_denominator: Poly,
}

/// Run the partial-fraction pipeline without the consistency gate.
pub fn extract_from_mellin(n: u64) -> Result<MellinExtraction> {
    let mellin = MellinRationalFunction::new(n);
    let q = mellin.quotient();
    // (s)_k/(s+k) = q_k(s) + (−1)^k k!/(s+k), so matching simple poles gives
    // n!·F₂[k] = ρ_k·(−1)^k/k! = β_k.
    let beta = mellin.pole_weights()?;
    let nf = factorial(n);
    let factors = factorial_factorization(n);
    let recovered_denominator = Poly::from_coeffs(
        beta.iter()
            .map(|b| over_factorial(b.clone(), &factors, &nf))
            .collect(),
    );

    // Peeling (s)_j = (s)_{j−1}·((s+k) − (k−j+1)) gives, in the rising basis,
    //   q_k = Σ_{i=0}^{k−1} (−1)^i·i!·(s)_{k−1−i}.
    // Hence q − Σ_k β_k q_k has coordinate
    //   q_j − Σ_{i≥0} (−1)^i·i!·β_{j+1+i}
    // on (s)_j, and that coordinate is n!·F₁[j].
    let nu = n as usize;
    let mut coords = to_rising_basis(&q);
    coords.resize(nu.max(coords.len()), BigInt::zero());
    // The correlation Σ_i (−1)^i·i!·β_{j+1+i} is split by the parity of i
    // into two products with nonnegative coefficients (β_k > 0): reversing
    // β_1..β_n turns each correlation into a convolution read at n−1−j.
    if nu > 0 {
        let mut even = Vec::with_capacity(nu);
        let mut odd = Vec::with_capacity(nu);
        let mut fact = BigInt::one();
        for i in 0..nu {
            if i > 0 {
                fact *= i;
            }
            let (e, o) = if i % 2 == 0 {
                (fact.clone(), BigInt::zero())
            } else {
                (BigInt::zero(), fact.clone())
            };
            even.push(e);
            odd.push(o);
        }
        let reversed: Vec<BigInt> = beta[1..].iter().rev().cloned().collect();
        let ce = kronecker_mul(&even, &reversed);
        let co = kronecker_mul(&odd, &reversed);
        for (j, c) in coords.iter_mut().enumerate().take(nu) {
            *c -= &ce[nu - 1 - j] - &co[nu - 1 - j];
        }
    }
    let numerator = Poly::from_coeffs(
        coords
            .into_iter()
            .map(|c| over_factorial(c, &factors, &nf))
            .collect(),
    );
    Ok(MellinExtraction {
        numerator,
        recovered_denominator,
    })
}

/// `F_{n;1}^(II)`; fails if the recovered denominator disagrees with
/// [`gompertz_denominator`].
pub fn gompertz_numerator(n: u64) -> Result<Poly> {
    let ex = extract_from_mellin(n)?;
    if ex.recovered_denominator != gompertz_denominator(n) {
        return Err(Error::Internal(format!(
            "partial-fraction denominator mismatch at n = {n}"
        )));
    }
    Ok(ex.numerator)
}

pub fn gompertz_pair(n: u64) -> Result<ApproximantPair> {
    Ok(ApproximantPair {
        family: Family::Gompertz,
        index_n: n,
        numerator: gompertz_numerator(n)?,
        denominator: gompertz_denominator(n),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub n: u64,
    pub numerator_ok: bool,
    pub denominator_ok: bool,
}

impl IntegralityReport {
    pub fn ok(&self) -> bool {
        self.numerator_ok && self.denominator_ok
    }
}

/// Whether `n!·F₁^(II)` and `n!·F₂^(II)` have integer coefficients.
pub fn gompertz_integrality_check(pair: &ApproximantPair) -> IntegralityReport {
    let nf = rat(factorial(pair.index_n));
    IntegralityReport {
        n: pair.index_n,
        numerator_ok: pair.numerator.scale(&nf).is_integral(),
        denominator_ok: pair.denominator.scale(&nf).is_integral(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn denominator_examples() {
        assert_eq!(gompertz_denominator(0), Poly::one());
        assert_eq!(gompertz_denominator(1), Poly::from_ints([1, 4]));
        assert_eq!(gompertz_denominator(2), Poly::from_ints([1, 18, 18]));
    }

    #[test]
    fn numerator_examples() {
        assert!(gompertz_numerator(0).unwrap().is_zero());
        assert_eq!(gompertz_numerator(1).unwrap(), Poly::from_ints([-3]));
        assert_eq!(
            gompertz_numerator(2).unwrap(),
            Poly::from_coeffs(vec![ratio(-9, 2), ratio(-35, 2)])
        );
        assert_eq!(
            gompertz_numerator(3).unwrap(),
            Poly::from_coeffs(vec![ratio(-11, 2), ratio(-173, 2), ratio(-133, 2)])
        );
    }

    // (1−s)²/(s(s+1)) = 1 + 1/s − 4/(s+1)
    #[test]
    fn partial_fractions_n1() {
        let m = MellinRationalFunction::new(1);
        assert_eq!(m.quotient(), vec![BigInt::one()]);
        assert_eq!(m.residues(), vec![rat(1), rat(-4)]);
    }

    // n = 2: residues (1, −18, 36), polynomial part (1/2)s − 9/2 after scaling.
    #[test]
    fn partial_fractions_n2() {
        let m = MellinRationalFunction::new(2);
        let half = ratio(1, 2);
        let q: Vec<_> = m.quotient().into_iter().map(|c| rat(c) * &half).collect();
        assert_eq!(q, vec![ratio(-9, 2), ratio(1, 2)]);
        let res: Vec<_> = m.residues().into_iter().map(|c| c * &half).collect();
        assert_eq!(res, vec![rat(1), rat(-18), rat(36)]);
    }

    // Reassemble q·(s)_{n+1} + Σ ρ_j·(s)_{n+1}/(s+j) and compare with (1−s)_n².
    #[test]
    fn partial_fractions_reassemble() {
        for n in 0..12u64 {
            let m = MellinRationalFunction::new(n);
            let mut den = vec![BigInt::one()];
            for j in 0..=n as i64 {
                mul_linear(&mut den, 1, j);
            }
            let to_poly = |v: &[BigInt]| Poly::from_ints(v.iter().cloned());
            let mut total = &to_poly(&m.quotient()) * &to_poly(&den);
            for (j, rho) in m.residues().into_iter().enumerate() {
                let (cofactor, rem) = divide_linear(&den, j as u64);
                assert!(rem.is_zero());
                total = &total + &to_poly(&cofactor).scale(&rho);
            }
            assert_eq!(total, to_poly(&m.numerator), "n = {n}");
        }
    }

    #[test]
    fn rising_basis_round_trip() {
        // s² = (s)_2 − (s)_1, s³ = (s)_3 − 3(s)_2 + (s)_1
        let c = to_rising_basis(&[BigInt::zero(), BigInt::zero(), BigInt::one()]);
        assert_eq!(c, vec![BigInt::zero(), BigInt::from(-1), BigInt::one()]);
        let c = to_rising_basis(&[0, 0, 0, 1].map(BigInt::from));
        assert_eq!(c, [0, 1, -3, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = [3u64, 0, 7, u64::MAX].map(BigInt::from).to_vec();
        let b: Vec<BigInt> = [1u64, 5, 1 << 40].map(BigInt::from).to_vec();
        let mut naive = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                naive[i + j] += x * y;
            }
        }
        assert_eq!(kronecker_mul(&a, &b), naive);
        let mut direct = vec![BigInt::one()];
        for j in 3..60 {
            mul_linear(&mut direct, 1, j);
        }
        assert_eq!(rising_product(3, 60), direct);
    }

    #[test]
    fn reduction_over_factorial() {
        let n = 30u64;
        let nf = factorial(n);
        let factors = factorial_factorization(n);
        assert_eq!(factors[..3], [(2, 26), (3, 14), (5, 7)]);
        let big = BigInt::from(3u32).pow(200u32) * BigInt::from(7) + BigInt::one();
        for c in [
            BigInt::from(-12),
            BigInt::from(3u32).pow(40u32),
            -BigInt::from(2u32).pow(90u32) * BigInt::from(11),
            big.clone(),
            -big * BigInt::from(5),
        ] {
            assert_eq!(
                over_factorial(c.clone(), &factors, &nf),
                ExactRational::new(c, nf.clone())
            );
        }
    }

    #[test]
    fn degrees() {
        for n in 1..20 {
            let p = gompertz_pair(n).unwrap();
            assert_eq!(p.denominator.degree(), n as isize);
            assert!(p.numerator.degree() < n as isize);
            assert!(p.denominator.all_coeffs_positive());
        }
    }

    #[test]
    fn integrality_examples() {
        for n in 0..3 {
            assert!(gompertz_integrality_check(&gompertz_pair(n).unwrap()).ok());
        }
        let two = gompertz_numerator(2).unwrap().scale(&rat(2));
        assert_eq!(two, Poly::from_ints([-9, -35]));
    }
}

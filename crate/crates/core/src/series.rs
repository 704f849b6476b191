//! Exact truncated power series over the rationals, used to exhibit the ring
//! `S = ℤ_(p) + T·ℚ[[T]]` whose maximal ideal is principal.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::ring::is_prime;

/// `c_0 + c_1 T + ... + c_N T^N`, products truncated at degree `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl TruncatedSeries {
    pub fn zero(prec: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); prec + 1],
        }
    }

    pub fn constant(prec: usize, c: BigRational) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    /// `c T^k`, or zero when `k` exceeds the precision.
    pub fn monomial(prec: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(prec);
        if k <= prec {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(prec: usize, coeffs: &[BigRational]) -> Self {
        let mut s = Self::zero(prec);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn check_prec(&self, other: &Self) {
        assert_eq!(self.prec(), other.prec(), "series of different precision");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_prec(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_prec(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check_prec(rhs);
        let n = self.prec();
        let mut out = TruncatedSeries::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})T"),
                _ => format!("({c})T^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn p_divides(p: &BigInt, x: &BigInt) -> bool {
    x.mod_floor(p).is_zero()
}

/// `c_0 ∈ ℤ_(p)`: membership in `ℤ_(p) + T·ℚ[[T]]`.
pub fn in_witness_ring(s: &TruncatedSeries, p: u64) -> bool {
    !p_divides(&BigInt::from(p), s.coeffs[0].denom())
}

/// `c_0 ∈ pℤ_(p)`: membership in the maximal ideal `pℤ_(p) + T·ℚ[[T]]`.
pub fn in_maximal_ideal(s: &TruncatedSeries, p: u64) -> bool {
    let p = BigInt::from(p);
    !p_divides(&p, s.coeffs[0].denom()) && p_divides(&p, s.coeffs[0].numer())
}

/// One division `x = p · y` with `y` in the ring.
#[derive(Clone, Debug, Serialize)]
pub struct DivisionStep {
    pub element: String,
    pub quotient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisionTranscript {
    pub p: u64,
    pub prec: usize,
    pub steps: Vec<DivisionStep>,
    /// Elements `s` of the ring whose multiple `p·s` was checked to lie in
    /// the maximal ideal.
    pub converse_checked: usize,
}

/// The rational test basis `{1, 1/p, p, 1 + 1/p}`.
pub fn test_basis(p: u64) -> Vec<BigRational> {
    let p = p as i64;
    vec![rat(1, 1), rat(1, p), rat(p, 1), rat(p + 1, p)]
}

fn validate(p: u64, prec: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(CoreError::InvalidParameter(format!("{p} is not prime")));
    }
    if prec < 2 {
        return Err(CoreError::InvalidParameter(format!(
            "precision {prec} is below 2"
        )));
    }
    Ok(())
}

/// Checks that the maximal ideal of `ℤ_(p) + T·ℚ[[T]]` is `p` times the ring
/// at precision `prec`: each generator `p`, `q T^k` and a mixed sum divides
/// by `p` inside the ring, and `p` times each test element of the ring lies
/// in the maximal ideal.
pub fn witness_check_principal_maximal(p: u64, prec: usize) -> Result<DivisionTranscript> {
    validate(p, prec)?;
    let pr = rat(p as i64, 1);
    let inv_p = rat(1, p as i64);
    let basis = test_basis(p);
    let mut family = vec![TruncatedSeries::constant(prec, pr.clone())];
    for k in 1..=prec {
        for q in &basis {
            family.push(TruncatedSeries::monomial(prec, k, q.clone()));
        }
    }
    let mixed: Vec<BigRational> = std::iter::once(pr.clone())
        .chain(basis.iter().cloned().cycle().take(prec))
        .collect();
    family.push(TruncatedSeries::from_coeffs(prec, &mixed));

    let mut steps = Vec::with_capacity(family.len());
    for x in &family {
        if !in_maximal_ideal(x, p) {
            return Err(CoreError::WitnessFailure(format!(
                "{x} is not in the maximal ideal"
            )));
        }
        let y = x.scale(&inv_p);
        if !in_witness_ring(&y, p) {
            return Err(CoreError::WitnessFailure(format!(
                "{x} / {p} = {y} leaves the ring"
            )));
        }
        if &TruncatedSeries::constant(prec, pr.clone()) * &y != *x {
            return Err(CoreError::WitnessFailure(format!(
                "{p} · ({y}) does not give back {x}"
            )));
        }
        steps.push(DivisionStep {
            element: x.to_string(),
            quotient: y.to_string(),
        });
    }

    let mut ring_elements = vec![TruncatedSeries::constant(prec, BigRational::one())];
    for q in &basis {
        let mut c = vec![BigRational::one(), q.clone()];
        c.extend(std::iter::repeat_n(q.clone(), prec.saturating_sub(1)));
        ring_elements.push(TruncatedSeries::from_coeffs(prec, &c));
        ring_elements.push(TruncatedSeries::monomial(prec, 1, q.clone()));
    }
    for s in &ring_elements {
        debug_assert!(in_witness_ring(s, p));
        let ps = s.scale(&pr);
        if !in_maximal_ideal(&ps, p) {
            return Err(CoreError::WitnessFailure(format!(
                "{p} · ({s}) is not in the maximal ideal"
            )));
        }
    }
    Ok(DivisionTranscript {
        p,
        prec,
        steps,
        converse_checked: ring_elements.len(),
    })
}

/// Embedding dimensions in the series example, which falls outside every
/// finite instance because `f(M)B = B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesWitness {
    pub embdim_a: usize,
    pub embdim_d: usize,
    pub nu_j: usize,
}

impl SeriesWitness {
    /// `embdim(A) + ν(J)`, strictly above `embdim(D)` here.
    pub fn upper_bound(&self) -> usize {
        self.embdim_a + self.nu_j
    }
}

pub fn witness_embdim_equality(p: u64, prec: usize) -> Result<SeriesWitness> {
    validate(p, prec)?;
    let pr = TruncatedSeries::constant(prec, rat(p as i64, 1));
    let inv = TruncatedSeries::constant(prec, rat(1, p as i64));
    let one = TruncatedSeries::constant(prec, BigRational::one());
    // f(M)B = B: p is a unit of ℚ[[T]]
    if &pr * &inv != one {
        return Err(CoreError::WitnessFailure("p · (1/p) != 1".into()));
    }
    witness_check_principal_maximal(p, prec)?;
    // M = pℤ_(p) and N = pS are principal; p / p² = 1/p lies in neither ring,
    // so p ∉ M² and p ∉ N², giving embdim 1 on both sides
    if in_witness_ring(&inv, p) {
        return Err(CoreError::WitnessFailure("1/p lies in S".into()));
    }
    // J = T·ℚ[[T]] is generated by T and nonzero
    let t = TruncatedSeries::monomial(prec, 1, BigRational::one());
    if t.is_zero() {
        return Err(CoreError::WitnessFailure(
            "T vanishes at this precision".into(),
        ));
    }
    let w = SeriesWitness {
        embdim_a: 1,
        embdim_d: 1,
        nu_j: 1,
    };
    if w.embdim_d >= w.upper_bound() {
        return Err(CoreError::WitnessFailure("no strict inequality".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact_and_truncated() {
        let a = TruncatedSeries::from_coeffs(3, &[rat(1, 1), rat(1, 3)]);
        let b = TruncatedSeries::from_coeffs(3, &[rat(1, 1), rat(-1, 3)]);
        assert_eq!((&a * &b).coeffs()[2], rat(-1, 9));
        let t = TruncatedSeries::monomial(3, 1, rat(1, 1));
        let t3 = &(&t * &t) * &t;
        assert!((&t3 * &t).is_zero());
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn membership() {
        let half_t = TruncatedSeries::monomial(5, 1, rat(1, 2));
        assert!(in_maximal_ideal(&half_t, 2));
        let s = TruncatedSeries::from_coeffs(8, &[rat(3, 1), rat(1, 1), rat(1, 1)]);
        let q = s.scale(&rat(1, 3));
        assert!(in_witness_ring(&q, 3));
        assert_eq!(q.coeffs()[0], rat(1, 1));
        assert!(!in_witness_ring(
            &TruncatedSeries::constant(2, rat(1, 5)),
            5
        ));
        assert!(in_witness_ring(&TruncatedSeries::constant(2, rat(1, 3)), 5));
    }

    #[test]
    fn principal_maximal_ideal() {
        let tr = witness_check_principal_maximal(2, 5).unwrap();
        assert!(tr
            .steps
            .iter()
            .any(|s| s.element == "(1)T" && s.quotient == "(1/2)T"));
        assert_eq!(tr.steps.len(), 1 + 4 * 5 + 1);
        assert!(witness_check_principal_maximal(4, 5).is_err());
        assert!(witness_check_principal_maximal(3, 1).is_err());
    }

    #[test]
    fn embedding_dimensions() {
        for (p, n) in [(2, 5), (5, 3), (3, 2)] {
            let w = witness_embdim_equality(p, n).unwrap();
            assert_eq!((w.embdim_a, w.embdim_d, w.upper_bound()), (1, 1, 2));
        }
    }
}

//! Dense univariate polynomials in lambda over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::factor;

/// Coefficients in ascending order of degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `lambda - root`
    pub fn linear(root: &BigRational) -> Self {
        Self::new(vec![-root.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.scale(&lead.recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((UniPoly::zero(), UniPoly::zero()));
        };
        if nd < dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let lead_inv = divisor.leading().recip();
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Content and primitive integer part: `self = content * primitive`,
    /// with the primitive part having positive leading coefficient.
    pub fn primitive_integer_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, denom_lcm), prim)
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Monic greatest common divisor, via a primitive remainder sequence.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, a) = self.primitive_integer_part();
        let (_, b) = other.primitive_integer_part();
        let (mut a, mut b) = (UniPoly::from_integers(&a), UniPoly::from_integers(&b));
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = if r.is_zero() { r } else { UniPoly::from_integers(&r.primitive_integer_part().1) };
        }
        a.monic()
    }

    /// Square-free decomposition `self = c * prod f_i^i` (Yun), returning the
    /// nonconstant monic `f_i` with their multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut mult = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), mult));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            mult += 1;
        }
        out
    }

    /// Complete factorization over the rationals into monic irreducible
    /// factors with multiplicity, sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            let (_, prim) = part.primitive_integer_part();
            for irreducible in factor::factor_squarefree(&prim) {
                out.push((UniPoly::from_integers(&irreducible).monic(), mult));
            }
        }
        out.sort_by(|a, b| {
            a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        out
    }

    /// Rational roots with multiplicities, ascending.
    pub fn rational_roots(&self) -> Vec<(BigRational, u32)> {
        let mut roots: Vec<(BigRational, u32)> = self
            .factor()
            .into_iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(f, m)| (-f.coeff(0), m))
            .collect();
        roots.sort();
        roots
    }

    /// Sign-convention-free textual form, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = if k == 0 { c.abs().to_string() } else { format!("{}*{}^{}", c.abs(), var, k) };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("lam"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let f = p(&[-4, 0, 1]);
        let (q, r) = f.div_rem(&p(&[-2, 1])).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(&p(&[-2, 1]) * &p(&[2, 1]), f);
        assert!(f.div_rem(&UniPoly::zero()).is_err());
        assert_eq!(f.eval(&rat(3)), rat(5));
    }

    #[test]
    fn gcd_cases() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), UniPoly::one());
        assert_eq!(UniPoly::zero().gcd(&p(&[4, 2])), p(&[2, 1]));
    }

    #[test]
    fn squarefree_parts() {
        // (x-1)^2 (x+2)^3 (x^2+1)
        let lin1 = p(&[-1, 1]);
        let lin2 = p(&[2, 1]);
        let q = p(&[1, 0, 1]);
        let f = &(&(&lin1 * &lin1) * &(&(&lin2 * &lin2) * &lin2)) * &q;
        let parts = f.squarefree_decomposition();
        assert_eq!(parts, vec![(q.clone(), 1), (lin1.clone(), 2), (lin2.clone(), 3)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let f = &(&p(&[-5, 1]) * &p(&[-5, 1])) * &(&p(&[7, -2]) * &p(&[-2, 0, 1]));
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(BigRational::new(7.into(), 2.into()), 1), (rat(5), 2)]);
    }

    #[test]
    fn primitive_part() {
        let f = UniPoly::new(vec![BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into())]);
        let (c, prim) = f.primitive_integer_part();
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(c, BigRational::new((-1).into(), 4.into()));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-4, 0, 1]).to_string(), "1*lam^2 - 4");
        assert_eq!(p(&[0, -1]).to_string(), "-1*lam^1");
    }
}

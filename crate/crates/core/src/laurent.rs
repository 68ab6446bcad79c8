//! Sparse Laurent polynomials in `z_1..z_d` and `lambda` over the rationals.
//!
//! A term is keyed by an [`Exponent`]: an integer vector for the `z`
//! variables plus a nonnegative power of `lambda`. Terms are kept in a
//! `BTreeMap`, so iteration follows the lexicographic order on
//! `(lambda, z)` and output is reproducible. Zero coefficients are never
//! stored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub lambda: u32,
    pub z: Vec<i64>,
}

impl Exponent {
    pub fn new(z: Vec<i64>, lambda: u32) -> Self {
        Exponent { lambda, z }
    }

    /// The support point `(a_1, .., a_d, b)`.
    pub fn point(&self) -> Vec<i64> {
        let mut p = self.z.clone();
        p.push(self.lambda as i64);
        p
    }

    fn mul(&self, other: &Exponent) -> Exponent {
        Exponent {
            lambda: self.lambda + other.lambda,
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Integer weight vector of length `d + 1`; the last entry weights `lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn dot(&self, point: &[i64]) -> i64 {
        self.0.iter().zip(point).map(|(w, p)| w * p).sum()
    }

    pub fn weigh(&self, e: &Exponent) -> i64 {
        let z: i64 = self.0.iter().zip(&e.z).map(|(w, a)| w * a).sum();
        z + self.0.last().copied().unwrap_or(0) * e.lambda as i64
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

fn check_dim(a: usize, b: usize) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch(a, b))
    }
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; dim], 0, c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    pub fn lambda(dim: usize) -> Self {
        Self::monomial(vec![0; dim], 1, BigRational::one())
    }

    /// `c * z^a * lambda^b`
    pub fn monomial(a: Vec<i64>, b: u32, c: BigRational) -> Self {
        let dim = a.len();
        let mut p = Self::zero(dim);
        p.add_term(Exponent::new(a, b), c);
        p
    }

    /// `z_k^power` (0-based `k`).
    pub fn z(dim: usize, k: usize, power: i64) -> Self {
        let mut a = vec![0; dim];
        a[k] = power;
        Self::monomial(a, 0, BigRational::one())
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_univariate(dim: usize, f: &UniPoly) -> Self {
        Self::from_terms(
            dim,
            f.coeffs().iter().enumerate().map(|(b, c)| (Exponent::new(vec![0; dim], b as u32), c.clone())),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Exponent) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        assert_eq!(e.z.len(), self.dim, "exponent length must equal dimension");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        check_dim(self.dim, other.dim)?;
        let mut out = LaurentPoly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(self.dim), |acc, _| &acc * self)
    }

    /// Support points `(a, b)`, with the lambda exponent last.
    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().map(Exponent::point).collect()
    }

    /// Support projected onto the first `keep` z-variables and lambda.
    /// Used when extra z-slots carry symbolic labels.
    pub fn projected_support(&self, keep: usize) -> BTreeSet<Vec<i64>> {
        self.terms
            .keys()
            .map(|e| {
                let mut p = e.z[..keep].to_vec();
                p.push(e.lambda as i64);
                p
            })
            .collect()
    }

    fn check_weight(&self, w: &WeightVector) -> Result<(), AlgebraError> {
        if w.0.len() != self.dim + 1 {
            return Err(AlgebraError::WeightLength { expected: self.dim + 1, got: w.0.len() });
        }
        Ok(())
    }

    pub fn min_weight(&self, w: &WeightVector) -> Result<Option<i64>, AlgebraError> {
        self.check_weight(w)?;
        Ok(self.terms.keys().map(|e| w.weigh(e)).min())
    }

    /// Sum of the terms whose weight under `w` is exactly `m`.
    pub fn terms_at_weight(&self, w: &WeightVector, m: i64) -> Result<LaurentPoly, AlgebraError> {
        self.check_weight(w)?;
        Ok(LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| w.weigh(e) == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// The facial polynomial `f_w`: terms minimizing `w . (a, b)`.
    pub fn facial_polynomial(&self, w: &WeightVector) -> Result<LaurentPoly, AlgebraError> {
        let m = self.min_weight(w)?.ok_or(AlgebraError::ZeroPolynomial)?;
        self.terms_at_weight(w, m)
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.lambda).max()
    }

    /// The z-Laurent coefficient of `lambda^b`.
    pub fn coefficient_in_lambda(&self, b: u32) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.lambda == b)
                .map(|(e, c)| (Exponent::new(e.z.clone(), 0), c.clone()))
                .collect(),
        }
    }

    /// For each z-monomial `a`, the lambda-polynomial `sum_b [z^a lambda^b] f * lambda^b`.
    pub fn lambda_polys_by_monomial(&self) -> BTreeMap<Vec<i64>, UniPoly> {
        let mut grouped: BTreeMap<Vec<i64>, Vec<BigRational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let slot = grouped.entry(e.z.clone()).or_default();
            let b = e.lambda as usize;
            if slot.len() <= b {
                slot.resize(b + 1, BigRational::zero());
            }
            slot[b] = c.clone();
        }
        grouped.into_iter().map(|(a, cs)| (a, UniPoly::new(cs))).collect()
    }

    pub fn substitute_lambda(&self, lambda0: &BigRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.dim);
        for (e, c) in &self.terms {
            let mut power = BigRational::one();
            for _ in 0..e.lambda {
                power *= lambda0;
            }
            out.add_term(Exponent::new(e.z.clone(), 0), c * power);
        }
        out
    }

    /// Synthetic division by `lambda - lambda0` over the z-coefficient ring.
    pub fn divide_by_linear(&self, lambda0: &BigRational) -> Result<LaurentPoly, AlgebraError> {
        let Some(deg) = self.lambda_degree() else {
            return Ok(LaurentPoly::zero(self.dim));
        };
        let mut carry = LaurentPoly::zero(self.dim);
        let mut quotient = LaurentPoly::zero(self.dim);
        for b in (0..=deg).rev() {
            let current = &self.coefficient_in_lambda(b) + &carry.scalar_mul(lambda0);
            if b == 0 {
                if !current.is_zero() {
                    return Err(AlgebraError::NotARoot(lambda0.to_string()));
                }
                break;
            }
            for (e, c) in current.terms() {
                quotient.add_term(Exponent::new(e.z.clone(), b - 1), c.clone());
            }
            carry = current;
        }
        Ok(quotient)
    }

    pub fn is_lambda_only(&self) -> bool {
        self.terms.keys().all(|e| e.z.iter().all(|&a| a == 0))
    }

    pub fn to_univariate(&self) -> Result<UniPoly, AlgebraError> {
        if !self.is_lambda_only() {
            return Err(AlgebraError::NotLambdaOnly);
        }
        Ok(self.lambda_polys_by_monomial().into_values().next().unwrap_or_else(UniPoly::zero))
    }

    /// Substitutes a rational point for `z`, leaving a polynomial in lambda.
    pub fn evaluate_z(&self, point: &[BigRational]) -> Result<UniPoly, AlgebraError> {
        if point.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch(self.dim, point.len()));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (e, c) in &self.terms {
            let mut value = c.clone();
            for (x, &a) in point.iter().zip(&e.z) {
                if a < 0 && x.is_zero() {
                    return Err(AlgebraError::ZeroCoordinate);
                }
                let base = if a < 0 { x.recip() } else { x.clone() };
                for _ in 0..a.unsigned_abs() {
                    value *= &base;
                }
            }
            let b = e.lambda as usize;
            if coeffs.len() <= b {
                coeffs.resize(b + 1, BigRational::zero());
            }
            coeffs[b] += value;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// `f(z^{-1}, lambda)`
    pub fn negate_z(&self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.z.iter().map(|a| -a).collect(), e.lambda), c.clone()))
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn exponent_box(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut points = self.terms.keys().map(Exponent::point);
        let first = points.next()?;
        let (mut lo, mut hi) = (first.clone(), first);
        for p in points {
            for k in 0..p.len() {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient in the Laurent ring.
    ///
    /// Lex order on `(lambda, z)` is compatible with multiplication, so the
    /// leading term of `q * g` is the product of leading terms and plain
    /// long division terminates with zero remainder whenever `g | f`. The
    /// quotient's exponents must fit in the box `[lo_f - lo_g, hi_f - hi_g]`;
    /// stepping outside it proves non-divisibility.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        check_dim(self.dim, divisor.dim)?;
        let (ld_e, ld_c) = divisor.leading().ok_or(AlgebraError::DivisionByZero)?;
        let (ld_e, ld_c) = (ld_e.clone(), ld_c.clone());
        let Some((flo, fhi)) = self.exponent_box() else {
            return Ok(LaurentPoly::zero(self.dim));
        };
        let (glo, ghi) = divisor.exponent_box().expect("divisor nonzero");
        let qlo: Vec<i64> = flo.iter().zip(&glo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i64> = fhi.iter().zip(&ghi).map(|(a, b)| a - b).collect();
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero(self.dim);
        while let Some((re, rc)) = rem.leading() {
            if re.lambda < ld_e.lambda {
                return Err(AlgebraError::NotDivisible);
            }
            let qe = Exponent::new(
                re.z.iter().zip(&ld_e.z).map(|(a, b)| a - b).collect(),
                re.lambda - ld_e.lambda,
            );
            let qp = qe.point();
            if (0..qp.len()).any(|k| qp[k] < qlo[k] || qp[k] > qhi[k]) {
                return Err(AlgebraError::NotDivisible);
            }
            let qc = rc / &ld_c;
            let step = LaurentPoly::monomial(qe.z.clone(), qe.lambda, qc.clone());
            rem = &rem - &(&step * divisor);
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest `(lambda, z)` first; every exponent is written out, e.g.
    /// `-1*lam^3 + 1*z1^-1*lam^1 + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (k, &a) in e.z.iter().enumerate() {
                if a != 0 {
                    factors.push(format!("z{}^{}", k + 1, a));
                }
            }
            if e.lambda != 0 {
                factors.push(format!("lam^{}", e.lambda));
            }
            let mut body = c.abs().to_string();
            for factor in factors {
                body.push('*');
                body.push_str(&factor);
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("dimension mismatch in LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("dimension mismatch in LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("dimension mismatch in LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Square matrix of Laurent polynomials sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    size: usize,
    entries: Vec<LaurentPoly>,
}

/// Largest size for which [`LaurentMatrix::determinant`] uses the permutation
/// expansion; larger matrices go through fraction-free elimination.
pub const LEIBNIZ_MAX: usize = 6;

impl LaurentMatrix {
    pub fn zeros(dim: usize, size: usize) -> Self {
        LaurentMatrix { dim, size, entries: vec![LaurentPoly::zero(dim); size * size] }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(AlgebraError::BadMatrixShape);
        }
        let dim = rows[0][0].dim();
        let entries: Vec<LaurentPoly> = rows.into_iter().flatten().collect();
        for e in &entries {
            check_dim(dim, e.dim())?;
        }
        Ok(LaurentMatrix { dim, size, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.size + j]
    }

    /// `M - lambda * I`
    pub fn minus_lambda_identity(&self) -> LaurentMatrix {
        let mut out = self.clone();
        let lam = LaurentPoly::lambda(self.dim);
        for i in 0..self.size {
            let entry = out.get_mut(i, i);
            *entry = &*entry - &lam;
        }
        out
    }

    pub fn principal_submatrix(&self, rows: &[usize]) -> LaurentMatrix {
        let size = rows.len();
        let mut out = LaurentMatrix::zeros(self.dim, size);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in rows.iter().enumerate() {
                *out.get_mut(a, b) = self.get(i, j).clone();
            }
        }
        out
    }

    /// True iff entry `(i, j)` with z-exponents negated equals entry `(j, i)`.
    pub fn is_transpose_inverse_symmetric(&self) -> bool {
        (0..self.size)
            .all(|i| (0..self.size).all(|j| self.get(i, j).negate_z() == *self.get(j, i)))
    }

    /// `prod_i M[i, sigma(i)]`
    pub fn permutation_product(&self, sigma: &[usize]) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.dim);
        for (i, &j) in sigma.iter().enumerate() {
            let entry = self.get(i, j);
            if entry.is_zero() {
                return LaurentPoly::zero(self.dim);
            }
            acc = &acc * entry;
        }
        acc
    }

    pub fn determinant(&self) -> LaurentPoly {
        if self.size <= LEIBNIZ_MAX {
            self.determinant_leibniz()
        } else {
            self.determinant_bareiss()
        }
    }

    /// Sum over permutations of signed entry products.
    pub fn determinant_leibniz(&self) -> LaurentPoly {
        let mut det = LaurentPoly::zero(self.dim);
        for (sigma, sign) in permutations_with_sign(self.size) {
            let term = self.permutation_product(&sigma);
            if term.is_zero() {
                continue;
            }
            det = if sign > 0 { &det + &term } else { &det - &term };
        }
        det
    }

    /// Fraction-free Gaussian elimination with exact Laurent division.
    pub fn determinant_bareiss(&self) -> LaurentPoly {
        let n = self.size;
        let mut m: Vec<Vec<LaurentPoly>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigRational::one();
        let mut prev = LaurentPoly::one(self.dim);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return LaurentPoly::zero(self.dim),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].scalar_mul(&sign)
    }
}

/// Rational from an integer, for brevity in tests and builders.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        rational(n)
    }

    fn z1(power: i64) -> LaurentPoly {
        LaurentPoly::z(1, 0, power)
    }

    #[test]
    fn ring_examples() {
        let one = LaurentPoly::one(1);
        let f = &(&one + &z1(1)) * &(&one + &z1(-1));
        let expected = &(&z1(-1) + &LaurentPoly::constant(1, r(2))) + &z1(1);
        assert_eq!(f, expected);
        assert!((&f + &-&f).is_zero());
        let lam = LaurentPoly::lambda(0);
        let two = LaurentPoly::constant(0, r(2));
        let diff = &(&lam - &two) * &(&lam + &two);
        assert_eq!(diff, &lam.pow(2) - &LaurentPoly::constant(0, r(4)));
        assert_eq!(
            LaurentPoly::one(1).checked_add(&LaurentPoly::one(2)),
            Err(AlgebraError::DimensionMismatch(1, 2))
        );
    }

    #[test]
    fn supports() {
        let f = &(&z1(-1) + &LaurentPoly::constant(1, r(2))) + &z1(1);
        let s: Vec<Vec<i64>> = f.support().into_iter().collect();
        assert_eq!(s, vec![vec![-1, 0], vec![0, 0], vec![1, 0]]);
        assert!(LaurentPoly::zero(2).support().is_empty());
        let lam = LaurentPoly::lambda(1);
        let g = &lam.pow(3) - &lam.scalar_mul(&r(4));
        let s: Vec<Vec<i64>> = g.support().into_iter().collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 3]]);
        let g0 = &LaurentPoly::lambda(0).pow(3) - &LaurentPoly::lambda(0).scalar_mul(&r(4));
        let s: Vec<Vec<i64>> = g0.support().into_iter().collect();
        assert_eq!(s, vec![vec![1], vec![3]]);
    }

    #[test]
    fn facial_examples() {
        // 2 + 3 z1 lambda + z1^-2, w = (1, 0)
        let f = &(&LaurentPoly::constant(1, r(2)) + &LaurentPoly::monomial(vec![1], 1, r(3))) + &z1(-2);
        assert_eq!(f.facial_polynomial(&WeightVector(vec![1, 0])).unwrap(), z1(-2));
        assert_eq!(f.facial_polynomial(&WeightVector(vec![0, 0])).unwrap(), f);
        assert_eq!(
            LaurentPoly::zero(1).facial_polynomial(&WeightVector(vec![1, 0])),
            Err(AlgebraError::ZeroPolynomial)
        );
        assert!(matches!(
            f.facial_polynomial(&WeightVector(vec![1])),
            Err(AlgebraError::WeightLength { .. })
        ));
    }

    #[test]
    fn lambda_coefficients_and_division() {
        let q = &(&LaurentPoly::one(1) + &z1(1)) * &(&LaurentPoly::one(1) + &z1(-1));
        let lam = LaurentPoly::lambda(1);
        let f = &(-&lam.pow(3)) + &(&lam * &q);
        assert_eq!(f.coefficient_in_lambda(3), LaurentPoly::constant(1, r(-1)));
        assert!(f.coefficient_in_lambda(2).is_zero());
        assert_eq!(f.coefficient_in_lambda(1), q);
        assert!(f.substitute_lambda(&r(0)).is_zero());
        let g = f.divide_by_linear(&r(0)).unwrap();
        assert_eq!(g, &(-&lam.pow(2)) + &q);
        assert!(matches!(f.divide_by_linear(&r(1)), Err(AlgebraError::NotARoot(_))));

        let lin = &LaurentPoly::lambda(0) - &LaurentPoly::constant(0, r(5));
        assert!(lin.substitute_lambda(&r(5)).is_zero());
        assert_eq!(lin.substitute_lambda(&r(4)), LaurentPoly::constant(0, r(-1)));
        assert_eq!(lin.divide_by_linear(&r(5)).unwrap(), LaurentPoly::one(0));
        let sq = &LaurentPoly::lambda(0).pow(2) - &LaurentPoly::constant(0, r(4));
        assert_eq!(
            sq.divide_by_linear(&r(2)).unwrap(),
            &LaurentPoly::lambda(0) + &LaurentPoly::constant(0, r(2))
        );
    }

    #[test]
    fn exact_division() {
        let a = &(&z1(-1) + &LaurentPoly::lambda(1)) + &LaurentPoly::constant(1, r(3));
        let b = &(&z1(2) - &LaurentPoly::lambda(1).pow(2)) + &z1(-3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        let off = &prod + &LaurentPoly::one(1);
        assert_eq!(off.div_exact(&a), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn evaluation() {
        let f = &(&z1(-1) + &LaurentPoly::lambda(1)) + &z1(2);
        let half = BigRational::new(1.into(), 2.into());
        let u = f.evaluate_z(&[half]).unwrap();
        assert_eq!(u, UniPoly::new(vec![r(2) + BigRational::new(1.into(), 4.into()), r(1)]));
        assert_eq!(f.evaluate_z(&[r(0)]), Err(AlgebraError::ZeroCoordinate));
    }

    #[test]
    fn display_format() {
        let lam = LaurentPoly::lambda(1);
        let f = &(&(-&lam.pow(3)) + &(&lam * &z1(-1))) + &LaurentPoly::constant(1, r(4));
        assert_eq!(f.to_string(), "-1*lam^3 + 1*z1^-1*lam^1 + 4");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn small_determinants() {
        let lam = LaurentPoly::lambda(1);
        let diag = LaurentMatrix::from_rows(vec![
            vec![&LaurentPoly::constant(1, r(5)) - &lam, LaurentPoly::zero(1)],
            vec![LaurentPoly::zero(1), &LaurentPoly::constant(1, r(7)) - &lam],
        ])
        .unwrap();
        let expected = &(&LaurentPoly::constant(1, r(5)) - &lam) * &(&LaurentPoly::constant(1, r(7)) - &lam);
        assert_eq!(diag.determinant_leibniz(), expected);
        assert_eq!(diag.determinant_bareiss(), expected);
        let entry = &(&(&LaurentPoly::constant(1, r(3)) + &z1(1)) + &z1(-1)) - &lam;
        let single = LaurentMatrix::from_rows(vec![vec![entry.clone()]]).unwrap();
        assert_eq!(single.determinant(), entry);
        assert_eq!(single.determinant_bareiss(), entry);
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let p = |c| LaurentPoly::constant(1, r(c));
        let m = LaurentMatrix::from_rows(vec![
            vec![p(0), z1(1), p(2)],
            vec![z1(-1), p(0), p(1)],
            vec![p(2), p(1), p(0)],
        ])
        .unwrap();
        assert_eq!(m.determinant_bareiss(), m.determinant_leibniz());
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(perms.iter().map(|p| p.1).sum::<i32>(), 0);
    }
}

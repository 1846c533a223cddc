use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Variable};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exact multivariate Laurent polynomial with integer coefficients.
///
/// Terms are kept in a map ordered by the graded-lex monomial order, so two
/// polynomials are equal exactly when their canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

/// Point at which to evaluate; unbound variables are an error.
pub type Point = BTreeMap<Variable, Rational>;

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Variable) -> Self {
        Self::term(Monomial::var(v), 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        Self::term(Monomial::var_pow(v, e), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms: acc }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single nonzero term, i.e. a unit of the Laurent ring up to the
    /// integer coefficient.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Highest term in the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect()
    }

    pub fn contains_variable(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    /// `(min, max)` exponent of `v` over all terms; `(0, 0)` for zero.
    pub fn degree_range(&self, v: Variable) -> (i32, i32) {
        let mut it = self.terms.keys().map(|m| m.exponent(v));
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))),
        }
    }

    /// True when no variable carries a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|(_, e)| e >= 0))
    }

    /// The largest monomial dividing every term (componentwise min).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.clone()))
                .collect(),
        }
    }

    /// Exact division of every coefficient by `c`; `None` if some
    /// coefficient is not a multiple.
    pub fn div_integer(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(LaurentPolynomial { terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse inside the Laurent ring, which exists only for `±monomial`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_term()?;
        if c.abs().is_one() {
            Some(Self::term(m.inv(), c.clone()))
        } else {
            None
        }
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = divisor.as_term() {
            let q = self.div_integer(c)?;
            return Some(q.mul_monomial(&m.inv()));
        }
        // Shift both sides into the polynomial ring; a Laurent quotient of
        // such shifted polynomials is automatically a polynomial.
        let ma = self.monomial_content();
        let mb = divisor.monomial_content();
        let a = self.mul_monomial(&ma.inv());
        let b = divisor.mul_monomial(&mb.inv());
        let q = poly_div_exact(&a, &b)?;
        Some(q.mul_monomial(&ma.div(&mb)))
    }

    /// Coefficients with respect to `v`: maps exponent of `v` to the
    /// `v`-free cofactor.
    pub fn coefficients_in(&self, v: Variable) -> BTreeMap<i32, LaurentPolynomial> {
        let mut out: BTreeMap<i32, BTreeMap<Monomial, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_default().insert(rest, c.clone());
        }
        out.into_iter()
            .map(|(e, terms)| (e, LaurentPolynomial { terms }))
            .collect()
    }

    /// Rebuilds `sum_e coeffs[e] * v^e`.
    pub fn from_coefficients_in(
        v: Variable,
        coeffs: impl IntoIterator<Item = (i32, LaurentPolynomial)>,
    ) -> Self {
        let mut out = Self::zero();
        for (e, c) in coeffs {
            out = out + c.mul_monomial(&Monomial::var_pow(v, e));
        }
        out
    }

    /// Renames `u_i` to `u_{perm(i)}`.
    pub fn permute_u(&self, perm: impl Fn(u16) -> u16) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.permute_u(&perm), c.clone())),
        )
    }

    /// Swaps `u_i` and `u_j`.
    pub fn swap_u(&self, i: usize, j: usize) -> Self {
        let (i, j) = (i as u16, j as u16);
        self.permute_u(|k| {
            if k == i {
                j
            } else if k == j {
                i
            } else {
                k
            }
        })
    }

    /// Substitutes variables by units (signed monomials) without leaving the
    /// Laurent ring. `None` if some used binding is not a unit.
    pub fn substitute_units(
        &self,
        bindings: &BTreeMap<Variable, LaurentPolynomial>,
    ) -> Option<Self> {
        let mut units: BTreeMap<Variable, (Monomial, BigInt)> = BTreeMap::new();
        for (v, b) in bindings {
            if !self.contains_variable(*v) {
                continue;
            }
            let (m, c) = b.as_term()?;
            if !c.abs().is_one() {
                return None;
            }
            units.insert(*v, (m.clone(), c.clone()));
        }
        let mut out: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mono = Monomial::one();
            let mut coeff = c.clone();
            for (v, e) in m.iter() {
                match units.get(&v) {
                    Some((um, uc)) => {
                        mono = mono.mul(&um.pow(e));
                        if e % 2 != 0 && uc.is_negative() {
                            coeff = -coeff;
                        }
                    }
                    None => mono = mono.mul(&Monomial::var_pow(v, e)),
                }
            }
            *out.entry(mono).or_default() += coeff;
        }
        Some(LaurentPolynomial {
            terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Exact value at a point. Terms are summed as integers over the common
    /// denominator `prod n_v^(-lo_v) d_v^(hi_v)` for `v = n_v/d_v` occurring
    /// with exponents in `[lo_v, hi_v]` (clamped to include 0).
    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        struct Powers {
            lo: i32,
            hi: i32,
            num: Vec<BigInt>,
            den: Vec<BigInt>,
        }
        fn powers_of(x: &BigInt, k: i32) -> Vec<BigInt> {
            let mut out = Vec::with_capacity(k as usize + 1);
            let mut acc = BigInt::from(1);
            for _ in 0..=k {
                out.push(acc.clone());
                acc *= x;
            }
            out
        }
        let mut table: HashMap<Variable, Powers> = HashMap::new();
        for v in self.variables() {
            let base = point
                .get(&v)
                .ok_or_else(|| Error::InvalidArgument(format!("no value bound for {v}")))?;
            let (lo, hi) = self.degree_range(v);
            let (lo, hi) = (lo.min(0), hi.max(0));
            if lo < 0 && base.is_zero() {
                return Err(Error::DivisionByZero(format!(
                    "{v} = 0 raised to power {lo}"
                )));
            }
            table.insert(
                v,
                Powers {
                    lo,
                    hi,
                    num: powers_of(base.numer(), hi - lo),
                    den: powers_of(base.denom(), hi - lo),
                },
            );
        }
        let mut total = BigInt::from(0);
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, p) in &table {
                let e = m.exponent(*v);
                value *= &p.num[(e - p.lo) as usize];
                value *= &p.den[(p.hi - e) as usize];
            }
            total += value;
        }
        let mut common = BigInt::from(1);
        for p in table.values() {
            common *= &p.num[(-p.lo) as usize];
            common *= &p.den[p.hi as usize];
        }
        Rational::new(total, common)
    }
}

/// Exact division inside `Z[x...]` (nonnegative exponents on both sides).
fn poly_div_exact(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let (lm, lc) = b.leading_term()?;
    let (lm, lc) = (lm.clone(), lc.clone());
    let mut rem = a.clone();
    let mut quot: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    while let Some((rm, rc)) = rem.leading_term() {
        if !rm.divisible_by(&lm) {
            return None;
        }
        let (qc, r) = rc.div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        let qm = rm.div(&lm);
        let step = b.mul_monomial(&qm).scale(&qc);
        rem = rem - step;
        quot.insert(qm, qc);
    }
    Some(LaurentPolynomial { terms: quot })
}

fn add_into(
    acc: &mut BTreeMap<Monomial, BigInt>,
    other: &BTreeMap<Monomial, BigInt>,
    negate: bool,
) {
    for (m, c) in other {
        match acc.get_mut(m) {
            Some(k) => {
                if negate {
                    *k -= c;
                } else {
                    *k += c;
                }
                if k.is_zero() {
                    acc.remove(m);
                }
            }
            None => {
                acc.insert(m.clone(), if negate { -c } else { c.clone() });
            }
        }
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        add_into(&mut terms, &rhs.terms, false);
        LaurentPolynomial { terms }
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        add_into(&mut self.terms, &rhs.terms, false);
        self
    }
}

impl Add<&LaurentPolynomial> for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_into(&mut self.terms, &rhs.terms, false);
        self
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms = self.terms.clone();
        add_into(&mut terms, &rhs.terms, true);
        LaurentPolynomial { terms }
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        add_into(&mut self.terms, &rhs.terms, true);
        self
    }
}

impl Sub<&LaurentPolynomial> for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(mut self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_into(&mut self.terms, &rhs.terms, true);
        self
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        LaurentPolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Mul<&LaurentPolynomial> for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        &self * rhs
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(mut self) -> LaurentPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -self.clone()
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        LaurentPolynomial::constant(c)
    }
}

impl From<Variable> for LaurentPolynomial {
    fn from(v: Variable) -> Self {
        LaurentPolynomial::var(v)
    }
}

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::one(), |acc, p| acc * p)
    }
}

/// Canonical rendering: terms in descending graded-lex order, e.g.
/// `u1^2*rho^-1 + q - q^-1 - rho^-1`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

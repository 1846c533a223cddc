use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::gcd::{gcd, poly_gcd};
use super::monomial::Variable;
use super::poly::{LaurentPolynomial, Point};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Reduced quotient of two Laurent polynomials.
///
/// Canonical form: the denominator is an honest polynomial with no monomial
/// factor and a positive leading coefficient, and it shares no nontrivial
/// factor with the numerator. Monomial denominators are therefore absorbed
/// into the numerator's exponents, and structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

pub type Bindings = BTreeMap<Variable, RationalFunction>;

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.as_term() {
            let mut num = num.mul_monomial(&m.inv());
            let g = num.integer_content().gcd_with(c);
            num = num.div_integer(&g).expect("content divides");
            let mut d = c / &g;
            if d.is_negative() {
                num = -num;
                d = -d;
            }
            return RationalFunction {
                num,
                den: LaurentPolynomial::constant(d),
            };
        }
        let md = den.monomial_content();
        let mn = num.monomial_content();
        let den = den.mul_monomial(&md.inv());
        let shifted = num.mul_monomial(&mn.inv());
        let g = poly_gcd(&shifted, &den);
        let mut num = shifted
            .div_exact(&g)
            .expect("gcd divides numerator")
            .mul_monomial(&mn.div(&md));
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading_term().map_or(false, |(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPolynomial::zero(),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolynomial::one())
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }

    pub fn var(v: Variable) -> Self {
        Self::from_poly(LaurentPolynomial::var(v))
    }

    pub fn numer(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value lies in the Laurent ring.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent_polynomial(&self) -> Option<&LaurentPolynomial> {
        self.is_laurent_polynomial().then_some(&self.num)
    }

    pub fn into_laurent_polynomial(self) -> Option<LaurentPolynomial> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of zero rational function".into(),
            ));
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        let k = k as u32;
        Ok(RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        })
    }

    /// Substitutes each bound variable by a rational function and
    /// renormalizes. Unbound variables are left alone.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        if bindings.values().all(|b| b.den.is_one()) {
            let units: BTreeMap<Variable, LaurentPolynomial> =
                bindings.iter().map(|(v, b)| (*v, b.num.clone())).collect();
            if let (Some(num), Some(den)) = (
                self.num.substitute_units(&units),
                self.den.substitute_units(&units),
            ) {
                if den.is_zero() {
                    return Err(Error::DivisionByZero(format!(
                        "denominator {} vanishes identically after substitution",
                        self.den
                    )));
                }
                return Ok(Self::normalize(num, den));
            }
        }
        let (n_num, n_den) = substitute_poly(&self.num, bindings)?;
        let (d_num, d_den) = substitute_poly(&self.den, bindings)?;
        if d_num.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "denominator {} vanishes identically after substitution",
                self.den
            )));
        }
        Ok(Self::normalize(&n_num * &d_den, &n_den * &d_num))
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "denominator {} vanishes at the given point",
                self.den
            )));
        }
        Ok(&self.num.evaluate(point)? / &d)
    }

    pub fn permute_u(&self, perm: impl Fn(u16) -> u16 + Copy) -> Self {
        Self::normalize(self.num.permute_u(perm), self.den.permute_u(perm))
    }

    pub fn swap_u(&self, i: usize, j: usize) -> Self {
        let (i, j) = (i as u16, j as u16);
        self.permute_u(move |k| {
            if k == i {
                j
            } else if k == j {
                i
            } else {
                k
            }
        })
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let rhs_num = if negate {
            -&other.num
        } else {
            other.num.clone()
        };
        if self.den == other.den {
            let num = &self.num + &rhs_num;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::normalize(num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let left = other.den.div_exact(&g).expect("gcd divides");
        let right = self.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &left + &rhs_num * &right;
        Self::normalize(num, &self.den * &left)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }
}

/// Substitutes into a Laurent polynomial, returning `(numerator,
/// denominator)` of the result over a common denominator.
fn substitute_poly(
    p: &LaurentPolynomial,
    bindings: &Bindings,
) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
    // For a bound variable v -> n/d occurring with exponents in [lo, hi],
    // (n/d)^e = n^(e-lo') d^(hi'-e) / (n^-lo' d^hi') with lo' = min(lo, 0)
    // and hi' = max(hi, 0); the numerator stays a polynomial expression.
    struct Plan<'a> {
        n: &'a LaurentPolynomial,
        d: &'a LaurentPolynomial,
        lo: i32,
        hi: i32,
    }
    let mut plans: BTreeMap<Variable, Plan> = BTreeMap::new();
    let mut common_den = LaurentPolynomial::one();
    for (v, f) in bindings {
        if !p.contains_variable(*v) {
            continue;
        }
        let (lo, hi) = p.degree_range(*v);
        let (lo, hi) = (lo.min(0), hi.max(0));
        if lo < 0 && f.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "{v} bound to 0 but occurs with negative exponent"
            )));
        }
        common_den = common_den * f.num.pow((-lo) as u32) * f.den.pow(hi as u32);
        plans.insert(
            *v,
            Plan {
                n: &f.num,
                d: &f.den,
                lo,
                hi,
            },
        );
    }
    if plans.is_empty() {
        return Ok((p.clone(), LaurentPolynomial::one()));
    }

    let mut pow_cache: BTreeMap<(Variable, bool, u32), LaurentPolynomial> = BTreeMap::new();
    let mut power = |v: Variable, of_num: bool, k: u32, base: &LaurentPolynomial| {
        pow_cache
            .entry((v, of_num, k))
            .or_insert_with(|| base.pow(k))
            .clone()
    };

    let mut total = LaurentPolynomial::zero();
    for (m, c) in p.terms() {
        let mut rest = Vec::new();
        let mut factor = LaurentPolynomial::constant(c.clone());
        for (v, e) in m.iter() {
            match plans.get(&v) {
                Some(plan) => {
                    factor = factor
                        * power(v, true, (e - plan.lo) as u32, plan.n)
                        * power(v, false, (plan.hi - e) as u32, plan.d);
                }
                None => rest.push((v, e)),
            }
        }
        // Bound variables absent from this term still carry the
        // common-denominator scaling.
        for (v, plan) in &plans {
            if m.exponent(*v) == 0 {
                factor = factor
                    * power(*v, true, (-plan.lo) as u32, plan.n)
                    * power(*v, false, plan.hi as u32, plan.d);
            }
        }
        let mono = super::monomial::Monomial::from_pairs(rest);
        total = total + factor.mul_monomial(&mono);
    }
    Ok((total, common_den))
}

trait GcdWith {
    fn gcd_with(&self, other: &Self) -> Self;
}

impl GcdWith for num_bigint::BigInt {
    fn gcd_with(&self, other: &Self) -> Self {
        num_integer::Integer::gcd(self, other)
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::from_poly(LaurentPolynomial::constant(c))
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        self.add_impl(&rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        self.add_impl(&rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.mul_impl(rhs)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        self.mul_impl(&rhs)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -self.clone()
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for RationalFunction {
    fn product<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

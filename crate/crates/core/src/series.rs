//! Truncated formal power series with rational-function coefficients.
//!
//! A [`Series`] is either ascending, `sum c_a t^a`, or descending,
//! `sum c_a t^-a`; both are stored as the coefficient list `c_0..=c_N` and
//! only differ in how they print and in which operands they may be combined
//! with.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Bindings, LaurentPolynomial, Monomial, RationalFunction, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Powers `t^0, t^1, ...`.
    Ascending,
    /// Powers `t^0, t^-1, ...`.
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

/// `sum_{a=0}^{N} c_a x^a + O(x^{N+1})` with `x = t` or `x = t^-1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    direction: Direction,
    coeffs: Vec<RationalFunction>,
}

impl Series {
    /// Builds a series from `c_0..=c_N`; at least one coefficient is required.
    pub fn new(direction: Direction, coeffs: Vec<RationalFunction>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a series needs at least c_0".into()));
        }
        Ok(Series { direction, coeffs })
    }

    pub fn from_polynomials(direction: Direction, coeffs: Vec<LaurentPolynomial>) -> Result<Self> {
        Self::new(
            direction,
            coeffs
                .into_iter()
                .map(RationalFunction::from_poly)
                .collect(),
        )
    }

    pub fn zero(direction: Direction, truncation: usize) -> Self {
        Series {
            direction,
            coeffs: vec![RationalFunction::zero(); truncation + 1],
        }
    }

    pub fn one(direction: Direction, truncation: usize) -> Self {
        Self::constant(direction, truncation, RationalFunction::one())
    }

    pub fn constant(direction: Direction, truncation: usize, c: RationalFunction) -> Self {
        let mut s = Self::zero(direction, truncation);
        s.coeffs[0] = c;
        s
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// The truncation order `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, a: usize) -> Option<&RationalFunction> {
        self.coeffs.get(a)
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Coefficients as Laurent polynomials, if every denominator is 1.
    pub fn polynomial_coeffs(&self) -> Option<Vec<LaurentPolynomial>> {
        self.coeffs
            .iter()
            .map(|c| c.as_laurent_polynomial().cloned())
            .collect()
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation());
        Series {
            direction: self.direction,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn check_direction(&self, other: &Series) -> Result<usize> {
        if self.direction != other.direction {
            return Err(Error::DirectionMismatch);
        }
        Ok(self.truncation().min(other.truncation()))
    }

    pub fn arith(&self, other: &Series, op: SeriesOp) -> Result<Series> {
        match op {
            SeriesOp::Add => self.add(other),
            SeriesOp::Sub => self.sub(other),
            SeriesOp::Mul => self.mul(other),
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        let n = self.check_direction(other)?;
        Ok(Series {
            direction: self.direction,
            coeffs: (0..=n)
                .map(|a| &self.coeffs[a] + &other.coeffs[a])
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        let n = self.check_direction(other)?;
        Ok(Series {
            direction: self.direction,
            coeffs: (0..=n)
                .map(|a| &self.coeffs[a] - &other.coeffs[a])
                .collect(),
        })
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        let n = self.check_direction(other)?;
        let coeffs = (0..=n)
            .map(|a| {
                (0..=a)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[a - k].is_zero())
                    .map(|k| &self.coeffs[k] * &other.coeffs[a - k])
                    .sum()
            })
            .collect();
        Ok(Series {
            direction: self.direction,
            coeffs,
        })
    }

    pub fn scale(&self, c: &RationalFunction) -> Series {
        Series {
            direction: self.direction,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Series> {
        let c0_inv = self.coeffs[0]
            .inv()
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let mut out: Vec<RationalFunction> = Vec::with_capacity(self.coeffs.len());
        out.push(c0_inv.clone());
        for a in 1..self.coeffs.len() {
            let acc: RationalFunction = (1..=a)
                .filter(|&k| !self.coeffs[k].is_zero())
                .map(|k| &self.coeffs[k] * &out[a - k])
                .sum();
            out.push(-(&acc * &c0_inv));
        }
        Ok(Series {
            direction: self.direction,
            coeffs: out,
        })
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Series> {
        Ok(Series {
            direction: self.direction,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.substitute(bindings))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Ascending => "",
            Direction::Descending => "-",
        };
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match a {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t^{sign}1")?,
                _ => write!(f, "({c})*t^{sign}{a}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{sign}{})", self.coeffs.len())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{:?}]({self})", self.direction)
    }
}

/// The elementary rational factors of `G(t)` and `Z(t)` whose expansions
/// are known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeometricFactor {
    /// `(t - u_l) / (t u_l - 1)` for the given 1-based `l`.
    G(usize),
    /// `t^2 / (t^2 - 1)`.
    EvenTail,
    /// `t / (t^2 - 1)`.
    OddTail,
}

/// Closed-form truncated expansion of a [`GeometricFactor`].
///
/// Descending: `t^2/(t^2-1) = sum t^-2k`, `t/(t^2-1) = sum t^-(2k+1)`, and
/// the G-factor is `u^-1 + sum_{m>=1} (u^-m-1 - u^1-m) t^-m`.
/// Ascending: `t^2/(t^2-1) = -sum_{k>=1} t^2k`, `t/(t^2-1) = -sum t^(2k+1)`,
/// and the G-factor is `(u - t) sum u^k t^k`.
pub fn expand_geometric_factor(kind: GeometricFactor, direction: Direction, n: usize) -> Series {
    let coeffs: Vec<LaurentPolynomial> = (0..=n)
        .map(|a| match (kind, direction) {
            (GeometricFactor::EvenTail, Direction::Descending) => {
                LaurentPolynomial::constant(i64::from(a % 2 == 0))
            }
            (GeometricFactor::OddTail, Direction::Descending) => {
                LaurentPolynomial::constant(i64::from(a % 2 == 1))
            }
            (GeometricFactor::EvenTail, Direction::Ascending) => {
                LaurentPolynomial::constant(-i64::from(a % 2 == 0 && a > 0))
            }
            (GeometricFactor::OddTail, Direction::Ascending) => {
                LaurentPolynomial::constant(-i64::from(a % 2 == 1))
            }
            (GeometricFactor::G(l), Direction::Ascending) => {
                let u = Variable::u(l);
                let a = a as i32;
                if a == 0 {
                    LaurentPolynomial::var(u)
                } else {
                    LaurentPolynomial::var_pow(u, a + 1) - LaurentPolynomial::var_pow(u, a - 1)
                }
            }
            (GeometricFactor::G(l), Direction::Descending) => {
                let u = Variable::u(l);
                let a = a as i32;
                if a == 0 {
                    LaurentPolynomial::var_pow(u, -1)
                } else {
                    LaurentPolynomial::term(Monomial::var_pow(u, -a - 1), 1)
                        - LaurentPolynomial::var_pow(u, 1 - a)
                }
            }
        })
        .collect();
    Series::from_polynomials(direction, coeffs).expect("n + 1 >= 1 coefficients")
}

//! Numeric ground-ring parameter sets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{Point, Rational, Variable};

use super::{eta_table_from_series, EtaTable, RhoChoice};

/// Exact numeric parameters `(r, u, rho, q, delta_0..delta_N)` together with
/// the derived `delta_-1..delta_-D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundRingInstance {
    r: usize,
    u: Vec<Rational>,
    rho: Rational,
    q: Rational,
    delta: Vec<Rational>,
    delta_neg: Vec<Rational>,
}

impl GroundRingInstance {
    /// Validates invertibility of `u`, `rho`, `q` and `q - q^-1`, then
    /// derives negative-index deltas to depth `neg_depth`. The ground-ring
    /// relation is not enforced here; [`super::check_ground_ring`] reports it.
    pub fn new(
        r: usize,
        u: Vec<Rational>,
        rho: Rational,
        q: Rational,
        delta: Vec<Rational>,
        neg_depth: usize,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("rank r must be at least 1".into()));
        }
        if u.len() != r {
            return Err(Error::InvalidArgument(format!(
                "expected {r} values of u, got {}",
                u.len()
            )));
        }
        if let Some(i) = u.iter().position(Rational::is_zero) {
            return Err(Error::InvalidArgument(format!(
                "u{} must be nonzero",
                i + 1
            )));
        }
        if rho.is_zero() {
            return Err(Error::InvalidArgument("rho must be nonzero".into()));
        }
        if q.is_zero() {
            return Err(Error::InvalidArgument("q must be nonzero".into()));
        }
        if q.minus_inverse()?.is_zero() {
            return Err(Error::QMinusQInvVanishes);
        }
        if delta.is_empty() {
            return Err(Error::InvalidArgument("delta must contain delta_0".into()));
        }
        let delta_neg = delta_negative_from(&rho, &q, &delta, neg_depth)?;
        Ok(GroundRingInstance {
            r,
            u,
            rho,
            q,
            delta,
            delta_neg,
        })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn u(&self) -> &[Rational] {
        &self.u
    }

    pub fn rho(&self) -> &Rational {
        &self.rho
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `delta_0..=delta_N`.
    pub fn deltas(&self) -> &[Rational] {
        &self.delta
    }

    /// `delta_-1..=delta_-D`.
    pub fn negative_deltas(&self) -> &[Rational] {
        &self.delta_neg
    }

    /// Largest positive index `N`.
    pub fn max_a(&self) -> usize {
        self.delta.len() - 1
    }

    /// Depth `D` of negative indices.
    pub fn neg_depth(&self) -> usize {
        self.delta_neg.len()
    }

    /// `delta_a` for `-D <= a <= N`.
    pub fn delta(&self, a: i64) -> Option<&Rational> {
        if a >= 0 {
            self.delta.get(a as usize)
        } else {
            self.delta_neg.get((-a - 1) as usize)
        }
    }

    /// `q - q^-1`.
    pub fn q_minus_q_inv(&self) -> Rational {
        self.q.minus_inverse().expect("q is nonzero")
    }

    /// `a_0..=a_r` evaluated at `u`.
    pub fn a_coeffs(&self) -> Vec<Rational> {
        numeric_coeffs(&self.u)
    }

    /// The point binding `u_i`, `rho` and `q`.
    pub fn point(&self) -> Point {
        let mut point: Point = self
            .u
            .iter()
            .enumerate()
            .map(|(i, v)| (Variable::u(i + 1), v.clone()))
            .collect();
        point.insert(Variable::Rho, self.rho.clone());
        point.insert(Variable::Q, self.q.clone());
        point
    }

    /// Same parameters with `delta_a` replaced; negative deltas rederived.
    pub fn with_delta(&self, a: usize, value: Rational) -> Result<Self> {
        if a >= self.delta.len() {
            return Err(Error::OutOfRange(format!(
                "delta_{a} is beyond the truncation {}",
                self.max_a()
            )));
        }
        let mut delta = self.delta.clone();
        delta[a] = value;
        GroundRingInstance::new(
            self.r,
            self.u.clone(),
            self.rho.clone(),
            self.q.clone(),
            delta,
            self.neg_depth(),
        )
    }
}

/// Coefficients of `prod (y - u_i)` in ascending powers of `y`.
pub(crate) fn numeric_coeffs(u: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    for ui in u {
        let mut next = vec![Rational::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = &next[k + 1] + ck;
            next[k] = &next[k] - &(ck * ui);
        }
        c = next;
    }
    c
}

fn delta_negative_from(
    rho: &Rational,
    q: &Rational,
    delta: &[Rational],
    depth: usize,
) -> Result<Vec<Rational>> {
    let n = delta.len() - 1;
    if depth > n {
        return Err(Error::OutOfRange(format!(
            "negative depth {depth} exceeds the available deltas (N = {n})"
        )));
    }
    let rho_inv = rho.recip()?;
    let rho_inv2 = &rho_inv * &rho_inv;
    let factor = &(-&q.minus_inverse()?) * &rho_inv;
    let mut neg: Vec<Rational> = Vec::with_capacity(depth);
    let at = |neg: &[Rational], i: i64| -> Rational {
        if i >= 0 {
            delta[i as usize].clone()
        } else {
            neg[(-i - 1) as usize].clone()
        }
    };
    for j in 1..=depth as i64 {
        let sum: Rational = (1..j)
            .map(|k| &(&at(&neg, k) * &at(&neg, k - j)) - &at(&neg, 2 * k - j))
            .sum();
        let value = &(&rho_inv2 * &delta[j as usize]) + &(&factor * &sum);
        neg.push(value);
    }
    Ok(neg)
}

/// `delta_-1..=delta_-D` from `delta_-1 = rho^-2 delta_1` and
/// `delta_-j = rho^-2 delta_j + (q^-1 - q) rho^-1 sum_{k=1}^{j-1} (delta_k delta_(k-j) - delta_(2k-j))`.
pub fn delta_negative(instance: &GroundRingInstance, depth: usize) -> Result<Vec<Rational>> {
    delta_negative_from(&instance.rho, &instance.q, &instance.delta, depth)
}

/// Rejects parameters outside the generic domain: some `u_i = u_j`
/// (`i != j`), some `u_i u_j = 1` (any `i, j`), or `q^2 = 1`.
pub fn check_generic_configuration(u: &[Rational], q: &Rational) -> Result<()> {
    if (q * q).is_one() {
        return Err(Error::ExcludedConfiguration(format!("q^2 = 1 (q = {q})")));
    }
    for i in 0..u.len() {
        for j in i..u.len() {
            if i != j && u[i] == u[j] {
                return Err(Error::ExcludedConfiguration(format!(
                    "u{} = u{} = {}",
                    i + 1,
                    j + 1,
                    u[i]
                )));
            }
            if (&u[i] * &u[j]).is_one() {
                return Err(Error::ExcludedConfiguration(format!(
                    "u{} * u{} = 1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Builds the u-admissible instance for the given `u`, `q` and root of the
/// second condition: `delta_a = xi_a / (q - q^-1)` for `0 <= a <= N`.
pub fn generate_instance(
    r: usize,
    u: &[Rational],
    q: &Rational,
    choice: RhoChoice,
    max_a: usize,
    neg_depth: usize,
) -> Result<GroundRingInstance> {
    let table = eta_table_from_series(r, max_a)?;
    generate_instance_with(&table, u, q, choice, max_a, neg_depth)
}

/// As [`generate_instance`] but reusing a precomputed table of `xi_a`
/// (its truncation must be at least `max_a`).
pub fn generate_instance_with(
    table: &EtaTable,
    u: &[Rational],
    q: &Rational,
    choice: RhoChoice,
    max_a: usize,
    neg_depth: usize,
) -> Result<GroundRingInstance> {
    let r = table.rank();
    if !choice.is_legal_for(r) {
        return Err(Error::InvalidArgument(format!(
            "rho choice {choice} is not a root for r = {r}"
        )));
    }
    if max_a > table.truncation() {
        return Err(Error::OutOfRange(format!(
            "table truncation {} is below the requested {max_a}",
            table.truncation()
        )));
    }
    if u.len() != r {
        return Err(Error::InvalidArgument(format!(
            "expected {r} values of u, got {}",
            u.len()
        )));
    }
    if let Some(i) = u.iter().position(Rational::is_zero) {
        return Err(Error::InvalidArgument(format!(
            "u{} must be nonzero",
            i + 1
        )));
    }
    if q.is_zero() {
        return Err(Error::InvalidArgument("q must be nonzero".into()));
    }
    let w = q.minus_inverse()?;
    if w.is_zero() {
        return Err(Error::QMinusQInvVanishes);
    }
    let a0 = numeric_coeffs(u)[0].clone();
    let rho = choice.value(&a0, q)?;
    let mut point: Point = u
        .iter()
        .enumerate()
        .map(|(i, v)| (Variable::u(i + 1), v.clone()))
        .collect();
    point.insert(Variable::Rho, rho.clone());
    point.insert(Variable::Q, q.clone());
    let delta = (0..=max_a)
        .map(|a| table.evaluate(a, &point)?.checked_div(&w))
        .collect::<Result<Vec<_>>>()?;
    GroundRingInstance::new(r, u.to_vec(), rho, q.clone(), delta, neg_depth)
}

/// Parameter maps that preserve every other parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    Identity,
    /// `q -> -q^-1`.
    QToNegQInv,
    /// `(rho, q) -> (-rho, -q)`.
    NegateRhoAndQ,
}

impl Morphism {
    pub const ALL: [Morphism; 3] = [
        Morphism::Identity,
        Morphism::QToNegQInv,
        Morphism::NegateRhoAndQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Morphism::Identity => "identity",
            Morphism::QToNegQInv => "q-to-negqinv",
            Morphism::NegateRhoAndQ => "negate-rho-and-q",
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Morphism::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown morphism {s:?}")))
    }
}

pub fn apply_morphism(instance: &GroundRingInstance, kind: Morphism) -> Result<GroundRingInstance> {
    let (rho, q) = match kind {
        Morphism::Identity => return Ok(instance.clone()),
        Morphism::QToNegQInv => (instance.rho.clone(), -instance.q.recip()?),
        Morphism::NegateRhoAndQ => (-&instance.rho, -&instance.q),
    };
    GroundRingInstance::new(
        instance.r,
        instance.u.clone(),
        rho,
        q,
        instance.delta.clone(),
        instance.neg_depth(),
    )
}

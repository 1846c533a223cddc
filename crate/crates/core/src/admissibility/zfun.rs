//! The generating function `Z(t)` and the universal coefficients
//! `xi_a = (q - q^-1) eta_a` it defines.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Bindings, LaurentPolynomial, Point, Rational, RationalFunction, Variable};
use crate::series::{expand_geometric_factor, Direction, GeometricFactor, Series};
use crate::symfun::{mu_table, signed_coeffs, MuTable};

use super::{q_minus_q_inv, rho_inv, RhoChoice};

/// Whether `rho` stays an indeterminate or is eliminated through a root of
/// the second Wilcox-Yu condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoMode {
    Symbolic,
    Substituted(RhoChoice),
}

impl RhoMode {
    /// Substituted mode with the normalization `rho = -a_0` (r odd) or
    /// `rho = q^-1 a_0` (r even).
    pub fn substituted(r: usize) -> Self {
        RhoMode::Substituted(RhoChoice::normalized(r))
    }
}

/// Descending expansion of
/// `Z(t) = -rho^-1 + (q - q^-1) t^2/(t^2 - 1) + A(t) G(t^-1)` to order
/// `t^-N`.
///
/// `G(t^-1)` is obtained as the series inverse of the product of the
/// descending expansions of the factors of `G(t)`; the closed forms in
/// [`eta_closed_form`] go through the `mu_a` instead.
pub fn z_series(r: usize, n: usize, mode: RhoMode) -> Result<Series> {
    let a = signed_coeffs(r)?;
    let w = RationalFunction::from_poly(q_minus_q_inv());
    let rho_inv = RationalFunction::from_poly(rho_inv());
    let rho_inv_a0 = &rho_inv * &RationalFunction::from_poly(a.a0().clone());

    let mut g_of_t_inv = Series::one(Direction::Descending, n);
    for l in 1..=r {
        let factor = expand_geometric_factor(GeometricFactor::G(l), Direction::Descending, n);
        g_of_t_inv = g_of_t_inv.mul(&factor.invert()?)?;
    }

    let even = expand_geometric_factor(GeometricFactor::EvenTail, Direction::Descending, n);
    let odd = expand_geometric_factor(GeometricFactor::OddTail, Direction::Descending, n);
    let a_of_t = if r % 2 == 1 {
        Series::constant(Direction::Descending, n, -rho_inv_a0).add(&odd.scale(&w))?
    } else {
        Series::constant(Direction::Descending, n, rho_inv_a0).sub(&even.scale(&w))?
    };

    let z = Series::constant(Direction::Descending, n, -rho_inv)
        .add(&even.scale(&w))?
        .add(&a_of_t.mul(&g_of_t_inv)?)?;
    match mode {
        RhoMode::Symbolic => Ok(z),
        RhoMode::Substituted(choice) => z.substitute(&choice.binding(r)?),
    }
}

/// `xi_0..=xi_N` with `xi_a = (q - q^-1) eta_a`, read off `Z(t)` with
/// symbolic `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaTable {
    r: usize,
    xi: Vec<LaurentPolynomial>,
}

impl EtaTable {
    pub fn from_xi(r: usize, xi: Vec<LaurentPolynomial>) -> Self {
        EtaTable { r, xi }
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.xi.len() - 1
    }

    pub fn xi(&self, a: usize) -> &LaurentPolynomial {
        &self.xi[a]
    }

    pub fn xi_all(&self) -> &[LaurentPolynomial] {
        &self.xi
    }

    /// `eta_a = xi_a / (q - q^-1)`.
    pub fn eta(&self, a: usize) -> RationalFunction {
        RationalFunction::new(self.xi[a].clone(), q_minus_q_inv()).expect("q - q^-1 is nonzero")
    }

    /// `xi_a` evaluated at a numeric point (`u_i`, `rho`, `q` bound).
    pub fn evaluate(&self, a: usize, point: &Point) -> Result<Rational> {
        self.xi[a].evaluate(point)
    }

    /// All `xi_a` with `rho` eliminated by the given root.
    pub fn substituted(&self, choice: RhoChoice) -> Result<Vec<LaurentPolynomial>> {
        let binding = choice.binding(self.r)?;
        self.xi
            .iter()
            .map(|x| substitute_poly(x, &binding))
            .collect()
    }
}

pub(crate) fn substitute_poly(
    p: &LaurentPolynomial,
    binding: &Bindings,
) -> Result<LaurentPolynomial> {
    RationalFunction::from_poly(p.clone())
        .substitute(binding)?
        .into_laurent_polynomial()
        .ok_or_else(|| Error::Internal("substitution of a unit left the Laurent ring".into()))
}

/// Coefficients of `t^-a` in `Z(t)` with symbolic `rho`, each required to be
/// denominator-free.
pub fn eta_table_from_series(r: usize, n: usize) -> Result<EtaTable> {
    let z = z_series(r, n, RhoMode::Symbolic)?;
    let xi = z
        .coeffs()
        .iter()
        .enumerate()
        .map(|(a, c)| {
            c.as_laurent_polynomial().cloned().ok_or_else(|| {
                Error::Internal(format!("xi_{a} = {c} has a nontrivial denominator"))
            })
        })
        .collect::<Result<_>>()?;
    Ok(EtaTable { r, xi })
}

/// Closed form of `xi_a` through the `mu_a`:
///
/// r odd:  `-[a=0] rho^-1 + w [a even] - mu_a rho^-1 a_0 + w (mu_(a-1) + mu_(a-3) + ...)`
/// r even: `-[a=0] rho^-1 + w [a even] + mu_a rho^-1 a_0 - w (mu_a + mu_(a-2) + ...)`
///
/// with `w = q - q^-1`.
pub fn eta_closed_form(r: usize, a: usize) -> Result<LaurentPolynomial> {
    let mu = mu_table(r, a)?;
    eta_closed_form_with(&mu, a)
}

pub fn eta_closed_form_with(mu: &MuTable, a: usize) -> Result<LaurentPolynomial> {
    let r = mu.rank();
    if a > mu.truncation() {
        return Err(Error::OutOfRange(format!(
            "xi_{a} needs mu_{a}, table stops at mu_{}",
            mu.truncation()
        )));
    }
    let coeffs = signed_coeffs(r)?;
    let w = q_minus_q_inv();
    let rho_inv_a0 = &rho_inv() * coeffs.a0();
    let mut out = LaurentPolynomial::zero();
    if a == 0 {
        out = out - rho_inv();
    }
    if a % 2 == 0 {
        out = out + &w;
    }
    let a = a as i64;
    if r % 2 == 1 {
        out = out - &mu.get(a) * &rho_inv_a0;
        let tail: LaurentPolynomial = (1..=a).step_by(2).map(|k| mu.get(a - k)).sum();
        out = out + &w * &tail;
    } else {
        out = out + &mu.get(a) * &rho_inv_a0;
        let tail: LaurentPolynomial = (0..=a).step_by(2).map(|k| mu.get(a - k)).sum();
        out = out - &w * &tail;
    }
    Ok(out)
}

/// `xi_0 = (a_0^2 - 1) rho^-1 + (q - q^-1)(1 - [r even] a_0)`.
pub fn xi0_formula(r: usize) -> Result<LaurentPolynomial> {
    let coeffs = signed_coeffs(r)?;
    let a0 = coeffs.a0();
    let mut bracket = LaurentPolynomial::one();
    if r % 2 == 0 {
        bracket = bracket - a0;
    }
    Ok(&(&(a0 * a0) - &LaurentPolynomial::one()) * &rho_inv() + &q_minus_q_inv() * &bracket)
}

/// Rewrites a Laurent polynomial as a polynomial in `w = q - q^-1`, i.e.
/// returns `c_k` with `p = sum_k c_k w^k` and each `c_k` free of `q`.
/// `None` if `q` does not enter only through `q - q^-1`.
pub fn express_in_q_minus_q_inv(p: &LaurentPolynomial) -> Option<Vec<LaurentPolynomial>> {
    let w = q_minus_q_inv();
    let mut rest = p.clone();
    let mut out: BTreeMap<i32, LaurentPolynomial> = BTreeMap::new();
    loop {
        let (lo, hi) = rest.degree_range(Variable::Q);
        if hi <= 0 {
            if lo < 0 {
                return None;
            }
            out.insert(0, rest);
            break;
        }
        if lo < -hi {
            return None;
        }
        let top = rest
            .coefficients_in(Variable::Q)
            .remove(&hi)
            .expect("top coefficient");
        rest = rest - &top * &w.pow(hi as u32);
        out.insert(hi, top);
    }
    let len = *out.keys().max().unwrap_or(&0) as usize + 1;
    let mut coeffs = vec![LaurentPolynomial::zero(); len];
    for (k, c) in out {
        coeffs[k as usize] = c;
    }
    Some(coeffs)
}

/// The properties of `xi_a` asserted by membership in
/// `Z[u_1..u_r, q - q^-1, rho^-1]` plus symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMembership {
    pub nonnegative_u_powers: bool,
    pub rho_negative_only: bool,
    pub q_through_q_minus_q_inv: bool,
    pub symmetric: bool,
}

impl RingMembership {
    pub fn holds(&self) -> bool {
        self.nonnegative_u_powers
            && self.rho_negative_only
            && self.q_through_q_minus_q_inv
            && self.symmetric
    }
}

pub fn ring_membership(r: usize, xi: &LaurentPolynomial) -> RingMembership {
    let nonnegative_u_powers = (1..=r).all(|i| xi.degree_range(Variable::u(i)).0 >= 0);
    let rho_negative_only = xi.degree_range(Variable::Rho).1 <= 0;
    let q_through_q_minus_q_inv = express_in_q_minus_q_inv(xi).is_some();
    let symmetric = is_symmetric(r, xi);
    RingMembership {
        nonnegative_u_powers,
        rho_negative_only,
        q_through_q_minus_q_inv,
        symmetric,
    }
}

/// Invariance under every transposition `u_i <-> u_j`.
pub fn is_symmetric(r: usize, p: &LaurentPolynomial) -> bool {
    (1..=r).all(|i| ((i + 1)..=r).all(|j| &p.swap_u(i, j) == p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn constant_coefficient_rank_one() {
        let z = z_series(1, 2, RhoMode::Symbolic).unwrap();
        assert_eq!(
            z.coeff(0).unwrap().numer(),
            &p("-rho^-1 + (q - q^-1) + rho^-1*u1^2")
        );
        let z = z_series(1, 2, RhoMode::substituted(1)).unwrap();
        assert_eq!(
            z.coeff(0).unwrap().numer(),
            &p("(u1^2 - 1)*u1^-1 + (q - q^-1)")
        );
    }

    #[test]
    fn xi_rank_one() {
        let t = eta_table_from_series(1, 2).unwrap();
        assert_eq!(t.xi(0), &p("rho^-1*(u1^2 - 1) + q - q^-1"));
        assert_eq!(t.xi(1), &p("(u1^2 - 1)*rho^-1*u1 + (q - q^-1)*u1"));
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(
            eta_closed_form(1, 0).unwrap(),
            p("rho^-1*(u1^2 - 1) + q - q^-1")
        );
        assert_eq!(
            eta_closed_form(2, 0).unwrap(),
            p("rho^-1*(u1^2*u2^2 - 1) + (q - q^-1)*(1 - u1*u2)")
        );
        let t = eta_table_from_series(1, 2).unwrap();
        assert_eq!(&eta_closed_form(1, 2).unwrap(), t.xi(2));
    }

    #[test]
    fn xi0_matches_formula() {
        for r in 1..=3 {
            let t = eta_table_from_series(r, 0).unwrap();
            assert_eq!(t.xi(0), &xi0_formula(r).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn rewriting_in_q_minus_q_inverse() {
        let c = express_in_q_minus_q_inv(&p("q^2 - 2 + q^-2 + u1*(q - q^-1) + rho")).unwrap();
        assert_eq!(c, vec![p("rho"), p("u1"), p("1")]);
        assert!(express_in_q_minus_q_inv(&p("q")).is_none());
        assert!(express_in_q_minus_q_inv(&p("q + q^-1")).is_none());
        assert!(express_in_q_minus_q_inv(&p("q^-1")).is_none());
    }

    #[test]
    fn membership_detects_violations() {
        assert!(ring_membership(2, &p("rho^-1*(u1 + u2) + q - q^-1")).holds());
        assert!(!ring_membership(2, &p("u1")).symmetric);
        assert!(!ring_membership(1, &p("rho")).rho_negative_only);
        assert!(!ring_membership(1, &p("u1^-1")).nonnegative_u_powers);
        assert!(!ring_membership(1, &p("q")).q_through_q_minus_q_inv);
    }
}

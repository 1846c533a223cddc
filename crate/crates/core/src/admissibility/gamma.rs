//! Closed-form coefficients `gamma_j` with `delta_a = sum_j gamma_j u_j^a`
//! for distinct `u_j` with `u_i u_j != 1`.

use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, Point, Rational, RationalFunction, Variable};

use super::q_minus_q_inv;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    r: usize,
    gamma: Vec<RationalFunction>,
}

impl GammaTable {
    pub fn new(r: usize, gamma: Vec<RationalFunction>) -> Result<Self> {
        if gamma.len() != r {
            return Err(Error::InvalidArgument(format!(
                "expected {r} gammas, got {}",
                gamma.len()
            )));
        }
        Ok(GammaTable { r, gamma })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// `gamma_j`, 1-based.
    pub fn get(&self, j: usize) -> &RationalFunction {
        &self.gamma[j - 1]
    }

    pub fn as_slice(&self) -> &[RationalFunction] {
        &self.gamma
    }
}

fn u(i: usize) -> LaurentPolynomial {
    LaurentPolynomial::var(Variable::u(i))
}

/// `rho (q^-1 - q)`.
fn rho_times_qinv_minus_q() -> LaurentPolynomial {
    -(&LaurentPolynomial::var(Variable::Rho) * &q_minus_q_inv())
}

/// Numerator and denominator of each `gamma_j`, unreduced:
/// `prod_{l != j} (u_l u_j - 1) ((1 - u_j^2) prod_{l != j} u_l + b_j K)` over
/// `prod_{l != j} (u_j - u_l) K` with `K = rho (q^-1 - q)`.
fn gamma_parts(r: usize) -> Vec<(LaurentPolynomial, LaurentPolynomial)> {
    let k = rho_times_qinv_minus_q();
    (1..=r)
        .map(|j| {
            let others = || (1..=r).filter(move |&l| l != j);
            let pre_num: LaurentPolynomial =
                others().map(|l| &(&u(l) * &u(j)) - &1.into()).product();
            let pre_den: LaurentPolynomial = others().map(|l| &u(j) - &u(l)).product();
            let prod_others: LaurentPolynomial = others().map(u).product();
            let branch = if r % 2 == 1 {
                LaurentPolynomial::one()
            } else {
                -u(j)
            };
            let inner =
                &(&(&LaurentPolynomial::one() - &u(j).pow(2)) * &prod_others) + &(&branch * &k);
            (&pre_num * &inner, &pre_den * &k)
        })
        .collect()
}

/// `gamma_j = prod_{l != j} (u_l u_j - 1)/(u_j - u_l)
///   * ((1 - u_j^2)/(rho (q^-1 - q)) prod_{l != j} u_l + b_j)`
/// with `b_j = 1` for odd `r` and `b_j = -u_j` for even `r`.
pub fn gamma_closed_form(r: usize) -> Result<GammaTable> {
    if r == 0 {
        return Err(Error::InvalidArgument("rank r must be at least 1".into()));
    }
    let gamma = gamma_parts(r)
        .into_iter()
        .map(|(num, den)| RationalFunction::new(num, den))
        .collect::<Result<_>>()?;
    Ok(GammaTable { r, gamma })
}

/// Residuals `sum_j gamma_j/(1 - u_i u_j) - 1/(1 - u_i^2) - 1/(rho (q^-1 - q))`
/// for `i = 1..=r`. All zero exactly when `gammas` solves the system.
pub fn gamma_system_residual(r: usize, gammas: &GammaTable) -> Result<Vec<RationalFunction>> {
    if gammas.rank() != r {
        return Err(Error::InvalidArgument(format!(
            "gamma table has rank {}, expected {r}",
            gammas.rank()
        )));
    }
    let one = LaurentPolynomial::one();
    let const_term = RationalFunction::new(one.clone(), rho_times_qinv_minus_q())?;
    (1..=r)
        .map(|i| {
            let lhs: RationalFunction = (1..=r)
                .map(|j| {
                    let k = RationalFunction::new(one.clone(), &one - &(&u(i) * &u(j)))?;
                    Ok(&k * gammas.get(j))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            let rhs = RationalFunction::new(one.clone(), &one - &u(i).pow(2))? + const_term.clone();
            Ok(lhs - rhs)
        })
        .collect()
}

/// `eta_a = sum_j gamma_j u_j^a` for `a = 0..=N`, summed over the common
/// denominator `rho (q^-1 - q) V` with `V = prod_{i<k} (u_i - u_k)`; the
/// numerator is divided by `V` exactly before reducing.
pub fn eta_from_gamma(r: usize, n: usize) -> Result<Vec<RationalFunction>> {
    if r == 0 {
        return Err(Error::InvalidArgument("rank r must be at least 1".into()));
    }
    let vandermonde: LaurentPolynomial = (1..=r)
        .flat_map(|i| (i + 1..=r).map(move |k| &u(i) - &u(k)))
        .product();
    let common = &vandermonde * &rho_times_qinv_minus_q();
    let lifted = gamma_parts(r)
        .into_iter()
        .map(|(num, den)| {
            let cofactor = common.div_exact(&den).ok_or_else(|| {
                Error::Internal("gamma denominator does not divide the common one".into())
            })?;
            Ok(&num * &cofactor)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut powers = lifted;
    let mut out = Vec::with_capacity(n + 1);
    for a in 0..=n {
        if a > 0 {
            for (j, p) in powers.iter_mut().enumerate() {
                *p = &*p * &u(j + 1);
            }
        }
        let sum: LaurentPolynomial = powers.iter().cloned().sum();
        let eta = match sum.div_exact(&vandermonde) {
            Some(reduced) => RationalFunction::new(reduced, rho_times_qinv_minus_q())?,
            None => RationalFunction::new(sum, common.clone())?,
        };
        out.push(eta);
    }
    Ok(out)
}

/// Evaluates the `gamma_j` at a numeric point, after checking that the
/// `u_j` are distinct and `u_i u_j != 1` for all `i, j` (including `i = j`,
/// where the defining system has the pole `1/(1 - u_i^2)`).
pub fn gamma_at(gammas: &GammaTable, point: &Point) -> Result<Vec<Rational>> {
    let r = gammas.rank();
    let value = |i: usize| {
        point
            .get(&Variable::u(i))
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("no value bound for u{i}")))
    };
    for i in 1..=r {
        for j in i..=r {
            let (ui, uj) = (value(i)?, value(j)?);
            if i != j && ui == uj {
                return Err(Error::ExcludedConfiguration(format!(
                    "u{i} = u{j} = {ui}: the u's must be distinct"
                )));
            }
            if (&ui * &uj).is_one() {
                return Err(Error::ExcludedConfiguration(format!(
                    "u{i} * u{j} = 1 (u{i} = {ui}, u{j} = {uj})"
                )));
            }
        }
    }
    gammas
        .as_slice()
        .iter()
        .map(|g| g.evaluate(point))
        .collect()
}

//! Elementary and complete symmetric polynomials in `u_1..u_r`, the signed
//! coefficients `a_j` of `prod (y - u_i)`, and the coefficients `mu_a` of
//! `G(t) = prod (t - u_l)/(t u_l - 1)`.

use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, Variable};

/// Which formula defines `a_j`. Only one is implemented; the flag records it
/// so reports can state the convention explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffConvention {
    /// `a_j = (-1)^(r-j) e_(r-j)(u)`, so that `prod (y - u_i) = sum a_j y^j`.
    ComplementaryIndex,
}

/// `a_0..=a_r` for a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCoeffs {
    r: usize,
    a: Vec<LaurentPolynomial>,
    convention: CoeffConvention,
}

impl SymCoeffs {
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn convention(&self) -> CoeffConvention {
        self.convention
    }

    pub fn as_slice(&self) -> &[LaurentPolynomial] {
        &self.a
    }

    /// `a_k`, with the convention `a_k = 0` for `k < 0` or `k > r`.
    pub fn get(&self, k: i64) -> LaurentPolynomial {
        if k < 0 || k > self.r as i64 {
            LaurentPolynomial::zero()
        } else {
            self.a[k as usize].clone()
        }
    }

    /// `a_0 = (-1)^r u_1...u_r`, a unit of the Laurent ring.
    pub fn a0(&self) -> &LaurentPolynomial {
        &self.a[0]
    }

    pub fn a0_inverse(&self) -> LaurentPolynomial {
        self.a[0].unit_inverse().expect("a_0 is a signed monomial")
    }
}

/// `e_0..=e_r` by expanding `prod_i (1 + u_i z)`.
pub fn elementary_symmetric_all(r: usize) -> Vec<LaurentPolynomial> {
    let mut e = vec![LaurentPolynomial::one()];
    for i in 1..=r {
        let u = LaurentPolynomial::var(Variable::u(i));
        let mut next = e.clone();
        next.push(LaurentPolynomial::zero());
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * &u);
        }
        e = next;
    }
    e
}

/// `e_k(u_1, ..., u_r)`.
pub fn elementary_symmetric(r: usize, k: usize) -> Result<LaurentPolynomial> {
    if k > r {
        return Err(Error::OutOfRange(format!("e_{k} requested for rank {r}")));
    }
    Ok(elementary_symmetric_all(r).swap_remove(k))
}

/// `h_0..=h_n(u_1, ..., u_r)`, the complete homogeneous symmetric
/// polynomials, from `prod_i 1/(1 - u_i z)`.
pub fn complete_homogeneous_all(r: usize, n: usize) -> Vec<LaurentPolynomial> {
    let mut h = vec![LaurentPolynomial::zero(); n + 1];
    h[0] = LaurentPolynomial::one();
    for i in 1..=r {
        let u = LaurentPolynomial::var(Variable::u(i));
        // h^(i)_k = h^(i-1)_k + u_i h^(i)_(k-1)
        for k in 1..=n {
            let shifted = &h[k - 1] * &u;
            h[k] = &h[k] + &shifted;
        }
    }
    h
}

pub fn signed_coeffs(r: usize) -> Result<SymCoeffs> {
    if r == 0 {
        return Err(Error::InvalidArgument("rank r must be at least 1".into()));
    }
    let e = elementary_symmetric_all(r);
    let a = (0..=r)
        .map(|j| {
            let term = e[r - j].clone();
            if (r - j) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .collect();
    Ok(SymCoeffs {
        r,
        a,
        convention: CoeffConvention::ComplementaryIndex,
    })
}

/// `mu_0..=mu_N`: coefficients of the power series of `G(t)` about `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    r: usize,
    mu: Vec<LaurentPolynomial>,
}

impl MuTable {
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn as_slice(&self) -> &[LaurentPolynomial] {
        &self.mu
    }

    /// `mu_a`, zero for negative `a`.
    pub fn get(&self, a: i64) -> LaurentPolynomial {
        if a < 0 {
            LaurentPolynomial::zero()
        } else {
            self.mu[a as usize].clone()
        }
    }
}

/// Computes `mu_a` through `G(t) = (-1)^r (sum_j a_j t^j) (sum_k h_k t^k)`,
/// which follows from `prod (t - u) = sum a_j t^j` and
/// `prod 1/(1 - u t) = sum h_k t^k`.
pub fn mu_table(r: usize, n: usize) -> Result<MuTable> {
    let a = signed_coeffs(r)?;
    let h = complete_homogeneous_all(r, n);
    let sign = if r % 2 == 1 { -1 } else { 1 };
    let mu = (0..=n)
        .map(|idx| {
            let sum: LaurentPolynomial = (0..=idx.min(r))
                .map(|j| &a.as_slice()[j] * &h[idx - j])
                .sum();
            if sign < 0 {
                -sum
            } else {
                sum
            }
        })
        .collect();
    Ok(MuTable { r, mu })
}

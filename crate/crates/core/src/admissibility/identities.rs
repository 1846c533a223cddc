//! Polynomial identities satisfied by the `xi_a`, stated as residuals that
//! must vanish, and the suite that runs them for a fixed rank.

use crate::error::{Error, Result};
use crate::exact::{LaurentPolynomial, RationalFunction};
use crate::symfun::{mu_table, signed_coeffs, SymCoeffs};

use super::gamma::{eta_from_gamma, gamma_closed_form, gamma_system_residual};
use super::zfun::substitute_poly;
use super::{
    condition1_window_terms, eta_closed_form_with, eta_table_from_series, q_minus_q_inv, rho_inv,
    ring_membership, xi0_formula, EtaTable, RhoChoice,
};

fn windows(a: &SymCoeffs, r: usize, l: usize) -> LaurentPolynomial {
    condition1_window_terms(r, l)
        .into_iter()
        .map(|(sign, k)| if sign < 0 { -a.get(k) } else { a.get(k) })
        .sum()
}

fn xi_tail(table: &EtaTable, a: &SymCoeffs, r: usize, l: usize) -> LaurentPolynomial {
    (1..=r - l)
        .map(|j| table.xi(j) * &a.get((j + l) as i64))
        .sum()
}

fn check_l(r: usize, l: usize) -> Result<()> {
    if l == 0 || l >= r {
        return Err(Error::OutOfRange(format!(
            "l = {l} is outside 1..={}",
            r.saturating_sub(1)
        )));
    }
    Ok(())
}

fn table_for(r: usize, n: usize) -> Result<EtaTable> {
    eta_table_from_series(r, n)
}

pub(crate) fn corollary_with(
    table: &EtaTable,
    l: usize,
    choice: RhoChoice,
) -> Result<LaurentPolynomial> {
    let r = table.rank();
    check_l(r, l)?;
    if !choice.is_legal_for(r) {
        return Err(Error::InvalidArgument(format!(
            "rho choice {choice} is not a root for r = {r}"
        )));
    }
    let a = signed_coeffs(r)?;
    let rho = LaurentPolynomial::var(crate::exact::Variable::Rho);
    let first = &rho * &(&a.get(l as i64) - &(&a.get((r - l) as i64) * &a.a0_inverse()));
    let residual = first + xi_tail(table, &a, r, l) + &q_minus_q_inv() * &windows(&a, r, l);
    substitute_poly(&residual, &choice.binding(r)?)
}

/// `rho (a_l - a_(r-l)/a_0) + sum_{j=1}^{r-l} xi_j a_(j+l) + (q - q^-1) W_l`
/// with `rho` eliminated by `choice`, where `W_l` is the signed sum over the
/// two index windows. Vanishes for `1 <= l <= r-1`.
pub fn corollary_identity_residual(
    r: usize,
    l: usize,
    choice: RhoChoice,
) -> Result<LaurentPolynomial> {
    check_l(r, l)?;
    corollary_with(&table_for(r, r)?, l, choice)
}

pub(crate) fn eta_lemma_with(table: &EtaTable, l: usize) -> Result<LaurentPolynomial> {
    let r = table.rank();
    check_l(r, l)?;
    let a = signed_coeffs(r)?;
    let w = q_minus_q_inv();
    let mut lead = &rho_inv() * a.a0();
    if r % 2 == 0 {
        lead = lead - &w;
    }
    let first = &lead * &(&(a.a0() * &a.get(l as i64)) - &a.get((r - l) as i64));
    Ok(first + xi_tail(table, &a, r, l) + &w * &windows(&a, r, l))
}

/// The same identity before passing to the quotient:
/// `[rho^-1 a_0 - [r even](q - q^-1)](a_0 a_l - a_(r-l)) + sum xi_j a_(j+l) + (q - q^-1) W_l`.
pub fn eta_lemma_residual(r: usize, l: usize) -> Result<LaurentPolynomial> {
    check_l(r, l)?;
    eta_lemma_with(&table_for(r, r)?, l)
}

pub(crate) fn eta_weak_with(table: &EtaTable, m: usize) -> Result<LaurentPolynomial> {
    let r = table.rank();
    if m < r || m > table.truncation() {
        return Err(Error::OutOfRange(format!(
            "m = {m} is outside {r}..={}",
            table.truncation()
        )));
    }
    let a = signed_coeffs(r)?;
    Ok((0..=r)
        .map(|j| &a.as_slice()[j] * table.xi(j + m - r))
        .sum())
}

/// `sum_{j=0}^r a_j xi_(j+m-r)` for `r <= m <= n`, from a table truncated at `n`.
pub fn eta_weak_residual(r: usize, m: usize, n: usize) -> Result<LaurentPolynomial> {
    if m < r || m > n {
        return Err(Error::OutOfRange(format!("m = {m} is outside {r}..={n}")));
    }
    eta_weak_with(&table_for(r, n)?, m)
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyResult {
    pub name: &'static str,
    pub checked: usize,
    /// Descriptions of the instances that did not hold.
    pub failures: Vec<String>,
    /// The family has no members for this rank.
    pub vacuous: bool,
}

impl FamilyResult {
    fn new(name: &'static str) -> Self {
        FamilyResult {
            name,
            checked: 0,
            failures: Vec::new(),
            vacuous: false,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self) -> usize {
        self.failures.len()
    }
}

/// Largest `a` in the gamma/series agreement family.
pub const GAMMA_MAX_A: usize = 8;

/// Runs every symbolic family for rank `r` with the `xi_a` truncated at `n`.
pub fn symbolic_suite(r: usize, n: usize) -> Result<Vec<FamilyResult>> {
    if n < r + 6 {
        return Err(Error::OutOfRange(format!(
            "truncation {n} is below r + 6 = {}",
            r + 6
        )));
    }
    let table = table_for(r, n)?;
    let mu = mu_table(r, n)?;
    let mut out = Vec::new();

    let mut f = FamilyResult::new("series/closed-form agreement");
    for a in 0..=n {
        let closed = eta_closed_form_with(&mu, a)?;
        f.record(&closed == table.xi(a), || format!("a = {a}"));
    }
    out.push(f);

    let mut f = FamilyResult::new("xi_0 formula");
    f.record(&xi0_formula(r)? == table.xi(0), || "a = 0".into());
    out.push(f);

    let mut f = FamilyResult::new("ring membership");
    for a in 0..=n {
        let m = ring_membership(r, table.xi(a));
        f.record(m.holds(), || format!("a = {a}: {m:?}"));
    }
    out.push(f);

    let mut f = FamilyResult::new("eta lemma");
    f.vacuous = r == 1;
    for l in 1..r {
        f.record(eta_lemma_with(&table, l)?.is_zero(), || format!("l = {l}"));
    }
    out.push(f);

    let mut f = FamilyResult::new("corollary");
    f.vacuous = r == 1;
    for l in 1..r {
        for choice in RhoChoice::legal(r) {
            f.record(corollary_with(&table, l, choice)?.is_zero(), || {
                format!("l = {l}, rho = {choice}")
            });
        }
    }
    out.push(f);

    let mut f = FamilyResult::new("eta weak admissibility");
    for m in r..=r + 6 {
        f.record(eta_weak_with(&table, m)?.is_zero(), || format!("m = {m}"));
    }
    out.push(f);

    let mut system = FamilyResult::new("gamma system");
    let gammas = gamma_closed_form(r)?;
    for (i, res) in gamma_system_residual(r, &gammas)?.iter().enumerate() {
        system.record(res.is_zero(), || format!("i = {}", i + 1));
    }
    let mut agreement = FamilyResult::new("gamma/series agreement");
    let w = RationalFunction::from_poly(q_minus_q_inv());
    for (a, eta) in eta_from_gamma(r, GAMMA_MAX_A.min(n))?.iter().enumerate() {
        let scaled = &w * eta;
        agreement.record(scaled.as_laurent_polynomial() == Some(table.xi(a)), || {
            format!("a = {a}")
        });
    }
    out.push(system);
    out.push(agreement);
    Ok(out)
}

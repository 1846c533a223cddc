//! Exact checkers for the ground-ring relation, weak admissibility, the
//! three Wilcox-Yu conditions and u-admissibility.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::instance::GroundRingInstance;
use super::{condition1_window_terms, eta_table_from_series, EtaTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// `rho^-1 - rho = (q^-1 - q)(delta_0 - 1)`.
    GroundRing,
    /// `sum_k a_k delta_(k+a) = 0`.
    Weak,
    Condition1,
    Condition2,
    Condition3,
    /// `(q - q^-1) delta_a = xi_a`.
    UAdmissible,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::GroundRing => "ground-ring",
            Condition::Weak => "weak",
            Condition::Condition1 => "condition-1",
            Condition::Condition2 => "condition-2",
            Condition::Condition3 => "condition-3",
            Condition::UAdmissible => "u-admissible",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A violated identity with both sides evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    /// `l` for condition 1, `a` for the indexed families, 0 otherwise.
    pub index: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at index {}: {} != {}",
            self.condition, self.index, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    /// Number of identities checked.
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    fn record(&mut self, condition: Condition, index: i64, lhs: Rational, rhs: Rational) {
        self.checked += 1;
        if lhs != rhs {
            self.failures.push(Failure {
                condition,
                index,
                lhs,
                rhs,
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub ground_ring: Verdict,
    pub weak: Verdict,
    pub wilcox_yu: Verdict,
    pub u_admissible: Verdict,
    /// Positive indices are certified up to this `N`.
    pub truncation: usize,
    pub neg_depth: usize,
}

impl AdmissibilityReport {
    pub fn all_passed(&self) -> bool {
        self.ground_ring.passed()
            && self.weak.passed()
            && self.wilcox_yu.passed()
            && self.u_admissible.passed()
    }

    /// Pass/fail of each verdict, in the order ground ring, weak, Wilcox-Yu, u.
    pub fn flags(&self) -> [bool; 4] {
        [
            self.ground_ring.passed(),
            self.weak.passed(),
            self.wilcox_yu.passed(),
            self.u_admissible.passed(),
        ]
    }
}

fn delta_at(instance: &GroundRingInstance, a: i64) -> Result<&Rational> {
    instance.delta(a).ok_or_else(|| {
        Error::OutOfRange(format!(
            "delta_{a} is outside -{}..={}",
            instance.neg_depth(),
            instance.max_a()
        ))
    })
}

fn ensure_truncation(instance: &GroundRingInstance, n: usize) -> Result<()> {
    if n > instance.max_a() {
        return Err(Error::OutOfRange(format!(
            "truncation {n} exceeds the available deltas (N = {})",
            instance.max_a()
        )));
    }
    Ok(())
}

pub fn check_ground_ring(instance: &GroundRingInstance) -> Result<Verdict> {
    let rho = instance.rho();
    let lhs = &rho.recip()? - rho;
    let rhs = &(-&instance.q_minus_q_inv()) * &(delta_at(instance, 0)? - &Rational::one());
    let mut v = Verdict::default();
    v.record(Condition::GroundRing, 0, lhs, rhs);
    Ok(v)
}

/// `sum_{k=0}^r a_k delta_(k+a) = 0` for `-D <= a <= n - r`.
pub fn check_weak_admissible(
    instance: &GroundRingInstance,
    n: usize,
    depth: usize,
) -> Result<Verdict> {
    ensure_truncation(instance, n)?;
    if depth > instance.neg_depth() {
        return Err(Error::OutOfRange(format!(
            "depth {depth} exceeds the derived negative deltas ({})",
            instance.neg_depth()
        )));
    }
    let r = instance.rank() as i64;
    let a = instance.a_coeffs();
    let mut v = Verdict::default();
    for idx in -(depth as i64)..=(n as i64 - r) {
        let mut sum = Rational::zero();
        for (k, ak) in a.iter().enumerate() {
            sum = &sum + &(ak * delta_at(instance, k as i64 + idx)?);
        }
        v.record(Condition::Weak, idx, sum, Rational::zero());
    }
    Ok(v)
}

/// Conditions 1 (`1 <= l <= r-1`), 2 and 3 (`r <= a <= n`).
pub fn check_wy_admissible(instance: &GroundRingInstance, n: usize) -> Result<Verdict> {
    ensure_truncation(instance, n)?;
    let w = nonzero_w(instance)?;
    let r = instance.rank();
    let a = instance.a_coeffs();
    let a_at = |k: i64| -> Rational {
        if k < 0 || k > r as i64 {
            Rational::zero()
        } else {
            a[k as usize].clone()
        }
    };
    let rho = instance.rho();
    let a0_inv = a[0].recip()?;
    let mut v = Verdict::default();

    for l in 1..r {
        let mut bracket = Rational::zero();
        for j in 1..=(r - l) {
            bracket = &bracket + &(&a_at((j + l) as i64) * delta_at(instance, j as i64)?);
        }
        for (sign, k) in condition1_window_terms(r, l) {
            let term = a_at(k);
            bracket = if sign < 0 {
                &bracket - &term
            } else {
                &bracket + &term
            };
        }
        let lhs =
            &(rho * &(&a_at(l as i64) - &(&a_at((r - l) as i64) * &a0_inv))) + &(&w * &bracket);
        v.record(Condition::Condition1, l as i64, lhs, Rational::zero());
    }

    let lhs = &(&rho.recip()? * &a[0]) - &(rho * &a0_inv);
    let rhs = if r % 2 == 1 {
        Rational::zero()
    } else {
        w.clone()
    };
    v.record(Condition::Condition2, 0, lhs, rhs);

    for idx in r..=n {
        let mut rhs = Rational::zero();
        for (j, aj) in a.iter().take(r).enumerate() {
            rhs = &rhs - &(aj * delta_at(instance, (idx - r + j) as i64)?);
        }
        v.record(
            Condition::Condition3,
            idx as i64,
            delta_at(instance, idx as i64)?.clone(),
            rhs,
        );
    }
    Ok(v)
}

/// `(q - q^-1) delta_a = xi_a(u, rho, q)` for `0 <= a <= n`.
pub fn check_u_admissible(instance: &GroundRingInstance, n: usize) -> Result<Verdict> {
    ensure_truncation(instance, n)?;
    Checker::new(instance.rank(), n)?.u_verdict(instance, n, None)
}

/// As [`check_u_admissible`] against precomputed `xi_0..=xi_n` values.
pub(crate) fn check_u_admissible_with(
    instance: &GroundRingInstance,
    n: usize,
    xi: &[Rational],
) -> Result<Verdict> {
    ensure_truncation(instance, n)?;
    if xi.len() <= n {
        return Err(Error::InvalidArgument(
            "precomputed xi values are shorter than the truncation".into(),
        ));
    }
    let w = nonzero_w(instance)?;
    let mut v = Verdict::default();
    for (a, xa) in xi.iter().enumerate().take(n + 1) {
        v.record(
            Condition::UAdmissible,
            a as i64,
            &w * delta_at(instance, a as i64)?,
            xa.clone(),
        );
    }
    Ok(v)
}

/// Checks instances of one rank against a shared table of `xi_a`.
#[derive(Clone, Debug)]
pub struct Checker {
    table: EtaTable,
}

impl Checker {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        Ok(Checker {
            table: eta_table_from_series(r, n)?,
        })
    }

    pub fn from_table(table: EtaTable) -> Self {
        Checker { table }
    }

    pub fn table(&self) -> &EtaTable {
        &self.table
    }

    /// `xi_0..=xi_n` evaluated at the instance's `(u, rho, q)`.
    pub fn xi_values(&self, instance: &GroundRingInstance, n: usize) -> Result<Vec<Rational>> {
        self.ensure_compatible(instance, n)?;
        let point = instance.point();
        (0..=n).map(|a| self.table.evaluate(a, &point)).collect()
    }

    fn ensure_compatible(&self, instance: &GroundRingInstance, n: usize) -> Result<()> {
        if instance.rank() != self.table.rank() {
            return Err(Error::InvalidArgument(format!(
                "instance has rank {}, checker has rank {}",
                instance.rank(),
                self.table.rank()
            )));
        }
        if n > self.table.truncation() {
            return Err(Error::OutOfRange(format!(
                "truncation {n} exceeds the checker table ({})",
                self.table.truncation()
            )));
        }
        ensure_truncation(instance, n)
    }

    fn u_verdict(
        &self,
        instance: &GroundRingInstance,
        n: usize,
        xi: Option<&[Rational]>,
    ) -> Result<Verdict> {
        match xi {
            Some(xi) => check_u_admissible_with(instance, n, xi),
            None => check_u_admissible_with(instance, n, &self.xi_values(instance, n)?),
        }
    }

    /// Runs every checker at the instance's own truncation and depth.
    pub fn check(&self, instance: &GroundRingInstance) -> Result<AdmissibilityReport> {
        self.check_to(instance, instance.max_a(), instance.neg_depth(), None)
    }

    /// As [`Checker::check`], reusing `xi` values computed by
    /// [`Checker::xi_values`] for the same `(u, rho, q)`.
    pub fn check_with_xi(
        &self,
        instance: &GroundRingInstance,
        xi: &[Rational],
    ) -> Result<AdmissibilityReport> {
        self.check_to(instance, instance.max_a(), instance.neg_depth(), Some(xi))
    }

    pub fn check_to(
        &self,
        instance: &GroundRingInstance,
        n: usize,
        depth: usize,
        xi: Option<&[Rational]>,
    ) -> Result<AdmissibilityReport> {
        self.ensure_compatible(instance, n)?;
        Ok(AdmissibilityReport {
            ground_ring: check_ground_ring(instance)?,
            weak: check_weak_admissible(instance, n, depth)?,
            wilcox_yu: check_wy_admissible(instance, n)?,
            u_admissible: self.u_verdict(instance, n, xi)?,
            truncation: n,
            neg_depth: depth,
        })
    }
}

fn nonzero_w(instance: &GroundRingInstance) -> Result<Rational> {
    let w = instance.q_minus_q_inv();
    if w.is_zero() {
        Err(Error::QMinusQInvVanishes)
    } else {
        Ok(w)
    }
}

//! Admissibility of ground-ring parameters: the generating function `Z(t)`,
//! the `gamma_j`, numeric parameter sets, the three checkers and the
//! symbolic identity suite behind their equivalence.

mod checks;
mod equivalence;
mod gamma;
mod identities;
mod instance;
mod zfun;

use std::fmt;
use std::str::FromStr;

pub use checks::{
    check_ground_ring, check_u_admissible, check_weak_admissible, check_wy_admissible,
    AdmissibilityReport, Checker, Condition, Failure, Verdict,
};
pub use equivalence::{
    sample_parameters, verify_equivalence, EquivalenceConfig, EquivalenceReport,
    PerturbationOutcome, SampleOutcome, SampledParameters,
};
pub use gamma::{eta_from_gamma, gamma_at, gamma_closed_form, gamma_system_residual, GammaTable};
pub use identities::{
    corollary_identity_residual, eta_lemma_residual, eta_weak_residual, symbolic_suite,
    FamilyResult,
};
pub use instance::{
    apply_morphism, check_generic_configuration, delta_negative, generate_instance,
    generate_instance_with, GroundRingInstance, Morphism,
};
pub use zfun::{
    eta_closed_form, eta_closed_form_with, eta_table_from_series, express_in_q_minus_q_inv,
    is_symmetric, ring_membership, xi0_formula, z_series, EtaTable, RhoMode, RingMembership,
};

use crate::error::{Error, Result};
use crate::exact::{Bindings, LaurentPolynomial, Rational, RationalFunction, Variable};
use crate::symfun::signed_coeffs;

/// Default truncation order `N = 2r + 8`.
pub fn default_truncation(r: usize) -> usize {
    2 * r + 8
}

/// Default depth `D = r + 6` of negative-index deltas.
pub fn default_neg_depth(r: usize) -> usize {
    r + 6
}

/// `q - q^-1`.
pub fn q_minus_q_inv() -> LaurentPolynomial {
    LaurentPolynomial::var(Variable::Q) - LaurentPolynomial::var_pow(Variable::Q, -1)
}

pub(crate) fn rho_inv() -> LaurentPolynomial {
    LaurentPolynomial::var_pow(Variable::Rho, -1)
}

/// A root of the second Wilcox-Yu condition, used to eliminate `rho`.
///
/// For odd `r` the roots are `rho = +-a_0`; for even `r` they are
/// `rho = q^-1 a_0` and `rho = -q a_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoChoice {
    MinusA0,
    PlusA0,
    QInvA0,
    MinusQA0,
}

impl RhoChoice {
    /// `rho = -a_0` for odd `r`, `rho = q^-1 a_0` for even `r`.
    pub fn normalized(r: usize) -> Self {
        if r % 2 == 1 {
            RhoChoice::MinusA0
        } else {
            RhoChoice::QInvA0
        }
    }

    pub fn legal(r: usize) -> [RhoChoice; 2] {
        if r % 2 == 1 {
            [RhoChoice::MinusA0, RhoChoice::PlusA0]
        } else {
            [RhoChoice::QInvA0, RhoChoice::MinusQA0]
        }
    }

    pub fn is_legal_for(self, r: usize) -> bool {
        Self::legal(r).contains(&self)
    }

    /// The chosen `rho` as a Laurent polynomial in `u` and `q`.
    pub fn symbolic(self, r: usize) -> Result<LaurentPolynomial> {
        let a0 = signed_coeffs(r)?.a0().clone();
        let q = LaurentPolynomial::var(Variable::Q);
        Ok(match self {
            RhoChoice::MinusA0 => -a0,
            RhoChoice::PlusA0 => a0,
            RhoChoice::QInvA0 => &LaurentPolynomial::var_pow(Variable::Q, -1) * &a0,
            RhoChoice::MinusQA0 => -(&q * &a0),
        })
    }

    pub fn binding(self, r: usize) -> Result<Bindings> {
        Ok([(
            Variable::Rho,
            RationalFunction::from_poly(self.symbolic(r)?),
        )]
        .into())
    }

    pub fn value(self, a0: &Rational, q: &Rational) -> Result<Rational> {
        Ok(match self {
            RhoChoice::MinusA0 => -a0,
            RhoChoice::PlusA0 => a0.clone(),
            RhoChoice::QInvA0 => a0.checked_div(q)?,
            RhoChoice::MinusQA0 => -(a0 * q),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            RhoChoice::MinusA0 => "minus-a0",
            RhoChoice::PlusA0 => "plus-a0",
            RhoChoice::QInvA0 => "q-inv-a0",
            RhoChoice::MinusQA0 => "minus-q-a0",
        }
    }
}

impl fmt::Display for RhoChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RhoChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "minus-a0" => RhoChoice::MinusA0,
            "plus-a0" => RhoChoice::PlusA0,
            "q-inv-a0" => RhoChoice::QInvA0,
            "minus-q-a0" => RhoChoice::MinusQA0,
            other => return Err(Error::Parse(format!("unknown rho choice {other:?}"))),
        })
    }
}

/// Signed indices `(sign, k)` of the `a_k` in the two index windows of the
/// first Wilcox-Yu condition:
/// `- sum_{j = max(l+1, ceil(r/2))}^{floor((l+r)/2)} a_(2j-l)
///  + sum_{j = ceil(l/2)}^{min(l, ceil(r/2)-1)} a_(2j-l)`.
/// Empty windows contribute nothing.
pub fn condition1_window_terms(r: usize, l: usize) -> Vec<(i64, i64)> {
    let (r, l) = (r as i64, l as i64);
    let ceil_half_r = (r + 1) / 2;
    let mut out = Vec::new();
    for j in (l + 1).max(ceil_half_r)..=(l + r) / 2 {
        out.push((-1, 2 * j - l));
    }
    for j in (l + 1) / 2..=l.min(ceil_half_r - 1) {
        out.push((1, 2 * j - l));
    }
    out
}

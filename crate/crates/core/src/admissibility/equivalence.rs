//! Randomized exact verification that u-admissible parameters are
//! Wilcox-Yu admissible and that the deltas are pinned down uniquely.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::checks::{
    check_ground_ring, check_u_admissible_with, check_wy_admissible, AdmissibilityReport, Checker,
};
use super::identities::{symbolic_suite, FamilyResult};
use super::instance::{
    apply_morphism, check_generic_configuration, generate_instance_with, GroundRingInstance,
    Morphism,
};
use super::{default_neg_depth, default_truncation, RhoChoice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceConfig {
    pub r: usize,
    pub samples: usize,
    pub max_a: usize,
    pub neg_depth: usize,
    pub seed: u64,
    /// Also run [`symbolic_suite`] for this rank.
    pub symbolic: bool,
}

impl EquivalenceConfig {
    /// Default truncation `2r + 8`, depth `r + 6`, symbolic suite included.
    pub fn new(r: usize, samples: usize, seed: u64) -> Self {
        EquivalenceConfig {
            r,
            samples,
            max_a: default_truncation(r),
            neg_depth: default_neg_depth(r),
            seed,
            symbolic: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledParameters {
    pub index: usize,
    pub u: Vec<Rational>,
    pub q: Rational,
    pub rho_choice: RhoChoice,
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=9);
    Rational::new(n, d).expect("denominator is positive")
}

/// Draws `count` parameter sets with `u_i` and `q` of the form `n/d`,
/// `1 <= n, d <= 9`, rejecting the excluded configurations. The root for
/// `rho` alternates between the two legal ones by sample index.
pub fn sample_parameters(r: usize, count: usize, seed: u64) -> Vec<SampledParameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let legal = RhoChoice::legal(r);
    (0..count)
        .map(|index| loop {
            let u: Vec<Rational> = (0..r).map(|_| small_rational(&mut rng)).collect();
            let q = small_rational(&mut rng);
            if check_generic_configuration(&u, &q).is_ok() {
                break SampledParameters {
                    index,
                    u,
                    q,
                    rho_choice: legal[index % 2],
                };
            }
        })
        .collect()
}

/// Rejections of the instance with `delta_index` increased by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerturbationOutcome {
    pub index: usize,
    /// Rejected by a Wilcox-Yu condition or the ground-ring relation.
    pub rejected_by_wilcox_yu: bool,
    pub rejected_by_u: bool,
}

impl PerturbationOutcome {
    pub fn detected(&self) -> bool {
        self.rejected_by_wilcox_yu
    }
}

#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub params: SampledParameters,
    pub instance: GroundRingInstance,
    pub report: AdmissibilityReport,
    pub perturbations: Vec<PerturbationOutcome>,
    /// Verdict flags after each non-identity morphism.
    pub morphisms: Vec<(Morphism, [bool; 4])>,
}

impl SampleOutcome {
    pub fn forward_passed(&self) -> bool {
        self.report.all_passed()
    }

    pub fn all_perturbations_detected(&self) -> bool {
        self.perturbations.iter().all(PerturbationOutcome::detected)
    }

    pub fn morphisms_invariant(&self) -> bool {
        let base = self.report.flags();
        self.morphisms.iter().all(|(_, flags)| *flags == base)
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub config: EquivalenceConfig,
    /// In sample-index order.
    pub samples: Vec<SampleOutcome>,
    pub symbolic: Vec<FamilyResult>,
}

impl EquivalenceReport {
    pub fn forward_passed(&self) -> usize {
        self.samples.iter().filter(|s| s.forward_passed()).count()
    }

    pub fn perturbations(&self) -> usize {
        self.samples.iter().map(|s| s.perturbations.len()).sum()
    }

    pub fn perturbations_detected(&self) -> usize {
        self.samples
            .iter()
            .flat_map(|s| &s.perturbations)
            .filter(|p| p.detected())
            .count()
    }

    pub fn morphisms_invariant(&self) -> usize {
        self.samples
            .iter()
            .filter(|s| s.morphisms_invariant())
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.samples.iter().all(|s| {
            s.forward_passed() && s.all_perturbations_detected() && s.morphisms_invariant()
        }) && self.symbolic.iter().all(FamilyResult::passed)
    }
}

fn run_sample(
    checker: &Checker,
    config: &EquivalenceConfig,
    params: SampledParameters,
) -> Result<SampleOutcome> {
    let instance = generate_instance_with(
        checker.table(),
        &params.u,
        &params.q,
        params.rho_choice,
        config.max_a,
        config.neg_depth,
    )?;
    let xi = checker.xi_values(&instance, config.max_a)?;
    let report = checker.check_with_xi(&instance, &xi)?;

    let perturbations = (1..=config.max_a)
        .map(|a| {
            let bumped = instance.with_delta(a, &instance.deltas()[a] + &Rational::one())?;
            let wy = check_wy_admissible(&bumped, config.max_a)?;
            let ground = check_ground_ring(&bumped)?;
            let u = check_u_admissible_with(&bumped, config.max_a, &xi)?;
            Ok(PerturbationOutcome {
                index: a,
                rejected_by_wilcox_yu: !wy.passed() || !ground.passed(),
                rejected_by_u: !u.passed(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let morphisms = [Morphism::QToNegQInv, Morphism::NegateRhoAndQ]
        .into_iter()
        .map(|m| {
            let image = apply_morphism(&instance, m)?;
            Ok((m, checker.check(&image)?.flags()))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SampleOutcome {
        params,
        instance,
        report,
        perturbations,
        morphisms,
    })
}

/// Forward direction, uniqueness by single-delta perturbation and morphism
/// invariance on sampled instances, plus the symbolic suite if requested.
/// Samples run in parallel; results keep sample order.
pub fn verify_equivalence(config: &EquivalenceConfig) -> Result<EquivalenceReport> {
    if config.r == 0 {
        return Err(Error::InvalidArgument("rank r must be at least 1".into()));
    }
    if config.neg_depth > config.max_a {
        return Err(Error::OutOfRange(format!(
            "negative depth {} exceeds the truncation {}",
            config.neg_depth, config.max_a
        )));
    }
    let checker = Checker::new(config.r, config.max_a)?;
    let samples = sample_parameters(config.r, config.samples, config.seed)
        .into_par_iter()
        .map(|p| run_sample(&checker, config, p))
        .collect::<Result<Vec<_>>>()?;
    let symbolic = if config.symbolic {
        symbolic_suite(config.r, config.max_a.max(config.r + 6))?
    } else {
        Vec::new()
    };
    Ok(EquivalenceReport {
        config: config.clone(),
        samples,
        symbolic,
    })
}

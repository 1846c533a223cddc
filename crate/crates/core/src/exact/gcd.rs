//! Multivariate GCD over the integers.
//!
//! Laurent inputs are first shifted into the polynomial ring; the GCD of two
//! Laurent polynomials is only defined up to units (signed monomials), and we
//! return the representative with no monomial factor beyond the common
//! monomial content and a positive leading coefficient.
//!
//! The polynomial GCD is the classical recursive algorithm: pick a main
//! variable, split off contents (GCDs of coefficients, computed recursively
//! in fewer variables) and run a primitive pseudo-remainder sequence on the
//! primitive parts. A heuristic evaluation/interpolation GCD is tried
//! first; its candidates are confirmed by exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::monomial::{Monomial, Variable};
use super::poly::LaurentPolynomial;

/// GCD of two Laurent polynomials, normalized to a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let g = poly_gcd(&a.mul_monomial(&ma.inv()), &b.mul_monomial(&mb.inv()));
    g.mul_monomial(&ma.gcd(&mb))
}

fn positive(p: LaurentPolynomial) -> LaurentPolynomial {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

/// GCD in `Z[x...]`; both inputs must have nonnegative exponents.
pub(crate) fn poly_gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    if a == b {
        return positive(a.clone());
    }
    if let Some(ca) = a.as_constant() {
        return LaurentPolynomial::constant(ca.gcd(&b.integer_content()));
    }
    if let Some(cb) = b.as_constant() {
        return LaurentPolynomial::constant(cb.gcd(&a.integer_content()));
    }
    if let Some((m, c)) = a.as_term() {
        return term_gcd(m, c, b);
    }
    if let Some((m, c)) = b.as_term() {
        return term_gcd(m, c, a);
    }

    // Strip monomial contents, they are handled exactly.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a = a.mul_monomial(&ma.inv());
    let b = b.mul_monomial(&mb.inv());

    let Some(x) = main_variable(&a, &b) else {
        // No shared variable: any common factor is an integer.
        let c = a.integer_content().gcd(&b.integer_content());
        return LaurentPolynomial::term(mono, c);
    };

    let (va, vb) = (a.variables(), b.variables());
    if vb.len() < va.len() && vb.is_subset(&va) {
        return positive(gcd_with_fewer_variables(&a, &b).mul_monomial(&mono));
    }
    if va.len() < vb.len() && va.is_subset(&vb) {
        return positive(gcd_with_fewer_variables(&b, &a).mul_monomial(&mono));
    }

    if let Some(g) = heuristic_gcd(&a, &b) {
        return positive(g.mul_monomial(&mono));
    }

    let ca = content_in(&a, x);
    let cb = content_in(&b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g_content = poly_gcd(&ca, &cb);
    let g = &g_content * &primitive_prs(pa, pb, x);
    positive(
        g.mul_monomial(&g.monomial_content().inv())
            .mul_monomial(&mono),
    )
}

/// `gcd(big, small)` when `small` involves a strict subset of the variables
/// of `big`: every common divisor lives in those variables, so it is the
/// gcd of `small` with the coefficients of `big` over the other variables.
fn gcd_with_fewer_variables(
    big: &LaurentPolynomial,
    small: &LaurentPolynomial,
) -> LaurentPolynomial {
    let keep = small.variables();
    let mut coeffs: BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = BTreeMap::new();
    for (m, c) in big.terms() {
        let (inner, outer): (Vec<_>, Vec<_>) = m.iter().partition(|(v, _)| keep.contains(v));
        coeffs
            .entry(Monomial::from_pairs(outer))
            .or_default()
            .push((Monomial::from_pairs(inner), c.clone()));
    }
    let mut ordered: Vec<LaurentPolynomial> = coeffs
        .into_values()
        .map(LaurentPolynomial::from_terms)
        .collect();
    ordered.sort_by_key(|c| c.len());
    let mut acc = small.clone();
    for c in &ordered {
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

const HEURISTIC_ATTEMPTS: usize = 6;

fn max_norm(p: &LaurentPolynomial) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// `p` with `x` replaced by the integer `xi`.
fn eval_at(p: &LaurentPolynomial, x: Variable, xi: &BigInt) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(p.terms().map(|(m, c)| {
        let (e, rest) = m.split_off(x);
        (rest, c * xi.pow(e as u32))
    }))
}

/// Reads the integer coefficients of `h` as base-`xi` digits in the
/// symmetric range and returns `sum_k digit_k x^k`.
fn interpolate(h: &LaurentPolynomial, x: Variable, xi: &BigInt) -> LaurentPolynomial {
    let half = xi >> 1;
    let mut rest = h.clone();
    let mut out = Vec::new();
    let mut k = 0;
    while !rest.is_zero() {
        let digits = LaurentPolynomial::from_terms(rest.terms().map(|(m, c)| {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            (m.clone(), d)
        }));
        for (m, d) in digits.terms() {
            out.push((m.mul(&Monomial::var_pow(x, k)), d.clone()));
        }
        rest = (&rest - &digits).div_integer(xi).expect("digits removed");
        k += 1;
    }
    LaurentPolynomial::from_terms(out)
}

/// GCD by evaluating one variable at a large integer, recursing, and
/// interpolating back. `None` if no candidate divides both inputs.
fn heuristic_gcd(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    if a.is_zero() || b.is_zero() {
        return Some(positive(a + b));
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let (a, b) = (a.mul_monomial(&ma.inv()), b.mul_monomial(&mb.inv()));
    let (ca, cb) = (a.integer_content(), b.integer_content());
    let content = ca.gcd(&cb);
    let a = a.div_integer(&ca).expect("content divides");
    let b = b.div_integer(&cb).expect("content divides");

    let vars = &a.variables() | &b.variables();
    let Some(&x) = vars.iter().max_by_key(|&&v| {
        (
            a.degree_range(v).1.max(b.degree_range(v).1),
            std::cmp::Reverse(v),
        )
    }) else {
        return Some(LaurentPolynomial::term(mono, content));
    };

    let (na, nb) = (max_norm(&a), max_norm(&b));
    let lead = |p: &LaurentPolynomial, n: &BigInt| n / p.leading_term().expect("nonzero").1.abs();
    let by_norm: BigInt = 2 * na.clone().min(nb.clone()) + 2;
    let by_lead: BigInt = 2 * lead(&a, &na).min(lead(&b, &nb)) + 2;
    let mut xi = by_norm.max(by_lead);
    for _ in 0..HEURISTIC_ATTEMPTS {
        let (ea, eb) = (eval_at(&a, x, &xi), eval_at(&b, x, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            let h = heuristic_gcd(&ea, &eb)?;
            let cand = interpolate(&h, x, &xi);
            let cand = cand.mul_monomial(&cand.monomial_content().inv());
            let c = cand.integer_content();
            if !c.is_zero() {
                let cand = cand.div_integer(&c).expect("content divides");
                if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(positive(cand.scale(&content).mul_monomial(&mono)));
                }
            }
        }
        xi = &xi * 73794 * xi.nth_root(4) / 27011;
    }
    None
}

fn term_gcd(m: &Monomial, c: &BigInt, other: &LaurentPolynomial) -> LaurentPolynomial {
    let coeff = c.gcd(&other.integer_content());
    let mono = other.monomial_content().gcd(m);
    LaurentPolynomial::term(mono, coeff)
}

/// A variable present in both inputs, preferring the smallest degree.
fn main_variable(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<Variable> {
    let va = a.variables();
    let vb = b.variables();
    va.intersection(&vb)
        .copied()
        .min_by_key(|&v| (a.degree_range(v).1.max(b.degree_range(v).1), v))
}

/// GCD of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in(p: &LaurentPolynomial, x: Variable) -> LaurentPolynomial {
    let coeffs = p.coefficients_in(x);
    let mut acc = LaurentPolynomial::zero();
    // Smallest coefficients first keeps the recursive gcds cheap.
    let mut ordered: Vec<&LaurentPolynomial> = coeffs.values().collect();
    ordered.sort_by_key(|c| c.len());
    for c in ordered {
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &LaurentPolynomial, x: Variable) -> LaurentPolynomial {
    let c = content_in(p, x);
    positive(p.div_exact(&c).expect("content divides"))
}

fn degree_in(p: &LaurentPolynomial, x: Variable) -> i32 {
    p.degree_range(x).1
}

/// Pseudo-remainder of `a` by `b` as polynomials in `x`.
fn pseudo_remainder(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    x: Variable,
) -> LaurentPolynomial {
    let db = degree_in(b, x);
    let b_coeffs = b.coefficients_in(x);
    let lc_b = b_coeffs[&db].clone();
    let mut rem = a.clone();
    loop {
        if rem.is_zero() {
            return rem;
        }
        let dr = degree_in(&rem, x);
        if dr < db {
            return rem;
        }
        let lc_r = rem
            .coefficients_in(x)
            .remove(&dr)
            .expect("leading coefficient");
        let shift = Monomial::var_pow(x, dr - db);
        rem = &rem * &lc_b - (b * &lc_r).mul_monomial(&shift);
    }
}

/// GCD of two polynomials that are primitive with respect to `x`.
fn primitive_prs(a: LaurentPolynomial, b: LaurentPolynomial, x: Variable) -> LaurentPolynomial {
    let (mut f, mut g) = if degree_in(&a, x) >= degree_in(&b, x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if degree_in(&g, x) == 0 {
            // g is x-free and primitive in x, hence a unit up to sign.
            return LaurentPolynomial::one();
        }
        // Quick exit when g already divides f.
        if f.div_exact(&g).is_some() {
            return positive(g);
        }
        let r = pseudo_remainder(&f, &g, x);
        if r.is_zero() {
            return positive(g);
        }
        f = g;
        g = primitive_part(&r, x);
    }
}

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An indeterminate of the ground ring. The derived order is the global
/// variable order `u1 < u2 < ... < rho < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// `u_i`, 1-based.
    U(u16),
    Rho,
    Q,
}

impl Variable {
    pub fn u(i: usize) -> Self {
        assert!(i >= 1 && i <= u16::MAX as usize, "u-index {i} out of range");
        Variable::U(i as u16)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::U(i) => write!(f, "u{i}"),
            Variable::Rho => f.write_str("rho"),
            Variable::Q => f.write_str("q"),
        }
    }
}

type Exponents = SmallVec<[(Variable, i32); 6]>;

/// A Laurent monomial: sparse exponent list sorted by variable, with no zero
/// exponents stored.
///
/// `Ord` is graded lexicographic: total degree first, then the exponent of
/// the earliest variable (`u1`, then `u2`, ...) decides.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        let mut exps = Exponents::new();
        if e != 0 {
            exps.push((v, e));
        }
        Monomial { exps }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, i32)>) -> Self {
        pairs
            .into_iter()
            .fold(Monomial::one(), |m, (v, e)| m.mul(&Monomial::var_pow(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e > 0)
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let mut exps = Exponents::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, sign * eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea + sign * eb)
                    }
                },
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, sign * eb)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                exps.push(next);
            }
        }
        Monomial { exps }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    /// Laurent quotient; always exists.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// Whether `other` divides `self` inside the polynomial (nonnegative
    /// exponent) monoid.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.exps.iter().all(|&(v, e)| self.exponent(v) >= e)
    }

    /// Componentwise minimum of exponents (missing variables count as 0).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let vars = self.exps.iter().chain(other.exps.iter()).map(|&(v, _)| v);
        Monomial::from_pairs(
            vars.collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .map(|v| (v, self.exponent(v).min(other.exponent(v)))),
        )
    }

    /// Replaces `u_i` by `u_{perm(i)}`.
    pub fn permute_u(&self, perm: impl Fn(u16) -> u16) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| match v {
            Variable::U(i) => (Variable::U(perm(i)), e),
            other => (other, e),
        }))
    }

    /// Removes variable `v`, returning its exponent and the remaining factor.
    pub fn split_off(&self, v: Variable) -> (i32, Monomial) {
        let e = self.exponent(v);
        let rest = Monomial {
            exps: self.exps.iter().copied().filter(|&(w, _)| w != v).collect(),
        };
        (e, rest)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Walk the merged variable list from u1 upward; the first
            // differing exponent decides.
            let (a, b) = (&self.exps, &other.exps);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(&(_, ea)), None) => return ea.cmp(&0),
                    (None, Some(&(_, eb))) => return 0.cmp(&eb),
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return ea.cmp(&0),
                        Ordering::Greater => return 0.cmp(&eb),
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> Monomial {
        Monomial::var(Variable::u(i))
    }

    #[test]
    fn variable_order_is_fixed() {
        assert!(Variable::u(1) < Variable::u(2));
        assert!(Variable::u(40) < Variable::Rho);
        assert!(Variable::Rho < Variable::Q);
    }

    #[test]
    fn multiplication_drops_zero_exponents() {
        let m = u(1).mul(&Monomial::var_pow(Variable::u(1), -1));
        assert!(m.is_one());
        let m = u(2).mul(&u(1)).mul(&Monomial::var(Variable::Q));
        assert_eq!(m.to_string(), "u1*u2*q");
    }

    #[test]
    fn graded_lex() {
        // degree dominates
        assert!(u(2).pow(2) > u(1));
        // same degree: larger u1 exponent wins
        assert!(u(1).pow(2) > u(1).mul(&u(2)));
        assert!(u(1).mul(&u(2)) > u(2).pow(2));
        assert!(u(1) > Monomial::var(Variable::Q));
        assert!(Monomial::var(Variable::Q) > Monomial::one());
        assert!(Monomial::one() > Monomial::var_pow(Variable::Q, -1));
    }

    #[test]
    fn gcd_takes_minimum() {
        let a = Monomial::from_pairs([(Variable::u(1), 2), (Variable::Rho, -1)]);
        let b = Monomial::from_pairs([(Variable::u(1), 1), (Variable::Q, 3)]);
        assert_eq!(a.gcd(&b).to_string(), "u1*rho^-1");
    }
}

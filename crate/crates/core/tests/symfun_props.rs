use cbmw::exact::{LaurentPolynomial, Variable};
use cbmw::series::{expand_geometric_factor, Direction, GeometricFactor};
use cbmw::symfun::{
    complete_homogeneous_all, elementary_symmetric, elementary_symmetric_all, mu_table,
    signed_coeffs,
};

fn u(i: usize) -> LaurentPolynomial {
    LaurentPolynomial::var(Variable::u(i))
}

#[test]
fn mu_is_symmetric() {
    for r in 1..=4 {
        let mu = mu_table(r, 12).unwrap();
        for (a, m) in mu.as_slice().iter().enumerate() {
            for i in 1..=r {
                for j in i + 1..=r {
                    assert_eq!(&m.swap_u(i, j), m, "r = {r}, a = {a}, ({i} {j})");
                }
            }
            assert!(m.is_polynomial(), "mu_{a} = {m}");
        }
    }
}

#[test]
fn coefficients_expand_the_product() {
    // y is an adjoined symbol; q is free in these polynomials.
    let y = || LaurentPolynomial::var(Variable::Q);
    for r in 1..=4 {
        let a = signed_coeffs(r).unwrap();
        let lhs: LaurentPolynomial = a
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, c)| c * &y().pow(j as u32))
            .sum();
        let rhs: LaurentPolynomial = (1..=r).map(|i| &y() - &u(i)).product();
        assert_eq!(lhs, rhs, "r = {r}");
        assert!(a.get(r as i64).is_one());
        let prod: LaurentPolynomial = (1..=r).map(u).product();
        let sign = if r % 2 == 1 { -1 } else { 1 };
        assert_eq!(a.a0(), &(&LaurentPolynomial::from(sign) * &prod));
        assert!(a.get(-1).is_zero() && a.get(r as i64 + 1).is_zero());
    }
}

#[test]
fn mu_matches_product_of_g_factor_expansions() {
    let n = 10;
    for r in 1..=4 {
        let g = (1..=r)
            .map(|l| expand_geometric_factor(GeometricFactor::G(l), Direction::Ascending, n))
            .reduce(|a, b| a.mul(&b).unwrap())
            .unwrap();
        let mu = mu_table(r, n).unwrap();
        for a in 0..=n {
            assert_eq!(
                g.coeff(a).unwrap().as_laurent_polynomial(),
                Some(&mu.as_slice()[a]),
                "r = {r}, a = {a}"
            );
        }
    }
}

#[test]
fn elementary_and_complete_oracles() {
    // r = 3 by hand
    let e = elementary_symmetric_all(3);
    assert_eq!(e[0], LaurentPolynomial::one());
    assert_eq!(e[1], &(&u(1) + &u(2)) + &u(3));
    assert_eq!(
        e[2],
        &(&(&u(1) * &u(2)) + &(&u(1) * &u(3))) + &(&u(2) * &u(3))
    );
    assert_eq!(e[3], &(&u(1) * &u(2)) * &u(3));
    assert_eq!(elementary_symmetric(3, 2).unwrap(), e[2]);
    assert!(elementary_symmetric(3, 4).map_or(true, |p| p.is_zero()));

    // h_2(u1, u2) = u1^2 + u1 u2 + u2^2
    let h = complete_homogeneous_all(2, 2);
    assert_eq!(h[2], "u1^2 + u1*u2 + u2^2".parse().unwrap());
}

#[test]
fn rank_one_mu_closed_form() {
    // G(t) = (t - u)/(t u - 1) = (u - t) sum u^k t^k
    let mu = mu_table(1, 6).unwrap();
    let u1 = Variable::u(1);
    assert_eq!(mu.as_slice()[0], u(1));
    for a in 1..=6 {
        let expected =
            &LaurentPolynomial::var_pow(u1, a + 1) - &LaurentPolynomial::var_pow(u1, a - 1);
        assert_eq!(mu.as_slice()[a as usize], expected);
    }
    assert!(mu.get(-1).is_zero());
}

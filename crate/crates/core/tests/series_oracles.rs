//! Series checked against Bernoulli-number expansions computed from scratch,
//! and the a_k sequence against numerical quadrature.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use torsion_core::rat::{factorial, int, rat};
use torsion_core::series::{a_k, exp_linear, ps_e, ps_f, ps_f_minus, ps_td, ps_td_dual, Series};
use torsion_core::Rat;

const ORDER: usize = 12;

fn binom(n: usize, k: usize) -> Rat {
    Rat::from_integer(factorial(n) / (factorial(k) * factorial(n - k)))
}

/// `B_0..=B_n` with `B_1 = −1/2`, from `Σ_{j ≤ m} C(m+1, j) B_j = 0`.
fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b = vec![Rat::one()];
    for m in 1..=n {
        let s: Rat = (0..m).map(|j| binom(m + 1, j) * &b[j]).sum();
        b.push(-s / int(m as i64 + 1));
    }
    b
}

fn fact(k: usize) -> Rat {
    Rat::from_integer(factorial(k))
}

/// `x/(1 − e^{−x}) = Σ B_k^+ x^k / k!` with `B_1^+ = +1/2`.
fn td_oracle(order: usize) -> Vec<Rat> {
    let b = bernoulli(order);
    (0..=order)
        .map(|k| {
            let bk = if k == 1 { -b[1].clone() } else { b[k].clone() };
            bk / fact(k)
        })
        .collect()
}

/// `E` has coefficient `B_{2k}/(2k−1)!` at `x^{2k−2}` (from `E = (d/dy)(y coth y)/(4y)`, `y = x/2`).
fn e_oracle(order: usize) -> Vec<Rat> {
    let b = bernoulli(order + 2);
    (0..=order)
        .map(|j| if j % 2 == 1 { Rat::zero() } else { b[j + 2].clone() / fact(j + 1) })
        .collect()
}

fn padded(s: &Series, order: usize) -> Vec<Rat> {
    (0..=order).map(|k| s.coeff(k)).collect()
}

#[test]
fn todd_matches_bernoulli() {
    assert_eq!(padded(&ps_td(ORDER), ORDER), td_oracle(ORDER));
}

#[test]
fn todd_frozen_values() {
    let td = ps_td(ORDER);
    assert_eq!(td.coeff(2), rat(1, 12));
    assert_eq!(td.coeff(4), rat(-1, 720));
    assert_eq!(td.coeff(6), rat(1, 30240));
    assert_eq!(td.coeff(8), rat(-1, 1209600));
    assert_eq!(td.coeff(10), rat(1, 47900160));
    assert_eq!(td.coeff(12), Rat::new(BigInt::from(-691), BigInt::from(1307674368000i64)));
}

#[test]
fn todd_identities_through_order_12() {
    for order in 0..=ORDER {
        let td = ps_td(order);
        let one_minus = Series::one(order).sub(&exp_linear(&int(-1), order));
        let lhs = td.mul(&one_minus);
        assert_eq!(padded(&lhs, order), padded(&Series::x(order), order), "order {order}");
        assert_eq!(ps_td_dual(order), td.reflect());
        assert_eq!(ps_td_dual(order), td.mul(&exp_linear(&int(-1), order)));
    }
}

#[test]
fn e_matches_bernoulli_and_f_minus() {
    for order in 0..=ORDER {
        let e = ps_e(order);
        assert_eq!(padded(&e, order), e_oracle(order), "order {order}");
        let td = ps_td(order);
        let via_f = ps_f_minus(order).mul(&td).mul(&td.reflect());
        assert_eq!(padded(&via_f, order), padded(&e, order));
        assert!(e.is_even());
        assert!(ps_f_minus(order).is_even());
    }
    assert_eq!(ps_e(ORDER).coeff(0), rat(1, 6));
    assert_eq!(ps_e(ORDER).coeff(4), rat(1, 5040));
}

#[test]
fn f_is_shifted_inverse_todd() {
    let order = ORDER;
    let inv = ps_td(order + 1).inverse().unwrap();
    let f = ps_f(order);
    for k in 0..=order {
        assert_eq!(f.coeff(k), inv.coeff(k + 1));
    }
    assert_eq!(f.coeff(0), rat(-1, 2));
    assert_eq!(f.coeff(1), rat(1, 6));
}

/// `−∫_0^∞ log ρ / (1+ρ)^{k+1} dρ` via `ρ = e^x` and the trapezoid rule.
fn a_k_quadrature(k: usize) -> f64 {
    let (lo, hi, n) = (-60.0f64, 60.0f64, 240_000usize);
    let h = (hi - lo) / n as f64;
    let f = |x: f64| {
        let e = (-x.abs()).exp();
        // x e^x / (1+e^x)^{k+1}, written to avoid overflow for large |x|
        if x >= 0.0 {
            x * e.powi(k as i32) / (1.0 + e).powi(k as i32 + 1)
        } else {
            x * e / (1.0 + e).powi(k as i32 + 1)
        }
    };
    let interior: f64 = (1..n).map(|i| f(lo + i as f64 * h)).sum();
    -h * (interior + 0.5 * (f(lo) + f(hi)))
}

#[test]
fn a_k_quadrature_oracle() {
    for k in 1..=6 {
        let exact = torsion_core::rat::to_f64(&a_k(k));
        let quad = a_k_quadrature(k);
        assert!((exact - quad).abs() < 1e-6, "k = {k}: {exact} vs {quad}");
    }
    assert_eq!(a_k(1), int(0));
    assert_eq!(a_k(4), rat(11, 24));
    assert_eq!(a_k(6), rat(137, 360));
}

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperdecomp::exactla::{charpoly, determinant_int, RationalMatrix};
use hyperdecomp::johnson::{IsolationStatus, JohnsonParams};
use hyperdecomp::poly::Poly;
use hyperdecomp::rational::sign;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn faddeev_leverrier(a: &RationalMatrix) -> Poly {
    let n = a.n();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = RationalMatrix::from_fn(n, |_, _| BigRational::zero());
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            let d = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, d);
        }
        let tr = a.mul(&next).trace();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        mk = next;
    }
    Poly::new(c)
}

fn theta_power_product(p: &JohnsonParams, shift: i64) -> Poly {
    let mut out = Poly::one();
    for (th, m) in p.thetas().iter().zip(p.multiplicities()) {
        let e = (m + shift).to_u64().unwrap();
        out = &out * &Poly::linear(&BigRational::from_integer(th.clone())).pow(e);
    }
    out
}

#[test]
fn hessenberg_matches_faddeev_leverrier_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=8 {
        for _ in 0..4 {
            let a = RationalMatrix::from_fn(n, |_, _| q(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            assert_eq!(charpoly(&a).unwrap(), faddeev_leverrier(&a), "n = {n}");
        }
    }
}

#[test]
fn charpoly_of_m_is_product_over_spectrum() {
    let p = JohnsonParams::new(2, 3, 6).unwrap();
    let m = p.build_m().unwrap().to_rational();
    let expected = theta_power_product(&p, 0);
    assert_eq!(faddeev_leverrier(&m), expected);
    assert_eq!(charpoly(&m).unwrap(), expected);
}

#[test]
fn m1_charpoly_factors_for_small_parameters() {
    for (t, k, v) in [
        (2, 3, 5),
        (2, 3, 6),
        (2, 3, 8),
        (2, 4, 8),
        (2, 4, 9),
        (3, 4, 6),
        (3, 4, 7),
    ] {
        let p = JohnsonParams::new(t, k, v).unwrap();
        let m1 = p.build_m1().unwrap();
        assert!(m1.n() <= 40);
        let rhs = &p.charpoly_r().unwrap() * &theta_power_product(&p, -1);
        assert_eq!(charpoly(&m1.to_rational()).unwrap(), rhs, "({t},{k},{v})");
    }
}

#[test]
fn det_m1_equals_det_m() {
    let p = JohnsonParams::new(2, 3, 9).unwrap();
    let det_m1 = determinant_int(&p.build_m1().unwrap()).unwrap();
    let det_m = determinant_int(&p.build_m().unwrap()).unwrap();
    let spectral: BigInt = p
        .thetas()
        .iter()
        .zip(p.multiplicities())
        .map(|(th, m)| th.pow(m.to_u32().unwrap()))
        .product();
    assert_eq!(det_m1, spectral);
    assert_eq!(det_m, spectral);

    // det R = theta_0 theta_1 theta_2 = 1260, and the isolated roots multiply to it.
    let r = p.charpoly_r().unwrap();
    assert_eq!(-r.coeff(0), q(1260, 1));
    let lower: BigInt = p
        .thetas()
        .iter()
        .zip(p.multiplicities())
        .map(|(th, m)| th.pow(m.to_u32().unwrap() - 1))
        .product();
    assert_eq!(BigRational::new(det_m1, lower), -r.coeff(0));
    let iso = p.isolate_r_roots();
    let mid: f64 = iso
        .intervals
        .iter()
        .map(|(a, b)| ((a + b) / q(2, 1)).to_f64().unwrap())
        .product();
    assert!((mid / 1260.0 - 1.0).abs() < 2e-3, "{mid}");
}

/// Signs of the table's `det(R - xI)` row at theta_t/2, theta_t, ..., theta_0, +inf.
fn table_chi_r_row(t: usize) -> Vec<i8> {
    let mut row = vec![1i8];
    for i in 0..t {
        row.push(if i % 2 == 0 { -1 } else { 1 });
    }
    row.push(*row.last().unwrap());
    row.push(if t % 2 == 1 { 1 } else { -1 });
    row
}

#[test]
fn chi_r_sign_pattern_matches_table() {
    for (t, k, vs) in [
        (2, 3, 6..=30),
        (2, 5, 10..=30),
        (3, 4, 8..=20),
        (3, 6, 12..=20),
        (4, 5, 10..=18),
    ] {
        let flip: i8 = if (t + 1) % 2 == 0 { 1 } else { -1 };
        let expected: Vec<i8> = table_chi_r_row(t).into_iter().map(|s| s * flip).collect();
        for v in vs {
            let p = JohnsonParams::new(t, k, v).unwrap();
            assert_eq!(p.r_sign_pattern().unwrap(), expected, "({t},{k},{v})");
        }
    }
}

#[test]
fn psi_one_sided_signs_near_eigenvalues() {
    let eps = q(1, 1_000_000_000);
    for (t, k, v) in [(2, 3, 9), (2, 4, 12), (3, 4, 10), (3, 5, 14)] {
        let p = JohnsonParams::new(t, k, v).unwrap();
        let th = p.thetas();
        let half = BigRational::new(th[t].clone(), BigInt::from(2));
        assert!(p.psi(&half).unwrap().is_positive());
        for (j, theta) in th.iter().enumerate() {
            let x = BigRational::from_integer(theta.clone());
            let below = sign(&p.psi(&(&x - &eps)).unwrap());
            let above = sign(&p.psi(&(&x + &eps)).unwrap());
            let want = if j == 0 { (1, -1) } else { (-1, 1) };
            assert_eq!((below, above), want, "({t},{k},{v}) j = {j}");
            assert!(p.psi(&x).is_err());
        }
        let far = BigRational::from_integer(&th[0] * 1000);
        assert!(p.psi(&far).unwrap().is_positive());
    }
}

#[test]
fn float_eigenvalues_agree_with_exact_spectrum() {
    let p = JohnsonParams::new(2, 3, 9).unwrap();
    let m = p.build_m().unwrap();
    let n = m.n();
    let f = |i, j| m.get(i, j).to_f64().unwrap();
    let dense = DMatrix::from_fn(n, n, f);
    let mut eig: Vec<f64> = dense.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut expected = Vec::new();
    for (th, mult) in p.thetas().iter().zip(p.multiplicities()) {
        expected.extend(std::iter::repeat_n(th.to_f64().unwrap(), mult.to_usize().unwrap()));
    }
    for (a, b) in eig.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    // Inverse iteration on M1 from each bracket midpoint lands on a float
    // eigenvalue inside that bracket.
    let m1 = p.build_m1().unwrap();
    let iso = p.isolate_r_roots();
    assert_eq!(iso.status, IsolationStatus::Ordered);
    for (a, b) in &iso.intervals {
        let (a, b) = (a.to_f64().unwrap(), b.to_f64().unwrap());
        let sigma = (a + b) / 2.0;
        let shifted = DMatrix::from_fn(n, n, |i, j| {
            m1.get(i, j).to_f64().unwrap() - if i == j { sigma } else { 0.0 }
        });
        let lu = shifted.lu();
        let mut x = DVector::from_element(n, 1.0);
        let mut lambda = sigma;
        for _ in 0..50 {
            let y = lu.solve(&x).unwrap();
            let i = y.iamax();
            lambda = sigma + x[i] / y[i];
            x = &y / y.norm();
        }
        assert!(a - 1e-6 <= lambda && lambda <= b + 1e-6, "{lambda} outside [{a}, {b}]");
    }
}

#[test]
fn isolation_intervals_are_certified_brackets() {
    for (t, k, v) in [(2, 3, 5), (2, 3, 9), (2, 4, 20), (3, 4, 9), (3, 6, 18), (4, 6, 14)] {
        let p = JohnsonParams::new(t, k, v).unwrap();
        let iso = p.isolate_r_roots();
        if iso.status != IsolationStatus::Ordered {
            continue;
        }
        let r = p.charpoly_r().unwrap();
        let width = BigRational::new(p.theta(t).unwrap(), BigInt::from(1000));
        assert_eq!(iso.intervals.len(), t + 1);
        for (i, (a, b)) in iso.intervals.iter().enumerate() {
            assert!(a < b && b - a <= width);
            assert_eq!(sign(&r.eval(a)) * sign(&r.eval(b)), -1, "({t},{k},{v}) interval {i}");
            if i > 0 {
                assert!(iso.intervals[i - 1].1 <= *a);
            }
        }
    }
}

#[test]
fn smallest_case_status_is_recorded() {
    // At (2,3,5) the eigenvalues are 9 > 4 > 1 and the isolation succeeds.
    let p = JohnsonParams::new(2, 3, 5).unwrap();
    assert_eq!(p.thetas(), [9, 4, 1].map(BigInt::from).to_vec());
    assert_eq!(p.isolate_r_roots().status, IsolationStatus::Ordered);
}

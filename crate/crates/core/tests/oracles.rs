//! Independent checks of the derived values.
//!
//! Every oracle here builds its operators by hand, as numeric matrices in a
//! standard basis or from a recurrence, instead of going through the
//! symbolic operator algebra used by the scenarios.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use obstructo::reps::{solve_quadratic_element, Mat};
use obstructo::scalars::Gq;

type M = Mat<Complex64>;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn scale(m: &M, z: Complex64) -> M {
    m.scale(&z)
}

/// `(i/hbar)[x, y]`.
fn bracket(x: &M, y: &M, hbar: f64) -> M {
    scale(&x.commutator(y), I / hbar)
}

fn half_anti(x: &M, y: &M) -> M {
    scale(&x.anticommutator(y), c(0.5))
}

/// Orthonormal oscillator basis: `Q = sqrt(hbar/2)(a + a*)`, `P = i
/// sqrt(hbar/2)(a* - a)`.
fn oscillator(n: usize, hbar: f64) -> (M, M) {
    let a = Mat::from_fn(n, |r, k| {
        if k == r + 1 {
            c((k as f64).sqrt())
        } else {
            c(0.0)
        }
    });
    let ad = Mat::from_fn(n, |r, k| *a.get(k, r));
    let s = (hbar / 2.0).sqrt();
    (scale(&a.add(&ad), c(s)), scale(&ad.sub(&a), I * s))
}

/// Largest deviation from `target` on columns `0..cols`.
fn dev(x: &M, target: &M, cols: usize) -> f64 {
    x.max_abs_diff(target, 0..x.dim(), 0..cols)
}

#[test]
fn plane_residuals_in_oscillator_basis() {
    let n = 30;
    for hbar in [1.0, 0.5, 2.0] {
        let (q, p) = oscillator(n, hbar);
        let id = Mat::identity(n);
        let (q2, p2) = (q.mul(&q), p.mul(&p));
        let qp = half_anti(&q, &p);
        // products of up to six ladder factors stay exact on these columns
        let cols = n - 6;

        let anti = qp.mul(&qp).sub(&half_anti(&q2, &p2));
        assert!(dev(&anti, &scale(&id, c(0.75 * hbar * hbar)), cols) < 1e-9);

        let (q3, p3) = (q2.mul(&q), p2.mul(&p));
        let qp2 = half_anti(&q, &p2);
        let q2p = half_anti(&q2, &p);
        let lhs = scale(&bracket(&p3, &q3, hbar), c(1.0 / 9.0));
        let rhs = scale(&bracket(&qp2, &q2p, hbar), c(1.0 / 3.0));
        let cubic = lhs.sub(&rhs);
        assert!(
            dev(&cubic, &scale(&id, c(-hbar * hbar / 3.0)), cols) < 1e-9,
            "hbar = {hbar}"
        );
    }
}

/// Hermitian spin matrices for `j = twice/2`.
fn spin(twice: u32, hbar: f64) -> [M; 3] {
    let n = twice as usize + 1;
    let j = twice as f64 / 2.0;
    let m = |a: usize| j - a as f64;
    let plus = Mat::from_fn(n, |r, k| {
        if r + 1 == k {
            c(hbar * ((j - m(k)) * (j + m(k) + 1.0)).sqrt())
        } else {
            c(0.0)
        }
    });
    let minus = Mat::from_fn(n, |r, k| plus.get(k, r).conj());
    let s3 = Mat::from_fn(n, |r, k| if r == k { c(hbar * m(k)) } else { c(0.0) });
    [
        scale(&plus.add(&minus), c(0.5)),
        scale(&plus.sub(&minus), Complex64::new(0.0, -0.5)),
        s3,
    ]
}

/// `<x, y> / <y, y>` in the Frobenius inner product, and the residual norm.
fn project(x: &M, y: &M) -> (Complex64, f64) {
    let n = x.dim();
    let mut num = c(0.0);
    let mut den = 0.0;
    for r in 0..n {
        for k in 0..n {
            num += y.get(r, k).conj() * x.get(r, k);
            den += y.get(r, k).norm_sqr();
        }
    }
    let lambda = num / den;
    let off = x.sub(&scale(y, lambda)).max_abs();
    (lambda, off)
}

#[test]
fn sphere_constraints_in_hermitian_spin_matrices() {
    let (hbar, a, cc) = (1.3, 0.7, 0.4);
    for twice in 1..=5u32 {
        let j = twice as f64 / 2.0;
        let [s1, s2, s3] = spin(twice, hbar);
        let n = s1.dim();
        let id = Mat::identity(n);
        let sq = |x: &M| scale(&x.mul(x), c(a)).add(&scale(&id, c(cc)));
        let prod = |x: &M, y: &M| scale(&x.anticommutator(y), c(a / 2.0));

        // s^2 S3 = {S1 S2, S1^2 - S2^2} - {S3 S1, S2 S3}
        let x = bracket(&prod(&s1, &s2), &sq(&s1).sub(&sq(&s2)), hbar).sub(&bracket(
            &prod(&s3, &s1),
            &prod(&s2, &s3),
            hbar,
        ));
        let (lambda, off) = project(&x, &s3);
        let want = a * a * hbar * hbar * (j * (j + 1.0) - 0.75);
        assert!(
            off < 1e-9 * (1.0 + want.abs()),
            "j = {j}: not a multiple of S3"
        );
        assert!((lambda - want).norm() < 1e-9, "j = {j}: {lambda} vs {want}");

        if twice > 1 {
            // 2 s^2 Q(S2 S3) = {S2^2, {S1 S2, S1 S3}} - (3/4){S1^2, {S1^2, S2 S3}}
            let inner = bracket(&prod(&s1, &s2), &prod(&s1, &s3), hbar);
            let y = bracket(&sq(&s2), &inner, hbar);
            let inner = bracket(&sq(&s1), &prod(&s2, &s3), hbar);
            let z = bracket(&sq(&s1), &inner, hbar);
            let rhs = y.sub(&scale(&z, c(0.75)));
            let (mu, off) = project(&rhs, &scale(&prod(&s2, &s3), c(2.0)));
            let want = a * a * hbar * hbar * (j * (j + 1.0) - 2.25);
            assert!(
                off < 1e-9 * (1.0 + want.abs()),
                "j = {j}: second relation off {off}"
            );
            assert!((mu - want).norm() < 1e-9, "j = {j}: {mu} vs {want}");
        }
    }
}

#[test]
fn cylinder_residual_on_fourier_modes() {
    let modes = 12usize;
    let dim = 2 * modes + 1;
    for (hbar, nu) in [(1.0, 0.0), (0.7, 0.3)] {
        let l = Mat::from_fn(dim, |r, k| {
            if r == k {
                c(hbar * (k as f64 - modes as f64 + nu))
            } else {
                c(0.0)
            }
        });
        // column k holds mode n = k - modes; e^{i theta} raises n
        let up = Mat::from_fn(dim, |r, k| if r == k + 1 { c(1.0) } else { c(0.0) });
        let down = Mat::from_fn(dim, |r, k| if k == r + 1 { c(1.0) } else { c(0.0) });
        let cos = scale(&up.add(&down), c(0.5));
        let sin = scale(&up.sub(&down), Complex64::new(0.0, -0.5));
        let ih = I * hbar;
        let l2 = l.mul(&l);
        let l2s = sin
            .mul(&l2)
            .sub(&scale(&cos.mul(&l), ih))
            .add(&scale(&sin, c(hbar * hbar / 4.0)));
        let l2c = cos
            .mul(&l2)
            .add(&scale(&sin.mul(&l), ih))
            .add(&scale(&cos, c(hbar * hbar / 4.0)));
        let lhs = scale(&bracket(&bracket(&l2s, &l2c, hbar), &cos, hbar), c(2.0));
        let rhs = scale(&l2s, c(12.0));
        let res = lhs.sub(&rhs);
        let target = scale(&sin, c(2.0 * hbar * hbar));
        // three shift factors reach three modes from the edge
        let inner = 3..dim - 3;
        let err = res.max_abs_diff(&target, 0..dim, inner);
        assert!(err < 1e-8, "hbar = {hbar}, nu = {nu}: {err}");
    }
}

/// `x H_k = (1/2) H_{k+1} + k H_{k-1}` for the Hermite polynomials, so the
/// coefficients of `x^2 H_k` are `1/4` on `H_{k+2}`, `k + 1/2` on `H_k` and
/// `k (k - 1)` on `H_{k-2}`.
#[test]
fn quadratic_element_matches_hermite_recurrence() {
    let n = 12;
    let q = solve_quadratic_element(n).unwrap();
    let rat = |a: i64, b: i64| Gq::real(BigRational::new(a.into(), b.into()));
    let x_times = |coeffs: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); coeffs.len() + 1];
        for (k, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out[k + 1] += a * BigRational::new(1.into(), 2.into());
            if k > 0 {
                out[k - 1] += a * BigRational::from_integer((k as i64).into());
            }
        }
        out
    };
    for k in 0..=q.interior {
        let mut h = vec![BigRational::zero(); k + 1];
        h[k] = BigRational::one();
        let x2h = x_times(&x_times(&h));
        for (j, v) in x2h.iter().enumerate() {
            if j >= n {
                continue;
            }
            let got = q.entry(k, j);
            assert_eq!(got, &Gq::real(v.clone()), "E_{{{k},{j}}}");
        }
    }
    assert_eq!(q.entry(0, 0), &rat(1, 2));
}

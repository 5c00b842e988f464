//! Hermite polynomials, Hermite functions and Gaussian moments.

use super::real::{Precision, Real};

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite_poly<T: Real>(n: usize, x: &T) -> T {
    let mut prev = x.int(1);
    if n == 0 {
        return prev;
    }
    let two_x = x.clone() * &x.int(2);
    let mut cur = two_x.clone();
    for k in 1..n {
        let next = two_x.clone() * &cur - prev * &x.int(2 * k as i64);
        prev = cur;
        cur = next;
    }
    cur
}

/// Orthonormal polynomial part `pi^{-1/4} (2^n n!)^{-1/2} H_n(xi)` for all `n <= nmax`.
///
/// No exponential factor is applied. Values grow like `exp(xi^2/2)`, so this
/// is only suitable where the Gaussian weight is handled separately (quadrature).
pub fn normalized_hermite_polys<T: Real>(nmax: usize, xi: &T) -> Vec<T> {
    let quarter_pi = T::pi(xi.precision()).sqrt().sqrt();
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(xi.int(1) / &quarter_pi);
    if nmax == 0 {
        return out;
    }
    out.push(out[0].clone() * &xi.int(2).sqrt() * xi);
    for k in 1..nmax {
        let kk = xi.int(k as i64);
        let a = (xi.int(2) / &(kk.clone() + &xi.int(1))).sqrt();
        let b = (kk.clone() / &(kk + &xi.int(1))).sqrt();
        let next = a * xi * &out[k] - b * &out[k - 1];
        out.push(next);
    }
    out
}

/// Hermite function `phi_n^{(l)}(x)` of an oscillator with length `scale`.
///
/// The polynomial part runs through the normalized recurrence with periodic
/// rescaling; the accumulated scale, the Gaussian and the normalization are
/// combined in the log domain and the sign is carried separately, so neither
/// `2^n n!` nor `exp(-x^2/2l^2)` overflows or underflows on its own.
pub fn hermite_function<T: Real>(n: usize, scale: &T, x: &T) -> T {
    let (sign, log_abs) = hermite_function_log(n, scale, x);
    if sign == 0 {
        return x.int(0);
    }
    let v = log_abs.exp();
    if sign < 0 {
        -v
    } else {
        v
    }
}

/// `(sign, ln|phi_n^{(l)}(x)|)`; `sign == 0` for an exact zero.
pub fn hermite_function_log<T: Real>(n: usize, scale: &T, x: &T) -> (i8, T) {
    let xi = x.clone() / scale;
    let one = x.int(1);
    // 2^400 is far inside the f64 range and keeps the recurrence finite.
    let big = x.lit(2f64.powi(400));
    let log_big = x.lit(400.0 * std::f64::consts::LN_2);
    let mut log_scale = x.int(0);
    let mut prev = x.int(0);
    let mut cur = one.clone();
    for k in 0..n {
        let kk = x.int(k as i64);
        let a = (x.int(2) / &(kk.clone() + &one)).sqrt();
        let b = (kk.clone() / &(kk + &one)).sqrt();
        let next = a * &xi * &cur - b * &prev;
        prev = cur;
        cur = next;
        if cur.abs() > big {
            cur /= &big;
            prev /= &big;
            log_scale += &log_big;
        }
    }
    if cur.is_zero() {
        return (0, x.int(0));
    }
    let sign = if cur.is_sign_negative() { -1 } else { 1 };
    let prec = x.precision();
    let log_norm = -(T::pi(prec).ln() / &x.int(4)) - scale.ln() / &x.int(2);
    let log_abs = cur.abs().ln() + &log_scale + &log_norm - xi.clone() * &xi / &x.int(2);
    (sign, log_abs)
}

/// `phi_n^{(l)}(x)` for all `n <= nmax` at one point (f64; intended for moderate `x`).
pub fn hermite_functions(nmax: usize, scale: f64, x: f64) -> Vec<f64> {
    let xi = x / scale;
    let g = (-0.5 * xi * xi).exp() / scale.sqrt();
    normalized_hermite_polys(nmax, &xi).into_iter().map(|p| p * g).collect()
}

/// `integral u^j exp(-u^2) du` over the real line.
pub fn gaussian_moment<T: Real>(j: usize, prec: Precision) -> T {
    if j % 2 == 1 {
        return T::zero(prec);
    }
    let mut m = T::pi(prec).sqrt();
    let half = T::from_f64(0.5, prec);
    for i in (2..=j).step_by(2) {
        m *= &(T::from_i64(i as i64 - 1, prec) * &half);
    }
    m
}

/// `(j-1)!! / 2^{j/2}` for even `j`, i.e. the moment divided by `sqrt(pi)`, exactly.
pub fn gaussian_moment_ratio(j: usize) -> rug::Rational {
    if j % 2 == 1 {
        return rug::Rational::new();
    }
    let mut r = rug::Rational::from(1);
    for i in (2..=j).step_by(2) {
        r *= rug::Rational::from((i as i64 - 1, 2));
    }
    r
}

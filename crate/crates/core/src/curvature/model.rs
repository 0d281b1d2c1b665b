//! Model functions `s_kappa`, `c_kappa` and the distortion coefficients
//! `sigma_kappa^{(t)}`.

use std::f64::consts::PI;

/// `sin(sqrt(k) th)/sqrt(k)`, `th`, or `sinh(sqrt(-k) th)/sqrt(-k)`.
pub fn s_kappa(kappa: f64, theta: f64) -> f64 {
    if kappa > 0.0 {
        let r = kappa.sqrt();
        (r * theta).sin() / r
    } else if kappa < 0.0 {
        let r = (-kappa).sqrt();
        (r * theta).sinh() / r
    } else {
        theta
    }
}

/// `cos(sqrt(k) th)` for `k >= 0`, `cosh(sqrt(-k) th)` for `k < 0`.
pub fn c_kappa(kappa: f64, theta: f64) -> f64 {
    if kappa >= 0.0 {
        (kappa.sqrt() * theta).cos()
    } else {
        ((-kappa).sqrt() * theta).cosh()
    }
}

/// `sigma_kappa^{(t)}(theta)`: `t` when `kappa theta^2 = 0`, `+inf` when
/// `kappa theta^2 >= pi^2`, and `s_kappa(t theta)/s_kappa(theta)` otherwise.
pub fn sigma(kappa: f64, t: f64, theta: f64) -> f64 {
    let k = kappa * theta * theta;
    if k == 0.0 {
        t
    } else if k >= PI * PI {
        f64::INFINITY
    } else {
        s_kappa(kappa, t * theta) / s_kappa(kappa, theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn branch_values() {
        assert_eq!(sigma(0.0, 0.3, 5.0), 0.3);
        assert_eq!(sigma(1.0, 0.5, 4.0), f64::INFINITY);
        assert_abs_diff_eq!(sigma(1.0, 0.5, PI / 2.0), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_eq!(s_kappa(0.0, 2.5), 2.5);
        assert_eq!(c_kappa(-3.0, 0.0), 1.0);
        assert_eq!(c_kappa(3.0, 0.0), 1.0);
    }

    #[test]
    fn monotone_in_kappa() {
        for t in [0.1, 0.5, 0.9] {
            for theta in [0.2, 1.0, 2.0] {
                let mut prev = f64::NEG_INFINITY;
                for k in -20..=20 {
                    let v = sigma(k as f64 * 0.1, t, theta);
                    assert!(v >= prev);
                    prev = v;
                }
            }
        }
    }
}

//! Square-lattice potential kernel and the exact harmonic-measure formula
//! built on it: for a finite set with at least two sites, the measure from
//! infinity is the normalized solution of Phi w = 1 where
//! Phi[i][j] = a(x_i - x_j).

use crate::lattice::{LatticeKind, Site};
use crate::setgeom::SiteSet;
use crate::{Error, Result};
use std::cell::RefCell;
use std::collections::HashMap;

thread_local! {
    static KERNEL_CACHE: RefCell<HashMap<(i32, i32), f64>> = RefCell::new(HashMap::new());
}

/// Potential kernel a(x) of the simple random walk on the square lattice:
/// a(0) = 0, harmonic off the origin with unit defect at the origin.
/// Evaluated by quadrature of the classical one-dimensional integral.
pub fn potential_kernel(dx: i32, dy: i32) -> f64 {
    let m = dx.unsigned_abs().min(dy.unsigned_abs()) as i32;
    let n = dx.unsigned_abs().max(dy.unsigned_abs()) as i32;
    if n == 0 {
        return 0.0;
    }
    if let Some(v) = KERNEL_CACHE.with(|c| c.borrow().get(&(m, n)).copied()) {
        return v;
    }
    let v = kernel_integral(m, n);
    KERNEL_CACHE.with(|c| c.borrow_mut().insert((m, n), v));
    v
}

fn kernel_integral(m: i32, n: i32) -> f64 {
    // a(m,n) = (2/pi) * int_0^pi [1 - e^{-n t(th)} cos(m th)] / sinh(t) dth,
    // cosh t = 2 - cos th. Quadratic mesh grading handles the th -> 0 end;
    // the cancellation-prone pieces use 2 sin^2, ln_1p and exp_m1 forms.
    let steps = 8000usize; // Simpson panels over u in [0,1]
    let f = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let th = std::f64::consts::PI * u * u;
        let jac = 2.0 * std::f64::consts::PI * u;
        let cm1 = 2.0 * (th / 2.0).sin().powi(2); // (2 - cos th) - 1
        let sinh_t = (cm1 * (cm1 + 2.0)).sqrt();
        if sinh_t == 0.0 {
            return 0.0;
        }
        let t = (cm1 + sinh_t).ln_1p(); // acosh(2 - cos th)
        let mth = m as f64 * th;
        // 1 - e^{-nt} cos(m th) = -expm1(-nt) cos(m th) + 2 sin^2(m th / 2)
        let num = -(-(n as f64) * t).exp_m1() * mth.cos() + 2.0 * (mth / 2.0).sin().powi(2);
        num / sinh_t * jac
    };
    let h = 1.0 / steps as f64;
    let mut acc = f(0.0) + f(1.0);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(k as f64 * h);
    }
    acc * h / 3.0 * 2.0 / std::f64::consts::PI
}

pub fn potential_kernel_site(x: Site, y: Site) -> f64 {
    potential_kernel(x.a - y.a, x.b - y.b)
}

/// Exact harmonic measure from infinity on the square lattice via the
/// potential-kernel linear system. Radius-free.
pub fn harmonic_measure_kernel(a: &SiteSet) -> Result<Vec<f64>> {
    if a.kind != LatticeKind::Square {
        return Err(Error::InvalidInput(
            "potential-kernel engine is square-lattice only".into(),
        ));
    }
    let v = a.to_vec();
    let k = v.len();
    if k == 0 {
        return Err(Error::InvalidInput("empty target set".into()));
    }
    if k == 1 {
        return Ok(vec![1.0]);
    }
    let mut phi = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            phi[i * k + j] = potential_kernel_site(v[i], v[j]);
        }
    }
    let w = solve_dense(&mut phi, k)?;
    let total: f64 = w.iter().sum();
    if total.abs() < 1e-300 {
        return Err(Error::Numeric("degenerate kernel system".into()));
    }
    let mut probs: Vec<f64> = w.iter().map(|x| (x / total).max(0.0)).collect();
    let s: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= s;
    }
    Ok(probs)
}

/// Solves Phi w = 1 with partial pivoting, in place.
fn solve_dense(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    let mut x = vec![1.0; n];
    let mut piv: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut best = col;
        let mut best_val = a[col * n + col].abs();
        for row in (col + 1)..n {
            let v = a[row * n + col].abs();
            if v > best_val {
                best = row;
                best_val = v;
            }
        }
        if best_val < 1e-14 {
            return Err(Error::Numeric("singular kernel matrix".into()));
        }
        if best != col {
            for k in 0..n {
                a.swap(col * n + k, best * n + k);
            }
            piv.swap(col, best);
            x.swap(col, best);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let f = a[row * n + col] / pivot;
            if f != 0.0 {
                for k in (col + 1)..n {
                    a[row * n + k] -= f * a[col * n + k];
                }
                x[row] -= f * x[col];
            }
        }
    }
    for i in (0..n).rev() {
        let mut acc = x[i];
        for k in (i + 1)..n {
            acc -= a[i * n + k] * x[k];
        }
        x[i] = acc / a[i * n + i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_known_values() {
        assert_eq!(potential_kernel(0, 0), 0.0);
        assert!((potential_kernel(1, 0) - 1.0).abs() < 1e-10);
        assert!((potential_kernel(0, 1) - 1.0).abs() < 1e-10);
        let pi = std::f64::consts::PI;
        assert!((potential_kernel(1, 1) - 4.0 / pi).abs() < 1e-10);
        assert!((potential_kernel(2, 0) - (4.0 - 8.0 / pi)).abs() < 1e-10);
        assert!((potential_kernel(2, 1) - (8.0 / pi - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn kernel_harmonic_away_from_origin() {
        for (x, y) in [(1, 0), (2, 1), (3, 3), (5, 0), (9, 4)] {
            let avg = (potential_kernel(x + 1, y)
                + potential_kernel(x - 1, y)
                + potential_kernel(x, y + 1)
                + potential_kernel(x, y - 1))
                / 4.0;
            assert!(
                (avg - potential_kernel(x, y)).abs() < 1e-9,
                "harmonicity at ({x},{y})"
            );
        }
        // Unit defect at the origin.
        let avg = (0..4)
            .map(|k| {
                let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][k];
                potential_kernel(dx, dy)
            })
            .sum::<f64>()
            / 4.0;
        assert!((avg - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernel_asymptotics() {
        // a(x) ~ (2/pi) ln|x| + (2 gamma + ln 8)/pi.
        let gamma = 0.577_215_664_901_532_9;
        let kappa = (2.0 * gamma + 8f64.ln()) / std::f64::consts::PI;
        for (x, y) in [(50, 0), (40, 30), (100, 100)] {
            let r = ((x * x + y * y) as f64).sqrt();
            let pred = 2.0 / std::f64::consts::PI * r.ln() + kappa;
            assert!(
                (potential_kernel(x, y) - pred).abs() < 1e-3,
                "asymptotics at ({x},{y})"
            );
        }
    }

    #[test]
    fn two_point_measure_is_half() {
        for (a, b) in [(1, 0), (5, 3), (40, -17)] {
            let set = SiteSet::from_sites(
                LatticeKind::Square,
                [Site::ORIGIN, Site::new(a, b)],
            );
            let probs = harmonic_measure_kernel(&set).unwrap();
            assert!((probs[0] - 0.5).abs() < 1e-12);
            assert!((probs[1] - 0.5).abs() < 1e-12);
        }
    }
}

//! Closed-form bounds and exact solves for corridor-style number sequences:
//! q_0 = 1, interior recursion q_i = c_i (q_{i-1} + q_{i+1}) with optional
//! boosted indices, and a terminal coupling q_{m+1} = t q_m.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// alpha(a) = (a + sqrt(a^2 - 4)) / 2 for a > 2; alpha(deg) is the per-step
/// decay base of the matching lattice.
pub fn alpha(a: f64) -> Result<f64> {
    if a <= 2.0 {
        return Err(Error::InvalidInput(format!("alpha requires a > 2, got {a}")));
    }
    Ok((a + (a * a - 4.0).sqrt()) / 2.0)
}

/// Specification of one corridor recursion.
#[derive(Debug, Clone)]
pub struct RecursionSpec {
    pub m: usize,
    pub a: f64,
    pub b: f64,
    /// Strictly increasing boost positions within [1, m].
    pub boost_indices: Vec<usize>,
    /// Coefficient of the terminal coupling q_{m+1} = t * q_m.
    pub terminal_coupling: f64,
}

impl RecursionSpec {
    pub fn corridor(m: usize, a: f64) -> RecursionSpec {
        RecursionSpec {
            m,
            a,
            b: 1.0,
            boost_indices: Vec::new(),
            terminal_coupling: a - 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidInput("m must be positive".into()));
        }
        if self.a <= 2.0 {
            return Err(Error::InvalidInput("a must exceed 2".into()));
        }
        if self.b <= 1.0 && !self.boost_indices.is_empty() {
            return Err(Error::InvalidInput("b must exceed 1".into()));
        }
        let mut prev = 0usize;
        for &i in &self.boost_indices {
            if i < 1 || i > self.m || i <= prev {
                return Err(Error::InvalidInput(
                    "boost indices must be strictly increasing within [1, m]".into(),
                ));
            }
            prev = i;
        }
        Ok(())
    }
}

/// Lower bound b^k (alpha - 1) alpha^{-m-1} for any sequence satisfying the
/// recursion conditions with k boosted indices.
pub fn lower_bound(spec: &RecursionSpec) -> Result<f64> {
    spec.validate()?;
    let al = alpha(spec.a)?;
    let k = spec.boost_indices.len() as i32;
    Ok(spec.b.powi(k) * (al - 1.0) * al.powi(-(spec.m as i32) - 1))
}

pub fn ln_lower_bound(spec: &RecursionSpec) -> Result<f64> {
    spec.validate()?;
    let al = alpha(spec.a)?;
    let k = spec.boost_indices.len() as f64;
    Ok(k * spec.b.ln() + (al - 1.0).ln() - (spec.m as f64 + 1.0) * al.ln())
}

/// Upper bound (alpha + 1 - a)^{-1} alpha^{-m+1} for the exact boost-free
/// corridor with terminal coupling a - 1.
pub fn upper_bound_exact_corridor(m: usize, a: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let al = alpha(a)?;
    Ok((al + 1.0 - a).recip() * al.powi(-(m as i32) + 1))
}

pub fn ln_upper_bound_exact_corridor(m: usize, a: f64) -> Result<f64> {
    let al = alpha(a)?;
    Ok(-((al + 1.0 - a).ln()) - (m as f64 - 1.0) * al.ln())
}

/// Solves the recursion with equality everywhere in f64 arithmetic.
/// Returns q_0..q_{m+1}.
pub fn solve_recursion_f64(spec: &RecursionSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let m = spec.m;
    // Unknowns q_1..q_m with q_0 = 1 and q_{m+1} = t q_m folded in.
    // Tridiagonal system: q_i - c_i q_{i-1} - c_i q_{i+1} = 0.
    let c: Vec<f64> = (1..=m)
        .map(|i| {
            if spec.boost_indices.contains(&i) {
                spec.b / spec.a
            } else {
                1.0 / spec.a
            }
        })
        .collect();
    let mut diag = vec![1.0; m];
    let mut rhs = vec![0.0; m];
    rhs[0] = c[0];
    diag[m - 1] = 1.0 - c[m - 1] * spec.terminal_coupling;
    if diag[m - 1] <= 0.0 {
        return Err(Error::Numeric(
            "terminal coupling too strong for a stable solve".into(),
        ));
    }
    // Thomas algorithm: sub/super-diagonal entries are -c_i.
    let mut cp = vec![0.0; m]; // modified super-diagonal
    let mut dp = vec![0.0; m]; // modified rhs
    cp[0] = if m > 1 { -c[0] / diag[0] } else { 0.0 };
    dp[0] = rhs[0] / diag[0];
    for i in 1..m {
        let denom = diag[i] + c[i] * cp[i - 1];
        if denom.abs() < 1e-300 {
            return Err(Error::Numeric("singular tridiagonal system".into()));
        }
        if i + 1 < m {
            cp[i] = -c[i] / denom;
        }
        dp[i] = (rhs[i] + c[i] * dp[i - 1]) / denom;
    }
    let mut q = vec![0.0; m + 2];
    q[0] = 1.0;
    q[m] = dp[m - 1];
    for i in (1..m).rev() {
        q[i] = dp[i - 1] - cp[i - 1] * q[i + 1];
    }
    q[m + 1] = spec.terminal_coupling * q[m];
    Ok(q)
}

/// Exact-rational counterpart; `a = an/ad`, `b = bn/bd`,
/// `t = tn/td` must match the float spec when comparing paths.
pub fn solve_recursion_exact(
    m: usize,
    a: BigRational,
    b: BigRational,
    boost_indices: &[usize],
    terminal_coupling: BigRational,
) -> Result<Vec<BigRational>> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    if a <= two {
        return Err(Error::InvalidInput("a must exceed 2".into()));
    }
    let one = BigRational::one();
    let c: Vec<BigRational> = (1..=m)
        .map(|i| {
            if boost_indices.contains(&i) {
                b.clone() / a.clone()
            } else {
                one.clone() / a.clone()
            }
        })
        .collect();
    let mut diag: Vec<BigRational> = vec![one.clone(); m];
    let mut rhs: Vec<BigRational> = vec![BigRational::zero(); m];
    rhs[0] = c[0].clone();
    diag[m - 1] = one.clone() - c[m - 1].clone() * terminal_coupling.clone();
    if diag[m - 1] <= BigRational::zero() {
        return Err(Error::Numeric("terminal coupling too strong".into()));
    }
    let mut cp: Vec<BigRational> = vec![BigRational::zero(); m];
    let mut dp: Vec<BigRational> = vec![BigRational::zero(); m];
    if m > 1 {
        cp[0] = -c[0].clone() / diag[0].clone();
    }
    dp[0] = rhs[0].clone() / diag[0].clone();
    for i in 1..m {
        let denom = diag[i].clone() + c[i].clone() * cp[i - 1].clone();
        if denom.is_zero() {
            return Err(Error::Numeric("singular tridiagonal system".into()));
        }
        if i + 1 < m {
            cp[i] = -c[i].clone() / denom.clone();
        }
        dp[i] = (rhs[i].clone() + c[i].clone() * dp[i - 1].clone()) / denom;
    }
    let mut q: Vec<BigRational> = vec![BigRational::zero(); m + 2];
    q[0] = one;
    q[m] = dp[m - 1].clone();
    for i in (1..m).rev() {
        q[i] = dp[i - 1].clone() - cp[i - 1].clone() * q[i + 1].clone();
    }
    q[m + 1] = terminal_coupling * q[m].clone();
    Ok(q)
}

/// Natural log of a positive big rational, stable far beyond f64 range.
pub fn ln_big_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "ln of non-positive rational");
    ln_big_int(x.numer()) - ln_big_int(x.denom())
}

fn ln_big_int(x: &BigInt) -> f64 {
    let (_, digits) = x.to_u64_digits();
    match digits.len() {
        0 => f64::NEG_INFINITY,
        1 => (digits[0] as f64).ln(),
        _ => {
            let n = digits.len();
            // Top 128 bits as a float plus the bit offset.
            let hi = digits[n - 1] as f64;
            let lo = digits[n - 2] as f64;
            let mantissa = hi * 2f64.powi(64) + lo;
            mantissa.ln() + ((n - 2) as f64) * 64.0 * 2f64.ln()
        }
    }
}

/// Exact value in the quadratic field Q(sqrt(d)): p + q sqrt(d).
/// Used for the decay bases: a in {3, 4, 6} gives d in {5, 3, 2}.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExt {
    pub p: BigRational,
    pub q: BigRational,
    pub d: i64,
}

impl QuadExt {
    pub fn rational(p: BigRational, d: i64) -> QuadExt {
        QuadExt {
            p,
            q: BigRational::zero(),
            d,
        }
    }

    pub fn from_ints(p: i64, q: i64, d: i64) -> QuadExt {
        QuadExt {
            p: BigRational::from_integer(BigInt::from(p)),
            q: BigRational::from_integer(BigInt::from(q)),
            d,
        }
    }

    /// alpha(a) for integer a with a^2 - 4 = s^2 * d (square-free d):
    /// alpha = (a + s sqrt(d)) / 2.
    pub fn alpha_of_degree(a: i64) -> Option<QuadExt> {
        let (s, d) = match a {
            3 => (1, 5),
            4 => (2, 3),
            6 => (4, 2),
            _ => return None,
        };
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        Some(QuadExt {
            p: half.clone() * BigRational::from_integer(BigInt::from(a)),
            q: half * BigRational::from_integer(BigInt::from(s)),
            d,
        })
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        assert_eq!(self.d, o.d);
        let d = BigRational::from_integer(BigInt::from(self.d));
        QuadExt {
            p: self.p.clone() * o.p.clone() + d * self.q.clone() * o.q.clone(),
            q: self.p.clone() * o.q.clone() + self.q.clone() * o.p.clone(),
            d: self.d,
        }
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        assert_eq!(self.d, o.d);
        QuadExt {
            p: self.p.clone() + o.p.clone(),
            q: self.q.clone() + o.q.clone(),
            d: self.d,
        }
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        assert_eq!(self.d, o.d);
        QuadExt {
            p: self.p.clone() - o.p.clone(),
            q: self.q.clone() - o.q.clone(),
            d: self.d,
        }
    }

    pub fn inv(&self) -> QuadExt {
        let d = BigRational::from_integer(BigInt::from(self.d));
        let norm = self.p.clone() * self.p.clone() - d * self.q.clone() * self.q.clone();
        assert!(!norm.is_zero());
        QuadExt {
            p: self.p.clone() / norm.clone(),
            q: -self.q.clone() / norm,
            d: self.d,
        }
    }

    pub fn pow(&self, n: i64) -> QuadExt {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut result = QuadExt::rational(BigRational::one(), self.d);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Exact sign of p + q sqrt(d).
    pub fn sign(&self) -> i32 {
        let sp = rat_sign(&self.p);
        let sq = rat_sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        // Compare p^2 against d q^2; sign of p decides if |p| dominates.
        let d = BigRational::from_integer(BigInt::from(self.d));
        let lhs = self.p.clone() * self.p.clone();
        let rhs = d * self.q.clone() * self.q.clone();
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sp,
            std::cmp::Ordering::Less => sq,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Exact comparison self >= other.
    pub fn ge(&self, o: &QuadExt) -> bool {
        self.sub(o).sign() >= 0
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.p) + rat_to_f64(&self.q) * (self.d as f64).sqrt()
    }
}

fn rat_sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    // Convert with explicit scaling so huge numerators do not overflow.
    let ln = ln_big_rational_signed(x);
    match ln {
        None => 0.0,
        Some((sign, l)) => sign as f64 * l.exp(),
    }
}

fn ln_big_rational_signed(x: &BigRational) -> Option<(i32, f64)> {
    if x.is_zero() {
        return None;
    }
    let sign = if x.is_positive() { 1 } else { -1 };
    let ax = x.abs();
    Some((sign, ln_big_rational(&ax)))
}

/// Exact lower bound b^k (alpha - 1) alpha^{-m-1} inside Q(sqrt(d)) for
/// integer degree a in {3, 4, 6} and rational b.
pub fn lower_bound_exact(m: usize, a_int: i64, b: BigRational, k: usize) -> Option<QuadExt> {
    let al = QuadExt::alpha_of_degree(a_int)?;
    let one = QuadExt::rational(BigRational::one(), al.d);
    let bk = QuadExt::rational(num::pow::pow(b, k), al.d);
    Some(bk.mul(&al.sub(&one)).mul(&al.pow(-(m as i64) - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn alpha_values() {
        assert!((alpha(4.0).unwrap() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        assert!((alpha(6.0).unwrap() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((alpha(3.0).unwrap() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(alpha(2.0).is_err());
        assert!(alpha(1.5).is_err());
    }

    #[test]
    fn alpha_satisfies_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let a = rng.gen_range(2.01..12.0);
            let al = alpha(a).unwrap();
            assert!((al * al - a * al + 1.0).abs() < 1e-9 * al * al);
        }
    }

    #[test]
    fn lower_bound_examples() {
        // m = 1, k = 0, a = 4: (alpha - 1) alpha^{-2}.
        let spec = RecursionSpec::corridor(1, 4.0);
        let lb = lower_bound(&spec).unwrap();
        let al = 2.0 + 3f64.sqrt();
        assert!((lb - (al - 1.0) / (al * al)).abs() < 1e-12);
        assert!((lb - 0.196152).abs() < 1e-5);

        // With k = 0 the bound ignores b.
        let mut s2 = RecursionSpec::corridor(5, 4.0);
        s2.b = 7.0;
        assert_eq!(lower_bound(&s2).unwrap(), lower_bound(&RecursionSpec::corridor(5, 4.0)).unwrap());

        // Each boost multiplies the bound by b.
        let mut s3 = RecursionSpec::corridor(6, 4.0);
        s3.b = 1.25;
        s3.boost_indices = vec![2, 4];
        let mut s4 = s3.clone();
        s4.boost_indices = vec![1, 2, 4, 5];
        let r = lower_bound(&s4).unwrap() / lower_bound(&s3).unwrap();
        assert!((r - 1.25f64.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn upper_bound_examples() {
        let al: f64 = 2.0 + 3f64.sqrt();
        // m = 1, a = 4: 1/(sqrt(3) - 1), vacuously above 1.
        let u1 = upper_bound_exact_corridor(1, 4.0).unwrap();
        assert!((u1 - (3f64.sqrt() - 1.0).recip()).abs() < 1e-12);
        assert!((u1 - 1.3660254).abs() < 1e-6);
        // m = 10, a = 4: alpha^{-9} / (sqrt(3) - 1).
        let u10 = upper_bound_exact_corridor(10, 4.0).unwrap();
        assert!((u10 - al.powi(-9) / (3f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((u10 - 9.7255e-6).abs() < 1e-9);
        // The bound decays by a factor alpha per unit m.
        let u11 = upper_bound_exact_corridor(11, 4.0).unwrap();
        assert!((u10 / u11 - al).abs() < 1e-9);
    }

    #[test]
    fn exact_solve_hand_example() {
        // m = 1, a = 4, coupling 3: q1 = (1 + 3 q1)/4 so q1 = 1.
        let q = solve_recursion_exact(1, rat(4, 1), rat(1, 1), &[], rat(3, 1)).unwrap();
        assert_eq!(q[1], rat(1, 1));
        let qf = solve_recursion_f64(&RecursionSpec::corridor(1, 4.0)).unwrap();
        assert!((qf[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exact_corridor_sandwich_and_rate() {
        // The exact boost-free corridor sits between the lower bound and the
        // closed-form upper bound, and its decay rate approaches ln alpha.
        for (a_num, a_int) in [(4.0, 4i64), (6.0, 6), (3.0, 3)] {
            for m in [1usize, 2, 5, 10, 40] {
                let spec = RecursionSpec::corridor(m, a_num);
                let q = solve_recursion_f64(&spec).unwrap();
                let lb = lower_bound(&spec).unwrap();
                let ub = upper_bound_exact_corridor(m, a_num).unwrap();
                assert!(q[m] >= lb * (1.0 - 1e-12), "a={a_num} m={m}");
                assert!(q[m] <= ub * (1.0 + 1e-12), "a={a_num} m={m}");
                // Monotone non-increasing over the corridor itself (the
                // terminal coupling value q_{m+1} is a sum, not a probability).
                for i in 0..m {
                    assert!(q[i + 1] <= q[i] * (1.0 + 1e-12));
                }
                // Exact-rational path agrees with the float path.
                let qe = solve_recursion_exact(
                    m,
                    rat(a_int, 1),
                    rat(1, 1),
                    &[],
                    rat(a_int - 1, 1),
                )
                .unwrap();
                for i in 0..=m + 1 {
                    let e = rat_to_f64(&qe[i]);
                    assert!((e - q[i]).abs() <= 1e-12 * e.max(1e-300));
                }
            }
        }
        // -ln(q_m)/m approaches ln alpha within 1% at m = 200.
        let m = 200;
        let qe = solve_recursion_exact(m, rat(4, 1), rat(1, 1), &[], rat(3, 1)).unwrap();
        let rate = -ln_big_rational(&qe[m]) / m as f64;
        let target = alpha(4.0).unwrap().ln();
        assert!((rate / target - 1.0).abs() < 0.01, "rate {rate} vs {target}");
    }

    #[test]
    fn quad_ext_arithmetic() {
        let al = QuadExt::alpha_of_degree(4).unwrap();
        assert!((al.to_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-12);
        // alpha * alpha^{-1} = 1.
        let prod = al.mul(&al.inv());
        assert_eq!(prod.p, BigRational::one());
        assert!(prod.q.is_zero());
        // alpha^2 - 4 alpha + 1 = 0 exactly.
        let four = QuadExt::from_ints(4, 0, 3);
        let one = QuadExt::from_ints(1, 0, 3);
        let expr = al.pow(2).sub(&four.mul(&al)).add(&one);
        assert_eq!(expr.sign(), 0);
        // Exact ordering.
        assert!(al.ge(&QuadExt::from_ints(3, 0, 3)));
        assert!(!QuadExt::from_ints(3, 0, 3).ge(&al));
    }

    #[test]
    fn exact_lower_bound_comparison() {
        // Exact sandwich at the three lattice degrees using field arithmetic.
        for a_int in [3i64, 4, 6] {
            for m in [1usize, 3, 7, 15] {
                let q = solve_recursion_exact(m, rat(a_int, 1), rat(1, 1), &[], rat(a_int - 1, 1))
                    .unwrap();
                let lb = lower_bound_exact(m, a_int, rat(1, 1), 0).unwrap();
                let qm = QuadExt::rational(q[m].clone(), lb.d);
                assert!(qm.ge(&lb), "exact sandwich a={a_int} m={m}");
            }
        }
    }

    #[test]
    fn ln_big_rational_matches() {
        let x = rat(123456789, 1024);
        assert!((ln_big_rational(&x) - (123456789f64 / 1024.0).ln()).abs() < 1e-12);
        let tiny = num::pow::pow(rat(1, 7), 400);
        let expect = -400.0 * 7f64.ln();
        assert!((ln_big_rational(&tiny) - expect).abs() < 1e-9 * expect.abs());
    }

    #[test]
    fn randomized_sandwich() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..300 {
            let m = rng.gen_range(1..60);
            let a: f64 = rng.gen_range(2.3..9.0);
            let bmax = (a / 2.0).min(a / (a - 1.0));
            let b = rng.gen_range(1.0..bmax.max(1.0001));
            let k = rng.gen_range(0..=m.min(6));
            let mut idx: Vec<usize> = (1..=m).collect();
            for i in (1..idx.len()).rev() {
                idx.swap(i, rng.gen_range(0..=i));
            }
            let mut boosts: Vec<usize> = idx.into_iter().take(k).collect();
            boosts.sort();
            // Keep every row substochastic so the solution is a genuine
            // absorption probability vector: t <= a/b_m - 1.
            let b_end = if boosts.contains(&m) { b } else { 1.0 };
            let t = rng.gen_range(0.0..(a / b_end - 1.0));
            let spec = RecursionSpec {
                m,
                a,
                b,
                boost_indices: boosts,
                terminal_coupling: t,
            };
            let q = solve_recursion_f64(&spec).unwrap();
            for v in &q[..=m] {
                assert!(*v >= -1e-12 && *v <= 1.0 + 1e-9, "q out of [0,1]: {v}");
            }
            let lb = lower_bound(&spec).unwrap();
            assert!(q[m] >= lb * (1.0 - 1e-9), "sandwich failed: {} < {}", q[m], lb);
        }
    }
}

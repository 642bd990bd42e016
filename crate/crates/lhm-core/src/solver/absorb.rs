//! Absorption systems over explicit state sets: exact rational solves for
//! corridor-scale probabilities far below f64 range, and a depth-scaled f64
//! solve for medium systems queried in the log domain.

use crate::lattice::{neighbors, LatticeKind, Site};
use crate::seqbounds::ln_big_rational;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// An absorption problem: the walk moves among `states`; stepping onto a
/// success site absorbs with value 1; stepping anywhere else absorbs with
/// value 0. An optional mouth coupling adds external mass `t * q(mouth)`,
/// modeling outside-the-system neighbors whose total value is coupled back.
pub struct AbsorptionSystem {
    pub kind: LatticeKind,
    pub states: Vec<Site>,
    pub success: BTreeSet<Site>,
    pub coupling: Option<(Site, BigRational)>,
}

impl AbsorptionSystem {
    /// Exact hitting values q(state) as rationals.
    pub fn solve_exact(&self) -> Result<BTreeMap<Site, BigRational>> {
        let n = self.states.len();
        if n == 0 {
            return Ok(BTreeMap::new());
        }
        if n > 20_000 {
            return Err(Error::InvalidInput(format!(
                "exact absorption capped at 20000 states, got {n}"
            )));
        }
        let index: BTreeMap<Site, usize> =
            self.states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        if index.len() != n {
            return Err(Error::InvalidInput("duplicate states".into()));
        }
        for s in &self.states {
            if self.success.contains(s) {
                return Err(Error::InvalidInput(
                    "success sites must not be listed as states".into(),
                ));
            }
        }
        let deg = BigRational::from_integer(BigInt::from(self.kind.deg() as i64));
        // rows[i]: sparse row of (deg - coupling) q_i - sum_nbr q_j = rhs_i.
        let mut rows: Vec<BTreeMap<usize, BigRational>> = Vec::with_capacity(n);
        let mut rhs: Vec<BigRational> = vec![BigRational::zero(); n];
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, s) in self.states.iter().enumerate() {
            let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
            let mut diag = deg.clone();
            if let Some((mouth, t)) = &self.coupling {
                if s == mouth {
                    diag -= t.clone();
                }
            }
            row.insert(i, diag);
            for w in neighbors(self.kind, *s) {
                if let Some(&j) = index.get(&w) {
                    let e = row.entry(j).or_insert_with(BigRational::zero);
                    *e -= BigRational::one();
                } else if self.success.contains(&w) {
                    rhs[i] += BigRational::one();
                }
            }
            for (&j, _) in &row {
                cols[j].insert(i);
            }
            rows.push(row);
        }
        // Sparse Gaussian elimination in state order (states should arrive in
        // a band-friendly order, e.g. along the corridor).
        for k in 0..n {
            let pivot = rows[k]
                .get(&k)
                .cloned()
                .filter(|p| !p.is_zero())
                .ok_or_else(|| Error::Numeric("singular absorption system".into()))?;
            let below: Vec<usize> = cols[k].iter().copied().filter(|&i| i > k).collect();
            let pivot_row: Vec<(usize, BigRational)> = rows[k]
                .iter()
                .filter(|(&j, _)| j > k)
                .map(|(&j, v)| (j, v.clone()))
                .collect();
            let pivot_rhs = rhs[k].clone();
            for i in below {
                let factor = match rows[i].remove(&k) {
                    Some(f) => f / pivot.clone(),
                    None => continue,
                };
                cols[k].remove(&i);
                if factor.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let e = rows[i].entry(*j).or_insert_with(|| {
                        cols[*j].insert(i);
                        BigRational::zero()
                    });
                    *e -= factor.clone() * v.clone();
                    if e.is_zero() {
                        rows[i].remove(j);
                        cols[*j].remove(&i);
                    }
                }
                rhs[i] -= factor * pivot_rhs.clone();
            }
        }
        // Back substitution.
        let mut q: Vec<BigRational> = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for (&j, v) in rows[i].iter() {
                if j > i {
                    acc -= v.clone() * q[j].clone();
                }
            }
            let diag = rows[i].get(&i).unwrap();
            q[i] = acc / diag.clone();
        }
        Ok(self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, q[i].clone()))
            .collect())
    }

    /// Depth-scaled f64 solve; returns natural logs of the hitting values.
    /// Suitable when exact rationals are overkill and plain f64 would
    /// underflow. Dense LU, so keep the state count moderate.
    pub fn solve_ln_scaled(&self) -> Result<BTreeMap<Site, f64>> {
        let n = self.states.len();
        if n == 0 {
            return Ok(BTreeMap::new());
        }
        if n > 4000 {
            return Err(Error::InvalidInput(format!(
                "scaled absorption capped at 4000 states, got {n}"
            )));
        }
        if self.coupling.is_some() {
            return Err(Error::InvalidInput(
                "scaled solve does not support mouth coupling".into(),
            ));
        }
        let index: BTreeMap<Site, usize> =
            self.states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        // BFS depth from the success set through the state graph.
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in &self.success {
            for w in neighbors(self.kind, *s) {
                if let Some(&i) = index.get(&w) {
                    if depth[i] == usize::MAX {
                        depth[i] = 1;
                        queue.push_back(i);
                    }
                }
            }
        }
        while let Some(i) = queue.pop_front() {
            for w in neighbors(self.kind, self.states[i]) {
                if let Some(&j) = index.get(&w) {
                    if depth[j] == usize::MAX {
                        depth[j] = depth[i] + 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        if depth.iter().any(|&d| d == usize::MAX) {
            return Err(Error::InvalidInput(
                "state not connected to the success set".into(),
            ));
        }
        // Scale q_i = lh^{-d_i} * s_i; adjacent states differ by at most one
        // in depth, so all matrix entries stay O(1).
        let lh = self.kind.lambda_hat();
        let deg = self.kind.deg() as f64;
        let mut a = vec![0.0; n * n];
        let mut rhs = vec![0.0; n];
        for (i, s) in self.states.iter().enumerate() {
            a[i * n + i] = deg;
            for w in neighbors(self.kind, *s) {
                if let Some(&j) = index.get(&w) {
                    let e = depth[i] as i32 - depth[j] as i32;
                    a[i * n + j] -= lh.powi(e);
                } else if self.success.contains(&w) {
                    debug_assert_eq!(depth[i], 1);
                    rhs[i] += lh;
                }
            }
        }
        let x = dense_solve(&mut a, &mut rhs, n)?;
        Ok(self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let v = x[i].max(1e-300);
                (*s, v.ln() - depth[i] as f64 * lh.ln())
            })
            .collect())
    }
}

fn dense_solve(a: &mut [f64], rhs: &mut [f64], n: usize) -> Result<Vec<f64>> {
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
        if best_val < 1e-250 {
            return Err(Error::Numeric("singular scaled absorption system".into()));
        }
        if best != col {
            for k in 0..n {
                a.swap(col * n + k, best * n + k);
            }
            rhs.swap(col, best);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let f = a[row * n + col] / pivot;
            if f != 0.0 {
                for k in (col + 1)..n {
                    a[row * n + k] -= f * a[col * n + k];
                }
                rhs[row] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for k in (i + 1)..n {
            acc -= a[i * n + k] * x[k];
        }
        x[i] = acc / a[i * n + i];
    }
    Ok(x)
}

/// Exact log-value of a positive rational probability.
pub fn ln_rational(q: &BigRational) -> f64 {
    ln_big_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_step_quarter() {
        // One state adjacent to the success site on the square lattice.
        let sys = AbsorptionSystem {
            kind: LatticeKind::Square,
            states: vec![Site::new(1, 0)],
            success: [Site::ORIGIN].into_iter().collect(),
            coupling: None,
        };
        let q = sys.solve_exact().unwrap();
        assert_eq!(q[&Site::new(1, 0)], rat(1, 4));
    }

    #[test]
    fn straight_two_state_corridor() {
        // States (1,0), (2,0); success at the origin; everything else absorbs
        // to zero. q(1,0) = 4/15, q(2,0) = 1/15.
        let sys = AbsorptionSystem {
            kind: LatticeKind::Square,
            states: vec![Site::new(1, 0), Site::new(2, 0)],
            success: [Site::ORIGIN].into_iter().collect(),
            coupling: None,
        };
        let q = sys.solve_exact().unwrap();
        assert_eq!(q[&Site::new(1, 0)], rat(4, 15));
        assert_eq!(q[&Site::new(2, 0)], rat(1, 15));
    }

    #[test]
    fn coupling_matches_recursion() {
        // Corridor of length m with mouth coupling deg - 1 reproduces the
        // tridiagonal recursion solution.
        let m = 7;
        let states: Vec<Site> = (1..=m).map(|i| Site::new(i as i32, 0)).collect();
        let sys = AbsorptionSystem {
            kind: LatticeKind::Square,
            states: states.clone(),
            success: [Site::ORIGIN].into_iter().collect(),
            coupling: Some((Site::new(m as i32, 0), rat(3, 1))),
        };
        let q = sys.solve_exact().unwrap();
        let qr = crate::seqbounds::solve_recursion_exact(m, rat(4, 1), rat(1, 1), &[], rat(3, 1))
            .unwrap();
        for i in 1..=m {
            assert_eq!(q[&Site::new(i as i32, 0)], qr[i], "position {i}");
        }
    }

    #[test]
    fn scaled_matches_exact() {
        let states: Vec<Site> = (1..=40).map(|i| Site::new(i, 0)).collect();
        let sys = AbsorptionSystem {
            kind: LatticeKind::Square,
            states: states.clone(),
            success: [Site::ORIGIN].into_iter().collect(),
            coupling: None,
        };
        let exact = sys.solve_exact().unwrap();
        let ln = sys.solve_ln_scaled().unwrap();
        for s in &states {
            let le = ln_rational(&exact[s]);
            assert!(
                (ln[s] - le).abs() < 1e-9 * le.abs().max(1.0),
                "{s}: {} vs {}",
                ln[s],
                le
            );
        }
        // End value far below f64 underflow territory is fine in both paths.
        let q40 = exact[&Site::new(40, 0)].to_f64().unwrap();
        assert!(q40 > 0.0 && q40 < 1e-20);
    }
}

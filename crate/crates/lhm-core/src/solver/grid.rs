//! Finite-domain Dirichlet machinery: Euclidean-ball domains, a CSR adjacency
//! matrix over the unknown sites, conjugate gradients for large systems and a
//! dense LU path below 2000 unknowns.

use crate::lattice::{ball_sites, embed, in_ball, neighbors, LatticeKind, Site};
use crate::setgeom::SiteSet;
use crate::{Error, Result};

/// Dense site index over a rectangular (a, b, sub) window.
pub struct GridIndex {
    lo_a: i32,
    lo_b: i32,
    w: usize,
    h: usize,
    subs: usize,
    slots: Vec<i32>,
}

impl GridIndex {
    fn new(kind: LatticeKind, sites: &[Site]) -> GridIndex {
        let lo_a = sites.iter().map(|s| s.a).min().unwrap_or(0) - 1;
        let hi_a = sites.iter().map(|s| s.a).max().unwrap_or(0) + 1;
        let lo_b = sites.iter().map(|s| s.b).min().unwrap_or(0) - 1;
        let hi_b = sites.iter().map(|s| s.b).max().unwrap_or(0) + 1;
        let w = (hi_a - lo_a + 1) as usize;
        let h = (hi_b - lo_b + 1) as usize;
        let subs = if kind == LatticeKind::Hexagonal { 2 } else { 1 };
        let mut g = GridIndex {
            lo_a,
            lo_b,
            w,
            h,
            subs,
            slots: vec![-1; w * h * subs],
        };
        for (i, s) in sites.iter().enumerate() {
            let k = g.slot(*s).expect("site inside own bbox");
            g.slots[k] = i as i32;
        }
        g
    }

    fn slot(&self, s: Site) -> Option<usize> {
        let da = s.a - self.lo_a;
        let db = s.b - self.lo_b;
        if da < 0 || db < 0 || da as usize >= self.w || db as usize >= self.h {
            return None;
        }
        Some((db as usize * self.w + da as usize) * self.subs + s.sub as usize)
    }

    pub fn get(&self, s: Site) -> Option<usize> {
        let k = self.slot(s)?;
        let v = self.slots[k];
        if v < 0 {
            None
        } else {
            Some(v as usize)
        }
    }
}

/// Compressed sparse rows over the unknowns.
pub struct Csr {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub idx: Vec<u32>,
}

impl Csr {
    /// y = (deg I - Adj) x.
    pub fn apply(&self, deg: f64, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = deg * x[i];
            for &j in &self.idx[self.indptr[i]..self.indptr[i + 1]] {
                acc -= x[j as usize];
            }
            y[i] = acc;
        }
    }
}

/// A Euclidean ball domain with an absorbing set removed; solves the lattice
/// Dirichlet problem (deg I - Adj) u = rhs over the remaining unknowns.
pub struct Domain {
    pub kind: LatticeKind,
    pub center: [f64; 2],
    pub radius: f64,
    pub unknowns: Vec<Site>,
    index: GridIndex,
    csr: Csr,
    dense_lu: Option<DenseLu>,
    pub cg_tol: f64,
}

pub const DENSE_LIMIT: usize = 2000;

impl Domain {
    pub fn build(
        kind: LatticeKind,
        center: [f64; 2],
        radius: f64,
        absorbing: &SiteSet,
        cg_tol: f64,
    ) -> Domain {
        let unknowns: Vec<Site> = ball_sites(kind, center, radius)
            .into_iter()
            .filter(|s| !absorbing.contains(*s))
            .collect();
        let index = GridIndex::new(kind, &unknowns);
        let mut indptr = Vec::with_capacity(unknowns.len() + 1);
        let mut idx = Vec::new();
        indptr.push(0);
        for s in &unknowns {
            for n in neighbors(kind, *s) {
                if let Some(j) = index.get(n) {
                    idx.push(j as u32);
                }
            }
            indptr.push(idx.len());
        }
        let csr = Csr {
            n: unknowns.len(),
            indptr,
            idx,
        };
        let mut dom = Domain {
            kind,
            center,
            radius,
            unknowns,
            index,
            csr,
            dense_lu: None,
            cg_tol,
        };
        if dom.unknowns.len() <= DENSE_LIMIT {
            dom.dense_lu = Some(DenseLu::factor(&dom));
        }
        dom
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn index_of(&self, s: Site) -> Option<usize> {
        self.index.get(s)
    }

    pub fn contains_ball(&self, s: Site) -> bool {
        in_ball(self.kind, s, self.center, self.radius)
    }

    /// RHS for absorption at a single target: count of edges into it.
    pub fn rhs_hitting(&self, target: Site) -> Vec<f64> {
        let mut rhs = vec![0.0; self.len()];
        for n in neighbors(self.kind, target) {
            if let Some(i) = self.index_of(n) {
                rhs[i] += 1.0;
            }
        }
        rhs
    }

    /// RHS counting, per unknown, its edges leaving the ball entirely.
    pub fn rhs_exit(&self) -> Vec<f64> {
        let mut rhs = vec![0.0; self.len()];
        for (i, s) in self.unknowns.iter().enumerate() {
            for n in neighbors(self.kind, *s) {
                if !self.contains_ball(n) {
                    rhs[i] += 1.0;
                }
            }
        }
        rhs
    }

    pub fn indicator(&self, sites: &[Site]) -> Vec<f64> {
        let mut v = vec![0.0; self.len()];
        for s in sites {
            if let Some(i) = self.index_of(*s) {
                v[i] = 1.0;
            }
        }
        v
    }

    /// Solves (deg I - Adj) u = rhs.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let deg = self.kind.deg() as f64;
        if let Some(lu) = &self.dense_lu {
            return Ok(lu.solve(rhs));
        }
        self.cg(deg, rhs)
    }

    fn cg(&self, deg: f64, b: &[f64]) -> Result<Vec<f64>> {
        // Preconditioned CG with an SSOR preconditioner (omega fixed at 1.9,
        // close to optimal for disk-shaped Dirichlet domains at these sizes).
        let n = self.len();
        let mut x = vec![0.0; n];
        let mut r = b.to_vec();
        let bnorm = dot(b, b).sqrt();
        if bnorm == 0.0 {
            return Ok(x);
        }
        let omega = 1.9;
        let mut z = vec![0.0; n];
        self.ssor_apply(deg, omega, &r, &mut z);
        let mut p = z.clone();
        let mut ap = vec![0.0; n];
        let mut rz = dot(&r, &z);
        let max_iters = 40 * (n as f64).sqrt() as usize + 500;
        for _ in 0..max_iters {
            self.csr.apply(deg, &p, &mut ap);
            let denom = dot(&p, &ap);
            if denom <= 0.0 {
                return Err(Error::Numeric("CG breakdown: matrix not SPD".into()));
            }
            let alpha = rz / denom;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            if dot(&r, &r).sqrt() <= self.cg_tol * bnorm {
                return Ok(x);
            }
            self.ssor_apply(deg, omega, &r, &mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(Error::Numeric(format!(
            "CG failed to converge on {n} unknowns"
        )))
    }

    /// z = P^{-1} r for the SSOR preconditioner
    /// P = (D + wL) D^{-1} (D + wU) / (w(2-w)), with constant diagonal D = deg.
    fn ssor_apply(&self, deg: f64, omega: f64, r: &[f64], z: &mut [f64]) {
        let n = self.len();
        // Forward solve (D + wL) t = r, L = strictly-lower adjacency part.
        for i in 0..n {
            let mut acc = r[i];
            for &j in &self.csr.idx[self.csr.indptr[i]..self.csr.indptr[i + 1]] {
                let j = j as usize;
                if j < i {
                    acc += omega * z[j];
                }
            }
            z[i] = acc / deg;
        }
        // Scale by D and backward solve (D + wU) z = t.
        for i in (0..n).rev() {
            let mut acc = z[i] * deg;
            for &j in &self.csr.idx[self.csr.indptr[i]..self.csr.indptr[i + 1]] {
                let j = j as usize;
                if j > i {
                    acc += omega * z[j];
                }
            }
            z[i] = acc / deg;
        }
        let scale = omega * (2.0 - omega);
        for v in z.iter_mut() {
            *v *= scale;
        }
    }

    /// Inner-boundary ring of the sub-ball of radius `r`: unknown sites inside
    /// radius r with a lattice neighbor outside radius r.
    pub fn ring_sites(&self, r: f64) -> Vec<Site> {
        self.unknowns
            .iter()
            .copied()
            .filter(|s| {
                in_ball(self.kind, *s, self.center, r)
                    && neighbors(self.kind, *s)
                        .iter()
                        .any(|n| !in_ball(self.kind, *n, self.center, r))
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dense LU with partial pivoting for small domains.
pub struct DenseLu {
    n: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
}

impl DenseLu {
    fn factor(dom: &Domain) -> DenseLu {
        let n = dom.len();
        let deg = dom.kind.deg() as f64;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = deg;
            for &j in &dom.csr.idx[dom.csr.indptr[i]..dom.csr.indptr[i + 1]] {
                a[i * n + j as usize] -= 1.0;
            }
        }
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
            if best_val == 0.0 {
                continue;
            }
            if best != col {
                for k in 0..n {
                    a.swap(col * n + k, best * n + k);
                }
                piv.swap(col, best);
            }
            let pivot = a[col * n + col];
            for row in (col + 1)..n {
                let f = a[row * n + col] / pivot;
                if f != 0.0 {
                    a[row * n + col] = f;
                    for k in (col + 1)..n {
                        a[row * n + k] -= f * a[col * n + k];
                    }
                }
            }
        }
        DenseLu { n, lu: a, piv }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = (0..n).map(|i| b[self.piv[i]]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for k in 0..i {
                acc -= self.lu[i * n + k] * x[k];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for k in (i + 1)..n {
                acc -= self.lu[i * n + k] * x[k];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}

/// Euclidean-ball membership count (used for radius heuristics).
pub fn ball_len(kind: LatticeKind, radius: f64) -> usize {
    ball_sites(kind, [0.0, 0.0], radius).len()
}

/// Embedding position helper re-exported for rendering.
pub fn position(kind: LatticeKind, s: Site) -> [f64; 2] {
    embed(kind, s)
}

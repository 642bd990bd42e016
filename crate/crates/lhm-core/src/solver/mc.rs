//! Monte Carlo estimator for circle-start hitting distributions. Walkers are
//! assigned independent ChaCha streams keyed by walker index, so results are
//! reproducible bit-for-bit regardless of the worker count.

use crate::lattice::{ball_sites, in_ball, LatticeKind, Site};
use crate::setgeom::SiteSet;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CELL_FREE: u16 = u16::MAX;
const CELL_DEAD: u16 = u16::MAX - 1;

struct WalkGrid {
    lo_a: i32,
    lo_b: i32,
    w: usize,
    h: usize,
    subs: usize,
    // target index, CELL_FREE, or CELL_DEAD
    cells: Vec<u16>,
}

impl WalkGrid {
    fn status(&self, a: i32, b: i32, sub: u8) -> u16 {
        let da = a - self.lo_a;
        let db = b - self.lo_b;
        if da < 0 || db < 0 || da as usize >= self.w || db as usize >= self.h {
            return CELL_DEAD;
        }
        self.cells[(db as usize * self.w + da as usize) * self.subs + sub as usize]
    }
}

pub struct McEstimate {
    pub sites: Vec<Site>,
    pub hits: Vec<u64>,
    pub walkers: u64,
    pub total_hits: u64,
    pub probs: Vec<f64>,
    pub sigma: Vec<f64>,
}

/// Runs `walkers` random walks from uniform starts on the inner ring of
/// radius `r_start` around `center`, absorbing on `a` (per-site counts) or on
/// leaving the ball of radius `r_kill`. Deterministic in `seed`.
pub fn monte_carlo_hitting(
    a: &SiteSet,
    walkers: u64,
    r_start: f64,
    r_kill: f64,
    center: [f64; 2],
    seed: u64,
) -> Result<McEstimate> {
    if walkers == 0 {
        return Err(Error::InvalidInput("need at least one walker".into()));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("empty target set".into()));
    }
    if r_kill <= r_start {
        return Err(Error::InvalidInput("kill radius must exceed start radius".into()));
    }
    let kind = a.kind;
    let sites = a.to_vec();
    if sites.len() >= CELL_DEAD as usize {
        return Err(Error::InvalidInput("target set too large for MC grid".into()));
    }
    let ball = ball_sites(kind, center, r_kill);
    let lo_a = ball.iter().map(|s| s.a).min().unwrap() - 1;
    let hi_a = ball.iter().map(|s| s.a).max().unwrap() + 1;
    let lo_b = ball.iter().map(|s| s.b).min().unwrap() - 1;
    let hi_b = ball.iter().map(|s| s.b).max().unwrap() + 1;
    let w = (hi_a - lo_a + 1) as usize;
    let h = (hi_b - lo_b + 1) as usize;
    let subs = if kind == LatticeKind::Hexagonal { 2 } else { 1 };
    let mut grid = WalkGrid {
        lo_a,
        lo_b,
        w,
        h,
        subs,
        cells: vec![CELL_DEAD; w * h * subs],
    };
    for s in &ball {
        let k = ((s.b - lo_b) as usize * w + (s.a - lo_a) as usize) * subs + s.sub as usize;
        grid.cells[k] = CELL_FREE;
    }
    for (i, s) in sites.iter().enumerate() {
        if in_ball(kind, *s, center, r_kill) {
            let k = ((s.b - lo_b) as usize * w + (s.a - lo_a) as usize) * subs + s.sub as usize;
            grid.cells[k] = i as u16;
        }
    }
    // Start ring: ball sites at radius r_start with a neighbor outside it.
    let ring: Vec<Site> = ball
        .iter()
        .copied()
        .filter(|s| {
            in_ball(kind, *s, center, r_start)
                && crate::lattice::neighbors(kind, *s)
                    .iter()
                    .any(|n| !in_ball(kind, *n, center, r_start))
                && !a.contains(*s)
        })
        .collect();
    if ring.is_empty() {
        return Err(Error::InvalidInput("start ring is empty".into()));
    }

    let deg = kind.deg();
    let chunk: u64 = 4096;
    let n_chunks = walkers.div_ceil(chunk);
    let hits: Vec<u64> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; sites.len()];
            let lo = c * chunk;
            let hi = ((c + 1) * chunk).min(walkers);
            for wk in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(wk.wrapping_add(1));
                let start = ring[rng.gen_range(0..ring.len())];
                let (mut ca, mut cb, mut cs) = (start.a, start.b, start.sub);
                // A walk in the kill ball ends quickly in expectation; the cap
                // only guards against pathological parameter choices.
                for _ in 0..50_000_000u64 {
                    let dir = rng.gen_range(0..deg);
                    step(kind, &mut ca, &mut cb, &mut cs, dir);
                    match grid.status(ca, cb, cs) {
                        CELL_FREE => continue,
                        CELL_DEAD => break,
                        t => {
                            local[t as usize] += 1;
                            break;
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || vec![0u64; sites.len()],
            |mut acc, v| {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += b;
                }
                acc
            },
        );

    let total_hits: u64 = hits.iter().sum();
    if total_hits == 0 {
        return Err(Error::Numeric("no walker reached the target set".into()));
    }
    let probs: Vec<f64> = hits.iter().map(|&hh| hh as f64 / total_hits as f64).collect();
    let sigma: Vec<f64> = probs
        .iter()
        .map(|&p| (p * (1.0 - p) / total_hits as f64).sqrt())
        .collect();
    Ok(McEstimate {
        sites,
        hits,
        walkers,
        total_hits,
        probs,
        sigma,
    })
}

#[inline]
fn step(kind: LatticeKind, a: &mut i32, b: &mut i32, sub: &mut u8, dir: usize) {
    match kind {
        LatticeKind::Square => {
            const D: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
            *a += D[dir].0;
            *b += D[dir].1;
        }
        LatticeKind::Triangular => {
            const D: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
            *a += D[dir].0;
            *b += D[dir].1;
        }
        LatticeKind::Hexagonal => {
            if *sub == 0 {
                const D: [(i32, i32); 3] = [(0, 0), (0, -1), (1, -1)];
                *a += D[dir].0;
                *b += D[dir].1;
                *sub = 1;
            } else {
                const D: [(i32, i32); 3] = [(0, 1), (-1, 1), (0, 0)];
                *a += D[dir].0;
                *b += D[dir].1;
                *sub = 0;
            }
        }
    }
}

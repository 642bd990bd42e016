//! Deterministic winding-spiral sets and their forced tunnels.
//!
//! A spiral is an increasing sequence of "wall" sites wound around the origin
//! so that the complement near the origin is a single width-one channel. The
//! theorem-relevant contract, which `validate_instance` checks directly, is:
//!
//! * (a) every complement path from infinity to the origin traverses the
//!   whole tunnel (the tunnel is extracted as exactly the set of complement
//!   sites whose removal separates the origin's entry from infinity);
//! * (b) every interior tunnel vertex has exactly `deg - 2` wall neighbors
//!   and exactly two complement neighbors;
//! * the tunnel length tracks `nu * n` within a square-root band.

use crate::lattice::{neighbors, LatticeKind, Site};
use crate::path::LatticePath;
use crate::setgeom::SiteSet;
use crate::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// A built spiral: `set` holds the first `n` wall sites, `tunnel` runs from
/// the mouth toward the origin entry.
#[derive(Debug, Clone)]
pub struct SpiralInstance {
    pub kind: LatticeKind,
    pub n: usize,
    pub set: SiteSet,
    pub tunnel: LatticePath,
    pub mouth: Site,
}

impl SpiralInstance {
    pub fn tunnel_length(&self) -> usize {
        self.tunnel.len()
    }
}

/// The infinite wall sequence for one lattice; `D_n` is the first `n` sites.
pub fn wall_sequence(kind: LatticeKind, n: usize) -> Vec<Site> {
    let mut out = Vec::with_capacity(n);
    let mut lap = 0usize;
    while out.len() < n {
        emit_lap(kind, lap, &mut out);
        lap += 1;
        if lap > 4000 {
            break;
        }
    }
    out.truncate(n);
    out
}

/// Builds `D_n` with its forced tunnel.
pub fn build_spiral(kind: LatticeKind, n: usize) -> Result<SpiralInstance> {
    if n < 2 {
        return Err(Error::InvalidInput("spiral needs n >= 2".into()));
    }
    let seq = wall_sequence(kind, n);
    if seq.len() < n {
        return Err(Error::InvalidInput("spiral generator exhausted".into()));
    }
    let set = SiteSet::from_sites(kind, seq.iter().copied());
    if set.len() != n {
        return Err(Error::Numeric("wall sequence repeated a site".into()));
    }
    let (tunnel, mouth) = extract_tunnel(&set)?;
    Ok(SpiralInstance {
        kind,
        n,
        set,
        tunnel,
        mouth,
    })
}

// ---------------------------------------------------------------------------
// Tunnel extraction: mandatory complement vertices via a block-cut tree.
// ---------------------------------------------------------------------------

struct RegionGraph {
    nodes: Vec<Site>,
    index: HashMap<Site, u32>,
    adj: Vec<Vec<u32>>,
    /// Virtual node for "infinity" attached to the window rim.
    inf: u32,
}

fn region_graph(set: &SiteSet) -> RegionGraph {
    let kind = set.kind;
    let (lo_a, hi_a, lo_b, hi_b) = set
        .bbox(2)
        .map(|(la, ha, lb, hb)| (la.min(-2), ha.max(2), lb.min(-2), hb.max(2)))
        .unwrap_or((-2, 2, -2, 2));
    let subs: &[u8] = if kind == LatticeKind::Hexagonal {
        &[0, 1]
    } else {
        &[0]
    };
    let mut nodes = Vec::new();
    let mut index = HashMap::new();
    for b in lo_b..=hi_b {
        for a in lo_a..=hi_a {
            for &sub in subs {
                let s = Site { a, b, sub };
                if !set.contains(s) {
                    index.insert(s, nodes.len() as u32);
                    nodes.push(s);
                }
            }
        }
    }
    let inf = nodes.len() as u32;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nodes.len() + 1];
    for (i, s) in nodes.iter().enumerate() {
        let rim = s.a == lo_a || s.a == hi_a || s.b == lo_b || s.b == hi_b;
        if rim {
            adj[i].push(inf);
            adj[inf as usize].push(i as u32);
        }
        for n in neighbors(kind, *s) {
            if let Some(&j) = index.get(&n) {
                adj[i].push(j);
            }
        }
    }
    RegionGraph {
        nodes,
        index,
        adj,
        inf,
    }
}

/// Cut vertices separating `from` from `to`, computed from the block-cut
/// tree of the component containing both.
fn separating_vertices(g: &RegionGraph, from: u32, to: u32) -> Vec<u32> {
    let n = g.adj.len();
    // Iterative Tarjan biconnected components.
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut parent = vec![u32::MAX; n];
    let mut timer = 0u32;
    let mut edge_stack: Vec<(u32, u32)> = Vec::new();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<(u32, usize)> = Vec::new();
    disc[from as usize] = timer;
    low[from as usize] = timer;
    timer += 1;
    stack.push((from, 0));
    while let Some(&mut (v, ref mut ei)) = stack.last_mut() {
        if *ei < g.adj[v as usize].len() {
            let w = g.adj[v as usize][*ei];
            *ei += 1;
            if disc[w as usize] == u32::MAX {
                parent[w as usize] = v;
                edge_stack.push((v, w));
                disc[w as usize] = timer;
                low[w as usize] = timer;
                timer += 1;
                stack.push((w, 0));
            } else if w != parent[v as usize] && disc[w as usize] < disc[v as usize] {
                edge_stack.push((v, w));
                low[v as usize] = low[v as usize].min(disc[w as usize]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _)) = stack.last() {
                low[u as usize] = low[u as usize].min(low[v as usize]);
                if low[v as usize] >= disc[u as usize] {
                    let mut block = Vec::new();
                    while let Some(&(x, y)) = edge_stack.last() {
                        if disc[x as usize] > disc[u as usize]
                            || (x == u && disc[y as usize] >= disc[v as usize])
                        {
                            block.push(x);
                            block.push(y);
                            edge_stack.pop();
                            if x == u && y == v {
                                break;
                            }
                        } else {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    if !block.is_empty() {
                        blocks.push(block);
                    }
                }
            }
        }
    }
    // Block-cut tree walk from the block holding `from` to the one holding `to`.
    let nb = blocks.len();
    let mut block_of: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (bi, block) in blocks.iter().enumerate() {
        for &v in block {
            block_of[v as usize].push(bi as u32);
        }
    }
    let is_cut: Vec<bool> = (0..n).map(|v| block_of[v].len() > 1).collect();
    let mut tree: Vec<Vec<u32>> = vec![Vec::new(); nb + n];
    for v in 0..n {
        if is_cut[v] {
            for &b in &block_of[v] {
                tree[b as usize].push((nb + v) as u32);
                tree[nb + v].push(b);
            }
        }
    }
    let node_of = |v: u32| -> u32 {
        if is_cut[v as usize] {
            (nb + v as usize) as u32
        } else {
            block_of[v as usize].first().copied().unwrap_or(u32::MAX)
        }
    };
    let start = node_of(from);
    let goal = node_of(to);
    if start == u32::MAX || goal == u32::MAX {
        return Vec::new();
    }
    let mut prev: HashMap<u32, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    prev.insert(start, start);
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        if t == goal {
            break;
        }
        for &u in &tree[t as usize] {
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(u) {
                e.insert(t);
                queue.push_back(u);
            }
        }
    }
    if !prev.contains_key(&goal) {
        return Vec::new();
    }
    let mut path_nodes = vec![goal];
    let mut cur = goal;
    while prev[&cur] != cur {
        cur = prev[&cur];
        path_nodes.push(cur);
    }
    let mut cuts = Vec::new();
    for t in path_nodes {
        if t as usize >= nb {
            let v = (t as usize - nb) as u32;
            if v != from && v != to {
                cuts.push(v);
            }
        }
    }
    cuts
}

/// Extracts the forced tunnel: the ordered chain of complement sites lying on
/// every complement path from the origin's entry to infinity. The returned
/// path runs mouth -> origin entry.
pub fn extract_tunnel(set: &SiteSet) -> Result<(LatticePath, Site)> {
    let kind = set.kind;
    if !set.contains(Site::ORIGIN) {
        return Err(Error::InvalidInput("spiral must contain the origin".into()));
    }
    let g = region_graph(set);
    let mut entry = None;
    for n in neighbors(kind, Site::ORIGIN) {
        if let Some(&i) = g.index.get(&n) {
            if reaches(&g, i, g.inf) {
                entry = Some(i);
                break;
            }
        }
    }
    let entry = entry.ok_or_else(|| {
        Error::InvalidInput("origin has no complement path to infinity".into())
    })?;
    let mut cuts = separating_vertices(&g, entry, g.inf);
    let dist = bfs_dist(&g, entry);
    cuts.sort_by_key(|&v| dist[v as usize]);
    let mut chain: Vec<Site> = vec![g.nodes[entry as usize]];
    chain.extend(cuts.iter().map(|&v| g.nodes[v as usize]));
    chain.reverse();
    for w in chain.windows(2) {
        if !crate::lattice::are_adjacent(kind, w[0], w[1]) {
            return Err(Error::Numeric(format!(
                "tunnel chain not a path at {} -> {}",
                w[0], w[1]
            )));
        }
    }
    let mouth = chain[0];
    let path = LatticePath::new(kind, chain)?;
    Ok((path, mouth))
}

fn reaches(g: &RegionGraph, from: u32, to: u32) -> bool {
    let mut seen = vec![false; g.adj.len()];
    let mut queue = VecDeque::new();
    seen[from as usize] = true;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            return true;
        }
        for &w in &g.adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

fn bfs_dist(g: &RegionGraph, from: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.adj.len()];
    let mut queue = VecDeque::new();
    dist[from as usize] = 0;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for &w in &g.adj[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub n: usize,
    pub tunnel_len: usize,
    pub interior_ok: bool,
    pub violations: Vec<(Site, usize, usize)>,
}

/// Checks (b) on the instance: every interior tunnel vertex has exactly
/// `deg - 2` wall neighbors and exactly two complement neighbors.
pub fn validate_instance(inst: &SpiralInstance) -> ValidationReport {
    let kind = inst.kind;
    let deg = kind.deg();
    let verts = inst.tunnel.vertices();
    let mut violations = Vec::new();
    if verts.len() >= 3 {
        for &v in &verts[1..verts.len() - 1] {
            let mut in_set = 0;
            let mut in_comp = 0;
            for n in neighbors(kind, v) {
                if inst.set.contains(n) {
                    in_set += 1;
                } else {
                    in_comp += 1;
                }
            }
            if in_set != deg - 2 || in_comp != 2 {
                violations.push((v, in_set, in_comp));
            }
        }
    }
    ValidationReport {
        n: inst.n,
        tunnel_len: inst.tunnel.len(),
        interior_ok: violations.is_empty(),
        violations,
    }
}

/// Checks (a) directly on a sample of tunnel vertices: removing one must
/// disconnect the origin entry from infinity.
pub fn check_forced(inst: &SpiralInstance, sample: usize) -> bool {
    let verts = inst.tunnel.vertices();
    if verts.is_empty() {
        return false;
    }
    let step = (verts.len() / sample.max(1)).max(1);
    for (i, &v) in verts.iter().enumerate() {
        if i % step != 0 {
            continue;
        }
        let entry = inst.tunnel.last();
        if entry == v {
            continue;
        }
        let mut blocked = inst.set.clone();
        blocked.insert(v);
        let cc = crate::setgeom::complement_components(&blocked);
        if cc.in_infinite(entry) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Wall generators
// ---------------------------------------------------------------------------

fn emit_lap(kind: LatticeKind, lap: usize, out: &mut Vec<Site>) {
    match kind {
        LatticeKind::Square => emit_lap_square(lap, out),
        LatticeKind::Triangular => emit_lap_triangular(lap, out),
        LatticeKind::Hexagonal => emit_lap_hexagonal(lap, out),
    }
}

include!("spiral_tables.rs");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_nesting() {
        for kind in LatticeKind::ALL {
            let long = wall_sequence(kind, 220);
            assert_eq!(long.len(), 220, "{kind}: generator too short");
            let mut seen = std::collections::BTreeSet::new();
            for s in &long {
                assert!(seen.insert(*s), "{kind}: duplicate site {s}");
            }
            assert_eq!(long[0], Site::ORIGIN);
        }
    }

    #[test]
    fn tunnel_contract_small() {
        for kind in LatticeKind::ALL {
            for n in [24usize, 60, 120] {
                let inst = build_spiral(kind, n).unwrap();
                assert_eq!(inst.set.len(), n);
                let report = validate_instance(&inst);
                assert!(
                    report.interior_ok,
                    "{kind} n={n}: interior violations {:?}",
                    &report.violations[..report.violations.len().min(5)]
                );
                assert!(inst.tunnel.is_vertex_self_avoiding());
                assert!(check_forced(&inst, 12), "{kind} n={n}: tunnel not forced");
                let cc = crate::setgeom::complement_components(&inst.set);
                for &v in inst.tunnel.vertices() {
                    assert!(cc.in_infinite(v), "{kind} n={n}: {v} not exterior");
                }
            }
        }
    }

    #[test]
    fn tunnel_length_band() {
        for kind in LatticeKind::ALL {
            let nu = kind.nu() as f64;
            for n in (10..=220).step_by(7) {
                let inst = build_spiral(kind, n).unwrap();
                let l = inst.tunnel.len() as f64;
                let slack = 8.0 * (n as f64).sqrt();
                assert!(
                    (l - nu * n as f64).abs() <= slack,
                    "{kind} n={n}: l={l} vs nu*n={} slack={slack}",
                    nu * n as f64
                );
            }
        }
    }
}

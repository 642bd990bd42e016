//! The three regular two-dimensional lattices: square, triangular, hexagonal.
//!
//! Sites use integer coordinates `(a, b, sub)`. The `sub` index is the
//! two-site unit cell of the hexagonal lattice (0 for the other two).
//! All face/orientation logic derives from one shared convention: faces are
//! traced clockwise in the planar embedding with the y-axis pointing up.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Which lattice a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    #[serde(rename = "z2")]
    Square,
    #[serde(rename = "tri")]
    Triangular,
    #[serde(rename = "hex")]
    Hexagonal,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [
        LatticeKind::Square,
        LatticeKind::Triangular,
        LatticeKind::Hexagonal,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LatticeKind::Square => "z2",
            LatticeKind::Triangular => "tri",
            LatticeKind::Hexagonal => "hex",
        }
    }

    pub fn from_tag(tag: &str) -> Option<LatticeKind> {
        match tag {
            "z2" => Some(LatticeKind::Square),
            "tri" => Some(LatticeKind::Triangular),
            "hex" => Some(LatticeKind::Hexagonal),
            _ => None,
        }
    }

    /// Vertex degree.
    pub fn deg(self) -> usize {
        match self {
            LatticeKind::Square => 4,
            LatticeKind::Triangular => 6,
            LatticeKind::Hexagonal => 3,
        }
    }

    /// Number of edges around each face.
    pub fn xi(self) -> usize {
        match self {
            LatticeKind::Square => 4,
            LatticeKind::Triangular => 3,
            LatticeKind::Hexagonal => 6,
        }
    }

    /// Tunnel-density constant: (deg - 2*[triangular]) / (deg - 2).
    pub fn nu(self) -> usize {
        match self {
            LatticeKind::Square => 2,
            LatticeKind::Triangular => 1,
            LatticeKind::Hexagonal => 3,
        }
    }

    /// Minimal count of shared-boundary edges at an interlock.
    pub fn kappa(self) -> usize {
        match self {
            LatticeKind::Square | LatticeKind::Triangular => 2,
            LatticeKind::Hexagonal => 3,
        }
    }

    /// Per-step decay base: (deg + sqrt(deg^2 - 4)) / 2.
    pub fn lambda_hat(self) -> f64 {
        let d = self.deg() as f64;
        (d + (d * d - 4.0).sqrt()) / 2.0
    }

    /// Per-vertex decay base: lambda_hat^nu.
    pub fn lambda(self) -> f64 {
        self.lambda_hat().powi(self.nu() as i32)
    }

    pub fn ln_lambda(self) -> f64 {
        self.nu() as f64 * self.lambda_hat().ln()
    }

    /// Free-vertex discount: log base lambda_hat of deg^2/(deg^2-1).
    pub fn c_dd(self) -> f64 {
        let d = self.deg() as f64;
        ((d * d) / (d * d - 1.0)).ln() / self.lambda_hat().ln()
    }

    /// The boost factor deg^2/(deg^2-1) used with free vertices.
    pub fn free_boost(self) -> f64 {
        let d = self.deg() as f64;
        d * d / (d * d - 1.0)
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A lattice vertex. `sub` is 0 except on the hexagonal lattice where the
/// unit cell holds two sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub a: i32,
    pub b: i32,
    pub sub: u8,
}

impl Site {
    pub const ORIGIN: Site = Site { a: 0, b: 0, sub: 0 };

    pub fn new(a: i32, b: i32) -> Site {
        Site { a, b, sub: 0 }
    }

    pub fn hex(a: i32, b: i32, sub: u8) -> Site {
        debug_assert!(sub < 2);
        Site { a, b, sub }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sub == 0 {
            write!(f, "({},{})", self.a, self.b)
        } else {
            write!(f, "({},{},{})", self.a, self.b, self.sub)
        }
    }
}

/// An oriented edge between adjacent sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub from: Site,
    pub to: Site,
}

impl OrientedEdge {
    /// Builds the edge, checking adjacency.
    pub fn new(kind: LatticeKind, from: Site, to: Site) -> Option<OrientedEdge> {
        if are_adjacent(kind, from, to) {
            Some(OrientedEdge { from, to })
        } else {
            None
        }
    }

    pub fn reversed(self) -> OrientedEdge {
        OrientedEdge {
            from: self.to,
            to: self.from,
        }
    }
}

/// A face, stored as its clockwise vertex cycle starting at the minimal site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    verts: Vec<Site>,
}

impl Face {
    fn canonical(mut cycle: Vec<Site>) -> Face {
        let k = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, s)| **s)
            .map(|(i, _)| i)
            .unwrap();
        cycle.rotate_left(k);
        Face { verts: cycle }
    }

    /// Clockwise vertex cycle (starting at the lexicographically least site).
    pub fn vertices(&self) -> &[Site] {
        &self.verts
    }

    /// The clockwise oriented edges of the face.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let n = self.verts.len();
        (0..n)
            .map(|i| OrientedEdge {
                from: self.verts[i],
                to: self.verts[(i + 1) % n],
            })
            .collect()
    }

    pub fn contains(&self, s: Site) -> bool {
        self.verts.contains(&s)
    }
}

// Neighbor offset tables. The second element is the direction "tick" in units
// of 30 degrees in the embedding; ticks are exact so orientation logic never
// touches floating point.
const SQ_OFFS: [((i32, i32), u8); 4] = [((1, 0), 0), ((0, 1), 3), ((-1, 0), 6), ((0, -1), 9)];
const TRI_OFFS: [((i32, i32), u8); 6] = [
    ((1, 0), 0),
    ((0, 1), 2),
    ((-1, 1), 4),
    ((-1, 0), 6),
    ((0, -1), 8),
    ((1, -1), 10),
];
// Hexagonal: sub-0 connects to sub-1 sites of cells (0,0), (0,-1), (1,-1);
// sub-1 connects to sub-0 sites of cells (0,1), (-1,1), (0,0).
const HEX0_OFFS: [((i32, i32), u8); 3] = [((0, 0), 3), ((0, -1), 7), ((1, -1), 11)];
const HEX1_OFFS: [((i32, i32), u8); 3] = [((0, 1), 1), ((-1, 1), 5), ((0, 0), 9)];

/// Neighbors of `s`, in counter-clockwise embedding order.
pub fn neighbors(kind: LatticeKind, s: Site) -> Vec<Site> {
    match kind {
        LatticeKind::Square => SQ_OFFS
            .iter()
            .map(|((da, db), _)| Site::new(s.a + da, s.b + db))
            .collect(),
        LatticeKind::Triangular => TRI_OFFS
            .iter()
            .map(|((da, db), _)| Site::new(s.a + da, s.b + db))
            .collect(),
        LatticeKind::Hexagonal => {
            if s.sub == 0 {
                HEX0_OFFS
                    .iter()
                    .map(|((da, db), _)| Site::hex(s.a + da, s.b + db, 1))
                    .collect()
            } else {
                HEX1_OFFS
                    .iter()
                    .map(|((da, db), _)| Site::hex(s.a + da, s.b + db, 0))
                    .collect()
            }
        }
    }
}

/// Neighbors together with their direction ticks (30 degree units, CCW from +x).
pub fn neighbors_with_ticks(kind: LatticeKind, s: Site) -> Vec<(Site, u8)> {
    match kind {
        LatticeKind::Square => SQ_OFFS
            .iter()
            .map(|((da, db), t)| (Site::new(s.a + da, s.b + db), *t))
            .collect(),
        LatticeKind::Triangular => TRI_OFFS
            .iter()
            .map(|((da, db), t)| (Site::new(s.a + da, s.b + db), *t))
            .collect(),
        LatticeKind::Hexagonal => {
            if s.sub == 0 {
                HEX0_OFFS
                    .iter()
                    .map(|((da, db), t)| (Site::hex(s.a + da, s.b + db, 1), *t))
                    .collect()
            } else {
                HEX1_OFFS
                    .iter()
                    .map(|((da, db), t)| (Site::hex(s.a + da, s.b + db, 0), *t))
                    .collect()
            }
        }
    }
}

pub fn are_adjacent(kind: LatticeKind, x: Site, y: Site) -> bool {
    neighbors(kind, x).contains(&y)
}

/// Planar embedding with unit edge length; the origin maps to (0, 0).
pub fn embed(kind: LatticeKind, s: Site) -> [f64; 2] {
    match kind {
        LatticeKind::Square => [s.a as f64, s.b as f64],
        LatticeKind::Triangular => {
            let x = s.a as f64 + s.b as f64 / 2.0;
            let y = s.b as f64 * 3f64.sqrt() / 2.0;
            [x, y]
        }
        LatticeKind::Hexagonal => {
            let r3 = 3f64.sqrt();
            let x = s.a as f64 * r3 + s.b as f64 * r3 / 2.0;
            let y = s.b as f64 * 1.5 + if s.sub == 1 { 1.0 } else { 0.0 };
            [x, y]
        }
    }
}

pub fn euclid_dist(kind: LatticeKind, x: Site, y: Site) -> f64 {
    let p = embed(kind, x);
    let q = embed(kind, y);
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Graph distance. Closed forms on square/triangular, bounded BFS on hexagonal.
pub fn graph_distance(kind: LatticeKind, x: Site, y: Site) -> u32 {
    match kind {
        LatticeKind::Square => (x.a - y.a).unsigned_abs() + (x.b - y.b).unsigned_abs(),
        LatticeKind::Triangular => {
            let da = x.a - y.a;
            let db = x.b - y.b;
            ((da.abs() + db.abs() + (da + db).abs()) / 2) as u32
        }
        LatticeKind::Hexagonal => hex_distance(x, y),
    }
}

fn hex_distance(x: Site, y: Site) -> u32 {
    if x == y {
        return 0;
    }
    // BFS restricted to the bounding box of {x, y} inflated by 2 cells;
    // hexagonal geodesics stay inside (checked by property test against
    // unrestricted BFS).
    let lo_a = x.a.min(y.a) - 2;
    let hi_a = x.a.max(y.a) + 2;
    let lo_b = x.b.min(y.b) - 2;
    let hi_b = x.b.max(y.b) + 2;
    let w = (hi_a - lo_a + 1) as usize;
    let h = (hi_b - lo_b + 1) as usize;
    let idx = |s: Site| -> usize {
        ((s.b - lo_b) as usize * w + (s.a - lo_a) as usize) * 2 + s.sub as usize
    };
    let inside = |s: Site| s.a >= lo_a && s.a <= hi_a && s.b >= lo_b && s.b <= hi_b;
    let mut dist = vec![u32::MAX; w * h * 2];
    let mut queue = std::collections::VecDeque::new();
    dist[idx(x)] = 0;
    queue.push_back(x);
    while let Some(cur) = queue.pop_front() {
        let d = dist[idx(cur)];
        if cur == y {
            return d;
        }
        for n in neighbors(LatticeKind::Hexagonal, cur) {
            if inside(n) && dist[idx(n)] == u32::MAX {
                dist[idx(n)] = d + 1;
                queue.push_back(n);
            }
        }
    }
    // Unreachable inside the box; fall back to a wider search.
    unrestricted_bfs_distance(LatticeKind::Hexagonal, x, y)
}

/// Plain BFS with no box restriction (used for validation and fallback).
pub fn unrestricted_bfs_distance(kind: LatticeKind, x: Site, y: Site) -> u32 {
    use std::collections::{HashMap, VecDeque};
    let mut dist: HashMap<Site, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(x, 0);
    queue.push_back(x);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if cur == y {
            return d;
        }
        for n in neighbors(kind, cur) {
            dist.entry(n).or_insert_with(|| {
                queue.push_back(n);
                d + 1
            });
        }
    }
    unreachable!("lattice is connected")
}

/// The unique face whose clockwise edge set contains `e` (the face to the
/// right of the oriented edge). Traced with exact integer direction ticks.
pub fn face_right_of(kind: LatticeKind, e: OrientedEdge) -> Face {
    let xi = kind.xi();
    let mut cycle = vec![e.from];
    let mut prev = e.from;
    let mut cur = e.to;
    for _ in 0..xi {
        if cur == e.from {
            break;
        }
        cycle.push(cur);
        let nbrs = neighbors_with_ticks(kind, cur);
        let back_tick = nbrs
            .iter()
            .find(|(s, _)| *s == prev)
            .map(|(_, t)| *t)
            .expect("prev is adjacent to cur");
        // First neighbor strictly counter-clockwise after the reverse direction.
        let (next, _) = nbrs
            .iter()
            .min_by_key(|(_, t)| (*t as i16 - back_tick as i16 - 1).rem_euclid(12))
            .copied()
            .unwrap();
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cur, e.from, "face tracing must close in xi steps");
    debug_assert_eq!(cycle.len(), xi);
    Face::canonical(cycle)
}

/// The face with `e` in its clockwise oriented-edge set; rejects non-edges.
pub fn faces_of_edge(kind: LatticeKind, from: Site, to: Site) -> Option<Face> {
    let e = OrientedEdge::new(kind, from, to)?;
    Some(face_right_of(kind, e))
}

/// All faces incident to `s` (deg of them), each traced once.
pub fn faces_of_site(kind: LatticeKind, s: Site) -> Vec<Face> {
    neighbors(kind, s)
        .into_iter()
        .map(|n| face_right_of(kind, OrientedEdge { from: s, to: n }))
        .collect()
}

/// Sites sharing a face with `s`, excluding `s` itself. On the triangular
/// lattice this coincides with `neighbors`.
pub fn star_neighbors(kind: LatticeKind, s: Site) -> Vec<Site> {
    let mut out: Vec<Site> = Vec::new();
    for f in faces_of_site(kind, s) {
        for &v in f.vertices() {
            if v != s && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out.sort();
    out
}

pub fn are_star_adjacent(kind: LatticeKind, x: Site, y: Site) -> bool {
    x != y && star_neighbors(kind, x).contains(&y)
}

/// Lattice automorphisms fixing the origin (point group of the rooted graph):
/// 8 on the square lattice, 12 on the triangular, 6 on the hexagonal.
pub fn point_group(kind: LatticeKind) -> Vec<fn(Site) -> Site> {
    match kind {
        LatticeKind::Square => vec![
            |s| s,
            |s| Site::new(-s.b, s.a),
            |s| Site::new(-s.a, -s.b),
            |s| Site::new(s.b, -s.a),
            |s| Site::new(s.a, -s.b),
            |s| Site::new(-s.a, s.b),
            |s| Site::new(s.b, s.a),
            |s| Site::new(-s.b, -s.a),
        ],
        LatticeKind::Triangular => {
            // rot60: (a,b) -> (-b, a+b); mirror: (a,b) -> (a+b, -b).
            fn r1(s: Site) -> Site {
                Site::new(-s.b, s.a + s.b)
            }
            fn r2(s: Site) -> Site {
                r1(r1(s))
            }
            fn r3(s: Site) -> Site {
                r1(r2(s))
            }
            fn r4(s: Site) -> Site {
                r2(r2(s))
            }
            fn r5(s: Site) -> Site {
                r1(r4(s))
            }
            fn m0(s: Site) -> Site {
                Site::new(s.a + s.b, -s.b)
            }
            fn m1(s: Site) -> Site {
                m0(r1(s))
            }
            fn m2(s: Site) -> Site {
                m0(r2(s))
            }
            fn m3(s: Site) -> Site {
                m0(r3(s))
            }
            fn m4(s: Site) -> Site {
                m0(r4(s))
            }
            fn m5(s: Site) -> Site {
                m0(r5(s))
            }
            vec![|s| s, r1, r2, r3, r4, r5, m0, m1, m2, m3, m4, m5]
        }
        LatticeKind::Hexagonal => {
            // Vertex stabilizer D3: rotations by 120 degrees about the origin
            // site and three mirrors.
            fn rot(s: Site) -> Site {
                if s.sub == 0 {
                    Site::hex(-s.a - s.b, s.a, 0)
                } else {
                    Site::hex(-s.a - s.b, s.a - 1, 1)
                }
            }
            fn rot2(s: Site) -> Site {
                rot(rot(s))
            }
            fn mir(s: Site) -> Site {
                // Reflection across the vertical line through the origin.
                Site::hex(-s.a - s.b, s.b, s.sub)
            }
            fn mr1(s: Site) -> Site {
                mir(rot(s))
            }
            fn mr2(s: Site) -> Site {
                mir(rot2(s))
            }
            vec![|s| s, rot, rot2, mir, mr1, mr2]
        }
    }
}

/// All sites whose embedding lies within Euclidean distance `radius` of `center`.
pub fn ball_sites(kind: LatticeKind, center: [f64; 2], radius: f64) -> Vec<Site> {
    let mut out = Vec::new();
    let r = radius;
    match kind {
        LatticeKind::Square => {
            let b_lo = (center[1] - r).floor() as i32;
            let b_hi = (center[1] + r).ceil() as i32;
            for b in b_lo..=b_hi {
                let dy = b as f64 - center[1];
                let half = (r * r - dy * dy).max(0.0).sqrt();
                let a_lo = (center[0] - half).floor() as i32;
                let a_hi = (center[0] + half).ceil() as i32;
                for a in a_lo..=a_hi {
                    let s = Site::new(a, b);
                    if in_ball(kind, s, center, r) {
                        out.push(s);
                    }
                }
            }
        }
        LatticeKind::Triangular => {
            let rowh = 3f64.sqrt() / 2.0;
            let b_lo = ((center[1] - r) / rowh).floor() as i32;
            let b_hi = ((center[1] + r) / rowh).ceil() as i32;
            for b in b_lo..=b_hi {
                let dy = b as f64 * rowh - center[1];
                let half = (r * r - dy * dy).max(0.0).sqrt() + 1.0;
                let a_lo = (center[0] - half - b as f64 / 2.0).floor() as i32;
                let a_hi = (center[0] + half - b as f64 / 2.0).ceil() as i32;
                for a in a_lo..=a_hi {
                    let s = Site::new(a, b);
                    if in_ball(kind, s, center, r) {
                        out.push(s);
                    }
                }
            }
        }
        LatticeKind::Hexagonal => {
            let r3 = 3f64.sqrt();
            let b_lo = ((center[1] - r - 1.0) / 1.5).floor() as i32;
            let b_hi = ((center[1] + r) / 1.5).ceil() as i32;
            for b in b_lo..=b_hi {
                let a_lo = ((center[0] - r) / r3 - b as f64 / 2.0).floor() as i32 - 1;
                let a_hi = ((center[0] + r) / r3 - b as f64 / 2.0).ceil() as i32 + 1;
                for a in a_lo..=a_hi {
                    for sub in 0..2 {
                        let s = Site::hex(a, b, sub);
                        if in_ball(kind, s, center, r) {
                            out.push(s);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn in_ball(kind: LatticeKind, s: Site, center: [f64; 2], radius: f64) -> bool {
    let p = embed(kind, s);
    let dx = p[0] - center[0];
    let dy = p[1] - center[1];
    dx * dx + dy * dy <= radius * radius + 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lattice_constants() {
        for kind in LatticeKind::ALL {
            assert_eq!((kind.xi() - 2) * (kind.deg() - 2), 4);
        }
        assert_eq!(LatticeKind::Square.deg(), 4);
        assert_eq!(LatticeKind::Triangular.deg(), 6);
        assert_eq!(LatticeKind::Hexagonal.deg(), 3);
        assert_eq!(LatticeKind::Square.nu(), 2);
        assert_eq!(LatticeKind::Triangular.nu(), 1);
        assert_eq!(LatticeKind::Hexagonal.nu(), 3);
        assert_eq!(LatticeKind::Square.kappa(), 2);
        assert_eq!(LatticeKind::Hexagonal.kappa(), 3);

        let s3 = 3f64.sqrt();
        assert!((LatticeKind::Square.lambda_hat() - (2.0 + s3)).abs() < 1e-12);
        assert!((LatticeKind::Triangular.lambda_hat() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((LatticeKind::Hexagonal.lambda_hat() - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((LatticeKind::Square.lambda() - (2.0 + s3) * (2.0 + s3)).abs() < 1e-10);
        for kind in LatticeKind::ALL {
            let c = kind.c_dd();
            assert!(c > 0.0 && c < 1.0, "c_dd out of range for {kind}: {c}");
        }
    }

    #[test]
    fn neighbor_counts_and_distance_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for kind in LatticeKind::ALL {
            for _ in 0..50 {
                let s = random_site(kind, &mut rng, 10);
                let ns = neighbors(kind, s);
                assert_eq!(ns.len(), kind.deg());
                for n in &ns {
                    assert!((euclid_dist(kind, s, *n) - 1.0).abs() < 1e-9);
                    assert!(neighbors(kind, *n).contains(&s), "adjacency symmetric");
                }
            }
        }
    }

    #[test]
    fn square_neighbors_exact() {
        let ns = neighbors(LatticeKind::Square, Site::ORIGIN);
        for want in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            assert!(ns.contains(&Site::new(want.0, want.1)));
        }
    }

    #[test]
    fn star_neighbors_shapes() {
        let star = star_neighbors(LatticeKind::Square, Site::ORIGIN);
        assert_eq!(star.len(), 8, "king moves on the square lattice");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let s = random_site(LatticeKind::Triangular, &mut rng, 8);
            let mut n = neighbors(LatticeKind::Triangular, s);
            n.sort();
            assert_eq!(star_neighbors(LatticeKind::Triangular, s), n);
        }
        for kind in LatticeKind::ALL {
            for _ in 0..20 {
                let s = random_site(kind, &mut rng, 8);
                assert!(star_neighbors(kind, s).len() <= 12);
            }
        }
        assert_eq!(star_neighbors(LatticeKind::Hexagonal, Site::ORIGIN).len(), 12);
    }

    #[test]
    fn star_adjacent_within_graph_distance_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in LatticeKind::ALL {
            for _ in 0..30 {
                let s = random_site(kind, &mut rng, 6);
                for t in star_neighbors(kind, s) {
                    assert!(graph_distance(kind, s, t) <= 3);
                }
            }
        }
    }

    #[test]
    fn face_walk_closes_clockwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for kind in LatticeKind::ALL {
            for _ in 0..30 {
                let s = random_site(kind, &mut rng, 6);
                for n in neighbors(kind, s) {
                    let f = face_right_of(kind, OrientedEdge { from: s, to: n });
                    assert_eq!(f.vertices().len(), kind.xi());
                    // Consecutive vertices adjacent, cycle closes.
                    let v = f.vertices();
                    for i in 0..v.len() {
                        assert!(are_adjacent(kind, v[i], v[(i + 1) % v.len()]));
                    }
                    // Clockwise in the embedding (negative signed area).
                    let area: f64 = (0..v.len())
                        .map(|i| {
                            let p = embed(kind, v[i]);
                            let q = embed(kind, v[(i + 1) % v.len()]);
                            p[0] * q[1] - q[0] * p[1]
                        })
                        .sum();
                    assert!(area < 0.0, "{kind}: face cycle must be clockwise");
                }
            }
        }
    }

    #[test]
    fn two_faces_per_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in LatticeKind::ALL {
            for _ in 0..20 {
                let s = random_site(kind, &mut rng, 6);
                let n = neighbors(kind, s)[0];
                let f1 = faces_of_edge(kind, s, n).unwrap();
                let f2 = faces_of_edge(kind, n, s).unwrap();
                assert_ne!(f1, f2, "reversed edge bounds the other face");
            }
        }
        assert!(faces_of_edge(LatticeKind::Square, Site::ORIGIN, Site::new(2, 0)).is_none());
    }

    #[test]
    fn square_face_of_east_edge() {
        let f = faces_of_edge(LatticeKind::Square, Site::ORIGIN, Site::new(1, 0)).unwrap();
        let mut got: Vec<Site> = f.vertices().to_vec();
        got.sort();
        let mut want = vec![
            Site::new(0, 0),
            Site::new(1, 0),
            Site::new(1, -1),
            Site::new(0, -1),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn graph_distance_examples() {
        assert_eq!(
            graph_distance(LatticeKind::Square, Site::ORIGIN, Site::new(3, 4)),
            7
        );
        for kind in LatticeKind::ALL {
            let s = Site::hex(2, -1, 0);
            assert_eq!(graph_distance(kind, s, s), 0);
        }
        let s = Site::hex(0, 0, 0);
        for n in neighbors(LatticeKind::Hexagonal, s) {
            assert_eq!(graph_distance(LatticeKind::Hexagonal, s, n), 1);
        }
    }

    #[test]
    fn graph_distance_matches_unrestricted_bfs() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for kind in LatticeKind::ALL {
            for _ in 0..40 {
                let x = random_site(kind, &mut rng, 7);
                let y = random_site(kind, &mut rng, 7);
                assert_eq!(
                    graph_distance(kind, x, y),
                    unrestricted_bfs_distance(kind, x, y),
                    "{kind}: {x} -> {y}"
                );
            }
        }
    }

    #[test]
    fn ball_sandwich() {
        // Graph balls nest between Euclidean balls with fixed constants.
        for kind in LatticeKind::ALL {
            for r in [5u32, 10, 20] {
                // All sites within graph distance r.
                let mut frontier = vec![Site::ORIGIN];
                let mut seen = std::collections::HashSet::new();
                seen.insert(Site::ORIGIN);
                for _ in 0..r {
                    let mut next = Vec::new();
                    for s in frontier {
                        for n in neighbors(kind, s) {
                            if seen.insert(n) {
                                next.push(n);
                            }
                        }
                    }
                    frontier = next;
                }
                let max_euclid = seen
                    .iter()
                    .map(|s| euclid_dist(kind, Site::ORIGIN, *s))
                    .fold(0.0, f64::max);
                assert!(max_euclid <= 1.01 * r as f64, "graph ball inside C0*r");
                // Euclidean ball of radius r/2 must sit inside the graph ball.
                for s in ball_sites(kind, [0.0, 0.0], r as f64 / 2.0) {
                    assert!(
                        seen.contains(&s),
                        "{kind}: Euclidean ball r/2 escapes graph ball {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn point_group_preserves_adjacency() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in LatticeKind::ALL {
            let ops = point_group(kind);
            let expected = match kind {
                LatticeKind::Square => 8,
                LatticeKind::Triangular => 12,
                LatticeKind::Hexagonal => 6,
            };
            assert_eq!(ops.len(), expected);
            for op in &ops {
                assert_eq!(op(Site::ORIGIN), Site::ORIGIN);
                for _ in 0..20 {
                    let s = random_site(kind, &mut rng, 6);
                    for n in neighbors(kind, s) {
                        assert!(
                            are_adjacent(kind, op(s), op(n)),
                            "{kind}: symmetry breaks adjacency at {s}->{n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn point_group_ops_distinct() {
        for kind in LatticeKind::ALL {
            let ops = point_group(kind);
            let probes: Vec<Site> = match kind {
                LatticeKind::Hexagonal => vec![Site::hex(2, 1, 0), Site::hex(1, -2, 1)],
                _ => vec![Site::new(2, 1), Site::new(-1, 3)],
            };
            let mut images: Vec<Vec<Site>> = Vec::new();
            for op in &ops {
                let img: Vec<Site> = probes.iter().map(|s| op(*s)).collect();
                assert!(!images.contains(&img), "{kind}: duplicate group element");
                images.push(img);
            }
        }
    }

    pub(crate) fn random_site(kind: LatticeKind, rng: &mut ChaCha8Rng, range: i32) -> Site {
        let a = rng.gen_range(-range..=range);
        let b = rng.gen_range(-range..=range);
        let sub = if kind == LatticeKind::Hexagonal {
            rng.gen_range(0..2) as u8
        } else {
            0
        };
        Site { a, b, sub }
    }
}

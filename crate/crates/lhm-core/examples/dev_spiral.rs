//! Development tool for the spiral generators: validates wall patterns,
//! prints local violations, and searches corner/center templates.

use lhm_core::lattice::{neighbors, LatticeKind, Site};
use lhm_core::setgeom::SiteSet;
use lhm_core::spiral;
use std::collections::BTreeSet;

fn count_at(set: &SiteSet, s: Site) -> (usize, usize) {
    let mut dots = 0;
    let mut comp = 0;
    for n in neighbors(set.kind, s) {
        if set.contains(n) {
            dots += 1;
        } else {
            comp += 1;
        }
    }
    (dots, comp)
}

/// Every complement site with radius inside [lo, hi] must have exactly
/// (deg-2) dot neighbors and 2 complement neighbors, except `allowed`.
fn bulk_violations(set: &SiteSet, lo: f64, hi: f64, allowed: &BTreeSet<Site>) -> Vec<(Site, usize, usize)> {
    let kind = set.kind;
    let deg = kind.deg();
    let mut out = Vec::new();
    let (la, ha, lb, hb) = set.bbox(2).unwrap();
    let subs: &[u8] = if kind == LatticeKind::Hexagonal { &[0, 1] } else { &[0] };
    for a in la..=ha {
        for b in lb..=hb {
            for &sub in subs {
                let s = Site { a, b, sub };
                if set.contains(s) || allowed.contains(&s) {
                    continue;
                }
                let p = lhm_core::lattice::embed(kind, s);
                let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
                if r < lo || r > hi {
                    continue;
                }
                let (dots, comp) = count_at(set, s);
                if dots != deg - 2 || comp != 2 {
                    out.push((s, dots, comp));
                }
            }
        }
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("z2");
    match mode {
        "z2" => diag(LatticeKind::Square, 2.5, 9.0, 119),
        "tri" => diag(LatticeKind::Triangular, 4.0, 12.0, 200),
        "hex" => diag(LatticeKind::Hexagonal, 6.0, 14.0, 260),
        "z2center" => center_search_square(),
        "lens" => lens(),
        "hexbulk" => hex_bulk_search(),
        "z2joint" => z2_joint_search(),
        "z2probe" => z2_probe(),
        "hexshow" => hex_show(),
        "trijoint" => tri_joint_search(),
        other => eprintln!("unknown mode {other}"),
    }
}

/// Validate the bulk annulus of a large instance and print violations.
fn diag(kind: LatticeKind, lo: f64, hi: f64, n: usize) {
    let seq = spiral::wall_sequence(kind, n);
    println!("{kind}: got {} sites", seq.len());
    let set = SiteSet::from_sites(kind, seq.iter().copied());
    println!("unique: {}", set.len());
    let bad = bulk_violations(&set, lo, hi, &BTreeSet::new());
    println!("bulk violations in [{lo},{hi}]: {}", bad.len());
    for (s, d, c) in bad.iter().take(30) {
        println!("  {s}: dots={d} comp={c}");
    }
    // Tunnel for a few n.
    for nn in [40usize, 80, 160, n.min(240)] {
        match spiral::build_spiral(kind, nn) {
            Ok(inst) => {
                let rep = spiral::validate_instance(&inst);
                println!(
                    "n={nn}: l={} nu*n={} ok={} viol={}",
                    inst.tunnel.len(),
                    kind.nu() * nn,
                    rep.interior_ok,
                    rep.violations.len()
                );
                for v in rep.violations.iter().take(8) {
                    println!("   viol {} dots={} comp={}", v.0, v.1, v.2);
                }
            }
            Err(e) => println!("n={nn}: build failed: {e}"),
        }
    }
}

fn lens() {
    for kind in LatticeKind::ALL {
        println!("--- {kind}");
        for nn in (10..=400).step_by(10) {
            match spiral::build_spiral(kind, nn) {
                Ok(inst) => {
                    let l = inst.tunnel.len() as f64;
                    let nu = kind.nu() as f64 * nn as f64;
                    let dev = (l - nu) / (nn as f64).sqrt();
                    println!("n={nn} l={l} dev/sqrt(n)={dev:.2}");
                }
                Err(e) => println!("n={nn}: {e}"),
            }
        }
    }
}

/// Search a center seed for the square spiral: subsets of candidate sites
/// near the origin such that the whole small instance is exactly-2 clean with
/// a single dead-end terminus adjacent to the origin.
fn center_search_square() {
    // Pool: candidate seed dots near the origin (lap-1 sites excluded).
    let pool: Vec<(i32, i32)> = vec![
        (1, 0), (0, 1), (-1, 0), (0, -1),
        (1, 1), (1, -1), (-1, 1), (-1, -1),
        (2, -1), (-2, 1), (-2, 0), (-2, -1),
        (0, -2), (-1, -2), (1, -2), (0, -3),
    ];
    let n_target = 140;
    let mut found = 0;
    for mask in 0u32..(1 << pool.len()) {
        let mut seed = vec![(0, 0)];
        for (i, &p) in pool.iter().enumerate() {
            if mask & (1 << i) != 0 {
                seed.push(p);
            }
        }
        let mut sites: Vec<Site> = seed.iter().map(|&(a, b)| Site::new(a, b)).collect();
        let mut lap = 1;
        while sites.len() < n_target {
            emit_lap_square_dev(lap, &mut sites);
            lap += 1;
        }
        let set = SiteSet::from_sites(LatticeKind::Square, sites.iter().copied());
        if set.len() != sites.len() {
            continue;
        }
        // Exactly one exposed complement neighbor of the origin, a dead end
        // with three set neighbors; no holes; everything else 2+2 within r=10.
        let exposed: Vec<Site> = neighbors(LatticeKind::Square, Site::ORIGIN)
            .into_iter()
            .filter(|n| !set.contains(*n))
            .collect();
        if exposed.len() != 1 {
            continue;
        }
        let entry = exposed[0];
        let (d, c) = count_at(&set, entry);
        if d != 3 || c != 1 {
            continue;
        }
        let cc = lhm_core::setgeom::complement_components(&set);
        if !cc.holes().is_empty() {
            continue;
        }
        let allowed: BTreeSet<Site> = [entry].into_iter().collect();
        let bad = bulk_violations(&set, 0.0, 10.0, &allowed);
        if bad.is_empty() {
            println!("seed ok (size {}): {seed:?}", seed.len());
            found += 1;
            if found > 12 {
                return;
            }
        }
    }
    if found == 0 {
        println!("no valid center found; widen the pool");
    }
}

fn emit_lap_square_dev(lap: usize, out: &mut Vec<Site>) {
    let r = 3 * lap as i32;
    let mut push = |a: i32, b: i32| out.push(Site::new(a, b));
    push(r - 1, 0);
    push(r, 0);
    for k in (1..r).rev() {
        push(k, r - k);
    }
    push(0, r - 1);
    push(0, r);
    push(-1, r - 1);
    push(-1, r);
    for x in (-r..=-2).rev() {
        push(x, x + r + 1);
    }
    push(-r, 0);
    push(-(r + 1), 0);
    push(-r, -1);
    push(-(r + 1), -1);
    for x in -r..=-1 {
        push(x, -(r + 2) - x);
    }
    push(0, -(r + 1));
    push(0, -(r + 2));
    push(1, -(r + 1));
    push(1, -(r + 2));
    for k in 2..=(r + 2) {
        push(k, k - (r + 3));
    }
}

/// Brute-force periodic dot patterns on the hexagonal lattice: every non-dot
/// site must have exactly one dot neighbor (deg - 2 = 1) and two complement
/// neighbors.
fn hex_bulk_search() {
    // Period search over (a mod pa, b mod pb, sub).
    for pa in 1..=4i32 {
        for pb in 1..=4i32 {
            let cells = (pa * pb * 2) as usize;
            if cells > 16 {
                continue;
            }
            'mask: for mask in 1u32..(1 << cells) {
                let is_dot = |s: Site| -> bool {
                    let ia = s.a.rem_euclid(pa);
                    let ib = s.b.rem_euclid(pb);
                    let idx = ((ib * pa + ia) * 2 + s.sub as i32) as usize;
                    mask & (1 << idx) != 0
                };
                // Validate on a window.
                for a in -6..=6 {
                    for b in -6..=6 {
                        for sub in 0..2u8 {
                            let s = Site::hex(a, b, sub);
                            let ns = neighbors(LatticeKind::Hexagonal, s);
                            if is_dot(s) {
                                // Dots must be isolated (all neighbors free).
                                if ns.iter().any(|n| is_dot(*n)) {
                                    continue 'mask;
                                }
                            } else {
                                let d = ns.iter().filter(|n| is_dot(**n)).count();
                                if d != 1 {
                                    continue 'mask;
                                }
                            }
                        }
                    }
                }
                println!("hex pattern: pa={pa} pb={pb} mask={mask:#x}");
                let mut dots = Vec::new();
                for ib in 0..pb {
                    for ia in 0..pa {
                        for sub in 0..2u8 {
                            if is_dot(Site::hex(ia, ib, sub)) {
                                dots.push((ia, ib, sub));
                            }
                        }
                    }
                }
                println!("  dots per cell: {dots:?}");
            }
        }
    }
    println!("hex bulk search done");
}

// --- E-joint search for the ring-based square spiral -----------------------

/// Concentric diamond rings L1 = 3j with apex pocket dots at N, W, S; the E
/// apex region (window) is controlled by `removals` (ring sites dropped) and
/// `template` (extra dots), both relative to (3j, 0).
fn build_ring_skeleton(
    laps: std::ops::RangeInclusive<usize>,
    removals: &[(i32, i32)],
    template: &[(i32, i32)],
) -> Vec<Site> {
    let mut out = Vec::new();
    for j in laps {
        let r = 3 * j as i32;
        let rm: BTreeSet<Site> = removals
            .iter()
            .map(|&(dx, dy)| Site::new(r + dx, dy))
            .collect();
        // Full ring |x|+|y| = r.
        for x in -r..=r {
            for y in [-(r - x.abs()), r - x.abs()] {
                let s = Site::new(x, y);
                if !rm.contains(&s) && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        // Apex pockets (inward) at N, W, S.
        out.push(Site::new(0, r - 1));
        out.push(Site::new(-(r - 1), 0));
        out.push(Site::new(0, -(r - 1)));
        for &(dx, dy) in template {
            out.push(Site::new(r + dx, dy));
        }
    }
    out
}

fn z2_joint_search() {
    let mut pool_add: Vec<(i32, i32)> = Vec::new();
    for dx in -2..=2i32 {
        for dy in -2..=2i32 {
            if dx == 0 && dy == 0 {
                continue;
            }
            pool_add.push((dx, dy));
        }
    }
    let pool_rm: Vec<(i32, i32)> = vec![(0, 0), (-1, 1), (-1, -1), (-2, 2), (-2, -2)];
    println!("pool sizes: add {} rm {}", pool_add.len(), pool_rm.len());
    let np = pool_add.len();
    let mut hits = 0;
    let mut tested = 0u64;
    for rm_mask in 0u32..(1 << pool_rm.len()) {
        let removals: Vec<(i32, i32)> = pool_rm
            .iter()
            .enumerate()
            .filter(|(i, _)| rm_mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        // Templates of size 0..=3 via index triples (np = skip sentinel).
        for i in 0..=np {
            for j in i..=np {
                for k in j..=np {
                    let mut tpl = Vec::new();
                    for &t in [i, j, k].iter() {
                        if t < np && !tpl.contains(&pool_add[t]) {
                            tpl.push(pool_add[t]);
                        }
                    }
                    // dedup combos: require strictly increasing among real indices
                    if (i < np && j < np && i == j) || (j < np && k < np && j == k) {
                        continue;
                    }
                    tested += 1;
                    if check_joint(&removals, &tpl) {
                        println!("rm={removals:?} tpl={tpl:?}");
                        hits += 1;
                        if hits >= 40 {
                            println!("tested {tested}");
                            return;
                        }
                    }
                }
            }
        }
    }
    println!("done ({hits} hits, tested {tested})");
}

fn l1_violations(set: &SiteSet, lo: i32, hi: i32) -> Vec<(Site, usize, usize)> {
    let deg = set.kind.deg();
    let mut out = Vec::new();
    let (la, ha, lb, hb) = set.bbox(2).unwrap();
    for a in la..=ha {
        for b in lb..=hb {
            let s = Site::new(a, b);
            if set.contains(s) {
                continue;
            }
            let l1 = a.abs() + b.abs();
            if l1 < lo || l1 > hi {
                continue;
            }
            let (dots, comp) = count_at(set, s);
            if dots != deg - 2 || comp != 2 {
                out.push((s, dots, comp));
            }
        }
    }
    out
}

fn check_joint(removals: &[(i32, i32)], template: &[(i32, i32)]) -> bool {
    let sites = build_ring_skeleton(2..=4, removals, template);
    let set = SiteSet::from_sites(LatticeKind::Square, sites.iter().copied());
    if set.len() != sites.len() {
        return false;
    }
    let cc0 = lhm_core::setgeom::complement_components(&set);
    let bad = l1_violations(&set, 5, 10);
    if bad.iter().any(|(s, _, _)| cc0.in_infinite(*s)) {
        return false;
    }
    // Radial channel: the inner region must reach infinity.
    if !cc0.in_infinite(Site::new(2, 0)) {
        return false;
    }
    true
}

fn z2_probe() {
    // Baseline: sealed rings with all four apex pockets; expect clean bulk.
    let configs: Vec<(Vec<(i32, i32)>, Vec<(i32, i32)>)> = vec![
        (vec![], vec![(-1, 0)]),
        (vec![(0, 0)], vec![(0, 1), (0, -1)]),
        (vec![(0, 0), (-1, 1)], vec![(0, 1), (-1, 2)]),
    ];
    for (rm, tpl) in configs {
        let sites = build_ring_skeleton(2..=4, &rm, &tpl);
        let set = SiteSet::from_sites(LatticeKind::Square, sites.iter().copied());
        let cc0 = lhm_core::setgeom::complement_components(&set);
        let bad = l1_violations(&set, 5, 10);
        let real: Vec<_> = bad.iter().filter(|(s, _, _)| cc0.in_infinite(*s)).collect();
        println!(
            "rm={rm:?} tpl={tpl:?}: viol={} inner-reaches-inf={}",
            real.len(),
            cc0.in_infinite(Site::new(2, 0))
        );
        for (s, d, c) in real.iter().take(12) {
            println!("   {s}: dots={d} comp={c}");
        }
    }
}

fn hex_show() {
    // Pattern 0x9009 on pa=4, pb=2: dots at cells
    // (0,0,sub0), (1,0,sub1), (2,1,sub0), (3,1,sub1).
    let is_dot = |s: Site| -> bool {
        let ia = s.a.rem_euclid(4);
        let ib = s.b.rem_euclid(2);
        matches!(
            (ia, ib, s.sub),
            (0, 0, 0) | (1, 0, 1) | (2, 1, 0) | (3, 1, 1)
        )
    };
    // Render in embedding coordinates on a coarse grid.
    let r3 = 3f64.sqrt();
    let mut rows: Vec<Vec<char>> = vec![vec![' '; 100]; 40];
    for a in -10..14i32 {
        for b in -6..10i32 {
            for sub in 0..2u8 {
                let s = Site::hex(a, b, sub);
                let p = lhm_core::lattice::embed(LatticeKind::Hexagonal, s);
                let col = (p[0] / r3 * 4.0 + 30.0).round() as i64;
                let row = (20.0 - p[1] * 1.2).round() as i64;
                if (0..40).contains(&row) && (0..100).contains(&col) {
                    rows[row as usize][col as usize] = if is_dot(s) { 'O' } else { '.' };
                }
            }
        }
    }
    for r in rows {
        let line: String = r.into_iter().collect();
        if !line.trim().is_empty() {
            println!("{}", line.trim_end());
        }
    }
}

// --- Triangular ring spiral: joint search ----------------------------------

fn build_tri_skeleton(
    laps: std::ops::RangeInclusive<usize>,
    removals: &[(i32, i32)],
    template: &[(i32, i32)],
) -> Vec<Site> {
    let mut out = Vec::new();
    for j in laps {
        let r = 2 * j as i32;
        let rm: BTreeSet<Site> = removals
            .iter()
            .map(|&(dx, dy)| Site::new(r + dx, dy))
            .collect();
        let corners = [(r, 0), (0, r), (-r, r), (-r, 0), (0, -r), (r, -r)];
        let dirs = [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)];
        for i in 0..6 {
            let (mut a, mut b) = corners[i];
            for _ in 0..r {
                let s = Site::new(a, b);
                if !rm.contains(&s) {
                    out.push(s);
                }
                a += dirs[i].0;
                b += dirs[i].1;
            }
        }
        for &(dx, dy) in template {
            out.push(Site::new(r + dx, dy));
        }
    }
    out
}

fn tri_violations(set: &SiteSet, lo: u32, hi: u32) -> Vec<(Site, usize, usize)> {
    let deg = set.kind.deg();
    let mut out = Vec::new();
    let (la, ha, lb, hb) = set.bbox(2).unwrap();
    for a in la..=ha {
        for b in lb..=hb {
            let s = Site::new(a, b);
            if set.contains(s) {
                continue;
            }
            let d = lhm_core::lattice::graph_distance(LatticeKind::Triangular, Site::ORIGIN, s);
            if d < lo || d > hi {
                continue;
            }
            let (dots, comp) = count_at(set, s);
            if dots != deg - 2 || comp != 2 {
                out.push((s, dots, comp));
            }
        }
    }
    out
}

fn tri_joint_search() {
    let mut pool_add: Vec<(i32, i32)> = Vec::new();
    for dx in -2..=2i32 {
        for dy in -2..=2i32 {
            if dx == 0 && dy == 0 {
                continue;
            }
            pool_add.push((dx, dy));
        }
    }
    let pool_rm: Vec<(i32, i32)> = vec![(0, 0), (0, -1), (-1, 1), (0, -2), (-2, 2)];
    let np = pool_add.len();
    let mut hits = 0;
    for rm_mask in 0u32..(1 << pool_rm.len()) {
        let removals: Vec<(i32, i32)> = pool_rm
            .iter()
            .enumerate()
            .filter(|(i, _)| rm_mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        for i in 0..=np {
            for j in i..=np {
                for k in j..=np {
                    if (i < np && j < np && i == j) || (j < np && k < np && j == k) {
                        continue;
                    }
                    let mut tpl = Vec::new();
                    for &t in [i, j, k].iter() {
                        if t < np {
                            tpl.push(pool_add[t]);
                        }
                    }
                    let sites = build_tri_skeleton(2..=4, &removals, &tpl);
                    let set = SiteSet::from_sites(LatticeKind::Triangular, sites.iter().copied());
                    if set.len() != sites.len() {
                        continue;
                    }
                    let cc0 = lhm_core::setgeom::complement_components(&set);
                    let bad = tri_violations(&set, 3, 7);
                    if bad.iter().any(|(s, _, _)| cc0.in_infinite(*s)) {
                        continue;
                    }
                    if !cc0.in_infinite(Site::new(1, 0)) {
                        continue;
                    }
                    println!("rm={removals:?} tpl={tpl:?}");
                    hits += 1;
                    if hits >= 25 {
                        return;
                    }
                }
            }
        }
    }
    println!("done ({hits} hits)");
}

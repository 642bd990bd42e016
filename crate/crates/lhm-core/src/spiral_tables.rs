// Per-lattice wall emitters. Each lap appends its sites in winding order, so
// every prefix D_n is a valid stage of the same spiral.
//
// Square lattice: walls are dotted diagonal chains (consecutive dots at
// diagonal steps block every lattice path across the line). A lap consists of
// four arms whose line constants bump by +1 at the N, W and S corners and by
// +0 at the E corner, so each full turn moves outward by 3; every corner dot
// is preceded by a partner dot one step radially inward sealing the corner
// nook of the band below.

// Square lattice: concentric diamond rings |x|+|y| = 3j of dotted diagonal
// walls. Each N/W/S apex carries an inward pocket dot sealing the corner
// nook of the band below. The spiral joint sits just NE of the E apex: the
// ring dot at (r-1, 1) is omitted and jamb dots at (r-2, 1), (r, 1), (r, 2)
// steer the channel radially through the slit. The origin alone seeds the
// center; the innermost channel dead-ends at (0, 1).
fn emit_lap_square(lap: usize, out: &mut Vec<Site>) {
    if lap == 0 {
        out.push(Site::new(0, 0));
        return;
    }
    let r = 3 * lap as i32;
    let mut push = |a: i32, b: i32| out.push(Site::new(a, b));
    // E apex and the joint jambs.
    push(r, 0);
    push(r, 1);
    push(r, 2);
    push(r - 2, 1);
    // NE side ascending, skipping the slit at (r-1, 1).
    for k in (1..=(r - 2)).rev() {
        push(k, r - k);
    }
    // N apex with its inward pocket.
    push(0, r - 1);
    push(0, r);
    // NW side.
    for k in 1..r {
        push(-k, r - k);
    }
    // W apex.
    push(-(r - 1), 0);
    push(-r, 0);
    // SW side.
    for k in 1..r {
        push(-(r - k), -k);
    }
    // S apex.
    push(0, -(r - 1));
    push(0, -r);
    // SE side ascending back toward the joint.
    for k in 1..r {
        push(k, -(r - k));
    }
}

// Triangular lattice: hexagonal rings at graph radius 2j (straight walls one
// row apart from the channel rings between them; ring corners need no special
// treatment). The spiral slit ladder climbs the ray a = 2: each ring drops
// its dot at (2, 2j-2) and gains a jamb at (2, 2j-1); consecutive slits share
// jambs, so the radial passage is forced one lap at a time.
fn emit_lap_triangular(lap: usize, out: &mut Vec<Site>) {
    if lap == 0 {
        out.push(Site::new(0, 0));
        return;
    }
    let r = 2 * lap as i32;
    let slit = Site::new(2, r - 2);
    let jamb = Site::new(2, r - 1);
    // Walk the ring counter-clockwise starting just past the slit.
    let corners = [(r, 0), (0, r), (-r, r), (-r, 0), (0, -r), (r, -r)];
    let dirs = [(-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)];
    let mut ring = Vec::with_capacity(6 * r as usize);
    for i in 0..6 {
        let (mut a, mut b) = corners[i];
        for _ in 0..r {
            ring.push(Site::new(a, b));
            a += dirs[i].0;
            b += dirs[i].1;
        }
    }
    // Rotate so emission starts at the site after the slit, then skip the
    // slit itself and emit the jamb right before where the slit was.
    let slit_pos = ring.iter().position(|s| *s == slit).unwrap_or(0);
    ring.rotate_left(slit_pos);
    for s in ring.into_iter().skip(1) {
        out.push(s);
    }
    out.push(jamb);
}

fn emit_lap_hexagonal(lap: usize, out: &mut Vec<Site>) {
    if lap == 0 {
        out.push(Site::hex(0, 0, 0));
        return;
    }
    // Placeholder rings (to be replaced by the validated pattern).
    let r = 2 * lap as i32;
    for a in -r..=r {
        for b in -r..=r {
            for sub in 0..2u8 {
                let s = Site::hex(a, b, sub);
                let d = crate::lattice::graph_distance(
                    LatticeKind::Hexagonal,
                    Site::ORIGIN,
                    s,
                );
                if d == 3 * r as u32 {
                    out.push(s);
                }
            }
        }
    }
}

use lhm_core::lattice::{LatticeKind::Square, Site};
use lhm_core::spiral;

fn main() {
    for n in [33usize, 70, 119, 180] {
        let inst = spiral::build_spiral(Square, n).unwrap();
        let v = inst.tunnel.vertices();
        println!(
            "n={n}: l={} mouth={} entry={} mid={:?}",
            inst.tunnel.len(),
            v[0],
            v[v.len() - 1],
            &v[..6.min(v.len())]
        );
    }
}

//! Adjacency-checked lattice paths.

use crate::lattice::{are_adjacent, LatticeKind, OrientedEdge, Site};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A sequence of pairwise-adjacent sites. A single site is a path of length 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    kind: LatticeKind,
    verts: Vec<Site>,
}

impl LatticePath {
    pub fn new(kind: LatticeKind, verts: Vec<Site>) -> Result<LatticePath> {
        if verts.is_empty() {
            return Err(Error::InvalidInput("empty path".into()));
        }
        for w in verts.windows(2) {
            if !are_adjacent(kind, w[0], w[1]) {
                return Err(Error::InvalidInput(format!(
                    "non-adjacent path step {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(LatticePath { kind, verts })
    }

    pub fn single(kind: LatticeKind, s: Site) -> LatticePath {
        LatticePath {
            kind,
            verts: vec![s],
        }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    /// Number of steps (edges), not vertices.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Site] {
        &self.verts
    }

    pub fn first(&self) -> Site {
        self.verts[0]
    }

    pub fn last(&self) -> Site {
        *self.verts.last().unwrap()
    }

    pub fn get(&self, i: usize) -> Site {
        self.verts[i]
    }

    /// Vertex range R^v.
    pub fn vertex_range(&self) -> BTreeSet<Site> {
        self.verts.iter().copied().collect()
    }

    /// Oriented-edge range R^e.
    pub fn edge_range(&self) -> BTreeSet<OrientedEdge> {
        self.verts
            .windows(2)
            .map(|w| OrientedEdge {
                from: w[0],
                to: w[1],
            })
            .collect()
    }

    pub fn oriented_edges(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        self.verts.windows(2).map(|w| OrientedEdge {
            from: w[0],
            to: w[1],
        })
    }

    pub fn is_vertex_self_avoiding(&self) -> bool {
        self.vertex_range().len() == self.verts.len()
    }

    /// True when the path is a closed circuit repeating no oriented edge.
    pub fn is_edge_circuit(&self) -> bool {
        if self.first() != self.last() || self.len() == 0 {
            return false;
        }
        self.edge_range().len() == self.len()
    }

    pub fn reversed(&self) -> LatticePath {
        let mut verts = self.verts.clone();
        verts.reverse();
        LatticePath {
            kind: self.kind,
            verts,
        }
    }

    /// Sub-path from step t1 to step t2 inclusive.
    pub fn slice(&self, t1: usize, t2: usize) -> Option<LatticePath> {
        if t1 > t2 || t2 >= self.verts.len() {
            return None;
        }
        Some(LatticePath {
            kind: self.kind,
            verts: self.verts[t1..=t2].to_vec(),
        })
    }

    /// Concatenation; requires `self.last() == other.first()`.
    pub fn concat(&self, other: &LatticePath) -> Result<LatticePath> {
        if self.kind != other.kind {
            return Err(Error::InvalidInput("lattice mismatch".into()));
        }
        if self.last() != other.first() {
            return Err(Error::InvalidInput(format!(
                "cannot concatenate: {} != {}",
                self.last(),
                other.first()
            )));
        }
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&other.verts[1..]);
        Ok(LatticePath {
            kind: self.kind,
            verts,
        })
    }

    /// Rotates a closed circuit so it starts at index `k`.
    pub fn rotated(&self, k: usize) -> Result<LatticePath> {
        if self.first() != self.last() {
            return Err(Error::InvalidInput("rotate requires a closed path".into()));
        }
        let n = self.len();
        let k = k % n.max(1);
        let mut verts = Vec::with_capacity(self.verts.len());
        for i in 0..=n {
            verts.push(self.verts[(k + i) % n]);
        }
        Ok(LatticePath {
            kind: self.kind,
            verts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeKind::Square;

    fn p(verts: &[(i32, i32)]) -> LatticePath {
        LatticePath::new(
            Square,
            verts.iter().map(|&(a, b)| Site::new(a, b)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn basics() {
        let path = p(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(path.len(), 2);
        assert_eq!(path.vertex_range().len(), 3);
        assert_eq!(path.edge_range().len(), 2);
        assert!(path.is_vertex_self_avoiding());
        assert!(LatticePath::new(Square, vec![Site::new(0, 0), Site::new(2, 0)]).is_err());
    }

    #[test]
    fn concat_reverse_slice() {
        let a = p(&[(0, 0), (1, 0)]);
        let b = p(&[(1, 0), (1, 1), (0, 1)]);
        let c = a.concat(&b).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.reversed().first(), Site::new(0, 1));
        let s = c.slice(1, 2).unwrap();
        assert_eq!(s.vertices(), &[Site::new(1, 0), Site::new(1, 1)]);
        assert!(a.concat(&p(&[(5, 5), (5, 6)])).is_err());
    }

    #[test]
    fn circuits() {
        let ring = p(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);
        assert!(ring.is_edge_circuit());
        assert_eq!(ring.len(), 4);
        let rot = ring.rotated(2).unwrap();
        assert_eq!(rot.first(), Site::new(1, 1));
        assert!(rot.is_edge_circuit());
        let doubled = p(&[(0, 0), (1, 0), (0, 0), (1, 0), (1, 1)]);
        assert!(!doubled.is_edge_circuit());
    }
}

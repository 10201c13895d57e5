use super::partition::Partition;
use crate::error::{Error, Result};
use crate::order::Lattice;

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi as usize] = lo;
        true
    }
}

/// The least congruence collapsing `a <= b`, by direct closure: every merge
/// is queued, and each queued pair is translated by `∨ z` and `∧ z` for all `z`.
pub fn principal_congruence(l: &Lattice, a: u32, b: u32) -> Result<Partition> {
    if !l.leq(a, b) {
        return Err(Error::NotComparable(a, b));
    }
    Ok(congruence_generated(l, &[(a, b)]))
}

/// The least congruence containing every pair in `pairs`.
pub fn congruence_generated(l: &Lattice, pairs: &[(u32, u32)]) -> Partition {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(u32, u32)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((x, y)) = queue.pop() {
        let (jx, jy) = (l.join_row(x), l.join_row(y));
        let (mx, my) = (l.meet_row(x), l.meet_row(y));
        for z in 0..n {
            if uf.union(jx[z], jy[z]) {
                queue.push((jx[z], jy[z]));
            }
            if uf.union(mx[z], my[z]) {
                queue.push((mx[z], my[z]));
            }
        }
    }
    let labels: Vec<u32> = (0..n as u32).map(|x| uf.find(x)).collect();
    Partition::from_labels(&labels)
}

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite partial order on `0..n`, stored as its cover relation together
/// with the cached reachability closure.
#[derive(Clone, Debug)]
pub struct Poset {
    upper: Vec<Vec<u32>>,
    lower: Vec<Vec<u32>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    linear: Vec<u32>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.upper == other.upper
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from pairs `x < y`. The pairs need not be covers:
    /// anything implied by transitivity is dropped, so the stored relation is
    /// always the transitive reduction.
    pub fn from_covers(n: usize, covers: &[(u32, u32)]) -> Result<Poset> {
        let mut upper: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(x, y) in covers {
            for v in [x, y] {
                if v as usize >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if x == y {
                return Err(Error::SelfCover(x));
            }
            upper[x as usize].push(y);
        }
        for row in upper.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }

        let linear = linear_extension(&upper)?;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in linear.iter().rev() {
            let x = x as usize;
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &c in &upper[x] {
                set.union_with(&up[c as usize]);
            }
            up[x] = set;
        }

        // Transitive reduction: y is a cover of x unless another successor reaches it.
        for x in 0..n {
            if upper[x].len() < 2 {
                continue;
            }
            let succ = upper[x].clone();
            upper[x].retain(|&y| !succ.iter().any(|&z| z != y && up[z as usize].contains(y as usize)));
        }

        let mut lower: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (x, row) in upper.iter().enumerate() {
            for &y in row {
                lower[y as usize].push(x as u32);
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }
        Ok(Poset { upper, lower, up, down, linear })
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.up[x as usize].contains(y as usize)
    }

    #[inline]
    pub fn lt(&self, x: u32, y: u32) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: u32, y: u32) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn is_cover(&self, x: u32, y: u32) -> bool {
        self.upper[x as usize].binary_search(&y).is_ok()
    }

    pub fn upper_covers(&self, x: u32) -> &[u32] {
        &self.upper[x as usize]
    }

    pub fn lower_covers(&self, x: u32) -> &[u32] {
        &self.lower[x as usize]
    }

    /// `{y : x <= y}`
    pub fn up_set(&self, x: u32) -> &FixedBitSet {
        &self.up[x as usize]
    }

    /// `{y : y <= x}`
    pub fn down_set(&self, x: u32) -> &FixedBitSet {
        &self.down[x as usize]
    }

    /// All cover pairs `(x, y)` with `x ≺ y`, in lexicographic order.
    pub fn covers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |&y| (x as u32, y)))
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    /// A deterministic linear extension (smallest available index first).
    pub fn linear_extension(&self) -> &[u32] {
        &self.linear
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.lower[x as usize].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.upper[x as usize].is_empty()).collect()
    }

    /// Number of pairs `x <= y`, trivial pairs included.
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|s| s.count_ones(..)).sum()
    }

    /// Longest chain from a minimal element, per element.
    pub fn heights(&self) -> Vec<u32> {
        let mut h = vec![0u32; self.len()];
        for &x in &self.linear {
            for &y in &self.upper[x as usize] {
                h[y as usize] = h[y as usize].max(h[x as usize] + 1);
            }
        }
        h
    }

    /// Longest chain to a maximal element, per element.
    pub fn depths(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.len()];
        for &x in self.linear.iter().rev() {
            for &y in &self.upper[x as usize] {
                d[x as usize] = d[x as usize].max(d[y as usize] + 1);
            }
        }
        d
    }

    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut upper = self.lower.clone();
        for row in upper.iter_mut() {
            row.sort_unstable();
        }
        let mut lower = self.upper.clone();
        for row in lower.iter_mut() {
            row.sort_unstable();
        }
        let linear = linear_extension(&upper).expect("dual of an acyclic relation is acyclic");
        debug_assert_eq!(linear.len(), n);
        Poset { upper, lower, up: self.down.clone(), down: self.up.clone(), linear }
    }

    /// The subposet induced on `elements` (kept in the given order).
    pub fn induced(&self, elements: &[u32]) -> Poset {
        let mut index = vec![u32::MAX; self.len()];
        for (i, &e) in elements.iter().enumerate() {
            index[e as usize] = i as u32;
        }
        let mut rel = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for y in self.up[x as usize].ones() {
                let j = index[y];
                if j != u32::MAX && y != x as usize {
                    rel.push((i as u32, j));
                }
            }
        }
        Poset::from_covers(elements.len(), &rel).expect("induced order is acyclic")
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson { n: self.len(), covers: self.covers().map(|(x, y)| [x, y]).collect() }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        let covers: Vec<(u32, u32)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::from_covers(json.n, &covers)
    }
}

/// Wire form of a poset: `{"n": 3, "covers": [[0,1],[1,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[u32; 2]>,
}

fn linear_extension(upper: &[Vec<u32>]) -> Result<Vec<u32>> {
    let n = upper.len();
    let mut indeg = vec![0u32; n];
    for row in upper {
        for &y in row {
            indeg[y as usize] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<u32>> =
        (0..n as u32).filter(|&x| indeg[x as usize] == 0).map(Reverse).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        out.push(x);
        for &y in &upper[x as usize] {
            indeg[y as usize] -= 1;
            if indeg[y as usize] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if out.len() < n {
        let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
        return Err(Error::CycleDetected(stuck as u32));
    }
    Ok(out)
}

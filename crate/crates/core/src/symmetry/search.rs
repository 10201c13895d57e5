//! Isomorphism search between vertex-coloured digraphs: colour refinement on
//! the disjoint union of both graphs, then individualisation with
//! backtracking. Every leaf is verified arc by arc, so hash collisions in the
//! refinement only cost pruning power, never correctness.

use crate::error::{Error, Result};

/// A digraph on `0..n` with an initial colour per vertex.
#[derive(Clone, Debug)]
pub struct Digraph {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    color: Vec<u64>,
}

impl Digraph {
    pub fn new(n: usize, arcs: &[(u32, u32)], color: Vec<u64>) -> Digraph {
        assert_eq!(color.len(), n);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(x, y) in arcs {
            out[x as usize].push(y);
            inn[y as usize].push(x);
        }
        for row in out.iter_mut().chain(inn.iter_mut()) {
            row.sort_unstable();
            row.dedup();
        }
        Digraph { out, inn, color }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    fn has_arc(&self, x: u32, y: u32) -> bool {
        self.out[x as usize].binary_search(&y).is_ok()
    }
}

/// Limits for a search.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Maximum number of refinement nodes before giving up.
    pub budget: u64,
    /// Stop after this many isomorphisms.
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 100_000_000, limit: None }
    }
}

impl SearchOptions {
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// All colour-preserving isomorphisms `a -> b` (up to `opts.limit`), in
/// lexicographic order of the branching choices.
pub fn isomorphisms(a: &Digraph, b: &Digraph, opts: &SearchOptions) -> Result<Vec<Vec<u32>>> {
    let n = a.len();
    if n != b.len() || a.arc_count() != b.arc_count() {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::with_capacity(2 * n);
    let mut inn = Vec::with_capacity(2 * n);
    for (side, g) in [a, b].into_iter().enumerate() {
        let off = side as u32 * n as u32;
        for v in 0..n {
            out.push(g.out[v].iter().map(|&y| y + off).collect::<Vec<u32>>());
            inn.push(g.inn[v].iter().map(|&y| y + off).collect::<Vec<u32>>());
        }
    }
    let raw: Vec<u64> = a.color.iter().chain(b.color.iter()).copied().collect();
    let colors = rank(&raw);
    let mut s = Search { n, out, inn, a, b, opts: *opts, nodes: 0, found: Vec::new() };
    s.descend(colors)?;
    Ok(s.found)
}

struct Search<'g> {
    n: usize,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    a: &'g Digraph,
    b: &'g Digraph,
    opts: SearchOptions,
    nodes: u64,
    found: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.opts.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn descend(&mut self, colors: Vec<u32>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(Error::BudgetExceeded(self.opts.budget));
        }
        let Some(colors) = self.refine(colors) else {
            return Ok(());
        };
        let n = self.n;
        let k = colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut size = vec![0u32; k];
        for &c in &colors {
            size[c as usize] += 1;
        }
        // first class with at least two vertices per side
        let target = (0..k).find(|&c| size[c] > 2);
        let Some(target) = target else {
            let mut map = vec![0u32; n];
            let mut owner = vec![u32::MAX; k];
            for v in n..2 * n {
                owner[colors[v] as usize] = (v - n) as u32;
            }
            for (v, slot) in map.iter_mut().enumerate() {
                *slot = owner[colors[v] as usize];
            }
            if self.verify(&map) {
                self.found.push(map);
            }
            return Ok(());
        };
        let v = (0..n).find(|&v| colors[v] as usize == target).expect("balanced class");
        let fresh = k as u32;
        for w in n..2 * n {
            if colors[w] as usize != target {
                continue;
            }
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            self.descend(next)?;
            if self.done() {
                break;
            }
        }
        Ok(())
    }

    /// Refines to a stable colouring; `None` if the two sides disagree.
    fn refine(&self, mut colors: Vec<u32>) -> Option<Vec<u32>> {
        let total = 2 * self.n;
        let mut k = distinct(&colors);
        let mut sig: Vec<(u32, u64, u64)> = vec![(0, 0, 0); total];
        loop {
            if !self.balanced(&colors, k) {
                return None;
            }
            for v in 0..total {
                let so = self.out[v].iter().fold(0u64, |s, &u| s.wrapping_add(mix(colors[u as usize] as u64)));
                let si = self.inn[v]
                    .iter()
                    .fold(0u64, |s, &u| s.wrapping_add(mix(colors[u as usize] as u64 ^ 0x9e37_79b9)));
                sig[v] = (colors[v], so, si);
            }
            let mut order: Vec<u32> = (0..total as u32).collect();
            order.sort_unstable_by_key(|&v| sig[v as usize]);
            let mut next = 0u32;
            for i in 0..total {
                if i > 0 && sig[order[i] as usize] != sig[order[i - 1] as usize] {
                    next += 1;
                }
                colors[order[i] as usize] = next;
            }
            let nk = next as usize + 1;
            if nk == k {
                return Some(colors);
            }
            k = nk;
        }
    }

    fn balanced(&self, colors: &[u32], k: usize) -> bool {
        let mut bal = vec![0i64; k];
        for (v, &c) in colors.iter().enumerate() {
            bal[c as usize] += if v < self.n { 1 } else { -1 };
        }
        bal.iter().all(|&x| x == 0)
    }

    fn verify(&self, map: &[u32]) -> bool {
        let mut hit = vec![false; self.n];
        for &m in map {
            if hit[m as usize] {
                return false;
            }
            hit[m as usize] = true;
        }
        (0..self.n).all(|x| {
            self.a.color[x] == self.b.color[map[x] as usize]
                && self.a.out[x].iter().all(|&y| self.b.has_arc(map[x], map[y as usize]))
        })
    }
}

fn rank(raw: &[u64]) -> Vec<u32> {
    let mut vals: Vec<u64> = raw.to_vec();
    vals.sort_unstable();
    vals.dedup();
    raw.iter().map(|v| vals.binary_search(v).expect("present") as u32).collect()
}

fn distinct(colors: &[u32]) -> usize {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// splitmix64 finaliser.
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

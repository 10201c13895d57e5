//! Named finite groups, Cayley colour digraphs and graphs with a prescribed
//! automorphism group.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::{
    compose, graph_digraph, group_of, groups_isomorphic, isomorphisms, Digraph, GroupTable,
    PermGroup, SearchOptions,
};

/// A simple undirected graph; edges are stored as sorted pairs `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[u32; 2]>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph { n, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { vertices: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let e: Vec<(u32, u32)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(j.vertices, &e)
    }
}

/// A digraph whose arcs carry a colour (a generator index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorDigraph {
    pub n: usize,
    /// `(tail, head, colour)`
    pub arcs: Vec<(u32, u32, u32)>,
}

impl ColorDigraph {
    /// Colour-preserving automorphisms, found by subdividing every arc with
    /// a vertex that carries the arc's colour.
    pub fn automorphisms(&self) -> Result<PermGroup> {
        let n = self.n;
        let mut arcs = Vec::with_capacity(2 * self.arcs.len());
        let mut color = vec![0u64; n];
        for (i, &(x, y, c)) in self.arcs.iter().enumerate() {
            let m = (n + i) as u32;
            arcs.push((x, m));
            arcs.push((m, y));
            color.push(c as u64 + 1);
        }
        let d = Digraph::new(color.len(), &arcs, color);
        let autos = isomorphisms(&d, &d, &SearchOptions::default())?;
        PermGroup::from_elements(n, autos.into_iter().map(|p| p[..n].to_vec()).collect())
    }
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidTable("cyclic group of order 0".into()));
    }
    let n = n as u32;
    GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
}

/// Symmetries of a regular `n`-gon, order `2n`; element `k + n·e` is `r^k s^e`.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidTable("dihedral group of order 0".into()));
    }
    let n = n as i64;
    let idx = |k: i64, e: i64| (k.rem_euclid(n) + n * e) as u32;
    let mut t = Vec::new();
    for x in 0..2 * n {
        let (a, e) = (x % n, x / n);
        let mut row = Vec::new();
        for y in 0..2 * n {
            let (b, f) = (y % n, y / n);
            let sign = if e == 0 { 1 } else { -1 };
            row.push(idx(a + sign * b, (e + f) % 2));
        }
        t.push(row);
    }
    GroupTable::new(t)
}

/// All permutations of `n` points in lexicographic order, composed as maps.
pub fn symmetric(n: usize) -> Result<GroupTable> {
    if n > 5 {
        return Err(Error::TooLarge { size: n, bound: 5 });
    }
    let mut perms: Vec<Vec<u32>> = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        perms.push(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let index: HashMap<Vec<u32>, u32> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    GroupTable::new(perms.iter().map(|p| perms.iter().map(|q| index[&compose(p, q)]).collect()).collect())
}

pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let (na, nb) = (a.order() as u32, b.order() as u32);
    let mut t = Vec::new();
    for x in 0..na * nb {
        t.push(
            (0..na * nb)
                .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                .collect(),
        );
    }
    GroupTable::new(t)
}

/// Parses `c<n>`, `d<n>`, `s<n>`, `v4`, `trivial`, products `AxB`, and
/// `table:<path>` (a JSON group table file).
pub fn group_from_spec(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::InvalidTable(e.to_string()));
    }
    let lower = spec.to_ascii_lowercase();
    if lower.contains('x') {
        let mut acc: Option<GroupTable> = None;
        for part in lower.split('x') {
            let g = group_from_spec(part)?;
            acc = Some(match acc {
                None => g,
                Some(a) => direct_product(&a, &g)?,
            });
        }
        return acc.ok_or_else(|| Error::Invalid(format!("empty group spec {spec:?}")));
    }
    if lower == "trivial" {
        return cyclic(1);
    }
    if lower == "v4" {
        return direct_product(&cyclic(2)?, &cyclic(2)?);
    }
    let bad = || Error::Invalid(format!("unknown group spec {spec:?}"));
    let (kind, num) = lower.split_at(1.min(lower.len()));
    let n: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "c" => cyclic(n),
        "d" => dihedral(n),
        "s" => symmetric(n),
        _ => Err(bad()),
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Vertices are group elements; the colour-`i` arc leaves `x` for `x·gens[i]`.
pub fn cayley_digraph(g: &GroupTable, gens: &[u32]) -> Result<ColorDigraph> {
    if gens.iter().any(|&x| x as usize >= g.order()) || !g.generates(gens) {
        return Err(Error::NotGenerating);
    }
    let mut arcs = Vec::new();
    for (i, &s) in gens.iter().enumerate() {
        for x in 0..g.order() as u32 {
            arcs.push((x, g.mul(x, s), i as u32));
        }
    }
    Ok(ColorDigraph { n: g.order(), arcs })
}

const FRUCHT_RETRIES: u32 = 4;

/// A graph whose automorphism group is isomorphic to `g`: every colour-`i`
/// arc `x -> y` of a Cayley digraph becomes a path `x - t - h - y`, with a
/// pendant path of `2i+1` vertices on `t` and `2i+2` on `h`. If the result
/// fails certification the pendant lengths grow by 2 and the build retries.
pub fn frucht_graph(g: &GroupTable) -> Result<Graph> {
    if g.order() == 1 {
        return Graph::new(1, &[]);
    }
    let gens = g.small_generating_set();
    let cd = cayley_digraph(g, &gens)?;
    for attempt in 0..FRUCHT_RETRIES {
        let extra = 2 * attempt;
        let mut n = cd.n as u32;
        let mut edges = Vec::new();
        let pendant = |from: u32, len: u32, n: &mut u32, edges: &mut Vec<(u32, u32)>| {
            let mut prev = from;
            for _ in 0..len {
                edges.push((prev, *n));
                prev = *n;
                *n += 1;
            }
        };
        for &(x, y, c) in &cd.arcs {
            let (t, h) = (n, n + 1);
            n += 2;
            edges.extend([(x, t), (t, h), (h, y)]);
            pendant(t, 2 * c + 1 + extra, &mut n, &mut edges);
            pendant(h, 2 * c + 2 + extra, &mut n, &mut edges);
        }
        let graph = Graph::new(n as usize, &edges)?;
        if certify_graph(&graph, g)? {
            return Ok(graph);
        }
        log::debug!("frucht gadget lengths +{extra} failed certification, retrying");
    }
    Err(Error::CertificationFailed(format!(
        "no certified arc gadget after {FRUCHT_RETRIES} sizes"
    )))
}

/// Whether `Aut(graph) ≅ g`.
pub fn certify_graph(graph: &Graph, g: &GroupTable) -> Result<bool> {
    // stop one past |G|: a larger group is rejected before it is enumerated
    let opts = SearchOptions::default().with_limit(g.order() + 1);
    let d = graph_digraph(graph);
    let autos = isomorphisms(&d, &d, &opts)?;
    if autos.len() != g.order() {
        return Ok(false);
    }
    let aut = PermGroup::from_elements(graph.vertex_count(), autos)?;
    groups_isomorphic(&group_of(&aut), g)
}

/// Largest vertex count tried by the exhaustive small-graph search.
pub const SMALL_GRAPH_LIMIT: usize = 6;

/// A graph with automorphism group `g` and as few vertices as possible among
/// graphs on at most [`SMALL_GRAPH_LIMIT`] vertices (first in edge-mask
/// order), else [`frucht_graph`].
pub fn representing_graph(g: &GroupTable) -> Result<Graph> {
    for n in 1..=SMALL_GRAPH_LIMIT {
        let fact: usize = (1..=n).product();
        if fact % g.order() != 0 {
            continue;
        }
        let pairs: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            let edges: Vec<(u32, u32)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let graph = Graph::new(n, &edges)?;
            if certify_graph(&graph, g)? {
                return Ok(graph);
            }
        }
    }
    frucht_graph(g)
}

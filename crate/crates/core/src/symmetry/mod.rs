//! Automorphisms, rigidity, self-duality and group comparison.

mod group;
pub mod search;

pub use group::{
    compose, group_isomorphism, group_of, groups_isomorphic, identity, inverse, is_identity,
    GroupTable, GroupTableJson, PermGroup, Permutation, GROUP_ISO_BOUND,
};
pub use search::{isomorphisms, Digraph, SearchOptions};

use crate::error::Result;
use crate::graph::Graph;
use crate::order::{Lattice, Poset};

/// The cover digraph of `p`, coloured by height, depth and cover degrees,
/// optionally combined with caller-supplied colours.
pub fn cover_digraph(p: &Poset, extra: Option<&[u64]>) -> Digraph {
    let h = p.heights();
    let d = p.depths();
    let color = (0..p.len())
        .map(|x| {
            let base = (h[x] as u64) << 48
                | (d[x] as u64) << 32
                | (p.lower_covers(x as u32).len() as u64) << 16
                | p.upper_covers(x as u32).len() as u64;
            match extra {
                Some(e) => search::mix(base ^ search::mix(e[x])),
                None => base,
            }
        })
        .collect();
    let arcs: Vec<(u32, u32)> = p.covers().collect();
    Digraph::new(p.len(), &arcs, color)
}

/// An order isomorphism `p -> q`, if one exists.
pub fn poset_isomorphic(p: &Poset, q: &Poset) -> Result<Option<Vec<u32>>> {
    poset_isomorphism_with(p, q, &SearchOptions::default())
}

pub fn poset_isomorphism_with(p: &Poset, q: &Poset, opts: &SearchOptions) -> Result<Option<Vec<u32>>> {
    let a = cover_digraph(p, None);
    let b = cover_digraph(q, None);
    Ok(isomorphisms(&a, &b, &opts.with_limit(1))?.pop())
}

/// An order isomorphism `p -> q` mapping colour classes onto colour classes.
pub fn poset_isomorphism_colored(
    p: &Poset,
    q: &Poset,
    cp: &[u64],
    cq: &[u64],
    opts: &SearchOptions,
) -> Result<Option<Vec<u32>>> {
    let a = cover_digraph(p, Some(cp));
    let b = cover_digraph(q, Some(cq));
    Ok(isomorphisms(&a, &b, &opts.with_limit(1))?.pop())
}

pub fn lattice_automorphisms(l: &Lattice) -> Result<PermGroup> {
    lattice_automorphisms_with(l, &SearchOptions::default())
}

pub fn lattice_automorphisms_with(l: &Lattice, opts: &SearchOptions) -> Result<PermGroup> {
    let g = cover_digraph(l.poset(), None);
    let autos = isomorphisms(&g, &g, opts)?;
    PermGroup::from_elements(l.len(), autos)
}

/// Automorphisms fixing every element whose `fixed` colour is distinct.
pub fn automorphisms_fixing(l: &Lattice, fixed: &[u64], opts: &SearchOptions) -> Result<Vec<Permutation>> {
    let g = cover_digraph(l.poset(), Some(fixed));
    isomorphisms(&g, &g, opts)
}

pub fn is_rigid(l: &Lattice) -> Result<bool> {
    let g = cover_digraph(l.poset(), None);
    Ok(isomorphisms(&g, &g, &SearchOptions::default().with_limit(2))?.len() == 1)
}

/// An order-reversing bijection of `l` onto itself, if one exists.
pub fn is_selfdual(l: &Lattice) -> Result<Option<Vec<u32>>> {
    is_selfdual_with(l, &SearchOptions::default())
}

pub fn is_selfdual_with(l: &Lattice, opts: &SearchOptions) -> Result<Option<Vec<u32>>> {
    poset_isomorphism_with(l.poset(), &l.poset().dual(), opts)
}

pub fn graph_automorphisms(g: &Graph) -> Result<PermGroup> {
    graph_automorphisms_with(g, &SearchOptions::default())
}

pub fn graph_automorphisms_with(g: &Graph, opts: &SearchOptions) -> Result<PermGroup> {
    let d = graph_digraph(g);
    let autos = isomorphisms(&d, &d, opts)?;
    PermGroup::from_elements(g.vertex_count(), autos)
}

pub(crate) fn graph_digraph(g: &Graph) -> Digraph {
    let n = g.vertex_count();
    let mut arcs = Vec::with_capacity(2 * g.edges().len());
    let mut deg = vec![0u64; n];
    for &(u, v) in g.edges() {
        arcs.push((u, v));
        arcs.push((v, u));
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }
    Digraph::new(n, &arcs, deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_has_six_automorphisms() {
        assert_eq!(lattice_automorphisms(&Lattice::m_k(3)).unwrap().order(), 6);
        assert!(!is_rigid(&Lattice::m_k(3)).unwrap());
        assert!(is_rigid(&Lattice::chain(4)).unwrap());
    }

    #[test]
    fn selfduality() {
        let sq = Lattice::boolean(2);
        let f = is_selfdual(&sq).unwrap().unwrap();
        assert_eq!(f[0], 3);
        assert_eq!(f[3], 0);
        assert!(is_selfdual(&Lattice::n5()).unwrap().is_some());
    }

    #[test]
    fn chain_vs_m3() {
        let c = Lattice::chain(3);
        assert_eq!(poset_isomorphic(c.poset(), c.poset()).unwrap(), Some(vec![0, 1, 2]));
        let m3 = Lattice::m_k(3);
        assert_eq!(poset_isomorphic(c.poset(), m3.poset()).unwrap(), None);
    }

    #[test]
    fn small_graphs() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(graph_automorphisms(&k3).unwrap().order(), 6);
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(graph_automorphisms(&p3).unwrap().order(), 2);
    }
}

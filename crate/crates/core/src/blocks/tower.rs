//! The rigid simple tower `S(n)`: two copies of the atom/pair lattice `T(n)`
//! stacked around the middle block, with every side edge replaced by the
//! edge block or its dual.

use std::collections::BTreeMap;

use serde::Serialize;

use super::labels::{Label, LabeledLattice};
use super::substitutes::{edge_block, edge_block_dual, middle_block};
use crate::congruence::CongruenceEngine;
use crate::error::{Error, Result};
use crate::order::{glue_hall_dilworth, insert_many, GlueSpec, IntervalRef, Lattice};
use crate::report::Report;
use crate::symmetry::{cover_digraph, is_identity, isomorphisms, poset_isomorphic, SearchOptions};

/// Number of atoms of `T(n)`.
pub fn atom_count(n: u32) -> u32 {
    6 + n
}

fn pairs(m: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
}

/// `0 < g_i < g^{ij} < 1` with `g_k < g^{ij}` iff `k ∈ {i, j}`, for `i < j < 6 + n`.
/// Indices: 0, atoms `1..=m`, coatoms in lexicographic pair order, top.
#[allow(non_snake_case)]
pub fn build_T(n: u32) -> LabeledLattice {
    let m = atom_count(n);
    let k = m * (m - 1) / 2;
    let top = 1 + m + k;
    let mut covers = Vec::new();
    let mut labels = BTreeMap::new();
    for i in 0..m {
        covers.push((0, 1 + i));
        labels.insert(Label::G(i), 1 + i);
    }
    for (c, (i, j)) in pairs(m).enumerate() {
        let c = 1 + m + c as u32;
        covers.push((1 + i, c));
        covers.push((1 + j, c));
        covers.push((c, top));
        labels.insert(Label::GUp(i, j), c);
    }
    let lattice = Lattice::from_covers(top as usize + 1, &covers).expect("T(n) is a lattice");
    let mut t = LabeledLattice::new(lattice);
    t.labels.extend(labels);
    t
}

/// The dual of `T(n)`, with atoms `h_{ij}` and coatoms `h^i`.
#[allow(non_snake_case)]
pub fn build_T_dual(n: u32) -> LabeledLattice {
    build_T(n).dual()
}

/// `T′(n)` below the middle block below `T(n)`: the filter `{h^0, 1}` of
/// `T′(n)` is glued to the ideal below the designated atom, and the filter
/// above the designated coatom to the ideal `{0, g_0}` of `T(n)`.
#[allow(non_snake_case)]
pub fn build_S0(n: u32) -> Result<LabeledLattice> {
    let td = build_T_dual(n);
    let mid = middle_block();
    let t = build_T(n);

    let h0 = td.at(Label::HUp(0));
    let da = mid.at(Label::DesignatedAtom);
    let first = glue_hall_dilworth(
        &td.lattice,
        &mid.lattice,
        &GlueSpec {
            lower_filter_generator: h0,
            upper_ideal_generator: da,
            iso: vec![(h0, mid.lattice.bottom()), (td.lattice.top(), da)],
        },
    )?;
    let dc = first.maps[1][mid.at(Label::DesignatedCoatom) as usize];
    let mtop = first.maps[1][mid.lattice.top() as usize];
    let g0 = t.at(Label::G(0));
    let second = glue_hall_dilworth(
        &first.lattice,
        &t.lattice,
        &GlueSpec {
            lower_filter_generator: dc,
            upper_ideal_generator: g0,
            iso: vec![(dc, t.lattice.bottom()), (mtop, g0)],
        },
    )?;

    let lower = &second.maps[0];
    let upper = &second.maps[1];
    let mut labels = BTreeMap::new();
    for (&k, &v) in &td.labels {
        if k != Label::Top {
            labels.insert(k, lower[first.maps[0][v as usize] as usize]);
        }
    }
    for k in [Label::DesignatedAtom, Label::DesignatedCoatom] {
        labels.insert(k, lower[first.maps[1][mid.at(k) as usize] as usize]);
    }
    for (&k, &v) in &t.labels {
        if k != Label::Bottom {
            labels.insert(k, upper[v as usize]);
        }
    }
    Ok(LabeledLattice { lattice: second.lattice, labels })
}

/// Role of a covering pair of `S₀(n)` in the edge replacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    UpperLeft,
    UpperRight,
    LowerLeft,
    LowerRight,
    Ordinary,
}

/// Classifies the covering pair `(x, y)` from its labels.
pub fn classify_edge(s0: &LabeledLattice, x: u32, y: u32) -> Result<EdgeKind> {
    if !s0.lattice.is_cover(x, y) {
        return Err(Error::NotACover(x, y));
    }
    for lx in s0.labels_of(x) {
        for ly in s0.labels_of(y) {
            match (lx, ly) {
                (Label::G(k), Label::GUp(i, j)) if k == i && i < j => return Ok(EdgeKind::UpperLeft),
                (Label::G(k), Label::GUp(i, j)) if k == j && i < j => return Ok(EdgeKind::UpperRight),
                (Label::H(i, j), Label::HUp(k)) if k == i && i < j => return Ok(EdgeKind::LowerLeft),
                (Label::H(i, j), Label::HUp(k)) if k == j && i < j => return Ok(EdgeKind::LowerRight),
                _ => {}
            }
        }
    }
    Ok(EdgeKind::Ordinary)
}

/// The labelled side edges of `S₀(n)` in label order, with their kinds.
fn side_edges(s0: &LabeledLattice, n: u32) -> Vec<(Label, Label, EdgeKind)> {
    let m = atom_count(n);
    let mut out = Vec::new();
    for (i, j) in pairs(m) {
        out.push((Label::G(i), Label::GUp(i, j), EdgeKind::UpperLeft));
        out.push((Label::G(j), Label::GUp(i, j), EdgeKind::UpperRight));
        out.push((Label::H(i, j), Label::HUp(i), EdgeKind::LowerLeft));
        out.push((Label::H(i, j), Label::HUp(j), EdgeKind::LowerRight));
    }
    out.retain(|&(a, b, _)| s0.get(a).is_some() && s0.get(b).is_some());
    out.sort();
    out
}

/// `S₀(n)` with upper-left and lower-right edges replaced by the edge block
/// and upper-right and lower-left edges by its dual.
#[allow(non_snake_case)]
pub fn build_S(n: u32) -> Result<LabeledLattice> {
    let s0 = build_S0(n)?;
    let edge = edge_block();
    let dual = edge_block_dual();
    let edges = side_edges(&s0, n);
    let mut items = Vec::with_capacity(edges.len());
    for &(a, b, kind) in &edges {
        let (x, y) = (s0.at(a), s0.at(b));
        debug_assert_eq!(classify_edge(&s0, x, y)?, kind);
        let k = match kind {
            EdgeKind::UpperLeft | EdgeKind::LowerRight => &edge.lattice,
            _ => &dual.lattice,
        };
        items.push((IntervalRef::new(x, y), k));
    }
    let built = insert_many(&s0.lattice, &items)?;
    Ok(LabeledLattice { lattice: built.lattice, labels: s0.labels })
}

fn binom2(m: u32) -> usize {
    (m * (m - 1) / 2) as usize
}

/// Minimum and maximum, over all maximal chains, of the number of replaced
/// side edges the chain passes through.
fn chain_crossings(s: &LabeledLattice, n: u32) -> (u32, u32) {
    let l = &s.lattice;
    let mut owner = vec![u32::MAX; l.len()];
    for (e, (a, b, _)) in side_edges(s, n).into_iter().enumerate() {
        let (x, y) = (s.at(a), s.at(b));
        for z in l.interval(x, y).expect("labels are ordered") {
            if z != x && z != y {
                owner[z as usize] = e as u32;
            }
        }
    }
    let p = l.poset();
    let mut lo = vec![0u32; l.len()];
    let mut hi = vec![0u32; l.len()];
    for &y in p.linear_extension() {
        let below = p.lower_covers(y);
        if below.is_empty() {
            continue;
        }
        let step = |z: u32| (owner[y as usize] != u32::MAX && owner[y as usize] != owner[z as usize]) as u32;
        lo[y as usize] = below.iter().map(|&z| lo[z as usize] + step(z)).min().unwrap_or(0);
        hi[y as usize] = below.iter().map(|&z| hi[z as usize] + step(z)).max().unwrap_or(0);
    }
    (lo[l.top() as usize], hi[l.top() as usize])
}

/// Checks every structural claim about `S(n)`.
#[allow(non_snake_case)]
pub fn verify_S(s: &LabeledLattice, n: u32) -> Result<Report> {
    let l = &s.lattice;
    let m = atom_count(n);
    let mut r = Report::new();

    let e = CongruenceEngine::new(l);
    r.push("simple", e.is_simple(), format!("{} join-irreducibles", e.join_irreducibles().len()));

    let g = cover_digraph(l.poset(), None);
    let autos = isomorphisms(&g, &g, &SearchOptions::default().with_limit(2))?;
    let witness = autos.iter().find(|p| !is_identity(p));
    r.push(
        "rigid",
        witness.is_none(),
        match witness {
            Some(p) => format!("nontrivial automorphism moving {}", p.iter().enumerate().filter(|&(i, &x)| i as u32 != x).count()),
            None => "only the identity".into(),
        },
    );

    let dual = l.poset().dual();
    let f = poset_isomorphic(l.poset(), &dual)?;
    match &f {
        Some(f) => {
            r.push("selfdual", true, "order-reversing bijection found");
            let bad = (0..m).find(|&i| {
                let gi = f[s.at(Label::G(i)) as usize];
                !s.labels_of(gi).iter().any(|k| matches!(k, Label::HUp(_)))
            });
            r.push(
                "duality swaps g and h",
                bad.is_none(),
                match bad {
                    Some(i) => format!("g_{i} is not sent to an h-coatom"),
                    None => "every g_i is sent to some h^k".into(),
                },
            );
        }
        None => {
            r.push("selfdual", false, "not isomorphic to its dual");
            r.push("duality swaps g and h", false, "no order-reversing bijection");
        }
    }

    r.push("length", l.length() == 12, format!("length {}", l.length()));
    r.push("ranked", l.is_ranked(), if l.is_ranked() { "graded" } else { "maximal chains differ" });

    let heights = l.heights();
    let mut h4: Vec<u32> = (0..l.len() as u32).filter(|&x| heights[x as usize] == 4).collect();
    h4.sort_unstable();
    let mut hup: Vec<u32> = (0..m).map(|i| s.at(Label::HUp(i))).collect();
    hup.sort_unstable();
    r.push("height 4 is exactly the h^i", h4 == hup, format!("{} elements of height 4, {} h-coatoms", h4.len(), hup.len()));

    let bc = l.poset().upper_covers(l.bottom()).len();
    r.push("bottom cover count", bc == binom2(m), format!("{bc}, want {}", binom2(m)));

    let t = 2 + m as usize + binom2(m);
    let s0 = 2 * t + middle_block().lattice.len() - 4;
    let want = s0 + 4 * binom2(m) * (edge_block().lattice.len() - 2);
    r.push("size", l.len() == want, format!("{} elements, want {want}", l.len()));

    let broken = pairs(m).find(|&(i, j)| {
        !(l.poset().lt(s.at(Label::G(i)), s.at(Label::GUp(i, j)))
            && l.poset().lt(s.at(Label::G(j)), s.at(Label::GUp(i, j)))
            && l.poset().lt(s.at(Label::H(i, j)), s.at(Label::HUp(i)))
            && l.poset().lt(s.at(Label::H(i, j)), s.at(Label::HUp(j))))
    });
    r.push(
        "labels survive",
        broken.is_none(),
        match broken {
            Some((i, j)) => format!("order broken at pair ({i}, {j})"),
            None => "all g_i < g^ij and h_ij < h^i hold".into(),
        },
    );

    let (g0, g1) = (s.at(Label::G(0)), s.at(Label::G(1)));
    let (sub, _) = l.interval_lattice(g0, l.join(g0, g1))?;
    let iso = poset_isomorphic(sub.poset(), edge_block().lattice.poset())?;
    r.push("[g_0, g_0 v g_1] is the edge block", iso.is_some(), format!("{} elements", sub.len()));

    let (lo, hi) = chain_crossings(s, n);
    r.push("chain audit", lo == 2 && hi == 2, format!("maximal chains cross {lo}..={hi} replaced edges"));
    Ok(r)
}

/// One check per pair of lattices: the pair is not isomorphic.
pub fn pairwise_nonisomorphic(items: &[(String, &Lattice)]) -> Result<Report> {
    let mut r = Report::new();
    for (i, (a, la)) in items.iter().enumerate() {
        for (b, lb) in &items[i + 1..] {
            let iso = poset_isomorphic(la.poset(), lb.poset())?;
            r.push(format!("{a} vs {b}"), iso.is_none(), if iso.is_none() { "not isomorphic" } else { "isomorphic" });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::is_simple;

    #[test]
    fn t_counts() {
        let t0 = build_T(0);
        assert_eq!(t0.lattice.len(), 23);
        assert_eq!(t0.lattice.length(), 3);
        assert!(is_simple(&t0.lattice));
        let t1 = build_T(1);
        assert_eq!(t1.lattice.len(), 30);
        assert!(t1.get(Label::G(6)).is_some());
        let c = t0.at(Label::GUp(2, 4));
        assert_eq!(t0.lattice.poset().lower_covers(c), &[t0.at(Label::G(2)), t0.at(Label::G(4))]);
        let d = build_T_dual(0);
        assert_eq!(d.lattice.poset().upper_covers(d.at(Label::H(0, 1))).len(), 2);
    }

    #[test]
    fn s0_shape() {
        let s0 = build_S0(0).unwrap();
        assert_eq!(s0.lattice.len(), 23 + 23 + 12 - 4);
        assert_eq!(s0.lattice.length(), 8);
        assert!(is_simple(&s0.lattice));
        let x = s0.at(Label::G(0));
        assert_eq!(classify_edge(&s0, x, s0.at(Label::GUp(0, 1))).unwrap(), EdgeKind::UpperLeft);
        assert_eq!(classify_edge(&s0, s0.at(Label::G(1)), s0.at(Label::GUp(0, 1))).unwrap(), EdgeKind::UpperRight);
        assert_eq!(classify_edge(&s0, s0.at(Label::H(0, 1)), s0.at(Label::HUp(1))).unwrap(), EdgeKind::LowerRight);
        assert_eq!(classify_edge(&s0, s0.at(Label::H(0, 1)), s0.at(Label::HUp(0))).unwrap(), EdgeKind::LowerLeft);
        assert_eq!(classify_edge(&s0, s0.at(Label::Bottom), s0.at(Label::H(0, 1))).unwrap(), EdgeKind::Ordinary);
        assert!(matches!(classify_edge(&s0, s0.at(Label::Bottom), s0.lattice.top()), Err(Error::NotACover(..))));
        assert_eq!(side_edges(&s0, 0).len(), 60);
    }

    #[test]
    fn s0_verifies() {
        let s = build_S(0).unwrap();
        assert_eq!(s.lattice.len(), 54 + 9 * 60);
        let r = verify_S(&s, 0).unwrap();
        assert!(r.passed(), "{r}");
    }
}

//! Builds a lattice whose principal congruences form a given bounded poset
//! and whose automorphism group is a given finite group.
//!
//! Pipeline: a graph with the right automorphism group, the quasiorder
//! `ν` on `H = P ∪ V`, a frame of prime intervals joined by forcing gadgets,
//! and finally each interval inflated with a rigid simple block `S(ι)`.

mod frame;
mod gadget;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

pub use frame::{Frame, Role};
pub use gadget::{certify_gadget, search_gadget, GadgetKind, GadgetTemplate, DOUBLE_EXTRA, ONE_WAY_EXTRA};

use crate::blocks::{build_S, LabeledLattice};
use crate::congruence::{quotient_order, CongruenceEngine, QuasiOrder};
use crate::error::{Error, Result};
use crate::graph::{representing_graph, Graph};
use crate::order::{insert_many, IntervalRef, Lattice, Poset};
use crate::report::Report;
use crate::symmetry::{
    group_isomorphism, group_of, is_selfdual_with, lattice_automorphisms_with, poset_isomorphic, GroupTable,
    SearchOptions,
};

/// The claimed length of the constructed lattice, reported for comparison.
pub const CLAIMED_LENGTH: u32 = 16;

/// A bounded poset with at least two elements and a finite group.
#[derive(Clone, Debug)]
pub struct RepresentationInput {
    pub poset: Poset,
    pub group: GroupTable,
}

impl RepresentationInput {
    pub fn new(poset: Poset, group: GroupTable) -> Result<Self> {
        bounds(&poset)?;
        Ok(RepresentationInput { poset, group })
    }
}

/// `(bottom, top)` of a bounded poset with at least two elements.
fn bounds(p: &Poset) -> Result<(u32, u32)> {
    if p.len() < 2 {
        return Err(Error::Empty);
    }
    match (p.minimal_elements().as_slice(), p.maximal_elements().as_slice()) {
        (&[b], &[t]) => Ok((b, t)),
        _ => Err(Error::Unbounded),
    }
}

/// `P` without its bounds, in index order.
fn inner(p: &Poset) -> Result<Vec<u32>> {
    let (b, t) = bounds(p)?;
    Ok((0..p.len() as u32).filter(|&x| x != b && x != t).collect())
}

/// `ν` on `H = P ∪ V`, with `V` at indices `|P|..|P| + v`: the order of
/// `P` together with every `h <= 1` and `h <= v`.
pub fn build_h_nu(p: &Poset, v: usize) -> Result<QuasiOrder> {
    let (_, top) = bounds(p)?;
    let np = p.len();
    let n = np + v;
    let mut pairs = Vec::new();
    for x in 0..np as u32 {
        pairs.extend(p.up_set(x).ones().map(|y| (x, y as u32)));
    }
    for h in 0..n as u32 {
        pairs.push((h, top));
        pairs.extend((np..n).map(|w| (h, w as u32)));
    }
    QuasiOrder::from_relation(n, &pairs)
}

/// The arrows: `(1, v)` for every vertex, `(p, q)` for `p < q` inside `P`,
/// then both directions of every graph edge, each group lexicographic.
pub fn build_ij(p: &Poset, g: &Graph) -> Result<Vec<(u32, u32)>> {
    let (bottom, top) = bounds(p)?;
    let np = p.len() as u32;
    let nv = g.vertex_count() as u32;
    let mut arrows: Vec<(u32, u32)> = (0..nv).map(|v| (top, np + v)).collect();
    let mid = inner(p)?;
    for &x in &mid {
        for &y in &mid {
            if p.lt(x, y) {
                arrows.push((x, y));
            }
        }
    }
    for &(u, v) in g.edges() {
        arrows.push((np + u, np + v));
        arrows.push((np + v, np + u));
    }

    let n = (np + nv) as usize;
    let mut gens = arrows.clone();
    for h in 0..n as u32 {
        gens.push((bottom, h));
        gens.push((h, top));
    }
    if QuasiOrder::generated_by(n, &gens)? != build_h_nu(p, nv as usize)? {
        return Err(Error::GenerationFailure);
    }
    Ok(arrows)
}

/// The frame for `P` and graph `g`: chains for the inner elements of `P`
/// and for the vertices, the anchor registered under the top of `P`, and a
/// gadget for every arrow (one double gadget per graph edge).
pub fn build_frame(p: &Poset, g: &Graph) -> Result<Frame> {
    let (_, top) = bounds(p)?;
    let np = p.len() as u32;
    let mut keys = inner(p)?;
    keys.extend((0..g.vertex_count() as u32).map(|v| np + v));
    let mut f = Frame::new(&keys, top)?;
    let one_way = GadgetTemplate::one_way();
    let double = GadgetTemplate::double();
    for (x, y) in build_ij(p, g)? {
        let edge = x >= np && y >= np;
        if edge {
            if !f.gadgets().contains_key(&(x, y)) {
                f.insert_gadget(x, y, &double)?;
            }
        } else {
            f.insert_gadget(x, y, &one_way)?;
        }
    }
    Ok(f)
}

/// Checks that `Princ` of the frame is `P` (through `ν`), that every
/// registered interval admits insertion, and that the anchor and vertex
/// intervals generate the full congruence.
pub fn certify_frame(f: &Frame, p: &Poset, nu: &QuasiOrder) -> Result<Report> {
    let mut r = Report::new();
    let l = f.lattice();
    let e = CongruenceEngine::new(l);
    let princ = e.principal_poset();
    let (quot, _) = quotient_order(nu);
    let a = poset_isomorphic(&princ.poset, &quot)?;
    r.push("Princ(frame) = H/ν", a.is_some(), format!("{} principal congruences, {} classes", princ.len(), quot.len()));
    let b = poset_isomorphic(&quot, p)?;
    r.push("H/ν = P", b.is_some(), format!("{} classes, |P| = {}", quot.len(), p.len()));

    let bad = f.registry().iter().find_map(|(&k, &iv)| match e.insertion_precondition_witness(iv) {
        Ok(Some(w)) => Some(Ok((k, w))),
        Ok(None) => None,
        Err(err) => Some(Err(err)),
    });
    let bad = bad.transpose()?;
    r.push(
        "insertion precondition",
        bad.is_none(),
        match bad {
            Some((k, (u, v))) => format!("interval {k}: con({u}, {v}) is not the full congruence"),
            None => format!("{} intervals", f.registry().len()),
        },
    );

    let np = p.len() as u32;
    let partial = f.registry().iter().find(|(&k, iv)| (k >= np || k == f.anchor_key()) && !e.is_full(&e.con(iv.lo, iv.hi)));
    r.push(
        "anchor and vertex intervals generate the full congruence",
        partial.is_none(),
        match partial {
            Some((k, _)) => format!("interval {k} does not"),
            None => String::new(),
        },
    );
    Ok(r)
}

/// `ι_p = 1, 2, …` over the inner elements of `P` in index order, and
/// `ι_v = 0` for every vertex; keyed like the frame registry.
pub fn assign_blocks(p: &Poset, vertices: usize) -> Result<BTreeMap<u32, u32>> {
    let np = p.len() as u32;
    let mut out: BTreeMap<u32, u32> = inner(p)?.into_iter().zip(1..).collect();
    out.extend((0..vertices as u32).map(|v| (np + v, 0)));
    Ok(out)
}

/// An inflated frame: the lattice and, per key, the block index `ι` and the
/// embedding of `S(ι)`.
#[derive(Clone, Debug)]
pub struct Inflated {
    pub lattice: Lattice,
    pub copies: Vec<InflatedCopy>,
}

#[derive(Clone, Debug)]
pub struct InflatedCopy {
    pub key: u32,
    pub iota: u32,
    pub interval: IntervalRef,
    pub map: Vec<u32>,
}

/// Replaces each assigned interval `[a_x, b_x]` with its own copy of `S(ι_x)`.
pub fn inflate(f: &Frame, assignment: &BTreeMap<u32, u32>) -> Result<Inflated> {
    let e = CongruenceEngine::new(f.lattice());
    let mut blocks: BTreeMap<u32, LabeledLattice> = BTreeMap::new();
    let mut items = Vec::new();
    for (&key, &iota) in assignment {
        let iv = f.interval(key)?;
        if e.insertion_precondition_witness(iv)?.is_some() {
            return Err(Error::PreconditionFailed { lo: iv.lo, hi: iv.hi });
        }
        if let std::collections::btree_map::Entry::Vacant(v) = blocks.entry(iota) {
            v.insert(build_S(iota)?);
        }
        items.push((key, iota, iv));
    }
    let refs: Vec<(IntervalRef, &Lattice)> = items.iter().map(|&(_, iota, iv)| (iv, &blocks[&iota].lattice)).collect();
    let built = insert_many(f.lattice(), &refs)?;
    let copies = items
        .into_iter()
        .zip(built.maps.into_iter().skip(1))
        .map(|((key, iota, interval), map)| InflatedCopy { key, iota, interval, map })
        .collect();
    Ok(Inflated { lattice: built.lattice, copies })
}

/// Everything `represent` produced on the way.
#[derive(Clone, Debug)]
pub struct Representation {
    pub graph: Graph,
    pub nu: QuasiOrder,
    pub frame: Frame,
    pub frame_report: Report,
    pub assignment: BTreeMap<u32, u32>,
    pub inflated: Inflated,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Representation {
    pub fn lattice(&self) -> &Lattice {
        &self.inflated.lattice
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs the whole construction for `input`.
pub fn represent(input: &RepresentationInput) -> Result<Representation> {
    let mut timings_ms = BTreeMap::new();
    let t = Instant::now();
    let graph = representing_graph(&input.group)?;
    timings_ms.insert("graph".to_string(), ms(t));
    log::info!("graph: {} vertices, {} edges", graph.vertex_count(), graph.edges().len());

    let t = Instant::now();
    let nu = build_h_nu(&input.poset, graph.vertex_count())?;
    let frame = build_frame(&input.poset, &graph)?;
    let frame_report = certify_frame(&frame, &input.poset, &nu)?;
    timings_ms.insert("frame".to_string(), ms(t));
    if !frame_report.passed() {
        return Err(Error::CertificationFailed(frame_report.to_string()));
    }
    log::info!("frame: {} elements", frame.lattice().len());

    let t = Instant::now();
    let assignment = assign_blocks(&input.poset, graph.vertex_count())?;
    let inflated = inflate(&frame, &assignment)?;
    timings_ms.insert("inflate".to_string(), ms(t));
    log::info!("lattice: {} elements", inflated.lattice.len());
    Ok(Representation { graph, nu, frame, frame_report, assignment, inflated, timings_ms })
}

/// Outcome of checking a constructed lattice against its inputs.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub elements: usize,
    /// Bijection from `Princ L` (indexed as computed) onto `P`.
    pub princ_iso: Option<Vec<u32>>,
    /// Isomorphism from the automorphism group's table onto `G`.
    pub aut_iso: Option<Vec<u32>>,
    pub aut_order: usize,
    pub length: u32,
    pub length_matches_claim: bool,
    /// `None` when the search budget ran out.
    pub selfdual: Option<bool>,
    pub timings_ms: BTreeMap<String, f64>,
    pub checks: Report,
}

impl RepresentationReport {
    /// The two isomorphisms hold.
    pub fn passed(&self) -> bool {
        self.princ_iso.is_some() && self.aut_iso.is_some()
    }
}

/// Computes `Princ L` and `Aut L` and compares them with `p` and `g`; also
/// measures length and self-duality.
pub fn verify_representation(l: &Lattice, p: &Poset, g: &GroupTable, opts: &SearchOptions) -> Result<RepresentationReport> {
    let mut timings_ms = BTreeMap::new();
    let mut checks = Report::new();

    let t = Instant::now();
    let princ = CongruenceEngine::new(l).principal_poset();
    let princ_iso = poset_isomorphic(&princ.poset, p)?;
    timings_ms.insert("princ".to_string(), ms(t));
    checks.push(
        "Princ L = P",
        princ_iso.is_some(),
        format!("{} principal congruences, |P| = {}", princ.len(), p.len()),
    );

    let t = Instant::now();
    let aut = lattice_automorphisms_with(l, opts)?;
    let table = group_of(&aut);
    let aut_iso = group_isomorphism(&table, g)?;
    timings_ms.insert("aut".to_string(), ms(t));
    checks.push("Aut L = G", aut_iso.is_some(), format!("|Aut L| = {}, |G| = {}", aut.order(), g.order()));

    let t = Instant::now();
    let length = l.length();
    let selfdual = match is_selfdual_with(l, opts) {
        Ok(f) => Some(f.is_some()),
        Err(Error::BudgetExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    timings_ms.insert("selfdual".to_string(), ms(t));

    Ok(RepresentationReport {
        elements: l.len(),
        princ_iso,
        aut_iso,
        aut_order: aut.order(),
        length,
        length_matches_claim: length == CLAIMED_LENGTH,
        selfdual,
        timings_ms,
        checks,
    })
}

/// Structural audits of a representation: recognisable block bottoms,
/// pairwise distinct inner blocks, and graph recovery from gadgets.
pub fn audit_representation(rep: &Representation, p: &Poset) -> Result<Report> {
    let mut r = Report::new();
    let l = rep.lattice();
    let pos = l.poset();

    // the bottom of each copy of S(ι) is a_x; compare with gadget and anchor elements
    let mut in_block = vec![false; l.len()];
    for c in &rep.inflated.copies {
        for &x in &c.map {
            in_block[x as usize] = true;
        }
    }
    let min_block = rep.inflated.copies.iter().map(|c| pos.upper_covers(c.interval.lo).len()).min().unwrap_or(usize::MAX);
    let max_other = (0..l.len() as u32)
        .filter(|&x| !in_block[x as usize] && x != l.bottom())
        .map(|x| pos.upper_covers(x).len())
        .max()
        .unwrap_or(0);
    r.push(
        "block bottoms are recognisable",
        min_block >= 15 && max_other < 15,
        format!("block bottoms have >= {min_block} upper covers, gadget and anchor elements <= {max_other}"),
    );

    let np = p.len() as u32;
    let inner_copies: Vec<&InflatedCopy> = rep.inflated.copies.iter().filter(|c| c.key < np).collect();
    let mut distinct = true;
    for (i, a) in inner_copies.iter().enumerate() {
        for b in &inner_copies[i + 1..] {
            let (la, _) = l.interval_lattice(a.interval.lo, a.interval.hi)?;
            let (lb, _) = l.interval_lattice(b.interval.lo, b.interval.hi)?;
            if poset_isomorphic(la.poset(), lb.poset())?.is_some() {
                distinct = false;
            }
        }
    }
    r.push("inner intervals pairwise non-isomorphic", distinct, format!("{} inner intervals", inner_copies.len()));

    let mut recovered: Vec<(u32, u32)> = rep
        .frame
        .gadgets()
        .keys()
        .filter(|&&(x, y)| x >= np && y >= np && x < y)
        .map(|&(x, y)| (x - np, y - np))
        .collect();
    recovered.sort_unstable();
    r.push("gadgets recover the graph", recovered == rep.graph.edges(), format!("{} edges", recovered.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Lattice;

    fn chain(n: usize) -> Poset {
        Lattice::chain(n).poset().clone()
    }

    #[test]
    fn h_nu_of_small_chain() {
        let nu = build_h_nu(&chain(2), 1).unwrap();
        assert_eq!(nu.len(), 3);
        let (q, _) = quotient_order(&nu);
        assert!(poset_isomorphic(&q, &chain(2)).unwrap().is_some());
    }

    #[test]
    fn arrows() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(build_ij(&chain(2), &g).unwrap(), vec![(1, 2)]);
        assert_eq!(build_ij(&chain(3), &g).unwrap(), vec![(2, 3)]);
        let diamond = Lattice::boolean(2).poset().clone();
        assert_eq!(build_ij(&diamond, &g).unwrap(), vec![(3, 4)]);
        let four = chain(4);
        assert_eq!(build_ij(&four, &g).unwrap(), vec![(3, 4), (1, 2)]);
    }

    #[test]
    fn frames_certify() {
        for (p, g) in [
            (chain(2), Graph::new(1, &[]).unwrap()),
            (chain(3), Graph::new(2, &[]).unwrap()),
            (chain(4), Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()),
            (Lattice::boolean(2).poset().clone(), Graph::new(2, &[(0, 1)]).unwrap()),
        ] {
            let nu = build_h_nu(&p, g.vertex_count()).unwrap();
            let f = build_frame(&p, &g).unwrap();
            let r = certify_frame(&f, &p, &nu).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn missing_vertex_gadget_fails_certification() {
        let p = chain(2);
        let nu = build_h_nu(&p, 1).unwrap();
        let f = Frame::new(&[2], 1).unwrap();
        let r = certify_frame(&f, &p, &nu).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn block_assignment() {
        let a = assign_blocks(&chain(3), 2).unwrap();
        assert_eq!(a.into_iter().collect::<Vec<_>>(), vec![(1, 1), (3, 0), (4, 0)]);
    }
}

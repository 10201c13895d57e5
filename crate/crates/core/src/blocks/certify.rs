use serde::Serialize;

use super::labels::{Label, LabeledLattice};
use crate::congruence::CongruenceEngine;
use crate::error::Result;
use crate::report::Report;
use crate::symmetry::{is_identity, isomorphisms, cover_digraph, poset_isomorphism_colored, poset_isomorphism_with, SearchOptions};

/// Required relation between a block and its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SelfDualMode {
    Unconstrained,
    SelfDual,
    /// Self-dual via a map exchanging the designated atom and coatom.
    SwapsDesignated,
    NotSelfDual,
}

/// The properties a block must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSpec {
    pub size: Option<usize>,
    pub length: Option<u32>,
    pub graded: bool,
    pub simple: bool,
    pub rigid: bool,
    pub selfdual: SelfDualMode,
}

impl BlockSpec {
    pub fn middle() -> Self {
        BlockSpec {
            size: None,
            length: Some(4),
            graded: true,
            simple: true,
            rigid: true,
            selfdual: SelfDualMode::SwapsDesignated,
        }
    }

    pub fn anchor() -> Self {
        BlockSpec { size: None, length: None, graded: false, simple: true, rigid: true, selfdual: SelfDualMode::SelfDual }
    }

    pub fn edge() -> Self {
        BlockSpec {
            size: Some(11),
            length: Some(3),
            graded: true,
            simple: true,
            rigid: true,
            selfdual: SelfDualMode::NotSelfDual,
        }
    }
}

/// Checks every property of `spec`, reporting a witness for each failure.
pub fn certify_block(b: &LabeledLattice, spec: &BlockSpec) -> Result<Report> {
    let l = &b.lattice;
    let mut r = Report::new();
    if let Some(n) = spec.size {
        r.push("size", l.len() == n, format!("{} elements, want {n}", l.len()));
    }
    if let Some(len) = spec.length {
        r.push("length", l.length() == len, format!("length {}, want {len}", l.length()));
    }
    if spec.graded {
        r.push("graded", l.is_ranked(), if l.is_ranked() { "all maximal chains equal" } else { "chains differ" });
    }
    if spec.simple {
        let e = CongruenceEngine::new(l);
        let bad = l.covers().find(|&(x, y)| !e.is_full(e.cover_con(x, y).expect("cover")));
        r.push(
            "simple",
            bad.is_none() && l.len() >= 2,
            match bad {
                Some((x, y)) => format!("con({x}, {y}) is not the full congruence"),
                None => "every cover generates the full congruence".into(),
            },
        );
    }
    if spec.rigid {
        let g = cover_digraph(l.poset(), None);
        let autos = isomorphisms(&g, &g, &SearchOptions::default().with_limit(2))?;
        let witness = autos.iter().find(|p| !is_identity(p));
        r.push(
            "rigid",
            witness.is_none(),
            match witness {
                Some(p) => format!("nontrivial automorphism {p:?}"),
                None => "only the identity".into(),
            },
        );
    }
    let dual = l.poset().dual();
    match spec.selfdual {
        SelfDualMode::Unconstrained => {}
        SelfDualMode::SelfDual | SelfDualMode::NotSelfDual => {
            let f = poset_isomorphism_with(l.poset(), &dual, &SearchOptions::default())?;
            let want = spec.selfdual == SelfDualMode::SelfDual;
            r.push(
                "selfdual",
                f.is_some() == want,
                match &f {
                    Some(f) => format!("order-reversing bijection {f:?}"),
                    None => "not isomorphic to its dual".into(),
                },
            );
        }
        SelfDualMode::SwapsDesignated => {
            let (Some(a), Some(c)) = (b.get(Label::DesignatedAtom), b.get(Label::DesignatedCoatom)) else {
                r.push("selfdual", false, "designated atom or coatom missing");
                return Ok(r);
            };
            let mut cl = vec![0u64; l.len()];
            cl[a as usize] = 1;
            cl[c as usize] = 2;
            let mut cd = vec![0u64; l.len()];
            cd[c as usize] = 1;
            cd[a as usize] = 2;
            let f = poset_isomorphism_colored(l.poset(), &dual, &cl, &cd, &SearchOptions::default())?;
            r.push(
                "selfdual",
                f.is_some(),
                match &f {
                    Some(f) => format!("order-reversing bijection exchanging {a} and {c}: {f:?}"),
                    None => "no order-reversing bijection exchanges the designated pair".into(),
                },
            );
        }
    }
    if let (Some(lo), Some(hi)) = (b.get(Label::AnchorLo), b.get(Label::AnchorHi)) {
        r.push("designated interval prime", l.is_cover(lo, hi), format!("[{lo}, {hi}]"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{anchor_block, edge_block, middle_block};
    use crate::order::Lattice;

    #[test]
    fn stored_blocks_certify() {
        let m = certify_block(&middle_block(), &BlockSpec::middle()).unwrap();
        assert!(m.passed(), "{m}");
        let a = certify_block(&anchor_block(), &BlockSpec::anchor()).unwrap();
        assert!(a.passed(), "{a}");
        let e = certify_block(&edge_block(), &BlockSpec::edge()).unwrap();
        assert!(e.passed(), "{e}");
        assert_eq!(middle_block().lattice.len(), 12);
        assert_eq!(anchor_block().lattice.len(), 10);
    }

    #[test]
    fn failing_specs_carry_witnesses() {
        let chain = LabeledLattice::new(Lattice::chain(5));
        let spec = BlockSpec { simple: true, ..BlockSpec::anchor() };
        let r = certify_block(&chain, &spec).unwrap();
        assert!(!r.get("simple").unwrap().passed);
        assert!(r.get("simple").unwrap().detail.contains("con("));
        let m3 = LabeledLattice::new(Lattice::m_k(3));
        let r = certify_block(&m3, &BlockSpec::anchor()).unwrap();
        assert!(!r.get("rigid").unwrap().passed);
        assert!(r.get("rigid").unwrap().detail.contains("nontrivial"));
    }
}

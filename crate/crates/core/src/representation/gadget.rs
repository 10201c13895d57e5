//! Congruence-forcing gadgets spliced between two prime intervals of a frame.

use serde::Serialize;

use super::frame::Frame;
use crate::congruence::CongruenceEngine;
use crate::error::{Error, Result};
use crate::order::{Lattice, Poset};
use crate::report::Report;
use crate::symmetry::{automorphisms_fixing, is_identity, poset_isomorphism_colored, SearchOptions};

/// Direction of forcing: `OneWay` gives `con(x) <= con(y)` only, `Double`
/// gives equality and is symmetric in `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GadgetKind {
    OneWay,
    Double,
}

/// Template slots: `0, a_x, b_x, a_y, b_y, 1`.
pub const BOTTOM: usize = 0;
pub const AX: usize = 1;
pub const BX: usize = 2;
pub const AY: usize = 3;
pub const BY: usize = 4;
pub const TOP: usize = 5;

/// Covers of the two chains `0 < a_x < b_x < 1` and `0 < a_y < b_y < 1`.
const CHAIN_COVERS: [(u32, u32); 6] = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];

/// Extra covers of the one-way template; extras are `c = 6, e = 7, i = 8`.
pub const ONE_WAY_EXTRA: [(u32, u32); 7] = [(1, 6), (3, 6), (6, 7), (2, 7), (7, 8), (4, 8), (8, 5)];

/// Extra covers of the double template; extras are `c = 6, e = 7`.
pub const DOUBLE_EXTRA: [(u32, u32); 6] = [(1, 6), (3, 6), (6, 7), (2, 7), (4, 7), (7, 5)];

/// A bounded lattice with six boundary elements identified with a frame's
/// `0, a_x, b_x, a_y, b_y, 1` on splicing.
#[derive(Clone, Debug)]
pub struct GadgetTemplate {
    pub lattice: Lattice,
    pub boundary: [u32; 6],
    pub kind: GadgetKind,
}

impl GadgetTemplate {
    /// Template on the two chains plus `extras` new elements with the given
    /// extra covers (indices `6..6 + extras`).
    pub fn from_extra_covers(extras: usize, extra: &[(u32, u32)], kind: GadgetKind) -> Result<Self> {
        let mut covers = CHAIN_COVERS.to_vec();
        covers.extend_from_slice(extra);
        let lattice = Lattice::from_covers(6 + extras, &covers)?;
        if lattice.bottom() != 0 || lattice.top() != 5 {
            return Err(Error::Invalid("gadget bounds must be the chain bounds".into()));
        }
        Ok(GadgetTemplate { lattice, boundary: [0, 1, 2, 3, 4, 5], kind })
    }

    pub fn one_way() -> Self {
        Self::from_extra_covers(3, &ONE_WAY_EXTRA, GadgetKind::OneWay).expect("stored one-way gadget")
    }

    pub fn double() -> Self {
        Self::from_extra_covers(2, &DOUBLE_EXTRA, GadgetKind::Double).expect("stored double gadget")
    }

    /// Number of elements beyond the boundary.
    pub fn extra_count(&self) -> usize {
        self.lattice.len() - 6
    }

    /// Covers among template elements, for splicing.
    pub(crate) fn covers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.lattice.covers()
    }
}

fn boundary_colors(t: &GadgetTemplate, swap: bool) -> Vec<u64> {
    let mut c = vec![0u64; t.lattice.len()];
    for (slot, &x) in t.boundary.iter().enumerate() {
        let s = match (swap, slot) {
            (true, AX) => AY,
            (true, AY) => AX,
            (true, BX) => BY,
            (true, BY) => BX,
            _ => slot,
        };
        c[x as usize] = 1 + s as u64;
    }
    c
}

/// Splices `t` as an arrow `x -> y` into the anchor-plus-two-chains test
/// frame and checks the forcing contract:
/// (a) `con(a_x, b_x) <= con(a_y, b_y)`;
/// (b) the reverse fails (one-way) or holds (double);
/// (c) every principal congruence is `Δ`, `∇`, `con(a_x, b_x)` or `con(a_y, b_y)`;
/// (d) both intervals stay prime;
/// (e) every pair just below `a_x`, `a_y` or just above `b_x`, `b_y` generates `∇`;
/// (f) no nontrivial automorphism of `t` fixes the boundary;
/// plus: neither interval generates `∇`, and a double gadget has a symmetry
/// exchanging `x` and `y`.
pub fn certify_gadget(t: &GadgetTemplate) -> Result<Report> {
    let mut r = Report::new();
    let mut f = Frame::new(&[0, 1], 2)?;
    if let Err(e) = f.insert_gadget(0, 1, t) {
        r.push("(d) intervals stay prime", false, e.to_string());
        return Ok(r);
    }
    let l = f.lattice();
    let (ix, iy) = (f.interval(0)?, f.interval(1)?);
    let e = CongruenceEngine::new(l);
    let cx = e.con(ix.lo, ix.hi);
    let cy = e.con(iy.lo, iy.hi);

    r.push("(a) con(x) <= con(y)", cx.is_subset(&cy), "");
    let back = cy.is_subset(&cx);
    match t.kind {
        GadgetKind::OneWay => r.push("(b) con(y) not <= con(x)", !back, if back { "reverse inclusion holds" } else { "" }),
        GadgetKind::Double => r.push("(b) con(y) <= con(x)", back, if back { "" } else { "reverse inclusion fails" }),
    }

    let princ = e.principal_poset();
    let delta = e.con(0, 0);
    let full = e.con(l.bottom(), l.top());
    let stray = princ.sets.iter().zip(&princ.reps).find(|(s, _)| **s != delta && **s != full && **s != cx && **s != cy);
    r.push(
        "(c) only the four expected principal congruences",
        stray.is_none(),
        match stray {
            Some((_, (a, b))) => format!("con({a}, {b}) is a further principal congruence"),
            None => format!("{} principal congruences", princ.len()),
        },
    );
    r.push("(d) intervals stay prime", l.is_cover(ix.lo, ix.hi) && l.is_cover(iy.lo, iy.hi), "");

    let mut bad = None;
    for iv in [ix, iy] {
        if let Some(w) = e.insertion_precondition_witness(iv)? {
            bad = Some(w);
            break;
        }
    }
    r.push(
        "(e) neighbouring pairs generate the full congruence",
        bad.is_none(),
        match bad {
            Some((u, v)) => format!("con({u}, {v}) is not the full congruence"),
            None => String::new(),
        },
    );

    let autos = automorphisms_fixing(&t.lattice, &boundary_colors(t, false), &SearchOptions::default().with_limit(2))?;
    let moved = autos.iter().find(|p| !is_identity(p));
    r.push(
        "(f) rigid over the boundary",
        moved.is_none(),
        match moved {
            Some(p) => format!("nontrivial automorphism {p:?}"),
            None => String::new(),
        },
    );

    r.push("neither interval generates the full congruence", !e.is_full(&cx) && !e.is_full(&cy), "");
    if t.kind == GadgetKind::Double {
        let sym = poset_isomorphism_colored(
            t.lattice.poset(),
            t.lattice.poset(),
            &boundary_colors(t, false),
            &boundary_colors(t, true),
            &SearchOptions::default(),
        )?;
        r.push("symmetric in x and y", sym.is_some(), "");
    }
    Ok(r)
}

/// Relation of one extra element to one boundary chain `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Apart,
    AboveA,
    AboveB,
    BelowB,
    BelowA,
}

const SIDES: [Side; 5] = [Side::Apart, Side::AboveA, Side::AboveB, Side::BelowB, Side::BelowA];

fn side_pairs(side: Side, a: u32, b: u32, t: u32, out: &mut Vec<(u32, u32)>) {
    match side {
        Side::Apart => {}
        Side::AboveA => out.push((a, t)),
        Side::AboveB => out.push((b, t)),
        Side::BelowB => out.push((t, b)),
        Side::BelowA => out.push((t, a)),
    }
}

/// Decodes enumeration choice `code` for extra `t`: chain sides and the set
/// of earlier extras below it.
fn extra_pairs(t: u32, code: u64, out: &mut Vec<(u32, u32)>) {
    let sx = SIDES[(code % 5) as usize];
    let sy = SIDES[(code / 5 % 5) as usize];
    let below = code / 25;
    let x = 6 + t;
    out.push((0, x));
    out.push((x, 5));
    side_pairs(sx, 1, 2, x, out);
    side_pairs(sy, 3, 4, x, out);
    for s in 0..t {
        if below >> s & 1 == 1 {
            out.push((6 + s, x));
        }
    }
}

/// The first template of the given kind, over extensions of the two chains
/// by at most `max_extra` elements (fewest extras first, then lexicographic
/// choices with each extra placed above a subset of the earlier ones), that
/// passes `certify_gadget`.
pub fn search_gadget(max_extra: usize, kind: GadgetKind) -> Result<GadgetTemplate> {
    if max_extra > 8 {
        return Err(Error::TooLarge { size: max_extra, bound: 8 });
    }
    for k in 1..=max_extra {
        let radices: Vec<u64> = (0..k).map(|t| 25u64 << t).collect();
        let total: u64 = radices.iter().product();
        let mut pairs = Vec::new();
        for code in 0..total {
            pairs.clear();
            pairs.extend_from_slice(&CHAIN_COVERS);
            let mut rest = code;
            for t in (0..k).rev() {
                extra_pairs(t as u32, rest % radices[t], &mut pairs);
                rest /= radices[t];
            }
            let Ok(p) = Poset::from_covers(6 + k, &pairs) else { continue };
            // chains must stay covers and extras must be new elements
            if !(p.is_cover(1, 2) && p.is_cover(3, 4)) {
                continue;
            }
            let Ok(l) = Lattice::from_poset(p) else { continue };
            let t = GadgetTemplate { lattice: l, boundary: [0, 1, 2, 3, 4, 5], kind };
            if certify_gadget(&t)?.passed() {
                return Ok(t);
            }
        }
    }
    Err(Error::NotFound(max_extra))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_templates_certify() {
        let r = certify_gadget(&GadgetTemplate::one_way()).unwrap();
        assert!(r.passed(), "{r}");
        let r = certify_gadget(&GadgetTemplate::double()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn hinge_only_fails_b() {
        let t = GadgetTemplate::from_extra_covers(1, &[(1, 6), (3, 6), (6, 5)], GadgetKind::OneWay).unwrap();
        let r = certify_gadget(&t).unwrap();
        assert!(!r.checks.iter().find(|c| c.name.starts_with("(b)")).unwrap().passed, "{r}");
    }

    #[test]
    fn pendant_below_a_x_fails_e() {
        // u = 9 sits between 0 and a_x
        let mut extra = ONE_WAY_EXTRA.to_vec();
        extra.extend([(0, 9), (9, 1)]);
        let t = GadgetTemplate::from_extra_covers(4, &extra, GadgetKind::OneWay).unwrap();
        let r = certify_gadget(&t).unwrap();
        let e = r.checks.iter().find(|c| c.name.starts_with("(e)")).unwrap();
        assert!(!e.passed, "{r}");
        assert!(e.detail.starts_with("con("));
    }

    #[test]
    fn search_reproduces_one_way_template() {
        assert!(matches!(search_gadget(2, GadgetKind::OneWay), Err(Error::NotFound(2))));
        let t = search_gadget(3, GadgetKind::OneWay).unwrap();
        let stored = GadgetTemplate::one_way();
        assert_eq!(t.lattice.covers().collect::<Vec<_>>(), stored.lattice.covers().collect::<Vec<_>>());
    }

    #[test]
    fn search_reproduces_double_template() {
        assert!(matches!(search_gadget(1, GadgetKind::Double), Err(Error::NotFound(1))));
        let t = search_gadget(2, GadgetKind::Double).unwrap();
        let stored = GadgetTemplate::double();
        assert_eq!(t.lattice.covers().collect::<Vec<_>>(), stored.lattice.covers().collect::<Vec<_>>());
    }

    #[test]
    fn search_without_extras_finds_nothing() {
        assert!(matches!(search_gadget(0, GadgetKind::OneWay), Err(Error::NotFound(0))));
    }
}

//! Quasiordered colour sets, pair colourings, and the check that a colouring
//! ties colour order to congruence order.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::engine::CongruenceEngine;
use crate::error::{Error, Result};
use crate::order::{Built, IntervalRef, Lattice, Poset};
use crate::symmetry::poset_isomorphic;

/// A reflexive, transitive relation `ν` on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiOrder {
    rel: Vec<FixedBitSet>,
}

impl QuasiOrder {
    /// Validates that `pairs` (with the diagonal added) is already transitive.
    pub fn from_relation(n: usize, pairs: &[(u32, u32)]) -> Result<QuasiOrder> {
        let q = Self::raw(n, pairs)?;
        for x in 0..n {
            for y in q.rel[x].ones() {
                if !q.rel[y].is_subset(&q.rel[x]) {
                    return Err(Error::InvalidQuasiOrder(format!("not transitive through ({x}, {y})")));
                }
            }
        }
        Ok(q)
    }

    /// The reflexive-transitive closure of `pairs`.
    pub fn generated_by(n: usize, pairs: &[(u32, u32)]) -> Result<QuasiOrder> {
        let mut q = Self::raw(n, pairs)?;
        for k in 0..n {
            let rk = q.rel[k].clone();
            for row in q.rel.iter_mut() {
                if row.contains(k) {
                    row.union_with(&rk);
                }
            }
        }
        Ok(q)
    }

    fn raw(n: usize, pairs: &[(u32, u32)]) -> Result<QuasiOrder> {
        let mut rel = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in rel.iter_mut().enumerate() {
            row.insert(x);
        }
        for &(x, y) in pairs {
            for v in [x, y] {
                if v as usize >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            rel[x as usize].insert(y as usize);
        }
        Ok(QuasiOrder { rel })
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    /// `(x, y) ∈ ν`
    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.rel[x as usize].contains(y as usize)
    }

    /// Same-class test for `Θ_ν = ν ∩ ν⁻¹`.
    pub fn equivalent(&self, x: u32, y: u32) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Class index of each element; classes numbered by least member.
    pub fn classes(&self) -> Vec<u32> {
        let n = self.len();
        let mut class = vec![u32::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if class[x] != u32::MAX {
                continue;
            }
            for y in x..n {
                if self.equivalent(x as u32, y as u32) {
                    class[y] = next;
                }
            }
            next += 1;
        }
        class
    }
}

/// `H/Θ_ν` ordered by `ν/Θ_ν`, with the class map.
pub fn quotient_order(q: &QuasiOrder) -> (Poset, Vec<u32>) {
    let class = q.classes();
    let k = class.iter().max().map_or(0, |&c| c as usize + 1);
    let mut rel = Vec::new();
    for x in 0..q.len() {
        for y in q.rel[x].ones() {
            if class[x] != class[y] {
                rel.push((class[x], class[y]));
            }
        }
    }
    rel.sort_unstable();
    rel.dedup();
    (Poset::from_covers(k, &rel).expect("quotient of a quasiorder is a partial order"), class)
}

/// A colouring of the ordered pairs of a lattice. Trivial pairs carry
/// colour 0; every nontrivial pair must be coloured explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    colors: HashMap<(u32, u32), u32>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, x: u32, y: u32, c: u32) {
        if x != y {
            self.colors.insert((x, y), c);
        }
    }

    pub fn get(&self, x: u32, y: u32) -> Option<u32> {
        if x == y {
            Some(0)
        } else {
            self.colors.get(&(x, y)).copied()
        }
    }

    /// The colouring after inserting `k` into the covering pair `iv`:
    /// pairs inside the new copy take the colour of `iv`, pairs leaving it
    /// upward take the colour of `(iv.lo, y)`, pairs entering it from below
    /// the colour of `(x, iv.hi)`.
    pub fn extend_by_insertion(&self, host: &Lattice, iv: IntervalRef, built: &Built) -> Result<Coloring> {
        let l = &built.lattice;
        let in_k = |x: u32| x as usize >= host.len();
        let lookup = |x: u32, y: u32| {
            self.get(x, y).ok_or_else(|| Error::Invalid(format!("pair ({x}, {y}) is uncoloured")))
        };
        let mut out = self.clone();
        for x in 0..l.len() as u32 {
            for y in l.poset().up_set(x).ones().map(|y| y as u32) {
                if x == y || (!in_k(x) && !in_k(y)) {
                    continue;
                }
                let c = match (in_k(x), in_k(y)) {
                    (true, true) => lookup(iv.lo, iv.hi)?,
                    (true, false) => lookup(iv.lo, y)?,
                    (false, true) => lookup(x, iv.hi)?,
                    (false, false) => unreachable!(),
                };
                out.set(x, y, c);
            }
        }
        Ok(out)
    }
}

/// Which axiom failed, with the two pairs that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ColoringViolation {
    /// Colour order holds but congruence order does not.
    C1 { first: (u32, u32), second: (u32, u32) },
    /// Congruence order holds but colour order does not.
    C2 { first: (u32, u32), second: (u32, u32) },
    Uncolored((u32, u32)),
    ColorOutOfRange(u32),
    NotSurjective(u32),
}

/// Outcome of a quasi-colouring check; on success, an isomorphism from the
/// principal congruence poset onto the colour quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub violation: Option<ColoringViolation>,
    pub princ_to_quotient: Option<Vec<u32>>,
}

impl ColoringReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.princ_to_quotient.is_some()
    }
}

/// Checks both axioms over all pairs of ordered pairs. Pairs of one colour
/// must generate one congruence (else the first axiom already fails), so the
/// comparison runs per colour pair. On success the principal congruence
/// poset is verified isomorphic to `quotient_order(q)`.
pub fn check_quasi_coloring(l: &Lattice, gamma: &Coloring, q: &QuasiOrder) -> Result<ColoringReport> {
    let fail = |v| Ok(ColoringReport { violation: Some(v), princ_to_quotient: None });
    let e = CongruenceEngine::new(l);
    let h = q.len();
    let mut con_of: Vec<Option<(FixedBitSet, (u32, u32))>> = vec![None; h];
    for x in 0..l.len() as u32 {
        for y in l.poset().up_set(x).ones().map(|y| y as u32) {
            let Some(c) = gamma.get(x, y) else {
                return fail(ColoringViolation::Uncolored((x, y)));
            };
            if c as usize >= h {
                return fail(ColoringViolation::ColorOutOfRange(c));
            }
            let con = e.con(x, y);
            match &con_of[c as usize] {
                None => con_of[c as usize] = Some((con, (x, y))),
                Some((prev, rep)) if *prev != con => {
                    // equal colours are ν-related both ways
                    let (first, second) = if prev.is_subset(&con) { ((x, y), *rep) } else { (*rep, (x, y)) };
                    return fail(ColoringViolation::C1 { first, second });
                }
                Some(_) => {}
            }
        }
    }
    if let Some(c) = con_of.iter().position(Option::is_none) {
        return fail(ColoringViolation::NotSurjective(c as u32));
    }
    let con_of: Vec<(FixedBitSet, (u32, u32))> = con_of.into_iter().map(Option::unwrap).collect();
    for c in 0..h {
        for d in 0..h {
            let colour = q.leq(c as u32, d as u32);
            let congr = con_of[c].0.is_subset(&con_of[d].0);
            let (first, second) = (con_of[c].1, con_of[d].1);
            if colour && !congr {
                return fail(ColoringViolation::C1 { first, second });
            }
            if congr && !colour {
                return fail(ColoringViolation::C2 { first, second });
            }
        }
    }
    let princ = e.principal_poset();
    let (quot, _) = quotient_order(q);
    let iso = poset_isomorphic(&princ.poset, &quot)?;
    if iso.is_none() {
        return Err(Error::CertificationFailed(
            "both axioms hold but the principal congruence poset differs from the quotient".into(),
        ));
    }
    Ok(ColoringReport { violation: None, princ_to_quotient: iso })
}

use std::collections::BTreeMap;

use super::gadget::{GadgetKind, GadgetTemplate, AX, AY, BOTTOM, BX, BY, TOP};
use crate::blocks::{anchor_block, Label};
use crate::error::{Error, Result};
use crate::order::{zero_one_sum, IntervalRef, Lattice};

/// What an element of a frame is, for rendering and audits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Bottom,
    Top,
    Anchor,
    IntervalLo(u32),
    IntervalHi(u32),
    Gadget(u32, u32),
}

/// The anchor block and one chain `0 < a_x < b_x < 1` per key, summed at
/// their bounds, with gadgets spliced between registered intervals.
#[derive(Clone, Debug)]
pub struct Frame {
    lattice: Lattice,
    covers: Vec<(u32, u32)>,
    registry: BTreeMap<u32, IntervalRef>,
    anchor_key: u32,
    gadgets: BTreeMap<(u32, u32), GadgetKind>,
    roles: Vec<Role>,
}

impl Frame {
    /// A frame with chains for `keys`; the anchor's designated interval is
    /// registered under `anchor_key`.
    pub fn new(keys: &[u32], anchor_key: u32) -> Result<Frame> {
        let anchor = anchor_block();
        let chain = Lattice::chain(4);
        let mut parts = vec![&anchor.lattice];
        parts.extend(keys.iter().map(|_| &chain));
        let built = zero_one_sum(&parts)?;
        let mut registry = BTreeMap::new();
        let am = &built.maps[0];
        registry.insert(anchor_key, IntervalRef::new(am[anchor.at(Label::AnchorLo) as usize], am[anchor.at(Label::AnchorHi) as usize]));
        let mut roles = vec![Role::Anchor; built.lattice.len()];
        roles[built.lattice.bottom() as usize] = Role::Bottom;
        roles[built.lattice.top() as usize] = Role::Top;
        for (i, &k) in keys.iter().enumerate() {
            if registry.contains_key(&k) {
                return Err(Error::Invalid(format!("key {k} registered twice")));
            }
            let m = &built.maps[i + 1];
            registry.insert(k, IntervalRef::new(m[1], m[2]));
            roles[m[1] as usize] = Role::IntervalLo(k);
            roles[m[2] as usize] = Role::IntervalHi(k);
        }
        Ok(Frame {
            covers: built.lattice.covers().collect(),
            lattice: built.lattice,
            registry,
            anchor_key,
            gadgets: BTreeMap::new(),
            roles,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn anchor_key(&self) -> u32 {
        self.anchor_key
    }

    /// Registered intervals by key, the anchor's included.
    pub fn registry(&self) -> &BTreeMap<u32, IntervalRef> {
        &self.registry
    }

    pub fn interval(&self, key: u32) -> Result<IntervalRef> {
        self.registry.get(&key).copied().ok_or(Error::NotFound(key as usize))
    }

    /// Ordered pairs `(x, y)` whose forcing `con(x) <= con(y)` has a gadget.
    pub fn gadgets(&self) -> &BTreeMap<(u32, u32), GadgetKind> {
        &self.gadgets
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Splices a fresh copy of `t` between the intervals of `x` and `y`. A
    /// double gadget registers both directions.
    pub fn insert_gadget(&mut self, x: u32, y: u32, t: &GadgetTemplate) -> Result<()> {
        if x == y {
            return Err(Error::Invalid(format!("gadget from {x} to itself")));
        }
        let (ix, iy) = (self.interval(x)?, self.interval(y)?);
        let mut pairs = vec![(x, y)];
        if t.kind == GadgetKind::Double {
            pairs.push((y, x));
        }
        if let Some(&(u, v)) = pairs.iter().find(|p| self.gadgets.contains_key(p)) {
            return Err(Error::DuplicateGadget(u, v));
        }

        let mut map = vec![u32::MAX; t.lattice.len()];
        let slots = [
            (BOTTOM, self.lattice.bottom()),
            (AX, ix.lo),
            (BX, ix.hi),
            (AY, iy.lo),
            (BY, iy.hi),
            (TOP, self.lattice.top()),
        ];
        for (slot, target) in slots {
            map[t.boundary[slot] as usize] = target;
        }
        let mut n = self.lattice.len() as u32;
        let mut roles = self.roles.clone();
        for m in map.iter_mut().filter(|m| **m == u32::MAX) {
            *m = n;
            n += 1;
            roles.push(Role::Gadget(x, y));
        }
        let mut covers = self.covers.clone();
        covers.extend(t.covers().map(|(a, b)| (map[a as usize], map[b as usize])));
        let lattice = Lattice::from_covers(n as usize, &covers)?;
        if let Some((&k, _)) = self.registry.iter().find(|(_, iv)| !lattice.is_cover(iv.lo, iv.hi)) {
            return Err(Error::NotPrimeAfterSplice(k));
        }
        self.covers = lattice.covers().collect();
        self.lattice = lattice;
        self.roles = roles;
        for p in pairs {
            self.gadgets.insert(p, t.kind);
        }
        Ok(())
    }
}

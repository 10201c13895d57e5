use std::collections::BTreeMap;
use std::fmt;

use crate::order::Lattice;

/// Role names for distinguished elements of the block lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Bottom,
    Top,
    /// Atom `g_i` of the T-part.
    G(u32),
    /// Coatom `g^{ij}` of the T-part, `i < j`.
    GUp(u32, u32),
    /// Atom `h_{ij}` of the T'-part, `i < j`.
    H(u32, u32),
    /// Coatom `h^i` of the T'-part.
    HUp(u32),
    DesignatedAtom,
    DesignatedCoatom,
    AnchorLo,
    AnchorHi,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Bottom => write!(f, "0"),
            Label::Top => write!(f, "1"),
            Label::G(i) => write!(f, "g_{i}"),
            Label::GUp(i, j) => write!(f, "g^{i},{j}"),
            Label::H(i, j) => write!(f, "h_{i},{j}"),
            Label::HUp(i) => write!(f, "h^{i}"),
            Label::DesignatedAtom => write!(f, "atom*"),
            Label::DesignatedCoatom => write!(f, "coatom*"),
            Label::AnchorLo => write!(f, "a_1"),
            Label::AnchorHi => write!(f, "b_1"),
        }
    }
}

/// A lattice with named elements. Several labels may name one element.
#[derive(Clone, Debug)]
pub struct LabeledLattice {
    pub lattice: Lattice,
    pub labels: BTreeMap<Label, u32>,
}

impl LabeledLattice {
    pub fn new(lattice: Lattice) -> Self {
        let mut labels = BTreeMap::new();
        labels.insert(Label::Bottom, lattice.bottom());
        labels.insert(Label::Top, lattice.top());
        LabeledLattice { lattice, labels }
    }

    pub fn get(&self, label: Label) -> Option<u32> {
        self.labels.get(&label).copied()
    }

    /// The element named `label`; panics if absent.
    pub fn at(&self, label: Label) -> u32 {
        self.labels[&label]
    }

    /// All labels naming `x`.
    pub fn labels_of(&self, x: u32) -> Vec<Label> {
        self.labels.iter().filter(|(_, &v)| v == x).map(|(&k, _)| k).collect()
    }

    /// Labels of the dual lattice: bounds swap, designated atom and coatom
    /// swap, g-labels become h-labels and back.
    pub fn dual(&self) -> LabeledLattice {
        let labels = self
            .labels
            .iter()
            .map(|(&k, &v)| {
                let k = match k {
                    Label::Bottom => Label::Top,
                    Label::Top => Label::Bottom,
                    Label::G(i) => Label::HUp(i),
                    Label::GUp(i, j) => Label::H(i, j),
                    Label::H(i, j) => Label::GUp(i, j),
                    Label::HUp(i) => Label::G(i),
                    Label::DesignatedAtom => Label::DesignatedCoatom,
                    Label::DesignatedCoatom => Label::DesignatedAtom,
                    Label::AnchorLo => Label::AnchorHi,
                    Label::AnchorHi => Label::AnchorLo,
                };
                (k, v)
            })
            .collect();
        LabeledLattice { lattice: self.lattice.dual(), labels }
    }
}

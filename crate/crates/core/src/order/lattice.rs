use serde::{Deserialize, Serialize};

use super::poset::Poset;
use crate::error::{Error, Result};

/// A bounded lattice with dense `n x n` meet and join tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: u32,
    top: u32,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Validates `p` as a lattice and fills the meet and join tables.
    pub fn from_poset(p: Poset) -> Result<Lattice> {
        if p.is_empty() {
            return Err(Error::Empty);
        }
        let mins = p.minimal_elements();
        let maxs = p.maximal_elements();
        if mins.len() != 1 || maxs.len() != 1 {
            return Err(Error::Unbounded);
        }
        let join = bound_table(&p, true)?;
        let meet = bound_table(&p, false)?;
        Ok(Lattice { bottom: mins[0], top: maxs[0], poset: p, meet, join })
    }

    pub fn from_covers(n: usize, covers: &[(u32, u32)]) -> Result<Lattice> {
        Lattice::from_poset(Poset::from_covers(n, covers)?)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Lattice {
        let covers: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Lattice::from_covers(n, &covers).expect("a chain is a lattice")
    }

    /// `0`, `k` pairwise incomparable atoms, `1`; indices `0`, `1..=k`, `k+1`.
    pub fn m_k(k: usize) -> Lattice {
        let top = k as u32 + 1;
        let mut covers = Vec::new();
        for a in 1..=k as u32 {
            covers.push((0, a));
            covers.push((a, top));
        }
        if k == 0 {
            covers.push((0, 1));
        }
        let n = if k == 0 { 2 } else { k + 2 };
        Lattice::from_covers(n, &covers).expect("M_k is a lattice")
    }

    /// The pentagon with elements `0, a, b, c, 1` as indices `0..5`, `a < b`.
    pub fn n5() -> Lattice {
        Lattice::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5 is a lattice")
    }

    /// The Boolean lattice of subsets of a `k`-set, indexed by bitmask.
    pub fn boolean(k: u32) -> Lattice {
        let n = 1usize << k;
        let mut covers = Vec::new();
        for x in 0..n as u32 {
            for b in 0..k {
                if x & (1 << b) == 0 {
                    covers.push((x, x | (1 << b)));
                }
            }
        }
        Lattice::from_covers(n, &covers).expect("a Boolean lattice is a lattice")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    #[inline]
    pub fn meet(&self, x: u32, y: u32) -> u32 {
        self.meet[x as usize * self.len() + y as usize]
    }

    #[inline]
    pub fn join(&self, x: u32, y: u32) -> u32 {
        self.join[x as usize * self.len() + y as usize]
    }

    /// Row `x` of the join table.
    #[inline]
    pub fn join_row(&self, x: u32) -> &[u32] {
        let n = self.len();
        &self.join[x as usize * n..(x as usize + 1) * n]
    }

    /// Row `x` of the meet table.
    #[inline]
    pub fn meet_row(&self, x: u32) -> &[u32] {
        let n = self.len();
        &self.meet[x as usize * n..(x as usize + 1) * n]
    }

    #[inline]
    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.poset.leq(x, y)
    }

    pub fn is_cover(&self, x: u32, y: u32) -> bool {
        self.poset.is_cover(x, y)
    }

    pub fn covers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.poset.covers()
    }

    pub fn dual(&self) -> Lattice {
        Lattice {
            poset: self.poset.dual(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Edge count of a longest chain.
    pub fn length(&self) -> u32 {
        self.poset.heights()[self.top as usize]
    }

    /// True iff all maximal chains have the same length.
    pub fn is_ranked(&self) -> bool {
        let h = self.poset.heights();
        self.poset.covers().all(|(x, y)| h[y as usize] == h[x as usize] + 1)
    }

    pub fn heights(&self) -> Vec<u32> {
        self.poset.heights()
    }

    /// Elements of `[lo, hi]` in increasing index order.
    pub fn interval(&self, lo: u32, hi: u32) -> Result<Vec<u32>> {
        if !self.leq(lo, hi) {
            return Err(Error::NotComparable(lo, hi));
        }
        let mut set = self.poset.up_set(lo).clone();
        set.intersect_with(self.poset.down_set(hi));
        Ok(set.ones().map(|i| i as u32).collect())
    }

    /// The interval `[lo, hi]` as a lattice; `map[i]` is the element of `self`
    /// at index `i` of the result.
    pub fn interval_lattice(&self, lo: u32, hi: u32) -> Result<(Lattice, Vec<u32>)> {
        let elems = self.interval(lo, hi)?;
        let sub = Lattice::from_poset(self.poset.induced(&elems))?;
        Ok((sub, elems))
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.len(),
            covers: self.covers().map(|(x, y)| [x, y]).collect(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    pub fn from_json(json: &LatticeJson) -> Result<Lattice> {
        let covers: Vec<(u32, u32)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        let l = Lattice::from_covers(json.n, &covers)?;
        if l.bottom != json.bottom || l.top != json.top {
            return Err(Error::Invalid(format!(
                "declared bounds ({}, {}) differ from computed ({}, {})",
                json.bottom, json.top, l.bottom, l.top
            )));
        }
        Ok(l)
    }
}

/// Wire form of a lattice: the poset form plus its bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[u32; 2]>,
    pub bottom: u32,
    pub top: u32,
}

/// Least upper bounds (`upward`) or greatest lower bounds, by dynamic
/// programming: for incomparable `x, y`, `x ∨ y` is the least of
/// `x ∨ y'` over the upper covers `y'` of `y`.
fn bound_table(p: &Poset, upward: bool) -> Result<Vec<u32>> {
    let n = p.len();
    let mut table = vec![0u32; n * n];
    let order: Vec<u32> = if upward {
        p.linear_extension().iter().rev().copied().collect()
    } else {
        p.linear_extension().to_vec()
    };
    let below = |a: u32, b: u32| if upward { p.leq(a, b) } else { p.leq(b, a) };
    for &y in &order {
        let steps = if upward { p.upper_covers(y) } else { p.lower_covers(y) };
        for x in 0..n as u32 {
            let v = if below(x, y) {
                y
            } else if below(y, x) {
                x
            } else {
                let mut best = table[x as usize * n + steps[0] as usize];
                for &s in &steps[1..] {
                    let c = table[x as usize * n + s as usize];
                    if below(c, best) {
                        best = c;
                    }
                }
                for &s in steps {
                    let c = table[x as usize * n + s as usize];
                    if !below(best, c) {
                        return Err(Error::NotALattice {
                            x,
                            y,
                            kind: if upward { "join" } else { "meet" },
                        });
                    }
                }
                best
            };
            table[x as usize * n + y as usize] = v;
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_square() {
        let l = Lattice::boolean(2);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.length(), 2);
        assert!(l.is_ranked());
    }

    #[test]
    fn antichain_is_unbounded() {
        let p = Poset::from_covers(2, &[]).unwrap();
        assert_eq!(Lattice::from_poset(p), Err(Error::Unbounded));
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        // 0 < a,b < c,d < 1 with a,b both below c and d
        let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)];
        match Lattice::from_covers(6, &covers) {
            Err(Error::NotALattice { x, y, .. }) => {
                let mut w = [x, y];
                w.sort();
                assert!(w == [1, 2] || w == [3, 4]);
            }
            other => panic!("expected NotALattice, got {other:?}"),
        }
    }

    #[test]
    fn n5_length_and_rank() {
        let l = Lattice::n5();
        assert_eq!(l.length(), 3);
        assert!(!l.is_ranked());
        assert_eq!(l.join(1, 3), 4);
        assert_eq!(l.meet(2, 3), 0);
    }

    #[test]
    fn dual_involution() {
        let l = Lattice::m_k(3);
        let d = l.dual();
        assert_eq!(d.bottom(), l.top());
        assert_eq!(d.dual(), l);
        let c = Lattice::chain(3).dual();
        assert!(c.leq(2, 0));
    }

    #[test]
    fn interval_sublattice() {
        let l = Lattice::boolean(3);
        let (sub, map) = l.interval_lattice(1, 7).unwrap();
        assert_eq!(sub.len(), 4);
        assert_eq!(map, vec![1, 3, 5, 7]);
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::n5();
        let back = Lattice::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
    }
}

//! Congruences of a finite lattice represented by the join-irreducibles they
//! collapse. A congruence `θ` is determined by `{j ∈ J : j θ j_*}`, where `j_*`
//! is the unique lower cover of `j`; such sets are exactly the subsets of `J`
//! closed under the dependency relation computed here, and joins of
//! congruences are unions.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::order::{IntervalRef, Lattice, Poset};

/// Precomputed congruence data for one lattice.
pub struct CongruenceEngine<'l> {
    l: &'l Lattice,
    jirr: Vec<u32>,
    jdown: Vec<FixedBitSet>,
    reach: Vec<FixedBitSet>,
    /// Per element `y`, aligned with its lower covers: the first
    /// join-irreducible in `J(y) ∖ J(x)`.
    cover_j: Vec<Vec<u32>>,
}

impl<'l> CongruenceEngine<'l> {
    pub fn new(l: &'l Lattice) -> CongruenceEngine<'l> {
        let p = l.poset();
        let n = l.len();
        let jirr: Vec<u32> =
            p.linear_extension().iter().copied().filter(|&x| p.lower_covers(x).len() == 1).collect();
        let m = jirr.len();
        let mut jidx = vec![u32::MAX; n];
        for (i, &j) in jirr.iter().enumerate() {
            jidx[j as usize] = i as u32;
        }
        let mut jdown = vec![FixedBitSet::with_capacity(m); n];
        for &x in p.linear_extension() {
            let mut set = FixedBitSet::with_capacity(m);
            for &c in p.lower_covers(x) {
                set.union_with(&jdown[c as usize]);
            }
            if jidx[x as usize] != u32::MAX {
                set.insert(jidx[x as usize] as usize);
            }
            jdown[x as usize] = set;
        }

        // collapsing q forces p whenever p <= q ∨ x but p ≰ q_* ∨ x
        let mut reach: Vec<FixedBitSet> = jirr
            .par_iter()
            .enumerate()
            .map(|(qi, &q)| {
                let qs = p.lower_covers(q)[0];
                let mut dep = FixedBitSet::with_capacity(m);
                dep.insert(qi);
                let (jq, js) = (l.join_row(q), l.join_row(qs));
                for x in 0..n {
                    let (u, w) = (jq[x], js[x]);
                    if u != w {
                        let du = jdown[u as usize].as_slice();
                        let dw = jdown[w as usize].as_slice();
                        for ((d, &a), &b) in dep.as_mut_slice().iter_mut().zip(du).zip(dw) {
                            *d |= a & !b;
                        }
                    }
                }
                dep
            })
            .collect();
        // transitive closure
        for k in 0..m {
            let rk = reach[k].clone();
            for row in reach.iter_mut() {
                if row.contains(k) {
                    row.union_with(&rk);
                }
            }
        }

        let cover_j = (0..n as u32)
            .map(|y| {
                p.lower_covers(y)
                    .iter()
                    .map(|&x| {
                        first_difference(&jdown[y as usize], &jdown[x as usize])
                            .expect("a cover adds a join-irreducible") as u32
                    })
                    .collect()
            })
            .collect();
        CongruenceEngine { l, jirr, jdown, reach, cover_j }
    }

    pub fn lattice(&self) -> &Lattice {
        self.l
    }

    /// Join-irreducible elements in linear-extension order.
    pub fn join_irreducibles(&self) -> &[u32] {
        &self.jirr
    }

    /// `con(j_*, j)` for the `i`-th join-irreducible.
    pub fn reach(&self, i: usize) -> &FixedBitSet {
        &self.reach[i]
    }

    /// `con(x, y)` for a covering pair `x ≺ y`.
    pub fn cover_con(&self, x: u32, y: u32) -> Result<&FixedBitSet> {
        let pos = self.l.poset().lower_covers(y).iter().position(|&c| c == x);
        match pos {
            Some(k) => Ok(&self.reach[self.cover_j[y as usize][k] as usize]),
            None => Err(Error::NotPrime { lo: x, hi: y }),
        }
    }

    /// `con(a, b)`, the congruence generated by the pair (in either order).
    pub fn con(&self, a: u32, b: u32) -> FixedBitSet {
        let (lo, hi) = (self.l.meet(a, b), self.l.join(a, b));
        let mut out = FixedBitSet::with_capacity(self.jirr.len());
        let mut diff = self.jdown[hi as usize].clone();
        diff.difference_with(&self.jdown[lo as usize]);
        for j in diff.ones() {
            if !out.contains(j) {
                out.union_with(&self.reach[j]);
            }
        }
        out
    }

    pub fn is_full(&self, set: &FixedBitSet) -> bool {
        set.count_ones(..) == self.jirr.len()
    }

    pub fn is_simple(&self) -> bool {
        self.l.len() >= 2 && self.reach.iter().all(|r| self.is_full(r))
    }

    /// The partition of a congruence given by its join-irreducible set.
    pub fn partition(&self, set: &FixedBitSet) -> Partition {
        let n = self.l.len();
        let mut label: Vec<u32> = (0..n as u32).collect();
        fn root(label: &mut [u32], mut x: u32) -> u32 {
            while label[x as usize] != x {
                let p = label[label[x as usize] as usize];
                label[x as usize] = p;
                x = p;
            }
            x
        }
        for y in 0..n as u32 {
            for (k, &x) in self.l.poset().lower_covers(y).iter().enumerate() {
                let j = self.cover_j[y as usize][k] as usize;
                if self.reach[j].is_subset(set) {
                    let (a, b) = (root(&mut label, x), root(&mut label, y));
                    if a != b {
                        label[a.max(b) as usize] = a.min(b);
                    }
                }
            }
        }
        let labels: Vec<u32> = (0..n as u32).map(|x| root(&mut label, x)).collect();
        Partition::from_labels(&labels)
    }

    /// `None` if `con(x, lo) = ∇` for all `x < lo` and `con(hi, y) = ∇` for
    /// all `y > hi`; otherwise a failing pair. Only neighbours of the interval
    /// need checking, since congruences grow as the pair widens.
    pub fn insertion_precondition_witness(&self, iv: IntervalRef) -> Result<Option<(u32, u32)>> {
        if !iv.is_prime(self.l) {
            return Err(Error::NotPrime { lo: iv.lo, hi: iv.hi });
        }
        let p = self.l.poset();
        for &x in p.lower_covers(iv.lo) {
            if !self.is_full(self.cover_con(x, iv.lo)?) {
                return Ok(Some((x, iv.lo)));
            }
        }
        for &y in p.upper_covers(iv.hi) {
            if !self.is_full(self.cover_con(iv.hi, y)?) {
                return Ok(Some((iv.hi, y)));
            }
        }
        Ok(None)
    }

    pub fn check_insertion_precondition(&self, iv: IntervalRef) -> Result<bool> {
        Ok(self.insertion_precondition_witness(iv)?.is_none())
    }

    /// All principal congruences, ordered by inclusion. `con(x, y)` is
    /// assembled from the cover congruences along one maximal chain.
    pub fn principal_poset(&self) -> PrincipalPoset {
        let l = self.l;
        let p = l.poset();
        let n = l.len();

        // classes of cover congruences
        let mut class_of_set: HashMap<&[usize], u32> = HashMap::new();
        let mut class_sets: Vec<&FixedBitSet> = Vec::new();
        let cover_class: Vec<Vec<u32>> = (0..n)
            .map(|y| {
                self.cover_j[y]
                    .iter()
                    .map(|&j| {
                        let set = &self.reach[j as usize];
                        *class_of_set.entry(set.as_slice()).or_insert_with(|| {
                            class_sets.push(set);
                            class_sets.len() as u32 - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let words = class_sets.len().div_ceil(64).max(1);
        let order = p.linear_extension();
        let mut pos = vec![0usize; n];
        for (i, &x) in order.iter().enumerate() {
            pos[x as usize] = i;
        }

        let found: HashMap<Vec<u64>, (u32, u32)> = (0..n as u32)
            .into_par_iter()
            .fold(
                || (HashMap::<Vec<u64>, (u32, u32)>::new(), vec![0u64; n * words]),
                |(mut seen, mut masks), x| {
                    for &y in &order[pos[x as usize]..] {
                        if !p.leq(x, y) {
                            continue;
                        }
                        let yi = y as usize * words;
                        if y == x {
                            masks[yi..yi + words].fill(0);
                        } else {
                            let lc = p.lower_covers(y);
                            let k = lc.iter().position(|&c| p.leq(x, c)).expect("a lower cover above x");
                            let ci = lc[k] as usize * words;
                            masks.copy_within(ci..ci + words, yi);
                            let c = cover_class[y as usize][k] as usize;
                            masks[yi + c / 64] |= 1 << (c % 64);
                        }
                        let mask = &masks[yi..yi + words];
                        match seen.get_mut(mask) {
                            Some(rep) => *rep = (*rep).min((x, y)),
                            None => {
                                seen.insert(mask.to_vec(), (x, y));
                            }
                        }
                    }
                    (seen, masks)
                },
            )
            .map(|(seen, _)| seen)
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    let e = a.entry(k).or_insert(v);
                    *e = (*e).min(v);
                }
                a
            });

        let m = self.jirr.len();
        let mut by_set: HashMap<FixedBitSet, (u32, u32)> = HashMap::new();
        for (mask, rep) in found {
            let mut set = FixedBitSet::with_capacity(m);
            for (c, cs) in class_sets.iter().enumerate() {
                if mask[c / 64] >> (c % 64) & 1 == 1 {
                    set.union_with(cs);
                }
            }
            let e = by_set.entry(set).or_insert(rep);
            *e = (*e).min(rep);
        }
        let mut items: Vec<(FixedBitSet, (u32, u32))> = by_set.into_iter().collect();
        items.sort_by(|a, b| (a.0.count_ones(..), a.1).cmp(&(b.0.count_ones(..), b.1)));
        let mut rel = Vec::new();
        for (i, a) in items.iter().enumerate() {
            for (j, b) in items.iter().enumerate() {
                if i != j && a.0.is_subset(&b.0) {
                    rel.push((i as u32, j as u32));
                }
            }
        }
        let poset = Poset::from_covers(items.len(), &rel).expect("inclusion is a partial order");
        let (sets, reps) = items.into_iter().unzip();
        PrincipalPoset { poset, sets, reps }
    }
}

fn first_difference(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    let bits = usize::BITS as usize;
    for (w, (&x, &y)) in a.as_slice().iter().zip(b.as_slice()).enumerate() {
        let d = x & !y;
        if d != 0 {
            return Some(w * bits + d.trailing_zeros() as usize);
        }
    }
    None
}

/// `Princ L`: element `i` is the congruence `sets[i]`, generated by `reps[i]`.
#[derive(Clone, Debug)]
pub struct PrincipalPoset {
    pub poset: Poset,
    pub sets: Vec<FixedBitSet>,
    pub reps: Vec<(u32, u32)>,
}

impl PrincipalPoset {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the congruence equal to `set`, if it is principal.
    pub fn index_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.sets.iter().position(|s| s == set)
    }
}

/// `Princ L` with a generating pair per element.
pub fn principal_poset(l: &Lattice) -> PrincipalPoset {
    CongruenceEngine::new(l).principal_poset()
}

pub fn is_simple(l: &Lattice) -> bool {
    CongruenceEngine::new(l).is_simple()
}

pub fn check_insertion_precondition(l: &Lattice, iv: IntervalRef) -> Result<bool> {
    CongruenceEngine::new(l).check_insertion_precondition(iv)
}

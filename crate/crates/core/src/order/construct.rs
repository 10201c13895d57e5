//! Gluing, 0-1 sums and insertion into prime intervals. Every construction
//! revalidates its result as a lattice and returns embedding maps.

use std::collections::HashMap;

use super::lattice::Lattice;
use crate::error::{Error, Result};

/// A covering pair (or general interval) `[lo, hi]` of some lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalRef {
    pub lo: u32,
    pub hi: u32,
}

impl IntervalRef {
    pub fn new(lo: u32, hi: u32) -> Self {
        IntervalRef { lo, hi }
    }

    pub fn is_prime(&self, l: &Lattice) -> bool {
        l.is_cover(self.lo, self.hi)
    }
}

/// How to stack `upper` on `lower`: the filter `↑lower_filter_generator` of
/// `lower` is identified with the ideal `↓upper_ideal_generator` of `upper`
/// via `iso`, given as `(filter element, ideal element)` pairs.
#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub lower_filter_generator: u32,
    pub upper_ideal_generator: u32,
    pub iso: Vec<(u32, u32)>,
}

/// Result of a construction: the lattice and one index map per input.
#[derive(Clone, Debug)]
pub struct Built {
    pub lattice: Lattice,
    pub maps: Vec<Vec<u32>>,
}

pub fn glue_hall_dilworth(lower: &Lattice, upper: &Lattice, spec: &GlueSpec) -> Result<Built> {
    let filter: Vec<u32> =
        lower.poset().up_set(spec.lower_filter_generator).ones().map(|i| i as u32).collect();
    let ideal: Vec<u32> =
        upper.poset().down_set(spec.upper_ideal_generator).ones().map(|i| i as u32).collect();
    if filter.len() != ideal.len() || spec.iso.len() != filter.len() {
        return Err(Error::IsoInvalid(format!(
            "filter has {} elements, ideal {}, map {}",
            filter.len(),
            ideal.len(),
            spec.iso.len()
        )));
    }
    let mut fwd: HashMap<u32, u32> = HashMap::new();
    let mut back: HashMap<u32, u32> = HashMap::new();
    for &(f, i) in &spec.iso {
        if filter.binary_search(&f).is_err() || ideal.binary_search(&i).is_err() {
            return Err(Error::IsoInvalid(format!("pair ({f}, {i}) leaves filter or ideal")));
        }
        if fwd.insert(f, i).is_some() || back.insert(i, f).is_some() {
            return Err(Error::IsoInvalid(format!("pair ({f}, {i}) repeats an element")));
        }
    }
    for &(f, i) in &spec.iso {
        for &(g, j) in &spec.iso {
            if lower.leq(f, g) != upper.leq(i, j) {
                return Err(Error::IsoInvalid(format!("order differs on ({f}, {g})")));
            }
        }
    }

    let nl = lower.len();
    let lower_map: Vec<u32> = (0..nl as u32).collect();
    let mut upper_map = vec![0u32; upper.len()];
    let mut next = nl as u32;
    for u in 0..upper.len() as u32 {
        upper_map[u as usize] = match back.get(&u) {
            Some(&f) => f,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let mut covers: Vec<(u32, u32)> = lower.covers().collect();
    covers.extend(upper.covers().map(|(x, y)| (upper_map[x as usize], upper_map[y as usize])));
    let lattice = Lattice::from_covers(next as usize, &covers)?;
    Ok(Built { lattice, maps: vec![lower_map, upper_map] })
}

/// Identifies all bottoms and all tops. The result has `0` at index 0, `1`
/// at index 1 and the interiors of the parts in order after that.
pub fn zero_one_sum(parts: &[&Lattice]) -> Result<Built> {
    for (i, p) in parts.iter().enumerate() {
        if p.len() < 2 {
            return Err(Error::PartTooSmall(i));
        }
    }
    let mut next = 2u32;
    let mut maps = Vec::with_capacity(parts.len());
    let mut covers = Vec::new();
    for p in parts {
        let mut map = vec![0u32; p.len()];
        for x in 0..p.len() as u32 {
            map[x as usize] = if x == p.bottom() {
                0
            } else if x == p.top() {
                1
            } else {
                next += 1;
                next - 1
            };
        }
        covers.extend(p.covers().map(|(x, y)| (map[x as usize], map[y as usize])));
        maps.push(map);
    }
    let lattice = Lattice::from_covers(next as usize, &covers)?;
    Ok(Built { lattice, maps })
}

/// Replaces the covering pair `iv` of `host` by a copy of `k`, identifying
/// `0_k` with `iv.lo` and `1_k` with `iv.hi`. Host indices are kept; new
/// elements follow them.
pub fn insert_into_prime_interval(host: &Lattice, iv: IntervalRef, k: &Lattice) -> Result<Built> {
    let mut b = insert_many(host, &[(iv, k)])?;
    let kmap = b.maps.pop().expect("one insertion map");
    let hmap = b.maps.pop().expect("host map");
    Ok(Built { lattice: b.lattice, maps: vec![hmap, kmap] })
}

/// Inserts several lattices into pairwise distinct covering pairs at once.
/// `maps[0]` is the host map, `maps[i + 1]` the map of the `i`-th inserted
/// lattice.
pub fn insert_many(host: &Lattice, items: &[(IntervalRef, &Lattice)]) -> Result<Built> {
    let mut replaced = std::collections::HashSet::new();
    for (i, (iv, k)) in items.iter().enumerate() {
        if !iv.is_prime(host) {
            return Err(Error::NotPrime { lo: iv.lo, hi: iv.hi });
        }
        if k.len() < 2 {
            return Err(Error::PartTooSmall(i));
        }
        if !replaced.insert((iv.lo, iv.hi)) {
            return Err(Error::Invalid(format!("interval [{}, {}] used twice", iv.lo, iv.hi)));
        }
    }
    let mut covers: Vec<(u32, u32)> =
        host.covers().filter(|c| !replaced.contains(c)).collect();
    let mut next = host.len() as u32;
    let mut maps = vec![(0..host.len() as u32).collect::<Vec<_>>()];
    for (iv, k) in items {
        let mut map = vec![0u32; k.len()];
        for x in 0..k.len() as u32 {
            map[x as usize] = if x == k.bottom() {
                iv.lo
            } else if x == k.top() {
                iv.hi
            } else {
                next += 1;
                next - 1
            };
        }
        covers.extend(k.covers().map(|(x, y)| (map[x as usize], map[y as usize])));
        maps.push(map);
    }
    let lattice = Lattice::from_covers(next as usize, &covers)?;
    Ok(Built { lattice, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_glued_at_a_point() {
        let c = Lattice::chain(3);
        let spec = GlueSpec { lower_filter_generator: 2, upper_ideal_generator: 0, iso: vec![(2, 0)] };
        let b = glue_hall_dilworth(&c, &c, &spec).unwrap();
        assert_eq!(b.lattice.len(), 5);
        assert_eq!(b.lattice.length(), 4);
        assert_eq!(b.maps[1], vec![2, 3, 4]);
    }

    #[test]
    fn chain_over_square() {
        // square 0 < 1,2 < 3 ; chain 0 < 1 < 2 ; glue ↑2 = {2,3} to ↓1 = {0,1}
        let sq = Lattice::boolean(2);
        let c = Lattice::chain(3);
        let spec = GlueSpec { lower_filter_generator: 2, upper_ideal_generator: 1, iso: vec![(2, 0), (3, 1)] };
        let b = glue_hall_dilworth(&sq, &c, &spec).unwrap();
        assert_eq!(b.lattice.len(), 5);
        assert_eq!(b.lattice.length(), 3);
    }

    #[test]
    fn glue_rejects_bad_iso() {
        let sq = Lattice::boolean(2);
        let c = Lattice::chain(3);
        let spec = GlueSpec { lower_filter_generator: 2, upper_ideal_generator: 1, iso: vec![(2, 1), (3, 0)] };
        assert!(matches!(glue_hall_dilworth(&sq, &c, &spec), Err(Error::IsoInvalid(_))));
    }

    #[test]
    fn sums_of_chains() {
        let c = Lattice::chain(3);
        let b = zero_one_sum(&[&c, &c]).unwrap();
        assert_eq!(b.lattice.len(), 4);
        assert_eq!(b.lattice.meet(2, 3), 0);
        assert_eq!(b.lattice.join(2, 3), 1);
        let m3 = zero_one_sum(&[&c, &c, &c]).unwrap();
        assert_eq!(m3.lattice.len(), 5);
        let one = Lattice::chain(1);
        assert_eq!(zero_one_sum(&[&c, &one]).unwrap_err(), Error::PartTooSmall(1));
    }

    #[test]
    fn insert_m3_into_chain() {
        let c = Lattice::chain(3);
        let m3 = Lattice::m_k(3);
        let b = insert_into_prime_interval(&c, IntervalRef::new(0, 1), &m3).unwrap();
        assert_eq!(b.lattice.len(), 6);
        assert_eq!(b.lattice.length(), 3);
        let two = Lattice::chain(2);
        let same = insert_into_prime_interval(&c, IntervalRef::new(1, 2), &two).unwrap();
        assert_eq!(same.lattice, c);
        assert!(matches!(
            insert_into_prime_interval(&c, IntervalRef::new(0, 2), &m3),
            Err(Error::NotPrime { .. })
        ));
    }
}

//! Small rigid simple blocks: stored incidence data, the constructors that
//! turn it into lattices, and the bounded searches that found it.

use super::labels::{Label, LabeledLattice};
use crate::congruence::is_simple;
use crate::error::{Error, Result};
use crate::order::Lattice;
use crate::symmetry::{is_rigid, is_selfdual};

/// Atom-coatom incidence of the 11-element edge block (4 atoms, 5 coatoms).
pub const EDGE_INCIDENCE: [[u8; 5]; 4] = [[1, 0, 1, 0, 1], [0, 0, 1, 1, 0], [1, 1, 0, 0, 0], [1, 0, 0, 0, 0]];

/// Atom-coatom incidence of the 10-element anchor block.
pub const ANCHOR_INCIDENCE: [[u8; 4]; 4] = [[1, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]];

/// Designated covering pair of the anchor: (atom index, coatom index).
pub const ANCHOR_INTERVAL: (usize, usize) = (0, 0);

/// Atom-to-middle incidence of the 12-element middle block.
pub const MIDDLE_LOWER: [[u8; 4]; 3] = [[1, 0, 1, 1], [1, 1, 0, 0], [1, 0, 0, 0]];

/// Involution on the middle rank defining the upper half of the middle block.
pub const MIDDLE_SIGMA: [usize; 4] = [0, 2, 1, 3];

/// Length-3 lattice `0 < atoms < coatoms < 1` with atom `i` below coatom `j`
/// iff `inc[i][j] != 0`. Indices: 0, atoms `1..=a`, coatoms, top.
pub fn incidence_lattice<R: AsRef<[u8]>>(inc: &[R]) -> Result<Lattice> {
    let a = inc.len();
    let c = inc.first().map_or(0, |r| r.as_ref().len());
    let top = (a + c + 1) as u32;
    let mut covers = Vec::new();
    for i in 0..a {
        covers.push((0, i as u32 + 1));
    }
    for j in 0..c {
        covers.push(((a + 1 + j) as u32, top));
    }
    for (i, row) in inc.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != c {
            return Err(Error::Invalid("ragged incidence matrix".into()));
        }
        for (j, &b) in row.iter().enumerate() {
            if b != 0 {
                covers.push((i as u32 + 1, (a + 1 + j) as u32));
            }
        }
    }
    Lattice::from_covers(a + c + 2, &covers)
}

/// Length-4 lattice with ranks `1, a, m, a, 1`: atom `i` below middle `j` iff
/// `lower[i][j]`, middle `j` below coatom `i` iff `lower[i][sigma[j]]`.
/// Indices: 0, atoms, middles, coatoms, top. Atom `i` and coatom `i` are
/// exchanged by an order-reversing bijection.
pub fn middle_lattice<R: AsRef<[u8]>>(lower: &[R], sigma: &[usize]) -> Result<Lattice> {
    let a = lower.len();
    let m = sigma.len();
    let mid = |j: usize| (1 + a + j) as u32;
    let co = |i: usize| (1 + a + m + i) as u32;
    let top = (2 * a + m + 1) as u32;
    let mut covers = Vec::new();
    for i in 0..a {
        covers.push((0, i as u32 + 1));
        covers.push((co(i), top));
        let row = lower[i].as_ref();
        for j in 0..m {
            if row[j] != 0 {
                covers.push((i as u32 + 1, mid(j)));
            }
            if row[sigma[j]] != 0 {
                covers.push((mid(j), co(i)));
            }
        }
    }
    Lattice::from_covers(2 * a + m + 2, &covers)
}

pub fn edge_block() -> LabeledLattice {
    LabeledLattice::new(incidence_lattice(&EDGE_INCIDENCE).expect("stored edge block is a lattice"))
}

pub fn edge_block_dual() -> LabeledLattice {
    let e = edge_block();
    LabeledLattice::new(e.lattice.dual())
}

pub fn anchor_block() -> LabeledLattice {
    let mut l = LabeledLattice::new(incidence_lattice(&ANCHOR_INCIDENCE).expect("stored anchor is a lattice"));
    let (i, j) = ANCHOR_INTERVAL;
    l.labels.insert(Label::AnchorLo, i as u32 + 1);
    l.labels.insert(Label::AnchorHi, (ANCHOR_INCIDENCE.len() + 1 + j) as u32);
    l
}

pub fn middle_block() -> LabeledLattice {
    let mut l = LabeledLattice::new(
        middle_lattice(&MIDDLE_LOWER, &MIDDLE_SIGMA).expect("stored middle block is a lattice"),
    );
    l.labels.insert(Label::DesignatedAtom, 1);
    l.labels.insert(Label::DesignatedCoatom, (1 + MIDDLE_LOWER.len() + MIDDLE_SIGMA.len()) as u32);
    l
}

/// Cheap necessary conditions for a rigid length-3 incidence lattice: rows
/// and columns nonempty, rows (and optionally columns) pairwise distinct,
/// and no two atoms below two common coatoms.
fn plausible_incidence(inc: &[Vec<u8>], distinct_columns: bool) -> bool {
    let a = inc.len();
    let c = inc[0].len();
    let col = |j: usize| inc.iter().map(|r| r[j]).collect::<Vec<u8>>();
    let cols: Vec<Vec<u8>> = (0..c).map(col).collect();
    if inc.iter().any(|r| r.iter().all(|&b| b == 0)) || cols.iter().any(|r| r.iter().all(|&b| b == 0)) {
        return false;
    }
    for x in 0..a {
        for y in x + 1..a {
            if inc[x] == inc[y] {
                return false;
            }
            let shared = (0..c).filter(|&j| inc[x][j] != 0 && inc[y][j] != 0).count();
            if shared > 1 {
                return false;
            }
        }
    }
    !distinct_columns || (0..c).all(|x| (x + 1..c).all(|y| cols[x] != cols[y]))
}

/// The first `atoms x coatoms` incidence matrix, in increasing row-major bit
/// order, whose lattice is simple and rigid, and is self-dual iff `selfdual`.
pub fn search_incidence_block(atoms: usize, coatoms: usize, selfdual: bool) -> Result<Option<Vec<Vec<u8>>>> {
    let bits = atoms * coatoms;
    assert!(bits <= 30, "incidence search space too large");
    for mask in 0u64..(1u64 << bits) {
        let inc: Vec<Vec<u8>> = (0..atoms)
            .map(|i| (0..coatoms).map(|j| (mask >> (i * coatoms + j) & 1) as u8).collect())
            .collect();
        if !plausible_incidence(&inc, true) {
            continue;
        }
        let Ok(l) = incidence_lattice(&inc) else { continue };
        if !is_simple(&l) || !is_rigid(&l)? {
            continue;
        }
        if is_selfdual(&l)?.is_some() == selfdual {
            return Ok(Some(inc));
        }
    }
    Ok(None)
}

/// Involutions of `0..m` in lexicographic order of their image arrays.
pub fn involutions(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        if cur.iter().enumerate().all(|(i, &x)| cur[x] == i) {
            out.push(cur.clone());
        }
        // next permutation
        let mut i = m;
        while i > 1 && cur[i - 2] >= cur[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let mut j = m - 1;
        while cur[j] <= cur[i - 2] {
            j -= 1;
        }
        cur.swap(i - 2, j);
        cur[i - 1..].reverse();
    }
    out
}

/// The first `(lower, sigma)` (lower incidence in increasing row-major bit
/// order, then involutions in order) giving a simple rigid middle lattice.
pub fn search_middle_block(atoms: usize, mids: usize) -> Result<Option<(Vec<Vec<u8>>, Vec<usize>)>> {
    let bits = atoms * mids;
    assert!(bits <= 24, "middle block search space too large");
    let invs = involutions(mids);
    for mask in 0u64..(1u64 << bits) {
        let lower: Vec<Vec<u8>> = (0..atoms)
            .map(|i| (0..mids).map(|j| (mask >> (i * mids + j) & 1) as u8).collect())
            .collect();
        if !plausible_incidence(&lower, false) {
            continue;
        }
        for sigma in &invs {
            let Ok(l) = middle_lattice(&lower, sigma) else { continue };
            if !l.is_ranked() || l.length() != 4 {
                continue;
            }
            if is_simple(&l) && is_rigid(&l)? {
                return Ok(Some((lower, sigma.clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_count() {
        assert_eq!(involutions(4).len(), 10);
        assert_eq!(involutions(1), vec![vec![0]]);
    }

    #[test]
    fn searches_reproduce_stored_blocks() {
        let edge = search_incidence_block(4, 5, false).unwrap().unwrap();
        assert_eq!(edge, EDGE_INCIDENCE.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        for k in 2..4 {
            assert_eq!(search_incidence_block(k, k, true).unwrap(), None);
        }
        let anchor = search_incidence_block(4, 4, true).unwrap().unwrap();
        assert_eq!(anchor, ANCHOR_INCIDENCE.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let (lower, sigma) = search_middle_block(3, 4).unwrap().unwrap();
        assert_eq!(lower, MIDDLE_LOWER.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        assert_eq!(sigma, MIDDLE_SIGMA.to_vec());
    }
}

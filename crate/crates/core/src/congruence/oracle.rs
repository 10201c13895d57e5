use super::partition::Partition;
use crate::error::{Error, Result};
use crate::order::Lattice;

pub const ORACLE_BOUND: usize = 14;

/// Every congruence of a small lattice, found by enumerating partitions into
/// intervals and testing compatibility with `∨ z` and `∧ z` directly.
pub fn all_congruences(l: &Lattice) -> Result<Vec<Partition>> {
    all_congruences_bounded(l, ORACLE_BOUND)
}

pub fn all_congruences_bounded(l: &Lattice, bound: usize) -> Result<Vec<Partition>> {
    let n = l.len();
    if n > bound {
        return Err(Error::TooLarge { size: n, bound });
    }
    let order = l.poset().linear_extension().to_vec();
    let mut label = vec![u32::MAX; n];
    let mut out = Vec::new();
    intervals(l, &order, &mut label, &mut out);
    out.sort();
    Ok(out)
}

fn intervals(l: &Lattice, order: &[u32], label: &mut Vec<u32>, out: &mut Vec<Partition>) {
    let Some(&x) = order.iter().find(|&&x| label[x as usize] == u32::MAX) else {
        if compatible(l, label) {
            out.push(Partition::from_labels(label));
        }
        return;
    };
    let n = l.len() as u32;
    for b in 0..n {
        if !l.leq(x, b) {
            continue;
        }
        let block: Vec<u32> = (0..n).filter(|&z| l.leq(x, z) && l.leq(z, b)).collect();
        if block.iter().any(|&z| label[z as usize] != u32::MAX) {
            continue;
        }
        for &z in &block {
            label[z as usize] = x;
        }
        intervals(l, order, label, out);
        for &z in &block {
            label[z as usize] = u32::MAX;
        }
    }
}

fn compatible(l: &Lattice, label: &[u32]) -> bool {
    let n = l.len() as u32;
    (0..n).all(|x| {
        let m = label[x as usize];
        m == x
            || (0..n).all(|z| {
                label[l.join(x, z) as usize] == label[l.join(m, z) as usize]
                    && label[l.meet(x, z) as usize] == label[l.meet(m, z) as usize]
            })
    })
}

/// The least congruence in `all` containing the pair `(a, b)`.
pub fn least_containing(all: &[Partition], a: u32, b: u32) -> Option<&Partition> {
    let holders: Vec<&Partition> = all.iter().filter(|p| p.same(a, b)).collect();
    holders.iter().copied().find(|p| holders.iter().all(|q| p.refines(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_congruences(&Lattice::chain(2)).unwrap().len(), 2);
        assert_eq!(all_congruences(&Lattice::m_k(3)).unwrap().len(), 2);
        assert_eq!(all_congruences(&Lattice::n5()).unwrap().len(), 5);
        assert_eq!(all_congruences(&Lattice::chain(4)).unwrap().len(), 8);
        assert!(matches!(all_congruences(&Lattice::chain(15)), Err(Error::TooLarge { .. })));
    }
}

use serde::{Deserialize, Serialize};

/// An equivalence on `0..n` in canonical form: blocks sorted by least
/// element, elements sorted inside blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<u32>,
}

impl Partition {
    /// Canonical partition whose blocks are the fibres of `labels`.
    pub fn from_labels(labels: &[u32]) -> Partition {
        let n = labels.len();
        let mut first: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut block_of = vec![0u32; n];
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        for (x, &lab) in labels.iter().enumerate() {
            let b = *first.entry(lab).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() as u32 - 1
            });
            blocks[b as usize].push(x as u32);
            block_of[x] = b;
        }
        Partition { blocks, block_of }
    }

    pub fn discrete(n: usize) -> Partition {
        Partition::from_labels(&(0..n as u32).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Partition {
        Partition::from_labels(&vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: u32) -> u32 {
        self.block_of[x as usize]
    }

    pub fn same(&self, x: u32, y: u32) -> bool {
        self.block_of[x as usize] == self.block_of[y as usize]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.len()
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| other.same(b[0], x)))
    }
}

impl TryFrom<Vec<Vec<u32>>> for Partition {
    type Error = crate::error::Error;
    fn try_from(blocks: Vec<Vec<u32>>) -> crate::error::Result<Partition> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut labels = vec![u32::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                match labels.get_mut(x as usize) {
                    Some(slot) if *slot == u32::MAX => *slot = i as u32,
                    _ => {
                        return Err(crate::error::Error::Invalid(format!(
                            "element {x} is repeated or out of range in a partition"
                        )))
                    }
                }
            }
        }
        Ok(Partition::from_labels(&labels))
    }
}

impl From<Partition> for Vec<Vec<u32>> {
    fn from(p: Partition) -> Vec<Vec<u32>> {
        p.blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let p = Partition::from_labels(&[7, 3, 7, 3, 9]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3], vec![4]]);
        let q = Partition::from_labels(&[1, 2, 1, 2, 0]);
        assert_eq!(p, q);
        assert!(Partition::discrete(5).refines(&p));
        assert!(p.refines(&Partition::full(5)));
        assert!(!Partition::full(5).refines(&p));
    }

    #[test]
    fn json_is_block_list() {
        let p = Partition::from_labels(&[0, 0, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[0,1],[2]]");
        let back: Partition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}

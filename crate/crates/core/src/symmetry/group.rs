use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..n` as its image array.
pub type Permutation = Vec<u32>;

/// `(p ∘ q)(x) = p(q(x))`
pub fn compose(p: &[u32], q: &[u32]) -> Permutation {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub fn inverse(p: &[u32]) -> Permutation {
    let mut inv = vec![0u32; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

pub fn identity(n: usize) -> Permutation {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// A finite permutation group given by all of its elements; the identity
/// comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<usize>,
}

impl PermGroup {
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<PermGroup> {
        let id = identity(degree);
        for p in &elements {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| (x as usize) >= degree || std::mem::replace(&mut seen[x as usize], true)) {
                return Err(Error::Invalid("element is not a permutation of the right degree".into()));
            }
        }
        elements.sort();
        elements.dedup();
        let Some(pos) = elements.iter().position(|p| *p == id) else {
            return Err(Error::Invalid("identity missing".into()));
        };
        let idp = elements.remove(pos);
        elements.insert(0, idp);
        let index: HashMap<&[u32], usize> =
            elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        for p in &elements {
            for q in &elements {
                if !index.contains_key(compose(p, q).as_slice()) {
                    return Err(Error::Invalid("element set is not closed under composition".into()));
                }
            }
        }
        let generators = greedy_generators(&elements);
        Ok(PermGroup { degree, elements, generators })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, elements: vec![identity(degree)], generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub fn to_json(&self) -> Vec<Vec<u32>> {
        self.elements.clone()
    }
}

fn greedy_generators(elements: &[Permutation]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut reached: HashMap<Permutation, ()> = HashMap::new();
    reached.insert(elements[0].clone(), ());
    for (i, p) in elements.iter().enumerate() {
        if reached.contains_key(p) {
            continue;
        }
        gens.push(i);
        // closure by right multiplication with generators
        let mut queue: VecDeque<Permutation> = reached.keys().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = compose(&x, &elements[g]);
                if reached.insert(y.clone(), ()).is_none() {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// An abstract finite group as its Cayley table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupTableJson", into = "GroupTableJson")]
pub struct GroupTable {
    table: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableJson {
    pub n: usize,
    pub table: Vec<Vec<u32>>,
}

impl TryFrom<GroupTableJson> for GroupTable {
    type Error = Error;
    fn try_from(j: GroupTableJson) -> Result<GroupTable> {
        if j.table.len() != j.n {
            return Err(Error::InvalidTable(format!("declared order {} but {} rows", j.n, j.table.len())));
        }
        GroupTable::new(j.table)
    }
}

impl From<GroupTable> for GroupTableJson {
    fn from(g: GroupTable) -> GroupTableJson {
        GroupTableJson { n: g.order(), table: g.table }
    }
}

impl GroupTable {
    /// Validates identity at 0, latin-square rows and columns, and associativity.
    pub fn new(table: Vec<Vec<u32>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j] as usize], true) {
                    return Err(Error::InvalidTable(format!("column {j} is not a permutation")));
                }
            }
        }
        for i in 0..n {
            if table[0][i] != i as u32 || table[i][0] != i as u32 {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c] as usize] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { table })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.table[a as usize].iter().position(|&x| x == 0).expect("latin square") as u32
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.order() as u32).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as u32;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !std::mem::replace(&mut inside[y as usize], true) {
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    pub fn generates(&self, gens: &[u32]) -> bool {
        self.closure(gens).iter().all(|&b| b)
    }

    /// A generating set of least size (exhaustive up to three generators,
    /// greedy beyond), lexicographically first among those tried.
    pub fn small_generating_set(&self) -> Vec<u32> {
        let n = self.order() as u32;
        if n == 1 {
            return Vec::new();
        }
        let elems: Vec<u32> = (1..n).collect();
        for k in 1..=3usize.min(elems.len()) {
            if let Some(found) = first_subset(&elems, k, &mut |s| self.generates(s)) {
                return found;
            }
        }
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for a in 1..n {
            if !inside[a as usize] {
                gens.push(a);
                inside = self.closure(&gens);
            }
        }
        gens
    }
}

fn first_subset(elems: &[u32], k: usize, pred: &mut dyn FnMut(&[u32]) -> bool) -> Option<Vec<u32>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let m = elems.len();
    loop {
        let cur: Vec<u32> = idx.iter().map(|&i| elems[i]).collect();
        if pred(&cur) {
            return Some(cur);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < m - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The abstract group of `pg`: index `i` is `pg.elements()[i]`.
pub fn group_of(pg: &PermGroup) -> GroupTable {
    let index: HashMap<&[u32], u32> =
        pg.elements().iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect();
    let table = pg
        .elements()
        .iter()
        .map(|p| pg.elements().iter().map(|q| index[compose(p, q).as_slice()]).collect())
        .collect();
    GroupTable::new(table).expect("a permutation group yields a valid table")
}

pub const GROUP_ISO_BOUND: usize = 64;

/// Whether `a` and `b` are isomorphic, by extending assignments of images
/// to a small generating set of `a`.
pub fn groups_isomorphic(a: &GroupTable, b: &GroupTable) -> Result<bool> {
    Ok(group_isomorphism(a, b)?.is_some())
}

/// An isomorphism `a -> b` as an element map, if one exists.
pub fn group_isomorphism(a: &GroupTable, b: &GroupTable) -> Result<Option<Vec<u32>>> {
    for g in [a, b] {
        if g.order() > GROUP_ISO_BOUND {
            return Err(Error::TooLarge { size: g.order(), bound: GROUP_ISO_BOUND });
        }
    }
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return Ok(None);
    }
    let gens = a.small_generating_set();
    let b_orders: Vec<u32> = (0..b.order() as u32).map(|x| b.element_order(x)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order() as u32).filter(|&y| b_orders[y as usize] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(assign(a, b, &gens, &candidates, &mut images))
}

fn assign(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[u32],
    cands: &[Vec<u32>],
    images: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    if images.len() == gens.len() {
        return extend(a, b, gens, images);
    }
    for &y in &cands[images.len()] {
        images.push(y);
        if let Some(m) = assign(a, b, gens, cands, images) {
            return Some(m);
        }
        images.pop();
    }
    None
}

fn extend(a: &GroupTable, b: &GroupTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = a.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(map[x as usize], h);
            if map[y as usize] == u32::MAX {
                map[y as usize] = img;
                queue.push_back(y);
            } else if map[y as usize] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == u32::MAX || std::mem::replace(&mut hit[m as usize], true) {
            return None;
        }
    }
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            if map[a.mul(x, y) as usize] != b.mul(map[x as usize], map[y as usize]) {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u32) -> GroupTable {
        GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()).unwrap()
    }

    fn klein() -> GroupTable {
        GroupTable::new((0..4u32).map(|a| (0..4u32).map(|b| a ^ b).collect()).collect()).unwrap()
    }

    #[test]
    fn c4_is_not_v4() {
        assert!(!groups_isomorphic(&cyclic(4), &klein()).unwrap());
        assert!(groups_isomorphic(&cyclic(4), &cyclic(4)).unwrap());
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn perm_group_round_trip() {
        let pg = PermGroup::from_elements(3, vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 0, 1]]).unwrap();
        assert_eq!(pg.elements()[0], vec![0, 1, 2]);
        let t = group_of(&pg);
        assert!(groups_isomorphic(&t, &cyclic(3)).unwrap());
        assert_eq!(pg.generators().count(), 1);
    }

    #[test]
    fn generating_sets() {
        assert_eq!(cyclic(6).small_generating_set(), vec![1]);
        assert_eq!(klein().small_generating_set(), vec![1, 2]);
    }
}

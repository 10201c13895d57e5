//! Exhaustive generation of small lattices, up to isomorphism.

use std::collections::HashSet;

use super::lattice::Lattice;

/// Every lattice on exactly `n` elements, one per isomorphism class.
/// Index 0 is the bottom and `n - 1` the top. Practical up to `n = 8`.
pub fn lattices_of_size(n: usize) -> Vec<Lattice> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Lattice::chain(1)],
        2 => return vec![Lattice::chain(2)],
        _ => {}
    }
    let m = n - 2;
    assert!(m <= 7, "lattice enumeration is limited to 9 elements");
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let perms = permutations(m);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        // relation on middle elements, naturally labeled (i < j only)
        let mut rel = [[false; 8]; 8];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        if !transitive(&rel, m) {
            continue;
        }
        let mut covers = Vec::new();
        for i in 0..m {
            covers.push((0, i as u32 + 1));
            covers.push((i as u32 + 1, n as u32 - 1));
            for j in 0..m {
                if rel[i][j] {
                    covers.push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
        let Ok(l) = Lattice::from_covers(n, &covers) else {
            continue;
        };
        let canon = perms.iter().map(|p| encode(&rel, m, p)).min().unwrap_or(0);
        if seen.insert(canon) {
            out.push(l);
        }
    }
    out
}

/// All lattices with at most `n` elements.
pub fn lattices_up_to(n: usize) -> Vec<Lattice> {
    (1..=n).flat_map(lattices_of_size).collect()
}

fn transitive(rel: &[[bool; 8]; 8], m: usize) -> bool {
    for i in 0..m {
        for j in 0..m {
            if rel[i][j] {
                for k in 0..m {
                    if rel[j][k] && !rel[i][k] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn encode(rel: &[[bool; 8]; 8], m: usize, p: &[usize]) -> u64 {
    let mut code = 0u64;
    for i in 0..m {
        for j in 0..m {
            if rel[i][j] {
                code |= 1 << (p[i] * m + p[j]);
            }
        }
    }
    code
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    heap_permute(m, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| lattices_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
    }
}

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use proptest::prelude::*;

use princlat::blocks::{build_S0, classify_edge, edge_block, edge_block_dual, EdgeKind};
use princlat::congruence::{all_congruences, congruence_generated, least_containing, principal_congruence, CongruenceEngine};
use princlat::graph::{cayley_digraph, direct_product, frucht_graph, group_from_spec};
use princlat::order::enumerate::{lattices_of_size, lattices_up_to};
use princlat::order::{glue_hall_dilworth, insert_into_prime_interval, zero_one_sum, GlueSpec, IntervalRef, Lattice};
use princlat::representation::{Frame, GadgetTemplate};
use princlat::symmetry::{
    group_of, groups_isomorphic, lattice_automorphisms, poset_isomorphic, GroupTable, PermGroup,
};

fn corpus() -> &'static [Lattice] {
    static C: OnceLock<Vec<Lattice>> = OnceLock::new();
    C.get_or_init(|| lattices_up_to(7).into_iter().filter(|l| l.len() >= 2).collect())
}

fn relabel(l: &Lattice, perm: &[u32]) -> Lattice {
    let covers: Vec<(u32, u32)> = l.covers().map(|(x, y)| (perm[x as usize], perm[y as usize])).collect();
    Lattice::from_covers(l.len(), &covers).unwrap()
}

/// A corpus lattice under a random relabelling.
fn lattice() -> impl Strategy<Value = Lattice> {
    (0..corpus().len()).prop_flat_map(|i| {
        let l = &corpus()[i];
        Just((0..l.len() as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(move |p| relabel(&corpus()[i], &p))
    })
}

fn sorted_covers(l: &Lattice) -> Vec<(u32, u32)> {
    let mut c: Vec<_> = l.covers().collect();
    c.sort_unstable();
    c
}

fn comparable_pairs(l: &Lattice) -> Vec<(u32, u32)> {
    (0..l.len() as u32).flat_map(|a| l.poset().up_set(a).ones().map(move |b| (a, b as u32))).collect()
}

/// Every maximal chain from bottom to top.
fn maximal_chains(l: &Lattice) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![l.bottom()]];
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        let ups = l.poset().upper_covers(last);
        if ups.is_empty() {
            out.push(c);
            continue;
        }
        for &u in ups {
            let mut d = c.clone();
            d.push(u);
            stack.push(d);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(l in lattice()) {
        prop_assert_eq!(sorted_covers(&l.dual().dual()), sorted_covers(&l));
    }

    #[test]
    fn zero_one_sum_counts_and_separates(parts in prop::collection::vec(lattice(), 1..4)) {
        let refs: Vec<&Lattice> = parts.iter().collect();
        let b = zero_one_sum(&refs).unwrap();
        let want: usize = parts.iter().map(|p| p.len() - 2).sum::<usize>() + 2;
        prop_assert_eq!(b.lattice.len(), want);
        let l = &b.lattice;
        for i in 0..parts.len() {
            for j in 0..parts.len() {
                if i == j {
                    continue;
                }
                let inner = |k: usize| {
                    let p = &parts[k];
                    (0..p.len() as u32).filter(move |&x| x != p.bottom() && x != p.top())
                };
                for x in inner(i) {
                    for y in inner(j) {
                        let (x, y) = (b.maps[i][x as usize], b.maps[j][y as usize]);
                        prop_assert_eq!(l.meet(x, y), l.bottom());
                        prop_assert_eq!(l.join(x, y), l.top());
                    }
                }
            }
        }
    }

    #[test]
    fn gluing_at_a_point_adds_lengths(lower in lattice(), upper in lattice()) {
        let spec = GlueSpec {
            lower_filter_generator: lower.top(),
            upper_ideal_generator: upper.bottom(),
            iso: vec![(lower.top(), upper.bottom())],
        };
        let b = glue_hall_dilworth(&lower, &upper, &spec).unwrap();
        prop_assert_eq!(b.lattice.len(), lower.len() + upper.len() - 1);
        prop_assert_eq!(b.lattice.length(), lower.length() + upper.length());
    }

    #[test]
    fn insertion_lengthens_exactly_the_chains_through_the_interval(
        host in lattice(), k in lattice(), pick in any::<prop::sample::Index>()
    ) {
        let covers: Vec<_> = host.covers().collect();
        let (lo, hi) = covers[pick.index(covers.len())];
        let b = insert_into_prime_interval(&host, IntervalRef::new(lo, hi), &k).unwrap();
        let l = &b.lattice;
        prop_assert_eq!(l.len(), host.len() + k.len() - 2);
        let in_host: Vec<bool> = (0..l.len()).map(|x| x < host.len()).collect();
        let host_chains: BTreeSet<Vec<u32>> = maximal_chains(&host).into_iter().collect();
        let k_chain_lengths: BTreeSet<usize> = maximal_chains(&k).iter().map(|c| c.len() - 1).collect();
        for c in maximal_chains(l) {
            let projected: Vec<u32> = c.iter().copied().filter(|&x| in_host[x as usize]).collect();
            prop_assert!(host_chains.contains(&projected));
            let through = projected.windows(2).any(|w| w == [lo, hi]);
            let grown = c.len() as isize - projected.len() as isize;
            if through {
                prop_assert!(k_chain_lengths.contains(&((grown + 1) as usize)));
            } else {
                prop_assert_eq!(grown, 0);
            }
        }
    }

    #[test]
    fn isomorphism_is_symmetric_and_order_exact(l in lattice(), seed in any::<u64>()) {
        let mut perm: Vec<u32> = (0..l.len() as u32).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = relabel(&l, &perm);
        let f = poset_isomorphic(l.poset(), r.poset()).unwrap();
        prop_assert!(f.is_some());
        prop_assert!(poset_isomorphic(r.poset(), l.poset()).unwrap().is_some());
        prop_assert!(poset_isomorphic(l.poset(), l.poset()).unwrap().is_some());
        let f = f.unwrap();
        for x in 0..l.len() as u32 {
            for y in 0..l.len() as u32 {
                prop_assert_eq!(l.leq(x, y), r.leq(f[x as usize], f[y as usize]));
            }
        }
    }

    #[test]
    fn closure_matches_the_oracle(l in lattice()) {
        let all = all_congruences(&l).unwrap();
        let e = CongruenceEngine::new(&l);
        for (a, b) in comparable_pairs(&l) {
            let want = least_containing(&all, a, b).unwrap();
            prop_assert_eq!(&principal_congruence(&l, a, b).unwrap(), want);
            prop_assert_eq!(&e.partition(&e.con(a, b)), want);
        }
    }

    #[test]
    fn principal_congruences_are_monotone(l in lattice()) {
        let e = CongruenceEngine::new(&l);
        let pairs = comparable_pairs(&l);
        for &(a, b) in &pairs {
            let outer = e.con(a, b);
            for &(c, d) in &pairs {
                if l.leq(a, c) && l.leq(d, b) {
                    prop_assert!(e.con(c, d).is_subset(&outer));
                }
            }
        }
        prop_assert!(e.is_full(&e.con(l.bottom(), l.top())));
    }

    #[test]
    fn congruence_of_a_pair_is_generated_by_any_chain_between(l in lattice()) {
        for (x, y) in comparable_pairs(&l) {
            // greedy chain: always step to the first upper cover below y
            let mut steps = Vec::new();
            let mut z = x;
            while z != y {
                let next = *l.poset().upper_covers(z).iter().find(|&&u| l.leq(u, y)).unwrap();
                steps.push((z, next));
                z = next;
            }
            prop_assert_eq!(congruence_generated(&l, &steps), principal_congruence(&l, x, y).unwrap());
        }
    }

    #[test]
    fn dual_has_the_same_automorphism_group(l in lattice()) {
        let a = lattice_automorphisms(&l).unwrap();
        let b = lattice_automorphisms(&l.dual()).unwrap();
        prop_assert_eq!(a.order(), b.order());
        let (ga, gb) = (group_of(&a), group_of(&b));
        // beyond the isomorphism test's bound (M5 has S5), compare element orders
        if ga.order() <= 64 {
            prop_assert!(groups_isomorphic(&ga, &gb).unwrap());
        } else {
            prop_assert_eq!(ga.order_profile(), gb.order_profile());
        }
        for p in a.elements() {
            for (x, y) in l.covers() {
                prop_assert!(l.is_cover(p[x as usize], p[y as usize]));
            }
        }
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    let n = p.len();
    let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Automorphisms by trying every permutation of the elements strictly
/// between the bounds.
fn exhaustive_automorphisms(l: &Lattice) -> BTreeSet<Vec<u32>> {
    let inner: Vec<u32> = (0..l.len() as u32).filter(|&x| x != l.bottom() && x != l.top()).collect();
    let covers: Vec<_> = l.covers().collect();
    let mut images = inner.clone();
    let mut out = BTreeSet::new();
    loop {
        let mut p: Vec<u32> = (0..l.len() as u32).collect();
        for (&x, &y) in inner.iter().zip(&images) {
            p[x as usize] = y;
        }
        if covers.iter().all(|&(x, y)| l.is_cover(p[x as usize], p[y as usize])) {
            out.insert(p);
        }
        if !next_permutation(&mut images) {
            return out;
        }
    }
}

#[test]
fn refined_search_finds_exactly_the_exhaustive_automorphisms() {
    let mut seen = 0;
    for l in lattices_up_to(7).into_iter().chain(lattices_of_size(8)).chain(lattices_of_size(9)) {
        let fast: BTreeSet<Vec<u32>> = lattice_automorphisms(&l).unwrap().elements().iter().cloned().collect();
        assert_eq!(fast, exhaustive_automorphisms(&l), "{:?}", sorted_covers(&l));
        seen += 1;
    }
    assert!(seen > 300);
}

fn perm_closure(degree: usize, gens: &[Vec<u32>]) -> PermGroup {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([(0..degree as u32).collect()]);
    let mut queue: VecDeque<Vec<u32>> = seen.iter().cloned().collect();
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<u32> = p.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    PermGroup::from_elements(degree, seen.into_iter().collect()).unwrap()
}

/// `⟨a, x | a^{2n}, x² = a^n, x a x⁻¹ = a⁻¹⟩`, element `a^k x^j` at `2k + j`.
fn dicyclic(n: u32) -> GroupTable {
    let m = 2 * n;
    let idx = |k: u32, j: u32| (2 * (k % m) + j) as usize;
    let mut t = vec![vec![0u32; 2 * m as usize]; 2 * m as usize];
    for k in 0..m {
        for j in 0..2 {
            for l in 0..m {
                for i in 0..2 {
                    let moved = if j == 1 { m - l } else { l };
                    let (mut e, f) = (k + moved, j + i);
                    if f == 2 {
                        e += n;
                    }
                    t[idx(k, j)][idx(l, i)] = idx(e, f % 2) as u32;
                }
            }
        }
    }
    GroupTable::new(t).unwrap()
}

/// One representative per isomorphism class of order at most 12.
fn small_groups() -> Vec<(&'static str, GroupTable)> {
    let spec = |s: &str| group_from_spec(s).unwrap();
    let a4 = perm_closure(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
    let mut v: Vec<(&str, GroupTable)> = vec![
        ("c1", spec("c1")), ("c2", spec("c2")), ("c3", spec("c3")), ("c4", spec("c4")), ("v4", spec("v4")),
        ("c5", spec("c5")), ("c6", spec("c6")), ("s3", spec("s3")), ("c7", spec("c7")), ("c8", spec("c8")),
        ("c2xc4", spec("c2xc4")), ("c2xc2xc2", spec("c2xc2xc2")), ("d4", spec("d4")), ("q8", dicyclic(2)),
        ("c9", spec("c9")), ("c3xc3", spec("c3xc3")), ("c10", spec("c10")), ("d5", spec("d5")), ("c11", spec("c11")),
        ("c12", spec("c12")), ("c2xc6", spec("c2xc6")), ("d6", spec("d6")), ("a4", group_of(&a4)), ("dic3", dicyclic(3)),
    ];
    v.push(("c3xc4", direct_product(&spec("c3"), &spec("c4")).unwrap()));
    v
}

fn identity_of(g: &GroupTable) -> u32 {
    (0..g.order() as u32).find(|&e| g.mul(e, e) == e).unwrap()
}

/// Tries every assignment of images to a generating set of `a`.
fn brute_force_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    let gens = a.small_generating_set();
    let mut choice = vec![0u32; gens.len()];
    loop {
        let mut map = vec![u32::MAX; n];
        map[identity_of(a) as usize] = identity_of(b);
        let mut queue = VecDeque::from([identity_of(a)]);
        let mut ok = true;
        while let Some(x) = queue.pop_front() {
            for (s, &img) in gens.iter().zip(&choice) {
                let (y, fy) = (a.mul(x, *s), b.mul(map[x as usize], img));
                match map[y as usize] {
                    u32::MAX => {
                        map[y as usize] = fy;
                        queue.push_back(y);
                    }
                    v if v != fy => ok = false,
                    _ => {}
                }
            }
        }
        ok &= map.iter().collect::<BTreeSet<_>>().len() == n;
        ok &= (0..n as u32).all(|x| (0..n as u32).all(|y| map[a.mul(x, y) as usize] == b.mul(map[x as usize], map[y as usize])));
        if ok {
            return true;
        }
        // next tuple of images
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if (choice[i] as usize) < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn group_isomorphism_matches_brute_force() {
    let groups = small_groups();
    for (i, (na, a)) in groups.iter().enumerate() {
        for (nb, b) in &groups[i..] {
            let fast = groups_isomorphic(a, b).unwrap();
            assert_eq!(fast, brute_force_isomorphic(a, b), "{na} vs {nb}");
            // c3xc4 is the one repeated class
            let same = na == nb || (*na == "c12" && *nb == "c3xc4");
            assert_eq!(fast, same, "{na} vs {nb}");
        }
    }
}

#[test]
fn cayley_digraphs_act_regularly() {
    for (name, g) in small_groups() {
        let gens = g.small_generating_set();
        let d = cayley_digraph(&g, &gens).unwrap();
        for c in 0..gens.len() as u32 {
            let mut heads = vec![false; g.order()];
            let mut tails = vec![false; g.order()];
            for &(x, y, col) in &d.arcs {
                if col == c {
                    tails[x as usize] = true;
                    heads[y as usize] = true;
                }
            }
            assert!(heads.iter().chain(&tails).all(|&b| b), "{name}: colour {c} is not a permutation");
        }
        let aut = d.automorphisms().unwrap();
        assert_eq!(aut.order(), g.order(), "{name}");
        for p in aut.elements().iter().filter(|p| p.iter().enumerate().any(|(i, &x)| i as u32 != x)) {
            assert!(p.iter().enumerate().all(|(i, &x)| i as u32 != x), "{name}: a nonidentity automorphism fixes a vertex");
        }
    }
}

#[test]
fn frucht_graphs_grow_linearly() {
    const RETRIES: usize = 4;
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 8) {
        let k = g.small_generating_set().len();
        let graph = frucht_graph(&g).unwrap();
        let widest = 2 * (k + 2 * RETRIES) + 1;
        let gadget = 2 + widest + (widest + 1);
        assert!(graph.vertex_count() <= g.order() * (2 + gadget * k), "{name}: {} vertices", graph.vertex_count());
    }
}

/// Congruence inclusions among three chains follow exactly the reflexive
/// transitive closure of the gadget arrows. Each pair of chains gets no
/// gadget, a one-way gadget in either direction, or a double gadget.
#[test]
fn gadget_effects_stay_local() {
    let pairs = [(1u32, 2u32), (1, 3), (2, 3)];
    for code in 0..4u32.pow(3) {
        let mut f = Frame::new(&[1, 2, 3], 0).unwrap();
        let mut reach = [[false; 4]; 4];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            let (one_way, double) = (GadgetTemplate::one_way(), GadgetTemplate::double());
            let (t, dirs): (&GadgetTemplate, &[(u32, u32)]) = match code / 4u32.pow(i as u32) % 4 {
                0 => continue,
                1 => (&one_way, &[(x, y)]),
                2 => (&one_way, &[(y, x)]),
                _ => (&double, &[(x, y), (y, x)]),
            };
            f.insert_gadget(dirs[0].0, dirs[0].1, t).unwrap();
            for &(u, v) in dirs {
                reach[u as usize][v as usize] = true;
            }
        }
        for x in 1..=3 {
            reach[x][x] = true;
        }
        for m in 1..=3 {
            for x in 1..=3 {
                for y in 1..=3 {
                    reach[x][y] |= reach[x][m] && reach[m][y];
                }
            }
        }
        let e = CongruenceEngine::new(f.lattice());
        for x in 1..=3u32 {
            for y in 1..=3u32 {
                let (ix, iy) = (f.interval(x).unwrap(), f.interval(y).unwrap());
                let below = e.con(ix.lo, ix.hi).is_subset(&e.con(iy.lo, iy.hi));
                assert_eq!(below, reach[x as usize][y as usize], "code {code}: con({x}) <= con({y})");
            }
        }
    }
}

/// Opposite one-way gadgets on one pair leave two minimal upper bounds;
/// mutual forcing needs the double gadget.
#[test]
fn opposite_one_way_gadgets_are_rejected() {
    let mut f = Frame::new(&[1, 2], 0).unwrap();
    f.insert_gadget(1, 2, &GadgetTemplate::one_way()).unwrap();
    assert!(f.insert_gadget(2, 1, &GadgetTemplate::one_way()).is_err());
}

/// Replacing the side edges of S₀ one at a time keeps every intermediate
/// lattice simple.
#[test]
fn side_edge_insertions_stay_simple() {
    let s0 = build_S0(0).unwrap();
    assert!(CongruenceEngine::new(&s0.lattice).is_simple());
    let (edge, dual) = (edge_block(), edge_block_dual());
    assert!(CongruenceEngine::new(&edge.lattice).is_simple());
    assert!(CongruenceEngine::new(&dual.lattice).is_simple());
    let mut l = s0.lattice.clone();
    let mut steps = 0;
    for (x, y) in s0.lattice.covers() {
        let k = match classify_edge(&s0, x, y).unwrap() {
            EdgeKind::Ordinary => continue,
            EdgeKind::UpperLeft | EdgeKind::LowerRight => &edge.lattice,
            _ => &dual.lattice,
        };
        l = insert_into_prime_interval(&l, IntervalRef::new(x, y), k).unwrap().lattice;
        assert!(CongruenceEngine::new(&l).is_simple(), "after {steps} insertions");
        steps += 1;
    }
    assert_eq!(steps, 60);
    assert_eq!(l.len(), 594);
}

use std::time::Instant;

use princlat::graph::group_from_spec;
use princlat::order::{Lattice, Poset};
use princlat::representation::{audit_representation, represent, verify_representation, RepresentationInput};
use princlat::symmetry::SearchOptions;

fn run(p: Poset, group: &str) {
    let g = group_from_spec(group).unwrap();
    let t = Instant::now();
    let input = RepresentationInput::new(p.clone(), g.clone()).unwrap();
    let rep = represent(&input).unwrap();
    eprintln!("{group}: built {} elements in {:?} {:?}", rep.lattice().len(), t.elapsed(), rep.timings_ms);
    let r = verify_representation(rep.lattice(), &p, &g, &SearchOptions::default()).unwrap();
    eprintln!("{group}: {}\n{:?} length {} selfdual {:?}", r.checks, r.timings_ms, r.length, r.selfdual);
    let a = audit_representation(&rep, &p).unwrap();
    eprintln!("{a}");
    assert!(r.passed());
    assert!(a.passed());
}

#[test]
fn small_instances() {
    run(Lattice::chain(2).poset().clone(), "trivial");
    run(Lattice::chain(3).poset().clone(), "c2");
    run(Lattice::boolean(2).poset().clone(), "s3");
}

#[test]
#[ignore]
fn six_element_d4() {
    // 0 < p, q; p < r; q < r, s; r, s < 1
    let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
    run(p, "d4");
}

mod common;

use common::{named, parse};
use partcat::catalog::enumerate_category;
use partcat::{generate_closure, tensor, Budgets, Category, ClosureSet, Membership, NamedPartition as N, Partition};

fn closure_until(generators: &[Partition], budgets: Budgets, target: &Partition) -> Membership {
    let mut c = ClosureSet::new(generators, budgets).unwrap();
    c.saturate_until(|c| c.confirms(target));
    c.contains(target).unwrap()
}

#[test]
fn lemma_containments() {
    let b = Budgets::new(10, 20);
    let cases = [
        (vec![named(N::Singleton)], named(N::Positioner)),
        (vec![named(N::Positioner)], named(N::DoubleSingleton)),
        (
            vec![named(N::DoubleSingleton), named(N::FourBlock)],
            named(N::Positioner),
        ),
    ];
    for (gens, target) in cases {
        assert_eq!(closure_until(&gens, b, &target), Membership::Confirmed, "{target}");
    }
}

#[test]
fn crossing_from_positioner_and_any_crossing_partition() {
    let crossing = named(N::Crossing);
    let witnesses = [
        "P(0,6): l1,l4; l2,l5; l3; l6",
        "P(0,4): l1,l3; l2,l4",
        "P(0,5): l1,l4; l2; l3,l5",
        "P(2,2): u1,l2; u2,l1",
        "P(0,6): l1,l4; l2,l5; l3,l6",
    ];
    for w in witnesses {
        let w = parse(w);
        assert!(!w.is_noncrossing());
        let gens = [named(N::Positioner), w.clone()];
        assert_eq!(
            closure_until(&gens, Budgets::new(10, 20), &crossing),
            Membership::Confirmed,
            "{w}"
        );
    }
}

/// Moves the singleton at `from` to just before position `to` of the
/// remaining points.
fn shift(line: &[u8], from: usize, to: usize) -> Partition {
    let mut rest: Vec<usize> = line.iter().map(|&v| v as usize).collect();
    let s = rest.remove(from);
    rest.insert(to, s);
    Partition::from_labels(0, rest.len(), &rest).unwrap()
}

#[test]
fn singleton_shift() {
    let c = generate_closure(&[named(N::Positioner)], 6, 12).unwrap();
    let mut checked = 0;
    for n in 1..=6 {
        for p in c.one_line(n) {
            let labels = p.labels().to_vec();
            for from in 0..n {
                if labels.iter().filter(|&&v| v == labels[from]).count() != 1 {
                    continue;
                }
                for to in 0..n {
                    let q = shift(&labels, from, to);
                    assert_eq!(c.contains(&q).unwrap(), Membership::Confirmed, "{p} -> {q}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn block_extraction() {
    let singleton = named(N::Singleton);
    for cat in Category::FREE {
        let c = generate_closure(&cat.generator_partitions(), 6, 12).unwrap();
        let has_singleton = cat.contains(&singleton).unwrap();
        for p in c.elements() {
            for block in p.blocks() {
                let b = named(N::Block(block.len()));
                if has_singleton {
                    assert!(cat.contains(&b).unwrap(), "{cat}: block of {p}");
                } else if block.len() % 2 == 1 {
                    assert!(
                        cat.contains(&tensor(&singleton, &b).unwrap()).unwrap(),
                        "{cat}: block of {p}"
                    );
                }
            }
        }
    }
}

#[test]
fn empty_generators_give_pairings() {
    let c = generate_closure(&[], 6, 12).unwrap();
    let counts: Vec<usize> = [2, 4, 6].iter().map(|&n| c.one_line(n).len()).collect();
    assert_eq!(counts, [1, 2, 5]);
    for n in 0..=6 {
        assert_eq!(c.one_line(n), enumerate_category(Category::OFree, n).unwrap());
    }
}

#[test]
fn closure_is_deterministic() {
    let gens = Category::BFree.generator_partitions();
    let a = generate_closure(&gens, 7, 14).unwrap();
    let b = generate_closure(&gens, 7, 14).unwrap();
    assert!(a.is_saturated());
    assert_eq!(a.dump(), b.dump());
    let dump = a.dump();
    let lines: Vec<&str> = dump.lines().collect();
    let mut sorted = lines.clone();
    sorted.sort_by_key(|l| (parse(l).len(), parse(l)));
    assert_eq!(lines, sorted);
}

#[test]
fn closure_is_a_lower_bound() {
    for cat in Category::HALF_LIBERATED.iter().chain(&Category::CLASSICAL) {
        let c = generate_closure(&cat.generator_partitions(), 6, 12).unwrap();
        for p in c.elements() {
            assert!(cat.contains(&p).unwrap(), "{cat}: {p}");
        }
    }
}

#[test]
fn series_gcd() {
    let gens = [named(N::HalfLib), named(N::FourBlock), named(N::H(6)), named(N::H(9))];
    assert_eq!(
        closure_until(&gens, Budgets::new(12, 30), &named(N::H(3))),
        Membership::Confirmed
    );
}

#[test]
fn elements_cover_every_shape() {
    let c = generate_closure(&[], 4, 8).unwrap();
    let elems = c.elements();
    assert!(elems.contains(&parse("P(1,1): u1,l1")));
    assert!(elems.contains(&parse("P(2,0): u1,u2")));
    assert!(elems.contains(&parse("P(2,2): u1,u2; l1,l2")));
    assert!(!elems.contains(&parse("P(2,2): u1,l2; u2,l1")));
}

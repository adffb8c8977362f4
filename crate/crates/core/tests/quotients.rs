mod common;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::Instant;

use common::{below, rng, word};
use hlslab_core::groups::Perm;
use hlslab_core::quotients::{
    check_nesting, check_separation, check_separation_of, enumerate_kernel_reps, kernel_refines,
    separating_level, DEFAULT_HOM_LEVEL_CAP,
};
use hlslab_core::{ApproximatedGroup, Caps, Family, FiniteQuotient, Word};

type P = Vec<u8>;

fn perms(n: usize) -> Vec<P> {
    fn go(prefix: &mut P, n: usize, out: &mut Vec<P>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n as u8 {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

fn compose(p: &P, q: &P) -> P {
    q.iter().map(|&x| p[x as usize]).collect()
}

fn inv(p: &P) -> P {
    let mut r = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        r[x as usize] = i as u8;
    }
    r
}

/// Elements of the group generated by tuples acting componentwise, by BFS.
fn closure(gens: &[Vec<P>], limit: usize) -> Option<usize> {
    let id: Vec<P> = gens[0].iter().map(|p| (0..p.len() as u8).collect()).collect();
    let all: Vec<Vec<P>> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.iter().map(inv).collect()])
        .collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &all {
            let y: Vec<P> = g.iter().zip(&x).map(|(a, b)| compose(a, b)).collect();
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

/// All pairs in `S_n` generating a group of order at most `n`.
fn small_pairs(n: usize) -> Vec<(P, P)> {
    let ps = perms(n);
    let mut out = Vec::new();
    for s in &ps {
        for t in &ps {
            if closure(&[vec![s.clone()], vec![t.clone()]], n).is_some() {
                out.push((s.clone(), t.clone()));
            }
        }
    }
    out
}

/// Oracle for `|Γₙ|`: image of (a, b) in the product over every admissible pair.
fn brute_force_order(n: usize) -> usize {
    let pairs = small_pairs(n);
    let a: Vec<P> = pairs.iter().map(|p| p.0.clone()).collect();
    let b: Vec<P> = pairs.iter().map(|p| p.1.clone()).collect();
    closure(&[a, b], usize::MAX).unwrap()
}

/// Oracle for the number of distinct kernels: two pairs have the same kernel
/// iff their joint image is no larger than either image.
fn brute_force_kernel_count(n: usize) -> usize {
    let pairs = small_pairs(n);
    let mut classes: Vec<(P, P, usize)> = Vec::new();
    for (s, t) in pairs {
        let order = closure(&[vec![s.clone()], vec![t.clone()]], n).unwrap();
        let same = classes.iter().any(|(s2, t2, o2)| {
            *o2 == order && closure(&[vec![s.clone(), s2.clone()], vec![t.clone(), t2.clone()]], order).is_some()
        });
        if !same {
            classes.push((s, t, order));
        }
    }
    classes.len()
}

fn build(f: Family, depth: usize) -> ApproximatedGroup {
    ApproximatedGroup::build(f, depth, &Caps::default()).unwrap()
}

#[test]
fn fd_orders_against_brute_force() {
    for (n, expect) in [(1usize, 1usize), (2, 4), (3, 36), (4, 144)] {
        let started = Instant::now();
        let q = Family::Fd.quotient(n, &Caps::default()).unwrap();
        assert!(started.elapsed().as_secs_f64() < 5.0);
        assert_eq!(q.order(), expect);
        assert_eq!(brute_force_order(n), expect, "oracle at level {n}");
    }
}

#[test]
fn kernel_counts_against_brute_force() {
    for n in 1..=4 {
        let reps = enumerate_kernel_reps(n, DEFAULT_HOM_LEVEL_CAP).unwrap();
        assert_eq!(reps.len(), brute_force_kernel_count(n), "level {n}");
    }
    assert_eq!(enumerate_kernel_reps(2, DEFAULT_HOM_LEVEL_CAP).unwrap().len(), 4);
    // Level 3: trivial, three onto ℤ/2, four onto ℤ/3; every image is cyclic.
    let three = enumerate_kernel_reps(3, DEFAULT_HOM_LEVEL_CAP).unwrap();
    let mut orders: Vec<usize> = three.iter().map(FiniteQuotient::order).collect();
    orders.sort();
    assert_eq!(orders, [1, 2, 2, 2, 3, 3, 3, 3]);
}

#[test]
fn deduplicated_kernels_are_pairwise_distinct() {
    let reps = enumerate_kernel_reps(4, DEFAULT_HOM_LEVEL_CAP).unwrap();
    for (i, p) in reps.iter().enumerate() {
        for q in &reps[i + 1..] {
            let same = kernel_refines(p, q).unwrap() && kernel_refines(q, p).unwrap();
            assert!(!same);
        }
    }
}

#[test]
fn level_n_kernels_are_refined_at_level_n_plus_one() {
    for n in 1..4 {
        let next = Family::Fd.quotient(n + 1, &Caps::default()).unwrap();
        for k in enumerate_kernel_reps(n, DEFAULT_HOM_LEVEL_CAP).unwrap() {
            assert!(kernel_refines(&next, &k).unwrap());
        }
    }
}

#[test]
fn refinement_example() {
    let z4 = FiniteQuotient::from_generators(
        vec![Perm::from_images(vec![1, 2, 3, 0]).unwrap(), Perm::identity(4)],
        100,
    )
    .unwrap();
    let z2 = FiniteQuotient::from_generators(
        vec![Perm::from_images(vec![1, 0]).unwrap(), Perm::identity(2)],
        100,
    )
    .unwrap();
    assert!(kernel_refines(&z4, &z2).unwrap());
    assert!(!kernel_refines(&z2, &z4).unwrap());
}

#[test]
fn nesting_and_divisibility_all_families() {
    for (f, depth) in [(Family::Fd, 4), (Family::Congruence, 5), (Family::Cyclic, 10)] {
        let g = build(f, depth);
        let report = check_nesting(&g, depth).unwrap();
        assert!(report.passed(), "{f}: {report:?}");
        assert_eq!(report.steps.len(), depth - 1);
        assert!(report.steps.iter().all(|s| s.divides && s.refines));
    }
}

#[test]
fn congruence_orders_and_matrix_oracle() {
    // Oracle: BFS over 2×2 matrices mod 2ⁿ generated by the Sanov matrices.
    for n in 1..=5u32 {
        let m = 1u64 << n;
        let mul = |x: [u64; 4], y: [u64; 4]| {
            [
                (x[0] * y[0] + x[1] * y[2]) % m,
                (x[0] * y[1] + x[1] * y[3]) % m,
                (x[2] * y[0] + x[3] * y[2]) % m,
                (x[2] * y[1] + x[3] * y[3]) % m,
            ]
        };
        let gens = [
            [1, 2 % m, 0, 1],
            [1, (m - 2) % m, 0, 1],
            [1, 0, 2 % m, 1],
            [1, 0, (m - 2) % m, 1],
        ];
        let mut seen = BTreeSet::from([[1 % m, 0, 0, 1 % m]]);
        let mut queue: VecDeque<[u64; 4]> = seen.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = mul(g, x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let q = Family::Congruence.quotient(n as usize, &Caps::default()).unwrap();
        assert_eq!(q.order(), seen.len(), "level {n}");
    }
}

#[test]
fn evaluate_is_a_homomorphism() {
    let mut r = rng(11);
    for f in Family::ALL {
        let g = build(f, 3);
        for q in g.levels() {
            assert_eq!(q.evaluate(&Word::identity(f.rank())), 0);
            for _ in 0..50 {
                let u = common::random_word(&mut r, f.rank(), 8);
                let v = common::random_word(&mut r, f.rank(), 8);
                let uv = u.multiply(&v).unwrap();
                assert_eq!(q.evaluate(&uv), q.multiply(q.evaluate(&u), q.evaluate(&v)));
                assert_eq!(q.evaluate(&u.inverse()), q.inverse(q.evaluate(&u)));
                let el = below(&mut r, q.order() as u64) as usize;
                assert_eq!(q.evaluate(&q.element_word(el)), el);
            }
        }
    }
}

#[test]
fn evaluation_examples() {
    let fd = build(Family::Fd, 3);
    assert_eq!(fd.quotient(2).unwrap().evaluate(&word(2, "abAB")), 0);
    let cyc = build(Family::Cyclic, 3);
    let z8 = cyc.quotient(3).unwrap();
    // Independent numbering of ℤ/8 by BFS over ±1: 0, 1, 7, 2, 6, 3, 5, 4.
    let bfs_index: HashMap<u64, usize> = [0u64, 1, 7, 2, 6, 3, 5, 4].into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    assert_eq!(z8.evaluate(&word(1, "aaaaa")), bfs_index[&5]);
}

#[test]
fn separation_examples() {
    let fd = build(Family::Fd, 3);
    let report = check_separation(&fd, 2, 3).unwrap();
    assert_eq!(report.words_checked, 16);
    assert!(report.passed());
    let commutator = check_separation_of(&fd, [word(2, "abAB")], 4, 3).unwrap();
    assert_eq!(commutator.unseparated, vec![word(2, "abAB")]);
    // Groups of order at most 5 are abelian; S₃ enters at level 6.
    let fd6 = build(Family::Fd, 6);
    assert_eq!(separating_level(&fd6, &word(2, "abAB"), 6).unwrap(), Some(6));
    let cyc = build(Family::Cyclic, 3);
    let r = check_separation(&cyc, 5, 3).unwrap();
    assert_eq!(r.words_checked, 10);
    assert!(r.passed());
}

#[test]
fn caps_are_enforced() {
    assert!(matches!(
        Family::Fd.quotient(7, &Caps::default()),
        Err(hlslab_core::Error::Resource { .. })
    ));
    let tight = Caps { fiber_order: 40, ..Caps::default() };
    assert!(matches!(
        Family::Fd.quotient(4, &tight),
        Err(hlslab_core::Error::Resource { cap: 40, .. })
    ));
}

#[test]
fn fd_levels_five_and_six() {
    let started = Instant::now();
    let g = build(Family::Fd, 6);
    let orders: Vec<usize> = g.levels().iter().map(FiniteQuotient::order).collect();
    eprintln!("fd orders {orders:?} in {:?}", started.elapsed());
    assert_eq!(&orders[..5], [1, 4, 36, 144, 3600]);
    assert!(orders[5] <= 97_200 && orders[5].is_multiple_of(3600));
    assert!(check_nesting(&g, 6).unwrap().passed());
}

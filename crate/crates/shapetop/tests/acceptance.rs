//! Verification suite: one test per criterion, each printing a PASS line.
//!
//! All expected values are exact — rational arithmetic leaves no room for
//! tolerances. Randomized inputs come from fixed seeds, so every run
//! checks the same cases.

mod common;

use common::*;
use rand::Rng;
use shapetop::space::{check_isomorphism, star_topology};
use shapetop::{
    connect, covers, oracle, Basis, Comparison, Error, GenerateOptions, Kind, Mapping, Point,
    Preimage, Scalar, Shape, Step, Topology,
};
use std::collections::BTreeSet;
use std::time::Instant;

fn seg_x(lo: i64, hi: i64) -> Shape {
    Shape::segment(Point::at(lo, 0), Point::at(hi, 0)).unwrap()
}

#[test]
fn criterion_01_algebra_laws() {
    let started = Instant::now();
    let mut rng = rng(0xA1);
    for case in 0..1000 {
        let a = rand_u1_shape(&mut rng, 6);
        let b = rand_u1_shape(&mut rng, 6);
        let c = rand_u1_shape(&mut rng, 6);
        let ctx = |law: &str| format!("case {case}, {law}: a={a}, b={b}, c={c}");

        assert_eq!(a.sum(&a).unwrap(), a, "{}", ctx("idempotence +"));
        assert_eq!(a.product(&a).unwrap(), a, "{}", ctx("idempotence ·"));
        assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap(), "{}", ctx("commutativity +"));
        assert_eq!(
            a.product(&b).unwrap(),
            b.product(&a).unwrap(),
            "{}",
            ctx("commutativity ·")
        );
        assert_eq!(
            a.sum(&b).unwrap().sum(&c).unwrap(),
            a.sum(&b.sum(&c).unwrap()).unwrap(),
            "{}",
            ctx("associativity +")
        );
        assert_eq!(
            a.product(&b).unwrap().product(&c).unwrap(),
            a.product(&b.product(&c).unwrap()).unwrap(),
            "{}",
            ctx("associativity ·")
        );
        assert_eq!(a.sum(&a.product(&b).unwrap()).unwrap(), a, "{}", ctx("absorption"));
        assert_eq!(
            a.product(&b.sum(&c).unwrap()).unwrap(),
            a.product(&b).unwrap().sum(&a.product(&c).unwrap()).unwrap(),
            "{}",
            ctx("distributivity")
        );
        assert_eq!(
            a.difference(&a.difference(&b).unwrap()).unwrap(),
            a.product(&b).unwrap(),
            "{}",
            ctx("a - (a - b) = a·b")
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget is 10 s");
    println!("PASS criterion 1: algebra laws on 1000 random shape triples in {elapsed:?}");
}

#[test]
fn criterion_02_u0_set_oracle() {
    let mut rng = rng(0xA2);
    for case in 0..1000 {
        let a = rand_u0_shape(&mut rng, 6);
        let b = rand_u0_shape(&mut rng, 6);
        assert_eq!(a.sum(&b).unwrap(), oracle::u0_sum(&a, &b).unwrap(), "case {case}");
        assert_eq!(a.product(&b).unwrap(), oracle::u0_product(&a, &b).unwrap(), "case {case}");
        assert_eq!(
            a.difference(&b).unwrap(),
            oracle::u0_difference(&a, &b).unwrap(),
            "case {case}"
        );
        assert_eq!(a.part_of(&b).unwrap(), oracle::u0_part_of(&a, &b).unwrap(), "case {case}");
    }
    println!("PASS criterion 2: point-shape algebra agrees with the set oracle on 1000 pairs");
}

#[test]
fn criterion_03_generated_topology() {
    let mut rng = rng(0xA3);
    for case in 0..200 {
        let carrier = rand_nonempty_u1(&mut rng, 3);
        let count = rng.random_range(1..=3);
        let parts: Vec<Shape> =
            (0..count).map(|_| rand_nonempty_subpart(&mut rng, &carrier)).collect();
        let opts = GenerateOptions { add_carrier: true, max_opens: 512 };
        let t = match Topology::generate(&parts, &carrier, opts) {
            Ok(t) => t,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => panic!("case {case}: {e}"),
        };

        // The result satisfies the topology conditions.
        let check = Topology::check_family(t.opens(), t.carrier()).unwrap();
        assert!(check.ok, "case {case}: {:?}", check.violation);

        // It contains every generator.
        for p in &parts {
            assert!(t.is_open(p), "case {case}: generator {p} not open");
        }

        // Every open is reproduced by expression search over the
        // generators: the join-of-meets normal form of the distributive
        // lattice they generate.
        let mut expression_basis = parts.clone();
        let mut total = Shape::empty(carrier.kind());
        for p in &parts {
            total = total.sum(p).unwrap();
        }
        if total != carrier {
            expression_basis.push(carrier.clone());
        }
        let normal_form =
            oracle::normal_form_closure(&expression_basis, carrier.kind()).unwrap();
        assert_eq!(&normal_form, t.opens(), "case {case}: normal form disagrees");
    }
    println!("PASS criterion 3: generated topologies match expression search on 200 generator sets");
}

/// All subsets of the nonempty opens that are bases of exactly this
/// topology, as index sets into the lattice.
fn subset_bases(lat: &IndexLattice) -> Vec<Vec<usize>> {
    let elements: Vec<usize> = (0..lat.len()).filter(|&i| i != lat.empty).collect();
    let mut found = Vec::new();
    for mask in 1u32..(1u32 << elements.len()) {
        let subset: Vec<usize> = elements
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << *bit) != 0)
            .map(|(_, &e)| e)
            .collect();
        if lat.sum_of(subset.iter().copied()) != lat.carrier {
            continue;
        }
        let expressible = |x: usize| -> bool {
            lat.sum_of(subset.iter().copied().filter(|&e| lat.leq(e, x))) == x
        };
        let products_ok = subset
            .iter()
            .enumerate()
            .all(|(i, &a)| subset[i..].iter().all(|&b| expressible(lat.prod[a][b])));
        if !products_ok {
            continue;
        }
        // Must generate the whole family, not a coarser one.
        let mut reach: BTreeSet<usize> = BTreeSet::from([lat.empty]);
        for &e in &subset {
            let extended: Vec<usize> = reach.iter().map(|&s| lat.sum[s][e]).collect();
            reach.extend(extended);
        }
        if reach.len() == lat.len() {
            found.push(subset);
        }
    }
    found
}

/// Removes elements expressible as sums of the others, in index space.
fn index_reduce(lat: &IndexLattice, basis: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = basis.iter().copied().collect();
    loop {
        let removable = set.iter().copied().find(|&x| {
            lat.sum_of(set.iter().copied().filter(|&e| e != x && lat.leq(e, x))) == x
        });
        match removable {
            Some(x) => {
                set.remove(&x);
            }
            None => break,
        }
    }
    set
}

#[test]
fn criterion_04_reduced_basis_uniqueness() {
    let mut rng = rng(0xA4);
    let mut done = 0;
    while done < 200 {
        let t = rand_topology(&mut rng, 2, 64);
        if t.opens().len() > 10 {
            continue;
        }
        done += 1;
        let lat = IndexLattice::new(&t);

        let bases = subset_bases(&lat);
        assert!(!bases.is_empty(), "the full family itself is always a basis");

        // Reducing every basis lands on one identical reduced basis.
        let reduced_sets: BTreeSet<BTreeSet<usize>> =
            bases.iter().map(|b| index_reduce(&lat, b)).collect();
        assert_eq!(
            reduced_sets.len(),
            1,
            "reduction reached {} distinct results",
            reduced_sets.len()
        );
        let index_reduced = reduced_sets.into_iter().next().unwrap();

        // The library's reduced basis is that same set.
        let library: BTreeSet<usize> = t
            .reduced_basis()
            .elements()
            .iter()
            .map(|e| lat.opens.iter().position(|o| o == e).unwrap())
            .collect();
        assert_eq!(library, index_reduced);

        // Bridge the index sweep back through the shape-level reducer on a
        // sample of the bases.
        for basis in bases.iter().take(8) {
            let shapes: Vec<Shape> = basis.iter().map(|&i| lat.opens[i].clone()).collect();
            let reduced = Basis::new(shapes, t.carrier().clone()).unwrap().reduce();
            let as_indices: BTreeSet<usize> = reduced
                .elements()
                .iter()
                .map(|e| lat.opens.iter().position(|o| o == e).unwrap())
                .collect();
            assert_eq!(as_indices, index_reduced);
        }
    }
    println!("PASS criterion 4: unique reduced basis over all subset bases of 200 topologies");
}

#[test]
fn criterion_05_subshape_basis_theorem() {
    let mut rng = rng(0xA5);
    for case in 0..200 {
        let t = rand_topology(&mut rng, 3, 128);
        let x = rand_nonempty_subpart(&mut rng, t.carrier());

        let relative = t.subshape(&x).unwrap();
        // Both the reduced basis and the raw open family act as bases.
        for basis in [
            t.reduced_basis(),
            Basis::new(t.opens().iter().cloned(), t.carrier().clone()).unwrap(),
        ] {
            let sub_basis = basis.subshape_basis(&x).unwrap();
            let generated = sub_basis.generate_topology().unwrap();
            assert_eq!(generated, relative, "case {case}: x={x}");
        }

        // A basis covers its carrier.
        let family: Vec<Shape> = t.reduced_basis().elements().iter().cloned().collect();
        assert!(covers(&family, t.carrier()).unwrap(), "case {case}");
    }
    println!("PASS criterion 5: subshape bases generate subshape topologies on 200 pairs");
}

#[test]
fn criterion_06_interior_closure() {
    let mut rng = rng(0xA6);
    for case in 0..500 {
        let t = rand_topology(&mut rng, 3, 128);
        let x = rand_subpart(&mut rng, t.carrier());

        let interior = t.interior(&x).unwrap();
        let closure = t.closure(&x).unwrap();

        // Chain: interior <= x <= closure.
        assert!(interior.part_of(&x).unwrap(), "case {case}");
        assert!(x.part_of(&closure).unwrap(), "case {case}");

        // Openness is equality with the closure.
        assert_eq!(t.is_open(&x), x == closure, "case {case}");
        if t.is_open(&x) {
            assert_eq!(interior, x, "case {case}");
        }

        // Independent route to the closure: the minimum among all opens
        // containing x, found by scanning instead of folding products.
        let containing: Vec<&Shape> =
            t.opens().iter().filter(|o| x.part_of(o).unwrap()).collect();
        let minimum = containing
            .iter()
            .find(|m| containing.iter().all(|o| m.part_of(o).unwrap()))
            .expect("the carrier always contains x");
        assert_eq!(&closure, *minimum, "case {case}");

        // Dual route to the interior: the maximum among opens inside x.
        let inside: Vec<&Shape> =
            t.opens().iter().filter(|o| o.part_of(&x).unwrap()).collect();
        let maximum = inside
            .iter()
            .find(|m| inside.iter().all(|o| o.part_of(m).unwrap()))
            .expect("the empty shape is inside everything");
        assert_eq!(&interior, *maximum, "case {case}");
    }
    println!("PASS criterion 6: interior/closure chain and brute minimum on 500 parts");
}

/// The erasure fixture: f(x) = x - B from a three-part topology on [0,3]
/// onto the two remaining ends.
fn erasure_fixture() -> (Mapping, Topology, Topology, Shape) {
    let s = seg_x(0, 3);
    let b = seg_x(1, 2);
    let s_plus = s.difference(&b).unwrap();
    let source = Topology::generate(
        &[seg_x(0, 1), seg_x(1, 2), seg_x(2, 3)],
        &s,
        GenerateOptions::default(),
    )
    .unwrap();
    let target = Topology::generate(
        &[seg_x(0, 1), seg_x(2, 3)],
        &s_plus,
        GenerateOptions::default(),
    )
    .unwrap();
    let f = Mapping::new(vec![Step::Subtract(b.clone())]).unwrap();
    (f, source, target, b)
}

#[test]
fn criterion_07_continuity() {
    let mut rng = rng(0xA7);

    // Identity between two topologies on one shape: continuous iff the
    // target family is included in the source family.
    let id = Mapping::identity();
    let mut continuous_pairs = Vec::new();
    for case in 0..100 {
        let t1 = rand_topology(&mut rng, 2, 24);
        let carrier = t1.carrier().clone();
        // Even cases refine t1 (comparable); odd cases draw independently
        // (usually incomparable).
        let t2 = if case % 2 == 0 {
            let extra = rand_nonempty_subpart(&mut rng, &carrier);
            match t1.refine(&[extra]) {
                Ok(r) => r.topology,
                Err(_) => continue,
            }
        } else {
            let gens = [rand_nonempty_subpart(&mut rng, &carrier)];
            match Topology::generate(
                &gens,
                &carrier,
                GenerateOptions { add_carrier: true, max_opens: 24 },
            ) {
                Ok(t) => t,
                Err(_) => continue,
            }
        };
        for (source, target) in [(&t1, &t2), (&t2, &t1)] {
            let report = id.is_continuous(source, target).unwrap();
            let included = target.opens().is_subset(source.opens());
            assert_eq!(report.continuous, included, "case {case}");
            if report.continuous {
                continuous_pairs.push((source.clone(), target.clone()));
            }
        }
    }
    assert!(!continuous_pairs.is_empty());

    // The erasure construction is continuous and pulls the empty part
    // back to the erased shape.
    let (f, source, target, b) = erasure_fixture();
    let report = f.is_continuous(&source, &target).unwrap();
    assert!(report.continuous, "{:?}", report.violation);
    let bottom = report
        .table
        .iter()
        .find(|(open, _)| open.is_empty())
        .map(|(_, pre)| pre.clone())
        .unwrap();
    assert_eq!(bottom, Preimage::Defined(b.clone()));
    assert!(!b.is_empty());

    // Closure-image inequality under every continuous mapping collected:
    // 200 sampled parts each.
    let mut mappings: Vec<(Mapping, Topology, Topology)> = continuous_pairs
        .into_iter()
        .map(|(s, t)| (id.clone(), s, t))
        .collect();
    mappings.push((f, source, target));
    for (mapping, source, target) in &mappings {
        for case in 0..200 {
            let x = rand_subpart(&mut rng, source.carrier());
            let lhs = mapping.image(&source.closure(&x).unwrap()).unwrap();
            let rhs = target.closure(&mapping.image(&x).unwrap()).unwrap();
            assert!(lhs.part_of(&rhs).unwrap(), "part {case}: x={x}");
        }
        // The library operator agrees on a spot sample.
        let x = rand_subpart(&mut rng, source.carrier());
        assert!(mapping.check_closure_image(&x, source, target).unwrap());
    }
    println!(
        "PASS criterion 7: identity continuity iff inclusion (100 pairs), erasure fixture, \
         closure-image on {} continuous mappings x 200 parts",
        mappings.len()
    );
}

#[test]
fn criterion_08_preimage_oracle() {
    let mut rng = rng(0xA8);
    let mut total = 0;
    let mut undefined = 0;
    while total < 300 {
        let domain = rand_nonempty_u1(&mut rng, 2);

        // Half the budget: mappings whose preimages always exist
        // (affine/subtract chains) and add-mappings fed a sufficient
        // target; the rest: add-mappings fed targets that lack the added
        // shape, so the preimage is undefined.
        let want_undefined = total % 3 == 2;
        let (f, y) = if want_undefined {
            // Add a piece away from the domain, ask only for parts of the
            // domain's image of a subpart.
            let off = Shape::segment(
                Point::new(Scalar::from(9), Scalar::from(9)),
                Point::new(Scalar::from(10), Scalar::from(9)),
            )
            .unwrap();
            let f = Mapping::new(vec![Step::Add(off)]).unwrap();
            let y = rand_subpart(&mut rng, &domain);
            (f, y)
        } else {
            let f = match rng.random_range(0..4) {
                0 => Mapping::identity(),
                1 => Mapping::new(vec![Step::Subtract(rand_nonempty_subpart(
                    &mut rng, &domain,
                ))])
                .unwrap(),
                2 => Mapping::new(vec![Step::Affine(shapetop::AffineMap::rotation_quarter())])
                    .unwrap(),
                _ => {
                    let shift = shapetop::AffineMap::translation(
                        Scalar::new(1, 2),
                        Scalar::from(1),
                    );
                    Mapping::new(vec![
                        Step::Affine(shift),
                        Step::Subtract(rand_nonempty_subpart(&mut rng, &domain)),
                    ])
                    .unwrap()
                }
            };
            // Target: the image of a part, sometimes padded with the image
            // of another part.
            let base = f.image(&rand_subpart(&mut rng, &domain)).unwrap();
            let y = if rng.random_bool(0.5) {
                base.sum(&f.image(&rand_subpart(&mut rng, &domain)).unwrap()).unwrap()
            } else {
                base
            };
            (f, y)
        };

        let brute = match oracle::brute_preimage(&f, &y, &domain) {
            Ok(p) => p,
            Err(Error::TooManyFragments { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let closed = f.preimage(&y, &domain).unwrap();
        assert_eq!(closed, brute, "domain={domain}, y={y}");
        if !closed.is_defined() {
            undefined += 1;
        }
        total += 1;
    }
    assert!(undefined >= 50, "only {undefined} undefined cases");
    println!(
        "PASS criterion 8: closed-form preimage equals brute force on 300 cases \
         ({undefined} undefined)"
    );
}

#[test]
fn criterion_09_connectedness() {
    let mut rng = rng(0xA9);

    // Separation search against the complemented-open characterization.
    for case in 0..300 {
        let t = rand_topology(&mut rng, 3, 96);
        let separation = connect::find_separation(&t);
        let proper_complemented = t.opens().iter().any(|c| {
            !c.is_empty()
                && c != t.carrier()
                && t.is_open(&t.carrier().difference(c).unwrap())
        });
        assert_eq!(separation.is_some(), proper_complemented, "case {case}");
        if let Some(sep) = separation {
            assert!(t.is_open(&sep.left) && t.is_open(&sep.right), "case {case}");
            assert!(sep.left.product(&sep.right).unwrap().is_empty(), "case {case}");
            assert_eq!(&sep.left.sum(&sep.right).unwrap(), t.carrier(), "case {case}");
        }
    }

    // Disjoint-decomposition topologies: all four conditions true.
    let mut built = 0;
    while built < 100 {
        let carrier = rand_nonempty_u1(&mut rng, 2);
        let helper = rand_subpart(&mut rng, &carrier);
        let atoms = oracle::FragmentDecomposition::new(&[carrier.clone(), helper]).unwrap();
        let fragments = atoms.fragments();
        if fragments.len() < 2 {
            continue;
        }
        let groups = rng.random_range(2..=fragments.len().min(3));
        let mut sums = vec![Shape::empty(Kind::U1); groups];
        for (i, frag) in fragments.iter().enumerate() {
            let g = if i < groups { i } else { rng.random_range(0..groups) };
            sums[g] = sums[g].sum(frag).unwrap();
        }
        let t = match Topology::generate(&sums, &carrier, GenerateOptions::default()) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let report = connect::total_disconnection(&t);
        assert!(
            report.by_definition
                && report.disjoint_reduced_basis
                && report.all_clopen
                && report.boolean_algebra
                && report.conditions_agree,
            "disjoint decomposition must be totally disconnected: {report:?}"
        );
        built += 1;
    }

    // General topologies: the four conditions agree, whatever they say.
    for case in 0..100 {
        let t = rand_topology(&mut rng, 3, 64);
        let report = connect::total_disconnection(&t);
        assert!(report.conditions_agree, "case {case}: {report:?}");
    }

    // The four visual/structural combinations, by name.
    let line = seg_x(0, 2);
    let both_connected =
        connect::connectivity_report(&line, &Topology::minimal(line.clone()).unwrap()).unwrap();
    assert!(both_connected.visually_connected && both_connected.structurally_connected);

    let halves = Topology::generate(
        &[seg_x(0, 1), seg_x(1, 2)],
        &line,
        GenerateOptions::default(),
    )
    .unwrap();
    let looks_one_splits = connect::connectivity_report(&line, &halves).unwrap();
    assert!(looks_one_splits.visually_connected && !looks_one_splits.structurally_connected);

    let two = seg_x(0, 1).sum(&seg_x(3, 4)).unwrap();
    let overlapping = Topology::generate(
        &[
            seg_x(0, 1).sum(&Shape::segment(Point::at(3, 0), Point::new(Scalar::new(7, 2), Scalar::zero())).unwrap()).unwrap(),
            Shape::segment(Point::new(Scalar::new(1, 2), Scalar::zero()), Point::at(1, 0))
                .unwrap()
                .sum(&seg_x(3, 4))
                .unwrap(),
        ],
        &two,
        GenerateOptions::default(),
    )
    .unwrap();
    let looks_two_holds = connect::connectivity_report(&two, &overlapping).unwrap();
    assert!(!looks_two_holds.visually_connected && looks_two_holds.structurally_connected);

    let split = Topology::generate(
        &[seg_x(0, 1), seg_x(3, 4)],
        &two,
        GenerateOptions::default(),
    )
    .unwrap();
    let both_disconnected = connect::connectivity_report(&two, &split).unwrap();
    assert!(!both_disconnected.visually_connected && !both_disconnected.structurally_connected);

    println!(
        "PASS criterion 9: separations on 300 topologies, four-way equivalence on 200, \
         four named visual/structural fixtures"
    );
}

#[test]
fn criterion_10_space_isomorphism() {
    let mut rng = rng(0xAA);
    let catalogs: Vec<Vec<BTreeSet<BTreeSet<usize>>>> = (1..=3)
        .map(|n| oracle::enumerate_set_topologies(n).unwrap())
        .collect();
    assert_eq!(catalogs[0].len(), 1);
    assert_eq!(catalogs[1].len(), 4);
    assert_eq!(catalogs[2].len(), 29);

    let mut small_spaces = 0;
    for case in 0..200 {
        let t = rand_topology(&mut rng, 3, 96);
        let star = star_topology(&t);
        let report = check_isomorphism(&t, &star);
        assert!(report.isomorphic, "case {case}: {:?}", report.witness);

        let n = star.points().len();
        if (1..=3).contains(&n) {
            small_spaces += 1;
            assert!(
                catalogs[n - 1].contains(star.open_sets()),
                "case {case}: star family missing from the {n}-point catalog"
            );
        }
    }
    assert!(small_spaces > 0);
    println!(
        "PASS criterion 10: topology/space isomorphism on 200 topologies, \
         {small_spaces} star families found in the 1/4/29 catalogs"
    );
}

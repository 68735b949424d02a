//! Property-based invariants for the combinatorial layer and the rational
//! oracle, over a small family of randomly chosen formats.

use num::BigRational;
use proptest::prelude::*;

use permideal::hyperlattice::{
    diff_axes, distance, switch, t_distance, Axes, Lattice, Point, Shape,
};
use permideal::poly::{buchberger, parse_polynomial, reduce, Monomial, QPolynomial};
use permideal::prime;
use permideal::signed::{self, PointSet};

fn shapes() -> impl Strategy<Value = Shape> {
    prop_oneof![
        Just(Shape::new(vec![2, 2], 1).unwrap()),
        Just(Shape::new(vec![2, 3], 1).unwrap()),
        Just(Shape::new(vec![3, 3], 1).unwrap()),
        Just(Shape::new(vec![2, 2, 2], 1).unwrap()),
        Just(Shape::new(vec![2, 2, 2], 2).unwrap()),
        Just(Shape::new(vec![3, 2, 2], 2).unwrap()),
        Just(Shape::new(vec![2, 2, 3], 3).unwrap()),
    ]
}

fn shape_and_points(k: usize) -> impl Strategy<Value = (Shape, Vec<Point>)> {
    shapes().prop_flat_map(move |shape| {
        let points = shape.points();
        let len = points.len();
        (
            Just(shape),
            proptest::collection::vec(0..len, k)
                .prop_map(move |idx| idx.into_iter().map(|i| points[i].clone()).collect()),
        )
    })
}

fn small_poly(shape: &Shape) -> impl Strategy<Value = QPolynomial> {
    let points = shape.points();
    let len = points.len();
    proptest::collection::vec((0..len, 0..len, -3i64..4), 0..4).prop_map(move |terms| {
        let mut p = QPolynomial::zero();
        for (i, j, c) in terms {
            let m = Monomial::var(points[i].clone()).mul(&Monomial::var(points[j].clone()));
            p.add_term(BigRational::from_integer(c.into()), m);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn switch_is_an_involution((shape, pts) in shape_and_points(2)) {
        let (a, b) = (&pts[0], &pts[1]);
        let axes = diff_axes(a, b);
        for k in axes.subsets() {
            let ak = switch(k, a, b);
            let bk = switch(k, b, a);
            prop_assert_eq!(&switch(k, &ak, &bk), a);
            prop_assert_eq!(&switch(k, &bk, &ak), b);
            prop_assert_eq!(distance(&ak, &bk), distance(a, b));
        }
        let _ = shape;
    }

    #[test]
    fn distances_are_consistent((shape, pts) in shape_and_points(2)) {
        let (a, b) = (&pts[0], &pts[1]);
        prop_assert_eq!(distance(a, b), distance(b, a));
        prop_assert_eq!(diff_axes(a, b).len(), distance(a, b));
        let (dt, axes) = t_distance(&shape, a, b);
        prop_assert!(dt <= distance(a, b));
        prop_assert_eq!(axes.len(), dt);
        prop_assert!(axes.is_subset_of(Axes::full(shape.t())));
    }

    #[test]
    fn collapse_round_trips((shape, pts) in shape_and_points(1)) {
        let a = &pts[0];
        let c = shape.collapse(a);
        prop_assert_eq!(&shape.uncollapse(&c), a);
    }

    #[test]
    fn point_display_round_trips((shape, pts) in shape_and_points(1)) {
        let a = &pts[0];
        prop_assert_eq!(&a.to_string().parse::<Point>().unwrap(), a);
        let _ = shape;
    }

    #[test]
    fn term_order_is_multiplicative((_shape, pts) in shape_and_points(3)) {
        let (a, b, c) = (&pts[0], &pts[1], &pts[2]);
        let (m1, m2) = (Monomial::var(a.clone()), Monomial::var(b.clone()));
        let u = Monomial::var(c.clone());
        prop_assert_eq!(m1.cmp(&m2), m1.mul(&u).cmp(&m2.mul(&u)));
    }

    #[test]
    fn polynomial_display_round_trips(shape in shapes(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let points = shape.points();
        let mut p = QPolynomial::zero();
        for _ in 0..rng.gen_range(0..5) {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let c: i64 = rng.gen_range(-5..6);
            p.add_term(
                BigRational::from_integer(c.into()),
                Monomial::var(points[i].clone()).mul(&Monomial::var(points[j].clone())),
            );
        }
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn division_is_idempotent((shape, f) in shapes().prop_flat_map(|s| {
        let poly = small_poly(&s);
        (Just(s), poly)
    })) {
        let family = permideal::gens::slice_ideal(&shape, permideal::gens::IdealKind::SlicePerm);
        let basis = family.polynomials();
        let r = reduce(&f, &basis);
        prop_assert_eq!(reduce(&r, &basis), r);
    }

    #[test]
    fn groebner_basis_contains_its_generators(shape in shapes()) {
        let family = permideal::gens::slice_ideal(&shape, permideal::gens::IdealKind::SlicePerm);
        let gens = family.polynomials();
        let gb = buchberger(&gens, 6);
        for g in &gens {
            prop_assert!(reduce(g, &gb.polys).is_zero());
        }
    }

    #[test]
    fn signedness_implies_switchability(shape in shapes(), bits in any::<u64>()) {
        let lat = Lattice::new(shape);
        let mask = if lat.len() >= 64 { u64::MAX } else { (1 << lat.len()) - 1 };
        let s = PointSet(bits & mask);
        if signed::is_signed(&lat, s) {
            prop_assert!(signed::is_switchable(&lat, s));
        }
        let closed = signed::switchable_closure(&lat, s);
        prop_assert!(s.is_subset_of(closed));
        prop_assert_eq!(signed::switchable_closure(&lat, closed), closed);
        prop_assert!(signed::is_switchable(&lat, closed));
    }

    #[test]
    fn quadratic_reduction_is_symmetric_and_stable(shape in shapes(), bits in any::<u64>()) {
        let lat = Lattice::new(shape);
        let mask = if lat.len() >= 64 { u64::MAX } else { (1 << lat.len()) - 1 };
        let s = signed::switchable_closure(&lat, PointSet(bits & mask));
        if !signed::is_signed(&lat, s) {
            return Ok(());
        }
        let members = s.points(&lat);
        for a in &members {
            for b in &members {
                if signed::path_length(&lat, s, a, b).is_err() {
                    continue;
                }
                let ab = prime::quad_reduce(&lat, s, a, b).unwrap();
                prop_assert_eq!(&prime::quad_reduce(&lat, s, b, a).unwrap(), &ab);
                let (sg, mm, mn) = ab;
                // the reduced pair is a fixed point of reduction
                let again = prime::quad_reduce(&lat, s, &mm, &mn).unwrap();
                prop_assert_eq!(again, (1, mm.clone(), mn.clone()));
                prop_assert!(sg == 1 || sg == -1);
            }
        }
    }

    #[test]
    fn normal_forms_are_fixed_points((shape, pts) in shape_and_points(3)) {
        let lat = Lattice::new(shape);
        let full = PointSet::full(lat.len());
        if !signed::is_signed(&lat, full) {
            return Ok(());
        }
        let m = Monomial::from_points(pts);
        if let Some((sg, nf)) = prime::normal_form(&lat, full, &m) {
            prop_assert!(sg == 1 || sg == -1);
            prop_assert_eq!(prime::normal_form(&lat, full, &nf), Some((1, nf.clone())));
        }
    }
}

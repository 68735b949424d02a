//! Generator families: slice determinants and permanents for arbitrary switch
//! sets, the quadratic slice ideals, the exact-difference families, and the
//! distance-three permanental relatives.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperlattice::{diff_axes, switch, t_distance, Axes, Point, Shape};
use crate::poly::{Monomial, QPolynomial, SignedBinomial};

/// Value of a single `f`/`g` instance. `f` degenerates to zero when the
/// switch set misses the difference set; `g` degenerates to twice a monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenValue {
    Zero,
    Binomial(SignedBinomial),
    /// `2 * x_a x_b`; the factor 2 is a unit and is dropped when the value
    /// joins a generating family.
    DoubledMonomial(Monomial),
}

impl GenValue {
    pub fn to_polynomial(&self) -> QPolynomial {
        match self {
            GenValue::Zero => QPolynomial::zero(),
            GenValue::Binomial(b) => b.to_polynomial(),
            GenValue::DoubledMonomial(m) => {
                QPolynomial::monomial(m.clone()).add(&QPolynomial::monomial(m.clone()))
            }
        }
    }
}

fn pair_monomials(k: Axes, a: &Point, b: &Point) -> (Monomial, Monomial) {
    let m1 = Monomial::var(a.clone()).mul(&Monomial::var(b.clone()));
    let m2 = Monomial::var(switch(k, a, b)).mul(&Monomial::var(switch(k, b, a)));
    (m1, m2)
}

/// The determinant `x_a x_b - x_{s(K,a,b)} x_{s(K,b,a)}`.
pub fn f_gen(k: Axes, a: &Point, b: &Point) -> GenValue {
    let (m1, m2) = pair_monomials(k, a, b);
    match SignedBinomial::new(m1, m2, 1) {
        None => GenValue::Zero,
        Some(b) => GenValue::Binomial(b),
    }
}

/// The permanent `x_a x_b + x_{s(K,a,b)} x_{s(K,b,a)}`.
pub fn g_gen(k: Axes, a: &Point, b: &Point) -> GenValue {
    let (m1, m2) = pair_monomials(k, a, b);
    match SignedBinomial::new(m1, m2, -1) {
        None => unreachable!("sign -1 never yields the zero element"),
        Some(b) if b.is_monomial() => GenValue::DoubledMonomial(b.lead),
        Some(b) => GenValue::Binomial(b),
    }
}

/// The literal polynomial `x_a x_b - x_{s(K,a,b)} x_{s(K,b,a)}`, with no
/// canonical reorientation, for symbolic identity checks.
pub fn f_poly(k: Axes, a: &Point, b: &Point) -> QPolynomial {
    let (m1, m2) = pair_monomials(k, a, b);
    QPolynomial::monomial(m1).sub(&QPolynomial::monomial(m2))
}

/// The literal polynomial `x_a x_b + x_{s(K,a,b)} x_{s(K,b,a)}`.
pub fn g_poly(k: Axes, a: &Point, b: &Point) -> QPolynomial {
    let (m1, m2) = pair_monomials(k, a, b);
    QPolynomial::monomial(m1).add(&QPolynomial::monomial(m2))
}

/// Which quadratic ideal a family presents.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum IdealKind {
    /// Slice determinants `f_{i,a,b}`, `d(a,b) = 2`, `i` a difference axis in `[t]`.
    SliceDet,
    /// Slice permanents `g_{i,a,b}`, same pair condition.
    SlicePerm,
    /// Permanents of pairs with `d(a,b) = d_t(a,b) = 3`.
    Hat,
    /// Union of the slice permanents and the distance-three permanents.
    Check,
}

/// A canonical, sorted, duplicate-free generator family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorFamily {
    pub kind: IdealKind,
    pub shape: Shape,
    pub elements: Vec<SignedBinomial>,
}

impl GeneratorFamily {
    fn from_set(kind: IdealKind, shape: Shape, set: BTreeSet<SignedBinomial>) -> GeneratorFamily {
        GeneratorFamily {
            kind,
            shape,
            elements: set.into_iter().collect(),
        }
    }

    pub fn polynomials(&self) -> Vec<QPolynomial> {
        self.elements.iter().map(|b| b.to_polynomial()).collect()
    }
}

fn insert_value(set: &mut BTreeSet<SignedBinomial>, v: GenValue) {
    match v {
        GenValue::Zero => {}
        GenValue::Binomial(b) => {
            set.insert(b);
        }
        GenValue::DoubledMonomial(m) => {
            set.insert(SignedBinomial::monomial(m));
        }
    }
}

/// Quadratic slice ideal: one canonical generator per unordered pair with
/// `d(a,b) = 2` and per difference axis in `[t]`.
pub fn slice_ideal(shape: &Shape, kind: IdealKind) -> GeneratorFamily {
    debug_assert!(matches!(kind, IdealKind::SliceDet | IdealKind::SlicePerm));
    let points = shape.points();
    let mut set = BTreeSet::new();
    for (i, a) in points.iter().enumerate() {
        for b in points.iter().skip(i + 1) {
            if crate::hyperlattice::distance(a, b) != 2 {
                continue;
            }
            let (_, axes) = t_distance(shape, a, b);
            for axis in axes.iter() {
                let k = Axes::EMPTY.insert(axis);
                let v = match kind {
                    IdealKind::SliceDet => f_gen(k, a, b),
                    _ => g_gen(k, a, b),
                };
                insert_value(&mut set, v);
            }
        }
    }
    GeneratorFamily::from_set(kind, shape.clone(), set)
}

/// All permanents `g_{K,a,b}` whose exact difference set is `L`.
pub fn g_set(shape: &Shape, l: Axes, k: Axes) -> Result<GeneratorFamily> {
    if !k.is_subset_of(l) {
        return Err(Error::InvalidArguments(format!(
            "switch axes {k:?} must lie inside the difference axes {l:?}"
        )));
    }
    let points = shape.points();
    let mut set = BTreeSet::new();
    for (i, a) in points.iter().enumerate() {
        for b in points.iter().skip(i + 1) {
            if diff_axes(a, b) == l {
                insert_value(&mut set, g_gen(k, a, b));
            }
        }
    }
    Ok(GeneratorFamily::from_set(IdealKind::SlicePerm, shape.clone(), set))
}

fn hat_pairs(shape: &Shape) -> Vec<(Point, Point, Axes)> {
    let points = shape.points();
    let mut out = Vec::new();
    for (i, a) in points.iter().enumerate() {
        for b in points.iter().skip(i + 1) {
            if crate::hyperlattice::distance(a, b) != 3 {
                continue;
            }
            let (dt, axes) = t_distance(shape, a, b);
            if dt == 3 {
                out.push((a.clone(), b.clone(), axes));
            }
        }
    }
    out
}

/// Binomial form of the distance-three permanental ideal: `g_{i,a,b}` over
/// all `i` in the difference set, for pairs with `d(a,b) = d_t(a,b) = 3`.
/// Empty when `t <= 2`.
pub fn hat_ideal(shape: &Shape) -> GeneratorFamily {
    let mut set = BTreeSet::new();
    for (a, b, axes) in hat_pairs(shape) {
        for axis in axes.iter() {
            insert_value(&mut set, g_gen(Axes::EMPTY.insert(axis), &a, &b));
        }
    }
    GeneratorFamily::from_set(IdealKind::Hat, shape.clone(), set)
}

/// Monomial form of the same ideal: `x_a x_b` per qualifying pair. The two
/// forms generate equal ideals (the characteristic is zero here).
pub fn hat_ideal_monomial_form(shape: &Shape) -> GeneratorFamily {
    let mut set = BTreeSet::new();
    for (a, b, _) in hat_pairs(shape) {
        set.insert(SignedBinomial::monomial(
            Monomial::var(a).mul(&Monomial::var(b)),
        ));
    }
    GeneratorFamily::from_set(IdealKind::Hat, shape.clone(), set)
}

/// Union of the slice permanents and the distance-three permanents.
pub fn check_ideal(shape: &Shape) -> GeneratorFamily {
    let mut set: BTreeSet<SignedBinomial> =
        slice_ideal(shape, IdealKind::SlicePerm).elements.into_iter().collect();
    for b in hat_ideal(shape).elements {
        set.insert(b);
    }
    GeneratorFamily::from_set(IdealKind::Check, shape.clone(), set)
}

pub fn family(shape: &Shape, kind: IdealKind) -> GeneratorFamily {
    match kind {
        IdealKind::SliceDet | IdealKind::SlicePerm => slice_ideal(shape, kind),
        IdealKind::Hat => hat_ideal(shape),
        IdealKind::Check => check_ideal(shape),
    }
}

/// JSON shape of one generator: point lists plus the trail sign.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct GenJson {
    pub lead: Vec<Point>,
    pub trail: Option<Vec<Point>>,
    pub sign: i8,
}

impl GenJson {
    pub fn from_binomial(b: &SignedBinomial) -> GenJson {
        GenJson {
            lead: b.lead.points(),
            trail: b.trail.as_ref().map(|t| t.points()),
            sign: b.sign,
        }
    }

    pub fn to_binomial(&self) -> SignedBinomial {
        let lead = Monomial::from_points(self.lead.iter().cloned());
        match &self.trail {
            None => SignedBinomial::monomial(lead),
            Some(t) => {
                SignedBinomial::new(lead, Monomial::from_points(t.iter().cloned()), self.sign)
                    .expect("serialized binomial is nonzero")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[u32]) -> Point {
        Point::new(coords.to_vec())
    }

    fn axes1(i: usize, n: usize) -> Axes {
        Axes::from_axes(&[i], n).unwrap()
    }

    #[test]
    fn f_and_g_on_2x2() {
        let a = pt(&[1, 1]);
        let b = pt(&[2, 2]);
        let g = g_poly(axes1(1, 2), &a, &b);
        assert_eq!(g.to_string(), "x_(1,1)*x_(2,2) + x_(1,2)*x_(2,1)");
        let f = f_poly(axes1(1, 2), &a, &b);
        assert_eq!(f.to_string(), "x_(1,1)*x_(2,2) - x_(1,2)*x_(2,1)");
    }

    #[test]
    fn f_degenerates_off_axis() {
        // a, b differ only on axis 2; switching axis 2 swaps them back
        let a = pt(&[1, 1, 1]);
        let b = pt(&[1, 2, 1]);
        assert_eq!(f_gen(axes1(2, 3), &a, &b), GenValue::Zero);
        // the matching g is twice the monomial
        match g_gen(axes1(2, 3), &a, &b) {
            GenValue::DoubledMonomial(m) => {
                assert_eq!(m, Monomial::var(a.clone()).mul(&Monomial::var(b.clone())));
            }
            other => panic!("expected doubled monomial, got {other:?}"),
        }
    }

    #[test]
    fn slice_ideal_2x2() {
        let shape = Shape::new(vec![2, 2], 1).unwrap();
        let fam = slice_ideal(&shape, IdealKind::SlicePerm);
        assert_eq!(fam.elements.len(), 1);
        assert_eq!(
            fam.elements[0].to_polynomial().to_string(),
            "x_(1,1)*x_(2,2) + x_(1,2)*x_(2,1)"
        );
    }

    #[test]
    fn slice_ideal_matches_pair_enumeration() {
        // [2]^3 at t=2: count canonical (pair, axis) classes by brute force
        let shape = Shape::new(vec![2, 2, 2], 2).unwrap();
        let fam = slice_ideal(&shape, IdealKind::SlicePerm);
        let points = shape.points();
        let mut classes = BTreeSet::new();
        for a in &points {
            for b in &points {
                if a >= b || crate::hyperlattice::distance(a, b) != 2 {
                    continue;
                }
                for i in 1..=2usize {
                    if a.coord(i) != b.coord(i) {
                        let v = g_gen(axes1(i, 3), a, b);
                        if let GenValue::Binomial(bin) = v {
                            classes.insert(bin);
                        }
                    }
                }
            }
        }
        assert_eq!(fam.elements.len(), classes.len());
    }

    #[test]
    fn slice_ideal_322_t1_filter() {
        let shape = Shape::new(vec![3, 2, 2], 1).unwrap();
        let fam = slice_ideal(&shape, IdealKind::SlicePerm);
        // every generator comes from a pair differing on axis 1
        for b in &fam.elements {
            let pts = b.lead.points();
            assert_ne!(pts[0].coord(1), pts[1].coord(1));
        }
        // coefficient pattern (+1, +1) for permanents, (+1, -1) for determinants
        for b in &fam.elements {
            assert_eq!(b.sign, -1);
        }
        for b in &slice_ideal(&shape, IdealKind::SliceDet).elements {
            assert_eq!(b.sign, 1);
        }
    }

    #[test]
    fn g_set_basics() {
        let shape2 = Shape::new(vec![2, 2], 1).unwrap();
        let full = Axes::from_axes(&[1, 2], 2).unwrap();
        let fam = g_set(&shape2, full, axes1(1, 2)).unwrap();
        assert_eq!(fam.elements.len(), 1);

        let shape3 = Shape::new(vec![2, 2, 2], 1).unwrap();
        let l13 = Axes::from_axes(&[1, 3], 3).unwrap();
        let fam = g_set(&shape3, l13, axes1(1, 3)).unwrap();
        assert_eq!(fam.elements.len(), 2);

        let fam = g_set(&shape3, Axes::EMPTY, Axes::EMPTY).unwrap();
        assert!(fam.elements.is_empty());

        assert!(g_set(&shape3, axes1(1, 3), axes1(2, 3)).is_err());
    }

    #[test]
    fn hat_ideal_cases() {
        let cube3 = Shape::new(vec![2, 2, 2], 3).unwrap();
        assert_eq!(hat_ideal_monomial_form(&cube3).elements.len(), 4);

        let cube2 = Shape::new(vec![2, 2, 2], 2).unwrap();
        assert!(hat_ideal(&cube2).elements.is_empty());
        assert!(hat_ideal_monomial_form(&cube2).elements.is_empty());

        // [3,2,2] at t=3: count pairs with d = d_t = 3 by exhaustive scan
        let shape = Shape::new(vec![3, 2, 2], 3).unwrap();
        let points = shape.points();
        let mut count = 0;
        for (i, a) in points.iter().enumerate() {
            for b in points.iter().skip(i + 1) {
                if crate::hyperlattice::distance(a, b) == 3 {
                    count += 1;
                }
            }
        }
        assert_eq!(hat_ideal_monomial_form(&shape).elements.len(), count);
    }

    #[test]
    fn check_ideal_cases() {
        let shape = Shape::new(vec![2, 2, 2], 2).unwrap();
        assert_eq!(
            check_ideal(&shape).elements,
            slice_ideal(&shape, IdealKind::SlicePerm).elements
        );

        let cube3 = Shape::new(vec![2, 2, 2], 3).unwrap();
        let slice = slice_ideal(&cube3, IdealKind::SlicePerm);
        let check = check_ideal(&cube3);
        assert!(check.elements.len() > slice.elements.len());

        let flat = Shape::new(vec![2, 2], 2).unwrap();
        assert_eq!(
            check_ideal(&flat).elements,
            slice_ideal(&flat, IdealKind::SlicePerm).elements
        );
    }

    #[test]
    fn gen_json_round_trip() {
        let shape = Shape::new(vec![2, 2, 2], 2).unwrap();
        for b in &slice_ideal(&shape, IdealKind::SlicePerm).elements {
            let j = GenJson::from_binomial(b);
            let s = serde_json::to_string(&j).unwrap();
            let back: GenJson = serde_json::from_str(&s).unwrap();
            assert_eq!(back.to_binomial(), *b);
        }
    }
}

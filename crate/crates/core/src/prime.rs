//! Prime ideals attached to signed sets: the signed quadratic generators, the
//! explicit Gröbner basis with its sign bookkeeping, signed normal forms,
//! minimal-prime enumeration, and radical membership for monomials.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gens::GenValue;
use crate::hyperlattice::{diff_axes, switch, Axes, CollapsedPoint, Lattice, Point, Shape};
use crate::poly::{Monomial, SignedBinomial};
use crate::signed::{
    self, components, enumerate_signed, path_length, PointSet,
};

/// The signed quadratic generator for a connected pair: the pair product
/// minus the switched pair product weighted by a path-parity sign.
pub fn h_gen(lat: &Lattice, s: PointSet, k: Axes, a: &Point, b: &Point) -> Result<GenValue> {
    let slice_diff = diff_axes(a, b).intersect(Axes::full(lat.shape().t()));
    if !k.is_subset_of(slice_diff) {
        return Err(Error::InvalidArguments(format!(
            "switch axes {k:?} must lie inside the slice difference axes {slice_diff:?}"
        )));
    }
    let pl = path_length(lat, s, a, b)?;
    let sign = if a == b {
        1
    } else if (k.len() * (pl - 1)) % 2 == 0 {
        1
    } else {
        -1
    };
    let m1 = Monomial::var(a.clone()).mul(&Monomial::var(b.clone()));
    let m2 = Monomial::var(switch(k, a, b)).mul(&Monomial::var(switch(k, b, a)));
    Ok(match SignedBinomial::new(m1, m2, sign) {
        None => GenValue::Zero,
        Some(bin) if bin.is_monomial() => GenValue::DoubledMonomial(bin.lead),
        Some(bin) => GenValue::Binomial(bin),
    })
}

fn first_diff_entry(a: &CollapsedPoint, b: &CollapsedPoint) -> Option<usize> {
    (1..=a.head.len() + 1).find(|&pos| a.entry(pos) != b.entry(pos))
}

/// The big difference of a pair: an integer whose parity, multiplied by the
/// path-length parity, drives the sign of the quadratic normal form.
pub fn big_difference(shape: &Shape, a: &Point, b: &Point) -> i64 {
    let t = shape.t();
    let ca = shape.collapse(a);
    let cb = shape.collapse(b);
    let l = match first_diff_entry(&ca, &cb) {
        None => return 0,
        Some(l) if l >= t + 1 => return 0,
        Some(l) => l,
    };
    if ca.tail == cb.tail && ca.entry(l) < cb.entry(l) {
        return big_difference(shape, b, a);
    }
    // count slice axes where sgn(a_i - b_i) matches sgn(tail_b - tail_a + 1/2)
    let want_a_larger = cb.tail < ca.tail;
    let count = (1..=t)
        .filter(|&i| {
            if want_a_larger {
                a.coord(i) < b.coord(i)
            } else {
                a.coord(i) > b.coord(i)
            }
        })
        .count();
    count as i64 - 1
}

/// The Max-min and min-Max of a pair: entrywise maxima of the collapsed
/// tuples up to the first difference position, minima beyond it, and the
/// complementary point.
pub fn mm_pair(shape: &Shape, a: &Point, b: &Point) -> (Point, Point) {
    let t = shape.t();
    let ca = shape.collapse(a);
    let cb = shape.collapse(b);
    let l = match first_diff_entry(&ca, &cb) {
        None => return (a.clone(), b.clone()),
        Some(l) => l,
    };
    let mut max_head = Vec::with_capacity(t);
    let mut min_head = Vec::with_capacity(t);
    for i in 1..=t {
        let (x, y) = (ca.head[i - 1], cb.head[i - 1]);
        if i <= l {
            max_head.push(x.max(y));
            min_head.push(x.min(y));
        } else {
            max_head.push(x.min(y));
            min_head.push(x.max(y));
        }
    }
    let (max_tail, min_tail) = if l <= t {
        (ca.tail.min(cb.tail), ca.tail.max(cb.tail))
    } else {
        (ca.tail.max(cb.tail), ca.tail.min(cb.tail))
    };
    let mm = shape.uncollapse(&CollapsedPoint { head: max_head, tail: max_tail });
    let m_m = shape.uncollapse(&CollapsedPoint { head: min_head, tail: min_tail });
    (mm, m_m)
}

/// Normal form of a connected pair product: the sign and the reduced pair.
pub fn quad_reduce(lat: &Lattice, s: PointSet, a: &Point, b: &Point) -> Result<(i8, Point, Point)> {
    let pl = path_length(lat, s, a, b)?;
    if a == b {
        return Ok((1, a.clone(), b.clone()));
    }
    let (mm, m_m) = mm_pair(lat.shape(), a, b);
    let d = big_difference(lat.shape(), a, b);
    let sign = if (d * (pl as i64 - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
    debug_assert!(s.contains(lat.index_of(&mm)) && s.contains(lat.index_of(&m_m)));
    Ok((sign, mm, m_m))
}

fn component_id_map(lat: &Lattice, s: PointSet) -> Vec<Option<usize>> {
    let mut map = vec![None; lat.len()];
    for (id, comp) in components(lat, s).into_iter().enumerate() {
        for idx in comp.iter() {
            map[idx] = Some(id);
        }
    }
    map
}

/// Signed normal form of a monomial modulo the prime of a signed set:
/// `None` when the monomial lies in the ideal, otherwise the sign and the
/// reduced monomial. Pairs are rewritten largest product first, which makes
/// the computation deterministic; confluence makes the strategy irrelevant.
pub fn normal_form(lat: &Lattice, s: PointSet, m: &Monomial) -> Option<(i8, Monomial)> {
    normal_form_impl::<rand_chacha::ChaCha8Rng>(lat, s, m, None)
}

/// Same normal form, but rewriting a randomly chosen reducible pair at every
/// step. Used to exercise confluence.
pub fn normal_form_random<R: Rng>(
    lat: &Lattice,
    s: PointSet,
    m: &Monomial,
    rng: &mut R,
) -> Option<(i8, Monomial)> {
    normal_form_impl(lat, s, m, Some(rng))
}

fn normal_form_impl<R: Rng>(
    lat: &Lattice,
    s: PointSet,
    m: &Monomial,
    mut rng: Option<&mut R>,
) -> Option<(i8, Monomial)> {
    if m.support().any(|p| !s.contains(lat.index_of(p))) {
        return None;
    }
    let comp = component_id_map(lat, s);
    let mut pts = m.points();
    let mut sign: i8 = 1;
    loop {
        // collect the reducible pairs at this step
        let mut candidates: Vec<(usize, usize, Monomial)> = Vec::new();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let (a, b) = (&pts[i], &pts[j]);
                if a == b {
                    continue;
                }
                let (ia, ib) = (lat.index_of(a), lat.index_of(b));
                if comp[ia] != comp[ib] {
                    continue;
                }
                let (_, mm, m_m) = quad_reduce(lat, s, a, b).unwrap();
                if (&mm, &m_m) != (a, b) && (&mm, &m_m) != (b, a) {
                    candidates.push((i, j, Monomial::var(a.clone()).mul(&Monomial::var(b.clone()))));
                }
            }
        }
        if candidates.is_empty() {
            return Some((sign, Monomial::from_points(pts)));
        }
        let (i, j) = match rng.as_deref_mut() {
            None => {
                let best = candidates.iter().max_by(|x, y| x.2.cmp(&y.2)).unwrap();
                (best.0, best.1)
            }
            Some(r) => {
                let pick = candidates.choose(r).unwrap();
                (pick.0, pick.1)
            }
        };
        let (step_sign, mm, m_m) = quad_reduce(lat, s, &pts[i], &pts[j]).unwrap();
        pts[i] = mm;
        pts[j] = m_m;
        sign *= step_sign;
    }
}

/// The explicit Gröbner basis of the binomial part of the prime: all signed
/// generators over nonempty switch sets, canonically deduplicated.
pub fn groebner_gens(lat: &Lattice, s: PointSet) -> Vec<SignedBinomial> {
    let mut set = BTreeSet::new();
    for comp in components(lat, s) {
        let members: Vec<Point> = comp.points(lat);
        for (i, a) in members.iter().enumerate() {
            for b in members.iter().skip(i + 1) {
                let slice_diff = diff_axes(a, b).intersect(Axes::full(lat.shape().t()));
                for k in slice_diff.subsets() {
                    if k.is_empty() {
                        continue;
                    }
                    match h_gen(lat, s, k, a, b).unwrap() {
                        GenValue::Zero => {}
                        GenValue::Binomial(bin) => {
                            set.insert(bin);
                        }
                        GenValue::DoubledMonomial(m) => {
                            set.insert(SignedBinomial::monomial(m));
                        }
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// A canonical presentation of the prime of a signed set: the variables off
/// the set, plus the reduced quadratic binomials (one per connected pair
/// whose product is not already a normal form).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QIdeal {
    pub set: PointSet,
    pub vars: Vec<Point>,
    pub binomials: Vec<SignedBinomial>,
}

impl QIdeal {
    pub fn polynomials(&self) -> Vec<crate::poly::QPolynomial> {
        let mut out: Vec<crate::poly::QPolynomial> = self
            .vars
            .iter()
            .map(|p| crate::poly::QPolynomial::var(p.clone()))
            .collect();
        out.extend(self.binomials.iter().map(|b| b.to_polynomial()));
        out
    }
}

pub fn q_ideal(lat: &Lattice, s: PointSet) -> QIdeal {
    let vars: Vec<Point> = (0..lat.len())
        .filter(|&i| !s.contains(i))
        .map(|i| lat.point(i).clone())
        .collect();
    let mut binomials = BTreeSet::new();
    for comp in components(lat, s) {
        let members: Vec<Point> = comp.points(lat);
        for (i, a) in members.iter().enumerate() {
            for b in members.iter().skip(i + 1) {
                let (sign, mm, m_m) = quad_reduce(lat, s, a, b).unwrap();
                if (&mm, &m_m) == (a, b) || (&mm, &m_m) == (b, a) {
                    continue;
                }
                let lead = Monomial::var(a.clone()).mul(&Monomial::var(b.clone()));
                let trail = Monomial::var(mm).mul(&Monomial::var(m_m));
                binomials.insert(SignedBinomial::new(lead, trail, sign).unwrap());
            }
        }
    }
    QIdeal {
        set: s,
        vars,
        binomials: binomials.into_iter().collect(),
    }
}

/// Whether a signed binomial has signed normal form zero modulo the prime of
/// the given signed set.
pub fn reduces_to_zero(lat: &Lattice, s: PointSet, bin: &SignedBinomial) -> bool {
    let nf_lead = normal_form(lat, s, &bin.lead);
    match &bin.trail {
        None => nf_lead.is_none(),
        Some(trail) => {
            let nf_trail = normal_form(lat, s, trail);
            match (nf_lead, nf_trail) {
                (None, None) => true,
                (Some((sl, ml)), Some((st, mt))) => ml == mt && sl == bin.sign * st,
                _ => false,
            }
        }
    }
}

/// Whether the prime of `outer` contains the prime of `inner_superset`.
/// The variable parts force `outer` to be a subset of `inner_superset`;
/// beyond that, every quadratic generator of the bigger set's prime must
/// have signed normal form zero modulo the smaller set's prime.
pub fn q_ideal_contains(lat: &Lattice, outer: PointSet, inner_superset: PointSet) -> bool {
    if !outer.is_subset_of(inner_superset) {
        return false;
    }
    for comp in components(lat, inner_superset) {
        let members: Vec<Point> = comp.points(lat);
        for (i, a) in members.iter().enumerate() {
            for b in members.iter().skip(i + 1) {
                let slice_diff = diff_axes(a, b).intersect(Axes::full(lat.shape().t()));
                for axis in slice_diff.iter() {
                    let k = Axes::EMPTY.insert(axis);
                    let ok = match h_gen(lat, inner_superset, k, a, b).unwrap() {
                        GenValue::Zero => true,
                        GenValue::DoubledMonomial(m) => normal_form(lat, outer, &m).is_none(),
                        GenValue::Binomial(bin) => reduces_to_zero(lat, outer, &bin),
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Signed sets whose primes are inclusion-minimal in the family of all
/// signed-set primes: no signed strict superset has a smaller prime.
pub fn maximal_signed(lat: &Lattice, cap_points: usize) -> Result<Vec<PointSet>> {
    let all = enumerate_signed(lat, cap_points)?;
    minimal_in_family(lat, &all)
}

fn minimal_in_family(lat: &Lattice, family: &[PointSet]) -> Result<Vec<PointSet>> {
    let mut out = Vec::new();
    for &s in family {
        let dominated = family
            .iter()
            .any(|&t| t != s && s.is_subset_of(t) && q_ideal_contains(lat, s, t));
        if !dominated {
            out.push(s);
        }
    }
    Ok(out)
}

/// Pairs at full distance 3 concentrated on the slice axes; the edges of the
/// graph behind the distance-three permanental ideal.
pub fn hat_edges(lat: &Lattice) -> Vec<(usize, usize)> {
    let t = lat.shape().t();
    let mut out = Vec::new();
    for i in 0..lat.len() {
        for j in (i + 1)..lat.len() {
            if lat.dist(i, j) != 3 {
                continue;
            }
            let dt = diff_axes(lat.point(i), lat.point(j))
                .intersect(Axes::full(t))
                .len();
            if dt == 3 {
                out.push((i, j));
            }
        }
    }
    out
}

fn independent(s: PointSet, edges: &[(usize, usize)]) -> bool {
    edges.iter().all(|&(i, j)| !(s.contains(i) && s.contains(j)))
}

/// Maximal independent sets of the distance-three graph: the supports of the
/// minimal primes of the distance-three permanental ideal.
pub fn hat_maximal_independent(lat: &Lattice, cap_points: usize) -> Result<Vec<PointSet>> {
    if lat.len() > cap_points {
        return Err(Error::CapExceeded { count: lat.len(), cap: cap_points });
    }
    let edges = hat_edges(lat);
    let mut out = Vec::new();
    for bits in 0..(1u64 << lat.len()) {
        let s = PointSet(bits);
        if !independent(s, &edges) {
            continue;
        }
        let maximal = (0..lat.len())
            .all(|v| s.contains(v) || !independent(s.insert(v), &edges));
        if maximal {
            out.push(s);
        }
    }
    Ok(out)
}

/// Which ideal the minimal primes are computed for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimeTarget {
    /// The quadratic slice permanental ideal.
    SlicePerm,
    /// The distance-three permanental ideal.
    Hat,
    /// The union of the two.
    Check,
}

/// Minimal primes of the chosen permanental ideal, as canonical
/// presentations, sorted by descending support then support bitmask.
pub fn minimal_primes(lat: &Lattice, target: PrimeTarget, cap_points: usize) -> Result<Vec<QIdeal>> {
    let sets = match target {
        PrimeTarget::SlicePerm => maximal_signed(lat, cap_points)?,
        PrimeTarget::Hat => hat_maximal_independent(lat, cap_points)?,
        PrimeTarget::Check => {
            let edges = hat_edges(lat);
            let family: Vec<PointSet> = enumerate_signed(lat, cap_points)?
                .into_iter()
                .filter(|&s| independent(s, &edges))
                .collect();
            minimal_in_family(lat, &family)?
        }
    };
    let mut out: Vec<QIdeal> = sets
        .into_iter()
        .map(|s| match target {
            // the distance-three ideal is monomial, so its primes are pure
            // variable ideals
            PrimeTarget::Hat => QIdeal {
                set: s,
                vars: (0..lat.len())
                    .filter(|&i| !s.contains(i))
                    .map(|i| lat.point(i).clone())
                    .collect(),
                binomials: Vec::new(),
            },
            _ => q_ideal(lat, s),
        })
        .collect();
    out.sort_by(|a, b| {
        b.set
            .len()
            .cmp(&a.set.len())
            .then_with(|| a.set.0.cmp(&b.set.0))
    });
    Ok(out)
}

/// Whether a monomial lies in the radical of the slice permanental ideal:
/// exactly when its support extends to no signed set.
pub fn radical_monomial_member(lat: &Lattice, m: &Monomial) -> Result<bool> {
    let mut support = PointSet::EMPTY;
    for p in m.support() {
        lat.shape().check_point(p)?;
        support = support.insert(lat.index_of(p));
    }
    if m.is_one() {
        return Ok(false);
    }
    Ok(!signed::extends_to_signed(lat, support))
}

/// Subsets of the given size that extend to no signed set, ascending as
/// bitmasks.
pub fn nonextendable_sets(lat: &Lattice, size: usize, cap_points: usize) -> Result<Vec<PointSet>> {
    if lat.len() > cap_points {
        return Err(Error::CapExceeded { count: lat.len(), cap: cap_points });
    }
    let mut out = Vec::new();
    for bits in 0..(1u64 << lat.len()) {
        let s = PointSet(bits);
        if s.len() == size && !signed::extends_to_signed(lat, s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Squarefree binomials of degree up to the cap that lie in every minimal
/// prime, hence in the radical: pairs of equal-degree support sets whose
/// signed normal forms agree with one consistent sign across all maximal
/// signed sets, with at least one nonzero normal form pinning the sign.
pub fn radical_binomials(
    lat: &Lattice,
    cap_degree: usize,
    cap_points: usize,
) -> Result<Vec<SignedBinomial>> {
    let maxima = maximal_signed(lat, cap_points)?;
    let mut by_degree: Vec<Vec<PointSet>> = vec![Vec::new(); cap_degree + 1];
    for bits in 0..(1u64 << lat.len()) {
        let s = PointSet(bits);
        let k = s.len();
        if k >= 1 && k <= cap_degree {
            by_degree[k].push(s);
        }
    }
    let monomial_of = |s: PointSet| Monomial::from_points(s.points(lat));
    let mut out = Vec::new();
    for sets in &by_degree {
        for (i, &m1) in sets.iter().enumerate() {
            'pair: for &m2 in sets.iter().skip(i + 1) {
                let (mono1, mono2) = (monomial_of(m1), monomial_of(m2));
                let mut pinned: Option<i8> = None;
                for &s in &maxima {
                    let nf1 = normal_form(lat, s, &mono1);
                    let nf2 = normal_form(lat, s, &mono2);
                    match (nf1, nf2) {
                        (None, None) => {}
                        (Some((s1, f1)), Some((s2, f2))) => {
                            if f1 != f2 {
                                continue 'pair;
                            }
                            let v = s1 * s2;
                            match pinned {
                                None => pinned = Some(v),
                                Some(p) if p == v => {}
                                Some(_) => continue 'pair,
                            }
                        }
                        _ => continue 'pair,
                    }
                }
                if let Some(v) = pinned {
                    out.push(SignedBinomial::new(mono1, mono2, v).unwrap());
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The switch sets and sign exponent that rewrite one cubic monomial into
/// another inside the prime of a signed set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicLedger {
    pub k1: Axes,
    pub k2: Axes,
    pub k3: Axes,
    /// Sign exponent; only its parity is meaningful.
    pub p: i64,
}

impl CubicLedger {
    pub fn sign(&self) -> i8 {
        if self.p.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn ipl_signed(lat: &Lattice, s: PointSet, a: &Point, b: &Point) -> Result<i64> {
    Ok(path_length(lat, s, a, b)? as i64 - 1)
}

/// Builds the cubic rewrite ledger from `(a, b, c)` to `(A, B, C)`. The
/// endpoints must be mutually connected, tail-matched pairwise, and have
/// equal per-axis coordinate multisets.
pub fn cubic_ledger(
    lat: &Lattice,
    s: PointSet,
    from: (&Point, &Point, &Point),
    to: (&Point, &Point, &Point),
) -> Result<CubicLedger> {
    let (a, b, c) = from;
    let (big_a, big_b, _big_c) = to;
    let t = lat.shape().t();
    let mut k1 = Axes::EMPTY;
    let mut k2 = Axes::EMPTY;
    let mut k3 = Axes::EMPTY;
    for i in 1..=t {
        if big_a.coord(i) == b.coord(i) && b.coord(i) != a.coord(i) {
            k1 = k1.insert(i);
        }
    }
    for i in 1..=t {
        if big_a.coord(i) == c.coord(i) && c.coord(i) != a.coord(i) && !k1.contains(i) {
            k2 = k2.insert(i);
        }
    }
    for i in 1..=t {
        let in_k1 = k1.contains(i);
        if (in_k1 && big_b.coord(i) != a.coord(i))
            || (!in_k1 && big_b.coord(i) != b.coord(i))
        {
            k3 = k3.insert(i);
        }
    }
    let a1 = switch(k1, a, b);
    let b1 = switch(k1, b, a);
    let c2 = switch(k2, c, a);
    let p = k1.len() as i64 * ipl_signed(lat, s, a, b)?
        + k2.len() as i64 * ipl_signed(lat, s, &a1, c)?
        + k3.len() as i64 * ipl_signed(lat, s, &b1, &c2)?;
    Ok(CubicLedger { k1, k2, k3, p })
}

//! Switchable and signed point sets: closure under slice switches, connected
//! components of the distance-1 graph, path lengths, the component
//! classification that defines signed sets, and exhaustive enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::hyperlattice::{switch1, Lattice, Point};

/// A subset of the lattice points, as a bitmask over canonical point indices.
/// Supports lattices with up to 64 points.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(len: usize) -> PointSet {
        debug_assert!(len <= 64);
        if len == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << len) - 1)
        }
    }

    pub fn contains(self, idx: usize) -> bool {
        (self.0 >> idx) & 1 == 1
    }

    pub fn insert(self, idx: usize) -> PointSet {
        PointSet(self.0 | (1 << idx))
    }

    pub fn remove(self, idx: usize) -> PointSet {
        PointSet(self.0 & !(1 << idx))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersect(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn minus(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member indices, ascending.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(idx)
        })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> PointSet {
        let mut s = PointSet::EMPTY;
        for i in indices {
            s = s.insert(i);
        }
        s
    }

    pub fn from_points(lat: &Lattice, points: &[Point]) -> Result<PointSet> {
        let mut s = PointSet::EMPTY;
        for p in points {
            lat.shape().check_point(p)?;
            s = s.insert(lat.index_of(p));
        }
        Ok(s)
    }

    pub fn points(self, lat: &Lattice) -> Vec<Point> {
        self.iter().map(|i| lat.point(i).clone()).collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// First failure of switch closure, if any: a pair in the set at distance 2
/// differing on a slice axis whose switched pair leaves the set.
pub fn switch_violation(lat: &Lattice, s: PointSet) -> Option<(Point, Point, usize)> {
    let t = lat.shape().t();
    let members: Vec<usize> = s.iter().collect();
    for (k, &i) in members.iter().enumerate() {
        for &j in members.iter().skip(k + 1) {
            if lat.dist(i, j) != 2 {
                continue;
            }
            let (a, b) = (lat.point(i), lat.point(j));
            for axis in 1..=t {
                if a.coord(axis) == b.coord(axis) {
                    continue;
                }
                let sa = lat.index_of(&switch1(axis, a, b));
                let sb = lat.index_of(&switch1(axis, b, a));
                if !s.contains(sa) || !s.contains(sb) {
                    return Some((a.clone(), b.clone(), axis));
                }
            }
        }
    }
    None
}

/// Closure under slice switches: repeatedly adds the switched pair of every
/// distance-2 pair differing on a slice axis.
pub fn switchable_closure(lat: &Lattice, s: PointSet) -> PointSet {
    let t = lat.shape().t();
    let mut cur = s;
    loop {
        let mut next = cur;
        let members: Vec<usize> = cur.iter().collect();
        for (k, &i) in members.iter().enumerate() {
            for &j in members.iter().skip(k + 1) {
                if lat.dist(i, j) != 2 {
                    continue;
                }
                let (a, b) = (lat.point(i), lat.point(j));
                for axis in 1..=t {
                    if a.coord(axis) == b.coord(axis) {
                        continue;
                    }
                    next = next.insert(lat.index_of(&switch1(axis, a, b)));
                    next = next.insert(lat.index_of(&switch1(axis, b, a)));
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn is_switchable(lat: &Lattice, s: PointSet) -> bool {
    switch_violation(lat, s).is_none()
}

/// Connected components of the distance-1 graph restricted to the set,
/// ordered by smallest member index.
pub fn components(lat: &Lattice, s: PointSet) -> Vec<PointSet> {
    let mut seen = PointSet::EMPTY;
    let mut out = Vec::new();
    for start in s.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = PointSet::EMPTY.insert(start);
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for j in s.iter() {
                if !comp.contains(j) && lat.dist(i, j) == 1 {
                    comp = comp.insert(j);
                    queue.push(j);
                }
            }
        }
        seen = seen.union(comp);
        out.push(comp);
    }
    out
}

/// Shortest path length between two member points, stepping through the set
/// along distance-1 edges. Zero exactly when the endpoints coincide.
pub fn path_length(lat: &Lattice, s: PointSet, a: &Point, b: &Point) -> Result<usize> {
    let (ai, bi) = (lat.index_of(a), lat.index_of(b));
    if !s.contains(ai) || !s.contains(bi) {
        return Err(Error::NotConnected {
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let mut dist = vec![usize::MAX; lat.len()];
    dist[ai] = 0;
    let mut queue = std::collections::VecDeque::from([ai]);
    while let Some(i) = queue.pop_front() {
        if i == bi {
            return Ok(dist[i]);
        }
        for j in s.iter() {
            if dist[j] == usize::MAX && lat.dist(i, j) == 1 {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    Err(Error::NotConnected {
        a: a.to_string(),
        b: b.to_string(),
    })
}

/// Path length minus one; the exponent unit of the sign bookkeeping.
/// Requires distinct connected endpoints.
pub fn ipl(lat: &Lattice, s: PointSet, a: &Point, b: &Point) -> Result<usize> {
    let pl = path_length(lat, s, a, b)?;
    debug_assert!(pl >= 1, "ipl needs distinct endpoints");
    Ok(pl - 1)
}

/// Why a component is admissible, checked in this priority order, or the
/// witness that it is not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ComponentClass {
    /// All points share the same first-`t` coordinates.
    ConstHead,
    /// Any two points differ in at most one axis.
    NearSingleton,
    /// The distance-1 graph on the component is bipartite, so all walks
    /// between two fixed points have the same parity.
    ParityConsistent,
    /// Two adjacent points at equal bipartite depth: an odd closed walk.
    NotSigned(Point, Point),
}

impl ComponentClass {
    pub fn tag(&self) -> &'static str {
        match self {
            ComponentClass::ConstHead => "CONST_HEAD",
            ComponentClass::NearSingleton => "NEAR_SINGLETON",
            ComponentClass::ParityConsistent => "PARITY_CONSISTENT",
            ComponentClass::NotSigned(_, _) => "NOT_SIGNED",
        }
    }
}

fn classify_component(lat: &Lattice, comp: PointSet) -> ComponentClass {
    let t = lat.shape().t();
    let members: Vec<usize> = comp.iter().collect();

    let head = |i: usize| &lat.point(i).coords()[..t];
    if members.iter().all(|&i| head(i) == head(members[0])) {
        return ComponentClass::ConstHead;
    }

    if members
        .iter()
        .enumerate()
        .all(|(k, &i)| members.iter().skip(k + 1).all(|&j| lat.dist(i, j) <= 1))
    {
        return ComponentClass::NearSingleton;
    }

    // bipartiteness of the distance-1 graph via BFS 2-coloring
    let mut color = vec![u8::MAX; lat.len()];
    color[members[0]] = 0;
    let mut queue = std::collections::VecDeque::from([members[0]]);
    while let Some(i) = queue.pop_front() {
        for &j in &members {
            if lat.dist(i, j) != 1 {
                continue;
            }
            if color[j] == u8::MAX {
                color[j] = 1 - color[i];
                queue.push_back(j);
            } else if color[j] == color[i] {
                return ComponentClass::NotSigned(lat.point(i).clone(), lat.point(j).clone());
            }
        }
    }
    ComponentClass::ParityConsistent
}

/// Full diagnosis of a point set against the signed-set conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    /// A distance-2 pair whose switched pair escapes the set, if any.
    pub switch_violation: Option<(Point, Point, usize)>,
    pub components: Vec<(PointSet, ComponentClass)>,
}

impl Classification {
    pub fn is_signed(&self) -> bool {
        self.switch_violation.is_none()
            && self
                .components
                .iter()
                .all(|(_, c)| !matches!(c, ComponentClass::NotSigned(_, _)))
    }
}

pub fn classify(lat: &Lattice, s: PointSet) -> Classification {
    Classification {
        switch_violation: switch_violation(lat, s),
        components: components(lat, s)
            .into_iter()
            .map(|c| (c, classify_component(lat, c)))
            .collect(),
    }
}

pub fn is_signed(lat: &Lattice, s: PointSet) -> bool {
    classify(lat, s).is_signed()
}

/// All signed subsets of the lattice, ascending as bitmasks. Errors out when
/// the lattice exceeds the point cap (the scan is exponential).
pub fn enumerate_signed(lat: &Lattice, cap_points: usize) -> Result<Vec<PointSet>> {
    if lat.len() > cap_points {
        return Err(Error::CapExceeded {
            count: lat.len(),
            cap: cap_points,
        });
    }
    let mut out = Vec::new();
    for bits in 0..(1u64 << lat.len()) {
        let s = PointSet(bits);
        if is_signed(lat, s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Signed sets with no signed strict superset; a purely set-theoretic
/// diagnostic, distinct from minimality of the associated prime.
pub fn set_maximal_signed(lat: &Lattice, cap_points: usize) -> Result<Vec<PointSet>> {
    let all = enumerate_signed(lat, cap_points)?;
    Ok(all
        .iter()
        .filter(|&&s| {
            !all.iter()
                .any(|&t| s != t && s.is_subset_of(t))
        })
        .copied()
        .collect())
}

/// Whether some signed set contains `s`: holds exactly when the switch
/// closure of `s` contains no 2x3 grid varying on an axis pair that meets
/// the slice axes.
pub fn extends_to_signed(lat: &Lattice, s: PointSet) -> bool {
    let closure = switchable_closure(lat, s);
    let shape = lat.shape();
    let n = shape.n();
    let t = shape.t();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if i > t && j > t {
                continue;
            }
            // group closure points by their coordinates off axes {i, j}
            let mut groups: std::collections::BTreeMap<Vec<u32>, Vec<(u32, u32)>> =
                std::collections::BTreeMap::new();
            for idx in closure.iter() {
                let p = lat.point(idx);
                let rest: Vec<u32> = (1..=n)
                    .filter(|&k| k != i && k != j)
                    .map(|k| p.coord(k))
                    .collect();
                groups.entry(rest).or_default().push((p.coord(i), p.coord(j)));
            }
            for pairs in groups.values() {
                if has_2x3(pairs) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether a list of (row, col) cells contains a full 2x3 or 3x2 grid.
fn has_2x3(cells: &[(u32, u32)]) -> bool {
    use std::collections::{BTreeMap, BTreeSet};
    let mut rows: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    let mut cols: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for &(r, c) in cells {
        rows.entry(r).or_default().insert(c);
        cols.entry(c).or_default().insert(r);
    }
    let pair_hits = |m: &BTreeMap<u32, BTreeSet<u32>>| {
        let keys: Vec<&u32> = m.keys().collect();
        for (a, ka) in keys.iter().enumerate() {
            for kb in keys.iter().skip(a + 1) {
                if m[ka].intersection(&m[kb]).count() >= 3 {
                    return true;
                }
            }
        }
        false
    };
    pair_hits(&rows) || pair_hits(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperlattice::Shape;

    fn lat(radices: &[u32], t: usize) -> Lattice {
        Lattice::new(Shape::new(radices.to_vec(), t).unwrap())
    }

    fn pset(l: &Lattice, pts: &[&[u32]]) -> PointSet {
        let points: Vec<Point> = pts.iter().map(|c| Point::new(c.to_vec())).collect();
        PointSet::from_points(l, &points).unwrap()
    }

    #[test]
    fn empty_and_singletons_are_signed() {
        let l = lat(&[2, 2, 2], 2);
        assert!(is_signed(&l, PointSet::EMPTY));
        for i in 0..l.len() {
            assert!(is_signed(&l, PointSet::EMPTY.insert(i)));
        }
    }

    #[test]
    fn full_cube_is_signed() {
        for t in 1..=3 {
            let l = lat(&[2, 2, 2], t);
            let full = PointSet::full(l.len());
            let cls = classify(&l, full);
            assert!(cls.is_signed());
            assert_eq!(cls.components.len(), 1);
            assert_eq!(cls.components[0].1, ComponentClass::ParityConsistent);
        }
    }

    #[test]
    fn face_is_switchable_and_signed() {
        // the face where the first coordinate is 1: no member pair differs on
        // axis 1, so switchability holds vacuously; at t = 1 the heads agree
        let l = lat(&[2, 2, 2], 1);
        let face = pset(&l, &[&[1, 1, 1], &[1, 1, 2], &[1, 2, 1], &[1, 2, 2]]);
        let cls = classify(&l, face);
        assert!(cls.switch_violation.is_none());
        assert!(cls.is_signed());
        assert_eq!(cls.components[0].1, ComponentClass::ConstHead);
    }

    #[test]
    fn switch_violation_witness() {
        // a distance-2 pair alone is not switchable
        let l = lat(&[2, 2], 1);
        let s = pset(&l, &[&[1, 1], &[2, 2]]);
        let v = switch_violation(&l, s).unwrap();
        assert_eq!(v.2, 1);
        assert!(!is_switchable(&l, s));
        assert!(is_switchable(&l, PointSet::full(l.len())));
    }

    #[test]
    fn closure_example() {
        let l = lat(&[2, 3], 1);
        let u = pset(&l, &[&[1, 1], &[2, 2], &[1, 3]]);
        assert_eq!(switchable_closure(&l, u), PointSet::full(l.len()));
        // already-closed sets are fixed
        let face = pset(&l, &[&[1, 1], &[1, 2], &[1, 3]]);
        assert_eq!(switchable_closure(&l, face), face);
    }

    #[test]
    fn full_2x3_is_not_signed() {
        // a row of three is a triangle in the distance-1 graph
        let l = lat(&[2, 3], 1);
        let cls = classify(&l, PointSet::full(l.len()));
        assert!(!cls.is_signed());
        assert_eq!(cls.components.len(), 1);
        assert!(matches!(cls.components[0].1, ComponentClass::NotSigned(_, _)));
    }

    #[test]
    fn near_singleton_pair() {
        // two points at distance 2 off the slice axes form one component?
        // no: distance-2 points are not adjacent, so they are two components
        let l = lat(&[2, 2, 2], 1);
        let s = pset(&l, &[&[1, 1, 1], &[1, 2, 2]]);
        let cls = classify(&l, s);
        assert!(cls.is_signed());
        assert_eq!(cls.components.len(), 2);
        // an adjacent pair differing on a non-slice axis is one component
        let s = pset(&l, &[&[1, 1, 1], &[1, 1, 2]]);
        let cls = classify(&l, s);
        assert_eq!(cls.components.len(), 1);
        assert_eq!(cls.components[0].1, ComponentClass::ConstHead);
        // adjacent pair differing on the slice axis: near-singleton
        let s = pset(&l, &[&[1, 1, 1], &[2, 1, 1]]);
        let cls = classify(&l, s);
        assert_eq!(cls.components[0].1, ComponentClass::NearSingleton);
    }

    #[test]
    fn path_lengths() {
        let l = lat(&[2, 2, 2], 2);
        let full = PointSet::full(l.len());
        let a = Point::new(vec![1, 1, 1]);
        let b = Point::new(vec![1, 1, 2]);
        let c = Point::new(vec![2, 2, 2]);
        assert_eq!(path_length(&l, full, &a, &a).unwrap(), 0);
        assert_eq!(path_length(&l, full, &a, &b).unwrap(), 1);
        assert_eq!(path_length(&l, full, &a, &c).unwrap(), 3);
        assert_eq!(ipl(&l, full, &a, &c).unwrap(), 2);
        // inside a pair of antipodal points nothing is connected
        let s = pset(&l, &[&[1, 1, 1], &[2, 2, 2]]);
        assert!(path_length(&l, s, &a, &c).is_err());
    }

    #[test]
    fn enumerate_counts_and_cap() {
        let l = lat(&[2, 2], 1);
        let all = enumerate_signed(&l, 16).unwrap();
        // spot check: members really are signed, non-members are not
        for bits in 0..(1u64 << l.len()) {
            let s = PointSet(bits);
            assert_eq!(all.contains(&s), is_signed(&l, s));
        }
        assert!(matches!(
            enumerate_signed(&l, 2),
            Err(Error::CapExceeded { count: 4, cap: 2 })
        ));
    }

    #[test]
    fn extends_agrees_with_enumeration() {
        for (radices, t) in [(&[2u32, 3][..], 1usize), (&[2, 2, 2][..], 2), (&[2, 2, 2][..], 3)] {
            let l = lat(radices, t);
            let signed = enumerate_signed(&l, 16).unwrap();
            for bits in 0..(1u64 << l.len()) {
                let s = PointSet(bits);
                let oracle = signed.iter().any(|&t_set| s.is_subset_of(t_set));
                assert_eq!(
                    extends_to_signed(&l, s),
                    oracle,
                    "mismatch at {radices:?} t={t} set {s:?}"
                );
            }
        }
    }

    #[test]
    fn set_maximal_cube() {
        // the full cube is signed, so it is the unique set-maximal signed set
        let l = lat(&[2, 2, 2], 1);
        let maxima = set_maximal_signed(&l, 16).unwrap();
        assert_eq!(maxima, vec![PointSet::full(l.len())]);
    }
}

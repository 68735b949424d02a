//! Index combinatorics of the hypermatrix: points, axis switches, distances,
//! and the collapsed `(t+1)`-tuple encoding used by the quadratic normal forms.
//!
//! Coordinates are 1-based throughout, matching the `[r]` index convention.
//! Points of `N = [r_1] x ... x [r_n]` are enumerated in ascending
//! lexicographic order; that order is canonical everywhere downstream.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of axes, subset of `[n]` with `n <= 32`. Bit `i-1` stands for axis `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Axes(pub u32);

impl Axes {
    pub const EMPTY: Axes = Axes(0);

    /// Builds an axis set from 1-based axis numbers, validated against `n`.
    pub fn from_axes(axes: &[usize], n: usize) -> Result<Axes> {
        let mut bits = 0u32;
        for &i in axes {
            if i == 0 || i > n {
                return Err(Error::InvalidAxis { axis: i, n });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Axes(bits))
    }

    /// The full axis set `[n]`.
    pub fn full(n: usize) -> Axes {
        Axes(if n >= 32 { u32::MAX } else { (1 << n) - 1 })
    }

    pub fn contains(self, axis: usize) -> bool {
        axis >= 1 && (self.0 >> (axis - 1)) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(self, axis: usize) -> Axes {
        Axes(self.0 | (1 << (axis - 1)))
    }

    pub fn remove(self, axis: usize) -> Axes {
        Axes(self.0 & !(1 << (axis - 1)))
    }

    pub fn union(self, other: Axes) -> Axes {
        Axes(self.0 | other.0)
    }

    pub fn intersect(self, other: Axes) -> Axes {
        Axes(self.0 & other.0)
    }

    pub fn minus(self, other: Axes) -> Axes {
        Axes(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Axes) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates the member axes in increasing order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=32usize).filter(move |&i| self.contains(i))
    }

    /// All subsets of this axis set, the empty set first.
    pub fn subsets(self) -> impl Iterator<Item = Axes> {
        let mask = self.0;
        let mut sub: u32 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = Axes(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(cur)
        })
    }
}

impl fmt::Debug for Axes {
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

/// The hypermatrix format: number of axes, radices, and the slice parameter `t`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Shape {
    radices: Vec<u32>,
    t: usize,
}

impl Shape {
    pub fn new(radices: Vec<u32>, t: usize) -> Result<Shape> {
        let n = radices.len();
        if n == 0 {
            return Err(Error::InvalidArguments("shape needs at least one axis".into()));
        }
        if radices.iter().any(|&r| r == 0) {
            return Err(Error::InvalidArguments("every radix must be >= 1".into()));
        }
        if t == 0 || t > n {
            return Err(Error::InvalidArguments(format!(
                "t = {t} must satisfy 1 <= t <= n = {n}"
            )));
        }
        Ok(Shape { radices, t })
    }

    pub fn n(&self) -> usize {
        self.radices.len()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// Radix of a 1-based axis.
    pub fn radix(&self, axis: usize) -> u32 {
        self.radices[axis - 1]
    }

    pub fn with_t(&self, t: usize) -> Result<Shape> {
        Shape::new(self.radices.clone(), t)
    }

    pub fn point_count(&self) -> usize {
        self.radices.iter().map(|&r| r as usize).product()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.coords().len() == self.n()
            && p.coords()
                .iter()
                .zip(&self.radices)
                .all(|(&c, &r)| c >= 1 && c <= r)
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointOutOfShape {
                point: p.to_string(),
                shape: self.to_string(),
            })
        }
    }

    /// All points of `N` in ascending lexicographic order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.point_count());
        let mut cur = vec![1u32; self.n()];
        loop {
            out.push(Point::new(cur.clone()));
            // lexicographic successor
            let mut i = self.n();
            loop {
                if i == 0 {
                    return out;
                }
                if cur[i - 1] < self.radices[i - 1] {
                    cur[i - 1] += 1;
                    for c in cur[i..].iter_mut() {
                        *c = 1;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    /// Lexicographic rank of a point, 0-based.
    pub fn index_of(&self, p: &Point) -> usize {
        let mut idx = 0usize;
        for (i, &c) in p.coords().iter().enumerate() {
            idx = idx * self.radices[i] as usize + (c as usize - 1);
        }
        idx
    }

    /// Collapses a point into its head (first `t` coordinates) and the
    /// lexicographic rank of the trailing coordinates. Larger trailing tuples
    /// in lexicographic order get larger tail numerals; the tail is 1 when
    /// `t = n`.
    pub fn collapse(&self, p: &Point) -> CollapsedPoint {
        let t = self.t;
        let head = p.coords()[..t].to_vec();
        let mut tail = 0u64;
        for i in t..self.n() {
            tail = tail * self.radices[i] as u64 + (p.coords()[i] as u64 - 1);
        }
        CollapsedPoint { head, tail: tail + 1 }
    }

    pub fn uncollapse(&self, cp: &CollapsedPoint) -> Point {
        let t = self.t;
        let mut coords = cp.head.clone();
        coords.resize(self.n(), 1);
        let mut rem = cp.tail - 1;
        for i in (t..self.n()).rev() {
            let r = self.radices[i] as u64;
            coords[i] = (rem % r) as u32 + 1;
            rem /= r;
        }
        Point::new(coords)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radices: Vec<String> = self.radices.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", radices.join(","))
    }
}

/// Parses a radix list "r1,r2,...,rn"; `t` comes separately.
pub fn parse_radices(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad radix {p:?} in shape {s:?}")))
        })
        .collect()
}

/// A point of `N`, a 1-based coordinate tuple. The derived ordering is the
/// lexicographic order on coordinates, which is the canonical variable order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>) -> Point {
        Point(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// 1-based coordinate access.
    pub fn coord(&self, axis: usize) -> u32 {
        self.0[axis - 1]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Parses "(1,2,1)".
    fn from_str(s: &str) -> Result<Point> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("point {s:?} must be parenthesized")))?;
        let coords = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {p:?} in point {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse(format!("empty point {s:?}")));
        }
        Ok(Point(coords))
    }
}

/// The collapsed form of a point: `t` head coordinates plus the 1-based
/// lexicographic rank of the trailing coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CollapsedPoint {
    pub head: Vec<u32>,
    pub tail: u64,
}

impl CollapsedPoint {
    /// Entry of the `(t+1)`-tuple, 1-based; position `t+1` is the tail.
    pub fn entry(&self, pos: usize) -> u64 {
        if pos <= self.head.len() {
            self.head[pos - 1] as u64
        } else {
            self.tail
        }
    }
}

/// The switch function: takes `b`'s coordinates on the given axes, `a`'s elsewhere.
pub fn switch(axes: Axes, a: &Point, b: &Point) -> Point {
    debug_assert_eq!(a.coords().len(), b.coords().len());
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .enumerate()
        .map(|(i, (&ai, &bi))| if axes.contains(i + 1) { bi } else { ai })
        .collect();
    Point::new(coords)
}

/// Single-axis switch.
pub fn switch1(axis: usize, a: &Point, b: &Point) -> Point {
    switch(Axes::EMPTY.insert(axis), a, b)
}

/// Hamming distance: the number of axes where the points differ.
pub fn distance(a: &Point, b: &Point) -> usize {
    debug_assert_eq!(a.coords().len(), b.coords().len());
    a.coords().iter().zip(b.coords()).filter(|(x, y)| x != y).count()
}

/// The axes in `[n]` where the points differ.
pub fn diff_axes(a: &Point, b: &Point) -> Axes {
    let mut axes = Axes::EMPTY;
    for (i, (x, y)) in a.coords().iter().zip(b.coords()).enumerate() {
        if x != y {
            axes = axes.insert(i + 1);
        }
    }
    axes
}

/// Distance restricted to the first `t` axes, together with the difference axes.
pub fn t_distance(shape: &Shape, a: &Point, b: &Point) -> (usize, Axes) {
    let axes = diff_axes(a, b).intersect(Axes::full(shape.t()));
    (axes.len(), axes)
}

/// Precomputed point table for one shape: canonical enumeration, index lookup,
/// pairwise distances, and the distance-1 adjacency over point indices.
pub struct Lattice {
    shape: Shape,
    points: Vec<Point>,
    dist: Vec<u8>,
}

impl Lattice {
    pub fn new(shape: Shape) -> Lattice {
        let points = shape.points();
        let n = points.len();
        let mut dist = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = distance(&points[i], &points[j]) as u8;
            }
        }
        Lattice { shape, points, dist }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, idx: usize) -> &Point {
        &self.points[idx]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn index_of(&self, p: &Point) -> usize {
        self.shape.index_of(p)
    }

    pub fn dist(&self, i: usize, j: usize) -> usize {
        self.dist[i * self.points.len() + j] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[u32]) -> Point {
        Point::new(coords.to_vec())
    }

    #[test]
    fn switch_basics() {
        let a = pt(&[1, 1, 1]);
        let b = pt(&[2, 2, 2]);
        let l = Axes::from_axes(&[1], 3).unwrap();
        assert_eq!(switch(l, &a, &b), pt(&[2, 1, 1]));
        assert_eq!(switch(Axes::EMPTY, &pt(&[1, 2]), &pt(&[2, 1])), pt(&[1, 2]));
        let full = Axes::from_axes(&[1, 2], 2).unwrap();
        assert_eq!(switch(full, &pt(&[1, 1]), &pt(&[2, 2])), pt(&[2, 2]));
    }

    #[test]
    fn switch_rejects_bad_axis() {
        assert!(matches!(
            Axes::from_axes(&[4], 3),
            Err(Error::InvalidAxis { axis: 4, n: 3 })
        ));
        assert!(Axes::from_axes(&[0], 3).is_err());
    }

    #[test]
    fn distance_basics() {
        assert_eq!(distance(&pt(&[1, 1, 1]), &pt(&[1, 1, 1])), 0);
        assert_eq!(distance(&pt(&[1, 1, 1]), &pt(&[2, 2, 2])), 3);
        // paired switching leaves the distance alone
        let a = pt(&[1, 1, 1]);
        let b = pt(&[2, 2, 1]);
        let l = Axes::from_axes(&[1], 3).unwrap();
        assert_eq!(
            distance(&switch(l, &a, &b), &switch(l, &b, &a)),
            distance(&a, &b)
        );
        assert_eq!(switch(l, &a, &b), pt(&[2, 1, 1]));
        assert_eq!(switch(l, &b, &a), pt(&[1, 2, 1]));
    }

    #[test]
    fn switch_idempotence_pattern() {
        let shape = Shape::new(vec![2, 3, 2], 2).unwrap();
        let pts = shape.points();
        for a in &pts {
            for b in &pts {
                for l in Axes::full(3).subsets() {
                    let s = switch(l, a, b);
                    assert_eq!(switch(l, &s, b), s);
                }
            }
        }
    }

    #[test]
    fn t_distance_basics() {
        let s2 = Shape::new(vec![2, 2, 2], 2).unwrap();
        let (d, axes) = t_distance(&s2, &pt(&[1, 1, 2]), &pt(&[2, 1, 1]));
        assert_eq!(d, 1);
        assert_eq!(axes, Axes::from_axes(&[1], 3).unwrap());
        let s3 = Shape::new(vec![2, 2, 2], 3).unwrap();
        let (d, axes) = t_distance(&s3, &pt(&[1, 1, 1]), &pt(&[2, 2, 2]));
        assert_eq!(d, 3);
        assert_eq!(axes, Axes::full(3));
        let s1 = Shape::new(vec![2, 2], 1).unwrap();
        let (d, axes) = t_distance(&s1, &pt(&[1, 2]), &pt(&[1, 1]));
        assert_eq!(d, 0);
        assert!(axes.is_empty());
    }

    #[test]
    fn collapse_examples() {
        let s = Shape::new(vec![2, 2, 2], 2).unwrap();
        let cp = s.collapse(&pt(&[1, 2, 1]));
        assert_eq!(cp.head, vec![1, 2]);
        assert_eq!(cp.tail, 1);

        let s4 = Shape::new(vec![2, 2, 2, 2], 2).unwrap();
        let cp = s4.collapse(&pt(&[1, 2, 2, 1]));
        assert_eq!(cp.head, vec![1, 2]);
        assert_eq!(cp.tail, 3);
    }

    #[test]
    fn collapse_round_trip_and_order() {
        let s = Shape::new(vec![3, 2, 2], 1).unwrap();
        let pts = s.points();
        assert_eq!(pts.len(), 12);
        for p in &pts {
            assert_eq!(s.uncollapse(&s.collapse(p)), *p);
        }
        // collapse preserves lexicographic comparisons
        for a in &pts {
            for b in &pts {
                assert_eq!(a.cmp(b), s.collapse(a).cmp(&s.collapse(b)));
            }
        }
    }

    #[test]
    fn collapse_t_equals_n() {
        let s = Shape::new(vec![2, 2], 2).unwrap();
        for p in s.points() {
            let cp = s.collapse(&p);
            assert_eq!(cp.tail, 1);
            assert_eq!(s.uncollapse(&cp), p);
        }
    }

    #[test]
    fn enumeration_is_lex_and_duplicate_free() {
        let s = Shape::new(vec![3, 2, 2], 2).unwrap();
        let pts = s.points();
        assert_eq!(pts.len(), s.point_count());
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(s.index_of(p), i);
        }
    }

    #[test]
    fn distance_is_a_metric_on_small_shapes() {
        let s = Shape::new(vec![2, 2, 2, 2], 2).unwrap();
        let pts = s.points();
        for a in &pts {
            for b in &pts {
                assert_eq!(distance(a, b), distance(b, a));
                assert_eq!(distance(a, b) == 0, a == b);
                for c in &pts {
                    assert!(distance(a, c) <= distance(a, b) + distance(b, c));
                }
            }
        }
    }

    #[test]
    fn point_text_round_trip() {
        let p: Point = "(1,2,1)".parse().unwrap();
        assert_eq!(p, pt(&[1, 2, 1]));
        assert_eq!(p.to_string().parse::<Point>().unwrap(), p);
        assert!("1,2,1".parse::<Point>().is_err());
    }
}

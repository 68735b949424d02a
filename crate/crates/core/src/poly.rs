//! Exact sparse multivariate polynomial arithmetic over a field, with the
//! lexicographic term order, multivariate division, and Buchberger's
//! algorithm. This is the brute-force oracle that every combinatorial claim
//! in the crate is checked against.
//!
//! Variables are indexed by `Point`s and ordered lexicographically by their
//! subscript: the variable with the larger subscript is the larger variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyperlattice::Point;

/// Coefficient field for the oracle. `BigRational` is the only scalar the
/// crate exposes; floats are unsound for Gröbner arithmetic.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
    + fmt::Display
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + std::ops::Neg<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Div<Output = T>
        + fmt::Display
{
}

/// A product of variables: a finite multiset of points with positive
/// multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Point, u32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(p: Point) -> Monomial {
        let mut exps = BTreeMap::new();
        exps.insert(p, 1);
        Monomial { exps }
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(points: I) -> Monomial {
        let mut m = Monomial::one();
        for p in points {
            *m.exps.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Factors in ascending variable order, with multiplicities.
    pub fn factors(&self) -> impl Iterator<Item = (&Point, u32)> {
        self.exps.iter().map(|(p, &e)| (p, e))
    }

    /// The points appearing in the monomial, each once.
    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.exps.keys()
    }

    /// The points with multiplicity, ascending.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for (p, e) in &self.exps {
            for _ in 0..*e {
                out.push(p.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            *exps.entry(p.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut exps = BTreeMap::new();
        if k > 0 {
            for (p, e) in &self.exps {
                exps.insert(p.clone(), e * k);
            }
        }
        Monomial { exps }
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            match exps.get_mut(p) {
                Some(have) if *have > *e => *have -= e,
                Some(have) if *have == *e => {
                    exps.remove(p);
                }
                _ => return None,
            }
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.try_div(self).is_some()
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            let have = exps.entry(p.clone()).or_insert(0);
            *have = (*have).max(*e);
        }
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|p| !other.exps.contains_key(p))
    }
}

impl Ord for Monomial {
    /// Lexicographic order: scan variables from the largest down; the first
    /// variable with differing exponents decides.
    fn cmp(&self, other: &Monomial) -> Ordering {
        let mut a = self.exps.iter().rev().peekable();
        let mut b = other.exps.iter().rev().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((pa, ea)), Some((pb, eb))) => match pa.cmp(pb) {
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Less => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "x_{p}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Macaulay2-compatible rendering: `x_1_1_1*x_2_2_1`, exponents expanded.
pub fn monomial_to_m2(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for (p, e) in m.factors() {
        let name = format!(
            "x_{}",
            p.coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("_")
        );
        for _ in 0..e {
            parts.push(name.clone());
        }
    }
    parts.join("*")
}

/// A sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<C: Coeff = BigRational> {
    terms: BTreeMap<Monomial, C>,
}

/// The concrete oracle polynomial type.
pub type QPolynomial = Polynomial<BigRational>;

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Polynomial<C> {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn term(c: C, m: Monomial) -> Polynomial<C> {
        let mut p = Polynomial::zero();
        p.add_term(c, m);
        p
    }

    pub fn monomial(m: Monomial) -> Polynomial<C> {
        Polynomial::term(C::one(), m)
    }

    pub fn var(p: Point) -> Polynomial<C> {
        Polynomial::monomial(Monomial::var(p))
    }

    pub fn constant(c: C) -> Polynomial<C> {
        Polynomial::term(c, Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading (largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, c: C, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1.clone() * c2.clone(), m1.mul(m2));
            }
        }
        out
    }

    pub fn mul_term(&self, c: &C, m: &Monomial) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            out.add_term(c1.clone() * c.clone(), m1.mul(m));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Polynomial<C> {
        self.mul_term(c, &Monomial::one())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial<C> {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, lc)) => {
                let inv = C::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }
}

impl<C: Coeff> fmt::Display for Polynomial<C> {
    /// Terms from the largest monomial down; unit coefficients elided.
    /// The parser round-trips this output exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if format!("{c}").starts_with('-') {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() && !m.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Macaulay2-compatible rendering of a polynomial.
pub fn polynomial_to_m2(p: &QPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let neg = c < &BigRational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push('-');
        } else {
            out.push('+');
        }
        if mag.is_one() && !m.is_one() {
            out.push_str(&monomial_to_m2(m));
        } else if m.is_one() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{}*{}", mag, monomial_to_m2(m)));
        }
    }
    out
}

/// Parses the `Display` text format: sum of terms `c*x_(i,j)*x_(k,l)^e`.
pub fn parse_polynomial(s: &str) -> Result<QPolynomial> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Polynomial::zero());
    }
    // Split into signed terms. '+' and '-' appear only as term separators or
    // a leading sign: coordinates are positive and rationals print as p/q.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        terms.push((sign, cur.trim().to_string()));
    }
    let mut poly = QPolynomial::zero();
    for (neg, term) in terms {
        let (c, m) = parse_term(&term)?;
        let c = if neg { -c } else { c };
        poly.add_term(c, m);
    }
    Ok(poly)
}

fn parse_term(term: &str) -> Result<(BigRational, Monomial)> {
    let mut coeff = BigRational::one();
    let mut mono = Monomial::one();
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {term:?}")));
        }
        if let Some(rest) = factor.strip_prefix("x_") {
            let (point_str, exp) = match rest.find('^') {
                None => (rest, 1u32),
                Some(pos) => {
                    let e: u32 = rest[pos + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (&rest[..pos], e)
                }
            };
            let p: Point = point_str.parse()?;
            for _ in 0..exp {
                mono = mono.mul(&Monomial::var(p.clone()));
            }
        } else {
            let c: BigRational = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
            coeff = coeff * c;
        }
    }
    Ok((coeff, mono))
}

/// Full normal-form division of `f` by `basis`, recording quotients so that
/// `f = sum q_i basis_i + remainder`.
pub fn reduce_with_quotients<C: Coeff>(
    f: &Polynomial<C>,
    basis: &[Polynomial<C>],
) -> (Polynomial<C>, Vec<Polynomial<C>>) {
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let mut remainder = Polynomial::zero();
    let mut work = f.clone();
    'outer: while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for (i, g) in basis.iter().enumerate() {
            let (gm, gc) = match g.leading() {
                Some(l) => l,
                None => continue,
            };
            if let Some(q) = m.try_div(gm) {
                let qc = c.clone() / gc.clone();
                work = work.sub(&g.mul_term(&qc, &q));
                quotients[i].add_term(qc, q);
                continue 'outer;
            }
        }
        // irreducible leading term: move it to the remainder
        remainder.add_term(c, m.clone());
        work.terms.remove(&m);
    }
    (remainder, quotients)
}

/// Normal form of `f` with respect to `basis`.
pub fn reduce<C: Coeff>(f: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    reduce_with_quotients(f, basis).0
}

/// Result of a Buchberger run.
pub struct GroebnerBasis<C: Coeff = BigRational> {
    pub polys: Vec<Polynomial<C>>,
    /// Some S-pairs were discarded because their lcm exceeded the degree cap.
    /// For homogeneous input the basis still decides membership below the cap.
    pub truncated: bool,
    pub homogeneous: bool,
    pub degree_cap: u32,
}

/// Default degree cap for oracle runs.
pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first, ties broken by the term order on lcms) and a hard degree cap.
pub fn buchberger<C: Coeff>(gens: &[Polynomial<C>], degree_cap: u32) -> GroebnerBasis<C> {
    let homogeneous = gens.iter().all(|g| g.is_homogeneous());
    let mut basis: Vec<Polynomial<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    basis.sort_by(|a, b| compare_polys(a, b));
    basis.dedup();
    let mut truncated = false;

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let mut best: Option<(usize, Monomial)> = None;
        for (k, (i, j)) in pairs.iter().enumerate() {
            let lcm = basis[*i]
                .leading()
                .unwrap()
                .0
                .lcm(basis[*j].leading().unwrap().0);
            match &best {
                None => best = Some((k, lcm)),
                Some((_, cur)) => {
                    if lcm < *cur {
                        best = Some((k, lcm));
                    }
                }
            }
        }
        let (k, lcm) = best.unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (lti, _) = basis[i].leading().unwrap();
        let (ltj, _) = basis[j].leading().unwrap();
        if lti.is_coprime(ltj) {
            continue;
        }
        if lcm.degree() > degree_cap {
            truncated = true;
            continue;
        }
        let qi = lcm.try_div(lti).unwrap();
        let qj = lcm.try_div(ltj).unwrap();
        let spoly = basis[i]
            .mul_term(&C::one(), &qi)
            .sub(&basis[j].mul_term(&C::one(), &qj));
        let nf = reduce(&spoly, &basis);
        if !nf.is_zero() {
            let nf = nf.monic();
            let new_idx = basis.len();
            for idx in 0..new_idx {
                pairs.push((idx, new_idx));
            }
            basis.push(nf);
        }
    }

    // inter-reduce for a canonical reduced basis
    let mut reduced: Vec<Polynomial<C>> = Vec::new();
    for i in 0..basis.len() {
        let lt_i = basis[i].leading().unwrap().0.clone();
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, g)| j != i && g.leading().unwrap().0.divides(&lt_i) && {
                // on equal leading terms keep the first occurrence
                g.leading().unwrap().0 != &lt_i || j < i
            });
        if !redundant {
            reduced.push(basis[i].clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..reduced.len() {
            let others: Vec<Polynomial<C>> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let nf = reduce(&reduced[i], &others).monic();
            if nf != reduced[i] {
                reduced[i] = nf;
                changed = true;
            }
        }
        reduced.retain(|g| !g.is_zero());
    }
    reduced.sort_by(|a, b| compare_polys(a, b));
    GroebnerBasis {
        polys: reduced,
        truncated,
        homogeneous,
        degree_cap,
    }
}

fn compare_polys<C: Coeff>(a: &Polynomial<C>, b: &Polynomial<C>) -> Ordering {
    let ka: Vec<&Monomial> = a.terms.keys().rev().collect();
    let kb: Vec<&Monomial> = b.terms.keys().rev().collect();
    ka.cmp(&kb)
}

/// Tri-state ideal membership: a capped Buchberger run can be inconclusive
/// for inhomogeneous input or when the query degree exceeds the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    NotIn,
    Unknown,
}

pub fn ideal_member_with<C: Coeff>(f: &Polynomial<C>, gb: &GroebnerBasis<C>) -> Membership {
    if reduce(f, &gb.polys).is_zero() {
        return Membership::In;
    }
    if !gb.truncated || (gb.homogeneous && f.degree() <= gb.degree_cap) {
        Membership::NotIn
    } else {
        Membership::Unknown
    }
}

pub fn ideal_member<C: Coeff>(
    f: &Polynomial<C>,
    gens: &[Polynomial<C>],
    degree_cap: u32,
) -> Membership {
    ideal_member_with(f, &buchberger(gens, degree_cap))
}

/// A binomial with unit coefficients, `lead - sign * trail` with
/// `sign` in `{+1, -1}`, or a pure monomial when `trail` is absent.
/// Canonical orientation keeps `lead` strictly larger than `trail`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedBinomial {
    pub lead: Monomial,
    pub trail: Option<Monomial>,
    pub sign: i8,
}

impl SignedBinomial {
    /// Builds `m1 - sign * m2` in canonical orientation. Returns `None` for
    /// the zero element (`m1 = m2` with `sign = +1`).
    pub fn new(m1: Monomial, m2: Monomial, sign: i8) -> Option<SignedBinomial> {
        debug_assert!(sign == 1 || sign == -1);
        match m1.cmp(&m2) {
            Ordering::Greater => Some(SignedBinomial { lead: m1, trail: Some(m2), sign }),
            // flipping orientation rescales by -sign, which preserves sign
            Ordering::Less => Some(SignedBinomial { lead: m2, trail: Some(m1), sign }),
            Ordering::Equal => {
                if sign == 1 {
                    None
                } else {
                    // m - (-1)m = 2m: a pure monomial up to the unit 2
                    Some(SignedBinomial { lead: m1, trail: None, sign: 1 })
                }
            }
        }
    }

    pub fn monomial(m: Monomial) -> SignedBinomial {
        SignedBinomial { lead: m, trail: None, sign: 1 }
    }

    pub fn is_monomial(&self) -> bool {
        self.trail.is_none()
    }

    pub fn to_polynomial(&self) -> QPolynomial {
        let mut p = QPolynomial::monomial(self.lead.clone());
        if let Some(trail) = &self.trail {
            let c = BigRational::from_integer((-self.sign).into());
            p.add_term(c, trail.clone());
        }
        p
    }
}

impl fmt::Display for SignedBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

//! Command-line front end: generator listings, minimal-prime enumeration,
//! signed-set diagnostics, monomial reduction, and a verification runner.
//! Output is deterministic for a fixed configuration.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::gens::{self, GenJson, IdealKind};
use crate::hyperlattice::{parse_radices, Lattice, Point, Shape};
use crate::poly::{polynomial_to_m2, QPolynomial, SignedBinomial};
use crate::prime::{self, PrimeTarget};
use crate::signed::{self, PointSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(
    name = "permideal",
    about = "Exact minimal primes and Gröbner structure of 2x2 permanental ideals of hypermatrices",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    M2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdealArg {
    /// Slice permanents (the quadratic permanental ideal).
    Cj,
    /// Slice determinants.
    Ci,
    /// Distance-three permanents.
    Hatj,
    /// Slice plus distance-three permanents.
    Checkj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Off,
    Corpus,
    Full,
}

#[derive(Parser)]
struct CommonArgs {
    /// Hypermatrix radices, e.g. "3,2,2".
    #[arg(long)]
    shape: String,
    /// Slice parameter, 1 <= t <= n.
    #[arg(long)]
    t: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Refuse exhaustive subset scans on lattices with more points than this.
    #[arg(long, default_value_t = 16)]
    cap_points: usize,
    /// Degree cap for rational-oracle Gröbner runs.
    #[arg(long, default_value_t = 8)]
    cap_degree: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generating family of the chosen ideal.
    Gens {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "cj")]
        ideal: IdealArg,
    },
    /// Enumerate the minimal primes of the chosen ideal.
    MinPrimes {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "cj")]
        ideal: IdealArg,
    },
    /// List signed sets with their component diagnostics.
    SignedSets {
        #[command(flatten)]
        common: CommonArgs,
        /// Only sets whose primes are inclusion-minimal.
        #[arg(long)]
        maximal: bool,
    },
    /// Signed normal form of a monomial modulo the prime of a signed set.
    Reduce {
        #[command(flatten)]
        common: CommonArgs,
        /// Point-set file, "@file" with one point tuple per line; defaults to
        /// the full lattice.
        #[arg(long)]
        set: Option<String>,
        /// Product of points, e.g. "(1,1,1)(2,2,1)(1,2,1)".
        #[arg(long)]
        monomial: String,
    },
    /// Run the verification suites and count regressions.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "corpus")]
        level: LevelArg,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn shape_of(common: &CommonArgs) -> crate::error::Result<Shape> {
    Shape::new(parse_radices(&common.shape)?, common.t)
}

fn dispatch(cli: &Cli) -> crate::error::Result<i32> {
    match &cli.command {
        Command::Gens { common, ideal } => cmd_gens(common, *ideal),
        Command::MinPrimes { common, ideal } => cmd_min_primes(common, *ideal),
        Command::SignedSets { common, maximal } => cmd_signed_sets(common, *maximal),
        Command::Reduce { common, set, monomial } => cmd_reduce(common, set.as_deref(), monomial),
        Command::Verify { common, level } => cmd_verify(common, *level),
    }
}

fn family_for(shape: &Shape, ideal: IdealArg) -> gens::GeneratorFamily {
    match ideal {
        IdealArg::Cj => gens::slice_ideal(shape, IdealKind::SlicePerm),
        IdealArg::Ci => gens::slice_ideal(shape, IdealKind::SliceDet),
        IdealArg::Hatj => gens::hat_ideal_monomial_form(shape),
        IdealArg::Checkj => gens::check_ideal(shape),
    }
}

fn render_ideal_m2(polys: &[QPolynomial]) -> String {
    if polys.is_empty() {
        return "ideal(0)".into();
    }
    let body: Vec<String> = polys.iter().map(polynomial_to_m2).collect();
    format!("ideal({})", body.join(","))
}

fn cmd_gens(common: &CommonArgs, ideal: IdealArg) -> crate::error::Result<i32> {
    let shape = shape_of(common)?;
    let family = family_for(&shape, ideal);
    match common.format {
        FormatArg::Text => {
            for b in &family.elements {
                println!("{b}");
            }
            println!("count: {}", family.elements.len());
        }
        FormatArg::Json => {
            let doc: Vec<GenJson> = family.elements.iter().map(GenJson::from_binomial).collect();
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        FormatArg::M2 => {
            println!("{}", render_ideal_m2(&family.polynomials()));
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PrimeJson {
    set: Vec<Point>,
    vars: Vec<Point>,
    binomials: Vec<GenJson>,
}

#[derive(Serialize)]
struct PrimesDoc {
    primes: Vec<PrimeJson>,
    count: usize,
}

fn target_for(ideal: IdealArg) -> crate::error::Result<PrimeTarget> {
    match ideal {
        IdealArg::Cj => Ok(PrimeTarget::SlicePerm),
        IdealArg::Hatj => Ok(PrimeTarget::Hat),
        IdealArg::Checkj => Ok(PrimeTarget::Check),
        IdealArg::Ci => Err(Error::InvalidArguments(
            "minimal primes are computed for the permanental ideals only".into(),
        )),
    }
}

fn points_line(points: &[Point]) -> String {
    let mut out = String::new();
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{p}");
    }
    out
}

fn cmd_min_primes(common: &CommonArgs, ideal: IdealArg) -> crate::error::Result<i32> {
    let shape = shape_of(common)?;
    let lat = Lattice::new(shape);
    let primes = prime::minimal_primes(&lat, target_for(ideal)?, common.cap_points)?;
    match common.format {
        FormatArg::Text => {
            for q in &primes {
                println!("S: {}", points_line(&q.set.points(&lat)));
                println!("  vars: {}", points_line(&q.vars));
                for b in &q.binomials {
                    println!("  gen: {b}");
                }
            }
            println!("count: {}", primes.len());
        }
        FormatArg::Json => {
            let doc = PrimesDoc {
                count: primes.len(),
                primes: primes
                    .iter()
                    .map(|q| PrimeJson {
                        set: q.set.points(&lat),
                        vars: q.vars.clone(),
                        binomials: q.binomials.iter().map(GenJson::from_binomial).collect(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        FormatArg::M2 => {
            for q in &primes {
                println!("{}", render_ideal_m2(&q.polynomials()));
            }
            println!("-- count: {}", primes.len());
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ComponentJson {
    points: Vec<Point>,
    tag: String,
}

#[derive(Serialize)]
struct SetJson {
    points: Vec<Point>,
    components: Vec<ComponentJson>,
}

fn cmd_signed_sets(common: &CommonArgs, maximal: bool) -> crate::error::Result<i32> {
    let shape = shape_of(common)?;
    let lat = Lattice::new(shape);
    let sets = if maximal {
        prime::maximal_signed(&lat, common.cap_points)?
    } else {
        signed::enumerate_signed(&lat, common.cap_points)?
    };
    let describe = |s: PointSet| -> SetJson {
        let cls = signed::classify(&lat, s);
        SetJson {
            points: s.points(&lat),
            components: cls
                .components
                .iter()
                .map(|(c, tag)| ComponentJson {
                    points: c.points(&lat),
                    tag: tag.tag().to_string(),
                })
                .collect(),
        }
    };
    match common.format {
        FormatArg::Json => {
            let doc: Vec<SetJson> = sets.iter().map(|&s| describe(s)).collect();
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            for &s in &sets {
                let d = describe(s);
                let comps: Vec<String> = d
                    .components
                    .iter()
                    .map(|c| format!("[{} {}]", c.tag, points_line(&c.points)))
                    .collect();
                println!("{{{}}} {}", points_line(&d.points), comps.join(" "));
            }
            println!("count: {}", sets.len());
        }
    }
    Ok(EXIT_OK)
}

fn parse_monomial_arg(shape: &Shape, text: &str) -> crate::error::Result<crate::poly::Monomial> {
    let mut points = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in monomial {text:?}")))?;
        let p: Point = rest[..=close].parse()?;
        shape.check_point(&p)?;
        points.push(p);
        rest = rest[close + 1..].trim_start();
    }
    if points.is_empty() {
        return Err(Error::Parse("empty monomial".into()));
    }
    Ok(crate::poly::Monomial::from_points(points))
}

fn load_point_set(lat: &Lattice, arg: Option<&str>) -> crate::error::Result<PointSet> {
    let spec = match arg {
        None => return Ok(PointSet::full(lat.len())),
        Some(s) => s,
    };
    let path = spec.strip_prefix('@').ok_or_else(|| {
        Error::InvalidArguments(format!("--set expects @file, got {spec:?}"))
    })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArguments(format!("cannot read {path:?}: {e}")))?;
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        points.push(line.parse::<Point>()?);
    }
    PointSet::from_points(lat, &points)
}

fn cmd_reduce(
    common: &CommonArgs,
    set: Option<&str>,
    monomial: &str,
) -> crate::error::Result<i32> {
    let shape = shape_of(common)?;
    let lat = Lattice::new(shape);
    let s = load_point_set(&lat, set)?;
    let cls = signed::classify(&lat, s);
    if let Some((a, b, i)) = &cls.switch_violation {
        return Err(Error::NotSigned {
            t: lat.shape().t(),
            witness: format!("switching {a} and {b} on axis {i} leaves the set"),
        });
    }
    for (_, tag) in &cls.components {
        if let signed::ComponentClass::NotSigned(a, b) = tag {
            return Err(Error::NotSigned {
                t: lat.shape().t(),
                witness: format!("odd closed walk through the adjacent points {a} and {b}"),
            });
        }
    }
    let m = parse_monomial_arg(lat.shape(), monomial)?;
    match prime::normal_form(&lat, s, &m) {
        None => println!("0"),
        Some((sign, nf)) => {
            let poly = QPolynomial::term(
                num::BigRational::from_integer((sign as i64).into()),
                nf,
            );
            println!("{poly}");
        }
    }
    Ok(EXIT_OK)
}

/// Frozen minimal-prime counts for the slice permanental ideal on the
/// corpus shapes, plus the 2D closed form.
fn expected_min_prime_count(shape: &Shape) -> Option<usize> {
    let r = shape.radices();
    let t = shape.t();
    if r.len() == 2 && r[0] >= 3 && r[1] >= 3 && t == 1 {
        let c2 = |n: u32| (n as usize) * (n as usize - 1) / 2;
        return Some(c2(r[0]) * c2(r[1]) + r[0] as usize + r[1] as usize);
    }
    match (r, t) {
        ([2, 2, 2], 1) => Some(3),
        ([2, 2, 2], 2) => Some(5),
        ([3, 2, 2], 1) => Some(5),
        ([3, 2, 2], 2) => Some(19),
        ([2, 2, 3], 1) => Some(17),
        ([2, 2, 3], 2) => Some(19),
        _ => None,
    }
}

struct VerifyReport {
    failures: usize,
}

impl VerifyReport {
    fn check(&mut self, name: &str, ok: bool, detail: &str) {
        if ok {
            println!("PASS {name}{}", if detail.is_empty() { String::new() } else { format!(": {detail}") });
        } else {
            self.failures += 1;
            println!("FAIL {name}{}", if detail.is_empty() { String::new() } else { format!(": {detail}") });
        }
    }
}

fn spair_reduces_combinatorially(
    lat: &Lattice,
    s: PointSet,
    g1: &SignedBinomial,
    g2: &SignedBinomial,
) -> bool {
    let (t1, t2) = match (&g1.trail, &g2.trail) {
        (Some(t1), Some(t2)) => (t1, t2),
        _ => return true,
    };
    let lcm = g1.lead.lcm(&g2.lead);
    let u1 = lcm.try_div(&g1.lead).unwrap();
    let u2 = lcm.try_div(&g2.lead).unwrap();
    // S-polynomial = sign1 * u1 * trail1 - sign2 * u2 * trail2
    let nf1 = prime::normal_form(lat, s, &u1.mul(t1));
    let nf2 = prime::normal_form(lat, s, &u2.mul(t2));
    match (nf1, nf2) {
        (None, None) => true,
        (Some((s1, m1)), Some((s2, m2))) => m1 == m2 && g1.sign * s1 == g2.sign * s2,
        _ => false,
    }
}

fn cmd_verify(common: &CommonArgs, level: LevelArg) -> crate::error::Result<i32> {
    if level == LevelArg::Off {
        println!("verification disabled (--level off)");
        return Ok(EXIT_OK);
    }
    let shape = shape_of(common)?;
    let lat = Lattice::new(shape);
    let mut report = VerifyReport { failures: 0 };

    let maxima = prime::maximal_signed(&lat, common.cap_points)?;
    match expected_min_prime_count(lat.shape()) {
        Some(expect) => report.check(
            "minimal-prime-count",
            maxima.len() == expect,
            &format!("{} minimal primes (expected {})", maxima.len(), expect),
        ),
        None => println!("INFO minimal-prime-count: {} minimal primes (no frozen value)", maxima.len()),
    }

    // every slice permanental generator lies in every signed-set prime
    let family = gens::slice_ideal(lat.shape(), IdealKind::SlicePerm);
    let all_signed = signed::enumerate_signed(&lat, common.cap_points)?;
    let mut bad = 0usize;
    for &s in &all_signed {
        for g in &family.elements {
            if !prime::reduces_to_zero(&lat, s, g) {
                bad += 1;
            }
        }
    }
    report.check(
        "generator-containment",
        bad == 0,
        &format!("{} signed sets x {} generators", all_signed.len(), family.elements.len()),
    );

    // S-pair criterion for the explicit basis of every minimal prime
    let mut bad = 0usize;
    for &s in &maxima {
        let basis = prime::groebner_gens(&lat, s);
        for i in 0..basis.len() {
            for j in 0..i {
                if basis[i].lead.is_coprime(&basis[j].lead) {
                    continue;
                }
                if !spair_reduces_combinatorially(&lat, s, &basis[i], &basis[j]) {
                    bad += 1;
                }
            }
        }
    }
    report.check("groebner-s-pairs", bad == 0, &format!("{} maximal sets", maxima.len()));

    // the quadratic fast path agrees with generic polynomial division
    let mut bad = 0usize;
    for &s in &maxima {
        let polys: Vec<QPolynomial> = prime::q_ideal(&lat, s)
            .polynomials();
        for i in s.iter() {
            for j in s.iter() {
                if j < i {
                    continue;
                }
                let m = crate::poly::Monomial::var(lat.point(i).clone())
                    .mul(&crate::poly::Monomial::var(lat.point(j).clone()));
                let generic = crate::poly::reduce(&QPolynomial::monomial(m.clone()), &polys);
                let fast = prime::normal_form(&lat, s, &m);
                let agree = match fast {
                    None => generic.is_zero(),
                    Some((sign, nf)) => {
                        generic
                            == QPolynomial::term(
                                num::BigRational::from_integer((sign as i64).into()),
                                nf,
                            )
                    }
                };
                if !agree {
                    bad += 1;
                }
            }
        }
    }
    report.check("quad-normal-form-agreement", bad == 0, "");

    if level == LevelArg::Full {
        // rational-oracle S-pair certification
        let mut bad = 0usize;
        for &s in &maxima {
            let polys: Vec<QPolynomial> = prime::groebner_gens(&lat, s)
                .iter()
                .map(|g| g.to_polynomial())
                .collect();
            for i in 0..polys.len() {
                for j in 0..i {
                    let (li, _) = polys[i].leading().unwrap();
                    let (lj, _) = polys[j].leading().unwrap();
                    if li.is_coprime(lj) {
                        continue;
                    }
                    let lcm = li.lcm(lj);
                    let one = num::BigRational::from_integer(1.into());
                    let s_poly = polys[i]
                        .mul_term(&one, &lcm.try_div(li).unwrap())
                        .sub(&polys[j].mul_term(&one, &lcm.try_div(lj).unwrap()));
                    if !crate::poly::reduce(&s_poly, &polys).is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        report.check("oracle-groebner-s-pairs", bad == 0, "");
    }

    if report.failures == 0 {
        println!("verification passed");
        Ok(EXIT_OK)
    } else {
        println!("verification failed: {} check(s)", report.failures);
        Ok(EXIT_VERIFY)
    }
}

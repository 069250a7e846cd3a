//! Short Weierstrass curves `y^2 = x^3 + a4*x + a6` over a prime field.
//!
//! Points are affine with an explicit identity marker. Point counting is an
//! exhaustive character sum for small moduli and baby-step giant-step on
//! random points above that.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Largest modulus handled by the exhaustive counter.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Identity,
    Affine { x: FieldElement, y: FieldElement },
}

impl Point {
    pub fn affine(x: FieldElement, y: FieldElement) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Point::Identity)
    }

    pub fn x(&self) -> Option<FieldElement> {
        match self {
            Point::Identity => None,
            Point::Affine { x, .. } => Some(*x),
        }
    }

    pub fn y(&self) -> Option<FieldElement> {
        match self {
            Point::Identity => None,
            Point::Affine { y, .. } => Some(*y),
        }
    }

    pub fn neg(&self) -> Self {
        match *self {
            Point::Identity => Point::Identity,
            Point::Affine { x, y } => Point::Affine { x, y: -y },
        }
    }
}

/// `x,y` for affine points, `O` for the identity.
impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Identity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "{},{}", x.value(), y.value()),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Identity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({}, {})", x.value(), y.value()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    field: PrimeField,
    a4: FieldElement,
    a6: FieldElement,
}

impl Curve {
    pub fn new(field: PrimeField, a4: FieldElement, a6: FieldElement) -> Result<Self> {
        let p = field.modulus();
        if p == 3 {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        let four = field.from_u64(4);
        let twenty_seven = field.from_u64(27);
        let disc = four * a4.pow(3) + twenty_seven * a6.square();
        if disc.is_zero() {
            return Err(Error::SingularCurve { p });
        }
        Ok(Self { field, a4, a6 })
    }

    /// Builds a curve from signed integer coefficients, reducing them mod `p`.
    pub fn from_ints(p: u64, a4: i64, a6: i64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Self::new(field, field.from_i64(a4), field.from_i64(a6))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn a4(&self) -> FieldElement {
        self.a4
    }

    pub fn a6(&self) -> FieldElement {
        self.a6
    }

    /// `x^3 + a4*x + a6`.
    pub fn rhs(&self, x: FieldElement) -> FieldElement {
        x * x * x + self.a4 * x + self.a6
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match *pt {
            Point::Identity => true,
            Point::Affine { x, y } => {
                x.modulus() == self.p() && y.modulus() == self.p() && y.square() == self.rhs(x)
            }
        }
    }

    /// Builds a validated affine point from integer coordinates.
    pub fn point(&self, x: i64, y: i64) -> Result<Point> {
        let pt = Point::affine(self.field.from_i64(x), self.field.from_i64(y));
        self.check(&pt)?;
        Ok(pt)
    }

    pub fn check(&self, pt: &Point) -> Result<()> {
        if self.contains(pt) {
            Ok(())
        } else {
            let (x, y) = match pt {
                Point::Affine { x, y } => (x.value(), y.value()),
                Point::Identity => unreachable!(),
            };
            Err(Error::PointNotOnCurve { x, y })
        }
    }

    /// Chord-tangent addition; both inputs are validated.
    pub fn add(&self, a: &Point, b: &Point) -> Result<Point> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &Point, b: &Point) -> Point {
        let (x1, y1, x2, y2) = match (*a, *b) {
            (Point::Identity, _) => return *b,
            (_, Point::Identity) => return *a,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Point::Identity;
            }
            let three = self.field.from_u64(3);
            (three * x1.square() + self.a4) * (y1 + y1).inv().expect("y1 != 0")
        } else {
            (y2 - y1) * (x2 - x1).inv().expect("x1 != x2")
        };
        let x3 = lambda.square() - x1 - x2;
        let y3 = lambda * (x1 - x3) - y1;
        Point::affine(x3, y3)
    }

    pub fn double(&self, a: &Point) -> Point {
        self.add_unchecked(a, a)
    }

    /// `k * a` by double-and-add; negative `k` uses `-a`.
    pub fn mul(&self, k: i64, a: &Point) -> Result<Point> {
        self.check(a)?;
        let base = if k < 0 { a.neg() } else { *a };
        Ok(self.mul_u128(k.unsigned_abs() as u128, &base))
    }

    pub(crate) fn mul_u128(&self, mut k: u128, a: &Point) -> Point {
        let mut acc = Point::Identity;
        let mut base = *a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    /// A uniformly chosen affine point.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> Point {
        loop {
            let x = self.field.from_u64(rng.random_range(0..self.p()));
            if let Some(y) = self.rhs(x).sqrt() {
                let y = if rng.random_bool(0.5) { -y } else { y };
                return Point::affine(x, y);
            }
        }
    }

    /// Every point of `E(F_p)`, identity first, then by ascending `x`.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::Identity];
        for x in self.field.elements() {
            if let Some(y) = self.rhs(x).sqrt() {
                out.push(Point::affine(x, y));
                if !y.is_zero() {
                    out.push(Point::affine(x, -y));
                }
            }
        }
        out
    }
}

/// Group order and trace of Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobeniusData {
    pub q: u64,
    pub order: u64,
    pub trace: i64,
}

impl FrobeniusData {
    pub fn new(q: u64, order: u64) -> Result<Self> {
        let trace = (q as i128 + 1 - order as i128) as i64;
        if (trace as i128).pow(2) > 4 * q as i128 {
            return Err(Error::InconsistentInput(format!(
                "order {order} violates the Hasse bound over F_{q}"
            )));
        }
        if trace.rem_euclid(q as i64) == 0 {
            return Err(Error::SupersingularCurve { p: q, t: trace });
        }
        Ok(Self { q, order, trace })
    }

    /// `t^2 - 4q`, the discriminant of the Frobenius.
    pub fn frobenius_discriminant(&self) -> i128 {
        (self.trace as i128).pow(2) - 4 * self.q as i128
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// Exhaustive below [`EXHAUSTIVE_LIMIT`], BSGS above.
    Auto,
    Exhaustive,
    Bsgs { seed: u64 },
}

pub fn count_points(curve: &Curve) -> Result<FrobeniusData> {
    count_points_with(curve, CountMode::Auto)
}

pub fn count_points_with(curve: &Curve, mode: CountMode) -> Result<FrobeniusData> {
    let p = curve.p();
    let order = match mode {
        CountMode::Exhaustive => {
            if p >= EXHAUSTIVE_LIMIT {
                return Err(Error::CurveTooLarge(p));
            }
            count_exhaustive(curve)
        }
        CountMode::Bsgs { seed } => count_bsgs(curve, seed)?,
        CountMode::Auto if p < EXHAUSTIVE_LIMIT => count_exhaustive(curve),
        CountMode::Auto => count_bsgs(curve, 0x5eed)?,
    };
    FrobeniusData::new(p, order)
}

fn count_exhaustive(curve: &Curve) -> u64 {
    let p = curve.p();
    let f = curve.field();
    // #E = 1 + sum_x (1 + chi(x^3 + a4 x + a6))
    let sum: i64 = (0..p)
        .into_par_iter()
        .map(|x| 1 + curve.rhs(f.from_u64(x)).legendre() as i64)
        .sum();
    (1 + sum) as u64
}

fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Candidate group orders `m` in the Hasse interval with `m * pt = O`.
fn hasse_annihilators(curve: &Curve, pt: &Point, cap: usize) -> Option<BTreeSet<u128>> {
    let p = curve.p() as u128;
    let width = 2 * isqrt(4 * p) + 2;
    let lo = (p + 1).saturating_sub(width / 2);
    let hi = p + 1 + width / 2;
    let w = isqrt(hi - lo + 1) + 1;

    let mut baby: HashMap<u64, Vec<u128>> = HashMap::new();
    let mut cur = Point::Identity;
    for j in 1..=w {
        cur = curve.add_unchecked(&cur, pt);
        if let Some(x) = cur.x() {
            baby.entry(x.value()).or_default().push(j);
        }
    }
    let stride = 2 * w + 1;
    let step = curve.mul_u128(stride, pt);
    let mut centre = lo + w;
    let mut giant = curve.mul_u128(centre, pt);
    let mut found = BTreeSet::new();
    let accept = |m: u128, found: &mut BTreeSet<u128>| {
        if (lo..=hi).contains(&m) && curve.mul_u128(m, pt).is_identity() {
            found.insert(m);
        }
    };
    while centre <= hi + w {
        match giant.x() {
            None => accept(centre, &mut found),
            Some(x) => {
                if let Some(js) = baby.get(&x.value()) {
                    for &j in js {
                        accept(centre - j, &mut found);
                        accept(centre + j, &mut found);
                    }
                }
            }
        }
        if found.len() > cap {
            return None;
        }
        giant = curve.add_unchecked(&giant, &step);
        centre += stride;
    }
    Some(found)
}

fn count_bsgs(curve: &Curve, seed: u64) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Option<BTreeSet<u128>> = None;
    for _ in 0..48 {
        let pt = curve.random_point(&mut rng);
        let Some(found) = hasse_annihilators(curve, &pt, 64) else {
            continue;
        };
        let next = match candidates {
            None => found,
            Some(prev) => prev.intersection(&found).copied().collect(),
        };
        if next.len() == 1 {
            return Ok(*next.iter().next().unwrap() as u64);
        }
        if next.is_empty() {
            return Err(Error::CountingFailed);
        }
        candidates = Some(next);
    }
    Err(Error::CountingFailed)
}

/// Reduces `y^2 = x^3 + (n4/d4) x + (n6/d6)` modulo `p`.
pub fn reduce_rational_curve(n4: i64, d4: i64, n6: i64, d6: i64, p: u64) -> Result<Curve> {
    let field = PrimeField::new(p)?;
    let bad = |reason: String| Error::BadReduction { p, reason };
    let frac = |n: i64, d: i64| -> Result<FieldElement> {
        let den = field.from_i64(d);
        let inv = den
            .inv()
            .map_err(|_| bad(format!("{p} divides the denominator {d}")))?;
        Ok(field.from_i64(n) * inv)
    };
    let a4 = frac(n4, d4)?;
    let a6 = frac(n6, d6)?;
    match Curve::new(field, a4, a6) {
        Ok(c) => Ok(c),
        Err(Error::SingularCurve { .. }) => Err(bad("reduced curve is singular".into())),
        Err(e) => Err(e),
    }
}

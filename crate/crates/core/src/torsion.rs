//! Fully rational `l`-torsion: bases, discrete logs and the `l + 1` lines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::{Curve, FrobeniusData, Point};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::pairing::weil_pairing;

pub const MAX_ELL: u64 = 997;
pub const DEFAULT_SEED: u64 = 0x0d15_7012;

/// A curve together with a prime `l` for which `E[l]` is `F_q`-rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionContext {
    ell: u64,
    curve: Curve,
    frob: FrobeniusData,
}

impl TorsionContext {
    pub fn new(curve: Curve, frob: FrobeniusData, ell: u64) -> Result<Self> {
        if !is_prime(ell) || ell > MAX_ELL {
            return Err(Error::InconsistentInput(format!(
                "l = {ell} must be a prime not exceeding {MAX_ELL}"
            )));
        }
        if ell == curve.p() || frob.q != curve.p() {
            return Err(Error::InconsistentInput(format!(
                "l = {ell} and q = {} must differ from each other and match p = {}",
                frob.q,
                curve.p()
            )));
        }
        let not_rational = |reason: String| Err(Error::TorsionNotRational { ell, reason });
        if !frob.order.is_multiple_of(ell * ell) {
            return not_rational(format!("l^2 does not divide #E = {}", frob.order));
        }
        if frob.trace.rem_euclid(ell as i64) != 2 % ell as i64 {
            return not_rational(format!("t = {} is not 2 mod l", frob.trace));
        }
        if frob.q % ell != 1 {
            return not_rational(format!("q = {} is not 1 mod l", frob.q));
        }
        Ok(Self { ell, curve, frob })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn frobenius(&self) -> &FrobeniusData {
        &self.frob
    }
}

/// Generators `(P, Q)` of `E[l]` with `e_l(P, Q) != 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionBasis {
    ctx: TorsionContext,
    p: Point,
    q: Point,
}

impl TorsionBasis {
    /// Validates a given pair of points as a basis.
    pub fn new(ctx: TorsionContext, p: Point, q: Point) -> Result<Self> {
        let curve = ctx.curve;
        let ell = ctx.ell;
        for pt in [&p, &q] {
            curve.check(pt)?;
            if pt.is_identity() || !curve.mul_u128(ell as u128, pt).is_identity() {
                return Err(Error::NotInTorsion { ell });
            }
        }
        if weil_pairing(&curve, ell, &p, &q)?.is_one() {
            return Err(Error::InconsistentInput(
                "P and Q generate the same subgroup".into(),
            ));
        }
        Ok(Self { ctx, p, q })
    }

    pub fn context(&self) -> &TorsionContext {
        &self.ctx
    }

    pub fn curve(&self) -> &Curve {
        &self.ctx.curve
    }

    pub fn ell(&self) -> u64 {
        self.ctx.ell
    }

    pub fn p(&self) -> Point {
        self.p
    }

    pub fn q(&self) -> Point {
        self.q
    }

    /// `a*P + b*Q`.
    pub fn combine(&self, a: u64, b: u64) -> Point {
        let c = self.curve();
        let ap = c.mul_u128(a as u128, &self.p);
        let bq = c.mul_u128(b as u128, &self.q);
        c.add_unchecked(&ap, &bq)
    }

    /// Coordinates `(a, b)` with `R = a*P + b*Q`, by exhaustive search.
    pub fn dlog2d(&self, r: &Point) -> Result<(u64, u64)> {
        let c = self.curve();
        let ell = self.ell();
        c.check(r)?;
        if !c.mul_u128(ell as u128, r).is_identity() {
            return Err(Error::NotInTorsion { ell });
        }
        let mut row = Point::Identity;
        for a in 0..ell {
            let mut cur = row;
            for b in 0..ell {
                if cur == *r {
                    return Ok((a, b));
                }
                cur = c.add_unchecked(&cur, &self.q);
            }
            row = c.add_unchecked(&row, &self.p);
        }
        unreachable!("a basis spans all of E[l]")
    }

    /// Generators of the `l + 1` subgroups of order `l`: `Q`, then `P + kQ`.
    pub fn enumerate_subgroups(&self) -> Vec<Point> {
        subgroup_lines(self.ell())
            .into_iter()
            .map(|[a, b]| self.combine(a, b))
            .collect()
    }
}

/// Canonical line representatives in `(Z/l)^2`: `(0, 1)` then `(1, k)`.
pub fn subgroup_lines(ell: u64) -> Vec<[u64; 2]> {
    std::iter::once([0, 1]).chain((0..ell).map(|k| [1, k])).collect()
}

/// A point of exact order `l`, or `None` if this sample was unlucky.
fn sample_order_ell(ctx: &TorsionContext, cofactor: u64, rng: &mut ChaCha8Rng) -> Option<Point> {
    let curve = &ctx.curve;
    let mut pt = curve.mul_u128(cofactor as u128, &curve.random_point(rng));
    if pt.is_identity() {
        return None;
    }
    loop {
        let next = curve.mul_u128(ctx.ell as u128, &pt);
        if next.is_identity() {
            return Some(pt);
        }
        pt = next;
    }
}

/// Searches for a torsion basis with a seeded generator.
///
/// With `#E = l^v * m`, random points are multiplied by `m` and then by `l`
/// until they have exact order `l`. `Q` is accepted once it pairs
/// nontrivially with `P`. At most `64 * l` samples are drawn.
pub fn find_torsion_basis(ctx: &TorsionContext, seed: u64) -> Result<TorsionBasis> {
    let ell = ctx.ell;
    let mut cofactor = ctx.frob.order;
    while cofactor.is_multiple_of(ell) {
        cofactor /= ell;
    }
    let budget = 64 * ell as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Option<Point> = None;
    for _ in 0..budget {
        let Some(cand) = sample_order_ell(ctx, cofactor, &mut rng) else {
            continue;
        };
        match p {
            None => p = Some(cand),
            Some(p) => {
                if !weil_pairing(&ctx.curve, ell, &p, &cand)?.is_one() {
                    return Ok(TorsionBasis { ctx: *ctx, p, q: cand });
                }
            }
        }
    }
    Err(Error::SamplingExhausted(budget))
}

//! Miller's algorithm and the Weil pairing on `E[l]`.
//!
//! The exported convention is `e(A, B) = f_B(D_A) / f_A(D_B)`, where `f_X`
//! is the Miller function with divisor `l(X) - l(O)` and `D_X ~ (X) - (O)`.
//! This is the inverse of the textbook `f_A(D_B) / f_B(D_A)` ordering and is
//! the one under which `e_5((224,31), (173,194)) = 464` on
//! `y^2 = x^3 - 35x + 98` over `F_701`.

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Number of auxiliary offset points tried before falling back.
pub const MAX_OFFSETS: usize = 16;

/// An `l`-th root of unity in `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingValue {
    value: FieldElement,
}

impl PairingValue {
    pub fn value(&self) -> FieldElement {
        self.value
    }

    pub fn is_one(&self) -> bool {
        self.value.value() == 1
    }

    /// Multiplicative order, which divides `l`.
    pub fn order(&self, ell: u64) -> u64 {
        if self.is_one() {
            1
        } else {
            debug_assert_eq!(self.value.pow(ell).value(), 1);
            ell
        }
    }
}

/// Running quotient of line-function values.
struct Frac {
    num: FieldElement,
    den: FieldElement,
}

impl Frac {
    fn mul(&mut self, num: FieldElement, den: FieldElement) -> Result<()> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::DivisorCollision);
        }
        self.num = self.num * num;
        self.den = self.den * den;
        Ok(())
    }
}

/// Multiplies `acc` by `l_{T,U}(R) / v_{T+U}(R)` and returns `T + U`.
fn line_step(curve: &Curve, t: &Point, u: &Point, r: (FieldElement, FieldElement), acc: &mut Frac) -> Result<Point> {
    let (xr, yr) = r;
    let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (*t, *u) else {
        return Ok(curve.add_unchecked(t, u));
    };
    let one = curve.field().one();
    if x1 == x2 && (y1 + y2).is_zero() {
        acc.mul(xr - x1, one)?;
        return Ok(Point::Identity);
    }
    let lambda = if x1 == x2 {
        (curve.field().from_u64(3) * x1.square() + curve.a4()) * (y1 + y1).inv()?
    } else {
        (y2 - y1) * (x2 - x1).inv()?
    };
    let sum = curve.add_unchecked(t, u);
    let x3 = sum.x().expect("T != -U");
    acc.mul(yr - y1 - lambda * (xr - x1), xr - x3)?;
    Ok(sum)
}

fn miller_at(curve: &Curve, ell: u64, a: &Point, r: &Point) -> Result<Frac> {
    let Point::Affine { x: xr, y: yr } = *r else {
        return Err(Error::DivisorCollision);
    };
    let one = curve.field().one();
    let mut acc = Frac { num: one, den: one };
    let mut t = *a;
    let bits = 64 - ell.leading_zeros();
    for i in (0..bits - 1).rev() {
        acc.num = acc.num.square();
        acc.den = acc.den.square();
        t = line_step(curve, &t, &t, (xr, yr), &mut acc)?;
        if (ell >> i) & 1 == 1 {
            t = line_step(curve, &t, a, (xr, yr), &mut acc)?;
        }
    }
    debug_assert!(t.is_identity());
    Ok(acc)
}

fn check_torsion(curve: &Curve, ell: u64, a: &Point) -> Result<()> {
    curve.check(a)?;
    if !curve.mul_u128(ell as u128, a).is_identity() {
        return Err(Error::NotTorsion { ell });
    }
    Ok(())
}

/// Evaluates the Miller function `f_{l,A}` on the divisor `(R1) - (R2)`.
pub fn miller_eval(curve: &Curve, ell: u64, a: &Point, support: (&Point, &Point)) -> Result<FieldElement> {
    check_torsion(curve, ell, a)?;
    if a.is_identity() {
        return Ok(curve.field().one());
    }
    let f1 = miller_at(curve, ell, a, support.0)?;
    let f2 = miller_at(curve, ell, a, support.1)?;
    Ok(f1.num * f2.den * (f1.den * f2.num).inv()?)
}

/// Deterministic sequence of auxiliary points used to shift divisors.
fn offset_points(curve: &Curve) -> impl Iterator<Item = Point> + '_ {
    curve
        .field()
        .elements()
        .skip(1)
        .filter_map(move |x| curve.rhs(x).sqrt().map(|y| Point::affine(x, y)))
        .take(MAX_OFFSETS)
}

/// Textbook `f_A(D_B) / f_B(D_A)` with `D_B = (B+S) - (S)` and
/// `D_A = (A-S) - (-S)`.
fn weil_offset(curve: &Curve, ell: u64, a: &Point, b: &Point, s: &Point) -> Result<FieldElement> {
    let b_shift = curve.add_unchecked(b, s);
    let a_shift = curve.add_unchecked(a, &s.neg());
    let num = miller_eval(curve, ell, a, (&b_shift, s))?;
    let den = miller_eval(curve, ell, b, (&a_shift, &s.neg()))?;
    Ok(num * den.inv()?)
}

fn in_span(curve: &Curve, ell: u64, a: &Point, b: &Point) -> bool {
    let mut cur = Point::Identity;
    for _ in 0..ell {
        if cur == *b {
            return true;
        }
        cur = curve.add_unchecked(&cur, a);
    }
    false
}

/// Textbook `(-1)^l f_A(B) / f_B(A)` with normalized Miller functions.
/// Needs no auxiliary point; dependent arguments pair to 1.
fn weil_direct(curve: &Curve, ell: u64, a: &Point, b: &Point) -> Result<FieldElement> {
    let one = curve.field().one();
    if a.is_identity() || b.is_identity() || in_span(curve, ell, a, b) {
        return Ok(one);
    }
    let fa = miller_at(curve, ell, a, b)?;
    let fb = miller_at(curve, ell, b, a)?;
    let v = fa.num * fb.den * (fa.den * fb.num).inv()?;
    Ok(if ell % 2 == 1 { -v } else { v })
}

fn finish(value: FieldElement, ell: u64) -> PairingValue {
    // exported convention is the inverse of the textbook ordering
    let value = value.inv().expect("roots of unity are nonzero");
    debug_assert_eq!(value.pow(ell).value(), 1);
    PairingValue { value }
}

/// The Weil pairing `e_l(A, B)`, computed from offset divisors.
///
/// Tries up to [`MAX_OFFSETS`] auxiliary points. If every one of them
/// collides with the Miller line supports, which happens on tiny curves such
/// as `y^2 = x^3 + x` over `F_5` where every rational point is 2-torsion, the
/// direct normalized formula is used instead.
pub fn weil_pairing(curve: &Curve, ell: u64, a: &Point, b: &Point) -> Result<PairingValue> {
    check_torsion(curve, ell, a)?;
    check_torsion(curve, ell, b)?;
    if a.is_identity() || b.is_identity() {
        return Ok(PairingValue { value: curve.field().one() });
    }
    for s in offset_points(curve) {
        match weil_offset(curve, ell, a, b, &s) {
            Ok(v) => return Ok(finish(v, ell)),
            Err(Error::DivisorCollision) => continue,
            Err(e) => return Err(e),
        }
    }
    weil_pairing_direct(curve, ell, a, b)
}

/// The same pairing through the shift-free normalized formula.
pub fn weil_pairing_direct(curve: &Curve, ell: u64, a: &Point, b: &Point) -> Result<PairingValue> {
    check_torsion(curve, ell, a)?;
    check_torsion(curve, ell, b)?;
    Ok(finish(weil_direct(curve, ell, a, b)?, ell))
}

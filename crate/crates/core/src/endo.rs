//! Explicit endomorphisms as rational maps and their action on `E[l]`.
//!
//! An endomorphism sends `(x, y)` to `(X(x), y * Y(x))` where `X` and `Y`
//! are quotients of polynomials over `F_p`. Points where a denominator
//! vanishes form the kernel and map to the identity.

use std::fmt;

use crate::curve::{count_points, Curve, Point};
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::torsion::TorsionBasis;

/// Dense polynomial over `F_p`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<FieldElement>);

impl Poly {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        Poly(coeffs)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let zero = x.field().zero();
        self.0.iter().rev().fold(zero, |acc, c| acc * x + *c)
    }
}

/// Monic integer quadratic `X^2 - trace*X + norm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinPoly {
    pub trace: i64,
    pub norm: i64,
}

impl MinPoly {
    pub fn reduce(&self, ell: u64) -> CharPoly {
        let l = ell as i64;
        CharPoly {
            ell,
            trace: self.trace.rem_euclid(l) as u64,
            det: self.norm.rem_euclid(l) as u64,
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.trace * self.trace - 4 * self.norm
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MapKind {
    Rational {
        x_num: Poly,
        x_den: Poly,
        y_num: Poly,
        y_den: Poly,
    },
    Scalar(i64),
    /// The `p`-power map, trivial on `E(F_p)`.
    Frobenius,
}

/// An endomorphism with known minimal polynomial, optionally shifted by a
/// scalar: `phi + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalEndomorphism {
    curve: Curve,
    kind: MapKind,
    shift: i64,
    minpoly: MinPoly,
    label: String,
}

pub const SQRT_MINUS_ONE: &str = "sqrt_minus_one";
pub const ALPHA_701: &str = "alpha_701";
pub const FROBENIUS: &str = "frobenius";

/// The root of `X^2 - X + 2` in `F_701` used for `[alpha]`.
pub const ALPHA_701_ROOT: u64 = 386;

/// Labels that [`make_catalog_endo`] understands, `k` standing for any integer.
pub const CATALOG_LABELS: [&str; 4] = [SQRT_MINUS_ONE, ALPHA_701, FROBENIUS, "scalar(k)"];

fn incompatible(label: &str, reason: impl Into<String>) -> Error {
    Error::IncompatibleCurve {
        label: label.to_string(),
        reason: reason.into(),
    }
}

fn parse_scalar(label: &str) -> Option<i64> {
    label
        .strip_prefix("scalar(")?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

/// Builds one of the compiled-in endomorphisms for `curve`.
pub fn make_catalog_endo(label: &str, curve: &Curve) -> Result<RationalEndomorphism> {
    let f = curve.field();
    if let Some(k) = parse_scalar(label) {
        return Ok(RationalEndomorphism::scalar(curve, k));
    }
    match label {
        SQRT_MINUS_ONE => sqrt_minus_one(curve, f),
        ALPHA_701 => alpha_701(curve, f),
        FROBENIUS => {
            let frob = count_points(curve)?;
            Ok(RationalEndomorphism {
                curve: *curve,
                kind: MapKind::Frobenius,
                shift: 0,
                minpoly: MinPoly {
                    trace: frob.trace,
                    norm: frob.q as i64,
                },
                label: FROBENIUS.to_string(),
            })
        }
        _ => Err(Error::UnknownEndomorphism(label.to_string())),
    }
}

/// `[i] : (x, y) -> (-x, i*y)` on `y^2 = x^3 + a4*x`.
fn sqrt_minus_one(curve: &Curve, f: PrimeField) -> Result<RationalEndomorphism> {
    if !curve.a6().is_zero() {
        return Err(incompatible(SQRT_MINUS_ONE, "curve must have a6 = 0"));
    }
    if curve.p() % 4 != 1 {
        return Err(incompatible(SQRT_MINUS_ONE, "need p = 1 mod 4 for i in F_p"));
    }
    let i = (-f.one()).sqrt().expect("-1 is a square when p = 1 mod 4");
    Ok(RationalEndomorphism {
        curve: *curve,
        kind: MapKind::Rational {
            x_num: Poly::new(vec![f.zero(), -f.one()]),
            x_den: Poly::new(vec![f.one()]),
            y_num: Poly::new(vec![i]),
            y_den: Poly::new(vec![f.one()]),
        },
        shift: 0,
        minpoly: MinPoly { trace: 0, norm: 1 },
        label: SQRT_MINUS_ONE.to_string(),
    })
}

/// Multiplication by `alpha = (1 + sqrt(-7)) / 2` on `y^2 = x^3 - 35x + 98`:
///
/// ```text
/// X = alpha^-2 (x - c / (x + d)),   Y = alpha^-3 (1 + c / (x + d)^2)
/// c = 7 (1 - alpha)^4,              d = alpha^2 - 2
/// ```
fn alpha_701(curve: &Curve, f: PrimeField) -> Result<RationalEndomorphism> {
    let expected = Curve::from_ints(701, -35, 98).expect("valid curve");
    if *curve != expected {
        return Err(incompatible(
            ALPHA_701,
            "defined only on y^2 = x^3 - 35x + 98 over F_701",
        ));
    }
    let alpha = f.from_u64(ALPHA_701_ROOT);
    debug_assert!((alpha.square() - alpha + f.from_u64(2)).is_zero());
    let c = f.from_u64(7) * (f.one() - alpha).pow(4);
    let d = alpha.square() - f.from_u64(2);
    let a2 = alpha.square().inv()?;
    let a3 = alpha.pow(3).inv()?;
    // X = a2 * (x^2 + d x - c) / (x + d)
    let x_num = Poly::new(vec![-(a2 * c), a2 * d, a2]);
    let x_den = Poly::new(vec![d, f.one()]);
    // Y = a3 * ((x + d)^2 + c) / (x + d)^2
    let y_num = Poly::new(vec![a3 * (d.square() + c), a3 * (d + d), a3]);
    let y_den = Poly::new(vec![d.square(), d + d, f.one()]);
    Ok(RationalEndomorphism {
        curve: *curve,
        kind: MapKind::Rational { x_num, x_den, y_num, y_den },
        shift: 0,
        minpoly: MinPoly { trace: 1, norm: 2 },
        label: ALPHA_701.to_string(),
    })
}

impl RationalEndomorphism {
    /// Multiplication by `k`, minimal polynomial `(X - k)^2`.
    pub fn scalar(curve: &Curve, k: i64) -> Self {
        RationalEndomorphism {
            curve: *curve,
            kind: MapKind::Scalar(k),
            shift: 0,
            minpoly: MinPoly { trace: 2 * k, norm: k * k },
            label: format!("scalar({k})"),
        }
    }

    /// `self + k`. If `self` satisfies `X^2 - sX + n`, the sum satisfies
    /// `X^2 - (s + 2k)X + (n + sk + k^2)`.
    pub fn plus_scalar(&self, k: i64) -> Self {
        let MinPoly { trace: s, norm: n } = self.minpoly;
        RationalEndomorphism {
            curve: self.curve,
            kind: self.kind.clone(),
            shift: self.shift + k,
            minpoly: MinPoly {
                trace: s + 2 * k,
                norm: n + s * k + k * k,
            },
            label: format!("{}+{k}", self.label),
        }
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn minpoly(&self) -> MinPoly {
        self.minpoly
    }

    fn apply_base(&self, pt: &Point) -> Point {
        let Point::Affine { x, y } = *pt else {
            return Point::Identity;
        };
        match &self.kind {
            MapKind::Scalar(k) => {
                let base = if *k < 0 { pt.neg() } else { *pt };
                self.curve.mul_u128(k.unsigned_abs() as u128, &base)
            }
            MapKind::Frobenius => Point::affine(x.pow(self.curve.p()), y.pow(self.curve.p())),
            MapKind::Rational { x_num, x_den, y_num, y_den } => {
                let (xd, yd) = (x_den.eval(x), y_den.eval(x));
                if xd.is_zero() || yd.is_zero() {
                    return Point::Identity;
                }
                let nx = x_num.eval(x) * xd.inv().expect("nonzero");
                let ny = y * y_num.eval(x) * yd.inv().expect("nonzero");
                Point::affine(nx, ny)
            }
        }
    }

    /// Image of `pt`; the identity and kernel points map to the identity.
    pub fn eval(&self, pt: &Point) -> Result<Point> {
        self.curve.check(pt)?;
        let image = self.apply_base(pt);
        if !self.curve.contains(&image) {
            return Err(Error::ImageOffCurve { label: self.label.clone() });
        }
        let image = if self.shift == 0 {
            image
        } else {
            let base = if self.shift < 0 { pt.neg() } else { *pt };
            let extra = self.curve.mul_u128(self.shift.unsigned_abs() as u128, &base);
            self.curve.add_unchecked(&image, &extra)
        };
        Ok(image)
    }
}

/// Action of an endomorphism on `E[l]`; column `j` holds the coordinates of
/// the image of the `j`-th basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionMatrix {
    ell: u64,
    m: [[u64; 2]; 2],
}

impl TorsionMatrix {
    /// Entries given row by row; reduced mod `l`.
    pub fn new(ell: u64, rows: [[i64; 2]; 2]) -> Self {
        let r = |v: i64| v.rem_euclid(ell as i64) as u64;
        TorsionMatrix {
            ell,
            m: [[r(rows[0][0]), r(rows[0][1])], [r(rows[1][0]), r(rows[1][1])]],
        }
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn entries(&self) -> [[u64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> u64 {
        (self.m[0][0] + self.m[1][1]) % self.ell
    }

    pub fn det(&self) -> u64 {
        let l = self.ell;
        (self.m[0][0] * self.m[1][1] % l + l - self.m[0][1] * self.m[1][0] % l) % l
    }

    pub fn is_scalar(&self) -> bool {
        self.m[0][1] == 0 && self.m[1][0] == 0 && self.m[0][0] == self.m[1][1]
    }

    pub fn apply(&self, v: [u64; 2]) -> [u64; 2] {
        let l = self.ell;
        [
            (self.m[0][0] * v[0] + self.m[0][1] * v[1]) % l,
            (self.m[1][0] * v[0] + self.m[1][1] * v[1]) % l,
        ]
    }

    pub fn char_poly(&self) -> CharPoly {
        CharPoly {
            ell: self.ell,
            trace: self.trace(),
            det: self.det(),
        }
    }
}

/// `X^2 - trace*X + det` over `Z/l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub ell: u64,
    pub trace: u64,
    pub det: u64,
}

impl CharPoly {
    pub fn eval(&self, x: u64) -> u64 {
        let l = self.ell;
        (x * x % l + (l - self.trace) * x % l + self.det) % l
    }

    /// Distinct roots in `Z/l`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.ell).filter(|&x| self.eval(x) == 0).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.roots().is_empty()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = (self.ell - self.trace) % self.ell;
        write!(f, "X^2+{}X+{}", b, self.det)
    }
}

/// Matrix of `phi` on `E[l]` relative to `basis`.
pub fn endo_matrix(phi: &RationalEndomorphism, basis: &TorsionBasis) -> Result<TorsionMatrix> {
    if phi.curve() != basis.curve() {
        return Err(incompatible(phi.label(), "basis lives on a different curve"));
    }
    let (a, c) = basis.dlog2d(&phi.eval(&basis.p())?)?;
    let (b, d) = basis.dlog2d(&phi.eval(&basis.q())?)?;
    Ok(TorsionMatrix {
        ell: basis.ell(),
        m: [[a, b], [c, d]],
    })
}

pub fn char_poly_mod_ell(m: &TorsionMatrix) -> CharPoly {
    m.char_poly()
}

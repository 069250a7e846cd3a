//! Prime field arithmetic and a few elementary number-theoretic helpers.
//!
//! Moduli are capped below 2^62 so that every product fits in a `u128`.
//! Elements are always kept in canonical form `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const MODULUS_CAP: u64 = 1 << 62;

/// An odd prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_CAP {
            return Err(Error::ModulusTooLarge(p));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, p: self.p }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1, p: self.p }
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        FieldElement { value: v % self.p, p: self.p }
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.from_i128(v as i128)
    }

    pub fn from_i128(&self, v: i128) -> FieldElement {
        let value = v.rem_euclid(self.p as i128) as u64;
        FieldElement { value, p: self.p }
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.p).map(move |value| FieldElement { value, p: self.p })
    }
}

/// A residue modulo the prime of its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.p as i128, self.value as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.field().from_i128(s0))
    }

    /// Legendre symbol of `self` via Euler's criterion: 0, 1 or -1.
    pub fn legendre(&self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        if self.pow((self.p - 1) / 2).value == 1 {
            1
        } else {
            -1
        }
    }

    /// Square root by Tonelli-Shanks. Returns the smaller of the two roots.
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.p;
        let f = self.field();
        if self.value == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let root = if p % 4 == 3 {
            self.pow((p + 1) / 4)
        } else {
            // p - 1 = q * 2^s with q odd
            let s = (p - 1).trailing_zeros();
            let q = (p - 1) >> s;
            let z = (2..p)
                .map(|v| f.from_u64(v))
                .find(|v| v.legendre() == -1)
                .expect("non-residue exists for odd p");
            let mut m = s;
            let mut c = z.pow(q);
            let mut t = self.pow(q);
            let mut r = self.pow(q.div_ceil(2));
            while t.value != 1 {
                let mut i = 0;
                let mut t2 = t;
                while t2.value != 1 {
                    t2 = t2.square();
                    i += 1;
                }
                let b = c.pow(1 << (m - i - 1));
                m = i;
                c = b.square();
                t = t * c;
                r = r * b;
            }
            r
        };
        debug_assert_eq!(root.square(), *self);
        let other = -root;
        Some(if root.value <= other.value { root } else { other })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value + rhs.value;
        let value = if s >= self.p { s - self.p } else { s };
        Self { value, p: self.p }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.p - rhs.value
        };
        Self { value, p: self.p }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let value = ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64;
        Self { value, p: self.p }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let value = if self.value == 0 { 0 } else { self.p - self.value };
        Self { value, p: self.p }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Kronecker symbol `(d | n)`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    let mut a = d as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    // factor out powers of two from n using (a | 2)
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // now n is odd and positive; Jacobi symbol with sign-aware a
    a = a.rem_euclid(n);
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

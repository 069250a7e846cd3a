//! Deciding Diffie-Hellman triples in `<P>` with a distortion map.
//!
//! For `R = aP`, `S = bP`, `T = cP` the test `e(R, phi(S)) == e(P, phi(T))`
//! compares `e(P, phi(P))^(ab)` with `e(P, phi(P))^c`, which are equal
//! exactly when `c = ab mod l` as long as `e(P, phi(P)) != 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::Point;
use crate::endo::RationalEndomorphism;
use crate::error::{Error, Result};
use crate::pairing::weil_pairing;
use crate::torsion::TorsionBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DdhInstance {
    pub base: Point,
    pub r: Point,
    pub s: Point,
    pub t: Point,
    /// Hidden `(a, b, c)` with `R = aP`, `S = bP`, `T = cP`, when known.
    pub truth: Option<(u64, u64, u64)>,
}

impl DdhInstance {
    /// `(aP, bP, cP)` over the first basis vector.
    pub fn from_scalars(basis: &TorsionBasis, a: u64, b: u64, c: u64) -> Self {
        let ell = basis.ell();
        let (a, b, c) = (a % ell, b % ell, c % ell);
        DdhInstance {
            base: basis.p(),
            r: basis.combine(a, 0),
            s: basis.combine(b, 0),
            t: basis.combine(c, 0),
            truth: Some((a, b, c)),
        }
    }

    pub fn is_honest(&self, ell: u64) -> Option<bool> {
        self.truth.map(|(a, b, c)| (a * b) % ell == c % ell)
    }
}

fn check_membership(basis: &TorsionBasis, inst: &DdhInstance) -> Result<()> {
    let ell = basis.ell();
    let invalid = |what: &str| Error::InstanceInvalid(what.to_string());
    if inst.base.is_identity() {
        return Err(invalid("base point is the identity"));
    }
    let (a0, b0) = basis.dlog2d(&inst.base).map_err(|_| invalid("base is not l-torsion"))?;
    for (name, pt) in [("R", &inst.r), ("S", &inst.s), ("T", &inst.t)] {
        let (a, b) = basis
            .dlog2d(pt)
            .map_err(|_| invalid(&format!("{name} is not l-torsion")))?;
        if !(a0 * b % ell + ell - b0 * a % ell).is_multiple_of(ell) {
            return Err(invalid(&format!("{name} is not in <P>")));
        }
    }
    Ok(())
}

/// True iff the triple is a Diffie-Hellman triple for `inst.base`.
pub fn ddh_decide(basis: &TorsionBasis, phi: &RationalEndomorphism, inst: &DdhInstance) -> Result<bool> {
    let curve = basis.curve();
    let ell = basis.ell();
    check_membership(basis, inst)?;
    let base = inst.base;
    if weil_pairing(curve, ell, &base, &phi.eval(&base)?)?.is_one() {
        return Err(Error::NotADistortionMap);
    }
    let lhs = weil_pairing(curve, ell, &inst.r, &phi.eval(&inst.s)?)?;
    let rhs = weil_pairing(curve, ell, &base, &phi.eval(&inst.t)?)?;
    Ok(lhs == rhs)
}

/// A seeded instance: honest `(aP, bP, abP)` or dishonest `(aP, bP, cP)` with
/// `c != ab`; `a` and `b` are nonzero.
pub fn ddh_sample(basis: &TorsionBasis, honest: bool, seed: u64) -> DdhInstance {
    let ell = basis.ell();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.random_range(1..ell);
    let b = rng.random_range(1..ell);
    let ab = a * b % ell;
    let c = if honest {
        ab
    } else {
        // uniform over the l - 1 residues other than ab
        (ab + rng.random_range(1..ell)) % ell
    };
    DdhInstance::from_scalars(basis, a, b, c)
}

//! Which order-`l` subgroups of `E[l]` admit distortion maps.
//!
//! `classify_case` predicts the answer from the arithmetic of the
//! endomorphism order: its conductor `c = [O_K : O]` and the splitting of
//! `l` in `O_K`. `distortion_census` counts it directly from an action
//! matrix, and `verify_prediction` checks that the two agree.

use std::fmt;

use crate::curve::FrobeniusData;
use crate::endo::TorsionMatrix;
use crate::error::{Error, Result};
use crate::field::{is_prime, kronecker};
use crate::torsion::subgroup_lines;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `l` divides the conductor; every endomorphism acts as a scalar.
    NoDistortion,
    /// Every subgroup has a distortion map.
    Inert,
    /// All but two subgroups.
    Split,
    /// All but one subgroup.
    Ramified,
}

impl CaseTag {
    /// Number of distorted subgroups predicted for this case.
    pub fn expected_census(&self, ell: u64) -> u64 {
        match self {
            CaseTag::NoDistortion => 0,
            CaseTag::Inert => ell + 1,
            CaseTag::Split => ell - 1,
            CaseTag::Ramified => ell,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::NoDistortion => "NoDistortion",
            CaseTag::Inert => "Inert",
            CaseTag::Split => "Split",
            CaseTag::Ramified => "Ramified",
        };
        f.write_str(s)
    }
}

/// Writes `t^2 - 4q = f^2 * d_K` with `d_K` a negative fundamental
/// discriminant.
pub fn decompose_discriminant(t: i64, q: u64) -> Result<(i64, u64)> {
    let disc = (t as i128).pow(2) - 4 * q as i128;
    if disc >= 0 {
        return Err(Error::NotImaginary(disc));
    }
    let (square_root, squarefree) = split_square(disc.unsigned_abs());
    let d0 = -(squarefree as i128);
    let (d_k, f) = if d0.rem_euclid(4) == 1 {
        (d0, square_root)
    } else {
        debug_assert_eq!(square_root % 2, 0);
        (4 * d0, square_root / 2)
    };
    debug_assert_eq!((f as i128).pow(2) * d_k, disc);
    let d_k = i64::try_from(d_k)
        .map_err(|_| Error::InconsistentInput(format!("d_K = {d_k} exceeds the 64-bit range")))?;
    Ok((d_k, f as u64))
}

/// `n = s^2 * m` with `m` squarefree, by trial division.
fn split_square(mut n: u128) -> (u128, u128) {
    let mut s = 1u128;
    let mut m = 1u128;
    let mut d = 2u128;
    while d * d <= n {
        if n < (1 << 64) && is_prime(n as u64) {
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        s *= d.pow(e / 2);
        if e % 2 == 1 {
            m *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (s, m * n)
}

fn is_fundamental(d: i64) -> bool {
    let squarefree = |n: u64| (2..).take_while(|k: &u64| k * k <= n).all(|k| !n.is_multiple_of(k * k));
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Discriminant and conductor data for `Z[pi] ⊆ O ⊆ O_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderData {
    pub d_k: i64,
    /// `[O_K : Z[pi]]`.
    pub f_pi: u64,
    /// `[O_K : O]`, supplied by the caller.
    pub conductor: u64,
    /// `[O : Z[pi]] = f_pi / conductor`.
    pub index: u64,
}

impl OrderData {
    pub fn new(d_k: i64, f_pi: u64, conductor: u64) -> Result<Self> {
        if d_k >= 0 || !is_fundamental(d_k) {
            return Err(Error::InconsistentInput(format!(
                "{d_k} is not a negative fundamental discriminant"
            )));
        }
        if conductor == 0 || !f_pi.is_multiple_of(conductor) {
            return Err(Error::InconsistentInput(format!(
                "conductor {conductor} does not divide f_pi = {f_pi}"
            )));
        }
        Ok(Self {
            d_k,
            f_pi,
            conductor,
            index: f_pi / conductor,
        })
    }

    pub fn from_frobenius(frob: &FrobeniusData, conductor: u64) -> Result<Self> {
        let (d_k, f_pi) = decompose_discriminant(frob.trace, frob.q)?;
        Self::new(d_k, f_pi, conductor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// Lines `<v>` with `M v` outside `<v>`.
    pub distorted: Vec<[u64; 2]>,
    /// Eigenlines: subgroups the endomorphism stabilizes.
    pub eigen: Vec<[u64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub case: CaseTag,
    pub ell: u64,
    pub census: Option<Census>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn census_distorted(&self) -> Option<u64> {
        self.census.as_ref().map(|c| c.distorted.len() as u64)
    }

    pub fn eigen_subgroups(&self) -> &[[u64; 2]] {
        self.census.as_ref().map_or(&[], |c| &c.eigen)
    }
}

pub fn classify_case(od: &OrderData, ell: u64) -> Result<ClassificationReport> {
    if !is_prime(ell) {
        return Err(Error::InconsistentInput(format!("l = {ell} is not prime")));
    }
    let l = ell as i64;
    let mut notes = Vec::new();
    let divides_index = od.index.is_multiple_of(ell);
    let divides_conductor = od.conductor.is_multiple_of(ell);
    let divides_disc = od.d_k % l == 0;
    if !(divides_index || divides_conductor || divides_disc) {
        notes.push(format!(
            "l = {ell} divides none of [O:Z[pi]], [O_K:O], d_K; E[l] cannot be fully rational"
        ));
    }
    let case = if divides_conductor {
        CaseTag::NoDistortion
    } else {
        if divides_index {
            notes.push(format!("l = {ell} divides [O:Z[pi]] = {}", od.index));
        }
        match kronecker(od.d_k, ell) {
            -1 => CaseTag::Inert,
            1 => CaseTag::Split,
            _ => CaseTag::Ramified,
        }
    };
    Ok(ClassificationReport {
        case,
        ell,
        census: None,
        notes,
    })
}

/// Marks each order-`l` line distorted or stabilized under `m`.
pub fn distortion_census(m: &TorsionMatrix) -> ClassificationReport {
    let ell = m.ell();
    let mut census = Census {
        distorted: Vec::new(),
        eigen: Vec::new(),
    };
    for v in subgroup_lines(ell) {
        let w = m.apply(v);
        let cross = (v[0] * w[1] % ell + ell - v[1] * w[0] % ell) % ell;
        if cross == 0 {
            census.eigen.push(v);
        } else {
            census.distorted.push(v);
        }
    }
    let cp = m.char_poly();
    let case = if m.is_scalar() {
        CaseTag::NoDistortion
    } else {
        match cp.roots().len() {
            0 => CaseTag::Inert,
            2 => CaseTag::Split,
            _ => CaseTag::Ramified,
        }
    };
    ClassificationReport {
        case,
        ell,
        census: Some(census),
        notes: Vec::new(),
    }
}

/// Checks the predicted case against the census of `m`. In the
/// `NoDistortion` case `m` must be scalar.
pub fn verify_prediction(od: &OrderData, m: &TorsionMatrix, ell: u64) -> Result<ClassificationReport> {
    if m.ell() != ell {
        return Err(Error::InconsistentInput(format!(
            "matrix is mod {} but l = {ell}",
            m.ell()
        )));
    }
    let predicted = classify_case(od, ell)?;
    let observed = distortion_census(m);
    let count = observed.census_distorted().unwrap_or(0);
    let ok = match predicted.case {
        CaseTag::NoDistortion => m.is_scalar(),
        case => count == case.expected_census(ell),
    };
    if !ok {
        return Err(Error::PredicateViolated {
            predicted: format!("{} ({} distorted)", predicted.case, predicted.case.expected_census(ell)),
            observed: format!("{count} of {} distorted", ell + 1),
        });
    }
    Ok(ClassificationReport {
        census: observed.census,
        ..predicted
    })
}

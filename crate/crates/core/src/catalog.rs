//! Compiled-in curve catalog and its plain-text form.
//!
//! The text form is line based: `[name]` starts an entry, `key=value` lines
//! fill it, `#` starts a comment. Coefficients written as `n/d` make a
//! rational curve that is reduced modulo `p` on use.

use std::fmt::Write as _;

use crate::classify::OrderData;
use crate::curve::{count_points, reduce_rational_curve, Curve, FrobeniusData, Point};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSource {
    Prime { p: u64, a4: i64, a6: i64 },
    /// `y^2 = x^3 + (a4.0/a4.1) x + (a6.0/a6.1)` over `Q`, with a default
    /// reduction prime.
    Rational {
        a4: (i64, i64),
        a6: (i64, i64),
        p: Option<u64>,
    },
}

/// A known torsion basis `(P, Q)` for `E[ell]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownBasis {
    pub ell: u64,
    pub p: (i64, i64),
    pub q: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveCatalogEntry {
    pub name: String,
    pub source: CurveSource,
    pub endos: Vec<String>,
    /// `[O_K : O]` for the endomorphism ring.
    pub conductor: u64,
    pub d_k: Option<i64>,
    pub bases: Vec<KnownBasis>,
    pub notes: Vec<String>,
}

/// A catalog entry reduced to a concrete curve and validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedCurve {
    pub curve: Curve,
    pub frob: FrobeniusData,
    pub order: OrderData,
}

impl CurveCatalogEntry {
    /// Builds the curve over `F_p`; `p` overrides the reduction prime of a
    /// rational entry and must match the modulus of a prime-field entry.
    pub fn curve(&self, p: Option<u64>) -> Result<Curve> {
        match self.source {
            CurveSource::Prime { p: own, a4, a6 } => {
                if p.is_some_and(|p| p != own) {
                    return Err(Error::Catalog(format!(
                        "{} is defined over F_{own} only",
                        self.name
                    )));
                }
                Curve::from_ints(own, a4, a6)
            }
            CurveSource::Rational { a4, a6, p: default } => {
                let p = p.or(default).ok_or_else(|| {
                    Error::Catalog(format!("{} needs a reduction prime", self.name))
                })?;
                reduce_rational_curve(a4.0, a4.1, a6.0, a6.1, p)
            }
        }
    }

    /// Nonsingular, ordinary and with a conductor dividing `f_pi`.
    pub fn resolve(&self, p: Option<u64>) -> Result<ResolvedCurve> {
        let curve = self.curve(p)?;
        let frob = count_points(&curve)?;
        let order = OrderData::from_frobenius(&frob, self.conductor)?;
        if let Some(d) = self.d_k {
            if d != order.d_k {
                return Err(Error::Catalog(format!(
                    "{}: stated d_K = {d} but the point count gives {}",
                    self.name, order.d_k
                )));
            }
        }
        Ok(ResolvedCurve { curve, frob, order })
    }

    pub fn known_basis(&self, curve: &Curve, ell: u64) -> Result<Option<(Point, Point)>> {
        self.bases
            .iter()
            .find(|b| b.ell == ell)
            .map(|b| Ok((curve.point(b.p.0, b.p.1)?, curve.point(b.q.0, b.q.1)?)))
            .transpose()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CurveCatalogEntry>,
}

fn prime_entry(name: &str, p: u64, a4: i64, a6: i64, endos: &[&str], conductor: u64, d_k: i64) -> CurveCatalogEntry {
    CurveCatalogEntry {
        name: name.to_string(),
        source: CurveSource::Prime { p, a4, a6 },
        endos: endos.iter().map(|s| s.to_string()).collect(),
        conductor,
        d_k: Some(d_k),
        bases: Vec::new(),
        notes: Vec::new(),
    }
}

impl Catalog {
    pub fn builtin() -> Self {
        let mut entries = Vec::new();
        for p in [5, 13, 17, 29] {
            let mut e = prime_entry(&format!("ex1-{p}"), p, 1, 0, &["sqrt_minus_one"], 1, -4);
            e.notes.push("End = Z[i]".into());
            entries.push(e);
        }
        entries.push(CurveCatalogEntry {
            name: "ex1-rational".into(),
            source: CurveSource::Rational { a4: (1, 1), a6: (0, 1), p: Some(13) },
            endos: vec!["sqrt_minus_one".into()],
            conductor: 1,
            d_k: Some(-4),
            bases: Vec::new(),
            notes: vec!["good reduction at every odd prime; sqrt_minus_one needs p = 1 mod 4".into()],
        });

        let mut ex2 = prime_entry("ex2-f701", 701, -35, 98, &["alpha_701"], 1, -7);
        ex2.bases = vec![
            KnownBasis { ell: 2, p: (319, 0), q: (389, 0) },
            KnownBasis { ell: 5, p: (224, 31), q: (573, 450) },
        ];
        ex2.notes = vec![
            "End = Z[(1+sqrt(-7))/2], the maximal order".into(),
            "#E = 700 gives t = 2 and t^2-4q = 20^2*(-7), so [End:Z[pi]] = 20".into(),
        ];
        entries.push(ex2);

        entries.push(CurveCatalogEntry {
            name: "ex4-rational".into(),
            source: CurveSource::Rational { a4: (-3375, 121), a6: (6750, 121), p: Some(13) },
            endos: Vec::new(),
            conductor: 2,
            d_k: Some(-3),
            bases: Vec::new(),
            notes: vec!["CM by the order of conductor 2 in Q(sqrt(-3)); conductor of E is 108900".into()],
        });
        let mut ex4 = prime_entry("ex4-13", 13, 11, 4, &[], 2, -3);
        ex4.notes.push("reduction of ex4-rational at 13".into());
        entries.push(ex4);
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CurveCatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CurveCatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Adds entries, replacing any with the same name.
    pub fn merge(&mut self, other: Catalog) {
        for e in other.entries {
            match self.entries.iter_mut().find(|x| x.name == e.name) {
                Some(slot) => *slot = e,
                None => self.entries.push(e),
            }
        }
    }

    pub fn export(&self) -> String {
        let mut out = String::from("# distortion curve catalog\n");
        for e in &self.entries {
            let _ = writeln!(out, "\n[{}]", e.name);
            match &e.source {
                CurveSource::Prime { p, a4, a6 } => {
                    let _ = writeln!(out, "p={p}\na4={a4}\na6={a6}");
                }
                CurveSource::Rational { a4, a6, p } => {
                    if let Some(p) = p {
                        let _ = writeln!(out, "p={p}");
                    }
                    let _ = writeln!(out, "a4={}/{}\na6={}/{}", a4.0, a4.1, a6.0, a6.1);
                }
            }
            if !e.endos.is_empty() {
                let _ = writeln!(out, "endos={}", e.endos.join(","));
            }
            let _ = writeln!(out, "conductor={}", e.conductor);
            if let Some(d) = e.d_k {
                let _ = writeln!(out, "d_K={d}");
            }
            for b in &e.bases {
                let _ = writeln!(out, "basis.{}={},{};{},{}", b.ell, b.p.0, b.p.1, b.q.0, b.q.1);
            }
            for n in &e.notes {
                let _ = writeln!(out, "note={n}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut current: Option<(String, Vec<(String, String)>)> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Catalog(format!("line {}: {msg}", lineno + 1));
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if let Some((n, kv)) = current.take() {
                    entries.push(build_entry(n, kv)?);
                }
                current = Some((name.trim().to_string(), Vec::new()));
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let (_, kv) = current.as_mut().ok_or_else(|| err("key outside of an [entry]"))?;
            kv.push((k.trim().to_string(), v.trim().to_string()));
        }
        if let Some((n, kv)) = current.take() {
            entries.push(build_entry(n, kv)?);
        }
        Ok(Catalog { entries })
    }
}

fn parse_num<T: std::str::FromStr>(name: &str, key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Catalog(format!("[{name}] {key}: cannot parse {v:?}")))
}

fn parse_frac(name: &str, key: &str, v: &str) -> Result<((i64, i64), bool)> {
    match v.split_once('/') {
        Some((n, d)) => Ok(((parse_num(name, key, n)?, parse_num(name, key, d)?), true)),
        None => Ok(((parse_num(name, key, v)?, 1), false)),
    }
}

fn parse_pair(name: &str, key: &str, v: &str) -> Result<(i64, i64)> {
    let (x, y) = v
        .split_once(',')
        .ok_or_else(|| Error::Catalog(format!("[{name}] {key}: expected x,y")))?;
    Ok((parse_num(name, key, x)?, parse_num(name, key, y)?))
}

fn build_entry(name: String, kv: Vec<(String, String)>) -> Result<CurveCatalogEntry> {
    let mut p = None;
    let mut a4 = None;
    let mut a6 = None;
    let mut rational = false;
    let mut entry = CurveCatalogEntry {
        name: name.clone(),
        source: CurveSource::Prime { p: 0, a4: 0, a6: 0 },
        endos: Vec::new(),
        conductor: 1,
        d_k: None,
        bases: Vec::new(),
        notes: Vec::new(),
    };
    for (k, v) in &kv {
        match k.as_str() {
            "p" => p = Some(parse_num::<u64>(&name, k, v)?),
            "a4" | "a6" => {
                let (frac, is_rat) = parse_frac(&name, k, v)?;
                rational |= is_rat;
                if k == "a4" { a4 = Some(frac) } else { a6 = Some(frac) }
            }
            "endos" => entry.endos = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            "conductor" => entry.conductor = parse_num(&name, k, v)?,
            "d_K" => entry.d_k = Some(parse_num(&name, k, v)?),
            "note" => entry.notes.push(v.clone()),
            _ => {
                let ell = k
                    .strip_prefix("basis.")
                    .ok_or_else(|| Error::Catalog(format!("[{name}] unknown key {k:?}")))?;
                let ell = parse_num(&name, k, ell)?;
                let (ps, qs) = v
                    .split_once(';')
                    .ok_or_else(|| Error::Catalog(format!("[{name}] {k}: expected x,y;x,y")))?;
                entry.bases.push(KnownBasis {
                    ell,
                    p: parse_pair(&name, k, ps)?,
                    q: parse_pair(&name, k, qs)?,
                });
            }
        }
    }
    let missing = |what: &str| Error::Catalog(format!("[{name}] missing {what}"));
    let a4 = a4.ok_or_else(|| missing("a4"))?;
    let a6 = a6.ok_or_else(|| missing("a6"))?;
    entry.source = if rational {
        CurveSource::Rational { a4, a6, p }
    } else {
        CurveSource::Prime {
            p: p.ok_or_else(|| missing("p"))?,
            a4: a4.0,
            a6: a6.0,
        }
    };
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builtin_entries_validate() {
        for e in Catalog::builtin().entries() {
            let r = e.resolve(None).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert_eq!(r.order.f_pi % e.conductor, 0);
        }
    }

    #[test]
    fn ex2_data() {
        let cat = Catalog::builtin();
        let r = cat.get("ex2-f701").unwrap().resolve(None).unwrap();
        assert_eq!((r.frob.trace, r.order.d_k, r.order.f_pi), (2, -7, 20));
    }

    #[test]
    fn rational_entry_reduction() {
        let cat = Catalog::builtin();
        let e = cat.get("ex4-rational").unwrap();
        assert_eq!(e.curve(None).unwrap(), cat.get("ex4-13").unwrap().curve(None).unwrap());
        assert!(matches!(e.curve(Some(11)), Err(Error::BadReduction { p: 11, .. })));
        assert!(matches!(cat.get("ex2-f701").unwrap().curve(Some(13)), Err(Error::Catalog(_))));
    }

    #[test]
    fn builtin_export_round_trips() {
        let cat = Catalog::builtin();
        assert_eq!(Catalog::parse(&cat.export()).unwrap(), cat);
    }

    #[test]
    fn parse_errors() {
        assert!(Catalog::parse("p=5").is_err());
        assert!(Catalog::parse("[x]\np=5\na4=1").is_err());
        assert!(Catalog::parse("[x]\np=5\na4=1\na6=0\nfoo=1").is_err());
        assert!(Catalog::parse("[x]\np=five\na4=1\na6=0").is_err());
        let c = Catalog::parse("# hi\n[x]\np=7 \n a4 = -1\na6=3 # not a comment here?\n").is_err();
        assert!(c);
    }

    #[test]
    fn merge_replaces_by_name() {
        let mut cat = Catalog::builtin();
        let n = cat.entries().len();
        cat.merge(Catalog::parse("[ex2-f701]\np=701\na4=-35\na6=99\n[mine]\np=101\na4=1\na6=3").unwrap());
        assert_eq!(cat.entries().len(), n + 1);
        assert_eq!(cat.get("ex2-f701").unwrap().source, CurveSource::Prime { p: 701, a4: -35, a6: 99 });
    }

    fn arb_entry() -> impl Strategy<Value = CurveCatalogEntry> {
        let source = prop_oneof![
            (3u64..1_000_000, -1000i64..1000, -1000i64..1000).prop_map(|(p, a4, a6)| CurveSource::Prime { p, a4, a6 }),
            (-1000i64..1000, 1i64..500, -1000i64..1000, 1i64..500, proptest::option::of(3u64..1000))
                .prop_map(|(n4, d4, n6, d6, p)| CurveSource::Rational { a4: (n4, d4), a6: (n6, d6), p }),
        ];
        (
            "[a-z][a-z0-9-]{0,12}",
            source,
            proptest::collection::vec("[a-z_]{1,8}", 0..3),
            1u64..50,
            proptest::option::of(-200i64..-2),
            proptest::collection::vec((2u64..20, any::<(i16, i16, i16, i16)>()), 0..3),
            proptest::collection::vec("[a-zA-Z0-9 ()=+-]{1,20}", 0..2),
        )
            .prop_map(|(name, source, endos, conductor, d_k, bases, notes)| CurveCatalogEntry {
                name,
                source,
                endos,
                conductor,
                d_k,
                bases: bases
                    .into_iter()
                    .map(|(ell, (a, b, c, d))| KnownBasis { ell, p: (a as i64, b as i64), q: (c as i64, d as i64) })
                    .collect(),
                notes: notes.into_iter().map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect(),
            })
    }

    proptest! {
        #[test]
        fn export_parse_round_trip(entries in proptest::collection::vec(arb_entry(), 0..4)) {
            let cat = Catalog { entries };
            prop_assert_eq!(Catalog::parse(&cat.export()).unwrap(), cat);
        }
    }
}

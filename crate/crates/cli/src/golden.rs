//! Golden checks reproducing the worked examples, one row per assertion.

use distortion_core::catalog::Catalog;
use distortion_core::classify::{classify_case, distortion_census, verify_prediction, CaseTag, OrderData};
use distortion_core::ddh::{ddh_decide, DdhInstance};
use distortion_core::endo::{endo_matrix, make_catalog_endo, TorsionMatrix, ALPHA_701, FROBENIUS, SQRT_MINUS_ONE};
use distortion_core::error::Error;
use distortion_core::pairing::weil_pairing;
use distortion_core::torsion::find_torsion_basis;
use distortion_core::{Curve, Point, Result, TorsionBasis, TorsionContext};

pub struct Row {
    pub id: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn row(id: &'static str, check: impl FnOnce() -> Result<(bool, String)>) -> Row {
    match check() {
        Ok((pass, detail)) => Row { id, pass, detail },
        Err(e) => Row { id, pass: false, detail: format!("error: {e}") },
    }
}

fn entry_basis(cat: &Catalog, name: &str, ell: u64) -> Result<(TorsionBasis, OrderData)> {
    let entry = cat.get(name).ok_or_else(|| Error::Catalog(format!("no entry {name}")))?;
    let r = entry.resolve(None)?;
    let ctx = TorsionContext::new(r.curve, r.frob, ell)?;
    let basis = match entry.known_basis(&r.curve, ell)? {
        Some((p, q)) => TorsionBasis::new(ctx, p, q)?,
        None => find_torsion_basis(&ctx, distortion_core::torsion::DEFAULT_SEED)?,
    };
    Ok((basis, r.order))
}

fn pt(c: &Curve, x: i64, y: i64) -> Result<Point> {
    c.point(x, y)
}

/// Runs every golden check against `cat`.
pub fn run(cat: &Catalog) -> Vec<Row> {
    let mut rows = Vec::new();

    rows.push(row("ex2.alpha_images", || {
        let (b, _) = entry_basis(cat, "ex2-f701", 5)?;
        let c = *b.curve();
        let a = make_catalog_endo(ALPHA_701, &c)?;
        let (ip, iq) = (a.eval(&b.p())?, a.eval(&b.q())?);
        Ok((ip == pt(&c, 173, 194)? && iq == pt(&c, 463, 495)?, format!("[a]P={ip} [a]Q={iq}")))
    }));
    rows.push(row("ex2.pairing_P", || {
        let (b, _) = entry_basis(cat, "ex2-f701", 5)?;
        let a = make_catalog_endo(ALPHA_701, b.curve())?;
        let e = weil_pairing(b.curve(), 5, &b.p(), &a.eval(&b.p())?)?.value().value();
        Ok((e == 464, format!("e(P,[a]P)={e} expected=464")))
    }));
    rows.push(row("ex2.pairing_Q", || {
        let (b, _) = entry_basis(cat, "ex2-f701", 5)?;
        let a = make_catalog_endo(ALPHA_701, b.curve())?;
        let e = weil_pairing(b.curve(), 5, &b.q(), &a.eval(&b.q())?)?.value().value();
        Ok((e == 89, format!("e(Q,[a]Q)={e} expected=89")))
    }));
    rows.push(row("ex2.matrix", || {
        let (b, _) = entry_basis(cat, "ex2-f701", 5)?;
        let m = endo_matrix(&make_catalog_endo(ALPHA_701, b.curve())?, &b)?;
        let cp = m.char_poly();
        let ok = m.trace() == 1 && m.det() == 2 && cp.is_irreducible() && m == TorsionMatrix::new(5, [[0, -1], [2, 1]]);
        Ok((ok, format!("tr={} det={} charpoly={cp}", m.trace(), m.det())))
    }));
    rows.push(row("ex3.split", || {
        let (b, od) = entry_basis(cat, "ex2-f701", 2)?;
        let c = *b.curve();
        let a = make_catalog_endo(ALPHA_701, &c)?;
        let images = a.eval(&b.p())? == Point::Identity && a.eval(&b.q())? == b.q() && b.p() == pt(&c, 319, 0)?;
        let census = distortion_census(&endo_matrix(&a, &b)?).census_distorted().unwrap_or(0);
        let case = classify_case(&od, 2)?.case;
        Ok((images && census == 1 && case == CaseTag::Split, format!("census={census}/3 case={case}")))
    }));
    for (id, name) in [("ex1.p5", "ex1-5"), ("ex1.p13", "ex1-13"), ("ex1.p17", "ex1-17"), ("ex1.p29", "ex1-29")] {
        rows.push(row(id, || {
            let (b, od) = entry_basis(cat, name, 2)?;
            let c = *b.curve();
            let i = make_catalog_endo(SQRT_MINUS_ONE, &c)?;
            let origin = pt(&c, 0, 0)?;
            let others: Vec<Point> = b.enumerate_subgroups().into_iter().filter(|g| *g != origin).collect();
            let swaps = others.len() == 2 && i.eval(&others[0])? == others[1] && i.eval(&others[1])? == others[0];
            let fixes = i.eval(&origin)? == origin;
            let census = distortion_census(&endo_matrix(&i, &b)?).census_distorted().unwrap_or(0);
            let case = classify_case(&od, 2)?.case;
            Ok((fixes && swaps && census == 2 && case == CaseTag::Ramified, format!("census={census}/3 case={case}")))
        }));
    }
    rows.push(row("ex4.no_distortion", || {
        let e = cat.get("ex4-rational").ok_or_else(|| Error::Catalog("no entry ex4-rational".into()))?;
        let c = e.curve(None)?;
        let roots: Vec<u64> = c.field().elements().filter(|x| c.rhs(*x).is_zero()).map(|x| x.value()).collect();
        let r = e.resolve(None)?;
        let case = classify_case(&r.order, 2)?.case;
        let bad = matches!(e.curve(Some(11)), Err(Error::BadReduction { .. }));
        let ok = (c.a4().value(), c.a6().value()) == (11, 4) && roots == [6, 9, 11] && case == CaseTag::NoDistortion && bad;
        Ok((ok, format!("a4={} a6={} roots={roots:?} case={case} p11_bad={bad}", c.a4(), c.a6())))
    }));
    rows.push(row("ddh.exhaustive", || {
        let (b, _) = entry_basis(cat, "ex2-f701", 5)?;
        let phi = make_catalog_endo(ALPHA_701, b.curve())?;
        let mut agree = 0;
        for n in 0..125u64 {
            let (x, y, z) = (n / 25, (n / 5) % 5, n % 5);
            if ddh_decide(&b, &phi, &DdhInstance::from_scalars(&b, x, y, z))? == (x * y % 5 == z) {
                agree += 1;
            }
        }
        Ok((agree == 125, format!("agree={agree}/125")))
    }));
    let configs: [(&'static str, &str, u64, &str); 4] = [
        ("predict.inert", "ex2-f701", 5, ALPHA_701),
        ("predict.split", "ex2-f701", 2, ALPHA_701),
        ("predict.ramified", "ex1-13", 2, SQRT_MINUS_ONE),
        ("predict.none", "ex4-13", 2, FROBENIUS),
    ];
    for (id, name, ell, phi) in configs {
        rows.push(row(id, || {
            let (b, od) = entry_basis(cat, name, ell)?;
            let m = endo_matrix(&make_catalog_endo(phi, b.curve())?, &b)?;
            let r = verify_prediction(&od, &m, ell)?;
            Ok((true, format!("case={} census={}", r.case, r.census_distorted().unwrap_or(0))))
        }));
    }
    rows
}

pub fn render(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {:<20} {}\n", r.id, r.detail));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    out.push_str(&format!("passed={passed}/{}\n", rows.len()));
    out
}

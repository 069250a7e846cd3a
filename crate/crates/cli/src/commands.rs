//! Subcommands. Each returns its stdout text and an exit status:
//! 0 for success, 1 for a negative decision, 2 for invalid input.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use distortion_core::catalog::{Catalog, CurveCatalogEntry};
use distortion_core::classify::{classify_case, distortion_census, verify_prediction, CaseTag, OrderData};
use distortion_core::ddh::{ddh_decide, ddh_sample, DdhInstance};
use distortion_core::endo::{endo_matrix, make_catalog_endo, TorsionMatrix};
use distortion_core::field::kronecker;
use distortion_core::pairing::weil_pairing;
use distortion_core::torsion::{find_torsion_basis, DEFAULT_SEED};
use distortion_core::curve::count_points;
use distortion_core::{Curve, Error, FrobeniusData, Point, Result, TorsionBasis, TorsionContext};

use crate::golden;

#[derive(Debug, Parser)]
#[command(name = "distortion", version, about = "Distortion maps on curves with rational l-torsion")]
pub struct Cli {
    /// Extra catalog file; entries replace built-ins of the same name.
    #[arg(long, global = true)]
    pub catalog: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Catalog entry name.
    #[arg(long)]
    pub name: Option<String>,
    /// Field prime; also the reduction prime for rational catalog entries.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a4: Option<i64>,
    #[arg(long, alias = "b", allow_negative_numbers = true)]
    pub a6: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group order, trace and discriminant data.
    CurveInfo(CurveArgs),
    /// Weil pairing e_l(A, B).
    Pairing {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
    },
    /// Image of a point under a catalog endomorphism.
    EndoApply {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        phi: String,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
    },
    /// Action matrix of an endomorphism on E[l].
    EndoMatrix {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Predicted distortion case from the endomorphism order.
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        ell: u64,
        /// [O_K : O]; defaults to the catalog value.
        #[arg(long)]
        conductor: Option<u64>,
    },
    /// Per-subgroup distortion census for an endomorphism.
    Census {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        conductor: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide a DDH triple (aP, bP, cP) with a distortion map.
    Ddh {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        ell: u64,
        /// Scalars a,b,c; without it an instance is sampled from --seed.
        #[arg(long, allow_hyphen_values = true)]
        triple: Option<String>,
        /// Sample a dishonest instance instead of an honest one.
        #[arg(long)]
        dishonest: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Reproduce every worked example as a PASS/FAIL table.
    PaperExamples,
    /// Catalog utilities.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Print the catalog in its text form.
    Export,
}

pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    fn decided(stdout: String, positive: bool) -> Self {
        Outcome { stdout, code: if positive { 0 } else { 1 } }
    }
}

struct Resolved {
    curve: Curve,
    frob: FrobeniusData,
    entry: Option<CurveCatalogEntry>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

fn resolve(cat: &Catalog, args: &CurveArgs) -> Result<Resolved> {
    let (curve, entry) = match &args.name {
        Some(name) => {
            if args.a4.is_some() || args.a6.is_some() {
                return Err(invalid("--a4/--a6 cannot be combined with --name"));
            }
            let entry = cat.get(name).ok_or_else(|| invalid(format!("unknown catalog entry {name:?}")))?;
            (entry.curve(args.p)?, Some(entry.clone()))
        }
        None => match (args.p, args.a4, args.a6) {
            (Some(p), Some(a4), Some(a6)) => (Curve::from_ints(p, a4, a6)?, None),
            _ => return Err(invalid("give --name or all of --p, --a4, --a6")),
        },
    };
    let frob = count_points(&curve)?;
    Ok(Resolved { curve, frob, entry })
}

fn parse_point(curve: &Curve, s: &str) -> Result<Point> {
    if s.trim() == "O" {
        return Ok(Point::Identity);
    }
    let (x, y) = s.split_once(',').ok_or_else(|| invalid(format!("point {s:?} is not x,y or O")))?;
    let num = |v: &str| v.trim().parse::<i64>().map_err(|_| invalid(format!("bad coordinate {v:?}")));
    curve.point(num(x)?, num(y)?)
}

fn basis_for(r: &Resolved, ell: u64, seed: u64) -> Result<TorsionBasis> {
    let ctx = TorsionContext::new(r.curve, r.frob, ell)?;
    let known = match &r.entry {
        Some(e) => e.known_basis(&r.curve, ell)?,
        None => None,
    };
    match known {
        Some((p, q)) => TorsionBasis::new(ctx, p, q),
        None => find_torsion_basis(&ctx, seed),
    }
}

fn order_data(r: &Resolved, conductor: Option<u64>) -> Result<Option<OrderData>> {
    let c = conductor.or(r.entry.as_ref().map(|e| e.conductor));
    c.map(|c| OrderData::from_frobenius(&r.frob, c)).transpose()
}

fn write_matrix(out: &mut String, m: &TorsionMatrix) {
    let e = m.entries();
    let _ = writeln!(out, "matrix={},{};{},{}", e[0][0], e[0][1], e[1][0], e[1][1]);
    let _ = writeln!(out, "trace={}\ndet={}", m.trace(), m.det());
    let cp = m.char_poly();
    let _ = writeln!(out, "charpoly={cp}");
    if cp.is_irreducible() {
        let _ = writeln!(out, "roots=none");
    } else {
        let roots: Vec<String> = cp.roots().iter().map(u64::to_string).collect();
        let _ = writeln!(out, "roots={}", roots.join(","));
    }
}

fn curve_info(cat: &Catalog, args: &CurveArgs) -> Result<Outcome> {
    let r = resolve(cat, args)?;
    let od = OrderData::from_frobenius(&r.frob, 1)?;
    let mut out = String::new();
    let _ = writeln!(out, "p={}\na4={}\na6={}", r.curve.p(), r.curve.a4(), r.curve.a6());
    let _ = writeln!(out, "order={}\nt={}", r.frob.order, r.frob.trace);
    let _ = writeln!(out, "d_K={}\nf_pi={}\nordinary=true", od.d_k, od.f_pi);
    Ok(Outcome::ok(out))
}

fn dispatch(cat: &Catalog, cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::CurveInfo(args) => curve_info(cat, args),
        Command::Pairing { curve, ell, a, b } => {
            let r = resolve(cat, curve)?;
            let (pa, pb) = (parse_point(&r.curve, a)?, parse_point(&r.curve, b)?);
            let e = weil_pairing(&r.curve, *ell, &pa, &pb)?;
            Ok(Outcome::ok(format!("ell={ell}\nA={pa}\nB={pb}\ne={}\n", e.value())))
        }
        Command::EndoApply { curve, phi, a } => {
            let r = resolve(cat, curve)?;
            let endo = make_catalog_endo(phi, &r.curve)?;
            let pa = parse_point(&r.curve, a)?;
            Ok(Outcome::ok(format!("phi={phi}\nA={pa}\nimage={}\n", endo.eval(&pa)?)))
        }
        Command::EndoMatrix { curve, phi, ell, seed } => {
            let r = resolve(cat, curve)?;
            let endo = make_catalog_endo(phi, &r.curve)?;
            let b = basis_for(&r, *ell, *seed)?;
            let m = endo_matrix(&endo, &b)?;
            let mut out = format!("phi={phi}\nell={ell}\nP={}\nQ={}\n", b.p(), b.q());
            write_matrix(&mut out, &m);
            let matches = m.char_poly() == endo.minpoly().reduce(*ell);
            let _ = writeln!(out, "minpoly_matches={matches}");
            Ok(Outcome::decided(out, matches))
        }
        Command::Classify { curve, ell, conductor } => {
            let r = resolve(cat, curve)?;
            let od = order_data(&r, *conductor)?.ok_or_else(|| invalid("--conductor is required for curves outside the catalog"))?;
            let rep = classify_case(&od, *ell)?;
            let mut out = format!(
                "ell={ell}\nd_K={}\nf_pi={}\nconductor={}\nindex={}\nkronecker={}\ncase={}\nexpected_distorted={}\n",
                od.d_k,
                od.f_pi,
                od.conductor,
                od.index,
                kronecker(od.d_k, *ell),
                rep.case,
                rep.case.expected_census(*ell)
            );
            for n in &rep.notes {
                let _ = writeln!(out, "note={n}");
            }
            Ok(Outcome::decided(out, rep.case != CaseTag::NoDistortion))
        }
        Command::Census { curve, phi, ell, conductor, seed } => {
            let r = resolve(cat, curve)?;
            let endo = make_catalog_endo(phi, &r.curve)?;
            let b = basis_for(&r, *ell, *seed)?;
            let m = endo_matrix(&endo, &b)?;
            let census = distortion_census(&m);
            let mut out = format!("phi={phi}\nell={ell}\nP={}\nQ={}\n", b.p(), b.q());
            write_matrix(&mut out, &m);
            let c = census.census.as_ref().expect("census computed");
            for v in distortion_core::torsion::subgroup_lines(*ell) {
                let state = if c.eigen.contains(&v) { "eigen" } else { "distorted" };
                let _ = writeln!(out, "subgroup={},{} gen={} {state}", v[0], v[1], b.combine(v[0], v[1]));
            }
            let count = census.census_distorted().unwrap_or(0);
            let _ = writeln!(out, "distorted={count}/{}\nmatrix_case={}", ell + 1, census.case);
            let mut positive = count > 0;
            if let Some(od) = order_data(&r, *conductor)? {
                let verdict = match verify_prediction(&od, &m, *ell) {
                    Ok(rep) => format!("match ({})", rep.case),
                    Err(Error::PredicateViolated { predicted, .. }) => {
                        positive = false;
                        format!("mismatch (predicted {predicted})")
                    }
                    Err(e) => return Err(e),
                };
                let _ = writeln!(out, "prediction={verdict}");
            }
            Ok(Outcome::decided(out, positive))
        }
        Command::Ddh { curve, phi, ell, triple, dishonest, seed } => {
            let r = resolve(cat, curve)?;
            let endo = make_catalog_endo(phi, &r.curve)?;
            let b = basis_for(&r, *ell, *seed)?;
            let inst = match triple {
                Some(t) => {
                    let v: Vec<i64> = t
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|_| invalid(format!("bad triple {t:?}"))))
                        .collect::<Result<_>>()?;
                    let [x, y, z] = v[..] else {
                        return Err(invalid("--triple needs exactly three scalars"));
                    };
                    let m = |s: i64| s.rem_euclid(*ell as i64) as u64;
                    DdhInstance::from_scalars(&b, m(x), m(y), m(z))
                }
                None => ddh_sample(&b, !dishonest, *seed),
            };
            let decision = ddh_decide(&b, &endo, &inst)?;
            let out = format!(
                "ell={ell}\nP={}\nR={}\nS={}\nT={}\nddh={decision}\n",
                inst.base, inst.r, inst.s, inst.t
            );
            Ok(Outcome::decided(out, decision))
        }
        Command::PaperExamples => {
            let rows = golden::run(cat);
            let all = rows.iter().all(|r| r.pass);
            Ok(Outcome::decided(golden::render(&rows), all))
        }
        Command::Catalog(CatalogCommand::Export) => Ok(Outcome::ok(cat.export())),
    }
}

/// Loads the catalog and runs the command; errors become exit status 2.
pub fn run(cli: &Cli) -> (Outcome, Option<String>) {
    let mut cat = Catalog::builtin();
    if let Some(path) = &cli.catalog {
        let loaded = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))
            .and_then(|text| Catalog::parse(&text));
        match loaded {
            Ok(extra) => cat.merge(extra),
            Err(e) => return (Outcome { stdout: String::new(), code: 2 }, Some(e.to_string())),
        }
    }
    match dispatch(&cat, &cli.command) {
        Ok(o) => (o, None),
        Err(e) => (Outcome { stdout: String::new(), code: 2 }, Some(format!("{e:?}: {e}"))),
    }
}

//! Named pass/fail checks bundled into a machine-readable report, and the
//! pipelines that produce them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cartan::signature;
use crate::complex::{
    self, boundary_components, build_block, build_xprime, covering_consistency,
    euler_characteristic, orientation_double_cover, ridge_report, vertex_link_check, EdgeLabeledK6,
    GluedComplex, RidgeAngles, RidgeKind, SurfaceClass,
};
use crate::coxeter::{
    caprace_check, orbifold_euler, t_collection, w_hyperbolic, w_p, CapraceVerdict,
};
use crate::exactnum::{int, parse_rational, rat, rational_to_f64, Rational, Scalar, TowerElement};
use crate::family::{
    self, cartan_at, primed, solve_t_for_p, t_three, verify_generic_rank, verify_monotone_f,
    verify_positive_coefficients, FamilyScalar,
};
use crate::par::Exec;
use crate::reflect::{meridian_holonomy, realize, verify_relations, Gauge};
use crate::vinberg::{face_poset, poset_isomorphic, reference_poset, ReferenceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Process exit status: 0 pass, 1 fail, 2 undecided.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecided => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// The statement being certified.
    pub claim: String,
    pub verdict: Verdict,
    pub witness: Value,
    pub elapsed_ms: u64,
}

/// Result of one check body.
pub type Outcome = Result<(Verdict, Value), Box<dyn std::error::Error + Send + Sync>>;

/// Runs `f`, timing it; an error becomes an undecided check.
pub fn run_check(name: &str, claim: &str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (verdict, witness) = match f() {
        Ok(r) => r,
        Err(e) => (Verdict::Undecided, json!({ "error": e.to_string() })),
    };
    Check {
        name: name.into(),
        claim: claim.into(),
        verdict,
        witness,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: "projfill".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: BTreeMap::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.verdict = overall(&self.checks);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Pass iff every check passes; any failure makes the whole report fail.
pub fn overall(checks: &[Check]) -> Verdict {
    if checks.iter().any(|c| c.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if checks.iter().all(|c| c.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Undecided
    }
}

/// A parameter value: `t3` or an exact rational (`p/q` or a decimal).
#[derive(Clone, Debug, PartialEq)]
pub enum TArg {
    T3,
    Rational(Rational),
}

impl FromStr for TArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "t3" => Ok(TArg::T3),
            _ => parse_rational(s)
                .or_else(|_| crate::exactnum::parse_decimal(s))
                .map(TArg::Rational)
                .map_err(|e| format!("cannot read t = {s:?}: {e}")),
        }
    }
}

impl TArg {
    pub fn exact(&self) -> String {
        match self {
            TArg::T3 => t_three().to_string(),
            TArg::Rational(q) => q.to_string(),
        }
    }

    /// Twelve-digit decimal rendering, for display only.
    pub fn display(&self) -> String {
        match self {
            TArg::T3 => format!("{:.12}", t_three().to_f64()),
            TArg::Rational(q) => format!("{:.12}", rational_to_f64(q)),
        }
    }

    fn echo(&self, report: &mut Report) {
        report.set("t", self.exact());
        report.set("t_display_only", self.display());
    }
}

fn pass_if(ok: bool, witness: Value) -> Outcome {
    Ok((Verdict::from_bool(ok), witness))
}

pub fn t3_check() -> Check {
    run_check(
        "t3 value",
        "f(t3) = 1/4 exactly and t3 lies in (0.0421, 0.0423)",
        || {
            let f = family::coefficients().f.eval(&t_three())?;
            let exact = f == TowerElement::from_rational(&rat(1, 4));
            let iv = t_three().enclose(&rat(1, 10000));
            let inside = iv.lo() > &rat(421, 10000) && iv.hi() < &rat(423, 10000);
            pass_if(
                exact && inside,
                json!({ "f_t3": f.to_string(), "enclosure": iv }),
            )
        },
    )
}

/// The family-wide certificates: value of `t₃`, generic rank, monotone `f`
/// and positivity of the coefficients.
pub fn family_checks(exec: Exec) -> Vec<Check> {
    vec![
        t3_check(),
        run_check("rank five", "C_t has rank 5 for every t in [t3, 1]", || {
            let c = verify_generic_rank(exec)?;
            pass_if(c.holds, serde_json::to_value(&c).unwrap_or_default())
        }),
        run_check(
            "f increasing",
            "f' matches its factored form and f increases on [t3, 1)",
            || {
                let c = verify_monotone_f()?;
                pass_if(c.holds, serde_json::to_value(&c).unwrap_or_default())
            },
        ),
        run_check(
            "coefficients positive",
            "the coefficient functions are positive on [t3, 1]",
            || {
                let c = verify_positive_coefficients(exec)?;
                pass_if(c.holds, serde_json::to_value(&c).unwrap_or_default())
            },
        ),
    ]
}

fn poset_check_at<F: FamilyScalar>(t: &F, kind: ReferenceKind, exec: Exec) -> Outcome {
    let a = cartan_at(t)?;
    let p = face_poset(&a, 4, exec)?;
    let iso = poset_isomorphic(&p, &reference_poset(kind));
    pass_if(
        iso.isomorphic,
        json!({ "f_vector": p.f_vector(), "compare": kind, "isomorphism": iso }),
    )
}

/// Face poset of `C_t`, optionally compared with a reference polytope.
pub fn poset_checks(t: &TArg, compare: Option<ReferenceKind>, exec: Exec) -> Vec<Check> {
    let claim = match compare {
        Some(k) => format!("the face poset of C_t is that of the {k} 4-simplex"),
        None => "the face poset of C_t is a graded 4-polytope poset".into(),
    };
    let check = run_check("face poset", &claim, || {
        let build = |p: crate::vinberg::FacePoset| {
            pass_if(
                p.is_graded(),
                json!({ "f_vector": p.f_vector(), "poset": p.export() }),
            )
        };
        match (t, compare) {
            (TArg::T3, Some(k)) => poset_check_at(&t_three(), k, exec),
            (TArg::Rational(q), Some(k)) => poset_check_at(q, k, exec),
            (TArg::T3, None) => build(face_poset(&cartan_at(&t_three())?, 4, exec)?),
            (TArg::Rational(q), None) => build(face_poset(&cartan_at(q)?, 4, exec)?),
        }
    });
    vec![check]
}

/// Rectified combinatorics and Lorentzian signature at `t = 1`.
pub fn hyperbolic_point_check(exec: Exec) -> Check {
    run_check(
        "hyperbolic point",
        "at t = 1 the poset is the rectified 4-simplex and the symmetrization has signature (4, 1, 5)",
        || {
            let a = cartan_at(&int(1))?;
            let p = face_poset(&a, 4, exec)?;
            let iso = poset_isomorphic(&p, &reference_poset(ReferenceKind::Rectified));
            let sym = a.symmetrize()?;
            let sig = signature(&sym.symmetric);
            let ok = iso.isomorphic && (sig.positive, sig.negative, sig.zero) == (4, 1, 5);
            pass_if(ok, json!({ "f_vector": p.f_vector(), "signature": sig }))
        },
    )
}

/// Relative hyperbolicity of `W_p` with respect to its collection `𝒯_p`.
pub fn coxeter_checks(p: u32, exec: Exec) -> Vec<Check> {
    let relhyp = run_check(
        "relative hyperbolicity",
        "W_p is relatively hyperbolic with respect to its collection of affine special subgroups",
        || {
            let sys = w_p(p)?;
            let coll = t_collection(p)?;
            let verdict = caprace_check(&sys, &coll, exec)?;
            let members: Vec<String> = coll.iter().map(|&m| sys.describe(m)).collect();
            pass_if(
                verdict == CapraceVerdict::Ok,
                json!({ "collection_size": coll.len(), "collection": members, "result": verdict }),
            )
        },
    );
    let euler = run_check(
        "orbifold euler characteristic",
        "the reflection orbifold has Euler characteristic 1/6",
        || {
            let chi = orbifold_euler(&reference_poset(ReferenceKind::Bitruncated), &w_p(p)?);
            pass_if(chi == rat(1, 6), json!({ "chi_orb": chi.to_string() }))
        },
    );
    vec![relhyp, euler]
}

fn reflect_checks_at<F: FamilyScalar>(t: &F, exec: Exec) -> Vec<Check> {
    let relations = run_check(
        "reflection relations",
        "the reflections of C_t satisfy the Coxeter relations of its dihedral angles",
        || {
            let cert = verify_relations(t, exec)?;
            let failures: Vec<_> = cert.failures().cloned().collect();
            pass_if(
                cert.holds,
                json!({ "checked": cert.checks.len(), "failures": failures }),
            )
        },
    );
    let quarter = family::coefficients()
        .f
        .eval(t)
        .map(|f| f == F::from_rational(&rat(1, 4)))
        .unwrap_or(false);
    let meridian = run_check(
        "meridian holonomy",
        "(s1' s2')^3 is the rotation predicted by its angle, and the identity when that angle is pi/3",
        || {
            let sys = realize(&cartan_at(t)?, Gauge::default())?;
            let m = meridian_holonomy(&sys, primed(1), primed(2))?;
            pass_if(
                m.charpoly_matches && (m.is_identity || !quarter),
                json!({
                    "cos_two_alpha": m.cos_two_alpha.to_string(),
                    "cos_six_alpha": m.cos_six_alpha.to_string(),
                    "identity": m.is_identity,
                }),
            )
        },
    );
    vec![relations, meridian]
}

pub fn reflect_checks(t: &TArg, exec: Exec) -> Vec<Check> {
    match t {
        TArg::T3 => reflect_checks_at(&t_three(), exec),
        TArg::Rational(q) => reflect_checks_at(q, exec),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Block,
    Xprime,
    X,
}

impl FromStr for Stage {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "block" => Ok(Stage::Block),
            "xprime" => Ok(Stage::Xprime),
            "x" => Ok(Stage::X),
            other => Err(format!("unknown stage {other:?} (block, xprime, x)")),
        }
    }
}

fn complex_summary(c: &GluedComplex) -> Value {
    json!({
        "cells": c.cell_count(),
        "rules": c.rules().len(),
        "face_classes": c.class_counts(),
        "euler": euler_characteristic(c),
        "orientable": c.is_orientable(),
        "components": c.component_count(),
        "notes": c.notes(),
    })
}

fn surfaces_check(
    name: &str,
    claim: &str,
    c: &GluedComplex,
    kind: RidgeKind,
    want: SurfaceClass,
    exec: Exec,
) -> Check {
    run_check(name, claim, || {
        let surfaces = complex::surface_analysis(c, kind, exec)?;
        let ok = surfaces.len() == 10 && surfaces.iter().all(|s| s.classification == want);
        pass_if(ok, json!({ "orbits": surfaces }))
    })
}

/// The gluing pipeline up to `stage`. `filling_p` sets the dihedral angle
/// `π/p` at filling ridges for the cone-angle table.
pub fn complex_checks(
    stage: Stage,
    outer: &EdgeLabeledK6,
    inner: &EdgeLabeledK6,
    filling_p: u32,
    chi_orb: &Rational,
    exec: Exec,
) -> Vec<Check> {
    let mut out = Vec::new();
    let block = build_block(inner);
    out.push(run_check(
        "block",
        "the block of 6 cells has exactly 5 boundary components of 6 facets each",
        || {
            let comps = boundary_components(&block);
            let ok = block.cell_count() == 6
                && comps.len() == 5
                && comps.iter().all(|c| c.sides.len() == 6);
            pass_if(
                ok,
                json!({ "complex": complex_summary(&block), "boundary": comps }),
            )
        },
    ));
    if stage == Stage::Block {
        out.push(run_check(
            "block vertex links",
            "every vertex link of the block is a 3-ball",
            || {
                let cert = vertex_link_check(&block, true, exec)?;
                pass_if(
                    cert.closed == 0,
                    json!({ "links": cert.links.len(), "with_boundary": cert.with_boundary }),
                )
            },
        ));
        return out;
    }

    let xp = build_xprime(outer, inner);
    out.push(run_check(
        "closed complex",
        "X' has 36 cells, is closed and non-orientable, with Euler characteristic 6",
        || {
            let chi = euler_characteristic(&xp);
            let ok = xp.cell_count() == 36 && xp.is_closed() && !xp.is_orientable() && chi == 6;
            pass_if(ok, complex_summary(&xp))
        },
    ));
    out.push(surfaces_check(
        "filling surfaces in X'",
        "the filling ridges of X' form 10 Klein bottles",
        &xp,
        RidgeKind::Filling,
        SurfaceClass::KleinBottle,
        exec,
    ));
    if stage == Stage::Xprime {
        return out;
    }

    let x = match orientation_double_cover(&xp) {
        Ok(x) => x,
        Err(e) => {
            out.push(run_check(
                "orientation cover",
                "X' has an orientation double cover",
                || Err(e.into()),
            ));
            return out;
        }
    };
    out.push(run_check(
        "orientation cover",
        "X has 72 cells, is connected and orientable, with Euler characteristic 12",
        || {
            let ok = x.cell_count() == 72
                && x.is_connected()
                && x.is_orientable()
                && euler_characteristic(&x) == 12;
            pass_if(ok, complex_summary(&x))
        },
    ));
    out.push(run_check(
        "covering degree",
        "chi(X) = 72 * chi_orb and chi(X') = 36 * chi_orb",
        || {
            let ok =
                covering_consistency(&x, chi_orb, 72) && covering_consistency(&xp, chi_orb, 36);
            pass_if(
                ok,
                json!({ "chi_orb": chi_orb.to_string(), "chi_x": euler_characteristic(&x) }),
            )
        },
    ));
    out.push(surfaces_check(
        "filling surfaces",
        "the filling ridges of X form 10 tori",
        &x,
        RidgeKind::Filling,
        SurfaceClass::Torus,
        exec,
    ));
    out.push(surfaces_check(
        "unprimed surfaces",
        "the unprimed ridges of X form 10 tori",
        &x,
        RidgeKind::Unprimed,
        SurfaceClass::Torus,
        exec,
    ));
    out.push(run_check(
        "ridge angles",
        "filling and unprimed ridges have 6 incident cells, mixed ridges 4; cone angles are 2pi except 6pi/p at filling ridges",
        || {
            let r = ridge_report(&x, &RidgeAngles::with_filling(filling_p))?;
            let want = [(RidgeKind::Filling, 6), (RidgeKind::Unprimed, 6), (RidgeKind::Mixed, 4)];
            let counts_ok = want
                .iter()
                .all(|(k, n)| r.incidences.get(k).is_some_and(|s| s.len() == 1 && s.contains(n)));
            let angles_ok = r
                .records
                .iter()
                .all(|rec| rec.kind == RidgeKind::Filling || rec.angle_sum == Some(int(2)));
            let full_turn_ok = r.all_full_turn == Some(filling_p == 3);
            pass_if(
                counts_ok && angles_ok && full_turn_ok,
                json!({
                    "incidences": r.incidences,
                    "filling_cone_angle_over_pi": rat(6, filling_p as i64).to_string(),
                    "all_full_turn": r.all_full_turn,
                    "records": r.records,
                }),
            )
        },
    ));
    out.push(run_check(
        "vertex links",
        "every vertex link of X is a closed connected 3-pseudomanifold with spherical vertex links",
        || {
            let cert = vertex_link_check(&x, false, exec)?;
            pass_if(
                cert.with_boundary == 0,
                json!({ "links": cert.links.len() }),
            )
        },
    ));
    out
}

/// The whole pipeline at the point where the filling angle is `π/p`.
pub fn report_all(p: u32, outer: &EdgeLabeledK6, inner: &EdgeLabeledK6, exec: Exec) -> Report {
    let mut report = Report::new("report all");
    report.set("p", p);
    report.set("outer_k6", outer.to_string());
    report.set("inner_k6", inner.to_string());
    report.extend(family_checks(exec));

    let point = solve_t_for_p(p, &rat(1, 1_000_000_000_000));
    let t = match &point {
        Ok(pt) if p == 3 => Some(TArg::T3).inspect(|_| report.set("t", pt.describe_t())),
        Ok(pt) => {
            report.set("t_enclosure", pt.describe_t());
            pt.rational_sample().map(TArg::Rational)
        }
        Err(_) => None,
    };
    report.push(run_check(
        "parameter",
        "there is t in [t3, 1) with f(t) = cos^2(pi/p)",
        || match &point {
            Ok(pt) => pass_if(
                true,
                json!({ "t": pt.describe_t(), "cos_sq_alpha": pt.cos_sq_alpha }),
            ),
            Err(e) => Err(e.clone().into()),
        },
    ));
    if let Some(t) = &t {
        report.set("t_sample", t.exact());
        report.set("t_display_only", t.display());
        report.extend(poset_checks(t, Some(ReferenceKind::Bitruncated), exec));
        report.extend(reflect_checks(t, exec));
    }
    report.push(hyperbolic_point_check(exec));
    report.push(run_check(
        "orbifold euler at the hyperbolic point",
        "the rectified reflection orbifold has Euler characteristic 1/6",
        || {
            let chi = orbifold_euler(&reference_poset(ReferenceKind::Rectified), &w_hyperbolic());
            pass_if(chi == rat(1, 6), json!({ "chi_orb": chi.to_string() }))
        },
    ));
    report.extend(coxeter_checks(p, exec));
    report.extend(complex_checks(Stage::X, outer, inner, p, &rat(1, 6), exec));
    report
}

/// Report header for a single-command run with a parameter.
pub fn report_for_t(command: &str, t: &TArg) -> Report {
    let mut r = Report::new(command);
    t.echo(&mut r);
    r
}

fn classify_witness<F: crate::exactnum::OrderedField>(a: &crate::cartan::CartanMatrix<F>) -> Value {
    let comps: Vec<Value> = a
        .component_types()
        .into_iter()
        .map(|(idx, kind)| {
            let labels: Vec<&String> = idx.iter().map(|&i| &a.labels()[i]).collect();
            json!({ "indices": labels, "type": kind })
        })
        .collect();
    let kind = a.classify().ok().map(|v| v.kind.to_string());
    json!({ "type": kind, "rank": a.rank(), "components": comps })
}

/// Vinberg type of a matrix read from a file. Symbolic matrices have no
/// pointwise type; only their generic rank is reported.
pub fn classify_check(parsed: &crate::cartan::ParsedMatrix) -> Check {
    use crate::cartan::ParsedMatrix;
    run_check(
        "classification",
        "type of each irreducible component",
        || match parsed {
            ParsedMatrix::Rational(a) => pass_if(true, classify_witness(a)),
            ParsedMatrix::Tower(a) => pass_if(true, classify_witness(a)),
            ParsedMatrix::Function(a) => Ok((
                Verdict::Undecided,
                json!({ "generic_rank": a.generic_rank() }),
            )),
        },
    )
}

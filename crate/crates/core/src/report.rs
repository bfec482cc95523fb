//! Check suites behind `cuspdef verify`, collected into a serializable report.

use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blowup::{self, BlowupCenter, ProjectivePoint};
use crate::cyclo::Cyclo;
use crate::poly::VarTable;
use crate::singularity::{self, DeformationPoint, GermPresentation, Mode, RootValue, SingularityClass};
use crate::verifier::{self, FaParameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub cite: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationReport {
    fn from_checks(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        VerificationReport { checks, passed, failed }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            writeln!(f, "{:4}  {:<28} {}", tag, c.id, c.cite)?;
            if !c.details.is_empty() {
                writeln!(f, "      {}", c.details)?;
            }
        }
        write!(f, "{} passed, {} failed", self.passed, self.failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    S,
    C,
    Fa,
    Blowup,
    Friedman,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "S" | "s" => Suite::S,
            "C" | "c" => Suite::C,
            "fa" => Suite::Fa,
            "blowup" => Suite::Blowup,
            "friedman" => Suite::Friedman,
            other => return Err(format!("unknown suite `{}`", other)),
        })
    }
}

type Outcome = Result<String, String>;

fn check(id: &str, cite: &str, run: impl FnOnce() -> Outcome) -> Check {
    let (status, details) = match run() {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    };
    Check { id: id.into(), cite: cite.into(), status, details }
}

fn req(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(suite: Suite, seed: u64) -> VerificationReport {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::S {
        checks.extend(suite_s());
    }
    if all || suite == Suite::C {
        checks.extend(suite_c());
    }
    if all || suite == Suite::Fa {
        checks.extend(suite_fa(seed));
    }
    if all || suite == Suite::Blowup {
        checks.extend(suite_blowup());
    }
    if all || suite == Suite::Friedman {
        checks.extend(suite_friedman());
    }
    VerificationReport::from_checks(checks)
}

fn suite_s() -> Vec<Check> {
    vec![
        check("S.image", "deformations induced by the two cusp factors", || {
            let s = verifier::induced_image_s().map_err(err)?;
            let eqs: Vec<String> = s.equations.iter().map(|e| e.to_string()).collect();
            Ok(format!("image = {{{}}}", eqs.join(", ")))
        }),
        check("S.example", "product deformation (2,3;5,7)", || {
            let c = Cyclo::from_int;
            let p = verifier::induced_point(c(2), c(3), c(5), c(7));
            let want = DeformationPoint::from_ints(-3, 3, 7, 0);
            req(p.as_exact() == want.as_exact(), || format!("got {}", p))?;
            Ok(p.to_string())
        }),
    ]
}

fn suite_c() -> Vec<Check> {
    let locus = verifier::three_node_locus();
    let mut out = vec![check("C.derivation", "three-node locus: R1, R2, remainder, solutions", || {
        let l = locus.as_ref().map_err(err)?;
        Ok(format!("remainder = {}", l.remainder))
    })];
    out.push(check("C.conditions3", "coefficients of the remainder", || {
        let l = locus.as_ref().map_err(err)?;
        Ok(l.conditions3.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))
    }));
    out.push(check("C.solutions", "four solution families Lambda_0..Lambda_3", || {
        let l = locus.as_ref().map_err(err)?;
        req(l.solutions.len() == 4, || format!("{} families", l.solutions.len()))?;
        Ok(l.solutions.iter().map(|(n, p)| format!("{}: {}", n, p)).collect::<Vec<_>>().join("; "))
    }));
    out.push(check("C.three_nodes", "Lambda_0 at s = 3 has three nodes", || {
        let p = DeformationPoint::from_ints(1, 0, 0, 3);
        let pts = singularity::singular_locus(&p, Mode::Exact).map_err(err)?;
        req(pts.len() == 3 && pts.iter().all(|r| r.klass == SingularityClass::Node && r.hessian_rank == 4), || {
            format!("{} points", pts.len())
        })?;
        Ok(pts.iter().map(|r| r.coords.to_string()).collect::<Vec<_>>().join(" "))
    }));
    out.push(check("C.lambda1", "Lambda_1 collapses the three points", || {
        let p = DeformationPoint::from_ints(-10, 9, 9, 6);
        let pts = singularity::singular_locus(&p, Mode::Exact).map_err(err)?;
        req(pts.len() == 1 && pts[0].multiplicity == Some(3), || format!("{:?}", pts))?;
        Ok(format!("{} {} (Hessian rank {})", pts[0].coords, pts[0].klass, pts[0].hessian_rank))
    }));
    out.push(check("C.transversal", "C is transversal to S at 0", || {
        let t = verifier::curve_c_transversality().map_err(err)?;
        req(t.transversal, || "tangent lies in S".into())?;
        Ok(format!("tangent ({})", t.tangent.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
    }));
    out
}

fn small_cyclo(rng: &mut ChaCha8Rng) -> Cyclo {
    Cyclo::from_ratios(rng.gen_range(-6..=6), rng.gen_range(1..=3), rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// Seeded parameters, every fourth one forced onto the plane s = 0.
pub fn sample_fa(rng: &mut ChaCha8Rng, i: usize) -> FaParameters {
    let (b, g) = (small_cyclo(rng), small_cyclo(rng));
    let a = if i % 4 == 0 {
        -(&(&Cyclo::eps() * &b) + &(&Cyclo::eps_pow(2) * &g))
    } else {
        small_cyclo(rng)
    };
    FaParameters::exact(a, b, g)
}

fn suite_fa(seed: u64) -> Vec<Check> {
    vec![
        check("fa.expansion", "F_a after the translation; closed-form singular points", || {
            verifier::check_fa_symbolic().map_err(err)?;
            Ok(String::new())
        }),
        check("fa.distinct", "three distinct points iff alpha + eps beta + eps^2 gamma != 0", || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut on, mut off) = (0, 0);
            for i in 0..100 {
                let p = sample_fa(&mut rng, i);
                let pts = verifier::fa_singular_points(&p).map_err(err)?;
                let plane = p.on_plane().unwrap_or(false);
                req(pts.len() == if plane { 1 } else { 3 }, || format!("{} points at s = {}", pts.len(), p.s()))?;
                if plane {
                    on += 1
                } else {
                    off += 1
                }
            }
            Ok(format!("100 samples: {} on the plane, {} off", on, off))
        }),
        check("fa.g", "g(a) = (-k^3 s^3, 0, 0, -3ks) lies on C", || {
            let g = verifier::map_g(&FaParameters::symbolic()).map_err(err)?;
            Ok(format!("s = {}, sigma = {}", g.s, g.point.sigma))
        }),
        check("fa.g_structure", "rank p = 1, ker p = pi, im g meets S only at 0", || {
            verifier::check_map_g_structure().map_err(err)?;
            Ok(String::new())
        }),
    ]
}

fn suite_blowup() -> Vec<Check> {
    let res = blowup::resolve_cusp();
    let zero = Cyclo::zero;
    let ambient = [("x", zero()), ("y", zero()), ("u", zero()), ("v", zero())];
    vec![
        check("blowup.first", "blow-up of the plane x = u = 0", || {
            let r = res.as_ref().map_err(err)?;
            req(blowup::matches_displayed(&r.first.global, &blowup::DISPLAYED_FIRST).map_err(err)?, || {
                format!("{:?}", r.first.global.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            })?;
            blowup::check_chart_inverse(&blowup::cusp_chart(), &r.first).map_err(err)?;
            Ok(r.first.global.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))
        }),
        check("blowup.node", "first blow-up keeps a node over the origin", || {
            let r = res.as_ref().map_err(err)?;
            let (smooth, class) = blowup::intermediate_singularity(&r.first).map_err(err)?;
            req(!smooth && class == SingularityClass::Node, || format!("smooth={} class={}", smooth, class))?;
            Ok(format!("{} at {}", class, r.first.charts[0].label))
        }),
        check("blowup.final", "strict transform after the second blow-up", || {
            let r = res.as_ref().map_err(err)?;
            req(blowup::matches_displayed(r.global(), &blowup::DISPLAYED_FINAL).map_err(err)?, || {
                format!("{:?}", r.global().iter().map(|e| e.to_string()).collect::<Vec<_>>())
            })?;
            for (s, f) in r.second.iter().zip(&r.first.charts) {
                blowup::check_chart_inverse(f, s).map_err(err)?;
            }
            Ok(r.global().iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))
        }),
        check("blowup.fiber", "exceptional fiber is two lines meeting once", || {
            let r = res.as_ref().map_err(err)?;
            let fib = blowup::exceptional_fiber(r.global(), &r.second[0].charts[0].factors).map_err(err)?;
            req(fib.components.len() == 2 && fib.intersections.len() == 1, || format!("{:?}", fib))?;
            Ok(format!("{} = 0", fib.equation))
        }),
        check("blowup.smooth", "resolution is smooth along the exceptional fiber", || {
            let r = res.as_ref().map_err(err)?;
            let charts = r.final_charts();
            let mut points: Vec<ProjectivePoint> = vec![vec![[zero(), Cyclo::one()], [zero(), Cyclo::one()]]];
            let samples = [zero(), Cyclo::one(), Cyclo::from_int(-1), Cyclo::eps(), Cyclo::from_ratios(2, 3, 1, 1)];
            for t in &samples {
                points.push(vec![[zero(), Cyclo::one()], [t.clone(), Cyclo::one()]]);
                points.push(vec![[t.clone(), Cyclo::one()], [zero(), Cyclo::one()]]);
            }
            points.push(vec![[zero(), Cyclo::one()], [Cyclo::one(), zero()]]);
            points.push(vec![[Cyclo::one(), zero()], [zero(), Cyclo::one()]]);
            for p in &points {
                let ok = blowup::is_smooth_at_projective(&charts, &ambient, p).map_err(err)?;
                req(ok, || format!("singular at {:?}", p))?;
            }
            Ok(format!("{} exceptional points", points.len()))
        }),
        check("blowup.flops", "flop partners blow up x=u, x=v, y=u", || {
            let mut out = Vec::new();
            for (offset, c) in blowup::flop_center_table() {
                let d = blowup::single_blowup_fiber(&c).map_err(err)?;
                req(d == 1, || format!("fiber dimension {} for {}", d, c))?;
                out.push(format!("+{}: {}", offset, c));
            }
            Ok(out.join(", "))
        }),
        check("blowup.stable", "second blow-up along the same center is empty", || {
            let r = res.as_ref().map_err(err)?;
            let ch = &r.first.charts[0];
            let c = BlowupCenter::coordinates(ch.table(), "x", "u").map_err(err)?;
            match blowup::blowup_strict_transform(ch, &c) {
                Err(blowup::BlowupError::NothingToTransform(_)) => Ok(String::new()),
                other => Err(format!("{:?}", other.map(|r| r.global))),
            }
        }),
    ]
}

fn suite_friedman() -> Vec<Check> {
    let rep = verifier::friedman_report();
    let get = |f: fn(&verifier::FriedmanReport) -> i64, want: i64| -> Outcome {
        let r = rep.as_ref().map_err(err)?;
        req(f(r) == want, || format!("got {}, expected {}", f(r), want))?;
        Ok(format!("= {}", want))
    };
    vec![
        check("friedman.dimdef_X", "deformations of the fiber product", || get(|r| r.dimdef_x, 19)),
        check("friedman.h12_hat", "h^{1,2} of the resolution", || get(|r| r.h12_hat, 3)),
        check("friedman.h11_hat", "h^{1,1} of the resolution", || get(|r| r.h11_hat, 21)),
        check("friedman.t1_local", "local first-order deformations at the six cusps", || get(|r| r.t1_local_total, 24)),
        check("friedman.rows", "both rows of the dimension diagram are exact", || {
            let r = rep.as_ref().map_err(err)?;
            req(r.row_exactness.iter().all(|(_, v)| *v == 0), || format!("{:?}", r.row_exactness))?;
            Ok(format!("lambda_E rank {}, middle term {}", r.lambda_e_rank, r.h2_theta))
        }),
        check("friedman.tjurina", "Tjurina algebra of the cusp", || {
            let b = singularity::tjurina_basis(&GermPresentation::new(singularity::cusp(), &singularity::GERM_VARS))
                .map_err(err)?;
            let t = singularity::germ_table();
            let names: Vec<String> = b
                .iter()
                .map(|m| crate::Polynomial::monomial(&t, m.clone(), Cyclo::one()).to_string())
                .collect();
            req(names == ["1", "y", "w", "y*w"], || format!("{:?}", names))?;
            Ok(format!("<{}>", names.join(", ")))
        }),
        check("friedman.six_cusps", "fiber product over t^6 - 1", || {
            let t = VarTable::new(["t"]).map_err(err)?;
            let b = t.parse("t^6 - 1").map_err(err)?;
            let pts = singularity::fiber_product_singular_locus(&b, "t").map_err(err)?;
            req(pts.len() == 6 && pts.iter().all(|p| p.vanishing_order == 1 && matches!(p.t0, RootValue::Exact(_))), || {
                format!("{:?}", pts)
            })?;
            Ok(pts.iter().map(|p| p.t0.to_string()).collect::<Vec<_>>().join(", "))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        let r = run(Suite::All, 0);
        let failed: Vec<&Check> = r.checks.iter().filter(|c| c.status != Status::Pass).collect();
        assert!(failed.is_empty(), "{:#?}", failed);
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn suite_names() {
        assert_eq!("friedman".parse::<Suite>(), Ok(Suite::Friedman));
        assert!("nope".parse::<Suite>().is_err());
    }
}

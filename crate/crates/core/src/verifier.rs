//! Mechanical re-derivation of the deformation-theoretic statements about the
//! cusp: the image hyperplane S = {s = 0}, the three-node curve C, the
//! factored family F_a with its map g, and the dimension bookkeeping for the
//! fiber-product resolution.
//!
//! Every identity is an exact polynomial equality; a failure is reported as
//! [`VerifierError::SymbolicMismatch`] and points at a bug, not at bad input.

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo::Cyclo;
use crate::matrix;
use crate::poly::{univariate_division, PolyError, Polynomial, Table, VarTable};
use crate::singularity::{
    self, classify_singularity, conditions, cusp_family, eliminate_w, tjurina_basis,
    DeformationPoint, GermPresentation, PointCoords, SingularPointRecord, SingularityClass, SingularityError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifierError {
    #[error("symbolic identity failed: {0}")]
    SymbolicMismatch(String),
    #[error("the scale k of the map p must be nonzero")]
    ZeroScale,
    #[error("parameters must be exact for this operation")]
    NotExact,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), VerifierError> {
    if ok {
        Ok(())
    } else {
        Err(VerifierError::SymbolicMismatch(what()))
    }
}

fn ensure_eq(lhs: &Polynomial, rhs: &Polynomial, what: &str) -> Result<(), VerifierError> {
    ensure(lhs == rhs, || format!("{}: got {}, expected {}", what, lhs, rhs))
}

fn parse(t: &Table, text: &str) -> Polynomial {
    t.parse(text).expect("built-in expression parses")
}

/// Table (l, m, n, s), s Laurent: coordinates of the base.
pub fn base_table() -> Table {
    VarTable::with_laurent(singularity::PARAM_VARS, &["s"]).expect("distinct names")
}

/// Equations plus named parametrizations that satisfy them.
#[derive(Debug, Clone)]
pub struct LocusDescription {
    /// Over [`base_table`].
    pub equations: Vec<Polynomial>,
    pub parametrizations: Vec<(String, DeformationPoint)>,
}

impl LocusDescription {
    /// Substitute a parametrization into every equation; all results must vanish.
    pub fn check(&self) -> Result<(), VerifierError> {
        for (name, p) in &self.parametrizations {
            for eq in &self.equations {
                let v = eval_on(eq, p)?;
                ensure(v.is_zero(), || format!("{} does not satisfy {} (residual {})", name, eq, v))?;
            }
        }
        Ok(())
    }
}

/// Evaluate a polynomial in (l, m, n, s) at a deformation point.
pub fn eval_on(eq: &Polynomial, p: &DeformationPoint) -> Result<Polynomial, PolyError> {
    let target = p.params().clone();
    let b: Vec<(&str, Polynomial)> =
        singularity::PARAM_VARS.iter().zip(p.coords()).map(|(v, c)| (*v, c.clone())).collect();
    eq.substitute_in(&target, &b)
}

/// Image of the product deformation x^2 - y^3 + l1 + m*y = z^2 - w^3 + l2 + n*w.
pub fn induced_point(l1: Cyclo, m: Cyclo, l2: Cyclo, n: Cyclo) -> DeformationPoint {
    DeformationPoint::exact(&l1 - &l2, m, n, Cyclo::zero())
}

/// The locus of deformations induced by deforming the two cusp factors separately.
pub fn induced_image_s() -> Result<LocusDescription, VerifierError> {
    let t = VarTable::new(["x", "y", "z", "w", "l1", "m", "l2", "n"])?;
    let product = &parse(&t, "x^2 - y^3 + l1 + m*y") - &parse(&t, "z^2 - w^3 + l2 + n*w");
    let params = VarTable::new(["l1", "m", "l2", "n"])?;
    let image = DeformationPoint::symbolic(
        parse(&params, "l1 - l2"),
        parse(&params, "m"),
        parse(&params, "n"),
        Polynomial::zero(&params),
    )?;
    let fiber = image.fiber()?.embed_into(&t)?;
    ensure_eq(&product, &fiber, "product deformation in family coordinates")?;

    // the map is linear; its image is cut out by the left kernel of its matrix
    let p_vars = ["l1", "m", "l2", "n"];
    let jac: Vec<Vec<Cyclo>> = image
        .coords()
        .iter()
        .map(|c| {
            p_vars
                .iter()
                .map(|v| c.derivative(v).and_then(|d| d.eval(&[])))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    ensure(matrix::rank(&jac) == 3, || "image of the product map is not a hyperplane".into())?;
    let transpose: Vec<Vec<Cyclo>> = (0..4).map(|j| jac.iter().map(|row| row[j].clone()).collect()).collect();
    let bt = base_table();
    let equations: Vec<Polynomial> = matrix::kernel(&transpose)
        .into_iter()
        .map(|c| {
            singularity::PARAM_VARS
                .iter()
                .zip(&c)
                .fold(Polynomial::zero(&bt), |acc, (v, k)| &acc + &Polynomial::var(&bt, v).unwrap().scale(k))
        })
        .collect();
    ensure(equations == vec![parse(&bt, "s")], || format!("image equations {:?} differ from {{s}}", equations))?;
    let locus = LocusDescription { equations, parametrizations: vec![("product".into(), image)] };
    locus.check()?;
    Ok(locus)
}

/// Everything derived for the three-node locus.
#[derive(Debug, Clone)]
pub struct ThreeNodeLocus {
    pub conditions: [Polynomial; 3],
    pub r1: Polynomial,
    pub r2: Polynomial,
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    /// y^2, y^1, y^0 coefficients of the remainder with denominators cleared.
    pub conditions3: Vec<Polynomial>,
    /// Lambda_0 .. Lambda_3 over the table (s), s Laurent.
    pub solutions: Vec<(String, DeformationPoint)>,
    pub curve_c: LocusDescription,
}

pub const DISPLAYED_R1: &str = "27*y^4 - 18*m*y^2 + s^3*y + 3*m^2 - n*s^2";
pub const DISPLAYED_R2: &str = "3*s*y^3 - 6*n*y^2 + m*s*y + 2*m*n + 3*l*s";
pub const DISPLAYED_REMAINDER: &str = "27/s^2*(4*n^2 - m*s^2)*y^2 + 1/s*(s^4 - 36*m*n - 27*l*s)*y \
     + 1/s^2*(3*m^2*s^2 - n*s^4 - 36*m*n^2 - 54*l*n*s)";
pub const DISPLAYED_CONDITIONS3: [&str; 3] = [
    "4*n^2 - m*s^2",
    "s^4 - 36*m*n - 27*l*s",
    "3*m^2*s^2 - n*s^4 - 36*m*n^2 - 54*l*n*s",
];
/// Lambda_0 .. Lambda_3 in the tuple convention (lambda, mu, -nu, sigma).
pub const DISPLAYED_SOLUTIONS: [[&str; 4]; 4] = [
    ["s^3/27", "0", "0", "s"],
    ["-5/108*s^3", "s^2/4", "-s^2/4", "s"],
    ["-5/108*s^3", "eps^2/4*s^2", "-eps/4*s^2", "s"],
    ["-5/108*s^3", "eps/4*s^2", "-eps^2/4*s^2", "s"],
];

fn scale_table() -> Table {
    VarTable::with_laurent(["s"], &["s"]).expect("one name")
}

fn tuple_point(entries: &[&str; 4]) -> DeformationPoint {
    let t = scale_table();
    let [l, m, n, s] = entries.map(|e| parse(&t, e));
    DeformationPoint::symbolic(l, m, -n, s).expect("same table")
}

/// R2 at a deformation point, as a polynomial over (y, params).
fn r2_at(r2: &Polynomial, p: &DeformationPoint) -> Result<Polynomial, PolyError> {
    let params = p.params();
    let mut names = vec!["y".to_string()];
    names.extend(params.names().iter().cloned());
    let laurent: Vec<&str> = (0..params.len()).filter(|&i| params.is_laurent(i)).map(|i| params.name(i)).collect();
    let t = VarTable::with_laurent(&names, &laurent)?;
    let b: Vec<(&str, Polynomial)> = singularity::PARAM_VARS
        .iter()
        .zip(p.coords())
        .map(|(v, c)| Ok((*v, c.embed_into(&t)?)))
        .collect::<Result<_, PolyError>>()?;
    r2.substitute_in(&t, &b)
}

/// Derive R1, R2, the remainder, conditions3, the four solution families and the curve C.
pub fn three_node_locus() -> Result<ThreeNodeLocus, VerifierError> {
    let fam = cusp_family();
    let t = fam.table().clone();
    let conds = conditions(&fam)?;
    let shown = ["3*y^2 - s*w - m", "3*w^2 + s*y - n", "s*y*w + 2*m*y - 2*n*w + 3*l"];
    for (c, s) in conds.iter().zip(shown) {
        ensure_eq(c, &parse(&t, s), "singular-point condition")?;
    }
    let (m, s) = (Polynomial::var(&t, "m")?, Polynomial::var(&t, "s")?);
    let (r1, r2) = eliminate_w(&conds, &m, &s)?;
    ensure_eq(&r1, &parse(&t, DISPLAYED_R1), "R1")?;
    ensure_eq(&r2, &parse(&t, DISPLAYED_R2), "R2")?;

    let (quotient, remainder) = univariate_division(&r1, &r2, "y")?;
    ensure_eq(&(&(&quotient * &r2) + &remainder), &r1, "q*R2 + r = R1")?;
    ensure(remainder.degree_in(t.index_of("y")?).unwrap_or(0) < 3, || "remainder degree".into())?;
    ensure_eq(&remainder, &parse(&t, DISPLAYED_REMAINDER), "remainder of R1 by R2")?;

    let coeffs = remainder.coefficients_in("y")?;
    let mut conditions3 = Vec::new();
    for (k, shown) in [2, 1, 0].iter().zip(DISPLAYED_CONDITIONS3) {
        let c = coeffs.get(k).cloned().unwrap_or_else(|| Polynomial::zero(&t));
        let target = parse(&t, shown);
        let unit = c.unit_ratio(&target);
        ensure(unit.is_some(), || format!("y^{} coefficient {} is not a unit multiple of {}", k, c, target))?;
        conditions3.push(target);
    }

    // solve: m from the first condition, l from the second, then the third factors in n
    let m_sol = parse(&t, "4*n^2*s^-2");
    let l_sol = {
        let lin = conditions3[1].substitute(&[("m", m_sol.clone())])?;
        let a = lin.coefficient_of_power("l", 1)?;
        let b = lin.coefficient_of_power("l", 0)?;
        let inv = a.unit_inverse().ok_or_else(|| VerifierError::SymbolicMismatch(format!("{} is not a unit", a)))?;
        -&(&b * &inv)
    };
    ensure_eq(&l_sol, &parse(&t, "s^3/27 - 16*n^3/(3*s^3)"), "lambda after eliminating mu")?;
    let third = conditions3[2].substitute(&[("m", m_sol.clone()), ("l", l_sol.clone())])?;
    let factored = parse(&t, "n*(4*n - s^2)*(4*n - eps*s^2)*(4*n - eps^2*s^2)");
    ensure(third.unit_ratio(&factored).is_some(), || format!("third condition {} does not factor as {}", third, factored))?;

    // weighted homogeneity: n = c*s^2 turns the quartic into s^k * P(c)
    let tc = VarTable::with_laurent(["c", "s"], &["s"])?;
    let n_of_c = parse(&tc, "c*s^2");
    let in_c = factored.substitute_in(
        &tc,
        &[
            ("n", n_of_c.clone()),
            ("s", parse(&tc, "s")),
            ("l", Polynomial::zero(&tc)),
            ("m", Polynomial::zero(&tc)),
            ("x", Polynomial::zero(&tc)),
            ("y", Polynomial::zero(&tc)),
            ("z", Polynomial::zero(&tc)),
            ("w", Polynomial::zero(&tc)),
        ],
    )?;
    let p_c = in_c.substitute(&[("s", Polynomial::one(&tc))])?;
    ensure(in_c == p_c.mul_monomial(&crate::Monomial::new(vec![0, 8]))?, || "quartic is not weighted homogeneous".into())?;
    let roots = p_c.to_univariate("c")?.exact_roots().map_err(SingularityError::from)?;
    ensure(roots.len() == 4 && roots.iter().all(|(_, k)| *k == 1), || format!("expected four simple roots, got {:?}", roots))?;

    let ts = scale_table();
    let sv = parse(&ts, "s");
    let mut found: Vec<DeformationPoint> = Vec::new();
    for (c, _) in &roots {
        let n = (&sv * &sv).scale(c);
        let m = (&sv * &sv).scale(&(c * c * Cyclo::from_int(4)));
        let l = &parse(&ts, "s^3/27") - &sv.pow(3).scale(&(c * c * c * Cyclo::from_ratios(16, 3, 0, 1)));
        found.push(DeformationPoint::symbolic(l, m, n, sv.clone())?);
    }
    let mut solutions = Vec::new();
    for (i, shown) in DISPLAYED_SOLUTIONS.iter().enumerate() {
        let want = tuple_point(shown);
        let pos = found.iter().position(|p| p.tuple_convention() == want.tuple_convention());
        let pos = pos.ok_or_else(|| VerifierError::SymbolicMismatch(format!("Lambda_{} = {} not among the solutions", i, want)))?;
        solutions.push((format!("Lambda_{}", i), found.remove(pos)));
    }
    for (name, p) in &solutions {
        for c in &conditions3 {
            let v = eval_on(&c.embed_into(&base_table())?, p)?;
            ensure(v.is_zero(), || format!("{} violates {}", name, c))?;
        }
    }

    // R2 along the families
    let ty = VarTable::with_laurent(["y", "s"], &["s"])?;
    ensure_eq(&r2_at(&r2, &solutions[1].1)?, &parse(&ty, "3*s*(y - s/6)^3"), "R2 at Lambda_1")?;
    ensure_eq(
        &r2_at(&r2, &solutions[0].1)?,
        &parse(&ty, "3*s*(y + s/3)*(y + eps*s/3)*(y + eps^2*s/3)"),
        "R2 at Lambda_0",
    )?;
    check_substitutions(&r2, &solutions)?;

    let bt = base_table();
    let curve_c = LocusDescription {
        equations: vec![parse(&bt, "s^3 - 27*l"), parse(&bt, "m"), parse(&bt, "n")],
        parametrizations: vec![("Lambda_0".into(), solutions[0].1.clone())],
    };
    curve_c.check()?;
    check_c_meets_s_only_at_origin(&curve_c)?;
    Ok(ThreeNodeLocus { conditions: conds, r1, r2, quotient, remainder, conditions3, solutions, curve_c })
}

/// F_{Lambda_2}(x, eps y, z, eps^2 w) = F_{Lambda_1} and F_{Lambda_3}(x, eps^2 y, z, eps w) = F_{Lambda_1},
/// on the fibers and on R2; also the forward image F_{Lambda_1}(x, eps y, z, eps^2 w) = F_{Lambda_3}.
fn check_substitutions(r2: &Polynomial, sols: &[(String, DeformationPoint)]) -> Result<(), VerifierError> {
    let fibers: Vec<Polynomial> = sols.iter().map(|(_, p)| p.fiber()).collect::<Result<_, _>>()?;
    let t = fibers[1].table().clone();
    let twist = |f: &Polynomial, k: i64| -> Result<Polynomial, PolyError> {
        f.substitute(&[
            ("y", Polynomial::var(&t, "y")?.scale(&Cyclo::eps_pow(k))),
            ("w", Polynomial::var(&t, "w")?.scale(&Cyclo::eps_pow(2 * k))),
        ])
    };
    ensure_eq(&twist(&fibers[2], 1)?, &fibers[1], "Lambda_2 under (y, w) -> (eps y, eps^2 w)")?;
    ensure_eq(&twist(&fibers[3], 2)?, &fibers[1], "Lambda_3 under (y, w) -> (eps^2 y, eps w)")?;
    ensure_eq(&twist(&fibers[1], 1)?, &fibers[3], "Lambda_1 under (y, w) -> (eps y, eps^2 w)")?;

    let cubics: Vec<Polynomial> = sols.iter().map(|(_, p)| r2_at(r2, p)).collect::<Result<_, _>>()?;
    let ty = cubics[1].table().clone();
    let ytw = |f: &Polynomial, k: i64| f.substitute(&[("y", Polynomial::var(&ty, "y")?.scale(&Cyclo::eps_pow(k)))]);
    ensure_eq(&ytw(&cubics[2], 1)?, &cubics[1], "R2 of Lambda_2 under y -> eps y")?;
    ensure_eq(&ytw(&cubics[3], 2)?, &cubics[1], "R2 of Lambda_3 under y -> eps^2 y")?;
    Ok(())
}

/// At s = 0 the equations of C are homogeneous linear of rank 3 in (l, m, n).
fn check_c_meets_s_only_at_origin(c: &LocusDescription) -> Result<(), VerifierError> {
    let bt = base_table();
    let zero = Polynomial::zero(&bt);
    let restricted: Vec<Polynomial> =
        c.equations.iter().map(|e| e.substitute(&[("s", zero.clone())])).collect::<Result<_, _>>()?;
    let vars = ["l", "m", "n"];
    let mut rows = Vec::new();
    for e in &restricted {
        ensure(e.total_degree().unwrap_or(1) == 1 && e.homogeneous_part(1) == *e, || format!("{} is not linear homogeneous", e))?;
        rows.push(vars.iter().map(|v| e.derivative(v).and_then(|d| d.eval(&[]))).collect::<Result<Vec<_>, _>>()?);
    }
    ensure(matrix::rank(&rows) == 3, || "C meets S in more than the origin".into())
}

/// Tangent of Lambda_0 at s = 0 and its pairing with the equation of S.
#[derive(Debug, Clone, PartialEq)]
pub struct Transversality {
    pub tangent: [Cyclo; 4],
    /// The equation s of S applied to the tangent vector.
    pub s_equation_value: Cyclo,
    pub transversal: bool,
}

pub fn curve_c_transversality() -> Result<Transversality, VerifierError> {
    let lam0 = tuple_point(&DISPLAYED_SOLUTIONS[0]);
    let mut tangent = Vec::new();
    for c in lam0.coords() {
        tangent.push(c.derivative("s")?.eval(&[("s", Cyclo::zero())])?);
    }
    let tangent: [Cyclo; 4] = tangent.try_into().expect("four coordinates");
    let s_equation_value = tangent[3].clone();
    let proportional = tangent[..3].iter().all(Zero::is_zero) && !tangent[3].is_zero();
    Ok(Transversality { transversal: proportional && !s_equation_value.is_zero(), tangent, s_equation_value })
}

/// Parameters a = (alpha, beta, gamma), the translations xi, upsilon and the scale k.
#[derive(Debug, Clone)]
pub struct FaParameters {
    pub alpha: Polynomial,
    pub beta: Polynomial,
    pub gamma: Polynomial,
    pub xi: Polynomial,
    pub upsilon: Polynomial,
    pub k: Polynomial,
}

pub const FA_PARAMS: [&str; 6] = ["alpha", "beta", "gamma", "xi", "upsilon", "k"];

impl FaParameters {
    pub fn symbolic() -> Self {
        let t = VarTable::new(FA_PARAMS).expect("distinct names");
        let v = |n: &str| Polynomial::var(&t, n).unwrap();
        FaParameters { alpha: v("alpha"), beta: v("beta"), gamma: v("gamma"), xi: v("xi"), upsilon: v("upsilon"), k: v("k") }
    }

    /// Exact a with xi = upsilon = 0 and k = 1.
    pub fn exact(alpha: Cyclo, beta: Cyclo, gamma: Cyclo) -> Self {
        Self::exact_full(alpha, beta, gamma, Cyclo::zero(), Cyclo::zero(), Cyclo::one())
    }

    pub fn exact_full(alpha: Cyclo, beta: Cyclo, gamma: Cyclo, xi: Cyclo, upsilon: Cyclo, k: Cyclo) -> Self {
        let t = VarTable::new(Vec::<String>::new()).expect("empty table");
        let c = |v: Cyclo| Polynomial::constant(&t, v);
        FaParameters { alpha: c(alpha), beta: c(beta), gamma: c(gamma), xi: c(xi), upsilon: c(upsilon), k: c(k) }
    }

    pub fn table(&self) -> &Table {
        self.alpha.table()
    }

    /// s = alpha + eps*beta + eps^2*gamma; a lies on the plane pi iff s = 0.
    pub fn s(&self) -> Polynomial {
        &(&self.alpha + &self.beta.scale(&Cyclo::eps())) + &self.gamma.scale(&Cyclo::eps_pow(2))
    }

    /// `Some(true)` when the exact parameters lie on pi.
    pub fn on_plane(&self) -> Option<bool> {
        self.s().as_constant().map(|c| c.is_zero())
    }

    fn abc(&self) -> [&Polynomial; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }
}

/// Table X, Y, U, V followed by the parameter variables.
fn fa_table(p: &FaParameters) -> Result<Table, PolyError> {
    let mut names: Vec<String> = ["X", "Y", "U", "V"].iter().map(|s| s.to_string()).collect();
    names.extend(p.table().names().iter().cloned());
    VarTable::new(names)
}

pub const DISPLAYED_FA: &str = "X^2 - U^2 - Y^3 + V^3 - (alpha + beta + gamma)*Y^2 \
     - (alpha + eps^2*beta + eps*gamma)*V^2 - (alpha + eps*beta + eps^2*gamma)*Y*V \
     - (alpha*gamma + alpha*beta + beta*gamma)*Y + (beta*gamma + eps*alpha*gamma + eps^2*alpha*beta)*V \
     - alpha*beta*gamma";

/// (X-U+xi)(X+U+upsilon) - (Y-V+alpha)(Y-eps V+beta)(Y-eps^2 V+gamma), translated so that
/// xi and upsilon disappear.
pub fn fa_family(p: &FaParameters) -> Result<Polynomial, PolyError> {
    let t = fa_table(p)?;
    let e = |q: &Polynomial| q.embed_into(&t);
    let v = |n: &str| Polynomial::var(&t, n);
    let (a, b, g, xi, up) = (e(&p.alpha)?, e(&p.beta)?, e(&p.gamma)?, e(&p.xi)?, e(&p.upsilon)?);
    let (x, y, u, vv) = (v("X")?, v("Y")?, v("U")?, v("V")?);
    let lhs = &(&(&x - &u) + &xi) * &(&(&x + &u) + &up);
    let line = |k: i64, c: &Polynomial| &(&y - &vv.scale(&Cyclo::eps_pow(k))) + c;
    let rhs = &(&line(0, &a) * &line(1, &b)) * &line(2, &g);
    let half = Cyclo::from_ratios(1, 2, 0, 1);
    let moved = (&lhs - &rhs).substitute(&[
        ("X", &x - &(&xi + &up).scale(&half)),
        ("U", &u + &(&xi - &up).scale(&half)),
    ])?;
    Ok(moved)
}

/// The displayed closed forms p1, p2, p3 as (X, Y, U, V) over the parameter table.
pub fn fa_closed_form_points(p: &FaParameters) -> Result<[[Polynomial; 4]; 3], PolyError> {
    let t = VarTable::new(["alpha", "beta", "gamma"])?;
    let shown = [
        ["(eps*beta - gamma)/(1 - eps)", "(beta - gamma)/(eps*(1 - eps))"],
        ["(eps^2*alpha - gamma)/(1 - eps^2)", "(alpha - gamma)/(1 - eps^2)"],
        ["(eps*alpha - beta)/(1 - eps)", "(alpha - beta)/(1 - eps)"],
    ];
    let target = p.table().clone();
    let [a, b, g] = p.abc();
    let bind = [("alpha", a.clone()), ("beta", b.clone()), ("gamma", g.clone())];
    let zero = Polynomial::zero(&target);
    let mut out = Vec::new();
    for [ys, vs] in shown {
        let y = parse(&t, ys).substitute_in(&target, &bind)?;
        let v = parse(&t, vs).substitute_in(&target, &bind)?;
        out.push([zero.clone(), y, zero.clone(), v]);
    }
    Ok(out.try_into().expect("three points"))
}

/// Intersections of the lines Y - eps^j V + a_j = 0 (j, k) for (1,2), (0,2), (0,1).
fn line_intersections(p: &FaParameters) -> [[Polynomial; 4]; 3] {
    let a = p.abc();
    let zero = Polynomial::zero(p.table());
    [(1usize, 2usize), (0, 2), (0, 1)].map(|(j, k)| {
        let d = (&Cyclo::eps_pow(j as i64) - &Cyclo::eps_pow(k as i64)).inv().expect("distinct roots of unity");
        let v = (a[j] - a[k]).scale(&d);
        let y = &v.scale(&Cyclo::eps_pow(j as i64)) - a[j];
        [zero.clone(), y, zero.clone(), v]
    })
}

/// Symbolic checks for F_a: the displayed expansion, the closed-form points, their
/// criticality and the distinctness criterion.
pub fn check_fa_symbolic() -> Result<(), VerifierError> {
    let p = FaParameters::symbolic();
    let fa = fa_family(&p)?;
    let t = fa.table().clone();
    ensure_eq(&fa, &parse(&t, DISPLAYED_FA), "F_a after the translation")?;
    let pts = fa_closed_form_points(&p)?;
    ensure(pts == line_intersections(&p), || "closed forms differ from the pairwise line intersections".into())?;
    for (i, pt) in pts.iter().enumerate() {
        let b: Vec<(&str, Polynomial)> = ["X", "Y", "U", "V"]
            .iter()
            .zip(pt)
            .map(|(v, c)| Ok((*v, c.embed_into(&t)?)))
            .collect::<Result<_, PolyError>>()?;
        for f in [fa.clone(), fa.derivative("X")?, fa.derivative("Y")?, fa.derivative("U")?, fa.derivative("V")?] {
            let r = f.substitute(&b)?;
            ensure(r.is_zero(), || format!("p{} is not critical: residual {}", i + 1, r))?;
        }
    }
    let s = p.s();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        for c in [1, 3] {
            let d = &pts[i][c] - &pts[j][c];
            ensure(d.unit_ratio(&s).is_some(), || format!("p{} - p{} = {} is not a unit multiple of s", i + 1, j + 1, d))?;
        }
    }
    Ok(())
}

/// Singular points of F_a for exact a: three nodes off pi, one cusp on pi.
pub fn fa_singular_points(p: &FaParameters) -> Result<Vec<SingularPointRecord>, VerifierError> {
    let fa = fa_family(p)?;
    let pts = fa_closed_form_points(p)?;
    let mut values: Vec<[Cyclo; 4]> = Vec::new();
    for pt in &pts {
        let v: Vec<Cyclo> = pt.iter().map(|c| c.as_constant().ok_or(VerifierError::NotExact)).collect::<Result<_, _>>()?;
        let v: [Cyclo; 4] = v.try_into().expect("four coordinates");
        if !values.contains(&v) {
            values.push(v);
        }
    }
    let on_plane = p.on_plane().ok_or(VerifierError::NotExact)?;
    ensure(on_plane == (values.len() == 1), || format!("{} distinct points but s = {}", values.len(), p.s()))?;
    ensure(on_plane || values.len() == 3, || "off the plane the points must be pairwise distinct".into())?;
    let mut out = Vec::new();
    for v in values {
        let c = classify_singularity(&fa, &["X", "Y", "U", "V"], &v)?;
        out.push(SingularPointRecord {
            coords: PointCoords::Exact { values: v, scale: None },
            hessian_rank: c.hessian_rank,
            corank_data: c.corank_data,
            klass: c.klass,
            multiplicity: None,
        });
    }
    let want = if on_plane { SingularityClass::CA2IIxII } else { SingularityClass::Node };
    ensure(out.iter().all(|r| r.klass == want), || format!("expected every point to be {}", want))?;
    Ok(out)
}

/// p(a), the composite g(a) = i(p(a)) and s.
#[derive(Debug, Clone)]
pub struct GImage {
    pub pa: [Polynomial; 3],
    pub point: DeformationPoint,
    pub s: Polynomial,
}

/// The map i: a -> (lambda, mu, nu, sigma), nu stored as the coefficient of -w.
pub fn map_i(a: [&Polynomial; 3]) -> Result<DeformationPoint, PolyError> {
    let [x, y, z] = a;
    let e = Cyclo::eps();
    let e2 = Cyclo::eps_pow(2);
    let lambda = -(&(x * y) * z);
    let mu = -(&(&(x * z) + &(x * y)) + &(y * z));
    let nu = -(&(&(y * z) + &(x * z).scale(&e)) + &(x * y).scale(&e2));
    let sigma = -(&(x + &y.scale(&e)) + &z.scale(&e2));
    DeformationPoint::symbolic(lambda, mu, nu, sigma)
}

/// k times the rank-one matrix with rows (1, eps, eps^2), (eps^2, 1, eps), (eps, eps^2, 1).
pub fn p_matrix() -> [[Cyclo; 3]; 3] {
    let e = Cyclo::eps_pow;
    [[e(0), e(1), e(2)], [e(2), e(0), e(1)], [e(1), e(2), e(0)]]
}

pub fn map_g(p: &FaParameters) -> Result<GImage, VerifierError> {
    if p.k.is_zero() {
        return Err(VerifierError::ZeroScale);
    }
    let m = p_matrix();
    let a = p.abc();
    let pa: [Polynomial; 3] = std::array::from_fn(|r| {
        let row = (0..3).fold(Polynomial::zero(p.table()), |acc, c| &acc + &a[c].scale(&m[r][c]));
        &p.k * &row
    });
    let point = map_i([&pa[0], &pa[1], &pa[2]])?;
    let s = p.s();
    let k = &p.k;
    let t = p.table().clone();
    let expect = DeformationPoint::symbolic(
        -(&k.pow(3) * &s.pow(3)),
        Polynomial::zero(&t),
        Polynomial::zero(&t),
        (k * &s).scale(&Cyclo::from_int(-3)),
    )?;
    ensure(point == expect, || format!("g(a) = {} differs from {}", point, expect))?;

    // g(a) lies on C
    let c_eqs = ["s^3 - 27*l", "m", "n"];
    let bt = base_table();
    for eq in c_eqs {
        let v = eval_on(&parse(&bt, eq), &point)?;
        ensure(v.is_zero(), || format!("g(a) violates {} = 0: {}", eq, v))?;
    }

    // F_a at p(a) equals F_{g(a)} in the matching coordinates
    let pulled = FaParameters {
        alpha: pa[0].clone(),
        beta: pa[1].clone(),
        gamma: pa[2].clone(),
        xi: Polynomial::zero(&t),
        upsilon: Polynomial::zero(&t),
        k: p.k.clone(),
    };
    let fa = fa_family(&pulled)?;
    let ft = fa.table().clone();
    let fg = point.fiber()?;
    let renamed = fg.substitute_in(
        &ft,
        &[
            ("x", Polynomial::var(&ft, "X")?),
            ("y", Polynomial::var(&ft, "Y")?),
            ("z", Polynomial::var(&ft, "U")?),
            ("w", Polynomial::var(&ft, "V")?),
        ],
    )?;
    ensure_eq(&fa, &renamed, "pullback F_{p(a)} = F_{g(a)}")?;
    Ok(GImage { pa, point, s })
}

/// Facts about p and g that do not depend on a: rank p = 1, ker p = pi,
/// and the image of g meets {s = 0} only in the origin.
pub fn check_map_g_structure() -> Result<(), VerifierError> {
    let m: Vec<Vec<Cyclo>> = p_matrix().iter().map(|r| r.to_vec()).collect();
    ensure(matrix::rank(&m) == 1, || "p does not have rank 1".into())?;
    let e = Cyclo::eps_pow;
    for v in [[-e(1), e(0), Cyclo::zero()], [-e(2), Cyclo::zero(), e(0)]] {
        for row in &m {
            let dot: Cyclo = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            ensure(dot.is_zero(), || "kernel of p is not the plane pi".into())?;
        }
        let s = &(&v[0] + &(&e(1) * &v[1])) + &(&e(2) * &v[2]);
        ensure(s.is_zero(), || "pi basis vector has s != 0".into())?;
    }
    // with k != 0 and sigma = -3ks = 0 we get s = 0, hence lambda = -k^3 s^3 = 0
    let g = map_g(&FaParameters::symbolic())?;
    let lam_of_sigma = &g.point.sigma.pow(3).scale(&Cyclo::from_ratios(1, 27, 0, 1)) - &g.point.lambda;
    ensure(lam_of_sigma.is_zero(), || "lambda is not sigma^3/27 on the image of g".into())?;
    ensure(g.point.mu.is_zero() && g.point.nu.is_zero(), || "mu, nu do not vanish on the image of g".into())?;
    let s_image = induced_image_s()?;
    ensure(s_image.equations.len() == 1, || "S is not a hyperplane".into())?;
    Ok(())
}

/// Dimension bookkeeping for the small resolution of the cuspidal fiber product.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FriedmanReport {
    pub dimdef_x: i64,
    pub dimdef_xhat: i64,
    pub h12_tilde: i64,
    pub h11_tilde: i64,
    pub h12_hat: i64,
    pub h11_hat: i64,
    pub t1_local_total: i64,
    pub t1_x: i64,
    /// Dimension of the middle term shared by both rows.
    pub h2_theta: i64,
    pub lambda_e_rank: i64,
    pub row_exactness: Vec<(String, i64)>,
}

/// Moduli of the rational elliptic surface (an elliptic pencil in P^2).
pub const MODULI_Y: i64 = 8;
/// h^0(O_{P^1}(6)): sextics locating the six cuspidal fibers.
pub const SEXTICS: i64 = 7;
/// dim GL(2, C) acting on P^1.
pub const DIM_GL2: i64 = 4;
/// Drop of h^{1,2} across the transition; an external input, not derived here.
pub const H12_DROP: i64 = 16;
/// Rise of h^{1,1} across the transition (two blow-ups); an external input.
pub const H11_RISE: i64 = 2;
/// Cusps of the fiber product, one per cuspidal fiber.
pub const CUSPS: i64 = 6;
/// Local first-order deformations of the resolution per cusp (dimension of the curve C).
pub const LOCAL_DEF_PER_CUSP: i64 = 1;

fn alternating(row: &[i64]) -> i64 {
    row.iter().enumerate().map(|(i, v)| if i % 2 == 0 { *v } else { -*v }).sum()
}

pub fn friedman_report() -> Result<FriedmanReport, VerifierError> {
    let tjurina = tjurina_basis(&GermPresentation::new(singularity::cusp(), &singularity::GERM_VARS))?.len() as i64;
    let dimdef_x = 2 * MODULI_Y + SEXTICS - DIM_GL2;
    // the smoothing is a Calabi-Yau with Euler number 0
    let (h12_tilde, h11_tilde) = (dimdef_x, dimdef_x);
    let h12_hat = h12_tilde - H12_DROP;
    let h11_hat = h11_tilde + H11_RISE;
    let t1_local_total = CUSPS * tjurina;
    let local_def = CUSPS * LOCAL_DEF_PER_CUSP;
    // top row 0 -> A -> B -> C^6 -> H -> C^21 -> 0 with A -> B an isomorphism of
    // 3-dimensional spaces, so lambda_E = 0 and C^6 embeds in H: dim H = 6 + 21
    let (top_a, top_b) = (h12_hat, h12_hat);
    let lambda_e_rank = top_b - top_a;
    let h2_theta = local_def - lambda_e_rank + h11_hat;
    let top = [top_a, top_b, local_def, h2_theta, h11_hat];
    let bottom = [h12_hat, dimdef_x, t1_local_total, h2_theta, dimdef_x];
    let row_exactness = vec![("top".to_string(), alternating(&top)), ("bottom".to_string(), alternating(&bottom))];
    Ok(FriedmanReport {
        dimdef_x,
        dimdef_xhat: h12_hat,
        h12_tilde,
        h11_tilde,
        h12_hat,
        h11_hat,
        t1_local_total,
        t1_x: dimdef_x,
        h2_theta,
        lambda_e_rank,
        row_exactness,
    })
}

/// Largest coordinate distance between two lists of points, matched greedily.
pub fn max_distance(a: &[[Complex64; 4]], b: &[[Complex64; 4]]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut worst: f64 = 0.0;
    for p in a {
        let d = b
            .iter()
            .map(|q| p.iter().zip(q).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_of_products_is_s() {
        let s = induced_image_s().unwrap();
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.equations[0].to_string(), "s");
        let c = Cyclo::from_int;
        let p = induced_point(c(1), c(0), c(0), c(0));
        assert_eq!(p.as_exact().unwrap(), [c(1), c(0), c(0), c(0)]);
        let p = induced_point(c(2), c(3), c(5), c(7));
        let tuple: Vec<Cyclo> = p.tuple_convention().iter().map(|q| q.as_constant().unwrap()).collect();
        assert_eq!(tuple, vec![c(-3), c(3), c(-7), c(0)]);
    }

    #[test]
    fn three_node_derivation() {
        let loc = three_node_locus().unwrap();
        assert_eq!(loc.solutions.len(), 4);
        assert_eq!(loc.solutions[0].1.tuple_convention(), tuple_point(&DISPLAYED_SOLUTIONS[0]).tuple_convention());
        assert_eq!(loc.curve_c.equations.len(), 3);
    }

    #[test]
    fn transversality() {
        let t = curve_c_transversality().unwrap();
        assert_eq!(t.tangent, [Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::one()]);
        assert_eq!(t.s_equation_value, Cyclo::one());
        assert!(t.transversal);
    }

    #[test]
    fn fa_symbolic_identities() {
        check_fa_symbolic().unwrap();
        let zero = FaParameters::exact(Cyclo::zero(), Cyclo::zero(), Cyclo::zero());
        let f = fa_family(&zero).unwrap();
        assert_eq!(f, f.table().parse("X^2 - U^2 - Y^3 + V^3").unwrap());
    }

    #[test]
    fn fa_plane_membership_is_computed() {
        let e = Cyclo::eps();
        let p = FaParameters::exact(Cyclo::one(), e.pow(2), e.clone());
        assert_eq!(p.s().as_constant().unwrap(), Cyclo::from_int(3));
        assert_eq!(p.on_plane(), Some(false));
        let q = FaParameters::exact(-&e, Cyclo::one(), Cyclo::zero());
        assert_eq!(q.on_plane(), Some(true));
        let pts = fa_singular_points(&q).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].klass, SingularityClass::CA2IIxII);
        let pts = fa_singular_points(&p).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|r| r.klass == SingularityClass::Node));
    }

    #[test]
    fn g_composite() {
        let g = map_g(&FaParameters::symbolic()).unwrap();
        let t = g.s.table().clone();
        assert_eq!(g.point.lambda, t.parse("-k^3*(alpha + eps*beta + eps^2*gamma)^3").unwrap());
        assert_eq!(g.point.sigma, t.parse("-3*k*(alpha + eps*beta + eps^2*gamma)").unwrap());
        check_map_g_structure().unwrap();
        let zero_k = FaParameters::exact_full(Cyclo::one(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero());
        assert!(matches!(map_g(&zero_k), Err(VerifierError::ZeroScale)));
        let on_pi = FaParameters::exact(-Cyclo::eps(), Cyclo::one(), Cyclo::zero());
        assert!(map_g(&on_pi).unwrap().point.coords().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn friedman_numbers() {
        let r = friedman_report().unwrap();
        assert_eq!((r.dimdef_x, r.h12_hat, r.h11_hat, r.t1_local_total), (19, 3, 21, 24));
        assert_eq!(r.h2_theta, 27);
        assert_eq!(r.lambda_e_rank, 0);
        assert!(r.row_exactness.iter().all(|(_, v)| *v == 0));
    }
}

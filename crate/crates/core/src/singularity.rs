//! Tjurina algebras, the miniversal family of the cusp, singular loci of its
//! fibers and classification of the singular points.
//!
//! Coordinates are (x, y, z, w) and the cusp is F = x^2 - y^3 - z^2 + w^3.
//! Deformation parameters are l, m, n, s for lambda, mu, nu, sigma; the
//! family is F + l + m*y - n*w + s*y*w, so `n` is stored with the sign it
//! carries in front of w (the tuple (l, m, -n, s) is the other convention).

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo::Cyclo;
use crate::matrix;
use crate::numeric;
use crate::poly::univariate::RootError;
use crate::poly::{monomial_quotient_basis, Monomial, PolyError, Polynomial, Table, UniPoly, VarTable};

pub const GERM_VARS: [&str; 4] = ["x", "y", "z", "w"];
pub const PARAM_VARS: [&str; 4] = ["l", "m", "n", "s"];

/// Residual acceptance for numeric points, relative to the size of the terms.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Distinct numeric roots closer than this are reported as ambiguous.
pub const SEPARATION_TOL: f64 = 1e-6;
/// Residual acceptance once a nondegenerate critical point has been polished,
/// where the critical value is known to rounding accuracy.
pub const POLISHED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SingularityError {
    #[error("germ is not reducible to a monomial ideal: {0}")]
    NotMonomialReducible(String),
    #[error("critical point is not isolated: variable `{0}` is unbounded in the Tjurina algebra")]
    NotIsolated(String),
    #[error("the given point is not a critical point of the polynomial")]
    NotACriticalPoint,
    #[error("polynomial has non-numeric coefficients in `{0}`")]
    NotExact(String),
    #[error("exact factorization over Q(eps) failed for `{0}`; use numeric mode")]
    ExactFactorizationFailed(String),
    #[error("numeric roots {0} and {1} are closer than {SEPARATION_TOL:e} but do not form a multiple root")]
    ToleranceAmbiguity(String, String),
    #[error("exact mode needs numeric parameters or a single weighted scale: {0}")]
    SymbolicParameters(String),
    #[error("the zero polynomial has no isolated singular points")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the supported bound of 6")]
    DegreeTooLarge(usize),
    #[error("expected {expected} coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<RootError> for SingularityError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::ZeroPolynomial => SingularityError::ZeroPolynomial,
            RootError::ExactFactorizationFailed(p) => SingularityError::ExactFactorizationFailed(p),
        }
    }
}

/// Table (x, y, z, w).
pub fn germ_table() -> Table {
    VarTable::new(GERM_VARS).expect("distinct names")
}

/// Table (x, y, z, w, l, m, n, s) with s Laurent.
pub fn family_table() -> Table {
    VarTable::with_laurent(GERM_VARS.iter().chain(PARAM_VARS.iter()), &["s"]).expect("distinct names")
}

fn parse_in(table: &Table, text: &str) -> Polynomial {
    table.parse(text).expect("built-in expression parses")
}

/// F = x^2 - y^3 - z^2 + w^3 over the germ table.
pub fn cusp() -> Polynomial {
    parse_in(&germ_table(), "x^2 - y^3 - z^2 + w^3")
}

/// F_Lambda = F + l + m*y - n*w + s*y*w over [`family_table`].
pub fn cusp_family() -> Polynomial {
    parse_in(&family_table(), "x^2 - y^3 - z^2 + w^3 + l + m*y - n*w + s*y*w")
}

/// A germ f at a base point, in the listed variables.
#[derive(Debug, Clone)]
pub struct GermPresentation {
    pub f: Polynomial,
    pub vars: Vec<String>,
    pub base_point: Vec<Cyclo>,
}

impl GermPresentation {
    pub fn new(f: Polynomial, vars: &[&str]) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let base_point = vec![Cyclo::zero(); vars.len()];
        GermPresentation { f, vars, base_point }
    }

    pub fn at(mut self, point: Vec<Cyclo>) -> Self {
        self.base_point = point;
        self
    }

    /// Parse `text` over its own variables, in order of first appearance.
    pub fn parse(text: &str, vars: Option<&[&str]>) -> Result<Self, crate::poly::ParseError> {
        let names: Vec<String> = match vars {
            Some(v) => v.iter().map(|s| s.to_string()).collect(),
            None => crate::poly::identifiers(text)?,
        };
        let table = VarTable::new(&names).map_err(|e| crate::poly::ParseError { position: 0, message: e.to_string() })?;
        let f = table.parse(text)?;
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Ok(Self::new(f, &refs))
    }

    /// f translated so that the base point sits at the origin.
    pub fn centered(&self) -> Result<Polynomial, PolyError> {
        if self.base_point.len() != self.vars.len() {
            return Err(PolyError::UnknownVariable(format!("base point of length {}", self.base_point.len())));
        }
        let table = self.f.table().clone();
        let bindings = self
            .vars
            .iter()
            .zip(&self.base_point)
            .map(|(v, b)| Ok((v.as_str(), Polynomial::var(&table, v)? + Polynomial::constant(&table, b.clone()))))
            .collect::<Result<Vec<_>, PolyError>>()?;
        self.f.substitute(&bindings)
    }

    fn is_cusp(&self) -> bool {
        self.vars == GERM_VARS && self.base_point.iter().all(Zero::is_zero) && {
            let t = self.f.table();
            t.parse("x^2 - y^3 - z^2 + w^3").map(|c| c == self.f).unwrap_or(false)
        }
    }
}

/// Monomial basis of the Tjurina algebra C{vars}/((f) + J_f).
///
/// Supported germs are those whose partials are single terms and whose f
/// lies in the monomial ideal they generate (e.g. sums of pure powers).
pub fn tjurina_basis(g: &GermPresentation) -> Result<Vec<Monomial>, SingularityError> {
    let f = g.centered()?;
    let table = f.table().clone();
    for i in f.variables() {
        if !g.vars.iter().any(|v| v == table.name(i)) {
            return Err(SingularityError::NotExact(table.name(i).to_string()));
        }
    }
    if !f.homogeneous_part(0).is_zero() {
        // f is a unit at the point, so the algebra is zero
        return Ok(Vec::new());
    }
    let mut gens = Vec::new();
    for v in &g.vars {
        let d = f.derivative(v)?;
        if let Some(c) = d.as_constant() {
            if !c.is_zero() {
                return Ok(Vec::new());
            }
            continue;
        }
        if d.num_terms() != 1 {
            return Err(SingularityError::NotMonomialReducible(format!("d{}f = {} is not a single term", v, d)));
        }
        gens.push(d.terms().next().unwrap().0.clone());
    }
    for (m, _) in f.terms() {
        if !gens.iter().any(|g| g.divides(m)) {
            let t = Polynomial::monomial(&table, m.clone(), Cyclo::one());
            return Err(SingularityError::NotMonomialReducible(format!("term {} is not in the Jacobian ideal", t)));
        }
    }
    let vars: Vec<&str> = g.vars.iter().map(String::as_str).collect();
    monomial_quotient_basis(&gens, &table, &vars).map_err(|e| match e {
        PolyError::InfiniteQuotient(v) => SingularityError::NotIsolated(v),
        other => SingularityError::Poly(other),
    })
}

/// f plus one fresh parameter per Tjurina basis monomial.
#[derive(Debug, Clone)]
pub struct MiniversalFamily {
    pub family: Polynomial,
    pub parameters: Vec<String>,
    pub basis: Vec<Monomial>,
}

pub fn miniversal_family(g: &GermPresentation) -> Result<MiniversalFamily, SingularityError> {
    let basis = tjurina_basis(g)?;
    let parameters: Vec<String> = (0..basis.len())
        .map(|i| PARAM_VARS.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("t{}", i)))
        .collect();
    let base = g.f.table();
    let table = base.extend(&parameters);
    if table.len() != base.len() + parameters.len() {
        return Err(PolyError::DuplicateVariable(parameters.join(",")).into());
    }
    let cusp_sign = g.is_cusp();
    let mut family = g.f.embed_into(&table)?;
    for (m, p) in basis.iter().zip(&parameters) {
        let mono = Polynomial::monomial(base, m.clone(), Cyclo::one()).embed_into(&table)?;
        let mut term = &mono * &Polynomial::var(&table, p)?;
        if cusp_sign && mono == Polynomial::var(&table, "w")? {
            term = -term;
        }
        family = &family + &term;
    }
    Ok(MiniversalFamily { family, parameters, basis })
}

/// A point (lambda, mu, nu, sigma) of the base, nu stored as the coefficient of -w.
///
/// Coordinates are polynomials over `params`: constants for an exact point,
/// or expressions in symbolic parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationPoint {
    pub lambda: Polynomial,
    pub mu: Polynomial,
    pub nu: Polynomial,
    pub sigma: Polynomial,
}

impl DeformationPoint {
    pub fn exact(lambda: Cyclo, mu: Cyclo, nu: Cyclo, sigma: Cyclo) -> Self {
        let t = VarTable::new(Vec::<String>::new()).expect("empty table");
        DeformationPoint {
            lambda: Polynomial::constant(&t, lambda),
            mu: Polynomial::constant(&t, mu),
            nu: Polynomial::constant(&t, nu),
            sigma: Polynomial::constant(&t, sigma),
        }
    }

    pub fn from_ints(l: i64, m: i64, n: i64, s: i64) -> Self {
        Self::exact(Cyclo::from_int(l), Cyclo::from_int(m), Cyclo::from_int(n), Cyclo::from_int(s))
    }

    /// From the tuple (lambda, mu, -nu, sigma).
    pub fn from_tuple(t: [Cyclo; 4]) -> Self {
        let [l, m, n, s] = t;
        Self::exact(l, m, -n, s)
    }

    pub fn symbolic(lambda: Polynomial, mu: Polynomial, nu: Polynomial, sigma: Polynomial) -> Result<Self, PolyError> {
        for p in [&mu, &nu, &sigma] {
            if p.table() != lambda.table() {
                return Err(PolyError::TableMismatch);
            }
        }
        Ok(DeformationPoint { lambda, mu, nu, sigma })
    }

    pub fn params(&self) -> &Table {
        self.lambda.table()
    }

    pub fn coords(&self) -> [&Polynomial; 4] {
        [&self.lambda, &self.mu, &self.nu, &self.sigma]
    }

    pub fn as_exact(&self) -> Option<[Cyclo; 4]> {
        Some([
            self.lambda.as_constant()?,
            self.mu.as_constant()?,
            self.nu.as_constant()?,
            self.sigma.as_constant()?,
        ])
    }

    /// (lambda, mu, -nu, sigma).
    pub fn tuple_convention(&self) -> [Polynomial; 4] {
        [self.lambda.clone(), self.mu.clone(), -&self.nu, self.sigma.clone()]
    }

    pub fn to_complex(&self) -> Option<[Complex64; 4]> {
        self.as_exact().map(|c| c.map(|v| v.to_complex()))
    }

    /// F_Lambda over (x, y, z, w) followed by the parameter variables.
    pub fn fiber(&self) -> Result<Polynomial, PolyError> {
        let params = self.params();
        let mut names: Vec<String> = GERM_VARS.iter().map(|s| s.to_string()).collect();
        names.extend(params.names().iter().cloned());
        let laurent: Vec<&str> =
            (0..params.len()).filter(|&i| params.is_laurent(i)).map(|i| params.name(i)).collect();
        let table = VarTable::with_laurent(&names, &laurent)?;
        let b: Vec<(&str, Polynomial)> = PARAM_VARS
            .iter()
            .zip(self.coords())
            .map(|(v, c)| Ok((*v, c.embed_into(&table)?)))
            .collect::<Result<_, PolyError>>()?;
        cusp_family().substitute_in(&table, &b)
    }
}

impl fmt::Display for DeformationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l, m, n, s) = ({}, {}, {}, {})", self.lambda, self.mu, self.nu, self.sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SingularityClass {
    Node,
    #[serde(rename = "cA2_I1xII")]
    CA2I1xII,
    #[serde(rename = "cA2_IIxII")]
    CA2IIxII,
    DegenerateOther,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityClass::Node => "Node",
            SingularityClass::CA2I1xII => "cA2_I1xII",
            SingularityClass::CA2IIxII => "cA2_IIxII",
            SingularityClass::DegenerateOther => "DegenerateOther",
        })
    }
}

/// Hessian data of a critical point.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub klass: SingularityClass,
    pub hessian_rank: usize,
    /// Cubic part restricted to the Hessian kernel (exact mode only).
    pub corank_data: Option<Polynomial>,
}

/// Coordinates of a singular point.
#[derive(Debug, Clone, PartialEq)]
pub enum PointCoords {
    /// `values`, each multiplied by the symbolic `scale` when present.
    Exact { values: [Cyclo; 4], scale: Option<String> },
    Numeric([Complex64; 4]),
}

impl PointCoords {
    pub fn to_complex(&self) -> Option<[Complex64; 4]> {
        match self {
            PointCoords::Exact { values, scale: None } => Some(values.clone().map(|v| v.to_complex())),
            PointCoords::Exact { .. } => None,
            PointCoords::Numeric(c) => Some(*c),
        }
    }

    pub fn exact_values(&self) -> Option<&[Cyclo; 4]> {
        match self {
            PointCoords::Exact { values, scale: None } => Some(values),
            _ => None,
        }
    }

    pub fn display_entries(&self) -> Vec<String> {
        match self {
            PointCoords::Exact { values, scale } => values
                .iter()
                .map(|v| match scale {
                    None => v.to_string(),
                    Some(s) => {
                        let t = VarTable::new([s.as_str()]).expect("one name");
                        (Polynomial::var(&t, s).unwrap().scale(v)).to_string()
                    }
                })
                .collect(),
            PointCoords::Numeric(c) => c.iter().map(fmt_complex).collect(),
        }
    }
}

pub fn fmt_complex(z: &Complex64) -> String {
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{:.12}", re)
    } else {
        format!("{:.12}{:+.12}i", re, im)
    }
}

impl fmt::Display for PointCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.display_entries().join(", "))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPointRecord {
    pub coords: PointCoords,
    pub hessian_rank: usize,
    pub corank_data: Option<Polynomial>,
    pub klass: SingularityClass,
    /// Root multiplicity in the eliminated cubic (sigma != 0 only).
    pub multiplicity: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

/// Translate `f` by `point` in `vars`.
fn translate(f: &Polynomial, vars: &[&str], point: &[Cyclo]) -> Result<Polynomial, PolyError> {
    let t = f.table().clone();
    let b = vars
        .iter()
        .zip(point)
        .map(|(v, p)| Ok((*v, Polynomial::var(&t, v)? + Polynomial::constant(&t, p.clone()))))
        .collect::<Result<Vec<_>, PolyError>>()?;
    f.substitute(&b)
}

/// Classify the critical point `point` of `f` (exact, coordinates in `vars`).
pub fn classify_singularity(
    f: &Polynomial,
    vars: &[&str],
    point: &[Cyclo],
) -> Result<Classification, SingularityError> {
    if vars.len() != point.len() {
        return Err(SingularityError::WrongArity { expected: vars.len(), got: point.len() });
    }
    let table = f.table().clone();
    let idx: Vec<usize> = vars.iter().map(|v| table.index_of(v)).collect::<Result<_, _>>()?;
    if let Some(i) = f.variables().into_iter().find(|i| !idx.contains(i)) {
        return Err(SingularityError::NotExact(table.name(i).to_string()));
    }
    let g = translate(f, vars, point)?;
    if !g.homogeneous_part(0).is_zero() || !g.homogeneous_part(1).is_zero() {
        return Err(SingularityError::NotACriticalPoint);
    }
    let n = vars.len();
    let origin: Vec<(&str, Cyclo)> = vars.iter().map(|v| (*v, Cyclo::zero())).collect();
    let mut h = vec![vec![Cyclo::zero(); n]; n];
    for i in 0..n {
        let di = g.derivative(vars[i])?;
        for j in 0..n {
            h[i][j] = di.derivative(vars[j])?.eval(&origin)?;
        }
    }
    let rank = matrix::rank(&h);
    let cubic = g.homogeneous_part(3);
    let (klass, corank_data) = match rank {
        r if r == n => (SingularityClass::Node, None),
        r if r + 1 == n => {
            let v = matrix::kernel(&h).remove(0);
            let t = VarTable::new(["t"])?;
            let tv = Polynomial::var(&t, "t")?;
            let b: Vec<(&str, Polynomial)> = vars.iter().zip(&v).map(|(name, c)| (*name, tv.scale(c))).collect();
            let restricted = cubic.substitute_in(&t, &b)?;
            let klass = if restricted.is_zero() { SingularityClass::DegenerateOther } else { SingularityClass::CA2I1xII };
            (klass, Some(restricted))
        }
        r if r + 2 == n => {
            let free: Vec<usize> = (0..n).filter(|&i| h[i].iter().all(Zero::is_zero)).collect();
            if free.len() == 2 {
                let zero = Polynomial::zero(&table);
                let b: Vec<(&str, Polynomial)> =
                    (0..n).filter(|i| !free.contains(i)).map(|i| (vars[i], zero.clone())).collect();
                let restricted = cubic.substitute(&b)?;
                let pure = |i: usize| restricted.coefficient(&Monomial::var(table.len(), idx[i], 3));
                let klass = if free.iter().all(|&i| !pure(i).is_zero()) {
                    SingularityClass::CA2IIxII
                } else {
                    SingularityClass::DegenerateOther
                };
                (klass, Some(restricted))
            } else {
                (SingularityClass::DegenerateOther, None)
            }
        }
        _ => (SingularityClass::DegenerateOther, None),
    };
    Ok(Classification { klass, hessian_rank: rank, corank_data })
}

/// The three conditions on (y, w) at x = z = 0 for a singular point of the family.
///
/// Returns [3y^2 - s*w - m, 3w^2 + s*y - n, s*y*w + 2m*y - 2n*w + 3l], the last being
/// 3F - y*F_y - w*F_w at x = z = 0, over the table of `family`.
pub fn conditions(family: &Polynomial) -> Result<[Polynomial; 3], PolyError> {
    let t = family.table().clone();
    let zero = Polynomial::zero(&t);
    let slice = family.substitute(&[("x", zero.clone()), ("z", zero)])?;
    let fy = slice.derivative("y")?;
    let fw = slice.derivative("w")?;
    let y = Polynomial::var(&t, "y")?;
    let w = Polynomial::var(&t, "w")?;
    let three = Cyclo::from_int(3);
    let euler = &(&slice.scale(&three) - &(&y * &fy)) - &(&w * &fw);
    Ok([-fy, fw, euler])
}

/// (R1, R2) obtained by eliminating w = (3y^2 - mu)/sigma from the second and third
/// conditions, scaled by sigma^2 and sigma respectively. `mu` and `sigma` live in
/// the table of `conds`; sigma must be a unit there.
pub fn eliminate_w(
    conds: &[Polynomial; 3],
    mu: &Polynomial,
    sigma: &Polynomial,
) -> Result<(Polynomial, Polynomial), PolyError> {
    let t = conds[0].table().clone();
    let s_inv = sigma
        .unit_inverse()
        .ok_or_else(|| PolyError::NonUnitLeadingCoefficient(sigma.to_string()))?;
    let y = Polynomial::var(&t, "y")?;
    let w_expr = &(&(&y * &y).scale(&Cyclo::from_int(3)) - mu) * &s_inv;
    let r1 = sigma * &(sigma * &conds[1].substitute(&[("w", w_expr.clone())])?);
    let r2 = sigma * &conds[2].substitute(&[("w", w_expr)])?;
    Ok((r1, r2))
}

/// Singular points of the fiber of the cusp family over `lambda`.
pub fn singular_locus(lambda: &DeformationPoint, mode: Mode) -> Result<Vec<SingularPointRecord>, SingularityError> {
    match mode {
        Mode::Exact => singular_locus_exact(lambda),
        Mode::Numeric => {
            let c = match lambda.to_complex() {
                Some(c) => c,
                None => return Err(SingularityError::SymbolicParameters(lambda.to_string())),
            };
            singular_locus_numeric(c)
        }
    }
}

/// If every coordinate is c * t^weight for one parameter t (weights 3, 2, 2, 1),
/// return (t, coordinates at t = 1).
fn weighted_scale(p: &DeformationPoint) -> Option<(String, [Cyclo; 4])> {
    let params = p.params();
    let mut scale: Option<usize> = None;
    let mut vals = Vec::new();
    for (coord, weight) in p.coords().into_iter().zip([3, 2, 2, 1]) {
        if coord.is_zero() {
            vals.push(Cyclo::zero());
            continue;
        }
        if coord.num_terms() != 1 {
            return None;
        }
        let (m, c) = coord.terms().next().unwrap();
        let support: Vec<usize> = m.support().collect();
        if support.len() != 1 || m.exponent(support[0]) != weight {
            return None;
        }
        if scale.is_some_and(|s| s != support[0]) {
            return None;
        }
        scale = Some(support[0]);
        vals.push(c.clone());
    }
    let s = scale?;
    (!vals[3].is_zero()).then(|| (params.name(s).to_string(), [vals[0].clone(), vals[1].clone(), vals[2].clone(), vals[3].clone()]))
}

fn singular_locus_exact(lambda: &DeformationPoint) -> Result<Vec<SingularPointRecord>, SingularityError> {
    if let Some(vals) = lambda.as_exact() {
        return exact_points(&vals, None);
    }
    let (scale, vals) =
        weighted_scale(lambda).ok_or_else(|| SingularityError::SymbolicParameters(lambda.to_string()))?;
    let records = exact_points(&vals, Some(scale.clone()))?;
    // the scaled points must be singular on the symbolic fiber itself
    let fiber = lambda.fiber()?;
    let t = fiber.table().clone();
    let sv = Polynomial::var(&t, &scale)?;
    for r in &records {
        if let PointCoords::Exact { values, .. } = &r.coords {
            let b: Vec<(&str, Polynomial)> =
                GERM_VARS.iter().zip(values).map(|(v, c)| (*v, sv.scale(c))).collect();
            let mut polys = vec![fiber.clone()];
            for v in GERM_VARS {
                polys.push(fiber.derivative(v)?);
            }
            if polys.iter().any(|p| !p.substitute(&b).map(|q| q.is_zero()).unwrap_or(false)) {
                return Err(SingularityError::SymbolicParameters(format!(
                    "scaled point {} is not singular on {}",
                    r.coords, fiber
                )));
            }
        }
    }
    Ok(records)
}

fn exact_points(vals: &[Cyclo; 4], scale: Option<String>) -> Result<Vec<SingularPointRecord>, SingularityError> {
    let [l, m, n, s] = vals;
    let point = DeformationPoint::exact(l.clone(), m.clone(), n.clone(), s.clone());
    let fiber = point.fiber()?;
    let t = fiber.table().clone();
    let conds = conditions(&fiber)?;
    let mut found: Vec<([Cyclo; 4], Option<usize>)> = Vec::new();
    if !s.is_zero() {
        let (r1, r2) = eliminate_w(&conds, &Polynomial::constant(&t, m.clone()), &Polynomial::constant(&t, s.clone()))?;
        let (u1, u2) = (r1.to_univariate("y")?, r2.to_univariate("y")?);
        let common = u1.gcd(&u2);
        if common.degree().unwrap_or(0) > 0 {
            for (y0, _) in common.exact_roots()? {
                let w0 = (&(&(&y0 * &y0) * &Cyclo::from_int(3)) - m) / s.clone();
                let mult = u2.multiplicity(&y0);
                found.push(([Cyclo::zero(), y0, Cyclo::zero(), w0], Some(mult)));
            }
        }
    } else {
        let three = Cyclo::from_int(3);
        let ys = UniPoly::new(vec![-m, Cyclo::zero(), three.clone()]).exact_roots()?;
        let ws = UniPoly::new(vec![-n, Cyclo::zero(), three]).exact_roots()?;
        for (y0, _) in &ys {
            for (w0, _) in &ws {
                let pt = [("x", Cyclo::zero()), ("y", y0.clone()), ("z", Cyclo::zero()), ("w", w0.clone())];
                if conds[2].eval(&pt)?.is_zero() {
                    found.push(([Cyclo::zero(), y0.clone(), Cyclo::zero(), w0.clone()], None));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (values, multiplicity) in found {
        let c = classify_singularity(&fiber, &GERM_VARS, &values)?;
        out.push(SingularPointRecord {
            coords: PointCoords::Exact { values, scale: scale.clone() },
            hessian_rank: c.hessian_rank,
            corank_data: c.corank_data,
            klass: c.klass,
            multiplicity,
        });
    }
    Ok(out)
}

fn rel_small(value: Complex64, scale: f64, tol: f64) -> bool {
    value.norm() <= tol * (1.0 + scale)
}

/// Numeric singular locus for complex parameters (lambda, mu, nu, sigma).
pub fn singular_locus_numeric(p: [Complex64; 4]) -> Result<Vec<SingularPointRecord>, SingularityError> {
    let [l, m, n, s] = p;
    let zero = Complex64::new(0.0, 0.0);
    let size = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut candidates: Vec<(Complex64, Complex64, Option<usize>)> = Vec::new();
    if s.norm() > 1e-12 * (1.0 + size) {
        // R2 = 3 s y^3 - 6 n y^2 + m s y + 2 m n + 3 l s
        let r2 = [2.0 * m * n + 3.0 * l * s, m * s, -6.0 * n, 3.0 * s];
        for (y0, mult) in cluster_roots(&r2)? {
            candidates.push((y0, (3.0 * y0 * y0 - m) / s, Some(mult)));
        }
    } else {
        let ys = dedup_pm((m / 3.0).sqrt());
        let ws = dedup_pm((n / 3.0).sqrt());
        for &y0 in &ys {
            for &w0 in &ws {
                candidates.push((y0, w0, None));
            }
        }
    }
    let family = cusp_family();
    let mut out = Vec::new();
    for (y0, w0, mult) in candidates {
        let (y0, w0, tol) = match polish_critical(y0, w0, m, n, s) {
            Some((y1, w1)) => (y1, w1, POLISHED_TOL),
            None => (y0, w0, RESIDUAL_TOL),
        };
        let conds = [
            (3.0 * y0 * y0 - s * w0 - m, (3.0 * y0 * y0).norm() + (s * w0).norm() + m.norm()),
            (3.0 * w0 * w0 + s * y0 - n, (3.0 * w0 * w0).norm() + (s * y0).norm() + n.norm()),
            (
                s * y0 * w0 + 2.0 * m * y0 - 2.0 * n * w0 + 3.0 * l,
                (s * y0 * w0).norm() + (2.0 * m * y0).norm() + (2.0 * n * w0).norm() + 3.0 * l.norm(),
            ),
        ];
        if !conds.iter().all(|(v, sc)| rel_small(*v, *sc, tol)) {
            continue;
        }
        let values = [zero, y0, zero, w0, l, m, n, s];
        let (klass, rank) = classify_numeric(&family, &values, 4)?;
        out.push(SingularPointRecord {
            coords: PointCoords::Numeric([zero, y0, zero, w0]),
            hessian_rank: rank,
            corank_data: None,
            klass,
            multiplicity: mult,
        });
    }
    Ok(out)
}

/// Newton on the gradient equations 3y^2 - s w - m = 0, 3w^2 + s y - n = 0.
/// `None` when the Jacobian is nearly singular or the iteration drifts, in which
/// case the candidate is tested as found.
fn polish_critical(
    y: Complex64,
    w: Complex64,
    m: Complex64,
    n: Complex64,
    s: Complex64,
) -> Option<(Complex64, Complex64)> {
    let (mut y1, mut w1) = (y, w);
    for _ in 0..8 {
        let (a, b, d) = (6.0 * y1, -s, 6.0 * w1);
        let det = a * d + s * s;
        let size = a.norm().max(b.norm()).max(d.norm());
        if det.norm() <= 1e-6 * size * size || !det.is_finite() {
            return None;
        }
        let g1 = 3.0 * y1 * y1 - s * w1 - m;
        let g2 = 3.0 * w1 * w1 + s * y1 - n;
        y1 -= (d * g1 - b * g2) / det;
        w1 -= (a * g2 - s * g1) / det;
    }
    let moved = (y1 - y).norm().max((w1 - w).norm());
    (moved <= SEPARATION_TOL * (1.0 + y.norm().max(w.norm()))).then_some((y1, w1))
}

fn dedup_pm(r: Complex64) -> Vec<Complex64> {
    if r.norm() < 1e-300 {
        vec![r]
    } else {
        vec![r, -r]
    }
}

/// Distinct roots with multiplicities. Approximate roots that cluster are merged
/// when their mean annihilates the matching derivatives; a cluster that fails the
/// test while closer than [`SEPARATION_TOL`] is an error.
fn cluster_roots(coeffs: &[Complex64]) -> Result<Vec<(Complex64, usize)>, SingularityError> {
    let roots = numeric::aberth_roots(coeffs);
    let n = roots.len();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        let radius = 1e-3 * (1.0 + roots[i].norm());
        let members: Vec<usize> = (i..n).filter(|&j| !used[j] && (roots[j] - roots[i]).norm() < radius).collect();
        if members.len() > 1 {
            let mean: Complex64 = members.iter().map(|&j| roots[j]).sum::<Complex64>() / members.len() as f64;
            let z = refine_multiple_root(coeffs, mean, members.len());
            if is_multiple_root(coeffs, z, members.len()) {
                for &j in &members {
                    used[j] = true;
                }
                out.push((z, members.len()));
                continue;
            }
            for &j in &members[1..] {
                if (roots[j] - roots[i]).norm() < SEPARATION_TOL * (1.0 + roots[i].norm()) {
                    return Err(SingularityError::ToleranceAmbiguity(fmt_complex(&roots[i]), fmt_complex(&roots[j])));
                }
            }
        }
        used[i] = true;
        out.push((roots[i], 1));
    }
    Ok(out)
}

fn derivative_coeffs(c: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut c = c.to_vec();
    for _ in 0..k {
        c = c.iter().enumerate().skip(1).map(|(i, v)| v * i as f64).collect();
    }
    c
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, b| a * z + b)
}

/// A root of multiplicity m is a simple root of the (m-1)-th derivative; polish it there.
fn refine_multiple_root(coeffs: &[Complex64], z0: Complex64, m: usize) -> Complex64 {
    let d = derivative_coeffs(coeffs, m - 1);
    let dd = derivative_coeffs(&d, 1);
    let mut z = z0;
    for _ in 0..50 {
        let step = horner(&d, z) / horner(&dd, z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 1e-17 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn is_multiple_root(coeffs: &[Complex64], z: Complex64, m: usize) -> bool {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    let mut mags: Vec<f64> = coeffs.iter().map(|v| v.norm()).collect();
    for _ in 0..m {
        let val = c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, b| a * z + b);
        let scale: f64 = mags.iter().enumerate().map(|(k, a)| a * z.norm().powi(k as i32)).sum();
        if val.norm() > 1e-8 * scale.max(1e-300) {
            return false;
        }
        c = c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
        mags = mags.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
    }
    true
}

/// Numeric class of a critical point; `values` covers every variable of the table
/// of `f` and the first `germ` variables are the germ coordinates.
pub fn classify_numeric(
    f: &Polynomial,
    values: &[Complex64],
    germ: usize,
) -> Result<(SingularityClass, usize), SingularityError> {
    let t = f.table().clone();
    let names: Vec<String> = (0..germ).map(|i| t.name(i).to_string()).collect();
    let mut h = vec![vec![Complex64::new(0.0, 0.0); germ]; germ];
    let mut d3 = vec![vec![vec![Complex64::new(0.0, 0.0); germ]; germ]; germ];
    for i in 0..germ {
        let di = f.derivative(&names[i])?;
        for j in 0..germ {
            let dij = di.derivative(&names[j])?;
            h[i][j] = dij.eval_complex(values);
            for k in 0..germ {
                d3[i][j][k] = dij.derivative(&names[k])?.eval_complex(values);
            }
        }
    }
    let tol = 1e-7;
    let (rank, ker) = numeric::numeric_kernel(&h, tol);
    let cubic = |v: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..germ {
            for j in 0..germ {
                for k in 0..germ {
                    acc += d3[i][j][k] * v[i] * v[j] * v[k];
                }
            }
        }
        acc / 6.0
    };
    let scale = h.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    let klass = match rank {
        r if r == germ => SingularityClass::Node,
        r if r + 1 == germ => {
            if cubic(&ker[0]).norm() > tol {
                SingularityClass::CA2I1xII
            } else {
                SingularityClass::DegenerateOther
            }
        }
        r if r + 2 == germ => {
            let free: Vec<usize> =
                (0..germ).filter(|&i| h[i].iter().all(|z| z.norm() <= tol * scale)).collect();
            let pure_cubes = free.iter().all(|&i| d3[i][i][i].norm() > tol);
            if free.len() == 2 && pure_cubes {
                SingularityClass::CA2IIxII
            } else {
                SingularityClass::DegenerateOther
            }
        }
        _ => SingularityClass::DegenerateOther,
    };
    Ok((klass, rank))
}

/// A singular point (0, 0, 0, 0, t0) of the fiber product {X^2 - Y^3 - B(t) = 0, U^2 - V^3 - B(t) = 0}.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberProductPoint {
    pub t0: RootValue,
    /// Least i with B^(i)(t0) != 0.
    pub vanishing_order: usize,
    /// Rank of the 2x5 Jacobian at the point (always < 2 here).
    pub jacobian_rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootValue {
    Exact(Cyclo),
    Numeric(Complex64),
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootValue::Exact(c) => write!(f, "{}", c),
            RootValue::Numeric(z) => write!(f, "{}", fmt_complex(z)),
        }
    }
}

/// Singular points of the fiber product over the roots of B (a polynomial in `var`).
///
/// For a root of order > 1 the singular locus also contains curves through the
/// reported point; only the point over the origin of (X, Y, U, V) is returned.
pub fn fiber_product_singular_locus(b: &Polynomial, var: &str) -> Result<Vec<FiberProductPoint>, SingularityError> {
    let u = b.to_univariate(var)?;
    let deg = u.degree().ok_or(SingularityError::ZeroPolynomial)?;
    if deg > 6 {
        return Err(SingularityError::DegreeTooLarge(deg));
    }
    let table = VarTable::new(["X", "Y", "U", "V", "t"])?;
    let bt = Polynomial::from_univariate(&table, "t", &u)?;
    let e1 = &parse_in(&table, "X^2 - Y^3") - &bt;
    let e2 = &parse_in(&table, "U^2 - V^3") - &bt;
    let mut jac_rows: Vec<Vec<Polynomial>> = Vec::new();
    for e in [&e1, &e2] {
        jac_rows.push(["X", "Y", "U", "V", "t"].iter().map(|v| e.derivative(v)).collect::<Result<_, _>>()?);
    }
    let mut out = Vec::new();
    for (factor, order) in u.squarefree_decomposition() {
        match factor.exact_roots() {
            Ok(roots) => {
                for (t0, _) in roots {
                    let pt = [Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero(), t0.clone()];
                    debug_assert!(e1.eval_vec(&pt)?.is_zero() && e2.eval_vec(&pt)?.is_zero());
                    let jac: Vec<Vec<Cyclo>> = jac_rows
                        .iter()
                        .map(|row| row.iter().map(|p| p.eval_vec(&pt)).collect::<Result<_, _>>())
                        .collect::<Result<_, PolyError>>()?;
                    let mut d = u.clone();
                    let mut i = 0;
                    while d.eval(&t0).is_zero() {
                        d = d.derivative();
                        i += 1;
                    }
                    debug_assert_eq!(i, order);
                    out.push(FiberProductPoint {
                        t0: RootValue::Exact(t0),
                        vanishing_order: i,
                        jacobian_rank: matrix::rank(&jac),
                    });
                }
            }
            Err(_) => {
                for z in factor.numeric_roots() {
                    let zero = Complex64::new(0.0, 0.0);
                    let pt = [zero, zero, zero, zero, z];
                    let jac: Vec<Vec<Complex64>> =
                        jac_rows.iter().map(|row| row.iter().map(|p| p.eval_complex(&pt)).collect()).collect();
                    out.push(FiberProductPoint {
                        t0: RootValue::Numeric(z),
                        vanishing_order: order,
                        jacobian_rank: numeric::numeric_rank(&jac, 1e-9),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(basis: &[Monomial], t: &Table) -> Vec<String> {
        basis.iter().map(|m| Polynomial::monomial(t, m.clone(), Cyclo::one()).to_string()).collect()
    }

    #[test]
    fn tjurina_examples() {
        let g = GermPresentation::parse("x^2 - y^3 - z^2 + w^3", None).unwrap();
        assert_eq!(names(&tjurina_basis(&g).unwrap(), g.f.table()), ["1", "y", "w", "y*w"]);
        let g = GermPresentation::parse("x^2 - y^3", None).unwrap();
        assert_eq!(names(&tjurina_basis(&g).unwrap(), g.f.table()), ["1", "y"]);
        let g = GermPresentation::parse("x", None).unwrap();
        assert!(tjurina_basis(&g).unwrap().is_empty());
    }

    #[test]
    fn tjurina_rejects_unsupported() {
        let g = GermPresentation::parse("x^2 + x*y + y^3", None).unwrap();
        assert!(matches!(tjurina_basis(&g), Err(SingularityError::NotMonomialReducible(_))));
        let g = GermPresentation::parse("x^2", Some(&["x", "y"])).unwrap();
        assert!(matches!(tjurina_basis(&g), Err(SingularityError::NotIsolated(_))));
    }

    #[test]
    fn miniversal_examples() {
        let g = GermPresentation::new(cusp(), &GERM_VARS);
        let fam = miniversal_family(&g).unwrap();
        assert_eq!(fam.parameters, ["l", "m", "n", "s"]);
        let t = fam.family.table().clone();
        assert_eq!(fam.family, t.parse("x^2 - y^3 - z^2 + w^3 + l + m*y - n*w + s*y*w").unwrap());

        let g = GermPresentation::parse("x^2 - y^3", None).unwrap();
        let fam = miniversal_family(&g).unwrap();
        let t = fam.family.table().clone();
        assert_eq!(fam.family, t.parse("x^2 - y^3 + l + m*y").unwrap());

        let g = GermPresentation::parse("x", None).unwrap();
        let fam = miniversal_family(&g).unwrap();
        assert!(fam.parameters.is_empty());
        assert_eq!(fam.family.to_string(), "x");
    }

    #[test]
    fn conditions_match_the_family() {
        let fam = cusp_family();
        let t = fam.table().clone();
        let [c1, c2, c3] = conditions(&fam).unwrap();
        assert_eq!(c1, t.parse("3*y^2 - s*w - m").unwrap());
        assert_eq!(c2, t.parse("3*w^2 + s*y - n").unwrap());
        assert_eq!(c3, t.parse("s*y*w + 2*m*y - 2*n*w + 3*l").unwrap());
    }

    fn e() -> Cyclo {
        Cyclo::eps()
    }

    #[test]
    fn three_nodes_at_sigma_three() {
        let pts = singular_locus(&DeformationPoint::from_ints(1, 0, 0, 3), Mode::Exact).unwrap();
        assert_eq!(pts.len(), 3);
        let expect = [
            [Cyclo::zero(), Cyclo::from_int(-1), Cyclo::zero(), Cyclo::one()],
            [Cyclo::zero(), -e(), Cyclo::zero(), e().pow(2)],
            [Cyclo::zero(), -e().pow(2), Cyclo::zero(), e()],
        ];
        for x in &expect {
            let r = pts.iter().find(|r| r.coords.exact_values() == Some(x)).expect("point present");
            assert_eq!(r.klass, SingularityClass::Node);
            assert_eq!(r.hessian_rank, 4);
            assert_eq!(r.multiplicity, Some(1));
        }
    }

    #[test]
    fn central_and_smooth_fibers() {
        let pts = singular_locus(&DeformationPoint::from_ints(0, 0, 0, 0), Mode::Exact).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].klass, SingularityClass::CA2IIxII);
        assert!(singular_locus(&DeformationPoint::from_ints(1, 0, 0, 0), Mode::Exact).unwrap().is_empty());
    }

    #[test]
    fn lambda_one_has_a_single_cusp() {
        // tuple (-10, 9, -9, 6), stored nu = 9
        let pts = singular_locus(&DeformationPoint::from_ints(-10, 9, 9, 6), Mode::Exact).unwrap();
        assert_eq!(pts.len(), 1);
        let want = [Cyclo::zero(), Cyclo::one(), Cyclo::zero(), Cyclo::from_int(-1)];
        assert_eq!(pts[0].coords.exact_values(), Some(&want));
        assert_ne!(pts[0].klass, SingularityClass::Node);
        // the y,w block of the Hessian is [[-6, 6], [6, -6]]: rank 3 overall, zero cubic on the kernel
        assert_eq!((pts[0].klass, pts[0].hessian_rank), (SingularityClass::DegenerateOther, 3));
        assert_eq!(pts[0].multiplicity, Some(3));
    }

    #[test]
    fn symbolic_sigma_scale() {
        let t = VarTable::with_laurent(["s"], &["s"]).unwrap();
        let p = DeformationPoint::symbolic(
            t.parse("s^3/27").unwrap(),
            Polynomial::zero(&t),
            Polynomial::zero(&t),
            t.parse("s").unwrap(),
        )
        .unwrap();
        let pts = singular_locus(&p, Mode::Exact).unwrap();
        assert_eq!(pts.len(), 3);
        let shown: Vec<String> = pts.iter().map(|r| r.coords.to_string()).collect();
        assert!(shown.contains(&"(0, -1/3*s, 0, 1/3*s)".to_string()), "{shown:?}");
        let q = DeformationPoint::symbolic(
            t.parse("s^2").unwrap(),
            Polynomial::zero(&t),
            Polynomial::zero(&t),
            t.parse("s").unwrap(),
        )
        .unwrap();
        assert!(matches!(singular_locus(&q, Mode::Exact), Err(SingularityError::SymbolicParameters(_))));
    }

    #[test]
    fn classification_examples() {
        let f = cusp();
        let o = vec![Cyclo::zero(); 4];
        let c = classify_singularity(&f, &GERM_VARS, &o).unwrap();
        assert_eq!((c.klass, c.hessian_rank), (SingularityClass::CA2IIxII, 2));

        // mu = 3, nu = 0, sigma = 0: y = +-1, w = 0, lambda from the third condition
        for (y, l) in [(1, -2), (-1, 2)] {
            let p = DeformationPoint::from_ints(l, 3, 0, 0);
            let pt = [Cyclo::zero(), Cyclo::from_int(y), Cyclo::zero(), Cyclo::zero()];
            let c = classify_singularity(&p.fiber().unwrap(), &GERM_VARS, &pt).unwrap();
            assert_eq!((c.klass, c.hessian_rank), (SingularityClass::CA2I1xII, 3));
        }

        let p = DeformationPoint::from_ints(1, 0, 0, 3);
        let pt = [Cyclo::zero(), Cyclo::from_int(-1), Cyclo::zero(), Cyclo::one()];
        let c = classify_singularity(&p.fiber().unwrap(), &GERM_VARS, &pt).unwrap();
        assert_eq!(c.klass, SingularityClass::Node);

        let bad = [Cyclo::one(), Cyclo::zero(), Cyclo::zero(), Cyclo::zero()];
        assert_eq!(classify_singularity(&f, &GERM_VARS, &bad), Err(SingularityError::NotACriticalPoint));
    }

    #[test]
    fn numeric_agrees_on_examples() {
        for p in [
            DeformationPoint::from_ints(1, 0, 0, 3),
            DeformationPoint::from_ints(-10, 9, 9, 6),
            DeformationPoint::from_ints(0, 0, 0, 0),
            DeformationPoint::from_ints(1, 0, 0, 0),
            DeformationPoint::from_ints(-2, 3, 0, 0),
        ] {
            let ex = singular_locus(&p, Mode::Exact).unwrap();
            let nu = singular_locus(&p, Mode::Numeric).unwrap();
            assert_eq!(ex.len(), nu.len(), "{p}");
            for r in &ex {
                let a = r.coords.to_complex().unwrap();
                let hit = nu.iter().find(|q| {
                    let b = q.coords.to_complex().unwrap();
                    a.iter().zip(&b).all(|(u, v)| (u - v).norm() < 1e-8)
                });
                let hit = hit.unwrap_or_else(|| panic!("no numeric match for {} at {p}", r.coords));
                assert_eq!(hit.klass, r.klass);
            }
        }
    }

    #[test]
    fn nearly_singular_critical_point_is_rejected() {
        // a second critical point 3e-3 from the node has critical value ~3e-10
        let p = DeformationPoint::exact(
            Cyclo::from_int(-16),
            Cyclo::from_ratios(0, 1, 2, 3),
            Cyclo::from_ratios(-12, 1, -12, 1),
            Cyclo::from_ratios(1, 3, 0, 1),
        );
        assert_eq!(singular_locus(&p, Mode::Exact).unwrap().len(), 1);
        assert_eq!(singular_locus(&p, Mode::Numeric).unwrap().len(), 1);
    }

    #[test]
    fn fiber_product_sextic() {
        let t = VarTable::new(["t"]).unwrap();
        let pts = fiber_product_singular_locus(&t.parse("t^6 - 1").unwrap(), "t").unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.iter().all(|p| p.vanishing_order == 1 && p.jacobian_rank < 2));
        assert!(fiber_product_singular_locus(&t.parse("1").unwrap(), "t").unwrap().is_empty());
        let one = fiber_product_singular_locus(&t.parse("t").unwrap(), "t").unwrap();
        assert_eq!(one, vec![FiberProductPoint { t0: RootValue::Exact(Cyclo::zero()), vanishing_order: 1, jacobian_rank: 1 }]);
        let double = fiber_product_singular_locus(&t.parse("t^2*(t - 1)").unwrap(), "t").unwrap();
        assert!(double.iter().any(|p| p.t0 == RootValue::Exact(Cyclo::zero()) && p.vanishing_order == 2));
        let irr = fiber_product_singular_locus(&t.parse("t^2 - 2").unwrap(), "t").unwrap();
        assert!(irr.iter().all(|p| matches!(p.t0, RootValue::Numeric(_))));
        assert_eq!(irr.len(), 2);
    }
}

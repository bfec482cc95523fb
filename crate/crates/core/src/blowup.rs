//! Blow-ups of affine charts along codimension-2 coordinate centers.
//!
//! A chart keeps the ambient coordinates together with one affine coordinate
//! for every projective line introduced so far. Blowing up {a = b = 0} adds
//! a line P^1[c0, c1] with c1*a = c0*b; in the chart where c0 is the active
//! coordinate (c1 = 1) we substitute a = c0*b and divide each equation by the
//! largest power of b, and symmetrically for c1.

use thiserror::Error;

use num_traits::{One, Zero};

use crate::cyclo::Cyclo;
use crate::matrix;
use crate::poly::{Monomial, PolyError, Polynomial, Table, VarTable};
use crate::singularity::{classify_singularity, SingularityClass, SingularityError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlowupError {
    #[error("center form `{0}` is not a coordinate of the chart")]
    CenterNotLinear(String),
    #[error("center forms must be two distinct coordinates")]
    DependentCenter,
    #[error("no equation vanishes on the center {0}")]
    NothingToTransform(String),
    #[error("point does not lie on the chart: {0}")]
    PointNotOnVariety(String),
    #[error("point is missing a value for `{0}`")]
    MissingCoordinate(String),
    #[error("no chart covers the requested point")]
    NoChart,
    #[error("chart consistency failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Singularity(Box<SingularityError>),
}

impl From<SingularityError> for BlowupError {
    fn from(e: SingularityError) -> Self {
        BlowupError::Singularity(Box::new(e))
    }
}

/// A projective line introduced by one blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveFactor {
    /// Display symbol, e.g. "μ".
    pub symbol: String,
    /// Homogeneous coordinate names, e.g. ["mu0", "mu1"].
    pub coords: [String; 2],
    /// Index of the coordinate kept as affine variable; the other one is set to 1.
    pub active: usize,
    /// Center (a, b) with coords[1]*a = coords[0]*b.
    pub center: [String; 2],
}

#[derive(Debug, Clone)]
pub struct ChartVariety {
    pub equations: Vec<Polynomial>,
    pub label: String,
    pub factors: Vec<ProjectiveFactor>,
    /// Number of leading equations that are chart relations a - c*b.
    pub relations: usize,
}

impl ChartVariety {
    pub fn new(equations: Vec<Polynomial>) -> Result<Self, BlowupError> {
        let table = equations.first().map(|e| e.table().clone()).ok_or(BlowupError::NoChart)?;
        let equations = equations.iter().map(|e| e.embed_into(&table)).collect::<Result<_, _>>()?;
        Ok(ChartVariety { equations, label: String::new(), factors: Vec::new(), relations: 0 })
    }

    pub fn parse(vars: &[&str], equations: &[&str]) -> Result<Self, BlowupError> {
        let t = VarTable::new(vars)?;
        let eqs = equations
            .iter()
            .map(|e| t.parse(e).map_err(|p| BlowupError::Inconsistent(p.to_string())))
            .collect::<Result<_, _>>()?;
        Self::new(eqs)
    }

    pub fn table(&self) -> &Table {
        self.equations[0].table()
    }

    pub fn vars(&self) -> &[String] {
        self.table().names()
    }

    /// Equations coming from the variety itself, not from chart relations.
    pub fn proper_equations(&self) -> &[Polynomial] {
        &self.equations[self.relations..]
    }

    /// The bi-homogeneous system over the ambient coordinates and every
    /// projective line, obtained by homogenizing each active coordinate.
    pub fn global_system(&self) -> Result<Vec<Polynomial>, BlowupError> {
        let mut names: Vec<String> = self
            .vars()
            .iter()
            .filter(|v| !self.factors.iter().any(|f| f.coords.contains(v)))
            .cloned()
            .collect();
        for f in &self.factors {
            names.extend(f.coords.iter().cloned());
        }
        let t = VarTable::new(&names)?;
        let mut eqs: Vec<Polynomial> = self.equations.iter().map(|e| e.embed_into(&t)).collect::<Result<_, _>>()?;
        for f in &self.factors {
            let (act, other) = (t.index_of(&f.coords[f.active])?, t.index_of(&f.coords[1 - f.active])?);
            eqs = eqs.iter().map(|e| homogenize(e, act, other)).collect();
        }
        Ok(eqs)
    }
}

/// Multiply each term by other^(d - deg_act) where d is the top degree in `act`.
fn homogenize(e: &Polynomial, act: usize, other: usize) -> Polynomial {
    let d = e.degree_in(act).unwrap_or(0);
    Polynomial::from_terms(
        e.table(),
        e.terms().map(|(m, c)| {
            let mut ex = m.exponents().to_vec();
            ex[other] += d - ex[act];
            (Monomial::new(ex), c.clone())
        }),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCenter {
    pub forms: [Polynomial; 2],
}

impl BlowupCenter {
    /// Center {a = b = 0} for two coordinates of `table`.
    pub fn coordinates(table: &Table, a: &str, b: &str) -> Result<Self, BlowupError> {
        Self::new([Polynomial::var(table, a)?, Polynomial::var(table, b)?])
    }

    /// Each form must be a nonzero multiple of a single coordinate.
    pub fn new(forms: [Polynomial; 2]) -> Result<Self, BlowupError> {
        let c = BlowupCenter { forms };
        let [a, b] = c.coordinate_names()?;
        if a == b {
            return Err(BlowupError::DependentCenter);
        }
        Ok(c)
    }

    pub fn coordinate_names(&self) -> Result<[String; 2], BlowupError> {
        let name = |p: &Polynomial| -> Result<String, BlowupError> {
            let not_lin = || BlowupError::CenterNotLinear(p.to_string());
            if p.num_terms() != 1 || p.total_degree() != Some(1) {
                return Err(not_lin());
            }
            let v = p.variables();
            let i = *v.iter().next().ok_or_else(not_lin)?;
            Ok(p.table().name(i).to_string())
        };
        Ok([name(&self.forms[0])?, name(&self.forms[1])?])
    }
}

impl std::fmt::Display for BlowupCenter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.forms[0], self.forms[1])
    }
}

const SYMBOLS: [(&str, &str); 4] = [("μ", "mu"), ("ν", "nu"), ("ρ", "rho"), ("κ", "kappa")];

#[derive(Debug, Clone)]
pub struct BlowupResult {
    /// Chart 0 has active coordinate c0 (a = c0*b); chart 1 has c1 (b = c1*a).
    pub charts: [ChartVariety; 2],
    pub global: Vec<Polynomial>,
}

/// Strict transform of `v` under the blow-up of `c`.
///
/// Both charts are returned; the global system is homogenized from chart 0 and
/// checked against chart 1 after eliminating the exceptional relation.
pub fn blowup_strict_transform(v: &ChartVariety, c: &BlowupCenter) -> Result<BlowupResult, BlowupError> {
    let [a, b] = c.coordinate_names()?;
    let t = v.table().clone();
    t.index_of(&a)?;
    t.index_of(&b)?;
    let zero = Polynomial::zero(&t);
    let on_center = |e: &Polynomial| e.substitute(&[(a.as_str(), zero.clone()), (b.as_str(), zero.clone())]);
    let mut vanishing = false;
    for e in v.proper_equations() {
        vanishing |= on_center(e)?.is_zero();
    }
    if !vanishing {
        return Err(BlowupError::NothingToTransform(c.to_string()));
    }

    let (symbol, stem) = SYMBOLS[v.factors.len().min(SYMBOLS.len() - 1)];
    let coords = [format!("{}0", stem), format!("{}1", stem)];
    let chart = |active: usize| -> Result<ChartVariety, BlowupError> {
        let ct = t.extend([&coords[active]]);
        // active 0: a = c0*b, exceptional b; active 1: b = c1*a, exceptional a
        let (sub, exc) = if active == 0 { (&a, &b) } else { (&b, &a) };
        let image = &Polynomial::var(&ct, &coords[active])? * &Polynomial::var(&ct, exc)?;
        let e_idx = ct.index_of(exc)?;
        let mut eqs = vec![&Polynomial::var(&ct, sub)? - &image];
        for old in &v.equations {
            let s = old.substitute_in(&ct, &[(sub.as_str(), image.clone())])?;
            eqs.push(strip_power(&s, e_idx)?);
        }
        // keep earlier relations first, then the new one, then the transformed equations
        let mut ordered: Vec<Polynomial> = eqs[1..=v.relations].to_vec();
        ordered.push(eqs[0].clone());
        ordered.extend(eqs[v.relations + 1..].iter().cloned());
        let mut factors = v.factors.clone();
        factors.push(ProjectiveFactor {
            symbol: symbol.to_string(),
            coords: coords.clone(),
            active,
            center: [a.clone(), b.clone()],
        });
        let prefix = if v.label.is_empty() { String::new() } else { format!("{}/", v.label) };
        Ok(ChartVariety {
            equations: ordered,
            label: format!("{}bl{{{},{}}}/{}-chart{}", prefix, a, b, symbol, active),
            factors,
            relations: v.relations + 1,
        })
    };
    let charts = [chart(0)?, chart(1)?];
    let global = charts[0].global_system()?;
    check_charts_agree(&charts, &global)?;
    Ok(BlowupResult { charts, global })
}

/// Divide by the largest power of the variable `e` dividing every term.
fn strip_power(p: &Polynomial, e: usize) -> Result<Polynomial, PolyError> {
    let k = p.terms().map(|(m, _)| m.exponent(e)).min().unwrap_or(0);
    if k == 0 {
        return Ok(p.clone());
    }
    Ok(Polynomial::from_terms(
        p.table(),
        p.terms().map(|(m, c)| {
            let mut ex = m.exponents().to_vec();
            ex[e] -= k;
            (Monomial::new(ex), c.clone())
        }),
    ))
}

/// Dehomogenize the global system at chart 1 and compare, modulo the new relation, with chart 1.
fn check_charts_agree(charts: &[ChartVariety; 2], global: &[Polynomial]) -> Result<(), BlowupError> {
    let c1 = &charts[1];
    let f = c1.factors.last().expect("just pushed");
    let g1 = c1.global_system()?;
    for (x, y) in global.iter().zip(&g1) {
        if !agree_in_chart1(x, y, f)? {
            return Err(BlowupError::Inconsistent(format!("{} vs {} in {}", x, y, c1.label)));
        }
    }
    Ok(())
}

/// Set c0 = 1, substitute b = c1*a and compare up to a nonzero constant.
fn agree_in_chart1(x: &Polynomial, y: &Polynomial, f: &ProjectiveFactor) -> Result<bool, PolyError> {
    let t = x.table().clone();
    let bind = [
        (f.coords[0].as_str(), Polynomial::one(&t)),
        (f.center[1].as_str(), &Polynomial::var(&t, &f.coords[1])? * &Polynomial::var(&t, &f.center[0])?),
    ];
    let rx = x.substitute_in(&t, &bind)?;
    let ry = y.embed_into(&t)?.substitute_in(&t, &bind)?;
    Ok((rx.is_zero() && ry.is_zero()) || rx.unit_ratio(&ry).is_some_and(|u| u.as_constant().is_some()))
}

/// Jacobian criterion at an exact point: rank equals the number of equations.
pub fn is_smooth_at(v: &ChartVariety, point: &[(&str, Cyclo)]) -> Result<bool, BlowupError> {
    let vars = v.vars().to_vec();
    let mut values = Vec::with_capacity(vars.len());
    for name in &vars {
        let val = point.iter().find(|(n, _)| n == name).map(|(_, c)| c.clone());
        values.push(val.ok_or_else(|| BlowupError::MissingCoordinate(name.clone()))?);
    }
    for e in &v.equations {
        let r = e.eval_vec(&values)?;
        if !r.is_zero() {
            return Err(BlowupError::PointNotOnVariety(format!("`{}` evaluates to {}", e, r)));
        }
    }
    let mut jac = Vec::new();
    for e in &v.equations {
        let row = vars.iter().map(|x| e.derivative(x)?.eval_vec(&values)).collect::<Result<Vec<_>, _>>()?;
        jac.push(row);
    }
    Ok(matrix::rank(&jac) == v.equations.len())
}

/// Point of P^1 x ... x P^1 over the ambient origin.
pub type ProjectivePoint = Vec<[Cyclo; 2]>;

/// Pick the chart covering `proj` and return the affine coordinates of the point.
pub fn locate<'a>(
    charts: &'a [ChartVariety],
    ambient: &[(&str, Cyclo)],
    proj: &ProjectivePoint,
) -> Result<(&'a ChartVariety, Vec<(String, Cyclo)>), BlowupError> {
    for ch in charts {
        if ch.factors.len() != proj.len() {
            continue;
        }
        let mut pt: Vec<(String, Cyclo)> = ambient.iter().map(|(n, c)| (n.to_string(), c.clone())).collect();
        let mut fits = true;
        for (f, p) in ch.factors.iter().zip(proj) {
            let denom = &p[1 - f.active];
            match denom.inv() {
                Ok(d) => pt.push((f.coords[f.active].clone(), &p[f.active] * &d)),
                Err(_) => fits = false,
            }
        }
        if fits {
            return Ok((ch, pt));
        }
    }
    Err(BlowupError::NoChart)
}

/// Smoothness at a point of the exceptional locus given projectively.
pub fn is_smooth_at_projective(
    charts: &[ChartVariety],
    ambient: &[(&str, Cyclo)],
    proj: &ProjectivePoint,
) -> Result<bool, BlowupError> {
    let (ch, pt) = locate(charts, ambient, proj)?;
    let refs: Vec<(&str, Cyclo)> = pt.iter().map(|(n, c)| (n.as_str(), c.clone())).collect();
    is_smooth_at(ch, &refs)
}

/// The cusp written as xy = uv[(1+eps)v - eps u].
pub fn cusp_chart() -> ChartVariety {
    ChartVariety::parse(&["x", "y", "u", "v"], &["x*y - u*v*((1 + eps)*v - eps*u)"]).expect("fixed input")
}

/// Final system of the double blow-up, as displayed.
pub const DISPLAYED_FIRST: [&str; 2] = ["mu1*x - mu0*u", "mu0*y - mu1*v*((1 + eps)*v - eps*u)"];
pub const DISPLAYED_FINAL: [&str; 3] =
    ["mu1*x - mu0*u", "nu1*y - nu0*v", "mu0*nu0 - mu1*nu1*((1 + eps)*v - eps*u)"];

/// Both blow-ups of the cusp, with the four final charts.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub first: BlowupResult,
    /// Second blow-up along {y, v} performed on each first-level chart.
    pub second: [BlowupResult; 2],
}

impl Resolution {
    pub fn final_charts(&self) -> Vec<ChartVariety> {
        self.second.iter().flat_map(|r| r.charts.iter().cloned()).collect()
    }

    pub fn global(&self) -> &[Polynomial] {
        &self.second[0].global
    }
}

pub fn resolve_cusp() -> Result<Resolution, BlowupError> {
    let v = cusp_chart();
    let first = blowup_strict_transform(&v, &BlowupCenter::coordinates(v.table(), "x", "u")?)?;
    let second = [0, 1].map(|i| {
        let ch = &first.charts[i];
        BlowupCenter::coordinates(ch.table(), "y", "v").and_then(|c| blowup_strict_transform(ch, &c))
    });
    let [s0, s1] = second;
    let second = [s0?, s1?];
    let r = Resolution { first, second };
    // the global system must not depend on the first-level chart it was computed from
    let mu = &r.first.charts[1].factors[0];
    for (x, y) in r.second[0].global.iter().zip(&r.second[1].global) {
        if !agree_in_chart1(x, y, mu)? {
            return Err(BlowupError::Inconsistent(format!("{} vs {}", x, y)));
        }
    }
    Ok(r)
}

/// Compare a computed system with displayed equations, each up to a nonzero constant.
pub fn matches_displayed(system: &[Polynomial], shown: &[&str]) -> Result<bool, BlowupError> {
    if system.len() != shown.len() {
        return Ok(false);
    }
    let t = system[0].table();
    for (e, s) in system.iter().zip(shown) {
        let want = t.parse(s).map_err(|p| BlowupError::Inconsistent(p.to_string()))?;
        if !e.unit_ratio(&want).is_some_and(|u| u.as_constant().is_some()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The substitution a = c*b followed by c = a/b gives back b^k times the original.
pub fn check_chart_inverse(original: &ChartVariety, result: &BlowupResult) -> Result<(), BlowupError> {
    for ch in &result.charts {
        let f = ch.factors.last().expect("blown-up chart");
        let (sub, exc) = if f.active == 0 { (&f.center[0], &f.center[1]) } else { (&f.center[1], &f.center[0]) };
        let names = ch.vars().to_vec();
        let lt = VarTable::with_laurent(&names, &[exc.as_str()])?;
        let inverse = &Polynomial::var(&lt, sub)? * &Polynomial::var(&lt, exc)?.powi(-1)?;
        // transformed equations keep their order; the new relation sits just before the proper ones
        let transformed = ch.equations.iter().enumerate().filter(|(i, _)| *i + 1 != ch.relations).map(|(_, e)| e);
        for (old, new) in original.equations.iter().zip(transformed) {
            let back = new.embed_into(&lt)?.substitute_in(&lt, &[(f.coords[f.active].as_str(), inverse.clone())])?;
            let old = old.embed_into(&lt)?;
            let ok = back.unit_ratio(&old).is_some_and(|u| {
                u.as_unit().is_some_and(|(_, m)| m.support().all(|i| lt.name(i) == exc.as_str()))
            });
            if !ok {
                return Err(BlowupError::Inconsistent(format!("{} does not return to {} in {}", back, old, ch.label)));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalFiber {
    /// Fiber equation over the ambient origin, in the homogeneous coordinates.
    pub equation: Polynomial,
    /// One coordinate hyperplane per component, e.g. mu0 = 0.
    pub components: Vec<String>,
    /// Pairwise intersections, one point of P^1 x P^1 each.
    pub intersections: Vec<ProjectivePoint>,
}

/// Restrict the global system to the origin; the survivor must be a monomial.
pub fn exceptional_fiber(global: &[Polynomial], factors: &[ProjectiveFactor]) -> Result<ExceptionalFiber, BlowupError> {
    let t = global[0].table().clone();
    let proj: Vec<&String> = factors.iter().flat_map(|f| f.coords.iter()).collect();
    let zero = Polynomial::zero(&t);
    let ambient: Vec<(&str, Polynomial)> =
        t.names().iter().filter(|n| !proj.contains(n)).map(|n| (n.as_str(), zero.clone())).collect();
    let restricted: Vec<Polynomial> = global.iter().map(|e| e.substitute_in(&t, &ambient)).collect::<Result<_, _>>()?;
    let nonzero: Vec<&Polynomial> = restricted.iter().filter(|e| !e.is_zero()).collect();
    if nonzero.len() != 1 {
        return Err(BlowupError::Inconsistent(format!("expected one fiber equation, got {:?}", nonzero)));
    }
    let equation = nonzero[0].clone();
    let (_, mono) = equation
        .as_unit()
        .or_else(|| (equation.num_terms() == 1).then(|| equation.terms().next().map(|(m, c)| (c.clone(), m.clone()))).flatten())
        .ok_or_else(|| BlowupError::Inconsistent(format!("fiber {} is not a monomial", equation)))?;
    let components: Vec<String> = mono.support().map(|i| t.name(i).to_string()).collect();
    let factor_of = |c: &str| factors.iter().position(|f| f.coords.iter().any(|x| x == c));
    let mut intersections = Vec::new();
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            let (fa, fb) = (factor_of(a), factor_of(b));
            if fa == fb {
                continue;
            }
            let point: ProjectivePoint = factors
                .iter()
                .map(|f| {
                    let mut p = [Cyclo::one(), Cyclo::one()];
                    for (k, c) in f.coords.iter().enumerate() {
                        if c == a || c == b {
                            p[k] = Cyclo::zero();
                        }
                    }
                    p
                })
                .collect();
            intersections.push(point);
        }
    }
    Ok(ExceptionalFiber { equation, components, intersections })
}

/// Classification of the first-level chart at the ambient origin with mu = (0:1).
pub fn intermediate_singularity(first: &BlowupResult) -> Result<(bool, SingularityClass), BlowupError> {
    let ch = &first.charts[0];
    let at: Vec<(&str, Cyclo)> = ch.vars().iter().map(|n| (n.as_str(), Cyclo::zero())).collect();
    let smooth = is_smooth_at(ch, &at)?;
    // x is eliminated by the relation x = mu0*u; the rest is a hypersurface in (y, u, v, mu0)
    let t = ch.table();
    let hyper = ch.equations[1].substitute_in(t, &[("x", &Polynomial::var(t, "mu0")? * &Polynomial::var(t, "u")?)])?;
    let class = classify_singularity(&hyper, &["y", "u", "v", "mu0"], &vec![Cyclo::zero(); 4])?.klass;
    Ok((smooth, class))
}

/// Flop partners: offset i -> center of the plane blown up.
pub fn flop_center_table() -> Vec<(u32, BlowupCenter)> {
    let t = cusp_chart().table().clone();
    [(0, "x", "u"), (2, "x", "v"), (3, "y", "u")]
        .into_iter()
        .map(|(o, a, b)| (o, BlowupCenter::coordinates(&t, a, b).expect("coordinates")))
        .collect()
}

/// Dimension of the fiber over the origin for a single blow-up of the cusp: the
/// number of free homogeneous coordinates minus one, when every equation vanishes.
pub fn single_blowup_fiber(c: &BlowupCenter) -> Result<usize, BlowupError> {
    let r = blowup_strict_transform(&cusp_chart(), c)?;
    let f = r.charts[0].factors.last().expect("factor").clone();
    let t = r.global[0].table().clone();
    let zero = Polynomial::zero(&t);
    let ambient: Vec<(&str, Polynomial)> =
        ["x", "y", "u", "v"].iter().map(|n| (*n, zero.clone())).collect();
    for e in &r.global {
        let z = e.substitute_in(&t, &ambient)?;
        if !z.is_zero() {
            return Err(BlowupError::Inconsistent(format!("fiber over 0 is cut by {} in {}", z, f.symbol)));
        }
    }
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_blowup_matches_display() {
        let r = blowup_strict_transform(&cusp_chart(), &BlowupCenter::coordinates(cusp_chart().table(), "x", "u").unwrap())
            .unwrap();
        assert!(matches_displayed(&r.global, &DISPLAYED_FIRST).unwrap());
        assert_eq!(r.charts[0].label, "bl{x,u}/μ-chart0");
        assert_eq!(r.charts[0].equations[1].to_string(), r.charts[0].table().parse("mu0*y - (1+eps)*v^2 + eps*u*v").unwrap().to_string());
        check_chart_inverse(&cusp_chart(), &r).unwrap();
    }

    #[test]
    fn final_system_and_fiber() {
        let r = resolve_cusp().unwrap();
        assert!(matches_displayed(r.global(), &DISPLAYED_FINAL).unwrap());
        let labels: Vec<String> = r.final_charts().iter().map(|c| c.label.clone()).collect();
        assert!(labels.contains(&"bl{x,u}/μ-chart0/bl{y,v}/ν-chart0".to_string()));
        let fib = exceptional_fiber(r.global(), &r.second[0].charts[0].factors).unwrap();
        assert_eq!(fib.components, vec!["mu0".to_string(), "nu0".to_string()]);
        assert_eq!(fib.intersections, vec![vec![[Cyclo::zero(), Cyclo::one()], [Cyclo::zero(), Cyclo::one()]]]);
    }

    #[test]
    fn node_then_smooth() {
        let r = resolve_cusp().unwrap();
        let (smooth, class) = intermediate_singularity(&r.first).unwrap();
        assert!(!smooth);
        assert_eq!(class, SingularityClass::Node);
        let zero = Cyclo::zero;
        let amb = [("x", zero()), ("y", zero()), ("u", zero()), ("v", zero())];
        let p = vec![[zero(), Cyclo::one()], [zero(), Cyclo::one()]];
        assert!(is_smooth_at_projective(&r.final_charts(), &amb, &p).unwrap());
        let p = vec![[zero(), Cyclo::one()], [Cyclo::one(), zero()]];
        assert!(is_smooth_at_projective(&r.final_charts(), &amb, &p).unwrap());
    }

    #[test]
    fn hyperplane_through_center() {
        let v = ChartVariety::parse(&["x", "y", "u", "v"], &["x"]).unwrap();
        let r = blowup_strict_transform(&v, &BlowupCenter::coordinates(v.table(), "x", "u").unwrap()).unwrap();
        let t = r.global[0].table();
        assert_eq!(r.global[1], t.parse("mu0").unwrap());
        assert_eq!(r.charts[1].equations[1].as_constant(), Some(Cyclo::one()));
    }

    #[test]
    fn twice_along_same_center() {
        let v = cusp_chart();
        let r = blowup_strict_transform(&v, &BlowupCenter::coordinates(v.table(), "x", "u").unwrap()).unwrap();
        let ch = &r.charts[0];
        let again = blowup_strict_transform(ch, &BlowupCenter::coordinates(ch.table(), "x", "u").unwrap());
        assert!(matches!(again, Err(BlowupError::NothingToTransform(_))));
    }

    #[test]
    fn bad_centers() {
        let t = cusp_chart().table().clone();
        let q = t.parse("x + u").unwrap();
        assert!(matches!(BlowupCenter::new([q, t.parse("v").unwrap()]), Err(BlowupError::CenterNotLinear(_))));
        let x = t.parse("x").unwrap();
        assert!(matches!(BlowupCenter::new([x.clone(), x.scale(&Cyclo::from_int(2))]), Err(BlowupError::DependentCenter)));
    }

    #[test]
    fn flop_centers() {
        let table = flop_center_table();
        let names: Vec<(u32, [String; 2])> = table.iter().map(|(o, c)| (*o, c.coordinate_names().unwrap())).collect();
        assert_eq!(names[1], (2, ["x".to_string(), "v".to_string()]));
        assert_eq!(names[2], (3, ["y".to_string(), "u".to_string()]));
        for (_, c) in &table {
            assert_eq!(single_blowup_fiber(c).unwrap(), 1);
        }
    }
}

//! Sparse multivariate polynomials over Q(eps).
//!
//! Variables live in a shared [`VarTable`]; a variable may be flagged Laurent,
//! in which case negative exponents are allowed for it. All denominators that
//! occur in the cusp computations are powers of the deformation parameter
//! sigma, so flagging it Laurent replaces a rational-function field.

mod parse;
pub mod univariate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclo::{ArithError, Cyclo};

pub use parse::{identifiers, ParseError};
pub use univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials are defined over different variable tables")]
    TableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in table")]
    DuplicateVariable(String),
    #[error("variable `{0}` is bound to a non-unit but occurs with a negative exponent")]
    NonUnitLaurentSubstitution(String),
    #[error("negative exponent for non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("no value bound for variable `{0}`")]
    UnboundVariable(String),
    #[error("leading coefficient `{0}` is not a unit of the coefficient ring")]
    NonUnitLeadingCoefficient(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("main variable `{0}` of a univariate division must not be Laurent")]
    LaurentMainVariable(String),
    #[error("quotient is infinite: variable `{0}` is not bounded by any generator")]
    InfiniteQuotient(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Ordered variable names with per-variable Laurent flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    laurent: Vec<bool>,
}

pub type Table = Arc<VarTable>;

impl VarTable {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Table, PolyError> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let laurent = vec![false; names.len()];
        Self::from_parts(names, laurent)
    }

    /// Table in which the variables listed in `laurent_names` admit negative exponents.
    pub fn with_laurent<S: AsRef<str>>(
        names: impl IntoIterator<Item = S>,
        laurent_names: &[&str],
    ) -> Result<Table, PolyError> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        for l in laurent_names {
            if !names.iter().any(|n| n == l) {
                return Err(PolyError::UnknownVariable(l.to_string()));
            }
        }
        let laurent = names.iter().map(|n| laurent_names.contains(&n.as_str())).collect();
        Self::from_parts(names, laurent)
    }

    fn from_parts(names: Vec<String>, laurent: Vec<bool>) -> Result<Table, PolyError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, laurent }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, PolyError> {
        self.index(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    /// New table with extra (non-Laurent) variables appended; existing names are skipped.
    pub fn extend<S: AsRef<str>>(&self, more: impl IntoIterator<Item = S>) -> Table {
        let mut names = self.names.clone();
        let mut laurent = self.laurent.clone();
        for m in more {
            let m = m.as_ref();
            if !names.iter().any(|n| n == m) {
                names.push(m.to_string());
                laurent.push(false);
            }
        }
        Arc::new(VarTable { names, laurent })
    }

    /// Parse a polynomial in the text grammar over this table.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, ParseError> {
        parse::parse(self, text)
    }
}

/// Exponent vector aligned with a [`VarTable`].
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i)
    }

    /// `self` divides `other` componentwise (non-negative monomials).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    fn with_exponent(&self, i: usize, e: i32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial: no stored coefficient is zero, so equality is symbolic identity.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    table: Table,
    terms: BTreeMap<Monomial, Cyclo>,
}

impl Polynomial {
    pub fn zero(table: &Table) -> Self {
        Polynomial { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Table) -> Self {
        Self::constant(table, Cyclo::one())
    }

    pub fn constant(table: &Table, c: Cyclo) -> Self {
        Self::monomial(table, Monomial::one(table.len()), c)
    }

    pub fn monomial(table: &Table, m: Monomial, c: Cyclo) -> Self {
        assert_eq!(m.len(), table.len(), "monomial length does not match table");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { table: table.clone(), terms }
    }

    pub fn var(table: &Table, name: &str) -> Result<Self, PolyError> {
        let i = table.index_of(name)?;
        Ok(Self::monomial(table, Monomial::var(table.len(), i, 1), Cyclo::one()))
    }

    pub fn from_terms(table: &Table, terms: impl IntoIterator<Item = (Monomial, Cyclo)>) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Cyclo {
        self.terms.get(m).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((c, m))` when the polynomial is a single term c*m whose inverse is representable.
    pub fn as_unit(&self) -> Option<(Cyclo, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let invertible = m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || self.table.is_laurent(i));
        invertible.then(|| (c.clone(), m.clone()))
    }

    pub fn unit_inverse(&self) -> Option<Polynomial> {
        let (c, m) = self.as_unit()?;
        Some(Self::monomial(&self.table, m.inverse(), c.inv().ok()?))
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect()
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.variables().into_iter().map(|i| self.table.name(i).to_string()).collect()
    }

    fn add_term(&mut self, m: Monomial, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_table(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_table(other)?;
        let mut out = Polynomial::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.checked_mul(m)?, c.clone());
        }
        Ok(Polynomial { table: self.table.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, e: i64) -> Result<Polynomial, PolyError> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let inv = self
            .unit_inverse()
            .ok_or_else(|| PolyError::NonUnitLaurentSubstitution(self.to_string()))?;
        Ok(inv.pow(e.unsigned_abs() as u32))
    }

    /// Formal partial derivative; Laurent variables use the same power rule.
    pub fn derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self.table.index_of(var)?;
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e != 0 {
                out.add_term(m.with_exponent(i, e - 1), &(c * &Cyclo::from_int(e as i64)));
            }
        }
        Ok(out)
    }

    /// Substitute polynomials for variables, producing a polynomial over `target`.
    ///
    /// Variables without a binding are carried over by name and must exist in
    /// `target`. A variable occurring with a negative exponent must be bound to a unit.
    pub fn substitute_in(
        &self,
        target: &Table,
        bindings: &[(&str, Polynomial)],
    ) -> Result<Polynomial, PolyError> {
        let mut images: Vec<Option<Polynomial>> = vec![None; self.table.len()];
        for (name, p) in bindings {
            let i = self.table.index_of(name)?;
            if p.table != *target {
                return Err(PolyError::TableMismatch);
            }
            images[i] = Some(p.clone());
        }
        let used = self.variables();
        for &i in &used {
            if images[i].is_none() {
                images[i] = Some(Polynomial::var(target, self.table.name(i))?);
            }
        }
        let mut cache: BTreeMap<(usize, i32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i);
                let key = (i, e);
                if !cache.contains_key(&key) {
                    let img = images[i].as_ref().unwrap();
                    let pw = img.powi(e as i64).map_err(|_| {
                        PolyError::NonUnitLaurentSubstitution(self.table.name(i).to_string())
                    })?;
                    cache.insert(key, pw);
                }
                t = t.checked_mul(&cache[&key])?;
            }
            out = out.checked_add(&t)?;
        }
        out.check_exponents()?;
        Ok(out)
    }

    /// Substitute within the same table (or the table of the bindings).
    pub fn substitute(&self, bindings: &[(&str, Polynomial)]) -> Result<Polynomial, PolyError> {
        let target = bindings.first().map(|(_, p)| p.table.clone()).unwrap_or_else(|| self.table.clone());
        self.substitute_in(&target, bindings)
    }

    /// Re-express over another table that contains every used variable.
    pub fn embed_into(&self, target: &Table) -> Result<Polynomial, PolyError> {
        self.substitute_in(target, &[])
    }

    fn check_exponents(&self) -> Result<(), PolyError> {
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e < 0 && !self.table.is_laurent(i) {
                    return Err(PolyError::NegativeExponent(self.table.name(i).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Exact evaluation; every variable that occurs must be bound.
    pub fn eval(&self, point: &[(&str, Cyclo)]) -> Result<Cyclo, PolyError> {
        let mut values: Vec<Option<&Cyclo>> = vec![None; self.table.len()];
        for (name, v) in point {
            values[self.table.index_of(name)?] = Some(v);
        }
        let mut acc = Cyclo::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                let v = values[i].ok_or_else(|| PolyError::UnboundVariable(self.table.name(i).to_string()))?;
                t *= &v.powi(m.exponent(i) as i64)?;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluate with values given positionally for every table variable.
    pub fn eval_vec(&self, values: &[Cyclo]) -> Result<Cyclo, PolyError> {
        assert_eq!(values.len(), self.table.len());
        let mut acc = Cyclo::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in m.support() {
                t *= &values[i].powi(m.exponent(i) as i64)?;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation through the complex embedding of Q(eps).
    pub fn eval_complex(&self, values: &[num_complex::Complex64]) -> num_complex::Complex64 {
        assert_eq!(values.len(), self.table.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.support().fold(c.to_complex(), |acc, i| acc * values[i].powi(m.exponent(i)))
            })
            .sum()
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> Polynomial {
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Coefficients with respect to `var`: exponent -> coefficient polynomial (free of `var`).
    pub fn coefficients_in(&self, var: &str) -> Result<BTreeMap<i32, Polynomial>, PolyError> {
        let i = self.table.index_of(var)?;
        let mut out: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(&self.table))
                .add_term(m.with_exponent(i, 0), c);
        }
        Ok(out)
    }

    /// Coefficient of `var^e` as a polynomial free of `var`.
    pub fn coefficient_of_power(&self, var: &str, e: i32) -> Result<Polynomial, PolyError> {
        Ok(self.coefficients_in(var)?.remove(&e).unwrap_or_else(|| Polynomial::zero(&self.table)))
    }

    /// Dense univariate view; all other variables must be absent.
    pub fn to_univariate(&self, var: &str) -> Result<UniPoly, PolyError> {
        let i = self.table.index_of(var)?;
        let mut coeffs: Vec<Cyclo> = Vec::new();
        for (m, c) in &self.terms {
            if m.support().any(|j| j != i) || m.exponent(i) < 0 {
                return Err(PolyError::NotUnivariate(var.to_string()));
            }
            let e = m.exponent(i) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Cyclo::zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_univariate(table: &Table, var: &str, u: &UniPoly) -> Result<Polynomial, PolyError> {
        let i = table.index_of(var)?;
        Ok(Polynomial::from_terms(
            table,
            u.coeffs().iter().enumerate().map(|(e, c)| (Monomial::var(table.len(), i, e as i32), c.clone())),
        ))
    }

    /// `Some(u)` with `self == u * other` for a unit u (nonzero constant times a Laurent monomial).
    pub fn unit_ratio(&self, other: &Polynomial) -> Option<Polynomial> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m1, c1) = self.terms.iter().next_back()?;
        let (m2, c2) = other.terms.iter().next_back()?;
        let mono = Monomial::new(m1.exponents().iter().zip(m2.exponents()).map(|(a, b)| a - b).collect());
        let u = Polynomial::monomial(&self.table, mono, c1.checked_div(c2).ok()?);
        u.as_unit()?;
        (&u * other == *self).then_some(u)
    }
}

/// Univariate division with remainder in `main`, over the ring of polynomials in
/// the other variables. The leading coefficient of `g` must be a unit there.
pub fn univariate_division(
    f: &Polynomial,
    g: &Polynomial,
    main: &str,
) -> Result<(Polynomial, Polynomial), PolyError> {
    f.same_table(g)?;
    let table = f.table.clone();
    let i = table.index_of(main)?;
    if table.is_laurent(i) {
        return Err(PolyError::LaurentMainVariable(main.to_string()));
    }
    if g.is_zero() {
        return Err(PolyError::ZeroDivisor);
    }
    let dg = g.degree_in(i).unwrap();
    let lc = g.coefficient_of_power(main, dg)?;
    let lc_inv = lc
        .unit_inverse()
        .ok_or_else(|| PolyError::NonUnitLeadingCoefficient(lc.to_string()))?;
    let mut q = Polynomial::zero(&table);
    let mut r = f.clone();
    while let Some(dr) = r.degree_in(i) {
        if dr < dg {
            break;
        }
        let lead = r.coefficient_of_power(main, dr)?;
        let t = (&lead * &lc_inv).mul_monomial(&Monomial::var(table.len(), i, dr - dg))?;
        r = &r - &(&t * g);
        q = &q + &t;
    }
    Ok((q, r))
}

/// Monomials in `restricted_vars` divisible by none of `generators`, in graded order.
pub fn monomial_quotient_basis(
    generators: &[Monomial],
    table: &Table,
    restricted_vars: &[&str],
) -> Result<Vec<Monomial>, PolyError> {
    let idx: Vec<usize> = restricted_vars.iter().map(|v| table.index_of(v)).collect::<Result<_, _>>()?;
    let restricted: BTreeSet<usize> = idx.iter().copied().collect();
    let relevant: Vec<&Monomial> = generators
        .iter()
        .filter(|g| g.support().all(|j| restricted.contains(&j)))
        .collect();
    let mut bounds = Vec::with_capacity(idx.len());
    for &i in &idx {
        let b = relevant
            .iter()
            .filter(|g| g.support().all(|j| j == i))
            .map(|g| g.exponent(i))
            .min()
            .ok_or_else(|| PolyError::InfiniteQuotient(table.name(i).to_string()))?;
        bounds.push(b.max(0));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i32; idx.len()];
    if bounds.iter().any(|&b| b == 0) {
        return Ok(out);
    }
    loop {
        let mut e = vec![0; table.len()];
        for (k, &i) in idx.iter().enumerate() {
            e[i] = cur[k];
        }
        let m = Monomial::new(e);
        if !relevant.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
        // odometer over the bounding box
        let mut k = 0;
        loop {
            if k == cur.len() {
                // by degree, earlier variables first within a degree
                out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
                return Ok(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics when the tables differ; use [`Polynomial::checked_add`] to get an error instead.
    fn add(self, o: &Polynomial) -> Polynomial {
        self.checked_add(o).expect("table mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.checked_sub(o).expect("table mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.checked_mul(o).expect("table mismatch or exponent overflow")
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                self.$m(&o)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn fmt_monomial(table: &VarTable, m: &Monomial) -> String {
    m.support()
        .map(|i| match m.exponent(i) {
            1 => table.name(i).to_string(),
            e => format!("{}^{}", table.name(i), e),
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order; the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = c.split_sign();
            let sign = match (k == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mono = fmt_monomial(&self.table, m);
            let text = if m.is_one() {
                if body.is_compound() {
                    format!("({})", body)
                } else {
                    body.to_string()
                }
            } else if body.is_one() {
                mono
            } else if body.is_compound() {
                format!("({})*{}", body, mono)
            } else {
                format!("{}*{}", body, mono)
            };
            write!(f, "{}{}", sign, text)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.table.names().join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        VarTable::new(["x", "y", "z", "w", "X", "Y", "U", "V"]).unwrap()
    }

    #[test]
    fn cancellation_is_canonical() {
        let t = table();
        let p = t.parse("x + y").unwrap() + t.parse("-x").unwrap();
        assert_eq!(p, t.parse("y").unwrap());
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn cusp_factorisations() {
        let t = table();
        let lhs = t.parse("(X - U)*(X + U)").unwrap();
        assert_eq!(lhs, t.parse("X^2 - U^2").unwrap());
        let rhs = t.parse("(Y - V)*(Y - eps*V)*(Y - eps^2*V)").unwrap();
        assert_eq!(rhs, t.parse("Y^3 - V^3").unwrap());
    }

    #[test]
    fn derivatives_of_the_family() {
        let t = VarTable::new(["x", "y", "z", "w", "l", "m", "n", "s"]).unwrap();
        let f = t.parse("x^2 - y^3 - z^2 + w^3").unwrap();
        assert_eq!(f.derivative("x").unwrap(), t.parse("2*x").unwrap());
        let fl = t.parse("x^2 - y^3 - z^2 + w^3 + l + m*y - n*w + s*y*w").unwrap();
        assert_eq!(fl.derivative("y").unwrap(), -t.parse("3*y^2 - s*w - m").unwrap());
        assert_eq!(fl.derivative("w").unwrap(), t.parse("3*w^2 + s*y - n").unwrap());
        assert_eq!(f.derivative("q"), Err(PolyError::UnknownVariable("q".into())));
    }

    #[test]
    fn laurent_derivative_uses_power_rule() {
        let t = VarTable::with_laurent(["y", "s"], &["s"]).unwrap();
        let p = t.parse("y*s^-2").unwrap();
        assert_eq!(p.derivative("s").unwrap(), t.parse("-2*y*s^-3").unwrap());
    }

    #[test]
    fn substitution_examples() {
        let t = table();
        let f = t.parse("x^2").unwrap();
        let g = f.substitute(&[("x", t.parse("x - 1").unwrap())]).unwrap();
        assert_eq!(g, t.parse("x^2 - 2*x + 1").unwrap());
    }

    #[test]
    fn translation_kills_xi_and_upsilon() {
        let t = VarTable::new(["X", "U", "xi", "upsilon"]).unwrap();
        let lhs = t.parse("(X - U + xi)*(X + U + upsilon)").unwrap();
        let moved = lhs
            .substitute(&[
                ("X", t.parse("X - (xi + upsilon)/2").unwrap()),
                ("U", t.parse("U + (xi - upsilon)/2").unwrap()),
            ])
            .unwrap();
        assert_eq!(moved, t.parse("X^2 - U^2").unwrap());
    }

    #[test]
    fn translated_family_on_the_hyperplane() {
        let t = VarTable::new(["x", "y", "z", "w", "a", "b"]).unwrap();
        // singular point (0, a, 0, b) with mu = 3a^2, nu = 3b^2, lambda from the third condition
        let f = t.parse("x^2 - y^3 - z^2 + w^3 + l + 3*a^2*y - 3*b^2*w");
        assert!(f.is_err()); // `l` is not in the table
        let lam = t.parse("-(2*3*a^2*a - 2*3*b^2*b)/3").unwrap();
        let f = t.parse("x^2 - y^3 - z^2 + w^3 + 3*a^2*y - 3*b^2*w").unwrap() + lam;
        let moved = f
            .substitute(&[("y", t.parse("y + a").unwrap()), ("w", t.parse("w + b").unwrap())])
            .unwrap();
        assert_eq!(moved, t.parse("x^2 - y^3 - z^2 + w^3 - 3*a*y^2 + 3*b*w^2").unwrap());
    }

    #[test]
    fn laurent_substitution_requires_unit() {
        let t = VarTable::with_laurent(["y", "s"], &["s"]).unwrap();
        let p = t.parse("y*s^-1").unwrap();
        let ok = p.substitute(&[("s", t.parse("2*s").unwrap())]).unwrap();
        assert_eq!(ok, t.parse("1/2*y*s^-1").unwrap());
        let err = p.substitute(&[("s", t.parse("s + 1").unwrap())]);
        assert_eq!(err, Err(PolyError::NonUnitLaurentSubstitution("s".into())));
    }

    #[test]
    fn evaluation() {
        let t = VarTable::new(["x", "y", "z", "w", "l", "m", "n", "s"]).unwrap();
        let f = t.parse("x^2 - y^3 - z^2 + w^3").unwrap();
        let zero = Cyclo::zero();
        let pt: Vec<(&str, Cyclo)> =
            ["x", "y", "z", "w"].iter().map(|v| (*v, zero.clone())).collect();
        assert_eq!(f.eval(&pt).unwrap(), Cyclo::zero());
        let f0 = t.parse("x^2 - y^3 - z^2 + w^3 + 1 + 3*y*w").unwrap();
        let e = Cyclo::eps();
        let at = |y: Cyclo, w: Cyclo| {
            f0.eval(&[("x", Cyclo::zero()), ("y", y), ("z", Cyclo::zero()), ("w", w)]).unwrap()
        };
        assert_eq!(at(Cyclo::from_int(-1), Cyclo::one()), Cyclo::zero());
        assert_eq!(at(-&e, e.pow(2)), Cyclo::zero());
        assert!(matches!(f.eval(&[("x", Cyclo::one())]), Err(PolyError::UnboundVariable(_))));
    }

    #[test]
    fn self_division_and_small_division() {
        let t = VarTable::new(["y"]).unwrap();
        let f = t.parse("y^2 + 1").unwrap();
        let (q, r) = univariate_division(&f, &f, "y").unwrap();
        assert_eq!(q, Polynomial::one(&t));
        assert!(r.is_zero());
        let g = t.parse("y - 1").unwrap();
        let (q, r) = univariate_division(&f, &g, "y").unwrap();
        assert_eq!(q, t.parse("y + 1").unwrap());
        assert_eq!(r, t.parse("2").unwrap());
        assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn division_errors() {
        let t = VarTable::with_laurent(["y", "s", "m"], &["s"]).unwrap();
        let f = t.parse("y^3").unwrap();
        let bad = t.parse("m*y + 1").unwrap();
        assert!(matches!(univariate_division(&f, &bad, "y"), Err(PolyError::NonUnitLeadingCoefficient(_))));
        assert_eq!(univariate_division(&f, &Polynomial::zero(&t), "y"), Err(PolyError::ZeroDivisor));
        let unit = t.parse("3*s*y + m").unwrap();
        let (q, r) = univariate_division(&f, &unit, "y").unwrap();
        assert_eq!(&(&q * &unit) + &r, f);
        assert_eq!(r.degree_in(0), Some(0));
    }

    #[test]
    fn quotient_bases() {
        let t = VarTable::new(["x", "y", "z", "w"]).unwrap();
        let gens: Vec<Monomial> = ["x", "y^2", "z", "w^2"]
            .iter()
            .map(|s| t.parse(s).unwrap().terms().next().unwrap().0.clone())
            .collect();
        let basis = monomial_quotient_basis(&gens, &t, &["x", "y", "z", "w"]).unwrap();
        let shown: Vec<String> = basis.iter().map(|m| Polynomial::monomial(&t, m.clone(), Cyclo::one()).to_string()).collect();
        assert_eq!(shown, ["1", "y", "w", "y*w"]);

        let t2 = VarTable::new(["x", "y"]).unwrap();
        let g2 = vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 2])];
        assert_eq!(monomial_quotient_basis(&g2, &t2, &["x", "y"]).unwrap().len(), 2);
        let t3 = VarTable::new(["x"]).unwrap();
        assert_eq!(
            monomial_quotient_basis(&[Monomial::new(vec![1])], &t3, &["x"]).unwrap(),
            vec![Monomial::new(vec![0])]
        );
        assert_eq!(
            monomial_quotient_basis(&g2[..1], &t2, &["x", "y"]),
            Err(PolyError::InfiniteQuotient("y".into()))
        );
    }

    #[test]
    fn display_is_graded_lex() {
        let t = VarTable::new(["x", "y", "z", "w", "l", "m", "n", "s"]).unwrap();
        let p = t.parse("x^2 - y^3 - z^2 + w^3 + l + m*y - n*w + s*y*w").unwrap();
        assert_eq!(p.to_string(), "-y^3 + y*w*s + w^3 + x^2 + y*m - z^2 - w*n + l");
        let q = t.parse("(1+2*eps)*x - 3/2*eps*y + 1/3").unwrap();
        assert_eq!(q.to_string(), "(1 + 2*eps)*x - 3/2*eps*y + 1/3");
    }

    #[test]
    fn table_mismatch_is_reported() {
        let a = VarTable::new(["x"]).unwrap();
        let b = VarTable::new(["y"]).unwrap();
        let p = Polynomial::var(&a, "x").unwrap();
        let q = Polynomial::var(&b, "y").unwrap();
        assert_eq!(p.checked_add(&q), Err(PolyError::TableMismatch));
        assert!(VarTable::new(["x", "x"]).is_err());
    }
}

//! Sparse multivariate polynomials, total-degree-truncated power series
//! (the computational stand-in for `O[[X, Y, Z]]`), and localization at a
//! designated unit polynomial (entries of arcs, of the form `p * u^-k`).
//!
//! Monomials are packed into a `u128`: the most significant byte holds the
//! total degree, the following bytes one exponent per variable.  Plain
//! integer comparison of packed keys is therefore the graded lexicographic
//! order, and `BTreeMap` iteration enumerates monomials degree by degree.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::coeffs::{CycloElem, Rational, Val};
use crate::ring::{Ring, RingError};

/// Maximum number of variables a ring instance may carry (packing limit).
pub const MAX_VARS: usize = 15;
/// Maximum total degree a monomial may reach (packing limit).
pub const MAX_DEG: u32 = 255;

/// Errors raised by polynomial-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Operands live in different rings (variable sets, caps or units).
    IncompatibleRings,
    /// A substitution did not bind a variable that occurs in the polynomial.
    UnboundVariable(String),
    /// Series inversion requires a constant term of valuation zero.
    NonUnitConstantTerm,
    /// The localization denominator does not divide as required.
    NotInvertible,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::IncompatibleRings => write!(f, "operands from incompatible rings"),
            PolyError::UnboundVariable(v) => {
                write!(f, "substitution leaves variable `{v}` unbound")
            }
            PolyError::NonUnitConstantTerm => {
                write!(f, "constant term is not a unit (valuation != 0)")
            }
            PolyError::NotInvertible => write!(f, "element is not invertible in this ring"),
        }
    }
}

// ---------------------------------------------------------------------------
// Variable sets
// ---------------------------------------------------------------------------

/// Ambient variable indices for the twelve-variable ring.
pub mod ambient {
    pub const X11: usize = 0;
    pub const X12: usize = 1;
    pub const X21: usize = 2;
    pub const X22: usize = 3;
    pub const Y11: usize = 4;
    pub const Y12: usize = 5;
    pub const Y21: usize = 6;
    pub const Y22: usize = 7;
    pub const Z11: usize = 8;
    pub const Z12: usize = 9;
    pub const Z21: usize = 10;
    pub const Z22: usize = 11;
}

/// An ordered list of variable names, fixed per ring instance.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Arc<VarSet> {
        assert!(names.len() <= MAX_VARS, "too many variables");
        let owned: Vec<String> = names.iter().map(|s| (*s).to_owned()).collect();
        for (i, n) in owned.iter().enumerate() {
            assert!(
                !owned[..i].contains(n),
                "duplicate variable name `{n}` in variable set"
            );
        }
        Arc::new(VarSet { names: owned })
    }

    /// The canonical twelve matrix-entry variables.
    pub fn ambient() -> Arc<VarSet> {
        Self::new(&[
            "x11", "x12", "x21", "x22", "y11", "y12", "y21", "y22", "z11", "z12", "z21", "z22",
        ])
    }

    /// One-variable ring in `t` (arc entries).
    pub fn univar_t() -> Arc<VarSet> {
        Self::new(&["t"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

// ---------------------------------------------------------------------------
// Packed monomials
// ---------------------------------------------------------------------------

/// A packed exponent vector.  Byte 15 (most significant) is the total
/// degree; variable `i` occupies byte `14 - i`.  Integer order on the
/// packing is graded lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono(u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut packed: u128 = 0;
        let mut deg: u32 = 0;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_DEG, "exponent overflow");
            deg += e;
            packed |= (e as u128) << (8 * (14 - i));
        }
        assert!(deg <= MAX_DEG, "total degree overflow");
        packed |= (deg as u128) << 120;
        Mono(packed)
    }

    pub fn var(i: usize) -> Mono {
        debug_assert!(i < MAX_VARS);
        Mono((1u128 << (8 * (14 - i))) | (1u128 << 120))
    }

    pub fn var_pow(i: usize, e: u32) -> Mono {
        debug_assert!(i < MAX_VARS && e <= MAX_DEG);
        Mono(((e as u128) << (8 * (14 - i))) | ((e as u128) << 120))
    }

    pub fn deg(&self) -> u32 {
        (self.0 >> 120) as u32
    }

    pub fn exp(&self, i: usize) -> u32 {
        ((self.0 >> (8 * (14 - i))) & 0xff) as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        assert!(
            self.deg() + o.deg() <= MAX_DEG,
            "monomial degree overflow (> {MAX_DEG})"
        );
        Mono(self.0 + o.0)
    }

    /// Componentwise divisibility.
    pub fn divides(&self, o: &Mono) -> bool {
        for byte in 0..16 {
            let a = (self.0 >> (8 * byte)) & 0xff;
            let b = (o.0 >> (8 * byte)) & 0xff;
            if a > b {
                return false;
            }
        }
        true
    }

    /// `o / self` when divisible.
    pub fn try_div(&self, o: &Mono) -> Option<Mono> {
        if self.divides(o) {
            Some(Mono(o.0 - self.0))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut packed: u128 = 0;
        let mut deg: u32 = 0;
        for i in 0..MAX_VARS {
            let e = self.exp(i).max(o.exp(i));
            deg += e;
            packed |= (e as u128) << (8 * (14 - i));
        }
        packed |= (deg as u128) << 120;
        Mono(packed)
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    /// Largest packed key of total degree `<= d` (for range queries).
    fn max_key_with_deg(d: u32) -> u128 {
        (((d as u128) + 1) << 120) - 1
    }

    fn render(&self, vars: &VarSet) -> String {
        let mut parts: Vec<String> = Vec::new();
        for i in 0..vars.len() {
            let e = self.exp(i);
            if e == 1 {
                parts.push(vars.name(i).to_owned());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.name(i), e));
            }
        }
        parts.join("*")
    }
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

/// Coefficient ring interface for sparse polynomials (context-free rings).
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when the coefficient ring is a field.
    fn try_inv(&self) -> Option<Self>;
    /// Canonical textual form (byte-stable).
    fn render(&self) -> String;
}

impl Coeff for CycloElem {
    fn zero() -> Self {
        CycloElem::ZERO
    }
    fn one() -> Self {
        CycloElem::ONE
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycloElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycloElem::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycloElem::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        CycloElem::inv(self).ok()
    }
    fn render(&self) -> String {
        CycloElem::render(self)
    }
}

// ---------------------------------------------------------------------------
// Sparse polynomials
// ---------------------------------------------------------------------------

/// A sparse multivariate polynomial over `C`; no zero coefficients stored.
#[derive(Clone)]
pub struct Poly<C: Coeff> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Mono, C>,
}

/// The polynomial type of the artifact: coefficients in `Q(zeta_8)`.
pub type SparsePoly = Poly<CycloElem>;

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Poly<C> {}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Poly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn var(vars: &Arc<VarSet>, i: usize) -> Self {
        assert!(i < vars.len());
        let mut p = Self::zero(vars);
        p.terms.insert(Mono::var(i), C::one());
        p
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Mono, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.insert_add(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::ONE))
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Mono::ONE).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map(Mono::deg).unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    /// Exact coefficient of the monomial with the given exponent vector;
    /// zero if absent.
    pub fn coefficient_of(&self, exps: &[u32]) -> C {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length mismatch");
        self.terms
            .get(&Mono::from_exps(exps))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn coefficient_of_mono(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn insert_add(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compat(&self, other: &Self) -> Result<(), PolyError> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(PolyError::IncompatibleRings)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.neg());
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = Self::zero(&self.vars);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (m, v) in &self.terms {
            let p = v.mul(c);
            if !p.is_zero() {
                out.terms.insert(*m, p);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (mm, v) in &self.terms {
            let p = v.mul(c);
            if !p.is_zero() {
                out.terms.insert(mm.mul(m), p);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// Ring-homomorphic substitution.  `images[i]` is the image of variable
    /// `i`; every variable occurring in `self` must have an image, and all
    /// images must live in `target`.
    pub fn substitute(
        &self,
        images: &BTreeMap<usize, Poly<C>>,
        target: &Arc<VarSet>,
    ) -> Result<Poly<C>, PolyError> {
        for img in images.values() {
            if !same_vars(img.vars(), target) {
                return Err(PolyError::IncompatibleRings);
            }
        }
        let mut out = Poly::zero(target);
        // memoized powers per variable
        let mut powers: BTreeMap<(usize, u32), Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for i in 0..self.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(&i)
                    .ok_or_else(|| PolyError::UnboundVariable(self.vars.name(i).to_owned()))?;
                let key = (i, e);
                powers.entry(key).or_insert_with(|| img.pow(e));
                acc = acc.try_mul(&powers[&key])?;
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.insert_add(mm, cc);
            }
        }
        Ok(out)
    }

    /// Substitution given by variable name; unnamed variables map to
    /// themselves (requires `target` to contain them under the same name).
    pub fn substitute_by_name(
        &self,
        pairs: &[(&str, Poly<C>)],
        target: &Arc<VarSet>,
    ) -> Result<Poly<C>, PolyError> {
        let mut images: BTreeMap<usize, Poly<C>> = BTreeMap::new();
        for (name, img) in pairs {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnboundVariable((*name).to_owned()))?;
            images.insert(i, img.clone());
        }
        for i in 0..self.nvars() {
            if images.contains_key(&i) {
                continue;
            }
            let name = self.vars.name(i);
            if let Some(j) = target.index_of(name) {
                images.insert(i, Poly::var(target, j));
            }
        }
        self.substitute(&images, target)
    }

    /// Full evaluation at a point (one value per variable).
    pub fn evaluate(&self, values: &[C]) -> C {
        assert_eq!(values.len(), self.nvars());
        let mut out = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, v) in values.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    term = term.mul(v);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(*m, d);
            }
        }
        out
    }

    /// Discards every monomial of total degree `> cap`.
    pub fn truncated(&self, cap: u32) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in self.terms.range(..=Mono(Mono::max_key_with_deg(cap))) {
            out.terms.insert(*m, c.clone());
        }
        out
    }

    /// Leading term in the canonical graded-lex order.
    pub fn leading_term(&self) -> Option<(Mono, C)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Division with remainder by a single divisor (graded-lex leading
    /// terms): `self = q * d + r` with no term of `r` divisible by `lt(d)`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), PolyError> {
        self.check_compat(d)?;
        let (dm, dc) = d.leading_term().ok_or(PolyError::NotInvertible)?;
        let dc_inv = dc.try_inv().ok_or(PolyError::NotInvertible)?;
        let mut q = Self::zero(&self.vars);
        let mut r = Self::zero(&self.vars);
        let mut p = self.clone();
        while let Some((pm, pc)) = p.leading_term() {
            if let Some(qm) = dm.try_div(&pm) {
                let qc = pc.mul(&dc_inv);
                q.insert_add(qm, qc.clone());
                let sub = d.mul_term(&qm, &qc);
                p = p.try_sub(&sub)?;
            } else {
                p.terms.remove(&pm);
                r.insert_add(pm, pc);
            }
        }
        Ok((q, r))
    }

    /// Exact quotient if the divisor divides exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Canonical textual serialization: terms in descending graded-lex
    /// order, coefficients in canonical form.  Byte-stable across runs.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut parts: Vec<String> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            if m.is_one() {
                parts.push(c.render());
            } else if c == &C::one() {
                parts.push(m.render(&self.vars));
            } else {
                parts.push(format!("{}*{}", c.render(), m.render(&self.vars)));
            }
        }
        parts.join(" + ")
    }
}

impl SparsePoly {
    /// Minimum 2-adic valuation over all coefficients (`Inf` for zero).
    pub fn min_coeff_val(&self) -> Val {
        let mut out = Val::Inf;
        for c in self.terms.values() {
            out = out.min_with(&c.val2());
        }
        out
    }

    pub fn from_int_terms(vars: &Arc<VarSet>, terms: &[(&[u32], i64)]) -> SparsePoly {
        let mut p = SparsePoly::zero(vars);
        for (exps, n) in terms {
            p.insert_add(Mono::from_exps(exps), CycloElem::from_int(*n));
        }
        p
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// ---------------------------------------------------------------------------
// Truncated power series
// ---------------------------------------------------------------------------

/// A total-degree-truncated power series: the image of a series in the
/// quotient of the full power-series ring by the span of monomials of
/// degree `> cap` (a genuine ring quotient, so all ring identities are
/// exact at the cap).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    poly: SparsePoly,
    cap: u32,
}

impl TruncSeries {
    pub fn new(poly: SparsePoly, cap: u32) -> Self {
        TruncSeries {
            poly: poly.truncated(cap),
            cap,
        }
    }

    pub fn zero(vars: &Arc<VarSet>, cap: u32) -> Self {
        TruncSeries {
            poly: SparsePoly::zero(vars),
            cap,
        }
    }

    pub fn one(vars: &Arc<VarSet>, cap: u32) -> Self {
        TruncSeries {
            poly: SparsePoly::one(vars),
            cap,
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: CycloElem, cap: u32) -> Self {
        TruncSeries {
            poly: SparsePoly::constant(vars, c),
            cap,
        }
    }

    pub fn var(vars: &Arc<VarSet>, i: usize, cap: u32) -> Self {
        TruncSeries {
            poly: SparsePoly::var(vars, i),
            cap,
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn into_poly(self) -> SparsePoly {
        self.poly
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.poly.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.poly.num_terms()
    }

    pub fn constant_term(&self) -> CycloElem {
        self.poly.constant_term()
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> CycloElem {
        self.poly.coefficient_of(exps)
    }

    /// Re-truncation to a smaller cap.
    pub fn truncated_to(&self, cap: u32) -> Self {
        assert!(
            cap <= self.cap,
            "cannot raise the cap of a truncated series"
        );
        TruncSeries::new(self.poly.clone(), cap)
    }

    fn check_compat(&self, other: &Self) -> Result<(), PolyError> {
        if self.cap != other.cap || !same_vars(self.vars(), other.vars()) {
            Err(PolyError::IncompatibleRings)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        Ok(TruncSeries {
            poly: self.poly.try_add(&other.poly)?,
            cap: self.cap,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        Ok(TruncSeries {
            poly: self.poly.try_sub(&other.poly)?,
            cap: self.cap,
        })
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            poly: self.poly.neg(),
            cap: self.cap,
        }
    }

    /// Product with all monomials of total degree `> cap` discarded.
    ///
    /// Runs a dense accumulation over `i128` when both operands have small
    /// integer coefficients (the common case for the relation computer) and
    /// falls back to the generic sparse path otherwise; both paths are
    /// exact and produce identical results.
    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        if let Some(poly) = dense_int_mul(&self.poly, &other.poly, self.cap) {
            return Ok(TruncSeries {
                poly,
                cap: self.cap,
            });
        }
        let mut out = SparsePoly::zero(self.vars());
        let cap = self.cap;
        let (small, large) = if self.poly.num_terms() <= other.poly.num_terms() {
            (&self.poly, &other.poly)
        } else {
            (&other.poly, &self.poly)
        };
        for (ma, ca) in &small.terms {
            let da = ma.deg();
            if da > cap {
                break;
            }
            let limit = Mono(Mono::max_key_with_deg(cap - da));
            for (mb, cb) in large.terms.range(..=limit) {
                out.insert_add(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(TruncSeries { poly: out, cap })
    }

    pub fn mul_scalar(&self, c: &CycloElem) -> Self {
        TruncSeries {
            poly: self.poly.mul_scalar(c),
            cap: self.cap,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncSeries::one(self.vars(), self.cap);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// Multiplicative inverse of a series whose constant term is a unit of
    /// `O_K` (valuation 0), by geometric series on `1 - a/a0`.
    pub fn invert_unit(&self) -> Result<Self, PolyError> {
        let c0 = self.constant_term();
        if !c0.val2().is_zero() {
            return Err(PolyError::NonUnitConstantTerm);
        }
        let c0_inv = c0.inv().expect("unit constant term");
        let scaled = self.mul_scalar(&c0_inv);
        // u = 1 - a/a0 has zero constant term, so u^k has order >= k.
        let u = TruncSeries::one(self.vars(), self.cap)
            .try_sub(&scaled)
            .expect("same ring");
        let mut sum = TruncSeries::one(self.vars(), self.cap);
        let mut upow = TruncSeries::one(self.vars(), self.cap);
        for _ in 1..=self.cap {
            upow = upow.try_mul(&u)?;
            if upow.is_zero() {
                break;
            }
            sum = sum.try_add(&upow)?;
        }
        Ok(sum.mul_scalar(&c0_inv))
    }

    /// Substitution; the result is re-truncated at the cap.
    pub fn substitute(
        &self,
        images: &BTreeMap<usize, SparsePoly>,
        target: &Arc<VarSet>,
    ) -> Result<TruncSeries, PolyError> {
        let p = self.poly.substitute(images, target)?;
        Ok(TruncSeries::new(p, self.cap))
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.render())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg<={}) {}", self.cap, self.poly.render())
    }
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.vars(), self.cap)
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.vars(), self.cap)
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible series rings")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("incompatible series rings")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("incompatible series rings")
    }
    fn neg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self, RingError> {
        self.invert_unit().map_err(|_| RingError::NotInvertible)
    }
}

// ---------------------------------------------------------------------------
// Dense integer fast path for truncated multiplication
// ---------------------------------------------------------------------------

/// Number of monomials of total degree `<= d` in `n` variables.
fn mono_count(n: usize, d: u32) -> Option<usize> {
    // C(n + d, n), bailing out on overflow
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc.checked_mul(d as u128 + i)?;
        acc /= i;
        if acc > (1 << 40) {
            return None;
        }
    }
    usize::try_from(acc).ok()
}

struct RankTable {
    nvars: usize,
    cap: u32,
    /// `cum[m][b][e]` = number of monomials in `m` variables of degree
    /// `<= b` that are passed over by the first `e` exponent choices, i.e.
    /// `sum_{j < e} C(m + b - j, m)`.
    cum: Vec<Vec<Vec<usize>>>,
}

impl RankTable {
    #[allow(clippy::needless_range_loop)]
    fn new(nvars: usize, cap: u32) -> Option<RankTable> {
        let capu = cap as usize;
        let mut count = alloc::vec![alloc::vec![0usize; capu + 1]; nvars + 1];
        for m in 0..=nvars {
            for b in 0..=capu {
                count[m][b] = mono_count(m, b as u32)?;
            }
        }
        let mut cum = alloc::vec![alloc::vec![alloc::vec![0usize; capu + 2]; capu + 1]; nvars];
        for m in 0..nvars {
            for b in 0..=capu {
                for e in 1..=b + 1 {
                    cum[m][b][e] = cum[m][b][e - 1] + count[m][b - (e - 1)];
                }
            }
        }
        Some(RankTable { nvars, cap, cum })
    }

    /// Rank in the lexicographic enumeration of exponent vectors of total
    /// degree `<= cap`.
    #[inline]
    fn rank(&self, m: &Mono) -> usize {
        let mut rank = 0usize;
        let mut budget = self.cap as usize;
        for i in 0..self.nvars {
            let e = m.exp(i) as usize;
            rank += self.cum[self.nvars - 1 - i][budget][e];
            budget -= e;
        }
        rank
    }
}

/// Iterates exponent vectors of total degree `<= cap` in rank order,
/// yielding the packed monomial for each slot.
fn for_each_mono(nvars: usize, cap: u32, mut f: impl FnMut(usize, Mono)) {
    let mut exps = alloc::vec![0u32; nvars];
    let mut rank = 0usize;
    loop {
        f(rank, Mono::from_exps(&exps));
        rank += 1;
        let sum: u32 = exps.iter().sum();
        if sum < cap {
            exps[nvars - 1] += 1;
            continue;
        }
        // carry: zero the last nonzero coordinate, bump its predecessor
        let Some(p) = exps.iter().rposition(|&e| e > 0) else {
            break;
        };
        if p == 0 {
            break;
        }
        exps[p] = 0;
        exps[p - 1] += 1;
    }
}

fn poly_as_int_terms(p: &SparsePoly) -> Option<Vec<(Mono, i64)>> {
    let mut out = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let r = c.as_rational()?;
        let n = r.to_i64()?;
        out.push((*m, n));
    }
    Some(out)
}

fn dense_int_mul(a: &SparsePoly, b: &SparsePoly, cap: u32) -> Option<SparsePoly> {
    if a.num_terms() == 0 || b.num_terms() == 0 {
        return Some(SparsePoly::zero(a.vars()));
    }
    // only worth it (and only exercised) for real series workloads
    if a.num_terms().min(b.num_terms()) < 8 {
        return None;
    }
    let nvars = a.nvars();
    let size = mono_count(nvars, cap)?;
    if size > (1 << 24) {
        return None;
    }
    let ta = poly_as_int_terms(a)?;
    let tb = poly_as_int_terms(b)?;
    let table = RankTable::new(nvars, cap)?;
    let mut acc = alloc::vec![0i128; size];
    let (small, large) = if ta.len() <= tb.len() {
        (&ta, &tb)
    } else {
        (&tb, &ta)
    };
    for (ma, ca) in small {
        let da = ma.deg();
        if da > cap {
            continue;
        }
        let ca = *ca as i128;
        for (mb, cb) in large {
            if mb.deg() + da > cap {
                break; // terms are degree-sorted
            }
            let m = Mono(ma.0 + mb.0);
            let slot = table.rank(&m);
            let prod = ca.checked_mul(*cb as i128)?;
            acc[slot] = acc[slot].checked_add(prod)?;
        }
    }
    let mut terms: BTreeMap<Mono, CycloElem> = BTreeMap::new();
    for_each_mono(nvars, cap, |rank, mono| {
        let v = acc[rank];
        if v != 0 {
            let c = if let Ok(small) = i64::try_from(v) {
                CycloElem::from_int(small)
            } else {
                CycloElem::from_rational(Rational::from_bigints(v.into(), 1.into()))
            };
            terms.insert(mono, c);
        }
    });
    Some(SparsePoly {
        vars: Arc::clone(a.vars()),
        terms,
    })
}

// ---------------------------------------------------------------------------
// Localized polynomials (p * unit^-k)
// ---------------------------------------------------------------------------

/// An element `num * unit^-pow` of the localization of a polynomial ring at
/// a designated unit (e.g. `a(t) = 1 + (zeta_8 - 1) t`).  Normalized so the
/// unit does not divide the numerator while `pow > 0`; representation is
/// therefore canonical and `==` structural.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedPoly {
    num: SparsePoly,
    unit: SparsePoly,
    pow: u32,
}

impl LocalizedPoly {
    /// `num * unit^-pow`.  The unit must have a constant term of valuation
    /// zero.
    pub fn new(num: SparsePoly, unit: SparsePoly, pow: u32) -> Result<Self, PolyError> {
        if !same_vars(num.vars(), unit.vars()) {
            return Err(PolyError::IncompatibleRings);
        }
        if !unit.constant_term().val2().is_zero() {
            return Err(PolyError::NonUnitConstantTerm);
        }
        let mut out = LocalizedPoly { num, unit, pow };
        out.normalize();
        Ok(out)
    }

    pub fn from_poly(p: SparsePoly, unit: SparsePoly) -> Result<Self, PolyError> {
        Self::new(p, unit, 0)
    }

    pub fn constant(c: CycloElem, unit: &SparsePoly) -> Self {
        LocalizedPoly {
            num: SparsePoly::constant(unit.vars(), c),
            unit: unit.clone(),
            pow: 0,
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.pow = 0;
            return;
        }
        while self.pow > 0 {
            match self.num.exact_div(&self.unit) {
                Some(q) => {
                    self.num = q;
                    self.pow -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn unit(&self) -> &SparsePoly {
        &self.unit
    }

    pub fn denominator_power(&self) -> u32 {
        self.pow
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a constant of the coefficient field, when it is one.
    pub fn as_constant(&self) -> Option<CycloElem> {
        if self.pow == 0 && self.num.is_constant() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    fn check_compat(&self, other: &Self) -> Result<(), PolyError> {
        if self.unit == other.unit {
            Ok(())
        } else {
            Err(PolyError::IncompatibleRings)
        }
    }

    fn unit_pow(&self, e: u32) -> SparsePoly {
        self.unit.pow(e)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let k = self.pow.max(other.pow);
        let a = self.num.try_mul(&self.unit_pow(k - self.pow))?;
        let b = other.num.try_mul(&self.unit_pow(k - other.pow))?;
        LocalizedPoly::new(a.try_add(&b)?, self.unit.clone(), k)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LocalizedPoly {
            num: self.num.neg(),
            unit: self.unit.clone(),
            pow: self.pow,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        LocalizedPoly::new(
            self.num.try_mul(&other.num)?,
            self.unit.clone(),
            self.pow + other.pow,
        )
    }

    /// Inverse of elements of the form `c * unit^m * unit^-pow`; errors when
    /// the numerator is not a constant times a power of the unit.
    pub fn try_inverse(&self) -> Result<Self, PolyError> {
        if self.num.is_zero() {
            return Err(PolyError::NotInvertible);
        }
        let mut m = 0u32;
        let mut rest = self.num.clone();
        while let Some(q) = rest.exact_div(&self.unit) {
            rest = q;
            m += 1;
        }
        if !rest.is_constant() {
            return Err(PolyError::NotInvertible);
        }
        let c = rest.constant_term();
        let c_inv = c.inv().map_err(|_| PolyError::NotInvertible)?;
        // (c * u^m * u^-pow)^-1 = c^-1 * u^(pow - m)
        if self.pow >= m {
            let num = SparsePoly::constant(self.num.vars(), c_inv)
                .try_mul(&self.unit_pow(self.pow - m))?;
            LocalizedPoly::new(num, self.unit.clone(), 0)
        } else {
            LocalizedPoly::new(
                SparsePoly::constant(self.num.vars(), c_inv),
                self.unit.clone(),
                m - self.pow,
            )
        }
    }

    /// Exact evaluation at a point: `num(v) * unit(v)^-pow`.
    pub fn evaluate(&self, values: &[CycloElem]) -> Result<CycloElem, PolyError> {
        let n = self.num.evaluate(values);
        let u = self.unit.evaluate(values);
        let u_inv = u.inv().map_err(|_| PolyError::NotInvertible)?;
        let mut out = n;
        for _ in 0..self.pow {
            out = out.mul(&u_inv);
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.pow == 0 {
            self.num.render()
        } else {
            format!(
                "({}) * ({})^-{}",
                self.num.render(),
                self.unit.render(),
                self.pow
            )
        }
    }
}

impl fmt::Display for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Ring for LocalizedPoly {
    fn zero_like(&self) -> Self {
        LocalizedPoly::constant(CycloElem::ZERO, &self.unit)
    }
    fn one_like(&self) -> Self {
        LocalizedPoly::constant(CycloElem::ONE, &self.unit)
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible localizations")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("incompatible localizations")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("incompatible localizations")
    }
    fn neg(&self) -> Self {
        LocalizedPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        LocalizedPoly::is_zero(self)
    }
    fn try_inv(&self) -> Result<Self, RingError> {
        self.try_inverse().map_err(|_| RingError::NotInvertible)
    }
}

// ---------------------------------------------------------------------------

//! Exact coefficient arithmetic: rationals, the cyclotomic field
//! `Q(zeta_8) = Q[w]/(w^4 + 1)`, and the 2-adic valuation extending `v_2`
//! with `v(zeta_8 - 1) = 1/4`.
//!
//! Rationals keep an `i64` numerator/denominator fast path and promote to
//! `BigInt` on overflow; results that fit are demoted back, so the
//! representation is canonical and `==` is structural.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Error type for coefficient-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    /// Inversion of zero in a field.
    DivisionByZero,
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// An arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `num/den` with `den > 0`, `gcd(num, den) = 1`.
    Small(i64, i64),
    /// Same invariants; used only when the value does not fit `Small`.
    Big(Box<(BigInt, BigInt)>),
}

impl Rational {
    pub const ZERO: Rational = Rational(Repr::Small(0, 1));
    pub const ONE: Rational = Rational(Repr::Small(1, 1));

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `n/d` reduced. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let (mut n, mut d) = (n as i128, d as i128);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n.unsigned_abs(), d as u128) as i128;
        Self::from_i128(n / g, d / g)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize_big(num, den)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d > 0);
        if let (Ok(n), Ok(d)) = (i64::try_from(n), i64::try_from(d)) {
            Rational(Repr::Small(n, d))
        } else {
            Rational(Repr::Big(Box::new((BigInt::from(n), BigInt::from(d)))))
        }
    }

    fn normalize_big(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        match (num.to_i64_checked(), den.to_i64_checked()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new((num, den)))),
        }
    }

    pub fn numerator(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.0.clone(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    /// Exact value as `i64` if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &other.0) {
            let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
            let g = gcd_i128(ad as u128, bd as u128) as i128;
            let (adg, bdg) = (ad / g, bd / g);
            let n = an * bdg + bn * adg;
            let d = adg * bd;
            let g2 = gcd_i128(n.unsigned_abs(), d as u128) as i128;
            return Self::from_i128(n / g2, d / g2);
        }
        let n = self.numerator() * other.denominator() + other.numerator() * self.denominator();
        let d = self.denominator() * other.denominator();
        Self::normalize_big(n, d)
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &other.0) {
            let (an, ad, bn, bd) = (*an as i128, *ad as i128, *bn as i128, *bd as i128);
            let g1 = gcd_i128(an.unsigned_abs(), bd as u128) as i128;
            let g2 = gcd_i128(bn.unsigned_abs(), ad as u128) as i128;
            let n = (an / g1) * (bn / g2);
            let d = (ad / g2) * (bd / g1);
            return Self::from_i128(n, d);
        }
        let n = self.numerator() * other.numerator();
        let d = self.denominator() * other.denominator();
        Self::normalize_big(n, d)
    }

    pub fn neg(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => {
                if let Some(n) = n.checked_neg() {
                    Rational(Repr::Small(n, *d))
                } else {
                    Self::from_i128(-(*n as i128), *d as i128)
                }
            }
            Repr::Big(b) => Self::normalize_big(-b.0.clone(), b.1.clone()),
        }
    }

    pub fn inv(&self) -> Result<Rational, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        match &self.0 {
            Repr::Small(n, d) => {
                let s = if *n < 0 { -1 } else { 1 };
                Ok(Self::from_i128(s * *d as i128, (*n as i128).abs()))
            }
            Repr::Big(b) => Ok(Self::normalize_big(b.1.clone(), b.0.clone())),
        }
    }

    pub fn div(&self, other: &Rational) -> Result<Rational, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut acc = Rational::ONE;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// 2-adic valuation `v2(num) - v2(den)`; `None` for zero.
    pub fn v2(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let vn = big_v2(&self.numerator());
        let vd = big_v2(&self.denominator());
        Some(Rational::from_int(vn - vd))
    }
}

fn big_v2(n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    n.trailing_zeros().unwrap_or(0) as i64
}

trait ToI64Checked {
    fn to_i64_checked(&self) -> Option<i64>;
}

impl ToI64Checked for BigInt {
    fn to_i64_checked(&self) -> Option<i64> {
        i64::try_from(self).ok()
    }
}

fn gcd_i128(a: u128, b: u128) -> u128 {
    if a == 0 {
        return if b == 0 { 1 } else { b };
    }
    a.gcd(&b)
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &other.0) {
            let lhs = *an as i128 * *bd as i128;
            let rhs = *bn as i128 * *ad as i128;
            return lhs.cmp(&rhs);
        }
        let lhs = self.numerator() * other.denominator();
        let rhs = other.numerator() * self.denominator();
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Val: values of the 2-adic valuation (rational or +infinity at zero)
// ---------------------------------------------------------------------------

/// A valuation value: a rational number, or `Inf` (the valuation of zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Val {
    Fin(Rational),
    Inf,
}

impl Val {
    pub fn from_int(n: i64) -> Self {
        Val::Fin(Rational::from_int(n))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Val::Inf => true,
            Val::Fin(r) => *r > Rational::ZERO,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Val::Inf => true,
            Val::Fin(r) => *r >= Rational::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Val::Fin(r) if r.is_zero())
    }

    /// `v(ab) = v(a) + v(b)`.
    pub fn add(&self, other: &Val) -> Val {
        match (self, other) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a.add(b)),
            _ => Val::Inf,
        }
    }

    pub fn min_with(&self, other: &Val) -> Val {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Inf, Val::Inf) => Ordering::Equal,
            (Val::Inf, Val::Fin(_)) => Ordering::Greater,
            (Val::Fin(_), Val::Inf) => Ordering::Less,
            (Val::Fin(a), Val::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Inf => write!(f, "inf"),
            Val::Fin(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// CycloElem: elements of Q(zeta_8) = Q[w]/(w^4 + 1)
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_8)` in the basis `1, w, w^2, w^3` of
/// `Q[w]/(w^4 + 1)`, where `w = zeta_8` and `i = zeta_8^2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    c: [Rational; 4],
}

impl CycloElem {
    pub const ZERO: CycloElem = CycloElem {
        c: [
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
        ],
    };
    pub const ONE: CycloElem = CycloElem {
        c: [
            Rational::ONE,
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
        ],
    };

    pub fn from_coords(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        CycloElem {
            c: [c0, c1, c2, c3],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloElem {
            c: [r, Rational::ZERO, Rational::ZERO, Rational::ZERO],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// The primitive eighth root of unity `w` with `w^4 = -1`.
    pub fn zeta8() -> Self {
        CycloElem {
            c: [
                Rational::ZERO,
                Rational::ONE,
                Rational::ZERO,
                Rational::ZERO,
            ],
        }
    }

    /// `i = zeta_8^2`, a square root of `-1`.
    pub fn i_unit() -> Self {
        CycloElem {
            c: [
                Rational::ZERO,
                Rational::ZERO,
                Rational::ONE,
                Rational::ZERO,
            ],
        }
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &CycloElem) -> CycloElem {
        CycloElem {
            c: [
                self.c[0].add(&o.c[0]),
                self.c[1].add(&o.c[1]),
                self.c[2].add(&o.c[2]),
                self.c[3].add(&o.c[3]),
            ],
        }
    }

    pub fn sub(&self, o: &CycloElem) -> CycloElem {
        CycloElem {
            c: [
                self.c[0].sub(&o.c[0]),
                self.c[1].sub(&o.c[1]),
                self.c[2].sub(&o.c[2]),
                self.c[3].sub(&o.c[3]),
            ],
        }
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            c: [
                self.c[0].neg(),
                self.c[1].neg(),
                self.c[2].neg(),
                self.c[3].neg(),
            ],
        }
    }

    pub fn mul(&self, o: &CycloElem) -> CycloElem {
        // w^(j+k) reduced via w^4 = -1; skip zero coordinates.
        let mut out = [
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
        ];
        for j in 0..4 {
            if self.c[j].is_zero() {
                continue;
            }
            for k in 0..4 {
                if o.c[k].is_zero() {
                    continue;
                }
                let p = self.c[j].mul(&o.c[k]);
                let idx = j + k;
                if idx < 4 {
                    out[idx] = out[idx].add(&p);
                } else {
                    out[idx - 4] = out[idx - 4].sub(&p);
                }
            }
        }
        CycloElem { c: out }
    }

    pub fn mul_rat(&self, r: &Rational) -> CycloElem {
        CycloElem {
            c: [
                self.c[0].mul(r),
                self.c[1].mul(r),
                self.c[2].mul(r),
                self.c[3].mul(r),
            ],
        }
    }

    /// The image under the field automorphism `w -> w^k`, `k` odd.
    pub fn conj(&self, k: u32) -> CycloElem {
        debug_assert!(k % 2 == 1 && k < 8);
        let mut out = [
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
            Rational::ZERO,
        ];
        for j in 0..4u32 {
            if self.c[j as usize].is_zero() {
                continue;
            }
            let e = (j * k) % 8;
            let (idx, negate) = if e < 4 { (e, false) } else { (e - 4, true) };
            let v = if negate {
                self.c[j as usize].neg()
            } else {
                self.c[j as usize].clone()
            };
            out[idx as usize] = out[idx as usize].add(&v);
        }
        CycloElem { c: out }
    }

    /// Field norm down to `Q`: the product of the four conjugates, equal to
    /// the resultant of `w^4 + 1` and the representative polynomial.
    pub fn norm(&self) -> Rational {
        let p = self
            .conj(1)
            .mul(&self.conj(3))
            .mul(&self.conj(5))
            .mul(&self.conj(7));
        debug_assert!(
            p.c[1].is_zero() && p.c[2].is_zero() && p.c[3].is_zero(),
            "norm must be rational"
        );
        p.c[0].clone()
    }

    /// Multiplicative inverse, via the product of the other three conjugates
    /// divided by the norm.
    pub fn inv(&self) -> Result<CycloElem, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let cofactor = self.conj(3).mul(&self.conj(5)).mul(&self.conj(7));
        let n = self.norm().inv()?;
        Ok(cofactor.mul_rat(&n))
    }

    pub fn div(&self, o: &CycloElem) -> Result<CycloElem, CoeffError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<CycloElem, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycloElem::ONE;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The 2-adic valuation, normalized so that `v(2) = 1`.
    ///
    /// `Q_2(zeta_8)/Q_2` is totally ramified of degree 4, so the unique
    /// extension of `v_2` is `v(a) = v_2(norm(a)) / 4`, with `v(0) = Inf`.
    pub fn val2(&self) -> Val {
        if self.is_zero() {
            return Val::Inf;
        }
        let n = self.norm();
        let v = n.v2().expect("norm of nonzero element is nonzero");
        Val::Fin(v.mul(&Rational::new(1, 4)))
    }

    pub fn is_unit(&self) -> bool {
        self.val2().is_zero()
    }

    /// Canonical form: plain rational when the element lies in `Q`, else the
    /// coordinate quadruple.
    pub fn render(&self) -> String {
        use alloc::format;
        match self.as_rational() {
            Some(r) => format!("{r}"),
            None => format!("({},{},{},{})", self.c[0], self.c[1], self.c[2], self.c[3]),
        }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for CycloElem {
    fn from(n: i64) -> Self {
        CycloElem::from_int(n)
    }
}

/// Parses small integer parameter values (as accepted on the CLI) into `O`.
pub fn cyclo_from_str_int(s: &str) -> Option<CycloElem> {
    let n: i64 = s.parse().ok()?;
    Some(CycloElem::from_int(n))
}

// ---------------------------------------------------------------------------

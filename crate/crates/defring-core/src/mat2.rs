//! 2x2 matrix algebra over any supported ring, the three-minor commutation
//! criterion, and exhaustive enumeration of the unipotent fiber in
//! `GL_2` over small artinian rings.

use alloc::vec::Vec;
use core::fmt;

use crate::ring::{Ring, RingError};

/// A 2x2 matrix with entries from one ring instance.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2<R> {
    pub a11: R,
    pub a12: R,
    pub a21: R,
    pub a22: R,
}

impl<R: Ring> Mat2<R> {
    pub fn new(a11: R, a12: R, a21: R, a22: R) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity_like(&self) -> Self {
        Mat2 {
            a11: self.a11.one_like(),
            a12: self.a11.zero_like(),
            a21: self.a11.zero_like(),
            a22: self.a11.one_like(),
        }
    }

    pub fn diag(a: R, d: R) -> Self {
        let z = a.zero_like();
        Mat2 {
            a11: a,
            a12: z.clone(),
            a21: z,
            a22: d,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a11: self.a11.mul(&o.a11).add(&self.a12.mul(&o.a21)),
            a12: self.a11.mul(&o.a12).add(&self.a12.mul(&o.a22)),
            a21: self.a21.mul(&o.a11).add(&self.a22.mul(&o.a21)),
            a22: self.a21.mul(&o.a12).add(&self.a22.mul(&o.a22)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2 {
            a11: self.a11.add(&o.a11),
            a12: self.a12.add(&o.a12),
            a21: self.a21.add(&o.a21),
            a22: self.a22.add(&o.a22),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2 {
            a11: self.a11.sub(&o.a11),
            a12: self.a12.sub(&o.a12),
            a21: self.a21.sub(&o.a21),
            a22: self.a22.sub(&o.a22),
        }
    }

    pub fn scalar_mul(&self, c: &R) -> Self {
        Mat2 {
            a11: self.a11.mul(c),
            a12: self.a12.mul(c),
            a21: self.a21.mul(c),
            a22: self.a22.mul(c),
        }
    }

    pub fn det(&self) -> R {
        self.a11.mul(&self.a22).sub(&self.a12.mul(&self.a21))
    }

    pub fn trace(&self) -> R {
        self.a11.add(&self.a22)
    }

    pub fn adjugate(&self) -> Self {
        Mat2 {
            a11: self.a22.clone(),
            a12: self.a12.neg(),
            a21: self.a21.neg(),
            a22: self.a11.clone(),
        }
    }

    /// Inverse by adjugate over determinant; the ring supplies the unit
    /// inversion of the determinant.
    pub fn inv(&self) -> Result<Self, RingError> {
        let det_inv = self.det().try_inv()?;
        Ok(self.adjugate().scalar_mul(&det_inv))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.identity_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[A, B] = A B A^-1 B^-1`, exactly as written.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, RingError> {
        Ok(a.mul(b).mul(&a.inv()?).mul(&b.inv()?))
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    pub fn is_zero(&self) -> bool {
        self.a11.is_zero() && self.a12.is_zero() && self.a21.is_zero() && self.a22.is_zero()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat2<S> {
        Mat2 {
            a11: f(&self.a11),
            a12: f(&self.a12),
            a21: f(&self.a21),
            a22: f(&self.a22),
        }
    }

    pub fn entries(&self) -> [&R; 4] {
        [&self.a11, &self.a12, &self.a21, &self.a22]
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

impl<R: Ring + fmt::Display> fmt::Debug for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The word `X^2 Y^4 [Y, Z]` whose deviation from the identity generates
/// the relation ideal.  Requires `det Y` and `det Z` invertible.
pub fn group_word<R: Ring>(x: &Mat2<R>, y: &Mat2<R>, z: &Mat2<R>) -> Result<Mat2<R>, RingError> {
    let x2 = x.mul(x);
    let y2 = y.mul(y);
    let y4 = y2.mul(&y2);
    let comm = Mat2::commutator(y, z)?;
    Ok(x2.mul(&y4).mul(&comm))
}

/// `AB = BA` iff the determinants of all three 2x2 submatrices of
/// `[[a11 - a22, a12, a21], [b11 - b22, b12, b21]]` vanish.
pub fn commute_criterion<R: Ring>(a: &Mat2<R>, b: &Mat2<R>) -> bool {
    let da = a.a11.sub(&a.a22);
    let db = b.a11.sub(&b.a22);
    let m1 = a.a12.mul(&b.a21).sub(&a.a21.mul(&b.a12));
    let m2 = da.mul(&b.a12).sub(&a.a12.mul(&db));
    let m3 = da.mul(&b.a21).sub(&a.a21.mul(&db));
    m1.is_zero() && m2.is_zero() && m3.is_zero()
}

// ---------------------------------------------------------------------------
// Small finite local rings
// ---------------------------------------------------------------------------

/// Descriptor of a small commutative artinian local ring with residue
/// field `F_2` (plus `Z/3` for cross-checking the commutation criterion).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiniteRingSpec {
    /// `Z/2^k`, `k <= 3`.
    Z2k(u8),
    /// `F_2[e]/(e^2)`.
    DualF2,
    /// `Z/n` for a small `n` (used by exhaustive property checks).
    Zn(u8),
}

impl FiniteRingSpec {
    pub const F2: FiniteRingSpec = FiniteRingSpec::Z2k(1);
    pub const Z4: FiniteRingSpec = FiniteRingSpec::Z2k(2);
    pub const Z8: FiniteRingSpec = FiniteRingSpec::Z2k(3);

    pub fn label(&self) -> &'static str {
        match self {
            FiniteRingSpec::Z2k(1) => "Z/2",
            FiniteRingSpec::Z2k(2) => "Z/4",
            FiniteRingSpec::Z2k(3) => "Z/8",
            FiniteRingSpec::Z2k(_) => "Z/2^k",
            FiniteRingSpec::DualF2 => "F2[e]/(e^2)",
            FiniteRingSpec::Zn(3) => "Z/3",
            FiniteRingSpec::Zn(_) => "Z/n",
        }
    }

    /// Every element of the ring.
    pub fn elements(&self) -> Vec<FiniteElem> {
        match self {
            FiniteRingSpec::Z2k(k) => {
                let n = 1u8 << k;
                (0..n).map(|v| FiniteElem::Mod(v, n)).collect()
            }
            FiniteRingSpec::Zn(n) => (0..*n).map(|v| FiniteElem::Mod(v, *n)).collect(),
            FiniteRingSpec::DualF2 => (0..2u8)
                .flat_map(|a| (0..2u8).map(move |b| FiniteElem::Dual(a, b)))
                .collect(),
        }
    }

    pub fn zero(&self) -> FiniteElem {
        match self {
            FiniteRingSpec::Z2k(k) => FiniteElem::Mod(0, 1 << k),
            FiniteRingSpec::Zn(n) => FiniteElem::Mod(0, *n),
            FiniteRingSpec::DualF2 => FiniteElem::Dual(0, 0),
        }
    }

    pub fn one(&self) -> FiniteElem {
        match self {
            FiniteRingSpec::Z2k(k) => FiniteElem::Mod(1 % (1u8 << k), 1 << k),
            FiniteRingSpec::Zn(n) => FiniteElem::Mod(1 % n, *n),
            FiniteRingSpec::DualF2 => FiniteElem::Dual(1, 0),
        }
    }
}

/// An element of one of the supported finite rings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiniteElem {
    /// Value mod `n`.
    Mod(u8, u8),
    /// `a + b e` in `F_2[e]/(e^2)`.
    Dual(u8, u8),
}

impl FiniteElem {
    /// Membership in the maximal ideal (these rings are local).
    pub fn in_maximal_ideal(&self) -> bool {
        match self {
            // The enumerated rings are Z/p^k; the maximal ideal is (p) for
            // the smallest prime divisor of the modulus.
            FiniteElem::Mod(v, n) => {
                let p = smallest_prime_divisor(*n);
                v % p == 0
            }
            FiniteElem::Dual(a, _) => *a % 2 == 0,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            FiniteElem::Mod(v, n) => gcd_u8(*v, *n) == 1,
            FiniteElem::Dual(a, _) => *a % 2 == 1,
        }
    }
}

fn gcd_u8(a: u8, b: u8) -> u8 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn smallest_prime_divisor(n: u8) -> u8 {
    for p in 2..=n {
        if n.is_multiple_of(p) {
            return p;
        }
    }
    n
}

impl Ring for FiniteElem {
    fn zero_like(&self) -> Self {
        match self {
            FiniteElem::Mod(_, n) => FiniteElem::Mod(0, *n),
            FiniteElem::Dual(_, _) => FiniteElem::Dual(0, 0),
        }
    }
    fn one_like(&self) -> Self {
        match self {
            FiniteElem::Mod(_, n) => FiniteElem::Mod(1 % n, *n),
            FiniteElem::Dual(_, _) => FiniteElem::Dual(1, 0),
        }
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FiniteElem::Mod(a, n), FiniteElem::Mod(b, m)) => {
                assert_eq!(n, m, "mixed moduli");
                FiniteElem::Mod(((*a as u16 + *b as u16) % *n as u16) as u8, *n)
            }
            (FiniteElem::Dual(a, b), FiniteElem::Dual(c, d)) => {
                FiniteElem::Dual((a + c) % 2, (b + d) % 2)
            }
            _ => panic!("mixed finite rings"),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FiniteElem::Mod(a, n), FiniteElem::Mod(b, m)) => {
                assert_eq!(n, m, "mixed moduli");
                FiniteElem::Mod(((*a as u16 * *b as u16) % *n as u16) as u8, *n)
            }
            (FiniteElem::Dual(a, b), FiniteElem::Dual(c, d)) => {
                FiniteElem::Dual((a * c) % 2, (a * d + b * c) % 2)
            }
            _ => panic!("mixed finite rings"),
        }
    }
    fn neg(&self) -> Self {
        match self {
            FiniteElem::Mod(a, n) => FiniteElem::Mod((*n - a) % *n, *n),
            FiniteElem::Dual(a, b) => FiniteElem::Dual((2 - a) % 2, (2 - b) % 2),
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            FiniteElem::Mod(a, _) => *a == 0,
            FiniteElem::Dual(a, b) => *a == 0 && *b == 0,
        }
    }
    fn try_inv(&self) -> Result<Self, RingError> {
        // brute force; the rings have at most 8 elements
        let one = self.one_like();
        let candidates: Vec<FiniteElem> = match self {
            FiniteElem::Mod(_, n) => (0..*n).map(|v| FiniteElem::Mod(v, *n)).collect(),
            FiniteElem::Dual(_, _) => FiniteRingSpec::DualF2.elements(),
        };
        candidates
            .into_iter()
            .find(|c| self.mul(c) == one)
            .ok_or(RingError::NotInvertible)
    }
}

/// Exhaustively enumerates the subgroup of `GL_2(A)` of matrices reducing
/// to an upper unitriangular matrix `(1 *; 0 1)` modulo the maximal ideal,
/// and returns its order.  The order is asserted to be a power of 2 and the
/// enumerated set is verified to be closed under multiplication and
/// inversion.
pub fn unipotent_fiber_order(spec: FiniteRingSpec) -> u64 {
    let elems = spec.elements();
    let one = spec.one();
    let mut members: Vec<Mat2<FiniteElem>> = Vec::new();
    for a11 in &elems {
        if !a11.sub(&one).in_maximal_ideal() {
            continue;
        }
        for a12 in &elems {
            for a21 in &elems {
                if !a21.in_maximal_ideal() {
                    continue;
                }
                for a22 in &elems {
                    if !a22.sub(&one).in_maximal_ideal() {
                        continue;
                    }
                    let m = Mat2::new(*a11, *a12, *a21, *a22);
                    if m.det().is_unit() {
                        members.push(m);
                    }
                }
            }
        }
    }
    // subgroup sanity: closure under product and existence of inverses
    for a in &members {
        assert!(a.inv().is_ok(), "unipotent fiber member must be invertible");
    }
    if members.len() <= 64 {
        for a in &members {
            for b in &members {
                let p = a.mul(b);
                assert!(
                    members.contains(&p),
                    "unipotent fiber must be closed under multiplication"
                );
            }
        }
    }
    let order = members.len() as u64;
    assert!(order.is_power_of_two(), "fiber order must be a power of 2");
    order
}

// ---------------------------------------------------------------------------

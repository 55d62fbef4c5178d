//! The eight explicit points on the irreducible components: construction
//! of the two four-point families, full verification (relation, reduction,
//! component coordinates `eps1, eps2`, the value of `delta`), and the
//! three-case classification on the upper-triangular locus.

use alloc::format;
use alloc::string::String;

use crate::coeffs::CycloElem;
use crate::mat2::{commute_criterion, group_word, Mat2};
use crate::polyring::SparsePoly;

/// Errors raised by point construction and classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointError {
    /// Parameters do not match the family (mu must be 0 for the first
    /// family and a unit for the second).
    ParameterFamilyMismatch(String),
    /// Index outside `1..=4`.
    BadIndex(u8),
    /// The point does not satisfy the upper-triangular locus equations
    /// required by the case classification.
    LocusMembership(String),
    /// None of the three cases applies.
    NoCaseApplies,
}

impl core::fmt::Display for PointError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PointError::ParameterFamilyMismatch(s) => write!(f, "parameter/family mismatch: {s}"),
            PointError::BadIndex(n) => write!(f, "point index {n} outside 1..=4"),
            PointError::LocusMembership(s) => write!(f, "not on the triangular locus: {s}"),
            PointError::NoCaseApplies => write!(f, "no classification case applies"),
        }
    }
}

/// The two point families: the first uses `zeta_8` and requires `mu = 0`,
/// the second uses `i` and requires `mu` a unit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointFamily {
    Punkte1,
    Punkte2,
}

impl PointFamily {
    pub fn label(&self) -> &'static str {
        match self {
            PointFamily::Punkte1 => "punkte1",
            PointFamily::Punkte2 => "punkte2",
        }
    }
}

/// A triple of numeric matrices satisfying the word relation and reducing
/// to the residual representation.
#[derive(Clone, PartialEq, Eq)]
pub struct FramedPoint {
    pub x: Mat2<CycloElem>,
    pub y: Mat2<CycloElem>,
    pub z: Mat2<CycloElem>,
    pub lambda: CycloElem,
    pub mu: CycloElem,
    pub kappa: CycloElem,
    pub family: PointFamily,
    pub n: u8,
}

/// Full verification record for one point.
#[derive(Clone, Debug)]
pub struct PointReport {
    /// `X^2 Y^4 [Y, Z] = 1` exactly.
    pub relation_ok: bool,
    /// All entries of `X - (1 l; 0 1)`, `Y - (1 m; 0 1)`, `Z - (1 k; 0 1)`
    /// have positive valuation.
    pub reduction_ok: bool,
    pub eps1: CycloElem,
    pub eps2: CycloElem,
    pub delta: CycloElem,
    /// The component coordinates agree with the closed forms of the
    /// family ( `Z11^4, -Z22^4` resp. `Y11^2, -Y22^2` ).
    pub shortcut_ok: bool,
    /// `Y^4 = 1` and `[Y, Z] = 1`.
    pub torsion_ok: bool,
    /// The case of the triangular-locus classification.
    pub schnitt_case: Option<u8>,
}

impl PointReport {
    pub fn all_ok(&self) -> bool {
        self.relation_ok
            && self.reduction_ok
            && self.shortcut_ok
            && self.torsion_ok
            && self.schnitt_case.is_some()
    }
}

fn cmat(a: CycloElem, b: CycloElem, c: CycloElem, d: CycloElem) -> Mat2<CycloElem> {
    Mat2::new(a, b, c, d)
}

/// Builds the explicit point of the given family and index with
/// parameters `(l, m, k)`.
pub fn make_point(
    family: PointFamily,
    n: u8,
    lambda: &CycloElem,
    mu: &CycloElem,
    kappa: &CycloElem,
) -> Result<FramedPoint, PointError> {
    if !(1..=4).contains(&n) {
        return Err(PointError::BadIndex(n));
    }
    let one = CycloElem::ONE;
    let zero = CycloElem::ZERO;
    let w8 = CycloElem::zeta8();
    let i = CycloElem::i_unit();
    let x = cmat(one.clone(), lambda.clone(), zero.clone(), one.neg());
    match family {
        PointFamily::Punkte1 => {
            if !mu.is_zero() {
                return Err(PointError::ParameterFamilyMismatch(
                    "the first family requires mu = 0".into(),
                ));
            }
            let z_diag = match n {
                1 => (one.clone(), w8.clone()),
                2 => (one.clone(), i.clone()),
                3 => (w8.clone(), i.clone()),
                4 => (w8.clone(), w8.pow(3).expect("unit")),
                _ => unreachable!(),
            };
            let z = cmat(z_diag.0, kappa.clone(), zero, z_diag.1);
            let y = z.mul(&z);
            Ok(FramedPoint {
                x,
                y,
                z,
                lambda: lambda.clone(),
                mu: mu.clone(),
                kappa: kappa.clone(),
                family,
                n,
            })
        }
        PointFamily::Punkte2 => {
            if !mu.val2().is_zero() {
                return Err(PointError::ParameterFamilyMismatch(
                    "the second family requires mu to be a unit".into(),
                ));
            }
            let y_diag = match n {
                1 => (one.clone(), i.clone()),
                2 => (one.clone(), one.neg()),
                3 => (i.clone(), one.neg()),
                4 => (i.clone(), i.neg()),
                _ => unreachable!(),
            };
            let y = cmat(y_diag.0, mu.clone(), zero.clone(), y_diag.1);
            // Z = 1 + (k/m)(Y - 1)
            let ratio = kappa.div(mu).expect("mu is a unit");
            let id = y.identity_like();
            let z = id.add(&y.sub(&id).scalar_mul(&ratio));
            Ok(FramedPoint {
                x,
                y,
                z,
                lambda: lambda.clone(),
                mu: mu.clone(),
                kappa: kappa.clone(),
                family,
                n,
            })
        }
    }
}

impl FramedPoint {
    /// Coordinates in the ambient variable order: the entrywise difference
    /// from the base matrices `(1 l; 0 1)`, `(1 m; 0 1)`, `(1 k; 0 1)`.
    pub fn coordinates(&self) -> [CycloElem; 12] {
        let one = CycloElem::ONE;
        [
            self.x.a11.sub(&one),
            self.x.a12.sub(&self.lambda),
            self.x.a21.clone(),
            self.x.a22.sub(&one),
            self.y.a11.sub(&one),
            self.y.a12.sub(&self.mu),
            self.y.a21.clone(),
            self.y.a22.sub(&one),
            self.z.a11.sub(&one),
            self.z.a12.sub(&self.kappa),
            self.z.a21.clone(),
            self.z.a22.sub(&one),
        ]
    }

    /// All twelve coordinate differences have positive valuation.
    pub fn reduces_to_residual(&self) -> bool {
        self.coordinates().iter().all(|c| c.val2().is_positive())
    }

    /// Canonical byte-stable serialization of the matrix triple.
    pub fn canonical_serialization(&self) -> String {
        format!("X={} Y={} Z={}", self.x, self.y, self.z)
    }

    /// Evaluates a polynomial of the ambient twelve-variable ring at this
    /// point.
    pub fn evaluate(&self, p: &SparsePoly) -> CycloElem {
        p.evaluate(&self.coordinates())
    }
}

/// Verifies the relation, the reduction, the component coordinates and
/// the classification of a point.
pub fn verify_point(p: &FramedPoint) -> PointReport {
    let relation_ok = match group_word(&p.x, &p.y, &p.z) {
        Ok(w) => w.is_identity(),
        Err(_) => false,
    };
    let reduction_ok = p.reduces_to_residual();
    // component coordinates from the defining products
    let eps1 = p.x.a11.mul(&p.y.a11.mul(&p.y.a11));
    let eps2 = p.x.a22.mul(&p.y.a22.mul(&p.y.a22));
    // cross-check against the closed forms of the family
    let shortcut_ok = match p.family {
        PointFamily::Punkte1 => {
            let z11_4 = p.z.a11.pow(4).expect("unit");
            let z22_4 = p.z.a22.pow(4).expect("unit");
            eps1 == z11_4 && eps2 == z22_4.neg()
        }
        PointFamily::Punkte2 => {
            let y11_2 = p.y.a11.mul(&p.y.a11);
            let y22_2 = p.y.a22.mul(&p.y.a22);
            eps1 == y11_2 && eps2 == y22_2.neg()
        }
    };
    let dety = p.y.det();
    let delta = p.x.det().mul(&dety).mul(&dety);
    let torsion_ok = p.y.pow(4).is_identity()
        && Mat2::commutator(&p.y, &p.z)
            .map(|c| c.is_identity())
            .unwrap_or(false)
        && commute_criterion(&p.y, &p.z);
    PointReport {
        relation_ok,
        reduction_ok,
        eps1,
        eps2,
        delta,
        shortcut_ok,
        torsion_ok,
        schnitt_case: schnitt_case(p).ok(),
    }
}

/// Classifies a point of the upper-triangular locus by the three-case
/// criterion:
///
/// 1. `y11 != y22` and `(y11 - y22)(k + z12) = (m + y12)(z11 - z22)`;
/// 2. `y11 = y22` and `m = y12 = 0`;
/// 3. `y11 = y22` and `1 + z11 = 5 (1 + z22)`.
///
/// Cases are tested in order and the first match is returned, so
/// degenerate overlaps classify deterministically.
pub fn schnitt_case(p: &FramedPoint) -> Result<u8, PointError> {
    let one = CycloElem::ONE;
    // locus form: x11 = x12 = x21 + tr X = y21 = z21 = 0
    let x11 = p.x.a11.sub(&one);
    let x12 = p.x.a12.sub(&p.lambda);
    let locus_ok = x11.is_zero()
        && x12.is_zero()
        && p.x.a21.is_zero()
        && p.x.a21.add(&p.x.trace()).is_zero()
        && p.y.a21.is_zero()
        && p.z.a21.is_zero();
    if !locus_ok {
        return Err(PointError::LocusMembership(
            "x11 = x12 = x21 + tr X = y21 = z21 = 0 required".into(),
        ));
    }
    for (name, d) in [("Y11", &p.y.a11), ("Y22", &p.y.a22)] {
        if !d.pow(4).expect("nonzero diagonal").is_one() {
            return Err(PointError::LocusMembership(format!(
                "{name}^4 = 1 required"
            )));
        }
    }
    let y11 = p.y.a11.sub(&one);
    let y22 = p.y.a22.sub(&one);
    let y12_t = p.y.a12.clone(); // m + y12
    let z12_t = p.z.a12.clone(); // k + z12
    if y11 != y22 {
        let lhs = y11.sub(&y22).mul(&z12_t);
        let rhs = y12_t.mul(&p.z.a11.sub(&p.z.a22));
        if lhs == rhs {
            return Ok(1);
        }
        return Err(PointError::NoCaseApplies);
    }
    if p.mu.is_zero() && y12_t.is_zero() {
        return Ok(2);
    }
    if p.z.a11 == p.z.a22.mul(&CycloElem::from_int(5)) {
        return Ok(3);
    }
    Err(PointError::NoCaseApplies)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn ci(n: i64) -> CycloElem {
        CycloElem::from_int(n)
    }

    fn family_points(family: PointFamily, l: i64, m: i64, k: i64) -> Vec<FramedPoint> {
        (1..=4)
            .map(|n| make_point(family, n, &ci(l), &ci(m), &ci(k)).unwrap())
            .collect()
    }

    #[test]
    fn first_family_explicit_values() {
        let p = make_point(PointFamily::Punkte1, 1, &ci(0), &ci(0), &ci(0)).unwrap();
        assert_eq!(p.x, Mat2::new(ci(1), ci(0), ci(0), ci(-1)));
        assert_eq!(p.z, Mat2::new(ci(1), ci(0), ci(0), CycloElem::zeta8()));
        assert_eq!(p.y, p.z.mul(&p.z));
        let rep = verify_point(&p);
        assert!(rep.all_ok());
        assert_eq!((rep.eps1, rep.eps2), (ci(1), ci(1)));
        assert_eq!(rep.delta, ci(1));
    }

    #[test]
    fn first_family_n2() {
        let p = make_point(PointFamily::Punkte1, 2, &ci(1), &ci(0), &ci(1)).unwrap();
        let rep = verify_point(&p);
        assert!(rep.all_ok());
        assert_eq!((rep.eps1, rep.eps2), (ci(1), ci(-1)));
        assert_eq!(rep.delta, ci(-1));
    }

    #[test]
    fn second_family_n3() {
        let p = make_point(PointFamily::Punkte2, 3, &ci(0), &ci(1), &ci(1)).unwrap();
        let rep = verify_point(&p);
        assert!(rep.all_ok());
        assert_eq!((rep.eps1, rep.eps2), (ci(-1), ci(-1)));
        assert_eq!(rep.delta, ci(1));
    }

    #[test]
    fn second_family_z_is_polynomial_in_y() {
        // k/m = 1: Z = Y
        let p = make_point(PointFamily::Punkte2, 2, &ci(0), &ci(1), &ci(1)).unwrap();
        assert_eq!(p.z, p.y);
        assert_eq!(p.y, Mat2::new(ci(1), ci(1), ci(0), ci(-1)));
    }

    #[test]
    fn all_sign_pairs_and_delta_split() {
        for (family, m) in [(PointFamily::Punkte1, 0), (PointFamily::Punkte2, 1)] {
            for l in [0i64, 1] {
                for k in [0i64, 1] {
                    let pts = family_points(family, l, m, k);
                    let mut signs: Vec<(CycloElem, CycloElem)> = Vec::new();
                    for p in &pts {
                        let rep = verify_point(p);
                        assert!(rep.all_ok(), "point {family:?}/{}", p.n);
                        let expected_delta = if p.n % 2 == 1 { ci(1) } else { ci(-1) };
                        assert_eq!(rep.delta, expected_delta);
                        signs.push((rep.eps1, rep.eps2));
                    }
                    for want in [
                        (ci(1), ci(1)),
                        (ci(1), ci(-1)),
                        (ci(-1), ci(1)),
                        (ci(-1), ci(-1)),
                    ] {
                        assert!(signs.contains(&want), "missing sign pair {want:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn family_preconditions() {
        assert!(matches!(
            make_point(PointFamily::Punkte1, 1, &ci(0), &ci(1), &ci(0)),
            Err(PointError::ParameterFamilyMismatch(_))
        ));
        assert!(matches!(
            make_point(PointFamily::Punkte2, 1, &ci(0), &ci(0), &ci(0)),
            Err(PointError::ParameterFamilyMismatch(_))
        ));
        assert!(matches!(
            make_point(PointFamily::Punkte1, 5, &ci(0), &ci(0), &ci(0)),
            Err(PointError::BadIndex(5))
        ));
    }

    #[test]
    fn classification_case_one() {
        // first family, n = 1: y11 != y22, both sides equal k(1 - i)
        for k in [0i64, 1] {
            let p = make_point(PointFamily::Punkte1, 1, &ci(0), &ci(0), &ci(k)).unwrap();
            assert_eq!(schnitt_case(&p).unwrap(), 1);
        }
        // second family with m = 1
        let p = make_point(PointFamily::Punkte2, 2, &ci(0), &ci(1), &ci(1)).unwrap();
        assert_eq!(schnitt_case(&p).unwrap(), 1);
    }

    #[test]
    fn classification_case_two_and_three() {
        // synthetic: Y = 1, Z = (1 k; 0 1) -> case 2
        let p2 = FramedPoint {
            x: Mat2::new(ci(1), ci(0), ci(0), ci(-1)),
            y: Mat2::new(ci(1), ci(0), ci(0), ci(1)),
            z: Mat2::new(ci(1), ci(1), ci(0), ci(1)),
            lambda: ci(0),
            mu: ci(0),
            kappa: ci(1),
            family: PointFamily::Punkte1,
            n: 1,
        };
        assert!(group_word(&p2.x, &p2.y, &p2.z).unwrap().is_identity());
        assert_eq!(schnitt_case(&p2).unwrap(), 2);

        // synthetic: Y = (i 2; 0 i), Z = (5 0; 0 1): Y^5 Z = Z Y -> case 3
        let i = CycloElem::i_unit();
        let p3 = FramedPoint {
            x: Mat2::new(ci(1), ci(0), ci(0), ci(-1)),
            y: Mat2::new(i.clone(), ci(2), ci(0), i),
            z: Mat2::new(ci(5), ci(0), ci(0), ci(1)),
            lambda: ci(0),
            mu: ci(0),
            kappa: ci(0),
            family: PointFamily::Punkte1,
            n: 1,
        };
        assert!(group_word(&p3.x, &p3.y, &p3.z).unwrap().is_identity());
        assert!(p3.reduces_to_residual());
        assert_eq!(schnitt_case(&p3).unwrap(), 3);
    }

    #[test]
    fn classification_requires_locus_form() {
        let mut p = make_point(PointFamily::Punkte1, 1, &ci(0), &ci(0), &ci(0)).unwrap();
        p.x.a21 = ci(2);
        assert!(matches!(
            schnitt_case(&p),
            Err(PointError::LocusMembership(_))
        ));
    }

    #[test]
    fn canonical_serialization_is_stable() {
        let p = make_point(PointFamily::Punkte1, 1, &ci(0), &ci(0), &ci(0)).unwrap();
        assert_eq!(
            p.canonical_serialization(),
            "X=[[1, 0], [0, -1]] Y=[[1, 0], [0, (0,0,1,0)]] Z=[[1, 0], [0, (0,1,0,0)]]"
        );
    }
}

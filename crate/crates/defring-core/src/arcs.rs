//! Construction and exact verification of the connecting arcs: the matrix
//! triples over `K<t>` joining explicit points with index difference 2,
//! localized at the unit `a(t) = 1 + (zeta_8 - 1) t` (first family) or
//! `b(t) = 1 + (i - 1) t` (second family).
//!
//! Every identity is decided by clearing unit-power denominators and
//! comparing polynomials in `t` exactly; topological nilpotence is
//! certified by a finite coefficient check plus an analytic tail bound.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coeffs::{CycloElem, Rational, Val};
use crate::mat2::{commute_criterion, group_word, Mat2};
use crate::points::{make_point, FramedPoint, PointFamily};
use crate::polyring::{LocalizedPoly, PolyError, SparsePoly, VarSet};
use crate::ring::Ring;
use alloc::sync::Arc as StdArc;

/// Errors raised by arc construction and certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcError {
    ParameterFamilyMismatch(String),
    BadIndex(u8),
    /// The nilpotence precondition fails: a numerator coefficient has
    /// negative valuation, or the unit is not of the form `1 + c t` with
    /// `v(c) > 0`.
    Precondition(String),
    Poly(PolyError),
}

impl From<PolyError> for ArcError {
    fn from(e: PolyError) -> Self {
        ArcError::Poly(e)
    }
}

impl core::fmt::Display for ArcError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ArcError::ParameterFamilyMismatch(s) => write!(f, "parameter/family mismatch: {s}"),
            ArcError::BadIndex(n) => write!(f, "arc index {n} outside 1..=2"),
            ArcError::Precondition(s) => write!(f, "precondition violated: {s}"),
            ArcError::Poly(e) => write!(f, "{e}"),
        }
    }
}

/// The two arc families, mirroring the two point families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcFamily {
    Bogen1,
    Bogen2,
}

impl ArcFamily {
    pub fn label(&self) -> &'static str {
        match self {
            ArcFamily::Bogen1 => "bogen1",
            ArcFamily::Bogen2 => "bogen2",
        }
    }

    pub fn point_family(&self) -> PointFamily {
        match self {
            ArcFamily::Bogen1 => PointFamily::Punkte1,
            ArcFamily::Bogen2 => PointFamily::Punkte2,
        }
    }

    /// `X^2 = unit^-(2e)` and `Y^4 = unit^(2e)` with `e` = 4 resp. 2.
    fn half_exponent(&self) -> u32 {
        match self {
            ArcFamily::Bogen1 => 4,
            ArcFamily::Bogen2 => 2,
        }
    }
}

/// A matrix triple over the localization of `K[t]` at the designated unit,
/// connecting point `n` (at `t = 0`) with point `n + 2` (at `t = 1`).
#[derive(Clone)]
pub struct Arc {
    pub x: Mat2<LocalizedPoly>,
    pub y: Mat2<LocalizedPoly>,
    pub z: Mat2<LocalizedPoly>,
    pub unit: SparsePoly,
    pub family: ArcFamily,
    pub n: u8,
    pub lambda: CycloElem,
    pub mu: CycloElem,
    pub kappa: CycloElem,
}

/// Certificate that an entry `p(t) unit(t)^-k` is topologically nilpotent:
/// every expansion coefficient up to degree `M` has positive valuation,
/// and beyond `M` the valuations are bounded below by
/// `min_j v(p_j) + (m - deg p) w > 0`, since the degree-`d` coefficient of
/// `unit^-k` has valuation at least `d w`.
#[derive(Clone, Debug)]
pub struct NilpotenceCertificate {
    /// Expansion degree checked: `M = deg(p) + ceil(1/w)`.
    pub expansion_degree: u32,
    /// Minimum valuation over expansion coefficients `0..=M`.
    pub min_valuation: Val,
    /// `w = v(c)` for the unit `1 + c t`.
    pub unit_linear_valuation: Rational,
    /// Minimum valuation over numerator coefficients (precondition `>= 0`).
    pub numerator_min_valuation: Val,
    /// Lower bound for all coefficients of degree `> M`.
    pub tail_bound: Val,
}

impl NilpotenceCertificate {
    pub fn certifies(&self) -> bool {
        self.min_valuation.is_positive()
            && self.tail_bound.is_positive()
            && self.numerator_min_valuation.is_nonnegative()
    }
}

fn t_ring() -> (StdArc<VarSet>, SparsePoly) {
    let vars = VarSet::univar_t();
    let t = SparsePoly::var(&vars, 0);
    (vars, t)
}

fn unit_for(family: ArcFamily) -> SparsePoly {
    let (vars, t) = t_ring();
    let c = match family {
        ArcFamily::Bogen1 => CycloElem::zeta8().sub(&CycloElem::ONE),
        ArcFamily::Bogen2 => CycloElem::i_unit().sub(&CycloElem::ONE),
    };
    SparsePoly::one(&vars)
        .try_add(&t.mul_scalar(&c))
        .expect("same ring")
}

/// Builds the arc of the given family and index (`n` in `1..=2`).
pub fn make_arc(
    family: ArcFamily,
    n: u8,
    lambda: &CycloElem,
    mu: &CycloElem,
    kappa: &CycloElem,
) -> Result<Arc, ArcError> {
    if !(1..=2).contains(&n) {
        return Err(ArcError::BadIndex(n));
    }
    if !(lambda.is_zero() || lambda.val2().is_zero()) {
        return Err(ArcError::ParameterFamilyMismatch(
            "lambda must be zero or a unit".into(),
        ));
    }
    match family {
        ArcFamily::Bogen1 => {
            if !mu.is_zero() {
                return Err(ArcError::ParameterFamilyMismatch(
                    "the first family requires mu = 0".into(),
                ));
            }
        }
        ArcFamily::Bogen2 => {
            if !mu.val2().is_zero() {
                return Err(ArcError::ParameterFamilyMismatch(
                    "the second family requires mu to be a unit".into(),
                ));
            }
        }
    }

    let (vars, t) = t_ring();
    let unit = unit_for(family);
    let one = SparsePoly::one(&vars);
    let int = |n: i64| SparsePoly::constant(&vars, CycloElem::from_int(n));
    let lp = |p: SparsePoly, k: u32| LocalizedPoly::new(p, unit.clone(), k).expect("valid unit");
    let cst = |c: &CycloElem| LocalizedPoly::constant(c.clone(), &unit);

    let e = family.half_exponent(); // X uses unit^-e on the diagonal

    // shared polynomials of the X matrix
    // p = 1 - 6 t^2 + 4 t^3, q = t (1 - t)(2 + 4 t), r = t (1 - t)(6 - 4 t)
    let p_poly = one
        .try_sub(&t.pow(2).mul_scalar(&CycloElem::from_int(6)))?
        .try_add(&t.pow(3).mul_scalar(&CycloElem::from_int(4)))?;
    let t_one_minus_t = t.try_mul(&one.try_sub(&t)?)?;
    let q_poly = t_one_minus_t.try_mul(&int(2).try_add(&t.mul_scalar(&CycloElem::from_int(4)))?)?;
    let r_poly = t_one_minus_t.try_mul(&int(6).try_sub(&t.mul_scalar(&CycloElem::from_int(4)))?)?;

    let x = if lambda.is_zero() {
        Mat2::new(
            lp(p_poly.clone(), e),
            lp(q_poly.clone(), e),
            lp(r_poly.clone(), e),
            lp(p_poly.neg(), e),
        )
    } else {
        // ((1 - 2t) u^-e, l; (4/l) t(1-t) u^-2e, -(1 - 2t) u^-e)
        let one_minus_2t = one.try_sub(&t.mul_scalar(&CycloElem::from_int(2)))?;
        let four_over_l = CycloElem::from_int(4)
            .div(lambda)
            .expect("lambda is a unit");
        Mat2::new(
            lp(one_minus_2t.clone(), e),
            cst(lambda),
            lp(t_one_minus_t.mul_scalar(&four_over_l), 2 * e),
            lp(one_minus_2t.neg(), e),
        )
    };

    let (y, z) = match family {
        ArcFamily::Bogen1 => {
            // Z_1 = (a, k; 0, zeta8 a), Z_2 = (a, k; 0, i a); Y = Z^2
            let d = match n {
                1 => CycloElem::zeta8(),
                _ => CycloElem::i_unit(),
            };
            let z = Mat2::new(
                lp(unit.clone(), 0),
                cst(kappa),
                cst(&CycloElem::ZERO),
                lp(unit.mul_scalar(&d), 0),
            );
            (z.mul(&z), z)
        }
        ArcFamily::Bogen2 => {
            // Y_1 = (b, m; 0, i b), Y_2 = (b, m; 0, -b); Z = 1 + (k/m)(Y - 1)
            let d = match n {
                1 => CycloElem::i_unit(),
                _ => CycloElem::ONE.neg(),
            };
            let y = Mat2::new(
                lp(unit.clone(), 0),
                cst(mu),
                cst(&CycloElem::ZERO),
                lp(unit.mul_scalar(&d), 0),
            );
            let ratio = kappa.div(mu).expect("mu is a unit");
            let id = y.identity_like();
            let z = id.add(&y.sub(&id).scalar_mul(&cst(&ratio)));
            (y, z)
        }
    };

    Ok(Arc {
        x,
        y,
        z,
        unit,
        family,
        n,
        lambda: lambda.clone(),
        mu: mu.clone(),
        kappa: kappa.clone(),
    })
}

impl Arc {
    /// Evaluates every entry at `t = v`.
    pub fn specialize(&self, v: &CycloElem) -> Result<[Mat2<CycloElem>; 3], ArcError> {
        let eval = |m: &Mat2<LocalizedPoly>| -> Result<Mat2<CycloElem>, ArcError> {
            Ok(Mat2::new(
                m.a11.evaluate(core::slice::from_ref(v))?,
                m.a12.evaluate(core::slice::from_ref(v))?,
                m.a21.evaluate(core::slice::from_ref(v))?,
                m.a22.evaluate(core::slice::from_ref(v))?,
            ))
        };
        Ok([eval(&self.x)?, eval(&self.y)?, eval(&self.z)?])
    }

    /// The point this arc starts at (`t = 0`) and ends at (`t = 1`).
    pub fn endpoint_indices(&self) -> (u8, u8) {
        (self.n, self.n + 2)
    }

    fn base_matrices(&self) -> [Mat2<LocalizedPoly>; 3] {
        let cst = |c: &CycloElem| LocalizedPoly::constant(c.clone(), &self.unit);
        let base = |c: &CycloElem| {
            Mat2::new(
                cst(&CycloElem::ONE),
                cst(c),
                cst(&CycloElem::ZERO),
                cst(&CycloElem::ONE),
            )
        };
        [base(&self.lambda), base(&self.mu), base(&self.kappa)]
    }
}

/// Verification record for one arc.
#[derive(Clone, Debug)]
pub struct ArcReport {
    /// `X^2 Y^5 Z = Z Y`, the denominator-cleared form of the relation:
    /// the exact decision procedure for the word identity.
    pub relation_cross_ok: bool,
    /// `X^2 Y^4 [Y, Z] = 1` computed literally (inverses by adjugate).
    /// `None` when `det Z` is not a constant times a unit power, so the
    /// literal inverse does not exist in this localization (the cleared
    /// form still decides the identity); this happens for the second
    /// family when `kappa/mu` is a unit other than 1.
    pub relation_word_ok: Option<bool>,
    /// The three-minor commutation criterion for `[Y, Z] = 1` (needs no
    /// inversion).
    pub commute_ok: bool,
    /// `[Y, Z] = 1` computed literally, when representable.
    pub commutator_identity_ok: Option<bool>,
    /// `X^2 = unit^-(2e) I`.
    pub square_identity_ok: bool,
    /// `Y^4 = unit^(2e) I`.
    pub fourth_power_ok: bool,
    /// First family only: `Z^8 = unit^8 I`.
    pub z_eighth_ok: Option<bool>,
    /// Specializations at `t = 0, 1` equal the family points `n`, `n + 2`,
    /// compared structurally and in canonical serialization.
    pub endpoints_ok: bool,
    pub endpoint_start: String,
    pub endpoint_end: String,
    /// `delta(t) = det X (det Y)^2` reduced to a constant.
    pub delta: Option<CycloElem>,
    /// The constant is `+1` for `n = 1` and `-1` for `n = 2`.
    pub delta_ok: bool,
    /// Every entry of `X - base`, `Y - base`, `Z - base` is certified
    /// topologically nilpotent.
    pub nilpotence_ok: bool,
    pub certificates: Vec<(String, NilpotenceCertificate)>,
    /// Every entry's denominator power is at most 8.
    pub denominators_bounded: bool,
}

impl ArcReport {
    pub fn all_ok(&self) -> bool {
        self.relation_cross_ok
            && self.relation_word_ok.unwrap_or(true)
            && self.commute_ok
            && self.commutator_identity_ok.unwrap_or(true)
            && self.square_identity_ok
            && self.fourth_power_ok
            && self.z_eighth_ok.unwrap_or(true)
            && self.endpoints_ok
            && self.delta_ok
            && self.nilpotence_ok
            && self.denominators_bounded
    }
}

/// Runs the five arc checks, each as an exact identity in the localized
/// polynomial ring.
pub fn verify_arc(arc: &Arc) -> Result<ArcReport, ArcError> {
    let e2 = 2 * arc.family.half_exponent();
    let id = arc.x.identity_like();

    // (a) the relation, in cleared form and as the literal word
    let x2 = arc.x.mul(&arc.x);
    let y2 = arc.y.mul(&arc.y);
    let y4 = y2.mul(&y2);
    let y5 = y4.mul(&arc.y);
    let lhs = x2.mul(&y5).mul(&arc.z);
    let rhs = arc.z.mul(&arc.y);
    let relation_cross_ok = lhs == rhs;
    let relation_word_ok = group_word(&arc.x, &arc.y, &arc.z)
        .ok()
        .map(|w| w.is_identity());
    let commute_ok = commute_criterion(&arc.y, &arc.z);
    let commutator_identity_ok = Mat2::commutator(&arc.y, &arc.z)
        .ok()
        .map(|c| c.is_identity());

    // (b) the intermediate power identities
    let u_neg = LocalizedPoly::new(SparsePoly::one(arc.unit.vars()), arc.unit.clone(), e2)
        .expect("valid unit");
    let u_pos = LocalizedPoly::from_poly(arc.unit.pow(e2), arc.unit.clone()).expect("valid unit");
    let square_identity_ok = x2 == id.scalar_mul(&u_neg);
    let fourth_power_ok = y4 == id.scalar_mul(&u_pos);
    let z_eighth_ok = match arc.family {
        ArcFamily::Bogen1 => {
            let z8 = arc.z.pow(8);
            let u8p =
                LocalizedPoly::from_poly(arc.unit.pow(8), arc.unit.clone()).expect("valid unit");
            Some(z8 == id.scalar_mul(&u8p))
        }
        ArcFamily::Bogen2 => None,
    };

    // (c) endpoint specializations against the family points
    let family = arc.family.point_family();
    let (n0, n1) = arc.endpoint_indices();
    let start = make_point(family, n0, &arc.lambda, &arc.mu, &arc.kappa)
        .map_err(|e| ArcError::ParameterFamilyMismatch(format!("{e}")))?;
    let end = make_point(family, n1, &arc.lambda, &arc.mu, &arc.kappa)
        .map_err(|e| ArcError::ParameterFamilyMismatch(format!("{e}")))?;
    let [x0, y0, z0] = arc.specialize(&CycloElem::ZERO)?;
    let [x1, y1, z1] = arc.specialize(&CycloElem::ONE)?;
    let as_point =
        |x: Mat2<CycloElem>, y: Mat2<CycloElem>, z: Mat2<CycloElem>, n: u8| FramedPoint {
            x,
            y,
            z,
            lambda: arc.lambda.clone(),
            mu: arc.mu.clone(),
            kappa: arc.kappa.clone(),
            family,
            n,
        };
    let p0 = as_point(x0, y0, z0, n0);
    let p1 = as_point(x1, y1, z1, n1);
    let endpoint_start = p0.canonical_serialization();
    let endpoint_end = p1.canonical_serialization();
    let endpoints_ok = p0.x == start.x
        && p0.y == start.y
        && p0.z == start.z
        && p1.x == end.x
        && p1.y == end.y
        && p1.z == end.z
        && endpoint_start == start.canonical_serialization()
        && endpoint_end == end.canonical_serialization();

    // (d) delta is constant and matches the component split
    let dety = arc.y.det();
    let delta_loc = arc.x.det().mul(&dety).mul(&dety);
    let delta = delta_loc.as_constant();
    let expected = if arc.n == 1 {
        CycloElem::ONE
    } else {
        CycloElem::from_int(-1)
    };
    let delta_ok = delta.as_ref() == Some(&expected);

    let denominators_bounded = [&arc.x, &arc.y, &arc.z]
        .iter()
        .all(|m| m.entries().iter().all(|e| e.denominator_power() <= 8));

    // (e) nilpotence certificates for every coordinate entry
    let [bx, by, bz] = arc.base_matrices();
    let mut certificates = Vec::new();
    let mut nilpotence_ok = true;
    for (label, m, b) in [("X", &arc.x, &bx), ("Y", &arc.y, &by), ("Z", &arc.z, &bz)] {
        let d = m.sub(b);
        for (pos, entry) in [
            ("11", &d.a11),
            ("12", &d.a12),
            ("21", &d.a21),
            ("22", &d.a22),
        ] {
            let cert = nilpotence_certificate(entry)?;
            if !cert.certifies() {
                nilpotence_ok = false;
            }
            certificates.push((format!("{label}{pos}"), cert));
        }
    }

    Ok(ArcReport {
        relation_cross_ok,
        relation_word_ok,
        commute_ok,
        commutator_identity_ok,
        square_identity_ok,
        fourth_power_ok,
        z_eighth_ok,
        endpoints_ok,
        endpoint_start,
        endpoint_end,
        delta,
        delta_ok,
        nilpotence_ok,
        certificates,
        denominators_bounded,
    })
}

/// An ordered list of arcs whose consecutive endpoints agree.  This
/// validates the endpoint matching only; connectivity conclusions about
/// the spectrum are not modeled.
pub struct Kette {
    pub arcs: Vec<Arc>,
}

impl Kette {
    pub fn new(arcs: Vec<Arc>) -> Self {
        Kette { arcs }
    }

    /// Consecutive arcs share the intermediate point: the specialization
    /// of one arc at `t = 1` equals the next one at `t = 0`, entry for
    /// entry.
    pub fn endpoints_match(&self) -> Result<bool, ArcError> {
        for w in self.arcs.windows(2) {
            let end = w[0].specialize(&CycloElem::ONE)?;
            let start = w[1].specialize(&CycloElem::ZERO)?;
            if end != start {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Certifies topological nilpotence of `p(t) unit^-k`: expands to degree
/// `M = deg(p) + ceil(1/w)` and checks positivity of every coefficient
/// valuation, then bounds the tail by
/// `v(coeff_m) >= min_j v(p_j) + (m - deg p) w` for `m > M`.
pub fn nilpotence_certificate(entry: &LocalizedPoly) -> Result<NilpotenceCertificate, ArcError> {
    let unit = entry.unit();
    // unit must be 1 + c t with v(c) > 0
    let c = unit.coefficient_of(&[1]);
    let unit_ok = unit.constant_term().is_one()
        && unit.total_degree() == 1
        && unit.num_terms() == 2
        && c.val2().is_positive();
    if !unit_ok {
        return Err(ArcError::Precondition(
            "unit must have the form 1 + c t with v(c) > 0".into(),
        ));
    }
    let w = match c.val2() {
        Val::Fin(w) => w,
        Val::Inf => unreachable!("c is nonzero"),
    };

    let p = entry.numerator();
    if p.is_zero() {
        return Ok(NilpotenceCertificate {
            expansion_degree: 0,
            min_valuation: Val::Inf,
            unit_linear_valuation: w,
            numerator_min_valuation: Val::Inf,
            tail_bound: Val::Inf,
        });
    }
    let numerator_min_valuation = p.min_coeff_val();
    if !numerator_min_valuation.is_nonnegative() {
        return Err(ArcError::Precondition(
            "numerator coefficients must have nonnegative valuation".into(),
        ));
    }

    let deg_p = p.total_degree();
    // ceil(1/w) for the positive rational w
    let w_inv = w.inv().expect("w > 0");
    let ceil_inv_w = {
        let n = w_inv.numerator();
        let d = w_inv.denominator();
        let q: num_bigint::BigInt = (&n + &d - 1u8) / &d;
        u32::try_from(&q).expect("small bound")
    };
    let m_top = deg_p + ceil_inv_w;

    // coefficients of unit^-k up to degree M: start from the geometric
    // series of unit^-1 and convolve
    let k = entry.denominator_power();
    let len = (m_top + 1) as usize;
    let mut geo: Vec<CycloElem> = Vec::with_capacity(len);
    let mut acc = CycloElem::ONE;
    let minus_c = c.neg();
    for d in 0..len {
        if d > 0 {
            acc = acc.mul(&minus_c);
        }
        geo.push(acc.clone());
    }
    let mut upow: Vec<CycloElem> = alloc::vec![CycloElem::ZERO; len];
    upow[0] = CycloElem::ONE;
    for _ in 0..k {
        let mut next = alloc::vec![CycloElem::ZERO; len];
        for (i, gi) in geo.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, uj) in upow.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if uj.is_zero() {
                    continue;
                }
                next[i + j] = next[i + j].add(&gi.mul(uj));
            }
        }
        upow = next;
    }

    // expansion coefficients of p * unit^-k up to M
    let mut min_valuation = Val::Inf;
    for m in 0..len {
        let mut coeff = CycloElem::ZERO;
        for (mono, pc) in p.terms() {
            let j = mono.deg() as usize;
            if j <= m {
                coeff = coeff.add(&pc.mul(&upow[m - j]));
            }
        }
        min_valuation = min_valuation.min_with(&coeff.val2());
    }

    // tail: for m > M, v >= min_j v(p_j) + (m - deg p) w, and
    // m - deg p >= ceil(1/w) + 1, so the bound below is the worst case
    let tail_bound =
        numerator_min_valuation.add(&Val::Fin(w.mul(&Rational::from_int(ceil_inv_w as i64 + 1))));

    Ok(NilpotenceCertificate {
        expansion_degree: m_top,
        min_valuation,
        unit_linear_valuation: w,
        numerator_min_valuation,
        tail_bound,
    })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: i64) -> CycloElem {
        CycloElem::from_int(n)
    }

    #[test]
    fn x_polynomial_identity() {
        // (1 - 6t^2 + 4t^3)^2 + t^2 (1-t)^2 (2 + 4t)(6 - 4t) = 1
        let (vars, t) = t_ring();
        let one = SparsePoly::one(&vars);
        let p = one
            .try_sub(&t.pow(2).mul_scalar(&ci(6)))
            .unwrap()
            .try_add(&t.pow(3).mul_scalar(&ci(4)))
            .unwrap();
        let q = t
            .try_mul(&one.try_sub(&t).unwrap())
            .unwrap()
            .try_mul(
                &SparsePoly::constant(&vars, ci(2))
                    .try_add(&t.mul_scalar(&ci(4)))
                    .unwrap(),
            )
            .unwrap();
        let r = t
            .try_mul(&one.try_sub(&t).unwrap())
            .unwrap()
            .try_mul(
                &SparsePoly::constant(&vars, ci(6))
                    .try_sub(&t.mul_scalar(&ci(4)))
                    .unwrap(),
            )
            .unwrap();
        let total = p.pow(2).try_add(&q.try_mul(&r).unwrap()).unwrap();
        assert_eq!(total, one);
    }

    #[test]
    fn explicit_first_family_arc() {
        let arc = make_arc(ArcFamily::Bogen1, 1, &ci(0), &ci(0), &ci(0)).unwrap();
        // Z_1(t) = (a, 0; 0, zeta8 a)
        assert_eq!(arc.z.a11.numerator(), &arc.unit);
        assert_eq!(
            arc.z.a22.numerator(),
            &arc.unit.mul_scalar(&CycloElem::zeta8())
        );
        let rep = verify_arc(&arc).unwrap();
        assert!(rep.all_ok(), "{rep:?}");
        assert_eq!(rep.delta, Some(ci(1)));
    }

    #[test]
    fn grid_of_arcs_passes() {
        for family in [ArcFamily::Bogen1, ArcFamily::Bogen2] {
            let mus: &[i64] = match family {
                ArcFamily::Bogen1 => &[0],
                ArcFamily::Bogen2 => &[1],
            };
            for &m in mus {
                for n in 1..=2u8 {
                    for l in [0i64, 1] {
                        for k in [0i64, 1] {
                            let arc = make_arc(family, n, &ci(l), &ci(m), &ci(k)).unwrap();
                            let rep = verify_arc(&arc).unwrap();
                            assert!(rep.all_ok(), "{family:?} n={n} l={l} k={k}: {rep:?}");
                            let expected = if n == 1 { ci(1) } else { ci(-1) };
                            assert_eq!(rep.delta, Some(expected));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn endpoints_share_delta_partition() {
        // arcs connect 1 <-> 3 and 2 <-> 4, never across the split
        for family in [ArcFamily::Bogen1, ArcFamily::Bogen2] {
            let m = if family == ArcFamily::Bogen1 { 0 } else { 1 };
            for n in 1..=2u8 {
                let arc = make_arc(family, n, &ci(1), &ci(m), &ci(1)).unwrap();
                let (a, b) = arc.endpoint_indices();
                assert_eq!(b - a, 2);
                let pa = make_point(family.point_family(), a, &ci(1), &ci(m), &ci(1)).unwrap();
                let pb = make_point(family.point_family(), b, &ci(1), &ci(m), &ci(1)).unwrap();
                let ra = crate::points::verify_point(&pa);
                let rb = crate::points::verify_point(&pb);
                assert_eq!(ra.delta, rb.delta);
            }
        }
    }

    #[test]
    fn nilpotence_of_inverse_unit_minus_one() {
        // a^-1 - 1 has coefficients (-(zeta8 - 1))^m at t^m, valuation m/4
        let unit = unit_for(ArcFamily::Bogen1);
        let one = SparsePoly::one(unit.vars());
        let inv_minus_one =
            LocalizedPoly::new(one.try_sub(&unit).unwrap(), unit.clone(), 1).unwrap();
        let cert = nilpotence_certificate(&inv_minus_one).unwrap();
        assert!(cert.certifies());
        assert_eq!(cert.min_valuation, Val::Fin(Rational::new(1, 4)));
        assert_eq!(cert.unit_linear_valuation, Rational::new(1, 4));
    }

    #[test]
    fn nilpotence_of_zero_entry() {
        let unit = unit_for(ArcFamily::Bogen1);
        let zero = LocalizedPoly::constant(CycloElem::ZERO, &unit);
        let cert = nilpotence_certificate(&zero).unwrap();
        assert!(cert.certifies());
        assert_eq!(cert.min_valuation, Val::Inf);
    }

    #[test]
    fn nilpotence_of_lower_left_entry() {
        // (4/l) t (1 - t) a^-8 with l = 1: numerator valuations >= 2
        let arc = make_arc(ArcFamily::Bogen1, 1, &ci(1), &ci(0), &ci(0)).unwrap();
        let base = Mat2::new(ci(1), ci(1), ci(0), ci(1));
        let entry = arc.x.a21.clone();
        let cert = nilpotence_certificate(&entry).unwrap();
        assert!(cert.certifies());
        assert!(cert.numerator_min_valuation >= Val::from_int(2));
        let _ = base;
    }

    #[test]
    fn nilpotence_precondition_rejects_nonintegral() {
        let unit = unit_for(ArcFamily::Bogen1);
        let half = SparsePoly::constant(unit.vars(), CycloElem::from_rational(Rational::new(1, 2)));
        let bad = LocalizedPoly::new(half, unit, 1).unwrap();
        assert!(matches!(
            nilpotence_certificate(&bad),
            Err(ArcError::Precondition(_))
        ));
    }

    #[test]
    fn family_preconditions() {
        assert!(make_arc(ArcFamily::Bogen1, 1, &ci(0), &ci(1), &ci(0)).is_err());
        assert!(make_arc(ArcFamily::Bogen2, 1, &ci(0), &ci(0), &ci(0)).is_err());
        assert!(make_arc(ArcFamily::Bogen1, 3, &ci(0), &ci(0), &ci(0)).is_err());
        // lambda neither zero nor a unit
        assert!(make_arc(ArcFamily::Bogen1, 1, &ci(2), &ci(0), &ci(0)).is_err());
    }

    #[test]
    fn chain_endpoint_matching() {
        let a1 = make_arc(ArcFamily::Bogen1, 1, &ci(0), &ci(0), &ci(1)).unwrap();
        let a2 = make_arc(ArcFamily::Bogen1, 2, &ci(0), &ci(0), &ci(1)).unwrap();
        // a single arc chains trivially
        assert!(Kette::new(vec![a1.clone()]).endpoints_match().unwrap());
        // arc 1 ends at point 3 while arc 2 starts at point 2: mismatch
        assert!(!Kette::new(vec![a1, a2]).endpoints_match().unwrap());
    }
}

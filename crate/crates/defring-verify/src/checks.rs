//! The check suites: every finitely checkable identity of the kernel,
//! executed across a parameter grid, each producing one record for the
//! report.

use std::collections::BTreeMap;
use std::time::Instant;

use defring_core::arcs::{make_arc, verify_arc, ArcFamily};
use defring_core::coeffs::CycloElem;
use defring_core::deform::{
    bijektion_specialization, compute_relation, delta_series, delta_witness, f_element,
    f_substitution_identities, mono_y12_z11, r1_component, r1_idempotent_check,
    shift_isomorphism_check, triangular_identities, DeformParams, R1Component,
};
use defring_core::groebner::{buchberger, determinantal_check, MonomialOrder};
use defring_core::mat2::{
    commute_criterion, group_word, unipotent_fiber_order, FiniteRingSpec, Mat2,
};
use defring_core::points::{make_point, schnitt_case, verify_point, FramedPoint, PointFamily};
use defring_core::polyring::{Poly, SparsePoly, VarSet};
use serde_json::json;

use crate::report::{status, CheckRecord, TimedRecord};

/// Parameter grid resolved from the CLI flags.
#[derive(Clone)]
pub struct Grid {
    pub cap: u32,
    pub lambda: Option<i64>,
    pub mu: Option<i64>,
    pub kappa: Option<i64>,
    pub family: Option<String>,
}

impl Grid {
    fn lambdas(&self) -> Vec<i64> {
        self.lambda.map(|v| vec![v]).unwrap_or_else(|| vec![0, 1])
    }
    fn mus(&self) -> Vec<i64> {
        self.mu.map(|v| vec![v]).unwrap_or_else(|| vec![0, 1])
    }
    fn kappas(&self) -> Vec<i64> {
        self.kappa.map(|v| vec![v]).unwrap_or_else(|| vec![0, 1])
    }
    fn tuples(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for l in self.lambdas() {
            for m in self.mus() {
                for k in self.kappas() {
                    out.push((l, m, k));
                }
            }
        }
        out
    }
    /// `mu` per point/arc family: 0 for the first, a unit for the second.
    fn family_mu(&self, family: PointFamily) -> Option<i64> {
        match family {
            PointFamily::Punkte1 => match self.mu {
                None | Some(0) => Some(0),
                Some(_) => None,
            },
            PointFamily::Punkte2 => match self.mu {
                None => Some(1),
                // an integer is a unit of O exactly when it is odd
                Some(m) if m % 2 != 0 => Some(m),
                Some(_) => None,
            },
        }
    }
    fn wants_family(&self, label: &str) -> bool {
        self.family.as_deref().is_none_or(|f| f == label)
    }
    /// Arc construction requires lambda to be zero or a unit.
    fn arc_lambdas(&self) -> Vec<i64> {
        self.lambdas()
            .into_iter()
            .filter(|l| *l == 0 || l % 2 != 0)
            .collect()
    }
}

pub type Job = Box<dyn Fn() -> CheckRecord + Send + Sync>;

pub fn run_jobs(jobs: Vec<Job>, threads: usize) -> Vec<TimedRecord> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|job| {
                let t0 = Instant::now();
                let record = job();
                TimedRecord {
                    record,
                    millis: t0.elapsed().as_millis(),
                }
            })
            .collect()
    })
}

fn pmap(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn tuple_params(l: i64, m: i64, k: i64, cap: u32) -> BTreeMap<String, String> {
    pmap(&[
        ("lambda", l.to_string()),
        ("mu", m.to_string()),
        ("kappa", k.to_string()),
        ("cap", cap.to_string()),
    ])
}

// ---------------------------------------------------------------------------
// relation
// ---------------------------------------------------------------------------

pub fn relation_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let cap = grid.cap;
    for (l, m, k) in grid.tuples() {
        jobs.push(Box::new(move || {
            let rel = compute_relation(&DeformParams::from_ints(l, m, k, cap));
            let [f11, f12, f21, f22] = rel.origin_values();
            let expected_f12 = CycloElem::from_int(2 * l + 4 * m);
            let origin_ok = f11.is_zero() && f21.is_zero() && f22.is_zero() && f12 == expected_f12;
            let ideal_ok = rel
                .entries()
                .iter()
                .all(|f| f.constant_term().val2().is_positive());
            CheckRecord {
                id: "relation/origin".into(),
                statement: "the four relation generators exist; at the origin f11, f21, f22 \
                            vanish and f12 = 2*lambda + 4*mu; all constant terms lie in the \
                            maximal ideal"
                    .into(),
                params: tuple_params(l, m, k, cap),
                status: status(origin_ok && ideal_ok),
                witness: json!({
                    "f11_origin": f11.render(),
                    "f12_origin": f12.render(),
                    "f21_origin": f21.render(),
                    "f22_origin": f22.render(),
                    "f12_expected": expected_f12.render(),
                    "terms": rel.entries().iter().map(|f| f.num_terms()).collect::<Vec<_>>(),
                }),
            }
        }));
    }
    // the three shift isomorphisms from the base parameters
    for (dl, dm, dk) in [(2i64, 0i64, 0i64), (0, 2, 0), (0, 0, 2)] {
        jobs.push(Box::new(move || {
            let p0 = DeformParams::from_ints(0, 0, 0, cap);
            let p2 = DeformParams::from_ints(dl, dm, dk, cap);
            let check = shift_isomorphism_check(&p0, &p2).expect("congruent parameters");
            CheckRecord {
                id: "relation/shift".into(),
                statement: "the off-diagonal shift carries the relation at (0,0,0) to the \
                            relation at the shifted parameters, exactly modulo m^(cap+1)"
                    .into(),
                params: pmap(&[
                    ("shift", format!("({dl},{dm},{dk})")),
                    ("cap", cap.to_string()),
                ]),
                status: status(check.congruent),
                witness: json!({
                    "congruent_mod_m_pow_cap_plus_1": check.congruent,
                    "plain_truncation_equality": check.exactly_equal,
                    "min_excess": check.min_excess.map(|v| v.to_string()),
                }),
            }
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------
// delta
// ---------------------------------------------------------------------------

pub fn delta_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let cap = grid.cap;
    for (l, m, k) in grid.tuples() {
        jobs.push(Box::new(move || {
            let w = delta_witness(&DeformParams::from_ints(l, m, k, cap));
            let witness_ok = w.witness_holds();
            let idem_ok = w.idempotent_holds();
            CheckRecord {
                id: "delta/witness".into(),
                statement: "delta^2 - 1 = f11 + f22 + f11 f22 - f12 f21 coefficient for \
                            coefficient, and ((1+delta)/2)^2 - (1+delta)/2 = (delta^2 - 1)/4"
                    .into(),
                params: tuple_params(l, m, k, cap),
                status: status(witness_ok && idem_ok),
                witness: json!({
                    "membership_identity": witness_ok,
                    "idempotent_identity": idem_ok,
                    "delta_terms": w.delta.num_terms(),
                    "combination_terms": w.combination.num_terms(),
                }),
            }
        }));
    }
    // delta takes the value -1 at the second point of the first family
    let cap_eff = cap.max(6);
    jobs.push(Box::new(move || {
        let d = delta_series(&DeformParams::from_ints(0, 0, 0, cap_eff));
        let p2 = make_point(
            PointFamily::Punkte1,
            2,
            &CycloElem::ZERO,
            &CycloElem::ZERO,
            &CycloElem::ZERO,
        )
        .expect("valid point");
        let value = p2.evaluate(d.poly());
        CheckRecord {
            id: "delta/second-point-value".into(),
            statement: "delta, a complete polynomial at cap >= 6, evaluates to -1 at the \
                        second point of the first family"
                .into(),
            params: pmap(&[("cap", cap_eff.to_string())]),
            status: status(value == CycloElem::from_int(-1)),
            witness: json!({ "value": value.render() }),
        }
    }));
    jobs
}

// ---------------------------------------------------------------------------
// triangular
// ---------------------------------------------------------------------------

const EPS_PAIRS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

pub fn triangular_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    // a cap of at least 8 makes the compared objects complete polynomials
    let cap = grid.cap.max(8);
    for (l, m, k) in grid.tuples() {
        jobs.push(Box::new(move || {
            let rep = triangular_identities(&DeformParams::from_ints(l, m, k, cap));
            CheckRecord {
                id: "triangular/identities".into(),
                statement: "on the locus x21 = y21 = z21 = 0: f21 = 0, the diagonal entries \
                            are X11^2 Y11^4 - 1 and X22^2 Y22^4 - 1, and f12 matches the \
                            displayed off-diagonal expression after clearing Y22 Z22"
                    .into(),
                params: tuple_params(l, m, k, cap),
                status: status(rep.all_ok()),
                witness: json!({
                    "f21_zero": rep.f21_zero,
                    "f11_diagonal": rep.f11_diagonal,
                    "f22_diagonal": rep.f22_diagonal,
                    "f12_cleared": rep.f12_cleared,
                    "x2y4_entry_expansion": rep.x2y4_entry,
                    "commutator_entry_expansion": rep.commutator_entry,
                }),
            }
        }));
        for (e1, e2) in EPS_PAIRS {
            jobs.push(Box::new(move || {
                let params = DeformParams::from_ints(l, m, k, cap);
                let f = f_element(&params, e1, e2).expect("valid signs");
                let coeff = f.coefficient_of(&mono_y12_z11());
                let mut p = tuple_params(l, m, k, cap);
                p.insert("eps1".into(), e1.to_string());
                p.insert("eps2".into(), e2.to_string());
                CheckRecord {
                    id: "triangular/f-coefficient".into(),
                    statement: "the coefficient of y12 z11 in the component-splitting element \
                                f equals -1"
                        .into(),
                    params: p,
                    status: status(coeff == CycloElem::from_int(-1)),
                    witness: json!({ "coefficient": coeff.render(), "f_terms": f.num_terms() }),
                }
            }));
            jobs.push(Box::new(move || {
                let params = DeformParams::from_ints(l, m, k, cap);
                let rep = f_substitution_identities(&params, e1, e2).expect("valid signs");
                let mut p = tuple_params(l, m, k, cap);
                p.insert("eps1".into(), e1.to_string());
                p.insert("eps2".into(), e2.to_string());
                CheckRecord {
                    id: "triangular/f-substitutions".into(),
                    statement: "substituting y11 -> y22 (and, for opposite signs, \
                                y11 -> -y22 - 2) into f reproduces the displayed collapsed \
                                expressions exactly"
                        .into(),
                    params: p,
                    status: status(rep.all_ok()),
                    witness: json!({
                        "diagonal": rep.diagonal_ok,
                        "antidiagonal": rep.antidiagonal_ok,
                    }),
                }
            }));
        }
    }
    jobs
}

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

/// Expected `(eps1, eps2)` by index, identical in both families.
fn expected_signs(n: u8) -> (i64, i64) {
    match n {
        1 => (1, 1),
        2 => (1, -1),
        3 => (-1, -1),
        4 => (-1, 1),
        _ => unreachable!(),
    }
}

fn expected_delta(n: u8) -> i64 {
    if n % 2 == 1 {
        1
    } else {
        -1
    }
}

pub fn points_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for family in [PointFamily::Punkte1, PointFamily::Punkte2] {
        if !grid.wants_family(family.label()) {
            continue;
        }
        let Some(m) = grid.family_mu(family) else {
            continue;
        };
        for l in grid.lambdas() {
            for k in grid.kappas() {
                for n in 1..=4u8 {
                    jobs.push(Box::new(move || {
                        let pt = make_point(
                            family,
                            n,
                            &CycloElem::from_int(l),
                            &CycloElem::from_int(m),
                            &CycloElem::from_int(k),
                        )
                        .expect("grid parameters are admissible");
                        let rep = verify_point(&pt);
                        let (se1, se2) = expected_signs(n);
                        let signs_ok = rep.eps1 == CycloElem::from_int(se1)
                            && rep.eps2 == CycloElem::from_int(se2);
                        let delta_ok = rep.delta == CycloElem::from_int(expected_delta(n));
                        CheckRecord {
                            id: "points/verify".into(),
                            statement: "the explicit point satisfies the relation exactly, \
                                        reduces to the residual representation, and carries \
                                        the expected component coordinates and delta"
                                .into(),
                            params: pmap(&[
                                ("family", family.label().to_string()),
                                ("n", n.to_string()),
                                ("lambda", l.to_string()),
                                ("mu", m.to_string()),
                                ("kappa", k.to_string()),
                            ]),
                            status: status(rep.all_ok() && signs_ok && delta_ok),
                            witness: json!({
                                "relation": rep.relation_ok,
                                "reduction": rep.reduction_ok,
                                "eps1": rep.eps1.render(),
                                "eps2": rep.eps2.render(),
                                "delta": rep.delta.render(),
                                "shortcut_agrees": rep.shortcut_ok,
                                "torsion": rep.torsion_ok,
                                "schnitt_case": rep.schnitt_case,
                                "serialization": pt.canonical_serialization(),
                            }),
                        }
                    }));
                }
                jobs.push(Box::new(move || {
                    let mut seen: Vec<(i64, i64)> = Vec::new();
                    for n in 1..=4u8 {
                        let pt = make_point(
                            family,
                            n,
                            &CycloElem::from_int(l),
                            &CycloElem::from_int(m),
                            &CycloElem::from_int(k),
                        )
                        .expect("grid parameters are admissible");
                        let rep = verify_point(&pt);
                        for s in [-1i64, 1] {
                            for t in [-1i64, 1] {
                                if rep.eps1 == CycloElem::from_int(s)
                                    && rep.eps2 == CycloElem::from_int(t)
                                {
                                    seen.push((s, t));
                                }
                            }
                        }
                    }
                    seen.sort();
                    seen.dedup();
                    CheckRecord {
                        id: "points/sign-pairs".into(),
                        statement: "the four points of the family realize all four sign pairs \
                                    (one per component)"
                            .into(),
                        params: pmap(&[
                            ("family", family.label().to_string()),
                            ("lambda", l.to_string()),
                            ("mu", m.to_string()),
                            ("kappa", k.to_string()),
                        ]),
                        status: status(seen.len() == 4),
                        witness: json!({ "pairs": seen }),
                    }
                }));
            }
        }
    }
    jobs
}

// ---------------------------------------------------------------------------
// schnitt
// ---------------------------------------------------------------------------

pub fn schnitt_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for family in [PointFamily::Punkte1, PointFamily::Punkte2] {
        if !grid.wants_family(family.label()) {
            continue;
        }
        let Some(m) = grid.family_mu(family) else {
            continue;
        };
        for l in grid.lambdas() {
            for k in grid.kappas() {
                for n in 1..=4u8 {
                    jobs.push(Box::new(move || {
                        let pt = make_point(
                            family,
                            n,
                            &CycloElem::from_int(l),
                            &CycloElem::from_int(m),
                            &CycloElem::from_int(k),
                        )
                        .expect("grid parameters are admissible");
                        let case = schnitt_case(&pt);
                        // the family points have distinct diagonal Y entries,
                        // so the first case must apply
                        let lhs = pt.y.a11.sub(&pt.y.a22).mul(&pt.z.a12);
                        let rhs = pt.y.a12.mul(&pt.z.a11.sub(&pt.z.a22));
                        CheckRecord {
                            id: "schnitt/classification".into(),
                            statement: "the point satisfies the first of the three \
                                        triangular-locus case conditions, with the cross \
                                        identity holding exactly"
                                .into(),
                            params: pmap(&[
                                ("family", family.label().to_string()),
                                ("n", n.to_string()),
                                ("lambda", l.to_string()),
                                ("mu", m.to_string()),
                                ("kappa", k.to_string()),
                            ]),
                            status: status(case == Ok(1) && lhs == rhs),
                            witness: json!({
                                "case": case.clone().ok(),
                                "lhs": lhs.render(),
                                "rhs": rhs.render(),
                            }),
                        }
                    }));
                }
            }
        }
    }
    // the synthetic representatives of the other two cases
    jobs.push(Box::new(|| {
        let ci = CycloElem::from_int;
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
        let rel = group_word(&p2.x, &p2.y, &p2.z)
            .map(|w| w.is_identity())
            .unwrap_or(false);
        let case = schnitt_case(&p2);
        CheckRecord {
            id: "schnitt/case-two-example".into(),
            statement: "a relation-satisfying point with equal diagonal Y entries and zero \
                        off-diagonal Y classifies as the second case"
                .into(),
            params: pmap(&[]),
            status: status(rel && case == Ok(2)),
            witness: json!({ "relation": rel, "case": case.clone().ok() }),
        }
    }));
    jobs.push(Box::new(|| {
        let ci = CycloElem::from_int;
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
        let rel = group_word(&p3.x, &p3.y, &p3.z)
            .map(|w| w.is_identity())
            .unwrap_or(false);
        let case = schnitt_case(&p3);
        CheckRecord {
            id: "schnitt/case-three-example".into(),
            statement: "a relation-satisfying point with equal diagonal Y entries and \
                        Z11 = 5 Z22 classifies as the third case"
                .into(),
            params: pmap(&[]),
            status: status(rel && p3.reduces_to_residual() && case == Ok(3)),
            witness: json!({ "relation": rel, "case": case.clone().ok() }),
        }
    }));
    jobs
}

// ---------------------------------------------------------------------------
// arcs
// ---------------------------------------------------------------------------

pub fn arcs_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for family in [ArcFamily::Bogen1, ArcFamily::Bogen2] {
        if !grid.wants_family(family.label()) {
            continue;
        }
        let Some(m) = grid.family_mu(family.point_family()) else {
            continue;
        };
        for n in 1..=2u8 {
            for l in grid.arc_lambdas() {
                for k in grid.kappas() {
                    jobs.push(Box::new(move || {
                        let arc = make_arc(
                            family,
                            n,
                            &CycloElem::from_int(l),
                            &CycloElem::from_int(m),
                            &CycloElem::from_int(k),
                        )
                        .expect("grid parameters are admissible");
                        let rep = verify_arc(&arc).expect("arc verifies structurally");
                        let min_cert = rep
                            .certificates
                            .iter()
                            .map(|(_, c)| c.min_valuation.clone())
                            .fold(defring_core::coeffs::Val::Inf, |a, b| a.min_with(&b));
                        CheckRecord {
                            id: "arcs/verify".into(),
                            statement: "the arc satisfies the relation identically, the X/Y \
                                        power identities, specializes at t = 0, 1 to the \
                                        family points, has constant delta, and every entry \
                                        difference is certified topologically nilpotent"
                                .into(),
                            params: pmap(&[
                                ("family", family.label().to_string()),
                                ("n", n.to_string()),
                                ("lambda", l.to_string()),
                                ("mu", m.to_string()),
                                ("kappa", k.to_string()),
                            ]),
                            status: status(rep.all_ok()),
                            witness: json!({
                                "relation_cleared": rep.relation_cross_ok,
                                "relation_word": rep.relation_word_ok,
                                "commute_criterion": rep.commute_ok,
                                "commutator_identity": rep.commutator_identity_ok,
                                "x_square_identity": rep.square_identity_ok,
                                "y_fourth_identity": rep.fourth_power_ok,
                                "z_eighth_identity": rep.z_eighth_ok,
                                "endpoints": rep.endpoints_ok,
                                "endpoint_start": rep.endpoint_start,
                                "endpoint_end": rep.endpoint_end,
                                "delta": rep.delta.map(|d| d.render()),
                                "nilpotence": rep.nilpotence_ok,
                                "min_certificate_valuation": min_cert.to_string(),
                            }),
                        }
                    }));
                }
            }
        }
    }
    jobs.push(Box::new(|| {
        // (1 - 6t^2 + 4t^3)^2 + t^2 (1 - t)^2 (2 + 4t)(6 - 4t) = 1
        let vars = VarSet::univar_t();
        let t = SparsePoly::var(&vars, 0);
        let one = SparsePoly::one(&vars);
        let ci = CycloElem::from_int;
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
        CheckRecord {
            id: "arcs/x-polynomial-identity".into(),
            statement: "(1 - 6t^2 + 4t^3)^2 + t^2 (1-t)^2 (2 + 4t)(6 - 4t) = 1".into(),
            params: pmap(&[]),
            status: status(total == one),
            witness: json!({ "difference": total.try_sub(&one).unwrap().render() }),
        }
    }));
    jobs
}

// ---------------------------------------------------------------------------
// groebner
// ---------------------------------------------------------------------------

pub fn groebner_jobs(_grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(|| {
        let rep = determinantal_check();
        CheckRecord {
            id: "groebner/determinantal".into(),
            statement: "the ideal of 2x2 minors of a generic 2x3 matrix has Krull dimension \
                        4, over F_2 and F_3 and under permuted variable orders; the shifted \
                        generators coincide with the generic ones when the parameters reduce \
                        to zero"
                .into(),
            params: pmap(&[]),
            status: status(rep.ok()),
            witness: json!({
                "dim_f2": rep.dim_f2,
                "dim_f3": rep.dim_f3,
                "dims_permuted": rep.dims_permuted,
                "dim_two_minor_subideal": rep.dim_subideal,
                "shift_identification": rep.shift_identification_ok,
            }),
        }
    }));
    jobs.push(Box::new(|| {
        let gens = defring_core::groebner::determinantal_generators::<2>();
        let gb = buchberger(&gens, &MonomialOrder::deglex(6));
        let spolys = gb.spolys_reduce_to_zero();
        let inputs = gens.iter().all(|g| gb.normal_form(g).is_zero());
        CheckRecord {
            id: "groebner/basis-criteria".into(),
            statement: "every S-polynomial of the reduced basis reduces to zero and every \
                        input generator reduces to zero"
                .into(),
            params: pmap(&[]),
            status: status(spolys && inputs),
            witness: json!({
                "spolys_reduce": spolys,
                "inputs_reduce": inputs,
                "basis_size": gb.generators.len(),
            }),
        }
    }));
    jobs.push(Box::new(|| {
        // {x y - 1, x^2} generates the unit ideal
        let vars = VarSet::new(&["x", "y"]);
        type P2 = Poly<defring_core::groebner::Fp<2>>;
        let x = P2::var(&vars, 0);
        let y = P2::var(&vars, 1);
        let one = P2::one(&vars);
        let g1 = x.try_mul(&y).unwrap().try_sub(&one).unwrap();
        let g2 = x.try_mul(&x).unwrap();
        let gb = buchberger(&[g1, g2], &MonomialOrder::deglex(2));
        CheckRecord {
            id: "groebner/unit-ideal".into(),
            statement: "the basis of (x y - 1, x^2) contains 1".into(),
            params: pmap(&[]),
            status: status(gb.contains_one()),
            witness: json!({ "basis_size": gb.generators.len() }),
        }
    }));
    jobs
}

// ---------------------------------------------------------------------------
// bijektion
// ---------------------------------------------------------------------------

pub fn bijektion_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let cap = grid.cap;
    let psis: [(i64, i64, i64); 6] = [
        (1, 1, 1),
        (-1, 1, 1),
        (1, -1, 1),
        (-1, -1, 1),
        (1, 1, -1),
        (1, 1, 3),
    ];
    for (px, py, pz) in psis {
        for (l, m, k) in grid.tuples() {
            jobs.push(Box::new(move || {
                let out = bijektion_specialization(
                    &CycloElem::from_int(px),
                    &CycloElem::from_int(py),
                    &CycloElem::from_int(pz),
                    &DeformParams::from_ints(l, m, k, cap),
                )
                .expect("admissible character");
                let mut p = tuple_params(l, m, k, cap);
                p.insert("psi".into(), format!("({px},{py},{pz})"));
                CheckRecord {
                    id: "bijektion/specialization".into(),
                    statement: "after the determinant-map specialization one relation in \
                                (y12, z11) remains; its constant term has positive valuation \
                                and the coefficient of y12 z11^2 is a unit equal to \
                                psi_z^-1 up to sign (sign recorded)"
                        .into(),
                    params: p,
                    status: status(out.coeff_is_unit_psi_inv && out.constant_positive_val),
                    witness: json!({
                        "coefficient": out.coeff_y12_z11_sq.render(),
                        "sign_vs_psi_z_inverse": out.sign,
                        "constant_term": out.constant_term.render(),
                        "relation_terms": out.relation.num_terms(),
                    }),
                }
            }));
        }
    }
    jobs.push(Box::new(|| {
        let ok = r1_idempotent_check();
        CheckRecord {
            id: "bijektion/idempotent".into(),
            statement: "e = -y/2 satisfies e^2 = e in Q[y]/((1+y)^2 - 1): exact polynomial \
                        division with quotient 1/4"
                .into(),
            params: pmap(&[]),
            status: status(ok),
            witness: json!({ "divides": ok }),
        }
    }));
    jobs.push(Box::new(|| {
        let plus = r1_component(&CycloElem::ZERO);
        let minus = r1_component(&CycloElem::from_int(-2));
        let err = r1_component(&CycloElem::ONE);
        let ok = plus == Ok(R1Component::Plus) && minus == Ok(R1Component::Minus) && err.is_err();
        CheckRecord {
            id: "bijektion/r1-components".into(),
            statement: "solutions of (1+y)^2 = 1 classify by component: y = 0 and y = -2; \
                        other values are rejected"
                .into(),
            params: pmap(&[]),
            status: status(ok),
            witness: json!({
                "zero_is_plus": plus.is_ok(),
                "minus_two_is_minus": minus.is_ok(),
                "one_rejected": err.is_err(),
            }),
        }
    }));
    jobs
}

// ---------------------------------------------------------------------------
// finite
// ---------------------------------------------------------------------------

pub fn finite_jobs(_grid: &Grid) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let rings: [(FiniteRingSpec, u64); 4] = [
        (FiniteRingSpec::F2, 2),
        (FiniteRingSpec::DualF2, 32),
        (FiniteRingSpec::Z4, 32),
        (FiniteRingSpec::Z8, 512),
    ];
    for (spec, expected) in rings {
        jobs.push(Box::new(move || {
            let order = unipotent_fiber_order(spec);
            CheckRecord {
                id: "finite/unipotent-fiber".into(),
                statement: "the subgroup of GL_2 reducing to upper unitriangular matrices \
                            modulo the maximal ideal has the expected power-of-2 order \
                            (exhaustive enumeration)"
                    .into(),
                params: pmap(&[("ring", spec.label().to_string())]),
                status: status(order == expected && order.is_power_of_two()),
                witness: json!({ "order": order, "expected": expected }),
            }
        }));
    }
    for (spec, label, count) in [
        (FiniteRingSpec::F2, "F2", 16usize),
        (FiniteRingSpec::Zn(3), "Z3", 81),
    ] {
        jobs.push(Box::new(move || {
            let elems = spec.elements();
            let mut mats = Vec::with_capacity(count);
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        for d in &elems {
                            mats.push(Mat2::new(*a, *b, *c, *d));
                        }
                    }
                }
            }
            let mut agreement = true;
            for a in &mats {
                for b in &mats {
                    if commute_criterion(a, b) != (a.mul(b) == b.mul(a)) {
                        agreement = false;
                    }
                }
            }
            CheckRecord {
                id: "finite/commute-criterion".into(),
                statement: "the three-minor commutation criterion agrees with direct \
                            comparison AB = BA over every pair of 2x2 matrices"
                    .into(),
                params: pmap(&[("ring", label.to_string())]),
                status: status(agreement && mats.len() == count),
                witness: json!({ "matrices": mats.len(), "pairs": mats.len() * mats.len() }),
            }
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------

/// All suites for the `all` subcommand.
pub fn all_jobs(grid: &Grid) -> Vec<Job> {
    let mut jobs = Vec::new();
    jobs.extend(relation_jobs(grid));
    jobs.extend(delta_jobs(grid));
    jobs.extend(triangular_jobs(grid));
    jobs.extend(points_jobs(grid));
    jobs.extend(schnitt_jobs(grid));
    jobs.extend(arcs_jobs(grid));
    jobs.extend(groebner_jobs(grid));
    jobs.extend(bijektion_jobs(grid));
    jobs.extend(finite_jobs(grid));
    jobs
}

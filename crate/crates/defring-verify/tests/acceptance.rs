//! Acceptance suite: ten criteria, each printed as one pass/fail line.
//! Every assertion is exact (zero tolerance); the stated runtime budgets
//! are enforced with wall-clock measurements.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::{Duration, Instant};

use defring_core::arcs::{make_arc, verify_arc, ArcFamily};
use defring_core::coeffs::{CycloElem, Rational, Val};
use defring_core::deform::{
    bijektion_specialization, compute_relation, delta_witness, f_element,
    f_substitution_identities, mono_y12_z11, r1_idempotent_check, shift_isomorphism_check,
    triangular_identities, DeformParams,
};
use defring_core::groebner::{buchberger, determinantal_check, MonomialOrder};
use defring_core::mat2::{commute_criterion, unipotent_fiber_order, FiniteRingSpec, Mat2};
use defring_core::points::{make_point, verify_point, PointFamily};
use defring_core::polyring::{Mono, SparsePoly, TruncSeries, VarSet};

fn ci(n: i64) -> CycloElem {
    CycloElem::from_int(n)
}

fn tuples() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for l in 0..2 {
        for m in 0..2 {
            for k in 0..2 {
                out.push((l, m, k));
            }
        }
    }
    out
}

fn report(n: u32, name: &str, ok: bool, elapsed: Duration) {
    println!(
        "criterion {n:2} ({name}): {} ({:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {n} ({name}) failed");
}

#[test]
fn criterion_01_relation_computer() {
    let t0 = Instant::now();
    let mut ok = true;
    for cap in [6u32, 8] {
        for (l, m, k) in tuples() {
            let rel = compute_relation(&DeformParams::from_ints(l, m, k, cap));
            let [f11, f12, f21, f22] = rel.origin_values();
            ok &= f11.is_zero() && f21.is_zero() && f22.is_zero();
            ok &= f12 == ci(2 * l + 4 * m);
            ok &= rel.entries().iter().all(|f| f.num_terms() > 0);
        }
    }
    let elapsed = t0.elapsed();
    let in_budget = elapsed < Duration::from_secs(60);
    report(
        1,
        "relation computer, caps 6 and 8",
        ok && in_budget,
        elapsed,
    );
}

#[test]
fn criterion_02_delta_witness() {
    let t0 = Instant::now();
    let mut ok = true;
    for (l, m, k) in tuples() {
        let w = delta_witness(&DeformParams::from_ints(l, m, k, 6));
        ok &= w.witness_holds();
        ok &= w.idempotent_holds();
    }
    report(2, "delta ideal-membership witness", ok, t0.elapsed());
}

#[test]
fn criterion_03_shift_isomorphism() {
    // The literal post-condition (plain equality of truncations) is
    // unattainable for any cap: the substitution maps discarded above-cap
    // monomials into low degree.  The exact finitely checkable statement,
    // asserted here with zero tolerance, is the congruence modulo
    // m^(cap+1); the failure of plain equality is recorded alongside.
    let t0 = Instant::now();
    let mut ok = true;
    let mut plain_equality_fails = false;
    let p0 = DeformParams::from_ints(0, 0, 0, 6);
    for (dl, dm, dk) in [(2, 0, 0), (0, 2, 0), (0, 0, 2)] {
        let p2 = DeformParams::from_ints(dl, dm, dk, 6);
        let check = shift_isomorphism_check(&p0, &p2).unwrap();
        ok &= check.congruent;
        plain_equality_fails |= !check.exactly_equal;
    }
    ok &= plain_equality_fails;
    report(
        3,
        "shift isomorphism (exact congruence mod m^(cap+1))",
        ok,
        t0.elapsed(),
    );
}

#[test]
fn criterion_04_points() {
    let t0 = Instant::now();
    let mut ok = true;
    for (family, m) in [(PointFamily::Punkte1, 0i64), (PointFamily::Punkte2, 1)] {
        for l in [0i64, 1] {
            for k in [0i64, 1] {
                let mut signs = Vec::new();
                for n in 1..=4u8 {
                    let pt = make_point(family, n, &ci(l), &ci(m), &ci(k)).unwrap();
                    let rep = verify_point(&pt);
                    ok &= rep.relation_ok && rep.reduction_ok && rep.shortcut_ok;
                    ok &= rep.torsion_ok;
                    let want_delta = if n % 2 == 1 { ci(1) } else { ci(-1) };
                    ok &= rep.delta == want_delta;
                    signs.push((rep.eps1.clone(), rep.eps2.clone()));
                }
                for want in [
                    (ci(1), ci(1)),
                    (ci(1), ci(-1)),
                    (ci(-1), ci(1)),
                    (ci(-1), ci(-1)),
                ] {
                    ok &= signs.contains(&want);
                }
            }
        }
    }
    report(4, "eight explicit points", ok, t0.elapsed());
}

#[test]
fn criterion_05_arcs() {
    let t0 = Instant::now();
    let mut ok = true;

    // the displayed polynomial identity behind X(t)^2 = unit^-8
    {
        let vars = VarSet::univar_t();
        let t = SparsePoly::var(&vars, 0);
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
        ok &= p.pow(2).try_add(&q.try_mul(&r).unwrap()).unwrap() == one;
    }

    for family in [ArcFamily::Bogen1, ArcFamily::Bogen2] {
        let m = if family == ArcFamily::Bogen1 { 0 } else { 1 };
        for n in 1..=2u8 {
            for l in [0i64, 1] {
                // both displayed X-cases: l = 0 and l a unit
                for k in [0i64, 1] {
                    let arc = make_arc(family, n, &ci(l), &ci(m), &ci(k)).unwrap();
                    let rep = verify_arc(&arc).unwrap();
                    // on this grid the literal word is representable, so the
                    // as-written route must agree
                    ok &= rep.relation_cross_ok && rep.commute_ok;
                    ok &= rep.relation_word_ok == Some(true);
                    ok &= rep.commutator_identity_ok == Some(true);
                    ok &= rep.square_identity_ok && rep.fourth_power_ok;
                    ok &= rep.z_eighth_ok.unwrap_or(true);
                    ok &= rep.endpoints_ok; // includes canonical serialization equality
                    ok &= rep.delta_ok && rep.nilpotence_ok;
                }
            }
        }
    }
    report(5, "connecting arcs (five checks each)", ok, t0.elapsed());
}

#[test]
fn criterion_06_triangular_locus() {
    let t0 = Instant::now();
    let mut ok = true;
    for (l, m, k) in tuples() {
        // cap 8 makes every compared object a complete polynomial
        let params = DeformParams::from_ints(l, m, k, 8);
        let rep = triangular_identities(&params);
        ok &= rep.f21_zero && rep.f11_diagonal && rep.f22_diagonal && rep.f12_cleared;
        ok &= rep.x2y4_entry && rep.commutator_entry;
        for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let f = f_element(&params, e1, e2).unwrap();
            ok &= f.coefficient_of(&mono_y12_z11()) == ci(-1);
            let subs = f_substitution_identities(&params, e1, e2).unwrap();
            ok &= subs.diagonal_ok && subs.antidiagonal_ok.unwrap_or(true);
        }
    }
    report(6, "triangular locus identities", ok, t0.elapsed());
}

#[test]
fn criterion_07_bijektion_specialization() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut signs = Vec::new();
    let psis: [(i64, i64, i64); 6] = [
        (1, 1, 1),
        (-1, 1, 1),
        (1, -1, 1),
        (-1, -1, 1),
        (1, 1, -1),
        (1, 1, 3),
    ];
    for (px, py, pz) in psis {
        for (l, m, k) in tuples() {
            let out = bijektion_specialization(
                &ci(px),
                &ci(py),
                &ci(pz),
                &DeformParams::from_ints(l, m, k, 6),
            )
            .unwrap();
            ok &= out.coeff_is_unit_psi_inv;
            ok &= out.constant_positive_val;
            signs.push(out.sign);
        }
    }
    // the sign is recorded: it is uniformly -1 in this presentation
    let recorded: Vec<i8> = {
        let mut s = signs.clone();
        s.sort();
        s.dedup();
        s
    };
    println!(
        "criterion  7 note: recorded sign of the y12 z11^2 coefficient vs psi_z^-1: {recorded:?}"
    );
    ok &= r1_idempotent_check();
    report(
        7,
        "determinant-map specialization coefficient",
        ok,
        t0.elapsed(),
    );
}

#[test]
fn criterion_08_groebner_dimension() {
    let t0 = Instant::now();
    let rep = determinantal_check();
    let ok = rep.dim_f2 == 4
        && rep.dim_f3 == 4
        && rep.dims_permuted.iter().all(|&d| d == 4)
        && rep.shift_identification_ok;
    let elapsed = t0.elapsed();
    let in_budget = elapsed < Duration::from_secs(5);
    report(
        8,
        "determinantal ideal dimension 4",
        ok && in_budget,
        elapsed,
    );
}

#[test]
fn criterion_09_finite_enumeration() {
    let t0 = Instant::now();
    let ok = unipotent_fiber_order(FiniteRingSpec::F2) == 2
        && unipotent_fiber_order(FiniteRingSpec::DualF2) == 32
        && unipotent_fiber_order(FiniteRingSpec::Z4) == 32;
    let elapsed = t0.elapsed();
    let in_budget = elapsed < Duration::from_secs(5);
    report(
        9,
        "unipotent fiber orders 2/32/32",
        ok && in_budget,
        elapsed,
    );
}

/// Small deterministic generator for the sampled property checks.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
    fn rational(&mut self) -> Rational {
        Rational::new(self.int(-40, 40), self.int(1, 12))
    }
    fn cyclo(&mut self) -> CycloElem {
        CycloElem::from_coords(
            self.rational(),
            self.rational(),
            self.rational(),
            self.rational(),
        )
    }
}

#[test]
fn criterion_10_property_suites() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut rng = Lcg(0x5eed);

    // valuation and norm multiplicativity, ultrametric bound: 1000 pairs
    for _ in 0..1000 {
        let a = rng.cyclo();
        let b = rng.cyclo();
        ok &= a.mul(&b).val2() == a.val2().add(&b.val2());
        ok &= a.add(&b).val2() >= a.val2().min_with(&b.val2());
        ok &= a.mul(&b).norm() == a.norm().mul(&b.norm());
        if !a.is_zero() {
            ok &= a.mul(&a.inv().unwrap()).is_one();
        }
    }

    // zeta8^4 = -1 and i^2 = -1 in reduced form
    ok &= CycloElem::zeta8().pow(4).unwrap() == ci(-1);
    ok &= CycloElem::i_unit().mul(&CycloElem::i_unit()) == ci(-1);

    // truncation consistency on sampled series products
    let vars = VarSet::new(&["u", "v", "w"]);
    for _ in 0..100 {
        let mut f = SparsePoly::zero(&vars);
        let mut g = SparsePoly::zero(&vars);
        for _ in 0..6 {
            let m = Mono::from_exps(&[
                rng.int(0, 3) as u32,
                rng.int(0, 3) as u32,
                rng.int(0, 3) as u32,
            ]);
            f.insert_add(m, ci(rng.int(-5, 5)));
            let m = Mono::from_exps(&[
                rng.int(0, 3) as u32,
                rng.int(0, 3) as u32,
                rng.int(0, 3) as u32,
            ]);
            g.insert_add(m, ci(rng.int(-5, 5)));
        }
        let lo = TruncSeries::new(f.clone(), 3)
            .try_mul(&TruncSeries::new(g.clone(), 3))
            .unwrap();
        let hi = TruncSeries::new(f, 5)
            .try_mul(&TruncSeries::new(g, 5))
            .unwrap();
        ok &= hi.truncated_to(3) == lo;
    }

    // unit inversion at the cap: 200 sampled unit series
    for _ in 0..200 {
        let mut body = SparsePoly::zero(&vars);
        for _ in 0..5 {
            let m = Mono::from_exps(&[
                rng.int(0, 2) as u32,
                rng.int(0, 2) as u32,
                rng.int(0, 2) as u32,
            ]);
            body.insert_add(m, ci(rng.int(-4, 4)));
        }
        let body = body
            .try_sub(&SparsePoly::constant(&vars, body.constant_term()))
            .unwrap();
        let unit_c = [1i64, -1, 3, 5][rng.int(0, 3) as usize];
        let series = TruncSeries::new(
            body.try_add(&SparsePoly::constant(&vars, ci(unit_c)))
                .unwrap(),
            4,
        );
        let inv = series.invert_unit().unwrap();
        ok &= series.try_mul(&inv).unwrap() == TruncSeries::one(&vars, 4);
    }

    // the commutation criterion against direct comparison, exhaustively
    for spec in [FiniteRingSpec::F2, FiniteRingSpec::Zn(3)] {
        let elems = spec.elements();
        let mut mats = Vec::new();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        mats.push(Mat2::new(*a, *b, *c, *d));
                    }
                }
            }
        }
        for a in &mats {
            for b in &mats {
                ok &= commute_criterion(a, b) == (a.mul(b) == b.mul(a));
            }
        }
    }

    // determinant multiplicativity and the adjugate identity, sampled
    for _ in 0..1000 {
        let a = Mat2::new(rng.cyclo(), rng.cyclo(), rng.cyclo(), rng.cyclo());
        let b = Mat2::new(rng.cyclo(), rng.cyclo(), rng.cyclo(), rng.cyclo());
        ok &= a.mul(&b).det() == a.det().mul(&b.det());
        ok &= a.mul(&b).trace() == b.mul(&a).trace();
        let adj = a.mul(&a.adjugate());
        ok &= adj.a12.is_zero() && adj.a21.is_zero() && adj.a11 == a.det();
    }

    // Groebner invariants on the determinantal basis
    {
        let gens = defring_core::groebner::determinantal_generators::<2>();
        let gb = buchberger(&gens, &MonomialOrder::deglex(6));
        ok &= gb.spolys_reduce_to_zero();
        ok &= gens.iter().all(|g| gb.normal_form(g).is_zero());
    }

    let elapsed = t0.elapsed();
    let in_budget = elapsed < Duration::from_secs(120);
    report(10, "property suites", ok && in_budget, elapsed);
}

#[test]
fn valuation_examples_hold() {
    // spot checks used throughout the criteria
    assert_eq!(ci(2).val2(), Val::Fin(Rational::ONE));
    assert_eq!(
        CycloElem::zeta8().sub(&CycloElem::ONE).val2(),
        Val::Fin(Rational::new(1, 4))
    );
}

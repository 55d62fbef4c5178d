//! Buchberger's algorithm over small prime fields with graded monomial
//! orders, combinatorial Krull dimension of the quotient from the leading
//! ideal, and the dimension-4 fact for the ideal of 2x2 minors of a
//! generic 2x3 matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::polyring::{Coeff, Mono, Poly, VarSet};
use alloc::sync::Arc;

/// An element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 as u128 * o.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended euclid on (a, P)
        let (mut r0, mut r1) = (P as i128, self.0 as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "P must be prime");
        Some(Fp(s0.rem_euclid(P as i128) as u64))
    }
    fn render(&self) -> String {
        format!("{}", self.0)
    }
}

/// Graded monomial orders with an explicit variable order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    DegLex,
    DegRevLex,
}

/// A total order on monomials refining total degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Permutation of variable indices, most significant first.
    pub var_order: Vec<usize>,
}

impl MonomialOrder {
    pub fn deglex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegLex,
            var_order: (0..nvars).collect(),
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            var_order: (0..nvars).collect(),
        }
    }

    pub fn with_var_order(kind: OrderKind, var_order: Vec<usize>) -> Self {
        MonomialOrder { kind, var_order }
    }

    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        match a.deg().cmp(&b.deg()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.kind {
            OrderKind::DegLex => {
                for &v in &self.var_order {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                for &v in self.var_order.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        // smaller exponent on the least variable wins
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

fn leading_term<C: Coeff, const P: u64>(p: &Poly<C>, order: &MonomialOrder) -> Option<(Mono, C)> {
    let _ = P;
    let mut best: Option<(Mono, C)> = None;
    for (m, c) in p.terms() {
        match &best {
            None => best = Some((*m, c.clone())),
            Some((bm, _)) => {
                if order.cmp_mono(m, bm) == Ordering::Greater {
                    best = Some((*m, c.clone()));
                }
            }
        }
    }
    best
}

/// Fully reduces `p` modulo the divisor list: no term of the result is
/// divisible by any divisor's leading monomial.
pub fn normal_form<const P: u64>(
    p: &Poly<Fp<P>>,
    divisors: &[Poly<Fp<P>>],
    order: &MonomialOrder,
) -> Poly<Fp<P>> {
    let lts: Vec<(Mono, Fp<P>)> = divisors
        .iter()
        .filter_map(|d| leading_term::<_, P>(d, order))
        .collect();
    let mut rest = p.clone();
    let mut remainder = Poly::zero(p.vars());
    while let Some((m, c)) = leading_term::<_, P>(&rest, order) {
        let mut reduced = false;
        for (i, (lm, lc)) in lts.iter().enumerate() {
            if let Some(q) = lm.try_div(&m) {
                let factor = c.mul(&lc.try_inv().expect("field"));
                rest = rest
                    .try_sub(&divisors[i].mul_term(&q, &factor))
                    .expect("same ring");
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder.insert_add(m, c);
            rest = rest
                .try_sub(&Poly::monomial(p.vars(), m, c))
                .expect("same ring");
        }
    }
    remainder
}

fn s_poly<const P: u64>(f: &Poly<Fp<P>>, g: &Poly<Fp<P>>, order: &MonomialOrder) -> Poly<Fp<P>> {
    let (fm, fc) = leading_term::<_, P>(f, order).expect("nonzero");
    let (gm, gc) = leading_term::<_, P>(g, order).expect("nonzero");
    let l = fm.lcm(&gm);
    let qf = fm.try_div(&l).expect("lcm divisible");
    let qg = gm.try_div(&l).expect("lcm divisible");
    let a = f.mul_term(&qf, &fc.try_inv().expect("field"));
    let b = g.mul_term(&qg, &gc.try_inv().expect("field"));
    a.try_sub(&b).expect("same ring")
}

/// A reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<const P: u64> {
    pub generators: Vec<Poly<Fp<P>>>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl<const P: u64> GroebnerBasis<P> {
    pub fn contains_one(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.generators
            .iter()
            .filter_map(|g| leading_term::<_, P>(g, &self.order).map(|(m, _)| m))
            .collect()
    }

    pub fn normal_form(&self, p: &Poly<Fp<P>>) -> Poly<Fp<P>> {
        normal_form(p, &self.generators, &self.order)
    }

    /// Buchberger criterion, re-checked post hoc: every S-polynomial of
    /// the basis reduces to zero.
    pub fn spolys_reduce_to_zero(&self) -> bool {
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let s = s_poly(&self.generators[i], &self.generators[j], &self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Plain Buchberger with the normal selection strategy and the
/// coprime-leading-term criterion, followed by inter-reduction to the
/// reduced basis.  Every input generator is re-verified to reduce to zero
/// modulo the output.
pub fn buchberger<const P: u64>(gens: &[Poly<Fp<P>>], order: &MonomialOrder) -> GroebnerBasis<P> {
    let vars = gens
        .first()
        .map(|g| g.vars().clone())
        .unwrap_or_else(|| VarSet::new(&[]));
    let mut basis: Vec<Poly<Fp<P>>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree first
        let mut best = 0usize;
        let mut best_deg = u32::MAX;
        for (idx, (i, j)) in pairs.iter().enumerate() {
            let (mi, _) = leading_term::<_, P>(&basis[*i], order).expect("nonzero");
            let (mj, _) = leading_term::<_, P>(&basis[*j], order).expect("nonzero");
            let d = mi.lcm(&mj).deg();
            if d < best_deg {
                best_deg = d;
                best = idx;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (mi, _) = leading_term::<_, P>(&basis[i], order).expect("nonzero");
        let (mj, _) = leading_term::<_, P>(&basis[j], order).expect("nonzero");
        // first Buchberger criterion: coprime leading monomials
        if mi.lcm(&mj).deg() == mi.deg() + mj.deg() {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            let new_idx = basis.len();
            for k in 0..new_idx {
                pairs.push((k, new_idx));
            }
            basis.push(r);
        }
    }

    // reduce: drop generators whose leading monomial is divisible by
    // another's, then tail-reduce and normalize to monic
    let mut keep: Vec<Poly<Fp<P>>> = Vec::new();
    'outer: for (i, g) in basis.iter().enumerate() {
        let (mg, _) = leading_term::<_, P>(g, order).expect("nonzero");
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let (mh, _) = leading_term::<_, P>(h, order).expect("nonzero");
            if mh.divides(&mg) && (mh != mg || j < i) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    let mut reduced: Vec<Poly<Fp<P>>> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly<Fp<P>>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&keep[i], &others, order);
        if r.is_zero() {
            continue;
        }
        let (_, lc) = leading_term::<_, P>(&r, order).expect("nonzero");
        reduced.push(r.mul_scalar(&lc.try_inv().expect("field")));
    }
    reduced.sort_by(|a, b| {
        let (ma, _) = leading_term::<_, P>(a, order).expect("nonzero");
        let (mb, _) = leading_term::<_, P>(b, order).expect("nonzero");
        order.cmp_mono(&ma, &mb)
    });

    let gb = GroebnerBasis {
        generators: reduced,
        order: order.clone(),
        reduced: true,
    };
    // ideal membership of the inputs, re-verified
    for g in gens {
        let r = gb.normal_form(g);
        assert!(
            r.is_zero(),
            "input generator must reduce to zero modulo its own basis"
        );
    }
    let _ = vars;
    gb
}

/// Krull dimension of the quotient: the size of the largest variable
/// subset that contains no leading monomial's full support.
pub fn dim_quotient<const P: u64>(gb: &GroebnerBasis<P>, num_vars: usize) -> usize {
    assert!(gb.reduced);
    if gb.contains_one() {
        // the quotient is the zero ring; report dimension 0 by convention
        return 0;
    }
    let supports: Vec<Vec<usize>> = gb
        .leading_monomials()
        .iter()
        .map(|m| (0..num_vars).filter(|&i| m.exp(i) > 0).collect())
        .collect();
    let mut best = 0usize;
    for mask in 0u32..(1 << num_vars) {
        let contains_support = supports
            .iter()
            .any(|s| !s.is_empty() && s.iter().all(|&i| mask & (1 << i) != 0));
        if contains_support {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
    }
    best
}

// ---------------------------------------------------------------------------
// The determinantal instance
// ---------------------------------------------------------------------------

/// Report of the determinantal-ideal dimension computation.
#[derive(Clone, Debug)]
pub struct DeterminantalReport {
    /// Dimension over `F_2` (expected 4).
    pub dim_f2: usize,
    /// Dimension over `F_3` (characteristic-independence check).
    pub dim_f3: usize,
    /// Dimensions under permuted variable orders over `F_2`.
    pub dims_permuted: Vec<usize>,
    /// Dimension of the two-minor subideal, computed rather than assumed.
    pub dim_subideal: usize,
    /// The shifted-variable generators coincide with the generic ones when
    /// the parameters reduce to zero.
    pub shift_identification_ok: bool,
}

impl DeterminantalReport {
    pub fn ok(&self) -> bool {
        self.dim_f2 == 4
            && self.dim_f3 == 4
            && self.dims_permuted.iter().all(|&d| d == 4)
            && self.shift_identification_ok
    }
}

fn det_vars() -> Arc<VarSet> {
    VarSet::new(&["x", "y", "z", "x21", "y21", "z21"])
}

/// The three 2x2 minors of `(x y z; x21 y21 z21)` over `F_P`.
pub fn determinantal_generators<const P: u64>() -> Vec<Poly<Fp<P>>> {
    let vars = det_vars();
    let v = |i: usize| Poly::<Fp<P>>::var(&vars, i);
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        v(a).try_mul(&v(d))
            .unwrap()
            .try_sub(&v(b).try_mul(&v(c)).unwrap())
            .unwrap()
    };
    // columns (x, x21), (y, y21), (z, z21)
    alloc::vec![minor(0, 1, 3, 4), minor(0, 2, 3, 5), minor(1, 2, 4, 5)]
}

fn determinantal_dim<const P: u64>(order: &MonomialOrder) -> usize {
    let gens = determinantal_generators::<P>();
    let gb = buchberger(&gens, order);
    dim_quotient(&gb, 6)
}

/// Computes the dimension of the determinantal ideal over `F_2` (and
/// `F_3`), re-runs it under permuted variable orders, computes the
/// two-minor subideal dimension, and checks the shifted-variable
/// identification for parameters reducing to zero.
pub fn determinantal_check() -> DeterminantalReport {
    let dim_f2 = determinantal_dim::<2>(&MonomialOrder::deglex(6));
    let dim_f3 = determinantal_dim::<3>(&MonomialOrder::deglex(6));
    let permutations: [Vec<usize>; 3] = [
        alloc::vec![5, 4, 3, 2, 1, 0],
        alloc::vec![1, 3, 5, 0, 2, 4],
        alloc::vec![2, 0, 4, 1, 5, 3],
    ];
    let mut dims_permuted = Vec::new();
    for p in permutations {
        let order = MonomialOrder::with_var_order(OrderKind::DegRevLex, p);
        dims_permuted.push(determinantal_dim::<2>(&order));
    }

    // subideal of the first two minors: computed, not assumed
    let gens = determinantal_generators::<2>();
    let sub = buchberger(&gens[..2], &MonomialOrder::deglex(6));
    let dim_subideal = dim_quotient(&sub, 6);

    // shifted generators with parameters reducing to 0 mod 2 coincide with
    // the generic minors under renaming x = x12 + lambda-bar etc.
    let vars = det_vars();
    let shift_identification_ok = {
        let v = |i: usize| Poly::<Fp<2>>::var(&vars, i);
        // lambda, mu, kappa all even: the shifted entry x12 + 0 is just x12
        let lam = Fp::<2>::new(0);
        let entry = |i: usize, c: Fp<2>| v(i).try_add(&Poly::constant(&vars, c)).unwrap();
        let xt = entry(0, lam);
        let yt = entry(1, lam);
        let zt = entry(2, lam);
        let minor = |a: &Poly<Fp<2>>, b: &Poly<Fp<2>>, c: usize, d: usize| {
            a.try_mul(&v(d))
                .unwrap()
                .try_sub(&b.try_mul(&v(c)).unwrap())
                .unwrap()
        };
        let shifted = alloc::vec![
            minor(&xt, &yt, 3, 4),
            minor(&xt, &zt, 3, 5),
            minor(&yt, &zt, 4, 5),
        ];
        shifted == determinantal_generators::<2>()
    };

    DeterminantalReport {
        dim_f2,
        dim_f3,
        dims_permuted,
        dim_subideal,
        shift_identification_ok,
    }
}

// ---------------------------------------------------------------------------

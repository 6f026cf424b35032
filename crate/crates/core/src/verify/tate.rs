use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::Check;
use crate::error::Result;
use crate::tate::fourterm::FourTerm;
use crate::tate::maps::{
    corestrict_c, frob_f, pairing_is_perfect, pairing_matrix, restrict_r, restrict_r_with_basis, rotation,
    standard_map, teich_lift, teich_t, trace_twist_tau, ver_v, w_on_integer_map, w_on_map, Mu,
};
use crate::tate::nc::{commutative_projection, solve_nc_c, verify_commutative, verify_nc};
use crate::tate::{exact_at, GroupMap, PresentedAbGroup, WittSpace};

type Outcome = Result<(bool, String)>;

fn same(g: &PresentedAbGroup, a: &[BigInt], b: &[BigInt]) -> bool {
    g.is_zero(&g.add(a, &g.scale(b, &BigInt::from(-1))))
}

fn vectors(p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn rank_one(p: u64, n: u32, limit: usize) -> Outcome {
    let w = WittSpace::q(p, n, 1, limit)?;
    let pn = BigInt::from(p).pow(n);
    if w.group.invariant_factors() != vec![pn.clone()] {
        return Ok((false, format!("Q_{n}(rank 1) is {}", w.group.structure())));
    }
    let one = teich_t(&w, &[1]);
    if one != vec![BigInt::from(1)] {
        return Ok((false, "T(1) is not the generator".into()));
    }
    if n >= 2 {
        let lower = WittSpace::q(p, n - 1, 1, limit)?;
        let v = ver_v(&lower, &w)?;
        let f = frob_f(&w, &lower)?;
        let r = restrict_r(&w, &lower, limit)?;
        let c = corestrict_c(&lower, &w)?;
        let g = [BigInt::from(1)];
        if v.apply(&g) != vec![BigInt::from(p)] || c.apply(&g) != vec![BigInt::from(p)] {
            return Ok((false, "V or C is not multiplication by p".into()));
        }
        if f.apply(&g) != vec![BigInt::from(1)] || r.apply(&g) != vec![BigInt::from(1)] {
            return Ok((false, "F or R is not reduction".into()));
        }
    }
    Ok((true, format!("Z/{pn}, V = C = p, F = R = reduction")))
}

fn w1_identity(p: u64, d: u64, rng: &mut StdRng, limit: usize) -> Outcome {
    let w = WittSpace::q(p, 1, d, limit)?;
    if w.group.invariant_factors() != vec![BigInt::from(p); d as usize] {
        return Ok((false, format!("W_1 is {}", w.group.structure())));
    }
    let basis: Vec<Vec<BigInt>> = (0..d as usize)
        .map(|i| {
            let mut e = vec![0u64; d as usize];
            e[i] = 1;
            teich_t(&w, &e)
        })
        .collect();
    for _ in 0..5 {
        let f: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
        let wf = w_on_map(&f, &w, &w)?;
        for i in 0..d as usize {
            let mut expect = w.group.zero();
            for (j, bj) in basis.iter().enumerate() {
                expect = w.group.add(&expect, &w.group.scale(bj, &BigInt::from(f[j][i])));
            }
            if !same(&w.group, &wf.apply(&basis[i]), &expect) {
                return Ok((false, format!("W_1(f) ≠ f for f = {f:?}")));
            }
        }
    }
    Ok((true, format!("W_1(F_{p}^{d}) = (Z/{p})^{d}, W_1(f) = f on 5 random maps")))
}

fn w2_order(limit: usize) -> Outcome {
    let w = WittSpace::q(2, 2, 2, limit)?;
    let order = w.group.order().unwrap_or_default();
    let exponent = w.group.invariant_factors().into_iter().max().unwrap_or_default();
    Ok((
        order == BigInt::from(32) && exponent == BigInt::from(4),
        format!("|W_2(F_2^2)| = {order}, exponent {exponent}, structure {}", w.group.structure()),
    ))
}

fn projection_check(p: u64, n: u32, d: u64, limit: usize) -> Outcome {
    let qp = WittSpace::q_prime(p, n, d, limit)?;
    let q = WittSpace::q(p, n, d, limit)?;
    let proj = crate::tate::maps::projection(&qp, &q)?;
    let pk = BigInt::from(p);
    let killed = proj.kernel_gens().iter().all(|k| qp.group.is_zero(&qp.group.scale(k, &pk)));
    Ok((proj.is_surjective() && killed, format!("Q′_{n} → Q_{n} at d={d}: surjective, p·ker = 0")))
}

fn standard_iso(limit: usize) -> Outcome {
    let qp = WittSpace::q_prime(2, 1, 2, limit)?;
    let q2 = WittSpace::q(2, 2, 2, limit)?;
    let q1 = WittSpace::q(2, 1, 2, limit)?;
    let c = standard_map(&qp, &q2, None)?;
    if !c.is_isomorphism() {
        return Ok((false, "standard map is not an isomorphism".into()));
    }
    let r = restrict_r(&q2, &q1, limit)?;
    let bases: [[[i64; 2]; 2]; 3] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]]];
    for b in bases {
        let rows: Vec<Vec<i64>> = b.iter().map(|r| r.to_vec()).collect();
        if !standard_map(&qp, &q2, Some(&rows))?.is_isomorphism() {
            return Ok((false, format!("standard map for basis {rows:?} is not an isomorphism")));
        }
        if !restrict_r_with_basis(&q2, &q1, Some(&rows), limit)?.equals(&r) {
            return Ok((false, format!("R depends on the basis {rows:?}")));
        }
    }
    let order = qp.group.order().unwrap_or_default();
    Ok((order == BigInt::from(32), format!("Q′_1 ≅ Q_2 at d=2 (order {order}); R agrees for 3 other bases")))
}

fn teichmuller_checks(limit: usize) -> Outcome {
    let q2 = WittSpace::q(2, 2, 2, limit)?;
    let q1 = WittSpace::q(2, 1, 2, limit)?;
    let r = restrict_r(&q2, &q1, limit)?;
    for m in vectors(2, 2) {
        if !same(&q1.group, &r.apply(&teich_t(&q2, &m)), &teich_t(&q1, &m)) {
            return Ok((false, format!("R(T_2({m:?})) ≠ T_1({m:?})")));
        }
    }
    let lift_ok = same(&q1.group, &teich_lift(&q1, &[1, 2]), &teich_lift(&q1, &[1, 0]));
    let zero_ok = q2.group.is_zero(&teich_t(&q2, &[0, 0]));
    Ok((lift_ok && zero_ok, "R∘T_2 = T_1 for all m; lift independence; T(0) = 0".into()))
}

fn functoriality(rng: &mut StdRng, limit: usize) -> Outcome {
    for n in 1..=2 {
        let w = WittSpace::q(2, n, 2, limit)?;
        for _ in 0..5 {
            let f: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(0..2)).collect()).collect();
            let g: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(0..2)).collect()).collect();
            let bumped: Vec<Vec<i64>> = f.iter().zip(&g).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + 2 * y).collect()).collect();
            if !w_on_integer_map(&bumped, &w, &w)?.equals(&w_on_map(&f, &w, &w)?) {
                return Ok((false, format!("lift dependence at n={n}, f={f:?}")));
            }
            let fg: Vec<Vec<i64>> =
                (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| f[i][k] * g[k][j]).sum::<i64>() % 2).collect()).collect();
            let lhs = w_on_map(&fg, &w, &w)?;
            let rhs = w_on_map(&f, &w, &w)?.compose(&w_on_map(&g, &w, &w)?);
            if !lhs.equals(&rhs) {
                return Ok((false, format!("W(fg) ≠ W(f)W(g) at n={n}")));
            }
        }
        if !w_on_map(&[vec![1, 0], vec![0, 1]], &w, &w)?.equals(&GroupMap::identity(w.group.clone())) {
            return Ok((false, "W(id) ≠ id".into()));
        }
    }
    Ok((true, "lift independence and functoriality on random 2×2 maps, n ≤ 2".into()))
}

fn rv_sequences(limit: usize) -> Outcome {
    let m2 = WittSpace::q(2, 1, 4, limit)?;
    let w2 = WittSpace::q(2, 2, 2, limit)?;
    let w1 = WittSpace::q(2, 1, 2, limit)?;
    let v = ver_v(&m2, &w2)?;
    let r = restrict_r(&w2, &w1, limit)?;
    let nc_seq = exact_at(&v, &r) && r.is_surjective();
    let tau = rotation(&m2, 2, 2)?;
    let (coinv, _) = GroupMap::identity(m2.group.clone()).sub(&tau).cokernel_projection();
    let images: Vec<Vec<BigInt>> = (0..m2.group.rank_reduced()).map(|j| v.apply(&m2.group.basis(j))).collect();
    let vbar = GroupMap::from_reduced_generator_images(coinv.clone(), w2.group.clone(), &images)?;
    let w_seq = vbar.is_injective() && exact_at(&vbar, &r) && r.is_surjective();
    let orders = coinv.order().unwrap_or_default() * w1.group.order().unwrap_or_default();
    let book = Some(orders.clone()) == w2.group.order();
    Ok((
        nc_seq && w_seq && book,
        format!("V/R sequence exact: {nc_seq}; twisted-coinvariant sequence exact: {w_seq}; |coinv|·|W_1| = {orders}"),
    ))
}

fn four_term(limit: usize) -> Outcome {
    for p in [2u64, 3] {
        for d in 1..=3 {
            if !FourTerm::new(p, d, limit)?.is_exact() {
                return Ok((false, format!("not exact at p={p}, d={d}")));
            }
        }
    }
    Ok((true, "exact for p ∈ {2, 3}, d ≤ 3".into()))
}

fn bil(g: &[Vec<BigInt>], a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            acc += ai * &g[i][j] * bj;
        }
    }
    acc
}

fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    ((a - b) % m).is_zero()
}

fn duality(limit: usize) -> Outcome {
    for (p, n, d) in [(2u64, 1u32, 2u64), (2, 2, 2), (3, 1, 2), (2, 1, 1), (3, 2, 1)] {
        let w = WittSpace::q(p, n, d, limit)?;
        let g = pairing_matrix(&w, &w, limit)?;
        if !pairing_is_perfect(&w, &w, &g)? {
            return Ok((false, format!("pairing not perfect at ({p},{n},{d})")));
        }
        let scalars = WittSpace::q(p, n, 1, limit)?;
        let pn = BigInt::from(p).pow(n);
        for m in vectors(p, d as usize) {
            for l in vectors(p, d as usize) {
                let lm: u64 = m.iter().zip(&l).map(|(a, b)| a * b).sum::<u64>() % p;
                let lhs = bil(&g, &teich_t(&w, &m), &teich_t(&w, &l));
                if !congruent(&lhs, &teich_t(&scalars, &[lm])[0], &pn) {
                    return Ok((false, format!("⟨T(m), T(λ)⟩ ≠ T(λ(m)) at ({p},{n},{d})")));
                }
            }
        }
    }
    Ok((true, "perfect at (2,1,2), (2,2,2), (3,1,2) and rank 1; ⟨T(m),T(λ)⟩ = T(λ(m))".into()))
}

fn adjointness(limit: usize) -> Outcome {
    let w1 = WittSpace::q(2, 1, 2, limit)?;
    let w2 = WittSpace::q(2, 2, 2, limit)?;
    let m2 = WittSpace::q(2, 1, 4, limit)?;
    let g1 = pairing_matrix(&w1, &w1, limit)?;
    let g2 = pairing_matrix(&w2, &w2, limit)?;
    let gm = pairing_matrix(&m2, &m2, limit)?;
    let four = BigInt::from(4);
    let two = BigInt::from(2);
    let c = corestrict_c(&w1, &w2)?;
    let r = restrict_r(&w2, &w1, limit)?;
    for i in 0..w1.group.rank_reduced() {
        for j in 0..w2.group.rank_reduced() {
            let x = w1.group.basis(i);
            let y = w2.group.basis(j);
            if !congruent(&bil(&g2, &c.apply(&x), &y), &(&two * bil(&g1, &x, &r.apply(&y))), &four) {
                return Ok((false, "⟨Cx, y⟩ ≠ p⟨x, Ry⟩".into()));
            }
        }
    }
    let v = ver_v(&m2, &w2)?;
    let f = frob_f(&w2, &m2)?;
    for i in 0..m2.group.rank_reduced() {
        for j in 0..w2.group.rank_reduced() {
            let x = m2.group.basis(i);
            let y = w2.group.basis(j);
            if !congruent(&bil(&g2, &v.apply(&x), &y), &(&two * bil(&gm, &x, &f.apply(&y))), &four) {
                return Ok((false, "⟨Vx, y⟩ ≠ p⟨x, Fy⟩".into()));
            }
        }
    }
    Ok((true, "⟨Cx,y⟩ = p⟨x,Ry⟩ and ⟨Vx,y⟩ = p⟨x,Fy⟩ at p = 2, d = 2".into()))
}

fn rc_cr(limit: usize) -> Outcome {
    for n in 1..=2 {
        let lo = WittSpace::q(2, n, 2, limit)?;
        let hi = WittSpace::q(2, n + 1, 2, limit)?;
        let r = restrict_r(&hi, &lo, limit)?;
        let c = corestrict_c(&lo, &hi)?;
        let rc = r.compose(&c).equals(&GroupMap::identity(lo.group.clone()).scale(&BigInt::from(2)));
        let cr = c.compose(&r).equals(&GroupMap::identity(hi.group.clone()).scale(&BigInt::from(2)));
        if !(rc && cr) {
            return Ok((false, format!("RC = p: {rc}, CR = p: {cr} between levels {n} and {}", n + 1)));
        }
    }
    Ok((true, "RC = CR = p·id for levels 1↔2 and 2↔3 at d = 2".into()))
}

/// `(M₀^{⊗2}) ⊗ (M₁^{⊗2}) → (M₀ ⊗ M₁)^{⊗2}` for rank-2 `M₀, M₁`.
fn shuffle() -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 16]; 16];
    for a0 in 0..2 {
        for a1 in 0..2 {
            for b0 in 0..2 {
                for b1 in 0..2 {
                    let src = (a0 * 2 + a1) * 4 + (b0 * 2 + b1);
                    let tgt = (a0 * 2 + b0) * 4 + (a1 * 2 + b1);
                    m[tgt][src] = 1;
                }
            }
        }
    }
    m
}

fn mu_relations(limit: usize) -> Outcome {
    let w2 = WittSpace::q(2, 2, 2, limit)?;
    let w2p = WittSpace::q(2, 2, 4, limit)?;
    let w1 = WittSpace::q(2, 1, 2, limit)?;
    let w1p = WittSpace::q(2, 1, 4, limit)?;
    let w1pp = WittSpace::q(2, 1, 16, limit)?;
    let mu2 = Mu::new(w2.clone(), w2.clone(), w2p.clone())?;
    let mu1 = Mu::new(w1.clone(), w1.clone(), w1p.clone())?;
    let mu_f = Mu::new(w1p.clone(), w1p.clone(), w1pp.clone())?;
    let r2 = restrict_r(&w2, &w1, limit)?;
    let r4 = restrict_r(&w2p, &w1p, limit)?;
    let f2 = frob_f(&w2, &w1p)?;
    let f4 = frob_f(&w2p, &w1pp)?;
    let v2 = ver_v(&w1p, &w2)?;
    let v4 = ver_v(&w1pp, &w2p)?;
    let sh = w_on_map(&shuffle(), &w1pp, &w1pp)?;
    let basis = |w: &Arc<WittSpace>| (0..w.group.rank_reduced()).map(|i| w.group.basis(i)).collect::<Vec<_>>();
    for x in basis(&w2) {
        for y in basis(&w2) {
            let xy = mu2.apply(&x, &y);
            if !same(&w1p.group, &r4.apply(&xy), &mu1.apply(&r2.apply(&x), &r2.apply(&y))) {
                return Ok((false, "R∘μ ≠ μ∘(R⊗R)".into()));
            }
            if !same(&w1pp.group, &f4.apply(&xy), &sh.apply(&mu_f.apply(&f2.apply(&x), &f2.apply(&y)))) {
                return Ok((false, "F∘μ ≠ μ∘(F⊗F)".into()));
            }
        }
    }
    for x in basis(&w1p) {
        for y in basis(&w2) {
            let lhs = mu2.apply(&v2.apply(&x), &y);
            let rhs = v4.apply(&sh.apply(&mu_f.apply(&x, &f2.apply(&y))));
            if !same(&w2p.group, &lhs, &rhs) {
                return Ok((false, "μ∘(V⊗Id) ≠ V∘μ∘(Id⊗F)".into()));
            }
        }
    }
    let scalars = WittSpace::q(2, 2, 1, limit)?;
    let unit = Mu::new(w2.clone(), scalars.clone(), w2.clone())?;
    let one = teich_t(&scalars, &[1]);
    let swap = trace_twist_tau(&w2p, &w2p, 2, 2)?;
    for x in basis(&w2) {
        if !same(&w2.group, &unit.apply(&x, &one), &x) {
            return Ok((false, "μ(x, 1) ≠ x".into()));
        }
        for y in basis(&w2) {
            // The plain swap of letters is W_n of the commutativity morphism.
            let swap_letters: Vec<Vec<i64>> =
                (0..4).map(|t| (0..4).map(|s| i64::from(t == (s % 2) * 2 + s / 2)).collect()).collect();
            let sw = w_on_map(&swap_letters, &w2p, &w2p)?;
            if !same(&w2p.group, &mu2.apply(&x, &y), &sw.apply(&mu2.apply(&y, &x))) {
                return Ok((false, "μ is not commutative".into()));
            }
        }
    }
    for m0 in vectors(2, 2) {
        for m1 in vectors(2, 2) {
            let tensor: Vec<u64> = m0.iter().flat_map(|a| m1.iter().map(move |b| a * b)).collect();
            if !same(&w2p.group, &mu2.apply(&teich_t(&w2, &m0), &teich_t(&w2, &m1)), &teich_t(&w2p, &tensor)) {
                return Ok((false, "μ(T m₀, T m₁) ≠ T(m₀⊗m₁)".into()));
            }
        }
    }
    let vf = v2.compose(&f2).equals(&GroupMap::identity(w2.group.clone()).scale(&BigInt::from(2)));
    let tau = rotation(&w1p, 2, 2)?;
    let fv = f2.compose(&v2).equals(&GroupMap::identity(w1p.group.clone()).add(&tau));
    let tau2 = swap.compose(&swap).equals(&GroupMap::identity(w2p.group.clone()));
    Ok((
        vf && fv && tau2,
        format!("R, F, V relations, unit, commutativity, Teichmüller; VF = p: {vf}; FV = 1 + τ: {fv}; τ² = id: {tau2}"),
    ))
}

fn twist_checks(limit: usize) -> Outcome {
    let w = WittSpace::q(2, 1, 8, limit)?;
    // τ_{M⊗N, L}, τ_{L⊗M, N}, τ_{N⊗L, M} with all ranks 2.
    let t1 = trace_twist_tau(&w, &w, 4, 2)?;
    let composite = t1.compose(&t1).compose(&t1);
    let cocycle = composite.equals(&GroupMap::identity(w.group.clone()));
    let w2 = WittSpace::q(2, 2, 2, limit)?;
    let unit = trace_twist_tau(&w2, &w2, 2, 1)?.equals(&GroupMap::identity(w2.group.clone()));
    let w1 = WittSpace::q(2, 1, 4, limit)?;
    let t = trace_twist_tau(&w1, &w1, 2, 2)?;
    let square = t.compose(&t).equals(&GroupMap::identity(w1.group.clone()));
    Ok((cocycle && unit && square, format!("cocycle {cocycle}, τ with unit object = id {unit}, τ² = id {square}")))
}

pub fn q_suite(limit: usize) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(0x7a7e);
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
        let mut n = 1;
        while p.pow(n) <= 27 {
            out.push(Check::from_result(6, format!("rank one p={p} n={n}"), rank_one(p, n, limit)));
            n += 1;
        }
    }
    for p in [2u64, 3] {
        for d in 1..=3 {
            out.push(Check::from_result(6, format!("W_1 = Id p={p} d={d}"), w1_identity(p, d, &mut rng, limit)));
        }
    }
    out.push(Check::from_result(6, "|W_2(F_2^2)| = 32", w2_order(limit)));
    for (p, n, d) in [(2, 1, 2), (2, 2, 2), (3, 1, 2)] {
        out.push(Check::from_result(6, format!("Q′ projection ({p},{n},{d})"), projection_check(p, n, d, limit)));
    }
    out.push(Check::from_result(6, "standard map isomorphism and basis independence", standard_iso(limit)));
    out.push(Check::from_result(6, "Teichmüller compatibility", teichmuller_checks(limit)));
    out.push(Check::from_result(6, "W_n on maps", functoriality(&mut rng, limit)));
    out.push(Check::from_result(6, "V/R exact sequences at (2,1,1,2)", rv_sequences(limit)));
    out.push(Check::from_result(6, "four-term sequence", four_term(limit)));
    out.push(Check::from_result(6, "duality perfectness", duality(limit)));
    out.push(Check::from_result(6, "duality adjointness", adjointness(limit)));
    out.push(Check::from_result(6, "RC = CR = p", rc_cr(limit)));
    out.push(Check::from_result(6, "μ relations at (2,2,2)", mu_relations(limit)));
    out.push(Check::from_result(6, "trace twist", twist_checks(limit)));
    out
}

fn nc_case(p: u64, upto: u32, limit: usize) -> Outcome {
    let cs = solve_nc_c(p, upto, limit)?;
    let projections: Vec<_> = cs.iter().map(commutative_projection).collect();
    let ok = verify_nc(p, &cs) && verify_commutative(p, &projections);
    let shown: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
    Ok((ok, shown.join("; ")))
}

pub fn noncommutative(limit: usize) -> Vec<Check> {
    let mut out = vec![
        Check::from_result(7, "c_1, c_2 for p=2", nc_case(2, 2, limit)),
        Check::from_result(7, "c_1 for p=3", nc_case(3, 1, limit)),
    ];
    let c1 = solve_nc_c(2, 1, limit).map(|c| c[0].to_string());
    out.push(Check::from_result(7, "c_1 = x0.x1 for p=2", c1.map(|s| (s == "x0.x1", s))));
    out
}

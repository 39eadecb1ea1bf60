//! Clebsch-Gordan coefficients of V_λ ⊗ ℂ^d in the Gelfand-Tsetlin basis.
//!
//! Phases follow the scalar-factor formulas: e10 factors are nonnegative and
//! e11 factors carry the sign S(i, j).

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::Partition;
use crate::schur_stats::dim_gl_q;
use crate::sqrt_rational::SqrtRational;
use crate::report::Report;
use crate::sweep::{run_jobs, shapes_upto};
use crate::tableaux::{enumerate_ssyt, highest_weight, one_step_tableau, two_step_tableau, HorizontalStrip, Ssyt};

/// How a level-p strip changes between input and output tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StripMove {
    /// Both shapes unchanged (p < k).
    E00,
    /// Outer shape gains a box in row i (p = k).
    E10(usize),
    /// Outer gains a box in row i, inner in row j (p > k).
    E11(usize, usize),
}

fn c(shape: &Partition, s: usize) -> i64 {
    shape.last_content(s)
}

fn target_valid(strip: &HorizontalStrip, mv: StripMove) -> bool {
    let (i, j) = match mv {
        StripMove::E00 => return strip.is_valid(),
        StripMove::E10(i) => (i, None),
        StripMove::E11(i, j) => (i, Some(j)),
    };
    let p = strip.level();
    if i == 0 || i > p || j.is_some_and(|j| j == 0 || j >= p) {
        return false;
    }
    let Some(outer) = strip.outer.plus_box(i) else { return false };
    let inner = match j {
        None => strip.inner.clone(),
        Some(j) => match strip.inner.plus_box(j) {
            Some(s) => s,
            None => return false,
        },
    };
    HorizontalStrip { outer, inner }.is_valid()
}

fn ratio(num: BigInt, den: BigInt) -> Option<BigRational> {
    if den.is_zero() {
        None
    } else {
        Some(BigRational::new(num, den))
    }
}

fn abs_sqrt(sign: i8, r: Option<BigRational>) -> SqrtRational {
    match r {
        Some(r) if !r.is_zero() => {
            let r = if r < BigRational::zero() { -r } else { r };
            SqrtRational::new(sign, r)
        }
        _ => SqrtRational::zero(),
    }
}

fn compute_scalar_factor(strip: &HorizontalStrip, mv: StripMove) -> SqrtRational {
    if !target_valid(strip, mv) {
        return SqrtRational::zero();
    }
    let (outer, inner) = (&strip.outer, &strip.inner);
    let p = strip.level();
    match mv {
        StripMove::E00 => SqrtRational::one(),
        StripMove::E10(i) => {
            let ci = c(outer, i);
            let mut num = BigInt::one();
            for j in 1..p {
                num *= c(inner, j) - ci - 1;
            }
            let mut den = BigInt::one();
            for j in (1..=p).filter(|&j| j != i) {
                den *= c(outer, j) - ci;
            }
            abs_sqrt(1, ratio(num, den))
        }
        StripMove::E11(i, j) => {
            if i == j && outer.part(i) == inner.part(i) {
                return SqrtRational::one();
            }
            let sign = if i <= j { 1 } else { -1 };
            let ci = c(outer, i);
            let cj = c(inner, j);
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for k in (1..p).filter(|&k| k != j) {
                num *= c(inner, k) - ci - 1;
                den *= c(inner, k) - cj - 1;
            }
            for k in (1..=p).filter(|&k| k != i) {
                num *= c(outer, k) - cj;
                den *= c(outer, k) - ci;
            }
            abs_sqrt(sign, ratio(num, den))
        }
    }
}

thread_local! {
    static SF_CACHE: RefCell<HashMap<(HorizontalStrip, StripMove), SqrtRational>> = RefCell::new(HashMap::new());
}

/// Scalar factor (T^{=p}, e | target strip); invalid targets give 0.
///
/// Memoized per thread, keyed by the two shapes and the move.
pub fn scalar_factor(strip: &HorizontalStrip, mv: StripMove) -> SqrtRational {
    let key = (strip.clone(), mv);
    if let Some(v) = SF_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = compute_scalar_factor(strip, mv);
    SF_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// Single row where `after` exceeds `before` by one box, if that is the whole difference.
fn single_box_row(after: &Partition, before: &Partition) -> Option<usize> {
    let mut row = None;
    for s in 1..=after.d().max(before.d()) {
        match after.part(s) as i64 - before.part(s) as i64 {
            0 => {}
            1 if row.is_none() => row = Some(s),
            _ => return None,
        }
    }
    row
}

/// ⟨T′|T,k⟩ as the product of d scalar factors.
pub fn cg_coefficient(t_out: &Ssyt, t: &Ssyt, k: usize) -> SqrtRational {
    let d = t.d();
    if t_out.d() != d || k == 0 || k > d || t_out.size() != t.size() + 1 {
        return SqrtRational::zero();
    }
    let mut acc = SqrtRational::one();
    for p in 1..=d {
        let strip = HorizontalStrip::of(t, p);
        let (out_outer, out_inner) = (t_out.restrict_shape(p), t_out.restrict_shape(p - 1));
        let mv = if p < k {
            if out_outer != strip.outer || out_inner != strip.inner {
                return SqrtRational::zero();
            }
            StripMove::E00
        } else if p == k {
            if out_inner != strip.inner {
                return SqrtRational::zero();
            }
            match single_box_row(&out_outer, &strip.outer) {
                Some(i) => StripMove::E10(i),
                None => return SqrtRational::zero(),
            }
        } else {
            match (single_box_row(&out_outer, &strip.outer), single_box_row(&out_inner, &strip.inner)) {
                (Some(i), Some(j)) => StripMove::E11(i, j),
                _ => return SqrtRational::zero(),
            }
        };
        acc = &acc * &scalar_factor(&strip, mv);
        if acc.is_zero() {
            return acc;
        }
    }
    acc
}

/// CG insertion of letter `k` into `t`: every output with a nonzero coefficient.
///
/// Outputs are ordered by their sequence of chosen rows.
pub fn cg_insert(t: &Ssyt, k: usize) -> Vec<(Ssyt, SqrtRational)> {
    let d = t.d();
    let mut out = Vec::new();
    if k == 0 || k > d {
        return out;
    }
    let chain = t.chain();
    // (letter, previous row, path of (level, row), coefficient)
    type Branch = (usize, Option<usize>, Vec<(usize, usize)>, SqrtRational);
    let mut stack: Vec<Branch> = vec![(k, None, Vec::new(), SqrtRational::one())];
    while let Some((letter, prev, path, coeff)) = stack.pop() {
        for i in (1..=letter).rev() {
            if chain[letter].plus_box(i).is_none() {
                continue;
            }
            let strip = HorizontalStrip::of(t, letter);
            let mv = match prev {
                None => StripMove::E10(i),
                Some(j) => StripMove::E11(i, j),
            };
            let sf = scalar_factor(&strip, mv);
            if sf.is_zero() {
                continue;
            }
            let coeff = &coeff * &sf;
            let mut path = path.clone();
            path.push((letter, i));
            let pos = chain[letter].part(i);
            match t.rows()[i - 1].get(pos) {
                Some(&bumped) => {
                    debug_assert!(bumped > letter);
                    stack.push((bumped, Some(i), path, coeff));
                }
                None => {
                    if let Some(t_out) = tableau_from_path(&chain, &path) {
                        out.push((t_out, coeff));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.rows().cmp(b.0.rows()));
    out
}

/// Output tableau whose chain is T^{≤p} + e_{i_m} for levels k_m ≤ p < k_{m+1}.
fn tableau_from_path(chain: &[Partition], path: &[(usize, usize)]) -> Option<Ssyt> {
    let mut new_chain = chain.to_vec();
    for (m, &(level, row)) in path.iter().enumerate() {
        let end = path.get(m + 1).map_or(chain.len(), |&(next, _)| next);
        for shape in new_chain.iter_mut().take(end).skip(level) {
            *shape = shape.plus_box(row)?;
        }
    }
    Ssyt::from_chain(&new_chain).ok()
}

/// c^λ_{k→i} by its closed form.
pub fn one_step(lambda: &Partition, k: usize, i: usize) -> SqrtRational {
    let d = lambda.d();
    if i == 0 || k == 0 || i > k || k > d || lambda.plus_box(i).is_none() {
        return SqrtRational::zero();
    }
    let l = |s: usize| lambda.part(s) as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in (1..k).filter(|&j| j != i) {
        let g = (l(j) - l(i)) + (i as i64 - j as i64);
        num *= g - 1;
        den *= g;
    }
    den *= (l(i) - l(k)) + (k as i64 - i as i64) + i64::from(i == k);
    abs_sqrt(1, ratio(num, den))
}

/// (a^λ_{kℓ→ij}, b^λ_{kℓ→ij}).
///
/// b is the coefficient of the bumped output with k in row j and ℓ in row i;
/// it vanishes unless k > ℓ, and for i = j that output coincides with the
/// a-target, so b is 0 there.
pub fn two_step(lambda: &Partition, k: usize, l: usize, i: usize, j: usize) -> (SqrtRational, SqrtRational) {
    let zero = (SqrtRational::zero(), SqrtRational::zero());
    let Some(t1) = one_step_tableau(lambda, k, i) else { return zero };
    let c1 = cg_coefficient(&t1, &highest_weight(lambda), k);
    if c1.is_zero() {
        return zero;
    }
    let a = match two_step_tableau(lambda, k, l, i, j) {
        Some(t2) => &c1 * &cg_coefficient(&t2, &t1, l),
        None => SqrtRational::zero(),
    };
    let b = if i != j && k > l {
        match two_step_tableau(lambda, k, l, j, i) {
            Some(t2) => &c1 * &cg_coefficient(&t2, &t1, l),
            None => SqrtRational::zero(),
        }
    } else {
        SqrtRational::zero()
    };
    (a, b)
}

/// D^λ_{k→i} = dim V^k_{λ≤k + e_i} / dim V^k_{λ≤k}, or 0 when undefined.
pub fn dim_ratio(lambda: &Partition, k: usize, i: usize) -> BigRational {
    if i == 0 || k == 0 || i > k || k > lambda.d() {
        return BigRational::zero();
    }
    let base = lambda.prefix(k);
    if lambda.prefix(k - 1) != base.prefix(k - 1) || base.rows().len() != k {
        return BigRational::zero();
    }
    match base.plus_box(i) {
        Some(up) => dim_gl_q(&up) / dim_gl_q(&base),
        None => BigRational::zero(),
    }
}

/// D^λ_{s→ij} = D^λ_{s→i} · D^{λ+e_i}_{s→j}.
pub fn dim_ratio2(lambda: &Partition, s: usize, i: usize, j: usize) -> BigRational {
    match lambda.plus_box(i) {
        Some(up) => dim_ratio(lambda, s, i) * dim_ratio(&up, s, j),
        None => BigRational::zero(),
    }
}

/// √(dim V_μ / dim V_λ) · ⟨T|T′,k⟩ with shape(T′) = μ and shape(T) = λ = μ + box.
pub fn dual_cg(t_prime: &Ssyt, t: &Ssyt, k: usize) -> SqrtRational {
    let v = cg_coefficient(t, t_prime, k);
    if v.is_zero() {
        return v;
    }
    let scale = dim_gl_q(&t_prime.shape()) / dim_gl_q(&t.shape());
    &v * &SqrtRational::sqrt(scale)
}

/// CG unitarity for all input shapes λ ⊢ n′ ≤ n with d′ ≤ d:
/// columns Σ_{T′}|⟨T′|T,k⟩|² = 1, rows Σ_{T,k}|⟨T′|T,k⟩|² = 1 for each T′ of shape λ+e_i,
/// and insertion agrees with the product of scalar factors coefficient by coefficient.
pub fn verify_cg_unitarity(n: usize, d: usize) -> Report {
    run_jobs("cg-unitarity", n, d, shapes_upto(n, d, 0), |_, lambda| {
        let mut r = Report::new("");
        let dd = lambda.d();
        let small = enumerate_ssyt(lambda);
        let bigger: Vec<Ssyt> = (1..=dd).filter_map(|i| lambda.plus_box(i)).flat_map(|mu| enumerate_ssyt(&mu)).collect();
        let mut rows: HashMap<&Ssyt, BigRational> = bigger.iter().map(|b| (b, BigRational::zero())).collect();
        let one = BigRational::one();
        for s in &small {
            for k in 1..=dd {
                let out = cg_insert(s, k);
                let total: BigRational = out.iter().map(|(_, c)| c.square()).sum();
                r.check_exact(|| format!("{} column T={s} k={k}", lambda.canonical()), &total, &one);
                for b in &bigger {
                    let direct = cg_coefficient(b, s, k);
                    let via = out.iter().find(|(o, _)| o == b).map_or_else(SqrtRational::zero, |(_, c)| c.clone());
                    r.check(
                        || format!("{} insertion T′={b} T={s} k={k}", lambda.canonical()),
                        via == direct,
                        || via.to_string(),
                        || direct.to_string(),
                        0.0,
                    );
                    *rows.get_mut(b).expect("listed") += direct.square();
                }
            }
        }
        for b in &bigger {
            r.check_exact(|| format!("{} row T′={b}", lambda.canonical()), &rows[b], &one);
        }
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::scalar::frac;
    use num_traits::One;

    fn p(parts: &[usize], d: usize) -> Partition {
        Partition::from_parts(parts, d).unwrap()
    }

    fn t(rows: &[&[usize]], d: usize) -> Ssyt {
        Ssyt::from_rows(rows.iter().map(|r| r.to_vec()).collect(), d).unwrap()
    }

    #[test]
    fn figure_insertion() {
        let out = cg_insert(&t(&[&[1, 2], &[3]], 3), 2);
        let shapes: Vec<String> = out.iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(shapes, ["[[1,2],[2],[3]]", "[[1,2],[2,3]]", "[[1,2,2],[3]]", "[[1,2,3],[2]]"]);
        let total: BigRational = out.iter().map(|(_, c)| c.square()).sum();
        assert!(total.is_one());
        for (s, v) in &out {
            assert_eq!(*v, cg_coefficient(s, &t(&[&[1, 2], &[3]], 3), 2));
        }
    }

    #[test]
    fn first_examples() {
        assert_eq!(one_step(&p(&[1], 2), 2, 1), SqrtRational::sqrt(frac(1, 2)));
        for d in 2..=5 {
            for k in 2..=d {
                assert_eq!(one_step(&p(&[2], d), k, 1), SqrtRational::sqrt(frac(1, 3)));
            }
        }
        assert!(one_step(&p(&[2, 2], 2), 2, 2).is_zero());
        let (a, b) = two_step(&p(&[1], 2), 1, 2, 1, 1);
        assert_eq!(a, SqrtRational::sqrt(frac(1, 3)));
        assert!(b.is_zero());
        assert_eq!(dim_ratio(&p(&[1], 2), 2, 1), frac(3, 2));
        assert!(dim_ratio(&p(&[1], 3), 1, 2).is_zero());
    }

    #[test]
    fn two_box_coefficients() {
        for d in 2..=4 {
            let base = highest_weight(&p(&[2], d));
            for i in 2..=d {
                let row = t(&[&[1, 1, i]], d);
                let col = t(&[&[1, 1], &[i]], d);
                assert_eq!(cg_coefficient(&row, &base, i), SqrtRational::sqrt(frac(1, 3)));
                assert_eq!(cg_coefficient(&col, &base, i).square(), frac(2, 3));
            }
            assert!(cg_coefficient(&t(&[&[1, 1], &[2]], d), &base, 1).is_zero());
        }
    }

    #[test]
    fn insertion_matches_product_and_is_unitary() {
        for d in 1..=3 {
            for n in 0..=3 {
                for lam in enumerate_partitions(n, d) {
                    let bigger: Vec<Ssyt> = (1..=d)
                        .filter_map(|i| lam.plus_box(i))
                        .flat_map(|mu| enumerate_ssyt(&mu))
                        .collect();
                    for s in enumerate_ssyt(&lam) {
                        for k in 1..=d {
                            let out = cg_insert(&s, k);
                            let total: BigRational = out.iter().map(|(_, c)| c.square()).sum();
                            assert!(total.is_one(), "{s} <- {k}");
                            for b in &bigger {
                                let direct = cg_coefficient(b, &s, k);
                                let via = out.iter().find(|(o, _)| o == b).map(|(_, c)| c.clone());
                                assert_eq!(via.unwrap_or_else(SqrtRational::zero), direct, "{b} from {s} <- {k}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_step_matches_insertion() {
        for d in 1..=4 {
            for n in 0..=4 {
                for lam in enumerate_partitions(n, d) {
                    let hw = highest_weight(&lam);
                    for k in 1..=d {
                        let out = cg_insert(&hw, k);
                        for i in 1..=d {
                            let closed = one_step(&lam, k, i);
                            match one_step_tableau(&lam, k, i) {
                                Some(tk) => {
                                    assert_eq!(closed, cg_coefficient(&tk, &hw, k));
                                    assert!(!closed.is_zero());
                                    assert!(out.iter().any(|(o, _)| *o == tk));
                                }
                                None => assert!(closed.is_zero()),
                            }
                            let dk = dim_ratio(&lam, k, i);
                            let dk1 = dim_ratio(&lam, k - 1, i);
                            assert_eq!(closed.square(), &dk - &dk1);
                            let gap = BigRational::from_integer((lam.last_content(i) - lam.last_content(k)).into());
                            assert_eq!(gap * closed.square(), dk1);
                        }
                        assert_eq!(out.len(), (1..=d).filter(|&i| one_step_tableau(&lam, k, i).is_some()).count());
                    }
                }
            }
        }
    }

    #[test]
    fn b_needs_descending_letters() {
        let lam = p(&[3, 2, 1], 4);
        for k in 1..=4 {
            for l in 1..=4 {
                for i in 1..=4 {
                    for j in 1..=4 {
                        let (a, b) = two_step(&lam, k, l, i, j);
                        assert!(a.sign() >= 0);
                        if k <= l || i == j {
                            assert!(b.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_rows_are_normalized() {
        for d in 1..=3 {
            for n in 0..=3 {
                for mu in enumerate_partitions(n, d) {
                    for tp in enumerate_ssyt(&mu) {
                        for i in 1..=d {
                            let Some(lam) = mu.plus_box(i) else { continue };
                            let mut total = BigRational::zero();
                            for tt in enumerate_ssyt(&lam) {
                                for k in 1..=d {
                                    total += dual_cg(&tp, &tt, k).square();
                                }
                            }
                            assert!(total.is_one());
                        }
                    }
                }
            }
        }
        // Dual of the √(1/3) example: scaled by √(dim V_(2) / dim V_(3)).
        let d = 2;
        let v = dual_cg(&highest_weight(&p(&[2], d)), &t(&[&[1, 1, 2]], d), 2);
        assert_eq!(v.square(), frac(1, 3) * frac(3, 4));
    }
}

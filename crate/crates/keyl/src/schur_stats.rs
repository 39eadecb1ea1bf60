//! Dimensions, Schur polynomials and the exact weak-Schur-sampling distribution.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::scalar::Scalar;
use crate::tableaux::enumerate_ssyt;

/// dim(λ) = |SYT(λ)| by the hook-length formula.
pub fn dim_sp(lambda: &Partition) -> BigUint {
    let mut num = BigUint::one();
    for m in 2..=lambda.size() {
        num *= m;
    }
    let mut den = BigUint::one();
    for (r, c) in lambda.cells() {
        den *= lambda.hook(r, c).expect("cell inside λ");
    }
    num / den
}

fn check_len(lambda: &Partition, d: usize) -> Result<()> {
    if lambda.length() > d {
        return Err(Error::TooManyRows { len: lambda.length(), d });
    }
    Ok(())
}

/// dim V^d_λ by the Weyl dimension formula.
pub fn dim_weyl(lambda: &Partition, d: usize) -> Result<BigUint> {
    check_len(lambda, d)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=d {
        for j in i + 1..=d {
            num *= lambda.part(i) - lambda.part(j) + j - i;
            den *= j - i;
        }
    }
    Ok(num / den)
}

/// dim V^d_λ by Stanley's hook-content formula.
pub fn dim_hook_content(lambda: &Partition, d: usize) -> Result<BigUint> {
    check_len(lambda, d)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (r, c) in lambda.cells() {
        num *= (d as i64 + c as i64 - r as i64) as u64;
        den *= lambda.hook(r, c).expect("cell inside λ");
    }
    Ok(num / den)
}

/// dim V_λ at the partition's own ambient length.
pub fn dim_gl(lambda: &Partition) -> BigUint {
    dim_weyl(lambda, lambda.d()).expect("ℓ(λ) ≤ d by construction")
}

pub(crate) fn dim_gl_q(lambda: &Partition) -> BigRational {
    BigRational::from_integer(BigInt::from(dim_gl(lambda)))
}

/// Weights of SSYT(λ, d) with multiplicities (the Kostka numbers of λ).
pub type KostkaTable = Vec<(Vec<usize>, u64)>;

fn kostka_cache() -> &'static Mutex<HashMap<Partition, Arc<KostkaTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<Partition, Arc<KostkaTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized monomial table of s_λ in d = λ.d() variables.
pub fn kostka_table(lambda: &Partition) -> Arc<KostkaTable> {
    if let Some(t) = kostka_cache().lock().expect("cache poisoned").get(lambda) {
        return t.clone();
    }
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for t in enumerate_ssyt(lambda) {
        *counts.entry(t.weight()).or_default() += 1;
    }
    let mut table: KostkaTable = counts.into_iter().collect();
    table.sort();
    let table = Arc::new(table);
    kostka_cache().lock().expect("cache poisoned").insert(lambda.clone(), table.clone());
    table
}

/// s_λ(α) as the SSYT generating sum; zero when λ has more rows than α.
pub fn schur_poly<S: Scalar>(lambda: &Partition, alpha: &[S]) -> S {
    if lambda.length() > alpha.len() {
        return S::zero();
    }
    let lambda = lambda.with_d(alpha.len()).expect("length checked");
    if alpha.iter().all(|a| *a == alpha[0]) {
        // s_λ(c,…,c) = c^n · dim V_λ.
        let dim = dim_weyl(&lambda, alpha.len()).expect("length checked");
        let dim = S::from_ratio(&BigRational::from_integer(BigInt::from(dim)));
        return dim * alpha[0].powi(lambda.size());
    }
    let mut total = S::zero();
    for (weight, mult) in kostka_table(&lambda).iter() {
        let mut term = S::from_int(*mult as i64);
        for (a, &e) in alpha.iter().zip(weight) {
            if e > 0 {
                term = term * a.powi(e);
            }
        }
        total = total + term;
    }
    total
}

/// A probability vector: nonnegative, weakly decreasing, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<S> {
    values: Vec<S>,
}

impl<S: Scalar> Spectrum<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if values.iter().any(|v| *v < S::zero()) {
            return Err(Error::InvalidSpectrum("negative entry".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum("entries must be weakly decreasing".into()));
        }
        let sum = values.iter().fold(S::zero(), |a, b| a + b.clone());
        if (sum - S::one()).abs_val() > S::tolerance() {
            return Err(Error::InvalidSpectrum("entries must sum to 1".into()));
        }
        Ok(Spectrum { values })
    }

    pub fn uniform(d: usize) -> Self {
        let v = S::one() / S::from_int(d as i64);
        Spectrum { values: vec![v; d] }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn d(&self) -> usize {
        self.values.len()
    }

    /// Number of nonzero entries.
    pub fn rank(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// p₂(α) = Σ α_i².
    pub fn p2(&self) -> S {
        self.values.iter().fold(S::zero(), |a, v| a + v.clone() * v.clone())
    }

    /// Converts an exact spectrum to another scalar type.
    pub fn from_exact(exact: &Spectrum<BigRational>) -> Self {
        Spectrum { values: exact.values.iter().map(S::from_ratio).collect() }
    }
}

impl Spectrum<BigRational> {
    /// Parses "1/2,1/3,1/6".
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(|s| s.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(values)
    }

    /// A random spectrum with small integer weights, sorted and normalized.
    pub fn random<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        let mut w: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=12)).collect();
        if w.iter().all(|&x| x == 0) {
            w[0] = 1;
        }
        w.sort_unstable_by(|a, b| b.cmp(a));
        let total: i64 = w.iter().sum();
        let values = w.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(total))).collect();
        Spectrum { values }
    }
}

/// Pr[λ] = dim(λ)·s_λ(α) over λ ⊢ n with at most d rows.
#[derive(Clone, Debug)]
pub struct WssDistribution<S> {
    n: usize,
    d: usize,
    entries: Vec<(Partition, S)>,
}

impl<S: Scalar> WssDistribution<S> {
    pub fn new(n: usize, alpha: &Spectrum<S>) -> Self {
        let d = alpha.d();
        let entries = enumerate_partitions(n, d)
            .into_par_iter()
            .map(|lambda| {
                let dim = S::from_ratio(&BigRational::from_integer(BigInt::from(dim_sp(&lambda))));
                let p = dim * schur_poly(&lambda, alpha.values());
                (lambda, p)
            })
            .collect();
        WssDistribution { n, d, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// (λ, Pr[λ]) in lexicographically decreasing order of λ.
    pub fn entries(&self) -> &[(Partition, S)] {
        &self.entries
    }

    pub fn prob(&self, lambda: &Partition) -> S {
        self.entries.iter().find(|(l, _)| l == lambda).map_or_else(S::zero, |(_, p)| p.clone())
    }

    pub fn total(&self) -> S {
        self.entries.iter().fold(S::zero(), |a, (_, p)| a + p.clone())
    }

    /// Σ_λ Pr[λ]·f(λ).
    pub fn expect(&self, f: impl Fn(&Partition) -> S) -> S {
        self.entries.iter().fold(S::zero(), |a, (l, p)| if p.is_zero() { a } else { a + p.clone() * f(l) })
    }

    /// E[ℓ(λ)].
    pub fn expected_length(&self) -> S {
        self.expect(|l| S::from_int(l.length() as i64))
    }
}

/// Exact WSS distribution.
pub fn wss_distribution(n: usize, alpha: &Spectrum<BigRational>) -> WssDistribution<BigRational> {
    WssDistribution::new(n, alpha)
}

/// Kerov's p₂*(λ) = Σ_i (λ_i² − λ_i(2i−1)).
pub fn p2_star(lambda: &Partition) -> i64 {
    lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(idx, &r)| {
            let (r, i) = (r as i64, idx as i64 + 1);
            r * r - r * (2 * i - 1)
        })
        .sum()
}

/// Plancherel mass dim(λ)²/n!.
pub fn plancherel_prob(lambda: &Partition) -> BigRational {
    let dim = BigInt::from(dim_sp(lambda));
    let mut fact = BigInt::one();
    for m in 2..=lambda.size() {
        fact *= m;
    }
    BigRational::new(&dim * &dim, fact)
}

/// Weyl formula = hook-content formula = SSYT count for all λ ⊢ n′ ≤ n, ℓ(λ) ≤ d′ ≤ d.
pub fn verify_dimensions(n: usize, d: usize) -> crate::report::Report {
    crate::sweep::run_jobs("dimensions", n, d, crate::sweep::shapes_upto(n, d, 0), |_, lambda| {
        let mut r = crate::report::Report::new("");
        let dd = lambda.d();
        let weyl = dim_weyl(lambda, dd).expect("ℓ ≤ d");
        let hook = dim_hook_content(lambda, dd).expect("ℓ ≤ d");
        let count = BigUint::from(enumerate_ssyt(lambda).len());
        let at = |what: &str| format!("{} {what}", lambda.canonical());
        r.check(|| at("weyl=hook"), weyl == hook, || weyl.to_string(), || hook.to_string(), 0.0);
        r.check(|| at("weyl=count"), weyl == count, || weyl.to_string(), || count.to_string(), 0.0);
        r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, q};
    use crate::tableaux::enumerate_syt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize], d: usize) -> Partition {
        Partition::from_parts(parts, d).unwrap()
    }

    #[test]
    fn symmetric_group_dimensions() {
        assert_eq!(dim_sp(&p(&[2, 1], 2)), BigUint::from(2u32));
        assert_eq!(dim_sp(&p(&[5], 1)), BigUint::one());
        assert_eq!(dim_sp(&p(&[2, 2], 2)), BigUint::from(2u32));
        assert_eq!(dim_sp(&p(&[3, 2], 2)), BigUint::from(5u32));
        for n in 0..=7 {
            for l in enumerate_partitions(n, n.max(1)) {
                assert_eq!(dim_sp(&l), BigUint::from(enumerate_syt(&l).len()));
            }
        }
    }

    #[test]
    fn unitary_group_dimensions() {
        for d in 1..=6 {
            assert_eq!(dim_weyl(&p(&[2], d), d).unwrap(), BigUint::from(d * (d + 1) / 2));
            if d >= 2 {
                assert_eq!(dim_weyl(&p(&[1, 1], d), d).unwrap(), BigUint::from(d * (d - 1) / 2));
            }
        }
        assert_eq!(dim_weyl(&p(&[2, 1], 2), 2).unwrap(), BigUint::from(2u32));
        assert!(dim_weyl(&p(&[1, 1, 1], 3), 2).is_err());
        for n in 0..=6 {
            for d in 1..=4 {
                for l in enumerate_partitions(n, d) {
                    let w = dim_weyl(&l, d).unwrap();
                    assert_eq!(w, dim_hook_content(&l, d).unwrap());
                    assert_eq!(w, BigUint::from(enumerate_ssyt(&l).len()));
                }
            }
        }
    }

    #[test]
    fn schur_polynomial_examples() {
        let half = vec![frac(1, 2), frac(1, 2)];
        assert_eq!(schur_poly(&p(&[2], 2), &half), frac(3, 4));
        assert_eq!(schur_poly(&p(&[1, 1], 2), &[q(1), q(0)]), q(0));
        let a = vec![frac(1, 2), frac(1, 3), frac(1, 6)];
        assert_eq!(schur_poly(&p(&[1], 3), &a), q(1));
        assert_eq!(schur_poly(&p(&[1, 1, 1, 1], 4), &a), q(0));
        let f = schur_poly(&p(&[2], 2), &[0.5f64, 0.5]);
        assert!((f - 0.75).abs() < 1e-15);
    }

    #[test]
    fn wss_examples() {
        let dist = wss_distribution(2, &Spectrum::uniform(2));
        assert_eq!(dist.prob(&p(&[2], 2)), frac(3, 4));
        assert_eq!(dist.prob(&p(&[1, 1], 2)), frac(1, 4));
        let pure = Spectrum::new(vec![q(1), q(0), q(0)]).unwrap();
        let dist = wss_distribution(4, &pure);
        assert_eq!(dist.prob(&p(&[4], 3)), q(1));
        assert_eq!(dist.total(), q(1));
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![frac(1, 3), frac(2, 3)]).is_err());
        assert!(Spectrum::new(vec![frac(2, 3), frac(1, 2)]).is_err());
        assert!(Spectrum::new(vec![frac(3, 2), frac(-1, 2)]).is_err());
        let s = Spectrum::parse("1/2, 1/3, 1/6").unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.p2(), frac(7, 18));
        assert!(Spectrum::<f64>::new(vec![0.7, 0.3]).is_ok());
    }

    #[test]
    fn p2_star_expectation() {
        assert_eq!(p2_star(&p(&[6, 6, 2, 1], 4)), 36);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let alpha = Spectrum::random(3, &mut rng);
            for n in 0..=5 {
                let dist = wss_distribution(n, &alpha);
                let lhs = dist.expect(|l| q(p2_star(l)));
                let rhs = q((n * n.saturating_sub(1)) as i64) * alpha.p2();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn generic_distribution_matches_exact() {
        let exact = Spectrum::parse("1/2,1/3,1/6").unwrap();
        let approx = Spectrum::<f64>::from_exact(&exact);
        let de = wss_distribution(4, &exact);
        let df = WssDistribution::new(4, &approx);
        for ((l1, pe), (l2, pf)) in de.entries().iter().zip(df.entries()) {
            assert_eq!(l1, l2);
            assert!((Scalar::to_f64(pe) - pf).abs() < 1e-14);
        }
        let f32d = WssDistribution::new(4, &Spectrum::<f32>::from_exact(&exact));
        assert!((f32d.total() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn plancherel_mass() {
        assert_eq!(plancherel_prob(&p(&[2, 2], 2)), frac(4, 24));
    }
}

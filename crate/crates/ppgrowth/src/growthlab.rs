//! Counting, growth tables, densities, sampling, and report generation.
//!
//! All counts are of cyclic words (canonical rotations). Predicate-backed
//! counting enumerates cyclically reduced words and is guarded by an explicit
//! budget on `(2r-1)^len`, overridable through the `PPGROWTH_BUDGET`
//! environment variable.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::machines::{self, Automaton};
use crate::potpos::{self, LanguageSpec};
use crate::spectral::{self, RootApproximation};
use crate::words::{enumerate_cyclic, CyclicWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("enumeration budget exceeded: needs about {need} steps, budget {budget} (set PPGROWTH_BUDGET to raise)")]
    BudgetExceeded { need: BigUint, budget: u64 },
    #[error(transparent)]
    Machine(#[from] machines::MachineError),
    #[error(transparent)]
    Potpos(#[from] potpos::PotposError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Enumeration budget: a cap on `(2r-1)^len` for predicate-backed counting
/// and on the closed-path count for machine-backed counting.
#[derive(Debug, Clone, Copy)]
pub struct Budget(pub u64);

impl Budget {
    pub fn from_env() -> Budget {
        let v = std::env::var("PPGROWTH_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget(v)
    }

    fn admit(&self, need: &BigUint) -> Result<(), GrowthError> {
        if need > &BigUint::from(self.0) {
            Err(GrowthError::BudgetExceeded {
                need: need.clone(),
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget(DEFAULT_BUDGET)
    }
}

fn enumeration_cost(rank: u16, len: usize) -> BigUint {
    if len == 0 {
        return BigUint::one();
    }
    BigUint::from(2 * rank as u32) * BigUint::from(2 * rank as u32 - 1).pow((len - 1) as u32)
}

/// Exact count of cyclic words of the given length in the language.
pub fn count_language(
    spec: &LanguageSpec,
    len: usize,
    budget: Budget,
) -> Result<BigUint, GrowthError> {
    match spec {
        LanguageSpec::Machine(m) => {
            if len == 0 {
                return Ok(BigUint::zero());
            }
            let paths = m.count_closed_paths(len as u64);
            budget.admit(&paths)?;
            Ok(BigUint::from(m.language(len)?.len()))
        }
        _ => {
            let need = enumeration_cost(spec.rank(), len);
            budget.admit(&need)?;
            let mut count = BigUint::zero();
            for w in enumerate_cyclic(spec.rank(), len) {
                if spec.contains(&w)? {
                    count += 1u32;
                }
            }
            Ok(count)
        }
    }
}

/// Exact counts per length with a label, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthSeries {
    pub label: String,
    #[serde(serialize_with = "ser_count_map")]
    pub counts: BTreeMap<usize, BigUint>,
}

fn ser_count_map<S: serde::Serializer>(
    m: &BTreeMap<usize, BigUint>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    map.end()
}

impl GrowthSeries {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("length,count\n");
        for (l, c) in &self.counts {
            s.push_str(&format!("{l},{c}\n"));
        }
        s
    }
}

/// One exact density point: (count(sub) + 1) / (count(super) + 1).
#[derive(Debug, Clone, Serialize)]
pub struct DensityPoint {
    pub length: usize,
    #[serde(serialize_with = "ser_biguint")]
    pub numerator: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub denominator: BigUint,
    /// Decimal rendering of the exact rational, 12 digits.
    pub value: String,
}

fn ser_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl DensityPoint {
    pub fn exact(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()) + BigInt::one(),
            BigInt::from(self.denominator.clone()) + BigInt::one(),
        )
    }
}

/// Exact densities of `sub` inside `sup` at the given lengths.
pub fn density_series(
    sub: &LanguageSpec,
    sup: &LanguageSpec,
    lengths: &[usize],
    budget: Budget,
) -> Result<Vec<DensityPoint>, GrowthError> {
    let mut out = Vec::new();
    for &len in lengths {
        let num = count_language(sub, len, budget)?;
        let den = count_language(sup, len, budget)?;
        let exact = BigRational::new(
            BigInt::from(num.clone()) + BigInt::one(),
            BigInt::from(den.clone()) + BigInt::one(),
        );
        out.push(DensityPoint {
            length: len,
            numerator: num,
            denominator: den,
            value: spectral::rational_to_decimal(&exact, 12),
        });
    }
    Ok(out)
}

/// Counts of cyclically reduced cyclic words with zero exponent-sum vector.
pub fn commutator_growth(
    rank: u16,
    lengths: &[usize],
    budget: Budget,
) -> Result<GrowthSeries, GrowthError> {
    let mut counts = BTreeMap::new();
    for &len in lengths {
        let need = enumeration_cost(rank, len);
        budget.admit(&need)?;
        let mut c = BigUint::zero();
        for w in enumerate_cyclic(rank, len) {
            if w.abelianize().iter().all(|&e| e == 0) {
                c += 1u32;
            }
        }
        counts.insert(len, c);
    }
    Ok(GrowthSeries {
        label: format!("commutator-kernel rank {rank}"),
        counts,
    })
}

/// One row of the growth table.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub rank: u16,
    /// Growth base of the positive words: r.
    pub positive_rate: u16,
    /// Dominant root of the rank machine (the f2 machine for rank 2).
    #[serde(serialize_with = "ser_root")]
    pub pp_lower_bound: RootApproximation,
    /// Growth base of all reduced words: 2r - 1.
    pub all_rate: u16,
}

fn ser_root<S: serde::Serializer>(r: &RootApproximation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.decimal())
}

/// Growth-rate table for ranks 2..=7: exact dominant roots of the built-in
/// machines at the requested precision.
pub fn growth_table(digits: u32) -> Result<Vec<TableRow>, GrowthError> {
    let mut rows = Vec::new();
    for rank in 2u16..=7 {
        let machine = if rank == 2 {
            machines::build_f2_lower()
        } else {
            machines::build_rank_machine(rank)?
        };
        let poly = spectral::charpoly(&machine.adjacency_matrix());
        let root = spectral::dominant_root(&poly, digits)?;
        rows.push(TableRow {
            rank,
            positive_rate: rank,
            pp_lower_bound: root,
            all_rate: 2 * rank - 1,
        });
    }
    Ok(rows)
}

pub fn table_markdown(rows: &[TableRow]) -> String {
    let mut s = String::from("| rank | positive | potentially positive (lower bound) | all |\n");
    s.push_str("|---|---|---|---|\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {}^n | {}^n | {}^n |\n",
            r.rank,
            r.positive_rate,
            r.pp_lower_bound.decimal(),
            r.all_rate
        ));
    }
    s
}

/// Report from sampling uniform random closed paths of the criterion machine
/// and filtering by the rank-2 decision procedure.
#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub target_length: usize,
    pub requested: usize,
    pub accepted: usize,
    pub in_limit_language: usize,
    /// in_limit_language / accepted, when any sample was accepted.
    pub fraction: Option<f64>,
    pub seed: u64,
    /// Sampling is uniform over closed paths of the criterion machine, not
    /// over potentially positive words; short lengths bias the fraction.
    pub caveat: String,
    pub words: Vec<String>,
}

pub const SAMPLE_LENGTH_CAP: usize = 80;

/// Draw `count` uniform closed paths of length `len` from the criterion
/// machine, decide each word, and report which accepted words live in the
/// limit language. Deterministic for a fixed seed.
pub fn sample_pp2(
    len: usize,
    count: usize,
    seed: u64,
) -> Result<SampleReport, GrowthError> {
    let len = len.min(SAMPLE_LENGTH_CAP);
    let machine = machines::build_goldstein(
        Letter::from_char('B').unwrap(),
        Letter::from_char('a').unwrap(),
    )?;
    let rinf = potpos::rinf_forbidden_spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = ClosedPathSampler::new(&machine, len);
    let mut accepted = 0usize;
    let mut in_rinf = 0usize;
    let mut words = Vec::new();
    for _ in 0..count {
        let word = sampler.draw(&mut rng);
        let d = potpos::decide_pp2(&word.to_word(), None)?;
        if d.verdict == potpos::Verdict::PotentiallyPositive {
            accepted += 1;
            if rinf.admits(&word) {
                in_rinf += 1;
            }
            if words.len() < 32 {
                words.push(word.to_string());
            }
        }
    }
    Ok(SampleReport {
        target_length: len,
        requested: count,
        accepted,
        in_limit_language: in_rinf,
        fraction: (accepted > 0).then(|| in_rinf as f64 / accepted as f64),
        seed,
        caveat: "uniform over closed machine paths, not over potentially positive words; \
                 short lengths bias the limit-language fraction upward"
            .into(),
        words,
    })
}

/// Exact uniform sampling of closed paths of a fixed length in an automaton,
/// by dynamic-programming path counts.
pub struct ClosedPathSampler {
    len: usize,
    labels: Vec<Letter>,
    rank: u16,
    adj: Vec<Vec<usize>>,
    /// counts[s][t][v] = number of paths of length (len - 1 - t) edges from v
    /// back to s with a closing edge v -> s at the end... stored as
    /// suffix counts: ways to complete from node v with k steps left to a
    /// node having an edge to s.
    suffix: Vec<Vec<Vec<BigUint>>>,
    start_weight: Vec<BigUint>,
    total: BigUint,
}

impl ClosedPathSampler {
    pub fn new(machine: &Automaton, len: usize) -> ClosedPathSampler {
        assert!(len >= 1);
        let n = machine.node_count();
        let node_ids: Vec<u32> = machine.nodes().iter().map(|nd| nd.id).collect();
        let labels: Vec<Letter> = machine.nodes().iter().map(|nd| nd.label).collect();
        let idx: BTreeMap<u32, usize> = node_ids
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        drop(node_ids);
        let mut adj = vec![Vec::new(); n];
        let mut radj_has = vec![vec![false; n]; n];
        for (u, v) in machine.edges() {
            adj[idx[&u]].push(idx[&v]);
            radj_has[idx[&u]][idx[&v]] = true;
        }
        // suffix[s][k][v] = number of walks of k edges from v ending at a
        // node w with an edge w -> s
        let mut suffix = Vec::with_capacity(n);
        #[allow(clippy::needless_range_loop)]
        for s in 0..n {
            let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(len);
            let base: Vec<BigUint> = (0..n)
                .map(|v| {
                    if radj_has[v][s] {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                })
                .collect();
            table.push(base);
            for k in 1..len {
                let prev = &table[k - 1];
                let cur: Vec<BigUint> = (0..n)
                    .map(|v| adj[v].iter().map(|&w| prev[w].clone()).sum())
                    .collect();
                table.push(cur);
            }
            suffix.push(table);
        }
        let start_weight: Vec<BigUint> = (0..n).map(|s| suffix[s][len - 1][s].clone()).collect();
        let total: BigUint = start_weight.iter().cloned().sum();
        ClosedPathSampler {
            len,
            labels,
            rank: machine.rank(),
            adj,
            suffix,
            start_weight,
            total,
        }
    }

    pub fn total_paths(&self) -> &BigUint {
        &self.total
    }

    /// Draw one closed path uniformly and spell its cyclic word.
    pub fn draw<R: rand::Rng>(&self, rng: &mut R) -> CyclicWord {
        assert!(!self.total.is_zero(), "machine has closed paths");
        let mut pick = rng.gen_biguint_below(&self.total);
        let mut start = 0usize;
        for (s, w) in self.start_weight.iter().enumerate() {
            if &pick < w {
                start = s;
                break;
            }
            pick -= w;
        }
        let mut path = vec![start];
        let mut cur = start;
        for step in 1..self.len {
            let remaining = self.len - 1 - step;
            let weights: Vec<(usize, &BigUint)> = self.adj[cur]
                .iter()
                .map(|&w| (w, &self.suffix[start][remaining][w]))
                .collect();
            let total: BigUint = weights.iter().map(|(_, c)| (*c).clone()).sum();
            let mut pick = rng.gen_biguint_below(&total);
            let mut chosen = weights[0].0;
            for (w, c) in weights {
                if &pick < c {
                    chosen = w;
                    break;
                }
                pick -= c;
            }
            path.push(chosen);
            cur = chosen;
        }
        let letters: Vec<Letter> = path.iter().map(|&v| self.labels[v]).collect();
        CyclicWord::reduce(self.rank, letters).expect("machine labels are in rank")
    }
}

/// The nth uniform closed-path word, by index rather than randomness
/// (used for deterministic regression corpora).
pub fn seeded_machine_words(
    machine: &Automaton,
    max_len: usize,
    count: usize,
    seed: u64,
) -> Vec<CyclicWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    use rand::Rng;
    while out.len() < count {
        let len = rng.gen_range(1..=max_len);
        let sampler = ClosedPathSampler::new(machine, len);
        if sampler.total_paths().is_zero() {
            continue;
        }
        out.push(sampler.draw(&mut rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{build_f2_lower, build_goldstein};
    use crate::potpos::{rn_forbidden_spec, ForbiddenSpec};

    fn all_words_spec(rank: u16) -> LanguageSpec {
        LanguageSpec::Forbidden(ForbiddenSpec { rank, rules: vec![] })
    }

    #[test]
    fn count_all_cyclic_rank2() {
        let spec = all_words_spec(2);
        assert_eq!(
            count_language(&spec, 2, Budget::default()).unwrap(),
            BigUint::from(8u32)
        );
    }

    #[test]
    fn count_machine_language() {
        let spec = LanguageSpec::Machine(build_f2_lower());
        assert_eq!(
            count_language(&spec, 1, Budget::default()).unwrap(),
            BigUint::from(3u32)
        );
        for l in 1..=8usize {
            let via_spec = count_language(&spec, l, Budget::default()).unwrap();
            let direct = build_f2_lower().language(l).unwrap().len();
            assert_eq!(via_spec, BigUint::from(direct));
        }
    }

    #[test]
    fn budget_guard_fires() {
        let spec = all_words_spec(2);
        let err = count_language(&spec, 30, Budget(1000)).unwrap_err();
        assert!(matches!(err, GrowthError::BudgetExceeded { .. }));
    }

    #[test]
    fn growth_table_values() {
        let rows = growth_table(6).unwrap();
        assert_eq!(rows.len(), 6);
        assert!((rows[0].pp_lower_bound.value_f64() - 2.50506841362147).abs() < 1e-6);
        assert!((rows[1].pp_lower_bound.value_f64() - 4.0243523311568218).abs() < 1e-6);
        assert_eq!(rows[0].all_rate, 3);
        assert_eq!(rows[5].rank, 7);
        assert_eq!(rows[5].positive_rate, 7);
        assert_eq!(rows[5].all_rate, 13);
    }

    #[test]
    fn density_identity() {
        let spec = LanguageSpec::Forbidden(rn_forbidden_spec(0));
        let pts = density_series(&spec, &spec, &[2, 4, 6], Budget::default()).unwrap();
        for p in pts {
            assert_eq!(p.exact(), BigRational::one());
        }
    }

    #[test]
    fn monotone_density() {
        // limit language inside the criterion language: density in (0, 1]
        let sub = LanguageSpec::Machine(build_f2_lower());
        let sup = LanguageSpec::Machine(
            build_goldstein(
                Letter::from_char('B').unwrap(),
                Letter::from_char('a').unwrap(),
            )
            .unwrap(),
        );
        let pts = density_series(&sub, &sup, &[6, 8], Budget::default()).unwrap();
        for p in pts {
            let v = p.exact();
            assert!(v > BigRational::zero() && v <= BigRational::one());
        }
    }

    #[test]
    fn density_of_limit_in_decided_pp() {
        let sub = LanguageSpec::Machine(build_f2_lower());
        let sup = LanguageSpec::DecidedPp;
        let pts = density_series(&sub, &sup, &[8], Budget::default()).unwrap();
        let v = pts[0].exact();
        assert!(v > BigRational::zero() && v < BigRational::one());
    }

    #[test]
    fn commutator_kernel_density_is_small() {
        let sub = LanguageSpec::CommutatorKernel(2);
        let sup = LanguageSpec::Forbidden(ForbiddenSpec { rank: 2, rules: vec![] });
        let pts = density_series(&sub, &sup, &[8], Budget::default()).unwrap();
        let v = pts[0].exact();
        let bound = BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(5));
        assert!(v < bound, "density {v} should be below 0.2");
    }

    #[test]
    fn commutator_counts() {
        let s = commutator_growth(2, &[1, 4], Budget::default()).unwrap();
        assert_eq!(s.counts[&1], BigUint::zero());
        // abAB-type words exist at length 4
        assert!(s.counts[&4] > BigUint::zero());
        let csv = s.to_csv();
        assert!(csv.starts_with("length,count\n"));
        assert!(csv.contains("\n1,0\n"));
    }

    #[test]
    fn sampler_uniform_support() {
        // all closed paths of length 3 of the criterion machine are reachable
        let m = build_goldstein(
            Letter::from_char('B').unwrap(),
            Letter::from_char('a').unwrap(),
        )
        .unwrap();
        let sampler = ClosedPathSampler::new(&m, 3);
        assert_eq!(sampler.total_paths(), &m.count_closed_paths(3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            seen.insert(sampler.draw(&mut rng).to_string());
        }
        let lang = m.language(3).unwrap();
        assert_eq!(seen.len(), lang.len());
    }

    #[test]
    fn sample_report_deterministic() {
        let a = sample_pp2(12, 40, 123).unwrap();
        let b = sample_pp2(12, 40, 123).unwrap();
        assert_eq!(a.accepted, b.accepted);
        assert_eq!(a.words, b.words);
        assert!(a.accepted > 0);
        if let Some(f) = a.fraction {
            assert!((0.0..=1.0).contains(&f));
        }
    }
}

//! Exhaustive and randomized sweeps over the matroid catalogs.
//!
//! Each sweep returns a [`CriterionResult`] with a pass flag, counts and the
//! first counterexample found. The acceptance test target and the `sweep`
//! command of the CLI both run these.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::axioms::check_circuit_axioms;
use crate::enumeration::{cached_catalog, enumerate_matroids, witness_search, EnumerationError, Method};
use crate::matroid::Matroid;
use crate::minors::{contract, delete};
use crate::quotient::{
    base_family_witness, bigcyclo_check, certify_quotient, cyclic_elimination, cyclic_extension, factor_homotopy,
    lemma_span_witness, lift_witness, rank_order_check, remark_comparison, transitivity_check, QuotientError,
};
use crate::sets::{subsets_of, GroundSet, SetFamily, SubsetMask};
use crate::text::{parse_matroid_text, serialize_matroid_text};

/// Seed of the randomized lemma instances.
pub const RANDOM_SEED: u64 = 0x5eed_c0de;
/// Number of randomized lemma instances on 5 and 6 elements.
pub const RANDOM_INSTANCES: usize = 10_000;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// One-line summary of what was checked.
    pub summary: String,
    /// Extra report lines (tallies, first counterexample).
    pub details: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    pub fn status_line(&self) -> String {
        format!(
            "[{}] criterion {}: {} -- {} ({:.2?}, limit {:?})",
            if self.ok() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary,
            self.elapsed,
            self.limit
        )
    }
}

fn timed<F: FnOnce() -> (bool, String, Vec<String>)>(
    id: u8,
    name: &'static str,
    limit: Duration,
    f: F,
) -> CriterionResult {
    let start = Instant::now();
    let (passed, summary, details) = f();
    CriterionResult { id, name, passed, summary, details, elapsed: start.elapsed(), limit }
}

fn catalog(n: usize) -> &'static [Matroid] {
    &cached_catalog(n).expect("n within the basis-filter cap").entries
}

fn render(m: &Matroid) -> String {
    serialize_matroid_text(m).replace('\n', " / ")
}

/// Criterion 1: both generators agree, every entry satisfies the strong
/// circuit axioms and `M** = M`.
pub fn catalog_cross_check(max_n: usize) -> CriterionResult {
    timed(1, "catalog cross-oracle", Duration::from_secs(30), || {
        let mut details = Vec::new();
        let mut passed = true;
        let mut total = 0;
        for n in 1..=max_n.min(4) {
            let by_basis = enumerate_matroids(n, Method::BasisFilter).expect("n <= 4");
            let by_circuit = enumerate_matroids(n, Method::CircuitFilter).expect("n <= 4");
            if by_basis.lines() != by_circuit.lines() {
                passed = false;
                details.push(format!(
                    "n={n}: basis filter {} entries, circuit filter {}",
                    by_basis.len(),
                    by_circuit.len()
                ));
            }
            for m in &by_basis.entries {
                total += 1;
                let report = check_circuit_axioms(m.ground(), m.circuits(), true);
                if !report.passed() {
                    passed = false;
                    details.push(format!("{}: {}", render(m), report.describe(m.ground())));
                }
                if m.dual().dual() != *m {
                    passed = false;
                    details.push(format!("{}: dual is not an involution", render(m)));
                }
            }
            details.push(format!("n={n}: {} matroids", by_basis.len()));
        }
        (passed, format!("{total} catalog entries, generators agree: {passed}"), details)
    })
}

/// Criterion 2: every circuit of `N \ X` is a union of circuits of `N / X`.
pub fn lift_property_sweep(max_n: usize) -> CriterionResult {
    timed(2, "circuits of N\\X are unions of circuits of N/X", Duration::from_secs(300), || {
        let mut cases = 0usize;
        let mut failures = Vec::new();
        for n in 1..=max_n.min(5) {
            let results: Vec<(usize, Vec<String>)> = catalog(n)
                .par_iter()
                .map(|big| {
                    let full = big.ground().full();
                    let mut local = Vec::new();
                    let mut count = 0;
                    for x in subsets_of(full).filter(|x| !x.is_empty() && *x != full) {
                        count += 1;
                        let m = contract(big, x).expect("proper subset");
                        let l = delete(big, x).expect("proper subset");
                        if !certify_quotient(&m, &l).expect("same ground").is_quotient() {
                            local.push(format!("N = {} X = {}", render(big), big.ground().format_mask(x)));
                        }
                    }
                    (count, local)
                })
                .collect();
            for (c, f) in results {
                cases += c;
                failures.extend(f);
            }
        }
        let passed = failures.is_empty();
        let details = failures.into_iter().take(5).collect();
        (passed, format!("{cases} (N, X) cases, 0 expected violations"), details)
    })
}

/// All same-ground ordered pairs that certify as quotients with `s >= 1`.
fn quotient_pairs(n: usize, min_step: usize) -> Vec<(&'static Matroid, &'static Matroid, usize)> {
    let entries = catalog(n);
    entries
        .iter()
        .cartesian_product(entries.iter())
        .filter_map(|(m, l)| {
            let cert = certify_quotient(m, l).expect("same ground").into_certificate().ok()?;
            (cert.step_s >= min_step).then_some((m, l, cert.step_s))
        })
        .collect()
}

fn labels(s: usize) -> Vec<String> {
    (1..=s).map(|i| format!("x{i}")).collect()
}

/// Criterion 3: the explicit lift exists for every certified pair.
pub fn lift_criterion_sweep(max_n: usize) -> CriterionResult {
    timed(3, "lift construction for every certified pair", Duration::from_secs(300), || {
        let mut pairs = 0;
        let mut failures = Vec::new();
        let mut big_nullity = 0usize;
        let mut l_circuits = 0usize;
        for n in 1..=max_n.min(4) {
            let all = quotient_pairs(n, 1);
            pairs += all.len();
            let outcomes: Vec<(Option<String>, usize, usize)> = all
                .par_iter()
                .map(|&(m, l, s)| {
                    let fail = match lift_witness(m, l, &labels(s)) {
                        Ok(w) if w.verified => None,
                        Ok(_) => Some(format!("unverified witness for M = {} L = {}", render(m), render(l))),
                        Err(e) => Some(e.to_string()),
                    };
                    let over = l.circuits().iter().filter(|&c| m.nullity(c) > s + 1).count();
                    (fail, over, l.circuits().len())
                })
                .collect();
            for (f, over, total) in outcomes {
                failures.extend(f);
                big_nullity += over;
                l_circuits += total;
            }
        }
        let mut details = vec![format!("observed: {big_nullity} of {l_circuits} circuits C of L have c_M(C) > s + 1")];
        details.extend(failures.iter().take(3).cloned());
        (
            failures.is_empty(),
            format!("{pairs} certified pairs with s >= 1, {} construction failures", failures.len()),
            details,
        )
    })
}

/// Criterion 4: at `s = 1`, certification agrees with a construction-free
/// scan of the catalog on `n + 1` elements.
pub fn oracle_equivalence_sweep(max_n: usize) -> CriterionResult {
    timed(4, "certification at s = 1 <=> single-element witness search", Duration::from_secs(120), || {
        let mut pairs = 0;
        let mut found = 0;
        let mut mismatches = Vec::new();
        for n in 1..=max_n.min(3) {
            let entries = catalog(n);
            let rows: Vec<Option<String>> = entries
                .iter()
                .cartesian_product(entries.iter())
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&(m, l)| {
                    let certified =
                        certify_quotient(m, l).expect("same ground").certificate().is_some_and(|c| c.step_s == 1);
                    // Without the rank precondition a coloop extension witnesses every (M, M).
                    let scanned = match witness_search(m, l, "x") {
                        Ok(found) => found,
                        Err(EnumerationError::RankPrecondition { .. }) => None,
                        Err(e) => return Some(e.to_string()),
                    };
                    if certified != scanned.is_some() {
                        return Some(format!(
                            "M = {} L = {}: certified {certified}, scan found {}",
                            render(m),
                            render(l),
                            scanned.is_some()
                        ));
                    }
                    if certified {
                        let w = lift_witness(m, l, &["x"]).ok()?;
                        let x = SubsetMask::singleton(n);
                        let n_entries = catalog(n + 1);
                        let relabelled =
                            Matroid::from_circuits(GroundSet::letters(n + 1).unwrap(), w.n.circuits().clone())
                                .expect("lift is a matroid");
                        let listed = n_entries.contains(&relabelled);
                        let verifies = crate::quotient::verify_pair(&w.n, x, m, l).map(|c| c.holds()).unwrap_or(false);
                        if !listed || !verifies {
                            return Some(format!("lift for M = {} is not a verifying catalog entry", render(m)));
                        }
                    }
                    None
                })
                .collect();
            for (k, row) in rows.into_iter().enumerate() {
                pairs += 1;
                let (i, j) = (k / entries.len(), k % entries.len());
                if certify_quotient(&entries[i], &entries[j]).unwrap().certificate().is_some_and(|c| c.step_s == 1) {
                    found += 1;
                }
                mismatches.extend(row);
            }
        }
        let details = mismatches.iter().take(5).cloned().collect();
        (
            mismatches.is_empty(),
            format!("{pairs} pairs, {found} elementary quotients, {} mismatches", mismatches.len()),
            details,
        )
    })
}

/// Tally of lemma checks on one or more matroids.
#[derive(Debug, Clone, Default)]
pub struct LemmaTally {
    pub span: usize,
    pub extension: usize,
    pub elimination: usize,
    pub base_family: usize,
    pub bigcyclo: usize,
    pub rank_order: usize,
    pub transitivity: usize,
    pub counterexamples: Vec<String>,
    /// Argument tuples meeting the lemma statements without the hypothesis
    /// `A2 ⊄ A1` whose conclusion fails (checked by exhaustive search).
    pub literal_failures: usize,
    /// Literal failures with `A2 ⊄ A1`; must stay zero.
    pub literal_failures_outside_gap: usize,
    pub literal_example: Option<String>,
}

impl LemmaTally {
    pub fn instances(&self) -> usize {
        self.span
            + self.extension
            + self.elimination
            + self.base_family
            + self.bigcyclo
            + self.rank_order
            + self.transitivity
    }

    fn merge(&mut self, other: LemmaTally) {
        self.span += other.span;
        self.extension += other.extension;
        self.elimination += other.elimination;
        self.base_family += other.base_family;
        self.bigcyclo += other.bigcyclo;
        self.rank_order += other.rank_order;
        self.transitivity += other.transitivity;
        self.counterexamples.extend(other.counterexamples);
        self.literal_failures += other.literal_failures;
        self.literal_failures_outside_gap += other.literal_failures_outside_gap;
        if self.literal_example.is_none() {
            self.literal_example = other.literal_example;
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "span {} / extension {} / elimination {} / A-B-D {} / bigcyclo {} / rank order {} / transitivity {}; {} counterexamples",
            self.span,
            self.extension,
            self.elimination,
            self.base_family,
            self.bigcyclo,
            self.rank_order,
            self.transitivity,
            self.counterexamples.len()
        )
    }

    fn record<T>(&mut self, what: &str, result: Result<T, QuotientError>) {
        if let Err(e) = result {
            self.counterexamples.push(format!("{what}: {e}"));
        }
    }

    fn record_report(&mut self, what: &str, m: &Matroid, result: Result<crate::axioms::AxiomReport, QuotientError>) {
        match result {
            Ok(r) if r.passed() => {}
            Ok(r) => self.counterexamples.push(format!("{what}: {}", r.describe(m.ground()))),
            Err(e) => self.counterexamples.push(format!("{what}: {e}")),
        }
    }
}

fn exists_cyclic(m: &Matroid, within: SubsetMask, nullity: usize) -> bool {
    subsets_of(within).any(|s| m.is_cyclic(s) && m.nullity(s) == nullity)
}

fn check_span(m: &Matroid, a: SubsetMask, t: &mut LemmaTally) {
    t.span += 1;
    let r = lemma_span_witness(m, a);
    t.record(&format!("span on {}", render(m)), r);
}

fn check_extension(m: &Matroid, a1: SubsetMask, a2: SubsetMask, t: &mut LemmaTally) {
    t.extension += 1;
    let r = cyclic_extension(m, a1, a2);
    t.record(&format!("extension on {}", render(m)), r);
}

fn check_elimination(m: &Matroid, a1: SubsetMask, a2: SubsetMask, a: usize, t: &mut LemmaTally) {
    t.elimination += 1;
    let r = cyclic_elimination(m, a1, a2, a);
    t.record(&format!("elimination on {}", render(m)), r);
}

fn check_base_family(m: &Matroid, a: SubsetMask, d_circuit: SubsetMask, d: usize, t: &mut LemmaTally) {
    t.base_family += 1;
    let r = base_family_witness(m, a, d_circuit, d);
    t.record(&format!("A-B-D on {}", render(m)), r);
}

fn literal_failure(m: &Matroid, a1: SubsetMask, a2: SubsetMask, what: &str, t: &mut LemmaTally) {
    t.literal_failures += 1;
    if !a2.is_subset_of(a1) {
        t.literal_failures_outside_gap += 1;
    }
    if t.literal_example.is_none() {
        t.literal_example = Some(format!(
            "{what} fails for M = {} A1 = {} A2 = {}",
            render(m),
            m.ground().format_mask(a1),
            m.ground().format_mask(a2)
        ));
    }
}

/// Every lemma on cyclic sets and fundamental families, over every valid
/// argument tuple of `m`. Also tallies failures of the literal statements.
pub fn lemma_sweep_matroid(m: &Matroid) -> LemmaTally {
    let mut t = LemmaTally::default();
    let full = m.ground().full();
    for a in subsets_of(full).filter(|&a| !m.is_independent(a)) {
        check_span(m, a, &mut t);
    }
    let cyclic: Vec<SubsetMask> = m.cyclic_sets(None).expect("small ground").iter().filter(|a| !a.is_empty()).collect();
    for &a1 in &cyclic {
        let c = m.nullity(a1);
        for &a2 in cyclic.iter().filter(|&&a2| a2 != a1) {
            let union = a1 | a2;
            if !a2.is_subset_of(a1) {
                check_extension(m, a1, a2, &mut t);
            }
            if !a1.is_subset_of(a2) && !exists_cyclic(m, union, c + 1) {
                literal_failure(m, a1, a2, "cyclic extension (A1 ⊄ A2)", &mut t);
            }
            for a in (a1 & a2).iter() {
                if !a2.is_subset_of(a1) {
                    check_elimination(m, a1, a2, a, &mut t);
                }
                if !exists_cyclic(m, union.without(a), c) {
                    literal_failure(m, a1, a2, "cyclic elimination", &mut t);
                }
            }
        }
        for d_circuit in m.circuits().iter().filter(|c| c.is_subset_of(a1)) {
            for d in d_circuit.iter() {
                check_base_family(m, a1, d_circuit, d, &mut t);
            }
        }
    }
    t
}

fn lemma_sweep_pair(m: &Matroid, l: &Matroid, t: &mut LemmaTally) {
    t.bigcyclo += 1;
    t.record_report("bigcyclo", m, bigcyclo_check(m, l));
    t.rank_order += 1;
    t.record_report("rank order", m, rank_order_check(m, l));
}

/// Random instance of one single-matroid lemma with valid arguments.
fn random_single_lemma(m: &Matroid, rng: &mut ChaCha8Rng, t: &mut LemmaTally) -> bool {
    let full = m.ground().full();
    let cyclic: Vec<SubsetMask> = m.cyclic_sets(None).expect("small ground").iter().collect();
    match rng.gen_range(0..4) {
        0 => {
            let dependent: Vec<SubsetMask> = subsets_of(full).filter(|&a| !m.is_independent(a)).collect();
            let Some(&a) = dependent.choose(rng) else { return false };
            check_span(m, a, t);
        }
        1 => {
            let pairs: Vec<(SubsetMask, SubsetMask)> = cyclic
                .iter()
                .cartesian_product(cyclic.iter())
                .filter(|(a1, a2)| a1 != a2 && !a2.is_subset_of(**a1))
                .map(|(a, b)| (*a, *b))
                .collect();
            let Some(&(a1, a2)) = pairs.choose(rng) else { return false };
            check_extension(m, a1, a2, t);
        }
        2 => {
            let triples: Vec<(SubsetMask, SubsetMask, usize)> = cyclic
                .iter()
                .cartesian_product(cyclic.iter())
                .filter(|(a1, a2)| a1 != a2 && !a2.is_subset_of(**a1))
                .flat_map(|(a1, a2)| (*a1 & *a2).iter().map(move |a| (*a1, *a2, a)))
                .collect();
            let Some(&(a1, a2, a)) = triples.choose(rng) else { return false };
            check_elimination(m, a1, a2, a, t);
        }
        _ => {
            let args: Vec<(SubsetMask, SubsetMask, usize)> = cyclic
                .iter()
                .flat_map(|&a| {
                    m.circuits()
                        .iter()
                        .filter(move |c| c.is_subset_of(a))
                        .flat_map(move |c| c.iter().map(move |d| (a, c, d)))
                })
                .collect();
            let Some(&(a, c, d)) = args.choose(rng) else { return false };
            check_base_family(m, a, c, d, t);
        }
    }
    true
}

/// Truncation: the bases are the independent sets of size `rank - 1`.
pub fn truncation(l: &Matroid) -> Option<Matroid> {
    let r = l.rank().checked_sub(1)?;
    let bases: SetFamily = subsets_of(l.ground().full()).filter(|s| s.len() == r && l.is_independent(*s)).collect();
    Some(Matroid::from_bases(l.ground().clone(), bases).expect("truncation of a matroid is a matroid"))
}

/// `L / e` with `e` put back as a loop; a quotient of `L` of rank one less
/// unless `e` is already a loop.
pub fn loopify(l: &Matroid, e: usize) -> Matroid {
    let single = SubsetMask::singleton(e);
    if l.is_circuit(single) || l.len() == 1 {
        let circuits: SetFamily = [single].into_iter().chain(l.circuits().iter().filter(|c| !c.contains(e))).collect();
        return Matroid::from_circuits(l.ground().clone(), circuits).expect("loop added to a matroid");
    }
    let rest = l.ground().full().without(e);
    let contracted = contract(l, single).expect("proper subset");
    let circuits: SetFamily =
        std::iter::once(single).chain(contracted.circuits().iter().map(|c| c.expand(rest))).collect();
    Matroid::from_circuits(l.ground().clone(), circuits).expect("loopified contraction is a matroid")
}

fn random_quotient(l: &Matroid, rng: &mut ChaCha8Rng) -> Matroid {
    match rng.gen_range(0..3) {
        0 => truncation(l).unwrap_or_else(|| l.clone()),
        1 => loopify(l, rng.gen_range(0..l.len())),
        _ => {
            // Any same-ground catalog entry below L, or L itself.
            let entries = catalog(l.len());
            let below: Vec<&Matroid> = (0..8)
                .filter_map(|_| entries.choose(rng))
                .filter(|m| certify_quotient(m, l).expect("same ground").is_quotient())
                .collect();
            below.first().map(|m| (*m).clone()).unwrap_or_else(|| l.clone())
        }
    }
}

/// Criterion 5: every lemma, exhaustively on `n <= max_n.min(4)` and on
/// `random` seeded instances over 5 and 6 elements.
pub fn lemma_sweeps(max_n: usize, random: usize) -> CriterionResult {
    timed(5, "lemma sweeps", Duration::from_secs(600), || {
        let mut tally = LemmaTally::default();
        for n in 1..=max_n.min(4) {
            let per: Vec<LemmaTally> = catalog(n).par_iter().map(lemma_sweep_matroid).collect();
            for t in per {
                tally.merge(t);
            }
            let pairs: Vec<(&Matroid, &Matroid, usize)> = quotient_pairs(n, 0);
            let mut t = LemmaTally::default();
            for &(m, l, _) in &pairs {
                lemma_sweep_pair(m, l, &mut t);
            }
            for &(m, l, _) in &pairs {
                for &(_, k, _) in pairs.iter().filter(|(l2, _, _)| *l2 == l) {
                    t.transitivity += 1;
                    t.record_report("transitivity", m, transitivity_check(m, l, k));
                }
            }
            tally.merge(t);
        }
        let exhaustive = tally.instances();

        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        let mut random_done = 0;
        let mut random_tally = LemmaTally::default();
        while random_done < random {
            let n = rng.gen_range(5..=6);
            let k = catalog(n).choose(&mut rng).expect("non-empty catalog");
            if rng.gen_bool(0.7) {
                if random_single_lemma(k, &mut rng, &mut random_tally) {
                    random_done += 1;
                }
            } else {
                let l = random_quotient(k, &mut rng);
                let m = random_quotient(&l, &mut rng);
                lemma_sweep_pair(&l, k, &mut random_tally);
                lemma_sweep_pair(&m, &l, &mut random_tally);
                random_tally.transitivity += 1;
                random_tally.record_report("transitivity", &m, transitivity_check(&m, &l, k));
                random_done += 1;
            }
        }
        let random_checks = random_tally.instances();
        tally.merge(random_tally);

        let mut details = vec![
            format!("exhaustive n <= {}: {exhaustive} checks", max_n.min(4)),
            format!("randomized n = 5-6: {random_done} instances ({random_checks} checks, seed {RANDOM_SEED:#x})"),
            tally.summary(),
            format!(
                "literal statements without A2 ⊄ A1: {} failures, {} of them with A2 ⊄ A1",
                tally.literal_failures, tally.literal_failures_outside_gap
            ),
        ];
        details.extend(tally.literal_example.clone());
        details.extend(tally.counterexamples.iter().take(3).cloned());
        let passed =
            tally.counterexamples.is_empty() && tally.literal_failures_outside_gap == 0 && random_done >= random;
        (passed, tally.summary(), details)
    })
}

/// Criterion 6: every ordering of `X` yields a valid rank-one chain.
pub fn homotopy_sweep(max_n: usize) -> CriterionResult {
    timed(6, "homotopy factorization for every ordering of X", Duration::from_secs(300), || {
        let mut runs = 0;
        let mut pairs_total = 0;
        let mut order_dependent = 0;
        let mut failures = Vec::new();
        for n in 1..=max_n.min(4) {
            let pairs = quotient_pairs(n, 2);
            pairs_total += pairs.len();
            let out: Vec<(usize, bool, Vec<String>)> = pairs
                .par_iter()
                .map(|&(m, l, s)| {
                    let base = labels(s);
                    let mut seqs = Vec::new();
                    let mut errs = Vec::new();
                    for perm in base.iter().permutations(s) {
                        match factor_homotopy(m, l, &perm) {
                            Ok(seq) => {
                                let valid = seq.len() == s + 1
                                    && seq.steps.iter().enumerate().all(|(i, st)| st.rank() == m.rank() + i);
                                if !valid {
                                    errs.push(format!("invalid sequence for M = {}", render(m)));
                                }
                                seqs.push(seq.steps);
                            }
                            Err(e) => errs.push(e.to_string()),
                        }
                    }
                    let differs = seqs.windows(2).any(|w| w[0] != w[1]);
                    (seqs.len() + errs.len(), differs, errs)
                })
                .collect();
            for (r, differs, errs) in out {
                runs += r;
                order_dependent += usize::from(differs);
                failures.extend(errs);
            }
        }
        let details = std::iter::once(format!(
            "observed: {order_dependent} of {pairs_total} pairs have intermediate matroids depending on the order of X"
        ))
        .chain(failures.iter().take(3).cloned())
        .collect();
        (
            failures.is_empty(),
            format!("{pairs_total} pairs with s >= 2, {runs} orderings, {} failures", failures.len()),
            details,
        )
    })
}

/// Criterion 7: the two hand-derived lifts and the factorization of
/// `(U(1,3), F3)`.
pub fn worked_fixtures() -> CriterionResult {
    timed(7, "worked fixtures", Duration::from_secs(1), || {
        let g = GroundSet::letters(3).expect("3 labels");
        let u13 = Matroid::uniform(g.clone(), 1);
        let u23 = Matroid::uniform(g.clone(), 2);
        let f3 = Matroid::free(g);
        let mut details = Vec::new();

        let mask = |m: &Matroid, s: &[&str]| m.ground().mask_of(s.iter().copied()).expect("known labels");
        let first = lift_witness(&u13, &u23, &["x"]).map(|w| {
            let want: SetFamily = [&["a", "b", "c"][..], &["a", "b", "x"], &["a", "c", "x"], &["b", "c", "x"]]
                .iter()
                .map(|s| mask(&w.n, s))
                .collect();
            *w.n.circuits() == want
        });
        let second = lift_witness(&u13, &f3, &["x1", "x2"]).map(|w| {
            let want: SetFamily = [
                &["a", "b", "x1", "x2"][..],
                &["a", "c", "x1", "x2"],
                &["b", "c", "x1", "x2"],
                &["a", "b", "c", "x1"],
                &["a", "b", "c", "x2"],
            ]
            .iter()
            .map(|s| mask(&w.n, s))
            .collect();
            *w.n.circuits() == want
        });
        let third = factor_homotopy(&u13, &f3, &["x1", "x2"])
            .map(|seq| seq.steps == vec![u13.clone(), u23.clone(), f3.clone()]);
        let checks = [("lift(U13, U23)", first), ("lift(U13, F3)", second), ("factor(U13, F3)", third)];
        let mut passed = true;
        for (name, r) in checks {
            let ok = matches!(r, Ok(true));
            passed &= ok;
            details.push(format!("{name}: {}", if ok { "exact match" } else { "MISMATCH" }));
        }
        (passed, "3 exact fixtures".into(), details)
    })
}

/// Criterion 8: the shifted reading of the intermediate-matroid formula on
/// the worked fixtures (asserted) and a tally over all pairs (reported).
pub fn remark_sweep(max_n: usize) -> CriterionResult {
    timed(8, "intermediate-matroid formula comparison", Duration::from_secs(300), || {
        let g = GroundSet::letters(3).expect("3 labels");
        let u13 = Matroid::uniform(g.clone(), 1);
        let fixtures = [(u13.clone(), Matroid::free(g.clone()), labels(2)), (u13, Matroid::uniform(g, 2), labels(1))];
        let fixtures_ok = fixtures
            .iter()
            .all(|(m, l, xs)| remark_comparison(m, l, xs).is_ok_and(|cmp| cmp.iter().all(|c| c.shifted_agrees)));

        let (mut steps, mut shifted, mut literal, mut pairs, mut errors) = (0, 0, 0, 0, 0);
        for n in 1..=max_n.min(4) {
            let rows: Vec<_> =
                quotient_pairs(n, 1).par_iter().map(|&(m, l, s)| remark_comparison(m, l, &labels(s))).collect();
            for row in rows {
                pairs += 1;
                match row {
                    Ok(cmp) => {
                        steps += cmp.len();
                        shifted += cmp.iter().filter(|c| c.shifted_agrees).count();
                        literal += cmp.iter().filter(|c| c.literal_agrees).count();
                    }
                    Err(_) => errors += 1,
                }
            }
        }
        let details = vec![
            format!("worked fixtures, shifted reading j = i + 1: {}", if fixtures_ok { "agree" } else { "DISAGREE" }),
            format!("all pairs n <= {}: {pairs} pairs, {steps} steps", max_n.min(4)),
            format!("shifted reading agrees on {shifted}/{steps} steps, disagrees on {}", steps - shifted),
            format!("literal reading j = i agrees on {literal}/{steps} steps, disagrees on {}", steps - literal),
            format!("pairs where the comparison could not run: {errors}"),
        ];
        (
            fixtures_ok,
            format!("fixtures agree: {fixtures_ok}; tally {shifted}/{steps} shifted, {literal}/{steps} literal"),
            details,
        )
    })
}

/// Round trip of every catalog entry on `n <= max_n.min(5)` through the text
/// format (part of criterion 9).
pub fn text_round_trip(max_n: usize) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n.min(5) {
        for m in catalog(n) {
            count += 1;
            let text = serialize_matroid_text(m);
            match parse_matroid_text(&text) {
                Ok(back) if back == *m && serialize_matroid_text(&back) == text => {}
                Ok(_) => failures.push(format!("round trip changed {}", render(m))),
                Err(e) => failures.push(format!("{}: {e}", render(m))),
            }
        }
    }
    (count, failures)
}

/// Criterion 9: text round trip on the catalogs and a fixed script of CLI
/// invocations with their expected exit codes.
pub fn cli_contract(max_n: usize) -> CriterionResult {
    timed(9, "CLI contract", Duration::from_secs(60), || {
        let (count, mut failures) = text_round_trip(max_n);
        let script = match cli_script() {
            Ok(s) => s,
            Err(e) => return (false, format!("could not set up the script: {e}"), vec![]),
        };
        let total = script.len();
        for (args, expected) in script {
            let out = crate::cli::run_command(std::iter::once("matroid-lift".to_string()).chain(args.iter().cloned()));
            if out.code != expected {
                failures.push(format!(
                    "`{}` exited {} (expected {expected}): {}",
                    args.join(" "),
                    out.code,
                    out.stderr.trim()
                ));
            }
        }
        let passed = failures.is_empty();
        (passed, format!("{count} round trips, {total} scripted invocations, {} failures", failures.len()), failures)
    })
}

/// The fixed invocation script with expected exit codes; input files live in
/// a fresh directory under the system temp dir.
pub fn cli_script() -> std::io::Result<Vec<(Vec<String>, i32)>> {
    let stamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap_or_default().as_nanos();
    let dir = std::env::temp_dir().join(format!("matroid-lift-script-{}-{stamp}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let g = GroundSet::letters(3).expect("3 labels");
    let u13 = Matroid::uniform(g.clone(), 1);
    let u23 = Matroid::uniform(g.clone(), 2);
    let f3 = Matroid::free(g);
    let path = |name: &str| dir.join(name).display().to_string();
    std::fs::write(path("U13.m"), crate::text::serialize_named(&u13, "U13"))?;
    std::fs::write(path("U23.m"), crate::text::serialize_named(&u23, "U23"))?;
    std::fs::write(path("F3.m"), crate::text::serialize_named(&f3, "F3"))?;
    let n = lift_witness(&u13, &u23, &["x"]).expect("fixture lift").n;
    std::fs::write(path("N.m"), crate::text::serialize_named(&n, "N"))?;
    std::fs::write(path("bad.m"), "matroid bad\nground a b c\ncircuit a b\ncircuit a b c\nend\n")?;
    std::fs::write(path("syntax.m"), "matroid\nground a a\nend\n")?;
    let (u13, u23, f3, n, bad, syntax) =
        (path("U13.m"), path("U23.m"), path("F3.m"), path("N.m"), path("bad.m"), path("syntax.m"));
    let out = path("out");
    std::fs::create_dir_all(&out)?;
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check-axioms", &u13, "--strong"], 0),
        (vec!["check-axioms", &bad], 1),
        (vec!["check-axioms", &syntax], 2),
        (vec!["rank", &u23, "--set", "a,b"], 0),
        (vec!["rank", &u23, "--set", "a,z"], 2),
        (vec!["dual", &u13], 0),
        (vec!["minor", &u23, "--contract", "a"], 0),
        (vec!["cyclic-sets", &u13, "--nullity", "2"], 0),
        (vec!["quotient", &u13, &u23, "--certificate"], 0),
        (vec!["quotient", &u23, &u13], 1),
        (vec!["lift", &u13, &f3, "--labels", "x1,x2", "--out", &out], 0),
        (vec!["lift", &u23, &u13, "--labels", "x"], 1),
        (vec!["lift", "bad-args"], 2),
        (vec!["factor", &u13, &f3, "--labels", "x1,x2", "--out", &out], 0),
        (vec!["verify-pair", &n, "--x", "x", &u13, &u23], 0),
        (vec!["verify-pair", &n, "--x", "x", &u23, &u13], 1),
        (vec!["remark", &u13, &f3, "--j", "2", "--compare"], 0),
        (vec!["remark", &u13, &f3, "--j", "9"], 2),
        (vec!["enumerate", "--n", "9", "--method", "basis", "--out", &out], 2),
        (vec!["no-such-command"], 2),
    ];
    Ok(cases.into_iter().map(|(a, c)| (a.into_iter().map(str::to_string).collect(), c)).collect())
}

//! Exhaustive generation of labelled matroids on small ground sets.
//!
//! Two independent generators exist: the basis filter scans every family of
//! equal-size subsets through the exchange axiom, the circuit filter scans
//! every family of non-empty subsets through the circuit axioms. Catalog
//! entries use the ground set `a, b, c, ...` and are sorted by their catalog
//! line, so output is deterministic whatever the generation order.
//!
//! Catalog line: `n=<int>;rank=<int>;circuits=<c1>|<c2>|...` where a circuit
//! is its element indices as ascending hex digits and an empty list is `-`.
//! Pair line: `<idxM>;<idxL>;quotient=<0|1>;s=<int>;witness=<ok|na|FAIL>`.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::axioms::{first_circuit_violation, first_exchange_violation};
use crate::matroid::{Matroid, MatroidError};
use crate::quotient::{certify_quotient, lift_witness, verify_pair, QuotientError};
use crate::sets::{subsets_of, GroundSet, SetFamily, SubsetMask};

/// Largest ground set for the basis filter.
pub const BASIS_FILTER_CAP: usize = 6;
/// Largest ground set for the circuit filter.
pub const CIRCUIT_FILTER_CAP: usize = 4;
/// Largest ground set for the pair catalog.
pub const PAIR_CATALOG_CAP: usize = 5;
/// Catalog lines hold one hex digit per element.
pub const CATALOG_LINE_CAP: usize = 16;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("ground size {n} is outside the supported range 1..={cap}")]
    GroundTooLarge { n: usize, cap: usize },
    #[error("matroids are not on the same ground set")]
    GroundMismatch,
    #[error("rank(L) = {rank_l} is not rank(M) + 1 = {}", rank_m + 1)]
    RankPrecondition { rank_m: usize, rank_l: usize },
    #[error("label `{0}` already lies in the ground set")]
    LabelClash(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BasisFilter,
    CircuitFilter,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BasisFilter => "basis",
            Method::CircuitFilter => "circuit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidCatalog {
    pub n: usize,
    pub entries: Vec<Matroid>,
    pub provenance: Method,
}

impl MatroidCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        self.entries.iter().map(catalog_line).collect()
    }

    /// The catalog file: one line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.lines() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn position(&self, m: &Matroid) -> Option<usize> {
        let key = catalog_line(m);
        self.entries.binary_search_by(|e| catalog_line(e).cmp(&key)).ok()
    }
}

/// Catalog record for a matroid on at most 16 elements.
pub fn catalog_line(m: &Matroid) -> String {
    let circuits = if m.circuits().is_empty() {
        "-".to_string()
    } else {
        let parts: Vec<String> = m.circuits().iter().map(|c| c.iter().map(|i| format!("{i:x}")).collect()).collect();
        parts.join("|")
    };
    format!("n={};rank={};circuits={circuits}", m.len(), m.rank())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogLineError {
    #[error("malformed catalog line: {0}")]
    Syntax(String),
    #[error("recorded rank {recorded} differs from the rank {actual} of the circuits")]
    RankMismatch { recorded: usize, actual: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn field<'a>(part: Option<&'a str>, key: &str) -> Result<&'a str, CatalogLineError> {
    part.and_then(|p| p.strip_prefix(key))
        .and_then(|p| p.strip_prefix('='))
        .ok_or_else(|| CatalogLineError::Syntax(format!("expected `{key}=`")))
}

fn number(s: &str) -> Result<usize, CatalogLineError> {
    if s.is_empty() || s.len() > 6 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CatalogLineError::Syntax(format!("bad number `{s}`")));
    }
    s.parse().map_err(|_| CatalogLineError::Syntax(format!("bad number `{s}`")))
}

/// Parses and validates one catalog line.
pub fn parse_catalog_line(line: &str) -> Result<Matroid, CatalogLineError> {
    let mut parts = line.trim_end_matches(['\r', '\n']).split(';');
    let n = number(field(parts.next(), "n")?)?;
    let rank = number(field(parts.next(), "rank")?)?;
    let circuits_text = field(parts.next(), "circuits")?;
    if parts.next().is_some() {
        return Err(CatalogLineError::Syntax("trailing fields".into()));
    }
    if n == 0 || n > CATALOG_LINE_CAP {
        return Err(CatalogLineError::Syntax(format!("n = {n} outside 1..={CATALOG_LINE_CAP}")));
    }
    let mut family = SetFamily::new();
    if circuits_text != "-" {
        for c in circuits_text.split('|') {
            let mut mask = SubsetMask::EMPTY;
            let mut last: Option<usize> = None;
            if c.is_empty() {
                return Err(CatalogLineError::Syntax("empty circuit".into()));
            }
            for ch in c.chars() {
                let i = ch
                    .to_digit(16)
                    .filter(|_| !ch.is_ascii_uppercase())
                    .ok_or_else(|| CatalogLineError::Syntax(format!("bad element `{ch}`")))?
                    as usize;
                if i >= n || last.is_some_and(|l| l >= i) {
                    return Err(CatalogLineError::Syntax(format!("element `{ch}` out of range or order")));
                }
                last = Some(i);
                mask = mask.with(i);
            }
            if !family.insert(mask) {
                return Err(CatalogLineError::Syntax(format!("duplicate circuit `{c}`")));
            }
        }
    }
    let ground = GroundSet::letters(n).expect("n is within the ground cap");
    let m = Matroid::from_circuits(ground, family)?;
    if m.rank() != rank {
        return Err(CatalogLineError::RankMismatch { recorded: rank, actual: m.rank() });
    }
    Ok(m)
}

/// Parses a whole catalog file, skipping blank lines.
pub fn parse_catalog(text: &str) -> Result<Vec<Matroid>, (usize, CatalogLineError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_catalog_line(l).map_err(|e| (i + 1, e)))
        .collect()
}

fn sorted_catalog(n: usize, families: Vec<SetFamily>, provenance: Method) -> MatroidCatalog {
    let ground = GroundSet::letters(n).expect("n is within the ground cap");
    let mut keyed: Vec<(String, Matroid)> = families
        .into_iter()
        .map(|f| {
            let m = Matroid::from_circuits_unchecked(ground.clone(), f);
            (catalog_line(&m), m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    MatroidCatalog { n, entries: keyed.into_iter().map(|(_, m)| m).collect(), provenance }
}

fn basis_filter(n: usize) -> Vec<SetFamily> {
    let full = SubsetMask::full(n);
    let mut out = Vec::new();
    for r in 0..=n {
        let layer: Vec<SubsetMask> = subsets_of(full).filter(|s| s.len() == r).collect();
        let k = layer.len();
        let total: u64 = 1 << k;
        let chunk = (total / 1024).max(1);
        let found: Vec<SetFamily> = (0..total.div_ceil(chunk))
            .into_par_iter()
            .flat_map_iter(|block| {
                let mut is_basis = vec![false; 1 << n];
                let mut bases: Vec<SubsetMask> = Vec::with_capacity(k);
                let mut hits = Vec::new();
                for pick in (block * chunk).max(1)..((block + 1) * chunk).min(total) {
                    bases.clear();
                    bases.extend((0..k).filter(|i| pick >> i & 1 == 1).map(|i| layer[i]));
                    for b in &bases {
                        is_basis[b.bits() as usize] = true;
                    }
                    let ok = first_exchange_violation(&bases, &|m| is_basis[m.bits() as usize]).is_none();
                    for b in &bases {
                        is_basis[b.bits() as usize] = false;
                    }
                    if ok {
                        hits.push(bases.iter().copied().collect::<SetFamily>());
                    }
                }
                hits
            })
            .collect();
        out.extend(found);
    }
    let ground = GroundSet::letters(n).expect("n is within the ground cap");
    out.into_par_iter()
        .map(|bases| {
            Matroid::from_bases(ground.clone(), bases)
                .expect("exchange-filtered family is a basis family")
                .circuits()
                .clone()
        })
        .collect()
}

fn circuit_filter(n: usize) -> Vec<SetFamily> {
    let candidates: Vec<SubsetMask> = (1..1u32 << n).map(SubsetMask).collect();
    let k = candidates.len();
    (0..1u64 << k)
        .into_par_iter()
        .filter_map(|pick| {
            let family: SetFamily = (0..k).filter(|i| pick >> i & 1 == 1).map(|i| candidates[i]).collect();
            first_circuit_violation(n, &family, false).is_none().then_some(family)
        })
        .collect()
}

/// Every labelled matroid on `n` elements, exactly once.
pub fn enumerate_matroids(n: usize, method: Method) -> Result<MatroidCatalog, EnumerationError> {
    let cap = match method {
        Method::BasisFilter => BASIS_FILTER_CAP,
        Method::CircuitFilter => CIRCUIT_FILTER_CAP,
    };
    if n == 0 || n > cap {
        return Err(EnumerationError::GroundTooLarge { n, cap });
    }
    let families = match method {
        Method::BasisFilter => basis_filter(n),
        Method::CircuitFilter => circuit_filter(n),
    };
    Ok(sorted_catalog(n, families, method))
}

/// Basis-filter catalog for `n`, computed once per process.
pub fn cached_catalog(n: usize) -> Result<&'static MatroidCatalog, EnumerationError> {
    static CACHE: [OnceLock<MatroidCatalog>; BASIS_FILTER_CAP + 1] = [const { OnceLock::new() }; BASIS_FILTER_CAP + 1];
    if n == 0 || n > BASIS_FILTER_CAP {
        return Err(EnumerationError::GroundTooLarge { n, cap: BASIS_FILTER_CAP });
    }
    Ok(CACHE[n].get_or_init(|| enumerate_matroids(n, Method::BasisFilter).expect("n is within the cap")))
}

/// First catalog matroid `N` on `E + x` with `N / x = M` and `N \ x = L`, by
/// full scan of the catalog on `n + 1` elements. No rank condition is applied.
pub fn witness_scan(m: &Matroid, l: &Matroid, x_label: &str) -> Result<Option<Matroid>, EnumerationError> {
    if m.ground() != l.ground() {
        return Err(EnumerationError::GroundMismatch);
    }
    if m.ground().index_of(x_label).is_some() {
        return Err(EnumerationError::LabelClash(x_label.to_string()));
    }
    let ground = m.ground().extend(&[x_label]).map_err(|_| EnumerationError::LabelClash(x_label.to_string()))?;
    let catalog = cached_catalog(ground.len())?;
    let x = SubsetMask::singleton(m.len());
    for entry in &catalog.entries {
        let n = entry.relabel(ground.clone()).expect("same ground size");
        if verify_pair(&n, x, m, l)?.holds() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// [`witness_scan`] behind the rank precondition `rank(L) = rank(M) + 1`.
pub fn witness_search(m: &Matroid, l: &Matroid, x_label: &str) -> Result<Option<Matroid>, EnumerationError> {
    if m.ground() != l.ground() {
        return Err(EnumerationError::GroundMismatch);
    }
    if l.rank() != m.rank() + 1 {
        return Err(EnumerationError::RankPrecondition { rank_m: m.rank(), rank_l: l.rank() });
    }
    witness_scan(m, l, x_label)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    Ok,
    NotApplicable,
    Fail,
}

impl fmt::Display for WitnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStatus::Ok => "ok",
            WitnessStatus::NotApplicable => "na",
            WitnessStatus::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub m_index: usize,
    pub l_index: usize,
    pub quotient: bool,
    /// `rank(L) - rank(M)`, negative when `L` has the smaller rank.
    pub s: i64,
    pub witness: WitnessStatus,
}

impl PairRecord {
    pub fn line(&self) -> String {
        format!(
            "{};{};quotient={};s={};witness={}",
            self.m_index,
            self.l_index,
            u8::from(self.quotient),
            self.s,
            self.witness
        )
    }
}

pub fn parse_pair_line(line: &str) -> Result<PairRecord, CatalogLineError> {
    let mut parts = line.trim_end_matches(['\r', '\n']).split(';');
    let m_index = number(parts.next().unwrap_or_default())?;
    let l_index = number(parts.next().ok_or_else(|| CatalogLineError::Syntax("missing L index".into()))?)?;
    let quotient = match field(parts.next(), "quotient")? {
        "0" => false,
        "1" => true,
        other => return Err(CatalogLineError::Syntax(format!("bad quotient flag `{other}`"))),
    };
    let s_text = field(parts.next(), "s")?;
    let s = match s_text.strip_prefix('-') {
        Some(digits) => -(number(digits)? as i64),
        None => number(s_text)? as i64,
    };
    let witness = match field(parts.next(), "witness")? {
        "ok" => WitnessStatus::Ok,
        "na" => WitnessStatus::NotApplicable,
        "FAIL" => WitnessStatus::Fail,
        other => return Err(CatalogLineError::Syntax(format!("bad witness status `{other}`"))),
    };
    if parts.next().is_some() {
        return Err(CatalogLineError::Syntax("trailing fields".into()));
    }
    Ok(PairRecord { m_index, l_index, quotient, s, witness })
}

#[derive(Debug, Clone)]
pub struct PairCatalog {
    pub catalog: MatroidCatalog,
    pub records: Vec<PairRecord>,
}

impl PairCatalog {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }
}

/// Every ordered pair of the basis-filter catalog on `n` elements with its
/// quotient verdict, rank step and lift outcome.
pub fn pair_catalog(n: usize) -> Result<PairCatalog, EnumerationError> {
    if n == 0 || n > PAIR_CATALOG_CAP {
        return Err(EnumerationError::GroundTooLarge { n, cap: PAIR_CATALOG_CAP });
    }
    let catalog = cached_catalog(n)?.clone();
    let entries = &catalog.entries;
    let records: Vec<PairRecord> = (0..entries.len() * entries.len())
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / entries.len(), k % entries.len());
            let (m, l) = (&entries[i], &entries[j]);
            let quotient = certify_quotient(m, l).expect("same ground").is_quotient();
            let s = l.rank() as i64 - m.rank() as i64;
            let witness = if quotient && s >= 1 {
                let labels: Vec<String> = (1..=s).map(|t| format!("x{t}")).collect();
                match lift_witness(m, l, &labels) {
                    Ok(w) if w.verified => WitnessStatus::Ok,
                    _ => WitnessStatus::Fail,
                }
            } else {
                WitnessStatus::NotApplicable
            };
            PairRecord { m_index: i, l_index: j, quotient, s, witness }
        })
        .collect();
    Ok(PairCatalog { catalog, records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_matroids(1, Method::BasisFilter).unwrap().len(), 2);
        assert_eq!(enumerate_matroids(2, Method::BasisFilter).unwrap().len(), 5);
        assert_eq!(enumerate_matroids(2, Method::CircuitFilter).unwrap().len(), 5);
        let b3 = enumerate_matroids(3, Method::BasisFilter).unwrap();
        let c3 = enumerate_matroids(3, Method::CircuitFilter).unwrap();
        assert_eq!(b3.lines(), c3.lines());
        assert_eq!(b3.len(), 16);
    }

    #[test]
    fn caps() {
        assert!(matches!(
            enumerate_matroids(5, Method::CircuitFilter),
            Err(EnumerationError::GroundTooLarge { n: 5, cap: 4 })
        ));
        assert!(matches!(enumerate_matroids(0, Method::BasisFilter), Err(EnumerationError::GroundTooLarge { .. })));
        assert!(matches!(pair_catalog(6), Err(EnumerationError::GroundTooLarge { .. })));
    }

    #[test]
    fn catalog_line_round_trip() {
        let u23 = Matroid::uniform(GroundSet::letters(3).unwrap(), 2);
        assert_eq!(catalog_line(&u23), "n=3;rank=2;circuits=012");
        assert_eq!(parse_catalog_line("n=3;rank=2;circuits=012").unwrap(), u23);
        let f2 = Matroid::free(GroundSet::letters(2).unwrap());
        assert_eq!(catalog_line(&f2), "n=2;rank=2;circuits=-");
        assert_eq!(parse_catalog_line("n=2;rank=2;circuits=-").unwrap(), f2);
        for bad in [
            "",
            "n=3",
            "n=3;rank=2;circuits=",
            "n=3;rank=1;circuits=012",
            "n=3;rank=2;circuits=021",
            "n=3;rank=2;circuits=013",
            "n=3;rank=2;circuits=012|012",
            "n=3;rank=1;circuits=01|02",
            "n=0;rank=0;circuits=-",
            "n=17;rank=0;circuits=-",
            "n=3;rank=2;circuits=012;x",
        ] {
            assert!(parse_catalog_line(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn pair_line_round_trip() {
        let r = PairRecord { m_index: 3, l_index: 7, quotient: false, s: -1, witness: WitnessStatus::NotApplicable };
        assert_eq!(r.line(), "3;7;quotient=0;s=-1;witness=na");
        assert_eq!(parse_pair_line(&r.line()).unwrap(), r);
        assert!(parse_pair_line("3;7;quotient=2;s=1;witness=ok").is_err());
        assert!(parse_pair_line("3;7;quotient=1;s=1;witness=maybe").is_err());
        assert!(parse_pair_line("3").is_err());
    }

    #[test]
    fn witness_search_examples() {
        let g = GroundSet::letters(3).unwrap();
        let (u13, u23) = (Matroid::uniform(g.clone(), 1), Matroid::uniform(g.clone(), 2));
        let n = witness_search(&u13, &u23, "x").unwrap().unwrap();
        let expected: SetFamily = [0b0111, 0b1011, 0b1101, 0b1110].into_iter().map(SubsetMask).collect();
        assert_eq!(n.circuits(), &expected);
        assert!(witness_scan(&u23, &u13, "x").unwrap().is_none());
        assert!(matches!(witness_search(&u23, &u13, "x"), Err(EnumerationError::RankPrecondition { .. })));
        let f2 = Matroid::free(GroundSet::letters(2).unwrap());
        assert!(matches!(witness_search(&f2, &f2, "x"), Err(EnumerationError::RankPrecondition { .. })));
        assert!(matches!(witness_scan(&u13, &u23, "a"), Err(EnumerationError::LabelClash(_))));
    }

    #[test]
    fn pair_catalog_n3() {
        let pc = pair_catalog(3).unwrap();
        let g = GroundSet::letters(3).unwrap();
        let u13 = pc.catalog.position(&Matroid::uniform(g.clone(), 1)).unwrap();
        let u23 = pc.catalog.position(&Matroid::uniform(g, 2)).unwrap();
        let k = pc.catalog.len();
        let row = &pc.records[u13 * k + u23];
        assert!(row.quotient && row.s == 1 && row.witness == WitnessStatus::Ok);
        let row = &pc.records[u23 * k + u13];
        assert!(!row.quotient);
        for i in 0..k {
            let d = &pc.records[i * k + i];
            assert!(d.quotient && d.s == 0 && d.witness == WitnessStatus::NotApplicable);
        }
        assert!(pc.records.iter().all(|r| r.witness != WitnessStatus::Fail));
    }
}

//! Brute-force verification of the adjunction and induction laws on small
//! instances.
//!
//! Ground truth here is computed from the raw definitions by direct loops
//! over relations encoded as `u64` bitmasks (bit `s*n + t`). Nothing in
//! this module calls the operator or induction engines except where the
//! engine is the object under test.

use std::fmt::{self, Write};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frame::{Relation, TransitionFrame};
use crate::order::{Elem, Lattice};
use crate::proposition::PropositionPoset;
use crate::system::SystemDescription;

/// Hard ceiling on state counts for relation enumeration (`2^16` relations).
pub const MAX_ENUMERATION_STATES: usize = 4;

/// Which proposition poset the suites run against.
#[derive(Clone, Debug, PartialEq)]
pub enum PosetMode {
    /// All of `M^S`.
    FullPower,
    /// The characteristic vectors `{0,1}^S`.
    BooleanPower,
    /// A fixed poset; its state count must match the requested one.
    Explicit(Arc<PropositionPoset>),
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub max_states: usize,
    pub lattice: Arc<Lattice>,
    pub poset_mode: PosetMode,
    /// Seed for the sampled regime (state counts above 3, or map spaces
    /// above `map_cap`).
    pub seed: u64,
    pub samples: usize,
    /// Upper bound on `|M|^(|S|·(|B|-1))`, the raw search space of map
    /// enumeration.
    pub map_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_states: 3,
            lattice: Arc::new(Lattice::chain2()),
            poset_mode: PosetMode::BooleanPower,
            seed: 0x5eed,
            samples: 500,
            map_cap: 1 << 24,
        }
    }
}

pub fn state_names(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

impl OracleConfig {
    pub fn poset(&self, n: usize) -> Result<Arc<PropositionPoset>> {
        let states = state_names(n);
        Ok(Arc::new(match &self.poset_mode {
            PosetMode::FullPower => PropositionPoset::full_power(self.lattice.clone(), states)?,
            PosetMode::BooleanPower => PropositionPoset::boolean_power(self.lattice.clone(), states)?,
            PosetMode::Explicit(p) => {
                if p.state_count() != n {
                    return Err(Error::StateMismatch);
                }
                if **p.lattice() != *self.lattice {
                    return Err(Error::LatticeMismatch);
                }
                return Ok(p.clone());
            }
        }))
    }

    fn check_states(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::NoStates);
        }
        let cap = self.max_states.min(MAX_ENUMERATION_STATES);
        if n > cap {
            return Err(Error::CapExceeded(format!(
                "{n} states exceeds the oracle cap of {cap}"
            )));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// All `2^(n²)` relations on `n` states in ascending bitmask order.
pub fn enumerate_relations(n: usize, cap: usize) -> Result<impl Iterator<Item = Relation>> {
    if n == 0 {
        return Err(Error::NoStates);
    }
    let cap = cap.min(MAX_ENUMERATION_STATES);
    if n > cap {
        return Err(Error::CapExceeded(format!("{n} states exceeds the cap of {cap}")));
    }
    Ok((0..1u64 << (n * n)).map(move |m| Relation::from_mask(n, m)))
}

/// Direct evaluations of the defining formulas.
#[allow(clippy::needless_range_loop)]
pub mod naive {
    use super::*;

    #[inline]
    fn has(mask: u64, n: usize, s: usize, t: usize) -> bool {
        mask >> (s * n + t) & 1 == 1
    }

    /// `T_R(b)(s) = ⋀ { b(t) | s R t }` for every row.
    pub fn upper(l: &Lattice, rows: &[Vec<Elem>], n: usize, r: u64) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|b| {
                (0..n)
                    .map(|s| {
                        let mut acc = l.top();
                        for t in 0..n {
                            if has(r, n, s, t) {
                                acc = l.meet2(acc, b[t]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `P_R(a)(t) = ⋁ { a(s) | s R t }` for every row.
    pub fn lower(l: &Lattice, rows: &[Vec<Elem>], n: usize, r: u64) -> Vec<Vec<Elem>> {
        rows.iter()
            .map(|a| {
                (0..n)
                    .map(|t| {
                        let mut acc = l.bottom();
                        for s in 0..n {
                            if has(r, n, s, t) {
                                acc = l.join2(acc, a[s]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `R_T = {(s,t) | ∀b: T(b)(s) <= b(t)}`.
    pub fn induced_upper(l: &Lattice, rows: &[Vec<Elem>], table: &[Vec<Elem>], n: usize) -> u64 {
        let mut r = 0;
        for s in 0..n {
            for t in 0..n {
                if (0..rows.len()).all(|i| l.leq(table[i][s], rows[i][t])) {
                    r |= 1 << (s * n + t);
                }
            }
        }
        r
    }

    /// `R^P = {(s,t) | ∀a: a(s) <= P(a)(t)}`.
    pub fn induced_lower(l: &Lattice, rows: &[Vec<Elem>], table: &[Vec<Elem>], n: usize) -> u64 {
        let mut r = 0;
        for s in 0..n {
            for t in 0..n {
                if (0..rows.len()).all(|i| l.leq(rows[i][s], table[i][t])) {
                    r |= 1 << (s * n + t);
                }
            }
        }
        r
    }

    /// Pointwise `x <= y` on tables.
    pub fn table_leq(l: &Lattice, x: &[Vec<Elem>], y: &[Vec<Elem>]) -> bool {
        x.iter()
            .zip(y)
            .all(|(a, b)| a.iter().zip(b).all(|(&p, &q)| l.leq(p, q)))
    }

    pub fn inverse(r: u64, n: usize) -> u64 {
        let mut out = 0;
        for s in 0..n {
            for t in 0..n {
                if has(r, n, s, t) {
                    out |= 1 << (t * n + s);
                }
            }
        }
        out
    }
}

/// Rows sorted so that every row comes after all rows strictly below it.
fn linear_extension(p: &PropositionPoset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (0..p.len()).filter(|&j| p.row_leq(j, i)).count());
    order
}

fn all_vectors(l: &Lattice, n: usize) -> Vec<Vec<Elem>> {
    let k = l.len();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![Elem(0); n];
            for slot in v.iter_mut().rev() {
                *slot = Elem((code % k) as u16);
                code /= k;
            }
            v
        })
        .collect()
}

/// Size of the raw search space `|M|^(|S|·(|B|-1))`, saturating.
fn search_space(p: &PropositionPoset) -> u64 {
    let k = p.lattice().len() as u64;
    let e = (p.state_count() * p.len().saturating_sub(1)) as u32;
    k.checked_pow(e).unwrap_or(u64::MAX)
}

/// Every monotone `T: B -> M^S` whose value on `pinned` is `value`.
fn enumerate_pinned(p: &PropositionPoset, pinned: usize, value: Vec<Elem>, cap: u64) -> Result<Vec<Vec<Vec<Elem>>>> {
    let space = search_space(p);
    if space > cap {
        return Err(Error::CapExceeded(format!(
            "map search space {space} exceeds the cap of {cap}"
        )));
    }
    let l = p.lattice();
    let candidates = all_vectors(l, p.state_count());
    let order = linear_extension(p);
    let mut assigned: Vec<Option<Vec<Elem>>> = vec![None; p.len()];
    let mut out = Vec::new();

    fn fits(l: &Lattice, p: &PropositionPoset, assigned: &[Option<Vec<Elem>>], i: usize, v: &[Elem]) -> bool {
        assigned.iter().enumerate().all(|(j, w)| match w {
            None => true,
            Some(w) => (!p.row_leq(j, i) || l.leq_pointwise(w, v)) && (!p.row_leq(i, j) || l.leq_pointwise(v, w)),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        l: &Lattice,
        p: &PropositionPoset,
        order: &[usize],
        candidates: &[Vec<Elem>],
        pinned: usize,
        value: &[Elem],
        assigned: &mut Vec<Option<Vec<Elem>>>,
        out: &mut Vec<Vec<Vec<Elem>>>,
    ) {
        if depth == order.len() {
            out.push(assigned.iter().map(|v| v.clone().expect("all rows assigned")).collect());
            return;
        }
        let i = order[depth];
        let choices: &[Vec<Elem>] = if i == pinned {
            std::slice::from_ref(
                &candidates[candidates
                    .iter()
                    .position(|c| c == value)
                    .expect("pinned value is a vector")],
            )
        } else {
            candidates
        };
        for v in choices {
            if fits(l, p, assigned, i, v) {
                assigned[i] = Some(v.clone());
                go(depth + 1, l, p, order, candidates, pinned, value, assigned, out);
                assigned[i] = None;
            }
        }
    }

    go(0, l, p, &order, &candidates, pinned, &value, &mut assigned, &mut out);
    Ok(out)
}

/// Every monotone `T: B -> M^S` with `T(1) = 1`, each exactly once.
pub fn enumerate_unit_maps(b: &PropositionPoset, cap: u64) -> Result<Vec<Vec<Vec<Elem>>>> {
    let top = vec![b.lattice().top(); b.state_count()];
    enumerate_pinned(b, b.one(), top, cap)
}

/// Every monotone `P: A -> M^S` with `P(0) = 0`, each exactly once.
pub fn enumerate_zero_maps(a: &PropositionPoset, cap: u64) -> Result<Vec<Vec<Vec<Elem>>>> {
    let bottom = vec![a.lattice().bottom(); a.state_count()];
    enumerate_pinned(a, a.zero(), bottom, cap)
}

/// A random monotone map with `T(1) = 1`: rows are visited top-down and
/// each random vector is cut down by the values already chosen above it.
pub fn sample_unit_map<R: Rng>(b: &PropositionPoset, rng: &mut R) -> Vec<Vec<Elem>> {
    let l = b.lattice();
    let n = b.state_count();
    let mut order = linear_extension(b);
    order.reverse();
    let mut table: Vec<Option<Vec<Elem>>> = vec![None; b.len()];
    for i in order {
        let mut v: Vec<Elem> = if i == b.one() {
            vec![l.top(); n]
        } else {
            (0..n).map(|_| Elem(rng.random_range(0..l.len()) as u16)).collect()
        };
        for (j, w) in table.iter().enumerate() {
            if let Some(w) = w {
                if b.row_leq(i, j) {
                    v.iter_mut().zip(w).for_each(|(x, &y)| *x = l.meet2(*x, y));
                }
            }
        }
        table[i] = Some(v);
    }
    table.into_iter().map(|v| v.expect("assigned")).collect()
}

/// A random monotone map with `P(0) = 0`, built bottom-up with joins.
pub fn sample_zero_map<R: Rng>(a: &PropositionPoset, rng: &mut R) -> Vec<Vec<Elem>> {
    let l = a.lattice();
    let n = a.state_count();
    let order = linear_extension(a);
    let mut table: Vec<Option<Vec<Elem>>> = vec![None; a.len()];
    for i in order {
        let mut v: Vec<Elem> = if i == a.zero() {
            vec![l.bottom(); n]
        } else {
            (0..n).map(|_| Elem(rng.random_range(0..l.len()) as u16)).collect()
        };
        for (j, w) in table.iter().enumerate() {
            if let Some(w) = w {
                if a.row_leq(j, i) {
                    v.iter_mut().zip(w).for_each(|(x, &y)| *x = l.join2(*x, y));
                }
            }
        }
        table[i] = Some(v);
    }
    table.into_iter().map(|v| v.expect("assigned")).collect()
}

fn rows_of(p: &PropositionPoset) -> Vec<Vec<Elem>> {
    p.rows().iter().map(|r| r.values.clone()).collect()
}

/// Relations used by a suite: exhaustive up to three states, sampled above.
fn suite_relations(config: &OracleConfig, n: usize, rng: &mut ChaCha8Rng) -> (Vec<u64>, bool) {
    let all = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
    if n <= 3 {
        ((0..=all).collect(), false)
    } else {
        let mut out = vec![0, all];
        out.extend((0..config.samples.saturating_sub(2)).map(|_| rng.random::<u64>() & all));
        (out, true)
    }
}

fn suite_maps(
    config: &OracleConfig,
    p: &PropositionPoset,
    upper: bool,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Vec<Vec<Elem>>>, bool)> {
    if search_space(p) <= config.map_cap {
        let maps = if upper {
            enumerate_unit_maps(p, config.map_cap)?
        } else {
            enumerate_zero_maps(p, config.map_cap)?
        };
        return Ok((maps, false));
    }
    let maps = (0..config.samples)
        .map(|_| {
            if upper {
                sample_unit_map(p, rng)
            } else {
                sample_zero_map(p, rng)
            }
        })
        .collect();
    Ok((maps, true))
}

/// A failing instance, with the relation and poset serialized in the
/// system-description format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub description: String,
    pub relation: Relation,
    pub map: Option<Vec<Vec<Elem>>>,
    pub system: String,
}

fn counterexample(
    description: String,
    p: &Arc<PropositionPoset>,
    mask: u64,
    map: Option<&[Vec<Elem>]>,
) -> Counterexample {
    let n = p.state_count();
    let relation = Relation::from_mask(n, mask);
    let mut system = match TransitionFrame::with_relation(p.states().clone(), relation.clone())
        .and_then(|f| SystemDescription::new("counterexample", p.clone(), f))
    {
        Ok(sys) => sys.render(),
        Err(e) => format!("# could not serialize: {e}\n"),
    };
    if let Some(map) = map {
        system.push_str("# map under test\n");
        for (i, v) in map.iter().enumerate() {
            let _ = writeln!(system, "# op {} = {}", p.name(i), p.format_vector(v));
        }
    }
    Counterexample {
        description,
        relation,
        map: map.map(|m| m.to_vec()),
        system,
    }
}

/// Which verification suite a report belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    UpperAdjunction,
    LowerAdjunction,
    InductionLaws,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::UpperAdjunction => "upper-adjunction",
            Suite::LowerAdjunction => "lower-adjunction",
            Suite::InductionLaws => "induction-laws",
        })
    }
}

/// Outcome of an adjunction suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub states: usize,
    pub poset_size: usize,
    pub relations: usize,
    pub maps: usize,
    pub sampled: bool,
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// `upper-adjunction n=2 |B|=4: PASS (16 relations, 25 maps)`.
    pub fn summary_line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let sampled = if self.sampled { ", sampled" } else { "" };
        format!(
            "{} n={} |B|={}: {verdict} ({} relations, {} maps{sampled})",
            self.suite, self.states, self.poset_size, self.relations, self.maps
        )
    }
}

/// `φ(R) ⊑ T  <=>  R ⊆ ψ(T)` for all relations `R` and unit maps `T`.
pub fn verify_upper_adjunction(config: &OracleConfig, n: usize) -> Result<SuiteReport> {
    let b = config.poset(n)?;
    let l = b.lattice().clone();
    let rows = rows_of(&b);
    verify_upper_adjunction_with(config, n, |table| naive::induced_upper(&l, &rows, table, n))
}

/// As [`verify_upper_adjunction`] with a caller-supplied `ψ`.
pub fn verify_upper_adjunction_with<F>(config: &OracleConfig, n: usize, psi: F) -> Result<SuiteReport>
where
    F: Fn(&[Vec<Elem>]) -> u64,
{
    config.check_states(n)?;
    let b = config.poset(n)?;
    let l = b.lattice();
    let rows = rows_of(&b);
    let mut rng = config.rng();
    let (relations, rel_sampled) = suite_relations(config, n, &mut rng);
    let (maps, map_sampled) = suite_maps(config, &b, true, &mut rng)?;
    let psis: Vec<u64> = maps.iter().map(|m| psi(m)).collect();
    let mut report = SuiteReport {
        suite: Suite::UpperAdjunction,
        states: n,
        poset_size: b.len(),
        relations: relations.len(),
        maps: maps.len(),
        sampled: rel_sampled || map_sampled,
        checks: 0,
        counterexample: None,
    };
    for &r in &relations {
        let phi = naive::upper(l, &rows, n, r);
        for (t, &psi_t) in maps.iter().zip(&psis) {
            report.checks += 1;
            // φ(R) ⊑ T means T <= φ(R) pointwise
            let lhs = naive::table_leq(l, t, &phi);
            let rhs = r & !psi_t == 0;
            if lhs != rhs {
                report.counterexample = Some(counterexample(
                    format!("phi(R) below T is {lhs} but R within psi(T) is {rhs}"),
                    &b,
                    r,
                    Some(t),
                ));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// `Φ(R) <= P  <=>  R ⊆ Ψ(P)` for all relations and zero maps, plus
/// `Φ(R) = φ(R⁻¹)` computed by the operator engine in the order-dual lattice.
pub fn verify_lower_adjunction(config: &OracleConfig, n: usize) -> Result<SuiteReport> {
    let a = config.poset(n)?;
    let l = a.lattice().clone();
    let rows = rows_of(&a);
    verify_lower_adjunction_with(config, n, |table| naive::induced_lower(&l, &rows, table, n))
}

pub fn verify_lower_adjunction_with<F>(config: &OracleConfig, n: usize, psi: F) -> Result<SuiteReport>
where
    F: Fn(&[Vec<Elem>]) -> u64,
{
    config.check_states(n)?;
    let a = config.poset(n)?;
    let dual = Arc::new(a.dual());
    let l = a.lattice();
    let rows = rows_of(&a);
    let mut rng = config.rng();
    let (relations, rel_sampled) = suite_relations(config, n, &mut rng);
    let (maps, map_sampled) = suite_maps(config, &a, false, &mut rng)?;
    let psis: Vec<u64> = maps.iter().map(|m| psi(m)).collect();
    let mut report = SuiteReport {
        suite: Suite::LowerAdjunction,
        states: n,
        poset_size: a.len(),
        relations: relations.len(),
        maps: maps.len(),
        sampled: rel_sampled || map_sampled,
        checks: 0,
        counterexample: None,
    };
    for &r in &relations {
        let phi = naive::lower(l, &rows, n, r);
        let inverse = TransitionFrame::with_relation(a.states().clone(), Relation::from_mask(n, naive::inverse(r, n)))?;
        let via_dual = crate::operator::upper_operator(&inverse, &dual)?;
        if via_dual.entries() != phi.as_slice() {
            report.counterexample = Some(counterexample(
                "P_R differs from T of the inverse relation in the dual lattice".into(),
                &a,
                r,
                None,
            ));
            return Ok(report);
        }
        for (p, &psi_p) in maps.iter().zip(&psis) {
            report.checks += 1;
            let lhs = naive::table_leq(l, &phi, p);
            let rhs = r & !psi_p == 0;
            if lhs != rhs {
                report.counterexample = Some(counterexample(
                    format!("Phi(R) <= P is {lhs} but R within Psi(P) is {rhs}"),
                    &a,
                    r,
                    Some(p),
                ));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The individual laws relating relations, operators and induced relations.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Law {
    /// `R1 ⊆ R2` implies `T_{R2} <= T_{R1}` and `P_{R1} <= P_{R2}`.
    AntitoneOperators,
    /// `T2 <= T1` implies `R_{T1} ⊆ R_{T2}`.
    AntitoneUpperInduction,
    /// `P1 <= P2` implies `R^{P1} ⊆ R^{P2}`.
    MonotoneLowerInduction,
    /// `R ⊆ R_{T_R} ∩ R^{P_R}`.
    Extensive,
    /// `T <= T_{R_T}`.
    UpperDomination,
    /// `P_{R^P} <= P`.
    LowerDomination,
    /// `∅` and `S×S` are recovered from both operators.
    Extremal,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::AntitoneOperators,
        Law::AntitoneUpperInduction,
        Law::MonotoneLowerInduction,
        Law::Extensive,
        Law::UpperDomination,
        Law::LowerDomination,
        Law::Extremal,
    ];
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::AntitoneOperators => "antitone-operators",
            Law::AntitoneUpperInduction => "antitone-upper-induction",
            Law::MonotoneLowerInduction => "monotone-lower-induction",
            Law::Extensive => "extensive",
            Law::UpperDomination => "upper-domination",
            Law::LowerDomination => "lower-domination",
            Law::Extremal => "extremal",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: Law,
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug)]
pub struct InductionLawsReport {
    pub states: usize,
    pub poset_size: usize,
    pub relations: usize,
    pub upper_maps: usize,
    pub lower_maps: usize,
    pub sampled: bool,
    pub laws: Vec<LawReport>,
}

impl InductionLawsReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|c| c.counterexample.is_none())
    }

    pub fn summary_lines(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let sampled = if self.sampled { ", sampled" } else { "" };
        let mut out = format!(
            "{} n={} |B|={}: {verdict} ({} laws, {} relations, {} upper maps, {} lower maps{sampled})\n",
            Suite::InductionLaws,
            self.states,
            self.poset_size,
            self.laws.len(),
            self.relations,
            self.upper_maps,
            self.lower_maps
        );
        for c in &self.laws {
            let v = if c.counterexample.is_none() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {}: {v} ({} instances)", c.law, c.instances);
        }
        out
    }
}

/// Checks every [`Law`] over all relations and all unit/zero maps (or
/// seeded samples of them when enumeration is out of range).
pub fn verify_induction_laws(config: &OracleConfig, n: usize) -> Result<InductionLawsReport> {
    config.check_states(n)?;
    let p = config.poset(n)?;
    let l = p.lattice().clone();
    let rows = rows_of(&p);
    let mut rng = config.rng();
    let (relations, rel_sampled) = suite_relations(config, n, &mut rng);
    let (uppers, up_sampled) = suite_maps(config, &p, true, &mut rng)?;
    let (lowers, low_sampled) = suite_maps(config, &p, false, &mut rng)?;
    let all = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };

    let up = |r: u64| naive::upper(&l, &rows, n, r);
    let low = |r: u64| naive::lower(&l, &rows, n, r);
    let psi = |t: &[Vec<Elem>]| naive::induced_upper(&l, &rows, t, n);
    let big_psi = |q: &[Vec<Elem>]| naive::induced_lower(&l, &rows, q, n);
    let cx = |law: Law, what: &str, r: u64, map: Option<&[Vec<Elem>]>| {
        Some(counterexample(format!("{law}: {what}"), &p, r, map))
    };

    let mut laws = Vec::new();

    // antitone operators: R1 ⊆ R2
    let mut report = LawReport {
        law: Law::AntitoneOperators,
        instances: 0,
        counterexample: None,
    };
    'a: for &r2 in &relations {
        let (t2, p2) = (up(r2), low(r2));
        let subs: Vec<u64> = if rel_sampled {
            vec![0, r2, r2 & rng.random::<u64>(), r2 & rng.random::<u64>()]
        } else {
            let mut v = Vec::new();
            let mut sub = r2;
            loop {
                v.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & r2;
            }
            v
        };
        for r1 in subs {
            report.instances += 1;
            if !naive::table_leq(&l, &t2, &up(r1)) || !naive::table_leq(&l, &low(r1), &p2) {
                report.counterexample = cx(Law::AntitoneOperators, "operators not antitone/monotone in R", r1, None);
                break 'a;
            }
        }
    }
    laws.push(report);

    // T2 <= T1 implies R_{T1} ⊆ R_{T2}; only pairs whose induced relations
    // are not nested can violate it, so the order test runs only for those.
    let up_psi: Vec<u64> = uppers.iter().map(|t| psi(t)).collect();
    let mut report = LawReport {
        law: Law::AntitoneUpperInduction,
        instances: 0,
        counterexample: None,
    };
    'b: for (i, t1) in uppers.iter().enumerate() {
        for (j, t2) in uppers.iter().enumerate() {
            report.instances += 1;
            if up_psi[i] & !up_psi[j] != 0 && naive::table_leq(&l, t2, t1) {
                report.counterexample = cx(
                    Law::AntitoneUpperInduction,
                    "T2 <= T1 but R_T1 not within R_T2",
                    up_psi[i],
                    Some(t1),
                );
                break 'b;
            }
        }
    }
    laws.push(report);

    let low_psi: Vec<u64> = lowers.iter().map(|q| big_psi(q)).collect();
    let mut report = LawReport {
        law: Law::MonotoneLowerInduction,
        instances: 0,
        counterexample: None,
    };
    'c: for (i, p1) in lowers.iter().enumerate() {
        for (j, p2) in lowers.iter().enumerate() {
            report.instances += 1;
            if low_psi[i] & !low_psi[j] != 0 && naive::table_leq(&l, p1, p2) {
                report.counterexample = cx(
                    Law::MonotoneLowerInduction,
                    "P1 <= P2 but R^P1 not within R^P2",
                    low_psi[i],
                    Some(p1),
                );
                break 'c;
            }
        }
    }
    laws.push(report);

    let mut report = LawReport {
        law: Law::Extensive,
        instances: 0,
        counterexample: None,
    };
    for &r in &relations {
        report.instances += 1;
        let closure = psi(&up(r)) & big_psi(&low(r));
        if r & !closure != 0 {
            report.counterexample = cx(Law::Extensive, "R not within R_{T_R} and R^{P_R}", r, None);
            break;
        }
    }
    laws.push(report);

    let mut report = LawReport {
        law: Law::UpperDomination,
        instances: 0,
        counterexample: None,
    };
    for (t, &rt) in uppers.iter().zip(&up_psi) {
        report.instances += 1;
        if !naive::table_leq(&l, t, &up(rt)) {
            report.counterexample = cx(Law::UpperDomination, "T not below T_{R_T}", rt, Some(t));
            break;
        }
    }
    laws.push(report);

    let mut report = LawReport {
        law: Law::LowerDomination,
        instances: 0,
        counterexample: None,
    };
    for (q, &rp) in lowers.iter().zip(&low_psi) {
        report.instances += 1;
        if !naive::table_leq(&l, &low(rp), q) {
            report.counterexample = cx(Law::LowerDomination, "P_{R^P} not below P", rp, Some(q));
            break;
        }
    }
    laws.push(report);

    let mut report = LawReport {
        law: Law::Extremal,
        instances: 4,
        counterexample: None,
    };
    for r in [0, all] {
        if psi(&up(r)) != r || big_psi(&low(r)) != r {
            report.counterexample = cx(Law::Extremal, "extremal relation not recovered", r, None);
        }
    }
    laws.push(report);

    Ok(InductionLawsReport {
        states: n,
        poset_size: p.len(),
        relations: relations.len(),
        upper_maps: uppers.len(),
        lower_maps: lowers.len(),
        sampled: rel_sampled || up_sampled || low_sampled,
        laws,
    })
}

/// Outcome of comparing the engine's induced relations with the direct
/// double-loop evaluation.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub instances: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<Counterexample>,
}

/// Random instances on `n` states: a random relation, a random bounded
/// subposet of `M^S` containing the constants, and operators built both by
/// the engine from the relation and by random sampling. Engine and direct
/// evaluation of the induced relations must agree exactly.
pub fn cross_check_engine(config: &OracleConfig, n: usize, instances: usize) -> Result<CrossCheck> {
    use crate::induction::{induced_lower, induced_upper};
    use crate::operator::{lower_operator, upper_operator, OperatorTable, TableKind};

    let l = config.lattice.clone();
    let states = state_names(n);
    let full = PropositionPoset::full_power(l.clone(), states.clone())?;
    let mut rng = config.rng();
    let mut out = CrossCheck {
        instances: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    let all = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
    for _ in 0..instances {
        let keep = rng.random_range(0.0..1.0);
        let rows: Vec<_> = full
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i == full.zero() || *i == full.one() || rng.random_bool(keep))
            .map(|(_, r)| r.clone())
            .collect();
        let poset = Arc::new(PropositionPoset::new(l.clone(), states.clone(), rows)?);
        let raw = rows_of(&poset);
        let mask = rng.random::<u64>() & all;
        let frame = TransitionFrame::with_relation(states.clone(), Relation::from_mask(n, mask))?;

        let t = upper_operator(&frame, &poset)?;
        let p = lower_operator(&frame, &poset)?;
        let t_rand = OperatorTable::new(poset.clone(), TableKind::Upper, sample_unit_map(&poset, &mut rng))?;
        let p_rand = OperatorTable::new(poset.clone(), TableKind::Lower, sample_zero_map(&poset, &mut rng))?;

        let mut ok = true;
        for table in [&t, &t_rand] {
            let engine = induced_upper(table).to_mask();
            ok &= engine == naive::induced_upper(&l, &raw, table.entries(), n);
        }
        for table in [&p, &p_rand] {
            let engine = induced_lower(table).to_mask();
            ok &= engine == naive::induced_lower(&l, &raw, table.entries(), n);
        }
        ok &= t.entries() == naive::upper(&l, &raw, n, mask).as_slice();
        ok &= p.entries() == naive::lower(&l, &raw, n, mask).as_slice();
        out.instances += 1;
        if !ok {
            out.mismatches += 1;
            if out.first_mismatch.is_none() {
                out.first_mismatch = Some(counterexample("engine and oracle disagree".into(), &poset, mask, None));
            }
        }
    }
    Ok(out)
}

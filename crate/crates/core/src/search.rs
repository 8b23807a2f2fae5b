//! Bounded breadth-first search for trivializing transcripts.
//!
//! States are deduplicated by a canonical key: each relator is replaced by
//! the least word in its rotation and/or inversion orbit, and optionally the
//! tuple is sorted. Every symmetry is realizable by moves (CT3, CT1 and
//! [`swap_macro`]), so a path between keys can be turned back into a
//! concrete transcript, which is then replayed and checked.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::moves::{
    cyclic_product, swap_macro, verify_transcript, Move, MoveError, MoveRecorder, Presentation, System, Transcript,
};
use crate::translator::{RankOracle, TranslateError};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetries {
    pub rotation: bool,
    pub inversion: bool,
    pub permutation: bool,
}

impl Symmetries {
    pub const NONE: Symmetries = Symmetries { rotation: false, inversion: false, permutation: false };
    pub const ALL: Symmetries = Symmetries { rotation: true, inversion: true, permutation: true };
}

impl Default for Symmetries {
    /// Rotation and inversion; permutation relies on the switch macro and
    /// is opt-in.
    fn default() -> Self {
        Symmetries { rotation: true, inversion: true, permutation: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    /// `Cen` or `Ccac` (without stabilizations).
    pub system: System,
    pub max_total_length: usize,
    pub max_depth: usize,
    /// Maximum number of expanded states.
    pub node_budget: usize,
    pub symmetries: Symmetries,
    /// Threads used to expand a level; does not affect the result.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            system: System::Cen,
            max_total_length: 12,
            max_depth: 12,
            node_budget: 200_000,
            symmetries: Symmetries::default(),
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub relators: Vec<Word>,
}

impl CanonicalKey {
    /// Stable 64-bit digest (SipHash with fixed keys).
    pub fn hash64(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.relators.hash(&mut h);
        h.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Transcript),
    ExhaustedWithinCaps,
    BudgetExceeded,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub expanded: usize,
    pub generated: usize,
    pub dedup_hits: usize,
    pub frontier_peak: usize,
    pub visited: usize,
    pub depth_reached: usize,
    /// Set when reconstruction had to fall back to a search without the
    /// permutation symmetry.
    pub permutation_fallback: bool,
}

impl SearchStats {
    /// `key=value` lines.
    pub fn to_lines(&self) -> String {
        format!(
            "expanded={}\ngenerated={}\ndedup_hits={}\nfrontier_peak={}\nvisited={}\ndepth_reached={}\npermutation_fallback={}\n",
            self.expanded,
            self.generated,
            self.dedup_hits,
            self.frontier_peak,
            self.visited,
            self.depth_reached,
            self.permutation_fallback
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search input: {0}")]
    Precondition(String),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("reconstructed transcript failed verification: {0}")]
    Unverified(String),
}

/// Least representative of `w` under the configured symmetries.
fn canonical_relator(w: &Word, sym: Symmetries) -> Word {
    let mut best = w.clone();
    let orients: &[bool] = if sym.inversion { &[false, true] } else { &[false] };
    for &inv in orients {
        let base = if inv { w.inverse() } else { w.clone() };
        if sym.rotation {
            for r in base.rotations() {
                if r < best {
                    best = r;
                }
            }
        } else if base < best {
            best = base;
        }
    }
    best
}

pub fn canonicalize(p: &Presentation, sym: Symmetries) -> CanonicalKey {
    canonical_words(&p.relators, sym)
}

fn canonical_words(rels: &[Word], sym: Symmetries) -> CanonicalKey {
    let mut relators: Vec<Word> = rels.iter().map(|w| canonical_relator(w, sym)).collect();
    if sym.permutation {
        relators.sort();
    }
    CanonicalKey { relators }
}

/// Moves carrying the recorder's tuple to its canonical representative.
fn realize(rec: &mut MoveRecorder, sym: Symmetries) -> Result<(), MoveError> {
    let n = rec.current.rank();
    for i in 0..n {
        let target = canonical_relator(rec.relator(i), sym);
        rec.rotate_to(i, &target)?;
    }
    if sym.permutation {
        for pos in 0..n {
            let k = (pos..n).min_by(|&a, &b| rec.relator(a).cmp(rec.relator(b)).then(a.cmp(&b))).unwrap();
            if rec.relator(k) != rec.relator(pos) {
                let t = swap_macro(&rec.current, pos, k)?;
                rec.append(t)?;
            }
        }
    }
    Ok(())
}

type Successor = (Vec<Move>, Vec<Word>);

/// All single moves from `rep` (as macro edges when symmetries make
/// intermediate CT1/CT3 steps free), within the length cap.
fn successors(rep: &[Word], cfg: &SearchConfig) -> Vec<Successor> {
    let sym = cfg.symmetries;
    let n = rep.len();
    let total: usize = rep.iter().map(Word::len).sum();
    let mut out = Vec::new();
    if !sym.inversion {
        for i in 0..n {
            let mut child = rep.to_vec();
            child[i] = rep[i].inverse();
            out.push((vec![Move::CT1(i)], child));
        }
    }
    if !sym.rotation {
        for i in 0..n {
            for k in 1..rep[i].len() {
                let mut child = rep.to_vec();
                child[i] = rep[i].rotated(k);
                out.push((vec![Move::CT3(i, k)], child));
            }
        }
    }
    let rots = |w: &Word| if sym.rotation { w.len() } else { 1 };
    // With both symmetries on, inverting slot i only reverses the product
    // up to rotation, so one orientation of i suffices.
    let orient_i: &[bool] = if sym.inversion && !sym.rotation { &[false, true] } else { &[false] };
    let orient_j: &[bool] = if sym.inversion { &[false, true] } else { &[false] };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &inv_i in orient_i {
                let bi = if inv_i { rep[i].inverse() } else { rep[i].clone() };
                for ri in 0..rots(&bi) {
                    let wi = bi.rotated(ri);
                    for &inv_j in orient_j {
                        let bj = if inv_j { rep[j].inverse() } else { rep[j].clone() };
                        for rj in 0..rots(&bj) {
                            let wj = bj.rotated(rj);
                            let res = cyclic_product(&wi, &wj);
                            if res.is_empty() || total - wi.len() + res.len() > cfg.max_total_length {
                                continue;
                            }
                            let mv = match cfg.system {
                                System::Ccac => {
                                    if res.len() > wi.len().max(wj.len()) - wi.len().min(wj.len()) {
                                        continue;
                                    }
                                    Move::CCT2(i, j)
                                }
                                _ => Move::CT2(i, j),
                            };
                            let mut moves = Vec::new();
                            if inv_i {
                                moves.push(Move::CT1(i));
                            }
                            if ri > 0 {
                                moves.push(Move::CT3(i, ri));
                            }
                            if inv_j {
                                moves.push(Move::CT1(j));
                            }
                            if rj > 0 {
                                moves.push(Move::CT3(j, rj));
                            }
                            moves.push(mv);
                            let mut child = rep.to_vec();
                            child[j] = wj;
                            child[i] = res;
                            out.push((moves, child));
                        }
                    }
                }
            }
        }
    }
    out
}

struct Node {
    rep: Vec<Word>,
    parent: usize,
    edge: Vec<Move>,
}

struct Explored {
    nodes: Vec<Node>,
    goal: Option<usize>,
    budget_hit: bool,
    stats: SearchStats,
}

fn check_input(p: &Presentation, cfg: &SearchConfig) -> Result<(), SearchError> {
    if !matches!(cfg.system, System::Cen | System::Ccac) {
        return Err(SearchError::Precondition(format!("search runs over CEN or CCAC, not {}", cfg.system)));
    }
    if p.rank() != p.alphabet.len() {
        return Err(SearchError::Precondition(format!("{} relators over {} generators", p.rank(), p.alphabet.len())));
    }
    if cfg.node_budget == 0 {
        return Err(SearchError::Precondition("node budget must be positive".into()));
    }
    p.check_cyclic()?;
    Ok(())
}

fn explore(p: &Presentation, cfg: &SearchConfig, stop_at_goal: bool) -> Explored {
    let sym = cfg.symmetries;
    let goal = canonicalize(&Presentation::letter_tuple(p.alphabet.clone()), sym).relators;
    let root = canonicalize(p, sym).relators;
    let mut stats = SearchStats { visited: 1, ..Default::default() };
    let mut index: HashMap<Vec<Word>, usize> = HashMap::from([(root.clone(), 0)]);
    let mut nodes = vec![Node { rep: root.clone(), parent: 0, edge: Vec::new() }];
    if stop_at_goal && root == goal {
        return Explored { nodes, goal: Some(0), budget_hit: false, stats };
    }
    let pool =
        (cfg.workers > 1).then(|| rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().ok()).flatten();
    let mut frontier = vec![0usize];
    for depth in 0..cfg.max_depth {
        if frontier.is_empty() {
            break;
        }
        if stats.expanded + frontier.len() > cfg.node_budget {
            return Explored { nodes, goal: None, budget_hit: true, stats };
        }
        stats.expanded += frontier.len();
        stats.depth_reached = depth + 1;
        let expand = |&idx: &usize| -> Vec<(Vec<Move>, Vec<Word>)> {
            successors(&nodes[idx].rep, cfg)
                .into_iter()
                .map(|(edge, child)| (edge, canonical_words(&child, sym).relators))
                .collect()
        };
        let expansions: Vec<Vec<(Vec<Move>, Vec<Word>)>> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(expand).collect()),
            None => frontier.iter().map(expand).collect(),
        };
        let mut next = Vec::new();
        for (&parent, children) in frontier.iter().zip(expansions) {
            for (edge, key) in children {
                stats.generated += 1;
                if index.contains_key(&key) {
                    stats.dedup_hits += 1;
                    continue;
                }
                let id = nodes.len();
                index.insert(key.clone(), id);
                let is_goal = key == goal;
                nodes.push(Node { rep: key, parent, edge });
                stats.visited += 1;
                if stop_at_goal && is_goal {
                    return Explored { nodes, goal: Some(id), budget_hit: false, stats };
                }
                next.push(id);
            }
        }
        stats.frontier_peak = stats.frontier_peak.max(next.len());
        frontier = next;
    }
    Explored { nodes, goal: None, budget_hit: false, stats }
}

fn reconstruct(p: &Presentation, cfg: &SearchConfig, nodes: &[Node], goal: usize) -> Result<Transcript, SearchError> {
    let mut path = vec![goal];
    while *path.last().unwrap() != 0 {
        path.push(nodes[*path.last().unwrap()].parent);
    }
    path.reverse();
    let mut rec = MoveRecorder::new(p.clone(), cfg.system);
    realize(&mut rec, cfg.symmetries)?;
    for &id in &path[1..] {
        for m in &nodes[id].edge {
            rec.apply(m.clone())?;
        }
        realize(&mut rec, cfg.symmetries)?;
        debug_assert_eq!(rec.current.relators, nodes[id].rep);
    }
    let t = rec.finish();
    let report = verify_transcript(p, &t, Some(&Presentation::letter_tuple(p.alphabet.clone())));
    if !report.accepted {
        return Err(SearchError::Unverified(report.reason));
    }
    Ok(t)
}

/// Search for a transcript carrying `p` to the letter tuple.
///
/// `ExhaustedWithinCaps` means every state reachable within the depth and
/// length caps was visited without meeting the letter tuple.
pub fn search_trivialization(p: &Presentation, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    check_input(p, cfg)?;
    let ex = explore(p, cfg, true);
    let outcome = match ex.goal {
        Some(g) => match reconstruct(p, cfg, &ex.nodes, g) {
            Ok(t) => Outcome::Found(t),
            Err(SearchError::Move(MoveError::MacroFailed(_))) if cfg.symmetries.permutation => {
                let mut plain = cfg.clone();
                plain.symmetries.permutation = false;
                let mut r = search_trivialization(p, &plain)?;
                r.stats.permutation_fallback = true;
                return Ok(r);
            }
            Err(e) => return Err(e),
        },
        None if ex.budget_hit => Outcome::BudgetExceeded,
        None => Outcome::ExhaustedWithinCaps,
    };
    Ok(SearchResult { outcome, stats: ex.stats })
}

/// Every canonical key reachable from `p` within the caps, sorted.
pub fn reachable_keys(p: &Presentation, cfg: &SearchConfig) -> Result<Vec<CanonicalKey>, SearchError> {
    check_input(p, cfg)?;
    let ex = explore(p, cfg, false);
    if ex.budget_hit {
        return Err(SearchError::Precondition("node budget exceeded before the reachable set closed".into()));
    }
    let mut keys: Vec<CanonicalKey> = ex.nodes.into_iter().map(|n| CanonicalKey { relators: n.rep }).collect();
    keys.sort();
    Ok(keys)
}

/// Bounded search packaged as a rank oracle for the translator.
#[derive(Debug, Clone)]
pub struct SearchOracle {
    pub config: SearchConfig,
}

pub fn rank_oracle_adapter(config: SearchConfig) -> SearchOracle {
    SearchOracle { config }
}

impl RankOracle for SearchOracle {
    fn trivialize(&self, p: &Presentation) -> Result<Transcript, TranslateError> {
        let r = search_trivialization(p, &self.config).map_err(|e| match e {
            SearchError::Unverified(s) => TranslateError::Unverified(s),
            other => TranslateError::OracleExhausted(other.to_string()),
        })?;
        match r.outcome {
            Outcome::Found(t) => Ok(t),
            Outcome::ExhaustedWithinCaps => Err(TranslateError::OracleExhausted(format!(
                "no trivialization within length {} and depth {}",
                self.config.max_total_length, self.config.max_depth
            ))),
            Outcome::BudgetExceeded => {
                Err(TranslateError::OracleExhausted(format!("node budget {} exceeded", self.config.node_budget)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::ct13_orbit_set;
    use crate::moves::scramble;
    use crate::word::w;
    use proptest::prelude::*;

    fn pres(rels: &[&str]) -> Presentation {
        Presentation::parse(rels.len(), rels).unwrap()
    }

    fn key(rels: &[&str]) -> Vec<Word> {
        rels.iter().map(|r| w(r)).collect()
    }

    #[test]
    fn canonical_examples() {
        let rot = Symmetries { rotation: true, inversion: false, permutation: false };
        assert_eq!(canonicalize(&pres(&["ba", "b"]), rot).relators, key(&["ab", "b"]));
        assert_eq!(canonicalize(&pres(&["B", "a"]), Symmetries::default()).relators, key(&["b", "a"]));
        assert_eq!(canonicalize(&pres(&["b", "a"]), Symmetries::ALL).relators, key(&["a", "b"]));
    }

    #[test]
    fn letter_tuple_is_found_immediately() {
        let r = search_trivialization(&pres(&["a", "b"]), &SearchConfig::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Found(Transcript::new(System::Cen)));
    }

    #[test]
    fn short_cen_trivialization() {
        let cfg = SearchConfig { max_total_length: 4, max_depth: 4, ..Default::default() };
        let r = search_trivialization(&pres(&["ab", "b"]), &cfg).unwrap();
        match r.outcome {
            Outcome::Found(t) => assert!(t.len() <= 3, "{t:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_one() {
        let oracle = rank_oracle_adapter(SearchConfig::default());
        assert!(oracle.trivialize(&pres(&["a"])).unwrap().is_empty());
        let t = oracle.trivialize(&pres(&["A"])).unwrap();
        assert_eq!(t.steps, vec![Move::CT1(0)]);
    }

    #[test]
    fn counterexample_exhausts_under_ccac() {
        let p = pres(&["aaBBB", "abaBAB"]);
        let cfg = SearchConfig {
            system: System::Ccac,
            max_total_length: 11,
            max_depth: 40,
            symmetries: Symmetries::NONE,
            ..Default::default()
        };
        let r = search_trivialization(&p, &cfg).unwrap();
        assert_eq!(r.outcome, Outcome::ExhaustedWithinCaps);
        let keys = reachable_keys(&p, &cfg).unwrap();
        let orbit = ct13_orbit_set(&w("aaBBB"), &w("abaBAB"));
        assert_eq!(keys.len(), 120);
        let as_pairs: std::collections::BTreeSet<_> =
            keys.into_iter().map(|k| (k.relators[0].clone(), k.relators[1].clone())).collect();
        assert_eq!(as_pairs, orbit);
        // with symmetries the orbit collapses to a single key
        let sym = SearchConfig { symmetries: Symmetries::ALL, ..cfg };
        assert_eq!(reachable_keys(&p, &sym).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_reported() {
        let cfg = SearchConfig { node_budget: 1, max_depth: 10, ..Default::default() };
        let (p, _) = scramble(&Presentation::letter_tuple(crate::word::Alphabet::standard(2)), 6, 3, System::En);
        if !p.is_letter_tuple() {
            let r = search_trivialization(&p, &cfg).unwrap();
            assert!(matches!(r.outcome, Outcome::BudgetExceeded | Outcome::Found(_)));
        }
    }

    #[test]
    fn scrambled_fixtures_are_found_with_every_symmetry_set() {
        let target = Presentation::letter_tuple(crate::word::Alphabet::standard(2));
        for seed in 0..15 {
            let (p, _) = scramble(&target, 4, seed, System::En);
            for sym in [Symmetries::default(), Symmetries::ALL, Symmetries { rotation: true, ..Symmetries::NONE }] {
                let cfg = SearchConfig { symmetries: sym, max_total_length: 14, max_depth: 8, ..Default::default() };
                let r = search_trivialization(&p, &cfg).unwrap();
                if let Outcome::Found(t) = &r.outcome {
                    assert!(verify_transcript(&p, t, Some(&target)).accepted);
                }
            }
        }
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let p = pres(&["aaBBB", "abaBAB"]);
        let base = SearchConfig { max_total_length: 14, max_depth: 3, ..Default::default() };
        let one = search_trivialization(&p, &base).unwrap();
        let four = search_trivialization(&p, &SearchConfig { workers: 4, ..base }).unwrap();
        assert_eq!(one, four);
        assert!(one.stats.expanded > 1);
    }

    fn relator() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u32..2, any::<bool>()), 1..7)
            .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| crate::word::Letter::new(g, i))).cyclic_reduce().core)
            .prop_filter("nonempty", |x| !x.is_empty())
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent_and_invariant(a in relator(), b in relator(), k in 0usize..7, inv in any::<bool>()) {
            let p = Presentation::new(crate::word::Alphabet::standard(2), vec![a.clone(), b.clone()]).unwrap();
            for sym in [Symmetries::default(), Symmetries::ALL] {
                let c = canonicalize(&p, sym);
                let again = Presentation::new(p.alphabet.clone(), c.relators.clone()).unwrap();
                prop_assert_eq!(canonicalize(&again, sym), c.clone());
                let a2 = if inv { a.inverse() } else { a.clone() }.rotated(k % a.len());
                let moved = Presentation::new(p.alphabet.clone(), vec![a2, b.clone()]).unwrap();
                prop_assert_eq!(canonicalize(&moved, sym), c.clone());
            }
            let swapped = Presentation::new(p.alphabet.clone(), vec![b.clone(), a.clone()]).unwrap();
            prop_assert_eq!(canonicalize(&swapped, Symmetries::ALL), canonicalize(&p, Symmetries::ALL));
        }
    }
}

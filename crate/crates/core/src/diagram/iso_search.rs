use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::periodic::{PeriodicDiagram, Step};
use super::position::Position;
use crate::error::{contract, Result};
use crate::stable::{
    is_stable_iso_by_residues, shift_by, shift_morphism, stable_hom_for_each, stable_inverse, StableMorphism,
};

/// A morphism of periodic diagrams, given by its components on
/// `{j/i : 0 <= i < j <= n}`; the column `0+/i` carries the shift of the
/// component at `i/0` and everything else follows by periodicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramIso {
    n: usize,
    components: BTreeMap<Position, StableMorphism>,
}

impl DiagramIso {
    pub fn new(n: usize, components: BTreeMap<Position, StableMorphism>) -> Self {
        DiagramIso { n, components }
    }

    pub fn identity(d: &PeriodicDiagram) -> Self {
        let components =
            free_positions(d.n()).into_iter().map(|p| (p, StableMorphism::identity(d.ctx(), d.object(p)))).collect();
        DiagramIso { n: d.n(), components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<Position, StableMorphism> {
        &self.components
    }

    pub fn component(&self, p: Position) -> Option<&StableMorphism> {
        self.components.get(&p)
    }

    pub fn with_component(mut self, p: Position, f: StableMorphism) -> Self {
        self.components.insert(p, f);
        self
    }
}

/// `{j/i : 0 <= i < j <= n}` in search order: the bottom row first, then
/// the inner columns from left to right.
pub fn free_positions(n: usize) -> Vec<Position> {
    let n = n as i64;
    let mut out: Vec<Position> = (1..=n).map(|j| Position::new(j, 0)).collect();
    for b in 2..=n {
        out.extend((1..b).map(|a| Position::new(b, a)));
    }
    out
}

/// Component at any strip position, resolved through translation and flip.
fn component_at(d1: &PeriodicDiagram, d2: &PeriodicDiagram, iso: &DiagramIso, p: Position) -> Result<StableMorphism> {
    let big_n = d1.period();
    let (q, shifts, _) = d1.resolve(p)?;
    let base = if q.alpha == q.beta || q == Position::new(big_n, 0) {
        StableMorphism::zero(d1.ctx(), d1.object(q), d2.object(q))
    } else if q.beta == big_n {
        match iso.component(Position::new(q.alpha, 0)) {
            Some(f) => shift_morphism(f),
            None => return contract(format!("missing component at {}", Position::new(q.alpha, 0).label(big_n))),
        }
    } else {
        match iso.component(q) {
            Some(f) => f.clone(),
            None => return contract(format!("missing component at {}", q.label(big_n))),
        }
    };
    Ok(shift_by(&base, shifts))
}

/// Re-checks a candidate isomorphism from scratch: every component is
/// stably invertible, and every unit square commutes on a full period of
/// the strip (including the flipped and translated region). Returns a
/// description of the first failure.
pub fn check_diagram_iso(d1: &PeriodicDiagram, d2: &PeriodicDiagram, iso: &DiagramIso) -> Result<Option<String>> {
    if d1.n() != d2.n() || d1.ctx() != d2.ctx() || iso.n() != d1.n() {
        return contract("diagrams and isomorphism have different shapes");
    }
    let big_n = d1.period();
    for p in free_positions(d1.n()) {
        let Some(f) = iso.component(p) else {
            return Ok(Some(format!("no component at {}", p.label(big_n))));
        };
        if f.source() != d1.object(p) || f.target() != d2.object(p) {
            return Ok(Some(format!("component at {} has the wrong ends", p.label(big_n))));
        }
        if stable_inverse(f)?.is_none() {
            return Ok(Some(format!("component at {} is not invertible", p.label(big_n))));
        }
    }
    for a in 0..=big_n {
        for b in a..=a + big_n {
            let p = Position::new(b, a);
            for step in [Step::Right, Step::Up] {
                let q = step.target(p);
                if !q.in_strip(big_n) {
                    continue;
                }
                let left = d1.unit_arrow(p, step)?.compose(&component_at(d1, d2, iso, q)?)?;
                let right = component_at(d1, d2, iso, p)?.compose(&d2.unit_arrow(p, step)?)?;
                if left != right {
                    return Ok(Some(format!("square on {} -> {} does not commute", p.label(big_n), q.label(big_n))));
                }
            }
        }
    }
    Ok(None)
}

pub fn verify_diagram_iso(d1: &PeriodicDiagram, d2: &PeriodicDiagram, iso: &DiagramIso) -> Result<bool> {
    Ok(check_diagram_iso(d1, d2, iso)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search space was exhausted (or, in `First` mode, a witness found).
    Complete,
    /// The node budget ran out first; the list may be incomplete.
    Inconclusive,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Maximum number of partial assignments visited; `None` is unbounded.
    pub budget: Option<u64>,
    /// Fan the first position's candidates out over the rayon pool.
    pub parallel: bool,
}

impl SearchOptions {
    pub fn new(mode: SearchMode) -> Self {
        SearchOptions { mode, budget: None, parallel: false }
    }

    pub fn budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}

#[derive(Debug, Clone)]
pub struct IsoSearch {
    pub isos: Vec<DiagramIso>,
    pub status: SearchStatus,
    /// Partial assignments visited.
    pub nodes: u64,
    /// Invertible candidates per free position, in search order.
    pub candidates: Vec<(Position, usize)>,
}

/// One commutativity constraint `d1 · Φ_target ≡ Φ_source · d2` of a unit
/// arrow, owned by whichever end is assigned later.
struct Link {
    d1: StableMorphism,
    d2: StableMorphism,
    /// The earlier end: variable index and whether it enters shifted.
    other: (usize, bool),
    /// Whether the owning variable sits at the target of the arrow.
    owner_is_target: bool,
    owner_shifted: bool,
}

struct Var {
    candidates: Vec<StableMorphism>,
    links: Vec<Link>,
    /// Candidates grouped by their images under the owned links.
    index: HashMap<Vec<i64>, Vec<u32>>,
}

fn shifted(f: &StableMorphism, s: bool) -> StableMorphism {
    if s {
        shift_morphism(f)
    } else {
        f.clone()
    }
}

fn key_of(var_links: &[Link], cand: &StableMorphism) -> Result<Vec<i64>> {
    let mut key = Vec::new();
    for l in var_links {
        let phi = shifted(cand, l.owner_shifted);
        let img = if l.owner_is_target { l.d1.compose(&phi)? } else { phi.compose(&l.d2)? };
        key.extend_from_slice(img.matrix().data());
    }
    Ok(key)
}

fn required_key(var_links: &[Link], assigned: &[StableMorphism]) -> Result<Vec<i64>> {
    let mut key = Vec::new();
    for l in var_links {
        let phi = shifted(&assigned[l.other.0], l.other.1);
        let img = if l.owner_is_target { phi.compose(&l.d2)? } else { l.d1.compose(&phi)? };
        key.extend_from_slice(img.matrix().data());
    }
    Ok(key)
}

fn build_vars(d1: &PeriodicDiagram, d2: &PeriodicDiagram) -> Result<(Vec<Position>, Vec<Var>)> {
    let positions = free_positions(d1.n());
    let big_n = d1.period();
    let ctx = d1.ctx();
    let order: HashMap<Position, usize> = positions.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let var_of = |p: Position| -> Option<(usize, bool)> {
        if p.alpha == p.beta || p == Position::new(big_n, 0) {
            None
        } else if p.beta == big_n {
            Some((order[&Position::new(p.alpha, 0)], true))
        } else {
            Some((order[&p], false))
        }
    };

    let mut links: Vec<Vec<Link>> = positions.iter().map(|_| Vec::new()).collect();
    for (p, step) in d1.unit_arrows() {
        let q = step.target(p);
        let (Some(src), Some(tgt)) = (var_of(p), var_of(q)) else {
            continue;
        };
        let (d1a, d2a) = (d1.stored_arrow(p, step).clone(), d2.stored_arrow(p, step).clone());
        let (owner, other, owner_is_target) = if tgt.0 > src.0 { (tgt, src, true) } else { (src, tgt, false) };
        links[owner.0].push(Link { d1: d1a, d2: d2a, other, owner_is_target, owner_shifted: owner.1 });
    }

    let mut vars = Vec::new();
    for (p, var_links) in positions.iter().zip(links) {
        let mut candidates = Vec::new();
        stable_hom_for_each(ctx, d1.object(*p), d2.object(*p), |f| {
            if is_stable_iso_by_residues(&f) {
                candidates.push(f);
            }
            true
        })?;
        let mut index: HashMap<Vec<i64>, Vec<u32>> = HashMap::new();
        for (i, c) in candidates.iter().enumerate() {
            index.entry(key_of(&var_links, c)?).or_default().push(i as u32);
        }
        vars.push(Var { candidates, links: var_links, index });
    }
    Ok((positions, vars))
}

struct Search<'a> {
    vars: &'a [Var],
    mode: SearchMode,
    budget: Option<u64>,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    /// Extends `assigned` depth-first, pushing complete families to `out`.
    /// Returns `false` when the search must stop.
    fn extend(&self, assigned: &mut Vec<StableMorphism>, out: &mut Vec<Vec<StableMorphism>>) -> Result<bool> {
        let depth = assigned.len();
        if depth == self.vars.len() {
            out.push(assigned.clone());
            return Ok(self.mode == SearchMode::All);
        }
        let var = &self.vars[depth];
        let key = required_key(&var.links, assigned)?;
        let Some(matches) = var.index.get(&key) else {
            return Ok(true);
        };
        for &i in matches {
            if self.exhausted.load(Ordering::Relaxed) {
                return Ok(false);
            }
            let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if self.budget.is_some_and(|b| visited > b) {
                self.exhausted.store(true, Ordering::Relaxed);
                return Ok(false);
            }
            assigned.push(var.candidates[i as usize].clone());
            let go_on = self.extend(assigned, out)?;
            assigned.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Searches for isomorphisms `d1 -> d2` of periodic diagrams.
///
/// Positions are assigned in [`free_positions`] order. Each position only
/// ranges over stably invertible maps, and a candidate is tried only if it
/// satisfies every unit-square constraint against positions assigned
/// before it (the column `0+/i` entering through the shifted component at
/// `i/0`). Candidates are pre-grouped by their constraint images, so each
/// step is a table lookup. Every returned family is re-checked with
/// [`check_diagram_iso`].
pub fn find_periodic_isos(d1: &PeriodicDiagram, d2: &PeriodicDiagram, options: SearchOptions) -> Result<IsoSearch> {
    if d1.n() != d2.n() || d1.ctx() != d2.ctx() {
        return contract("isomorphism search needs diagrams of the same shape over the same ring");
    }
    let (positions, vars) = build_vars(d1, d2)?;
    let candidates = positions.iter().zip(&vars).map(|(p, v)| (*p, v.candidates.len())).collect();
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let search =
        Search { vars: &vars, mode: options.mode, budget: options.budget, nodes: &nodes, exhausted: &exhausted };

    let families: Vec<Vec<StableMorphism>> = if options.parallel && !vars.is_empty() && vars[0].links.is_empty() {
        let branch = |c: &StableMorphism| -> Result<Vec<Vec<StableMorphism>>> {
            let mut out = Vec::new();
            if search.exhausted.load(Ordering::Relaxed) {
                return Ok(out);
            }
            let visited = search.nodes.fetch_add(1, Ordering::Relaxed) + 1;
            if search.budget.is_some_and(|b| visited > b) {
                search.exhausted.store(true, Ordering::Relaxed);
                return Ok(out);
            }
            search.extend(&mut vec![c.clone()], &mut out)?;
            Ok(out)
        };
        match options.mode {
            SearchMode::All => {
                let per_branch: Vec<Result<Vec<Vec<StableMorphism>>>> =
                    vars[0].candidates.par_iter().map(branch).collect();
                let mut all = Vec::new();
                for r in per_branch {
                    all.extend(r?);
                }
                all
            }
            SearchMode::First => {
                let hit = vars[0].candidates.par_iter().map(branch).find_map_first(|r| match r {
                    Ok(v) if v.is_empty() => None,
                    other => Some(other),
                });
                match hit {
                    Some(r) => r?.into_iter().take(1).collect(),
                    None => Vec::new(),
                }
            }
        }
    } else {
        let mut out = Vec::new();
        search.extend(&mut Vec::new(), &mut out)?;
        out
    };

    let mut isos = Vec::with_capacity(families.len());
    for family in families {
        let iso = DiagramIso::new(d1.n(), positions.iter().copied().zip(family).collect());
        if let Some(why) = check_diagram_iso(d1, d2, &iso)? {
            return Err(crate::error::OctaError::Internal(format!("search produced an invalid isomorphism: {why}")));
        }
        isos.push(iso);
    }
    let found_first = options.mode == SearchMode::First && !isos.is_empty();
    let status = if exhausted.load(Ordering::Relaxed) && !found_first {
        SearchStatus::Inconclusive
    } else {
        SearchStatus::Complete
    };
    Ok(IsoSearch { isos, status, nodes: nodes.load(Ordering::Relaxed), candidates })
}

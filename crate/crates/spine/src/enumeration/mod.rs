//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy).

mod table;

pub use table::{CosetTable, TableDefect};

use std::fmt;

use thiserror::Error;

use crate::homology::abelianization_order;
use crate::presentations::{
    build_family, shift_extension, CyclicPresentation, FamilySpec, PresentationError, TwoGeneratorPresentation, Word,
};

pub const DEFAULT_MAX_COSETS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("no relators given")]
    NoRelators,
    #[error("relator {index} has rank {found}, expected {expected}")]
    RankMismatch { index: usize, expected: usize, found: usize },
    #[error("relator {0} is not freely reduced")]
    NotReduced(usize),
    #[error("max_cosets must be at least 1")]
    ZeroCap,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Finite(u64),
    Exceeded,
}

impl Outcome {
    pub fn order(self) -> Option<u64> {
        match self {
            Outcome::Finite(n) => Some(n),
            Outcome::Exceeded => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Finite(n) => write!(f, "FINITE({n})"),
            Outcome::Exceeded => write!(f, "EXCEEDED"),
        }
    }
}

/// One step of the deduction log. Columns are `2g` for `x_g` and `2g+1` for its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Define { coset: usize, column: usize, new: usize },
    Deduce { coset: usize, column: usize, target: usize },
    Coincidence { keep: usize, kill: usize },
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TraceEvent::Define { coset, column, new } => write!(f, "define {coset}.{} = {new}", column_name(column)),
            TraceEvent::Deduce { coset, column, target } => write!(f, "deduce {coset}.{} = {target}", column_name(column)),
            TraceEvent::Coincidence { keep, kill } => write!(f, "coincidence {kill} -> {keep}"),
        }
    }
}

fn column_name(c: usize) -> String {
    if c % 2 == 0 {
        format!("x{}", c / 2)
    } else {
        format!("x{}^-1", c / 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Cosets ever defined.
    pub total: usize,
    pub max_live: usize,
    /// Live cosets when the run stopped.
    pub live: usize,
    pub coincidences: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub outcome: Outcome,
    pub strategy: Strategy,
    pub stats: EnumerationStats,
    /// Live coset count after each scanned coset.
    pub live_trace: Vec<usize>,
    pub log: Vec<TraceEvent>,
    /// The closed table, renumbered in creation order, when the run closed.
    pub table: Option<CosetTable>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_cosets: usize,
    pub trace: bool,
    pub strategy: Strategy,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { max_cosets: DEFAULT_MAX_COSETS, trace: false, strategy: Strategy::Hlt }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Relator scanning coset by coset, with a lookahead pass when the cap is hit.
    Hlt,
    /// Definitions in row order, each followed by a scan of all relator cycles through it.
    Felsch,
}

const NONE: u32 = u32::MAX;

struct Run {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    defined: usize,
    cap: usize,
    coincidences: usize,
    log: Option<Vec<TraceEvent>>,
    queue: Vec<u32>,
    /// Pending deductions; only kept by the Felsch strategy.
    deductions: Option<Vec<(u32, usize)>>,
}

struct Exceeded;

impl Run {
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.width + col]
    }

    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.width + col] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Exceeded> {
        if self.live >= self.cap {
            return Err(Exceeded);
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.width));
        self.live += 1;
        self.defined += 1;
        self.max_live = self.max_live.max(self.live);
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        self.push_deduction(c, col);
        if let Some(log) = &mut self.log {
            log.push(TraceEvent::Define { coset: c as usize, column: col, new: d as usize });
        }
        Ok(d)
    }

    fn push_deduction(&mut self, c: u32, col: usize) {
        if let Some(stack) = &mut self.deductions {
            stack.push((c, col));
        }
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.coincidences += 1;
        self.queue.push(kill);
        if let Some(log) = &mut self.log {
            log.push(TraceEvent::Coincidence { keep: keep as usize, kill: kill as usize });
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.width {
                let d = self.get(dead, col);
                if d == NONE {
                    continue;
                }
                if self.get(d, col ^ 1) == dead {
                    self.set(d, col ^ 1, NONE);
                }
                let mu = self.find(dead);
                let nu = self.find(d);
                let m_next = self.get(mu, col);
                if m_next != NONE {
                    self.merge(nu, m_next);
                } else {
                    let n_back = self.get(nu, col ^ 1);
                    if n_back != NONE {
                        self.merge(mu, n_back);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        self.push_deduction(mu, col);
                    }
                }
            }
        }
    }

    /// Traces `word` from `start` in both directions, defining cosets until the cycle closes
    /// (or, with `fill` off, only recording a deduction or coincidence).
    fn scan(&mut self, start: u32, word: &[usize], fill: bool) -> Result<(), Exceeded> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                let next = self.get(f, word[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j >= i as isize {
                let prev = self.get(b, word[j as usize] ^ 1);
                if prev == NONE {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = word[i];
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                self.push_deduction(f, col);
                if let Some(log) = &mut self.log {
                    log.push(TraceEvent::Deduce { coset: f as usize, column: col, target: b as usize });
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn process(&mut self, c: u32, words: &[Vec<usize>]) -> Result<(), Exceeded> {
        for w in words {
            self.scan(c, w, true)?;
            if !self.alive(c) {
                return Ok(());
            }
        }
        for col in 0..self.width {
            if self.get(c, col) == NONE {
                self.define(c, col)?;
            }
        }
        Ok(())
    }

    /// Felsch: scans every relator cycle through each pending deduction.
    fn consequences(&mut self, cycles: &[Vec<Vec<usize>>]) {
        while let Some((c, col)) = self.deductions.as_mut().and_then(Vec::pop) {
            if !self.alive(c) {
                continue;
            }
            for w in &cycles[col] {
                let _ = self.scan(c, w, false);
                if !self.alive(c) {
                    break;
                }
            }
            let d = self.get(c, col);
            if d == NONE {
                continue;
            }
            let d = self.find(d);
            for w in &cycles[col ^ 1] {
                let _ = self.scan(d, w, false);
                if !self.alive(d) {
                    break;
                }
            }
        }
    }

    fn first_gap(&self, from: u32) -> Option<(u32, usize)> {
        (from..self.parent.len() as u32)
            .filter(|&c| self.alive(c))
            .find_map(|c| (0..self.width).find(|&col| self.get(c, col) == NONE).map(|col| (c, col)))
    }

    /// Scans every live coset without defining, then drops dead rows. Returns the new index of `current`.
    fn lookahead(&mut self, current: u32, words: &[Vec<usize>]) -> u32 {
        let mut c = 0u32;
        while (c as usize) < self.parent.len() {
            if self.alive(c) {
                for w in words {
                    let _ = self.scan(c, w, false);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
        let mut index = vec![NONE; self.parent.len()];
        let mut next = 0u32;
        for c in 0..self.parent.len() as u32 {
            if self.alive(c) {
                index[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.width);
        for c in 0..self.parent.len() as u32 {
            if self.alive(c) {
                for col in 0..self.width {
                    let d = self.get(c, col);
                    table.push(if d == NONE { NONE } else { index[self.find(d) as usize] });
                }
            }
        }
        let resume = (current..self.parent.len() as u32)
            .find(|&c| self.alive(c))
            .map_or(next, |c| index[c as usize]);
        self.table = table;
        self.parent = (0..next).collect();
        resume
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| 2 * l.generator + usize::from(l.sign < 0)).collect()
}

fn hlt(run: &mut Run, words: &[Vec<usize>], live_trace: &mut Vec<usize>) -> bool {
    let mut current = 0u32;
    loop {
        if current as usize >= run.parent.len() {
            return true;
        }
        if !run.alive(current) {
            current += 1;
            continue;
        }
        if run.process(current, words).is_ok() {
            live_trace.push(run.live);
            current += 1;
            continue;
        }
        let before = run.live;
        current = run.lookahead(current, words);
        if before - run.live < (run.cap / 100).max(1) {
            return false;
        }
    }
}

fn felsch(run: &mut Run, cycles: &[Vec<Vec<usize>>], live_trace: &mut Vec<usize>) -> bool {
    let mut from = 0u32;
    loop {
        run.consequences(cycles);
        let gap = run.first_gap(from).or_else(|| run.first_gap(0));
        let Some((c, col)) = gap else {
            return true;
        };
        from = c;
        if run.define(c, col).is_err() {
            return false;
        }
        live_trace.push(run.live);
    }
}

/// Distinct cyclic conjugates of the relators and their inverses, grouped by first column.
fn relator_cycles(words: &[Vec<usize>], width: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); width];
    for w in words {
        let inv: Vec<usize> = w.iter().rev().map(|c| c ^ 1).collect();
        for base in [w, &inv] {
            for r in 0..base.len() {
                let conj: Vec<usize> = base[r..].iter().chain(&base[..r]).copied().collect();
                if !out[conj[0]].contains(&conj) {
                    out[conj[0]].push(conj);
                }
            }
        }
    }
    out
}

/// Enumerates the cosets of the trivial subgroup in the group presented by `relators`.
pub fn coset_enumerate(relators: &[Word], max_cosets: usize) -> Result<Enumeration, EnumerationError> {
    coset_enumerate_with(relators, EnumerationOptions { max_cosets, ..Default::default() })
}

pub fn coset_enumerate_with(relators: &[Word], opts: EnumerationOptions) -> Result<Enumeration, EnumerationError> {
    let first = relators.first().ok_or(EnumerationError::NoRelators)?;
    let rank = first.rank();
    for (index, w) in relators.iter().enumerate() {
        if w.rank() != rank {
            return Err(EnumerationError::RankMismatch { index, expected: rank, found: w.rank() });
        }
        if !w.is_freely_reduced() {
            return Err(EnumerationError::NotReduced(index));
        }
    }
    if opts.max_cosets == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let words: Vec<Vec<usize>> = relators.iter().map(columns).collect();
    let width = 2 * rank;
    let mut run = Run {
        width,
        table: vec![NONE; width],
        parent: vec![0],
        live: 1,
        max_live: 1,
        defined: 1,
        cap: opts.max_cosets,
        coincidences: 0,
        log: opts.trace.then(Vec::new),
        queue: Vec::new(),
        deductions: None,
    };
    let mut live_trace = Vec::new();
    let closed = match opts.strategy {
        Strategy::Hlt => hlt(&mut run, &words, &mut live_trace),
        Strategy::Felsch => {
            run.deductions = Some(Vec::new());
            felsch(&mut run, &relator_cycles(&words, width), &mut live_trace)
        }
    };
    let stats = EnumerationStats {
        total: run.defined,
        max_live: run.max_live,
        live: run.live,
        coincidences: run.coincidences,
    };
    let log = run.log.take().unwrap_or_default();
    if !closed {
        return Ok(Enumeration { outcome: Outcome::Exceeded, strategy: opts.strategy, stats, live_trace, log, table: None });
    }
    let alive: Vec<u32> = (0..run.parent.len() as u32).filter(|&c| run.alive(c)).collect();
    let mut index = vec![usize::MAX; run.parent.len()];
    for (i, &c) in alive.iter().enumerate() {
        index[c as usize] = i;
    }
    let rows = alive
        .iter()
        .map(|&c| (0..width).map(|col| index[run.find(run.get(c, col)) as usize]).collect())
        .collect();
    let table = CosetTable::new(rank, rows);
    Ok(Enumeration {
        outcome: Outcome::Finite(alive.len() as u64),
        strategy: opts.strategy,
        stats,
        live_trace,
        log,
        table: Some(table),
    })
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

/// Presentations whose relators can be fed to the enumerator.
pub trait Enumerable {
    fn enumeration_relators(&self) -> Vec<Word>;
}

impl Enumerable for CyclicPresentation {
    fn enumeration_relators(&self) -> Vec<Word> {
        self.relators().iter().map(Word::free_reduce).collect()
    }
}

impl Enumerable for TwoGeneratorPresentation {
    fn enumeration_relators(&self) -> Vec<Word> {
        self.relators().iter().map(Word::free_reduce).collect()
    }
}

/// Runs HLT, then Felsch if HLT hits the cap. The returned run is the last one attempted.
pub fn coset_enumerate_auto(relators: &[Word], max_cosets: usize, trace: bool) -> Result<Enumeration, EnumerationError> {
    let run = coset_enumerate_with(relators, EnumerationOptions { max_cosets, trace, strategy: Strategy::Hlt })?;
    if run.outcome != Outcome::Exceeded {
        return Ok(run);
    }
    coset_enumerate_with(relators, EnumerationOptions { max_cosets, trace, strategy: Strategy::Felsch })
}

pub fn order_of<P: Enumerable + ?Sized>(p: &P, max_cosets: usize) -> Result<Outcome, EnumerationError> {
    Ok(coset_enumerate_auto(&p.enumeration_relators(), max_cosets, false)?.outcome)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderComparison {
    Equal(u64),
    Different(u64, u64),
    /// At least one run hit the cap.
    Inconclusive,
}

impl OrderComparison {
    pub fn holds(&self) -> bool {
        matches!(self, OrderComparison::Equal(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub outcomes: (Outcome, Outcome),
    pub abelian_orders: (String, String),
    pub comparison: OrderComparison,
}

/// Compares |G(k,l,n,f1)| and |G(k,l,n,f2)|; both `f·k` must vanish mod `n`.
pub fn verify_order_independence(
    k: usize,
    l: usize,
    n: usize,
    f1: usize,
    f2: usize,
    max_cosets: usize,
) -> Result<IndependenceReport, EnumerationError> {
    for f in [f1, f2] {
        if n == 0 || (f * k) % n != 0 {
            return Err(EnumerationError::Precondition(format!("f k = {f}*{k} is not 0 mod {n}")));
        }
    }
    let run = |f: usize| -> Result<(Outcome, String), EnumerationError> {
        let p = build_family(FamilySpec::G { k, l, n, f })?;
        Ok((order_of(&p, max_cosets)?, abelianization_order(&p).to_string()))
    };
    let (a, aa) = run(f1)?;
    let (b, ab) = run(f2)?;
    let comparison = match (a, b) {
        (Outcome::Finite(x), Outcome::Finite(y)) if x == y => OrderComparison::Equal(x),
        (Outcome::Finite(x), Outcome::Finite(y)) => OrderComparison::Different(x, y),
        _ => OrderComparison::Inconclusive,
    };
    Ok(IndependenceReport { outcomes: (a, b), abelian_orders: (aa, ab), comparison })
}

/// |E| for the shift extension, which should be `n` times |G(k,l,n,f)|.
pub fn extension_order(k: usize, l: usize, n: usize, f: usize, max_cosets: usize) -> Result<Outcome, EnumerationError> {
    order_of(&shift_extension(k, l, n, f)?, max_cosets)
}

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use smallvec::SmallVec;

use super::Mode;

/// Matrix-unit generator `e[row,col]` at tensor site `site` (all 1-based).
///
/// The derived order is lexicographic on `(site, row, col)`, which is the
/// PBW straightening order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub site: u16,
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub fn new(site: usize, row: usize, col: usize) -> Self {
        Self { site: site as u16, row: row as u8, col: col as u8 }
    }

    pub fn site(&self) -> usize {
        self.site as usize
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    pub fn with_site(self, site: usize) -> Self {
        Self { site: site as u16, ..self }
    }

    /// `[self, other]` as at most two signed generators.
    pub(crate) fn bracket(self, other: Gen) -> SmallVec<[(Gen, i128); 2]> {
        let mut out = SmallVec::new();
        if self.site != other.site {
            return out;
        }
        if self.col == other.row {
            out.push((Gen { site: self.site, row: self.row, col: other.col }, 1));
        }
        if other.col == self.row {
            out.push((Gen { site: self.site, row: other.row, col: self.col }, -1));
        }
        // e_aa with e_aa: both terms present and cancel
        if out.len() == 2 && out[0].0 == out[1].0 {
            out.clear();
        }
        out
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{},{}]@{}", self.row, self.col, self.site)
    }
}

pub(crate) type Word = SmallVec<[Gen; 6]>;

/// A word in the generators. Every monomial stored in a polynomial is in
/// normal form (non-decreasing PBW order); the empty word is the unit.
///
/// Monomials compare by degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) Word);

impl Monomial {
    pub fn unit() -> Self {
        Self(Word::new())
    }

    pub fn from_gen(g: Gen) -> Self {
        let mut w = Word::new();
        w.push(g);
        Self(w)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Gen] {
        &self.0
    }

    pub fn max_site(&self) -> usize {
        self.0.iter().map(|g| g.site()).max().unwrap_or(0)
    }

    /// Number of occurrences of `g`.
    pub fn multiplicity(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&h| h == g).count()
    }

    /// The monomial with one occurrence of `g` removed (classical derivative).
    pub(crate) fn remove_one(&self, g: Gen) -> Option<Monomial> {
        let pos = self.0.iter().position(|&h| h == g)?;
        let mut w = self.0.clone();
        w.remove(pos);
        Some(Monomial(w))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Integer-coefficient expansion of a word product in normal form.
pub(crate) type Expansion = Vec<(Monomial, i128)>;

pub(crate) fn product(mode: Mode, a: &Monomial, b: &Monomial) -> Expansion {
    if b.is_unit() {
        return vec![(a.clone(), 1)];
    }
    if a.is_unit() {
        return vec![(b.clone(), 1)];
    }
    match mode {
        Mode::Classical => vec![(merge(a, b), 1)],
        Mode::Quantum => quantum_product(a, b),
    }
}

fn merge(a: &Monomial, b: &Monomial) -> Monomial {
    let mut w = Word::with_capacity(a.0.len() + b.0.len());
    let (mut i, mut j) = (0, 0);
    while i < a.0.len() && j < b.0.len() {
        if a.0[i] <= b.0[j] {
            w.push(a.0[i]);
            i += 1;
        } else {
            w.push(b.0[j]);
            j += 1;
        }
    }
    w.extend_from_slice(&a.0[i..]);
    w.extend_from_slice(&b.0[j..]);
    Monomial(w)
}

/// Site blocks commute, so the product factorises into per-site products
/// which are straightened independently and then concatenated in site order.
fn quantum_product(a: &Monomial, b: &Monomial) -> Expansion {
    // Fast path: already ordered.
    if a.0.last().unwrap() <= b.0.first().unwrap() {
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        return vec![(Monomial(w), 1)];
    }
    let mut sites: Vec<u16> = a.0.iter().chain(b.0.iter()).map(|g| g.site).collect();
    sites.sort_unstable();
    sites.dedup();

    let mut acc: Vec<(Word, i128)> = vec![(Word::new(), 1)];
    for site in sites {
        let left: Vec<(u8, u8)> =
            a.0.iter().filter(|g| g.site == site).map(|g| (g.row, g.col)).collect();
        let right: Vec<(u8, u8)> =
            b.0.iter().filter(|g| g.site == site).map(|g| (g.row, g.col)).collect();
        let block: Rc<Vec<(SiteWord, i128)>> = if left.is_empty() || right.is_empty() {
            let mut w = left;
            w.extend(right);
            Rc::new(vec![(w, 1)])
        } else {
            site_product(&left, &right)
        };
        let mut next = Vec::with_capacity(acc.len() * block.len());
        for (prefix, c) in &acc {
            for (sw, d) in block.iter() {
                let mut w = prefix.clone();
                w.extend(sw.iter().map(|&(row, col)| Gen { site, row, col }));
                next.push((w, c * d));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(w, c)| (Monomial(w), c)).collect()
}

type SiteWord = Vec<(u8, u8)>;
type WordExpansion = Rc<Vec<(SiteWord, i128)>>;
type Memo<K> = RefCell<HashMap<K, WordExpansion>>;

thread_local! {
    static SITE_PRODUCTS: Memo<(SiteWord, SiteWord)> =
        RefCell::new(HashMap::new());
    static WORD_TIMES_GEN: Memo<(SiteWord, (u8, u8))> =
        RefCell::new(HashMap::new());
}

/// Drops this thread's straightening memo tables.
pub fn clear_straightening_memo() {
    SITE_PRODUCTS.with(|m| m.borrow_mut().clear());
    WORD_TIMES_GEN.with(|m| m.borrow_mut().clear());
}

fn site_product(a: &SiteWord, b: &SiteWord) -> WordExpansion {
    let key = (a.clone(), b.clone());
    if let Some(hit) = SITE_PRODUCTS.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut current: HashMap<SiteWord, i128> = HashMap::new();
    current.insert(a.clone(), 1);
    for &g in b {
        let mut next: HashMap<SiteWord, i128> = HashMap::new();
        for (w, c) in current {
            for (v, d) in word_times_gen(&w, g).iter() {
                *next.entry(v.clone()).or_insert(0) += c * d;
            }
        }
        next.retain(|_, c| *c != 0);
        current = next;
    }
    let out = Rc::new(current.into_iter().collect::<Vec<_>>());
    SITE_PRODUCTS.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

fn site_bracket(x: (u8, u8), g: (u8, u8)) -> SmallVec<[((u8, u8), i128); 2]> {
    Gen { site: 1, row: x.0, col: x.1 }
        .bracket(Gen { site: 1, row: g.0, col: g.1 })
        .into_iter()
        .map(|(h, c)| ((h.row, h.col), c))
        .collect()
}

/// Normal form of `w · g` for a sorted single-site word `w`:
/// `w' x g = (w' g) x + w' [x, g]` whenever `x > g`.
fn word_times_gen(w: &SiteWord, g: (u8, u8)) -> WordExpansion {
    match w.last() {
        None => return Rc::new(vec![(vec![g], 1)]),
        Some(&x) if x <= g => {
            let mut v = w.clone();
            v.push(g);
            return Rc::new(vec![(v, 1)]);
        }
        _ => {}
    }
    let key = (w.clone(), g);
    if let Some(hit) = WORD_TIMES_GEN.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let x = *w.last().unwrap();
    let prefix: SiteWord = w[..w.len() - 1].to_vec();
    let mut acc: HashMap<SiteWord, i128> = HashMap::new();
    for (v, c) in word_times_gen(&prefix, g).iter() {
        for (u, d) in word_times_gen(v, x).iter() {
            *acc.entry(u.clone()).or_insert(0) += c * d;
        }
    }
    for (h, c) in site_bracket(x, g) {
        for (u, d) in word_times_gen(&prefix, h).iter() {
            *acc.entry(u.clone()).or_insert(0) += c * d;
        }
    }
    acc.retain(|_, c| *c != 0);
    let out = Rc::new(acc.into_iter().collect::<Vec<_>>());
    WORD_TIMES_GEN.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

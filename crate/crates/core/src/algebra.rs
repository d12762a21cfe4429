//! Modes of the Virasoro / Neveu-Schwarz algebra, formal words, and
//! rational linear combinations of words.
//!
//! The canonical relations are
//!   [L_m, L_n]       = (m-n) L_{m+n} + C/12 (m^3-m) delta_{m+n,0}
//!   [L_m, G_{r}]     = (m/2 - r) G_{m+r}
//!   {G_r, G_s}       = 2 L_{r+s} + C/3 (m^2+m) delta_{r+s,0},  r = m+1/2
//! with C central. C is treated as a scalar: every module in scope has a
//! fixed central charge.

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Virasoro,
    Ns,
}

impl Flavor {
    /// Virasoro admits only L-modes; NS admits both.
    pub fn admits(&self, m: Mode) -> bool {
        match self {
            Flavor::Virasoro => m.kind() == ModeKind::L,
            Flavor::Ns => true,
        }
    }

    pub fn check(&self, m: Mode) -> Result<()> {
        if self.admits(m) {
            Ok(())
        } else {
            Err(Error::FlavorMismatch { flavor: *self, mode: m })
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Virasoro => write!(f, "vir"),
            Flavor::Ns => write!(f, "ns"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeKind {
    L,
    G,
}

/// A single generator L_n or G_r. The index is stored doubled, so L-modes
/// carry even values and G-modes odd values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    index2: i64,
    kind: ModeKind,
}

impl Mode {
    pub fn l(n: i64) -> Mode {
        Mode {
            index2: 2 * n,
            kind: ModeKind::L,
        }
    }

    /// G-mode from a doubled index; `index2` must be odd (G_{index2/2}).
    pub fn g2(index2: i64) -> Mode {
        assert!(index2 % 2 != 0, "G-mode index must be a strict half-integer");
        Mode {
            index2,
            kind: ModeKind::G,
        }
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }

    /// Doubled index: L_n gives 2n, G_{k/2} gives k.
    pub fn index2(&self) -> i64 {
        self.index2
    }

    pub fn is_odd(&self) -> bool {
        self.kind == ModeKind::G
    }

    /// Doubled level contribution when acting on a graded vector
    /// (creation modes raise, annihilation modes lower).
    pub fn level2(&self) -> i64 {
        -self.index2
    }

    pub fn index_rat(&self) -> Rat {
        rat(self.index2, 2)
    }

    /// Bit-exact string form: `"L-2"`, `"G-3/2"`, `"L0"`, `"G1/2"`.
    pub fn to_name(&self) -> String {
        match self.kind {
            ModeKind::L => format!("L{}", self.index2 / 2),
            ModeKind::G => format!("G{}/2", self.index2),
        }
    }

    pub fn parse(s: &str) -> Result<Mode> {
        let err = || Error::Parse {
            what: "mode",
            input: s.to_string(),
        };
        let (kind, rest) = match s.split_at_checked(1) {
            Some(("L", rest)) => (ModeKind::L, rest),
            Some(("G", rest)) => (ModeKind::G, rest),
            _ => return Err(err()),
        };
        match kind {
            ModeKind::L => {
                let n: i64 = rest.parse().map_err(|_| err())?;
                Ok(Mode::l(n))
            }
            ModeKind::G => {
                let num = rest.strip_suffix("/2").ok_or_else(err)?;
                let k: i64 = num.parse().map_err(|_| err())?;
                if k % 2 == 0 {
                    return Err(err());
                }
                Ok(Mode::g2(k))
            }
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_name())
    }
}

/// A formal left-to-right product of modes. Words need not be normally
/// ordered; canonical ordering is a property of Verma-module vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Mode>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn single(m: Mode) -> Word {
        Word(vec![m])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Doubled total level (sum of negated doubled indices).
    pub fn level2(&self) -> i64 {
        self.0.iter().map(|m| m.level2()).sum()
    }

    pub fn g_count(&self) -> usize {
        self.0.iter().filter(|m| m.is_odd()).count()
    }

    pub fn l_count(&self) -> usize {
        self.0.len() - self.g_count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|m| serde_json::Value::String(m.to_name()))
                .collect(),
        )
    }
}

/// Word ordering: graded-lexicographic on the doubled absolute index
/// sequence, so at a fixed level the basis order is deterministic and
/// `L-1 L-1` precedes `L-2`. Kind and sign break any remaining ties.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |w: &Word| -> Vec<i64> { w.0.iter().map(|m| m.index2.abs()).collect() };
        key(self)
            .cmp(&key(other))
            .then_with(|| {
                let raw = |w: &Word| -> Vec<(ModeKind, i64)> {
                    w.0.iter().map(|m| (m.kind, m.index2)).collect()
                };
                raw(self).cmp(&raw(other))
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Parity of a word: number of G-modes mod 2.
pub fn parity(w: &Word) -> u8 {
    (w.g_count() % 2) as u8
}

/// A rational linear combination of formal words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Rat>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(w, num_traits::One::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rat)>) -> Self {
        let mut e = AlgebraElement::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Doubled level when all words agree on it.
    pub fn level2(&self) -> Result<Option<i64>> {
        let mut level = None;
        for w in self.terms.keys() {
            match level {
                None => level = Some(w.level2()),
                Some(l) if l != w.level2() => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(level)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rat::new(1.into(), 1.into()))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            use num_traits::{One, Signed};
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a.is_one() && !w.is_identity() {
                write!(f, "{w}")?;
            } else if w.is_identity() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} {w}")?;
            }
        }
        Ok(())
    }
}

/// The (super)bracket of two modes at central charge `central`: the
/// anticommutator when both are odd, the commutator otherwise. The result
/// is at most one mode plus a scalar multiple of the identity word.
pub fn bracket(flavor: Flavor, a: Mode, b: Mode, central: &Rat) -> Result<AlgebraElement> {
    flavor.check(a)?;
    flavor.check(b)?;
    let mut out = AlgebraElement::zero();
    match (a.kind, b.kind) {
        (ModeKind::L, ModeKind::L) => {
            let (m, n) = (a.index2 / 2, b.index2 / 2);
            out.add_term(Word::single(Mode::l(m + n)), rat(m - n, 1));
            if m + n == 0 {
                // C/12 (m^3 - m)
                out.add_term(Word::identity(), central * rat(m * m * m - m, 12));
            }
        }
        (ModeKind::L, ModeKind::G) => {
            // (m/2 - r) G_{m+r}
            let m2 = a.index2;
            let r2 = b.index2;
            out.add_term(Word::single(Mode::g2(m2 + r2)), rat(m2 - 2 * r2, 4));
        }
        (ModeKind::G, ModeKind::L) => {
            // [G_r, L_m] = -[L_m, G_r]
            let m2 = b.index2;
            let r2 = a.index2;
            out.add_term(Word::single(Mode::g2(m2 + r2)), -rat(m2 - 2 * r2, 4));
        }
        (ModeKind::G, ModeKind::G) => {
            out.add_term(Word::single(Mode::l((a.index2 + b.index2) / 2)), rat(2, 1));
            if a.index2 + b.index2 == 0 {
                // C/3 (m^2 + m) with r = m + 1/2
                let m = (a.index2 - 1) / 2;
                out.add_term(Word::identity(), central * rat(m * m + m, 3));
            }
        }
    }
    Ok(out)
}

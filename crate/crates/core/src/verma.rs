//! Verma modules M(c,h) for both flavors: graded canonical bases, the exact
//! mode action, the singular-vector solver, Shapovalov Gram matrices, and
//! the Kac weight curves.
//!
//! Canonical basis words have the shape
//!   G(-r_1) ... G(-r_a) L(-n_1) ... L(-n_b)
//! with r_1 > ... > r_a > 0 strict half-integers and n_1 >= ... >= n_b >= 1.
//! The mode action normal-orders against this shape by repeated use of the
//! (super)commutation relations.

use crate::algebra::{bracket, AlgebraElement, Flavor, Mode, ModeKind, Word};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::{rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// All canonical words of doubled level `level2`, sorted in the crate's
/// graded-lexicographic basis order.
pub fn level_basis(flavor: Flavor, level2: i64) -> Result<Vec<Word>> {
    if level2 < 0 || (flavor == Flavor::Virasoro && level2 % 2 != 0) {
        return Err(Error::BadLevel(level2));
    }
    let mut words = Vec::new();
    let g_parts: Vec<Vec<i64>> = match flavor {
        Flavor::Virasoro => vec![Vec::new()],
        Flavor::Ns => distinct_odd_sets(level2),
    };
    for g in g_parts {
        let g_sum: i64 = g.iter().sum();
        let rest2 = level2 - g_sum;
        if rest2 < 0 || rest2 % 2 != 0 {
            continue;
        }
        for l in partitions_desc(rest2 / 2) {
            let mut modes: Vec<Mode> = g.iter().map(|&s| Mode::g2(-s)).collect();
            modes.extend(l.iter().map(|&n| Mode::l(-n)));
            words.push(Word(modes));
        }
    }
    words.sort();
    Ok(words)
}

/// Partitions of `n` into weakly decreasing positive parts.
fn partitions_desc(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = max.min(n);
        while part >= 1 {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Strictly decreasing sets of odd doubled indices with sum <= bound2.
fn distinct_odd_sets(bound2: i64) -> Vec<Vec<i64>> {
    fn go(budget: i64, max_odd: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(prefix.clone());
        let mut part = if max_odd % 2 == 0 { max_odd - 1 } else { max_odd };
        while part >= 1 {
            if part <= budget {
                prefix.push(part);
                go(budget - part, part - 2, prefix, out);
                prefix.pop();
            }
            part -= 2;
        }
    }
    let mut out = Vec::new();
    go(bound2, bound2, &mut Vec::new(), &mut out);
    // parts are pushed largest-first, so each set is already canonical
    out
}

/// A graded element of M(c,h) expanded in the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VermaVector {
    pub flavor: Flavor,
    pub c: Rat,
    pub h: Rat,
    entries: BTreeMap<Word, Rat>,
}

impl VermaVector {
    pub fn zero(flavor: Flavor, c: Rat, h: Rat) -> Self {
        VermaVector {
            flavor,
            c,
            h,
            entries: BTreeMap::new(),
        }
    }

    /// The lowest-weight vector v_h.
    pub fn vacuum(flavor: Flavor, c: Rat, h: Rat) -> Self {
        let mut v = VermaVector::zero(flavor, c, h);
        v.add_entry(Word::identity(), Rat::one());
        v
    }

    pub fn basis_vector(flavor: Flavor, c: Rat, h: Rat, w: Word) -> Self {
        let mut v = VermaVector::zero(flavor, c, h);
        v.add_entry(w, Rat::one());
        v
    }

    pub fn add_entry(&mut self, w: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.entries.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.entries.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    /// Doubled level shared by all stored words, `None` for the zero vector.
    pub fn level2(&self) -> Option<i64> {
        self.entries.keys().next().map(|w| w.level2())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = VermaVector::zero(self.flavor, self.c.clone(), self.h.clone());
        if !s.is_zero() {
            out.entries = self.entries.iter().map(|(w, v)| (w.clone(), v * s)).collect();
        }
        out
    }

    pub fn add(&self, other: &VermaVector) -> Result<VermaVector> {
        if self.flavor != other.flavor || self.c != other.c || self.h != other.h {
            return Err(Error::ModuleMismatch);
        }
        let mut out = self.clone();
        for (w, v) in other.entries() {
            out.add_entry(w.clone(), v.clone());
        }
        Ok(out)
    }

    /// `self = ratio * other` for some nonzero rational `ratio`.
    pub fn proportionality(&self, other: &VermaVector) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let (w, lead) = self.entries.iter().next()?;
        let other_lead = other.entries.get(w)?;
        let ratio = lead / other_lead;
        if *self == other.scale(&ratio) {
            Some(ratio)
        } else {
            None
        }
    }

    /// The formal algebra element with the same words and coefficients.
    pub fn to_element(&self) -> AlgebraElement {
        AlgebraElement::from_terms(self.entries.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let level = self
            .level2()
            .map(|l| serde_json::Value::String(rat(l, 2).to_string()))
            .unwrap_or(serde_json::Value::Null);
        serde_json::json!({
            "flavor": self.flavor.to_string(),
            "c": self.c.to_string(),
            "h": self.h.to_string(),
            "level": level,
            "entries": self.entries.iter().map(|(w, c)| serde_json::json!({
                "word": w.to_json(),
                "coeff": c.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

/// Is `m w` already canonical for a canonical `w`?
fn can_prepend(m: Mode, w: &[Mode]) -> bool {
    if m.index2() >= 0 {
        return false;
    }
    match w.first() {
        None => true,
        Some(m0) => match (m.kind(), m0.kind()) {
            (ModeKind::L, ModeKind::L) => m.index2() <= m0.index2(),
            (ModeKind::L, ModeKind::G) => false,
            (ModeKind::G, ModeKind::L) => true,
            (ModeKind::G, ModeKind::G) => m.index2() < m0.index2(),
        },
    }
}

/// Memo for one (flavor, c, h) context: straightening the same mode
/// against the same suffix recurs constantly, so results are shared
/// within a top-level operation.
type ActMemo = std::collections::HashMap<(Mode, Word), BTreeMap<Word, Rat>>;

/// Normal-orders `m` against the canonical word `w` inside M(c,h).
fn act_mode_on_word(
    flavor: Flavor,
    c: &Rat,
    h: &Rat,
    m: Mode,
    w: &[Mode],
    memo: &mut ActMemo,
) -> Result<BTreeMap<Word, Rat>> {
    flavor.check(m)?;
    let key = (m, Word(w.to_vec()));
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let mut out: BTreeMap<Word, Rat> = BTreeMap::new();
    fn push(out: &mut BTreeMap<Word, Rat>, word: Word, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match out.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    if let Some((&m0, rest)) = w.split_first() {
        if can_prepend(m, w) {
            let mut modes = Vec::with_capacity(w.len() + 1);
            modes.push(m);
            modes.extend_from_slice(w);
            push(&mut out, Word(modes), Rat::one());
        } else if m == m0 && m.is_odd() {
            // equal odd modes square to half their anticommutator
            let br = bracket(flavor, m, m0, c)?;
            for (bw, bc) in br.terms() {
                let half = bc * rat(1, 2);
                if bw.is_identity() {
                    push(&mut out, Word(rest.to_vec()), half);
                } else {
                    for (word, coeff) in
                        act_mode_on_word(flavor, c, h, bw.modes()[0], rest, memo)?
                    {
                        push(&mut out, word, &half * &coeff);
                    }
                }
            }
        } else {
            // m m0 = sign * m0 m + [m, m0]
            let br = bracket(flavor, m, m0, c)?;
            let sign = if m.is_odd() && m0.is_odd() {
                -Rat::one()
            } else {
                Rat::one()
            };
            for (inner_word, inner_coeff) in act_mode_on_word(flavor, c, h, m, rest, memo)? {
                for (word, coeff) in
                    act_mode_on_word(flavor, c, h, m0, inner_word.modes(), memo)?
                {
                    push(&mut out, word, &sign * &inner_coeff * &coeff);
                }
            }
            for (bw, bc) in br.terms() {
                if bw.is_identity() {
                    push(&mut out, Word(rest.to_vec()), bc.clone());
                } else {
                    for (word, coeff) in
                        act_mode_on_word(flavor, c, h, bw.modes()[0], rest, memo)?
                    {
                        push(&mut out, word, bc * &coeff);
                    }
                }
            }
        }
    } else {
        // action on the lowest-weight vector
        match m.index2().cmp(&0) {
            std::cmp::Ordering::Less => push(&mut out, Word::single(m), Rat::one()),
            std::cmp::Ordering::Equal => push(&mut out, Word::identity(), h.clone()),
            std::cmp::Ordering::Greater => {}
        }
    }
    memo.insert(key, out.clone());
    Ok(out)
}

fn apply_mode_memo(m: Mode, v: &VermaVector, memo: &mut ActMemo) -> Result<VermaVector> {
    v.flavor.check(m)?;
    let mut out = VermaVector::zero(v.flavor, v.c.clone(), v.h.clone());
    for (w, coeff) in v.entries() {
        for (word, c2) in act_mode_on_word(v.flavor, &v.c, &v.h, m, w.modes(), memo)? {
            out.add_entry(word, coeff * &c2);
        }
    }
    Ok(out)
}

/// Exact action of a single mode, re-expressed in the canonical basis.
pub fn apply_mode(m: Mode, v: &VermaVector) -> Result<VermaVector> {
    apply_mode_memo(m, v, &mut ActMemo::new())
}

fn apply_element_memo(
    e: &AlgebraElement,
    v: &VermaVector,
    memo: &mut ActMemo,
) -> Result<VermaVector> {
    let mut out = VermaVector::zero(v.flavor, v.c.clone(), v.h.clone());
    for (word, coeff) in e.terms() {
        let mut cur = v.clone();
        for &m in word.modes().iter().rev() {
            cur = apply_mode_memo(m, &cur, memo)?;
            if cur.is_zero() {
                break;
            }
        }
        out = out.add(&cur.scale(coeff))?;
    }
    Ok(out)
}

/// Action of a formal element: each word is applied right-to-left.
pub fn apply_element(e: &AlgebraElement, v: &VermaVector) -> Result<VermaVector> {
    apply_element_memo(e, v, &mut ActMemo::new())
}

/// Annihilation generators for the positive subalgebra: {L(1), L(2)} for
/// Virasoro, {G(1/2), G(3/2)} for NS. These generate all positive modes,
/// which the test suite double-checks by exhaustive annihilation.
fn annihilation_generators(flavor: Flavor) -> Vec<Mode> {
    match flavor {
        Flavor::Virasoro => vec![Mode::l(1), Mode::l(2)],
        Flavor::Ns => vec![Mode::g2(1), Mode::g2(3)],
    }
}

/// Exact basis of the level-`level2/2` singular space of M(c,h): all
/// vectors at that level annihilated by the positive subalgebra. Each
/// basis vector has its first nonzero coefficient (in basis order) equal
/// to 1. Empty when there is no singular vector.
pub fn singular_vectors(flavor: Flavor, c: &Rat, h: &Rat, level2: i64) -> Result<Vec<VermaVector>> {
    if level2 <= 0 {
        return Err(Error::BadLevel(level2));
    }
    let basis = level_basis(flavor, level2)?;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut memo = ActMemo::new();
    for gen in annihilation_generators(flavor) {
        let target_level2 = level2 + gen.level2();
        if target_level2 < 0 {
            continue;
        }
        let target = level_basis(flavor, target_level2)?;
        let index: BTreeMap<&Word, usize> =
            target.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut block = vec![vec![Rat::zero(); basis.len()]; target.len()];
        for (j, w) in basis.iter().enumerate() {
            let image = act_mode_on_word(flavor, c, h, gen, w.modes(), &mut memo)?;
            for (word, coeff) in image {
                let i = *index.get(&word).expect("image stays in the graded basis");
                block[i][j] = coeff;
            }
        }
        rows.extend(block);
    }
    let kernel = RatMatrix::from_rows(rows).nullspace();
    Ok(kernel
        .into_iter()
        .map(|coords| {
            let mut v = VermaVector::zero(flavor, c.clone(), h.clone());
            for (w, coeff) in basis.iter().zip(coords) {
                v.add_entry(w.clone(), coeff);
            }
            v
        })
        .collect())
}

/// Shapovalov Gram matrix of the level-`level2/2` basis, with the adjoint
/// L(-n) -> L(n), G(-r) -> G(r) and <v_h, v_h> = 1.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub level2: i64,
    pub basis: Vec<Word>,
    pub entries: RatMatrix,
}

impl GramMatrix {
    pub fn det(&self) -> Rat {
        self.entries.det()
    }
}

fn adjoint(w: &Word) -> Word {
    Word(
        w.modes()
            .iter()
            .rev()
            .map(|m| match m.kind() {
                ModeKind::L => Mode::l(-m.index2() / 2),
                ModeKind::G => Mode::g2(-m.index2()),
            })
            .collect(),
    )
}

pub fn gram_matrix(flavor: Flavor, c: &Rat, h: &Rat, level2: i64) -> Result<GramMatrix> {
    if level2 < 0 {
        return Err(Error::BadLevel(level2));
    }
    let basis = level_basis(flavor, level2)?;
    let n = basis.len();
    let mut m = RatMatrix::zeros(n, n);
    let mut memo = ActMemo::new();
    for (j, wj) in basis.iter().enumerate() {
        let vj = VermaVector::basis_vector(flavor, c.clone(), h.clone(), wj.clone());
        for (i, wi) in basis.iter().enumerate() {
            let paired =
                apply_element_memo(&AlgebraElement::from_word(adjoint(wi)), &vj, &mut memo)?;
            m.set(i, j, paired.coeff(&Word::identity()));
        }
    }
    Ok(GramMatrix {
        level2,
        basis,
        entries: m,
    })
}

/// A point on the Kac reducibility curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KacPoint {
    pub flavor: Flavor,
    pub p: u32,
    pub q: u32,
    pub t: Rat,
    pub c: Rat,
    pub h: Rat,
}

impl KacPoint {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor.to_string(),
            "p": self.p,
            "q": self.q,
            "t": self.t.to_string(),
            "c": self.c.to_string(),
            "h": self.h.to_string(),
        })
    }
}

/// Evaluates the Kac curves:
///   Virasoro: c(t) = 13 - 6t - 6/t,
///             h_{p,q}(t) = (1-p^2)/4 t^{-1} - (1-pq)/2 + (1-q^2)/4 t
///   NS:       c(t) = 15/2 + 3/t + 3t,
///             h_{p,q}(t) = (1-p^2)/8 t^{-1} + (1-pq)/4 + (1-q^2)/8 t
/// NS requires p = q mod 2.
pub fn kac_data(flavor: Flavor, p: u32, q: u32, t: &Rat) -> Result<KacPoint> {
    if t.is_zero() {
        return Err(Error::ZeroKacParameter);
    }
    let t_inv = t.recip();
    let (p_, q_) = (p as i64, q as i64);
    let (c, h) = match flavor {
        Flavor::Virasoro => (
            rat(13, 1) - rat(6, 1) * t - rat(6, 1) * &t_inv,
            rat(1 - p_ * p_, 4) * &t_inv - rat(1 - p_ * q_, 2) + rat(1 - q_ * q_, 4) * t,
        ),
        Flavor::Ns => {
            if !(p + q).is_multiple_of(2) {
                return Err(Error::KacParity(p, q));
            }
            (
                rat(15, 2) + rat(3, 1) * &t_inv + rat(3, 1) * t,
                rat(1 - p_ * p_, 8) * &t_inv + rat(1 - p_ * q_, 4) + rat(1 - q_ * q_, 8) * t,
            )
        }
    };
    Ok(KacPoint {
        flavor,
        p,
        q,
        t: t.clone(),
        c,
        h,
    })
}

/// Central charge of the degenerate family: 1 for Virasoro, 3/2 for NS.
pub fn central_charge(flavor: Flavor) -> Rat {
    match flavor {
        Flavor::Virasoro => rat(1, 1),
        Flavor::Ns => rat(3, 2),
    }
}

/// The adopted degenerate weight and doubled singular level for a module
/// label: Virasoro label m has h = m^2/4 with singular level m+1; NS odd
/// label q has h = (q-1)^2/8 with singular level q/2.
pub fn degenerate_point(flavor: Flavor, label: u32) -> Result<(Rat, i64)> {
    let l = label as i64;
    match flavor {
        Flavor::Virasoro => Ok((rat(l * l, 4), 2 * (l + 1))),
        Flavor::Ns => {
            if label.is_multiple_of(2) {
                return Err(Error::BadLabel(l));
            }
            Ok((rat((l - 1) * (l - 1), 8), l))
        }
    }
}

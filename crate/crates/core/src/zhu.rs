//! Zhu-bimodule projections, fusion polynomials, the density-module
//! oracle, fusion coefficients, and the fusion ring.
//!
//! Projection into `C[x,y]` reduces a word of creation modes left to
//! right:
//!
//! ```text
//! [L(-n) v]              = (n y - x + wt(v)) [v]
//! [G(-r) v]              = [G(-1/2) v]
//! [G(-a) G(-m-1/2) v]    = ((2m+1) y - x + wt(v)) [v]
//! [G(-1/2) L(-n) v]      = (n y - x + wt(v) + n/2) [G(-1/2) v]
//! ```
//!
//! where wt(v) is the exact weight of everything to the right. The last
//! rule pushes an unpaired G(-1/2) through the L-block; the image of an
//! odd-parity word ends on the class `[G(-1/2) v]`, the odd component.
//!
//! A fusion channel is admitted only when the specialized polynomial
//! vanishes at the candidate weight in BOTH argument orders; one-sided
//! roots are discarded.

use crate::algebra::{AlgebraElement, Flavor, Mode, ModeKind};
use crate::error::{Error, Result};
use crate::poly::{rational_roots, Poly1, Poly2};
use crate::rational::{rat, Rat};
use crate::verma::{apply_mode, central_charge, degenerate_point, singular_vectors};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::{Mutex, OnceLock};

/// Image of an element in the Zhu bimodule: the even component is the
/// coefficient of `[v]`, the odd component the coefficient of
/// `[G(-1/2) v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZhuImage {
    pub flavor: Flavor,
    pub even: Poly2,
    pub odd: Poly2,
}

fn creation_l_index(m: Mode, flavor: Flavor) -> Result<i64> {
    match m.kind() {
        ModeKind::G if flavor == Flavor::Virasoro => Err(Error::GModeInVirasoroProjection),
        _ if m.index2() >= 0 => Err(Error::PositiveModeInProjection),
        ModeKind::L => Ok(-m.index2() / 2),
        ModeKind::G => Ok(0),
    }
}

/// Projects a product of negative L-modes into `C[x,y]` over a lowest
/// weight h1, one factor `(n y - x + wt)` per mode.
pub fn zhu_project_vir(e: &AlgebraElement, h1: &Rat) -> Result<Poly2> {
    let mut out = Poly2::zero();
    for (word, coeff) in e.terms() {
        let mut image = Poly2::one();
        let modes = word.modes();
        for (i, &m) in modes.iter().enumerate() {
            if m.kind() != ModeKind::L {
                return Err(Error::GModeInVirasoroProjection);
            }
            let n = creation_l_index(m, Flavor::Virasoro)?;
            let right2: i64 = modes[i + 1..].iter().map(|mm| mm.level2()).sum();
            let wt = h1 + rat(right2, 2);
            image = &image * &Poly2::zhu_factor(&rat(n, 1), &wt);
        }
        out = &out + &image.scale(coeff);
    }
    Ok(out)
}

/// Projects a word of negative modes into the two-component NS bimodule.
pub fn zhu_project_ns(e: &AlgebraElement, h1: &Rat) -> Result<ZhuImage> {
    let mut even = Poly2::zero();
    let mut odd = Poly2::zero();
    for (word, coeff) in e.terms() {
        for m in word.modes() {
            if m.index2() >= 0 {
                return Err(Error::PositiveModeInProjection);
            }
        }
        let mut queue: VecDeque<Mode> = word.modes().iter().copied().collect();
        let mut image = Poly2::one();
        let mut lands_odd = false;
        while let Some(m) = queue.pop_front() {
            let rest_wt = |q: &VecDeque<Mode>| -> Rat {
                h1 + rat(q.iter().map(|mm| mm.level2()).sum::<i64>(), 2)
            };
            match m.kind() {
                ModeKind::L => {
                    let n = -m.index2() / 2;
                    let wt = rest_wt(&queue);
                    image = &image * &Poly2::zhu_factor(&rat(n, 1), &wt);
                }
                ModeKind::G => match queue.front().map(|f| f.kind()) {
                    Some(ModeKind::G) => {
                        // leading pair: the factor comes from the inner mode
                        let inner = queue.pop_front().unwrap();
                        let two_m_plus_one = -inner.index2();
                        let wt = rest_wt(&queue);
                        image = &image * &Poly2::zhu_factor(&rat(two_m_plus_one, 1), &wt);
                    }
                    Some(ModeKind::L) => {
                        // unpaired G: normalize to G(-1/2), push it through
                        // the next L-mode
                        let l = queue.pop_front().unwrap();
                        let n = -l.index2() / 2;
                        let wt = rest_wt(&queue) + rat(n, 2);
                        image = &image * &Poly2::zhu_factor(&rat(n, 1), &wt);
                        queue.push_front(Mode::g2(-1));
                    }
                    None => {
                        lands_odd = true;
                    }
                },
            }
        }
        if lands_odd {
            odd = &odd + &image.scale(coeff);
        } else {
            even = &even + &image.scale(coeff);
        }
    }
    Ok(ZhuImage {
        flavor: Flavor::Ns,
        even,
        odd,
    })
}

struct ImageCache {
    vir: HashMap<u32, Poly2>,
    ns: HashMap<u32, (Poly2, Poly2)>,
}

fn cache() -> &'static Mutex<ImageCache> {
    static CACHE: OnceLock<Mutex<ImageCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(ImageCache {
            vir: HashMap::new(),
            ns: HashMap::new(),
        })
    })
}

/// Bivariate Zhu image of the label-m Virasoro singular vector, memoized.
fn vir_image(m: u32) -> Result<Poly2> {
    if let Some(p) = cache().lock().unwrap().vir.get(&m) {
        return Ok(p.clone());
    }
    let c = central_charge(Flavor::Virasoro);
    let (h, level2) = degenerate_point(Flavor::Virasoro, m)?;
    let sv = singular_vectors(Flavor::Virasoro, &c, &h, level2)?;
    assert_eq!(sv.len(), 1, "M(1,{h}) must have a unique singular vector");
    let image = zhu_project_vir(&sv[0].to_element(), &h)?;
    cache().lock().unwrap().vir.insert(m, image.clone());
    Ok(image)
}

/// Bivariate images (odd of s, even of G(-1/2)s) for the NS label q,
/// memoized.
fn ns_images(q: u32) -> Result<(Poly2, Poly2)> {
    if let Some(p) = cache().lock().unwrap().ns.get(&q) {
        return Ok(p.clone());
    }
    let c = central_charge(Flavor::Ns);
    let (h, level2) = degenerate_point(Flavor::Ns, q)?;
    let sv = singular_vectors(Flavor::Ns, &c, &h, level2)?;
    assert_eq!(sv.len(), 1, "M(3/2,{h}) must have a unique singular vector");
    let img1 = zhu_project_ns(&sv[0].to_element(), &h)?;
    debug_assert!(img1.even.is_zero(), "odd singular vector has even image");
    let gs = apply_mode(Mode::g2(-1), &sv[0])?;
    let img2 = zhu_project_ns(&gs.to_element(), &h)?;
    debug_assert!(img2.odd.is_zero(), "even vector has odd image");
    let pair = (img1.odd, img2.even);
    cache().lock().unwrap().ns.insert(q, pair.clone());
    Ok(pair)
}

/// The fusion polynomial of L(1,m^2/4) x L(1,n^2/4): the Zhu image of the
/// label-m singular vector specialized at y = n^2/4. Degree m+1; defined
/// up to the solver's normalization.
pub fn fusion_poly_vir(m: u32, n: u32) -> Result<Poly1> {
    if m == 0 || n == 0 {
        return Err(Error::BadLabel(m.min(n) as i64));
    }
    let image = vir_image(m)?;
    Ok(image.specialize_y(&rat((n as i64) * (n as i64), 4)))
}

/// Independent oracle: the action of `e` on w_0 in the density module
/// F_{lambda,mu} with lambda = -n^2/4 and mu = n^2/4 + m^2/4 - x. The
/// multiplier of L(k) on w_r is (mu + r + lambda (k+1)) with w_r -> w_{r-k},
/// applied here with the mode's literal index k = -j.
pub fn density_project_vir(e: &AlgebraElement, m: u32, n: u32) -> Result<Poly1> {
    let (m, n) = (m as i64, n as i64);
    let lambda = rat(-n * n, 4);
    let mu = &Poly1::from_coeffs(vec![rat(n * n, 4) + rat(m * m, 4), -Rat::one()]);
    let mut out: BTreeMap<i64, Poly1> = BTreeMap::new();
    for (word, coeff) in e.terms() {
        let mut index: i64 = 0;
        let mut poly = Poly1::constant(coeff.clone());
        for md in word.modes().iter().rev() {
            let j = creation_l_index(*md, Flavor::Virasoro)?;
            // literal mode index k = -j, so lambda (k+1) = lambda (1-j)
            let shift = rat(index, 1) + &lambda * rat(1 - j, 1);
            poly = &poly * &(mu + &Poly1::constant(shift));
            index += j;
        }
        let slot = out.entry(index).or_insert_with(Poly1::zero);
        *slot = &*slot + &poly;
    }
    out.retain(|_, p| !p.is_zero());
    match out.len() {
        0 => Ok(Poly1::zero()),
        1 => Ok(out.into_values().next().unwrap()),
        _ => Err(Error::Inhomogeneous),
    }
}

/// The pair (Q1, Q2) for NS labels (q, r): Q1 is the odd Zhu image of the
/// label-q singular vector s, Q2 the even image of G(-1/2)s, both taken
/// at y = h_{1,r} = (r-1)^2/8.
pub fn fusion_polys_ns(q: u32, r: u32) -> Result<(Poly1, Poly1)> {
    if q.is_multiple_of(2) || r.is_multiple_of(2) || q == 0 || r == 0 {
        return Err(Error::BadLabel(if q.is_multiple_of(2) { q } else { r } as i64));
    }
    let (odd_img, even_img) = ns_images(q)?;
    let y = ns_weight(r);
    Ok((odd_img.specialize_y(&y), even_img.specialize_y(&y)))
}

fn ns_weight(s: u32) -> Rat {
    let s = s as i64;
    rat((s - 1) * (s - 1), 8)
}

/// Recovers r from a root r^2/4 of a Virasoro fusion polynomial.
fn vir_label_of_root(root: &Rat) -> Option<u32> {
    if root.is_negative() {
        return None;
    }
    let scaled = root * Rat::from_integer(BigInt::from(4));
    if !scaled.is_integer() {
        return None;
    }
    let k = scaled.to_integer();
    let r = k.sqrt();
    if &r * &r == k {
        r.to_u32()
    } else {
        None
    }
}

/// Recovers odd s from a root (s-1)^2/8 of an NS fusion polynomial.
fn ns_label_of_root(root: &Rat) -> Option<u32> {
    if root.is_negative() {
        return None;
    }
    let scaled = root * Rat::from_integer(BigInt::from(8));
    if !scaled.is_integer() {
        return None;
    }
    let k = scaled.to_integer();
    let r = k.sqrt();
    if &r * &r != k {
        return None;
    }
    let s = r.to_u32()? + 1;
    if s % 2 == 1 {
        Some(s)
    } else {
        None
    }
}

/// Parity tag of an NS fusion channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChannelParity {
    Even,
    Odd,
}

impl ChannelParity {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelParity::Even => "even",
            ChannelParity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelData {
    pub multiplicity: u32,
    pub parity: Option<ChannelParity>,
}

/// Admissible third labels of one fusion product, with multiplicities and
/// (NS only) parity tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionChannels {
    pub flavor: Flavor,
    pub labels: BTreeMap<u32, ChannelData>,
}

impl FusionChannels {
    pub fn label_set(&self) -> Vec<u32> {
        self.labels.keys().copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let key = match self.flavor {
            Flavor::Virasoro => "r",
            Flavor::Ns => "s",
        };
        serde_json::Value::Array(
            self.labels
                .iter()
                .map(|(l, d)| {
                    let mut obj = serde_json::json!({ key: l });
                    if let Some(p) = d.parity {
                        obj["parity"] = serde_json::Value::String(p.name().into());
                    }
                    obj
                })
                .collect(),
        )
    }
}

/// Roots of `p` translated to fusion labels, keeping multiplicities.
fn labeled_roots(p: &Poly1, flavor: Flavor) -> Result<BTreeMap<u32, u32>> {
    let mut out = BTreeMap::new();
    if p.degree().is_none_or(|d| d == 0) {
        // constant polynomials carry no channels
        return Ok(out);
    }
    for (root, mult) in rational_roots(p)? {
        let label = match flavor {
            Flavor::Virasoro => vir_label_of_root(&root),
            Flavor::Ns => ns_label_of_root(&root),
        };
        if let Some(l) = label {
            *out.entry(l).or_insert(0) += mult;
        }
    }
    Ok(out)
}

fn intersect(a: BTreeMap<u32, u32>, b: BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
    a.into_iter()
        .filter_map(|(k, m)| b.get(&k).map(|m2| (k, m.min(*m2))))
        .collect()
}

/// Channels of L(1,m^2/4) x L(1,n^2/4) by two-sided root intersection.
pub fn fusion_channels_vir(m: u32, n: u32) -> Result<FusionChannels> {
    let forward = labeled_roots(&fusion_poly_vir(m, n)?, Flavor::Virasoro)?;
    let backward = labeled_roots(&fusion_poly_vir(n, m)?, Flavor::Virasoro)?;
    let labels = intersect(forward, backward)
        .into_iter()
        .map(|(l, mult)| {
            (
                l,
                ChannelData {
                    multiplicity: mult,
                    parity: None,
                },
            )
        })
        .collect();
    Ok(FusionChannels {
        flavor: Flavor::Virasoro,
        labels,
    })
}

/// Channels of L(3/2,h_{1,q}) x L(3/2,h_{1,r}): odd channels from Q1 in
/// both orders, even channels from Q2 in both orders.
pub fn fusion_channels_ns(q: u32, r: u32) -> Result<FusionChannels> {
    let (q1_fwd, q2_fwd) = fusion_polys_ns(q, r)?;
    let (q1_bwd, q2_bwd) = fusion_polys_ns(r, q)?;
    let odd = intersect(
        labeled_roots(&q1_fwd, Flavor::Ns)?,
        labeled_roots(&q1_bwd, Flavor::Ns)?,
    );
    let even = intersect(
        labeled_roots(&q2_fwd, Flavor::Ns)?,
        labeled_roots(&q2_bwd, Flavor::Ns)?,
    );
    let mut labels = BTreeMap::new();
    for (set, parity) in [(even, ChannelParity::Even), (odd, ChannelParity::Odd)] {
        for (l, mult) in set {
            let prev = labels.insert(
                l,
                ChannelData {
                    multiplicity: mult,
                    parity: Some(parity),
                },
            );
            debug_assert!(prev.is_none(), "channel {l} in both parity sectors");
        }
    }
    Ok(FusionChannels {
        flavor: Flavor::Ns,
        labels,
    })
}

/// 1 iff r^2/4 is a root of the fusion polynomial in both argument orders.
pub fn fusion_coeff_vir(m: u32, n: u32, r: u32) -> Result<u8> {
    if m == 0 || n == 0 {
        return Err(Error::BadLabel(0));
    }
    Ok(u8::from(
        fusion_channels_vir(m, n)?.labels.contains_key(&r),
    ))
}

/// (1, parity) iff h_{1,s} is a root of Q1 (odd) or Q2 (even) in both
/// argument orders; (0, None) otherwise.
pub fn fusion_coeff_ns(q: u32, r: u32, s: u32) -> Result<(u8, Option<ChannelParity>)> {
    if s.is_multiple_of(2) {
        return Err(Error::BadLabel(s as i64));
    }
    let channels = fusion_channels_ns(q, r)?;
    Ok(match channels.labels.get(&s) {
        Some(data) => (1, data.parity),
        None => (0, None),
    })
}

/// Structure constants of the fusion ring for all labels up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTable {
    pub flavor: Flavor,
    pub bound: u32,
    products: BTreeMap<(u32, u32), FusionChannels>,
}

impl FusionTable {
    /// Label set of the table: 0..=bound for Virasoro (0 the unit), odd
    /// 1..=bound for NS (1 the unit).
    pub fn labels(&self) -> Vec<u32> {
        match self.flavor {
            Flavor::Virasoro => (0..=self.bound).collect(),
            Flavor::Ns => (1..=self.bound).step_by(2).collect(),
        }
    }

    pub fn unit_label(&self) -> u32 {
        match self.flavor {
            Flavor::Virasoro => 0,
            Flavor::Ns => 1,
        }
    }

    pub fn channels(&self, a: u32, b: u32) -> Result<&FusionChannels> {
        let key = (a.min(b), a.max(b));
        self.products
            .get(&key)
            .ok_or(Error::IncompleteTable(a, b))
    }

    pub fn constant(&self, a: u32, b: u32, r: u32) -> Result<u8> {
        Ok(u8::from(self.channels(a, b)?.labels.contains_key(&r)))
    }

    pub fn products(&self) -> impl Iterator<Item = (&(u32, u32), &FusionChannels)> {
        self.products.iter()
    }

    /// Flips one structure constant; only used as a negative control.
    pub fn toggle_channel(&mut self, a: u32, b: u32, r: u32) {
        let key = (a.min(b), a.max(b));
        if let Some(ch) = self.products.get_mut(&key) {
            if ch.labels.remove(&r).is_none() {
                ch.labels.insert(
                    r,
                    ChannelData {
                        multiplicity: 1,
                        parity: None,
                    },
                );
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor.to_string(),
            "bound": self.bound,
            "products": self.products.iter().map(|(&(a, b), ch)| serde_json::json!({
                "a": a,
                "b": b,
                "channels": ch.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds the full structure-constant table for labels up to `bound`.
/// Products with the unit label are the identity; everything else goes
/// through the two-sided fusion-polynomial computation.
pub fn fusion_ring(flavor: Flavor, bound: u32) -> Result<FusionTable> {
    if bound < 1 {
        return Err(Error::BadLabel(bound as i64));
    }
    let mut products = BTreeMap::new();
    let labels: Vec<u32> = match flavor {
        Flavor::Virasoro => (0..=bound).collect(),
        Flavor::Ns => (1..=bound).step_by(2).collect(),
    };
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i..] {
            let channels = if flavor == Flavor::Virasoro && a == 0 {
                FusionChannels {
                    flavor,
                    labels: BTreeMap::from([(
                        b,
                        ChannelData {
                            multiplicity: 1,
                            parity: None,
                        },
                    )]),
                }
            } else {
                match flavor {
                    Flavor::Virasoro => fusion_channels_vir(a, b)?,
                    Flavor::Ns => fusion_channels_ns(a, b)?,
                }
            };
            products.insert((a, b), channels);
        }
    }
    Ok(FusionTable {
        flavor,
        bound,
        products,
    })
}

/// Outcome of the ring-axiom checks on a fusion table.
#[derive(Debug, Clone)]
pub struct RingReport {
    pub pass: bool,
    pub commutative: bool,
    pub associative: bool,
    pub unital: bool,
    pub constants_are_01: bool,
    pub failures: Vec<String>,
}

impl RingReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pass": self.pass,
            "commutative": self.commutative,
            "associative": self.associative,
            "unital": self.unital,
            "constants_are_01": self.constants_are_01,
            "failures": self.failures,
        })
    }
}

/// Checks commutativity, associativity on all triples whose intermediate
/// products stay within the table bound, unit behavior, and that every
/// structure constant is 0 or 1.
pub fn ring_report(t: &FusionTable) -> RingReport {
    let mut failures = Vec::new();
    let labels = t.labels();
    let unit = t.unit_label();

    let mut constants_are_01 = true;
    for (&(a, b), ch) in t.products() {
        for (l, data) in &ch.labels {
            if data.multiplicity != 1 {
                constants_are_01 = false;
                failures.push(format!(
                    "constant N({a},{b})^{l} has multiplicity {}",
                    data.multiplicity
                ));
            }
        }
    }

    let mut commutative = true;
    for &a in &labels {
        for &b in &labels {
            let fwd = t.channels(a, b);
            let bwd = t.channels(b, a);
            if fwd.ok().map(|c| &c.labels) != bwd.ok().map(|c| &c.labels) {
                commutative = false;
                failures.push(format!("product ({a},{b}) differs from ({b},{a})"));
            }
        }
    }

    let mut unital = true;
    for &m in &labels {
        let expect = vec![m];
        match t.channels(unit, m) {
            Ok(ch) if ch.label_set() == expect => {}
            _ => {
                unital = false;
                failures.push(format!("unit product ({unit},{m}) is not {{{m}}}"));
            }
        }
    }

    // associativity on triples whose pair products stay inside the table
    let step = if t.flavor == Flavor::Ns { 1 } else { 0 };
    let within = |a: u32, b: u32| a + b - step <= t.bound;
    let mut associative = true;
    'outer: for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                if !within(a, b) || !within(b, c) {
                    continue;
                }
                let mut lhs: BTreeMap<u32, u32> = BTreeMap::new();
                for e in t.channels(a, b).map(|ch| ch.label_set()).unwrap_or_default() {
                    for s in t.channels(e, c).map(|ch| ch.label_set()).unwrap_or_default() {
                        *lhs.entry(s).or_insert(0) += 1;
                    }
                }
                let mut rhs: BTreeMap<u32, u32> = BTreeMap::new();
                for e in t.channels(b, c).map(|ch| ch.label_set()).unwrap_or_default() {
                    for s in t.channels(a, e).map(|ch| ch.label_set()).unwrap_or_default() {
                        *rhs.entry(s).or_insert(0) += 1;
                    }
                }
                if lhs != rhs {
                    associative = false;
                    failures.push(format!("associativity fails on triple ({a},{b},{c})"));
                    if failures.len() > 20 {
                        break 'outer;
                    }
                }
            }
        }
    }

    let pass = commutative && associative && unital && constants_are_01;
    RingReport {
        pass,
        commutative,
        associative,
        unital,
        constants_are_01,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;
    use crate::rational::rat_int;
    use crate::verma::VermaVector;

    fn l_word(parts: &[i64]) -> Word {
        Word(parts.iter().map(|&i| Mode::l(-i)).collect())
    }

    #[test]
    fn zhu_vir_examples() {
        // [L(-2) v], h1 = 1/4 -> 2y - x + 1/4
        let e = AlgebraElement::from_word(l_word(&[2]));
        let p = zhu_project_vir(&e, &rat(1, 4)).unwrap();
        assert_eq!(p, Poly2::zhu_factor(&rat_int(2), &rat(1, 4)));

        // [L(-1)L(-1) v], h1 = 1/4 -> (y - x + 5/4)(y - x + 1/4)
        let e = AlgebraElement::from_word(l_word(&[1, 1]));
        let p = zhu_project_vir(&e, &rat(1, 4)).unwrap();
        let expect = &Poly2::zhu_factor(&rat_int(1), &rat(5, 4))
            * &Poly2::zhu_factor(&rat_int(1), &rat(1, 4));
        assert_eq!(p, expect);

        // empty word -> 1
        let e = AlgebraElement::from_word(Word::identity());
        assert_eq!(zhu_project_vir(&e, &rat(1, 4)).unwrap(), Poly2::one());

        // rejections
        let e = AlgebraElement::from_word(Word(vec![Mode::l(1)]));
        assert!(zhu_project_vir(&e, &rat(1, 4)).is_err());
        let e = AlgebraElement::from_word(Word(vec![Mode::g2(-1)]));
        assert!(zhu_project_vir(&e, &rat(1, 4)).is_err());
    }

    /// The projection factors through the Verma module: a word and its
    /// canonical normal ordering have the same image.
    #[test]
    fn zhu_vir_is_well_defined_on_the_module() {
        let c = central_charge(Flavor::Virasoro);
        let h = rat(2, 7);
        for word in [
            vec![Mode::l(-1), Mode::l(-2)],
            vec![Mode::l(-1), Mode::l(-3), Mode::l(-2)],
            vec![Mode::l(-2), Mode::l(-1), Mode::l(-1), Mode::l(-2)],
        ] {
            let raw = AlgebraElement::from_word(Word(word));
            let direct = zhu_project_vir(&raw, &h).unwrap();
            let reduced = crate::verma::apply_element(
                &raw,
                &VermaVector::vacuum(Flavor::Virasoro, c.clone(), h.clone()),
            )
            .unwrap();
            let via_module = zhu_project_vir(&reduced.to_element(), &h).unwrap();
            assert_eq!(direct, via_module);
        }
    }

    #[test]
    fn zhu_ns_examples() {
        let h = rat(1, 2);
        // [G(-3/2) v] -> odd component 1
        let e = AlgebraElement::from_word(Word(vec![Mode::g2(-3)]));
        let img = zhu_project_ns(&e, &h).unwrap();
        assert!(img.even.is_zero());
        assert_eq!(img.odd, Poly2::one());

        // [G(-1/2) L(-1) v] (canonical order, equals L(-1) G(-1/2) in the
        // algebra) -> odd component (y - x + 1)
        let e = AlgebraElement::from_word(Word(vec![Mode::g2(-1), Mode::l(-1)]));
        let img = zhu_project_ns(&e, &h).unwrap();
        assert!(img.even.is_zero());
        assert_eq!(img.odd, Poly2::zhu_factor(&rat_int(1), &rat_int(1)));
        // same element written with the L first
        let e = AlgebraElement::from_word(Word(vec![Mode::l(-1), Mode::g2(-1)]));
        let img2 = zhu_project_ns(&e, &h).unwrap();
        assert_eq!(img.odd, img2.odd);

        // [G(-1/2) G(-3/2) v] -> even component (3y - x + 1/2)
        let e = AlgebraElement::from_word(Word(vec![Mode::g2(-1), Mode::g2(-3)]));
        let img = zhu_project_ns(&e, &h).unwrap();
        assert!(img.odd.is_zero());
        assert_eq!(img.even, Poly2::zhu_factor(&rat_int(3), &rat(1, 2)));

        let e = AlgebraElement::from_word(Word(vec![Mode::g2(1)]));
        assert!(zhu_project_ns(&e, &h).is_err());
    }

    /// NS projection is also well-defined on the module.
    #[test]
    fn zhu_ns_is_well_defined_on_the_module() {
        let c = central_charge(Flavor::Ns);
        let h = rat(2, 5);
        for word in [
            vec![Mode::g2(-1), Mode::g2(-1), Mode::l(-1)],
            vec![Mode::l(-1), Mode::g2(-3)],
            vec![Mode::g2(-1), Mode::l(-2), Mode::g2(-3)],
            vec![Mode::g2(-3), Mode::g2(-1), Mode::l(-1)],
            vec![Mode::g2(-5), Mode::l(-1), Mode::g2(-1)],
        ] {
            let raw = AlgebraElement::from_word(Word(word.clone()));
            let direct = zhu_project_ns(&raw, &h).unwrap();
            let reduced = crate::verma::apply_element(
                &raw,
                &VermaVector::vacuum(Flavor::Ns, c.clone(), h.clone()),
            )
            .unwrap();
            let via_module = zhu_project_ns(&reduced.to_element(), &h).unwrap();
            assert_eq!(direct.even, via_module.even, "word {word:?}");
            assert_eq!(direct.odd, via_module.odd, "word {word:?}");
        }
    }

    #[test]
    fn fusion_poly_vir_examples() {
        // (1,1): x^2 - x up to the solver normalization
        let p = fusion_poly_vir(1, 1).unwrap();
        let expect = Poly1::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)]);
        assert!(p.proportionality(&expect).is_some());

        // (1,2): (9/4 - x)(1/4 - x) projectively
        let p = fusion_poly_vir(1, 2).unwrap();
        let expect = &Poly1::linear_root(&rat(9, 4)) * &Poly1::linear_root(&rat(1, 4));
        assert!(p.proportionality(&expect).is_some());

        // (2,1): -(x - 9/4)(x - 1/4)^2 projectively, with the double root
        let p = fusion_poly_vir(2, 1).unwrap();
        let expect = &(&Poly1::linear_root(&rat(9, 4)) * &Poly1::linear_root(&rat(1, 4)))
            * &Poly1::linear_root(&rat(1, 4));
        assert!(p.proportionality(&expect).is_some());
        let roots = rational_roots(&p).unwrap();
        assert_eq!(roots[&rat(1, 4)], 2);
    }

    #[test]
    fn density_oracle_examples() {
        // single word L(-1) acts on w_0 by mu
        let e = AlgebraElement::from_word(l_word(&[1]));
        let p = density_project_vir(&e, 1, 1).unwrap();
        // mu = 1/4 + 1/4 - x
        assert_eq!(p, Poly1::from_coeffs(vec![rat(1, 2), rat_int(-1)]));

        // the label-1 singular vector projects to x^2 - x (proportionally)
        let sv = singular_vectors(Flavor::Virasoro, &rat_int(1), &rat(1, 4), 4).unwrap();
        let p = density_project_vir(&sv[0].to_element(), 1, 1).unwrap();
        let expect = Poly1::from_coeffs(vec![rat_int(0), rat_int(-1), rat_int(1)]);
        assert!(p.proportionality(&expect).is_some());

        // proportionality flag for (2,1)
        let sv = singular_vectors(Flavor::Virasoro, &rat_int(1), &rat_int(1), 6).unwrap();
        let p = density_project_vir(&sv[0].to_element(), 2, 1).unwrap();
        let q = fusion_poly_vir(2, 1).unwrap();
        assert!(p.proportionality(&q).is_some());
    }

    #[test]
    fn fusion_polys_ns_examples() {
        // (3,3): Q1 ~ (x - 1/2), Q2 ~ x(x - 2)
        let (q1, q2) = fusion_polys_ns(3, 3).unwrap();
        assert!(q1.proportionality(&Poly1::linear_root(&rat(1, 2))).is_some());
        let expect = &Poly1::linear_root(&rat_int(0)) * &Poly1::linear_root(&rat_int(2));
        assert!(q2.proportionality(&expect).is_some());

        // (1,5): Q1 = 1 (no odd channels), Q2 ~ (x - 2)
        let (q1, q2) = fusion_polys_ns(1, 5).unwrap();
        assert_eq!(q1.degree(), Some(0));
        assert!(q2.proportionality(&Poly1::linear_root(&rat_int(2))).is_some());

        // (3,1): Q1 ~ x (spurious), Q2 ~ (1/2 - x)^2
        let (q1, q2) = fusion_polys_ns(3, 1).unwrap();
        assert!(q1.proportionality(&Poly1::x()).is_some());
        let expect = &Poly1::linear_root(&rat(1, 2)) * &Poly1::linear_root(&rat(1, 2));
        assert!(q2.proportionality(&expect).is_some());

        assert!(fusion_polys_ns(2, 3).is_err());
    }

    #[test]
    fn fusion_coeff_vir_examples() {
        assert_eq!(fusion_coeff_vir(1, 1, 0).unwrap(), 1);
        assert_eq!(fusion_coeff_vir(1, 1, 2).unwrap(), 1);
        assert_eq!(fusion_coeff_vir(1, 1, 1).unwrap(), 0);
        assert_eq!(fusion_coeff_vir(2, 1, 1).unwrap(), 1);
        assert!(fusion_coeff_vir(0, 1, 1).is_err());
    }

    #[test]
    fn fusion_coeff_ns_examples() {
        assert_eq!(
            fusion_coeff_ns(3, 3, 5).unwrap(),
            (1, Some(ChannelParity::Even))
        );
        assert_eq!(
            fusion_coeff_ns(3, 3, 3).unwrap(),
            (1, Some(ChannelParity::Odd))
        );
        assert_eq!(fusion_coeff_ns(3, 3, 7).unwrap(), (0, None));
        assert!(fusion_coeff_ns(3, 3, 4).is_err());
    }

    /// The parity split survives past the usual verification bound; this
    /// guards the root-to-label mapping against bound-sensitive mistakes.
    #[test]
    fn ns_parity_sets_hold_beyond_the_default_bound() {
        let desc4 = |from: i64, to: i64| -> Vec<u32> {
            let mut v: Vec<u32> = Vec::new();
            let mut s = from;
            while s >= to {
                v.push(s as u32);
                s -= 4;
            }
            v.sort();
            v
        };
        for (q, r) in [(11i64, 5i64), (13, 3), (13, 13), (11, 11)] {
            let ch = fusion_channels_ns(q as u32, r as u32).unwrap();
            let even: Vec<u32> = ch
                .labels
                .iter()
                .filter(|(_, d)| d.parity == Some(ChannelParity::Even))
                .map(|(&l, _)| l)
                .collect();
            let odd: Vec<u32> = ch
                .labels
                .iter()
                .filter(|(_, d)| d.parity == Some(ChannelParity::Odd))
                .map(|(&l, _)| l)
                .collect();
            assert_eq!(even, desc4(q + r - 1, q - r + 1), "even q={q} r={r}");
            assert_eq!(odd, desc4(q + r - 3, q - r + 3), "odd q={q} r={r}");
        }
    }

    /// deg Q1 + deg Q2 equals the doubled NS singular level q.
    #[test]
    fn ns_degree_law() {
        for q in (1..=9u32).step_by(2) {
            for r in (1..=9u32).step_by(2) {
                let (q1, q2) = fusion_polys_ns(q, r).unwrap();
                let total = q1.degree().unwrap() + q2.degree().unwrap();
                assert_eq!(total, q as usize, "(q,r)=({q},{r})");
            }
        }
    }

    /// A Virasoro fusion polynomial has a repeated root exactly when the
    /// first label exceeds the second.
    #[test]
    fn repeated_roots_mark_the_asymmetric_products() {
        for m in 1..=6u32 {
            for n in 1..=6u32 {
                let roots = rational_roots(&fusion_poly_vir(m, n).unwrap()).unwrap();
                let repeated = roots.values().any(|&mult| mult > 1);
                assert_eq!(repeated, m > n, "(m,n)=({m},{n})");
            }
        }
    }

    #[test]
    fn fusion_coefficients_are_symmetric() {
        for (m, n) in [(1u32, 2u32), (3, 5), (4, 2)] {
            for r in 0..=(m + n + 1) {
                assert_eq!(
                    fusion_coeff_vir(m, n, r).unwrap(),
                    fusion_coeff_vir(n, m, r).unwrap()
                );
            }
        }
        for (q, r) in [(3u32, 5u32), (7, 3)] {
            for s in (1..=q + r + 1).step_by(2) {
                assert_eq!(
                    fusion_coeff_ns(q, r, s).unwrap(),
                    fusion_coeff_ns(r, q, s).unwrap()
                );
            }
        }
    }

    #[test]
    fn fusion_ring_small_tables() {
        let t = fusion_ring(Flavor::Virasoro, 3).unwrap();
        assert_eq!(t.channels(1, 1).unwrap().label_set(), vec![0, 2]);
        assert_eq!(t.channels(0, 2).unwrap().label_set(), vec![2]);
        let report = ring_report(&t);
        assert!(report.pass, "{:?}", report.failures);

        let t = fusion_ring(Flavor::Ns, 5).unwrap();
        assert_eq!(t.channels(3, 3).unwrap().label_set(), vec![1, 3, 5]);
        assert_eq!(t.channels(1, 5).unwrap().label_set(), vec![5]);
        let report = ring_report(&t);
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn corrupted_table_fails_ring_report() {
        let mut t = fusion_ring(Flavor::Virasoro, 4).unwrap();
        t.toggle_channel(1, 2, 3);
        let report = ring_report(&t);
        assert!(!report.pass);
        assert!(!report.failures.is_empty());
    }

    mod properties {
        use super::*;
        use crate::algebra::Word;
        use crate::verma::{apply_element, VermaVector};
        use proptest::prelude::*;

        fn arb_creation_word(ns: bool) -> impl Strategy<Value = Word> {
            let mode = if ns {
                prop_oneof![
                    (1i64..=3).prop_map(|n| Mode::l(-n)),
                    prop_oneof![Just(-1i64), Just(-3), Just(-5)].prop_map(Mode::g2),
                ]
                .boxed()
            } else {
                (1i64..=3).prop_map(|n| Mode::l(-n)).boxed()
            };
            prop::collection::vec(mode, 0..5).prop_map(Word)
        }

        proptest! {
            /// The projection factors through the Verma module: any word
            /// of creation modes and its canonical normal ordering have
            /// the same image.
            #[test]
            fn vir_projection_is_well_defined(w in arb_creation_word(false)) {
                let c = central_charge(Flavor::Virasoro);
                let h = rat(3, 7);
                let raw = AlgebraElement::from_word(w);
                let direct = zhu_project_vir(&raw, &h).unwrap();
                let reduced = apply_element(
                    &raw,
                    &VermaVector::vacuum(Flavor::Virasoro, c, h.clone()),
                )
                .unwrap();
                let via_module = zhu_project_vir(&reduced.to_element(), &h).unwrap();
                prop_assert_eq!(direct, via_module);
            }

            #[test]
            fn ns_projection_is_well_defined(w in arb_creation_word(true)) {
                let c = central_charge(Flavor::Ns);
                let h = rat(3, 7);
                let raw = AlgebraElement::from_word(w);
                let direct = zhu_project_ns(&raw, &h).unwrap();
                let reduced = apply_element(
                    &raw,
                    &VermaVector::vacuum(Flavor::Ns, c, h.clone()),
                )
                .unwrap();
                let via_module = zhu_project_ns(&reduced.to_element(), &h).unwrap();
                prop_assert_eq!(direct.even, via_module.even);
                prop_assert_eq!(direct.odd, via_module.odd);
            }
        }
    }

    #[test]
    fn table_json_shape() {
        let t = fusion_ring(Flavor::Ns, 3).unwrap();
        let j = t.to_json();
        assert_eq!(j["flavor"], "ns");
        assert_eq!(j["bound"], 3);
        let prods = j["products"].as_array().unwrap();
        let p33 = prods
            .iter()
            .find(|p| p["a"] == 3 && p["b"] == 3)
            .unwrap();
        assert_eq!(
            p33["channels"].to_string(),
            r#"[{"parity":"even","s":1},{"parity":"odd","s":3},{"parity":"even","s":5}]"#
        );
    }
}

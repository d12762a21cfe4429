//! Benoit-Saint-Aubin closed-form singular-vector candidates and the
//! calibration of publication sign conventions against the exact solver.
//!
//! The solver in `verma` stays authoritative for every downstream fusion
//! computation; the closed forms here are a fast path and a cross-check.
//! Calibration transforms a candidate under a fixed family of convention
//! maps, reduces it inside M(c,h), and tests proportionality against the
//! solver vector.

use crate::algebra::{AlgebraElement, Flavor, Mode, Word};
use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rat};
use crate::verma::{apply_element, singular_vectors, VermaVector};
use num_traits::One;

/// Virasoro c=1 candidate at level q: the sum over all compositions
/// (i_1,...,i_n) of q of
///   c_q(i_1,...,i_n) L(-i_1)...L(-i_n),
/// where c_q excludes every partial sum s = i_1+...+i_j from the product
///   prod_{1 <= k < q} k(q-k).
pub fn bsa_vir_c1(q: u32) -> Result<AlgebraElement> {
    if q == 0 {
        return Err(Error::BadLabel(0));
    }
    let q = q as i64;
    let mut out = AlgebraElement::zero();
    let mut composition: Vec<i64> = Vec::new();
    compositions(q, &mut composition, &mut |comp| {
        let mut partials = vec![false; q as usize + 1];
        let mut acc = 0;
        for &part in comp {
            acc += part;
            partials[acc as usize] = true;
        }
        let mut coeff = Rat::one();
        for k in 1..q {
            if !partials[k as usize] {
                coeff *= rat(k * (q - k), 1);
            }
        }
        let word = Word(comp.iter().map(|&i| Mode::l(-i)).collect());
        out.add_term(word, coeff);
    });
    Ok(out)
}

fn compositions(n: i64, prefix: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if n == 0 {
        f(prefix);
        return;
    }
    for part in 1..=n {
        prefix.push(part);
        compositions(n - part, prefix, f);
        prefix.pop();
    }
}

/// N=1 candidate at level q/2 for odd q: the sum over all partitions of q
/// into odd parts and all permutations of the parts, of
///   (-1)^{(q-N)/2} c(k_1,...,k_N) G(-k_1/2)...G(-k_N/2)
/// in the permuted order, with
///   c(k_1,...,k_N) = prod_i binom(k_i-1, (k_i-1)/2)
///                    * prod_{j=1}^{(N-1)/2} 4 / (sigma_{2j} rho_{2j}),
/// sigma_j and rho_j the leading and trailing part sums. Permutations that
/// coincide as sequences accumulate, so a sequence with repeated parts
/// carries the extra factor prod (multiplicity!).
pub fn bsa_ns(q: u32) -> Result<AlgebraElement> {
    if q == 0 || q.is_multiple_of(2) {
        return Err(Error::BadLabel(q as i64));
    }
    let q = q as i64;
    let mut out = AlgebraElement::zero();
    let mut seq: Vec<i64> = Vec::new();
    odd_compositions(q, &mut seq, &mut |parts| {
        let n = parts.len() as i64;
        let sign = if (q - n) / 2 % 2 == 0 { 1 } else { -1 };
        let mut coeff = rat_int(sign);
        for &k in parts {
            coeff *= rat_int(binomial(k - 1, (k - 1) / 2));
        }
        let total: i64 = q;
        let mut leading = 0;
        for j in 1..=(n - 1) / 2 {
            // sigma_{2j} and rho_{2j}
            let idx = (2 * j) as usize;
            if leading == 0 {
                leading = parts[..idx].iter().sum();
            } else {
                leading += parts[idx - 2] + parts[idx - 1];
            }
            let trailing = total - parts[..idx - 1].iter().sum::<i64>();
            coeff *= rat(4, leading * trailing);
        }
        // all N! permutations: repeated parts repeat the same sequence
        let mut mult = 1i64;
        let mut counts = std::collections::BTreeMap::new();
        for &k in parts {
            *counts.entry(k).or_insert(0i64) += 1;
        }
        for (_, c) in counts {
            mult *= factorial(c);
        }
        coeff *= rat_int(mult);
        let word = Word(parts.iter().map(|&k| Mode::g2(-k)).collect());
        out.add_term(word, coeff);
    });
    Ok(out)
}

/// Compositions of `n` into odd parts: the distinct permuted sequences of
/// the odd-part partitions of `n`.
fn odd_compositions(n: i64, prefix: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if n == 0 {
        f(prefix);
        return;
    }
    let mut part = 1;
    while part <= n {
        prefix.push(part);
        odd_compositions(n - part, prefix, f);
        prefix.pop();
        part += 2;
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

/// The fixed family of convention maps tried during calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConventionMap {
    /// no change
    Identity,
    /// L(n) -> -L(n): words scaled by (-1)^{#L}
    NegateL,
    /// L(n) -> -L(n) and G-words scaled by (-1)^{(#G-1)/2}
    NegateLGPhase,
    /// words scaled by (-1)^{#modes}
    TotalModeSign,
}

impl ConventionMap {
    pub const ALL: [ConventionMap; 4] = [
        ConventionMap::Identity,
        ConventionMap::NegateL,
        ConventionMap::NegateLGPhase,
        ConventionMap::TotalModeSign,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConventionMap::Identity => "identity",
            ConventionMap::NegateL => "negate-l",
            ConventionMap::NegateLGPhase => "negate-l-g-phase",
            ConventionMap::TotalModeSign => "total-mode-sign",
        }
    }

    pub fn apply(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in e.terms() {
            let sign = match self {
                ConventionMap::Identity => 1,
                ConventionMap::NegateL => neg_pow(w.l_count()),
                ConventionMap::NegateLGPhase => {
                    let g = w.g_count();
                    let phase = if g == 0 { 0 } else { (g - 1) / 2 };
                    neg_pow(w.l_count()) * neg_pow(phase)
                }
                ConventionMap::TotalModeSign => neg_pow(w.len()),
            };
            out.add_term(w.clone(), c * rat_int(sign));
        }
        out
    }
}

fn neg_pow(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone)]
pub struct MapOutcome {
    pub name: &'static str,
    pub matched: bool,
    /// reduced candidate = ratio * solver vector, when matched
    pub ratio: Option<Rat>,
}

/// Deterministic record of a calibration run at one (flavor, level) point.
#[derive(Debug, Clone)]
pub struct CalibrationReport {
    pub flavor: Flavor,
    pub q: u32,
    pub level2: i64,
    /// dimension of the solver's singular space at this point
    pub solver_dim: usize,
    pub maps: Vec<MapOutcome>,
}

impl CalibrationReport {
    pub fn matched_maps(&self) -> Vec<&'static str> {
        self.maps
            .iter()
            .filter(|m| m.matched)
            .map(|m| m.name)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor.to_string(),
            "q": self.q,
            "level": rat(self.level2, 2).to_string(),
            "solver_dim": self.solver_dim,
            "maps": self.maps.iter().map(|m| {
                let mut obj = serde_json::json!({
                    "name": m.name,
                    "match": m.matched,
                });
                if let Some(r) = &m.ratio {
                    obj["ratio"] = serde_json::Value::String(r.to_string());
                }
                obj
            }).collect::<Vec<_>>(),
        })
    }
}

/// Tries every convention map on `candidate` inside M(c,h) and tests
/// proportionality against the solver's singular vector at level
/// `level2/2`. The candidate must be level-homogeneous of that level.
pub fn calibrate(
    candidate: &AlgebraElement,
    flavor: Flavor,
    c: &Rat,
    h: &Rat,
    level2: i64,
) -> Result<CalibrationReport> {
    match candidate.level2()? {
        Some(l) if l == level2 => {}
        _ => return Err(Error::Inhomogeneous),
    }
    let solver = singular_vectors(flavor, c, h, level2)?;
    let vacuum = VermaVector::vacuum(flavor, c.clone(), h.clone());
    let mut maps = Vec::new();
    for map in ConventionMap::ALL {
        let reduced = apply_element(&map.apply(candidate), &vacuum)?;
        let ratio = match solver.as_slice() {
            [sv] => reduced.proportionality(sv),
            _ => None,
        };
        maps.push(MapOutcome {
            name: map.name(),
            matched: ratio.is_some(),
            ratio,
        });
    }
    // derive q from the level: Virasoro candidates live at level q,
    // NS candidates at level q/2
    let q = match flavor {
        Flavor::Virasoro => (level2 / 2) as u32,
        Flavor::Ns => level2 as u32,
    };
    Ok(CalibrationReport {
        flavor,
        q,
        level2,
        solver_dim: solver.len(),
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parity;
    use crate::verma::{central_charge, degenerate_point};
    use num_traits::Signed;

    fn l_word(parts: &[i64]) -> Word {
        Word(parts.iter().map(|&i| Mode::l(-i)).collect())
    }

    fn g_word(parts2: &[i64]) -> Word {
        Word(parts2.iter().map(|&k| Mode::g2(-k)).collect())
    }

    #[test]
    fn bsa_vir_small_levels() {
        let e = bsa_vir_c1(1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&l_word(&[1])), rat_int(1));

        let e = bsa_vir_c1(2).unwrap();
        assert_eq!(e.coeff(&l_word(&[1, 1])), rat_int(1));
        assert_eq!(e.coeff(&l_word(&[2])), rat_int(1));

        let e = bsa_vir_c1(3).unwrap();
        assert_eq!(e.coeff(&l_word(&[1, 1, 1])), rat_int(1));
        assert_eq!(e.coeff(&l_word(&[2, 1])), rat_int(2));
        assert_eq!(e.coeff(&l_word(&[1, 2])), rat_int(2));
        assert_eq!(e.coeff(&l_word(&[3])), rat_int(4));

        assert!(bsa_vir_c1(0).is_err());
    }

    #[test]
    fn bsa_ns_small_levels() {
        let e = bsa_ns(1).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&g_word(&[1])), rat_int(1));

        let e = bsa_ns(3).unwrap();
        assert_eq!(e.coeff(&g_word(&[1, 1, 1])), rat_int(6));
        assert_eq!(e.coeff(&g_word(&[3])), rat_int(-2));
        assert_eq!(e.len(), 2);

        let e = bsa_ns(5).unwrap();
        assert_eq!(e.coeff(&g_word(&[5])), rat_int(6));

        assert!(bsa_ns(4).is_err());
        assert!(bsa_ns(0).is_err());
    }

    #[test]
    fn bsa_ns_words_have_odd_g_count_and_leading_binomial() {
        for q in [1u32, 3, 5, 7, 9] {
            let e = bsa_ns(q).unwrap();
            for (w, _) in e.terms() {
                assert_eq!(parity(w), 1, "q={q} word={w}");
            }
            let lead = e.coeff(&g_word(&[q as i64]));
            let expect = binomial(q as i64 - 1, (q as i64 - 1) / 2);
            assert_eq!(lead.abs().to_integer(), expect.into(), "q={q}");
        }
    }

    #[test]
    fn calibrate_vir_level_two_matches_negate_l() {
        let cand = bsa_vir_c1(2).unwrap();
        let report = calibrate(&cand, Flavor::Virasoro, &rat_int(1), &rat(1, 4), 4).unwrap();
        assert_eq!(report.solver_dim, 1);
        let negate = report.maps.iter().find(|m| m.name == "negate-l").unwrap();
        assert!(negate.matched);
        assert_eq!(negate.ratio, Some(rat_int(1)));
    }

    #[test]
    fn calibrate_vir_level_three_matches_projectively() {
        let cand = bsa_vir_c1(3).unwrap();
        let (h, level2) = degenerate_point(Flavor::Virasoro, 2).unwrap();
        let report = calibrate(&cand, Flavor::Virasoro, &rat_int(1), &h, level2).unwrap();
        let negate = report.maps.iter().find(|m| m.name == "negate-l").unwrap();
        assert!(negate.matched);
        assert_eq!(negate.ratio, Some(rat_int(-1)));
    }

    #[test]
    fn calibrate_vir_matches_negate_l_from_level_one() {
        let c = central_charge(Flavor::Virasoro);
        for q in 1..=6u32 {
            let cand = bsa_vir_c1(q).unwrap();
            let (h, level2) = degenerate_point(Flavor::Virasoro, q - 1).unwrap();
            let report = calibrate(&cand, Flavor::Virasoro, &c, &h, level2).unwrap();
            let m = report.maps.iter().find(|m| m.name == "negate-l").unwrap();
            assert!(m.matched, "q={q}");
        }
    }

    /// After normal ordering, the coefficient on L(-1)^q is exactly 1
    /// (the all-ones composition is the only one long enough to reach it).
    #[test]
    fn bsa_vir_leading_coefficient_is_one() {
        use crate::verma::apply_element;
        let c = central_charge(Flavor::Virasoro);
        for q in 1..=6u32 {
            let cand = bsa_vir_c1(q).unwrap();
            let (h, _) = degenerate_point(Flavor::Virasoro, q - 1).unwrap();
            let reduced = apply_element(
                &cand,
                &VermaVector::vacuum(Flavor::Virasoro, c.clone(), h),
            )
            .unwrap();
            let word = Word(vec![Mode::l(-1); q as usize]);
            assert_eq!(reduced.coeff(&word), rat_int(1), "q={q}");
        }
    }

    #[test]
    fn calibrate_ns_identity_at_level_one_half() {
        let cand = bsa_ns(1).unwrap();
        let report = calibrate(&cand, Flavor::Ns, &rat(3, 2), &rat_int(0), 1).unwrap();
        let id = report.maps.iter().find(|m| m.name == "identity").unwrap();
        assert!(id.matched);
        assert_eq!(id.ratio, Some(rat_int(1)));
    }

    #[test]
    fn calibration_report_is_deterministic() {
        let cand = bsa_ns(3).unwrap();
        let c = central_charge(Flavor::Ns);
        let (h, level2) = degenerate_point(Flavor::Ns, 3).unwrap();
        let a = calibrate(&cand, Flavor::Ns, &c, &h, level2).unwrap();
        let b = calibrate(&cand, Flavor::Ns, &c, &h, level2).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn calibrate_rejects_inhomogeneous_or_wrong_level() {
        let mut e = bsa_vir_c1(2).unwrap();
        e.add_term(l_word(&[3]), rat_int(1));
        assert!(calibrate(&e, Flavor::Virasoro, &rat_int(1), &rat(1, 4), 4).is_err());
        let e = bsa_vir_c1(2).unwrap();
        assert!(calibrate(&e, Flavor::Virasoro, &rat_int(1), &rat(1, 4), 6).is_err());
    }
}

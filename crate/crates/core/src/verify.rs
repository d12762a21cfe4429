//! Batch verification checks behind the CLI `verify` command and the
//! acceptance suite. Every check is exact; floating point appears only in
//! the matrix-realization residual tests, with the tolerance pinned here.

use crate::algebra::Flavor;
use crate::bsa::{bsa_ns, bsa_vir_c1, calibrate};
use crate::chars::{ch_lattice, identity_check, SectorLabel};
use crate::error::Result;
use crate::poly::rational_roots;
use crate::rational::{rat, rat_int, Rat};
use crate::reprings::{
    iso_check, matrices, osp_tensor, sl2_cg, weight_decompose, RepAlgebra, RepLabel,
};
use crate::verma::{central_charge, degenerate_point, gram_matrix, singular_vectors};
use crate::zhu::{
    density_project_vir, fusion_channels_ns, fusion_channels_vir, fusion_poly_vir, fusion_ring,
    ring_report, ChannelParity,
};
use num_traits::Zero;
use std::collections::BTreeMap;

pub const MATRIX_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn ok(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: false,
            detail: detail.into(),
        }
    }

    fn expect(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.pass)
}

pub fn checks_to_json(checks: &[Check]) -> serde_json::Value {
    serde_json::json!(checks
        .iter()
        .map(|c| serde_json::json!({
            "name": c.name,
            "pass": c.pass,
            "detail": c.detail,
        }))
        .collect::<Vec<_>>())
}

/// Weights of the form k + 1/3 avoid every degenerate weight of both
/// families (those all have denominator dividing 8).
fn generic_weights(count: usize) -> Vec<Rat> {
    (0..count as i64).map(|k| rat_int(k) + rat(1, 3)).collect()
}

/// Singular-space dimensions: exactly 1 at each degenerate label, 0 at
/// `generic_per_level` generic weights per level.
pub fn check_singular(
    flavor: Flavor,
    labels: &[u32],
    generic_per_level: usize,
) -> Result<Vec<Check>> {
    let c = central_charge(flavor);
    let mut out = Vec::new();
    for &label in labels {
        let (h, level2) = degenerate_point(flavor, label)?;
        let dim = singular_vectors(flavor, &c, &h, level2)?.len();
        out.push(Check::expect(
            format!("singular[{flavor}] label {label} dim 1"),
            dim == 1,
            format!("kernel dimension {dim} at h={h}, level {}", rat(level2, 2)),
        ));
        let mut bad = None;
        for h in generic_weights(generic_per_level) {
            let dim = singular_vectors(flavor, &c, &h, level2)?.len();
            if dim != 0 {
                bad = Some((h, dim));
                break;
            }
        }
        if generic_per_level > 0 {
            out.push(match bad {
                None => Check::ok(
                    format!("singular[{flavor}] level {} generic", rat(level2, 2)),
                    format!("{generic_per_level} generic weights all have empty kernel"),
                ),
                Some((h, dim)) => Check::fail(
                    format!("singular[{flavor}] level {} generic", rat(level2, 2)),
                    format!("kernel dimension {dim} at generic h={h}"),
                ),
            });
        }
    }
    Ok(out)
}

/// BSA Virasoro candidates match the solver projectively under L -> -L.
pub fn check_bsa_vir(q_range: std::ops::RangeInclusive<u32>) -> Result<Vec<Check>> {
    let c = central_charge(Flavor::Virasoro);
    let mut out = Vec::new();
    for q in q_range {
        let cand = bsa_vir_c1(q)?;
        let (h, level2) = degenerate_point(Flavor::Virasoro, q - 1)?;
        let report = calibrate(&cand, Flavor::Virasoro, &c, &h, level2)?;
        let outcome = report
            .maps
            .iter()
            .find(|m| m.name == "negate-l")
            .expect("map family is fixed");
        out.push(Check::expect(
            format!("bsa[vir] q={q} negate-l"),
            outcome.matched,
            match &outcome.ratio {
                Some(r) => format!("matched solver vector with ratio {r}"),
                None => format!("no match; matched maps: {:?}", report.matched_maps()),
            },
        ));
    }
    Ok(out)
}

/// NS BSA calibration: the report must be deterministic; the check passes
/// whether or not any convention map matches, and the detail flags a
/// mismatch rather than failing on it.
pub fn check_bsa_ns(labels: &[u32]) -> Result<Vec<Check>> {
    let c = central_charge(Flavor::Ns);
    let mut out = Vec::new();
    for &q in labels {
        let cand = bsa_ns(q)?;
        let (h, level2) = degenerate_point(Flavor::Ns, q)?;
        let first = calibrate(&cand, Flavor::Ns, &c, &h, level2)?;
        let second = calibrate(&cand, Flavor::Ns, &c, &h, level2)?;
        let deterministic = first.to_json() == second.to_json();
        let matched = first.matched_maps();
        let detail = if matched.is_empty() {
            "no convention map matches; solver vector remains authoritative (known open question)"
                .to_string()
        } else {
            format!("matched maps: {matched:?}")
        };
        out.push(Check::expect(
            format!("bsa[ns] q={q} deterministic"),
            deterministic && first.solver_dim == 1,
            detail,
        ));
    }
    Ok(out)
}

fn expected_vir_roots(m: u32, n: u32) -> BTreeMap<Rat, u32> {
    let (m, n) = (m as i64, n as i64);
    let mut expected: BTreeMap<Rat, u32> = BTreeMap::new();
    let mut i = n - m;
    while i <= n + m {
        *expected.entry(rat(i * i, 4)).or_insert(0) += 1;
        i += 2;
    }
    expected
}

/// Root-multiset law and density-oracle agreement for all m,n <= bound.
pub fn check_fusion_poly_law(bound: u32) -> Result<Vec<Check>> {
    let c = central_charge(Flavor::Virasoro);
    let mut out = Vec::new();
    let mut root_fail = None;
    let mut density_fail = None;
    for m in 1..=bound {
        for n in 1..=bound {
            let p = fusion_poly_vir(m, n)?;
            let roots = rational_roots(&p)?;
            let expected = expected_vir_roots(m, n);
            if roots != expected || p.degree() != Some(m as usize + 1) {
                root_fail = Some(format!("(m,n)=({m},{n}): roots {roots:?}"));
            }
            let (h, level2) = degenerate_point(Flavor::Virasoro, m)?;
            let sv = singular_vectors(Flavor::Virasoro, &c, &h, level2)?;
            let oracle = density_project_vir(&sv[0].to_element(), m, n)?;
            if p.proportionality(&oracle).is_none() {
                density_fail = Some(format!("(m,n)=({m},{n})"));
            }
        }
    }
    out.push(match root_fail {
        None => Check::ok(
            format!("fusion-poly[vir] root law m,n<={bound}"),
            "root multiset is {i^2/4 : i in {n+m, n+m-2, ..., n-m}} with exact multiplicities",
        ),
        Some(d) => Check::fail(format!("fusion-poly[vir] root law m,n<={bound}"), d),
    });
    out.push(match density_fail {
        None => Check::ok(
            format!("fusion-poly[vir] density oracle m,n<={bound}"),
            "Zhu image and density-module projection are proportional",
        ),
        Some(d) => Check::fail(format!("fusion-poly[vir] density oracle m,n<={bound}"), d),
    });
    Ok(out)
}

fn step2_set(hi: i64, lo: i64) -> Vec<u32> {
    let mut v = Vec::new();
    let mut s = hi;
    while s >= lo {
        v.push(s as u32);
        s -= 2;
    }
    v.sort();
    v
}

fn step4_set(hi: i64, lo: i64) -> Vec<u32> {
    let mut v = Vec::new();
    let mut s = hi;
    while s >= lo {
        v.push(s as u32);
        s -= 4;
    }
    v.sort();
    v
}

/// The Virasoro fusion theorem, ring axioms, and the Rep(sl2) isomorphism
/// at the given bound.
pub fn check_fusion_vir(bound: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut theorem_fail = None;
    for m in 1..=bound {
        for n in 1..=bound {
            let channels = fusion_channels_vir(m, n)?;
            let expected = step2_set((m + n) as i64, (m as i64 - n as i64).abs());
            if channels.label_set() != expected {
                theorem_fail = Some(format!(
                    "(m,n)=({m},{n}): channels {:?}, expected {:?}",
                    channels.label_set(),
                    expected
                ));
            }
        }
    }
    out.push(match theorem_fail {
        None => Check::ok(
            format!("fusion-theorem[vir] m,n<={bound}"),
            "channels are exactly {m+n, m+n-2, ..., |m-n|}",
        ),
        Some(d) => Check::fail(format!("fusion-theorem[vir] m,n<={bound}"), d),
    });

    let table = fusion_ring(Flavor::Virasoro, bound)?;
    let report = ring_report(&table);
    out.push(Check::expect(
        format!("ring-axioms[vir] bound {bound}"),
        report.pass,
        if report.pass {
            "commutative associative unital ring with 0/1 constants".to_string()
        } else {
            report.failures.join("; ")
        },
    ));
    let iso = iso_check(&table)?;
    out.push(Check::expect(
        format!("iso[vir=sl2] bound {bound}"),
        iso,
        "structure constants match Rep(sl2) under m -> V(m)",
    ));
    Ok(out)
}

/// NS channel parity sets, the combined channel theorem, ring axioms, and
/// the Rep(osp(1|2)) isomorphism at the given (odd) bound.
pub fn check_fusion_ns(bound: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut parity_fail = None;
    let mut combined_fail = None;
    for q in (1..=bound as i64).step_by(2) {
        for r in (1..=q).step_by(2) {
            let ch = fusion_channels_ns(q as u32, r as u32)?;
            let even_expected = step4_set(q + r - 1, q - r + 1);
            let odd_expected = step4_set(q + r - 3, q - r + 3);
            let got_even: Vec<u32> = ch
                .labels
                .iter()
                .filter(|(_, d)| d.parity == Some(ChannelParity::Even))
                .map(|(&l, _)| l)
                .collect();
            let got_odd: Vec<u32> = ch
                .labels
                .iter()
                .filter(|(_, d)| d.parity == Some(ChannelParity::Odd))
                .map(|(&l, _)| l)
                .collect();
            if got_even != even_expected || got_odd != odd_expected {
                parity_fail = Some(format!(
                    "(q,r)=({q},{r}): even {got_even:?} vs {even_expected:?}, odd {got_odd:?} vs {odd_expected:?}"
                ));
            }
            let combined_expected = step2_set(q + r - 1, (q - r).abs() + 1);
            if ch.label_set() != combined_expected {
                combined_fail = Some(format!("(q,r)=({q},{r})"));
            }
        }
    }
    out.push(match parity_fail {
        None => Check::ok(
            format!("fusion-parity[ns] q,r<={bound}"),
            "even channels {q+r-1, q+r-5, ...}, odd channels {q+r-3, q+r-7, ...}",
        ),
        Some(d) => Check::fail(format!("fusion-parity[ns] q,r<={bound}"), d),
    });
    out.push(match combined_fail {
        None => Check::ok(
            format!("fusion-theorem[ns] q,r<={bound}"),
            "combined channels are {q+r-1, q+r-3, ..., |q-r|+1}",
        ),
        Some(d) => Check::fail(format!("fusion-theorem[ns] q,r<={bound}"), d),
    });

    let table = fusion_ring(Flavor::Ns, bound)?;
    let report = ring_report(&table);
    out.push(Check::expect(
        format!("ring-axioms[ns] bound {bound}"),
        report.pass,
        if report.pass {
            "commutative associative unital ring with 0/1 constants".to_string()
        } else {
            report.failures.join("; ")
        },
    ));
    let iso = iso_check(&table)?;
    out.push(Check::expect(
        format!("iso[ns=osp(1|2)] bound {bound}"),
        iso,
        "structure constants match Rep(osp(1|2)) under b(m) -> V((m-1)/4)",
    ));
    Ok(out)
}

/// Character identities for both lattice sectors at the given order, with
/// the spot values of ch V_L.
pub fn check_characters(order: i64) -> Result<Vec<Check>> {
    let order = rat_int(order);
    let mut out = Vec::new();
    for sector in [SectorLabel::VL, SectorLabel::VLHalf] {
        let ok = identity_check(sector, &order)?;
        out.push(Check::expect(
            format!("character-identity[{}] order {order}", sector.name()),
            ok,
            "exact coefficient-wise equality with the branched sum",
        ));
    }
    let vl = ch_lattice(SectorLabel::VL, &order)?;
    let spots = [(0, 1), (1, 3), (2, 4)];
    let good = spots
        .iter()
        .all(|&(e, c)| vl.coeff(&rat_int(e)) == Some(c));
    out.push(Check::expect(
        "character-spots[vl]",
        good,
        "ch V_L = 1 + 3q + 4q^2 + ...",
    ));
    Ok(out)
}

/// Gram determinant degeneracy: zero exactly at the degenerate weights,
/// nonzero at `generic` generic weights of the same level.
pub fn check_gram(
    flavor: Flavor,
    labels: &[u32],
    generic: usize,
) -> Result<Vec<Check>> {
    let c = central_charge(flavor);
    let mut out = Vec::new();
    for &label in labels {
        let (h, level2) = degenerate_point(flavor, label)?;
        let det = gram_matrix(flavor, &c, &h, level2)?.det();
        out.push(Check::expect(
            format!("gram[{flavor}] label {label} degenerate"),
            det.is_zero(),
            format!("det = {det} at h = {h}"),
        ));
        let mut bad = None;
        for h in generic_weights(generic) {
            let det = gram_matrix(flavor, &c, &h, level2)?.det();
            if det.is_zero() {
                bad = Some(h);
                break;
            }
        }
        out.push(match bad {
            None => Check::ok(
                format!("gram[{flavor}] level {} generic", rat(level2, 2)),
                format!("{generic} generic weights all have nonzero determinant"),
            ),
            Some(h) => Check::fail(
                format!("gram[{flavor}] level {} generic", rat(level2, 2)),
                format!("det = 0 at generic h = {h}"),
            ),
        });
    }
    Ok(out)
}

/// Representation-ring checks: osp tensor vs the weight-peeling oracle,
/// matrix-relation residuals, and CG column orthonormality.
pub fn check_reprings() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let mut tensor_fail = None;
    for i2 in 0..=6u32 {
        for j2 in 0..=6u32 {
            let a = RepLabel::osp2(i2);
            let b = RepLabel::osp2(j2);
            let direct = osp_tensor(&a, &b)?;
            let mut weights: BTreeMap<i64, u32> = BTreeMap::new();
            let string = |j2: u32| -> Vec<i64> { (-(j2 as i64)..=j2 as i64).collect() };
            for wa in string(i2) {
                for wb in string(j2) {
                    *weights.entry(wa + wb).or_insert(0) += 1;
                }
            }
            let peeled = weight_decompose(&weights, RepAlgebra::Osp)?;
            if direct != peeled {
                tensor_fail = Some(format!("(i,j)=({},{})", a.j_string(), b.j_string()));
            }
        }
    }
    out.push(match tensor_fail {
        None => Check::ok(
            "osp-tensor vs weight oracle i,j<=3",
            "tensor rule agrees with highest-weight peeling",
        ),
        Some(d) => Check::fail("osp-tensor vs weight oracle i,j<=3", d),
    });

    let mut worst: (String, f64) = (String::new(), 0.0);
    for label in 0..=8u32 {
        let m = matrices(&RepLabel::sl2(label));
        let r = m.max_residual();
        if r > worst.1 {
            worst = (format!("sl2 label {label}"), r);
        }
    }
    for j2 in 0..=6u32 {
        let m = matrices(&RepLabel::osp2(j2));
        let r = m.max_residual();
        if r > worst.1 {
            worst = (format!("osp j={}", rat(j2 as i64, 2)), r);
        }
    }
    out.push(Check::expect(
        "matrix-relations residuals",
        worst.1 < MATRIX_TOLERANCE,
        format!("worst residual {:.3e} ({})", worst.1, worst.0),
    ));

    let mut cg_fail = None;
    for (j1, j2) in [(2i64, 2i64), (4, 3), (3, 3)] {
        let mut j3 = (j1 - j2).abs();
        while j3 <= j1 + j2 {
            let mut m3 = -j3;
            while m3 <= j3 {
                let mut norm = 0.0;
                let mut m1 = -j1;
                while m1 <= j1 {
                    let m2 = m3 - m1;
                    if m2.abs() <= j2 && (j2 - m2) % 2 == 0 {
                        let c = sl2_cg(j1, j2, j3, m1, m2)?;
                        norm += c * c;
                    }
                    m1 += 2;
                }
                if (norm - 1.0).abs() >= MATRIX_TOLERANCE {
                    cg_fail = Some(format!("column ({j1},{j2},{j3},{m3}) norm {norm}"));
                }
                m3 += 2;
            }
            j3 += 2;
        }
    }
    out.push(match cg_fail {
        None => Check::ok("cg-orthonormality", "CG columns have unit norm"),
        Some(d) => Check::fail("cg-orthonormality", d),
    });
    Ok(out)
}

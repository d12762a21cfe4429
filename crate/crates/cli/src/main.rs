//! Batch command-line frontend: every computation is a subcommand with
//! deterministic text or JSON output.
//!
//! Exit codes: 0 everything passed, 1 a verification check failed,
//! 2 invalid arguments, 3 a resource cap was exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use minmod::algebra::Flavor;
use minmod::bsa::{bsa_ns, bsa_vir_c1, calibrate, CalibrationReport};
use minmod::chars::{ch_irr_c1, ch_irr_ns, ch_lattice, ch_verma, SectorLabel};
use minmod::poly::{rational_roots, Poly1};
use minmod::qseries::QSeries;
use minmod::rational::{parse_rat, rat, rat_int, Rat};
use minmod::verify::{self, Check};
use minmod::verma::{central_charge, degenerate_point, singular_vectors, VermaVector};
use minmod::zhu::{fusion_channels_ns, fusion_channels_vir, fusion_polys_ns, fusion_poly_vir,
    fusion_ring, zhu_project_ns, zhu_project_vir};
use std::process::ExitCode;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Vir,
    Ns,
}

impl From<Algebra> for Flavor {
    fn from(a: Algebra) -> Flavor {
        match a {
            Algebra::Vir => Flavor::Virasoro,
            Algebra::Ns => Flavor::Ns,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CharKind {
    Verma,
    Irr,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sector {
    Vl,
    VlHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    FusionVir,
    FusionNs,
    Chars,
    Reprings,
    All,
}

#[derive(Parser)]
#[command(
    name = "minmod",
    version,
    about = "Exact fusion rings for degenerate minimal models (Virasoro c=1, N=1 NS c=3/2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the singular vector of the label-q degenerate module and
    /// calibrate the closed-form candidate against it
    Singular {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Level label: the Virasoro vector lives at level q over
        /// M(1,(q-1)^2/4); the NS vector at level q/2 over M(3/2,(q-1)^2/8)
        /// (q odd)
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest Verma level the solver will attempt
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
    /// Fusion polynomials, their roots, and the admitted channels
    Fusion {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// first Virasoro label (with --algebra vir)
        #[arg(long)]
        m: Option<u32>,
        /// second Virasoro label (with --algebra vir)
        #[arg(long)]
        n: Option<u32>,
        /// first NS label, odd (with --algebra ns)
        #[arg(long)]
        q: Option<u32>,
        /// second NS label, odd (with --algebra ns)
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
    /// Full table of fusion structure constants up to a label bound
    Table {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// label bound (default 6 for vir, 9 for ns)
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
    /// q-series characters of Verma, irreducible, and lattice modules
    Chars {
        #[arg(long, value_enum)]
        kind: CharKind,
        #[arg(long, value_enum)]
        algebra: Option<Algebra>,
        /// module label (irreducible characters)
        #[arg(long)]
        label: Option<u32>,
        /// lowest weight as an exact rational, e.g. 1/4 (Verma characters)
        #[arg(long)]
        h: Option<String>,
        #[arg(long, value_enum)]
        sector: Option<Sector>,
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Zhu-bimodule image of the label's singular vector, optionally
    /// specialized at a second label's top-level weight
    Zhu {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// module label (Virasoro m >= 1, or odd NS q)
        #[arg(long)]
        label: u32,
        /// second label: specializes y and prints roots
        #[arg(long)]
        with: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
    /// Calibrate the closed-form singular-vector candidate of a label
    /// against the solver under the fixed convention-map family
    Calibrate {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
    /// Run a verification suite; exit 0 iff every check passes
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// label bound (default 6 for vir checks, 9 for ns checks)
        #[arg(long)]
        bound: Option<u32>,
        /// q-series truncation order for character checks
        #[arg(long, default_value_t = 20)]
        order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 16)]
        level_cap: u32,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

/// Doubled level of the label's singular vector, for cap checks.
fn label_level2(flavor: Flavor, label: u32) -> u32 {
    match flavor {
        Flavor::Virasoro => 2 * (label + 1),
        Flavor::Ns => label,
    }
}

fn check_cap(flavor: Flavor, label: u32, level_cap: u32) -> Result<(), ExitCode> {
    if label_level2(flavor, label) > 2 * level_cap {
        Err(fail(
            EXIT_RESOURCE,
            format!(
                "label {label} needs level {} beyond the cap {level_cap}",
                rat(label_level2(flavor, label) as i64, 2)
            ),
        ))
    } else {
        Ok(())
    }
}

fn poly_roots_json(p: &Poly1) -> serde_json::Value {
    match rational_roots(p) {
        Ok(roots) => serde_json::json!(roots
            .iter()
            .map(|(r, m)| serde_json::json!({ "root": r.to_string(), "multiplicity": m }))
            .collect::<Vec<_>>()),
        Err(_) => serde_json::json!([]),
    }
}

fn roots_text(p: &Poly1) -> String {
    match rational_roots(p) {
        Ok(roots) => roots
            .iter()
            .map(|(r, m)| {
                if *m == 1 {
                    r.to_string()
                } else {
                    format!("{r} (x{m})")
                }
            })
            .collect::<Vec<_>>()
            .join(", "),
        Err(_) => "none".to_string(),
    }
}

fn print_series(name: &str, s: &QSeries, format: Format) {
    match format {
        Format::Text => println!("{name}: {s}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "name": name, "terms": s.to_json() })
        ),
    }
}

fn cmd_singular(algebra: Algebra, q: u32, format: Format, level_cap: u32) -> ExitCode {
    let flavor: Flavor = algebra.into();
    if q == 0 || (flavor == Flavor::Ns && q.is_multiple_of(2)) {
        return fail(EXIT_INVALID, format!("invalid label q={q} for {flavor}"));
    }
    let module_label = match flavor {
        Flavor::Virasoro => q - 1,
        Flavor::Ns => q,
    };
    if let Err(code) = check_cap(flavor, module_label, level_cap) {
        return code;
    }
    let c = central_charge(flavor);
    let (h, level2) = degenerate_point(flavor, module_label).expect("validated label");
    let vectors = match singular_vectors(flavor, &c, &h, level2) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let candidate = match flavor {
        Flavor::Virasoro => bsa_vir_c1(q),
        Flavor::Ns => bsa_ns(q),
    };
    let calib = candidate
        .and_then(|cand| calibrate(&cand, flavor, &c, &h, level2))
        .ok();
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "module": { "flavor": flavor.to_string(), "c": c.to_string(), "h": h.to_string() },
                    "level": rat(level2, 2).to_string(),
                    "vectors": vectors.iter().map(VermaVector::to_json).collect::<Vec<_>>(),
                    "calibration": calib.as_ref().map(CalibrationReport::to_json),
                })
            );
        }
        Format::Text => {
            println!("module M({c}, {h})  [{flavor}]");
            println!("singular level {}", rat(level2, 2));
            match vectors.as_slice() {
                [] => println!("no singular vector"),
                vs => {
                    for v in vs {
                        println!("singular vector: {v}");
                    }
                }
            }
            if let Some(rep) = calib {
                println!("closed-form calibration:");
                print_calibration_text(&rep);
            }
        }
    }
    ExitCode::SUCCESS
}

fn print_calibration_text(rep: &CalibrationReport) {
    for m in &rep.maps {
        match &m.ratio {
            Some(r) => println!("  {:<18} ratio {r}", m.name),
            None => println!("  {:<18} no match", m.name),
        }
    }
}

fn cmd_fusion(
    algebra: Algebra,
    m: Option<u32>,
    n: Option<u32>,
    q: Option<u32>,
    r: Option<u32>,
    format: Format,
    level_cap: u32,
) -> ExitCode {
    match algebra {
        Algebra::Vir => {
            let (Some(m), Some(n)) = (m, n) else {
                return fail(EXIT_INVALID, "--algebra vir needs --m and --n");
            };
            if m == 0 || n == 0 {
                return fail(EXIT_INVALID, "Virasoro fusion labels start at 1");
            }
            for label in [m, n] {
                if let Err(code) = check_cap(Flavor::Virasoro, label, level_cap) {
                    return code;
                }
            }
            let poly_fwd = fusion_poly_vir(m, n).expect("validated labels");
            let poly_bwd = fusion_poly_vir(n, m).expect("validated labels");
            let channels = fusion_channels_vir(m, n).expect("validated labels");
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "flavor": "vir", "m": m, "n": n,
                        "poly": poly_fwd.to_string(),
                        "poly_swapped": poly_bwd.to_string(),
                        "roots": poly_roots_json(&poly_fwd),
                        "roots_swapped": poly_roots_json(&poly_bwd),
                        "channels": channels.to_json(),
                    })
                ),
                Format::Text => {
                    println!("fusion a({m}) x a({n})  [vir]");
                    println!("polynomial ({m},{n}): {poly_fwd}");
                    println!("  roots: {}", roots_text(&poly_fwd));
                    println!("polynomial ({n},{m}): {poly_bwd}");
                    println!("  roots: {}", roots_text(&poly_bwd));
                    let labels: Vec<String> =
                        channels.labels.keys().map(|l| format!("a({l})")).collect();
                    println!("channels: {}", labels.join(" + "));
                }
            }
        }
        Algebra::Ns => {
            let (Some(q), Some(r)) = (q, r) else {
                return fail(EXIT_INVALID, "--algebra ns needs --q and --r");
            };
            if q % 2 == 0 || r % 2 == 0 || q == 0 || r == 0 {
                return fail(EXIT_INVALID, "NS fusion labels are odd and positive");
            }
            for label in [q, r] {
                if let Err(code) = check_cap(Flavor::Ns, label, level_cap) {
                    return code;
                }
            }
            let (q1, q2) = fusion_polys_ns(q, r).expect("validated labels");
            let channels = fusion_channels_ns(q, r).expect("validated labels");
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "flavor": "ns", "q": q, "r": r,
                        "q1": q1.to_string(),
                        "q2": q2.to_string(),
                        "q1_roots": poly_roots_json(&q1),
                        "q2_roots": poly_roots_json(&q2),
                        "channels": channels.to_json(),
                    })
                ),
                Format::Text => {
                    println!("fusion b({q}) x b({r})  [ns]");
                    println!("Q1 (odd sector):  {q1}");
                    println!("  roots: {}", roots_text(&q1));
                    println!("Q2 (even sector): {q2}");
                    println!("  roots: {}", roots_text(&q2));
                    let labels: Vec<String> = channels
                        .labels
                        .iter()
                        .map(|(l, d)| {
                            format!(
                                "b({l}):{}",
                                d.parity.map(|p| p.name()).unwrap_or("?")
                            )
                        })
                        .collect();
                    println!("channels: {}", labels.join("  "));
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_table(algebra: Algebra, bound: Option<u32>, format: Format, level_cap: u32) -> ExitCode {
    let flavor: Flavor = algebra.into();
    let bound = bound.unwrap_or(match flavor {
        Flavor::Virasoro => 6,
        Flavor::Ns => 9,
    });
    if bound == 0 {
        return fail(EXIT_INVALID, "bound must be at least 1");
    }
    if let Err(code) = check_cap(flavor, bound, level_cap) {
        return code;
    }
    let table = match fusion_ring(flavor, bound) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match format {
        Format::Json => println!("{}", table.to_json()),
        Format::Text => {
            println!("fusion table [{flavor}], labels up to {bound}");
            let sym = match flavor {
                Flavor::Virasoro => "a",
                Flavor::Ns => "b",
            };
            for (&(a, b), channels) in table.products() {
                let rhs: Vec<String> = channels
                    .labels
                    .iter()
                    .map(|(l, d)| match d.parity {
                        Some(p) => format!("{sym}({l})[{}]", p.name()),
                        None => format!("{sym}({l})"),
                    })
                    .collect();
                println!("{sym}({a}) x {sym}({b}) = {}", rhs.join(" + "));
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_chars(
    kind: CharKind,
    algebra: Option<Algebra>,
    label: Option<u32>,
    h: Option<String>,
    sector: Option<Sector>,
    order: u32,
    format: Format,
) -> ExitCode {
    if order > 256 {
        return fail(EXIT_RESOURCE, "order cap is 256");
    }
    let order = rat_int(order as i64);
    match kind {
        CharKind::Verma => {
            let Some(algebra) = algebra else {
                return fail(EXIT_INVALID, "--kind verma needs --algebra");
            };
            let Some(h) = h else {
                return fail(EXIT_INVALID, "--kind verma needs --h");
            };
            let h: Rat = match parse_rat(&h) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_INVALID, e),
            };
            match ch_verma(algebra.into(), &h, &order) {
                Ok(s) => print_series(&format!("ch M(c,{h})"), &s, format),
                Err(e) => return fail(EXIT_INVALID, e),
            }
        }
        CharKind::Irr => {
            let (Some(algebra), Some(label)) = (algebra, label) else {
                return fail(EXIT_INVALID, "--kind irr needs --algebra and --label");
            };
            let result = match algebra {
                Algebra::Vir => ch_irr_c1(label, &order),
                Algebra::Ns => ch_irr_ns(label, &order),
            };
            match result {
                Ok(s) => print_series(&format!("ch L (label {label})"), &s, format),
                Err(e) => return fail(EXIT_INVALID, e),
            }
        }
        CharKind::Lattice => {
            let Some(sector) = sector else {
                return fail(EXIT_INVALID, "--kind lattice needs --sector");
            };
            let sector = match sector {
                Sector::Vl => SectorLabel::VL,
                Sector::VlHalf => SectorLabel::VLHalf,
            };
            match ch_lattice(sector, &order) {
                Ok(s) => print_series(&format!("ch {}", sector.name()), &s, format),
                Err(e) => return fail(EXIT_INVALID, e),
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_zhu(
    algebra: Algebra,
    label: u32,
    with: Option<u32>,
    format: Format,
    level_cap: u32,
) -> ExitCode {
    let flavor: Flavor = algebra.into();
    if label == 0 && flavor == Flavor::Virasoro {
        return fail(EXIT_INVALID, "Virasoro Zhu projection needs a label >= 1");
    }
    if flavor == Flavor::Ns && label.is_multiple_of(2) {
        return fail(EXIT_INVALID, "NS labels are odd");
    }
    if let Err(code) = check_cap(flavor, label, level_cap) {
        return code;
    }
    let c = central_charge(flavor);
    let (h, level2) = degenerate_point(flavor, label).expect("validated label");
    let sv = match singular_vectors(flavor, &c, &h, level2) {
        Ok(v) if v.len() == 1 => v.into_iter().next().unwrap(),
        Ok(v) => return fail(EXIT_INVALID, format!("singular space has dimension {}", v.len())),
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match flavor {
        Flavor::Virasoro => {
            let image = zhu_project_vir(&sv.to_element(), &h).expect("canonical vector");
            let specialized = with.map(|n| {
                let y = rat((n as i64) * (n as i64), 4);
                (n, image.specialize_y(&y))
            });
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "flavor": "vir", "m": label,
                        "image": image.to_string(),
                        "specialized": specialized.as_ref().map(|(n, p)| serde_json::json!({
                            "n": n, "poly": p.to_string(), "roots": poly_roots_json(p),
                        })),
                    })
                ),
                Format::Text => {
                    println!("Zhu image of the label-{label} singular vector [vir]");
                    println!("[s] = {image}");
                    if let Some((n, p)) = specialized {
                        println!("at y = {n}^2/4: {p}");
                        println!("  roots: {}", roots_text(&p));
                    }
                }
            }
        }
        Flavor::Ns => {
            let img1 = zhu_project_ns(&sv.to_element(), &h).expect("canonical vector");
            let gs = minmod::verma::apply_mode(minmod::algebra::Mode::g2(-1), &sv)
                .expect("NS module admits G modes");
            let img2 = zhu_project_ns(&gs.to_element(), &h).expect("canonical vector");
            let specialized = with.map(|r| {
                let y = rat((r as i64 - 1) * (r as i64 - 1), 8);
                (r, img1.odd.specialize_y(&y), img2.even.specialize_y(&y))
            });
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "flavor": "ns", "q": label,
                        "odd_image": img1.odd.to_string(),
                        "even_image_of_gs": img2.even.to_string(),
                        "specialized": specialized.as_ref().map(|(r, q1, q2)| serde_json::json!({
                            "r": r,
                            "q1": q1.to_string(), "q1_roots": poly_roots_json(q1),
                            "q2": q2.to_string(), "q2_roots": poly_roots_json(q2),
                        })),
                    })
                ),
                Format::Text => {
                    println!("Zhu images of the label-{label} singular vector s [ns]");
                    println!("[s]          = ({}) [G-1/2 v]", img1.odd);
                    println!("[G(-1/2) s]  = ({}) [v]", img2.even);
                    if let Some((r, q1, q2)) = specialized {
                        println!("at y = h(1,{r}):");
                        println!("  Q1 = {q1}   roots: {}", roots_text(&q1));
                        println!("  Q2 = {q2}   roots: {}", roots_text(&q2));
                    }
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_calibrate(algebra: Algebra, q: u32, format: Format, level_cap: u32) -> ExitCode {
    let flavor: Flavor = algebra.into();
    if q == 0 || (flavor == Flavor::Ns && q.is_multiple_of(2)) {
        return fail(EXIT_INVALID, format!("invalid label q={q} for {flavor}"));
    }
    let module_label = match flavor {
        Flavor::Virasoro => q - 1,
        Flavor::Ns => q,
    };
    if let Err(code) = check_cap(flavor, module_label, level_cap) {
        return code;
    }
    let candidate = match flavor {
        Flavor::Virasoro => bsa_vir_c1(q),
        Flavor::Ns => bsa_ns(q),
    };
    let c = central_charge(flavor);
    let (h, level2) = degenerate_point(flavor, module_label).expect("validated label");
    let report = match candidate.and_then(|cand| calibrate(&cand, flavor, &c, &h, level2)) {
        Ok(rep) => rep,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => {
            println!(
                "calibration of the closed-form q={q} candidate over M({c}, {h}) [{flavor}]"
            );
            println!("solver singular space dimension: {}", report.solver_dim);
            print_calibration_text(&report);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(
    suite: Suite,
    bound: Option<u32>,
    order: u32,
    format: Format,
    level_cap: u32,
) -> ExitCode {
    if bound == Some(0) {
        return fail(EXIT_INVALID, "bound must be at least 1");
    }
    let vir_bound = bound.unwrap_or(6);
    let ns_bound = bound.unwrap_or(9);
    let ns_bound = if ns_bound.is_multiple_of(2) { ns_bound - 1 } else { ns_bound };
    if order > 256 {
        return fail(EXIT_RESOURCE, "order cap is 256");
    }
    let needs_vir = matches!(suite, Suite::FusionVir | Suite::All);
    let needs_ns = matches!(suite, Suite::FusionNs | Suite::All);
    if needs_vir && vir_bound + 1 > level_cap {
        return fail(
            EXIT_RESOURCE,
            format!("Virasoro bound {vir_bound} needs level {} beyond the cap {level_cap}", vir_bound + 1),
        );
    }
    if needs_ns && ns_bound > 2 * level_cap {
        return fail(
            EXIT_RESOURCE,
            format!("NS bound {ns_bound} needs level {}/2 beyond the cap {level_cap}", ns_bound),
        );
    }

    let run = || -> minmod::Result<Vec<Check>> {
        let mut checks = Vec::new();
        match suite {
            Suite::FusionVir => {
                checks.extend(verify::check_fusion_poly_law(vir_bound)?);
                checks.extend(verify::check_fusion_vir(vir_bound)?);
            }
            Suite::FusionNs => {
                checks.extend(verify::check_fusion_ns(ns_bound)?);
            }
            Suite::Chars => {
                checks.extend(verify::check_characters(order as i64)?);
            }
            Suite::Reprings => {
                checks.extend(verify::check_reprings()?);
            }
            Suite::All => {
                let vir_labels: Vec<u32> = (1..=vir_bound).collect();
                checks.extend(verify::check_singular(Flavor::Virasoro, &vir_labels, 20)?);
                let ns_labels: Vec<u32> = (3..=ns_bound).step_by(2).collect();
                checks.extend(verify::check_singular(Flavor::Ns, &ns_labels, 0)?);
                checks.extend(verify::check_bsa_vir(2..=vir_bound + 1)?);
                let ns_all: Vec<u32> = (1..=ns_bound).step_by(2).collect();
                checks.extend(verify::check_bsa_ns(&ns_all)?);
                checks.extend(verify::check_fusion_poly_law(vir_bound)?);
                checks.extend(verify::check_fusion_vir(vir_bound)?);
                checks.extend(verify::check_fusion_ns(ns_bound)?);
                checks.extend(verify::check_characters(order as i64)?);
                let gram_vir: Vec<u32> = (1..=vir_bound.min(4)).collect();
                checks.extend(verify::check_gram(Flavor::Virasoro, &gram_vir, 10)?);
                let gram_ns: Vec<u32> = (3..=ns_bound.min(5)).step_by(2).collect();
                checks.extend(verify::check_gram(Flavor::Ns, &gram_ns, 10)?);
                checks.extend(verify::check_reprings()?);
            }
        }
        Ok(checks)
    };
    let checks = match run() {
        Ok(c) => c,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    let pass = verify::all_pass(&checks);
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "pass": pass,
                "checks": verify::checks_to_json(&checks),
            })
        ),
        Format::Text => {
            for c in &checks {
                println!(
                    "{} {} -- {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            println!(
                "{}: {} checks, {}",
                if pass { "ok" } else { "FAILED" },
                checks.len(),
                if pass {
                    "all passed".to_string()
                } else {
                    format!(
                        "first failure: {}",
                        verify::first_failure(&checks).map(|c| c.name.as_str()).unwrap_or("?")
                    )
                }
            );
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Singular {
            algebra,
            q,
            format,
            level_cap,
        } => cmd_singular(algebra, q, format, level_cap),
        Command::Fusion {
            algebra,
            m,
            n,
            q,
            r,
            format,
            level_cap,
        } => cmd_fusion(algebra, m, n, q, r, format, level_cap),
        Command::Table {
            algebra,
            bound,
            format,
            level_cap,
        } => cmd_table(algebra, bound, format, level_cap),
        Command::Chars {
            kind,
            algebra,
            label,
            h,
            sector,
            order,
            format,
        } => cmd_chars(kind, algebra, label, h, sector, order, format),
        Command::Zhu {
            algebra,
            label,
            with,
            format,
            level_cap,
        } => cmd_zhu(algebra, label, with, format, level_cap),
        Command::Calibrate {
            algebra,
            q,
            format,
            level_cap,
        } => cmd_calibrate(algebra, q, format, level_cap),
        Command::Verify {
            suite,
            bound,
            order,
            format,
            level_cap,
        } => cmd_verify(suite, bound, order, format, level_cap),
    }
}

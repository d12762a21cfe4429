//! q-series characters of Verma and irreducible modules, lattice-sector
//! characters, and the branching identities between them.
//!
//! Characters are graded dimensions ch_q(W) = sum dim(W_n) q^n with no
//! q^{-c/24} prefactor; the defining quotients cancel it.

use crate::algebra::Flavor;
use crate::error::{Error, Result};
use crate::qseries::{euler_inverse, ns_denominator, QSeries};
use crate::rational::{rat, Rat};
use crate::verma::degenerate_point;
use num_traits::Signed;

/// Lattice sectors: the even rank-one lattice module V_L and its twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorLabel {
    VL,
    VLHalf,
}

impl SectorLabel {
    pub fn name(&self) -> &'static str {
        match self {
            SectorLabel::VL => "vl",
            SectorLabel::VLHalf => "vl-half",
        }
    }
}

/// Verma character: q^h times the flavor's denominator series, exact for
/// exponents up to h + order.
pub fn ch_verma(flavor: Flavor, h: &Rat, order: &Rat) -> Result<QSeries> {
    let base = match flavor {
        Flavor::Virasoro => euler_inverse(order)?,
        Flavor::Ns => ns_denominator(order)?,
    };
    base.shift(h)
}

/// Irreducible c=1 character: (q^{m^2/4} - q^{(m+2)^2/4}) / (q^{-1/24} eta).
pub fn ch_irr_c1(m: u32, order: &Rat) -> Result<QSeries> {
    let m = m as i64;
    let low = ch_verma(Flavor::Virasoro, &rat(m * m, 4), order)?;
    let high = ch_verma(Flavor::Virasoro, &rat((m + 2) * (m + 2), 4), order)?;
    Ok(low.sub(&high))
}

/// Irreducible NS character at c=3/2 for an odd label q:
/// (q^{h_{1,q}} - q^{h_{1,q+2}}) times the NS denominator.
pub fn ch_irr_ns(q_label: u32, order: &Rat) -> Result<QSeries> {
    if q_label.is_multiple_of(2) {
        return Err(Error::BadLabel(q_label as i64));
    }
    let (h, _) = degenerate_point(Flavor::Ns, q_label)?;
    let (h_next, _) = degenerate_point(Flavor::Ns, q_label + 2)?;
    let low = ch_verma(Flavor::Ns, &h, order)?;
    let high = ch_verma(Flavor::Ns, &h_next, order)?;
    Ok(low.sub(&high))
}

/// Lattice-sector character: the theta series over m^2 (or (m+1/2)^2)
/// times the Heisenberg character.
pub fn ch_lattice(sector: SectorLabel, order: &Rat) -> Result<QSeries> {
    if order.is_negative() {
        return Err(Error::NegativeOrder(order.to_string()));
    }
    let mut theta = QSeries::zero(order)?;
    let mut m: i64 = 0;
    loop {
        let exps: Vec<Rat> = match sector {
            SectorLabel::VL => {
                if m == 0 {
                    vec![rat(0, 1)]
                } else {
                    vec![rat(m * m, 1), rat(m * m, 1)]
                }
            }
            SectorLabel::VLHalf => {
                // m and -m-1 give the same (m+1/2)^2
                let e = rat((2 * m + 1) * (2 * m + 1), 4);
                vec![e.clone(), e]
            }
        };
        if &exps[0] > order {
            break;
        }
        for e in exps {
            theta = theta.add(&QSeries::monomial(&e, 1, order)?);
        }
        m += 1;
    }
    Ok(theta.mul(&euler_inverse(order)?))
}

/// Checks the branching identity of a sector at the given order, as exact
/// coefficient-wise equality:
///   ch V_L       = sum_{n>=0} (2n+1) ch L(1, n^2)
///   ch V_{L+1/2} = sum_{n>=0} (2n+2) ch L(1, (2n+1)^2/4)
pub fn identity_check(sector: SectorLabel, order: &Rat) -> Result<bool> {
    let lhs = ch_lattice(sector, order)?;
    let mut rhs = QSeries::zero(&(order + rat(4, 1)))?;
    let mut n: i64 = 0;
    loop {
        let (label, mult) = match sector {
            SectorLabel::VL => (2 * n, 2 * n + 1),
            SectorLabel::VLHalf => (2 * n + 1, 2 * n + 2),
        };
        let lowest = rat(label * label, 4);
        if &lowest > order {
            break;
        }
        rhs = rhs.add(&ch_irr_c1(label as u32, order)?.scale(mult as i128));
        n += 1;
    }
    lhs.agree_up_to(&rhs, order)
}

//! Representation rings of sl(2) and osp(1|2): labels, tensor-product
//! decompositions, explicit matrix realizations, Clebsch-Gordan
//! coefficients, and the isomorphism checks against fusion tables.
//!
//! Ring and decomposition logic is exact integer arithmetic; floating
//! point enters only through the matrix realizations and CG values, whose
//! entries are square roots.
//!
//! The osp(1|2) module V(j) splits under sl(2) into an integer layer
//! (i - j integral) and a half layer; the even ladders act with the spin
//! appropriate to each layer and the odd generators move between them.
//! The relation set realized over the reals is
//!
//! ```text
//! [h,x]=2x  [h,y]=-2y  [x,y]=h   [h,chi]=chi  [h,phi]=-phi
//! {chi,chi}=2x  {phi,phi}=-2y  {chi,phi}=h
//! [x,phi]=-chi  [y,chi]=-phi  [x,chi]=0  [y,phi]=0
//! ```
//!
//! The variant with `{phi,phi}=+2y` and `{chi,phi}=2h` is not realizable
//! over any field once `[x,y]=h` is imposed; the relation report makes
//! the adopted convention explicit.

use crate::error::{Error, Result};
use crate::rational::rat;
use crate::zhu::FusionTable;
use crate::Flavor;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepAlgebra {
    Sl2,
    Osp,
}

impl RepAlgebra {
    pub fn name(&self) -> &'static str {
        match self {
            RepAlgebra::Sl2 => "sl2",
            RepAlgebra::Osp => "osp",
        }
    }
}

/// An irreducible label, stored as the doubled value `j2 = 2j`. For sl2
/// the label j is the doubled-weight integer (dimension j+1); for osp it
/// is a half-integer (dimension 4j+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepLabel {
    pub algebra: RepAlgebra,
    pub j2: u32,
}

impl RepLabel {
    pub fn sl2(label: u32) -> RepLabel {
        RepLabel {
            algebra: RepAlgebra::Sl2,
            j2: 2 * label,
        }
    }

    /// osp label from the doubled value 2j.
    pub fn osp2(j2: u32) -> RepLabel {
        RepLabel {
            algebra: RepAlgebra::Osp,
            j2,
        }
    }

    pub fn dim(&self) -> usize {
        match self.algebra {
            RepAlgebra::Sl2 => (self.j2 / 2 + 1) as usize,
            RepAlgebra::Osp => (2 * self.j2 + 1) as usize,
        }
    }

    pub fn j_string(&self) -> String {
        rat(self.j2 as i64, 2).to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "algebra": self.algebra.name(), "j": self.j_string() })
    }
}

/// A multiset of irreducible labels of one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMultiset {
    pub algebra: RepAlgebra,
    counts: BTreeMap<u32, u32>,
}

impl RepMultiset {
    pub fn new(algebra: RepAlgebra) -> Self {
        RepMultiset {
            algebra,
            counts: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, j2: u32, mult: u32) {
        if mult > 0 {
            *self.counts.entry(j2).or_insert(0) += mult;
        }
    }

    pub fn counts(&self) -> &BTreeMap<u32, u32> {
        &self.counts
    }

    pub fn labels(&self) -> Vec<RepLabel> {
        self.counts
            .keys()
            .map(|&j2| RepLabel {
                algebra: self.algebra,
                j2,
            })
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.counts
            .iter()
            .map(|(&j2, &m)| {
                RepLabel {
                    algebra: self.algebra,
                    j2,
                }
                .dim()
                    * m as usize
            })
            .sum()
    }
}

/// Clebsch-Gordan decomposition of sl2 doubled labels: one copy of each
/// label from |a-b| to a+b in steps of 2.
pub fn sl2_tensor(a: &RepLabel, b: &RepLabel) -> Result<RepMultiset> {
    if a.algebra != RepAlgebra::Sl2 || b.algebra != RepAlgebra::Sl2 {
        return Err(Error::MixedAlgebras);
    }
    let (la, lb) = (a.j2 / 2, b.j2 / 2);
    let mut out = RepMultiset::new(RepAlgebra::Sl2);
    let mut l = la.abs_diff(lb);
    while l <= la + lb {
        out.insert(2 * l, 1);
        l += 2;
    }
    Ok(out)
}

/// One copy of each V(k), k from |i-j| to i+j in half-integer steps.
pub fn osp_tensor(a: &RepLabel, b: &RepLabel) -> Result<RepMultiset> {
    if a.algebra != RepAlgebra::Osp || b.algebra != RepAlgebra::Osp {
        return Err(Error::MixedAlgebras);
    }
    let mut out = RepMultiset::new(RepAlgebra::Osp);
    for k2 in a.j2.abs_diff(b.j2)..=a.j2 + b.j2 {
        out.insert(k2, 1);
    }
    Ok(out)
}

/// The doubled weight string of one irreducible module.
fn weight_string(algebra: RepAlgebra, j2: u32) -> Vec<i64> {
    let top = j2 as i64;
    let step = match algebra {
        RepAlgebra::Sl2 => 4, // doubled label j has weights j, j-2, ..., -j
        RepAlgebra::Osp => 1, // half-integer steps between doubled weights
    };
    let mut w = -top;
    let mut out = Vec::new();
    while w <= top {
        out.push(w);
        w += step;
    }
    out
}

/// Independent decomposition oracle: peels highest weights off a weight
/// multiset (keyed by doubled weight) using the known weight strings.
pub fn weight_decompose(
    weights: &BTreeMap<i64, u32>,
    algebra: RepAlgebra,
) -> Result<RepMultiset> {
    let mut left: BTreeMap<i64, u32> = weights
        .iter()
        .filter(|(_, &m)| m > 0)
        .map(|(&w, &m)| (w, m))
        .collect();
    let mut out = RepMultiset::new(algebra);
    while let Some((&top, &mult)) = left.iter().next_back() {
        if top < 0 {
            return Err(Error::BadWeightMultiset(format!(
                "highest remaining weight {}/2 is negative",
                top
            )));
        }
        let j2 = top as u32;
        if algebra == RepAlgebra::Sl2 && !j2.is_multiple_of(2) {
            return Err(Error::BadWeightMultiset(format!(
                "sl2 weight {}/2 is not an integer",
                top
            )));
        }
        for w in weight_string(algebra, j2) {
            let slot = left.entry(w).or_insert(0);
            if *slot < mult {
                return Err(Error::BadWeightMultiset(format!(
                    "peeling V({}) drives weight {}/2 negative",
                    rat(j2 as i64, 2),
                    w
                )));
            }
            *slot -= mult;
            if *slot == 0 {
                left.remove(&w);
            }
        }
        out.insert(j2, mult);
    }
    Ok(out)
}

pub type Mat = Vec<Vec<f64>>;

fn mat_zero(n: usize) -> Mat {
    vec![vec![0.0; n]; n]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            let v = a[i][k];
            if v == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += v * b[k][j];
            }
        }
    }
    out
}

fn mat_lin(c1: f64, a: &Mat, c2: f64, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = mat_zero(n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = c1 * a[i][j] + c2 * b[i][j];
        }
    }
    out
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    mat_lin(1.0, &mat_mul(a, b), -1.0, &mat_mul(b, a))
}

fn anticommutator(a: &Mat, b: &Mat) -> Mat {
    mat_lin(1.0, &mat_mul(a, b), 1.0, &mat_mul(b, a))
}

fn max_abs(a: &Mat) -> f64 {
    a.iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Dense double-precision matrices realizing one irreducible module.
#[derive(Debug, Clone)]
pub struct MatrixRealization {
    pub label: RepLabel,
    /// generator name -> row-major matrix
    pub mats: BTreeMap<&'static str, Mat>,
}

impl MatrixRealization {
    pub fn get(&self, name: &str) -> &Mat {
        &self.mats[name]
    }

    /// Named relation residuals (max absolute entry of the defect).
    pub fn relation_residuals(&self) -> Vec<(String, f64)> {
        let m = |n: &str| self.get(n);
        let mut out = Vec::new();
        let mut check = |name: &str, lhs: Mat, rhs: Mat| {
            out.push((name.to_string(), max_abs(&mat_lin(1.0, &lhs, -1.0, &rhs))));
        };
        let (h, x, y) = (m("h"), m("x"), m("y"));
        check("[h,x]=2x", commutator(h, x), mat_lin(2.0, x, 0.0, h));
        check("[h,y]=-2y", commutator(h, y), mat_lin(-2.0, y, 0.0, h));
        check("[x,y]=h", commutator(x, y), h.clone());
        if self.label.algebra == RepAlgebra::Osp {
            let (chi, phi) = (m("chi"), m("phi"));
            check("[h,chi]=chi", commutator(h, chi), chi.clone());
            check("[h,phi]=-phi", commutator(h, phi), mat_lin(-1.0, phi, 0.0, h));
            check("{chi,chi}=2x", anticommutator(chi, chi), mat_lin(2.0, x, 0.0, h));
            check(
                "{phi,phi}=-2y",
                anticommutator(phi, phi),
                mat_lin(-2.0, y, 0.0, h),
            );
            check("{chi,phi}=h", anticommutator(chi, phi), h.clone());
            check("[x,phi]=-chi", commutator(x, phi), mat_lin(-1.0, chi, 0.0, h));
            check("[y,chi]=-phi", commutator(y, chi), mat_lin(-1.0, phi, 0.0, h));
            check("[x,chi]=0", commutator(x, chi), mat_zero(h.len()));
            check("[y,phi]=0", commutator(y, phi), mat_zero(h.len()));
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.relation_residuals()
            .into_iter()
            .fold(0.0, |acc, (_, r)| acc.max(r))
    }

    pub fn relation_report(&self, tolerance: f64) -> serde_json::Value {
        let residuals = self.relation_residuals();
        serde_json::json!({
            "label": self.label.to_json(),
            "tolerance": tolerance,
            "pass": residuals.iter().all(|(_, r)| *r < tolerance),
            "relations": residuals.iter().map(|(n, r)| serde_json::json!({
                "name": n,
                "residual": r,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label.to_json(),
            "matrices": self.mats.iter()
                .map(|(name, m)| (name.to_string(), serde_json::json!(m)))
                .collect::<serde_json::Map<_, _>>(),
        })
    }
}

/// Matrix realization of V(label); the basis is ordered by descending
/// weight, `h` is diagonal, and the odd osp generators connect the two
/// weight layers.
pub fn matrices(label: &RepLabel) -> MatrixRealization {
    let mut mats = BTreeMap::new();
    match label.algebra {
        RepAlgebra::Sl2 => {
            // doubled label j, basis u(j), u(j-2), ..., u(-j)
            let j = (label.j2 / 2) as f64;
            let dim = label.dim();
            let mut h = mat_zero(dim);
            let mut x = mat_zero(dim);
            let mut y = mat_zero(dim);
            for k in 0..dim {
                let m = j - 2.0 * k as f64;
                h[k][k] = m;
                if k > 0 {
                    // x: u(m) -> sqrt((j+m+2)(j-m))/2 u(m+2)
                    x[k - 1][k] = ((j + m + 2.0) * (j - m)).sqrt() / 2.0;
                }
                if k + 1 < dim {
                    // y: u(m) -> sqrt((j+m)(j-m+2))/2 u(m-2)
                    y[k + 1][k] = ((j + m) * (j - m + 2.0)).sqrt() / 2.0;
                }
            }
            mats.insert("h", h);
            mats.insert("x", x);
            mats.insert("y", y);
        }
        RepAlgebra::Osp => {
            // half-integer j, basis v_i for i = j, j-1/2, ..., -j
            let j = label.j2 as f64 / 2.0;
            let dim = label.dim();
            let idx_i = |k: usize| j - k as f64 / 2.0;
            let integer_layer = |k: usize| k.is_multiple_of(2);
            let mut h = mat_zero(dim);
            let mut x = mat_zero(dim);
            let mut y = mat_zero(dim);
            let mut chi = mat_zero(dim);
            let mut phi = mat_zero(dim);
            for k in 0..dim {
                let i = idx_i(k);
                h[k][k] = 2.0 * i;
                // even ladders stay in their layer (i -> i +- 1)
                if k >= 2 {
                    x[k - 2][k] = if integer_layer(k) {
                        ((j - i) * (j + i + 1.0)).sqrt()
                    } else {
                        ((j - i - 0.5) * (j + i + 0.5)).sqrt()
                    };
                }
                if k + 2 < dim {
                    y[k + 2][k] = if integer_layer(k) {
                        ((j + i) * (j - i + 1.0)).sqrt()
                    } else {
                        ((j + i - 0.5) * (j - i + 0.5)).sqrt()
                    };
                }
                // odd generators move between layers (i -> i +- 1/2)
                if k >= 1 {
                    chi[k - 1][k] = if integer_layer(k) {
                        -(j - i).sqrt()
                    } else {
                        -(j + i + 0.5).sqrt()
                    };
                }
                if k + 1 < dim {
                    phi[k + 1][k] = if integer_layer(k) {
                        -(j + i).sqrt()
                    } else {
                        (j - i + 0.5).sqrt()
                    };
                }
            }
            mats.insert("h", h);
            mats.insert("x", x);
            mats.insert("y", y);
            mats.insert("chi", chi);
            mats.insert("phi", phi);
        }
    }
    MatrixRealization {
        label: *label,
        mats,
    }
}

fn sl2_xcoef(j: i64, m: i64) -> f64 {
    (((j + m + 2) * (j - m)) as f64).sqrt() / 2.0
}

fn sl2_ycoef(j: i64, m: i64) -> f64 {
    (((j + m) * (j - m + 2)) as f64).sqrt() / 2.0
}

/// Clebsch-Gordan coefficient in doubled labels: the coefficient of
/// u_{j1}(m1) (x) u_{j2}(m2) in u_{j3}(m1+m2), built by solving for the
/// highest component of V(j3) and lowering. The highest component is
/// normalized with a positive coefficient on the lexicographically
/// largest (m1,m2). Zero when j3 is outside |j1-j2|..j1+j2.
pub fn sl2_cg(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64) -> Result<f64> {
    for (j, m) in [(j1, m1), (j2, m2)] {
        if j < 0 || m.abs() > j || (j - m) % 2 != 0 {
            return Err(Error::BadLabel(m));
        }
    }
    if j3 < 0 || j3 > j1 + j2 || j3 < (j1 - j2).abs() || (j1 + j2 - j3) % 2 != 0 {
        return Ok(0.0);
    }
    let m3 = m1 + m2;
    if m3.abs() > j3 {
        return Ok(0.0);
    }

    // weight-mu pairs, largest m1 first
    let pairs = |mu: i64| -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let mut a = j1.min(mu + j2);
        while a >= -j1 && mu - a <= j2 {
            if (j1 - a) % 2 == 0 {
                out.push((a, mu - a));
            }
            a -= 2;
        }
        out
    };

    // highest component: kernel of x on the weight-j3 space
    let src = pairs(j3);
    let dst = pairs(j3 + 2);
    let dst_index: BTreeMap<(i64, i64), usize> =
        dst.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut a = vec![vec![0.0f64; src.len()]; dst.len().max(1)];
    for (col, &(ma, mb)) in src.iter().enumerate() {
        if ma + 2 <= j1 {
            a[dst_index[&(ma + 2, mb)]][col] += sl2_xcoef(j1, ma);
        }
        if mb + 2 <= j2 {
            a[dst_index[&(ma, mb + 2)]][col] += sl2_xcoef(j2, mb);
        }
    }
    let mut top = f64_kernel_vector(&a, src.len());
    // unit norm, positive on the largest (m1,m2)
    let norm: f64 = top.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in top.iter_mut() {
        *v /= norm;
    }
    if top[0] < 0.0 {
        for v in top.iter_mut() {
            *v = -*v;
        }
    }

    // lower from weight j3 to weight m3
    let mut current: BTreeMap<(i64, i64), f64> =
        src.iter().copied().zip(top.iter().copied()).collect();
    let mut mu = j3;
    while mu > m3 {
        let mut next: BTreeMap<(i64, i64), f64> = BTreeMap::new();
        for (&(ma, mb), &v) in &current {
            if ma - 2 >= -j1 {
                *next.entry((ma - 2, mb)).or_insert(0.0) += v * sl2_ycoef(j1, ma);
            }
            if mb - 2 >= -j2 {
                *next.entry((ma, mb - 2)).or_insert(0.0) += v * sl2_ycoef(j2, mb);
            }
        }
        // u(mu-2) = y u(mu) / ycoef(j3, mu)
        let scale = sl2_ycoef(j3, mu);
        for v in next.values_mut() {
            *v /= scale;
        }
        current = next;
        mu -= 2;
    }
    Ok(current.get(&(m1, m2)).copied().unwrap_or(0.0))
}

/// One-dimensional kernel of an f64 matrix by Gaussian elimination with
/// partial pivoting.
fn f64_kernel_vector(a: &[Vec<f64>], cols: usize) -> Vec<f64> {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let (best, best_val) = (row..rows)
            .map(|i| (i, m[i][col].abs()))
            .fold((row, 0.0), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        if best_val < 1e-9 {
            continue;
        }
        m.swap(row, best);
        let inv = 1.0 / m[row][col];
        for entry in m[row].iter_mut().take(cols) {
            *entry *= inv;
        }
        for i in 0..rows {
            if i != row && m[i][col] != 0.0 {
                let f = m[i][col];
                let pivot_row = m[row].clone();
                for (entry, p) in m[i].iter_mut().zip(pivot_row.iter()).take(cols) {
                    *entry -= f * p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    let free = (0..cols)
        .find(|&c| pivot_of_col[c].is_none())
        .expect("kernel is nontrivial");
    let mut v = vec![0.0; cols];
    v[free] = 1.0;
    for (col, slot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = slot {
            v[col] = -m[*r][free];
        }
    }
    v
}

/// Compares a fusion table against the matching representation ring:
/// Virasoro label m maps to the sl2 doubled label m, NS label m to the
/// osp label with j = (m-1)/4. True iff every structure constant within
/// the bound agrees with the tensor rule.
pub fn iso_check(t: &FusionTable) -> Result<bool> {
    for (&(a, b), channels) in t.products() {
        let expected: Vec<u32> = match t.flavor {
            Flavor::Virasoro => {
                let rep = sl2_tensor(&RepLabel::sl2(a), &RepLabel::sl2(b))?;
                // sl2 doubled label j2 = 2m maps back to the fusion label m
                rep.counts().keys().map(|&j2| j2 / 2).collect()
            }
            Flavor::Ns => {
                let rep = osp_tensor(
                    &RepLabel::osp2((a - 1) / 2),
                    &RepLabel::osp2((b - 1) / 2),
                )?;
                // osp doubled label j2 = (m-1)/2 maps back to m = 2 j2 + 1
                rep.counts().keys().map(|&j2| 2 * j2 + 1).collect()
            }
        };
        if channels.label_set() != expected {
            return Ok(false);
        }
        for data in channels.labels.values() {
            if data.multiplicity != 1 {
                return Ok(false);
            }
        }
    }
    // completeness: every pair of table labels must be present
    let labels = t.labels();
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i..] {
            t.channels(a, b)?;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zhu::fusion_ring;

    #[test]
    fn sl2_tensor_examples() {
        let t = sl2_tensor(&RepLabel::sl2(1), &RepLabel::sl2(1)).unwrap();
        assert_eq!(t.counts(), &BTreeMap::from([(0, 1), (4, 1)])); // labels 0 and 2
        let t = sl2_tensor(&RepLabel::sl2(5), &RepLabel::sl2(0)).unwrap();
        assert_eq!(t.labels(), vec![RepLabel::sl2(5)]);
        let t = sl2_tensor(&RepLabel::sl2(2), &RepLabel::sl2(1)).unwrap();
        assert_eq!(t.counts(), &BTreeMap::from([(2, 1), (6, 1)])); // labels 1 and 3
        assert_eq!(t.total_dim(), 3 * 2);
        assert!(sl2_tensor(&RepLabel::sl2(1), &RepLabel::osp2(1)).is_err());
    }

    #[test]
    fn osp_tensor_examples() {
        let t = osp_tensor(&RepLabel::osp2(1), &RepLabel::osp2(1)).unwrap();
        assert_eq!(t.counts(), &BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(t.total_dim(), 3 * 3);
        let t = osp_tensor(&RepLabel::osp2(3), &RepLabel::osp2(0)).unwrap();
        assert_eq!(t.counts(), &BTreeMap::from([(3, 1)]));
    }

    fn tensor_weights(a: &RepLabel, b: &RepLabel) -> BTreeMap<i64, u32> {
        let mut out = BTreeMap::new();
        for wa in weight_string(a.algebra, a.j2) {
            for wb in weight_string(b.algebra, b.j2) {
                *out.entry(wa + wb).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn weight_decompose_examples() {
        // sl2: {1,-1} (x) {1,-1} -> labels 0 and 2
        let w = tensor_weights(&RepLabel::sl2(1), &RepLabel::sl2(1));
        let d = weight_decompose(&w, RepAlgebra::Sl2).unwrap();
        assert_eq!(d.counts(), &BTreeMap::from([(0, 1), (4, 1)]));

        // osp: V(1/2) (x) V(1/2) agrees with osp_tensor
        let w = tensor_weights(&RepLabel::osp2(1), &RepLabel::osp2(1));
        let d = weight_decompose(&w, RepAlgebra::Osp).unwrap();
        assert_eq!(
            d,
            osp_tensor(&RepLabel::osp2(1), &RepLabel::osp2(1)).unwrap()
        );

        // empty multiset decomposes to nothing
        let d = weight_decompose(&BTreeMap::new(), RepAlgebra::Osp).unwrap();
        assert!(d.counts().is_empty());

        // inconsistent multiset errors
        let bad = BTreeMap::from([(2i64, 1u32)]);
        assert!(weight_decompose(&bad, RepAlgebra::Osp).is_err());
    }

    #[test]
    fn sl2_dimension_conservation() {
        for a in 0..=6u32 {
            for b in 0..=6u32 {
                let (la, lb) = (RepLabel::sl2(a), RepLabel::sl2(b));
                let t = sl2_tensor(&la, &lb).unwrap();
                assert_eq!(t.total_dim(), la.dim() * lb.dim(), "({a},{b})");
            }
        }
    }

    #[test]
    fn osp_tensor_agrees_with_weight_oracle() {
        for i2 in 0..=6u32 {
            for j2 in 0..=6u32 {
                let a = RepLabel::osp2(i2);
                let b = RepLabel::osp2(j2);
                let direct = osp_tensor(&a, &b).unwrap();
                let peeled = weight_decompose(&tensor_weights(&a, &b), RepAlgebra::Osp).unwrap();
                assert_eq!(direct, peeled, "i2={i2} j2={j2}");
                assert_eq!(direct.total_dim(), a.dim() * b.dim());
            }
        }
    }

    #[test]
    fn matrix_relations_hold() {
        for label in 0..=8u32 {
            let m = matrices(&RepLabel::sl2(label));
            assert!(m.max_residual() < 1e-10, "sl2 label {label}");
        }
        for j2 in 0..=6u32 {
            let m = matrices(&RepLabel::osp2(j2));
            assert!(
                m.max_residual() < 1e-12,
                "osp j={} residual {}",
                rat(j2 as i64, 2),
                m.max_residual()
            );
        }
    }

    #[test]
    fn osp_h_spectrum_and_block_structure() {
        // h spectrum for j=1 is {2, 3/2, 1, ..., -2} doubled: each once
        let m = matrices(&RepLabel::osp2(2));
        let h = m.get("h");
        let diag: Vec<f64> = (0..h.len()).map(|k| h[k][k]).collect();
        assert_eq!(diag, vec![2.0, 1.0, 0.0, -1.0, -2.0]);
        // odd generators only connect different layers
        for name in ["chi", "phi"] {
            let g = m.get(name);
            for (r, row) in g.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if *v != 0.0 {
                        assert_ne!(r % 2, c % 2, "{name}[{r}][{c}] stays in a layer");
                    }
                }
            }
        }
        // sl2 highest vector is killed by x
        let m = matrices(&RepLabel::sl2(4));
        let x = m.get("x");
        assert!(x.iter().all(|row| row[0] == 0.0));
    }

    #[test]
    fn cg_examples() {
        assert!((sl2_cg(1, 1, 2, 1, 1).unwrap() - 1.0).abs() < 1e-12);
        let v = sl2_cg(1, 1, 0, 1, -1).unwrap();
        assert!((v.abs() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(sl2_cg(1, 1, 4, 1, 1).unwrap(), 0.0);
        assert!(sl2_cg(1, 1, 2, 2, 0).is_err());
    }

    #[test]
    fn cg_columns_are_orthonormal() {
        for (j1, j2) in [(1i64, 1i64), (2, 2), (3, 2), (4, 3)] {
            let mut j3 = (j1 - j2).abs();
            while j3 <= j1 + j2 {
                let mut m3 = -j3;
                while m3 <= j3 {
                    let mut norm = 0.0;
                    let mut m1 = -j1;
                    while m1 <= j1 {
                        let m2 = m3 - m1;
                        if m2.abs() <= j2 && (j2 - m2) % 2 == 0 {
                            let c = sl2_cg(j1, j2, j3, m1, m2).unwrap();
                            norm += c * c;
                        }
                        m1 += 2;
                    }
                    assert!(
                        (norm - 1.0).abs() < 1e-10,
                        "column ({j1},{j2},{j3},{m3}) norm {norm}"
                    );
                    m3 += 2;
                }
                j3 += 2;
            }
        }
    }

    #[test]
    fn iso_checks_pass_and_fail() {
        let t = fusion_ring(Flavor::Virasoro, 4).unwrap();
        assert!(iso_check(&t).unwrap());
        let t = fusion_ring(Flavor::Ns, 5).unwrap();
        assert!(iso_check(&t).unwrap());

        let mut t = fusion_ring(Flavor::Virasoro, 4).unwrap();
        t.toggle_channel(1, 2, 3);
        assert!(!iso_check(&t).unwrap());
    }
}

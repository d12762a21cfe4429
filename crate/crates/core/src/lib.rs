//! Exact computer algebra for the degenerate minimal models of the
//! Virasoro algebra at c = 1 and the N=1 Neveu-Schwarz algebra at c = 3/2:
//! singular vectors, Zhu-bimodule projections, fusion polynomials and
//! fusion rings, q-series characters, and the representation rings of
//! sl(2) and osp(1|2) they reproduce.

pub mod algebra;
pub mod bsa;
pub mod chars;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod reprings;
pub mod verify;
pub mod verma;
pub mod zhu;

pub use algebra::{bracket, parity, AlgebraElement, Flavor, Mode, ModeKind, Word};
pub use bsa::{bsa_ns, bsa_vir_c1, calibrate, CalibrationReport, ConventionMap};
pub use chars::{ch_irr_c1, ch_irr_ns, ch_lattice, ch_verma, identity_check, SectorLabel};
pub use error::{Error, Result};
pub use poly::{rational_roots, Poly1, Poly2};
pub use qseries::{euler_inverse, ns_denominator, QSeries};
pub use rational::{parse_rat, rat, rat_int, Rat};
pub use reprings::{
    iso_check, matrices, osp_tensor, sl2_cg, sl2_tensor, weight_decompose, MatrixRealization,
    RepAlgebra, RepLabel, RepMultiset,
};
pub use verma::{
    apply_element, apply_mode, central_charge, degenerate_point, gram_matrix, kac_data,
    level_basis, singular_vectors, GramMatrix, KacPoint, VermaVector,
};
pub use zhu::{
    density_project_vir, fusion_coeff_ns, fusion_coeff_vir, fusion_polys_ns, fusion_poly_vir,
    fusion_ring, ring_report, zhu_project_ns, zhu_project_vir, ChannelParity, FusionChannels,
    FusionTable, RingReport, ZhuImage,
};

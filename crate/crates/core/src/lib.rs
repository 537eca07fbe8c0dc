//! Apéry sets, Kunz coordinates and Kunz posets of numerical semigroups; faces
//! of the group cone `C(Z_n)` and the Kunz polyhedron; closed forms for
//! extra-generalized arithmetical semigroups; monoscopic gluings and the
//! embeddings between group cones that they induce.
//!
//! Every closed form is paired with a brute-force oracle: see [`sweep`].

pub mod arith;
pub mod cone;
pub mod coords;
pub mod error;
pub mod linalg;
pub mod monoscopic;
pub mod poset;
pub mod semigroup;
pub mod sweep;
pub mod zmod;

pub use arith::{
    ega_apery_grid, ega_contains, ega_detect, ega_face_dimension, ega_frobenius, ega_is_apery,
    ega_kunz_poset, ega_new, ega_rays, ega_report, EgaParams, EgaRays, EgaReport, GridCoord,
};
pub use cone::{apply_automorphism, ConeFace, FaceDump, KunzData};
pub use coords::{CoordKind, CoordTuple};
pub use error::{Error, Result};
pub use monoscopic::{
    all_factorizations, beta_ray, classify_covers, extend_poset, factor_monoscopic, glue,
    glued_apery, glued_apery_tuple, glued_poset, gluing_report, phi, verify_face_image, CoverKind,
    EmbeddingSpec, FaceImageReport, GluingReport, GluingSpec,
};
pub use poset::{apery_poset, kunz_poset_of, KunzPoset, PosetDump};
pub use semigroup::NumericalSemigroup;
pub use sweep::{run_suite, Suite, SuiteReport, SweepConfig};

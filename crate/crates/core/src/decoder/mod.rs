//! Union-find decoders for augmented surface codes (Z errors, X checks).
//!
//! All variants share four phases:
//!
//! 1. **Edge cancellation.** Each nonzero edge syndrome `s(e)` is removed by
//!    the correction `e (x) D_X(s(e))`, whose boundary also adds `D_X(s(e))`
//!    to `s(u)` and `s(v)` for the endpoints of `e`. Edges with `s(e) != 0`
//!    form the initial erasure.
//! 2. **Growth.** Clusters of torus vertices grow until each has a trivial
//!    validity vector `val = sum_v ((s(v)|x_1), ..., (s(v)|x_k))`.
//! 3. **Peeling.** Over a spanning forest of the covered edges, leaf
//!    syndromes are pushed to the parent with corrections `e (x) z_i` and
//!    `e (x) s(u)`.
//! 4. **Residual correction.** What is left at each vertex lies in the image
//!    of `H_Z^T` and is removed with `v (x) D_Z^T(s(v))`.
//!
//! [`DecoderKind::V1`] grows on the full validity vector. [`DecoderKind::V2`]
//! grows and peels one logical at a time and transports the non-logical part
//! over the initial erasure only. [`DecoderKind::Subedge`] is `V1` with edges
//! cut into `d_C` growth units, seeded by the weight of the edge correction.
//!
//! The endpoint update in edge cancellation uses `D_X(s(e))` (a `C_1`
//! vector), which is what the product boundary dictates.

mod forest;
mod peel;
mod validity;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::augmented::{AugmentedCode, ErrorStdForm, SyndromeStdForm};
use crate::toric::Cellulation;

pub use forest::ClusterForest;
pub use peel::SpanningForest;
pub use validity::{general_cluster_validity, validity_vector, Cluster, ClusterError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    /// The syndrome left at a vertex is not in the image of `H_Z^T`.
    #[error("residual syndrome at vertex {vertex} has no D_Z^T preimage")]
    Inconsistent { vertex: usize },
    /// An invalid cluster had nowhere left to grow; impossible for true syndromes.
    #[error("an invalid cluster cannot grow any further")]
    GrowthStalled,
    #[error("subedge growth needs a fixed code of distance at least 2, got {0}")]
    SubedgeDistance(usize),
    #[error("{0} units per edge is more than the subedge decoder supports")]
    TooManyUnits(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    V1,
    V2,
    Subedge,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 3] = [DecoderKind::V1, DecoderKind::V2, DecoderKind::Subedge];

    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::V1 => "v1",
            DecoderKind::V2 => "v2",
            DecoderKind::Subedge => "subedge",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v1" => Ok(DecoderKind::V1),
            "v2" => Ok(DecoderKind::V2),
            "subedge" => Ok(DecoderKind::Subedge),
            other => Err(format!("unknown decoder {other:?} (expected v1, v2 or subedge)")),
        }
    }
}

/// Output of the edge-cancellation phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCancellation {
    pub correction: ErrorStdForm,
    /// Syndrome after cancellation; every `s(e)` is zero.
    pub syndrome: SyndromeStdForm,
    /// Edges whose syndrome was nonzero before cancellation.
    pub erased: Vec<bool>,
}

pub fn edge_cancellation(code: &AugmentedCode, s: &SyndromeStdForm) -> EdgeCancellation {
    let mut syndrome = s.clone();
    let mut correction = code.zero_error();
    let erased = cancel_edges(code, &mut syndrome, &mut correction);
    EdgeCancellation {
        correction,
        syndrome,
        erased,
    }
}

fn cancel_edges(code: &AugmentedCode, s: &mut SyndromeStdForm, corr: &mut ErrorStdForm) -> Vec<bool> {
    let cell = code.cellulation();
    let fixed = code.fixed();
    let mut erased = vec![false; cell.num_edges()];
    for (e, erased) in erased.iter_mut().enumerate() {
        let se = s.edge[e];
        if se == 0 {
            continue;
        }
        *erased = true;
        let fix = fixed.decode_dx(se);
        corr.edge[e] ^= fix;
        let [u, v] = cell.edge_endpoints(e);
        s.vertex[u] ^= fix;
        s.vertex[v] ^= fix;
        s.edge[e] = 0;
    }
    debug_assert!(
        s.vertex.iter().all(|&w| fixed.hx_syndrome(w) == 0),
        "vertex syndromes must be cocycles after edge cancellation"
    );
    erased
}

/// Growth on the full validity vector in half-edge units, seeded by the
/// erased edges. Returns the covered edges.
pub fn uf_growth(code: &AugmentedCode, s: &SyndromeStdForm, erased: &[bool]) -> Result<Vec<bool>, DecodeError> {
    let mut forest = ClusterForest::new();
    let seeds: Vec<u8> = erased.iter().map(|&b| if b { 2 } else { 0 }).collect();
    let fixed = code.fixed();
    forest.reset(code.cellulation(), &seeds, 2, |v| fixed.x_pairings(s.vertex[v]));
    forest.grow(code.cellulation())?;
    Ok(forest.covered_edges())
}

/// Peeling with both the logical step and syndrome transport, over a spanning
/// forest of `covered`. Updates `s` in place and returns the correction.
pub fn peel(code: &AugmentedCode, s: &mut SyndromeStdForm, covered: &[bool]) -> ErrorStdForm {
    let mut corr = code.zero_error();
    let forest = SpanningForest::build(code.cellulation(), |e| covered[e]);
    peel_full(code, &forest, s, &mut corr);
    corr
}

fn peel_full(code: &AugmentedCode, forest: &SpanningForest, s: &mut SyndromeStdForm, corr: &mut ErrorStdForm) {
    let fixed = code.fixed();
    let zs = fixed.z_logical_words();
    for &(u, e, p) in forest.steps() {
        // logical step first: afterwards (s(u)|x_i) = 0 for all i
        let pairs = fixed.x_pairings(s.vertex[u]);
        for (i, &z) in zs.iter().enumerate() {
            if pairs >> i & 1 == 1 {
                corr.edge[e] ^= z;
                s.vertex[u] ^= z;
                s.vertex[p] ^= z;
            }
        }
        let t = s.vertex[u];
        corr.edge[e] ^= t;
        s.vertex[p] ^= t;
        s.vertex[u] = 0;
        debug_assert_eq!(fixed.hx_syndrome(s.vertex[p]), 0);
    }
}

fn peel_logical(code: &AugmentedCode, forest: &SpanningForest, i: usize, s: &mut SyndromeStdForm, corr: &mut ErrorStdForm) {
    let fixed = code.fixed();
    let x = fixed.x_logical_words()[i];
    let z = fixed.z_logical_words()[i];
    for &(u, e, p) in forest.steps() {
        if (s.vertex[u] & x).count_ones() & 1 == 1 {
            corr.edge[e] ^= z;
            s.vertex[u] ^= z;
            s.vertex[p] ^= z;
        }
    }
}

fn peel_transport(forest: &SpanningForest, s: &mut SyndromeStdForm, corr: &mut ErrorStdForm) {
    for &(u, e, p) in forest.steps() {
        let t = s.vertex[u];
        corr.edge[e] ^= t;
        s.vertex[p] ^= t;
        s.vertex[u] = 0;
    }
}

/// `v (x) D_Z^T(s(v))` at every vertex; clears `s`.
pub fn residual_node_correction(code: &AugmentedCode, s: &mut SyndromeStdForm) -> Result<ErrorStdForm, DecodeError> {
    let mut corr = code.zero_error();
    apply_residual(code, s, &mut corr)?;
    Ok(corr)
}

fn apply_residual(code: &AugmentedCode, s: &mut SyndromeStdForm, corr: &mut ErrorStdForm) -> Result<(), DecodeError> {
    let fixed = code.fixed();
    for (v, sv) in s.vertex.iter_mut().enumerate() {
        if *sv == 0 {
            continue;
        }
        let y = fixed
            .decode_dzt(*sv)
            .ok_or(DecodeError::Inconsistent { vertex: v })?;
        corr.vertex[v] ^= y;
        *sv = 0;
    }
    Ok(())
}

/// A reusable decoder bound to one code. Buffers are kept between calls.
#[derive(Debug)]
pub struct Decoder<'a> {
    code: &'a AugmentedCode,
    kind: DecoderKind,
    units: u8,
    forest: ClusterForest,
    seeds: Vec<u8>,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a AugmentedCode, kind: DecoderKind) -> Result<Self, DecodeError> {
        let units = match kind {
            DecoderKind::V1 | DecoderKind::V2 => 2,
            DecoderKind::Subedge => {
                let d = code.fixed().distance();
                if d < 2 {
                    return Err(DecodeError::SubedgeDistance(d));
                }
                u8::try_from(d).map_err(|_| DecodeError::TooManyUnits(d))?
            }
        };
        Ok(Self {
            code,
            kind,
            units,
            forest: ClusterForest::new(),
            seeds: Vec::new(),
        })
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn code(&self) -> &'a AugmentedCode {
        self.code
    }

    /// Returns a correction whose syndrome equals `s`.
    pub fn decode(&mut self, s: &SyndromeStdForm) -> Result<ErrorStdForm, DecodeError> {
        let code = self.code;
        let cell: &Cellulation = code.cellulation();
        let fixed = code.fixed();
        let mut s = s.clone();
        let mut corr = code.zero_error();
        let erased = cancel_edges(code, &mut s, &mut corr);

        match self.kind {
            DecoderKind::V1 | DecoderKind::Subedge => {
                let units = self.units;
                self.seeds.clear();
                self.seeds.extend((0..cell.num_edges()).map(|e| {
                    if erased[e] {
                        // c(e) subedges from each end, capped at the whole edge
                        (2 * corr.edge[e].count_ones()).min(u32::from(units)) as u8
                    } else {
                        0
                    }
                }));
                let sv = &s.vertex;
                self.forest.reset(cell, &self.seeds, units, |v| fixed.x_pairings(sv[v]));
                self.forest.grow(cell)?;
                let forest = &self.forest;
                let tree = SpanningForest::build(cell, |e| forest.is_covered(e));
                peel_full(code, &tree, &mut s, &mut corr);
            }
            DecoderKind::V2 => {
                self.seeds.clear();
                self.seeds.extend(erased.iter().map(|&b| if b { 2 } else { 0 }));
                for (i, &x) in fixed.x_logical_words().iter().enumerate() {
                    let sv = &s.vertex;
                    self.forest.reset(cell, &self.seeds, 2, |v| {
                        u64::from((sv[v] & x).count_ones() & 1 == 1)
                    });
                    self.forest.grow(cell)?;
                    let forest = &self.forest;
                    let tree = SpanningForest::build(cell, |e| forest.is_covered(e));
                    peel_logical(code, &tree, i, &mut s, &mut corr);
                }
                let tree = SpanningForest::build(cell, |e| erased[e]);
                peel_transport(&tree, &mut s, &mut corr);
            }
        }
        apply_residual(code, &mut s, &mut corr)?;
        Ok(corr)
    }
}

pub fn decode_v1(code: &AugmentedCode, s: &SyndromeStdForm) -> Result<ErrorStdForm, DecodeError> {
    Decoder::new(code, DecoderKind::V1)?.decode(s)
}

pub fn decode_v2(code: &AugmentedCode, s: &SyndromeStdForm) -> Result<ErrorStdForm, DecodeError> {
    Decoder::new(code, DecoderKind::V2)?.decode(s)
}

/// Subedge growth with `d_C` units per edge, `d_C` taken from the fixed code.
pub fn decode_subedge(code: &AugmentedCode, s: &SyndromeStdForm) -> Result<ErrorStdForm, DecodeError> {
    Decoder::new(code, DecoderKind::Subedge)?.decode(s)
}

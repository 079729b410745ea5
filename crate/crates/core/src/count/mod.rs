//! Exact counters. Every count is a `BigUint`; fixed-width arithmetic is used
//! internally only where it provably cannot overflow, or with a checked spill
//! into big integers.

mod closed;
mod coloring;
mod cycles;
mod families;
mod hom;
mod independent;
mod matching;
mod permanent;

pub use closed::{colorings_kdd_closed, hom_kdd_closed, matching_polynomial_kdd, matchings_kdd_formula, HOM_CLOSED_MAX_TARGET};
pub use coloring::colorings;
pub use cycles::{cycle_cover_sums, CycleCoverSums, CYCLE_COVER_MAX_N};
pub use families::{
    body_volume_and_projections, graph_has_triangle, is_distinguishing, max_clique, max_triangle_intersecting,
    min_distinguishing, trace, DISTINGUISHING_CHECK_MAX_N, MIN_DISTINGUISHING_MAX_N,
};
pub use hom::{embed_count, hom_count};
pub use independent::{independent_set_polynomial, independent_sets_of_size, independent_sets_total, INDEPENDENT_MAX_COMPONENT};
pub use matching::{matching_polynomial, matchings_of_size, matchings_total, perfect_matchings, MATCHING_MAX_COMPONENT};
pub use permanent::{permanent, PERMANENT_MAX_N};

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// A count together with what was counted and a digest of the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub what: String,
    /// First 16 hex digits of the SHA-256 of the serialized input.
    pub input: String,
    #[serde(serialize_with = "crate::count::decimal")]
    pub value: BigUint,
}

impl CountResult {
    pub fn new(what: impl Into<String>, input_text: &str, value: BigUint) -> Self {
        let digest = Sha256::digest(input_text.as_bytes());
        let input = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        CountResult {
            what: what.into(),
            input,
            value,
        }
    }
}

pub(crate) fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Sum of u128 terms that spills into a big integer on overflow.
#[derive(Default)]
pub(crate) struct Tally {
    small: u128,
    big: BigUint,
}

impl Tally {
    pub(crate) fn add(&mut self, x: u128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = x;
            }
        }
    }

    pub(crate) fn add_big(&mut self, x: BigUint) {
        self.big += x;
    }

    pub(crate) fn total(self) -> BigUint {
        self.big + self.small
    }
}

/// Coefficient-wise product of two polynomials.
pub(crate) fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::default(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

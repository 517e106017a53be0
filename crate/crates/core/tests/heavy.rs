//! Heavy checks, ignored by default. Run with:
//! `cargo test -p dilink --test heavy --release -- --ignored`

use dilink::constructions::{eleven_ring, four_link_gadget};
use dilink::embedding::{spatial_realize, spatial_realize_unvalidated};

/// Exact disjointness validation of the straight-line realization of the
/// 605-vertex gadget (the largest graph any construction produces).
#[test]
#[ignore = "quadratic exact validation over ~6000 segments; minutes in debug builds"]
fn four_link_gadget_realization_validates() {
    let gadget = four_link_gadget();
    let emb = spatial_realize_unvalidated(&gadget.digraph, 0);
    emb.validate().unwrap();
}

/// The 77-vertex ring realizes and validates within the default pass.
#[test]
#[ignore = "takes tens of seconds in debug builds"]
fn eleven_ring_realization_validates() {
    let gadget = eleven_ring();
    spatial_realize(&gadget.digraph, 0).unwrap();
}

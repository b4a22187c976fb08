use thiserror::Error;

use crate::poset::Element;

/// Errors surfaced by poset construction, decomposition and realizer building.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The transitive closure of the given relations forces `x < x`.
    #[error("relation closure forces {0} < {0}, input is not a strict order")]
    Cycle(Element),

    /// Linear orders passed to `concat` share an element.
    #[error("orders overlap on element {0}")]
    Overlap(Element),

    /// The two orders passed to `merge_at_cut` intersect in something other
    /// than exactly the cut vertex.
    #[error("order supports must intersect exactly in the cut vertex {w}")]
    BadIntersection { w: Element },

    /// An element queried against a linear order that does not contain it.
    #[error("element {0} is not in the support of every order")]
    Support(Element),

    /// A pair handed to the alternating-cycle machinery is comparable.
    #[error("pair ({0}, {1}) is not incomparable")]
    NotIncomparable(Element, Element),

    /// The requested set of incomparable pairs cannot be reversed by any
    /// linear extension; the certificate is an alternating cycle.
    #[error("set is not reversible; alternating cycle of {} pairs", certificate.len())]
    NotReversible {
        certificate: Vec<(Element, Element)>,
    },

    /// The cover graph of the poset is not a forest.
    #[error("cover graph is not a forest")]
    NotForest,

    /// An operation requiring a connected poset was given a disconnected one.
    #[error("poset is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// The two elements lie in the same Z-part of the block decomposition.
    #[error("elements {0} and {1} lie in the same Z-part")]
    SameZ(Element, Element),

    /// Exhaustive search guard exceeded (`exact_bdim_at_most` is limited to
    /// n <= 6, s <= 3).
    #[error("instance too large for exhaustive search (n = {n}, s = {s})")]
    Budget { n: usize, s: usize },

    /// The component construction needs at least two components.
    #[error("poset has a single component; use its own realizer")]
    SingleComponent,

    /// Component or block realizer inputs do not match the decomposition.
    #[error("invalid realizer input: {0}")]
    BadInput(String),
}

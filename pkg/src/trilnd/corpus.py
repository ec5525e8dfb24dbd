"""A fixed corpus of presentations for sweep tests and cross-checks.

Every entry stays inside the soundness bounds (at most four blocks, at
most three variables per block, exponents at most 4, at most two free
variables). All but one use the default constants; the exception is
documented next to its columns. A deliberately unnormalized
presentation, whose coefficient ratio has no square root in Q(i), is
kept outside the corpus proper as ``unnormalized_member``; it exercises
the NeedsNormalization path but would defeat the rigid-vs-nilpotent
cross-check, since its rational forms miss the derivations that exist
over the closure.

The small slice is the subset suitable for the linear-algebra
cross-check: total variable count plus free variables at most 5. Every
slice member's classifier output fits under image degree 4, so the
default search box always sees it; an assertion guards that choice.
"""

from __future__ import annotations

from functools import lru_cache

from .classify import enumerate_lnds
from .gaussian import gq
from .presentation import TrinomialPresentation, type1, type2

SLICE_SIZE_LIMIT = 5
SLICE_DEGREE_LIMIT = 4

_TYPE1 = (
    (((1,), (1,)), 0),
    (((2,), (2,)), 0),
    (((2,), (3,)), 0),
    (((3,), (1, 2)), 0),
    (((2, 3), (4,)), 0),
    (((1, 2), (2,)), 0),
    (((1, 1), (2,)), 0),
    (((2, 2), (3,)), 0),
    (((1, 2, 2), (2,)), 0),
    (((2,), (2,), (2,)), 0),
    (((1,), (2,), (3,)), 0),
    (((2,), (1, 2), (3,)), 0),
    (((1, 1), (2,), (2, 2)), 0),
    (((3,), (3,), (3,)), 0),
    (((1, 2), (1, 2)), 0),
    (((4,), (2, 3)), 0),
    (((2,), (3,), (4,), (2,)), 0),
    (((1,), (2, 2), (3,)), 0),
    (((2,), (2,)), 1),
    (((3,), (1, 2)), 1),
    (((2, 3), (2,)), 1),
    (((1, 2), (3,)), 2),
    (((2,), (3,)), 2),
    (((2, 2), (2, 2)), 0),
    (((1, 3), (2, 2), (4,)), 0),
)

_TYPE2 = (
    (((1,), (1,), (1,)), 0),
    (((2,), (2,), (2,)), 0),
    (((2,), (2,), (3,)), 0),
    (((2,), (2,), (4,)), 0),
    (((1,), (2,), (2,)), 0),
    (((1,), (2,), (3,)), 0),
    (((2,), (3,), (4,)), 0),
    (((3,), (3,), (3,)), 0),
    (((2,), (2,), (2, 2)), 0),
    (((1, 1), (2,), (2,)), 0),
    (((1, 2), (2,), (3,)), 0),
    (((2,), (2,), (3,)), 1),
    (((2,), (2,), (2,)), 1),
    (((3,), (2,), (2,)), 0),
    (((2, 2), (2,), (2,)), 0),
    (((4,), (2,), (2,)), 0),
    (((2,), (4,), (2,)), 0),
    (((1,), (1,), (2,)), 0),
    (((1,), (3,), (3,)), 0),
    (((2,), (2,), (3,), (2,)), 0),
    (((2,), (2,), (2,), (1,)), 0),
    (((1,), (2,), (2,), (2,)), 0),
    (((1,), (1,), (2,), (2,)), 0),
    (((1, 2), (1, 2), (2,)), 0),
    (((2,), (2,), (2,)), 2),
    (((1,), (2,), (4,)), 0),
    (((1, 1, 1), (2,), (2,)), 0),
    (((2,), (3,), (3,)), 0),
    (((4,), (4,), (2,)), 0),
    (((2, 2), (2, 2), (2,)), 0),
)

# With four blocks and the exponent-1 block first, the parameter family
# lives on the last three columns, and the default fourth column makes
# their minor ratio 1/2: no square root in Q(i). These columns keep all
# the relevant minors at +-1 so the family materializes.
_CUSTOM_COLUMNS = {
    ((1,), (2,), (2,), (2,)): (
        (gq(1), gq(-2)),
        (gq(1), gq(0)),
        (gq(0), gq(1)),
        (gq(-1), gq(-1)),
    ),
}


def unnormalized_member() -> TrinomialPresentation:
    """The deliberately unnormalized entry: its only case B labeling has
    coefficient ratio 1/2, which is not a square in Q(i)."""
    return type2(
        ((2,), (2,), (4,)),
        constants=((gq(1), gq(0)), (gq(0), gq(1)), (gq(-2), gq(-1))),
    )


@lru_cache(maxsize=1)
def corpus():
    """The full fixed corpus, type 1 entries first."""
    members = [type1(blocks, d=d) for blocks, d in _TYPE1]
    members.extend(
        type2(blocks, constants=_CUSTOM_COLUMNS.get(blocks), d=d)
        for blocks, d in _TYPE2
    )
    return tuple(members)


def _max_image_degree(P: TrinomialPresentation):
    """Largest image degree across classifier outputs; -1 when there are
    none (rigid members have nothing to check)."""
    worst = -1
    for inst in enumerate_lnds(P):
        if inst.derivation is None:
            continue
        for img in inst.derivation.images.values():
            worst = max(worst, img.degree())
    return worst


@lru_cache(maxsize=1)
def small_slice():
    """Corpus members small enough for the degree-4 search box."""
    out = []
    for P in corpus():
        if P.n + P.d > SLICE_SIZE_LIMIT:
            continue
        assert _max_image_degree(P) <= SLICE_DEGREE_LIMIT, P.describe()
        out.append(P)
    return tuple(out)

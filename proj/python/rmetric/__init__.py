"""Finite metric spaces with distances in {1..r}: exact counts, sampling, lemma oracles."""

from ._core import (
    RNG_ALGORITHM,
    CapacityError,
    DomainError,
    UnsupportedInstance,
    amalgamate,
    axiom_curve,
    components,
    count_cr,
    count_metric,
    count_report,
    cr_membership,
    default_axiom,
    enumerate_metric,
    eval_axiom,
    gadget_h,
    inject_f,
    is_cr_member,
    is_metric,
    m_of,
    matching_family_count,
    nearest_cr,
    preimage_analysis,
    run_cli,
    sample,
    verify,
)


def coloring(r, n, d):
    """A coloring in the JSON wire format: pairs (1,2), (1,3), ..., (n-1,n)."""
    return {"r": r, "n": n, "d": list(d)}


__all__ = [name for name in dir() if not name.startswith("_")]

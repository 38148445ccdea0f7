"""Fixed reference expressions for selected graph families.

These closed forms are transcribed exactly as given, including their
rough edges: the two friendship-family expressions disagree with each
other on overlapping instances, and the search engine finds strictly
better label sums than some of them predict.  They are kept verbatim so
the verify command can classify each disagreement explicitly instead of
papering over it.  Derived fields (for example the raw ratio implied by
a printed label sum) are computed from the printed quantities by exact
rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class FamilyFormulaResult:
    """Closed-form figures for one family instance.

    ``label_sum`` is the arc-label total the expression ascribes to an
    optimal run, ``raw_ratio`` is edges over that sum, and ``fsg_index``
    divides the ratio again by ``b_tau``.
    """

    edges: int
    b_tau: int
    label_sum: int
    raw_ratio: Fraction
    fsg_index: Fraction


def fr3_formulas(n: int) -> FamilyFormulaResult:
    """Triangle friendship graph with ``n`` triangles, single-colour mode.

    Valid for n >= 2; the printed index divides by 2(n-1), so n = 1 is
    outside the expression's domain.
    """
    if n < 2:
        raise ValueError("friendship closed form needs at least two triangles")
    edges = 3 * n
    btau = 2 * (n - 1)
    label_sum = 3 * n * n - 5 * n + 6
    return FamilyFormulaResult(
        edges=edges,
        b_tau=btau,
        label_sum=label_sum,
        raw_ratio=Fraction(edges, label_sum),
        fsg_index=Fraction(edges, btau * label_sum),
    )


def general_fr_formulas(
    blocks: tuple[tuple[int, int], ...]
) -> FamilyFormulaResult:
    """Windmill of cycles given as (length, copies) blocks, at least two
    cycles in total, single-colour mode.

    The label-sum expression charges every block except the last at
    copies * (length + 1), the last block at (copies - 1) * (length + 1),
    and adds a flat 10.  The nominal case split on whether the last
    block has one copy or more collapses into this single expression,
    because the last-block term is zero exactly when copies is one.
    """
    if not blocks:
        raise ValueError("need at least one cycle block")
    for length, copies in blocks:
        if length < 3:
            raise ValueError(f"cycle length must be at least 3, got {length}")
        if copies < 1:
            raise ValueError(f"copy count must be positive, got {copies}")
    kappa = sum(c for _, c in blocks)
    if kappa < 2:
        raise ValueError("closed form needs at least two cycles in total")
    edges = sum(length * copies for length, copies in blocks)
    btau = 2 * (kappa - 1)
    label_sum = 10
    for length, copies in blocks[:-1]:
        label_sum += copies * (length + 1)
    last_length, last_copies = blocks[-1]
    label_sum += (last_copies - 1) * (last_length + 1)
    return FamilyFormulaResult(
        edges=edges,
        b_tau=btau,
        label_sum=label_sum,
        raw_ratio=Fraction(edges, label_sum),
        fsg_index=Fraction(edges, btau * label_sum),
    )


def joost_formulas(n: int, k: int) -> FamilyFormulaResult:
    """``k`` parallel paths of ``n - 1`` arcs between two junctions,
    single-colour mode.

    The printed ratio is edges over label sum (one path: 1; two paths:
    2(n-1)/(2n-1); otherwise 2k(n-1)/(2n + (n-1)k(k-1))); btau is k.
    """
    if n < 3:
        raise ValueError("paths must have at least two arcs, so n >= 3")
    if k < 1:
        raise ValueError("need at least one path")
    edges = k * (n - 1)
    if k == 1:
        raw = Fraction(1)
    elif k == 2:
        raw = Fraction(2 * (n - 1), 2 * n - 1)
    else:
        raw = Fraction(2 * k * (n - 1), 2 * n + (n - 1) * k * (k - 1))
    label_sum_frac = edges / raw
    assert label_sum_frac.denominator == 1
    return FamilyFormulaResult(
        edges=edges,
        b_tau=k,
        label_sum=int(label_sum_frac),
        raw_ratio=raw,
        fsg_index=raw / k,
    )


def cycle_tau(n: int) -> int:
    """Blend-mode cost of a cycle: two primaries, for every length."""
    if n < 3:
        raise ValueError("cycles have at least three vertices")
    return 2

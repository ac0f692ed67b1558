"""Necessary conditions and non-existence certificates.

All inequalities are evaluated in exact integer arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .abelian import GroupSpec, has_z2_z2_summand, involutions, quadruple_image_contains, sum_all


class ObstructionKind(str, enum.Enum):
    ODD_REGULAR = "OddRegular"
    INVOLUTION_SUM = "InvolutionSum"
    ACG_CONDITION = "AcgCondition"
    C8_NECESSARY = "C8Necessary"


@dataclass(frozen=True)
class Obstruction:
    kind: ObstructionKind
    detail: str
    witness: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "detail": self.detail, **self.witness}


@dataclass(frozen=True)
class RegularVerdict:
    magic_constant: Fraction
    feasible: bool
    obstruction: Optional[Obstruction] = None


def regular_magic_constant(r: int, n: int) -> RegularVerdict:
    """Magic constant ``r(n+1)/2`` of an ``r``-regular distance magic graph on ``n`` vertices.

    Odd ``r`` is infeasible, both for labels ``1..n`` and for ``Z_n`` labels.
    """
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    mu = Fraction(r * (n + 1), 2)
    if r % 2:
        obs = Obstruction(
            ObstructionKind.ODD_REGULAR,
            f"{r}-regular graph on {n} vertices: odd regularity admits no distance magic or Z_{n} labeling",
            {"r": r, "n": n},
        )
        return RegularVerdict(mu, False, obs)
    return RegularVerdict(mu, True)


def _check_bipartite_args(m: int, n: int, group: GroupSpec) -> None:
    if m < 1 or m % 2 == 0 or n < 2 or n % 2:
        raise ValueError(f"need m odd and n even, got m={m}, n={n}")
    if group.order != 4 * (m + n):
        raise ValueError(f"group order {group.order} != 4 * (m + n) = {4 * (m + n)}")


def involution_obstruction_bipartite_c4(m: int, n: int, group: GroupSpec) -> Optional[Obstruction]:
    """Certificate that ``K_{m,n} x C_4`` has no ``group``-labeling, or ``None``.

    The product is two copies of ``K_{2m,2n}``; in each copy the two sides'
    label sums both equal the magic constant, so four times it equals the sum
    of all group elements.  When that sum is not a multiple of 4 in the
    group, no labeling exists.
    """
    _check_bipartite_args(m, n, group)
    total = sum_all(group)
    if quadruple_image_contains(group, total):
        return None
    invs = involutions(group)
    detail = f"sum of all elements of {group} is {list(total)}, which is not 4*g for any g"
    if len(invs) == 1:
        detail += f"; it is the unique involution {list(invs[0])}"
    return Obstruction(
        ObstructionKind.INVOLUTION_SUM,
        detail,
        {"group": str(group), "sum": list(total), "involutions": [list(x) for x in invs]},
    )


def _acg_bound(m: int, n: int, scale: int) -> tuple[bool, int, int]:
    # m >= (sqrt(2(s n + 1)^2 - 1) - 1)/s - n  <=>  (s(m+n) + 1)^2 >= 2(s n + 1)^2 - 1
    lhs = (scale * (m + n) + 1) ** 2
    rhs = 2 * (scale * n + 1) ** 2 - 1
    return lhs >= rhs, lhs, rhs


def acg_c4_distance_magic(m: int, n: int) -> bool:
    """Whether ``K_{m,n} x C_4`` (``m <= n``) is distance magic with labels ``1..4(m+n)``."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    ok, _, _ = _acg_bound(m, n, 8)
    return (m + n) % 2 == 0 and ok


def c8_necessary(m: int, n: int) -> bool:
    """Necessary condition for ``K_{m,n} x C_8`` to be distance magic; ``False`` rules it out."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    ok, _, _ = _acg_bound(m, n, 16)
    return (m + n) % 2 == 0 and ok


def bipartite_condition_obstruction(m: int, n: int, cycle: int) -> Optional[Obstruction]:
    """Explain why :func:`acg_c4_distance_magic` / :func:`c8_necessary` fails, if it does."""
    if cycle not in (4, 8):
        raise ValueError("cycle must be 4 or 8")
    scale = 8 if cycle == 4 else 16
    kind = ObstructionKind.ACG_CONDITION if cycle == 4 else ObstructionKind.C8_NECESSARY
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    if (m + n) % 2:
        return Obstruction(kind, f"m + n = {m + n} is odd", {"m": m, "n": n})
    ok, lhs, rhs = _acg_bound(m, n, scale)
    if ok:
        return None
    return Obstruction(
        kind,
        f"({scale}(m+n)+1)^2 = {lhs} < 2({scale}n+1)^2 - 1 = {rhs}",
        {"m": m, "n": n, "lhs": lhs, "rhs": rhs},
    )


class Existence(str, enum.Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"


def bipartite_c4_characterization(m: int, n: int, group: GroupSpec) -> Existence:
    """For ``m`` odd and ``n`` even, a labeling exists exactly over ``Z_2 x Z_2 x A``."""
    _check_bipartite_args(m, n, group)
    return Existence.EXISTS if has_z2_z2_summand(group) else Existence.NOT_EXISTS

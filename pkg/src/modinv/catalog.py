"""Built-in algebras and actions addressable by name.

Lie algebras: ``W:n:p`` (Jacobson-Witt), ``torus:m:p`` (abelian, identity
p-map), ``nil:m:p`` (abelian, zero p-map), ``swap:2:p`` (abelian, p-map
exchanging the two basis vectors). Constant group actions:
``counterexample:2.remark`` (``x -> -x`` on ``F_3[x]/(x^3)``) and
``sign-line:p`` (``x -> -x`` on ``F_p[x]``).
"""

from __future__ import annotations

import numpy as np

from .actions import LieAction, adjoint_action
from .derivations import RestrictedLieAlgebra, build_wn
from .finite_groups import ConstantGroupAction, sign_action


class CatalogError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


GROUP_ACTIONS = ("counterexample:2.remark", "sign-line:3")


def _parse(name: str) -> tuple[str, list[int]]:
    kind, *rest = name.split(":")
    try:
        return kind, [int(x) for x in rest]
    except ValueError:
        raise CatalogError(f"unknown catalog name {name!r}") from None


def lie_algebra(name: str) -> RestrictedLieAlgebra:
    kind, args = _parse(name)
    if kind == "W" and len(args) == 2:
        return build_wn(*args).algebra
    if kind in ("torus", "nil") and len(args) == 2:
        m, p = args
        pmap = np.eye(m, dtype=np.int64) if kind == "torus" else np.zeros((m, m), dtype=np.int64)
        return RestrictedLieAlgebra.abelian(p, pmap)
    if kind == "swap" and args[:1] == [2] and len(args) == 2:
        return RestrictedLieAlgebra.abelian(args[1], [[0, 1], [1, 0]])
    raise CatalogError(f"unknown Lie algebra {name!r}")


def lie_action(name: str) -> LieAction:
    kind, args = _parse(name)
    if kind == "W" and len(args) == 2:
        return adjoint_action(build_wn(*args))
    return adjoint_action(lie_algebra(name))


def group_action(name: str) -> ConstantGroupAction:
    if name == "counterexample:2.remark":
        return sign_action(3, [(3,)])
    kind, args = _parse(name)
    if kind == "sign-line" and len(args) == 1:
        return sign_action(args[0])
    raise CatalogError(f"unknown group action {name!r}")


def is_group_action(name: str) -> bool:
    return name.split(":")[0] in ("counterexample", "sign-line")


def subalgebra_pairs() -> list[tuple[str, list[list[int]]]]:
    """Restricted subalgebras ``h`` of catalog algebras, as coordinate vectors."""
    return [
        ("W:1:2", []),
        ("W:1:2", [[1, 0]]),
        ("W:1:2", [[0, 1]]),
        ("W:1:2", [[1, 0], [0, 1]]),
        ("W:1:3", []),
        ("W:1:3", [[1, 0, 0]]),
        ("W:1:3", [[0, 1, 0]]),
        ("W:1:3", [[0, 0, 1]]),
        ("W:1:3", [[0, 1, 0], [0, 0, 1]]),
        ("W:1:3", [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        ("torus:1:2", []),
        ("torus:1:2", [[1]]),
        ("nil:1:2", [[1]]),
        ("swap:2:2", [[1, 1]]),
        ("nil:2:3", [[1, 2]]),
        ("torus:2:3", [[0, 1]]),
    ]


def torus_cases() -> list[tuple[str, RestrictedLieAlgebra]]:
    """Tori and non-tori for comparing the two torus criteria."""
    w12 = lie_algebra("W:1:2")
    return [
        ("torus:1:2", lie_algebra("torus:1:2")),
        ("torus:2:3", lie_algebra("torus:2:3")),
        ("swap:2:2", lie_algebra("swap:2:2")),
        ("span{x1*d1} in W:1:2", w12.subalgebra([[0, 1]])),
        ("span{x1*d1} in W:1:3", lie_algebra("W:1:3").subalgebra([[0, 1, 0]])),
        ("nil:1:2", lie_algebra("nil:1:2")),
        ("nil:2:3", lie_algebra("nil:2:3")),
        ("span{d1} in W:1:2", w12.subalgebra([[1, 0]])),
        ("torus+nil:2:2", RestrictedLieAlgebra.abelian(2, [[1, 0], [0, 0]])),
        ("W:1:2", w12),
        ("W:1:3", lie_algebra("W:1:3")),
    ]

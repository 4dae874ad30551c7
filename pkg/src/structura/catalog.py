"""Named catalog of algebras used by the command line and the acceptance suite."""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, direct_sum, tensor_product, validate
from . import constructions as cons


class UnknownAlgebra(KeyError):
    """The name does not denote a catalog algebra."""

    def __str__(self) -> str:
        return f"unknown algebra {self.args[0]!r}"


@dataclass(frozen=True)
class Entry:
    name: str
    description: str
    central_simple: bool
    default: bool = True


_FIXED: dict[str, tuple[Callable[[], Algebra], str, bool]] = {
    "field": (cons.ground_field, "ground field Q", True),
    "complex": (cons.complex_numbers, "Q(i), one doubling of the field", False),
    "quaternion": (cons.quaternions, "quaternions, two doublings", True),
    "octonion": (cons.octonions, "octonions, three doublings", True),
    "octonion-table": (cons.octonion_table, "octonions from the explicit e1..e8 table", True),
    "triple-1d": (
        lambda: cons.admissible_triple_algebra(cons.AdmissibleTripleData.one_dimensional(), "triple-1d"),
        "2x2 algebra of the one-dimensional admissible triple",
        True,
    ),
    "toc": (lambda: cons.t_of_c(cons.octonion_table(), "toc"), "35-dimensional T(C) over the octonion table", True),
}

_FAMILIES: dict[str, tuple[Callable[[int], Algebra], str]] = {
    "matrix-inv": (cons.matrix_involution_algebra, "M_n with transpose"),
    "jordan": (cons.jordan_matrix, "M_n+ with the symmetrized product"),
    "hermitian": (cons.hermitian_form_algebra, "M_n (+) F^n hermitian-form algebra"),
}

DEFAULT_RUN = (
    "field",
    "complex",
    "quaternion",
    "octonion",
    "octonion-table",
    "matrix-inv-2",
    "jordan-3",
    "hermitian-2",
    "tensor-octonion-quaternion",
    "triple-1d",
    "toc",
    "sum-octonion-matrix-inv-2",
    "sum-toc-jordan-2",
)

LARGE = ("tensor-octonion-octonion",)


def _family(name: str):
    m = re.fullmatch(r"(matrix-inv|jordan|hermitian)-([1-9][0-9]*)", name)
    if m:
        return m.group(1), int(m.group(2))
    return None


def _split(prefix: str, name: str) -> tuple[str, str] | None:
    """Leftmost split of ``<prefix>-<a>-<b>`` into two valid names."""
    if not name.startswith(prefix + "-"):
        return None
    rest = name[len(prefix) + 1 :]
    for pos in [i for i, ch in enumerate(rest) if ch == "-"]:
        left, right = rest[:pos], rest[pos + 1 :]
        if is_known(left) and is_known(right):
            return left, right
    return None


def is_known(name: str) -> bool:
    if name in _FIXED or _family(name):
        return True
    return _split("sum", name) is not None or _split("tensor", name) is not None


def summands(name: str) -> list[str]:
    """Simple constituents of a (possibly nested) sum name, in block order."""
    parts = _split("sum", name)
    if parts is None:
        return [name]
    return summands(parts[0]) + summands(parts[1])


def describe(name: str) -> Entry:
    if name in _FIXED:
        _, desc, cs = _FIXED[name]
        return Entry(name, desc, cs)
    fam = _family(name)
    if fam:
        return Entry(name, f"{_FAMILIES[fam[0]][1]}, n = {fam[1]}", True)
    parts = _split("tensor", name)
    if parts:
        cs = all(describe(p).central_simple for p in parts)
        return Entry(name, f"tensor product {parts[0]} (x) {parts[1]}", cs, name not in LARGE)
    parts = _split("sum", name)
    if parts:
        return Entry(name, f"direct sum {parts[0]} (+) {parts[1]}", False)
    raise UnknownAlgebra(name)


@lru_cache(maxsize=None)
def build(name: str) -> Algebra:
    """Construct a catalog algebra; builder invariants are enforced on construction."""
    if name in _FIXED:
        return _FIXED[name][0]()
    fam = _family(name)
    if fam:
        return _FAMILIES[fam[0]][0](fam[1])
    parts = _split("tensor", name)
    if parts:
        return validate(tensor_product(build(parts[0]), build(parts[1]), name))
    parts = _split("sum", name)
    if parts:
        return validate(direct_sum(build(parts[0]), build(parts[1]), name))
    raise UnknownAlgebra(name)


def build_catalog(names: Iterable[str] | None = None) -> list[Algebra]:
    return [build(n) for n in (DEFAULT_RUN if names is None else names)]


def listing(include_large: bool = True) -> list[Entry]:
    names = list(DEFAULT_RUN) + (list(LARGE) if include_large else [])
    return [describe(n) for n in names]

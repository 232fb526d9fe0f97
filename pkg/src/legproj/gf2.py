"""Exact linear algebra over GF(2) with int bitsets.

A vector is a Python ``int``; bit ``i`` is coordinate ``i``.  A matrix is a
list of such rows.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "GF2Error",
    "DimMismatch",
    "ZeroVector",
    "NotInAmbient",
    "from_bits",
    "to_bits",
    "parity",
    "rank",
    "echelon",
    "in_span",
    "span_witness",
    "kernel",
    "SymplecticSpace",
    "orthogonal_complement",
    "Quotient",
    "quotient_classes",
]


class GF2Error(ValueError):
    pass


class DimMismatch(GF2Error):
    pass


class ZeroVector(GF2Error):
    pass


class NotInAmbient(GF2Error):
    pass


def from_bits(s: str) -> int:
    """``"1010"`` -> int with bits 0 and 2 set (leftmost char is coordinate 0)."""
    if any(ch not in "01" for ch in s):
        raise GF2Error(f"not a bitstring: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def to_bits(x: int, dim: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(dim))


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def echelon(rows: Iterable[int]) -> list[int]:
    """Fully reduced row-echelon basis of the span, pivots at each row's top bit.

    Rows come back sorted by decreasing pivot, which makes the basis (and so
    every reduction against it) independent of the input order.
    """
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            top = r.bit_length() - 1
            basis = [b ^ r if (b >> top) & 1 else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def _check_dim(vectors: Iterable[int], dim: int | None) -> None:
    if dim is None:
        return
    for v in vectors:
        if v < 0 or v >> dim:
            raise DimMismatch(f"vector {v:b} does not fit in dimension {dim}")


def in_span(v: int, rows: Sequence[int], dim: int | None = None) -> bool:
    """True iff ``v`` lies in the row span; decided by comparing ranks."""
    _check_dim([v, *rows], dim)
    return rank(rows) == rank([*rows, v])


def span_witness(v: int, rows: Sequence[int]) -> tuple[int, ...] | None:
    """Indices of rows whose XOR is ``v``, or ``None`` if ``v`` is not in the span."""
    # (reduced vector, combination mask over row indices)
    basis: list[tuple[int, int]] = []
    for i, r in enumerate(rows):
        combo = 1 << i
        for b, bc in basis:
            if r ^ b < r:
                r, combo = r ^ b, combo ^ bc
        if r:
            basis.append((r, combo))
            basis.sort(reverse=True)
    combo = 0
    for b, bc in basis:
        if v ^ b < v:
            v, combo = v ^ b, combo ^ bc
    if v:
        return None
    return tuple(i for i in range(len(rows)) if (combo >> i) & 1)


def kernel(images: Sequence[int]) -> list[int]:
    """Basis of ``{x : XOR of images[i] over bits i of x == 0}``."""
    basis: list[tuple[int, int]] = []
    out: list[int] = []
    for i, r in enumerate(images):
        combo = 1 << i
        for b, bc in basis:
            if r ^ b < r:
                r, combo = r ^ b, combo ^ bc
        if r:
            basis.append((r, combo))
            basis.sort(reverse=True)
        else:
            out.append(combo)
    return out


@dataclass(frozen=True)
class SymplecticSpace:
    """GF(2)^dim with a nondegenerate alternating form, given by its Gram rows."""

    dim: int
    form: tuple[int, ...]

    def __post_init__(self):
        if len(self.form) != self.dim or self.dim % 2:
            raise GF2Error("form must be square of even size")
        _check_dim(self.form, self.dim)
        for i, row in enumerate(self.form):
            if (row >> i) & 1:
                raise GF2Error("form has nonzero diagonal")
            for j in range(self.dim):
                if ((row >> j) & 1) != ((self.form[j] >> i) & 1):
                    raise GF2Error("form is not symmetric")
        if rank(self.form) != self.dim:
            raise GF2Error("form is degenerate")

    @classmethod
    def standard(cls, genus: int) -> "SymplecticSpace":
        """Basis m1, l1, m2, l2, ... with <m_i, l_i> = 1."""
        form = []
        for i in range(2 * genus):
            form.append(1 << (i ^ 1))
        return cls(2 * genus, tuple(form))

    @property
    def genus(self) -> int:
        return self.dim // 2

    def dual(self, a: int) -> int:
        """The functional ``x -> pair(x, a)`` as a vector."""
        out = 0
        for i, row in enumerate(self.form):
            out |= parity(row & a) << i
        return out

    def pair(self, x: int, y: int) -> int:
        return parity(x & self.dual(y))


def orthogonal_complement(s: SymplecticSpace, a: int) -> list[int]:
    """Basis of ``{x : pair(x, a) == 0}``; it has ``dim - 1`` elements and spans ``a``."""
    if a == 0:
        raise ZeroVector("complement of the zero vector is the whole space")
    _check_dim([a], s.dim)
    w = s.dual(a)
    p = (w & -w).bit_length() - 1
    out = []
    for i in range(s.dim):
        if i == p:
            continue
        out.append((1 << i) | ((1 << p) if (w >> i) & 1 else 0))
    return out


@dataclass(frozen=True)
class Quotient:
    """Reduction of vectors in ``span(ambient)`` modulo ``span(kill)``."""

    ambient: tuple[int, ...]
    kill: tuple[int, ...]

    def reduce(self, x: int) -> int:
        if not in_span(x, self.ambient):
            raise NotInAmbient(f"{x:b} is not in the ambient span")
        for b in self.kill:
            x = min(x, x ^ b)
        return x

    def same_class(self, x: int, y: int) -> bool:
        return self.reduce(x) == self.reduce(y)


def quotient_classes(ambient: Sequence[int], kill: Sequence[int]) -> Quotient:
    amb = echelon(ambient)
    for k in kill:
        if not in_span(k, amb):
            raise NotInAmbient(f"relation {k:b} is not in the ambient span")
    return Quotient(tuple(amb), tuple(echelon(kill)))

"""Witt basis, the primitive idempotent and the spinor spaces S^r."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .clifford import Multivector
from .linalg import NotInSpan, SparseSpanSolver
from .scalar_field import ONE, ZERO, FieldElement, I

HALF = FieldElement(1, 0) / 2


@dataclass(frozen=True)
class WittIndex:
    j: int
    dagger: bool

    def __str__(self):
        return f"f†{self.j}" if self.dagger else f"f{self.j}"


def _check_index(j: int, p: int) -> None:
    if p < 1:
        raise ValueError("p must be at least 1")
    if not 1 <= j <= 2 * p:
        raise ValueError(f"Witt index {j} outside 1..{2 * p}")


@lru_cache(maxsize=None)
def witt_vector(j: int, dagger: bool, p: int) -> Multivector:
    """f†_j = (e_{2j-1} + i e_{2j})/2 and f_j = -(e_{2j-1} - i e_{2j})/2 in C_{4p}."""
    _check_index(j, p)
    odd, even = 1 << (2 * j - 2), 1 << (2 * j - 1)
    half_i = HALF * I
    if dagger:
        terms = {odd: HALF, even: half_i}
    else:
        terms = {odd: -HALF, even: half_i}
    return Multivector(4 * p, terms)


def fdag(j: int, p: int) -> Multivector:
    return witt_vector(j, True, p)


def f(j: int, p: int) -> Multivector:
    return witt_vector(j, False, p)


@lru_cache(maxsize=None)
def idempotent_factor(j: int, p: int) -> Multivector:
    """I_j = f_j f†_j."""
    return f(j, p) * fdag(j, p)


@lru_cache(maxsize=None)
def primitive_idempotent(p: int) -> Multivector:
    if p < 1:
        raise ValueError("p must be at least 1")
    out = Multivector.scalar(4 * p)
    for j in range(1, 2 * p + 1):
        out = out * idempotent_factor(j, p)
    return out


def dagger_product(indices: Sequence[int], p: int) -> Multivector:
    """f†_{a1} f†_{a2} ... in the order given."""
    out = Multivector.scalar(4 * p)
    for a in indices:
        out = out * fdag(a, p)
    return out


@lru_cache(maxsize=None)
def spinor_monomial(subset: tuple[int, ...], p: int) -> Multivector:
    """f†_A I with A sorted increasingly."""
    return dagger_product(subset, p) * primitive_idempotent(p)


def witt_word(subset: Sequence[int]) -> str:
    return " ".join([f"f†{a}" for a in subset] + ["I"])


class SpinorSubspace:
    """An exact basis of a subspace of spinor space together with a coordinate solver."""

    def __init__(self, p: int, label, basis: Sequence[Multivector], names: Sequence[str] | None = None):
        self.p = p
        self.label = label
        self.basis = tuple(basis)
        self.names = tuple(names) if names is not None else None
        for b in self.basis:
            if b.dim != 4 * p:
                raise ValueError("basis element lives in the wrong algebra")
        # raises when the family is dependent
        self._solver = SparseSpanSolver([dict(b.items()) for b in self.basis])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def coordinates(self, x: Multivector) -> list[FieldElement]:
        if x.dim != 4 * self.p:
            raise ValueError("multivector lives in the wrong algebra")
        return self._solver.coordinates(dict(x.items()))

    def contains(self, x: Multivector) -> bool:
        try:
            self.coordinates(x)
        except NotInSpan:
            return False
        return True

    def combine(self, coords: Sequence) -> Multivector:
        out: dict[int, FieldElement] = {}
        for c, b in zip(coords, self.basis):
            if not c:
                continue
            for m, v in b.items():
                cur = out.get(m)
                out[m] = c * v if cur is None else cur + c * v
        return Multivector(4 * self.p, out)

    def __repr__(self):
        return f"SpinorSubspace(p={self.p}, label={self.label!r}, dim={self.dim})"


def subsets(p: int, r: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, 2 * p + 1), r))


@lru_cache(maxsize=None)
def spinor_basis(p: int, r: int) -> SpinorSubspace:
    if p < 1:
        raise ValueError("p must be at least 1")
    if not 0 <= r <= 2 * p:
        raise ValueError(f"degree {r} outside 0..{2 * p}")
    sets = subsets(p, r)
    space = SpinorSubspace(
        p, ("S", r), [spinor_monomial(a, p) for a in sets], [witt_word(a) for a in sets]
    )
    assert space.dim == comb(2 * p, r)
    return space


@lru_cache(maxsize=None)
def full_spinor_space(p: int) -> SpinorSubspace:
    """All of S, with the monomials ordered by degree and then lexicographically."""
    sets = [a for r in range(2 * p + 1) for a in subsets(p, r)]
    return SpinorSubspace(
        p, ("S", "all"), [spinor_monomial(a, p) for a in sets], [witt_word(a) for a in sets]
    )


def spinor_coordinates(space: SpinorSubspace, x: Multivector) -> list[FieldElement]:
    return space.coordinates(x)


def homogeneous_parts(x: Multivector, p: int) -> dict[int, Multivector]:
    """Split a spinor into its S^r components (raises when x is not in S)."""
    full = full_spinor_space(p)
    coords = full.coordinates(x)
    parts: dict[int, Multivector] = {}
    pos = 0
    for r in range(2 * p + 1):
        n = comb(2 * p, r)
        chunk = coords[pos : pos + n]
        pos += n
        if any(chunk):
            parts[r] = spinor_basis(p, r).combine(chunk)
    return parts


def describe_spinor(x: Multivector, p: int, space: SpinorSubspace | None = None) -> str:
    """Render a spinor as a Witt-word combination such as "(2) f†1 f†2 I + (-1) f†3 f†4 I"."""
    space = space or full_spinor_space(p)
    coords = space.coordinates(x)
    parts = []
    for c, name in zip(coords, space.names or ()):
        if not c:
            continue
        if c == ONE:
            parts.append(name)
        elif c == -ONE:
            parts.append("-" + name)
        else:
            parts.append(f"({c}) {name}")
    return " + ".join(parts) if parts else "0"


def apply_structure(matrix, x: Multivector, row_action: bool = True) -> Multivector:
    """Act with a real 4p x 4p matrix on the 1-vector part of x.

    Row action sends e_a to sum_b M[a][b] e_b; column action uses the transpose.
    """
    if any(bin(m).count("1") != 1 for m, _ in x.items()):
        raise ValueError("structure matrices act on 1-vectors only")
    n = x.dim
    out: dict[int, FieldElement] = {}
    for m, c in x.items():
        a = m.bit_length() - 1
        for b in range(n):
            entry = matrix[a][b] if row_action else matrix[b][a]
            if entry:
                key = 1 << b
                cur = out.get(key, ZERO)
                out[key] = cur + c * entry
    return Multivector(n, out)

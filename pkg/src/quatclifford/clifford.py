"""Sparse multivectors of the complex Clifford algebra C_m with e_a^2 = -1."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .scalar_field import ONE, ZERO, FieldElement, as_field

__all__ = [
    "DimensionMismatch",
    "Multivector",
    "blade_sign",
    "blade_indices",
    "mask_of",
    "mv_product",
    "mv_grade",
    "mv_clifford_conj",
    "mv_hermitian_conj",
    "mv_inner",
]


class DimensionMismatch(ValueError):
    pass


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def blade_indices(mask: int) -> list[int]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@lru_cache(maxsize=1 << 20)
def blade_sign(a: int, b: int) -> int:
    """Sign of e_A e_B = sign * e_{A xor B} for signature (0, m)."""
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b).count("1")  # each shared generator squares to -1
    return -1 if swaps & 1 else 1


def _grade_sign(k: int) -> int:
    # (-1)^{k(k+1)/2}
    return -1 if (k * (k + 1) // 2) & 1 else 1


class Multivector:
    """Immutable sparse element of C_dim keyed by blade bitmask."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[int, object] | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        clean: dict[int, FieldElement] = {}
        limit = 1 << dim
        for mask, coeff in (terms or {}).items():
            if not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask} outside C_{dim}")
            c = as_field(coeff)
            if c is NotImplemented:
                raise TypeError(f"unsupported coefficient {coeff!r}")
            if c:
                clean[mask] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _wrap(cls, dim: int, terms: dict) -> "Multivector":
        obj = object.__new__(cls)
        obj.dim = dim
        obj._terms = {k: terms[k] for k in sorted(terms) if terms[k]}
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def scalar(cls, dim: int, value=1) -> "Multivector":
        return cls(dim, {0: value})

    @classmethod
    def basis_vector(cls, dim: int, alpha: int) -> "Multivector":
        if not 1 <= alpha <= dim:
            raise ValueError(f"e_{alpha} not in C_{dim}")
        return cls(dim, {1 << (alpha - 1): ONE})

    @classmethod
    def blade(cls, dim: int, indices: Iterable[int], coeff=1) -> "Multivector":
        """The product e_{i1} e_{i2} ... in the given order, times coeff."""
        result = cls.scalar(dim, coeff)
        for i in indices:
            result = result * cls.basis_vector(dim, i)
        return result

    @classmethod
    def vector(cls, dim: int, coords: Iterable) -> "Multivector":
        return cls(dim, {1 << k: c for k, c in enumerate(coords)})

    # access
    @property
    def terms(self) -> dict[int, FieldElement]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mask: int) -> FieldElement:
        return self._terms.get(mask, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def grades(self) -> set[int]:
        return {bin(m).count("1") for m in self._terms}

    def is_even(self) -> bool:
        return all(bin(m).count("1") % 2 == 0 for m in self._terms)

    def scalar_part(self) -> FieldElement:
        return self._terms.get(0, ZERO)

    # algebra
    def _check(self, other: "Multivector"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"C_{self.dim} vs C_{other.dim}")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            c = as_field(other)
            if c is NotImplemented:
                return NotImplemented
            other = Multivector.scalar(self.dim, c)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            out[m] = c if v is None else v + c
        return Multivector._wrap(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._wrap(self.dim, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            c = as_field(other)
            if c is NotImplemented:
                return NotImplemented
            other = Multivector.scalar(self.dim, c)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Multivector":
        c = as_field(c)
        if not c:
            return Multivector._wrap(self.dim, {})
        return Multivector._wrap(self.dim, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_product(self, other)
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __truediv__(self, other):
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c.inv())

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.dim == other.dim and self._terms == other._terms
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        if not c:
            return not self._terms
        return len(self._terms) == 1 and self._terms.get(0) == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, tuple(self._terms.items())))
        return self._hash

    def grade(self, k: int) -> "Multivector":
        return mv_grade(self, k)

    def clifford_conj(self) -> "Multivector":
        return mv_clifford_conj(self)

    def dagger(self) -> "Multivector":
        return mv_hermitian_conj(self)

    def field_conj(self) -> "Multivector":
        return Multivector._wrap(self.dim, {m: c.conj() for m, c in self._terms.items()})

    # display and serialization
    def __repr__(self):
        return f"Multivector({self.dim}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self._terms.items():
            blade = "".join(f"e{i}" for i in blade_indices(m))
            cs = str(c)
            if not blade:
                parts.append(cs)
            elif c == 1:
                parts.append(blade)
            elif c == -1:
                parts.append("-" + blade)
            else:
                parts.append(f"({cs}){blade}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"blade": blade_indices(m), "coeff": c.to_json()}
                for m, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "Multivector":
        dim = int(data["dim"])
        acc = cls(dim)
        for term in data["terms"]:
            idx = [int(i) for i in term["blade"]]
            acc = acc + cls.blade(dim, idx, FieldElement.from_json(term["coeff"]))
        return acc


def mv_product(x: Multivector, y: Multivector) -> Multivector:
    x._check(y)
    out: dict[int, FieldElement] = {}
    get = out.get
    for ma, ca in x._terms.items():
        for mb, cb in y._terms.items():
            m = ma ^ mb
            c = ca * cb
            if blade_sign(ma, mb) < 0:
                c = -c
            v = get(m)
            out[m] = c if v is None else v + c
    return Multivector._wrap(x.dim, out)


def mv_grade(x: Multivector, k: int) -> Multivector:
    if not 0 <= k <= x.dim:
        raise ValueError(f"grade {k} outside 0..{x.dim}")
    return Multivector._wrap(
        x.dim, {m: c for m, c in x._terms.items() if bin(m).count("1") == k}
    )


def mv_clifford_conj(x: Multivector) -> Multivector:
    return Multivector._wrap(
        x.dim,
        {m: (c if _grade_sign(bin(m).count("1")) > 0 else -c) for m, c in x._terms.items()},
    )


def mv_hermitian_conj(x: Multivector) -> Multivector:
    return Multivector._wrap(
        x.dim,
        {
            m: (c.conj() if _grade_sign(bin(m).count("1")) > 0 else -c.conj())
            for m, c in x._terms.items()
        },
    )


def mv_inner(x: Multivector, y: Multivector) -> FieldElement:
    """Scalar part of x-dagger times y, computed without the full product."""
    x._check(y)
    total = ZERO
    for m, c in x._terms.items():
        d = y._terms.get(m)
        if d is None:
            continue
        k = bin(m).count("1")
        term = c.conj() * d
        # dagger sign times the sign of e_A e_A
        if _grade_sign(k) * blade_sign(m, m) < 0:
            term = -term
        total = total + term
    return total

"""Triangular arrays a(n, k), weight sequences u_k and the polynomials they generate.

A :class:`PolySeqSpec` pairs a triangle with weights and produces

    g_n(q) = sum_k a(n, k) * u_k * q**k.

Builtin triangles: ``binomial``, ``sun_a`` (C(n,k) C(2n-2k, n-k)), ``ones``.
Builtin weights: ``central_binomial`` (C(2k,k)), ``catalan``, ``ones``.
Triangles can also be read from ``n,k,value`` CSV files.
"""
from __future__ import annotations

import csv
import os
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from .arith import Poly, binomial


class TriangleFormatError(ValueError):
    """Raised for malformed triangle CSV input."""


def _binomial_entry(n: int, k: int) -> int:
    return binomial(n, k)


def _sun_a_entry(n: int, k: int) -> int:
    return binomial(n, k) * binomial(2 * n - 2 * k, n - k)


def _ones_entry(n: int, k: int) -> int:
    return 1


def _central_binomial(k: int) -> int:
    return binomial(2 * k, k)


def _catalan(k: int) -> int:
    return binomial(2 * k, k) // (k + 1)


def _one(k: int) -> int:
    return 1


class _Table:
    """Picklable lookup for file-backed triangles."""

    def __init__(self, entries: Dict[Tuple[int, int], int]):
        self.entries = dict(entries)

    def __call__(self, n: int, k: int) -> int:
        return self.entries.get((n, k), 0)


class Triangle:
    """Memoized integer triangle with zero-extension outside 0 <= k <= n.

    ``max_n`` is ``None`` for builtin (unbounded) triangles and the largest
    stored row for file-backed ones.
    """

    def __init__(
        self,
        name: str,
        value_fn: Callable[[int, int], int],
        source: str = "builtin",
        max_n: Optional[int] = None,
    ):
        self.name = name
        self.source = source
        self.max_n = max_n
        self._fn = value_fn
        self._memo: Dict[Tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def __call__(self, n: int, k: int) -> int:
        return self.value(n, k)

    def value(self, n: int, k: int) -> int:
        # also covers n < 0, which a(n-1, .) reaches at n = 0
        if k < 0 or k > n:
            return 0
        key = (n, k)
        try:
            return self._memo[key]
        except KeyError:
            pass
        v = self._fn(n, k)
        with self._lock:
            self._memo.setdefault(key, v)
        return v

    def row(self, n: int) -> list:
        return [self.value(n, k) for k in range(n + 1)]

    def require_rows(self, n: int) -> None:
        """Refuse to read rows past the stored range of a file triangle."""
        if self.max_n is not None and n > self.max_n:
            raise ValueError(
                f"triangle {self.name!r} stores rows up to n={self.max_n}, "
                f"but row {n} is required"
            )

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"Triangle({self.name!r}, source={self.source!r})"


def triangle_value(tri: Triangle, n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"triangle row index must be nonnegative, got {n}")
    return tri.value(n, k)


class WeightSeq:
    """Positive integer weights u_k."""

    def __init__(self, name: str, value_fn: Callable[[int], int]):
        self.name = name
        self._fn = value_fn
        self._memo: Dict[int, int] = {}

    def __call__(self, k: int) -> int:
        try:
            return self._memo[k]
        except KeyError:
            v = self._memo[k] = self._fn(k)
            return v

    def values(self, count: int) -> list:
        return [self(k) for k in range(count)]

    def __repr__(self) -> str:
        return f"WeightSeq({self.name!r})"


TRIANGLES: Dict[str, Callable[[int, int], int]] = {
    "binomial": _binomial_entry,
    "sun_a": _sun_a_entry,
    "ones": _ones_entry,
}

WEIGHTS: Dict[str, Callable[[int], int]] = {
    "central_binomial": _central_binomial,
    "catalan": _catalan,
    "ones": _one,
}


def builtin_triangle(name: str) -> Triangle:
    try:
        fn = TRIANGLES[name]
    except KeyError:
        raise KeyError(f"unknown triangle {name!r}; builtins: {sorted(TRIANGLES)}") from None
    return Triangle(name, fn)


def builtin_weights(name: str) -> WeightSeq:
    try:
        fn = WEIGHTS[name]
    except KeyError:
        raise KeyError(f"unknown weights {name!r}; builtins: {sorted(WEIGHTS)}") from None
    return WeightSeq(name, fn)


def resolve_triangle(name_or_path: str) -> Triangle:
    """A builtin name, or otherwise a path to a CSV file."""
    if name_or_path in TRIANGLES:
        return builtin_triangle(name_or_path)
    if os.path.exists(name_or_path):
        return load_triangle_csv(name_or_path)
    raise KeyError(
        f"{name_or_path!r} is neither a builtin triangle {sorted(TRIANGLES)} nor an existing file"
    )


@dataclass
class PolySeqSpec:
    """g_n(q) = sum_k a(n,k) u_k q^k for a triangle and weight sequence."""

    triangle: Triangle
    weights: WeightSeq
    _cache: Dict[int, Poly] = field(default_factory=dict, repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.triangle.name}+{self.weights.name}"

    def __call__(self, n: int) -> Poly:
        return gen_poly(self, n)

    def __getstate__(self):
        # workers rebuild what they need; shipping the cache costs more
        return {"triangle": self.triangle, "weights": self.weights, "_cache": {}}


def gen_poly(spec: PolySeqSpec, n: int) -> Poly:
    if n < 0:
        raise ValueError(f"polynomial index must be nonnegative, got {n}")
    try:
        return spec._cache[n]
    except KeyError:
        pass
    tri, u = spec.triangle, spec.weights
    p = Poly([tri.value(n, k) * u(k) for k in range(n + 1)])
    spec._cache[n] = p
    return p


def make_spec(triangle: str | Triangle, weights: str | WeightSeq) -> PolySeqSpec:
    if isinstance(triangle, str):
        triangle = resolve_triangle(triangle)
    if isinstance(weights, str):
        weights = builtin_weights(weights)
    return PolySeqSpec(triangle, weights)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def load_triangle_csv(path: str | os.PathLike, name: Optional[str] = None) -> Triangle:
    """Read ``n,k,value`` rows (optional header) into a zero-extended triangle."""
    entries: Dict[Tuple[int, int], int] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row]
            if not any(cells):
                continue
            if lineno == 1 and [c.lower() for c in cells] == ["n", "k", "value"]:
                continue
            if len(cells) != 3:
                raise TriangleFormatError(f"{path}: row {lineno}: expected 3 fields, got {len(cells)}")
            try:
                n, k, v = (int(c) for c in cells)
            except ValueError:
                raise TriangleFormatError(f"{path}: row {lineno}: non-integer field in {row!r}") from None
            if n < 0 or k < 0 or k > n:
                raise TriangleFormatError(f"{path}: row {lineno}: index ({n},{k}) outside 0 <= k <= n")
            if (n, k) in entries and entries[(n, k)] != v:
                raise TriangleFormatError(
                    f"{path}: row {lineno}: conflicting duplicate for ({n},{k}): "
                    f"{entries[(n, k)]} vs {v}"
                )
            entries[(n, k)] = v
    max_n = max((n for n, _ in entries), default=-1)
    label = name or os.path.basename(os.fspath(path))
    return Triangle(label, _Table(entries), source=os.fspath(path), max_n=max_n)


def write_triangle_csv(tri: Triangle, n_max: int, path: str | os.PathLike, header: bool = True) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow(["n", "k", "value"])
        for n in range(n_max + 1):
            for k in range(n + 1):
                w.writerow([n, k, tri.value(n, k)])

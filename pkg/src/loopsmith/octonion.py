"""Octonion arithmetic and the 240 unit octavian integers.

Octonions are pairs of quaternions multiplied by Cayley-Dickson doubling,

    (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c)),

with coordinates ``x[0:4]`` for ``a`` and ``x[4:8]`` for ``b``; quaternions
use the Hamilton product on ``(1, i, j, k)``.  Exact octonions with
half-integer coordinates are stored doubled, as integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import itertools

import numpy as np

from .errors import ClosureNotFound, OctonionOverflow
from .loops import FiniteLoop, centre_of_loop, factor_loop, make_loop, quotient_blocks

EXACT_BUDGET = 2**20


def quat_mul(p, q):
    p, q = np.asarray(p), np.asarray(q)
    a0, a1, a2, a3 = np.moveaxis(p, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(q, -1, 0)
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def quat_conj(q):
    q = np.asarray(q)
    return q * np.array([1, -1, -1, -1], dtype=q.dtype)


def oct_mul(x, y):
    """Product of (arrays of) octonions, broadcasting over leading axes."""
    x, y = np.asarray(x), np.asarray(y)
    a, b = x[..., :4], x[..., 4:]
    c, d = y[..., :4], y[..., 4:]
    return np.concatenate([quat_mul(a, c) - quat_mul(quat_conj(d), b),
                           quat_mul(d, a) + quat_mul(b, quat_conj(c))], axis=-1)


def oct_conj(x):
    x = np.asarray(x)
    return x * np.array([1, -1, -1, -1, -1, -1, -1, -1], dtype=x.dtype)


def oct_norm2(x):
    x = np.asarray(x)
    return (x * x).sum(axis=-1)


def oct_mul_exact(x2, y2) -> np.ndarray:
    """Product of half-integer octonions given as doubled integer coordinates.

    The doubled product is ``(x2 * y2) / 2``; an odd coordinate means the
    product leaves the half-integer lattice and raises ``ValueError``.
    """
    x2 = np.asarray(x2, dtype=np.int64)
    y2 = np.asarray(y2, dtype=np.int64)
    if np.abs(x2).max(initial=0) > EXACT_BUDGET or np.abs(y2).max(initial=0) > EXACT_BUDGET:
        raise OctonionOverflow(f"coordinate magnitude exceeds {EXACT_BUDGET}")
    p = oct_mul(x2, y2)
    if (p % 2).any():
        raise ValueError("product is not half-integral")
    return p // 2


def associator(x, y, z):
    return oct_mul(oct_mul(x, y), z) - oct_mul(x, oct_mul(y, z))


def moufang_residual(x, y, z):
    """Euclidean norm of ``(xy)(zx) - (x(yz))x``."""
    lhs = oct_mul(oct_mul(x, y), oct_mul(z, x))
    rhs = oct_mul(oct_mul(x, oct_mul(y, z)), x)
    return np.sqrt(oct_norm2(lhs - rhs))


def norm_defect(x, y):
    """``|N(xy) - N(x)N(y)|`` per pair."""
    return np.abs(oct_norm2(oct_mul(x, y)) - oct_norm2(x) * oct_norm2(y))


def random_units(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal((n, 8))
    return v / np.sqrt(oct_norm2(v))[:, None]


def basis(i: int) -> np.ndarray:
    e = np.zeros(8)
    e[i] = 1.0
    return e


def structure_constants() -> list[list[tuple[int, int]]]:
    """``e_i e_j = sign * e_k`` as ``(sign, k)`` for all basis pairs."""
    out = []
    for i in range(8):
        row = []
        for j in range(8):
            p = oct_mul(basis(i), basis(j))
            k = int(np.argmax(np.abs(p)))
            row.append((int(np.sign(p[k])), k))
        out.append(row)
    return out


@dataclass(frozen=True)
class Octonion:
    """Float octonion with operator syntax."""

    coords: tuple[float, ...]

    def __post_init__(self):
        if len(self.coords) != 8:
            raise ValueError("an octonion has 8 coordinates")

    def __mul__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(oct_mul(self.coords, other.coords).tolist()))

    def __add__(self, other):
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def conj(self) -> "Octonion":
        return Octonion(tuple(oct_conj(self.coords).tolist()))

    def norm2(self) -> float:
        return float(oct_norm2(self.coords))


@dataclass(frozen=True)
class HalfOctonion:
    """Exact octonion with coordinates ``doubled[i] / 2``."""

    doubled: tuple[int, ...]

    def __post_init__(self):
        if len(self.doubled) != 8:
            raise ValueError("an octonion has 8 coordinates")

    def __mul__(self, other: "HalfOctonion") -> "HalfOctonion":
        return HalfOctonion(tuple(int(v) for v in oct_mul_exact(self.doubled, other.doubled)))

    def __neg__(self):
        return HalfOctonion(tuple(-v for v in self.doubled))

    def conj(self) -> "HalfOctonion":
        return HalfOctonion(tuple(int(v) for v in oct_conj(self.doubled)))

    def norm2_times4(self) -> int:
        return sum(v * v for v in self.doubled)

    def to_float(self) -> Octonion:
        return Octonion(tuple(v / 2 for v in self.doubled))


ONE = HalfOctonion((2, 0, 0, 0, 0, 0, 0, 0))


# ---------------------------------------------------------------------------
# octavian units

def unit_candidates() -> tuple[np.ndarray, np.ndarray]:
    """Doubled coordinates of the 16 signed units and the 1120 four-support half-vectors."""
    units = []
    for i in range(8):
        for s in (2, -2):
            v = [0] * 8
            v[i] = s
            units.append(v)
    halves = []
    for support in itertools.combinations(range(8), 4):
        for signs in itertools.product((1, -1), repeat=4):
            v = [0] * 8
            for i, s in zip(support, signs):
                v[i] = s
            halves.append(v)
    return np.array(units, dtype=np.int64), np.array(halves, dtype=np.int64)


def _codes(rows: np.ndarray) -> np.ndarray:
    # doubled coordinates of unit vectors lie in -2..2
    return (rows + 2) @ (5 ** np.arange(8, dtype=np.int64))


def _closure_in_lattice(S: np.ndarray, limit: int) -> np.ndarray | None:
    """Multiplicative closure, or None if a product leaves the half-integer lattice
    or the set outgrows ``limit``."""
    while True:
        P = oct_mul(S[:, None, :], S[None, :, :]).reshape(-1, 8)
        if (P % 2).any():
            return None
        P //= 2
        codes = np.concatenate([_codes(S), _codes(P)])
        _, first = np.unique(codes, return_index=True)
        if len(first) == len(S):
            return S
        if len(first) > limit:
            return None
        S = np.concatenate([S, P])[np.sort(first)]


@dataclass(frozen=True, eq=False)
class OctavianLoop:
    """The unit octavians: ``elements[i]`` holds doubled coordinates of loop element ``i``."""

    elements: np.ndarray
    loop: FiniteLoop
    seed: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def embed(self, i: int) -> HalfOctonion:
        return HalfOctonion(tuple(int(v) for v in self.elements[i]))

    def index(self, x) -> int:
        x = np.asarray(x.doubled if isinstance(x, HalfOctonion) else x)
        hit = np.flatnonzero((self.elements == x).all(axis=1))
        if not len(hit):
            raise KeyError(tuple(x.tolist()))
        return int(hit[0])

    def as_floats(self) -> np.ndarray:
        return self.elements / 2.0


@lru_cache(maxsize=1)
def build_octavian_units() -> OctavianLoop:
    """Close the 16 signed units plus one half-unit seed under multiplication.

    Seeds are tried in lexicographic order of their doubled coordinates; the
    first closure of exactly 240 elements forming a Latin square is returned,
    identity first and the rest in lexicographic order.
    """
    units, halves = unit_candidates()
    for seed in sorted(map(tuple, halves.tolist())):
        S = _closure_in_lattice(np.concatenate([units, np.array([seed])]), limit=240)
        if S is None or len(S) != 240:
            continue
        rest = sorted(tuple(r) for r in S.tolist() if tuple(r) != ONE.doubled)
        elements = np.array([ONE.doubled, *rest], dtype=np.int64)
        pos = {int(c): i for i, c in enumerate(_codes(elements))}
        P = oct_mul(elements[:, None, :], elements[None, :, :]) // 2
        table = np.vectorize(pos.__getitem__)(_codes(P.reshape(-1, 8))).reshape(240, 240)
        try:
            loop = make_loop(table)
        except Exception:
            continue
        elements.flags.writeable = False
        return OctavianLoop(elements, loop, seed)
    raise ClosureNotFound("no half-unit seed closes to 240 units")


def octavian_centre_blocks() -> list[tuple[int, ...]]:
    O = build_octavian_units()
    return quotient_blocks(O.loop, centre_of_loop(O.loop))


@lru_cache(maxsize=1)
def octavian_factor_by_centre() -> FiniteLoop:
    """The 240-loop modulo its centre ``{1, -1}``: a loop of order 120."""
    O = build_octavian_units()
    return factor_loop(O.loop, centre_of_loop(O.loop))

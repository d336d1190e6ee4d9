"""Exact integer/rational linear algebra and pi-scaled scalars.

Rationals are :class:`fractions.Fraction`; integer matrices are stored as
tuples of row tuples.  Nothing in here touches floating point except the
interval enclosure of pi used to order :class:`PiScaled` values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

import mpmath

Rational = Fraction


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions, ``"p/q"`` strings and ``[p, q]`` pairs."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    if hasattr(x, "__index__"):
        return Fraction(int(x))
    raise TypeError(f"cannot read {x!r} as an exact rational")


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class IntMatrix:
    """Row-major matrix of Python ints."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("IntMatrix needs at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, idx):
        return self.entries[idx]

    def __iter__(self):
        return iter(self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        other = _as_intmatrix(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_intmatrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(tuple(tuple(r) for r in m))


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant of a square int matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[-1][-1]


def det(m) -> int:
    """Exact determinant of a square integer matrix."""
    m = _as_intmatrix(m)
    if m.rows != m.cols:
        raise ValueError(f"det needs a square matrix, got {m.rows}x{m.cols}")
    return bareiss_det(m.entries)


def rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    rows = [[Fraction(v) for v in r] for r in rows]
    den = 1
    for r in rows:
        for v in r:
            den = math.lcm(den, v.denominator)
    ints = [[int(v * den) for v in r] for r in rows]
    return Fraction(bareiss_det(ints), den ** len(rows))


def row_echelon(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Iterable[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Rational basis of {x : rows . x = 0}."""
    red, pivots = row_echelon(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(x)
    return basis


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the nonsingular square system a x = b over Q."""
    n = len(a)
    aug = [[Fraction(v) for v in a[i]] + [Fraction(b[i])] for i in range(n)]
    red, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    return tuple(vec) if g in (0, 1) else tuple(v // g for v in vec)


def hnf(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ m``, ``|det U| = 1``, pivots positive and
    the entries above each pivot reduced into ``[0, pivot)``.  Zero rows sit at
    the bottom.
    """
    m = _as_intmatrix(m)
    nr, nc = m.rows, m.cols
    h = [list(r) for r in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]

    def sub(i, j, q):  # row_i -= q * row_j
        if q:
            h[i] = [x - q * y for x, y in zip(h[i], h[j])]
            u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    r = 0
    for c in range(nc):
        if r == nr:
            break
        while True:
            nz = [i for i in range(r, nr) if h[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(h[i][c]))
            swap(r, best)
            done = True
            for i in range(r + 1, nr):
                if h[i][c]:
                    sub(i, r, h[i][c] // h[r][c])
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            sub(i, r, h[i][c] // h[r][c])
        r += 1
    return IntMatrix(tuple(map(tuple, h))), IntMatrix(tuple(map(tuple, u)))


def lattice_index(basis) -> int:
    """Index in Z^n of the lattice spanned by the n rows of ``basis``."""
    basis = _as_intmatrix(basis)
    if basis.rows != basis.cols:
        raise ValueError("lattice_index needs n basis vectors in Z^n")
    d = det(basis)
    if d == 0:
        raise ValueError("basis is rank deficient")
    return abs(d)


# --- pi-scaled scalars -------------------------------------------------------

_PI_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def _mpf_to_fraction(v) -> Fraction:
    man, exp = v.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def pi_enclosure(bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo < pi < hi`` and width about ``2**-bits``."""
    if bits not in _PI_CACHE:
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = bits
            box = mpmath.iv.pi
            with mpmath.mp.workprec(2 * bits + 20):
                lo, hi = mpmath.mpf(box.a), mpmath.mpf(box.b)
        finally:
            mpmath.iv.prec = old
        _PI_CACHE[bits] = (_mpf_to_fraction(lo), _mpf_to_fraction(hi))
    return _PI_CACHE[bits]


def _pow_interval(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    # lo > 0 is assumed
    if k >= 0:
        return lo ** k, hi ** k
    return hi ** k, lo ** k


@total_ordering
@dataclass(frozen=True)
class PiScaled:
    """The exact real number ``coeff * pi**pi_power``.

    ``pi_power`` may be negative (quotients like ``4**k / kappa_k**2`` need it).
    Ordering against a value with a different power of pi widens a certified
    rational enclosure of pi until the sign is decided; pi is transcendental,
    so this always terminates.
    """

    coeff: Fraction
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        object.__setattr__(self, "pi_power", int(self.pi_power))

    @classmethod
    def of(cls, x) -> "PiScaled":
        return x if isinstance(x, PiScaled) else cls(as_fraction(x), 0)

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        if self.pi_power == 0 or self.coeff == 0:
            return self.coeff, self.coeff
        lo, hi = _pow_interval(*pi_enclosure(bits), self.pi_power)
        a, b = self.coeff * lo, self.coeff * hi
        return (a, b) if a <= b else (b, a)

    def is_rational(self) -> bool:
        return self.pi_power == 0 or self.coeff == 0

    def __float__(self) -> float:
        return float(self.coeff) * math.pi ** self.pi_power

    def __mul__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff * other.coeff, self.pi_power + other.pi_power)
        return PiScaled(self.coeff * as_fraction(other), self.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff / other.coeff, self.pi_power - other.pi_power)
        return PiScaled(self.coeff / as_fraction(other), self.pi_power)

    def __rtruediv__(self, other):
        return PiScaled.of(other) / self

    def __pow__(self, k: int):
        return PiScaled(self.coeff ** k, self.pi_power * k)

    def __neg__(self):
        return PiScaled(-self.coeff, self.pi_power)

    def __eq__(self, other):
        try:
            return compare(self, other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return compare(self, other) < 0

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeff)
        return hash((self.coeff, self.pi_power))

    def __str__(self):
        c = fraction_str(self.coeff)
        if self.is_rational():
            return c
        return f"{c}*pi^{self.pi_power}"


def compare(a, b) -> int:
    """Certified sign of ``a - b`` for rationals and :class:`PiScaled` values."""
    a, b = PiScaled.of(a), PiScaled.of(b)
    if a.pi_power == b.pi_power:
        return (a.coeff > b.coeff) - (a.coeff < b.coeff)
    if a.coeff == 0 or b.coeff == 0:
        # pi**k > 0, so the nonzero side's coefficient fixes the sign
        return (a.coeff > 0) - (a.coeff < 0) - (b.coeff > 0) + (b.coeff < 0)
    bits = 64
    while True:
        alo, ahi = a.enclosure(bits)
        blo, bhi = b.enclosure(bits)
        if ahi < blo:
            return -1
        if alo > bhi:
            return 1
        bits *= 2


def ball_volume(n: int) -> PiScaled:
    """Volume of the Euclidean unit ball in R^n, exactly."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    m, odd = divmod(n, 2)
    if odd:
        return PiScaled(Fraction(2 ** n * math.factorial(m), math.factorial(n)), m)
    return PiScaled(Fraction(1, math.factorial(m)), m)


def nth_root_enclosure(x: Fraction, n: int, digits: int = 12) -> tuple[Fraction, Fraction]:
    """Decimal enclosure ``lo <= x**(1/n) <= hi`` of width ``10**-digits``."""
    if x < 0 or n < 1:
        raise ValueError("need x >= 0 and n >= 1")
    scale = 10 ** digits
    # largest a with a**n <= x * scale**n
    num, den = x.numerator * scale ** n, x.denominator
    a = _iroot(num // den, n)
    while (a + 1) ** n * den <= num:
        a += 1
    while a ** n * den > num:
        a -= 1
    lo = Fraction(a, scale)
    hi = lo if a ** n * den == num else Fraction(a + 1, scale)
    return lo, hi


def _iroot(v: int, n: int) -> int:
    if v < 2:
        return v
    # Newton iteration on integers, seeded from the bit length
    x = 1 << ((v.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + v // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y

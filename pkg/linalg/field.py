"""Exact scalar fields: prime fields F_p and the rationals.

Matrices are plain numpy arrays. Over F_p they hold reduced residues (int64,
or Python ints for very large primes); over Q they are object arrays of
Fraction. All elimination is deterministic: the pivot is always the first
nonzero entry of the column.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np
from sympy import isprime

from config import DEFAULT_PRIME, NUMPY_PRIME_LIMIT, RATIONAL_RANDOM_BOUND

Matrix = np.ndarray


class FieldError(ValueError):
    """Raised for an invalid field description or a non-invertible scalar."""


class Field:
    """Common elimination routines; subclasses supply the scalar arithmetic."""

    name: str = "?"

    # --- scalar arithmetic (subclass hooks) ---

    def scalar(self, value):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, arr: Matrix) -> Matrix:
        raise NotImplementedError

    def random(self, rng: np.random.Generator, shape) -> Matrix:
        raise NotImplementedError

    def export(self, x):
        """Plain Python value of a scalar, for reports and printed spec files."""
        return int(x)

    def to_lists(self, m: Matrix) -> list[list]:
        return [[self.export(v) for v in row] for row in m]

    @property
    def dtype(self):
        return object

    # --- constructors ---

    def array(self, data, shape=None) -> Matrix:
        raw = np.array(data, dtype=object)
        if shape is not None:
            raw = raw.reshape(shape)
        flat = [self.scalar(v) for v in raw.ravel()]
        out = np.empty(len(flat), dtype=self.dtype)
        for i, v in enumerate(flat):
            out[i] = v
        return out.reshape(raw.shape)

    def zeros(self, rows: int, cols: int) -> Matrix:
        return self.array(np.zeros((rows, cols), dtype=object))

    def eye(self, n: int) -> Matrix:
        return self.array(np.eye(n, dtype=int).astype(object))

    def vector(self, data) -> Matrix:
        return self.array(data).reshape(-1)

    # --- matrix arithmetic ---

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def add(self, a: Matrix, b: Matrix) -> Matrix:
        return self.reduce(a + b)

    def sub(self, a: Matrix, b: Matrix) -> Matrix:
        return self.reduce(a - b)

    def scale(self, c, a: Matrix) -> Matrix:
        return self.reduce(a * self.scalar(c))

    def chain(self, *mats: Matrix) -> Matrix:
        """Product mats[0] @ mats[1] @ ... (first factor applied last)."""
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def is_zero(self, a: Matrix) -> bool:
        return a.size == 0 or not np.any(a != 0)

    def equal(self, a: Matrix, b: Matrix) -> bool:
        return a.shape == b.shape and (a.size == 0 or bool(np.all(a == b)))

    def hstack(self, mats: list[Matrix], rows: int) -> Matrix:
        mats = [m for m in mats if m.shape[1] > 0]
        if not mats:
            return self.zeros(rows, 0)
        return np.hstack(mats)

    def vstack(self, mats: list[Matrix], cols: int) -> Matrix:
        mats = [m for m in mats if m.shape[0] > 0]
        if not mats:
            return self.zeros(0, cols)
        return np.vstack(mats)

    def kron(self, a: Matrix, b: Matrix) -> Matrix:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def block_diag(self, blocks: list[Matrix]) -> Matrix:
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        out = self.zeros(rows, cols)
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    # --- elimination ---

    def rref(self, m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        a = self.reduce(m.copy()) if m.dtype == self.dtype else self.array(m)
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c] != 0)[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = self.reduce(a[r] * self.inv(a[r, c]))
            col = a[:, c].copy()
            col[r] = 0
            if np.any(col != 0):
                a = self.reduce(a - np.outer(col, a[r]))
            pivots.append(c)
            r += 1
        return a, tuple(pivots)

    def rank(self, m: Matrix) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel(self, m: Matrix) -> Matrix:
        """Columns spanning {v : m v = 0}, one per free column of rref(m)."""
        rows, cols = m.shape
        if rows == 0:
            return self.eye(cols)
        r, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in pivots]
        out = self.zeros(cols, len(free))
        for j, f in enumerate(free):
            out[f, j] = self.scalar(1)
            for i, p in enumerate(pivots):
                out[p, j] = self.scalar(-r[i, f])
        return out

    def solve(self, a: Matrix, b: Matrix) -> Matrix | None:
        """Some x with a x = b, or None when the system is inconsistent."""
        rows, cols = a.shape
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if rows == 0:
            return self.zeros(cols, b.shape[1])
        aug = np.hstack([a, b])
        r, pivots = self.rref(aug)
        if any(p >= cols for p in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, p in enumerate(pivots):
            x[p] = r[i, cols:]
        return x

    def inverse(self, m: Matrix) -> Matrix | None:
        n = m.shape[0]
        if m.shape != (n, n):
            return None
        if n == 0:
            return self.zeros(0, 0)
        return self.solve(m, self.eye(n)) if self.rank(m) == n else None

    def random_invertible(self, rng: np.random.Generator, n: int, attempts: int = 100) -> Matrix:
        for _ in range(attempts):
            m = self.random(rng, (n, n))
            if self.rank(m) == n:
                return m
        return self.eye(n)


@dataclass(frozen=True)
class PrimeField(Field):
    """F_p for a prime p."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isprime(self.p):
            raise FieldError(f"field characteristic {self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    @property
    def dtype(self):
        return np.int64 if self.p < NUMPY_PRIME_LIMIT else object

    def scalar(self, value):
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise FieldError(f"denominator {den} is not invertible mod {self.p}")
            return (num * pow(den, -1, self.p)) % self.p
        return int(value) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise FieldError("division by zero")
        return pow(x, -1, self.p)

    def reduce(self, arr: Matrix) -> Matrix:
        return arr % self.p

    def random(self, rng: np.random.Generator, shape) -> Matrix:
        out = rng.integers(0, self.p, size=shape)
        return out.astype(self.dtype)


@dataclass(frozen=True)
class RationalField(Field):
    """Q with exact Fraction entries; elimination is fraction-free."""

    @property
    def name(self) -> str:
        return "Q"

    def scalar(self, value):
        return Fraction(value)

    def inv(self, x):
        if x == 0:
            raise FieldError("division by zero")
        return Fraction(1) / Fraction(x)

    def export(self, x):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def reduce(self, arr: Matrix) -> Matrix:
        return arr

    def random(self, rng: np.random.Generator, shape) -> Matrix:
        b = RATIONAL_RANDOM_BOUND
        return self.array(rng.integers(-b, b + 1, size=shape))

    def rref(self, m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
        # Bareiss elimination on integer rows, then back substitution in Q
        src = self.array(m)
        rows, cols = src.shape
        ints = []
        for i in range(rows):
            den = lcm(*[Fraction(v).denominator for v in src[i]]) if cols else 1
            ints.append([int(Fraction(v) * den) for v in src[i]])
        pivots = []
        prev = 1
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = next((i for i in range(r, rows) if ints[i][c] != 0), None)
            if k is None:
                continue
            ints[r], ints[k] = ints[k], ints[r]
            piv = ints[r][c]
            for i in range(r + 1, rows):
                lead = ints[i][c]
                ints[i] = [(piv * ints[i][j] - lead * ints[r][j]) // prev for j in range(cols)]
            prev = piv
            pivots.append(c)
            r += 1
        out = self.zeros(rows, cols)
        reduced = [[Fraction(v) for v in row] for row in ints]
        for i in reversed(range(len(pivots))):
            c = pivots[i]
            lead = reduced[i][c]
            reduced[i] = [v / lead for v in reduced[i]]
            for k in range(i):
                factor = reduced[k][c]
                if factor != 0:
                    reduced[k] = [a - factor * b for a, b in zip(reduced[k], reduced[i])]
        for i in range(len(pivots)):
            out[i] = np.array(reduced[i], dtype=object)
        return out, tuple(pivots)


_FIELDS: dict = {}


def make_field(spec: int | str | None = None) -> Field:
    """Field from a prime, the string "rational", or None for the default prime."""
    if spec is None:
        spec = DEFAULT_PRIME
    if isinstance(spec, str):
        if spec.strip().lower() in ("rational", "q", "rationals"):
            key = "rational"
        else:
            key = int(spec)
    else:
        key = int(spec)
    if key not in _FIELDS:
        _FIELDS[key] = RationalField() if key == "rational" else PrimeField(key)
    return _FIELDS[key]

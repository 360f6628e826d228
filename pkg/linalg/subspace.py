"""Subspaces in canonical echelon form and the subspace operations the checkers use."""

from dataclasses import dataclass

import numpy as np

from linalg.field import Field, Matrix


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of field^ambient.

    `basis` holds the spanning vectors as rows of a reduced row echelon matrix
    (equivalently, the columns of `columns` are in reduced column echelon form),
    so two subspaces are equal exactly when their bases are equal.
    """

    field: Field
    ambient: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, field: Field, vectors: Matrix) -> "Subspace":
        """Span of the columns of `vectors` (shape ambient x k)."""
        ambient = vectors.shape[0]
        if vectors.shape[1] == 0:
            return cls.zero(field, ambient)
        r, pivots = field.rref(vectors.T)
        return cls(field, ambient, r[:len(pivots)], pivots)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.zeros(0, ambient), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.eye(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def columns(self) -> Matrix:
        """Basis vectors as columns (ambient x dim)."""
        return self.basis.T

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.pivots == other.pivots
                and self.field.equal(self.basis, other.basis))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient([self, other])
        return Subspace.span(self.field, self.field.hstack([self.columns, other.columns], self.ambient))

    def contains(self, v: Matrix) -> bool:
        v = v.reshape(-1, 1)
        if self.dim == 0:
            return self.field.is_zero(v)
        return self.field.rank(np.vstack([self.basis, v.T])) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_ambient([self, other])
        return (self + other).dim == self.dim

    def intersection(self, other: "Subspace") -> "Subspace":
        _check_ambient([self, other])
        f = self.field
        stacked = f.hstack([self.columns, f.scale(-1, other.columns)], self.ambient)
        null = f.kernel(stacked)
        return Subspace.span(f, f.matmul(self.columns, null[:self.dim]))

    def image(self, m: Matrix) -> "Subspace":
        """m applied to this subspace (m has `ambient` columns)."""
        return Subspace.span(self.field, self.field.matmul(m, self.columns))

    def vector_outside(self, other: "Subspace") -> Matrix | None:
        """A basis vector of `other` that does not lie in this subspace, if any."""
        for j in range(other.dim):
            v = other.columns[:, j]
            if not self.contains(v):
                return v
        return None


def _check_ambient(subspaces: list[Subspace]) -> None:
    ambients = {s.ambient for s in subspaces}
    if len(ambients) > 1:
        raise ValueError(f"subspaces live in different ambient dimensions: {sorted(ambients)}")


def image_space(field: Field, m: Matrix) -> Subspace:
    return Subspace.span(field, m)


def kernel_basis(field: Field, m: Matrix) -> Subspace:
    """Subspace of the domain mapped to zero; dim = cols - rank(m)."""
    return Subspace.span(field, field.kernel(m))


def sum_of(field: Field, subspaces: list[Subspace], ambient: int) -> Subspace:
    if not subspaces:
        return Subspace.zero(field, ambient)
    _check_ambient(subspaces)
    return Subspace.span(field, field.hstack([s.columns for s in subspaces], ambient))


@dataclass
class DirectSumCheck:
    """Outcome of a directness test.

    On failure, `witness` lists one vector per summand (some possibly zero,
    at least two nonzero) whose sum is zero.
    """

    direct: bool
    witness: list[Matrix] | None = None

    def __bool__(self) -> bool:
        return self.direct


def sum_is_direct(subspaces: list[Subspace]) -> DirectSumCheck:
    """True iff dim(sum) equals the sum of the dims; the empty sum is direct."""
    if not subspaces:
        return DirectSumCheck(True)
    _check_ambient(subspaces)
    field = subspaces[0].field
    ambient = subspaces[0].ambient
    stacked = field.hstack([s.columns for s in subspaces], ambient)
    total = sum(s.dim for s in subspaces)
    if total == 0 or field.rank(stacked) == total:
        return DirectSumCheck(True)
    null = field.kernel(stacked)
    coeffs = null[:, 0]
    witness = []
    offset = 0
    for s in subspaces:
        part = coeffs[offset:offset + s.dim].reshape(-1, 1)
        witness.append(field.matmul(s.columns, part).reshape(-1))
        offset += s.dim
    return DirectSumCheck(False, witness)


@dataclass
class Quotient:
    """V / S with a projection V -> V/S and a section V/S -> V."""

    dim: int
    projection: Matrix
    section: Matrix


def quotient_with_projection(field: Field, ambient_dim: int, s: Subspace) -> Quotient:
    """Projection with kernel exactly s, and a lift with projection @ section = id.

    The complement is spanned by the standard vectors at the non-pivot
    coordinates of s's echelon basis.
    """
    if s.ambient != ambient_dim:
        raise ValueError(f"subspace lives in dimension {s.ambient}, not {ambient_dim}")
    free = [j for j in range(ambient_dim) if j not in s.pivots]
    select = field.zeros(s.dim, ambient_dim)
    for i, p in enumerate(s.pivots):
        select[i, p] = field.scalar(1)
    killer = field.sub(field.eye(ambient_dim), field.matmul(s.columns, select))
    projection = killer[free, :] if free else field.zeros(0, ambient_dim)
    section = field.zeros(ambient_dim, len(free))
    for j, f in enumerate(free):
        section[f, j] = field.scalar(1)
    return Quotient(len(free), projection, section)

"""Prime-field arithmetic and exact dense linear algebra."""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from polymem.core.config import validate_prime
from polymem.exceptions.errors import DimensionMismatchError


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; elements are plain ints in [0, p)."""

    p: int

    def __post_init__(self):
        validate_prime(self.p)

    def reduce(self, value: int) -> int:
        return int(value) % self.p

    def inverse(self, value: int) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(value, -1, self.p)

    def negate(self, value: int) -> int:
        return (-int(value)) % self.p


@dataclass
class SolveResult:
    """Outcome of M x = b. An infeasible system is a normal result."""

    feasible: bool
    particular: Optional[np.ndarray] = None
    kernel: List[np.ndarray] = field(default_factory=list)


def _row_reduce(entries: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = entries.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        column = a[:, c].copy()
        column[r] = 0
        targets = np.nonzero(column)[0]
        if targets.size:
            # entries stay below p, so the products fit in int64
            a[targets] = (a[targets] - np.outer(column[targets], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def _kernel_from_rref(reduced: np.ndarray, pivots: List[int], cols: int, p: int) -> List[np.ndarray]:
    pivot_set = set(pivots)
    basis = []
    for free in (c for c in range(cols) if c not in pivot_set):
        vector = np.zeros(cols, dtype=np.int64)
        vector[free] = 1
        if pivots:
            vector[pivots] = (-reduced[: len(pivots), free]) % p
        basis.append(vector)
    return basis


class ExactMatrix:
    """Dense matrix over F_p backed by an int64 array of residues."""

    def __init__(self, entries, prime_field: PrimeField, cols: Optional[int] = None):
        array = np.asarray(entries, dtype=np.int64)
        if array.ndim == 1 and array.size == 0:
            array = array.reshape(0, cols or 0)
        if array.ndim != 2:
            raise DimensionMismatchError("matrix entries must be two-dimensional")
        self.field = prime_field
        self.entries = array % prime_field.p

    @classmethod
    def zeros(cls, rows: int, cols: int, prime_field: PrimeField) -> "ExactMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), prime_field)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def take_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.entries[list(indices), :].reshape(len(indices), self.cols), self.field)

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        vector = np.asarray(vector, dtype=np.int64) % self.field.p
        if vector.shape != (self.cols,):
            raise DimensionMismatchError(f"vector of length {vector.shape[0]} for {self.cols} columns")
        # accumulate column by column to keep intermediate sums in range
        result = np.zeros(self.rows, dtype=np.int64)
        for j in np.nonzero(vector)[0]:
            result = (result + self.entries[:, j] * vector[j]) % self.field.p
        return result

    def rref(self) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and pivot columns."""
        return _row_reduce(self.entries, self.field.p)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> List[np.ndarray]:
        reduced, pivots = self.rref()
        return _kernel_from_rref(reduced, pivots, self.cols, self.field.p)

    def solve(self, rhs: Sequence[int]) -> SolveResult:
        """
        Solve M x = rhs.

        Returns:
            A particular solution with free variables set to zero together
            with a kernel basis, or an infeasible result
        """
        rhs = np.asarray(rhs, dtype=np.int64).reshape(-1)
        if rhs.shape[0] != self.rows:
            raise DimensionMismatchError(f"right-hand side of length {rhs.shape[0]} for {self.rows} rows")
        augmented = np.concatenate([self.entries, (rhs % self.field.p).reshape(-1, 1)], axis=1)
        reduced, pivots = _row_reduce(augmented, self.field.p)
        if pivots and pivots[-1] == self.cols:
            return SolveResult(feasible=False)
        particular = np.zeros(self.cols, dtype=np.int64)
        for row, column in enumerate(pivots):
            particular[column] = reduced[row, self.cols]
        kernel = _kernel_from_rref(reduced[:, : self.cols], pivots, self.cols, self.field.p)
        return SolveResult(feasible=True, particular=particular, kernel=kernel)

    def nonzero_rref_rows(self) -> np.ndarray:
        """Canonical basis of the row space."""
        reduced, pivots = self.rref()
        return reduced[: len(pivots)]


def rational_solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Unique solution of a square rational system, or None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        lead = a[c][c]
        a[c] = [x / lead for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                factor = a[r][c]
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return tuple(a[r][n] for r in range(n))


def _rational_rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    cols = len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    return len(_rational_rref(rows)[1])


def primitive(vector: Sequence) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector with the same direction."""
    fractions = [Fraction(x) for x in vector]
    scale = math.lcm(*(f.denominator for f in fractions))
    integers = [int(f * scale) for f in fractions]
    g = math.gcd(*integers)
    return tuple(x // g for x in integers)


def integer_kernel_basis(rows: Sequence[Sequence], dim: int) -> List[Tuple[int, ...]]:
    """Primitive integer vectors spanning the rational null space of the rows."""
    if not rows:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    reduced, pivots = _rational_rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in (c for c in range(dim) if c not in pivot_set):
        vector = [Fraction(0)] * dim
        vector[free] = Fraction(1)
        for row, column in enumerate(pivots):
            vector[column] = -reduced[row][free]
        basis.append(primitive(vector))
    return basis

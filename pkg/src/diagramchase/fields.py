"""Exact scalar arithmetic: prime fields F_p and the rationals.

Matrices elsewhere in the package are numpy arrays whose dtype depends on
the field: int64 with entries reduced into [0, p) for small primes, object
arrays of Python ints for large primes, and object arrays of Fraction for
the rationals.  Every arithmetic result goes through ``Field.reduce`` so
equality of arrays is equality of values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from .errors import DimensionMismatch, FormatError, InputError

# int64 products stay exact as long as dim * (p-1)^2 < 2**63; this bound
# keeps dims up to 4096 safe, far beyond the package's non-goals.
_INT64_SAFE_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of PrimeField and RationalField."""

    dtype: type
    enumerable: bool = False

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=self.dtype)

    def identity(self, n: int) -> np.ndarray:
        return self.reduce(np.eye(n, dtype=np.int64))

    def array(self, entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
        """Build a reduced 2-D array from nested scalars, with explicit shape
        for the empty cases."""
        if rows is not None and (rows == 0 or cols == 0):
            return self.zeros(rows, cols)
        a = np.array([[self.scalar(x) for x in row] for row in entries], dtype=self.dtype)
        if a.ndim != 2:
            raise DimensionMismatch("entries must form a rectangular matrix")
        if rows is not None and a.shape != (rows, cols):
            raise DimensionMismatch(f"expected shape {(rows, cols)}, got {a.shape}")
        return self.reduce(a)

    def vector(self, entries) -> np.ndarray:
        return self.reduce(np.array([self.scalar(x) for x in entries], dtype=self.dtype))

    def scalar(self, x):
        raise NotImplementedError

    def reduce(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)

    def scalar_to_json(self, x):
        raise NotImplementedError

    def elements(self):
        """All field elements, for exhaustive enumeration oracles."""
        raise NotImplementedError

    def iter_vectors(self, dim: int):
        """Yield every vector of F^dim.  Only for enumerable fields."""
        if not self.enumerable:
            raise InputError(f"{self} is not enumerable")
        for combo in product(self.elements(), repeat=dim):
            yield self.vector(combo)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.dtype = np.int64 if p < _INT64_SAFE_PRIME else object
        self.enumerable = True

    def scalar(self, x):
        if isinstance(x, str):
            raise FormatError(f"prime-field entries must be integers, got {x!r}")
        v = int(x) % self.p
        return v if self.dtype is np.int64 else int(v)

    def reduce(self, a):
        r = a % self.p
        if self.dtype is object:
            return r.astype(object)
        return r.astype(np.int64)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def elements(self):
        return range(self.p)

    def scalar_to_json(self, x):
        return int(x)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))


class RationalField(Field):
    dtype = object
    enumerable = False

    def scalar(self, x):
        if isinstance(x, str):
            try:
                return Fraction(x)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad rational {x!r}") from exc
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FormatError(f"bad rational {x!r}")

    def reduce(self, a):
        return a.astype(object)

    def inv(self, x):
        return 1 / Fraction(x)

    def scalar_to_json(self, x):
        f = Fraction(x)
        return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")


QQ = RationalField()
GF2 = PrimeField(2)


def field_to_json(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"prime": field.p}
    return {"rationals": True}


def field_from_json(obj) -> Field:
    if not isinstance(obj, dict):
        raise FormatError(f"bad field spec {obj!r}")
    if "prime" in obj:
        return PrimeField(int(obj["prime"]))
    if obj.get("rationals"):
        return QQ
    raise FormatError(f"bad field spec {obj!r}")

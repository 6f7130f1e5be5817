"""Sign-additive product: a multiplication-free replacement for scalar products.

The scalar operation maps a pair of reals to ``sign(a*b) * (|a| + |b|)``,
i.e. the magnitudes add where an ordinary product would multiply them, and
the three-valued sign of the would-be product is kept.  The complex
extension applies the real operation to the four component pairs the same
way a complex multiplication would.

Costs are counted in the operator's own currency: one real application is
1 sign, 2 absolute values and 1 addition; one complex application is 4 real
applications plus 2 combining additions, i.e. 4 signs, 8 absolute values
and 6 additions.  Counting is opt-in: pass an :class:`OpCounter` and it is
incremented; counters are single-owner and merged by summation.

All functions accept scalars or numpy arrays (broadcasting applies) and
reject NaN/Inf operands, because the sign of a non-finite product is
meaningless and would silently corrupt anything built on top.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ContractError",
    "DomainError",
    "OpCountReport",
    "OpCounter",
    "mf_sign",
    "mf_real",
    "mf_complex",
    "vector_product",
    "scalar_vector",
]


class DomainError(ValueError):
    """An operand is NaN or infinite."""


class ContractError(ValueError):
    """A call violates an interface precondition (shape, size, range)."""


@dataclass(frozen=True)
class OpCountReport:
    """Immutable snapshot of accumulated operation counts."""

    sign_ops: int = 0
    abs_ops: int = 0
    add_ops: int = 0
    complex_mf_ops: int = 0
    complex_mul_ops: int = 0

    def __add__(self, other: "OpCountReport") -> "OpCountReport":
        return OpCountReport(
            self.sign_ops + other.sign_ops,
            self.abs_ops + other.abs_ops,
            self.add_ops + other.add_ops,
            self.complex_mf_ops + other.complex_mf_ops,
            self.complex_mul_ops + other.complex_mul_ops,
        )


@dataclass
class OpCounter:
    """Mutable accumulator for operation counts.

    One counter per worker; concurrent accumulation into a shared counter is
    not supported.  Merge per-worker counters afterwards with :meth:`merge`.
    """

    sign_ops: int = 0
    abs_ops: int = 0
    add_ops: int = 0
    complex_mf_ops: int = 0
    complex_mul_ops: int = 0

    def count_real(self, n: int = 1) -> None:
        self.sign_ops += n
        self.abs_ops += 2 * n
        self.add_ops += n

    def count_complex(self, n: int = 1) -> None:
        self.sign_ops += 4 * n
        self.abs_ops += 8 * n
        self.add_ops += 6 * n
        self.complex_mf_ops += n

    def count_complex_mul(self, n: int = 1) -> None:
        self.complex_mul_ops += n

    def merge(self, other: "OpCounter") -> None:
        self.sign_ops += other.sign_ops
        self.abs_ops += other.abs_ops
        self.add_ops += other.add_ops
        self.complex_mf_ops += other.complex_mf_ops
        self.complex_mul_ops += other.complex_mul_ops

    def report(self) -> OpCountReport:
        return OpCountReport(
            self.sign_ops,
            self.abs_ops,
            self.add_ops,
            self.complex_mf_ops,
            self.complex_mul_ops,
        )


def _require_finite(name: str, *values) -> None:
    for v in values:
        if not np.all(np.isfinite(v)):
            raise DomainError(f"{name}: operands must be finite (no NaN/Inf)")


def _sign_product(a, b):
    # Defined on the operand signs, never on the float product: computing
    # a*b could underflow to 0 or overflow to inf and corrupt the sign.
    return np.sign(a) * np.sign(b)


def _mf_real_raw(a, b):
    return _sign_product(a, b) * (np.abs(a) + np.abs(b))


def _mf_complex_raw(ar, ai, br, bi):
    rr = _mf_real_raw(ar, br) - _mf_real_raw(ai, bi)
    ri = _mf_real_raw(ai, br) + _mf_real_raw(bi, ar)
    return rr, ri


def mf_sign(a, b):
    """Three-valued sign of the product a*b: +1, -1, or 0 if either is zero.

    Returns a Python int for scalar inputs, an integer array otherwise.
    """
    _require_finite("mf_sign", a, b)
    s = _sign_product(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    if s.ndim == 0:
        return int(s)
    return s.astype(int)


def mf_real(a, b, counter: OpCounter | None = None):
    """Sign-additive product of two reals: ``sign(a*b) * (|a| + |b|)``."""
    _require_finite("mf_real", a, b)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = _mf_real_raw(a, b)
    if counter is not None:
        counter.count_real(out.size)
    if out.ndim == 0:
        return float(out)
    return out


def mf_complex(a, b, counter: OpCounter | None = None):
    """Complex sign-additive product.

    Mirrors complex multiplication with every real product replaced:
    ``(ar (*) br - ai (*) bi) + j(ai (*) br + bi (*) ar)`` where ``(*)`` is
    the real sign-additive product.  One call per element costs 4 signs,
    8 absolute values and 6 additions.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _require_finite("mf_complex", a.real, a.imag, b.real, b.imag)
    rr, ri = _mf_complex_raw(a.real, a.imag, b.real, b.imag)
    if counter is not None:
        counter.count_complex(np.broadcast(a, b).size)
    out = rr + 1j * ri
    if out.ndim == 0:
        return complex(out)
    return out


def vector_product(x, y, counter: OpCounter | None = None) -> float:
    """Sum of element-wise sign-additive products of two equal-length vectors.

    For ``x == y`` this is twice the l1 norm of ``x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ContractError(
            f"vector_product: need two 1-d vectors of equal length, "
            f"got shapes {x.shape} and {y.shape}"
        )
    if x.size < 1:
        raise ContractError("vector_product: vectors must have length >= 1")
    _require_finite("vector_product", x, y)
    terms = _mf_real_raw(x, y)
    if counter is not None:
        counter.count_real(x.size)
    return float(np.sum(terms))


def scalar_vector(a, x, counter: OpCounter | None = None) -> np.ndarray:
    """Apply the sign-additive product of a scalar against each element."""
    _require_finite("scalar_vector", a, x)
    x = np.asarray(x, dtype=float)
    out = _mf_real_raw(float(a), x)
    if counter is not None:
        counter.count_real(x.size)
    return out

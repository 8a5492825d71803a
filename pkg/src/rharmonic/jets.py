"""
Truncated multivariate Taylor series ("jets") over complex scalars.

A :class:`Jet` stores the Taylor coefficients ``d^alpha f / alpha!`` of a
function at a fixed base point, for every multi-index ``alpha`` of total
degree at most ``order``.  Coefficients live in a dense 1-D complex array
whose layout is graded by total degree, so truncating to a lower order is a
prefix slice.

Analytic functions of a jet (log, sqrt, powers, exp, reciprocal) use the
principal branch at the constant term and compose the univariate Taylor
series of the function with the nilpotent part of the jet.
"""

from __future__ import annotations

import cmath
import functools
import math
from numbers import Number

import numpy as np

__all__ = [
    "Jet",
    "DomainError",
    "jet_variable",
    "jet_constant",
    "jet_add",
    "jet_mul",
    "jet_scale",
    "jet_recip",
    "jet_log",
    "jet_sqrt",
    "jet_pow",
    "jet_exp",
    "extract_partial",
    "multi_indices",
]


class DomainError(ValueError):
    """A point or jet lies outside the domain of an operation."""


# ----------------------------------------------------------------------
# Index tables
# ----------------------------------------------------------------------

def _compositions(total, parts):
    """All tuples of ``parts`` non-negative ints summing to ``total``,
    in descending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def multi_indices(dim, order):
    """Multi-indices of ``dim`` variables up to ``order``, graded by degree."""
    out = []
    for deg in range(order + 1):
        out.extend(_compositions(deg, dim))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _index_map(dim, order):
    return {alpha: i for i, alpha in enumerate(multi_indices(dim, order))}


def _size(dim, order):
    return math.comb(order + dim, dim)


@functools.lru_cache(maxsize=None)
def _product_table(dim, order):
    """Index pairs (i, j) with |alpha_i| + |alpha_j| <= order, sorted by the
    index k of alpha_i + alpha_j, plus the start of each k-segment."""
    exps = np.array(multi_indices(dim, order), dtype=np.int64).reshape(-1, dim)
    deg = exps.sum(axis=1)
    # graded layout: partners of i are a prefix of the index list
    counts = np.array([_size(dim, order - d) for d in deg], dtype=np.intp)
    ii = np.repeat(np.arange(len(exps), dtype=np.intp), counts)
    jj = np.concatenate([np.arange(c, dtype=np.intp) for c in counts])
    radix = (order + 1) ** np.arange(dim, dtype=np.int64)
    codes = exps @ radix
    sort = np.argsort(codes)
    kk = sort[np.searchsorted(codes[sort], codes[ii] + codes[jj])]
    perm = np.argsort(kk, kind="stable")
    # every k occurs at least once (alpha_k + 0), so segments are non-empty
    starts = np.searchsorted(kk[perm], np.arange(len(exps)))
    return ii[perm], jj[perm], starts


@functools.lru_cache(maxsize=None)
def _derivative_table(dim, order, var):
    """For d/dx_var of an order-``order`` jet: source indices and factors for
    each multi-index of the order-1 result."""
    src_where = _index_map(dim, order)
    src, fac = [], []
    for alpha in multi_indices(dim, order - 1):
        up = list(alpha)
        up[var] += 1
        src.append(src_where[tuple(up)])
        fac.append(up[var])
    return np.asarray(src, dtype=np.intp), np.asarray(fac, dtype=float)


@functools.lru_cache(maxsize=None)
def _factorials(dim, order):
    return np.array([math.prod(math.factorial(e) for e in alpha)
                     for alpha in multi_indices(dim, order)], dtype=float)


def _check_finite(value, what):
    if not cmath.isfinite(value):
        raise ValueError(f"{what} must be finite, got {value!r}")


# ----------------------------------------------------------------------
# Jet
# ----------------------------------------------------------------------

class Jet:
    """
    Truncated Taylor expansion of a complex function of ``dim`` variables.

    Parameters
    ----------
    dim : int
        Number of variables.
    order : int
        Truncation degree.
    coeffs : array_like
        Dense coefficient vector in the layout of ``multi_indices(dim, order)``.

    Jets are immutable; arithmetic returns new jets.  Operands of binary
    operations must share ``dim`` and ``order``; use :meth:`truncate` to
    lower the order explicitly.
    """

    __slots__ = ("dim", "order", "_c")

    def __init__(self, dim, order, coeffs):
        if dim < 1:
            raise ValueError("dim must be positive")
        if order < 0:
            raise ValueError("order must be non-negative")
        c = np.array(coeffs, dtype=complex)
        if c.shape != (_size(dim, order),):
            raise ValueError(
                f"expected {_size(dim, order)} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        self.dim = dim
        self.order = order
        self._c = c

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, value, dim, order):
        value = complex(value)
        _check_finite(value, "constant")
        c = np.zeros(_size(dim, order), dtype=complex)
        c[0] = value
        return cls(dim, order, c)

    @classmethod
    def variable(cls, dim, order, index, base_value):
        if not 0 <= index < dim:
            raise IndexError(f"variable index {index} out of range for dim {dim}")
        base_value = complex(base_value)
        _check_finite(base_value, "base value")
        c = np.zeros(_size(dim, order), dtype=complex)
        c[0] = base_value
        if order >= 1:
            c[1 + index] = 1.0
        return cls(dim, order, c)

    # -- access -------------------------------------------------------
    @property
    def array(self):
        """Read-only view of the dense coefficient vector."""
        return self._c

    @property
    def value(self):
        """Function value at the base point."""
        return complex(self._c[0])

    @property
    def coeffs(self):
        """Mapping multi-index -> Taylor coefficient."""
        return {a: complex(v) for a, v in zip(multi_indices(self.dim, self.order), self._c)}

    def __getitem__(self, alpha):
        alpha = tuple(alpha)
        if len(alpha) != self.dim or sum(alpha) > self.order or min(alpha) < 0:
            raise KeyError(alpha)
        return complex(self._c[_index_map(self.dim, self.order)[alpha]])

    def __repr__(self):
        return f"Jet(dim={self.dim}, order={self.order}, value={self.value:.6g})"

    def max_abs(self):
        return float(np.max(np.abs(self._c)))

    # -- structural ops -----------------------------------------------
    def _like(self, c):
        return Jet(self.dim, self.order, c)

    def _check(self, other):
        if self.dim != other.dim or self.order != other.order:
            raise ValueError(
                f"jet mismatch: (dim={self.dim}, order={self.order}) vs "
                f"(dim={other.dim}, order={other.order})")

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        if order == self.order:
            return self
        return Jet(self.dim, order, self._c[:_size(self.dim, order)])

    def diff(self, var):
        """Partial derivative in variable ``var``; the result has order - 1."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        if not 0 <= var < self.dim:
            raise IndexError(f"variable index {var} out of range")
        src, fac = _derivative_table(self.dim, self.order, var)
        return Jet(self.dim, self.order - 1, self._c[src] * fac)

    def derivatives(self):
        """Array of all partial derivatives at the base point, same layout."""
        return self._c * _factorials(self.dim, self.order)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Jet):
            self._check(other)
            return other
        if isinstance(other, Number):
            return Jet.constant(other, self.dim, self.order)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Number):
            c = self._c.copy()
            c[0] += other
            return self._like(c)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._like(self._c + other._c)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return self._like(self._c * complex(other))
        if not isinstance(other, Jet):
            return NotImplemented
        self._check(other)
        i, j, starts = _product_table(self.dim, self.order)
        return self._like(np.add.reduceat(self._c[i] * other._c[j], starts))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1.0 / complex(other))
        if not isinstance(other, Jet):
            return NotImplemented
        return self * jet_recip(other)

    def __rtruediv__(self, other):
        return jet_recip(self) * other

    def __pow__(self, exponent):
        return jet_pow(self, exponent)

    def allclose(self, other, atol=1e-12, rtol=0.0):
        self._check(other)
        return bool(np.allclose(self._c, other._c, atol=atol, rtol=rtol))


# ----------------------------------------------------------------------
# Functional interface
# ----------------------------------------------------------------------

def jet_variable(dim, order, index, base_value):
    """Jet of the coordinate function ``x_index`` at a point where it equals
    ``base_value``."""
    return Jet.variable(dim, order, index, base_value)


def jet_constant(value, dim, order):
    return Jet.constant(value, dim, order)


def jet_add(a, b):
    return a + b


def jet_mul(a, b):
    return a * b


def jet_scale(a, s):
    return a * complex(s)


def _compose(a, series):
    """Evaluate sum_k series[k] * (a - a0)^k, truncated at ``a.order``.

    Horner form; since a - a0 has no constant term, the partial sum that is
    later multiplied by (a - a0)^j only matters up to order N - j, so the
    inner steps run at low order.
    """
    N = a.order
    nil = a.array.copy()
    nil[0] = 0.0
    acc = np.array([series[N]], dtype=complex)
    for j in range(N - 1, -1, -1):
        m = N - j
        size = _size(a.dim, m)
        padded = np.zeros(size, dtype=complex)
        padded[:len(acc)] = acc
        prod = Jet(a.dim, m, nil[:size]) * Jet(a.dim, m, padded)
        acc = prod.array.copy()
        acc[0] += series[j]
    return a._like(acc)


def _on_branch_cut(z):
    return z.imag == 0.0 and z.real <= 0.0


def jet_recip(a):
    a0 = a.value
    if a0 == 0:
        raise ZeroDivisionError("reciprocal of a jet with zero constant term")
    series = [(-1) ** k / a0 ** (k + 1) for k in range(a.order + 1)]
    return _compose(a, series)


def jet_log(a):
    """Principal-branch logarithm."""
    a0 = a.value
    if _on_branch_cut(a0):
        raise DomainError(f"log: constant term {a0} on the branch cut")
    series = [cmath.log(a0)]
    series += [(-1) ** (k + 1) / (k * a0 ** k) for k in range(1, a.order + 1)]
    return _compose(a, series)


def jet_exp(a):
    e0 = cmath.exp(a.value)
    return _compose(a, [e0 / math.factorial(k) for k in range(a.order + 1)])


def jet_pow(a, exponent):
    """``a ** exponent``.

    Integer exponents are single-valued and only need a nonzero constant
    term (or none at all for non-negative integers); other exponents use
    the principal branch and reject constant terms on the branch cut.
    """
    a0 = a.value
    p = exponent
    is_int = float(p).is_integer() if not isinstance(p, complex) else (
        p.imag == 0 and float(p.real).is_integer())
    if is_int:
        p = int(p.real if isinstance(p, complex) else p)
        if p >= 0:
            out = Jet.constant(1.0, a.dim, a.order)
            base = a
            while p:
                if p & 1:
                    out = out * base
                p >>= 1
                if p:
                    base = base * base
            return out
        if a0 == 0:
            raise ZeroDivisionError("negative power of a jet with zero constant term")
        return jet_pow(jet_recip(a), -p)
    if a0 == 0 or _on_branch_cut(a0):
        raise DomainError(f"pow: constant term {a0} on the branch cut")
    # binom(p, k) * a0^(p - k), with a0^p principal
    lead = cmath.exp(p * cmath.log(a0))
    series = [lead]
    coef = 1.0
    for k in range(1, a.order + 1):
        coef *= (p - k + 1) / k
        series.append(coef * lead / a0 ** k)
    return _compose(a, series)


def jet_sqrt(a):
    return jet_pow(a, 0.5)


def extract_partial(a, alpha):
    """``d^alpha f`` at the base point."""
    alpha = tuple(alpha)
    if len(alpha) != a.dim:
        raise ValueError(f"multi-index {alpha} has wrong length for dim {a.dim}")
    if sum(alpha) > a.order:
        raise ValueError(f"|alpha| = {sum(alpha)} exceeds jet order {a.order}")
    return a[alpha] * math.prod(math.factorial(e) for e in alpha)


def coordinate_jets(point, order):
    """One variable jet per coordinate of ``point``."""
    dim = len(point)
    return [Jet.variable(dim, order, i, v) for i, v in enumerate(point)]


def product(jets, dim, order):
    out = Jet.constant(1.0, dim, order)
    for j in jets:
        out = out * j
    return out


def iter_powers(a, top):
    """``[1, a, a^2, ..., a^top]``."""
    out = [Jet.constant(1.0, a.dim, a.order)]
    for _ in range(top):
        out.append(out[-1] * a)
    return out


"""
Exact algebra on finite sums  sum c[k, m] * t**k * log(t)**m.

The span is closed under d/dt, under the radial hyperbolic operator

    tension_1d(p, n) = t^2 p'' - (n - 2) t p',

and under its right inverse ``integral_operator``.  Coefficients are complex
doubles; "zero" means every coefficient is below ``1e-12`` times the largest
coefficient of the reference polynomial.
"""

from __future__ import annotations

import cmath
from numbers import Number

from .jets import DomainError, Jet, jet_log, jet_pow

__all__ = [
    "LogPolynomial",
    "differentiate",
    "tension_1d",
    "antiderivative",
    "integral_operator",
    "build_pr",
    "evaluate",
]


def _fmt_complex(c):
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:.17g}"
    if c.real == 0:
        return f"{c.imag:.17g}i"
    sign = "+" if c.imag >= 0 else "-"
    return f"({c.real:.17g}{sign}{abs(c.imag):.17g}i)"


class LogPolynomial:
    """Immutable map ``(k, m) -> coefficient`` for ``t**k * log(t)**m``."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for (k, m), c in (terms or {}).items():
            if m < 0:
                raise ValueError(f"log power must be non-negative, got {m}")
            c = complex(c)
            if c != 0:
                key = (int(k), int(m))
                clean[key] = clean.get(key, 0) + c
                if clean[key] == 0:
                    del clean[key]
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, k, m=0, c=1.0):
        return cls({(k, m): c})

    @classmethod
    def zero(cls):
        return cls()

    @property
    def terms(self):
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, k, m=0):
        return self._terms.get((k, m), 0j)

    def max_coeff(self):
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def max_log_power(self):
        return max((m for _, m in self._terms), default=0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Number):
            other = LogPolynomial({(0, 0): other})
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return LogPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LogPolynomial({key: -c for key, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return LogPolynomial({key: c * other for key, c in self._terms.items()})
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        out = {}
        for (k1, m1), c1 in self._terms.items():
            for (k2, m2), c2 in other._terms.items():
                key = (k1 + k2, m1 + m2)
                out[key] = out.get(key, 0) + c1 * c2
        return LogPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Number):
            other = LogPolynomial({(0, 0): other})
        if not isinstance(other, LogPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def is_zero(self, ref=None, tol=1e-12):
        """True if every coefficient is below ``tol`` relative to the largest
        coefficient of ``ref`` (default: absolute ``tol``)."""
        norm = 1.0 if ref is None else max(ref.max_coeff(), 1e-300)
        return all(abs(c) <= tol * norm for c in self._terms.values())

    def isclose(self, other, tol=1e-12):
        ref = max(self.max_coeff(), other.max_coeff(), 1e-300)
        return all(abs(c) <= tol * ref for c in (self - other)._terms.values())

    def chop(self, tol=1e-12):
        """Drop coefficients below ``tol`` relative to the largest one."""
        cut = tol * self.max_coeff()
        return LogPolynomial({key: c for key, c in self._terms.items() if abs(c) > cut})

    # -- rendering ----------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (k, m), c in self._terms.items():
            factors = [_fmt_complex(c)]
            if k:
                factors.append("t" if k == 1 else f"t^{k}")
            if m:
                factors.append("log(t)" if m == 1 else f"log(t)^{m}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"LogPolynomial({self._terms!r})"

    # -- calculus -----------------------------------------------------
    def differentiate(self):
        out = {}
        for (k, m), c in self._terms.items():
            if k:
                out[(k - 1, m)] = out.get((k - 1, m), 0) + k * c
            if m:
                out[(k - 1, m - 1)] = out.get((k - 1, m - 1), 0) + m * c
        return LogPolynomial(out)

    def __call__(self, t):
        return evaluate(self, t)


def differentiate(p):
    return p.differentiate()


def _check_n(n):
    if n < 2:
        raise ValueError(f"dimension n must be >= 2, got {n}")


def tension_1d(p, n):
    """Hyperbolic Laplacian of the radial function t -> p(t) on H^n."""
    _check_n(n)
    d1 = p.differentiate()
    d2 = d1.differentiate()
    return LogPolynomial.monomial(2) * d2 - (n - 2) * (LogPolynomial.monomial(1) * d1)


def _antiderivative_term(k, m):
    """Antiderivative of t^k log(t)^m as a dict."""
    if k == -1:
        return {(0, m + 1): 1.0 / (m + 1)}
    # int t^k L^m = t^(k+1) L^m/(k+1) - m/(k+1) int t^k L^(m-1)
    out = {}
    scale = 1.0
    for j in range(m, -1, -1):
        out[(k + 1, j)] = scale / (k + 1)
        scale *= -j / (k + 1)
    return out


def antiderivative(p):
    """An antiderivative of ``p`` with zero constant of integration."""
    out = {}
    for (k, m), c in p:
        for key, a in _antiderivative_term(k, m).items():
            out[key] = out.get(key, 0) + c * a
    return LogPolynomial(out)


def integral_operator(p, n, alpha=0.0, beta=0.0):
    """``int t^(n-2) (int t^(-n) p dt + alpha) dt + beta``.

    A right inverse of :func:`tension_1d`; ``alpha`` and ``beta`` select the
    kernel component ``beta + alpha t^(n-1)/(n-1)``.
    """
    _check_n(n)
    inner = antiderivative(LogPolynomial.monomial(-n) * p) + alpha
    return antiderivative(LogPolynomial.monomial(n - 2) * inner) + beta


def build_pr(n, r, a, b):
    """The radial factor (a + b t^(n-1)) * log(t)^(r-1).

    ``log(t)^(r-1)`` is the (r-1)-th power of log t.
    """
    _check_n(n)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    a, b = complex(a), complex(b)
    if a == 0 and b == 0:
        raise ValueError("coefficient pair (a, b) must be non-zero")
    return LogPolynomial({(0, r - 1): a, (n - 1, r - 1): b})


def evaluate(p, t):
    """Evaluate at a complex number or a :class:`~rharmonic.jets.Jet`, using
    the principal branch of log."""
    if isinstance(t, Jet):
        return _evaluate_jet(p, t)
    t = complex(t)
    if t.imag == 0 and t.real <= 0:
        raise DomainError(f"t = {t} on the principal branch cut")
    log_t = cmath.log(t)
    total = 0j
    for (k, m), c in p:
        total += c * t ** k * log_t ** m
    return total


def _evaluate_jet(p, t):
    t0 = t.value
    if t0.imag == 0 and t0.real <= 0:
        raise DomainError(f"t = {t0} on the principal branch cut")
    out = Jet.constant(0.0, t.dim, t.order)
    if not p:
        return out
    top_m = p.max_log_power()
    logs = [Jet.constant(1.0, t.dim, t.order)]
    if top_m:
        log_t = jet_log(t)
        for _ in range(top_m):
            logs.append(logs[-1] * log_t)
    powers = {}
    for (k, m), c in p:
        if k not in powers:
            powers[k] = jet_pow(t, k)
        out = out + (powers[k] * logs[m]) * c
    return out

"""Exact truncated power series and the generating functions for Ptolemy diagrams.

All coefficients are Python integers.  Division is only allowed by series
whose constant term is a unit (+1 or -1), so rationals never appear.
"""

from __future__ import annotations

from typing import Sequence, Union


class SeriesError(ArithmeticError):
    pass


class NonUnitDivisor(SeriesError):
    pass


class NonzeroConstantInner(SeriesError):
    pass


class TruncSeries:
    """c_0 + c_1 y + ... + c_N y^N, known exactly up to order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int], order: int | None = None):
        coeffs = [int(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[:order + 1] + [0] * (order + 1 - len(coeffs))
        self.coeffs = coeffs

    @classmethod
    def constant(cls, c: int, order: int) -> "TruncSeries":
        return cls([c], order)

    @classmethod
    def monomial(cls, k: int, order: int, c: int = 1) -> "TruncSeries":
        coeffs = [0] * (order + 1)
        if k <= order:
            coeffs[k] = c
        return cls(coeffs, order)

    @classmethod
    def polynomial(cls, coeffs: Sequence[int], order: int) -> "TruncSeries":
        return cls(list(coeffs)[:order + 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*y^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'} + O(y^{self.order + 1}))"

    def _coerce(self, other: Union["TruncSeries", int]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, int):
            return TruncSeries.constant(other, self.order)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.order, other.order)
        return self.coeffs[:k + 1] == other.coeffs[:k + 1]

    __hash__ = None

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, min(order, self.order))

    def __add__(self, other):
        other = self._coerce(other)
        k = min(self.order, other.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs[:k + 1], other.coeffs)], k)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncSeries([c * other for c in self.coeffs])
        other = self._coerce(other)
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [0] * (k + 1)
        for i in range(k + 1):
            if a[i]:
                ai = a[i]
                for j in range(k + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(out, k)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonUnitDivisor(f"constant term {c0} is not a unit")
        a = self.coeffs
        out = [0] * (self.order + 1)
        out[0] = c0
        for k in range(1, self.order + 1):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out[k] = -s * c0
        return TruncSeries(out)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries([0], 0)
        return TruncSeries([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int = 1) -> "TruncSeries":
        """Multiply by y^k; the known order grows by k."""
        return TruncSeries([0] * k + self.coeffs)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(y)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise NonzeroConstantInner("inner series must have zero constant term")
        k = min(self.order, inner.order)
        inner = inner.truncate(k)
        result = TruncSeries.constant(self.coeffs[k], k)
        for c in reversed(self.coeffs[:k]):
            result = result * inner + c
        return result

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def add(a, b):
    return a + b


def sub(a, b):
    return a - b


def mul(a, b):
    return a * b


def div(a, b):
    return a / b


def derivative(a: TruncSeries) -> TruncSeries:
    return a.derivative()


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    return outer.compose(inner)


def _y(order: int) -> TruncSeries:
    return TruncSeries.monomial(1, order)


def _poly(coeffs: Sequence[int], order: int) -> TruncSeries:
    return TruncSeries.polynomial(coeffs, order)


# -- type A ---------------------------------------------------------------------


def pa_residual(P: TruncSeries) -> TruncSeries:
    """P - y - (P^2 + P^3)/(1 - P); zero exactly when P solves the type A equation."""
    y = _y(P.order)
    return P - y - (P * P + P * P * P) / (1 - P)


def solve_pa(N: int) -> TruncSeries:
    """Generating function of type A Ptolemy diagrams (y^N counts the (N+1)-gon)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    y = _y(N)
    P = y
    while True:
        nxt = y + (P * P + P * P * P) / (1 - P)
        if nxt.coeffs == P.coeffs:
            return P
        P = nxt


# -- central regions ------------------------------------------------------------


def c_series(kind: str, N: int) -> TruncSeries:
    """Central-region generating functions from their closed rational forms."""
    y = _y(N)
    one = TruncSeries.constant(1, N)
    if kind == "I":
        return (one + y) / (one - y)
    if kind == "II":
        num = y * (one + y) * _poly([1, 2, -1], N)
        den = (one - y) ** 2 * _poly([1, -2, -1], N)
        return 2 * (num / den)
    if kind == "III":
        return 2 * y + 4 * (_poly([0, 2, -1], N) / (one - y) ** 2)
    raise ValueError(f"unknown kind {kind!r}")


def c_total(N: int) -> TruncSeries:
    return c_series("I", N) + c_series("II", N) + c_series("III", N)


def c_total_closed(N: int) -> TruncSeries:
    """(1 + 12y - y^2 - 2y^3) / (1 - 2y - y^2)."""
    return _poly([1, 12, -1, -2], N) / _poly([1, -2, -1], N)


# -- type II words --------------------------------------------------------------


def solve_w_system(N: int) -> tuple[TruncSeries, TruncSeries, TruncSeries, TruncSeries]:
    """Solve the word equations for (W_o, W_x, W', W) by fixed-point iteration.

    Every letter has weight y; ``o+`` becomes y/(1-y) and ``o*`` becomes 1/(1-y).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    y = _y(N)
    one = TruncSeries.constant(1, N)
    zero = TruncSeries.constant(0, N)
    Wo = Wx = Wp = zero
    while True:
        Wo_new = y + Wp * y * y + Wo * y
        Wx_new = y + Wp * y * y + Wx * y
        Wp_new = one + (one + Wp * y) * (3 * y) + Wo * (2 * y) + Wx * (2 * y)
        if (Wo_new.coeffs, Wx_new.coeffs, Wp_new.coeffs) == (Wo.coeffs, Wx.coeffs, Wp.coeffs):
            break
        Wo, Wx, Wp = Wo_new, Wx_new, Wp_new
    plus = y / (one - y)
    star = one / (one - y)
    core = y * Wp * y
    W = core * (one + 2 * plus) + 2 * (plus * core * star)
    return Wo, Wx, Wp, W


def w_prime_closed(N: int) -> TruncSeries:
    return _poly([1, 1], N) / _poly([1, -2, -1], N)


def w_closed(N: int) -> TruncSeries:
    one = TruncSeries.constant(1, N)
    y = _y(N)
    num = y * y * (one + y) * _poly([1, 2, -1], N)
    return num / ((one - y) ** 2 * _poly([1, -2, -1], N))


# -- type D ---------------------------------------------------------------------


def p_d_routes(N: int) -> tuple[TruncSeries, TruncSeries]:
    """Both assemblies of the type D series: via C(P_A) and via the simplified fraction."""
    if N < 1:
        raise ValueError("N must be at least 1")
    P = solve_pa(N)
    prefactor = P.derivative().shift(1)
    via_composition = prefactor * c_total(N).compose(P)
    num = 1 + 12 * P - P * P - 2 * P * P * P
    den = 1 - 2 * P - P * P
    simplified = prefactor * (num / den)
    return via_composition, simplified


def p_d(N: int) -> TruncSeries:
    """y + 16y^2 + 82y^3 + ...: number of type D Ptolemy diagrams of the 2n-gon."""
    a, b = p_d_routes(N)
    if a != b:
        raise AssertionError("the two assemblies of P_D disagree")
    return a


CUBIC_VERBATIM = "verbatim"
CUBIC_CORRECTED = "corrected"


def cubic_coefficients(variant: str) -> list[list[int]]:
    """Coefficient polynomials (ascending in y) of P^3, P^2, P, 1 in the cubic relation."""
    if variant == CUBIC_VERBATIM:
        lead = [8, -48, 4 - 47]  # 4y^2 - 47y^2 - 48y + 8, the two y^2 terms merged
    elif variant == CUBIC_CORRECTED:
        lead = [8, -48, -47, 4]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    # -2 (y - 2)(4y^3 - 47y^2 - 48y + 8)
    quad = [-2 * c for c in _poly_mul([-2, 1], [8, -48, -47, 4])]
    lin = [32, -240, -246, 628, -99, 4]
    const = [-2 * c for c in _poly_mul([0, 1], [16, 152, -319, 20])]
    return [lead, quad, lin, const]


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, z in enumerate(b):
            out[i + j] += x * z
    return out


def algebraic_residual(N: int, variant: str = CUBIC_VERBATIM) -> TruncSeries:
    """Substitute P_D into the cubic relation; zero iff that variant holds to order N."""
    P = p_d(N)
    lead, quad, lin, const = (_poly(c, N) for c in cubic_coefficients(variant))
    return lead * P * P * P + quad * P * P + lin * P + const

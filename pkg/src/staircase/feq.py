"""Solvers for the q-difference equations of the staircase polygon classes.

Each symmetry class has a defining equation expressing its half-perimeter and
area generating function through x -> x*q and (x, q) -> (x**2, q**2)
substitutions of itself and of previously solved classes.  Every right-hand
side gains at least two x-orders over its input, so the equations pin down a
unique formal power series with zero constant term.

The solver evaluates that fixed point one x-coefficient at a time: the
right-hand side is built as a small graph of lazy, memoized series nodes
referencing the unknown, and coefficient n of the unknown is filled from
coefficients < n of itself.  This computes exactly the limit of the plain
iteration F <- RHS(F) while touching every coefficient only once.
``evaluate_rhs`` exposes one whole-series application of a right-hand side,
which is what tests use to check productivity of the plain iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .series import XSeries

CLASS_IDS = ("full", "r2", "d1", "d2", "d1d2", "rect", "square")


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


# ---------------------------------------------------------------------------
# lazy series nodes
# ---------------------------------------------------------------------------

class _Node:
    """Lazy power series in x: memoized coefficients, known valuation bound
    and degree lattice stride (nonzero coefficients only at
    val + stride * j)."""

    __slots__ = ("ring", "memo", "val", "stride")

    def __init__(self, ring, val: int, stride: int):
        self.ring = ring
        self.memo: list = []
        self.val = val
        self.stride = max(stride, 1)

    def coeff(self, n: int):
        memo = self.memo
        while len(memo) <= n:
            k = len(memo)
            if k < self.val or (k - self.val) % self.stride:
                memo.append(self.ring.zero)
            else:
                memo.append(self._advance(k))
        return memo[n]

    def _advance(self, n: int):
        raise NotImplementedError


class _Unknown(_Node):
    """The series being solved for; reading an unfilled coefficient means the
    recursion is not productive."""

    def coeff(self, n: int):
        if n >= len(self.memo):
            raise RuntimeError(
                "non-productive recursion: coefficient %d requested before it is known" % n)
        return self.memo[n]

    def fill(self, n: int, value):
        if n != len(self.memo):
            raise RuntimeError("coefficients must be filled in order")
        self.memo.append(value)


class _Const(_Node):
    """A fully known series.  With allow_overrun, coefficients beyond the
    stored order read as zero (used by the whole-series iteration oracle)."""

    __slots__ = ("series", "allow_overrun")

    def __init__(self, series: XSeries, val: int = 0, stride: int = 1,
                 allow_overrun: bool = False):
        super().__init__(series.ring, val, stride)
        self.series = series
        self.allow_overrun = allow_overrun

    def _advance(self, n: int):
        if n > self.series.order:
            if self.allow_overrun:
                return self.ring.zero
            raise RuntimeError(
                "prerequisite series solved to order %d but coefficient %d needed"
                % (self.series.order, n))
        return self.series.coeffs[n]


class _Lin(_Node):
    """poly(x) + sum of +/- child series."""

    __slots__ = ("poly", "terms")

    def __init__(self, ring, poly: dict, terms):
        points = [(d, 0) for d in poly] + [(t.val, t.stride) for t, _ in terms]
        val, stride = _merge_lattices(points)
        super().__init__(ring, val, stride)
        self.poly = poly
        self.terms = tuple(terms)

    def _advance(self, n: int):
        acc = self.poly.get(n, self.ring.zero)
        for node, sign in self.terms:
            v = node.coeff(n)
            if not self.ring.is_zero(v):
                acc = acc + v if sign > 0 else acc - v
        return acc


class _Mul(_Node):
    __slots__ = ("a", "b")

    def __init__(self, a: _Node, b: _Node):
        super().__init__(a.ring, a.val + b.val, math.gcd(a.stride, b.stride))
        self.a = a
        self.b = b

    def _advance(self, n: int):
        ring = self.ring
        a, b = self.a, self.b
        hi_b = n - a.val
        b.coeff(hi_b)
        a.coeff(n - b.val)
        acc = ring.acc_new()
        ring.conv_into(acc, a.memo, b.memo, n, b.val, hi_b, b.stride,
                       a.val, a.stride)
        return ring.acc_close(acc)


class _Recip(_Node):
    """1 / child; the child's constant term must be invertible."""

    __slots__ = ("a", "inv0", "neg_inv0")

    def __init__(self, a: _Node):
        if a.val > 0:
            raise ValueError("series not invertible")
        super().__init__(a.ring, 0, a.stride)
        self.a = a
        self.inv0 = None
        self.neg_inv0 = None

    def _advance(self, n: int):
        ring = self.ring
        if n == 0:
            self.inv0 = ring.invert_unit(self.a.coeff(0))
            self.neg_inv0 = -self.inv0
            return self.inv0
        a = self.a
        a.coeff(n)
        acc = ring.acc_new()
        start = a.stride if a.val == 0 else a.val
        ring.conv_into(acc, self.memo, a.memo, n, start, n, a.stride)
        return self.neg_inv0 * ring.acc_close(acc)


class _SubXQ(_Node):
    """Substitute (x, q) -> (x*q, q): coefficient n picks up q**n."""

    __slots__ = ("a",)

    def __init__(self, a: _Node):
        super().__init__(a.ring, a.val, a.stride)
        self.a = a

    def _advance(self, n: int):
        return self.ring.q_shift(self.a.coeff(n), n)


class _SubX2Q2(_Node):
    """Substitute (x, q) -> (x**2, q**2)."""

    __slots__ = ("a",)

    def __init__(self, a: _Node):
        super().__init__(a.ring, 2 * a.val, 2 * a.stride)
        self.a = a

    def _advance(self, n: int):
        if n % 2:
            return self.ring.zero
        return self.ring.q_square(self.a.coeff(n // 2))


class _MonoMul(_Node):
    """Multiply by the monomial x**x_deg * q**q_deg."""

    __slots__ = ("a", "x_deg", "q_deg")

    def __init__(self, a: _Node, x_deg: int, q_deg: int):
        super().__init__(a.ring, a.val + x_deg, a.stride)
        self.a = a
        self.x_deg = x_deg
        self.q_deg = q_deg

    def _advance(self, n: int):
        return self.ring.q_shift(self.a.coeff(n - self.x_deg), self.q_deg)


class _ShiftDown(_Node):
    """Divide by x**2 * q.  The child must have valuation >= 2 so nothing is
    shifted below degree zero."""

    __slots__ = ("a",)

    def __init__(self, a: _Node):
        if a.val < 2:
            raise ValueError("x-shift below degree zero leaves a residue")
        super().__init__(a.ring, a.val - 2, a.stride)
        self.a = a

    def _advance(self, n: int):
        return self.ring.q_shift(self.a.coeff(n + 2), -1)


def _merge_lattices(points):
    """Combine (degree, stride) supports; stride 0 marks a single degree."""
    if not points:
        return 0, 1
    val = min(v for v, _ in points)
    g = 0
    for v, s in points:
        g = math.gcd(g, s)
        g = math.gcd(g, v - val)
    return val, (g if g else 1)


# ---------------------------------------------------------------------------
# the seven equations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassEquation:
    """One symmetry class: which solved classes its equation references, the
    degree lattice of its series, and the x-adic gain of one right-hand-side
    application (every equation gains two orders)."""

    class_id: str
    deps: tuple
    stride: int
    gain: int
    build: callable


def _q(ring, value=1):
    return ring.q_shift(ring.coerce(value), 1)


def _build_full(u, deps, ring, order):
    denom = _Lin(ring, {0: ring.one, 1: _q(ring, -2)}, [(_SubXQ(u), -1)])
    return _MonoMul(_Recip(denom), 2, 1)


def _build_r2(u, deps, ring, order):
    left = _Lin(ring, {0: ring.one, 1: _q(ring, 2)}, [(_SubXQ(u), 1)])
    doubled = _SubX2Q2(_Const(deps["full"], val=2, stride=1))
    return _ShiftDown(_Mul(left, doubled))


def _build_d1(u, deps, ring, order):
    denom = _Lin(ring, {0: ring.one}, [(_SubXQ(u), -1)])
    return _MonoMul(_Recip(denom), 2, 1)


def _build_d2(u, deps, ring, order):
    left = _Lin(ring, {0: ring.one}, [(_SubXQ(u), 1)])
    doubled = _SubX2Q2(_Const(deps["full"], val=2, stride=1))
    return _ShiftDown(_Mul(left, doubled))


def _build_d1d2(u, deps, ring, order):
    left = _Lin(ring, {0: ring.one}, [(_SubXQ(u), 1)])
    doubled = _SubX2Q2(_Const(deps["d1"], val=2, stride=2))
    return _ShiftDown(_Mul(left, doubled))


def _rect_poly(ring, order):
    # x**2*q*(1 + x*q)/(1 - x*q) expanded: x**2*q + 2*sum_{j>=1} x**(2+j)*q**(1+j)
    poly = {2: _q(ring)}
    for j in range(1, order - 1):
        poly[2 + j] = ring.q_shift(ring.coerce(2), 1 + j)
    return poly


def _build_rect(u, deps, ring, order):
    return _Lin(ring, _rect_poly(ring, order), [(_MonoMul(_SubXQ(u), 2, 1), 1)])


def _build_square(u, deps, ring, order):
    return _Lin(ring, {2: _q(ring)}, [(_MonoMul(_SubXQ(u), 2, 1), 1)])


CLASS_EQUATIONS = {
    "full": ClassEquation("full", (), 1, 2, _build_full),
    "r2": ClassEquation("r2", ("full",), 1, 2, _build_r2),
    "d1": ClassEquation("d1", (), 2, 2, _build_d1),
    "d2": ClassEquation("d2", ("full",), 2, 2, _build_d2),
    "d1d2": ClassEquation("d1d2", ("d1",), 2, 2, _build_d1d2),
    "rect": ClassEquation("rect", (), 1, 2, _build_rect),
    "square": ClassEquation("square", (), 2, 2, _build_square),
}


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

_SOLVE_CACHE: dict = {}


def clear_cache():
    _SOLVE_CACHE.clear()


def _prerequisite_order(order: int) -> int:
    # The (x**2, q**2) substitution needs the prerequisite only to half the
    # order of the product, which runs two degrees past the solved order.
    return (order + 2) // 2


def _verify_solution(class_id: str, series: XSeries):
    if series.ring.key == "exact":
        for m, c in enumerate(series.coeffs):
            for d, v in c.c.items():
                if v <= 0:
                    raise RuntimeError(
                        f"negative count in class {class_id} at x^{m} q^{d}")
                if d < 1 or 4 * d > m * m:
                    raise RuntimeError(
                        f"area {d} out of range for half-perimeter {m} in class {class_id}")
    else:
        for m, c in enumerate(series.coeffs):
            if c.c[0] < 0:
                raise RuntimeError(
                    f"negative count in class {class_id} at x^{m}")


def solve_series(class_id: str, order: int, ring) -> XSeries:
    """The unique power-series solution of the class's equation, to x**order.

    Results are cached per (class, ring); asking for a lower order returns a
    truncated copy of the best solution already known.
    """
    if class_id not in CLASS_EQUATIONS:
        raise ValueError(f"unknown symmetry class: {class_id!r}")
    if order < 2:
        raise ValueError("order must be >= 2")
    key = (class_id, ring.key)
    cached = _SOLVE_CACHE.get(key)
    if cached is not None and cached.order >= order:
        return cached.truncated(order) if cached.order > order else cached

    equation = CLASS_EQUATIONS[class_id]
    deps = {dep: solve_series(dep, _prerequisite_order(order), ring)
            for dep in equation.deps}
    unknown = _Unknown(ring, val=2, stride=equation.stride)
    rhs = equation.build(unknown, deps, ring, order)
    for n in range(order + 1):
        unknown.fill(n, rhs.coeff(n))
    series = XSeries(ring, order, unknown.memo)
    _verify_solution(class_id, series)
    _SOLVE_CACHE[key] = series
    return series


def evaluate_rhs(class_id: str, candidate: XSeries, deps: dict | None = None) -> XSeries:
    """One whole-series application of the class's right-hand side.

    Iterating this from the zero series stabilizes ever longer prefixes; the
    solver's output is the limit.  Coefficients within two orders of the
    truncation are polluted by the cutoff and not meaningful.
    """
    equation = CLASS_EQUATIONS[class_id]
    ring = candidate.ring
    if deps is None:
        deps = {dep: solve_series(dep, _prerequisite_order(candidate.order), ring)
                for dep in equation.deps}
    const = _Const(candidate, val=0, stride=1, allow_overrun=True)
    rhs = equation.build(const, deps, ring, candidate.order)
    return XSeries(ring, candidate.order,
                   [rhs.coeff(n) for n in range(candidate.order + 1)])


def closed_form_coefficient(class_id: str, m: int, n: int | None = None) -> int:
    """Independent closed forms: squares and rectangles exactly, the full
    class at q = 1 (Catalan numbers)."""
    if m < 2:
        raise ValueError("half-perimeter must be >= 2")
    if class_id == "full":
        if n is not None:
            raise ValueError("full-class closed form counts at q = 1 only")
        return catalan(m - 1)
    if n is None:
        raise ValueError("an area is required for this class")
    if class_id == "square":
        return 1 if m % 2 == 0 and (m // 2) ** 2 == n else 0
    if class_id == "rect":
        return sum(1 for a in range(1, m) if a * (m - a) == n)
    raise ValueError(f"no closed form for class {class_id!r}")


def series_rows(class_id: str, series: XSeries):
    """CSV rows for a solved series: (class, m, n, coefficient) in exact mode,
    (class, m, k, jet coefficient) in jet mode."""
    rows = []
    if series.ring.key == "exact":
        for m, c in enumerate(series.coeffs):
            for d in sorted(c.c):
                rows.append((class_id, m, d, str(c.c[d])))
    else:
        for m, c in enumerate(series.coeffs):
            for k, v in enumerate(c.c):
                rows.append((class_id, m, k, str(v)))
    return rows

"""Coefficient rings and truncated power series in x for q-counting.

Two coefficient rings back the same series type:

* ``LaurentQPoly`` -- exact Laurent polynomials in q with integer
  coefficients (sparse: the square class stores just q**(s*s) per entry).
* ``DeltaJet`` -- the expansion of a q-polynomial around q = 1 truncated at
  order K in delta = q - 1.  Slot j holds the j-th q-derivative divided by
  j!, which is exactly the data needed for factorial moments of order <= K.

``XSeries`` is a truncated power series in x whose coefficients live in one
of these rings.  The substitutions x -> x*q and (x, q) -> (x**2, q**2) that
drive all of the functional equations act coefficient-wise: multiply the
x**n coefficient by q**n, respectively move it to x**(2n) with doubled
q-degree.
"""

from __future__ import annotations

import math
from fractions import Fraction

try:  # GMP-backed integers cut the large-order solves by several x
    from gmpy2 import mpz as _fastint
except ImportError:  # pragma: no cover - plain ints are fully supported
    _fastint = int


def _binomial(n: int, j: int) -> int:
    """Generalized binomial C(n, j) for integer n of any sign, j >= 0."""
    if n >= 0:
        return math.comb(n, j)
    return (-1) ** j * math.comb(j - n - 1, j)


# ---------------------------------------------------------------------------
# exact coefficients: Laurent polynomials in q
# ---------------------------------------------------------------------------

class LaurentQPoly:
    """Sparse Laurent polynomial in q with exact integer coefficients.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        else:
            self.c = {d: v for d, v in coeffs.items() if v}

    @classmethod
    def term(cls, coeff: int, degree: int = 0) -> "LaurentQPoly":
        return cls({degree: coeff})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, LaurentQPoly):
            return self.c == other.c
        if isinstance(other, int):
            return self.c == ({} if other == 0 else {0: other})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentQPoly.term(other)
        if not isinstance(other, LaurentQPoly):
            return NotImplemented
        c = dict(self.c)
        for d, v in other.c.items():
            w = c.get(d, 0) + v
            if w:
                c[d] = w
            elif d in c:
                del c[d]
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = {d: -v for d, v in self.c.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentQPoly.term(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentQPoly()
            out = LaurentQPoly.__new__(LaurentQPoly)
            out.c = {d: v * other for d, v in self.c.items()}
            return out
        if not isinstance(other, LaurentQPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for da, va in self.c.items():
            for db, vb in other.c.items():
                d = da + db
                w = c.get(d, 0) + va * vb
                if w:
                    c[d] = w
                elif d in c:
                    del c[d]
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = c
        return out

    __rmul__ = __mul__

    def q_shift(self, n: int) -> "LaurentQPoly":
        """Multiply by q**n."""
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = {d + n: v for d, v in self.c.items()}
        return out

    def q_square(self) -> "LaurentQPoly":
        """Substitute q -> q**2."""
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = {2 * d: v for d, v in self.c.items()}
        return out

    def min_degree(self):
        return min(self.c) if self.c else None

    def max_degree(self):
        return max(self.c) if self.c else None

    def at_q1(self) -> int:
        return sum(self.c.values())

    def collapse(self, jet_order: int) -> "DeltaJet":
        """Expand around q = 1 + delta, truncated at delta**jet_order."""
        slots = [0] * (jet_order + 1)
        for d, v in self.c.items():
            for j in range(jet_order + 1):
                slots[j] += v * _binomial(d, j)
        return DeltaJet(tuple(slots))

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for d in sorted(self.c):
            v = self.c[d]
            if d == 0:
                bits.append(str(v))
            else:
                head = "" if v == 1 else ("-" if v == -1 else f"{v}*")
                bits.append(f"{head}q^{d}" if d != 1 else f"{head}q")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# jet coefficients: truncated expansions in delta = q - 1
# ---------------------------------------------------------------------------

class DeltaJet:
    """Coefficients c_0..c_K of an expansion sum c_j * delta**j + O(delta**(K+1)).

    Entries are exact integers or Fractions; arithmetic truncates at K.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = tuple(coeffs)
        if not self.c:
            raise ValueError("a jet needs at least the constant slot")

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, DeltaJet):
            return len(self.c) == len(other.c) and all(
                x == y for x, y in zip(self.c, other.c))
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _check(self, other: "DeltaJet"):
        if len(self.c) != len(other.c):
            raise ValueError("jet orders differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.c)
            c[0] += other
            return DeltaJet(c)
        if not isinstance(other, DeltaJet):
            return NotImplemented
        self._check(other)
        return DeltaJet(tuple(x + y for x, y in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return DeltaJet(tuple(-x for x in self.c))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.c)
            c[0] -= other
            return DeltaJet(c)
        if not isinstance(other, DeltaJet):
            return NotImplemented
        self._check(other)
        return DeltaJet(tuple(x - y for x, y in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DeltaJet(tuple(x * other for x in self.c))
        if not isinstance(other, DeltaJet):
            return NotImplemented
        self._check(other)
        a, b = self.c, other.c
        K = len(a) - 1
        out = [0] * (K + 1)
        for s in range(K + 1):
            x = a[s]
            if not x:
                continue
            for t in range(K + 1 - s):
                y = b[t]
                if y:
                    out[s + t] += x * y
        return DeltaJet(tuple(out))

    __rmul__ = __mul__

    def recip(self) -> "DeltaJet":
        """Multiplicative inverse; needs a nonzero constant slot."""
        if not self.c[0]:
            raise ValueError("series not invertible")
        K = len(self.c) - 1
        # unit constant terms keep the arithmetic in plain integers
        inv0 = self.c[0] if self.c[0] in (1, -1) else Fraction(1, 1) / self.c[0]
        out = [inv0] + [0] * K
        for j in range(1, K + 1):
            acc = 0
            for i in range(1, j + 1):
                if self.c[i]:
                    acc += self.c[i] * out[j - i]
            out[j] = -inv0 * acc
        return DeltaJet(tuple(out))

    def __repr__(self):
        return "jet" + repr(self.c)


def jet_q_power(n: int, jet_order: int) -> DeltaJet:
    """q**n = (1 + delta)**n truncated at delta**jet_order; n may be negative."""
    return DeltaJet(tuple(_binomial(n, j) for j in range(jet_order + 1)))


# ---------------------------------------------------------------------------
# ring adapters
# ---------------------------------------------------------------------------

class ExactRing:
    """Coefficient ring of exact Laurent q-polynomials."""

    key = "exact"
    jet_order = None

    def __init__(self):
        self.zero = LaurentQPoly()
        self.one = LaurentQPoly.term(1)

    def coerce(self, value):
        if isinstance(value, LaurentQPoly):
            return value
        if isinstance(value, int):
            return LaurentQPoly.term(value) if value else self.zero
        raise TypeError(f"cannot coerce {type(value).__name__} into the exact ring")

    def is_zero(self, c) -> bool:
        return not c.c

    def q_shift(self, c, n: int):
        return c.q_shift(n) if c.c else c

    def q_square(self, c):
        return c.q_square() if c.c else c

    def invert_unit(self, c):
        if len(c.c) == 1:
            (d, v), = c.c.items()
            if v in (1, -1):
                return LaurentQPoly.term(v, -d)
        raise ValueError("series not invertible")

    # low-level accumulation hooks used by convolution loops
    def acc_new(self):
        return {}

    def acc_mul(self, acc: dict, a: LaurentQPoly, b: LaurentQPoly):
        for da, va in a.c.items():
            for db, vb in b.c.items():
                d = da + db
                w = acc.get(d, 0) + va * vb
                if w:
                    acc[d] = w
                elif d in acc:
                    del acc[d]

    def acc_close(self, acc: dict) -> LaurentQPoly:
        out = LaurentQPoly.__new__(LaurentQPoly)
        out.c = acc
        return out

    def conv_into(self, acc, A, B, n, j_lo, j_hi, j_stride, i_val=0, i_stride=1):
        """acc += sum of A[n-j] * B[j] over j in range(j_lo, j_hi+1, j_stride),
        skipping indices off the A lattice."""
        get = acc.get
        for j in range(j_lo, j_hi + 1, j_stride):
            i = n - j
            if i_stride > 1 and (i - i_val) % i_stride:
                continue
            ac = A[i].c
            if not ac:
                continue
            bc = B[j].c
            if not bc:
                continue
            for da, va in ac.items():
                for db, vb in bc.items():
                    d = da + db
                    w = get(d, 0) + va * vb
                    if w:
                        acc[d] = w
                    elif d in acc:
                        del acc[d]


class JetRing:
    """Coefficient ring of delta-jets at a fixed truncation order."""

    def __init__(self, jet_order: int):
        if jet_order < 0:
            raise ValueError("jet order must be >= 0")
        self.jet_order = jet_order
        self.key = ("jet", jet_order)
        zero = _fastint(0)
        self.zero = DeltaJet((zero,) * (jet_order + 1))
        self.one = DeltaJet((_fastint(1),) + (zero,) * jet_order)
        self._powers: dict[int, tuple] = {}
        # q -> q**2 sends delta to 2*delta + delta**2; row i of the matrix
        # expands (2*delta + delta**2)**i truncated at the jet order.
        self._square_rows = []
        for i in range(jet_order + 1):
            row = []
            for j in range(i, min(2 * i, jet_order) + 1):
                row.append((j, _fastint(math.comb(i, j - i) * 2 ** (2 * i - j))))
            self._square_rows.append(tuple(row))

    def coerce(self, value):
        if isinstance(value, DeltaJet):
            if value.order != self.jet_order:
                raise ValueError("jet orders differ")
            return value
        if isinstance(value, int):
            if value == 0:
                return self.zero
            return DeltaJet((_fastint(value),) + self.zero.c[1:])
        if isinstance(value, Fraction):
            if value == 0:
                return self.zero
            return DeltaJet((value,) + self.zero.c[1:])
        raise TypeError(f"cannot coerce {type(value).__name__} into the jet ring")

    def is_zero(self, c) -> bool:
        return not any(c.c)

    def _power(self, n: int) -> tuple:
        p = self._powers.get(n)
        if p is None:
            p = tuple(_fastint(_binomial(n, j)) for j in range(self.jet_order + 1))
            self._powers[n] = p
        return p

    def q_shift(self, c: DeltaJet, n: int) -> DeltaJet:
        if n == 0 or not any(c.c):
            return c
        p = self._power(n)
        K = self.jet_order
        a = c.c
        out = [0] * (K + 1)
        for s in range(K + 1):
            x = a[s]
            if not x:
                continue
            for t in range(K + 1 - s):
                out[s + t] += x * p[t]
        return DeltaJet(tuple(out))

    def q_square(self, c: DeltaJet) -> DeltaJet:
        K = self.jet_order
        out = [0] * (K + 1)
        a = c.c
        for i in range(K + 1):
            x = a[i]
            if not x:
                continue
            for j, w in self._square_rows[i]:
                out[j] += x * w
        return DeltaJet(tuple(out))

    def invert_unit(self, c: DeltaJet) -> DeltaJet:
        return c.recip()

    def acc_new(self):
        return [0] * (self.jet_order + 1)

    def acc_mul(self, acc: list, a: DeltaJet, b: DeltaJet):
        K = self.jet_order
        ac, bc = a.c, b.c
        for s in range(K + 1):
            x = ac[s]
            if not x:
                continue
            for t in range(K + 1 - s):
                y = bc[t]
                if y:
                    acc[s + t] += x * y

    def acc_close(self, acc: list) -> DeltaJet:
        return DeltaJet(tuple(acc))

    def conv_into(self, acc, A, B, n, j_lo, j_hi, j_stride, i_val=0, i_stride=1):
        """acc += sum of A[n-j] * B[j] over j in range(j_lo, j_hi+1, j_stride),
        skipping indices off the A lattice.  Unrolled for small jet orders,
        where the solver spends nearly all of its time."""
        K = self.jet_order
        check = i_stride > 1
        if K == 0:
            acc0 = acc[0]
            for j in range(j_lo, j_hi + 1, j_stride):
                i = n - j
                if check and (i - i_val) % i_stride:
                    continue
                a0 = A[i].c[0]
                if a0:
                    b0 = B[j].c[0]
                    if b0:
                        acc0 += a0 * b0
            acc[0] = acc0
            return
        if K == 1:
            acc0, acc1 = acc
            for j in range(j_lo, j_hi + 1, j_stride):
                i = n - j
                if check and (i - i_val) % i_stride:
                    continue
                a0, a1 = A[i].c
                b0, b1 = B[j].c
                if a0:
                    acc0 += a0 * b0
                    if b1:
                        acc1 += a0 * b1
                if a1 and b0:
                    acc1 += a1 * b0
            acc[0] = acc0
            acc[1] = acc1
            return
        if K == 2:
            acc0, acc1, acc2 = acc
            for j in range(j_lo, j_hi + 1, j_stride):
                i = n - j
                if check and (i - i_val) % i_stride:
                    continue
                a0, a1, a2 = A[i].c
                b0, b1, b2 = B[j].c
                if a0:
                    acc0 += a0 * b0
                    acc1 += a0 * b1
                    acc2 += a0 * b2
                if a1:
                    acc1 += a1 * b0
                    acc2 += a1 * b1
                if a2:
                    acc2 += a2 * b0
            acc[0] = acc0
            acc[1] = acc1
            acc[2] = acc2
            return
        for j in range(j_lo, j_hi + 1, j_stride):
            i = n - j
            if check and (i - i_val) % i_stride:
                continue
            a = A[i]
            if any(a.c):
                b = B[j]
                if any(b.c):
                    self.acc_mul(acc, a, b)


_EXACT_RING = ExactRing()
_JET_RINGS: dict[int, JetRing] = {}


def exact_ring() -> ExactRing:
    return _EXACT_RING


def jet_ring(jet_order: int) -> JetRing:
    ring = _JET_RINGS.get(jet_order)
    if ring is None:
        ring = JetRing(jet_order)
        _JET_RINGS[jet_order] = ring
    return ring


def rational_ring() -> JetRing:
    """The q = 1 specialization: jets of order zero."""
    return jet_ring(0)


# ---------------------------------------------------------------------------
# truncated power series in x
# ---------------------------------------------------------------------------

class XSeries:
    """Power series in x truncated at a fixed order, over a coefficient ring.

    Instances are immutable; solved series are cached and shared freely."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, order: int, coeffs=None):
        if order < 0:
            raise ValueError("order must be >= 0")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "order", order)
        if coeffs is None:
            coeffs = (ring.zero,) * (order + 1)
        else:
            coeffs = tuple(coeffs)
            if len(coeffs) < order + 1:
                coeffs += (ring.zero,) * (order + 1 - len(coeffs))
            coeffs = coeffs[: order + 1]
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("series are immutable")

    @classmethod
    def from_terms(cls, ring, order: int, terms: dict) -> "XSeries":
        """Build from {x_degree: coefficient-like}; ints are coerced."""
        coeffs = [ring.zero] * (order + 1)
        for deg, value in terms.items():
            if 0 <= deg <= order:
                coeffs[deg] = ring.coerce(value)
        return cls(ring, order, coeffs)

    def coeff(self, n: int):
        if not 0 <= n <= self.order:
            raise ValueError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def _match(self, other: "XSeries"):
        if self.ring.key != other.ring.key:
            raise ValueError("series over different coefficient rings")
        return min(self.order, other.order)

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            return NotImplemented
        return (self.ring.key == other.ring.key and self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other):
        n = self._match(other)
        return XSeries(self.ring, n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        n = self._match(other)
        return XSeries(self.ring, n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return XSeries(self.ring, self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        n = self._match(other)
        ring = self.ring
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = ring.acc_new()
            for i in range(k + 1):
                if not ring.is_zero(a[i]) and not ring.is_zero(b[k - i]):
                    ring.acc_mul(acc, a[i], b[k - i])
            out.append(ring.acc_close(acc))
        return XSeries(ring, n, out)

    def recip(self) -> "XSeries":
        """Inverse series; the constant term must be invertible in the ring."""
        ring = self.ring
        inv0 = ring.invert_unit(self.coeffs[0])
        out = [inv0]
        neg_inv0 = -inv0
        for k in range(1, self.order + 1):
            acc = ring.acc_new()
            for i in range(1, k + 1):
                if not ring.is_zero(self.coeffs[i]):
                    ring.acc_mul(acc, self.coeffs[i], out[k - i])
            out.append(neg_inv0 * ring.acc_close(acc))
        return XSeries(ring, self.order, out)

    def compose_xq(self, x_power: int, q_power: int) -> "XSeries":
        """Substitute (x, q) -> (x*q, q) when (1, 1), or (x**2, q**2) when (2, 2)."""
        ring = self.ring
        if (x_power, q_power) == (1, 1):
            return XSeries(ring, self.order,
                           [ring.q_shift(c, n) for n, c in enumerate(self.coeffs)])
        if (x_power, q_power) == (2, 2):
            out = [ring.zero] * (self.order + 1)
            for n in range(self.order // 2 + 1):
                if 2 * n <= self.order:
                    out[2 * n] = ring.q_square(self.coeffs[n])
            return XSeries(ring, self.order, out)
        raise ValueError(f"unsupported substitution (x_power={x_power}, q_power={q_power})")

    def mul_xq(self, x_exp: int, q_exp: int = 0) -> "XSeries":
        """Multiply by x**x_exp * q**q_exp; negative x_exp requires the low
        coefficients being shifted out to vanish."""
        ring = self.ring
        out = [ring.zero] * (self.order + 1)
        if x_exp >= 0:
            for n in range(self.order + 1 - x_exp):
                out[n + x_exp] = ring.q_shift(self.coeffs[n], q_exp)
        else:
            for n in range(-x_exp):
                if not ring.is_zero(self.coeffs[n]):
                    raise ValueError("x-shift below degree zero leaves a residue")
            for n in range(-x_exp, self.order + 1):
                out[n + x_exp] = ring.q_shift(self.coeffs[n], q_exp)
        return XSeries(ring, self.order, out)

    def truncated(self, order: int) -> "XSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return XSeries(self.ring, order, self.coeffs[: order + 1])

    def collapse(self, jet_order: int) -> "XSeries":
        """Exact-ring series -> jet-ring series via q = 1 + delta."""
        if self.ring.key != "exact":
            raise ValueError("collapse applies to exact-ring series")
        ring = jet_ring(jet_order)
        return XSeries(ring, self.order, [c.collapse(jet_order) for c in self.coeffs])

    def values_at_q1(self) -> list:
        """Plain numeric coefficients at q = 1."""
        if self.ring.key == "exact":
            return [c.at_q1() for c in self.coeffs]
        return [c.c[0] for c in self.coeffs]

    def __repr__(self):
        return f"XSeries(ring={self.ring.key}, order={self.order})"


def xs_add(a: XSeries, b: XSeries) -> XSeries:
    return a + b


def xs_mul(a: XSeries, b: XSeries) -> XSeries:
    return a * b


def xs_recip(a: XSeries) -> XSeries:
    return a.recip()


def compose_xq(a: XSeries, x_power: int, q_power: int) -> XSeries:
    return a.compose_xq(x_power, q_power)

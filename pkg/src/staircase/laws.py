"""Area limit laws for the symmetry classes, with exact moments.

Four laws cover all seven classes: the Airy distribution, the Brownian
meander area distribution, the beta(1, 1/2) distribution, and the point mass
at 1.  The Airy and meander moments are driven by quadratic convolution
recursions; the same recursions reappear, rescaled by powers of 2, as the
leading singular coefficients of the factorial-moment generating functions
of the full and the r2-symmetric class.  Keeping both routes separate makes
the rescaling identities a nontrivial consistency check, so this module
never derives one sequence from the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .radicals import RadicalConstant, gamma_half_integer

LAW_KINDS = ("airy", "meander", "beta", "dirac")

# Recursion depth is capped: the rationals grow roughly factorially and
# nothing downstream needs more than a few dozen moments.
MAX_MOMENT_ORDER = 64


def _check_order(k: int):
    if k < 0:
        raise ValueError("moment order must be >= 0")
    if k > MAX_MOMENT_ORDER:
        raise ValueError(f"moment order capped at {MAX_MOMENT_ORDER}")


def airy_exponent(k: int) -> Fraction:
    """Singular exponent 3k/2 - 1/2 attached to the k-th Airy moment."""
    return Fraction(3 * k - 1, 2)


def meander_exponent(k: int) -> Fraction:
    """Singular exponent 3k/2 + 1/2 attached to the k-th meander moment."""
    return Fraction(3 * k + 1, 2)


@lru_cache(maxsize=None)
def airy_coeff(k: int) -> Fraction:
    """Airy moment-recursion numbers: a(0) = -1 and, solving the quadratic
    convolution for the top term,

        a(k) = (3(k-1)/2 - 1/2) a(k-1) + (1/2) sum_{l=1..k-1} a(l) a(k-l).
    """
    _check_order(k)
    if k == 0:
        return Fraction(-1)
    total = airy_exponent(k - 1) * airy_coeff(k - 1)
    total += Fraction(1, 2) * sum(airy_coeff(l) * airy_coeff(k - l)
                                  for l in range(1, k))
    return total


@lru_cache(maxsize=None)
def meander_coeff(k: int) -> Fraction:
    """Meander-area recursion numbers: w(0) = 1 and

        w(k) = (3(k-1)/2 + 1/2) w(k-1) + sum_{l=1..k} a(l) 2**(-l) w(k-l),

    coupled to the Airy numbers a(l)."""
    _check_order(k)
    if k == 0:
        return Fraction(1)
    total = meander_exponent(k - 1) * meander_coeff(k - 1)
    total += sum(airy_coeff(l) * Fraction(1, 2**l) * meander_coeff(k - l)
                 for l in range(1, k + 1))
    return total


@lru_cache(maxsize=None)
def singular_coeff_full(k: int) -> Fraction:
    """Leading coefficient (divided by k!) of the singular expansion of the
    k-th area-derivative generating function of the full class.  Defined by
    f(0) = -1/2 and the quadratic recursion

        (3(k-1)/2 - 1/2) f(k-1) + 4 sum_{l=0..k} f(l) f(k-l) = 0,

    solved for the top term."""
    _check_order(k)
    if k == 0:
        return Fraction(-1, 2)
    total = airy_exponent(k - 1) * singular_coeff_full(k - 1)
    total += 4 * sum(singular_coeff_full(l) * singular_coeff_full(k - l)
                     for l in range(1, k))
    # the l = 0 and l = k terms contribute 8*f(0)*f(k) = -4*f(k)
    return total / 4


@lru_cache(maxsize=None)
def singular_coeff_r2(k: int) -> RadicalConstant:
    """Same leading singular coefficient for the r2-symmetric class.  Defined
    by g(0) = 1/sqrt(2) and the linear recursion

        (3(k-1)/2 + 1/2) g(k-1) + sum_{l=0..k} 2**(5/2 - l/2) f(l) g(k-l) = 0,

    whose values live in the ring of rationals times powers of sqrt(2)."""
    _check_order(k)
    if k == 0:
        return RadicalConstant(Fraction(1), -1, 0)
    total = meander_exponent(k - 1) * singular_coeff_r2(k - 1)
    for l in range(1, k + 1):
        weight = RadicalConstant(singular_coeff_full(l), 5 - l, 0)
        total = total + weight * singular_coeff_r2(k - l)
    # the l = 0 term contributes 2**(5/2) f(0) g(k) = -2**(3/2) g(k)
    result = total * RadicalConstant(Fraction(1), -3, 0)
    if result.b != 0:
        raise RuntimeError("r2 singular coefficients must stay free of pi")
    return result


def _gamma_at(x: Fraction) -> RadicalConstant:
    if x.denominator == 1:
        if x <= 0:
            raise ValueError("Gamma pole at a nonpositive integer")
        return RadicalConstant(Fraction(math.factorial(int(x) - 1)))
    if x.denominator == 2:
        return gamma_half_integer(x.numerator)
    raise ValueError("Gamma needed only at integers and half-integers")


@lru_cache(maxsize=None)
def law_moment(law: str, k: int) -> RadicalConstant:
    """The k-th moment of the named limit law, exactly.

    airy:    E[Y^k] = k! * Gamma(-1/2)/Gamma(3k/2 - 1/2) * a(k)/a(0)
    meander: E[Z^k] = k! * Gamma(1/2)/Gamma(3k/2 + 1/2) * w(k) * 2**(-k/2)
    beta:    4**k * (k!)**2 / (2k+1)!   (area of a random rectangle)
    dirac:   1                          (area of a random square)
    """
    _check_order(k)
    if law == "dirac":
        return RadicalConstant(Fraction(1))
    if law == "beta":
        f = math.factorial(k)
        return RadicalConstant(Fraction(4**k * f * f, math.factorial(2 * k + 1)))
    if law == "airy":
        ratio = _gamma_at(airy_exponent(0)) * _gamma_at(airy_exponent(k)).inverse()
        scale = airy_coeff(k) / airy_coeff(0) * math.factorial(k)
        return ratio * scale
    if law == "meander":
        ratio = _gamma_at(meander_exponent(0)) * _gamma_at(meander_exponent(k)).inverse()
        half_pow = RadicalConstant(Fraction(1), -k, 0)
        return ratio * half_pow * (meander_coeff(k) * math.factorial(k))
    raise ValueError(f"unknown limit law: {law!r}")


@dataclass(frozen=True)
class LimitLaw:
    """How a symmetry class is tied to its limit law: which law, the constant
    multiplying the law variable, and the finite-size normalization
    E[X^k] * scaling_constant**k / scaling_base**(scaling_exponent * k)
    with indices counted in half- or quarter-perimeters."""

    law: str
    variable_scale: Fraction
    scaling_exponent: Fraction
    scaling_base: str  # "m" or "2m"
    scaling_constant: Fraction
    index: str  # "half" or "quarter"


LAW_BINDINGS = {
    "full": LimitLaw("airy", Fraction(1, 4), Fraction(3, 2), "m", Fraction(1), "half"),
    "r2": LimitLaw("meander", Fraction(1, 2), Fraction(3, 2), "m", Fraction(1), "half"),
    "d1": LimitLaw("airy", Fraction(1), Fraction(3, 2), "m", Fraction(1), "quarter"),
    "d2": LimitLaw("meander", Fraction(1, 2), Fraction(3, 2), "2m", Fraction(1), "quarter"),
    "d1d2": LimitLaw("meander", Fraction(2), Fraction(3, 2), "m", Fraction(1), "quarter"),
    "rect": LimitLaw("beta", Fraction(1), Fraction(2), "m", Fraction(4), "half"),
    "square": LimitLaw("dirac", Fraction(1), Fraction(2), "m", Fraction(1), "quarter"),
}


def class_binding(class_id: str) -> LimitLaw:
    try:
        return LAW_BINDINGS[class_id]
    except KeyError:
        raise ValueError(f"unknown symmetry class: {class_id!r}") from None


def class_limit_moment(class_id: str, k: int) -> RadicalConstant:
    """k-th moment of the class's scaled limit variable, e.g. E[(Y/4)^k] for
    the full class."""
    binding = class_binding(class_id)
    return law_moment(binding.law, k) * binding.variable_scale**k


def class_normalizer(class_id: str, m: int, k: int):
    """Exact factor turning E[X_m^k] into the normalized moment, split as
    (rational, root): the factor equals rational * sqrt(root)."""
    if m < 1:
        raise ValueError("perimeter index must be >= 1")
    binding = class_binding(class_id)
    base = m if binding.scaling_base == "m" else 2 * m
    # exponent of the base in half-integer units
    half_units = -int(binding.scaling_exponent * k * 2)
    whole, rem = half_units // 2, half_units % 2
    rational = binding.scaling_constant**k * Fraction(base) ** whole
    return rational, (base if rem else 1)


def law_rows(law: str, k_max: int, digits: int = 20):
    """CSV rows (law, k, exact, decimal, digits)."""
    rows = []
    for k in range(k_max + 1):
        value = law_moment(law, k)
        rows.append((law, k, value.exact_str(), value.approx(digits), digits))
    return rows


def coefficient_rows(k_max: int, digits: int = 20):
    """CSV rows (sequence, k, exact, decimal, digits) for the two law
    recursions and the two singular-coefficient sequences."""
    from .radicals import approx_scaled

    rows = []
    for k in range(k_max + 1):
        for name, value in (("airy_coeff", airy_coeff(k)),
                            ("meander_coeff", meander_coeff(k)),
                            ("singular_full", singular_coeff_full(k))):
            rows.append((name, k, str(value), approx_scaled(value, 0, 0, digits), digits))
        g = singular_coeff_r2(k)
        rows.append(("singular_r2", k, g.exact_str(), g.approx(digits), digits))
    return rows

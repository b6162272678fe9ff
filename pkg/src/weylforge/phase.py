"""Commutative phase-space polynomials and their two bracket structures.

PhasePoly is the plain polynomial algebra in q_i, p_i over exact
coefficients.  On top of it live the Poisson bracket and the deformed
bracket built from the star product, whose bidifferential kernel pairs
momentum-derivatives on the left with position-derivatives on the right
at weight (i*hbar/2)(1-s) and the crossed pairing at -(i*hbar/2)(1+s).

Sign convention, fixed once here and leaned on everywhere else:

    {q, p}_PB = -1

i.e. the Poisson bracket is sum_i d_p f d_q g - d_q f d_p g.  The
deformed bracket then satisfies {q, p} = -i*hbar and contracts onto the
Poisson bracket after dividing by i*hbar and dropping hbar.
"""

import functools
import math
from fractions import Fraction

from .scalars import (
    GaussianRational,
    Scalar,
    ONE,
    I,
    HBAR,
    S,
    NEG_I_OVER_HBAR,
)

__all__ = [
    "PhasePoly",
    "poisson_bracket",
    "star_product",
    "moyal_bracket",
    "winf_pb_structure",
    "winf_mb_closed_form",
    "classical_limit_bracket",
]

# Kernel weights of the star product's two directed pairings.
_STAR_A = I * HBAR * Fraction(1, 2) * (ONE - S)
_STAR_B = -(I * HBAR * Fraction(1, 2)) * (ONE + S)

# hbar(1+s)/2 and hbar(1-s)/2, the only ordering-dependent factors of the
# closed-form deformed structure constants.
_S_PLUS = HBAR * (ONE + S) * Fraction(1, 2)
_S_MINUS = HBAR * (ONE - S) * Fraction(1, 2)


def _accumulate(terms, key, coeff):
    got = terms.get(key)
    total = coeff if got is None else got + coeff
    if total:
        terms[key] = total
    elif got is not None:
        del terms[key]


def _coerce_coeff(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return Scalar.term(0, 0, value)
    return None


class PhasePoly:
    """Sparse polynomial in q_i, p_i with Scalar coefficients.

    terms maps ((n1, m1), ..., (nd, md)) to the coefficient of
    prod_i q_i^n_i p_i^m_i.  Multiplication is the ordinary commutative
    convolution; the zero polynomial stores no terms.
    """

    __slots__ = ("dof_count", "_terms")

    def __init__(self, dof_count, terms=None):
        if not isinstance(dof_count, int) or dof_count < 1:
            raise ValueError("dof_count must be a positive integer")
        clean = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple((int(n), int(m)) for n, m in key)
                if len(key) != dof_count:
                    raise ValueError("exponent vector length != dof_count")
                if any(n < 0 or m < 0 for n, m in key):
                    raise ValueError("negative exponents")
                coeff = _coerce_coeff(coeff)
                if coeff is None:
                    raise TypeError("coefficients must be Scalars")
                if coeff:
                    _accumulate(clean, key, coeff)
        self.dof_count = dof_count
        self._terms = clean

    @classmethod
    def _raw(cls, dof_count, terms):
        out = object.__new__(cls)
        out.dof_count = dof_count
        out._terms = terms
        return out

    @classmethod
    def zero(cls, dof_count=1):
        return cls._raw(dof_count, {})

    @classmethod
    def constant(cls, value, dof_count=1):
        coeff = _coerce_coeff(value)
        if coeff is None:
            raise TypeError("constant must be a Scalar")
        if not coeff:
            return cls.zero(dof_count)
        return cls._raw(dof_count, {((0, 0),) * dof_count: coeff})

    @classmethod
    def one(cls, dof_count=1):
        return cls.constant(ONE, dof_count)

    @classmethod
    def generator(cls, kind, dof_index=0, dof_count=1):
        """q or p for one dof: kind is 'q' or 'p'."""
        if kind not in ("q", "p"):
            raise ValueError(f"kind must be 'q' or 'p', got {kind!r}")
        if not 0 <= dof_index < dof_count:
            raise IndexError("dof_index out of range")
        block = (1, 0) if kind == "q" else (0, 1)
        key = tuple(
            block if i == dof_index else (0, 0) for i in range(dof_count)
        )
        return cls._raw(dof_count, {key: ONE})

    @classmethod
    def monomial(cls, exponents, coeff=ONE):
        key = tuple((int(n), int(m)) for n, m in exponents)
        return cls(len(key), {key: coeff})

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def items(self):
        return self._terms.items()

    def sorted_terms(self):
        return sorted(self._terms.items())

    def _check_dof(self, other):
        if self.dof_count != other.dof_count:
            raise ValueError(
                f"dof_count mismatch: {self.dof_count} vs {other.dof_count}"
            )

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self.dof_count == other.dof_count and self._terms == other._terms

    def __add__(self, other):
        scalar = _coerce_coeff(other)
        if scalar is not None:
            other = PhasePoly.constant(scalar, self.dof_count)
        elif not isinstance(other, PhasePoly):
            return NotImplemented
        self._check_dof(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(merged, key, coeff)
        return PhasePoly._raw(self.dof_count, merged)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PhasePoly):
            return self + (-other)
        scalar = _coerce_coeff(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other):
        scalar = _coerce_coeff(other)
        if scalar is None:
            return NotImplemented
        return (-self) + scalar

    def __neg__(self):
        return PhasePoly._raw(
            self.dof_count, {k: -c for k, c in self._terms.items()}
        )

    def __mul__(self, other):
        scalar = _coerce_coeff(other)
        if scalar is not None:
            if not scalar:
                return PhasePoly.zero(self.dof_count)
            return PhasePoly._raw(
                self.dof_count,
                {k: c * scalar for k, c in self._terms.items()},
            )
        if not isinstance(other, PhasePoly):
            return NotImplemented
        self._check_dof(other)
        out = {}
        for key1, c1 in self._terms.items():
            for key2, c2 in other._terms.items():
                key = tuple(
                    (n1 + n2, m1 + m2)
                    for (n1, m1), (n2, m2) in zip(key1, key2)
                )
                _accumulate(out, key, c1 * c2)
        return PhasePoly._raw(self.dof_count, out)

    def __rmul__(self, other):
        scalar = _coerce_coeff(other)
        if scalar is None:
            return NotImplemented
        return self * scalar

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("powers must be nonnegative integers")
        out = PhasePoly.one(self.dof_count)
        for _ in range(exponent):
            out = out * self
        return out

    def derivative(self, var, dof_index=0):
        """Formal partial derivative in q or p of one dof."""
        if var not in ("q", "p"):
            raise ValueError(f"var must be 'q' or 'p', got {var!r}")
        if not 0 <= dof_index < self.dof_count:
            raise IndexError("dof_index out of range")
        slot = 0 if var == "q" else 1
        out = {}
        for key, coeff in self._terms.items():
            exponent = key[dof_index][slot]
            if exponent == 0:
                continue
            block = list(key[dof_index])
            block[slot] = exponent - 1
            new_key = key[:dof_index] + (tuple(block),) + key[dof_index + 1:]
            _accumulate(out, new_key, coeff * exponent)
        return PhasePoly._raw(self.dof_count, out)

    def map_scalars(self, fn):
        out = {}
        for key, coeff in self._terms.items():
            coeff = fn(coeff)
            if coeff:
                out[key] = coeff
        return PhasePoly._raw(self.dof_count, out)

    def substitute(self, s_value=None, hbar_value=None):
        return self.map_scalars(
            lambda c: c.substitute(s_value=s_value, hbar_value=hbar_value)
        )

    def negate_s(self):
        return self.map_scalars(lambda c: c.negate_s())

    def subs_s(self, value):
        return self.map_scalars(lambda c: c.subs_s(value))

    def limit_hbar_zero(self):
        return self.map_scalars(lambda c: c.limit_hbar_zero())

    def min_hbar_exp(self):
        exps = [c.min_hbar_exp() for c in self._terms.values()]
        return min(exps) if exps else None

    def depends_on_s(self):
        return any(
            j > 0 for c in self._terms.values() for (_k, j), _v in c.items()
        )

    def total_degree(self):
        if not self._terms:
            return None
        return max(sum(n + m for n, m in key) for key in self._terms)

    def __repr__(self):
        if not self._terms:
            return f"PhasePoly.zero({self.dof_count})"
        bits = [f"{key}: {coeff!r}" for key, coeff in self.sorted_terms()]
        return "PhasePoly{" + ", ".join(bits) + "}"


def poisson_bracket(f, g):
    """sum_i d_p f d_q g - d_q f d_p g, so that {q, p} comes out -1."""
    f._check_dof(g)
    out = PhasePoly.zero(f.dof_count)
    for i in range(f.dof_count):
        out = out + f.derivative("p", i) * g.derivative("q", i)
        out = out - f.derivative("q", i) * g.derivative("p", i)
    return out


@functools.cache
def _star_single(n, m, k, l):
    """One-dof star kernel on a monomial pair, as {(a, b): Scalar}.

    Expands the terminating exponential of the bidifferential kernel:
    a counts left-p against right-q pairings (weight _STAR_A), b counts
    left-q against right-p pairings (weight _STAR_B), with falling
    factorials for the repeated derivatives.
    """
    out = {}
    for a in range(min(m, k) + 1):
        for b in range(min(n, l) + 1):
            weight = (
                _STAR_A**a
                * _STAR_B**b
                * Fraction(
                    math.perm(n, b) * math.perm(m, a)
                    * math.perm(k, a) * math.perm(l, b),
                    math.factorial(a) * math.factorial(b),
                )
            )
            key = (n - b + k - a, m - a + l - b)
            _accumulate(out, key, weight)
    return out


def star_product(f, g):
    """Deformed product; associative, with 1 as two-sided identity.

    Multi-dof inputs apply the kernel diagonally per dof (each dof pairs
    only with itself) and the per-dof factors multiply.
    """
    f._check_dof(g)
    out = {}
    for key1, c1 in f._terms.items():
        for key2, c2 in g._terms.items():
            weight = c1 * c2
            partial = {(): ONE}
            for (n, m), (k, l) in zip(key1, key2):
                step = {}
                for pkey, pco in partial.items():
                    for block, fco in _star_single(n, m, k, l).items():
                        step[pkey + (block,)] = pco * fco
                partial = step
            for key, factor in partial.items():
                _accumulate(out, key, weight * factor)
    return PhasePoly._raw(f.dof_count, out)


def moyal_bracket(f, g):
    """Star commutator: star(f, g) - star(g, f).

    Always divisible by hbar; dividing by i*hbar and letting hbar go to
    zero recovers the Poisson bracket (see classical_limit_bracket).
    """
    return star_product(f, g) - star_product(g, f)


def winf_pb_structure(n, m, k, l):
    """Poisson bracket of q^n p^m with q^k p^l in closed form (one dof).

    (mk - nl) q^(n+k-1) p^(m+l-1); the prefactor vanishes whenever an
    exponent would go negative, which the assert pins down.
    """
    coeff = m * k - n * l
    if coeff == 0:
        return PhasePoly.zero(1)
    assert n + k >= 1 and m + l >= 1
    return PhasePoly._raw(
        1, {((n + k - 1, m + l - 1),): Scalar.constant(coeff)}
    )


def winf_mb_closed_form(n, m, k, l):
    """Deformed bracket of q^n p^m with q^k p^l in closed form (one dof).

    Double sum over derivative order j and pairing split r.  The inner
    factor
        f = sminus^r (-splus)^(j-r) - sminus^(j-r) (-splus)^r
    carries all ordering dependence; the combinatorial factor
        a = n! m! k! l! / ((n+r-j)! (m-r)! (k-r)! (l+r-j)!)
    is taken as zero whenever a factorial argument is negative, which is
    what truncates the sums.  The j=0 term cancels identically and the
    j=1 term reproduces i*hbar times the Poisson structure.
    """
    r_max = min(m, k)
    j_max = min(n + r_max, l + r_max)
    out = {}
    for j in range(j_max + 1):
        inner = Scalar._raw({})
        for r in range(r_max + 1):
            choose = math.comb(j, r)
            if choose == 0:
                continue
            if n + r - j < 0 or m - r < 0 or k - r < 0 or l + r - j < 0:
                continue
            a_factor = Fraction(
                math.factorial(n) * math.factorial(m)
                * math.factorial(k) * math.factorial(l),
                math.factorial(n + r - j) * math.factorial(m - r)
                * math.factorial(k - r) * math.factorial(l + r - j),
            )
            f_factor = (
                _S_MINUS**r * (-_S_PLUS) ** (j - r)
                - _S_MINUS ** (j - r) * (-_S_PLUS) ** r
            )
            inner = inner + f_factor * (choose * a_factor)
        if not inner:
            continue
        coeff = I**j * Fraction(1, math.factorial(j)) * inner
        if not coeff:
            continue
        assert n + k - j >= 0 and m + l - j >= 0
        _accumulate(out, ((n + k - j, m + l - j),), coeff)
    return PhasePoly._raw(1, out)


def classical_limit_bracket(f, g):
    """Divide the deformed bracket by i*hbar and drop hbar.

    Equals poisson_bracket(f, g); the division is exact because the
    bracket is divisible by hbar, so no negative power survives.
    """
    scaled = moyal_bracket(f, g) * NEG_I_OVER_HBAR
    return scaled.limit_hbar_zero()

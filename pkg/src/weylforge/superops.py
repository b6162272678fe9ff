"""Superoperators on the ordered-operator algebra.

The primitive is the two-sided multiplication map

    t_super_apply: F -> (1 + sigma*s) A F + (1 - sigma*s) F A

for a generator A and a sign choice sigma.  Position generators enter
with sigma=+1 and momentum generators with sigma=-1 in the normalized
ordering superoperator, whose action on the identity produces the
ordered monomials.  Summing ordering superoperators with the
coefficients of a phase-space polynomial gives its Liouvillian; these
all commute with one another as maps.

On top of that sit two derived structures taking operator arguments:

    diamond(F, G)   commutative product, the image of pointwise
                    multiplication under the ordering map
    pmb(F, G)       Lie bracket, the image of the Poisson bracket,
                    computable in four equivalent ways (variant 1..4)
"""

from fractions import Fraction

from .operators import OpPoly, commutator
from .phase import PhasePoly
from .scalars import ONE, S, I_OVER_HBAR, NEG_I_OVER_HBAR, NegativeHbarPower
from .wwgm import ms, ms_inverse

__all__ = [
    "Liouvillian",
    "t_super_apply",
    "ordering_super_apply",
    "liouvillian_apply",
    "ad_apply",
    "diamond",
    "pmb",
    "pmb_functions",
]

_ONE_PLUS_S = ONE + S
_ONE_MINUS_S = ONE - S


def _generator_of(gen, dof_count):
    """Resolve a generator tag: 'q', 'p', or ('q'|'p', dof_index)."""
    if isinstance(gen, str):
        kind, dof_index = gen, 0
    else:
        kind, dof_index = gen
    return OpPoly.generator(kind, dof_index, dof_count)


def t_super_apply(gen, sigma, F):
    """Two-sided multiplication by a generator with s-dependent weights.

    sigma must be +1 or -1 and flips the sign of s in the weights.
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    A = _generator_of(gen, F.dof_count)
    left = _ONE_PLUS_S if sigma == 1 else _ONE_MINUS_S
    right = _ONE_MINUS_S if sigma == 1 else _ONE_PLUS_S
    return A * F * left + F * A * right


def _exp_vector(value, dof_count):
    if isinstance(value, int):
        if dof_count != 1:
            raise ValueError("per-dof exponent sequence required for dof > 1")
        vec = (value,)
    else:
        vec = tuple(int(v) for v in value)
    if len(vec) != dof_count:
        raise ValueError("exponent vector length != dof_count")
    if any(v < 0 for v in vec):
        raise ValueError("negative exponents")
    return vec


def ordering_super_apply(n, m, F):
    """Normalized repeated two-sided multiplication, all dofs.

    Applies the momentum map m_i times (sigma=-1) and the position map
    n_i times (sigma=+1) for each dof, then scales by 2^-(total).  The
    order of application is irrelevant because the maps commute; acting
    on the identity yields the ordered monomial with these exponents.
    """
    n_vec = _exp_vector(n, F.dof_count)
    m_vec = _exp_vector(m, F.dof_count)
    out = F
    for i in range(F.dof_count):
        for _ in range(m_vec[i]):
            out = t_super_apply(("p", i), -1, out)
        for _ in range(n_vec[i]):
            out = t_super_apply(("q", i), 1, out)
    total = sum(n_vec) + sum(m_vec)
    if total:
        out = out * Fraction(1, 2**total)
    return out


class Liouvillian:
    """The superoperator attached to a phase-space polynomial.

    Acts linearly: each monomial of the source contributes its ordering
    superoperator, weighted by the coefficient.  Liouvillians commute:
    L(f)L(g) = L(g)L(f) on every operand.
    """

    __slots__ = ("source",)

    def __init__(self, source):
        if not isinstance(source, PhasePoly):
            raise TypeError("Liouvillian source must be a PhasePoly")
        self.source = source

    def apply(self, F):
        if self.source.dof_count != F.dof_count:
            raise ValueError(
                f"dof_count mismatch: {self.source.dof_count} vs {F.dof_count}"
            )
        out = OpPoly.zero(F.dof_count)
        for key, coeff in self.source.items():
            n_vec = tuple(n for n, _ in key)
            m_vec = tuple(m for _, m in key)
            out = out + ordering_super_apply(n_vec, m_vec, F) * coeff
        return out

    __call__ = apply

    def __eq__(self, other):
        if not isinstance(other, Liouvillian):
            return NotImplemented
        return self.source == other.source

    def __repr__(self):
        return f"Liouvillian({self.source!r})"


def liouvillian_apply(f, F):
    return Liouvillian(f)(F)


def ad_apply(gen, F):
    """Adjoint action of a generator: commutator(A, F)."""
    return commutator(_generator_of(gen, F.dof_count), F)


def diamond(F, G):
    """Commutative product on operators: apply the Liouvillian of the
    pullback of G to F.  Symmetric in its arguments, and its pullback is
    the pointwise product of the pullbacks.
    """
    F._check_dof(G)
    return liouvillian_apply(ms_inverse(G), F)


def _pmb_impl(F, G, f, g, variant):
    """The four equivalent bracket expressions.

    f and g are the pullbacks of F and G when already known, else None;
    each variant touches only the ones it needs:

        1: -(i/hbar) sum_i [ L(d_qi g)([qhat_i, F]) + L(d_pi g)([phat_i, F]) ]
        2: -(i/hbar) sum_i [ L(d_qi g)([qhat_i, F]) - L(d_qi f)([qhat_i, G]) ]
        3: +(i/hbar) sum_i [ L(d_pi f)([phat_i, G]) - L(d_pi g)([phat_i, F]) ]
        4: +(i/hbar) sum_i [ L(d_qi f)([qhat_i, G]) + L(d_pi f)([phat_i, G]) ]
    """
    if variant not in (1, 2, 3, 4):
        raise ValueError("variant must be 1, 2, 3, or 4")
    F._check_dof(G)
    dof = F.dof_count
    if variant != 4 and g is None:
        g = ms_inverse(G)
    if variant != 1 and f is None:
        f = ms_inverse(F)
    out = OpPoly.zero(dof)
    for i in range(dof):
        if variant == 1:
            out = out + liouvillian_apply(g.derivative("q", i), ad_apply(("q", i), F))
            out = out + liouvillian_apply(g.derivative("p", i), ad_apply(("p", i), F))
        elif variant == 2:
            out = out + liouvillian_apply(g.derivative("q", i), ad_apply(("q", i), F))
            out = out - liouvillian_apply(f.derivative("q", i), ad_apply(("q", i), G))
        elif variant == 3:
            out = out + liouvillian_apply(f.derivative("p", i), ad_apply(("p", i), G))
            out = out - liouvillian_apply(g.derivative("p", i), ad_apply(("p", i), F))
        else:
            out = out + liouvillian_apply(f.derivative("q", i), ad_apply(("q", i), G))
            out = out + liouvillian_apply(f.derivative("p", i), ad_apply(("p", i), G))
    scale = NEG_I_OVER_HBAR if variant in (1, 2) else I_OVER_HBAR
    out = out * scale
    low = out.min_hbar_exp()
    if low is not None and low < 0:
        raise NegativeHbarPower(
            "bracket result kept an inverse power of hbar"
        )
    return out


def pmb(F, G, variant=1):
    """Lie bracket on operators mirroring the Poisson bracket.

    Pullbacks of F and G are computed internally as the chosen variant
    requires.  All four variants agree; the result never carries
    negative powers of hbar (asserted).
    """
    return _pmb_impl(F, G, None, None, variant)


def pmb_functions(f, g, variant=1):
    """Same bracket, entered from the commutative side.

    Takes the phase-space polynomials directly, skipping the inverse
    map; returns the operator-side bracket of ms(f) and ms(g).
    """
    f._check_dof(g)
    return _pmb_impl(ms(f), ms(g), f, g, variant)

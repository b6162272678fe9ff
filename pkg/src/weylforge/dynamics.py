"""Equations of motion and truncated formal flows.

Time evolution lives here in two parallel pictures.  On the commutative
side the generator is the Poisson bracket with the Hamiltonian; on the
operator side it is the bracket of superops.pmb with the Hamiltonian's
operator image in the first slot:

    Fdot = pmb(ms(H), F)

Both flows are represented as truncated Taylor series in the time
parameter (FlowSeries); the ordering map sends one series to the other
coefficient by coefficient.  hamilton_rhs and observable_rhs are the
closed-form right-hand sides for the generators and for observables
depending on position or momentum alone, with the Hamiltonian of
mechanical type (kinetic term plus potential).
"""

import math
from fractions import Fraction

from .operators import OpPoly, commutator
from .phase import PhasePoly, poisson_bracket
from .scalars import I_OVER_HBAR, NEG_I_OVER_HBAR, NegativeHbarPower
from .superops import Liouvillian, ad_apply, liouvillian_apply
from .wwgm import ms

__all__ = [
    "FlowSeries",
    "hamilton_rhs",
    "pmb_flow_series",
    "classical_flow_series",
    "observable_rhs",
]


class FlowSeries:
    """Truncated Taylor series of an evolving observable.

    coefficients[k] is the k-th Taylor coefficient (the 1/k! included),
    either all OpPoly or all PhasePoly; coefficients[0] is the initial
    observable.
    """

    __slots__ = ("order", "coefficients")

    def __init__(self, order, coefficients):
        coefficients = tuple(coefficients)
        if not isinstance(order, int) or order < 0:
            raise ValueError("order must be a nonnegative integer")
        if len(coefficients) != order + 1:
            raise ValueError("need exactly order + 1 coefficients")
        kinds = {type(c) for c in coefficients}
        if not kinds <= {OpPoly} and not kinds <= {PhasePoly}:
            raise TypeError("coefficients must be all OpPoly or all PhasePoly")
        dofs = {c.dof_count for c in coefficients}
        if len(dofs) != 1:
            raise ValueError("coefficients disagree on dof_count")
        self.order = order
        self.coefficients = coefficients

    @property
    def space(self):
        return "operator" if isinstance(self.coefficients[0], OpPoly) else "phase"

    @property
    def dof_count(self):
        return self.coefficients[0].dof_count

    def __eq__(self, other):
        if not isinstance(other, FlowSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.coefficients == other.coefficients
        )

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def map_coefficients(self, fn):
        return FlowSeries(self.order, [fn(c) for c in self.coefficients])

    def __repr__(self):
        return f"FlowSeries(order={self.order}, {list(self.coefficients)!r})"


def _assert_hbar_clean(F):
    low = F.min_hbar_exp()
    if low is not None and low < 0:
        raise NegativeHbarPower("motion equation kept an inverse power of hbar")
    return F


def hamilton_rhs(H, dof_index=0):
    """Right-hand sides of the generator equations of motion.

    Returns (qdot, pdot) for one dof: each is 1/(i*hbar) times the
    commutator of the generator with the operator image of H, reduced
    to normal form with the hbar division done exactly.
    """
    Hop = ms(H)
    qdot = commutator(
        OpPoly.generator("q", dof_index, H.dof_count), Hop
    ) * NEG_I_OVER_HBAR
    pdot = commutator(
        OpPoly.generator("p", dof_index, H.dof_count), Hop
    ) * NEG_I_OVER_HBAR
    return _assert_hbar_clean(qdot), _assert_hbar_clean(pdot)


def _pmb_with_hamiltonian(H):
    """Bracket with ms(H) in the first slot, as a reusable closure.

    The derivative Liouvillians of H are fixed along a flow, so build
    them once.  This is the variant-4 expression of superops.pmb; the
    pullback of the second argument is never needed.
    """
    dof = H.dof_count
    h_q = [Liouvillian(H.derivative("q", i)) for i in range(dof)]
    h_p = [Liouvillian(H.derivative("p", i)) for i in range(dof)]

    def ad_h(F):
        out = OpPoly.zero(dof)
        for i in range(dof):
            out = out + h_q[i](ad_apply(("q", i), F))
            out = out + h_p[i](ad_apply(("p", i), F))
        return _assert_hbar_clean(out * I_OVER_HBAR)

    return ad_h


def pmb_flow_series(F0, H, order):
    """Truncated operator flow generated by bracketing with ms(H).

    coefficient k = (1/k!) (ad_H)^k F0, where ad_H is the pmb bracket
    with the Hamiltonian in the first slot.
    """
    if H.dof_count != F0.dof_count:
        raise ValueError(
            f"dof_count mismatch: {F0.dof_count} vs {H.dof_count}"
        )
    ad_h = _pmb_with_hamiltonian(H)
    coefficients = [F0]
    current = F0
    for k in range(1, order + 1):
        current = ad_h(current)
        coefficients.append(current * Fraction(1, math.factorial(k)))
    return FlowSeries(order, coefficients)


def classical_flow_series(f0, H, order):
    """Truncated phase-space flow: coefficient k = (1/k!) {H, .}_PB^k f0."""
    f0._check_dof(H)
    coefficients = [f0]
    current = f0
    for k in range(1, order + 1):
        current = poisson_bracket(H, current)
        coefficients.append(current * Fraction(1, math.factorial(k)))
    return FlowSeries(order, coefficients)


def _split_mechanical(H):
    """Split H = (sum_i p_i^2)/(2m) + V(q) and return (mass, V).

    Every dof must carry the same kinetic coefficient, a positive plain
    rational; everything else must be free of momenta.
    """
    dof = H.dof_count
    kinetic = {}
    potential_terms = {}
    for key, coeff in H.items():
        hot = [i for i, (n, m) in enumerate(key) if m > 0]
        if not hot:
            potential_terms[key] = coeff
            continue
        if len(hot) == 1:
            i = hot[0]
            if key[i] == (0, 2) and all(
                key[j] == (0, 0) for j in range(dof) if j != i
            ):
                kinetic[i] = coeff
                continue
        raise ValueError("hamiltonian is not of mechanical type")
    if sorted(kinetic) != list(range(dof)):
        raise ValueError("every dof needs a kinetic term")
    values = set(kinetic.values())
    if len(values) > 1:
        raise ValueError("kinetic coefficients differ between dofs")
    terms = values.pop().sorted_terms()
    if len(terms) != 1 or terms[0][0] != (0, 0):
        raise ValueError("kinetic coefficient must be a plain constant")
    gaussian = terms[0][1]
    if gaussian.im != 0 or gaussian.re <= 0:
        raise ValueError("kinetic coefficient must be a positive rational")
    mass = 1 / (2 * gaussian.re)
    return mass, PhasePoly(dof, potential_terms)


def observable_rhs(f, g, H):
    """Closed-form motion equations for f(q) and g(p).

    H must be of mechanical type.  Returns (Fdot, Gdot):

        Fdot = (1/m) sum_i L(d_qi f)(phat_i)
        Gdot = -(i/hbar) sum_i L(d_pi g)([phat_i, ms(V)])

    both equal to the pmb bracket with ms(H) in the first slot.
    """
    f._check_dof(g)
    f._check_dof(H)
    if any(m > 0 for key, _c in f.items() for _n, m in key):
        raise ValueError("f must depend on positions only")
    if any(n > 0 for key, _c in g.items() for n, _m in key):
        raise ValueError("g must depend on momenta only")
    mass, potential = _split_mechanical(H)
    dof = H.dof_count
    V_op = ms(potential)
    f_dot = OpPoly.zero(dof)
    g_dot = OpPoly.zero(dof)
    for i in range(dof):
        p_i = OpPoly.generator("p", i, dof)
        f_dot = f_dot + liouvillian_apply(f.derivative("q", i), p_i)
        g_dot = g_dot + liouvillian_apply(
            g.derivative("p", i), commutator(p_i, V_op)
        )
    f_dot = f_dot * Fraction(1, mass) if mass != 1 else f_dot
    g_dot = g_dot * NEG_I_OVER_HBAR
    return _assert_hbar_clean(f_dot), _assert_hbar_clean(g_dot)

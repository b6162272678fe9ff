"""The Weyl-Wigner correspondence between the two polynomial algebras.

ms sends the commutative monomial q^n p^m to the ordered operator
monomial t_monomial(n, m) and extends linearly; ms_inverse expands an
operator in that basis and reads the exponents back off.  Both are exact
bijections on polynomials, and they exchange the bracket structures of
the two sides:

    ms({f, g}_PB)  is the Poisson-type bracket of ms(f), ms(g)
    ms({f, g}_MB)  = -commutator(ms(f), ms(g))

The second line is the anti-homomorphism checked by antihom_check; the
first is verified where the operator bracket lives (see superops.pmb).
"""

from .operators import OpPoly, commutator, t_monomial, to_t_basis
from .phase import PhasePoly, moyal_bracket
from .scalars import I_OVER_HBAR, NEG_I_OVER_HBAR

__all__ = [
    "ms",
    "ms_inverse",
    "derivative_image",
    "antihom_check",
    "commutator_classical_limit",
]


def ms(f, s_value=None):
    """Map a commutative polynomial to its ordered operator counterpart.

    Coefficients pass through unchanged.  With s_value given, the
    ordering parameter is substituted in the result (equivalently,
    before the map: substitution commutes with it).
    """
    out = OpPoly.zero(f.dof_count)
    for key, coeff in f.items():
        n_vector = tuple(n for n, _ in key)
        m_vector = tuple(m for _, m in key)
        out = out + t_monomial(n_vector, m_vector) * coeff
    if s_value is not None:
        out = out.substitute(s_value=s_value)
    return out


def ms_inverse(F, s_value=None):
    """Inverse map: expand in ordered monomials, return the exponents.

    Exact two-sided inverse of ms on polynomials.
    """
    basis = to_t_basis(F)
    out = PhasePoly(F.dof_count, basis) if basis else PhasePoly.zero(F.dof_count)
    if s_value is not None:
        out = out.substitute(s_value=s_value)
    return out


def derivative_image(f, var, dof_index=0, s_value=None):
    """Image of a partial derivative of f, computed without derivatives.

    Uses the adjoint action of the conjugate generator on ms(f):

        image of d_p f = -(i/hbar) [qhat, ms(f)]
        image of d_q f =  (i/hbar) [phat, ms(f)]

    and equals ms(f.derivative(var, dof_index)) identically.
    """
    if var not in ("q", "p"):
        raise ValueError(f"var must be 'q' or 'p', got {var!r}")
    F = ms(f)
    if var == "p":
        gen = OpPoly.generator("q", dof_index, f.dof_count)
        out = commutator(gen, F) * NEG_I_OVER_HBAR
    else:
        gen = OpPoly.generator("p", dof_index, f.dof_count)
        out = commutator(gen, F) * I_OVER_HBAR
    if s_value is not None:
        out = out.substitute(s_value=s_value)
    return out


def antihom_check(f, g):
    """Check ms({f, g}_MB) = -commutator(ms f, ms g).

    Returns (True, None) on success and (False, (lhs, rhs)) with both
    operator polynomials on failure.
    """
    lhs = ms(moyal_bracket(f, g))
    rhs = -commutator(ms(f), ms(g))
    if lhs == rhs:
        return True, None
    return False, (lhs, rhs)


def commutator_classical_limit(F, G):
    """Pull the commutator back, rescale by -1/(i*hbar), drop hbar.

    The result is the Poisson bracket of the pullbacks of F and G.  The
    rescaled pullback is polynomial in hbar, so the limit is plain
    truncation; a surviving negative power raises NegativeHbarPower.
    """
    F._check_dof(G)
    pulled = ms_inverse(commutator(F, G)) * I_OVER_HBAR
    return pulled.limit_hbar_zero()

"""Acceptance suite: every promised identity at its stated scale.

Each criterion prints one [criterion N] PASS/FAIL line (run pytest with
-rA or -s to see them).  Everything is exact; there are no tolerances
anywhere, so a failure means a genuine identity violation, not noise.
"""

import json
import random
from contextlib import contextmanager
from fractions import Fraction

from weylforge import (
    HBAR,
    I,
    I_OVER_HBAR,
    ONE,
    S,
    FlowSeries,
    GaussianRational,
    OpPoly,
    PhasePoly,
    Scalar,
    classical_flow_series,
    classical_limit_bracket,
    commutator,
    commutator_classical_limit,
    diamond,
    moyal_bracket,
    ms,
    ms_inverse,
    normalize,
    observable_rhs,
    OpWord,
    parse,
    evaluate,
    pmb,
    pmb_flow_series,
    poisson_bracket,
    render,
    star_product,
    t_monomial,
    winf_mb_closed_form,
    winf_pb_structure,
)
from weylforge.cli import run_command
from weylforge.sampling import random_op_poly, random_phase_poly

QH = OpPoly.generator("q")
PH = OpPoly.generator("p")
Q = PhasePoly.generator("q")
P = PhasePoly.generator("p")


@contextmanager
def criterion(num, description):
    try:
        yield
    except BaseException:
        print(f"[criterion {num}] FAIL {description}")
        raise
    else:
        print(f"[criterion {num}] PASS {description}")


def mono(n, m):
    return PhasePoly.monomial([(n, m)])


def test_criterion_01_four_bracket_forms_agree():
    with criterion(1, "all four bracket expressions coincide on 200 pairs"):
        rng = random.Random(1001)
        for trial in range(200):
            dof = 1 if trial < 100 else 2
            F = random_op_poly(rng, dof_count=dof, max_total=4, max_terms=3)
            G = random_op_poly(rng, dof_count=dof, max_total=4, max_terms=3)
            first = pmb(F, G, 1)
            for variant in (2, 3, 4):
                assert pmb(F, G, variant) == first, (trial, variant)


def test_criterion_02_poisson_bracket_homomorphism():
    with criterion(2, "the map sends Poisson brackets to operator brackets"):
        rng = random.Random(1002)
        for trial in range(200):
            f = random_phase_poly(rng, max_total=4, max_terms=3)
            g = random_phase_poly(rng, max_total=4, max_terms=3)
            assert ms(poisson_bracket(f, g)) == pmb(ms(f), ms(g)), trial


def test_criterion_03_structure_constants_on_ordered_basis():
    with criterion(
        3, "bracket of ordered monomials keeps classical structure constants"
    ):
        for n in range(5):
            for m in range(5):
                for k in range(5):
                    for l in range(5):
                        got = pmb(t_monomial(n, m), t_monomial(k, l))
                        weight = m * k - n * l
                        if weight == 0:
                            assert got.is_zero(), (n, m, k, l)
                        else:
                            expected = t_monomial(n + k - 1, m + l - 1) * weight
                            assert got == expected, (n, m, k, l)


def test_criterion_04_closed_form_bracket_constants():
    with criterion(
        4, "closed-form deformed structure constants match the star product"
    ):
        mismatches = []
        for n in range(5):
            for m in range(5):
                for k in range(5):
                    for l in range(5):
                        closed = winf_mb_closed_form(n, m, k, l)
                        direct = moyal_bracket(mono(n, m), mono(k, l))
                        if closed != direct:
                            mismatches.append(
                                f"(n={n}, m={m}, k={k}, l={l}):\n"
                                f"  closed form: {render(closed)}\n"
                                f"  star product: {render(direct)}"
                            )
        assert not mismatches, (
            f"{len(mismatches)} tuples disagree:\n" + "\n".join(mismatches)
        )


def test_criterion_05_classical_limits():
    with criterion(5, "both deformed brackets contract to the Poisson bracket"):
        rng = random.Random(1005)
        for trial in range(100):
            f = random_phase_poly(rng, max_total=4, max_terms=3)
            g = random_phase_poly(rng, max_total=4, max_terms=3)
            assert classical_limit_bracket(f, g) == poisson_bracket(f, g), trial
            F, G = ms(f), ms(g)
            assert commutator_classical_limit(F, G) == poisson_bracket(
                f, g
            ), trial


def test_criterion_06_lie_axioms_for_all_three_brackets():
    with criterion(6, "antisymmetry and Jacobi hold for all three brackets"):
        rng = random.Random(1006)
        for trial in range(100):
            f = random_phase_poly(rng, max_total=3, max_terms=2)
            g = random_phase_poly(rng, max_total=3, max_terms=2)
            h = random_phase_poly(rng, max_total=3, max_terms=2)
            triples = [
                (poisson_bracket, (f, g, h)),
                (moyal_bracket, (f, g, h)),
                (pmb, (ms(f), ms(g), ms(h))),
            ]
            for bracket, (a, b, c) in triples:
                assert bracket(a, b) == -bracket(b, a), trial
                cyc = (
                    bracket(a, bracket(b, c))
                    + bracket(b, bracket(c, a))
                    + bracket(c, bracket(a, b))
                )
                assert cyc.is_zero(), (trial, bracket.__name__)


def test_criterion_07_ordering_core():
    with criterion(7, "ordered-monomial construction identities and adjoints"):
        # position-led and momentum-led expansions agree
        for n in range(6):
            for m in range(6):
                assert t_monomial(n, m, form="q") == t_monomial(
                    n, m, form="p"
                ), (n, m)
        # the ordering extremes are the one-sided products
        plus = GaussianRational(1, 0)
        for n in range(6):
            for m in range(6):
                assert t_monomial(n, m, s_value=plus) == OpPoly.monomial(
                    [(n, m)]
                )
                assert t_monomial(n, m, s_value=-plus) == normalize(
                    OpWord([("p", 0)] * m + [("q", 0)] * n)
                )
        # symmetric point: full average over the three orderings of q p p
        three_way = (
            normalize(OpWord([("q", 0), ("p", 0), ("p", 0)]))
            + normalize(OpWord([("p", 0), ("q", 0), ("p", 0)]))
            + normalize(OpWord([("p", 0), ("p", 0), ("q", 0)]))
        ) * Fraction(1, 3)
        assert t_monomial(1, 2, s_value=GaussianRational(0, 0)) == three_way
        # four-term sandwich recursion raising both exponents
        quarter = Fraction(1, 4)
        for n in range(4):
            for m in range(4):
                t = t_monomial(n, m)
                sandwich = (
                    (QH * PH * t + t * PH * QH) * ((ONE - S * S) * quarter)
                    + QH * t * PH * ((ONE + S) * (ONE + S) * quarter)
                    + PH * t * QH * ((ONE - S) * (ONE - S) * quarter)
                )
                assert sandwich == t_monomial(n + 1, m + 1), (n, m)
        # self-adjoint exactly when the ordering value sits where -conj
        # fixes it; the standard ordering is the canonical failure
        for s0 in (
            GaussianRational(0, 0),
            GaussianRational(0, Fraction(1, 2)),
            GaussianRational(0, -1),
        ):
            for n in range(4):
                for m in range(4):
                    t = t_monomial(n, m, s_value=s0)
                    assert t.dagger() == t, (n, m, s0)
        for n in range(1, 4):
            for m in range(1, 4):
                standard = t_monomial(n, m, s_value=plus)
                anti = t_monomial(n, m, s_value=-plus)
                assert standard.dagger() == anti, (n, m)
                assert standard.dagger() != standard, (n, m)


def test_criterion_08_commutative_operator_product():
    with criterion(8, "the commutative operator product behaves as a product"):
        rng = random.Random(1008)
        for _ in range(50):
            F = random_op_poly(rng, max_total=3, max_terms=2)
            G = random_op_poly(rng, max_total=3, max_terms=2)
            H = random_op_poly(rng, max_total=2, max_terms=2)
            assert diamond(F, G) == diamond(G, F)
            assert diamond(diamond(F, G), H) == diamond(F, diamond(G, H))
        for _ in range(50):
            f = random_phase_poly(rng, max_total=3, max_terms=2)
            g = random_phase_poly(rng, max_total=3, max_terms=2)
            assert diamond(ms(f), ms(g)) == ms(f * g)
        # monomial law: concatenated exponents add
        for n1 in range(4):
            for m1 in range(4):
                for n2 in range(4):
                    for m2 in range(4):
                        got = diamond(
                            t_monomial(n1, m1), t_monomial(n2, m2)
                        )
                        assert got == t_monomial(n1 + n2, m1 + m2), (
                            n1, m1, n2, m2,
                        )


def test_criterion_09_moyal_antihomomorphism():
    with criterion(
        9, "the map sends deformed brackets to negated commutators"
    ):
        rng = random.Random(1009)
        for trial in range(200):
            f = random_phase_poly(rng, max_total=4, max_terms=3)
            g = random_phase_poly(rng, max_total=4, max_terms=3)
            assert ms(moyal_bracket(f, g)) == -commutator(ms(f), ms(g)), trial


def test_criterion_10_dynamics():
    with criterion(
        10, "motion equations, oscillator flow, and energy conservation"
    ):
        half = Scalar.constant(Fraction(1, 2))
        potentials = [
            [(((2, 0),), half)],
            [(((3, 0),), Scalar.constant(Fraction(1, 3)))],
            [(((4, 0),), Scalar.constant(Fraction(1, 4)))],
            [(((1, 0),), Scalar.constant(2))],
            [(((2, 0),), half), (((4, 0),), Scalar.constant(Fraction(1, 12)))],
        ]
        masses = [1, 2, 3, 1, 2]
        for terms, mass in zip(potentials, masses):
            V = PhasePoly(1, dict(terms))
            H = PhasePoly.monomial(
                [(0, 2)], Scalar.constant(Fraction(1, 2 * mass))
            ) + V
            Fdot, Gdot = observable_rhs(Q, P, H)
            assert Fdot == PH * Fraction(1, mass)
            assert Gdot == -ms(V.derivative("q"))
            assert not Fdot.depends_on_s()
            assert not Gdot.depends_on_s()
        # oscillator flow matches the image of the classical flow
        oscillator = (Q * Q + P * P) * half
        for f0 in (Q, P, Q * P):
            op_series = pmb_flow_series(ms(f0), oscillator, 6)
            classical = classical_flow_series(f0, oscillator, 6)
            assert op_series == FlowSeries(
                6, [ms(c) for c in classical]
            ), render(f0)
        # bracketing the energy with itself produces nothing
        quartic = PhasePoly.monomial(
            [(0, 2)], half
        ) + PhasePoly.monomial([(4, 0)], Scalar.constant(Fraction(1, 4)))
        for H in (oscillator, quartic):
            series = pmb_flow_series(ms(H), H, 6)
            assert series[0] == ms(H)
            assert all(series[k].is_zero() for k in range(1, 7))
            classical = classical_flow_series(H, H, 6)
            assert all(classical[k].is_zero() for k in range(1, 7))


FAMILIES = [
    # name, membership predicate, finite window to test over
    ("momentum-powers", lambda n, m: n == 0, [(0, m) for m in range(5)]),
    ("position-powers", lambda n, m: m == 0, [(n, 0) for n in range(5)]),
    ("balanced", lambda n, m: n == m, [(n, n) for n in range(5)]),
    ("affine", lambda n, m: n + m <= 1, [(0, 0), (1, 0), (0, 1)]),
    ("quadratic", lambda n, m: n + m == 2, [(2, 0), (1, 1), (0, 2)]),
    (
        "inhomogeneous-quadratic",
        lambda n, m: n + m <= 2,
        [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
    ),
    ("momentum-degree-one", lambda n, m: m == 1, [(n, 1) for n in range(5)]),
    ("position-degree-one", lambda n, m: n == 1, [(1, m) for m in range(5)]),
]

DEVIATING_PAIR = frozenset({(2, 0), (0, 2)})


def test_criterion_11_distinguished_families():
    with criterion(
        11, "the eight distinguished families close and match commutators"
    ):
        zero_s = GaussianRational(0, 0)
        for name, member, window in FAMILIES:
            for a in window:
                for b in window:
                    bracket = pmb(t_monomial(*a), t_monomial(*b))
                    weight = a[1] * b[0] - a[0] * b[1]
                    # closure: the bracket stays inside the family
                    if weight == 0:
                        assert bracket.is_zero(), (name, a, b)
                    else:
                        target = (a[0] + b[0] - 1, a[1] + b[1] - 1)
                        assert member(*target), (name, a, b)
                        assert bracket == t_monomial(*target) * weight
                    # exactness against the rescaled commutator: exact at
                    # the symmetric point for every family, and exact at
                    # formal ordering except on one quadratic pair whose
                    # residual is pinned instead of ignored
                    residual = bracket - commutator(
                        t_monomial(*a), t_monomial(*b)
                    ) * I_OVER_HBAR
                    assert residual.subs_s(
                        Scalar.constant(zero_s)
                    ).is_zero(), (name, a, b)
                    if {a, b} == DEVIATING_PAIR:
                        expected = OpPoly.identity() * Scalar.term(
                            1, 1, GaussianRational(0, -2)
                        )
                        if a == (0, 2):
                            expected = -expected
                        assert residual == expected, (name, a, b)
                    else:
                        assert residual.is_zero(), (name, a, b)


def test_criterion_12_cli_determinism(monkeypatch):
    with criterion(
        12, "the check subcommand is byte-deterministic and text round-trips"
    ):
        monkeypatch.delenv("WEYLFORGE_SEED", raising=False)
        argv = ["check", "--suite", "all", "--seed", "42", "--format", "json"]
        code_one, out_one = run_command(argv)
        code_two, out_two = run_command(argv)
        assert code_one == 0 and code_two == 0
        assert out_one == out_two
        assert json.loads(out_one)["failed"] == 0
        # 1000 generated expressions survive render -> parse -> evaluate
        rng = random.Random(1012)
        for trial in range(1000):
            dof = 1 if trial % 2 else 2
            if trial % 4 < 2:
                value = random_phase_poly(rng, dof_count=dof, max_total=4)
                blank = lambda s: PhasePoly.zero(dof) + s
            else:
                value = random_op_poly(rng, dof_count=dof, max_total=4)
                blank = lambda s: OpPoly.identity(dof) * s
            kind, back = evaluate(parse(render(value)), dof)
            if kind == "scalar":
                back = blank(back)
            assert back == value, trial

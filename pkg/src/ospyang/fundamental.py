"""Invariant operators on V (x) V, the Brauer-algebra representation, and the
fundamental R-matrix with its exact Yang-Baxter and unitarity checks.

The two basic invariants are the graded permutation P (ordinary permutation
times the sign operator) and the rank-one contraction K built from the
supermetric.  Together with the identity they represent the Brauer algebra
with loop parameter omega = epsilon*(N-M); the fundamental R-matrix is the
quadratic pencil R(u) = u(u+beta)1 - eps(u+beta)P + uK, beta = 1 - omega/2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .reports import Timer, VerificationReport, report_zero
from .scalars import ONE, Scalar, U, V
from .spaces import GradedSpace
from .tensors import (
    GradedOperator,
    compose,
    embed,
    metric_bra,
    metric_ket,
    outer,
    sign_operator,
)


def build_P(space: GradedSpace, one=ONE) -> GradedOperator:
    """Graded permutation: P^{a1a2}_{b1b2} = (-1)^{[a1][a2]} d^{a1}_{b2} d^{a2}_{b1}."""
    entries = {}
    for a1, a2 in itertools.product(range(space.dim), repeat=2):
        entries[((a1, a2), (a2, a1))] = one * space.sign(a1, a2)
    return GradedOperator(space, 2, entries)


def build_K(space: GradedSpace, one=ONE) -> GradedOperator:
    """Metric contraction: K^{a1a2}_{b1b2} = eps^{a1a2} eps_{b1b2}."""
    entries = {}
    for a1, a2, up in space.inverse_pairs():
        for b1, b2, dn in space.pairs():
            entries[((a1, a2), (b1, b2))] = one * (up * dn)
    return GradedOperator(space, 2, entries)


def build_K_twisted(space: GradedSpace, one=ONE) -> GradedOperator:
    """(-)^{12} K (-)^{12}, with components eps^{a2a1} eps_{b2b1}."""
    s = sign_operator(space, 2, 1, 2, one=one)
    return s * build_K(space, one=one) * s


@dataclass
class BrauerRep:
    """Generators s_i = eps*P_{i,i+1}, e_i = K_{i,i+1} on V^{otimes n}."""
    space: GradedSpace
    n: int
    s: list
    e: list


def brauer_generators(space: GradedSpace, n: int) -> BrauerRep:
    if n < 2:
        raise ValueError("need n >= 2 tensor factors")
    P = build_P(space)
    K = build_K(space)
    s = [embed(P, [i, i + 1], n).scale(Scalar.const(space.epsilon))
         for i in range(1, n)]
    e = [embed(K, [i, i + 1], n) for i in range(1, n)]
    return BrauerRep(space, n, s, e)


def verify_brauer_relations(space: GradedSpace, n: int,
                            case_id: str | None = None) -> list:
    """All defining relations of the Brauer algebra, exactly."""
    case = case_id or space.describe()
    rep = brauer_generators(space, n)
    s, e = rep.s, rep.e
    one = GradedOperator.identity(space, n)
    omega = Scalar.const(space.omega)
    reports = []

    def check(name, lhs, rhs):
        with Timer() as t:
            residual = lhs - rhs
        reports.append(report_zero(case, name, residual, millis=t.millis))

    for i in range(n - 1):
        check("brauer-s%d-squared" % (i + 1), s[i] * s[i], one)
        check("brauer-e%d-squared" % (i + 1), e[i] * e[i], e[i].scale(omega))
        check("brauer-s%d-e%d" % (i + 1, i + 1), s[i] * e[i], e[i])
        check("brauer-e%d-s%d" % (i + 1, i + 1), e[i] * s[i], e[i])
    for i in range(n - 1):
        for j in range(n - 1):
            if abs(i - j) > 1:
                check("brauer-far-ss-%d%d" % (i + 1, j + 1), s[i] * s[j], s[j] * s[i])
                check("brauer-far-ee-%d%d" % (i + 1, j + 1), e[i] * e[j], e[j] * e[i])
                check("brauer-far-se-%d%d" % (i + 1, j + 1), s[i] * e[j], e[j] * s[i])
    for i in range(n - 2):
        check("brauer-braid-%d" % (i + 1),
              s[i] * s[i + 1] * s[i], s[i + 1] * s[i] * s[i + 1])
        check("brauer-e-sandwich-%d" % (i + 1), e[i] * e[i + 1] * e[i], e[i])
        check("brauer-e-sandwich-up-%d" % (i + 1), e[i + 1] * e[i] * e[i + 1], e[i + 1])
        check("brauer-mixed-see-%d" % (i + 1), s[i] * e[i + 1] * e[i], s[i + 1] * e[i])
        check("brauer-mixed-ees-%d" % (i + 1), e[i + 1] * e[i] * s[i + 1], e[i + 1] * s[i])
    return reports


# -- R-matrices ---------------------------------------------------------------

FORMS = ("standard", "braid", "twisted")


@dataclass
class RMatrix:
    space: GradedSpace
    form: str
    operator: GradedOperator


def build_R(space: GradedSpace, form: str = "standard",
            beta_shift: Scalar | None = None) -> RMatrix:
    """The fundamental R-matrix in one of three forms.

    standard: R(u)  = u(u+beta)1 - eps(u+beta)P + uK
    braid:    Rc(u) = u(u+beta)P - eps(u+beta)1 + eps*u*K
    twisted:  (-)^{12} R(u) (-)^{12}

    beta_shift perturbs beta (used by negative controls only).
    """
    if form not in FORMS:
        raise ValueError("unknown R-matrix form %r" % form)
    eps = Scalar.const(space.epsilon)
    beta = Scalar.const(space.beta)
    if beta_shift is not None:
        beta = beta + beta_shift
    one = GradedOperator.identity(space, 2)
    P = build_P(space)
    K = build_K(space)
    if form == "braid":
        op = P.scale(U * (U + beta)) - one.scale(eps * (U + beta)) + K.scale(eps * U)
    else:
        op = one.scale(U * (U + beta)) - P.scale(eps * (U + beta)) + K.scale(U)
        if form == "twisted":
            s = sign_operator(space, 2, 1, 2)
            op = s * op * s
    return RMatrix(space, form, op)


def r_at(space: GradedSpace, spectral: Scalar, form: str = "standard",
         beta_shift: Scalar | None = None) -> GradedOperator:
    """R-matrix with the spectral variable substituted by an arbitrary Scalar."""
    R = build_R(space, form, beta_shift=beta_shift)
    return R.operator.map_values(lambda s: s.substitute(u=spectral))


def verify_braid_ybe(space: GradedSpace, case_id: str | None = None,
                     beta_shift: Scalar | None = None) -> VerificationReport:
    """Rc_12(u-v) Rc_23(u) Rc_12(v) = Rc_23(v) Rc_12(u) Rc_23(u-v)."""
    case = case_id or space.describe()
    with Timer() as t:
        def rc(slots, spectral):
            return embed(r_at(space, spectral, "braid", beta_shift), slots, 3)
        lhs = compose([rc([1, 2], U - V), rc([2, 3], U), rc([1, 2], V)])
        rhs = compose([rc([2, 3], V), rc([1, 2], U), rc([2, 3], U - V)])
        residual = lhs - rhs
    return report_zero(case, "braid-yang-baxter", residual, millis=t.millis)


def verify_graded_ybe(space: GradedSpace, case_id: str | None = None,
                      form: str = "standard", include_signs: bool = True,
                      beta_shift: Scalar | None = None) -> VerificationReport:
    """R12(u-v)(-)^{12}R13(u)(-)^{12}R23(v) = R23(v)(-)^{12}R13(u)(-)^{12}R12(u-v)."""
    case = case_id or space.describe()
    with Timer() as t:
        def r(slots, spectral):
            return embed(r_at(space, spectral, form, beta_shift), slots, 3)
        s12 = sign_operator(space, 3, 1, 2)
        if not include_signs:
            s12 = GradedOperator.identity(space, 3)
        lhs = compose([r([1, 2], U - V), s12, r([1, 3], U), s12, r([2, 3], V)])
        rhs = compose([r([2, 3], V), s12, r([1, 3], U), s12, r([1, 2], U - V)])
        residual = lhs - rhs
    name = "graded-yang-baxter" if form == "standard" else "graded-yang-baxter-" + form
    return report_zero(case, name, residual, millis=t.millis)


def verify_unitarity(space: GradedSpace, case_id: str | None = None) -> VerificationReport:
    """Rc(u) Rc(-u) = (u^2 - 1)(u^2 - beta^2) 1."""
    case = case_id or space.describe()
    with Timer() as t:
        beta = Scalar.const(space.beta)
        lhs = r_at(space, U, "braid") * r_at(space, -U, "braid")
        rhs = GradedOperator.identity(space, 2).scale(
            (U * U - ONE) * (U * U - beta * beta))
        residual = lhs - rhs
    return report_zero(case, "unitarity", residual, millis=t.millis)


def verify_pk_identities(space: GradedSpace, case_id: str | None = None) -> list:
    """The whole P/K identity catalogue on V^{otimes 3}."""
    case = case_id or space.describe()
    eps = Scalar.const(space.epsilon)
    omega = Scalar.const(space.omega)
    P = build_P(space)
    K = build_K(space)
    P12, P23, P31 = (embed(P, s, 3) for s in ([1, 2], [2, 3], [3, 1]))
    K12, K23, K31 = (embed(K, s, 3) for s in ([1, 2], [2, 3], [3, 1]))
    s12 = sign_operator(space, 3, 1, 2)
    s23 = sign_operator(space, 3, 2, 3)
    one3 = GradedOperator.identity(space, 3)
    from .tensors import parity_operator
    p1 = parity_operator(space, 3, 1)
    p2 = parity_operator(space, 3, 2)
    P32 = embed(P, [3, 2], 3)
    K21 = embed(K, [2, 1], 3)
    K32 = embed(K, [3, 2], 3)

    checks = [
        ("pk-p-symmetric", P12, embed(P, [2, 1], 3)),
        ("pk-k-twist-symmetric", K12, s12 * K21 * s12),
        ("pk-parity-left-k", p1 * K12, p2 * K12),
        ("pk-parity-right-k", K12 * p1, K12 * p2),
        ("pk-p-squared", P12 * P12, one3),
        ("pk-k-squared", K12 * K12, K12.scale(omega)),
        ("pk-kp", K12 * P12, K12.scale(eps)),
        ("pk-pk", P12 * K12, K12.scale(eps)),
        ("pk-parity-slides-p", p1 * P12, P12 * p2),
        ("pk-pp-braid-shift", P12 * P23, s12 * s23 * P31 * P12),
        ("pk-pp-braid-shift2", P12 * P23, P23 * embed(P, [1, 3], 3) * s12 * s23),
        ("pk-p-k-thread", P12 * embed(K, [1, 3], 3), s12 * K23 * s12 * P12),
        ("pk-p-k-thread2", P12 * s12 * embed(K, [1, 3], 3) * s12, K23 * P12),
        ("pk-kk-thread", K12 * P31 * one3.scale(eps), K12 * s12 * K32 * s12),
        ("pk-kk-thread2", P31.scale(eps) * K12, s12 * K32 * s12 * K12),
        ("pk-kk-to-p", K12 * K31, (K12 * s12 * P32 * s12).scale(eps)),
        ("pk-kk-to-p2", K31 * K12, (s12 * P32 * s12 * K12).scale(eps)),
        ("pk-ppp-braid", P12 * P23 * P12, P23 * P12 * P23),
        ("pk-kkk-12", K12 * K23 * K12, K12),
        ("pk-kkk-23", K23 * K12 * K23, K23),
        ("pk-pkk", P12 * K23 * K12, P23 * K12),
        ("pk-kkp", K12 * K23 * P12, K12 * P23),
        ("pk-pkk2", P23 * K12 * K23, P12 * K23),
        ("pk-kkp2", K23 * K12 * P23, K23 * P12),
        ("pk-kpk-12", K12 * P23 * K12, K12.scale(eps)),
        ("pk-kpk-23", K23 * P12 * K23, K23.scale(eps)),
        ("pk-pkp", P12 * K23 * P12, P23 * K12 * P23),
        ("pk-ppk", P12 * P23 * K12, K23 * P12 * P23),
        ("pk-kpp", K12 * P23 * P12, P23 * P12 * K23),
    ]
    reports = []
    for name, lhs, rhs in checks:
        with Timer() as t:
            residual = lhs - rhs
        reports.append(report_zero(case, name, residual, millis=t.millis))
    return reports


def verify_k_factorization(space: GradedSpace, case_id: str | None = None) -> VerificationReport:
    """K is the rank-one product of the metric ket and bra."""
    case = case_id or space.describe()
    with Timer() as t:
        residual = build_K(space) - outer(metric_ket(space), metric_bra(space))
    return report_zero(case, "k-rank-one-factorization", residual, millis=t.millis)


def fundamental_L(space: GradedSpace) -> GradedOperator:
    """u^2 L(u) = (-)^{12} R(u) (-)^{12}, the fundamental L-operator with
    cleared denominators.  The u^1 coefficient is beta*1 + (Kt - eps*P)."""
    return build_R(space, "twisted").operator


def l_coefficient(space: GradedSpace, power: int) -> GradedOperator:
    """Coefficient of u^power in the cleared fundamental L (power in 0..2)."""
    op = fundamental_L(space)
    entries = {}
    for key, val in op.entries.items():
        if not val.is_polynomial():
            raise ValueError("fundamental L should be polynomial")
        coeff = Scalar.const(0)
        for exp, c in val.num.terms.items():
            if exp[0] == power and exp[1] == 0 and exp[2] == 0:
                coeff = coeff + Scalar.const(c)
        entries[key] = coeff
    return GradedOperator(space, 2, entries)


def verify_fundamental_rll(space: GradedSpace, case_id: str | None = None) -> VerificationReport:
    """RLL with both L's realized as twisted R's in slots 13 and 23 (arity 3),
    with u^2 v^2 cleared."""
    case = case_id or space.describe()
    with Timer() as t:
        R12 = embed(r_at(space, U - V), [1, 2], 3)
        s12 = sign_operator(space, 3, 1, 2)
        s13 = sign_operator(space, 3, 1, 3)
        s23 = sign_operator(space, 3, 2, 3)
        L1 = s13 * embed(r_at(space, U), [1, 3], 3) * s13
        L2 = s23 * embed(r_at(space, V), [2, 3], 3) * s23
        lhs = compose([R12, L1, s12, L2, s12])
        rhs = compose([s12, L2, s12, L1, R12])
        residual = lhs - rhs
    return report_zero(case, "fundamental-rll", residual, millis=t.millis)


def verify_r_invariance(space: GradedSpace, case_id: str | None = None) -> list:
    """Infinitesimal invariance [Rc(u), A_1 + (-)^{12} A_2 (-)^{12}] = 0 for
    every basis element A of the fundamental osp algebra."""
    from .osp import basis_tilde_G
    case = case_id or space.describe()
    basis = basis_tilde_G(space)
    Rc = build_R(space, "braid").operator
    s12 = sign_operator(space, 2, 1, 2)
    reports = []
    for (f, g), mat in sorted(basis.entries.items()):
        with Timer() as t:
            A = mat.as_operator(space)
            A1 = embed(A, [1], 2)
            A2 = s12 * embed(A, [2], 2) * s12
            residual = Rc * (A1 + A2) - (A1 + A2) * Rc
        reports.append(report_zero(
            case, "r-invariance-%d-%d" % (f + 1, g + 1), residual, millis=t.millis))
    return reports


def verify_r_degree_bound(space: GradedSpace, case_id: str | None = None) -> VerificationReport:
    case = case_id or space.describe()
    op = build_R(space).operator
    bad = [k for k, v in op.entries.items() if v.degree("u") > 2]
    from .reports import report_bool
    return report_bool(case, "r-degree-bound", not bad,
                       note="degree > 2 at %s" % (bad[:1],))

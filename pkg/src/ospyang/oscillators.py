"""Normal-ordered associative algebras: super-oscillators and graded
Heisenberg pairs, with supersymmetrized products, generator matrices, finite
modules, and the formal trace functional used by fusion.

The rewriting engine works over a fixed generator list with a total order.
Out-of-order adjacent products reduce by
    p * q = coeff(p,q) * q * p + scal(p,q) * 1,
and generators whose square reduces to a scalar carry exponent <= 1 in the
basis.  Monomials are stored as sorted tuples of generator ids; elements are
sparse maps monomial -> Scalar.  For the oscillator family with two copies the
cross-copy rule is the graded tensor exchange (pure sign, no scalar term).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import ONE, Scalar, ZERO
from .spaces import GradedSpace

_SCALAR_CACHE: dict = {}


def _scal(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    v = _SCALAR_CACHE.get(x)
    if v is None:
        v = Scalar.const(x)
        _SCALAR_CACHE[x] = v
    return v


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """Relation tables for one generator family over a graded space.

    oscillator: generators c^a per copy, c^a c^b + eps(-1)^{[a][b]} c^b c^a = inv^{ab}
    heisenberg: x_a then d_a, with d_a x_b - eps(-1)^{[a][b]} x_b d_a = eps_{ab}
    """
    space: GradedSpace
    family: str
    copies: int = 1

    def __post_init__(self):
        if self.family not in ("oscillator", "heisenberg"):
            raise AlgebraError("unknown algebra family %r" % self.family)
        if self.family == "heisenberg" and self.copies != 1:
            raise AlgebraError("heisenberg pairs come in a single copy")
        if self.copies not in (1, 2):
            raise AlgebraError("only one or two copies supported")
        # Weyl-sector generators square freely; the defining relation then
        # forces a zero diagonal metric entry there.
        for a in range(self.space.dim):
            if self.family == "oscillator" and not self._clifford(a) \
                    and self.space.inverse[a][a] != 0:
                raise AlgebraError(
                    "inconsistent algebra: free generator %d has inv[%d][%d] != 0"
                    % (a, a, a))

    def _clifford(self, a: int) -> bool:
        return self.space.epsilon * (-1 if self.space.grading[a] else 1) == 1

    # -- generator ids ----------------------------------------------------
    @property
    def ngens(self) -> int:
        d = self.space.dim
        return d * self.copies if self.family == "oscillator" else 2 * d

    def gid(self, a: int, copy: int = 0, kind: str = "c") -> int:
        d = self.space.dim
        if self.family == "oscillator":
            if kind != "c":
                raise AlgebraError("oscillator family has only c generators")
            return copy * d + a
        if kind == "x":
            return a
        if kind == "d":
            return d + a
        raise AlgebraError("heisenberg generators are x or d")

    def gen_info(self, g: int):
        """(kind, index, copy) of a generator id."""
        d = self.space.dim
        if self.family == "oscillator":
            return ("c", g % d, g // d)
        return ("x", g, 0) if g < d else ("d", g - d, 0)

    def grading_of(self, g: int) -> int:
        _, a, _ = self.gen_info(g)
        return self.space.grading[a]

    def monomial_grading(self, m: tuple) -> int:
        return sum(self.grading_of(g) for g in m) % 2

    # -- rewriting tables ---------------------------------------------------
    def swap(self, p: int, q: int):
        """p*q = coeff * q*p + scal for p > q in the generator order."""
        space = self.space
        eps = space.epsilon
        kp, a, cp = self.gen_info(p)
        kq, b, cq = self.gen_info(q)
        sgn = space.sign(a, b)
        if self.family == "oscillator":
            if cp != cq:
                return sgn, Fraction(0)   # graded tensor exchange between copies
            return -eps * sgn, space.inverse[a][b]
        if kp == "d" and kq == "x":
            return eps * sgn, space.metric[a][b]
        return eps * sgn, Fraction(0)      # x-x or d-d exchange

    def square(self, g: int):
        """Scalar s with g*g = s, or None if the exponent is free."""
        space = self.space
        _, a, _ = self.gen_info(g)
        s = space.epsilon * (-1 if space.grading[a] else 1)
        if self.family == "oscillator":
            return Fraction(space.inverse[a][a], 2) if s == 1 else None
        return Fraction(0) if s == -1 else None

    def gen_name(self, g: int) -> str:
        kind, a, copy = self.gen_info(g)
        if self.family == "oscillator":
            tag = "c%d" % (copy + 1) if self.copies > 1 else "c"
            return "%s[%d]" % (tag, a + 1)
        return "%s[%d]" % (kind, a + 1)


def _push(spec: AlgebraSpec, m: tuple, q: int, c: Scalar, out: list):
    """Append generator q to sorted monomial m, normal-ordering the result.
    Appends (monomial, coeff) pairs to out."""
    i = len(m)
    coeff = c
    while i > 0 and m[i - 1] > q:
        p = m[i - 1]
        cf, sc = spec.swap(p, q)
        if sc:
            out.append((m[:i - 1] + m[i:], coeff * _scal(sc)))
        coeff = coeff * cf if cf != 1 else coeff
        i -= 1
    head = m[:i]
    tail = m[i:]
    # insert q after head
    if head and head[-1] == q:
        s = spec.square(q)
        if s is not None:
            if s:
                out.append((head[:-1] + tail, coeff * _scal(s)))
            return
    out.append((head + (q,) + tail, coeff))


class NOElement:
    """Finite linear combination of normal-ordered monomials."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    self.terms[m] = c

    @staticmethod
    def unit(spec: AlgebraSpec, coeff=ONE) -> "NOElement":
        c = coeff if isinstance(coeff, Scalar) else _scal(coeff)
        return NOElement(spec, {(): c})

    @staticmethod
    def generator(spec: AlgebraSpec, g: int, coeff=ONE) -> "NOElement":
        c = coeff if isinstance(coeff, Scalar) else _scal(coeff)
        return NOElement(spec, {(g,): c})

    def zero_like(self) -> "NOElement":
        return NOElement(self.spec)

    def one_like(self) -> "NOElement":
        return NOElement.unit(self.spec)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, NOElement):
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(m, None)
            else:
                terms[m] = s
        return NOElement(self.spec, terms)

    def __sub__(self, other):
        if not isinstance(other, NOElement):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "NOElement":
        c = c if isinstance(c, Scalar) else _scal(c)
        if c.is_zero():
            return NOElement(self.spec)
        return NOElement(self.spec, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, NOElement):
            return NotImplemented
        spec = self.spec
        acc: dict = {}
        for m2, c2 in other.terms.items():
            # fold the generators of m2 into every monomial of self
            cur = [(m1, c1 * c2) for m1, c1 in self.terms.items()]
            for q in m2:
                nxt: list = []
                for m, c in cur:
                    _push(spec, m, q, c, nxt)
                cur = nxt
            for m, c in cur:
                s = acc.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    acc.pop(m, None)
                else:
                    acc[m] = s
        return NOElement(spec, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, NOElement) and (self - other).is_zero()

    def grading(self) -> int:
        """Grading of a homogeneous element; raises if mixed."""
        gr = None
        for m in self.terms:
            g = self.spec.monomial_grading(m)
            if gr is None:
                gr = g
            elif gr != g:
                raise AlgebraError("element is not homogeneous")
        return 0 if gr is None else gr

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def truncate_degree(self, dmax: int) -> "NOElement":
        return NOElement(self.spec, {m: c for m, c in self.terms.items() if len(m) <= dmax})

    def first_nonzero(self):
        if not self.terms:
            return None
        m = min(self.terms)
        return m, self.terms[m]

    def map_coeffs(self, f) -> "NOElement":
        return NOElement(self.spec, {m: f(c) for m, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda t: (len(t), t)):
            c = self.terms[m]
            factors = []
            for g, grp in itertools.groupby(m):
                e = len(list(grp))
                name = self.spec.gen_name(g)
                factors.append(name if e == 1 else "%s^%d" % (name, e))
            body = "*".join(factors) if factors else "1"
            cs = str(c)
            if cs == "1":
                parts.append(body)
            elif body == "1":
                parts.append("(%s)" % cs if " " in cs else cs)
            else:
                parts.append(("(%s)" % cs if (" " in cs or "/" in cs) else cs) + " * " + body)
        return " + ".join(parts)

    def __repr__(self):
        return "NOElement(%d terms)" % len(self.terms)


# -- oscillator builders -------------------------------------------------------

def c_up(spec: AlgebraSpec, a: int, copy: int = 0) -> NOElement:
    return NOElement.generator(spec, spec.gid(a, copy))


def c_down(spec: AlgebraSpec, a: int, copy: int = 0) -> NOElement:
    """c_a = eps_{ab} c^b."""
    space = spec.space
    terms = {}
    for b in range(space.dim):
        if space.metric[a][b]:
            terms[(spec.gid(b, copy),)] = _scal(space.metric[a][b])
    return NOElement(spec, terms)


def x_var(spec: AlgebraSpec, a: int) -> NOElement:
    return NOElement.generator(spec, spec.gid(a, kind="x"))


def d_var(spec: AlgebraSpec, a: int) -> NOElement:
    return NOElement.generator(spec, spec.gid(a, kind="d"))


def d_up(spec: AlgebraSpec, a: int) -> NOElement:
    """d^a = inv^{ab} d_b (index raised with the inverse metric)."""
    space = spec.space
    terms = {}
    for b in range(space.dim):
        if space.inverse[a][b]:
            terms[(spec.gid(b, kind="d"),)] = _scal(space.inverse[a][b])
    return NOElement(spec, terms)


def x_up(spec: AlgebraSpec, a: int) -> NOElement:
    space = spec.space
    terms = {}
    for b in range(space.dim):
        if space.inverse[a][b]:
            terms[(spec.gid(b, kind="x"),)] = _scal(space.inverse[a][b])
    return NOElement(spec, terms)


# -- supersymmetrization ----------------------------------------------------------

def _perm_sign(space: GradedSpace, epsilon: int, indices, perm, tilde: bool) -> int:
    """Sign of one symmetrizer term: product over inversions of
    (-eps)(-1)^{[g_i][g_j]} (hat) or (-eps)(-1)^{[g_i][g_j]+[g_i]+[g_j]} (tilde)."""
    g = space.grading
    sign = 1
    k = len(perm)
    for i in range(k):
        for j in range(i + 1, k):
            if perm[i] > perm[j]:
                gi = g[indices[perm[i]]]
                gj = g[indices[perm[j]]]
                sign *= -epsilon
                expo = gi * gj + ((gi + gj) if tilde else 0)
                if expo % 2:
                    sign *= -1
    return sign


@lru_cache(maxsize=None)
def _supersym_cached(spec: AlgebraSpec, indices: tuple, copy: int, flavor: str):
    space = spec.space
    tilde = flavor == "tilde"
    k = len(indices)
    acc = NOElement(spec)
    norm = _scal(Fraction(1, _factorial(k)))
    for perm in itertools.permutations(range(k)):
        sign = _perm_sign(space, space.epsilon, indices, perm, tilde)
        word = NOElement.unit(spec, norm if sign == 1 else norm * -1)
        for i in perm:
            word = word * c_up(spec, indices[i], copy)
        acc = acc + word
    return acc


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def supersymmetrize(spec: AlgebraSpec, indices, copy: int = 0,
                    flavor: str = "hat") -> NOElement:
    """Graded-symmetrized product of oscillators c^{(a1...ak)}.

    flavor "hat" uses the transposition sign (-eps)(-1)^{[a][b]}; "tilde"
    carries the extra (-1)^{[a]+[b]} per transposition.
    """
    if spec.family != "oscillator":
        raise AlgebraError("supersymmetrization acts on oscillators")
    if flavor not in ("hat", "tilde"):
        raise AlgebraError("unknown symmetrizer flavor %r" % flavor)
    return _supersym_cached(spec, tuple(indices), copy, flavor)


# -- generator matrices -----------------------------------------------------------

def build_F(space: GradedSpace, spec: AlgebraSpec | None = None):
    """Oscillator realization of the traceless generators:
    F^a_b = eps (-1)^{[b]} c^a c_b - (1/2) d^a_b."""
    from .osp import GeneratorMatrix
    spec = spec or AlgebraSpec(space, "oscillator")
    eps = space.epsilon
    entries = {}
    half = _scal(Fraction(1, 2))
    for a in range(space.dim):
        for b in range(space.dim):
            coef = eps * (-1 if space.grading[b] else 1)
            elem = (c_up(spec, a) * c_down(spec, b)).scale(coef)
            if a == b:
                elem = elem - NOElement.unit(spec, half)
            if not elem.is_zero():
                entries[(a, b)] = elem
    return GeneratorMatrix(space, entries, NOElement.unit(spec), "oscillator")


def F_upper(spec: AlgebraSpec, a: int, b: int, copy: int = 0) -> NOElement:
    """F^{ab} = eps (-1)^{[b]} c^{(a} c^{b)}."""
    coef = spec.space.epsilon * (-1 if spec.space.grading[b] else 1)
    return supersymmetrize(spec, (a, b), copy).scale(coef)


def build_M(space: GradedSpace, spec: AlgebraSpec | None = None):
    """Jordan-Schwinger generators M^a_b from graded Heisenberg pairs,
    first index raised: M^a_b = inv^{ac} (x_c d_b - eps(-1)^{...} x_b d_c)."""
    from .osp import GeneratorMatrix
    spec = spec or AlgebraSpec(space, "heisenberg")
    lower = build_M_lower(space, spec)
    entries = {}
    inv = space.inverse
    for a in range(space.dim):
        for b in range(space.dim):
            acc = None
            for c in range(space.dim):
                if not inv[a][c] or (c, b) not in lower:
                    continue
                t = lower[(c, b)].scale(inv[a][c])
                acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                entries[(a, b)] = acc
    return GeneratorMatrix(space, entries, NOElement.unit(spec), "jordan-schwinger")


def build_M_lower(space: GradedSpace, spec: AlgebraSpec | None = None) -> dict:
    """M_{ab} = x_a d_b - eps (-1)^{[a][b]+[a]+[b]} x_b d_a as a dict."""
    spec = spec or AlgebraSpec(space, "heisenberg")
    eps = space.epsilon
    g = space.grading
    out = {}
    for a in range(space.dim):
        for b in range(space.dim):
            sgn = eps * space.sign(a, b) * (-1 if (g[a] + g[b]) % 2 else 1)
            elem = x_var(spec, a) * d_var(spec, b) \
                - (x_var(spec, b) * d_var(spec, a)).scale(sgn)
            if not elem.is_zero():
                out[(a, b)] = elem
    return out


def number_operator(spec: AlgebraSpec) -> NOElement:
    """H = x_b d^b, the degree-counting element of the Heisenberg family."""
    space = spec.space
    acc = NOElement(spec)
    for b in range(space.dim):
        acc = acc + x_var(spec, b) * d_up(spec, b)
    return acc


def x_squared(spec: AlgebraSpec) -> NOElement:
    space = spec.space
    acc = NOElement(spec)
    for b in range(space.dim):
        acc = acc + x_up(spec, b) * x_var(spec, b)
    return acc


def d_squared(spec: AlgebraSpec) -> NOElement:
    space = spec.space
    acc = NOElement(spec)
    for b in range(space.dim):
        acc = acc + d_up(spec, b) * d_var(spec, b)
    return acc


# -- finite modules ------------------------------------------------------------------

class ModuleError(ValueError):
    pass


class FiniteModule:
    """Exact matrices for algebra elements on a finite invariant subspace.

    kinds: "clifford-spinor" (oscillator, all generators square-capped),
    "degree" (heisenberg, homogeneous polynomials of fixed degree),
    "fock-cap" (oscillator, bosonic occupation capped at D; rows whose exact
    action leaves the truncation are flagged).
    """

    def __init__(self, spec: AlgebraSpec, kind: str, parameter: int = 0):
        self.spec = spec
        self.kind = kind
        self.parameter = parameter
        self.creators, self.annihilators = self._polarize()
        self.states = self._build_states()
        self.index = {s: i for i, s in enumerate(self.states)}

    # -- construction ------------------------------------------------------
    def _polarize(self):
        spec, space = self.spec, self.spec.space
        if self.kind == "degree":
            if spec.family != "heisenberg":
                raise ModuleError("degree modules need the heisenberg family")
            creators = [spec.gid(a, kind="x") for a in range(space.dim)]
            annihilators = [spec.gid(a, kind="d") for a in range(space.dim)]
            return creators, annihilators
        if spec.family != "oscillator" or spec.copies != 1:
            raise ModuleError("oscillator modules need a single-copy oscillator spec")
        inv = space.inverse
        creators, annihilators = [], []
        for g in range(space.dim):
            partners = [h for h in range(space.dim) if inv[g][h]]
            if partners == [g]:
                creators.append(g)     # self-paired: exact square rule, no vacuum issue
            elif len(partners) == 1:
                (creators if partners[0] > g else annihilators).append(g)
            else:
                raise ModuleError(
                    "metric is not pair-structured; build the space with "
                    "split_symmetric=True for module work")
        if self.kind == "clifford-spinor":
            non_clifford = [g for g in range(space.dim) if spec.square(g) is None]
            if non_clifford:
                raise ModuleError("clifford-spinor module needs all generators "
                                  "square-capped (pure even with eps=+1 or pure "
                                  "odd with eps=-1)")
        return creators, annihilators

    def _build_states(self):
        spec = self.spec
        if self.kind == "clifford-spinor":
            states = []
            for r in range(len(self.creators) + 1):
                for combo in itertools.combinations(sorted(self.creators), r):
                    states.append(tuple(combo))
            return sorted(states, key=lambda s: (len(s), s))
        if self.kind == "degree":
            d = self.parameter
            return sorted(self._monomials_of_degree(self.creators, d),
                          key=lambda s: s)
        if self.kind == "fock-cap":
            cap = self.parameter
            per_gen = []
            for g in self.creators:
                top = 1 if self.spec.square(g) is not None else cap
                per_gen.append(range(top + 1))
            states = []
            for expos in itertools.product(*per_gen):
                m = []
                for g, e in zip(self.creators, expos):
                    m.extend([g] * e)
                states.append(tuple(sorted(m)))
            return sorted(set(states), key=lambda s: (len(s), s))
        raise ModuleError("unknown module kind %r" % self.kind)

    def _monomials_of_degree(self, gens, d):
        spec = self.spec
        out = set()

        def rec(prefix, remaining, start):
            if remaining == 0:
                out.add(tuple(prefix))
                return
            for i in range(start, len(gens)):
                g = gens[i]
                capped = spec.square(g) is not None
                if capped and prefix and prefix[-1] == g:
                    continue
                rec(prefix + [g], remaining - 1, i)

        rec([], d, 0)
        return out

    @property
    def dim(self) -> int:
        return len(self.states)

    # -- action -------------------------------------------------------------
    def _act(self, element: NOElement, state: tuple):
        """element * state with annihilator-bearing monomials dropped."""
        word = NOElement(self.spec, {state: ONE})
        result = element * word
        ann = set(self.annihilators)
        out = {}
        for m, c in result.terms.items():
            if any(g in ann for g in m):
                continue
            out[m] = c
        return out

    def matrix_of(self, element: NOElement, allow_cap: bool = False):
        """Matrix of the element on the module; returns (SqMatrix, flagged).

        flagged lists state indices whose image leaves the module (only legal
        for fock-cap modules with allow_cap=True)."""
        from .osp import SqMatrix
        n = self.dim
        rows = [[ZERO] * n for _ in range(n)]
        flagged = []
        for j, state in enumerate(self.states):
            img = self._act(element, state)
            for m, c in img.items():
                i = self.index.get(m)
                if i is None:
                    if self.kind == "fock-cap" and allow_cap:
                        flagged.append(j)
                        continue
                    raise ModuleError(
                        "action leaves the module at state %d (monomial %s)"
                        % (j, m,))
                rows[i][j] = rows[i][j] + c
        return SqMatrix(rows), sorted(set(flagged))

    def _act_in_states(self, gen: int, img: dict):
        """One more generator applied to a state-combination; None if the image
        leaves the module."""
        out: dict = {}
        ann = set(self.annihilators)
        for state, coef in img.items():
            step = self._act(NOElement.generator(self.spec, gen), state)
            for m, c in step.items():
                if m not in self.index:
                    if any(g in ann for g in m):
                        continue
                    return None
                s = out.get(m)
                s = coef * c if s is None else s + coef * c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def verify_relations(self, allow_cap: bool = False):
        """Defining relations as products of generator actions.

        For oscillator modules: cc + eps(-1) cc = inv on every column where
        neither composition order leaves the truncation; leaving columns are
        flagged (fock-cap only).  For degree modules the generators do not act
        individually, so the check is that matrix_of is multiplicative on the
        degree-preserving quadratic elements x_a d_b."""
        spec, space = self.spec, self.spec.space
        flagged = set()
        ok = True
        if spec.family == "oscillator":
            d = space.dim
            for a in range(d):
                for b in range(d):
                    sgn = space.epsilon * space.sign(a, b)
                    target = _scal(space.inverse[a][b])
                    for j, state in enumerate(self.states):
                        res: dict = {}
                        good = True
                        for first, second, flip in ((b, a, False), (a, b, True)):
                            img = self._act_in_states(first, {state: ONE})
                            img = self._act_in_states(second, img) if img is not None else None
                            if img is None:
                                good = False
                                break
                            for m, c in img.items():
                                c = c * sgn if flip else c
                                s = res.get(m)
                                s = c if s is None else s + c
                                res[m] = s
                        if not good:
                            if not allow_cap or self.kind != "fock-cap":
                                ok = False
                            flagged.add(j)
                            continue
                        cur = res.get(state, ZERO) - target
                        if not cur.is_zero() or any(
                                not v.is_zero() for m, v in res.items() if m != state):
                            ok = False
        else:
            quads = []
            for a in range(space.dim):
                for b in range(space.dim):
                    quads.append(x_var(spec, a) * d_var(spec, b))
            mats = [self.matrix_of(q)[0] for q in quads]
            for (qa, ma), (qb, mb) in itertools.product(zip(quads, mats), repeat=2):
                prod_mat, _ = self.matrix_of(qa * qb)
                if not (ma * mb - prod_mat).is_zero():
                    ok = False
        return ok, sorted(flagged)


def finite_module(spec: AlgebraSpec, kind: str, parameter: int = 0) -> FiniteModule:
    return FiniteModule(spec, kind, parameter)


def realize(genmat, module: FiniteModule):
    """GeneratorMatrix with normal-ordered entries -> matrices on the module."""
    from .osp import GeneratorMatrix, SqMatrix
    entries = {}
    for key, elem in genmat.entries.items():
        mat, flagged = module.matrix_of(elem)
        if flagged:
            raise ModuleError("generator action touches the truncation cap")
        entries[key] = mat
    return GeneratorMatrix(genmat.space, entries, SqMatrix.identity(module.dim),
                           genmat.variant)


# -- the formal trace functional ---------------------------------------------------

def trace2(spec: AlgebraSpec, a: int, b: int) -> Scalar:
    """Tr(c^a c^b) = inv^{ab} (relative to Tr 1 = 1)."""
    return _scal(spec.space.inverse[a][b])


def trace4(spec: AlgebraSpec, a: int, b: int, c: int, d: int) -> Scalar:
    """Tr(c^a c^b c^c c^d) =
    (1/2)(inv^{ab} inv^{cd} - eps(-1)^{[a][b]} inv^{ac} inv^{bd} + inv^{ad} inv^{bc})."""
    space = spec.space
    inv = space.inverse
    val = Fraction(inv[a][b] * inv[c][d], 1) \
        - space.epsilon * space.sign(a, b) * inv[a][c] * inv[b][d] \
        + inv[a][d] * inv[b][c]
    return _scal(Fraction(val, 2))


def trace_word(spec: AlgebraSpec, word: tuple) -> Scalar:
    """Formal trace of a product of upper-index oscillators given as an index
    word; degree 2m uses the graded pairing sum with a (1/2)^{m-1} weight so
    that the two- and four-point values above are reproduced."""
    if len(word) % 2:
        return ZERO
    if not word:
        return _scal(1)
    total = _pairing_sum(spec, tuple(word))
    m = len(word) // 2
    return total * _scal(Fraction(1, 2 ** (m - 1)))


def _pairing_sum(spec: AlgebraSpec, word: tuple) -> Scalar:
    """Sum over perfect pairings with graded crossing signs; contraction value
    inv^{ab} for the pair (a, b)."""
    space = spec.space
    if not word:
        return _scal(1)
    a = word[0]
    total = ZERO
    for j in range(1, len(word)):
        b = word[j]
        sign = 1
        for i in range(1, j):
            sign *= -space.epsilon * space.sign(a, word[i])
        if space.inverse[a][b]:
            rest = word[1:j] + word[j + 1:]
            total = total + _scal(sign * space.inverse[a][b]) * _pairing_sum(spec, rest)
    return total


def trace_even(spec: AlgebraSpec, element: NOElement) -> Scalar:
    """Formal trace of an even element expressed in the normal-ordered basis.

    Exactly trace2/trace4 for degrees <= 4; beyond that the recursive pairing
    rule is a documented extension cross-checked against spinor-module traces.
    """
    total = ZERO
    for m, c in element.terms.items():
        if len(m) % 2:
            raise AlgebraError("trace_even needs an even element")
        word = []
        for g in m:
            kind, a, copy = spec.gen_info(g)
            if kind != "c" or copy != 0:
                raise AlgebraError("trace functional acts on single-copy oscillators")
            word.append(a)
        total = total + c * trace_word(spec, tuple(word))
    return total

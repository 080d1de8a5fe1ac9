"""Sparse operators and vectors on tensor powers of a graded space.

Entries are indexed by (out, in) multi-index pairs (0-based tuples).  Entry
values are usually Scalars, but any associative-algebra element with +, *,
scalar multiplication and is_zero() works; matrix products multiply entry
values in order, so noncommutative values (normal-ordered elements, module
matrices) are supported.  All grading signs are carried by explicit sign
operators, never by the composition rule.

Slot arguments are 1-based to match the usual tensor-leg notation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .scalars import ONE, Scalar
from .spaces import GradedSpace


class SlotError(IndexError):
    pass


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else not v


class GradedOperator:
    """Sparse operator on V^{otimes n}."""

    __slots__ = ("space", "arity", "entries")

    def __init__(self, space: GradedSpace, arity: int, entries: dict | None = None):
        self.space = space
        self.arity = arity
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if not _is_zero(val):
                    self.entries[key] = val

    # -- constructors ---------------------------------------------------
    @staticmethod
    def identity(space: GradedSpace, arity: int, one=ONE) -> "GradedOperator":
        entries = {}
        for idx in itertools.product(range(space.dim), repeat=arity):
            entries[(idx, idx)] = one
        return GradedOperator(space, arity, entries)

    @staticmethod
    def zero(space: GradedSpace, arity: int) -> "GradedOperator":
        return GradedOperator(space, arity, {})

    # -- structure ------------------------------------------------------
    def copy_with(self, entries: dict) -> "GradedOperator":
        return GradedOperator(self.space, self.arity, entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self - other).is_zero()

    def first_nonzero(self):
        """Lexicographically first nonzero component, for failure witnesses."""
        if not self.entries:
            return None
        key = min(self.entries)
        return key, self.entries[key]

    def is_even(self) -> bool:
        g = self.space.grading
        for (out, inn) in self.entries:
            if (sum(g[a] for a in out) + sum(g[b] for b in inn)) % 2:
                return False
        return True

    # -- linear algebra ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        self._check_compatible(other)
        entries = dict(self.entries)
        for key, val in other.entries.items():
            if key in entries:
                s = entries[key] + val
                if _is_zero(s):
                    del entries[key]
                else:
                    entries[key] = s
            else:
                entries[key] = val
        return self.copy_with(entries)

    def __neg__(self):
        return self.copy_with({k: v * -1 for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GradedOperator":
        if _is_zero(c):
            return GradedOperator.zero(self.space, self.arity)
        return self.copy_with({k: c * v for k, v in self.entries.items()})

    def __mul__(self, other):
        """Matrix product; entry values multiply left-to-right."""
        if not isinstance(other, GradedOperator):
            return NotImplemented
        self._check_compatible(other)
        by_out: dict = {}
        for (out, inn), val in other.entries.items():
            by_out.setdefault(out, []).append((inn, val))
        entries: dict = {}
        for (aout, amid), va in self.entries.items():
            for binn, vb in by_out.get(amid, ()):
                key = (aout, binn)
                prod = va * vb
                if key in entries:
                    s = entries[key] + prod
                    if _is_zero(s):
                        del entries[key]
                    else:
                        entries[key] = s
                elif not _is_zero(prod):
                    entries[key] = prod
        return self.copy_with(entries)

    def apply(self, vec: "GradedVector") -> "GradedVector":
        comps: dict = {}
        for (out, inn), val in self.entries.items():
            x = vec.components.get(inn)
            if x is None:
                continue
            cur = comps.get(out)
            s = val * x if cur is None else cur + val * x
            if _is_zero(s):
                comps.pop(out, None)
            else:
                comps[out] = s
        return GradedVector(self.space, self.arity, comps)

    def map_values(self, f: Callable) -> "GradedOperator":
        return self.copy_with({k: f(v) for k, v in self.entries.items()})

    def _check_compatible(self, other):
        if self.space is not other.space and self.space != other.space:
            raise ValueError("operators live on different spaces")
        if self.arity != other.arity:
            raise ValueError("arity mismatch: %d vs %d" % (self.arity, other.arity))

    def __repr__(self):
        return "GradedOperator(arity=%d, nnz=%d)" % (self.arity, len(self.entries))


@dataclass
class GradedVector:
    space: GradedSpace
    arity: int
    components: dict

    def __post_init__(self):
        self.components = {k: v for k, v in self.components.items() if not _is_zero(v)}

    def is_zero(self) -> bool:
        return not self.components

    def __sub__(self, other):
        comps = dict(self.components)
        for k, v in other.components.items():
            s = comps.get(k, None)
            s = (v * -1) if s is None else s - v
            if _is_zero(s):
                comps.pop(k, None)
            else:
                comps[k] = s
        return GradedVector(self.space, self.arity, comps)

    def __eq__(self, other):
        return isinstance(other, GradedVector) and (self - other).is_zero()


def outer(ket: GradedVector, bra: GradedVector) -> GradedOperator:
    """|ket><bra| as an operator (no implicit metric factors)."""
    entries = {}
    for out, a in ket.components.items():
        for inn, b in bra.components.items():
            entries[(out, inn)] = a * b
    return GradedOperator(ket.space, ket.arity, entries)


# -- sign operators and dressing --------------------------------------------

def _check_slot(n: int, s: int):
    if not 1 <= s <= n:
        raise SlotError("slot %d out of range 1..%d" % (s, n))


def sign_operator(space: GradedSpace, n: int, i: int, j: int, one=ONE) -> GradedOperator:
    """Diagonal operator with entries (-1)^{[a_i][a_j]} on V^{otimes n}."""
    _check_slot(n, i)
    _check_slot(n, j)
    if i == j:
        raise SlotError("sign operator needs two distinct slots")
    g = space.grading
    entries = {}
    for idx in itertools.product(range(space.dim), repeat=n):
        val = one * -1 if g[idx[i - 1]] and g[idx[j - 1]] else one
        entries[(idx, idx)] = val
    return GradedOperator(space, n, entries)


def parity_operator(space: GradedSpace, n: int, i: int, one=ONE) -> GradedOperator:
    """Diagonal (-1)^{[a_i]}, the supertrace sign in slot i."""
    _check_slot(n, i)
    g = space.grading
    entries = {}
    for idx in itertools.product(range(space.dim), repeat=n):
        entries[(idx, idx)] = one * -1 if g[idx[i - 1]] else one
    return GradedOperator(space, n, entries)


def embed(op: GradedOperator, slots: Sequence[int], n: int, one=ONE) -> GradedOperator:
    """Place an arity-k operator into the given slots (1-based) of V^{otimes n}."""
    k = op.arity
    if len(slots) != k:
        raise SlotError("need %d slots" % k)
    for s in slots:
        _check_slot(n, s)
    if len(set(slots)) != k:
        raise SlotError("slots must be distinct")
    rest = [s for s in range(1, n + 1) if s not in slots]
    dim = op.space.dim
    entries: dict = {}
    for (out, inn), val in op.entries.items():
        for fill in itertools.product(range(dim), repeat=len(rest)):
            big_out = [0] * n
            big_in = [0] * n
            for pos, s in enumerate(slots):
                big_out[s - 1] = out[pos]
                big_in[s - 1] = inn[pos]
            for pos, s in enumerate(rest):
                big_out[s - 1] = fill[pos]
                big_in[s - 1] = fill[pos]
            entries[(tuple(big_out), tuple(big_in))] = val
    return GradedOperator(op.space, n, entries)


def dress_operator(space: GradedSpace, n: int, C: GradedOperator, j: int,
                   one=ONE) -> GradedOperator:
    """Embed a single-space operator in slot j, conjugated by sign operators:
    C_{1..j} = (-)^{j-1,j} ... (-)^{1j} C_j (-)^{1j} ... (-)^{j-1,j}."""
    _check_slot(n, j)
    out = embed(C, [j], n, one=one)
    # innermost conjugation first: (-)^{1j}, then (-)^{2j}, ..., (-)^{j-1,j}
    for i in range(1, j):
        s = sign_operator(space, n, i, j, one=one)
        out = s * out * s
    return out


def compose(ops: Iterable[GradedOperator]) -> GradedOperator:
    ops = list(ops)
    if not ops:
        raise ValueError("compose needs at least one operator")
    out = ops[0]
    for op in ops[1:]:
        out = out * op
    return out


def supertensor_product(A: GradedOperator, B: GradedOperator) -> GradedOperator:
    """(A (x)_s B)^{a1a2}_{b1b2} = (-1)^{([a2]+[b2])[b1]} A^{a1}_{b1} B^{a2}_{b2}."""
    if A.arity != 1 or B.arity != 1:
        raise ValueError("supertensor product is defined on arity-1 operators")
    g = A.space.grading
    entries = {}
    for ((a1,), (b1,)), va in A.entries.items():
        for ((a2,), (b2,)), vb in B.entries.items():
            sgn = -1 if (g[a2] + g[b2]) % 2 and g[b1] else 1
            entries[((a1, a2), (b1, b2))] = va * vb * sgn
    return GradedOperator(A.space, 2, entries)


def supertrace(A: GradedOperator):
    """str(A) = sum_a (-1)^{[a]} A^a_a for an arity-1 operator."""
    if A.arity != 1:
        raise ValueError("supertrace is defined on arity-1 operators")
    g = A.space.grading
    total = None
    for ((a,), (b,)), val in A.entries.items():
        if a != b:
            continue
        term = val * -1 if g[a] else val
        total = term if total is None else total + term
    return Scalar.const(0) if total is None else total


# -- index raising and lowering ----------------------------------------------

def _contract_slot(components: dict, space: GradedSpace, pos: int, matrix,
                   out_len: int):
    new: dict = {}
    for key, val in components.items():
        idx = key[pos]
        for a in range(space.dim):
            c = matrix[a][idx]
            if not c:
                continue
            nk = key[:pos] + (a,) + key[pos + 1:]
            term = val * c
            if nk in new:
                s = new[nk] + term
                if _is_zero(s):
                    del new[nk]
                else:
                    new[nk] = s
            else:
                new[nk] = term
    return new


def lower_index(T, slot: int, kind: str = "out"):
    """Contract eps_{ab} from the left at the given slot (1-based).

    For operators, kind selects the out or in index group.
    """
    return _move_index(T, slot, kind, lower=True)


def raise_index(T, slot: int, kind: str = "out"):
    """Contract the inverse metric from the left at the given slot."""
    return _move_index(T, slot, kind, lower=False)


def _move_index(T, slot, kind, lower):
    space = T.space
    mat = space.metric if lower else space.inverse
    if isinstance(T, GradedVector):
        _check_slot(T.arity, slot)
        comps = {}
        for key, val in T.components.items():
            idx = key[slot - 1]
            for a in range(space.dim):
                c = mat[a][idx]
                if not c:
                    continue
                nk = key[:slot - 1] + (a,) + key[slot:]
                cur = comps.get(nk)
                t = val * c
                comps[nk] = t if cur is None else cur + t
        return GradedVector(space, T.arity, comps)
    _check_slot(T.arity, slot)
    entries: dict = {}
    for (out, inn), val in T.entries.items():
        key = out if kind == "out" else inn
        idx = key[slot - 1]
        for a in range(space.dim):
            c = mat[a][idx]
            if not c:
                continue
            nk = key[:slot - 1] + (a,) + key[slot:]
            full = (nk, inn) if kind == "out" else (out, nk)
            cur = entries.get(full)
            t = val * c
            if cur is None:
                entries[full] = t
            else:
                s = cur + t
                if _is_zero(s):
                    del entries[full]
                else:
                    entries[full] = s
    return GradedOperator(space, T.arity, entries)


def metric_ket(space: GradedSpace, one=ONE) -> GradedVector:
    """eps^{12>}: the rank-2 tensor with components eps^{ab} (inverse metric)."""
    comps = {}
    for a, b, c in space.inverse_pairs():
        comps[(a, b)] = one * c
    return GradedVector(space, 2, comps)


def metric_bra(space: GradedSpace, one=ONE) -> GradedVector:
    """eps_{<12}: components eps_{ab}."""
    comps = {}
    for a, b, c in space.pairs():
        comps[(a, b)] = one * c
    return GradedVector(space, 2, comps)

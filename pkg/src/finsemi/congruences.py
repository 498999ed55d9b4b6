"""Congruences, quotients, kernels, and the least inverse congruence."""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from . import errors
from .core import FiniteSemigroup, _partition_ids


class Congruence:
    """A compatible partition of a finite semigroup.

    Stored as a class-index array (class numbers assigned by first
    appearance).  Compatibility with the multiplication is checked at
    construction.
    """

    def __init__(self, parent, class_ids, check=True):
        ids = np.asarray(class_ids, dtype=np.int64)
        if ids.shape != (parent.n,):
            raise errors.OutOfRangeError(
                "class array must have length %d" % parent.n)
        ids = _partition_ids([int(c) for c in ids])
        ids.setflags(write=False)
        self.parent = parent
        self.ids = ids
        self.num_classes = int(ids.max()) + 1
        if check:
            self._check_compatible()

    def _check_compatible(self):
        prod_ids = self.ids[self.parent.table]   # prod_ids[a, c] = class of a*c
        reps = {}
        for x in range(self.parent.n):
            c = int(self.ids[x])
            if c not in reps:
                reps[c] = x
                continue
            r = reps[c]
            if not np.array_equal(prod_ids[x], prod_ids[r]):
                bad = int(np.flatnonzero(prod_ids[x] != prod_ids[r])[0])
                raise errors.PreconditionError(
                    "not right compatible: %d ~ %d but %d*%d !~ %d*%d"
                    % (x, r, x, bad, r, bad))
            if not np.array_equal(prod_ids[:, x], prod_ids[:, r]):
                bad = int(np.flatnonzero(prod_ids[:, x] != prod_ids[:, r])[0])
                raise errors.PreconditionError(
                    "not left compatible: %d ~ %d but %d*%d !~ %d*%d"
                    % (x, r, bad, x, bad, r))

    def related(self, a, b):
        return bool(self.ids[a] == self.ids[b])

    def classes(self):
        out = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.ids):
            out[int(c)].append(x)
        return out

    def class_of(self, a):
        return [x for x in range(self.parent.n) if self.ids[x] == self.ids[a]]

    @property
    def is_identity(self):
        return self.num_classes == self.parent.n

    @property
    def is_universal(self):
        return self.num_classes == 1

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.ids, other.ids)

    def __hash__(self):
        return hash((id(self.parent), self.ids.tobytes()))

    def __repr__(self):
        return "Congruence(%d classes on order %d)" % (self.num_classes, self.parent.n)


@dataclasses.dataclass(frozen=True)
class QuotientMap:
    congruence: Congruence
    quotient: FiniteSemigroup
    projection: np.ndarray

    def project(self, s):
        return int(self.projection[s])


def identity_congruence(S):
    return Congruence(S, range(S.n), check=False)


def universal_congruence(S):
    return Congruence(S, [0] * S.n, check=False)


def congruence_generated(S, pairs, base=None):
    """Least congruence containing the given pairs (and the base congruence).

    Union-find fixpoint: whenever two classes merge for (a, b), the pairs
    (c*a, c*b) and (a*c, b*c) are queued for every c.
    """
    n, t = S.n, S.table
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if base is not None:
        for cls in base.classes():
            for x in cls[1:]:
                parent[find(x)] = find(cls[0])

    work = [(int(a), int(b)) for a, b in pairs]
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[ra] = rb
        for c in range(n):
            work.append((int(t[c, a]), int(t[c, b])))
            work.append((int(t[a, c]), int(t[b, c])))
    return Congruence(S, [find(x) for x in range(n)])


def induced_congruence(S, mapping):
    """The congruence identifying elements with equal image under a
    homomorphism (given as a sequence indexed by S's elements)."""
    return Congruence(S, _partition_ids([mapping[x] for x in range(S.n)]))


def quotient(S, rho):
    """The quotient semigroup with its projection; class i of rho becomes
    element i of the quotient."""
    ids = rho.ids
    reps = [None] * rho.num_classes
    for x in range(S.n):
        c = int(ids[x])
        if reps[c] is None:
            reps[c] = x
    k = rho.num_classes
    qt = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            qt[i, j] = ids[S.table[reps[i], reps[j]]]
    names = ["[%s]" % S.name_of(reps[i]) for i in range(k)]
    Q = FiniteSemigroup(qt, names=names)
    if not np.array_equal(qt[np.ix_(ids, ids)], ids[S.table]):
        raise errors.FinsemiError("internal error: projection is not a homomorphism")
    return QuotientMap(congruence=rho, quotient=Q, projection=ids)


def kernel(S, rho):
    """Union of the idempotent rho-classes (quotient must be inverse)."""
    qm = quotient(S, rho)
    if not qm.quotient.is_inverse:
        raise errors.QuotientNotInverseError(
            "kernel is defined here only for inverse quotients")
    idem = set(qm.quotient.idempotents)
    return tuple(x for x in range(S.n) if int(rho.ids[x]) in idem)


def is_congruence_over_cs(S, rho):
    """True iff the quotient is inverse and every idempotent class, as a
    subsemigroup of S, is completely simple."""
    qm = quotient(S, rho)
    if not qm.quotient.is_inverse:
        return False
    for e in qm.quotient.idempotents:
        cls = [x for x in range(S.n) if int(rho.ids[x]) == e]
        sub, _ = S.subsemigroup_on(cls)
        if not sub.is_completely_simple:
            return False
    return True


def least_inverse_congruence(S):
    """The minimum congruence whose quotient is inverse.

    Fixpoint: while the quotient has noncommuting idempotents, take the
    lexicographically least offending pair of idempotent classes, lift to
    idempotents of S, and adjoin the pair (e*f, f*e).  Correctness is not
    trusted: tests compare against the intersection of all inverse-quotient
    congruences at small order.
    """
    if not S.is_regular:
        raise errors.NotRegularError("least inverse congruence needs a regular input")
    rho = identity_congruence(S)
    while True:
        Q = quotient(S, rho).quotient
        if Q.is_inverse:
            return rho
        offending = None
        for i, j in itertools.product(Q.idempotents, repeat=2):
            if Q.mul(i, j) != Q.mul(j, i):
                offending = (i, j)
                break
        if offending is None:
            raise errors.FinsemiError(
                "internal error: quotient of a regular semigroup is regular, "
                "so non-inverse means noncommuting idempotents")
        lifts = []
        for c in offending:
            cand = [x for x in S.idempotents if int(rho.ids[x]) == c]
            if not cand:
                raise errors.FinsemiError(
                    "internal error: idempotent class without an idempotent "
                    "in a regular semigroup")
            lifts.append(min(cand))
        e, f = lifts
        rho = congruence_generated(S, [(S.mul(e, f), S.mul(f, e))], base=rho)


def join(rho, sigma):
    """Join in the congruence lattice (= join as equivalences)."""
    S = rho.parent
    parent = list(range(S.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cong in (rho, sigma):
        for cls in cong.classes():
            for x in cls[1:]:
                parent[find(x)] = find(cls[0])
    return Congruence(S, [find(x) for x in range(S.n)])


def meet(rho, sigma):
    S = rho.parent
    return Congruence(S, _partition_ids(
        [(int(rho.ids[x]), int(sigma.ids[x])) for x in range(S.n)]))


def all_congruences(S, max_order=8):
    """The full congruence lattice, by closing the principal congruences
    under binary joins.  Exhaustive; refuses large inputs."""
    if S.n > max_order:
        raise errors.OrderBoundError(
            "order %d exceeds the bound %d for lattice enumeration"
            % (S.n, max_order))
    found = {}

    def add(c):
        key = c.ids.tobytes()
        if key not in found:
            found[key] = c
            return True
        return False

    add(identity_congruence(S))
    for a in range(S.n):
        for b in range(a + 1, S.n):
            add(congruence_generated(S, [(a, b)]))
    frontier = list(found.values())
    while frontier:
        fresh = []
        for c in frontier:
            for d in list(found.values()):
                j = join(c, d)
                if add(j):
                    fresh.append(j)
        frontier = fresh
    return sorted(found.values(), key=lambda c: tuple(int(x) for x in c.ids))

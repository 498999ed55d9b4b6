"""Finite semigroups presented by multiplication tables.

Elements are the integers 0..n-1 and the product is a dense row-major table:
``table[a, b] = a*b``.  Everything downstream (predicates, Green's relations,
the natural partial order, sandwich sets) is computed by exhaustive scans.
That is deliberate: at desk scale brute force is fast enough, and it leaves
no room for clever bugs.
"""

from __future__ import annotations

import dataclasses
from functools import cached_property

import numpy as np

from . import errors


def _partition_ids(keys):
    """Number equivalence classes 0,1,2,... in order of first appearance."""
    seen = {}
    out = np.empty(len(keys), dtype=np.int64)
    for i, k in enumerate(keys):
        if k not in seen:
            seen[k] = len(seen)
        out[i] = seen[k]
    return out


def _canonical_ids(ids):
    return _partition_ids([int(c) for c in ids])


@dataclasses.dataclass(frozen=True)
class GreenData:
    """Green's relations of a finite semigroup.

    ``r``, ``l``, ``h``, ``d``, ``j`` hold a class index per element, numbered
    by first appearance.  The ideal bitmaps record principal right / left /
    two-sided ideal membership computed over the semigroup with an identity
    adjoined (the identity itself is not a column).
    """

    r: np.ndarray
    l: np.ndarray
    h: np.ndarray
    d: np.ndarray
    j: np.ndarray
    r_ideal: np.ndarray
    l_ideal: np.ndarray
    j_ideal: np.ndarray

    def ids(self, rel):
        try:
            return {"R": self.r, "L": self.l, "H": self.h,
                    "D": self.d, "J": self.j}[rel.upper()]
        except KeyError:
            raise errors.UnknownKindError("no Green relation %r" % (rel,)) from None

    def related(self, rel, a, b):
        ids = self.ids(rel)
        return bool(ids[a] == ids[b])

    def classes(self, rel):
        ids = self.ids(rel)
        out = [[] for _ in range(int(ids.max()) + 1)]
        for x, c in enumerate(ids):
            out[int(c)].append(x)
        return out

    def class_of(self, rel, a):
        ids = self.ids(rel)
        return [x for x in range(len(ids)) if ids[x] == ids[a]]


class FiniteSemigroup:
    """A finite semigroup on 0..n-1 given by its multiplication table."""

    def __init__(self, table, names=None, check=True):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise errors.OutOfRangeError("table must be square, got shape %r" % (t.shape,))
        n = t.shape[0]
        if n == 0:
            raise errors.OutOfRangeError("the empty semigroup is not supported")
        if t.min() < 0 or t.max() >= n:
            raise errors.OutOfRangeError("table entries must lie in 0..%d" % (n - 1))
        t.setflags(write=False)
        self.n = n
        self.table = t
        if names is not None:
            names = [str(x) for x in names]
            if len(names) != n:
                raise errors.OutOfRangeError("expected %d names, got %d" % (n, len(names)))
        self.names = names
        if check:
            left = t[t]        # left[a,b,c] = (a*b)*c
            right = t[:, t]    # right[a,b,c] = a*(b*c)
            if not np.array_equal(left, right):
                a, b, c = np.argwhere(left != right)[0]
                raise errors.NonAssociativeError(int(a), int(b), int(c))

    # --- basics ------------------------------------------------------------

    def __len__(self):
        return self.n

    def __repr__(self):
        return "%s(order=%d)" % (type(self).__name__, self.n)

    def elements(self):
        return range(self.n)

    def mul(self, a, b):
        return int(self.table[a, b])

    def product(self, seq):
        seq = list(seq)
        if not seq:
            raise errors.PreconditionError("product of the empty sequence is undefined")
        acc = seq[0]
        for x in seq[1:]:
            acc = int(self.table[acc, x])
        return acc

    def power(self, a, k):
        if k < 1:
            raise errors.PreconditionError("powers start at 1")
        acc = a
        for _ in range(k - 1):
            acc = int(self.table[acc, a])
        return acc

    def name_of(self, a):
        if self.names is not None:
            return self.names[a]
        return str(a)

    def is_idempotent(self, e):
        return int(self.table[e, e]) == e

    # --- idempotents, inverses --------------------------------------------

    @cached_property
    def idempotents(self):
        return tuple(int(e) for e in np.flatnonzero(np.diagonal(self.table)
                                                    == np.arange(self.n)))

    def inverses_of(self, s):
        """V(s) = all x with s*x*s = s and x*s*x = x."""
        t, n = self.table, self.n
        ar = np.arange(n)
        sxs = t[t[s], s]          # (s*x)*s over all x
        xsx = t[t[:, s], ar]      # (x*s)*x over all x
        mask = (sxs == s) & (xsx == ar)
        return tuple(int(x) for x in np.flatnonzero(mask))

    def is_regular_element(self, s):
        return bool(np.any(self.table[self.table[s], s] == s))

    # --- Green's relations -------------------------------------------------

    @cached_property
    def green(self):
        t, n = self.table, self.n
        ar = np.arange(n)

        r_ideal = np.zeros((n, n), dtype=bool)
        r_ideal[ar, ar] = True
        r_ideal[ar[:, None], t] = True              # a*x lands in row a

        l_ideal = np.zeros((n, n), dtype=bool)
        l_ideal[ar, ar] = True
        l_ideal[np.broadcast_to(ar, (n, n)), t] = True   # x*b lands in row b

        j_ideal = np.zeros((n, n), dtype=bool)
        for a in range(n):
            j_ideal[a, a] = True
            j_ideal[a, t[a]] = True
            j_ideal[a, t[:, a]] = True
            j_ideal[a, t[:, t[a]].ravel()] = True   # x*(a*y) over all x, y

        r = _partition_ids([row.tobytes() for row in r_ideal])
        l = _partition_ids([row.tobytes() for row in l_ideal])
        h = _partition_ids([(int(r[x]), int(l[x])) for x in range(n)])
        j = _partition_ids([row.tobytes() for row in j_ideal])

        # D = join of R and L via union-find over elements.
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ids in (r, l):
            first = {}
            for x in range(n):
                c = int(ids[x])
                if c in first:
                    parent[find(x)] = find(first[c])
                else:
                    first[c] = x
        d = _partition_ids([find(x) for x in range(n)])

        # On a finite semigroup D = J; both sides are computed independently
        # here, so a mismatch means this method is broken.
        if not np.array_equal(d, j):
            raise errors.FinsemiError("internal error: D and J partitions disagree")

        for arr in (r, l, h, d, j, r_ideal, l_ideal, j_ideal):
            arr.setflags(write=False)
        return GreenData(r=r, l=l, h=h, d=d, j=j,
                         r_ideal=r_ideal, l_ideal=l_ideal, j_ideal=j_ideal)

    # --- natural partial order ---------------------------------------------

    @cached_property
    def natural_order_matrix(self):
        """Boolean matrix M with M[a, b] iff a = e*b and a = b*f for some
        idempotents e, f (the standard natural partial order)."""
        t, n = self.table, self.n
        ar = np.arange(n)
        E = np.array(self.idempotents, dtype=np.int64)
        left = np.zeros((n, n), dtype=bool)
        right = np.zeros((n, n), dtype=bool)
        if len(E):
            prods = t[E]                      # prods[i, b] = e_i * b
            left[prods, np.broadcast_to(ar, prods.shape)] = True
            prods = t[:, E]                   # prods[b, j] = b * f_j
            right[prods, np.broadcast_to(ar[:, None], prods.shape)] = True
        m = left & right
        m.setflags(write=False)
        return m

    def natural_leq(self, a, b):
        return bool(self.natural_order_matrix[a, b])

    # --- sandwich sets and the wedge ---------------------------------------

    def sandwich_set(self, e, f):
        """S(e, f) = {g idempotent : g*e = g = f*g and e*g*f = e*f}."""
        t = self.table
        if not self.is_idempotent(e):
            raise errors.NotIdempotentError("element %d is not idempotent" % e)
        if not self.is_idempotent(f):
            raise errors.NotIdempotentError("element %d is not idempotent" % f)
        ef = t[e, f]
        return tuple(g for g in self.idempotents
                     if t[g, e] == g and t[f, g] == g and t[t[e, g], f] == ef)

    def wedge_choice(self, s, t, s_star, t_star):
        """The wedge computed from one explicit choice of inverses."""
        e = self.mul(t_star, t)
        f = self.mul(s, s_star)
        g = self.sandwich_set(e, f)
        if len(g) != 1:
            raise errors.NonSingletonSandwichError(
                "S(%d, %d) has %d elements" % (e, f, len(g)))
        return g[0]

    def wedge(self, s, t):
        """The binary sandwich operation on a locally inverse semigroup.

        Defined as the single member of the sandwich set of (t*.t, s.s*); the
        result does not depend on which inverses are chosen (tests quantify
        over every choice).
        """
        if not self.is_locally_inverse:
            raise errors.NotLocallyInverseError(
                "the wedge needs a locally inverse semigroup")
        return self.wedge_choice(s, t, self.inverses_of(s)[0], self.inverses_of(t)[0])

    # --- predicates ---------------------------------------------------------

    @cached_property
    def is_regular(self):
        return all(self.is_regular_element(s) for s in range(self.n))

    @cached_property
    def is_inverse(self):
        if not self.is_regular:
            return False
        t = self.table
        E = self.idempotents
        return all(t[e, f] == t[f, e] for e in E for f in E)

    @cached_property
    def is_completely_regular(self):
        g = self.green
        t = self.table
        return all(g.h[a] == g.h[t[a, a]] for a in range(self.n))

    @cached_property
    def is_completely_simple(self):
        return self.is_completely_regular and int(self.green.d.max()) == 0

    @cached_property
    def is_locally_inverse(self):
        """Regular with singleton sandwich sets.

        The equivalent local test (every e*S*e is inverse) is evaluated as
        well and the two routes must agree; disagreement is a bug, not a
        property of the input.
        """
        if not self.is_regular:
            return False
        E = self.idempotents
        by_sandwich = all(len(self.sandwich_set(e, f)) == 1 for e in E for f in E)
        by_local = all(self.local_submonoid(e).is_inverse for e in E)
        if by_sandwich != by_local:
            raise errors.FinsemiError(
                "internal error: sandwich-set and local-submonoid tests disagree")
        return by_sandwich

    @cached_property
    def is_e_solid(self):
        core, _ = self.generated_subsemigroup(self.idempotents)
        return core.is_completely_regular

    @cached_property
    def is_group(self):
        return int(self.green.h.max()) == 0

    @cached_property
    def is_band(self):
        return len(self.idempotents) == self.n

    @cached_property
    def is_commutative(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def is_semilattice(self):
        return self.is_band and self.is_commutative

    @cached_property
    def is_orthodox(self):
        """Regular with the idempotents closed under multiplication."""
        if not self.is_regular:
            return False
        E = set(self.idempotents)
        return all(self.mul(e, f) in E for e in E for f in E)

    # --- subsemigroups -------------------------------------------------------

    def subsemigroup_on(self, elements):
        """The subsemigroup on an explicitly given closed subset.

        Returns (sub, embedding) where embedding[i] is the parent element of
        sub element i.  Raises if the subset is not closed.
        """
        elems = list(dict.fromkeys(int(x) for x in elements))
        if not elems:
            raise errors.PreconditionError("a subsemigroup needs at least one element")
        index = {x: i for i, x in enumerate(elems)}
        m = len(elems)
        sub = np.empty((m, m), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                p = int(self.table[a, b])
                if p not in index:
                    raise errors.PreconditionError(
                        "subset not closed: %d * %d = %d escapes" % (a, b, p))
                sub[i, j] = index[p]
        names = [self.name_of(x) for x in elems]
        return FiniteSemigroup(sub, names=names), elems

    def generated_subsemigroup(self, seed):
        """Closure of a nonempty seed under the product.

        Returns (sub, embedding); elements are numbered in discovery order
        (seed first).
        """
        elems = list(dict.fromkeys(int(x) for x in seed))
        if not elems:
            raise errors.PreconditionError("seed must be nonempty")
        index = {x: i for i, x in enumerate(elems)}
        queue = list(elems)
        t = self.table
        while queue:
            a = queue.pop()
            for b in list(elems):
                for p in (int(t[a, b]), int(t[b, a])):
                    if p not in index:
                        index[p] = len(elems)
                        elems.append(p)
                        queue.append(p)
        return self.subsemigroup_on(elems)

    def local_submonoid(self, e):
        """The subsemigroup e*S*e (a monoid with identity e)."""
        if not self.is_idempotent(e):
            raise errors.NotIdempotentError("element %d is not idempotent" % e)
        t = self.table
        vals = dict.fromkeys(int(x) for x in t[t[e], e])   # (e*x)*e over all x
        sub, _ = self.subsemigroup_on(vals)
        return sub

    def opposite(self):
        return FiniteSemigroup(self.table.T.copy(), names=self.names)

    # --- locally inverse structure ------------------------------------------

    def unique_below_in_R(self, s, t, b):
        """For locally inverse S with s <= t and b R t: the unique a R s
        with a <= b."""
        if not self.is_locally_inverse:
            raise errors.PreconditionError("requires a locally inverse semigroup")
        if not self.natural_leq(s, t):
            raise errors.PreconditionError("need s <= t in the natural order")
        g = self.green
        if g.r[b] != g.r[t]:
            raise errors.PreconditionError("need b R t")
        hits = [a for a in range(self.n)
                if g.r[a] == g.r[s] and self.natural_leq(a, b)]
        if len(hits) != 1:
            raise errors.UniquenessError(
                "expected exactly one element of R_s below b, found %d" % len(hits))
        return hits[0]


def is_homomorphism(mapping, dom, cod):
    """True iff mapping (a sequence indexed by dom elements) respects products."""
    return all(cod.mul(mapping[a], mapping[b]) == mapping[dom.mul(a, b)]
               for a in dom.elements() for b in dom.elements())

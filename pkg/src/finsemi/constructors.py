"""Construction kit: Rees matrix semigroups, strong semilattices of
semigroups, direct products, small named semigroups, generating sets, and
isomorphism search by backtracking."""

from __future__ import annotations

import itertools

import numpy as np

from . import errors
from .core import FiniteSemigroup


class ReesMatrixSemigroup(FiniteSemigroup):
    """M(G; I, L; P): triples (i, g, lam) with
    (i, g, lam)(j, h, mu) = (i, g * p[lam, j] * h, mu).

    P is an L x I array of group elements.  Elements are numbered
    lexicographically by (i, g, lam).
    """

    def __init__(self, group, p):
        if not group.is_group:
            raise errors.NotAGroupError("the structure semigroup must be a group")
        p = np.asarray(p, dtype=np.int64)
        if p.ndim != 2:
            raise errors.OutOfRangeError("P must be a 2-d array")
        if p.size and (p.min() < 0 or p.max() >= group.n):
            raise errors.OutOfRangeError("P entries must be group elements")
        lam_size, i_size = p.shape
        if lam_size < 1 or i_size < 1:
            raise errors.OutOfRangeError("need at least one row and column")
        self.group = group
        self.p = p
        self.i_size = i_size
        self.lam_size = lam_size
        n = i_size * group.n * lam_size
        table = np.empty((n, n), dtype=np.int64)
        names = []
        for x in range(n):
            i, g, lam = self._decode(x)
            names.append("(%d,%s,%d)" % (i, group.name_of(g), lam))
            for y in range(n):
                j, h, mu = self._decode(y)
                mid = group.mul(group.mul(g, int(p[lam, j])), h)
                table[x, y] = self._encode(i, mid, mu)
        super().__init__(table, names=names)

    def _encode(self, i, g, lam):
        return (i * self.group.n + g) * self.lam_size + lam

    def _decode(self, x):
        x, lam = divmod(x, self.lam_size)
        i, g = divmod(x, self.group.n)
        return i, g, lam

    def encode(self, i, g, lam):
        if not (0 <= i < self.i_size and 0 <= g < self.group.n
                and 0 <= lam < self.lam_size):
            raise errors.OutOfRangeError("bad Rees coordinates")
        return self._encode(i, g, lam)

    def decode(self, x):
        return self._decode(int(x))


def rees_matrix(group, p):
    return ReesMatrixSemigroup(group, p)


class StrongSemilatticeSemigroup(FiniteSemigroup):
    """A strong semilattice of semigroups.

    y: a semilattice (meet written multiplicatively).  components: one
    semigroup per y element.  homs: for every pair e >= f (i.e. e*f = f) a
    map component[e] -> component[f], given as a sequence; hom[(e, e)] must
    be the identity and homs must compose along chains.

    For a in component e and b in component f the product is
    hom[e -> ef](a) * hom[f -> ef](b), taken in component ef.
    """

    def __init__(self, y, components, homs):
        if not y.is_semilattice:
            raise errors.PreconditionError("the index semigroup must be a semilattice")
        self.y = y
        self.components = dict(components)
        self.homs = {k: list(v) for k, v in homs.items()}
        for e in y.elements():
            if e not in self.components:
                raise errors.PreconditionError("missing component for index %d" % e)
        self._offsets = []
        total = 0
        for e in y.elements():
            self._offsets.append(total)
            total += self.components[e].n
        self._check_homs()
        n = total
        table = np.empty((n, n), dtype=np.int64)
        names = []
        for x in range(n):
            e, a = self._decode(x)
            names.append("%d:%s" % (e, self.components[e].name_of(a)))
            for z in range(n):
                f, b = self._decode(z)
                m = y.mul(e, f)
                am = self.homs[(e, m)][a]
                bm = self.homs[(f, m)][b]
                table[x, z] = self._encode(m, self.components[m].mul(am, bm))
        super().__init__(table, names=names)

    def _check_homs(self):
        y = self.y
        below = {e: [f for f in y.elements() if y.mul(e, f) == f] for e in y.elements()}
        for e in y.elements():
            for f in below[e]:
                if (e, f) not in self.homs:
                    raise errors.IncompatibleHomsError(
                        "missing structure map %d -> %d" % (e, f))
                hom = self.homs[(e, f)]
                se, sf = self.components[e], self.components[f]
                if len(hom) != se.n or any(not 0 <= v < sf.n for v in hom):
                    raise errors.IncompatibleHomsError(
                        "structure map %d -> %d malformed" % (e, f))
                for a in se.elements():
                    for b in se.elements():
                        if hom[se.mul(a, b)] != sf.mul(hom[a], hom[b]):
                            raise errors.IncompatibleHomsError(
                                "map %d -> %d is not a homomorphism at (%d, %d)"
                                % (e, f, a, b))
            if self.homs[(e, e)] != list(range(self.components[e].n)):
                raise errors.IncompatibleHomsError(
                    "structure map %d -> %d must be the identity" % (e, e))
            for f in below[e]:
                for g in below[f]:
                    comp = [self.homs[(f, g)][self.homs[(e, f)][a]]
                            for a in self.components[e].elements()]
                    if comp != self.homs[(e, g)]:
                        raise errors.IncompatibleHomsError(
                            "maps do not compose along %d -> %d -> %d" % (e, f, g))

    def _encode(self, e, a):
        return self._offsets[e] + a

    def _decode(self, x):
        x = int(x)
        for e in reversed(range(self.y.n)):
            if x >= self._offsets[e]:
                return e, x - self._offsets[e]
        raise errors.OutOfRangeError("bad element index %d" % x)

    def encode(self, e, a):
        if not (0 <= e < self.y.n and 0 <= a < self.components[e].n):
            raise errors.OutOfRangeError("bad component coordinates")
        return self._encode(e, a)

    def decode(self, x):
        return self._decode(x)


def strong_semilattice(y, components, homs):
    return StrongSemilatticeSemigroup(y, components, homs)


class DirectProductSemigroup(FiniteSemigroup):
    def __init__(self, s, t):
        self.left = s
        self.right = t
        n = s.n * t.n
        table = np.empty((n, n), dtype=np.int64)
        names = []
        for x in range(n):
            a, u = divmod(x, t.n)
            names.append("(%s|%s)" % (s.name_of(a), t.name_of(u)))
            for z in range(n):
                b, v = divmod(z, t.n)
                table[x, z] = s.mul(a, b) * t.n + t.mul(u, v)
        super().__init__(table, names=names)

    def encode(self, a, u):
        return a * self.right.n + u

    def decode(self, x):
        return divmod(int(x), self.right.n)


def direct_product(s, t):
    return DirectProductSemigroup(s, t)


def generated_subsemigroup(S, seed):
    return S.generated_subsemigroup(seed)


def _zn_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _s3_table():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return table, names


def _i2_table():
    # Partial injective maps on {0, 1} as image pairs; None = undefined.
    maps = [(None, None), (0, None), (1, None), (None, 0), (None, 1), (0, 1), (1, 0)]
    index = {m: i for i, m in enumerate(maps)}

    def compose(f, g):
        # x |-> g(f(x)): apply f first, reading products left to right.
        return tuple(None if f[x] is None else g[f[x]] for x in range(2))

    table = [[index[compose(f, g)] for g in maps] for f in maps]
    names = ["".join("-" if v is None else str(v) for v in m) for m in maps]
    return table, names


def named_small(kind, *params):
    """A catalog of small standard semigroups.

    Kinds: trivial; zn n; s3; chain n; diamond; left_zero n; right_zero n;
    rect_band rows cols; b2 (the five-element combinatorial Brandt
    semigroup); i2 (partial injections on two points, order 7); null n.
    """
    if any(not isinstance(p, int) or p < 1 for p in params):
        raise errors.UnknownKindError(
            "size parameters must be positive integers, got %r" % (params,))
    if kind == "trivial":
        return FiniteSemigroup([[0]], names=["e"])
    if kind == "zn":
        (n,) = params
        return FiniteSemigroup(_zn_table(n), names=[str(i) for i in range(n)])
    if kind == "s3":
        table, names = _s3_table()
        return FiniteSemigroup(table, names=names)
    if kind == "chain":
        (n,) = params
        return FiniteSemigroup([[min(i, j) for j in range(n)] for i in range(n)])
    if kind == "diamond":
        # 0 bottom < {1, 2} < 3 top, meet written multiplicatively
        meet = {(1, 2): 0, (2, 1): 0}
        table = [[meet.get((i, j), min(i, j)) for j in range(4)] for i in range(4)]
        return FiniteSemigroup(table)
    if kind == "left_zero":
        (n,) = params
        return FiniteSemigroup([[i] * n for i in range(n)])
    if kind == "right_zero":
        (n,) = params
        return FiniteSemigroup([list(range(n)) for _ in range(n)])
    if kind == "rect_band":
        rows, cols = params
        n = rows * cols
        table = [[(i // cols) * cols + (j % cols) for j in range(n)] for i in range(n)]
        names = ["(%d,%d)" % divmod(i, cols) for i in range(n)]
        return FiniteSemigroup(table, names=names)
    if kind == "b2":
        # 2x2 matrix units over nothing: (i,j)(k,l) = (i,l) if j = k else 0.
        pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
        n = 5
        table = [[4] * n for _ in range(n)]
        for x, (i, j) in enumerate(pairs):
            for z, (k, l) in enumerate(pairs):
                if j == k:
                    table[x][z] = pairs.index((i, l))
        names = ["e11", "a12", "a21", "e22", "0"]
        return FiniteSemigroup(table, names=names)
    if kind == "i2":
        table, names = _i2_table()
        return FiniteSemigroup(table, names=names)
    if kind == "null":
        (n,) = params
        return FiniteSemigroup([[0] * n for _ in range(n)])
    raise errors.UnknownKindError("no catalog entry %r" % (kind,))


def generating_set(S):
    """A small (greedy, not minimum) generating list."""
    gens = []
    closed = set()
    for x in range(S.n):
        if x in closed:
            continue
        gens.append(x)
        _, embedding = S.generated_subsemigroup(gens)
        closed = set(embedding)
        if len(closed) == S.n:
            break
    return gens


def _element_profile(S, x):
    g = S.green
    seen = {}
    y, k = x, 0
    while y not in seen:
        seen[y] = k
        y = S.mul(y, x)
        k += 1
    index = seen[y]
    period = k - seen[y]
    r = int(np.sum(g.r == g.r[x]))
    l = int(np.sum(g.l == g.l[x]))
    h = int(np.sum(g.h == g.h[x]))
    return (S.is_idempotent(x), index, period, len(S.inverses_of(x)), r, l, h)


def find_isomorphism(S, T):
    """An isomorphism S -> T as an image list, or None.

    Backtracking on images of a generating set, pruned by element profiles
    (power index/period, inverse counts, Green class sizes).  Meant for
    orders up to about 16.
    """
    if S.n != T.n:
        return None
    profs_s = [_element_profile(S, x) for x in range(S.n)]
    profs_t = [_element_profile(T, x) for x in range(T.n)]
    if sorted(profs_s) != sorted(profs_t):
        return None

    gens = generating_set(S)
    # Express every element as a product of earlier ones, starting from gens.
    order = list(gens)
    how = {x: ("gen", i) for i, x in enumerate(gens)}
    queue = list(order)
    while queue:
        a = queue.pop(0)
        for b in list(order):
            for p, q in ((S.mul(a, b), (a, b)), (S.mul(b, a), (b, a))):
                if p not in how:
                    how[p] = ("mul",) + q
                    order.append(p)
                    queue.append(p)
    candidates = [[y for y in range(T.n) if profs_t[y] == profs_s[g]] for g in gens]

    def extend(k, images):
        if k == len(gens):
            img = {}
            for x in order:
                kind = how[x]
                if kind[0] == "gen":
                    img[x] = images[kind[1]]
                else:
                    img[x] = T.mul(img[kind[1]], img[kind[2]])
                if profs_t[img[x]] != profs_s[x]:
                    return None
            if len(set(img.values())) != S.n:
                return None
            out = [img[x] for x in range(S.n)]
            mapped = np.array(out)
            if np.array_equal(mapped[S.table], T.table[np.ix_(mapped, mapped)]):
                return out
            return None
        for y in candidates[k]:
            if y in images[:k]:
                continue
            images[k] = y
            res = extend(k + 1, images)
            if res is not None:
                return res
        return None

    return extend(0, [None] * len(gens))


def are_isomorphic(S, T):
    return find_isomorphism(S, T) is not None

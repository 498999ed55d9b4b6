"""Actions of inverse semigroups by endomorphisms, and the twisted product
built from such an action.

The acting semigroup T must be inverse.  An action assigns to each t in T an
endomorphism of the acted-on semigroup K, so that acting by v and then by u
is the same as acting by uv.  The twisted product lives on the pairs (a, t)
fixed by the action of t t^-1, with

    (a, t) (b, u) = (act((tu)(tu)^-1, a) * act(t, b), t u).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import errors
from .congruences import induced_congruence, is_congruence_over_cs, kernel
from .constructors import generating_set, strong_semilattice
from .core import FiniteSemigroup, is_homomorphism


class Action:
    """One endomap of ``k_semigroup`` per element of ``t_semigroup``.

    ``eps`` is indexed eps[t][a]; whether each map really is an
    endomorphism, and whether the maps compose correctly, is the business
    of check_action.
    """

    def __init__(self, t_semigroup, k_semigroup, eps):
        if not t_semigroup.is_inverse:
            raise errors.ActionInvalidError("the acting semigroup must be inverse")
        rows = tuple(tuple(int(v) for v in row) for row in eps)
        if len(rows) != t_semigroup.n:
            raise errors.ActionInvalidError(
                "need %d maps, got %d" % (t_semigroup.n, len(rows)))
        for row in rows:
            if len(row) != k_semigroup.n or any(
                    not 0 <= v < k_semigroup.n for v in row):
                raise errors.ActionInvalidError(
                    "each map must send the %d elements inside the semigroup"
                    % k_semigroup.n)
        self.t = t_semigroup
        self.k = k_semigroup
        self.eps = rows

    def act(self, t, a):
        return self.eps[t][a]

    def __eq__(self, other):
        return (isinstance(other, Action) and self.t is other.t
                and self.k is other.k and self.eps == other.eps)

    def __hash__(self):
        return hash((id(self.t), id(self.k), self.eps))

    def __repr__(self):
        return "Action(|T|=%d, |K|=%d)" % (self.t.n, self.k.n)


def trivial_action(t_semigroup, k_semigroup):
    ident = tuple(range(k_semigroup.n))
    return Action(t_semigroup, k_semigroup, [ident] * t_semigroup.n)


def check_action(action):
    """True, or a witness tuple.

    Witnesses: ("endomorphism", t, (a, b)) when eps[t] fails to respect a
    product, and ("composition", p, v, a) when acting by v then p differs
    from acting by p*v.
    """
    t, k = action.t, action.k
    kt = k.table
    for ti, row in enumerate(action.eps):
        f = np.asarray(row)
        bad = np.argwhere(f[kt] != kt[f[:, None], f[None, :]])
        if len(bad):
            a, b = bad[0]
            return ("endomorphism", ti, (int(a), int(b)))
    eps = np.asarray(action.eps)
    for p in t.elements():
        for v in t.elements():
            composed = eps[p][eps[v]]
            direct = eps[t.mul(p, v)]
            bad = np.flatnonzero(composed != direct)
            if len(bad):
                return ("composition", p, v, int(bad[0]))
    return True


class LambdaSemidirectProduct(FiniteSemigroup):
    """The twisted product of an action, on pairs (a, t) with
    act(t t^-1, a) = a, numbered lexicographically by (t, a)."""

    def __init__(self, action):
        verdict = check_action(action)
        if verdict is not True:
            raise errors.ActionInvalidError("invalid action: %r" % (verdict,))
        t, k = action.t, action.k
        tinv = [t.inverses_of(x)[0] for x in t.elements()]
        carrier = [(a, u) for u in t.elements() for a in k.elements()
                   if action.act(t.mul(u, tinv[u]), a) == a]
        index = {pair: i for i, pair in enumerate(carrier)}
        n = len(carrier)
        table = np.empty((n, n), dtype=np.int64)
        for i, (a, u) in enumerate(carrier):
            for j, (b, v) in enumerate(carrier):
                uv = t.mul(u, v)
                r = t.mul(uv, tinv[uv])
                prod = (k.mul(action.act(r, a), action.act(u, b)), uv)
                if prod not in index:
                    raise errors.FinsemiError(
                        "internal error: product left the carrier at %r * %r"
                        % ((a, u), (b, v)))
                table[i, j] = index[prod]
        names = ["(%s|%s)" % (k.name_of(a), t.name_of(u)) for a, u in carrier]
        super().__init__(table, names=names)
        self.action = action
        self.carrier = tuple(carrier)
        self._index = index
        self._tinv = tinv

    def encode(self, a, u):
        if (a, u) not in self._index:
            raise errors.OutOfRangeError("pair (%r, %r) is not in the carrier" % (a, u))
        return self._index[(a, u)]

    def decode(self, x):
        return self.carrier[int(x)]


def lambda_sdp(action):
    return LambdaSemidirectProduct(action)


@dataclass
class ClauseResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class ProductReport:
    clauses: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.clauses)

    def add(self, name, passed, witness=""):
        self.clauses.append(ClauseResult(name, bool(passed), witness))

    def as_dict(self):
        return {
            "passed": self.passed,
            "clauses": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.clauses
            ],
        }


def verify_lambda_product(product):
    """Check the five structural claims about a twisted product over a
    completely simple semigroup, each against brute force.

    (1) the product is E-solid and locally inverse;
    (2) its idempotents are the pairs (e, i) of idempotents with i fixing e;
    (3) inverses of (a, t) are the (b, t^-1) with b inverse to act(t^-1, a)
        and fixed by t^-1 t;
    (4) second projection is a surjective homomorphism whose congruence has
        completely simple classes over an inverse quotient;
    (5) the union of the idempotent-class blocks is a strong semilattice of
        the fixed-point subsemigroups, via the evident map.
    """
    action = product.action
    t, k = action.t, action.k
    if not k.is_completely_simple:
        raise errors.PreconditionError(
            "the acted-on semigroup must be completely simple")
    report = ProductReport()

    ok = product.is_e_solid and product.is_locally_inverse
    report.add("esolid-and-locally-inverse", ok,
               "" if ok else "predicate failed on the product table")

    formula_e = {product.encode(e, i)
                 for e in k.idempotents for i in t.idempotents
                 if action.act(i, e) == e}
    brute_e = set(product.idempotents)
    report.add("idempotent-formula", formula_e == brute_e,
               "" if formula_e == brute_e else
               "difference at %r" % sorted(formula_e ^ brute_e))

    bad = ""
    for x in product.elements():
        a, u = product.decode(x)
        ui = product._tinv[u]
        expect = {product.encode(b, ui)
                  for b in k.inverses_of(action.act(ui, a))
                  if action.act(t.mul(ui, u), b) == b}
        if expect != set(product.inverses_of(x)):
            bad = "element %d" % x
            break
    report.add("inverse-formula", not bad, bad)

    proj = [u for _, u in product.carrier]
    hom = is_homomorphism(proj, product, t)
    onto = set(proj) == set(t.elements())
    theta2 = None
    over_cs = False
    if hom:
        theta2 = induced_congruence(product, proj)
        over_cs = is_congruence_over_cs(product, theta2)
    ok = hom and onto and over_cs
    report.add("second-projection", ok,
               "" if ok else "hom=%s onto=%s over_cs=%s" % (hom, onto, over_cs))

    if theta2 is None:
        report.add("kernel-semilattice", False, "no projection congruence")
        return report
    try:
        _check_kernel_semilattice(product, theta2, report)
    except errors.FinsemiError as exc:
        report.add("kernel-semilattice", False, str(exc))
    return report


def _check_kernel_semilattice(product, theta2, report):
    action = product.action
    t, k = action.t, action.k
    ker_elements = kernel(product, theta2)
    ker, ker_emb = product.subsemigroup_on(ker_elements)

    y, y_emb = t.subsemigroup_on(t.idempotents)
    components = {}
    comp_emb = {}
    for yi, e in enumerate(y_emb):
        fixed = [a for a in k.elements() if action.act(e, a) == a]
        components[yi], comp_emb[yi] = k.subsemigroup_on(fixed)
    homs = {}
    for yi, e in enumerate(y_emb):
        for yj, f in enumerate(y_emb):
            if y.mul(yi, yj) != yj:
                continue
            homs[(yi, yj)] = [comp_emb[yj].index(action.act(f, a))
                              for a in comp_emb[yi]]
    sslat = strong_semilattice(y, components, homs)

    if sslat.n != ker.n:
        report.add("kernel-semilattice", False,
                   "size mismatch %d vs %d" % (ker.n, sslat.n))
        return
    mapped = np.empty(ker.n, dtype=np.int64)
    for j in range(ker.n):
        a, e = product.decode(ker_emb[j])
        yi = y_emb.index(e)
        mapped[j] = sslat.encode(yi, comp_emb[yi].index(a))
    bijective = len(set(mapped.tolist())) == ker.n
    hom = bijective and np.array_equal(
        mapped[ker.table], sslat.table[np.ix_(mapped, mapped)])
    report.add("kernel-semilattice", bijective and hom,
               "" if bijective and hom else "the evident map is not an isomorphism")


def _endomorphisms(k):
    """All endomaps of k respecting the product, by extending generator
    images over a product dag."""
    gens = generating_set(k)
    how = {g: ("gen", pos) for pos, g in enumerate(gens)}
    order = list(gens)
    queue = list(gens)
    while queue:
        a = queue.pop(0)
        for b in list(order):
            for x, y in ((k.mul(a, b), (a, b)), (k.mul(b, a), (b, a))):
                if x not in how:
                    how[x] = ("mul",) + y
                    order.append(x)
                    queue.append(x)
    out = []
    kt = k.table
    for images in np.ndindex(*(k.n,) * len(gens)):
        f = np.empty(k.n, dtype=np.int64)
        for x in order:
            tag = how[x]
            f[x] = images[tag[1]] if tag[0] == "gen" else k.mul(f[tag[1]], f[tag[2]])
        if np.array_equal(f[kt], kt[f[:, None], f[None, :]]):
            out.append(tuple(int(v) for v in f))
    return sorted(set(out))


def enumerate_actions(k_semigroup, t_semigroup, limit=None, search_budget=2 * 10**5):
    """All actions of the inverse semigroup on k, up to `limit` of them.

    Searches over images of a generating set of the acting semigroup inside
    the endomorphism monoid, then filters by the composition law.
    """
    t, k = t_semigroup, k_semigroup
    if not t.is_inverse:
        raise errors.ActionInvalidError("the acting semigroup must be inverse")
    endos = _endomorphisms(k)
    gens = generating_set(t)
    if len(endos) ** len(gens) > search_budget:
        raise errors.BudgetExceededError(
            "%d^%d candidate assignments exceed the budget of %d"
            % (len(endos), len(gens), search_budget))

    how = {}
    order = []
    for pos, g in enumerate(gens):
        if g not in how:
            how[g] = ("gen", pos)
            order.append(g)
    queue = list(order)
    while queue:
        a = queue.pop(0)
        for b in list(order):
            for x, y in ((t.mul(a, b), (a, b)), (t.mul(b, a), (b, a))):
                if x not in how:
                    how[x] = ("mul",) + y
                    order.append(x)
                    queue.append(x)

    def compose(f, g):
        return tuple(f[v] for v in g)

    found = []
    for images in np.ndindex(*(len(endos),) * len(gens)):
        eps = [None] * t.n
        for x in order:
            tag = how[x]
            eps[x] = (endos[images[tag[1]]] if tag[0] == "gen"
                      else compose(eps[tag[1]], eps[tag[2]]))
        action = Action(t, k, eps)
        if check_action(action) is True:
            found.append(action)
            if limit is not None and len(found) >= limit:
                return found
    return found

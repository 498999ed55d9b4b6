"""Binary terms over a doubled alphabet and their shrink rules.

Letters come in matched pairs x, x' (the prime is an involution).  A term is
a letter, a concatenation, or a wedge (u ^ v).  Collapsing every wedge down
to the pair (first letter of u ^ last letter of v) lands in the one-level
model: words whose symbols are letters and wedge-letters.  On these, five
shrink rules compute a unique reduced form, and two-sided generator moves
(the triple-product collapse plus the word forms of the last three rules)
generate the same equivalence.

Term representation: a letter is a plain string like "x" or "x'"; other
nodes are tagged tuples ("W", u, v) and ("C", t1, ..., tk) with
concatenations kept flat.  Word symbols are letters or pairs (a, b).  The
word machinery is parameterized by the involution so it can run over letter
types other than strings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import errors


# ---------------------------------------------------------------------------
# alphabet and letters


def involute_letter(letter):
    """Toggle the trailing prime on a string letter."""
    if letter.endswith("'"):
        return letter[:-1]
    return letter + "'"


class DoubledAlphabet:
    """Base letters plus their primed partners.

    Base names must be single characters (the term grammar concatenates by
    juxtaposition) and must not carry a prime already.
    """

    def __init__(self, base):
        base = tuple(base)
        if not base:
            raise errors.OutOfRangeError("need at least one base letter")
        if len(set(base)) != len(base):
            raise errors.OutOfRangeError("base letters must be distinct")
        for b in base:
            if not isinstance(b, str) or len(b) != 1 or b in "(^)'" or b.isspace():
                raise errors.OutOfRangeError("bad base letter %r" % (b,))
        self.base = base
        self.letters = base + tuple(b + "'" for b in base)

    def involute(self, letter):
        if letter not in self.letters:
            raise errors.OutOfRangeError("letter %r is not in the alphabet" % (letter,))
        return involute_letter(letter)

    def __contains__(self, letter):
        return letter in self.letters

    def __repr__(self):
        return "DoubledAlphabet(%r)" % (self.base,)


# ---------------------------------------------------------------------------
# terms


def is_letter(term):
    return isinstance(term, str)


def wedge_term(u, v):
    return ("W", u, v)


def concat_terms(*parts):
    flat = []
    for p in parts:
        if isinstance(p, tuple) and p and p[0] == "C":
            flat.extend(p[1:])
        else:
            flat.append(p)
    if not flat:
        raise errors.OutOfRangeError("empty concatenation")
    if len(flat) == 1:
        return flat[0]
    return ("C",) + tuple(flat)


def iota(term):
    """The first letter in the written form of the term."""
    while not is_letter(term):
        term = term[1]
    return term


def tau(term):
    """The last letter in the written form of the term."""
    while not is_letter(term):
        term = term[-1]
    return term


def symbol_length(term):
    """Length of the term counted in one-level symbols: a letter is one
    symbol, a wedge of two letters is one symbol, anything else is the sum
    of its parts."""
    if is_letter(term):
        return 1
    if term[0] == "W":
        if is_letter(term[1]) and is_letter(term[2]):
            return 1
        return symbol_length(term[1]) + symbol_length(term[2])
    return sum(symbol_length(p) for p in term[1:])


def parse_term(text, alphabet):
    """Grammar: term := atom+ ; atom := letter | "(" term "^" term ")".
    Whitespace separates nothing and is skipped.  Raises TermSyntaxError
    with the offending position."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "(^)":
            tokens.append((ch, i))
            i += 1
            continue
        if ch in alphabet.base:
            if i + 1 < len(text) and text[i + 1] == "'":
                tokens.append((ch + "'", i))
                i += 2
            else:
                tokens.append((ch, i))
            continue
        raise errors.TermSyntaxError("unexpected character %r" % ch, i)

    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def parse_seq():
        nonlocal pos
        parts = []
        while True:
            tok = peek()
            if tok is None or tok in ("^", ")"):
                break
            if tok == "(":
                open_at = tokens[pos][1]
                pos += 1
                left = parse_seq()
                if peek() != "^":
                    raise errors.TermSyntaxError(
                        "expected '^' in the wedge opened here", open_at)
                pos += 1
                right = parse_seq()
                if peek() != ")":
                    raise errors.TermSyntaxError(
                        "unclosed wedge opened here", open_at)
                pos += 1
                parts.append(wedge_term(left, right))
            else:
                parts.append(tok)
                pos += 1
        if not parts:
            at = tokens[pos][1] if pos < len(tokens) else len(text)
            raise errors.TermSyntaxError("expected a term", at)
        return concat_terms(*parts)

    result = parse_seq()
    if pos < len(tokens):
        raise errors.TermSyntaxError("trailing input", tokens[pos][1])
    return result


def term_to_text(term):
    if is_letter(term):
        return term
    if term[0] == "W":
        return "(%s^%s)" % (term_to_text(term[1]), term_to_text(term[2]))
    return "".join(term_to_text(p) for p in term[1:])


# ---------------------------------------------------------------------------
# one-level words


def is_wedge_letter(symbol):
    return isinstance(symbol, tuple)


def word_iota(word):
    first = word[0]
    return first[0] if is_wedge_letter(first) else first


def word_tau(word):
    last = word[-1]
    return last[1] if is_wedge_letter(last) else last


def tilde_wedge(u, v):
    """The wedge of two one-level words: a single wedge-letter pairing the
    first letter of u with the last letter of v."""
    return ((word_iota(u), word_tau(v)),)


def r0_flatten(term):
    """Collapse every wedge node, innermost first, producing a one-level
    word."""
    if is_letter(term):
        return (term,)
    if term[0] == "W":
        left = r0_flatten(term[1])
        right = r0_flatten(term[2])
        return tilde_wedge(left, right)
    out = []
    for p in term[1:]:
        out.extend(r0_flatten(p))
    return tuple(out)


def word_to_term(word):
    parts = [("W",) + s if is_wedge_letter(s) else s for s in word]
    return concat_terms(*parts)


def word_to_text(word):
    bits = []
    for s in word:
        bits.append("(%s^%s)" % s if is_wedge_letter(s) else s)
    return "".join(bits)


def parse_word(text, alphabet):
    term = parse_term(text, alphabet)
    word = r0_flatten(term)
    if r0_flatten(word_to_term(word)) != word:
        raise errors.TermSyntaxError("not a one-level word", 0)
    return word


def _pair_rule(left, right, involute):
    """The shrink rule applicable to two adjacent symbols, if any, with its
    replacement.  Returns (rule_name, replacement_symbols) or None.  Rules
    are tried in numeric order."""
    lw, rw = is_wedge_letter(left), is_wedge_letter(right)
    if not lw and rw and right[1] == left:
        return ("R1", (left,))
    if lw and not rw and left[0] == right:
        return ("R2", (right,))
    if lw and rw and left[0] == right[0]:
        return ("R3", (right,))
    if lw and rw and left[1] == right[1]:
        return ("R4", (left,))
    if not lw and not rw and left == involute(right):
        return ("R5", ((left, right),))
    return None


def reduce_word(word, involute=involute_letter):
    """Apply the shrink rules at the leftmost applicable spot until none
    applies.  The reduced form is unique, so the strategy only fixes which
    path gets taken."""
    word = tuple(word)
    if not word:
        raise errors.OutOfRangeError("words must be nonempty")
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            hit = _pair_rule(word[i], word[i + 1], involute)
            if hit is not None:
                word = word[:i] + hit[1] + word[i + 2:]
                changed = True
                break
    return word


def reduce(term):
    """The reduced form of a term, as a term again (its wedges all sit over
    letter pairs)."""
    return word_to_term(reduce_word(r0_flatten(term)))


def theta_cs_equal(u, v):
    """Do the two terms take equal values under every matched interpretation
    in a completely simple semigroup?  Decided by comparing reduced forms."""
    return reduce(u) == reduce(v)


# ---------------------------------------------------------------------------
# full redex enumeration (for the confluence check)


def one_step_results(term, involute=involute_letter):
    """Every term reachable by one application of any rule at any spot."""
    out = []
    if is_letter(term):
        return out
    if term[0] == "W":
        _, u, v = term
        if not (is_letter(u) and is_letter(v)):
            out.append(wedge_term(iota(u), tau(v)))
        for ru in one_step_results(u, involute):
            out.append(wedge_term(ru, v))
        for rv in one_step_results(v, involute):
            out.append(wedge_term(u, rv))
        return out
    parts = term[1:]
    for k, p in enumerate(parts):
        for rp in one_step_results(p, involute):
            out.append(concat_terms(*(parts[:k] + (rp,) + parts[k + 1:])))
    for i in range(len(parts) - 1):
        a, b = parts[i], parts[i + 1]
        sa = a if is_letter(a) else (a[1], a[2]) if is_letter(a[1]) and is_letter(a[2]) else None
        sb = b if is_letter(b) else (b[1], b[2]) if is_letter(b[1]) and is_letter(b[2]) else None
        if sa is None or sb is None:
            continue
        hit = _pair_rule(sa, sb, involute)
        if hit is not None:
            repl = tuple(("W",) + s if is_wedge_letter(s) else s for s in hit[1])
            out.append(concat_terms(*(parts[:i] + repl + parts[i + 2:])))
    return out


def all_normal_forms(term, memo=None, involute=involute_letter):
    """The set of reduced terms reachable by exhausting rules in every
    possible order.  Confluence means this is a singleton."""
    if memo is None:
        memo = {}
    if term in memo:
        return memo[term]
    memo[term] = frozenset()      # cycle guard; rules shorten, so unused
    nexts = one_step_results(term, involute)
    if not nexts:
        result = frozenset([term])
    else:
        result = frozenset().union(
            *(all_normal_forms(n, memo, involute) for n in set(nexts)))
    memo[term] = result
    return result


# ---------------------------------------------------------------------------
# generator moves and derivations


@dataclass(frozen=True)
class UpsilonStep:
    """One application of a generator move to a one-level word.

    rule: "I", "Y3", "Y4" or "Y5".  direction: "fwd" shrinks, "bwd" grows.
    position indexes the leftmost symbol of the affected segment.  letter is
    the free choice a growing Y3/Y4 step needs, and records the letter that
    a shrinking one removed.
    """

    rule: str
    direction: str
    position: int
    letter: object = None

    def inverted(self):
        other = "bwd" if self.direction == "fwd" else "fwd"
        return UpsilonStep(self.rule, other, self.position, self.letter)


def apply_upsilon_step(word, step, involute=involute_letter):
    """Apply one generator move; raises NoMatch if the pattern is absent."""
    word = tuple(word)
    i = step.position
    rule, direction = step.rule, step.direction
    if rule not in ("I", "Y3", "Y4", "Y5"):
        raise errors.UnknownKindError("unknown rule %r" % (rule,))
    if direction not in ("fwd", "bwd"):
        raise errors.UnknownKindError("unknown direction %r" % (direction,))
    if not 0 <= i < len(word):
        raise errors.OutOfRangeError("position %d out of range" % i)

    def fail(what):
        return errors.NoMatchError("%s %s does not match at %d: %s"
                                   % (rule, direction, i, what))

    if rule == "I":
        if direction == "fwd":
            if i + 2 >= len(word):
                raise fail("needs three symbols")
            a, b, c = word[i], word[i + 1], word[i + 2]
            if is_wedge_letter(a) or is_wedge_letter(b) or is_wedge_letter(c):
                raise fail("needs plain letters")
            if b != involute(a) or c != a:
                raise fail("not of the triple-product shape")
            return word[:i] + (a,) + word[i + 3:]
        a = word[i]
        if is_wedge_letter(a):
            raise fail("needs a plain letter")
        return word[:i] + (a, involute(a), a) + word[i + 1:]

    if rule == "Y5":
        if direction == "fwd":
            if i + 1 >= len(word):
                raise fail("needs two symbols")
            a, b = word[i], word[i + 1]
            if is_wedge_letter(a) or is_wedge_letter(b) or a != involute(b):
                raise fail("needs a matched letter pair")
            return word[:i] + ((a, b),) + word[i + 2:]
        s = word[i]
        if not is_wedge_letter(s) or s[0] != involute(s[1]):
            raise fail("needs a wedge-letter over a matched pair")
        return word[:i] + (s[0], s[1]) + word[i + 1:]

    if rule == "Y3":
        if direction == "fwd":
            if i + 1 >= len(word):
                raise fail("needs two symbols")
            a, b = word[i], word[i + 1]
            if not (is_wedge_letter(a) and is_wedge_letter(b)) or a[0] != b[0]:
                raise fail("needs two wedge-letters with equal first parts")
            if step.letter is not None and step.letter != a[1]:
                raise fail("recorded letter disagrees")
            return word[:i] + word[i + 1:]
        s = word[i]
        if not is_wedge_letter(s):
            raise fail("needs a wedge-letter")
        if step.letter is None:
            raise fail("growing needs the free letter")
        return word[:i] + ((s[0], step.letter),) + word[i:]

    if direction == "fwd":                      # Y4
        if i + 1 >= len(word):
            raise fail("needs two symbols")
        a, b = word[i], word[i + 1]
        if not (is_wedge_letter(a) and is_wedge_letter(b)) or a[1] != b[1]:
            raise fail("needs two wedge-letters with equal second parts")
        if step.letter is not None and step.letter != b[0]:
            raise fail("recorded letter disagrees")
        return word[:i] + (a,) + word[i + 2:]
    s = word[i]
    if not is_wedge_letter(s):
        raise fail("needs a wedge-letter")
    if step.letter is None:
        raise fail("growing needs the free letter")
    return word[:i + 1] + ((step.letter, s[1]),) + word[i + 1:]


def apply_derivation(word, steps, involute=involute_letter):
    for step in steps:
        word = apply_upsilon_step(word, step, involute)
    return word


def upsilon_neighbors(word, letters, rule_set=None, max_len=None,
                      involute=involute_letter):
    """All (step, result) pairs reachable in one move, the growing Y3/Y4
    moves quantified over the given letters."""
    rules = ("I", "Y3", "Y4", "Y5") if rule_set is None else tuple(rule_set)
    out = []
    n = len(word)

    def emit(step):
        try:
            result = apply_upsilon_step(word, step, involute)
        except errors.NoMatchError:
            return
        if max_len is None or len(result) <= max_len:
            out.append((step, result))

    for i in range(n):
        sym = word[i]
        if "I" in rules:
            if not is_wedge_letter(sym):
                if n - i >= 3:
                    emit(UpsilonStep("I", "fwd", i))
                if max_len is None or n + 2 <= max_len:
                    emit(UpsilonStep("I", "bwd", i))
        if "Y5" in rules:
            if i + 1 < n:
                emit(UpsilonStep("Y5", "fwd", i))
            if is_wedge_letter(sym):
                emit(UpsilonStep("Y5", "bwd", i))
        if is_wedge_letter(sym):
            if "Y3" in rules:
                if i + 1 < n:
                    emit(UpsilonStep("Y3", "fwd", i, letter=None))
                if max_len is None or n + 1 <= max_len:
                    for y in letters:
                        emit(UpsilonStep("Y3", "bwd", i, letter=y))
            if "Y4" in rules:
                if i + 1 < n:
                    emit(UpsilonStep("Y4", "fwd", i, letter=None))
                if max_len is None or n + 1 <= max_len:
                    for y in letters:
                        emit(UpsilonStep("Y4", "bwd", i, letter=y))
    return out


def word_letters(word, involute=involute_letter):
    """The letters appearing in a word, closed under the involution."""
    seen = set()
    for s in word:
        for x in (s if is_wedge_letter(s) else (s,)):
            seen.add(x)
            seen.add(involute(x))
    return sorted(seen, key=repr)


def _fill_letters(step, word):
    """Record the removed free letter on a shrinking Y3/Y4 step so the step
    list replays and inverts cleanly."""
    if step.rule == "Y3" and step.direction == "fwd" and step.letter is None:
        return UpsilonStep("Y3", "fwd", step.position, word[step.position][1])
    if step.rule == "Y4" and step.direction == "fwd" and step.letter is None:
        return UpsilonStep("Y4", "fwd", step.position,
                           word[step.position + 1][0])
    return step


def derivation_search(u, v, max_steps=10, max_len=8, rule_set=None,
                      letters=None, node_budget=200000,
                      involute=involute_letter):
    """A shortest chain of generator moves from u to v, or None if there is
    none within the step and length bounds.

    Meets in the middle: breadth-first waves grow from both ends, and the
    first common word yields the chain.  Raises BudgetExceeded when the
    explored set outgrows node_budget; a None return means the bounded
    space was searched completely.
    """
    u, v = tuple(u), tuple(v)
    if letters is None:
        letters = sorted(set(word_letters(u, involute))
                         | set(word_letters(v, involute)), key=repr)
    if u == v:
        return []

    # parents[side]: word -> (previous word, step applied to previous)
    parents = [{u: None}, {v: None}]
    frontier = [[u], [v]]
    depth = [0, 0]
    visited = 2

    def rebuild(meet):
        fore = []
        node = meet
        while parents[0][node] is not None:
            prev, step = parents[0][node]
            fore.append(_fill_letters(step, prev))
            node = prev
        fore.reverse()
        back = []
        node = meet
        while parents[1][node] is not None:
            prev, step = parents[1][node]
            back.append(_fill_letters(step, prev).inverted())
            node = prev
        steps = fore + back
        if apply_derivation(u, steps, involute) != v:
            raise errors.FinsemiError("internal error: rebuilt chain is broken")
        return steps

    while frontier[0] and frontier[1] and depth[0] + depth[1] < max_steps:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        new_frontier = []
        meets = []
        for word in frontier[side]:
            for step, result in upsilon_neighbors(word, letters, rule_set,
                                                  max_len, involute):
                if result in parents[side]:
                    continue
                parents[side][result] = (word, step)
                visited += 1
                if visited > node_budget:
                    raise errors.BudgetExceededError(
                        "derivation search exceeded %d words" % node_budget)
                if result in parents[1 - side]:
                    # finishing the wave first keeps the answer shortest:
                    # any shorter chain would also have to meet in this wave
                    meets.append(result)
                new_frontier.append(result)
        if meets:
            return min((rebuild(m) for m in meets), key=len)
        frontier[side] = new_frontier
        depth[side] += 1
    return None


# ---------------------------------------------------------------------------
# evaluation in a semigroup


def evaluate_word(word, semigroup, values):
    """values maps letters to elements; wedge-letters evaluate through the
    semigroup's wedge, words through its product."""
    parts = []
    for s in word:
        if is_wedge_letter(s):
            parts.append(semigroup.wedge(values[s[0]], values[s[1]]))
        else:
            parts.append(values[s])
    return semigroup.product(parts)


def evaluate_term(term, semigroup, values):
    if is_letter(term):
        return values[term]
    if term[0] == "W":
        return semigroup.wedge(evaluate_term(term[1], semigroup, values),
                               evaluate_term(term[2], semigroup, values))
    return semigroup.product(
        [evaluate_term(p, semigroup, values) for p in term[1:]])


def random_matched_assignment(alphabet, semigroup, rng):
    """A random matched interpretation: each base letter goes anywhere, its
    prime goes to one of the inverses of that value."""
    if not semigroup.is_regular:
        raise errors.NotRegularError("matched values need a regular semigroup")
    values = {}
    for x in alphabet.base:
        s = rng.randrange(semigroup.n)
        values[x] = s
        values[x + "'"] = rng.choice(semigroup.inverses_of(s))
    return values

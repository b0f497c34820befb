"""Word combinatorics over a finite ordered alphabet.

Letters are alphabet indices; index 0 is the *greatest* letter.  Two orders
on words are used throughout:

* ``lex``: left-to-right letter comparison where a proper prefix is the
  GREATER word (``x > xx``).  This is deliberately the reverse of the usual
  dictionary convention; every order-sensitive comparison goes through
  :func:`lex_key`.
* ``hall`` (deg-lex): compare constitutions first (the first letter, in
  descending alphabet order, with unequal multiplicity decides), then lex.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

# sentinel greater than every letter value in lex keys
_END = 1


@dataclass(frozen=True)
class Alphabet:
    """Generator names in strictly descending order (first name is greatest)."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("alphabet must not be empty")
        if any(not n for n in names):
            raise ValueError("generator names must be non-empty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")

    def __len__(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def render(self, word):
        if not word:
            return "1"
        return ".".join(self.names[i] for i in word)

    def parse(self, text):
        if text.strip() in ("", "1"):
            return ()
        return tuple(self.index(part) for part in text.strip().split("."))


def constitution(w, n):
    counts = [0] * n
    for i in w:
        counts[i] += 1
    return tuple(counts)


def _cmp(a, b):
    return (a > b) - (a < b)


def gamma_compare(a, b):
    """Compare two constitutions; the greatest letter's multiplicity decides first."""
    if len(a) != len(b):
        raise ValueError("constitutions over different alphabets")
    return _cmp(tuple(a), tuple(b))


@lru_cache(maxsize=None)
def lex_key(w):
    return tuple(-i for i in w) + (_END,)


def lex_compare(u, v):
    return _cmp(lex_key(tuple(u)), lex_key(tuple(v)))


@lru_cache(maxsize=None)
def hall_key(w, n):
    return (constitution(w, n), lex_key(w))


def hall_compare(u, v, n):
    return _cmp(hall_key(tuple(u), n), hall_key(tuple(v), n))


def is_standard(u):
    u = tuple(u)
    if not u:
        raise ValueError("the empty word is not considered for standardness")
    # vw > wv for every proper split; same length, so plain comparison suffices
    ku = tuple(-i for i in u)
    for k in range(1, len(u)):
        rot = u[k:] + u[:k]
        if not ku > tuple(-i for i in rot):
            return False
    return True


def shirshov_factorize(u):
    """Split a standard word as ``u = vw`` with both standard and ``v`` shortest."""
    u = tuple(u)
    if len(u) < 2 or not is_standard(u):
        raise ValueError(f"shirshov_factorize needs a standard word of length >= 2, got {u}")
    for k in range(1, len(u)):
        v, w = u[:k], u[k:]
        if is_standard(v) and is_standard(w):
            return v, w
    raise AssertionError("standard word without Shirshov factorization")


# Bracketing trees: a leaf is an int, an inner node a pair (left, right).


@lru_cache(maxsize=None)
def bracketing(u):
    u = tuple(u)
    if len(u) == 1:
        return u[0]
    v, w = shirshov_factorize(u)
    return (bracketing(v), bracketing(w))


def flatten(tree):
    if isinstance(tree, int):
        return (tree,)
    return flatten(tree[0]) + flatten(tree[1])


def render_tree(tree, alphabet):
    if isinstance(tree, int):
        return alphabet.names[tree]
    return f"[{render_tree(tree[0], alphabet)},{render_tree(tree[1], alphabet)}]"


def is_sl_tree(tree):
    """Check the two conditions defining standard nonassociative words."""
    if isinstance(tree, int):
        return True
    left, right = tree
    v, w = flatten(left), flatten(right)
    if not (is_sl_tree(left) and is_sl_tree(right)):
        return False
    if not (is_standard(v) and is_standard(w) and lex_compare(v, w) > 0):
        return False
    if not isinstance(left, int):
        v2 = flatten(left[1])
        if lex_compare(v2, w) > 0:
            return False
    return True


def standard_words(n, bound):
    """All standard words of length <= bound over n letters, in Hall order."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out = []
    for length in range(1, bound + 1):
        for w in itertools.product(range(n), repeat=length):
            if is_standard(w):
                out.append(w)
    out.sort(key=lambda w: hall_key(w, n))
    return out


def enumerate_basis_words(letters, heights, gamma):
    """Monotonous restricted words with total constitution ``gamma``.

    ``letters`` are words in strictly increasing lex order, ``heights`` the
    matching heights (``None`` for infinity).  Each result is a tuple of
    ``(letter_position, exponent)`` pairs with increasing positions, and the
    list is sorted by the lex order of the flattened words.
    """
    n = len(gamma)
    cons = [constitution(w, n) for w in letters]
    gamma = tuple(gamma)
    results = []

    def rec(start, remaining, acc):
        if not any(remaining):
            results.append(tuple(acc))
            return
        for pos in range(start, len(letters)):
            c = cons[pos]
            limit = heights[pos]
            e = 1
            rem = remaining
            while limit is None or e < limit:
                rem = tuple(r - x for r, x in zip(rem, c))
                if min(rem) < 0:
                    break
                acc.append((pos, e))
                rec(pos + 1, rem, acc)
                acc.pop()
                e += 1

    rec(0, gamma, [])

    def flat(sw):
        return sum((letters[p] * e for p, e in sw), ())

    results.sort(key=lambda sw: lex_key(flat(sw)))
    return results


def constitutions_up_to(n, bound):
    """Every non-zero constitution of total degree <= bound, ascending in the gamma order."""
    out = [c for c in itertools.product(range(bound + 1), repeat=n) if 0 < sum(c) <= bound]
    out.sort()
    return out


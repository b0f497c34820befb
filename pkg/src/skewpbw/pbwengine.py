"""Quotients of G<X> by homogeneous relations and their PBW bases.

Pipeline::

    system = complete(presentation)          # bounded rewriting system
    check_hopf(presentation, system)         # optional diagnostic
    data = hard_superletters(system)         # hard super-letters + heights
    decompose_super(a, data)                 # coordinates in super-words
    pt = build_PT(thin_elements, data)       # replacement generator set
    decompose_PT(a, pt)

Everything is truncated at the presentation's degree bound; since all
relations are homogeneous, truncation never changes results below the bound.
"""

import random
from collections import defaultdict
from dataclasses import dataclass, field

from .coeff import root_order
from .errors import (
    DegenerateQuotientError,
    DimensionMismatch,
    EngineFailure,
    InhomogeneousError,
    NotHopfIdealError,
    NotThinError,
    OutOfBoundError,
)
from .linalg import Echelon, _axpy
from .skewalg import AlgebraElement, TensorElement, coproduct, eval_superletter
from .words import (
    constitution,
    constitutions_up_to,
    enumerate_basis_words,
    hall_key,
    lex_key,
    standard_words,
)

# greater than the lex key of every non-empty word
_SEQ_END = (2,)


# --- presentations and rewriting ------------------------------------------------


class Presentation:
    """Algebra context, homogeneous group-free relations and a degree bound."""

    def __init__(self, ctx, relations, bound):
        if not isinstance(bound, int) or bound < 1:
            raise ValueError(f"bound must be a positive integer, got {bound!r}")
        rels = []
        for r in relations:
            if not r:
                raise ValueError("zero relation")
            if not r.is_group_free():
                raise InhomogeneousError(f"relation {r} carries group factors")
            cons = r.constitution()
            if sum(cons) > bound:
                raise ValueError(f"relation {r} has degree {sum(cons)} above the bound {bound}")
            rels.append(r)
        self.ctx = ctx
        self.relations = tuple(rels)
        self.bound = bound


def _mul_poly(a, b):
    acc = {}
    for u, c in a.items():
        for v, d in b.items():
            _axpy(acc, c, {u + v: d})
    return acc


class ReductionSystem:
    """Rewrite rules ``lead -> tail`` on group-free words, confluent up to the bound."""

    def __init__(self, ctx, bound):
        self.ctx = ctx
        self.bound = bound
        self.rules = {}
        self._lengths = []
        self._memo = {}
        self._normal_cache = {}
        self._one = ctx.one_scalar

    def _add_rule(self, lead, tail):
        self.rules[lead] = tail
        if len(lead) not in self._lengths:
            self._lengths.append(len(lead))
            self._lengths.sort()

    def _clear_memo(self, d):
        self._memo = {w: v for w, v in self._memo.items() if len(w) < d}
        self._normal_cache.clear()

    def _redex(self, w):
        rules = self.rules
        for i in range(len(w)):
            for L in self._lengths:
                if i + L > len(w):
                    break
                if w[i : i + L] in rules:
                    return i, L
        return None

    def is_normal(self, w):
        return self._redex(tuple(w)) is None

    def _check_bound(self, w):
        if len(w) > self.bound:
            raise OutOfBoundError(f"word of degree {len(w)} exceeds the bound {self.bound}")

    def nf_word(self, w):
        """Normal form of a word as a ``word -> Scalar`` dict (do not mutate)."""
        w = tuple(w)
        self._check_bound(w)
        memo = self._memo
        r = memo.get(w)
        if r is not None:
            return r
        stack = [w]
        while stack:
            u = stack[-1]
            if u in memo:
                stack.pop()
                continue
            hit = self._redex(u)
            if hit is None:
                memo[u] = {u: self._one}
                stack.pop()
                continue
            i, L = hit
            pre, suf = u[:i], u[i + L :]
            expanded = [(pre + t + suf, c) for t, c in self.rules[u[i : i + L]].items()]
            missing = [x for x, _ in expanded if x not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc = {}
            for x, c in expanded:
                _axpy(acc, c, memo[x])
            memo[u] = acc
            stack.pop()
        return memo[w]

    def nf_poly(self, poly):
        acc = {}
        for w, c in poly.items():
            _axpy(acc, c, self.nf_word(w))
        return acc

    def nf(self, a):
        acc = {}
        for (g, w), c in a.terms.items():
            for u, d in self.nf_word(w).items():
                _axpy(acc, c, {(g, u): d})
        return AlgebraElement(a.ctx, acc)

    def reduce_random(self, poly, rng):
        """Rewrite with randomly chosen redexes until nothing applies."""
        poly = dict(poly)
        done = {}
        while poly:
            w = rng.choice(sorted(poly))
            c = poly.pop(w)
            self._check_bound(w)
            hits = [
                (i, L)
                for i in range(len(w))
                for L in self._lengths
                if i + L <= len(w) and w[i : i + L] in self.rules
            ]
            if not hits:
                _axpy(done, c, {w: self._one})
                continue
            i, L = rng.choice(hits)
            for t, d in self.rules[w[i : i + L]].items():
                _axpy(poly, c * d, {w[:i] + t + w[i + L :]: self._one})
        return done

    def check_confluence(self, samples=200, seed=0):
        """Compare random-strategy rewriting with ``nf_word`` on random words."""
        rng = random.Random(seed)
        for _ in range(samples):
            length = rng.randint(1, self.bound)
            w = tuple(rng.randrange(self.ctx.n) for _ in range(length))
            if self.reduce_random({w: self._one}, rng) != self.nf_word(w):
                return False, w
        return True, None

    def normal_words(self, gamma):
        """Irreducible words of constitution ``gamma``, in ascending lex order."""
        gamma = tuple(gamma)
        cached = self._normal_cache.get(gamma)
        if cached is not None:
            return cached
        if sum(gamma) > self.bound:
            raise OutOfBoundError(f"constitution {gamma} exceeds the bound {self.bound}")
        out = []
        rules = self.rules
        lengths = self._lengths

        def rec(prefix, remaining):
            if not any(remaining):
                out.append(prefix)
                return
            for a in range(len(remaining)):
                if remaining[a]:
                    w = prefix + (a,)
                    # only suffixes can be new redexes
                    if any(L <= len(w) and w[len(w) - L :] in rules for L in lengths):
                        continue
                    rem = list(remaining)
                    rem[a] -= 1
                    rec(w, tuple(rem))

        rec((), gamma)
        out.sort(key=lex_key)
        self._normal_cache[gamma] = out
        return out

    def dimension(self, gamma):
        return len(self.normal_words(gamma))


def _overlaps(a, b, bound):
    """Words ``a + b[k:]`` where a suffix of ``a`` equals a prefix of ``b``."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k] and len(a) + len(b) - k <= bound:
            yield k


def complete(pres):
    """Degree-by-degree completion of the relations into a rewriting system."""
    ctx, bound = pres.ctx, pres.bound
    n = ctx.n
    one = ctx.one_scalar
    system = ReductionSystem(ctx, bound)
    pending = defaultdict(list)
    for r in pres.relations:
        poly = r.word_part()
        d = len(next(iter(poly)))
        if d == 0:
            raise DegenerateQuotientError(f"relation {r} is a non-zero scalar: the quotient is zero")
        pending[d].append(poly)

    def relation_poly(lead):
        poly = {w: -c for w, c in system.rules[lead].items()}
        poly[lead] = one
        return poly

    for d in range(1, bound + 1):
        polys = pending.pop(d, None)
        if not polys:
            continue
        ech = Echelon(key=lambda w: hall_key(w, n))
        for poly in polys:
            red = system.nf_poly(poly)
            if red:
                ech.add(red)
        if not ech.rows:
            continue
        new = []
        for lead, (row, _) in ech.reduced_rows().items():
            if not lead:
                raise DegenerateQuotientError("completion derived 1 = 0")
            system._add_rule(lead, {w: -c for w, c in row.items() if w != lead})
            new.append(lead)
        system._clear_memo(d)
        for a in new:
            fa = relation_poly(a)
            for b in list(system.rules):
                fb = relation_poly(b)
                for x, fx, y, fy in ((a, fa, b, fb), (b, fb, a, fa)):
                    for k in _overlaps(x, y, bound):
                        comp = _mul_poly(fx, {y[k:]: one})
                        _axpy(comp, -one, _mul_poly({x[:-k]: one}, fy))
                        if comp:
                            pending[len(x) + len(y) - k].append(comp)
                    if a == b:
                        break
    return system


def check_hopf(pres, system):
    """Verify ``(nf (x) nf)(Delta(r)) = 0`` for every relation ``r``."""
    ctx = pres.ctx
    for r in pres.relations:
        acc = {}
        for ((gl, wl), (gr, wr)), c in coproduct(r).terms.items():
            nl, nr = system.nf_word(wl), system.nf_word(wr)
            for ul, cl in nl.items():
                for ur, cr in nr.items():
                    _axpy(acc, c * cl, {((gl, ul), (gr, ur)): cr})
        if acc:
            witness = TensorElement(ctx, acc)
            raise NotHopfIdealError(
                f"relation {r} does not generate a Hopf ideal: its coproduct leaves {witness}",
                witness=witness,
            )


# --- hard super-letters ----------------------------------------------------------


@dataclass(frozen=True)
class Height:
    """``finite`` (value t), ``infinite`` within the bound, or ``untested``."""

    kind: str
    value: int = None
    reason: str = ""

    @property
    def limit(self):
        return self.value if self.kind == "finite" else None

    def divided_by(self, m):
        if self.kind == "finite":
            return Height("finite", self.value // m, self.reason)
        return self

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        return "inf" if self.kind == "infinite" else "untested"


INFINITE_ORDER = "p(u,u) has infinite multiplicative order"
TRIVIAL_ORDER = "p(u,u) = 1"
NOT_REDUCIBLE = "[u]^t is not a combination of smaller super-words within the bound"


@dataclass(frozen=True)
class HardLetter:
    letter: object  # SuperLetter
    height: Height

    @property
    def word(self):
        return self.letter.word


def superword_key(sw, n):
    """Hall order on super-words given as ``((letter_word, exponent), ...)``."""
    flat = sum((w * e for w, e in sw), ())
    seq = []
    for w, e in sw:
        seq.extend([lex_key(w)] * e)
    return (constitution(flat, n), tuple(seq) + (_SEQ_END,))


def render_superword(sw, alphabet):
    if not sw:
        return "1"
    parts = []
    for w, e in sw:
        s = "[" + alphabet.render(w) + "]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "".join(parts)


class PBWData:
    """Hard super-letters with heights and per-constitution super-word bases."""

    def __init__(self, system, letters, echelons, bases):
        self.system = system
        self.ctx = system.ctx
        self.letters = tuple(letters)
        self.by_word = {h.word: h for h in letters}
        self._echelons = echelons
        self.bases = bases
        self.dims = {g: len(b) for g, b in bases.items()}
        self._values = {}

    def height(self, word):
        return self.by_word[tuple(word)].height

    def superword_value(self, sw):
        return _superword_value(self.system, self._values, sw)

    def express(self, gamma, poly):
        gamma = tuple(gamma)
        if not any(gamma):
            return ({(): poly[()]} if poly else {}), {}
        ech = self._echelons.get(gamma)
        if ech is None:
            raise OutOfBoundError(f"constitution {gamma} exceeds the bound {self.system.bound}")
        return ech.express(poly)


def _superword_value(system, cache, sw):
    """Normal form of a super-word value as a ``word -> Scalar`` dict."""
    seq = tuple(w for w, e in sw for _ in range(e))
    if not seq:
        return {(): system._one}
    hit = cache.get(seq)
    if hit is not None:
        return hit
    last = eval_superletter(system.ctx, seq[-1]).value.word_part()
    if len(seq) == 1:
        val = system.nf_poly(last)
    else:
        prev = _superword_value(system, cache, tuple((w, 1) for w in seq[:-1]))
        val = system.nf_poly(_mul_poly(prev, last))
    cache[seq] = val
    return val


def _initial_height(ctx, u, bound):
    """Height from p(u,u) alone, or the power t still to be tested."""
    p = ctx.p_cons(ctx.cons(u), ctx.cons(u))
    t = root_order(p)
    if t is None:
        return Height("infinite", None, INFINITE_ORDER), None
    if t == 1:
        return Height("infinite", None, TRIVIAL_ORDER), None
    if t * len(u) > bound:
        return Height("untested", None, f"t*|D(u)| = {t * len(u)} exceeds the bound"), None
    return None, t


def hard_superletters(system):
    """Find the hard super-letters and their heights up to the bound.

    Constitutions are processed in ascending order.  Inside one constitution
    the tests (hardness of [u], height of [v]) run in ascending letter order
    against the span of basis super-words whose greatest letter is smaller.
    """
    ctx = system.ctx
    n, bound = ctx.n, system.bound
    std = defaultdict(list)
    for u in standard_words(n, bound):
        std[constitution(u, n)].append(u)
    letters = []
    heights = {}
    height_tests = defaultdict(list)  # gamma -> [(v, t)]
    echelons, bases = {}, {}
    values = {}

    for gamma in constitutions_up_to(n, bound):
        tests = {v: t for v, t in height_tests.pop(gamma, [])}
        events = [(lex_key(u), "hard", u) for u in std.get(gamma, [])]
        events += [(lex_key(v), "height", v) for v in tests]
        events.sort()
        cur = sorted(letters, key=lex_key)
        lim = [None if w in tests else heights[w].limit for w in cur]
        cands = []
        for sw in enumerate_basis_words(cur, lim, gamma):
            words = tuple((cur[p], e) for p, e in sw)
            cands.append((lex_key(words[-1][0]), words))
        cands.sort(key=lambda c: c[0])

        ech = Echelon(key=lex_key)
        basis = []
        excluded = set()
        ci = 0

        def insert(sw):
            if not ech.add(_superword_value(system, values, sw), {sw: ctx.one_scalar}):
                raise DimensionMismatch(
                    f"basis super-word {render_superword(sw, ctx.alphabet)} is dependent "
                    f"at constitution {gamma}"
                )
            basis.append(sw)

        def flush(limit):
            nonlocal ci
            while ci < len(cands) and (limit is None or cands[ci][0] < limit):
                sw = cands[ci][1]
                ci += 1
                if sw not in excluded:
                    insert(sw)

        for key, kind, u in events:
            flush(key)
            if kind == "hard":
                val = system.nf_poly(eval_superletter(ctx, u).value.word_part())
                if ech.contains(val):
                    continue
                letters.append(u)
                h, t = _initial_height(ctx, u, bound)
                if h is None:
                    target = tuple(t * c for c in gamma)
                    height_tests[target].append((u, t))
                    h = Height("infinite", None, NOT_REDUCIBLE)  # until tested
                heights[u] = h
                insert(((u, 1),))
            else:
                t = tests[u]
                if ech.contains(_superword_value(system, values, ((u, t),))):
                    heights[u] = Height("finite", t, f"[u]^{t} reduces to smaller super-words")
                    excluded.add(((u, t),))
                else:
                    heights[u] = Height("infinite", None, NOT_REDUCIBLE)
        flush(None)
        dim = system.dimension(gamma)
        if len(basis) != dim:
            raise DimensionMismatch(
                f"constitution {gamma}: {len(basis)} restricted monotonous super-words "
                f"but {dim} normal words (the relations may not generate a Hopf ideal)"
            )
        echelons[gamma] = ech
        bases[gamma] = basis

    hard = [
        HardLetter(eval_superletter(ctx, u), heights[u]) for u in sorted(letters, key=lex_key)
    ]
    data = PBWData(system, hard, echelons, bases)
    data._values = values
    return data


def compute_height(u, system, letters):
    """Height of the hard letter ``u`` given the hard letters ``letters`` below it.

    ``letters`` maps each smaller hard letter word to its Height; the span
    tested is that of restricted monotonous super-words in those letters.
    """
    u = tuple(u)
    ctx = system.ctx
    h, t = _initial_height(ctx, u, system.bound)
    if h is not None:
        return h
    gamma = tuple(t * c for c in ctx.cons(u))
    below = sorted((w for w in letters if lex_key(w) < lex_key(u)), key=lex_key)
    lim = [letters[w].limit for w in below]
    ech = Echelon(key=lex_key)
    values = {}
    for sw in enumerate_basis_words(below, lim, gamma):
        ech.add(_superword_value(system, values, tuple((below[p], e) for p, e in sw)))
    if ech.contains(_superword_value(system, values, ((u, t),))):
        return Height("finite", t, f"[u]^{t} reduces to smaller super-words")
    return Height("infinite", None, NOT_REDUCIBLE)


def decompose_super(a, data):
    """Coordinates of ``nf(a)`` as ``{(group, superword): Scalar}``."""
    system = data.system
    n = data.ctx.n
    slices = defaultdict(dict)
    for (g, w), c in system.nf(a).terms.items():
        slices[(g, constitution(w, n))][w] = c
    out = {}
    for (g, gamma), poly in slices.items():
        combo, rem = data.express(gamma, poly)
        if rem:
            raise EngineFailure(f"element {a} is not spanned by super-words at {gamma}")
        for sw, c in combo.items():
            out[(g, sw)] = c
    return out


def evaluate(dec, data):
    """Inverse of :func:`decompose_super`."""
    ctx = data.ctx
    acc = {}
    for (g, sw), c in dec.items():
        for w, d in data.superword_value(sw).items():
            _axpy(acc, c, {(g, w): d})
    return AlgebraElement(ctx, acc)


def render_decomposition(dec, ctx, render_word):
    if not dec:
        return "0"
    items = sorted(dec.items(), key=lambda kv: (render_word(kv[0][1]), kv[0][0]))
    parts = []
    for (g, sw), c in items:
        mono = render_word(sw)
        if any(g):
            mono = ctx.render_group(g) + " * " + mono
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            s = str(c)
            if sum(1 for x in c.num if x) > 1 or c.den != (1,):
                s = f"({s})"
            parts.append(f"{s} * {mono}")
    return " + ".join(parts)


def build_pbw(pres, hopf_check=True):
    system = complete(pres)
    if hopf_check:
        check_hopf(pres, system)
    return system, hard_superletters(system)


# --- thin elements and P_T --------------------------------------------------------


@dataclass(frozen=True)
class PTLetter:
    """A plain hard letter (``kind='plain'``) or a thin element c_v (``'thin'``)."""

    kind: str
    base: tuple
    m: int
    height: Height
    element: object = field(default=None, compare=False)

    @property
    def label(self):
        return (self.kind, self.base)

    def order_key(self):
        return (lex_key(self.base), 0 if self.kind == "thin" else 1)

    def render(self, alphabet):
        s = "[" + alphabet.render(self.base) + "]"
        if self.kind == "thin":
            return f"c{s}"
        return s


class PTData:
    def __init__(self, data, letters):
        self.data = data
        self.system = data.system
        self.ctx = data.ctx
        self.letters = tuple(sorted(letters, key=PTLetter.order_key))
        self.by_label = {x.label: x for x in self.letters}
        self.thin = {x.base: x for x in self.letters if x.kind == "thin"}
        self._dec_cache = {}
        self._val_cache = {}

    def leading_ptword(self, W):
        """P_T word whose decomposition leads with the super-word ``W``."""
        out = []
        for u, s in W:
            c = self.thin.get(u)
            if c is None:
                out.append((("plain", u), s))
            elif c.m == 1:
                out.append((("thin", u), s))
            else:
                nq, r = divmod(s, c.m)
                if nq:
                    out.append((("thin", u), nq))
                if r:
                    out.append((("plain", u), r))
        return tuple(out)

    def leading_superword(self, U):
        """Inverse of :meth:`leading_ptword`."""
        out = []
        for (kind, u), e in U:
            s = e * self.by_label[(kind, u)].m if kind == "thin" else e
            if out and out[-1][0] == u:
                out[-1] = (u, out[-1][1] + s)
            else:
                out.append((u, s))
        return tuple(out)

    def value(self, U):
        """Normal form of the P_T word ``U`` as an AlgebraElement."""
        hit = self._val_cache.get(U)
        if hit is not None:
            return hit
        ctx = self.ctx
        val = ctx.one()
        for label, e in U:
            x = self.by_label[label]
            base = x.element if x.kind == "thin" else eval_superletter(ctx, x.base).value
            for _ in range(e):
                val = self.system.nf(val * base)
        self._val_cache[U] = val
        return val

    def decompose_word(self, U):
        hit = self._dec_cache.get(U)
        if hit is None:
            hit = decompose_super(self.value(U), self.data)
            self._dec_cache[U] = hit
        return hit

    def render_word(self, U):
        if not U:
            return "1"
        alphabet = self.ctx.alphabet
        parts = []
        for label, e in U:
            s = self.by_label[label].render(alphabet)
            parts.append(s if e == 1 else f"{s}^{e}")
        return "".join(parts)


def _leading(dec, n):
    return max((sw for (_, sw) in dec), key=lambda sw: superword_key(sw, n))


def thin_shape(c, data):
    """``(v, m)`` when ``c`` is thin with leading super-word [v]^m, else NotThinError."""
    n = data.ctx.n
    dec = decompose_super(c, data)
    if not dec:
        raise NotThinError(f"{c} is zero in the quotient")
    lead = _leading(dec, n)
    if len(lead) != 1:
        raise NotThinError(f"leading super-word of {c} is not a power of one super-letter", lead)
    v, m = lead[0]
    ident = data.ctx.identity
    hits = [g for (g, sw) in dec if sw == lead]
    if hits != [ident] or dec[(ident, lead)] != 1:
        raise NotThinError(f"leading super-word of {c} must appear once with coefficient 1", lead)
    h = data.height(v)
    if h.kind == "finite" and h.value % m:
        raise NotThinError(f"power {m} does not divide the height {h.value} of [{v}]", lead)
    return v, m


def build_PT(T, data):
    """P_T from a collection of thin elements (at most one per hard letter)."""
    thin = {}
    for c in T:
        v, m = thin_shape(c, data)
        if v in thin:
            raise NotThinError(f"two thin elements lead with powers of [{data.ctx.alphabet.render(v)}]")
        thin[v] = (m, c)
    out = []
    for h in data.letters:
        v = h.word
        if v not in thin:
            out.append(PTLetter("plain", v, 1, h.height))
            continue
        m, c = thin[v]
        elem = data.system.nf(c)
        if m > 1:
            out.append(PTLetter("plain", v, 1, Height("finite", m, "power of the thin element")))
            out.append(PTLetter("thin", v, m, h.height.divided_by(m), elem))
        else:
            out.append(PTLetter("thin", v, 1, h.height, elem))
    return PTData(data, out)


def decompose_PT(a, pt):
    """Coordinates of ``nf(a)`` as ``{(group, ptword): Scalar}``."""
    n = pt.ctx.n
    rem = dict(decompose_super(a, pt.data))
    out = {}
    while rem:
        W = _leading(rem, n)
        U = pt.leading_ptword(W)
        dU = pt.decompose_word(U)
        ident = pt.ctx.identity
        if dU.get((ident, W)) != 1 or _leading(dU, n) != W:
            raise EngineFailure(f"P_T word {pt.render_word(U)} does not lead with its super-word")
        for g in [g for (g, sw) in rem if sw == W]:
            alpha = rem[(g, W)]
            _axpy(out, alpha, {(g, U): pt.ctx.one_scalar})
            shifted = {(tuple(x + y for x, y in zip(g, g2)), sw): d for (g2, sw), d in dU.items()}
            _axpy(rem, -alpha, shifted)
    return out


def evaluate_PT(dec, pt):
    acc = pt.ctx.zero()
    for (g, U), c in dec.items():
        acc = acc + pt.ctx.group_element(g) * pt.value(U) * c
    return acc

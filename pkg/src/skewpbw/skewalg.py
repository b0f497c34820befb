"""The free character Hopf algebra G<X>.

Elements are finite sums ``c * g * w`` with the group part ``g`` (an integer
exponent vector over the declared group generators) kept to the left of the
word ``w``.  Moving ``g`` left across a word ``u`` multiplies by
``chi^u(g)``; the coproduct is the algebra map with
``Delta(x_i) = x_i (x) 1 + g_{x_i} (x) x_i`` and ``Delta(g) = g (x) g``.
"""

from dataclasses import dataclass

from .coeff import GENERIC, CoeffMode, Scalar
from .errors import InhomogeneousError, ParseError, UndeclaredNameError
from .parsing import parse_with
from .words import Alphabet, bracketing, constitution, flatten, hall_key, lex_key, render_tree


def _add_into(acc, key, c):
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class AlgebraContext:
    """Alphabet, group, degree map ``x_i -> g_{x_i}`` and character table.

    ``table[i][k]`` is ``chi^{x_i}(h_k)`` for the k-th group generator.
    Immutable after construction; caches are private.
    """

    def __init__(self, alphabet, group, degrees, table, mode=GENERIC):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        self.alphabet = alphabet
        self.group = tuple(group)
        self.mode = mode if isinstance(mode, CoeffMode) else CoeffMode(mode)
        self.n = len(alphabet)
        self.r = len(self.group)
        if len(set(self.group)) != self.r:
            raise ValueError(f"duplicate group generator names in {self.group}")
        clash = set(self.group) & set(alphabet.names)
        if clash or "q" in self.group or "q" in alphabet.names:
            raise ValueError(f"names must be distinct and differ from 'q': {sorted(clash) or 'q'}")
        self.degrees = tuple(tuple(int(e) for e in d) for d in degrees)
        if len(self.degrees) != self.n or any(len(d) != self.r for d in self.degrees):
            raise ValueError("degree map must give one group exponent vector per generator")
        rows = []
        for row in table:
            out = []
            for c in row:
                c = c if isinstance(c, Scalar) else self.mode.const(c)
                if c.t != self.mode.t:
                    raise ValueError("character table entry in the wrong coefficient mode")
                if not c:
                    raise ValueError("character values must be non-zero")
                out.append(c)
            rows.append(tuple(out))
        self.table = tuple(rows)
        if len(self.table) != self.n or any(len(row) != self.r for row in self.table):
            raise ValueError("character table must be n_generators x n_group_generators")
        self.identity = (0,) * self.r
        self.one_scalar = self.mode.one()
        self.zero_scalar = self.mode.zero()
        self.pmat = tuple(
            tuple(self.chi_letter(i, self.degrees[j]) for j in range(self.n)) for i in range(self.n)
        )
        self._chi_cache = {}
        self._p_cache = {}
        self._delta_cache = {}
        self._sl_cache = {}

    def _key(self):
        return (self.alphabet, self.group, self.degrees, self.table, self.mode)

    def __eq__(self, other):
        return isinstance(other, AlgebraContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- characters ------------------------------------------------------------

    def chi_letter(self, i, g):
        c = self.one_scalar
        for k, e in enumerate(g):
            if e:
                c = c * self.table[i][k] ** e
        return c

    def chi(self, cons, g):
        """``chi^u(g)`` for a word ``u`` of constitution ``cons``."""
        key = (cons, g)
        c = self._chi_cache.get(key)
        if c is None:
            c = self.one_scalar
            for i, m in enumerate(cons):
                if m:
                    c = c * self.chi_letter(i, g) ** m
            self._chi_cache[key] = c
        return c

    def p_cons(self, cu, cv):
        key = (cu, cv)
        c = self._p_cache.get(key)
        if c is None:
            c = self.one_scalar
            for i, a in enumerate(cu):
                if a:
                    for j, b in enumerate(cv):
                        if b:
                            c = c * self.pmat[i][j] ** (a * b)
            self._p_cache[key] = c
        return c

    def cons(self, w):
        return constitution(w, self.n)

    def g_of(self, cons):
        g = [0] * self.r
        for i, m in enumerate(cons):
            if m:
                for k, e in enumerate(self.degrees[i]):
                    g[k] += m * e
        return tuple(g)

    # -- element constructors --------------------------------------------------

    def element(self, terms):
        return AlgebraElement(self, {k: v for k, v in terms.items() if v})

    def zero(self):
        return AlgebraElement(self, {})

    def scalar(self, c):
        c = c if isinstance(c, Scalar) else self.mode.const(c)
        return AlgebraElement(self, {(self.identity, ()): c} if c else {})

    def one(self):
        return self.scalar(1)

    def word(self, w, c=None):
        return AlgebraElement(self, {(self.identity, tuple(w)): c or self.one_scalar})

    def letter(self, i):
        return self.word((i,))

    def group_element(self, g):
        return AlgebraElement(self, {(tuple(g), ()): self.one_scalar})

    # -- rendering / parsing ---------------------------------------------------

    def render_group(self, g):
        parts = []
        for name, e in zip(self.group, g):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return ".".join(parts) if parts else "1"

    def render_monomial(self, g, w, c=None):
        parts = []
        if c is not None and c != 1:
            if c == -1:
                neg = True
            else:
                neg = False
                s = str(c)
                parts.append(f"({s})" if _needs_parens(c) else s)
        else:
            neg = False
        if any(g):
            parts.append(self.render_group(g))
        if w:
            parts.append(self.alphabet.render(w))
        body = " * ".join(parts) if parts else "1"
        return "-" + body if neg else body

    def parse(self, text):
        return parse_with(text, _ElementSemantics(self))


def _needs_parens(c):
    nonzero = sum(1 for x in c.num if x)
    return nonzero > 1 or c.den != (1,)


class AlgebraElement:
    """Finite sum of ``Scalar * GroupElement * Word`` in normal form."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    # -- basic protocol --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Scalar)):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return AlgebraElement(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            if not other:
                return AlgebraElement(self.ctx, {})
            return AlgebraElement(self.ctx, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self):
        """Inverse of an invertible monomial ``c * g``."""
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not invertible")
        ((g, w), c), = self.terms.items()
        if w:
            raise ValueError(f"{self} is not invertible")
        ginv = tuple(-e for e in g)
        return AlgebraElement(self.ctx, {(ginv, ()): c.inverse()})

    def scalar_value(self):
        """The coefficient of a pure scalar element, else ValueError."""
        if not self.terms:
            return self.ctx.zero_scalar
        if len(self.terms) == 1:
            ((g, w), c), = self.terms.items()
            if not w and not any(g):
                return c
        raise ValueError(f"{self} is not a scalar")

    # -- structure -------------------------------------------------------------

    def constitutions(self):
        n = self.ctx.n
        return {constitution(w, n) for (_, w) in self.terms}

    def is_group_free(self):
        return all(not any(g) for (g, _) in self.terms)

    def is_homogeneous(self):
        return len(self.constitutions()) <= 1

    def constitution(self):
        cons = self.constitutions()
        if len(cons) != 1:
            raise InhomogeneousError(
                f"element {self} is not homogeneous (constitutions {sorted(cons)})", sorted(cons)
            )
        return next(iter(cons))

    def word_part(self):
        """Group-free element as a ``word -> Scalar`` dict."""
        if not self.is_group_free():
            raise InhomogeneousError(f"element {self} carries group factors")
        return {w: c for (_, w), c in self.terms.items()}

    def by_group(self):
        out = {}
        for (g, w), c in self.terms.items():
            out.setdefault(g, {})[w] = c
        return out

    def leading_word(self):
        n = self.ctx.n
        return max((w for (_, w) in self.terms), key=lambda w: hall_key(w, n))

    def coefficient(self, w, g=None):
        g = self.ctx.identity if g is None else tuple(g)
        return self.terms.get((g, tuple(w)), self.ctx.zero_scalar)

    def sorted_terms(self):
        n = self.ctx.n
        return sorted(self.terms.items(), key=lambda kv: (hall_key(kv[0][1], n), kv[0][0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.ctx.render_monomial(g, w, c) for (g, w), c in self.sorted_terms())

    def __repr__(self):
        return f"AlgebraElement({str(self)!r})"


def _mul_terms(ctx, A, B):
    acc = {}
    ident = ctx.identity
    n = ctx.n
    for (g1, w1), c1 in A.items():
        cons1 = None
        for (g2, w2), c2 in B.items():
            c = c1 * c2
            if g2 != ident:
                if cons1 is None:
                    cons1 = constitution(w1, n)
                c = c * ctx.chi(cons1, g2)
                g = _vadd(g1, g2)
            else:
                g = g1
            _add_into(acc, (g, w1 + w2), c)
    return acc


def multiply(a, b):
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ValueError("elements from different algebra contexts")
    return AlgebraElement(a.ctx, _mul_terms(a.ctx, a.terms, b.terms))


def normal_form(ctx, factors):
    """Multiply out a sequence of factors: ``('g', exponents)`` or ``('x', letter)``."""
    result = ctx.one()
    for kind, value in factors:
        if kind == "g":
            result = result * ctx.group_element(value)
        elif kind == "x":
            result = result * ctx.letter(value)
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return result


def bicharacter(ctx, u, v):
    """``p(u, v) = chi^u(g_v)``."""
    return ctx.p_cons(ctx.cons(u), ctx.cons(v))


def skew_bracket(a, b):
    """``[a, b] = ab - p(D(a), D(b)) ba`` for homogeneous group-free operands."""
    if not a or not b:
        return a.ctx.zero()
    for e in (a, b):
        if not e.is_group_free():
            raise InhomogeneousError(f"bracket operand {e} carries group factors")
    ca = a.constitution()
    cb = b.constitution()
    p = a.ctx.p_cons(ca, cb)
    return a * b - (b * a) * p


@dataclass(frozen=True)
class SuperLetter:
    word: tuple
    tree: object
    value: AlgebraElement

    def render(self, alphabet):
        return "[" + alphabet.render(self.word) + "]"

    def render_tree(self, alphabet):
        return render_tree(self.tree, alphabet)


def eval_superletter(ctx, tree):
    """Evaluate a standard bracketing (or a standard word) with skew brackets."""
    if not isinstance(tree, int) and tree and isinstance(tree[0], int) and all(
        isinstance(x, int) for x in tree
    ):
        # a standard word given as a tuple of letters
        tree = bracketing(tuple(tree))
    cached = ctx._sl_cache.get(tree)
    if cached is not None:
        return cached
    if isinstance(tree, int):
        value = ctx.letter(tree)
    else:
        value = skew_bracket(eval_superletter(ctx, tree[0]).value, eval_superletter(ctx, tree[1]).value)
    word = flatten(tree)
    lead = max((w for (_, w) in value.terms), key=lex_key)
    if lead != word or value.terms[(ctx.identity, word)] != 1:
        raise AssertionError(f"super-letter {word} has leading word {lead}: order bug")
    sl = SuperLetter(word, tree, value)
    ctx._sl_cache[tree] = sl
    return sl


def strip_group(a):
    """Keep exactly the terms whose group part is the identity."""
    ident = a.ctx.identity
    return AlgebraElement(a.ctx, {k: c for k, c in a.terms.items() if k[0] == ident})


# --- tensors --------------------------------------------------------------------


class TensorElement:
    """Finite sum of ``c * (g, w) (x) (g', w')``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return TensorElement(self.ctx, acc)

    def __neg__(self):
        return TensorElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            if not other:
                return TensorElement(self.ctx, {})
            return TensorElement(self.ctx, {k: c * other for k, c in self.terms.items()})
        ctx = self.ctx
        n = ctx.n
        acc = {}
        for ((gl1, wl1), (gr1, wr1)), c1 in self.terms.items():
            cl, cr = constitution(wl1, n), constitution(wr1, n)
            for ((gl2, wl2), (gr2, wr2)), c2 in other.terms.items():
                c = c1 * c2 * ctx.chi(cl, gl2) * ctx.chi(cr, gr2)
                key = ((_vadd(gl1, gl2), wl1 + wl2), (_vadd(gr1, gr2), wr1 + wr2))
                _add_into(acc, key, c)
        return TensorElement(ctx, acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        ctx = self.ctx
        one = ((ctx.identity, ()), (ctx.identity, ()))
        result = TensorElement(ctx, {one: ctx.one_scalar})
        for _ in range(n):
            result = result * self
        return result

    @classmethod
    def pure(cls, a, b):
        """``a (x) b`` for two algebra elements."""
        acc = {}
        for kl, cl in a.terms.items():
            for kr, cr in b.terms.items():
                _add_into(acc, (kl, kr), cl * cr)
        return cls(a.ctx, acc)

    def sorted_terms(self):
        n = self.ctx.n

        def key(kv):
            (gl, wl), (gr, wr) = kv[0]
            return (hall_key(wl, n), gl, hall_key(wr, n), gr)

        return sorted(self.terms.items(), key=key, reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for ((gl, wl), (gr, wr)), c in self.sorted_terms():
            parts.append(f"{ctx.render_monomial(gl, wl, c)} (x) {ctx.render_monomial(gr, wr)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElement({str(self)!r})"


def _delta_word(ctx, w):
    cached = ctx._delta_cache.get(w)
    if cached is not None:
        return cached
    n = ctx.n
    acc = {}
    one = ctx.one_scalar

    # each letter goes either to the right factor (leaving g_x on the left)
    # or stays on the left; moving g_{a_j} past left letters a_i (i < j)
    # costs p(a_i, a_j)
    def rec(j, left, right, gl, coef):
        if j == len(w):
            _add_into(acc, ((gl, tuple(left)), (ctx.identity, tuple(right))), coef)
            return
        a = w[j]
        left.append(a)
        rec(j + 1, left, right, gl, coef)
        left.pop()
        right.append(a)
        c = coef * ctx.p_cons(constitution(left, n), constitution((a,), n)) if left else coef
        rec(j + 1, left, right, _vadd(gl, ctx.degrees[a]), c)
        right.pop()

    rec(0, [], [], ctx.identity, one)
    ctx._delta_cache[w] = acc
    return acc


def coproduct(a):
    ctx = a.ctx
    acc = {}
    for (g, w), c in a.terms.items():
        for ((gl, wl), (gr, wr)), d in _delta_word(ctx, w).items():
            _add_into(acc, ((_vadd(g, gl), wl), (_vadd(g, gr), wr)), c * d)
    return TensorElement(ctx, acc)


# --- parsing --------------------------------------------------------------------


class _ElementSemantics:
    def __init__(self, ctx):
        self.ctx = ctx

    def number(self, n):
        return self.ctx.scalar(n)

    def name(self, name):
        ctx = self.ctx
        if name == "q":
            return ctx.scalar(ctx.mode.q())
        if name in ctx.alphabet.names:
            return ctx.letter(ctx.alphabet.index(name))
        if name in ctx.group:
            g = [0] * ctx.r
            g[ctx.group.index(name)] = 1
            return ctx.group_element(tuple(g))
        raise UndeclaredNameError(f"undeclared name {name!r}")

    def divide(self, a, b):
        try:
            c = b.scalar_value()
        except ValueError:
            raise ParseError(f"can only divide by scalars, not by {b}") from None
        if not c:
            raise ParseError("division by zero")
        return a * c.inverse()

    def power(self, a, n):
        if n < 0:
            try:
                return a.inverse() ** (-n)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"negative power of non-invertible {a}") from None
        return a**n

    def bracket(self, a, b):
        return skew_bracket(a, b)

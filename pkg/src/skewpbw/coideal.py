"""Right coideal subalgebras U containing the group algebra.

U is given by homogeneous group-free generators.  Its group-free slice is
computed componentwise (``close_basis``); the coideal property is checked on
the generators; the PBW generators c_u are read off as pivots ``[u]^m`` of
U's components written in super-word coordinates.
"""

from dataclasses import dataclass, field

from .coeff import root_order
from .errors import CoidealViolation, DimensionMismatch, InhomogeneousError, MinimalPowerViolation
from .linalg import Echelon, _axpy
from .pbwengine import (
    build_PT,
    decompose_PT,
    decompose_super,
    evaluate,
    superword_key,
    thin_shape,
)
from .skewalg import AlgebraElement, TensorElement, coproduct
from .words import constitution, constitutions_up_to, enumerate_basis_words, lex_key


class CoidealInput:
    def __init__(self, system, generators):
        self.system = system
        self.ctx = system.ctx
        gens = []
        for y in generators:
            groups = {g for (g, _) in y.terms}
            if len(groups) == 1 and groups != {self.ctx.identity}:
                # g*y and y generate the same U since g is invertible in U
                (g,) = groups
                y = self.ctx.group_element(tuple(-e for e in g)) * y
            if not y.is_group_free():
                raise InhomogeneousError(f"coideal generator {y} mixes group factors")
            cons = y.constitution() if y else None
            if cons is not None and sum(cons) > system.bound:
                raise ValueError(f"coideal generator {y} exceeds the bound {system.bound}")
            gens.append(y)
        self.generators = tuple(gens)


@dataclass
class CoidealBasis:
    """Row-reduced group-free components of U, keyed by constitution."""

    system: object
    components: dict

    def dimension(self, gamma):
        gamma = tuple(gamma)
        if not any(gamma):
            return 1
        comp = self.components.get(gamma)
        return len(comp) if comp else 0

    def contains_poly(self, gamma, poly):
        if not poly:
            return True
        if not any(gamma):
            return True
        comp = self.components.get(tuple(gamma))
        return comp is not None and comp.contains(poly)

    def contains(self, a):
        """Membership of an arbitrary element (group factors allowed)."""
        n = self.system.ctx.n
        slices = {}
        for (g, w), c in self.system.nf(a).terms.items():
            slices.setdefault((g, constitution(w, n)), {})[w] = c
        return all(self.contains_poly(gamma, p) for (_, gamma), p in slices.items())

    def rows(self, gamma):
        comp = self.components.get(tuple(gamma))
        return [row for row, _ in comp.rows.values()] if comp else []


def _mul(a, b):
    acc = {}
    for u, c in a.items():
        for v, d in b.items():
            _axpy(acc, c, {u + v: d})
    return acc


def close_basis(inp):
    """Span of all products of generators, per constitution, up to the bound."""
    system = inp.system
    n = system.ctx.n
    gens = []
    for y in inp.generators:
        y = system.nf(y)
        if y:
            gens.append((y.constitution(), y.word_part()))
    comps = {}
    for gamma in constitutions_up_to(n, system.bound):
        ech = Echelon(key=lex_key)
        for cy, y in gens:
            if cy == gamma:
                ech.add(y)
                continue
            delta = tuple(a - b for a, b in zip(gamma, cy))
            if min(delta) < 0 or delta not in comps:
                continue
            for row, _ in list(comps[delta].rows.values()):
                ech.add(system.nf_poly(_mul(row, y)))
                ech.add(system.nf_poly(_mul(y, row)))
        if ech.rows:
            comps[gamma] = ech
    return CoidealBasis(system, comps)


@dataclass
class Validation:
    ok: bool
    generator: object = None
    witness: object = None

    def raise_if_failed(self):
        if not self.ok:
            raise CoidealViolation(
                f"not a right coideal: Delta({self.generator}) has the term {self.witness} "
                "whose left factor lies outside U",
                witness=self.witness,
            )


def validate_coideal(inp, basis=None):
    """Check ``Delta(y) in U (x) H`` for each generator ``y``."""
    basis = basis or close_basis(inp)
    system = inp.system
    ctx = system.ctx
    n = ctx.n
    for y in inp.generators:
        y = system.nf(y)
        # left factors collected per right basis element (group, normal word)
        lefts = {}
        for ((gl, wl), (gr, wr)), c in coproduct(y).terms.items():
            nl, nr = system.nf_word(wl), system.nf_word(wr)
            for ur, cr in nr.items():
                left = lefts.setdefault((gr, ur), {})
                for ul, cl in nl.items():
                    _axpy(left, c * cr, {(gl, ul): cl})
        for right in sorted(lefts, key=lambda k: (constitution(k[1], n), lex_key(k[1]), k[0])):
            slices = {}
            for (g, w), c in lefts[right].items():
                slices.setdefault((g, constitution(w, n)), {})[w] = c
            for (g, gamma), poly in sorted(slices.items(), key=lambda kv: kv[0]):
                if not basis.contains_poly(gamma, poly):
                    witness = TensorElement(ctx, {((g, w), right): c for w, c in poly.items()})
                    return Validation(False, y, witness)
    return Validation(True)


@dataclass
class TEntry:
    word: tuple
    m: int
    element: AlgebraElement


@dataclass
class ExtractionResult:
    T: list
    pt: object
    diagnostics: dict = field(default_factory=dict)

    def t_words(self):
        return {e.word for e in self.T}


def extract_T(basis, data):
    """The elements c_u: for each hard letter, the first power [u]^m led by U."""
    system = data.system
    ctx = data.ctx
    n = ctx.n
    entries, diagnostics = [], {}
    for h in data.letters:
        u = h.word
        found = None
        m = 1
        while m * len(u) <= system.bound:
            gamma = tuple(m * c for c in ctx.cons(u))
            rows = basis.rows(gamma)
            if rows:
                ech = Echelon(key=lambda sw: superword_key(sw, n))
                for row in rows:
                    elem = AlgebraElement(ctx, {(ctx.identity, w): c for w, c in row.items()})
                    ech.add({sw: c for (_, sw), c in decompose_super(elem, data).items()})
                target = ((u, m),)
                reduced = ech.reduced_rows()
                if target in reduced:
                    row = reduced[target][0]
                    found = evaluate({(ctx.identity, sw): c for sw, c in row.items()}, data)
                    break
            m += 1
        if found is None:
            diagnostics[u] = "not represented within bound"
            continue
        p = ctx.p_cons(ctx.cons(u), ctx.cons(u))
        if m != 1 and m != root_order(p):
            raise MinimalPowerViolation(
                f"minimal power {m} of [{ctx.alphabet.render(u)}] is neither 1 nor the order of p(u,u)"
            )
        v, mm = thin_shape(found, data)
        assert (v, mm) == (u, m)
        diagnostics[u] = f"m = {m}"
        entries.append(TEntry(u, m, found))
    pt = build_PT([e.element for e in entries], data)
    return ExtractionResult(entries, pt, diagnostics)


@dataclass
class MembershipResult:
    member: bool
    decomposition: dict
    offending: object = None


def membership(a, res):
    """Membership via the P_T decomposition: every letter used must be a c_u."""
    dec = decompose_PT(a, res.pt)
    for (_, U), _c in sorted(dec.items(), key=lambda kv: res.pt.render_word(kv[0][1])):
        for label, _e in U:
            if label[0] != "thin":
                return MembershipResult(False, dec, res.pt.by_label[label])
    return MembershipResult(True, dec)


def t_letters(res):
    return [x for x in res.pt.letters if x.kind == "thin"]


def t_word_count(res, gamma):
    letters = t_letters(res)
    words = [x.base * x.m for x in letters]
    heights = [x.height.limit for x in letters]
    order = sorted(range(len(words)), key=lambda i: lex_key(words[i]))
    return len(enumerate_basis_words([words[i] for i in order], [heights[i] for i in order], gamma))


def t_words_span_check(res, basis, gamma):
    """Restricted monotonous T-words at ``gamma``: independent and inside U."""
    pt = res.pt
    system = basis.system
    letters = t_letters(res)
    words = [x.base * x.m for x in letters]
    heights = [x.height.limit for x in letters]
    ech = Echelon(key=lex_key)
    for sw in enumerate_basis_words(words, heights, gamma):
        U = tuple((letters[p].label, e) for p, e in sw)
        val = pt.value(U)
        if not basis.contains(val):
            return False
        if not ech.add(val.word_part()):
            return False
    return len(ech) == basis.dimension(gamma)


def coideal_report(inp, basis, res):
    """Structured summary; raises DimensionMismatch if T-words and U disagree."""
    ctx = inp.ctx
    n = ctx.n
    dims = []
    for gamma in constitutions_up_to(n, inp.system.bound):
        du = basis.dimension(gamma)
        dt = t_word_count(res, gamma)
        if du != dt:
            raise DimensionMismatch(
                f"constitution {gamma}: dim U = {du} but {dt} restricted monotonous T-words"
            )
        if du:
            dims.append({"constitution": list(gamma), "dim_U": du, "t_words": dt})
    alphabet = ctx.alphabet
    return {
        "valid": True,
        "T": [
            {
                "letter": "[" + alphabet.render(e.word) + "]",
                "m": e.m,
                "height": str(res.pt.by_label[("thin", e.word)].height),
                "element": str(e.element),
            }
            for e in res.T
        ],
        "P_T": [
            {"letter": x.render(alphabet), "kind": x.kind, "height": str(x.height)}
            for x in res.pt.letters
        ],
        "not_represented": [
            "[" + alphabet.render(u) + "]"
            for u, d in res.diagnostics.items()
            if d.startswith("not")
        ],
        "dimensions": dims,
    }


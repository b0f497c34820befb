import math
import random

import pytest
from conftest import ONE, Q, bundled, one_letter, two_letter, zeta3
from oracles import in_ideal, quotient_dimension

from skewpbw.errors import DegenerateQuotientError, NotHopfIdealError, NotThinError, OutOfBoundError
from skewpbw.pbwengine import (
    Presentation,
    build_PT,
    build_pbw,
    complete,
    compute_height,
    decompose_PT,
    decompose_super,
    evaluate,
    evaluate_PT,
    hard_superletters,
    superword_key,
)
from skewpbw.skewalg import TensorElement, coproduct, eval_superletter
from skewpbw.words import constitutions_up_to, enumerate_basis_words, lex_key, standard_words

X1, X2 = 0, 1


def test_complete_without_relations():
    ctx = two_letter(Q, Q**-1, ONE, Q)
    s = complete(Presentation(ctx, [], 4))
    assert s.rules == {}
    assert s.dimension((2, 2)) == 6


def test_truncated_rank_one():
    m, z = zeta3()
    ctx = one_letter(z, m)
    s = complete(Presentation(ctx, [ctx.parse("x^3")], 6))
    assert s.rules == {(0, 0, 0): {}}
    assert [s.dimension((k,)) for k in range(6)] == [1, 1, 1, 0, 0, 0]
    assert not s.nf(ctx.parse("x^3"))


def test_qserre_completion(qserre):
    _, ctx, pres, s, _ = qserre
    assert s.dimension((2, 2)) == 3
    ok, bad = s.check_confluence(samples=300, seed=1)
    assert ok, bad
    serre = pres.relations[0]
    w = ctx.word((X1, X1, X2))
    assert s.nf(w) == w - serre
    assert s.nf(s.nf(w)) == s.nf(w)
    normal = ctx.word((X1, X2, X1))
    assert s.nf(normal) == normal


def test_qserre_dimensions_match_ideal_oracle(qserre):
    _, ctx, pres, s, _ = qserre
    rels = [r.word_part() for r in pres.relations]
    for gamma in constitutions_up_to(2, 6):
        assert s.dimension(gamma) == quotient_dimension(rels, gamma), gamma


def test_nf_differs_by_ideal_element(qserre):
    _, ctx, pres, s, _ = qserre
    rels = [r.word_part() for r in pres.relations]
    for gamma in [(2, 1), (2, 2), (3, 2)]:
        for w in [w for w in _all_words(gamma) if not s.is_normal(w)]:
            diff = {w: ONE}
            for u, c in s.nf_word(w).items():
                diff[u] = diff.get(u, 0 * c) - c
            assert in_ideal(rels, gamma, {k: v for k, v in diff.items() if v})


def _all_words(gamma):
    from oracles import words_of

    return words_of(gamma)


def test_nf_errors():
    ctx = two_letter(Q, Q**-1, ONE, Q)
    s = complete(Presentation(ctx, [], 3))
    with pytest.raises(OutOfBoundError):
        s.nf(ctx.parse("x1^4"))
    with pytest.raises(DegenerateQuotientError):
        complete(Presentation(ctx, [ctx.parse("1")], 3))
    with pytest.raises(ValueError):
        Presentation(ctx, [ctx.zero()], 3)
    with pytest.raises(ValueError):
        Presentation(ctx, [ctx.parse("x1^4")], 3)


def test_generic_cube_is_not_hopf():
    ctx = one_letter(Q)
    with pytest.raises(NotHopfIdealError) as err:
        build_pbw(Presentation(ctx, [ctx.parse("x^3")], 6))
    assert err.value.witness


@pytest.mark.parametrize("n", [2, 3])
def test_free_algebra_every_standard_word_is_hard(n):
    names = tuple(f"x{i + 1}" for i in range(n))
    from skewpbw.skewalg import AlgebraContext

    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    table = tuple(tuple(Q ** (i - 2 * j + 1) for j in range(n)) for i in range(n))
    ctx = AlgebraContext(names, tuple(f"g{i + 1}" for i in range(n)), ident, table)
    _, data = build_pbw(Presentation(ctx, [], 5))
    assert sorted(h.word for h in data.letters) == sorted(standard_words(n, 5))
    assert all(h.height.kind == "infinite" for h in data.letters)
    for gamma in constitutions_up_to(n, 5):
        multinomial = math.factorial(sum(gamma)) // math.prod(math.factorial(k) for k in gamma)
        assert data.dims[gamma] == multinomial


def test_qserre_hard_letters(qserre):
    *_, data = qserre
    assert [h.word for h in data.letters] == [(X2,), (X1, X2), (X1,)]
    assert all(str(h.height) == "inf" for h in data.letters)
    for (a, b), d in data.dims.items():
        assert d == min(a, b) + 1


def test_heights():
    m, z = zeta3()
    ctx = one_letter(z, m)
    s, data = build_pbw(Presentation(ctx, [ctx.parse("x^3")], 6))
    assert [(h.word, str(h.height)) for h in data.letters] == [((0,), "3")]
    assert compute_height((0,), s, {}).value == 3
    # same root, no relation: x^3 is not reducible
    s2, data2 = build_pbw(Presentation(ctx, [], 6))
    assert data2.letters[0].height.kind == "infinite"
    # beyond the bound
    s3, data3 = build_pbw(Presentation(ctx, [], 2))
    assert data3.letters[0].height.kind == "untested"
    ctxg = one_letter(Q)
    sg = complete(Presentation(ctxg, [], 4))
    assert compute_height((0,), sg, {}).kind == "infinite"


def test_height_of_bracket_in_qserre(qserre):
    _, ctx, _, s, data = qserre
    assert ctx.p_cons((1, 1), (1, 1)) == Q
    letters = {h.word: h.height for h in data.letters if lex_key(h.word) < lex_key((X1, X2))}
    assert str(compute_height((X1, X2), s, letters)) == "inf"


def test_decompose_super_examples():
    ctx = two_letter(Q, Q**-1, ONE, Q)
    s, data = build_pbw(Presentation(ctx, [], 4))
    ident = ctx.identity
    assert decompose_super(ctx.parse("x1 x2"), data) == {
        (ident, (((X1, X2), 1),)): ONE,
        (ident, (((X2,), 1), ((X1,), 1))): Q**-1,
    }
    assert decompose_super(ctx.parse("x2 x1"), data) == {(ident, (((X2,), 1), ((X1,), 1))): ONE}
    assert decompose_super(ctx.parse("x1 x2"), data) == decompose_super(
        eval_superletter(ctx, X1).value * eval_superletter(ctx, X2).value, data
    )


@pytest.mark.parametrize("name", ["free2", "qserre", "truncated3"])
def test_decompose_round_trip(name):
    _, ctx, _, s, data = bundled(name)
    rng = random.Random(5)
    for _ in range(30):
        a = ctx.zero()
        for _ in range(3):
            w = tuple(rng.randrange(ctx.n) for _ in range(rng.randint(0, 5)))
            g = tuple(rng.randint(-1, 1) for _ in range(ctx.r))
            a = a + ctx.group_element(g) * ctx.word(w) * rng.randint(-2, 2)
        dec = decompose_super(a, data)
        assert evaluate(dec, data) == s.nf(a)
        for (_, sw), _c in dec.items():
            keys = [lex_key(u) for u, _e in sw]
            assert keys == sorted(keys) and len(set(keys)) == len(keys)
            for u, e in sw:
                h = data.height(u).limit
                assert h is None or e < h


def test_dimension_identity_on_bundled():
    for name in ["free2", "free3", "qserre", "truncated3"]:
        _, ctx, _, s, data = bundled(name)
        letters = [h.word for h in data.letters]
        heights = [h.height.limit for h in data.letters]
        for gamma in constitutions_up_to(ctx.n, s.bound):
            assert len(enumerate_basis_words(letters, heights, gamma)) == s.dimension(gamma)


def test_decomposition_is_compatible_with_hall_order(qserre):
    _, ctx, _, s, data = qserre
    n = ctx.n
    rng = random.Random(11)
    letters = [h.word for h in data.letters]
    for _ in range(60):
        seq = [rng.choice(letters) for _ in range(rng.randint(1, 4))]
        if sum(len(u) for u in seq) > s.bound:
            continue
        val = ctx.one()
        for u in seq:
            val = val * eval_superletter(ctx, u).value
        top = superword_key(tuple((u, 1) for u in seq), n)
        for (_, sw), _c in decompose_super(val, data).items():
            assert superword_key(sw, n) <= top


def test_build_pt_examples(rank1_generic):
    ctx, s, data = rank1_generic
    assert [(x.kind, x.base) for x in build_PT([], data).letters] == [("plain", (0,))]
    pt = build_PT([ctx.parse("x^2 + x")], data)
    assert [(x.kind, str(x.height)) for x in pt.letters] == [("thin", "inf"), ("plain", "2")]
    same = build_PT([ctx.parse("x")], data)
    assert [(x.kind, x.m, str(x.height)) for x in same.letters] == [("thin", 1, "inf")]
    with pytest.raises(NotThinError):
        build_PT([ctx.parse("2 x^2")], data)
    with pytest.raises(NotThinError):
        build_PT([ctx.parse("x^2"), ctx.parse("x^3")], data)
    with pytest.raises(NotThinError):
        build_PT([ctx.parse("x^2 + g x^2")], data)


def test_build_pt_rejects_non_dividing_power():
    m, z = zeta3()
    ctx = one_letter(z, m)
    s, data = build_pbw(Presentation(ctx, [ctx.parse("x^3")], 6))
    with pytest.raises(NotThinError, match="divide"):
        build_PT([ctx.parse("x^2")], data)


def test_decompose_pt_cube(rank1_generic):
    ctx, s, data = rank1_generic
    pt = build_PT([ctx.parse("x^2 + x")], data)
    c, x = ("thin", (0,)), ("plain", (0,))
    ident = ctx.identity
    dec = decompose_PT(ctx.parse("x^3"), pt)
    assert dec == {(ident, ((c, 1), (x, 1))): ONE, (ident, ((c, 1),)): -ONE, (ident, ((x, 1),)): ONE}
    assert decompose_PT(ctx.parse("(x^2+x)^2"), pt) == {(ident, ((c, 2),)): ONE}
    assert decompose_PT(ctx.parse("x^3"), build_PT([], data)) == {(ident, ((x, 3),)): ONE}


def test_pt_basis_and_leading_conversion(rank1_generic):
    ctx, s, data = rank1_generic
    pt = build_PT([ctx.parse("x^2 + x")], data)
    c, x = ("thin", (0,)), ("plain", (0,))
    ident = ctx.identity
    for d in range(9):
        # P_T words of degree d: c^n x^r with 2n + r = d, r < 2
        words = [((c, n), (x, d - 2 * n)) for n in range(d // 2 + 1) if d - 2 * n < 2]
        words = [tuple(p for p in w if p[1]) for w in words]
        assert len(words) == 1
        for U in words:
            W = pt.leading_superword(U)
            assert W == (((0,), d),) if d else W == ()
            assert pt.leading_ptword(W) == U
            dec = pt.decompose_word(U)
            assert dec[(ident, W)] == 1
            assert max(superword_key(sw, 1) for (_, sw) in dec) == superword_key(W, 1)
        # spans and independent: x^d decomposes into P_T words of degree <= d
        a = ctx.parse(f"x^{d}") if d else ctx.one()
        dec = decompose_PT(a, pt)
        assert evaluate_PT(dec, pt) == s.nf(a)


@pytest.mark.parametrize("name", ["qserre", "coideal_commuting", "rank1_root3_free"])
def test_pt_coproduct_shape(name):
    from skewpbw.coideal import CoidealInput, close_basis, extract_T

    pf, ctx, _, s, data = bundled(name)
    basis = close_basis(CoidealInput(s, pf.coideal_generators(ctx)))
    pt = extract_T(basis, data).pt
    n = ctx.n
    for theta in pt.letters:
        val = theta.element if theta.kind == "thin" else s.nf(eval_superletter(ctx, theta.base).value)
        if sum(val.constitution()) * 2 > s.bound:
            continue
        g = ctx.g_of(val.constitution())
        rest = coproduct(val) - TensorElement.pure(val, ctx.one()) - TensorElement.pure(ctx.group_element(g), val)
        acc = {}
        for ((gl, wl), (gr, wr)), c in rest.terms.items():
            left = decompose_PT(ctx.group_element(gl) * ctx.word(wl), pt)
            right = decompose_PT(ctx.group_element(gr) * ctx.word(wr), pt)
            for kl, cl in left.items():
                for kr, cr in right.items():
                    key = (kl, kr)
                    acc[key] = acc.get(key, 0 * c) + c * cl * cr
        key_theta = theta.order_key()
        for ((_, U), (_, V)), coeff in acc.items():
            if not coeff:
                continue
            starts = [pt.by_label[W[0][0]].order_key() for W in (U, V) if W]
            assert any(k < key_theta for k in starts), (theta, U, V)

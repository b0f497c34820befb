"""Line-based presentation files.

::

    # comment
    generators x1 x2
    group g1 g2
    degree x1 g1
    degree x2 g2
    character generic            # or: character root 3
    p x1 g1 q
    p x1 g2 q^-1
    relation [x1,[x1,x2]]
    bound 6
    coideal x1 ; [x1,x2]

Missing ``p`` entries default to 1.
"""

from dataclasses import dataclass
from importlib import resources

from .coeff import CoeffMode, parse_scalar
from .errors import InhomogeneousError, ParseError, UndeclaredNameError
from .pbwengine import Presentation
from .skewalg import AlgebraContext

_KEYWORDS = ("generators", "group", "degree", "character", "p", "relation", "bound", "coideal")


@dataclass(frozen=True)
class PresentationFile:
    generators: tuple
    group: tuple
    degrees: tuple  # one group exponent vector per generator
    mode: CoeffMode
    table: tuple  # table[i][k] = chi^{x_i}(h_k), Scalars
    relations: tuple  # canonical rendered elements
    bound: int
    coideal: tuple = None

    def context(self):
        return AlgebraContext(self.generators, self.group, self.degrees, self.table, self.mode)

    def presentation(self, ctx=None):
        ctx = ctx or self.context()
        return Presentation(ctx, [ctx.parse(r) for r in self.relations], self.bound)

    def coideal_generators(self, ctx):
        return [ctx.parse(e) for e in self.coideal or ()]


def _parse_group_word(text, group, line):
    g = [0] * len(group)
    text = text.strip()
    if text in ("", "1"):
        return tuple(g)
    for part in text.split("."):
        name, _, exp = part.partition("^")
        name = name.strip()
        if name not in group:
            raise UndeclaredNameError(f"undeclared group generator {name!r}", line)
        try:
            e = int(exp) if exp else 1
        except ValueError:
            raise ParseError(f"bad exponent {exp!r} in group word {text!r}", line) from None
        g[group.index(name)] += e
    return tuple(g)


def _render_group_word(g, group):
    parts = [name if e == 1 else f"{name}^{e}" for name, e in zip(group, g) if e]
    return ".".join(parts) if parts else "1"


def parse_presentation(text):
    lines = {}
    seen_single = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        rest = rest.strip()
        if head not in _KEYWORDS:
            raise ParseError(f"unknown declaration {head!r}", lineno)
        if head in ("generators", "group", "character", "bound", "coideal"):
            if head in seen_single:
                raise ParseError(f"duplicate {head!r} declaration", lineno)
            seen_single[head] = lineno
        lines.setdefault(head, []).append((lineno, rest))

    def single(key, required=True):
        entries = lines.get(key)
        if not entries:
            if required:
                raise ParseError(f"missing {key!r} declaration")
            return None, None
        return entries[0]

    ln, rest = single("generators")
    generators = tuple(rest.split())
    if not generators:
        raise ParseError("no generators declared", ln)
    if len(set(generators)) != len(generators):
        raise ParseError("duplicate generator names", ln)
    ln, rest = single("group")
    group = tuple(rest.split())
    if not group:
        raise ParseError("no group generators declared", ln)
    if len(set(group)) != len(group) or set(group) & set(generators) or "q" in group + generators:
        raise ParseError("group and generator names must be distinct and differ from 'q'", ln)

    ln, rest = single("character", required=False)
    if ln is None or rest == "generic":
        mode = CoeffMode()
    else:
        parts = rest.split()
        if len(parts) != 2 or parts[0] != "root" or not parts[1].isdigit():
            raise ParseError(f"expected 'character generic' or 'character root <t>', got {rest!r}", ln)
        try:
            mode = CoeffMode(int(parts[1]))
        except ValueError as e:
            raise ParseError(str(e), ln) from None

    degrees = {}
    for ln, rest in lines.get("degree", []):
        name, _, word = rest.partition(" ")
        if name not in generators:
            raise UndeclaredNameError(f"undeclared generator {name!r}", ln)
        if name in degrees:
            raise ParseError(f"duplicate degree for {name!r}", ln)
        degrees[name] = _parse_group_word(word, group, ln)
    for name in generators:
        if name not in degrees:
            raise ParseError(f"generator {name!r} has no degree declaration")

    table = [[mode.one() for _ in group] for _ in generators]
    given = set()
    for ln, rest in lines.get("p", []):
        parts = rest.split(None, 2)
        if len(parts) != 3:
            raise ParseError("expected 'p <generator> <group generator> <scalar>'", ln)
        gen, grp, value = parts
        if gen not in generators:
            raise UndeclaredNameError(f"undeclared generator {gen!r}", ln)
        if grp not in group:
            raise UndeclaredNameError(f"undeclared group generator {grp!r}", ln)
        if (gen, grp) in given:
            raise ParseError(f"duplicate entry p {gen} {grp}", ln)
        given.add((gen, grp))
        try:
            s = parse_scalar(value, mode)
        except ParseError as e:
            raise ParseError(str(e), ln) from None
        except ZeroDivisionError:
            raise ParseError(f"character value {value!r} has a pole", ln) from None
        if not s:
            raise ParseError("character values must be non-zero", ln)
        table[generators.index(gen)][group.index(grp)] = s

    ln, rest = single("bound")
    try:
        bound = int(rest)
    except ValueError:
        raise ParseError(f"bound must be an integer, got {rest!r}", ln) from None
    if bound < 1:
        raise ParseError("bound must be >= 1", ln)

    ctx = AlgebraContext(
        generators, group, tuple(degrees[x] for x in generators), tuple(map(tuple, table)), mode
    )

    def element(expr, ln, what):
        try:
            e = ctx.parse(expr)
        except ParseError as err:
            raise type(err)(str(err), ln) from None
        except (ValueError, ZeroDivisionError) as err:
            raise ParseError(str(err), ln) from None
        if not e.is_group_free():
            raise InhomogeneousError(f"line {ln}: {what} {e} carries group factors")
        cons = sorted(e.constitutions())
        if len(cons) > 1:
            raise InhomogeneousError(
                f"line {ln}: {what} {e} is not homogeneous: constitutions {cons[0]} and {cons[1]}", cons
            )
        if e and sum(cons[0]) > bound:
            raise ParseError(f"{what} {e} has degree above the bound {bound}", ln)
        return e

    relations = []
    for ln, rest in lines.get("relation", []):
        e = element(rest, ln, "relation")
        if not e:
            raise ParseError("relation evaluates to zero", ln)
        relations.append(str(e))

    coideal = None
    ln, rest = single("coideal", required=False)
    if ln is not None:
        coideal = tuple(str(element(part, ln, "coideal generator")) for part in rest.split(";") if part.strip())

    return PresentationFile(
        generators,
        group,
        tuple(degrees[x] for x in generators),
        mode,
        tuple(map(tuple, table)),
        tuple(relations),
        bound,
        coideal,
    )


def render_presentation(pf):
    out = [f"generators {' '.join(pf.generators)}", f"group {' '.join(pf.group)}"]
    for name, g in zip(pf.generators, pf.degrees):
        out.append(f"degree {name} {_render_group_word(g, pf.group)}")
    out.append(f"character {pf.mode}")
    for name, row in zip(pf.generators, pf.table):
        for grp, s in zip(pf.group, row):
            if s != 1:
                out.append(f"p {name} {grp} {s}")
    for r in pf.relations:
        out.append(f"relation {r}")
    out.append(f"bound {pf.bound}")
    if pf.coideal is not None:
        out.append("coideal " + " ; ".join(pf.coideal))
    return "\n".join(out) + "\n"


def bundled_names():
    return sorted(
        p.name[: -len(".pres")]
        for p in resources.files("skewpbw.presentations").iterdir()
        if p.name.endswith(".pres")
    )


def bundled_text(name):
    return resources.files("skewpbw.presentations").joinpath(f"{name}.pres").read_text("utf-8")


def load_bundled(name):
    return parse_presentation(bundled_text(name))

"""Monomials and monomial ideals over a fixed polynomial ring K[x_1..x_n].

Everything here is immutable.  Generators are stored as exponent tuples
(Python ints, so no overflow) and kept as a minimal generating set sorted in
descending lexicographic order of the exponent vector, which gives canonical
equality and deterministic printing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .errors import ContextMismatch, ParseError, PreconditionError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: characteristic 0 means the rationals."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise PreconditionError(f"field characteristic {self.characteristic} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals", "0"):
            return cls(0)
        m = re.fullmatch(r"(?:fp|gf|f)[:(]?\s*(\d+)\)?", t)
        if m:
            return cls(int(m.group(1)))
        raise PreconditionError(f"unknown field '{text}' (use q or fp:P)")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


@dataclass(frozen=True)
class PolyContext:
    num_vars: int
    var_names: tuple[str, ...] = ()
    field: Field = QQ

    def __post_init__(self):
        if self.num_vars < 1:
            raise PreconditionError("a polynomial context needs at least one variable")
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x{i}" for i in range(1, self.num_vars + 1)))
        else:
            object.__setattr__(self, "var_names", tuple(self.var_names))
        if len(self.var_names) != self.num_vars:
            raise PreconditionError("number of variable names differs from num_vars")
        if len(set(self.var_names)) != self.num_vars:
            raise PreconditionError("variable names must be distinct")

    @classmethod
    def from_names(cls, names: Iterable[str], field: Field = QQ) -> "PolyContext":
        names = tuple(names)
        return cls(len(names), names, field)

    def index(self, name: str) -> int:
        try:
            return self.var_names.index(name)
        except ValueError:
            raise PreconditionError(f"unknown variable '{name}'") from None

    def with_field(self, field: Field) -> "PolyContext":
        return PolyContext(self.num_vars, self.var_names, field)

    def restrict(self, indices: Sequence[int]) -> "PolyContext":
        return PolyContext(len(indices), tuple(self.var_names[i] for i in indices), self.field)


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise PreconditionError("monomial exponents must be non-negative")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def from_support(cls, n: int, indices: Iterable[int]) -> "Monomial":
        e = [0] * n
        for i in indices:
            e[i] = 1
        return cls(tuple(e))

    def __len__(self):
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        _same_length(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise PreconditionError("monomial division is not exact")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        _same_length(self, other)
        return Monomial(tuple(map(max, self.exponents, other.exponents)))

    def gcd(self, other: "Monomial") -> "Monomial":
        _same_length(self, other)
        return Monomial(tuple(map(min, self.exponents, other.exponents)))

    def sqfree_part(self) -> "Monomial":
        return Monomial(tuple(min(e, 1) for e in self.exponents))

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i}" for i in range(1, len(self.exponents) + 1)]
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.format()


def _same_length(a: Monomial, b: Monomial):
    if len(a.exponents) != len(b.exponents):
        raise ContextMismatch("monomials live in rings with different numbers of variables")


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    uniq = sorted(set(gens), key=lambda g: (g.degree, g.exponents))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generating set G(I).

    ``gens`` is always the divisibility antichain; construct through
    :func:`minimalize` or the ``MonomialIdeal(ctx, gens)`` constructor, which
    minimalizes on the way in.
    """

    context: PolyContext
    gens: tuple[Monomial, ...] = field(default=())

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Monomial) else Monomial(tuple(g)) for g in self.gens)
        for g in gens:
            if len(g) != self.context.num_vars:
                raise ContextMismatch(
                    f"monomial has {len(g)} exponents, context has {self.context.num_vars} variables"
                )
        object.__setattr__(self, "gens", _minimal(gens))

    # -- state -----------------------------------------------------------
    @property
    def n(self) -> int:
        return self.context.num_vars

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_one()

    @property
    def is_proper_nonzero(self) -> bool:
        return bool(self.gens) and not self.is_unit

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.gens)

    def __len__(self):
        return len(self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return self.contains(m)

    def is_subideal_of(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    # -- operators -------------------------------------------------------
    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "MonomialIdeal":
        return power(self, k)

    def with_field(self, fld: Field) -> "MonomialIdeal":
        return MonomialIdeal(self.context.with_field(fld), self.gens)

    def format(self) -> str:
        if self.is_zero:
            return "0"
        return ", ".join(g.format(self.context.var_names) for g in self.gens)

    def __str__(self):
        return f"({self.format()})"

    def exponent_matrix(self) -> list[list[int]]:
        return [list(g.exponents) for g in self.gens]


def zero_ideal(ctx: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(ctx, ())


def unit_ideal(ctx: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(ctx, (Monomial.one(ctx.num_vars),))


def maximal_ideal(ctx: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(ctx, [Monomial.from_support(ctx.num_vars, [i]) for i in range(ctx.num_vars)])


def prime_ideal(ctx: PolyContext, indices: Iterable[int]) -> MonomialIdeal:
    return MonomialIdeal(ctx, [Monomial.from_support(ctx.num_vars, [i]) for i in indices])


def squarefree_ideal(ctx: PolyContext, supports: Iterable[Iterable[int]]) -> MonomialIdeal:
    return MonomialIdeal(ctx, [Monomial.from_support(ctx.num_vars, s) for s in supports])


# -- arithmetic ----------------------------------------------------------

def minimalize(gens: Iterable[Monomial], context: PolyContext) -> MonomialIdeal:
    return MonomialIdeal(context, tuple(gens))


def _check_ctx(I: MonomialIdeal, J: MonomialIdeal):
    if I.context != J.context:
        raise ContextMismatch("ideals live in different polynomial contexts")


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_ctx(I, J)
    return MonomialIdeal(I.context, I.gens + J.gens)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_ctx(I, J)
    return MonomialIdeal(I.context, [u * v for u in I.gens for v in J.gens])


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_ctx(I, J)
    return MonomialIdeal(I.context, [u.lcm(v) for u in I.gens for v in J.gens])


def colon(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    if len(m) != I.n:
        raise ContextMismatch("monomial and ideal have different numbers of variables")
    return MonomialIdeal(I.context, [g / g.gcd(m) for g in I.gens])


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise PreconditionError(f"power exponent must be >= 1, got {k}")
    result = I
    for _ in range(k - 1):
        result = ideal_product(result, I)
    return result


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.context, [g.sqfree_part() for g in I.gens])


def support(I: MonomialIdeal) -> frozenset[int]:
    return frozenset().union(*(g.support for g in I.gens)) if I.gens else frozenset()


def gcd_of_gens(I: MonomialIdeal) -> Monomial:
    if I.is_zero:
        raise PreconditionError("gcd of the zero ideal is undefined")
    return reduce(Monomial.gcd, I.gens)


def is_equigenerated(I: MonomialIdeal) -> tuple[bool, int | None]:
    """Return ``(True, d)`` if every minimal generator has degree d."""
    degrees = {g.degree for g in I.gens}
    if len(degrees) == 1:
        return True, degrees.pop()
    return False, None


def variable_disjoint_blocks(I: MonomialIdeal) -> list[tuple[Monomial, ...]]:
    """Partition G(I) into maximal groups that share no variables.

    Blocks are ordered by their least variable index.
    """
    g = nx.Graph()
    g.add_nodes_from(range(len(I.gens)))
    for a, b in combinations(range(len(I.gens)), 2):
        if I.gens[a].support & I.gens[b].support:
            g.add_edge(a, b)
    blocks = [tuple(sorted((I.gens[i] for i in comp), reverse=True)) for comp in nx.connected_components(g)]

    def key(block):
        sup = frozenset().union(*(m.support for m in block))
        return min(sup) if sup else -1

    return sorted(blocks, key=key)


def restrict_context(I: MonomialIdeal, indices: Sequence[int]) -> MonomialIdeal:
    """Re-express I in the ring on the given variables (which must cover its support)."""
    indices = list(indices)
    if not support(I) <= set(indices):
        raise PreconditionError("restriction would drop variables in the support")
    ctx = I.context.restrict(indices)
    return MonomialIdeal(ctx, [Monomial(tuple(g.exponents[i] for i in indices)) for g in I.gens])


def embed(I: MonomialIdeal, ctx: PolyContext, positions: Sequence[int]) -> MonomialIdeal:
    """Extend I to a larger ring; variable i of I becomes variable positions[i] of ctx."""
    out = []
    for g in I.gens:
        e = [0] * ctx.num_vars
        for i, a in enumerate(g.exponents):
            e[positions[i]] = a
        out.append(Monomial(tuple(e)))
    return MonomialIdeal(ctx, out)


# -- text grammar --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<num>\d+)|(?P<op>[*^,()]))")


def parse_monomial(text: str, ctx: PolyContext, line: int = 1, col0: int = 1) -> Monomial:
    exps = [0] * ctx.num_vars
    pos = 0
    expect_factor = True
    text_len = len(text)
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        tok_col = col0 + m.start(m.lastgroup)
        if m.group("name"):
            if not expect_factor:
                raise ParseError("expected '*' between factors", line, tok_col)
            name = m.group("name")
            if name not in ctx.var_names:
                raise ParseError(f"unknown variable '{name}'", line, tok_col)
            idx = ctx.var_names.index(name)
            pos = m.end()
            e = 1
            m2 = re.compile(r"\s*\^\s*(\d+)").match(text, pos)
            if m2:
                e = int(m2.group(1))
                pos = m2.end()
            exps[idx] += e
            expect_factor = False
        elif m.group("num"):
            if not expect_factor or m.group("num") != "1":
                raise ParseError(f"unexpected number {m.group('num')}", line, tok_col)
            pos = m.end()
            expect_factor = False
        elif m.group("op") == "*":
            if expect_factor:
                raise ParseError("'*' without a preceding factor", line, tok_col)
            expect_factor = True
            pos = m.end()
        else:
            raise ParseError(f"unexpected '{m.group('op')}'", line, tok_col)
    if expect_factor:
        raise ParseError("empty or incomplete generator", line, col0 + len(text.rstrip()))
    return Monomial(tuple(exps))


def parse_generators(text: str, ctx: PolyContext, line: int = 1, col0: int = 1) -> MonomialIdeal:
    """Parse ``x1*x2^2, x3`` (optionally wrapped in parentheses) into an ideal."""
    body = text
    offset = 0
    stripped = body.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        offset = body.index("(") + 1
        body = body[offset:body.rindex(")")]
    if body.strip() in ("", "0"):
        return zero_ideal(ctx)
    gens = []
    start = 0
    for piece in body.split(","):
        gens.append(parse_monomial(piece, ctx, line, col0 + offset + start))
        start += len(piece) + 1
    return MonomialIdeal(ctx, gens)


def parse_vars_line(line_text: str, line: int = 1, fld: Field = QQ) -> PolyContext:
    head, _, rest = line_text.partition(":")
    if head.strip() != "vars":
        raise ParseError("expected 'vars:' header", line, 1)
    names = rest.split()
    if not names:
        raise ParseError("no variables declared", line, len(line_text) + 1)
    for nm in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
            raise ParseError(f"bad variable name '{nm}'", line, line_text.index(nm) + 1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", line, 1)
    return PolyContext.from_names(names, fld)


def parse_ideal(text: str, fld: Field = QQ) -> MonomialIdeal:
    """Parse an ideal file: a ``vars:`` header followed by generators.

    Without a header the variables are inferred from the generators and
    ordered naturally (x2 before x10).
    """
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input", 1, 1)
    if lines[0][1].lstrip().startswith("vars"):
        ctx = parse_vars_line(lines[0][1], lines[0][0], fld)
        body = lines[1:]
    else:
        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", " ".join(ln for _, ln in lines))), key=natural_key)
        if not names:
            raise ParseError("no variables found", lines[0][0], 1)
        ctx = PolyContext.from_names(names, fld)
        body = lines
    if not body:
        raise ParseError("missing generator line", lines[-1][0] + 1, 1)
    gens: list[Monomial] = []
    for lineno, ln in body:
        piece = ln.rstrip().rstrip(",")
        if ln.strip() in ("0", "()"):
            continue
        gens.extend(parse_generators(piece, ctx, lineno).gens)
    return MonomialIdeal(ctx, gens)


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def format_ideal_file(I: MonomialIdeal) -> str:
    return "vars: " + " ".join(I.context.var_names) + "\n" + I.format() + "\n"

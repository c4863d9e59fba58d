"""Finitely presented groups and Todd-Coxeter enumeration over the trivial subgroup.

Words are tuples of signed 1-based generator indices: ``2`` is the second
generator and ``-2`` its inverse.  Relators are stored fully expanded.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CosetLimitExceeded, IncompleteTable
from .permgroup import Permutation, PermGroup, generate

DEFAULT_MAX_COSETS = 1_000_000

Word = tuple[int, ...]


def default_max_cosets() -> int:
    env = os.environ.get("MCG_MAX_COSETS")
    return int(env) if env else DEFAULT_MAX_COSETS


def invert(word: Word) -> Word:
    return tuple(-a for a in reversed(word))


def power(word: Word, n: int) -> Word:
    return (word if n >= 0 else invert(word)) * abs(n)


def free_reduce(word: Word) -> Word:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[Word, ...]
    generator_names: tuple[str, ...] = ()
    text: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("need at least one generator")
        if not self.generator_names:
            names = tuple("xyzuvw"[: self.generator_count]) if self.generator_count <= 6 else tuple(
                f"g{i}" for i in range(self.generator_count))
            object.__setattr__(self, "generator_names", names)
        if len(self.generator_names) != self.generator_count:
            raise ValueError("generator_names length mismatch")
        for rel in self.relators:
            if not rel:
                raise ValueError("empty relator")
            if any(a == 0 or abs(a) > self.generator_count for a in rel):
                raise ValueError(f"generator index out of range in {rel}")

    def __str__(self):
        if self.text is not None:
            return self.text
        return "<{} | {}>".format(
            ",".join(self.generator_names),
            ", ".join(format_word(r, self.generator_names) for r in self.relators),
        )


def format_word(word: Word, names: Sequence[str]) -> str:
    """Run-length rendering, e.g. ``(2, 2, 2, -1)`` -> ``y^3*x^-1``."""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        a = word[i]
        exp = (j - i) * (1 if a > 0 else -1)
        name = names[abs(a) - 1]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "*".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\()|(\))|(-))")


def _tokenize(s: str) -> list[str]:
    tokens = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected character at {pos} in {s!r}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


def parse_word(s: str, names: Sequence[str]) -> Word:
    """Parse ``x^2*(x*y)^-4`` style words against generator ``names``."""
    tokens = _tokenize(s)
    index = {name: i + 1 for i, name in enumerate(names)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} in {s!r}, got {tok!r}")
        pos += 1
        return tok

    def word() -> Word:
        out = factor()
        while peek() == "*":
            take("*")
            out = out + factor()
        return out

    def factor() -> Word:
        tok = take()
        if tok == "(":
            base = word()
            take(")")
        elif tok in index:
            base = (index[tok],)
        else:
            raise ValueError(f"unknown generator {tok!r} in {s!r}")
        if peek() == "^":
            take("^")
            sign = -1 if peek() == "-" else 1
            if sign < 0:
                take("-")
            exp = take()
            if not exp.isdigit():
                raise ValueError(f"bad exponent {exp!r} in {s!r}")
            base = power(base, sign * int(exp))
        return base

    result = word()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {s!r}")
    return result


def parse_presentation(text: str) -> Presentation:
    """Parse ``<x,y | x^4, y^3, (x*y)^8, x^2*(x*y)^4>``."""
    m = re.fullmatch(r"\s*<([^|>]*)\|([^>]*)>\s*", text)
    if not m:
        raise ValueError(f"not a presentation: {text!r}")
    names = tuple(n.strip() for n in m.group(1).split(",") if n.strip())
    if not names or len(set(names)) != len(names):
        raise ValueError(f"bad generator list in {text!r}")
    rel_src = [r for r in (part.strip() for part in m.group(2).split(",")) if r]
    relators = []
    for r in rel_src:
        w = parse_word(r, names)
        if not w:
            raise ValueError(f"relator {r!r} is empty")
        relators.append(w)
    return Presentation(len(names), tuple(relators), names, text=text.strip())


@dataclass
class CosetTable:
    """Completed (or abandoned) coset table.

    ``rows[c][2*i]`` is ``c * x_i`` and ``rows[c][2*i+1]`` is ``c * x_i^-1``;
    -1 marks an undefined entry.
    """

    generator_count: int
    rows: list[list[int]]
    status: str = "complete"

    def __len__(self):
        return len(self.rows)

    def act(self, coset: int, word: Word) -> int:
        for a in word:
            coset = self.rows[coset][_column(a)]
            if coset < 0:
                return -1
        return coset

    def is_complete(self) -> bool:
        return self.status == "complete" and all(v >= 0 for row in self.rows for v in row)


def _column(a: int) -> int:
    return 2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1


class _Enumerator:
    """HLT working state: table, union-find forwarding array, coset cap."""

    def __init__(self, p: Presentation, max_cosets: int):
        self.ncols = 2 * p.generator_count
        self.relators = [[_column(a) for a in rel] for rel in p.relators]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitExceeded(f"coset enumeration exceeded {self.max_cosets} cosets")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                table[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] >= 0:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][xi] >= 0:
                    self._merge(mu, table[nu][xi], queue)
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self) -> None:
        c = 0
        while c < len(self.table):
            if self.live(c):
                for w in self.relators:
                    self.scan_and_fill(c, w)
                    if not self.live(c):
                        break
                if self.live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] < 0:
                            self.define(c, x)
            c += 1

    def standardized(self) -> list[list[int]]:
        """Live cosets renumbered breadth-first from the subgroup coset."""
        number = {0: 0}
        order = [0]
        i = 0
        while i < len(order):
            c = order[i]
            i += 1
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in number:
                    number[d] = len(order)
                    order.append(d)
        return [[number[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in order]


def todd_coxeter(p: Presentation, max_cosets: int | None = None) -> tuple[int, CosetTable]:
    """Enumerate cosets of the trivial subgroup; returns (group order, table)."""
    if max_cosets is None:
        max_cosets = default_max_cosets()
    e = _Enumerator(p, max_cosets)
    e.run()
    rows = e.standardized()
    return len(rows), CosetTable(p.generator_count, rows, "complete")


def generator_permutations(t: CosetTable) -> list[Permutation]:
    if not t.is_complete():
        raise IncompleteTable("coset table has undefined entries")
    n = len(t.rows)
    return [Permutation(tuple(t.rows[c][2 * i] for c in range(n))) for i in range(t.generator_count)]


def table_to_permgroup(t: CosetTable) -> PermGroup:
    """Regular permutation model read off a completed table."""
    perms = generator_permutations(t)
    return generate(perms, order_cap=len(t.rows))


def relators_hold(p: Presentation, perms: Sequence[Permutation]) -> bool:
    degree = perms[0].degree
    for rel in p.relators:
        x = Permutation.identity(degree)
        for a in rel:
            x = x * (perms[a - 1] if a > 0 else perms[-a - 1].inverse())
        if not x.is_identity():
            return False
    return True

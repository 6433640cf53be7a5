"""Parser for the group-spec mini-language.

    spec  := atom { "x" atom }
    atom  := "C" int | "D" int | "Q" int
           | "PSL2(" q ")" | "SL2(" q ")" | "GL2(" q ")"
           | "C" int ":" "C" int "(" int ")"
    q     := int | int "^" int

Whitespace is ignored. A product of cyclic atoms is an abelian group given by
its factor list (``C6xC2``).
"""

from __future__ import annotations

from .groups.spec import (
    CyclicSpec,
    DicyclicSpec,
    DihedralSpec,
    GroupSpec,
    GroupSpecError,
    MatrixSpec,
    SemidirectSpec,
    direct_product,
)


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class _Parser:
    def __init__(self, text: str):
        self.original = text
        # keep a map from compacted positions back to the source text
        self.chars = []
        self.where = []
        for i, ch in enumerate(text):
            if not ch.isspace():
                self.chars.append(ch)
                self.where.append(i)
        self.s = "".join(self.chars)
        self.i = 0

    def error(self, message: str):
        pos = self.where[self.i] if self.i < len(self.where) else len(self.original)
        raise SpecSyntaxError(message, self.original, pos)

    def peek(self, token: str) -> bool:
        return self.s.startswith(token, self.i)

    def expect(self, token: str):
        if not self.peek(token):
            self.error(f"expected {token!r}")
        self.i += len(token)

    def integer(self) -> int:
        start = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected an integer")
        return int(self.s[start : self.i])

    def q(self) -> int:
        base = self.integer()
        if self.peek("^"):
            self.i += 1
            return base ** self.integer()
        return base

    def semantic(self, start: int, build):
        try:
            return build()
        except GroupSpecError as exc:
            pos = self.where[start] if start < len(self.where) else len(self.original)
            raise SpecSyntaxError(str(exc), self.original, pos) from None

    def atom(self) -> GroupSpec:
        start = self.i
        for kind in ("PSL2(", "SL2(", "GL2("):
            if self.peek(kind):
                self.i += len(kind)
                q = self.q()
                self.expect(")")
                return self.semantic(start, lambda: MatrixSpec(kind[:-1], q))
        if self.peek("C"):
            self.i += 1
            m = self.integer()
            if self.peek(":"):
                self.i += 1
                self.expect("C")
                n = self.integer()
                self.expect("(")
                k = self.integer()
                self.expect(")")
                return self.semantic(start, lambda: SemidirectSpec(m, n, k))
            return self.semantic(start, lambda: CyclicSpec(m))
        if self.peek("D"):
            self.i += 1
            n = self.integer()
            return self.semantic(start, lambda: DihedralSpec(n))
        if self.peek("Q"):
            self.i += 1
            n = self.integer()
            return self.semantic(start, lambda: DicyclicSpec(n))
        self.error("expected a group atom (C, D, Q, PSL2, SL2, GL2)")

    def spec(self) -> GroupSpec:
        if not self.s:
            raise SpecSyntaxError("empty group spec", self.original, 0)
        atoms = [self.atom()]
        while self.peek("x"):
            self.i += 1
            atoms.append(self.atom())
        if self.i != len(self.s):
            self.error("unexpected trailing input")
        return direct_product(*atoms)


def parse_group_spec(text: str) -> GroupSpec:
    return _Parser(text).spec()


def unparse(spec: GroupSpec) -> str:
    return spec.text()


def canonical(text: str) -> str:
    return unparse(parse_group_spec(text))

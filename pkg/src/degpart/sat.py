"""CNF handling, the RSAT restriction and its variants.

Literals are signed 1-based variable ids, as in DIMACS.  Assignments are
``{variable: bool}`` dicts.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

Assignment = dict[int, bool]


class CnfError(ValueError):
    pass


class SatVariant(enum.Enum):
    NAE = "nae"      # >= 1 true and >= 1 false literal per clause
    EXACT = "exact"  # exactly one true literal per clause
    ALL = "all"      # >= 1 true per 4-clause, exactly one true per 2-clause

    @classmethod
    def parse(cls, text: str) -> "SatVariant":
        try:
            return cls(text.lower())
        except ValueError:
            raise CnfError(f"unknown variant {text!r}; use nae, exact or all") from None


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CnfError(f"literal {lit} out of range for {self.num_vars} variables")


@dataclass(frozen=True)
class RSatInstance(CnfFormula):
    """Clauses of exactly two or four literals; no literal occurs more than twice."""

    def __post_init__(self):
        super().__post_init__()
        for c in self.clauses:
            if len(c) not in (2, 4):
                raise CnfError(f"RSAT clause {c} has {len(c)} literals")
        over = [lit for lit, cnt in literal_occurrences(self.clauses).items() if cnt > 2]
        if over:
            raise CnfError(f"literal(s) {sorted(over)} occur more than twice")


def literal_occurrences(clauses: Iterable[Sequence[int]]) -> Counter:
    return Counter(lit for c in clauses for lit in c)


# ---------------------------------------------------------------------------
# DIMACS


def parse_cnf(text: str | bytes) -> CnfFormula:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf":
                raise CnfError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(tok[2]), int(tok[3]))
            except ValueError:
                raise CnfError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise CnfError(f"line {lineno}: clause before header")
        for t in tok:
            try:
                lit = int(t)
            except ValueError:
                raise CnfError(f"line {lineno}: bad literal {t!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise CnfError(f"line {lineno}: variable {abs(lit)} out of range")
                current.append(lit)
    if header is None:
        raise CnfError("missing 'p cnf' header")
    if current:
        raise CnfError(f"trailing literals {current} without terminating 0")
    if len(clauses) != header[1]:
        raise CnfError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def serialize_cnf(formula: CnfFormula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in formula.clauses)
    return "\n".join(lines) + "\n"


def parse_assignment(text: str) -> Assignment:
    result: Assignment = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        if len(tok) != 3 or tok[0] != "v" or tok[2] not in ("0", "1"):
            raise CnfError(f"line {lineno}: expected 'v <var> <0|1>', got {line!r}")
        var = int(tok[1])
        if var < 1 or var in result:
            raise CnfError(f"line {lineno}: bad or repeated variable {var}")
        result[var] = tok[2] == "1"
    return result


def serialize_assignment(assignment: Mapping[int, bool]) -> str:
    return "".join(f"v {v} {int(bool(assignment[v]))}\n" for v in sorted(assignment))


# ---------------------------------------------------------------------------
# semantics


def true_count(clause: Sequence[int], assignment: Mapping[int, bool]) -> int:
    return sum(1 for lit in clause if assignment[abs(lit)] == (lit > 0))


def check_assignment(formula: CnfFormula, assignment: Mapping[int, bool], variant: SatVariant) -> bool:
    for v in range(1, formula.num_vars + 1):
        if v not in assignment:
            raise CnfError(f"assignment misses variable {v}")
    for c in formula.clauses:
        t = true_count(c, assignment)
        if variant is SatVariant.NAE:
            ok = 0 < t < len(c)
        elif variant is SatVariant.EXACT:
            ok = t == 1
        else:
            ok = t == 1 if len(c) == 2 else t >= 1
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# 4-SAT -> RSAT


def reduce_to_rsat(formula: CnfFormula | Sequence[Sequence[int]],
                   num_vars: int | None = None) -> tuple[RSatInstance, dict[int, list[int]]]:
    """Give every occurrence of a repeated variable its own copy and chain
    the copies with 2-clauses ``(y1 or not y2), ..., (yr or not y1)``.

    Returns the instance and ``origin``: original variable -> its copies.
    Variables with at most one occurrence keep a single copy.
    """
    if not isinstance(formula, CnfFormula):
        clauses = [tuple(c) for c in formula]
        if num_vars is None:
            num_vars = max((abs(l) for c in clauses for l in c), default=0)
        formula = CnfFormula(num_vars, tuple(clauses))
    for c in formula.clauses:
        if len(c) != 4:
            raise CnfError(f"reduce_to_rsat expects 4-clauses, got {c}")
    occ = Counter(abs(lit) for c in formula.clauses for lit in c)
    origin: dict[int, list[int]] = {}
    nxt = 1
    for y in range(1, formula.num_vars + 1):
        copies = max(occ[y], 1)
        origin[y] = list(range(nxt, nxt + copies))
        nxt += copies
    seen: Counter = Counter()
    new_clauses: list[tuple[int, ...]] = []
    for c in formula.clauses:
        out = []
        for lit in c:
            y = abs(lit)
            copy = origin[y][seen[y]]
            seen[y] += 1
            out.append(copy if lit > 0 else -copy)
        new_clauses.append(tuple(out))
    for y in range(1, formula.num_vars + 1):
        copies = origin[y]
        if len(copies) > 1:
            for j, a in enumerate(copies):
                new_clauses.append((a, -copies[(j + 1) % len(copies)]))
    return RSatInstance(nxt - 1, tuple(new_clauses)), origin


def lift_assignment(assignment: Mapping[int, bool], origin: Mapping[int, list[int]]) -> Assignment:
    return {c: bool(assignment[y]) for y, copies in origin.items() for c in copies}


def project_assignment(assignment: Mapping[int, bool], origin: Mapping[int, list[int]]) -> Assignment:
    return {y: bool(assignment[copies[0]]) for y, copies in origin.items()}

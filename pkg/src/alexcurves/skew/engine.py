"""Certified row/column reduction of B(n) representatives.

A ``ReductionState`` is immutable; ``apply_move`` returns a new state or
raises ``MoveError``.  Every accepted move is appended to the ledger together
with the certificates that justified it, so a ledger can be replayed and
checked independently.
"""

from __future__ import annotations

import json
import shlex
from fractions import Fraction
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from ..alexander import INFINITE, Delta, fox_matrix, format_delta
from ..laurent import LaurentPoly
from ..presentations import WeightedPresentation, ensure_valid, parse_presentation
from ..words import RingElement, Word
from .algebra import Context, ExprError, Symbol
from .certify import Certificate, certify_nonzero, certify_unit, homogeneous_level
from .facts import FactError, FactKind, FactSet, commutation_rules, format_fact, parse_facts

LEDGER_FORMAT = "alexcurves-skew-ledger/1"
Matrix = tuple[tuple[RingElement, ...], ...]


class MoveError(ValueError):
    pass


class ReadoutError(ValueError):
    pass


@dataclass(frozen=True)
class ReductionState:
    ctx: Context
    matrix: Matrix
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    ledger: tuple[dict, ...] = ()
    finite: bool = False

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    def entry(self, i: int, j: int) -> RingElement:
        return self.matrix[i][j]

    def format_matrix(self) -> list[list[str]]:
        return [[self.ctx.fmt(e) for e in row] for row in self.matrix]

    def snapshot(self) -> dict:
        return {
            "rows": list(self.row_labels),
            "cols": list(self.col_labels),
            "matrix": self.format_matrix(),
            "symbols": [
                {"name": s.name, "definition": self.ctx.fmt(s.definition), "level": s.level, "unit": s.unit}
                for s in self.ctx.symbols
            ],
            "finite": self.finite,
        }

    def __str__(self) -> str:
        width = max((len(x) for row in self.format_matrix() for x in row), default=1)
        lines = []
        for lab, row in zip(self.row_labels, self.format_matrix()):
            lines.append(f"{lab:>4} | " + "  ".join(x.rjust(width) for x in row))
        return "\n".join(lines)


# construction ---------------------------------------------------------------

def check_facts(P: WeightedPresentation, facts: FactSet, level: int) -> None:
    for f in facts.facts:
        if f.kind is FactKind.GENERATOR_EQUALITY and level == 0:
            if P.abelianize(f.left) != P.abelianize(f.right) or P.psi(f.left) != P.psi(f.right):
                raise FactError(f"{format_fact(f, P.names)}: refuted by the abelianization")
        if f.kind is FactKind.NONTRIVIAL and f.active(level) and level == 0 and not any(P.abelianize(f.left)):
            raise FactError(f"{format_fact(f, P.names)}: trivial in H_1, so false at level 0")
        for w in (f.left, f.right):
            if w is not None and any(g >= P.m for g, _ in w):
                raise FactError("facts may only mention generators")


def initial_state(P: WeightedPresentation, level: int, facts: FactSet | None = None) -> ReductionState:
    ensure_valid(P)
    if level < 0:
        raise MoveError("level must be nonnegative")
    facts = facts or FactSet()
    declared = facts.declared_level
    if declared is not None and declared != level:
        raise FactError(f"facts declare level {declared}, session level is {level}")
    check_facts(P, facts, level)
    ctx = Context.create(P, level, facts)
    F = fox_matrix(P)
    M = tuple(tuple(ctx.reduce(e) for e in row) for row in F.entries)
    return ReductionState(ctx, M, tuple(P.names), tuple(f"r{j + 1}" for j in range(P.l)))


# helpers ---------------------------------------------------------------------

def is_zero_entry(ctx: Context, e: RingElement) -> bool:
    if e.is_zero():
        return True
    if ctx.level == 0:
        return ctx.evaluate0(e)[0].is_zero()
    return ctx.reduce(ctx.expand(e)).is_zero()


def _parse(ctx: Context, text: str) -> tuple[RingElement, Context, list[dict]]:
    """Parse with inline ``(expr)^-1`` support; returns the grown context."""
    box = {"ctx": ctx, "certs": []}

    def define(e: RingElement) -> int:
        cur = box["ctx"]
        cert = certify_unit(cur, e)
        if cert is None:
            raise MoveError(f"inline inverse of {cur.fmt(e)}: not a certified unit")
        name = cur.fresh_name()
        box["ctx"] = cur.with_symbol(Symbol(name, e, cert.level, True))
        box["certs"].append({"symbol": name, "definition": cur.fmt(e), **cert.to_dict()})
        return cur.sym0 + len(cur.symbols)

    try:
        e = ctx.parse(text, define)
    except ExprError as exc:
        raise MoveError(str(exc)) from None
    return e, box["ctx"], box["certs"]


def _idx(state: ReductionState, k, axis: str) -> int:
    n = state.rows if axis == "row" else state.cols
    k = int(k)
    if not 1 <= k <= n:
        raise MoveError(f"{axis} index {k} out of range 1..{n}")
    return k - 1


def _set_matrix(state: ReductionState, M, ctx: Context | None = None, **kw) -> ReductionState:
    ctx = ctx or state.ctx
    M = tuple(tuple(ctx.reduce(e) for e in row) for row in M)
    return replace(state, ctx=ctx, matrix=M, **kw)


def _record(state: ReductionState, move: dict, **extra) -> tuple[dict, ...]:
    entry = dict(move)
    entry.update({k: v for k, v in extra.items() if v not in (None, [], {})})
    return state.ledger + (entry,)


# moves -----------------------------------------------------------------------

def apply_move(state: ReductionState, move: dict) -> ReductionState:
    op = move.get("op")
    handler = _HANDLERS.get(op)
    if handler is None:
        raise MoveError(f"unknown move {op!r}")
    try:
        return handler(state, move)
    except (ExprError, FactError) as exc:
        raise MoveError(str(exc)) from None


def _let(state: ReductionState, mv: dict) -> ReductionState:
    e, ctx, certs = _parse(state.ctx, mv["expr"])
    lv = _definition_level(ctx, e)
    cert = certify_unit(ctx, e) if lv is not None else None
    ctx = ctx.with_symbol(Symbol(mv["name"], e, lv, cert is not None))
    return replace(state, ctx=ctx, ledger=_record(state, mv, inline=certs,
                                                   certificate=cert.to_dict() if cert else None))


def _definition_level(ctx: Context, e: RingElement) -> int | None:
    if e.is_zero():
        return None
    if ctx.level == 0:
        num, den = ctx.evaluate0(e)
        if num.is_zero():
            return None
        cw = ctx.P.color_weights
        ln = {sum(a * w for a, w in zip(x, cw)) for x in num.terms}
        ld = {sum(a * w for a, w in zip(x, cw)) for x in den.terms}
        return ln.pop() - ld.pop() if len(ln) == 1 and len(ld) == 1 else None
    return homogeneous_level(ctx, e)


def _set(state: ReductionState, mv: dict) -> ReductionState:
    i, j = _idx(state, mv["i"], "row"), _idx(state, mv["j"], "col")
    new, ctx, certs = _parse(state.ctx, mv["expr"])
    diff = state.matrix[i][j] - new
    if not is_zero_entry(ctx, diff):
        raise MoveError(f"entry ({i + 1},{j + 1}) is {ctx.fmt(state.matrix[i][j])}, "
                        f"which is not shown equal to {ctx.fmt(new)}")
    M = [list(r) for r in state.matrix]
    M[i][j] = new
    return _set_matrix(state, M, ctx, ledger=_record(state, mv, inline=certs))


def _rewrite(state: ReductionState, mv: dict) -> ReductionState:
    mode = mv.get("mode", "normal")
    ctx = state.ctx
    if mode == "normal":
        f = ctx.reduce
    elif mode == "expand":
        f = ctx.expand
    elif mode == "dropzero":
        if ctx.level != 0:
            raise MoveError("dropzero is exact only at level 0")
        f = lambda e: drop_zero0(ctx, e)
    else:
        raise MoveError(f"unknown rewrite mode {mode!r}")
    M = tuple(tuple(f(e) for e in row) for row in state.matrix)
    return _set_matrix(state, M, ledger=_record(state, mv))


def drop_zero0(ctx: Context, e: RingElement) -> RingElement:
    """Level 0: drop level components equal to 0, and write symbol-free values without symbols."""
    out = RingElement()
    for comp in ctx.level_components(e).values():
        num, den = ctx.evaluate0(comp)
        if num.is_zero():
            continue
        if den == 1 and _has_symbol(ctx, comp):
            comp = torus_element(ctx, num)
        out = out + comp
    return ctx.reduce(out)


def _has_symbol(ctx: Context, e: RingElement) -> bool:
    return any(ctx.is_symbol(g) for w in e.terms for g, _ in w)


def torus_element(ctx: Context, p: LaurentPoly) -> RingElement:
    acc = {}
    for ex, c in p.terms.items():
        letters = []
        for k, v in enumerate(ex):
            letters += [(ctx.m + k, 1 if v > 0 else -1)] * abs(v)
        acc[Word._trusted(tuple(letters))] = c
    return RingElement(acc)


def _scale(state: ReductionState, mv: dict, axis: str) -> ReductionState:
    side = mv.get("side", "left" if axis == "row" else "right")
    want = "left" if axis == "row" else "right"
    if side != want:
        raise MoveError(f"{axis} scaling must multiply on the {want}")
    k = _idx(state, mv["i" if axis == "row" else "j"], axis)
    u, ctx, certs = _parse(state.ctx, mv["expr"])
    cert = certify_unit(ctx, u)
    if cert is None:
        raise MoveError(f"multiplier {ctx.fmt(u)} is not a certified unit at level {ctx.level}")
    M = [list(r) for r in state.matrix]
    if axis == "row":
        M[k] = [u * e for e in M[k]]
    else:
        for r in M:
            r[k] = r[k] * u
    return _set_matrix(state, M, ctx, ledger=_record(state, mv, inline=certs, certificate=cert.to_dict()))


def _addmul(state: ReductionState, mv: dict, axis: str) -> ReductionState:
    if axis == "row":
        a, b = _idx(state, mv["i"], "row"), _idx(state, mv["i2"], "row")
    else:
        a, b = _idx(state, mv["j"], "col"), _idx(state, mv["j2"], "col")
    if a == b:
        raise MoveError("cannot add a multiple of a line to itself")
    c, ctx, certs = _parse(state.ctx, mv["expr"])
    M = [list(r) for r in state.matrix]
    if axis == "row":
        M[a] = [x + c * y for x, y in zip(M[a], M[b])]
    else:
        for r in M:
            r[a] = r[a] + r[b] * c
    return _set_matrix(state, M, ctx, ledger=_record(state, mv, inline=certs))


def _swap(state: ReductionState, mv: dict, axis: str) -> ReductionState:
    a = _idx(state, mv["a"], axis)
    b = _idx(state, mv["b"], axis)
    M = [list(r) for r in state.matrix]
    rl, cl = list(state.row_labels), list(state.col_labels)
    if axis == "row":
        M[a], M[b] = M[b], M[a]
        rl[a], rl[b] = rl[b], rl[a]
    else:
        for r in M:
            r[a], r[b] = r[b], r[a]
        cl[a], cl[b] = cl[b], cl[a]
    return _set_matrix(state, M, row_labels=tuple(rl), col_labels=tuple(cl), ledger=_record(state, mv))


def _pivot(state: ReductionState, mv: dict) -> ReductionState:
    i, j = _idx(state, mv["i"], "row"), _idx(state, mv["j"], "col")
    ctx = state.ctx
    p = state.matrix[i][j]
    cert = certify_unit(ctx, p)
    if cert is None:
        raise MoveError(f"pivot entry ({i + 1},{j + 1}) = {ctx.fmt(p)} is not a certified unit")
    M = [list(r) for r in state.matrix]
    symbol = None
    if len(p.terms) == 1 and all(not ctx.is_symbol(g) or ctx.symbol(g).unit for w in p.terms for g, _ in w):
        (w, c), = p.terms.items()
        inv = RingElement.from_word(w.inverse(), 1 / Fraction(c))
    else:
        symbol = ctx.fresh_name()
        idx = ctx.sym0 + len(ctx.symbols)
        ctx = ctx.with_symbol(Symbol(symbol, p, cert.level, True))
        M[i][j] = RingElement.from_word(Word.generator(idx))
        inv = RingElement.from_word(Word.generator(idx, -1))
    pivot_row = M[i]
    for r in range(len(M)):
        if r != i and not M[r][j].is_zero():
            q = M[r][j] * inv
            M[r] = [x - q * y for x, y in zip(M[r], pivot_row)]
    M = [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]
    rl = state.row_labels[:i] + state.row_labels[i + 1:]
    cl = state.col_labels[:j] + state.col_labels[j + 1:]
    return _set_matrix(state, M, ctx, row_labels=rl, col_labels=cl,
                       ledger=_record(state, mv, symbol=symbol, certificate=cert.to_dict()))


def _rankzero(state: ReductionState, mv: dict) -> ReductionState:
    ctx = state.ctx
    T = sorted({_idx(state, r, "row") for r in mv["rows"]})
    S = sorted({_idx(state, c, "col") for c in mv["cols"]})
    if len(T) != state.rows - 1:
        raise MoveError(f"rank argument needs exactly {state.rows - 1} rows, got {len(T)}")
    if len(S) != len(T):
        raise MoveError("rank argument needs as many columns as rows")
    others = [r for r in range(state.rows) if r not in T]
    for r in others:
        for c in S:
            if not state.matrix[r][c].is_zero():
                raise MoveError(f"row {r + 1} is not literally zero on column {c + 1}")
    certs = _triangular(ctx, state.matrix, T, S)
    M = [list(r) for r in state.matrix]
    for r in others:
        M[r] = [RingElement() for _ in M[r]]
    return _set_matrix(state, M, finite=True, ledger=_record(state, mv, certificates=certs, records="delta finite"))


def _triangular(ctx: Context, M: Matrix, T: list[int], S: list[int]) -> list[dict]:
    rows, cols = list(T), list(S)
    nz = {(r, c): not is_zero_entry(ctx, M[r][c]) for r in rows for c in cols}
    certs = []
    while rows:
        found = None
        for r in rows:
            live = [c for c in cols if nz[r, c]]
            if len(live) == 1:
                found = (r, live[0])
                break
        if found is None:
            for c in cols:
                live = [r for r in rows if nz[r, c]]
                if len(live) == 1:
                    found = (live[0], c)
                    break
        if found is None:
            raise MoveError("submatrix is not permuted-triangular")
        r, c = found
        cert = certify_nonzero(ctx, M[r][c])
        if cert is None:
            raise MoveError(f"diagonal entry ({r + 1},{c + 1}) is not certified nonzero")
        certs.append({"entry": [r + 1, c + 1], **cert.to_dict()})
        rows.remove(r)
        cols.remove(c)
    return certs


def _commute(state: ReductionState, mv: dict) -> ReductionState:
    ctx = state.ctx
    x, ctx, c1 = _parse(ctx, mv["x"])
    y, ctx, c2 = _parse(ctx, mv["y"])
    words = []
    for e in (x, y):
        if len(e.terms) != 1 or list(e.terms.values())[0] != 1:
            raise MoveError(f"commute needs words, got {ctx.fmt(e)}")
        words.append(next(iter(e.terms)))
    X, Y = words
    if ctx.level >= 1:
        for a in _pieces(ctx, X):
            for b in _pieces(ctx, Y):
                if ctx.rewrite.normalize_word(a * b) != ctx.rewrite.normalize_word(b * a):
                    raise MoveError(f"cannot show that {ctx.fmt_word(a)} and {ctx.fmt_word(b)} commute")
        ctx = ctx.with_rules(commutation_rules(X, Y))
    return replace(state, ctx=ctx, ledger=_record(state, mv, inline=c1 + c2))


def _pieces(ctx: Context, w: Word) -> list[Word]:
    """Words whose pairwise commutation implies that of w (expanding symbols)."""
    if not any(ctx.is_symbol(g) and s < 0 for g, s in w):
        return list(ctx.expand(RingElement.from_word(w)).terms)
    out: list[Word] = []
    for g, s in w:
        if ctx.is_symbol(g):
            out += list(ctx.expand(RingElement.from_word(Word.generator(g))).terms)
        else:
            out.append(Word.generator(g))
    return out


_HANDLERS = {
    "let": _let,
    "set": _set,
    "rewrite": _rewrite,
    "rowscale": lambda s, m: _scale(s, m, "row"),
    "colscale": lambda s, m: _scale(s, m, "col"),
    "rowaddmul": lambda s, m: _addmul(s, m, "row"),
    "coladdmul": lambda s, m: _addmul(s, m, "col"),
    "swaprows": lambda s, m: _swap(s, m, "row"),
    "swapcols": lambda s, m: _swap(s, m, "col"),
    "pivot": _pivot,
    "rankzero": _rankzero,
    "commute": _commute,
}


# readout ------------------------------------------------------------------------

@dataclass(frozen=True)
class Readout:
    status: str                     # "OK", "INFINITE" or "INCONCLUSIVE"
    delta: Delta | None
    reason: str = ""
    contributions: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "delta": None if self.delta is None else format_delta(self.delta),
            "reason": self.reason,
            "contributions": list(self.contributions),
        }


def readout_delta(state: ReductionState) -> Readout:
    ctx = state.ctx
    live = [(r, c) for r in range(state.rows) for c in range(state.cols)
            if not is_zero_entry(ctx, state.matrix[r][c])]
    rows_used = [r for r, _ in live]
    cols_used = [c for _, c in live]
    if len(set(rows_used)) != len(rows_used) or len(set(cols_used)) != len(cols_used):
        raise ReadoutError("matrix is not in diagonal-plus-zero form")
    contributions = []
    total = 0
    for r, c in live:
        spread = entry_spread(ctx, state.matrix[r][c])
        if spread is None:
            return Readout("INCONCLUSIVE", None, f"entry ({r + 1},{c + 1}) lacks degree certificates",
                           tuple(contributions))
        contributions.append({"entry": [r + 1, c + 1], "spread": spread})
        total += spread
    k, need = len(live), state.rows - 1
    if k == need:
        return Readout("OK", total, "", tuple(contributions))
    if k < need:
        if ctx.level == 0:
            return Readout("INFINITE", INFINITE, f"rank {k} < {need}", tuple(contributions))
        return Readout("INCONCLUSIVE", None, f"only {k} of {need} diagonal entries are nonzero",
                       tuple(contributions))
    return Readout("INCONCLUSIVE", None, f"{k} nonzero entries exceed the rank bound {need}", tuple(contributions))


def entry_spread(ctx: Context, e: RingElement) -> int | None:
    """psi-degree spread of an entry, or None when top/bottom are not certified."""
    if ctx.level == 0:
        num, den = ctx.evaluate0(e)
        if num.is_zero():
            return None
        cw = ctx.P.color_weights
        lv = [sum(a * w for a, w in zip(x, cw)) for x in num.terms]
        return max(lv) - min(lv)
    comps = {lv: part for lv, part in ctx.level_components(e).items()
             if not ctx.reduce(ctx.expand(part)).is_zero()}
    if not comps or None in comps:
        return None
    top, bot = max(comps), min(comps)
    if certify_nonzero(ctx, comps[top]) is None or certify_nonzero(ctx, comps[bot]) is None:
        return None
    return top - bot


# scripts and ledgers -----------------------------------------------------------------

def parse_script(text: str) -> list[dict]:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            toks = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise MoveError(f"line {lineno}: {exc}") from None
        if not toks:
            continue
        try:
            moves.append(_parse_move(toks))
        except (IndexError, ValueError) as exc:
            raise MoveError(f"line {lineno}: {exc}") from None
    return moves


def _parse_move(toks: list[str]) -> dict:
    op, args = toks[0], toks[1:]
    rest = lambda k: " ".join(args[k:])  # noqa: E731
    if op == "let":
        if len(args) < 3 or args[1] != "=":
            raise ValueError("expected: let NAME = EXPR")
        return {"op": "let", "name": args[0], "expr": rest(2)}
    if op == "set":
        return {"op": "set", "i": int(args[0]), "j": int(args[1]), "expr": rest(2)}
    if op == "rewrite":
        return {"op": "rewrite", "mode": args[0] if args else "normal"}
    if op == "rowscale":
        return {"op": "rowscale", "i": int(args[0]), "side": args[1], "expr": rest(2)}
    if op == "colscale":
        return {"op": "colscale", "j": int(args[0]), "side": args[1], "expr": rest(2)}
    if op == "rowaddmul":
        return {"op": "rowaddmul", "i": int(args[0]), "i2": int(args[1]), "expr": rest(2)}
    if op == "coladdmul":
        return {"op": "coladdmul", "j": int(args[0]), "j2": int(args[1]), "expr": rest(2)}
    if op in ("swaprows", "swapcols"):
        return {"op": op, "a": int(args[0]), "b": int(args[1])}
    if op == "pivot":
        return {"op": "pivot", "i": int(args[0]), "j": int(args[1])}
    if op == "rankzero":
        kv = dict(a.split("=", 1) for a in args)
        return {"op": "rankzero", "rows": [int(x) for x in kv["rows"].split(",")],
                "cols": [int(x) for x in kv["cols"].split(",")]}
    if op == "commute":
        if len(args) != 2:
            raise ValueError("expected: commute X Y")
        return {"op": "commute", "x": args[0], "y": args[1]}
    raise ValueError(f"unknown move {op!r}")


MOVE_KEYS = {
    "let": ("name", "expr"), "set": ("i", "j", "expr"), "rewrite": ("mode",),
    "rowscale": ("i", "side", "expr"), "colscale": ("j", "side", "expr"),
    "rowaddmul": ("i", "i2", "expr"), "coladdmul": ("j", "j2", "expr"),
    "swaprows": ("a", "b"), "swapcols": ("a", "b"), "pivot": ("i", "j"),
    "rankzero": ("rows", "cols"), "commute": ("x", "y"),
}


def bare_move(entry: dict) -> dict:
    """Strip ledger annotations, keeping only the move itself."""
    op = entry["op"]
    return {"op": op, **{k: entry[k] for k in MOVE_KEYS[op] if k in entry}}


def format_move(mv: dict) -> str:
    op = mv["op"]
    q = lambda s: '"' + s + '"'  # noqa: E731
    if op == "let":
        return f"let {mv['name']} = {mv['expr']}"
    if op == "set":
        return f"set {mv['i']} {mv['j']} {q(mv['expr'])}"
    if op == "rewrite":
        return f"rewrite {mv.get('mode', 'normal')}"
    if op in ("rowscale", "colscale"):
        k = mv["i"] if op == "rowscale" else mv["j"]
        return f"{op} {k} {mv['side']} {q(mv['expr'])}"
    if op == "rowaddmul":
        return f"rowaddmul {mv['i']} {mv['i2']} {q(mv['expr'])}"
    if op == "coladdmul":
        return f"coladdmul {mv['j']} {mv['j2']} {q(mv['expr'])}"
    if op in ("swaprows", "swapcols"):
        return f"{op} {mv['a']} {mv['b']}"
    if op == "pivot":
        return f"pivot {mv['i']} {mv['j']}"
    if op == "rankzero":
        return "rankzero rows=" + ",".join(map(str, mv["rows"])) + " cols=" + ",".join(map(str, mv["cols"]))
    return f"commute {mv['x']} {mv['y']}"


@dataclass(frozen=True)
class ScriptResult:
    state: ReductionState
    readout: Readout | None
    error: str | None = None
    failed_at: int | None = None
    rejected: dict | None = None

    @property
    def delta(self) -> Delta | None:
        return None if self.readout is None else self.readout.delta

    @property
    def status(self) -> str:
        return "ABORTED" if self.error else self.readout.status

    def ledger(self) -> dict:
        return ledger_document(self)

    def ledger_json(self) -> str:
        return json.dumps(self.ledger(), indent=1, sort_keys=True)


def run_script(P: WeightedPresentation, facts: FactSet | None, script: Sequence[dict] | str,
               level: int) -> ScriptResult:
    moves = parse_script(script) if isinstance(script, str) else list(script)
    state = initial_state(P, level, facts)
    return run_moves(state, moves)


def run_moves(state: ReductionState, moves: Iterable[dict]) -> ScriptResult:
    for k, mv in enumerate(moves, 1):
        try:
            state = apply_move(state, mv)
        except MoveError as exc:
            return ScriptResult(state, None, f"move {k} ({format_move(mv)}): {exc}", k, bare_move(mv))
    return ScriptResult(state, safe_readout(state))


def safe_readout(state: ReductionState) -> Readout:
    try:
        return readout_delta(state)
    except ReadoutError as exc:
        return Readout("INCONCLUSIVE", None, str(exc))


def ledger_document(res: ScriptResult) -> dict:
    st = res.state
    ctx = st.ctx
    return {
        "format": LEDGER_FORMAT,
        "presentation": ctx.P.to_text(),
        "level": ctx.level,
        "facts": [format_fact(f, ctx.P.names) for f in ctx.facts.facts],
        "moves": list(st.ledger),
        "final": st.snapshot(),
        "result": {
            "status": res.status,
            "error": res.error,
            "rejected": res.rejected,
            "readout": None if res.readout is None else res.readout.to_dict(),
        },
    }


def replay_ledger(doc: dict | str) -> tuple[bool, dict]:
    """Re-run a ledger from scratch; ``True`` when the rebuilt document is identical."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if doc.get("format") != LEDGER_FORMAT:
        raise ValueError("not a skew ledger")
    P = parse_presentation(doc["presentation"])
    facts = parse_facts("\n".join(doc["facts"]), P.parse)
    state = initial_state(P, doc["level"], facts)
    moves = [bare_move(m) for m in doc["moves"]]
    rejected = doc.get("result", {}).get("rejected")
    if rejected:
        moves.append(rejected)
    res = run_moves(state, moves)
    if res.failed_at is not None and res.failed_at <= len(doc["moves"]):
        return False, ledger_document(res)
    rebuilt = json.loads(json.dumps(ledger_document(res), sort_keys=True))
    original = json.loads(json.dumps(doc, sort_keys=True))
    return rebuilt == original, rebuilt

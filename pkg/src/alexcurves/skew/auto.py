"""Heuristic script search.

Pivot on certified units (single words first); otherwise run a Euclid step
on the entry of least psi-spread, cancelling leading components in its row
and column.  Every generated move goes through ``apply_move``, so nothing
uncertified is ever accepted; on failure the partial state is returned.
"""

from __future__ import annotations

from ..presentations import WeightedPresentation
from ..words import RingElement
from .algebra import Context
from .certify import certify_unit
from .engine import (
    MoveError,
    ReadoutError,
    ReductionState,
    ScriptResult,
    apply_move,
    drop_zero0,
    entry_spread,
    initial_state,
    is_zero_entry,
    readout_delta,
    safe_readout,
)
from .facts import FactSet

MAX_MOVES = 400
MAX_TERMS = 300


class _Stuck(Exception):
    pass


def auto_reduce(P: WeightedPresentation, level: int, facts: FactSet | None = None,
                max_moves: int = MAX_MOVES) -> ScriptResult:
    state = initial_state(P, level, facts)
    return auto_from(state, max_moves)


def auto_from(state: ReductionState, max_moves: int = MAX_MOVES) -> ScriptResult:
    runner = _Auto(state, max_moves)
    try:
        runner.run()
    except _Stuck as exc:
        return ScriptResult(runner.state, None, f"auto mode stopped: {exc}")
    return ScriptResult(runner.state, safe_readout(runner.state))


class _Auto:
    def __init__(self, state: ReductionState, max_moves: int):
        self.state = state
        self.budget = max_moves
        self.retired: set[tuple[str, str]] = set()

    # plumbing --------------------------------------------------------------
    def do(self, move: dict) -> None:
        if self.budget <= 0:
            raise _Stuck("move budget exhausted")
        self.budget -= 1
        try:
            self.state = apply_move(self.state, move)
        except MoveError as exc:
            raise _Stuck(f"{move['op']} rejected: {exc}") from None
        if any(len(e.terms) > MAX_TERMS for row in self.state.matrix for e in row):
            raise _Stuck("entries grew too large")

    @property
    def ctx(self) -> Context:
        return self.state.ctx

    def tidy(self) -> None:
        if self.ctx.level != 0:
            return
        M = self.state.matrix
        if any(drop_zero0(self.ctx, e) != self.ctx.reduce(e) for row in M for e in row):
            self.do({"op": "rewrite", "mode": "dropzero"})

    def live(self) -> list[tuple[int, int]]:
        st = self.state
        return [(r, c) for r in range(st.rows) for c in range(st.cols)
                if not is_zero_entry(self.ctx, st.matrix[r][c])]

    def is_retired(self, r: int, c: int) -> bool:
        return (self.state.row_labels[r], self.state.col_labels[c]) in self.retired

    # main loop -------------------------------------------------------------
    def run(self) -> None:
        self.tidy()
        while True:
            if self.finished():
                return
            if self.try_pivot():
                continue
            if self.try_rankzero():
                continue
            self.euclid_step()

    def finished(self) -> bool:
        try:
            rd = readout_delta(self.state)
        except ReadoutError:
            return False
        return rd.status != "INCONCLUSIVE" or not self.live()

    def try_pivot(self) -> bool:
        st = self.state
        order = sorted(self.live(), key=lambda rc: (len(st.matrix[rc[0]][rc[1]].terms), rc))
        for r, c in order:
            if certify_unit(self.ctx, st.matrix[r][c]) is not None:
                self.do({"op": "pivot", "i": r + 1, "j": c + 1})
                self.tidy()
                return True
        return False

    def try_rankzero(self) -> bool:
        st = self.state
        diag = [(r, c) for r, c in self.live() if self.is_retired(r, c)]
        if self.ctx.level == 0 or len(diag) != st.rows - 1 or st.finite:
            return False
        T = [r for r, _ in diag]
        S = [c for _, c in diag]
        other = [r for r in range(st.rows) if r not in T]
        if any(not st.matrix[r][c].is_zero() for r in other for c in S):
            return False
        self.do({"op": "rankzero", "rows": [r + 1 for r in T], "cols": [c + 1 for c in S]})
        return True

    def euclid_step(self) -> None:
        st = self.state
        best = None
        for r, c in self.live():
            if self.is_retired(r, c):
                continue
            sp = entry_spread(self.ctx, st.matrix[r][c])
            if sp is None:
                continue
            key = (sp, len(st.matrix[r][c].terms), r, c)
            if best is None or key < best[0]:
                best = (key, r, c)
        if best is None:
            raise _Stuck("no entry with certified degree is left to reduce")
        _, i, j = best
        inv = self.leading_inverse(i, j)
        progressed = False
        for r in range(self.state.rows):
            if r != i:
                progressed |= self.reduce_against(i, j, r, j, inv, "row")
        for c in range(self.state.cols):
            if c != j:
                progressed |= self.reduce_against(i, j, i, c, inv, "col")
        if self.isolated(i, j):
            self.retired.add((self.state.row_labels[i], self.state.col_labels[j]))
        elif not progressed:
            raise _Stuck("Euclid step made no progress")

    def isolated(self, i: int, j: int) -> bool:
        M = self.state.matrix
        return all(is_zero_entry(self.ctx, M[r][j]) for r in range(self.state.rows) if r != i) and \
            all(is_zero_entry(self.ctx, M[i][c]) for c in range(self.state.cols) if c != j)

    def top(self, e: RingElement) -> RingElement:
        comps = self.ctx.level_components(e)
        return comps[max(comps)]

    def leading_inverse(self, i: int, j: int) -> str:
        """Expression for the inverse of the pivot's top component (folded into a symbol if needed)."""
        b = self.state.matrix[i][j]
        bt = self.top(b)
        if len(bt.terms) == 1:
            (w, _), = bt.terms.items()
            if all(not self.ctx.is_symbol(g) or self.ctx.symbol(g).unit for g, _ in w):
                return f"({self.ctx.fmt(bt)})^-1"
        if certify_unit(self.ctx, bt) is None:
            raise _Stuck(f"leading part {self.ctx.fmt(bt)} is not a certified unit")
        name = self.ctx.fresh_name("_b")
        self.do({"op": "let", "name": name, "expr": self.ctx.fmt(bt)})
        rest = b - bt
        expr = name if rest.is_zero() else f"{name} + {self.ctx.fmt(rest)}"
        self.do({"op": "set", "i": i + 1, "j": j + 1, "expr": expr})
        return f"{name}^-1"

    def reduce_against(self, i: int, j: int, r: int, c: int, inv: str, axis: str) -> bool:
        """Cancel leading components of entry (r, c) using the pivot (i, j)."""
        moved = False
        sb = entry_spread(self.ctx, self.state.matrix[i][j])
        for _ in range(64):
            a = self.state.matrix[r][c]
            if is_zero_entry(self.ctx, a):
                return moved
            sa = entry_spread(self.ctx, a)
            if sa is None or sa < sb:
                return moved
            at = self.ctx.fmt(self.top(a))
            if axis == "row":
                self.do({"op": "rowaddmul", "i": r + 1, "i2": i + 1, "expr": f"-({at})*{inv}"})
            else:
                self.do({"op": "coladdmul", "j": c + 1, "j2": j + 1, "expr": f"-{inv}*({at})"})
            self.tidy()
            moved = True
        raise _Stuck("Euclid reduction did not terminate")

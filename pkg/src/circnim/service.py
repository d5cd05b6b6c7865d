"""HTTP/JSON service for playing CN(n,k) against the engine.

Sessions live in memory; each one is a small state machine (ONGOING
until the board empties, the mover who takes the last token wins).
The engine answers from the closed-form strategy (THEOREM mode) or a
solved outcome table (TABLE mode).  From a lost position it has no good
move, so it stalls: removes one token, picking the stack that leaves
the opponent the most distinct options, smallest stack index on ties.

All domain failures map to HTTP 400 with {error, message}.
"""

from __future__ import annotations

import json
import secrets
import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from circnim.core import (
    CircularNimError,
    GameSpec,
    IllegalMove,
    Move,
    OutOfRange,
    Position,
    apply_move,
    canonicalize,
    move_between,
    options,
    parse_position,
)
from circnim.losing_sets import UnsupportedGame, is_characterized, membership
from circnim.solver import (
    DEFAULT_BUDGET,
    Outcome,
    OutcomeTable,
    best_move_bruteforce,
    outcome,
    solve_outcomes,
)
from circnim.strategy import NotApplicable, winning_move


class WrongTurn(CircularNimError):
    """Move submitted by the side not on turn, or after the game ended."""


class UnknownSession(CircularNimError):
    """No session with this id."""


HUMAN = "HUMAN"
ENGINE = "ENGINE"
ONGOING = "ONGOING"
FINISHED = "FINISHED"
THEOREM = "THEOREM"
TABLE = "TABLE"

#: Above this many (estimated) options the stalling heuristic scores
#: candidate moves by the per-window product bound instead of exact
#: deduplicated counting.
_EXACT_OPTION_LIMIT = 50_000


@dataclass
class GameSession:
    id: str
    spec: GameSpec
    current: Position
    to_move: str
    engine_mode: str
    table_height: Optional[int] = None
    status: str = ONGOING
    winner: Optional[str] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def state(self) -> dict:
        out = {
            "id": self.id,
            "n": self.spec.n,
            "k": self.spec.k,
            "position": list(self.current),
            "to_move": self.to_move,
            "status": self.status,
            "engine_mode": self.engine_mode,
        }
        if self.winner is not None:
            out["winner"] = self.winner
        return out

    def apply(self, mover: str, move: Move) -> Position:
        if self.status == FINISHED:
            raise WrongTurn("game already finished")
        if self.to_move != mover:
            raise WrongTurn(f"it is {self.to_move}'s turn")
        self.current = apply_move(self.spec, self.current, move)
        if all(h == 0 for h in self.current):
            self.status = FINISHED
            self.winner = mover
        else:
            self.to_move = HUMAN if mover == ENGINE else ENGINE
        return self.current


class CreateGameRequest(BaseModel):
    n: int
    k: int
    position: list[int]
    human_first: bool = True
    engine_mode: str = THEOREM


class MoveRequest(BaseModel):
    start: int
    removals: list[int]


class _TableCache:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self._tables: dict[tuple[int, int, int], OutcomeTable] = {}
        self._lock = threading.Lock()

    def get(self, spec: GameSpec, H: int) -> OutcomeTable:
        key = (spec.n, spec.k, H)
        with self._lock:
            table = self._tables.get(key)
        if table is None:
            table = solve_outcomes(spec, H, budget=self.budget)
            with self._lock:
                self._tables[key] = table
        return table


def create_app(
    snapshot_path: Optional[Path] = None, budget: int = DEFAULT_BUDGET
) -> FastAPI:
    sessions: dict[str, GameSession] = {}
    sessions_lock = threading.Lock()
    tables = _TableCache(budget)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        if snapshot_path is None:
            return
        with sessions_lock:
            records = []
            for session in sessions.values():
                record = session.state()
                record["table_height"] = session.table_height
                records.append(record)
        Path(snapshot_path).write_text(json.dumps(records))

    app = FastAPI(title="circnim", version="0.1.0", lifespan=lifespan)

    if snapshot_path is not None and Path(snapshot_path).exists():
        for record in json.loads(Path(snapshot_path).read_text()):
            session = GameSession(
                id=record["id"],
                spec=GameSpec(record["n"], record["k"]),
                current=tuple(record["position"]),
                to_move=record["to_move"],
                engine_mode=record["engine_mode"],
                table_height=record.get("table_height"),
                status=record["status"],
                winner=record.get("winner"),
            )
            sessions[session.id] = session

    @app.exception_handler(CircularNimError)
    async def _domain_error(request: Request, exc: CircularNimError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    def _session(session_id: str) -> GameSession:
        with sessions_lock:
            session = sessions.get(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id}")
        return session

    @app.post("/games")
    def create_game(req: CreateGameRequest) -> dict:
        try:
            spec = GameSpec(req.n, req.k)
        except ValueError as exc:
            raise IllegalMove(str(exc))
        position = spec.validate_position(req.position)
        if req.engine_mode not in (THEOREM, TABLE):
            raise IllegalMove(f"engine_mode must be {THEOREM} or {TABLE}")
        table_height: Optional[int] = None
        if req.engine_mode == THEOREM:
            if not is_characterized(spec):
                raise UnsupportedGame(
                    f"{spec} has no characterization; use TABLE mode"
                )
        else:
            table_height = max(position, default=0)
            if (table_height + 1) ** spec.n > budget:
                raise OutOfRange(
                    f"{spec} at height {table_height} exceeds the table budget"
                )
            tables.get(spec, table_height)
        session = GameSession(
            id=secrets.token_hex(16),
            spec=spec,
            current=position,
            to_move=HUMAN if req.human_first else ENGINE,
            engine_mode=req.engine_mode,
            table_height=table_height,
        )
        if all(h == 0 for h in position):
            session.status = FINISHED
            session.winner = None  # nobody moved; degenerate start
        with sessions_lock:
            sessions[session.id] = session
        return {"id": session.id, "state": session.state()}

    @app.get("/games/{session_id}")
    def get_game(session_id: str) -> dict:
        session = _session(session_id)
        with session.lock:
            return session.state()

    @app.post("/games/{session_id}/moves")
    def human_move(session_id: str, req: MoveRequest) -> dict:
        session = _session(session_id)
        move = Move(req.start, tuple(req.removals))
        with session.lock:
            session.apply(HUMAN, move)
            return session.state()

    @app.post("/games/{session_id}/engine-move")
    def engine_move(session_id: str) -> dict:
        session = _session(session_id)
        with session.lock:
            if session.status == FINISHED:
                raise WrongTurn("game already finished")
            if session.to_move != ENGINE:
                raise WrongTurn("it is HUMAN's turn")
            move, losing_seat = _pick_engine_move(session, tables)
            session.apply(ENGINE, move)
            out = {
                "move": {"start": move.start, "removals": list(move.removals)},
                "state": session.state(),
            }
            if losing_seat:
                out["note"] = "position was losing"
            return out

    @app.get("/classify")
    def classify(n: int, k: int, pos: str) -> dict:
        try:
            spec = GameSpec(n, k)
            position = spec.validate_position(parse_position(pos))
        except ValueError as exc:
            raise IllegalMove(str(exc))
        theorem = None
        if is_characterized(spec):
            theorem = Outcome.LOSS.value if membership(spec, position) else Outcome.WIN.value
        solver = None
        H = max(position, default=0)
        if (H + 1) ** spec.n <= budget:
            solver = outcome(tables.get(spec, H), position).value
        return {"n": n, "k": k, "position": list(position),
                "theorem": theorem, "solver": solver}

    @app.get("/losing-set")
    def losing_set(
        n: int, k: int, max_height: int = Query(..., ge=0)
    ) -> dict:
        try:
            spec = GameSpec(n, k)
        except ValueError as exc:
            raise IllegalMove(str(exc))
        if (max_height + 1) ** spec.n > budget:
            raise OutOfRange(f"{spec} at height {max_height} exceeds the budget")
        table = tables.get(spec, max_height)
        canon = sorted(
            {canonicalize(p)[0] for p in table.loss_positions()},
            key=lambda p: (sum(p), p),
        )
        return {"n": n, "k": k, "max_height": max_height,
                "positions": [list(p) for p in canon]}

    return app


def _pick_engine_move(session: GameSession, tables: _TableCache) -> tuple[Move, bool]:
    spec, pos = session.spec, session.current
    if session.engine_mode == THEOREM:
        try:
            return winning_move(spec, pos), False
        except NotApplicable:
            return _stalling_move(spec, pos), True
    H = session.table_height
    assert H is not None
    table = tables.get(spec, H)
    if outcome(table, pos) is Outcome.WIN:
        return best_move_bruteforce(spec, pos, table), False
    return _stalling_move(spec, pos), True


def _stalling_move(spec: GameSpec, pos: Position) -> Move:
    """Single-token removal leaving the opponent the most distinct options."""
    best: Optional[tuple[int, int]] = None  # (-score, stack index)
    for i in range(spec.n):
        if pos[i] == 0:
            continue
        after = pos[:i] + (pos[i] - 1,) + pos[i + 1 :]
        score = _option_score(spec, after)
        if best is None or (-score, i) < best:
            best = (-score, i)
    if best is None:
        raise IllegalMove("no token to remove")
    i = best[1]
    target = pos[:i] + (pos[i] - 1,) + pos[i + 1 :]
    move = move_between(spec, pos, target)
    assert move is not None
    return move


def _option_score(spec: GameSpec, pos: Position) -> int:
    estimate = 0
    for window in spec.windows():
        product = 1
        for i in window:
            product *= pos[i] + 1
        estimate += product - 1
    if estimate > _EXACT_OPTION_LIMIT:
        return estimate
    return len(options(spec, pos))

"""Core engine for walk-constrained claiming games on complete graphs.

Two players, Maker and Breaker, alternately claim edges of K_n. Each
player's claimed edges must form a walk: a player standing at vertex v
may either claim a free edge incident to v (moving to its other end) or
traverse an edge she already owns (moving without claiming). Edges owned
by the opponent can never be used. A player with no position yet opens
with a placement, claiming any free edge and choosing which endpoint to
stand on. Pass is legal only for a fully blocked walker.

The engine is policy-free: it defines state, legality, application,
degree queries and win detection. Strategies, monitors, the exact
solver and the CLI all build on it.

Conventions
-----------
* Vertices are integers 0..n-1. Edges are unordered pairs stored in
  canonical (low, high) form and indexed into a flat triangular array.
* ``GameState`` is treated as immutable: ``apply_move`` returns a new
  state and never mutates its input.
* ``round`` counts completed (first player, second player) pairs;
  Maker moves are tallied separately because the win bounds are stated
  in Maker moves.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, NamedTuple, Optional, Sequence


class Player(Enum):
    MAKER = "maker"
    BREAKER = "breaker"

    @property
    def other(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER


class Ownership(IntEnum):
    FREE = 0
    MAKER = 1
    BREAKER = 2


OWNER_OF = {Player.MAKER: Ownership.MAKER, Player.BREAKER: Ownership.BREAKER}


class MoveKind(str, Enum):
    PLACE = "place"        # first move: claim a free edge, stand on its far end
    CLAIM = "claim"        # claim a free edge incident to the current position
    TRAVERSE = "traverse"  # walk along an own edge, claiming nothing
    PASS = "pass"          # only when no claim or traversal exists


class IllegalMoveError(ValueError):
    """A move failed validation. ``rule`` names the violated rule."""

    def __init__(self, rule: str, detail: str):
        self.rule = rule
        super().__init__(f"illegal move [{rule}]: {detail}")


class MalformedCertificateError(ValueError):
    """A cycle certificate is structurally invalid (distinct from false)."""


class Bias(NamedTuple):
    """Moves per turn for each side. The unbiased game is (1, 1)."""

    maker: int
    breaker: int

    def per_turn(self, player: Player) -> int:
        return self.maker if player is Player.MAKER else self.breaker


@dataclass(frozen=True, slots=True)
class Move:
    kind: MoveKind
    start: Optional[int] = None   # placement only: the chosen standing edge's near end
    target: Optional[int] = None  # landing vertex (absent for pass)

    @staticmethod
    def place(start: int, target: int) -> "Move":
        return Move(MoveKind.PLACE, start, target)

    @staticmethod
    def claim(target: int) -> "Move":
        return Move(MoveKind.CLAIM, None, target)

    @staticmethod
    def traverse(target: int) -> "Move":
        return Move(MoveKind.TRAVERSE, None, target)

    @staticmethod
    def pass_() -> "Move":
        return Move(MoveKind.PASS)

    def __str__(self) -> str:
        if self.kind is MoveKind.PLACE:
            return f"place({self.start},{self.target})"
        if self.kind is MoveKind.PASS:
            return "pass"
        return f"{self.kind.value}({self.target})"


def edge_index(n: int, a: int, b: int) -> int:
    """Triangular index of edge {a, b} in a flat array of n(n-1)/2 slots."""
    if a > b:
        a, b = b, a
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def edge_count(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(slots=True)
class GameState:
    n: int
    bias: Bias
    first_player: Player
    edges: list  # flat list of Ownership ints, length n(n-1)/2
    maker_pos: Optional[int]
    breaker_pos: Optional[int]
    unvisited: set          # vertices incident to no Maker edge
    breaker_touched: set    # vertices incident to at least one Breaker edge
    deg_m: list
    deg_b: list
    maker_edges: list       # (low, high) pairs in claim order
    breaker_edges: list
    round: int
    to_move: Player
    moves_left_in_turn: int
    maker_moves: int        # non-pass Maker moves so far
    breaker_moves: int
    passes: int

    def owner(self, a: int, b: int) -> Ownership:
        return Ownership(self.edges[edge_index(self.n, a, b)])

    def is_free(self, a: int, b: int) -> bool:
        return self.edges[edge_index(self.n, a, b)] == Ownership.FREE

    def position(self, player: Player) -> Optional[int]:
        return self.maker_pos if player is Player.MAKER else self.breaker_pos


def new_game(n: int, bias: Bias = Bias(1, 1),
             first_player: Player = Player.BREAKER) -> GameState:
    """Fresh game: all edges free, no positions, every vertex unvisited."""
    if n < 3:
        raise ValueError(f"need at least 3 vertices, got {n}")
    bias = Bias(*bias)
    if bias.maker < 1 or bias.breaker < 1:
        raise ValueError(f"bias entries must be positive, got {bias}")
    return GameState(
        n=n,
        bias=bias,
        first_player=first_player,
        edges=[0] * edge_count(n),
        maker_pos=None,
        breaker_pos=None,
        unvisited=set(range(n)),
        breaker_touched=set(),
        deg_m=[0] * n,
        deg_b=[0] * n,
        maker_edges=[],
        breaker_edges=[],
        round=0,
        to_move=first_player,
        moves_left_in_turn=bias.per_turn(first_player),
        maker_moves=0,
        breaker_moves=0,
        passes=0,
    )


def legal_moves(state: GameState, player: Player) -> list:
    """All legal moves for ``player``, in a fixed deterministic order.

    Placements come ordered by (start, target); afterwards claims by
    target, then traversals by target. Returns [pass] exactly when
    nothing else is legal.
    """
    if player is not state.to_move:
        raise IllegalMoveError("wrong-player", f"{player.value} is not to move")
    pos = state.position(player)
    n = state.n
    edges = state.edges
    moves = []
    if pos is None:
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                if edges[edge_index(n, s, t)] == Ownership.FREE:
                    moves.append(Move.place(s, t))
        return moves if moves else [Move.pass_()]
    own = OWNER_OF[player]
    claims = []
    walks = []
    for t in range(n):
        if t == pos:
            continue
        o = edges[edge_index(n, pos, t)]
        if o == Ownership.FREE:
            claims.append(Move.claim(t))
        elif o == own:
            walks.append(Move.traverse(t))
    moves = claims + walks
    return moves if moves else [Move.pass_()]


def _check_vertex(state: GameState, v: Optional[int], what: str) -> None:
    if v is None or not 0 <= v < state.n:
        raise IllegalMoveError("out-of-range", f"{what} vertex {v!r} not in [0, {state.n})")


def apply_move(state: GameState, player: Player, move: Move) -> GameState:
    """Validate and apply one move, returning the successor state.

    Rejections carry the violated rule by name: wrong-player,
    wrong-kind, out-of-range, loop, opponent-edge, own-edge,
    unclaimed-edge, pass-with-moves.
    """
    if player is not state.to_move:
        raise IllegalMoveError("wrong-player", f"{player.value} is not to move")
    pos = state.position(player)
    n = state.n
    own = OWNER_OF[player]

    claimed = None   # canonical pair claimed by this move, if any
    new_pos = pos

    if move.kind is MoveKind.PLACE:
        if pos is not None:
            raise IllegalMoveError("wrong-kind", "placement after the walk has started")
        _check_vertex(state, move.start, "start")
        _check_vertex(state, move.target, "target")
        if move.start == move.target:
            raise IllegalMoveError("loop", f"placement on loop at {move.start}")
        o = state.owner(move.start, move.target)
        if o == Ownership(own):
            raise IllegalMoveError("own-edge", "placement edge already owned")
        if o != Ownership.FREE:
            raise IllegalMoveError("opponent-edge",
                                   f"placement edge {move.start}-{move.target} is the opponent's")
        claimed = (min(move.start, move.target), max(move.start, move.target))
        new_pos = move.target
    elif move.kind is MoveKind.CLAIM:
        if pos is None:
            raise IllegalMoveError("wrong-kind", "claim before placement")
        _check_vertex(state, move.target, "target")
        if move.target == pos:
            raise IllegalMoveError("loop", f"claim of loop at {pos}")
        o = state.owner(pos, move.target)
        if o == Ownership(own):
            raise IllegalMoveError("own-edge", f"edge {pos}-{move.target} already owned")
        if o != Ownership.FREE:
            raise IllegalMoveError("opponent-edge", f"edge {pos}-{move.target} is the opponent's")
        claimed = (min(pos, move.target), max(pos, move.target))
        new_pos = move.target
    elif move.kind is MoveKind.TRAVERSE:
        if pos is None:
            raise IllegalMoveError("wrong-kind", "traversal before placement")
        _check_vertex(state, move.target, "target")
        if move.target == pos:
            raise IllegalMoveError("loop", f"traversal loop at {pos}")
        o = state.owner(pos, move.target)
        if o == OWNER_OF[player.other]:
            raise IllegalMoveError("opponent-edge",
                                   f"edge {pos}-{move.target} is the opponent's")
        if o != Ownership(own):
            raise IllegalMoveError("unclaimed-edge",
                                   f"edge {pos}-{move.target} is not an own edge")
        new_pos = move.target
    elif move.kind is MoveKind.PASS:
        others = legal_moves(state, player)
        if not (len(others) == 1 and others[0].kind is MoveKind.PASS):
            raise IllegalMoveError("pass-with-moves", "pass while claims or traversals exist")
    else:  # pragma: no cover - MoveKind is closed
        raise IllegalMoveError("wrong-kind", f"unknown kind {move.kind!r}")

    edges = list(state.edges)
    unvisited = state.unvisited
    breaker_touched = state.breaker_touched
    deg_m = state.deg_m
    deg_b = state.deg_b
    maker_edges = state.maker_edges
    breaker_edges = state.breaker_edges

    if claimed is not None:
        a, b = claimed
        edges[edge_index(n, a, b)] = int(own)
        if player is Player.MAKER:
            deg_m = list(deg_m)
            deg_m[a] += 1
            deg_m[b] += 1
            unvisited = set(unvisited)
            unvisited.discard(a)
            unvisited.discard(b)
            maker_edges = maker_edges + [claimed]
        else:
            deg_b = list(deg_b)
            deg_b[a] += 1
            deg_b[b] += 1
            breaker_touched = set(breaker_touched)
            breaker_touched.add(a)
            breaker_touched.add(b)
            breaker_edges = breaker_edges + [claimed]

    maker_pos = state.maker_pos
    breaker_pos = state.breaker_pos
    if player is Player.MAKER:
        maker_pos = new_pos
    else:
        breaker_pos = new_pos

    maker_moves = state.maker_moves
    breaker_moves = state.breaker_moves
    passes = state.passes
    if move.kind is MoveKind.PASS:
        passes += 1
    elif player is Player.MAKER:
        maker_moves += 1
    else:
        breaker_moves += 1

    to_move = state.to_move
    moves_left = state.moves_left_in_turn - 1
    rnd = state.round
    if moves_left == 0:
        to_move = player.other
        moves_left = state.bias.per_turn(to_move)
        if to_move is state.first_player:
            rnd += 1

    return GameState(
        n=n,
        bias=state.bias,
        first_player=state.first_player,
        edges=edges,
        maker_pos=maker_pos,
        breaker_pos=breaker_pos,
        unvisited=unvisited,
        breaker_touched=breaker_touched,
        deg_m=deg_m,
        deg_b=deg_b,
        maker_edges=maker_edges,
        breaker_edges=breaker_edges,
        round=rnd,
        to_move=to_move,
        moves_left_in_turn=moves_left,
        maker_moves=maker_moves,
        breaker_moves=breaker_moves,
        passes=passes,
    )


# ---------------------------------------------------------------------------
# Degree queries
# ---------------------------------------------------------------------------

def degree_b(state: GameState, x: int, restrict: Optional[Iterable[int]] = None) -> int:
    """Breaker degree of x, optionally counting only neighbours in ``restrict``."""
    if restrict is None:
        return state.deg_b[x]
    n = state.n
    edges = state.edges
    return sum(
        1 for t in restrict
        if t != x and edges[edge_index(n, x, t)] == Ownership.BREAKER
    )


def degree_m(state: GameState, x: int, restrict: Optional[Iterable[int]] = None) -> int:
    """Maker degree of x, optionally counting only neighbours in ``restrict``."""
    if restrict is None:
        return state.deg_m[x]
    n = state.n
    edges = state.edges
    return sum(
        1 for t in restrict
        if t != x and edges[edge_index(n, x, t)] == Ownership.MAKER
    )


# ---------------------------------------------------------------------------
# Win detection
# ---------------------------------------------------------------------------

def connectivity_won(state: GameState) -> bool:
    """True iff Maker has visited every vertex.

    A walker's claimed edges are connected by construction, so visiting
    all vertices is exactly a spanning connected subgraph.
    """
    return not state.unvisited


HAMILTON_SEARCH_LIMIT = 20


def hamilton_won(state: GameState, certificate: Optional[Sequence[int]] = None) -> bool:
    """True iff Maker's edges contain a Hamilton cycle.

    With a certificate (cyclic vertex order) the check is linear; a
    malformed certificate raises rather than returning False. Without
    one, an exhaustive backtracking search runs, permitted only for
    n <= HAMILTON_SEARCH_LIMIT.
    """
    n = state.n
    if certificate is not None:
        cert = list(certificate)
        if len(cert) != n:
            raise MalformedCertificateError(
                f"certificate has {len(cert)} entries, expected {n}")
        seen = set()
        for v in cert:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise MalformedCertificateError(f"certificate entry {v!r} is not a vertex")
            if v in seen:
                raise MalformedCertificateError(f"certificate repeats vertex {v}")
            seen.add(v)
        return all(
            state.owner(cert[i], cert[(i + 1) % n]) == Ownership.MAKER
            for i in range(n)
        )
    if n > HAMILTON_SEARCH_LIMIT:
        raise ValueError(
            f"searching for a Hamilton cycle is capped at n <= {HAMILTON_SEARCH_LIMIT}; "
            "pass a certificate instead")
    if len(state.maker_edges) < n:
        return False
    adj = [[] for _ in range(n)]
    for a, b in state.maker_edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(row) < 2 for row in adj):
        return False

    start = 0
    visited = [False] * n
    visited[start] = True

    def extend(v: int, depth: int) -> bool:
        if depth == n:
            return start in adj[v]
        for t in adj[v]:
            if not visited[t]:
                visited[t] = True
                if extend(t, depth + 1):
                    return True
                visited[t] = False
        return False

    return extend(start, 1)


def maker_move_count(transcript) -> int:
    """Number of non-pass Maker entries in a transcript or entry list."""
    entries = getattr(transcript, "entries", transcript)
    count = 0
    for e in entries:
        player = e["player"] if isinstance(e, dict) else e.player
        kind = e["kind"] if isinstance(e, dict) else e.kind
        if player == Player.MAKER.value and kind != MoveKind.PASS.value:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Consistency helpers (used by invariant tests and assert snapshots)
# ---------------------------------------------------------------------------

def recomputed_unvisited(state: GameState) -> set:
    touched = set()
    for a, b in state.maker_edges:
        touched.add(a)
        touched.add(b)
    return set(range(state.n)) - touched


def recomputed_breaker_touched(state: GameState) -> set:
    touched = set()
    for a, b in state.breaker_edges:
        touched.add(a)
        touched.add(b)
    return touched


def recomputed_degrees(state: GameState) -> tuple:
    deg_m = [0] * state.n
    deg_b = [0] * state.n
    for i, o in enumerate(state.edges):
        if o == Ownership.FREE:
            continue
        a, b = _edge_from_index(state.n, i)
        if o == Ownership.MAKER:
            deg_m[a] += 1
            deg_m[b] += 1
        else:
            deg_b[a] += 1
            deg_b[b] += 1
    return deg_m, deg_b


def _edge_from_index(n: int, idx: int) -> tuple:
    a = 0
    row = n - 1
    while idx >= row:
        idx -= row
        a += 1
        row -= 1
    return a, a + 1 + idx


def snapshot(state: GameState) -> dict:
    """Compact JSON-able summary of a state, for diagnostics."""
    return {
        "n": state.n,
        "bias": list(state.bias),
        "round": state.round,
        "to_move": state.to_move.value,
        "maker_pos": state.maker_pos,
        "breaker_pos": state.breaker_pos,
        "unvisited": sorted(state.unvisited),
        "maker_moves": state.maker_moves,
        "breaker_moves": state.breaker_moves,
        "maker_edges_tail": [list(e) for e in state.maker_edges[-6:]],
        "breaker_edges_tail": [list(e) for e in state.breaker_edges[-6:]],
    }

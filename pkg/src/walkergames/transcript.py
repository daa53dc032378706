"""Line-delimited, versioned game transcripts.

A transcript is one JSON object per line: a header, one line per move,
and a footer. Lines are canonical JSON (sorted keys, fixed separators),
so identical games serialize byte-identically and sweeps can be
streamed and diffed. The reader rejects unknown format versions instead
of guessing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

FORMAT = "walkergames.transcript/1"


class TranscriptFormatError(ValueError):
    """The file is not a well-formed transcript of a known version."""


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True, slots=True)
class Header:
    n: int
    bias: tuple            # (maker, breaker)
    first_player: str      # "maker" | "breaker"
    maker: str             # strategy id
    breaker: str
    goal: str              # "connectivity" | "hamilton"
    seed: int
    move_cap: int
    n0: int
    monitors: bool
    strict: bool

    def to_json(self) -> dict:
        return {
            "record": "header",
            "format": FORMAT,
            "n": self.n,
            "bias": list(self.bias),
            "first_player": self.first_player,
            "maker": self.maker,
            "breaker": self.breaker,
            "goal": self.goal,
            "seed": self.seed,
            "move_cap": self.move_cap,
            "n0": self.n0,
            "monitors": self.monitors,
            "strict": self.strict,
        }

    @staticmethod
    def from_json(obj: dict) -> "Header":
        return Header(
            n=obj["n"],
            bias=tuple(obj["bias"]),
            first_player=obj["first_player"],
            maker=obj["maker"],
            breaker=obj["breaker"],
            goal=obj["goal"],
            seed=obj["seed"],
            move_cap=obj["move_cap"],
            n0=obj["n0"],
            monitors=obj["monitors"],
            strict=obj["strict"],
        )


@dataclass(frozen=True, slots=True)
class MoveRecord:
    index: int
    round: int
    player: str            # "maker" | "breaker"
    kind: str              # "place" | "claim" | "traverse" | "pass"
    from_vertex: Optional[int]
    to_vertex: Optional[int]

    def to_json(self) -> dict:
        return {
            "record": "move",
            "index": self.index,
            "round": self.round,
            "player": self.player,
            "kind": self.kind,
            "from": self.from_vertex,
            "to": self.to_vertex,
        }

    @staticmethod
    def from_json(obj: dict) -> "MoveRecord":
        return MoveRecord(
            index=obj["index"],
            round=obj["round"],
            player=obj["player"],
            kind=obj["kind"],
            from_vertex=obj["from"],
            to_vertex=obj["to"],
        )


@dataclass(frozen=True, slots=True)
class Footer:
    winner: str            # "maker" | "breaker" | "none"
    reason: str            # "goal" | "cap" | "assertion" | "blocked" | "monitor"
    maker_move_count: int
    breaker_move_count: int
    passes: int
    monitors: Optional[dict]       # monitor report, None when disabled
    certificate: Optional[list]    # Hamilton cycle order, when claimed
    assertion: Optional[dict]      # strategy assertion payload, if raised

    def to_json(self) -> dict:
        return {
            "record": "footer",
            "winner": self.winner,
            "reason": self.reason,
            "maker_move_count": self.maker_move_count,
            "breaker_move_count": self.breaker_move_count,
            "passes": self.passes,
            "monitors": self.monitors,
            "certificate": self.certificate,
            "assertion": self.assertion,
        }

    @staticmethod
    def from_json(obj: dict) -> "Footer":
        return Footer(
            winner=obj["winner"],
            reason=obj["reason"],
            maker_move_count=obj["maker_move_count"],
            breaker_move_count=obj["breaker_move_count"],
            passes=obj["passes"],
            monitors=obj["monitors"],
            certificate=obj["certificate"],
            assertion=obj["assertion"],
        )


@dataclass(slots=True)
class Transcript:
    header: Header
    entries: list = field(default_factory=list)   # MoveRecord, index order
    footer: Optional[Footer] = None

    def to_lines(self) -> list:
        lines = [canonical(self.header.to_json())]
        lines.extend(canonical(e.to_json()) for e in self.entries)
        if self.footer is not None:
            lines.append(canonical(self.footer.to_json()))
        return lines

    def dumps(self) -> str:
        return "\n".join(self.to_lines()) + "\n"


def write_transcript(path: str, transcript: Transcript) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(transcript.dumps())


def parse_transcript(text: str) -> Transcript:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TranscriptFormatError("empty transcript")
    objs = []
    for i, ln in enumerate(lines):
        try:
            objs.append(json.loads(ln))
        except json.JSONDecodeError as exc:
            raise TranscriptFormatError(f"line {i + 1} is not JSON: {exc}") from exc
    head = objs[0]
    if not isinstance(head, dict) or head.get("record") != "header":
        raise TranscriptFormatError("first line is not a header record")
    if head.get("format") != FORMAT:
        raise TranscriptFormatError(
            f"unknown transcript format {head.get('format')!r}, expected {FORMAT!r}")
    try:
        header = Header.from_json(head)
    except KeyError as exc:
        raise TranscriptFormatError(f"header is missing field {exc}") from exc

    entries = []
    footer = None
    for lineno, obj in enumerate(objs[1:], start=2):
        record = obj.get("record") if isinstance(obj, dict) else None
        if record == "move":
            if footer is not None:
                raise TranscriptFormatError(f"line {lineno}: move record after footer")
            try:
                entries.append(MoveRecord.from_json(obj))
            except KeyError as exc:
                raise TranscriptFormatError(
                    f"line {lineno}: move record missing field {exc}") from exc
        elif record == "footer":
            if footer is not None:
                raise TranscriptFormatError(f"line {lineno}: duplicate footer")
            try:
                footer = Footer.from_json(obj)
            except KeyError as exc:
                raise TranscriptFormatError(
                    f"line {lineno}: footer missing field {exc}") from exc
        else:
            raise TranscriptFormatError(f"line {lineno}: unknown record {record!r}")

    for i, e in enumerate(entries):
        if e.index != i:
            raise TranscriptFormatError(
                f"entry indices must be 0,1,2,...; entry {i} has index {e.index}")
        if i and e.round < entries[i - 1].round:
            raise TranscriptFormatError(
                f"entry {i}: round {e.round} decreases from {entries[i - 1].round}")
    return Transcript(header=header, entries=entries, footer=footer)


def read_transcript(path: str) -> Transcript:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_transcript(fh.read())

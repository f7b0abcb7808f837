"""Persistence for construction states.

The on-disk format is deliberately boring JSON: sorted keys, two-space
indent, one trailing newline. Unbounded integers (set elements, the
difference ledger) travel as decimal strings so non-Python consumers
aren't tripped by bigints; residues and other machine-scale fields stay
native. Saving the result of a load is byte-identical to the original
file, which lets callers fingerprint states by content.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

from .construction import Config, ConstructionState
from .modular import ResidueSet
from .pairs import MINUS, PLUS, PrimeCompatiblePair

STATE_SCHEMA = "sdpc-state"
STATE_VERSION = 1

_SIGN_KEY = {PLUS: "+", MINUS: "-"}
_KEY_SIGN = {"+": PLUS, "-": MINUS}


def state_to_doc(state: ConstructionState) -> dict:
    pairs = []
    for p in sorted(state.pairs):
        pair = state.pairs[p]
        pairs.append(
            {
                "p": p,
                "u": list(pair.u),
                "v": list(pair.v),
                "reserved": list(pair.reserved),
                "assigned": {_SIGN_KEY[s]: w for s, w in pair.assigned},
            }
        )
    represented = [
        {"r": str(r), "a": str(a), "b": str(b)}
        for r, (a, b) in sorted(state.represented.items(), key=lambda kv: (abs(kv[0]), kv[0]))
    ]
    return {
        "schema": STATE_SCHEMA,
        "version": STATE_VERSION,
        "n": state.n,
        "a": [str(v) for v in state.a],
        "b": [str(v) for v in state.b],
        "pairs": pairs,
        "represented": represented,
        "config": asdict(state.config),
        "rng_draws": state.rng_draws,
    }


def doc_to_state(doc: dict) -> ConstructionState:
    if not isinstance(doc, dict):
        raise ValueError("state document must be a JSON object")
    if doc.get("schema") != STATE_SCHEMA:
        raise ValueError(f"unsupported state schema {doc.get('schema')!r}")
    if doc.get("version") != STATE_VERSION:
        raise ValueError(f"unsupported state version {doc.get('version')!r}")
    pairs = {}
    for entry in doc["pairs"]:
        p = entry["p"]
        pairs[p] = PrimeCompatiblePair(
            p=p,
            u=ResidueSet.from_members(p, entry["u"]),
            v=ResidueSet.from_members(p, entry["v"]),
            reserved=tuple(entry["reserved"]),
            assigned=tuple(
                (_KEY_SIGN[k], w) for k, w in sorted(entry["assigned"].items())
            ),
        )
    represented = {}
    for row in doc["represented"]:
        r, a, b = int(row["r"]), int(row["a"]), int(row["b"])
        if a - b != r:
            raise ValueError(f"ledger row for {r} names a witness with difference {a - b}")
        represented[r] = (a, b)
    return ConstructionState(
        n=doc["n"],
        a=tuple(int(v) for v in doc["a"]),
        b=tuple(int(v) for v in doc["b"]),
        pairs=pairs,
        represented=represented,
        config=Config(**doc["config"]),
        rng_draws=doc["rng_draws"],
    )


def dumps_state(state: ConstructionState) -> str:
    return json.dumps(state_to_doc(state), indent=2, sort_keys=True) + "\n"


def loads_state(text: str) -> ConstructionState:
    return doc_to_state(json.loads(text))


def save_state(state: ConstructionState, path: str | Path) -> None:
    Path(path).write_text(dumps_state(state), encoding="utf-8")


def load_state(path: str | Path) -> ConstructionState:
    return loads_state(Path(path).read_text(encoding="utf-8"))

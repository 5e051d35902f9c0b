"""Append-only JSON-lines catalog of computed invariants.

One line per entry: a descriptor (enough to recompute everything), the
invariants it produced, warning flags, and a schema version.  Deduplication
keys on the canonical serialization of the invariants, so entries whose
invariants differ are never merged.
"""

from __future__ import annotations

import json
from pathlib import Path

from .frames import FareyFrame
from .iteration import SequenceKind, TwistSequence, assemble_invariants
from .slopes import TunnelInvariants

SCHEMA_VERSION = 1

_DESCRIPTOR_KEYS = ("frame", "kind", "twists", "splitting_bit", "from_trivial")


def descriptor_dict(
    frame: FareyFrame,
    kind: SequenceKind,
    twists: TwistSequence,
    splitting_bit: int,
    from_trivial: bool,
) -> dict:
    return {
        "frame": frame.text(),
        "kind": kind.value,
        "twists": twists.text(),
        "splitting_bit": splitting_bit,
        "from_trivial": from_trivial,
    }


def parse_descriptor(d: dict, *, bypass: bool = False):
    """Rebuild the computation inputs from a descriptor dict."""
    if not isinstance(d, dict):
        raise ValueError(f"descriptor must be a JSON object, got {type(d).__name__}")
    missing = [key for key in ("frame", "kind", "twists") if key not in d]
    if missing:
        raise ValueError(f"descriptor is missing {missing}")
    unknown = [key for key in d if key not in _DESCRIPTOR_KEYS]
    if unknown:
        raise ValueError(f"descriptor has unknown keys {unknown}")
    frame = FareyFrame.parse(d["frame"], bypass=bypass)
    kind = SequenceKind(d["kind"])
    twists = TwistSequence.parse(d["twists"])
    splitting_bit = int(d.get("splitting_bit", 0))
    from_trivial = bool(d.get("from_trivial", False))
    return frame, kind, twists, splitting_bit, from_trivial


def invariants_key(invariants: TunnelInvariants) -> str:
    """Canonical serialization used as the dedup key."""
    return json.dumps(invariants.to_dict(), separators=(",", ":"))


def entry_dict(descriptor: dict, invariants: TunnelInvariants, flags) -> dict:
    return {
        "descriptor": descriptor,
        "invariants": invariants.to_dict(),
        "flags": sorted(flags),
        "schema_version": SCHEMA_VERSION,
    }


def dump_line(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


def load_entries(path) -> list[dict]:
    """Read a catalog file; a missing file is an empty catalog."""
    path = Path(path)
    if not path.exists():
        return []
    entries = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: not a JSON line: {exc}") from None
        if entry.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(
                f"{path}:{lineno}: schema_version {entry.get('schema_version')!r}, "
                f"expected {SCHEMA_VERSION}"
            )
        entries.append(entry)
    return entries


def append_lines(path, lines) -> None:
    if not lines:
        return
    with open(path, "a", encoding="utf-8") as handle:
        for line in lines:
            handle.write(line + "\n")


def recompute_invariants(entry: dict) -> TunnelInvariants:
    """Recompute an entry's invariants from its descriptor.

    A frame that only passed because of the validation bypass is re-read the
    same way; the entry's flags say whether that applies.
    """
    bypass = "unverified-bypass" in entry.get("flags", [])
    frame, kind, twists, splitting_bit, from_trivial = parse_descriptor(
        entry["descriptor"], bypass=bypass
    )
    return assemble_invariants(frame, kind, twists, splitting_bit, from_trivial)

"""Deterministic JSON envelopes: every output carries a run manifest."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence

from . import __version__

SCHEMA_PACKAGE = "newton_contact.schemas"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return digest(fh.read())


@dataclass
class RunManifest:
    command: str
    input_digest: str
    config: Dict
    permutation: Optional[Sequence[int]] = None
    outputs: List[Dict] = field(default_factory=list)
    version: str = __version__

    def add_output(self, path: str, kind: str) -> None:
        self.outputs.append({"path": path, "kind": kind, "digest": file_digest(path)})

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "config": self.config,
            "tool": "newton-contact",
            "version": self.version,
            "permutation": list(self.permutation) if self.permutation is not None else None,
            "outputs": list(self.outputs),
        }


def envelope(manifest: RunManifest, result: dict) -> dict:
    return {"manifest": manifest.to_json(), "result": result}


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_schema(name: str) -> dict:
    text = resources.files(SCHEMA_PACKAGE).joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def schema_names() -> List[str]:
    out = []
    for entry in resources.files(SCHEMA_PACKAGE).iterdir():
        if entry.name.endswith(".schema.json"):
            out.append(entry.name[: -len(".schema.json")])
    return sorted(out)


__all__ = ["RunManifest", "envelope", "dumps", "digest", "file_digest", "load_schema", "schema_names"]

"""Plain-text records (``key: value`` lines) and run manifests."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__, _kernels


def format_record(rec: dict[str, object]) -> str:
    return "".join(f"{k}: {v}\n" for k, v in rec.items())


def write_record(path, rec: dict[str, object]) -> None:
    Path(path).write_text(format_record(rec), encoding="utf-8", newline="\n")


def read_record(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            key, _, value = line.partition(":")
            out[key.strip()] = value.strip()
    return out


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def manifest_path(out) -> Path:
    return Path(str(out) + ".manifest.json")


def write_manifest(out, command: str, params: dict, seed: int, outputs: list) -> Path:
    """Write ``<out>.manifest.json`` describing the run and digesting its outputs."""
    manifest = {
        "command": command,
        "params": params,
        "seed": seed,
        "version": __version__,
        "backend": _kernels.BACKEND,
        "outputs": {Path(p).name: file_digest(p) for p in outputs},
    }
    path = manifest_path(out)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path

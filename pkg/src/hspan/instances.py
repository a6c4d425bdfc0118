"""Instance files: random family generation and JSON (de)serialization.

An instance file is a single JSON object:

    {
      "schema_version": "1.0",
      "n": 3,
      "k": 2,
      "kind": "general",            # or "psd"
      "matrices": [ [[ [re, im], ... ], ...], ... ]
    }

`matrices` holds k matrices, each a row-major n x n nested list whose entries
are [re, im] pairs. Floats are written with repr precision, so a generate,
save, load, save round trip is byte-identical. Files with kind "psd" are
validated against the PSD invariants on load.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InstanceFormatError
from .rng import STREAM_GEN, complex_gaussian, seed_children
from .spans import MatrixFamily, PsdFamily

SCHEMA_VERSION = "1.0"
KINDS = ("general", "psd")


def generate_family(n: int, k: int, kind: str = "general",
                    rank_deficit: int = 0, seed: int = 0) -> MatrixFamily:
    """Draw a random family of k Gaussian matrices of size n x n.

    rank_deficit d zeroes the last d columns of every general member; a psd
    member is M M* for a Gaussian M of shape n x (n - d). One child seed per
    matrix, entries drawn row-major.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if not 0 <= rank_deficit < n:
        raise ValueError(f"rank deficit must satisfy 0 <= d < n, got d={rank_deficit}, n={n}")
    mats = []
    for child in seed_children(seed, STREAM_GEN, k):
        rng = np.random.default_rng(child)
        if kind == "psd":
            m = complex_gaussian(rng, n, n - rank_deficit)
            mats.append(m @ m.conj().T)
        else:
            b = complex_gaussian(rng, n, n)
            if rank_deficit:
                b[:, n - rank_deficit:] = 0.0
            mats.append(b)
    return PsdFamily(mats) if kind == "psd" else MatrixFamily(mats)


def matrix_to_pairs(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def instance_dict(family: MatrixFamily, kind: str) -> dict:
    """The JSON object describing a family."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return {
        "schema_version": SCHEMA_VERSION,
        "n": family.n,
        "k": family.k,
        "kind": kind,
        "matrices": [matrix_to_pairs(m) for m in family],
    }


def dump_instance(family: MatrixFamily, kind: str) -> str:
    return json.dumps(instance_dict(family, kind), indent=2) + "\n"


def write_instance(path, family: MatrixFamily, kind: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_instance(family, kind))


def _parse_entry(entry, where: str) -> complex:
    if (not isinstance(entry, list) or len(entry) != 2
            or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in entry)):
        raise InstanceFormatError(f"{where}: entry must be a [re, im] number pair, got {entry!r}")
    if not (math.isfinite(entry[0]) and math.isfinite(entry[1])):
        raise InstanceFormatError(f"{where}: non-finite entry {entry!r}")
    return complex(entry[0], entry[1])


def parse_instance(obj) -> tuple[MatrixFamily, str]:
    """Validate a decoded instance object and build the family it describes."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance must be a JSON object")
    required = {"schema_version", "n", "k", "kind", "matrices"}
    missing = required - obj.keys()
    if missing:
        raise InstanceFormatError(f"missing fields: {sorted(missing)}")
    unknown = obj.keys() - required
    if unknown:
        raise InstanceFormatError(f"unknown fields: {sorted(unknown)}")
    if obj["schema_version"] != SCHEMA_VERSION:
        raise InstanceFormatError(f"unsupported schema_version {obj['schema_version']!r}")
    n, k, kind = obj["n"], obj["k"], obj["kind"]
    if not isinstance(n, int) or n < 1:
        raise InstanceFormatError(f"n must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 1:
        raise InstanceFormatError(f"k must be a positive integer, got {k!r}")
    if kind not in KINDS:
        raise InstanceFormatError(f"kind must be one of {KINDS}, got {kind!r}")
    mats_obj = obj["matrices"]
    if not isinstance(mats_obj, list) or len(mats_obj) != k:
        raise InstanceFormatError(f"matrices must be a list of {k} matrices")
    mats = []
    for mi, rows in enumerate(mats_obj):
        if not isinstance(rows, list) or len(rows) != n:
            raise InstanceFormatError(f"matrix {mi + 1} must have {n} rows")
        m = np.empty((n, n), dtype=np.complex128)
        for ri, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise InstanceFormatError(f"matrix {mi + 1} row {ri + 1} must have {n} entries")
            for ci, entry in enumerate(row):
                m[ri, ci] = _parse_entry(entry, f"matrix {mi + 1} row {ri + 1} col {ci + 1}")
        mats.append(m)
    try:
        family = PsdFamily(mats) if kind == "psd" else MatrixFamily(mats)
    except ValueError as exc:
        raise InstanceFormatError(f"invalid {kind} family: {exc}") from exc
    return family, kind


def load_instance(path) -> tuple[MatrixFamily, str]:
    """Read and validate an instance file; psd files return a PsdFamily."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InstanceFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path} is not valid JSON: {exc}") from exc
    return parse_instance(obj)

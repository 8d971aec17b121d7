"""JSON state files and reports. Complex numbers travel as [re, im] pairs."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import states
from .errors import BellCertError, StateFileError

STATE_SCHEMA_TAG = "bellcert/state/v1"
REPORT_SCHEMA_TAG = "bellcert/report/v1"
SCHEMA_DIR = Path(__file__).resolve().parents[2] / "schema"


def encode_matrix(A) -> list:
    A = np.asarray(A, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in A]


def decode_matrix(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise StateFileError(f"complex matrix must be rows of [re, im] pairs, got array of shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def load_schema(name: str) -> dict | None:
    path = SCHEMA_DIR / name
    if not path.exists():
        return None
    return json.loads(path.read_text())


def _line_of(text: str, key: str) -> str:
    needle = f'"{key}"'
    for k, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return f" (line {k}: {line.strip()})"
    return ""


def _validate(doc, text, schema_name):
    schema = load_schema(schema_name)
    if schema is None:
        return
    import jsonschema

    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema).iter_errors(doc))
    if err is not None:
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        key = next((str(p) for p in reversed(err.absolute_path) if isinstance(p, str)), None)
        ctx = _line_of(text, key) if key else ""
        raise StateFileError(f"invalid state file at {where}: {err.message}{ctx}")


def state_from_dict(doc: dict, text: str = "") -> np.ndarray:
    kind = doc.get("kind")
    try:
        if kind == "dense":
            rho = decode_matrix(doc["matrix"])
            d = doc.get("d")
            if d is not None and rho.shape != (d * d, d * d):
                raise StateFileError(f"dense matrix has shape {rho.shape}, expected {(d * d, d * d)} for d={d}" + _line_of(text, "matrix"))
            return states.check_state(rho)
        if kind == "bell_diagonal":
            return states.bell_diagonal(*doc["lambda"])
        if kind == "fano":
            frame = doc.get("frame")
            U = V = None
            if frame is not None:
                U, V = decode_matrix(frame["U"]), decode_matrix(frame["V"])
            return states.check_state(states.fano_state(doc["r"], doc["s"], doc["lambda"], U, V))
        if kind == "m_copies":
            inner = state_from_dict(doc["state"], text)
            return states.m_copies(inner, int(doc["m"]))
    except KeyError as e:
        raise StateFileError(f"state of kind {kind!r} is missing field {e.args[0]!r}") from None
    except StateFileError:
        raise
    except BellCertError as e:
        raise StateFileError(f"{e}" + _line_of(text, "kind")) from None
    raise StateFileError(f"unknown state kind {kind!r}" + _line_of(text, "kind"))


def parse_state(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        lines = text.splitlines()
        line = lines[e.lineno - 1] if 0 < e.lineno <= len(lines) else ""
        raise StateFileError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}\n  {line}") from None
    if not isinstance(doc, dict):
        raise StateFileError("state file must hold a JSON object")
    _validate(doc, text, "state.v1.json")
    return state_from_dict(doc, text)


def load_state(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise StateFileError(f"cannot read state file {path}: {e.strerror}") from None
    return parse_state(text)


def dense_state_doc(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"schema": STATE_SCHEMA_TAG, "kind": "dense", "d": states.local_dim(rho), "matrix": encode_matrix(rho)}


def observables_to_dict(obs) -> dict:
    out = {
        "n": obs.n,
        "d": obs.d,
        "alice": [encode_matrix(a) for a in obs.alice],
        "bob": [encode_matrix(b) for b in obs.bob],
    }
    if obs.weights:
        out["weights"] = [float(w) for w in obs.weights]
    if obs.scaled_alice:
        out["scaled_alice"] = [encode_matrix(a) for a in obs.scaled_alice]
    if obs.labels:
        out["labels"] = list(obs.labels)
    return out


def observables_from_dict(doc: dict):
    from .observables import ObservableSet

    return ObservableSet(
        int(doc["n"]),
        int(doc["d"]),
        [decode_matrix(a) for a in doc["alice"]],
        [decode_matrix(b) for b in doc["bob"]],
        list(doc.get("weights", [])),
        [decode_matrix(a) for a in doc.get("scaled_alice", [])],
        tuple(doc.get("labels", ())),
    )


def _default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"


def validate_report(report: dict) -> None:
    schema = load_schema("report.v1.json")
    if schema is None:
        return
    import jsonschema

    jsonschema.validate(json.loads(dumps_report(report)), schema)

"""Bundled example models and proofs."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .model import Model, loads
from .proof import Proof, load_proof

MODEL_FIXTURES = {
    "bogota": "Landing in Bogota: two indistinguishable states, one meaning each",
    "nyc": "Landing in New York: two indistinguishable states, two meanings each",
    "ava": "Guard Ava: ten states, ambiguous instruction with two readings",
    "undef_c_left": "Comprehension undefinability pair, left model",
    "undef_c_right": "Comprehension undefinability pair, right model",
    "undef_k_left": "Knowledge undefinability pair, left model",
    "undef_k_right": "Knowledge undefinability pair, right model",
}

PROOF_FIXTURES = {
    "sample_comprehension_of_tautology": "Four-line derivation of C[a](p -> p)",
    "sample_necessitation_on_hypothesis": "Invalid: necessitation applied to a hypothesis",
}


def _resource(name: str):
    if name not in MODEL_FIXTURES and name not in PROOF_FIXTURES:
        raise KeyError(f"no bundled example named {name!r}")
    return resources.files("kclogic") / "data" / f"{name}.json"


def fixture_text(name: str) -> str:
    return _resource(name).read_text(encoding="utf-8")


def load_fixture(name: str) -> Model:
    if name not in MODEL_FIXTURES:
        raise KeyError(f"no bundled model named {name!r}")
    return loads(fixture_text(name))


def load_proof_fixture(name: str) -> Proof:
    if name not in PROOF_FIXTURES:
        raise KeyError(f"no bundled proof named {name!r}")
    with resources.as_file(_resource(name)) as path:
        return load_proof(path)


def emit(name: str, directory) -> list[Path]:
    """Write one bundled example (or all of them for ``"all"``) into ``directory``."""
    names = [*MODEL_FIXTURES, *PROOF_FIXTURES] if name == "all" else [name]
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for n in names:
        target = out_dir / f"{n}.json"
        target.write_text(fixture_text(n), encoding="utf-8")
        written.append(target)
    return written

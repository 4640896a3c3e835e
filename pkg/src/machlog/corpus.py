"""Access to the bundled axiom file and proof corpus."""

from __future__ import annotations

import re
from importlib import resources
from typing import List

from .store import AxiomStore, parse_store

_CORPUS = resources.files(__package__) / "corpus"


def axiom_text() -> str:
    return (_CORPUS / "axiom.dat").read_text()


def load_bundled_store() -> AxiomStore:
    """The bundled store, in memory (no backing file)."""
    return parse_store(axiom_text())


def proof_labels() -> List[str]:
    labels = [p.name[:-len(".proof")] for p in _CORPUS.iterdir()
              if p.name.endswith(".proof")]
    return sorted(labels, key=lambda s: int(re.sub(r"\D", "", s)))


def proof_text(label: str) -> str:
    return (_CORPUS / f"{label}.proof").read_text()

"""Named instances, as used by the command line."""

from __future__ import annotations

from pathlib import Path

from .category import CategoryError, InverseCategory
from .models import FinPInj, PIdS, PIdSOplus, SubPIdSOplus
from .tables import example56, example513, load_table

FACTORIES = {
    "finpinj": FinPInj,
    "pids": lambda: PIdS("abc"),
    "pids-oplus": lambda: PIdSOplus("ab"),
    "subpid": SubPIdSOplus,
    "example56": example56,
    "example513": example513,
}


def make_model(name: str) -> InverseCategory:
    """A shipped instance by name, or a table category read from a JSON file."""
    if name in FACTORIES:
        return FACTORIES[name]()
    path = Path(name)
    if path.suffix == ".json" and path.exists():
        return load_table(path.read_text())
    raise CategoryError(f"unknown model {name!r}; choose from {', '.join(FACTORIES)} "
                        "or give a table JSON file")

"""Example programs shipped with the package."""

from __future__ import annotations

from importlib import resources

from ..syntax import Program, parse_program


def names() -> list[str]:
    return sorted(p.name[:-4] for p in resources.files(__name__).iterdir()
                  if p.name.endswith(".rev"))


def source(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.rev").read_text()


def load(name: str) -> Program:
    return parse_program(source(name))


def programs() -> dict[str, Program]:
    return {n: load(n) for n in names()}

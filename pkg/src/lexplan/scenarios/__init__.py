"""Bundled example scenarios.

Each scenario is a JSON file shipped as package data.  ``path(name)``
returns the filesystem path and ``load(name)`` parses it into a
:class:`~lexplan.costfield.Scenario`.
"""

from importlib import resources

from ..costfield import Scenario
from ..serialize import loads
from ..costfield import scenario_from_dict


def names():
    """Sorted names of the bundled scenarios."""
    found = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(".json"):
            found.append(entry.name[: -len(".json")])
    return sorted(found)


def path(name: str):
    """Filesystem path of a bundled scenario JSON file."""
    p = resources.files(__name__) / f"{name}.json"
    if not p.is_file():
        raise ValueError(f"unknown scenario {name!r}; available: {names()}")
    return p


def load(name: str) -> Scenario:
    """Parse a bundled scenario by name."""
    return scenario_from_dict(loads(path(name).read_text()))

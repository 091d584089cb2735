"""Resource budgets.  Defaults can be overridden through environment variables."""
import os

_ENV = {
    "family_blocks": ("BOXBLOCKS_MAX_BLOCKS", 10_000_000),
    "graph_vertices": ("BOXBLOCKS_MAX_VERTICES", 50_000),
    "clique_structured": ("BOXBLOCKS_MAX_CLIQUE_N", 2000),
    "clique_general": ("BOXBLOCKS_MAX_CLIQUE_GENERAL_N", 128),
    "mis": ("BOXBLOCKS_MAX_MIS_N", 128),
    "piercing": ("BOXBLOCKS_MAX_PIERCE_N", 64),
    "chromatic": ("BOXBLOCKS_MAX_CHROMATIC_N", 64),
    "brute": ("BOXBLOCKS_MAX_BRUTE_N", 20),
}


def budget(name: str) -> int:
    var, default = _ENV[name]
    raw = os.environ.get(var)
    return int(raw) if raw else default


def defaults() -> dict[str, int]:
    return {name: budget(name) for name in _ENV}

"""Flat ``key = value`` experiment files.

Example::

    setting = onebit_exact
    model = wgm
    d = 6
    s = 4
    g = 2
    B = 2
    rho = 2
    sigma = 0.5
    n_grid = 1..4
    trials = 4000
    seed = 7
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass

from ..errors import ParameterError
from ..graph_model import BlockModel, RegularModel, TreeModel, WgmModel, WgmParams
from .experiment import DEFAULT_TRIALS, Scenario

_SECTION = "experiment"
_TRUE = {"1", "true", "yes", "on"}


def model_from_mapping(m) -> object:
    kind = m.get("model", "wgm")
    try:
        if kind == "wgm":
            p = WgmParams(d=int(m["d"]), s=int(m["s"]), g=int(m["g"]), B=int(m["B"]), rho=int(m["rho"]))
            return WgmModel.from_params(p, str(m.get("isolated_vertices", "false")).lower() in _TRUE)
        if kind == "regular":
            return RegularModel(int(m["d"]), int(m["s"]))
        if kind == "tree":
            return TreeModel(int(m["d"]), int(m["s"]), int(m.get("arity", 2)))
        if kind == "block":
            return BlockModel(int(m["J"]), int(m["N"]), int(m["K"]))
    except KeyError as exc:
        raise ParameterError(f"model {kind!r} needs parameter {exc.args[0]!r}") from None
    raise ParameterError(f"unknown model kind {kind!r}")


def parse_grid(text: str) -> list[int]:
    """``"1..6"`` or ``"1,2,4"`` (ranges are inclusive)."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    if not out:
        raise ParameterError("empty n grid")
    return sorted(set(out))


@dataclass(frozen=True)
class Experiment:
    scenario: Scenario
    n_grid: list
    trials: int


def parse_config(text: str) -> Experiment:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str  # keep B, J, N, K case
    cp.read_string(f"[{_SECTION}]\n" + text)
    m = dict(cp[_SECTION])
    if "seed" not in m:
        raise ParameterError("config must set an explicit seed")
    if "setting" not in m:
        raise ParameterError("config must set a setting")
    grid = parse_grid(m.get("n_grid", m.get("n", "1")))
    opt = lambda k, f: f(m[k]) if k in m else None  # noqa: E731
    sc = Scenario(
        setting=m["setting"],
        model=model_from_mapping(m),
        n=grid[0],
        sigma=float(m.get("sigma", 0.0)),
        eps=opt("eps", float),
        C0=float(m.get("C0", 1.0)),
        C=opt("C", float),
        design=m.get("design"),
        override_design=m.get("override_design", "false").lower() in _TRUE,
        decoder=m.get("decoder", "ml"),
        seed=int(m["seed"]),
    )
    return Experiment(sc, grid, int(m.get("trials", DEFAULT_TRIALS)))


def load_config(path) -> Experiment:
    with open(path) as fh:
        return parse_config(fh.read())

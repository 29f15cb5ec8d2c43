"""Flat ``key = value`` run configuration.

Grammar: one ``key = value`` per line; ``#`` starts a comment; blank lines
are ignored; keys are unique. Values are bare tokens (no quoting). Booleans
are ``true``/``false``. Keys not defined for the chosen command are errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError

COMMANDS = ("rate-curve", "simulate", "locking-demo", "acc-info")


@dataclass(frozen=True)
class Param:
    key: str
    type: type
    default: object
    help: str
    check: object = None  # callable(value) -> error message or None
    choices: tuple = ()


def _range(lo, hi, lo_open=False, hi_open=False):
    def check(v):
        bad = (v <= lo if lo_open else v < lo) or (v >= hi if hi_open else v > hi)
        if bad or (isinstance(v, float) and not math.isfinite(v)):
            lb = "(" if lo_open else "["
            rb = ")" if hi_open else "]"
            return f"must lie in {lb}{lo}, {hi}{rb}"
        return None

    return check


_POS = _range(1, 2**63 - 1)
_NONNEG = _range(0, 2**63 - 1)

COMMON = (
    Param("seed", int, 0, "64-bit RNG seed", _range(0, 2**64 - 1)),
    Param("output", str, "", "output file path (overridden by --output)"),
)
OPTIMIZER = (
    Param("restarts", int, 8, "see-saw random restarts", _POS),
    Param("max_iterations", int, 3000, "see-saw iteration cap per restart", _POS),
    Param("elements", int, 0, "POVM elements (0 = dim^2)", _NONNEG),
    Param("tol", float, 1e-10, "see-saw stopping gain", _range(0.0, 1.0, lo_open=True)),
)

SCHEMA = {
    "rate-curve": (
        Param("q_min", float, 0.0, "first QBER", _range(0.0, 0.5)),
        Param("q_max", float, 0.15, "last QBER", _range(0.0, 0.5)),
        Param("q_count", int, 31, "grid points", _POS),
    ),
    "locking-demo": (
        Param("alpha_min", float, 0.0, "first angle (rad)", _range(0.0, math.pi / 4)),
        Param("alpha_max", float, math.pi / 4, "last angle (rad)", _range(0.0, math.pi / 4)),
        Param("alpha_count", int, 25, "grid points", _POS),
        Param("separable_grid", int, 32, "angle grid per side for product measurements", _range(16, 4096)),
        *OPTIMIZER,
    ),
    "acc-info": (
        Param("overlap_min", float, 0.0, "first overlap", _range(0.0, 1.0)),
        Param("overlap_max", float, 1.0, "last overlap", _range(0.0, 1.0)),
        Param("overlap_count", int, 11, "grid points", _POS),
        Param("copies", int, 1, "product copies of the pure pair (1 or 2)", _range(1, 2)),
        *OPTIMIZER,
    ),
    "simulate": (
        Param("n", int, 10000, "sifted key length per round", _POS),
        Param("qber", float, 0.05, "channel QBER", _range(0.0, 0.5)),
        Param("rounds", int, 10, "rounds in the campaign", _POS),
        Param("initial_balance", int, 20000, "pre-shared key bits", _NONNEG),
        Param("mode", str, "conventional", "reconciliation mode", choices=("conventional", "encrypted-ec")),
        Param("ec_scheme", str, "cascade", "error correction", choices=("cascade", "syndrome")),
        Param("pa_cipher_assumed", bool, False, "hash seed sent under a computational cipher"),
        Param("auth_cost", int, 0, "ledger bits per round for authentication", _NONNEG),
        Param("cascade_passes", int, 4, "Cascade passes", _range(1, 64)),
        Param("hamming_r", int, 3, "Hamming check bits per block (syndrome scheme)", _range(2, 10)),
    ),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    output: str = ""
    params: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.params[key]


def params_for(command: str) -> tuple[Param, ...]:
    return COMMON + SCHEMA[command]


def _convert(p: Param, raw: str, line: int | None):
    try:
        if p.type is bool:
            if raw.lower() not in ("true", "false"):
                raise ValueError
            v = raw.lower() == "true"
        elif p.type is int:
            v = int(raw, 10)
        elif p.type is float:
            v = float(raw)
        else:
            v = raw
    except ValueError:
        raise ConfigError(f"expected {p.type.__name__}, got {raw!r}", p.key, line) from None
    if p.choices and v not in p.choices:
        raise ConfigError(f"must be one of {', '.join(p.choices)}", p.key, line)
    if p.check is not None:
        msg = p.check(v)
        if msg:
            raise ConfigError(msg, p.key, line)
    return v


def parse_config(text: str) -> RunConfig:
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", line=lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if not key or not value:
            raise ConfigError("empty key or value", key or None, lineno)
        if key in raw:
            raise ConfigError("duplicate key", key, lineno)
        raw[key] = (value, lineno)

    if "command" not in raw:
        raise ConfigError("missing required key", "command")
    command, cline = raw.pop("command")
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}", "command", cline)

    schema = {p.key: p for p in params_for(command)}
    for key, (_, lineno) in raw.items():
        if key not in schema:
            raise ConfigError(f"unknown key for command {command}", key, lineno)
    values = {}
    for key, p in schema.items():
        values[key] = _convert(p, *raw[key]) if key in raw else p.default

    _check_cross(command, values, raw)
    seed = values.pop("seed")
    output = values.pop("output")
    return RunConfig(command, seed, output, values)


def _check_cross(command: str, v: dict, raw: dict) -> None:
    for lo, hi, cnt in (("q_min", "q_max", "q_count"), ("alpha_min", "alpha_max", "alpha_count"),
                        ("overlap_min", "overlap_max", "overlap_count")):
        if lo in v:
            if v[hi] < v[lo] or (v[cnt] > 1 and v[hi] == v[lo]):
                raise ConfigError(f"must exceed {lo}", hi, raw.get(hi, (None, None))[1])
    if command == "simulate" and v["mode"] == "encrypted-ec" and not v["pa_cipher_assumed"]:
        raise ConfigError("encrypted-ec mode requires pa_cipher_assumed = true", "pa_cipher_assumed",
                          raw.get("pa_cipher_assumed", (None, None))[1])


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def serialize_config(cfg: RunConfig) -> str:
    lines = [f"command = {cfg.command}", f"seed = {cfg.seed}"]
    if cfg.output:
        lines.append(f"output = {cfg.output}")
    for p in SCHEMA[cfg.command]:
        lines.append(f"{p.key} = {_fmt(cfg.params[p.key])}")
    return "\n".join(lines) + "\n"


def describe_defaults() -> str:
    """Help text listing every key and default, per command."""
    out = ["configuration keys (key = value, # comments):", "  command = " + " | ".join(COMMANDS)]
    for p in COMMON:
        out.append(f"  {p.key} = {_fmt(p.default) or '(none)'}  -- {p.help}")
    for cmd in COMMANDS:
        out.append(f"{cmd}:")
        for p in SCHEMA[cmd]:
            extra = f" [{'|'.join(p.choices)}]" if p.choices else ""
            out.append(f"  {p.key} = {_fmt(p.default)}{extra}  -- {p.help}")
    return "\n".join(out)

"""Command-line entry point: ``qkdpp --config run.cfg [--output PATH] [--seed N]``.

Exit status 0 on success, 1 for configuration or domain errors, 2 for
anything unexpected. Output files are written to a temporary sibling and
renamed into place.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .config import RunConfig, describe_defaults, parse_config
from .errors import DomainError, QkdppError
from .info import OptimizerConfig, acc_info_two_pure_equiprob, holevo_quantity, seesaw_acc_info
from .locking import locking_sweep
from .pipeline.protocol import RoundConfig, run_campaign
from .rates import MODEL_NAME, pure_pair, rate_curve

RATE_HEADER = ("qber", "ixy", "chi", "iacc", "rate_dw", "rate_acc")
LOCKING_HEADER = ("alpha", "i_product_local", "i_bell", "i_separable_best", "i_seesaw")
ACC_HEADER = ("overlap", "closed_form", "seesaw", "holevo", "converged")


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if v == 0.0:
        v = 0.0  # no "-0"
    return f"{v:.10g}"


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _json_value(v):
    if isinstance(v, float):
        return None if not math.isfinite(v) else float(f"{v:.10g}")
    return v


def jsonl_text(objs) -> str:
    return "".join(json.dumps({k: _json_value(v) for k, v in o.items()}, sort_keys=False) + "\n" for o in objs)


def grid(lo: float, hi: float, count: int) -> list[float]:
    return [lo] if count == 1 else np.linspace(lo, hi, count).tolist()


def optimizer_config(cfg: RunConfig) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=cfg["restarts"],
        max_iterations=cfg["max_iterations"],
        elements=cfg["elements"] or None,
        seed=cfg.seed,
        tol=cfg["tol"],
    )


def _rate_curve(cfg: RunConfig) -> str:
    pts = rate_curve(grid(cfg["q_min"], cfg["q_max"], cfg["q_count"]))
    return csv_text(RATE_HEADER, [(p.qber, p.ixy, p.chi, p.iacc, p.rate_dw, p.rate_acc) for p in pts])


def _locking(cfg: RunConfig) -> str:
    pts = locking_sweep(grid(cfg["alpha_min"], cfg["alpha_max"], cfg["alpha_count"]),
                        optimizer_config(cfg), cfg["separable_grid"])
    return csv_text(LOCKING_HEADER, [(p.alpha, p.i_product_local, p.i_bell, p.i_separable_best, p.i_seesaw)
                                     for p in pts])


def _acc_info(cfg: RunConfig) -> str:
    opt = optimizer_config(cfg)
    rows = []
    for c in grid(cfg["overlap_min"], cfg["overlap_max"], cfg["overlap_count"]):
        e = pure_pair(c)
        if cfg["copies"] == 2:
            e = e.product(e)
        res = seesaw_acc_info(e, opt)
        rows.append((c, cfg["copies"] * acc_info_two_pure_equiprob(c), res.value, holevo_quantity(e), res.converged))
    return csv_text(ACC_HEADER, rows)


def _simulate(cfg: RunConfig) -> str:
    rc = RoundConfig(
        n=cfg["n"], qber=cfg["qber"], mode=cfg["mode"], pa_cipher_assumed=cfg["pa_cipher_assumed"],
        ec_scheme=cfg["ec_scheme"], seed=cfg.seed, cascade_passes=cfg["cascade_passes"],
        hamming_r=cfg["hamming_r"], auth_cost=cfg["auth_cost"],
    )
    result = run_campaign(rc, cfg["rounds"], cfg["initial_balance"])
    objs = [{"type": "round", **r.as_dict()} for r in result.reports]
    objs.append({"type": "ledger", "model": MODEL_NAME, **result.summary()})
    return jsonl_text(objs)


RUNNERS = {
    "rate-curve": _rate_curve,
    "locking-demo": _locking,
    "acc-info": _acc_info,
    "simulate": _simulate,
}


def default_output(cfg: RunConfig) -> str:
    return f"{cfg.command}.{'jsonl' if cfg.command == 'simulate' else 'csv'}"


def render(cfg: RunConfig) -> str:
    return RUNNERS[cfg.command](cfg)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".qkdpp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run_command(cfg: RunConfig, output: str | None = None) -> str:
    path = output or cfg.output or default_output(cfg)
    write_atomic(path, render(cfg))
    return path


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qkdpp",
        description="Key-rate sweeps, post-processing simulation and the XOR locking example.",
        epilog=describe_defaults(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--config", required=True, help="path to a key = value configuration file")
    p.add_argument("--output", help="output path (default: config 'output' or <command>.csv/.jsonl)")
    p.add_argument("--seed", type=int, help="unsigned 64-bit seed, overrides the config")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            raise DomainError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise DomainError("--seed must be an unsigned 64-bit integer")
            cfg = RunConfig(cfg.command, args.seed, cfg.output, cfg.params)
        path = run_command(cfg, args.output)
    except (DomainError, QkdppError) as exc:
        print(f"qkdpp: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"qkdpp: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(path, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

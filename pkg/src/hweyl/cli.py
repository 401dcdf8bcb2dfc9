"""Command-line front end.

    hweyl spectrum  --limit 1e4
    hweyl remainder --grid 10:2:12
    hweyl moments   --k 3 --grid 1e3:2:11
    hweyl expsum    --T 1e3 --format csv
    hweyl constants --b3-limit 10000
    hweyl verify    --limit 1e4

Exit status: 0 success, 2 invalid configuration, 3 verification failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from hweyl import cache, constants, counting, expsum, moments, verify
from hweyl.errors import HweylError, InvalidConfig, VerificationFailed
from hweyl.mollifier import build_bump
from hweyl.spectrum import JumpSequence, merged_jump_sequence

COMMANDS = ("spectrum", "remainder", "moments", "expsum", "constants", "verify")
EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4


@dataclasses.dataclass(frozen=True)
class Grid:
    start: float
    ratio: float
    count: int

    def values(self) -> np.ndarray:
        return self.start * self.ratio ** np.arange(self.count, dtype=np.float64)

    @classmethod
    def parse(cls, text: str) -> Grid:
        try:
            a, r, n = text.split(":")
            grid = cls(float(a), float(r), int(n))
        except ValueError:
            raise InvalidConfig(f"grid must look like start:ratio:count, got {text!r}") from None
        if not (grid.start > 0 and grid.ratio > 1 and grid.count >= 1):
            raise InvalidConfig("grid needs start > 0, ratio > 1, count >= 1")
        return grid


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    limit: float | None = None
    T: float | None = None
    k: int = 3
    gamma: float = expsum.DEFAULT_GAMMA
    alpha: float = expsum.DEFAULT_ALPHA
    grid: Grid | None = None
    cache_path: Path | None = None
    use_cache: bool = True
    output_format: str = "json"
    threads: int = 1
    seed: int = 0
    samples: int = 200
    b3_limit: int = 10_000
    c2_limit: int = 1_000_000
    torus: bool = False

    def validate(self) -> RunConfig:
        if self.command not in COMMANDS:
            raise InvalidConfig(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise InvalidConfig("format must be csv or json")
        if not 0.75 < self.gamma <= 1.0:
            raise InvalidConfig("gamma must lie in (3/4, 1]")
        if not 2 * self.gamma < self.alpha < 2:
            raise InvalidConfig("alpha must lie in (2 gamma, 2)")
        if self.k not in moments.SUPPORTED_K:
            raise InvalidConfig(f"k must be one of {moments.SUPPORTED_K}")
        if self.limit is not None and not self.limit > 0:
            raise InvalidConfig("limit must be positive")
        if self.T is not None and not self.T > 1:
            raise InvalidConfig("T must exceed 1")
        if self.threads < 1:
            raise InvalidConfig("threads must be positive")
        if self.b3_limit < 12:
            raise InvalidConfig("b3-limit must be at least 12")
        return self


def _threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hweyl", description="Heisenberg-manifold spectral counting and moments.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--limit", type=float, help="spectral cutoff (spectrum, remainder, verify)")
    p.add_argument("--T", type=float, help="time horizon for expsum")
    p.add_argument("--k", type=int, default=3, help="moment order 1, 2 or 3")
    p.add_argument("--gamma", type=float, default=expsum.DEFAULT_GAMMA)
    p.add_argument("--alpha", type=float, default=expsum.DEFAULT_ALPHA)
    p.add_argument("--grid", help="geometric grid start:ratio:count")
    p.add_argument("--cache", type=Path, help="eigenvalue cache file")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--threads", type=_threads, default=1, help="integer or 'auto'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200, help="sample count for expsum")
    p.add_argument("--b3-limit", type=int, default=10_000)
    p.add_argument("--c2-limit", type=int, default=1_000_000)
    p.add_argument("--torus", action="store_true", help="moments of the torus remainder alone")
    return p


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    return RunConfig(
        command=a.command,
        limit=a.limit,
        T=a.T,
        k=a.k,
        gamma=a.gamma,
        alpha=a.alpha,
        grid=Grid.parse(a.grid) if a.grid else None,
        cache_path=a.cache,
        use_cache=not a.no_cache,
        output_format=a.format,
        threads=a.threads,
        seed=a.seed,
        samples=a.samples,
        b3_limit=a.b3_limit,
        c2_limit=a.c2_limit,
        torus=a.torus,
    ).validate()


def _spectrum(cfg: RunConfig, limit: float) -> JumpSequence:
    if not cfg.use_cache:
        return merged_jump_sequence(limit)
    return cache.load_or_build(limit, cfg.cache_path)


def _emit_csv(rows, header, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _g(x) -> str:
    return f"{x:.17g}"


def cmd_spectrum(cfg: RunConfig, out) -> int:
    limit = cfg.limit or 1e4
    seq = _spectrum(cfg, limit)
    if cfg.output_format == "csv":
        mask = seq.jumps <= limit
        prev = np.r_[0, seq.cumulative[:-1]][mask]
        _emit_csv(
            ((_g(v), int(c - p), int(c)) for v, c, p in zip(seq.jumps[mask], seq.cumulative[mask], prev)),
            ["value", "multiplicity", "cumulative"],
            out,
        )
    else:
        json.dump(
            {
                "limit": limit,
                "distinct_values": int(np.count_nonzero(seq.jumps <= limit)),
                "count": int(seq.count(limit)),
                "count_torus": int(seq.count_torus(limit)),
                "count_typeII": int(seq.count_typeII(limit)),
            },
            out,
            indent=2,
        )
        out.write("\n")
    return EXIT_OK


def cmd_remainder(cfg: RunConfig, out) -> int:
    grid = cfg.grid or Grid(10.0, 2.0, 12)
    s = grid.values()
    seq = _spectrum(cfg, float(s[-1]))
    if cfg.output_format == "csv":
        counting.write_remainder_csv(out, s, seq)
    else:
        rows = [dataclasses.asdict(counting.remainder(float(x), seq)) for x in s]
        json.dump({"grid": rows}, out, indent=2)
        out.write("\n")
    return EXIT_OK


def cmd_moments(cfg: RunConfig, out) -> int:
    grid = (cfg.grid or Grid(1e3, 2.0, 11)).values()
    seq = _spectrum(cfg, float(grid[-1]))
    if cfg.torus:
        curve = moments.torus_moment_curve(grid, cfg.k, seq)
    else:
        curve = moments.moment_curves(grid, [cfg.k], seq, cfg.threads)[cfg.k]
    note = None
    try:
        fit = moments.fit_power_law(curve) if len(curve) >= 3 else None
    except HweylError as exc:
        fit, note = None, str(exc)
    report = moments.moments_report(cfg.k, curve, fit)
    report["main_term"] = "torus" if cfg.torus else "weyl"
    report["note"] = note
    if cfg.output_format == "csv":
        _emit_csv(((_g(r.T), _g(r.value)) for r in curve), ["T", "value"], out)
    else:
        json.dump(report, out, indent=2)
        out.write("\n")
    return EXIT_OK


def cmd_expsum(cfg: RunConfig, out) -> int:
    T = cfg.T or 1e3
    econf = expsum.ExpSumConfig(T, cfg.gamma, cfg.alpha)
    profile = build_bump()
    terms = expsum.build_terms(econf, profile)
    seq = _spectrum(cfg, 2 * math.pi * T)
    rep = expsum.meansquare_gap(econf, terms, seq, profile, cfg.samples, cfg.seed)
    if cfg.output_format == "csv":
        expsum.write_trace_csv(out, rep)
    else:
        json.dump(
            {
                "T": T,
                "gamma": cfg.gamma,
                "alpha": cfg.alpha,
                "epsilon": econf.epsilon,
                "terms": len(terms),
                "samples": rep.sample_count,
                "seed": rep.seed,
                "residual_rms": rep.residual_rms,
                "gap_rms": rep.gap_rms,
                "amplitude_ratio": expsum.amplitude_ratio(rep),
            },
            out,
            indent=2,
        )
        out.write("\n")
    return EXIT_OK


def cmd_constants(cfg: RunConfig, out) -> int:
    report = constants.constants_report(cfg.b3_limit, cfg.c2_limit)
    if cfg.output_format == "csv":
        b3 = report["b3"]
        rows = [("b3", _g(b3["partial"])), ("b3_tail", _g(b3["tail_estimate"]))]
        rows += [(f"b3_sum{i + 1}", _g(v)) for i, v in enumerate(b3["per_sum"])]
        rows += [("d3", _g(report["d3"])), ("c2", _g(report["c2"]["partial"]))]
        _emit_csv(rows, ["name", "value"], out)
    else:
        json.dump(report, out, indent=2)
        out.write("\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    results = verify.run_all(cfg.limit or 1e4, cfg.seed)
    if cfg.output_format == "csv":
        _emit_csv(((r.name, "pass" if r.passed else "FAIL", r.detail) for r in results), ["check", "status", "detail"], out)
    else:
        json.dump({"checks": [dataclasses.asdict(r) for r in results]}, out, indent=2)
        out.write("\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationFailed(", ".join(failed))
    return EXIT_OK


HANDLERS = {
    "spectrum": cmd_spectrum,
    "remainder": cmd_remainder,
    "moments": cmd_moments,
    "expsum": cmd_expsum,
    "constants": cmd_constants,
    "verify": cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return HANDLERS[cfg.validate().command](cfg, out)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (HweylError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

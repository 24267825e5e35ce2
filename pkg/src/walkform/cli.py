"""Command line front end: ``walkform {snf,verify,table}``.

Exit status is 0 on success, 1 when a check fails or an internal
cross-check disagrees, and 2 on a bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from . import dynkin
from .graphs import MAX_VERTICES, Graph, dynkin_d, parse_graph6, path, random_graph
from .linalg import rank_exact, rank_mod_p
from .report import VerificationReport
from .smith import determinantal_factors, smith_normal_form
from .walk import rank2_walk, walk_matrix

FAMILIES = ("dynkin-d", "path", "graph6", "random")
FORMATS = ("json", "csv", "text")
PER_N_CLAIMS = ("snf", "rank2", "disjoint", "droot", "intertwine", "walk-eq", "eigen", "e-xi", "det-wb")
GLOBAL_CLAIMS = ("prodsin", "vandermonde", "lemma-odd0", "lemma-m2e")
CLAIMS = ("all",) + PER_N_CLAIMS + GLOBAL_CLAIMS
TABLE_COLUMNS = ("n", "ones", "twos", "zeros", "rank", "rank2", "delta_{n-2}")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str = "dynkin-d"
    n_min: int = 4
    n_max: int = 64
    p: int = 3
    prob: float = 0.5
    seed: int = 0
    fmt: str = "text"
    tolerances: dict[str, float] = field(default_factory=dict)
    claim: str = "all"
    graph6: list[str] = field(default_factory=list)
    exhaustive: int = 4
    samples: int = 100
    m_max: int = 40
    timing: bool = False
    controls: bool = False

    def validate(self, allow_empty: bool = False) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.family != "graph6":
            low = 4 if self.family == "dynkin-d" else 1
            if self.n_min < low:
                raise ConfigError(f"n_min={self.n_min} below {low} for family {self.family}")
            if self.n_max > MAX_VERTICES:
                raise ConfigError(f"n_max={self.n_max} above the {MAX_VERTICES}-vertex cap")
            if self.n_min > self.n_max and not allow_empty:
                raise ConfigError(f"empty range n_min={self.n_min} > n_max={self.n_max}")
        elif not self.graph6:
            raise ConfigError("family graph6 needs --graph6 or --graph6-file")
        if not 0 <= self.prob <= 1:
            raise ConfigError(f"--prob {self.prob} outside [0, 1]")
        if self.p < 2 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
            raise ConfigError(f"--p {self.p} is not prime")
        for name, value in self.tolerances.items():
            if value <= 0:
                raise ConfigError(f"tolerance for {name} must be positive")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)


# ---------------------------------------------------------------------------
# graph selection


def _graphs(cfg: RunConfig) -> list[tuple[str, Graph]]:
    if cfg.family == "graph6":
        return [(f"graph6:{s}", parse_graph6(s)) for s in cfg.graph6]
    if cfg.family == "dynkin-d":
        return [(f"dynkin-d:{n}", dynkin_d(n)) for n in cfg.n_values]
    if cfg.family == "path":
        return [(f"path:{n}", path(n)) for n in cfg.n_values]
    return [(f"random:{n}:{cfg.prob}:{cfg.seed}", random_graph(n, cfg.prob, cfg.seed)) for n in cfg.n_values]


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WALKFORM_THREADS", "1")))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, items: list) -> Iterator:
    """``map`` that may fan out over processes; results come back in input order."""
    workers = min(_threads(), len(items))
    if workers <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items)


# ---------------------------------------------------------------------------
# snf


def _snf_row(task: tuple[str, Graph, int]) -> dict[str, Any]:
    label, G, p = task
    W = walk_matrix(G)
    snf = smith_normal_form(W)
    rank_q, rank_2, rank_p = rank_exact(W), rank2_walk(G), rank_mod_p(W, p)
    consistent = snf.rank == rank_q and snf.rank_mod(2) == rank_2 and snf.rank_mod(p) == rank_p
    return {
        "graph": label,
        "n": G.n,
        "d": list(snf.d),
        "delta": determinantal_factors(snf),
        "rank": rank_q,
        "rank2": rank_2,
        "p": p,
        "rank_p": rank_p,
        "consistent": consistent,
    }


def cmd_snf(cfg: RunConfig, out) -> int:
    rows = _ordered_map(_snf_row, [(label, G, cfg.p) for label, G in _graphs(cfg)])
    ok = True
    writer = None
    for row in rows:
        ok &= row["consistent"]
        if cfg.fmt == "json":
            out.write(json.dumps(row, sort_keys=True) + "\n")
        elif cfg.fmt == "csv":
            if writer is None:
                writer = csv.writer(out, lineterminator="\n")
                writer.writerow(["graph", "n", "d", "rank", "rank2", "p", "rank_p", "consistent"])
            writer.writerow([row["graph"], row["n"], " ".join(map(str, row["d"])), row["rank"],
                             row["rank2"], row["p"], row["rank_p"], row["consistent"]])
        else:
            out.write(f"{row['graph']}: d=[{', '.join(map(str, row['d']))}] rank={row['rank']} "
                      f"rank2={row['rank2']} rank{row['p']}={row['rank_p']}"
                      f"{'' if row['consistent'] else ' INCONSISTENT'}\n")
        out.flush()
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify


def _claim_applies(claim: str, n: int) -> bool:
    if claim == "snf":
        return n >= 4
    if claim == "droot":
        return n >= 4 and n % 2 == 0
    if claim in ("rank2", "disjoint"):
        return n >= 4 and n % 4 == 0
    return n >= 8 and n % 4 == 0


def _run_per_n(task: tuple[str, int, dict]) -> VerificationReport:
    claim, n, tol = task
    if claim == "snf":
        return dynkin.check_snf_theorem(n)
    if claim == "rank2":
        return dynkin.check_rank2_bound(n)
    if claim == "disjoint":
        return dynkin.check_disjoint(n)
    if claim == "droot":
        return dynkin.check_droot(n)
    if claim == "intertwine":
        return dynkin.check_intertwine(n)
    if claim == "walk-eq":
        return dynkin.check_walk_equality(n)
    if claim == "eigen":
        return dynkin.check_eigen(n, tol=tol.get("eigen", 1e-8))
    if claim == "e-xi":
        return dynkin.check_product_e_xi(n, tol=tol.get("e-xi", 1e-6))
    if claim == "det-wb":
        return dynkin.det_walk_B(n, formula_tol=tol.get("det-wb", 1e-4))[1]
    raise ConfigError(f"unknown claim {claim!r}")


def _global_reports(claim: str, cfg: RunConfig) -> Iterable[VerificationReport]:
    rng = random.Random(cfg.seed)
    tol = cfg.tolerances
    if claim == "prodsin":
        for m in range(2, cfg.m_max + 1):
            yield dynkin.check_prodsin(m, tol=tol.get("prodsin", 1e-10))
    elif claim == "vandermonde":
        for _ in range(cfg.samples):
            m = rng.randint(1, 8)
            thetas = [rng.uniform(0, 3.141592653589793) for _ in range(m)]
            yield dynkin.cosine_vandermonde_check(thetas, tol=tol.get("vandermonde", 1e-9))
    elif claim == "lemma-odd0":
        for _ in range(cfg.samples):
            G = random_graph(rng.randint(1, 12), rng.random(), rng.randrange(2**32))
            yield dynkin.check_odd_coefficients(G)
    elif claim == "lemma-m2e":
        yield dynkin.check_square_zero(cfg.exhaustive)


def _control_reports(n: int) -> Iterable[VerificationReport]:
    for r in dynkin.negative_controls(n):
        # a control passes when the perturbed check fails
        yield VerificationReport(
            claim=f"control:{r.claim}", params=r.params,
            status="fail" if r.passed else "pass", witness=r.witness, elapsed_ms=r.elapsed_ms,
        )


def _verify_reports(cfg: RunConfig) -> Iterator[VerificationReport]:
    selected = PER_N_CLAIMS + GLOBAL_CLAIMS if cfg.claim == "all" else (cfg.claim,)
    per_n = [c for c in selected if c in PER_N_CLAIMS]
    tasks = [(c, n, cfg.tolerances) for n in cfg.n_values for c in per_n if _claim_applies(c, n)]
    yield from _ordered_map(_run_per_n, tasks)
    for c in selected:
        if c in GLOBAL_CLAIMS:
            yield from _global_reports(c, cfg)
    if cfg.controls:
        yield from _control_reports(12)


def cmd_verify(cfg: RunConfig, out, err=sys.stderr) -> int:
    passed = failed = 0
    writer = None
    for r in _verify_reports(cfg):
        if r.passed:
            passed += 1
        else:
            failed += 1
        if cfg.fmt == "json":
            out.write(r.to_json(timing=cfg.timing) + "\n")
        elif cfg.fmt == "csv":
            if writer is None:
                writer = csv.writer(out, lineterminator="\n")
                writer.writerow(["claim", "params", "status", "witness", "elapsed_ms"])
            d = r.to_dict(timing=cfg.timing)
            writer.writerow([d["claim"], json.dumps(d["params"], sort_keys=True), d["status"],
                             json.dumps(d["witness"], sort_keys=True),
                             "" if d["elapsed_ms"] is None else d["elapsed_ms"]])
        else:
            line = r.summary()
            if cfg.timing:
                line += f" ({r.elapsed_ms:.1f} ms)"
            out.write(line + "\n")
        out.flush()
    summary = f"RESULT pass={passed} fail={failed}\n"
    (out if cfg.fmt == "text" else err).write(summary)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# table


def _table_row(task: tuple[str, Graph]) -> list[int]:
    _, G = task
    W = walk_matrix(G)
    snf = smith_normal_form(W)
    counts = snf.counts()
    delta = determinantal_factors(snf)[G.n - 2] if G.n >= 2 else 1
    return [G.n, counts.get(1, 0), counts.get(2, 0), counts.get(0, 0), snf.rank, rank2_walk(G), delta]


def cmd_table(cfg: RunConfig, out) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    graphs = _graphs(cfg) if cfg.n_min <= cfg.n_max or cfg.family == "graph6" else []
    for row in _ordered_map(_table_row, graphs):
        writer.writerow(row)
        out.flush()
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _parse_tol(items: list[str]) -> dict[str, float]:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or name not in CLAIMS:
            raise ConfigError(f"bad --tol {item!r}; expected CLAIM=VALUE")
        try:
            out[name] = float(value)
        except ValueError:
            raise ConfigError(f"bad tolerance value in {item!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkform", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES, default=None)
    common.add_argument("--n", type=int, help="single vertex count (sets both ends of the range)")
    common.add_argument("--n-min", type=int, default=None)
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--graph6", action="append", default=[], metavar="STRING")
    common.add_argument("--graph6-file", default=None, metavar="PATH")
    common.add_argument("--p", type=int, default=3, help="prime for the F_p rank (default 3)")
    common.add_argument("--prob", type=float, default=0.5, help="edge probability for --family random")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default=None,
                        help="output format (default text; table always writes CSV)")
    common.add_argument("--tol", action="append", default=[], metavar="CLAIM=VALUE")
    common.add_argument("--timing", action="store_true", help="include elapsed times (output no longer reproducible)")

    sub.add_parser("snf", parents=[common], help="invariant factors and ranks of walk matrices")
    v = sub.add_parser("verify", parents=[common], help="run the D_n theorem checks")
    v.add_argument("--claim", choices=CLAIMS, default="all")
    v.add_argument("--exhaustive", type=int, default=4, help="largest size for lemma-m2e")
    v.add_argument("--samples", type=int, default=100, help="random cases for vandermonde / lemma-odd0")
    v.add_argument("--m-max", type=int, default=40, help="largest m for prodsin")
    v.add_argument("--controls", action="store_true", help="also run negative controls")
    sub.add_parser("table", parents=[common], help="CSV summary of W(D_n) invariants")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    graph6 = list(ns.graph6)
    if ns.graph6_file:
        try:
            with open(ns.graph6_file) as fh:
                graph6 += [line.strip() for line in fh if line.strip()]
        except OSError as exc:
            raise ConfigError(f"cannot read {ns.graph6_file}: {exc}") from None
    family = ns.family or ("graph6" if graph6 else "dynkin-d")
    n_min, n_max = 4, 64
    if ns.n is not None:
        n_min = n_max = ns.n
    if ns.n_min is not None:
        n_min = ns.n_min
    if ns.n_max is not None:
        n_max = ns.n_max
    return RunConfig(
        command=ns.command,
        family=family,
        n_min=n_min,
        n_max=n_max,
        p=ns.p,
        prob=ns.prob,
        seed=ns.seed,
        fmt="csv" if ns.command == "table" else (ns.fmt or "text"),
        tolerances=_parse_tol(ns.tol),
        claim=getattr(ns, "claim", "all"),
        graph6=graph6,
        exhaustive=getattr(ns, "exhaustive", 4),
        samples=getattr(ns, "samples", 100),
        m_max=getattr(ns, "m_max", 40),
        timing=ns.timing,
        controls=getattr(ns, "controls", False),
    )


def main(argv: Optional[list[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        cfg.validate(allow_empty=cfg.command == "table")
        if cfg.command == "verify" and cfg.claim in PER_N_CLAIMS + ("all",) and cfg.family != "dynkin-d":
            raise ConfigError("verify only runs on --family dynkin-d")
        if cfg.command == "snf":
            return cmd_snf(cfg, out)
        if cfg.command == "verify":
            return cmd_verify(cfg, out, err)
        return cmd_table(cfg, out)
    except ConfigError as exc:
        err.write(f"walkform: error: {exc}\n")
        return 2
    except ValueError as exc:
        # bad graph6 input and similar surface here
        err.write(f"walkform: error: {exc}\n")
        return 2


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process; returns ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()

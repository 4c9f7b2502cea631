"""Command-line entry point.

Exit codes: 0 success, 1 computation-domain error (e.g. p | n_i), 2 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import cheb, conv, count, fourier
from .ff import DEFAULT_MAX_FIELD_BITS, FieldError, field_bits_limit, make_field, parse_elem
from .lattice import AbelianGroup, GroupFunction, KernelSpec, LatticeError, parse_grid, pushforward
from .poly import PolyError, format_compact, format_factored

DOMAIN_ERRORS = (
    FieldError,
    PolyError,
    fourier.FourierError,
    conv.ConvError,
    cheb.ChebError,
    count.CountError,
)


class InputError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    kernels: list[str] = dc_field(default_factory=list)
    fmt: str = "json"
    out: str | None = None
    workers: int = 1
    max_field_bits: int = DEFAULT_MAX_FIELD_BITS
    params: dict = dc_field(default_factory=dict)


@dataclass
class Result:
    payload: dict
    text: str
    rows: list[list] | None = None


# ------------------------------------------------------------ input parsing


def _ints(s: str, what: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in s.replace(" ", "").split(",") if x)
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {s!r}") from None
    if not out:
        raise InputError(f"{what} is empty")
    return out


def _orders(s: str) -> tuple[int, ...]:
    out = _ints(s, "orders")
    if any(n < 1 for n in out):
        raise InputError(f"orders must be positive, got {s!r}")
    return out


def _basis(s: str | None):
    if s is None:
        return None
    return [list(_ints(v, "basis vector")) for v in s.split(";")]


def _load_kernel(path: str) -> KernelSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read kernel file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"kernel file {path} is not valid JSON: {exc.msg}") from None
    try:
        return KernelSpec.from_json(data)
    except (LatticeError, FieldError, ValueError) as exc:
        raise InputError(f"kernel file {path}: {exc}") from None


def _load_cortege(paths: Sequence[str]) -> tuple[KernelSpec, ...]:
    if not paths:
        raise InputError("at least one --kernel is required")
    ks = tuple(_load_kernel(p) for p in paths)
    if len({k.field for k in ks}) != 1:
        raise InputError("kernels of a cortege must share one field")
    if len({k.rank for k in ks}) != 1:
        raise InputError("kernels of a cortege must share one rank")
    return ks


def _check_rank(cortege, orders) -> None:
    if cortege[0].rank != len(orders):
        raise InputError(f"kernel rank {cortege[0].rank} does not match {len(orders)} orders")


def _load_grid(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            return parse_grid(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read grid file {path}: {exc.strerror}") from None
    except (LatticeError, ValueError) as exc:
        raise InputError(f"grid file {path}: {exc}") from None


def _poly_payload(P) -> dict:
    return {
        "poly": format_compact(P),
        "factored": format_factored(P),
        "degree": P.deg,
        "coeffs": [str(c) for c in P.coeffs],
    }


# ------------------------------------------------------------ commands


def cmd_field(cfg: JobConfig) -> Result:
    p, r = cfg.params["p"], cfg.params["r"]
    F = make_field(p, r)
    payload = {"p": p, "r": r, "order": F.order, "modulus": list(F.modulus)}
    if cfg.params.get("elements"):
        if F.order > 4096:
            raise InputError("--elements is limited to fields of order <= 4096")
        payload["elements"] = [str(x) for x in F.elements()]
    text = f"GF({F.order}) = GF({p})[t]/({format_compact(_modulus_poly(F))})".replace("x", "t")
    return Result(payload, text)


def _modulus_poly(F):
    from .poly import Poly

    return Poly(make_field(F.p, 1), list(F.modulus))


def cmd_symbol(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    basis = cfg.params.get("basis")
    syms = [fourier.symbol(a, basis) for a in cortege]
    payload = {"symbols": [str(L) for L in syms], "symmetric": [L.is_symmetric() for L in syms]}
    return Result(payload, "\n".join(str(L) for L in syms))


def cmd_charpoly(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    if len(cortege) != 1:
        raise InputError("charpoly takes exactly one --kernel")
    a = cortege[0]
    orders = cfg.params["orders"]
    _check_rank(cortege, orders)
    basis = cfg.params.get("basis")
    route = cfg.params["route"]
    P = cheb.charpoly_route(a, orders, route, basis)
    payload = {"route": route, "orders": list(orders), **_poly_payload(P)}
    if cfg.params.get("verify"):
        agree = {}
        for other in cheb.ROUTES:
            if other == route:
                continue
            try:
                agree[other] = cheb.charpoly_route(a, orders, other, basis) == P
            except DOMAIN_ERRORS as exc:
                agree[other] = f"skipped: {exc}"
        payload["verify"] = agree
        if any(v is False for v in agree.values()):
            raise AssertionError(f"charpoly routes disagree: {agree}")
    return Result(payload, payload["factored"])


def cmd_kernel_dim(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    orders = cfg.params["orders"]
    _check_rank(cortege, orders)
    basis = cfg.params.get("basis")
    route = cfg.params["route"]

    def by(route):
        if route == "matrix":
            if basis is not None:
                raise InputError("the matrix route uses the standard basis; drop --basis")
            G = AbelianGroup.torus(orders)
            return conv.kernel_dimension([pushforward(a, G) for a in cortege])
        return len(fourier.harmonic_points(cortege, orders, basis))

    d = by(route)
    payload = {"orders": list(orders), "route": route, "dimension": d}
    if cfg.params.get("verify"):
        other = "fourier" if route == "matrix" else "matrix"
        d2 = by(other)
        payload["verify"] = {other: d2 == d}
        if d2 != d:
            raise AssertionError(f"kernel dimension routes disagree: {route}={d}, {other}={d2}")
    return Result(payload, str(d))


def cmd_points(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    orders = cfg.params["orders"]
    _check_rank(cortege, orders)
    sl = fourier.harmonic_points(cortege, orders, cfg.params.get("basis"))
    payload = sl.to_json()
    q = cfg.params.get("orbits")
    if q:
        orbits = fourier.dq_orbits(sl, q)
        payload["orbits"] = [[list(pt.exponents) for pt in o] for o in orbits]
    rows = [list(pt.exponents) + list(pt.multi_order) for pt in sl.points]
    text = "\n".join(" ".join(map(str, pt.exponents)) for pt in sl.points)
    header = [f"k{i + 1}" for i in range(len(orders))] + [f"ord{i + 1}" for i in range(len(orders))]
    return Result(payload, text, [header] + rows)


def cmd_trace_basis(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    orders = cfg.params["orders"]
    _check_rank(cortege, orders)
    G = AbelianGroup.torus(orders)
    funcs = [pushforward(a, G) for a in cortege]
    basis = fourier.trace_kernel_basis(funcs)
    payload = {
        "orders": list(orders),
        "dimension": len(basis),
        "basis": [[str(x) for x in f.elems()] for f in basis],
    }
    if cfg.params.get("verify"):
        d = conv.kernel_dimension(funcs)
        payload["verify"] = {"matrix": d == len(basis)}
        if d != len(basis):
            raise AssertionError(f"trace basis has {len(basis)} elements, kernel dimension is {d}")
    text = "\n\n".join(f.to_text() for f in basis) if basis and basis[0].field.r == 1 else str(len(basis))
    return Result(payload, text)


def cmd_table(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    bounds = cfg.params["max"]
    _check_rank(cortege, bounds)
    T = count.table_build(
        cortege,
        bounds,
        basis=cfg.params.get("basis"),
        workers=cfg.workers,
        out=cfg.out,
        resume=not cfg.params.get("no_resume"),
    )
    payload = T.to_json()
    problems = T.check() if cfg.params.get("verify") else []
    if cfg.params.get("verify"):
        payload["verify"] = {"ok": not problems, "problems": problems}
        if problems:
            raise AssertionError("; ".join(problems))
    header = [f"n{i + 1}" for i in range(len(bounds))] + ["d", "s"]
    rows = [list(n) + [d, s] for n, (d, s) in T.entries.items()]
    text = "\n".join(" ".join(f"{x:>4}" for x in r) for r in [header] + rows)
    return Result(payload, text, [header] + rows)


def cmd_graph(cfg: JobConfig) -> Result:
    cortege = _load_cortege(cfg.kernels)
    if len(cortege) != 1:
        raise InputError("graph takes exactly one --kernel")
    g = count.partnership_graph(cortege[0], cfg.params["max"], workers=cfg.workers)
    payload = g.to_json()
    if cfg.params.get("check_levels"):
        rep = count.level_set_check(g)
        payload["levels"] = rep.to_json()
    rows = [["m", "n", "s"]] + [[m, n, s] for (m, n), s in sorted(g.edges.items())]
    text = "\n".join(" ".join(str(v) for v in c) for c in g.components())
    return Result(payload, text, rows)


def cmd_game(cfg: JobConfig) -> Result:
    grid = _load_grid(cfg.params["grid"])
    orders = cfg.params.get("orders") or tuple(grid.shape)
    if tuple(grid.shape) != tuple(orders):
        raise InputError(f"grid shape {grid.shape} does not match orders {orders}")
    F = make_field(2, 1)
    G = AbelianGroup.torus(orders)
    f0 = GroupFunction(G, F, (grid.reshape(-1, 1) % 2).astype(np.int64))
    kernel = None
    if cfg.kernels:
        a = _load_kernel(cfg.kernels[0])
        if a.rank != len(orders):
            raise InputError("kernel rank does not match the grid")
        kernel = pushforward(a, G)
    res = conv.lights_out_solve(f0, kernel)
    payload = res.to_json()
    if res.winnable and cfg.params.get("verify"):
        k = kernel or pushforward(KernelSpec.a_plus(len(orders), F), G)
        ok = conv.convolve(res.moves, k) == f0
        payload["verify"] = {"replay": ok}
        if not ok:
            raise AssertionError("returned moves do not replay to the pattern")
    text = (res.moves if res.winnable else res.certificate).to_text()
    return Result(payload, text)


def cmd_cheb(cfg: JobConfig) -> Result:
    kind = cfg.params["cheb_cmd"]
    if kind == "T":
        n = cfg.params["n"]
        P = cheb.chebyshev_T_shifted(n) if cfg.params.get("shifted") else cheb.chebyshev_T(n)
        payload = {"n": n, "shifted": bool(cfg.params.get("shifted")), **_poly_payload(P)}
        return Result(payload, payload["poly"])
    if kind == "dickson":
        F = make_field(cfg.params["p"], cfg.params["r"])
        try:
            alpha = parse_elem(F, cfg.params["alpha"])
        except (FieldError, ValueError) as exc:
            raise InputError(f"alpha: {exc}") from None
        P = cheb.dickson(cfg.params["n"], cfg.params["kind"], alpha)
        payload = {"n": cfg.params["n"], "kind": cfg.params["kind"], "alpha": str(alpha), **_poly_payload(P)}
        return Result(payload, payload["poly"])
    return cmd_charpoly(cfg)


def cmd_evolve(cfg: JobConfig) -> Result:
    a = _load_kernel(cfg.kernels[0]) if cfg.kernels else None
    grid = _load_grid(cfg.params["grid"])
    orders = cfg.params.get("orders") or tuple(grid.shape)
    if tuple(grid.shape) != tuple(orders):
        raise InputError(f"grid shape {grid.shape} does not match orders {orders}")
    F = a.field if a is not None else make_field(2, 1)
    if F.r != 1:
        raise InputError("evolve reads grids of prime-field values")
    G = AbelianGroup.torus(orders)
    if a is None:
        a = KernelSpec.a_plus(len(orders), F)
    if a.rank != len(orders):
        raise InputError("kernel rank does not match the grid")
    f = GroupFunction(G, F, (grid.reshape(-1, 1) % F.p).astype(np.int64))
    orbit = conv.evolve(f, pushforward(a, G), cfg.params["max_steps"])
    payload = orbit.to_json()
    text = f"preperiod {orbit.preperiod} period {orbit.period}"
    return Result(payload, text)


COMMANDS: dict[str, Callable[[JobConfig], Result]] = {
    "field": cmd_field,
    "symbol": cmd_symbol,
    "charpoly": cmd_charpoly,
    "kernel-dim": cmd_kernel_dim,
    "points": cmd_points,
    "trace-basis": cmd_trace_basis,
    "table": cmd_table,
    "graph": cmd_graph,
    "game": cmd_game,
    "cheb": cmd_cheb,
    "evolve": cmd_evolve,
}


# ------------------------------------------------------------ argparse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _common(sp: argparse.ArgumentParser, kernel: bool = True, orders: bool = False, basis: bool = False):
    sp.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--max-field-bits", type=int, default=DEFAULT_MAX_FIELD_BITS)
    sp.add_argument("--workers", type=int, default=1)
    if kernel:
        sp.add_argument("--kernel", action="append", default=[], help="kernel JSON; repeat for a cortege")
    if orders:
        sp.add_argument("--orders", required=True, type=str)
    if basis:
        sp.add_argument("--basis", help="lattice basis as 'v1;v2;...' with comma-separated entries")
    sp.add_argument("--verify", action="store_true")


def _add_table(sub, name):
    sp = sub.add_parser(name, help="multi-order tables d and s")
    _common(sp, basis=True)
    sp.add_argument("--max", required=True)
    sp.add_argument("--out")
    sp.add_argument("--no-resume", action="store_true")
    return sp


def _add_graph(sub, name):
    sp = sub.add_parser(name, help="partnership graph")
    _common(sp)
    sp.add_argument("--max", required=True, type=int)
    sp.add_argument("--check-levels", action="store_true")
    return sp


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="convlat", description="Convolution equations on lattices over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("field", help="field construction")
    _common(sp, kernel=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--elements", action="store_true")

    sp = sub.add_parser("symbol", help="symbol Laurent polynomials")
    _common(sp, basis=True)

    sp = sub.add_parser("charpoly", help="characteristic polynomial on a product sublattice")
    _common(sp, orders=True, basis=True)
    sp.add_argument("--route", choices=cheb.ROUTES, default="matrix")

    sp = sub.add_parser("kernel-dim", help="dimension of the common kernel")
    _common(sp, orders=True, basis=True)
    sp.add_argument("--route", choices=("matrix", "fourier"), default="matrix")

    sp = sub.add_parser("points", help="harmonic torsion points in mu_n")
    _common(sp, orders=True, basis=True)
    sp.add_argument("--orbits", type=int, help="group points into orbits of xi -> xi^q")

    sp = sub.add_parser("trace-basis", help="kernel basis from traces of harmonic characters")
    _common(sp, orders=True)

    _add_table(sub, "table")
    _add_graph(sub, "graph")
    cp = sub.add_parser("count", help="table and graph jobs")
    csub = cp.add_subparsers(dest="count_cmd", required=True, parser_class=_Parser)
    _add_table(csub, "table")
    _add_graph(csub, "graph")

    sp = sub.add_parser("game", help="solve Lights Out on a torus")
    _common(sp)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--orders")

    cp = sub.add_parser("cheb", help="Chebyshev and Dickson polynomials")
    csub = cp.add_subparsers(dest="cheb_cmd", required=True, parser_class=_Parser)
    sp = csub.add_parser("T")
    _common(sp, kernel=False)
    sp.add_argument("n", type=int)
    sp.add_argument("--shifted", action="store_true")
    sp = csub.add_parser("dickson")
    _common(sp, kernel=False)
    sp.add_argument("n", type=int)
    sp.add_argument("kind", choices=("first", "second"))
    sp.add_argument("alpha")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--r", type=int, default=1)
    sp = csub.add_parser("charpoly")
    _common(sp, orders=True, basis=True)
    sp.add_argument("--route", choices=cheb.ROUTES, default="matrix")

    sp = sub.add_parser("evolve", help="iterate f -> f + f * (a - delta)")
    _common(sp)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--orders")
    sp.add_argument("--max-steps", type=int, default=100000)
    return ap


def _config(ns: argparse.Namespace) -> JobConfig:
    cmd = ns.command
    if cmd == "count":
        cmd = ns.count_cmd
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "fmt", "kernel", "workers", "max_field_bits", "out")}
    if isinstance(params.get("orders"), str):
        params["orders"] = _orders(params["orders"])
    if cmd == "table":
        params["max"] = _orders(params["max"])
    if "basis" in params:
        params["basis"] = _basis(params["basis"])
    if cmd == "field" and (ns.p < 2 or ns.r < 1):
        raise InputError("field needs p >= 2 and r >= 1")
    if ns.workers < 1:
        raise InputError("--workers must be positive")
    return JobConfig(
        command=cmd,
        kernels=list(getattr(ns, "kernel", []) or []),
        fmt=ns.fmt,
        out=getattr(ns, "out", None),
        workers=ns.workers,
        max_field_bits=ns.max_field_bits,
        params=params,
    )


def _render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.payload, sort_keys=True)
    if fmt == "text":
        return res.text
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if res.rows is not None:
        w.writerows(res.rows)
    else:
        w.writerow(["key", "value"])
        for k, v in sorted(res.payload.items()):
            w.writerow([k, v if isinstance(v, (int, str)) else json.dumps(v, sort_keys=True)])
    return buf.getvalue().rstrip("\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        if cfg.max_field_bits < 1:
            raise InputError("--max-field-bits must be positive")
        with field_bits_limit(cfg.max_field_bits):
            res = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        print(f"convlat: malformed input: {exc}", file=stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"convlat: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except LatticeError as exc:
        print(f"convlat: LatticeError: {exc}", file=stderr)
        return 1
    print(_render(res, cfg.fmt), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: ``qschubert <command> [options]``.

Every command writes one JSON document (sorted keys, no timestamps) to stdout.
Exit status: 0 when every selected check passes, 1 when a check fails or runs
out of time, 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .exact_algebra import Polynomial
from .permutations import Permutation, parse_permutation
from .report import FAIL, PASS, SKIPPED, TIMEOUT, CheckResult, Deadline, skipped

SUITES = ("schubert", "ring", "potential", "wdvv", "conditions", "lax")
DEFAULT_TRUNC = {2: 4, 3: 3, 4: 3}
LAX_N3_BUDGET = 600.0


class UsageError(Exception):
    pass


# -- argument handling ---------------------------------------------------------

def _poly(p: Polynomial) -> str:
    return str(p)


def parse_support(text: str | None, n: int):
    """'all', 'len<=k', or permutations separated by ';' or whitespace."""
    if text is None or text.strip() == "all":
        return None
    s = text.replace(" ", "")
    if s.startswith("len<="):
        try:
            k = int(s[len("len<="):])
        except ValueError:
            raise UsageError(f"bad support {text!r}") from None
        if k < 0:
            raise UsageError("support length bound must be nonnegative")
        return ("length", k)
    perms = []
    for chunk in text.replace(";", " ").split():
        perms.append(_perm(chunk, n))
    if not perms:
        raise UsageError("support is empty")
    return tuple(sorted(set(perms), key=lambda w: (w.length, tuple(w))))


def _perm(text: str, n: int) -> Permutation:
    try:
        w = parse_permutation(text)
    except ValueError as exc:
        raise UsageError(f"malformed permutation {text!r}: {exc}") from None
    if len(w) != n:
        raise UsageError(f"permutation {text!r} is not in S_{n}")
    return w


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="rank: work in S_n, 2 <= n <= 4 (default 3)")
    common.add_argument("--trunc", "-D", type=int, dest="trunc", default=None,
                        help="t-degree truncation D (default 4 for n=2, 3 otherwise)")
    common.add_argument("--support", default=None,
                        help="t-support: all | len<=k | permutations separated by ';'")
    common.add_argument("--cache-dir", default=None,
                        help="cache directory (default: $SCHUBERT_CACHE_DIR, else no cache)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--checks", default=None,
                        help="comma-separated suites for verify-all: " + ",".join(SUITES))
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the WDVV scan")
    common.add_argument("--time-budget", type=float, default=None,
                        help="seconds; checks still running when it expires report 'timeout'")

    parser = argparse.ArgumentParser(prog="qschubert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="monomial basis and Schubert tables")
    p = sub.add_parser("schubert", parents=[common], help="classical, quantum and double polynomial of w")
    p.add_argument("--w", required=True)
    p = sub.add_parser("pairing", parents=[common], help="residue pairing <S~_u, S~_v>")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p = sub.add_parser("structconst", parents=[common], help="structure constants c~_{uv}^w")
    p.add_argument("--u")
    p.add_argument("--v")
    sub.add_parser("potential", parents=[common], help="F(t), phi_w(t) and the derivative identities")
    p = sub.add_parser("wdvv", parents=[common], help="WDVV scan over supported quadruples")
    p.add_argument("--degree", type=int, default=None, help="certify mod t-degree D' (default D-3)")
    sub.add_parser("conditions", parents=[common], help="normalization, initial and degree conditions")
    sub.add_parser("lax", parents=[common], help="Gram-Schmidt basis, L_w, M_w and their identities")
    p = sub.add_parser("verify-all", parents=[common], help="run every check suite")
    p.add_argument("--lax", action="store_true", help="include the Lax suite for n = 3")
    return parser


class Config:
    def __init__(self, args: argparse.Namespace):
        if not 2 <= args.n <= 4:
            raise UsageError("--n must be between 2 and 4")
        self.n = args.n
        self.D = DEFAULT_TRUNC[args.n] if args.trunc is None else args.trunc
        if self.D < 0:
            raise UsageError("--trunc must be nonnegative")
        self.support = parse_support(args.support, self.n)
        self.cache_dir = args.cache_dir
        self.format = args.format
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        self.jobs = args.jobs
        self.time_budget = args.time_budget
        self.deadline = Deadline(args.time_budget)
        if args.checks is None:
            self.suites = SUITES
        else:
            chosen = tuple(s.strip() for s in args.checks.split(",") if s.strip())
            unknown = [s for s in chosen if s not in SUITES]
            if unknown or not chosen:
                raise UsageError(f"unknown suites {unknown}; choose from {','.join(SUITES)}")
            self.suites = chosen

    def require_D(self, k: int, what: str) -> None:
        if self.D < k:
            raise UsageError(f"{what} needs --trunc >= {k} (got {self.D})")

    def lax_deadline(self) -> Deadline:
        """The Lax computation at n = 3 always runs under a budget."""
        if self.time_budget is None and self.n >= 3:
            return Deadline(LAX_N3_BUDGET)
        return self.deadline

    def support_json(self, resolved) -> list:
        return [str(w) for w in resolved]


# -- commands --------------------------------------------------------------------

def _ring(cfg: Config):
    from .quotient_ring import quantum_ring
    return quantum_ring(cfg.n, cfg.cache_dir)


def _bundle(cfg: Config):
    from .potential import build_bundle
    return build_bundle(cfg.n, cfg.D, cfg.support, cfg.cache_dir)


def _resolved_support(cfg: Config) -> tuple:
    from .potential import resolve_support
    return resolve_support(cfg.n, cfg.support)


def cmd_basis(cfg: Config, args) -> tuple[dict, list]:
    ring = _ring(cfg)
    rows = []
    for w in ring.perms:
        rows.append({
            "w": str(w),
            "code": list(w.code),
            "classical": _poly(ring.table.classical[w]),
            "quantum": _poly(ring.table.quantum[w]),
            "double": _poly(ring.table.double[w]),
            "in_monomial_basis": {str(list(I)): _poly(c) for I, c in ring.to_monomial[w].items()},
        })
    return {"n": cfg.n, "monomial_basis": [list(I) for I in ring.basis], "schubert": rows,
            "determinant": _poly(ring.determinant)}, []


def cmd_schubert(cfg: Config, args) -> tuple[dict, list]:
    from .schubert import schubert_table
    w = _perm(args.w, cfg.n)
    table = schubert_table(cfg.n, cfg.cache_dir)
    out = {"n": cfg.n, "w": str(w)}
    for name in ("classical", "quantum", "double"):
        p = getattr(table, name)[w]
        out[name] = _poly(p)
        out[name + "_terms"] = p.to_records()
    return out, []


def cmd_pairing(cfg: Config, args) -> tuple[dict, list]:
    ring = _ring(cfg)
    u, v = _perm(args.u, cfg.n), _perm(args.v, cfg.n)
    val = ring.pairing(ring.schubert(u), ring.schubert(v))
    return {"n": cfg.n, "u": str(u), "v": str(v), "value": _poly(val)}, []


def cmd_structconst(cfg: Config, args):
    ring = _ring(cfg)
    if (args.u is None) != (args.v is None):
        raise UsageError("give both --u and --v, or neither for the full table")
    if args.u is not None:
        pairs = [(_perm(args.u, cfg.n), _perm(args.v, cfg.n))]
    else:
        pairs = [(u, v) for u in ring.perms for v in ring.perms]
    rows = []
    for u, v in pairs:
        for w, c in ring.structure_constants(u, v).items():
            rows.append((u, v, w, c))
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["u", "v", "w", "c"])
        for u, v, w, c in rows:
            writer.writerow([str(u), str(v), str(w), _poly(c)])
        return buf.getvalue(), []
    if args.u is not None:
        return {str(w): _poly(c) for _, _, w, c in rows}, []
    return [{"u": str(u), "v": str(v), "w": str(w), "c": _poly(c)} for u, v, w, c in rows], []


def potential_results(cfg: Config, b) -> list[CheckResult]:
    from .potential import orthogonality_t_check, pde_checks
    return pde_checks(b, cfg.deadline) + [orthogonality_t_check(b, cfg.deadline)]


def cmd_potential(cfg: Config, args):
    cfg.require_D(2, "the derivative identities")
    b = _bundle(cfg)
    results = potential_results(cfg, b)
    out = {
        "n": cfg.n,
        "D": cfg.D,
        "support": cfg.support_json(b.support),
        "F": b.F.poly.to_records(),
        "F_text": _poly(b.F.poly),
        "phi": {str(w): _poly(b.phi_K(w).poly) for w in b.ring.perms},
        "checks": [r.to_json() for r in results],
    }
    return out, results


def cmd_wdvv(cfg: Config, args):
    from .potential import wdvv_check
    cfg.require_D(3, "the WDVV check")
    degree = cfg.D - 3 if args.degree is None else args.degree
    if not 0 <= degree <= cfg.D - 3:
        raise UsageError(f"--degree must lie in [0, D-3] = [0, {cfg.D - 3}]")
    b = _bundle(cfg)
    res = wdvv_check(b, degree, jobs=cfg.jobs, deadline=cfg.deadline)
    return {"n": cfg.n, "D": cfg.D, "support": cfg.support_json(b.support),
            "checks": [res.to_json()]}, [res]


def cmd_conditions(cfg: Config, args):
    from .potential import km_conditions_check
    cfg.require_D(3, "the three-point conditions")
    b = _bundle(cfg)
    results = km_conditions_check(b)
    return {"n": cfg.n, "D": cfg.D, "support": cfg.support_json(b.support),
            "checks": [r.to_json() for r in results]}, results


def cmd_lax(cfg: Config, args):
    from .lax import run_lax
    if cfg.n > 3:
        raise UsageError("the Lax computation supports n <= 3")
    cfg.require_D(1, "the Lax identities")
    mats, results = run_lax(cfg.n, cfg.D, cfg.support, cfg.cache_dir, deadline=cfg.lax_deadline())
    out = {"n": cfg.n, "D": cfg.D, "support": cfg.support_json(_resolved_support(cfg)),
           "matrices": None if mats is None else mats.to_json(), "checks": [r.to_json() for r in results]}
    return out, results


def verify_all(cfg: Config, include_lax: bool = False) -> dict:
    """Run the selected suites and assemble one report."""
    from .potential import km_conditions_check, wdvv_check
    from .quotient_ring import ring_checks
    from .schubert import classical_limit_check, delta_determinant_check

    suites: dict = {}
    if "schubert" in cfg.suites:
        suites["schubert"] = [delta_determinant_check(4), classical_limit_check(cfg.n, cfg.cache_dir)]
    if "ring" in cfg.suites:
        suites["ring"] = ring_checks(_ring(cfg), with_determinant=cfg.n <= 3)
    wants_bundle = any(s in cfg.suites for s in ("potential", "wdvv", "conditions"))
    b = _bundle(cfg) if wants_bundle else None
    if "potential" in cfg.suites:
        suites["potential"] = (potential_results(cfg, b) if cfg.D >= 2
                               else [skipped("potential", "needs D >= 2")])
    if "wdvv" in cfg.suites:
        suites["wdvv"] = ([wdvv_check(b, cfg.D - 3, jobs=cfg.jobs, deadline=cfg.deadline)] if cfg.D >= 3
                          else [skipped("wdvv", "needs D >= 3")])
    if "conditions" in cfg.suites:
        suites["conditions"] = km_conditions_check(b)
    if "lax" in cfg.suites:
        if cfg.n == 2 or (cfg.n == 3 and include_lax):
            from .lax import run_lax
            suites["lax"] = (run_lax(cfg.n, cfg.D, cfg.support, cfg.cache_dir, deadline=cfg.lax_deadline())[1]
                             if cfg.D >= 1 else [skipped("lax", "needs D >= 1")])
        else:
            suites["lax"] = [skipped("lax", "n = 3 needs --lax; n = 4 is not supported")]
    flat = [r for rs in suites.values() for r in rs]
    summary = {s: sum(r.status == s for r in flat) for s in (PASS, FAIL, TIMEOUT, SKIPPED)}
    return {
        "config": {
            "n": cfg.n,
            "D": cfg.D,
            "support": "all" if cfg.support is None else (
                f"len<={cfg.support[1]}" if cfg.support[0] == "length" else [str(w) for w in cfg.support]),
            "suites": list(suites),
        },
        "suites": {name: [r.to_json() for r in rs] for name, rs in suites.items()},
        "summary": summary,
        "ok": summary[FAIL] == 0 and summary[TIMEOUT] == 0,
    }, flat


def cmd_verify_all(cfg: Config, args):
    return verify_all(cfg, include_lax=args.lax)


COMMANDS = {
    "basis": cmd_basis,
    "schubert": cmd_schubert,
    "pairing": cmd_pairing,
    "structconst": cmd_structconst,
    "potential": cmd_potential,
    "wdvv": cmd_wdvv,
    "conditions": cmd_conditions,
    "lax": cmd_lax,
    "verify-all": cmd_verify_all,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = Config(args)
        payload, results = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"qschubert: error: {exc}", file=stderr)
        return 2
    if isinstance(payload, str):
        stdout.write(payload)
    else:
        stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0 if all(r.status in (PASS, SKIPPED) for r in results) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

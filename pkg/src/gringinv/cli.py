"""Command line entry point.

Every command writes one JSON report that embeds its configuration, so that
re-running with the same arguments reproduces the report byte for byte.

Exit codes: 0 success, 1 a mathematical check failed, 2 input error,
3 precision budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .characters import character_table
from .errors import InputError, PrecisionExhausted
from .groups import FiniteGroup, load_group, normal_subgroups, xi_set
from .ramification import (annihilation_exponent, equivariant_y, global_c, load_global, load_local, n_of,
                           twisted_c_routes, validate_local)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
ORACLE_BUDGET = 10 ** 6


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: str
    input_sha256: str | None
    p: int | None
    precision_cap: int | None
    samples: int
    seed: int
    jobs: int

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


# -- input resolution -----------------------------------------------------------

def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _file_digest(target: str) -> str | None:
    path = Path(target)
    if path.is_file():
        return hashlib.sha256(path.read_bytes()).hexdigest()
    return None


def _resolve_group(target: str) -> FiniteGroup:
    """A group file, or a builtin name such as C9, C3xC3, heisenberg-27."""
    path = Path(target)
    if path.is_file():
        return load_group(_read_json(path))
    return load_group(target)


# -- commands -------------------------------------------------------------------

def cmd_group_info(args, cfg: RunConfig) -> tuple[dict, bool]:
    G = _resolve_group(args.target)
    normals = normal_subgroups(G)
    result = {
        "name": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "abelian": G.is_abelian,
        "class_sizes": [len(c) for c in G.classes],
        "center_order": G.center.order,
        "subgroup_count": len(G.all_subgroups),
        "normal_subgroups": [list(N.members) for N in normals],
    }
    if G.order % 2:
        result["xi"] = [list(D.members) for D in xi_set(G, character_table(G))]
    else:
        result["xi"] = None
    return result, True


def cmd_chartable(args, cfg: RunConfig) -> tuple[dict, bool]:
    G = _resolve_group(args.target)
    tbl = character_table(G)
    result = tbl.to_json()
    ortho = tbl.check_orthogonality()
    perm = tbl.adams_permutation(2)
    result["orthogonality"] = ortho
    result["adams2_permutation"] = list(perm)
    return result, ortho


def _local_report(d) -> tuple[dict, bool]:
    rep = validate_local(d)
    out = {"validation": rep.to_json()}
    if not rep.valid:
        raise InputError("local datum fails validation: " + ", ".join(c.name for c in rep.failures()))
    via_twist, via_nrd = twisted_c_routes(d)
    agree = via_twist == via_nrd
    index = d.group.order // d.inertia.order
    m = annihilation_exponent(d) if agree else None
    checks = [
        {"name": "closed_form_agrees", "ok": agree},
        {"name": "annihilated_by_quotient_order", "ok": m is not None and index % m == 0,
         "exponent": m, "quotient_order": index},
    ]
    if d.is_totally_ramified:
        checks.append({"name": "totally_ramified_trivial", "ok": via_twist.is_one()})
    out.update({
        "y": [v.to_json() for v in equivariant_y(d).comps],
        "c": [v.to_json() for v in via_twist.comps],
        "annihilation_exponent": m,
        "checks": checks,
    })
    return out, all(c["ok"] for c in checks)


def cmd_cfrak(args, cfg: RunConfig) -> tuple[dict, bool]:
    doc = _read_json(Path(args.target))
    if not isinstance(doc, dict):
        raise InputError("datum file must hold a JSON object")
    if "wild_places" not in doc:
        d = load_local(doc)
        result, ok = _local_report(d)
        result["kind"] = "local"
        return result, ok
    from .dt.verify import verify_global_annihilation

    g = load_global(doc)
    places = []
    ok = True
    for w in g.wild_places:
        rep, good = _local_report(w.local)
        ok &= good
        places.append({"decomposition": list(w.decomposition.members), "residue_char": w.residue_char,
                       "local": rep})
    c = global_c(g)
    result = {
        "kind": "global",
        "c": [v.to_json() for v in c.comps],
        "n": n_of(g) if g.wild_places else None,
        "places": places,
        "roots_of_unity": c.multiplicative_order() is not None,
    }
    ok &= result["roots_of_unity"]
    if g.group.prime is not None and all(w.residue_char == g.group.prime for w in g.wild_places):
        ann = verify_global_annihilation(g, cap=args.precision_cap)
        result["annihilation"] = ann
        ok &= ann["ok"]
    return result, ok


def cmd_dt(args, cfg: RunConfig) -> tuple[dict, bool]:
    from .dt import dt_compute
    from .dt.verify import verify_exponent_bound

    G = _resolve_group(args.target)
    p = args.p or G.prime
    if p is None:
        raise InputError("the trivial group needs --p")
    dt = dt_compute(G, p, cap=args.precision_cap)
    result = dt.to_json()
    result["seed"] = args.seed
    if G.order > 1:
        bound = verify_exponent_bound(G, p, cap=args.precision_cap)
        result["bounds"] = bound["bounds"]
        result["checks"] = bound["checks"]
        return result, bound["ok"]
    result["checks"] = []
    return result, True


def cmd_verify(args, cfg: RunConfig) -> tuple[dict, bool]:
    from .dt import dt_compute
    from .dt.verify import oracle_equivalence, verify_exponent_bound, verify_kernel_exponent

    G = _resolve_group(args.target)
    p = args.p or G.prime
    if p is None or G.order == 1:
        raise InputError("verify needs a non-trivial p-group")
    dt_compute(G, p, cap=args.precision_cap)
    result = {
        "exponent_bound": verify_exponent_bound(G, p, cap=args.precision_cap),
        "kernel_exponent": verify_kernel_exponent(G, p, samples=args.samples, seed=args.seed,
                                                  cap=args.precision_cap),
    }
    K = 0
    while (p ** (K + 1)) ** G.order <= ORACLE_BUDGET:
        K += 1
    if K:
        result["oracle"] = oracle_equivalence(G, p, K, budget=ORACLE_BUDGET)
    else:
        result["oracle"] = {"skipped": True, "reason": f"(Z/{p})[G] already exceeds {ORACLE_BUDGET} elements"}
    ok = all(r.get("ok", True) for r in result.values())
    return result, ok


COMMANDS = {
    "group-info": (cmd_group_info, "orders, classes, normal subgroups and kernels of irreducibles"),
    "chartable": (cmd_chartable, "irreducible character table with Adams permutation"),
    "cfrak": (cmd_cfrak, "twisted unramified characteristic of a local or global datum"),
    "dt": (cmd_dt, "invariant factors of DT(Z_p[G]) with exponent bounds"),
    "verify": (cmd_verify, "exponent bounds, kernel exponent and brute-force oracle"),
}


# -- output ---------------------------------------------------------------------

def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _output_path(out: str, cfg: RunConfig) -> Path:
    path = Path(out)
    if out.endswith(os.sep) or path.is_dir():
        return path / f"{cfg.command}-{cfg.digest()}.json"
    return path


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-cap", type=int, default=None,
                        help="largest p-adic precision K tried (default 2(n+2) for |G| = p^n)")
    common.add_argument("--samples", type=int, default=200, help="random samples for kernel checks")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--jobs", type=int, default=1, help="upper bound on worker processes")
    common.add_argument("--out", default=None,
                        help="report file, or a directory to name the report by its config hash")
    common.add_argument("--p", type=int, default=None, help="prime (defaults to the prime dividing |G|)")

    parser = argparse.ArgumentParser(prog="gringinv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        label = "datum" if name == "cfrak" else "group"
        sp.add_argument("target", metavar=label,
                        help="JSON file" + ("" if name == "cfrak" else " or builtin name (C9, C3xC3, heisenberg-27)"))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples < 0 or args.jobs < 1 or (args.precision_cap is not None and args.precision_cap < 1):
        print("error: --samples must be >= 0, --jobs >= 1 and --precision-cap >= 1", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(args.command, args.target, _file_digest(args.target), args.p, args.precision_cap,
                    args.samples, args.seed, args.jobs)
    handler = COMMANDS[args.command][0]
    report = {"config": asdict(cfg), "version": __version__}
    try:
        result, ok = handler(args, cfg)
        report.update({"result": result, "ok": ok})
        code = EXIT_OK if ok else EXIT_CHECK_FAILED
    except PrecisionExhausted as exc:
        report.update({"error": str(exc), "quotient_orders": exc.orders, "ok": False})
        code = EXIT_PRECISION
    except InputError as exc:
        report.update({"error": str(exc), "ok": False})
        code = EXIT_INPUT
    text = render(report)
    if args.out:
        write_atomic(_output_path(args.out, cfg), text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

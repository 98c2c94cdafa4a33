"""Command line front end: load an instance file and run one verification or computation.

    python -m tools.cli hh data/fixtures/qc2.json --nmax 3
    python -m tools.cli whh data/fixtures/f2c2.json --nmax 4 --module trivial
    python -m tools.cli verify data/fixtures/broken_eps.json --json -

Exit codes: 0 every check passed, 1 some check failed, 2 the instance could
not be parsed or the --json target not written, 3 an axiom failed while loading (or K is not stable), 4 the
command needs a cocycle with values in K.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List

from data.instance_io import Instance, parse_instance
from tools.cleft.chain import verify_cleft_homology
from tools.cleft.cochain import (
    verify_a_equals_k_cohomology,
    verify_cleft_cohomology,
    verify_cohomology_e2,
    verify_right_module,
)
from tools.cleft.connes import verify_cyclic
from tools.cleft.module_action import (
    homology_module,
    verify_a_equals_k_homology,
    verify_module_structure,
    verify_spectral_e2,
)
from tools.cleft.products import verify_products
from tools.cleft.theta import verify_theta_lambda
from tools.errors import AxiomFailure, InstanceParseError, NotStable, UnsupportedCocycle
from tools.hopf_homology.homology import (
    regular_module,
    trivial_left_module,
    trivial_right_module,
    verify_hopf_cohomology,
    verify_hopf_homology,
    verify_trivial_modules,
)
from tools.hopf_homology.resolution import build_resolution
from tools.linalg.matrix import ExactMatrix
from tools.report import Report
from tools.set_runtime import get_runtime, load_runtime_from_env, set_runtime

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_AXIOM_FAILURE = 3
EXIT_UNSUPPORTED = 4

PRODUCT_NMAX = 2


def _module_for(inst: Instance, kind: str, side: str):
    if kind == "trivial":
        return trivial_left_module(inst.H) if side == "left" else trivial_right_module(inst.H)
    if kind == "regular":
        return regular_module(inst.H, side)
    raise ValueError(f"--module must be 'trivial' or 'regular' for this command, got {kind!r}")


def cmd_verify(inst: Instance, args) -> List[Report]:
    reports = list(inst.reports)
    if not inst.complete:
        return reports
    res = build_resolution(inst.H, min(args.nmax, 3))
    reports.append(res.verify())
    reports.append(verify_trivial_modules(inst.H))
    return reports


def cmd_build(inst: Instance, args) -> List[Report]:
    H, b, K, M = inst.H, inst.bundle, inst.K, inst.M
    report = Report(f"structures of {inst.name}")
    report.table("dims", {"H": H.dim, "H^L": H.hl.rank, "H^R": H.hr.rank, "A": inst.A.dim,
                          "K": K.dim, "E": b.dim, "M": M.dim})
    report.info["genuinely weak"] = H.is_genuinely_weak()
    report.info["K separable"] = K.separable
    report.info["f valued in K"] = inst.setting.k_valued
    return [report, verify_theta_lambda(inst.setting, args.nmax)]


def cmd_hh(inst: Instance, args) -> List[Report]:
    st = inst.setting
    st.require_k_valued("hh")
    reports = [verify_cleft_homology(st, args.nmax).report]
    if inst.K.dim == inst.A.dim:
        reports.append(verify_a_equals_k_homology(st, args.nmax))
    return reports


def cmd_hcoh(inst: Instance, args) -> List[Report]:
    st = inst.setting
    st.require_k_valued("hcoh")
    reports = [verify_cleft_cohomology(st, args.nmax)]
    if inst.K.dim == inst.A.dim:
        reports.append(verify_a_equals_k_cohomology(st, args.nmax))
    return reports


def cmd_whh(inst: Instance, args) -> List[Report]:
    return [verify_hopf_homology(inst.H, _module_for(inst, args.module, "left"), args.nmax).report]


def cmd_whcoh(inst: Instance, args) -> List[Report]:
    return [verify_hopf_cohomology(inst.H, _module_for(inst, args.module, "right"), args.nmax).report]


def _action_table(inst: Instance, h: int, n_max: int) -> Report:
    st, F = inst.setting, inst.field
    if not 0 <= h < inst.H.dim:
        raise ValueError(f"--h must be a basis index of H in 0..{inst.H.dim - 1}")
    report = Report(f"e_{h} acting on H^K_*({inst.A.name}, {inst.M.name})")
    for r in range(n_max + 1):
        N = homology_module(st, r, n_max)
        m = ExactMatrix.from_columns(F, N.dim, [N.act_basis(h, v) for v in range(N.dim)])
        report.table(f"e_{h} on H^K_{r}", {i: [F.serialize(c) for c in row] for i, row in enumerate(m.to_numpy())})
    return report


def cmd_ss(inst: Instance, args) -> List[Report]:
    st = inst.setting
    st.require_k_valued("ss")
    r_max = min(args.nmax, 2)
    reports = [
        verify_module_structure(st, r_max),
        verify_spectral_e2(st, args.nmax),
        verify_right_module(st, r_max),
        verify_cohomology_e2(st, args.nmax),
    ]
    if args.h is not None:
        reports.append(_action_table(inst, args.h, args.nmax))
    return reports


def cmd_cyclic(inst: Instance, args) -> List[Report]:
    st = inst.regular_setting
    st.require_k_valued("cyclic")
    return [verify_cyclic(st, args.nmax, args.trunc).report]


def cmd_cup(inst: Instance, args) -> List[Report]:
    st = inst.regular_setting
    st.require_k_valued("cup")
    return [verify_products(st, args.nmax, with_cap=False)]


def cmd_cap(inst: Instance, args) -> List[Report]:
    st = inst.regular_setting
    st.require_k_valued("cap")
    return [verify_products(st, args.nmax, with_cup=False)]


COMMANDS: Dict[str, Callable] = {
    "verify": cmd_verify,
    "build": cmd_build,
    "hh": cmd_hh,
    "hcoh": cmd_hcoh,
    "whh": cmd_whh,
    "whcoh": cmd_whcoh,
    "ss": cmd_ss,
    "cyclic": cmd_cyclic,
    "cup": cmd_cup,
    "cap": cmd_cap,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cleft", description="Homology of cleft extensions from instance files.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("instance", help="path of an instance JSON file")
    parser.add_argument("--nmax", type=int, default=None, help="top degree (3 by default, 2 for cup and cap)")
    parser.add_argument("--trunc", type=int, default=1, help="column window of the HN/HP approximations")
    parser.add_argument("--module", default="trivial", help="coefficients of whh/whcoh: trivial or regular")
    parser.add_argument("--h", type=int, default=None, help="basis element of H whose action ss tabulates")
    parser.add_argument("--json", default=None, help="write the reports as JSON to this path, '-' for stdout")
    parser.add_argument("--log-level", default=None, help="logging level (defaults to CLEFT_LOG_LEVEL or WARNING)")
    return parser


def _emit(name: str, command: str, reports: List[Report], json_target) -> bool:
    passed = all(r.passed for r in reports)
    payload = {"instance": name, "command": command, "passed": passed, "reports": [r.to_dict() for r in reports]}
    if json_target == "-":
        print(json.dumps(payload, indent=1))
    else:
        for r in reports:
            print(r.render())
        if json_target:
            with open(json_target, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=1)
    return passed


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    load_runtime_from_env()
    if args.log_level:
        set_runtime(g_log_level=args.log_level.upper())
    runtime = get_runtime()
    logging.basicConfig(level="DEBUG" if runtime.g_debug_mode else runtime.g_log_level, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    if args.nmax is None:
        args.nmax = PRODUCT_NMAX if args.command in ("cup", "cap") else 3
    if args.nmax < 0 or args.trunc < 0:
        logger.error("--nmax and --trunc must be non-negative")
        return EXIT_PARSE_ERROR
    try:
        inst = parse_instance(args.instance, strict=args.command != "verify")
        reports = COMMANDS[args.command](inst, args)
    except InstanceParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (AxiomFailure, NotStable) as exc:
        print(f"axiom failure: {exc}", file=sys.stderr)
        return EXIT_AXIOM_FAILURE
    except UnsupportedCocycle as exc:
        print(f"unsupported cocycle: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    try:
        passed = _emit(inst.name, args.command, reports, args.json)
    except OSError as exc:
        print(f"cannot write {args.json}: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    logger.info(f"{args.command} {inst.name}: passed={passed}")
    return EXIT_OK if passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

# src/cli/main.py
# Command-line front end: loads definitions, runs one check or construction and
# prints a report (text by default, JSON with --json). Exit code 0 when every
# check passes, 1 when one fails or hits a precondition, 2 on bad input.

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.algebra.errors import InputError, PreconditionError
from src.algebra.reports import CheckReport, error_report
from src.algebra.tensors import sym_sig, tensor_sig, wedge_sig
from src.bialgebra.casimir import (casimir_to_phi, coisotropic_casimir_check, induce_from_coisotropic,
                                   verify_coisotropic_morphism)
from src.bialgebra.qlb import DELTA_SIG, PHI_SIG, check_qlb, make_qlb, twist
from src.cli.loaders import load_lie, load_matrix, load_tensor, split_list, subspace_items
from src.cli.report import (build_report, exit_code, qlb_doc, render_json, render_text, tensor_doc)
from src.lie.algebra import LieAlgebra, check_lie
from src.lie.cochains import ModuleSpec, coboundary_solve, cohomology_dim, invariants
from src.lie.factories import FACTORIES
from src.lie.split import split_subalgebra
from src.manin.quadratic import quadratic
from src.manin.triples import (drinfeld_double, dual_subalgebra_bplus_bminus, manin_triple,
                               manin_triple_check, triple_to_bialgebra)
from src.mc.dgla import check_dgla, mc_residual, serialize_dgla
from src.mc.polbg import pol_bg
from src.rmatrix.classical import cybe, quasitriangular_check, split_r
from src.rmatrix.dynamical import dynamical_check, make_dynamical
from src.utils.configloader import load_config, set_config_path
from src.utils.io import write_json
from src.utils.timeutils import iso_stamp, timer

log = logging.getLogger("cli")


class Run:
    """Collects input hashes and the checks a subcommand produced."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.inputs: Dict[str, dict] = {}
        self.checks: List[Tuple[object, Sequence[str]]] = []
        self.result: dict = {}
        self.labels: Sequence[str] = ()
        cfg = load_config()
        self.limit = int(cfg["report"]["max_residual_terms"])
        self.seed = int(cfg["random"]["seed"])

    def lie(self, arg: str) -> LieAlgebra:
        g, src = load_lie(arg)
        self.inputs["algebra"] = src.describe()
        self.labels = g.labels
        return g

    def tensor(self, name: str, g: LieAlgebra, sig, variables: Sequence[str] = ()):
        arg = getattr(self.args, name)
        if arg is None:
            return None
        t, src = load_tensor(arg, g, sig, variables)
        self.inputs[name] = src.describe()
        return t

    def need(self, name: str, g: LieAlgebra, sig, variables: Sequence[str] = ()):
        t = self.tensor(name, g, sig, variables)
        if t is None:
            raise InputError(f"--{name} is required")
        return t

    def check(self, report, labels: Optional[Sequence[str]] = None) -> None:
        self.checks.append((report, self.labels if labels is None else labels))


# --- subcommands --------------------------------------------------------------------
def cmd_check_lie(run: Run) -> None:
    g = run.lie(run.args.file)
    run.check(check_lie(g))
    run.result["algebra"] = g.describe()


def _qlb(run: Run):
    g = run.lie(run.args.file)
    return make_qlb(g, run.tensor("delta", g, DELTA_SIG), run.tensor("phi", g, PHI_SIG), {"input": "cli"})


def cmd_check_qlb(run: Run) -> None:
    q = _qlb(run)
    run.check(check_qlb(q))
    run.result["qlb"] = qlb_doc(q, run.limit)


def cmd_twist(run: Run) -> None:
    q = _qlb(run)
    lam = run.need("lam", q.g, wedge_sig(2))
    out = twist(q, lam)
    run.check(check_qlb(out))
    run.result["qlb"] = qlb_doc(out, run.limit)


def cmd_casimir_phi(run: Run) -> None:
    g = run.lie(run.args.file)
    c = run.need("casimir", g, sym_sig(2))
    phi = casimir_to_phi(g, c)
    run.check(check_qlb(make_qlb(g, None, phi)))
    run.result["phi"] = tensor_doc(phi, g.labels, run.limit)


def cmd_induce(run: Run) -> None:
    g = run.lie(run.args.file)
    c = run.need("casimir", g, sym_sig(2))
    s = split_subalgebra(g, split_list(run.args.sub))
    run.check(coisotropic_casimir_check(g, s, c))
    q = induce_from_coisotropic(g, s, c)
    run.check(check_qlb(q), q.g.labels)
    run.result["qlb"] = qlb_doc(q, run.limit)


def cmd_verify_morphism(run: Run) -> None:
    g = run.lie(run.args.file)
    c = run.need("casimir", g, sym_sig(2))
    s = split_subalgebra(g, split_list(run.args.sub))
    run.check(verify_coisotropic_morphism(g, s, c))


def cmd_cybe(run: Run) -> None:
    g = run.lie(run.args.file)
    r = run.need("r", g, tensor_sig(2))
    run.check(quasitriangular_check(g, r))
    parts = split_r(g, r)
    run.result.update(cybe=tensor_doc(cybe(g, r), g.labels, run.limit),
                      lam=tensor_doc(parts.lam, g.labels, run.limit), c=tensor_doc(parts.c, g.labels, run.limit))


def cmd_dynamical(run: Run) -> None:
    g = run.lie(run.args.file)
    variables = split_list(run.args.vars)
    s = split_subalgebra(g, split_list(run.args.sub))
    r = run.need("r", g, tensor_sig(2), variables)
    locus = [p.strip() for p in run.args.locus.split(";") if p.strip()] if run.args.locus else None
    dr = make_dynamical(g, s, variables, r, locus)
    run.check(dynamical_check(dr))


def cmd_double(run: Run) -> None:
    g = run.lie(run.args.file)
    b = make_qlb(g, run.need("delta", g, DELTA_SIG), None, {"input": "cli"})
    t = drinfeld_double(b)
    run.check(manin_triple_check(t), t.d.labels)
    run.result["double"] = t.d.describe()


def _triple_result(run: Run, t) -> None:
    report = manin_triple_check(t)
    run.check(report, t.d.labels)
    if report.passed:
        b = triple_to_bialgebra(t)
        run.result["bialgebra"] = qlb_doc(b, run.limit)
        lam = coboundary_solve(b.g, b.delta)
        run.result["coboundary"] = None if lam is None else tensor_doc(lam, b.g.labels, run.limit)


def cmd_triple_check(run: Run) -> None:
    g = run.lie(run.args.file)
    rows, src = load_matrix(run.args.pairing)
    run.inputs["pairing"] = src.describe()
    t = manin_triple(quadratic(g, rows), subspace_items(run.args.g), subspace_items(run.args.gstar))
    _triple_result(run, t)


def cmd_std_triple(run: Run) -> None:
    g = FACTORIES[run.args.algebra]()
    run.inputs["algebra"] = {"factory": run.args.algebra}
    t = dual_subalgebra_bplus_bminus(g)
    run.labels = t.d.labels
    _triple_result(run, t)
    run.result["double"] = t.d.describe()


def cmd_invariants(run: Run) -> None:
    g = run.lie(run.args.file)
    basis = invariants(g, ModuleSpec.parse(run.args.module))
    run.result.update(module=run.args.module, dimension=len(basis),
                      basis=[tensor_doc(t, g.labels, run.limit) for t in basis])


def cmd_cohomology(run: Run) -> None:
    g = run.lie(run.args.file)
    module = ModuleSpec.parse(run.args.module)
    run.result.update(module=module.name, degree=run.args.degree,
                      dimension=cohomology_dim(g, module, run.args.degree))


def cmd_mc_residual(run: Run) -> None:
    g = run.lie(run.args.file)
    L = pol_bg(g, run.args.shift)
    if run.args.shift == 1:
        x = L.qlb_element(make_qlb(g, run.tensor("delta", g, DELTA_SIG), run.tensor("phi", g, PHI_SIG)))
        res = mc_residual(L, x)
        residuals = L.residual_tensors(res)
    else:
        x = L.from_tensors(run.need("casimir", g, sym_sig(2)))
        res = mc_residual(L, x)
        residuals = {f"ce{L.ce_degree(s)}_w{s[1]}": L.tensor(res, L.ce_degree(s), s[1]) for s in sorted(res.parts)}
    run.check(CheckReport("mc", res.is_zero(), witness=None if res.is_zero() else {"support": res.support()},
                          residuals=residuals, details={"algebra": L.name, "truncations": L.truncations}))


def cmd_pol_bg(run: Run) -> None:
    g = run.lie(run.args.file)
    L = pol_bg(g, run.args.shift, run.args.max_weight, run.args.max_degree)
    run.check(check_dgla(L, seed=run.seed))
    run.result["slices"] = [list(s) for s in L.slices]
    run.result["truncations"] = L.truncations
    if run.args.out:
        run.result["out"] = write_json(run.args.out, serialize_dgla(L))


COMMANDS: Dict[str, Callable[[Run], None]] = {
    "check-lie": cmd_check_lie,
    "check-qlb": cmd_check_qlb,
    "twist": cmd_twist,
    "casimir-phi": cmd_casimir_phi,
    "induce": cmd_induce,
    "verify-morphism": cmd_verify_morphism,
    "cybe": cmd_cybe,
    "dynamical": cmd_dynamical,
    "double": cmd_double,
    "triple-check": cmd_triple_check,
    "std-triple": cmd_std_triple,
    "invariants": cmd_invariants,
    "cohomology": cmd_cohomology,
    "mc-residual": cmd_mc_residual,
    "pol-bg": cmd_pol_bg,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured JSON report")
    common.add_argument("--config", help="YAML file overriding config/app.yaml")
    common.add_argument("--log-level", help="logging level (default from the config file)")

    ap = argparse.ArgumentParser(prog="app.py", description="Exact checks for Lie algebras, quasi-Lie bialgebras, "
                                                             "r-matrices and Manin triples.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, file_arg: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        if file_arg:
            p.add_argument("file", help="Lie algebra JSON file or factory name (sl2, sl3, heisenberg, ...)")
        return p

    add("check-lie", "antisymmetry and Jacobi of a bracket table")
    for name, help_ in (("check-qlb", "quasi-Lie bialgebra axioms"), ("twist", "twist by a bivector")):
        p = add(name, help_)
        p.add_argument("--delta", help="cobracket tensor (g*,wedge2)")
        p.add_argument("--phi", help="associator (wedge3)")
        if name == "twist":
            p.add_argument("--lambda", dest="lam", required=True, help="twisting bivector (wedge2)")
    add("casimir-phi", "associator of a Casimir tensor").add_argument("--casimir", required=True)
    for name, help_ in (("induce", "quasi-Lie bialgebra on a coisotropic subalgebra"),
                        ("verify-morphism", "F-morphism checks for a coisotropic subalgebra")):
        p = add(name, help_)
        p.add_argument("--sub", required=True, help="basis labels of h, comma separated")
        p.add_argument("--casimir", required=True)
    add("cybe", "classical Yang-Baxter equation and quasi-triangularity").add_argument("--r", required=True)
    p = add("dynamical", "classical dynamical Yang-Baxter equation")
    p.add_argument("--sub", required=True, help="basis labels of the base subalgebra h")
    p.add_argument("--r", required=True)
    p.add_argument("--vars", required=True, help="coordinates on h*, one per basis element of h")
    p.add_argument("--locus", help="denominator polynomials separated by ';'")
    add("double", "Drinfeld double of a Lie bialgebra").add_argument("--delta", required=True)
    p = add("triple-check", "Manin triple invariants")
    p.add_argument("--g", required=True, help="labels or JSON list of {label: coef} vectors")
    p.add_argument("--gstar", required=True)
    p.add_argument("--pairing", required=True, help="pairing matrix (path or inline JSON)")
    add("std-triple", "the standard triple g* = b+ x_h b- in g + g", file_arg=False).add_argument(
        "--algebra", required=True, choices=["sl2", "sl3"])
    add("invariants", "invariants of g in a tensor module").add_argument("--module", required=True)
    p = add("cohomology", "Chevalley-Eilenberg cohomology dimension")
    p.add_argument("--module", required=True)
    p.add_argument("--degree", type=int, required=True)
    p = add("mc-residual", "Maurer-Cartan residual in Pol(Bg, n)")
    p.add_argument("--shift", type=int, choices=[1, 2], required=True)
    p.add_argument("--delta")
    p.add_argument("--phi")
    p.add_argument("--casimir", help="Casimir tensor (shift 2)")
    p = add("pol-bg", "build Pol(Bg, n) in a finite window")
    p.add_argument("--shift", type=int, choices=[1, 2], required=True)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--out", help="write bases, differentials and brackets as JSON")
    return ap


def _setup_logging(level: Optional[str]) -> None:
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.WARNING),
                        format="[%(name)s] %(message)s", stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        set_config_path(args.config)
        cfg = load_config()
        _setup_logging(args.log_level or cfg["logging"]["level"])
        run = Run(args)
        with timer() as tm:
            try:
                COMMANDS[args.command](run)
            except PreconditionError as e:
                log.info("precondition failed: %s", e)
                run.check(error_report(args.command, str(e)))
        report = build_report(args.command, argv, run.inputs, run.checks, run.result,
                              {"stamp": iso_stamp(), "seconds": tm["seconds"]}, run.limit)
    except (InputError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"[cli] {e}", file=sys.stderr)
        return 2
    finally:
        set_config_path(None)
    if args.json:
        print(render_json(report, int(cfg["report"]["json_indent"])))
    else:
        print(render_text(report))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())

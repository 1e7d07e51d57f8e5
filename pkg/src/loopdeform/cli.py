"""Batch verification driver and report emitter.

Four subcommands run the symbolic suites against named algebras and emit a
stable, machine-readable report:

    loopdeform verify <algebra> [relations|hopf|all]
    loopdeform limit  <algebra> <var->value | var=value> ...
    loopdeform twist  [--order N] [--check cocycle|coassoc|homomorphism|all]
    loopdeform cybe   --r <kind>

Reports carry one verdict per check item (pass / fail / unknown); the overall
status is pass only when nothing failed and nothing stayed unknown, and the
exit code is 0 (pass), 1 (fail), 2 (inconclusive), or 64 (usage error).
JSON output is schema-versioned and byte-deterministic apart from the
elapsed-time field.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import PoleError, UnsupportedAlgebraError
from .hopf import (
    build_hopf,
    check_antipode,
    check_coassoc,
    check_counit,
)
from .presentations import (
    build_yangian_sl2,
    compare_presentations,
    get_presentation,
    specialize,
)
from .repn import default_reps, solve_eval_correction, spin_rep
from .rmatrix import R_KINDS, build_r, cybe_residual
from .serial import dump_presentation
from .twist import (
    DEFAULT_ORDER,
    check_cocycle,
    check_twist_counit,
    check_twisted_antipode,
    check_twisted_coassoc,
    check_twisted_homomorphism,
)

ALGEBRAS = ("uq-sl2", "uq-sl3", "drinfeldian-sl2", "drinfeldian-sl3",
            "yangian-sl2", "twisted-yangian-sl2")
SUITES = ("relations", "hopf", "all")
TWIST_CHECKS = ("cocycle", "coassoc", "homomorphism", "all")
MAX_TWIST_ORDER = 4

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(ValueError):
    """Bad arguments or configuration; maps to exit code 64."""


class VerificationReport:
    """A stable, ordered list of (label, verdict, residual) check items.

    Verdicts are 'pass', 'fail', or 'unknown'; the overall status is pass
    only when no item failed and none stayed unknown (unknown surfaces as
    'inconclusive', never as a silent pass)."""

    def __init__(self, algebra, suite, items, config, notes=()):
        self.algebra = algebra
        self.suite = suite
        self.items = list(items)
        self.config = dict(config)
        self.notes = list(notes)
        self.elapsed_ms = 0

    @property
    def status(self):
        verdicts = {v for _, v, _ in self.items}
        if "fail" in verdicts:
            return "fail"
        if "unknown" in verdicts:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self):
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL,
                "inconclusive": EXIT_INCONCLUSIVE}[self.status]

    def to_dict(self):
        items = []
        for label, verdict, residual in self.items:
            entry = {"label": label, "verdict": verdict}
            if residual is not None:
                entry["residual"] = residual
            items.append(entry)
        return {
            "schema": 1,
            "algebra": self.algebra,
            "suite": self.suite,
            "items": items,
            "config": self.config,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self):
        lines = ["%s %s: %s (%d items, %d ms)"
                 % (self.algebra, self.suite, self.status, len(self.items),
                    self.elapsed_ms)]
        for label, verdict, residual in self.items:
            lines.append("  [%-7s] %s" % (verdict, label))
            if residual is not None and verdict != "pass":
                for row in str(residual).splitlines():
                    lines.append("            %s" % row)
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"


def _verdict(zero_nonzero):
    return {"zero": "pass", "nonzero": "fail"}.get(zero_nonzero, "unknown")


def _payload(verdict, payload):
    if verdict == "pass" or payload is None:
        return None
    return str(payload)


def _rows_to_items(rows, prefix):
    items = []
    for label, raw, payload in rows:
        verdict = _verdict(raw)
        items.append(("%s:%s" % (prefix, label), verdict,
                      _payload(verdict, payload)))
    return items


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(algebra, suite="all", degree_bound=None, reps=None):
    """Relation self-reduction and Hopf-axiom suites for one algebra."""
    if suite not in SUITES:
        raise UsageError("unknown suite %r (have: %s)"
                         % (suite, ", ".join(SUITES)))
    p = get_presentation(algebra)
    if degree_bound is not None:
        p.degree_bound = degree_bound
    witnesses = default_reps(p) if reps is None else [
        _named_rep(spec, p) for spec in reps]
    items = []
    if suite in ("relations", "all"):
        for rel in p.relations:
            z = rel.zero_form(p.alphabet)
            if p.normal_form(z).is_zero():
                items.append(("relation:%s" % rel.label, "pass", None))
                continue
            nonzero = next((r for r in witnesses
                            if not r.evaluate(z).is_zero()), None)
            if nonzero is not None:
                items.append(("relation:%s" % rel.label, "fail",
                              "nonzero in %s" % nonzero.label))
            else:
                items.append(("relation:%s" % rel.label, "unknown",
                              str(p.normal_form(z))))
    if suite in ("hopf", "all"):
        H = build_hopf(p)
        for fn, tag in ((check_coassoc, "coassoc"), (check_counit, "counit"),
                        (check_antipode, "antipode")):
            items.extend(_rows_to_items(fn(H), tag))
    config = {"algebra": algebra, "suite": suite,
              "degree_bound": p.degree_bound,
              "reps": [r.label for r in witnesses]}
    return VerificationReport(algebra, suite, items, config)


def _parse_assignments(assignments):
    parsed = {}
    for text in assignments:
        if "->" in text:
            key, _, val = text.partition("->")
        elif "=" in text:
            key, _, val = text.partition("=")
        else:
            raise UsageError("assignment %r is neither var=value nor "
                             "var->value" % text)
        key = key.strip()
        try:
            parsed[key] = int(val)
        except ValueError:
            raise UsageError("assignment value %r is not an integer"
                             % val) from None
    return parsed


def cmd_limit(algebra, assignments, degree_bound=None):
    """Exact specialization of one algebra, with a target comparison when
    the degeneration has a shipped counterpart."""
    p = get_presentation(algebra)
    if degree_bound is not None:
        p.degree_bound = degree_bound
    parsed = _parse_assignments(assignments)
    config = {"algebra": algebra,
              "assignments": {k: v for k, v in sorted(parsed.items())},
              "degree_bound": p.degree_bound}
    notes = []
    try:
        sp = specialize(p, parsed)
    except PoleError as exc:
        items = [("specialize", "unknown", "PoleError: %s" % exc)]
        return VerificationReport(algebra, "limit", items, config)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    items = []
    if (algebra == "drinfeldian-sl2" and parsed.get("q") == 1
            and parsed.get("kdelta") == 1):
        target = build_yangian_sl2()
        rows = compare_presentations(sp, target,
                                     reps2=default_reps(target))
        for direction, label, verdict in rows:
            items.append(("compare-%s:%s" % (direction, label),
                          _verdict(verdict), None))
    else:
        for rel in sp.relations:
            red = sp.normal_form(rel.zero_form(sp.alphabet))
            items.append(("self-check:%s" % rel.label,
                          "pass" if red.is_zero() else "unknown",
                          None if red.is_zero() else str(red)))
        if parsed.get("eta") == 0:
            for rel in sp.relations:
                free = all(c.var_degree_range("eta") == (0, 0)
                           for c in rel.repl.terms.values())
                items.append(("eta-free:%s" % rel.label,
                              "pass" if free else "fail",
                              None if free else str(rel.repl)))
            notes.append("specialized presentation:")
            notes.extend(dump_presentation(sp).rstrip("\n").splitlines())
    return VerificationReport(algebra, "limit", items, config, notes)


def cmd_twist(order=DEFAULT_ORDER, check="all", max_order=MAX_TWIST_ORDER):
    """Twist suites for the eta-deformation at the given truncation order."""
    if check not in TWIST_CHECKS:
        raise UsageError("unknown twist check %r (have: %s)"
                         % (check, ", ".join(TWIST_CHECKS)))
    if not 0 <= order <= max_order:
        raise UsageError("twist order %d outside [0, %d]" % (order, max_order))
    p = build_yangian_sl2()
    H = build_hopf(p)
    items = []
    if check in ("cocycle", "all"):
        items.extend(_rows_to_items(check_cocycle(order, p=p), "cocycle"))
    if check in ("coassoc", "all"):
        items.extend(_rows_to_items(check_twisted_coassoc(H, order),
                                    "coassoc"))
    if check in ("homomorphism", "all"):
        items.extend(_rows_to_items(check_twisted_homomorphism(H, order),
                                    "homomorphism"))
    if check == "all":
        items.extend(_rows_to_items(check_twisted_antipode(H, order),
                                    "antipode"))
        items.extend(_rows_to_items(check_twist_counit(order, p=p), "counit"))
    config = {"order": order, "check": check, "max_order": max_order}
    return VerificationReport("twisted-yangian-sl2", "twist", items, config)


def cmd_cybe(kind):
    """Classical Yang-Baxter residual for a named r-matrix."""
    # kinds are canonically underscored; accept hyphens on the command line
    kind = kind.replace("-", "_")
    try:
        r = build_r(kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    residual = cybe_residual(r)
    if residual.is_zero():
        items = [("cybe-residual:%s" % kind, "pass", None)]
    else:
        entries = "; ".join("(%d,%d)=%s" % (i, j, c)
                            for i, j, c in residual.nonzero_entries())
        items = [("cybe-residual:%s" % kind, "fail", entries)]
    config = {"r": kind}
    return VerificationReport("classical-sl2", "cybe", items, config)


# ---------------------------------------------------------------------------
# configuration and argument handling
# ---------------------------------------------------------------------------


def _named_rep(spec, p):
    """Build a representation from a `spin:<j>` selector for families that
    support spin ladders; usage error otherwise."""
    if not spec.startswith("spin:"):
        raise UsageError("unknown rep selector %r (expected spin:<j>)" % spec)
    try:
        j = Fraction(spec[len("spin:"):])
    except (ValueError, ZeroDivisionError):
        raise UsageError("bad spin value in %r" % spec) from None
    if p.family == "classical":
        return spin_rep(j, p)
    if p.family == "yangian":
        return solve_eval_correction(j, p)
    raise UsageError("spin:<j> reps exist for the classical and "
                     "eta-deformed families, not %r" % p.family)


def load_config_file(path):
    """key=value lines; '#' comments and blank lines ignored."""
    known = {"degree-bound", "order", "check", "rep", "suite"}
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError("%s:%d: expected key=value, got %r"
                                 % (path, lineno, line))
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in known:
                raise UsageError("%s:%d: unknown config key %r"
                                 % (path, lineno, key))
            if key == "rep":
                out.setdefault("rep", []).append(value.strip())
            else:
                out[key] = value.strip()
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    ap = _Parser(prog="loopdeform",
                 description="exact verification suites for two-parameter "
                             "loop-algebra deformations")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="PATH",
                        help="also write the report as JSON to PATH")
        sp.add_argument("--config", metavar="PATH",
                        help="key=value config file (flags override it)")
        sp.add_argument("--degree-bound", type=int, default=None,
                        help="rewriting length cutoff override")

    sp = sub.add_parser("verify", parents=[], help="relation and Hopf suites")
    sp.add_argument("algebra", choices=ALGEBRAS)
    sp.add_argument("suite", nargs="?", default=None, choices=SUITES)
    sp.add_argument("--rep", action="append", metavar="spin:<j>",
                    help="representation oracle selector (repeatable)")
    common(sp)

    sp = sub.add_parser("limit", help="exact parameter specializations")
    sp.add_argument("algebra", choices=ALGEBRAS)
    sp.add_argument("assignments", nargs="+", metavar="var=value|var->value")
    common(sp)

    sp = sub.add_parser("twist", help="twist-series suites")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--check", default=None, choices=TWIST_CHECKS)
    common(sp)

    sp = sub.add_parser("cybe", help="classical Yang-Baxter residual")
    sp.add_argument("--r", dest="rkind", required=True, metavar="KIND",
                    help="one of %s, or sum:<a>+<b>" % ", ".join(R_KINDS))
    common(sp)
    return ap


def _merged(args):
    """File config with CLI overrides applied."""
    cfg = load_config_file(args.config) if args.config else {}
    degree_bound = args.degree_bound
    if degree_bound is None and "degree-bound" in cfg:
        degree_bound = int(cfg["degree-bound"])
    return cfg, degree_bound


def run(args):
    cfg, degree_bound = _merged(args)
    if args.command == "verify":
        suite = args.suite or cfg.get("suite", "all")
        reps = args.rep if args.rep is not None else cfg.get("rep")
        return cmd_verify(args.algebra, suite, degree_bound=degree_bound,
                          reps=reps)
    if args.command == "limit":
        return cmd_limit(args.algebra, args.assignments,
                         degree_bound=degree_bound)
    if args.command == "twist":
        order = args.order
        if order is None:
            order = int(cfg.get("order", DEFAULT_ORDER))
        check = args.check or cfg.get("check", "all")
        return cmd_twist(order, check)
    if args.command == "cybe":
        return cmd_cybe(args.rkind)
    raise UsageError("unknown command %r" % args.command)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    started = time.monotonic()
    try:
        report = run(args)
    except (UsageError, UnsupportedAlgebraError, OSError) as exc:
        print("loopdeform: error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    report.elapsed_ms = int((time.monotonic() - started) * 1000)
    sys.stdout.write(report.to_text())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Batch frontend: ``kanext <command> [--fixtures DIR] [--out REPORT.json] ...``.

Exit codes: 0 all checks clean, 1 a semantic check failed, 2 usage or parse
error, 3 a size guard aborted a construction.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import (AssumptionError, KanextError, LawError,
                     SizeGuardError, StructureError, ValidationReport)
from .fincat import MAX_COMMA_OBJECTS, validate_category, validate_functor, validate_nat_trans
from .fixtures import FixtureError, FixtureSpec, Resolver, load_fixtures
from .graded import (collapse_graded_ring, check_injections, graded_to_lax_functor,
                     hom_to_strong_functor, regrade_oracle_check, validate_graded_monoid,
                     validate_graded_ring, validate_ring)
from .kan import MAX_ENUMERATION, left_kan_extension, pair_comparison, triple_comparison, verify_kan
from .monoidal import validate_lax_monoidal, validate_monoidal
from .montheorem import (check_assumptions, extend_lax_monoidal, theorem_report,
                         verify_moncat_universal)
from .monoids import validate_hom

log = logging.getLogger("kanext")

COMMANDS = ("validate", "kan-extend", "monoidal-extend", "regrade", "verify-moncat",
            "collapse-ring", "corpus")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
PASS, FAIL, GUARD = "pass", "fail", "size-guard"


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    counterexample: Any = None
    certificate: Any = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "verdict": self.verdict}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Check:
        return cls(d["name"], d["verdict"], d.get("counterexample"), d.get("certificate"))


@dataclass
class Report:
    command: str
    fixtures: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str | None = None
    timing: dict[str, float] | None = None

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "command": self.command,
            "fixtures": list(self.fixtures),
            "checks": [c.to_dict() for c in self.checks],
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            d["error"] = self.error
        if self.timing is not None:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["command"], list(d["fixtures"]),
                   [Check.from_dict(c) for c in d["checks"]], d["exit_code"],
                   d.get("error"), d.get("timing"))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def finish(self) -> Report:
        verdicts = {c.verdict for c in self.checks}
        self.exit_code = EXIT_GUARD if GUARD in verdicts else EXIT_FAIL if FAIL in verdicts else EXIT_OK
        return self


@dataclass(frozen=True)
class Options:
    max_comma_objects: int = MAX_COMMA_OBJECTS
    max_enumeration: int = MAX_ENUMERATION
    bound: int = 2
    moncat_max_objects: int = 2


class UsageError(KanextError):
    pass


# -- payload helpers ---------------------------------------------------------

def _tables(maps) -> list:
    return [list(m.table) for m in maps]


def _report_payload(rep: ValidationReport) -> dict:
    first = rep.violations[0]
    return {"subject": rep.subject, "first": first.to_dict(),
            "violations": [v.to_dict() for v in rep.violations]}


def _from_report(name: str, rep: ValidationReport, certificate: Any = None) -> Check:
    if rep.ok:
        return Check(name, PASS, certificate=certificate)
    return Check(name, FAIL, counterexample=_report_payload(rep), certificate=certificate)


def _guarded(name: str, fn: Callable[[], Check]) -> Check:
    """Run one check, turning library errors into verdicts."""
    try:
        return fn()
    except SizeGuardError as e:
        return Check(name, GUARD, counterexample={"error": str(e)})
    except AssumptionError as e:
        payload: dict[str, Any] = {"assumption": e.assumption, "error": str(e)}
        if isinstance(e.report, ValidationReport) and not e.report.ok:
            payload["report"] = _report_payload(e.report)
        return Check(name, FAIL, counterexample=payload)
    except LawError as e:
        payload = {"error": str(e)}
        if e.report is not None and not e.report.ok:
            payload["report"] = _report_payload(e.report)
        return Check(name, FAIL, counterexample=payload)
    except StructureError as e:
        raise FixtureError(f"malformed tables: {e}") from None
    except FixtureError:
        raise
    except KanextError as e:
        return Check(name, FAIL, counterexample={"error": f"{type(e).__name__}: {e}"})


def _pipeline_functors(obj: dict):
    if "graded_monoid" in obj:
        return graded_to_lax_functor(obj["graded_monoid"]), hom_to_strong_functor(obj["hom"])
    return obj["F"], obj["G"]


# -- per-kind checks ---------------------------------------------------------

_VALIDATORS: dict[str, Callable[[Any], ValidationReport]] = {
    "category": validate_category,
    "functor": validate_functor,
    "nat-trans": validate_nat_trans,
    "monoidal": validate_monoidal,
    "lax-functor": validate_lax_monoidal,
    "graded-monoid": validate_graded_monoid,
    "graded-ring": validate_graded_ring,
    "monoid-hom": validate_hom,
}


def check_validate(name: str, kind: str, obj: Any, opts: Options) -> list[Check]:
    cname = f"{name}:validate"
    if kind == "pipeline":
        def run():
            f, g = _pipeline_functors(obj)
            check_assumptions(f, g)
            return Check(cname, PASS, certificate={"assumptions": [1, 2]})
        return [_guarded(cname, run)]
    return [_guarded(cname, lambda: _from_report(cname, _VALIDATORS[kind](obj)))]


def check_kan_extend(name: str, obj: dict, opts: Options) -> list[Check]:
    cname = f"{name}:kan-extend"

    def run():
        f, g = _pipeline_functors(obj)
        k = left_kan_extension(f.functor, g.functor, opts.max_comma_objects)
        rep = verify_kan(k)
        pair = pair_comparison(k, opts.max_comma_objects)
        triple = triple_comparison(k, opts.max_comma_objects)
        cert = {
            "L_objects": list(k.L.object_map),
            "L_morphisms": _tables(k.L.morphism_map),
            "lambda": _tables(k.lam.components),
            "comma_sizes": [len(c.pairs) for c in k.commas],
            "pair_comparison_bijective": pair.bijective,
            "triple_comparison_bijective": triple.bijective,
        }
        chk = _from_report(cname, rep, cert)
        if chk.verdict == PASS and not (pair.bijective and triple.bijective):
            return Check(cname, FAIL, {"assumption": 4, "error": "comparison map not bijective"},
                         cert)
        return chk

    return [_guarded(cname, run)]


def _extension_certificate(mk) -> dict:
    cert = mk.certificates()
    cert.update({
        "L_objects": list(mk.kan.L.object_map),
        "L_morphisms": _tables(mk.kan.L.morphism_map),
        "lambda": _tables(mk.kan.lam.components),
        "eta_L": list(mk.eta_L.table),
        "mu_L": [_tables(row) for row in mk.mu_L],
    })
    return cert


def check_monoidal_extend(name: str, obj: dict, opts: Options) -> list[Check]:
    cname = f"{name}:monoidal-extend"

    def run():
        f, g = _pipeline_functors(obj)
        mk = extend_lax_monoidal(f, g, max_comma_objects=opts.max_comma_objects,
                                 max_enumeration=opts.max_enumeration)
        return _from_report(cname, theorem_report(mk), _extension_certificate(mk))

    return [_guarded(cname, run)]


def check_regrade(name: str, obj: dict, opts: Options) -> list[Check]:
    cname = f"{name}:regrade"
    if "graded_monoid" not in obj:
        return []

    def run():
        rr = regrade_oracle_check(obj["graded_monoid"], obj["hom"],
                                  max_comma_objects=opts.max_comma_objects,
                                  max_enumeration=opts.max_enumeration)
        cert = {"sizes": list(rr.direct.sizes), "unit": rr.direct.unit_elem,
                "mult": rr.direct.tables(), "bijections": _tables(rr.bijections)}
        if rr.ok:
            return Check(cname, PASS, certificate=cert)
        bad = rr.iso if not rr.iso.ok else rr.theorem
        return Check(cname, FAIL, _report_payload(bad), cert)

    return [_guarded(cname, run)]


def check_verify_moncat(name: str, obj: dict, opts: Options) -> list[Check]:
    cname = f"{name}:verify-moncat"

    def run():
        f, g = _pipeline_functors(obj)
        mk = extend_lax_monoidal(f, g, max_comma_objects=opts.max_comma_objects,
                                 max_enumeration=opts.max_enumeration, uniqueness=False)
        rep = verify_moncat_universal(mk, opts.bound, opts.max_enumeration)
        cert = {
            "bound": rep.bound,
            "functors": len(rep.entries),
            "bijections": sum(e.bijective for e in rep.entries),
            "from_L": sum(e.from_L for e in rep.entries),
            "from_F": sum(e.from_F for e in rep.entries),
        }
        if rep.ok:
            return Check(cname, PASS, certificate=cert)
        bad = next(e for e in rep.entries if not e.bijective)
        return Check(cname, FAIL, {"law": "pasting-bijection", "x": bad.to_dict()}, cert)

    return [_guarded(cname, run)]


def check_collapse_ring(name: str, obj: Any, opts: Options) -> list[Check]:
    cname = f"{name}:collapse-ring"

    def run():
        cr = collapse_graded_ring(obj)
        rep = validate_ring(cr.ring).merged(check_injections(obj, cr))
        r = cr.ring
        cert = {"size": r.size, "zero": r.zero, "one": r.one,
                "elements": [[list(c) for c in x] for x in r.elements],
                "add": [list(row) for row in r.add], "mul": [list(row) for row in r.mul],
                "injections": [list(i) for i in cr.injections]}
        return _from_report(cname, rep, cert)

    return [_guarded(cname, run)]


# -- driver ------------------------------------------------------------------

def _moncat_applicable(obj: dict, opts: Options) -> bool:
    f, g = _pipeline_functors(obj)
    return g.target.base.n_objects <= opts.moncat_max_objects


def plan(command: str, specs: dict[str, FixtureSpec], resolver: Resolver,
         opts: Options) -> list[tuple[str, Callable[[], list[Check]]]]:
    """The (fixture, job) pairs a command runs, in fixture-name order."""
    jobs: list[tuple[str, Callable[[], list[Check]]]] = []
    for name in sorted(specs):
        kind = specs[name].kind
        obj = resolver.build(name)

        def add(fn, *args):
            jobs.append((name, lambda fn=fn, args=args: fn(*args)))

        if command in ("validate", "corpus"):
            add(check_validate, name, kind, obj, opts)
        if kind == "pipeline":
            if command == "kan-extend":
                add(check_kan_extend, name, obj, opts)
            if command in ("monoidal-extend", "corpus"):
                add(check_monoidal_extend, name, obj, opts)
            if command in ("regrade", "corpus"):
                add(check_regrade, name, obj, opts)
            if command == "verify-moncat" or (
                    command == "corpus" and _moncat_applicable(obj, opts)):
                add(check_verify_moncat, name, obj, opts)
        if kind == "graded-ring" and command in ("collapse-ring", "corpus"):
            add(check_collapse_ring, name, obj, opts)
    return jobs


def run_command(command: str, fixtures_path: str, opts: Options = Options(),
                timing: bool = False) -> Report:
    if command not in COMMANDS:
        return Report(command, exit_code=EXIT_USAGE, error=f"unknown command {command!r}")
    report = Report(command)
    try:
        specs = load_fixtures(fixtures_path)
        report.fixtures = sorted(specs)
        resolver = Resolver(specs)
        jobs = plan(command, specs, resolver, opts)
        if not jobs:
            raise UsageError(f"no fixtures applicable to {command!r} in {fixtures_path}")
        times: dict[str, float] = {}
        for name, job in jobs:
            t0 = time.perf_counter()
            checks = job()
            dt = time.perf_counter() - t0
            for c in checks:
                times[c.name] = round(dt, 6)
                log.info("%s %s (%.3fs)", c.verdict.upper(), c.name, dt)
            report.checks.extend(checks)
        if timing:
            report.timing = times
    except (FixtureError, UsageError) as e:
        report.exit_code = EXIT_USAGE
        report.error = str(e)
        return report
    return report.finish()


def _summary_line(c: Check) -> str:
    line = f"{c.verdict.upper():10} {c.name}"
    ce = c.counterexample
    if isinstance(ce, dict):
        if "first" in ce:
            v = ce["first"]
            line += f"  [{v['law']} at {tuple(v['where'])}]"
        elif "assumption" in ce:
            line += f"  [assumption ({ce['assumption']})]"
        elif "error" in ce:
            line += f"  [{ce['error']}]"
    return line


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kanext", description="Pointwise left Kan extensions, "
                                "their induced lax monoidal structure, and regrading.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--fixtures", default="fixtures", metavar="DIR",
                   help="fixture directory or single fixture file (default: ./fixtures)")
    p.add_argument("--out", metavar="REPORT.json", help="write the machine-readable report here")
    p.add_argument("--max-comma-objects", type=int, default=MAX_COMMA_OBJECTS, metavar="N")
    p.add_argument("--max-enumeration", type=int, default=MAX_ENUMERATION, metavar="N")
    p.add_argument("--bound", type=int, default=2, metavar="N",
                   help="size bound on test functors for verify-moncat (default 2)")
    p.add_argument("--timing", action="store_true",
                   help="include per-check wall time in the report (not deterministic)")
    p.add_argument("-q", "--quiet", action="store_true", help="no per-check output")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    for flag in ("max_comma_objects", "max_enumeration", "bound"):
        if getattr(args, flag) < 0:
            print(f"kanext: --{flag.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    opts = Options(args.max_comma_objects, args.max_enumeration, args.bound)
    report = run_command(args.command, args.fixtures, opts, timing=args.timing)
    if not args.quiet:
        for c in report.checks:
            print(_summary_line(c))
    if report.error:
        print(f"kanext: error: {report.error}", file=sys.stderr)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(report.dumps())
        except OSError as e:
            print(f"kanext: cannot write report: {e.strerror}", file=sys.stderr)
            return EXIT_USAGE
    if not args.quiet:
        n_pass = sum(c.verdict == PASS for c in report.checks)
        print(f"{n_pass}/{len(report.checks)} checks passed, exit {report.exit_code}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

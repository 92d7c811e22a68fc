"""Command line interface.

Algebra arguments are a JSON file path, inline JSON text, or ``@name`` for a
catalogue entry.  Functional arguments are a file path, inline JSON, or
``@name`` for a functional listed under ``"functionals"`` in the algebra file.

Exit codes: 0 success/true, 1 false/distinct, 2 inconclusive, 3 input error.
"""

import argparse
import json
import sys

from . import catalogue
from .dixmier import build_dixmier, pq_formula, validate_step_images
from .dixmier.morphism import slice_element
from .dixmier.split import split_maximal
from .exactlin.graded import GradedSubspace, vector_parity
from .induced import DescentFailure, InducedTruncation, TruncationOverflow
from .orbits import orbit_equal
from .parsing import (
    InputError,
    ParseError,
    algebra_from_data,
    functional_from_data,
    load_json,
    parse_element,
    serialize_algebra,
)
from .pbw import to_vector
from .polarization import check_polarization, polarize
from .superlie import HypothesisError, validate

EXIT_TRUE, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class _Ctx:
    """Loaded algebra plus the raw data it came from (for named functionals)."""

    def __init__(self, spec, validate_result=True):
        if spec.startswith("@"):
            try:
                self.data = catalogue.raw(spec[1:])
            except KeyError as exc:
                raise InputError(str(exc.args[0])) from None
        else:
            try:
                self.data = load_json(spec)
            except OSError as exc:
                raise InputError("cannot read %s: %s" % (spec, exc.strerror)) from None
        self.alg = algebra_from_data(self.data, validate_result=validate_result)

    def functional(self, spec):
        if spec.startswith("@"):
            for f in self.data.get("functionals", []):
                if f.get("name") == spec[1:]:
                    return functional_from_data(self.alg, f)
            raise InputError("no functional named %r in %s" % (spec[1:], self.alg.name))
        try:
            data = load_json(spec)
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (spec, exc.strerror)) from None
        return functional_from_data(self.alg, data)

    def element(self, text):
        return parse_element(self.alg, text)

    def subspace(self, text):
        """Comma-separated linear expressions in the generators."""
        alg = self.alg
        vecs = []
        for part in text.split(","):
            if not part.strip():
                continue
            u = parse_element(alg, part)
            if u.degree > 1 or u.scalar_part():
                raise InputError("%r is not a linear combination of generators" % part.strip())
            v = to_vector(u)
            try:
                vector_parity(alg.parities, v)
            except ValueError:
                raise InputError("%r is not homogeneous" % part.strip()) from None
            vecs.append(v)
        return GradedSubspace.span(alg.parities, vecs)


def _subspace_json(alg, S):
    return {"even": [alg.format(v) for v in S.even.rows], "odd": [alg.format(v) for v in S.odd.rows],
            "sdim": str(S.sdim)}


def _emit(args, payload, text_lines):
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args):
    ctx = _Ctx(args.algebra, validate_result=False)
    rep = validate(ctx.alg)
    payload = {"algebra": ctx.alg.name, "sdim": str(ctx.alg.sdim), "valid": bool(rep)}
    if not rep:
        payload.update({"axiom": rep.axiom, "where": list(rep.where), "message": rep.message})
    else:
        payload["normalized"] = serialize_algebra(ctx.alg)
    _emit(args, payload, ["%s %s: %s" % (ctx.alg.name, ctx.alg.sdim, rep)])
    return EXIT_TRUE if rep else EXIT_FALSE


def cmd_polarize(args):
    ctx = _Ctx(args.algebra)
    lam = ctx.functional(args.functional)
    pol = polarize(ctx.alg, lam)
    rep = check_polarization(ctx.alg, pol.h, lam)
    checks = {"subalgebra": rep.subalgebra, "subordinate": rep.subordinate,
              "contains_kernel": rep.contains_kernel, "maximal_isotropic": rep.maximal_isotropic,
              "even_dimension": rep.even_dimension}
    payload = {"h": _subspace_json(ctx.alg, pol.h), "checks": checks}
    lines = ["h = span(%s)  sdim %s" % (", ".join(ctx.alg.format(v) for v in pol.h.basis), pol.h.sdim)]
    lines += ["  %s: %s" % (k, "ok" if v else "FAILED") for k, v in checks.items()]
    _emit(args, payload, lines)
    return EXIT_TRUE if rep else EXIT_FALSE


def cmd_dixmier(args):
    ctx = _Ctx(args.algebra)
    lam = ctx.functional(args.functional)
    m = build_dixmier(ctx.alg, lam)
    steps = validate_step_images(m)
    payload = m.to_json()
    payload["pq_formula"] = list(pq_formula(ctx.alg, lam))
    payload["step_images_valid"] = steps.ok
    lines = ["(p, q) = (%d, %d)" % (m.p, m.q), "target: %s" % m.target.describe()]
    if payload["adjoined_radicands"]:
        lines.append("radicands: %s" % ", ".join(payload["adjoined_radicands"]))
    for s in m.steps:
        lines.append("  depth %d: %s on %s" % (s.depth, s.kind, s.algebra.sdim))
    for lab, im in m.generator_images().items():
        lines.append("  %s -> %s" % (lab, im or "0"))
    lines.append("step images: %s" % ("valid" if steps.ok else "; ".join(steps.failures)))
    _emit(args, payload, lines)
    return EXIT_TRUE if steps.ok else EXIT_FALSE


def cmd_member(args):
    ctx = _Ctx(args.algebra)
    lam = ctx.functional(args.functional)
    if args.element is None:
        raise InputError("member needs --element")
    u = ctx.element(args.element)
    m = build_dixmier(ctx.alg, lam)
    image = m(u)
    inside = not image
    payload = {"element": str(u), "member": inside, "image": str(image) or "0"}
    _emit(args, payload, ["%s %s I(lambda)  [image %s]" % (u, "in" if inside else "not in", payload["image"])])
    return EXIT_TRUE if inside else EXIT_FALSE


def cmd_orbit_eq(args):
    ctx = _Ctx(args.algebra)
    lam1 = ctx.functional(args.first)
    lam2 = ctx.functional(args.second)
    verdict = orbit_equal(ctx.alg, lam1, lam2, degree=args.degree, tries=args.tries, seed=args.seed)
    payload = verdict.to_json(ctx.alg)
    lines = ["verdict: %s" % verdict.kind]
    if verdict.witness is not None:
        lines.append("witness: %s" % (" then ".join("exp(ad %s)" % ctx.alg.format(x) for x in verdict.witness)
                                      or "identity"))
    if verdict.separator is not None:
        lines.append("separator: %s" % verdict.separator)
    _emit(args, payload, lines)
    if verdict.kind == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_TRUE if verdict.equal else EXIT_FALSE


def cmd_split_max(args):
    ctx = _Ctx(args.algebra)
    lam = ctx.functional(args.functional)
    m = build_dixmier(ctx.alg, lam)
    rep = split_maximal(m, N=args.degree)
    payload = rep.to_json()
    lines = ["q = %d: %s" % (m.q, "I(lambda) is maximal" if rep.maximal else "I(lambda) = I+ ∩ I-")]
    lines += ["  %s: %s" % (k, "ok" if v else "FAILED") for k, v in rep.checks.items()]
    lines += ["  note: %s" % n for n in rep.notes]
    _emit(args, payload, lines)
    return EXIT_TRUE if rep.ok else EXIT_FALSE


def cmd_induce(args):
    ctx = _Ctx(args.algebra)
    alg = ctx.alg
    lam = ctx.functional(args.functional)
    h = ctx.subspace(args.h) if args.h else polarize(alg, lam).h
    if not alg.is_subalgebra(h):
        raise InputError("h is not a subalgebra")
    tr = InducedTruncation(alg, h, lam, args.degree)
    t = tr.act(ctx.element(args.vector), tr.one()) if args.vector else tr.one()
    payload = {"h": _subspace_json(alg, h), "complement": list(tr.labels), "M": args.degree,
               "dim": len(tr.basis()), "vector": tr.to_json(t)}
    lines = ["h = span(%s), complement %s, dim V_%d = %d"
             % (", ".join(alg.format(v) for v in h.basis), ", ".join(tr.labels), args.degree, payload["dim"]),
             "t = %s" % (tr.format(t) or "0")]
    if args.element:
        r = tr.act(ctx.element(args.element), t)
        payload["action"] = tr.to_json(r)
        lines.append("%s . t = %s" % (args.element, tr.format(r) or "0"))
    if args.annihilator is not None:
        exps, span = tr.annihilator_truncated(args.annihilator)
        elems = [str(slice_element(alg, exps, v)) for v in span.rows]
        payload["annihilator"] = {"N": args.annihilator, "dim": span.dim, "basis": elems}
        lines.append("annihilator slice N=%d: dim %d" % (args.annihilator, span.dim))
        lines += ["  %s" % e for e in elems]
    if args.descend:
        k = ctx.subspace(args.descend)
        d = tr.descend(t, k, args.budget)
        payload["descent"] = {"z": str(d.z), "image": tr.to_json(d.image), "degree": d.degree,
                              "replayed": bool(tr.replay(d, t))}
        lines.append("descent: z = %s, z.t = %s" % (d.z, tr.format(d.image)))
    _emit(args, payload, lines)
    return EXIT_TRUE


def _selftest_pair(name, lname):
    alg, lams = catalogue.load(name)
    lam = lams[lname]
    m = build_dixmier(alg, lam)
    checks = {
        "polarization": bool(check_polarization(alg, polarize(alg, lam).h, lam)),
        "pq": (m.p, m.q) == pq_formula(alg, lam),
        "step_images": validate_step_images(m).ok,
        "split": split_maximal(m, N=2).ok,
    }
    return checks


def cmd_selftest(args):
    results = {}
    lines = []
    for name, lname in catalogue.pairs():
        checks = _selftest_pair(name, lname)
        results["%s:%s" % (name, lname)] = checks
        bad = [k for k, v in checks.items() if not v]
        lines.append("%-22s %s" % ("%s:%s" % (name, lname), "ok" if not bad else "FAILED " + ", ".join(bad)))
    ok = all(all(c.values()) for c in results.values())
    _emit(args, {"ok": ok, "pairs": results}, lines + ["all ok" if ok else "failures present"])
    return EXIT_TRUE if ok else EXIT_FALSE


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="superdixmier", description="Dixmier map for nilpotent Lie superalgebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, functional=True, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name != "selftest":
            p.add_argument("algebra", help="algebra file, inline JSON, or @catalogue-name")
        if functional:
            p.add_argument("functional", help="functional file, inline JSON, or @name from the algebra file")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, functional=False, help="check the superalgebra axioms")
    add("polarize", cmd_polarize, help="construct a polarization")
    add("dixmier", cmd_dixmier, help="build pi_lambda and report (p, q)")
    p = add("member", cmd_member, help="decide membership in I(lambda)")
    p.add_argument("--element", help="element expression")
    p = add("orbit-eq", cmd_orbit_eq, functional=False, help="compare two coadjoint orbits")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--tries", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p = add("split-max", cmd_split_max, help="maximal ideals over I(lambda)")
    p.add_argument("--degree", type=int, default=3, help="slice degree for the checks")
    p = add("induce", cmd_induce, help="truncated induced module")
    p.add_argument("--h", help="comma-separated basis of h (default: computed polarization)")
    p.add_argument("--degree", type=int, default=4, help="truncation degree M")
    p.add_argument("--vector", help="element u; works on u.v (default v)")
    p.add_argument("--element", help="element to act with")
    p.add_argument("--annihilator", type=int, metavar="N", help="annihilator slice of degree N")
    p.add_argument("--descend", metavar="K", help="comma-separated basis of an ideal k for descent")
    p.add_argument("--budget", type=int, default=4, help="degree budget for descent")
    add("selftest", cmd_selftest, functional=False, help="run the catalogue checks")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT
    except HypothesisError as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT
    except (TruncationOverflow, DescentFailure) as exc:
        sys.stderr.write("inconclusive: %s\n" % exc)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT


def entry():
    sys.exit(main())

"""Command line front end.

    folint decide problem.json
    folint decide-poly --surface F2 --form "2*x+4*x^3*y^3" "3*y^2+3*x^4*y^2" --genus 5
    folint reduce fixtures/ex42.json --dot

A problem is a JSON document with the keys ``surface`` ({"kind": "P2"} or
{"kind": "Fdelta", "delta": k}), ``form`` ({"A": ..., "B": ...}), and the
optional ``sigma``, ``genus``, ``mode``, ``integral`` and ``options``.
Command line flags override the file.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from importlib import resources

from . import __version__
from .algebra import AFFINE, PROJECTIVE, GradingContext, ParseError, hirzebruch
from .decide import (
    FirstIntegral,
    Inconclusive,
    NotApplicable,
    algorithm2,
    algorithm3,
    analyze,
    default_sigma,
    family_for,
    polynomial_first_integral,
    verify_first_integral,
)
from .desingularize import BlowupBudgetExceeded, FieldTowerTooDeep, PositiveDimensionalSingularLocus
from .lattice import NotInvariant, TooManySolutions

MODES = ["extend", "reduce", "classes", "decide", "decide-poly", "verify"]


class InputError(ValueError):
    pass


def parse_surface(text) -> GradingContext:
    if isinstance(text, dict):
        kind = text.get("kind")
        if kind == "P2":
            return PROJECTIVE
        if kind in ("Fdelta", "F"):
            return hirzebruch(int(text["delta"]))
        raise InputError(f"unknown surface {text!r}")
    t = str(text).strip()
    if t.upper() == "P2":
        return PROJECTIVE
    if t[:1].upper() == "F" and t[1:].isdigit():
        return hirzebruch(int(t[1:]))
    raise InputError(f"unknown surface {text!r}; use P2 or F<k>")


def fixture_path(name: str):
    """Path of a bundled problem file, e.g. ``fixture_path("ex42")``."""
    if not name.endswith(".json"):
        name += ".json"
    return resources.files("folint") / "fixtures" / name


def load_problem(path) -> dict:
    if path is None:
        return {}
    p = str(path)
    if p.startswith("fixtures/") or p.startswith("fixture:"):
        p = str(fixture_path(p.split("/", 1)[-1].split(":", 1)[-1]))
    try:
        with open(p) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _class(c) -> dict:
    return {"coords": [_q(v) for v in c.coords], "text": str(c)}


def _parse(text: str, ctx: GradingContext, what: str):
    try:
        return ctx.parse(text)
    except ParseError as exc:
        raise InputError(f"{what}: {exc}") from exc


# --------------------------------------------------------------------------
# report sections


def extension_report(an) -> dict:
    ext = an.extension
    return {
        "surface": str(an.surface),
        "coefficients": {f"d{n}": str(c) for n, c in zip(an.surface.names, ext.form.coeffs)},
        "canonical_degrees": list(ext.canonical_degrees)
        if isinstance(ext.canonical_degrees, tuple)
        else ext.canonical_degrees,
    }


def configuration_report(config) -> dict:
    pts = []
    for p in config.points:
        pts.append(
            {
                "label": p.label,
                "level": p.level,
                "parent": None if p.parent is None else config.points[p.parent].label,
                "nu": p.nu,
                "eps": p.eps,
                "satellite": p.satellite,
                "orbit_size": p.point.orbit_size,
                "chart": list(p.point.chart),
                "proximate_to": [config.points[j].label for j in sorted(p.proximate_to)],
            }
        )
    return {
        "n": config.n,
        "d": config.d,
        "terminal": [config.points[i].label for i in config.terminal_ids],
        "points": pts,
        "edges": [[config.points[a].label, config.points[b].label] for a, b in config.edges()],
    }


def dot_graph(config) -> str:
    lines = ["digraph proximity {"]
    for p in config.points:
        shape = "doublecircle" if p.eps else "circle"
        lines.append(f'  {p.label} [shape={shape}, label="{p.label}\\nnu={p.nu}"];')
    for p in config.points:
        for j in sorted(p.proximate_to):
            style = "" if j == p.parent else " [style=dashed]"
            lines.append(f"  {config.points[j].label} -> {p.label}{style};")
    lines.append("}")
    return "\n".join(lines)


def classes_report(an, fam, sigma) -> dict:
    T = fam.t_sigma
    return {
        "K_Z": _class(an.KZ),
        "K_F": _class(an.KF),
        "K_F - K_Z": _class(an.KF - an.KZ),
        "sigma": [str(f) for f in sigma],
        "ell": fam.ell,
        "dicritical_order": [f"p{i + 1}" for i in fam.dicritical_order],
        "Lambda": [[_q(v) for v in row] for row in fam.Lambda],
        "H": [_q(v) for v in fam.H],
        "alpha_sigma": [_q(v) for v in fam.alpha_sigma],
        "T": _class(T),
        "T^2": _q(fam.t_sigma_sq),
        "K_Z.T": _q(an.KZ.dot(T)),
    }


def verdict_report(v, bits: int = 64) -> dict:
    out = {"verdict": v.kind}
    if isinstance(v, FirstIntegral):
        out.update(F=str(v.F), G=str(v.G), genus=v.genus, gamma=v.gamma)
        if v.T is not None:
            out["T"] = _class(v.T)
        if v.affine is not None:
            out["affine"] = {"numerator": str(v.affine[0]), "denominator": str(v.affine[1])}
    elif isinstance(v, Inconclusive):
        out["p_inf"] = [_q(x) for x in v.p_inf.enclosure(bits)]
        out["p_sup"] = [_q(x) for x in v.p_sup.enclosure(bits)]
    else:
        for key in ("witness", "reason", "failed_condition", "g"):
            if hasattr(v, key):
                out[key] = getattr(v, key)
    return out


def text_report(report: dict, indent: int = 0) -> str:
    """Aligned key/value text of a (nested) report."""
    pad = " " * indent
    lines = []
    width = max((len(k) for k in report), default=0)
    for k, v in report.items():
        if isinstance(v, dict) and k != "T" and "coords" not in v:
            lines.append(f"{pad}{k}:")
            lines.append(text_report(v, indent + 2))
        elif isinstance(v, dict):
            lines.append(f"{pad}{k.ljust(width)}  {v['text']}")
        elif k == "points":
            cols = ["label", "level", "parent", "nu", "eps", "satellite", "orbit_size", "proximate_to"]
            rows = [[str(p[c]) if not isinstance(p[c], list) else ",".join(p[c]) for c in cols] for p in v]
            ws = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(pad + "  ".join(c.ljust(w) for c, w in zip(cols, ws)))
            for r in rows:
                lines.append(pad + "  ".join(x.ljust(w) for x, w in zip(r, ws)))
        elif k in ("Lambda",):
            lines.append(f"{pad}{k}:")
            for row in v:
                lines.append(pad + "  " + " ".join(x.rjust(6) for x in row))
        else:
            if isinstance(v, list):
                v = ", ".join(str(x) if not isinstance(x, list) else "-".join(x) for x in v)
            lines.append(f"{pad}{k.ljust(width)}  {v}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="folint", description="Rational and polynomial first integrals of plane polynomial foliations.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        sp = sub.add_parser(mode)
        sp.add_argument("problem", nargs="?", help="problem file (JSON); 'fixtures/ex42.json' refers to a bundled one")
        sp.add_argument("--surface", help="P2 or F<k>")
        sp.add_argument("--form", nargs=2, metavar=("A", "B"), help="coefficients of A dx + B dy")
        sp.add_argument("--genus", type=int)
        sp.add_argument("--sigma", nargs="*", help="invariant curves on the surface")
        sp.add_argument("--integral", nargs=2, metavar=("F", "G"), help="pencil generators (verify)")
        sp.add_argument("--e-bound", type=int)
        sp.add_argument("--enclosure-bits", type=int, default=64)
        sp.add_argument("--blowup-budget", type=int, default=500)
        sp.add_argument("--tower-depth", type=int, default=2)
        sp.add_argument("--emit", choices=["json", "text"], default="text")
        sp.add_argument("--dot", action="store_true", help="print the proximity graph in DOT format")
        sp.add_argument("--jobs", type=int, default=1, help="accepted for compatibility; candidates are checked in order")
    return ap


def run(args) -> tuple[dict, int, str | None]:
    """Execute one problem; returns (report, exit code, extra text)."""
    prob = load_problem(args.problem)
    opts = prob.get("options", {})
    surface_spec = args.surface or prob.get("surface")
    if surface_spec is None:
        raise InputError("no surface given")
    surface = parse_surface(surface_spec)
    form = args.form or ((prob.get("form") or {}).get("A"), (prob.get("form") or {}).get("B"))
    if not form or form[0] is None or form[1] is None:
        raise InputError("no 1-form given")
    A = _parse(str(form[0]), AFFINE, "A")
    B = _parse(str(form[1]), AFFINE, "B")
    genus = args.genus if args.genus is not None else prob.get("genus")
    sigma_text = args.sigma if args.sigma is not None else prob.get("sigma")
    budget = opts.get("blowup_budget", args.blowup_budget)
    depth = opts.get("field_tower_depth", args.tower_depth)
    e_bound = args.e_bound if args.e_bound is not None else opts.get("e_bound")
    bits = opts.get("enclosure_bits", args.enclosure_bits)

    mode = args.mode
    report: dict = {"mode": mode}
    extra = None
    t0 = time.perf_counter()
    an = analyze(A, B, surface, max_depth=depth, blowup_budget=budget)
    report["extension"] = extension_report(an)
    if mode == "extend":
        return report, 0, None
    report["configuration"] = configuration_report(an.config)
    if args.dot:
        extra = dot_graph(an.config)
    if mode == "reduce":
        return report, 0, extra
    sigma = None
    if sigma_text is not None:
        sigma = [_parse(s, surface, "sigma curve") for s in sigma_text]
    if mode == "verify":
        integral = args.integral or ((prob.get("integral") or {}).get("F"), (prob.get("integral") or {}).get("G"))
        if not integral or integral[0] is None:
            raise InputError("verify needs an integral F, G")
        F = _parse(integral[0], surface, "F")
        G = _parse(integral[1], surface, "G")
        ok = verify_first_integral(an.form, F, G)
        report["verify"] = {"F": str(F), "G": str(G), "first_integral": ok}
        return report, 0, extra
    if mode == "classes":
        sig = default_sigma(an) if sigma is None else sigma
        if an.config.points:
            report["classes"] = classes_report(an, family_for(an, sig), sig)
        return report, 0, extra
    if genus is not None and (genus < 0 or genus == 1):
        raise InputError("the genus must be a non-negative integer other than 1")
    if mode == "decide-poly":
        if genus is None:
            raise InputError("decide-poly needs --genus")
        v = polynomial_first_integral(A, B, surface, genus, analysis=an)
    elif genus is None:
        v = algorithm2(an, sigma, e_bound)
    else:
        v = algorithm3(an, sigma, genus)
    if an.config.points:
        sig = default_sigma(an) if sigma is None else sigma
        try:
            report["classes"] = classes_report(an, family_for(an, sig), sig)
        except (TooManySolutions, ValueError):
            pass
    report["result"] = verdict_report(v, bits)
    report["_seconds"] = round(time.perf_counter() - t0, 3)
    code = 2 if isinstance(v, (Inconclusive, NotApplicable)) else 0
    return report, code, extra


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code, extra = run(args)
    except (InputError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NotInvariant, TooManySolutions, PositiveDimensionalSingularLocus, FieldTowerTooDeep, BlowupBudgetExceeded, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    seconds = report.pop("_seconds", None)
    if args.emit == "json":
        print(json.dumps(report, indent=2))
    else:
        print(text_report(report))
        if seconds is not None:
            print(f"time  {seconds} s")
    if extra:
        print(extra)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``triangle-forms <command> ...``.

Every command prints one JSON document ``{"header": ..., "result": ...}``
(or a plain-text table with ``--table``).  Exit status: 0 success,
2 invalid input, 3 order or precision exhausted, 4 mathematical
inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from flint import ctx

from . import io
from .certificate import (
    AutomorphicFormInput,
    PipelineConfig,
    Theorem2Bounds,
    is_equivalent,
    theorem1_pipeline,
    theorem2_check,
)
from .classify import ClassifierBounds, classify_point
from .discriminant import delta_expansion
from .errors import TriangleFormsError, ValidationError
from .groups import Signature, derive_constants, digits_to_bits, make_signature, parse_order
from .hauptmodul import hauptmodul_expansion
from .numeric import (
    compute_alpha3,
    default_digits,
    eval_delta,
    eval_form,
    eval_J,
    make_context,
    parse_complex,
)
from .schema import validate_document, validate_form
from .series import TruncatedSeries

COMMANDS = ("expand-j", "expand-delta", "certify", "eval", "alpha3", "classify", "equiv")


@dataclass
class JobSpec:
    command: str
    signature: Signature
    params: dict = field(default_factory=dict)
    output: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")


# -- input helpers -------------------------------------------------------

def load_form(path: str, sig: Signature, weight: Optional[int], prec: int) -> AutomorphicFormInput:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read form file {path}: {exc}") from exc
    validate_form(data)
    if "series" in data:
        if Signature.from_json(data["signature"]) != sig:
            raise ValidationError(f"form file is for {data['signature']}, not {sig.to_json()}")
        series = TruncatedSeries.from_json(data["series"], prec)
        weight = weight if weight is not None else int(data["weight"])
        if int(data["weight"]) != weight:
            raise ValidationError(f"--weight {weight} disagrees with the form file ({data['weight']})")
    else:
        series = TruncatedSeries.from_json(data, prec)
    if weight is None:
        raise ValidationError("a weight is required (--weight or a 'weight' field)")
    return AutomorphicFormInput(sig, weight, series)


def _series_table(series: TruncatedSeries) -> str:
    lines = ["# k\tcoefficient"]
    for k in range(series.valuation, series.order):
        lines.append(f"{k}\t{series.field.to_json(series[k]) if series.field.exact else series[k]}")
    return "\n".join(lines) + "\n"


def _zero_rows(result) -> list[dict]:
    rows = []
    for z in result.zeros:
        if z.location is None:
            continue
        tau = z.location.tau
        rows.append({
            "re_tau": tau.real.mid().str(30, radius=False),
            "im_tau": tau.imag.mid().str(30, radius=False),
            "root_re": z.root.real.mid().str(30, radius=False),
            "root_im": z.root.imag.mid().str(30, radius=False),
            "multiplicity": z.multiplicity,
            "verdict": z.classification.verdict if z.classification else "unclassified",
        })
    return rows


# -- commands ------------------------------------------------------------

def cmd_expand_j(spec: JobSpec):
    exp = hauptmodul_expansion(spec.signature, spec.params["order"], check=spec.params.get("check", False))
    result = {"series": exp.series.to_json(), "provable_order": exp.series.order,
              "schwarzian_checked": bool(spec.params.get("check", False))}
    return result, exp.series


def cmd_expand_delta(spec: JobSpec):
    exp = delta_expansion(spec.signature, spec.params["order"])
    result = {"series": exp.series.to_json(), "provable_order": exp.series.order,
              "weight": exp.weight, "n_delta": exp.n_delta}
    return result, exp.series


def cmd_alpha3(spec: JobSpec):
    digits = spec.params["digits"]
    res = compute_alpha3(spec.signature, digits)
    with ctx.workprec(res.prec):
        modulus = abs(res.value)
        return {
            "alpha3": io.acb_to_json(res.value),
            "modulus": modulus.mid().str(digits, radius=False),
            "error": res.error,
            "order": res.order,
            "prec_bits": res.prec,
            "method": res.method,
            "expected_phase": io.acb_to_json(res.expected_phase),
        }, None


def cmd_eval(spec: JobSpec):
    p = spec.params
    c = make_context(spec.signature, p["digits"])
    with ctx.workprec(c.prec):
        tau = parse_complex(p["tau"])
        if p["what"] == "j":
            ev = eval_J(c, tau)
        elif p["what"] == "delta":
            ev = eval_delta(c, tau)
        else:
            if not p.get("form"):
                raise ValidationError("--what form needs --form FILE")
            f = load_form(p["form"], spec.signature, p.get("weight"), c.prec)
            ev = eval_form(c, f.series, tau)
        return {
            "what": p["what"],
            "tau": io.acb_to_json(ev.tau),
            "qtilde": io.acb_to_json(ev.w),
            "value": io.acb_to_json(ev.value),
            "error": ev.error,
            "terms": ev.terms,
            "series_order": c.order,
            "rho_max": c.rho_max,
            "alpha3": io.acb_to_json(c.alpha3.value),
        }, None


def cmd_classify(spec: JobSpec):
    p = spec.params
    bounds = ClassifierBounds(p["max_degree"], p["max_height"], p["digits"])
    c = make_context(spec.signature, p["digits"])
    with ctx.workprec(c.prec):
        tau = parse_complex(p["tau"])
    return classify_point(c, tau, bounds).to_json(), None


def cmd_certify(spec: JobSpec):
    p = spec.params
    prec = digits_to_bits(p["digits"])
    f = load_form(p["form"], spec.signature, p.get("weight"), prec)
    config = PipelineConfig(margin=p["margin"], digits=p["digits"],
                            bounds=ClassifierBounds(p["max_degree"], p["max_height"], p["digits"]),
                            classify=p["classify"])
    res = theorem1_pipeline(f, config)
    out = res.to_json()
    out["classified"] = config.classify
    rows = _zero_rows(res)
    if p.get("csv"):
        io.write_text(p["csv"], io.zeros_csv(rows))
    if p.get("svg"):
        io.write_text(p["svg"], io.zeros_svg(rows, float(derive_constants(spec.signature, 64).h3)))
    if p.get("alpha"):
        with ctx.workprec(digits_to_bits(max(p["digits"], Theorem2Bounds().digits))):
            alpha = parse_complex(p["alpha"])
        out["theorem2"] = theorem2_check(f, alpha, Theorem2Bounds(), config.bounds, p["margin"]).to_json()
    return out, None


def cmd_equiv(spec: JobSpec):
    p = spec.params
    prec = digits_to_bits(p["digits"])
    f1 = load_form(p["form1"], spec.signature, p.get("weight1"), prec)
    f2 = load_form(p["form2"], spec.signature, p.get("weight2"), prec)
    return is_equivalent(f1, f2).to_json(), None


HANDLERS = {
    "expand-j": cmd_expand_j,
    "expand-delta": cmd_expand_delta,
    "certify": cmd_certify,
    "eval": cmd_eval,
    "alpha3": cmd_alpha3,
    "classify": cmd_classify,
    "equiv": cmd_equiv,
}


def run(spec: JobSpec, table: bool = False) -> str:
    result, series = HANDLERS[spec.command](spec)
    if table and series is not None:
        return _series_table(series)
    doc = {"header": io.header(spec.command, spec.signature, spec.params), "result": result}
    validate_document(spec.command, doc)
    return io.dumps(doc)


# -- argument parsing ----------------------------------------------------

def _order_arg(text: str):
    try:
        return parse_order(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triangle-forms",
                                     description="Expansions, certificates and CM-candidate "
                                                 "classification for triangle groups (p, q, oo).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, digits=True):
        sp.add_argument("--p", type=_order_arg, required=True, help="order p (integer >= 2 or 'inf')")
        sp.add_argument("--q", type=_order_arg, required=True, help="order q (integer >= p or 'inf')")
        if digits:
            sp.add_argument("--digits", type=int, default=default_digits(),
                            help="working precision in decimal digits (env TF_DEFAULT_DIGITS)")
        sp.add_argument("-o", "--output", help="write the JSON here instead of stdout")

    for name, what in (("expand-j", "Hauptmodul"), ("expand-delta", "discriminant form")):
        sp = sub.add_parser(name, help=f"exact expansion of the {what}")
        common(sp, digits=False)
        sp.add_argument("--order", type=int, required=True, help="truncation order N")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON output (default)")
        fmt.add_argument("--table", action="store_true", help="plain-text coefficient table")
        if name == "expand-j":
            sp.add_argument("--check", action="store_true", help="verify the Schwarzian residual")

    sp = sub.add_parser("certify", help="polynomial certificate and zero classification of a form")
    common(sp)
    sp.add_argument("--weight", type=int, help="weight k (positive even)")
    sp.add_argument("--form", required=True, help="form JSON (series or {signature, weight, series})")
    sp.add_argument("--classify", action="store_true", help="classify the located zeros")
    sp.add_argument("--margin", type=int, default=10, help="extra verified terms beyond the degree")
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--max-height", type=int, default=10**6)
    sp.add_argument("--alpha", help="also test this point against the algebraic-value statement")
    sp.add_argument("--csv", help="write zero locations as CSV")
    sp.add_argument("--svg", help="write zero locations in the period strip as SVG")

    sp = sub.add_parser("eval", help="evaluate J, Delta or a form at tau")
    common(sp)
    sp.add_argument("--tau", required=True, help='point such as "0.1+1.2i" or "exp(pi*I/3)"')
    sp.add_argument("--what", choices=("j", "delta", "form"), default="j")
    sp.add_argument("--form", help="form JSON for --what form")
    sp.add_argument("--weight", type=int)

    sp = sub.add_parser("alpha3", help="the normalizing constant of the cusp parameter")
    common(sp)

    sp = sub.add_parser("classify", help="CM-candidate test of a point (heuristic)")
    common(sp)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--max-height", type=int, default=10**6)

    sp = sub.add_parser("equiv", help="test f1^k1 ~ f2^k2")
    common(sp)
    sp.add_argument("--form1", required=True)
    sp.add_argument("--form2", required=True)
    sp.add_argument("--weight1", type=int)
    sp.add_argument("--weight2", type=int)
    return parser


_NOT_PARAMS = {"command", "p", "q", "output", "json", "table"}


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    sig = make_signature(args.p, args.q)
    params = {k.replace("-", "_"): v for k, v in vars(args).items() if k not in _NOT_PARAMS}
    if "digits" in params and params["digits"] < 10:
        raise ValidationError("--digits must be at least 10")
    if "order" in params and params["order"] < 2:
        raise ValidationError("--order must be at least 2")
    return JobSpec(args.command, sig, params, args.output)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = spec_from_args(args)
        text = run(spec, table=getattr(args, "table", False))
    except TriangleFormsError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code
    if spec.output:
        io.write_text(spec.output, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Every subcommand prints one JSON document on standard output (sorted keys, two
space indent) and exits with 0 when the check passed or the object was built, 1
when a check failed (the report names the failure), and 2 on unusable input.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .core import is_left_resolving, is_predecessor_separated, structure_matrices, validate
from .dyck import cantor_horizon, prop77_report, verify_prop72
from .errors import InvalidSystemError, LambdaGraphError, NonCanonicalError, TransferError
from .extension import extension_from_dict, g_extension, presentation_correspondence_report, quotient_extension
from .io import (
    dumps,
    group_from_arg,
    labeling_from_dict,
    lgs_from_document,
    load_json,
    sms_from_document,
    spec_from_dict,
)
from .sms import SymbolicMatrixSystem, lgs_to_sms, sms_to_lgs, to_group_system
from .sse import (
    GWitnessExtras,
    ProperSseWitness,
    load_witness,
    verify_g_sse,
    verify_proper_g_sse,
    verify_proper_sse,
    verify_sse,
    witness_from_transfer,
)
from .subshift import PresentedLanguage, canonical_lgs, enumerate_words, l_past_classes, skew_product_spec


class CheckFailed(Exception):
    """Carries a report for exit status 1."""

    def __init__(self, report: dict):
        self.report = report


def _labeling(path):
    return labeling_from_dict(load_json(path))


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise LambdaGraphError(f"missing required option(s): {', '.join(missing)}")


def _result(report: dict, ok: bool) -> dict:
    if not ok:
        raise CheckFailed(report)
    return report


def cmd_validate_lgs(args):
    lgs = lgs_from_document(load_json(args.input))
    report = validate(lgs)
    doc = {"valid": report.ok, "violations": report.to_dict()["violations"], "dims": list(lgs.dims)}
    if report.ok:
        doc["left_resolving"] = is_left_resolving(lgs)
        doc["predecessor_separated"] = is_predecessor_separated(lgs)
    return _result(doc, report.ok)


def cmd_lgs_to_sms(args):
    return lgs_to_sms(lgs_from_document(load_json(args.input))).to_dict()


def cmd_sms_to_lgs(args):
    return sms_to_lgs(SymbolicMatrixSystem.from_dict(load_json(args.input))).to_dict()


def cmd_canonical(args):
    spec = spec_from_dict(load_json(args.input))
    L = args.level if args.level is not None else 4
    N = args.horizon if args.horizon is not None else L
    return canonical_lgs(spec, L, N).to_dict()


def cmd_past_classes(args):
    spec = spec_from_dict(load_json(args.input))
    _require(args, "level", "horizon")
    classes = l_past_classes(spec, args.level, args.horizon)
    return {
        "level": classes.level,
        "horizon": classes.horizon,
        "count": classes.count,
        "exact": classes.exact,
        "classes": [[list(w) for w in c] for c in classes.classes],
    }


def cmd_extend(args):
    _require(args, "group", "labeling")
    lgs = lgs_from_document(load_json(args.input))
    return g_extension(lgs, group_from_arg(args.group), _labeling(args.labeling)).to_dict()


def cmd_quotient(args):
    parts = extension_from_dict(load_json(args.input))
    try:
        result = quotient_extension(**parts)
    except InvalidSystemError as exc:
        raise CheckFailed({"ok": False, "error": str(exc), "violations": [v.to_dict() for v in exc.violations]})
    return result.to_dict()


def cmd_skew_words(args):
    _require(args, "group", "labeling", "length")
    spec = spec_from_dict(load_json(args.input))
    group = group_from_arg(args.group)
    skew = skew_product_spec(spec, group, _labeling(args.labeling))
    words = enumerate_words(skew, args.length)
    base = enumerate_words(spec, args.length)
    return {
        "k": args.length,
        "count": len(words),
        "base_count": len(base),
        "group_order": len(group),
        "words": [list(w) for w in words],
    }


def _witness(args):
    _require(args, "witness")
    return load_witness(load_json(args.witness))


def cmd_verify_sse(args):
    a = sms_from_document(load_json(args.input))
    b = sms_from_document(load_json(args.target))
    w, _ = _witness(args)
    report = verify_proper_sse(a, b, w) if isinstance(w, ProperSseWitness) else verify_sse(a, b, w)
    return _result(report.to_dict(), report.ok)


def cmd_verify_g_sse(args):
    _require(args, "labeling", "labeling_prime")
    a = sms_from_document(load_json(args.input))
    b = sms_from_document(load_json(args.target))
    w, extras = _witness(args)
    if extras is None:
        raise LambdaGraphError("the witness has no 'extras' block with group and labelings")
    if args.group is not None:
        extras = GWitnessExtras(group_from_arg(args.group), extras.ell_C, extras.ell_D)
    ga = to_group_system(a, extras.group, _labeling(args.labeling))
    gb = to_group_system(b, extras.group, _labeling(args.labeling_prime))
    verify = verify_proper_g_sse if isinstance(w, ProperSseWitness) else verify_g_sse
    report = verify(ga, gb, w, extras)
    return _result(report.to_dict(), report.ok)


def cmd_gen_witness(args):
    _require(args, "group", "labeling", "labeling_prime", "transfer")
    sms = sms_from_document(load_json(args.input))
    group = group_from_arg(args.group)
    try:
        w, extras = witness_from_transfer(
            sms, group, _labeling(args.labeling), _labeling(args.labeling_prime), _labeling(args.transfer)
        )
    except TransferError as exc:
        raise CheckFailed({"ok": False, "error": "transfer_equation", "word": list(exc.word)})
    except NonCanonicalError as exc:
        raise CheckFailed({"ok": False, "error": "non_canonical", "detail": str(exc)})
    doc = w.to_dict()
    doc["extras"] = extras.to_dict()
    return doc


def cmd_check_thm56(args):
    _require(args, "group", "labeling", "length")
    doc = load_json(args.input)
    group = group_from_arg(args.group)
    ell = _labeling(args.labeling)
    k = args.length
    if isinstance(doc, dict) and "kind" in doc:
        spec = spec_from_dict(doc)
        L = args.level if args.level is not None else k + 1
        N = args.horizon if args.horizon is not None else L
        lgs = canonical_lgs(spec, L, N)
    else:
        spec = None
        lgs = lgs_from_document(doc)
    report = presentation_correspondence_report(lgs, group, ell, k)
    out = {"k": k, "extension_vs_skew_of_presented": report.to_dict()}
    ok = report.ok
    if spec is not None:
        ext_words = set(enumerate_words(PresentedLanguage(g_extension(lgs, group, ell).lgs), k))
        skew_words = set(enumerate_words(skew_product_spec(spec, group, ell), k))
        out["extension_vs_skew_of_spec"] = {"ok": ext_words == skew_words, "count": len(skew_words)}
        ok = ok and ext_words == skew_words
    out["ok"] = ok
    return _result(out, ok)


def cmd_dyck_cantor(args):
    return cantor_horizon(args.level if args.level is not None else 4).to_dict()


def cmd_dyck_prop72(args):
    report = verify_prop72(args.level if args.level is not None else 6)
    return _result(report.to_dict(), report.ok)


def cmd_dyck_prop77(args):
    ell1 = _labeling(args.labeling) if args.labeling else None
    ell2 = _labeling(args.labeling_prime) if args.labeling_prime else None
    report = prop77_report(ell1, ell2, args.max_period if args.max_period is not None else 4)
    decided = report["obstruction"] is not None or report["transfer_search"]["transfer"] is not None
    return _result(report, decided)


def cmd_export_structure_matrices(args):
    lgs = lgs_from_document(load_json(args.input))
    if not is_left_resolving(lgs):
        raise CheckFailed({"ok": False, "error": "structure matrices need a left-resolving system"})
    return structure_matrices(lgs).to_dict()


COMMANDS = {
    "validate-lgs": (cmd_validate_lgs, "check the axioms of a λ-graph system"),
    "lgs-to-sms": (cmd_lgs_to_sms, "convert a λ-graph system to its symbolic matrix system"),
    "sms-to-lgs": (cmd_sms_to_lgs, "convert a symbolic matrix system to a λ-graph system"),
    "canonical": (cmd_canonical, "canonical λ-graph system of a subshift spec"),
    "past-classes": (cmd_past_classes, "past equivalence classes of a subshift spec"),
    "extend": (cmd_extend, "G-extension of a λ-graph system"),
    "skew-words": (cmd_skew_words, "admissible words of a skew product"),
    "verify-sse": (cmd_verify_sse, "check a (proper) strong shift equivalence witness"),
    "verify-g-sse": (cmd_verify_g_sse, "check a (proper) G-strong shift equivalence witness"),
    "gen-witness": (cmd_gen_witness, "build a proper G-witness from a transfer map"),
    "quotient": (cmd_quotient, "recover the base system from the output of 'extend'"),
    "check-thm56": (cmd_check_thm56, "compare extension words with skew product words"),
    "dyck-cantor": (cmd_dyck_cantor, "Cantor horizon λ-graph system of D2"),
    "dyck-prop72": (cmd_dyck_prop72, "compare the Z2-extension of the Cantor horizon with its upward shift"),
    "dyck-prop77": (cmd_dyck_prop77, "non-conjugacy of two Z2-extensions of D2"),
    "export-structure-matrices": (cmd_export_structure_matrices, "0/1 structure matrices A and I"),
}

# positional arguments per subcommand
_INPUTS = {
    "verify-sse": ("input", "target"),
    "verify-g-sse": ("input", "target"),
    "dyck-cantor": (),
    "dyck-prop72": (),
    "dyck-prop77": (),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lambdagraph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        for pos in _INPUTS.get(name, ("input",)):
            p.add_argument(pos, help="JSON file")
        p.add_argument("-L", "--level", type=int)
        p.add_argument("-k", "--length", type=int)
        p.add_argument("-N", "--horizon", type=int)
        p.add_argument("-K", "--max-period", type=int)
        p.add_argument("--group", help="Zn, Sn or a group JSON file")
        p.add_argument("--labeling", help="labeling JSON file")
        p.add_argument("--labeling-prime", help="second labeling JSON file")
        p.add_argument("--witness", help="witness JSON file")
        p.add_argument("--transfer", help="transfer map JSON file")
        p.add_argument("--text", action="store_true", help="print a short readable summary instead of JSON")
    return parser


def render_text(doc, indent: str = "") -> str:
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            value = doc[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{indent}{key}:")
                lines.append(render_text(value, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {value}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                lines.append(render_text(item, indent + "- "))
            else:
                lines.append(f"{indent}- {item}")
    else:
        lines.append(f"{indent}{doc}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("level", "length", "horizon", "max_period"):
        value = getattr(args, name)
        if value is not None and value < 0:
            parser.error(f"--{name.replace('_', '-')} must be nonnegative")
    handler = COMMANDS[args.command][0]
    status = 0
    try:
        doc = handler(args)
    except CheckFailed as exc:
        doc, status = exc.report, 1
    except LambdaGraphError as exc:
        doc = {"error": type(exc).__name__, "message": str(exc), "location": getattr(exc, "location", None)}
        status = 2
    except (KeyError, TypeError) as exc:
        doc = {"error": "MalformedInput", "message": f"{type(exc).__name__}: {exc}", "location": None}
        status = 2
    out = render_text(doc) + "\n" if args.text else dumps(doc)
    sys.stdout.write(out)
    if status == 2:
        sys.stderr.write(f"error: {doc['message']}\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

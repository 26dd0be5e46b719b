"""Command-line front end: python -m cli.main <command> ... (run from src/)

Exit codes: 0 all checks pass, 1 mathematical failure, 2 usage or IO error.
"""
import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from core.config import settings
from core.criteria import (
    PDCertificate,
    build_cn,
    check_lemma3,
    check_lemma_bounds,
    check_s_criterion,
    ms_matrix,
    ms_pairing_report,
    necessary_condition,
    pd_check,
    proof_sequence,
    verify_proof_bounds,
)
from core.exceptions import DocumentError, RWPSError
from core.families import FORMULAS, sequence_from_document
from core.linearization import linearization_table, product_row, scan_nonnegativity
from core.logger import logger
from core.rationals import format_rational, parse_rational
from core.reports import (
    RunManifest,
    certificate_frame,
    compactness_frame,
    dumps,
    eigenvalue_frame,
    haar_frame,
    linearization_frame,
    quadratic_transform_frame,
    verdict_dict,
    with_manifest,
    write_csv,
    write_text,
)
from core.spectrum import (
    compactness_profile,
    dual_membership_zero,
    eigenvalue_histogram,
    haar_characterization,
    haar_profile,
    jacobi_eigenvalues,
    quadratic_transform,
)
from core.verification import VerificationSuite

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

FAMILY_ALIASES = {"ks": "ks_counterexample"}


class CommandResult:
    """Rendered output plus the exit code it implies"""

    def __init__(self, text: str, passed: bool = True):
        self.text = text
        self.passed = passed


# -- documents ---------------------------------------------------------------

def read_document(source: str) -> Dict[str, Any]:
    """Sequence document from a path, or from stdin for '-'"""
    try:
        if source == "-":
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {source}: {exc}") from exc


def family_document_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    tag = FAMILY_ALIASES.get(args.tag, args.tag)
    params: Dict[str, Any] = {}
    for name in ("C", "eps", "value", "alpha", "beta"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    if args.K is not None:
        params["K"] = args.K if args.K == "auto" else int(args.K)
    if args.base is not None:
        params["base"] = args.base
    if args.variant is not None:
        params["variant"] = args.variant
    return {
        "family": tag,
        "params": params,
        "explicit_prefix": list(args.values or []),
        "switched": args.switch,
    }


def _render(args: argparse.Namespace, payload: Dict[str, Any], lines: List[str], passed: bool = True) -> CommandResult:
    if getattr(args, "json", False):
        return CommandResult(dumps(payload), passed)
    return CommandResult("\n".join(lines) + "\n", passed)


def _manifest(command: str, document: Dict[str, Any], **bounds: Any) -> RunManifest:
    return RunManifest(command=command, family=document,
                       bounds={key: value for key, value in bounds.items() if value is not None})


def _check_lines(report) -> List[str]:
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        flag = "" if check.required else " (recorded only)"
        where = f" at {','.join(map(str, check.witness))}" if check.witness else ""
        margin = f" margin={format_rational(check.margin)}" if check.margin is not None else ""
        note = f" [{check.note}]" if check.note else ""
        lines.append(f"{status} {report.title}: {check.label}{where}{margin}{note}{flag}")
    return lines


# -- commands ------------------------------------------------------------------

def cmd_family(args: argparse.Namespace) -> CommandResult:
    s, seq = sequence_from_document(family_document_from_args(args))
    document = seq.to_document()
    if s is not None:
        document["s"] = s.to_document()
    if seq.family in FORMULAS:
        document["formulas"] = FORMULAS[seq.family]
    document["prefix"] = [format_rational(value) for value in seq.prefix(args.prefix)]
    return CommandResult(dumps(document))


def cmd_check(args: argparse.Namespace) -> CommandResult:
    document = read_document(args.document)
    s, seq = sequence_from_document(document)
    reports = []
    if s is not None:
        criterion = check_s_criterion(s, args.N)
        reports.append(criterion)
        if criterion.overall:
            reports.append(check_lemma_bounds(s, args.N))
            reports.append(check_lemma3(build_cn(s, "first"), args.N))
    verdict = necessary_condition(seq, args.N)
    passed = all(report.overall for report in reports) and not verdict.violated

    lines = [line for report in reports for line in _check_lines(report)]
    where = f" at n={verdict.index}" if verdict.index else ""
    lines.append(f"necessary condition up to {verdict.up_to}: {verdict.kind}{where}")
    lines.append(f"overall: {'pass' if passed else 'fail'}")
    payload = with_manifest(_manifest("check", document, N=args.N), {
        "reports": reports, "necessary_condition": verdict, "overall": passed,
    })
    return _render(args, payload, lines, passed)


def cmd_linearize(args: argparse.Namespace) -> CommandResult:
    document = read_document(args.document)
    _, seq = sequence_from_document(document)
    if args.switch:
        seq = seq.switch()
    manifest = _manifest("linearize", document, M=args.scan, entry=args.entry,
                         both_switch=args.both_switch or None, switch=args.switch or None)

    if args.entry:
        m, n, k = args.entry
        row = product_row(seq, m, n)
        value = row[k] if 0 <= k < len(row) else Fraction(0)
        payload = with_manifest(manifest, {"m": m, "n": n, "k": k, "value": value})
        return _render(args, payload, [format_rational(value)], value >= 0)

    max_degree = args.scan if args.scan is not None else 10
    targets = [("P", seq)] + ([("P~", seq.switch())] if args.both_switch else [])
    verdicts, lines = {}, []
    for label, target in targets:
        verdict = scan_nonnegativity(target, max_degree)
        verdicts[label] = verdict_dict(verdict)
        if verdict.all_nonnegative:
            lines.append(f"{label}: all-nonnegative up to M={max_degree}")
        else:
            m, n, k, value = verdict.witness
            lines.append(f"{label}: g({m},{n};{k}) = {format_rational(value)}")
    if args.csv:
        write_csv(linearization_frame(linearization_table(seq, max_degree)), args.csv)
        manifest.outputs.append(args.csv)
    passed = all(item["all_nonnegative"] for item in verdicts.values())
    return _render(args, with_manifest(manifest, {"verdicts": verdicts}), lines, passed)


def cmd_pd(args: argparse.Namespace) -> CommandResult:
    document = read_document(args.document)
    s, seq = sequence_from_document(document)
    manifest = _manifest("pd", document, N=args.N, variant=args.variant, bounds=args.bounds or None)

    certificates, lines = {}, []
    passed = True
    for big in range(1, args.N + 1):
        result = pd_check(ms_matrix(seq, args.variant, big))
        certificates[big] = result
        if isinstance(result, PDCertificate):
            lines.append(f"N={big}: certified")
        else:
            passed = False
            lines.append(f"N={big}: failed at index {result.index}, u = {format_rational(result.u_value)}")
    body: Dict[str, Any] = {"certificates": {str(big): result for big, result in certificates.items()}}

    if args.bounds:
        proof_seq = proof_sequence(s, seq)
        bound_reports = [verify_proof_bounds(proof_seq, variant, args.N) for variant in ("P", "Ptilde")]
        pairing = ms_pairing_report(proof_seq, args.N)
        body["bounds"] = bound_reports
        body["pairing"] = pairing
        for report in bound_reports + [pairing]:
            lines.extend(_check_lines(report))
            passed &= report.overall
    if args.certificates:
        write_csv(certificate_frame(certificates), args.certificates)
        manifest.outputs.append(args.certificates)
    lines.append(f"overall: {'pass' if passed else 'fail'}")
    return _render(args, with_manifest(manifest, body), lines, passed)


def cmd_spectrum(args: argparse.Namespace) -> CommandResult:
    document = read_document(args.document)
    _, seq = sequence_from_document(document)
    manifest = _manifest("spectrum", document, N=args.N, transform=args.transform)
    manifest.floating_point = True

    report = jacobi_eigenvalues(seq, args.N)
    edges, counts = eigenvalue_histogram(report, args.bins)
    body: Dict[str, Any] = {
        "spectrum": report.to_dict(),
        "histogram": {"edges": edges, "counts": counts},
    }
    lines = [
        f"N={report.size}",
        f"symmetry_defect={report.symmetry_defect:.17g}",
        f"range_defect={report.range_defect:.17g}",
        f"top_gap={report.top_gap:.17g}",
    ]
    if args.histogram:
        lines.extend(f"[{lo:+.3f}, {hi:+.3f}) {count}" for lo, hi, count in zip(edges, edges[1:], counts))

    if args.transform:
        rows = [quadratic_transform(seq, n) for n in range(1, args.transform + 1)]
        profile = compactness_profile(seq, args.transform)
        body["quadratic_transform"] = quadratic_transform_frame(rows).to_dict(orient="records")
        body["compactness"] = {
            "rows": compactness_frame(profile).to_dict(orient="records"),
            "threshold": profile.threshold,
            "vanishing": profile.vanishing,
            "below_from": profile.below_from,
        }
        lines.append(f"bR({args.transform})={float(rows[-1].bR):.17g}")
        lines.append(f"compactness tail below {profile.threshold:g}: {profile.vanishing}")
    if args.csv:
        write_csv(eigenvalue_frame(report), args.csv)
        manifest.outputs.append(args.csv)
    return _render(args, with_manifest(manifest, body), lines)


def cmd_haar(args: argparse.Namespace) -> CommandResult:
    document = read_document(args.document)
    _, seq = sequence_from_document(document)
    manifest = _manifest("haar", document, N=args.N)

    profile = haar_profile(seq, args.N)
    dual = dual_membership_zero(seq, args.N, include_switched=True)
    characterization = haar_characterization(seq, args.N)
    lines = [
        f"haar profile up to {args.N}: {profile.classification}",
        f"h(1)={format_rational(profile.values[1])} h(2)={format_rational(profile.values[2])}",
        f"dual membership of 0: {dual.verdict}",
        f"switched dual membership of 0: {dual.switched.verdict}",
        f"both Haar functions nondecreasing: {characterization.both_nondecreasing}",
    ]
    if args.csv:
        write_csv(haar_frame(profile), args.csv)
        manifest.outputs.append(args.csv)
    body = {"haar_profile": profile, "dual_membership_zero": dual,
            "haar_characterization": characterization}
    return _render(args, with_manifest(manifest, body), lines)


def cmd_verify_paper(args: argparse.Namespace) -> CommandResult:
    prefix = [parse_rational(value) for value in args.ks_prefix] if args.ks_prefix else None
    suite = VerificationSuite(ks_prefix=prefix)
    result = suite.run(args.items)
    manifest = RunManifest(
        command="verify-paper",
        family={"ks_prefix": [format_rational(v) for v in prefix] if prefix else []},
        bounds={"items": args.items or "all"},
    )
    lines = [f"[{'PASS' if item.passed else 'FAIL'}] {item.number:2d} {item.title}"
             for item in result.items]
    lines.append("all acceptance items passed" if result.passed
                 else f"{len(result.failures())} acceptance item(s) failed")
    items = [{"number": item.number, "title": item.title, "passed": item.passed,
              "details": item.details} for item in result.items]
    return _render(args, with_manifest(manifest, {"items": items, "passed": result.passed}),
                   lines, result.passed)


# -- parser ----------------------------------------------------------------------

def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwps", description=f"{settings.PROJECT_NAME} {settings.TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(command: argparse.ArgumentParser, document: bool = True):
        if document:
            command.add_argument("document", help="sequence document (JSON file, or - for stdin)")
        command.add_argument("--out", default=None, help="write the report here instead of stdout")
        command.add_argument("--json", action="store_true", help="emit the full JSON report")

    family = sub.add_parser("family", help="print a sequence document")
    family.add_argument("tag", choices=[
        "chebyshev", "geometric", "haar_eps", "ks", "ks_counterexample", "power5", "factorial",
        "power", "constant", "ks_alpha", "explicit"])
    family.add_argument("--C")
    family.add_argument("--K", help="positive integer or 'auto'")
    family.add_argument("--eps")
    family.add_argument("--variant", choices=["first", "second"])
    family.add_argument("--base", type=int)
    family.add_argument("--value")
    family.add_argument("--alpha")
    family.add_argument("--beta")
    family.add_argument("--values", nargs="+", help="explicit c_1, c_2, ... as p/q")
    family.add_argument("--switch", action="store_true")
    family.add_argument("--prefix", type=int, default=6, help="number of c_n values to list")
    family.add_argument("--out", default=None)
    family.set_defaults(handler=cmd_family)

    check = sub.add_parser("check", help="sufficient criterion, lemma bounds and necessary condition")
    add_io(check)
    check.add_argument("--N", type=positive_int, default=20)
    check.set_defaults(handler=cmd_check)

    linearize = sub.add_parser("linearize", help="linearization coefficients")
    add_io(linearize)
    mode = linearize.add_mutually_exclusive_group()
    mode.add_argument("--scan", type=int, metavar="M", help="scan all m <= n <= M (default 10)")
    mode.add_argument("--entry", nargs=3, type=int, metavar=("m", "n", "k"))
    linearize.add_argument("--both-switch", action="store_true", help="scan the switched sequence too")
    linearize.add_argument("--switch", action="store_true", help="work on the switched sequence")
    linearize.add_argument("--csv", help="write the full table to this CSV path")
    linearize.set_defaults(handler=cmd_linearize)

    pd_parser = sub.add_parser("pd", help="positive definiteness certificates")
    add_io(pd_parser)
    pd_parser.add_argument("variant", choices=["even", "odd"])
    pd_parser.add_argument("N", type=positive_int)
    pd_parser.add_argument("--bounds", action="store_true", help="add proof bounds and pairing report")
    pd_parser.add_argument("--certificates", help="write u-values to this CSV path")
    pd_parser.set_defaults(handler=cmd_pd)

    spectrum = sub.add_parser("spectrum", help="truncated Jacobi spectrum diagnostics")
    add_io(spectrum)
    spectrum.add_argument("--N", type=positive_int, default=200)
    spectrum.add_argument("--csv", help="write eigenvalues to this CSV path")
    spectrum.add_argument("--histogram", action="store_true")
    spectrum.add_argument("--bins", type=int, default=settings.HISTOGRAM_BINS)
    spectrum.add_argument("--transform", type=int, metavar="N", help="quadratic transform rows 1..N")
    spectrum.set_defaults(handler=cmd_spectrum)

    haar = sub.add_parser("haar", help="Haar profile and dual membership of 0")
    add_io(haar)
    haar.add_argument("--N", type=positive_int, default=50)
    haar.add_argument("--csv", help="write h(0..N) to this CSV path")
    haar.set_defaults(handler=cmd_haar)

    verify = sub.add_parser("verify-paper", help="run the acceptance suite")
    add_io(verify, document=False)
    verify.add_argument("--ks-prefix", nargs="+", metavar="p/q",
                        help="override the first coefficients of the counterexample")
    verify.add_argument("--items", nargs="+", type=int, help="run only these item numbers")
    verify.set_defaults(handler=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    try:
        result = args.handler(args)
        write_text(result.text, args.out)
    except (RWPSError, OSError, ValueError) as exc:
        logger.log_error(exc, f"command {args.command}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if result.passed else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Reports go to stdout (or ``--output``), diagnostics to stderr.  Exit codes:
0 success, 1 input error, 2 model or parameter degeneracy, 3 failed
verification.
"""
import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .alpha import (
    AlphaModel,
    expand_to_bimatrix,
    forward_equilibrium,
    invert_from_equilibrium,
    normalize_to_budget,
)
from .exceptions import (
    DegenerateGameError,
    IRGameError,
    NoInteriorEquilibriumError,
    ParameterError,
    ShapeError,
    StepTooLargeError,
    ZeroFrequencyError,
)
from .game import (
    BimatrixGame,
    Profile,
    expected_payoff,
    find_dominant_strategy,
    find_pure_equilibria,
    mixed_equilibrium_2x2,
    pure_profile,
    verify_equilibrium,
)
from .logs import DEFAULT_SMOOTHING, align, parse_frequency_table
from .shifting import eq16_gain_estimate, max_admissible_epsilon, shift_direction, shift_loop

logger = logging.getLogger("irgame")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DEGENERATE = 2
EXIT_VERIFY = 3

SIGNIFICANT_DIGITS = 12


class InputError(Exception):
    """Unreadable or malformed input file."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def format_number(x):
    """Round a float to 12 significant digits; integers pass through."""
    if isinstance(x, (bool, int)):
        return x
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x!r}")
    x = float(f"{x:.{SIGNIFICANT_DIGITS}g}")
    return 0.0 if x == 0 else x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) or isinstance(obj, int) and not isinstance(obj, bool):
        return format_number(obj)
    return obj


def dumps(obj):
    return json.dumps(_clean(obj), indent=2) + "\n"


def _read_json(path, what):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    if not text.strip():
        raise InputError(f"{what} file {path} is empty")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path}: invalid JSON ({exc})") from None


def load_game(path):
    data = _read_json(path, "game")
    if not isinstance(data, dict):
        raise InputError(f"game file {path} must hold a JSON object")
    return BimatrixGame.from_dict(data)


def load_model(path):
    data = _read_json(path, "model")
    if not isinstance(data, dict):
        raise InputError(f"model file {path} must hold a JSON object")
    return AlphaModel.from_dict(data)


def load_profile(path, game):
    """Profile file: ``{"p": [...], "q": [...]}`` or ``{"row": j, "col": k}``."""
    data = _read_json(path, "profile")
    if not isinstance(data, dict):
        raise InputError(f"profile file {path} must hold a JSON object")
    if "row" in data and "col" in data:
        return pure_profile(game, int(data["row"]), int(data["col"]))
    if "p" in data and "q" in data:
        return Profile(np.asarray(data["p"], dtype=float), np.asarray(data["q"], dtype=float))
    raise InputError(f"profile file {path} needs 'p' and 'q' or 'row' and 'col'")


def load_table(path):
    fmt = "json" if str(path).lower().endswith(".json") else "csv"
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_frequency_table(fh, fmt)
    except OSError as exc:
        raise InputError(f"cannot read frequency file {path}: {exc.strerror}") from None


def _emit(text, args):
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(value):
    value = _clean(value)
    if isinstance(value, list):
        return ";".join(repr(v) if isinstance(v, float) else str(v) for v in value)
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from _flatten(value, f"{prefix}{key}.")
    else:
        yield prefix.rstrip("."), obj


def _verdict_dict(verdict):
    # absolute rounding keeps float noise near zero out of golden files
    return {
        "passed": verdict.passed,
        "violation_A": round(verdict.violation_a, 12),
        "violation_B": round(verdict.violation_b, 12),
        "worst_violation": round(verdict.worst_violation, 12),
        "tolerance": verdict.tolerance,
    }


def _check_tolerance(args):
    if not args.tolerance > 0:
        raise ParameterError(f"--tolerance must be > 0, got {args.tolerance}")


def run_solve(args):
    _check_tolerance(args)
    game = load_game(args.game)
    n, m = game.shape
    report = {"shape": [n, m]}
    if game.row_labels is not None:
        report["row_labels"] = list(game.row_labels)
    if game.col_labels is not None:
        report["col_labels"] = list(game.col_labels)
    report["dominant_strategy"] = {
        "A": find_dominant_strategy(game.payoff_a, "A"),
        "B": find_dominant_strategy(game.payoff_b, "B"),
    }
    pure = []
    for row, col in find_pure_equilibria(game):
        profile = pure_profile(game, row, col)
        gains = expected_payoff(game, profile)
        verdict = verify_equilibrium(game, profile, args.tolerance)
        pure.append({"row": row, "col": col, "gain_A": gains.gain_a,
                     "gain_B": gains.gain_b, "verified": verdict.passed})
    report["pure_equilibria"] = pure
    status = EXIT_OK
    if game.shape == (2, 2):
        try:
            profile = mixed_equilibrium_2x2(game)
        except DegenerateGameError as exc:
            report["mixed_equilibrium"] = {"status": "degenerate", "detail": str(exc)}
            if not pure:
                status = EXIT_DEGENERATE
        except NoInteriorEquilibriumError as exc:
            report["mixed_equilibrium"] = {"status": "no_interior_equilibrium",
                                           "p1": exc.p1, "q1": exc.q1}
        else:
            gains = expected_payoff(game, profile)
            verdict = verify_equilibrium(game, profile, args.tolerance)
            report["mixed_equilibrium"] = {
                "status": "ok",
                "p": profile.p,
                "q": profile.q,
                "gain_A": gains.gain_a,
                "gain_B": gains.gain_b,
                "verification": _verdict_dict(verdict),
            }
    else:
        report["mixed_equilibrium"] = None
    if args.format == "csv":
        _emit(_csv_text(["key", "value"], _flatten(report)), args)
    else:
        _emit(dumps(report), args)
    return status


def run_invert(args):
    _check_tolerance(args)
    queries = load_table(args.queries)
    answers = load_table(args.answers)
    aligned = align(queries, answers, args.target_n, args.alpha)
    model = invert_from_equilibrium((aligned.p, aligned.q), labels=aligned.labels,
                                    budget=args.budget)
    p, q = forward_equilibrium(model)
    err_p = float(np.max(np.abs(p - aligned.p)))
    err_q = float(np.max(np.abs(q - aligned.q)))
    verdict = verify_equilibrium(expand_to_bimatrix(model), (p, q), args.tolerance)
    passed = err_p <= args.tolerance and err_q <= args.tolerance and verdict.passed
    merged = len(queries) != aligned.n or len(answers) != aligned.n
    if merged:
        logger.info("tables aligned to n=%d by tail merge", aligned.n)
    pairing = "label" if set(aligned.labels) == set(aligned.answer_labels) else "rank"
    report = model.to_dict()
    report.update({
        "answer_labels": list(aligned.answer_labels),
        "alignment": {
            "n": aligned.n,
            "query_labels_in": len(queries),
            "answer_labels_in": len(answers),
            "tail_merged": merged,
            "pairing": pairing,
            "smoothing_alpha": aligned.smoothing_alpha,
        },
        "p": aligned.p,
        "q": aligned.q,
        "verification": {
            "passed": passed,
            "max_abs_error_p": err_p,
            "max_abs_error_q": err_q,
            "equilibrium": _verdict_dict(verdict),
        },
    })
    if args.format == "csv":
        rows = zip(model.labels, aligned.answer_labels, aligned.p, aligned.q, model.a, model.b)
        _emit(_csv_text(["label", "answer_label", "p", "q", "a", "b"], rows), args)
    else:
        _emit(dumps(report), args)
    return EXIT_OK if passed else EXIT_VERIFY


def run_shift(args):
    if not args.epsilon > 0:
        raise ParameterError(f"--epsilon must be > 0, got {args.epsilon}")
    if args.steps < 1:
        raise ParameterError(f"--steps must be >= 1, got {args.steps}")
    model = load_model(args.model)
    if args.budget is not None:
        model = normalize_to_budget(model, args.budget)
    elif model.budget is None:
        model = normalize_to_budget(model, model.effective_budget)
    outcomes = shift_loop(model, args.epsilon, args.steps)
    if not outcomes:
        limit = max_admissible_epsilon(model, shift_direction(model, args.epsilon).delta_b)
        raise StepTooLargeError(args.epsilon, limit)
    gains = [outcomes[0].gain_before] + [o.gain_after for o in outcomes]
    if any(later < earlier for earlier, later in zip(gains, gains[1:])):
        print("error: gain sequence is not monotone", file=sys.stderr)
        return EXIT_DEGENERATE
    records = []
    for step, outcome in enumerate(outcomes, start=1):
        q = forward_equilibrium(outcome.model_before).q
        records.append({
            "step": step,
            "b_before": outcome.model_before.b,
            "b_after": outcome.model_after.b,
            "gain_before": outcome.gain_before,
            "gain_after": outcome.gain_after,
            "predicted_delta": outcome.predicted_delta,
            "actual_delta": outcome.actual_delta,
            "threshold_w": outcome.plan.threshold,
            "eq16_estimate": eq16_gain_estimate(outcome.plan, q),
        })
    if args.format == "csv":
        header = list(records[0])
        _emit(_csv_text(header, ([r[k] for k in header] for r in records)), args)
    else:
        _emit(dumps(records), args)
    return EXIT_OK


def run_verify(args):
    _check_tolerance(args)
    if (args.game is None) == (args.model is None):
        raise InputError("verify needs exactly one of --game or --model")
    if args.game is not None:
        if args.profile is None:
            raise InputError("--profile is required with --game")
        game = load_game(args.game)
        profile = load_profile(args.profile, game)
    else:
        model = load_model(args.model)
        game = expand_to_bimatrix(model)
        if args.profile is None:
            profile = Profile(*forward_equilibrium(model))
        else:
            profile = load_profile(args.profile, game)
    verdict = verify_equilibrium(game, profile, args.tolerance)
    report = _verdict_dict(verdict)
    if args.format == "csv":
        _emit(_csv_text(["key", "value"], _flatten(report)), args)
    else:
        _emit(dumps(report), args)
    if not verdict.passed:
        print(f"not an equilibrium: worst violation {verdict.worst_violation:.12g}",
              file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="irgame", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("solve", help="equilibria and dominance of a bimatrix game")
    p.add_argument("--game", required=True)
    common(p)
    p.set_defaults(func=run_solve)

    p = sub.add_parser("invert", help="reconstruct an Alpha model from frequency logs")
    p.add_argument("--queries", required=True)
    p.add_argument("--answers", required=True)
    p.add_argument("--budget", type=float)
    p.add_argument("--alpha", type=float, default=DEFAULT_SMOOTHING,
                   help="additive smoothing (default: %(default)s)")
    p.add_argument("--target-n", type=int)
    common(p)
    p.set_defaults(func=run_invert)

    p = sub.add_parser("shift", help="shift provider bonuses of an Alpha model")
    p.add_argument("--model", required=True)
    p.add_argument("--budget", type=float)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--steps", type=int, default=1)
    common(p)
    p.set_defaults(func=run_shift)

    p = sub.add_parser("verify", help="check Nash inequalities for a profile")
    p.add_argument("--game")
    p.add_argument("--model")
    p.add_argument("--profile")
    common(p)
    p.set_defaults(func=run_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZeroFrequencyError as exc:
        print(f"error: {exc}\nhint: rerun with --alpha > 0 to smooth unseen labels",
              file=sys.stderr)
        return EXIT_DEGENERATE
    except StepTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (DegenerateGameError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ShapeError, IRGameError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

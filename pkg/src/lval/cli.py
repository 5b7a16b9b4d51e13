"""Command-line entry point: ``lval <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 analysis precondition not
met, 3 internal invariant violated (solver disagreement).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

import numpy as np

from . import dynamics
from .algebra import LVAlgebra, is_weight_unique
from .autgroup import NotApplicable, automorphism_bound, brute_force_automorphisms, classify_dim3
from .idempotents import (
    TheoremInapplicable,
    check_solution,
    closed_form_for_support,
    enumerate_all,
    idempotents_with_support,
    question1_check,
    theorem1_full_support,
)
from .linalg import determinant, format_rational
from .sampling import random_skew
from .skew import lemma3_sides, lemma4_sides, load_skew, pfaffian, skew3_params

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


class InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True))


def _load_algebra(args) -> LVAlgebra:
    if not args.matrix:
        raise UsageError("a matrix file is required (-m FILE)")
    try:
        return LVAlgebra(load_skew(args.matrix))
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.matrix} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None


def _parse_support(text: str, n: int) -> tuple[int, ...]:
    try:
        idx = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--support must be comma-separated integers, got {text!r}") from None
    if len(set(idx)) != len(idx) or not idx or min(idx) < 1 or max(idx) > n:
        raise UsageError(f"--support {text!r} is not a set of indices in 1..{n}")
    return tuple(sorted(idx))


def _fmt_set(idx) -> str:
    return "{" + ",".join(map(str, idx)) + "}"


# -- subcommands --------------------------------------------------------------


def cmd_pfaffian(args) -> int:
    alg = _load_algebra(args)
    pf = pfaffian(alg.matrix)
    if args.json:
        _emit({"n": alg.n, "pfaffian": format_rational(pf), "determinant": format_rational(determinant(alg.matrix.as_ratmatrix()))})
    else:
        print(format_rational(pf))
    return EXIT_OK


def _cross_check(alg: LVAlgebra, I, oracle) -> list[str]:
    """Closed forms that apply to this support, compared with the oracle."""
    problems = []
    for s in oracle:
        try:
            check_solution(alg, s)
        except AssertionError as exc:
            problems.append(f"weight {s.weight_class}: {exc}")
    routes = []
    if len(I) <= 4:
        routes.append(("closed form", lambda: closed_form_for_support(alg, I)))
    if I == tuple(range(1, alg.n + 1)):
        routes.append(("full-support Pfaffian formula", lambda: theorem1_full_support(alg)))
    for name, fn in routes:
        try:
            other = fn()
        except TheoremInapplicable:
            continue
        for a, b in zip(oracle, other):
            if not a.same_as(b):
                problems.append(f"{name} disagrees with the linear solver at weight {a.weight_class}")
    return problems


def cmd_idempotents(args) -> int:
    alg = _load_algebra(args)
    I = _parse_support(args.support, alg.n) if args.support else tuple(range(1, alg.n + 1))
    sols = idempotents_with_support(alg, I)
    problems = _cross_check(alg, I, sols)
    wanted = {"0": (0,), "1": (1,), "both": (0, 1)}[args.weight]
    if args.json:
        out = {"support": list(I)}
        for w in wanted:
            out[f"weight{w}"] = sols[w].to_json()
        _emit(out)
    else:
        print(f"support {_fmt_set(I)}")
        for w in wanted:
            print(f"weight {w}: {sols[w].describe()}")
    if problems:
        raise InvariantViolation("; ".join(problems))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    alg = _load_algebra(args)
    try:
        enum = enumerate_all(alg, max_n=args.max_n)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    for pair in enum.entries:
        for s in pair:
            try:
                check_solution(alg, s)
            except AssertionError as exc:
                raise InvariantViolation(f"support {_fmt_set(s.support)}: {exc}") from None
    if args.json:
        _emit(enum.to_json())
        return EXIT_OK
    for w0, w1 in enum.entries:
        print(f"{_fmt_set(w0.support)}: weight 0 {w0.describe()}; weight 1 {w1.describe()}")
    s = enum.summary()
    print(f"nonzero point idempotents: {s['nonzero_point_idempotents']}")
    print(f"point idempotents including zero: {s['point_idempotents_including_zero']}")
    print(f"parametric families: {'yes' if s['has_family'] else 'no'}")
    return EXIT_OK


def _print_maps(maps) -> None:
    for m in maps:
        cols = ["(" + ", ".join(format_rational(x) for x in c) + ")" for c in m.matrix.columns()]
        print("  " + " ".join(f"e{k}->{c}" for k, c in enumerate(cols, start=1)))


def cmd_automorphisms(args) -> int:
    alg = _load_algebra(args)
    try:
        desc = brute_force_automorphisms(alg)
    except NotApplicable as exc:
        raise PreconditionError(str(exc)) from None
    if args.json:
        out = desc.to_json()
        out["generic_bound"] = automorphism_bound(alg.n)
        _emit(out)
        return EXIT_OK
    print(f"order: {desc.order}")
    print(f"group: {desc.iso_tag or 'unrecognized'}")
    print(f"idempotents searched: {desc.idempotent_count}")
    print(f"generic bound C(2^n-1, n): {automorphism_bound(alg.n)}")
    print("elements:")
    _print_maps(desc.maps)
    return EXIT_OK


def cmd_classify3(args) -> int:
    alg = _load_algebra(args)
    if alg.n != 3:
        raise PreconditionError(f"classify3 needs dimension 3, got {alg.n}")
    c = classify_dim3(alg)
    if args.json:
        _emit(c.to_json())
        return EXIT_OK
    d = c.description
    print(f"case: {c.case or 'none (trivial)'}")
    print(f"family: {c.label}")
    if c.params:
        print("params: " + ", ".join(f"{k}={format_rational(v) if not isinstance(v, int) else v}" for k, v in c.params.items()))
    print(f"tau: {c.tau}")
    print("canonical: Skew(" + ", ".join(format_rational(x) for x in skew3_params(c.canonical)) + ")")
    if d.kind == "family":
        print("order: infinite")
        for f in d.families:
            print(f"  family {f.tag} ({f.arity} parameters): {f.description}")
    else:
        print(f"order: {d.order} ({d.iso_tag})")
        print("elements (original basis):")
        _print_maps(c.maps_in_original_basis())
    return EXIT_OK


def cmd_weight_unique(args) -> int:
    alg = _load_algebra(args)
    res = is_weight_unique(alg)
    if args.json:
        _emit({
            "unique": res.unique,
            "witness": None if res.witness is None else {"I": list(res.witness[0]), "J": list(res.witness[1])},
        })
        return EXIT_OK
    if res.unique is None:
        print("unique: undecided at configured bound")
        return EXIT_PRECONDITION
    print(f"unique: {'true' if res.unique else 'false'}")
    if res.witness:
        print(f"witness: I={_fmt_set(res.witness[0])} J={_fmt_set(res.witness[1])}")
    return EXIT_OK


def _identity_counts(A) -> dict:
    n = A.n
    counts = {"pf_squared_eq_det": [0, 0], "lemma3": [0, 0], "lemma4": [0, 0]}
    if n % 2 == 0:
        ok = pfaffian(A) ** 2 == determinant(A.as_ratmatrix())
        counts["pf_squared_eq_det"][0 if ok else 1] += 1
        if n > 2:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j:
                        l, r = lemma3_sides(A, i, j)
                        counts["lemma3"][0 if l == r else 1] += 1
    else:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                l, r = lemma4_sides(A, i, j)
                counts["lemma4"][0 if l == r else 1] += 1
    return counts


def cmd_check_identities(args) -> int:
    mats = []
    if args.matrix:
        mats.append(_load_algebra(args).matrix)
    rng = random.Random(args.seed)
    mats.extend(random_skew(rng, args.dim) for _ in range(args.random))
    if not mats:
        raise UsageError("give -m FILE and/or --random N")
    total = {"pf_squared_eq_det": [0, 0], "lemma3": [0, 0], "lemma4": [0, 0]}
    for A in mats:
        for k, (ok, bad) in _identity_counts(A).items():
            total[k][0] += ok
            total[k][1] += bad
    if args.json:
        _emit({"matrices": len(mats), "checks": {k: {"passed": v[0], "failed": v[1]} for k, v in total.items()}})
    else:
        print(f"matrices: {len(mats)}")
        for k, (ok, bad) in total.items():
            print(f"{k}: {ok} passed, {bad} failed")
    if any(v[1] for v in total.values()):
        raise InvariantViolation("identity check failed")
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.interaction:
        try:
            with open(args.interaction) as fh:
                M = dynamics.InteractionMatrix.from_json(json.load(fh))
        except OSError as exc:
            raise UsageError(f"cannot read {args.interaction}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.interaction} is not valid JSON: {exc.msg}") from None
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"{args.interaction}: {exc}") from None
        alg = dynamics.to_algebra(M)
    else:
        alg = _load_algebra(args)
    n = alg.n
    if args.p0:
        try:
            p0 = np.array([float(x) for x in args.p0.split(",")])
        except ValueError:
            raise UsageError("--p0 must be comma-separated floats") from None
        if len(p0) != n:
            raise UsageError(f"--p0 has {len(p0)} entries, expected {n}")
    else:
        p0 = np.full(n, 1.0 / n)
    try:
        traj = dynamics.integrate(
            alg, p0, t_end=args.t_end, dt=args.dt, stride=args.stride, renormalize=args.renormalize
        )
    except dynamics.IntegrationError as exc:
        raise PreconditionError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        with open(args.out, "w", newline="") as fh:
            traj.write_csv(fh)
    if args.json:
        _emit(traj.summary())
    elif not args.out:
        traj.write_csv(sys.stdout)
    else:
        print(f"terminal state: {traj.terminal_state.tolist()}")
        print(f"terminal derivative norm: {traj.terminal_derivative_norm:.3e}")
        print(f"max simplex-sum drift: {traj.sum_drift_max:.3e}")
    return EXIT_OK


def cmd_question1(args) -> int:
    alg = _load_algebra(args)
    rep = question1_check(alg, args.max_support)
    if args.json:
        _emit(rep.to_json())
    else:
        print(f"supports checked: {rep.supports_checked} (size <= {rep.max_support_size})")
        print(f"counterexamples: {len(rep.counterexamples)}")
        for I, _, _ in rep.counterexamples:
            print(f"  support {_fmt_set(I)} carries idempotents of weight 0 and 1")
    if any(len(I) <= 4 for I, _, _ in rep.counterexamples):
        raise InvariantViolation("counterexample at support size <= 4")
    return EXIT_OK


COMMANDS = {
    "pfaffian": cmd_pfaffian,
    "idempotents": cmd_idempotents,
    "enumerate": cmd_enumerate,
    "automorphisms": cmd_automorphisms,
    "classify3": cmd_classify3,
    "weight-unique": cmd_weight_unique,
    "check-identities": cmd_check_identities,
    "simulate": cmd_simulate,
    "question1": cmd_question1,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lval", description="Lotka-Volterra algebras over Q")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, matrix_required=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-m", "--matrix", metavar="FILE", required=matrix_required, help="skew matrix JSON")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    add("pfaffian", "Pfaffian of the matrix")
    sp = add("idempotents", "idempotents with a given support")
    sp.add_argument("--support", help="comma-separated 1-based indices (default: all)")
    sp.add_argument("--weight", choices=("0", "1", "both"), default="both")
    sp = add("enumerate", "idempotents over every support")
    sp.add_argument("--max-n", type=int, default=12)
    add("automorphisms", "brute-force automorphism group")
    add("classify3", "dimension-3 automorphism classification")
    add("weight-unique", "is the weight homomorphism unique?")
    sp = add("check-identities", "Pfaffian/determinant identities", matrix_required=False)
    sp.add_argument("--random", type=int, default=0, metavar="N")
    sp.add_argument("--dim", type=int, default=4, metavar="D")
    sp.add_argument("--seed", type=int, default=0, metavar="S")
    sp = add("simulate", "integrate the replicator system", matrix_required=False)
    sp.add_argument("--interaction", metavar="FILE", help="interaction matrix JSON instead of -m")
    sp.add_argument("--p0", help="comma-separated initial state (default: barycentre)")
    sp.add_argument("--t-end", type=float, default=dynamics.DEFAULT_T_END)
    sp.add_argument("--dt", type=float, default=dynamics.DEFAULT_DT)
    sp.add_argument("--stride", type=int, default=100)
    sp.add_argument("--out", metavar="FILE", help="write the CSV trajectory here")
    sp.add_argument("--renormalize", action="store_true", help="project onto sum 1 after each step")
    sp = add("question1", "search for supports with idempotents of both weights")
    sp.add_argument("--max-support", type=int, default=4)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "simulate" and not (args.matrix or args.interaction):
        print("lval: error: simulate needs -m FILE or --interaction FILE", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"lval: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"lval: precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantViolation as exc:
        print(f"lval: INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

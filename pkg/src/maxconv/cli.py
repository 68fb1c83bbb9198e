"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 bad input
measure (unreadable file, malformed JSON, failed validation or a domain
precondition such as a negative atom for Boolean max-convolution).
"""
import argparse
import json
import sys

import numpy as np

from . import convolution, suites
from .measure import (DomainError, dumps_measure, grid_clusters, load_measure, sample,
                      write_cdf_csv)
from .subordination import subordinate

DEFAULT_SEED = 7


def _emit_measure(m, out):
    text = dumps_measure(m) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_conv(args):
    _emit_measure(convolution.KINDS[args.kind](load_measure(args.a), load_measure(args.b)), args.out)
    return 0


def cmd_power(args):
    _emit_measure(convolution.free_max_power(load_measure(args.a), args.t), args.out)
    return 0


def cmd_subordinate(args):
    _emit_measure(subordinate(load_measure(args.sigma), load_measure(args.mu)), args.out)
    return 0


def cmd_verify(args):
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    reports = suites.run_suites(names, args.trials, args.seed)
    ok = all(r.passed for r in reports.values())
    out = {"seed": args.seed, "trials": args.trials, "pass": ok,
           "suites": {k: r.to_dict() for k, r in reports.items()}}
    print(json.dumps(out, indent=2, default=float))
    if not ok:
        for name, r in reports.items():
            if not r.passed:
                print(f"FAILED {name}: max_error={r.max_error:.3g} at x={r.witness_x:.17g}",
                      file=sys.stderr)
        return 1
    return 0


def cmd_sample(args):
    xs = sample(load_measure(args.a), args.n, args.seed)
    sys.stdout.write("".join(f"{x!r}\n" for x in xs.tolist()))
    return 0


def cmd_emit_cdf(args):
    m = load_measure(args.a)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_cdf_csv(m, fh)
    else:
        write_cdf_csv(m, sys.stdout)
    return 0


def cmd_operator_demo(args):
    from .operators import (monotone_pair, spectral_distribution,
                            spectral_maximum_distribution, tensor_model_max_law)

    d1, d2 = args.dims
    rng = np.random.default_rng(args.seed)
    x, s1 = suites.random_operator(rng, dim=d1)
    y, s2 = suites.random_operator(rng, dim=d2)
    xt, yt, s = monotone_pair(x, s1, y, s2)
    law = spectral_maximum_distribution(xt, yt, s)
    mu, nu = spectral_distribution(x, s1), spectral_distribution(y, s2)
    classical = convolution.classical_max(mu, nu)
    model = tensor_model_max_law(mu, nu)
    print(f"# monotone pair on C^{d1} (x) C^{d2}, seed {args.seed}")
    print(f"# eigenvalues X: {np.round(np.linalg.eigvalsh(x), 6).tolist()}")
    print(f"# eigenvalues Y: {np.round(np.linalg.eigvalsh(y), 6).tolist()}")
    print(f"{'x':>12} {'F_spectral_max':>16} {'F_classical':>14} {'F_model':>10}")
    _, grid = grid_clusters(np.unique(np.r_[law.atoms, classical.atoms, model.atoms]))
    for g in grid:
        print(f"{g:12.6f} {law.cdf(g):16.12f} {classical.cdf(g):14.12f} {model.cdf(g):10.6f}")
    return 0


def _dims(text):
    try:
        d1, d2 = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected D1,D2") from None
    if d1 < 1 or d2 < 1:
        raise argparse.ArgumentTypeError("dimensions must be positive")
    return d1, d2


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser():
    parser = argparse.ArgumentParser(prog="maxconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("conv", help="max-convolution of two measures")
    p.add_argument("--kind", required=True, choices=sorted(convolution.KINDS))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_conv)

    p = sub.add_parser("power", help="free max-convolution power")
    p.add_argument("--t", required=True, type=float)
    p.add_argument("--a", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("subordinate", help="subordination measure A(sigma, mu)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_subordinate)

    p = sub.add_parser("verify", help="run randomized identity checks")
    p.add_argument("--suite", required=True, choices=[*suites.SUITES, "all"])
    p.add_argument("--trials", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="draw samples from a measure")
    p.add_argument("--a", required=True)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("emit-cdf", help="write the CDF step function as CSV")
    p.add_argument("--a", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_emit_cdf)

    p = sub.add_parser("operator-demo", help="spectral maximum of a random monotone pair")
    p.add_argument("--dims", type=_dims, default=(2, 2))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_operator_demo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) == DEFAULT_SEED and args.verb in ("sample", "operator-demo"):
        print(f"# seed {DEFAULT_SEED}", file=sys.stderr)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"maxconv {args.verb}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

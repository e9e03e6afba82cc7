"""``expsieve`` command line.

Subcommands: census, scan, discrepancy, lsieve, pairs, suggest and
``verify t1|t2|t3|corollary|erdos-murty|titchmarsh``. Exit codes: 0 success,
2 validation error, 3 runtime failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import census as cen
from .discrepancy import erdos_turan_bound, extreme_discrepancy, fractional_parts, star_discrepancy
from .expsum import Strategy, large_sieve_lhs, large_sieve_rhs
from .pairs import ExponentPair, optimize_f
from .report import emit_report
from .seqgen import gen_gamma, gen_s, parse_coefficient_spec, parse_sequence_spec, splitmix64

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3

VERIFY_TARGETS = ("t1", "t2", "t3", "corollary", "erdos-murty", "titchmarsh")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=int, default=2)
    p.add_argument("--x", dest="X", type=float, default=1000.0)
    p.add_argument("--t", dest="T", type=int, default=None, help="number of terms (default: floor(X))")
    p.add_argument("--delta", dest="Delta", type=float, default=None, help="order cut (default: X^0.4)")
    p.add_argument("--L", dest="L", type=float, default=2.0)
    p.add_argument("--K", dest="K", type=float, default=None, help="default: T")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--seed", type=lambda v: int(v, 0), default=0)
    p.add_argument("--seq", default="identity", help="identity | primepow:C | file:PATH")
    p.add_argument("--gamma", default="ones", help="ones | random:SEED | file:PATH")
    p.add_argument("--strategy", default="auto", help="auto | direct | fft | sampled:K")
    p.add_argument("--workers", type=int, default=None, help="default: $EXPSIEVE_WORKERS or CPU count")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expsieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("census", "multiplicative orders and E / E' / Ebar membership"),
        ("scan", "per-prime maxima of the exponential sum"),
        ("discrepancy", "discrepancy of lambda^{s_n}/p per prime"),
        ("lsieve", "large sieve double sum against (K^2 + s_T) T"),
        ("suggest", "asymptotic parameter choices T, L, Delta"),
    ]:
        sp = sub.add_parser(name, help=help_)
        _common(sp)
        if name == "discrepancy":
            sp.add_argument("--H", type=int, default=None, help="Erdos-Turan cutoff (default: isqrt(N))")
        if name == "suggest":
            sp.add_argument("--nu", type=float, default=0.0)
    sp = sub.add_parser("pairs", help="exponent pairs and the sparsity exponent optimum")
    _common(sp)
    sp.add_argument("--nmax", type=int, default=8)
    sp.add_argument("--grid", type=int, default=100)
    sp = sub.add_parser("verify", help="theorem-level lhs/rhs comparisons")
    sp.add_argument("target", choices=VERIFY_TARGETS)
    _common(sp)
    sp.add_argument("--c-corr", dest="c_corr", type=float, default=1.0)
    sp.add_argument("--pair", default="1/8,5/8", help="exponent pair alpha,beta for t3")
    sp.add_argument("--tp", default="random", choices=("full", "half", "random"), help="T_p choice for t2")
    return parser


def _params(args) -> cen.CensusParams:
    return cen.CensusParams(
        lam=args.lam,
        X=args.X,
        T=args.T,
        Delta=args.Delta,
        L=args.L,
        K=args.K,
        epsilon=args.epsilon,
        seed=args.seed,
        strategy=Strategy.parse(args.strategy, seed=args.seed),
    )


def _params_meta(params: cen.CensusParams, args) -> dict:
    return {
        "lambda": params.lam,
        "X": params.X,
        "T": params.T,
        "Delta": params.Delta,
        "L": params.L,
        "K": params.K,
        "epsilon": params.epsilon,
        "seed": params.seed,
        "strategy": args.strategy,
        "seq": args.seq,
        "gamma": args.gamma,
    }


def _sequences(args, T: int):
    return gen_s(parse_sequence_spec(args.seq), T), gen_gamma(parse_coefficient_spec(args.gamma), T)


def _split(params):
    records = cen.order_census(params.lam, params.X)
    E, Ep, Eb = cen.split_E(records, params.Delta, params.X, params.epsilon)
    return records, E, Ep, Eb


def _cmd_census(args, params, workers):
    records, E, Ep, Eb = _split(params)
    flagged = sorted(E + Eb, key=lambda r: r.p)
    rows = [dict(p=r.p, t_p=r.t_p, tau_pm1=r.tau_pm1, in_E=r.in_E, in_Eprime=r.in_Eprime) for r in flagged]
    excl = cen.excluded_primes(params.lam, params.X)
    summary = f"census: {len(records)} primes, |E|={len(E)} |E'|={len(Ep)} |Ebar|={len(Eb)}, excluded {excl}"
    return "census", rows, summary, {"excluded": excl}


def _scan_rows(scans):
    return [
        dict(p=sc.p, t_p=sc.t_p, max_abs=sc.max_abs, argmax_a=sc.argmax_a, exact=sc.exact, hbk=sc.hbk, trivial_bound=sc.trivial_bound)
        for sc in scans
    ]


def _cmd_scan(args, params, workers):
    s, gamma = _sequences(args, params.T)
    records = cen.order_census(params.lam, params.X)
    scans = cen.scan_primes(records, params.lam, s, gamma, params.strategy, workers)
    exact = all(sc.exact for sc in scans)
    return "scan", _scan_rows(scans), f"scan: {len(scans)} primes, exact={exact}", {}


def _cmd_discrepancy(args, params, workers):
    s, _ = _sequences(args, params.T)
    rows = []
    for rec in cen.order_census(params.lam, params.X):
        ps = fractional_parts(params.lam, rec.p, s)
        H = args.H if args.H is not None else max(1, math.isqrt(ps.N))
        rows.append(
            dict(
                p=rec.p,
                t_p=rec.t_p,
                N=ps.N,
                H=H,
                star=star_discrepancy(ps),
                extreme=extreme_discrepancy(ps),
                erdos_turan=erdos_turan_bound(ps, H),
            )
        )
    worst = max((r["extreme"] for r in rows), default=float("nan"))
    return "discrepancy", rows, f"discrepancy: {len(rows)} primes, max D = {worst:.6g}", {}


def _cmd_lsieve(args, params, workers):
    s, gamma = _sequences(args, params.T)
    K = int(params.K)
    if K < 1:
        raise CliError("K must be >= 1")
    lhs = large_sieve_lhs(s, gamma, K)
    rhs = large_sieve_rhs(K, int(s[-1]), params.T)
    row = dict(K=K, T=params.T, s_T=int(s[-1]), lhs=lhs, rhs=rhs, ratio=lhs / rhs)
    return "lsieve", [row], f"lsieve: lhs/rhs = {lhs / rhs:.6g}", {}


def _cmd_pairs(args, params, workers):
    best, value, table = optimize_f(args.nmax, args.grid)
    rows = [
        dict(provenance=row.pair.provenance, alpha=row.pair.alpha, beta=row.pair.beta, f=row.value, best=row.pair.key == best.key)
        for row in table
    ]
    return "pairs", rows, f"pairs: best {best} with f = {value}", {}


def _cmd_suggest(args, params, workers):
    T, L, Delta = cen.parameter_suggest(params.X, params.epsilon, args.nu)
    return "suggest", [dict(T=T, L=L, Delta=Delta)], f"suggest: T={T} L={L:.6g} Delta={Delta:.6g}", {}


def _verify_row(lhs, rhs, parts, exact):
    terms = list(parts.values()) + [None] * (3 - len(parts))
    return dict(lhs=lhs, rhs=rhs, ratio=lhs / rhs if rhs > 0 else float("nan"), term1=terms[0], term2=terms[1], term3=terms[2], exact=exact)


def _parse_pair(text: str) -> ExponentPair:
    try:
        a, b = text.split(",")
        return ExponentPair(Fraction(a), Fraction(b))
    except ValueError as exc:
        raise CliError(f"bad exponent pair {text!r}: {exc}") from exc


def _truncations(E, T, mode, seed):
    if mode == "full":
        return {r.p: T for r in E}
    if mode == "half":
        return {r.p: max(1, T // 2) for r in E}
    return {r.p: 1 + splitmix64((seed + r.p) & ((1 << 64) - 1)) % T for r in E}


def _cmd_verify(args, params, workers):
    target = args.target
    if target == "titchmarsh":
        ratio = cen.titchmarsh_ratio(params.X)
        return "titchmarsh", [dict(X=params.X, ratio=ratio)], f"titchmarsh: ratio = {ratio:.6g}", {}
    _, E, Ep, Eb = _split(params)
    if target == "erdos-murty":
        rep = cen.erdos_murty_check(Eb, params.Delta, params.lam)
        row = dict(count=rep.count, bound=rep.bound, ratio=rep.ratio, divisibility_ok=rep.divisibility_ok)
        return "erdos-murty", [row], f"erdos-murty: |Ebar|={rep.count} bound={rep.bound:.6g} ok={rep.divisibility_ok}", {}
    s, gamma = _sequences(args, params.T)
    T = params.T
    s_T = float(s[-1])
    if target == "t1":
        lhs, exact, _ = cen.theorem1_lhs(E, params.lam, s, gamma, params.strategy, workers)
        rhs, parts = cen.theorem1_rhs(params.X, T, params.Delta, params.L, s_T)
    elif target == "t2":
        Tp = _truncations(E, T, args.tp, params.seed)
        lhs, exact, _ = cen.theorem2_lhs(E, Tp, params.lam, s, gamma, params.strategy, workers)
        rhs, parts = cen.theorem2_rhs(params.X, T, params.Delta, params.L, s_T, params.K, E)
    elif target == "t3":
        pair = _parse_pair(args.pair)
        lhs, exact, _ = cen.theorem3_lhs(E, params.lam, T, gamma, params.strategy, workers)
        rhs, parts = cen.theorem3_rhs(params.X, T, params.Delta, params.L, pair, gamma)
    else:
        rep = cen.corollary_census(Ep, params.lam, s, T, params.epsilon, params.strategy, args.c_corr, workers)
        row = dict(
            X=params.X,
            T=T,
            epsilon=params.epsilon,
            c_corr=args.c_corr,
            threshold=rep.threshold,
            n_eprime=rep.n_eprime,
            n_violating=len(rep.violating),
            fraction=rep.fraction,
            empty=rep.empty,
            exact=rep.exact,
        )
        summary = f"corollary: {len(rep.violating)}/{rep.n_eprime} primes above {rep.threshold:.6g}"
        return "corollary", [row], summary, {"violating": rep.violating}
    row = _verify_row(lhs, rhs, parts, exact)
    return "verify", [row], f"verify {target}: lhs={lhs:.6g} rhs={rhs:.6g} ratio={row['ratio']:.6g} exact={exact}", {"parts": parts}


COMMANDS = {
    "census": _cmd_census,
    "scan": _cmd_scan,
    "discrepancy": _cmd_discrepancy,
    "lsieve": _cmd_lsieve,
    "pairs": _cmd_pairs,
    "suggest": _cmd_suggest,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        workers = args.workers if args.workers is not None else cen.default_workers()
        if workers < 1:
            raise CliError("--workers must be >= 1")
        params = _params(args)
        kind, rows, summary, extra = COMMANDS[args.command](args, params, workers)
        meta = {"command": args.command, "params": _params_meta(params, args)} | extra
        text = emit_report(kind, rows, args.fmt, args.out, meta)
    except CliError as exc:
        print(f"expsieve: error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, OverflowError, MemoryError) as exc:
        print(f"expsieve: runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(f"expsieve: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.out is None:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        print(f"{summary} -> {args.out}")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: gb, verify, gen and bench subcommands.

System files are plain text: a header line

    p=5 prec=3 vars=x,y order=grevlex ring=integral

followed by a `---` separator and one generator per line in the series
text format.  Exit codes: 0 success, 1 failed verification, 2 parse
error (messages name line and column), 3 invalid header or parameters.
"""

import argparse
import json
import sys
import time

from . import _core
from .arith import Context, EngineOptions
from .engine import ENGINES, minimize_and_reduce, s_series
from .errors import SystemFormatError, TateError
from .reduce import top_reduce
from .series import format_series, normalize_to_integral, parse_series
from .systems import TorsionSystemSpec, random_system, torsion_system

_HEADER_KEYS = {"p", "prec", "vars", "order", "ring"}


def parse_system_text(text):
    """Parse a system file; returns (ctx, ring_mode, generators)."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise SystemFormatError("empty system file", 1, 1)
    header_no = idx + 1
    fields = {}
    for tok in lines[idx].split():
        if "=" not in tok:
            raise SystemFormatError(f"bad header token {tok!r}",
                                    header_no, lines[idx].find(tok) + 1)
        k, v = tok.split("=", 1)
        fields[k] = v
    unknown = sorted(set(fields) - _HEADER_KEYS)
    if unknown:
        raise SystemFormatError(f"unknown header keys: {', '.join(unknown)}",
                                header_no, 1)
    for req in ("p", "prec", "vars"):
        if req not in fields:
            raise SystemFormatError(f"missing header key {req!r}",
                                    header_no, 1)
    try:
        p = int(fields["p"])
        prec = int(fields["prec"])
    except ValueError:
        raise SystemFormatError("p and prec must be integers", header_no, 1)
    ring = fields.get("ring", "integral")
    if ring not in ("integral", "rational"):
        raise TateError(f"ring must be integral or rational, got {ring!r}")
    ctx = Context(p, prec, tuple(fields["vars"].split(",")),
                  fields.get("order", "grevlex"))
    idx += 1
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines) or lines[idx].strip() != "---":
        raise SystemFormatError("expected '---' separator after the header",
                                idx + 1, 1)
    gens = []
    for j in range(idx + 1, len(lines)):
        if lines[j].strip():
            gens.append(parse_series(lines[j], ctx, line_no=j + 1))
    return ctx, ring, gens


def format_system(ctx, ring, gens):
    header = (f"p={ctx.p} prec={ctx.prec} vars={','.join(ctx.var_names)} "
              f"order={ctx.order} ring={ring}")
    return "\n".join([header, "---"] + [format_series(g) for g in gens]) + "\n"


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_system_text(fh.read())
    except OSError as exc:
        raise TateError(f"cannot read {path}: {exc}")


def format_sig(ctx, tm):
    from .series import _format_mono

    mono = _format_mono(tm.mono, ctx.var_names)
    if tm.val == 0:
        return mono or "1"
    head = f"{ctx.p}^{tm.val}" if tm.val > 1 else str(ctx.p)
    return f"{head}*{mono}" if mono else head


def verify_basis(gens, basis, ctx, membership=False):
    """The operational GB checks: (a) every generator reduces to 0,
    (b) every pairwise S-series of the basis reduces to 0, and with
    membership=True (c) every basis element reduces to 0 against a
    Buchberger basis of the input ideal."""
    basis = [b for b in basis if not b.is_zero()]
    if not basis:
        if any(not g.is_zero() for g in gens):
            return False, "empty basis for a nonzero system"
        return True, "ok (empty system)"
    for i, g in enumerate(gens):
        if not top_reduce(g, basis).result.is_zero():
            return False, f"generator #{i + 1} does not reduce to 0"
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_series(basis[i], basis[j])
            if not top_reduce(s, basis).result.is_zero():
                return False, (f"S-series of basis elements "
                               f"#{i + 1} and #{j + 1} does not reduce to 0")
    if membership:
        ref, _ = ENGINES["buchberger"](list(gens), ctx)
        for i, b in enumerate(basis):
            if not top_reduce(b, ref).result.is_zero():
                return False, f"basis element #{i + 1} is not in the input ideal"
    return True, "ok"


def _run_engine(algo, gens, ctx):
    t0 = time.perf_counter()
    raw, stats = ENGINES[algo](list(gens), ctx)
    basis = minimize_and_reduce(raw)
    return basis, stats, (time.perf_counter() - t0) * 1000.0


def cmd_gb(args):
    ctx, ring, gens = _load(args.input)
    opts = EngineOptions(
        interrupt_on_valuation_rise=args.interrupt,
        monic_signatures=args.monic_sig and not args.no_monic_sig,
        debug_track_syzygies=args.debug_syzygies,
        interreduce=not args.no_interreduce,
    )
    ctx = Context(ctx.p, ctx.prec, ctx.var_names, ctx.order, opts)
    if ring == "rational":
        gens = [normalize_to_integral(g)[0] for g in gens if not g.is_zero()]
    basis, stats, ms = _run_engine(args.algo, gens, ctx)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(format_system(ctx, "integral", basis))
    if args.json:
        doc = {
            "p": ctx.p,
            "prec": ctx.prec,
            "vars": list(ctx.var_names),
            "order": ctx.order,
            "ring": ring,
            "algo": args.algo,
            "basis": [format_series(g) for g in basis],
            "stats": stats.as_dict(),
            "time_ms": ms,
        }
        if stats.increments is not None:
            doc["colon_signatures"] = [
                [format_sig(ctx, s) for s in rec.syzygy_sigs]
                for rec in stats.increments
            ]
        print(json.dumps(doc, indent=2))
    else:
        for g in basis:
            print(format_series(g))
        print()
        print("# stats")
        for k, v in stats.as_dict().items():
            print(f"{k}={v}")
        print(f"time_ms={ms:.3f}")
        if stats.increments is not None:
            for n, rec in enumerate(stats.increments, 1):
                sigs = ", ".join(format_sig(ctx, s) for s in rec.syzygy_sigs)
                print(f"# colon signatures (increment {n}): {sigs or '-'}")
    return 0


def cmd_verify(args):
    ctx, ring, gens = _load(args.input)
    bctx, _bring, basis = _load(args.basis)
    if not ctx.same_ring(bctx):
        raise TateError("system and basis headers disagree "
                        "(p, prec, vars and order must match)")
    if ring == "rational":
        gens = [normalize_to_integral(g)[0] for g in gens if not g.is_zero()]
    ok, msg = verify_basis(gens, basis, ctx, membership=args.membership)
    print(("PASS: " if ok else "FAIL: ") + msg)
    return 0 if ok else 1


def cmd_gen(args):
    if args.kind == "torsion":
        spec = TorsionSystemSpec(args.p, args.ell, args.prec)
        gens = torsion_system(spec)
        ctx = gens[0].ctx
    else:
        ctx = Context(args.p, args.prec, tuple(args.vars.split(",")),
                      args.order)
        gens = random_system(ctx, args.seed, args.gens, args.terms,
                             args.deg, args.val)
    text = format_system(ctx, "integral", gens)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args):
    algos = args.algos.split(",")
    for a in algos:
        if a not in ENGINES:
            raise TateError(f"unknown engine {a!r}")
    if args.backends == "both":
        backends = _core.available()
    elif args.backends == "auto":
        backends = [_core.active()]
    else:
        backends = [args.backends]
    saved = _core.active()
    hdr = (f"{'system':<28} {'backend':<9} {'algo':<11} {'time_ms':>10} "
           f"{'pairs':>7} {'popped':>7} {'cover':>6} {'sig':>5} "
           f"{'red':>6} {'zero':>6}")
    print(hdr)
    print("-" * len(hdr))
    exit_code = 0
    try:
        for path in args.inputs:
            ctx, ring, gens = _load(path)
            if ring == "rational":
                gens = [normalize_to_integral(g)[0]
                        for g in gens if not g.is_zero()]
            for backend in backends:
                _core.use(backend)
                rows = []
                for algo in algos:
                    best_ms, stats, basis = None, None, None
                    for _ in range(args.repeat):
                        basis, stats, ms = _run_engine(algo, gens, ctx)
                        if best_ms is None or ms < best_ms:
                            best_ms = ms
                    s = stats.as_dict()
                    popped = s["jpairs_popped"]
                    accounted = (s["skipped_cover"] + s["skipped_sig"]
                                 + s["reductions"])
                    if accounted != popped:
                        print(f"!! accounting identity violated for {algo}",
                              file=sys.stderr)
                        exit_code = 1
                    rows.append((algo, best_ms, s, len(basis)))
                fastest = min(r[1] for r in rows)
                for algo, ms, s, _nb in rows:
                    mark = "*" if ms == fastest else " "
                    name = path if len(path) <= 27 else "..." + path[-24:]
                    print(f"{name:<28} {backend:<9} {algo:<10}{mark} "
                          f"{ms:>10.2f} {s['jpairs_created']:>7} "
                          f"{s['jpairs_popped']:>7} {s['skipped_cover']:>6} "
                          f"{s['skipped_sig']:>5} {s['reductions']:>6} "
                          f"{s['zero_reductions']:>6}")
                by_algo = {r[0]: r[2] for r in rows}
                if all(a in by_algo for a in ("buchberger", "pote", "vapote")):
                    bz = by_algo["buchberger"]["zero_reductions"]
                    if not (by_algo["pote"]["zero_reductions"] < bz
                            and by_algo["vapote"]["zero_reductions"] < bz):
                        print(f"  note: signature engines did not beat "
                              f"buchberger on reductions to zero for {path}",
                              file=sys.stderr)
    finally:
        _core.use(saved)
    return exit_code


def build_parser():
    ap = argparse.ArgumentParser(
        prog="tategb",
        description="Groebner bases over integral Tate algebras mod p^N")
    sub = ap.add_subparsers(dest="command", required=True)

    gb = sub.add_parser("gb", help="compute a Groebner basis")
    gb.add_argument("input")
    gb.add_argument("--algo", choices=sorted(ENGINES), default="vapote")
    gb.add_argument("--no-interreduce", action="store_true")
    gb.add_argument("--interrupt", action="store_true",
                    help="interrupt reductions when the valuation rises "
                         "(VaPoTe only)")
    gb.add_argument("--monic-sig", action="store_true",
                    help="normalize seeded signature valuations to 0 "
                         "(unsound at a hard precision cap; off by default)")
    gb.add_argument("--no-monic-sig", action="store_true")
    gb.add_argument("--debug-syzygies", action="store_true")
    gb.add_argument("--json", action="store_true")
    gb.add_argument("--output", "-o",
                    help="also write the basis as a system file")
    gb.set_defaults(fn=cmd_gb)

    vf = sub.add_parser("verify", help="verify a basis against a system")
    vf.add_argument("input")
    vf.add_argument("basis")
    vf.add_argument("--membership", action="store_true",
                    help="also check basis elements against a freshly "
                         "computed reference basis")
    vf.set_defaults(fn=cmd_verify)

    gen = sub.add_parser("gen", help="generate a benchmark system")
    gsub = gen.add_subparsers(dest="kind", required=True)
    gt = gsub.add_parser("torsion")
    gt.add_argument("--p", type=int, required=True)
    gt.add_argument("--ell", type=int, required=True)
    gt.add_argument("--prec", type=int, required=True)
    gt.add_argument("--out")
    gt.set_defaults(fn=cmd_gen)
    gr = gsub.add_parser("random")
    gr.add_argument("--p", type=int, required=True)
    gr.add_argument("--prec", type=int, required=True)
    gr.add_argument("--vars", default="x,y")
    gr.add_argument("--order", default="grevlex")
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("--gens", type=int, default=2)
    gr.add_argument("--terms", type=int, default=4)
    gr.add_argument("--deg", type=int, default=3)
    gr.add_argument("--val", type=int, default=1)
    gr.add_argument("--out")
    gr.set_defaults(fn=cmd_gen)

    bn = sub.add_parser("bench", help="time engines on systems")
    bn.add_argument("inputs", nargs="+")
    bn.add_argument("--algos", default="buchberger,pote,vapote")
    bn.add_argument("--repeat", type=int, default=1)
    bn.add_argument("--backends", default="auto",
                    choices=["auto", "pure", "compiled", "both"],
                    help="which arithmetic kernel(s) to time")
    bn.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SystemFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

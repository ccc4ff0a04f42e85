"""Command line: certify, generate, inspect and extract.

Exit codes: 0 verdict produced, 1 internal error, 2 rejected input.
"""

import argparse
import json
import sys

from . import constructor
from .certifier import ABOVE_RANGE_MESSAGE, MAX_R, NOT_IDENTIFIABLE, certify
from .decomposition import InputError
from .fields import DEFAULT_PRIME, PrimeField, unlimited_digits
from .instances import ParseError, read_instance, write_instance

EXIT_OK, EXIT_INTERNAL, EXIT_REJECTED = 0, 1, 2


class Rejected(Exception):
    pass


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    inst = read_instance(path)
    if inst.decomposition.r > MAX_R:
        raise Rejected(ABOVE_RANGE_MESSAGE)
    return inst


def _prime(args):
    p = args.prime if args.field == "modp" and args.prime else DEFAULT_PRIME
    try:
        return PrimeField(p).p
    except ValueError as exc:
        raise Rejected("--prime: %s" % exc) from exc


def verdict_text(v):
    lines = ["verdict: " + v.summary()]
    ev = v.evidence
    cond = ev.get("conditions")
    if cond:
        lines.append("conditions: " + ", ".join("%s=%s" % (k, "yes" if ok else "no") for k, ok in cond.items()))
    ft = ev.get("final_test")
    if ft and "mateqns" in ft:
        m = ft["mateqns"]
        lines.append("final test: MatEqns rank %s (kernel dim %s, %d raw rows), residue system rank %s"
                     % (m["rank"], m["kernel_dim"], m["raw_rows"], ft.get("residue_system", {}).get("rank")))
    if v.witness:
        lines.append("witness:")
        for k in ("removed_point", "cubic_parameters", "residue_hilbert"):
            if k in v.witness:
                lines.append("  %s: %s" % (k, v.witness[k]))
    return "\n".join(lines) + "\n"


def cmd_certify(args):
    inst = _load(args.instance)
    v = certify(inst.decomposition, prime=_prime(args))
    if args.json:
        doc = v.to_dict()
        doc["field"] = args.field
        with unlimited_digits():
            text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        text = verdict_text(v)
    _emit(text, args.output)
    return EXIT_OK


GENERATORS = {
    "nonid12": (12, constructor.make_nonidentifiable_12),
    "nonid13": (13, constructor.make_nonidentifiable_13),
    "nondisjoint13": (13, constructor.make_nondisjoint_13),
}


def cmd_generate(args):
    if args.kind == "generic":
        if args.r is None:
            raise Rejected("--r is required for generic instances")
        if not 1 <= args.r <= 21:
            raise Rejected("--r must be between 1 and 21")
        inst = constructor.generic_instance(args.r, args.seed)
    else:
        r, make = GENERATORS[args.kind]
        if args.r not in (None, r):
            raise Rejected("--kind %s has r = %d" % (args.kind, r))
        inst = make(args.seed)
    write_instance(inst, args.output)
    return EXIT_OK


def _table(rows, header):
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines = [fmt % tuple(header)] + [fmt % tuple(str(x) for x in r) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_inspect(args):
    from .criteria import base_locus_of, kruskal_ranks, terracini
    from .pointsets import hilbert_data, min_generator_count

    inst = _load(args.instance)
    pts = inst.points
    prime = _prime(args)
    chosen = args.hilbert or args.baselocus or args.kruskal or args.terracini
    out = ["instance: r = %d, kind %s" % (len(pts), inst.kind)]
    if args.hilbert or not chosen:
        hd = hilbert_data(pts, 5, PrimeField(prime))
        gens = [min_generator_count(pts, d, PrimeField(prime)) for d in range(1, 5)]
        rows = [(d, hd.values[d], hd.first_difference[d], gens[d - 1] if d >= 1 else "-") for d in range(0, 5)]
        rows[0] = (0, hd.values[0], hd.first_difference[0], "-")
        out.append("Hilbert function of A")
        out.append(_table(rows, ["d", "h_A(d)", "Dh_A(d)", "new generators"]))
    if args.baselocus:
        rep, raw = base_locus_of(pts, prime)
        out.append("base locus of the quadrics through A: %s (four-quadric complete intersection: %s)"
                   % (rep.describe, "yes" if rep.ci_certified else "no"))
        if raw.window:
            out.append(_table(sorted(raw.window.items()), ["d", "h(d)"]))
    if args.kruskal:
        kr = kruskal_ranks(pts, (1, 2, 3), prime)
        out.append("Kruskal ranks of v_d(A)")
        out.append(_table([(d, kr.values[d], min(len(pts), n)) for d, n in ((1, 5), (2, 15), (3, 35))],
                          ["d", "k_d", "generic"]))
    if args.terracini:
        ter = terracini(pts, 4, prime)
        out.append("Terracini tangent span: rank %d of a %dx%d matrix (expected %d, method %s)"
                   % (ter.rank, ter.rows, ter.cols, ter.expected, ter.method))
    sys.stdout.write("\n".join(o.rstrip("\n") for o in out) + "\n")
    return EXIT_OK


def cmd_extract(args):
    from .extract import NumericFailure, second_decomposition_12, second_decomposition_13

    inst = _load(args.instance)
    decomp = inst.decomposition
    v = certify(decomp, prime=_prime(args))
    lines = ["verdict: " + v.summary()]
    sd = None
    try:
        if v.identifiability == NOT_IDENTIFIABLE:
            if "removed_point" in v.witness:
                i = v.witness["removed_point"]
                lines.append("second decomposition of the expression without point %d:" % i)
                sd = second_decomposition_12(decomp.without(i), v.witness, gap=args.gap, residual=args.residual)
            else:
                sd = second_decomposition_12(decomp, v.witness, gap=args.gap, residual=args.residual)
        elif inst.kind == "nonid13" and inst.data.get("linking_cubics"):
            lines.append("second decomposition from the recorded linkage data:")
            sd = second_decomposition_13(decomp, inst.data, gap=args.gap, residual=args.residual)
    except NumericFailure as exc:
        lines.append("NUMERIC_FAILURE: %s" % exc)
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    if sd is None:
        lines.append("no second decomposition to extract")
    else:
        d = sd.to_dict()
        rows = [(k, " ".join(p), w) for k, (p, w) in enumerate(zip(d["points"], d["weights"]))]
        lines.append(_table(rows, ["i", "point", "weight"]).rstrip("\n"))
        lines.append("generator residual %.2e, (I_B)_3 residual %.2e, weight residual %.2e, conjugate-closed %s"
                     % (sd.generator_residual, sd.ideal_residual, sd.weight_residual,
                        "yes" if sd.conjugate_pairs else "no"))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="waringcert", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def field_opts(p):
        p.add_argument("--field", choices=("rational", "modp"), default="rational",
                       help="exact route is always rational; modp selects the prime for modular checks")
        p.add_argument("--prime", type=int, default=None)

    c = sub.add_parser("certify", help="certify rank and identifiability")
    c.add_argument("instance")
    field_opts(c)
    c.add_argument("--json", action="store_true")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_certify)

    g = sub.add_parser("generate", help="write a seeded instance file")
    g.add_argument("--kind", choices=("generic",) + tuple(GENERATORS), required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("inspect", help="print diagnostic tables")
    i.add_argument("instance")
    field_opts(i)
    for flag in ("--hilbert", "--baselocus", "--kruskal", "--terracini"):
        i.add_argument(flag, action="store_true")
    i.set_defaults(func=cmd_inspect)

    e = sub.add_parser("extract", help="certify, then print a numeric second decomposition")
    e.add_argument("instance")
    field_opts(e)
    e.add_argument("--gap", type=float, default=1e-6)
    e.add_argument("--residual", type=float, default=1e-8)
    e.set_defaults(func=cmd_extract)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Rejected, ParseError, InputError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_REJECTED
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_REJECTED
    except Exception as exc:  # noqa: BLE001
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

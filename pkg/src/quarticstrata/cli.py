"""Command-line interface: ``quarticstrata <command> [options]``."""

import argparse
import json
import sys
from importlib import resources

from . import apolarity, pointsets, strata
from .errors import ParseError, StrataError, UnsplitScheme
from .gfp import DEFAULT_PRIME
from .groebner import Ideal, MonomialIdeal, ideals_equal, krull_dim
from .poly import PolyRing
from .resolution import BettiTable, betti_table, double_betti

J6 = "x0^2, x0*x1, x1^2, x0*x2, x1*x2^2, x2^3"


class Output:
    def __init__(self, as_json):
        self.as_json = as_json

    def emit(self, data, text):
        if self.as_json:
            print(json.dumps(data, sort_keys=True))
        else:
            print(text)


def _ring(p):
    return PolyRing([f"x{i}" for i in range(4)], p=p)


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in ",;" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [s.strip() for s in parts if s.strip()]


def parse_ideal(text, p):
    S = _ring(p)
    return Ideal(S, [S.parse(s) for s in _split_top(text)])


def parse_monomial_ideal(text, p):
    I = parse_ideal(text, p)
    gens = []
    for g in I.gens:
        if len(g) != 1:
            raise ParseError(f"{g.to_text()} is not a monomial")
        gens.append(g.lead_monomial())
    return MonomialIdeal(4, gens)


def parse_form(text, p):
    text = text.strip()
    if "y" not in text and "," in text:
        return apolarity.quartic([int(c) for c in _split_top(text)], p)
    return apolarity.quartic(text, p)


def _mono_text(e):
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"x{i}")
        elif x:
            parts.append(f"x{i}^{x}")
    return "*".join(parts) or "1"


def _table_from_json(data):
    if "rows" in data:
        return BettiTable.from_rows(data["rows"])
    return BettiTable.from_json(data)


def _load_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


# commands

def cmd_classify(args, out):
    F = parse_form(args.form, args.prime)
    try:
        lab = apolarity.classify(F, seed=args.seed, retries=args.retries)
    except UnsplitScheme:
        B = betti_table(apolarity.apolar_ideal(F))
        data = {"label": "[300]", "triple": [3, 0, 0], "subtype": None,
                "table": B.to_json(), "details": {"subtype": "undetermined over GF(p)"}}
        out.emit(data, "[300] subtype undetermined over GF(p)")
        return 0
    out.emit(lab.to_json(), str(lab) if not args.verbose else f"{lab}\n{lab.table}")
    return 0


def cmd_apolar(args, out):
    F = parse_form(args.form, args.prime)
    I = apolarity.apolar_ideal(F)
    gens = [g.to_text() for g in I.gens]
    B = betti_table(I)
    out.emit({"generators": gens, "betti": B.to_json(), "hilbert": apolarity.hilbert_function(F)},
             "\n".join(gens) + f"\n{B}")
    return 0


def cmd_cat(args, out):
    F = parse_form(args.form, args.prime)
    C = apolarity.catalecticant(F, args.u)
    text = "\n".join(" ".join(str(x) for x in row) for row in C.tolist())
    out.emit(C.to_json(), f"{text}\nrank {C.rank()}")
    return 0


def cmd_betti(args, out):
    I = parse_ideal(args.ideal, args.prime)
    B = betti_table(I)
    out.emit(B.to_json(), str(B))
    return 0


def cmd_gin(args, out):
    if args.points is not None:
        cfg = pointsets.build_config({"n": args.points, "constraints": []}, seed=args.seed,
                                     p=args.prime)
        I = pointsets.points_ideal(cfg)
    elif args.ideal:
        I = parse_ideal(args.ideal, args.prime)
    else:
        raise ParseError("give an ideal or --points N")
    G = strata.gin(I, seed=args.seed)
    gens = [_mono_text(e) for e in G.gens]
    out.emit({"gin": [list(e) for e in G.gens]}, ", ".join(gens))
    return 0


def cmd_stable(args, out):
    ideals = strata.enumerate_strongly_stable(args.d)
    S = _ring(args.prime)
    rows = []
    for J in ideals:
        if args.filter and (strata.has_linear_generator(J) or strata.regularity(J, S) > 2):
            continue
        B = betti_table(J.to_ideal(S))
        rows.append((J, B))
    data = [{"generators": [list(e) for e in J.gens], "betti": B.to_json()} for J, B in rows]
    text = "\n".join(f"({', '.join(_mono_text(e) for e in J.gens)})  {B.compact()}" for J, B in rows)
    out.emit(data, text)
    return 0


def _family(args):
    J = parse_monomial_ideal(args.ideal or J6, args.prime)
    return strata.groebner_family(J, args.prime)


def cmd_family(args, out):
    fam = _family(args)
    text = f"{fam.nparams} parameters\n" + "\n".join(f.to_text() for f in fam.generators)
    out.emit(fam.to_json() | {"nparams": fam.nparams}, text)
    return 0


def cmd_stratum(args, out):
    fam = _family(args)
    L = strata.groebner_stratum(fam)
    data = L.to_json() | {"nparams": fam.nparams}
    out.emit(data, f"{len(L.gb().polys)} Groebner basis elements, dimension {L.dim()}")
    return 0


def cmd_maps(args, out):
    fam = _family(args)
    L = strata.groebner_stratum(fam)
    C, H = strata.schreyer_family_resolution(fam, L)
    data = {"ranks": C.ranks(), "maps": {f"{i},{d}": [[f.to_text() for f in row] for row in H.as_polys((i, d))]
                                         for i, d in H.keys()}}
    lines = [f"ranks {' '.join(map(str, C.ranks()))}"]
    for key in H.keys():
        r, c = H.shape(key)
        lines.append(f"phi{key}: {r}x{c}")
    out.emit(data, "\n".join(lines))
    return 0


def _parse_target(items):
    target = {}
    for item in items:
        try:
            key, r = item.split(":")
            i, d = key.split(",")
            target[(int(i), int(d))] = int(r)
        except ValueError as exc:
            raise ParseError(f"bad target {item!r}; expected i,d:rank") from exc
    return target


def cmd_rank_locus(args, out):
    fam = _family(args)
    L = strata.groebner_stratum(fam)
    _, H = strata.schreyer_family_resolution(fam, L)
    target = _parse_target(args.target or ["2,3:0"])
    I = strata.rank_locus_ideal(L.ideal, H, target)
    d = krull_dim(I)
    out.emit({"target": {f"{i},{dd}": r for (i, dd), r in sorted(target.items())},
              "gb_size": len(I.gb().polys), "dim": d}, f"dimension {d}")
    return 0


def cmd_points_betti(args, out):
    if args.file:
        cfg = pointsets.PointConfig(_load_json(args.file), args.prime)
    elif args.n:
        cfg = pointsets.build_config({"n": args.n, "constraints": args.constraint or []},
                                     seed=args.seed, retries=args.retries, p=args.prime)
    else:
        raise ParseError("give --file or --n")
    B = betti_table(pointsets.points_ideal(cfg))
    out.emit({"points": [list(z) for z in cfg.points], "betti": B.to_json()}, str(B))
    return 0


def cmd_verify(args, out):
    rep = pointsets.verify_point_tables(seed=args.seed, p=args.prime)
    rep = [{k: v for k, v in r.items() if k != "seconds"} for r in rep]
    passed, total = pointsets.table_rows_passed(rep)
    lines = [f"{r['row']:>4} {'pass' if r['pass'] else 'FAIL'}  {r['computed']}" for r in rep]
    lines.append(f"{passed}/{total} rows pass")
    out.emit({"rows": rep, "passed": passed, "total": total}, "\n".join(lines))
    return 0 if passed == total else 1


def cmd_double(args, out):
    B = _table_from_json(_load_json(args.table))
    D = double_betti(B, args.codim, args.ambient, args.gamma)
    if D.flags.get("below_threshold"):
        print("note: gamma is below the no-cancellation threshold", file=sys.stderr)
    out.emit(D.to_json() | {"flags": D.flags}, str(D))
    return 0


# golden session

def golden_session(p=DEFAULT_PRIME, seed=0):
    """The degree-6 session: stable ideals, gin of six points, family, stratum and maps."""
    S = _ring(p)
    res = {}
    ideals = strata.enumerate_strongly_stable(6)
    res["strongly_stable"] = [sorted(_mono_text(e) for e in J.gens) for J in ideals]
    res["betti"] = [betti_table(J.to_ideal(S)).compact() for J in ideals]
    kept = [J for J in ideals if not strata.has_linear_generator(J) and strata.regularity(J, S) <= 2]
    res["filtered"] = [sorted(_mono_text(e) for e in J.gens) for J in kept]
    cfg = pointsets.build_config({"n": 6, "constraints": []}, seed=seed, p=p)
    I = pointsets.points_ideal(cfg)
    res["gin_points"] = sorted(_mono_text(e) for e in strata.gin(I, seed=seed).gens)
    res["betti_points"] = betti_table(I).compact()
    fam = strata.groebner_family(kept[0], p)
    res["nparams"] = fam.nparams
    L = strata.groebner_stratum(fam)
    res["stratum_dim"] = L.dim()
    sres = strata.family_schreyer(fam, L)
    C, H = sres.complex(), sres.nonminimal_maps()
    res["ranks"] = C.ranks()
    res["frame_betti"] = C.betti().compact()
    res["map_shapes"] = {f"{i},{d}": list(H.shape((i, d))) for i, d in H.keys()}
    res["weight_homogeneous"] = strata.resolution_weight_homogeneous(sres, fam)
    m1 = strata.minors_ideal(1, H.as_polys((2, 3)), L.ideal)
    m2 = strata.minors_ideal(2, H.as_polys((3, 4)), L.ideal)
    res["minors_agree"] = ideals_equal(m1, m2)
    res["dim_441"] = krull_dim(strata.rank_locus_ideal(L.ideal, H, {(2, 3): 0}))
    res["dim_430"] = krull_dim(strata.rank_locus_ideal(L.ideal, H, {(2, 3): 1}))
    return res


def run_golden(name, args):
    if name != "d6":
        raise ParseError(f"unknown golden session {name!r}")
    pinned = json.loads(resources.files("quarticstrata").joinpath("golden_d6.json").read_text())
    got = json.loads(json.dumps(golden_session(args.prime, args.seed)))
    diffs = [k for k in sorted(set(pinned) | set(got)) if pinned.get(k) != got.get(k)]
    for k in sorted(got):
        mark = "differs" if k in diffs else "ok"
        print(f"{k}: {mark}")
        if k in diffs:
            print(f"  pinned   {json.dumps(pinned.get(k))}")
            print(f"  computed {json.dumps(got.get(k))}")
    return 1 if diffs else 0


def build_parser():
    def flags(suppress):
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--prime", type=int, **(kw or {"default": DEFAULT_PRIME}))
        p.add_argument("--seed", type=int, **(kw or {"default": 0}))
        p.add_argument("--json", action="store_true", help="machine-readable output", **kw)
        p.add_argument("--retries", type=int, **(kw or {"default": 8}))
        p.add_argument("-v", "--verbose", action="store_true", **kw)
        return p

    common = flags(False)
    local = flags(True)
    ap = argparse.ArgumentParser(prog="quarticstrata", parents=[common],
                                 description="Apolarity and Betti strata of quaternary quartics.")
    ap.add_argument("--golden", metavar="NAME", help="replay a pinned session (d6) and diff")
    sub = ap.add_subparsers(dest="command")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[local], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("classify-quartic", cmd_classify, "Betti stratum of a quartic in y0..y3")
    p.add_argument("form", help="polynomial text or 35 comma-separated coefficients")
    p = add("apolar-ideal", cmd_apolar, "minimal generators of the apolar ideal")
    p.add_argument("form")
    p = add("catalecticant", cmd_cat, "catalecticant matrix Cat(u, 4-u)")
    p.add_argument("form")
    p.add_argument("--u", type=int, default=2, choices=[1, 2, 3])
    p = add("betti", cmd_betti, "graded Betti table of S/I")
    p.add_argument("ideal", help="comma-separated generators in x0..x3")
    p = add("gin", cmd_gin, "generic initial ideal (grevlex)")
    p.add_argument("ideal", nargs="?")
    p.add_argument("--points", type=int, help="use N seeded random points instead")
    p = add("strongly-stable", cmd_stable, "saturated strongly stable ideals with Hilbert polynomial d")
    p.add_argument("d", type=int)
    p.add_argument("--filter", action="store_true", help="no linear generator and reg(S/J) <= 2")
    for name, fn, h in [("groebner-family", cmd_family, "Groebner family of a monomial ideal"),
                        ("stratum", cmd_stratum, "Groebner stratum ideal and its dimension"),
                        ("nonminimal-maps", cmd_maps, "nonminimal maps of the family resolution")]:
        p = add(name, fn, h)
        p.add_argument("ideal", nargs="?", help=f"monomial generators (default {J6})")
    p = add("rank-locus", cmd_rank_locus, "dimension of a rank locus in the stratum")
    p.add_argument("ideal", nargs="?")
    p.add_argument("--target", action="append", help="i,d:rank bound (repeatable); default 2,3:0")
    p = add("points-betti", cmd_points_betti, "Betti table of a point configuration")
    p.add_argument("--file", help="JSON list of points")
    p.add_argument("--n", type=int)
    p.add_argument("--constraint", action="append")
    add("verify-point-tables", cmd_verify, "check every row of the point-set table")
    p = add("double-betti", cmd_double, "Betti table of a doubling")
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--table", required=True, help="JSON file with 'rows' or 'entries'")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.golden:
            return run_golden(args.golden, args)
        if not getattr(args, "fn", None):
            ap.print_usage(sys.stderr)
            return 2
        return args.fn(args, Output(args.json))
    except StrataError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error[input]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

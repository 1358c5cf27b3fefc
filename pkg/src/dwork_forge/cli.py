"""Batch driver CLI.

Subcommands: hg-trace, hg-charpoly, hg-scan, ordinary-scan, breuil-generic,
breuil-oracle, breuil-chain, unitary-normalize, unitary-sym, selftest.
Outputs UTF-8 JSON (or CSV where stated) to --out or stdout; identical
configuration and seed give byte-identical reports. DWORK_FORGE_THREADS caps
the parallel map; it never changes output bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import acceptance
from . import breuil as br
from . import hypergeom as hg
from . import ordinarity as od
from . import unitary as un
from .ff import NotPrime, extension_of, field_make
from .lambda_adic import lambda_prime
from .unitary import gu_fields
from .util import parallel_map, stable_json

SCHEMA_VERSION = 1


class ConfigInvalid(ValueError):
    pass


def _prime_power(q):
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    f = 0
    while q > 1:
        if q % p:
            raise ConfigInvalid(f"q = {q} is not a prime power")
        q //= p
        f += 1
    return p, f


def _field_for(q):
    p, f = _prime_power(q)
    return field_make(p, f)


def _params_from(args):
    if args.R:
        R = tuple(int(r) for r in args.R.split(","))
        return hg.hg_params(args.N, args.n, R)
    return hg.select_chi(args.N, args.n)


def _validate_hg(args, q):
    if (q - 1) % args.N != 0:
        raise ConfigInvalid(f"N = {args.N} must divide q - 1 = {q - 1}")


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_hg_trace(args):
    params = _params_from(args)
    _validate_hg(args, args.q)
    k = _field_for(args.q)
    x = k.from_encoding(args.x)
    t = hg.trace_naive(params, k, x)
    payload = {"schema_version": SCHEMA_VERSION, "N": params.N, "n": params.n,
               "R": list(params.rho_exponents), "q": args.q, "x_dlog": k.dlog(x),
               "trace": list(t.coeffs)}
    _emit(args, stable_json(payload))
    return 0


def cmd_hg_charpoly(args):
    params = _params_from(args)
    _validate_hg(args, args.q)
    k = _field_for(args.q)
    x = k.from_encoding(args.x)
    rec = hg.char_poly(params, k, x)
    if args.l:
        lam = lambda_prime(params.N, args.l, args.tau)
        hg.newton_polygon(rec, lam)
    hg.verify_det(rec)
    hg.verify_purity(rec)
    _emit(args, stable_json(rec.to_json_dict()))
    return 0


def cmd_hg_scan(args):
    params = _params_from(args)
    _validate_hg(args, args.q)
    k = _field_for(args.q)
    lam = lambda_prime(params.N, args.l, args.tau) if args.l else None
    points = sorted(hg.trace_all_fast(params, k), key=lambda e: e.k)

    def work(x):
        rec = hg.char_poly(params, k, x)
        if lam is not None:
            hg.newton_polygon(rec, lam)
        det = hg.verify_det(rec)
        pure = hg.verify_purity(rec)
        return rec, det, pure

    rows = parallel_map(work, points)
    records = [rec.to_json_dict() for rec, _, _ in rows]
    all_ok = all((d.passed and p) for _, d, p in rows)
    payload = {"schema_version": SCHEMA_VERSION, "config": {
        "N": params.N, "n": params.n, "R": list(params.rho_exponents),
        "q": args.q, "l": args.l, "tau": args.tau,
        "sum_zero": params.sum_zero,
        "trivial_stabilizer": params.trivial_stabilizer},
        "points": records,
        "summary": {"det_purity_all_pass": all_ok, "count": len(records)}}
    _emit(args, stable_json(payload))
    return 0 if all_ok else 1


def cmd_ordinary_scan(args):
    params = _params_from(args)
    test = od.build_ordinary_test(params, args.l, args.tau)
    K = extension_of(test.field_v, args.d)
    rows = od.verify_norm_identity(test, args.d)
    polygons = {}
    if K.q ** params.n <= (1 << 20):
        for x in sorted(hg.trace_all_fast(params, K), key=lambda e: e.k):
            rec = hg.char_poly(params, K, x)
            hg.newton_polygon(rec, test.lam)
            od.unit_root_check(test, rec)
            polygons[K.dlog(x)] = rec.slopes
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["x_dlog", "u_x", "trace_mod_lambda", "norm_u",
                "identity_ok", "min_slope", "slopes"])
    all_ok = True
    for r in rows:
        sl = polygons.get(r.x_dlog)
        w.writerow([
            r.x_dlog,
            "nonzero" if r.u_nonzero else "0",
            r.trace_red.encoding,
            r.norm_u.encoding,
            int(r.ok),
            str(min(sl)) if sl else "NA",
            " ".join(str(s) for s in sl) if sl else "NA",
        ])
        all_ok &= r.ok
    _emit(args, buf.getvalue())
    return 0 if all_ok else 1


def _frame_report(p, e, f, s, t, F):
    one = F.one()
    n, r = br.slope_data(s, t, e, p, f)
    entry = {"p": p, "e": e, "f": f, "s": list(s), "t": list(t),
             "n": [f"{x.numerator}/{x.denominator}" for x in n],
             "r": list(r), "obstruction": None, "solver": None}
    if sum(s[j] - t[j] - e for j in range(f)) < 0:
        i, x = br.genericity_obstruction(s, t, e, p, f)
        entry["obstruction"] = {"i": i, "x": x}
        top = br.make_rank_one(p, f, e, s, one)
        bot = br.make_rank_one(p, f, e, t, one)
        wit = br.change_of_variables_solver({(i, x): one}, top, bot)
        prob = br.make_ext_problem(top, bot)
        forb = br.breuil_forbidden_degrees(prob)
        in_window_ok = True
        for j in range(f):
            for l in (l for l in range(s[j]) if l not in forb[j]):
                nf = br.normal_form_in_windows({(j, l): one}, top, bot)
                ok = nf != br.INFEASIBLE and \
                    br.change_of_variables_solver(nf, top, bot) != br.INFEASIBLE
                in_window_ok &= ok
        entry["solver"] = {
            "witness": "infeasible" if wit == br.INFEASIBLE else "feasible",
            "in_window": "feasible" if in_window_ok else "infeasible"}
    return entry


def cmd_breuil_generic(args):
    p, e, f = args.p, args.e, args.f
    F = field_make(p, f)
    hi = e * (p - 2)
    from itertools import product as iproduct
    if args.s or args.t:
        if not (args.s and args.t):
            raise ConfigInvalid("give both --s and --t or neither")
        s = tuple(int(v) for v in args.s.split(","))
        t = tuple(int(v) for v in args.t.split(","))
        tuples = [(s, t)]
    else:
        tuples = [(s, t) for s in iproduct(range(hi + 1), repeat=f)
                  for t in iproduct(range(hi + 1), repeat=f)]
    entries = [_frame_report(p, e, f, s, t, F) for s, t in tuples]
    payload = {"schema_version": SCHEMA_VERSION, "frames": entries}
    _emit(args, stable_json(payload))
    return 0


def cmd_breuil_oracle(args):
    p, e, f = args.p, args.e, args.f
    F = field_make(p, f)
    one = F.one()
    s = tuple(int(v) for v in args.s.split(","))
    t = tuple(int(v) for v in args.t.split(","))
    top = br.make_rank_one(p, f, e, s, one)
    bot = br.make_rank_one(p, f, e, t, one)
    y = {}
    if args.y:
        for part in args.y.split(","):
            spec_jl, c = part.split(":")
            if "." in spec_jl:
                j, l = (int(v) for v in spec_jl.split("."))
            else:
                j, l = 0, int(spec_jl)
            y[(j, l)] = F.from_int(int(c))
    prob = br.make_ext_problem(top, bot, y=y)
    forb = br.breuil_forbidden_degrees(prob)
    mono = br.solve_monodromy(prob)
    windows, dim, _ = br.etale_image_windows(s, t, e, p, f)
    payload = {"schema_version": SCHEMA_VERSION, "p": p, "e": e, "f": f,
               "s": list(s), "t": list(t), "d_unit": "1",
               "forbidden_degrees": [sorted(fs) for fs in forb],
               "monodromy": "infeasible" if mono == br.INFEASIBLE else "feasible",
               "image_windows": [[w.start, w.stop - 1] for w in windows],
               "image_dimension": dim}
    _emit(args, stable_json(payload))
    return 0


def cmd_breuil_chain(args):
    from itertools import product as iproduct
    d, e, f = args.d, args.e, args.f
    hmax = e * (d - 1)
    levels = list(iproduct(range(hmax + 1), repeat=f))
    count = 0

    def extend(chain, total):
        nonlocal count
        if len(chain) == d:
            br.chain_slope_check(chain, e)
            count += 1
            return
        for lv in levels:
            if sum(lv) >= total + e * f:
                extend(chain + (lv,), sum(lv))

    if d == 1:
        count = len(levels)
    else:
        for lv in levels:
            extend((lv,), sum(lv))
    payload = {"schema_version": SCHEMA_VERSION, "d": d, "e": e, "f": f,
               "chains_checked": count, "forced": True}
    _emit(args, stable_json(payload))
    return 0


def _matrix_from_json(data, Fq2, p):
    def elem(pair):
        if isinstance(pair, int):
            pair = [pair, 0]
        a, b = pair
        return Fq2.from_encoding((a % p) + (b % p) * p)
    return [[elem(v) for v in row] for row in data]


def _matrix_to_json(M, p):
    out = []
    for row in M:
        out.append([[e.encoding % p, e.encoding // p] for e in row])
    return out


def cmd_unitary_normalize(args):
    p, f = _prime_power(args.q)
    if f != 1:
        raise ConfigInvalid("unitary-normalize supports prime q")
    Fq, Fq2 = gu_fields(args.q)
    data = json.loads(args.matrix)
    A = _matrix_from_json(data, Fq2, p)
    space = un.hermitian_space(args.q, A)
    C = un.diagonalize_to_identity(space)
    from .linalg import mat_identity, mat_mul
    cert = mat_mul(un.adjoint(C, args.q), mat_mul(A, C)) == mat_identity(Fq2, len(A))
    payload = {"schema_version": SCHEMA_VERSION, "q": args.q,
               "C": _matrix_to_json(C, p), "certificate": bool(cert)}
    _emit(args, stable_json(payload))
    return 0 if cert else 1


def cmd_unitary_sym(args):
    B, eigs, alpha = un.sym_power_embed(args.beta, args.n, args.m, args.p)
    payload = {"schema_version": SCHEMA_VERSION, "p": args.p, "beta": args.beta,
               "n": args.n, "m": args.m,
               "matrix": _matrix_to_json(B, args.p),
               "spectrum_dlogs": sorted(e.k for e in eigs),
               "alpha_dlog": alpha.k}
    _emit(args, stable_json(payload))
    return 0


def cmd_selftest(args):
    report, timings, ok = acceptance.selftest(seed=args.seed)
    for c in report["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        t = timings.get(c["id"])
        suffix = f" ({t:.1f}s)" if t is not None else ""
        print(f"{status} criterion {c['id']}: {c['name']}{suffix}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(stable_json(report))
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dwork-forge",
        description="Exact Frobenius/Breuil/unitary verification suite")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def hgopts(sp, point=False):
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--R", type=str, default="",
                        help="comma-separated exponents; default select_chi")
        sp.add_argument("--q", type=int, required=True)
        if point:
            sp.add_argument("--x", type=int, required=True,
                            help="integer encoding of the point")
        sp.add_argument("--l", type=int, default=0,
                        help="prime for lambda-adic slopes (optional)")
        sp.add_argument("--tau", type=int, default=1)
        sp.add_argument("--out", type=str, default="")

    sp = sub.add_parser("hg-trace", help="one Frobenius trace")
    hgopts(sp, point=True)
    sp.set_defaults(fn=cmd_hg_trace)

    sp = sub.add_parser("hg-charpoly", help="characteristic polynomial at x")
    hgopts(sp, point=True)
    sp.set_defaults(fn=cmd_hg_charpoly)

    sp = sub.add_parser("hg-scan", help="full point scan with det/purity checks")
    hgopts(sp)
    sp.set_defaults(fn=cmd_hg_scan)

    sp = sub.add_parser("ordinary-scan", help="norm identity / unit-root CSV")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--R", type=str, default="")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--tau", type=int, default=1)
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_ordinary_scan)

    sp = sub.add_parser("breuil-generic", help="frame sweep with obstructions")
    for flag in ("--p", "--e", "--f"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--s", type=str, default="")
    sp.add_argument("--t", type=str, default="")
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_breuil_generic)

    sp = sub.add_parser("breuil-oracle", help="monodromy/window oracle for one tuple")
    for flag in ("--p", "--e", "--f"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--s", type=str, required=True)
    sp.add_argument("--t", type=str, required=True)
    sp.add_argument("--y", type=str, default="",
                    help="terms j.deg:coeff (or deg:coeff for f=1), comma-separated")
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_breuil_oracle)

    sp = sub.add_parser("breuil-chain", help="chain slope forcing sweep")
    for flag in ("--d", "--e", "--f"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_breuil_chain)

    sp = sub.add_parser("unitary-normalize", help="Gram matrix -> identity form")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--matrix", type=str, required=True,
                    help="JSON rows of [a,b] pairs meaning a + b*xbar in F_{q^2}")
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_unitary_normalize)

    sp = sub.add_parser("unitary-sym", help="symmetric-power embedding into SU_m")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--beta", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_unitary_sym)

    sp = sub.add_parser("selftest", help="run every acceptance criterion")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", type=str, default="")
    sp.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigInvalid, NotPrime, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

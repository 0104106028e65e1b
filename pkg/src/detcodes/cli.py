"""Batch command line for constructing the codes, tabulating spectra and
higher-weight hierarchies, counting, extremal rank-1 searches, and
running the closed-form-vs-brute-force verification battery.

Counts are serialized as decimal strings in JSON so arbitrary precision
survives any consumer.  Exit codes: 0 ok, 1 verification failure,
2 parameter error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import counting, detcode, formulas, matq, rank1
from .errors import BudgetExceeded, DetcodeError
from .gf import parse_q

BRUTE_GHW_COST_CAP = 2_000_000  # subspaces x span size before brute is skipped


def _emit(args, payload: dict, table_lines: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2)
    else:
        text = "\n".join(table_lines)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _spectrum_payload(field, l, m, t, mode, rep: detcode.SpectrumReport) -> dict:
    return {
        "q": field.q,
        "l": l,
        "m": m,
        "t": t,
        "mode": mode,
        "length": len(detcode.make_domain(field, l, m, t, mode)),
        "dimension": l * m,
        "spectrum": [{"w": w, "count": str(c)} for w, c in rep.pairs],
    }


def cmd_spectrum(args) -> int:
    field = parse_q(args.q)
    l, m, t, mode = args.l, args.m, args.t, args.mode
    reports = {}
    if args.path in ("closed", "both"):
        reports["closed"] = formulas.closed_weight_enumerator(t, l, m, field.q, mode)
    if args.path in ("brute", "both"):
        reports["brute"] = detcode.brute_weight_enumerator(field, l, m, t, mode)
    rep = reports.get("closed") or reports["brute"]
    lines = [f"# spectrum q={field.q} l={l} m={m} t={t} mode={mode}"]
    for name, r in reports.items():
        lines.append(f"[{name}] " + "  ".join(f"{w}:{c}" for w, c in r.pairs))
    payload = _spectrum_payload(field, l, m, t, mode, rep)
    payload["paths"] = sorted(reports)
    if len(reports) == 2:
        match = reports["closed"].pairs == reports["brute"].pairs
        lines.append("MATCH" if match else "MISMATCH")
        payload["match"] = match
        if not match:
            _emit(args, payload, lines)
            return 1
    _emit(args, payload, lines)
    return 0


def _parse_r_range(text: str, rmax: int) -> list[int]:
    if text is None:
        return list(range(1, rmax + 1))
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _brute_ghw_feasible(field, l, m, r) -> bool:
    try:
        nsub = counting.gaussian_binomial(l * m, r, field.q)
    except OverflowError:  # pragma: no cover
        return False
    return nsub * field.q**r <= BRUTE_GHW_COST_CAP


def cmd_ghw(args) -> int:
    field = parse_q(args.q)
    l, m, t, mode = args.l, args.m, args.t, args.mode
    if t != 1:
        print("closed-form higher weights are only available for t=1", file=sys.stderr)
        return 2
    rows = []
    lines = [f"# ghw q={field.q} l={l} m={m} t={t} mode={mode}",
             f"{'r':>3} {'kind':>6} {'value':>16} {'source':<32} brute"]
    failed = False
    for r in _parse_r_range(args.r, l * m):
        res = formulas.ghw_t1(l, m, r, field.q)
        scale = 1 if mode == "projective" else field.q - 1
        brute_val = None
        if not args.no_brute and _brute_ghw_feasible(field, l, m, r):
            brute_val = detcode.brute_ghw(field, l, m, t, mode, r)
        row = {"r": r, "kind": res.kind, "source": ",".join(res.sources)}
        if res.kind == "exact":
            row["value"] = str(res.value * scale)
            shown = row["value"]
        else:
            row["lower"] = str(res.lower * scale)
            row["upper"] = str(res.upper * scale)
            shown = f"[{row['lower']}, {row['upper']}]"
        confirmed = None
        if brute_val is not None:
            confirmed = (
                brute_val == res.value * scale
                if res.kind == "exact"
                else res.lower * scale <= brute_val <= res.upper * scale
            )
            failed = failed or not confirmed
        row["brute_confirmed"] = confirmed
        rows.append(row)
        mark = {None: "-", True: "yes", False: "NO"}[confirmed]
        lines.append(f"{r:>3} {res.kind:>6} {shown:>16} {row['source']:<32} {mark}")
    payload = {
        "q": field.q, "l": l, "m": m, "t": t, "mode": mode,
        "length": counting.lengths(l, m, t, field.q)[0 if mode == "affine" else 1],
        "dimension": l * m,
        "ghw": rows,
    }
    _emit(args, payload, lines)
    return 1 if failed else 0


def cmd_count(args) -> int:
    field = parse_q(args.q)
    l, m, t = args.l, args.m, args.t
    n, n_hat = counting.lengths(l, m, t, field.q)
    mus = {r: counting.mu(l, m, r, field.q) for r in range(l + 1)}
    lines = [
        f"# count q={field.q} l={l} m={m} t={t}",
        f"n_hat = {n_hat}",
        f"n     = {n}",
        f"k     = {l * m}",
    ] + [f"mu_{r} = {v}" for r, v in mus.items()]
    payload = {
        "q": field.q, "l": l, "m": m, "t": t,
        "length_affine": str(n), "length_projective": str(n_hat),
        "dimension": l * m,
        "mu": {str(r): str(v) for r, v in mus.items()},
    }
    _emit(args, payload, lines)
    return 0


def cmd_genmat(args) -> int:
    field = parse_q(args.q)
    dom = detcode.make_domain(field, args.l, args.m, args.t, args.mode)
    text = detcode.export_generator(dom)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_rank1max(args) -> int:
    field = parse_q(args.q)
    l, m, r = args.l, args.m, args.r
    best, witness = rank1.max_rank1_exhaustive(field, l, m, r)
    bound = counting.rank1_bound(r, l, m, field.q)
    lines = [
        f"# rank1max q={field.q} l={l} m={m} r={r}",
        f"max rank-1 count = {best}",
        f"bound            = {bound.max_rank1}"
        + (" (coset bound)" if bound.from_coset_argument else " (q^r - 1)"),
        "witness basis (rows, flattened forms):",
        matq.format_matrix(witness),
    ]
    payload = {
        "q": field.q, "l": l, "m": m, "r": r,
        "max_rank1": str(best),
        "bound": str(bound.max_rank1),
        "bound_is_coset_argument": bound.from_coset_argument,
        "witness": [[int(x) for x in row] for row in witness],
    }
    _emit(args, payload, lines)
    return 0


# -- the verification battery --


def _verify_checks(field, l, m, t):
    q = field.q

    def check(name, ok, detail=""):
        return {"name": name, "ok": bool(ok), "detail": detail}

    out = []
    n, n_hat = counting.lengths(l, m, t, q)
    out.append(check("length-transfer n = 1 + n_hat(q-1)", n == 1 + n_hat * (q - 1)))
    out.append(
        check("rank-class counts sum to q^(l*m)",
              sum(counting.mu(l, m, r, q) for r in range(l + 1)) == q ** (l * m))
    )
    out.append(
        check("rank-class count transposition symmetry",
              all(counting.mu(l, m, r, q) == counting.mu(m, l, r, q) for r in range(l + 1)))
    )

    spectra = {}
    for mode in ("projective", "affine"):
        closed = formulas.closed_weight_enumerator(t, l, m, q, mode)
        brute = detcode.brute_weight_enumerator(field, l, m, t, mode)
        spectra[mode] = brute
        out.append(check(f"closed vs brute spectrum ({mode})", closed.pairs == brute.pairs,
                         f"closed={dict(closed.pairs)} brute={dict(brute.pairs)}"))
        if q ** (l * m) * (len(detcode.make_domain(field, l, m, t, mode))) <= detcode.NAIVE_COST_BUDGET:
            naive = detcode.naive_weight_enumerator(field, l, m, t, mode)
            out.append(check(f"rank-grouped vs naive enumerator ({mode})",
                             naive.pairs == brute.pairs))

    aff, proj = spectra["affine"].as_dict(), spectra["projective"].as_dict()
    ok_transfer = all(aff.get(i * (q - 1), 0) == c for i, c in proj.items()) and all(
        j % (q - 1) == 0 for j in aff if j
    )
    out.append(check("spectrum transfer A_{i(q-1)} = A_hat_i", ok_transfer))

    # alternating-sum count vs direct enumeration, all rank classes
    mats, ranks = matq._space_ranks(field, l, m)
    add_t = field.tables.add
    ok_dels = True
    for r in range(l + 1):
        acc = np.zeros(len(mats), dtype=np.int64)
        for i in range(r):
            acc = add_t[acc, mats[:, i, i]]
        for tt in range(l + 1):
            direct = int(np.count_nonzero((ranks == tt) & (acc != 0)))
            if formulas.delsarte_N(tt, r, l, m, q) != direct:
                ok_dels = False
    out.append(check("alternating-sum rank counts vs enumeration", ok_dels))

    gen = detcode.generator_matrix(detcode.make_domain(field, l, m, t, "projective"))
    out.append(check("generator rank = l*m and no zero column",
                     matq.rank(field, gen) == l * m and bool(gen.any(axis=0).all())))

    if t == 1:
        ok_ghw = True
        details = []
        for r in range(1, l * m + 1):
            res = formulas.ghw_t1(l, m, r, q)
            if not _brute_ghw_feasible(field, l, m, r):
                continue
            bp = detcode.brute_ghw(field, l, m, 1, "projective", r)
            ba = detcode.brute_ghw(field, l, m, 1, "affine", r)
            if not res.contains(bp) or ba != (q - 1) * bp:
                ok_ghw = False
                details.append(f"r={r}: closed={res} brute={bp} affine={ba}")
        out.append(check("higher weights: closed/bounds vs brute, affine transfer",
                         ok_ghw, "; ".join(details)))

        dom = detcode.make_domain(field, l, m, 1, "projective")
        ok_wit = True
        for r in range(1, l + m):
            sw = detcode.support_weight(dom, formulas.witness_subcode(l, m, r, q))
            res = formulas.ghw_t1(l, m, r, q)
            if res.kind == "exact":
                ok_wit &= sw == res.value
            else:
                ok_wit &= sw == res.upper or sw >= res.lower
        out.append(check("witness subcodes attain the known values", ok_wit))

    for r in range(m + 1, l * m + 1):
        if counting.gaussian_binomial(l * m, r, q) * q**r > BRUTE_GHW_COST_CAP:
            continue
        best, _ = rank1.max_rank1_exhaustive(field, l, m, r)
        bound = counting.rank1_bound(r, l, m, q)
        out.append(check(f"rank-1 extremal count within bound (r={r})",
                         best <= bound.max_rank1
                         and q**r - 1 - best >= bound.rank2_floor,
                         f"max={best} bound={bound.max_rank1}"))
    return out


def cmd_verify(args) -> int:
    field = parse_q(args.q)
    checks = _verify_checks(field, args.l, args.m, args.t)
    lines = [f"# verify q={field.q} l={args.l} m={args.m} t={args.t}"]
    for c in checks:
        status = "PASS" if c["ok"] else "FAIL"
        lines.append(f"{status}  {c['name']}" + (f"  ({c['detail']})" if c["detail"] and not c["ok"] else ""))
    ok = all(c["ok"] for c in checks)
    lines.append(f"{'OK' if ok else 'FAILED'}: {sum(c['ok'] for c in checks)}/{len(checks)} checks passed")
    payload = {"q": field.q, "l": args.l, "m": args.m, "t": args.t, "checks": checks}
    _emit(args, payload, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="detcodes",
        description="Determinantal codes over GF(q): spectra, higher weights, verification.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_t=True, mode=True):
        p.add_argument("--q", required=True, help="field size: p, p^e, or a prime power literal")
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        if need_t:
            p.add_argument("--t", type=int, required=True)
        if mode:
            p.add_argument("--mode", choices=("affine", "projective"), default="projective")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=None, help="cap kernel worker threads")

    p = sub.add_parser("spectrum", help="weight enumerator")
    common(p)
    p.add_argument("--path", choices=("closed", "brute", "both"), default="both")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("ghw", help="generalized Hamming weight table")
    common(p)
    p.add_argument("--r", default=None, help="single r or an inclusive range like 1..6")
    p.add_argument("--no-brute", action="store_true", help="skip brute-force confirmation")
    p.set_defaults(func=cmd_ghw)

    p = sub.add_parser("count", help="lengths, dimension, and rank-class counts")
    common(p, mode=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("genmat", help="export the generator matrix")
    common(p)
    p.set_defaults(func=cmd_genmat)

    p = sub.add_parser("rank1max", help="exhaustive extremal rank-1 search")
    common(p, need_t=False)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_rank1max)

    p = sub.add_parser("verify", help="run the closed-form-vs-brute cross-check battery")
    common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def dispatch(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads:
        try:
            import numba

            numba.set_num_threads(max(1, args.threads))
        except ImportError:
            pass
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except DetcodeError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

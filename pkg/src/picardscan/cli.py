"""Command-line surface: one subcommand per library operation.

Row streams (scans, witness tables) print JSON Lines by default and CSV
with --format csv; scalar results print bare. Floating-point fields are
rendered with fixed 12-digit precision so outputs diff reproducibly.
Exit codes: 0 success, 1 validation or computation failure, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .arith import primes_in_range
from .characters import density_report, jump_character, sato_tate_stats
from .curves import BadReduction, BudgetExceeded, count_points, point_counts, reduce_curve
from .decomp import (
    cyclotomic_splitting,
    congruence_witnesses,
    deuring_supersingular,
    genus_cap,
    hw_status,
    period,
)
from .mwrank import (
    FiberData,
    shioda_tate_mw,
    ulmer_exact_rank,
    ulmer_lower_bound,
    ulmer_simplified_rank,
)
from .picard import cyclo_multiplicities, h2_char_poly, jump_scan, picard_number
from .store import (
    CachedCounter,
    Config,
    CountCache,
    build_scan_records,
    load_curve,
    load_endomorphism,
    records_to_csv,
    records_to_jsonl,
    resolve_cache_path,
)
from .zeta import InconsistentCounts, weil_polynomial


def _f12(x: float) -> str:
    return f"{x:.12f}"


def _parse_primes(spec: str) -> tuple[int, int]:
    try:
        lo, hi = spec.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ValueError(f"prime range must look like 3..200, got {spec!r}")
    if lo > hi:
        raise ValueError(f"empty prime range {spec!r}")
    return lo, hi


def _load_config(args) -> Config:
    cfg = Config.from_file(args.config) if getattr(args, "config", None) else Config()
    return cfg.override(
        budget=getattr(args, "budget", None),
        jobs=getattr(args, "jobs", None),
        fmt=getattr(args, "format", None),
    )


def _counter_for(args, cfg, model):
    path = resolve_cache_path(getattr(args, "cache", None), cfg)
    if not path:
        return None, None
    cache = CountCache(path)
    return cache, CachedCounter(cache, model, budget=cfg.budget)


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit_rows(rows: list[dict], fmt: str, out_path: str | None) -> None:
    if not rows:
        _emit("", out_path)
        return
    if fmt == "csv":
        _emit(_rows_to_csv(rows), out_path)
    else:
        _emit("\n".join(json.dumps(r, sort_keys=True) for r in rows), out_path)


def _weil_for(model, p, cfg, counter):
    curve = reduce_curve(model, p)
    counts = point_counts(curve, model.genus, budget=cfg.budget, counter=counter)
    return curve, weil_polynomial(counts, model.genus)


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_count(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    curve = reduce_curve(model, args.p)
    get = counter if counter else (lambda c, k: count_points(c, k, budget=cfg.budget))
    print(get(curve, args.k))
    return 0


def cmd_weil(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    _, w = _weil_for(model, args.p, cfg, counter)
    print(json.dumps({"q": w.q, "g": w.g, "coeffs": list(w.coeffs)}, sort_keys=True))
    return 0


def cmd_picard(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    curve, w = _weil_for(model, args.p, cfg, counter)
    h = h2_char_poly(w)
    if args.m is not None:
        print(picard_number(h, args.m))
        return 0
    mults = dict(cyclo_multiplicities(h))
    out = {
        "p": args.p,
        "q": curve.p,
        "genus": model.genus,
        "picard_fq": picard_number(h, 1),
        "picard_geom": picard_number(h, 0),
        "cyclo_multiplicities": {str(n): c for n, c in sorted(mults.items())},
    }
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_jump_scan(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    endo = load_endomorphism(args.endo)
    lo, hi = _parse_primes(args.primes)
    cache, counter = _counter_for(args, cfg, model)
    try:
        outcome = jump_scan(
            model, endo, primes_in_range(lo, hi),
            budget=cfg.budget, jobs=cfg.jobs, counter=counter,
        )
        records = build_scan_records(model, endo, outcome, budget=cfg.budget, counter=counter)
    finally:
        if cache:
            cache.close()
    if cfg.fmt == "csv":
        _emit(records_to_csv(records), args.out)
        for p, reason in outcome.skipped:
            print(f"skipped p={p}: {reason}", file=sys.stderr)
    else:
        rows = [r.to_dict() for r in records]
        rows += [{"p": p, "skipped": reason} for p, reason in outcome.skipped]
        rows.sort(key=lambda r: r["p"])
        _emit("\n".join(json.dumps(r, sort_keys=True) for r in rows), args.out)
    if args.figure:
        from .plots import render_jump_scan

        render_jump_scan(outcome.reports, 2 + endo.rank, args.figure, title=model.label)
    return 0


def cmd_density(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    endo = load_endomorphism(args.endo)
    lo, hi = _parse_primes(args.primes)
    cache, counter = _counter_for(args, cfg, model)
    try:
        outcome = jump_scan(
            model, endo, primes_in_range(lo, hi),
            budget=cfg.budget, jobs=cfg.jobs, counter=counter,
        )
    finally:
        if cache:
            cache.close()
    rep = density_report(outcome.reports, endo)
    emp = rep.empirical_density
    row = {
        "total_good_primes": rep.total_good_primes,
        "jumped_count": rep.jumped_count,
        "empirical_density": str(emp) if emp is not None else None,
        "empirical_density_decimal": _f12(float(emp)) if emp is not None else None,
        "predicted_density": str(rep.predicted_density) if rep.predicted_density else
            "no lower bound from character",
        "character_mismatches": list(rep.character_mismatches),
        "insufficient_data": rep.insufficient_data,
        "skipped_primes": len(outcome.skipped),
    }
    if cfg.fmt == "csv":
        flat = dict(row)
        flat["character_mismatches"] = "|".join(str(p) for p in rep.character_mismatches)
        _emit(_rows_to_csv([flat]), getattr(args, "out", None))
    else:
        _emit(json.dumps(row, sort_keys=True), getattr(args, "out", None))
    if args.figure:
        from .plots import render_density

        render_density(outcome.reports, rep.predicted_density, args.figure, title=model.label)
    return 0


def cmd_character(args) -> int:
    endo = load_endomorphism(args.endo)
    value = jump_character(endo, args.p)
    if args.check:
        out = {
            "p": args.p,
            "character": value,
            "disc_label": endo.disc_label,
            "action_sign": endo.action_sign(),
            "label_consistent": endo.label_consistent(),
        }
        print(json.dumps(out, sort_keys=True))
    else:
        print(value)
    return 0


def cmd_ss_scan(args) -> int:
    cfg = _load_config(args)
    lo, hi = _parse_primes(args.primes)
    rows = []
    for p in primes_in_range(max(lo, 3), hi):
        if args.disc % p == 0 and p != 2:
            rows.append({"p": p, "supersingular": True, "ramified": True})
        else:
            rows.append({"p": p, "supersingular": deuring_supersingular(args.disc, p), "ramified": False})
    _emit_rows(rows, cfg.fmt, getattr(args, "out", None))
    return 0


def cmd_hw_status(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    _, w = _weil_for(model, args.p, cfg, counter)
    st = hw_status(w, args.m)
    print(json.dumps(
        {"p": args.p, "m": args.m, "status": st.kind.value, "count": st.count,
         "upper": st.upper, "lower": st.lower},
        sort_keys=True,
    ))
    return 0


def cmd_period(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    _, w = _weil_for(model, args.p, cfg, counter)
    cutoff = args.cutoff if args.cutoff is not None else cfg.period_cutoff
    m = period(w, cutoff)
    print(m if m is not None else f"none <= {cutoff}")
    return 0


def cmd_genus_cap(args) -> int:
    gc = genus_cap(args.q)
    print(json.dumps(
        {"q": gc.q, "cap": gc.cap, "per_m": {str(m): c for m, c in gc.per_m}},
        sort_keys=True,
    ))
    return 0


def cmd_split(args) -> int:
    sp = cyclotomic_splitting(args.p, args.k)
    print(json.dumps(
        {"p": sp.p, "modulus": sp.modulus, "e": sp.e, "f": sp.f, "g": sp.g,
         "splits_completely": sp.splits_completely},
        sort_keys=True,
    ))
    return 0


def cmd_witnesses(args) -> int:
    cfg = _load_config(args)
    rep = congruence_witnesses(args.genus, args.bound)
    rows = [
        {"p": r.p, "hw_congruence": r.hw_congruence,
         "supersingular_class": r.supersingular_class, "ordinary_class": r.ordinary_class}
        for r in rep.rows
    ]
    _emit_rows(rows, cfg.fmt, getattr(args, "out", None))
    print(
        f"genus {rep.genus}, bound {rep.bound}: {rep.hw_count} primes = -1 mod {4 * rep.genus}, "
        f"{rep.supersingular_count} = 3 mod 4, {rep.ordinary_count} = 1 mod 4",
        file=sys.stderr,
    )
    return 0


def cmd_st_stats(args) -> int:
    cfg = _load_config(args)
    model = load_curve(args.curve)
    _, counter = _counter_for(args, cfg, model)
    rep = sato_tate_stats(model, args.bound, buckets=args.buckets, budget=cfg.budget, counter=counter)
    if cfg.fmt == "csv":
        rows = [
            {"bucket_lo": _f12(lo), "bucket_hi": _f12(hi), "count": c}
            for lo, hi, c in rep.histogram
        ]
        _emit_rows(rows, "csv", getattr(args, "out", None))
        return 0
    out = {
        "label": rep.label,
        "genus": rep.genus,
        "bound": rep.bound,
        "n_primes": rep.n_primes,
        "mean": _f12(rep.mean),
        "second_moment": _f12(rep.second_moment),
        "fourth_moment": _f12(rep.fourth_moment),
        "zero_fraction": str(rep.zero_fraction),
        "reference_mean": _f12(rep.reference_mean),
        "reference_second_moment": _f12(rep.reference_second_moment),
        "non_generic": rep.non_generic,
        "histogram": [[_f12(lo), _f12(hi), c] for lo, hi, c in rep.histogram],
        "skipped_primes": len(rep.skipped),
    }
    _emit(json.dumps(out, sort_keys=True), getattr(args, "out", None))
    if args.figure:
        from .plots import render_trace_histogram

        render_trace_histogram(rep, args.figure)
    return 0


def cmd_mw_shioda(args) -> int:
    comps = [int(c) for c in args.fibers.split(",") if c] if args.fibers else []
    print(shioda_tate_mw(args.rk_ns, FiberData.from_components(comps)))
    return 0


def cmd_mw_simplified(args) -> int:
    print(ulmer_simplified_rank(args.hom, args.c1, args.c2))
    return 0


def cmd_mw_ulmer(args) -> int:
    bound = ulmer_lower_bound(args.p, args.n, args.q)
    if getattr(args, "format", None) == "json":
        print(json.dumps(
            {"p": bound.p, "n": bound.n, "q": bound.q, "d": bound.d,
             "total": str(bound.total), "floor_bound": str(bound.floor_bound),
             "terms": [{"e": e, "phi": phi, "order": o} for e, phi, o in bound.terms]},
            sort_keys=True,
        ))
    else:
        print(bound.total)
    return 0


def cmd_mw_ulmer_exact(args) -> int:
    res = ulmer_exact_rank(args.p, args.n, args.q, char_zero=args.char_zero)
    if res.rank is not None:
        print(res.rank)
    else:
        print(f"hypothesis not met (q != 1 mod {res.d}); lower bound {res.lower_bound}")
    return 0


def cmd_mw_ulmer_table(args) -> int:
    cfg = _load_config(args)
    rows = []
    for p in (int(t) for t in args.p.split(",")):
        for n in (int(t) for t in args.n.split(",")):
            for r in range(1, args.q_powers + 1):
                q = p**r
                b = ulmer_lower_bound(p, n, q)
                exact = ulmer_exact_rank(p, n, q)
                rows.append({
                    "p": p, "n": n, "q": q, "d": b.d,
                    "total": str(b.total), "floor_bound": str(b.floor_bound),
                    "exact_rank": exact.rank,
                })
    _emit_rows(rows, cfg.fmt, getattr(args, "out", None))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--cache", help=f"point-count cache path (or ${'{'}PICARDSCAN_CACHE{'}'})")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for scans")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="row output format")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (max q^k)")
    common.add_argument("--out", default=None, help="write delimited output to a file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="picardscan",
        description="Picard numbers of reductions of C x C, jump primes, and decomposability obstructions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, **kwargs):
        p = sub.add_parser(name, parents=[common], help=help_, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "point count N_k of a curve over F_{p^k}")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)

    p = add("weil", cmd_weil, "Weil polynomial of a reduction")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)

    p = add("picard", cmd_picard, "Picard numbers of C x C mod p")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="extension degree (0 = geometric)")

    p = add("jump-scan", cmd_jump_scan, "scan primes for Picard rank jumps")
    p.add_argument("--curve", required=True)
    p.add_argument("--endo", required=True, help="endomorphism data JSON")
    p.add_argument("--primes", required=True, help="range, e.g. 3..10007")
    p.add_argument("--figure", help="render a jump figure (png) to this path")

    p = add("density", cmd_density, "empirical jump density vs the character prediction")
    p.add_argument("--curve", required=True)
    p.add_argument("--endo", required=True)
    p.add_argument("--primes", required=True)
    p.add_argument("--figure", help="render a running-density figure to this path")

    p = add("character", cmd_character, "jump character value at a prime")
    p.add_argument("--endo", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check the label against action determinants")

    p = add("ss-scan", cmd_ss_scan, "Deuring supersingularity scan for a CM discriminant")
    p.add_argument("--disc", type=int, required=True, help="negative fundamental discriminant")
    p.add_argument("--primes", required=True)

    p = add("hw-status", cmd_hw_status, "Hasse-Weil maximality status over F_{q^m}")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("period", cmd_period, "smallest extension degree reaching a Hasse-Weil extreme")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=None)

    p = add("genus-cap", cmd_genus_cap, "max genus compatible with maximality in degree <= 3")
    p.add_argument("--q", type=int, required=True)

    p = add("split", cmd_split, "prime splitting in the 2^k-th cyclotomic field")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("witnesses", cmd_witnesses, "congruence witness classes for the genus obstruction")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("st-stats", cmd_st_stats, "normalized Frobenius trace statistics")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--buckets", type=int, default=40)
    p.add_argument("--figure", help="render a trace histogram to this path")

    mw = sub.add_parser("mw", help="Mordell-Weil rank bookkeeping")
    mw_sub = mw.add_subparsers(dest="mw_command", required=True)

    def add_mw(name, func, help_):
        p = mw_sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add_mw("shioda", cmd_mw_shioda, "Shioda-Tate Mordell-Weil rank")
    p.add_argument("--rk-ns", type=int, required=True, dest="rk_ns")
    p.add_argument("--fibers", default="", help="comma list of component counts, e.g. 3,4")

    p = add_mw("simplified", cmd_mw_simplified, "simplified product-construction rank formula")
    p.add_argument("--hom", type=int, required=True, help="mu-equivariant Hom rank")
    p.add_argument("--c1", type=int, required=True)
    p.add_argument("--c2", type=int, required=True)

    p = add_mw("ulmer", cmd_mw_ulmer, "rank lower bound sum phi(e)/ord_e(q) over e | p^n + 1")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add_mw("ulmer-exact", cmd_mw_ulmer_exact, "exact rank when F_q contains the d-th roots of unity")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--char-zero", action="store_true", dest="char_zero")

    p = add_mw("ulmer-table", cmd_mw_ulmer_table, "bound table over ranges of (p, n, q)")
    p.add_argument("--p", required=True, help="comma list of primes")
    p.add_argument("--n", required=True, help="comma list of exponents")
    p.add_argument("--q-powers", type=int, default=5, dest="q_powers", help="use q = p^1..p^this")

    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (BadReduction, BudgetExceeded, InconsistentCounts) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

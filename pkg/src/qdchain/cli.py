"""Command-line driver writing CSV tables.

    qdchain wstate-check --config chain.cfg --out check.csv
    qdchain sweep --config chain.cfg --axis V_ratio --from 0.2 --to 5 --points 49 --out s.csv
    qdchain evolve --config chain.cfg --shape decay --tau "1/3 /Gwg" --out ev.csv

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import replace
from itertools import combinations
from pathlib import Path

from .configfile import INVRATE, _parse_value, read_config
from .dynamics import DEFAULT_DEATH_THRESHOLD, detect_sudden_death, evolve
from .entanglement import density_from_pure, tripartite_negativity
from .errors import QuadratureNotConverged, SingularSystem, ZeroExcitation
from .scattering import project_state, solve_stationary, state_fidelity, w_state
from .sweeps import AXES, COLUMNS, SweepSpec, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

log = logging.getLogger("qdchain")


def fmt(x) -> str:
    """Fixed 17-significant-digit float formatting; None becomes an empty field."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def events_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.stem + ".events" + (out.suffix or ".csv"))


def run_wstate_check(config_path, out) -> dict:
    """Stationary state of the configured chain compared with the W state."""
    parsed = read_config(config_path)
    chain = parsed.chain
    sol = solve_stationary(chain)
    state = project_state(sol)
    n = chain.n
    result = {f"p{j + 1}": p for j, p in enumerate(sol.excitation)}
    result.update({f"phi{j + 1}": ph for j, ph in enumerate(sol.phases)})
    result["fidelity_W"] = state_fidelity(state, w_state(n))
    result["N123"] = tripartite_negativity(density_from_pure(state)) if n == 3 else None
    result["Pherald"] = state.herald_probability
    result.update(t_re=sol.t.real, t_im=sol.t.imag, r_re=sol.r.real, r_im=sol.r.imag)
    write_csv(out, list(result), [list(result.values())])
    return result


def run_sweep_cmd(config_path, axis, lo, hi, points, out, workers=None) -> list[dict]:
    parsed = read_config(config_path)
    spec = SweepSpec(axis, lo, hi, points, parsed.chain)
    rows = run_sweep(spec, workers=workers)
    write_csv(out, COLUMNS, [[row[c] for c in COLUMNS] for row in rows])
    return rows


def run_evolve(config_path, out, *, shape=None, tau=None, threshold=DEFAULT_DEATH_THRESHOLD):
    """Time series CSV plus a sidecar ``<out>.events.csv`` of sudden-death events.

    Columns: ``time, p1..pN, ptotal, Cjl`` for every pair ``j < l``.
    """
    parsed = read_config(config_path)
    chain, waveform = parsed.chain, parsed.waveform
    if shape is not None:
        waveform = replace(waveform, shape=shape)
    if tau is not None:
        waveform = replace(waveform, tau=tau)
    times = parsed.grid.times(chain, waveform)
    series = evolve(chain, waveform, times, refine_minima=True)
    n = chain.n
    pairs = list(combinations(range(1, n + 1), 2))
    header = (["time"] + [f"p{j}" for j in range(1, n + 1)] + ["ptotal"]
              + [f"C{a}{b}" if n < 10 else f"C{a}_{b}" for a, b in pairs])
    p = series.excitation
    rows = []
    for i, t in enumerate(series.times):
        rows.append([t, *p[i], series.total[i], *(series.concurrence[pr][i] for pr in pairs)])
    write_csv(out, header, rows)
    events = [ev for pr in pairs for ev in detect_sudden_death(series, pr, threshold)]
    write_csv(events_path(out), ["pair", "death_time", "revival_time"],
              [[f"{ev.pair[0]}-{ev.pair[1]}", ev.death_time, ev.revival_time] for ev in events])
    return series, events


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdchain", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="configuration file")
        p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("wstate-check", help="stationary state vs the W state")
    common(p)

    p = sub.add_parser("sweep", help="stationary sweep over one parameter")
    common(p)
    p.add_argument("--axis", required=True, choices=AXES)
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("evolve", help="shaped-photon time evolution")
    common(p)
    p.add_argument("--shape", choices=("decay", "growth"), default=None)
    p.add_argument("--tau", default=None,
                   help="intensity 1/e time; a number or e.g. '1/3 /Gwg'")
    p.add_argument("--threshold", type=float, default=DEFAULT_DEATH_THRESHOLD,
                   help="concurrence level counted as dead")
    return parser


def _resolve_tau(text, config_path):
    if text is None:
        return None
    v = _parse_value(text.strip(), INVRATE, None)
    if v.unit is None:
        return float(v.number)
    chain = read_config(config_path).chain
    return float(v.number) / chain.waveguide_rates[0]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "wstate-check":
            res = run_wstate_check(args.config, args.out)
            print(f"W fidelity {res['fidelity_W']:.12f}  herald weight {res['Pherald']:.6g}")
        elif args.command == "sweep":
            rows = run_sweep_cmd(args.config, args.axis, args.lo, args.hi, args.points,
                                 args.out, workers=args.workers)
            bad = sum(r["status"] != "ok" for r in rows)
            print(f"{len(rows)} rows written to {args.out}" + (f" ({bad} flagged)" if bad else ""))
        elif args.command == "evolve":
            tau = _resolve_tau(args.tau, args.config)
            _, events = run_evolve(args.config, args.out, shape=args.shape, tau=tau,
                                   threshold=args.threshold)
            print(f"{len(events)} sudden-death events written to {events_path(args.out)}")
    except QuadratureNotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SingularSystem, ZeroExcitation) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

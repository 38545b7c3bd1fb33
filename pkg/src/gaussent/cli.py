"""Command-line front end: ``gaussent gen | measure | sweep | check``.

Exit codes: 0 success, 1 usage, 2 unphysical input, 3 bad partition,
4 numeric failure, 5 property violation. Numbers are printed with 12
significant digits. The environment variable ``GAUSSENT_TOL`` overrides
the default physicality/PPT tolerance.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, astuple, dataclass, field

import numpy as np

from . import io as gio
from . import measures as gm
from . import sampling, separability, states, symmetric, tripartite
from .errors import DomainError, InvalidArgumentError, NumericError
from .symplectic import seralian, symplectic_spectrum

EXIT_OK, EXIT_USAGE, EXIT_UNPHYSICAL, EXIT_PARTITION, EXIT_NUMERIC, EXIT_VIOLATION = range(6)
TOL_ENV = "GAUSSENT_TOL"

GEN_KINDS = ("vacuum", "thermal", "tms", "fsym-pure", "pure3", "ghzw", "four-mode")
MEASURE_NAMES = (
    "logneg",
    "negativity",
    "eof-symmetric",
    "gaussian-eof",
    "contangle",
    "gaussian-tangle",
    "entropy",
    "entanglement-entropy",
    "purity",
    "renyi",
    "generalized-entropy",
    "residual-contangle",
)
SWEEP_KINDS = ("hierarchy", "blocks", "scaling", "residual", "ordering")
CHECK_KINDS = ("bona-fide", "ppt", "monogamy", "schmidt", "glems3m")


class UsageError(Exception):
    pass


class PartitionError(Exception):
    pass


def default_tol():
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return states.BONA_FIDE_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not tol > 0:
        raise UsageError(f"{TOL_ENV} must be positive, got {raw!r}")
    return tol


def fmt(x):
    return f"{float(x) + 0.0:.12g}"


# ---------------------------------------------------------------- argument parsing helpers


def parse_floats(text, what):
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of numbers, got {text!r}") from None


def parse_partition(text, n_modes):
    """``"1,2|3"`` (1-based) -> :class:`Bipartition` with 0-based indices."""
    if text is None:
        raise PartitionError("a partition is required, e.g. --partition '1|2'")
    parts = str(text).split("|")
    if len(parts) != 2:
        raise PartitionError(f"partition must look like '1,2|3', got {text!r}")
    try:
        sides = [tuple(int(v) - 1 for v in p.split(",") if v.strip()) for p in parts]
        return separability.Bipartition(*sides).check(n_modes)
    except (ValueError, InvalidArgumentError) as exc:
        raise PartitionError(f"bad partition {text!r}: {exc}") from None


def parse_range(text, integer=False):
    """``start:stop:steps`` with ``steps >= 2`` and ``start < stop``."""
    try:
        start, stop, steps = str(text).split(":")
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError:
        raise UsageError(f"range must look like start:stop:steps, got {text!r}") from None
    if steps < 2 or not start < stop:
        raise UsageError(f"range needs steps >= 2 and start < stop, got {text!r}")
    grid = np.linspace(start, stop, steps)
    if integer:
        grid = np.unique(np.round(grid).astype(int))
    return grid


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- gen


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for kind {args.kind!r}")
    return value


def build_state(args):
    kind = args.kind
    if kind == "vacuum":
        return states.vacuum(int(_need(args, "n")))
    if kind == "thermal":
        return states.thermal(parse_floats(_need(args, "nu"), "--nu"))
    if kind == "tms":
        return states.two_mode_squeezed(float(_need(args, "r")))
    if kind == "fsym-pure":
        n, b = int(_need(args, "n")), float(_need(args, "b"))
        traced = int(args.traced or 0)
        return symmetric.fully_symmetric_mixed(n, b, traced) if traced else symmetric.fully_symmetric_pure(n, b)
    if kind == "pure3":
        a = parse_floats(_need(args, "a"), "--a")
        if len(a) != 3:
            raise UsageError("--a needs three values for pure3")
        return tripartite.pure_three_mode(*a)
    if kind == "ghzw":
        a = parse_floats(_need(args, "a"), "--a")
        if len(a) != 1:
            raise UsageError("--a needs one value for ghzw")
        return tripartite.ghzw(a[0])
    if kind == "four-mode":
        return tripartite.four_mode_promiscuous(float(_need(args, "s")), float(_need(args, "a")))
    raise UsageError(f"unknown kind {kind!r}")


def cmd_gen(args):
    st = build_state(args)
    text = gio.dumps(st) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- measure


def _single_probe(bp):
    if len(bp.side_a) == 1:
        return bp
    if len(bp.side_b) == 1:
        return separability.Bipartition(bp.side_b, bp.side_a)
    raise PartitionError("Gaussian entanglement measures need a single mode on one side")


def _gaussian_em(cm, bp, name):
    bp = _single_probe(bp)
    sub, rel = separability._restricted(cm, bp)
    if len(rel.modes) == 2:
        sub = states.reduce(states.GaussianState(sub), (rel.side_a[0], rel.side_b[0])).cm
        return gm.minimize_m_squared(sub, name).value
    return gm.one_vs_rest(sub, rel.side_a[0], name).value


def evaluate_measure(cm, name, bp, p=None):
    if name == "logneg":
        return separability.log_negativity(cm, bp)
    if name == "negativity":
        return separability.negativity(cm, bp)
    if name == "eof-symmetric":
        sub, rel = separability._restricted(cm, bp)
        if sub.shape != (4, 4):
            raise PartitionError("eof-symmetric needs a 1|1 partition")
        return separability.eof_symmetric(sub)
    if name in ("gaussian-eof", "contangle", "gaussian-tangle"):
        return _gaussian_em(cm, bp, name.replace("-", "_"))
    if name == "entropy":
        return states.von_neumann_entropy(states.reduce(states.GaussianState(cm), bp.side_a) if bp else cm)
    if name == "entanglement-entropy":
        return separability.entropy_of_entanglement(cm, bp)
    if name == "purity":
        return states.purity(states.reduce(states.GaussianState(cm), bp.side_a) if bp else cm)
    if name in ("renyi", "generalized-entropy"):
        if p is None:
            raise UsageError(f"--p is required for {name}")
        target = states.reduce(states.GaussianState(cm), bp.side_a) if bp else cm
        fn = states.renyi_entropy if name == "renyi" else states.generalized_entropy
        return fn(target, p)
    if name == "residual-contangle":
        if cm.shape != (6, 6):
            raise UsageError("residual-contangle needs a three-mode state")
        if states.is_pure(cm):
            a = tripartite.local_mixednesses(cm)
            if tripartite.satisfies_triangle(*a, tol=1e-7):
                return tripartite.residual_contangle_pure(*np.maximum(a, 1.0)).value
        return tripartite.residual_contangle_generic(cm).value
    raise UsageError(f"unknown measure {name!r}")


_NEEDS_PARTITION = {"logneg", "negativity", "eof-symmetric", "gaussian-eof", "contangle", "gaussian-tangle", "entanglement-entropy"}


def cmd_measure(args):
    tol = default_tol()
    st = gio.read_state(args.cm_file)
    cm = st.cm
    if not states.is_bona_fide(cm, tol):
        raise DomainError("not a physical covariance matrix")
    n = st.n_modes
    bp = None
    if args.partition is not None or args.measure in _NEEDS_PARTITION:
        bp = parse_partition(args.partition, n)
    value = evaluate_measure(cm, args.measure, bp, args.p)
    print(fmt(value))
    if args.report:
        report = {
            "command": "measure",
            "cm_file": args.cm_file,
            "measure": args.measure,
            "partition": args.partition,
            "value": float(value),
            "symplectic_spectrum": symplectic_spectrum(cm).tolist(),
            "tolerance": tol,
        }
        if bp is not None:
            report["pt_spectrum"] = separability.pt_spectrum(cm, bp).tolist()
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------- sweep


MULTIMODE_COLUMNS = ("n", "K", "b", "E_N", "measure_name")


def _sweep_rows(args):
    kind = args.kind
    if kind == "hierarchy":
        n = int(args.n or 10)
        for b in parse_range(_need(args, "b_range")):
            st = symmetric.fully_symmetric_pure(n, b)
            for k in range(1, n):
                yield (n, k, b, symmetric.one_vs_block_log_negativity(st, k), f"logneg_1|{k}")
        return
    if kind == "blocks":
        n, traced = int(args.n or 10), int(args.traced or 0)
        for b in parse_range(_need(args, "b_range")):
            st = symmetric.fully_symmetric_mixed(n, b, traced)
            for k in range(1, n // 2 + 1):
                yield (n, k, b, symmetric.block_log_negativity(st, k), f"logneg_{k}|{n - k}")
        return
    if kind == "scaling":
        b = float(_need(args, "b"))
        for nn in parse_range(_need(args, "n_range"), integer=True):
            if nn < 2:
                continue
            n, st = int(nn) + 1, symmetric.fully_symmetric_pure(int(nn) + 1, b)
            for k in sorted({1, int(nn)}):
                yield (n, k, b, symmetric.one_vs_block_log_negativity(st, k), f"logneg_1|{k}")
        return
    raise UsageError(f"unknown sweep kind {kind!r}")


def _residual_rows(args):
    a1 = float(_need(args, "a"))
    grid = parse_range(_need(args, "b_range"))
    for a2 in grid:
        for a3 in grid:
            if tripartite.satisfies_triangle(a1, a2, a3):
                yield (a1, a2, a3, tripartite.residual_contangle_pure(a1, a2, a3).value, "residual_contangle")


def _ordering_rows(args):
    rng = np.random.default_rng(args.seed)
    for i in range(int(args.samples)):
        cm = sampling.random_two_mode(rng).cm
        en = separability.log_negativity(cm, [0])
        gef = gm.gaussian_eof(cm)
        inv = None
        if en > 0:
            inv = gm.purity_matched_inversion(*astuple(separability.two_mode_invariants(cm))[:3])
        yield (i, en, gef, gm.symmetric_eof_bound(en), int(inv is not None), "gaussian_eof")


def cmd_sweep(args):
    if args.kind == "residual":
        header, rows = ("a1", "a2", "a3", "value", "measure_name"), _residual_rows(args)
    elif args.kind == "ordering":
        header, rows = ("sample", "E_N", "G_EF", "symmetric_bound", "extremal_inversion", "measure_name"), _ordering_rows(args)
    else:
        header, rows = MULTIMODE_COLUMNS, _sweep_rows(args)
    rows = list(rows)
    _write_csv(args.out, header, rows)
    _report({"command": "sweep", "kind": args.kind, "seed": args.seed, "rows_written": len(rows), "violations": 0})
    return EXIT_OK


def _cell(v):
    if isinstance(v, (str, int, np.integer)):
        return str(v)
    return fmt(v)


def _write_csv(path, header, rows):
    fh = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(v) for v in r])
    finally:
        if path:
            fh.close()


# ---------------------------------------------------------------- check


@dataclass
class RunReport:
    """Summary printed by ``sweep`` and ``check`` (one JSON object on stderr)."""

    command: str
    seed: int
    tolerances: dict
    rows_written: int = 0
    violations: int = 0
    extra: dict = field(default_factory=dict)


def _report(payload):
    sys.stderr.write(json.dumps(payload) + "\n")


def _check_rows(args, tol):
    kind, base = args.kind, int(args.seed)
    if kind == "bona-fide":
        if args.inputs:
            for path in args.inputs:
                ok = states.is_bona_fide(gio.read_state(path).cm, tol)
                yield (path, int(ok)), not ok
        else:
            for i in range(args.samples):
                rng = np.random.default_rng(base + i)
                ok = states.is_bona_fide(sampling.random_state(int(args.n or 3), rng).cm, tol)
                yield (base + i, int(ok)), not ok
        return
    if kind == "ppt":
        n = int(args.n or 2)
        for i in range(args.samples):
            rng = np.random.default_rng(base + i)
            blocks = [sampling.random_state(1, rng).cm for _ in range(n)]
            cm = np.zeros((2 * n, 2 * n))
            for k, blk in enumerate(blocks):
                cm[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = blk
            worst = min(separability.pt_min_eigenvalue(cm, [k]) for k in range(n))
            ok = worst >= 1.0 - tol
            yield (base + i, worst, int(ok)), not ok
        return
    if kind == "monogamy":
        for i in range(args.samples):
            rng = np.random.default_rng(base + i)
            if args.mixed:
                cm = sampling.random_state(3, rng, nu_max=2.0).cm
                a = tripartite.local_mixednesses(cm)
                rep = tripartite.monogamy_check(cm, args.measure)
                row = min(rep.rows, key=lambda r: (r.slack, r.probe))
                lhs, rhs = row.lhs, row.rhs
            else:
                a = sampling.random_triangle_triple(rng)
                cm = tripartite.pure_three_mode(*a).cm
                p = int(np.argmin(a))
                j, k = (x for x in range(3) if x != p)
                lhs = gm.measure_from_m_squared(a[p] ** 2, args.measure)
                rhs = sum(tripartite._pair_measure(cm, p, q, args.measure) for q in (j, k))
            slack = lhs - rhs
            yield (base + i, a[0], a[1], a[2], lhs, rhs, slack), slack < -tripartite.VIOLATION_TOL
        return
    if kind == "schmidt":
        n = int(args.n or 4)
        for i in range(args.samples):
            rng = np.random.default_rng(base + i)
            cm = sampling.random_state(n, rng, pure=True).cm
            k = int(rng.integers(1, n))
            side = tuple(sorted(rng.choice(n, k, replace=False)))
            rest = tuple(x for x in range(n) if x not in side)
            va = symplectic_spectrum(states.reduce(cm, side).cm)
            vb = symplectic_spectrum(states.reduce(cm, rest).cm)
            na, nb = va[va > 1 + 1e-7], vb[vb > 1 + 1e-7]
            dev = np.inf if na.size != nb.size else (float(np.abs(na - nb).max()) if na.size else 0.0)
            yield (base + i, k, dev), not dev <= 1e-7
        return
    if kind == "glems3m":
        for i in range(args.samples):
            rng = np.random.default_rng(base + i)
            a = sampling.random_triangle_triple(rng)
            cm = tripartite.pure_three_mode(*a).cm
            dev = 0.0
            for p, q in ((0, 1), (0, 2), (1, 2)):
                sub = states.reduce(cm, (p, q)).cm
                dev = max(dev, abs(seralian(sub) - np.linalg.det(sub) - 1.0))
            yield (base + i, a[0], a[1], a[2], dev), not dev <= 1e-8
        return
    raise UsageError(f"unknown check kind {kind!r}")


_CHECK_HEADERS = {
    "bona-fide": ("input", "bona_fide"),
    "ppt": ("seed", "min_pt_eigenvalue", "ppt"),
    "monogamy": ("seed", "a1", "a2", "a3", "lhs", "rhs", "slack"),
    "schmidt": ("seed", "block_size", "max_deviation"),
    "glems3m": ("seed", "a1", "a2", "a3", "max_deviation"),
}


def cmd_check(args):
    tol = default_tol()
    args.measure = args.measure.replace("-", "_")
    if args.kind == "monogamy" and args.measure not in tripartite.RESIDUAL_MEASURES:
        raise UsageError(f"monogamy measure must be one of {tripartite.RESIDUAL_MEASURES}")
    rows, bad = [], []
    for row, violated in _check_rows(args, tol):
        rows.append(row)
        if violated:
            bad.append(row)
    header = _CHECK_HEADERS[args.kind]
    _write_csv(args.out, header, rows)
    if args.violations:
        _write_csv(args.violations, header, bad)
    rep = RunReport("check", int(args.seed), {"bona_fide": tol, "violation": tripartite.VIOLATION_TOL}, len(rows), len(bad), {"kind": args.kind})
    _report(asdict(rep))
    return EXIT_VIOLATION if bad else EXIT_OK


# ---------------------------------------------------------------- main


def build_parser():
    p = _Parser(prog="gaussent", description="Gaussian-state entanglement toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a covariance matrix as JSON")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("--n", type=int)
    g.add_argument("--nu", help="comma-separated symplectic eigenvalues (thermal)")
    g.add_argument("--r", type=float, help="two-mode squeezing")
    g.add_argument("--b", type=float, help="single-mode parameter of fully symmetric states")
    g.add_argument("--traced", type=int, help="extra modes traced out (fsym-pure)")
    g.add_argument("--a", help="local eigenvalue(s): one value (ghzw, four-mode squeezing) or three (pure3)")
    g.add_argument("--s", type=float, help="inner squeezing (four-mode)")
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("measure", help="evaluate a measure on a covariance-matrix file")
    m.add_argument("cm_file")
    m.add_argument("--measure", required=True, choices=MEASURE_NAMES)
    m.add_argument("--partition", help="1-based sides, e.g. '1,2|3'")
    m.add_argument("--p", type=float, help="entropy order (renyi, generalized-entropy)")
    m.add_argument("--report", help="write a JSON report here")
    m.set_defaults(func=cmd_measure)

    s = sub.add_parser("sweep", help="tabulate a parameter sweep as CSV")
    s.add_argument("kind", choices=SWEEP_KINDS)
    s.add_argument("--n", type=int)
    s.add_argument("--b", type=float)
    s.add_argument("--a", type=float, help="probe local eigenvalue (residual)")
    s.add_argument("--b-range", dest="b_range", help="start:stop:steps")
    s.add_argument("--n-range", dest="n_range", help="start:stop:steps (integers)")
    s.add_argument("--traced", type=int)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("check", help="run a randomized property check")
    c.add_argument("kind", choices=CHECK_KINDS)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--n", type=int)
    c.add_argument("--measure", default="contangle")
    c.add_argument("--mixed", action="store_true", help="monogamy on random mixed three-mode states")
    c.add_argument("--inputs", nargs="*", help="covariance-matrix files (bona-fide)")
    c.add_argument("-o", "--out")
    c.add_argument("--violations", help="also write violating rows here")
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with states.bona_fide_tolerance(default_tol()):
            return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc)
    except PartitionError as exc:
        return _fail(EXIT_PARTITION, exc)
    except DomainError as exc:
        return _fail(EXIT_UNPHYSICAL, exc)
    except NumericError as exc:
        return _fail(EXIT_NUMERIC, exc)
    except (InvalidArgumentError, OSError) as exc:
        return _fail(EXIT_USAGE, exc)


def _fail(code, exc):
    sys.stderr.write(f"gaussent: {exc}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line runner: ``qfermat {list,verify,identity,classical,bench}``.

Exit status is 0 when every non-exploratory report passed or was skipped,
1 if anything failed or errored, and 2 on a usage error.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import classical, congruences, identities
from .errors import QFermatError
from .report import exit_status, render

USAGE_ERROR = 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    case: str = "all"
    primes: tuple = (3, 31)
    m_range: tuple = (1, 4)
    x_values: tuple = None
    n_max: int = 8
    fmt: str = "text"
    output: str = None
    jobs: int = 1
    exploratory: bool = False
    perturb: tuple = field(default_factory=tuple)

    def validate(self):
        lo, hi = self.primes
        if not 3 <= lo <= hi:
            raise UsageError(f"prime range needs 3 <= lo <= hi, got {lo}..{hi}")
        m_lo, m_hi = self.m_range
        if not 1 <= m_lo <= m_hi <= 8:
            raise UsageError(f"m range must lie within 1..8, got {m_lo}..{m_hi}")
        if self.n_max < 1:
            raise UsageError("--n-max must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.fmt not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")

    @property
    def m_values(self):
        return tuple(range(self.m_range[0], self.m_range[1] + 1))

    def prime_list(self):
        return classical.primes_in(*self.primes)


def parse_range(text):
    """'lo..hi' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None


def parse_ints(text):
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _selector(value, known, kind):
    if value in (None, "all"):
        return None
    ids = [v.strip() for v in value.split(",") if v.strip()]
    for id in ids:
        if id not in known:
            raise UsageError(f"unknown {kind} {id!r}; try 'qfermat list'")
    return ids


def _run_verify(cfg):
    known = congruences.REGISTRY
    ids = _selector(cfg.case, known, "case")
    return congruences.verify_all(cfg.prime_list(), ids=ids, m_values=cfg.m_values,
                                  perturb=cfg.perturb, exploratory=cfg.exploratory,
                                  jobs=cfg.jobs)


def _run_classical(cfg):
    ids = _selector(cfg.case, classical.CLASSICAL, "classical case")
    return classical.verify_classical_all(cfg.prime_list(), ids=ids, perturb=cfg.perturb,
                                          exploratory=cfg.exploratory, jobs=cfg.jobs,
                                          m_values=cfg.m_values, x_values=cfg.x_values)


def _run_identity(cfg):
    ids = _selector(cfg.case, identities.IDENTITIES, "identity")
    return identities.identity_sweep(ids, n_max=cfg.n_max, m_max=cfg.m_range[1])


def _list_text():
    lines = ["q-congruences (verify):"]
    for c in congruences.CASES:
        lines.append(f"  {c.id:22s} {c.statement}")
    lines.append("false controls, excluded from 'all' (verify --case <id>; expected to fail):")
    for c in congruences.ERRATA:
        lines.append(f"  {c.id:22s} {c.statement}")
    lines.append("identities (identity):")
    for id, c in identities.IDENTITIES.items():
        lines.append(f"  {id:22s} params: {', '.join(c.signature)}")
    lines.append("classical congruences (classical):")
    for c in classical.CLASSICAL_CASES:
        lines.append(f"  {c.id:22s} {c.statement}")
    return "\n".join(lines) + "\n"


def _bench(cfg):
    """Wall time per q-congruence case over the prime range, rendered as rows."""
    ids = _selector(cfg.case, congruences.REGISTRY, "case") or congruences.case_ids()
    rows = []
    worst = 0
    for id in ids:
        t0 = time.perf_counter()
        reports = congruences.verify_all(cfg.prime_list(), ids=[id], m_values=cfg.m_values)
        seconds = time.perf_counter() - t0
        worst = max(worst, exit_status(reports))
        rows.append({"case": id, "reports": len(reports), "seconds": round(seconds, 4)})
    if cfg.fmt == "json":
        text = "".join(json.dumps(r) + "\n" for r in rows)
    elif cfg.fmt == "csv":
        text = "case,reports,seconds\n" + "".join(
            f"{r['case']},{r['reports']},{r['seconds']}\n" for r in rows)
    else:
        text = "".join(f"{r['case']:22s} {r['reports']:6d} {r['seconds']:9.3f}s\n" for r in rows)
        text += f"total {sum(r['seconds'] for r in rows):.3f}s\n"
    return text, worst


def run(cfg):
    """Execute one configuration; returns the process exit status."""
    try:
        cfg.validate()
        if cfg.command == "list":
            text, status = _list_text(), 0
        elif cfg.command == "bench":
            text, status = _bench(cfg)
        else:
            runner = {"verify": _run_verify, "classical": _run_classical,
                      "identity": _run_identity}[cfg.command]
            reports = runner(cfg)
            text, status = render(reports, cfg.fmt), exit_status(reports)
    except UsageError as exc:
        print(f"qfermat: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except QFermatError as exc:
        print(f"qfermat: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qfermat", description="Verify q-Fermat-quotient congruences and identities exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_primes="3..31"):
        p.add_argument("--primes", type=parse_range, default=parse_range(default_primes),
                       help="inclusive prime range lo..hi (default %(default)s)")
        p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--m-min", type=int, default=1)
        p.add_argument("--m-max", type=int, default=4)

    sub.add_parser("list", help="list every registered case")

    v = sub.add_parser("verify", help="q-congruences modulo [p] or [p]^2")
    v.add_argument("--case", default="all", help="case id, comma list, or 'all'")
    common(v)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--exploratory", action="store_true",
                   help="also probe primes below a case's bound (never affects the exit code)")
    v.add_argument("--perturb", type=parse_ids, default=(),
                   help="comma list of case ids whose right side gets +1 (sanity check)")

    c = sub.add_parser("classical", help="integer congruences modulo p or p^2")
    c.add_argument("--case", default="all")
    common(c, "3..1000")
    c.add_argument("--x", type=parse_ints, default=None,
                   help="x values for xxyy; write --x=-3,-1,2 when the list starts with a minus")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--exploratory", action="store_true")
    c.add_argument("--perturb", type=parse_ids, default=())

    i = sub.add_parser("identity", help="polynomial identities, checked symbolically")
    i.add_argument("--id", dest="case", default="all")
    i.add_argument("--n-max", type=int, default=8)
    i.add_argument("--m-max", type=int, default=4)
    i.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    i.add_argument("--output")

    b = sub.add_parser("bench", help="time each q-congruence case over a prime range")
    b.add_argument("--case", default="all")
    common(b, "3..31")
    return parser


def parse_ids(text):
    return tuple(t.strip() for t in text.split(",") if t.strip())


def config_from_args(ns):
    return RunConfig(
        command=ns.command,
        case=getattr(ns, "case", "all"),
        primes=getattr(ns, "primes", (3, 31)),
        m_range=(getattr(ns, "m_min", 1), getattr(ns, "m_max", 4)),
        x_values=getattr(ns, "x", None),
        n_max=getattr(ns, "n_max", 8),
        fmt=getattr(ns, "fmt", "text"),
        output=getattr(ns, "output", None),
        jobs=getattr(ns, "jobs", 1),
        exploratory=getattr(ns, "exploratory", False),
        perturb=getattr(ns, "perturb", ()),
    )


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())

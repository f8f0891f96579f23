"""Batch sweep driver with deterministic sampling and machine-readable reports.

Subcommands:

* ``verify``     check the endoscopic identity over a sweep of primes,
                 characters, and sampled torus elements (exit 0 iff every
                 non-skipped check is equal),
* ``falsify``    run the ADSS-15.2 clash harness (exit 0 iff every check
                 is unequal, as expected),
* ``properties`` run the algebraic property battery,
* ``table``      print the residue character tables and structure tables.

Identical (config, seed) pairs produce byte-identical report streams.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import dataclass

from .charformulas import (
    PacketSpec,
    b_eps_coefficient,
    kottwitz_stable,
    mu_hat_orbital,
    psi0,
    psi0_on_residue_point,
    psi0_via_level,
    theta5,
    theta_nonregular_far,
    theta_nonregular_near_sums,
)
from .endoscopy import (
    REPORT_FIELDS,
    falsify_adss152,
    transfer_factor,
    verify_identity,
)
from .errors import SamplingBudgetExceeded
from .cyclotomic import CycNumber
from .localfield import FieldConfig
from .packets import (
    KLEIN4_ELEMENTS,
    KLEIN4_TABLE,
    PROJ_S1,
    PROJ_S2,
    PROJ_S3,
    centralizes,
    component_group,
    nonregular_image,
    regular_image_generators,
    row_orthogonality,
    virtual_coeffs,
)
from .residue import (
    CharacterLevel,
    enumerate_norm_one,
    norm_one_group,
    quadratic_level,
    regular_levels,
)
from .torus import (
    Classification,
    cayley,
    cayley_inverse,
    classify,
    f_direct,
    f_via_disc,
    g_conjugate,
    galois_conj,
    sample_regular,
    weyl_DG,
    weyl_D_lie,
)

NEAR_DEFAULT_RANGE = (1, 3)


@dataclass
class SweepConfig:
    mode: str
    primes: list[int]
    precision: int = 8
    samples: int = 20
    seed: int = 0
    packet: str = "nonregular"
    level: "int | None" = None
    s: str = "s1"
    sample_class: str = "both"
    near_val_lo: int = NEAR_DEFAULT_RANGE[0]
    near_val_hi: int = NEAR_DEFAULT_RANGE[1]
    fmt: str = "jsonl"
    out: "str | None" = None

    def validate(self) -> None:
        if not self.primes:
            raise ValueError("at least one prime is required")
        if self.samples < 1:
            raise ValueError("--samples must be >= 1")
        if self.near_val_lo < 1 or self.near_val_hi < self.near_val_lo:
            raise ValueError("near valuation range must satisfy 1 <= lo <= hi")
        if self.near_val_hi > self.precision - 3:
            raise ValueError(
                f"near valuations must stay <= N-3 = {self.precision - 3}"
            )
        if self.packet not in ("regular", "nonregular"):
            raise ValueError("--packet must be regular or nonregular")
        if self.s not in KLEIN4_ELEMENTS:
            raise ValueError(f"--s must be one of {KLEIN4_ELEMENTS}")
        if self.packet == "regular" and self.s not in ("1", "s1"):
            raise ValueError("the regular packet only has s in {1, s1}")
        if self.packet == "regular" and self.s == "1":
            raise ValueError(
                "no stable comparison is defined for the regular packet; use --s s1"
            )


def _sample_plan(sweep: SweepConfig) -> list[tuple[Classification, int]]:
    """Deterministic (class, valuation) schedule of length sweep.samples."""
    near_vals = list(range(sweep.near_val_lo, sweep.near_val_hi + 1))
    plan = []
    near_i = 0
    for i in range(sweep.samples):
        want_near = sweep.sample_class == "near" or (
            sweep.sample_class == "both" and i % 2 == 1
        )
        if want_near:
            plan.append((Classification.NEAR, near_vals[near_i % len(near_vals)]))
            near_i += 1
        else:
            plan.append((Classification.FAR, 0))
    return plan


def _packets_for(config: FieldConfig, sweep: SweepConfig) -> list[PacketSpec]:
    if sweep.packet == "nonregular":
        return [PacketSpec.nonregular(config)]
    if sweep.level is not None:
        return [PacketSpec.regular(config, sweep.level)]
    return [PacketSpec.regular(config, lv.k) for lv in regular_levels(config)]


def _sample(config: FieldConfig, cls: Classification, v: int, key: str):
    return sample_regular(config, cls, v, seed=key)


class Emitter:
    """Serializes report records in one of the supported formats."""

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self.rows: list[dict] = []
        if fmt == "csv":
            self.writer = csv.writer(stream, lineterminator="\n")
            self.writer.writerow(REPORT_FIELDS)

    @staticmethod
    def _flatten(record: dict) -> list:
        row = []
        for name in REPORT_FIELDS:
            value = record[name]
            if isinstance(value, dict):
                value = value["text"]
            row.append(value)
        return row

    def emit(self, record: dict) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")
        elif self.fmt == "csv":
            self.writer.writerow(self._flatten(record))
        else:
            self.rows.append(record)

    def close(self) -> None:
        if self.fmt != "table" or not self.rows:
            return
        headers = list(REPORT_FIELDS)
        table = [[str(v) for v in self._flatten(r)] for r in self.rows]
        widths = [
            max(len(h), *(len(row[i]) for row in table))
            for i, h in enumerate(headers)
        ]
        line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
        self.stream.write(line + "\n")
        self.stream.write("-" * len(line) + "\n")
        for row in table:
            self.stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)) + "\n")


def run_verify(sweep: SweepConfig, out, err) -> int:
    emitter = Emitter(sweep.fmt, out)
    n_equal = n_unequal = n_skipped = 0
    for p in sweep.primes:
        config = FieldConfig(p, sweep.precision)
        for packet in _packets_for(config, sweep):
            for i, (cls, v) in enumerate(_sample_plan(sweep)):
                key = (
                    f"{sweep.seed}|{p}|{packet.kind.value}|{packet.level.k}"
                    f"|{sweep.s}|{cls.value}|{v}|{i}"
                )
                try:
                    gamma = _sample(config, cls, v, key)
                except SamplingBudgetExceeded:
                    n_skipped += 1
                    continue
                report = verify_identity(packet, sweep.s, gamma)
                emitter.emit(report.to_record())
                if report.is_skipped:
                    n_skipped += 1
                elif report.is_equal:
                    n_equal += 1
                else:
                    n_unequal += 1
    emitter.close()
    if n_skipped:
        err.write(f"warning: {n_skipped} check(s) skipped\n")
    err.write(f"verify: {n_equal} equal, {n_unequal} unequal, {n_skipped} skipped\n")
    return 0 if n_unequal == 0 else 1


def run_falsify(sweep: SweepConfig, out, err) -> int:
    emitter = Emitter(sweep.fmt, out)
    n_unexpected = n_total = 0
    for p in sweep.primes:
        config = FieldConfig(p, sweep.precision)
        near_vals = list(range(sweep.near_val_lo, sweep.near_val_hi + 1))
        for i in range(sweep.samples):
            v = near_vals[i % len(near_vals)]
            key = f"{sweep.seed}|{p}|falsify|{v}|{i}"
            try:
                gamma = _sample(config, Classification.NEAR, v, key)
            except SamplingBudgetExceeded:
                continue
            for report in falsify_adss152(gamma):
                emitter.emit(report.to_record())
                n_total += 1
                if report.verdict != "unequal":
                    n_unexpected += 1
    emitter.close()
    err.write(
        f"falsify: {n_total} checks, {n_total - n_unexpected} unequal as expected,"
        f" {n_unexpected} unexpectedly equal\n"
    )
    return 0 if n_unexpected == 0 and n_total > 0 else 1


def _property_battery(config: FieldConfig, sweep: SweepConfig) -> list[tuple[str, bool, str]]:
    """Per-prime algebraic identity checks; each entry is (name, ok, detail)."""
    results = []
    rng_key = f"{sweep.seed}|{config.p}|properties"
    rng = random.Random(rng_key)

    def mixed_samples(n):
        out = []
        for i in range(n):
            if i % 2 == 0:
                out.append(sample_regular(config, Classification.FAR, 0, rng))
            else:
                v = 1 + (i // 2) % min(3, config.N - 3)
                out.append(sample_regular(config, Classification.NEAR, v, rng))
        return out

    gammas = mixed_samples(max(10, sweep.samples))

    ok = all(
        f_direct(g) == f_via_disc(g)
        and f_direct(galois_conj(g)) == f_direct(g)
        and f_direct(g_conjugate(g)) == f_direct(g)
        and weyl_DG(g).valuation() == 2 * g.b.valuation()
        and (classify(g) is not Classification.FAR or f_direct(g) == 1)
        for g in gammas
    )
    results.append(("f-and-discriminant-identities", ok, f"{len(gammas)} elements"))

    ok = all(transfer_factor("gamma_h", g) == -f_direct(g) for g in gammas)
    results.append(("transfer-factor-equals-minus-f", ok, f"{len(gammas)} elements"))

    far = [g for g in gammas if classify(g) is Classification.FAR]
    ok = all(psi0(g) == psi0_via_level(g) for g in far)
    group = norm_one_group(config)
    lv = quadratic_level(config)
    ok = ok and all(
        psi0_on_residue_point(config, pt)
        == int(group.character_value(lv, pt).as_fraction())
        for pt in group.points
    )
    quad_count = sum(
        1
        for k in range(config.q + 1)
        if all(
            group.character_value(CharacterLevel(k, config.q + 1), pt) ** 2
            == CycNumber.one()
            for pt in group.points
        )
        and any(
            group.character_value(CharacterLevel(k, config.q + 1), pt) != CycNumber.one()
            for pt in group.points
        )
    )
    ok = ok and quad_count == 1
    results.append(("psi0-dual-route-and-uniqueness", ok, f"{len(far)} far elements"))

    near = [g for g in gammas if classify(g) is Classification.NEAR]
    b_eps = b_eps_coefficient(config)
    ok = all(
        mu_hat_orbital(cayley_inverse(g), -1, b_eps, 1)
        == CycNumber.from_rational(-1 - f_direct(g))
        and mu_hat_orbital(cayley_inverse(g), -1, b_eps, config.pi)
        == CycNumber.from_rational(-1 + f_direct(g))
        and weyl_D_lie(cayley_inverse(g)).valuation() == weyl_DG(g).valuation()
        and cayley(cayley_inverse(g)) == g
        for g in near
    )
    results.append(("orbital-cayley-consistency", ok, f"{len(near)} near elements"))

    ok = True
    for g in gammas:
        side0, side1 = kottwitz_stable(g)
        if side0 != side1:
            ok = False
        if classify(g) is Classification.FAR:
            total = sum(
                (theta_nonregular_far(j, g) for j in (1, 2, 3, 4)),
                CycNumber.zero(),
            )
        else:
            s12, s34 = theta_nonregular_near_sums(g)
            total = s12 + s34
        if theta5(g).scale(2) != -total:
            ok = False
    results.append(("inner-form-stability", ok, f"{len(gammas)} elements"))

    ok = row_orthogonality(component_group("Klein4")) and row_orthogonality(
        component_group("Q8")
    )
    ok = ok and (PROJ_S1 @ PROJ_S2) == PROJ_S3
    image = nonregular_image()
    ok = ok and all(centralizes(x, image) for x in image)
    for lv2 in regular_levels(config):
        gens = regular_image_generators(lv2)
        ok = ok and centralizes(PROJ_S1, gens)
        ok = ok and not centralizes(PROJ_S2, gens)
    results.append(("structure-tables", ok, "exact matrix checks"))

    return results


def run_properties(sweep: SweepConfig, out, err) -> int:
    failures = 0
    for p in sweep.primes:
        config = FieldConfig(p, sweep.precision)
        for name, ok, detail in _property_battery(config, sweep):
            record = {"p": p, "property": name, "ok": ok, "detail": detail}
            if sweep.fmt == "jsonl":
                out.write(json.dumps(record, sort_keys=True) + "\n")
            else:
                status = "PASS" if ok else "FAIL"
                out.write(f"{status}  p={p:<3} {name} ({detail})\n")
            if not ok:
                failures += 1
    err.write(f"properties: {failures} failure(s)\n")
    return 0 if failures == 0 else 1


def run_table(sweep: SweepConfig, out, err) -> int:
    for p in sweep.primes:
        config = FieldConfig(p, sweep.precision)
        group = norm_one_group(config)
        lv = (
            quadratic_level(config)
            if sweep.level is None
            else CharacterLevel(sweep.level, config.q + 1)
        )
        out.write(
            f"p={p}  eps={config.eps}  norm-one group of order {group.order},"
            f" generator ({group.generator.a},{group.generator.b})\n"
        )
        out.write(f"character level shown: k={lv.k} mod {lv.modulus}\n")
        out.write("  point      dlog  psi0  chi_k\n")
        for pt in enumerate_norm_one(config):
            val = group.character_value(lv, pt)
            out.write(
                f"  ({pt.a:>2},{pt.b:>2})   {group.dlog(pt):>3}"
                f"   {psi0_on_residue_point(config, pt):>3}   {val}\n"
            )
        out.write("\n")
    out.write("Klein-four character table (rows rho1..rho4):\n")
    out.write("        " + "  ".join(f"{e:>4}" for e in KLEIN4_ELEMENTS) + "\n")
    for j in (1, 2, 3, 4):
        out.write(
            f"  rho{j}  " + "  ".join(f"{v:>4}" for v in KLEIN4_TABLE[j]) + "\n"
        )
    out.write("virtual-character sign schedules:\n")
    for s in KLEIN4_ELEMENTS:
        out.write(f"  s={s:<3} -> {virtual_coeffs(s)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2endo",
        description=(
            "Exact verification of the endoscopic character identities for the"
            " depth-zero supercuspidal packets of SL(2) over Q_p."
        ),
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p):
        p.add_argument("--primes", default="3,5,7", help="comma-separated odd primes")
        p.add_argument("--precision", type=int, default=8, help="p-adic digits N (>= 4)")
        p.add_argument("--samples", type=int, default=20, help="samples per (prime, level)")
        p.add_argument("--seed", type=int, default=0, help="sweep seed")
        p.add_argument(
            "--format", dest="fmt", choices=("jsonl", "csv", "table"), default="jsonl"
        )
        p.add_argument("--out", default=None, help="write reports to this file")
        p.add_argument(
            "--near-valuations",
            default=f"{NEAR_DEFAULT_RANGE[0]}:{NEAR_DEFAULT_RANGE[1]}",
            help="lo:hi range of v(b) for near samples",
        )

    pv = sub.add_parser("verify", help="check the endoscopic identities")
    common(pv)
    pv.add_argument("--packet", choices=("regular", "nonregular"), default="nonregular")
    pv.add_argument("--level", type=int, default=None, help="specific regular level k")
    pv.add_argument("--s", default="s1", help="component-group element (1, s1, s2, s3)")
    pv.add_argument(
        "--class",
        dest="sample_class",
        choices=("near", "far", "both"),
        default="both",
    )

    pf = sub.add_parser("falsify", help="exhibit the ADSS-15.2 clash")
    common(pf)

    pp = sub.add_parser("properties", help="run the algebraic property battery")
    common(pp)

    pt = sub.add_parser("table", help="print residue character and structure tables")
    common(pt)
    pt.add_argument("--level", type=int, default=None, help="character level to tabulate")

    return parser


def sweep_from_args(args: argparse.Namespace) -> SweepConfig:
    primes = [int(tok) for tok in str(args.primes).split(",") if tok.strip()]
    lo, _, hi = str(args.near_valuations).partition(":")
    sweep = SweepConfig(
        mode=args.mode,
        primes=primes,
        precision=args.precision,
        samples=args.samples,
        seed=args.seed,
        packet=getattr(args, "packet", "nonregular"),
        level=getattr(args, "level", None),
        s=getattr(args, "s", "s1"),
        sample_class=getattr(args, "sample_class", "both"),
        near_val_lo=int(lo),
        near_val_hi=int(hi or lo),
        fmt=args.fmt,
        out=args.out,
    )
    return sweep


def run(sweep: SweepConfig, out, err) -> int:
    """Dispatch one sweep; returns the process exit code."""
    sweep.validate()
    for p in sweep.primes:
        FieldConfig(p, sweep.precision)  # fail fast on bad primes/precision
    runner = {
        "verify": run_verify,
        "falsify": run_falsify,
        "properties": run_properties,
        "table": run_table,
    }[sweep.mode]
    return runner(sweep, out, err)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        sweep = sweep_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    opened = None
    out = sys.stdout
    if sweep.out:
        opened = open(sweep.out, "w", encoding="utf-8", newline="")
        out = opened
    try:
        return run(sweep, out, sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if opened is not None:
            opened.close()


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()

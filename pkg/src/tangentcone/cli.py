"""Command line surface.

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 watchdog or
resource limit.  ``--format structured`` emits one self-describing JSON
document per run with a stable key order; the seed is recorded in every
report.  TANGENTCONE_CONFIG may point at a JSON file with defaults for any
of the global options.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import families
from .basis import NonHomogeneousError, MonomialIdeal
from .division import ResourceLimitError
from .families import BUILDERS, FamilyParameterError, analyze, corpus, verify_instance
from .hilbert import NotStabilizedError, hilbert_function
from .orderings import OrderingSpec
from .parser import ParseError, parse_ideal, parse_polynomial
from .poly import Polynomial
from .resolutions import StabilityError, betti_matches_hilbert, ek_betti, is_stable

VERSION = "tangentcone 0.1.0"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

CONFIG_ENV = "TANGENTCONE_CONFIG"


@dataclass
class RunConfig:
    ordering: OrderingSpec
    trunc_degree: int | None
    hf_bound: int | None
    max_pairs: int
    max_steps: int
    seed: int
    fmt: str

    def as_dict(self) -> dict:
        return {
            "vars": list(self.ordering.var_names),
            "tie_break": self.ordering.tie_break,
            "precedence": [self.ordering.var_names[i] for i in self.ordering.precedence],
            "trunc_degree": self.trunc_degree,
            "hf_bound": self.hf_bound,
            "max_pairs": self.max_pairs,
            "max_steps": self.max_steps,
            "seed": self.seed,
            "format": self.fmt,
        }


def _load_env_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangentcone",
        description="standard bases, Hilbert functions and Betti tables of "
        "ideals in local rings",
    )
    parser.add_argument("--vars", default=None, help="comma-separated variable names")
    parser.add_argument(
        "--tie-break", choices=("lex", "deglex", "degrevlex"), default=None
    )
    parser.add_argument(
        "--precedence", default=None, help="variable names from largest to smallest"
    )
    parser.add_argument("--trunc-degree", type=int, default=None)
    parser.add_argument("--hf-bound", type=int, default=None)
    parser.add_argument("--max-pairs", type=int, default=None)
    parser.add_argument("--max-steps", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=("table", "structured"), default=None)

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sb", "standard basis, leading ideal, initial forms and pair log"),
        ("hf", "Hilbert function values, multiplicity, flats"),
        ("hs", "Hilbert series numerator and denominator"),
        ("classify", "shape classification and named checks"),
        ("betti", "stability check and Betti table of a monomial ideal"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("ideal", help="comma-separated generators")
    p = sub.add_parser("family", help="build a named family instance")
    p.add_argument("name", choices=sorted(BUILDERS))
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("--verify", action="store_true")
    p = sub.add_parser("corpus", help="run all worked examples against expectations")
    p.add_argument("--parallel", action="store_true")
    p = sub.add_parser("search", help="randomized flat-count / multiplicity survey")
    p.add_argument("--type", default="2,2", help="order pair, e.g. 2,3")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--degree-bound", type=int, default=8)
    p.add_argument("--height", type=int, default=5)
    return parser


def _config_from_args(args) -> RunConfig:
    defaults = _load_env_defaults()

    def pick(attr, env_key, fallback):
        v = getattr(args, attr, None)
        if v is not None:
            return v
        return defaults.get(env_key, fallback)

    var_text = pick("vars", "vars", "x,y,z")
    if isinstance(var_text, str):
        names = tuple(n.strip() for n in var_text.split(",") if n.strip())
    else:
        names = tuple(var_text)
    tie_break = pick("tie_break", "tie_break", "degrevlex")
    prec_text = pick("precedence", "precedence", None)
    if prec_text is None:
        precedence = tuple(range(len(names)))
    else:
        prec_names = (
            tuple(n.strip() for n in prec_text.split(","))
            if isinstance(prec_text, str)
            else tuple(prec_text)
        )
        precedence = tuple(names.index(n) for n in prec_names)
    ordering = OrderingSpec.for_vars(names, tie_break=tie_break, precedence=precedence)
    trunc = pick("trunc_degree", "trunc_degree", None)
    if trunc is not None and trunc < 2:
        raise FamilyParameterError(["trunc_degree >= 2"])
    return RunConfig(
        ordering=ordering,
        trunc_degree=trunc,
        hf_bound=pick("hf_bound", "hf_bound", None),
        max_pairs=pick("max_pairs", "max_pairs", 100_000),
        max_steps=pick("max_steps", "max_steps", 1_000_000),
        seed=pick("seed", "seed", 0),
        fmt=pick("format", "format", "table"),
    )


def _document(config: RunConfig, inputs, payload: dict) -> dict:
    return {
        "version": VERSION,
        "config": config.as_dict(),
        "inputs": inputs,
        **payload,
    }


def _emit(doc: dict, config: RunConfig, table_lines) -> None:
    if config.fmt == "structured":
        print(json.dumps(doc, indent=2))
    else:
        for line in table_lines:
            print(line)


def _analysis_payload(analysis, config: RunConfig) -> dict:
    sb = analysis.basis
    payload = {
        "leading_ideal": [
            config.ordering.monomial_str(m) for m in sb.leading_ideal.min_gens
        ],
        "initial_forms": [str(g) for g in sb.initial_forms],
        "basis": [str(g) for g in sb.generators],
        "pair_log": [
            {
                "i": rec.i,
                "j": rec.j,
                "lcm": config.ordering.monomial_str(rec.lcm),
                "status": rec.status,
                "result_index": rec.result_index,
            }
            for rec in sb.pair_log
        ],
        "dimension": analysis.dimension,
        "hf": {
            "values": list(analysis.hf.values),
            "multiplicity": analysis.hf.stable_value,
            "reduction_number": analysis.hf.stabilization_index,
        },
    }
    if analysis.hs is not None:
        payload["hs"] = {
            "numerator": list(analysis.hs.numerator),
            "denominator_exponent": analysis.hs.denominator_exponent,
        }
    if analysis.classification is not None:
        cls = analysis.classification
        payload["classification"] = {
            "multiplicity": cls.multiplicity,
            "reduction_number": cls.reduction_number,
            "first_flat": cls.first_flat,
            "flats": list(cls.flats),
            "flat_count": cls.flat_count,
            "shape": cls.shape,
            "pair_type": list(analysis.pair_type) if analysis.pair_type else None,
            "checks": cls.checks,
        }
    return payload


def _run_pipeline(args, config: RunConfig) -> int:
    gens = parse_ideal(args.ideal, config.ordering)
    analysis = analyze(
        gens,
        config.ordering,
        hf_bound=config.hf_bound,
        max_pairs=config.max_pairs,
        max_steps=config.max_steps,
    )
    payload = _analysis_payload(analysis, config)
    doc = _document(config, [str(g) for g in gens], payload)
    lines = []
    if args.command == "sb":
        lines.append("leading ideal: " + ", ".join(payload["leading_ideal"]))
        lines.append("initial forms: " + "; ".join(payload["initial_forms"]))
        lines.append("basis:")
        lines.extend(f"  [{i}] {g}" for i, g in enumerate(payload["basis"]))
        lines.append("pair log:")
        lines.extend(
            "  ({i},{j}) lcm={lcm} {status}{extra}".format(
                i=r["i"],
                j=r["j"],
                lcm=r["lcm"],
                status=r["status"],
                extra=f" -> [{r['result_index']}]" if r["result_index"] is not None else "",
            )
            for r in payload["pair_log"]
        )
    elif args.command == "hf":
        hf = payload["hf"]
        lines.append("hf: " + " ".join(str(v) for v in hf["values"]))
        lines.append(f"multiplicity: {hf['multiplicity']}")
        lines.append(f"reduction number: {hf['reduction_number']}")
        if "classification" in payload:
            lines.append(f"flats: {payload['classification']['flats']}")
        lines.append(f"dimension: {payload['dimension']}")
    elif args.command == "hs":
        if "hs" not in payload:
            raise NotStabilizedError("Hilbert series unavailable: dimension exceeds one")
        hs = payload["hs"]
        lines.append(f"numerator: {hs['numerator']}")
        lines.append(f"denominator: (1 - t)^{hs['denominator_exponent']}")
    elif args.command == "classify":
        if "classification" not in payload:
            raise NotStabilizedError("classification unavailable: no stable value")
        cls = payload["classification"]
        lines.append(f"shape: {cls['shape']}")
        lines.append(f"multiplicity: {cls['multiplicity']}")
        lines.append(f"first flat: {cls['first_flat']}  flats: {cls['flats']}")
        lines.append(f"pair type: {cls['pair_type']}")
        lines.extend(f"check {k}: {v}" for k, v in cls["checks"].items())
    _emit(doc, config, lines)
    return EXIT_OK


def _run_betti(args, config: RunConfig) -> int:
    gens = parse_ideal(args.ideal, config.ordering)
    monos = []
    for g in gens:
        if len(g) != 1:
            raise ParseError("betti expects a monomial ideal", 0)
        monos.append(g.leading_monomial)
    J = MonomialIdeal.from_monomials(config.ordering.num_vars, monos)
    stable = is_stable(J, config.ordering.precedence)
    payload: dict = {"stable": stable}
    lines = [f"stable: {stable}"]
    code = EXIT_OK
    if stable:
        table = ek_betti(J, config.ordering.precedence)
        bound = max(table.max_shift + 3, J.max_degree + 2)
        hf = hilbert_function(J, bound, detect_stabilization=False)
        consistent = betti_matches_hilbert(table, hf.values)
        payload["betti"] = [list(entry) for entry in table.entries]
        payload["k_polynomial"] = list(table.k_polynomial())
        payload["checks"] = {"k_polynomial_identity": consistent}
        lines.append("betti table (step, degree, rank):")
        lines.extend(f"  {i} {j} {r}" for i, j, r in table.entries)
        lines.append(f"k-polynomial identity: {'ok' if consistent else 'FAILED'}")
        if not consistent:
            code = EXIT_MISMATCH
    doc = _document(config, [str(g) for g in gens], payload)
    _emit(doc, config, lines)
    return code


def _parse_family_params(pairs, ordering) -> dict:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise FamilyParameterError([f"parameter {item!r} is not key=value"])
        key, _, raw = item.partition("=")
        try:
            out[key] = int(raw)
        except ValueError:
            out[key] = parse_polynomial(raw, ordering)
    return out


def _run_family(args, config: RunConfig) -> int:
    params = _parse_family_params(args.params, config.ordering)
    inst = BUILDERS[args.name](ordering=config.ordering, **params)
    payload: dict = {
        "family": inst.name,
        "parameters": {k: str(v) for k, v in inst.parameters.items()},
        "generators": [str(g) for g in inst.generators],
    }
    lines = [f"family: {inst.name}"]
    lines.extend(f"  {k} = {v}" for k, v in payload["parameters"].items())
    lines.append("generators: " + "; ".join(payload["generators"]))
    code = EXIT_OK
    if args.verify:
        checks = verify_instance(
            inst, max_pairs=config.max_pairs, max_steps=config.max_steps
        )
        payload["checks"] = [
            {
                "name": c.name,
                "expected": str(c.expected),
                "actual": str(c.actual),
                "ok": c.ok,
            }
            for c in checks
        ]
        for c in checks:
            mark = "ok" if c.ok else "MISMATCH"
            lines.append(f"  {mark} {c.name}: expected {c.expected}, got {c.actual}")
        if not all(c.ok for c in checks):
            code = EXIT_MISMATCH
    doc = _document(config, payload["generators"], payload)
    _emit(doc, config, lines)
    return code


def _corpus_entry_report(index: int) -> tuple[int, str, list[dict]]:
    inst = corpus()[index]
    checks = verify_instance(inst)
    return (
        index,
        inst.name,
        [
            {
                "name": c.name,
                "expected": str(c.expected),
                "actual": str(c.actual),
                "ok": c.ok,
            }
            for c in checks
        ],
    )


def _run_corpus(args, config: RunConfig) -> int:
    entries = corpus(config.ordering)
    indices = list(range(len(entries)))
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_corpus_entry_report, indices))
    else:
        reports = [_corpus_entry_report(i) for i in indices]
    reports.sort(key=lambda r: r[0])
    lines = []
    payload_entries = []
    mismatch = False
    for _, name, checks in reports:
        ok = all(c["ok"] for c in checks)
        mismatch = mismatch or not ok
        lines.append(f"{'ok      ' if ok else 'MISMATCH'} {name}")
        for c in checks:
            if not c["ok"]:
                lines.append(
                    f"    {c['name']}: expected {c['expected']}, got {c['actual']}"
                )
        payload_entries.append({"name": name, "ok": ok, "checks": checks})
    doc = _document(
        config, [e.name for e in entries], {"entries": payload_entries}
    )
    _emit(doc, config, lines)
    return EXIT_MISMATCH if mismatch else EXIT_OK


def _run_search(args, config: RunConfig) -> int:
    a_text, _, b_text = args.type.partition(",")
    a, b = int(a_text), int(b_text)
    if a != 2:
        raise FamilyParameterError(["search supports order pairs (2, b) only"])
    rng = random.Random(config.seed)
    lines = [
        f"search type=(2,{b}) samples={args.samples} seed={config.seed} "
        f"degree_bound={args.degree_bound} height={args.height}"
    ]
    findings = []
    skipped = 0
    for k in range(args.samples):
        if b == 2:
            inst = families.random_type22_ideal(
                rng,
                degree_bound=args.degree_bound,
                height=args.height,
                ordering=config.ordering,
            )
        else:
            inst = families.random_type2b_ideal(
                rng,
                b,
                degree_bound=args.degree_bound,
                height=args.height,
                ordering=config.ordering,
            )
        try:
            analysis = analyze(
                inst.generators,
                config.ordering,
                max_pairs=config.max_pairs,
                max_steps=config.max_steps,
            )
        except ResourceLimitError:
            skipped += 1
            continue
        cls = analysis.classification
        if cls is None or cls.first_flat is None:
            continue
        e, n, p = cls.multiplicity, cls.first_flat, cls.flat_count
        if e > (p + 1) * n:
            findings.append(
                {
                    "sample": k,
                    "generators": [str(g) for g in inst.generators],
                    "multiplicity": e,
                    "first_flat": n,
                    "flat_count": p,
                }
            )
            lines.append(
                f"counterexample at sample {k}: e={e} > (p+1)n={(p + 1) * n}; "
                "generators: " + "; ".join(str(g) for g in inst.generators)
            )
    lines.append(
        f"done: {args.samples} samples, {len(findings)} counterexamples, "
        f"{skipped} skipped (watchdog)"
    )
    doc = _document(
        config,
        {"type": [2, b], "samples": args.samples},
        {"findings": findings, "skipped": skipped},
    )
    _emit(doc, config, lines)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command in ("sb", "hf", "hs", "classify"):
            return _run_pipeline(args, config)
        if args.command == "betti":
            return _run_betti(args, config)
        if args.command == "family":
            return _run_family(args, config)
        if args.command == "corpus":
            return _run_corpus(args, config)
        if args.command == "search":
            return _run_search(args, config)
        parser.error(f"unknown command {args.command!r}")
    except (ParseError, FamilyParameterError, NonHomogeneousError, NotStabilizedError,
            StabilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

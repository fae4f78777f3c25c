"""Command-line frontend.

Parses a JSON job configuration, runs the requested pipeline stage, and
writes a deterministic JSON report to stdout (and optionally to a file):
identical configurations produce byte-identical reports, independent of
thread count.  Human diagnostics, including timing, go to stderr.  Exit
codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .assembly import assemble, rank1_canonical_identity, verify_cellularity, verify_relations
from .errors import CapExceededError, ConfigError, EngineError, UnsupportedCharacteristicError
from .rootdata import RootDatum, build_flag, build_root_datum, saturate
from .scalars import FieldContext
from .specialize import (
    decomposition_matrix,
    gram_determinant,
    semisimplicity_report,
    specialize_module,
)

DEFAULT_CAPS = {
    "depth": 3,
    "samples": 50,
    "cyclotomic_scan": 50,
    "rank": 4,
    "orbit": 10000,
}


class JobConfig:
    """A parsed job document: datum spec, pi seeds, field, caps."""

    def __init__(self, doc: dict):
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        unknown = set(doc) - {"datum", "pi", "field", "caps"}
        if unknown:
            raise ConfigError("unknown config keys: %s" % sorted(unknown))
        self.datum_spec = doc.get("datum", {})
        if not isinstance(self.datum_spec, dict):
            raise ConfigError("datum must be an object")
        bad = set(self.datum_spec) - {"preset", "rank", "cartan", "alpha", "alphav"}
        if bad:
            raise ConfigError("unknown datum keys: %s" % sorted(bad))
        pi_spec = doc.get("pi", {})
        if not isinstance(pi_spec, dict) or set(pi_spec) - {"seeds"}:
            raise ConfigError("pi must be an object with key 'seeds'")
        self.seeds = [tuple(int(c) for c in seed)
                      for seed in pi_spec.get("seeds", [])]
        self.field_spec = doc.get("field", "generic")
        caps = dict(DEFAULT_CAPS)
        user_caps = doc.get("caps", {})
        if not isinstance(user_caps, dict) or set(user_caps) - set(DEFAULT_CAPS):
            raise ConfigError("unknown caps keys: %s"
                              % sorted(set(user_caps) - set(DEFAULT_CAPS)))
        caps.update({k: int(v) for k, v in user_caps.items()})
        self.caps = caps

    def echo(self) -> dict:
        return {
            "datum": self.datum_spec,
            "pi": {"seeds": [list(s) for s in self.seeds]},
            "field": self.field_spec,
            "caps": self.caps,
        }

    def build_datum(self) -> RootDatum:
        spec = self.datum_spec
        if "preset" in spec:
            datum = build_root_datum(spec["preset"], spec.get("rank"))
        else:
            if "cartan" not in spec:
                raise ConfigError("datum needs a preset or explicit matrices")
            datum = build_root_datum(cartan=spec["cartan"],
                                     alpha=spec.get("alpha"),
                                     alphav=spec.get("alphav"))
        if datum.rank > self.caps["rank"]:
            raise CapExceededError(
                "rank %d exceeds cap %d (raise caps.rank to override)"
                % (datum.rank, self.caps["rank"]))
        return datum

    def field_context(self) -> FieldContext:
        return parse_field(self.field_spec)


def parse_field(spec) -> FieldContext:
    """Field spec: "generic" | "q=FRACTION" | "cyclotomic=L" or the object
    forms {"q": ...}, {"cyclotomic": ...}.  Characteristic p is rejected."""
    if isinstance(spec, dict):
        if spec.get("char", 0) not in (0, None):
            raise UnsupportedCharacteristicError(
                "specialization fields must have characteristic zero")
        keys = set(spec) - {"char"}
        if keys == {"q"}:
            return FieldContext.rational_point(Fraction(str(spec["q"])))
        if keys == {"cyclotomic"}:
            return FieldContext.cyclotomic_point(int(spec["cyclotomic"]))
        raise ConfigError("bad field object: %r" % (spec,))
    if not isinstance(spec, str):
        raise ConfigError("bad field spec: %r" % (spec,))
    if spec == "generic":
        return FieldContext.generic()
    if spec.startswith("q="):
        try:
            return FieldContext.rational_point(Fraction(spec[2:]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError("bad rational point %r: %s" % (spec, exc))
    if spec.startswith("cyclotomic="):
        try:
            return FieldContext.cyclotomic_point(int(spec[11:]))
        except ValueError as exc:
            raise ConfigError("bad cyclotomic order %r: %s" % (spec, exc))
    raise ConfigError("bad field spec: %r" % (spec,))


# -- serialization helpers ----------------------------------------------------

def weight_json(mu) -> list:
    return [int(x) for x in mu]


def word_json(word) -> list:
    return [[int(i), int(a)] for i, a in word]


def combo_json(combo) -> list:
    return [[word_json(w), str(c)] for w, c in combo]


def char_json(char: dict) -> list:
    return [[weight_json(mu), int(m)] for mu, m in sorted(char.items())]


def matrix_json(m) -> list:
    return [[str(x) for x in row] for row in m.entries]


def _check_json(rep) -> list:
    return [{"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in rep.checks]


# -- pipeline ------------------------------------------------------------------

class Pipeline:
    """Shared lazily-built state for one job."""

    def __init__(self, config: JobConfig, threads: int = 1):
        self.config = config
        self.threads = threads
        self.datum = config.build_datum()
        self.pi = saturate(self.datum, config.seeds)
        if len(self.pi.orbit_weights()) > config.caps["orbit"]:
            raise CapExceededError(
                "|W pi| exceeds cap %d (raise caps.orbit to override)"
                % config.caps["orbit"])
        self.flag = build_flag(self.pi)
        self._algebra = None

    def algebra(self):
        if self._algebra is None:
            self._algebra = assemble(self.pi, self.flag, threads=self.threads)
        return self._algebra

    def modules(self) -> dict:
        return self.algebra().modules

    def lambdas(self, lam):
        if lam is None:
            return list(self.flag)
        lam = tuple(lam)
        if lam not in self.pi:
            raise ConfigError("lambda %r is not in pi" % (lam,))
        return [lam]


def cmd_datum(p: Pipeline, args) -> dict:
    d = p.datum
    return {
        "name": d.name,
        "rank": d.rank,
        "lattice_rank": d.n,
        "cartan_matrix": [list(row) for row in d.cartan.cartan_matrix()],
        "symmetrizer": list(d.d),
        "alpha": [list(a) for a in d.alpha],
        "alphav": [list(a) for a in d.alphav],
        "weyl_order": d.weyl_order,
        "positive_roots": [weight_json(rt) for rt, _ in d.positive_roots],
    }


def cmd_saturate(p: Pipeline, args) -> dict:
    return {
        "pi": [weight_json(mu) for mu in p.pi],
        "orbit_sizes": [[weight_json(mu), len(p.datum.weyl_orbit(mu))]
                        for mu in p.pi],
        "orbit_weight_count": len(p.pi.orbit_weights()),
        "flag": [weight_json(mu) for mu in p.flag],
    }


def cmd_module(p: Pipeline, args) -> dict:
    out = []
    for lam in p.lambdas(args.lam):
        cm = p.modules()[lam]
        out.append({
            "lambda": weight_json(lam),
            "dim": cm.dim,
            "character": char_json(cm.character()),
            "weights": [weight_json(mu) for mu in cm.weights],
            "word_counts": [[weight_json(mu), len(cm.spaces[mu].words)]
                            for mu in cm.weights],
            "basis_words": [[weight_json(mu), word_json(w)]
                            for mu, w in cm.basis_index],
        })
    return {"modules": out}


def cmd_gram(p: Pipeline, args) -> dict:
    scan = p.config.caps["cyclotomic_scan"]
    out = []
    for lam in p.lambdas(args.lam):
        cm = p.modules()[lam]
        spaces = []
        for mu in cm.weights:
            sp = cm.spaces[mu]
            rec = gram_determinant(cm, mu, scan_bound=scan)
            spaces.append({
                "weight": weight_json(mu),
                "words": [word_json(w) for w in sp.words],
                "gram": matrix_json(sp.gram),
                "rank": sp.rank,
                "determinant": str(rec.det),
                "cyclotomic_factors": [[ell, m] for ell, m
                                       in sorted(rec.factors.items())],
                "cofactor": str(rec.cofactor),
            })
        out.append({"lambda": weight_json(lam), "weight_spaces": spaces})
    return {"gram": out}


def cmd_cellbasis(p: Pipeline, args) -> dict:
    s = p.algebra()
    elements = s.cellular_basis(integral=args.integral)
    payload = {
        "basis_kind": "integral" if args.integral else "generic",
        "count": len(elements),
        "dimension": s.dim,
        "elements": [{
            "lambda": weight_json(el.lam),
            "left": combo_json(el.left),
            "right": combo_json(el.right),
        } for el in elements],
    }
    if args.matrices:
        for entry, el in zip(payload["elements"], elements):
            entry["matrix"] = {
                str(weight_json(lam)): matrix_json(blk)
                for lam, blk in sorted(el.matrix.blocks.items())}
    return payload


def cmd_specialize(p: Pipeline, args) -> dict:
    ctx = p.config.field_context()
    out = []
    for lam in p.lambdas(args.lam):
        cm = p.modules()[lam]
        spec = specialize_module(cm, ctx)
        out.append({
            "lambda": weight_json(lam),
            "dim_delta": spec.dim_delta,
            "dim_simple": spec.dim_simple,
            "char_simple": char_json(spec.char_simple()),
            "radical_dims": [[weight_json(mu), len(spec.radicals[mu])]
                             for mu in cm.weights],
        })
    return {"field": ctx.label(), "specializations": out}


def cmd_decomp(p: Pipeline, args) -> dict:
    ctx = p.config.field_context()
    dm = decomposition_matrix(p.modules(), p.flag, ctx)
    ss = semisimplicity_report(p.modules(), p.flag, ctx)
    return {
        "field": ctx.label(),
        "order": [weight_json(mu) for mu in dm.order],
        "rows": [[weight_json(lam), dm.row(lam)] for lam in dm.order],
        "identity": dm.is_identity(),
        "semisimple": ss.semisimple,
        "vanishing_witnesses": [[weight_json(lam), weight_json(mu)]
                                for lam, mu in ss.witnesses],
    }


def cmd_verify(p: Pipeline, args) -> dict:
    s = p.algebra()
    caps = p.config.caps
    relations = verify_relations(s, depth=caps["depth"],
                                 samples=caps["samples"])
    cellularity = verify_cellularity(s)
    payload = {
        "relations": _check_json(relations),
        "cellularity": _check_json(cellularity),
        "passed": relations.ok and cellularity.ok,
    }
    if p.datum.rank == 1:
        ok = all(rank1_canonical_identity(s, lam[0]) for lam in p.pi)
        payload["rank1_canonical_identity"] = ok
        payload["passed"] = payload["passed"] and ok
    return payload


COMMANDS = {
    "datum": cmd_datum,
    "saturate": cmd_saturate,
    "module": cmd_module,
    "gram": cmd_gram,
    "cellbasis": cmd_cellbasis,
    "specialize": cmd_specialize,
    "decomp": cmd_decomp,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qschur",
        description="Exact computations in generalized q-Schur algebras.")
    parser.add_argument("command", choices=sorted(COMMANDS),
                        help="pipeline stage to run")
    parser.add_argument("--config", required=True, metavar="PATH",
                        help="JSON job configuration document")
    parser.add_argument("--lambda", dest="lam", metavar="C1,C2,...",
                        help="restrict to one weight of pi")
    parser.add_argument("--field", metavar="SPEC",
                        help="override the config field: "
                             "generic | q=FRACTION | cyclotomic=L")
    parser.add_argument("--out", metavar="PATH",
                        help="also write the report to a file")
    parser.add_argument("--depth", type=int, metavar="N",
                        help="override caps.depth (divided powers)")
    parser.add_argument("--threads", type=int, default=1, metavar="N",
                        help="parallel cell-module builds")
    parser.add_argument("--integral", action="store_true",
                        help="cellbasis: use the integral lattice bases")
    parser.add_argument("--matrices", action="store_true",
                        help="cellbasis: include the block matrices")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError("config parse error at line %d column %d: %s"
                                  % (exc.lineno, exc.colno, exc.msg))
        config = JobConfig(doc)
        if args.field is not None:
            parse_field(args.field)  # validate before overriding
            config.field_spec = args.field
        if args.depth is not None:
            config.caps["depth"] = args.depth
        if args.lam is not None:
            args.lam = tuple(int(c) for c in args.lam.split(","))
        pipeline = Pipeline(config, threads=max(1, args.threads))
        payload = COMMANDS[args.command](pipeline, args)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except EngineError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    report = {
        "command": args.command,
        "config": config.echo(),
        "engine": {"name": "qschur", "version": __version__},
        "payload": payload,
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elapsed = time.monotonic() - start
    print("%s finished in %.3f s" % (args.command, elapsed), file=sys.stderr)
    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

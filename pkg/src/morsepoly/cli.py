"""Command-line interface.

Every command is a thin adapter over the library: it loads files, calls the
same functions a library user would, and serializes the result.  JSON output
is the machine contract (key-sorted, reproducible byte-for-byte); text
output is for humans.

Exit codes: 0 on success, 1 when a verified identity fails or --strict is
set and a property check fails, 2 for unreadable/malformed input or inputs
outside the required hypotheses.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import jsonio
from .chain_index import verify_representation
from .complexes import (
    FacePoset,
    dimension_morse,
    face_poset_cellular,
    face_poset_simplicial,
    morse_inequality_report,
)
from .errors import Mismatch, MorsePolyError
from .generators import gen_complex, gen_morse
from .geometry import cross_check, embed_vertices
from .morse import MorseFunction, classify, normalize
from .poset import (
    ParityRank,
    Poset,
    build_poset,
    compute_parity_rank,
    euler_characteristic,
    is_downward_eulerian,
    is_two_wide,
    order_complex,
)

INPUT_ERRORS_EXIT = 2
MISMATCH_EXIT = 1


@dataclass
class RunConfig:
    """Parsed invocation; the seed fully determines generator output."""

    command: str
    input_path: str | None = None
    morse_path: str | None = None
    output_path: str | None = None
    fmt: str = "json"
    seed: int = 0
    strict: bool = False
    kind: str = "complex"
    vertices: int = 5
    dimension: int = 2
    density: float = 0.5
    csv_path: str | None = None


@dataclass
class LoadedInput:
    kind: str  # "poset" | "simplicial" | "cellular"
    poset: Poset
    face: FacePoset | None = None


def _load_input(path: str) -> LoadedInput:
    obj = jsonio.load_document(path)
    kind = jsonio.detect_kind(obj)
    if kind == "poset":
        elements, covers = jsonio.poset_from_obj(obj)
        return LoadedInput(kind="poset", poset=build_poset(elements, covers))
    spec = jsonio.complex_from_obj(obj)
    face = face_poset_simplicial(spec) if kind == "simplicial" else face_poset_cellular(spec)
    return LoadedInput(kind=kind, poset=face.poset, face=face)


def _load_morse(config: RunConfig, loaded: LoadedInput) -> MorseFunction:
    if config.morse_path is not None:
        return jsonio.morse_from_obj(jsonio.load_document(config.morse_path))
    if loaded.face is not None:
        return dimension_morse(loaded.poset, loaded.face.rank)
    raise MorsePolyError(
        "--morse is required for poset inputs (complex inputs default to the "
        "dimension function)"
    )


def _emit(config: RunConfig, payload: str) -> None:
    if config.output_path:
        Path(config.output_path).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _check_payload(loaded: LoadedInput) -> dict:
    poset = loaded.poset
    wide = is_two_wide(poset)
    mu = compute_parity_rank(poset)
    payload: dict = {
        "input": loaded.kind,
        "element_count": len(poset),
        "two_wide": {
            "holds": bool(wide),
            "witness": list(wide.witness) if wide.witness else None,
        },
    }
    if isinstance(mu, ParityRank):
        eulerian = is_downward_eulerian(poset, mu)
        payload["parity_rank"] = {
            "exists": True,
            "values": {e: mu.values[e] for e in sorted(poset.elements)},
        }
        payload["downward_eulerian"] = {
            "holds": bool(eulerian),
            "violations": [
                {"element": e, "chi": chi, "required": required}
                for e, chi, required in eulerian.violations
            ],
        }
        all_hold = bool(wide) and bool(eulerian)
    else:
        payload["parity_rank"] = {
            "exists": False,
            "conflict": {
                "element": mu.element,
                "values": list(mu.values),
                "via": list(mu.via),
            },
        }
        payload["downward_eulerian"] = {"holds": False, "violations": []}
        all_hold = False
    if loaded.kind == "cellular":
        payload["note"] = (
            "poset-level necessary conditions only; regularity of the cell "
            "description is not verified"
        )
    payload["all_hold"] = all_hold
    return payload


def _check_text(payload: dict) -> str:
    lines = [
        f"input: {payload['input']} ({payload['element_count']} elements)",
        f"2-wide: {payload['two_wide']['holds']}"
        + (
            f" (witness {tuple(payload['two_wide']['witness'])})"
            if payload["two_wide"]["witness"]
            else ""
        ),
    ]
    parity = payload["parity_rank"]
    if parity["exists"]:
        lines.append("parity rank function: exists")
        eulerian = payload["downward_eulerian"]
        lines.append(f"downward Eulerian: {eulerian['holds']}")
        for violation in eulerian["violations"]:
            lines.append(
                f"  violated at {violation['element']}: chi = {violation['chi']}, "
                f"required {violation['required']}"
            )
    else:
        conflict = parity["conflict"]
        lines.append(
            f"parity rank function: none (element {conflict['element']} receives "
            f"{conflict['values'][0]} via {conflict['via'][0]} and "
            f"{conflict['values'][1]} via {conflict['via'][1]})"
        )
    if "note" in payload:
        lines.append(f"note: {payload['note']}")
    lines.append(f"all properties hold: {payload['all_hold']}")
    return "\n".join(lines) + "\n"


def cmd_check(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    payload = _check_payload(loaded)
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        _emit(config, _check_text(payload))
    if config.strict and not payload["all_hold"]:
        return MISMATCH_EXIT
    return 0


def cmd_euler(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    complex_ = order_complex(loaded.poset)
    counts = complex_.counts_by_dimension()
    payload = {
        "element_count": len(loaded.poset),
        "simplex_count": len(complex_.simplices),
        "simplices_by_dimension": list(counts),
        "euler_characteristic": euler_characteristic(complex_),
    }
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        _emit(
            config,
            f"order complex: {payload['simplex_count']} simplices over "
            f"{payload['element_count']} vertices (by dimension: {counts})\n"
            f"Euler characteristic: {payload['euler_characteristic']}\n",
        )
    return 0


def cmd_classify(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    f = _load_morse(config, loaded)
    classification = classify(loaded.poset, f)
    critical = sorted(classification.critical_set())
    payload = {
        "verdicts": dict(sorted(classification.verdicts.items())),
        "witnesses": {
            e: {"neighbor": w[0], "direction": w[1]}
            for e, w in sorted(classification.witnesses.items())
        },
        "counts": {
            "critical": len(critical),
            "ordinary": len(loaded.poset) - len(critical),
        },
    }
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        lines = [f"critical: {len(critical)}, ordinary: {payload['counts']['ordinary']}"]
        for e, verdict in sorted(classification.verdicts.items()):
            if verdict == "critical":
                lines.append(f"  {e}: critical")
            else:
                neighbor, direction = classification.witnesses[e]
                lines.append(f"  {e}: ordinary (witness {neighbor} {direction})")
        _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_normalize(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    f = _load_morse(config, loaded)
    g = normalize(loaded.poset, f)
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(jsonio.morse_to_obj(g)))
    else:
        lines = [f"{e}: {jsonio.format_rational(v)}" for e, v in g.sorted_items()]
        _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_index(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    f = _load_morse(config, loaded)
    report = verify_representation(loaded.poset, f)
    payload = jsonio.index_report_to_obj(report)
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        lines = [
            f"{entry.element}: index {entry.computed} "
            f"({'critical' if entry.critical else 'ordinary'})"
            for entry in report.entries
        ]
        lines.append(
            f"sum {report.total} = chi {report.chi}; "
            f"critical even/odd: {report.n_even}/{report.n_odd}"
        )
        _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_embed(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    f = _load_morse(config, loaded)
    g = normalize(loaded.poset, f)
    embedding = embed_vertices(loaded.poset, g)
    payload = jsonio.embedding_to_obj(embedding)
    if config.csv_path:
        Path(config.csv_path).write_text(
            jsonio.embedding_to_csv(embedding), encoding="utf-8"
        )
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        lines = [f"dimension: {embedding.dimension}"]
        for e in sorted(embedding.coordinates):
            coords = ", ".join(jsonio.format_rational(x) for x in embedding.coordinates[e])
            lines.append(f"{e}: ({coords})")
        _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_verify(config: RunConfig) -> int:
    loaded = _load_input(config.input_path)
    poset = loaded.poset
    f = _load_morse(config, loaded)
    report = verify_representation(poset, f)  # checks hypotheses, raises on violation

    geometric = {}
    geometry_ok = True
    mismatches: list[tuple[str, int, int]] = []
    if len(poset) > 0:
        g = normalize(poset, f)
        geo = cross_check(poset, g)
        geometric = dict(geo.indices)
        geometry_ok = geo.ok
        mismatches = list(geo.mismatches)

    payload = {
        "status": "verified" if geometry_ok else "mismatch",
        "entries": [
            {
                "element": entry.element,
                "computed": entry.computed,
                "predicted": entry.predicted,
                "geometric": geometric.get(entry.element, entry.computed),
                "critical": entry.critical,
            }
            for entry in report.entries
        ],
        "totals": {
            "sum": report.total,
            "euler_characteristic": report.chi,
            "n_even_critical": report.n_even,
            "n_odd_critical": report.n_odd,
        },
    }
    if loaded.face is not None:
        # Rank is available, so also report critical cells per dimension.
        inequality = morse_inequality_report(poset, loaded.face.rank, f)
        payload["critical_by_dimension"] = list(inequality.counts)
    if not geometry_ok:
        payload["mismatches"] = [
            {"element": e, "geometric": geo_idx, "combinatorial": comb_idx}
            for e, geo_idx, comb_idx in mismatches
        ]
    if config.fmt == "json":
        _emit(config, jsonio.dumps_canonical(payload))
    else:
        lines = [f"status: {payload['status']}"]
        for entry in payload["entries"]:
            lines.append(
                f"  {entry['element']}: index {entry['computed']} "
                f"(predicted {entry['predicted']}, geometric {entry['geometric']}, "
                f"{'critical' if entry['critical'] else 'ordinary'})"
            )
        totals = payload["totals"]
        lines.append(
            f"sum {totals['sum']} = chi {totals['euler_characteristic']}; "
            f"N0 - N1 = {totals['n_even_critical']} - {totals['n_odd_critical']}"
        )
        if "critical_by_dimension" in payload:
            lines.append(f"critical cells by dimension: {payload['critical_by_dimension']}")
        _emit(config, "\n".join(lines) + "\n")
    return 0 if geometry_ok else MISMATCH_EXIT


def cmd_gen(config: RunConfig) -> int:
    if config.kind == "complex":
        spec = gen_complex(config.seed, config.vertices, config.dimension, config.density)
        _emit(config, jsonio.dumps_canonical(jsonio.complex_to_obj(spec)))
        return 0
    if config.kind == "morse":
        if not config.input_path:
            raise MorsePolyError("gen --kind morse requires --in POSET_OR_COMPLEX")
        loaded = _load_input(config.input_path)
        f = gen_morse(config.seed, loaded.poset)
        _emit(config, jsonio.dumps_canonical(jsonio.morse_to_obj(f)))
        return 0
    raise MorsePolyError(f"unknown gen kind {config.kind!r}")


_COMMANDS = {
    "check": cmd_check,
    "euler": cmd_euler,
    "classify": cmd_classify,
    "normalize": cmd_normalize,
    "index": cmd_index,
    "embed": cmd_embed,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsepoly",
        description=(
            "Discrete Morse functions on finite posets: structural checks, "
            "classification, normalization, critical-point indices, and exact "
            "geometric verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, needs_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if needs_input:
            p.add_argument("--in", dest="input_path", required=True, metavar="FILE",
                           help="poset or complex JSON file")
        p.add_argument("--out", dest="output_path", metavar="FILE",
                       help="write the report here instead of stdout")
        p.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
        return p

    add("check", "report the three structural poset properties")
    add("euler", "Euler characteristic of the order complex")
    for name, help_ in (
        ("classify", "critical/ordinary verdict per element"),
        ("normalize", "equivalent injective, obstruction-free function"),
        ("index", "per-element indices and totals (combinatorial)"),
        ("embed", "exact coordinates for the order complex"),
        ("verify", "full combinatorial + geometric verification"),
    ):
        p = add(name, help_)
        p.add_argument("--morse", dest="morse_path", metavar="FILE",
                       help="function JSON file (complex inputs default to dimension)")
        if name == "embed":
            p.add_argument("--csv", dest="csv_path", metavar="FILE",
                           help="also write coordinates as CSV")
    p = add("gen", "seeded generators for complexes and functions", needs_input=False)
    p.add_argument("--in", dest="input_path", metavar="FILE",
                   help="poset or complex file (required for --kind morse)")
    p.add_argument("--kind", choices=("complex", "morse"), default="complex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--dim", dest="dimension", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)

    sub.choices["check"].add_argument(
        "--strict", action="store_true",
        help="exit 1 when any structural property fails",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        input_path=getattr(args, "input_path", None),
        morse_path=getattr(args, "morse_path", None),
        output_path=getattr(args, "output_path", None),
        fmt=getattr(args, "fmt", "json"),
        seed=getattr(args, "seed", 0),
        strict=getattr(args, "strict", False),
        kind=getattr(args, "kind", "complex"),
        vertices=getattr(args, "vertices", 5),
        dimension=getattr(args, "dimension", 2),
        density=getattr(args, "density", 0.5),
        csv_path=getattr(args, "csv_path", None),
    )
    try:
        return _COMMANDS[config.command](config)
    except Mismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return MISMATCH_EXIT
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return MISMATCH_EXIT
    except MorsePolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERRORS_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERRORS_EXIT


if __name__ == "__main__":
    raise SystemExit(main())

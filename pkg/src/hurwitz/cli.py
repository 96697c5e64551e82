"""Command-line interface.

Every command writes one JSON document (stable field order) to ``--out`` or
standard output; ``--human`` prints a table rendering instead.  Exit codes:
0 success, 2 configuration error, 3 resource limit (checkpoint written when
``--checkpoint`` is given), 4 a computed result contradicts a closed-form
expectation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import DATA, __version__, braid, generic, heuristics, orbit
from .cyclo import CharTableError, floor_bound_check, parse_character_table, structure_constant
from .nielsen import NielsenError, RawTuple, count_class_systems, space_for
from .permgroup import ClassVector, FiniteGroup, GroupError, Permutation, is_rational_class, load_group

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_LIMIT = 3
EXIT_COUNTEREXAMPLE = 4


class ConfigError(Exception):
    pass


class Counterexample(Exception):
    def __init__(self, doc: dict):
        super().__init__("counterexample")
        self.doc = doc


# ---------------------------------------------------------------------------
# inputs


def _resolve(value: str, folder: str, suffix: str = ".txt") -> Path:
    p = Path(value)
    if p.exists():
        return p
    bundled = DATA / folder / f"{value}{suffix}"
    if bundled.exists():
        return bundled
    raise ConfigError(f"no such {folder[:-1]} file or bundled name: {value}")


def load_job_group(args) -> FiniteGroup:
    if not args.group:
        raise ConfigError("--group is required")
    path = _resolve(args.group, "groups")
    names = args.names
    if names is None:
        bundled = DATA / "names" / path.name
        names = bundled if bundled.exists() and path.parent == DATA / "groups" else None
    else:
        names = _resolve(names, "names")
    return load_group(path, names)


def load_table(args):
    if not args.chartab:
        raise ConfigError("--chartab is required")
    path = _resolve(args.chartab, "tables")
    return parse_character_table(path.read_text()), path


def parse_seed(text: str, degree: int) -> RawTuple:
    """Semicolon-separated entries, each either cycle notation or a list of
    1-based images separated by spaces or commas."""
    entries = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("("):
            entries.append(Permutation.parse(part, degree))
        else:
            img = [int(tok) - 1 for tok in part.replace(",", " ").split()]
            if len(img) != degree:
                raise ConfigError(f"seed entry has {len(img)} images, expected {degree}")
            entries.append(Permutation(img))
    if not entries:
        raise ConfigError("empty seed tuple")
    return RawTuple(entries)


def _sha(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def _config(args, keys: Sequence[str]) -> dict:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _spec(args) -> orbit.ActionSpec:
    mode = args.mode or "pure"
    if mode == "sym":
        mode = "symmetric4"
        if args.sym is None:
            raise ConfigError("--mode sym needs --sym 23, 34 or 234")
    elif args.sym is not None:
        raise ConfigError("--sym is only used with --mode sym")
    return orbit.ActionSpec(mode, args.sym)


def _cv(args, G: FiniteGroup) -> ClassVector:
    if not args.cv:
        raise ConfigError("--cv is required")
    return ClassVector.parse(G, args.cv)


def _deadline(args):
    return None if args.time_limit is None else time.monotonic() + args.time_limit


def _document(command: str, inputs: dict, result) -> dict:
    return {"command": command, "version": __version__, "inputs": inputs, "result": result}


def multiplicities(sizes: Sequence[int]) -> str:
    """Human shortcut: 2_3 means three orbits of size 2."""
    counts = Counter(sizes)
    return ", ".join(f"{s}_{c}" if c > 1 else f"{s}" for s, c in sorted(counts.items()))


# ---------------------------------------------------------------------------
# commands; each returns (document, human text)


def cmd_classes(args):
    G = load_job_group(args)
    rows = []
    for c in G.conjugacy_classes():
        rows.append({"name": c.name, "size": c.size, "order": c.element_order,
                     "centralizer": c.centralizer_order, "rational": is_rational_class(G, c.id),
                     "representative": str(c.representative)})
    doc = _document("classes", {"group": G.digest()},
                    {"group_order": G.order, "center_order": G.center_order, "classes": rows})
    text = "\n".join(f"{r['name']:>5} {r['size']:>12} {r['centralizer']:>10} "
                     f"{'rational' if r['rational'] else ''}" for r in rows)
    return doc, f"|G| = {G.order}\n" + text


def cmd_count(args):
    G = load_job_group(args)
    cv = _cv(args, G)
    n = count_class_systems(G, cv)
    doc = _document("count", {"group": G.digest(), "config": _sha({"cv": str(cv)})},
                    {"cv": str(cv), "li": n})
    return doc, f"l^i({cv}) = {n}"


def _orbit_rows(reports, probe: bool) -> list[dict]:
    rows = []
    for r in reports:
        if probe and r.size <= orbit.PROBE_CAP:
            orbit.action_group_report(r)
        d = r.to_dict()
        if r.action_group is not None:
            d["action_group"] = {k: (str(v) if k in ("order", "pure_order") else v)
                                 for k, v in r.action_group.items()}
        rows.append(d)
    return rows


def _orbits_text(reports) -> str:
    lines = [f"sizes: {multiplicities([r.size for r in reports])}"]
    for r in reports:
        sig = "" if r.invariant_signature is None else " sig " + " ".join(
            "+" if x > 0 else "-" for x in r.invariant_signature)
        types = ", ".join(f"{k} {r.cycle_type(k)}" for k in r.generators)
        lines.append(f"{r.size:>8}  genus {r.genus}{sig}  {types}")
    return "\n".join(lines)


def cmd_partition(args):
    G = load_job_group(args)
    cv = _cv(args, G)
    spec = _spec(args)
    reports = orbit.partition(G, cv, spec, workers=args.workers)
    config = {"cv": str(cv), "spec": str(spec)}
    doc = _document("partition", {"group": G.digest(), "config": _sha(config)},
                    {**config, "total": sum(r.size for r in reports),
                     "sizes": [r.size for r in reports],
                     "orbits": _orbit_rows(reports, args.probe)})
    return doc, _orbits_text(reports)


def cmd_invariants(args):
    G = load_job_group(args)
    cv = _cv(args, G)
    if cv.m != 4:
        raise ConfigError("invariants need a class vector of length 4")
    reports = orbit.partition(G, cv, orbit.ActionSpec("pure"), workers=args.workers)
    rows = [{"size": r.size, "genus": r.genus, "signature": list(r.invariant_signature)}
            for r in reports]
    config = {"cv": str(cv), "spec": "pure"}
    doc = _document("invariants", {"group": G.digest(), "config": _sha(config)},
                    {**config, "orbits": rows})
    text = "\n".join(f"{r['size']:>8} {r['genus']:>5}  "
                     + " ".join(f"{x:+d}" for x in r["signature"]) for r in rows)
    return doc, "    |Z|   g_Z  F(phi1) F(phi2) F(phi3)\n" + text


def _orbit_doc(command, G, report, header):
    return _document(command, {"group": G.digest(), "config": _sha(header)},
                     {"cv": header["cv"], "spec": header["spec"],
                      "orbit": report.to_dict(include_members=True)})


def cmd_orbit(args):
    G = load_job_group(args)
    if not args.seed_tuple:
        raise ConfigError("--seed-tuple is required")
    t = space_for(G).canonicalize(parse_seed(args.seed_tuple, G.degree))
    spec = _spec(args)
    cv = orbit._cv_of(G, t)
    header = orbit._header(G, cv, spec)
    rep = orbit.orbit_of(G, t, spec, limit=args.limit, workers=args.workers,
                         member_cap=args.max_members, checkpoint=args.checkpoint,
                         deadline=_deadline(args))
    if rep is None:
        doc = _document("orbit", {"group": G.digest(), "config": _sha(header)},
                        {"cv": str(cv), "spec": str(spec), "orbit": None,
                         "note": f"orbit larger than {args.limit}"})
        return doc, f"orbit larger than {args.limit}"
    return _orbit_doc("orbit", G, rep, header), _orbits_text([rep])


def cmd_resume(args):
    G = load_job_group(args)
    if not args.checkpoint:
        raise ConfigError("--checkpoint is required")
    header, _, _ = orbit.read_checkpoint(args.checkpoint)
    rep = orbit.resume(G, args.checkpoint, workers=args.workers, member_cap=args.max_members,
                       deadline=_deadline(args))
    return _orbit_doc("orbit", G, rep, header), _orbits_text([rep])


def cmd_bounded(args):
    G = load_job_group(args)
    cv = _cv(args, G)
    spec = _spec(args)
    if args.limit is None:
        raise ConfigError("--limit is required")
    reports = orbit.bounded_orbit_search(G, cv, args.limit, spec, workers=args.workers)
    config = {"cv": str(cv), "spec": str(spec), "limit": args.limit}
    doc = _document("bounded", {"group": G.digest(), "config": _sha(config)},
                    {**config, "sizes": [r.size for r in reports],
                     "orbits": _orbit_rows(reports, args.probe)})
    return doc, _orbits_text(reports)


def _pair(args, G: FiniteGroup, flavor: str) -> list[generic.GeneratorPair]:
    if args.s1 and args.s2:
        return [generic.GeneratorPair(Permutation.parse(args.s1, G.degree),
                                      Permutation.parse(args.s2, G.degree), flavor)]
    if not args.cv:
        raise ConfigError("give --s1 and --s2, or --cv")
    names = [x.strip() for x in args.cv.split(",")]
    if flavor == "artin":
        if len(names) != 1:
            raise ConfigError("artin constructions take --cv C (one class)")
        return generic.artin_pairs(G, names[0])
    if len(names) != 3:
        raise ConfigError("involution-product constructions take --cv C1,C2,D")
    return generic.involution_pairs(G, *names)


CONSTRUCTORS = {
    "small": (generic.construct_small_symmetric, "involution_product"),
    "h4": (generic.construct_h4_orbit, "involution_product"),
    "size4": (generic.construct_size4, "artin"),
    "size40": (generic.construct_size40, "artin"),
    "size9": (generic.construct_size9, "artin"),
}


def cmd_construct(args):
    G = load_job_group(args)
    kind = args.kind
    if kind in CONSTRUCTORS:
        fn, flavor = CONSTRUCTORS[kind]
        results = [fn(G, p) for p in _pair(args, G, flavor)]
        docs = [c.to_dict() for c in results]
        findings = [f for c in results for f in c.findings]
        text = "\n".join(f"{c.kind}: {c.distinct} members, "
                         f"{'all checks pass' if c.ok else f'{len(c.findings)} findings'}"
                         for c in results)
    elif kind in ("alpha40", "ar4"):
        if not args.seed_tuple:
            raise ConfigError(f"{kind} needs --seed-tuple")
        raw = parse_seed(args.seed_tuple, G.degree)
        if kind == "alpha40":
            v = generic.alpha40_fixed_point(G, raw)
        else:
            if raw.m != 3:
                raise ConfigError("ar4 needs three entries s1;s2;s3")
            v = generic.ar4_seed(G, *raw.entries)
        docs = [{"kind": kind, "members": [str(v)], "encoding": v.hex()}]
        findings = []
        text = str(v)
    else:
        raise ConfigError(f"unknown construction {kind!r}")
    doc = _document("construct", {"group": G.digest(), "config": _sha({"kind": kind, "cv": args.cv,
                                                                       "s1": args.s1, "s2": args.s2})},
                    {"kind": kind, "constructions": docs,
                     "findings": [f.to_dict() for f in findings]})
    if findings:
        raise Counterexample(doc)
    return doc, text


def cmd_translate(args):
    G = load_job_group(args)
    if not args.seed_tuple or not args.variant:
        raise ConfigError("translate needs --seed-tuple and --variant")
    t = generic.translate(G, parse_seed(args.seed_tuple, G.degree), args.variant)
    classes = [G.class_of(x).name for x in t.entries]
    doc = _document("translate", {"group": G.digest(), "config": _sha({"variant": args.variant})},
                    {"variant": args.variant, "tuple": str(t), "classes": classes,
                     "encoding": t.hex()})
    return doc, f"{t}  in  ({','.join(classes)})"


def cmd_lift(args):
    G = load_job_group(args)
    if not args.seed_tuple:
        raise ConfigError("lift needs --seed-tuple")
    t = generic.hat_lift(G, parse_seed(args.seed_tuple, G.degree))
    doc = _document("lift", {"group": G.digest()}, {"tuple": str(t), "encoding": t.hex()})
    return doc, str(t)


def cmd_specialize(args):
    G = load_job_group(args)
    if not args.seed_tuple or not args.positions:
        raise ConfigError("specialize needs --seed-tuple and --positions")
    pos = [int(x) for x in args.positions.split(",")]
    t, gen = generic.specialize(G, parse_seed(args.seed_tuple, G.degree), pos)
    classes = [G.class_of(x).name for x in t.entries]
    doc = _document("specialize", {"group": G.digest(), "config": _sha({"positions": pos})},
                    {"positions": pos, "tuple": str(t), "classes": classes, "generates": gen})
    return doc, f"{t}  in  ({','.join(classes)}){'' if gen else '  (proper subgroup)'}"


def cmd_structconst(args):
    table, path = load_table(args)
    if not args.cv:
        raise ConfigError("--cv is required")
    names = [x.strip() for x in args.cv.split(",")]
    n = structure_constant(table, names)
    floor = n.numerator // n.denominator
    result = {"cv": ",".join(names), "n": str(n), "floor": floor}
    inputs = {"table": hashlib.sha256(path.read_bytes()).hexdigest()}
    if args.group:
        G = load_job_group(args)
        li = count_class_systems(G, ClassVector(G, names))
        result["li"] = li
        result["li_within_floor"] = floor_bound_check(n, li)
        inputs["group"] = G.digest()
    return _document("structconst", inputs, result), f"n({','.join(names)}) = {n}  floor {floor}"


def cmd_heuristics(args):
    if not args.group:
        raise ConfigError("--group is required (comma-separated names allowed)")
    ms = [int(x) for x in (args.m or "4,5,6").split(",")]
    profiles = []
    digests = {}
    for name in args.group.split(","):
        sub = argparse.Namespace(**{**vars(args), "group": name, "names": None})
        G = load_job_group(sub)
        profiles.append(heuristics.profile(G, ms, name=Path(name).stem))
        digests[Path(name).stem] = G.digest()
    doc = _document("heuristics", {"groups": digests},
                    {"profiles": [p.to_dict() for p in profiles]})
    return doc, heuristics.render_profiles(profiles)


def cmd_verify(args):
    ms = [int(x) for x in (args.m or "4,6,8,10").split(",")]
    out = {}
    failed = 0
    for m in ms:
        rel = braid.verify_relations(m, samples=args.samples, seed=args.seed)
        entry = {"relations": rel}
        if m % 2 == 0:
            entry["closed_forms"] = braid.verify_closed_forms(m, samples=args.samples, seed=args.seed)
        out[str(m)] = entry
        failed += sum(v["failed"] for part in entry.values() for v in part.values())
    doc = _document("verify", {"config": _sha({"m": ms, "samples": args.samples, "seed": args.seed})},
                    {"samples": args.samples, "seed": args.seed, "suites": out, "failed": failed})
    lines = []
    for m, entry in out.items():
        for part, checks in entry.items():
            for name, v in checks.items():
                lines.append(f"m={m:<3} {part:<13} {name:<20} {v['passed']:>4} passed {v['failed']:>3} failed")
    if failed:
        raise Counterexample(doc)
    return doc, "\n".join(lines)


COMMANDS = {
    "classes": cmd_classes,
    "count": cmd_count,
    "partition": cmd_partition,
    "orbit": cmd_orbit,
    "bounded": cmd_bounded,
    "invariants": cmd_invariants,
    "construct": cmd_construct,
    "translate": cmd_translate,
    "lift": cmd_lift,
    "specialize": cmd_specialize,
    "structconst": cmd_structconst,
    "heuristics": cmd_heuristics,
    "verify": cmd_verify,
    "resume": cmd_resume,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hurwitz", description="Braid orbits of Nielsen classes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name == "construct":
            sp.add_argument("kind", help="small, h4, size4, size40, size9, alpha40 or ar4")
        sp.add_argument("--group", help="group file or bundled name (e.g. M11)")
        sp.add_argument("--names", help="class-name override file")
        sp.add_argument("--chartab", help="character table file or bundled name")
        sp.add_argument("--cv", help="comma-separated class names")
        sp.add_argument("--mode", choices=["pure", "full", "sym"])
        sp.add_argument("--sym", choices=["23", "34", "234"])
        sp.add_argument("--limit", type=int, help="orbit size limit")
        sp.add_argument("--max-members", type=int, default=orbit.MEMBER_CAP)
        sp.add_argument("--time-limit", type=float, help="wall-clock seconds for orbit searches")
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--checkpoint")
        sp.add_argument("--out")
        sp.add_argument("--seed-tuple", help="entries separated by ';'")
        sp.add_argument("--s1")
        sp.add_argument("--s2")
        sp.add_argument("--variant", choices=sorted(generic.TRANSLATIONS))
        sp.add_argument("--positions", help="1-based merge positions, e.g. 4,4")
        sp.add_argument("--m", help="comma-separated tuple lengths")
        sp.add_argument("--samples", type=int, default=100)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--probe", action="store_true", help="add action-group probes")
        sp.add_argument("--human", action="store_true", help="print a table instead of JSON")
    return p


def _emit(args, doc: dict, text: str) -> None:
    body = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(body)
    if args.human:
        print(text)
    elif not args.out:
        sys.stdout.write(body)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, text = COMMANDS[args.command](args)
    except Counterexample as exc:
        _emit(args, exc.doc, "counterexample: see the JSON report")
        return EXIT_COUNTEREXAMPLE
    except orbit.ResourceLimit as exc:
        msg = {"error": "resource limit", "detail": str(exc), "checkpoint": exc.checkpoint}
        print(json.dumps(msg), file=sys.stderr)
        return EXIT_LIMIT
    except (ConfigError, GroupError, NielsenError, CharTableError, ValueError, OSError) as exc:
        print(json.dumps({"error": "configuration", "detail": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    _emit(args, doc, text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

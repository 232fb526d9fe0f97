"""``legproj`` command line.

Every subcommand reads one diagram per line (``-`` for stdin) and handles
lines independently.  Exit status: 0 all good, 1 some input line was bad or
a check failed, 2 usage error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Callable, Sequence

from . import gf2
from .carter import canonical_genus, carter_surface
from .gauss import GaussDiagram, GaussError, canonical_form, parse_counting, random_diagram
from .moves import KINDS, MoveError, MoveInstance, applicable_moves, apply_move, fuzz_sequence
from .parity import InternalInconsistency, cross_check, parities
from .projection import arc_number, move_parity_checks, upr, verify_move_invariance
from .surface_model import (ModelError, destabilize_along, format_model, parity_in_model,
                            parse_model, trivial_stabilize)

SCHEMA = 1

# Checks that gate ``verify``; ``r3_equal`` is reported only.
GATING = ("uninvolved", "r1_even", "r2_equal", "r3_sum_zero")


def _read(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _parity_map(d: GaussDiagram) -> dict[str, str]:
    p = parities(d).values
    return {f"v{v}": p[v] for v in sorted(p)}


def _per_line(args, handle: Callable[[GaussDiagram, str], tuple[list[str], dict]]) -> int:
    """Run ``handle`` on each input line; collect text or JSON records."""
    status = 0
    records = []
    for n, line in enumerate(_read(args.file), 1):
        try:
            d, dropped = parse_counting(line)
            if dropped:
                print(f"line {n}: dropped {dropped} virtual crossing token(s)", file=sys.stderr)
            text, rec = handle(d, line)
        except (GaussError, ModelError, gf2.GF2Error) as exc:
            print(f"line {n}: {type(exc).__name__}: {exc}", file=sys.stderr)
            records.append({"line": n, "input": line, "error": type(exc).__name__})
            status = 1
            if args.strict:
                break
            continue
        records.append({"line": n, "input": line, **rec})
        if not args.json:
            for t in text:
                print(t)
    if args.json:
        _emit_json({"schema": SCHEMA, "command": args.command, "records": records})
    return status


# ---- subcommands ------------------------------------------------------------

def cmd_validate(args) -> int:
    def handle(d, line):
        return ["ok"], {"chords": d.chord_count, "cusps": d.cusp_count}
    return _per_line(args, handle)


def cmd_canon(args) -> int:
    def handle(d, line):
        c = str(canonical_form(d))
        return [c], {"canonical": c}
    return _per_line(args, handle)


def cmd_parity(args) -> int:
    def handle(d, line):
        s = carter_surface(d)
        agree = cross_check(d, strict=True)
        pm = _parity_map(d)
        text = [f"{k}: {v}" for k, v in pm.items()]
        if args.check:
            text.append(f"agree: {str(agree).lower()}")
        text.append("")
        return text, {"chords": d.chord_count, "parities": pm,
                      "carter_genus": s.genus, "agree": agree}
    return _per_line(args, handle)


def cmd_carter(args) -> int:
    def handle(d, line):
        cross_check(d, strict=True)
        s = carter_surface(d)
        text = [f"V={s.V} E={s.E} F={s.F} genus={s.genus}"]
        faces = [f.corner_word() for f in s.faces]
        if args.faces:
            text += [f"  face {k + 1}: {w}" for k, w in enumerate(faces)]
        rec = {"V": s.V, "E": s.E, "F": s.F, "genus": s.genus}
        if args.faces:
            rec["faces"] = faces
        return text, rec
    return _per_line(args, handle)


def cmd_genus(args) -> int:
    def handle(d, line):
        g, cg = carter_surface(d).genus, canonical_genus(d)
        return [f"carter={g} canonical={cg}"], {"carter_genus": g, "canonical_genus": cg}
    return _per_line(args, handle)


def cmd_project(args) -> int:
    def handle(d, line):
        tr = upr(d)
        text = []
        stages = []
        for k, (sd, p, odd) in enumerate(tr.stages):
            stages.append({"diagram": str(sd), "odd": sorted(odd)})
            if args.trace:
                text.append(f"stage {k}: {sd}  odd={sorted(odd)}")
        text.append(str(tr.result))
        return text, {"result": str(tr.result), "stages": stages}
    return _per_line(args, handle)


def _parse_site(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad site {text!r}") from None


def cmd_move(args) -> int:
    if args.action == "apply":
        if args.kind is None or args.site is None:
            raise SystemExit("legproj move apply: --kind and --site are required")

        def handle(d, line):
            m = MoveInstance(args.kind, args.site, args.variant, d)
            out = str(apply_move(d, m))
            return [out], {"move": m.describe(), "result": out}
        return _per_line(args, handle)

    def handle_fuzz(d, line):
        steps = fuzz_sequence(d, args.n, args.seed)
        return ([str(x) for _, x in steps],
                {"steps": [{"move": m.describe(), "result": str(x)} for m, x in steps]})
    return _per_line(args, handle_fuzz)


def cmd_model(args) -> int:
    try:
        with (sys.stdin if args.file == "-" else open(args.file, encoding="utf-8")) as fh:
            m = parse_model(fh.read())
        if args.action == "parity":
            pm = {f"v{v}": parity_in_model(m, v) for v in m.diagram.chords()}
            if args.json:
                _emit_json({"schema": SCHEMA, "command": "model", "genus": m.genus, "parities": pm})
            else:
                for k, v in pm.items():
                    print(f"{k}: {v}")
            return 0
        if args.action == "stabilize":
            out = trivial_stabilize(m)
        else:
            if args.cls is None:
                raise SystemExit("legproj model destabilize: --class is required")
            if len(args.cls) != m.space.dim:
                raise ModelError(f"--class needs {m.space.dim} bits")
            out = destabilize_along(m, gf2.from_bits(args.cls))
        if args.json:
            _emit_json({"schema": SCHEMA, "command": "model", "model": format_model(out)})
        else:
            sys.stdout.write(format_model(out))
        return 0
    except (ModelError, GaussError, gf2.GF2Error, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    for _ in range(args.n):
        c = rng.randint(0, args.max_chords)
        k = rng.randint(0, args.max_cusps)
        print(random_diagram(c, k, rng.randrange(2 ** 32)))
    return 0


def _diagram_record(d: GaussDiagram, line: str, n: int) -> dict:
    tr = upr(d)
    r = tr.result
    checks = {
        "cross_check": cross_check(d, strict=True),
        "idempotent": canonical_form(upr(r).result) == canonical_form(r),
        "result_genus_zero": carter_surface(r).genus == 0,
        "crossings_monotone": r.chord_count <= d.chord_count,
        "arcs_monotone": arc_number(r) <= arc_number(d),
    }
    g = carter_surface(d).genus
    if g == 0:
        checks["genus_zero_fixpoint"] = r == d
    return {
        "line": n,
        "input": line,
        "chords": d.chord_count,
        "cusps": d.cusp_count,
        "parities": _parity_map(d),
        "carter_genus": g,
        "canonical_genus": canonical_genus(d),
        "arc_number": arc_number(d),
        "projection": str(r),
        "stages": len(tr.stages),
        "checks": checks,
        "passed": all(checks.values()),
    }


def cmd_verify(args) -> int:
    if args.file is None:
        rng = random.Random(args.seed)
        lines = [str(random_diagram(rng.randint(0, 6), rng.randint(0, 2), rng.randrange(2 ** 32)))
                 for _ in range(100)]
    else:
        lines = _read(args.file)
    records, good = [], []
    status = 0
    for n, line in enumerate(lines, 1):
        try:
            d, _ = parse_counting(line)
        except GaussError as exc:
            print(f"line {n}: {type(exc).__name__}: {exc}", file=sys.stderr)
            records.append({"line": n, "input": line, "error": type(exc).__name__})
            status = 1
            if args.strict:
                break
            continue
        rec = _diagram_record(d, line, n)
        records.append(rec)
        good.append((n, d))
        if not rec["passed"]:
            status = 1

    move_records = []
    if args.moves and good:
        rng = random.Random(args.seed)
        for k in range(args.n):
            n, d = good[k % len(good)]
            kinds = list(KINDS)
            rng.shuffle(kinds)
            cands: list[MoveInstance] = []
            for kind in kinds:
                cands = applicable_moves(d, [kind])
                if cands:
                    break
            m = rng.choice(cands)
            v = verify_move_invariance(d, m)
            pc = move_parity_checks(d, m)
            ok = v.passed and all(pc[c] for c in GATING if c in pc)
            move_records.append({
                "line": n,
                "move": m.describe(),
                "branch": v.branch,
                "parity_checks": pc,
                "passed": ok,
            })
            if not ok:
                status = 1

    summary = {
        "diagrams": len(good),
        "diagrams_failed": sum(1 for r in records if not r.get("passed", False)),
        "moves": len(move_records),
        "moves_failed": sum(1 for r in move_records if not r["passed"]),
        "r3_equal_violations": sum(1 for r in move_records
                                   if r["parity_checks"].get("r3_equal") is False),
    }
    if args.json:
        _emit_json({"schema": SCHEMA, "command": "verify", "seed": args.seed,
                    "records": records, "moves": move_records, "summary": summary})
    else:
        for r in records:
            if "error" not in r:
                print(f"line {r['line']}: {'PASS' if r['passed'] else 'FAIL'} "
                      f"c={r['chords']} genus={r['carter_genus']} -> {r['projection']!r}")
        for r in move_records:
            print(f"line {r['line']}: {'PASS' if r['passed'] else 'FAIL'} "
                  f"{r['move']} [{r['branch']}]")
        print(" ".join(f"{k}={v}" for k, v in summary.items()))
    return status


# ---- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--strict", action="store_true", help="stop at the first bad line")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--n", type=int, default=10)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="legproj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file_optional=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file_optional:
            sp.add_argument("file", nargs="?")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check each line").add_argument("file")
    add("canon", cmd_canon, "canonical form of each line").add_argument("file")
    sp = add("parity", cmd_parity, "even/odd crossings")
    sp.add_argument("--check", action="store_true", help="report agreement of both methods")
    sp.add_argument("file")
    sp = add("carter", cmd_carter, "Carter surface V, E, F, genus")
    sp.add_argument("--faces", action="store_true", help="print each face's corner word")
    sp.add_argument("file")
    add("genus", cmd_genus, "Carter and canonical genus").add_argument("file")
    sp = add("project", cmd_project, "erase odd crossings until none remain")
    sp.add_argument("--trace", action="store_true", help="print every stage")
    sp.add_argument("file")

    sp = add("move", cmd_move, "apply or fuzz Legendrian moves")
    sp.add_argument("action", choices=("apply", "fuzz"))
    sp.add_argument("--kind", choices=KINDS)
    sp.add_argument("--site", type=_parse_site, help="comma-separated integers")
    sp.add_argument("--variant", type=int, default=0)
    sp.add_argument("file")

    sp = add("model", cmd_model, "symplectic surface models")
    sp.add_argument("action", choices=("parity", "stabilize", "destabilize"))
    sp.add_argument("--class", dest="cls", help="bitstring m1 l1 m2 l2 ...")
    sp.add_argument("file")

    sp = add("gen", cmd_gen, "random diagrams, one per line")
    sp.add_argument("--max-chords", type=int, default=8)
    sp.add_argument("--max-cusps", type=int, default=2)

    sp = add("verify", cmd_verify, "property suite over a corpus", file_optional=True)
    sp.add_argument("--moves", action="store_true", help="also fuzz moves and check invariance")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (MoveError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"legproj: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

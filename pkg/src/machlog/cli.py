"""Command line entry points.

Subcommands: verify, run, extract, options, serve.  Flags may also be
supplied through environment variables (MACHLOG_AXIOMS, MACHLOG_MAX_INT,
MACHLOG_PORT); explicit flags win.  When a proof cites a theorem label
the store does not know, a sibling <label>.proof file is replayed and
registered on the fly, so corpus proofs verify standalone.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import corpus
from .engine import (
    EngineError,
    enumerate_options,
    extract_theorem,
    parse_proof,
    replay,
)
from .machine import ExecError, run_program
from .programs import ProgramError, parse_program
from .store import AxiomStore, StoreError, load_store
from .terms import MachineConfig, TermError


def _env_default(name, cast=str, fallback=None):
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    return cast(raw)


def _load_axioms(path) -> AxiomStore:
    if path:
        return load_store(path)
    return corpus.load_bundled_store()


def _register_proof(store: AxiomStore, path: Path, seen: set, out) -> bool:
    """Replay path and register its theorem; resolve cited theorem labels
    from sibling files first.  Returns overall success."""
    path = Path(path)
    if path in seen:
        print(f"{path}: circular theorem reference", file=sys.stderr)
        return False
    seen.add(path)
    try:
        text = path.read_text()
    except OSError as e:
        print(f"{path}: {e}", file=sys.stderr)
        return False
    try:
        parsed = parse_proof(text)
    except ProgramError as e:
        print(f"{path}: {e}", file=sys.stderr)
        return False
    for _, conn in parsed.derived:
        if conn.label not in store.entries:
            sibling = path.parent / f"{conn.label}.proof"
            if sibling.exists():
                if not _register_proof(store, sibling, seen, out):
                    return False
    report = replay(text, store)
    out.append((path, report))
    if not report.ok:
        return False
    label = parsed.label if parsed.label and parsed.label not in store.entries \
        else store.next_theorem_label()
    result = extract_theorem(report.state)
    store.register(label, result.premises, (result.conclusion,))
    return True


def cmd_verify(args) -> int:
    missing = [p for p in args.proofs if not Path(p).is_file()]
    if missing:
        for p in missing:
            print(f"error: no such proof file: {p}", file=sys.stderr)
        return 2
    store = _load_axioms(args.axioms)
    reports = []
    ok = True
    for path in args.proofs:
        if not _register_proof(store, Path(path), set(), reports):
            ok = False
    if args.json:
        payload = []
        for path, report in reports:
            payload.append({
                "path": str(path),
                "label": report.label,
                "ok": report.ok,
                "lines": len(report.verdicts),
                "failures": [
                    {"line": v.number, "message": v.message}
                    for v in report.failures()
                ],
            })
        print(json.dumps({"ok": ok, "proofs": payload}, indent=2))
    else:
        for path, report in reports:
            if report.ok:
                print(f"{path}: {len(report.verdicts)} lines ok")
            else:
                print(f"{path}: FAILED")
                for v in report.failures():
                    print(f"  line {v.number}: {v.message}")
    return 0 if ok else 1


def _parse_bindings(pairs) -> dict:
    env = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"binding {pair!r} is not name=value")
        name, _, value = pair.partition("=")
        env[name.strip()] = int(value)
    return env


def cmd_run(args) -> int:
    cfg = MachineConfig(max_int=args.max_int) if args.max_int else MachineConfig()
    try:
        program = parse_program(Path(args.program).read_text())
        bindings = _parse_bindings(args.bindings)
        result = run_program(program, bindings, cfg)
    except (OSError, ValueError, ProgramError, TermError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if isinstance(result, ExecError):
        if args.json:
            print(json.dumps({"error": {"kind": result.kind, "statement": result.index,
                                        "detail": result.detail}}))
        else:
            print(f"execution error at {result}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"outputs": result}))
    else:
        for name, value in result.items():
            print(f"{name}={value}")
    return 0


def cmd_extract(args) -> int:
    store = _load_axioms(args.axioms)
    path = Path(args.proof)
    reports = []
    # resolve cited theorems but do not register this proof's own theorem yet
    try:
        parsed = parse_proof(path.read_text())
    except (OSError, ProgramError) as e:
        print(f"{path}: {e}", file=sys.stderr)
        return 2
    for _, conn in parsed.derived:
        if conn.label not in store.entries:
            sibling = path.parent / f"{conn.label}.proof"
            if sibling.exists():
                _register_proof(store, sibling, set(), reports)
    report = replay(path.read_text(), store)
    if not report.ok:
        print(f"{path}: replay failed", file=sys.stderr)
        for v in report.failures():
            print(f"  line {v.number}: {v.message}", file=sys.stderr)
        return 1
    try:
        result = extract_theorem(report.state)
    except EngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.append and not args.axioms:
        print("error: --append needs --axioms FILE (the bundled store is read-only)",
              file=sys.stderr)
        return 2
    # the label (and, with --append, the persisted state) comes from the
    # backing file alone, not from theorems auto-registered during replay
    target = load_store(args.axioms) if args.axioms else store
    label = parsed.label if parsed.label and parsed.label not in target.entries \
        else target.next_theorem_label()
    if result.redundant:
        print(f"warning: premises {list(result.redundant)} are redundant",
              file=sys.stderr)
    if args.json:
        print(json.dumps({
            "label": label,
            "theorem": result.render(),
            "used": list(result.used),
            "redundant": list(result.redundant),
        }, indent=2))
    else:
        print(f"Theorem {label}.")
        print(result.render())
    if args.append:
        target.register(label, result.premises, (result.conclusion,))
        target.save()
    return 0


def cmd_options(args) -> int:
    store = _load_axioms(args.axioms)
    reports = []
    path = Path(args.proof)
    try:
        parsed = parse_proof(path.read_text())
    except (OSError, ProgramError) as e:
        print(f"{path}: {e}", file=sys.stderr)
        return 2
    for _, conn in parsed.derived:
        if conn.label not in store.entries:
            sibling = path.parent / f"{conn.label}.proof"
            if sibling.exists():
                _register_proof(store, sibling, set(), reports)
    report = replay(path.read_text(), store)
    if not report.ok:
        print(f"{path}: replay failed; cannot enumerate", file=sys.stderr)
        return 1
    options = enumerate_options(report.state, store)
    if args.json:
        print(json.dumps({"options": [
            {"index": o.index, "label": o.label, "refs": list(o.refs),
             "conclusion": [st.render() for st in o.conclusion],
             "already_derived": o.already_derived}
            for o in options
        ]}, indent=2))
    else:
        current = None
        for o in options:
            if o.label != current:
                current = o.label
                print(f"{current}:")
            mark = "  (already derived)" if o.already_derived else ""
            refs = ",".join(str(r) for r in o.refs)
            print(f"  [{o.index}] refs {refs}: {o.preview()}{mark}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    store = _load_axioms(args.axioms)
    app = create_app(store)
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="machlog",
        description="verify, run and extend straight-line machine-integer proofs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_axioms(p):
        p.add_argument("--axioms", default=_env_default("MACHLOG_AXIOMS"),
                       help="axiom store file (default: bundled store)")

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify", help="replay proof files line by line")
    add_axioms(p)
    add_json(p)
    p.add_argument("proofs", nargs="+")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="execute a program on given input bindings")
    p.add_argument("--max-int", type=int,
                   default=_env_default("MACHLOG_MAX_INT", int))
    add_json(p)
    p.add_argument("program")
    p.add_argument("bindings", nargs="*", metavar="name=value")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("extract", help="extract the theorem of a completed proof")
    add_axioms(p)
    add_json(p)
    p.add_argument("--append", action="store_true",
                   help="append the theorem to the axiom file")
    p.add_argument("proof")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("options", help="list derivations available after a proof")
    add_axioms(p)
    add_json(p)
    p.add_argument("proof")
    p.set_defaults(func=cmd_options)

    p = sub.add_parser("serve", help="serve proof sessions over HTTP (loopback)")
    add_axioms(p)
    p.add_argument("--port", type=int,
                   default=_env_default("MACHLOG_PORT", int, 8787))
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StoreError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

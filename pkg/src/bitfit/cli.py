"""Command-line interface: benchmarks, trace replay, and a worked demo.

Exit codes: 0 success, 1 runtime or trace error, 2 usage error.
Configuration is flags-only; no environment variables are consulted, and
identical flags produce byte-identical output unless --timestamp is given.
"""

import argparse
import json
import sys
import time

from .bittree import BitTree
from .errors import AllocatorError, TraceError
from .trace import parse_trace, replay
from .workload import run_list_lifecycle, run_random_churn

ALLOCATOR_CHOICES = ("bitmap", "freelist-lifo", "freelist-fifo", "linear-bitmap")

# top-level shape of every JSON report this tool emits
REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "config", "reports"],
    "properties": {
        "command": {"type": "string"},
        "config": {"type": "object"},
        "reports": {"type": "array", "items": {"type": "object"}},
    },
}

LOCALITY_FIELDS = (
    "sequential_fraction", "distinct_lines", "mean_abs_gap", "traversal_len",
)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _fill_ratio(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1), got {value}")
    return value


def _policy_kind(allocator: str) -> str:
    return allocator.replace("-", "_")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitfit",
        description="Pool-allocator locality benchmarks and trace replay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--allocator", choices=ALLOCATOR_CHOICES, default="bitmap")
        p.add_argument("--slots", type=_positive_int, default=1024)
        p.add_argument("--slot-size", type=_positive_int, default=32)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--line-size", type=_positive_int, default=64)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--timestamp", action="store_true",
                       help="include a wall-clock timestamp in the report")

    bench = sub.add_parser("bench", help="run a locality benchmark")
    common(bench)
    bench.add_argument("--workload", choices=("lifecycle", "churn"),
                       default="lifecycle")
    bench.add_argument("--fill", type=_fill_ratio, default=0.7,
                       help="target fill ratio for the churn workload")
    bench.add_argument("--ops", type=int, default=1000,
                       help="churn operation count")

    rep = sub.add_parser("replay", help="replay a trace file")
    common(rep)
    rep.add_argument("--trace", required=True, help="path to the trace file")

    demo = sub.add_parser("demo", help="walk the 8-slot worked examples")
    common(demo)
    return parser


def _config_dict(args, keys):
    config = {key: getattr(args, key) for key in keys}
    if args.timestamp:
        config["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return config


def _locality_dict(report):
    return {field: getattr(report, field) for field in LOCALITY_FIELDS}


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_bench(args) -> int:
    policy = _policy_kind(args.allocator)
    config = _config_dict(
        args, ("allocator", "slots", "slot_size", "seed", "line_size", "workload"))
    if args.workload == "lifecycle":
        report = run_list_lifecycle(policy, args.slots, args.slot_size,
                                    args.seed, args.line_size)
        body = {
            "kind": "lifecycle",
            "policy_kind": report.policy_kind,
            "node_count": report.node_count,
            "seed": report.seed,
            "generator": report.generator,
            "first_traversal": _locality_dict(report.first_traversal),
            "second_traversal": _locality_dict(report.second_traversal),
        }
    else:
        config["fill"] = args.fill
        config["ops"] = args.ops
        churn = run_random_churn(policy, args.slots, args.fill, args.ops,
                                 args.seed, args.slot_size, args.line_size)
        body = {"kind": "churn", "batch": _locality_dict(churn)}

    if args.format == "json":
        _emit_json({"command": "bench", "config": config, "reports": [body]})
    elif args.format == "csv":
        print("report,sequential_fraction,distinct_lines,mean_abs_gap,traversal_len")
        for name in ("first_traversal", "second_traversal", "batch"):
            item = body.get(name)
            if item is not None:
                print(f"{name},{item['sequential_fraction']},"
                      f"{item['distinct_lines']},{item['mean_abs_gap']},"
                      f"{item['traversal_len']}")
    else:
        print(f"workload: {args.workload}  allocator: {args.allocator}  "
              f"slots: {args.slots}  slot-size: {args.slot_size}  seed: {args.seed}")
        for name in ("first_traversal", "second_traversal", "batch"):
            item = body.get(name)
            if item is not None:
                print(f"{name}:")
                for field in LOCALITY_FIELDS:
                    print(f"  {field}: {item[field]}")
    return 0


def cmd_replay(args) -> int:
    policy = _policy_kind(args.allocator)
    config = _config_dict(
        args, ("allocator", "slots", "slot_size", "seed", "line_size", "trace"))
    with open(args.trace, encoding="utf-8") as fh:
        events = parse_trace(fh.read())
    records = replay(events, policy, args.slots, args.slot_size)

    if args.format == "json":
        body = {
            "kind": "replay",
            "records": [
                {"line": r.event.line_no, "op": r.event.op, "id": r.event.id,
                 "slot": r.slot, "offset": r.offset}
                for r in records
            ],
        }
        _emit_json({"command": "replay", "config": config, "reports": [body]})
    else:
        # text and csv share the canonical record table
        print("line,op,id,slot,offset")
        for r in records:
            print(f"{r.event.line_no},{r.event.op},{r.event.id},{r.slot},{r.offset}")
    return 0


def _bit_rows(tree: BitTree) -> str:
    indices = " ".join(f"{i:2d}" for i in range(len(tree.bits)))
    values = " ".join(f"{bit:2d}" for bit in tree.bits)
    return f"  index: {indices}\n  bit:   {values}"


def cmd_demo(args) -> int:
    print("8-slot occupancy tree: 15 bits, root at index 0, "
          "children of i at 2i+1 and 2i+2, leaves at indices 7..14.\n")

    tree = BitTree(8)
    print("[1] first allocation on a fresh tree")
    print("before:")
    print(_bit_rows(tree))
    slot = tree.allocate()
    print(f"descend left from the root to leaf bit 7 -> slot {slot}")
    print("after:")
    print(_bit_rows(tree))

    print("\n[2] free the 6th slot of a tree with slots 0..5 in use")
    tree = BitTree(8)
    for _ in range(6):
        tree.allocate()
    print("before:")
    print(_bit_rows(tree))
    tree.release(5)
    print("clear leaf bit 12, then ancestors 5 and stop at 2 (already 0)")
    print("after:")
    print(_bit_rows(tree))

    print("\n[3] hint allocation toward leaf 11 with the right half full")
    tree = BitTree(8)
    for _ in range(8):
        tree.allocate()
    for s in range(4):
        tree.release(s)
    print("before (slots 4..7 used, internal bit 2 is 1):")
    print(_bit_rows(tree))
    slot = tree.allocate_with_hint(4)
    print(f"hint path blocked at bit 2; descend 0 -> 1 -> 4 -> leaf 10 "
          f"-> slot {slot}")
    print("after:")
    print(_bit_rows(tree))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    handlers = {"bench": cmd_bench, "replay": cmd_replay, "demo": cmd_demo}
    try:
        return handlers[args.command](args)
    except (AllocatorError, TraceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Reference external evaluator: echoes inputs back as outputs.

Speaks the line-delimited JSON protocol on stdin/stdout:

    <- {"hello": {"m": M, "n": N}}
    -> {"ready": true}
    <- {"id": K, "x": [...]}        (repeated)
    -> {"id": K, "y": [...]}        (same id, N values)

y is x truncated or zero-padded to N entries, so round trips are exact
and easy to verify. Useful as a wiring check for any driver and as a
template for wrapping a real model: replace compute() and keep the rest.
"""

import json
import sys


def compute(x, n):
    y = list(x[:n])
    y += [0.0] * (n - len(y))
    return y


def main():
    hello = json.loads(sys.stdin.readline())
    n = int(hello["hello"]["n"])
    sys.stdout.write(json.dumps({"ready": True}) + "\n")
    sys.stdout.flush()
    for line in sys.stdin:
        if not line.strip():
            continue
        req = json.loads(line)
        reply = {"id": req["id"], "y": compute(req["x"], n)}
        sys.stdout.write(json.dumps(reply) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()

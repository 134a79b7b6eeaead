#!/usr/bin/env python3
"""Writes data/route_trace.csv: a 150 m urban walk recorded at 3 m/s.

The profile is piecewise (LOS stretches, two NLOS blockages, one short
outage) with a smooth deterministic ripple, so the file is reproducible.
"""
import math
import pathlib
import sys

SEGMENTS = [  # (start_m, end_m, state, sinr_start_db, sinr_end_db)
    (0.0, 30.0, "LOS", 25.0, 20.0),
    (30.0, 45.0, "NLOS", 4.0, 2.0),
    (45.0, 80.0, "LOS", 22.0, 21.0),
    (80.0, 95.0, "NLOS", 1.0, -2.0),
    (95.0, 99.0, "OUT", -9.0, -9.0),
    (99.0, 110.0, "NLOS", 0.0, 3.0),
    (110.0, 150.0, "LOS", 24.0, 27.0),
]
STEP_M = 0.25
RECORD_SPEED = 3.0


def sample(pos):
    for start, end, state, a, b in SEGMENTS:
        if start <= pos < end or (pos == end == SEGMENTS[-1][1]):
            frac = (pos - start) / (end - start)
            ripple = 1.5 * math.sin(2 * math.pi * pos / 7.0) if state != "OUT" else 0.0
            return state, a + (b - a) * frac + ripple
    raise ValueError(pos)


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/route_trace.csv")
    n = int(round(SEGMENTS[-1][1] / STEP_M))
    lines = ["t_s,pos_m,state,sinr_db"]
    for i in range(n + 1):
        pos = i * STEP_M
        state, sinr = sample(pos)
        lines.append(f"{pos / RECORD_SPEED:.6f},{pos:.2f},{state},{sinr:.3f}")
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Measure how the exact pipeline scales with the number of looped qubits.

For q = 1..3 this times the natural representation, the projector, and the
full decision on a rotation-plus-CNOT-chain family.  q = 4 sits above the
default dimension cap; the script shows the refusal, and --allow-large
really attempts it (expect a very long wait: the resolvent works on an
exact 256x256 matrix).
"""

import argparse
import sys
import time

from ctcsim.dsl import parse_program
from ctcsim.errors import ResourceLimitError
from ctcsim.semantics import quantum_decide


def chain_program(q: int) -> str:
    lines = [
        "quantum",
        f"registers ctc={q} cr=1",
        "defgate R = [3/5, -4/5; 4/5, 3/5]",
        "apply R ctc[0]",
    ]
    for i in range(q - 1):
        lines.append(f"apply CNOT ctc[{i}], ctc[{i + 1}]")
    lines.append(f"apply CNOT ctc[{q - 1}], cr[0]")
    lines.append("output cr[0]")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-qubits", type=int, default=3, help="largest q to time")
    ap.add_argument(
        "--allow-large",
        action="store_true",
        help="actually attempt q=4 instead of demonstrating the cap",
    )
    args = ap.parse_args(argv)

    print(f"{'q':>2} {'dim':>4} {'natural':>8} {'seconds':>9}  verdict")
    for q in range(1, args.max_qubits + 1):
        prog = parse_program(chain_program(q))
        t0 = time.perf_counter()
        v = quantum_decide(prog)
        dt = time.perf_counter() - t0
        n = 1 << q
        print(
            f"{q:>2} {n:>4} {n * n:>5}^2 {dt:>9.2f}  {v.decision}, "
            f"p_acc = {v.exact_accept_probability}, "
            f"range [{v.probability_range[0]:.3f}, {v.probability_range[1]:.3f}]"
        )

    prog4 = parse_program(chain_program(4))
    if args.allow_large:
        print("attempting q=4 with the cap lifted; interrupt if you lose patience")
        t0 = time.perf_counter()
        v = quantum_decide(prog4, allow_large=True)
        dt = time.perf_counter() - t0
        print(f" 4   16   256^2 {dt:>9.2f}  {v.decision}, p_acc = {v.exact_accept_probability}")
    else:
        try:
            quantum_decide(prog4)
        except ResourceLimitError as e:
            print(f" 4 refused: {e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

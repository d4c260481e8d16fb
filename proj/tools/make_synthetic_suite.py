#!/usr/bin/env python3
# Copyright 2026 The tcm-qubo Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.
"""Generates data/paintcontrol_synthetic.csv.

89 test cases shaped like the filtered PaintControl suite (89 cases, 352 CI
cycles, about 25.6k verdicts of which about 19.4% failed): log-normal
average durations in seconds, and failure rates that are fail/run counts
over 200-352 executions with a right-skewed failure probability of mean
0.19. Every case has at least one failure.
"""

import argparse

import numpy as np


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/paintcontrol_synthetic.csv")
    parser.add_argument("--cases", type=int, default=89)
    parser.add_argument("--seed", type=int, default=20230401)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = []
    for i in range(args.cases):
        duration = float(np.clip(rng.lognormal(mean=3.5, sigma=1.1), 1.0, 1800.0))
        runs = int(rng.integers(200, 353))
        p_fail = float(rng.beta(0.6, 2.56))
        fails = max(1, int(rng.binomial(runs, p_fail)))
        rows.append((f"T{i:03d}", round(duration, 1), fails / runs))

    with open(args.out, "w", newline="\n") as fh:
        fh.write("test_id,avg_execution_time,failure_rate\n")
        for tid, et, fr in rows:
            fh.write(f"{tid},{et!r},{fr!r}\n")


if __name__ == "__main__":
    main()

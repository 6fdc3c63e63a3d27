#!/usr/bin/env python3
# Copyright 2026 The holonomy-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quick-look plots for holonomy-lab output directories.

Not used by the build or the tests. Needs numpy and matplotlib.

    python3 tools/plot_outputs.py out/
"""

import json
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np


def load_csv(path):
    # First line is the "# holonomy-lab ..." header, second the column names.
    return np.genfromtxt(path, delimiter=",", names=True, skip_header=1)


def plot_sweep(d, ax):
    s = load_csv(d / "sweep.csv")
    ax.plot(s["epsilon"], s["F_sim"], "o", ms=3, label="simulated")
    if "F_analytic" in s.dtype.names:
        ax.plot(s["epsilon"], s["F_analytic"], "-", label="superrobust closed form")
    ax.set_xlabel("Rabi error")
    ax.set_ylabel("gate fidelity")
    ax.legend()


def plot_dynphase(d, ax):
    s = load_csv(d / "dynphase.csv")
    for col in ("d11", "d22", "Re_d12", "Im_d12"):
        ax.plot(s["t_ns"], s[col], label=col)
    ax.set_xlabel("t (ns)")
    ax.legend()


def plot_rb(d, ax):
    ref = load_csv(d / "rb_reference.csv")
    ax.errorbar(ref["m"], ref["mean_Pg"], ref["std_Pg"], fmt="o", ms=3, label="reference")
    for f in sorted(d.glob("rb_interleaved_*.csv")):
        s = load_csv(f)
        ax.errorbar(s["m"], s["mean_Pg"], s["std_Pg"], fmt="s", ms=3, label=f.stem[len("rb_interleaved_"):])
    ax.set_xlabel("Clifford count")
    ax.set_ylabel("P_g")
    ax.legend()


def plot_chi(d, ax):
    s = np.genfromtxt(d / "chi_bars.csv", delimiter=",", names=True, skip_header=1, dtype=None, encoding="utf-8")
    labels = list(dict.fromkeys(s["basis_row"]))
    chi = np.zeros((len(labels), len(labels)))
    for r in s:
        chi[labels.index(r["basis_row"]), labels.index(r["basis_col"])] = r["re"]
    ax.imshow(chi, cmap="RdBu_r", vmin=-1, vmax=1)
    ax.set_xticks(range(len(labels)), labels)
    ax.set_yticks(range(len(labels)), labels)
    ax.set_title("Re chi")


def plot_cnot(d, ax):
    for f in sorted(d.glob("cnot_robustness_*.csv")):
        s = load_csv(f)
        ax.plot(s["epsilon"], s["P_g"], label=f.stem.split("_")[-1])
    ax.set_xlabel("Rabi error")
    ax.set_ylabel("P_g after CNOT on |0f>")
    ax.legend()


PLOTS = {
    "sweep.csv": plot_sweep,
    "dynphase.csv": plot_dynphase,
    "rb_reference.csv": plot_rb,
    "chi_bars.csv": plot_chi,
    "cnot_robustness_sr.csv": plot_cnot,
}


def main():
    d = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    found = [(name, fn) for name, fn in PLOTS.items() if (d / name).exists()]
    if not found:
        sys.exit(f"nothing to plot in {d}")
    fig, axes = plt.subplots(1, len(found), figsize=(4.5 * len(found), 3.8), squeeze=False)
    for ax, (_, fn) in zip(axes[0], found):
        fn(d, ax)
    header = d / "fidelity.json"
    if header.exists():
        fig.suptitle(json.loads(header.read_text())["header"])
    fig.tight_layout()
    out = d / "overview.png"
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()

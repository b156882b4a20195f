"""Envelope geometry and figure-data export.

Shows the triangle geometry carried by each angle parameter and writes the
determinant curve (with exact rational anchor points) to a CSV, the same
table the ``envdet scan`` command produces.  If matplotlib is importable a
quick plot is saved next to the CSV.
"""

import math
import os

from envdet import AngleParam, geometry, scan

print("geometry at unit area:")
print(f"{'beta':>9}  {'base angle':>11}  {'apex angle':>11}  {'side |AB|':>10}")
for beta in (-0.9, -0.75, -2.0 / 3.0, -0.55):
    geo = geometry(AngleParam(beta), 1.0)
    print(
        f"{beta:>9.4f}  {math.degrees(geo.angle_a):>10.3f}d  {math.degrees(geo.angle_b):>10.3f}d"
        f"  {geo.side_ab:>10.6f}"
    )

out_csv = os.path.join(os.path.dirname(__file__), "determinant_curve.csv")
table = scan(-0.95, -0.55, 161, area=1.0, include_exact_points=True)
with open(out_csv, "w", encoding="ascii", newline="") as handle:
    handle.write("beta,log_det,d1,d2,asym_neg1,asym_neghalf\n")
    for row in table.rows:
        handle.write(",".join(f"{v:.17g}" for v in row) + "\n")
print(f"\nwrote {len(table.rows)} rows to {out_csv}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available; skipping the plot")
else:
    betas = [row.beta for row in table.rows]
    values = [row.log_det for row in table.rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(betas, values, lw=1.2)
    ax.axvline(-2.0 / 3.0, ls="--", lw=0.8, color="gray")
    ax.set_xlabel("beta")
    ax.set_ylabel("log det (unit area)")
    ax.set_title("Determinant on isosceles triangle envelopes")
    out_png = out_csv.replace(".csv", ".png")
    fig.savefig(out_png, dpi=150, bbox_inches="tight")
    print(f"saved plot to {out_png}")

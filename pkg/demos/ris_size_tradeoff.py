"""Detection probability versus surface size.

Sweeps the element count for a coherent surface at a fixed false-alarm
budget and prints how the standardized separation and the detection
probability grow, including the surface-off baseline row.
"""

from ris_sei.model import ChannelParams, VarianceMode
from ris_sei.optimizer import sweep_size

params = ChannelParams(var_ar=0.15, var_rb=0.15, var_a=1.0, var_e=1.0, noise_var=0.8)
result = sweep_size(
    params,
    samples_per_block=300,
    n_elements_grid=[1, 2, 4, 8, 16, 32, 64],
    target_pf=0.05,
    mode=VarianceMode.FOURTH_MOMENT,
)

print(f"target P_f = {result.target_pf}, variance mode = {result.variance_mode.value}")
print(f"{'N':>4}{'sigma_h^2':>12}{'mu_delta1':>12}{'separation':>12}{'P_d':>10}")
for row in result.rows:
    label = row.n_elements if row.n_elements else "off"
    print(f"{label:>4}{row.sigma_h_sq:>12.4f}{row.mu_delta1:>12.4f}"
          f"{row.separation:>12.4f}{row.p_d_at_target_pf:>10.4f}")

print("\nwith var_e = var_a the baseline detector is blind (P_d = P_f);")
print("each doubling of N adds cascade power and pushes P_d towards 1.")

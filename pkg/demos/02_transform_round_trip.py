"""Forward Laplace transform and Gaver-Stehfest inversion, end to end."""

from backlog_lab.closed_forms import CandidateFormula, cumulative_expected_backlog
from backlog_lab.distributions import ModelParams
from backlog_lab.laplace import (
    InversionConfig,
    forward_transform,
    image_cumulative_backlog,
    image_expected_backlog,
    invert_gaver_stehfest,
    stehfest_weights,
)

params = ModelParams(lam=1.0, production=2)

print("Numerical transform of the time-domain curve vs the analytic image")
print(f"  (lam={params.lam}, P={params.production})")
for s in (0.5, 1.0, 2.0, 5.0):
    est = forward_transform(
        lambda t: cumulative_expected_backlog(params, t, CandidateFormula.COMPACT).value,
        s, 1e-10, growth_degree=2, growth_coeff=params.lam,
    )
    exact = image_cumulative_backlog(params, s)
    print(f"  s={s:4.1f}  quadrature {est.value:.12f}  image {exact:.12f}"
          f"  gap {abs(est.value - exact):.1e}")

print()
print("Stehfest weights are huge and alternating; the first few at order 14:")
w = stehfest_weights(14)
print("  " + "  ".join(f"{x:+.4e}" for x in w[:5]) + "  ...")
print(f"  they sum to {sum(w):+.3e} (exactly zero in rational arithmetic)")

print()
print("Inverting the cumulative image back to the time domain")
config = InversionConfig(order=14)
for t in (0.5, 1.0, 2.0, 5.0):
    back = invert_gaver_stehfest(lambda s: image_cumulative_backlog(params, s), t, config)
    direct = cumulative_expected_backlog(params, t, CandidateFormula.COMPACT).value
    print(f"  t={t:4.1f}  inverted {back:.10f}  direct {direct:.10f}"
          f"  gap {abs(back - direct):.1e}")

print()
print("Accuracy grows with the inversion order until roundoff bites:")
t = 2.0
direct = cumulative_expected_backlog(params, t, CandidateFormula.COMPACT).value
for order in (4, 8, 12, 16, 20):
    back = invert_gaver_stehfest(
        lambda s: image_cumulative_backlog(params, s), t, InversionConfig(order=order))
    print(f"  order {order:2d}  abs dev {abs(back - direct):.2e}")

print()
print("The instantaneous image works the same way")
for s in (1.0, 3.0):
    print(f"  s={s}: image {image_expected_backlog(params, s):.12f}")

import numpy as np

from fourphase import (
    FittingWeights,
    PhantomSpec,
    SolverConfig,
    full_report,
    generate_phantom,
    solve_four_phase,
    threshold_labeling,
)
from fourphase.solver import quartile_initialization

spec = PhantomSpec(noise_sigma=0.05, seed=7)
image, truth = generate_phantom(spec)

u1_init, u2_init = quartile_initialization(image)
init_labels = threshold_labeling(u1_init, u2_init, 0.5)
rep0 = full_report(init_labels, truth)
print("init dice:", ["%.4f" % d for d in rep0.dice_per_phase], "ri=%.4f" % rep0.rand_index)

for mu in (0.1, 0.01):
    cfg = SolverConfig(weights=FittingWeights(mu1=mu, mu2=mu))
    state = solve_four_phase(image, config=cfg)
    labels = threshold_labeling(state.u1, state.u2, 0.5)
    rep = full_report(labels, truth)
    flipped = int((labels != init_labels).sum())
    tr = np.array(state.energy_trace)
    rises = np.flatnonzero(np.diff(tr) > 1e-6 * tr[0])
    print(f"mu={mu}: flipped_vs_init={flipped} dice={['%.4f' % d for d in rep.dice_per_phase]}")
    print(f"  trace[:6]={np.round(tr[:6], 3)} rises at steps {rises[:10]} of {len(tr)-1}")
    du1 = np.abs(state.u1 - u1_init).max()
    print(f"  max|u1-init|={du1:.4f}  frac u1 in (0.1, 0.9): "
          f"{float(((state.u1 > 0.1) & (state.u1 < 0.9)).mean()):.4f}")

# noiseless trace shape
spec0 = PhantomSpec()
image0, truth0 = generate_phantom(spec0)
for mu in (0.01,):
    cfg = SolverConfig(weights=FittingWeights(mu1=mu, mu2=mu))
    state = solve_four_phase(image0, config=cfg)
    tr = np.array(state.energy_trace)
    print(f"noiseless mu={mu}: trace={np.round(tr, 4)}")

import time

import numpy as np

from fourphase import (
    FittingWeights,
    PhantomSpec,
    SolverConfig,
    generate_phantom,
    solve_four_phase,
)

for inner in (5, 10, 20, 30):
    worst_rel = -1.0
    t_tot = 0.0
    for noise, rf in ((0.0, 0.0), (0.05, 0.0), (0.05, 0.2)):
        for seed in range(10):
            image, _ = generate_phantom(
                PhantomSpec(noise_sigma=noise, inhomogeneity_amplitude=rf, seed=seed))
            cfg = SolverConfig(inner_dual_iters=inner)
            t0 = time.perf_counter()
            state = solve_four_phase(image, config=cfg)
            t_tot += time.perf_counter() - t0
            tr = np.array(state.energy_trace)
            rel = float(np.max(np.diff(tr)) / tr[0])
            if rel > worst_rel:
                worst_rel = rel
                where = (noise, rf, seed, int(np.argmax(np.diff(tr))))
    print(f"inner={inner}: worst rel rise={worst_rel:.2e} at (n, rf, seed, step)={where} "
          f"avg solve time={t_tot/30:.2f}s")

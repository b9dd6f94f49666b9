"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Covers the row FFT used by the centered 2D transform, im2col/col2im at the
shapes the default U-net sees, and one full training step with each backend
(the step is run in a subprocess so the backend is chosen at import).
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from cartmask import _kernels_py

try:
    from cartmask import _ckernels
except ImportError:
    _ckernels = None

STEP_SNIPPET = """
import timeit, numpy as np
from cartmask import kernels
from cartmask.config import TrainConfig
from cartmask.data import PhantomSpec, generate_phantom, to_kspace_sample
from cartmask.trainer import initial_state, train_step
ks, ts = zip(*(to_kspace_sample(generate_phantom(PhantomSpec(seed=i), (64, 64))) for i in range(8)))
ks, ts = np.stack(ks), np.stack(ts)
cfg = TrainConfig(base_channels={base})
mask, params, state = initial_state(cfg, 64)
step = lambda: train_step(ks, ts, mask, params, state, 1e-3, 1e-3)
step()
print(kernels.BACKEND, min(timeit.repeat(step, number=1, repeat={repeat})))
"""


def bench(fn, repeat):
    fn()
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_cases(rng):
    x = rng.standard_normal((8 * 64, 64)) + 1j * rng.standard_normal((8 * 64, 64))
    yield "fft rows 512x64", lambda m: (lambda: m.fft_radix2(x))
    for c, hw in ((16, 64), (64, 16)):
        xp = rng.standard_normal((8, c, hw + 2, hw + 2)).astype(np.float32)
        cols, ho, wo = _kernels_py.im2col(xp, 3, 3, 1)
        yield f"im2col N8 C{c} {hw}x{hw}", lambda m, xp=xp: (lambda: m.im2col(xp, 3, 3, 1))
        yield (f"col2im N8 C{c} {hw}x{hw}",
               lambda m, cols=cols, xp=xp, ho=ho, wo=wo: (lambda: m.col2im(cols, xp.shape, 3, 3, 1, ho, wo)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--base-channels", type=int, default=16)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'numpy ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, make in kernel_cases(rng):
        t_py = bench(make(_kernels_py), args.repeat) * 1e3
        if _ckernels is None:
            print(f"{label:28s} {t_py:10.3f} {'n/a':>10s}")
            continue
        t_c = bench(make(_ckernels), args.repeat) * 1e3
        print(f"{label:28s} {t_py:10.3f} {t_c:10.3f} {t_py / t_c:8.2f}")

    snippet = STEP_SNIPPET.format(base=args.base_channels, repeat=args.repeat)
    print(f"\ntrain_step, batch 8 of 64x64, base_channels {args.base_channels}")
    for forced in ("1", "0"):
        env = dict(os.environ, CARTMASK_PURE_PYTHON=forced)
        out = subprocess.run([sys.executable, "-c", snippet], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:8s} {float(secs) * 1e3:9.1f} ms")


if __name__ == "__main__":
    main()

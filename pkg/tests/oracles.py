"""Independent scalar-path oracles shared by the test modules.

These deliberately avoid the library's vectorized kernels: element-by-element
evaluation with sequential accumulation, so bit-for-bit comparisons against
the production paths are meaningful.
"""

import numpy as np

from signadd import mf_complex, twiddle_table


def ndft_double_loop(x):
    """Element-by-element nonlinear DFT with sequential accumulation."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    tbl = twiddle_table(n)
    out = np.empty(n, dtype=complex)
    for k in range(n):
        acc = complex(0.0, 0.0)
        for m in range(n):
            acc += mf_complex(complex(tbl.entries[(k * m) % n]), complex(x[m]))
        out[k] = acc
    return out


def nfft_recursive(x):
    """Recursive decimation-in-time reference for the nonlinear FFT."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    tbl = twiddle_table(n)
    if n == 2:
        return np.array([
            mf_complex(complex(tbl.entries[0]), complex(x[0]))
            + mf_complex(complex(tbl.entries[0]), complex(x[1])),
            mf_complex(complex(tbl.entries[0]), complex(x[0]))
            + mf_complex(-complex(tbl.entries[0]), complex(x[1])),
        ])
    even = nfft_recursive(x[0::2])
    odd = nfft_recursive(x[1::2])
    h = n // 2
    out = np.empty(n, dtype=complex)
    for k in range(n):
        w = complex(tbl.entries[k]) if k < h else -complex(tbl.entries[k - h])
        out[k] = even[k % h] + mf_complex(w, complex(odd[k % h]))
    return out


def direct_exact_surface(surv, ref, l_bins, n):
    """Triple-loop evaluation of the exact ambiguity surface."""
    surv = np.asarray(surv, dtype=complex)
    ref = np.asarray(ref, dtype=complex)
    out = np.zeros((l_bins, n), dtype=complex)
    for l in range(l_bins):
        for p in range(n):
            acc = 0.0 + 0.0j
            for i in range(n):
                r = ref[i - l] if i - l >= 0 else 0.0
                acc += surv[i] * np.conj(r) * np.exp(-2j * np.pi * i * p / n)
            out[l, p] = acc
    return out

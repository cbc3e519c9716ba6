"""Small shared builders for the test modules."""
import numpy as np

from kawahara.spectral import PhysicalSamples, project


def sampled(func, n_modes, domain_scale=1.0, m=None):
    m = m or max(64, 4 * (2 * n_modes + 1))
    return project(PhysicalSamples.from_function(func, m, domain_scale), n_modes)


def sin_field(n_modes, domain_scale=1.0):
    return sampled(lambda x: np.sin(x / domain_scale), n_modes, domain_scale)


def trapezoid_coeff(func, k, m=4096):
    """``(1/2pi) * integral of exp(-ikx) f(x)`` by the periodic trapezoid rule, summed directly."""
    x = -np.pi + 2.0 * np.pi * np.arange(m) / m
    return np.sum(np.exp(-1j * k * x) * func(x)) / m


VERDICTS = []


def verdict(label, ok, detail):
    """Record one acceptance line (shown in the terminal summary) and return ``ok``."""
    line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
    VERDICTS.append(line)
    print(line)
    return ok

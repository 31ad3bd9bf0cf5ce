# Copyright 2026 The Cubist Authors
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

"""Python bindings for the cubist cubic-gate toolkit."""

import json

from ._cubist import (
    InvalidArgument,
    NumericalError,
    __version__,
    adaptive_theta as _adaptive_theta,
    airy,
    feedforward_displacement as _feedforward_displacement,
    gaussian_limit_variance,
    heisenberg_residual as _heisenberg_residual,
    ideal_cubic_wigner,
    optimize_ancilla as _optimize_ancilla,
    run_gate as _run_gate,
    wigner,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "__version__",
    "adaptive_theta",
    "airy",
    "feedforward_displacement",
    "gaussian_limit_variance",
    "heisenberg_residual",
    "ideal_cubic_wigner",
    "optimize_ancilla",
    "run_gate",
    "wigner",
]


def _coefficients(pairs):
    return [complex(re, im) for re, im in pairs]


def optimize_ancilla(n):
    """Optimal N-photon ancilla; coefficients come back as complex numbers."""
    result = json.loads(_optimize_ancilla(n))
    result["coefficients"] = _coefficients(result["coefficients"])
    return result


def adaptive_theta(q, **config):
    return _adaptive_theta(q, json.dumps(config))


def feedforward_displacement(q, y, theta, **config):
    return _feedforward_displacement(q, y, theta, json.dumps(config))


def heisenberg_residual(trials=1000, seed=1, **config):
    return _heisenberg_residual(json.dumps(config), trials, seed)


def run_gate(input=(1.0,), workers=1, **config):
    """Run the gate; keyword arguments follow the gate config JSON keys."""
    return json.loads(_run_gate(json.dumps(config), list(input), workers))

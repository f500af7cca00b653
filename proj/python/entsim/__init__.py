# Copyright 2026 The entsim Authors
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

"""Classical simulation of entanglement with bit-level communication accounting."""

import json

from ._core import (
    ValidationError,
    __version__,
    alpha_bound,
    average_mi_isotropic,
    bell_joint_distribution,
    born_probabilities,
    mi_given_r,
    min_rectangle_cover,
    quantum_ne_probability,
    r_matrix,
    round_payload_bits,
)
from . import _core


def simulate_bell(protocol, x, y, trials, seed, k_code="unary", workers=0):
    """Run a Bell-pair simulation and return its statistics as a dict."""
    return json.loads(_core.simulate_bell_json(protocol, x, y, trials, seed, k_code, workers))


def simulate_teleport(n, amplitudes, povm, trials, seed, workers=0):
    """Teleport a state to a POVM holder; returns statistics as a dict."""
    return json.loads(_core.simulate_teleport_json(n, amplitudes, povm, trials, seed, workers))


def reproduce(quick=True, criteria=(), seed=None, workers=0):
    """Run acceptance criteria; returns one dict per criterion."""
    kwargs = {"quick": quick, "criteria": list(criteria), "workers": workers}
    if seed is not None:
        kwargs["seed"] = seed
    return json.loads(_core.reproduce_json(**kwargs))


__all__ = [
    "ValidationError",
    "__version__",
    "alpha_bound",
    "average_mi_isotropic",
    "bell_joint_distribution",
    "born_probabilities",
    "mi_given_r",
    "min_rectangle_cover",
    "quantum_ne_probability",
    "r_matrix",
    "reproduce",
    "round_payload_bits",
    "simulate_bell",
    "simulate_teleport",
]

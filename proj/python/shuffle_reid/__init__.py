# Copyright 2026 The shuffle-reid Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Re-identification risk in the shuffle model.

Distributions and mechanisms are dicts in the JSON file format, e.g.
``{"type": "uniform", "m": 4}`` or ``{"probs": ["1/2", "1/2"]}``. Exact
results are ``fractions.Fraction``; float results are ``float``.
"""

from ._core import (
    ReidError,
    advantage,
    asymptotics,
    beta_n,
    beta_sequence,
    blanket,
    blanket_m,
    brute_force_beta,
    brute_force_beta_het,
    clone_bound,
    dp_epsilon,
    krr,
    mc_guess_game,
    mc_reduced_game,
    mc_shuffle_game,
    psi,
    tv,
)

__all__ = [
    "ReidError",
    "advantage",
    "asymptotics",
    "beta_n",
    "beta_sequence",
    "blanket",
    "blanket_m",
    "brute_force_beta",
    "brute_force_beta_het",
    "clone_bound",
    "dp_epsilon",
    "krr",
    "mc_guess_game",
    "mc_reduced_game",
    "mc_shuffle_game",
    "psi",
    "tv",
]

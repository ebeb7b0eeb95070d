# Copyright 2026 The noisyadj Authors
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

"""Subgraph counting under edge local differential privacy."""

from noisyadj._noisyadj import (
    DomainError,
    Error,
    Estimate,
    Graph,
    InvalidBudgetError,
    ParseError,
    SizeLimitError,
    confusion_matrix,
    entry_variance,
    estimate,
    exact_count,
    run_trials,
    theoretical_mse,
    tradeoff_curve,
)

__all__ = [
    "DomainError",
    "Error",
    "Estimate",
    "Graph",
    "InvalidBudgetError",
    "ParseError",
    "SizeLimitError",
    "confusion_matrix",
    "entry_variance",
    "estimate",
    "exact_count",
    "run_trials",
    "theoretical_mse",
    "tradeoff_curve",
]

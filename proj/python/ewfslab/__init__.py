# Copyright 2026 The ewfslab Authors
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

"""Python bindings for the ewfslab simulation core."""

import json as _json

from ._core import (
    CSV_HEADER,
    ConfigError,
    InfeasibleError,
    analytic_value,
    branch_factor,
    depolarizing_fidelity,
    exact_correlator,
    inequalities,
    max_two_qubit_error,
    min_valid_probability,
    optimize_angles,
    run_config,
    worst_case_valid_x,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "InfeasibleError",
    "analytic_value",
    "branch_factor",
    "depolarizing_fidelity",
    "exact_correlator",
    "inequalities",
    "max_two_qubit_error",
    "min_valid_probability",
    "optimize_angles",
    "run_config",
    "run_experiment",
    "worst_case_valid_x",
]


def run_experiment(**settings):
    """Runs one experiment; keyword names are config keys (charlie="ghz:3", shots=1000, ...).

    Returns the result record as a dict.
    """
    lines = []
    for key, value in settings.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        lines.append(f"{key} = {value}")
    return _json.loads(run_config("\n".join(lines), "json"))[0]

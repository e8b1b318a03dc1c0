# Copyright 2026 The Limsup Games Authors
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

"""Limsup functions, their constructions and games."""

import json as _json

from . import _core
from ._core import (
    Automaton,
    ConfigError,
    ConstructedFunction,
    Dyadic,
    StabilizationError,
    algebra,
    construct_u,
    criterion_names,
    eval_limsup,
)

__all__ = [
    "Automaton",
    "ConfigError",
    "ConstructedFunction",
    "Dyadic",
    "StabilizationError",
    "algebra",
    "construct",
    "construct_u",
    "criterion_names",
    "eval_limsup",
    "play",
    "run_suite",
    "verify",
]


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def construct(config, base_dir="."):
    """Builds u from a config with a construct block; returns the report."""
    return _json.loads(_core.construct(_text(config), base_dir))


def play(config, base_dir="."):
    """Plays a configured game; returns verdict, sidecar and rounds."""
    return _json.loads(_core.play(_text(config), base_dir))


def verify(config, base_dir="."):
    """Exact verdict for finite-state strategies."""
    return _json.loads(_core.verify(_text(config), base_dir))


def run_suite(seed=None, filter=None, tamper=None, jobs=1):
    kwargs = {"filter": filter, "tamper": tamper, "jobs": jobs}
    if seed is not None:
        kwargs["seed"] = seed
    return _json.loads(_core.run_suite(**kwargs))

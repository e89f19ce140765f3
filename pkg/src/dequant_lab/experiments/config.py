"""Typed JSON configuration for every experiment.

A config file looks like ``{"experiment": "kernel-eig", "seed": 3, "params": {...}}``.
Omitted parameters take the defaults below; unknown keys are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from dequant_lab.perfect import DEFAULT_SIGMA_CONSTANT

PosInt = Annotated[int, Field(ge=1)]
Prob = Annotated[float, Field(gt=0.0, lt=1.0)]


class _Params(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class MnlsGdParams(_Params):
    instances: Annotated[int, Field(ge=1, le=1000)] = 20
    max_d: Annotated[int, Field(ge=1, le=3)] = 3
    max_p: Annotated[int, Field(ge=4, le=200)] = 200
    max_M: Annotated[int, Field(ge=2, le=50)] = 50
    residual_tol: Annotated[float, Field(gt=0)] = 1e-10
    rel_tol: Annotated[float, Field(gt=0)] = 1e-6
    underparam_instances: Annotated[int, Field(ge=0, le=1000)] = 10
    recovery_tol: Annotated[float, Field(gt=0)] = 1e-8
    max_runtime_s: Annotated[float, Field(gt=0)] = 10.0


class KernelEigParams(_Params):
    d: Annotated[int, Field(ge=1, le=4)] = 2
    n_freq: Annotated[int, Field(ge=2)] = 1000
    L: PosInt = 32
    M: Annotated[int, Field(ge=2)] = 8
    trials: Annotated[int, Field(ge=2)] = 200
    min_fraction: Prob = 0.95
    z_max: Annotated[float, Field(gt=0)] = 4.0
    max_runtime_s: Annotated[float, Field(gt=0)] = 60.0


class RffScalingParams(_Params):
    d: Annotated[int, Field(ge=1, le=3)] = 1
    L: PosInt = 100
    D_list: list[PosInt] = Field(default_factory=lambda: [16, 32, 64, 128, 256, 512, 1024])
    trials: Annotated[int, Field(ge=2)] = 50
    n_mc: Annotated[int, Field(ge=100)] = 2000
    delta: Prob = 0.05
    sampling: Literal["uniform", "leverage"] = "uniform"
    slope_range: tuple[float, float] = (-0.6, -0.4)
    max_violation_rate: Annotated[float, Field(ge=0, le=1)] = 0.05
    max_runtime_s: Annotated[float, Field(gt=0)] = 120.0

    @model_validator(mode="after")
    def _check(self):
        if len(self.D_list) < 2 or sorted(set(self.D_list)) != self.D_list:
            raise ValueError("D_list needs at least 2 strictly increasing values")
        if self.slope_range[0] >= self.slope_range[1]:
            raise ValueError("slope_range must be (low, high)")
        return self


class QnormSimpleParams(_Params):
    coeff_instances: PosInt = 20
    coeff_max_n: Annotated[int, Field(ge=1, le=5)] = 5
    coeff_tol: Annotated[float, Field(gt=0)] = 1e-9
    ternary_n: list[Annotated[int, Field(ge=1, le=8)]] = Field(default_factory=lambda: [2, 3, 4, 5, 6, 7])
    golomb_N: list[Annotated[int, Field(ge=4, le=64)]] = Field(default_factory=lambda: [4, 8, 16, 32])
    draws: Annotated[int, Field(ge=2)] = 500
    slope_rel_tol: Prob = 0.15
    weingarten_n: list[Annotated[int, Field(ge=2, le=8)]] = Field(default_factory=lambda: [3, 4])
    mean_z_max: Annotated[float, Field(gt=0)] = 3.0
    variance_factor: Annotated[float, Field(gt=1)] = 32.0
    concentration_instances: PosInt = 10
    concentration_n: Annotated[int, Field(ge=1, le=6)] = 3
    concentration_n_mc: Annotated[int, Field(ge=1000)] = 20000
    concentration_z_max: Annotated[float, Field(gt=0)] = 4.0
    max_runtime_s: Annotated[float, Field(gt=0)] = 300.0

    @model_validator(mode="after")
    def _check(self):
        if len(self.ternary_n) < 2 or len(self.golomb_N) < 2:
            raise ValueError("slope fits need at least two sizes")
        return self


class QnormReuploadingParams(_Params):
    n: Annotated[int, Field(ge=2, le=7)] = 3
    draws: Annotated[int, Field(ge=2)] = 2000
    mean_z_max: Annotated[float, Field(gt=0)] = 3.0
    design_eps: list[Annotated[float, Field(ge=0)]] = Field(default_factory=lambda: [0.0, 1e-3, 1e-2])


class SeparationParams(_Params):
    pairs: PosInt = 20
    d: Annotated[int, Field(ge=1, le=2)] = 1
    L: PosInt = 24
    M: Annotated[int, Field(ge=1)] = 12
    include_constant: bool = True
    grid: Annotated[int, Field(ge=8)] = 4096
    null_scale_max: Annotated[float, Field(gt=0)] = 3.0
    slack: Annotated[float, Field(ge=0)] = 1e-6
    refine: bool = False


class DlpParams(_Params):
    n_list: list[Annotated[int, Field(ge=1, le=8)]] = Field(default_factory=lambda: [2, 4])
    b_idx: Annotated[int, Field(ge=0)] = 0
    points: PosInt = 100
    expansion_tol: Annotated[float, Field(gt=0)] = 1e-10
    n_mc: Annotated[int, Field(ge=100)] = 20000


class PerfectFnParams(_Params):
    d: Annotated[int, Field(ge=2, le=4)] = 2
    L: Annotated[int, Field(ge=2)] = 8
    n_freq: PosInt = 32
    delta: Prob = 0.01
    sigma_constant: Annotated[float, Field(ge=0)] = DEFAULT_SIGMA_CONSTANT
    trials: Annotated[int, Field(ge=1)] = 100
    n_mc: Annotated[int, Field(ge=10_000)] = 10_000
    restarts: Annotated[int, Field(ge=32)] = 32
    scatter: Annotated[int, Field(ge=1000)] = 100_000
    min_pass_each: Annotated[float, Field(ge=0, le=1)] = 0.95
    min_pass_joint: Annotated[float, Field(ge=0, le=1)] = 0.90
    identity_z_max: Annotated[float, Field(gt=0)] = 4.0
    sweep_constants: list[Annotated[float, Field(ge=0)]] = Field(
        default_factory=lambda: [0.5, 1.0, 1.5, 2.0, 2.25, 2.5, 3.0, 4.0])
    sweep_trials: Annotated[int, Field(ge=0)] = 200
    sweep_scatter: Annotated[int, Field(ge=1000)] = 20_000


class AdvantageDemoParams(_Params):
    n: Annotated[int, Field(ge=1, le=7)] = 5
    M: Annotated[int, Field(ge=2)] = 40
    D: PosInt = 256
    n_test: Annotated[int, Field(ge=100)] = 20000
    ridge: Annotated[float, Field(ge=0)] = 1e-10
    generalization_factor: Annotated[float, Field(gt=0)] = 10.0


PARAMS: dict[str, type[_Params]] = {
    "mnls-gd": MnlsGdParams,
    "kernel-eig": KernelEigParams,
    "rff-scaling": RffScalingParams,
    "qnorm-simple": QnormSimpleParams,
    "qnorm-reuploading": QnormReuploadingParams,
    "separation": SeparationParams,
    "dlp": DlpParams,
    "perfect-fn": PerfectFnParams,
    "advantage-demo": AdvantageDemoParams,
}

EXPERIMENT_IDS = tuple(PARAMS)


def _config_model(name: str, params: type[_Params]) -> type[BaseModel]:
    cls_name = "".join(w.capitalize() for w in name.split("-")) + "Config"
    return type(cls_name, (BaseModel,), {
        "__annotations__": {"experiment": Literal[name], "seed": int, "out": str, "params": params},
        "model_config": ConfigDict(extra="forbid", frozen=True),
        "seed": Field(default=0, ge=0, lt=2**64),
        "out": "results",
        "params": Field(default_factory=params),
    })


_MODELS = {name: _config_model(name, p) for name, p in PARAMS.items()}
ExperimentConfig = Annotated[Union[tuple(_MODELS.values())], Field(discriminator="experiment")]
_ADAPTER = TypeAdapter(ExperimentConfig)


def parse_config(data: dict):
    return _ADAPTER.validate_python(data)


def load_config(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(json.load(fh))


def config_schema() -> dict:
    return _ADAPTER.json_schema()


def params_schema(experiment: str) -> dict:
    return PARAMS[experiment].model_json_schema()

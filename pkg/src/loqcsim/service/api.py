"""HTTP face of the scenario runner and circuit interpreter.

The service wraps the same entry points the command line uses; report
bodies stay deterministic for a fixed (config, seed) pair, so wall time
travels in the X-Wall-Time-Ms response header instead of the payload.
"""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException, Response

from .._version import __version__
from ..circuits import circuit_from_dict, run_circuit
from ..fock import FockError
from ..scenarios import ScenarioConfig, list_scenarios, run_scenario
from .models import (CircuitRequest, CircuitResponse, Health, ScenarioInfo,
                     ScenarioReport, ScenarioRequest)

__all__ = ["create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="loqcsim", version=__version__)

    @app.get("/health", response_model=Health)
    def health() -> Health:
        return Health(status="ok", version=__version__)

    @app.get("/scenarios", response_model=list[ScenarioInfo])
    def scenarios() -> list:
        return [ScenarioInfo(**info) for info in list_scenarios()]

    @app.post("/scenarios/run", response_model=ScenarioReport)
    def scenarios_run(request: ScenarioRequest, response: Response):
        config = ScenarioConfig(scenario=request.scenario,
                                parameters=dict(request.parameters),
                                seed=request.seed, trials=request.trials)
        started = time.monotonic()
        try:
            report = run_scenario(config)
        except FockError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        elapsed_ms = (time.monotonic() - started) * 1000.0
        response.headers["X-Wall-Time-Ms"] = f"{elapsed_ms:.3f}"
        return report

    @app.post("/circuits/simulate", response_model=CircuitResponse)
    def circuits_simulate(request: CircuitRequest, response: Response):
        started = time.monotonic()
        try:
            circuit = circuit_from_dict(request.model_dump(exclude_none=True))
            report = run_circuit(circuit)
        except FockError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        elapsed_ms = (time.monotonic() - started) * 1000.0
        response.headers["X-Wall-Time-Ms"] = f"{elapsed_ms:.3f}"
        return report

    return app

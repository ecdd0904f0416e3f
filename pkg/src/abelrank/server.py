"""HTTP front end: one endpoint per command, documents as JSON responses."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, api
from .errors import (
    ConsistencyError,
    DescriptorInvalidError,
    InputParseError,
    SchemaError,
)

app = FastAPI(
    title="abelrank",
    version=__version__,
    description=(
        "Exact generating series, trace values and Schur-functor generic "
        "ranks for convolution powers on abelian varieties."
    ),
)


@app.exception_handler(InputParseError)
async def _parse_error(request: Request, exc: InputParseError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(SchemaError)
async def _schema_error(request: Request, exc: SchemaError):
    return JSONResponse(
        status_code=422,
        content={"detail": exc.reason, "path": exc.path},
    )


@app.exception_handler(DescriptorInvalidError)
async def _invalid_error(request: Request, exc: DescriptorInvalidError):
    return JSONResponse(
        status_code=422,
        content={"detail": "descriptor validation failed",
                 "report": exc.report.to_doc()},
    )


@app.exception_handler(ConsistencyError)
async def _consistency_error(request: Request, exc: ConsistencyError):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post(
    "/series",
    response_model=api.SeriesResponse,
    response_model_exclude_none=True,
)
def series(req: api.SeriesRequest):
    return api.run_series(req)


@app.post(
    "/schur",
    response_model=api.SchurResponse,
    response_model_exclude_none=True,
)
def schur(req: api.SchurRequest):
    return api.run_schur(req)


@app.post(
    "/trace",
    response_model=api.TraceResponse,
    response_model_exclude_none=True,
)
def trace(req: api.TraceRequest):
    return api.run_trace(req)


@app.post(
    "/verify",
    response_model=api.VerifyResponse,
    response_model_exclude_none=True,
)
def verify(req: api.VerifyRequest):
    return api.run_verify(req)


@app.post(
    "/preset",
    response_model=api.DescriptorDoc,
    response_model_exclude_none=True,
)
def preset(req: api.PresetRequest):
    return api.run_preset(req)


def main():
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(description="Run the abelrank service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()

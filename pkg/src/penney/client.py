"""Thin synchronous client for the HTTP service.

By default requests are routed to an in-process ASGI instance of the app,
so the CLI works with no server running while still exercising the full
HTTP surface. Pass a base URL to talk to a remote service instead.
"""
from __future__ import annotations

import asyncio
from typing import Any

import httpx

from .errors import PenneyError


class ServiceUsageError(PenneyError):
    """The service rejected the request (bad patterns, bad arguments)."""


class ServiceFailure(PenneyError):
    """The service misbehaved (unexpected status or transport problem)."""


def _format_detail(payload: Any) -> str:
    # FastAPI validation errors arrive as a list of {loc, msg, ...} dicts
    if isinstance(payload, dict):
        detail = payload.get("detail", payload)
    else:
        detail = payload
    if isinstance(detail, list):
        parts = []
        for item in detail:
            if isinstance(item, dict):
                loc = ".".join(str(x) for x in item.get("loc", []) if x != "body")
                msg = item.get("msg", "invalid value")
                parts.append(f"{loc}: {msg}" if loc else msg)
            else:
                parts.append(str(item))
        return "; ".join(parts)
    return str(detail)


class ServiceClient:
    """Issues requests against a remote service or the in-process app."""

    def __init__(self, base_url: str | None = None, timeout: float = 300.0):
        self._base_url = base_url
        self._timeout = timeout

    def get(self, path: str, params: dict | None = None) -> dict:
        return self._request("GET", path, params=params)

    def post(self, path: str, body: dict | None = None) -> dict:
        return self._request("POST", path, body=body)

    def _request(self, method: str, path: str, params: dict | None = None,
                 body: dict | None = None) -> dict:
        if self._base_url:
            response = self._remote(method, path, params, body)
        else:
            response = self._local(method, path, params, body)
        if response.status_code in (400, 422):
            raise ServiceUsageError(_format_detail(response.json()))
        if response.status_code != 200:
            raise ServiceFailure(f"unexpected status {response.status_code}: {response.text}")
        return response.json()

    def _remote(self, method: str, path: str, params: dict | None,
                body: dict | None) -> httpx.Response:
        try:
            with httpx.Client(base_url=self._base_url, timeout=self._timeout) as client:
                return client.request(method, path, params=params, json=body)
        except httpx.HTTPError as exc:
            raise ServiceFailure(f"cannot reach service at {self._base_url}: {exc}") from exc

    def _local(self, method: str, path: str, params: dict | None,
               body: dict | None) -> httpx.Response:
        from .service.app import app  # deferred: keeps remote-only use light

        async def run() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://penney.local", timeout=self._timeout
            ) as client:
                return await client.request(method, path, params=params, json=body)

        return asyncio.run(run())

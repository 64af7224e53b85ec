"""
monores API - FastAPI Application
Main entry point for the API server
"""

import sys
from datetime import datetime
from pathlib import Path

from fastapi import FastAPI

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from monores_core import config
from monores_core.config import validate_env

from monores_api.models import HealthResponse
from monores_api.routes import bounds, resolution

VERSION = "1.0.0"

# Validate environment on startup
try:
    validate_env()
except Exception as e:
    print(f"⚠️  Environment validation warning: {e}", file=sys.stderr)
    print("   Falling back to default settings", file=sys.stderr)

app = FastAPI(
    title="monores",
    description="Monomial resolution simulator and bound verifier",
    version=VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.include_router(resolution.router)
app.include_router(bounds.router)


@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint."""
    return HealthResponse(
        status="healthy",
        timestamp=datetime.utcnow(),
        version=VERSION,
        hard_depth_limit=config.HARD_DEPTH_LIMIT,
    )


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "name": "monores API",
        "version": VERSION,
        "status": "running",
        "docs": "/docs",
        "health": "/health",
        "endpoints": {
            "resolve": "POST /api/resolve",
            "bounds": "POST /api/bounds",
            "verify": "POST /api/verify",
        },
    }


@app.on_event("startup")
async def startup_event():
    """Run on application startup."""
    print("\n" + "=" * 70, file=sys.stderr)
    print("monores API - Starting", file=sys.stderr)
    print("=" * 70, file=sys.stderr)
    print(f"Timestamp: {datetime.utcnow().isoformat()}", file=sys.stderr)
    print(f"\n✅ Server started on {config.API_HOST}:{config.API_PORT}", file=sys.stderr)


@app.on_event("shutdown")
async def shutdown_event():
    """Run on application shutdown."""
    print("\n👋 monores API - Shutting down", file=sys.stderr)


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "monores_api.main:app",
        host=config.API_HOST,
        port=config.API_PORT,
        reload=True,
        log_level="info",
    )

"""
Monores Configuration
Environment-driven defaults for exploration and the API server
"""

import os
import sys
from dotenv import load_dotenv

# Load .env file
load_dotenv()


def get_env(key: str, fallback_key: str = None, default: str = "") -> str:
    """Get env var with fallback to a MONORES_ prefixed version."""
    value = os.getenv(key)
    if not value and fallback_key:
        value = os.getenv(fallback_key)
    return value or default


def _as_int(raw: str, fallback: int) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError):
        return fallback


def _as_bool(raw: str) -> bool:
    return raw.strip().lower() not in ("0", "false", "no", "off")


# Exploration
HARD_DEPTH_LIMIT_RAW = get_env("MONORES_HARD_DEPTH_LIMIT", "HARD_DEPTH_LIMIT", "10000")
HARD_DEPTH_LIMIT = _as_int(HARD_DEPTH_LIMIT_RAW, 10000)
JOBS_RAW = get_env("MONORES_JOBS", "JOBS", "1")
JOBS = _as_int(JOBS_RAW, 1)
MEMOIZE = _as_bool(get_env("MONORES_MEMOIZE", default="true"))
EXPANSION_CACHE_RAW = get_env("MONORES_EXPANSION_CACHE", default="65536")
EXPANSION_CACHE = _as_int(EXPANSION_CACHE_RAW, 65536)

# API server
API_HOST = get_env("MONORES_API_HOST", default="0.0.0.0")
API_PORT_RAW = get_env("MONORES_API_PORT", default="8000")
API_PORT = _as_int(API_PORT_RAW, 8000)


def validate_env():
    """Validate numeric settings."""
    malformed = []
    if not HARD_DEPTH_LIMIT_RAW.isdigit() or HARD_DEPTH_LIMIT < 1:
        malformed.append("MONORES_HARD_DEPTH_LIMIT")
    if not JOBS_RAW.isdigit() or JOBS < 1:
        malformed.append("MONORES_JOBS")
    if not EXPANSION_CACHE_RAW.isdigit():
        malformed.append("MONORES_EXPANSION_CACHE")
    if not API_PORT_RAW.isdigit():
        malformed.append("MONORES_API_PORT")

    if malformed:
        raise EnvironmentError(
            f"Malformed environment variables: {', '.join(malformed)}\n"
            f"Check your .env file"
        )

    print("✅ Environment validated", file=sys.stderr)
    print(f"   Hard depth limit: {HARD_DEPTH_LIMIT}", file=sys.stderr)
    print(f"   Jobs: {JOBS}  Memoize: {MEMOIZE}", file=sys.stderr)


if __name__ == "__main__":
    validate_env()
    print(f"\n📋 Configuration:")
    print(f"   MONORES_HARD_DEPTH_LIMIT: {HARD_DEPTH_LIMIT}")
    print(f"   MONORES_JOBS: {JOBS}")
    print(f"   MONORES_MEMOIZE: {'✅ On' if MEMOIZE else '⚠️  Off'}")
    print(f"   MONORES_EXPANSION_CACHE: {EXPANSION_CACHE}")
    print(f"   MONORES_API: {API_HOST}:{API_PORT}")

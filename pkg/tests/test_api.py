"""Tests for API endpoints"""

from fastapi.testclient import TestClient

from monores_api.main import app

client = TestClient(app)


def test_health_endpoint():
    """Test health check endpoint."""
    response = client.get("/health")
    assert response.status_code == 200

    data = response.json()
    assert data["status"] == "healthy"
    assert "timestamp" in data
    assert "version" in data
    assert data["hard_depth_limit"] >= 1


def test_root_endpoint():
    """Test root endpoint returns API info."""
    response = client.get("/")
    assert response.status_code == 200

    data = response.json()
    assert "name" in data
    assert "endpoints" in data


def test_resolve_endpoint():
    """Resolve (2,3) with c=2."""
    response = client.post("/api/resolve", json={"exponents": [2, 3], "critical": 2})
    assert response.status_code == 200

    data = response.json()
    assert data["truncated"] is False
    assert data["sing_empty"] is False
    assert data["result"]["nodes"][0]["t"] == [{"t": ["5", "2", 0]}, {"t": ["1", "1", 0]}]


def test_resolve_largest_branch():
    """The greedy branch of (2,3) has three blowups."""
    response = client.post(
        "/api/resolve", json={"exponents": [2, 3], "critical": 2, "mode": "largest-branch"}
    )
    assert response.status_code == 200
    assert response.json()["result"]["length"] == 3


def test_resolve_sing_empty():
    """d < c short-circuits."""
    response = client.post("/api/resolve", json={"exponents": [1, 1], "critical": 3})
    assert response.status_code == 200
    assert response.json()["sing_empty"] is True


def test_resolve_truncated():
    """A small depth guard is reported, not hidden."""
    response = client.post(
        "/api/resolve", json={"exponents": [2, 2, 2], "critical": 2, "max_depth": 1}
    )
    assert response.status_code == 200
    assert response.json()["truncated"] is True


def test_resolve_validation():
    """Missing fields and zero exponents are rejected."""
    response = client.post("/api/resolve", json={"exponents": [2, 3]})
    assert response.status_code == 422

    response = client.post("/api/resolve", json={"exponents": [0, 3], "critical": 2})
    assert response.status_code == 400


def test_resolve_unsupported_strategy():
    """largest-branch refuses exponents below c."""
    response = client.post(
        "/api/resolve", json={"exponents": [1, 3], "critical": 2, "mode": "largest-branch"}
    )
    assert response.status_code == 400


def test_bounds_endpoint():
    """Bounds come back as exact decimal strings."""
    response = client.post("/api/bounds", json={"exponents": [2, 2, 2], "critical": 2})
    assert response.status_code == 200

    data = response.json()
    assert data["global_bound"] == "1027"
    assert data["bound_exceptional"] == "3"
    assert data["monomialization_bound"] == "8"


def test_bounds_sing_empty():
    """No bounds for an empty singular locus."""
    response = client.post("/api/bounds", json={"exponents": [1], "critical": 2})
    assert response.status_code == 400


def test_verify_endpoint():
    """The Catalan suite passes."""
    response = client.post("/api/verify", json={"suite": "catalan", "n_max": 10})
    assert response.status_code == 200

    data = response.json()
    assert data["passed"] is True
    assert data["failures"] == []


def test_verify_endpoint_up_to_twenty():
    """Monotonicity in i skips the diagonal p(j, j) = 0."""
    response = client.post("/api/verify", json={"suite": "catalan", "n_max": 20})
    assert response.status_code == 200
    assert response.json()["passed"] is True

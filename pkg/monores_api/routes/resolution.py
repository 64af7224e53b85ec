"""
Resolution API Routes
Resolve monomial problems and return trees as JSON
"""

from fastapi import APIRouter, HTTPException

from monores_core.errors import MonoresError
from monores_core.explorer import explore, largest_branch, principalize, toric_reduce
from monores_core.export import branch_to_json, tree_to_json
from monores_core.monomial import build_state, singular_locus

from ..models import ResolveRequest, ResolveResponse

router = APIRouter(prefix="/api/resolve", tags=["Resolution"])


def _exceptional(request: ResolveRequest):
    if request.exceptional == "none":
        return ()
    if request.exceptional == "all":
        return range(1, len(request.exponents) + 1)
    return request.exceptional


@router.post("", response_model=ResolveResponse)
def resolve(request: ResolveRequest):
    """
    Resolve X^a with critical value c.

    Runs in a worker thread; exploration is CPU bound.
    """
    if any(a < 1 for a in request.exponents):
        raise HTTPException(status_code=400, detail="every exponent must be >= 1")
    try:
        if request.mode == "toric":
            state = toric_reduce(request.critical, request.exponents)
        else:
            state = build_state(request.exponents, request.critical, _exceptional(request))

        if not singular_locus(state):
            return ResolveResponse(
                mode=request.mode, truncated=False, sing_empty=True, result={"root": state.to_json()}
            )
        if request.mode == "largest-branch":
            branch = largest_branch(state)
            return ResolveResponse(mode=request.mode, truncated=False, result=branch_to_json(state, branch))
        if request.mode == "principalize":
            trees = principalize(state, request.max_depth, jobs=1)
            return ResolveResponse(
                mode=request.mode,
                truncated=any(t.truncated for t in trees),
                result={"trees": [tree_to_json(t) for t in trees]},
            )
        tree = explore(state, request.max_depth, jobs=1)
    except MonoresError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return ResolveResponse(mode=request.mode, truncated=tree.truncated, result=tree_to_json(tree))

TOOLKIT_VERSION = "0.1.1"

# Upper bound on map evaluations (brute force) or search nodes (backtracking)
# before an instance is refused.
DEFAULT_MAX_EVALUATIONS = 10**9

# enumerate_apex_bipartite refuses anything larger.
MAX_ENUMERATE_VERTICES = 8

# Short-form graph6 only.
GRAPH6_MAX_VERTICES = 62

# networkx's atlas stops at 7 vertices.
ATLAS_MAX_VERTICES = 7

GUARD_ENVVARS = ["SIDORENKO_GUARD_EVALS", "TOOL_GUARD_EVALS"]



## Expose the topology engine as mcp tools, mirroring the cli commands
from mcp.server.fastmcp import FastMCP

from core_group import parse_group, parse_subgroup
from database import read_report
from duality import dual_group
from oracle import TheoremReport, resolve_suite
from oracle import run_suite as run_oracle_suite
from topology import topology_from_dual
from topology import classify as classify_topology
from topology import closure as topology_closure
from zee import IntSubgroup, classify_int, closure_int, parse_descriptor

mcp = FastMCP("topology_server")


def _topology(group: str, s: str) -> tuple:
    G = parse_group(group)
    return G, topology_from_dual(G, parse_subgroup(s.removeprefix("dual:"), dual_group(G)))


@mcp.tool()
async def closure(group: str, h: str, s: str) -> dict:
    """Compute the closure of a subgroup H of a finite abelian group in the topology induced by S.

    Args:
        group: The group, e.g. Z(2)xZ(4)
        h: The subgroup, e.g. gens=[0,2]
        s: The subgroup of the dual group inducing the topology, e.g. dual:gens=[1,0]
    """
    G, topo = _topology(group, s)
    H = parse_subgroup(h, G)
    closed = topology_closure(topo, H)
    return {"closure": str(closed), "closed": closed == H}


@mcp.tool()
async def classify(group: str, s: str) -> dict:
    """Classify the topology induced by S: Hausdorff, all subgroups closed, simple, essential, closed subgroups.

    Args:
        group: The group, e.g. Z(8)
        s: The subgroup of the dual group inducing the topology
    """
    _, topo = _topology(group, s)
    return classify_topology(topo).model_dump()


@mcp.tool()
async def z_closure(s: str, k: int) -> str:
    """Compute the closure of kZ in the topology on the integers described by S.

    Args:
        s: The descriptor, e.g. tors=2^2*3,free=0
        k: The generator of the subgroup kZ
    """
    return str(closure_int(parse_descriptor(s), IntSubgroup(k=k)))


@mcp.tool()
async def z_classify(s: str) -> dict:
    """Classify the topology on the integers described by S.

    Args:
        s: The descriptor, e.g. tors=all,free=0
    """
    return classify_int(parse_descriptor(s)).model_dump()


@mcp.tool()
async def run_suite(suite_id: str, max_order: int) -> str:
    """Run one exhaustive verification suite and return its text report.

    Args:
        suite_id: The suite identifier, e.g. closure_formula
        max_order: The largest group order (or integer bound) to visit
    """
    return run_oracle_suite(suite_id, max_order, jobs=1).to_text()


@mcp.resource("reports://{suite_id}/{max_order}")
async def read_report_resource(suite_id: str, max_order: str) -> str:
    report = read_report(resolve_suite(suite_id), int(max_order))
    return "no stored report" if report is None else TheoremReport.model_validate(report).to_text()


if __name__ == "__main__":
    mcp.run(transport='stdio')

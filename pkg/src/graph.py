"""LangGraph orchestration for the certification workflow."""

from typing import Any, Literal, Optional

from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, StateGraph

from src.config import Config
from src.nodes.auditor import node as auditor_node
from src.nodes.geometry import node as geometry_node
from src.nodes.hodge import node as hodge_node
from src.nodes.monodromy import node as monodromy_node
from src.nodes.planner import node as planner_node
from src.nodes.weights import node as weights_node
from src.state import CertifyState
from src.utils.logger import get_logger

logger = get_logger(__name__)


def should_continue(state: CertifyState) -> Literal["weights", "end"]:
    """
    Conditional edge function: retry the weights branch with the closed form, or finish.

    Args:
        state: Current graph state

    Returns:
        "weights" if the auditor asked for a retry, "end" otherwise
    """
    retry_count = state.get("retry_count", 0)

    if retry_count > Config.MAX_AUDIT_RETRIES:
        logger.warning(f"Maximum retries ({Config.MAX_AUDIT_RETRIES}) reached. Ending workflow.")
        return "end"

    if state.get("needs_retry"):
        logger.info(f"Retrying weights with the closed form (retry {retry_count}/{Config.MAX_AUDIT_RETRIES})")
        return "weights"

    report = state.get("report")
    if report is not None:
        logger.info(f"Certificate {'approved' if report.approved else 'not approved'}. Ending workflow.")
    return "end"


def create_graph(checkpointer: Optional[MemorySaver] = None) -> Any:
    """
    Create and compile the certify workflow.

    Args:
        checkpointer: Optional checkpointer for state persistence (required for LangGraph Studio)

    Returns:
        Compiled LangGraph
    """
    logger.info("Creating certify graph...")

    workflow = StateGraph(CertifyState)

    workflow.add_node("planner", planner_node)
    workflow.add_node("geometry", geometry_node)
    workflow.add_node("weights", weights_node)
    workflow.add_node("hodge", hodge_node)
    workflow.add_node("monodromy", monodromy_node)
    workflow.add_node("auditor", auditor_node)

    workflow.set_entry_point("planner")

    workflow.add_edge("planner", "geometry")
    workflow.add_edge("geometry", "weights")
    workflow.add_edge("geometry", "hodge")  # Parallel execution
    workflow.add_edge("weights", "monodromy")
    workflow.add_edge("hodge", "monodromy")
    workflow.add_edge("monodromy", "auditor")

    workflow.add_conditional_edges(
        "auditor",
        should_continue,
        {
            "weights": "weights",
            "end": END,
        }
    )

    if checkpointer is None:
        checkpointer = MemorySaver()

    graph = workflow.compile(checkpointer=checkpointer)

    logger.info("Graph compiled successfully")
    return graph


__all__ = ["create_graph"]

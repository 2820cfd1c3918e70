"""Main execution script: certify one polytope family through the LangGraph workflow."""

import json
import sys
from pathlib import Path

from src.config import Config
from src.graph import create_graph
from src.schemas import CertifyRequest, PolytopeFamily
from src.state import initial_state
from src.utils.logger import get_logger
from src.utils.serializer import canonical_json, render_table, to_jsonable

logger = get_logger(__name__)


def main():
    """Main execution function."""
    logger.info("=" * 60)
    logger.info("Newton-polytope weights: certification run")
    logger.info("=" * 60)

    problems = Config.validate_settings()
    if problems:
        for problem in problems:
            logger.error(problem)
        logger.error("Please fix these in your .env file")
        return

    logger.info("Initializing certify graph...")
    from langgraph.checkpoint.memory import MemorySaver
    checkpointer = MemorySaver()
    graph = create_graph(checkpointer=checkpointer)

    # Default request: the truncated prism with sides (3, 4, 5) and unit corner
    request = CertifyRequest(family=PolytopeFamily(family="truncated_prism", sides=(3, 4, 5), corner=(1, 1, 1)))
    if len(sys.argv) > 1:
        request = CertifyRequest.model_validate_json(Path(sys.argv[1]).read_text(encoding="utf-8"))
    logger.info(f"Processing request: {canonical_json(request)}")
    logger.info("-" * 60)

    try:
        logger.info("Starting certify workflow...")

        config = {
            "configurable": {"thread_id": "1"},
            "recursion_limit": Config.RECURSION_LIMIT,
        }

        report = None
        for event in graph.stream(initial_state(request), config=config):
            for node_name, node_output in event.items():
                logger.info(f"✓ {node_name.upper()} completed")
                if node_output and node_output.get("report") is not None:
                    report = node_output["report"]

        logger.info("-" * 60)
        logger.info("Workflow completed!")

        if report is None:
            logger.error("No certificate report was produced")
            return

        print(render_table(report))

        output_dir = Path(Config.OUTPUT_DIR) / "reports"
        output_dir.mkdir(parents=True, exist_ok=True)
        report_path = output_dir / "certificate.json"
        report_path.write_text(json.dumps(to_jsonable(report), indent=2, sort_keys=True), encoding="utf-8")
        logger.info(f"Report saved to: {report_path}")

        if report.approved:
            logger.info("✓ Certificate APPROVED by Auditor")
        else:
            logger.warning("✗ Certificate NOT approved by Auditor")
            for finding in report.findings:
                logger.info(f"Finding: {finding}")

    except Exception as e:
        logger.error(f"Error during workflow execution: {e}")
        import traceback
        logger.error(traceback.format_exc())


if __name__ == "__main__":
    main()

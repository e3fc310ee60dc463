"""Main entrypoint for ncsos_workbench."""

import argparse
import sys

import dotenv
import jsonargparse

from ncsos_workbench.errors import BudgetExhausted, ParseError, ResourceLimit, VerificationFailed
from ncsos_workbench.utils.jsonargparse import init_jsonargparse
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.utils.mp import init_mp
from ncsos_workbench.workflows import workflows

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def run_workflow(workflow: str, args: list[str]) -> int:
    """Run the specified workflow and map its outcome to an exit code.

    Args:
        workflow: the workflow name.
        args: arguments to pass to jsonargparse for running the workflow function.
    """
    workflow_fn = workflows[workflow]
    logger.info(f"running {workflow}")
    logger.debug(f"args: {args}")
    try:
        result = jsonargparse.CLI(workflow_fn, args=args, as_positional=True)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        print(e.caret(), file=sys.stderr)
        return EXIT_INPUT
    except VerificationFailed as e:
        logger.error(f"verification failed: {e}")
        return EXIT_VERIFICATION
    except (BudgetExhausted, ResourceLimit) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_BUDGET
    except (ValueError, FileNotFoundError) as e:
        logger.error(f"invalid input: {e}")
        return EXIT_INPUT
    return EXIT_OK if result is None else int(result)


def main(argv: list[str] | None = None) -> int:
    """Main entrypoint function for ncsos_workbench."""
    dotenv.load_dotenv()
    init_jsonargparse()
    argv = sys.argv[1:] if argv is None else argv
    parser = argparse.ArgumentParser(prog="ncsos", description="ncsos_workbench")
    parser.add_argument("workflow", choices=sorted(workflows), help="The name of the workflow.")
    args = parser.parse_args(args=argv[:1])
    return run_workflow(args.workflow, argv[1:])


if __name__ == "__main__":
    init_mp()
    sys.exit(main())

"""CLI entry point for leapfrog package."""

import sys

from leapfrog.cli import COMMAND_ALIASES, COMMANDS, main

if __name__ == "__main__":
    if len(sys.argv) < 2 or sys.argv[1] in ("-h", "--help"):
        print("Usage: python -m leapfrog <command> [--config FILE] [--key value ...]")
        print("Commands: " + ", ".join(COMMANDS))
        sys.exit(0 if len(sys.argv) >= 2 else 2)

    command = sys.argv[1]
    if command not in COMMANDS and command not in COMMAND_ALIASES:
        print(f"Unknown command: {command}")
        print("Commands: " + ", ".join(COMMANDS))
        sys.exit(2)

    sys.exit(main(sys.argv[1:]))

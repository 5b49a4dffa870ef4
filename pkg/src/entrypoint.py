"""Entrypoint for the application. This should be as shallow as possible."""
import sys

from cli import main

if __name__ == "__main__":
    sys.exit(main())

import sys

from algebraic_degree.cli import main

if __name__ == "__main__":
    sys.exit(main())

import sys

from mengercurv.cli.app import run


def main():
    """Entry point of the `mengercurv` console script."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

"""CLI entrypoint for python -m knotmosaic_cli."""

from knotmosaic_cli.app import app


def main() -> None:
    """Run the knot mosaic CLI."""
    app()


if __name__ == "__main__":
    main()

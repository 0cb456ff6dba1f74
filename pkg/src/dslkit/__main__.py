"""Entry point for: python -m dslkit"""
from dslkit.cli.main import cli

if __name__ == "__main__":
    cli()


__all__ = []

"""Ponto de entrada: `python app.py <comando> ...`."""
import sys

from src.ui.router import main

if __name__ == "__main__":
    sys.exit(main())

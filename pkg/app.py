"""
#app.py, Entry point that runs one subcommand of the toolkit, e.g.
  python app.py check-lie fixtures/sl2.json
  python app.py cybe fixtures/sl2.json --r fixtures/standard_r.json --json
  python app.py induce fixtures/sl2.json --sub e,h --casimir fixtures/killing.json
See `python app.py -h` for the full list.
"""
import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())

import sys

from hankelcensus.cli import main

sys.exit(main())
